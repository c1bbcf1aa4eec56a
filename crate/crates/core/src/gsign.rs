//! Arithmetic over the generalized sign set `{0, +, -, #}` and matrices over it.
//!
//! A [`SignPattern`] is stored as two bitplanes: `pos` records that some
//! positive contribution reaches an entry, `neg` that some negative one does.
//! The four generalized signs decode as `0 = (0,0)`, `+ = (1,0)`, `- = (0,1)`
//! and `# = (1,1)`, so addition is bitwise OR and multiplication is AND with
//! a plane swap for negative factors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use serde::{Serialize, Serializer};

use crate::bits::{check_order, full_row, ones, BoolMatrix, Row, Rows, MAX_ORDER};
use crate::error::{Error, Result};

/// An element of the generalized sign set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenSign {
    Zero,
    Pos,
    Neg,
    /// The ambiguous sign `#`, produced by adding opposite signs.
    Amb,
}

impl GenSign {
    pub const ALL: [GenSign; 4] = [GenSign::Zero, GenSign::Pos, GenSign::Neg, GenSign::Amb];

    fn from_planes(pos: bool, neg: bool) -> GenSign {
        match (pos, neg) {
            (false, false) => GenSign::Zero,
            (true, false) => GenSign::Pos,
            (false, true) => GenSign::Neg,
            (true, true) => GenSign::Amb,
        }
    }

    fn planes(self) -> (bool, bool) {
        match self {
            GenSign::Zero => (false, false),
            GenSign::Pos => (true, false),
            GenSign::Neg => (false, true),
            GenSign::Amb => (true, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            GenSign::Zero => '0',
            GenSign::Pos => '+',
            GenSign::Neg => '-',
            GenSign::Amb => '#',
        }
    }
}

impl Add for GenSign {
    type Output = GenSign;

    fn add(self, rhs: GenSign) -> GenSign {
        use GenSign::*;
        match (self, rhs) {
            (Zero, x) | (x, Zero) => x,
            (Amb, _) | (_, Amb) => Amb,
            (Pos, Pos) => Pos,
            (Neg, Neg) => Neg,
            (Pos, Neg) | (Neg, Pos) => Amb,
        }
    }
}

impl Mul for GenSign {
    type Output = GenSign;

    fn mul(self, rhs: GenSign) -> GenSign {
        use GenSign::*;
        match (self, rhs) {
            (Zero, _) | (_, Zero) => Zero,
            (Amb, _) | (_, Amb) => Amb,
            (Pos, x) | (x, Pos) => x,
            (Neg, Neg) => Pos,
        }
    }
}

/// Sign of an arc or walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    /// `self` raised to the `exp`-th power.
    pub fn pow(self, exp: usize) -> Sign {
        if self == Sign::Neg && exp % 2 == 1 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl From<Sign> for GenSign {
    fn from(s: Sign) -> GenSign {
        match s {
            Sign::Pos => GenSign::Pos,
            Sign::Neg => GenSign::Neg,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.as_i8())
    }
}

impl Serialize for GenSign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_char(self.symbol())
    }
}

/// Square matrix over the generalized sign set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPattern {
    n: usize,
    pos: Rows,
    neg: Rows,
}

impl SignPattern {
    pub fn zero(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(SignPattern {
            n,
            pos: [0; MAX_ORDER],
            neg: [0; MAX_ORDER],
        })
    }

    /// Positive diagonal, zero elsewhere.
    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for i in 0..n {
            m.pos[i] = 1 << i;
        }
        Ok(m)
    }

    /// Builds a pattern from row-major entries.
    pub fn from_entries(rows: &[Vec<GenSign>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zero(n)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::OrderMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                m.set(i + 1, j + 1, e);
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> GenSign {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "index out of range"
        );
        let bit = 1 << (j - 1);
        GenSign::from_planes(self.pos[i - 1] & bit != 0, self.neg[i - 1] & bit != 0)
    }

    pub fn set(&mut self, i: usize, j: usize, value: GenSign) {
        assert!(
            i >= 1 && i <= self.n && j >= 1 && j <= self.n,
            "index out of range"
        );
        let bit: Row = 1 << (j - 1);
        let (p, q) = value.planes();
        self.pos[i - 1] = if p {
            self.pos[i - 1] | bit
        } else {
            self.pos[i - 1] & !bit
        };
        self.neg[i - 1] = if q {
            self.neg[i - 1] | bit
        } else {
            self.neg[i - 1] & !bit
        };
    }

    pub(crate) fn pos_rows(&self) -> &Rows {
        &self.pos
    }

    pub(crate) fn neg_rows(&self) -> &Rows {
        &self.neg
    }

    /// Rows of ambiguous positions.
    pub(crate) fn amb_rows(&self) -> Rows {
        let mut out = [0; MAX_ORDER];
        for (o, (p, q)) in out
            .iter_mut()
            .zip(self.pos.iter().zip(&self.neg))
            .take(self.n)
        {
            *o = p & q;
        }
        out
    }

    /// Rows of nonzero positions.
    pub(crate) fn support_rows(&self) -> Rows {
        let mut out = [0; MAX_ORDER];
        for (o, (p, q)) in out
            .iter_mut()
            .zip(self.pos.iter().zip(&self.neg))
            .take(self.n)
        {
            *o = p | q;
        }
        out
    }

    /// True iff some entry is `#`.
    pub fn has_amb(&self) -> bool {
        (0..self.n).any(|i| self.pos[i] & self.neg[i] != 0)
    }

    /// True iff every entry is `#`.
    pub fn is_all_amb(&self) -> bool {
        let full = full_row(self.n);
        (0..self.n).all(|i| self.pos[i] & self.neg[i] == full)
    }

    /// A pure pattern has entries in `{0, +, -}` only.
    pub fn is_pure(&self) -> bool {
        !self.has_amb()
    }

    /// Positions holding `#`, as a boolean matrix.
    pub fn amb_matrix(&self) -> BoolMatrix {
        BoolMatrix::from_rows(self.n, self.amb_rows())
    }

    /// Zero pattern `|A|`.
    pub fn support(&self) -> BoolMatrix {
        BoolMatrix::from_rows(self.n, self.support_rows())
    }

    /// Product over the generalized sign semiring.
    pub fn mul(&self, other: &SignPattern) -> Result<SignPattern> {
        if self.n != other.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = SignPattern {
            n: self.n,
            pos: [0; MAX_ORDER],
            neg: [0; MAX_ORDER],
        };
        for i in 0..self.n {
            let (mut p, mut q) = (0, 0);
            for t in ones(self.pos[i]) {
                p |= other.pos[t];
                q |= other.neg[t];
            }
            for t in ones(self.neg[i]) {
                p |= other.neg[t];
                q |= other.pos[t];
            }
            out.pos[i] = p;
            out.neg[i] = q;
        }
        Ok(out)
    }

    /// `A^l` by iterated multiplication; `A^0` is the identity pattern.
    pub fn power(&self, l: usize) -> SignPattern {
        let mut acc = Self::identity(self.n).expect("order already validated");
        for _ in 0..l {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }
}

impl fmt::Debug for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            let line: String = (1..=self.n).map(|j| self.get(i, j).symbol()).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Product of two patterns over the generalized sign semiring.
pub fn mat_mul(a: &SignPattern, b: &SignPattern) -> Result<SignPattern> {
    a.mul(b)
}

/// `A^l`.
pub fn mat_power(a: &SignPattern, l: usize) -> SignPattern {
    a.power(l)
}

/// Cached sequence `A^0, A^1, ..., A^len-1`.
///
/// The cache is built by the owner and then read; it is not shared mutably.
#[derive(Debug, Clone)]
pub struct PowerSequence {
    powers: Vec<SignPattern>,
}

impl PowerSequence {
    pub fn new(a: &SignPattern) -> Self {
        let id = SignPattern::identity(a.n).expect("order already validated");
        PowerSequence {
            powers: vec![id, *a],
        }
    }

    pub fn base(&self) -> &SignPattern {
        &self.powers[1]
    }

    /// Makes sure `A^l` is cached.
    pub fn extend_to(&mut self, l: usize) {
        while self.powers.len() <= l {
            let next = self
                .powers
                .last()
                .unwrap()
                .mul(self.base())
                .expect("same order");
            self.powers.push(next);
        }
    }

    /// Appends the next power and returns it.
    pub fn push_next(&mut self) -> &SignPattern {
        let l = self.powers.len();
        self.extend_to(l);
        &self.powers[l]
    }

    pub fn get(&self, l: usize) -> Option<&SignPattern> {
        self.powers.get(l)
    }

    /// Highest cached exponent.
    pub fn max_power(&self) -> usize {
        self.powers.len() - 1
    }
}

/// Result of detecting the first repetition in `A, A^2, A^3, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerTrace {
    /// Least `l >= 1` with `A^l = A^(l+p)` for some `p >= 1`.
    pub base_l: usize,
    /// Least such `p` at `base_l`.
    pub period_p: usize,
    /// `A^base_l`.
    pub stabilized: SignPattern,
}

/// Generalized base of a pure pattern, found by remembering every power seen.
///
/// Terminates because there are finitely many patterns of a given order.
pub fn power_sequence_base(a: &SignPattern) -> Result<PowerTrace> {
    Ok(trace_powers(a)?.0)
}

/// Power trace together with the distinct powers `A^1 .. A^(l+p-1)`.
pub(crate) fn trace_powers(a: &SignPattern) -> Result<(PowerTrace, Vec<SignPattern>)> {
    if !a.is_pure() {
        return Err(Error::NotPure);
    }
    let mut seen: HashMap<SignPattern, usize> = HashMap::new();
    let mut distinct = Vec::new();
    let mut current = *a;
    let mut index = 1;
    loop {
        if let Some(&first) = seen.get(&current) {
            let trace = PowerTrace {
                base_l: first,
                period_p: index - first,
                stabilized: current,
            };
            return Ok((trace, distinct));
        }
        seen.insert(current, index);
        distinct.push(current);
        current = current.mul(a)?;
        index += 1;
    }
}
