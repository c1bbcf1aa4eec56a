//! Frobenius coin problem: which integers are nonnegative combinations of a
//! set of generators, and from where on all of them are.

use crate::error::{Error, Result};

/// Positive generators with greatest common divisor 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusBasis {
    generators: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FrobeniusBasis {
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("no generators".into()));
        }
        if generators.contains(&0) {
            return Err(Error::InvalidArgument("generators must be positive".into()));
        }
        let g = generators.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::InvalidArgument(format!(
                "generators have gcd {g}; infinitely many integers are unrepresentable"
            )));
        }
        let mut generators = generators.to_vec();
        generators.sort_unstable();
        generators.dedup();
        Ok(FrobeniusBasis { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    fn min(&self) -> u64 {
        self.generators[0]
    }

    fn max(&self) -> u64 {
        *self.generators.last().unwrap()
    }

    /// `min * max`; the Frobenius number never reaches it.
    fn scan_limit(&self) -> u64 {
        self.min() * self.max()
    }

    /// `table[m]` is true iff `m` is representable, for `m <= limit`.
    fn table(&self, limit: u64) -> Vec<bool> {
        let limit = limit as usize;
        let mut reachable = vec![false; limit + 1];
        reachable[0] = true;
        for m in 1..=limit {
            reachable[m] = self
                .generators
                .iter()
                .any(|&g| g as usize <= m && reachable[m - g as usize]);
        }
        reachable
    }
}

/// Whether `m` is a nonnegative integer combination of the generators.
pub fn in_frobenius_set(m: u64, basis: &FrobeniusBasis) -> bool {
    if m >= basis.scan_limit() {
        return true;
    }
    basis.table(m)[m as usize]
}

/// Least `phi` such that every integer `m >= phi` is representable.
pub fn frobenius_number(basis: &FrobeniusBasis) -> u64 {
    let table = basis.table(basis.scan_limit());
    table
        .iter()
        .rposition(|&r| !r)
        .map_or(0, |last_gap| last_gap as u64 + 1)
}

/// All `(a, b)` with `a, b >= 0` and `total = a*n + b*(n-1) + m`.
///
/// These are the cycle counts available to a walk of length `total` that
/// runs along a path of length `m` and otherwise winds around one cycle of
/// length `n` and one of length `n - 1`.
pub fn two_cycle_walk_decompose(total: u64, m: u64, n: u64) -> Result<Vec<(u64, u64)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must be at least 2"
        )));
    }
    let Some(rest) = total.checked_sub(m) else {
        return Ok(Vec::new());
    };
    Ok((0..=rest / n)
        .filter_map(|a| {
            let left = rest - a * n;
            left.is_multiple_of(n - 1).then(|| (a, left / (n - 1)))
        })
        .collect())
}
