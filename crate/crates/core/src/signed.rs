//! Signed digraphs: powerfulness, distinguished cycle pairs, SSSD walks and
//! the `k`th upper base `L(S,k)`.
//!
//! Two walks form an SSSD pair when they share their initial vertex, their
//! terminal vertex and their length but carry different signs. Entry `(u, v)`
//! of `A^l` is `#` exactly when such a pair of length `l` runs from `u` to
//! `v`, so every base computation here is a scan over the `#` plane of the
//! power sequence.
//!
//! The base `l_S(X)` is defined as the least `p` at which the SSSD coverage
//! condition holds. For strongly connected `S` the condition, once true, stays
//! true: extend each pair by one arc into the target vertex. Outside strong
//! connectivity nothing promises that, which is one reason the base routines
//! insist on primitive input.

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::{check_vertex, first_cover, full_row, max_cover, ones, BoolMatrix, VertexSet};
use crate::digraph::{
    check_k, diameter, enumerate_cycles, is_primitive, upper_multiexponent, Digraph, Extremum,
};
use crate::error::{Error, Result};
use crate::gsign::{trace_powers, GenSign, Sign, SignPattern};

/// Digraph whose arcs carry a sign; equivalent to a pure sign pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedDigraph {
    pattern: SignPattern,
}

impl SignedDigraph {
    /// Builds from 1-based signed arcs. Repeating an arc, with either sign, is an error.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut pattern = SignPattern::zero(n)?;
        for &(u, v, s) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            match pattern.get(u, v) {
                GenSign::Zero => pattern.set(u, v, s.into()),
                existing if existing == GenSign::from(s) => {
                    return Err(Error::DuplicateArc { tail: u, head: v })
                }
                _ => return Err(Error::OppositeParallelArcs { tail: u, head: v }),
            }
        }
        Ok(SignedDigraph { pattern })
    }

    /// Reads a pure pattern as a signed digraph.
    pub fn from_pattern(pattern: &SignPattern) -> Result<Self> {
        if !pattern.is_pure() {
            return Err(Error::NotPure);
        }
        Ok(SignedDigraph { pattern: *pattern })
    }

    pub fn order(&self) -> usize {
        self.pattern.order()
    }

    pub fn pattern(&self) -> &SignPattern {
        &self.pattern
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        match self.pattern.get(u, v) {
            GenSign::Pos => Some(Sign::Pos),
            GenSign::Neg => Some(Sign::Neg),
            _ => None,
        }
    }

    /// Arcs in lexicographic order of `(tail, head)`.
    pub fn arcs(&self) -> Vec<(usize, usize, Sign)> {
        let n = self.order();
        let (pos, neg) = (self.pattern.pos_rows(), self.pattern.neg_rows());
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in ones(pos[u] | neg[u]) {
                let s = if pos[u] >> v & 1 == 1 {
                    Sign::Pos
                } else {
                    Sign::Neg
                };
                arcs.push((u + 1, v + 1, s));
            }
        }
        arcs
    }

    pub fn arc_count(&self) -> usize {
        self.pattern.support().count_true()
    }

    pub fn underlying(&self) -> Digraph {
        Digraph::from_rows(self.order(), self.pattern.support_rows())
    }

    /// Same digraph with the sign of arc `(u, v)` replaced.
    pub fn with_sign(&self, u: usize, v: usize, s: Sign) -> Result<Self> {
        if self.sign(u, v).is_none() {
            return Err(Error::InvalidArgument(format!("no arc {u} -> {v}")));
        }
        let mut pattern = self.pattern;
        pattern.set(u, v, s.into());
        Ok(SignedDigraph { pattern })
    }
}

impl std::fmt::Debug for SignedDigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .iter()
            .map(|(u, v, s)| format!("{u}{}{v}", s.symbol()))
            .collect();
        f.debug_struct("SignedDigraph")
            .field("n", &self.order())
            .field("arcs", &arcs)
            .finish()
    }
}

/// A simple cycle with its sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRecord {
    /// Vertices in traversal order, smallest first.
    pub vertices: Vec<usize>,
    pub length: usize,
    pub sign: Sign,
}

impl CycleRecord {
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_labels(crate::bits::MAX_ORDER, &self.vertices).unwrap()
    }
}

/// Every simple cycle of `s` with its sign.
pub fn signed_cycles(s: &SignedDigraph) -> Result<Vec<CycleRecord>> {
    let n = s.order();
    Ok(enumerate_cycles(&s.underlying(), n)?
        .into_iter()
        .map(|vertices| {
            let sign = (0..vertices.len())
                .map(|i| {
                    let (u, v) = (vertices[i], vertices[(i + 1) % vertices.len()]);
                    s.sign(u, v).expect("cycle arcs exist")
                })
                .fold(Sign::Pos, |acc, x| acc * x);
            CycleRecord {
                length: vertices.len(),
                vertices,
                sign,
            }
        })
        .collect())
}

/// Which non-powerfulness condition a cycle pair meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairCondition {
    /// One odd cycle and one even cycle of sign `-1`.
    OddEvenNegative,
    /// Two odd cycles of opposite signs.
    OddOppositeSigns,
}

/// Two cycles certifying non-powerfulness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishedPair {
    /// For [`PairCondition::OddEvenNegative`] this is the odd cycle.
    pub c1: CycleRecord,
    pub c2: CycleRecord,
    pub condition: PairCondition,
    /// Shared length of the closed walks `(lcm/p1) C1` and `(lcm/p2) C2`.
    pub lcm_length: usize,
    /// Shared length of `p2 C1` and `p1 C2`.
    pub product_length: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn classify(a: &CycleRecord, b: &CycleRecord) -> Option<(PairCondition, bool)> {
    let (odd_a, odd_b) = (a.length % 2 == 1, b.length % 2 == 1);
    match (odd_a, odd_b) {
        (true, true) if a.sign != b.sign => Some((PairCondition::OddOppositeSigns, false)),
        (true, false) if b.sign == Sign::Neg => Some((PairCondition::OddEvenNegative, false)),
        (false, true) if a.sign == Sign::Neg => Some((PairCondition::OddEvenNegative, true)),
        _ => None,
    }
}

fn pairs_of(cycles: &[CycleRecord]) -> Vec<DistinguishedPair> {
    let mut out = Vec::new();
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            if let Some((condition, swap)) = classify(a, b) {
                let (c1, c2) = if swap { (b, a) } else { (a, b) };
                out.push(DistinguishedPair {
                    lcm_length: c1.length / gcd(c1.length, c2.length) * c2.length,
                    product_length: c1.length * c2.length,
                    c1: c1.clone(),
                    c2: c2.clone(),
                    condition,
                });
            }
        }
    }
    out
}

fn require_primitive(s: &SignedDigraph) -> Result<()> {
    if is_primitive(&s.underlying()) {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

/// All unordered cycle pairs meeting either non-powerfulness condition.
pub fn distinguished_pairs(s: &SignedDigraph) -> Result<Vec<DistinguishedPair>> {
    require_primitive(s)?;
    Ok(pairs_of(&signed_cycles(s)?))
}

/// Powerfulness through cycle pairs: a primitive signed digraph is
/// non-powerful iff it has a distinguished cycle pair.
pub fn is_powerful(s: &SignedDigraph) -> Result<bool> {
    Ok(distinguished_pairs(s)?.is_empty())
}

/// Powerfulness straight from the definition: no power of the pattern has a
/// `#` entry. Runs the power sequence until its first repetition.
pub fn is_powerful_by_powers(s: &SignedDigraph) -> Result<bool> {
    let (_, distinct) = trace_powers(s.pattern())?;
    Ok(distinct.iter().all(|p| !p.has_amb()))
}

/// Positions `(u, v)` joined by an SSSD pair of length `l`.
pub fn sssd_matrix(s: &SignedDigraph, l: usize) -> BoolMatrix {
    s.pattern().power(l).amb_matrix()
}

/// `(2n - k)(n - 1) + 1`, the largest possible `L(S,k)` for order `n >= 6`.
pub fn main_bound(n: usize, k: usize) -> usize {
    (2 * n - k) * (n - 1) + 1
}

/// Orders from which the upper bound on `L(S,k)` is a theorem.
pub const THEOREM_MIN_ORDER: usize = 6;

/// Shared state for base computations on one primitive non-powerful signed
/// digraph: the power sequence `A^0 ..= A^l(S)`, where `A^l(S)` is the first
/// all-`#` power.
#[derive(Debug, Clone)]
pub struct BaseAnalysis {
    s: SignedDigraph,
    powers: Vec<SignPattern>,
}

impl BaseAnalysis {
    pub fn new(s: &SignedDigraph) -> Result<Self> {
        if is_powerful(s)? {
            return Err(Error::Powerful);
        }
        let n = s.order();
        let a = s.pattern();
        let cap = (n >= THEOREM_MIN_ORDER).then(|| main_bound(n, 1));
        let mut powers = vec![SignPattern::identity(n)?, *a];
        let mut seen = HashSet::new();
        loop {
            let last = *powers.last().unwrap();
            if last.is_all_amb() {
                break;
            }
            let l = powers.len() - 1;
            if cap.is_some_and(|c| l >= c) {
                return Err(Error::TheoremViolation(format!(
                    "no all-# power up to A^{l} at order {n}"
                )));
            }
            if !seen.insert(last) {
                return Err(Error::TheoremViolation(
                    "power sequence of a primitive non-powerful pattern cycled before reaching all-#"
                        .into(),
                ));
            }
            powers.push(last.mul(a)?);
        }
        Ok(BaseAnalysis { s: *s, powers })
    }

    pub fn signed_digraph(&self) -> &SignedDigraph {
        &self.s
    }

    /// `l(S)`: the index of the first all-`#` power.
    pub fn generalized_base(&self) -> usize {
        self.powers.len() - 1
    }

    /// `A^l` for `l <= l(S)`; beyond that every power is all-`#`.
    pub fn power(&self, l: usize) -> SignPattern {
        *self
            .powers
            .get(l)
            .unwrap_or_else(|| self.powers.last().unwrap())
    }

    fn check_bound(&self, k: usize, value: usize) -> Result<()> {
        let n = self.s.order();
        if n >= THEOREM_MIN_ORDER && value > main_bound(n, k) {
            return Err(Error::TheoremViolation(format!(
                "base {value} exceeds (2n-k)(n-1)+1 = {} at n = {n}, k = {k}",
                main_bound(n, k)
            )));
        }
        Ok(())
    }

    /// `l_S(X)`.
    pub fn set_base(&self, set: VertexSet) -> Result<usize> {
        let n = self.s.order();
        set.validate(n)?;
        let full = full_row(n);
        let value = (1..=self.generalized_base())
            .find(|&p| {
                let amb = self.powers[p].amb_rows();
                ones(set.bits()).fold(0, |acc, x| acc | amb[x]) == full
            })
            .expect("the last cached power is all-#");
        self.check_bound(set.len(), value)?;
        Ok(value)
    }

    /// `L(S,k)` with its lexicographically first maximising set.
    pub fn kth_upper_base(&self, k: usize) -> Result<Extremum> {
        let n = self.s.order();
        check_k(k, n)?;
        let covers = first_cover(n, k, 1, self.generalized_base(), |p| {
            self.powers[p].amb_rows()
        });
        let (value, witness) = max_cover(&covers).expect("the last cached power is all-#");
        self.check_bound(k, value)?;
        Ok(Extremum { k, value, witness })
    }

    /// `L(S,1), ..., L(S,n)`.
    pub fn upper_base_table(&self) -> Result<Vec<Extremum>> {
        (1..=self.s.order())
            .map(|k| self.kth_upper_base(k))
            .collect()
    }

    /// Shortest SSSD pair anywhere in `S`, as `(length, from, to)`, with the
    /// lexicographically first endpoints.
    pub fn shortest_sssd_pair(&self) -> (usize, usize, usize) {
        for l in 1..=self.generalized_base() {
            let amb = self.powers[l].amb_rows();
            if let Some(u) = (0..self.s.order()).find(|&u| amb[u] != 0) {
                return (l, u + 1, amb[u].trailing_zeros() as usize + 1);
            }
        }
        unreachable!("the last cached power is all-#")
    }
}

/// `l_S(X)` for a primitive non-powerful `S`.
pub fn set_base(s: &SignedDigraph, set: VertexSet) -> Result<usize> {
    BaseAnalysis::new(s)?.set_base(set)
}

/// `L(S,k)` for a primitive non-powerful `S`.
pub fn kth_upper_base(s: &SignedDigraph, k: usize) -> Result<Extremum> {
    BaseAnalysis::new(s)?.kth_upper_base(k)
}

/// Upper bound `F(D,k) + d(D) + r` built from one SSSD pair of length `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SssdPairBound {
    pub k: usize,
    pub multiexponent: usize,
    pub diameter: usize,
    /// Length of the SSSD pair used.
    pub sssd_length: usize,
    pub from: usize,
    pub to: usize,
    pub value: usize,
}

/// The SSSD-pair bound using the shortest SSSD pair of `S`.
pub fn bound_sssd_pair(s: &SignedDigraph, k: usize) -> Result<SssdPairBound> {
    bound_sssd_pair_with(&BaseAnalysis::new(s)?, k)
}

pub fn bound_sssd_pair_with(analysis: &BaseAnalysis, k: usize) -> Result<SssdPairBound> {
    let d = analysis.signed_digraph().underlying();
    let f = upper_multiexponent(&d, k)?.value;
    let diam = diameter(&d)?;
    let (r, from, to) = analysis.shortest_sssd_pair();
    Ok(SssdPairBound {
        k,
        multiexponent: f,
        diameter: diam,
        sssd_length: r,
        from,
        to,
        value: f + diam + r,
    })
}

/// Upper bound `F(D,k) + r + n - |V1|`, where every vertex of `V1` carries a
/// closed SSSD pair of length `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommonVertexBound {
    pub k: usize,
    pub multiexponent: usize,
    pub sssd_length: usize,
    /// Cycle lengths of the distinguished pair that fixed `r`.
    pub pair_lengths: (usize, usize),
    pub vertices: VertexSet,
    pub value: usize,
}

/// Minimum of the common-vertex bound over distinguished pairs, taking for
/// each pair `r = lcm(p1, p2)` and `V1` the vertices with a closed SSSD pair of
/// length `r`. `None` when no such vertex exists for any pair.
pub fn bound_common_vertices(s: &SignedDigraph, k: usize) -> Result<Option<CommonVertexBound>> {
    bound_common_vertices_with(&BaseAnalysis::new(s)?, k)
}

pub fn bound_common_vertices_with(
    analysis: &BaseAnalysis,
    k: usize,
) -> Result<Option<CommonVertexBound>> {
    let s = analysis.signed_digraph();
    let n = s.order();
    let f = upper_multiexponent(&s.underlying(), k)?.value;
    let mut best: Option<CommonVertexBound> = None;
    for pair in distinguished_pairs(s)? {
        let r = pair.lcm_length;
        let vertices = analysis.power(r).amb_matrix().diagonal();
        if vertices.is_empty() {
            continue;
        }
        let value = f + r + n - vertices.len();
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(CommonVertexBound {
                k,
                multiexponent: f,
                sssd_length: r,
                pair_lengths: (pair.c1.length, pair.c2.length),
                vertices,
                value,
            });
        }
    }
    Ok(best)
}
