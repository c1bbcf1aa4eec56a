//! Unsigned structure: connectivity, diameter, simple cycles, primitivity,
//! exponents and the `k`th upper multiexponent `F(D,k)`.

use std::collections::BTreeSet;

use crate::bits::{
    check_order, check_vertex, first_cover, full_row, max_cover, ones, BoolMatrix, Row, Rows,
    VertexSet, MAX_ORDER,
};
use crate::error::{Error, Result};

/// Maximum number of cycles [`enumerate_cycles`] will report.
pub const MAX_CYCLES: usize = 1_000_000;

/// Digraph on vertices `1..=n`; loops allowed, parallel arcs not.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Rows,
}

impl Digraph {
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Digraph {
            n,
            out: [0; MAX_ORDER],
        })
    }

    /// Builds a digraph from 1-based arcs, rejecting duplicates.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Self::empty(n)?;
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub(crate) fn from_rows(n: usize, out: Rows) -> Self {
        Digraph { n, out }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        if self.has_arc(u, v) {
            return Err(Error::DuplicateArc { tail: u, head: v });
        }
        self.out[u - 1] |= 1 << (v - 1);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && v >= 1 && v <= self.n && self.out[u - 1] >> (v - 1) & 1 == 1
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| ones(self.out[u]).map(move |v| (u + 1, v + 1)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    pub fn adjacency(&self) -> BoolMatrix {
        BoolMatrix::from_rows(self.n, self.out)
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u - 1].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out[..self.n]
            .iter()
            .filter(|r| *r >> (v - 1) & 1 == 1)
            .count()
    }

    /// Same digraph with vertex `v` renamed to `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.n {
            return Err(Error::OrderMismatch {
                left: self.n,
                right: perm.len(),
            });
        }
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if distinct.len() != self.n || perm.iter().any(|&p| p == 0 || p > self.n) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        let arcs: Vec<_> = self
            .arcs()
            .into_iter()
            .map(|(u, v)| (perm[u - 1], perm[v - 1]))
            .collect();
        Digraph::from_arcs(self.n, &arcs)
    }

    fn reversed_rows(&self) -> Rows {
        let mut rev = [0; MAX_ORDER];
        for u in 0..self.n {
            for v in ones(self.out[u]) {
                rev[v] |= 1 << u;
            }
        }
        rev
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs())
            .finish()
    }
}

fn reach_closure(rows: &Rows, start: usize) -> Row {
    let mut seen: Row = 1 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let next = ones(frontier).fold(0, |acc, u| acc | rows[u]);
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// True iff every ordered pair of vertices is joined by a directed path.
pub fn strongly_connected(d: &Digraph) -> bool {
    let full = full_row(d.n);
    reach_closure(&d.out, 0) == full && reach_closure(&d.reversed_rows(), 0) == full
}

/// Shortest-path distances from 1-based `source`; `None` marks unreachable.
pub fn distances_from(d: &Digraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; d.n];
    dist[source - 1] = Some(0);
    let mut seen: Row = 1 << (source - 1);
    let mut frontier = seen;
    let mut level = 0;
    while frontier != 0 {
        level += 1;
        let next = ones(frontier).fold(0, |acc, u| acc | d.out[u]) & !seen;
        for v in ones(next) {
            dist[v] = Some(level);
        }
        seen |= next;
        frontier = next;
    }
    dist
}

/// Largest shortest-path distance over ordered vertex pairs.
pub fn diameter(d: &Digraph) -> Result<usize> {
    if !strongly_connected(d) {
        return Err(Error::NotStronglyConnected);
    }
    Ok((1..=d.n)
        .flat_map(|u| distances_from(d, u))
        .map(|x| x.expect("strongly connected"))
        .max()
        .unwrap_or(0))
}

struct CycleSink {
    cycles: Vec<Vec<usize>>,
}

impl CycleSink {
    fn record(&mut self, path: &[usize]) -> Result<()> {
        if self.cycles.len() >= MAX_CYCLES {
            return Err(Error::Capacity(format!(
                "more than {MAX_CYCLES} simple cycles"
            )));
        }
        self.cycles.push(path.iter().map(|v| v + 1).collect());
        Ok(())
    }
}

/// Johnson's circuit search over the subgraph induced on vertices `>= s`.
struct Johnson<'a> {
    out: &'a Rows,
    allowed: Row,
    start: usize,
    blocked: Row,
    blockers: Rows,
    stack: Vec<usize>,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        self.blocked &= !(1 << u);
        while self.blockers[u] != 0 {
            let w = self.blockers[u].trailing_zeros() as usize;
            self.blockers[u] &= !(1 << w);
            if self.blocked >> w & 1 == 1 {
                self.unblock(w);
            }
        }
    }

    fn circuit(&mut self, v: usize, sink: &mut CycleSink) -> Result<bool> {
        let mut found = false;
        self.stack.push(v);
        self.blocked |= 1 << v;
        let succ = self.out[v] & self.allowed;
        for w in ones(succ) {
            if w == self.start {
                sink.record(&self.stack)?;
                found = true;
            } else if self.blocked >> w & 1 == 0 && self.circuit(w, sink)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for w in ones(succ) {
                self.blockers[w] |= 1 << v;
            }
        }
        self.stack.pop();
        Ok(found)
    }
}

fn capped_search(
    out: &Rows,
    allowed: Row,
    start: usize,
    cap: usize,
    path: &mut Vec<usize>,
    on_path: Row,
    sink: &mut CycleSink,
) -> Result<()> {
    let v = *path.last().unwrap();
    for w in ones(out[v] & allowed) {
        if w == start {
            sink.record(path)?;
        } else if on_path >> w & 1 == 0 && path.len() < cap {
            path.push(w);
            capped_search(out, allowed, start, cap, path, on_path | 1 << w, sink)?;
            path.pop();
        }
    }
    Ok(())
}

/// All simple directed cycles of length at most `length_cap`.
///
/// Each cycle is listed once, rotated so that its smallest vertex comes
/// first; the list is sorted by length, then by vertex sequence. Without an
/// effective cap Johnson's blocking search is used; with a cap the search
/// falls back to a depth-bounded walk from each minimal vertex.
pub fn enumerate_cycles(d: &Digraph, length_cap: usize) -> Result<Vec<Vec<usize>>> {
    if length_cap == 0 || length_cap > d.n {
        return Err(Error::InvalidArgument(format!(
            "length cap {length_cap} must lie in 1..={}",
            d.n
        )));
    }
    let mut sink = CycleSink { cycles: Vec::new() };
    for s in 0..d.n {
        let allowed = full_row(d.n) & !((1 << s) - 1);
        if length_cap == d.n {
            let mut j = Johnson {
                out: &d.out,
                allowed,
                start: s,
                blocked: 0,
                blockers: [0; MAX_ORDER],
                stack: Vec::with_capacity(d.n),
            };
            j.circuit(s, &mut sink)?;
        } else {
            let mut path = vec![s];
            capped_search(&d.out, allowed, s, length_cap, &mut path, 1 << s, &mut sink)?;
        }
    }
    let mut cycles = sink.cycles;
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(cycles)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Greatest common divisor of the cycle lengths of a strongly connected
/// digraph, read off breadth-first levels: it is the gcd of
/// `level(u) + 1 - level(v)` over all arcs `u -> v`.
pub fn cycle_length_gcd(d: &Digraph) -> Result<usize> {
    if !strongly_connected(d) {
        return Err(Error::NotStronglyConnected);
    }
    let level = distances_from(d, 1);
    let mut g = 0;
    for (u, v) in d.arcs() {
        let lu = level[u - 1].unwrap() as isize;
        let lv = level[v - 1].unwrap() as isize;
        g = gcd(g, (lu + 1 - lv).unsigned_abs());
    }
    if g == 0 {
        // A single vertex without a loop has no cycle at all.
        return Err(Error::Acyclic);
    }
    Ok(g)
}

/// Strongly connected with cycle lengths of gcd 1.
pub fn is_primitive(d: &Digraph) -> bool {
    matches!(cycle_length_gcd(d), Ok(1))
}

/// Wielandt's bound on the exponent of a primitive digraph of order `n`.
pub fn wielandt_bound(n: usize) -> usize {
    (n - 1) * (n - 1) + 1
}

/// Least `k` with every entry of the boolean `k`-th power set.
pub fn exponent(d: &Digraph) -> Result<usize> {
    if !is_primitive(d) {
        return Err(Error::NotPrimitive);
    }
    let a = d.adjacency();
    let mut power = a;
    for k in 1..=wielandt_bound(d.n) {
        if power.is_all_true() {
            return Ok(k);
        }
        power = power.mul(&a)?;
    }
    Err(Error::TheoremViolation(
        "primitive digraph exceeded the Wielandt bound".into(),
    ))
}

/// Boolean powers `A^0, A^1, ...` of a digraph's adjacency matrix.
#[derive(Debug, Clone)]
pub struct ReachabilityProfile {
    adjacency: BoolMatrix,
    powers: Vec<BoolMatrix>,
}

impl ReachabilityProfile {
    pub fn new(d: &Digraph) -> Self {
        ReachabilityProfile {
            adjacency: d.adjacency(),
            powers: vec![BoolMatrix::identity(d.n).unwrap()],
        }
    }

    /// `reach(p)(u, v)` is true iff a walk of length exactly `p` runs from `u` to `v`.
    pub fn reach(&mut self, p: usize) -> &BoolMatrix {
        while self.powers.len() <= p {
            let next = self.powers.last().unwrap().mul(&self.adjacency).unwrap();
            self.powers.push(next);
        }
        &self.powers[p]
    }
}

fn covers_at(rows: &Rows, set: VertexSet, n: usize) -> bool {
    ones(set.bits()).fold(0, |acc, x| acc | rows[x]) == full_row(n)
}

/// Least `p` such that walks of length `p` from `X` reach every vertex.
///
/// `X = V` gives `0` through the length-0 walks.
pub fn set_exponent(d: &Digraph, set: VertexSet) -> Result<usize> {
    set.validate(d.n)?;
    let stop = exponent(d)?;
    let mut profile = ReachabilityProfile::new(d);
    (0..=stop)
        .find(|&p| covers_at(profile.reach(p).rows(), set, d.n))
        .ok_or_else(|| Error::TheoremViolation("set exponent exceeded exp(D)".into()))
}

/// A maximum over `k`-subsets together with the lexicographically first
/// subset attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Extremum {
    pub k: usize,
    pub value: usize,
    pub witness: VertexSet,
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::InvalidArgument(format!(
            "k = {k} must lie in 1..={n}"
        )))
    } else {
        Ok(())
    }
}

/// `F(D,k)`, the largest set exponent over `k`-subsets.
///
/// Follows the convention `F(D,n) = 0`.
pub fn upper_multiexponent(d: &Digraph, k: usize) -> Result<Extremum> {
    check_k(k, d.n)?;
    Ok(multiexponent_table(d)?[k - 1])
}

/// `F(D,1), ..., F(D,n)` in one pass over a shared power sequence.
pub fn multiexponent_table(d: &Digraph) -> Result<Vec<Extremum>> {
    let stop = exponent(d)?;
    let mut profile = ReachabilityProfile::new(d);
    for p in 0..=stop {
        profile.reach(p);
    }
    (1..=d.n)
        .map(|k| {
            let covers = first_cover(d.n, k, 0, stop, |p| *profile.powers[p].rows());
            let (value, witness) = max_cover(&covers)
                .ok_or_else(|| Error::TheoremViolation("a set exponent exceeded exp(D)".into()))?;
            Ok(Extremum { k, value, witness })
        })
        .collect()
}

/// Length of a shortest cycle.
pub fn shortest_cycle_length(d: &Digraph) -> Result<usize> {
    let a = d.adjacency();
    let mut power = a;
    for l in 1..=d.n {
        if !power.diagonal().is_empty() {
            return Ok(l);
        }
        power = power.mul(&a)?;
    }
    Err(Error::Acyclic)
}

/// The two extremal digraph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Family {
    /// Hamilton cycle `1 -> 2 -> ... -> n -> 1` plus the chord `n-1 -> 1`.
    D1,
    /// `D1` plus the chord `n -> 2`.
    D2,
}

impl Family {
    /// Unsigned member of order `n`.
    pub fn digraph(self, n: usize) -> Result<Digraph> {
        let min = match self {
            Family::D1 => 3,
            Family::D2 => 4,
        };
        if n < min {
            return Err(Error::InvalidArgument(format!(
                "{self:?} needs order at least {min}, got {n}"
            )));
        }
        let mut arcs: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        arcs.push((n, 1));
        arcs.push((n - 1, 1));
        if self == Family::D2 {
            arcs.push((n, 2));
        }
        Digraph::from_arcs(n, &arcs)
    }

    fn chord_count(self) -> usize {
        match self {
            Family::D1 => 1,
            Family::D2 => 2,
        }
    }
}

fn hamilton_cycles(d: &Digraph) -> Vec<Vec<usize>> {
    fn extend(d: &Digraph, path: &mut Vec<usize>, used: Row, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if path.len() == d.n {
            if d.out[v] & 1 == 1 {
                out.push(path.clone());
            }
            return;
        }
        for w in ones(d.out[v] & !used) {
            path.push(w);
            extend(d, path, used | 1 << w, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    let mut path = vec![0];
    extend(d, &mut path, 1, &mut out);
    out
}

/// Whether `d` is isomorphic to the member of `family` of the same order.
///
/// Every member is a Hamilton cycle plus chords that each skip one vertex,
/// with consecutive chord tails for `D2`. The check enumerates Hamilton
/// cycles of `d` and compares the remaining arcs with that shape.
pub fn isomorphic_to(d: &Digraph, family: Family) -> bool {
    let n = d.n;
    if family.digraph(n).is_err() || d.arc_count() != n + family.chord_count() {
        return false;
    }
    for cycle in hamilton_cycles(d) {
        let mut pos = [0usize; MAX_ORDER];
        for (i, &v) in cycle.iter().enumerate() {
            pos[v] = i;
        }
        let mut tails = Vec::new();
        let mut fits = true;
        for (u, v) in d.arcs() {
            let (pu, pv) = (pos[u - 1], pos[v - 1]);
            if (pu + 1) % n == pv {
                continue;
            }
            if (pu + 2) % n == pv {
                tails.push(pu);
            } else {
                fits = false;
                break;
            }
        }
        if !fits || tails.len() != family.chord_count() {
            continue;
        }
        let matched = match family {
            Family::D1 => true,
            Family::D2 => (tails[0] + 1) % n == tails[1] || (tails[1] + 1) % n == tails[0],
        };
        if matched {
            return true;
        }
    }
    false
}

/// General isomorphism by backtracking over vertex bijections, pruned by
/// in/out degree and loop signatures. Exponential; intended for small orders.
pub fn isomorphic_brute(a: &Digraph, b: &Digraph) -> bool {
    if a.n != b.n || a.arc_count() != b.arc_count() {
        return false;
    }
    let n = a.n;
    let sig = |d: &Digraph, v: usize| (d.out_degree(v), d.in_degree(v), d.has_arc(v, v));
    let sa: Vec<_> = (1..=n).map(|v| sig(a, v)).collect();
    let sb: Vec<_> = (1..=n).map(|v| sig(b, v)).collect();
    let mut ms = sa.clone();
    let mut mb = sb.clone();
    ms.sort();
    mb.sort();
    if ms != mb {
        return false;
    }

    fn assign(
        a: &Digraph,
        b: &Digraph,
        sa: &[(usize, usize, bool)],
        sb: &[(usize, usize, bool)],
        map: &mut Vec<usize>,
        used: Row,
    ) -> bool {
        let u = map.len();
        if u == a.n {
            return true;
        }
        for w in 0..a.n {
            if used >> w & 1 == 1 || sa[u] != sb[w] {
                continue;
            }
            let consistent = (0..u).all(|x| {
                a.has_arc(u + 1, x + 1) == b.has_arc(w + 1, map[x] + 1)
                    && a.has_arc(x + 1, u + 1) == b.has_arc(map[x] + 1, w + 1)
            });
            if consistent {
                map.push(w);
                if assign(a, b, sa, sb, map, used | 1 << w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }

    assign(a, b, &sa, &sb, &mut Vec::with_capacity(n), 0)
}
