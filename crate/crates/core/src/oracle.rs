//! Brute-force walk enumeration, kept independent of the semiring engine.
//!
//! Nothing here touches sign patterns or bitplanes: walks are generated by a
//! plain depth-first search over an adjacency list built from the arc list.
//! It is only meant for tiny inputs and refuses anything past its caps.

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::gsign::Sign;
use crate::signed::SignedDigraph;

/// Largest order the oracle accepts.
pub const ORACLE_MAX_ORDER: usize = 6;
/// Largest walk length the oracle accepts.
pub const ORACLE_MAX_LENGTH: usize = 12;

/// A walk as a sequence of arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    pub arcs: Vec<(usize, usize, Sign)>,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn sign(&self) -> Sign {
        self.arcs.iter().fold(Sign::Pos, |acc, a| acc * a.2)
    }

    /// Consecutive arcs chain head to tail.
    pub fn is_chained(&self) -> bool {
        self.arcs.windows(2).all(|w| w[0].1 == w[1].0)
    }
}

fn adjacency(s: &SignedDigraph) -> Vec<Vec<(usize, i8)>> {
    let mut adj = vec![Vec::new(); s.order() + 1];
    for (u, v, sign) in s.arcs() {
        adj[u].push((v, sign.as_i8()));
    }
    adj
}

fn check_caps(s: &SignedDigraph, l: usize) -> Result<()> {
    if s.order() > ORACLE_MAX_ORDER {
        return Err(Error::Capacity(format!(
            "oracle order cap is {ORACLE_MAX_ORDER}, got {}",
            s.order()
        )));
    }
    if l > ORACLE_MAX_LENGTH {
        return Err(Error::Capacity(format!(
            "oracle length cap is {ORACLE_MAX_LENGTH}, got {l}"
        )));
    }
    Ok(())
}

fn check_pair(s: &SignedDigraph, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x == 0 || x > s.order() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: s.order(),
            });
        }
    }
    Ok(())
}

fn dfs(
    adj: &[Vec<(usize, i8)>],
    at: usize,
    target: usize,
    left: usize,
    sign: i8,
    found: &mut [bool; 2],
) {
    if left == 0 {
        if at == target {
            found[if sign > 0 { 0 } else { 1 }] = true;
        }
        return;
    }
    for &(next, s) in &adj[at] {
        dfs(adj, next, target, left - 1, sign * s, found);
    }
}

/// Which signs occur among walks of length exactly `l` from `u` to `v`,
/// as `(positive_exists, negative_exists)`.
pub fn enumerate_signs(s: &SignedDigraph, u: usize, v: usize, l: usize) -> Result<(bool, bool)> {
    check_caps(s, l)?;
    check_pair(s, u, v)?;
    let adj = adjacency(s);
    let mut found = [false; 2];
    dfs(&adj, u, v, l, 1, &mut found);
    Ok((found[0], found[1]))
}

/// Every walk of length `l` from `u` to `v`.
pub fn enumerate_walks(s: &SignedDigraph, u: usize, v: usize, l: usize) -> Result<Vec<Walk>> {
    check_caps(s, l)?;
    check_pair(s, u, v)?;
    fn go(
        s: &SignedDigraph,
        at: usize,
        target: usize,
        left: usize,
        path: &mut Vec<(usize, usize, Sign)>,
        out: &mut Vec<Walk>,
    ) {
        if left == 0 {
            if at == target {
                out.push(Walk { arcs: path.clone() });
            }
            return;
        }
        for (a, b, sign) in s.arcs() {
            if a == at {
                path.push((a, b, sign));
                go(s, b, target, left - 1, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(s, u, v, l, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Numbers of positive and negative walks of length `l` from `u` to `v`,
/// saturating at `u64::MAX`.
pub fn count_walks(s: &SignedDigraph, u: usize, v: usize, l: usize) -> Result<(u64, u64)> {
    check_caps(s, l)?;
    check_pair(s, u, v)?;
    fn go(
        adj: &[Vec<(usize, i8)>],
        at: usize,
        target: usize,
        left: usize,
        sign: i8,
        counts: &mut [u64; 2],
    ) {
        if left == 0 {
            if at == target {
                let slot = if sign > 0 { 0 } else { 1 };
                counts[slot] = counts[slot].saturating_add(1);
            }
            return;
        }
        for &(next, s) in &adj[at] {
            go(adj, next, target, left - 1, sign * s, counts);
        }
    }
    let adj = adjacency(s);
    let mut counts = [0u64; 2];
    go(&adj, u, v, l, 1, &mut counts);
    Ok((counts[0], counts[1]))
}

/// `l_S(X)` by scanning lengths upward with [`enumerate_signs`].
pub fn oracle_set_base(s: &SignedDigraph, set: VertexSet) -> Result<usize> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("vertex set is empty".into()));
    }
    let n = s.order();
    let xs = set.labels();
    if let Some(&x) = xs.iter().find(|&&x| x > n) {
        return Err(Error::VertexOutOfRange { vertex: x, n });
    }
    for p in 0..=ORACLE_MAX_LENGTH {
        let mut covered = true;
        for v in 1..=n {
            let mut hit = false;
            for &x in &xs {
                if enumerate_signs(s, x, v, p)? == (true, true) {
                    hit = true;
                    break;
                }
            }
            if !hit {
                covered = false;
                break;
            }
        }
        if covered {
            return Ok(p);
        }
    }
    Err(Error::Capacity(format!(
        "no SSSD coverage up to the oracle length cap {ORACLE_MAX_LENGTH}"
    )))
}
