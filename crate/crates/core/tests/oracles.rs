//! Engine results against slow, independent reference computations, plus
//! values frozen from those references.

use signbase::bits::k_subsets;
use signbase::digraph::{cycle_length_gcd, ReachabilityProfile};
use signbase::oracle::{count_walks, enumerate_signs, enumerate_walks, oracle_set_base};
use signbase::signed::BaseAnalysis;
use signbase::*;

fn tiny3() -> SignedDigraph {
    parse_sdg("sdg n=3\n1 2 +\n2 1 -\n2 3 +\n3 1 +\n").unwrap()
}

const ORACLE_LIMIT: usize = signbase::oracle::ORACLE_MAX_LENGTH;

type Naive = Vec<Vec<bool>>;

fn naive_adj(d: &Digraph) -> Naive {
    let n = d.order();
    (1..=n)
        .map(|u| (1..=n).map(|v| d.has_arc(u, v)).collect())
        .collect()
}

fn naive_mul(a: &Naive, b: &Naive) -> Naive {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|t| a[i][t] && b[t][j])).collect())
        .collect()
}

fn naive_identity(n: usize) -> Naive {
    (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
}

/// Least p in 0..=limit such that row-union over `set` of A^p is everything.
fn naive_cover(adj: &Naive, set: &[usize], limit: usize) -> Option<usize> {
    let n = adj.len();
    let mut m = naive_identity(n);
    for p in 0..=limit {
        if (0..n).all(|j| set.iter().any(|&x| m[x][j])) {
            return Some(p);
        }
        m = naive_mul(&m, adj);
    }
    None
}

fn naive_exponent(adj: &Naive) -> Option<usize> {
    let n = adj.len();
    let mut m = adj.clone();
    for k in 1..=(n - 1) * (n - 1) + 1 {
        if m.iter().all(|r| r.iter().all(|&b| b)) {
            return Some(k);
        }
        m = naive_mul(&m, adj);
    }
    None
}

fn naive_f(adj: &Naive, k: usize) -> usize {
    let n = adj.len();
    if k == n {
        return 0;
    }
    let limit = (n - 1) * (n - 1) + 1;
    subsets(n, k)
        .iter()
        .map(|x| naive_cover(adj, x, limit).unwrap())
        .max()
        .unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn brute_representable(m: u64, gens: &[u64]) -> bool {
    fn go(m: u64, gens: &[u64]) -> bool {
        match gens.split_first() {
            None => m == 0,
            Some((&g, rest)) => (0..=m / g).any(|c| go(m - c * g, rest)),
        }
    }
    go(m, gens)
}

#[test]
fn tiny3_walk_signs_match_engine() {
    let s = tiny3();
    for l in 1..=12 {
        let p = s.pattern().power(l);
        for u in 1..=3 {
            for v in 1..=3 {
                let (pos, neg) = enumerate_signs(&s, u, v, l).unwrap();
                let expect = match (pos, neg) {
                    (false, false) => GenSign::Zero,
                    (true, false) => GenSign::Pos,
                    (false, true) => GenSign::Neg,
                    (true, true) => GenSign::Amb,
                };
                assert_eq!(p.get(u, v), expect, "({u},{v}) at length {l}");
            }
        }
    }
}

#[test]
fn tiny3_frozen_values() {
    let s = tiny3();
    let trace = power_sequence_base(s.pattern()).unwrap();
    assert_eq!((trace.base_l, trace.period_p), (11, 1));
    assert!(trace.stabilized.is_all_amb());

    let one = |v: &[usize]| VertexSet::from_labels(3, v).unwrap();
    assert_eq!(set_base(&s, one(&[1])).unwrap(), 10);
    assert_eq!(set_base(&s, one(&[2])).unwrap(), 9);
    assert_eq!(set_base(&s, one(&[3])).unwrap(), 11);
    assert_eq!(set_base(&s, one(&[1, 2, 3])).unwrap(), 7);

    let a = BaseAnalysis::new(&s).unwrap();
    let table: Vec<(usize, Vec<usize>)> = a
        .upper_base_table()
        .unwrap()
        .into_iter()
        .map(|e| (e.value, e.witness.labels()))
        .collect();
    assert_eq!(
        table,
        vec![(11, vec![3]), (9, vec![2, 3]), (7, vec![1, 2, 3])]
    );

    let d = s.underlying();
    assert_eq!(exponent(&d).unwrap(), 5);
    let f: Vec<(usize, Vec<usize>)> = multiexponent_table(&d)
        .unwrap()
        .into_iter()
        .map(|e| (e.value, e.witness.labels()))
        .collect();
    assert_eq!(f, vec![(5, vec![3]), (3, vec![2, 3]), (0, vec![1, 2, 3])]);
    assert_eq!(set_exponent(&d, one(&[1])).unwrap(), 4);

    assert_eq!(a.shortest_sssd_pair(), (5, 2, 1));
    let b = bound_sssd_pair(&s, 1).unwrap();
    assert_eq!(
        (b.multiexponent, b.diameter, b.sssd_length, b.value),
        (5, 2, 5, 12)
    );
    let c = bound_common_vertices(&s, 1).unwrap().unwrap();
    assert_eq!((c.multiexponent, c.sssd_length, c.value), (5, 6, 12));
    assert_eq!(c.vertices.labels(), vec![1, 2]);
}

#[test]
fn tiny3_walk_lists() {
    let s = tiny3();
    assert!(enumerate_walks(&s, 1, 1, 0).unwrap().len() == 1);
    let w = enumerate_walks(&s, 1, 1, 6).unwrap();
    assert!(w.iter().all(|x| x.len() == 6 && x.is_chained()));
    let signs: Vec<_> = w.iter().map(|x| x.sign()).collect();
    assert!(signs.contains(&Sign::Pos) && signs.contains(&Sign::Neg));
    let (p, q) = count_walks(&s, 1, 1, 6).unwrap();
    assert_eq!(p as usize + q as usize, w.len());
}

#[test]
fn set_base_matches_walk_oracle_on_small_samples() {
    let mut checked = 0;
    for n in 2..=5 {
        for budget in n + 1..=(2 * n).min(n * n) {
            for seed in 0..6 {
                let s = random_primitive_nonpowerful(n, budget, seed * 7 + n as u64).unwrap();
                let a = BaseAnalysis::new(&s).unwrap();
                if a.generalized_base() > ORACLE_LIMIT {
                    continue;
                }
                for k in 1..=n {
                    for x in k_subsets(n, k) {
                        assert_eq!(
                            a.set_base(x).unwrap(),
                            oracle_set_base(&s, x).unwrap(),
                            "{s:?} {x}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 200, "only {checked} sets compared");
}

#[test]
fn walk_counts_satisfy_convolution() {
    let s = tiny3();
    for l in 1..=8 {
        for u in 1..=3 {
            for v in 1..=3 {
                let (pos, neg) = count_walks(&s, u, v, l).unwrap();
                let mut p = 0;
                let mut q = 0;
                for (t, w, sign) in s.arcs() {
                    if w != v {
                        continue;
                    }
                    let (a, b) = count_walks(&s, u, t, l - 1).unwrap();
                    match sign {
                        Sign::Pos => {
                            p += a;
                            q += b;
                        }
                        Sign::Neg => {
                            p += b;
                            q += a;
                        }
                    }
                }
                assert_eq!((pos, neg), (p, q), "({u},{v}) length {l}");
            }
        }
    }
}

#[test]
fn exponents_and_multiexponents_match_naive_powers() {
    let mut graphs = vec![tiny3().underlying()];
    for n in 3..=6 {
        graphs.push(Family::D1.digraph(n).unwrap());
        if n >= 4 {
            graphs.push(Family::D2.digraph(n).unwrap());
        }
        for seed in 0..8 {
            let budget = n + 1 + seed as usize % n;
            graphs.push(random_primitive_digraph(n, budget, seed).unwrap());
        }
    }
    for d in &graphs {
        let adj = naive_adj(d);
        assert_eq!(
            Some(exponent(d).unwrap()),
            naive_exponent(&adj),
            "{:?}",
            d.arcs()
        );
        for k in 1..=d.order() {
            assert_eq!(
                upper_multiexponent(d, k).unwrap().value,
                naive_f(&adj, k),
                "{:?} k={k}",
                d.arcs()
            );
        }
        let mut prof = ReachabilityProfile::new(d);
        let mut m = naive_identity(d.order());
        for p in 0..10 {
            let r = prof.reach(p);
            for (i, row) in m.iter().enumerate() {
                for (j, &b) in row.iter().enumerate() {
                    assert_eq!(r.get(i + 1, j + 1), b);
                }
            }
            m = naive_mul(&m, &adj);
        }
    }
}

#[test]
fn primitivity_matches_cycle_gcd_and_powers() {
    for n in 2..=6 {
        for seed in 0..20u64 {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed + 100 * n as u64);
            let mut arcs = Vec::new();
            for u in 1..=n {
                for v in 1..=n {
                    if rng.gen_bool(0.3) {
                        arcs.push((u, v));
                    }
                }
            }
            let d = Digraph::from_arcs(n, &arcs).unwrap();
            let cycles = enumerate_cycles(&d, n).unwrap();
            let g = cycles.iter().fold(0, |g, c| gcd(g, c.len()));
            let by_cycles = strongly_connected(&d) && g == 1;
            assert_eq!(is_primitive(&d), by_cycles, "{arcs:?}");
            assert_eq!(
                is_primitive(&d),
                naive_exponent(&naive_adj(&d)).is_some(),
                "{arcs:?}"
            );
            if strongly_connected(&d) && g > 0 {
                assert_eq!(cycle_length_gcd(&d).unwrap(), g);
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn powerfulness_routes_agree_with_walk_signs() {
    for n in 2..=4 {
        for seed in 0..30u64 {
            let d = random_primitive_digraph(n, n + 1 + (seed as usize % n), seed).unwrap();
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let arcs: Vec<_> = d
                .arcs()
                .into_iter()
                .map(|(u, v)| {
                    (
                        u,
                        v,
                        if rng.gen_bool(0.5) {
                            Sign::Pos
                        } else {
                            Sign::Neg
                        },
                    )
                })
                .collect();
            let s = SignedDigraph::from_arcs(n, &arcs).unwrap();
            let amb_walks = (1..=ORACLE_LIMIT).any(|l| {
                (1..=n)
                    .any(|u| (1..=n).any(|v| enumerate_signs(&s, u, v, l).unwrap() == (true, true)))
            });
            assert_eq!(is_powerful(&s).unwrap(), !amb_walks, "{arcs:?}");
            assert_eq!(is_powerful_by_powers(&s).unwrap(), !amb_walks);
        }
    }
}

#[test]
fn frobenius_matches_brute_force() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 40 {
        let mut gens: Vec<u64> = (0..rng.gen_range(2..=4))
            .map(|_| rng.gen_range(2..=15))
            .collect();
        gens.sort_unstable();
        let Ok(b) = FrobeniusBasis::new(&gens) else {
            continue;
        };
        let f = frobenius_number(&b);
        let top = gens[0] * gens[gens.len() - 1] + 5;
        let last_gap = (0..top).filter(|&m| !brute_representable(m, &gens)).max();
        assert_eq!(f, last_gap.map_or(0, |g| g + 1), "{gens:?}");
        for m in 0..top {
            assert_eq!(
                in_frobenius_set(m, &b),
                brute_representable(m, &gens),
                "{gens:?} m={m}"
            );
        }
        done += 1;
    }
}

#[test]
fn two_cycle_decomposition_is_complete() {
    for (total, m, n) in [
        (55u64, 0u64, 6u64),
        (40, 5, 7),
        (30, 2, 3),
        (12, 12, 5),
        (3, 7, 4),
        (90, 9, 2),
    ] {
        let got = two_cycle_walk_decompose(total, m, n).unwrap();
        let want: Vec<(u64, u64)> = (0..=total)
            .flat_map(|a| (0..=total).map(move |b| (a, b)))
            .filter(|&(a, b)| a * n + b * (n - 1) + m == total)
            .collect();
        assert_eq!(got, want, "total={total} m={m} n={n}");
    }
}
