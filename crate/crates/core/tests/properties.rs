use proptest::prelude::*;

use signbase::families::default_budgets;
use signbase::oracle::enumerate_signs;
use signbase::report::input_digest;
use signbase::signed::BaseAnalysis;
use signbase::*;

fn gen_sign() -> impl Strategy<Value = GenSign> {
    prop::sample::select(GenSign::ALL.to_vec())
}

fn pure_sign() -> impl Strategy<Value = GenSign> {
    prop::sample::select(vec![
        GenSign::Zero,
        GenSign::Zero,
        GenSign::Pos,
        GenSign::Neg,
    ])
}

fn pattern_of(n: usize, entry: BoxedStrategy<GenSign>) -> impl Strategy<Value = SignPattern> {
    prop::collection::vec(prop::collection::vec(entry, n), n)
        .prop_map(|rows| SignPattern::from_entries(&rows).unwrap())
}

fn patterns(count: usize, pure: bool) -> impl Strategy<Value = Vec<SignPattern>> {
    (1usize..=5).prop_flat_map(move |n| {
        let entry = if pure {
            pure_sign().boxed()
        } else {
            gen_sign().boxed()
        };
        prop::collection::vec(pattern_of(n, entry), count)
    })
}

/// Arbitrary signed digraph on 1..=5 vertices.
fn signed_digraph() -> impl Strategy<Value = SignedDigraph> {
    (1usize..=5)
        .prop_flat_map(|n| pattern_of(n, pure_sign().boxed()))
        .prop_map(|p| SignedDigraph::from_pattern(&p).unwrap())
}

/// Primitive non-powerful signed digraph of order `lo..=hi`.
fn nonpowerful(lo: usize, hi: usize) -> impl Strategy<Value = SignedDigraph> {
    (lo..=hi, any::<u64>()).prop_flat_map(|(n, seed)| {
        let b = if n <= 2 {
            n + 1..=n * n
        } else {
            default_budgets(n)
        };
        b.prop_map(move |budget| random_primitive_nonpowerful(n, budget, seed).unwrap())
    })
}

fn primitive_digraph(lo: usize, hi: usize) -> impl Strategy<Value = Digraph> {
    (lo..=hi, any::<u64>()).prop_flat_map(|(n, seed)| {
        (n + 1..=(2 * n + 2).min(n * n))
            .prop_map(move |budget| random_primitive_digraph(n, budget, seed).unwrap())
    })
}

fn decode(pos: bool, neg: bool) -> GenSign {
    match (pos, neg) {
        (false, false) => GenSign::Zero,
        (true, false) => GenSign::Pos,
        (false, true) => GenSign::Neg,
        (true, true) => GenSign::Amb,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(ms in patterns(3, false)) {
        let ab_c = mat_mul(&mat_mul(&ms[0], &ms[1]).unwrap(), &ms[2]).unwrap();
        let a_bc = mat_mul(&ms[0], &mat_mul(&ms[1], &ms[2]).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn product_matches_entry_formula(ms in patterns(2, false)) {
        let (a, b) = (&ms[0], &ms[1]);
        let n = a.order();
        let c = mat_mul(a, b).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let e = (1..=n).fold(GenSign::Zero, |acc, t| acc + a.get(i, t) * b.get(t, j));
                prop_assert_eq!(c.get(i, j), e);
            }
        }
    }

    #[test]
    fn amb_persists_along_arcs(ms in patterns(1, true), p in 1usize..6) {
        let a = &ms[0];
        let n = a.order();
        let ap = a.power(p);
        let next = a.power(p + 1);
        for x in 1..=n {
            for u in 1..=n {
                for v in 1..=n {
                    if ap.get(x, u) == GenSign::Amb && a.get(u, v) != GenSign::Zero {
                        prop_assert_eq!(next.get(x, v), GenSign::Amb);
                    }
                }
            }
        }
    }

    #[test]
    fn powers_match_walk_oracle(s in signed_digraph(), l in 1usize..=8) {
        let n = s.order();
        let p = mat_power(s.pattern(), l);
        let amb = sssd_matrix(&s, l);
        for u in 1..=n {
            for v in 1..=n {
                let (pos, neg) = enumerate_signs(&s, u, v, l).unwrap();
                prop_assert_eq!(p.get(u, v), decode(pos, neg));
                prop_assert_eq!(amb.get(u, v), pos && neg);
            }
        }
    }

    #[test]
    fn base_stabilizes_at_all_amb(s in nonpowerful(2, 7)) {
        let t = power_sequence_base(s.pattern()).unwrap();
        prop_assert_eq!(t.period_p, 1);
        prop_assert!(t.stabilized.is_all_amb());
        prop_assert_eq!(mat_power(s.pattern(), t.base_l), mat_power(s.pattern(), t.base_l + 1));
        if t.base_l > 1 {
            prop_assert!(!mat_power(s.pattern(), t.base_l - 1).is_all_amb());
        }
    }

    #[test]
    fn powerfulness_routes_agree(d in primitive_digraph(2, 6), signs in any::<u64>()) {
        let arcs: Vec<_> = d
            .arcs()
            .into_iter()
            .enumerate()
            .map(|(i, (u, v))| (u, v, if signs >> (i % 64) & 1 == 1 { Sign::Neg } else { Sign::Pos }))
            .collect();
        let s = SignedDigraph::from_arcs(d.order(), &arcs).unwrap();
        prop_assert_eq!(is_powerful(&s).unwrap(), is_powerful_by_powers(&s).unwrap());
    }

    #[test]
    fn distinguished_pairs_meet_their_condition(s in nonpowerful(2, 6)) {
        let pairs = distinguished_pairs(&s).unwrap();
        prop_assert!(!pairs.is_empty());
        for p in pairs {
            let (a, b) = (&p.c1, &p.c2);
            match p.condition {
                PairCondition::OddEvenNegative => {
                    prop_assert!(a.length % 2 == 1 && b.length % 2 == 0 && b.sign == Sign::Neg);
                }
                PairCondition::OddOppositeSigns => {
                    prop_assert!(a.length % 2 == 1 && b.length % 2 == 1 && a.sign != b.sign);
                }
            }
            for c in [a, b] {
                prop_assert_eq!(c.vertices.len(), c.length);
                let mut sign = Sign::Pos;
                for (i, &u) in c.vertices.iter().enumerate() {
                    let v = c.vertices[(i + 1) % c.length];
                    sign = sign * s.sign(u, v).unwrap();
                }
                prop_assert_eq!(sign, c.sign);
            }
        }
    }

    #[test]
    fn multiexponent_bounds_and_chain(d in primitive_digraph(2, 7)) {
        let n = d.order();
        let girth = shortest_cycle_length(&d).unwrap() as i64;
        let table = multiexponent_table(&d).unwrap();
        for e in &table {
            let k = e.k as i64;
            let n = n as i64;
            prop_assert!(e.value as i64 <= (n - k) * (n - 1) + 1);
            prop_assert!(e.value as i64 <= (n - k - 1) * girth + n);
            prop_assert_eq!(set_exponent(&d, e.witness).unwrap(), e.value);
        }
        prop_assert!(table.windows(2).all(|w| w[0].value >= w[1].value));
        prop_assert_eq!(table[n - 1].value, 0);
        let single = (1..=n)
            .map(|v| set_exponent(&d, VertexSet::from_labels(n, &[v]).unwrap()).unwrap())
            .max()
            .unwrap();
        prop_assert_eq!(exponent(&d).unwrap(), single);
        prop_assert_eq!(table[0].value, single);
    }

    #[test]
    fn reach_coverage_is_monotone(d in primitive_digraph(2, 7), pick in any::<u16>()) {
        let n = d.order();
        let labels: Vec<usize> = (1..=n).filter(|v| pick >> (v - 1) & 1 == 1).collect();
        let labels = if labels.is_empty() { vec![1] } else { labels };
        let x = VertexSet::from_labels(n, &labels).unwrap();
        let start = set_exponent(&d, x).unwrap();
        let mut prof = ReachabilityProfile::new(&d);
        for p in start..start + 2 * n {
            let r = prof.reach(p);
            for v in 1..=n {
                prop_assert!(labels.iter().any(|&u| r.get(u, v)), "p = {}, v = {}", p, v);
            }
        }
    }

    #[test]
    fn upper_bases_chain_and_identity(s in nonpowerful(2, 7)) {
        let n = s.order();
        let a = BaseAnalysis::new(&s).unwrap();
        let table = a.upper_base_table().unwrap();
        prop_assert!(table.windows(2).all(|w| w[0].value >= w[1].value));
        prop_assert_eq!(table[0].value, power_sequence_base(s.pattern()).unwrap().base_l);
        prop_assert_eq!(table[0].value, a.generalized_base());
        for e in &table {
            prop_assert_eq!(a.set_base(e.witness).unwrap(), e.value);
            prop_assert_eq!(e.witness.len(), e.k);
            if n >= 6 {
                prop_assert!(e.value <= main_bound(n, e.k));
            }
        }
    }

    #[test]
    fn sssd_coverage_is_monotone(s in nonpowerful(2, 6), pick in any::<u16>()) {
        let n = s.order();
        let labels: Vec<usize> = (1..=n).filter(|v| pick >> (v - 1) & 1 == 1).collect();
        let labels = if labels.is_empty() { vec![n] } else { labels };
        let x = VertexSet::from_labels(n, &labels).unwrap();
        let start = set_base(&s, x).unwrap();
        for p in start..start + 2 * n {
            let m = sssd_matrix(&s, p);
            for v in 1..=n {
                prop_assert!(labels.iter().any(|&u| m.get(u, v)), "p = {}, v = {}", p, v);
            }
        }
        if start > 0 {
            let m = sssd_matrix(&s, start - 1);
            prop_assert!((1..=n).any(|v| labels.iter().all(|&u| !m.get(u, v))));
        }
    }

    #[test]
    fn structural_bounds_dominate(s in nonpowerful(3, 7)) {
        let a = BaseAnalysis::new(&s).unwrap();
        for k in 1..=s.order() {
            let l = a.kth_upper_base(k).unwrap().value;
            prop_assert!(signbase::signed::bound_sssd_pair_with(&a, k).unwrap().value >= l);
            if let Some(c) = signbase::signed::bound_common_vertices_with(&a, k).unwrap() {
                prop_assert!(c.value >= l);
            }
        }
    }

    #[test]
    fn johnson_agrees_with_capped_search(d in primitive_digraph(2, 7), cap in 1usize..=7) {
        let n = d.order();
        let cap = cap.min(n);
        let all = enumerate_cycles(&d, n).unwrap();
        let short: Vec<_> = all.iter().filter(|c| c.len() <= cap).cloned().collect();
        prop_assert_eq!(enumerate_cycles(&d, cap).unwrap(), short);
        for c in &all {
            prop_assert_eq!(c[0], *c.iter().min().unwrap());
            for i in 0..c.len() {
                prop_assert!(d.has_arc(c[i], c[(i + 1) % c.len()]));
            }
        }
    }

    #[test]
    fn family_recognition_survives_relabeling(
        n in 4usize..=9,
        perm in any::<u64>(),
        second in any::<bool>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let family = if second { Family::D2 } else { Family::D1 };
        let mut p: Vec<usize> = (1..=n).collect();
        p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm));
        let d = family.digraph(n).unwrap().relabel(&p).unwrap();
        prop_assert!(isomorphic_to(&d, family));
        let other = if second { Family::D1 } else { Family::D2 };
        prop_assert!(!isomorphic_to(&d, other));
    }

    #[test]
    fn structural_matcher_agrees_with_brute_force(d in primitive_digraph(4, 6)) {
        let n = d.order();
        for f in [Family::D1, Family::D2] {
            let target = f.digraph(n).unwrap();
            prop_assert_eq!(isomorphic_to(&d, f), isomorphic_brute(&d, &target));
        }
    }

    #[test]
    fn near_family_digraphs_are_rejected(n in 5usize..=8, extra in (1usize..=8, 1usize..=8)) {
        let d1 = Family::D1.digraph(n).unwrap();
        let (u, v) = (extra.0.min(n), extra.1.min(n));
        if !d1.has_arc(u, v) {
            let mut arcs = d1.arcs();
            arcs.push((u, v));
            let d = Digraph::from_arcs(n, &arcs).unwrap();
            let is_d2 = isomorphic_brute(&d, &Family::D2.digraph(n).unwrap());
            prop_assert!(!isomorphic_to(&d, Family::D1));
            prop_assert_eq!(isomorphic_to(&d, Family::D2), is_d2);
        }
    }

    #[test]
    fn sdg_round_trip(s in signed_digraph()) {
        let text = serialize_sdg(&s);
        let back = parse_sdg(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(serialize_sdg(&back), text);
    }

    #[test]
    fn reports_are_byte_stable(s in nonpowerful(2, 6)) {
        let a = analyze(&s, Some(1)).unwrap();
        let b = analyze(&parse_sdg(&serialize_sdg(&s)).unwrap(), Some(1)).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert!(a.audit_passed());
        prop_assert_eq!(input_digest(&s).len(), 64);
    }

    #[test]
    fn frobenius_boundary(a in 2u64..=20, b in 2u64..=20, c in 2u64..=30) {
        let Ok(basis) = FrobeniusBasis::new(&[a, b, c]) else { return Ok(()) };
        let phi = frobenius_number(&basis);
        let top = *basis.generators().last().unwrap();
        for m in phi..=phi + top {
            prop_assert!(in_frobenius_set(m, &basis));
        }
        if phi >= 1 {
            prop_assert!(!in_frobenius_set(phi - 1, &basis));
        }
    }
}

#[test]
fn gamma_laws_hold_exhaustively() {
    for &x in &GenSign::ALL {
        for &y in &GenSign::ALL {
            assert_eq!(x + y, y + x);
            assert_eq!(x * y, y * x);
            for &z in &GenSign::ALL {
                assert_eq!((x + y) + z, x + (y + z));
                assert_eq!((x * y) * z, x * (y * z));
                assert_eq!(x * (y + z), x * y + x * z);
            }
        }
    }
}
