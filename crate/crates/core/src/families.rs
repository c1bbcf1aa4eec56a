//! The extremal families `D1`/`D2` with sign assignments, random samplers,
//! and the harness that checks the closed forms, the third bound and the gap.
//!
//! Labels follow the figures: the Hamilton cycle is `1 -> 2 -> ... -> n -> 1`,
//! `D1` adds the chord `n-1 -> 1` and `D2` additionally `n -> 2`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::VertexSet;
use crate::digraph::{is_primitive, isomorphic_to, Digraph, Family};
use crate::error::{Error, Result};
use crate::gsign::{GenSign, Sign};
use crate::oracle::{enumerate_signs, ORACLE_MAX_LENGTH, ORACLE_MAX_ORDER};
use crate::signed::{is_powerful, main_bound, signed_cycles, BaseAnalysis, SignedDigraph};

/// How signs are placed on a family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignPolicy {
    /// Every arc `+1`; always powerful.
    AllPositive,
    /// Minimal non-powerful assignment. On `D2` this is [`SignPolicy::SameSignNm1`].
    CanonicalNonpowerful,
    /// `D2` only: both `(n-1)`-cycles get the same sign, non-powerful.
    SameSignNm1,
    /// `D2` only: the `(n-1)`-cycles get opposite signs, non-powerful.
    DifferentSignNm1,
    /// A sign for each arc of the family member, listed exactly once.
    Explicit(BTreeMap<(usize, usize), Sign>),
}

impl SignPolicy {
    fn requires_nonpowerful(&self) -> bool {
        !matches!(self, SignPolicy::AllPositive | SignPolicy::Explicit(_))
    }
}

fn with_negative_arcs(d: &Digraph, negative: &[(usize, usize)]) -> Result<SignedDigraph> {
    let arcs: Vec<_> = d
        .arcs()
        .into_iter()
        .map(|(u, v)| {
            let s = if negative.contains(&(u, v)) {
                Sign::Neg
            } else {
                Sign::Pos
            };
            (u, v, s)
        })
        .collect();
    SignedDigraph::from_arcs(d.order(), &arcs)
}

fn explicit(d: &Digraph, map: &BTreeMap<(usize, usize), Sign>) -> Result<SignedDigraph> {
    let arcs = d.arcs();
    if map.len() != arcs.len() || arcs.iter().any(|a| !map.contains_key(a)) {
        return Err(Error::Policy(format!(
            "explicit policy must sign exactly the {} arcs {:?}",
            arcs.len(),
            arcs
        )));
    }
    let signed: Vec<_> = arcs.iter().map(|&(u, v)| (u, v, map[&(u, v)])).collect();
    SignedDigraph::from_arcs(d.order(), &signed)
}

fn validated(s: SignedDigraph, policy: &SignPolicy) -> Result<SignedDigraph> {
    if policy.requires_nonpowerful() && is_powerful(&s)? {
        return Err(Error::Policy(format!(
            "{policy:?} produced a powerful signing"
        )));
    }
    Ok(s)
}

/// `D1` of order `n` signed by `policy`.
///
/// The canonical signing makes `n C_{n-1}` and `(n-1) C_n` differ in sign:
/// for odd `n` the chord `n-1 -> 1` is negative (the even `(n-1)`-cycle turns
/// negative), for even `n` the arc `n -> 1` is (the even `n`-cycle turns
/// negative).
pub fn build_d1(n: usize, policy: &SignPolicy) -> Result<SignedDigraph> {
    let d = Family::D1.digraph(n)?;
    let s = match policy {
        SignPolicy::AllPositive => with_negative_arcs(&d, &[])?,
        SignPolicy::CanonicalNonpowerful if n % 2 == 1 => with_negative_arcs(&d, &[(n - 1, 1)])?,
        SignPolicy::CanonicalNonpowerful => with_negative_arcs(&d, &[(n, 1)])?,
        SignPolicy::SameSignNm1 | SignPolicy::DifferentSignNm1 => {
            return Err(Error::Policy(
                "D1 has a single (n-1)-cycle; use the canonical policy".into(),
            ))
        }
        SignPolicy::Explicit(map) => explicit(&d, map)?,
    };
    validated(s, policy)
}

/// `D2` of order `n` signed by `policy`.
///
/// Same-sign: for even `n` only `n -> 1` is negative, so both odd
/// `(n-1)`-cycles stay positive and the even `n`-cycle is negative; for odd
/// `n` the shared arc `2 -> 3` is negative, making both even `(n-1)`-cycles
/// negative. Different-sign: the chord `n-1 -> 1` is negative.
pub fn build_d2(n: usize, policy: &SignPolicy) -> Result<SignedDigraph> {
    let d = Family::D2.digraph(n)?;
    let s = match policy {
        SignPolicy::AllPositive => with_negative_arcs(&d, &[])?,
        SignPolicy::CanonicalNonpowerful | SignPolicy::SameSignNm1 if n.is_multiple_of(2) => {
            with_negative_arcs(&d, &[(n, 1)])?
        }
        SignPolicy::CanonicalNonpowerful | SignPolicy::SameSignNm1 => {
            with_negative_arcs(&d, &[(2, 3)])?
        }
        SignPolicy::DifferentSignNm1 => with_negative_arcs(&d, &[(n - 1, 1)])?,
        SignPolicy::Explicit(map) => explicit(&d, map)?,
    };
    let s = validated(s, policy)?;
    let nm1: Vec<Sign> = signed_cycles(&s)?
        .iter()
        .filter(|c| c.length == n - 1)
        .map(|c| c.sign)
        .collect();
    let same = nm1[0] == nm1[1];
    match policy {
        SignPolicy::SameSignNm1 | SignPolicy::CanonicalNonpowerful if !same => Err(Error::Policy(
            "(n-1)-cycles ended up with different signs".into(),
        )),
        SignPolicy::DifferentSignNm1 if same => Err(Error::Policy(
            "(n-1)-cycles ended up with equal signs".into(),
        )),
        _ => Ok(s),
    }
}

/// Whether the two `(n-1)`-cycles of a `D2`-shaped signed digraph agree in sign.
pub fn d2_cycles_same_sign(s: &SignedDigraph) -> Result<bool> {
    let n = s.order();
    let signs: Vec<Sign> = signed_cycles(s)?
        .iter()
        .filter(|c| c.length == n - 1)
        .map(|c| c.sign)
        .collect();
    if signs.len() != 2 {
        return Err(Error::InvalidArgument("not shaped like D2".into()));
    }
    Ok(signs[0] == signs[1])
}

const SAMPLE_ATTEMPTS: usize = 200_000;

fn random_arcs(n: usize, budget: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|u| (1..=n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(budget);
    pairs
}

fn check_budget(n: usize, budget: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "order {n} must be at least 2"
        )));
    }
    crate::bits::check_order(n)?;
    if budget < n + 1 || budget > n * n {
        return Err(Error::InvalidArgument(format!(
            "arc budget {budget} cannot give a primitive digraph of order {n} (need {}..={})",
            n + 1,
            n * n
        )));
    }
    Ok(())
}

/// Uniform random primitive digraph with exactly `arc_budget` arcs (loops
/// allowed), by rejection sampling; deterministic in `seed`.
pub fn random_primitive_digraph(n: usize, arc_budget: usize, seed: u64) -> Result<Digraph> {
    check_budget(n, arc_budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let d = Digraph::from_arcs(n, &random_arcs(n, arc_budget, &mut rng))?;
        if is_primitive(&d) {
            return Ok(d);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no primitive digraph found in {SAMPLE_ATTEMPTS} draws"
    )))
}

/// Random primitive non-powerful signed digraph with `arc_budget` arcs and
/// uniformly random signs, by rejection sampling; deterministic in `seed`.
pub fn random_primitive_nonpowerful(
    n: usize,
    arc_budget: usize,
    seed: u64,
) -> Result<SignedDigraph> {
    check_budget(n, arc_budget)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let arcs: Vec<_> = random_arcs(n, arc_budget, &mut rng)
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
        let s = SignedDigraph::from_arcs(n, &arcs)?;
        if is_primitive(&s.underlying()) && !is_powerful(&s)? {
            return Ok(s);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no primitive non-powerful signed digraph found in {SAMPLE_ATTEMPTS} draws"
    )))
}

/// Default arc-budget range for sampling at order `n`.
pub fn default_budgets(n: usize) -> std::ops::RangeInclusive<usize> {
    n + 2..=2 * n
}

/// Claims checked by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `L(S1,k) = (2n-k)(n-1) + 1`.
    D1ClosedForm,
    /// `L(S2,k) = (2n-k)(n-1)` with equal-signed `(n-1)`-cycles.
    D2SameSignClosedForm,
    /// `L(S2,k) <= (n-k+1)(n-1) + 2` with opposite-signed `(n-1)`-cycles.
    D2DifferentSignBound,
    /// `L(S,k) <= (2n-k)(n-1) - 3` off the two families.
    ThirdBound,
    /// `L(S,k)` avoids the open interval `((2n-k)(n-1) - 3, (2n-k)(n-1))`.
    Gap,
}

/// What a computed value is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Expectation {
    Exact {
        value: usize,
    },
    AtMost {
        value: usize,
    },
    /// Value must not lie strictly between `low` and `high`.
    OutsideOpen {
        low: usize,
        high: usize,
    },
}

impl Expectation {
    pub fn admits(self, x: usize) -> bool {
        match self {
            Expectation::Exact { value } => x == value,
            Expectation::AtMost { value } => x <= value,
            Expectation::OutsideOpen { low, high } => !(low < x && x < high),
        }
    }
}

/// Where an analysed signed digraph came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subject {
    D1Canonical,
    D2SameSign,
    D2DifferentSign,
    Sample { index: usize, seed: u64 },
    Corpus { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub claim: Claim,
    pub subject: Subject,
    pub n: usize,
    pub k: usize,
    pub expected: Expectation,
    pub computed: usize,
    pub witness: VertexSet,
    pub pass: bool,
}

impl VerificationOutcome {
    fn new(
        claim: Claim,
        subject: Subject,
        n: usize,
        k: usize,
        expected: Expectation,
        computed: usize,
        witness: VertexSet,
    ) -> Self {
        VerificationOutcome {
            claim,
            subject,
            n,
            k,
            expected,
            computed,
            witness,
            pass: expected.admits(computed),
        }
    }
}

/// Which `k` to evaluate at order `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KMode {
    All,
    /// Listed values; `0` stands for `k = n`. Values above `n` are skipped.
    Only(Vec<usize>),
}

impl KMode {
    pub fn values(&self, n: usize) -> Vec<usize> {
        match self {
            KMode::All => (1..=n).collect(),
            KMode::Only(ks) => {
                let mut v: Vec<usize> = ks
                    .iter()
                    .map(|&k| if k == 0 { n } else { k })
                    .filter(|&k| k >= 1 && k <= n)
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
}

fn checked_order(n: usize) -> Result<()> {
    if !(6..=9).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "verification orders must lie in 6..=9, got {n}"
        )));
    }
    Ok(())
}

/// Closed forms for `D1` and same-sign `D2`, and the different-sign bound.
pub fn verify_closed_forms(
    orders: std::ops::RangeInclusive<usize>,
    k_mode: &KMode,
) -> Result<Vec<VerificationOutcome>> {
    let mut out = Vec::new();
    for n in orders {
        checked_order(n)?;
        let d1 = BaseAnalysis::new(&build_d1(n, &SignPolicy::CanonicalNonpowerful)?)?;
        let same = BaseAnalysis::new(&build_d2(n, &SignPolicy::SameSignNm1)?)?;
        let diff = BaseAnalysis::new(&build_d2(n, &SignPolicy::DifferentSignNm1)?)?;
        for k in k_mode.values(n) {
            let b = main_bound(n, k) - 1;
            let e = d1.kth_upper_base(k)?;
            out.push(VerificationOutcome::new(
                Claim::D1ClosedForm,
                Subject::D1Canonical,
                n,
                k,
                Expectation::Exact { value: b + 1 },
                e.value,
                e.witness,
            ));
            let e = same.kth_upper_base(k)?;
            out.push(VerificationOutcome::new(
                Claim::D2SameSignClosedForm,
                Subject::D2SameSign,
                n,
                k,
                Expectation::Exact { value: b },
                e.value,
                e.witness,
            ));
            let e = diff.kth_upper_base(k)?;
            out.push(VerificationOutcome::new(
                Claim::D2DifferentSignBound,
                Subject::D2DifferentSign,
                n,
                k,
                Expectation::AtMost {
                    value: (n - k + 1) * (n - 1) + 2,
                },
                e.value,
                e.witness,
            ));
        }
    }
    Ok(out)
}

/// Samples off the two families, drawn deterministically from `seed`.
///
/// Each sample gets an arc budget from [`default_budgets`] and its own seed.
pub fn sample_off_family(n: usize, count: usize, seed: u64) -> Result<Vec<(u64, SignedDigraph)>> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let plans: Vec<(usize, u64)> = (0..count)
        .map(|_| (master.gen_range(default_budgets(n)), master.gen()))
        .collect();
    plans
        .into_par_iter()
        .map(|(budget, sub)| {
            let mut attempt = sub;
            loop {
                let s = random_primitive_nonpowerful(n, budget, attempt)?;
                let d = s.underlying();
                if !isomorphic_to(&d, Family::D1) && !isomorphic_to(&d, Family::D2) {
                    return Ok((attempt, s));
                }
                attempt = attempt.wrapping_add(0x9E37_79B9_7F4A_7C15);
            }
        })
        .collect()
}

/// Third bound on off-family samples, and the gap on the whole analysed
/// population: samples, the three family signings, and `corpus`.
pub fn verify_third_bound_and_gap(
    n: usize,
    k: usize,
    sample_count: usize,
    seed: u64,
    corpus: &[SignedDigraph],
) -> Result<Vec<VerificationOutcome>> {
    if n < 6 {
        return Err(Error::InvalidArgument(format!(
            "the gap is stated for order at least 6, got {n}"
        )));
    }
    crate::digraph::check_k(k, n)?;
    let b = main_bound(n, k) - 1;
    let gap = Expectation::OutsideOpen {
        low: b - 3,
        high: b,
    };

    let samples = sample_off_family(n, sample_count, seed)?;
    let sample_bases: Vec<_> = samples
        .par_iter()
        .map(|(_, s)| BaseAnalysis::new(s)?.kth_upper_base(k))
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    for (index, ((sub, _), e)) in samples.iter().zip(&sample_bases).enumerate() {
        let subject = Subject::Sample { index, seed: *sub };
        out.push(VerificationOutcome::new(
            Claim::ThirdBound,
            subject.clone(),
            n,
            k,
            Expectation::AtMost { value: b - 3 },
            e.value,
            e.witness,
        ));
        out.push(VerificationOutcome::new(
            Claim::Gap,
            subject,
            n,
            k,
            gap,
            e.value,
            e.witness,
        ));
    }

    let families = [
        (
            Subject::D1Canonical,
            build_d1(n, &SignPolicy::CanonicalNonpowerful)?,
        ),
        (Subject::D2SameSign, build_d2(n, &SignPolicy::SameSignNm1)?),
        (
            Subject::D2DifferentSign,
            build_d2(n, &SignPolicy::DifferentSignNm1)?,
        ),
    ];
    for (subject, s) in families {
        let e = BaseAnalysis::new(&s)?.kth_upper_base(k)?;
        out.push(VerificationOutcome::new(
            Claim::Gap,
            subject,
            n,
            k,
            gap,
            e.value,
            e.witness,
        ));
    }
    for (index, s) in corpus.iter().enumerate().filter(|(_, s)| s.order() == n) {
        let e = BaseAnalysis::new(s)?.kth_upper_base(k)?;
        out.push(VerificationOutcome::new(
            Claim::Gap,
            Subject::Corpus { index },
            n,
            k,
            gap,
            e.value,
            e.witness,
        ));
        let d = s.underlying();
        if !isomorphic_to(&d, Family::D1) && !isomorphic_to(&d, Family::D2) {
            out.push(VerificationOutcome::new(
                Claim::ThirdBound,
                Subject::Corpus { index },
                n,
                k,
                Expectation::AtMost { value: b - 3 },
                e.value,
                e.witness,
            ));
        }
    }
    Ok(out)
}

/// Random signed digraph of order `n` with up to `max_arcs` arcs (loops
/// allowed, no primitivity requirement); deterministic in `seed`.
pub fn random_signed_digraph(n: usize, max_arcs: usize, seed: u64) -> Result<SignedDigraph> {
    crate::bits::check_order(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(0..=max_arcs.min(n * n));
    let arcs: Vec<_> = random_arcs(n, m, &mut rng)
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
    SignedDigraph::from_arcs(n, &arcs)
}

/// One entry where the semiring power and the walk oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub sample_seed: u64,
    pub u: usize,
    pub v: usize,
    pub length: usize,
    pub engine: GenSign,
    pub oracle: GenSign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleAgreement {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_length: usize,
    pub entries: usize,
    pub mismatches: Vec<OracleMismatch>,
    pub pass: bool,
}

/// Compares every entry of `A^l`, `1 <= l <= max_length`, with the walk
/// oracle on `samples` random signed digraphs of order `n` with at most
/// `2n - 1` arcs.
pub fn verify_oracle_agreement(
    n: usize,
    samples: usize,
    seed: u64,
    max_length: usize,
) -> Result<OracleAgreement> {
    if n > ORACLE_MAX_ORDER || max_length > ORACLE_MAX_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "oracle suite is limited to n <= {ORACLE_MAX_ORDER} and length <= {ORACLE_MAX_LENGTH}"
        )));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..samples).map(|_| master.gen()).collect();
    let per_sample: Vec<(usize, Vec<OracleMismatch>)> = seeds
        .into_par_iter()
        .map(|sub| {
            let s = random_signed_digraph(n, 2 * n - 1, sub)?;
            let mut entries = 0;
            let mut bad = Vec::new();
            for length in 1..=max_length {
                let p = s.pattern().power(length);
                for u in 1..=n {
                    for v in 1..=n {
                        let oracle = match enumerate_signs(&s, u, v, length)? {
                            (false, false) => GenSign::Zero,
                            (true, false) => GenSign::Pos,
                            (false, true) => GenSign::Neg,
                            (true, true) => GenSign::Amb,
                        };
                        entries += 1;
                        if p.get(u, v) != oracle {
                            bad.push(OracleMismatch {
                                sample_seed: sub,
                                u,
                                v,
                                length,
                                engine: p.get(u, v),
                                oracle,
                            });
                        }
                    }
                }
            }
            Ok((entries, bad))
        })
        .collect::<Result<_>>()?;
    let entries = per_sample.iter().map(|x| x.0).sum();
    let mismatches: Vec<_> = per_sample.into_iter().flat_map(|x| x.1).collect();
    Ok(OracleAgreement {
        n,
        samples,
        seed,
        max_length,
        entries,
        pass: mismatches.is_empty(),
        mismatches,
    })
}
