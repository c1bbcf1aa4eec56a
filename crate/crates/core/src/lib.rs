//! Bases, upper bases, exponents and multiexponents of signed digraphs.
//!
//! Powers of a sign pattern are taken over the generalized sign set
//! `{0, +, -, #}`, where `#` marks positions reached by walks of both signs.
//! For a primitive non-powerful signed digraph the powers end in the all-`#`
//! matrix, and the `k`th upper base `L(S,k)` measures how long that takes
//! when walks may start anywhere in a `k`-subset of the vertices.
//!
//! ```
//! use signbase::{build_d1, kth_upper_base, SignPolicy};
//!
//! let s = build_d1(6, &SignPolicy::CanonicalNonpowerful)?;
//! assert_eq!(kth_upper_base(&s, 1)?.value, 56);
//! # Ok::<(), signbase::Error>(())
//! ```
//!
//! Vertices are 1-based everywhere in the public API.

pub mod bits;
pub mod digraph;
pub mod error;
pub mod families;
pub mod frobenius;
pub mod gsign;
pub mod oracle;
pub mod report;
pub mod sdg;
pub mod signed;

pub use bits::{k_subsets, BoolMatrix, VertexSet, MAX_ORDER};
pub use digraph::{
    diameter, enumerate_cycles, exponent, is_primitive, isomorphic_brute, isomorphic_to,
    multiexponent_table, set_exponent, shortest_cycle_length, strongly_connected,
    upper_multiexponent, Digraph, Extremum, Family, ReachabilityProfile,
};
pub use error::{Error, ErrorKind, Result};
pub use families::{
    build_d1, build_d2, random_primitive_digraph, random_primitive_nonpowerful,
    random_signed_digraph, verify_closed_forms, verify_oracle_agreement,
    verify_third_bound_and_gap, KMode, SignPolicy, VerificationOutcome,
};
pub use frobenius::{frobenius_number, in_frobenius_set, two_cycle_walk_decompose, FrobeniusBasis};
pub use gsign::{
    mat_mul, mat_power, power_sequence_base, GenSign, PowerSequence, PowerTrace, Sign, SignPattern,
};
pub use report::{analyze, ReportDocument};
pub use sdg::{parse_sdg, serialize_sdg};
pub use signed::{
    bound_common_vertices, bound_sssd_pair, distinguished_pairs, is_powerful,
    is_powerful_by_powers, kth_upper_base, main_bound, set_base, signed_cycles, sssd_matrix,
    BaseAnalysis, CycleRecord, DistinguishedPair, PairCondition, SignedDigraph,
};

// Code listings in the guide and the README run as doctests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/generalized-signs.md")]
    mod generalized_signs {}
    #[doc = include_str!("../../../book/src/exponents.md")]
    mod exponents {}
    #[doc = include_str!("../../../book/src/upper-bases.md")]
    mod upper_bases {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/frobenius.md")]
    mod frobenius {}
    #[doc = include_str!("../../../book/src/extremal-families.md")]
    mod extremal_families {}
    #[doc = include_str!("../../../book/src/file-format.md")]
    mod file_format {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
