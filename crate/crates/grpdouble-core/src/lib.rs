//! Exact computational machinery for product sets, convolutions, and
//! coset-covering structure in finite groups.
//!
//! Groups are explicit multiplication tables, subsets are bit vectors, and
//! every detector threshold is an exact rational, so each theorem check
//! reduces to integer or rational comparisons with no rounding anywhere.
//! Floating point enters only when a caller opts into the `f64` scalar for
//! large sweeps, or asks for a distance (as opposed to a squared distance).
//!
//! The crate is `no_std` + `alloc`; file formats, parallel drivers, and the
//! command line front end live in the companion `grpdouble` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod convolve;
pub mod group;
pub mod periodic;
pub mod structure;
pub mod subset;

mod error;

pub use error::{Error, Result};

pub use convolve::{
    adjoint_identity_check, indicator_convolution, indicator_identity_check, local_l2_distance,
    local_l2_sq, local_linf_distance, norm_identity_check, GroupFunction, GroupMeasure,
    IndicatorIdentityReport, NormReport, Scalar,
};
pub use group::{build_group, verify_group_axioms, AxiomCheck, AxiomReport, Element, Group, ORDER_CAP};
pub use periodic::{
    analytic_pipeline, continuity_witness, cs_witness, fourfold, power_set, ContinuityWitness,
    CsWitness, PipelineReport, StepCheck,
};
pub use structure::{
    covering_bound_check, covering_bound_check_among, covering_frontier, covering_frontier_among,
    freiman_coset, hamidoune_witness, hamidoune_witness_among, jump_check, kneser_witness,
    kneser_witness_among, CoveringBound, CoveringBoundReport, CoveringFrontier, FreimanOutcome,
    FrontierEntry, JumpReport, TheoremTag, WitnessCheck, WitnessReport,
};
pub use subset::{
    enumerate_subgroups, enumerate_subgroups_capped, enumerate_subgroups_within, CosetTrace,
    DoublingReport, Subset, SUBGROUP_ENUM_CAP,
};

use alloc::string::String;
use alloc::string::ToString;

/// Exact rational scalar used throughout: arbitrary-precision numerator and
/// denominator, always kept reduced.
pub type Rational = num_rational::BigRational;

/// Builds a reduced rational from a signed integer pair. Panics on a zero
/// denominator, like the underlying constructor.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Rational with the given integer value.
pub fn ratio_int(value: u64) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `p`, `-p`, or `p/q` into a rational. Whitespace around either part
/// is accepted; a zero denominator is an error.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    use num_bigint::BigInt;

    let bad = || Error::BadRational(text.to_string());
    let mut parts = text.splitn(2, '/');
    let num: BigInt = parts
        .next()
        .ok_or_else(bad)?
        .trim()
        .parse()
        .map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if num_traits::Zero::is_zero(&den) {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn ratio_string(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_ratio_accepts_integers_and_fractions() {
        assert_eq!(parse_ratio("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_ratio("7").unwrap(), ratio(7, 1));
        assert_eq!(parse_ratio(" -1 / 10 ").unwrap(), ratio(-1, 10));
        assert_eq!(parse_ratio("6/4").unwrap(), ratio(3, 2));
    }

    #[test]
    fn parse_ratio_rejects_garbage() {
        assert!(parse_ratio("").is_err());
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("a/b").is_err());
        assert!(parse_ratio("1/2/3").is_err());
    }

    #[test]
    fn ratio_string_round_trips() {
        assert_eq!(ratio_string(&ratio(3, 2)), "3/2");
        assert_eq!(ratio_string(&ratio(4, 2)), "2");
        assert_eq!(ratio_string(&ratio(-5, 3)), "-5/3");
    }
}
