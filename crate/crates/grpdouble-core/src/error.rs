use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::periodic::StepCheck;
use crate::Rational;

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong below the IO layer.
///
/// Failed theorem checks are not errors; they come back as reports marked
/// failed. Errors are reserved for inputs the operations cannot accept.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Group spec string was not understood.
    UnknownSpec(String),
    /// Construction would exceed the hard order ceiling.
    OrderCap { requested: usize, cap: usize },
    /// Raw multiplication table input has the wrong shape.
    MalformedTable(String),
    /// Raw multiplication table fails a group axiom.
    AxiomFailure { axiom: &'static str, witness: [usize; 3] },
    /// Element index at or beyond the group order.
    IndexOutOfRange { index: usize, order: usize },
    /// Operands belong to different groups.
    GroupMismatch,
    /// Operation needs a non-empty set.
    EmptySet,
    /// Operation needs its argument to be a subgroup.
    NotASubgroup,
    /// Subgroup enumeration hit its cap before finishing.
    SubgroupCapExceeded { cap: usize },
    /// Operation is only defined on abelian groups.
    NonAbelian,
    /// Rational literal could not be parsed.
    BadRational(String),
    /// A parameter sits outside its documented range.
    BadParameter(String),
    /// Pipeline epsilon must sit strictly between 0 and 1.
    EpsilonRange(Rational),
    /// Pipeline precondition |AA⁻¹| ≤ (2−ε)|A| does not hold.
    DoublingExceedsBound { ratio: Rational, limit: Rational },
    /// Continuity search exhausted its candidate family; carries whatever
    /// step log the pipeline had accumulated by then.
    ContinuityNotFound { steps: Vec<StepCheck> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownSpec(spec) => write!(f, "unknown group spec `{spec}`"),
            Error::OrderCap { requested, cap } => {
                write!(f, "group order {requested} exceeds the cap of {cap}")
            }
            Error::MalformedTable(detail) => write!(f, "malformed multiplication table: {detail}"),
            Error::AxiomFailure { axiom, witness } => write!(
                f,
                "table fails the {axiom} axiom at ({}, {}, {})",
                witness[0], witness[1], witness[2]
            ),
            Error::IndexOutOfRange { index, order } => {
                write!(f, "element index {index} out of range for order {order}")
            }
            Error::GroupMismatch => write!(f, "operands come from different groups"),
            Error::EmptySet => write!(f, "operation requires a non-empty set"),
            Error::NotASubgroup => write!(f, "operation requires a subgroup"),
            Error::SubgroupCapExceeded { cap } => {
                write!(f, "more than {cap} subgroups; raise the cap to enumerate them")
            }
            Error::NonAbelian => write!(f, "operation is only defined on abelian groups"),
            Error::BadRational(text) => write!(f, "cannot parse `{text}` as a rational p/q"),
            Error::BadParameter(detail) => write!(f, "bad parameter: {detail}"),
            Error::EpsilonRange(eps) => {
                write!(f, "epsilon must satisfy 0 < ε < 1, got {eps}")
            }
            Error::DoublingExceedsBound { ratio, limit } => write!(
                f,
                "doubling ratio {ratio} exceeds the required bound {limit}"
            ),
            Error::ContinuityNotFound { steps } => write!(
                f,
                "continuity witness search exhausted its candidate family ({} step checks logged)",
                steps.len()
            ),
        }
    }
}

impl core::error::Error for Error {}
