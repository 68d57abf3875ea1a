//! Error taxonomy shared by every module.

use crate::weights::Domain;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong across weights, spaces, embeddings and
/// operators. Hypothesis violations are errors, never silent extensions.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// An index fell outside the domain a family or space is defined on.
    #[error("index {index} lies outside the {domain} index domain")]
    IndexOutsideDomain { index: i64, domain: Domain },

    #[error("{what} must be strictly positive and finite")]
    NotPositive { what: &'static str },

    #[error("{what} must be finite")]
    NotFinite { what: &'static str },

    #[error("Gibbs weights are defined on the half line only")]
    GibbsRequiresHalfLine,

    #[error("table weight families must store at least one value")]
    EmptyTable,

    #[error("declared lower bound {declared} exceeds the smallest stored weight {smallest}")]
    InvalidLowerBound { declared: f64, smallest: f64 },

    /// The analytic infimum of the weight family is zero, so every
    /// hypothesis of the form `inf_m w_m > 0` fails.
    #[error("the weight family has no positive infimum")]
    InfimumNotPositive,

    #[error("the two weight families live on different index domains")]
    DomainMismatch,

    #[error("invalid summability exponents: {what}")]
    InvalidExponents { what: &'static str },

    #[error("empty index window")]
    EmptyWindow,

    #[error("inner products require s = 2, got s = {s}")]
    NotAHilbertSpace { s: f64 },

    /// Tail ranks need a strict order drop between source and target.
    #[error("target order k = {k} is not strictly below the source order k' = {k_prime}")]
    NotStrictlySmoother { k: f64, k_prime: f64 },

    #[error("hypothesis failure: {what}")]
    HypothesisFailure { what: &'static str },

    /// The weight series diverges because `k` is at or below `(s-t)/(st)`.
    #[error("the weight series diverges: k = {k} is not above (s - t)/(s t) = {threshold}")]
    SeriesDiverges { k: f64, threshold: f64 },

    #[error("operator parameter mismatch: {what}")]
    ParameterMismatch { what: &'static str },

    #[error("no continuous embedding: target order {k_tgt} exceeds source order {k_src}")]
    NotContinuous { k_src: f64, k_tgt: f64 },

    #[error("the decay envelope is not summable at exponent t = {t}")]
    EnvelopeNotSummable { t: f64 },

    #[error("row {row} violates its decay envelope: observed row norm {observed} > bound {bound}")]
    EnvelopeViolated { row: i64, observed: f64, bound: f64 },

    #[error("expected {expected} matrix entries for the window, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A certified computation would need more terms than the desk-scale
    /// budget allows; tighten the hypotheses or loosen the tolerance.
    #[error("a certified summation would need about {needed} terms, over budget")]
    SummationBudgetExceeded { needed: u64 },

    #[error("the required tail rank exceeds the representable range")]
    TailRankOverflow,
}

pub(crate) fn ensure_positive(value: f64, what: &'static str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NotPositive { what })
    }
}

pub(crate) fn ensure_finite(value: f64, what: &'static str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NotFinite { what })
    }
}
