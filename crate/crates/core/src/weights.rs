//! Positive weight sequences `w = (w_m)` and the two-weight ratio condition.
//!
//! Four families are supported: constant weights, polynomial weights
//! `(1 + |m|)^alpha`, Gibbs weights `exp(beta m)` on the half line, and
//! explicitly tabulated weights with a declared positive lower bound.
//! Every family evaluates in the log domain as well, so norm computations
//! never have to form overflowing intermediate products.

use alloc::collections::BTreeMap;
use core::fmt;

// Needed for f64 math in no_std graphs; redundant when a feature-unified
// dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::window::IndexWindow;

/// Index domain a weight family (and hence a space) is defined on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// All of the integers.
    FullLine,
    /// Nonnegative indices only.
    HalfLine,
}

impl Domain {
    pub fn contains(self, m: i64) -> bool {
        match self {
            Domain::FullLine => true,
            Domain::HalfLine => m >= 0,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::FullLine => f.write_str("full-line"),
            Domain::HalfLine => f.write_str("half-line"),
        }
    }
}

/// The shape of a weight family.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `w_m = c`.
    Constant(f64),
    /// `w_m = (1 + |m|)^alpha`.
    Polynomial(f64),
    /// `w_m = exp(beta m)`, defined on the half line only.
    Gibbs(f64),
    /// Explicit values at finitely many indices with a declared lower bound.
    Table {
        values: BTreeMap<i64, f64>,
        lower_bound: f64,
    },
}

/// A strictly positive weight sequence over an index domain.
///
/// Immutable after construction; all evaluation is pure.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFamily {
    kind: WeightKind,
    domain: Domain,
}

impl WeightFamily {
    pub fn constant(c: f64, domain: Domain) -> Result<Self> {
        ensure_positive(c, "constant weight")?;
        Ok(Self {
            kind: WeightKind::Constant(c),
            domain,
        })
    }

    pub fn polynomial(alpha: f64, domain: Domain) -> Result<Self> {
        ensure_finite(alpha, "polynomial weight exponent")?;
        Ok(Self {
            kind: WeightKind::Polynomial(alpha),
            domain,
        })
    }

    /// Gibbs weights `exp(beta m)`; the domain is forced to the half line.
    pub fn gibbs(beta: f64) -> Result<Self> {
        ensure_positive(beta, "Gibbs rate beta")?;
        Ok(Self {
            kind: WeightKind::Gibbs(beta),
            domain: Domain::HalfLine,
        })
    }

    /// Like [`WeightFamily::gibbs`], but rejects any request for a domain
    /// other than the half line instead of silently extending the family.
    pub fn gibbs_on(beta: f64, domain: Domain) -> Result<Self> {
        if domain != Domain::HalfLine {
            return Err(Error::GibbsRequiresHalfLine);
        }
        Self::gibbs(beta)
    }

    /// A tabulated family. The declared `lower_bound` is the value reported
    /// as the infimum, so it must be positive and no larger than any stored
    /// value; the table itself must be nonempty, positive, and inside the
    /// domain. Lookups at indices the table does not cover are errors.
    pub fn table(values: BTreeMap<i64, f64>, lower_bound: f64, domain: Domain) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyTable);
        }
        ensure_positive(lower_bound, "table lower bound")?;
        let mut smallest = f64::INFINITY;
        for (&m, &v) in &values {
            if !domain.contains(m) {
                return Err(Error::IndexOutsideDomain { index: m, domain });
            }
            ensure_positive(v, "table weight value")?;
            smallest = smallest.min(v);
        }
        if lower_bound > smallest {
            return Err(Error::InvalidLowerBound {
                declared: lower_bound,
                smallest,
            });
        }
        Ok(Self {
            kind: WeightKind::Table {
                values,
                lower_bound,
            },
            domain,
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    fn check_domain(&self, m: i64) -> Result<()> {
        if self.domain.contains(m) {
            Ok(())
        } else {
            Err(Error::IndexOutsideDomain {
                index: m,
                domain: self.domain,
            })
        }
    }

    /// The value `w_m`.
    ///
    /// Gibbs families store only the rate and evaluate `exp(beta m)` on
    /// demand; for `beta m` beyond the representable range this saturates to
    /// `+inf` while [`WeightFamily::log_weight_at`] stays finite, which is
    /// what the norm routines fall back to.
    pub fn weight_at(&self, m: i64) -> Result<f64> {
        self.check_domain(m)?;
        match &self.kind {
            WeightKind::Constant(c) => Ok(*c),
            WeightKind::Polynomial(alpha) => Ok(one_plus_abs(m).powf(*alpha)),
            WeightKind::Gibbs(beta) => Ok((beta * m as f64).exp()),
            WeightKind::Table { values, .. } => {
                values
                    .get(&m)
                    .copied()
                    .ok_or(Error::IndexOutsideDomain {
                        index: m,
                        domain: self.domain,
                    })
            }
        }
    }

    /// `ln w_m`, finite everywhere on the domain.
    pub fn log_weight_at(&self, m: i64) -> Result<f64> {
        self.check_domain(m)?;
        match &self.kind {
            WeightKind::Constant(c) => Ok(c.ln()),
            WeightKind::Polynomial(alpha) => Ok(alpha * one_plus_abs(m).ln()),
            WeightKind::Gibbs(beta) => Ok(beta * m as f64),
            WeightKind::Table { values, .. } => values
                .get(&m)
                .map(|v| v.ln())
                .ok_or(Error::IndexOutsideDomain {
                    index: m,
                    domain: self.domain,
                }),
        }
    }

    /// Exact infimum over the whole domain.
    ///
    /// Polynomial families with a negative exponent have infimum zero on any
    /// unbounded domain, which is reported as [`Error::InfimumNotPositive`]
    /// because every hypothesis of the form `inf_m w_m > 0` then fails.
    pub fn infimum(&self) -> Result<f64> {
        match &self.kind {
            WeightKind::Constant(c) => Ok(*c),
            WeightKind::Polynomial(alpha) => {
                if *alpha >= 0.0 {
                    Ok(1.0)
                } else {
                    Err(Error::InfimumNotPositive)
                }
            }
            WeightKind::Gibbs(_) => Ok(1.0),
            WeightKind::Table { lower_bound, .. } => Ok(*lower_bound),
        }
    }
}

fn one_plus_abs(m: i64) -> f64 {
    1.0 + m.unsigned_abs() as f64
}

/// Whether ratio bounds hold globally or only on the inspected window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundScope {
    /// Valid for every index of the domain.
    Analytic,
    /// Observed minimum and maximum over the window only.
    WindowEmpirical,
}

/// Two-sided bounds `c1 <= w_m^{t/s} / w_hat_m <= c2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioBounds {
    pub c1: f64,
    pub c2: f64,
    pub scope: BoundScope,
}

/// The pointwise ratio `w_m^{t/s} / w_hat_m`, evaluated in the log domain.
pub fn weight_ratio(
    w: &WeightFamily,
    w_hat: &WeightFamily,
    s: f64,
    t: f64,
    m: i64,
) -> Result<f64> {
    Ok(((t / s) * w.log_weight_at(m)? - w_hat.log_weight_at(m)?).exp())
}

/// Bounds for the two-weight condition `c1 <= w_m^{t/s}/w_hat_m <= c2`.
///
/// Recognized pairs (matching constants, or polynomial/Gibbs parameters that
/// cancel exactly) yield global analytic bounds; everything else is scanned
/// over the window and flagged [`BoundScope::WindowEmpirical`]. Downstream
/// embedding constants are rigorous only when fed analytic bounds.
pub fn ratio_condition_check(
    w: &WeightFamily,
    w_hat: &WeightFamily,
    s: f64,
    t: f64,
    window: IndexWindow,
) -> Result<RatioBounds> {
    if !(t >= 1.0 && t.is_finite() && s.is_finite() && s > t) {
        return Err(Error::InvalidExponents {
            what: "ratio condition needs s > t >= 1",
        });
    }
    if w.domain() != w_hat.domain() {
        return Err(Error::DomainMismatch);
    }
    if !w.domain().contains(window.lo()) {
        return Err(Error::IndexOutsideDomain {
            index: window.lo(),
            domain: w.domain(),
        });
    }
    if let Some(bounds) = analytic_ratio(w, w_hat, s, t) {
        return Ok(bounds);
    }
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for m in window.indices() {
        let ratio = weight_ratio(w, w_hat, s, t, m)?;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
    }
    Ok(RatioBounds {
        c1: lo,
        c2: hi,
        scope: BoundScope::WindowEmpirical,
    })
}

/// Parameter matches are exact `f64` comparisons: anything short of exact
/// cancellation leaves the ratio unbounded on an infinite domain, so a
/// tolerance here would overclaim.
fn analytic_ratio(w: &WeightFamily, w_hat: &WeightFamily, s: f64, t: f64) -> Option<RatioBounds> {
    let e = t / s;
    let analytic = |value: f64| RatioBounds {
        c1: value,
        c2: value,
        scope: BoundScope::Analytic,
    };
    match (w.kind(), w_hat.kind()) {
        (WeightKind::Constant(c), WeightKind::Constant(c_hat)) => {
            Some(analytic(c.powf(e) / c_hat))
        }
        (WeightKind::Polynomial(a), WeightKind::Polynomial(a_hat)) if a * e == *a_hat => {
            Some(analytic(1.0))
        }
        (WeightKind::Gibbs(b), WeightKind::Gibbs(b_hat)) if b * e == *b_hat => Some(analytic(1.0)),
        _ => None,
    }
}
