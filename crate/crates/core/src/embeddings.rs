//! Embedding constants, tail ranks, compactness certificates, and certified
//! summation of the weight series.
//!
//! The compact embeddings between spaces of the scale are constructive: a
//! bounded set of radius `kappa` is approximated within `epsilon/2` by the
//! span of finitely many basis vectors, and the cutoff (the tail rank `m*`)
//! is computable. This module exposes those cutoffs, the embedding constants
//! of the order-monotonicity and two-weight theorems, and a probe for the
//! empirical best constant.

use alloc::string::String;
use alloc::vec::Vec;

// Needed for f64 math in no_std graphs; redundant when a feature-unified
// dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::sampling::{trial_rng, VectorSampler};
use crate::spaces::{log_one_plus_pow, SpaceParams};
use crate::sum::CompensatedSum;
use crate::weights::{Domain, WeightFamily};
use crate::window::IndexWindow;

/// Hard ceiling on certified-summation horizons; anything beyond this is not
/// a desk-scale computation.
const SUMMATION_BUDGET: u64 = 1 << 32;

/// Which constructive proof backs a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Order drop `k' > k` with a shared weight.
    T1a,
    /// Two-weight embedding `h^{k,s}_w -> l^t_{w_hat}`.
    T2,
}

/// A constructive compactness certificate.
///
/// The guarantee: every finite-support `p` with source norm at most `kappa`
/// satisfies `||p - truncate(p, m_star)|| <= epsilon / 2` in the target
/// norm, so its distance to the spanned subspace is at most `epsilon / 2`
/// (the remaining `epsilon / 2` covers closure points of the ball).
#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessCertificate {
    m_star: u64,
    subspace_dim: u64,
    epsilon: f64,
    kappa: f64,
    theorem: Theorem,
    domain: Domain,
}

impl CompactnessCertificate {
    fn new(m_star: u64, epsilon: f64, kappa: f64, theorem: Theorem, domain: Domain) -> Self {
        Self {
            m_star,
            subspace_dim: subspace_dim_for(m_star, domain),
            epsilon,
            kappa,
            theorem,
            domain,
        }
    }

    pub fn m_star(&self) -> u64 {
        self.m_star
    }

    pub fn subspace_dim(&self) -> u64 {
        self.subspace_dim
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Index window of the spanning basis vectors; `None` when the
    /// certificate degenerates to the zero subspace (`m_star = 0`).
    pub fn basis_window(&self) -> Option<IndexWindow> {
        if self.m_star == 0 {
            return None;
        }
        match self.domain {
            Domain::FullLine => Some(IndexWindow::new(-(self.m_star as i64), self.m_star as i64).unwrap()),
            Domain::HalfLine => Some(IndexWindow::new(0, self.m_star as i64 - 1).unwrap()),
        }
    }
}

/// Dimension of the spanned subspace: `2 m* + 1` on the full line (the span
/// `e_{-m*}, ..., e_{m*}` of the proof), `m*` on the half line, and zero for
/// the degenerate `m* = 0` certificate.
fn subspace_dim_for(m_star: u64, domain: Domain) -> u64 {
    if m_star == 0 {
        return 0;
    }
    match domain {
        Domain::FullLine => 2 * m_star + 1,
        Domain::HalfLine => m_star,
    }
}

/// What a pair of orders guarantees about the inclusion map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmbeddingRelation {
    CompactEmbedding,
    ContinuousEmbedding,
    NoGuarantee,
}

/// Classification of an inclusion between two spaces of the scale.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingReport {
    pub relation: EmbeddingRelation,
    /// Embedding constant; present unless there is no guarantee at all.
    pub constant: Option<f64>,
    pub hypothesis_notes: Vec<String>,
}

/// Classifies the inclusion `h^{k_src,s}_w -> h^{k_tgt,s}_w` by order alone:
/// a strict drop is compact with constant 1, equality is the identity, and a
/// rise has no guarantee (basis-vector norm ratios grow without bound).
///
/// With `k = 0` standing for `l^s_w`, the three interlacing chains of the
/// corollary are recovered; the notes name which case applies.
pub fn classify_order_pair(k_src: f64, k_tgt: f64) -> EmbeddingReport {
    let mut notes = Vec::new();
    if k_tgt < k_src {
        notes.push(String::from(
            "strict order drop: compact embedding with constant 1",
        ));
        if k_src <= 0.0 {
            notes.push(String::from("interlacing case (a): k < k' <= 0"));
        }
        if k_tgt <= 0.0 && k_src > 0.0 {
            notes.push(String::from("interlacing case (b): k <= 0 < k'"));
        }
        if k_tgt >= 0.0 {
            notes.push(String::from("interlacing case (c): 0 <= k < k'"));
        }
        EmbeddingReport {
            relation: EmbeddingRelation::CompactEmbedding,
            constant: Some(1.0),
            hypothesis_notes: notes,
        }
    } else if k_tgt == k_src {
        notes.push(String::from("equal orders: identity embedding"));
        EmbeddingReport {
            relation: EmbeddingRelation::ContinuousEmbedding,
            constant: Some(1.0),
            hypothesis_notes: notes,
        }
    } else {
        notes.push(String::from(
            "order increase: basis-vector norm ratios are unbounded",
        ));
        EmbeddingReport {
            relation: EmbeddingRelation::NoGuarantee,
            constant: None,
            hypothesis_notes: notes,
        }
    }
}

fn check_summability_degree(s: f64) -> Result<()> {
    if s.is_finite() && s >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponents {
            what: "the degree of summability must satisfy s >= 1",
        })
    }
}

/// Minimal `m* >= 0` with `(1 + m*^s)^{-(k' - k)} <= (epsilon / 2 kappa)^s`,
/// the cutoff of the order-drop compactness proof. Since the left side is
/// nonincreasing in `m`, the inequality then holds for all `|m| >= m*`.
pub fn tail_rank_theorem1(k: f64, k_prime: f64, s: f64, epsilon: f64, kappa: f64) -> Result<u64> {
    check_summability_degree(s)?;
    ensure_positive(epsilon, "epsilon")?;
    ensure_positive(kappa, "kappa")?;
    ensure_finite(k, "order k")?;
    ensure_finite(k_prime, "order k'")?;
    if !(k_prime > k) {
        return Err(Error::NotStrictlySmoother { k, k_prime });
    }
    let delta = k_prime - k;
    // predicate: delta * ln(1 + m^s) >= s * ln(2 kappa / epsilon)
    let rhs = s * (2.0 * kappa / epsilon).ln();
    if rhs <= 0.0 {
        return Ok(0);
    }
    let pred = |m: f64| delta * log_one_plus_pow(m, s) >= rhs;
    // closed-form boundary: m = (exp(rhs / delta) - 1)^{1/s}
    let y = rhs / delta;
    let guess = if y > 700.0 {
        (y / s).exp()
    } else {
        y.exp_m1().max(0.0).powf(s.recip())
    };
    if !guess.is_finite() || guess >= 9.0e18 {
        return Err(Error::TailRankOverflow);
    }
    let mut m = guess.ceil().max(0.0);
    // nudge across the analytic boundary; beyond the exact-integer range of
    // f64 the step would be a no-op, and minimality is moot there anyway
    if m <= 9.0e15 {
        while m > 0.0 && pred(m - 1.0) {
            m -= 1.0;
        }
        while !pred(m) {
            m += 1.0;
        }
    }
    Ok(m as u64)
}

/// Order-drop certificate: for every `p` with `||p||_{k',s,w} <= kappa`,
/// the tail past `m*` satisfies `||p - truncate(p, m*)||_{k,s,w} <= eps/2`.
pub fn certify_theorem1(
    k: f64,
    k_prime: f64,
    s: f64,
    w: &WeightFamily,
    epsilon: f64,
    kappa: f64,
) -> Result<CompactnessCertificate> {
    let m_star = tail_rank_theorem1(k, k_prime, s, epsilon, kappa)?;
    Ok(CompactnessCertificate::new(
        m_star,
        epsilon,
        kappa,
        Theorem::T1a,
        w.domain(),
    ))
}

/// The constant `c_{s,t} = (inf_m w_m)^{1/s - 1/t}` with
/// `||p||_{k,s,w} <= c_{s,t} ||p||_{k,t,w}` for `s >= t >= 1` and `k >= 0`.
pub fn summability_constant(k: f64, s: f64, t: f64, w: &WeightFamily) -> Result<f64> {
    if !(t.is_finite() && s.is_finite() && t >= 1.0 && s >= t) {
        return Err(Error::HypothesisFailure {
            what: "summability comparison needs s >= t >= 1",
        });
    }
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::HypothesisFailure {
            what: "summability comparison needs k >= 0",
        });
    }
    let inf = w.infimum()?;
    Ok(inf.powf(s.recip() - t.recip()))
}

/// Result of a certified summation of the weight series
/// `sum_m (1 + |m|^s)^{-kr/s}` with `r = st/(s - t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    /// Certified value: the partial sum plus the integral-test tail bound,
    /// within `tol` of the true sum and never below it.
    pub value: f64,
    /// Terms with `|m| <= horizon` entered the partial sum.
    pub horizon: u64,
    /// The integral-test bound on the discarded tail (at most `tol`).
    pub tail_bound: f64,
}

fn theorem2_exponents(k: f64, s: f64, t: f64) -> Result<(f64, f64)> {
    if !(t.is_finite() && s.is_finite() && t >= 1.0 && s > t) {
        return Err(Error::InvalidExponents {
            what: "the two-weight embedding needs s > t >= 1",
        });
    }
    ensure_finite(k, "order k")?;
    let threshold = (s - t) / (s * t);
    if !(k > threshold) {
        return Err(Error::SeriesDiverges { k, threshold });
    }
    let r = s * t / (s - t);
    Ok((r, k * r))
}

#[inline]
fn series_term(s: f64, q: f64, m: f64) -> f64 {
    if s == 2.0 && q == 1.0 {
        (1.0 + m * m).recip()
    } else if q == 1.0 {
        (1.0 + m.powf(s)).recip()
    } else {
        let g = 1.0 + m.powf(s);
        if g.is_finite() {
            g.powf(-q)
        } else {
            (-q * log_one_plus_pow(m, s)).exp()
        }
    }
}

/// Integral-test bound on `factor * sum_{m > horizon} (1 + m^s)^{-kr/s}`,
/// using the crude majorant `(1 + x^s)^{-kr/s} <= x^{-kr}` for `x >= 1`.
fn integral_tail_bound(factor: f64, kr: f64, horizon: f64) -> f64 {
    factor * horizon.powf(1.0 - kr) / (kr - 1.0)
}

/// First horizon whose integral tail bound drops to `tol`, but never less
/// than `max(2, ceil((kr-1)^{-1/(kr-1)}))` so the majorant is applied well
/// inside its range of validity.
fn summation_horizon(factor: f64, kr: f64, tol: f64) -> Result<u64> {
    let m_min = (kr - 1.0).powf(-(kr - 1.0).recip()).ceil().max(2.0);
    let m_tol = (factor / (tol * (kr - 1.0))).powf((kr - 1.0).recip()).ceil();
    let horizon = m_min.max(m_tol);
    if !horizon.is_finite() || horizon > SUMMATION_BUDGET as f64 {
        return Err(Error::SummationBudgetExceeded {
            needed: if horizon.is_finite() {
                horizon as u64
            } else {
                u64::MAX
            },
        });
    }
    Ok(horizon as u64)
}

fn domain_factor(domain: Domain) -> f64 {
    match domain {
        Domain::FullLine => 2.0,
        Domain::HalfLine => 1.0,
    }
}

/// Certified sum of the weight series behind the two-weight embedding, with
/// horizon and tail-bound diagnostics.
pub fn weight_series_sum_detailed(
    k: f64,
    s: f64,
    t: f64,
    domain: Domain,
    tol: f64,
) -> Result<SeriesSum> {
    ensure_positive(tol, "tolerance")?;
    let (_, kr) = theorem2_exponents(k, s, t)?;
    let q = kr / s;
    let factor = domain_factor(domain);
    let horizon = summation_horizon(factor, kr, tol)?;
    let mut side = CompensatedSum::new();
    for m in 1..=horizon {
        side.add(series_term(s, q, m as f64));
    }
    let tail_bound = integral_tail_bound(factor, kr, horizon as f64);
    let value = 1.0 + factor * side.value() + tail_bound;
    Ok(SeriesSum {
        value,
        horizon,
        tail_bound,
    })
}

/// Certified sum of `sum_m (1 + |m|^s)^{-kr/s}` over the domain, within
/// `tol` of the true value. Diverges (as an error) when `k <= (s-t)/(st)`.
pub fn weight_series_sum(k: f64, s: f64, t: f64, domain: Domain, tol: f64) -> Result<f64> {
    Ok(weight_series_sum_detailed(k, s, t, domain, tol)?.value)
}

/// The two-weight embedding constant `c_{k,s,t} = c1^{-1/t} S^{1/r}` with
/// `||p||_{t,w_hat} <= c_{k,s,t} ||p||_{k,s,w}`; `c1` must come from a
/// rigorous ratio check for the constant to be global.
pub fn theorem2_constant(
    k: f64,
    s: f64,
    t: f64,
    c1: f64,
    domain: Domain,
    tol: f64,
) -> Result<f64> {
    ensure_positive(c1, "ratio lower bound c1")?;
    let (r, _) = theorem2_exponents(k, s, t)?;
    let series = weight_series_sum_detailed(k, s, t, domain, tol)?;
    Ok(c1.powf(-t.recip()) * series.value.powf(r.recip()))
}

/// The return constant `c2^{1/t}` with `||p||_{s,w} <= c2^{1/t} ||p||_{t,w_hat}`.
pub fn theorem2_second_constant(s: f64, t: f64, c2: f64) -> Result<f64> {
    if !(t.is_finite() && s.is_finite() && t >= 1.0 && s > t) {
        return Err(Error::InvalidExponents {
            what: "the two-weight embedding needs s > t >= 1",
        });
    }
    ensure_positive(c2, "ratio upper bound c2")?;
    Ok(c2.powf(t.recip()))
}

/// Minimal `m*` whose certified series tail drops below the two-weight
/// threshold `(epsilon c1^{1/t} / 2 kappa)^r`.
///
/// The certified tail at a candidate `m*` is the exact partial sum of the
/// shells `m* <= |m| <= M` plus the integral-test bound past the horizon
/// `M`, where `M` is chosen so that bound is at most `min(tol, threshold/2)`.
/// The resulting certificate guarantees
/// `||p - truncate(p, m*)||_{t,w_hat} <= epsilon / 2` whenever
/// `||p||_{k,s,w} <= kappa`.
#[allow(clippy::too_many_arguments)]
pub fn tail_rank_theorem2(
    k: f64,
    s: f64,
    t: f64,
    c1: f64,
    epsilon: f64,
    kappa: f64,
    domain: Domain,
    tol: f64,
) -> Result<u64> {
    ensure_positive(c1, "ratio lower bound c1")?;
    ensure_positive(epsilon, "epsilon")?;
    ensure_positive(kappa, "kappa")?;
    ensure_positive(tol, "tolerance")?;
    let (r, kr) = theorem2_exponents(k, s, t)?;
    let q = kr / s;
    let factor = domain_factor(domain);
    let threshold = (epsilon * c1.powf(t.recip()) / (2.0 * kappa)).powf(r);
    if !(threshold > 0.0) {
        return Err(Error::SummationBudgetExceeded { needed: u64::MAX });
    }
    let slack = tol.min(threshold / 2.0);
    let horizon = summation_horizon(factor, kr, slack)?;
    // accumulate the certified tail from the far end: the integral bound
    // past the horizon, then shells of decreasing |m|. bound <= threshold/2
    // makes m* = horizon + 1 valid from the start; shrink while the next
    // shell still fits under the threshold.
    let mut suffix = CompensatedSum::new();
    suffix.add(integral_tail_bound(factor, kr, horizon as f64));
    let mut m_star = horizon + 1;
    while m_star > 0 {
        let shell = if m_star == 1 {
            1.0
        } else {
            factor * series_term(s, q, (m_star - 1) as f64)
        };
        if suffix.value() + shell > threshold {
            break;
        }
        suffix.add(shell);
        m_star -= 1;
    }
    Ok(m_star)
}

/// Two-weight certificate built from [`tail_rank_theorem2`].
#[allow(clippy::too_many_arguments)]
pub fn certify_theorem2(
    k: f64,
    s: f64,
    t: f64,
    c1: f64,
    epsilon: f64,
    kappa: f64,
    domain: Domain,
    tol: f64,
) -> Result<CompactnessCertificate> {
    let m_star = tail_rank_theorem2(k, s, t, c1, epsilon, kappa, domain, tol)?;
    Ok(CompactnessCertificate::new(
        m_star,
        epsilon,
        kappa,
        Theorem::T2,
        domain,
    ))
}

/// Radius of the deterministic basis-vector sweep inside the probe.
const PROBE_BASIS_RADIUS: u32 = 48;
/// Support window for the random probe vectors.
const PROBE_SUPPORT_RADIUS: u32 = 24;
/// Largest support size of a random probe vector.
const PROBE_MAX_SUPPORT: usize = 8;

/// Empirical lower bound on the best constant of `src -> tgt`: the largest
/// norm ratio over all basis vectors in a fixed window and `trials` seeded
/// random finite-support vectors. Deterministic for a fixed seed, and never
/// above any valid analytic constant for the same pair.
pub fn sharpness_probe(
    src: &SpaceParams,
    tgt: &SpaceParams,
    trials: u64,
    seed: u64,
) -> Result<f64> {
    let domain = if src.domain() == Domain::HalfLine || tgt.domain() == Domain::HalfLine {
        Domain::HalfLine
    } else {
        Domain::FullLine
    };
    let basis_window = match domain {
        Domain::FullLine => IndexWindow::symmetric(PROBE_BASIS_RADIUS),
        Domain::HalfLine => IndexWindow::half_line(PROBE_BASIS_RADIUS),
    };
    let mut best = 0.0f64;
    for m in basis_window.indices() {
        let ratio = (tgt.log_basis_norm(m)? - src.log_basis_norm(m)?).exp();
        best = best.max(ratio);
    }
    let sampler = VectorSampler::new(domain, PROBE_SUPPORT_RADIUS, PROBE_MAX_SUPPORT);
    for trial in 0..trials.max(1) {
        let mut rng = trial_rng(seed, trial);
        let p = sampler.sample(&mut rng);
        let denom = src.norm(&p)?;
        if denom > 0.0 {
            best = best.max(tgt.norm(&p)? / denom);
        }
    }
    Ok(best)
}
