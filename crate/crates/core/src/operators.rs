//! Finite operator sections, the diagonal isometry onto unweighted `l^s`,
//! Pitt conjugation, operator-norm brackets, and certified finite-rank
//! approximation under a declared row-decay envelope.
//!
//! The isometry `J_{k,s,w}` scales the entry at `m` by
//! `w_m^{1/s} (1 + |m|^s)^{k/s}` and identifies `h^{k,s}_w` with the
//! unweighted `l^s`. Conjugating a finite section `T` between weighted
//! spaces by the isometries on both sides produces a section `C` between
//! unweighted `l^s` and `l^t`; for `s > t` such operators are compact, and
//! for sections with declared row decay this module certifies the rank
//! needed to approximate within a requested error.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
// Needed for f64 math in no_std graphs; redundant when a feature-unified
// dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_positive, Error, Result};
use crate::sampling::trial_rng;
use crate::spaces::{pow_one_plus_abs_pow, SeqVector, SpaceParams};
use crate::sum::CompensatedSum;
use crate::weights::{Domain, WeightFamily};
use crate::window::IndexWindow;
use rand::Rng;

/// A complex matrix over a finite index window, acting from `src` to `tgt`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSectionOperator {
    window: IndexWindow,
    src: SpaceParams,
    tgt: SpaceParams,
    entries: Vec<Complex64>, // row-major over window x window
}

impl FiniteSectionOperator {
    pub fn new(
        window: IndexWindow,
        src: SpaceParams,
        tgt: SpaceParams,
        entries: Vec<Complex64>,
    ) -> Result<Self> {
        let n = window.len();
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for sp in [&src, &tgt] {
            if !sp.domain().contains(window.lo()) {
                return Err(Error::IndexOutsideDomain {
                    index: window.lo(),
                    domain: sp.domain(),
                });
            }
        }
        Ok(Self {
            window,
            src,
            tgt,
            entries,
        })
    }

    pub fn from_fn(
        window: IndexWindow,
        src: SpaceParams,
        tgt: SpaceParams,
        mut f: impl FnMut(i64, i64) -> Complex64,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(window.len() * window.len());
        for m in window.indices() {
            for n in window.indices() {
                entries.push(f(m, n));
            }
        }
        Self::new(window, src, tgt, entries)
    }

    pub fn diagonal_from_fn(
        window: IndexWindow,
        src: SpaceParams,
        tgt: SpaceParams,
        mut d: impl FnMut(i64) -> Complex64,
    ) -> Result<Self> {
        Self::from_fn(window, src, tgt, |m, n| {
            if m == n {
                d(m)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn zero(window: IndexWindow, src: SpaceParams, tgt: SpaceParams) -> Result<Self> {
        let n = window.len();
        Self::new(window, src, tgt, alloc::vec![Complex64::new(0.0, 0.0); n * n])
    }

    pub fn window(&self) -> IndexWindow {
        self.window
    }

    pub fn src(&self) -> &SpaceParams {
        &self.src
    }

    pub fn tgt(&self) -> &SpaceParams {
        &self.tgt
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// The entry at `(row m, column n)`; zero outside the window.
    pub fn entry(&self, m: i64, n: i64) -> Complex64 {
        match (self.window.offset_of(m), self.window.offset_of(n)) {
            (Some(i), Some(j)) => self.entries[i * self.window.len() + j],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = (i64, &[Complex64])> {
        let n = self.window.len();
        self.window
            .indices()
            .enumerate()
            .map(move |(i, m)| (m, &self.entries[i * n..(i + 1) * n]))
    }

    /// Matrix-vector product on dense window-aligned data.
    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        let n = self.window.len();
        let len = input.len().min(n);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let row = &self.entries[i * n..i * n + len];
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            for (a, x) in row.iter().zip(input) {
                let p = a * x;
                re.add(p.re);
                im.add(p.im);
            }
            out.push(Complex64::new(re.value(), im.value()));
        }
        out
    }
}

/// `(J_{k,s,w} p)_m = w_m^{1/s} (1 + |m|^s)^{k/s} p_m`; the unweighted
/// `l^s` norm of the image equals the `h^{k,s}_w` norm of `p`, termwise.
pub fn isometry_apply(sp: &SpaceParams, p: &SeqVector) -> Result<SeqVector> {
    let mut out = SeqVector::zero();
    for (m, z) in p.support() {
        out.set(m, z * sp.basis_norm(m)?);
    }
    Ok(out)
}

/// Inverse of [`isometry_apply`]: entrywise division by the basis norm.
pub fn isometry_invert(sp: &SpaceParams, q: &SeqVector) -> Result<SeqVector> {
    let mut out = SeqVector::zero();
    for (m, z) in q.support() {
        let bn = sp.basis_norm(m)?;
        let v = if bn.is_finite() && bn > 0.0 {
            z / bn
        } else {
            z * (-sp.log_basis_norm(m)?).exp()
        };
        out.set(m, v);
    }
    Ok(out)
}

/// Conjugates a finite section `T : h^{k,s}_w -> h^{k,t}_w` into
/// `C = J_{k,t,w} T J_{k,s,w}^{-1}` acting between unweighted `l^s` and
/// `l^t` on the same window. Requires shared `k` and `w` and `s > t >= 1`.
pub fn pitt_conjugate(op: &FiniteSectionOperator) -> Result<FiniteSectionOperator> {
    let src = op.src();
    let tgt = op.tgt();
    if src.k() != tgt.k() || src.weight() != tgt.weight() {
        return Err(Error::ParameterMismatch {
            what: "conjugation needs source and target to share k and w",
        });
    }
    let (s, t) = (src.s(), tgt.s());
    if !(s > t && t >= 1.0) {
        return Err(Error::InvalidExponents {
            what: "Pitt conjugation needs s > t >= 1",
        });
    }
    let window = op.window();
    let row_scale = scale_vector(tgt, window)?;
    let col_scale = scale_vector(src, window)?;
    let n = window.len();
    let mut entries = Vec::with_capacity(n * n);
    for (i, &rs) in row_scale.iter().enumerate() {
        for (j, &cs) in col_scale.iter().enumerate() {
            entries.push(op.entries()[i * n + j] * (rs / cs));
        }
    }
    let domain = src.domain();
    FiniteSectionOperator::new(
        window,
        SpaceParams::unweighted(s, domain)?,
        SpaceParams::unweighted(t, domain)?,
        entries,
    )
}

/// Inverse conjugation: reconstructs `T = J_{k,t,w}^{-1} C J_{k,s,w}` as an
/// operator `h^{k,s}_w -> h^{k,t,w}` from an unweighted section `C`.
pub fn pitt_deconjugate(
    c: &FiniteSectionOperator,
    k: f64,
    w: &WeightFamily,
) -> Result<FiniteSectionOperator> {
    let (s, t) = (c.src().s(), c.tgt().s());
    if !(s > t && t >= 1.0) {
        return Err(Error::InvalidExponents {
            what: "Pitt conjugation needs s > t >= 1",
        });
    }
    let src = SpaceParams::new(k, s, w.clone())?;
    let tgt = SpaceParams::new(k, t, w.clone())?;
    let window = c.window();
    let row_scale = scale_vector(&tgt, window)?;
    let col_scale = scale_vector(&src, window)?;
    let n = window.len();
    let mut entries = Vec::with_capacity(n * n);
    for (i, &rs) in row_scale.iter().enumerate() {
        for (j, &cs) in col_scale.iter().enumerate() {
            entries.push(c.entries()[i * n + j] * (cs / rs));
        }
    }
    FiniteSectionOperator::new(window, src, tgt, entries)
}

fn scale_vector(sp: &SpaceParams, window: IndexWindow) -> Result<Vec<f64>> {
    window.indices().map(|m| sp.basis_norm(m)).collect()
}

/// The inclusion `src -> tgt` (shared `s` and `w`, `tgt.k <= src.k`) seen
/// through the isometries on both sides: a diagonal section with symbol
/// `d_m = (1 + |m|^s)^{(k_tgt - k_src)/s}`, exactly the basis-norm ratio.
/// The symbol vanishes at infinity precisely when the order drop is strict,
/// which is the compactness mechanism in diagonal form.
pub fn embedding_as_diagonal(
    src: &SpaceParams,
    tgt: &SpaceParams,
    window: IndexWindow,
) -> Result<FiniteSectionOperator> {
    if src.s() != tgt.s() || src.weight() != tgt.weight() {
        return Err(Error::ParameterMismatch {
            what: "the diagonal embedding needs shared s and w",
        });
    }
    if tgt.k() > src.k() {
        return Err(Error::NotContinuous {
            k_src: src.k(),
            k_tgt: tgt.k(),
        });
    }
    let s = src.s();
    let e = (tgt.k() - src.k()) / s;
    FiniteSectionOperator::diagonal_from_fn(window, src.clone(), tgt.clone(), |m| {
        Complex64::new(pow_one_plus_abs_pow(m, s, e), 0.0)
    })
}

/// Hölder conjugate exponent, with `s = 1` mapping to infinity (max norm).
fn holder_conjugate(s: f64) -> f64 {
    if s == 1.0 {
        f64::INFINITY
    } else {
        s / (s - 1.0)
    }
}

/// Unweighted `l^p` norm of a dense slice; `p = inf` is the max norm.
pub(crate) fn lp_norm(v: &[Complex64], p: f64) -> f64 {
    if p.is_infinite() {
        return v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    }
    let mut acc = CompensatedSum::new();
    if p == 1.0 {
        for z in v {
            acc.add(z.norm());
        }
        acc.value()
    } else if p == 2.0 {
        for z in v {
            acc.add(z.norm_sqr());
        }
        acc.value().sqrt()
    } else {
        for z in v {
            let a = z.norm();
            if a > 0.0 {
                acc.add(a.powf(p));
            }
        }
        acc.value().powf(p.recip())
    }
}

/// Sound upper bound `B(A) = (sum_m ||row_m||_{s'}^t)^{1/t}` on the
/// `l^s -> l^t` norm of the section, by Hölder applied row by row. The
/// exponents are taken from the attached space parameters; entries are
/// treated as a matrix between the unweighted spaces (conjugate first for a
/// weighted operator).
pub fn operator_norm_upper(op: &FiniteSectionOperator) -> f64 {
    let s_conj = holder_conjugate(op.src().s());
    let t = op.tgt().s();
    let mut acc = CompensatedSum::new();
    for (_, row) in op.rows() {
        let rn = lp_norm(row, s_conj);
        if rn > 0.0 {
            acc.add(rn.powf(t));
        }
    }
    acc.value().powf(t.recip())
}

/// Empirical lower bound on the `l^s -> l^t` norm: the best ratio over all
/// basis vectors of the window and `probes` seeded random dense vectors.
/// Never exceeds [`operator_norm_upper`].
pub fn operator_norm_lower(op: &FiniteSectionOperator, probes: u64, seed: u64) -> f64 {
    let s = op.src().s();
    let t = op.tgt().s();
    let n = op.window().len();
    let mut best = 0.0f64;
    for j in 0..n {
        let column: Vec<Complex64> = (0..n).map(|i| op.entries()[i * n + j]).collect();
        best = best.max(lp_norm(&column, t));
    }
    for trial in 0..probes.max(1) {
        let mut rng = trial_rng(seed, trial);
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        let denom = lp_norm(&v, s);
        if denom > 0.0 {
            best = best.max(lp_norm(&op.apply(&v), t) / denom);
        }
    }
    best
}

/// Declared majorant on the conjugate-exponent row norms of an operator.
#[derive(Debug, Clone, PartialEq)]
pub enum DecayForm {
    /// `bound(m) = (1 + |m|)^{-gamma}`.
    PowerDecay(f64),
    /// `bound(m) = exp(-rho |m|)`.
    ExponentialDecay(f64),
    /// Explicit bounds at finitely many indices, zero elsewhere.
    Table(BTreeMap<i64, f64>),
}

/// A decay envelope: the caller's declaration that every row `m` of the
/// (conjugated) operator has `s'`-norm at most `bound(m)`. The library
/// certifies tail sums of the envelope and spot-checks the declaration on
/// the final window; dominance outside the window stays the caller's
/// obligation.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayEnvelope {
    form: DecayForm,
}

impl DecayEnvelope {
    pub fn power(gamma: f64) -> Result<Self> {
        ensure_positive(gamma, "power-decay rate gamma")?;
        Ok(Self {
            form: DecayForm::PowerDecay(gamma),
        })
    }

    pub fn exponential(rho: f64) -> Result<Self> {
        ensure_positive(rho, "exponential-decay rate rho")?;
        Ok(Self {
            form: DecayForm::ExponentialDecay(rho),
        })
    }

    /// Tabulated bounds; an empty table is the zero envelope.
    pub fn table(values: BTreeMap<i64, f64>) -> Result<Self> {
        for &v in values.values() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::NotPositive {
                    what: "table envelope bound",
                });
            }
        }
        Ok(Self {
            form: DecayForm::Table(values),
        })
    }

    pub fn form(&self) -> &DecayForm {
        &self.form
    }

    pub fn bound(&self, m: i64) -> f64 {
        match &self.form {
            DecayForm::PowerDecay(gamma) => (1.0 + m.unsigned_abs() as f64).powf(-gamma),
            DecayForm::ExponentialDecay(rho) => (-rho * m.unsigned_abs() as f64).exp(),
            DecayForm::Table(values) => values.get(&m).copied().unwrap_or(0.0),
        }
    }

    /// Certified upper bound on `( sum_{|m| > n} bound(m)^t )^{1/t}`:
    /// integral test for power decay, exact geometric sum for exponential
    /// decay, exact finite sum for tables.
    pub fn tail_norm(&self, n: u64, t: f64, domain: Domain) -> Result<f64> {
        let factor = match domain {
            Domain::FullLine => 2.0,
            Domain::HalfLine => 1.0,
        };
        let nf = n as f64;
        let sum = match &self.form {
            DecayForm::PowerDecay(gamma) => {
                let gt = gamma * t;
                if gt <= 1.0 {
                    return Err(Error::EnvelopeNotSummable { t });
                }
                factor * (1.0 + nf).powf(1.0 - gt) / (gt - 1.0)
            }
            DecayForm::ExponentialDecay(rho) => {
                let x = rho * t;
                factor * (-x * (nf + 1.0)).exp() / -(-x).exp_m1()
            }
            DecayForm::Table(values) => {
                let mut acc = CompensatedSum::new();
                for (&m, &v) in values {
                    if domain.contains(m) && m.unsigned_abs() > n && v > 0.0 {
                        acc.add(v.powf(t));
                    }
                }
                acc.value()
            }
        };
        Ok(sum.powf(t.recip()))
    }
}

/// Outcome of a certified finite-rank approximation search.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessWitness {
    /// Smallest tested window radius whose certified tail bound is within
    /// the requested error.
    pub n_eps: u64,
    /// Certified tail bound at `n_eps` (at most the requested epsilon).
    pub certified_error: f64,
    /// Tested `(radius, certified bound)` pairs, ascending in radius; the
    /// bounds decrease monotonically.
    pub history: Vec<(u64, f64)>,
}

/// Window-radius budget for the witness search.
const WITNESS_RADIUS_BUDGET: u64 = 1 << 40;
/// Sampling cap for the envelope spot-check.
const ENVELOPE_SAMPLE_RADIUS: u64 = 256;
/// Relative slack allowed when comparing observed row norms to the envelope.
const ENVELOPE_SLACK: f64 = 1e-9;

/// Certified finite-rank approximation of an operator given entrywise access
/// and a row-decay envelope.
///
/// Keeping only the rows `|m| <= n_eps` leaves an operator of rank at most
/// the window size whose distance to the full operator, in the row-Hölder
/// upper-bound norm, is at most `certified_error <= epsilon` — provided the
/// envelope really dominates the row `s'`-norms. That premise is the
/// caller's obligation; it is spot-checked on the final window and any
/// observed violation is an error.
pub fn compactness_witness<F>(
    entry_fn: F,
    env: &DecayEnvelope,
    src: &SpaceParams,
    tgt: &SpaceParams,
    epsilon: f64,
) -> Result<CompactnessWitness>
where
    F: Fn(i64, i64) -> Complex64,
{
    ensure_positive(epsilon, "epsilon")?;
    let (s, t) = (src.s(), tgt.s());
    if !(s > t) {
        return Err(Error::InvalidExponents {
            what: "the compactness witness needs s > t",
        });
    }
    if src.domain() != tgt.domain() {
        return Err(Error::DomainMismatch);
    }
    let domain = src.domain();
    let mut history: Vec<(u64, f64)> = Vec::new();
    let b0 = env.tail_norm(0, t, domain)?; // surfaces EnvelopeNotSummable
    history.push((0, b0));
    let n_eps = if b0 <= epsilon {
        0
    } else {
        // exponential bracket, then bisect to the minimal radius
        let mut lo = 0u64;
        let mut hi = 1u64;
        loop {
            let b = env.tail_norm(hi, t, domain)?;
            history.push((hi, b));
            if b <= epsilon {
                break;
            }
            lo = hi;
            hi = hi.saturating_mul(2);
            if hi > WITNESS_RADIUS_BUDGET {
                return Err(Error::SummationBudgetExceeded { needed: hi });
            }
        }
        let mut good = hi;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let b = env.tail_norm(mid, t, domain)?;
            history.push((mid, b));
            if b <= epsilon {
                good = mid;
                hi = mid;
            } else {
                lo = mid;
            }
        }
        good
    };
    history.sort_unstable_by_key(|&(n, _)| n);
    history.dedup_by_key(|pair| pair.0);
    let certified_error = env.tail_norm(n_eps, t, domain)?;
    spot_check_envelope(&entry_fn, env, s, domain, n_eps)?;
    Ok(CompactnessWitness {
        n_eps,
        certified_error,
        history,
    })
}

fn spot_check_envelope<F>(
    entry_fn: &F,
    env: &DecayEnvelope,
    s: f64,
    domain: Domain,
    n_eps: u64,
) -> Result<()>
where
    F: Fn(i64, i64) -> Complex64,
{
    let s_conj = holder_conjugate(s);
    let radius = n_eps.min(ENVELOPE_SAMPLE_RADIUS) as i64;
    let window = match domain {
        Domain::FullLine => IndexWindow::new(-radius, radius).unwrap(),
        Domain::HalfLine => IndexWindow::new(0, radius).unwrap(),
    };
    let columns: Vec<i64> = window.indices().collect();
    for m in window.indices() {
        let row: Vec<Complex64> = columns.iter().map(|&j| entry_fn(m, j)).collect();
        let observed = lp_norm(&row, s_conj);
        let bound = env.bound(m);
        if observed > bound * (1.0 + ENVELOPE_SLACK) {
            return Err(Error::EnvelopeViolated {
                row: m,
                observed,
                bound,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::basis_vector;

    fn unit_space(k: f64, s: f64) -> SpaceParams {
        SpaceParams::new(
            k,
            s,
            WeightFamily::constant(1.0, Domain::FullLine).unwrap(),
        )
        .unwrap()
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn isometry_on_basis_vectors() {
        let sp = unit_space(1.0, 2.0);
        let q = isometry_apply(&sp, &basis_vector(1)).unwrap();
        let expected = 2.0f64.sqrt();
        assert!((q.get(1).re - expected).abs() <= 1e-15);
        // unweighted l^s norm of the image equals the weighted norm
        let ls = SpaceParams::unweighted(2.0, Domain::FullLine).unwrap();
        let p = SeqVector::from_entries([(1, one()), (-1, one())]);
        let img = isometry_apply(&sp, &p).unwrap();
        let a = ls.norm(&img).unwrap();
        let b = sp.norm(&p).unwrap();
        assert!((a - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn isometry_is_identity_for_unweighted_order_zero() {
        let sp = unit_space(0.0, 2.0);
        let p = SeqVector::from_entries([(0, one()), (5, Complex64::new(0.25, -3.0))]);
        assert_eq!(isometry_apply(&sp, &p).unwrap(), p);
        assert_eq!(isometry_invert(&sp, &p).unwrap(), p);
    }

    #[test]
    fn isometry_round_trip() {
        let sp = SpaceParams::new(
            1.5,
            2.5,
            WeightFamily::polynomial(2.0, Domain::FullLine).unwrap(),
        )
        .unwrap();
        let p = SeqVector::from_entries([
            (-4, Complex64::new(0.3, 0.7)),
            (0, Complex64::new(-1.0, 0.0)),
            (9, Complex64::new(0.0, 2.0)),
        ]);
        let back = isometry_invert(&sp, &isometry_apply(&sp, &p).unwrap()).unwrap();
        for (m, z) in p.support() {
            let d = (back.get(m) - z).norm();
            assert!(d <= 1e-12 * z.norm());
        }
    }

    #[test]
    fn conjugate_of_compensating_diagonal_is_identity() {
        let w = WeightFamily::constant(3.0, Domain::FullLine).unwrap();
        let src = SpaceParams::new(1.0, 2.0, w.clone()).unwrap();
        let tgt = SpaceParams::new(1.0, 1.0, w).unwrap();
        let window = IndexWindow::symmetric(4);
        let op = FiniteSectionOperator::diagonal_from_fn(
            window,
            src.clone(),
            tgt.clone(),
            |m| {
                let num = src.basis_norm(m).unwrap();
                let den = tgt.basis_norm(m).unwrap();
                Complex64::new(num / den, 0.0)
            },
        )
        .unwrap();
        let c = pitt_conjugate(&op).unwrap();
        for m in window.indices() {
            for n in window.indices() {
                let expected = if m == n { 1.0 } else { 0.0 };
                assert!((c.entry(m, n).re - expected).abs() <= 1e-12);
                assert!(c.entry(m, n).im.abs() <= 1e-15);
            }
        }
        assert_eq!(c.src().k(), 0.0);
        assert_eq!(c.tgt().s(), 1.0);
    }

    #[test]
    fn conjugation_with_trivial_weights_is_identity_map() {
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        let window = IndexWindow::symmetric(3);
        let op = FiniteSectionOperator::from_fn(window, src, tgt, |m, n| {
            Complex64::new((m + 2 * n) as f64, (m - n) as f64)
        })
        .unwrap();
        let c = pitt_conjugate(&op).unwrap();
        assert_eq!(c.entries(), op.entries());
    }

    #[test]
    fn conjugation_round_trip_recovers_operator() {
        let w = WeightFamily::polynomial(1.0, Domain::FullLine).unwrap();
        let src = SpaceParams::new(2.0, 3.0, w.clone()).unwrap();
        let tgt = SpaceParams::new(2.0, 1.5, w.clone()).unwrap();
        let window = IndexWindow::symmetric(5);
        let op = FiniteSectionOperator::from_fn(window, src, tgt, |m, n| {
            Complex64::new(1.0 / (1.0 + (m - n) as f64 * (m - n) as f64), 0.1 * m as f64)
        })
        .unwrap();
        let c = pitt_conjugate(&op).unwrap();
        let back = pitt_deconjugate(&c, 2.0, &w).unwrap();
        for (a, b) in op.entries().iter().zip(back.entries()) {
            assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
        }
        assert_eq!(back.src(), op.src());
        assert_eq!(back.tgt(), op.tgt());
    }

    #[test]
    fn conjugation_rejects_mismatched_parameters() {
        let w = WeightFamily::constant(1.0, Domain::FullLine).unwrap();
        let src = SpaceParams::new(1.0, 2.0, w.clone()).unwrap();
        let tgt = SpaceParams::new(0.0, 1.0, w.clone()).unwrap();
        let op = FiniteSectionOperator::zero(IndexWindow::symmetric(1), src, tgt).unwrap();
        assert!(matches!(
            pitt_conjugate(&op),
            Err(Error::ParameterMismatch { .. })
        ));
        let src = SpaceParams::new(0.0, 1.0, w.clone()).unwrap();
        let tgt = SpaceParams::new(0.0, 2.0, w).unwrap();
        let op = FiniteSectionOperator::zero(IndexWindow::symmetric(1), src, tgt).unwrap();
        assert!(matches!(
            pitt_conjugate(&op),
            Err(Error::InvalidExponents { .. })
        ));
    }

    #[test]
    fn embedding_diagonal_symbol() {
        let src = unit_space(1.0, 2.0);
        let tgt = unit_space(0.0, 2.0);
        let window = IndexWindow::symmetric(6);
        let d = embedding_as_diagonal(&src, &tgt, window).unwrap();
        assert_eq!(d.entry(0, 0).re, 1.0);
        let d3 = d.entry(3, 3).re;
        assert!((d3 - 10.0f64.sqrt().recip()).abs() <= 1e-15);
        assert!((d3 - 0.316228).abs() < 1e-6);
        // symbol equals the basis-norm ratio at every window index
        for m in window.indices() {
            let ratio = tgt.basis_norm(m).unwrap() / src.basis_norm(m).unwrap();
            assert!((d.entry(m, m).re - ratio).abs() <= 1e-12 * ratio);
        }
    }

    #[test]
    fn embedding_diagonal_identity_and_rejection() {
        let sp = unit_space(1.0, 2.0);
        let d = embedding_as_diagonal(&sp, &sp, IndexWindow::symmetric(2)).unwrap();
        for m in -2..=2 {
            assert_eq!(d.entry(m, m), one());
        }
        let tgt = unit_space(2.0, 2.0);
        assert!(matches!(
            embedding_as_diagonal(&sp, &tgt, IndexWindow::symmetric(2)),
            Err(Error::NotContinuous { .. })
        ));
    }

    #[test]
    fn norm_upper_examples() {
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        let window = IndexWindow::new(0, 0).unwrap();
        let op = FiniteSectionOperator::new(
            window,
            src.clone(),
            tgt.clone(),
            alloc::vec![Complex64::new(-3.0, 4.0)],
        )
        .unwrap();
        assert_eq!(operator_norm_upper(&op), 5.0);

        let window = IndexWindow::symmetric(4);
        let id = FiniteSectionOperator::diagonal_from_fn(window, src, tgt, |_| one()).unwrap();
        assert_eq!(operator_norm_upper(&id), 9.0); // (2N+1)^{1/t}, t = 1
    }

    #[test]
    fn norm_lower_examples_and_bracket() {
        // for s = t, a diagonal section attains its norm on a basis vector
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 2.0);
        let window = IndexWindow::symmetric(3);
        let d = FiniteSectionOperator::diagonal_from_fn(window, src.clone(), tgt.clone(), |m| {
            Complex64::new(1.0 / (1.0 + m.abs() as f64), 0.0)
        })
        .unwrap();
        let lower = operator_norm_lower(&d, 50, 11);
        assert!((lower - 1.0).abs() <= 1e-12);

        let zero =
            FiniteSectionOperator::zero(window, src.clone(), unit_space(0.0, 1.0)).unwrap();
        assert_eq!(operator_norm_lower(&zero, 10, 0), 0.0);

        // bracket property on seeded random sections, s = 2 -> t = 1
        for seed in 0..20u64 {
            let mut rng = trial_rng(seed, 0);
            let op = FiniteSectionOperator::from_fn(
                window,
                src.clone(),
                unit_space(0.0, 1.0),
                |_, _| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)),
            )
            .unwrap();
            let lo = operator_norm_lower(&op, 40, seed);
            let hi = operator_norm_upper(&op);
            assert!(lo <= hi * (1.0 + 1e-12), "bracket failed: {lo} > {hi}");
        }
    }

    #[test]
    fn witness_harmonic_envelope_diverges() {
        let env = DecayEnvelope::power(1.0).unwrap();
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        let r = compactness_witness(|_, _| one(), &env, &src, &tgt, 0.01);
        assert_eq!(r, Err(Error::EnvelopeNotSummable { t: 1.0 }));
    }

    #[test]
    fn witness_quadratic_envelope_example() {
        let env = DecayEnvelope::power(2.0).unwrap();
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        let entry = |m: i64, n: i64| {
            if m == n {
                let b = 1.0 + m.unsigned_abs() as f64;
                Complex64::new(1.0 / (b * b), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        let witness = compactness_witness(entry, &env, &src, &tgt, 0.01).unwrap();
        assert_eq!(witness.n_eps, 199);
        assert!(witness.certified_error <= 0.01);
        // history is monotone nonincreasing in the bound
        for pair in witness.history.windows(2) {
            assert!(pair[0].0 < pair[1].0);
            assert!(pair[0].1 >= pair[1].1);
        }
    }

    #[test]
    fn witness_zero_operator() {
        let env = DecayEnvelope::table(BTreeMap::new()).unwrap();
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        let witness =
            compactness_witness(|_, _| Complex64::new(0.0, 0.0), &env, &src, &tgt, 0.5).unwrap();
        assert_eq!(witness.n_eps, 0);
        assert_eq!(witness.certified_error, 0.0);
    }

    #[test]
    fn witness_detects_envelope_violation() {
        let env = DecayEnvelope::power(2.0).unwrap();
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        // rows claim (1+|m|)^{-2} decay but are actually constant 1
        let r = compactness_witness(|m, n| if m == n { one() } else { Complex64::new(0.0, 0.0) },
            &env, &src, &tgt, 0.01);
        assert!(matches!(r, Err(Error::EnvelopeViolated { .. })));
    }

    #[test]
    fn operator_construction_checks() {
        let src = unit_space(0.0, 2.0);
        let tgt = unit_space(0.0, 1.0);
        let r = FiniteSectionOperator::new(
            IndexWindow::symmetric(1),
            src.clone(),
            tgt.clone(),
            alloc::vec![one(); 4],
        );
        assert_eq!(
            r,
            Err(Error::DimensionMismatch {
                expected: 9,
                got: 4
            })
        );
        let half = SpaceParams::new(
            0.0,
            2.0,
            WeightFamily::constant(1.0, Domain::HalfLine).unwrap(),
        )
        .unwrap();
        let r = FiniteSectionOperator::zero(IndexWindow::symmetric(1), half, tgt);
        assert!(matches!(r, Err(Error::IndexOutsideDomain { .. })));
    }
}
