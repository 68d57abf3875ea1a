//! The spaces `h^{k,s}_w`, finitely supported sequences, and their norms.
//!
//! Infinite sequences are represented by finite-support vectors, which are
//! dense in every `h^{k,s}_w` by the basis expansion, so all statements are
//! exact finite sums here. Summation runs in increasing `|m|` (ties resolve
//! negative index first) with compensated accumulation; when a plain term
//! product would overflow or underflow, the whole sum is redone in the log
//! domain.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
// Needed for f64 math in no_std graphs; redundant when a feature-unified
// dependency links std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_finite, Error, Result};
use crate::sum::CompensatedSum;
use crate::weights::{Domain, WeightFamily};

/// `1 + |m|^s`; may saturate to `+inf` for huge `|m|^s`.
pub(crate) fn one_plus_abs_pow(m: i64, s: f64) -> f64 {
    if m == 0 {
        1.0
    } else {
        1.0 + (m.unsigned_abs() as f64).powf(s)
    }
}

/// `ln(1 + |m|^s)` without forming `|m|^s`.
pub(crate) fn log_one_plus_abs_pow(m: i64, s: f64) -> f64 {
    log_one_plus_pow(m.unsigned_abs() as f64, s)
}

/// `ln(1 + x^s)` for `x >= 0`, stable for arbitrarily large `x^s`.
pub(crate) fn log_one_plus_pow(x: f64, s: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let l = s * x.ln(); // ln x^s, nonnegative for x >= 1
    if l < 700.0 {
        l.exp().ln_1p()
    } else {
        l + (-l).exp().ln_1p()
    }
}

/// `(1 + |m|^s)^e` with a log-domain fallback when the plain power is not
/// representable.
pub(crate) fn pow_one_plus_abs_pow(m: i64, s: f64, e: f64) -> f64 {
    let direct = one_plus_abs_pow(m, s).powf(e);
    if direct.is_finite() && direct > 0.0 {
        direct
    } else {
        (e * log_one_plus_abs_pow(m, s)).exp()
    }
}

/// Parameters `(k, s, w)` of a space `h^{k,s}_w`.
///
/// The index domain is the domain of the weight family. Values are immutable
/// and freely shareable; every operation is a pure function.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceParams {
    k: f64,
    s: f64,
    weight: WeightFamily,
}

impl SpaceParams {
    pub fn new(k: f64, s: f64, weight: WeightFamily) -> Result<Self> {
        ensure_finite(k, "order k")?;
        if !(s.is_finite() && s >= 1.0) {
            return Err(Error::InvalidExponents {
                what: "the degree of summability must satisfy s >= 1",
            });
        }
        Ok(Self { k, s, weight })
    }

    /// The unweighted space `l^s` (order 0, unit weights) on `domain`.
    pub fn unweighted(s: f64, domain: Domain) -> Result<Self> {
        Self::new(0.0, s, WeightFamily::constant(1.0, domain)?)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn weight(&self) -> &WeightFamily {
        &self.weight
    }

    pub fn domain(&self) -> Domain {
        self.weight.domain()
    }

    /// `||e_m||_{k,s,w} = w_m^{1/s} (1 + |m|^s)^{k/s}`.
    pub fn basis_norm(&self, m: i64) -> Result<f64> {
        let w = self.weight.weight_at(m)?;
        let direct = w.powf(self.s.recip()) * pow_one_plus_abs_pow(m, self.s, self.k / self.s);
        if direct.is_finite() && direct > 0.0 {
            Ok(direct)
        } else {
            Ok(self.log_basis_norm(m)?.exp())
        }
    }

    /// `ln ||e_m||_{k,s,w}`, finite even where the plain value saturates.
    pub fn log_basis_norm(&self, m: i64) -> Result<f64> {
        Ok((self.weight.log_weight_at(m)? + self.k * log_one_plus_abs_pow(m, self.s)) / self.s)
    }

    fn check_support(&self, p: &SeqVector) -> Result<()> {
        let domain = self.domain();
        for (m, _) in p.support() {
            if !domain.contains(m) {
                return Err(Error::IndexOutsideDomain { index: m, domain });
            }
        }
        Ok(())
    }

    /// The norm `( sum_m w_m (1 + |m|^s)^k |p_m|^s )^{1/s}`.
    pub fn norm(&self, p: &SeqVector) -> Result<f64> {
        self.check_support(p)?;
        if p.is_zero() {
            return Ok(0.0);
        }
        let ordered = p.ordered_support();
        let mut acc = CompensatedSum::new();
        let mut degenerate = false;
        for &(m, z) in &ordered {
            let a = z.norm();
            let w = self.weight.weight_at(m)?;
            let term = w * one_plus_abs_pow(m, self.s).powf(self.k) * abs_pow(a, self.s);
            if term.is_finite() && term > 0.0 {
                acc.add(term);
            } else {
                degenerate = true;
                break;
            }
        }
        if !degenerate {
            return Ok(acc.value().powf(self.s.recip()));
        }
        // Log-sum-exp pass: exact up to rounding wherever the direct product
        // over- or underflowed.
        let mut logs = Vec::with_capacity(ordered.len());
        let mut l_max = f64::NEG_INFINITY;
        for &(m, z) in &ordered {
            let a = z.norm();
            let l = self.weight.log_weight_at(m)?
                + self.k * log_one_plus_abs_pow(m, self.s)
                + self.s * a.ln();
            l_max = l_max.max(l);
            logs.push(l);
        }
        let mut scaled = CompensatedSum::new();
        for l in logs {
            scaled.add((l - l_max).exp());
        }
        Ok(((l_max + scaled.value().ln()) / self.s).exp())
    }

    /// The sesquilinear form `sum_m w_m (1 + m^2)^k p_m conj(q_m)`; only the
    /// `s = 2` member of the scale is a Hilbert space.
    pub fn inner_product(&self, p: &SeqVector, q: &SeqVector) -> Result<Complex64> {
        if self.s != 2.0 {
            return Err(Error::NotAHilbertSpace { s: self.s });
        }
        self.check_support(p)?;
        self.check_support(q)?;
        let (small, other) = if p.support_len() <= q.support_len() {
            (p, q)
        } else {
            (q, p)
        };
        let mut shared: Vec<i64> = small
            .support()
            .map(|(m, _)| m)
            .filter(|&m| other.get(m) != Complex64::new(0.0, 0.0))
            .collect();
        shared.sort_unstable_by_key(|&m| (m.unsigned_abs(), m));
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for m in shared {
            let factor = self.hilbert_factor(m)?;
            let prod = p.get(m) * q.get(m).conj() * factor;
            re.add(prod.re);
            im.add(prod.im);
        }
        Ok(Complex64::new(re.value(), im.value()))
    }

    fn hilbert_factor(&self, m: i64) -> Result<f64> {
        let w = self.weight.weight_at(m)?;
        let g = 1.0 + (m as f64) * (m as f64);
        let direct = w * g.powf(self.k);
        if direct.is_finite() && direct > 0.0 {
            Ok(direct)
        } else {
            Ok((self.weight.log_weight_at(m)? + self.k * g.ln()).exp())
        }
    }

    /// `||p - sum_{|m| <= n} p_m e_m||`, the norm of the expansion remainder
    /// after the partial sums up to `n`.
    pub fn expansion_remainder(&self, p: &SeqVector, n: u64) -> Result<f64> {
        self.norm(&p.tail(n.saturating_add(1)))
    }
}

fn abs_pow(a: f64, s: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a.powf(s)
    }
}

/// A finitely supported complex sequence over the integers.
///
/// Canonical sparse form: no stored entry is exactly zero and indices are
/// unique. Vectors carry no domain of their own; half-line restrictions are
/// enforced by the space operations that consume them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SeqVector {
    entries: BTreeMap<i64, Complex64>,
}

impl SeqVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a vector by accumulating `(index, value)` pairs; exact zeros
    /// (including cancellations) are dropped.
    pub fn from_entries<I: IntoIterator<Item = (i64, Complex64)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (m, z) in iter {
            v.add_entry(m, z);
        }
        v
    }

    /// Overwrites the entry at `m` (removing it when `value` is zero).
    pub fn set(&mut self, m: i64, value: Complex64) {
        if value == Complex64::new(0.0, 0.0) {
            self.entries.remove(&m);
        } else {
            self.entries.insert(m, value);
        }
    }

    /// Adds `value` into the entry at `m`.
    pub fn add_entry(&mut self, m: i64, value: Complex64) {
        let next = self.get(m) + value;
        self.set(m, next);
    }

    pub fn get(&self, m: i64) -> Complex64 {
        self.entries
            .get(&m)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.entries.iter().map(|(&m, &z)| (m, z))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_abs_index(&self) -> Option<u64> {
        self.entries.keys().map(|m| m.unsigned_abs()).max()
    }

    /// Support ordered by increasing `|m|`, negative index first on ties.
    pub fn ordered_support(&self) -> Vec<(i64, Complex64)> {
        let mut terms: Vec<(i64, Complex64)> = self.support().collect();
        terms.sort_unstable_by_key(|&(m, _)| (m.unsigned_abs(), m));
        terms
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut v = Self::zero();
        for (m, z) in self.support() {
            v.set(m, z * factor);
        }
        v
    }

    pub fn scaled_real(&self, factor: f64) -> Self {
        self.scaled(Complex64::new(factor, 0.0))
    }

    /// The entries with `|m| < m_star` (strict), i.e. the projection onto
    /// the span of the basis vectors below the tail rank.
    pub fn truncate(&self, m_star: u64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(m, _)| m.unsigned_abs() < m_star)
                .map(|(&m, &z)| (m, z))
                .collect(),
        }
    }

    /// The complementary tail, entries with `|m| >= m_star`.
    pub fn tail(&self, m_star: u64) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(m, _)| m.unsigned_abs() >= m_star)
                .map(|(&m, &z)| (m, z))
                .collect(),
        }
    }
}

impl Add for &SeqVector {
    type Output = SeqVector;

    fn add(self, rhs: &SeqVector) -> SeqVector {
        let mut out = self.clone();
        for (m, z) in rhs.support() {
            out.add_entry(m, z);
        }
        out
    }
}

impl Sub for &SeqVector {
    type Output = SeqVector;

    fn sub(self, rhs: &SeqVector) -> SeqVector {
        let mut out = self.clone();
        for (m, z) in rhs.support() {
            out.add_entry(m, -z);
        }
        out
    }
}

impl Neg for &SeqVector {
    type Output = SeqVector;

    fn neg(self) -> SeqVector {
        self.scaled_real(-1.0)
    }
}

impl Mul<Complex64> for &SeqVector {
    type Output = SeqVector;

    fn mul(self, rhs: Complex64) -> SeqVector {
        self.scaled(rhs)
    }
}

/// The Schauder basis vector `e_m` with `(e_m)_n = delta_{m,n}`.
pub fn basis_vector(m: i64) -> SeqVector {
    let mut v = SeqVector::zero();
    v.set(m, Complex64::new(1.0, 0.0));
    v
}

/// The entries of `p` with `|m| < m_star`; together with the complementary
/// tail this splits `||p||^s` exactly (disjoint supports).
pub fn truncate(p: &SeqVector, m_star: u64) -> SeqVector {
    p.truncate(m_star)
}
