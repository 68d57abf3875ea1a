//! Seeded invariant suites behind the `verify` subcommand.
//!
//! Every suite runs `trials` seeded checks per property, counts failures,
//! and serializes the first counterexample with full inputs for replay.
//! Reports are deterministic functions of `(suite, trials, seed)`.

use serde::Serialize;
use serde_json::{json, Value};

use sobseq_core::sampling::{trial_rng, Rng, VectorSampler};
use sobseq_core::{
    basis_vector, certify_theorem1, certify_theorem2, isometry_apply, isometry_invert,
    pitt_conjugate, pitt_deconjugate, ratio_condition_check, summability_constant,
    theorem2_constant, BoundScope, Complex64, Domain, FiniteSectionOperator, IndexWindow,
    SeqVector, SpaceParams, WeightFamily,
};

use crate::error::CliError;


#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    NormAxioms,
    Monotonicity,
    T1b,
    T2,
    Certificates,
    Isometry,
}

impl SuiteKind {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "norm-axioms" => SuiteKind::NormAxioms,
            "monotonicity" => SuiteKind::Monotonicity,
            "t1b" => SuiteKind::T1b,
            "t2" => SuiteKind::T2,
            "certificates" => SuiteKind::Certificates,
            "isometry" => SuiteKind::Isometry,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::NormAxioms => "norm-axioms",
            SuiteKind::Monotonicity => "monotonicity",
            SuiteKind::T1b => "t1b",
            SuiteKind::T2 => "t2",
            SuiteKind::Certificates => "certificates",
            SuiteKind::Isometry => "isometry",
        }
    }

    pub const ALL_NAMES: &'static str =
        "norm-axioms, monotonicity, t1b, t2, certificates, isometry";
}

#[derive(Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub first_counterexample: Option<Value>,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
    pub passed: bool,
}

struct Property {
    out: PropertyOutcome,
}

impl Property {
    fn new(name: &str) -> Self {
        Property {
            out: PropertyOutcome {
                name: name.to_string(),
                checked: 0,
                failures: 0,
                first_counterexample: None,
            },
        }
    }

    fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.out.checked += 1;
        if !ok {
            self.out.failures += 1;
            if self.out.first_counterexample.is_none() {
                self.out.first_counterexample = Some(counterexample());
            }
        }
    }

    fn finish(self) -> PropertyOutcome {
        self.out
    }
}

fn vector_json(p: &SeqVector) -> Value {
    Value::Array(
        p.support()
            .map(|(m, z)| json!([m, z.re, z.im]))
            .collect(),
    )
}

fn weight_grid() -> Vec<(WeightFamily, &'static str)> {
    vec![
        (
            WeightFamily::constant(1.0, Domain::FullLine).unwrap(),
            "constant:1",
        ),
        (
            WeightFamily::constant(4.0, Domain::FullLine).unwrap(),
            "constant:4",
        ),
        (
            WeightFamily::polynomial(2.0, Domain::FullLine).unwrap(),
            "poly:2",
        ),
        (WeightFamily::gibbs(1.0).unwrap(), "gibbs:1"),
    ]
}

const K_GRID: [f64; 4] = [-1.0, 0.0, 1.0, 2.5];
const S_GRID: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

fn grid_config(trial: u64) -> (WeightFamily, &'static str, f64, f64) {
    let weights = weight_grid();
    let (w, wname) = weights[(trial % weights.len() as u64) as usize].clone();
    let k = K_GRID[((trial / 4) % 4) as usize];
    let s = S_GRID[((trial / 16) % 4) as usize];
    (w, wname, k, s)
}

pub fn run_suite(kind: SuiteKind, trials: u64, seed: u64) -> Result<SuiteReport, CliError> {
    let trials = trials.max(1);
    let properties = match kind {
        SuiteKind::NormAxioms => norm_axioms(trials, seed)?,
        SuiteKind::Monotonicity => monotonicity(trials, seed)?,
        SuiteKind::T1b => t1b(trials, seed)?,
        SuiteKind::T2 => t2(trials, seed)?,
        SuiteKind::Certificates => certificates(trials, seed)?,
        SuiteKind::Isometry => isometry(trials, seed)?,
    };
    let passed = properties.iter().all(|p| p.failures == 0);
    Ok(SuiteReport {
        suite: kind.name().to_string(),
        trials,
        seed,
        properties,
        passed,
    })
}

fn norm_axioms(trials: u64, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut homogeneity = Property::new("absolute-homogeneity");
    let mut triangle = Property::new("triangle-inequality");
    let mut parallelogram = Property::new("parallelogram-s2");
    let mut basis_formula = Property::new("basis-norm-formula");
    let mut tail_identity = Property::new("truncation-tail-identity");

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (w, wname, k, s) = grid_config(trial);
        let sp = SpaceParams::new(k, s, w.clone())?;
        let sampler = VectorSampler::new(w.domain(), 24, 8);
        let p = sampler.sample(&mut rng);
        let q = sampler.sample(&mut rng);

        let alpha = Complex64::new(rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
        let lhs = sp.norm(&p.scaled(alpha))?;
        let rhs = alpha.norm() * sp.norm(&p)?;
        homogeneity.record((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300), || {
            json!({"trial": trial, "weight": wname, "k": k, "s": s,
                   "alpha": [alpha.re, alpha.im], "p": vector_json(&p),
                   "lhs": lhs, "rhs": rhs})
        });

        let sum_norm = sp.norm(&(&p + &q))?;
        let bound = sp.norm(&p)? + sp.norm(&q)?;
        triangle.record(sum_norm <= bound + 1e-12 * bound, || {
            json!({"trial": trial, "weight": wname, "k": k, "s": s,
                   "p": vector_json(&p), "q": vector_json(&q),
                   "lhs": sum_norm, "rhs": bound})
        });

        let hp = SpaceParams::new(k, 2.0, w.clone())?;
        let plus = hp.norm(&(&p + &q))?;
        let minus = hp.norm(&(&p - &q))?;
        let np = hp.norm(&p)?;
        let nq = hp.norm(&q)?;
        let left = plus * plus + minus * minus;
        let right = 2.0 * (np * np + nq * nq);
        parallelogram.record((left - right).abs() <= 1e-12 * right.max(1e-300), || {
            json!({"trial": trial, "weight": wname, "k": k,
                   "p": vector_json(&p), "q": vector_json(&q),
                   "lhs": left, "rhs": right})
        });

        let radius = match w.domain() {
            Domain::FullLine => rng.gen_range(-50i64..=50),
            Domain::HalfLine => rng.gen_range(0i64..=50),
        };
        let direct = sp.basis_norm(radius)?;
        let via_norm = sp.norm(&basis_vector(radius))?;
        basis_formula.record((via_norm - direct).abs() <= 1e-12 * direct, || {
            json!({"trial": trial, "weight": wname, "k": k, "s": s, "m": radius,
                   "norm": via_norm, "formula": direct})
        });

        let m_star = rng.gen_range(0u64..=25);
        let total = sp.norm(&p)?.powf(s);
        let head = sp.norm(&p.truncate(m_star))?.powf(s);
        let tail = sp.norm(&(&p - &p.truncate(m_star)))?.powf(s);
        tail_identity.record(
            (total - (head + tail)).abs() <= 1e-12 * total.max(1e-300),
            || {
                json!({"trial": trial, "weight": wname, "k": k, "s": s,
                       "m_star": m_star, "p": vector_json(&p),
                       "total": total, "head": head, "tail": tail})
            },
        );
    }

    // fixed witness: the parallelogram law must fail away from s = 2
    let mut off_two = Property::new("parallelogram-fails-off-s2");
    for s in [1.0, 1.5, 3.0] {
        let sp = SpaceParams::new(
            0.0,
            s,
            WeightFamily::constant(1.0, Domain::FullLine).unwrap(),
        )?;
        let p = basis_vector(0);
        let q = basis_vector(1);
        let plus = sp.norm(&(&p + &q))?;
        let minus = sp.norm(&(&p - &q))?;
        let left = plus * plus + minus * minus;
        off_two.record((left - 4.0).abs() > 0.1, || {
            json!({"s": s, "lhs": left, "rhs": 4.0})
        });
    }

    Ok(vec![
        homogeneity.finish(),
        triangle.finish(),
        parallelogram.finish(),
        off_two.finish(),
        basis_formula.finish(),
        tail_identity.finish(),
    ])
}

fn monotonicity(trials: u64, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut mono = Property::new("norm-monotone-in-k");
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (w, wname, _, s) = grid_config(trial);
        let ka = K_GRID[rng.gen_range(0..4)];
        let kb = K_GRID[rng.gen_range(0..4)];
        let (k_lo, k_hi) = if ka <= kb { (ka, kb) } else { (kb, ka) };
        let sampler = VectorSampler::new(w.domain(), 24, 8);
        let p = sampler.sample(&mut rng);
        let lo = SpaceParams::new(k_lo, s, w.clone())?.norm(&p)?;
        let hi = SpaceParams::new(k_hi, s, w.clone())?.norm(&p)?;
        mono.record(lo <= hi + 1e-12 + 1e-12 * hi, || {
            json!({"trial": trial, "weight": wname, "s": s,
                   "k_lo": k_lo, "k_hi": k_hi, "p": vector_json(&p),
                   "norm_lo": lo, "norm_hi": hi})
        });
    }
    Ok(vec![mono.finish()])
}

fn t1b(trials: u64, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut bound = Property::new("summability-constant-bound");
    let exponents = [(2.0, 1.0), (3.0, 2.0), (2.0, 2.0)];
    let ks = [0.0, 1.0, 2.5];
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (w, wname, _, _) = grid_config(trial);
        let (s, t) = exponents[(trial % 3) as usize];
        let k = ks[((trial / 3) % 3) as usize];
        let c = summability_constant(k, s, t, &w)?;
        let hi = SpaceParams::new(k, s, w.clone())?;
        let lo = SpaceParams::new(k, t, w.clone())?;
        let sampler = VectorSampler::new(w.domain(), 20, 8);
        let p = sampler.sample(&mut rng);
        let lhs = hi.norm(&p)?;
        let rhs = c * lo.norm(&p)?;
        bound.record(lhs <= rhs * (1.0 + 1e-10), || {
            json!({"trial": trial, "weight": wname, "k": k, "s": s, "t": t,
                   "constant": c, "p": vector_json(&p), "lhs": lhs, "rhs": rhs})
        });
    }
    Ok(vec![bound.finish()])
}

fn t2(trials: u64, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut analytic = Property::new("ratio-condition-analytic");
    let mut gibbs_bound = Property::new("two-weight-bound-gibbs");
    let mut const_bound = Property::new("two-weight-bound-constant");

    // Gibbs scenario: w = exp(m), w_hat = exp(m/2), (k, s, t) = (1, 2, 1)
    let w_g = WeightFamily::gibbs(1.0).unwrap();
    let wh_g = WeightFamily::gibbs(0.5).unwrap();
    let bounds_g = ratio_condition_check(&w_g, &wh_g, 2.0, 1.0, IndexWindow::half_line(200))?;
    analytic.record(
        bounds_g.scope == BoundScope::Analytic && bounds_g.c1 == 1.0 && bounds_g.c2 == 1.0,
        || json!({"pair": "gibbs", "c1": bounds_g.c1, "c2": bounds_g.c2}),
    );
    let c_g = theorem2_constant(1.0, 2.0, 1.0, bounds_g.c1, Domain::HalfLine, 1e-6)?;
    let src_g = SpaceParams::new(1.0, 2.0, w_g)?;
    let tgt_g = SpaceParams::new(0.0, 1.0, wh_g)?;

    // constant-weight scenario: w = w_hat = 1, same exponents
    let w_c = WeightFamily::constant(1.0, Domain::FullLine).unwrap();
    let bounds_c = ratio_condition_check(&w_c, &w_c, 2.0, 1.0, IndexWindow::symmetric(200))?;
    analytic.record(
        bounds_c.scope == BoundScope::Analytic && bounds_c.c1 == 1.0 && bounds_c.c2 == 1.0,
        || json!({"pair": "constant", "c1": bounds_c.c1, "c2": bounds_c.c2}),
    );
    let c_c = theorem2_constant(1.0, 2.0, 1.0, bounds_c.c1, Domain::FullLine, 1e-6)?;
    let src_c = SpaceParams::new(1.0, 2.0, w_c.clone())?;
    let tgt_c = SpaceParams::new(0.0, 1.0, w_c)?;

    let half_sampler = VectorSampler::new(Domain::HalfLine, 24, 8);
    let full_sampler = VectorSampler::new(Domain::FullLine, 24, 8);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let p = half_sampler.sample(&mut rng);
        let lhs = tgt_g.norm(&p)?;
        let rhs = c_g * src_g.norm(&p)?;
        gibbs_bound.record(lhs <= rhs * (1.0 + 1e-10), || {
            json!({"trial": trial, "constant": c_g, "p": vector_json(&p),
                   "lhs": lhs, "rhs": rhs})
        });

        let p = full_sampler.sample(&mut rng);
        let lhs = tgt_c.norm(&p)?;
        let rhs = c_c * src_c.norm(&p)?;
        const_bound.record(lhs <= rhs * (1.0 + 1e-10), || {
            json!({"trial": trial, "constant": c_c, "p": vector_json(&p),
                   "lhs": lhs, "rhs": rhs})
        });
    }

    Ok(vec![
        analytic.finish(),
        gibbs_bound.finish(),
        const_bound.finish(),
    ])
}

fn certificates(trials: u64, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut t1_sound = Property::new("t1a-certificate-soundness");
    let mut t2_sound = Property::new("t2-certificate-soundness");

    // order drop (k, k', s) = (0, 1, 2), unit weight, eps = 0.2, kappa = 1
    let w = WeightFamily::constant(1.0, Domain::FullLine).unwrap();
    let cert1 = certify_theorem1(0.0, 1.0, 2.0, &w, 0.2, 1.0)?;
    let src1 = SpaceParams::new(1.0, 2.0, w.clone())?;
    let tgt1 = SpaceParams::new(0.0, 2.0, w)?;

    // two-weight Gibbs pair, eps = 0.5, kappa = 1
    let w_g = WeightFamily::gibbs(1.0).unwrap();
    let wh_g = WeightFamily::gibbs(0.5).unwrap();
    let cert2 = certify_theorem2(1.0, 2.0, 1.0, 1.0, 0.5, 1.0, Domain::HalfLine, 1e-6)?;
    let src2 = SpaceParams::new(1.0, 2.0, w_g)?;
    let tgt2 = SpaceParams::new(0.0, 1.0, wh_g)?;

    let full_sampler = VectorSampler::new(Domain::FullLine, 40, 10);
    let half_sampler = VectorSampler::new(Domain::HalfLine, 30, 10);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);

        let p = full_sampler.sample(&mut rng);
        let p = p.scaled_real(cert1.kappa() / src1.norm(&p)?);
        let tail = tgt1.norm(&(&p - &p.truncate(cert1.m_star())))?;
        t1_sound.record(tail <= cert1.epsilon() / 2.0 + 1e-12, || {
            json!({"trial": trial, "m_star": cert1.m_star(), "p": vector_json(&p),
                   "tail": tail, "bound": cert1.epsilon() / 2.0})
        });

        let p = half_sampler.sample(&mut rng);
        let p = p.scaled_real(cert2.kappa() / src2.norm(&p)?);
        let tail = tgt2.norm(&(&p - &p.truncate(cert2.m_star())))?;
        t2_sound.record(tail <= cert2.epsilon() / 2.0 + 1e-12, || {
            json!({"trial": trial, "m_star": cert2.m_star(), "p": vector_json(&p),
                   "tail": tail, "bound": cert2.epsilon() / 2.0})
        });
    }

    Ok(vec![t1_sound.finish(), t2_sound.finish()])
}

fn isometry(trials: u64, seed: u64) -> Result<Vec<PropertyOutcome>, CliError> {
    let mut preserves = Property::new("isometry-preserves-norm");
    let mut round_trip = Property::new("isometry-round-trip");
    let mut conjugation = Property::new("pitt-conjugation-round-trip");
    let mut diagonal = Property::new("diagonal-symbol-identity");

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (w, wname, k, s) = grid_config(trial);
        let sp = SpaceParams::new(k, s, w.clone())?;
        let ls = SpaceParams::unweighted(s, w.domain())?;
        let sampler = VectorSampler::new(w.domain(), 24, 8);
        let p = sampler.sample(&mut rng);

        let image = isometry_apply(&sp, &p)?;
        let a = ls.norm(&image)?;
        let b = sp.norm(&p)?;
        preserves.record((a - b).abs() <= 1e-12 * b.max(1e-300), || {
            json!({"trial": trial, "weight": wname, "k": k, "s": s,
                   "p": vector_json(&p), "unweighted": a, "weighted": b})
        });

        let back = isometry_invert(&sp, &image)?;
        let ok = p
            .support()
            .all(|(m, z)| (back.get(m) - z).norm() <= 1e-12 * z.norm());
        round_trip.record(ok, || {
            json!({"trial": trial, "weight": wname, "k": k, "s": s,
                   "p": vector_json(&p), "back": vector_json(&back)})
        });

        // conjugation round-trip on a small random section (s > t required)
        let t_exp = 1.0 + (s - 1.0) * 0.5;
        if s > t_exp {
            let window = match w.domain() {
                Domain::FullLine => IndexWindow::symmetric(4),
                Domain::HalfLine => IndexWindow::half_line(4),
            };
            let src = SpaceParams::new(k, s, w.clone())?;
            let tgt = SpaceParams::new(k, t_exp, w.clone())?;
            let op = FiniteSectionOperator::from_fn(window, src, tgt, |_, _| {
                Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
            })?;
            let c = pitt_conjugate(&op)?;
            let back = pitt_deconjugate(&c, k, &w)?;
            let ok = op
                .entries()
                .iter()
                .zip(back.entries())
                .all(|(x, y)| (x - y).norm() <= 1e-12 * x.norm().max(1e-300));
            conjugation.record(ok, || {
                json!({"trial": trial, "weight": wname, "k": k, "s": s, "t": t_exp})
            });
        }

        // diagonal symbol equals the basis-norm ratio
        let k_tgt = k - rng.gen_range(0.0..2.0);
        let src = SpaceParams::new(k, s, w.clone())?;
        let tgt = SpaceParams::new(k_tgt, s, w.clone())?;
        let window = match w.domain() {
            Domain::FullLine => IndexWindow::symmetric(8),
            Domain::HalfLine => IndexWindow::half_line(8),
        };
        let diag = sobseq_core::embedding_as_diagonal(&src, &tgt, window)?;
        let ok = window.indices().all(|m| {
            let ratio = tgt.basis_norm(m).unwrap() / src.basis_norm(m).unwrap();
            (diag.entry(m, m).re - ratio).abs() <= 1e-12 * ratio
        });
        diagonal.record(ok, || {
            json!({"trial": trial, "weight": wname, "k_src": k, "k_tgt": k_tgt, "s": s})
        });
    }

    Ok(vec![
        preserves.finish(),
        round_trip.finish(),
        conjugation.finish(),
        diagonal.finish(),
    ])
}
