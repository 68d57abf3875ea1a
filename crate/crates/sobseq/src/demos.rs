//! Report builders for the `gibbs-demo` and `pitt-demo` subcommands.

use serde::Serialize;

use sobseq_core::sampling::{trial_rng, Rng};
use sobseq_core::{
    certify_theorem2, compactness_witness, operator_norm_lower, operator_norm_upper,
    pitt_conjugate, pitt_deconjugate, ratio_condition_check, theorem2_constant,
    theorem2_second_constant, weight_series_sum_detailed, BoundScope, Complex64, DecayEnvelope,
    Domain, FiniteSectionOperator, IndexWindow, SpaceParams, WeightFamily,
};

use crate::error::CliError;
use crate::schema::{CertificateDoc, OperatorDoc, WitnessDoc};


#[derive(Debug, Serialize)]
pub struct ChainLink {
    pub from: String,
    pub to: String,
    pub relation: String,
}

/// The thermal-bath weight scenario: `w = exp(beta m)` against
/// `w_hat = exp(beta m / 2)` on the half line with `(k, s, t) = (1, 2, 1)`.
#[derive(Debug, Serialize)]
pub struct GibbsDemoDoc {
    pub beta: f64,
    pub k: f64,
    pub s: f64,
    pub t: f64,
    pub c1: f64,
    pub c2: f64,
    pub ratio_scope: String,
    pub series_value: f64,
    pub embedding_constant: f64,
    pub second_constant: f64,
    pub chain: Vec<ChainLink>,
    pub certificate: CertificateDoc,
}

pub fn gibbs_demo(beta: f64, tol: f64, epsilon: f64, kappa: f64) -> Result<GibbsDemoDoc, CliError> {
    let (k, s, t) = (1.0, 2.0, 1.0);
    let w = WeightFamily::gibbs(beta)?;
    let w_hat = WeightFamily::gibbs(beta / 2.0)?;
    let bounds = ratio_condition_check(&w, &w_hat, s, t, IndexWindow::half_line(200))?;
    let rigorous = bounds.scope == BoundScope::Analytic;
    let series = weight_series_sum_detailed(k, s, t, Domain::HalfLine, tol)?;
    let constant = theorem2_constant(k, s, t, bounds.c1, Domain::HalfLine, tol)?;
    let second = theorem2_second_constant(s, t, bounds.c2)?;
    let cert = certify_theorem2(k, s, t, bounds.c1, epsilon, kappa, Domain::HalfLine, tol)?;
    Ok(GibbsDemoDoc {
        beta,
        k,
        s,
        t,
        c1: bounds.c1,
        c2: bounds.c2,
        ratio_scope: match bounds.scope {
            BoundScope::Analytic => "analytic".to_string(),
            BoundScope::WindowEmpirical => "window-empirical".to_string(),
        },
        series_value: series.value,
        embedding_constant: constant,
        second_constant: second,
        chain: vec![
            ChainLink {
                from: "h^{1,2}_{w(beta)}".to_string(),
                to: "l^1_{w(beta/2)}".to_string(),
                relation: "compact".to_string(),
            },
            ChainLink {
                from: "l^1_{w(beta/2)}".to_string(),
                to: "l^2_{w(beta)}".to_string(),
                relation: "continuous".to_string(),
            },
        ],
        certificate: CertificateDoc::from_certificate(&cert, Some(constant), rigorous),
    })
}

#[derive(Debug, Clone)]
pub struct PittDemoConfig {
    pub k: f64,
    pub s: f64,
    pub t: f64,
    pub weight: WeightFamily,
    pub radius: u32,
    pub gamma: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub emit_operator: bool,
}

/// Numerical Pitt factorization: a seeded operator with declared row decay
/// is conjugated between the weighted spaces and the unweighted `l^s -> l^t`
/// pair, its norm is bracketed, and its finite-rank approximation certified.
#[derive(Debug, Serialize)]
pub struct PittDemoDoc {
    pub k: f64,
    pub s: f64,
    pub t: f64,
    pub window: [i64; 2],
    pub gamma: f64,
    pub seed: u64,
    /// Row-Hoelder upper bound on the conjugated section; the isometries
    /// transfer it verbatim to the weighted operator.
    pub norm_upper: f64,
    pub norm_lower: f64,
    pub conjugation_roundtrip_error: f64,
    pub witness: WitnessDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorDoc>,
}

pub fn pitt_demo(cfg: PittDemoConfig) -> Result<PittDemoDoc, CliError> {
    if !(cfg.s > cfg.t && cfg.t >= 1.0) {
        return Err(CliError::invalid("pitt-demo needs s > t >= 1"));
    }
    let domain = cfg.weight.domain();
    let window = match domain {
        Domain::FullLine => IndexWindow::symmetric(cfg.radius),
        Domain::HalfLine => IndexWindow::half_line(cfg.radius),
    };
    let n = window.len();
    let s_conj = cfg.s / (cfg.s - 1.0);

    // Conjugated-side section: each row is scaled to an s'-norm strictly
    // inside its declared envelope (1 + |m|)^{-gamma}.
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, m) in window.indices().enumerate() {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let row: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        let current = row
            .iter()
            .map(|z| z.norm().powf(s_conj))
            .sum::<f64>()
            .powf(s_conj.recip());
        let target = (1.0 + m.unsigned_abs() as f64).powf(-cfg.gamma)
            * (0.5 + 0.5 * rng.gen_range(0.0..1.0));
        let scale = if current > 0.0 { target / current } else { 0.0 };
        for (j, z) in row.into_iter().enumerate() {
            entries[i * n + j] = z * scale;
        }
    }
    let c = FiniteSectionOperator::new(
        window,
        SpaceParams::unweighted(cfg.s, domain)?,
        SpaceParams::unweighted(cfg.t, domain)?,
        entries,
    )?;

    // factor through the weighted spaces and come back
    let t_op = pitt_deconjugate(&c, cfg.k, &cfg.weight)?;
    let back = pitt_conjugate(&t_op)?;
    let roundtrip = c
        .entries()
        .iter()
        .zip(back.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max);

    let env = DecayEnvelope::power(cfg.gamma)?;
    let witness = compactness_witness(
        |m, n| c.entry(m, n),
        &env,
        c.src(),
        c.tgt(),
        cfg.epsilon,
    )?;

    Ok(PittDemoDoc {
        k: cfg.k,
        s: cfg.s,
        t: cfg.t,
        window: [window.lo(), window.hi()],
        gamma: cfg.gamma,
        seed: cfg.seed,
        norm_upper: operator_norm_upper(&c),
        norm_lower: operator_norm_lower(&c, 64, cfg.seed),
        conjugation_roundtrip_error: roundtrip,
        witness: WitnessDoc::from_witness(&witness),
        operator: cfg.emit_operator.then(|| OperatorDoc::from_operator(&t_op)),
    })
}
