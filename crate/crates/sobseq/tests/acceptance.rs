//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test -p sobseq --test acceptance`
//! (add `-- --nocapture` to see the lines on success).

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;

use sobseq_core::sampling::{trial_rng, Rng, VectorSampler};
use sobseq_core::{
    basis_vector, certify_theorem1, compactness_witness, isometry_apply, pitt_conjugate,
    pitt_deconjugate, ratio_condition_check, summability_constant, tail_rank_theorem1,
    theorem2_constant, weight_series_sum, BoundScope, Complex64, DecayEnvelope, Domain,
    Error, FiniteSectionOperator, IndexWindow, SpaceParams, WeightFamily,
};

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    let result = catch_unwind(body);
    match &result {
        Ok(()) => println!("{name}: PASS"),
        Err(_) => println!("{name}: FAIL"),
    }
    if let Err(e) = result {
        resume_unwind(e);
    }
}

type WeightCase = (WeightFamily, Box<dyn Fn(i64) -> f64>);

fn weight_grid() -> Vec<WeightCase> {
    vec![
        (
            WeightFamily::constant(1.0, Domain::FullLine).unwrap(),
            Box::new(|_| 1.0) as Box<dyn Fn(i64) -> f64>,
        ),
        (
            WeightFamily::constant(4.0, Domain::FullLine).unwrap(),
            Box::new(|_| 4.0),
        ),
        (
            WeightFamily::polynomial(2.0, Domain::FullLine).unwrap(),
            Box::new(|m| {
                let b = 1.0 + m.unsigned_abs() as f64;
                b * b
            }),
        ),
        (
            WeightFamily::gibbs(1.0).unwrap(),
            Box::new(|m| (m as f64).exp()),
        ),
    ]
}

const K_GRID: [f64; 4] = [-1.0, 0.0, 1.0, 2.5];
const S_GRID: [f64; 3] = [1.0, 2.0, 3.0];

#[test]
fn criterion_1_basis_norm_formula() {
    criterion("criterion 1 (basis-norm formula on the parameter grid)", || {
        for (w, w_fn) in &weight_grid() {
            for &k in &K_GRID {
                for &s in &S_GRID {
                    let sp = SpaceParams::new(k, s, w.clone()).unwrap();
                    let indices: Vec<i64> = match w.domain() {
                        Domain::FullLine => (-50..=50).collect(),
                        Domain::HalfLine => (0..=50).collect(),
                    };
                    for m in indices {
                        let expected = w_fn(m).powf(1.0 / s)
                            * (1.0 + (m.abs() as f64).powf(s)).powf(k / s);
                        let got = sp.norm(&basis_vector(m)).unwrap();
                        assert!(
                            (got - expected).abs() <= 1e-12 * expected,
                            "k={k} s={s} m={m}: {got} vs {expected}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_2_norm_monotonicity_in_k() {
    criterion("criterion 2 (norm monotone in the order k)", || {
        let weights = weight_grid();
        let mut checked = 0u64;
        for trial in 0..1000u64 {
            let mut rng = trial_rng(1002, trial);
            let (w, _) = &weights[(trial % 4) as usize];
            let s = S_GRID[(trial % 3) as usize];
            let sampler = VectorSampler::new(w.domain(), 24, 8);
            let p = sampler.sample(&mut rng);
            for (i, &k_lo) in K_GRID.iter().enumerate() {
                for &k_hi in &K_GRID[i..] {
                    let lo = SpaceParams::new(k_lo, s, w.clone())
                        .unwrap()
                        .norm(&p)
                        .unwrap();
                    let hi = SpaceParams::new(k_hi, s, w.clone())
                        .unwrap()
                        .norm(&p)
                        .unwrap();
                    assert!(
                        lo <= hi + 1e-12,
                        "trial {trial}: k={k_lo} gave {lo} > k'={k_hi} gave {hi}"
                    );
                    checked += 1;
                }
            }
        }
        assert!(checked >= 1000);
    });
}

#[test]
fn criterion_3_summability_constant() {
    criterion("criterion 3 (summability constant 0.5 for constant weight 4)", || {
        let w = WeightFamily::constant(4.0, Domain::FullLine).unwrap();
        let c = summability_constant(0.0, 2.0, 1.0, &w).unwrap();
        assert_eq!(c, 0.5);
        let hi = SpaceParams::new(0.0, 2.0, w.clone()).unwrap();
        let lo = SpaceParams::new(0.0, 1.0, w).unwrap();
        let mut best = 0.0f64;
        for m in -50i64..=50 {
            let e = basis_vector(m);
            best = best.max(hi.norm(&e).unwrap() / lo.norm(&e).unwrap());
        }
        let sampler = VectorSampler::new(Domain::FullLine, 30, 10);
        for trial in 0..1000u64 {
            let mut rng = trial_rng(1003, trial);
            let p = sampler.sample(&mut rng);
            let denom = lo.norm(&p).unwrap();
            if denom > 0.0 {
                best = best.max(hi.norm(&p).unwrap() / denom);
            }
        }
        assert!(best <= 0.5 * (1.0 + 1e-10), "ratio {best} exceeded 0.5");
    });
}

#[test]
fn criterion_4_certified_series() {
    criterion("criterion 4 (certified weight-series sums and divergence)", || {
        let oracle =
            std::f64::consts::PI * (std::f64::consts::PI.cosh() / std::f64::consts::PI.sinh());
        let full = weight_series_sum(1.0, 2.0, 1.0, Domain::FullLine, 1e-8).unwrap();
        assert!((full - oracle).abs() <= 1e-8, "full-line: {full} vs {oracle}");
        assert!((full - 3.15334809).abs() <= 2e-8);
        let half = weight_series_sum(1.0, 2.0, 1.0, Domain::HalfLine, 1e-8).unwrap();
        assert!((half - (1.0 + oracle) / 2.0).abs() <= 1e-8);
        assert!((half - 2.07667405).abs() <= 2e-8);
        assert!(matches!(
            weight_series_sum(0.4, 2.0, 1.0, Domain::FullLine, 1e-8),
            Err(Error::SeriesDiverges { .. })
        ));
    });
}

#[test]
fn criterion_5_gibbs_scenario() {
    criterion("criterion 5 (two-weight Gibbs scenario)", || {
        let w = WeightFamily::gibbs(1.0).unwrap();
        let w_hat = WeightFamily::gibbs(0.5).unwrap();
        let bounds =
            ratio_condition_check(&w, &w_hat, 2.0, 1.0, IndexWindow::half_line(100)).unwrap();
        assert_eq!((bounds.c1, bounds.c2), (1.0, 1.0));
        assert_eq!(bounds.scope, BoundScope::Analytic);
        let constant =
            theorem2_constant(1.0, 2.0, 1.0, bounds.c1, Domain::HalfLine, 1e-8).unwrap();
        assert!(
            (constant - 1.44107).abs() <= 1e-5,
            "constant {constant} not within 1e-5 of 1.44107"
        );
        let src = SpaceParams::new(1.0, 2.0, w).unwrap();
        let tgt = SpaceParams::new(0.0, 1.0, w_hat).unwrap();
        let sampler = VectorSampler::new(Domain::HalfLine, 24, 8);
        for trial in 0..1000u64 {
            let mut rng = trial_rng(1005, trial);
            let p = sampler.sample(&mut rng);
            let lhs = tgt.norm(&p).unwrap();
            let rhs = constant * src.norm(&p).unwrap();
            assert!(lhs <= rhs * (1.0 + 1e-10), "trial {trial}: {lhs} > {rhs}");
        }
    });
}

#[test]
fn criterion_6_certificate_soundness_and_minimality() {
    criterion("criterion 6 (certificate soundness and minimality)", || {
        // the pinned configuration
        let w = WeightFamily::constant(1.0, Domain::FullLine).unwrap();
        let cert = certify_theorem1(0.0, 1.0, 2.0, &w, 0.2, 1.0).unwrap();
        assert_eq!(cert.m_star(), 10);

        // independent linear-scan oracle, straight off the proof inequality
        let scan = |k: f64, k_prime: f64, s: f64, eps: f64, kappa: f64| -> u64 {
            let rhs = (eps / (2.0 * kappa)).powf(s);
            let mut m = 0u64;
            while (1.0 + (m as f64).powf(s)).powf(-(k_prime - k)) > rhs {
                m += 1;
            }
            m
        };
        assert_eq!(scan(0.0, 1.0, 2.0, 0.2, 1.0), 10);

        // soundness on 1000 kappa-sphere samples
        let src = SpaceParams::new(1.0, 2.0, w.clone()).unwrap();
        let tgt = SpaceParams::new(0.0, 2.0, w).unwrap();
        let sampler = VectorSampler::new(Domain::FullLine, 40, 10);
        for trial in 0..1000u64 {
            let mut rng = trial_rng(1006, trial);
            let p = sampler.sample(&mut rng);
            let p = p.scaled_real(1.0 / src.norm(&p).unwrap());
            let tail = tgt.norm(&(&p - &p.truncate(10))).unwrap();
            assert!(tail <= 0.1 + 1e-12, "trial {trial}: tail {tail} > 0.1");
        }

        // minimality: closed form against the scan on 200 random draws
        for trial in 0..200u64 {
            let mut rng = trial_rng(1066, trial);
            let k = rng.gen_range(-2.0..2.0);
            let k_prime = k + rng.gen_range(0.5..3.0);
            let s = rng.gen_range(1.0..3.0);
            let kappa = rng.gen_range(0.1..2.0);
            let epsilon = rng.gen_range(0.05..2.5) * 2.0 * kappa;
            let fast = tail_rank_theorem1(k, k_prime, s, epsilon, kappa).unwrap();
            let slow = scan(k, k_prime, s, epsilon, kappa);
            assert_eq!(fast, slow, "k={k} k'={k_prime} s={s} eps={epsilon} kappa={kappa}");
        }
    });
}

#[test]
fn criterion_7_isometry_and_pitt() {
    criterion("criterion 7 (isometry, conjugation, compactness witness)", || {
        // norm preservation across the criterion-1 grid
        for (w, _) in &weight_grid() {
            for &k in &K_GRID {
                for &s in &S_GRID {
                    let sp = SpaceParams::new(k, s, w.clone()).unwrap();
                    let ls = SpaceParams::unweighted(s, w.domain()).unwrap();
                    let sampler = VectorSampler::new(w.domain(), 24, 8);
                    for trial in 0..10u64 {
                        let mut rng = trial_rng(1007, trial);
                        let p = sampler.sample(&mut rng);
                        let a = ls.norm(&isometry_apply(&sp, &p).unwrap()).unwrap();
                        let b = sp.norm(&p).unwrap();
                        assert!((a - b).abs() <= 1e-12 * b, "k={k} s={s}: {a} vs {b}");
                    }
                }
            }
        }

        // conjugation round-trip on random sections
        let w = WeightFamily::polynomial(2.0, Domain::FullLine).unwrap();
        let window = IndexWindow::symmetric(6);
        for trial in 0..20u64 {
            let mut rng = trial_rng(1077, trial);
            let src = SpaceParams::new(1.5, 2.0, w.clone()).unwrap();
            let tgt = SpaceParams::new(1.5, 1.0, w.clone()).unwrap();
            let op = FiniteSectionOperator::from_fn(window, src, tgt, |_, _| {
                Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
            })
            .unwrap();
            let back = pitt_deconjugate(&pitt_conjugate(&op).unwrap(), 1.5, &w).unwrap();
            for (a, b) in op.entries().iter().zip(back.entries()) {
                assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
            }
        }

        // certified finite-rank approximation of the quadratic-decay diagonal
        let env = DecayEnvelope::power(2.0).unwrap();
        let src = SpaceParams::unweighted(2.0, Domain::FullLine).unwrap();
        let tgt = SpaceParams::unweighted(1.0, Domain::FullLine).unwrap();
        let entry = |m: i64, n: i64| {
            if m == n {
                let b = 1.0 + m.unsigned_abs() as f64;
                Complex64::new(1.0 / (b * b), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        let witness = compactness_witness(entry, &env, &src, &tgt, 0.01).unwrap();
        assert!(witness.n_eps <= 199);
        assert!(witness.certified_error <= 0.01);
        let mut true_tail = 0.0f64;
        for m in (witness.n_eps + 1)..=(witness.n_eps + 3_000_000) {
            let b = 1.0 + m as f64;
            true_tail += 2.0 / (b * b);
        }
        assert!(
            true_tail <= witness.certified_error,
            "true tail {true_tail} exceeds certified {}",
            witness.certified_error
        );
    });
}

#[test]
fn criterion_8_cli_determinism() {
    criterion("criterion 8 (byte-identical CLI reruns)", || {
        let run = |args: &[&str]| -> Vec<u8> {
            let out = Command::new(env!("CARGO_BIN_EXE_sobseq"))
                .args(args)
                .output()
                .expect("binary runs");
            assert!(
                out.status.success(),
                "stderr: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            out.stdout
        };
        let verify_args = [
            "verify", "--suite", "certificates", "--trials", "200", "--seed", "7",
        ];
        let a = run(&verify_args);
        let b = run(&verify_args);
        assert_eq!(a, b, "verify output differed between reruns");
        assert!(!a.is_empty());

        let gibbs_args = ["gibbs-demo", "--beta", "1", "--tol", "1e-8"];
        let a = run(&gibbs_args);
        let b = run(&gibbs_args);
        assert_eq!(a, b, "gibbs-demo output differed between reruns");
        assert!(!a.is_empty());
    });
}
