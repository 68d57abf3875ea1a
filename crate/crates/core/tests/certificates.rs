//! Certificate soundness and minimality against independent scan oracles.

use sobseq_core::sampling::{trial_rng, Rng, VectorSampler};
use sobseq_core::{
    basis_vector, certify_theorem1, certify_theorem2, tail_rank_theorem1, tail_rank_theorem2,
    Domain, SpaceParams, WeightFamily,
};

/// Linear-scan oracle for the order-drop tail rank: the first `m` with
/// `(1 + m^s)^{-(k' - k)} <= (eps / 2 kappa)^s`, straight off the proof.
fn scan_tail_rank(k: f64, k_prime: f64, s: f64, epsilon: f64, kappa: f64) -> u64 {
    let rhs = (epsilon / (2.0 * kappa)).powf(s);
    let mut m = 0u64;
    loop {
        let lhs = (1.0 + (m as f64).powf(s)).powf(-(k_prime - k));
        if lhs <= rhs {
            return m;
        }
        m += 1;
        assert!(m < 10_000_000, "oracle scan ran away");
    }
}

#[test]
fn tail_rank_matches_scan_oracle_on_spec_points() {
    assert_eq!(scan_tail_rank(0.0, 1.0, 2.0, 0.2, 1.0), 10);
    assert_eq!(tail_rank_theorem1(0.0, 1.0, 2.0, 0.2, 1.0).unwrap(), 10);
    assert_eq!(scan_tail_rank(0.0, 2.0, 1.0, 0.02, 1.0), 9);
    assert_eq!(tail_rank_theorem1(0.0, 2.0, 1.0, 0.02, 1.0).unwrap(), 9);
}

#[test]
fn tail_rank_matches_scan_oracle_on_random_draws() {
    for trial in 0..200u64 {
        let mut rng = trial_rng(2024, trial);
        let k = rng.gen_range(-2.0..2.0);
        let delta = rng.gen_range(0.5..3.0);
        let k_prime = k + delta;
        let s = rng.gen_range(1.0..3.0);
        let kappa = rng.gen_range(0.1..2.0);
        let epsilon = rng.gen_range(0.05..2.5) * 2.0 * kappa;
        let fast = tail_rank_theorem1(k, k_prime, s, epsilon, kappa).unwrap();
        let slow = scan_tail_rank(k, k_prime, s, epsilon, kappa);
        assert_eq!(
            fast, slow,
            "mismatch at k={k} k'={k_prime} s={s} eps={epsilon} kappa={kappa}"
        );
    }
}

#[test]
fn theorem1_certificate_is_sound_on_sphere_samples() {
    // (k, k', s) = (0, 1, 2), unit weight, kappa = 1, eps = 0.2 => m* = 10
    let w = WeightFamily::constant(1.0, Domain::FullLine).unwrap();
    let cert = certify_theorem1(0.0, 1.0, 2.0, &w, 0.2, 1.0).unwrap();
    assert_eq!(cert.m_star(), 10);
    let src = SpaceParams::new(1.0, 2.0, w.clone()).unwrap();
    let tgt = SpaceParams::new(0.0, 2.0, w).unwrap();
    let sampler = VectorSampler::new(Domain::FullLine, 40, 10);
    for trial in 0..1000u64 {
        let mut rng = trial_rng(5, trial);
        let p = sampler.sample(&mut rng);
        let scale = cert.kappa() / src.norm(&p).unwrap();
        let p = p.scaled_real(scale);
        let tail = tgt.norm(&(&p - &p.truncate(cert.m_star()))).unwrap();
        assert!(
            tail <= cert.epsilon() / 2.0 + 1e-12,
            "tail {tail} exceeded eps/2 at trial {trial}"
        );
    }
}

#[test]
fn theorem1_certificate_single_term_bound() {
    // p = kappa e_m / ||e_m||_{k',s,w} with |m| >= m*: the tail norm equals
    // kappa (1 + |m|^s)^{(k - k')/s} and sits below eps/2
    let w = WeightFamily::constant(1.0, Domain::FullLine).unwrap();
    let (k, k_prime, s, eps, kappa) = (0.0, 1.0, 2.0, 0.2, 1.0);
    let cert = certify_theorem1(k, k_prime, s, &w, eps, kappa).unwrap();
    let src = SpaceParams::new(k_prime, s, w.clone()).unwrap();
    let tgt = SpaceParams::new(k, s, w).unwrap();
    for m in [10i64, 12, -17, 40] {
        assert!(m.unsigned_abs() >= cert.m_star());
        let e = basis_vector(m);
        let p = e.scaled_real(kappa / src.norm(&e).unwrap());
        let tail = tgt.norm(&(&p - &p.truncate(cert.m_star()))).unwrap();
        let predicted = kappa * (1.0 + (m.abs() as f64).powf(s)).powf((k - k_prime) / s);
        assert!((tail - predicted).abs() <= 1e-12 * predicted);
        assert!(tail <= eps / 2.0 + 1e-12);
    }
    // support inside the window leaves no tail at all
    let tgt2 = SpaceParams::new(
        k,
        s,
        WeightFamily::constant(1.0, Domain::FullLine).unwrap(),
    )
    .unwrap();
    let p = basis_vector(3);
    assert_eq!(tgt2.norm(&(&p - &p.truncate(cert.m_star()))).unwrap(), 0.0);
}

/// Independent oracle for the two-weight tail rank: same certified-tail
/// definition (shell sums up to the tolerance horizon plus the integral
/// bound), evaluated by materializing suffix sums instead of walking a
/// compensated prefix.
#[allow(clippy::too_many_arguments)]
fn scan_tail_rank_t2(
    k: f64,
    s: f64,
    t: f64,
    c1: f64,
    epsilon: f64,
    kappa: f64,
    domain: Domain,
    tol: f64,
) -> u64 {
    let r = s * t / (s - t);
    let kr = k * r;
    let threshold = (epsilon * c1.powf(1.0 / t) / (2.0 * kappa)).powf(r);
    let factor = match domain {
        Domain::FullLine => 2.0,
        Domain::HalfLine => 1.0,
    };
    let slack = tol.min(threshold / 2.0);
    let m_min = ((kr - 1.0).powf(-1.0 / (kr - 1.0))).ceil().max(2.0);
    let m_tol = (factor / (slack * (kr - 1.0))).powf(1.0 / (kr - 1.0)).ceil();
    let horizon = m_min.max(m_tol) as u64;
    let bound = factor * (horizon as f64).powf(1.0 - kr) / (kr - 1.0);
    // suffix[m*] = certified tail past m*, built back to front
    let len = horizon as usize + 2;
    let mut suffix = vec![0.0f64; len];
    suffix[len - 1] = bound;
    for m_star in (0..len - 1).rev() {
        let shell = if m_star == 0 {
            1.0
        } else {
            factor * (1.0 + (m_star as f64).powf(s)).powf(-kr / s)
        };
        suffix[m_star] = suffix[m_star + 1] + shell;
    }
    for (m_star, tail) in suffix.iter().enumerate() {
        if *tail <= threshold {
            return m_star as u64;
        }
    }
    horizon + 2
}

#[test]
fn theorem2_tail_rank_matches_oracle() {
    // threshold = 0.01 with c1 = kappa = 1, r = 2 => eps = 0.2
    let lib = tail_rank_theorem2(1.0, 2.0, 1.0, 1.0, 0.2, 1.0, Domain::FullLine, 1e-4).unwrap();
    let oracle = scan_tail_rank_t2(1.0, 2.0, 1.0, 1.0, 0.2, 1.0, Domain::FullLine, 1e-4);
    assert_eq!(lib, oracle);
    // a spread of parameter draws
    for trial in 0..60u64 {
        let mut rng = trial_rng(99, trial);
        let s = rng.gen_range(1.6..3.0);
        let t = rng.gen_range(1.0..s - 0.5);
        let threshold_k = (s - t) / (s * t);
        let k = threshold_k + rng.gen_range(0.3..1.5);
        let c1 = rng.gen_range(0.5..2.0);
        let kappa = rng.gen_range(0.2..2.0);
        let epsilon = rng.gen_range(0.05..1.0);
        let domain = if trial % 2 == 0 {
            Domain::FullLine
        } else {
            Domain::HalfLine
        };
        let lib = tail_rank_theorem2(k, s, t, c1, epsilon, kappa, domain, 1e-3);
        let lib = match lib {
            Ok(v) => v,
            Err(_) => continue, // budget-limited draws are skipped
        };
        let oracle = scan_tail_rank_t2(k, s, t, c1, epsilon, kappa, domain, 1e-3);
        assert_eq!(
            lib, oracle,
            "mismatch at k={k} s={s} t={t} c1={c1} eps={epsilon} kappa={kappa} {domain:?}"
        );
    }
}

#[test]
fn theorem2_certificate_is_sound_for_gibbs_pair() {
    // w = Gibbs(1), w_hat = Gibbs(1/2), s = 2, t = 1, k = 1, c1 = 1
    let w = WeightFamily::gibbs(1.0).unwrap();
    let w_hat = WeightFamily::gibbs(0.5).unwrap();
    let (epsilon, kappa) = (0.5, 1.0);
    let cert =
        certify_theorem2(1.0, 2.0, 1.0, 1.0, epsilon, kappa, Domain::HalfLine, 1e-6).unwrap();
    let src = SpaceParams::new(1.0, 2.0, w).unwrap();
    let tgt = SpaceParams::new(0.0, 1.0, w_hat).unwrap();
    let sampler = VectorSampler::new(Domain::HalfLine, 30, 10);
    for trial in 0..1000u64 {
        let mut rng = trial_rng(13, trial);
        let p = sampler.sample(&mut rng);
        let p = p.scaled_real(kappa / src.norm(&p).unwrap());
        let tail = tgt.norm(&(&p - &p.truncate(cert.m_star()))).unwrap();
        assert!(
            tail <= epsilon / 2.0 + 1e-12,
            "two-weight tail {tail} exceeded eps/2 at trial {trial} (m* = {})",
            cert.m_star()
        );
    }
}

#[test]
fn doubling_kappa_never_shrinks_the_rank() {
    let mut last = 0u64;
    for kappa in [0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let m = tail_rank_theorem1(0.0, 1.0, 2.0, 0.2, kappa).unwrap();
        assert!(m >= last);
        last = m;
    }
}
