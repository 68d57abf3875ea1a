//! Deterministic seeded generation of finite-support probe vectors.
//!
//! Every randomized operation in the crate takes an explicit seed and derives
//! one independent stream per trial, so batches replay exactly and trials may
//! run concurrently without coordination.

use num_complex::Complex64;
use rand::SeedableRng;

use crate::spaces::SeqVector;
use crate::weights::Domain;

pub use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

/// The RNG for trial number `trial` of a batch seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws sparse complex vectors supported inside a fixed window of the
/// domain, with uniformly random entries in the unit box.
#[derive(Debug, Clone, Copy)]
pub struct VectorSampler {
    domain: Domain,
    radius: u32,
    max_support: usize,
}

impl VectorSampler {
    pub fn new(domain: Domain, radius: u32, max_support: usize) -> Self {
        Self {
            domain,
            radius,
            max_support: max_support.max(1),
        }
    }

    /// A nonzero vector with between 1 and `max_support` entries.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> SeqVector {
        loop {
            let mut v = SeqVector::zero();
            let n = rng.gen_range(1..=self.max_support);
            for _ in 0..n {
                let m = match self.domain {
                    Domain::FullLine => {
                        rng.gen_range(-i64::from(self.radius)..=i64::from(self.radius))
                    }
                    Domain::HalfLine => rng.gen_range(0..=i64::from(self.radius)),
                };
                let z = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
                v.set(m, z);
            }
            if !v.is_zero() {
                return v;
            }
        }
    }
}
