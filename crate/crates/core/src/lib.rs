#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
// Hypothesis checks use `!(a > b)` on purpose: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Weighted sequence spaces of Sobolev type.
//!
//! The central objects are the spaces `h^{k,s}_w` of complex sequences
//! `p = (p_m)` with norm
//!
//! ```text
//! ||p||_{k,s,w} = ( sum_m  w_m (1 + |m|^s)^k |p_m|^s )^{1/s}
//! ```
//!
//! where `w = (w_m)` is a strictly positive weight sequence, `s >= 1` is the
//! degree of summability and `k` is a generalized order of differentiability.
//! The crate makes these spaces computationally concrete:
//!
//! * [`spaces`] — exact norms of finitely supported sequences, the `s = 2`
//!   inner product, the standard basis `e_m` and its truncations;
//! * [`weights`] — the four weight families (constant, polynomial, Gibbs,
//!   tabulated), their infima, and the two-weight ratio condition;
//! * [`embeddings`] — embedding constants, tail ranks and compactness
//!   certificates extracted from the constructive proofs, plus certified
//!   summation of the weight series with an integral-test tail bound;
//! * [`operators`] — the diagonal isometry onto unweighted `l^s`, the
//!   conjugation that moves bounded operators between weighted spaces onto
//!   the classical `l^s -> l^t` setting, sound operator-norm brackets, and
//!   certified finite-rank approximation under declared row decay.
//!
//! Everything is pure computation over finite data: no IO, no global state,
//! `alloc` only. File formats and the command line live in the companion
//! `sobseq` crate.
//!
//! ```
//! use sobseq_core::{basis_vector, certify_theorem1, Domain, SpaceParams, WeightFamily};
//!
//! let w = WeightFamily::constant(1.0, Domain::FullLine)?;
//! let space = SpaceParams::new(1.0, 2.0, w)?;
//! let norm = space.norm(&basis_vector(5))?;
//! assert!((norm - 26f64.sqrt()).abs() < 1e-12);
//!
//! // tail rank certifying the order-drop embedding at (eps, kappa) = (0.2, 1)
//! let cert = certify_theorem1(0.0, 1.0, 2.0, space.weight(), 0.2, 1.0)?;
//! assert_eq!((cert.m_star(), cert.subspace_dim()), (10, 21));
//! # Ok::<(), sobseq_core::Error>(())
//! ```

extern crate alloc;

pub mod embeddings;
pub mod error;
pub mod operators;
pub mod sampling;
pub mod spaces;
pub mod sum;
pub mod weights;

mod window;

pub use error::{Error, Result};
pub use window::IndexWindow;

pub use weights::{ratio_condition_check, weight_ratio, BoundScope, Domain, RatioBounds, WeightFamily, WeightKind};

pub use spaces::{basis_vector, truncate, SeqVector, SpaceParams};

pub use embeddings::{
    certify_theorem1, certify_theorem2, classify_order_pair, sharpness_probe, summability_constant,
    tail_rank_theorem1, tail_rank_theorem2, theorem2_constant, theorem2_second_constant,
    weight_series_sum, weight_series_sum_detailed, CompactnessCertificate, EmbeddingRelation,
    EmbeddingReport, SeriesSum, Theorem,
};

pub use operators::{
    compactness_witness, embedding_as_diagonal, isometry_apply, isometry_invert,
    operator_norm_lower, operator_norm_upper, pitt_conjugate, pitt_deconjugate,
    CompactnessWitness, DecayEnvelope, DecayForm, FiniteSectionOperator,
};

pub use num_complex::Complex64;
