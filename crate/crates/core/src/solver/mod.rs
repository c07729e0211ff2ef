//! Numerical engines behind the cone oracles: alternating projections,
//! bilinear see-saw searches over product vectors, Schmidt-rank constrained
//! minimisation, decomposability splits, and greedy separable fits.
//!
//! All engines are deterministic for a fixed [`SolverConfig`]: multi-start
//! randomness is derived from the master seed through a counter-based mixing
//! function, so results do not depend on scheduling or thread count.

mod dykstra;
mod schmidt_min;
mod seesaw;
mod sepfit;
mod split;

pub use dykstra::{
    dykstra, HalfSpace, PairingSlab, Projection, PsdCone, PtPsdCone, TracePlane,
};
pub use schmidt_min::{min_schmidt_k, SchmidtSearchOutcome};
pub use seesaw::{product_mesh_min, seesaw_min_product, ProductSearchOutcome};
pub use sepfit::{separable_fit, FitOutcome, ProductTerm};
pub use split::{decomposability_split, verify_ppt_witness, verify_split, SplitResult};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Knobs shared by every engine.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Master seed; all random starts derive from it deterministically.
    pub seed: u64,
    /// Number of random multi-start attempts (≥ 1).
    pub starts: usize,
    /// Cap on outer iterations (projection cycles, greedy rounds).
    pub max_outer_iters: usize,
    /// Improvement threshold below which an iteration is considered
    /// converged (relative to the problem scale).
    pub inner_tol: f64,
    /// Feasibility tolerance for certificates and fixed points.
    pub feas_tol: f64,
    /// Optional wall-clock budget; engines return their best result so far
    /// when it runs out.  Leave `None` for fully reproducible output.
    pub budget_ms: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            starts: 200,
            max_outer_iters: 5000,
            inner_tol: 1e-12,
            feas_tol: 1e-8,
            budget_ms: None,
        }
    }
}

impl SolverConfig {
    pub(crate) fn assert_valid(&self) {
        assert!(self.starts >= 1, "config: starts must be ≥ 1");
        assert!(self.inner_tol > 0.0, "config: inner_tol must be > 0");
        assert!(self.feas_tol > 0.0, "config: feas_tol must be > 0");
    }

    /// Deadline implied by `budget_ms`, if any.
    pub(crate) fn deadline(&self) -> Option<std::time::Instant> {
        self.budget_ms
            .map(|ms| std::time::Instant::now() + std::time::Duration::from_millis(ms))
    }
}

/// Finalising step of the SplitMix64 generator; a high-quality 64-bit mixer.
pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for the `index`-th work item under a master seed.  Counter-based
/// mixing keeps the streams independent of execution order.
pub(crate) fn start_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(index)))
}

/// Random unit vector with independent standard complex Gaussian entries,
/// which makes the direction uniform on the sphere.
pub(crate) fn random_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(re, im)
            })
            .collect();
        let n = crate::linalg::vec_norm(&v);
        if n > 1e-6 {
            return v.iter().map(|z| z / n).collect();
        }
    }
}
