//! Dykstra's alternating projection scheme for finding a point in the
//! intersection of closed convex sets of Hermitian matrices.
//!
//! Unlike plain cyclic projection, Dykstra's increments make the iteration
//! converge to the *nearest* point of the intersection, and — more
//! importantly here — give a clean feasibility residual for detecting empty
//! intersections.

use crate::error::Error;
use crate::linalg::{
    pairing, partial_transpose_matrix, psd_project, ComplexMatrix, HermitianMatrix, Slot,
};

use super::SolverConfig;

/// Nearest-point projection onto a closed convex set of Hermitian matrices.
pub trait Projection {
    fn project(&self, x: &HermitianMatrix) -> HermitianMatrix;

    /// Frobenius distance from `x` to the set.
    fn distance(&self, x: &HermitianMatrix) -> f64 {
        self.project(x).matrix().sub(x.matrix()).frobenius_norm()
    }
}

/// The positive semidefinite cone.
pub struct PsdCone;

impl Projection for PsdCone {
    fn project(&self, x: &HermitianMatrix) -> HermitianMatrix {
        psd_project(x)
    }
}

/// `{X : PT(X) ⪰ 0}` on a bipartite space.  Since the partial transpose is a
/// Frobenius isometry, the projection is transpose → eigenclip → transpose.
pub struct PtPsdCone {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl Projection for PtPsdCone {
    fn project(&self, x: &HermitianMatrix) -> HermitianMatrix {
        let pt = HermitianMatrix::from_symmetrized(partial_transpose_matrix(
            x.matrix(),
            self.dim_a,
            self.dim_b,
            Slot::B,
        ));
        let clipped = psd_project(&pt);
        HermitianMatrix::from_symmetrized(partial_transpose_matrix(
            clipped.matrix(),
            self.dim_a,
            self.dim_b,
            Slot::B,
        ))
    }
}

/// The affine hyperplane `{X : Tr X = target}`.
pub struct TracePlane {
    pub target: f64,
}

impl Projection for TracePlane {
    fn project(&self, x: &HermitianMatrix) -> HermitianMatrix {
        let n = x.dim();
        let shift = (x.trace() - self.target) / n as f64;
        x.sub(&HermitianMatrix::identity(n).scale(shift))
    }
}

/// The half-space `{X : ⟨N, X⟩ ≤ bound}` under the Hilbert–Schmidt pairing.
pub struct HalfSpace {
    pub normal: HermitianMatrix,
    pub bound: f64,
}

impl Projection for HalfSpace {
    fn project(&self, x: &HermitianMatrix) -> HermitianMatrix {
        let value = pairing(&self.normal, x).expect("half-space: size mismatch");
        let excess = value - self.bound;
        if excess <= 0.0 {
            return x.clone();
        }
        let nn = self.normal.frobenius_norm().powi(2);
        x.sub(&self.normal.scale(excess / nn))
    }
}

/// The convex set `{X : Tr X = trace_target, ⟨N, X⟩ ≤ bound}` — a slab used
/// for witness searches, where `N` is the operator being tested and the bound
/// keeps the pairing strictly negative.
pub struct PairingSlab {
    pub normal: HermitianMatrix,
    pub bound: f64,
    pub trace_target: f64,
}

impl Projection for PairingSlab {
    fn project(&self, x: &HermitianMatrix) -> HermitianMatrix {
        let n = x.dim() as f64;
        // Project onto the trace hyperplane first.
        let on_plane = TracePlane {
            target: self.trace_target,
        }
        .project(x);
        if pairing(&self.normal, &on_plane).expect("slab: size mismatch") <= self.bound {
            return on_plane;
        }
        // Otherwise the nearest point has both constraints active: solve the
        // 2×2 Gram system for X − a·I − b·N with normals I and N.
        let tr_n = self.normal.trace();
        let nn = self.normal.frobenius_norm().powi(2);
        let det = n * nn - tr_n * tr_n;
        let r1 = x.trace() - self.trace_target;
        let r2 = pairing(&self.normal, x).expect("slab: size mismatch") - self.bound;
        if det.abs() < 1e-14 * f64::max(1.0, n * nn) {
            // N is numerically a multiple of the identity; fall back to the
            // trace projection (the slab is then either trivial or empty).
            return on_plane;
        }
        let a = (nn * r1 - tr_n * r2) / det;
        let b = (n * r2 - tr_n * r1) / det;
        x.sub(&HermitianMatrix::identity(x.dim()).scale(a))
            .sub(&self.normal.scale(b))
    }
}

/// Runs Dykstra's algorithm from `start` over the given sets.
///
/// Returns a point whose distance to every set is at most `feas_tol` (in
/// Frobenius norm, measured by one extra projection).  Fails with
/// [`Error::NoConvergence`] — carrying the best residual seen — after
/// `max_outer_iters` cycles, or earlier when the residual plateaus, which is
/// the signature of an empty intersection.
pub fn dykstra(
    sets: &[&dyn Projection],
    start: &HermitianMatrix,
    config: &SolverConfig,
) -> Result<HermitianMatrix, Error> {
    config.assert_valid();
    assert!(!sets.is_empty(), "dykstra: need at least one set");
    let n = start.dim();
    let mut x = start.clone();
    let mut increments = vec![ComplexMatrix::zeros(n, n); sets.len()];

    let mut best_residual = f64::INFINITY;
    // The residual is sampled every `PLATEAU_CYCLES` cycles; when a sample
    // fails to improve on the previous one the intersection is declared
    // (numerically) empty.  Widely spaced samples are immune to the
    // transient dips and humps the per-cycle residual goes through on
    // slowly converging feasible problems.
    const PLATEAU_CYCLES: usize = 200;
    let mut previous_sample = f64::INFINITY;

    for cycle in 1..=config.max_outer_iters {
        for (set, inc) in sets.iter().zip(increments.iter_mut()) {
            let shifted = HermitianMatrix::from_symmetrized(x.matrix().add(inc));
            let projected = set.project(&shifted);
            *inc = shifted.matrix().sub(projected.matrix());
            x = projected;
        }
        let residual = sets
            .iter()
            .map(|s| s.distance(&x))
            .fold(0.0f64, f64::max);
        best_residual = best_residual.min(residual);
        if residual <= config.feas_tol {
            return Ok(x);
        }
        if cycle % PLATEAU_CYCLES == 0 {
            let required = f64::max(config.inner_tol, 1e-3 * previous_sample);
            if previous_sample.is_finite() && residual > previous_sample - required {
                return Err(Error::NoConvergence {
                    iterations: cycle,
                    residual: best_residual,
                });
            }
            previous_sample = residual;
        }
    }
    Err(Error::NoConvergence {
        iterations: config.max_outer_iters,
        residual: best_residual,
    })
}
