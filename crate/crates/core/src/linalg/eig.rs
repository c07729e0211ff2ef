//! Self-contained eigensolver for Hermitian matrices.
//!
//! Cyclic Jacobi iteration adapted to complex Hermitian input: each pivot
//! `(p, q)` is annihilated by a phase rotation that makes the off-diagonal
//! entry real, followed by a real Jacobi rotation.  Deterministic sweep order
//! and a deterministic eigenvector phase convention make repeated runs
//! bit-identical.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianMatrix};

/// Maximum number of full sweeps.  Jacobi converges quadratically once the
/// off-diagonal mass is small; well-conditioned inputs need fewer than ten.
const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal mass at which the iteration stops.
const OFF_DIAGONAL_STOP: f64 = 1e-14;

/// Eigenvalues (non-increasing) and matching orthonormal eigenvectors of a
/// Hermitian matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Sorted `λ_0 ≥ λ_1 ≥ ...`, all real.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` is a unit eigenvector for `eigenvalues[i]`; the
    /// entry of largest modulus is made real and positive.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("empty decomposition")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.first().expect("empty decomposition")
    }

    /// Unit eigenvector attached to the smallest eigenvalue.
    pub fn min_eigenvector(&self) -> &[Complex64] {
        self.eigenvectors.last().expect("empty decomposition")
    }

    /// Rebuilds `Σ_i λ_i v_i v_i†`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.dim();
        let mut acc = ComplexMatrix::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            accumulate_rank_one(&mut acc, *lambda, v);
        }
        HermitianMatrix::from_symmetrized(acc)
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The returned eigenvalues are sorted non-increasingly and the eigenvectors
/// form an orthonormal basis; `Σ λ_i v_i v_i†` reproduces the input to within
/// `~1e-13 · ‖H‖_F`.
pub fn herm_eig(h: &HermitianMatrix) -> SpectralDecomposition {
    let n = h.dim();
    assert!(n >= 1, "eigendecomposition of an empty matrix");
    let mut a = h.matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    let scale = f64::max(1.0, a.frobenius_norm());
    let stop = OFF_DIAGONAL_STOP * scale;

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    // Collect, sort by descending eigenvalue (stable), fix phases.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &col in &order {
        eigenvalues.push(a[(col, col)].re);
        let mut vec: Vec<Complex64> = (0..n).map(|r| v[(r, col)]).collect();
        fix_phase(&mut vec);
        eigenvectors.push(vec);
    }
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Projects onto the positive semidefinite cone by clipping negative
/// eigenvalues to zero (the Frobenius-nearest PSD matrix).
pub fn psd_project(h: &HermitianMatrix) -> HermitianMatrix {
    psd_split(h).0
}

/// Splits `H = P − N` with both `P` and `N` positive semidefinite and
/// `P N = 0` (supported on the positive and negative eigenspaces).
pub fn psd_split(h: &HermitianMatrix) -> (HermitianMatrix, HermitianMatrix) {
    let n = h.dim();
    let eig = herm_eig(h);
    let mut pos = ComplexMatrix::zeros(n, n);
    let mut neg = ComplexMatrix::zeros(n, n);
    for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *lambda > 0.0 {
            accumulate_rank_one(&mut pos, *lambda, v);
        } else if *lambda < 0.0 {
            accumulate_rank_one(&mut neg, -*lambda, v);
        }
    }
    (
        HermitianMatrix::from_symmetrized(pos),
        HermitianMatrix::from_symmetrized(neg),
    )
}

/// `acc += w · v v†`.
fn accumulate_rank_one(acc: &mut ComplexMatrix, w: f64, v: &[Complex64]) {
    let n = v.len();
    for i in 0..n {
        let wi = w * v[i];
        for j in 0..n {
            acc[(i, j)] += wi * v[j].conj();
        }
    }
}

/// `sqrt(2 Σ_{p<q} |a_pq|²)` — the Frobenius norm of the off-diagonal part.
fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            acc += a[(p, q)].norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

/// Annihilates `a[p, q]` by the unitary `U` that is the identity outside the
/// `{p, q}` plane and there equals a phase times a real rotation:
///
/// ```text
/// U[p,p] =  c         U[p,q] = s
/// U[q,p] = -s e^{-iφ} U[q,q] = c e^{-iφ}
/// ```
///
/// with `φ = arg a_pq`.  Updates `a ← U† a U` and accumulates `v ← v U`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let m = apq.norm();
    if m <= 1e-300 {
        return;
    }
    let phase = apq / m; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    // Real Jacobi rotation on the phase-reduced 2x2 block [[app, m], [m, aqq]]:
    // tan θ is the root of t² + 2τt − 1 = 0 of smallest modulus.
    let tau = (aqq - app) / (2.0 * m);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let phase_conj = phase.conj();

    // Column update a ← a·U.
    for r in 0..n {
        let x = a[(r, p)];
        let y = a[(r, q)];
        a[(r, p)] = c * x - s * phase_conj * y;
        a[(r, q)] = s * x + c * phase_conj * y;
    }
    // Row update a ← U†·a.
    for r in 0..n {
        let x = a[(p, r)];
        let y = a[(q, r)];
        a[(p, r)] = c * x - s * phase * y;
        a[(q, r)] = s * x + c * phase * y;
    }
    // The pivot is zero by construction; clamp rounding noise.
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    // Eigenvector accumulation v ← v·U.
    for r in 0..n {
        let x = v[(r, p)];
        let y = v[(r, q)];
        v[(r, p)] = c * x - s * phase_conj * y;
        v[(r, q)] = s * x + c * phase_conj * y;
    }
}

/// Multiplies the vector by a unit phase so that its entry of largest
/// modulus (first such index on ties) becomes real and non-negative.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_mod = 0.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mod {
            best_mod = m;
            best = i;
        }
    }
    if best_mod == 0.0 {
        return;
    }
    let phase = v[best].conj() / best_mod;
    for z in v.iter_mut() {
        *z *= phase;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::vec_inner;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> HermitianMatrix {
        let m = ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        });
        HermitianMatrix::from_symmetrized(m)
    }

    #[test]
    fn two_by_two_real_symmetric() {
        let h = HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(2.0, 0.0), c(1.0, 0.0)],
                vec![c(1.0, 0.0), c(2.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let eig = herm_eig(&h);
        assert!((eig.eigenvalues[0] - 3.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        let s = 1.0 / 2.0_f64.sqrt();
        for (v, expect) in eig.eigenvectors.iter().zip([[s, s], [s, -s]]) {
            assert!((v[0] - c(expect[0], 0.0)).norm() < 1e-14);
            assert!((v[1] - c(expect[1], 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn two_by_two_complex() {
        // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
        let h = HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(1.0, 0.0), c(0.0, 1.0)],
                vec![c(0.0, -1.0), c(1.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let eig = herm_eig(&h);
        assert!((eig.eigenvalues[0] - 2.0).abs() < 1e-14);
        assert!(eig.eigenvalues[1].abs() < 1e-14);
        // H v = λ v for both pairs.
        for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            let hv = h.matrix().matvec(v);
            for (a, b) in hv.iter().zip(v) {
                assert!((a - lambda * b).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn diagonal_input_is_sorted_and_vectors_are_basis_vectors() {
        let h = HermitianMatrix::new(ComplexMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                c([0.5, -1.0, 3.0, 2.0][i], 0.0)
            } else {
                Complex64::ZERO
            }
        }))
        .unwrap();
        let eig = herm_eig(&h);
        assert_eq!(eig.eigenvalues, vec![3.0, 2.0, 0.5, -1.0]);
        for (v, expect_index) in eig.eigenvectors.iter().zip([2usize, 3, 0, 1]) {
            for (i, z) in v.iter().enumerate() {
                let expect = if i == expect_index { 1.0 } else { 0.0 };
                assert!((z - c(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn random_matrices_reconstruct_and_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rep in 0..40 {
            let n = 1 + rep % 12;
            let h = random_hermitian(n, &mut rng);
            let eig = herm_eig(&h);
            // Sorted non-increasing.
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] >= w[1]);
            }
            // Orthonormal vectors.
            for i in 0..n {
                for j in 0..n {
                    let ip = vec_inner(&eig.eigenvectors[i], &eig.eigenvectors[j]);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (ip - c(expect, 0.0)).norm() < 1e-12,
                        "inner product ({i},{j}) = {ip}"
                    );
                }
            }
            // Reconstruction.
            let rebuilt = eig.reconstruct();
            let err = rebuilt.matrix().sub(h.matrix()).frobenius_norm();
            let scale = f64::max(1.0, h.frobenius_norm());
            assert!(err <= 1e-12 * scale, "reconstruction error {err} at n={n}");
        }
    }

    #[test]
    fn eigenvalues_match_trace_and_square_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(9, &mut rng);
        let eig = herm_eig(&h);
        let tr: f64 = eig.eigenvalues.iter().sum();
        let tr2: f64 = eig.eigenvalues.iter().map(|l| l * l).sum();
        assert!((tr - h.trace()).abs() < 1e-12);
        let fro2 = h.frobenius_norm().powi(2);
        assert!((tr2 - fro2).abs() < 1e-11);
    }

    #[test]
    fn psd_project_clips_negative_eigenvalues() {
        let h = HermitianMatrix::new(ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(if i == 0 { 2.0 } else { -3.0 }, 0.0)
            } else {
                Complex64::ZERO
            }
        }))
        .unwrap();
        let p = psd_project(&h);
        assert!((p.get(0, 0).re - 2.0).abs() < 1e-14);
        assert!(p.get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn psd_project_is_idempotent_and_split_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let h = random_hermitian(6, &mut rng);
            let (pos, neg) = psd_split(&h);
            // Both parts PSD.
            assert!(herm_eig(&pos).min_eigenvalue() >= -1e-12);
            assert!(herm_eig(&neg).min_eigenvalue() >= -1e-12);
            // Difference reproduces the input.
            let diff = pos.sub(&neg).matrix().sub(h.matrix()).frobenius_norm();
            assert!(diff < 1e-12 * f64::max(1.0, h.frobenius_norm()));
            // Projection is idempotent.
            let once = psd_project(&h);
            let twice = psd_project(&once);
            assert!(twice.matrix().sub(once.matrix()).frobenius_norm() < 1e-11);
        }
    }
}
