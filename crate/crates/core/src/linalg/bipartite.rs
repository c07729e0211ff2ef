//! Operators and vectors on a tensor product H_a ⊗ H_b: Kronecker products,
//! partial transpose, partial trace, and Schmidt decompositions.
//!
//! Index convention: the product basis vector `e_i ⊗ e_k` sits at flat index
//! `i·dim_b + k`, so a bipartite matrix entry is written `X[(i,k),(j,l)]`.

use num_complex::Complex64;

use super::eig::herm_eig;
use super::matrix::{vec_inner, vec_norm, ComplexMatrix, HermitianMatrix};
use crate::error::{Error, Result};

/// Which tensor factor an operation acts on: `A` is the first (left) factor,
/// `B` the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    A,
    B,
}

/// Kronecker product `a ⊗ b` of two matrices of arbitrary shape.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Tensor product `f ⊗ g` of two vectors.
pub fn tensor_vec(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(f.len() * g.len());
    for fi in f {
        for gk in g {
            out.push(fi * gk);
        }
    }
    out
}

/// The maximally entangled unit vector `(1/√n) Σ_i e_i ⊗ e_i` on H_n ⊗ H_n.
pub fn max_entangled_vector(n: usize) -> Vec<Complex64> {
    let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let mut v = vec![Complex64::ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = amp;
    }
    v
}

/// Partial transpose of a raw `(dim_a·dim_b)²` matrix on the given factor.
pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    slot: Slot,
) -> ComplexMatrix {
    let d = dim_a * dim_b;
    assert_eq!((m.rows(), m.cols()), (d, d), "partial transpose: bad shape");
    ComplexMatrix::from_fn(d, d, |row, col| {
        let (i, k) = (row / dim_b, row % dim_b);
        let (j, l) = (col / dim_b, col % dim_b);
        match slot {
            // (i,k),(j,l) ← (j,k),(i,l)
            Slot::A => m[(j * dim_b + k, i * dim_b + l)],
            // (i,k),(j,l) ← (i,l),(j,k)
            Slot::B => m[(i * dim_b + l, j * dim_b + k)],
        }
    })
}

/// Partial trace of a raw `(dim_a·dim_b)²` matrix; `slot` names the factor
/// that is traced *out*.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    slot: Slot,
) -> ComplexMatrix {
    let d = dim_a * dim_b;
    assert_eq!((m.rows(), m.cols()), (d, d), "partial trace: bad shape");
    match slot {
        Slot::B => ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
            (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
        }),
        Slot::A => ComplexMatrix::from_fn(dim_b, dim_b, |k, l| {
            (0..dim_a).map(|i| m[(i * dim_b + k, i * dim_b + l)]).sum()
        }),
    }
}

/// Hermitian operator on H_a ⊗ H_b with the factor dimensions attached.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteOperator {
    dim_a: usize,
    dim_b: usize,
    op: HermitianMatrix,
}

impl BipartiteOperator {
    /// Ingests a raw matrix; fails unless it is `(dim_a·dim_b)²` and
    /// Hermitian within the ingestion tolerance.
    pub fn new(dim_a: usize, dim_b: usize, m: ComplexMatrix) -> Result<Self> {
        let d = dim_a * dim_b;
        if (m.rows(), m.cols()) != (d, d) {
            return Err(Error::SizeMismatch {
                context: "bipartite operator",
                expected_rows: d,
                expected_cols: d,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(Self {
            dim_a,
            dim_b,
            op: HermitianMatrix::new(m)?,
        })
    }

    /// Wraps an already-Hermitian matrix of the right size.
    pub fn from_hermitian(dim_a: usize, dim_b: usize, op: HermitianMatrix) -> Result<Self> {
        let d = dim_a * dim_b;
        if op.dim() != d {
            return Err(Error::SizeMismatch {
                context: "bipartite operator",
                expected_rows: d,
                expected_cols: d,
                rows: op.dim(),
                cols: op.dim(),
            });
        }
        Ok(Self { dim_a, dim_b, op })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension `dim_a · dim_b`.
    pub fn total_dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.op
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    /// Entry `X[(i,k),(j,l)]` in the product basis.
    #[inline]
    pub fn entry(&self, i: usize, k: usize, j: usize, l: usize) -> Complex64 {
        self.op.get(i * self.dim_b + k, j * self.dim_b + l)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.op.frobenius_norm()
    }

    /// Partial transpose on the given factor; Hermiticity is preserved
    /// exactly.
    pub fn partial_transpose(&self, slot: Slot) -> Self {
        let m = partial_transpose_matrix(self.op.matrix(), self.dim_a, self.dim_b, slot);
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            op: HermitianMatrix::from_symmetrized(m),
        }
    }

    /// Partial trace; `slot` names the factor that is traced out.
    pub fn partial_trace(&self, slot: Slot) -> HermitianMatrix {
        let m = partial_trace_matrix(self.op.matrix(), self.dim_a, self.dim_b, slot);
        HermitianMatrix::from_symmetrized(m)
    }

    /// Product-vector expectation `⟨f ⊗ g| X |f ⊗ g⟩`, real by Hermiticity.
    // Indices address both the factors and the four-index entry accessor, so
    // iterator forms would still need them.
    #[allow(clippy::needless_range_loop)]
    pub fn product_expectation(&self, f: &[Complex64], g: &[Complex64]) -> f64 {
        assert_eq!(f.len(), self.dim_a);
        assert_eq!(g.len(), self.dim_b);
        let mut acc = Complex64::ZERO;
        for i in 0..self.dim_a {
            for k in 0..self.dim_b {
                let left = (f[i] * g[k]).conj();
                for j in 0..self.dim_a {
                    for l in 0..self.dim_b {
                        acc += left * self.entry(i, k, j, l) * f[j] * g[l];
                    }
                }
            }
        }
        acc.re
    }
}

/// Schmidt decomposition `ψ = Σ_l σ_l · left_l ⊗ right_l` with non-increasing
/// coefficients `σ_l ≥ 0` and orthonormal factor systems on both sides.
/// Always carries `min(dim_a, dim_b)` terms; trailing coefficients may be
/// zero, in which case the attached vectors merely complete the frame.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    pub left: Vec<Vec<Complex64>>,
    pub right: Vec<Vec<Complex64>>,
}

impl SchmidtDecomposition {
    /// Number of coefficients strictly above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|s| **s > tol).count()
    }

    /// Rebuilds `Σ_l σ_l left_l ⊗ right_l`.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let da = self.left.first().map_or(0, Vec::len);
        let db = self.right.first().map_or(0, Vec::len);
        let mut out = vec![Complex64::ZERO; da * db];
        for ((s, f), g) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            for i in 0..da {
                for k in 0..db {
                    out[i * db + k] += s * f[i] * g[k];
                }
            }
        }
        out
    }
}

/// Schmidt decomposition of a vector on H_a ⊗ H_b.
///
/// Computed from the eigendecomposition of the `dim_b × dim_b` Gram matrix
/// `Ψ†Ψ`, where `Ψ` is `ψ` reshaped to `dim_a × dim_b`.  Deterministic:
/// degenerate or vanishing coefficients are completed by Gram–Schmidt against
/// the standard basis.
pub fn schmidt(psi: &[Complex64], dim_a: usize, dim_b: usize) -> SchmidtDecomposition {
    assert_eq!(psi.len(), dim_a * dim_b, "schmidt: bad vector length");
    let m = ComplexMatrix::from_fn(dim_a, dim_b, |i, k| psi[i * dim_b + k]);
    let gram = HermitianMatrix::from_symmetrized(m.dagger().matmul(&m));
    let eig = herm_eig(&gram);

    let r = dim_a.min(dim_b);
    let scale = f64::max(1.0, vec_norm(psi));
    // Gram eigenvalues carry absolute rounding noise ~1e-15·λ_max, which the
    // square root would inflate to spurious coefficients ~1e-7·σ_max; treat
    // anything below the noise floor as exactly zero.
    let floor = 1e-13 * eig.max_eigenvalue().max(0.0);
    let mut coefficients = Vec::with_capacity(r);
    let mut left: Vec<Vec<Complex64>> = Vec::with_capacity(r);
    let mut right = Vec::with_capacity(r);

    for l in 0..r {
        let lambda = eig.eigenvalues[l];
        let sigma = if lambda > floor { lambda.sqrt() } else { 0.0 };
        coefficients.push(sigma);
        // ψ = Σ σ_l (Ψ v_l / σ_l) ⊗ conj(v_l).
        right.push(eig.eigenvectors[l].iter().map(Complex64::conj).collect());
        let candidate = if sigma > 1e-10 * scale {
            m.matvec(&eig.eigenvectors[l])
                .iter()
                .map(|z| z / sigma)
                .collect()
        } else {
            Vec::new() // completed below
        };
        left.push(candidate);
    }

    // Orthonormalise the left system; empty slots are filled from the
    // standard basis so that the frame is always complete.
    for l in 0..r {
        let mut v = if left[l].is_empty() {
            complete_against(&left[..l], dim_a)
        } else {
            left[l].clone()
        };
        for prev in &left[..l] {
            let ip = vec_inner(prev, &v);
            for (x, p) in v.iter_mut().zip(prev) {
                *x -= ip * p;
            }
        }
        let n = vec_norm(&v);
        if n > 1e-8 {
            for x in v.iter_mut() {
                *x /= n;
            }
        } else {
            v = complete_against(&left[..l], dim_a);
        }
        left[l] = v;
    }

    SchmidtDecomposition {
        coefficients,
        left,
        right,
    }
}

/// First standard basis vector with a significant component orthogonal to
/// `prev`, orthonormalised against it.
fn complete_against(prev: &[Vec<Complex64>], dim: usize) -> Vec<Complex64> {
    for cand in 0..dim {
        let mut v = vec![Complex64::ZERO; dim];
        v[cand] = Complex64::ONE;
        for p in prev {
            let ip = vec_inner(p, &v);
            for (x, pi) in v.iter_mut().zip(p) {
                *x -= ip * pi;
            }
        }
        let n = vec_norm(&v);
        if n > 1e-6 {
            return v.iter().map(|z| z / n).collect();
        }
    }
    unreachable!("standard basis always contains a completion candidate");
}
