//! Dense complex matrices in row-major order, plus a Hermitian wrapper that
//! guarantees `M == M†` exactly.

use num_complex::Complex64;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Relative tolerance used when ingesting a matrix that is supposed to be
/// Hermitian.  A matrix whose deviation `‖M − M†‖_max` exceeds
/// `HERMITIAN_INGEST_TOL · max(1, ‖M‖_max)` is rejected; anything below is
/// silently symmetrised to `(M + M†)/2`.
pub const HERMITIAN_INGEST_TOL: f64 = 1e-9;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds a matrix entry by entry from a closure `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows, checking that the shape is
    /// rectangular and every entry is finite.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::SizeMismatch {
                    context: "from_rows",
                    expected_rows: r,
                    expected_cols: c,
                    rows: r,
                    cols: row.len(),
                });
            }
            for (j, &z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                data.push(z);
            }
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Raw row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// True when every entry is finite (no NaN, no infinity).
    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex64::conj).collect(),
        }
    }

    /// Conjugate transpose `M†`.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self += factor · other`, in place.
    pub fn add_scaled(&mut self, factor: Complex64, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product `self · v`.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matvec: dimension mismatch");
        let mut out = vec![Complex64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus `max_ij |m_ij|`.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖M − M†‖_max` for a square matrix.
    pub fn hermitian_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Square complex matrix with `M == M†` holding exactly (entrywise).
///
/// The invariant is established on construction: [`HermitianMatrix::new`]
/// rejects matrices that are visibly non-Hermitian and replaces the rest by
/// `(M + M†)/2`, which is exactly Hermitian in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    m: ComplexMatrix,
}

impl HermitianMatrix {
    /// Ingests a matrix that is supposed to be Hermitian.
    ///
    /// Fails with [`Error::NotSquare`], [`Error::NonFiniteEntry`], or
    /// [`Error::NonHermitianInput`] when the deviation `‖M − M†‖_max` exceeds
    /// `HERMITIAN_INGEST_TOL · max(1, ‖M‖_max)`.  Otherwise the matrix is
    /// symmetrised to `(M + M†)/2`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let z = m[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
            }
        }
        let dev = m.hermitian_deviation();
        let tol = HERMITIAN_INGEST_TOL * f64::max(1.0, m.max_abs());
        if dev > tol {
            return Err(Error::NonHermitianInput { deviation: dev, tol });
        }
        Ok(Self::from_symmetrized(m))
    }

    /// Wraps `(M + M†)/2` without a deviation check.  Intended for matrices
    /// that are Hermitian by construction (sums of `λ vv†`, partial
    /// transposes of Hermitian matrices, ...), where the averaging only
    /// removes rounding noise.
    pub fn from_symmetrized(m: ComplexMatrix) -> Self {
        assert!(m.is_square(), "Hermitian matrix must be square");
        let n = m.rows();
        let mut s = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            s[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)].conj());
                s[(i, j)] = avg;
                s[(j, i)] = avg.conj();
            }
        }
        Self { m: s }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            m: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: ComplexMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            m: self.m.add(&other.m),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            m: self.m.sub(&other.m),
        }
    }

    /// Scales by a real factor (complex factors would break Hermiticity).
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            m: self.m.scale(Complex64::new(factor, 0.0)),
        }
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.frobenius_norm()
    }

    /// Quadratic form `⟨v| M |v⟩`, real by Hermiticity.
    pub fn quadratic_form(&self, v: &[Complex64]) -> f64 {
        assert_eq!(v.len(), self.dim());
        let mut acc = Complex64::ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += v[i].conj() * self.m[(i, j)] * v[j];
            }
        }
        acc.re
    }
}

/// Hilbert–Schmidt pairing `Tr(A B)` of two Hermitian matrices of equal size.
/// Real because both arguments are Hermitian.
pub fn pairing(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::SizeMismatch {
            context: "pairing",
            expected_rows: a.dim(),
            expected_cols: a.dim(),
            rows: b.dim(),
            cols: b.dim(),
        });
    }
    let n = a.dim();
    let mut acc = Complex64::ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a.get(i, j) * b.get(j, i);
        }
    }
    Ok(acc.re)
}

/// Inner product `⟨u|v⟩`, conjugate-linear in the first argument.
pub fn vec_inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Returns `v / ‖v‖`.  Panics on the zero vector.
pub fn vec_normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = vec_norm(v);
    assert!(n > 0.0, "cannot normalise the zero vector");
    v.iter().map(|z| z / n).collect()
}

/// Rank-one matrix `|u⟩⟨v| = u v†`.
pub fn outer(u: &[Complex64], v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matmul_against_hand_computed_product() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(2.0, 0.0), c(1.0, -1.0)],
        ])
        .unwrap();
        let b = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, -1.0)],
        ])
        .unwrap();
        let p = a.matmul(&b);
        assert_eq!(p[(0, 0)], c(0.0, 1.0));
        assert_eq!(p[(0, 1)], c(2.0, 0.0));
        assert_eq!(p[(1, 0)], c(1.0, -1.0));
        assert_eq!(p[(1, 1)], c(1.0, -1.0));
    }

    #[test]
    fn dagger_is_an_involution() {
        let a = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64, j as f64 + 0.5));
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn hermitian_ingestion_symmetrises_small_noise() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(0.5, 1e-12);
        m[(1, 0)] = c(0.5, 1e-12); // conjugate would be (0.5, -1e-12)
        let h = HermitianMatrix::new(m).unwrap();
        assert_eq!(h.matrix().hermitian_deviation(), 0.0);
        assert_eq!(h.get(0, 1), c(0.5, 0.0));
    }

    #[test]
    fn hermitian_ingestion_rejects_large_deviation() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(0.0, 0.0);
        match HermitianMatrix::new(m) {
            Err(Error::NonHermitianInput { .. }) => {}
            other => panic!("expected NonHermitianInput, got {other:?}"),
        }
    }

    #[test]
    fn pairing_matches_trace_of_product() {
        let a = HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(1.0, 0.0), c(0.0, 2.0)],
                vec![c(0.0, -2.0), c(3.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let b = HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(2.0, 0.0), c(1.0, 1.0)],
                vec![c(1.0, -1.0), c(-1.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        // Tr(AB) computed by hand: sum_ij a_ij b_ji.
        let direct = a.matrix().matmul(b.matrix()).trace();
        let p = pairing(&a, &b).unwrap();
        assert!((p - direct.re).abs() < 1e-14);
        assert!(direct.im.abs() < 1e-14);
    }

    #[test]
    fn pairing_rejects_size_mismatch() {
        let a = HermitianMatrix::identity(2);
        let b = HermitianMatrix::identity(3);
        assert!(matches!(pairing(&a, &b), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn quadratic_form_is_real_and_matches_pairing_with_projector() {
        let h = HermitianMatrix::new(
            ComplexMatrix::from_rows(&[
                vec![c(1.0, 0.0), c(0.5, -0.25)],
                vec![c(0.5, 0.25), c(-2.0, 0.0)],
            ])
            .unwrap(),
        )
        .unwrap();
        let v = vec_normalized(&[c(1.0, 1.0), c(0.0, -1.0)]);
        let proj = HermitianMatrix::from_symmetrized(outer(&v, &v));
        let q = h.quadratic_form(&v);
        let p = pairing(&h, &proj).unwrap();
        assert!((q - p).abs() < 1e-14);
    }

    #[test]
    fn vector_helpers() {
        let u = vec![c(3.0, 0.0), c(0.0, 4.0)];
        assert!((vec_norm(&u) - 5.0).abs() < 1e-15);
        let un = vec_normalized(&u);
        assert!((vec_norm(&un) - 1.0).abs() < 1e-15);
        let v = vec![c(1.0, 0.0), c(0.0, 1.0)];
        // ⟨u|v⟩ = conj(3)·1 + conj(4i)·i = 3 + 4 = 7
        assert_eq!(vec_inner(&u, &v), c(7.0, 0.0));
    }
}
