//! Map representations and the correspondence between linear maps
//! `T: M_n → M_m` and operators on the tensor product ℂⁿ ⊗ ℂᵐ.
//!
//! The canonical representation is the Choi matrix
//! `C_T = Σ_{i,j} ε_ij ⊗ T(ε_ij)` over the matrix units `ε_ij` of `M_n`,
//! stored as a [`BipartiteOperator`] whose first slot is the input system.
//! Everything else — applying the map, pairing it with functionals, Kraus and
//! Jordan decompositions, composition with the transpose — is derived from it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    herm_eig, kron, partial_trace_matrix, psd_split, BipartiteOperator, ComplexMatrix,
    HermitianMatrix, Slot,
};

/// A Hermiticity-preserving linear map `T: M_n → M_m`, represented by its
/// Choi matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MapRepr {
    dim_in: usize,
    dim_out: usize,
    choi: BipartiteOperator,
}

impl MapRepr {
    /// Wraps a Choi matrix; the operator's slots must be (input, output).
    pub fn new(dim_in: usize, dim_out: usize, choi: BipartiteOperator) -> Result<Self> {
        if choi.dim_a() != dim_in || choi.dim_b() != dim_out {
            return Err(Error::SizeMismatch {
                context: "map representation",
                expected_rows: dim_in,
                expected_cols: dim_out,
                rows: choi.dim_a(),
                cols: choi.dim_b(),
            });
        }
        Ok(Self {
            dim_in,
            dim_out,
            choi,
        })
    }

    /// Builds the map `a ↦ Σ_k V_k a V_k†` from a Kraus family.  Its Choi
    /// matrix `Σ_k |w_k⟩⟨w_k|` is positive semidefinite by construction.
    pub fn from_kraus(family: &KrausFamily) -> Self {
        let (n, m) = (family.dim_in, family.dim_out);
        let d = n * m;
        let mut c = ComplexMatrix::zeros(d, d);
        for v in &family.operators {
            // w[(i,k)] = V[k,i]: column i of V becomes the i-th block of w.
            let w: Vec<Complex64> = (0..d).map(|x| v[(x % m, x / m)]).collect();
            for (row, wr) in w.iter().enumerate() {
                for (col, wc) in w.iter().enumerate() {
                    c[(row, col)] += wr * wc.conj();
                }
            }
        }
        let choi = BipartiteOperator::from_hermitian(n, m, HermitianMatrix::from_symmetrized(c))
            .expect("Kraus Choi has the right size by construction");
        Self {
            dim_in: n,
            dim_out: m,
            choi,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn choi(&self) -> &BipartiteOperator {
        &self.choi
    }

    pub fn into_choi(self) -> BipartiteOperator {
        self.choi
    }
}

/// An ordered family of `m×n` operators `V_k` describing the completely
/// positive map `a ↦ Σ_k V_k a V_k†`.
///
/// Families extracted from a Choi matrix contain at most `n·m` operators
/// (the maximal possible rank); hand-built families may be larger.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausFamily {
    dim_in: usize,
    dim_out: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausFamily {
    pub fn new(dim_in: usize, dim_out: usize, operators: Vec<ComplexMatrix>) -> Result<Self> {
        for v in &operators {
            if (v.rows(), v.cols()) != (dim_out, dim_in) {
                return Err(Error::SizeMismatch {
                    context: "Kraus operator",
                    expected_rows: dim_out,
                    expected_cols: dim_in,
                    rows: v.rows(),
                    cols: v.cols(),
                });
            }
        }
        Ok(Self {
            dim_in,
            dim_out,
            operators,
        })
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// Evaluates `Σ_k V_k X V_k†` directly.
    pub fn apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        if (x.rows(), x.cols()) != (self.dim_in, self.dim_in) {
            return Err(Error::SizeMismatch {
                context: "Kraus application",
                expected_rows: self.dim_in,
                expected_cols: self.dim_in,
                rows: x.rows(),
                cols: x.cols(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for v in &self.operators {
            out = out.add(&v.matmul(x).matmul(&v.dagger()));
        }
        Ok(out)
    }
}

/// Builds a [`MapRepr`] by evaluating `action` on all matrix units of `M_n`.
///
/// `action` is spot-checked for linearity on seeded random probes and the
/// assembled Choi matrix must come out Hermitian (i.e. the map must preserve
/// Hermiticity); both checks fail loudly rather than producing a silently
/// meaningless representation.
pub fn choi_of_map(
    action: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    n: usize,
    m: usize,
) -> Result<MapRepr> {
    // Linearity spot-check, deterministic across runs.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0C01_0F0A);
    for _ in 0..3 {
        let mut rand_c = |_: usize, _: usize| {
            Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        };
        let x = ComplexMatrix::from_fn(n, n, &mut rand_c);
        let y = ComplexMatrix::from_fn(n, n, &mut rand_c);
        let alpha = rand_c(0, 0);
        let beta = rand_c(0, 0);
        let combined = action(&x.scale(alpha).add(&y.scale(beta)));
        if (combined.rows(), combined.cols()) != (m, m) {
            return Err(Error::SizeMismatch {
                context: "map action output",
                expected_rows: m,
                expected_cols: m,
                rows: combined.rows(),
                cols: combined.cols(),
            });
        }
        let separate = action(&x).scale(alpha).add(&action(&y).scale(beta));
        let dev = combined.sub(&separate).frobenius_norm();
        if dev > 1e-9 * f64::max(1.0, separate.frobenius_norm()) {
            return Err(Error::NonlinearAction { deviation: dev });
        }
    }

    let d = n * m;
    let mut c = ComplexMatrix::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            let unit = ComplexMatrix::from_fn(n, n, |r, s| {
                if (r, s) == (i, j) {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                }
            });
            let t_unit = action(&unit);
            for k in 0..m {
                for l in 0..m {
                    c[(i * m + k, j * m + l)] = t_unit[(k, l)];
                }
            }
        }
    }
    MapRepr::new(n, m, BipartiteOperator::new(n, m, c)?)
}

/// Applies the map to a matrix: `T(X)[k,l] = Σ_ij X[i,j] · C_T[(i,k),(j,l)]`,
/// which is the contraction `Tr₁[(Xᵗ ⊗ I_m) · C_T]`.
pub fn apply(t: &MapRepr, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (n, m) = (t.dim_in, t.dim_out);
    if (x.rows(), x.cols()) != (n, n) {
        return Err(Error::SizeMismatch {
            context: "map application",
            expected_rows: n,
            expected_cols: n,
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let mut out = ComplexMatrix::zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            let xij = x[(i, j)];
            if xij == Complex64::ZERO {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[(k, l)] += xij * t.choi.entry(i, k, j, l);
                }
            }
        }
    }
    Ok(out)
}

/// Evaluates the functional `Σ_i Tr(T(a_i) · b_iᵗ)` through the Choi pairing
/// `⟨C_T, Σ_i a_iᵗ ⊗ b_iᵗ⟩`.
pub fn functional_eval(t: &MapRepr, terms: &[(HermitianMatrix, HermitianMatrix)]) -> Result<f64> {
    let (n, m) = (t.dim_in, t.dim_out);
    let d = n * m;
    let mut s = ComplexMatrix::zeros(d, d);
    for (a, b) in terms {
        if a.dim() != n || b.dim() != m {
            return Err(Error::SizeMismatch {
                context: "functional term",
                expected_rows: n,
                expected_cols: m,
                rows: a.dim(),
                cols: b.dim(),
            });
        }
        s = s.add(&kron(&a.matrix().transpose(), &b.matrix().transpose()));
    }
    crate::linalg::pairing(
        t.choi.hermitian(),
        &HermitianMatrix::from_symmetrized(s),
    )
}

/// The same functional evaluated the long way round: apply the map to each
/// `a_i` and trace against `b_iᵗ`.  Exists so the two routes can be compared.
pub fn functional_eval_direct(
    t: &MapRepr,
    terms: &[(HermitianMatrix, HermitianMatrix)],
) -> Result<f64> {
    let mut acc = 0.0;
    for (a, b) in terms {
        let ta = apply(t, a.matrix())?;
        if b.dim() != t.dim_out {
            return Err(Error::SizeMismatch {
                context: "functional term",
                expected_rows: t.dim_in,
                expected_cols: t.dim_out,
                rows: a.dim(),
                cols: b.dim(),
            });
        }
        acc += ta.matmul(&b.matrix().transpose()).trace().re;
    }
    Ok(acc)
}

/// Extracts a Kraus family from a completely positive map.
///
/// Eigenvectors of the Choi matrix with eigenvalue above `1e-10·‖C‖_F` become
/// operators `V_k[r,c] = √λ_k · v_k[c·m + r]`, ordered by descending
/// eigenvalue with the first significant entry of each made real nonnegative.
/// Fails with [`Error::NotCompletelyPositive`] (carrying the offending
/// eigenpair) when `λ_min < −1e-9·‖C‖_F`.
pub fn kraus_from_choi(t: &MapRepr) -> Result<KrausFamily> {
    let (n, m) = (t.dim_in, t.dim_out);
    let eig = herm_eig(t.choi.hermitian());
    let scale = f64::max(1.0, t.choi.frobenius_norm());
    if eig.min_eigenvalue() < -1e-9 * scale {
        return Err(Error::NotCompletelyPositive {
            eigenvalue: eig.min_eigenvalue(),
            eigenvector: eig.min_eigenvector().to_vec(),
        });
    }
    let keep = 1e-10 * t.choi.frobenius_norm();
    let mut operators = Vec::new();
    for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *lambda <= keep {
            continue; // sorted: everything after is smaller
        }
        let w = lambda.sqrt();
        let mut op = ComplexMatrix::from_fn(m, n, |r, c| w * v[c * m + r]);
        fix_leading_phase(&mut op);
        operators.push(op);
    }
    KrausFamily::new(n, m, operators)
}

/// Rotates a global phase so the first entry (row-major) with significant
/// modulus becomes real and nonnegative.
fn fix_leading_phase(op: &mut ComplexMatrix) {
    let cutoff = 1e-12 * f64::max(1.0, op.max_abs());
    let lead = op.data().iter().find(|z| z.norm() > cutoff).copied();
    if let Some(z) = lead {
        let phase = z.conj() / z.norm();
        *op = op.scale(phase);
    }
}

/// Composes with the transpose on the output: returns `t ∘ T`, whose Choi
/// matrix is the partial transpose of `C_T` on the output slot.  Applying it
/// twice gives back the original map.
pub fn co_compose(t: &MapRepr) -> MapRepr {
    MapRepr {
        dim_in: t.dim_in,
        dim_out: t.dim_out,
        choi: t.choi.partial_transpose(Slot::B),
    }
}

/// Minimal Jordan split `T = T₊ − T₋` with both parts completely positive
/// and Choi matrices of orthogonal support (the positive/negative eigenspace
/// split of `C_T`).
pub fn jordan_decompose(t: &MapRepr) -> (MapRepr, MapRepr) {
    let (pos, neg) = psd_split(t.choi.hermitian());
    let wrap = |h: HermitianMatrix| MapRepr {
        dim_in: t.dim_in,
        dim_out: t.dim_out,
        choi: BipartiteOperator::from_hermitian(t.dim_in, t.dim_out, h)
            .expect("split preserves dimensions"),
    };
    (wrap(pos), wrap(neg))
}

/// Reference implementation of `apply` through the literal trace formula
/// `Tr₁[(Xᵗ ⊗ I_m)·C_T]`; used by tests to pin the contraction down.
#[doc(hidden)]
pub fn apply_via_trace_formula(t: &MapRepr, x: &ComplexMatrix) -> ComplexMatrix {
    let product = kron(&x.transpose(), &ComplexMatrix::identity(t.dim_out)).matmul(t.choi.matrix());
    partial_trace_matrix(&product, t.dim_in, t.dim_out, Slot::A)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_entangled_vector, outer, vec_norm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |r, s| {
            if (r, s) == (i, j) {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        })
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        })
    }

    fn random_map(n: usize, m: usize, rng: &mut ChaCha8Rng) -> MapRepr {
        let h = HermitianMatrix::from_symmetrized(random_matrix(n * m, rng));
        MapRepr::new(n, m, BipartiteOperator::from_hermitian(n, m, h).unwrap()).unwrap()
    }

    #[test]
    fn identity_map_choi_is_rank_one_entangled_projector() {
        for n in 2..=3 {
            let t = choi_of_map(|x| x.clone(), n, n).unwrap();
            let omega = max_entangled_vector(n);
            let expect = outer(&omega, &omega).scale(c(n as f64, 0.0));
            let diff = t.choi().matrix().sub(&expect).frobenius_norm();
            assert!(diff < 1e-14, "n={n}: diff {diff}");
        }
    }

    #[test]
    fn transpose_map_choi_is_the_swap() {
        let t = choi_of_map(|x| x.transpose(), 2, 2).unwrap();
        // SWAP[(i,k),(j,l)] = δ_il δ_jk.
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        let expect = if i == l && j == k { 1.0 } else { 0.0 };
                        assert_eq!(t.choi().entry(i, k, j, l), c(expect, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn depolarizing_limit_choi_is_scaled_identity() {
        let n = 3;
        let t = choi_of_map(
            |x| ComplexMatrix::identity(n).scale(x.trace() / n as f64),
            n,
            n,
        )
        .unwrap();
        let expect = ComplexMatrix::identity(n * n).scale(c(1.0 / n as f64, 0.0));
        assert!(t.choi().matrix().sub(&expect).frobenius_norm() < 1e-14);
    }

    #[test]
    fn nonlinear_action_is_rejected() {
        let result = choi_of_map(|x| x.matmul(x), 2, 2);
        assert!(matches!(result, Err(Error::NonlinearAction { .. })));
    }

    #[test]
    fn apply_reproduces_the_defining_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let t = choi_of_map(|x| x.transpose(), 3, 3).unwrap();
        let x = random_matrix(3, &mut rng);
        let tx = apply(&t, &x).unwrap();
        assert!(tx.sub(&x.transpose()).frobenius_norm() < 1e-13);

        let id = choi_of_map(|x| x.clone(), 3, 3).unwrap();
        let ix = apply(&id, &x).unwrap();
        assert!(ix.sub(&x).frobenius_norm() < 1e-13);
    }

    #[test]
    fn apply_agrees_with_the_trace_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (n, m) in [(2, 2), (3, 2), (2, 4)] {
            let t = random_map(n, m, &mut rng);
            let x = random_matrix(n, &mut rng);
            let fast = apply(&t, &x).unwrap();
            let slow = apply_via_trace_formula(&t, &x);
            assert!(fast.sub(&slow).frobenius_norm() < 1e-12);
        }
    }

    #[test]
    fn functional_eval_on_matrix_units() {
        // Identity map: Tr(ε_00 · ε_00ᵗ) = 1.
        let id = choi_of_map(|x| x.clone(), 2, 2).unwrap();
        let e00 = HermitianMatrix::new(unit(2, 0, 0)).unwrap();
        assert!((functional_eval(&id, &[(e00.clone(), e00.clone())]).unwrap() - 1.0).abs() < 1e-14);

        // Transpose map with the Hermitian pair built from off-diagonal
        // units: a = ε_01 + ε_10 pairs to itself, Tr(aᵗ·aᵗ... ) = 2.
        let t = choi_of_map(|x| x.transpose(), 2, 2).unwrap();
        let a = HermitianMatrix::new(unit(2, 0, 1).add(&unit(2, 1, 0))).unwrap();
        let direct = functional_eval_direct(&t, &[(a.clone(), a.clone())]).unwrap();
        let paired = functional_eval(&t, &[(a.clone(), a)]).unwrap();
        assert!((direct - 2.0).abs() < 1e-13);
        assert!((paired - 2.0).abs() < 1e-13);
    }

    #[test]
    fn functional_eval_routes_agree_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let (n, m) = (2 + (rng.random::<u32>() % 2) as usize, 2 + (rng.random::<u32>() % 2) as usize);
            let t = random_map(n, m, &mut rng);
            let terms: Vec<_> = (0..3)
                .map(|_| {
                    (
                        HermitianMatrix::from_symmetrized(random_matrix(n, &mut rng)),
                        HermitianMatrix::from_symmetrized(random_matrix(m, &mut rng)),
                    )
                })
                .collect();
            let via_pairing = functional_eval(&t, &terms).unwrap();
            let via_apply = functional_eval_direct(&t, &terms).unwrap();
            let scale = f64::max(1.0, via_apply.abs());
            assert!(
                (via_pairing - via_apply).abs() <= 1e-10 * scale,
                "routes disagree: {via_pairing} vs {via_apply}"
            );
        }
    }

    #[test]
    fn kraus_of_identity_is_a_single_unitary() {
        let id = choi_of_map(|x| x.clone(), 3, 3).unwrap();
        let family = kraus_from_choi(&id).unwrap();
        assert_eq!(family.len(), 1);
        // V = I up to the fixed global phase (leading entry real positive).
        let v = &family.operators()[0];
        assert!(v.sub(&ComplexMatrix::identity(3)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn kraus_of_depolarizing_limit_has_full_rank() {
        let n = 2;
        let t = choi_of_map(
            |x| ComplexMatrix::identity(n).scale(x.trace() / n as f64),
            n,
            n,
        )
        .unwrap();
        let family = kraus_from_choi(&t).unwrap();
        assert_eq!(family.len(), n * n);
    }

    #[test]
    fn kraus_of_transpose_fails_with_certificate() {
        let t = choi_of_map(|x| x.transpose(), 2, 2).unwrap();
        match kraus_from_choi(&t) {
            Err(Error::NotCompletelyPositive {
                eigenvalue,
                eigenvector,
            }) => {
                assert!((eigenvalue + 1.0).abs() < 1e-12);
                // The certificate really is an eigenvector achieving it.
                let q = t.choi().hermitian().quadratic_form(&eigenvector);
                assert!((q - eigenvalue).abs() < 1e-12);
                assert!((vec_norm(&eigenvector) - 1.0).abs() < 1e-12);
            }
            other => panic!("expected NotCompletelyPositive, got {other:?}"),
        }
    }

    #[test]
    fn kraus_round_trip_reproduces_random_cp_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let (n, m, rank) = (2, 3, 1 + (rng.random::<u32>() % 4) as usize);
            let ops: Vec<_> = (0..rank)
                .map(|_| ComplexMatrix::from_fn(m, n, |_, _| c(rng.random(), rng.random())))
                .collect();
            let family = KrausFamily::new(n, m, ops).unwrap();
            let t = MapRepr::from_kraus(&family);
            let extracted = kraus_from_choi(&t).unwrap();
            assert!(extracted.len() <= n * m);
            let x = random_matrix(n, &mut rng);
            let direct = family.apply(&x).unwrap();
            let reextracted = extracted.apply(&x).unwrap();
            let scale = f64::max(1.0, direct.frobenius_norm());
            assert!(reextracted.sub(&direct).frobenius_norm() < 1e-9 * scale);
        }
    }

    #[test]
    fn co_compose_swaps_identity_and_transpose() {
        let id = choi_of_map(|x| x.clone(), 2, 2).unwrap();
        let t = choi_of_map(|x| x.transpose(), 2, 2).unwrap();
        assert!(co_compose(&id)
            .choi()
            .matrix()
            .sub(t.choi().matrix())
            .frobenius_norm()
            .lt(&1e-14));
        assert!(co_compose(&t)
            .choi()
            .matrix()
            .sub(id.choi().matrix())
            .frobenius_norm()
            .lt(&1e-14));
    }

    #[test]
    fn co_compose_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let t = random_map(3, 2, &mut rng);
        let back = co_compose(&co_compose(&t));
        assert!(back.choi().matrix().sub(t.choi().matrix()).frobenius_norm() < 1e-14);
    }

    #[test]
    fn jordan_of_transpose_gives_symmetric_and_antisymmetric_projectors() {
        let t = choi_of_map(|x| x.transpose(), 2, 2).unwrap();
        let (plus, minus) = jordan_decompose(&t);
        // SWAP = P_sym − P_anti; the antisymmetric space on ℂ²⊗ℂ² is spanned
        // by (|01⟩ − |10⟩)/√2.
        let s = 1.0 / 2.0_f64.sqrt();
        let singlet = vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)];
        let anti = outer(&singlet, &singlet);
        assert!(minus.choi().matrix().sub(&anti).frobenius_norm() < 1e-12);
        let sym = ComplexMatrix::identity(4).sub(&anti);
        assert!(plus.choi().matrix().sub(&sym).frobenius_norm() < 1e-12);
    }

    #[test]
    fn jordan_parts_are_cp_orthogonal_and_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..10 {
            let t = random_map(2, 3, &mut rng);
            let (plus, minus) = jordan_decompose(&t);
            let scale = f64::max(1.0, t.choi().frobenius_norm());
            assert!(herm_eig(plus.choi().hermitian()).min_eigenvalue() >= -1e-10 * scale);
            assert!(herm_eig(minus.choi().hermitian()).min_eigenvalue() >= -1e-10 * scale);
            let rebuilt = plus.choi().matrix().sub(minus.choi().matrix());
            assert!(rebuilt.sub(t.choi().matrix()).frobenius_norm() < 1e-10 * scale);
            let overlap = plus.choi().matrix().matmul(minus.choi().matrix());
            assert!(overlap.frobenius_norm() < 1e-9 * scale * scale);
        }
    }

    #[test]
    fn jordan_of_negated_map_swaps_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let t = random_map(2, 2, &mut rng);
        let neg = MapRepr::new(
            2,
            2,
            BipartiteOperator::from_hermitian(2, 2, t.choi().hermitian().scale(-1.0)).unwrap(),
        )
        .unwrap();
        let (p1, m1) = jordan_decompose(&t);
        let (p2, m2) = jordan_decompose(&neg);
        assert!(p2.choi().matrix().sub(m1.choi().matrix()).frobenius_norm() < 1e-11);
        assert!(m2.choi().matrix().sub(p1.choi().matrix()).frobenius_norm() < 1e-11);
    }
}
