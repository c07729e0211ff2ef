//! See-saw minimisation of `⟨f⊗g| C |f⊗g⟩` over product unit vectors.
//!
//! With one side fixed, the object is a quadratic form in the other side, so
//! each half-step is an *exact* smallest-eigenvector problem on a contracted
//! matrix — the objective can never increase within a start.  Multi-start
//! plus a deterministic coordinate-plane mesh gives the one-sided membership
//! semantics used by the block-positivity oracle.

use num_complex::Complex64;

use crate::linalg::{herm_eig, BipartiteOperator, ComplexMatrix, HermitianMatrix};

use super::{random_unit_vector, start_rng, SolverConfig};

/// Outcome of a product-vector search: the best value found together with
/// the vectors achieving it and the effort spent.
#[derive(Debug, Clone)]
pub struct ProductSearchOutcome {
    pub value: f64,
    pub f: Vec<Complex64>,
    pub g: Vec<Complex64>,
    pub starts_used: usize,
    pub iterations: usize,
}

/// `M(g)[i,j] = ⟨e_i⊗g| C |e_j⊗g⟩` — the quadratic form seen by the left
/// factor when the right factor is pinned.
// Indices address both the factor and the four-index entry accessor, so
// iterator forms would still need them.
#[allow(clippy::needless_range_loop)]
pub(crate) fn contract_right(c: &BipartiteOperator, g: &[Complex64]) -> HermitianMatrix {
    let (da, db) = (c.dim_a(), c.dim_b());
    let mut m = ComplexMatrix::zeros(da, da);
    for i in 0..da {
        for j in 0..da {
            let mut acc = Complex64::ZERO;
            for k in 0..db {
                let gk = g[k].conj();
                for l in 0..db {
                    acc += gk * c.entry(i, k, j, l) * g[l];
                }
            }
            m[(i, j)] = acc;
        }
    }
    HermitianMatrix::from_symmetrized(m)
}

/// `N(f)[k,l] = ⟨f⊗e_k| C |f⊗e_l⟩`, the mirror contraction.
#[allow(clippy::needless_range_loop)]
pub(crate) fn contract_left(c: &BipartiteOperator, f: &[Complex64]) -> HermitianMatrix {
    let (da, db) = (c.dim_a(), c.dim_b());
    let mut m = ComplexMatrix::zeros(db, db);
    for k in 0..db {
        for l in 0..db {
            let mut acc = Complex64::ZERO;
            for i in 0..da {
                let fi = f[i].conj();
                for j in 0..da {
                    acc += fi * c.entry(i, k, j, l) * f[j];
                }
            }
            m[(k, l)] = acc;
        }
    }
    HermitianMatrix::from_symmetrized(m)
}

/// Alternating descent from the given starting pair; returns the refined
/// `(value, f, g)` and the number of alternations performed.
pub(crate) fn polish(
    c: &BipartiteOperator,
    mut f: Vec<Complex64>,
    mut g: Vec<Complex64>,
    config: &SolverConfig,
) -> (f64, Vec<Complex64>, Vec<Complex64>, usize) {
    const MAX_ALTERNATIONS: usize = 100;
    let scale = f64::max(1.0, c.frobenius_norm());
    let mut value = c.product_expectation(&f, &g);
    let mut iterations = 0;
    for _ in 0..MAX_ALTERNATIONS {
        let m = contract_right(c, &g);
        let eig_f = herm_eig(&m);
        f = eig_f.min_eigenvector().to_vec();
        let n = contract_left(c, &f);
        let eig_g = herm_eig(&n);
        g = eig_g.min_eigenvector().to_vec();
        let new_value = c.product_expectation(&f, &g);
        iterations += 1;
        // Exact eigensteps make the objective non-increasing.
        debug_assert!(
            new_value <= value + 1e-12 * scale,
            "see-saw objective increased: {value} -> {new_value}"
        );
        let improvement = value - new_value;
        value = new_value;
        if improvement < config.inner_tol * scale {
            break;
        }
    }
    (value, f, g, iterations)
}

/// Multi-start see-saw minimisation of `⟨f⊗g| C |f⊗g⟩` over unit product
/// vectors.
///
/// The winner is the start with the smallest refined value, ties broken by
/// lowest start index, so the result is independent of evaluation order.
/// The reported value is always a directly re-checkable product expectation
/// and can never lie below `λ_min(C)`.
pub fn seesaw_min_product(c: &BipartiteOperator, config: &SolverConfig) -> ProductSearchOutcome {
    config.assert_valid();
    let deadline = config.deadline();
    let mut best: Option<ProductSearchOutcome> = None;
    let mut total_iterations = 0;
    let mut starts_used = 0;
    for index in 0..config.starts {
        let mut rng = start_rng(config.seed, index as u64);
        let f0 = random_unit_vector(c.dim_a(), &mut rng);
        let g0 = random_unit_vector(c.dim_b(), &mut rng);
        let (value, f, g, iterations) = polish(c, f0, g0, config);
        total_iterations += iterations;
        starts_used += 1;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(ProductSearchOutcome {
                value,
                f,
                g,
                starts_used: 0,
                iterations: 0,
            });
        }
        if deadline.is_some_and(|d| std::time::Instant::now() >= d) {
            break;
        }
    }
    let mut out = best.expect("at least one start");
    out.starts_used = starts_used;
    out.iterations = total_iterations;
    out
}

/// Deterministic mesh over real two-coordinate sections of both factors:
/// `f = cos θ·e_i + sin θ·e_j`, `g = cos φ·e_k + sin φ·e_l` with `θ, φ` on a
/// `points`-point grid over `[0, π)`.  Complements the random starts with
/// systematic coverage of the coordinate planes (it contains every standard
/// basis pair).
pub fn product_mesh_min(
    c: &BipartiteOperator,
    points: usize,
) -> (f64, Vec<Complex64>, Vec<Complex64>) {
    assert!(points >= 1);
    let fs = mesh_vectors(c.dim_a(), points);
    let gs = mesh_vectors(c.dim_b(), points);
    let mut best = f64::INFINITY;
    let mut best_pair = (fs[0].clone(), gs[0].clone());
    for f in &fs {
        for g in &gs {
            let v = c.product_expectation(f, g);
            if v < best {
                best = v;
                best_pair = (f.clone(), g.clone());
            }
        }
    }
    (best, best_pair.0, best_pair.1)
}

fn mesh_vectors(dim: usize, points: usize) -> Vec<Vec<Complex64>> {
    if dim == 1 {
        return vec![vec![Complex64::ONE]];
    }
    let mut out = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for t in 0..points {
                let theta = std::f64::consts::PI * t as f64 / points as f64;
                let mut v = vec![Complex64::ZERO; dim];
                v[i] = Complex64::new(theta.cos(), 0.0);
                v[j] = Complex64::new(theta.sin(), 0.0);
                out.push(v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Slot;
    use rand::Rng;

    fn diag_op(entries: &[f64], da: usize, db: usize) -> BipartiteOperator {
        let d = da * db;
        let m = ComplexMatrix::from_fn(d, d, |i, j| {
            if i == j {
                Complex64::new(entries[i], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        BipartiteOperator::new(da, db, m).unwrap()
    }

    #[test]
    fn identity_operator_gives_one() {
        let c = BipartiteOperator::new(2, 2, ComplexMatrix::identity(4)).unwrap();
        let out = seesaw_min_product(&c, &SolverConfig { starts: 5, ..Default::default() });
        assert!((out.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_with_negative_corner_is_found_immediately() {
        let c = diag_op(&[1.0, 1.0, 1.0, -1.0], 2, 2);
        let out = seesaw_min_product(&c, &SolverConfig { starts: 5, ..Default::default() });
        assert!((out.value + 1.0).abs() < 1e-12);
        // The optimal pair is e_1 ⊗ e_1 up to phases.
        assert!((out.f[1].norm() - 1.0).abs() < 1e-9);
        assert!((out.g[1].norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn swap_floor_is_zero() {
        // ⟨f⊗g|SWAP|f⊗g⟩ = |⟨f|g⟩|² ≥ 0, attained at orthogonal pairs.
        let t = crate::choi::choi_of_map(|x| x.transpose(), 2, 2).unwrap();
        let out = seesaw_min_product(t.choi(), &SolverConfig { starts: 20, ..Default::default() });
        assert!(out.value.abs() < 1e-9, "value {}", out.value);
    }

    #[test]
    fn value_never_beats_the_global_minimum() {
        let mut rng = start_rng(99, 0);
        for _ in 0..10 {
            let h = HermitianMatrix::from_symmetrized(ComplexMatrix::from_fn(6, 6, |_, _| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            }));
            let c = BipartiteOperator::from_hermitian(2, 3, h).unwrap();
            let lambda_min = herm_eig(c.hermitian()).min_eigenvalue();
            let out =
                seesaw_min_product(&c, &SolverConfig { starts: 30, ..Default::default() });
            assert!(out.value >= lambda_min - 1e-9);
            // Reported value is re-checkable directly.
            let recheck = c.product_expectation(&out.f, &out.g);
            assert!((recheck - out.value).abs() < 1e-12);
        }
    }

    #[test]
    fn entangled_projector_floor_is_positive_for_products() {
        // |Ω⟩⟨Ω| on 2⊗2: ⟨f⊗g|Ω⟩ = ⟨f̄|g⟩/√2, minimised at 0.
        let v = crate::linalg::max_entangled_vector(2);
        let c = BipartiteOperator::new(2, 2, crate::linalg::outer(&v, &v)).unwrap();
        let out = seesaw_min_product(&c, &SolverConfig { starts: 10, ..Default::default() });
        assert!(out.value.abs() < 1e-10);
        // Its partial transpose however dips to −1/2 on products... no:
        // block positivity of PT(|Ω⟩⟨Ω|) = SWAP/2 holds, floor 0.
        let pt = c.partial_transpose(Slot::B);
        let out_pt = seesaw_min_product(&pt, &SolverConfig { starts: 10, ..Default::default() });
        assert!(out_pt.value.abs() < 1e-10);
    }

    #[test]
    fn deterministic_across_runs() {
        let mut rng = start_rng(5, 1);
        let h = HermitianMatrix::from_symmetrized(ComplexMatrix::from_fn(4, 4, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        }));
        let c = BipartiteOperator::from_hermitian(2, 2, h).unwrap();
        let cfg = SolverConfig { starts: 15, seed: 42, ..Default::default() };
        let a = seesaw_min_product(&c, &cfg);
        let b = seesaw_min_product(&c, &cfg);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.f, b.f);
        assert_eq!(a.g, b.g);
    }

    #[test]
    fn mesh_contains_basis_pairs_and_finds_diagonal_minimum() {
        let c = diag_op(&[1.0, 1.0, 1.0, -1.0], 2, 2);
        let (value, f, g) = product_mesh_min(&c, 24);
        assert!((value + 1.0).abs() < 1e-12);
        assert!((f[1].norm() - 1.0).abs() < 1e-12);
        assert!((g[1].norm() - 1.0).abs() < 1e-12);
    }
}
