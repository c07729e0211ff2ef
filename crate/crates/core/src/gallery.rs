//! Named example maps and states with known positivity profiles: exact
//! classics (identity, transpose, the cyclic 3×3 map, reduction,
//! depolarizing, singlet-noise states, maximally entangled projectors) and
//! seeded random generators (CP maps, block-positive maps, PPT states).
//!
//! Objects are constructed with exact entries — no floating synthesis noise
//! beyond plain arithmetic — and each entry runs its documented self-checks
//! when built with debug assertions (as in test builds).  Parameter values
//! outside the documented ranges only produce warnings: probing the cone
//! oracles with out-of-range members of a family is the whole point.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::choi::{choi_of_map, KrausFamily, MapRepr};
use crate::error::{Error, Result};
use crate::linalg::{
    max_entangled_vector, outer, BipartiteOperator, ComplexMatrix, HermitianMatrix, Slot,
};
use crate::solver::{dykstra, start_rng, PsdCone, PtPsdCone, Projection, SolverConfig, TracePlane};

/// A gallery object is either a map (carried by its Choi matrix) or a
/// bipartite operator (a state or witness candidate).
#[derive(Debug, Clone)]
pub enum GalleryObject {
    Map(MapRepr),
    Operator(BipartiteOperator),
}

impl GalleryObject {
    pub fn as_map(&self) -> Option<&MapRepr> {
        match self {
            GalleryObject::Map(t) => Some(t),
            GalleryObject::Operator(_) => None,
        }
    }

    pub fn as_operator(&self) -> Option<&BipartiteOperator> {
        match self {
            GalleryObject::Map(_) => None,
            GalleryObject::Operator(x) => Some(x),
        }
    }
}

/// A constructed gallery object together with the resolved parameters, a
/// one-line description, and any range warnings.
#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub object: GalleryObject,
    pub note: String,
    pub warnings: Vec<String>,
}

/// Names accepted by [`make`].
pub fn catalog() -> &'static [&'static str] {
    &[
        "identity",
        "transpose",
        "choi3",
        "choi3_rev",
        "reduction",
        "depolarizing",
        "werner",
        "max_entangled",
        "random_cp",
        "random_block_positive",
        "random_ppt",
    ]
}

/// Largest matrix-algebra dimension the gallery will generate.
const MAX_DIM: usize = 16;

/// Builds the named object.
///
/// Unknown names fail with [`Error::UnknownName`]; unknown or malformed
/// parameters fail with [`Error::BadParameter`]; parameters outside their
/// documented ranges (`werner` `p ∉ [0,1]`, `depolarizing` `λ ∉ [−1,1]`)
/// only add a warning.  `seed` feeds the `random_*` entries (default 0) and
/// is ignored by the deterministic ones.
pub fn make(
    name: &str,
    parameters: &BTreeMap<String, f64>,
    seed: Option<u64>,
) -> Result<GalleryEntry> {
    let mut params = ParameterBag::new(name, parameters);
    let seed = seed.unwrap_or(0);
    let entry = match name {
        "identity" => {
            let n = params.dim("n", 2)?;
            let t = choi_of_map(|x| x.clone(), n, n).expect("identity action is linear");
            #[cfg(debug_assertions)]
            debug_assert!(identity_choi_is_entangled_projector(&t, n));
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "identity map on {n}x{n} matrices; Choi matrix is {n} times the maximally entangled projector"
                ),
                warnings: Vec::new(),
            }
        }
        "transpose" => {
            let n = params.dim("n", 2)?;
            let t = choi_of_map(|x| x.transpose(), n, n).expect("transpose action is linear");
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "transpose map on {n}x{n} matrices; positive and co-completely positive but not 2-positive"
                ),
                warnings: Vec::new(),
            }
        }
        "choi3" | "choi3_rev" => {
            let reverse = name == "choi3_rev";
            let t = cyclic_choi3(reverse);
            #[cfg(debug_assertions)]
            choi3_self_check(&t);
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "cyclic map on 3x3 matrices ({} neighbour on the diagonal): positive but not completely positive, not co-completely positive, and not decomposable",
                    if reverse { "previous" } else { "next" }
                ),
                warnings: Vec::new(),
            }
        }
        "reduction" => {
            let n = params.dim("n", 2)?;
            let t = choi_of_map(
                |x| ComplexMatrix::identity(n).scale(x.trace()).sub(x),
                n,
                n,
            )
            .expect("reduction action is linear");
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "reduction map X ↦ Tr(X)·I − X on {n}x{n} matrices; positive and co-completely positive, not 2-positive for n ≥ 2"
                ),
                warnings: Vec::new(),
            }
        }
        "depolarizing" => {
            let n = params.dim("n", 2)?;
            let lambda = params.real("lambda", 0.5)?;
            let mut warnings = Vec::new();
            if !(-1.0..=1.0).contains(&lambda) {
                warnings.push(format!(
                    "depolarizing: lambda = {lambda} outside the documented range [-1, 1]"
                ));
            }
            let t = choi_of_map(
                |x| {
                    x.scale(Complex64::new(lambda, 0.0)).add(
                        &ComplexMatrix::identity(n)
                            .scale(x.trace() * Complex64::new((1.0 - lambda) / n as f64, 0.0)),
                    )
                },
                n,
                n,
            )
            .expect("depolarizing action is linear");
            #[cfg(debug_assertions)]
            if n == 2 {
                depolarizing_self_check(&t, lambda);
            }
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "X ↦ λX + (1−λ)Tr(X)·I/{n} at λ = {lambda}; completely positive for λ ≥ −1/(n²−1), co-completely positive up to a mirrored threshold"
                ),
                warnings,
            }
        }
        "werner" => {
            let p = params.real("p", 0.25)?;
            let mut warnings = Vec::new();
            if !(0.0..=1.0).contains(&p) {
                warnings.push(format!(
                    "werner: p = {p} outside the documented range [0, 1]"
                ));
            }
            let x = werner_state(p);
            #[cfg(debug_assertions)]
            werner_self_check(&x, p);
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Operator(x),
                note: format!(
                    "two-qubit state p·|Ψ−⟩⟨Ψ−| + (1−p)·I/4 at p = {p}; partial transpose crosses zero at p = 1/3"
                ),
                warnings,
            }
        }
        "max_entangled" => {
            let n = params.dim("n", 2)?;
            let omega = max_entangled_vector(n);
            let x = BipartiteOperator::new(n, n, outer(&omega, &omega))
                .expect("projector is Hermitian by construction");
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Operator(x),
                note: format!(
                    "maximally entangled pure-state projector on {n}⊗{n}, trace one"
                ),
                warnings: Vec::new(),
            }
        }
        "random_cp" => {
            let n = params.dim("n", 2)?;
            let m = params.dim("m", n)?;
            let rank = params.rank("rank", 2, n * m)?;
            let t = random_cp(n, m, rank, seed);
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "completely positive map {n}→{m} from {rank} Gaussian Kraus operators (seed {seed})"
                ),
                warnings: Vec::new(),
            }
        }
        "random_block_positive" => {
            let n = params.dim("n", 2)?;
            let m = params.dim("m", n)?;
            let t = random_block_positive(n, m, seed)?;
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Map(t),
                note: format!(
                    "rejection-sampled map {n}→{m} with block-positive Choi matrix, biased away from complete positivity (seed {seed})"
                ),
                warnings: Vec::new(),
            }
        }
        "random_ppt" => {
            let n = params.dim("n", 2)?;
            let m = params.dim("m", n)?;
            let x = random_ppt(n, m, seed)?;
            GalleryEntry {
                name: name.into(),
                parameters: params.resolved(),
                object: GalleryObject::Operator(x),
                note: format!(
                    "random Hermitian projected onto the PPT ∩ trace-one set on {n}⊗{m} (seed {seed})"
                ),
                warnings: Vec::new(),
            }
        }
        _ => return Err(Error::UnknownName(name.into())),
    };
    params.finish()?;
    Ok(entry)
}

/// Collects parameter lookups so unknown keys can be reported at the end.
struct ParameterBag<'a> {
    entry: &'a str,
    raw: &'a BTreeMap<String, f64>,
    consumed: Vec<&'a str>,
    resolved: BTreeMap<String, f64>,
}

impl<'a> ParameterBag<'a> {
    fn new(entry: &'a str, raw: &'a BTreeMap<String, f64>) -> Self {
        Self {
            entry,
            raw,
            consumed: Vec::new(),
            resolved: BTreeMap::new(),
        }
    }

    fn real(&mut self, key: &'static str, default: f64) -> Result<f64> {
        let value = match self.raw.get_key_value(key) {
            Some((k, v)) => {
                self.consumed.push(k.as_str());
                *v
            }
            None => default,
        };
        if !value.is_finite() {
            return Err(Error::BadParameter {
                name: self.entry.into(),
                message: format!("{key} must be finite, got {value}"),
            });
        }
        self.resolved.insert(key.into(), value);
        Ok(value)
    }

    fn dim(&mut self, key: &'static str, default: usize) -> Result<usize> {
        let value = self.real(key, default as f64)?;
        if value.fract() != 0.0 || !(1.0..=MAX_DIM as f64).contains(&value) {
            return Err(Error::BadParameter {
                name: self.entry.into(),
                message: format!("{key} must be an integer in 1..={MAX_DIM}, got {value}"),
            });
        }
        Ok(value as usize)
    }

    fn rank(&mut self, key: &'static str, default: usize, max: usize) -> Result<usize> {
        let value = self.real(key, default.min(max) as f64)?;
        if value.fract() != 0.0 || !(1.0..=max as f64).contains(&value) {
            return Err(Error::BadParameter {
                name: self.entry.into(),
                message: format!("{key} must be an integer in 1..={max}, got {value}"),
            });
        }
        Ok(value as usize)
    }

    fn finish(self) -> Result<()> {
        for key in self.raw.keys() {
            if !self.consumed.contains(&key.as_str()) {
                return Err(Error::BadParameter {
                    name: self.entry.into(),
                    message: format!("unknown parameter {key}"),
                });
            }
        }
        Ok(())
    }

    fn resolved(&self) -> BTreeMap<String, f64> {
        self.resolved.clone()
    }
}

/// The cyclic 3×3 map: diagonal entries gain their cyclic neighbour,
/// off-diagonal entries are negated.
fn cyclic_choi3(reverse: bool) -> MapRepr {
    choi_of_map(
        |x| {
            ComplexMatrix::from_fn(3, 3, |i, j| {
                if i == j {
                    let neighbour = if reverse { (i + 2) % 3 } else { (i + 1) % 3 };
                    x[(i, i)] + x[(neighbour, neighbour)]
                } else {
                    -x[(i, j)]
                }
            })
        },
        3,
        3,
    )
    .expect("cyclic action is linear")
}

fn werner_state(p: f64) -> BipartiteOperator {
    let psi = vec![
        Complex64::ZERO,
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::ZERO,
    ];
    let m = outer(&psi, &psi)
        .scale(Complex64::new(p, 0.0))
        .add(&ComplexMatrix::identity(4).scale(Complex64::new((1.0 - p) / 4.0, 0.0)));
    BipartiteOperator::new(2, 2, m).expect("Werner state is Hermitian by construction")
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut rand_chacha::ChaCha8Rng) -> ComplexMatrix {
    use rand_distr::{Distribution, StandardNormal};
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

fn random_cp(n: usize, m: usize, rank: usize, seed: u64) -> MapRepr {
    let mut rng = start_rng(seed, 0x00C9);
    let ops: Vec<ComplexMatrix> = (0..rank)
        .map(|_| gaussian_matrix(m, n, &mut rng).scale(Complex64::new(1.0 / (n * m) as f64, 0.0)))
        .collect();
    MapRepr::from_kraus(&KrausFamily::new(n, m, ops).expect("shapes are consistent"))
}

/// Draws `CP + s·(partial transpose of CP)` mixtures, pushes PSD candidates
/// off the PSD cone by an identity shift, and keeps the first draw whose
/// Choi matrix the block-positivity oracle accepts.  At the default
/// dimensions roughly half of the draws survive, so the 200-attempt cap is
/// generous.
fn random_block_positive(n: usize, m: usize, seed: u64) -> Result<MapRepr> {
    use rand::Rng;
    const MAX_ATTEMPTS: usize = 200;
    let oracle_config = crate::cones::ConeConfig {
        solver: SolverConfig {
            starts: 80,
            ..Default::default()
        },
        mesh_points: 16,
        ..Default::default()
    };
    let mut rng = start_rng(seed, 0x00B9);
    for _ in 0..MAX_ATTEMPTS {
        let a = random_cp(n, m, 2, rng.random()).into_choi();
        let b = random_cp(n, m, 2, rng.random())
            .into_choi()
            .partial_transpose(Slot::B);
        let s = -0.75 + 2.0 * rng.random::<f64>();
        let mut candidate = a
            .hermitian()
            .scale(1.0 / a.frobenius_norm())
            .add(&b.hermitian().scale(s / b.frobenius_norm()));
        let eig = crate::linalg::herm_eig(&candidate);
        if eig.min_eigenvalue() >= -1e-12 * candidate.frobenius_norm() {
            // PSD draws are trivially block-positive; shift them just past
            // the PSD boundary so the sample is not completely positive.
            let margin = (0.05 + 0.25 * rng.random::<f64>())
                * (eig.max_eigenvalue() - eig.min_eigenvalue()).max(1e-3);
            candidate = candidate.sub(
                &HermitianMatrix::identity(candidate.dim())
                    .scale(eig.min_eigenvalue() + margin),
            );
        }
        let x = BipartiteOperator::from_hermitian(n, m, candidate)
            .expect("dimensions are consistent");
        if crate::cones::in_c_i(&x, &oracle_config).is_member() {
            return Ok(MapRepr::new(n, m, x).expect("dimensions are consistent"));
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        message: format!("no block-positive draw survived rejection at ({n}, {m})"),
    })
}

fn random_ppt(n: usize, m: usize, seed: u64) -> Result<BipartiteOperator> {
    let mut rng = start_rng(seed, 0x00D9);
    let d = n * m;
    let start = HermitianMatrix::from_symmetrized(gaussian_matrix(d, d, &mut rng));
    // The target set always contains I/d, so the plateau heuristic that
    // flags empty intersections is switched off (Dykstra residuals can
    // oscillate for hundreds of cycles from an aggressive random start);
    // the iteration cap alone bounds the work.
    let config = SolverConfig {
        feas_tol: 1e-10,
        inner_tol: 1e-300,
        max_outer_iters: 100_000,
        ..Default::default()
    };
    let psd = PsdCone;
    let pt_psd = PtPsdCone { dim_a: n, dim_b: m };
    let trace = TracePlane { target: 1.0 };
    let sets: [&dyn Projection; 3] = [&psd, &pt_psd, &trace];
    let point = dykstra(&sets, &start, &config).map_err(|e| Error::GenerationFailed {
        attempts: 1,
        message: format!("projection onto the PPT set did not converge: {e}"),
    })?;
    BipartiteOperator::from_hermitian(n, m, point)
}

#[cfg(debug_assertions)]
fn identity_choi_is_entangled_projector(t: &MapRepr, n: usize) -> bool {
    let omega = max_entangled_vector(n);
    let expected = outer(&omega, &omega).scale(Complex64::new(n as f64, 0.0));
    t.choi().matrix().sub(&expected).frobenius_norm() < 1e-12
}

#[cfg(debug_assertions)]
fn choi3_self_check(t: &MapRepr) {
    // Block-positive by the see-saw oracle, yet visibly not PSD.
    let config = crate::cones::ConeConfig {
        solver: SolverConfig {
            starts: 40,
            ..Default::default()
        },
        mesh_points: 12,
        ..Default::default()
    };
    debug_assert!(crate::cones::in_c_i(t.choi(), &config).is_member());
    debug_assert!(crate::linalg::herm_eig(t.choi().hermitian()).min_eigenvalue() < -0.5);
}

#[cfg(debug_assertions)]
fn depolarizing_self_check(t: &MapRepr, lambda: f64) {
    // Closed-form spectra at n = 2: Choi {2λ + (1−λ)/2, (1−λ)/2} and its
    // partial transpose {(1−λ)/2 ± λ}.
    let eig = crate::linalg::herm_eig(t.choi().hermitian());
    let expected_max = f64::max(2.0 * lambda + (1.0 - lambda) / 2.0, (1.0 - lambda) / 2.0);
    let expected_min = f64::min(2.0 * lambda + (1.0 - lambda) / 2.0, (1.0 - lambda) / 2.0);
    debug_assert!((eig.max_eigenvalue() - expected_max).abs() < 1e-10);
    debug_assert!((eig.min_eigenvalue() - expected_min).abs() < 1e-10);
    let pt = crate::linalg::herm_eig(t.choi().partial_transpose(Slot::B).hermitian());
    debug_assert!((pt.min_eigenvalue() - ((1.0 - lambda) / 2.0 - lambda.abs())).abs() < 1e-10);
}

#[cfg(debug_assertions)]
fn werner_self_check(x: &BipartiteOperator, p: f64) {
    let pt = crate::linalg::herm_eig(x.partial_transpose(Slot::B).hermitian());
    debug_assert!((pt.min_eigenvalue() - (1.0 - 3.0 * p) / 4.0).abs() < 1e-12);
}
