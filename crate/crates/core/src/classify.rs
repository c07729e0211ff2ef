//! Map-level positivity classification: positivity, k-positivity, complete
//! and co-complete positivity, decomposability and super-positivity, all
//! decided through cone membership of the Choi matrix and fused into one
//! report that never contradicts the implication chain
//!
//! ```text
//! super_positive ⇒ cp ⇒ decomposable ⇒ positive
//! co_cp ⇒ decomposable;   cp ⇒ k-positive ⇒ … ⇒ 1-positive = positive
//! ```
//!
//! Heuristic YES verdicts (one-sided searches) are recorded as such; when a
//! certified NO elsewhere implies a NO for a heuristic slot, the certificate
//! is inherited instead of silently keeping the optimistic answer, and every
//! such adjustment is logged in the report notes.

use std::time::Instant;

use crate::choi::MapRepr;
use crate::cones::{
    in_c_cp, in_c_i, in_c_p, verify_certificate, Certificate, ConeConfig, Decision, Diagnostics,
    Verdict,
};
use crate::error::Result;
use crate::linalg::{schmidt, BipartiteOperator, Slot};
use crate::solver::{decomposability_split, min_schmidt_k, verify_split, SplitResult};

/// A verdict plus how it was obtained: wall-clock cost and whether a MEMBER
/// decision rests on a one-sided search rather than a certificate/theorem.
#[derive(Debug, Clone)]
pub struct RecordedVerdict {
    pub verdict: Verdict,
    pub heuristic: bool,
    pub wall_ms: f64,
}

impl RecordedVerdict {
    fn decision(&self) -> Decision {
        self.verdict.decision
    }
}

/// Complete classification of one map, with certificates, per-test timing,
/// the configuration echo, and the fusion log.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub positive: RecordedVerdict,
    /// `(k, verdict)` for `k = 1..=min(dim_in, dim_out)`; k-positivity
    /// coincides with complete positivity at the cap, so larger k are
    /// redundant.
    pub k_positive: Vec<(usize, RecordedVerdict)>,
    pub cp: RecordedVerdict,
    pub co_cp: RecordedVerdict,
    pub decomposable: RecordedVerdict,
    pub super_positive: RecordedVerdict,
    pub config: ConeConfig,
    /// Human-readable log of every fusion adjustment (inherited witnesses,
    /// downgrades) applied to the raw verdicts.
    pub notes: Vec<String>,
}

/// Positivity of the map = block positivity of its Choi matrix.  MEMBER is
/// heuristic (no counterexample at the recorded effort).
pub fn is_positive(t: &MapRepr, config: &ConeConfig) -> Verdict {
    in_c_i(t.choi(), config)
}

/// k-positivity via minimisation over Schmidt-rank-≤ k vectors against the
/// Choi matrix.  A negative value yields NO with a witness vector of the
/// stated rank; otherwise YES with the same one-sided semantics as
/// [`is_positive`].
pub fn is_k_positive(t: &MapRepr, k: usize, config: &ConeConfig) -> Result<Verdict> {
    let choi = t.choi();
    let outcome = min_schmidt_k(choi, k, &config.solver)?;
    let scale = f64::max(1.0, choi.frobenius_norm());
    let diagnostics = Diagnostics {
        min_value_found: outcome.value,
        starts_used: outcome.starts_used,
        iterations: outcome.iterations,
    };
    if outcome.value < -config.tol * scale {
        let certificate = if k == 1 {
            // A rank-one witness is a product vector; expose its factors so
            // the certificate is directly comparable with block-positivity
            // witnesses.
            let parts = schmidt(&outcome.vector, choi.dim_a(), choi.dim_b());
            Certificate::ProductWitness {
                f: parts.left[0].clone(),
                g: parts.right[0].clone(),
            }
        } else {
            Certificate::SpectralWitness {
                v: outcome.vector,
                eigenvalue: outcome.value,
            }
        };
        Ok(Verdict {
            decision: Decision::NotMember,
            certificate: Some(certificate),
            diagnostics,
        })
    } else {
        Ok(Verdict {
            decision: Decision::Member,
            certificate: None,
            diagnostics,
        })
    }
}

/// Complete positivity: the Choi matrix is PSD.  Exact up to the tolerance.
pub fn is_cp(t: &MapRepr, tol: f64) -> Verdict {
    in_c_cp(t.choi(), tol)
}

/// Co-complete positivity: composition with the transpose is CP, i.e. the
/// partially transposed Choi matrix is PSD.
pub fn is_co_cp(t: &MapRepr, tol: f64) -> Verdict {
    in_c_cp(&t.choi().partial_transpose(Slot::B), tol)
}

/// Decomposability: the Choi matrix splits as `A + PT(B)` with both parts
/// PSD (YES, parts attached), or a PPT state pairs negatively with it (NO),
/// or neither could be certified (UNKNOWN).
pub fn is_decomposable(t: &MapRepr, config: &ConeConfig) -> Verdict {
    let choi = t.choi();
    match decomposability_split(choi, &config.solver) {
        SplitResult::Split { a, b } => {
            let residual = verify_split(choi, &a, &b, config.solver.feas_tol)
                .expect("split returned by the solver re-verifies");
            Verdict {
                decision: Decision::Member,
                certificate: Some(Certificate::ConeSplit { a, b }),
                diagnostics: Diagnostics {
                    min_value_found: residual,
                    starts_used: 1,
                    iterations: 0,
                },
            }
        }
        SplitResult::Witness { rho, pairing_value } => Verdict {
            decision: Decision::NotMember,
            certificate: Some(Certificate::PptWitnessState { rho }),
            diagnostics: Diagnostics {
                min_value_found: pairing_value,
                starts_used: 1,
                iterations: 0,
            },
        },
        SplitResult::Undecided { residual } => Verdict {
            decision: Decision::Unknown,
            certificate: None,
            diagnostics: Diagnostics {
                min_value_found: residual,
                starts_used: 1,
                iterations: 0,
            },
        },
    }
}

/// Super-positivity (entanglement-breaking direction): the Choi matrix is
/// separable.
pub fn is_super_positive(t: &MapRepr, config: &ConeConfig) -> Verdict {
    in_c_p(t.choi(), config)
}

/// Runs the full battery against one map and fuses the verdicts.
pub fn classify_map(t: &MapRepr, config: &ConeConfig) -> ClassificationReport {
    let timed = |v: Verdict, heuristic_member: bool, started: Instant| RecordedVerdict {
        heuristic: heuristic_member && v.decision == Decision::Member,
        verdict: v,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    };

    let start = Instant::now();
    let positive = timed(is_positive(t, config), true, start);

    let k_max = t.dim_in().min(t.dim_out());
    let mut k_positive = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let start = Instant::now();
        let v = is_k_positive(t, k, config).expect("k ranges over 1..=min(dims)");
        k_positive.push((k, timed(v, true, start)));
    }

    let start = Instant::now();
    let cp = timed(is_cp(t, config.tol), false, start);
    let start = Instant::now();
    let co_cp = timed(is_co_cp(t, config.tol), false, start);
    let start = Instant::now();
    let decomposable = timed(is_decomposable(t, config), false, start);
    let start = Instant::now();
    let super_positive = timed(is_super_positive(t, config), false, start);

    let mut report = ClassificationReport {
        positive,
        k_positive,
        cp,
        co_cp,
        decomposable,
        super_positive,
        config: config.clone(),
        notes: Vec::new(),
    };
    enforce_chain(t.choi(), &mut report);
    report
}

/// Fusion pass: share witnesses between equivalent tests, propagate
/// certified NOs along the implication chain, and downgrade whichever side
/// of a residual contradiction does not survive re-verification.
fn enforce_chain(choi: &BipartiteOperator, report: &mut ClassificationReport) {
    let config = report.config.clone();
    let ClassificationReport {
        positive,
        k_positive,
        cp,
        co_cp,
        decomposable,
        super_positive,
        notes,
        ..
    } = &mut *report;

    // Positivity and 1-positivity test the same property with different
    // engines; a certified NO on either side decides both.
    if let Some((1, slot)) = k_positive.first_mut().map(|(k, v)| (*k, v)) {
        if positive.decision() == Decision::NotMember && slot.decision() == Decision::Member {
            slot.verdict.decision = Decision::NotMember;
            slot.verdict.certificate = positive.verdict.certificate.clone();
            slot.verdict.diagnostics.min_value_found =
                positive.verdict.diagnostics.min_value_found;
            slot.heuristic = false;
            notes.push("1-positive: YES overturned by the positivity witness".into());
        } else if slot.decision() == Decision::NotMember
            && positive.decision() == Decision::Member
        {
            positive.verdict.decision = Decision::NotMember;
            positive.verdict.certificate = slot.verdict.certificate.clone();
            positive.verdict.diagnostics.min_value_found =
                slot.verdict.diagnostics.min_value_found;
            positive.heuristic = false;
            notes.push("positive: YES overturned by the rank-1 witness".into());
        }
    }

    // A Schmidt-rank-≤ k witness is also a rank-≤ k' witness for k' > k:
    // propagate certified NOs upward over optimistic slots.
    let mut inherited: Option<(usize, Option<Certificate>, f64)> = None;
    for (k, slot) in k_positive.iter_mut() {
        match slot.decision() {
            Decision::NotMember => {
                if inherited.is_none() {
                    inherited = Some((
                        *k,
                        slot.verdict.certificate.clone(),
                        slot.verdict.diagnostics.min_value_found,
                    ));
                }
            }
            Decision::Member | Decision::Unknown => {
                if let Some((from_k, cert, value)) = &inherited {
                    slot.verdict.decision = Decision::NotMember;
                    slot.verdict.certificate = cert.clone();
                    slot.verdict.diagnostics.min_value_found = *value;
                    slot.heuristic = false;
                    notes.push(format!(
                        "{k}-positive: overturned by the rank-{from_k} witness"
                    ));
                }
            }
        }
    }

    // Residual contradictions along the implication chain.  These only
    // arise from borderline numerics; the resolution is to keep whichever
    // side re-verifies and downgrade the other to UNKNOWN.
    let mut resolutions: Vec<String> = Vec::new();
    let mut conflict = |name_x: &str,
                        x: &mut RecordedVerdict,
                        name_y: &str,
                        y: &mut RecordedVerdict| {
        if x.decision() != Decision::Member || y.decision() != Decision::NotMember {
            return;
        }
        if verify_certificate(choi, &y.verdict, &config).is_err() {
            y.verdict.decision = Decision::Unknown;
            y.verdict.certificate = None;
            resolutions.push(format!(
                "{name_y}: NO downgraded to UNKNOWN (certificate failed re-verification against {name_x} YES)"
            ));
        } else if x.heuristic {
            x.verdict.decision = Decision::Unknown;
            x.verdict.certificate = None;
            x.heuristic = false;
            resolutions.push(format!(
                "{name_x}: heuristic YES downgraded to UNKNOWN (contradicts certified {name_y} NO)"
            ));
        } else {
            x.verdict.decision = Decision::Unknown;
            x.verdict.certificate = None;
            resolutions.push(format!(
                "{name_x}: YES downgraded to UNKNOWN (inconsistent with {name_y} at tolerance)"
            ));
        }
    };

    conflict("super_positive", super_positive, "cp", cp);
    conflict("cp", cp, "decomposable", decomposable);
    conflict("co_cp", co_cp, "decomposable", decomposable);
    conflict("decomposable", decomposable, "positive", positive);
    for (k, slot) in k_positive.iter_mut() {
        conflict("cp", cp, &format!("{k}-positive"), slot);
    }
    for i in (1..k_positive.len()).rev() {
        let (left, right) = k_positive.split_at_mut(i);
        let (k_hi, hi) = &mut right[0];
        let (k_lo, lo) = &mut left[i - 1];
        let name_hi = format!("{k_hi}-positive");
        let name_lo = format!("{k_lo}-positive");
        conflict(&name_hi, hi, &name_lo, lo);
    }
    notes.extend(resolutions);
}

/// Re-validates an entire report from the map alone: every certificate is
/// re-checked (including the Schmidt-rank bound of k-positivity witnesses)
/// and the implication chain is confirmed on decided verdicts.
pub fn verify_report(
    t: &MapRepr,
    report: &ClassificationReport,
    config: &ConeConfig,
) -> std::result::Result<(), String> {
    let choi = t.choi();
    let named: Vec<(String, &RecordedVerdict)> = std::iter::empty()
        .chain([
            ("positive".to_string(), &report.positive),
            ("cp".to_string(), &report.cp),
            ("co_cp".to_string(), &report.co_cp),
            ("decomposable".to_string(), &report.decomposable),
            ("super_positive".to_string(), &report.super_positive),
        ])
        .chain(
            report
                .k_positive
                .iter()
                .map(|(k, v)| (format!("{k}-positive"), v)),
        )
        .collect();
    for (name, recorded) in &named {
        verify_certificate(choi, &recorded.verdict, config)
            .map_err(|e| format!("{name}: {e}"))?;
    }
    for (k, recorded) in &report.k_positive {
        if let Some(Certificate::SpectralWitness { v, .. }) = &recorded.verdict.certificate {
            let rank = schmidt(v, choi.dim_a(), choi.dim_b()).rank(1e-8);
            if rank > *k {
                return Err(format!(
                    "{k}-positive: witness has Schmidt rank {rank} > {k}"
                ));
            }
        }
    }

    let get = |name: &str| {
        named
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.decision())
            .expect("fixed report field")
    };
    let mut implications: Vec<(String, String)> = vec![
        ("super_positive".into(), "cp".into()),
        ("cp".into(), "decomposable".into()),
        ("co_cp".into(), "decomposable".into()),
        ("decomposable".into(), "positive".into()),
        ("positive".into(), "1-positive".into()),
        ("1-positive".into(), "positive".into()),
    ];
    for (k, _) in &report.k_positive {
        implications.push(("cp".into(), format!("{k}-positive")));
        if *k > 1 {
            implications.push((format!("{k}-positive"), format!("{}-positive", k - 1)));
        }
    }
    for (x, y) in implications {
        if get(&x) == Decision::Member && get(&y) == Decision::NotMember {
            return Err(format!("implication {x} ⇒ {y} violated"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choi::{choi_of_map, co_compose, KrausFamily};
    use crate::linalg::{outer, ComplexMatrix, HermitianMatrix};
    use crate::solver::SolverConfig;
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;

    fn quick_config() -> ConeConfig {
        ConeConfig {
            solver: SolverConfig {
                starts: 40,
                ..Default::default()
            },
            ..Default::default()
        }
    }

    fn transpose_map(n: usize) -> MapRepr {
        choi_of_map(|x| x.transpose(), n, n).unwrap()
    }

    fn identity_map(n: usize) -> MapRepr {
        choi_of_map(|x| x.clone(), n, n).unwrap()
    }

    fn reduction_map(n: usize) -> MapRepr {
        choi_of_map(
            |x| {
                ComplexMatrix::identity(n)
                    .scale(x.trace())
                    .sub(x)
            },
            n,
            n,
        )
        .unwrap()
    }

    fn decision_of(r: &RecordedVerdict) -> Decision {
        r.verdict.decision
    }

    #[test]
    fn transpose_on_m2_matches_its_known_profile() {
        let t = transpose_map(2);
        let config = quick_config();
        let report = classify_map(&t, &config);
        assert_eq!(decision_of(&report.positive), Decision::Member);
        assert_eq!(report.k_positive[0].1.verdict.decision, Decision::Member);
        assert_eq!(report.k_positive[1].1.verdict.decision, Decision::NotMember);
        assert!(
            (report.k_positive[1].1.verdict.diagnostics.min_value_found + 1.0).abs() < 1e-8,
            "2-positivity floor should be -1"
        );
        assert_eq!(decision_of(&report.cp), Decision::NotMember);
        assert_eq!(decision_of(&report.co_cp), Decision::Member);
        assert_eq!(decision_of(&report.decomposable), Decision::Member);
        assert_eq!(decision_of(&report.super_positive), Decision::NotMember);
        verify_report(&t, &report, &config).unwrap();
    }

    #[test]
    fn identity_on_m2_matches_its_known_profile() {
        let t = identity_map(2);
        let config = quick_config();
        let report = classify_map(&t, &config);
        assert_eq!(decision_of(&report.positive), Decision::Member);
        for (_, slot) in &report.k_positive {
            assert_eq!(slot.verdict.decision, Decision::Member);
        }
        assert_eq!(decision_of(&report.cp), Decision::Member);
        assert_eq!(decision_of(&report.co_cp), Decision::NotMember);
        assert_eq!(decision_of(&report.decomposable), Decision::Member);
        assert_eq!(decision_of(&report.super_positive), Decision::NotMember);
        verify_report(&t, &report, &config).unwrap();
    }

    #[test]
    fn zero_map_is_member_of_everything() {
        let t = choi_of_map(|x| ComplexMatrix::zeros(x.rows(), x.cols()), 2, 2).unwrap();
        let config = quick_config();
        let report = classify_map(&t, &config);
        assert_eq!(decision_of(&report.positive), Decision::Member);
        assert_eq!(decision_of(&report.cp), Decision::Member);
        assert_eq!(decision_of(&report.co_cp), Decision::Member);
        assert_eq!(decision_of(&report.decomposable), Decision::Member);
        assert_eq!(decision_of(&report.super_positive), Decision::Member);
    }

    #[test]
    fn reduction_map_on_m3_loses_positivity_at_k_two() {
        let t = reduction_map(3);
        let config = quick_config();
        let report = classify_map(&t, &config);
        assert_eq!(decision_of(&report.positive), Decision::Member);
        assert_eq!(report.k_positive[0].1.verdict.decision, Decision::Member);
        assert_eq!(report.k_positive[1].1.verdict.decision, Decision::NotMember);
        assert!(
            (report.k_positive[1].1.verdict.diagnostics.min_value_found + 1.0).abs() < 1e-7
        );
        assert_eq!(report.k_positive[2].1.verdict.decision, Decision::NotMember);
        assert_eq!(decision_of(&report.cp), Decision::NotMember);
        assert_eq!(decision_of(&report.co_cp), Decision::Member);
        assert_eq!(decision_of(&report.decomposable), Decision::Member);
        verify_report(&t, &report, &config).unwrap();
    }

    #[test]
    fn rank_one_kraus_map_is_super_positive() {
        let f = vec![
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        ];
        let g = vec![
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ];
        // V = |g⟩⟨f| applies a ⟼ ⟨f|a|f⟩ |g⟩⟨g|; the Choi matrix is the
        // product state conj(|f⟩⟨f|) ⊗ |g⟩⟨g|.
        let v = outer(&g, &f);
        let family = KrausFamily::new(2, 2, vec![v]).unwrap();
        let t = MapRepr::from_kraus(&family);
        let config = quick_config();
        let report = classify_map(&t, &config);
        assert_eq!(decision_of(&report.super_positive), Decision::Member);
        assert_eq!(decision_of(&report.cp), Decision::Member);
        verify_report(&t, &report, &config).unwrap();
    }

    #[test]
    fn fusion_propagates_a_rank_witness_upward() {
        let t = reduction_map(3);
        let config = quick_config();
        let mut report = classify_map(&t, &config);
        // Forge an optimistic 3-positive YES and let fusion repair it from
        // the certified rank-2 witness.
        report.k_positive[2].1.verdict.decision = Decision::Member;
        report.k_positive[2].1.verdict.certificate = None;
        report.k_positive[2].1.heuristic = true;
        enforce_chain(t.choi(), &mut report);
        assert_eq!(report.k_positive[2].1.verdict.decision, Decision::NotMember);
        assert!(report.k_positive[2].1.verdict.certificate.is_some());
        assert!(report.notes.iter().any(|n| n.contains("3-positive")));
        verify_report(&t, &report, &config).unwrap();
    }

    #[test]
    fn conflicting_verdict_with_bad_certificate_is_downgraded() {
        let t = identity_map(2);
        let config = quick_config();
        let mut report = classify_map(&t, &config);
        // Forge a decomposable NO whose witness is a real PPT state but
        // pairs positively with the PSD Choi matrix: the certificate cannot
        // re-verify, so the NO — not the certified cp YES — must give way.
        let mixed = BipartiteOperator::new(
            2,
            2,
            ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0)),
        )
        .unwrap();
        report.decomposable.verdict.decision = Decision::NotMember;
        report.decomposable.verdict.certificate =
            Some(Certificate::PptWitnessState { rho: mixed });
        report.decomposable.verdict.diagnostics.min_value_found = -0.5;
        enforce_chain(t.choi(), &mut report);
        assert_eq!(report.decomposable.verdict.decision, Decision::Unknown);
        assert!(report.notes.iter().any(|n| n.contains("decomposable")));
        assert_eq!(report.cp.verdict.decision, Decision::Member);
    }

    #[test]
    fn chain_holds_on_random_map_families() {
        let config = ConeConfig {
            solver: SolverConfig {
                starts: 25,
                ..Default::default()
            },
            ..Default::default()
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for case in 0..12 {
            let t = match case % 3 {
                0 => {
                    // Random CP map from two Kraus operators.
                    let ops = (0..2)
                        .map(|_| {
                            ComplexMatrix::from_fn(2, 2, |_, _| {
                                Complex64::new(
                                    rng.random::<f64>() - 0.5,
                                    rng.random::<f64>() - 0.5,
                                )
                            })
                        })
                        .collect();
                    MapRepr::from_kraus(&KrausFamily::new(2, 2, ops).unwrap())
                }
                1 => {
                    let ops = (0..2)
                        .map(|_| {
                            ComplexMatrix::from_fn(2, 2, |_, _| {
                                Complex64::new(
                                    rng.random::<f64>() - 0.5,
                                    rng.random::<f64>() - 0.5,
                                )
                            })
                        })
                        .collect();
                    co_compose(&MapRepr::from_kraus(&KrausFamily::new(2, 2, ops).unwrap()))
                }
                _ => {
                    // Random Hermitian Choi matrix: generically not positive.
                    let h = HermitianMatrix::from_symmetrized(ComplexMatrix::from_fn(
                        4,
                        4,
                        |_, _| {
                            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                        },
                    ));
                    MapRepr::new(2, 2, BipartiteOperator::from_hermitian(2, 2, h).unwrap())
                        .unwrap()
                }
            };
            let report = classify_map(&t, &config);
            verify_report(&t, &report, &config)
                .unwrap_or_else(|e| panic!("case {case}: {e}"));
        }
    }

    #[test]
    fn positive_maps_send_psd_to_psd_in_trace_pairing() {
        fn random_psd(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> ComplexMatrix {
            let g = ComplexMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            g.matmul(&g.dagger())
        }
        let config = quick_config();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let ops = vec![
                ComplexMatrix::from_fn(2, 2, |_, _| {
                    Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                }),
            ];
            let t = MapRepr::from_kraus(&KrausFamily::new(2, 2, ops).unwrap());
            assert_eq!(is_positive(&t, &config).decision, Decision::Member);
            let a = random_psd(&mut rng, 2);
            let b = random_psd(&mut rng, 2);
            let value = crate::choi::apply(&t, &a)
                .unwrap()
                .matmul(&b)
                .trace()
                .re;
            assert!(value >= -1e-8, "Tr(T(a)·b) = {value}");
        }
    }
}
