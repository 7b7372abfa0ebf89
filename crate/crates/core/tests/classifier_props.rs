//! Randomized checks of the surface-probe classifier and the definiteness
//! baseline against separable polynomial objectives whose stationary points
//! and curvature signs are known exactly by construction (see `common`).

mod common;

use common::{planted_strategy, Planted};
use extrema::{
    classify_all, hessian_verdict, separation_distances, solve_stationary, BaselineVerdict,
    Completeness, ProbeConfig, SolveConfig, Verdict,
};
use proptest::prelude::*;

fn solved(p: &Planted) -> extrema::SolveOutcome {
    let cfg = SolveConfig {
        max_boxes: 1_000_000,
        ..SolveConfig::default()
    };
    let out = solve_stationary(&p.system(), &p.domain(), &cfg).expect("smooth polynomial");
    assert_eq!(out.completeness, Completeness::Complete);
    out
}

/// Kind implied by the planted per-axis curvature signs.
fn planted_verdict(signs: &[f64]) -> Verdict {
    if signs.iter().all(|&s| s > 0.0) {
        Verdict::Minimum
    } else if signs.iter().all(|&s| s < 0.0) {
        Verdict::Maximum
    } else {
        Verdict::Saddle
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Whatever the classifier decides must agree with the planted curvature
    /// pattern; undecided is always permitted. Evidence bookkeeping must
    /// stay consistent regardless.
    #[test]
    fn decided_verdicts_match_planted_curvature(p in planted_strategy(1..=3)) {
        let sys = p.system();
        let domain = p.domain();
        let out = solved(&p);
        let seps = separation_distances(&out.candidates, &domain);
        let cfg = ProbeConfig { retry_limit: 10, ..ProbeConfig::default() };
        let results = classify_all(&sys, &out.candidates, &domain, &cfg, None);

        let points = p.grid_points();
        let indices = p.grid_indices();
        for ((cand, result), &sep) in out.candidates.iter().zip(&results).zip(&seps) {
            let c = result.as_ref().expect("probes fit in the planted domain");
            let e = &c.evidence;
            let n = p.dim();
            prop_assert_eq!(e.faces.len(), 2 * n);
            prop_assert_eq!(e.n_intersect + e.n_greater + e.n_less, 2 * n);
            prop_assert!(e.epsilon_used > 0.0);
            prop_assert!(e.epsilon_used <= sep / 2.0);
            prop_assert_eq!(e.evaluations, (e.retries + 1) * (2 * n + 1));

            let planted_idx = points
                .iter()
                .position(|gp| cand.enclosure.contains_point(gp))
                .expect("every enclosure holds a planted point");
            let expected = planted_verdict(&p.curvature_signs(&indices[planted_idx]));
            match c.verdict {
                Verdict::Undecided => {}
                v => prop_assert_eq!(v, expected),
            }
        }
    }

    /// Classification is a pure function of its inputs: two runs agree to
    /// the last bit of every evidence field.
    #[test]
    fn classification_is_deterministic(p in planted_strategy(1..=2)) {
        let sys = p.system();
        let domain = p.domain();
        let out = solved(&p);
        let cfg = ProbeConfig::default();
        let first = classify_all(&sys, &out.candidates, &domain, &cfg, None);
        let second = classify_all(&sys, &out.candidates, &domain, &cfg, None);
        prop_assert_eq!(format!("{first:?}"), format!("{second:?}"));
    }

    /// Where the pointwise definiteness test succeeds with a comfortable
    /// margin, the probe classifier must reach the same conclusion — the
    /// baseline's wins are a subset of the verified method's.
    #[test]
    fn baseline_extrema_are_confirmed_by_probes(p in planted_strategy(1..=3)) {
        let sys = p.system();
        let domain = p.domain();
        let out = solved(&p);
        let cfg = ProbeConfig { retry_limit: 10, ..ProbeConfig::default() };
        let results = classify_all(&sys, &out.candidates, &domain, &cfg, None);

        let zero_tol = 1e-9;
        for (cand, result) in out.candidates.iter().zip(&results) {
            let mid = cand.enclosure.midpoint().unwrap();
            let baseline = hessian_verdict(&sys, &mid, zero_tol).unwrap();
            let comfortable = baseline
                .minors
                .iter()
                .all(|m| m.abs() > 10.0 * zero_tol);
            if !comfortable {
                continue;
            }
            let expected = match baseline.verdict {
                BaselineVerdict::Minimum => Verdict::Minimum,
                BaselineVerdict::Maximum => Verdict::Maximum,
                BaselineVerdict::InconclusiveOrSaddle => continue,
            };
            let c = result.as_ref().unwrap();
            prop_assert_eq!(c.verdict, expected);
        }
    }

    /// For 2x2 quadratic forms the minor test must agree with the sign
    /// pattern of the closed-form eigenvalues whenever neither eigenvalue
    /// sits near zero.
    #[test]
    fn minor_test_agrees_with_closed_form_eigenvalues(
        a in (-16i32..=16).prop_map(|v| v as f64 / 8.0),
        b in (-16i32..=16).prop_map(|v| v as f64 / 8.0),
        c in (-16i32..=16).prop_map(|v| v as f64 / 8.0),
    ) {
        let formula = format!("{a} * x1^2 + {b} * x1 * x2 + {c} * x2^2");
        let sys = extrema::build_gradient_system(
            extrema::Expression::parse(&formula, 2).unwrap(),
        );
        let report = hessian_verdict(&sys, &[0.0, 0.0], 1e-9).unwrap();
        let (l1, l2) = report.two_dim.as_ref().unwrap().eigenvalues;
        prop_assume!(l1.abs() > 1e-8 && l2.abs() > 1e-8);
        let expected = if l1 > 0.0 && l2 > 0.0 {
            BaselineVerdict::Minimum
        } else if l1 < 0.0 && l2 < 0.0 {
            BaselineVerdict::Maximum
        } else {
            BaselineVerdict::InconclusiveOrSaddle
        };
        prop_assert_eq!(report.verdict, expected);
    }
}
