//! Report assembly and rendering.
//!
//! Every number in the JSON report is a shortest-round-trip decimal string,
//! so endpoints re-parse to identical bits. The report is deterministic
//! byte-for-byte for a given problem and configuration, with one exception:
//! `timing_ms`, which is only populated when counters are requested.

use std::fmt::Write as _;

use extrema::{
    CandidateStatus, Classification, ClassifyError, Completeness, EigenSigns, HessianReport,
    SolveOutcome, Verdict,
};
use serde::Serialize;

use crate::problem::ProblemFile;

#[derive(Serialize)]
pub struct Report {
    pub formula: String,
    pub dimension: usize,
    /// Per-axis `[lo, hi]` endpoint strings.
    pub domain: Vec<[String; 2]>,
    /// Distance norm used for separations: always the max norm.
    pub norm: &'static str,
    pub config: ConfigEcho,
    pub completeness: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    pub candidates: Vec<CandidateRecord>,
    pub totals: Totals,
    /// Wall-clock solve+classify time; present only when counters were
    /// requested, and excluded from determinism guarantees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub tol_x: String,
    pub max_boxes: usize,
    pub retry_limit: usize,
    pub zero_tol: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
}

#[derive(Serialize)]
pub struct CandidateRecord {
    pub index: usize,
    pub status: &'static str,
    pub enclosure: Vec<[String; 2]>,
    pub value: [String; 2],
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<EvidenceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BaselineRecord>,
}

#[derive(Serialize)]
pub struct EvidenceRecord {
    pub reference: [String; 2],
    pub faces: Vec<[String; 2]>,
    pub n_intersect: usize,
    pub n_greater: usize,
    pub n_less: usize,
    pub epsilon: String,
    pub retries: usize,
    pub evaluations: usize,
}

#[derive(Serialize)]
pub struct BaselineRecord {
    pub verdict: String,
    pub minors: Vec<String>,
    pub eigen_signs: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_dim: Option<TwoDimRecord>,
}

#[derive(Serialize)]
pub struct TwoDimRecord {
    pub f11: String,
    pub f22: String,
    pub det: String,
    pub eigenvalues: [String; 2],
}

#[derive(Serialize)]
pub struct Totals {
    pub candidates: usize,
    pub decided: usize,
    pub undecided: usize,
    pub errors: usize,
    /// Sum over candidates of (2n+1) per probe round.
    pub objective_evaluations: usize,
    pub boxes_processed: usize,
}

fn s(x: f64) -> String {
    format!("{x}")
}

fn interval_strings(iv: extrema::Interval) -> [String; 2] {
    [s(iv.lo()), s(iv.hi())]
}

pub struct ReportInputs<'a> {
    pub problem: &'a ProblemFile,
    pub tol_x: f64,
    pub max_boxes: usize,
    pub retry_limit: usize,
    pub zero_tol: f64,
    pub epsilon: Option<f64>,
    pub outcome: &'a SolveOutcome,
    pub classifications: &'a [Result<Classification, ClassifyError>],
    pub baselines: &'a [Option<HessianReport>],
    pub timing_ms: Option<f64>,
}

pub fn build_report(inp: &ReportInputs) -> Report {
    let mut candidates = Vec::with_capacity(inp.outcome.candidates.len());
    let mut decided = 0;
    let mut undecided = 0;
    let mut errors = 0;
    let mut evaluations = 0;

    for (index, cand) in inp.outcome.candidates.iter().enumerate() {
        let classification = &inp.classifications[index];
        let (verdict, error, evidence) = match classification {
            Ok(c) => {
                if c.verdict == Verdict::Undecided {
                    undecided += 1;
                } else {
                    decided += 1;
                }
                evaluations += c.evidence.evaluations;
                (
                    c.verdict.to_string(),
                    None,
                    Some(EvidenceRecord {
                        reference: interval_strings(c.evidence.reference),
                        faces: c.evidence.faces.iter().map(|&f| interval_strings(f)).collect(),
                        n_intersect: c.evidence.n_intersect,
                        n_greater: c.evidence.n_greater,
                        n_less: c.evidence.n_less,
                        epsilon: s(c.evidence.epsilon_used),
                        retries: c.evidence.retries,
                        evaluations: c.evidence.evaluations,
                    }),
                )
            }
            Err(e) => {
                errors += 1;
                ("error".to_string(), Some(e.to_string()), None)
            }
        };
        candidates.push(CandidateRecord {
            index,
            status: match cand.status {
                CandidateStatus::VerifiedUnique => "verified-unique",
                CandidateStatus::Possible => "possible",
            },
            enclosure: cand
                .enclosure
                .coords()
                .iter()
                .map(|&c| interval_strings(c))
                .collect(),
            value: interval_strings(cand.value),
            verdict,
            error,
            evidence,
            baseline: inp.baselines[index].as_ref().map(baseline_record),
        });
    }

    Report {
        formula: inp.problem.formula.clone(),
        dimension: inp.problem.dimension,
        domain: inp
            .problem
            .domain
            .iter()
            .map(|&(lo, hi)| [s(lo), s(hi)])
            .collect(),
        norm: "linf",
        config: ConfigEcho {
            tol_x: s(inp.tol_x),
            max_boxes: inp.max_boxes,
            retry_limit: inp.retry_limit,
            zero_tol: s(inp.zero_tol),
            epsilon: inp.epsilon.map(s),
        },
        completeness: match inp.outcome.completeness {
            Completeness::Complete => "complete",
            Completeness::Truncated => "truncated",
        },
        diagnostic: inp.outcome.diagnostic.clone(),
        candidates,
        totals: Totals {
            candidates: inp.outcome.candidates.len(),
            decided,
            undecided,
            errors,
            objective_evaluations: evaluations,
            boxes_processed: inp.outcome.boxes_processed,
        },
        timing_ms: inp.timing_ms,
    }
}

fn baseline_record(r: &HessianReport) -> BaselineRecord {
    BaselineRecord {
        verdict: r.verdict.to_string(),
        minors: r.minors.iter().map(|&m| s(m)).collect(),
        eigen_signs: match r.eigen_signs {
            EigenSigns::AllPositive => "all-positive",
            EigenSigns::AllNegative => "all-negative",
            EigenSigns::Mixed => "mixed",
            EigenSigns::HasZeroWithinTolerance => "has-zero-within-tolerance",
        },
        two_dim: r.two_dim.map(|d| TwoDimRecord {
            f11: s(d.f11),
            f22: s(d.f22),
            det: s(d.det),
            eigenvalues: [s(d.eigenvalues.0), s(d.eigenvalues.1)],
        }),
    }
}

/// Human-readable table. Counters (and timing) appear only on request so the
/// default output is reproducible byte-for-byte.
pub fn render_text(report: &Report, show_counters: bool) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "formula: {}", report.formula);
    let _ = writeln!(w, "dimension: {}", report.dimension);
    let domain = report
        .domain
        .iter()
        .map(|[lo, hi]| format!("[{lo}, {hi}]"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(w, "domain: {domain}");
    let _ = writeln!(
        w,
        "solver: {} ({} boxes processed)",
        report.completeness, report.totals.boxes_processed
    );
    if let Some(d) = &report.diagnostic {
        let _ = writeln!(w, "note: {d}");
    }

    for c in &report.candidates {
        let _ = writeln!(w);
        let _ = writeln!(w, "candidate {}: {}", c.index, c.status);
        let enclosure = c
            .enclosure
            .iter()
            .map(|[lo, hi]| format!("[{lo}, {hi}]"))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(w, "  enclosure: {enclosure}");
        let _ = writeln!(w, "  value: [{}, {}]", c.value[0], c.value[1]);
        match (&c.evidence, &c.error) {
            (Some(e), _) => {
                let _ = writeln!(
                    w,
                    "  verdict: {} (epsilon {}, retries {}; faces above {}, below {}, overlapping {})",
                    c.verdict, e.epsilon, e.retries, e.n_less, e.n_greater, e.n_intersect
                );
            }
            (None, Some(err)) => {
                let _ = writeln!(w, "  verdict: error ({err})");
            }
            (None, None) => {
                let _ = writeln!(w, "  verdict: {}", c.verdict);
            }
        }
        if let Some(b) = &c.baseline {
            let _ = writeln!(
                w,
                "  baseline: {} (minors {}; eigenvalue signs {})",
                b.verdict,
                b.minors.join(", "),
                b.eigen_signs
            );
            if let Some(d) = &b.two_dim {
                let _ = writeln!(
                    w,
                    "    f11 {}, f22 {}, f11*f22 - f12^2 {}; eigenvalues {}, {}",
                    d.f11, d.f22, d.det, d.eigenvalues[0], d.eigenvalues[1]
                );
            }
        }
    }

    let t = &report.totals;
    let _ = writeln!(w);
    let _ = writeln!(
        w,
        "summary: {} candidates, {} decided, {} undecided{}",
        t.candidates,
        t.decided,
        t.undecided,
        if t.errors > 0 {
            format!(", {} errors", t.errors)
        } else {
            String::new()
        }
    );
    if show_counters {
        let _ = write!(
            w,
            "counters: objective evaluations {}, boxes processed {}",
            t.objective_evaluations, t.boxes_processed
        );
        if let Some(ms) = report.timing_ms {
            let _ = write!(w, ", time {ms:.3} ms");
        }
        let _ = writeln!(w);
    }
    out
}
