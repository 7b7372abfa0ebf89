//! C interface to the stationary-point toolkit.
//!
//! Handles are opaque and must be released with the matching `_free`
//! function. Every fallible call returns an [`ExtremaStatus`] and writes its
//! result through out-pointers, which are left untouched on failure. Panics
//! are caught at the boundary and reported as `EXTREMA_STATUS_PANIC`; nothing
//! ever unwinds into the caller.
//!
//! The generated header lands in `include/extrema.h`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use extrema::{
    build_gradient_system, classify_all, solve_stationary, CandidateStatus, Classification,
    ClassifyError, Completeness, Expression, GradientSystem, Interval, IntervalBox, ProbeConfig,
    SolveConfig, SolveOutcome, Verdict,
};

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument,
    /// The formula was not valid UTF-8.
    InvalidUtf8,
    /// The formula did not parse; see `extrema_status_message`.
    ParseError,
    /// Domain bounds were not finite ordered pairs, or the length was wrong.
    InvalidDomain,
    /// The search failed to evaluate the gradient over the domain.
    SolveError,
    /// The classification for this candidate failed (for example, probes
    /// could not be placed inside the domain).
    ClassifyError,
    /// A candidate index was out of range.
    IndexOutOfRange,
    /// A panic was caught at the boundary; the handle may be poisoned.
    Panic,
}

/// Kind of stationary point, mirroring the library verdict.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremaVerdict {
    Minimum = 0,
    Maximum,
    Saddle,
    Inflection,
    Undecided,
}

/// Tuning knobs for `extrema_analyze`. Obtain defaults from
/// `extrema_options_default` and override selectively.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct ExtremaOptions {
    /// Target enclosure width per axis for the search.
    pub tol_x: f64,
    /// Box budget before the search reports itself truncated.
    pub max_boxes: usize,
    /// Probe rounds allowed after an undecided first attempt.
    pub retry_limit: usize,
    /// Probe half-width. Any non-finite or non-positive value selects the
    /// automatic per-candidate width.
    pub epsilon: f64,
}

/// Face counts and probe bookkeeping backing one verdict.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct ExtremaEvidence {
    /// Faces whose range lies strictly above the candidate's value range.
    pub faces_above: usize,
    /// Faces whose range lies strictly below.
    pub faces_below: usize,
    /// Faces whose range overlaps the candidate's value range.
    pub faces_overlapping: usize,
    /// Probe half-width of the deciding (or final) attempt.
    pub epsilon: f64,
    /// Retries consumed after the first attempt.
    pub retries: usize,
    /// Interval evaluations of the objective, 2n+1 per attempt.
    pub evaluations: usize,
}

/// A parsed objective with its symbolic gradient and Hessian.
pub struct ExtremaSystem {
    sys: GradientSystem,
}

/// Outcome of one solve-and-classify run over a domain box.
pub struct ExtremaAnalysis {
    dim: usize,
    outcome: SolveOutcome,
    classifications: Vec<Result<Classification, ClassifyError>>,
}

fn caught<T>(result: std::thread::Result<T>, on_panic: T) -> T {
    result.unwrap_or(on_panic)
}

/// Parses `formula` over variables `x1..x<dimension>` and writes a new
/// system handle to `out`.
///
/// # Safety
/// `formula` must point to a NUL-terminated string and `out` to a writable
/// pointer slot. The handle must be released with `extrema_system_free`.
#[no_mangle]
pub unsafe extern "C" fn extrema_system_new(
    formula: *const c_char,
    dimension: usize,
    out: *mut *mut ExtremaSystem,
) -> ExtremaStatus {
    if formula.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let text = CStr::from_ptr(formula);
    caught(
        catch_unwind(AssertUnwindSafe(|| {
            let Ok(text) = text.to_str() else {
                return ExtremaStatus::InvalidUtf8;
            };
            match Expression::parse(text, dimension) {
                Ok(expr) => {
                    let handle = Box::new(ExtremaSystem {
                        sys: build_gradient_system(expr),
                    });
                    out.write(Box::into_raw(handle));
                    ExtremaStatus::Ok
                }
                Err(_) => ExtremaStatus::ParseError,
            }
        })),
        ExtremaStatus::Panic,
    )
}

/// Releases a system handle. A null handle is ignored.
///
/// # Safety
/// `system` must be a pointer returned by `extrema_system_new` that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn extrema_system_free(system: *mut ExtremaSystem) {
    if !system.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(system))));
    }
}

/// Writes the number of variables of the system to `out`.
///
/// # Safety
/// `system` must be a live system handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_system_dim(
    system: *const ExtremaSystem,
    out: *mut usize,
) -> ExtremaStatus {
    if system.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    out.write((&*system).sys.dim());
    ExtremaStatus::Ok
}

/// Writes the default analysis options to `out`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_options_default(out: *mut ExtremaOptions) -> ExtremaStatus {
    if out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let solve = SolveConfig::default();
    let probe = ProbeConfig::default();
    out.write(ExtremaOptions {
        tol_x: solve.tol_x,
        max_boxes: solve.max_boxes,
        retry_limit: probe.retry_limit,
        epsilon: f64::NAN,
    });
    ExtremaStatus::Ok
}

/// Encloses every stationary point of the system inside the box
/// `[lower[i], upper[i]]` for `i < len`, classifies each one, and writes an
/// analysis handle to `out`. `options` may be null for defaults.
///
/// # Safety
/// `system` must be a live system handle; `lower` and `upper` must point to
/// `len` readable doubles; `options`, when non-null, must point to a valid
/// `ExtremaOptions`; `out` must be writable. The handle must be released
/// with `extrema_analysis_free`.
#[no_mangle]
pub unsafe extern "C" fn extrema_analyze(
    system: *const ExtremaSystem,
    lower: *const f64,
    upper: *const f64,
    len: usize,
    options: *const ExtremaOptions,
    out: *mut *mut ExtremaAnalysis,
) -> ExtremaStatus {
    if system.is_null() || lower.is_null() || upper.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let sys = &(*system).sys;
    let lower = std::slice::from_raw_parts(lower, len);
    let upper = std::slice::from_raw_parts(upper, len);
    let opts = if options.is_null() {
        None
    } else {
        Some(*options)
    };
    caught(
        catch_unwind(AssertUnwindSafe(|| {
            if len != sys.dim() {
                return ExtremaStatus::InvalidDomain;
            }
            let mut coords = Vec::with_capacity(len);
            for (&lo, &hi) in lower.iter().zip(upper) {
                if !lo.is_finite() || !hi.is_finite() {
                    return ExtremaStatus::InvalidDomain;
                }
                match Interval::new(lo, hi) {
                    Ok(c) => coords.push(c),
                    Err(_) => return ExtremaStatus::InvalidDomain,
                }
            }
            let Ok(domain) = IntervalBox::new(coords) else {
                return ExtremaStatus::InvalidDomain;
            };
            let defaults = SolveConfig::default();
            let solve_cfg = SolveConfig {
                tol_x: opts.map_or(defaults.tol_x, |o| o.tol_x),
                max_boxes: opts.map_or(defaults.max_boxes, |o| o.max_boxes),
                ..defaults
            };
            let probe_cfg = ProbeConfig {
                epsilon: opts.and_then(|o| (o.epsilon.is_finite() && o.epsilon > 0.0)
                    .then_some(o.epsilon)),
                retry_limit: opts.map_or_else(|| ProbeConfig::default().retry_limit, |o| o.retry_limit),
                ..ProbeConfig::default()
            };
            let outcome = match solve_stationary(sys, &domain, &solve_cfg) {
                Ok(outcome) => outcome,
                Err(_) => return ExtremaStatus::SolveError,
            };
            let classifications =
                classify_all(sys, &outcome.candidates, &domain, &probe_cfg, None);
            let handle = Box::new(ExtremaAnalysis {
                dim: len,
                outcome,
                classifications,
            });
            out.write(Box::into_raw(handle));
            ExtremaStatus::Ok
        })),
        ExtremaStatus::Panic,
    )
}

/// Releases an analysis handle. A null handle is ignored.
///
/// # Safety
/// `analysis` must be a pointer returned by `extrema_analyze` that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn extrema_analysis_free(analysis: *mut ExtremaAnalysis) {
    if !analysis.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(analysis))));
    }
}

/// Writes the number of candidates to `out`.
///
/// # Safety
/// `analysis` must be a live analysis handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_analysis_count(
    analysis: *const ExtremaAnalysis,
    out: *mut usize,
) -> ExtremaStatus {
    if analysis.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    out.write((&*analysis).outcome.candidates.len());
    ExtremaStatus::Ok
}

/// Writes true to `out` when the search exhausted the domain, so the
/// candidate list provably contains every stationary point in the box.
///
/// # Safety
/// `analysis` must be a live analysis handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_analysis_complete(
    analysis: *const ExtremaAnalysis,
    out: *mut bool,
) -> ExtremaStatus {
    if analysis.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    out.write((&*analysis).outcome.completeness == Completeness::Complete);
    ExtremaStatus::Ok
}

/// Writes the enclosure of candidate `index` into `lower` and `upper`, one
/// double per axis.
///
/// # Safety
/// `analysis` must be a live analysis handle; `lower` and `upper` must point
/// to as many writable doubles as the system has variables.
#[no_mangle]
pub unsafe extern "C" fn extrema_candidate_enclosure(
    analysis: *const ExtremaAnalysis,
    index: usize,
    lower: *mut f64,
    upper: *mut f64,
) -> ExtremaStatus {
    if analysis.is_null() || lower.is_null() || upper.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let a = &*analysis;
    let Some(candidate) = a.outcome.candidates.get(index) else {
        return ExtremaStatus::IndexOutOfRange;
    };
    for axis in 0..a.dim {
        let coord = candidate.enclosure.coord(axis);
        lower.add(axis).write(coord.lo());
        upper.add(axis).write(coord.hi());
    }
    ExtremaStatus::Ok
}

/// Writes the rigorous range of the objective over candidate `index` to
/// `lower` and `upper`.
///
/// # Safety
/// `analysis` must be a live analysis handle; `lower` and `upper` must each
/// point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn extrema_candidate_value(
    analysis: *const ExtremaAnalysis,
    index: usize,
    lower: *mut f64,
    upper: *mut f64,
) -> ExtremaStatus {
    if analysis.is_null() || lower.is_null() || upper.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let Some(candidate) = (&*analysis).outcome.candidates.get(index) else {
        return ExtremaStatus::IndexOutOfRange;
    };
    lower.write(candidate.value.lo());
    upper.write(candidate.value.hi());
    ExtremaStatus::Ok
}

/// Writes true to `out` when candidate `index` provably contains exactly one
/// stationary point.
///
/// # Safety
/// `analysis` must be a live analysis handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_candidate_verified(
    analysis: *const ExtremaAnalysis,
    index: usize,
    out: *mut bool,
) -> ExtremaStatus {
    if analysis.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let Some(candidate) = (&*analysis).outcome.candidates.get(index) else {
        return ExtremaStatus::IndexOutOfRange;
    };
    out.write(candidate.status == CandidateStatus::VerifiedUnique);
    ExtremaStatus::Ok
}

/// Writes the verdict for candidate `index` to `out`. Returns
/// `EXTREMA_STATUS_CLASSIFY_ERROR` when classification failed for this
/// candidate (the other accessors still work).
///
/// # Safety
/// `analysis` must be a live analysis handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_candidate_verdict(
    analysis: *const ExtremaAnalysis,
    index: usize,
    out: *mut ExtremaVerdict,
) -> ExtremaStatus {
    if analysis.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let Some(result) = (&*analysis).classifications.get(index) else {
        return ExtremaStatus::IndexOutOfRange;
    };
    match result {
        Ok(c) => {
            out.write(match c.verdict {
                Verdict::Minimum => ExtremaVerdict::Minimum,
                Verdict::Maximum => ExtremaVerdict::Maximum,
                Verdict::Saddle => ExtremaVerdict::Saddle,
                Verdict::Inflection => ExtremaVerdict::Inflection,
                Verdict::Undecided => ExtremaVerdict::Undecided,
            });
            ExtremaStatus::Ok
        }
        Err(_) => ExtremaStatus::ClassifyError,
    }
}

/// Writes the probe evidence for candidate `index` to `out`. Returns
/// `EXTREMA_STATUS_CLASSIFY_ERROR` when classification failed for this
/// candidate.
///
/// # Safety
/// `analysis` must be a live analysis handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extrema_candidate_evidence(
    analysis: *const ExtremaAnalysis,
    index: usize,
    out: *mut ExtremaEvidence,
) -> ExtremaStatus {
    if analysis.is_null() || out.is_null() {
        return ExtremaStatus::NullArgument;
    }
    let Some(result) = (&*analysis).classifications.get(index) else {
        return ExtremaStatus::IndexOutOfRange;
    };
    match result {
        Ok(c) => {
            let ev = &c.evidence;
            out.write(ExtremaEvidence {
                faces_above: ev.n_less,
                faces_below: ev.n_greater,
                faces_overlapping: ev.n_intersect,
                epsilon: ev.epsilon_used,
                retries: ev.retries,
                evaluations: ev.evaluations,
            });
            ExtremaStatus::Ok
        }
        Err(_) => ExtremaStatus::ClassifyError,
    }
}

/// Returns a static, NUL-terminated description of a status code.
///
/// # Safety
/// Always safe; the returned pointer must not be freed.
#[no_mangle]
pub unsafe extern "C" fn extrema_status_message(status: ExtremaStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        ExtremaStatus::Ok => b"ok\0",
        ExtremaStatus::NullArgument => b"a required pointer argument was null\0",
        ExtremaStatus::InvalidUtf8 => b"formula is not valid UTF-8\0",
        ExtremaStatus::ParseError => b"formula did not parse\0",
        ExtremaStatus::InvalidDomain => b"domain bounds are not finite ordered pairs\0",
        ExtremaStatus::SolveError => b"gradient could not be evaluated over the domain\0",
        ExtremaStatus::ClassifyError => b"classification failed for this candidate\0",
        ExtremaStatus::IndexOutOfRange => b"candidate index out of range\0",
        ExtremaStatus::Panic => b"internal panic caught at the boundary\0",
    };
    text.as_ptr().cast()
}
