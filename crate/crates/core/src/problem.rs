//! Problem-file format: one `key = value` pair per line, `#` starts a
//! comment, blank lines ignored. Keys:
//!
//! ```text
//! formula     = (x1^2 + x2 - 11)^2 + (x1 + x2^2 - 7)^2   (required)
//! dimension   = 2                                         (required)
//! domain      = [-5, 5] [-5, 5]                           (required, one
//!                                                          [lo, hi] per axis)
//! tol_x       = 1e-8            solver enclosure width target
//! max_boxes   = 200000          solver box budget
//! retry_limit = 4               probe rounds after an undecided first try
//! zero_tol    = 1e-9            baseline minor zero tolerance
//! epsilon     = 0.5             probe half-width for every candidate
//! epsilon[3]  = 0.25            probe half-width for candidate 3 only
//! ```
//!
//! Endpoint and option numbers are plain decimal literals; parsing rounds
//! them correctly, so the shortest-round-trip strings in a report re-parse
//! to identical bits.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Default)]
pub struct ProblemOptions {
    pub tol_x: Option<f64>,
    pub max_boxes: Option<usize>,
    pub retry_limit: Option<usize>,
    pub zero_tol: Option<f64>,
    pub epsilon: Option<f64>,
    /// `(candidate index, epsilon)` pairs from `epsilon[k] = …` lines.
    pub epsilon_overrides: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub formula: String,
    pub dimension: usize,
    pub domain: Vec<(f64, f64)>,
    pub options: ProblemOptions,
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut formula: Option<String> = None;
    let mut dimension: Option<usize> = None;
    let mut domain: Option<Vec<(f64, f64)>> = None;
    let mut options = ProblemOptions::default();

    let malformed = |line: usize, reason: String| ProblemError::Malformed { line, reason };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| malformed(line_no, "expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(malformed(line_no, format!("key `{key}` has no value")));
        }

        let dup = |set: bool| -> Result<(), ProblemError> {
            if set {
                Err(malformed(line_no, format!("key `{key}` given twice")))
            } else {
                Ok(())
            }
        };
        match key {
            "formula" => {
                dup(formula.is_some())?;
                formula = Some(value.to_string());
            }
            "dimension" => {
                dup(dimension.is_some())?;
                let d: usize = value
                    .parse()
                    .map_err(|_| malformed(line_no, format!("bad dimension `{value}`")))?;
                if d == 0 {
                    return Err(malformed(line_no, "dimension must be at least 1".into()));
                }
                dimension = Some(d);
            }
            "domain" => {
                dup(domain.is_some())?;
                domain = Some(parse_domain(value).map_err(|r| malformed(line_no, r))?);
            }
            "tol_x" => {
                dup(options.tol_x.is_some())?;
                options.tol_x = Some(parse_positive(value).map_err(|r| malformed(line_no, r))?);
            }
            "max_boxes" => {
                dup(options.max_boxes.is_some())?;
                let v: usize = value
                    .parse()
                    .map_err(|_| malformed(line_no, format!("bad count `{value}`")))?;
                if v == 0 {
                    return Err(malformed(line_no, "max_boxes must be at least 1".into()));
                }
                options.max_boxes = Some(v);
            }
            "retry_limit" => {
                dup(options.retry_limit.is_some())?;
                options.retry_limit = Some(
                    value
                        .parse()
                        .map_err(|_| malformed(line_no, format!("bad count `{value}`")))?,
                );
            }
            "zero_tol" => {
                dup(options.zero_tol.is_some())?;
                let v: f64 = value
                    .parse()
                    .map_err(|_| malformed(line_no, format!("bad number `{value}`")))?;
                if !(v.is_finite() && v >= 0.0) {
                    return Err(malformed(line_no, "zero_tol must be finite and >= 0".into()));
                }
                options.zero_tol = Some(v);
            }
            "epsilon" => {
                dup(options.epsilon.is_some())?;
                options.epsilon =
                    Some(parse_positive(value).map_err(|r| malformed(line_no, r))?);
            }
            _ => {
                if let Some(k) = key
                    .strip_prefix("epsilon[")
                    .and_then(|rest| rest.strip_suffix(']'))
                {
                    let index: usize = k.trim().parse().map_err(|_| {
                        malformed(line_no, format!("bad candidate index `{k}`"))
                    })?;
                    if options.epsilon_overrides.iter().any(|(i, _)| *i == index) {
                        return Err(malformed(
                            line_no,
                            format!("epsilon[{index}] given twice"),
                        ));
                    }
                    let eps = parse_positive(value).map_err(|r| malformed(line_no, r))?;
                    options.epsilon_overrides.push((index, eps));
                } else {
                    return Err(malformed(line_no, format!("unknown key `{key}`")));
                }
            }
        }
    }

    let formula = formula.ok_or(ProblemError::Missing("formula"))?;
    let dimension = dimension.ok_or(ProblemError::Missing("dimension"))?;
    let domain = domain.ok_or(ProblemError::Missing("domain"))?;
    if domain.len() != dimension {
        return Err(ProblemError::Malformed {
            line: 0,
            reason: format!(
                "domain has {} axes but dimension is {dimension}",
                domain.len()
            ),
        });
    }
    Ok(ProblemFile {
        formula,
        dimension,
        domain,
        options,
    })
}

fn parse_positive(value: &str) -> Result<f64, String> {
    let v: f64 = value
        .parse()
        .map_err(|_| format!("bad number `{value}`"))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("`{value}` must be finite and > 0"));
    }
    Ok(v)
}

/// Parses `[lo, hi] [lo, hi] …`.
fn parse_domain(value: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut axes = Vec::new();
    let mut rest = value.trim();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('[') else {
            return Err(format!("expected `[` at `{rest}`"));
        };
        let Some(close) = stripped.find(']') else {
            return Err("unterminated `[`".into());
        };
        let inner = &stripped[..close];
        let (lo_s, hi_s) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected `lo, hi` in `[{inner}]`"))?;
        let lo: f64 = lo_s
            .trim()
            .parse()
            .map_err(|_| format!("bad number `{}`", lo_s.trim()))?;
        let hi: f64 = hi_s
            .trim()
            .parse()
            .map_err(|_| format!("bad number `{}`", hi_s.trim()))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err(format!("domain bounds must be finite, got [{lo}, {hi}]"));
        }
        if lo >= hi {
            return Err(format!("domain axis [{lo}, {hi}] is empty"));
        }
        axes.push((lo, hi));
        rest = stripped[close + 1..].trim_start();
    }
    if axes.is_empty() {
        return Err("domain needs at least one [lo, hi] pair".into());
    }
    Ok(axes)
}
