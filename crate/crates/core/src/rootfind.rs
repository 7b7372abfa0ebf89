//! Enclosure of every stationary point of a smooth objective in a box.
//!
//! The solver bisects the domain and discards any sub-box on which some
//! gradient component's interval evaluation excludes zero — such a box
//! provably contains no stationary point. Surviving boxes are refined to half
//! the requested tolerance, and adjacent survivors (a single root usually
//! survives as a few face-sharing leaves) are merged into one enclosure per
//! root. An optional interval-Newton step (the Krawczyk operator) then
//! tightens each enclosure and, when the operator maps the box strictly into
//! its own interior, proves that the enclosure holds exactly one stationary
//! point.
//!
//! Everything is deterministic: boxes are processed in FIFO order, clusters
//! are merged in a canonical order, and the result is sorted by enclosure
//! midpoint.

use std::collections::VecDeque;

use crate::boxes::IntervalBox;
use crate::expr::GradientSystem;
use crate::interval::{sub_down, Interval, IntervalError};

/// How strongly a candidate enclosure is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateStatus {
    /// The Krawczyk operator mapped the enclosure into its own interior:
    /// the box contains exactly one stationary point.
    VerifiedUnique,
    /// The box survived pruning; it may contain one stationary point, several,
    /// or none at all.
    Possible,
}

/// One enclosure produced by [`solve_stationary`].
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub enclosure: IntervalBox,
    pub status: CandidateStatus,
    /// Rigorous range of the objective over the enclosure.
    pub value: Interval,
}

/// Whether the search ran to exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Every sub-box was either discarded or refined into a candidate; the
    /// candidate list provably covers all stationary points in the domain.
    Complete,
    /// The box budget ran out first. Unprocessed regions are reported as
    /// `Possible` candidates, so coverage still holds, but their widths can
    /// exceed the tolerance.
    Truncated,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Target enclosure width (per axis, upper bound) for candidates.
    pub tol_x: f64,
    /// Maximum number of boxes examined before the search gives up.
    pub max_boxes: usize,
    /// Run the Krawczyk contraction on merged enclosures. Costs a handful of
    /// Hessian evaluations per candidate; buys tighter boxes, uniqueness
    /// certificates, and the odd disproof of a spurious survivor.
    pub use_newton_contraction: bool,
    /// Keep every discarded box in the outcome (for audits; off by default
    /// because the list can be large).
    pub collect_discarded: bool,
}

impl Default for SolveConfig {
    fn default() -> SolveConfig {
        SolveConfig {
            tol_x: 1e-8,
            max_boxes: 200_000,
            use_newton_contraction: true,
            collect_discarded: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// Sorted by enclosure midpoint, lexicographically.
    pub candidates: Vec<Candidate>,
    pub completeness: Completeness,
    /// Set when the search pattern suggests the stationary set is not a
    /// finite collection of points (e.g. a whole curve of minima): the budget
    /// ran out while the number of live boxes kept growing and none ever
    /// reached the tolerance.
    pub diagnostic: Option<String>,
    /// Total boxes taken off the work queue.
    pub boxes_processed: usize,
    /// Discarded boxes, when [`SolveConfig::collect_discarded`] is set. Each
    /// carries a proof of emptiness: some gradient component's range over the
    /// box excludes zero.
    pub discarded: Vec<IntervalBox>,
}

/// Finds every stationary point of `sys` inside `domain`.
///
/// Errors propagate from interval evaluation: a domain on which the objective
/// (or a derivative) is undefined — `ln` touching zero, a divisor straddling
/// zero — is rejected rather than silently shrunk.
///
/// # Panics
///
/// When `cfg.tol_x` is not a positive finite number or `cfg.max_boxes` is
/// zero; both indicate caller bugs, not data-dependent conditions.
pub fn solve_stationary(
    sys: &GradientSystem,
    domain: &IntervalBox,
    cfg: &SolveConfig,
) -> Result<SolveOutcome, IntervalError> {
    assert!(
        cfg.tol_x > 0.0 && cfg.tol_x.is_finite(),
        "tol_x must be positive and finite"
    );
    assert!(cfg.max_boxes >= 1, "max_boxes must be at least 1");
    if domain.dim() != sys.dim() {
        return Err(IntervalError::DimensionMismatch(sys.dim(), domain.dim()));
    }
    // Midpoints, bisection and probe geometry all need finite endpoints.
    domain.midpoint()?;

    let mut search = Search {
        sys,
        budget: cfg.max_boxes,
        processed: 0,
        leaves_seen: 0,
        collect_discarded: cfg.collect_discarded,
        discarded: Vec::new(),
    };

    let leaf_tol = cfg.tol_x / 2.0;
    let first = search.sweep(vec![domain.clone()], leaf_tol)?;
    let mut unresolved = first.unresolved;
    let mut resolved: Vec<(IntervalBox, CandidateStatus)> = Vec::new();
    let mut stack = vec![(first.leaves, leaf_tol)];

    while let Some((leaves, leaf_tol)) = stack.pop() {
        for cluster in merge_clusters(leaves) {
            let mut enclosure = cluster;
            let mut status = CandidateStatus::Possible;
            if cfg.use_newton_contraction {
                match krawczyk_refine(sys, &enclosure)? {
                    Contraction::Empty => continue, // proven free of roots
                    Contraction::Refined {
                        enclosure: tightened,
                        verified_unique,
                    } => {
                        enclosure = tightened;
                        if verified_unique {
                            status = CandidateStatus::VerifiedUnique;
                        }
                    }
                }
            }
            if enclosure.width() <= cfg.tol_x {
                resolved.push((enclosure, status));
            } else if search.budget == 0 {
                unresolved.push(enclosure);
            } else {
                // Several roots may have fused into one cluster, or the
                // stationary set is not isolated here; split again, finer.
                let next_tol = leaf_tol / 2.0;
                let sweep = search.sweep(vec![enclosure], next_tol)?;
                unresolved.extend(sweep.unresolved);
                stack.push((sweep.leaves, next_tol));
            }
        }
    }

    let live = unresolved.len();
    let diagnostic = if live >= 64 && search.leaves_seen == 0 {
        Some(format!(
            "box budget exhausted with {live} live boxes and none within the \
             width tolerance; the stationary set may not be a finite set of \
             points, or max_boxes may be too small"
        ))
    } else {
        None
    };
    let completeness = if unresolved.is_empty() {
        Completeness::Complete
    } else {
        Completeness::Truncated
    };

    let mut candidates = Vec::with_capacity(resolved.len() + unresolved.len());
    for (enclosure, status) in resolved {
        let value = sys.f().eval_interval(&enclosure)?;
        candidates.push(Candidate {
            enclosure,
            status,
            value,
        });
    }
    for enclosure in merge_clusters(unresolved) {
        let value = sys.f().eval_interval(&enclosure)?;
        candidates.push(Candidate {
            enclosure,
            status: CandidateStatus::Possible,
            value,
        });
    }
    candidates.sort_by(|a, b| cmp_boxes(&a.enclosure, &b.enclosure));

    Ok(SolveOutcome {
        candidates,
        completeness,
        diagnostic,
        boxes_processed: search.processed,
        discarded: search.discarded,
    })
}

/// Per-candidate separation `D_k`: the smallest midpoint distance (infinity
/// norm, rounded down) to any other candidate. With a single candidate there
/// is no neighbour, so the distance from its midpoint to the nearest domain
/// face is used instead.
pub fn separation_distances(candidates: &[Candidate], domain: &IntervalBox) -> Vec<f64> {
    if let [only] = candidates {
        let mid = only
            .enclosure
            .midpoint()
            .expect("candidate enclosures are bounded");
        let mut d = f64::INFINITY;
        for (axis, &m) in mid.iter().enumerate() {
            let c = domain.coord(axis);
            d = d.min(sub_down(m, c.lo())).min(sub_down(c.hi(), m));
        }
        return vec![d];
    }
    candidates
        .iter()
        .enumerate()
        .map(|(k, ck)| {
            candidates
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, cj)| {
                    ck.enclosure
                        .distance(&cj.enclosure)
                        .expect("candidates share a dimension")
                })
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}

struct Search<'a> {
    sys: &'a GradientSystem,
    budget: usize,
    processed: usize,
    leaves_seen: usize,
    collect_discarded: bool,
    discarded: Vec<IntervalBox>,
}

struct Sweep {
    leaves: Vec<IntervalBox>,
    unresolved: Vec<IntervalBox>,
}

impl Search<'_> {
    /// True when some gradient component has no zero anywhere in `b`.
    fn excludes_zero(&self, b: &IntervalBox) -> Result<bool, IntervalError> {
        for g in self.sys.gradient() {
            if !g.eval_interval(b)?.contains(0.0) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Breadth-first prune/bisect pass down to `leaf_tol`.
    fn sweep(&mut self, start: Vec<IntervalBox>, leaf_tol: f64) -> Result<Sweep, IntervalError> {
        let mut queue: VecDeque<IntervalBox> = start.into();
        let mut out = Sweep {
            leaves: Vec::new(),
            unresolved: Vec::new(),
        };
        while let Some(b) = queue.pop_front() {
            if self.budget == 0 {
                out.unresolved.push(b);
                out.unresolved.extend(queue);
                break;
            }
            self.budget -= 1;
            self.processed += 1;
            if self.excludes_zero(&b)? {
                if self.collect_discarded {
                    self.discarded.push(b);
                }
                continue;
            }
            if b.width() <= leaf_tol {
                self.leaves_seen += 1;
                out.leaves.push(b);
                continue;
            }
            match b.bisect(b.widest_axis()) {
                Some((l, r)) => {
                    queue.push_back(l);
                    queue.push_back(r);
                }
                // The widest axis has no representable interior point left;
                // accept the box as refined as f64 permits.
                None => {
                    self.leaves_seen += 1;
                    out.leaves.push(b);
                }
            }
        }
        Ok(out)
    }
}

/// Canonical box order: per axis, lower endpoint first, then upper.
fn cmp_boxes(a: &IntervalBox, b: &IntervalBox) -> std::cmp::Ordering {
    for (ca, cb) in a.coords().iter().zip(b.coords()) {
        let o = ca
            .lo()
            .partial_cmp(&cb.lo())
            .expect("interval endpoints are never NaN")
            .then(
                ca.hi()
                    .partial_cmp(&cb.hi())
                    .expect("interval endpoints are never NaN"),
            );
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// Merges face-sharing (within one ulp) boxes into hulls, deterministically.
fn merge_clusters(mut leaves: Vec<IntervalBox>) -> Vec<IntervalBox> {
    leaves.sort_by(cmp_boxes);
    let mut clusters: Vec<IntervalBox> = Vec::new();
    for leaf in leaves {
        let mut merged = leaf;
        let mut i = 0;
        while i < clusters.len() {
            if clusters[i].touches_within_ulp(&merged) {
                let c = clusters.swap_remove(i);
                merged = merged.hull(&c);
                i = 0; // the hull grew; rescan earlier clusters
            } else {
                i += 1;
            }
        }
        clusters.push(merged);
    }
    clusters.sort_by(cmp_boxes);
    clusters
}

enum Contraction {
    /// The Krawczyk image misses the box entirely: no stationary point here.
    Empty,
    Refined {
        enclosure: IntervalBox,
        verified_unique: bool,
    },
}

/// Iterates `K(X) = m − Y·g(m) + (I − Y·H(X))(X − m)` with `m` the midpoint
/// and `Y` a floating-point inverse of the midpoint Hessian.
///
/// Soundness does not depend on `Y` (any real matrix gives a valid operator);
/// only the contraction quality does. Every stationary point in `X` lies in
/// `K(X)`, so `K(X) ∩ X = ∅` disproves the box, and `K(X) ⊂ int(X)` proves
/// there is exactly one stationary point in `X`.
fn krawczyk_refine(
    sys: &GradientSystem,
    start: &IntervalBox,
) -> Result<Contraction, IntervalError> {
    let n = start.dim();
    let mut x = start.clone();
    let mut unique = false;
    for _ in 0..8 {
        let m = x.midpoint()?;
        let mut hm = vec![vec![0.0; n]; n];
        let mut finite = true;
        for i in 0..n {
            for j in i..n {
                let v = sys.hessian(i, j).eval_real(&m)?;
                finite &= v.is_finite();
                hm[i][j] = v;
                hm[j][i] = v;
            }
        }
        if !finite {
            break;
        }
        let Some(y) = invert(&hm) else {
            // Singular midpoint Hessian (degenerate stationary point, or a
            // cluster of several roots): leave the box as-is.
            break;
        };

        let thin = IntervalBox::from_point(&m)?;
        let mut gm = Vec::with_capacity(n);
        for g in sys.gradient() {
            gm.push(g.eval_interval(&thin)?);
        }
        let mut hx = vec![vec![Interval::point(0.0); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = sys.hessian(i, j).eval_interval(&x)?;
                hx[i][j] = v;
                hx[j][i] = v;
            }
        }

        let mut coords = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Interval::point(m[i]);
            for k in 0..n {
                acc = acc - Interval::point(y[i][k]) * gm[k];
            }
            for j in 0..n {
                let mut yh = Interval::point(0.0);
                for k in 0..n {
                    yh = yh + Interval::point(y[i][k]) * hx[k][j];
                }
                let coeff = if i == j {
                    Interval::point(1.0) - yh
                } else {
                    -yh
                };
                acc = acc + coeff * (x.coord(j) - Interval::point(m[j]));
            }
            coords.push(acc);
        }
        let image = IntervalBox::new(coords)?;

        if !image.intersects(&x) {
            return Ok(Contraction::Empty);
        }
        if (0..n).all(|j| image.coord(j).lo() > x.coord(j).lo() && image.coord(j).hi() < x.coord(j).hi())
        {
            unique = true;
        }
        let next = image.intersection(&x).expect("intersection checked above");
        if next == x {
            break;
        }
        x = next;
    }
    Ok(Contraction::Refined {
        enclosure: x,
        verified_unique: unique,
    })
}

/// Gauss–Jordan inverse with partial pivoting; `None` when a pivot collapses
/// relative to the largest entry (the matrix is singular for our purposes).
fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return None;
    }
    let mut m = a.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| {
            m[r][col]
                .abs()
                .partial_cmp(&m[s][col].abs())
                .expect("entries checked finite")
        })?;
        if m[pivot][col].abs() < 1e-14 * scale {
            return None;
        }
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    Some(inv)
}
