//! Axis-aligned boxes: products of intervals.
//!
//! Boxes are the domains handed to the solver, the candidate enclosures it
//! returns, and the thin probe faces the classifier builds around them.

use std::fmt;

use crate::interval::{Interval, IntervalError};

/// Cartesian product of `n ≥ 1` intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    coords: Vec<Interval>,
}

impl IntervalBox {
    /// Builds a box from per-axis intervals; at least one axis is required.
    pub fn new(coords: Vec<Interval>) -> Result<IntervalBox, IntervalError> {
        if coords.is_empty() {
            return Err(IntervalError::EmptyBox);
        }
        Ok(IntervalBox { coords })
    }

    /// The degenerate box enclosing a single point.
    pub fn from_point(p: &[f64]) -> Result<IntervalBox, IntervalError> {
        IntervalBox::new(p.iter().map(|&v| Interval::point(v)).collect())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coord(&self, axis: usize) -> Interval {
        self.coords[axis]
    }

    #[inline]
    pub fn coords(&self) -> &[Interval] {
        &self.coords
    }

    /// Replaces one axis, e.g. to build a probe face.
    pub fn with_coord(&self, axis: usize, value: Interval) -> IntervalBox {
        let mut coords = self.coords.clone();
        coords[axis] = value;
        IntervalBox { coords }
    }

    /// Per-axis midpoints; errors when any coordinate is unbounded.
    pub fn midpoint(&self) -> Result<Vec<f64>, IntervalError> {
        self.coords
            .iter()
            .map(|c| {
                if c.lo().is_finite() && c.hi().is_finite() {
                    Ok(c.midpoint())
                } else {
                    Err(IntervalError::UnboundedBox)
                }
            })
            .collect()
    }

    /// Width of the widest axis (upward-rounded, like interval width).
    pub fn width(&self) -> f64 {
        self.coords
            .iter()
            .map(|c| c.width())
            .fold(0.0, f64::max)
    }

    /// Index of the widest axis; ties break toward the lowest index.
    pub fn widest_axis(&self) -> usize {
        let mut best = 0;
        let mut best_w = self.coords[0].width();
        for (i, c) in self.coords.iter().enumerate().skip(1) {
            let w = c.width();
            if w > best_w {
                best = i;
                best_w = w;
            }
        }
        best
    }

    /// Splits the box at the midpoint of `axis`. The halves share the split
    /// point, so their union covers the original box. Returns `None` when the
    /// axis is too thin to split (midpoint equals an endpoint).
    pub fn bisect(&self, axis: usize) -> Option<(IntervalBox, IntervalBox)> {
        let c = self.coords[axis];
        let m = c.midpoint();
        if m == c.lo() || m == c.hi() {
            return None;
        }
        let left = self.with_coord(axis, Interval::new(c.lo(), m).expect("lo <= mid"));
        let right = self.with_coord(axis, Interval::new(m, c.hi()).expect("mid <= hi"));
        Some((left, right))
    }

    /// True iff the point lies in the closed box.
    pub fn contains_point(&self, p: &[f64]) -> bool {
        debug_assert_eq!(p.len(), self.dim());
        self.coords.iter().zip(p).all(|(c, &x)| c.contains(x))
    }

    /// True iff `other` is a subset of `self`.
    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.contains_interval(*b))
    }

    /// True iff the boxes share at least one point.
    pub fn intersects(&self, other: &IntervalBox) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| a.intersects(*b))
    }

    /// True iff the boxes intersect after widening each axis by one ulp —
    /// the adjacency test used when merging leaves that share a face.
    pub fn touches_within_ulp(&self, other: &IntervalBox) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).all(|(a, b)| {
            a.lo().next_down() <= b.hi() && b.lo().next_down() <= a.hi()
        })
    }

    /// Common subset, or `None` when the boxes are disjoint on some axis.
    pub fn intersection(&self, other: &IntervalBox) -> Option<IntervalBox> {
        debug_assert_eq!(self.dim(), other.dim());
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.intersection(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(IntervalBox { coords })
    }

    /// Smallest box containing both operands.
    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        debug_assert_eq!(self.dim(), other.dim());
        IntervalBox {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.hull(*b))
                .collect(),
        }
    }

    /// Infinity-norm distance between box midpoints, rounded downward.
    pub fn distance(&self, other: &IntervalBox) -> Result<f64, IntervalError> {
        if self.dim() != other.dim() {
            return Err(IntervalError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.midpoint_distance(*b))
            .fold(0.0, f64::max))
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
