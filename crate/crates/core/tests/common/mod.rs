//! Shared test fixtures: separable polynomial objectives with planted
//! stationary points.
//!
//! Each axis contributes a term `G_i(x_i)` whose derivative is
//! `sign · scale · m · Π_j (x_i − r_ij)` for planted roots `r_ij`. Roots are
//! drawn from the 1/16 grid in [−1.75, 1.75] with pairwise separation ≥ 1/4,
//! and the antiderivative is scaled by the integer `m` (2, 6 or 12 by degree)
//! so that every coefficient is a small dyadic rational — exactly
//! representable in f64, exactly round-tripped through the formula text, and
//! with the planted roots exact stationary coordinates of the represented
//! polynomial. Positive per-axis scaling never moves a stationary point or
//! changes its kind, so ground truth stays trivial to compute: the kind at a
//! grid point is read off the per-axis curvature signs.

#![allow(dead_code)]

use extrema::{build_gradient_system, Expression, GradientSystem, Interval, IntervalBox};
use proptest::prelude::*;

#[derive(Clone, Debug)]
pub struct PlantedAxis {
    /// Sorted stationary coordinates, pairwise ≥ 1/4 apart, all k/16.
    pub roots: Vec<f64>,
    /// ±1; −1 turns the axis upside down.
    pub sign: f64,
    /// Small positive integer stretch.
    pub scale: f64,
}

impl PlantedAxis {
    /// Integration multiplier: clears every denominator of `∫ Π (t − r_j) dt`.
    fn m(&self) -> f64 {
        match self.roots.len() {
            1 => 2.0,
            2 => 6.0,
            3 => 12.0,
            d => unreachable!("axis degree {d} is never generated"),
        }
    }

    /// Ascending-power coefficients of the axis term; all arithmetic here is
    /// exact (dyadic values well inside 2^53).
    pub fn coeffs(&self) -> Vec<f64> {
        let s = self.sign * self.scale;
        let r = &self.roots;
        let mut c = match r.len() {
            // 2·∫(t − r) = t² − 2r·t
            1 => vec![0.0, -2.0 * r[0], 1.0],
            // 6·∫(t − r0)(t − r1) = 2t³ − 3e1·t² + 6e2·t
            2 => {
                let e1 = r[0] + r[1];
                let e2 = r[0] * r[1];
                vec![0.0, 6.0 * e2, -3.0 * e1, 2.0]
            }
            // 12·∫ Π(t − rj) = 3t⁴ − 4e1·t³ + 6e2·t² − 12e3·t
            3 => {
                let e1 = r[0] + r[1] + r[2];
                let e2 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
                let e3 = r[0] * r[1] * r[2];
                vec![0.0, -12.0 * e3, 6.0 * e2, -4.0 * e1, 3.0]
            }
            d => unreachable!("axis degree {d} is never generated"),
        };
        for v in &mut c {
            *v *= s;
        }
        c
    }

    /// Term text for 1-based variable `var`, e.g. `-3 * x2^4 + 1.5 * x2`.
    pub fn term_string(&self, var: usize) -> String {
        let coeffs = self.coeffs();
        let mut parts = Vec::new();
        for k in (1..coeffs.len()).rev() {
            let c = coeffs[k];
            if c == 0.0 {
                continue;
            }
            parts.push(if k == 1 {
                format!("{c} * x{var}")
            } else {
                format!("{c} * x{var}^{k}")
            });
        }
        parts.join(" + ")
    }

    /// Axis term value (plain Horner; used only as a sampling oracle).
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs().iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Exact sign of dG/dt at `t`: every factor `t − r` has an exact f64
    /// sign, so no rounding can flip the product. Returns 0.0 on a root.
    pub fn deriv_sign(&self, t: f64) -> f64 {
        let mut s = self.sign;
        for &r in &self.roots {
            let d = t - r;
            if d == 0.0 {
                return 0.0;
            }
            if d < 0.0 {
                s = -s;
            }
        }
        s
    }

    /// Exact sign of d²G/dt² at planted root `j`; never zero because the
    /// roots are simple.
    pub fn curvature_sign(&self, j: usize) -> f64 {
        let mut s = self.sign;
        for (k, &r) in self.roots.iter().enumerate() {
            if k != j && self.roots[j] - r < 0.0 {
                s = -s;
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct Planted {
    pub axes: Vec<PlantedAxis>,
}

impl Planted {
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn formula(&self) -> String {
        self.axes
            .iter()
            .enumerate()
            .map(|(i, a)| a.term_string(i + 1))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn system(&self) -> GradientSystem {
        let f = Expression::parse(&self.formula(), self.dim()).expect("generated formula parses");
        build_gradient_system(f)
    }

    /// [−2, 2]^n — every planted root sits at least 1/4 inside.
    pub fn domain(&self) -> IntervalBox {
        IntervalBox::new(
            (0..self.dim())
                .map(|_| Interval::new(-2.0, 2.0).unwrap())
                .collect(),
        )
        .unwrap()
    }

    /// Cartesian product of the per-axis roots: all planted stationary points.
    pub fn grid_points(&self) -> Vec<Vec<f64>> {
        let mut points = vec![Vec::new()];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(points.len() * axis.roots.len());
            for p in &points {
                for &r in &axis.roots {
                    let mut q = p.clone();
                    q.push(r);
                    next.push(q);
                }
            }
            points = next;
        }
        points
    }

    /// Per-axis curvature signs at the grid point with root indices `idx`.
    pub fn curvature_signs(&self, idx: &[usize]) -> Vec<f64> {
        self.axes
            .iter()
            .zip(idx)
            .map(|(a, &j)| a.curvature_sign(j))
            .collect()
    }

    /// Root-index tuples in the same order as [`Planted::grid_points`].
    pub fn grid_indices(&self) -> Vec<Vec<usize>> {
        let mut idx = vec![Vec::new()];
        for axis in &self.axes {
            let mut next = Vec::with_capacity(idx.len() * axis.roots.len());
            for p in &idx {
                for j in 0..axis.roots.len() {
                    let mut q = p.clone();
                    q.push(j);
                    next.push(q);
                }
            }
            idx = next;
        }
        idx
    }

    /// Sampling oracle for f (independent of the expression evaluator).
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.axes.iter().zip(x).map(|(a, &t)| a.eval(t)).sum()
    }
}

/// Deterministic counterpart of [`planted_axis_strategy`] for seeded corpora.
pub fn seeded_axis(rng: &mut impl rand::Rng) -> PlantedAxis {
    loop {
        let count = rng.random_range(1usize..=3);
        let mut grid: Vec<i32> = (0..count).map(|_| rng.random_range(-28i32..=28)).collect();
        grid.sort_unstable();
        if !grid.windows(2).all(|w| w[1] - w[0] >= 4) {
            continue;
        }
        return PlantedAxis {
            roots: grid.iter().map(|&g| f64::from(g) / 16.0).collect(),
            sign: if rng.random_bool(0.5) { -1.0 } else { 1.0 },
            scale: f64::from(rng.random_range(1i32..=3)),
        };
    }
}

pub fn seeded_planted(rng: &mut impl rand::Rng, dim: usize) -> Planted {
    Planted {
        axes: (0..dim).map(|_| seeded_axis(rng)).collect(),
    }
}

pub fn planted_axis_strategy() -> impl Strategy<Value = PlantedAxis> {
    (1usize..=3)
        .prop_flat_map(|count| {
            (
                prop::collection::vec(-28i32..=28, count),
                any::<bool>(),
                1i32..=3,
            )
        })
        .prop_filter_map("planted roots closer than 1/4", |(mut grid, flip, scale)| {
            grid.sort_unstable();
            if !grid.windows(2).all(|w| w[1] - w[0] >= 4) {
                return None;
            }
            Some(PlantedAxis {
                roots: grid.iter().map(|&g| f64::from(g) / 16.0).collect(),
                sign: if flip { -1.0 } else { 1.0 },
                scale: f64::from(scale),
            })
        })
}

pub fn planted_strategy(
    dims: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Planted> {
    prop::collection::vec(planted_axis_strategy(), dims).prop_map(|axes| Planted { axes })
}
