//! The classical definiteness test, kept as a point of comparison.
//!
//! Evaluates the Hessian at a single point in plain floating point and
//! applies the leading-principal-minor test: all minors positive means a
//! minimum, minors alternating in sign starting negative means a maximum,
//! anything else is inconclusive (the matrix may be indefinite, or a minor
//! may sit inside the zero tolerance). This is deliberately *not* a verified
//! computation — no directed rounding, no enclosure of the true stationary
//! point — so it inherits the classical failure modes: a degenerate direction
//! (zero eigenvalue) yields no conclusion, and evaluating at a point a hair
//! off the true minimizer can flip that non-conclusion into a confident
//! "Minimum". The surface-probe classifier exists because of exactly these
//! two weaknesses.

use crate::expr::GradientSystem;
use crate::interval::IntervalError;

/// Sign pattern of the eigenvalues, as inferred from the minor sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenSigns {
    AllPositive,
    AllNegative,
    Mixed,
    /// Some leading minor lies within the zero tolerance; the pattern is
    /// not trustworthy.
    HasZeroWithinTolerance,
}

/// What the definiteness test concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaselineVerdict {
    Minimum,
    Maximum,
    /// Indefinite, or a minor within tolerance of zero. The test cannot
    /// separate "saddle" from "degenerate extremum".
    InconclusiveOrSaddle,
}

impl std::fmt::Display for BaselineVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BaselineVerdict::Minimum => "Minimum",
            BaselineVerdict::Maximum => "Maximum",
            BaselineVerdict::InconclusiveOrSaddle => "Inconclusive-or-Saddle",
        };
        f.write_str(s)
    }
}

/// Extra detail reported in two dimensions, where everything has a closed
/// form: the two diagonal entries, the determinant `f11*f22 - f12^2`, and
/// the eigenvalues, largest first.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoDimDetail {
    pub f11: f64,
    pub f22: f64,
    pub det: f64,
    pub eigenvalues: (f64, f64),
}

/// Hessian snapshot at one point plus the conclusions drawn from it.
#[derive(Clone, Debug, PartialEq)]
pub struct HessianReport {
    /// The matrix itself, row-major. Symmetric by construction: entry (i, j)
    /// and (j, i) come from the same stored expression.
    pub matrix: Vec<Vec<f64>>,
    /// Leading principal minors, k = 1 ..= n.
    pub minors: Vec<f64>,
    pub eigen_signs: EigenSigns,
    pub verdict: BaselineVerdict,
    /// Present only when n = 2.
    pub two_dim: Option<TwoDimDetail>,
}

/// Runs the definiteness test on the Hessian at `x`. Minors with magnitude
/// at most `zero_tol` count as zero, which always demotes the verdict to
/// inconclusive.
pub fn hessian_verdict(
    sys: &GradientSystem,
    x: &[f64],
    zero_tol: f64,
) -> Result<HessianReport, IntervalError> {
    let n = sys.dim();
    if x.len() != n {
        return Err(IntervalError::DimensionMismatch(n, x.len()));
    }
    debug_assert!(zero_tol >= 0.0);

    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = sys.hessian(i, j).eval_real(x)?;
            if !v.is_finite() {
                return Err(IntervalError::DomainViolation(
                    "hessian entry is not finite at the probe point",
                ));
            }
            matrix[i][j] = v;
            matrix[j][i] = v;
        }
    }

    let minors: Vec<f64> = (1..=n).map(|k| leading_minor(&matrix, k)).collect();

    let has_zero = minors.iter().any(|m| m.abs() <= zero_tol);
    let all_positive = minors.iter().all(|&m| m > zero_tol);
    // Negative definite: minor k carries sign (-1)^k with real magnitude.
    let alternating = minors
        .iter()
        .enumerate()
        .all(|(i, &m)| m.abs() > zero_tol && (m < 0.0) == (i % 2 == 0));

    let (eigen_signs, verdict) = if has_zero {
        (
            EigenSigns::HasZeroWithinTolerance,
            BaselineVerdict::InconclusiveOrSaddle,
        )
    } else if all_positive {
        (EigenSigns::AllPositive, BaselineVerdict::Minimum)
    } else if alternating {
        (EigenSigns::AllNegative, BaselineVerdict::Maximum)
    } else {
        (EigenSigns::Mixed, BaselineVerdict::InconclusiveOrSaddle)
    };

    let two_dim = (n == 2).then(|| {
        let (f11, f12, f22) = (matrix[0][0], matrix[0][1], matrix[1][1]);
        let det = f11 * f22 - f12 * f12;
        // Symmetric 2x2: the discriminant (f11-f22)^2 + 4 f12^2 is never
        // negative, so the square root is safe.
        let half_trace = 0.5 * (f11 + f22);
        let radius = 0.5 * ((f11 - f22).powi(2) + 4.0 * f12 * f12).sqrt();
        TwoDimDetail {
            f11,
            f22,
            det,
            eigenvalues: (half_trace + radius, half_trace - radius),
        }
    });

    Ok(HessianReport {
        matrix,
        minors,
        eigen_signs,
        verdict,
        two_dim,
    })
}

/// Determinant of the top-left `k`-by-`k` block, by elimination with partial
/// pivoting (row swaps tracked in the sign).
fn leading_minor(matrix: &[Vec<f64>], k: usize) -> f64 {
    let mut a: Vec<Vec<f64>> = matrix[..k].iter().map(|row| row[..k].to_vec()).collect();
    let mut det = 1.0;
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap();
        if a[pivot_row][col] == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        for row in (col + 1)..k {
            let factor = a[row][col] / pivot;
            for c in col..k {
                a[row][c] -= factor * a[col][c];
            }
        }
    }
    det
}
