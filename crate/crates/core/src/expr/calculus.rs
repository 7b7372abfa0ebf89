//! Symbolic differentiation and the gradient/Hessian system.
//!
//! Derivatives are built by the textbook rules and tidied by conservative,
//! value-preserving simplifications (dropping `+ 0` terms, `* 1` factors and
//! so on). Constants are never folded through inexact arithmetic: `2 + 0.1`
//! stays a tree, so interval evaluation keeps its outward rounding. The one
//! liberty taken is `0 * e → 0` (and `0 / e → 0`), which can suppress a
//! domain error that `e` alone would raise; the undifferentiated factors
//! still raise it when the function itself is evaluated.

use super::{BinaryOp, Expr, Expression, UnaryOp};

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if *c == 0.0)
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Const(c) if *c == 1.0)
}

fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        return b;
    }
    if is_zero(&b) {
        return a;
    }
    Expr::Binary(BinaryOp::Add, Box::new(a), Box::new(b))
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        return a;
    }
    if is_zero(&a) {
        return neg(b);
    }
    Expr::Binary(BinaryOp::Sub, Box::new(a), Box::new(b))
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        return Expr::Const(0.0);
    }
    if is_one(&a) {
        return b;
    }
    if is_one(&b) {
        return a;
    }
    Expr::Binary(BinaryOp::Mul, Box::new(a), Box::new(b))
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        return Expr::Const(0.0);
    }
    if is_one(&b) {
        return a;
    }
    Expr::Binary(BinaryOp::Div, Box::new(a), Box::new(b))
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Unary(UnaryOp::Neg, inner) => *inner,
        other => Expr::Unary(UnaryOp::Neg, Box::new(other)),
    }
}

fn pow(a: Expr, k: i32) -> Expr {
    match k {
        0 => Expr::Const(1.0),
        1 => a,
        2 => Expr::Unary(UnaryOp::Sqr, Box::new(a)),
        _ => Expr::Pow(Box::new(a), k),
    }
}

fn sqr(a: Expr) -> Expr {
    Expr::Unary(UnaryOp::Sqr, Box::new(a))
}

fn derive(e: &Expr, j: usize) -> Expr {
    match e {
        Expr::Const(_) => Expr::Const(0.0),
        Expr::Var(i) => Expr::Const(if *i == j { 1.0 } else { 0.0 }),
        Expr::Unary(op, a) => {
            let da = derive(a, j);
            let a = (**a).clone();
            match op {
                UnaryOp::Neg => neg(da),
                UnaryOp::Exp => mul(Expr::Unary(UnaryOp::Exp, Box::new(a)), da),
                UnaryOp::Ln => div(da, a),
                UnaryOp::Sin => mul(Expr::Unary(UnaryOp::Cos, Box::new(a)), da),
                UnaryOp::Cos => neg(mul(Expr::Unary(UnaryOp::Sin, Box::new(a)), da)),
                UnaryOp::Sqr => mul(Expr::Const(2.0), mul(a, da)),
            }
        }
        Expr::Binary(op, a, b) => {
            let da = derive(a, j);
            let db = derive(b, j);
            let a = (**a).clone();
            let b = (**b).clone();
            match op {
                BinaryOp::Add => add(da, db),
                BinaryOp::Sub => sub(da, db),
                BinaryOp::Mul => add(mul(da, b), mul(a, db)),
                BinaryOp::Div => div(sub(mul(da, b.clone()), mul(a, db)), sqr(b)),
            }
        }
        Expr::Pow(a, k) => {
            let da = derive(a, j);
            let a = (**a).clone();
            mul(mul(Expr::Const(f64::from(*k)), pow(a, k - 1)), da)
        }
    }
}

/// Partial derivative ∂e/∂x_{j+1} (zero-based `j`), simplified.
pub fn differentiate(e: &Expression, j: usize) -> Expression {
    assert!(j < e.dim, "variable index out of range");
    Expression {
        root: derive(&e.root, j),
        dim: e.dim,
    }
}

/// A function together with its full first- and second-derivative systems.
///
/// The Hessian is symmetric by construction, so only the upper triangle is
/// stored; `hessian(i, j)` and `hessian(j, i)` return the same expression.
#[derive(Debug, Clone)]
pub struct GradientSystem {
    f: Expression,
    grad: Vec<Expression>,
    // upper triangle, row-major: (i, j) with i ≤ j at offset
    // i*n − i(i−1)/2 + (j − i)
    hessian: Vec<Expression>,
}

/// Differentiates `f` once per variable for the gradient and again for the
/// (upper-triangular) Hessian.
pub fn build_gradient_system(f: Expression) -> GradientSystem {
    let n = f.dim();
    let grad: Vec<Expression> = (0..n).map(|j| differentiate(&f, j)).collect();
    let mut hessian = Vec::with_capacity(n * (n + 1) / 2);
    for (i, g) in grad.iter().enumerate() {
        for j in i..n {
            hessian.push(differentiate(g, j));
        }
    }
    GradientSystem { f, grad, hessian }
}

impl GradientSystem {
    #[inline]
    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    #[inline]
    pub fn f(&self) -> &Expression {
        &self.f
    }

    #[inline]
    pub fn gradient(&self) -> &[Expression] {
        &self.grad
    }

    /// Second partial ∂²f/∂x_{i+1}∂x_{j+1}; the argument order is irrelevant.
    pub fn hessian(&self, i: usize, j: usize) -> &Expression {
        let n = self.dim();
        assert!(i < n && j < n, "index out of range");
        let (i, j) = (i.min(j), i.max(j));
        &self.hessian[i * n - (i * i - i) / 2 + (j - i)]
    }
}
