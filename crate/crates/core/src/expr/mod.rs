//! Expressions: a small AST for smooth functions f: Rⁿ → R with real,
//! interval, and symbolic-derivative evaluation.
//!
//! Supported node kinds are constants, variables, the unary operators
//! `neg exp ln sin cos sqr`, the binary operators `+ − × ÷`, and powers with
//! integer exponents. Expressions are immutable after construction and safe
//! to share across threads.

mod calculus;
mod parse;

pub use calculus::{build_gradient_system, differentiate, GradientSystem};
pub use parse::ParseError;

use std::fmt;

use crate::boxes::IntervalBox;
use crate::interval::{Interval, IntervalError};

/// Unary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Ln,
    Sin,
    Cos,
    Sqr,
}

/// Binary operators. Powers are a separate node kind because their exponents
/// are integer literals, not sub-expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// AST node.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// Zero-based variable index; `x1` in source is `Var(0)`.
    Var(usize),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// An expression together with the dimension of its variable space.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Expr,
    dim: usize,
}

impl Expression {
    /// Parses `text` as a formula over `dim` variables (`x1 … x<dim>`, with
    /// `x y z` accepted as aliases when `dim ≤ 3`).
    pub fn parse(text: &str, dim: usize) -> Result<Expression, ParseError> {
        parse::parse(text, dim)
    }

    /// Wraps an already-built AST, validating variable indices against `dim`.
    pub fn from_parts(root: Expr, dim: usize) -> Result<Expression, ParseError> {
        fn check(e: &Expr, dim: usize) -> Result<(), ParseError> {
            match e {
                Expr::Const(_) => Ok(()),
                Expr::Var(i) => {
                    if *i < dim {
                        Ok(())
                    } else {
                        Err(ParseError::UnknownVariable {
                            name: format!("x{}", i + 1),
                            position: 0,
                            dim,
                        })
                    }
                }
                Expr::Unary(_, a) => check(a, dim),
                Expr::Binary(_, a, b) => {
                    check(a, dim)?;
                    check(b, dim)
                }
                Expr::Pow(a, _) => check(a, dim),
            }
        }
        check(&root, dim)?;
        Ok(Expression { root, dim })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn root(&self) -> &Expr {
        &self.root
    }

    /// Evaluates at a point; domain violations are reported, never NaN.
    pub fn eval_real(&self, x: &[f64]) -> Result<f64, IntervalError> {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        eval_real_node(&self.root, x)
    }

    /// Natural interval extension over a box: the result contains f(x) for
    /// every point x of the box.
    pub fn eval_interval(&self, b: &IntervalBox) -> Result<Interval, IntervalError> {
        if b.dim() != self.dim {
            return Err(IntervalError::DimensionMismatch(self.dim, b.dim()));
        }
        eval_interval_node(&self.root, b)
    }
}

fn eval_real_node(e: &Expr, x: &[f64]) -> Result<f64, IntervalError> {
    Ok(match e {
        Expr::Const(c) => *c,
        Expr::Var(i) => x[*i],
        Expr::Unary(op, a) => {
            let v = eval_real_node(a, x)?;
            match op {
                UnaryOp::Neg => -v,
                UnaryOp::Exp => v.exp(),
                UnaryOp::Ln => {
                    if v <= 0.0 {
                        return Err(IntervalError::DomainViolation(
                            "ln requires a positive argument",
                        ));
                    }
                    v.ln()
                }
                UnaryOp::Sin => v.sin(),
                UnaryOp::Cos => v.cos(),
                UnaryOp::Sqr => v * v,
            }
        }
        Expr::Binary(op, a, b) => {
            let u = eval_real_node(a, x)?;
            let v = eval_real_node(b, x)?;
            match op {
                BinaryOp::Add => u + v,
                BinaryOp::Sub => u - v,
                BinaryOp::Mul => u * v,
                BinaryOp::Div => {
                    if v == 0.0 {
                        return Err(IntervalError::ZeroInDivisor);
                    }
                    u / v
                }
            }
        }
        Expr::Pow(a, k) => {
            let v = eval_real_node(a, x)?;
            if *k < 0 && v == 0.0 {
                return Err(IntervalError::ZeroInDivisor);
            }
            v.powi(*k)
        }
    })
}

fn eval_interval_node(e: &Expr, b: &IntervalBox) -> Result<Interval, IntervalError> {
    Ok(match e {
        Expr::Const(c) => Interval::point(*c),
        Expr::Var(i) => b.coord(*i),
        Expr::Unary(op, a) => {
            let v = eval_interval_node(a, b)?;
            match op {
                UnaryOp::Neg => -v,
                UnaryOp::Exp => v.exp(),
                UnaryOp::Ln => v.ln()?,
                UnaryOp::Sin => v.sin(),
                UnaryOp::Cos => v.cos(),
                UnaryOp::Sqr => v.sqr(),
            }
        }
        Expr::Binary(op, a, c) => {
            let u = eval_interval_node(a, b)?;
            let v = eval_interval_node(c, b)?;
            match op {
                BinaryOp::Add => u + v,
                BinaryOp::Sub => u - v,
                BinaryOp::Mul => u * v,
                BinaryOp::Div => u.div(v)?,
            }
        }
        Expr::Pow(a, k) => eval_interval_node(a, b)?.pow_int(*k)?,
    })
}

// Precedence levels for display: higher binds tighter.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
        Expr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
        Expr::Unary(UnaryOp::Neg, _) => 3,
        Expr::Pow(..) => 4,
        Expr::Const(c) if *c < 0.0 => 3,
        _ => 5,
    }
}

fn fmt_node(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = |f: &mut fmt::Formatter<'_>, child: &Expr, min: u8| -> fmt::Result {
        if precedence(child) < min {
            write!(f, "(")?;
            fmt_node(child, f)?;
            write!(f, ")")
        } else {
            fmt_node(child, f)
        }
    };
    match e {
        Expr::Const(c) => write!(f, "{c}"),
        Expr::Var(i) => write!(f, "x{}", i + 1),
        Expr::Unary(UnaryOp::Neg, a) => {
            write!(f, "-")?;
            paren(f, a, 3)
        }
        Expr::Unary(op, a) => {
            let name = match op {
                UnaryOp::Exp => "exp",
                UnaryOp::Ln => "ln",
                UnaryOp::Sin => "sin",
                UnaryOp::Cos => "cos",
                UnaryOp::Sqr => "sqr",
                UnaryOp::Neg => unreachable!(),
            };
            write!(f, "{name}(")?;
            fmt_node(a, f)?;
            write!(f, ")")
        }
        Expr::Binary(op, a, b) => {
            let (sym, prec) = match op {
                BinaryOp::Add => ("+", 1),
                BinaryOp::Sub => ("-", 1),
                BinaryOp::Mul => ("*", 2),
                BinaryOp::Div => ("/", 2),
            };
            paren(f, a, prec)?;
            write!(f, " {sym} ")?;
            // the right child is always parenthesized at equal precedence, so
            // printed trees re-parse with their structure intact
            paren(f, b, prec + 1)
        }
        Expr::Pow(a, k) => {
            paren(f, a, 5)?;
            write!(f, "^{k}")
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(&self.root, f)
    }
}
