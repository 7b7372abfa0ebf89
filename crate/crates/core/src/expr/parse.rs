//! Recursive descent parser for formulas.
//!
//! Grammar (whitespace allowed between tokens):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' integer)?          integer := ('+'|'-')? digit+
//! atom     := number | variable | function '(' expr ')' | '(' expr ')'
//! function := "sin" | "cos" | "exp" | "ln" | "sqr"
//! variable := "x" digit+ | "x" | "y" | "z"   (aliases only when dim ≤ 3)
//! number   := digit+ ('.' digit+)? (('e'|'E') ('+'|'-')? digit+)?
//! ```
//!
//! Error positions are 0-based byte offsets into the source text.

use thiserror::Error;

use super::{BinaryOp, Expr, Expression, UnaryOp};

/// Parse failures, with the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at byte {position} (dimension is {dim})")]
    UnknownVariable {
        name: String,
        position: usize,
        dim: usize,
    },
    #[error("exponent at byte {position} must be an integer literal")]
    NonIntegerExponent { position: usize },
}

pub(super) fn parse(text: &str, dim: usize) -> Result<Expression, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        dim,
    };
    let root = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(Expression { root, dim })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op) = self.peek() {
            let op = match op {
                b'+' => BinaryOp::Add,
                b'-' => BinaryOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek() {
            let op = match op {
                b'*' => BinaryOp::Mul,
                b'/' => BinaryOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.integer_exponent()?;
        if self.peek() == Some(b'^') {
            return Err(self.syntax("chained '^' needs parentheses around the base"));
        }
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn integer_exponent(&mut self) -> Result<i32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError::NonIntegerExponent { position: start });
        }
        // a fractional or scientific tail makes the literal non-integer
        if matches!(self.bytes.get(self.pos), Some(b'.' | b'e' | b'E')) {
            return Err(ParseError::NonIntegerExponent { position: start });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        text.parse::<i32>().map_err(|_| ParseError::Syntax {
            position: start,
            message: "exponent out of range".to_string(),
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0'..=b'9') => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            _ => Err(self.syntax("expected a number, variable, function or '('")),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == frac_start {
                return Err(self.syntax("expected digits after '.'"));
            }
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            let exp_start = self.pos;
            while matches!(self.bytes.get(self.pos), Some(b'0'..=b'9')) {
                self.pos += 1;
            }
            if self.pos == exp_start {
                return Err(self.syntax("expected digits in exponent"));
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
            position: start,
            message: format!("invalid number literal '{text}'"),
        })?;
        Ok(Expr::Const(value))
    }

    fn identifier(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");

        if let Some(op) = match name {
            "sin" => Some(UnaryOp::Sin),
            "cos" => Some(UnaryOp::Cos),
            "exp" => Some(UnaryOp::Exp),
            "ln" => Some(UnaryOp::Ln),
            "sqr" => Some(UnaryOp::Sqr),
            _ => None,
        } {
            if self.peek() != Some(b'(') {
                return Err(self.syntax(&format!("expected '(' after '{name}'")));
            }
            self.pos += 1;
            let arg = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.syntax("expected ')'"));
            }
            self.pos += 1;
            return Ok(Expr::Unary(op, Box::new(arg)));
        }

        let unknown = |name: &str| ParseError::UnknownVariable {
            name: name.to_string(),
            position: start,
            dim: self.dim,
        };

        // x,y,z aliases for low dimensions
        if self.dim <= 3 {
            let alias = match name {
                "x" => Some(0),
                "y" => Some(1),
                "z" => Some(2),
                _ => None,
            };
            if let Some(i) = alias {
                return if i < self.dim {
                    Ok(Expr::Var(i))
                } else {
                    Err(unknown(name))
                };
            }
        }

        if let Some(digits) = name.strip_prefix('x') {
            if !digits.is_empty() && !digits.starts_with('0') {
                if let Ok(index) = digits.parse::<usize>() {
                    if index >= 1 && index <= self.dim {
                        return Ok(Expr::Var(index - 1));
                    }
                }
            }
        }
        Err(unknown(name))
    }
}
