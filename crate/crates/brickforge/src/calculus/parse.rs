//! Text form of pair expressions.
//!
//! ```text
//! expr := label | sig:<hex> | sum(expr,expr)
//!       | asm(expr,expr,g[,ia,ib]) | self(expr,k[,i,j])
//! ```

use std::str::FromStr;

use thiserror::Error;

use super::atoms::AtomLabel;
use super::pair::{assemble, connected_sum, self_assemble, CalcError, Expr, MarkedPair};
use crate::polyhedron::{decode_signature, CanonicalSignature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("expression: {0} at byte {1}")]
    Syntax(String, usize),
    #[error("bad signature leaf: {0}")]
    Signature(String),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, what: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax(what.to_string(), self.pos))
    }

    fn eat(&mut self, c: char) -> Result<(), ExprError> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(&format!("expected `{c}`"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let n = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == ':')).unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    fn number(&mut self) -> Result<usize, ExprError> {
        let w = self.word();
        match w.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err("expected a number"),
        }
    }

    fn peek_comma(&mut self) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(',')
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let w = self.word();
        match w {
            "sum" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                Ok(Expr::Sum(Box::new(a), Box::new(b)))
            }
            "asm" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(',')?;
                let gluing = self.number()?;
                let (mut ia, mut ib) = (0, 0);
                if self.peek_comma() {
                    self.eat(',')?;
                    ia = self.number()?;
                    self.eat(',')?;
                    ib = self.number()?;
                }
                self.eat(')')?;
                Ok(Expr::Assemble { a: Box::new(a), b: Box::new(b), gluing, ia, ib })
            }
            "self" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let ident = self.number()?;
                let (mut i, mut j) = (0, 1);
                if self.peek_comma() {
                    self.eat(',')?;
                    i = self.number()?;
                    self.eat(',')?;
                    j = self.number()?;
                }
                self.eat(')')?;
                Ok(Expr::SelfAssemble { a: Box::new(a), ident, i, j })
            }
            "" => self.err("expected an expression"),
            w => {
                if let Some(hex) = w.strip_prefix("sig:") {
                    return Ok(Expr::Leaf(hex.to_string()));
                }
                // labels like Zk(5)
                let label = if w == "Zk" {
                    self.eat('(')?;
                    let k = self.number()?;
                    self.eat(')')?;
                    format!("Z{k}")
                } else {
                    w.to_string()
                };
                match label.parse::<AtomLabel>() {
                    Ok(l) => Ok(Expr::Atom(l)),
                    Err(_) => {
                        self.pos = start;
                        self.err(&format!("unknown atom `{label}`"))
                    }
                }
            }
        }
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

/// Realizes an expression.
pub fn evaluate(e: &Expr) -> Result<MarkedPair, ExprError> {
    Ok(match e {
        Expr::Atom(l) => MarkedPair::atom(*l),
        Expr::Leaf(hex) => {
            let sig = CanonicalSignature::from_hex(hex).map_err(|e| ExprError::Signature(e.to_string()))?;
            let poly = decode_signature(&sig).map_err(|e| ExprError::Signature(e.to_string()))?;
            MarkedPair::from_poly(poly)
        }
        Expr::Sum(a, b) => connected_sum(&evaluate(a)?, &evaluate(b)?),
        Expr::Assemble { a, b, gluing, ia, ib } => assemble(&evaluate(a)?, &evaluate(b)?, *gluing, *ia, *ib)?,
        Expr::SelfAssemble { a, ident, i, j } => self_assemble(&evaluate(a)?, *ident, *i, *j)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for s in [
            "asm(B2pp,Z4,0)",
            "sum(L31,P3)",
            "self(B0,2)",
            "asm(sum(L31,B1),B1,1)",
            "self(Z4,0,1,3)",
            "asm(B2,Z5,1,0,2)",
        ] {
            let e: Expr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert_eq!("asm( B2pp , Zk(3) , 0 )".parse::<Expr>().unwrap().to_string(), "asm(B2pp,B2pp,0)");
    }

    #[test]
    fn rejects_garbage() {
        assert!("asm(Z3,Z3)".parse::<Expr>().is_err());
        assert!("sum(L31,P3))".parse::<Expr>().is_err());
        assert!("foo".parse::<Expr>().is_err());
    }

    #[test]
    fn evaluates_z_arithmetic() {
        let r = evaluate(&"asm(Z3,Z3,0)".parse().unwrap()).unwrap();
        assert_eq!(r.key(), MarkedPair::atom(AtomLabel::Z(4)).key());
    }
}
