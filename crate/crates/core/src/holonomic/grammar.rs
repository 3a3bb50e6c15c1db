//! Text grammar for expressions, operators and certificate files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | VAR | 'D_a' | '(' expr ')'
//! VAR    := 'x' | 'z' | 'a' | 'm' | 'u' | 'n'
//! ```
//!
//! `z` is another name for the integration variable `x`, and `n` stands
//! for `1/u`. `D_a` is a formal marker for differentiation in `a`; it may
//! only be multiplied from the left, so `p*D_a^2` is accepted and `D_a*a`
//! is rejected.
//!
//! Triple files are `key: value` lines (`#` starts a comment):
//!
//! ```text
//! name: quartic
//! kernel: x^4 + 2*a*x^2 + 1
//! x_exponent: 0
//! operator: -4*m - 3 - 4*a*(2*m+3)*D_a - 4*(a^2-1)*D_a^2
//! certificate: -x*(4*m+3+4*a*x^2*m+2*a*x^2-x^4)/(x^4+2*a*x^2+1)
//! ```
//!
//! Instead of `operator` and `certificate`, a single
//! `identity: <operator> = D_x(<certificate>)` line may be given.
//! Repeated `note:` lines are carried into reports verbatim.

use num_bigint::BigInt;

use crate::arith::{MultiPoly, RatFunc, Rational, Var};

use super::HolonomicError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Var(Var),
    InvU,
    Da,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, HolonomicError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Token::Int(n)));
                continue;
            }
            'D' if src[i..].starts_with("D_a") => {
                out.push((i, Token::Da));
                i += 3;
                continue;
            }
            'x' | 'z' => Token::Var(Var::X),
            'a' => Token::Var(Var::A),
            'm' => Token::Var(Var::M),
            'u' => Token::Var(Var::U),
            'n' => Token::InvU,
            _ => {
                return Err(HolonomicError::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        // identifiers are single letters; reject run-ons like `ax`
        if matches!(tok, Token::Var(_) | Token::InvU)
            && bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            return Err(HolonomicError::Parse {
                pos: i,
                msg: "identifiers are single letters; use `*` between factors".into(),
            });
        }
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

/// An expression that may carry powers of `D_a`: `Σ coeffs[i]·D_a^i`.
#[derive(Clone, Debug)]
pub struct OperatorExpr {
    pub coeffs: Vec<RatFunc>,
}

impl OperatorExpr {
    fn scalar(f: RatFunc) -> Self {
        Self { coeffs: vec![f] }
    }

    fn order(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn as_scalar(&self) -> Option<&RatFunc> {
        (self.order() == 0).then(|| &self.coeffs[0])
    }

    fn is_constant(&self) -> bool {
        self.as_scalar()
            .map(|f| Var::ALL.iter().all(|v| !f.contains(*v)))
            .unwrap_or(false)
    }

    fn add(&self, rhs: &Self, negate: bool) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = RatFunc::zero();
        let coeffs = (0..n)
            .map(|i| {
                let l = self.coeffs.get(i).unwrap_or(&zero);
                let r = rhs.coeffs.get(i).unwrap_or(&zero);
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Self { coeffs }
    }

    fn mul(&self, rhs: &Self, pos: usize) -> Result<Self, HolonomicError> {
        if self.order() > 0 && !rhs.is_constant() {
            return Err(HolonomicError::Parse {
                pos,
                msg: "D_a must be the rightmost factor of a term".into(),
            });
        }
        let mut coeffs = vec![RatFunc::zero(); self.order() + rhs.order() + 1];
        for (i, l) in self.coeffs.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (j, r) in rhs.coeffs.iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(l * r);
            }
        }
        Ok(Self { coeffs })
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, HolonomicError> {
        Err(HolonomicError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<OperatorExpr, HolonomicError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?, false);
                }
                Some(Token::Minus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, HolonomicError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.idx += 1;
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs, pos)?;
                }
                Some(Token::Slash) => {
                    self.idx += 1;
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    let Some(d) = rhs.as_scalar() else {
                        return Err(HolonomicError::Parse {
                            pos,
                            msg: "cannot divide by an operator".into(),
                        });
                    };
                    let inv = d.recip().map_err(|_| HolonomicError::Parse {
                        pos,
                        msg: "division by zero".into(),
                    })?;
                    acc = acc.mul(&OperatorExpr::scalar(inv), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<OperatorExpr, HolonomicError> {
        if let Some(Token::Minus) = self.peek() {
            self.idx += 1;
            let inner = self.unary()?;
            return Ok(OperatorExpr::scalar(RatFunc::zero()).add(&inner, true));
        }
        self.power()
    }

    fn power(&mut self) -> Result<OperatorExpr, HolonomicError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.idx += 1;
            let neg = if let Some(Token::Minus) = self.peek() {
                self.idx += 1;
                true
            } else {
                false
            };
            let pos = self.pos();
            let Some(Token::Int(k)) = self.peek().cloned() else {
                return self.err("expected an integer exponent");
            };
            self.idx += 1;
            let k: u32 = u32::try_from(&k).map_err(|_| HolonomicError::Parse {
                pos,
                msg: "exponent too large".into(),
            })?;
            if base.order() > 0 {
                if neg || base.coeffs[..base.order()].iter().any(|c| !c.is_zero()) {
                    return Err(HolonomicError::Parse {
                        pos,
                        msg: "only a bare D_a may be raised to a power".into(),
                    });
                }
                let mut coeffs = vec![RatFunc::zero(); base.order() * k as usize + 1];
                coeffs[base.order() * k as usize] = base.coeffs[base.order()].pow(k);
                return Ok(OperatorExpr { coeffs });
            }
            let f = base.coeffs[0].pow(k);
            let f = if neg {
                f.recip().map_err(|_| HolonomicError::Parse {
                    pos,
                    msg: "negative power of zero".into(),
                })?
            } else {
                f
            };
            return Ok(OperatorExpr::scalar(f));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OperatorExpr, HolonomicError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.idx += 1;
        match tok {
            Token::Int(n) => Ok(OperatorExpr::scalar(RatFunc::from_poly(MultiPoly::constant(
                Rational::from_integer(n),
            )))),
            Token::Var(v) => Ok(OperatorExpr::scalar(RatFunc::from_poly(MultiPoly::var(v)))),
            Token::InvU => Ok(OperatorExpr::scalar(
                RatFunc::new(MultiPoly::one(), MultiPoly::var(Var::U)).expect("u is nonzero"),
            )),
            Token::Da => Ok(OperatorExpr {
                coeffs: vec![RatFunc::zero(), RatFunc::one()],
            }),
            Token::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::RParen) => {
                        self.idx += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            _ => {
                self.idx -= 1;
                self.err("expected a number, variable, D_a or `(`")
            }
        }
    }
}

/// Parses an expression that may contain `D_a`.
pub fn parse_operator(src: &str) -> Result<OperatorExpr, HolonomicError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(HolonomicError::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        tokens,
        idx: 0,
        end: src.len(),
    };
    let out = p.expr()?;
    if p.idx != p.tokens.len() {
        return p.err("trailing input");
    }
    let keep = out.order() + 1;
    Ok(OperatorExpr {
        coeffs: out.coeffs.into_iter().take(keep).collect(),
    })
}

/// Parses a plain rational expression (no `D_a`).
pub fn parse_expr(src: &str) -> Result<RatFunc, HolonomicError> {
    let op = parse_operator(src)?;
    match op.as_scalar() {
        Some(f) => Ok(f.clone()),
        None => Err(HolonomicError::Parse {
            pos: 0,
            msg: "D_a is not allowed here".into(),
        }),
    }
}

/// Raw contents of a triple file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleText {
    pub name: String,
    pub kernel: String,
    pub x_exponent: String,
    pub operator: String,
    pub certificate: String,
    pub notes: Vec<String>,
}

pub fn parse_triple_text(src: &str) -> Result<TripleText, HolonomicError> {
    let mut t = TripleText::default();
    let mut identity = None;
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(HolonomicError::File(format!(
                "line {}: expected `key: value`",
                lineno + 1
            )));
        };
        let value = value.trim().to_string();
        match key.trim() {
            "name" => t.name = value,
            "kernel" => t.kernel = value,
            "x_exponent" => t.x_exponent = value,
            "operator" => t.operator = value,
            "certificate" => t.certificate = value,
            "identity" => identity = Some(value),
            "note" => t.notes.push(value),
            other => {
                return Err(HolonomicError::File(format!(
                    "line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    if let Some(id) = identity {
        let (lhs, rhs) = id
            .split_once('=')
            .ok_or_else(|| HolonomicError::File("identity needs `=`".into()))?;
        let rhs = rhs.trim();
        let inner = rhs
            .strip_prefix("D_x")
            .map(str::trim)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| {
                HolonomicError::File("identity right-hand side must be D_x(...)".into())
            })?;
        t.operator = lhs.trim().to_string();
        t.certificate = inner.trim().to_string();
    }
    if t.x_exponent.is_empty() {
        t.x_exponent = "0".into();
    }
    for (field, value) in [
        ("kernel", &t.kernel),
        ("operator", &t.operator),
        ("certificate", &t.certificate),
    ] {
        if value.is_empty() {
            return Err(HolonomicError::File(format!("missing `{field}`")));
        }
    }
    Ok(t)
}

/// True when `f` has no dependence on `x` or `a`.
pub(crate) fn is_parameter_only(p: &MultiPoly) -> bool {
    !p.contains(Var::X) && !p.contains(Var::A)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{frac, int};

    #[test]
    fn arithmetic_expression() {
        let f = parse_expr("x^4 + 2*a*x^2 + 1").unwrap();
        assert_eq!(f.as_poly().unwrap().to_string(), "x^4 + 2*x^2*a + 1");
        let g = parse_expr("(x^2 - 1)/(x - 1)").unwrap();
        assert_eq!(g, parse_expr("x + 1").unwrap());
        assert_eq!(parse_expr("3/2").unwrap().as_poly().unwrap().as_constant(), Some(frac(3, 2)));
        assert_eq!(parse_expr("-2^2").unwrap().as_poly().unwrap().as_constant(), Some(int(-4)));
        assert_eq!(parse_expr("x^-1").unwrap(), parse_expr("1/x").unwrap());
    }

    #[test]
    fn n_is_reciprocal_of_u() {
        let f = parse_expr("n*u").unwrap();
        assert_eq!(f, RatFunc::one());
        let g = parse_expr("z^2 + n*a*z + 1").unwrap();
        assert_eq!(g.den(), &MultiPoly::var(Var::U));
    }

    #[test]
    fn operator_orders() {
        let op = parse_operator("-4*m-3-4*a*(2*m+3)*D_a-4*(a^2-1)*D_a^2").unwrap();
        assert_eq!(op.coeffs.len(), 3);
        assert_eq!(op.coeffs[2], parse_expr("-4*a^2+4").unwrap());
        assert_eq!(op.coeffs[1], parse_expr("-8*a*m-12*a").unwrap());
        let d = parse_operator("D_a").unwrap();
        assert_eq!(d.coeffs.len(), 2);
        assert!(d.coeffs[0].is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_operator("D_a*a").is_err());
        assert!(parse_operator("D_a^-1").is_err());
        assert!(parse_expr("D_a").is_err());
        assert!(parse_expr("ax").is_err());
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("(x").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("y").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn triple_file_identity_form() {
        let src = "name: t\nkernel: x^2+1 # comment\nidentity: 1 + D_a = D_x(x/(x^2+1))\nnote: hello\n";
        let t = parse_triple_text(src).unwrap();
        assert_eq!(t.operator, "1 + D_a");
        assert_eq!(t.certificate, "x/(x^2+1)");
        assert_eq!(t.x_exponent, "0");
        assert_eq!(t.notes, vec!["hello".to_string()]);
        assert!(parse_triple_text("kernel: x\n").is_err());
        assert!(parse_triple_text("bogus: 1\n").is_err());
    }
}
