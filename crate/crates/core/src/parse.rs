//! Text syntax for field elements and algebra elements.
//!
//! Field literals use `z` (or `q`) for the root of unity, integers, `/`,
//! `+ - * ^` and parentheses, e.g. `1/2*z^2 - 3` or `(1 + q)^-2`.
//! Algebra elements add the generators `X Y E K F phi psi` and `K^-1`;
//! `*` may be omitted between factors, e.g. `2 X^3 Y - q*phi K^-1`.

use num_bigint::BigInt;

use crate::cyclo::{CycloNum, Rational};
use crate::error::{Error, Result};
use crate::pbw::{phi_element, psi_element, AlgebraElement, Generator, Presentation};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    Root,
    Gen(Generator, usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Neg(Box<Ast>),
    Pow(Box<Ast>, i64, usize),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.at(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if self.eat('-') {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.at();
                self.pos += 1;
                lhs = Ast::Div(Box::new(lhs), Box::new(self.power()?), at);
            } else if self.starts_factor() {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Op('^')) {
            return Ok(base);
        }
        let at = self.at();
        self.pos += 1;
        let neg = self.eat('-');
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.pos += 1;
        let n: i64 = match i64::try_from(n) {
            Ok(n) => n,
            Err(_) => return self.err("exponent too large"),
        };
        Ok(Ast::Pow(Box::new(base), if neg { -n } else { n }, at))
    }

    fn atom(&mut self) -> Result<Ast> {
        let at = self.at();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "z" | "q" => Ok(Ast::Root),
                    "X" => Ok(Ast::Gen(Generator::X, at)),
                    "Y" => Ok(Ast::Gen(Generator::Y, at)),
                    "E" => Ok(Ast::Gen(Generator::E, at)),
                    "K" => Ok(Ast::Gen(Generator::K, at)),
                    "Kinv" => Ok(Ast::Gen(Generator::Kinv, at)),
                    "F" => Ok(Ast::Gen(Generator::F, at)),
                    "phi" => Ok(Ast::Gen(Generator::Phi, at)),
                    "psi" => Ok(Ast::Gen(Generator::Psi, at)),
                    _ => Err(Error::Parse {
                        pos: at,
                        msg: format!("unknown symbol '{id}'"),
                    }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.power()?)))
            }
            _ => self.err("expected a number, symbol or '('"),
        }
    }
}

fn parse_ast(s: &str) -> Result<Ast> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
    };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(ast)
}

fn eval_cyclo(l: u32, a: &Ast) -> Result<CycloNum> {
    Ok(match a {
        Ast::Num(n) => CycloNum::from_rational(l, Rational::from_integer(n.clone())),
        Ast::Root => CycloNum::zeta(l),
        Ast::Gen(g, pos) => {
            return Err(Error::Parse {
                pos: *pos,
                msg: format!("generator {g} in a scalar"),
            })
        }
        Ast::Add(x, y) => eval_cyclo(l, x)?.checked_add(&eval_cyclo(l, y)?)?,
        Ast::Sub(x, y) => eval_cyclo(l, x)?.checked_sub(&eval_cyclo(l, y)?)?,
        Ast::Mul(x, y) => eval_cyclo(l, x)?.checked_mul(&eval_cyclo(l, y)?)?,
        Ast::Div(x, y, _) => eval_cyclo(l, x)?.checked_div(&eval_cyclo(l, y)?)?,
        Ast::Neg(x) => -&eval_cyclo(l, x)?,
        Ast::Pow(x, n, _) => eval_cyclo(l, x)?.pow(*n)?,
    })
}

/// Parses a field literal for `Q(zeta_l)`.
pub fn parse_cyclo(l: u32, s: &str) -> Result<CycloNum> {
    crate::cyclo::field(l)?;
    eval_cyclo(l, &parse_ast(s)?)
}

/// Parses a comma-separated list of field literals; commas inside
/// parentheses do not split.
pub fn parse_cyclo_list(l: u32, s: &str) -> Result<Vec<CycloNum>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts.into_iter().map(|p| parse_cyclo(l, p)).collect()
}

fn scalar_part(x: &AlgebraElement) -> Option<CycloNum> {
    if x.is_zero() {
        return Some(CycloNum::zero(x.order()));
    }
    let mut terms = x.terms();
    let (m, c) = terms.next()?;
    (terms.next().is_none() && m.exponents() == [0; 5]).then(|| c.clone())
}

fn generator_element(l: u32, pres: Presentation, g: Generator, pos: usize) -> Result<AlgebraElement> {
    let bad = || Error::Parse {
        pos,
        msg: format!("{g} is not available in {pres}"),
    };
    match (g, pres) {
        (Generator::Phi, Presentation::Qsaa | Presentation::Smash) => phi_element(l, pres),
        (Generator::Psi, Presentation::Smash) => psi_element(l),
        _ if pres.allows(g) => AlgebraElement::generator(l, pres, g),
        _ => Err(bad()),
    }
}

fn eval_elem(l: u32, pres: Presentation, a: &Ast) -> Result<AlgebraElement> {
    Ok(match a {
        Ast::Num(_) | Ast::Root => AlgebraElement::scalar(pres, eval_cyclo(l, a)?),
        Ast::Gen(g, pos) => generator_element(l, pres, *g, *pos)?,
        Ast::Add(x, y) => eval_elem(l, pres, x)?.checked_add(&eval_elem(l, pres, y)?)?,
        Ast::Sub(x, y) => eval_elem(l, pres, x)?.checked_sub(&eval_elem(l, pres, y)?)?,
        Ast::Mul(x, y) => eval_elem(l, pres, x)?.checked_mul(&eval_elem(l, pres, y)?)?,
        Ast::Div(x, y, pos) => {
            let d = scalar_part(&eval_elem(l, pres, y)?).ok_or(Error::Parse {
                pos: *pos,
                msg: "division by a non-scalar".into(),
            })?;
            eval_elem(l, pres, x)?.scale(&d.inv()?)
        }
        Ast::Neg(x) => -&eval_elem(l, pres, x)?,
        Ast::Pow(x, n, pos) => {
            if *n >= 0 {
                return eval_elem(l, pres, x)?.pow(*n as u32);
            }
            if let Ast::Gen(Generator::K, gp) = **x {
                return generator_element(l, pres, Generator::Kinv, gp)?.pow(n.unsigned_abs() as u32);
            }
            let base = eval_elem(l, pres, x)?;
            let c = scalar_part(&base).ok_or(Error::Parse {
                pos: *pos,
                msg: "negative power of a non-invertible element".into(),
            })?;
            AlgebraElement::scalar(pres, c.pow(*n)?)
        }
    })
}

/// Parses an algebra element in the given presentation.
pub fn parse_element(l: u32, pres: Presentation, s: &str) -> Result<AlgebraElement> {
    crate::cyclo::field(l)?;
    eval_elem(l, pres, &parse_ast(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::q_power;

    #[test]
    fn literals() {
        let l = 5;
        let a = parse_cyclo(l, "1/2*z^2 - 3").unwrap();
        let want = &CycloNum::from_ratio(l, 1, 2) * &q_power(l, 2) - CycloNum::from_int(l, 3);
        assert_eq!(a, want);
        assert_eq!(a.to_string(), "1/2*z^2 - 3");
        assert_eq!(parse_cyclo(l, "q^-1").unwrap(), q_power(l, -1));
        assert_eq!(parse_cyclo(l, "(1+q)^2").unwrap(), parse_cyclo(l, "1 + 2q + q^2").unwrap());
        assert!(matches!(parse_cyclo(l, "1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(parse_cyclo(l, "2 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cyclo(l, "X"), Err(Error::Parse { .. })));
    }

    #[test]
    fn lists() {
        let v = parse_cyclo_list(3, "q^2, 1,(1+q)").unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn elements() {
        let l = 3;
        let p = Presentation::Qsaa;
        let a = parse_element(l, p, "E*Y").unwrap();
        let b = parse_element(l, p, "X + q^-1 Y E").unwrap();
        assert_eq!(a, b);
        let k = parse_element(l, p, "K^-1 K").unwrap();
        assert_eq!(k, AlgebraElement::one(l, p));
        assert!(parse_element(l, p, "F").is_err());
        let phi = parse_element(l, p, "phi").unwrap();
        assert_eq!(phi, phi_element(l, p).unwrap());
    }
}
