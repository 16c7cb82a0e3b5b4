//! Parser for exact boundary points: rationals, square roots of integers and
//! their arithmetic, e.g. `22/7`, `sqrt(7)`, `(-1+sqrt(5))/2`.  Anything that
//! cannot be represented exactly in a single quadratic field is rejected.

use anyhow::{anyhow, bail, Result};
use jigsaw_groups::exact::{AlphaVal, QuadNum, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Sqrt,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().unwrap()));
            }
            's' if chars[i..].starts_with(&['s', 'q', 'r', 't']) => {
                out.push(Tok::Sqrt);
                i += 4;
            }
            other => bail!("unexpected character {other:?} in value"),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> Result<()> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            bail!("expected {t:?}, found {:?}", self.peek())
        }
    }

    fn expr(&mut self) -> Result<QuadNum> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = add(acc, self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = add(acc, neg(self.term()?))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QuadNum> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = mul(acc, self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        bail!("division by zero");
                    }
                    acc = mul(acc, inverse(rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<QuadNum> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(neg(self.factor()?))
            }
            Some(Tok::Num(_)) => {
                let Some(Tok::Num(n)) = self.peek().cloned() else {
                    unreachable!()
                };
                self.pos += 1;
                Ok(QuadNum::from_rat(Rat::from(n)))
            }
            Some(Tok::Sqrt) => {
                self.pos += 1;
                self.eat(&Tok::LParen)?;
                let inner = self.expr()?;
                self.eat(&Tok::RParen)?;
                sqrt(inner)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(&Tok::RParen)?;
                Ok(inner)
            }
            other => bail!("unexpected token {other:?} in value"),
        }
    }
}

/// Both operands must live in the same quadratic field.
fn compatible(a: &QuadNum, b: &QuadNum) -> Result<()> {
    let (_, ab, an) = a.parts();
    let (_, bb, bn) = b.parts();
    if !ab.is_zero() && !bb.is_zero() && an != bn {
        bail!("cannot mix sqrt({an}) and sqrt({bn}) exactly");
    }
    Ok(())
}

fn add(a: QuadNum, b: QuadNum) -> Result<QuadNum> {
    compatible(&a, &b)?;
    Ok(a + b)
}

fn mul(a: QuadNum, b: QuadNum) -> Result<QuadNum> {
    compatible(&a, &b)?;
    Ok(a * b)
}

fn neg(a: QuadNum) -> QuadNum {
    -a
}

fn inverse(a: QuadNum) -> QuadNum {
    QuadNum::from_rat(Rat::from(BigInt::from(1))) / a
}

fn sqrt(a: QuadNum) -> Result<QuadNum> {
    let Some(r) = a.as_rat() else {
        bail!("nested radicals are not representable");
    };
    if r.is_negative() {
        bail!("square root of a negative number is not real");
    }
    // sqrt(p/q) = sqrt(p*q) / q
    let pq = r.numer() * r.denom();
    let pq: i64 = i64::try_from(&pq).map_err(|_| anyhow!("radicand too large"))?;
    let root = QuadNum::sqrt_of(pq).map_err(|e| anyhow!("bad radicand: {e}"))?;
    Ok(root / QuadNum::from_rat(Rat::from(r.denom().clone())))
}

pub fn parse_alpha(s: &str) -> Result<AlphaVal> {
    let t = s.trim();
    if matches!(t, "inf" | "-inf" | "oo" | "infinity") {
        return Ok(AlphaVal::Inf);
    }
    let toks = lex(t)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        bail!("trailing input after value");
    }
    Ok(AlphaVal::Fin(v))
}
