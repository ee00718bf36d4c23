//! Prefix grammar for weight descriptors:
//!
//! ```text
//! weight := poly | poly(k) | exppow(w) | maxpow(w, ...) | const | const(k)
//!         | expabs(c, ...) | expsq(k) | onepluslog(weight)
//!         | prod(weight, ...) | tensor(weight, ...) | pow(weight, g)
//!         | restrict(weight, i, ...)
//! ```
//!
//! `Display` prints the same grammar, so descriptors round-trip.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse weight `{input}`: {reason}")]
pub struct ParseWeightError {
    pub input: String,
    pub reason: String,
}

#[derive(Debug)]
enum Term {
    Num(f64),
    Call(String, Vec<Term>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Term, String> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+' | '_')))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(format!("expected a term at offset {start}"));
        }
        let token = &rest[..len];
        self.pos += len;
        if token.starts_with(|c: char| c.is_ascii_alphabetic()) && token != "inf" {
            let mut args = Vec::new();
            if self.eat('(') {
                loop {
                    args.push(self.term()?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(format!("expected `,` or `)` at offset {}", self.pos));
                    }
                }
            }
            Ok(Term::Call(token.to_string(), args))
        } else {
            token.parse::<f64>().map(Term::Num).map_err(|_| format!("bad number `{token}`"))
        }
    }
}

fn num(t: &Term) -> Result<f64, String> {
    match t {
        Term::Num(x) => Ok(*x),
        Term::Call(name, _) => Err(format!("expected a number, found `{name}`")),
    }
}

fn count(t: &Term, what: &str) -> Result<usize, String> {
    let x = num(t)?;
    if x >= 0.0 && x.fract() == 0.0 && x <= u32::MAX as f64 {
        Ok(x as usize)
    } else {
        Err(format!("{what} must be a nonnegative integer, got {x}"))
    }
}

fn to_weight(t: &Term) -> Result<Weight, String> {
    let Term::Call(name, args) = t else {
        return Err("expected a weight, found a number".into());
    };
    let arity_arg = |default: usize| match args.as_slice() {
        [] => Ok(default),
        [k] => count(k, "arity"),
        _ => Err(format!("`{name}` takes at most one argument")),
    };
    let weights = |from: usize| args[from..].iter().map(to_weight).collect::<Result<Vec<_>, _>>();
    let w = match name.as_str() {
        "poly" => Weight::Poly { arity: arity_arg(1)? },
        "const" => Weight::Const { arity: arity_arg(1)? },
        "expsq" => Weight::ExpSquares { arity: arity_arg(1)? },
        "exppow" => match args.as_slice() {
            [w] => Weight::ExpPower { w: count(w, "exponent")? as u32 },
            _ => return Err("`exppow` takes one exponent".into()),
        },
        "maxpow" => Weight::MaxPower {
            ws: args.iter().map(|a| count(a, "exponent").map(|w| w as u32)).collect::<Result<_, _>>()?,
        },
        "expabs" => Weight::ExpAbsLinear { coeffs: args.iter().map(num).collect::<Result<_, _>>()? },
        "prod" => Weight::Product(weights(0)?),
        "tensor" => Weight::Tensor(weights(0)?),
        "onepluslog" => match args.as_slice() {
            [a] => Weight::OnePlusLog(Box::new(to_weight(a)?)),
            _ => return Err("`onepluslog` takes one weight".into()),
        },
        "pow" => match args.as_slice() {
            [a, g] => Weight::Power(Box::new(to_weight(a)?), num(g)?),
            _ => return Err("`pow` takes a weight and an exponent".into()),
        },
        "restrict" => match args.split_first() {
            Some((a, pos)) => Weight::Restrict {
                inner: Box::new(to_weight(a)?),
                positions: pos.iter().map(|p| count(p, "position")).collect::<Result<_, _>>()?,
            },
            None => return Err("`restrict` needs a weight".into()),
        },
        "word" => return Err("word weights are built from a group table, not parsed".into()),
        other => return Err(format!("unknown weight `{other}`")),
    };
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}

impl FromStr for Weight {
    type Err = ParseWeightError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| ParseWeightError { input: input.to_string(), reason };
        let mut p = Parser { src: input, pos: 0 };
        let term = p.term().map_err(err)?;
        if p.peek().is_some() {
            return Err(err(format!("trailing input at offset {}", p.pos)));
        }
        to_weight(&term).map_err(err)
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Weight::*;
        match self {
            Poly { arity: 1 } => write!(f, "poly"),
            Poly { arity } => write!(f, "poly({arity})"),
            Const { arity: 1 } => write!(f, "const"),
            Const { arity } => write!(f, "const({arity})"),
            ExpSquares { arity } => write!(f, "expsq({arity})"),
            ExpPower { w } => write!(f, "exppow({w})"),
            MaxPower { ws } => write!(f, "maxpow({})", join(ws)),
            ExpAbsLinear { coeffs } => write!(f, "expabs({})", join(coeffs)),
            Word(t) => write!(f, "word({}, {})", t.0.group().name(), t.0.radius()),
            Product(parts) => write!(f, "prod({})", join(parts)),
            Tensor(parts) => write!(f, "tensor({})", join(parts)),
            Power(inner, g) => write!(f, "pow({inner}, {g})"),
            Restrict { inner, positions } => write!(f, "restrict({inner}, {})", join(positions)),
            OnePlusLog(inner) => write!(f, "onepluslog({inner})"),
        }
    }
}
