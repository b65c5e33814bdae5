//! Text syntax for polynomials and cochains.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')* factor (('*' | '/') factor)*
//! factor := atom ('^' integer)?
//! atom   := rational | rational 'i' | 'i' | 't'k | 'theta'k | 'lambda'
//!         | 'phi[' exponents ']_' j | '(' expr ')'
//! ```
//!
//! Exponents are written as digits (`phi[110]_1`) or comma separated
//! (`phi[2,0,1]_3`). `lambda` stands for a scalar supplied by the caller.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{ParamSpace, Scalar, SuperPolynomial};
use crate::cochain::{Cochain, ElementaryMap};
use crate::error::{Error, Result};
use crate::superspace::GradedSpace;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational, bool),
    I,
    T(usize),
    Theta(usize),
    Lambda,
    Phi(Vec<u8>, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let digits = |k: &mut usize| -> String {
        let start = *k;
        while *k < chars.len() && chars[*k].is_ascii_digit() {
            *k += 1;
        }
        chars[start..*k].iter().collect()
    };
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, col));
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let num = digits(&mut k);
            let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
            // `3/2` is a single literal; `x/2` is a division
            if k + 1 < chars.len() && chars[k] == '/' && chars[k + 1].is_ascii_digit() {
                k += 1;
                let den: BigInt = digits(&mut k).parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(syntax(col, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
            }
            let imag = k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).is_some_and(|x| x.is_alphanumeric());
            if imag {
                k += 1;
            }
            out.push((Tok::Num(value, imag), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphabetic() {
                k += 1;
            }
            let word: String = chars[start..k].iter().collect();
            let index = |k: &mut usize| -> Result<usize> {
                let d = digits(k);
                match d.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(n),
                    _ => Err(syntax(col, format!("'{word}' needs a positive index"))),
                }
            };
            let tok = match word.as_str() {
                "i" => Tok::I,
                "lambda" => Tok::Lambda,
                "t" => Tok::T(index(&mut k)?),
                "theta" => Tok::Theta(index(&mut k)?),
                "phi" => {
                    if chars.get(k) != Some(&'[') {
                        return Err(syntax(k + 1, "expected '[' after phi"));
                    }
                    let close = chars[k..]
                        .iter()
                        .position(|&x| x == ']')
                        .map(|p| p + k)
                        .ok_or_else(|| syntax(k + 1, "unclosed '['"))?;
                    let inner: String = chars[k + 1..close].iter().collect();
                    let exps =
                        parse_exponents(&inner).ok_or_else(|| syntax(k + 2, format!("bad exponents '{inner}'")))?;
                    k = close + 1;
                    if chars.get(k) != Some(&'_') {
                        return Err(syntax(k + 1, "expected '_' and a target index"));
                    }
                    k += 1;
                    let j = index(&mut k)?;
                    Tok::Phi(exps, j)
                }
                _ => return Err(syntax(col, format!("unknown identifier '{word}'"))),
            };
            out.push((tok, col));
            continue;
        }
        return Err(syntax(col, format!("unexpected character '{c}'")));
    }
    Ok(out)
}

fn parse_exponents(inner: &str) -> Option<Vec<u8>> {
    let inner = inner.trim();
    if inner.contains(',') {
        inner.split(',').map(|x| x.trim().parse::<u8>().ok()).collect()
    } else if !inner.is_empty() && inner.bytes().all(|b| b.is_ascii_digit()) {
        Some(inner.bytes().map(|b| b - b'0').collect())
    } else {
        None
    }
}

#[derive(Clone)]
enum Value {
    Poly(SuperPolynomial),
    Cochain(Cochain),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    params: ParamSpace,
    space: Option<GradedSpace>,
    lambda: Option<&'a Scalar>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let negative = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => return Ok(acc),
            };
            let col = self.column();
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if negative { neg(rhs) } else { rhs };
            acc = add(acc, rhs).map_err(|m| syntax(col, m))?;
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut negative = false;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = self.peek() {
            negative ^= *t == Tok::Minus;
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        loop {
            let divide = match self.peek() {
                Some(Tok::Star) => false,
                Some(Tok::Slash) => true,
                _ => break,
            };
            let col = self.column();
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if divide {
                divide_by(acc, rhs).map_err(|m| syntax(col, m))?
            } else {
                multiply(acc, rhs).map_err(|m| syntax(col, m))?
            };
        }
        Ok(if negative { neg(acc) } else { acc })
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let col = self.column();
        self.pos += 1;
        let e = match self.toks.get(self.pos) {
            Some((Tok::Num(n, false), _)) if n.is_integer() => n.to_integer(),
            _ => return Err(syntax(self.column(), "expected an integer exponent")),
        };
        self.pos += 1;
        let e: u32 = e.try_into().map_err(|_| syntax(col, "exponent too large"))?;
        match base {
            Value::Poly(p) => {
                let mut out = SuperPolynomial::one(self.params);
                for _ in 0..e {
                    out = &out * &p;
                }
                Ok(Value::Poly(out))
            }
            Value::Cochain(_) => Err(syntax(col, "cannot raise a cochain to a power")),
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let Some((tok, col)) = self.toks.get(self.pos).cloned() else {
            return Err(syntax(self.end, "unexpected end of input"));
        };
        self.pos += 1;
        let params = self.params;
        let scalar = |x: Scalar| Value::Poly(SuperPolynomial::constant(params, x));
        Ok(match tok {
            Tok::Num(q, imag) => scalar(if imag {
                Scalar::new(num_traits::Zero::zero(), q)
            } else {
                Scalar::from(q)
            }),
            Tok::I => scalar(Scalar::i()),
            Tok::Lambda => match self.lambda {
                Some(l) => scalar(l.clone()),
                None => return Err(syntax(col, "'lambda' used but no value was supplied")),
            },
            Tok::T(k) => {
                if k > params.even {
                    return Err(syntax(col, format!("t{k} is not among the parameters {params}")));
                }
                Value::Poly(SuperPolynomial::t(params, k))
            }
            Tok::Theta(k) => {
                if k > params.odd {
                    return Err(syntax(col, format!("theta{k} is not among the parameters {params}")));
                }
                Value::Poly(SuperPolynomial::theta(params, k))
            }
            Tok::Phi(exps, j) => {
                let space = self
                    .space
                    .ok_or_else(|| syntax(col, "cochain found where a polynomial was expected"))?;
                let word = space.word(&exps).map_err(|e| syntax(col, e.to_string()))?;
                let map = ElementaryMap::new(word, j - 1).map_err(|e| syntax(col, e.to_string()))?;
                Value::Cochain(Cochain::elementary(space, params, map)?)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.column(), "expected ')'"));
                }
                self.pos += 1;
                inner
            }
            other => return Err(syntax(col, format!("unexpected {other:?}"))),
        })
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Poly(p) => Value::Poly(-&p),
        Value::Cochain(c) => Value::Cochain(c.neg()),
    }
}

fn add(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p + &q)),
        (Value::Cochain(c), Value::Cochain(d)) => c.add(&d).map(Value::Cochain).map_err(|e| e.to_string()),
        (Value::Poly(p), Value::Cochain(c)) | (Value::Cochain(c), Value::Poly(p)) if p.is_zero() => {
            Ok(Value::Cochain(c))
        }
        _ => Err("cannot add a polynomial to a cochain".into()),
    }
}

fn multiply(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Poly(p), Value::Poly(q)) => Ok(Value::Poly(&p * &q)),
        (Value::Poly(p), Value::Cochain(c)) => Ok(Value::Cochain(c.scale(&p))),
        // φ·q = (−1)^{|φ||q|} q·φ
        (Value::Cochain(c), Value::Poly(q)) => {
            let mut out = Cochain::zero(c.space(), c.params());
            for (m, x) in c.terms() {
                let q = if m.parity().is_odd() {
                    q.parity_twist()
                } else {
                    q.clone()
                };
                out.add_term(m.clone(), &(x * &q));
            }
            Ok(Value::Cochain(out))
        }
        (Value::Cochain(_), Value::Cochain(_)) => Err("cannot multiply two cochains".into()),
    }
}

fn divide_by(a: Value, b: Value) -> std::result::Result<Value, String> {
    let Value::Poly(q) = b else {
        return Err("cannot divide by a cochain".into());
    };
    let x = q.as_scalar().ok_or("can only divide by a scalar")?;
    let inv = x.inv().map_err(|e| e.to_string())?;
    Ok(match a {
        Value::Poly(p) => Value::Poly(p.scale(&inv)),
        Value::Cochain(c) => Value::Cochain(c.scale_scalar(&inv)),
    })
}

fn run(text: &str, params: ParamSpace, space: Option<GradedSpace>, lambda: Option<&Scalar>) -> Result<Value> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count() + 1,
        params,
        space,
        lambda,
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.column(), "unexpected trailing input"));
    }
    Ok(v)
}

/// Parse a polynomial in `t<k>`, `theta<k>` over `params`.
pub fn parse_polynomial(text: &str, params: ParamSpace, lambda: Option<&Scalar>) -> Result<SuperPolynomial> {
    match run(text, params, None, lambda)? {
        Value::Poly(p) => Ok(p),
        Value::Cochain(_) => Err(syntax(1, "expected a polynomial")),
    }
}

/// Parse a linear combination of `phi[I]_j` with polynomial coefficients.
pub fn parse_cochain(text: &str, space: GradedSpace, params: ParamSpace, lambda: Option<&Scalar>) -> Result<Cochain> {
    match run(text, params, Some(space), lambda)? {
        Value::Cochain(c) => Ok(c),
        Value::Poly(p) if p.is_zero() => Ok(Cochain::zero(space, params)),
        Value::Poly(_) => Err(syntax(1, "expected a cochain, found a polynomial")),
    }
}

/// Smallest parameter list containing every `t<k>` and `theta<k>` in the texts.
pub fn infer_params<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<ParamSpace> {
    let (mut even, mut odd) = (0, 0);
    for text in texts {
        for (tok, _) in tokenize(text)? {
            match tok {
                Tok::T(k) => even = even.max(k),
                Tok::Theta(k) => odd = odd.max(k),
                _ => {}
            }
        }
    }
    ParamSpace::new(even, odd)
}

/// A scalar given in the same syntax, e.g. `-1/2+i` or `(1+i)/2`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let p = parse_polynomial(text, ParamSpace::default(), None)?;
    Ok(p.as_scalar().expect("no parameters"))
}
