//! Text format for forms.
//!
//! ```text
//! form   := term (("+"|"-") term)*
//! term   := coeff | [coeff "*"] factor ("*" factor)*
//! factor := var ("^" nat)?
//! var    := ("x"|"z") nat
//! coeff  := ["-"] nat ["/" nat]
//! ```
//!
//! Whitespace is ignored. A leading sign on the first term is accepted.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::form::{Form, Side};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// Parses `text` as a form in `n` variables on `side`.
pub fn parse_form(text: &str, n: usize, side: Side, field: Field) -> Result<Form> {
    let terms = Parser::new(text).parse()?;
    build(terms, Some(n), Some(side), field)
}

/// Parses `text`, inferring the side from the variable letter and `n` from the
/// largest index. Falls back to `default_side` for constant input.
pub fn parse_form_infer(text: &str, n: Option<usize>, default_side: Side, field: Field) -> Result<Form> {
    let terms = Parser::new(text).parse()?;
    let side = terms
        .iter()
        .flat_map(|t| t.factors.iter())
        .map(|f| f.side)
        .next()
        .unwrap_or(default_side);
    build(terms, n, Some(side), field)
}

fn build(terms: Vec<RawTerm>, n: Option<usize>, side: Option<Side>, field: Field) -> Result<Form> {
    let side = side.unwrap_or(Side::S);
    let max_index = terms
        .iter()
        .flat_map(|t| t.factors.iter())
        .map(|f| f.index)
        .max()
        .unwrap_or(1);
    let n = n.unwrap_or(max_index.max(1));
    let mut first_degree: Option<u32> = None;
    let mut out = Poly::zero(n, field);
    for t in terms {
        let mut exps = vec![0u32; n];
        for f in &t.factors {
            if f.side != side {
                return Err(Error::Syntax {
                    position: f.position,
                    message: format!("expected a variable named {}<k>", side.letter()),
                });
            }
            if f.index == 0 || f.index > n {
                return Err(Error::IndexOutOfRange { index: f.index, n });
            }
            exps[f.index - 1] += f.exp;
        }
        let deg: u32 = exps.iter().sum();
        match first_degree {
            None => first_degree = Some(deg),
            Some(d) if d != deg => return Err(Error::NonHomogeneous { first: d, second: deg }),
            _ => {}
        }
        let c = field.from_ratio(&t.num, &t.den)?;
        out.add_term(Monomial::new(exps), &c);
    }
    let degree = if out.is_zero() { first_degree.unwrap_or(0) } else { first_degree.unwrap() };
    Form::with_degree(side, degree, out)
}

struct RawFactor {
    side: Side,
    index: usize,
    exp: u32,
    position: usize,
}

struct RawTerm {
    num: BigInt,
    den: BigInt,
    factors: Vec<RawFactor>,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Parser<'a> {
        let chars: Vec<(usize, char)> = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, len: src.len(), _src: src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.len)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.offset(), message: message.into() })
    }

    fn parse(mut self) -> Result<Vec<RawTerm>> {
        if self.chars.is_empty() {
            return self.error("empty input");
        }
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.num = -t.num;
            }
            terms.push(t);
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return self.error(format!("unexpected '{c}'")),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn nat(&mut self) -> Result<BigInt> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        Ok(s.parse().expect("digits"))
    }

    fn small_nat(&mut self, what: &str) -> Result<u64> {
        let at = self.offset();
        let v = self.nat()?;
        u64::try_from(v).map_err(|_| Error::Syntax { position: at, message: format!("{what} too large") })
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut factors = Vec::new();
        let mut need_factor = true;
        if let Some(c) = self.peek() {
            if c == '-' {
                // "--" is not allowed, but "+-3" style coefficients are.
                self.pos += 1;
                num = -num;
            }
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                num *= self.nat()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.offset();
                    den = self.nat()?;
                    if den.is_zero() {
                        return Err(Error::Syntax { position: at, message: "zero denominator".into() });
                    }
                }
                if self.peek() == Some('*') {
                    self.pos += 1;
                } else {
                    need_factor = false;
                }
            }
            Some('x') | Some('z') => {}
            Some(c) => return self.error(format!("unexpected '{c}'")),
            None => return self.error("unexpected end of input"),
        }
        if need_factor {
            loop {
                factors.push(self.factor()?);
                if self.peek() == Some('*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok(RawTerm { num, den, factors })
    }

    fn factor(&mut self) -> Result<RawFactor> {
        let position = self.offset();
        let side = match self.peek() {
            Some('x') => Side::S,
            Some('z') => Side::D,
            Some(c) => return self.error(format!("expected a variable, found '{c}'")),
            None => return self.error("expected a variable, found end of input"),
        };
        self.pos += 1;
        let index = self.small_nat("variable index")? as usize;
        let mut exp = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.small_nat("exponent")?;
            exp = u32::try_from(e).map_err(|_| Error::Syntax { position, message: "exponent too large".into() })?;
        }
        Ok(RawFactor { side, index, exp, position })
    }
}

fn write_monomial(out: &mut String, m: &Monomial, letter: char) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push(letter);
        out.push_str(&(i + 1).to_string());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Prints a form in the grammar above, terms in grevlex-descending order.
pub fn print_form(f: &Form) -> String {
    print_terms(f.terms(), f.side().letter())
}

/// Prints a (not necessarily homogeneous) polynomial with the given variable letter.
pub fn print_poly(p: &Poly, letter: char) -> String {
    print_terms(p.terms().rev(), letter)
}

fn print_terms<'a>(terms: impl Iterator<Item = (&'a Monomial, &'a Scalar)>, letter: char) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.degree() == 0 {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            write_monomial(&mut out, m, letter);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
