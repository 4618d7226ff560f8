//! Text rendering and parsing of polynomials.
//!
//! Terms are written lex-descending, factors as `x12` or `x12^3` joined by
//! `*`, and a coefficient of 1 is left out. The parser accepts that output
//! and is lenient about whitespace, juxtaposed factors and `xji` for `xij`.

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::SparsePoly;
use crate::error::{Error, Result};
use crate::veronese::{check_size, pairs, ExponentMatrix};

/// `x11*x23^2`-style product of the variables; empty for the unit monomial.
pub fn monomial_string(m: &ExponentMatrix) -> String {
    let factors: Vec<String> = pairs(m.n())
        .into_iter()
        .zip(m.exponents())
        .filter(|(_, &e)| e > 0)
        .map(|(p, &e)| if e == 1 { format!("x{p}") } else { format!("x{p}^{e}") })
        .collect();
    factors.join("*")
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono = monomial_string(m);
            match (a.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient and `(i, j, exponent)` factors of one term.
type RawTerm = (BigRational, Vec<(usize, usize, u32)>);

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(Error::Parse("expected an integer".into()));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn digit(&mut self) -> Result<usize> {
        match self.chars.next() {
            Some(c) if c.is_ascii_digit() => Ok(c as usize - '0' as usize),
            Some(c) => Err(Error::Parse(format!("expected a digit, found {c:?}"))),
            None => Err(Error::Parse("unexpected end of input in variable".into())),
        }
    }

    /// A variable `xij` with optional `^e`, returned as `(i, j, e)`.
    fn variable(&mut self) -> Result<(usize, usize, u32)> {
        self.chars.next();
        let i = self.digit()?;
        let j = self.digit()?;
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.chars.next();
            e = u32::try_from(self.integer()?).map_err(|_| Error::Parse("exponent too large".into()))?;
        }
        Ok((i, j, e))
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = BigRational::one();
        let mut vars = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let value = if self.peek() == Some('/') {
                        self.chars.next();
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(Error::Parse("zero denominator".into()));
                        }
                        BigRational::new(num, den)
                    } else {
                        BigRational::from_integer(num)
                    };
                    coeff *= value;
                }
                Some('x') => vars.push(self.variable()?),
                Some(c) => return Err(Error::Parse(format!("unexpected character {c:?}"))),
                None => return Err(Error::Parse("unexpected end of input".into())),
            }
            match self.peek() {
                Some('*') => {
                    self.chars.next();
                }
                Some('x') => {}
                _ => break,
            }
        }
        Ok((coeff, vars))
    }
}

fn parse_raw(s: &str) -> Result<Vec<RawTerm>> {
    let mut p = Parser {
        chars: s.chars().peekable(),
    };
    let mut terms = Vec::new();
    if p.peek().is_none() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut sign = BigRational::one();
    if p.peek() == Some('-') {
        p.chars.next();
        sign = -sign;
    } else if p.peek() == Some('+') {
        p.chars.next();
    }
    loop {
        let (c, vars) = p.term()?;
        terms.push((c * &sign, vars));
        match p.peek() {
            None => break,
            Some('+') => sign = BigRational::one(),
            Some('-') => sign = -BigRational::one(),
            Some(c) => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
        p.chars.next();
    }
    Ok(terms)
}

impl SparsePoly {
    /// Parses a polynomial in `x_ij`, `1 ≤ i, j ≤ n`.
    pub fn parse(s: &str, n: usize) -> Result<SparsePoly> {
        check_size(n)?;
        let raw = parse_raw(s)?;
        let mut p = SparsePoly::zero(n);
        for (c, vars) in raw {
            for &(i, j, _) in &vars {
                for x in [i, j] {
                    if x == 0 || x > n {
                        return Err(Error::IndexOutOfRange {
                            index: x,
                            range: format!("[1, {n}]"),
                        });
                    }
                }
            }
            p.add_term(ExponentMatrix::from_pairs(n, &vars), c);
        }
        Ok(p)
    }

    /// Parses a polynomial, taking `n` to be the largest index that occurs
    /// (but at least `min_n`).
    pub fn parse_infer(s: &str, min_n: usize) -> Result<SparsePoly> {
        let raw = parse_raw(s)?;
        let n = raw
            .iter()
            .flat_map(|(_, vars)| vars.iter().flat_map(|&(i, j, _)| [i, j]))
            .max()
            .unwrap_or(0)
            .max(min_n)
            .max(1);
        Self::parse(s, n)
    }
}
