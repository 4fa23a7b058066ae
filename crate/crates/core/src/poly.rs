//! Sparse multivariate polynomials over the rationals and the text grammar
//! shared with the command line.
//!
//! Grammar: terms joined by `+`/`-`, each term `[coeff*]v0^a0*v1^a1*...`
//! where `coeff` is `p` or `p/q` and `v` is the variable letter (`y` for
//! socles, `x` for elements of the polynomial ring). Whitespace is ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Monomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// Linear form `sum coeffs[i] * v_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.nvars(), self.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Degree if every term has the same degree; `None` for the zero polynomial
    /// or an inhomogeneous one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Pad with extra trailing variables.
    pub fn with_nvars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(nvars, 0);
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// Substitute `v_i -> images[i]` for every variable.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(self.nvars, Poly::nvars);
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                term = term.mul(&images[i].pow(e));
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(point))
    }

    /// Canonical text: terms in decreasing term order, coefficients as `p/q`.
    pub fn render(&self, var: char) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(var);
            if m.degree() == 0 {
                write!(out, "{abs}").unwrap();
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                write!(out, "{abs}*{mono}").unwrap();
            }
        }
        out
    }

    /// Parse with the given variable letter. `min_vars` pads the variable
    /// count (so `y0^4` can live on the plane).
    pub fn parse(text: &str, var: char, min_vars: usize) -> Result<Poly> {
        let parsed = Parser::new(text, var).parse()?;
        let max_index = parsed
            .iter()
            .flat_map(|(exps, _)| exps.keys().copied())
            .max();
        let nvars = max_index.map_or(1, |i| i + 1).max(min_vars).max(1);
        let mut p = Poly::zero(nvars);
        for (exps, c) in parsed {
            let mut e = vec![0u32; nvars];
            for (i, k) in exps {
                e[i] += k;
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }
}

type RawTerm = (BTreeMap<usize, u32>, Rational);

struct Parser<'a> {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
    var: char,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, var: char) -> Self {
        let mut chars = Vec::new();
        for (li, line) in src.lines().enumerate() {
            for (ci, ch) in line.chars().enumerate() {
                if !ch.is_whitespace() {
                    chars.push((li + 1, ci + 1, ch));
                }
            }
        }
        Parser {
            chars,
            pos: 0,
            var,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, _, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => self
                .chars
                .last()
                .map_or((1, 1), |&(l, c, _)| (l, c + 1)),
        };
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<Vec<RawTerm>> {
        if self.chars.is_empty() {
            return Err(self.error("empty input"));
        }
        let mut terms = Vec::new();
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                Some(c) => return Err(self.error(format!("expected `+` or `-`, found `{c}`"))),
                None => unreachable!(),
            }
            first = false;
            let (exps, c) = self.term()?;
            terms.push((exps, c * sign));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = Rational::one();
        let mut exps = BTreeMap::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.number()?;
                }
                Some(c) if c == self.var => {
                    self.pos += 1;
                    let idx = self.integer("variable index")?;
                    let idx = usize::try_from(idx).map_err(|_| self.error("variable index too large"))?;
                    let mut power = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let p = self.integer("exponent")?;
                        power = u32::try_from(p).map_err(|_| self.error("exponent too large"))?;
                    }
                    *exps.entry(idx).or_insert(0) += power;
                }
                Some(c) => return Err(self.error(format!("unexpected `{c}`"))),
                None => return Err(self.error("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            break;
        }
        Ok((exps, coeff))
    }

    fn integer(&mut self, what: &str) -> Result<BigInt> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            self.pos = start;
            return Err(self.error(format!("expected {what}")));
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Rational> {
        let num = self.integer("number")?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.integer("denominator")?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn parse_and_render_round_trip() {
        let p = Poly::parse("y0^3 + y1^3", 'y', 0).unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(p.render('y'), "y0^3 + y1^3");
        let q = Poly::parse(" 1/2 * y0^2*y1 - 3y1^3 ", 'y', 0);
        // `3y1` without `*` is not in the grammar
        assert!(q.is_err());
        let q = Poly::parse("1/2*y0^2*y1 - 3*y1^3", 'y', 0).unwrap();
        assert_eq!(q.render('y'), "1/2*y0^2*y1 - 3*y1^3");
        assert_eq!(q.coeff(&Monomial::new(vec![2, 1])), ratio(1, 2));
    }

    #[test]
    fn parse_pads_variables() {
        let p = Poly::parse("y0^4", 'y', 3).unwrap();
        assert_eq!(p.nvars(), 3);
        assert_eq!(p.homogeneous_degree(), Some(4));
    }

    #[test]
    fn zero_and_constants() {
        let z = Poly::parse("0", 'y', 0).unwrap();
        assert!(z.is_zero());
        let c = Poly::parse("5", 'y', 2).unwrap();
        assert_eq!(c.homogeneous_degree(), Some(0));
        assert_eq!(c.coeff(&Monomial::one(2)), rat(5));
    }

    #[test]
    fn like_terms_combine() {
        let p = Poly::parse("y0*y1 + y1*y0 - 2*y0*y1", 'y', 0).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn parse_error_positions() {
        match Poly::parse("y0^3 +\n y1^^3", 'y', 0) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Poly::parse("y0 + x1", 'y', 0),
            Err(Error::Parse { line: 1, column: 6, .. })
        ));
        assert!(Poly::parse("1/0*y0", 'y', 0).is_err());
        assert!(Poly::parse("", 'y', 0).is_err());
        assert!(Poly::parse("y0 +", 'y', 0).is_err());
    }

    #[test]
    fn substitution_expands() {
        // (y0 + y1)^2 via substitution into y0^2
        let p = Poly::parse("y0^2", 'y', 2).unwrap();
        let images = vec![
            Poly::parse("y0 + y1", 'y', 2).unwrap(),
            Poly::parse("y1", 'y', 2).unwrap(),
        ];
        assert_eq!(p.substitute(&images).render('y'), "y0^2 + 2*y0*y1 + y1^2");
    }
}
