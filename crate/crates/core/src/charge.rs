//! K-classes of complexes of line bundles on `P^n`, their Hilbert
//! polynomials, and the central charge `Z_s(E) = (P'(s), P(s))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binomial, gen_binomial, rat, rational_str, Matrix, Rational};
use crate::resolution::BettiTable;

/// `Σ (-1)^i b [O(-j)]`, stored as `(i, j, b)` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistComplex {
    pub n: usize,
    pub terms: Vec<(i64, i64, u64)>,
}

impl TwistComplex {
    pub fn new(n: usize, terms: Vec<(i64, i64, u64)>) -> TwistComplex {
        TwistComplex { n, terms }
    }

    pub fn zero(n: usize) -> TwistComplex {
        TwistComplex::new(n, Vec::new())
    }

    /// `O(e)`.
    pub fn line_bundle(n: usize, e: i64) -> TwistComplex {
        TwistComplex::new(n, vec![(0, -e, 1)])
    }

    /// `ω(-e)[n] = O(-e-n-1)[n]`.
    pub fn omega(n: usize, e: i64) -> TwistComplex {
        TwistComplex::new(n, vec![(n as i64, e + n as i64 + 1, 1)])
    }

    /// Skyscraper of a point through its Koszul resolution.
    pub fn point(n: usize) -> TwistComplex {
        let terms = (0..=n)
            .map(|i| (i as i64, i as i64, binomial(n as u64, i as u64)))
            .collect();
        TwistComplex::new(n, terms)
    }

    /// Ideal sheaf of `k` points twisted by `e`.
    pub fn points_ideal(n: usize, k: u64, e: i64) -> TwistComplex {
        let mut c = TwistComplex::line_bundle(n, e);
        for _ in 0..k {
            c = c.concat(&TwistComplex::point(n).shift(1));
        }
        c
    }

    pub fn shift(&self, k: i64) -> TwistComplex {
        let terms = self.terms.iter().map(|&(i, j, b)| (i + k, j, b)).collect();
        TwistComplex::new(self.n, terms)
    }

    /// `E ⊗ O(e)`.
    pub fn twist(&self, e: i64) -> TwistComplex {
        let terms = self.terms.iter().map(|&(i, j, b)| (i, j - e, b)).collect();
        TwistComplex::new(self.n, terms)
    }

    pub fn concat(&self, other: &TwistComplex) -> TwistComplex {
        assert_eq!(self.n, other.n, "complexes on different spaces");
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        TwistComplex::new(self.n, terms)
    }

    pub fn repeat(&self, k: u64) -> TwistComplex {
        let terms = self.terms.iter().map(|&(i, j, b)| (i, j, b * k)).collect();
        TwistComplex::new(self.n, terms)
    }

    /// Sheafified columns `i = 1..=n` of a betti table, reindexed to start at
    /// homological degree 0 and twisted by `e`.
    pub fn interior(t: &BettiTable, e: i64) -> TwistComplex {
        let terms = t
            .entries()
            .into_iter()
            .filter(|&(i, _, _)| i >= 1 && i <= t.n())
            .map(|(i, j, b)| (i as i64 - 1, j as i64 - e, b))
            .collect();
        TwistComplex::new(t.n(), terms)
    }
}

/// Polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbPoly {
    coeffs: Vec<Rational>,
}

impl HilbPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> HilbPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> HilbPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        HilbPoly::from_coeffs(coeffs)
    }

    /// `C(t + a, n)` as a polynomial in `t`.
    fn shifted_binomial(a: i64, n: usize) -> HilbPoly {
        let mut coeffs = vec![Rational::one()];
        for m in 0..n as i64 {
            // multiply by (t + a - m)
            let c = rat(a - m);
            let mut next = vec![Rational::zero(); coeffs.len() + 1];
            for (k, v) in coeffs.iter().enumerate() {
                next[k] += v * &c;
                next[k + 1] += v;
            }
            coeffs = next;
        }
        let nf = Rational::from_integer(crate::linalg::factorial(n as u32));
        HilbPoly::from_coeffs(coeffs.into_iter().map(|c| c / &nf).collect())
    }

    fn add_scaled(&mut self, other: &HilbPoly, s: &Rational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            self.coeffs[k] += c * s;
        }
        *self = HilbPoly::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl fmt::Display for HilbPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{a}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{a}*t^{k}")?,
            }
        }
        Ok(())
    }
}

pub fn hilb_poly(c: &TwistComplex) -> HilbPoly {
    let mut p = HilbPoly::from_coeffs(Vec::new());
    for &(i, j, b) in &c.terms {
        let sign = if i.rem_euclid(2) == 0 { rat(b as i64) } else { rat(-(b as i64)) };
        p.add_scaled(&HilbPoly::shifted_binomial(c.n as i64 - j, c.n), &sign);
    }
    p
}

/// `(χ', χ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChargePoint {
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub y: Rational,
}

impl ChargePoint {
    pub fn new(x: Rational, y: Rational) -> ChargePoint {
        ChargePoint { x, y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> ChargePoint {
        ChargePoint::new(
            crate::linalg::ratio(x.0, x.1),
            crate::linalg::ratio(y.0, y.1),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> ChargePoint {
        ChargePoint::new(&self.x * k, &self.y * k)
    }
}

impl fmt::Display for ChargePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for ChargePoint {
    type Output = ChargePoint;

    fn add(self, o: ChargePoint) -> ChargePoint {
        ChargePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Neg for ChargePoint {
    type Output = ChargePoint;

    fn neg(self) -> ChargePoint {
        ChargePoint::new(-self.x, -self.y)
    }
}

pub fn charge(c: &TwistComplex, s: &Rational) -> ChargePoint {
    let p = hilb_poly(c);
    ChargePoint::new(p.derivative().eval(s), p.eval(s))
}

fn sector(p: &ChargePoint) -> u8 {
    match (p.y.cmp(&Rational::zero()), p.x.is_positive()) {
        (Ordering::Less, _) => 0,
        (Ordering::Equal, true) => 1,
        (Ordering::Greater, _) => 2,
        (Ordering::Equal, false) => 3,
    }
}

/// Compare arguments in `(-1, 1]` (in units of π). The upper half plane
/// with the negative real ray is `(0, 1]`.
pub fn compare_arg(p: &ChargePoint, q: &ChargePoint) -> Result<Ordering> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroCharge);
    }
    let (sp, sq) = (sector(p), sector(q));
    if sp != sq {
        return Ok(sp.cmp(&sq));
    }
    if sp == 1 || sp == 3 {
        return Ok(Ordering::Equal);
    }
    let cross = &p.x * &q.y - &p.y * &q.x;
    Ok(match cross.cmp(&Rational::zero()) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    })
}

/// `E ↦ RHom(E, ω)[n]`; the Hilbert polynomial becomes `P(-t)`, so the
/// charge at 0 is reflected across the imaginary axis.
pub fn dual_class(c: &TwistComplex) -> TwistComplex {
    let n = c.n as i64;
    let terms = c.terms.iter().map(|&(i, j, b)| (n - i, n + 1 - j, b)).collect();
    TwistComplex::new(c.n, terms)
}

/// Coefficients `V_i` with `[c] = Σ (-1)^i V_i [O(-i)]`.
pub fn beilinson_dims(c: &TwistComplex) -> Vec<Rational> {
    let n = c.n;
    let p = hilb_poly(c);
    let mut m = Matrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        for i in 0..=n {
            let v = gen_binomial(&rat(n as i64 - k as i64 - i as i64), n as u32);
            m.set(k, i, if i % 2 == 0 { v } else { -v });
        }
    }
    let rhs: Vec<Rational> = (0..=n).map(|k| p.eval(&rat(-(k as i64)))).collect();
    m.solve(&rhs).expect("the line bundles O(-i) form a basis")
}

/// Charge of the interior columns of a Gorenstein betti table twisted by
/// `e`, i.e. of `[O(e)] - [ω(d')[n]]` for the matching `d'`.
pub fn cone_charge(t: &BettiTable, e: i64, s: &Rational) -> Result<ChargePoint> {
    if t.n() == 0 || !t.has_gorenstein_corners() {
        return Err(Error::MalformedTable(
            "expected a Gorenstein table with single corners in columns 0 and n+1".into(),
        ));
    }
    Ok(charge(&TwistComplex::interior(t, e), s))
}

/// `χ'(O(t)) / χ(O(t)) = Σ 1/(t+i)`.
pub fn anti_slope(n: usize, t: &Rational) -> Result<Rational> {
    let mut total = Rational::zero();
    for i in 1..=n as i64 {
        let denom = t + rat(i);
        if denom.is_zero() {
            return Err(Error::Pole(t.to_string()));
        }
        total += denom.recip();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    fn half() -> Rational {
        ratio(-1, 2)
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> ChargePoint {
        ChargePoint::from_ratios(x, y)
    }

    #[test]
    fn hilbert_polynomials() {
        let o = hilb_poly(&TwistComplex::line_bundle(2, 0));
        assert_eq!(o.coeffs(), &[rat(1), ratio(3, 2), ratio(1, 2)]);
        let w = hilb_poly(&TwistComplex::omega(2, 1));
        // (t-2)(t-3)/2
        assert_eq!(w.coeffs(), &[rat(3), ratio(-5, 2), ratio(1, 2)]);
        let e = TwistComplex::new(2, vec![(1, 2, 5), (0, 1, 5)]);
        assert_eq!(hilb_poly(&e).to_string(), "5*t");
        assert_eq!(hilb_poly(&TwistComplex::point(2)).to_string(), "1");
    }

    #[test]
    fn charges_at_zero() {
        let harmonic = [ratio(1, 1), ratio(3, 2), ratio(11, 6)];
        for n in 1..=3 {
            let z = charge(&TwistComplex::line_bundle(n, 0), &Rational::zero());
            assert_eq!(z, ChargePoint::new(harmonic[n - 1].clone(), rat(1)));
        }
        let ipq = TwistComplex::points_ideal(2, 2, 1);
        assert_eq!(charge(&ipq, &Rational::zero()), pt((5, 2), (1, 1)));
    }

    #[test]
    fn shifted_charges() {
        let s = half();
        let o1 = TwistComplex::line_bundle(2, -1).shift(1);
        assert_eq!(charge(&o1, &s), pt((0, 1), (1, 8)));
        assert_eq!(charge(&TwistComplex::line_bundle(3, 0), &s), pt((23, 24), (5, 16)));
        assert_eq!(charge(&TwistComplex::point(2), &s), pt((0, 1), (1, 1)));
    }

    #[test]
    fn argument_order() {
        let neg = pt((-1, 1), (0, 1));
        for q in [pt((1, 1), (1, 1)), pt((0, 1), (1, 1)), pt((-5, 1), (1, 1)), pt((3, 1), (0, 1))] {
            assert_eq!(compare_arg(&q, &neg).unwrap(), Ordering::Less);
        }
        assert_eq!(compare_arg(&neg, &pt((-7, 1), (0, 1))).unwrap(), Ordering::Equal);
        assert_eq!(compare_arg(&pt((0, 1), (1, 1)), &pt((1, 1), (1, 1))).unwrap(), Ordering::Greater);
        assert_eq!(compare_arg(&pt((5, 2), (1, 1)), &pt((3, 2), (1, 1))).unwrap(), Ordering::Less);
        assert_eq!(compare_arg(&pt((1, 1), (-1, 1)), &pt((1, 1), (0, 1))).unwrap(), Ordering::Less);
        assert_eq!(compare_arg(&pt((0, 1), (0, 1)), &neg), Err(Error::ZeroCharge));
    }

    #[test]
    fn duality_reflects() {
        let zero = Rational::zero();
        for n in 1..=3 {
            for e in 0..=4 {
                let o = TwistComplex::line_bundle(n, e);
                let d = dual_class(&o);
                assert_eq!(d, TwistComplex::omega(n, e));
                let (z, zd) = (charge(&o, &zero), charge(&d, &zero));
                assert_eq!(zd, ChargePoint::new(-z.x.clone(), z.y.clone()));
                assert_eq!(dual_class(&d), o);
            }
        }
        let e = TwistComplex::new(2, vec![(1, 2, 5), (0, 1, 5)]);
        assert_eq!(charge(&dual_class(&e), &zero), pt((-5, 1), (0, 1)));
    }

    #[test]
    fn beilinson_coefficients() {
        let as_ints = |v: Vec<Rational>| v.iter().map(|r| r.to_integer().try_into().unwrap()).collect::<Vec<i64>>();
        assert_eq!(as_ints(beilinson_dims(&TwistComplex::line_bundle(2, 1))), vec![3, 3, 1]);
        assert_eq!(as_ints(beilinson_dims(&TwistComplex::omega(2, 1))), vec![3, 8, 6]);
        assert_eq!(as_ints(beilinson_dims(&TwistComplex::point(2))), vec![1, 2, 1]);
    }

    #[test]
    fn anti_slopes() {
        assert_eq!(anti_slope(2, &rat(0)).unwrap(), ratio(3, 2));
        assert_eq!(anti_slope(2, &half()).unwrap(), ratio(8, 3));
        assert!(matches!(anti_slope(2, &rat(-2)), Err(Error::Pole(_))));
    }

    #[test]
    fn cone_of_quadric_table() {
        let t = BettiTable::from_rows(2, vec![vec![1, 0, 0, 0], vec![0, 5, 5, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(cone_charge(&t, 1, &Rational::zero()).unwrap(), pt((5, 1), (0, 1)));
        let bad = BettiTable::from_rows(2, vec![vec![1, 0, 0, 0], vec![1, 5, 5, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(cone_charge(&bad, 1, &Rational::zero()).is_err());
    }

    #[test]
    fn serde_as_strings() {
        let z = pt((5, 2), (-1, 8));
        let text = serde_json::to_string(&z).unwrap();
        assert_eq!(text, r#"{"x":"5/2","y":"-1/8"}"#);
        assert_eq!(serde_json::from_str::<ChargePoint>(&text).unwrap(), z);
    }
}
