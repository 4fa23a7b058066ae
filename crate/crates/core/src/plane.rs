//! Chern characters on the plane, the discriminant, and the bound `m_r(χ')`
//! on the Euler characteristic of a semistable sheaf of rank `r`.
//!
//! The naive bound only asks for `Δ ≥ 0` on the integrality lattice. The
//! refined bound also asks for a semistable sheaf to exist, which is decided
//! by the Drézet–Le Potier curve: either the invariants are those of an
//! exceptional bundle, or the normalized discriminant lies on or above
//! `δ(μ)`, the boundary built from exceptional slopes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::charge::{hilb_poly, TwistComplex};
use crate::error::{Error, Result};
use crate::linalg::{rat, ratio, rational_str, Rational};

pub const DEFAULT_RANK_BOUND: u64 = 13;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernP2 {
    pub ch0: i64,
    pub ch1: i64,
    #[serde(with = "rational_str")]
    pub ch2: Rational,
}

impl ChernP2 {
    pub fn chi_prime(&self) -> Rational {
        ratio(3 * self.ch0, 2) + rat(self.ch1)
    }

    pub fn chi(&self) -> Rational {
        rat(self.ch0) + ratio(3 * self.ch1, 2) + &self.ch2
    }
}

impl fmt::Display for ChernP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ch0, self.ch1, self.ch2)
    }
}

fn integral(r: &Rational, what: &str) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::NonIntegral(format!("{what} = {r}")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("{what} = {r} is too large")))
}

/// Read `(ch0, ch1, ch2)` off `P(t) = (r/2)t² + (ch1 + 3r/2)t + χ`.
pub fn chern_p2(c: &TwistComplex) -> Result<ChernP2> {
    if c.n != 2 {
        return Err(Error::NotPlane(c.n));
    }
    let p = hilb_poly(c);
    let r = integral(&(p.coeff(2) * rat(2)), "ch0")?;
    let ch1 = integral(&(p.coeff(1) - ratio(3 * r, 2)), "ch1")?;
    let ch2 = p.coeff(0) - rat(r) - ratio(3 * ch1, 2);
    Ok(ChernP2 { ch0: r, ch1, ch2 })
}

pub fn discriminant(ch: &ChernP2) -> Rational {
    rat(ch.ch1 * ch.ch1) - rat(2 * ch.ch0) * &ch.ch2
}

fn ch1_for(r: u64, chi_prime: &Rational) -> Result<i64> {
    if r == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    integral(&(chi_prime - ratio(3 * r as i64, 2)), "ch1")
}

/// Largest `ch2 ≡ ch1²/2 (mod 1)` with `ch1² - 2r·ch2 ≥ 0`.
fn max_lattice_ch2(r: u64, ch1: i64) -> Rational {
    let top = ratio(ch1 * ch1, 2);
    // need k ≥ ch1²(r-1)/(2r)
    let need = ratio(ch1 * ch1 * (r as i64 - 1), 2 * r as i64);
    let k = need.ceil();
    top - k
}

fn chi_of(r: u64, ch1: i64, ch2: &Rational) -> Rational {
    rat(r as i64) + ratio(3 * ch1, 2) + ch2
}

pub fn m_r_naive(r: u64, chi_prime: &Rational) -> Result<Rational> {
    let ch1 = ch1_for(r, chi_prime)?;
    Ok(chi_of(r, ch1, &max_lattice_ch2(r, ch1)))
}

/// An exceptional bundle on the plane, up to twist: slope and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exceptional {
    pub slope: Rational,
    pub rank: u64,
}

impl Exceptional {
    /// `(1 - 1/r²)/2`.
    pub fn discriminant(&self) -> Rational {
        let r2 = rat((self.rank * self.rank) as i64);
        (Rational::one() - r2.recip()) / rat(2)
    }
}

/// Exceptional slopes in `[0, 1]` with rank at most `bound`, sorted.
///
/// Built from `O` and `O(1)` by the mutation
/// `α ⋆ β = (α+β)/2 + (Δ_β - Δ_α)/(3 + α - β)` with rank `r_α r_β (3 + α - β)`.
pub fn exceptional_slopes(bound: u64) -> Vec<Exceptional> {
    fn go(a: &Exceptional, b: &Exceptional, bound: u64, out: &mut Vec<Exceptional>) {
        let gap = rat(3) + &a.slope - &b.slope;
        let rank = rat((a.rank * b.rank) as i64) * &gap;
        let rank = rank.to_integer().to_u64().expect("positive rank");
        if rank > bound {
            return;
        }
        let slope = (&a.slope + &b.slope) / rat(2) + (b.discriminant() - a.discriminant()) / gap;
        let mid = Exceptional { slope, rank };
        go(a, &mid, bound, out);
        out.push(mid.clone());
        go(&mid, b, bound, out);
    }
    let zero = Exceptional { slope: rat(0), rank: 1 };
    let one = Exceptional { slope: rat(1), rank: 1 };
    let mut out = vec![zero.clone()];
    go(&zero, &one, bound.max(1), &mut out);
    out.push(one);
    out
}

/// `P(x) = x²/2 + 3x/2 + 1`, the Hilbert polynomial of `O` in the slope variable.
fn dlp_p(x: &Rational) -> Rational {
    x * x / rat(2) + x * ratio(3, 2) + rat(1)
}

/// Integer translates of the exceptional slopes within distance 3 of `mu`.
fn nearby(mu: &Rational, table: &[Exceptional]) -> Vec<Exceptional> {
    let base = mu.floor().to_integer();
    let mut out = Vec::new();
    for shift in -4..=4 {
        let k = Rational::from_integer(&base + BigInt::from(shift));
        for e in table {
            let slope = &e.slope + &k;
            if (&slope - mu).abs() < rat(3) && !out.iter().any(|o: &Exceptional| o.slope == slope) {
                out.push(Exceptional { slope, rank: e.rank });
            }
        }
    }
    out
}

/// The boundary value `δ(μ)`; fails when no generated exceptional interval
/// contains `μ`.
pub fn dlp_delta(mu: &Rational, bound: u64) -> Result<Rational> {
    let table = exceptional_slopes(bound);
    let near = nearby(mu, &table);
    let covered = near.iter().any(|e| {
        let x = (mu - &e.slope).abs();
        x < ratio(3, 2) && dlp_p(&-x.clone()) > e.discriminant()
    });
    if !covered {
        return Err(Error::BoundaryUnresolved {
            slope: mu.to_string(),
            bound,
        });
    }
    Ok(near
        .iter()
        .map(|e| dlp_p(&-(mu - &e.slope).abs()) - e.discriminant())
        .max()
        .expect("covered implies nonempty"))
}

/// Whether a semistable sheaf with rank `r`, `ch1`, `ch2` exists on the plane.
pub fn semistable_exists(r: u64, ch1: i64, ch2: &Rational, bound: u64) -> Result<bool> {
    let ri = r as i64;
    let mu = ratio(ch1, ri);
    let delta = (rat(ch1 * ch1) - rat(2 * ri) * ch2) / rat(2 * ri * ri);
    if delta.is_negative() {
        return Ok(false);
    }
    let table = exceptional_slopes(bound);
    for e in nearby(&mu, &table) {
        if e.slope == mu && e.discriminant() == delta && r.is_multiple_of(e.rank) {
            return Ok(true);
        }
    }
    Ok(delta >= dlp_delta(&mu, bound)?)
}

pub fn m_r_dlp(r: u64, chi_prime: &Rational) -> Result<Rational> {
    m_r_dlp_bounded(r, chi_prime, DEFAULT_RANK_BOUND)
}

pub fn m_r_dlp_bounded(r: u64, chi_prime: &Rational, bound: u64) -> Result<Rational> {
    let ch1 = ch1_for(r, chi_prime)?;
    let mut ch2 = max_lattice_ch2(r, ch1);
    // Δ grows by 2r per step, so the δ(μ) boundary is reached after finitely many steps
    loop {
        if semistable_exists(r, ch1, &ch2, bound)? {
            return Ok(chi_of(r, ch1, &ch2));
        }
        ch2 -= Rational::one();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MrMode {
    Naive,
    Dlp,
}

pub fn m_r(mode: MrMode, r: u64, chi_prime: &Rational) -> Result<Rational> {
    match mode {
        MrMode::Naive => m_r_naive(r, chi_prime),
        MrMode::Dlp => m_r_dlp(r, chi_prime),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrCell {
    pub r: u64,
    #[serde(with = "rational_str")]
    pub chi_prime: Rational,
    #[serde(with = "rational_str")]
    pub value: Rational,
}

/// Rows `r = 1..=ranks`, columns `χ' = 1/2, 1, ..., max_twice/2`. A cell is
/// present when `ch1` is integral and at least `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MrTable {
    pub mode: MrMode,
    #[serde(with = "rational_str::vec")]
    pub columns: Vec<Rational>,
    pub cells: Vec<MrCell>,
}

impl MrTable {
    pub fn build(mode: MrMode, ranks: u64, max_twice: i64) -> Result<MrTable> {
        let columns: Vec<Rational> = (1..=max_twice).map(|k| ratio(k, 2)).collect();
        let mut cells = Vec::new();
        for r in 1..=ranks {
            for c in &columns {
                let ch1 = c - ratio(3 * r as i64, 2);
                if !ch1.is_integer() || ch1 < rat(-1) {
                    continue;
                }
                cells.push(MrCell {
                    r,
                    chi_prime: c.clone(),
                    value: m_r(mode, r, c)?,
                });
            }
        }
        Ok(MrTable { mode, columns, cells })
    }

    pub fn get(&self, r: u64, chi_prime: &Rational) -> Option<&Rational> {
        self.cells
            .iter()
            .find(|c| c.r == r && &c.chi_prime == chi_prime)
            .map(|c| &c.value)
    }
}

impl fmt::Display for MrTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks = self.cells.iter().map(|c| c.r).max().unwrap_or(0);
        let width = self
            .columns
            .iter()
            .map(|c| c.to_string().len())
            .chain(self.cells.iter().map(|c| c.value.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "r\\chi'")?;
        for c in &self.columns {
            write!(f, " {:>width$}", c.to_string())?;
        }
        writeln!(f)?;
        for r in 1..=ranks {
            write!(f, "{r:>6}")?;
            for c in &self.columns {
                let v = self.get(r, c).map_or(String::new(), ToString::to_string);
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn o(n: i64) -> TwistComplex {
        TwistComplex::line_bundle(2, n)
    }

    #[test]
    fn chern_characters() {
        assert_eq!(chern_p2(&o(1)).unwrap(), ChernP2 { ch0: 1, ch1: 1, ch2: ratio(1, 2) });
        let ip = TwistComplex::points_ideal(2, 1, 1);
        assert_eq!(chern_p2(&ip).unwrap(), ChernP2 { ch0: 1, ch1: 1, ch2: ratio(-1, 2) });
        let e = TwistComplex::new(2, vec![(1, 2, 5), (0, 1, 5)]);
        assert_eq!(chern_p2(&e).unwrap(), ChernP2 { ch0: 0, ch1: 5, ch2: ratio(-15, 2) });
        assert_eq!(chern_p2(&TwistComplex::line_bundle(3, 0)), Err(Error::NotPlane(3)));
    }

    #[test]
    fn chern_identities() {
        for c in [o(0), o(3), TwistComplex::points_ideal(2, 3, 2), TwistComplex::omega(2, 1)] {
            let ch = chern_p2(&c).unwrap();
            let z = crate::charge::charge(&c, &Rational::zero());
            assert_eq!(ch.chi_prime(), z.x);
            assert_eq!(ch.chi(), z.y);
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&chern_p2(&o(1)).unwrap()), rat(0));
        assert_eq!(discriminant(&chern_p2(&TwistComplex::points_ideal(2, 1, 1)).unwrap()), rat(2));
        assert_eq!(discriminant(&ChernP2 { ch0: 2, ch1: -1, ch2: ratio(-1, 2) }), rat(3));
    }

    #[test]
    fn exceptional_generation() {
        let slopes: Vec<Rational> = exceptional_slopes(13).into_iter().map(|e| e.slope).collect();
        let expect = [(0, 1), (5, 13), (2, 5), (1, 2), (3, 5), (8, 13), (1, 1)];
        assert_eq!(slopes, expect.iter().map(|&(p, q)| ratio(p, q)).collect::<Vec<_>>());
        let ranks: Vec<u64> = exceptional_slopes(13).into_iter().map(|e| e.rank).collect();
        assert_eq!(ranks, vec![1, 13, 5, 2, 5, 13, 1]);
        for e in exceptional_slopes(40) {
            // an exceptional bundle has r·μ integral and χ(E,E) = 1
            assert!((&e.slope * rat(e.rank as i64)).is_integer());
        }
    }

    #[test]
    fn naive_values() {
        assert_eq!(m_r_naive(1, &ratio(3, 2)).unwrap(), rat(1));
        assert_eq!(m_r_naive(2, &rat(3)).unwrap(), rat(2));
        assert_eq!(m_r_naive(3, &ratio(7, 2)).unwrap(), rat(1));
        assert!(matches!(m_r_naive(2, &ratio(1, 2)), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn refined_values() {
        assert_eq!(m_r_dlp(1, &ratio(5, 2)).unwrap(), rat(3));
        assert_eq!(m_r_dlp(3, &ratio(7, 2)).unwrap(), rat(0));
        assert_eq!(m_r_dlp(3, &ratio(9, 2)).unwrap(), rat(3));
        assert_eq!(m_r_dlp(2, &rat(2)).unwrap(), rat(0));
    }

    #[test]
    fn dlp_boundary_at_integers() {
        // δ(0) comes from O(-1) and O(1): P(-1) - 0 = 0, and from O itself: 1
        assert_eq!(dlp_delta(&rat(0), 13).unwrap(), rat(1));
        assert_eq!(dlp_delta(&ratio(-1, 3), 13).unwrap(), ratio(5, 9));
    }

    #[test]
    fn table_layout() {
        let t = MrTable::build(MrMode::Dlp, 3, 9).unwrap();
        assert_eq!(t.cells.len(), 10);
        let text = t.to_string();
        assert_eq!(text.lines().count(), 4);
        let json = serde_json::to_string(&t).unwrap();
        let back: MrTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
