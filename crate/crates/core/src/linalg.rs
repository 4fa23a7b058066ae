//! Monomials, exact rational matrices, and the binomial helpers everything
//! else is built from.
//!
//! All arithmetic is over `BigRational`. Ranks are computed by fraction-free
//! (Bareiss) elimination on integer rows; kernels come from the reduced row
//! echelon form so their shape depends only on the pivot pattern.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p/q` or an integer.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    let r: Rational = t.parse().ok()?;
    Some(r)
}

/// Serde adapter writing rationals as `p/q` strings.
pub mod rational_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).ok_or_else(|| de::Error::custom(format!("bad rational `{text}`")))
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{de, Deserialize, Deserializer, Serializer};

        use super::super::Rational;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| {
                    super::super::parse_rational(t).ok_or_else(|| de::Error::custom(format!("bad rational `{t}`")))
                })
                .collect()
        }
    }
}

/// Exponent vector of a monomial in `n + 1` variables.
///
/// Ordered by graded reverse lexicographic order with `x0 > x1 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    /// Product of the factorials of the exponents.
    pub fn factorial(&self) -> BigInt {
        self.0
            .iter()
            .map(|&e| factorial(e))
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Evaluate at a point given by rational coordinates.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (e, c) in self.0.iter().zip(point) {
            for _ in 0..*e {
                acc *= c;
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // reverse lex: the monomial with the smaller exponent in the last
        // differing variable is the larger one
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render('x'))
    }
}

impl Monomial {
    /// Render as `x0^2*x1`, or `1` for the unit monomial.
    pub fn render(&self, var: char) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("{var}{i}")
                } else {
                    format!("{var}{i}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of degree `e` in `n + 1` variables, largest first.
pub fn monomial_basis(n: usize, e: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n + 1];
    fill_exponents(&mut current, 0, e, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill_exponents(current: &mut Vec<u32>, idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == current.len() {
        current[idx] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for k in (0..=remaining).rev() {
        current[idx] = k;
        fill_exponents(current, idx + 1, remaining - k, out);
    }
    current[idx] = 0;
}

/// Position of `m` inside `monomial_basis(n, deg m)`.
pub fn monomial_index(basis: &[Monomial], m: &Monomial) -> Option<usize> {
    basis.binary_search_by(|probe| m.cmp(probe)).ok()
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Ordinary binomial coefficient with non-negative arguments, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `a (a-1) ... (a-b+1) / b!` for rational `a`.
pub fn gen_binomial(a: &Rational, b: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..b {
        acc *= a - rat(i as i64);
    }
    acc / Rational::from_integer(factorial(b))
}

/// Dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Matrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    /// Rows scaled by the lcm of their denominators.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows(), self.cols)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if sel != prow {
                for k in 0..m.cols {
                    m.data.swap(sel * m.cols + k, prow * m.cols + k);
                }
            }
            let inv = m.get(prow, c).recip();
            for k in c..m.cols {
                let v = m.get(prow, k) * &inv;
                m.set(prow, k, v);
            }
            for r in 0..m.rows {
                if r == prow || m.get(r, c).is_zero() {
                    continue;
                }
                let factor = m.get(r, c).clone();
                for k in c..m.cols {
                    let sub = m.get(prow, k) * &factor;
                    if !sub.is_zero() {
                        let v = m.get(r, k) - sub;
                        m.set(r, k, v);
                    }
                }
            }
            pivots.push(c);
            prow += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel, one vector per non-pivot column, each
    /// scaled to coprime integers with a positive leading entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            out.push(primitive(&v));
        }
        out
    }

    /// Solve `self * x = b` exactly; `None` if inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = red.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Scale a rational vector to coprime integers whose first nonzero entry is positive.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(sel) = (rank..nrows).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(sel, rank);
        let pivot = rows[rank][c].clone();
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for k in c + 1..cols {
                let v = &pivot * &row[k] - &lead * &prow[k];
                row[k] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_binary_cubics_in_term_order() {
        let b = monomial_basis(1, 3);
        let exps: Vec<Vec<u32>> = b.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(2, 2).len(), 6);
        assert_eq!(monomial_basis(0, 5).len(), 1);
        assert_eq!(monomial_basis(3, 0).len(), 1);
    }

    #[test]
    fn basis_size_quaternary_cubics_matches_stars_and_bars() {
        // independent count: choose bar positions among e + n slots
        let mut count = 0;
        for a in 0..=3u32 {
            for b in 0..=3 - a {
                for c in 0..=3 - a - b {
                    let _d = 3 - a - b - c;
                    count += 1;
                }
            }
        }
        assert_eq!(count, 20);
        assert_eq!(monomial_basis(3, 3).len(), count);
    }

    #[test]
    fn grevlex_ties_broken_by_last_variable() {
        // x1^2 > x0*x2 in grevlex with x0 > x1 > x2
        let a = Monomial::new(vec![0, 2, 0]);
        let b = Monomial::new(vec![1, 0, 1]);
        assert!(a > b);
        let basis = monomial_basis(2, 2);
        assert_eq!(basis[0], Monomial::new(vec![2, 0, 0]));
        assert_eq!(basis[5], Monomial::new(vec![0, 0, 2]));
        for m in &basis {
            assert_eq!(monomial_index(&basis, m).map(|i| &basis[i]), Some(m));
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), rat(1)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        assert_eq!(
            Matrix::from_i64(&[&[1, 1]]).kernel_basis(),
            vec![vec![rat(1), rat(-1)]]
        );
        assert_eq!(Matrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_vectors_are_primitive_integers() {
        let m = Matrix::from_i64(&[&[2, 4, 6], &[1, 2, 3]]);
        for v in m.kernel_basis() {
            assert!(v.iter().all(|x| x.is_integer()));
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(gen_binomial(&rat(5), 2), rat(10));
        assert_eq!(gen_binomial(&rat(-2), 2), rat(3));
        // (-1/2)(-3/2)/2 computed by hand
        assert_eq!(gen_binomial(&ratio(-1, 2), 2), ratio(3, 8));
        assert_eq!(gen_binomial(&rat(7), 0), rat(1));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[rat(2), rat(0)]), Some(vec![rat(1), rat(1)]));
        let sing = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(sing.solve(&[rat(1), rat(3)]), None);
    }
}
