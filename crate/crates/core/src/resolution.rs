//! Graded betti tables of apolar quotients via Koszul homology.
//!
//! `b_{i,i+k}` is the dimension of the homology of
//! `Λ^{i+1}V ⊗ R_{k-1} → Λ^i V ⊗ R_k → Λ^{i-1}V ⊗ R_{k+1}`.
//! Two models of `R_•` are available: the inverse system (derivatives of the
//! socle, where multiplication is an index shift) and normal forms modulo
//! `I_•` via [`QuotientBasis`]. Both give the same table.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apolarity::{apolar_piece, catalecticant, hilbert_function, HilbertFunction, Socle};
use crate::error::{Error, Result};
use crate::linalg::{binomial, monomial_basis, monomial_index, Matrix, Monomial, Rational};

pub const MAX_N: usize = 3;
pub const MAX_D: u32 = 6;

/// Standard monomials and normal-form projectors for each `R_e`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    n: usize,
    standard: Vec<Vec<Monomial>>,
    projectors: Vec<Matrix>,
}

impl QuotientBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.standard.len() as u32 - 1
    }

    pub fn standard(&self, e: u32) -> &[Monomial] {
        &self.standard[e as usize]
    }

    /// `h_e × dim S_e`; column `α` holds the normal form of `x^α`.
    pub fn projector(&self, e: u32) -> &Matrix {
        &self.projectors[e as usize]
    }

    pub fn project(&self, e: u32, v: &[Rational]) -> Vec<Rational> {
        self.projectors[e as usize].mul_vec(v)
    }

    /// Coordinates of the class of a monomial; zero beyond the socle degree.
    pub fn normal_form(&self, m: &Monomial) -> Vec<Rational> {
        let e = m.degree();
        if e > self.degree() {
            return Vec::new();
        }
        let basis = monomial_basis(self.n, e);
        let j = monomial_index(&basis, m).expect("monomial of matching arity");
        self.projectors[e as usize].column(j)
    }
}

pub fn quotient_bases(g: &Socle) -> QuotientBasis {
    let n = g.n();
    let mut standard = Vec::new();
    let mut projectors = Vec::new();
    for e in 0..=g.d() {
        let basis = monomial_basis(n, e);
        let ideal = apolar_piece(g, e).expect("degree in range");
        let (reduced, pivots) = if ideal.is_empty() {
            (Matrix::zeros(0, basis.len()), Vec::new())
        } else {
            Matrix::from_rows(ideal).rref()
        };
        let std_cols: Vec<usize> = (0..basis.len()).filter(|c| !pivots.contains(c)).collect();
        let mut p = Matrix::zeros(std_cols.len(), basis.len());
        for (s, &c) in std_cols.iter().enumerate() {
            p.set(s, c, Rational::one());
        }
        // x^pivot ≡ -Σ rref[r][s] x^s modulo I_e
        for (r, &pc) in pivots.iter().enumerate() {
            for (s, &c) in std_cols.iter().enumerate() {
                let v = reduced.get(r, c);
                if !v.is_zero() {
                    p.set(s, pc, -v.clone());
                }
            }
        }
        standard.push(std_cols.iter().map(|&c| basis[c].clone()).collect());
        projectors.push(p);
    }
    QuotientBasis {
        n,
        standard,
        projectors,
    }
}

/// Which model of `R_•` carries the Koszul complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    InverseSystem,
    Quotient,
}

/// Dense betti table, rows indexed by `j - i` in `0..=d`, columns by `i` in `0..=n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BettiJson", try_from = "BettiJson")]
pub struct BettiTable {
    n: usize,
    d: u32,
    rows: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    n: usize,
    d: u32,
    entries: Vec<(usize, u32, u64)>,
}

impl From<BettiTable> for BettiJson {
    fn from(t: BettiTable) -> Self {
        BettiJson {
            n: t.n,
            d: t.d,
            entries: t.entries(),
        }
    }
}

impl TryFrom<BettiJson> for BettiTable {
    type Error = Error;

    fn try_from(j: BettiJson) -> Result<Self> {
        BettiTable::from_entries(j.n, j.d, &j.entries)
    }
}

impl BettiTable {
    pub fn zero(n: usize, d: u32) -> BettiTable {
        BettiTable {
            n,
            d,
            rows: vec![vec![0; n + 2]; d as usize + 1],
        }
    }

    /// Build from `(i, j, b)` triples; cells not listed are zero.
    pub fn from_entries(n: usize, d: u32, entries: &[(usize, u32, u64)]) -> Result<BettiTable> {
        let mut t = BettiTable::zero(n, d);
        for &(i, j, b) in entries {
            if i > n + 1 || (j as usize) < i || j as usize - i > d as usize {
                return Err(Error::MalformedTable(format!(
                    "entry b[{i},{j}] lies outside the {}x{} grid",
                    d + 1,
                    n + 2
                )));
            }
            t.rows[j as usize - i][i] = b;
        }
        Ok(t)
    }

    /// Build from rows indexed by `j - i`.
    pub fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Result<BettiTable> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != n + 2) {
            return Err(Error::MalformedTable(format!("rows must have {} columns", n + 2)));
        }
        Ok(BettiTable {
            n,
            d: rows.len() as u32 - 1,
            rows,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        if i > self.n + 1 || (j as usize) < i {
            return 0;
        }
        self.rows.get(j as usize - i).map_or(0, |r| r[i])
    }

    pub fn set(&mut self, i: usize, j: u32, b: u64) {
        self.rows[j as usize - i][i] = b;
    }

    /// Nonzero entries as `(i, j, b)`, ordered by `i` then `j`.
    pub fn entries(&self) -> Vec<(usize, u32, u64)> {
        let mut out = Vec::new();
        for i in 0..=self.n + 1 {
            for (k, row) in self.rows.iter().enumerate() {
                if row[i] != 0 {
                    out.push((i, (i + k) as u32, row[i]));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("betti tables serialize")
    }

    /// Forced corners: a single `1` in column 0 at `j = 0`, and in column
    /// `n+1` a single `1` at `j = n+1+d`.
    pub fn has_gorenstein_corners(&self) -> bool {
        let n = self.n;
        let last = self.d as usize;
        (0..=last).all(|k| self.rows[k][0] == u64::from(k == 0))
            && (0..=last).all(|k| self.rows[k][n + 1] == u64::from(k == last))
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|b| b.to_string().len())
            .max()
            .unwrap_or(1)
            .max((self.n + 1).to_string().len());
        let label = self.d.to_string().len();
        write!(f, "{:label$} ", "")?;
        for i in 0..=self.n + 1 {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        for (k, row) in self.rows.iter().enumerate() {
            write!(f, "{k:>label$}:")?;
            for b in row {
                write!(f, " {b:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for a in start..n {
            cur.push(a);
            go(a + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Matrix of `Λ^i ⊗ M_k → Λ^{i-1} ⊗ N`, where `mult(a, c)` is `x_a` applied
/// to the `c`-th domain vector, written in `target_dim` coordinates.
fn koszul_differential(
    vars: usize,
    i: usize,
    domain: usize,
    target_dim: usize,
    mult: &dyn Fn(usize, usize) -> Vec<Rational>,
) -> Matrix {
    let sources = subsets(vars, i);
    let targets = subsets(vars, i - 1);
    let mut m = Matrix::zeros(targets.len() * target_dim, sources.len() * domain);
    for (si, a) in sources.iter().enumerate() {
        for c in 0..domain {
            let col = si * domain + c;
            for (s, &var) in a.iter().enumerate() {
                let mut rest = a.clone();
                rest.remove(s);
                let ti = targets.binary_search(&rest).expect("subsets are sorted");
                let image = mult(var, c);
                for (r, v) in image.into_iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let v = if s % 2 == 0 { v } else { -v };
                    let row = ti * target_dim + r;
                    let cur = m.get(row, col).clone();
                    m.set(row, col, cur + v);
                }
            }
        }
    }
    m
}

/// Derivatives of the socle spanning `R_k`, in divided-power coordinates over
/// monomials of degree `d - k`.
fn inverse_system_basis(g: &Socle, k: u32) -> Vec<Vec<Rational>> {
    let cat = catalecticant(g, k).expect("degree in range");
    let (_, pivots) = cat.rref();
    pivots.iter().map(|&c| cat.column(c)).collect()
}

/// `x_a` on a form of degree `m` in divided-power coordinates is the shift
/// `v'[β] = v[β + e_a]`.
fn shift(n: usize, m: u32, v: &[Rational], a: usize) -> Vec<Rational> {
    let source = monomial_basis(n, m);
    let target = monomial_basis(n, m - 1);
    let step = Monomial::var(n + 1, a);
    target
        .iter()
        .map(|beta| {
            let idx = monomial_index(&source, &beta.mul(&step)).expect("same arity");
            v[idx].clone()
        })
        .collect()
}

/// `rank[i][k]` for the differential leaving `Λ^i ⊗ R_k`.
fn differential_ranks(g: &Socle, route: Route) -> Vec<Vec<usize>> {
    let n = g.n();
    let d = g.d();
    let vars = n + 1;
    let cells: Vec<(usize, u32)> = (1..=vars)
        .flat_map(|i| (0..d).map(move |k| (i, k)))
        .collect();
    let ranks: Vec<usize> = match route {
        Route::InverseSystem => {
            let bases: Vec<Vec<Vec<Rational>>> = (0..=d).map(|k| inverse_system_basis(g, k)).collect();
            cells
                .par_iter()
                .map(|&(i, k)| {
                    let dom = &bases[k as usize];
                    let target_dim = binomial((n as u64) + (d - k - 1) as u64, n as u64) as usize;
                    let mult = |a: usize, c: usize| shift(n, d - k, &dom[c], a);
                    koszul_differential(vars, i, dom.len(), target_dim, &mult).rank()
                })
                .collect()
        }
        Route::Quotient => {
            let q = quotient_bases(g);
            cells
                .par_iter()
                .map(|&(i, k)| {
                    let dom = q.standard(k);
                    let target_dim = q.standard(k + 1).len();
                    let mult = |a: usize, c: usize| q.normal_form(&dom[c].mul(&Monomial::var(vars, a)));
                    koszul_differential(vars, i, dom.len(), target_dim, &mult).rank()
                })
                .collect()
        }
    };
    let mut table = vec![vec![0usize; d as usize + 1]; vars + 2];
    for (&(i, k), r) in cells.iter().zip(ranks) {
        table[i][k as usize] = r;
    }
    table
}

fn check_envelope(g: &Socle) -> Result<()> {
    if g.n() > MAX_N || g.d() > MAX_D {
        return Err(Error::Unsupported(format!(
            "betti tables are supported for n <= {MAX_N} and d <= {MAX_D}, got n = {} and d = {}",
            g.n(),
            g.d()
        )));
    }
    Ok(())
}

pub fn koszul_betti(g: &Socle) -> Result<BettiTable> {
    koszul_betti_with(g, Route::InverseSystem)
}

pub fn koszul_betti_with(g: &Socle, route: Route) -> Result<BettiTable> {
    check_envelope(g)?;
    let n = g.n();
    let d = g.d();
    let h = hilbert_function(g);
    let ranks = differential_ranks(g, route);
    let mut t = BettiTable::zero(n, d);
    for i in 0..=n + 1 {
        for k in 0..=d as usize {
            let chain = binomial(n as u64 + 1, i as u64) as usize * h.0[k] as usize;
            let outgoing = ranks[i][k];
            let incoming = if k == 0 { 0 } else { ranks[i + 1][k - 1] };
            t.rows[k][i] = (chain - outgoing - incoming) as u64;
        }
    }
    Ok(t)
}

pub fn check_duality(t: &BettiTable) -> bool {
    let n = t.n;
    let top = (n + 1) as u32 + t.d;
    (0..=n + 1).all(|i| {
        (0..=top).all(|j| t.get(i, j) == t.get(n + 1 - i, top - j))
    })
}

pub fn check_euler(t: &BettiTable) -> bool {
    (0..=t.n as u32).all(|e| {
        let total: i128 = t
            .entries()
            .iter()
            .map(|&(i, j, b)| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * b as i128 * (j as i128).pow(e)
            })
            .sum();
        total == 0
    })
}

pub fn hf_from_betti(t: &BettiTable) -> Result<HilbertFunction> {
    let n = t.n as i64;
    let mut h = Vec::new();
    for e in 0..=t.d as i64 {
        let mut total: i128 = 0;
        for (i, j, b) in t.entries() {
            let top = n + e - j as i64;
            if top < n {
                continue;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            total += sign * b as i128 * binomial(top as u64, n as u64) as i128;
        }
        if total < 0 {
            return Err(Error::MalformedTable(format!("negative dimension {total} in degree {e}")));
        }
        h.push(total as u64);
    }
    Ok(HilbertFunction(h))
}

/// Columns `i = 1, 2` of every row of a plane table.
pub fn interior_square(t: &BettiTable) -> Result<Vec<(u64, u64)>> {
    if t.n != 2 {
        return Err(Error::Unsupported(format!(
            "interior squares are defined for plane tables, got n = {}",
            t.n
        )));
    }
    Ok(t.rows.iter().map(|r| (r[1], r[2])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn socle(s: &str, n: usize) -> Socle {
        Socle::parse(s, Some(n)).unwrap()
    }

    fn both(g: &Socle) -> BettiTable {
        let a = koszul_betti_with(g, Route::InverseSystem).unwrap();
        let b = koszul_betti_with(g, Route::Quotient).unwrap();
        assert_eq!(a, b, "routes disagree on {g:?}");
        a
    }

    #[test]
    fn quotient_basis_sizes() {
        let g = socle("y0^3 + y1^3", 1);
        let q = quotient_bases(&g);
        let sizes: Vec<usize> = (0..=3).map(|e| q.standard(e).len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        let l = socle("y0^4 + 4*y0^3*y1 + 6*y0^2*y1^2 + 4*y0*y1^3 + y1^4", 1);
        let q = quotient_bases(&l);
        assert!((0..=4).all(|e| q.standard(e).len() == 1));
    }

    #[test]
    fn projector_kills_ideal_and_fixes_standard() {
        let g = socle("y0^2*y1 + y1*y2^2 + 2*y0*y1*y2", 2);
        let q = quotient_bases(&g);
        for e in 0..=3 {
            let basis = monomial_basis(2, e);
            for v in apolar_piece(&g, e).unwrap() {
                assert!(q.project(e, &v).iter().all(Zero::is_zero));
            }
            for (s, m) in q.standard(e).iter().enumerate() {
                let nf = q.normal_form(m);
                assert!(nf.iter().enumerate().all(|(t, v)| *v == Rational::from_integer((s == t).into())));
                assert!(monomial_index(&basis, m).is_some());
            }
        }
    }

    #[test]
    fn nondegenerate_quadrics() {
        let expect = [
            (1, "y0^2 + y1^2", vec![0, 2, 0]),
            (2, "y0^2 + y1^2 + y2^2", vec![0, 5, 5, 0]),
            (3, "y0^2 + y1^2 + y2^2 + y3^2", vec![0, 9, 16, 9, 0]),
        ];
        for (n, s, middle) in expect {
            let t = both(&socle(s, n));
            assert_eq!(t.rows()[1], middle);
            let mut first = vec![0; n + 2];
            first[0] = 1;
            assert_eq!(t.rows()[0], first);
            let mut last = vec![0; n + 2];
            last[n + 1] = 1;
            assert_eq!(t.rows()[2], last);
        }
    }

    #[test]
    fn binary_cubic_is_a_complete_intersection() {
        let t = both(&socle("y0^3 + y1^3", 1));
        assert_eq!(t.entries(), vec![(0, 0, 1), (1, 2, 1), (1, 3, 1), (2, 5, 1)]);
    }

    #[test]
    fn constant_socle_gives_koszul_row() {
        let t = both(&socle("5", 3));
        assert_eq!(t.rows(), &[vec![1, 4, 6, 4, 1]]);
        assert!(check_duality(&t) && check_euler(&t));
        assert_eq!(hf_from_betti(&t).unwrap().0, vec![1]);
    }

    #[test]
    fn power_of_a_linear_form() {
        let t = both(&socle("y0^3", 2));
        assert_eq!(t.rows()[0], vec![1, 2, 1, 0]);
        assert_eq!(t.rows()[1], vec![0, 0, 0, 0]);
        assert_eq!(t.rows()[3], vec![0, 1, 2, 1]);
    }

    #[test]
    fn duality_and_euler_on_reference_tables() {
        let b2 = BettiTable::from_rows(2, vec![
            vec![1, 0, 0, 0],
            vec![0, 3, 2, 0],
            vec![0, 2, 3, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert!(check_duality(&b2) && check_euler(&b2));
        assert_eq!(hf_from_betti(&b2).unwrap().0, vec![1, 3, 3, 1]);
        let mut broken = b2.clone();
        broken.set(1, 3, 3);
        assert!(!check_duality(&broken));
        let k1 = BettiTable::from_rows(1, vec![vec![1, 2, 1]]).unwrap();
        assert!(check_euler(&k1));
    }

    #[test]
    fn hilbert_function_from_tables() {
        let t = both(&socle("y0^2 + y1^2 + y2^2", 2));
        assert_eq!(hf_from_betti(&t).unwrap().0, vec![1, 3, 1]);
        let c = both(&socle("y0^3 + y1^3", 1));
        assert_eq!(hf_from_betti(&c).unwrap().0, vec![1, 2, 2, 1]);
    }

    #[test]
    fn interior_squares_of_cubics() {
        let fermat = both(&socle("y0^3 + y1^3 + y2^3", 2));
        assert_eq!(interior_square(&fermat).unwrap(), vec![(0, 0), (3, 2), (2, 3), (0, 0)]);
        let general = both(&socle("y0^3 + 2*y0^2*y1 - 3*y0*y1*y2 + 5*y1^2*y2 + 7*y2^3 - y0*y2^2 + 4*y1^3", 2));
        assert_eq!(interior_square(&general).unwrap(), vec![(0, 0), (3, 0), (0, 3), (0, 0)]);
        assert!(interior_square(&both(&socle("y0^3", 1))).is_err());
    }

    #[test]
    fn envelope_is_enforced() {
        assert!(matches!(koszul_betti(&socle("y0^7", 1)), Err(Error::Unsupported(_))));
        assert!(matches!(koszul_betti(&socle("y4^2", 4)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn json_round_trip() {
        let t = both(&socle("y0^3 + y1^3", 1));
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(text, r#"{"n":1,"d":3,"entries":[[0,0,1],[1,2,1],[1,3,1],[2,5,1]]}"#);
        let back: BettiTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<BettiTable>(r#"{"n":1,"d":1,"entries":[[3,0,1]]}"#).is_err());
    }

    #[test]
    fn text_grid() {
        let t = both(&socle("y0^2 + y1^2", 1));
        assert_eq!(t.to_string(), "   0 1 2\n0: 1 0 0\n1: 0 2 0\n2: 0 0 1\n");
    }
}
