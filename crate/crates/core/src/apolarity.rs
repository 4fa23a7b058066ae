//! Socles and their apolar Gorenstein quotients.
//!
//! A socle is a nonzero form `g` of degree `d` in the dual variables
//! `y0..yn`. The polynomial ring in `x0..xn` acts on it by differentiation,
//! which is contraction on the divided-power coordinates `a_γ = γ! c_γ` of
//! `g = Σ c_γ y^γ`. The catalecticant in degree `e` is the matrix of the
//! pairing `S_e × S_{d-e} → k`, `(x^α, x^β) ↦ a_{α+β}`; its kernel is the
//! apolar ideal piece `I_e` and its rank is the Hilbert function value `h_e`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{binomial, monomial_basis, monomial_index, Matrix, Monomial, Rational};
use crate::poly::Poly;

/// A nonzero homogeneous form in `y0..yn`.
#[derive(Clone, PartialEq, Eq)]
pub struct Socle {
    n: usize,
    d: u32,
    form: Poly,
}

impl fmt::Debug for Socle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Socle(P^{}, d={}: {})", self.n, self.d, self.form.render('y'))
    }
}

impl fmt::Display for Socle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.form.render('y'))
    }
}

impl Socle {
    pub fn new(form: Poly) -> Result<Socle> {
        if form.is_zero() {
            return Err(Error::ZeroSocle);
        }
        let d = form.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        Ok(Socle {
            n: form.nvars() - 1,
            d,
            form,
        })
    }

    /// Parse from the shared grammar. `n` fixes the ambient dimension when
    /// the text does not mention every variable.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Socle> {
        let min_vars = n.map_or(0, |n| n + 1);
        let form = Poly::parse(text, 'y', min_vars)?;
        if let Some(n) = n {
            if form.nvars() > n + 1 {
                return Err(Error::InvalidInput(format!(
                    "form uses y{} but the ambient space is P^{n}",
                    form.nvars() - 1
                )));
            }
        }
        Socle::new(form)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.form.coeff(m)
    }

    /// Divided-power coordinate `γ! c_γ`.
    pub fn divided_coeff(&self, m: &Monomial) -> Rational {
        let c = self.form.coeff(m);
        if c.is_zero() {
            return c;
        }
        c * Rational::from_integer(m.factorial())
    }

    /// Same socle on a larger ambient space.
    pub fn embed(&self, n: usize) -> Socle {
        Socle {
            n,
            d: self.d,
            form: self.form.with_nvars(n + 1),
        }
    }

    /// Pull back along the linear substitution `y_i ↦ Σ_j m[i][j] y_j`.
    pub fn substitute(&self, m: &Matrix) -> Result<Socle> {
        assert_eq!(m.rows(), self.n + 1);
        assert_eq!(m.cols(), self.n + 1);
        let images: Vec<Poly> = (0..=self.n).map(|i| Poly::linear(m.row(i))).collect();
        Socle::new(self.form.substitute(&images))
    }

    pub fn scale(&self, c: &Rational) -> Result<Socle> {
        Socle::new(self.form.scale(c))
    }
}

/// `h_0, ..., h_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertFunction(pub Vec<u64>);

impl HilbertFunction {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Apply `x^α` to `g` by differentiation. The result has degree `d - |α|`.
pub fn contract(m: &Monomial, g: &Socle) -> Result<Poly> {
    let e = m.degree();
    if e > g.d {
        return Err(Error::DegreeOutOfRange { e, d: g.d });
    }
    let mut out = Poly::zero(g.n + 1);
    for (gamma, c) in g.form.terms() {
        let Some(beta) = gamma.div(m) else { continue };
        // ∂^α y^γ = γ!/β! y^β
        let falling = Rational::new(gamma.factorial(), beta.factorial());
        out.add_term(beta, c * falling);
    }
    Ok(out)
}

/// Apply a homogeneous element of `S` to `g`.
pub fn apply(f: &Poly, g: &Socle) -> Result<Poly> {
    let mut out = Poly::zero(g.n + 1);
    let Some(e) = f.homogeneous_degree() else {
        if f.is_zero() {
            return Ok(out);
        }
        return Err(Error::Inhomogeneous);
    };
    if e > g.d {
        return Ok(out);
    }
    for (m, c) in f.terms() {
        out = out.add(&contract(m, g)?.scale(c));
    }
    Ok(out)
}

/// Rows indexed by degree `d - e` monomials, columns by degree `e` monomials.
pub fn catalecticant(g: &Socle, e: u32) -> Result<Matrix> {
    if e > g.d {
        return Err(Error::DegreeOutOfRange { e, d: g.d });
    }
    let rows = monomial_basis(g.n, g.d - e);
    let cols = monomial_basis(g.n, e);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (i, beta) in rows.iter().enumerate() {
        for (j, alpha) in cols.iter().enumerate() {
            let v = g.divided_coeff(&alpha.mul(beta));
            if !v.is_zero() {
                m.set(i, j, v);
            }
        }
    }
    Ok(m)
}

pub fn hilbert_function(g: &Socle) -> HilbertFunction {
    let half = g.d / 2;
    let mut h = vec![0u64; g.d as usize + 1];
    for e in 0..=half {
        let r = catalecticant(g, e).expect("degree in range").rank() as u64;
        h[e as usize] = r;
        h[(g.d - e) as usize] = r;
    }
    HilbertFunction(h)
}

/// Basis of `I_e` as coefficient vectors over `monomial_basis(n, e)`.
pub fn apolar_piece(g: &Socle, e: u32) -> Result<Vec<Vec<Rational>>> {
    Ok(catalecticant(g, e)?.kernel_basis())
}

pub fn vector_to_poly(n: usize, e: u32, v: &[Rational]) -> Poly {
    let basis = monomial_basis(n, e);
    assert_eq!(basis.len(), v.len());
    Poly::from_terms(n + 1, basis.into_iter().zip(v.iter().cloned()))
}

pub fn poly_to_vector(f: &Poly, n: usize, e: u32) -> Vec<Rational> {
    let basis = monomial_basis(n, e);
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in f.terms() {
        let i = monomial_index(&basis, m).expect("monomial of the requested degree");
        v[i] = c.clone();
    }
    v
}

/// The graded pieces `I_0 .. I_d` of the apolar ideal.
#[derive(Clone, Debug)]
pub struct ApolarIdeal {
    socle: Socle,
    pieces: Vec<Vec<Vec<Rational>>>,
}

impl ApolarIdeal {
    pub fn new(g: &Socle) -> ApolarIdeal {
        let pieces = (0..=g.d)
            .map(|e| apolar_piece(g, e).expect("degree in range"))
            .collect();
        ApolarIdeal {
            socle: g.clone(),
            pieces,
        }
    }

    pub fn socle(&self) -> &Socle {
        &self.socle
    }

    pub fn dim(&self, e: u32) -> usize {
        match self.pieces.get(e as usize) {
            Some(p) => p.len(),
            None => binomial((self.socle.n as u64) + e as u64, self.socle.n as u64) as usize,
        }
    }

    pub fn piece(&self, e: u32) -> &[Vec<Rational>] {
        &self.pieces[e as usize]
    }

    pub fn generators_in_degree(&self, e: u32) -> Vec<Poly> {
        self.piece(e)
            .iter()
            .map(|v| vector_to_poly(self.socle.n, e, v))
            .collect()
    }
}

/// Whether the homogeneous `f` lies in the apolar ideal of `g`.
pub fn annihilates(f: &Poly, g: &Socle) -> Result<bool> {
    if f.nvars() != g.n + 1 {
        return Err(Error::InvalidInput(format!(
            "polynomial in {} variables against a socle on P^{}",
            f.nvars(),
            g.n
        )));
    }
    Ok(apply(f, g)?.is_zero())
}

/// Whether the ideal generated by `gens`, truncated at degree `d`, lies in the
/// apolar ideal of `g`. Since the apolar ideal is an ideal, this holds exactly
/// when every generator of degree at most `d` annihilates `g`.
pub fn factors_through_ideal(g: &Socle, gens: &[Poly]) -> Result<bool> {
    for f in gens {
        if f.is_zero() {
            continue;
        }
        let e = f.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        if e <= g.d && !annihilates(f, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ weights[i] · forms[i]^d`.
pub fn synth_power_sum(forms: &[Poly], weights: &[Rational], d: u32) -> Result<Socle> {
    if forms.is_empty() || forms.len() != weights.len() {
        return Err(Error::InvalidInput(format!(
            "{} forms against {} weights",
            forms.len(),
            weights.len()
        )));
    }
    let nvars = forms[0].nvars();
    let mut total = Poly::zero(nvars);
    for (f, w) in forms.iter().zip(weights) {
        if f.nvars() != nvars {
            return Err(Error::InvalidInput("forms in different numbers of variables".into()));
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("zero linear form".into()));
        }
        match f.homogeneous_degree() {
            Some(1) => {}
            Some(k) => return Err(Error::NotLinear(k)),
            None => return Err(Error::Inhomogeneous),
        }
        if w.is_zero() {
            return Err(Error::InvalidInput("zero weight".into()));
        }
        total = total.add(&f.pow(d).scale(w));
    }
    if total.is_zero() {
        return Err(Error::DegenerateInput);
    }
    Socle::new(total)
}

/// Power sum of the linear forms with the given coordinate vectors.
pub fn power_sum_of_points(points: &[Vec<Rational>], weights: &[Rational], d: u32) -> Result<Socle> {
    let forms: Vec<Poly> = points.iter().map(|p| Poly::linear(p)).collect();
    synth_power_sum(&forms, weights, d)
}

/// Degree-`e` forms in `x0..xn` vanishing at every point, as a basis of polynomials.
pub fn vanishing_ideal_piece(points: &[Vec<Rational>], n: usize, e: u32) -> Vec<Poly> {
    let basis = monomial_basis(n, e);
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| basis.iter().map(|m| m.eval(p)).collect())
        .collect();
    let kernel = if rows.is_empty() {
        Matrix::zeros(0, basis.len()).kernel_basis()
    } else {
        Matrix::from_rows(rows).kernel_basis()
    };
    kernel.iter().map(|v| vector_to_poly(n, e, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinDiagnostics {
    pub socle_degree_one_dimensional: bool,
    pub palindromic: bool,
    pub catalecticants_transpose_symmetric: bool,
}

impl GorensteinDiagnostics {
    pub fn all_pass(&self) -> bool {
        self.socle_degree_one_dimensional && self.palindromic && self.catalecticants_transpose_symmetric
    }
}

pub fn gorenstein_check(g: &Socle) -> GorensteinDiagnostics {
    let hf = hilbert_function(g);
    // compute both halves independently so palindromy is a real check
    let full: Vec<u64> = (0..=g.d)
        .map(|e| catalecticant(g, e).expect("in range").rank() as u64)
        .collect();
    let symmetric = (0..=g.d).all(|e| {
        catalecticant(g, e).expect("in range") == catalecticant(g, g.d - e).expect("in range").transpose()
    });
    GorensteinDiagnostics {
        socle_degree_one_dimensional: full[g.d as usize] == 1 && hf.0[g.d as usize] == 1,
        palindromic: full.iter().eq(full.iter().rev()) && full[0] == 1,
        catalecticants_transpose_symmetric: symmetric,
    }
}

/// Clear denominators so the socle has coprime integer coefficients.
pub fn integral_multiple(g: &Socle) -> Socle {
    use num_integer::Integer;
    let l = g
        .form
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    g.scale(&Rational::from_integer(l)).expect("nonzero multiple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn socle(s: &str, n: usize) -> Socle {
        Socle::parse(s, Some(n)).unwrap()
    }

    fn xpoly(s: &str, n: usize) -> Poly {
        Poly::parse(s, 'x', n + 1).unwrap()
    }

    #[test]
    fn zero_socle_rejected() {
        assert_eq!(Socle::parse("0", Some(1)), Err(Error::ZeroSocle));
        assert_eq!(Socle::parse("y0 + y1^2", None), Err(Error::Inhomogeneous));
    }

    #[test]
    fn contraction_by_differentiation() {
        let g = socle("y0^3 + y1^3", 1);
        let r = contract(&Monomial::new(vec![1, 0]), &g).unwrap();
        assert_eq!(r.render('y'), "3*y0^2");
        let g3 = socle("y0^3 + y1^3", 2);
        assert!(contract(&Monomial::new(vec![0, 0, 1]), &g3).unwrap().is_zero());
        let h = socle("y0^2*y1", 1);
        assert_eq!(contract(&Monomial::new(vec![1, 1]), &h).unwrap().render('y'), "2*y0");
        assert!(matches!(
            contract(&Monomial::new(vec![4, 0]), &g),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn catalecticant_of_fermat_quadric() {
        let g = socle("y0^2 + y1^2 + y2^2", 2);
        let c = catalecticant(&g, 1).unwrap();
        assert_eq!(c.rank(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.get(i, j).is_zero(), i != j);
            }
        }
    }

    #[test]
    fn catalecticant_binary_cubic() {
        let c = catalecticant(&socle("y0^3 + y1^3", 1), 1).unwrap();
        assert_eq!((c.rows(), c.cols()), (3, 2));
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn powers_of_linear_forms_have_rank_one() {
        let l = Poly::parse("2*y0 - y1 + 3*y2", 'y', 3).unwrap();
        for d in 2..=5 {
            let g = synth_power_sum(std::slice::from_ref(&l), &[rat(1)], d).unwrap();
            for e in 1..d {
                assert_eq!(catalecticant(&g, e).unwrap().rank(), 1, "d={d} e={e}");
            }
        }
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(hilbert_function(&socle("y0^3 + y1^3", 1)).0, vec![1, 2, 2, 1]);
        assert_eq!(hilbert_function(&socle("y0^4", 2)).0, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn apolar_pieces() {
        let g = socle("y0^3 + y1^3", 1);
        assert_eq!(apolar_piece(&g, 2).unwrap(), vec![vec![rat(0), rat(1), rat(0)]]);
        assert!(apolar_piece(&socle("y0^2 + y1^2 + y2^2", 2), 1).unwrap().is_empty());
        let h = socle("y0^2*y1", 1);
        assert_eq!(apolar_piece(&h, 2).unwrap(), vec![vec![rat(0), rat(0), rat(1)]]);
    }

    #[test]
    fn annihilation() {
        let g = socle("y0^3 + y1^3", 1);
        assert!(annihilates(&xpoly("x0*x1", 1), &g).unwrap());
        assert!(!annihilates(&xpoly("x0^2", 1), &g).unwrap());
        assert!(!annihilates(&xpoly("7", 1), &g).unwrap());
        assert_eq!(annihilates(&xpoly("x0 + x1^2", 1), &g), Err(Error::Inhomogeneous));
    }

    #[test]
    fn unit_ideal_never_factors() {
        let g = socle("y0^2*y1 + y2^3", 2);
        assert!(!factors_through_ideal(&g, &[xpoly("1", 2)]).unwrap());
    }

    #[test]
    fn power_sums() {
        let y0 = Poly::parse("y0", 'y', 2).unwrap();
        let y1 = Poly::parse("y1", 'y', 2).unwrap();
        let g = synth_power_sum(&[y0.clone(), y1.clone()], &[rat(1), rat(1)], 3).unwrap();
        assert_eq!(g.to_string(), "y0^3 + y1^3");
        let sq = Poly::parse("y0^2", 'y', 2).unwrap();
        assert_eq!(synth_power_sum(&[sq], &[rat(1)], 3), Err(Error::NotLinear(2)));
        let plus = y0.add(&y1);
        let minus = y0.add(&y1.scale(&rat(-1)));
        let half = ratio(1, 2);
        let a = synth_power_sum(&[plus, minus], &[half.clone(), half], 2).unwrap();
        let b = synth_power_sum(&[y0.clone(), y1], &[rat(1), rat(1)], 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            synth_power_sum(&[y0.clone(), y0], &[rat(1), rat(-1)], 3),
            Err(Error::DegenerateInput)
        );
    }

    #[test]
    fn gorenstein_examples() {
        let g = socle("y0^3 + y1^3", 1);
        assert!(gorenstein_check(&g).all_pass());
        let l = socle("y0^4 + 4*y0^3*y1 + 6*y0^2*y1^2 + 4*y0*y1^3 + y1^4", 2);
        assert!(gorenstein_check(&l).all_pass());
        assert_eq!(hilbert_function(&l).0, vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn points_ideal() {
        let pts = vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]];
        let quad = vanishing_ideal_piece(&pts, 2, 2);
        assert_eq!(quad.len(), 4);
        for f in &quad {
            for p in &pts {
                assert!(f.eval(p).is_zero());
            }
        }
    }
}
