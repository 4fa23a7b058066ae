//! Binary forms: the two apolar generators and exact Waring decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::apolarity::{apolar_piece, poly_to_vector, vector_to_poly, Socle};
use crate::error::{Error, Result};
use crate::linalg::{monomial_basis, primitive, rat, rational_str, Matrix, Monomial, Rational};
use crate::poly::Poly;

fn require_binary(g: &Socle) -> Result<()> {
    if g.n() != 1 {
        return Err(Error::InvalidInput(format!(
            "binary forms live on P^1, got P^{}",
            g.n()
        )));
    }
    Ok(())
}

/// Degree of the first nonzero apolar piece.
pub fn splitting_index(g: &Socle) -> u32 {
    (1..=g.d())
        .find(|&e| !apolar_piece(g, e).expect("in range").is_empty())
        .unwrap_or(g.d() + 1)
}

fn piece(g: &Socle, e: u32) -> Vec<Vec<Rational>> {
    if e <= g.d() {
        apolar_piece(g, e).expect("in range")
    } else {
        let size = monomial_basis(g.n(), e).len();
        (0..size)
            .map(|i| (0..size).map(|j| rat((i == j).into())).collect())
            .collect()
    }
}

/// `(F_a, F_b)` with `a + b = d + 2`.
pub fn binary_apolar_pair(g: &Socle) -> Result<(Poly, Poly)> {
    require_binary(g)?;
    let a = splitting_index(g);
    let b = g.d() + 2 - a;
    let ia = piece(g, a);
    let fa = vector_to_poly(1, a, &ia[0]);
    let multiples: Vec<Vec<Rational>> = monomial_basis(1, b - a)
        .into_iter()
        .map(|m| poly_to_vector(&fa.mul(&Poly::monomial(m, Rational::one())), 1, b))
        .collect();
    let base = Matrix::from_rows(multiples.clone()).rank();
    for v in piece(g, b) {
        let mut rows = multiples.clone();
        rows.push(v.clone());
        if Matrix::from_rows(rows).rank() > base {
            return Ok((fa, vector_to_poly(1, b, &v)));
        }
    }
    unreachable!("I_b is not generated by F_a alone")
}

/// Univariate polynomial, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Univariate(Vec<Rational>);

impl Univariate {
    fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Univariate(c)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero")
    }

    fn monic(&self) -> Self {
        let l = self.lead().clone();
        Univariate(self.0.iter().map(|c| c / &l).collect())
    }

    fn derivative(&self) -> Self {
        Univariate::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    fn div_rem(&self, d: &Univariate) -> (Univariate, Univariate) {
        let mut r = self.0.clone();
        let dd = d.degree();
        if self.0.len() <= dd {
            return (Univariate(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); self.0.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / d.lead();
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        (Univariate::new(q), Univariate::new(r))
    }

    fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Yun's algorithm: `f = c Π g_i^i` with each `g_i` squarefree.
    fn squarefree_parts(&self) -> Vec<(u32, Univariate)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = Univariate::new(
            c.0.iter()
                .zip(b.derivative().0.iter().chain(std::iter::repeat(&Rational::zero())))
                .map(|(x, y)| x - y)
                .collect(),
        );
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            let bp = b.derivative();
            let len = c.0.len().max(bp.0.len());
            let get = |v: &Univariate, k: usize| v.0.get(k).cloned().unwrap_or_else(Rational::zero);
            d = Univariate::new((0..len).map(|k| get(&c, k) - get(&bp, k)).collect());
            i += 1;
        }
        out
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    Some(out)
}

/// Rational roots of a squarefree polynomial, or `None` when the candidate
/// search is too large.
fn rational_roots(f: &Univariate) -> Option<Vec<Rational>> {
    let lcm = f.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.0.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        roots.push(Rational::zero());
    }
    let (c0, cn) = (&ints[low], ints.last()?);
    for p in divisors(c0)? {
        for q in divisors(cn)? {
            for sign in [1, -1] {
                let t = Rational::new(&p * sign, q.clone());
                if f.eval(&t).is_zero() && !roots.contains(&t) {
                    roots.push(t);
                }
            }
        }
    }
    Some(roots)
}

/// Scale to coprime integers with the first nonzero entry positive.
pub fn normalize_point(p: &[Rational]) -> Vec<Rational> {
    primitive(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WaringDecomposition {
    /// Distinct rational points and weights with `g = Σ w_i ℓ_i^d`.
    Points {
        #[serde(with = "point_list")]
        points: Vec<Vec<Rational>>,
        #[serde(with = "rational_str::vec")]
        weights: Vec<Rational>,
    },
    /// `F_a` is squarefree but some root is irrational.
    Irrational { generator: String },
    /// `F_a` has repeated roots; multiplicities in decreasing order.
    NonReduced {
        generator: String,
        partition: Vec<u32>,
        #[serde(with = "point_list")]
        repeated_points: Vec<Vec<Rational>>,
    },
}

mod point_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = v.iter().map(|p| p.iter().map(ToString::to_string).collect()).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let text = Vec::<Vec<String>>::deserialize(d)?;
        text.iter()
            .map(|p| {
                p.iter()
                    .map(|t| parse_rational(t).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{t}`"))))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaringReport {
    pub a: u32,
    pub b: u32,
    pub decomposition: WaringDecomposition,
}

/// `F(t, 1)` together with the order of vanishing of `F` at `(1:0)`.
fn dehomogenize(f: &Poly, a: u32) -> (Univariate, u32) {
    let mut coeffs = vec![Rational::zero(); a as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exponents()[0] as usize] = c.clone();
    }
    let u = Univariate::new(coeffs);
    let at_infinity = a - u.degree() as u32;
    (u, at_infinity)
}

pub fn binary_waring(g: &Socle) -> Result<WaringReport> {
    require_binary(g)?;
    let a = splitting_index(g);
    let b = g.d() + 2 - a;
    if a >= b {
        return Err(Error::Regime(format!(
            "generators in degrees a = {a} and b = {b}; uniqueness needs a < b"
        )));
    }
    let (fa, _) = binary_apolar_pair(g)?;
    let (f, infinity) = dehomogenize(&fa, a);
    let generator = fa.render('x');
    let parts = f.squarefree_parts();
    let repeated = infinity > 1 || parts.iter().any(|(m, _)| *m > 1);
    if repeated {
        let mut partition: Vec<u32> = parts
            .iter()
            .flat_map(|(m, p)| std::iter::repeat_n(*m, p.degree()))
            .collect();
        if infinity > 0 {
            partition.push(infinity);
        }
        partition.sort_unstable_by(|x, y| y.cmp(x));
        let mut repeated_points = Vec::new();
        if infinity > 1 {
            repeated_points.push(vec![rat(1), rat(0)]);
        }
        for (m, p) in &parts {
            if *m > 1 {
                for t in rational_roots(p).unwrap_or_default() {
                    repeated_points.push(normalize_point(&[t, rat(1)]));
                }
            }
        }
        return Ok(WaringReport {
            a,
            b,
            decomposition: WaringDecomposition::NonReduced {
                generator,
                partition,
                repeated_points,
            },
        });
    }
    let roots = match rational_roots(&f) {
        Some(r) if r.len() == f.degree() => r,
        _ => {
            return Ok(WaringReport {
                a,
                b,
                decomposition: WaringDecomposition::Irrational { generator },
            })
        }
    };
    let mut points: Vec<Vec<Rational>> = roots.into_iter().map(|t| normalize_point(&[t, rat(1)])).collect();
    if infinity == 1 {
        points.push(vec![rat(1), rat(0)]);
    }
    points.sort();
    let basis = monomial_basis(1, g.d());
    let columns: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| poly_to_vector(&Poly::linear(p).pow(g.d()), 1, g.d()))
        .collect();
    let system = Matrix::from_rows(columns).transpose();
    let target: Vec<Rational> = basis.iter().map(|m: &Monomial| g.coeff(m)).collect();
    let weights = system
        .solve(&target)
        .expect("a socle annihilated by F_a lies in the span of its roots");
    Ok(WaringReport {
        a,
        b,
        decomposition: WaringDecomposition::Points { points, weights },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolarity::{annihilates, power_sum_of_points};

    fn socle(s: &str) -> Socle {
        Socle::parse(s, Some(1)).unwrap()
    }

    #[test]
    fn generator_pair_of_sum_of_cubes() {
        let (fa, fb) = binary_apolar_pair(&socle("y0^3 + y1^3")).unwrap();
        assert_eq!(fa.render('x'), "x0*x1");
        assert_eq!(fb.homogeneous_degree(), Some(3));
        let g = socle("y0^3 + y1^3");
        assert!(annihilates(&fb, &g).unwrap());
    }

    #[test]
    fn non_squarefree_generator() {
        let (fa, _) = binary_apolar_pair(&socle("y0^2*y1")).unwrap();
        assert_eq!(fa.render('x'), "x1^2");
    }

    #[test]
    fn generic_quartic_has_equal_degrees() {
        let g = socle("y0^4 + 2*y0^3*y1 - 5*y0^2*y1^2 + 7*y0*y1^3 + 3*y1^4");
        assert_eq!(splitting_index(&g), 3);
        let (fa, fb) = binary_apolar_pair(&g).unwrap();
        assert_eq!(fa.homogeneous_degree(), Some(3));
        assert_eq!(fb.homogeneous_degree(), Some(3));
    }

    #[test]
    fn waring_of_sum_of_cubes() {
        let r = binary_waring(&socle("y0^3 + y1^3")).unwrap();
        assert_eq!((r.a, r.b), (2, 3));
        assert_eq!(
            r.decomposition,
            WaringDecomposition::Points {
                points: vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]],
                weights: vec![rat(1), rat(1)],
            }
        );
    }

    #[test]
    fn tangent_line_certificate() {
        let r = binary_waring(&socle("y0^2*y1")).unwrap();
        match r.decomposition {
            WaringDecomposition::NonReduced { partition, repeated_points, .. } => {
                assert_eq!(partition, vec![2]);
                assert_eq!(repeated_points, vec![vec![rat(1), rat(0)]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn irrational_roots_are_certified() {
        // (y0 + √2 y1)^4 + (y0 - √2 y1)^4
        let g = socle("2*y0^4 + 24*y0^2*y1^2 + 8*y1^4");
        match binary_waring(&g).unwrap().decomposition {
            WaringDecomposition::Irrational { generator } => assert_eq!(generator, "2*x0^2 - x1^2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn regime_violation() {
        let g = socle("y0^4 + 2*y0^3*y1 - 5*y0^2*y1^2 + 7*y0*y1^3 + 3*y1^4");
        assert!(matches!(binary_waring(&g), Err(Error::Regime(_))));
    }

    #[test]
    fn round_trip_three_points() {
        let pts = vec![vec![rat(1), rat(2)], vec![rat(3), rat(-1)], vec![rat(0), rat(1)]];
        let w = vec![rat(2), rat(-5), rat(7)];
        let g = power_sum_of_points(&pts, &w, 7).unwrap();
        match binary_waring(&g).unwrap().decomposition {
            WaringDecomposition::Points { points, weights } => {
                let mut expect: Vec<(Vec<Rational>, Rational)> = pts.into_iter().zip(w).collect();
                expect.sort();
                let got: Vec<(Vec<Rational>, Rational)> = points.into_iter().zip(weights).collect();
                assert_eq!(got, expect);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn yun_partition() {
        // (t-1)^3 (t+2)^2 t
        let f = Univariate::new(vec![rat(0), rat(-4), rat(8), rat(-1), rat(-5), rat(1), rat(1)]);
        let parts = f.squarefree_parts();
        let shape: Vec<(u32, usize)> = parts.iter().map(|(m, p)| (*m, p.degree())).collect();
        assert_eq!(shape, vec![(1, 1), (2, 1), (3, 1)]);
    }
}
