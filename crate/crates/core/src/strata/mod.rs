//! Stratum catalogs for socles on the line and the plane, classification by
//! Hilbert function and betti fingerprint, and the Z-diagrams of kernel objects.

mod binary;
mod diagram;

pub use binary::{binary_apolar_pair, binary_waring, normalize_point, splitting_index, WaringDecomposition, WaringReport};
pub use diagram::{
    assess, evaluation_point, render_svg, zdiagram, zdiagram_with, Color, DiagramNode, Role, REASON_BELOW_SLOPE,
    REASON_TORSION_ONLY,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apolarity::{catalecticant, factors_through_ideal, hilbert_function, power_sum_of_points, Socle};
use crate::charge::{ChargePoint, TwistComplex};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::plane::MrMode;
use crate::poly::Poly;
use crate::resolution::{interior_square, koszul_betti};
use crate::sample;

pub const MAX_BINARY_DEGREE: u32 = 12;

/// How to build a representative socle for a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Example {
    Form(String),
    /// Sum of fourth (or `d`-th) powers over integer points with unit weights.
    Points(Vec<Vec<i64>>),
    /// Dense random socle from the given seed.
    Generic(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub n: usize,
    pub d: u32,
    pub hilbert_function: Vec<u64>,
    pub interior_square: Option<Vec<(u64, u64)>>,
    pub kernel_object: Option<String>,
    pub dimension: u64,
    pub charge_node: Option<ChargePoint>,
    pub status: Color,
    pub reason: Option<String>,
    pub witness_ideal: Option<Vec<String>>,
    pub example: Example,
}

impl CatalogEntry {
    pub fn witness_generators(&self) -> Option<Vec<Poly>> {
        self.witness_ideal.as_ref().map(|gens| {
            gens.iter()
                .map(|g| Poly::parse(g, 'x', self.n + 1).expect("catalog generators parse"))
                .collect()
        })
    }

    pub fn example_socle(&self) -> Socle {
        match &self.example {
            Example::Form(text) => Socle::parse(text, Some(self.n)).expect("catalog forms parse"),
            Example::Points(points) => {
                let pts: Vec<Vec<Rational>> = points.iter().map(|p| p.iter().map(|&c| rat(c)).collect()).collect();
                let weights = vec![rat(1); pts.len()];
                power_sum_of_points(&pts, &weights, self.d).expect("catalog points give a nonzero socle")
            }
            Example::Generic(seed) => sample::random_socle(&mut sample::rng(*seed), self.n, self.d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StratumLabel {
    Stratum { label: String },
    Unclassified,
}

impl StratumLabel {
    pub fn label(&self) -> Option<&str> {
        match self {
            StratumLabel::Stratum { label } => Some(label),
            StratumLabel::Unclassified => None,
        }
    }
}

impl std::fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StratumLabel::Stratum { label } => f.write_str(label),
            StratumLabel::Unclassified => f.write_str("unclassified"),
        }
    }
}

type KernelClass = (&'static str, fn() -> TwistComplex);

struct Spec {
    label: &'static str,
    hf: &'static [u64],
    interior: Option<&'static [(u64, u64)]>,
    kernel: Option<KernelClass>,
    dimension: u64,
    witness: Option<&'static [&'static str]>,
    example: fn() -> Example,
}

fn form(s: &str) -> Example {
    Example::Form(s.to_string())
}

fn ideal(points: u64, twist: i64) -> TwistComplex {
    TwistComplex::points_ideal(2, points, twist)
}

fn o(k: i64) -> TwistComplex {
    TwistComplex::line_bundle(2, k)
}

fn plane_specs(d: u32) -> Vec<Spec> {
    match d {
        1 => vec![Spec {
            label: "point",
            hf: &[1, 1],
            interior: None,
            kernel: Some(("I_p(1)", || ideal(1, 1))),
            dimension: 2,
            witness: Some(&["x1", "x2"]),
            example: || form("y0"),
        }],
        2 => vec![
            Spec {
                label: "rank 1 (Veronese surface)",
                hf: &[1, 1, 1],
                interior: None,
                kernel: Some(("I_p(1)", || ideal(1, 1))),
                dimension: 2,
                witness: Some(&["x1", "x2"]),
                example: || form("y0^2"),
            },
            Spec {
                label: "rank 2",
                hf: &[1, 2, 1],
                interior: None,
                kernel: Some(("O", || o(0))),
                dimension: 4,
                witness: Some(&["x2"]),
                example: || form("y0^2 + y1^2"),
            },
            Spec {
                label: "rank 3 (open)",
                hf: &[1, 3, 1],
                interior: None,
                kernel: None,
                dimension: 5,
                witness: None,
                example: || form("y0^2 + y1^2 + y2^2"),
            },
        ],
        3 => vec![
            Spec {
                label: "Veronese surface",
                hf: &[1, 1, 1, 1],
                interior: None,
                kernel: Some(("I_p(2)", || ideal(1, 2))),
                dimension: 2,
                witness: Some(&["x1", "x2"]),
                example: || form("y0^3"),
            },
            Spec {
                label: "secant lines",
                hf: &[1, 2, 2, 1],
                interior: None,
                kernel: Some(("I_pq(2)", || ideal(2, 2))),
                dimension: 5,
                witness: Some(&["x2", "x0*x1"]),
                example: || form("y0^3 + y1^3"),
            },
            Spec {
                label: "three non-collinear points",
                hf: &[1, 3, 3, 1],
                interior: Some(&[(0, 0), (3, 2), (2, 3), (0, 0)]),
                kernel: Some(("I_pqr(2)", || ideal(3, 2))),
                dimension: 8,
                witness: Some(&["x0*x1", "x0*x2", "x1*x2"]),
                example: || form("y0^3 + y1^3 + y2^3"),
            },
            Spec {
                label: "open",
                hf: &[1, 3, 3, 1],
                interior: Some(&[(0, 0), (3, 0), (0, 3), (0, 0)]),
                kernel: Some(("O^3", || o(0).repeat(3))),
                dimension: 9,
                witness: None,
                example: || Example::Generic(3),
            },
        ],
        4 => vec![
            Spec {
                label: "Veronese surface",
                hf: &[1, 1, 1, 1, 1],
                interior: None,
                kernel: Some(("I_p(2)", || ideal(1, 2))),
                dimension: 2,
                witness: Some(&["x1", "x2"]),
                example: || form("y0^4"),
            },
            Spec {
                label: "secant lines",
                hf: &[1, 2, 2, 2, 1],
                interior: None,
                kernel: Some(("I_pq(2)", || ideal(2, 2))),
                dimension: 5,
                witness: Some(&["x2", "x0*x1"]),
                example: || Example::Points(vec![vec![1, 0, 0], vec![0, 1, 0]]),
            },
            Spec {
                label: "spans of lines",
                hf: &[1, 2, 3, 2, 1],
                interior: None,
                kernel: Some(("O(1)", || o(1))),
                dimension: 6,
                witness: Some(&["x2"]),
                example: || Example::Points(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]),
            },
            Spec {
                label: "three non-collinear points",
                hf: &[1, 3, 3, 3, 1],
                interior: None,
                kernel: Some(("I_pqr(2)", || ideal(3, 2))),
                dimension: 8,
                witness: Some(&["x0*x1", "x0*x2", "x1*x2"]),
                example: || Example::Points(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            },
            Spec {
                label: "line and a point",
                hf: &[1, 3, 4, 3, 1],
                interior: Some(&[(0, 0), (2, 1), (2, 2), (1, 2), (0, 0)]),
                kernel: Some(("I_p(1)", || ideal(1, 1))),
                dimension: 9,
                witness: Some(&["x0*x2", "x1*x2"]),
                example: || Example::Points(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]),
            },
            Spec {
                label: "intersection of two conics",
                hf: &[1, 3, 4, 3, 1],
                interior: Some(&[(0, 0), (2, 0), (1, 1), (0, 2), (0, 0)]),
                kernel: Some(("O^2", || o(0).repeat(2))),
                dimension: 11,
                witness: None,
                example: || Example::Points(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]),
            },
            Spec {
                label: "conic",
                hf: &[1, 3, 5, 3, 1],
                interior: None,
                kernel: Some(("O", || o(0))),
                dimension: 13,
                witness: Some(&["x0*x2 - x1^2"]),
                example: || {
                    Example::Points(vec![vec![1, 0, 0], vec![1, 1, 1], vec![1, -1, 1], vec![1, 2, 4], vec![1, -2, 4]])
                },
            },
            Spec {
                label: "open/semistable",
                hf: &[1, 3, 6, 3, 1],
                interior: None,
                kernel: None,
                dimension: 14,
                witness: None,
                example: || Example::Generic(4),
            },
        ],
        _ => Vec::new(),
    }
}

fn binary_label(a: u32, d: u32) -> String {
    let what = match a {
        1 => "rational normal curve".to_string(),
        2 => "secant lines".to_string(),
        _ if 2 * a > d + 1 => "open".to_string(),
        _ => format!("secant {}-planes", a - 1),
    };
    format!("a={a} ({what})")
}

fn binary_catalog(d: u32) -> Result<Vec<CatalogEntry>> {
    let s = evaluation_point(d);
    let e = d.div_ceil(2) as i64;
    let points: Vec<Vec<i64>> = (0..).map(|k| if k == 0 { vec![0, 1] } else { vec![1, k - 1] }).take(d as usize / 2 + 2).collect();
    let mut out = Vec::new();
    for a in 1..=d / 2 + 1 {
        let hf = (0..=d).map(|k| (k + 1).min(d - k + 1).min(a) as u64).collect();
        let kernel = (a as i64 <= e).then(|| TwistComplex::line_bundle(1, e - a as i64));
        let (status, reason, node) = match &kernel {
            Some(k) => {
                let (c, r) = assess(k, &s, None, MrMode::Dlp)?;
                (c, r, Some(crate::charge::charge(k, &s)))
            }
            None => (Color::Black, None, None),
        };
        out.push(CatalogEntry {
            label: binary_label(a, d),
            n: 1,
            d,
            hilbert_function: hf,
            interior_square: None,
            kernel_object: kernel.as_ref().map(|_| diagram::line_bundle_name(e - a as i64)),
            dimension: (2 * a as u64 - 1).min(d as u64),
            charge_node: node,
            status,
            reason,
            witness_ideal: None,
            example: Example::Points(points[..a as usize].to_vec()),
        });
    }
    Ok(out)
}

fn unsupported(n: usize, d: u32) -> Error {
    Error::Unsupported(format!(
        "catalogs exist for n = 1 with 1 <= d <= {MAX_BINARY_DEGREE} and for n = 2 with 1 <= d <= 4, got n = {n}, d = {d}"
    ))
}

pub fn catalog(n: usize, d: u32) -> Result<Vec<CatalogEntry>> {
    match (n, d) {
        (1, 1..=MAX_BINARY_DEGREE) => binary_catalog(d),
        (2, 1..=4) => {
            let s = evaluation_point(d);
            plane_specs(d)
                .into_iter()
                .map(|spec| {
                    let (status, reason, node) = match spec.kernel {
                        Some((_, class)) => {
                            let k = class();
                            let (c, r) = assess(&k, &s, None, MrMode::Dlp)?;
                            (c, r, Some(crate::charge::charge(&k, &s)))
                        }
                        None => (Color::Black, None, None),
                    };
                    Ok(CatalogEntry {
                        label: spec.label.to_string(),
                        n,
                        d,
                        hilbert_function: spec.hf.to_vec(),
                        interior_square: spec.interior.map(<[_]>::to_vec),
                        kernel_object: spec.kernel.map(|(name, _)| name.to_string()),
                        dimension: spec.dimension,
                        charge_node: node,
                        status,
                        reason,
                        witness_ideal: spec.witness.map(|w| w.iter().map(ToString::to_string).collect()),
                        example: (spec.example)(),
                    })
                })
                .collect()
        }
        _ => Err(unsupported(n, d)),
    }
}

pub fn classify(g: &Socle) -> Result<StratumLabel> {
    let entries = catalog(g.n(), g.d())?;
    let hf = hilbert_function(g).0;
    let candidates: Vec<&CatalogEntry> = entries.iter().filter(|e| e.hilbert_function == hf).collect();
    let found = match candidates.as_slice() {
        [] => None,
        [one] if one.interior_square.is_none() => Some(*one),
        several => {
            let square = interior_square(&koszul_betti(g)?)?;
            several
                .iter()
                .find(|e| e.interior_square.as_ref() == Some(&square))
                .copied()
        }
    };
    Ok(match found {
        Some(e) => StratumLabel::Stratum { label: e.label.clone() },
        None => StratumLabel::Unclassified,
    })
}

pub fn classify_batch(socles: &[Socle]) -> Vec<Result<StratumLabel>> {
    socles.par_iter().map(classify).collect()
}

pub fn quadric_rank(g: &Socle) -> Result<(usize, StratumLabel)> {
    if g.d() != 2 {
        return Err(Error::InvalidInput(format!("expected a quadric, got degree {}", g.d())));
    }
    let r = catalecticant(g, 1)?.rank();
    let label = if g.n() == 2 {
        classify(g)?
    } else {
        StratumLabel::Stratum { label: format!("rank {r}") }
    };
    Ok((r, label))
}

pub fn verify_factorization_witness(g: &Socle, entry: &CatalogEntry) -> Result<bool> {
    let gens = entry
        .witness_generators()
        .ok_or_else(|| Error::NoWitness(entry.label.clone()))?;
    if g.n() != entry.n {
        return Err(Error::InvalidInput(format!(
            "socle on P^{} against a catalog entry on P^{}",
            g.n(),
            entry.n
        )));
    }
    factors_through_ideal(g, &gens)
}
