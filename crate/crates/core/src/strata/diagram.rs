use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charge::{charge, compare_arg, ChargePoint, TwistComplex};
use crate::error::{Error, Result};
use crate::linalg::{ratio, rational_str, Rational};
use crate::plane::{m_r, MrMode};

use super::MAX_BINARY_DEGREE;

pub const REASON_BELOW_SLOPE: &str = "phase below that of O at the evaluation point";
pub const REASON_TORSION_ONLY: &str = "no semistable sheaf of admissible rank carries this charge";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Reference,
    Kernel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramNode {
    pub name: String,
    #[serde(with = "rational_str")]
    pub x: Rational,
    #[serde(with = "rational_str")]
    pub y: Rational,
    pub status: Color,
    pub reason: Option<String>,
    pub role: Role,
}

impl DiagramNode {
    pub fn point(&self) -> ChargePoint {
        ChargePoint::new(self.x.clone(), self.y.clone())
    }
}

/// `s = 0` for even socle degree, `-1/2` for odd.
pub fn evaluation_point(d: u32) -> Rational {
    if d.is_multiple_of(2) {
        Rational::zero()
    } else {
        ratio(-1, 2)
    }
}

pub(super) fn line_bundle_name(k: i64) -> String {
    if k == 0 {
        "O".to_string()
    } else {
        format!("O({k})")
    }
}

/// Red/black status of a kernel class at `s`. An explicit annotation wins;
/// otherwise the phase test against `O`, then (on the plane) the existence of
/// a semistable sheaf with the `s = 0` charge.
pub fn assess(
    class: &TwistComplex,
    s: &Rational,
    annotation: Option<&str>,
    mode: MrMode,
) -> Result<(Color, Option<String>)> {
    if let Some(why) = annotation {
        return Ok((Color::Red, Some(why.to_string())));
    }
    let z = charge(class, s);
    let o = charge(&TwistComplex::line_bundle(class.n, 0), s);
    if compare_arg(&z, &o)? == Ordering::Less {
        return Ok((Color::Red, Some(REASON_BELOW_SLOPE.to_string())));
    }
    if class.n == 2 && !admissible_rank_exists(&charge(class, &Rational::zero()), mode)? {
        return Ok((Color::Red, Some(REASON_TORSION_ONLY.to_string())));
    }
    Ok((Color::Black, None))
}

fn admissible_rank_exists(z0: &ChargePoint, mode: MrMode) -> Result<bool> {
    let (chi_prime, chi) = (&z0.x, &z0.y);
    let top = (chi_prime * ratio(2, 3)).floor().to_integer().to_u64().unwrap_or(0);
    for r in 1..=top {
        let ch1 = chi_prime - ratio(3 * r as i64, 2);
        if !ch1.is_integer() {
            continue;
        }
        if *chi <= m_r(mode, r, chi_prime)? {
            return Ok(true);
        }
    }
    Ok(false)
}

struct Builder {
    n: usize,
    s: Rational,
    mode: MrMode,
    nodes: Vec<DiagramNode>,
}

impl Builder {
    fn push(&mut self, name: &str, class: TwistComplex, role: Role, annotation: Option<&str>) -> Result<()> {
        let z = charge(&class, &self.s);
        let (status, reason) = match role {
            Role::Reference => (Color::Black, None),
            Role::Kernel => assess(&class, &self.s, annotation, self.mode)?,
        };
        self.nodes.push(DiagramNode { name: name.to_string(), x: z.x, y: z.y, status, reason, role });
        Ok(())
    }

    fn reference(&mut self, name: &str, class: TwistComplex) -> Result<()> {
        self.push(name, class, Role::Reference, None)
    }

    fn kernel(&mut self, name: &str, class: TwistComplex) -> Result<()> {
        self.push(name, class, Role::Kernel, None)
    }

    fn red(&mut self, name: &str, class: TwistComplex, why: &str) -> Result<()> {
        self.push(name, class, Role::Kernel, Some(why))
    }

    fn o(&self, k: i64) -> TwistComplex {
        TwistComplex::line_bundle(self.n, k)
    }

    fn ideal(&self, points: u64, k: i64) -> TwistComplex {
        TwistComplex::points_ideal(self.n, points, k)
    }
}

pub fn zdiagram(n: usize, d: u32) -> Result<Vec<DiagramNode>> {
    zdiagram_with(n, d, MrMode::Dlp)
}

pub fn zdiagram_with(n: usize, d: u32, mode: MrMode) -> Result<Vec<DiagramNode>> {
    let mut b = Builder { n, s: evaluation_point(d), mode, nodes: Vec::new() };
    let e = d.div_ceil(2) as i64;
    match (n, d) {
        (1, 1..=MAX_BINARY_DEGREE) => {
            b.reference("O(-1)[1]", b.o(-1).shift(1))?;
            b.reference("C_p", TwistComplex::point(1))?;
            for k in 0..e {
                b.kernel(&line_bundle_name(k), b.o(k))?;
            }
            b.reference(&line_bundle_name(e), b.o(e))?;
            let dual = if d.is_multiple_of(2) { e } else { e - 1 };
            b.reference("E(sigma)", b.o(e).concat(&TwistComplex::omega(1, dual).shift(1)))?;
        }
        (2, 1) => {
            b.reference("O(-2)[2]", b.o(-2).shift(2))?;
            b.reference("O(-1)[1]", b.o(-1).shift(1))?;
            b.reference("C_p", TwistComplex::point(2))?;
            b.red("O", b.o(0), "the kernel always contains O^(e+1)")?;
            b.red("O^2", b.o(0).repeat(2), "every map O^2 -> O(1) factors through I_p(1)")?;
            b.reference("O(1)", b.o(1))?;
            b.kernel("I_p(1)", b.ideal(1, 1))?;
        }
        (2, 2) => {
            b.reference("O(-1)[1]", b.o(-1).shift(1))?;
            b.reference("O(-2)[2]", b.o(-2).shift(2))?;
            b.reference("C_p", TwistComplex::point(2))?;
            b.kernel("O", b.o(0))?;
            b.reference("O(1)", b.o(1))?;
            b.kernel("I_p(1)", b.ideal(1, 1))?;
            b.kernel("I_pq(1)", b.ideal(2, 1))?;
            let line = b.o(0).concat(&b.o(-1).shift(1));
            b.kernel("torsion(1,1)", line.clone())?;
            b.kernel("torsion(2,2)", line.repeat(2))?;
        }
        (2, 3) => {
            b.reference("O(-2)[2]", b.o(-2).shift(2))?;
            b.reference("O(-1)[1]", b.o(-1).shift(1))?;
            b.reference("C_p", TwistComplex::point(2))?;
            b.kernel("O(1)", b.o(1))?;
            b.reference("O(2)", b.o(2))?;
            b.kernel("I_p(2)", b.ideal(1, 2))?;
            b.kernel("I_pq(2)", b.ideal(2, 2))?;
            b.kernel("I_pqr(2)", b.ideal(3, 2))?;
            b.kernel("O^3", b.o(0).repeat(3))?;
            let tangent = b.o(0).repeat(3).concat(&b.o(-1).shift(1));
            b.red("T(-1)", tangent, "every map T(-1) -> O(2) factors through I_pqr(2)")?;
        }
        (2, 4) => {
            b.reference("O(-1)[1]", b.o(-1).shift(1))?;
            b.reference("O(-2)[2]", b.o(-2).shift(2))?;
            b.reference("C_p", TwistComplex::point(2))?;
            b.kernel("O", b.o(0))?;
            b.kernel("O(1)", b.o(1))?;
            b.kernel("I_p(1)", b.ideal(1, 1))?;
            b.kernel("O^2", b.o(0).repeat(2))?;
            b.reference("O(2)", b.o(2))?;
            b.kernel("I_p(2)", b.ideal(1, 2))?;
            b.kernel("I_pq(2)", b.ideal(2, 2))?;
            b.kernel("I_pqr(2)", b.ideal(3, 2))?;
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "Z-diagrams exist for n = 1 with 1 <= d <= {MAX_BINARY_DEGREE} and n = 2 with 1 <= d <= 4, got n = {n}, d = {d}"
            )))
        }
    }
    Ok(b.nodes)
}

fn float(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Plot of the nodes: reference objects hollow, kernels filled by status.
pub fn render_svg(nodes: &[DiagramNode]) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 48.0;
    let xs: Vec<f64> = nodes.iter().map(|n| float(&n.x)).chain([0.0]).collect();
    let ys: Vec<f64> = nodes.iter().map(|n| float(&n.y)).chain([0.0]).collect();
    let bounds = |v: &[f64]| {
        let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (lo - 0.5, hi + 0.5)
    };
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let scale = (SIZE - 2.0 * PAD) / (x1 - x0).max(y1 - y0);
    let px = |x: f64| PAD + (x - x0) * scale;
    let py = |y: f64| SIZE - PAD - (y - y0) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#999"/>"##,
        px(x0),
        py(0.0),
        px(x1),
        py(0.0)
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#999"/>"##,
        px(0.0),
        py(y0),
        px(0.0),
        py(y1)
    );
    for node in nodes {
        let (cx, cy) = (px(float(&node.x)), py(float(&node.y)));
        let color = match node.status {
            Color::Black => "black",
            Color::Red => "red",
        };
        let fill = match node.role {
            Role::Reference => "none",
            Role::Kernel => color,
        };
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="4" fill="{fill}" stroke="{color}"><title>{} = ({}, {})</title></circle>"#,
            node.name, node.x, node.y
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-size="11" font-family="monospace" fill="{color}">{}</text>"#,
            cx + 6.0,
            cy - 6.0,
            node.name
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::ChargePoint;

    fn find<'a>(nodes: &'a [DiagramNode], name: &str) -> &'a DiagramNode {
        nodes.iter().find(|n| n.name == name).unwrap_or_else(|| panic!("missing {name}"))
    }

    fn at(node: &DiagramNode) -> ChargePoint {
        node.point()
    }

    #[test]
    fn quadric_diagram() {
        let nodes = zdiagram(2, 2).unwrap();
        assert_eq!(at(find(&nodes, "O")), ChargePoint::from_ratios((3, 2), (1, 1)));
        assert_eq!(at(find(&nodes, "I_p(1)")), ChargePoint::from_ratios((5, 2), (2, 1)));
        assert_eq!(at(find(&nodes, "O(-1)[1]")), ChargePoint::from_ratios((-1, 2), (0, 1)));
        let pq = find(&nodes, "I_pq(1)");
        assert_eq!(at(pq), ChargePoint::from_ratios((5, 2), (1, 1)));
        assert_eq!((pq.status, pq.reason.as_deref()), (Color::Red, Some(REASON_BELOW_SLOPE)));
        for t in ["torsion(1,1)", "torsion(2,2)"] {
            let node = find(&nodes, t);
            assert_eq!((node.status, node.reason.as_deref()), (Color::Red, Some(REASON_TORSION_ONLY)));
        }
        assert_eq!(find(&nodes, "I_p(1)").status, Color::Black);
    }

    #[test]
    fn cubic_diagram() {
        let nodes = zdiagram(2, 3).unwrap();
        assert_eq!(at(find(&nodes, "O(2)")), ChargePoint::from_ratios((3, 1), (35, 8)));
        assert_eq!(at(find(&nodes, "T(-1)")), ChargePoint::from_ratios((3, 1), (5, 4)));
        assert_eq!(at(find(&nodes, "O^3")), ChargePoint::from_ratios((3, 1), (9, 8)));
        let black: Vec<&str> = nodes
            .iter()
            .filter(|n| n.role == Role::Kernel && n.status == Color::Black)
            .map(|n| n.name.as_str())
            .collect();
        assert_eq!(black, vec!["O(1)", "I_p(2)", "I_pq(2)", "I_pqr(2)", "O^3"]);
        assert_eq!(find(&nodes, "T(-1)").status, Color::Red);
    }

    #[test]
    fn linear_diagram() {
        let nodes = zdiagram(2, 1).unwrap();
        assert_eq!(at(find(&nodes, "O")), ChargePoint::from_ratios((1, 1), (3, 8)));
        assert_eq!(at(find(&nodes, "I_p(1)")), ChargePoint::from_ratios((2, 1), (7, 8)));
        assert_eq!(find(&nodes, "O^2").status, Color::Red);
        assert_eq!(find(&nodes, "I_p(1)").status, Color::Black);
    }

    #[test]
    fn quartic_kernels_all_black() {
        let nodes = zdiagram(2, 4).unwrap();
        assert!(nodes.iter().all(|n| n.status == Color::Black));
        assert_eq!(nodes.iter().filter(|n| n.role == Role::Kernel).count(), 7);
    }

    #[test]
    fn binary_sigma_sits_on_the_axis() {
        for d in 1..=MAX_BINARY_DEGREE {
            let nodes = zdiagram(1, d).unwrap();
            assert_eq!(at(find(&nodes, "E(sigma)")), ChargePoint::from_ratios((2, 1), (0, 1)));
        }
    }

    #[test]
    fn unsupported_diagram() {
        assert!(matches!(zdiagram(3, 2), Err(Error::Unsupported(_))));
        assert!(matches!(zdiagram(2, 5), Err(Error::Unsupported(_))));
    }

    #[test]
    fn svg_mentions_every_node() {
        let nodes = zdiagram(2, 4).unwrap();
        let svg = render_svg(&nodes);
        assert!(svg.starts_with("<svg"));
        for n in &nodes {
            assert!(svg.contains(&format!(">{}</text>", n.name)));
        }
    }
}
