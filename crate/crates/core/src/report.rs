//! One-stop analysis of a socle, serializable to JSON.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::apolarity::{gorenstein_check, hilbert_function, GorensteinDiagnostics, HilbertFunction, Socle};
use crate::charge::{charge, cone_charge, ChargePoint, TwistComplex};
use crate::error::{Error, Result};
use crate::linalg::{rational_str, Rational};
use crate::resolution::{hf_from_betti, koszul_betti, BettiTable};
use crate::strata::{binary_waring, classify, evaluation_point, StratumLabel, WaringReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeData {
    #[serde(with = "rational_str")]
    pub s: Rational,
    /// Twist `e = ⌈d/2⌉` of the line bundle the kernel maps to.
    pub e: i64,
    pub line_bundle: ChargePoint,
    /// Charge of the interior of the resolution at `s = 0`; even `d` only.
    pub cone: Option<ChargePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub socle: String,
    pub n: usize,
    pub d: u32,
    pub hilbert_function: HilbertFunction,
    pub betti: BettiTable,
    pub diagnostics: GorensteinDiagnostics,
    pub stratum: Option<StratumLabel>,
    pub waring: Option<WaringReport>,
    pub charge: ChargeData,
    pub warnings: Vec<String>,
}

pub fn analyze(g: &Socle) -> Result<AnalysisReport> {
    let (n, d) = (g.n(), g.d());
    let hf = hilbert_function(g);
    let betti = koszul_betti(g)?;
    if hf_from_betti(&betti)? != hf {
        return Err(Error::MalformedTable("betti table disagrees with the Hilbert function".into()));
    }
    let diagnostics = gorenstein_check(g);
    let mut warnings = Vec::new();
    if !diagnostics.all_pass() {
        warnings.push("Gorenstein diagnostics failed".to_string());
    }

    let stratum = match classify(g) {
        Ok(label) => {
            if label == StratumLabel::Unclassified {
                warnings.push(format!("Hilbert function {hf} with this betti table is not in the catalog"));
            }
            Some(label)
        }
        Err(Error::Unsupported(why)) => {
            warnings.push(format!("no stratum catalog: {why}"));
            None
        }
        Err(e) => return Err(e),
    };

    let waring = if n == 1 {
        match binary_waring(g) {
            Ok(w) => Some(w),
            Err(Error::Regime(why)) => {
                warnings.push(format!("no unique Waring decomposition: {why}"));
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let s = evaluation_point(d);
    let e = d.div_ceil(2) as i64;
    let cone = if d % 2 == 0 && n > 0 {
        Some(cone_charge(&betti, e, &Rational::from_integer(0.into()))?)
    } else {
        None
    };
    let line_bundle = charge(&TwistComplex::line_bundle(n, e), &s);

    Ok(AnalysisReport {
        socle: g.to_string(),
        n,
        d,
        hilbert_function: hf,
        betti,
        diagnostics,
        stratum,
        waring,
        charge: ChargeData { s, e, line_bundle, cone },
        warnings,
    })
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "socle: {}", self.socle)?;
        writeln!(f, "n = {}, d = {}", self.n, self.d)?;
        writeln!(f, "Hilbert function: {}", self.hilbert_function)?;
        writeln!(f, "betti table:")?;
        write!(f, "{}", self.betti)?;
        let g = &self.diagnostics;
        writeln!(
            f,
            "diagnostics: socle degree one-dimensional {}, palindromic {}, catalecticants symmetric {}",
            g.socle_degree_one_dimensional, g.palindromic, g.catalecticants_transpose_symmetric
        )?;
        if let Some(s) = &self.stratum {
            writeln!(f, "stratum: {s}")?;
        }
        if let Some(w) = &self.waring {
            writeln!(f, "Waring: a = {}, b = {}, {}", w.a, w.b, serde_json::to_string(&w.decomposition).map_err(|_| fmt::Error)?)?;
        }
        let c = &self.charge;
        writeln!(f, "Z_{}(O({})) = {}", c.s, c.e, c.line_bundle)?;
        if let Some(z) = &c.cone {
            writeln!(f, "cone charge Z_0 = {z}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
