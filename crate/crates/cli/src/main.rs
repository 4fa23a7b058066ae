use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use socle::apolarity::{power_sum_of_points, Socle};
use socle::linalg::{parse_rational, Rational};
use socle::plane::{MrMode, MrTable};
use socle::report::analyze;
use socle::resolution::{koszul_betti_with, Route};
use socle::sample;
use socle::strata::{classify, classify_batch, render_svg, zdiagram_with};
use socle::verification::{all_pass, run_all};
use socle::Error;

#[derive(Parser)]
#[command(name = "socle", version, about = "Apolar ideals, betti tables, and strata of socles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Naive,
    Dlp,
}

impl From<Mode> for MrMode {
    fn from(m: Mode) -> MrMode {
        match m {
            Mode::Naive => MrMode::Naive,
            Mode::Dlp => MrMode::Dlp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Inverse,
    Quotient,
}

#[derive(clap::Args)]
struct SocleInput {
    /// Polynomial in y0..yn, or a path to a file containing one.
    input: String,
    /// Projective dimension, so variables run y0..yn; inferred when omitted.
    #[arg(long)]
    n: Option<usize>,
}

impl SocleInput {
    fn read(&self) -> Result<Socle, Failure> {
        let text = if Path::new(&self.input).is_file() {
            std::fs::read_to_string(&self.input).map_err(|e| Failure::Io(format!("{}: {e}", self.input)))?
        } else {
            self.input.clone()
        };
        Ok(Socle::parse(text.trim(), self.n)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function, betti table, stratum and charges of a socle.
    Analyze {
        #[command(flatten)]
        socle: SocleInput,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Power sum from a JSON spec of points, weights and degree.
    Synth {
        /// JSON text or a path to a JSON file.
        spec: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stratum of a socle, or of seeded random samples.
    Classify {
        /// Polynomial or file; omit to classify samples.
        input: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Socle degree for sampling.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Graded betti table of the apolar quotient.
    Betti {
        #[command(flatten)]
        socle: SocleInput,
        #[arg(long, value_enum, default_value = "inverse")]
        route: RouteArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Charge diagram of kernel objects for (n, d).
    Zdiagram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "dlp")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Table of the maximal Euler characteristic m_r on the plane.
    Mrtable {
        #[arg(long, value_enum, default_value = "dlp")]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        ranks: u64,
        /// Largest column, as twice chi'.
        #[arg(long, default_value_t = 9)]
        max_twice: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every reference check and print one row each.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Bound used for the m_r checks.
        #[arg(long, value_enum, default_value = "dlp")]
        mode: Mode,
    },
}

enum Failure {
    Library(Error),
    Io(String),
    Input(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Library(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Library(Error::Unsupported(_) | Error::BoundaryUnresolved { .. }) => 3,
            _ => 2,
        }
    }
}

fn unsupported_format(what: &str, format: Format) -> Result<(), Failure> {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Svg => "svg",
    };
    Err(Failure::Input(format!("{what} has no {name} output")))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational, Failure> {
        match self {
            Number::Int(k) => Ok(Rational::from_integer((*k).into())),
            Number::Text(s) => parse_rational(s).ok_or_else(|| Failure::Input(format!("not a rational number: {s}"))),
        }
    }
}

#[derive(Deserialize)]
struct SynthSpec {
    degree: u32,
    points: Vec<Vec<Number>>,
    weights: Vec<Number>,
}

#[derive(Serialize)]
struct SynthOutput {
    socle: String,
    n: usize,
    d: u32,
}

fn synth(spec: &str) -> Result<Socle, Failure> {
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).map_err(|e| Failure::Io(format!("{spec}: {e}")))?
    } else {
        spec.to_string()
    };
    let spec: SynthSpec = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("synth spec: {e}")))?;
    let points = spec
        .points
        .iter()
        .map(|p| p.iter().map(Number::value).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let weights = spec.weights.iter().map(Number::value).collect::<Result<Vec<_>, _>>()?;
    if points.is_empty() || points.len() != weights.len() {
        return Err(Failure::Input("need as many weights as points, and at least one".into()));
    }
    if points.iter().any(|p| p.len() != points[0].len() || p.is_empty()) {
        return Err(Failure::Input("points must share one nonzero length".into()));
    }
    Ok(power_sum_of_points(&points, &weights, spec.degree)?)
}

#[derive(Serialize)]
struct Classified {
    socle: String,
    stratum: String,
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze { socle, format } => {
            let report = analyze(&socle.read()?)?;
            match format {
                Format::Text => Ok(report.to_string().trim_end().to_string()),
                Format::Json => Ok(json(&report)),
                Format::Svg => unsupported_format("analyze", format).map(|_| String::new()),
            }
        }
        Command::Synth { spec, format } => {
            let g = synth(&spec)?;
            match format {
                Format::Text => Ok(g.to_string()),
                Format::Json => Ok(json(&SynthOutput { socle: g.to_string(), n: g.n(), d: g.d() })),
                Format::Svg => unsupported_format("synth", format).map(|_| String::new()),
            }
        }
        Command::Classify { input, n, degree, samples, seed, format } => {
            let socles = match input {
                Some(input) => vec![SocleInput { input, n }.read()?],
                None => {
                    let (Some(n), Some(d)) = (n, degree) else {
                        return Err(Failure::Input("sampling needs --n and --degree".into()));
                    };
                    let mut rng = sample::rng(seed);
                    (0..samples.max(1)).map(|_| sample::mixed_socle(&mut rng, n, d)).collect()
                }
            };
            let labels = if socles.len() == 1 {
                vec![classify(&socles[0])]
            } else {
                classify_batch(&socles)
            };
            let mut out = Vec::new();
            for (g, label) in socles.iter().zip(labels) {
                out.push(Classified { socle: g.to_string(), stratum: label?.to_string() });
            }
            match format {
                Format::Text => Ok(out.iter().map(|c| format!("{}\t{}", c.stratum, c.socle)).collect::<Vec<_>>().join("\n")),
                Format::Json => Ok(json(&out)),
                Format::Svg => unsupported_format("classify", format).map(|_| String::new()),
            }
        }
        Command::Betti { socle, route, format } => {
            let route = match route {
                RouteArg::Inverse => Route::InverseSystem,
                RouteArg::Quotient => Route::Quotient,
            };
            let t = koszul_betti_with(&socle.read()?, route)?;
            match format {
                Format::Text => Ok(t.to_string().trim_end().to_string()),
                Format::Json => Ok(json(&t)),
                Format::Svg => unsupported_format("betti", format).map(|_| String::new()),
            }
        }
        Command::Zdiagram { n, degree, mode, format } => {
            let nodes = zdiagram_with(n, degree, mode.into())?;
            Ok(match format {
                Format::Text => nodes
                    .iter()
                    .map(|node| {
                        let reason = node.reason.as_deref().map(|r| format!(" ({r})")).unwrap_or_default();
                        format!("{:<12} ({}, {})  {:?} {:?}{reason}", node.name, node.x, node.y, node.role, node.status)
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Json => json(&nodes),
                Format::Svg => render_svg(&nodes).trim_end().to_string(),
            })
        }
        Command::Mrtable { mode, ranks, max_twice, format } => {
            let table = MrTable::build(mode.into(), ranks, max_twice)?;
            match format {
                Format::Text => Ok(table.to_string().trim_end().to_string()),
                Format::Json => Ok(json(&table)),
                Format::Svg => unsupported_format("mrtable", format).map(|_| String::new()),
            }
        }
        Command::VerifyPaper { json: as_json, mode } => {
            let rows = run_all(mode.into());
            let text = if as_json {
                json(&rows)
            } else {
                rows.iter()
                    .map(|r| {
                        let mark = if r.pass { "PASS" } else { "FAIL" };
                        format!("{:>2} {mark} {}: expected {}, got {}", r.criterion, r.name, r.expected, r.actual)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            println!("{text}");
            if all_pass(&rows) {
                Ok(String::new())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Library(e) => eprintln!("error: {e}"),
                Failure::Io(m) | Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
