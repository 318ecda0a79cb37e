use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use teich_coords::closed_form::{self, closed_form_inverse, ClosedFormSurface};
use teich_coords::coordinates::Coordinates;
use teich_coords::io::{self, LaminationFile, Point, PointFile};
use teich_coords::lamination::{compatibility_check, CurveKind, Flavor, Lamination, LaminationContext};
use teich_coords::verify::{self, SuiteKind, VerifyOptions};
use teich_coords::{fixtures, Error, SurfaceSignature, TriangulatedSurface};

#[derive(Parser)]
#[command(name = "teich-coords", version, about = "Shear-decoration and lambda-length coordinates on decorated surfaces")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Subcommand)]
enum Command {
    /// Map a point file between the shear-decoration and lambda-length charts.
    Convert {
        #[arg(long)]
        point: PathBuf,
        /// Overrides the surface named in the point file.
        #[arg(long)]
        surface: Option<String>,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Write the point file here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the verification suites.
    Verify {
        /// Run every suite (the default when no --suite is given).
        #[arg(long)]
        all: bool,
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Replace every numeric tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Closed-form tables for the three-punctured sphere and the bigon.
    Examples {
        name: String,
        /// Boundary lengths: three on the sphere, one on the bigon.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        l: Vec<f64>,
        /// Lambda-lengths: a12 a13 a23 on the sphere, a23 a32 on the bigon.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        lambda: Vec<f64>,
    },
    /// Lamination coordinates and the compatibility check.
    Lamination {
        #[arg(long)]
        lamination: PathBuf,
        #[arg(long)]
        surface: Option<String>,
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Emit a surface file: a bundled example or a special triangulation.
    Generate {
        #[arg(long, conflicts_with_all = ["genus", "punctures", "spikes"])]
        example: Option<String>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        punctures: u32,
        /// Spikes on each boundary component.
        #[arg(long, num_args = 0..)]
        spikes: Vec<u32>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Invalid(e)
    }
}

type Outcome = Result<String, Failure>;

struct Style {
    color: bool,
}

impl Style {
    fn detect() -> Self {
        let color = std::env::var_os("TEICH_COORDS_NO_COLOR").is_none() && std::io::stdout().is_terminal();
        Self { color }
    }

    fn verdict(&self, passed: bool) -> String {
        let (word, code) = if passed { ("PASS", "32") } else { ("FAIL", "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    io::to_json(v)
}

fn write_or_return(output: Option<&Path>, text: String) -> Outcome {
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

// A path written into an output file must still resolve from wherever that
// file ends up, so non-bundled references are made absolute.
fn portable_reference(reference: &str, base: Option<&Path>) -> String {
    if fixtures::BUNDLED.contains(&reference) {
        return reference.to_string();
    }
    let path = base.map(|b| b.join(reference)).unwrap_or_else(|| PathBuf::from(reference));
    std::fs::canonicalize(&path).unwrap_or(path).display().to_string()
}

fn convert(point: &Path, surface: Option<&str>, direction: Direction, output: Option<&Path>) -> Outcome {
    let file = PointFile::read(point)?;
    let (reference, base) = match surface {
        Some(s) => (s.to_string(), None),
        None => (file.surface.clone(), point.parent()),
    };
    let s = io::load_surface(&reference, base)?;
    let p = file.to_point(&s)?;
    let coords = Coordinates::new(s.clone())?;
    let result = match (direction, p) {
        (Direction::Forward, Point::Shear(p)) => Point::Lambda(coords.psi_forward(&p)?),
        (Direction::Inverse, Point::Lambda(q)) => match ClosedFormSurface::parse(&reference) {
            Ok(which) => Point::Shear(closed_form_inverse(which, &q)?),
            Err(_) => Point::Shear(coords.psi_inverse(&q)?),
        },
        (Direction::Forward, Point::Lambda(_)) => {
            return Err(Error::Parse("forward conversion needs a shear_decoration point".into()).into())
        }
        (Direction::Inverse, Point::Shear(_)) => {
            return Err(Error::Parse("inverse conversion needs a lambda_boundary point".into()).into())
        }
    };
    let out = PointFile::from_point(&portable_reference(&reference, base), &s, &result);
    write_or_return(output, json(&out))
}

fn run_verify(suites: &[String], opts: VerifyOptions, format: Format, style: &Style) -> Outcome {
    let kinds = if suites.is_empty() {
        SuiteKind::ALL.to_vec()
    } else {
        suites
            .iter()
            .map(|s| SuiteKind::parse(s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = verify::run(&kinds, opts)?;
    let text = match format {
        Format::Structured => json(&report),
        Format::Text => {
            let mut t = report.to_text();
            if style.color {
                t = t.replace("[PASS]", &format!("[{}]", style.verdict(true)));
                t = t.replace("[FAIL]", &format!("[{}]", style.verdict(false)));
            }
            t
        }
    };
    if report.passed {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

#[derive(Serialize)]
struct SphereTable {
    surface: &'static str,
    l: [f64; 3],
    x: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<[f64; 3]>,
}

#[derive(Serialize)]
struct BigonTable {
    surface: &'static str,
    l1: f64,
    a23: f64,
    a32: f64,
    x12: f64,
    x13: f64,
}

fn expect_len(what: &'static str, v: &[f64], n: usize) -> Result<(), Error> {
    if v.len() != n {
        return Err(Error::Dimension { what, expected: n, got: v.len() });
    }
    Ok(())
}

fn examples(name: &str, l: &[f64], lambda: &[f64], format: Format) -> Outcome {
    match ClosedFormSurface::parse(name)? {
        ClosedFormSurface::ThreePuncturedSphere => {
            expect_len("l", l, 3)?;
            let l = [l[0], l[1], l[2]];
            let x = closed_form::sphere_shears(l);
            let d = if lambda.is_empty() {
                None
            } else {
                expect_len("lambda", lambda, 3)?;
                let (a12, a13, a23) = (lambda[0], lambda[1], lambda[2]);
                Some([
                    closed_form::sphere_decoration(a12, a13, a23, l[0], l[1], l[2]),
                    closed_form::sphere_decoration(a12, a23, a13, l[1], l[0], l[2]),
                    closed_form::sphere_decoration(a13, a23, a12, l[2], l[0], l[1]),
                ])
            };
            let t = SphereTable { surface: fixtures::THREE_PUNCTURED_SPHERE, l, x, d };
            Ok(match format {
                Format::Structured => json(&t),
                Format::Text => {
                    let mut s = format!("three-punctured sphere, l = ({}, {}, {})\n", l[0], l[1], l[2]);
                    s += &format!("x = ({}, {}, {})\n", fmt(x[0]), fmt(x[1]), fmt(x[2]));
                    s += &format!("  x12 = {}\n  x13 = {}\n  x23 = {}\n", fmt(x[0]), fmt(x[1]), fmt(x[2]));
                    if let Some(d) = d {
                        s += &format!("  d1 = {}\n  d2 = {}\n  d3 = {}\n", fmt(d[0]), fmt(d[1]), fmt(d[2]));
                    }
                    s
                }
            })
        }
        ClosedFormSurface::OncePuncturedBigon => {
            expect_len("l", l, 1)?;
            expect_len("lambda", lambda, 2)?;
            let (x12, x13) = closed_form::bigon_shears(l[0], lambda[0], lambda[1]);
            let t = BigonTable { surface: fixtures::ONCE_PUNCTURED_BIGON, l1: l[0], a23: lambda[0], a32: lambda[1], x12, x13 };
            Ok(match format {
                Format::Structured => json(&t),
                Format::Text => format!(
                    "once-punctured bigon, l1 = {}, a23 = {}, a32 = {}\nx = ({}, {})\n  x12 = {}\n  x13 = {}\n",
                    l[0], lambda[0], lambda[1], fmt(x12), fmt(x13), fmt(x12), fmt(x13)
                ),
            })
        }
    }
}

/// Shortest decimal that reads back within 1e-12, so `0.5` is not shown as
/// `0.49999999999999994`.
fn fmt(v: f64) -> String {
    for digits in 0..17 {
        let s = format!("{v:.digits$}");
        if (s.parse::<f64>().unwrap_or(f64::NAN) - v).abs() <= 1e-12 * v.abs().max(1.0) {
            return if s.parse::<f64>() == Ok(0.0) { "0".to_string() } else { s };
        }
    }
    format!("{v}")
}

#[derive(Serialize)]
struct CurveRow {
    kind: CurveKind,
    weight: f64,
    crossings: Vec<String>,
}

#[derive(Serialize)]
struct LaminationReport {
    schema: &'static str,
    flavor: Flavor,
    curves: Vec<CurveRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edge_weights: Option<Vec<(String, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    signed_weights: Option<Vec<(String, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decoration: Option<Vec<(String, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    compatibility: Option<teich_coords::lamination::CompatibilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
}

fn labelled(ids: impl Iterator<Item = String>, values: Vec<f64>) -> Vec<(String, f64)> {
    ids.zip(values).collect()
}

fn lamination(path: &Path, surface: Option<&str>, tolerance: Option<f64>, format: Format, style: &Style) -> Outcome {
    let file = LaminationFile::read(path)?;
    let s = match surface {
        Some(r) => io::load_surface(r, None)?,
        None => io::load_surface(&file.surface, path.parent())?,
    };
    let l = Lamination::from_description(&s, &file.lamination)?;
    let ctx = LaminationContext::new(&s)?;
    let edge_ids = || s.edges().iter().map(|e| e.id.clone());
    let vertex_ids = || s.vertices().iter().map(|v| v.id.clone());
    let curves = l
        .curves()
        .iter()
        .map(|c| CurveRow {
            kind: ctx.classify(&c.curve).unwrap_or(c.kind),
            weight: c.weight,
            crossings: c.curve.crossing_edges(&s).into_iter().map(|e| s.edges()[e].id.clone()).collect(),
        })
        .collect();
    let mut report = LaminationReport {
        schema: "teich-coords/lamination-report/1",
        flavor: l.flavor(),
        curves,
        edge_weights: None,
        signed_weights: None,
        decoration: None,
        compatibility: None,
        passed: None,
    };
    let tol = tolerance.unwrap_or(1e-9);
    match l.flavor() {
        Flavor::A => {
            report.edge_weights = Some(labelled(edge_ids(), l.edge_weights_a()?));
            let r = compatibility_check(&Coordinates::new(s.clone())?, &l)?;
            report.passed = Some(r.passed(tol));
            report.compatibility = Some(r);
        }
        Flavor::X | Flavor::XD => {
            report.signed_weights = Some(labelled(edge_ids(), l.signed_weights_x(l.flavor().includes_boundary())?));
        }
        Flavor::AX | Flavor::AXD => {
            let (x, d) = l.psi_x()?;
            report.signed_weights = Some(labelled(edge_ids(), x));
            report.decoration = Some(labelled(vertex_ids(), d));
        }
    }
    let text = match format {
        Format::Structured => json(&report),
        Format::Text => lamination_text(&report, tol, style),
    };
    match report.passed {
        Some(false) => Err(Failure::Verification(text)),
        _ => Ok(text),
    }
}

fn lamination_text(r: &LaminationReport, tol: f64, style: &Style) -> String {
    let mut s = format!("flavor {:?}, {} curves\n", r.flavor, r.curves.len());
    for c in &r.curves {
        let kind = serde_json::to_value(c.kind).ok().and_then(|v| v["kind"].as_str().map(String::from)).unwrap_or_default();
        s += &format!("  {:<12} weight {:<8} crossings [{}]\n", kind, fmt(c.weight), c.crossings.join(" "));
    }
    let table = |s: &mut String, title: &str, rows: &Option<Vec<(String, f64)>>| {
        if let Some(rows) = rows {
            *s += &format!("{title}\n");
            for (id, v) in rows {
                *s += &format!("  {id:<8} {}\n", fmt(*v));
            }
        }
    };
    table(&mut s, "edge weights a_e", &r.edge_weights);
    table(&mut s, "signed weights x_e", &r.signed_weights);
    table(&mut s, "A-curve weights d_v", &r.decoration);
    if let (Some(c), Some(p)) = (&r.compatibility, r.passed) {
        s += &format!(
            "compatibility {}: max error {:.3e}, boundary lengths {:.3e} (tol {tol:e})\n",
            style.verdict(p),
            c.max_error,
            c.max_boundary_length
        );
    }
    s
}

fn generate(example: Option<&str>, genus: u32, punctures: u32, spikes: Vec<u32>, output: Option<&Path>) -> Outcome {
    let s: TriangulatedSurface = match example {
        Some(name) => fixtures::bundled(name)?,
        None => fixtures::special_triangulation(&SurfaceSignature::new(genus, punctures, spikes))?,
    };
    write_or_return(output, json(&s.to_description()))
}

fn run(cli: Cli) -> Outcome {
    let style = Style::detect();
    match cli.command {
        Command::Convert { point, surface, direction, output } => {
            convert(&point, surface.as_deref(), direction, output.as_deref())
        }
        Command::Verify { all, suites, seed, samples, tolerance } => {
            let suites = if all { Vec::new() } else { suites };
            run_verify(&suites, VerifyOptions { seed, samples, tolerance }, cli.format, &style)
        }
        Command::Examples { name, l, lambda } => examples(&name, &l, &lambda, cli.format),
        Command::Lamination { lamination: path, surface, tolerance } => {
            lamination(&path, surface.as_deref(), tolerance, cli.format, &style)
        }
        Command::Generate { example, genus, punctures, spikes, output } => {
            generate(example.as_deref(), genus, punctures, spikes, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
