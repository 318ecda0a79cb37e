//! Verification suites behind `teich-coords verify`.
//!
//! Every suite draws from its own generator seeded from the run seed, so a
//! report depends only on the options.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closed_form::{closed_form_inverse, ClosedFormSurface};
use crate::coordinates::{
    decoration_param, max_abs_diff, radius_from_decoration, Coordinates, DecorationCurveLength,
    LambdaBoundaryPoint, ShearDecorationPoint, PUNCTURE_GAP_EVEN, PUNCTURE_GAP_ODD,
};
use crate::error::Result;
use crate::fixtures;
use crate::lamination::{compatibility_check, CombinatorialCurve, Flavor, Lamination};
use crate::oracle::{
    develop_vertex, equidistant_limit_check, finite_difference_report, measure_forward,
    origin_deviation, vertex_lift, FiniteDifferenceReport,
};
use crate::surface::{SurfaceSignature, TriangulatedSurface};

pub const SCHEMA: &str = "teich-coords/verify-report/1";
pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteKind {
    ForwardOracle,
    Roundtrip,
    FiniteDifferences,
    Limit,
    ClosedForms,
    Compatibility,
    Origin,
    GapCoefficients,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 8] = [
        Self::ForwardOracle,
        Self::Roundtrip,
        Self::FiniteDifferences,
        Self::Limit,
        Self::ClosedForms,
        Self::Compatibility,
        Self::Origin,
        Self::GapCoefficients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ForwardOracle => "forward-oracle",
            Self::Roundtrip => "roundtrip",
            Self::FiniteDifferences => "finite-differences",
            Self::Limit => "limit",
            Self::ClosedForms => "closed-forms",
            Self::Compatibility => "compatibility",
            Self::Origin => "origin",
            Self::GapCoefficients => "gap-coefficients",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Suite {
    pub kind: SuiteKind,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<Suite>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    /// Replaces every numeric tolerance. Structural checks (monotonicity,
    /// coefficients that must fail) keep their own rule.
    pub tolerance: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, samples: 100, tolerance: None }
    }
}

struct Builder {
    opts: VerifyOptions,
    checks: Vec<Check>,
}

impl Builder {
    fn at_most(&mut self, name: impl Into<String>, max_error: f64, tolerance: f64) {
        let tolerance = self.opts.tolerance.unwrap_or(tolerance);
        let passed = max_error <= tolerance;
        self.checks.push(Check { name: name.into(), max_error, tolerance, passed });
    }

    fn structural(&mut self, name: impl Into<String>, max_error: f64, passed: bool) {
        self.checks.push(Check { name: name.into(), max_error, tolerance: 0.0, passed });
    }
}

fn bundled() -> Vec<(&'static str, Coordinates)> {
    fixtures::BUNDLED
        .iter()
        .map(|&n| (n, Coordinates::new(fixtures::bundled(n).expect("bundled")).expect("valid")))
        .collect()
}

/// Special triangulations used by the roundtrip suites.
pub fn roundtrip_signatures() -> Vec<SurfaceSignature> {
    [
        (0, 1, vec![1]),
        (0, 2, vec![1]),
        (0, 1, vec![2]),
        (0, 0, vec![3]),
        (1, 1, vec![1]),
        (0, 2, vec![1, 1]),
        (1, 2, vec![2, 1]),
    ]
    .into_iter()
    .map(|(g, p, b)| SurfaceSignature::new(g, p, b))
    .collect()
}

fn sig_name(s: &SurfaceSignature) -> String {
    let b: Vec<String> = s.spikes_per_boundary.iter().map(|k| k.to_string()).collect();
    format!("g{}p{}b[{}]", s.genus, s.punctures, b.join(","))
}

fn forward_oracle(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    for (name, c) in bundled() {
        let mut worst = 0.0f64;
        for _ in 0..b.opts.samples {
            let p = ShearDecorationPoint::random(c.surface(), rng, 2.0);
            worst = worst.max(c.psi_forward(&p)?.max_abs_diff(&measure_forward(&c, &p)?));
        }
        b.at_most(format!("{name}: closed form vs measured"), worst, 1e-9);
    }
    Ok(())
}

/// Worst `|psi_inverse(psi_forward(p)) - p|` and `|psi_forward(psi_inverse(q)) - q|`.
pub fn roundtrip_errors(c: &Coordinates, rng: &mut ChaCha8Rng, samples: usize) -> Result<(f64, f64)> {
    let (mut inv, mut fwd) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let p = ShearDecorationPoint::random(c.surface(), rng, 2.0);
        let q = c.psi_forward(&p)?;
        let back = c.psi_inverse(&q)?;
        inv = inv.max(back.max_abs_diff(&p));
        fwd = fwd.max(c.psi_forward(&back)?.max_abs_diff(&q));
    }
    Ok((inv, fwd))
}

fn fiber_error(c: &Coordinates, p: &ShearDecorationPoint) -> Result<f64> {
    let mut worst = 0.0f64;
    for v in 0..c.surface().vertices().len() {
        let l = c.boundary_length(v, &p.shear);
        let kind = c.decoration_kind(v, &p.shear);
        let radii = c.neighborhood_radii(v, &p.shear);
        let r = radius_from_decoration(p.decoration[v], &radii, l, kind)?;
        let d = decoration_param(kind, DecorationCurveLength::new(r, l.abs())?, &radii, l)?;
        worst = worst.max((d - p.decoration[v]).abs());
        let r2 = radius_from_decoration(d, &radii, l, kind)?;
        worst = worst.max((r2 - r).abs() / r);
    }
    Ok(worst)
}

fn roundtrip(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    for sig in roundtrip_signatures() {
        let c = Coordinates::new(fixtures::special_triangulation(&sig)?)?;
        let (inv, fwd) = roundtrip_errors(&c, rng, b.opts.samples)?;
        b.at_most(format!("{}: inverse after forward", sig_name(&sig)), inv, 1e-9);
        b.at_most(format!("{}: forward after inverse", sig_name(&sig)), fwd, 1e-9);
    }
    for (name, c) in bundled() {
        let mut worst = 0.0f64;
        for _ in 0..b.opts.samples {
            worst = worst.max(fiber_error(&c, &ShearDecorationPoint::random(c.surface(), rng, 2.0))?);
        }
        b.at_most(format!("{name}: decoration fiber d -> r -> d"), worst, 1e-12);
    }
    Ok(())
}

fn finite_differences(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut surfaces = bundled();
    let big = SurfaceSignature::new(1, 2, vec![2, 1]);
    surfaces.push(("g1p2b[2,1]", Coordinates::new(fixtures::special_triangulation(&big)?)?));
    for (name, c) in surfaces {
        let p = ShearDecorationPoint::random(c.surface(), rng, 1.5);
        let r = finite_difference_report(&c, &p, 1e-5)?;
        b.at_most(format!("{name}: da/dd at own vertex = 1"), FiniteDifferenceReport::max_abs(&r.lambda_by_own_decoration), 1e-6);
        b.at_most(format!("{name}: da/dd at other vertices = 0"), FiniteDifferenceReport::max_abs(&r.lambda_by_other_decoration), 1e-6);
        b.at_most(format!("{name}: dd/dr (relative)"), FiniteDifferenceReport::max_rel(&r.decoration_by_radius), 1e-6);
        b.at_most(format!("{name}: dx/dr = 0"), FiniteDifferenceReport::max_abs(&r.shear_by_radius), 1e-6);
    }
    Ok(())
}

pub const LIMIT_LENGTHS: [f64; 3] = [1e-1, 1e-2, 1e-3];

fn limit(b: &mut Builder) -> Result<()> {
    let r = equidistant_limit_check(1.0, &LIMIT_LENGTHS)?;
    let growth = r.rows.windows(2).map(|w| w[1].deviation - w[0].deviation).fold(f64::NEG_INFINITY, f64::max);
    b.structural("deviation decreases with l", growth.max(0.0), r.monotone);
    let last = r.rows.last().expect("rows");
    b.at_most(format!("deviation at l = {:e}", last.l), last.deviation, 2e-3);
    Ok(())
}

fn closed_forms(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    for which in [ClosedFormSurface::ThreePuncturedSphere, ClosedFormSurface::OncePuncturedBigon] {
        let c = Coordinates::new(which.surface())?;
        let (mut ex, mut ed) = (0.0f64, 0.0f64);
        for _ in 0..b.opts.samples {
            let p = ShearDecorationPoint::random(c.surface(), rng, 2.0);
            let back = closed_form_inverse(which, &c.psi_forward(&p)?)?;
            ex = ex.max(max_abs_diff(&back.shear, &p.shear));
            ed = ed.max(max_abs_diff(&back.decoration, &p.decoration));
        }
        b.at_most(format!("{}: shears", which.name()), ex, 1e-12);
        if which == ClosedFormSurface::ThreePuncturedSphere {
            b.at_most(format!("{}: decorations", which.name()), ed, 1e-10);
        }
    }
    Ok(())
}

/// Random A-lamination of curves around vertices, weights in `[-3, 6)`.
pub fn random_a_lamination(s: &TriangulatedSurface, rng: &mut ChaCha8Rng) -> Result<Lamination> {
    let mut chosen = Vec::new();
    for v in 0..s.vertices().len() {
        if rng.gen_bool(0.7) {
            chosen.push((CombinatorialCurve::around_vertex(s, v)?, rng.gen_range(-3..=5) as f64 + rng.gen_range(0.0..1.0)));
        }
    }
    Lamination::new(s, Flavor::A, chosen, vec![0; s.vertices().len()])
}

fn compatibility(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let n = b.opts.samples.max(50);
    for (name, c) in bundled() {
        let (mut err, mut len) = (0.0f64, 0.0f64);
        for _ in 0..n {
            let r = compatibility_check(&c, &random_a_lamination(c.surface(), rng)?)?;
            err = err.max(r.max_error);
            len = len.max(r.max_boundary_length);
        }
        b.at_most(format!("{name}: psi(x(L)) = a(L)"), err, 1e-9);
        b.at_most(format!("{name}: boundary lengths vanish"), len, 1e-12);
    }
    Ok(())
}

fn origin(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    for (name, c) in bundled() {
        let mut worst = 0.0f64;
        for _ in 0..b.opts.samples.clamp(1, 20) {
            let p = ShearDecorationPoint::random(c.surface(), rng, 2.0);
            for v in 0..c.surface().vertices().len() {
                let star = develop_vertex(&c, v, &p.shear, 0)?;
                worst = worst.max(origin_deviation(&star, &vertex_lift(&star, 0.0)?));
            }
        }
        b.at_most(format!("{name}: d = 0 passes the highest base point"), worst, 1e-10);
    }
    Ok(())
}

/// Worst `|psi_inverse(psi_forward(p)) - p|` over the shears when the
/// puncture gap coefficients are replaced by `coefficients`.
pub fn gap_coefficient_error(
    c: &Coordinates,
    coefficients: [f64; 2],
    rng: &mut ChaCha8Rng,
    samples: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let p = ShearDecorationPoint::random(c.surface(), rng, 2.0);
        let q: LambdaBoundaryPoint = c.psi_forward(&p)?;
        for e in c.surface().interior_edges() {
            worst = worst.max((c.shear_from_lambda_with_coefficients(&q, e, coefficients)? - p.shear[e]).abs());
        }
    }
    Ok(worst)
}

fn gap_coefficients(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let chosen = [PUNCTURE_GAP_ODD, PUNCTURE_GAP_EVEN];
    // The monogon quad has its puncture at the first and third corners
    // only, so it fixes the first coefficient; the disc with two spikes
    // fixes the second.
    let monogon = Coordinates::new(fixtures::once_punctured_monogon())?;
    let disc = Coordinates::new(fixtures::special_triangulation(&SurfaceSignature::new(0, 1, vec![2]))?)?;
    let cases = [
        ("monogon", &monogon, [[1.0, chosen[1]], [0.0, chosen[1]], [3.0, chosen[1]]]),
        ("g0p1b[2]", &disc, [[chosen[0], 2.0], [chosen[0], 0.0], [chosen[0], 0.5]]),
    ];
    for (name, c, alternatives) in cases {
        let err = gap_coefficient_error(c, chosen, rng, b.opts.samples)?;
        b.at_most(format!("{name}: coefficients ({}, {}) close the roundtrip", chosen[0], chosen[1]), err, 1e-10);
        for alt in alternatives {
            let err = gap_coefficient_error(c, alt, rng, b.opts.samples)?;
            b.structural(format!("{name}: coefficients ({}, {}) do not", alt[0], alt[1]), err, err > 1e-6);
        }
    }
    Ok(())
}

pub fn run_suite(kind: SuiteKind, opts: VerifyOptions) -> Result<Suite> {
    let index = SuiteKind::ALL.iter().position(|&k| k == kind).expect("listed") as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(index));
    let mut b = Builder { opts, checks: Vec::new() };
    match kind {
        SuiteKind::ForwardOracle => forward_oracle(&mut b, &mut rng)?,
        SuiteKind::Roundtrip => roundtrip(&mut b, &mut rng)?,
        SuiteKind::FiniteDifferences => finite_differences(&mut b, &mut rng)?,
        SuiteKind::Limit => limit(&mut b)?,
        SuiteKind::ClosedForms => closed_forms(&mut b, &mut rng)?,
        SuiteKind::Compatibility => compatibility(&mut b, &mut rng)?,
        SuiteKind::Origin => origin(&mut b, &mut rng)?,
        SuiteKind::GapCoefficients => gap_coefficients(&mut b, &mut rng)?,
    }
    Ok(Suite { kind, checks: b.checks })
}

pub fn run(kinds: &[SuiteKind], opts: VerifyOptions) -> Result<VerifyReport> {
    let suites = kinds.iter().map(|&k| run_suite(k, opts)).collect::<Result<Vec<_>>>()?;
    let passed = suites.iter().all(Suite::passed);
    Ok(VerifyReport { schema: SCHEMA, seed: opts.seed, samples: opts.samples, suites, passed })
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("schema {}  seed {}  samples {}\n", self.schema, self.seed, self.samples);
        for s in &self.suites {
            out += &format!("[{}] {}\n", if s.passed() { "PASS" } else { "FAIL" }, s.kind.name());
            for c in &s.checks {
                out += &format!(
                    "  {} {:<58} max error {:.3e}  tol {:.0e}\n",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.name,
                    c.max_error,
                    c.tolerance
                );
            }
        }
        out += if self.passed { "all checks passed\n" } else { "verification failed\n" };
        out
    }
}
