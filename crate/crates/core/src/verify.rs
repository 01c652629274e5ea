//! Verification suites. Every check produces one [`VerificationReport`];
//! reports are handed to a sink as soon as they are computed.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::inner::{
    bergman_inner_mc, bergman_projection_mc, component_inner, hardy_inner_ball_mc, szego_projection_mc,
    Axiom, CoefficientProduct, InnerProductReport, OctoFn, OctonionInnerProduct, WeightedProduct,
};
use crate::monogenic::{
    bergman_kernel, cauchy_integral_mc, cauchy_kernel, cr_apply_fd, mean_value_mc, strip_tail, szego_kernel,
    BergmanBallVariant, Domain, StripSeries, DEFAULT_FD_STEP, DEFAULT_STRIP_TERMS,
};
use crate::octonion::{associator, euclid_inner, identity_residuals, IdentityResiduals, Octonion, IMAGINARY_TABLE};
use crate::quadrature::{CircleRule, DiskRule, McEstimate, Sampler};
use crate::series::{bergman_norm_sq, hardy_norm, para_linearity_residual, OctonionPowerSeries, DEFAULT_TRUNCATION};
use crate::slice::{decompose, orbit_sample, representation_formula, splitting_frame, ImaginaryUnit, SplittingFrame};
use crate::slice_kernels::{
    slice_bergman_ball, slice_bergman_halfspace, slice_bergman_strip, slice_cauchy_kernel, slice_hardy_inner_circle,
    slice_bergman_inner_disk, slice_reproduce, slice_szego_ball, slice_szego_halfspace, slice_szego_halfspace_dual,
    slice_szego_strip, ReproductionForm, SliceRules,
};

/// Relative tolerance of the Monte Carlo reproduction checks.
pub const MC_RELATIVE_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    SliceStructure,
    Monogenic,
    Slice,
    InnerProducts,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Algebra,
        Suite::SliceStructure,
        Suite::Monogenic,
        Suite::Slice,
        Suite::InnerProducts,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::SliceStructure => "slice-structure",
            Suite::Monogenic => "monogenic",
            Suite::Slice => "slice",
            Suite::InnerProducts => "inner-products",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Monte Carlo sample count.
    pub samples: usize,
    /// Degree of the random power series.
    pub trunc: usize,
    /// Replaces the tolerance of every deterministic check when set.
    pub tol: Option<f64>,
    pub strip_width: f64,
    pub strip_terms: usize,
    /// Unit-ball Bergman kernel under test; the other variant is reported
    /// for comparison only.
    pub variant: BergmanBallVariant,
    /// Overrides the circle node count of the slice rules.
    pub circle_nodes: Option<usize>,
    /// Overrides the radial Gauss-Legendre order of the slice disk rule.
    pub disk_order: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            samples: 1_000_000,
            trunc: DEFAULT_TRUNCATION,
            tol: None,
            strip_width: 1.0,
            strip_terms: DEFAULT_STRIP_TERMS,
            variant: BergmanBallVariant::default(),
            circle_nodes: None,
            disk_order: None,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidConfig("--samples must be at least 2".into()));
        }
        if self.trunc == 0 {
            return Err(Error::InvalidConfig("--trunc must be at least 1".into()));
        }
        if let Some(t) = self.tol {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::InvalidConfig(format!("--tol must be a finite nonnegative number, got {t}")));
            }
        }
        Domain::strip(self.strip_width, self.strip_terms)?;
        self.slice_rules()?;
        Ok(())
    }

    /// [`SliceRules::for_degree`] of `trunc` with the node overrides applied.
    pub fn slice_rules(&self) -> Result<SliceRules> {
        let mut rules = SliceRules::for_degree(self.trunc);
        if let Some(m) = self.circle_nodes {
            rules.circle = CircleRule::new(m)?;
        }
        let (order, nodes) = (
            self.disk_order.unwrap_or(rules.disk.radial_order()),
            self.circle_nodes.unwrap_or(rules.disk.angular_nodes()),
        );
        rules.disk = DiskRule::new(order, nodes, true)?;
        Ok(rules)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn sampler(&self, stream: u64) -> Sampler {
        Sampler::new(self.samples, self.seed).with_stream(stream)
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub check: String,
    /// The identity or property being checked.
    pub anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    /// Zero for deterministic checks.
    pub stderr: f64,
    /// Random cases, quadrature nodes or Monte Carlo samples.
    pub samples: usize,
    pub seed: u64,
    pub pass: bool,
    /// Reported for comparison; does not affect the exit status.
    pub informational: bool,
    pub note: Option<String>,
    pub error: Option<String>,
    pub wall_ms: f64,
}

impl VerificationReport {
    /// Single-line JSON. Non-finite residuals are written as `null`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub checks: usize,
    pub failures: usize,
}

impl SuiteSummary {
    pub fn exit_code(&self) -> i32 {
        if self.failures == 0 {
            0
        } else {
            1
        }
    }
}

/// Measured quantity of one check.
struct Outcome {
    residual: f64,
    stderr: f64,
    samples: usize,
    note: Option<String>,
}

impl Outcome {
    fn exact(residual: f64, samples: usize) -> Self {
        Outcome {
            residual,
            stderr: 0.0,
            samples,
            note: None,
        }
    }

    fn mc(est: &McEstimate, truth: Octonion) -> Self {
        Outcome {
            residual: (est.value - truth).norm(),
            stderr: est.stderr,
            samples: est.samples,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

struct Runner<'a> {
    suite: Suite,
    cfg: &'a VerifyConfig,
    sink: &'a mut dyn FnMut(&VerificationReport),
    summary: SuiteSummary,
}

impl Runner<'_> {
    fn tol(&self, default: f64) -> f64 {
        self.cfg.tol.unwrap_or(default)
    }

    fn emit(&mut self, report: VerificationReport) {
        self.summary.checks += 1;
        if !report.pass && !report.informational {
            self.summary.failures += 1;
        }
        (self.sink)(&report);
    }

    fn run(&mut self, check: &str, anchor: &str, tolerance: f64, informational: bool, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f();
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let mut report = VerificationReport {
            suite: self.suite.name().into(),
            check: check.into(),
            anchor: anchor.into(),
            residual: f64::INFINITY,
            tolerance,
            stderr: 0.0,
            samples: 0,
            seed: self.cfg.seed,
            pass: false,
            informational,
            note: None,
            error: None,
            wall_ms,
        };
        match outcome {
            Ok(o) => {
                report.residual = o.residual;
                report.stderr = o.stderr;
                report.samples = o.samples;
                report.note = o.note;
                report.pass = o.residual <= (4.0 * o.stderr).max(tolerance);
            }
            Err(e) => report.error = Some(e.to_string()),
        }
        self.emit(report);
    }

    /// Deterministic check; `--tol` replaces `tolerance`.
    fn check(&mut self, check: &str, anchor: &str, tolerance: f64, f: impl FnOnce() -> Result<Outcome>) {
        let tolerance = self.tol(tolerance);
        self.run(check, anchor, tolerance, false, f)
    }

    /// Check whose bound is not a numerical floor (tail ratios, Monte Carlo
    /// relative error).
    fn check_fixed(&mut self, check: &str, anchor: &str, tolerance: f64, f: impl FnOnce() -> Result<Outcome>) {
        self.run(check, anchor, tolerance, false, f)
    }

    fn axioms(&mut self, report: &InnerProductReport, anchor: &str) {
        for a in &report.axioms {
            let tolerance = self.tol(a.tolerance);
            self.emit(VerificationReport {
                suite: self.suite.name().into(),
                check: format!("{}-{}", report.product, a.axiom.name()),
                anchor: anchor.into(),
                residual: a.residual,
                tolerance,
                stderr: a.stderr,
                samples: report.samples,
                seed: self.cfg.seed,
                pass: a.residual <= (4.0 * a.stderr).max(tolerance),
                informational: false,
                note: None,
                error: None,
                wall_ms: 0.0,
            });
        }
    }
}

/// Run `suite`, streaming every report to `sink`.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig, sink: &mut dyn FnMut(&VerificationReport)) -> Result<SuiteSummary> {
    cfg.validate()?;
    let mut total = SuiteSummary::default();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        let mut runner = Runner {
            suite: s,
            cfg,
            sink: &mut *sink,
            summary: SuiteSummary::default(),
        };
        match s {
            Suite::Algebra => algebra(&mut runner),
            Suite::SliceStructure => slice_structure(&mut runner),
            Suite::Monogenic => monogenic(&mut runner),
            Suite::Slice => slice(&mut runner),
            Suite::InnerProducts => inner_products(&mut runner),
            Suite::All => unreachable!(),
        }
        total.checks += runner.summary.checks;
        total.failures += runner.summary.failures;
    }
    Ok(total)
}

/// Components uniform in `[-1, 1]`.
pub fn uniform_octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    Octonion(std::array::from_fn(|_| rng.random_range(-1.0..=1.0)))
}

fn ball_point(rng: &mut ChaCha8Rng, radius: f64) -> Octonion {
    Sampler::ball_point(rng) * radius
}

fn rel(a: Octonion, b: Octonion) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn max_over<F>(count: usize, mut f: F) -> Result<f64>
where
    F: FnMut() -> Result<f64>,
{
    let mut m: f64 = 0.0;
    for _ in 0..count {
        let r = f()?;
        m = if r.is_nan() { f64::NAN } else { m.max(r) };
    }
    Ok(m)
}

const ALGEBRA_TRIPLES: usize = 10_000;

fn algebra(r: &mut Runner) {
    let cfg = r.cfg;
    for i in 1..8 {
        for j in 1..8 {
            let (s, k) = IMAGINARY_TABLE[i - 1][j - 1];
            let want = Octonion::basis(k as usize) * s as f64;
            r.check(&format!("table-e{i}-e{j}"), "octonion multiplication table", 0.0, || {
                Ok(Outcome::exact((Octonion::basis(i) * Octonion::basis(j) - want).norm(), 1))
            });
        }
    }

    let mut rng = cfg.rng(1);
    let triples: Vec<[Octonion; 3]> = (0..ALGEBRA_TRIPLES)
        .map(|_| std::array::from_fn(|_| uniform_octonion(&mut rng)))
        .collect();
    let mut worst = [0.0f64; 10];
    for [a, b, c] in &triples {
        let res = identity_residuals(*a, *b, *c).normalized(*a, *b, *c).as_array();
        for (w, x) in worst.iter_mut().zip(res) {
            *w = w.max(x);
        }
    }
    for (name, w) in IdentityResiduals::NAMES.iter().zip(worst) {
        r.check(&format!("identity-{name}"), "alternative composition algebra identity", 1e-12, || {
            Ok(Outcome::exact(w, ALGEBRA_TRIPLES))
        });
    }

    r.check("bilinearity", "real bilinearity of the product", 1e-12, || {
        let mut rng = cfg.rng(2);
        let worst = max_over(1000, || {
            let [a, b, c] = std::array::from_fn(|_| uniform_octonion(&mut rng));
            let (s, t) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let lhs = (a * s + b * t) * c;
            let rhs = (a * c) * s + (b * c) * t;
            Ok((lhs - rhs).norm() / (a.norm() * c.norm() + b.norm() * c.norm() + 1.0))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("conjugate-norm", "a conj(a) = |a|^2", 1e-12, || {
        let mut rng = cfg.rng(3);
        let worst = max_over(1000, || {
            let a = uniform_octonion(&mut rng) * 3.0;
            let p = a * a.conj();
            Ok(((p - Octonion::real(a.norm_sqr())).norm()) / (a.norm_sqr() + 1.0))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("inverse", "a inverse(a) = 1", 1e-12, || {
        let mut rng = cfg.rng(4);
        let worst = max_over(1000, || {
            let a = uniform_octonion(&mut rng);
            Ok((a * a.inverse()? - Octonion::ONE).norm())
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("associator-e1-e2-e3", "associator(e1, e2, e3) = 2 e7", 0.0, || {
        let a = associator(Octonion::basis(1), Octonion::basis(2), Octonion::basis(3));
        Ok(Outcome::exact((a - Octonion::basis(7) * 2.0).norm(), 1))
    });

    r.check("power-association", "a (a a) = (a a) a", 1e-12, || {
        let mut rng = cfg.rng(5);
        let worst = max_over(1000, || {
            let a = uniform_octonion(&mut rng);
            Ok(((a * a) * a - a * (a * a)).norm() / (a.norm().powi(3) + 1.0))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });
}

fn random_series(rng: &mut ChaCha8Rng, degree: usize) -> OctonionPowerSeries {
    OctonionPowerSeries::random(rng, degree, 0.8)
}

fn slice_structure(r: &mut Runner) {
    let cfg = r.cfg;
    r.check("decompose-compose", "x = u + I v", 1e-12, || {
        let mut rng = cfg.rng(10);
        let worst = max_over(1000, || {
            let x = uniform_octonion(&mut rng) * 3.0;
            let p = decompose(x);
            let back = decompose(p.compose());
            let d = (p.compose() - x).norm() + (back.u - p.u).abs() + (back.v - p.v).abs()
                + (back.axis.value() - p.axis.value()).norm();
            Ok(d / x.norm().max(1.0))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("orbit-norm", "|u + J v| = |x| on the sphere [x]", 1e-12, || {
        let mut rng = cfg.rng(11);
        let worst = max_over(1000, || {
            let x = uniform_octonion(&mut rng);
            let j = ImaginaryUnit::random(&mut rng);
            let y = orbit_sample(x, j);
            Ok((y.norm() - x.norm()).abs() + (y.re() - x.re()).abs())
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("representation-formula", "representation formula on power series", 1e-12, || {
        let mut rng = cfg.rng(12);
        let worst = max_over(1000, || {
            let f = random_series(&mut rng, cfg.trunc.min(16));
            let (u, v) = (rng.random_range(-0.7..0.7), rng.random_range(0.0..0.7));
            let i = ImaginaryUnit::random(&mut rng);
            let j = ImaginaryUnit::random(&mut rng);
            let got = representation_formula(f.evaluate(j.point(u, v)), f.evaluate(j.point(u, -v)), i, j);
            Ok(rel(got, f.evaluate(i.point(u, v))))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("splitting-frame-gram", "orthonormal splitting frame", 1e-12, || {
        let mut rng = cfg.rng(13);
        let worst = max_over(100, || {
            let i1 = ImaginaryUnit::random(&mut rng);
            let frame = splitting_frame(i1, rng.random());
            Ok(gram_defect(&frame))
        })?;
        Ok(Outcome::exact(worst, 100))
    });

    r.check("split-recompose", "value = F1 + F2 I2 + (G1 + I2 G2) I4", 1e-12, || {
        let mut rng = cfg.rng(14);
        let frame = splitting_frame(ImaginaryUnit::random(&mut rng), cfg.seed);
        let worst = max_over(1000, || {
            let x = uniform_octonion(&mut rng);
            Ok((frame.recompose(&frame.split(x)) - x).norm())
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("split-holomorphic", "splitting into four holomorphic components", 1e-12, || {
        let mut rng = cfg.rng(15);
        let frame = splitting_frame(ImaginaryUnit::random(&mut rng), cfg.seed);
        let f = random_series(&mut rng, cfg.trunc);
        let parts: Vec<[Complex64; 4]> = f.coefficients().iter().map(|a| frame.split(*a).as_array()).collect();
        let worst = max_over(200, || {
            let z = Complex64::from_polar(rng.random_range(0.0..0.9), rng.random_range(0.0..std::f64::consts::TAU));
            let got = frame.split(f.evaluate(frame.i1.embed(z))).as_array();
            let mut zn = Complex64::new(1.0, 0.0);
            let mut want = [Complex64::new(0.0, 0.0); 4];
            for p in &parts {
                for k in 0..4 {
                    want[k] += zn * p[k];
                }
                zn *= z;
            }
            Ok(got.iter().zip(&want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
        })?;
        Ok(Outcome::exact(worst, 200))
    });
}

fn gram_defect(frame: &SplittingFrame) -> f64 {
    let g = frame.gram();
    let mut worst: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((x - want).abs());
        }
    }
    worst
}

/// Random interior pairs for Hermitian checks.
fn interior_point(rng: &mut ChaCha8Rng, dom: &Domain) -> Octonion {
    match *dom {
        Domain::UnitBall => ball_point(rng, 0.9),
        Domain::RightHalfSpace => ball_point(rng, 1.0) + 1.05,
        Domain::Strip { width, .. } => {
            let mut x = ball_point(rng, 1.0);
            x.0[0] = rng.random_range(0.05..0.95) * width;
            x
        }
    }
}

fn hermitian_defect<K>(rng: &mut ChaCha8Rng, dom: &Domain, pairs: usize, k: K) -> Result<f64>
where
    K: Fn(Octonion, Octonion) -> Result<Octonion>,
{
    max_over(pairs, || {
        let x = interior_point(rng, dom);
        let y = interior_point(rng, dom);
        Ok(rel(k(x, y)?.conj(), k(y, x)?))
    })
}

const STRIP_TAIL_TERMS: [usize; 4] = [5, 10, 20, 40];

/// `max t_{k+1} / t_k` over the tails `|P_{N+10} - P_N|` at
/// [`STRIP_TAIL_TERMS`], with the last tail in the note.
fn tail_outcome(tails: &[f64]) -> Outcome {
    let ratio = tails.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    Outcome::exact(ratio, tails.len()).with_note(format!(
        "tails {}",
        tails.iter().map(|t| format!("{t:.3e}")).collect::<Vec<_>>().join(" ")
    ))
}

fn strip_points() -> (Octonion, Octonion) {
    (
        Octonion::new([0.3, 0.1, -0.2, 0.0, 0.4, 0.0, 0.1, 0.2]),
        Octonion::new([0.6, -0.3, 0.0, 0.2, 0.0, 0.1, 0.0, -0.1]),
    )
}

fn monogenic(r: &mut Runner) {
    let cfg = r.cfg;
    let strip = Domain::strip(cfg.strip_width, cfg.strip_terms).expect("validated");
    let variant = cfg.variant;
    let kernels: [(&str, Domain, bool); 6] = [
        ("szego-ball", Domain::UnitBall, false),
        ("szego-halfspace", Domain::RightHalfSpace, false),
        ("szego-strip", strip, false),
        ("bergman-ball", Domain::UnitBall, true),
        ("bergman-halfspace", Domain::RightHalfSpace, true),
        ("bergman-strip", strip, true),
    ];
    for (k, (name, dom, bergman)) in kernels.into_iter().enumerate() {
        r.check(&format!("hermitian-{name}"), "conj(K(x, y)) = K(y, x)", 1e-12, || {
            let mut rng = cfg.rng(20 + k as u64);
            let worst = hermitian_defect(&mut rng, &dom, 1000, |x, y| {
                if bergman {
                    bergman_kernel(&dom, x, y, variant)
                } else {
                    szego_kernel(&dom, x, y)
                }
            })?;
            Ok(Outcome::exact(worst, 1000))
        });
    }

    let fd_cases: [(&str, u64); 3] = [("cauchy", 30), ("szego-ball", 31), ("szego-halfspace", 32)];
    for (name, stream) in fd_cases {
        r.check(&format!("monogenic-{name}"), "D K(., y) = 0 in the first variable", 1e-6, || {
            let mut rng = cfg.rng(stream);
            let worst = max_over(100, || {
                let x = ball_point(&mut rng, 0.5);
                let y = ball_point(&mut rng, 0.5);
                let d = match name {
                    "cauchy" => {
                        let p = Sampler::sphere_point(&mut rng) * 2.0;
                        cr_apply_fd(|x| cauchy_kernel(x - p).expect("pole away"), x, DEFAULT_FD_STEP)
                    }
                    "szego-ball" => cr_apply_fd(
                        |x| szego_kernel(&Domain::UnitBall, x, y).expect("regular"),
                        x,
                        DEFAULT_FD_STEP,
                    ),
                    _ => cr_apply_fd(
                        |x| szego_kernel(&Domain::RightHalfSpace, x, y + 1.0).expect("regular"),
                        x + 1.0,
                        DEFAULT_FD_STEP,
                    ),
                };
                Ok(d.norm())
            })?;
            Ok(Outcome::exact(worst, 100))
        });
    }

    r.check("bergman-halfspace-derivative", "B = -2 d/dx0 S on the half-space", 1e-6, || {
        let mut rng = cfg.rng(33);
        let h = 1e-5;
        let worst = max_over(100, || {
            let x = interior_point(&mut rng, &Domain::RightHalfSpace);
            let y = interior_point(&mut rng, &Domain::RightHalfSpace);
            let s = |x: Octonion| szego_kernel(&Domain::RightHalfSpace, x, y);
            let fd = (s(x + h)? - s(x - h)?) * (-1.0 / h);
            Ok(rel(fd, bergman_kernel(&Domain::RightHalfSpace, x, y, variant)?))
        })?;
        Ok(Outcome::exact(worst, 100))
    });

    r.check("bergman-ball-origin", "B(0, y) = 8", 1e-12, || {
        let mut rng = cfg.rng(34);
        let worst = max_over(100, || {
            let y = ball_point(&mut rng, 0.95);
            let mut m: f64 = 0.0;
            for v in BergmanBallVariant::ALL {
                m = m.max((bergman_kernel(&Domain::UnitBall, Octonion::ZERO, y, v)? - 8.0).norm());
            }
            Ok(m)
        })?;
        Ok(Outcome::exact(worst, 100))
    });

    let (x, y) = strip_points();
    for (name, series) in [("szego", StripSeries::Szego), ("bergman", StripSeries::Bergman)] {
        r.check_fixed(&format!("strip-{name}-tail"), "decreasing tails of the symmetric strip sums", 1.0, || {
            let tails = STRIP_TAIL_TERMS
                .iter()
                .map(|&n| strip_tail(series, 1.0, n, x, y))
                .collect::<Result<Vec<_>>>()?;
            Ok(tail_outcome(&tails))
        });
        r.check(&format!("strip-{name}-limit"), "wide strip kernel tends to the half-space kernel", 1e-6, || {
            let wide = Domain::strip(1e3, DEFAULT_STRIP_TERMS)?;
            let (a, b) = match series {
                StripSeries::Szego => (szego_kernel(&wide, x, y)?, szego_kernel(&Domain::RightHalfSpace, x, y)?),
                StripSeries::Bergman => (
                    bergman_kernel(&wide, x, y, variant)?,
                    bergman_kernel(&Domain::RightHalfSpace, x, y, variant)?,
                ),
            };
            Ok(Outcome::exact((a - b).norm() / b.norm(), 1))
        });
    }

    let e = Octonion::basis;
    let tol = |v: Octonion| MC_RELATIVE_TOLERANCE * v.norm();
    let cauchy_cases: [(&str, Octonion, Octonion); 3] = [
        ("constant-e1-at-0", Octonion::ZERO, e(1)),
        ("constant-1", e(2) * 0.3, Octonion::ZERO),
        ("pole-2e1", e(5) * 0.2, e(1) * 2.0),
    ];
    for (k, (name, at, c)) in cauchy_cases.into_iter().enumerate() {
        let f = move |y: Octonion| match name {
            "pole-2e1" => cauchy_kernel(y - c).expect("pole outside"),
            "constant-1" => Octonion::ONE,
            _ => c,
        };
        let truth = f(at);
        r.check_fixed(&format!("cauchy-integral-{name}"), "Cauchy integral formula on the unit sphere", tol(truth), || {
            Ok(Outcome::mc(&cauchy_integral_mc(f, at, &cfg.sampler(40 + k as u64))?, truth))
        });
    }

    let szego_cases: [(&str, Octonion); 3] = [
        ("constant-1", Octonion::ZERO),
        ("constant-e3", e(1) * 0.4),
        ("pole-1.5", e(2) * 0.3),
    ];
    for (k, (name, at)) in szego_cases.into_iter().enumerate() {
        let f = move |x: Octonion| match name {
            "constant-1" => Octonion::ONE,
            "constant-e3" => e(3),
            _ => cauchy_kernel(x - 1.5).expect("pole outside"),
        };
        let truth = f(at);
        r.check_fixed(&format!("szego-projection-{name}"), "Szegő projection reproduces Hardy functions", tol(truth), || {
            Ok(Outcome::mc(&szego_projection_mc(f, at, &cfg.sampler(50 + k as u64))?, truth))
        });
    }

    let c = Octonion::new([1.0, -2.0, 0.5, 0.0, 3.0, 0.0, -1.0, 0.25]);
    r.check("mean-value-constant", "ball average of a constant", 1e-12, || {
        let a = mean_value_mc(|_| c, e(4) * 0.2, 0.2, &cfg.sampler(60))?;
        let b = mean_value_mc(|_| c, e(4) * 0.2, 0.5, &cfg.sampler(61))?;
        Ok(Outcome::exact((a.value - c).norm().max((b.value - a.value).norm()), a.samples))
    });
    let truth = Octonion::real(-1.0 / 128.0);
    r.check_fixed("mean-value-pole-2", "mean value property of monogenic functions", tol(truth), || {
        let f = |y: Octonion| cauchy_kernel(y - 2.0).expect("pole outside");
        Ok(Outcome::mc(&mean_value_mc(f, Octonion::ZERO, 0.5, &cfg.sampler(62))?, truth))
    });

    let bergman_cases: [(&str, Octonion, Octonion); 3] = [
        ("constant-1-at-0", Octonion::ZERO, Octonion::ONE),
        ("constant-1-at-0.5e1", e(1) * 0.5, Octonion::ONE),
        ("constant-e2-at-0", Octonion::ZERO, e(2)),
    ];
    for (k, (name, at, value)) in bergman_cases.into_iter().enumerate() {
        let mut residuals = Vec::new();
        let estimates: Vec<(BergmanBallVariant, Result<McEstimate>)> = BergmanBallVariant::ALL
            .into_iter()
            .map(|v| (v, bergman_projection_mc(|_| value, at, &cfg.sampler(70 + k as u64), v)))
            .collect();
        for (v, est) in &estimates {
            if let Ok(est) = est {
                residuals.push(format!("{}: {:.4e} (stderr {:.2e})", v.name(), (est.value - value).norm(), est.stderr));
            }
        }
        let note = residuals.join(", ");
        for (v, est) in estimates {
            let check = format!("bergman-projection-{}-{name}", v.name());
            let note = note.clone();
            r.run(&check, "Bergman projection reproduces constants", tol(value), v != variant, move || {
                Ok(Outcome::mc(&est?, value).with_note(note))
            });
        }
    }
}

fn slice(r: &mut Runner) {
    let cfg = r.cfg;
    let ball = Domain::UnitBall;
    r.check("szego-ball-hermitian", "conj(S(y, x)) = S(x, y)", 1e-12, || {
        let mut rng = cfg.rng(100);
        Ok(Outcome::exact(hermitian_defect(&mut rng, &ball, 1000, slice_szego_ball)?, 1000))
    });

    r.check("szego-ball-series", "S(y, x) = sum y^n conj(x)^n", 1e-12, || {
        let mut rng = cfg.rng(101);
        let worst = max_over(1000, || {
            let x = ball_point(&mut rng, 0.7);
            let y = ball_point(&mut rng, 0.7);
            let (mut yn, mut xn, mut sum) = (Octonion::ONE, Octonion::ONE, Octonion::ZERO);
            for _ in 0..60 {
                sum += yn * xn;
                yn = y * yn;
                xn = x.conj() * xn;
            }
            Ok(rel(slice_szego_ball(y, x)?, sum))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("szego-halfspace-dual-forms", "both printed forms of the half-space kernel agree", 1e-12, || {
        let mut rng = cfg.rng(102);
        let worst = max_over(1000, || {
            let x = interior_point(&mut rng, &Domain::RightHalfSpace);
            let y = interior_point(&mut rng, &Domain::RightHalfSpace);
            Ok(rel(slice_szego_halfspace(x, y)?, slice_szego_halfspace_dual(x, y)?))
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("szego-halfspace-hermitian", "conj(k(x, y)) = k(y, x)", 1e-12, || {
        let mut rng = cfg.rng(103);
        Ok(Outcome::exact(
            hermitian_defect(&mut rng, &Domain::RightHalfSpace, 1000, slice_szego_halfspace)?,
            1000,
        ))
    });

    let (w, n) = (cfg.strip_width, cfg.strip_terms);
    r.check("szego-strip-hermitian", "conj(K_T(y, x)) = K_T(x, y)", 1e-12, || {
        let mut rng = cfg.rng(104);
        let dom = Domain::strip(w, n)?;
        Ok(Outcome::exact(
            hermitian_defect(&mut rng, &dom, 1000, |a, b| slice_szego_strip(a, b, w, n))?,
            1000,
        ))
    });

    r.check("on-slice-oracles", "kernels restricted to C_I are the complex kernels", 1e-12, || {
        let mut rng = cfg.rng(105);
        let worst = max_over(1000, || {
            let i = ImaginaryUnit::random(&mut rng);
            let mut c = || Complex64::new(rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6));
            let (zx, zy, zs) = (c(), c(), c() * 3.0);
            let emb = |z: Complex64| i.embed(z);
            let pi = std::f64::consts::PI;
            let mut m: f64 = 0.0;
            m = m.max(rel(slice_szego_ball(emb(zy), emb(zx))?, emb((1.0 - zy * zx.conj()).inv())));
            m = m.max(rel(slice_bergman_ball(emb(zx), emb(zy))?, emb((1.0 - zx * zy.conj()).powi(-2) / pi)));
            let (hx, hy) = (zx + 1.0, zy + 1.0);
            m = m.max(rel(slice_bergman_halfspace(emb(hx), emb(hy))?, emb((hx + hy.conj()).powi(-2) / pi)));
            m = m.max(rel(slice_szego_halfspace(emb(hx), emb(hy))?, emb((hx + hy.conj()).inv() / (2.0 * pi))));
            if (zs - zx).norm() > 0.1 {
                m = m.max(rel(slice_cauchy_kernel(emb(zs), emb(zx))?, emb((zs - zx).inv())));
            }
            Ok(m)
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    let (x, y) = strip_points();
    r.check_fixed("strip-szego-tail", "decreasing tails of the symmetric strip sums", 1.0, || {
        let tails = STRIP_TAIL_TERMS
            .iter()
            .map(|&n| Ok((slice_szego_strip(y, x, 1.0, n + 10)? - slice_szego_strip(y, x, 1.0, n)?).norm()))
            .collect::<Result<Vec<_>>>()?;
        Ok(tail_outcome(&tails))
    });
    r.check_fixed("strip-bergman-tail", "decreasing tails of the symmetric strip sums", 1.0, || {
        let tails = STRIP_TAIL_TERMS
            .iter()
            .map(|&n| Ok((slice_bergman_strip(x, y, 1.0, n + 10)? - slice_bergman_strip(x, y, 1.0, n)?).norm()))
            .collect::<Result<Vec<_>>>()?;
        Ok(tail_outcome(&tails))
    });
    r.check("strip-szego-limit", "wide strip kernel tends to the half-space kernel", 1e-6, || {
        let k = slice_szego_halfspace(y, x)?;
        Ok(Outcome::exact((slice_szego_strip(y, x, 1e3, DEFAULT_STRIP_TERMS)? - k).norm() / k.norm(), 1))
    });
    r.check("strip-bergman-limit", "wide strip kernel tends to the half-space kernel", 1e-6, || {
        let k = slice_bergman_halfspace(x, y)?;
        Ok(Outcome::exact((slice_bergman_strip(x, y, 1e3, DEFAULT_STRIP_TERMS)? - k).norm() / k.norm(), 1))
    });

    let rules = cfg.slice_rules().expect("validated");
    r.check("circle-norm", "[f, f]_I = sum |a_n|^2", 1e-10, || {
        let mut rng = cfg.rng(110);
        let worst = max_over(100, || {
            let degree = rng.random_range(0..=cfg.trunc);
            let f = random_series(&mut rng, degree);
            let i = ImaginaryUnit::random(&mut rng);
            let v = slice_hardy_inner_circle(&f, &f, i, &rules.circle);
            Ok((v - Octonion::real(hardy_norm(&f).powi(2))).norm())
        })?;
        Ok(Outcome::exact(worst, 100))
    });
    r.check("circle-norm-axis-independence", "[f, f]_I = [f, f]_J", 1e-10, || {
        let mut rng = cfg.rng(111);
        let worst = max_over(100, || {
            let degree = rng.random_range(0..=cfg.trunc);
            let f = random_series(&mut rng, degree);
            let i = ImaginaryUnit::random(&mut rng);
            let j = ImaginaryUnit::random(&mut rng);
            let a = slice_hardy_inner_circle(&f, &f, i, &rules.circle);
            Ok((a - slice_hardy_inner_circle(&f, &f, j, &rules.circle)).norm())
        })?;
        Ok(Outcome::exact(worst, 100))
    });
    r.check("disk-norm", "<f, f>_I = sum |a_n|^2 / (n + 1)", 1e-10, || {
        let mut rng = cfg.rng(112);
        let worst = max_over(100, || {
            let degree = rng.random_range(0..=cfg.trunc);
            let f = random_series(&mut rng, degree);
            let i = ImaginaryUnit::random(&mut rng);
            let v = slice_bergman_inner_disk(&f, &f, i, &rules.disk);
            Ok((v - Octonion::real(bergman_norm_sq(&f))).norm())
        })?;
        Ok(Outcome::exact(worst, 100))
    });

    let repro: [(&str, ReproductionForm, f64, u64); 3] = [
        ("coefficient", ReproductionForm::Coefficient, 1e-12, 113),
        ("circle", ReproductionForm::Circle, 1e-10, 114),
        ("disk", ReproductionForm::Disk, 1e-8, 115),
    ];
    for (name, form, tol, stream) in repro {
        r.check(&format!("reproduce-{name}"), "reproducing property of the slice kernels", tol, || {
            let mut rng = cfg.rng(stream);
            let e1 = ImaginaryUnit::basis(1)?;
            let degree = cfg.trunc.min(10);
            let mut worst: f64 = 0.0;
            let mut fixed = vec![Octonion::basis(6) * 0.4, Octonion::real(0.5), Octonion::real(0.3) + Octonion::basis(1) * 0.2];
            fixed.extend((0..20).map(|_| ball_point(&mut rng, 0.5)));
            for x in fixed {
                let f = random_series(&mut rng, degree);
                worst = worst.max(rel(slice_reproduce(form, &f, x, e1, &rules)?, f.evaluate(x)));
            }
            for n in 0..=degree {
                let f = OctonionPowerSeries::monomial(n, uniform_octonion(&mut rng));
                let x = Octonion::real(0.5);
                worst = worst.max(rel(slice_reproduce(form, &f, x, e1, &rules)?, f.evaluate(x)));
            }
            Ok(Outcome::exact(worst, 24 + degree))
        });
    }
}

fn inner_products(r: &mut Runner) {
    let cfg = r.cfg;
    r.check("weighted-real-part", "<n f, n g>_0 = <f, g>_0 for |n| = 1", 1e-12, || {
        let mut rng = cfg.rng(200);
        let worst = max_over(10_000, || {
            let n = Sampler::sphere_point(&mut rng);
            let f = uniform_octonion(&mut rng);
            let g = uniform_octonion(&mut rng);
            Ok((euclid_inner(n * f, n * g) - euclid_inner(f, g)).abs())
        })?;
        Ok(Outcome::exact(worst, 10_000))
    });

    r.check("component-reassembly", "sum_i <f, g>_i e_i = (f, g)", 0.0, || {
        let mut rng = cfg.rng(201);
        let worst = max_over(1000, || {
            let v = uniform_octonion(&mut rng);
            let back: Octonion = (0..8)
                .map(|i| Ok(Octonion::basis(i) * component_inner(v, i)?))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            Ok((back - v).norm())
        })?;
        Ok(Outcome::exact(worst, 1000))
    });

    r.check("full-linearity-witness", "[f e3, g] - [f, g] e3 = -2 e7 for f = e1, g = e2", 0.0, || {
        let f = OctonionPowerSeries::constant(Octonion::basis(1));
        let g = OctonionPowerSeries::constant(Octonion::basis(2));
        let p = para_linearity_residual(&f, &g, Octonion::basis(3));
        Ok(Outcome::exact((p.full_gap + Octonion::basis(7) * 2.0).norm() + p.residual, 1))
    });

    r.check("normalization", "(1, 1) = 1 on S^7 and 1/8 on B_8", 1e-12, || {
        let one = OctoFn::constant(Octonion::ONE);
        let s = cfg.sampler(202);
        let a = hardy_inner_ball_mc(&one, &one, &s)?.value;
        let b = bergman_inner_mc(&Domain::UnitBall, &one, &one, &s)?.value;
        Ok(Outcome::exact((a - 1.0).norm().max((b - 0.125).norm()), cfg.samples))
    });

    let anchor = "octonionic Hilbert space axioms";
    let mut rng = cfg.rng(210);
    let trials = 10;
    match worst_axioms(trials, || {
        let [f, g, h] = std::array::from_fn(|_| random_series(&mut rng, cfg.trunc));
        let alpha = uniform_octonion(&mut rng);
        CoefficientProduct.axiom_suite(&f, &g, &h, alpha, rng.random_range(-2.0..2.0))
    }) {
        Ok(report) => r.axioms(&report, anchor),
        Err(e) => r.check("coefficient-axioms", anchor, 0.0, || Err(e)),
    }

    let rules = cfg.slice_rules().expect("validated");
    for (k, disk) in [false, true].into_iter().enumerate() {
        let mut rng = cfg.rng(211 + k as u64);
        let result = worst_axioms(trials, || {
            let axis = ImaginaryUnit::random(&mut rng);
            let ip = if disk {
                WeightedProduct::disk(axis, rules.disk.clone())
            } else {
                WeightedProduct::circle(axis, rules.circle)
            };
            let [f, g, h] = std::array::from_fn(|_| OctoFn::from_series(&random_series(&mut rng, cfg.trunc)));
            let alpha = uniform_octonion(&mut rng);
            ip.axiom_suite(&f, &g, &h, alpha, rng.random_range(-2.0..2.0))
        });
        match result {
            Ok(report) => r.axioms(&report, anchor),
            Err(e) => r.check(if disk { "slice-disk-axioms" } else { "slice-circle-axioms" }, anchor, 0.0, || Err(e)),
        }
    }

    let mut rng = cfg.rng(213);
    let c1 = uniform_octonion(&mut rng);
    let c2 = uniform_octonion(&mut rng);
    let p1 = Octonion::basis(1) * 1.5;
    let p2 = Octonion::basis(3) * 2.0;
    let f = OctoFn::new(move |x| c1 + cauchy_kernel(x - p1).expect("pole outside"));
    let g = OctoFn::constant(c2);
    let h = OctoFn::new(move |x| cauchy_kernel(x - p2).expect("pole outside"));
    let alpha = uniform_octonion(&mut rng);
    for (k, ip) in [WeightedProduct::sphere(cfg.sampler(214)), WeightedProduct::ball(cfg.sampler(215))]
        .into_iter()
        .enumerate()
    {
        match ip.axiom_suite(&f, &g, &h, alpha, 1.7) {
            Ok(report) => r.axioms(&report, anchor),
            Err(e) => r.check(if k == 0 { "sphere-mc-axioms" } else { "ball-mc-axioms" }, anchor, 0.0, || Err(e)),
        }
    }
}

/// Runs the axiom suite `trials` times and keeps the largest residual of
/// each axiom.
fn worst_axioms<F>(trials: usize, mut suite: F) -> Result<InnerProductReport>
where
    F: FnMut() -> Result<InnerProductReport>,
{
    let mut worst = suite()?;
    for _ in 1..trials {
        let next = suite()?;
        for a in Axiom::ALL {
            let (Some(w), Some(n)) = (
                worst.axioms.iter_mut().find(|c| c.axiom == a),
                next.axioms.iter().find(|c| c.axiom == a),
            ) else {
                continue;
            };
            if n.residual > w.residual || n.residual.is_nan() {
                *w = *n;
            }
        }
    }
    worst.samples *= trials;
    Ok(worst)
}
