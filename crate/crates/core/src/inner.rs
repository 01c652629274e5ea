//! Octonion-valued inner products, their component projections, the Hilbert
//! axiom suite and the kernel projections on the unit ball.
//!
//! Each product is a sum or integral of the pointwise density
//! `conj(w g) (w f)` for a unit weight field `w`: the normal on `S^7`,
//! `omega` in `B_8`, the tangent `I z` on a slice circle, and `1` for the
//! slice disk and the coefficient sum. Axiom residuals are integrated as one
//! pointwise combination, so Monte Carlo residuals carry their own standard
//! error.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monogenic::{bergman_kernel, szego_kernel, weight_factor, BergmanBallVariant, Domain};
use crate::octonion::Octonion;
use crate::quadrature::{
    try_integrate_circle, try_integrate_disk, try_mc_ball8, try_mc_sphere7, CircleRule, DiskRule,
    McEstimate, Sampler,
};
use crate::series::OctonionPowerSeries;
use crate::slice::ImaginaryUnit;

/// `3 / pi^4`, the normalization making `(1, 1) = 1` on `S^7`.
pub const SPHERE_NORMALIZATION: f64 = 3.0 / (PI * PI * PI * PI);

/// Octonion-valued function used as an element of the integral products.
#[derive(Clone)]
pub struct OctoFn(Arc<dyn Fn(Octonion) -> Octonion + Send + Sync>);

impl OctoFn {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(Octonion) -> Octonion + Send + Sync + 'static,
    {
        OctoFn(Arc::new(f))
    }

    pub fn constant(c: Octonion) -> Self {
        OctoFn::new(move |_| c)
    }

    pub fn from_series(f: &OctonionPowerSeries) -> Self {
        let f = f.clone();
        OctoFn::new(move |x| f.evaluate(x))
    }

    pub fn eval(&self, x: Octonion) -> Octonion {
        (self.0)(x)
    }
}

impl fmt::Debug for OctoFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("OctoFn")
    }
}

/// `conj(w g) (w f)`.
fn density(w: Octonion, f: Octonion, g: Octonion) -> Octonion {
    (w * g).conj() * (w * f)
}

/// The six conditions of an octonionic Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    /// `(f + h, g) = (f, g) + (h, g)`.
    Additivity,
    /// `(g, f) = conj((f, g))`.
    Hermitian,
    /// `(f, f)` real and nonnegative.
    Positivity,
    /// `(f r, g) = (f, g) r` for real `r`.
    RealHomogeneity,
    /// `(f a, f) = (f, f) a`.
    SelfRightLinearity,
    /// `Re (f a, g) = Re ((f, g) a)`.
    ParaLinearity,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Additivity,
        Axiom::Hermitian,
        Axiom::Positivity,
        Axiom::RealHomogeneity,
        Axiom::SelfRightLinearity,
        Axiom::ParaLinearity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Additivity => "additivity",
            Axiom::Hermitian => "hermitian",
            Axiom::Positivity => "positivity",
            Axiom::RealHomogeneity => "real-homogeneity",
            Axiom::SelfRightLinearity => "self-right-linearity",
            Axiom::ParaLinearity => "para-linearity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub residual: f64,
    /// Zero for deterministic products.
    pub stderr: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl AxiomCheck {
    fn new(axiom: Axiom, residual: f64, stderr: f64, tolerance: f64) -> Self {
        AxiomCheck {
            axiom,
            residual,
            stderr,
            tolerance,
            pass: residual <= (4.0 * stderr).max(tolerance),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InnerProductReport {
    pub product: String,
    pub value: Octonion,
    pub stderr: f64,
    pub samples: usize,
    pub axioms: Vec<AxiomCheck>,
}

impl InnerProductReport {
    fn from_estimate(product: String, est: McEstimate) -> Self {
        InnerProductReport {
            product,
            value: est.value,
            stderr: est.stderr,
            samples: est.samples,
            axioms: Vec::new(),
        }
    }

    pub fn axiom(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.axioms.iter().find(|c| c.axiom == axiom)
    }

    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|c| c.pass)
    }
}

/// Pointwise integrand of three element values and the weight.
pub type Density<'a> = dyn Fn(Octonion, [Octonion; 3]) -> Octonion + Sync + 'a;

/// An octonion-valued inner product written as a sum or integral of a
/// pointwise density.
pub trait OctonionInnerProduct {
    type Element;

    fn name(&self) -> String;

    /// Tolerance for deterministic residuals; Monte Carlo products also
    /// accept residuals within four standard errors.
    fn tolerance(&self) -> f64;

    /// `sum/int rho(w(p), [f(p), g(p), h(p)])` with the product's
    /// normalization.
    fn integrate(
        &self,
        f: &Self::Element,
        g: &Self::Element,
        h: &Self::Element,
        rho: &Density<'_>,
    ) -> Result<McEstimate>;

    fn inner(&self, f: &Self::Element, g: &Self::Element) -> Result<McEstimate> {
        self.integrate(f, g, g, &|w, [a, b, _]| density(w, a, b))
    }

    /// Residuals of all six axioms for the elements `f, g, h`, the octonion
    /// `alpha` and the real `r`. Right multiplication acts on the values of
    /// the elements.
    fn axiom_suite(
        &self,
        f: &Self::Element,
        g: &Self::Element,
        h: &Self::Element,
        alpha: Octonion,
        r: f64,
    ) -> Result<InnerProductReport> {
        let tol = self.tolerance();
        let mut report = InnerProductReport::from_estimate(self.name(), self.inner(f, g)?);
        let norm = |axiom, est: McEstimate| AxiomCheck::new(axiom, est.value.norm(), est.stderr, tol);

        let est = self.integrate(f, g, h, &|w, [a, b, c]| {
            density(w, a + c, b) - density(w, a, b) - density(w, c, b)
        })?;
        report.axioms.push(norm(Axiom::Additivity, est));

        let est = self.integrate(f, g, h, &|w, [a, b, _]| density(w, a, b).conj() - density(w, b, a))?;
        report.axioms.push(norm(Axiom::Hermitian, est));

        let est = self.integrate(f, g, h, &|w, [a, _, _]| density(w, a, a))?;
        let residual = est.value.im().norm() + (-est.value.re()).max(0.0);
        report
            .axioms
            .push(AxiomCheck::new(Axiom::Positivity, residual, est.stderr, tol));

        let est = self.integrate(f, g, h, &|w, [a, b, _]| density(w, a * r, b) - density(w, a, b) * r)?;
        report.axioms.push(norm(Axiom::RealHomogeneity, est));

        let est = self.integrate(f, g, h, &|w, [a, _, _]| {
            density(w, a * alpha, a) - density(w, a, a) * alpha
        })?;
        report.axioms.push(norm(Axiom::SelfRightLinearity, est));

        let est = self.integrate(f, g, h, &|w, [a, b, _]| {
            Octonion::real(density(w, a * alpha, b).re() - (density(w, a, b) * alpha).re())
        })?;
        report.axioms.push(norm(Axiom::ParaLinearity, est));

        Ok(report)
    }
}

/// `[f, g] = sum_n conj(b_n) a_n` on power series.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoefficientProduct;

impl OctonionInnerProduct for CoefficientProduct {
    type Element = OctonionPowerSeries;

    fn name(&self) -> String {
        "coefficient".into()
    }

    fn tolerance(&self) -> f64 {
        1e-12
    }

    fn integrate(
        &self,
        f: &OctonionPowerSeries,
        g: &OctonionPowerSeries,
        h: &OctonionPowerSeries,
        rho: &Density<'_>,
    ) -> Result<McEstimate> {
        let n = f.degree().max(g.degree()).max(h.degree()) + 1;
        let value = (0..n)
            .map(|k| rho(Octonion::ONE, [f.coefficient(k), g.coefficient(k), h.coefficient(k)]))
            .sum();
        Ok(deterministic(value, n))
    }
}

fn deterministic(value: Octonion, samples: usize) -> McEstimate {
    McEstimate {
        value,
        stderr: 0.0,
        component_stderr: [0.0; 8],
        samples,
    }
}

/// Where a [`WeightedProduct`] integrates and with which weight.
#[derive(Debug, Clone, PartialEq)]
pub enum Integrator {
    /// `(1 / 2 pi) int conj(t g) (t f) d theta` on the unit circle of `C_I`,
    /// tangent `t = I z`.
    SliceCircle { axis: ImaginaryUnit, rule: CircleRule },
    /// `int conj(g) f d sigma` on the unit disk of `C_I`, normalized area.
    SliceDisk { axis: ImaginaryUnit, rule: DiskRule },
    /// `(3 / pi^4) int_{S^7} conj(x g) (x f) |d sigma|`.
    Sphere(Sampler),
    /// `(3 / pi^4) int_{B_8} conj(omega g) (omega f) dV`.
    Ball(Sampler),
}

/// Inner product on [`OctoFn`] elements defined by an [`Integrator`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedProduct {
    pub integrator: Integrator,
    pub tolerance: f64,
}

impl WeightedProduct {
    pub fn circle(axis: ImaginaryUnit, rule: CircleRule) -> Self {
        WeightedProduct {
            integrator: Integrator::SliceCircle { axis, rule },
            tolerance: 1e-10,
        }
    }

    pub fn disk(axis: ImaginaryUnit, rule: DiskRule) -> Self {
        WeightedProduct {
            integrator: Integrator::SliceDisk { axis, rule },
            tolerance: 1e-10,
        }
    }

    pub fn sphere(sampler: Sampler) -> Self {
        WeightedProduct {
            integrator: Integrator::Sphere(sampler),
            tolerance: 1e-12,
        }
    }

    pub fn ball(sampler: Sampler) -> Self {
        WeightedProduct {
            integrator: Integrator::Ball(sampler),
            tolerance: 1e-12,
        }
    }
}

impl OctonionInnerProduct for WeightedProduct {
    type Element = OctoFn;

    fn name(&self) -> String {
        match &self.integrator {
            Integrator::SliceCircle { .. } => "slice-circle".into(),
            Integrator::SliceDisk { .. } => "slice-disk".into(),
            Integrator::Sphere(_) => "sphere-mc".into(),
            Integrator::Ball(_) => "ball-mc".into(),
        }
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }

    fn integrate(&self, f: &OctoFn, g: &OctoFn, h: &OctoFn, rho: &Density<'_>) -> Result<McEstimate> {
        let at = |w: Octonion, x: Octonion| rho(w, [f.eval(x), g.eval(x), h.eval(x)]);
        match &self.integrator {
            Integrator::SliceCircle { axis, rule } => {
                let v = try_integrate_circle(rule, |t| {
                    let z = axis.point(t.cos(), t.sin());
                    Ok(at(axis.value() * z, z))
                })?;
                Ok(deterministic(v / (2.0 * PI), rule.len()))
            }
            Integrator::SliceDisk { axis, rule } => {
                let v = try_integrate_disk(rule, |r, t| Ok(at(Octonion::ONE, axis.point(r * t.cos(), r * t.sin()))))?;
                let v = if rule.is_normalized() { v } else { v / PI };
                Ok(deterministic(v, rule.radial_order() * rule.angular_nodes()))
            }
            Integrator::Sphere(s) => Ok(try_mc_sphere7(s, |x| Ok(at(x, x)))?.scaled(SPHERE_NORMALIZATION)),
            Integrator::Ball(s) => {
                let est = try_mc_ball8(s, Octonion::ZERO, 1.0, |x| {
                    Ok(at(weight_factor(&Domain::UnitBall, x)?, x))
                })?;
                Ok(est.scaled(SPHERE_NORMALIZATION))
            }
        }
    }
}

/// `(f, g)_{S^7}`, the weighted Hardy product on the unit sphere.
pub fn hardy_inner_ball_mc(f: &OctoFn, g: &OctoFn, sampler: &Sampler) -> Result<InnerProductReport> {
    let ip = WeightedProduct::sphere(*sampler);
    Ok(InnerProductReport::from_estimate(ip.name(), ip.inner(f, g)?))
}

/// `(f, g)_Omega`, the weighted Bergman product. Only the unit ball has a
/// bounded Monte Carlo domain.
pub fn bergman_inner_mc(dom: &Domain, f: &OctoFn, g: &OctoFn, sampler: &Sampler) -> Result<InnerProductReport> {
    if *dom != Domain::UnitBall {
        return Err(Error::UnsupportedDomain {
            operation: "Monte Carlo Bergman inner product",
            domain: dom.to_string(),
        });
    }
    let ip = WeightedProduct::ball(*sampler);
    Ok(InnerProductReport::from_estimate(ip.name(), ip.inner(f, g)?))
}

/// The unit-ball Bergman product with a caller-supplied weight field.
pub fn bergman_inner_mc_with_weight<W>(
    f: &OctoFn,
    g: &OctoFn,
    weight: W,
    sampler: &Sampler,
) -> Result<InnerProductReport>
where
    W: Fn(Octonion) -> Octonion + Sync,
{
    let est = try_mc_ball8(sampler, Octonion::ZERO, 1.0, |x| Ok(density(weight(x), f.eval(x), g.eval(x))))?;
    Ok(InnerProductReport::from_estimate(
        "ball-mc".into(),
        est.scaled(SPHERE_NORMALIZATION),
    ))
}

/// `<f, g>_i`, the `i`-th real component of an octonion inner product value.
pub fn component_inner(value: Octonion, i: usize) -> Result<f64> {
    if i < 8 {
        Ok(value.0[i])
    } else {
        Err(Error::IndexOutOfRange(i))
    }
}

/// `(f, S(., y))_{S^7}`, which returns `f(y)` for `f` in the Hardy space of
/// the unit ball.
pub fn szego_projection_mc<F>(f: F, y: Octonion, sampler: &Sampler) -> Result<McEstimate>
where
    F: Fn(Octonion) -> Octonion + Sync,
{
    let dom = Domain::UnitBall;
    if !dom.contains(y) {
        return Err(Error::OutsideDomain {
            domain: dom.to_string(),
            point: y.to_string(),
        });
    }
    let est = try_mc_sphere7(sampler, |x| Ok(density(x, f(x), szego_kernel(&dom, x, y)?)))?;
    Ok(est.scaled(SPHERE_NORMALIZATION))
}

/// `(f, B(., y))_{B_8}`, which returns `f(y)` for `f` in the Bergman space
/// of the unit ball when `variant` is the reproducing kernel.
pub fn bergman_projection_mc<F>(
    f: F,
    y: Octonion,
    sampler: &Sampler,
    variant: BergmanBallVariant,
) -> Result<McEstimate>
where
    F: Fn(Octonion) -> Octonion + Sync,
{
    let dom = Domain::UnitBall;
    if !dom.contains(y) {
        return Err(Error::OutsideDomain {
            domain: dom.to_string(),
            point: y.to_string(),
        });
    }
    let est = try_mc_ball8(sampler, Octonion::ZERO, 1.0, |x| {
        let w = weight_factor(&dom, x)?;
        Ok(density(w, f(x), bergman_kernel(&dom, x, y, variant)?))
    })?;
    Ok(est.scaled(SPHERE_NORMALIZATION))
}
