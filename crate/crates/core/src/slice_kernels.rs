//! Slice monogenic Cauchy, Szegő and Bergman kernels, the circle and disk
//! inner products on a slice `C_I`, and the three reproduction routes.
//!
//! Every kernel here is slice monogenic in its first argument.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::monogenic::{Domain, KERNEL_SINGULAR_NORM};
use crate::octonion::Octonion;
use crate::quadrature::{integrate_circle, integrate_disk, try_integrate_circle, try_integrate_disk, CircleRule, DiskRule};
use crate::series::{hardy_inner_coeff, OctonionPowerSeries};
use crate::slice::{decompose, representation_formula, ImaginaryUnit};

/// Points farther than this (relative) from `C_I` are treated as off-slice.
pub const ON_SLICE_TOLERANCE: f64 = 1e-12;

fn checked_inverse(a: Octonion, set: &'static str) -> Result<Octonion> {
    let n = a.norm();
    if n > KERNEL_SINGULAR_NORM {
        Ok(a.conj() / (n * n))
    } else {
        Err(Error::Singularity { set, magnitude: n })
    }
}

/// `S_L^{-1}(s, x) = -(x^2 - 2 Re(s) x + |s|^2)^{-1} (x - conj(s))`.
pub fn slice_cauchy_kernel(s: Octonion, x: Octonion) -> Result<Octonion> {
    let q = x * x - x * (2.0 * s.re()) + s.norm_sqr();
    Ok(-(checked_inverse(q, "x in [s]")? * (x - s.conj())))
}

/// `S(y, x) = (1 - 2 Re(x) y + |x|^2 y^2)^{-1} (1 - y x)`, the sum of
/// `y^n conj(x)^n`.
pub fn slice_szego_ball(y: Octonion, x: Octonion) -> Result<Octonion> {
    let q = 1.0 - y * (2.0 * x.re()) + (y * y) * x.norm_sqr();
    Ok(checked_inverse(q, "x in [y^-1]")? * (1.0 - y * x))
}

/// `k(x, y) = (1 / 2 pi) (conj(x) + conj(y)) (|x|^2 + 2 Re(x) conj(y) + conj(y)^2)^{-1}`.
pub fn slice_szego_halfspace(x: Octonion, y: Octonion) -> Result<Octonion> {
    let yb = y.conj();
    let q = yb * (2.0 * x.re()) + yb * yb + x.norm_sqr();
    Ok((x.conj() + yb) * checked_inverse(q, "x in [-conj(y)]")? / (2.0 * PI))
}

/// The second printed form of `k`:
/// `(1 / 2 pi) (|y|^2 + 2 Re(y) x + x^2)^{-1} (x + y)`.
pub fn slice_szego_halfspace_dual(x: Octonion, y: Octonion) -> Result<Octonion> {
    let q = x * (2.0 * y.re()) + x * x + y.norm_sqr();
    Ok(checked_inverse(q, "x in [-conj(y)]")? * (x + y) / (2.0 * PI))
}

fn alternating_pairs<F>(terms: usize, term: F) -> Result<Octonion>
where
    F: Fn(i64) -> Result<Octonion>,
{
    let mut tail = Octonion::ZERO;
    for n in (1..=terms as i64).rev() {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        tail += (term(n)? + term(-n)?) * s;
    }
    Ok(term(0)? + tail)
}

/// `K_T(y, x) = sum_n (-1)^n k(y + 2 d n, x)` over `|n| <= terms`.
pub fn slice_szego_strip(y: Octonion, x: Octonion, width: f64, terms: usize) -> Result<Octonion> {
    alternating_pairs(terms, |n| slice_szego_halfspace(y + 2.0 * width * n as f64, x))
}

/// `(1 / pi) (1 - 2 conj(x) conj(y) + conj(x)^2 conj(y)^2)
/// (1 - 2 Re(x) conj(y) + |x|^2 conj(y)^2)^{-2}`.
pub fn slice_bergman_ball(x: Octonion, y: Octonion) -> Result<Octonion> {
    let (xb, yb) = (x.conj(), y.conj());
    let p = xb * yb;
    let num = 1.0 - p * 2.0 + (xb * xb) * (yb * yb);
    let q = 1.0 - yb * (2.0 * x.re()) + (yb * yb) * x.norm_sqr();
    let inv = checked_inverse(q, "x in [conj(y)^-1]")?;
    Ok(num * (inv * inv) / PI)
}

/// `(1 / pi) (x^2 + 2 Re(y) x + |y|^2)^{-2} (x^2 + 2 x y + y^2)`.
pub fn slice_bergman_halfspace(x: Octonion, y: Octonion) -> Result<Octonion> {
    let q = x * x + x * (2.0 * y.re()) + y.norm_sqr();
    let inv = checked_inverse(q, "x in [-conj(y)]")?;
    let num = x * x + (x * y) * 2.0 + y * y;
    Ok((inv * inv) * num / PI)
}

/// `sum_n B_H(x, y + 2 d n)` over `|n| <= terms`; no alternating sign.
pub fn slice_bergman_strip(x: Octonion, y: Octonion, width: f64, terms: usize) -> Result<Octonion> {
    let mut tail = Octonion::ZERO;
    for n in (1..=terms as i64).rev() {
        let s = 2.0 * width * n as f64;
        tail += slice_bergman_halfspace(x, y + s)? + slice_bergman_halfspace(x, y - s)?;
    }
    Ok(slice_bergman_halfspace(x, y)? + tail)
}

/// Slice Szegő kernel of `dom`, slice monogenic in `a`.
pub fn slice_szego(dom: &Domain, a: Octonion, b: Octonion) -> Result<Octonion> {
    match *dom {
        Domain::UnitBall => slice_szego_ball(a, b),
        Domain::RightHalfSpace => slice_szego_halfspace(a, b),
        Domain::Strip { width, terms } => slice_szego_strip(a, b, width, terms),
    }
}

/// Slice Bergman kernel of `dom`, slice monogenic in `a`.
pub fn slice_bergman(dom: &Domain, a: Octonion, b: Octonion) -> Result<Octonion> {
    match *dom {
        Domain::UnitBall => slice_bergman_ball(a, b),
        Domain::RightHalfSpace => slice_bergman_halfspace(a, b),
        Domain::Strip { width, terms } => slice_bergman_strip(a, b, width, terms),
    }
}

/// Circle and disk rules sized for series of a given degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceRules {
    pub circle: CircleRule,
    pub disk: DiskRule,
}

impl SliceRules {
    /// `M = max(4N + 1, 64)` circle nodes and radial order `max(2N + 2, 32)`.
    /// Products of degree-`N` series are integrated exactly; the floors keep
    /// the aliasing error of the non-polynomial reproducing kernels small.
    pub fn for_degree(degree: usize) -> Self {
        let m = (4 * degree + 1).max(64);
        let r = (2 * degree + 2).max(32);
        SliceRules {
            circle: CircleRule::new(m).expect("positive node count"),
            disk: DiskRule::new(r, m, true).expect("positive order"),
        }
    }
}

/// `[f, g]_I = (1 / 2 pi) int conj(I z g(z)) (I z f(z)) d theta` over
/// `z = e^{I theta}`.
pub fn slice_hardy_inner_circle(
    f: &OctonionPowerSeries,
    g: &OctonionPowerSeries,
    i: ImaginaryUnit,
    rule: &CircleRule,
) -> Octonion {
    integrate_circle(rule, |t| {
        let tz = i.value() * i.point(t.cos(), t.sin());
        let z = i.point(t.cos(), t.sin());
        (tz * g.evaluate(z)).conj() * (tz * f.evaluate(z))
    }) / (2.0 * PI)
}

/// `<f, g>_I = int conj(g) f d sigma` over the unit disk of `C_I` with the
/// normalized area measure.
pub fn slice_bergman_inner_disk(
    f: &OctonionPowerSeries,
    g: &OctonionPowerSeries,
    i: ImaginaryUnit,
    rule: &DiskRule,
) -> Octonion {
    let v = integrate_disk(rule, |r, t| {
        let z = i.point(r * t.cos(), r * t.sin());
        g.evaluate(z).conj() * f.evaluate(z)
    });
    if rule.is_normalized() {
        v
    } else {
        v / PI
    }
}

/// Route used by [`slice_reproduce`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproductionForm {
    /// `[f, S(., x)]` with the coefficient product.
    Coefficient,
    /// `(1 / 2 pi) int S(x, y) f(y) d theta` on the unit circle of `C_I`.
    Circle,
    /// `int B(x, y) f(y) dA(y)` on the unit disk of `C_I`.
    Disk,
}

fn on_slice(i: ImaginaryUnit, x: Octonion) -> bool {
    i.distance_to_plane(x) <= ON_SLICE_TOLERANCE * x.norm().max(1.0)
}

/// Reproduce `f(x)` through the chosen route. Quadrature routes integrate on
/// `C_I`; for `x` off that slice the two values at `u +- v I` are combined
/// with the representation formula.
pub fn slice_reproduce(
    form: ReproductionForm,
    f: &OctonionPowerSeries,
    x: Octonion,
    i: ImaginaryUnit,
    rules: &SliceRules,
) -> Result<Octonion> {
    if x.norm() >= 1.0 {
        return Err(Error::OutsideDomain {
            domain: Domain::UnitBall.to_string(),
            point: x.to_string(),
        });
    }
    match form {
        ReproductionForm::Coefficient => {
            let xb = x.conj();
            let mut p = Octonion::ONE;
            let kernel: Vec<Octonion> = (0..=f.degree())
                .map(|n| {
                    if n > 0 {
                        p = xb * p;
                    }
                    p
                })
                .collect();
            Ok(hardy_inner_coeff(f, &OctonionPowerSeries::new(kernel)))
        }
        ReproductionForm::Circle | ReproductionForm::Disk => {
            if on_slice(i, x) {
                return reproduce_on_slice(form, f, x, i, rules);
            }
            let sp = decompose(x);
            let plus = reproduce_on_slice(form, f, i.point(sp.u, sp.v), i, rules)?;
            let minus = reproduce_on_slice(form, f, i.point(sp.u, -sp.v), i, rules)?;
            Ok(representation_formula(plus, minus, sp.axis, i))
        }
    }
}

fn reproduce_on_slice(
    form: ReproductionForm,
    f: &OctonionPowerSeries,
    x: Octonion,
    i: ImaginaryUnit,
    rules: &SliceRules,
) -> Result<Octonion> {
    match form {
        ReproductionForm::Circle => {
            let v = try_integrate_circle(&rules.circle, |t| {
                let y = i.point(t.cos(), t.sin());
                Ok(slice_szego_ball(x, y)? * f.evaluate(y))
            })?;
            Ok(v / (2.0 * PI))
        }
        ReproductionForm::Disk => {
            let v = try_integrate_disk(&rules.disk, |r, t| {
                let y = i.point(r * t.cos(), r * t.sin());
                Ok(slice_bergman_ball(x, y)? * f.evaluate(y))
            })?;
            Ok(if rules.disk.is_normalized() { v * PI } else { v })
        }
        ReproductionForm::Coefficient => unreachable!("handled by the caller"),
    }
}
