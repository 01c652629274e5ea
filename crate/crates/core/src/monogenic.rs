//! Cauchy-Riemann operator, Cauchy kernel, weight factor and the closed-form
//! monogenic Szegő and Bergman kernels of the unit ball, the right half-space
//! `{x_0 > 0}` and the strip `{0 < x_0 < d}`.
//!
//! Kernels are left monogenic in their first argument `x`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::quadrature::{try_mc_ball8, try_mc_sphere7, McEstimate, Sampler, BALL8_VOLUME};

/// Denominators at or below this magnitude are reported as singular.
pub const KERNEL_SINGULAR_NORM: f64 = 1e-12;

/// Finite-difference step for [`cr_apply_fd`].
pub const DEFAULT_FD_STEP: f64 = 1e-4;

pub const DEFAULT_STRIP_TERMS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum Domain {
    #[serde(rename = "ball")]
    UnitBall,
    #[serde(rename = "halfspace")]
    RightHalfSpace,
    /// `0 < x_0 < width`; kernel series truncated at `|n| <= terms`.
    Strip { width: f64, terms: usize },
}

impl Domain {
    pub fn strip(width: f64, terms: usize) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidConfig(format!("strip width must be positive, got {width}")));
        }
        if terms == 0 {
            return Err(Error::InvalidConfig("strip truncation must be at least 1".into()));
        }
        Ok(Domain::Strip { width, terms })
    }

    pub fn contains(&self, x: Octonion) -> bool {
        match *self {
            Domain::UnitBall => x.norm() < 1.0,
            Domain::RightHalfSpace => x.re() > 0.0,
            Domain::Strip { width, .. } => x.re() > 0.0 && x.re() < width,
        }
    }

    fn check_interior(&self, x: Octonion) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                domain: self.to_string(),
                point: x.to_string(),
            })
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::UnitBall => f.write_str("unit ball"),
            Domain::RightHalfSpace => f.write_str("right half-space"),
            Domain::Strip { width, terms } => write!(f, "strip of width {width} (|n| <= {terms})"),
        }
    }
}

/// First factor of the unit-ball Bergman kernel: `1 - |x|^2 |y|^2`
/// (`ScalarFactor`) or `1 - |x|^2 y^2` (`OctonionFactor`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum BergmanBallVariant {
    #[default]
    ScalarFactor,
    OctonionFactor,
}

impl BergmanBallVariant {
    pub const ALL: [BergmanBallVariant; 2] =
        [BergmanBallVariant::ScalarFactor, BergmanBallVariant::OctonionFactor];

    pub fn name(&self) -> &'static str {
        match self {
            BergmanBallVariant::ScalarFactor => "scalar",
            BergmanBallVariant::OctonionFactor => "octonion",
        }
    }
}

/// `sum_i e_i (df/dx_i)` by central differences.
pub fn cr_apply_fd<F>(f: F, x: Octonion, h: f64) -> Octonion
where
    F: Fn(Octonion) -> Octonion,
{
    (0..8)
        .map(|i| {
            let e = Octonion::basis(i);
            let d = (f(x + e * h) - f(x - e * h)) / (2.0 * h);
            e * d
        })
        .sum()
}

fn guard(magnitude: f64, set: &'static str) -> Result<()> {
    if magnitude > KERNEL_SINGULAR_NORM {
        Ok(())
    } else {
        Err(Error::Singularity { set, magnitude })
    }
}

/// `q_0(x) = conj(x) / |x|^8`.
pub fn cauchy_kernel(x: Octonion) -> Result<Octonion> {
    let n = x.norm();
    guard(n, "x = 0")?;
    Ok(x.conj() / n.powi(8))
}

fn ball_szego(x: Octonion, y: Octonion) -> Result<Octonion> {
    let w = 1.0 - x.conj() * y;
    let n = w.norm();
    guard(n, "conj(x) y = 1")?;
    Ok(w / n.powi(8))
}

fn halfspace_szego(v: Octonion) -> Result<Octonion> {
    let n = v.norm();
    guard(n, "conj(x) + y = 0")?;
    Ok(v / n.powi(8))
}

/// `-2 d/dx_0 [v / |v|^8]` with `v = conj(x) + y`.
fn halfspace_bergman(v: Octonion) -> Result<Octonion> {
    let n = v.norm();
    guard(n, "conj(x) + y = 0")?;
    let n2 = n * n;
    let n8 = n2 * n2 * n2 * n2;
    Ok((1.0 - v * (8.0 * v.re() / n2)) * (-2.0 / n8))
}

/// Symmetric partial sum `t(0) + sum_{n=1}^{terms} (t(n) + t(-n))`.
fn paired_sum<F>(terms: usize, term: F) -> Result<Octonion>
where
    F: Fn(i64) -> Result<Octonion>,
{
    let mut tail = Octonion::ZERO;
    for n in (1..=terms as i64).rev() {
        tail += term(n)? + term(-n)?;
    }
    Ok(term(0)? + tail)
}

fn sign(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Szegő kernel `S(x, y)`.
pub fn szego_kernel(dom: &Domain, x: Octonion, y: Octonion) -> Result<Octonion> {
    match *dom {
        Domain::UnitBall => ball_szego(x, y),
        Domain::RightHalfSpace => halfspace_szego(x.conj() + y),
        Domain::Strip { width, terms } => {
            let v = x.conj() + y;
            paired_sum(terms, |n| Ok(halfspace_szego(v + 2.0 * width * n as f64)? * sign(n)))
        }
    }
}

/// Bergman kernel `B(x, y)`. `variant` only affects the unit ball.
pub fn bergman_kernel(
    dom: &Domain,
    x: Octonion,
    y: Octonion,
    variant: BergmanBallVariant,
) -> Result<Octonion> {
    match *dom {
        Domain::UnitBall => {
            let w = 1.0 - x.conj() * y;
            let n = w.norm();
            guard(n, "conj(x) y = 1")?;
            let factor = match variant {
                BergmanBallVariant::ScalarFactor => Octonion::real(1.0 - x.norm_sqr() * y.norm_sqr()),
                BergmanBallVariant::OctonionFactor => 1.0 - (y * y) * x.norm_sqr(),
            };
            Ok((factor * w * 6.0 + w * w * 2.0) / n.powi(10))
        }
        Domain::RightHalfSpace => halfspace_bergman(x.conj() + y),
        Domain::Strip { width, terms } => {
            let v = x.conj() + y;
            paired_sum(terms, |n| halfspace_bergman(v + 2.0 * width * n as f64))
        }
    }
}

/// Nearest-boundary normal `omega(x)` used as weight in the volume product.
pub fn weight_factor(dom: &Domain, x: Octonion) -> Result<Octonion> {
    dom.check_interior(x)?;
    Ok(match *dom {
        Domain::UnitBall => {
            let n = x.norm();
            if n == 0.0 {
                Octonion::ZERO
            } else {
                x / n
            }
        }
        Domain::RightHalfSpace => Octonion::ONE,
        Domain::Strip { width, .. } => {
            let half = 0.5 * width;
            if x.re() < half {
                Octonion::real(-1.0)
            } else if x.re() > half {
                Octonion::ONE
            } else {
                Octonion::ZERO
            }
        }
    })
}

/// `(3 / pi^4) int_{S^7} q_0(y - x) (y f(y)) |d sigma(y)|`, which equals
/// `f(x)` for `f` left monogenic on the closed unit ball.
pub fn cauchy_integral_mc<F>(f: F, x: Octonion, sampler: &Sampler) -> Result<McEstimate>
where
    F: Fn(Octonion) -> Octonion + Sync,
{
    Domain::UnitBall.check_interior(x)?;
    let est = try_mc_sphere7(sampler, |y| Ok(cauchy_kernel(y - x)? * (y * f(y))))?;
    Ok(est.scaled(3.0 / std::f64::consts::PI.powi(4)))
}

/// Ball average `(1 / (r^8 V_8)) int_{B_8(x, r)} f dV`.
pub fn mean_value_mc<F>(f: F, x: Octonion, r: f64, sampler: &Sampler) -> Result<McEstimate>
where
    F: Fn(Octonion) -> Octonion + Sync,
{
    let est = try_mc_ball8(sampler, x, r, |y| Ok(f(y)))?;
    Ok(est.scaled(1.0 / (r.powi(8) * BALL8_VOLUME)))
}

/// Which strip series to inspect in [`strip_tail`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StripSeries {
    Szego,
    Bergman,
}

/// `|P_{terms + 10} - P_terms|` for the symmetric partial sums of a strip
/// kernel of the given width.
pub fn strip_tail(series: StripSeries, width: f64, terms: usize, x: Octonion, y: Octonion) -> Result<f64> {
    let eval = |n| {
        let dom = Domain::strip(width, n)?;
        match series {
            StripSeries::Szego => szego_kernel(&dom, x, y),
            StripSeries::Bergman => bergman_kernel(&dom, x, y, BergmanBallVariant::default()),
        }
    };
    Ok((eval(terms + 10)? - eval(terms)?).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize) -> Octonion {
        Octonion::basis(i)
    }

    fn random_in_ball(rng: &mut ChaCha8Rng, radius: f64) -> Octonion {
        Sampler::ball_point(rng) * radius
    }

    #[test]
    fn cauchy_kernel_examples() {
        assert_eq!(cauchy_kernel(e(1)).unwrap(), -e(1));
        assert_eq!(cauchy_kernel(Octonion::real(2.0)).unwrap(), Octonion::real(1.0 / 128.0));
        let x = Octonion::new([0.3, -1.2, 0.5, 0.1, 2.0, -0.7, 0.4, 0.9]);
        assert!((cauchy_kernel(x).unwrap().norm() - x.norm().powi(-7)).abs() < 1e-14);
        assert!(matches!(
            cauchy_kernel(Octonion::real(1e-13)),
            Err(Error::Singularity { .. })
        ));
    }

    #[test]
    fn cr_operator_examples() {
        let x = Octonion::new([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]);
        assert!(cr_apply_fd(|_| e(3), x, DEFAULT_FD_STEP).max_abs() < 1e-12);
        let d = cr_apply_fd(|y| y, x, DEFAULT_FD_STEP);
        assert!((d - Octonion::real(-6.0)).max_abs() < 1e-10);
        let p = e(2) * 2.0;
        let d = cr_apply_fd(|y| cauchy_kernel(y - p).unwrap(), x, DEFAULT_FD_STEP);
        assert!(d.norm() < 1e-6);
    }

    #[test]
    fn kernel_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let y = random_in_ball(&mut rng, 0.9);
        assert_eq!(szego_kernel(&Domain::UnitBall, Octonion::ZERO, y).unwrap(), Octonion::ONE);
        let one = Octonion::ONE;
        assert_eq!(
            szego_kernel(&Domain::RightHalfSpace, one, one).unwrap(),
            Octonion::real(1.0 / 128.0)
        );
        for v in BergmanBallVariant::ALL {
            let b = bergman_kernel(&Domain::UnitBall, Octonion::ZERO, y, v).unwrap();
            assert!((b - Octonion::real(8.0)).max_abs() < 1e-14);
        }
        assert!(szego_kernel(&Domain::UnitBall, one, one).is_err());
        assert!(szego_kernel(&Domain::RightHalfSpace, e(3), e(3)).is_err());
    }

    #[test]
    fn halfspace_bergman_is_x0_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = 1e-5;
        for _ in 0..50 {
            let mut x = random_in_ball(&mut rng, 1.0);
            let mut y = random_in_ball(&mut rng, 1.0);
            x.0[0] = x.0[0].abs() + 0.2;
            y.0[0] = y.0[0].abs() + 0.2;
            let s = |x: Octonion| szego_kernel(&Domain::RightHalfSpace, x, y).unwrap();
            let fd = (s(x + h) - s(x - h)) * (-2.0 / (2.0 * h));
            let b = bergman_kernel(&Domain::RightHalfSpace, x, y, Default::default()).unwrap();
            assert!((fd - b).norm() <= 1e-6 * b.norm().max(1.0), "{fd:?} {b:?}");
        }
    }

    #[test]
    fn hermitian_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let strip = Domain::strip(1.0, DEFAULT_STRIP_TERMS).unwrap();
        for _ in 0..200 {
            let x = random_in_ball(&mut rng, 0.95);
            let y = random_in_ball(&mut rng, 0.95);
            for dom in [Domain::UnitBall, Domain::RightHalfSpace] {
                let (x, y) = if dom == Domain::UnitBall {
                    (x, y)
                } else {
                    (x + 1.0, y + 1.0)
                };
                let s = szego_kernel(&dom, x, y).unwrap().conj() - szego_kernel(&dom, y, x).unwrap();
                assert!(s.norm() < 1e-12);
                let b = bergman_kernel(&dom, x, y, Default::default()).unwrap().conj()
                    - bergman_kernel(&dom, y, x, Default::default()).unwrap();
                assert!(b.norm() < 1e-12 * bergman_kernel(&dom, x, y, Default::default()).unwrap().norm().max(1.0));
            }
            let (xs, ys) = (x * 0.4 + 0.5, y * 0.4 + 0.5);
            let s = szego_kernel(&strip, xs, ys).unwrap().conj() - szego_kernel(&strip, ys, xs).unwrap();
            assert!(s.norm() < 1e-12);
        }
    }

    #[test]
    fn monogenic_in_first_variable() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let x = random_in_ball(&mut rng, 0.5);
            let y = random_in_ball(&mut rng, 0.5);
            let d = cr_apply_fd(|x| szego_kernel(&Domain::UnitBall, x, y).unwrap(), x, DEFAULT_FD_STEP);
            assert!(d.norm() < 1e-6);
            let (xh, yh) = (x + 1.0, y + 1.0);
            let d = cr_apply_fd(
                |x| szego_kernel(&Domain::RightHalfSpace, x, yh).unwrap(),
                xh,
                DEFAULT_FD_STEP,
            );
            assert!(d.norm() < 1e-6);
        }
    }

    #[test]
    fn weight_factor_examples() {
        assert_eq!(weight_factor(&Domain::UnitBall, e(3) * 0.5).unwrap(), e(3));
        assert_eq!(weight_factor(&Domain::UnitBall, Octonion::ZERO).unwrap(), Octonion::ZERO);
        let strip = Domain::strip(1.0, 10).unwrap();
        assert_eq!(weight_factor(&strip, Octonion::real(0.2) + e(4)).unwrap(), Octonion::real(-1.0));
        assert_eq!(weight_factor(&strip, Octonion::real(0.7)).unwrap(), Octonion::ONE);
        assert_eq!(weight_factor(&strip, Octonion::real(0.5)).unwrap(), Octonion::ZERO);
        assert_eq!(weight_factor(&Domain::RightHalfSpace, Octonion::real(3.0)).unwrap(), Octonion::ONE);
        assert!(matches!(
            weight_factor(&Domain::UnitBall, e(1) * 2.0),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(weight_factor(&strip, Octonion::real(1.5)).is_err());
        assert!(Domain::strip(0.0, 5).is_err());
        assert!(Domain::strip(1.0, 0).is_err());
    }

    #[test]
    fn weight_sign_cancels() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let w = Sampler::sphere_point(&mut rng);
            let f = random_in_ball(&mut rng, 2.0);
            let g = random_in_ball(&mut rng, 2.0);
            let a = (w * g).conj() * (w * f);
            let b = ((-w) * g).conj() * ((-w) * f);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn cauchy_and_mean_value_small() {
        let s = Sampler::new(20_000, 7);
        let est = cauchy_integral_mc(|_| e(1), Octonion::ZERO, &s).unwrap();
        assert!((est.value - e(1)).norm() < 1e-12);
        let c = Octonion::new([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let est = mean_value_mc(|_| c, e(2) * 0.1, 0.2, &s).unwrap();
        assert!((est.value - c).norm() < 1e-12);
        assert_eq!(est.stderr, 0.0);
        let f = |y: Octonion| cauchy_kernel(y - 2.0).unwrap();
        let est = mean_value_mc(f, Octonion::ZERO, 0.5, &s).unwrap();
        assert!(est.agrees_with(Octonion::real(-1.0 / 128.0), 0.0));
        assert!(cauchy_integral_mc(|_| e(1), e(1), &s).is_err());
    }

    #[test]
    fn strip_tails_shrink() {
        let x = Octonion::new([0.3, 0.1, -0.2, 0.0, 0.4, 0.0, 0.1, 0.2]);
        let y = Octonion::new([0.6, -0.3, 0.0, 0.2, 0.0, 0.1, 0.0, -0.1]);
        for series in [StripSeries::Szego, StripSeries::Bergman] {
            let t: Vec<f64> = [10, 20, 40].iter().map(|&n| strip_tail(series, 1.0, n, x, y).unwrap()).collect();
            assert!(t[0] > t[1] && t[1] > t[2], "{series:?} {t:?}");
        }
    }

    #[test]
    fn wide_strip_matches_halfspace() {
        let x = Octonion::new([0.3, 0.1, -0.2, 0.0, 0.4, 0.0, 0.1, 0.2]);
        let y = Octonion::new([0.6, -0.3, 0.0, 0.2, 0.0, 0.1, 0.0, -0.1]);
        let wide = Domain::strip(1e3, DEFAULT_STRIP_TERMS).unwrap();
        let hs = szego_kernel(&Domain::RightHalfSpace, x, y).unwrap();
        assert!((szego_kernel(&wide, x, y).unwrap() - hs).norm() <= 1e-6 * hs.norm());
        let hb = bergman_kernel(&Domain::RightHalfSpace, x, y, Default::default()).unwrap();
        assert!((bergman_kernel(&wide, x, y, Default::default()).unwrap() - hb).norm() <= 1e-6 * hb.norm());
    }
}
