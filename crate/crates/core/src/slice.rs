//! Book structure of the octonions: every non-real `x` lies on exactly one
//! complex plane `C_I = R + R I` with `I` a unit imaginary octonion.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::octonion::Octonion;

/// Tolerance used when validating unit imaginary octonions.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Imaginary parts at or below this length are treated as real.
pub const REAL_AXIS_TOLERANCE: f64 = 1e-15;

/// A unit imaginary octonion; its square is `-1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryUnit(Octonion);

impl ImaginaryUnit {
    /// Validates `Re(value) = 0` and `|value| = 1` to within [`UNIT_TOLERANCE`].
    pub fn new(value: Octonion) -> Result<Self> {
        let real = value.re();
        let norm = value.norm();
        if real.abs() > UNIT_TOLERANCE || (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NotImaginaryUnit { real, norm });
        }
        Ok(ImaginaryUnit(value))
    }

    /// Normalizes the imaginary part of `value`.
    pub fn from_imaginary_part(value: Octonion) -> Result<Self> {
        let im = value.im();
        let norm = im.norm();
        if !(norm > REAL_AXIS_TOLERANCE) {
            return Err(Error::NotImaginaryUnit {
                real: value.re(),
                norm,
            });
        }
        Ok(ImaginaryUnit(im / norm))
    }

    /// The basis unit `e_i`, `1 <= i <= 7`.
    pub fn basis(i: usize) -> Result<Self> {
        if !(1..8).contains(&i) {
            return Err(Error::IndexOutOfRange(i));
        }
        Ok(ImaginaryUnit(Octonion::basis(i)))
    }

    /// Draws a unit uniformly from the six-sphere of imaginary units.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut c = [0.0; 8];
            for x in c.iter_mut().skip(1) {
                *x = rng.sample(StandardNormal);
            }
            if let Ok(unit) = Self::from_imaginary_part(Octonion(c)) {
                return unit;
            }
        }
    }

    pub fn value(&self) -> Octonion {
        self.0
    }

    /// `u + I v`.
    pub fn point(&self, u: f64, v: f64) -> Octonion {
        self.0 * v + u
    }

    /// Embeds a complex number `a + ib` into `C_I` as `a + I b`.
    pub fn embed(&self, z: Complex64) -> Octonion {
        self.point(z.re, z.im)
    }

    /// Inverse of [`ImaginaryUnit::embed`] for points on `C_I`; components
    /// off the plane are dropped.
    pub fn project(&self, x: Octonion) -> Complex64 {
        Complex64::new(x.re(), x.dot(&self.0))
    }

    /// Distance from `x` to the plane `C_I`.
    pub fn distance_to_plane(&self, x: Octonion) -> f64 {
        (x - self.embed(self.project(x))).norm()
    }

    pub fn neg(&self) -> ImaginaryUnit {
        ImaginaryUnit(-self.0)
    }
}

/// Decomposition `x = u + I v` with `v >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub u: f64,
    pub v: f64,
    pub axis: ImaginaryUnit,
}

impl SlicePoint {
    pub fn compose(&self) -> Octonion {
        self.axis.point(self.u, self.v)
    }

    /// The conjugate point `u - I v` on the same plane.
    pub fn reflected(&self) -> Octonion {
        self.axis.point(self.u, -self.v)
    }
}

/// Splits `x` as `Re(x) + I |Im(x)|`. Real inputs get `v = 0` and the axis
/// `e1`; every formula downstream is invariant under `(I, v) -> (-I, -v)`.
pub fn decompose(x: Octonion) -> SlicePoint {
    let u = x.re();
    let im = x.im();
    let v = im.norm();
    if v > REAL_AXIS_TOLERANCE {
        SlicePoint {
            u,
            v,
            axis: ImaginaryUnit(im / v),
        }
    } else {
        SlicePoint {
            u,
            v: 0.0,
            axis: ImaginaryUnit(Octonion::basis(1)),
        }
    }
}

/// The point `u + J v` of the sphere `[x]`.
pub fn orbit_sample(x: Octonion, j: ImaginaryUnit) -> Octonion {
    let p = decompose(x);
    j.point(p.u, p.v)
}

/// Reconstructs `f(u + I v)` from `f_plus = f(u + J v)` and
/// `f_minus = f(u - J v)` for a slice function `f`:
///
/// ```text
/// f(u + Iv) = 1/2 [f_plus + f_minus] + 1/2 I [J (f_minus - f_plus)]
/// ```
pub fn representation_formula(
    f_plus: Octonion,
    f_minus: Octonion,
    i: ImaginaryUnit,
    j: ImaginaryUnit,
) -> Octonion {
    let mean = (f_plus + f_minus) * 0.5;
    let correction = i.value() * (j.value() * (f_minus - f_plus));
    mean + correction * 0.5
}

/// Orthonormal frame `{1, I1, I2, I1I2, I4, I1I4, I2I4, (I1I2)I4}` built from
/// three imaginary units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingFrame {
    pub i1: ImaginaryUnit,
    pub i2: ImaginaryUnit,
    pub i4: ImaginaryUnit,
    pub basis: [Octonion; 8],
}

/// Coordinates of an octonion in a [`SplittingFrame`], each pair read as a
/// complex number over `C_{I1}`:
///
/// ```text
/// value = F1 + F2 I2 + (G1 + I2 G2) I4
/// ```
///
/// With this grouping left multiplication by `z` in `C_{I1}` multiplies every
/// one of `F1, F2, G1, G2` by `z`, so the four components of a slice function
/// restricted to `C_{I1}` are holomorphic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitComponents {
    pub f1: Complex64,
    pub f2: Complex64,
    pub g1: Complex64,
    pub g2: Complex64,
}

impl SplitComponents {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.f1, self.f2, self.g1, self.g2]
    }
}

impl SplittingFrame {
    /// Builds the frame from explicit units, checking that `I2` is orthogonal
    /// to `{1, I1}` and `I4` to `{1, I1, I2, I1I2}`.
    pub fn from_units(i1: ImaginaryUnit, i2: ImaginaryUnit, i4: ImaginaryUnit) -> Result<Self> {
        let (a, b, c) = (i1.value(), i2.value(), i4.value());
        let ab = a * b;
        let checks = [a.dot(&b), c.dot(&a), c.dot(&b), c.dot(&ab)];
        if checks.iter().any(|d| d.abs() > UNIT_TOLERANCE) {
            return Err(Error::InvalidConfig(format!(
                "splitting units are not orthogonal: {checks:?}"
            )));
        }
        Ok(Self::assemble(i1, i2, i4))
    }

    fn assemble(i1: ImaginaryUnit, i2: ImaginaryUnit, i4: ImaginaryUnit) -> Self {
        let (a, b, c) = (i1.value(), i2.value(), i4.value());
        let ab = a * b;
        SplittingFrame {
            i1,
            i2,
            i4,
            basis: [Octonion::ONE, a, b, ab, c, a * c, b * c, ab * c],
        }
    }

    /// The coordinate frame `I1 = e1, I2 = e2, I4 = e3`.
    pub fn canonical() -> Self {
        let e = |i| ImaginaryUnit(Octonion::basis(i));
        Self::assemble(e(1), e(2), e(3))
    }

    /// Gram matrix of the basis under the Euclidean inner product.
    pub fn gram(&self) -> [[f64; 8]; 8] {
        let mut g = [[0.0; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.basis[i].dot(&self.basis[j]);
            }
        }
        g
    }

    pub fn coordinates(&self, value: Octonion) -> [f64; 8] {
        self.basis.map(|b| value.dot(&b))
    }

    pub fn from_coordinates(&self, c: [f64; 8]) -> Octonion {
        self.basis
            .iter()
            .zip(c)
            .fold(Octonion::ZERO, |acc, (b, x)| acc + *b * x)
    }

    pub fn split(&self, value: Octonion) -> SplitComponents {
        let c = self.coordinates(value);
        SplitComponents {
            f1: Complex64::new(c[0], c[1]),
            f2: Complex64::new(c[2], c[3]),
            g1: Complex64::new(c[4], c[5]),
            // I2 (p + q I1) = p I2 - q I1I2
            g2: Complex64::new(c[6], -c[7]),
        }
    }

    pub fn recompose(&self, parts: &SplitComponents) -> Octonion {
        self.from_coordinates([
            parts.f1.re,
            parts.f1.im,
            parts.f2.re,
            parts.f2.im,
            parts.g1.re,
            parts.g1.im,
            parts.g2.re,
            -parts.g2.im,
        ])
    }
}

/// Deterministic frame for `I1`: `I2` and `I4` come from seeded Gaussian
/// vectors projected off the span built so far and normalized.
pub fn splitting_frame(i1: ImaginaryUnit, seed: u64) -> SplittingFrame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = i1.value();
    let i2 = orthogonal_unit(&mut rng, &[Octonion::ONE, a]);
    let b = i2.value();
    let i4 = orthogonal_unit(&mut rng, &[Octonion::ONE, a, b, a * b]);
    SplittingFrame::assemble(i1, i2, i4)
}

fn orthogonal_unit(rng: &mut ChaCha8Rng, span: &[Octonion]) -> ImaginaryUnit {
    loop {
        let mut c = [0.0; 8];
        for x in c.iter_mut() {
            *x = rng.sample(StandardNormal);
        }
        let mut v = Octonion(c);
        // two Gram-Schmidt passes against an orthonormal span
        for _ in 0..2 {
            for s in span {
                v -= *s * v.dot(s);
            }
        }
        let n = v.norm();
        if n > 1e-3 {
            let mut u = v / n;
            u.0[0] = 0.0;
            return ImaginaryUnit(u / u.norm());
        }
    }
}

pub fn split_components(value: Octonion, frame: &SplittingFrame) -> SplitComponents {
    frame.split(value)
}
