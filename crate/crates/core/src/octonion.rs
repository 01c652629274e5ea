//! Octonion arithmetic.
//!
//! Elements are written `x = c0 + c1 e1 + ... + c7 e7`. The imaginary units
//! follow the convention generated by
//!
//! ```text
//! e4 = e1 e2,   e5 = e1 e3,   e6 = e2 e3,   e7 = e4 e3 = (e1 e2) e3
//! ```
//!
//! and the full product is read off the signed table in [`IMAGINARY_TABLE`].
//! The algebra is alternative but not associative, so every product in this
//! crate is written with explicit grouping.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest norm accepted by [`Octonion::inverse`].
pub const DEFAULT_SINGULAR_NORM: f64 = f64::MIN_POSITIVE;

/// Products `e_i e_j` for `i, j = 1..=7`, as `(sign, k)` meaning `sign * e_k`
/// with `e_0 = 1`.
pub const IMAGINARY_TABLE: [[(i8, u8); 7]; 7] = [
    [(-1, 0), (1, 4), (1, 5), (-1, 2), (-1, 3), (-1, 7), (1, 6)],
    [(-1, 4), (-1, 0), (1, 6), (1, 1), (1, 7), (-1, 3), (-1, 5)],
    [(-1, 5), (-1, 6), (-1, 0), (-1, 7), (1, 1), (1, 2), (1, 4)],
    [(1, 2), (-1, 1), (1, 7), (-1, 0), (-1, 6), (1, 5), (-1, 3)],
    [(1, 3), (-1, 7), (-1, 1), (1, 6), (-1, 0), (-1, 4), (1, 2)],
    [(1, 7), (1, 3), (-1, 2), (-1, 5), (1, 4), (-1, 0), (-1, 1)],
    [(-1, 6), (1, 5), (-1, 4), (1, 3), (-1, 2), (1, 1), (-1, 0)],
];

const fn full_table() -> ([[usize; 8]; 8], [[f64; 8]; 8]) {
    let mut index = [[0usize; 8]; 8];
    let mut sign = [[1.0f64; 8]; 8];
    let mut i = 0;
    while i < 8 {
        index[0][i] = i;
        index[i][0] = i;
        i += 1;
    }
    let mut r = 0;
    while r < 7 {
        let mut c = 0;
        while c < 7 {
            let (s, k) = IMAGINARY_TABLE[r][c];
            index[r + 1][c + 1] = k as usize;
            sign[r + 1][c + 1] = if s < 0 { -1.0 } else { 1.0 };
            c += 1;
        }
        r += 1;
    }
    (index, sign)
}

const TABLE: ([[usize; 8]; 8], [[f64; 8]; 8]) = full_table();
const PRODUCT_INDEX: [[usize; 8]; 8] = TABLE.0;
const PRODUCT_SIGN: [[f64; 8]; 8] = TABLE.1;

/// An octonion with `f64` components, `c[0]` the real part.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub const fn new(components: [f64; 8]) -> Self {
        Octonion(components)
    }

    /// Like [`Octonion::new`] but rejects NaN and infinite components.
    pub fn try_new(components: [f64; 8]) -> Result<Self> {
        match components.iter().position(|c| !c.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(Octonion(components)),
        }
    }

    /// The basis element `e_i` (`e_0 = 1`).
    ///
    /// # Panics
    /// If `i >= 8`.
    pub const fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    pub const fn real(r: f64) -> Self {
        Octonion([r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    pub const fn components(&self) -> [f64; 8] {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// Imaginary part as an octonion with zero real component.
    pub fn im(&self) -> Octonion {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn conj(&self) -> Octonion {
        let c = self.0;
        Octonion([c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// Computed on the rescaled vector so tiny and huge elements neither
    /// underflow nor overflow.
    pub fn norm(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        self.scale(1.0 / m).norm_sqr().sqrt() * m
    }

    /// Euclidean inner product on R^8, equal to `Re(a conj(b))`.
    pub fn dot(&self, other: &Octonion) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, r: f64) -> Octonion {
        let mut c = self.0;
        c.iter_mut().for_each(|x| *x *= r);
        Octonion(c)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `conj(self) / |self|^2`.
    pub fn inverse(&self) -> Result<Octonion> {
        self.inverse_with_threshold(DEFAULT_SINGULAR_NORM)
    }

    pub fn inverse_with_threshold(&self, threshold: f64) -> Result<Octonion> {
        let norm = self.norm();
        if !(norm > threshold) {
            return Err(Error::SingularElement { norm, threshold });
        }
        let m = self.max_abs();
        let scaled = self.scale(1.0 / m);
        Ok(scaled.conj().scale(1.0 / (scaled.norm_sqr() * m)))
    }

    /// `self^n` by repeated left multiplication. Powers of a single element
    /// associate, so the grouping does not matter.
    pub fn powi(&self, n: u32) -> Octonion {
        let mut p = Octonion::ONE;
        for _ in 0..n {
            p = *self * p;
        }
        p
    }
}

/// Octonion product.
pub fn multiply(a: Octonion, b: Octonion) -> Octonion {
    let mut out = [0.0; 8];
    for i in 0..8 {
        let ai = a.0[i];
        if ai == 0.0 {
            continue;
        }
        for j in 0..8 {
            out[PRODUCT_INDEX[i][j]] += PRODUCT_SIGN[i][j] * ai * b.0[j];
        }
    }
    Octonion(out)
}

pub fn conjugate(a: Octonion) -> Octonion {
    a.conj()
}

pub fn norm(a: Octonion) -> f64 {
    a.norm()
}

pub fn inverse(a: Octonion) -> Result<Octonion> {
    a.inverse()
}

/// `<a, b> = Re(a conj(b)) = sum a_i b_i`.
pub fn euclid_inner(a: Octonion, b: Octonion) -> f64 {
    a.dot(&b)
}

/// First associator `(ab)c - a(bc)`.
pub fn associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion {
    (a * b) * c - a * (b * c)
}

pub fn power(a: Octonion, n: u32) -> Octonion {
    a.powi(n)
}

/// A triple together with its associator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociatorTriple {
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
    pub first_associator: Octonion,
}

impl AssociatorTriple {
    pub fn new(a: Octonion, b: Octonion, c: Octonion) -> Self {
        AssociatorTriple {
            a,
            b,
            c,
            first_associator: associator(a, b, c),
        }
    }
}

/// Absolute residuals of the identities satisfied by every alternative
/// composition algebra, evaluated at one triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResiduals {
    /// `|a(ab) - (aa)b|`
    pub left_alternative: f64,
    /// `|(ba)a - b(aa)|`
    pub right_alternative: f64,
    /// `|(ab)a - a(ba)|`
    pub flexible: f64,
    /// The four Moufang identities with `(x, y, z) = (a, b, c)`:
    /// `z(x(zy)) = ((zx)z)y`, `x(z(yz)) = ((xz)y)z`,
    /// `(zx)(yz) = (z(xy))z`, `(zx)(yz) = z((xy)z)`.
    pub moufang: [f64; 4],
    /// `| |ab| - |a||b| |`
    pub norm_composition: f64,
    /// `|Re((ab)c) - Re(a(bc))|`
    pub real_part_cyclic: f64,
    /// `|<ab, c> - <b, conj(a) c>|`
    pub adjoint_left_multiplication: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }

    pub fn as_array(&self) -> [f64; 10] {
        [
            self.left_alternative,
            self.right_alternative,
            self.flexible,
            self.moufang[0],
            self.moufang[1],
            self.moufang[2],
            self.moufang[3],
            self.norm_composition,
            self.real_part_cyclic,
            self.adjoint_left_multiplication,
        ]
    }

    pub const NAMES: [&'static str; 10] = [
        "left-alternative",
        "right-alternative",
        "flexible",
        "moufang-1",
        "moufang-2",
        "moufang-3",
        "moufang-4",
        "norm-composition",
        "real-part-cyclic",
        "adjoint-left-multiplication",
    ];

    /// Residuals divided by `|a||b||c| + 1`.
    pub fn normalized(&self, a: Octonion, b: Octonion, c: Octonion) -> IdentityResiduals {
        let s = 1.0 / (a.norm() * b.norm() * c.norm() + 1.0);
        IdentityResiduals {
            left_alternative: self.left_alternative * s,
            right_alternative: self.right_alternative * s,
            flexible: self.flexible * s,
            moufang: self.moufang.map(|m| m * s),
            norm_composition: self.norm_composition * s,
            real_part_cyclic: self.real_part_cyclic * s,
            adjoint_left_multiplication: self.adjoint_left_multiplication * s,
        }
    }
}

pub fn identity_residuals(a: Octonion, b: Octonion, c: Octonion) -> IdentityResiduals {
    let (x, y, z) = (a, b, c);
    let d = |p: Octonion, q: Octonion| (p - q).norm();
    IdentityResiduals {
        left_alternative: d(a * (a * b), (a * a) * b),
        right_alternative: d((b * a) * a, b * (a * a)),
        flexible: d((a * b) * a, a * (b * a)),
        moufang: [
            d(z * (x * (z * y)), ((z * x) * z) * y),
            d(x * (z * (y * z)), ((x * z) * y) * z),
            d((z * x) * (y * z), (z * (x * y)) * z),
            d((z * x) * (y * z), z * ((x * y) * z)),
        ],
        norm_composition: ((a * b).norm() - a.norm() * b.norm()).abs(),
        real_part_cyclic: (((a * b) * c).re() - (a * (b * c)).re()).abs(),
        adjoint_left_multiplication: ((a * b).dot(&c) - b.dot(&(a.conj() * c))).abs(),
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        multiply(self, rhs)
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: f64) -> Octonion {
        self.scale(rhs)
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs.scale(self)
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    fn div(self, rhs: f64) -> Octonion {
        self.scale(1.0 / rhs)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0).for_each(|(a, b)| *a += b);
        Octonion(c)
    }
}

impl Add<f64> for Octonion {
    type Output = Octonion;
    fn add(mut self, rhs: f64) -> Octonion {
        self.0[0] += rhs;
        self
    }
}

impl Sub<f64> for Octonion {
    type Output = Octonion;
    fn sub(mut self, rhs: f64) -> Octonion {
        self.0[0] -= rhs;
        self
    }
}

impl Sub<Octonion> for f64 {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        -rhs + self
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        *self = *self + rhs;
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        c.iter_mut().zip(rhs.0).for_each(|(a, b)| *a -= b);
        Octonion(c)
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, rhs: Octonion) {
        *self = *self - rhs;
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|c| -c))
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl std::iter::Sum for Octonion {
    fn sum<I: Iterator<Item = Octonion>>(iter: I) -> Octonion {
        iter.fold(Octonion::ZERO, |a, b| a + b)
    }
}

impl From<f64> for Octonion {
    fn from(r: f64) -> Self {
        Octonion::real(r)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion({self})")
    }
}

/// Literal form `c0,c1,c2,c3,c4,c5,c6,c7`.
impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            // prints -0.0 as 0
            write!(f, "{}", c + 0.0)?;
        }
        Ok(())
    }
}

impl FromStr for Octonion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidLiteral {
            literal: s.to_string(),
            reason,
        };
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 8 {
            return Err(invalid(format!("expected 8 components, found {}", parts.len())));
        }
        let mut c = [0.0; 8];
        for (i, p) in parts.iter().enumerate() {
            let v: f64 = p
                .parse()
                .map_err(|e| invalid(format!("component {i}: {e}")))?;
            if !v.is_finite() {
                return Err(invalid(format!("component {i} is not finite")));
            }
            c[i] = v;
        }
        Ok(Octonion(c))
    }
}
