//! Truncated power series `f(x) = sum_n x^n a_n` with octonion coefficients
//! written on the right. On the unit ball these represent the slice
//! monogenic functions.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::octonion::Octonion;

/// Degree used by the randomized suites.
pub const DEFAULT_TRUNCATION: usize = 32;

/// Coefficients `a_0, ..., a_N` of `sum_n x^n a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OctonionPowerSeries {
    coefficients: Vec<Octonion>,
}

impl OctonionPowerSeries {
    /// An empty coefficient list is stored as the zero constant.
    pub fn new(coefficients: Vec<Octonion>) -> Self {
        if coefficients.is_empty() {
            return Self::constant(Octonion::ZERO);
        }
        OctonionPowerSeries { coefficients }
    }

    pub fn constant(c: Octonion) -> Self {
        OctonionPowerSeries {
            coefficients: vec![c],
        }
    }

    /// `x^n c`.
    pub fn monomial(n: usize, c: Octonion) -> Self {
        let mut coefficients = vec![Octonion::ZERO; n + 1];
        coefficients[n] = c;
        OctonionPowerSeries { coefficients }
    }

    /// Random coefficients with components uniform in `[-decay^n, decay^n]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, degree: usize, decay: f64) -> Self {
        let coefficients = (0..=degree)
            .map(|n| {
                let scale = decay.powi(n as i32);
                Octonion(std::array::from_fn(|_| rng.random_range(-1.0..=1.0) * scale))
            })
            .collect();
        OctonionPowerSeries { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Octonion] {
        &self.coefficients
    }

    /// Coefficient `a_n`, zero beyond the truncation degree.
    pub fn coefficient(&self, n: usize) -> Octonion {
        self.coefficients.get(n).copied().unwrap_or(Octonion::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|a| a.max_abs() == 0.0)
    }

    /// `sum_n power(x, n) * a_n`. The powers of `x` are accumulated one
    /// multiplication at a time; each term is formed as `(x^n) a_n`.
    pub fn evaluate(&self, x: Octonion) -> Octonion {
        let mut p = Octonion::ONE;
        let mut sum = Octonion::ZERO;
        for (n, a) in self.coefficients.iter().enumerate() {
            if n > 0 {
                p = x * p;
            }
            sum += p * *a;
        }
        sum
    }

    /// Coefficientwise right multiplication `sum_n x^n (a_n alpha)`.
    pub fn right_mul(&self, alpha: Octonion) -> Self {
        OctonionPowerSeries {
            coefficients: self.coefficients.iter().map(|a| *a * alpha).collect(),
        }
    }

    pub fn scale(&self, r: f64) -> Self {
        OctonionPowerSeries {
            coefficients: self.coefficients.iter().map(|a| *a * r).collect(),
        }
    }

    /// Sum with zero padding to the larger degree.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        OctonionPowerSeries {
            coefficients: (0..n)
                .map(|k| self.coefficient(k) + other.coefficient(k))
                .collect(),
        }
    }
}

pub fn evaluate(f: &OctonionPowerSeries, x: Octonion) -> Octonion {
    f.evaluate(x)
}

/// `[f, g] = sum_n conj(b_n) a_n`.
pub fn hardy_inner_coeff(f: &OctonionPowerSeries, g: &OctonionPowerSeries) -> Octonion {
    let n = f.coefficients.len().max(g.coefficients.len());
    (0..n)
        .map(|k| g.coefficient(k).conj() * f.coefficient(k))
        .sum()
}

/// `(sum_n |a_n|^2)^(1/2)`.
pub fn hardy_norm(f: &OctonionPowerSeries) -> f64 {
    f.coefficients
        .iter()
        .map(Octonion::norm_sqr)
        .sum::<f64>()
        .sqrt()
}

/// `sum_n |a_n|^2 / (n + 1)`.
pub fn bergman_norm_sq(f: &OctonionPowerSeries) -> f64 {
    f.coefficients
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm_sqr() / (n as f64 + 1.0))
        .sum()
}

/// Para-linearity check of the coefficient product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParaLinearity {
    /// `|Re([f alpha, g]) - Re([f, g] alpha)|`; vanishes for every input.
    pub residual: f64,
    /// `[f alpha, g] - [f, g] alpha`; nonzero in general.
    pub full_gap: Octonion,
}

pub fn para_linearity_residual(
    f: &OctonionPowerSeries,
    g: &OctonionPowerSeries,
    alpha: Octonion,
) -> ParaLinearity {
    let lhs = hardy_inner_coeff(&f.right_mul(alpha), g);
    let rhs = hardy_inner_coeff(f, g) * alpha;
    ParaLinearity {
        residual: (lhs.re() - rhs.re()).abs(),
        full_gap: lhs - rhs,
    }
}

/// Literal form: octonion literals separated by `;`, lowest degree first.
impl fmt::Display for OctonionPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for OctonionPowerSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coefficients = s
            .split(';')
            .map(|part| part.trim().parse::<Octonion>())
            .collect::<Result<Vec<_>>>()?;
        Ok(OctonionPowerSeries { coefficients })
    }
}
