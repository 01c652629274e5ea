//! Spectral rules on the circle and disk, and seeded Monte Carlo on the
//! sphere `S^7` and the ball `B_8`.
//!
//! Monte Carlo draws are split into fixed-size chunks. Every chunk owns a
//! ChaCha stream position derived from `(seed, stream, chunk index)`, chunks
//! run on the rayon pool, and the per-chunk statistics are merged in chunk
//! order. The result is therefore bitwise identical for any thread count.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::octonion::Octonion;

/// Surface area of the unit sphere `S^7`.
pub const SPHERE7_AREA: f64 = PI * PI * PI * PI / 3.0;

/// Volume of the unit ball in `R^8`.
pub const BALL8_VOLUME: f64 = PI * PI * PI * PI / 24.0;

const CHUNK: usize = 4096;

/// `M` equispaced nodes with weights `2 pi / M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleRule {
    nodes: usize,
}

impl CircleRule {
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidConfig("circle rule needs at least one node".into()));
        }
        Ok(CircleRule { nodes })
    }

    pub fn len(&self) -> usize {
        self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.nodes == 0
    }

    pub fn weight(&self) -> f64 {
        2.0 * PI / self.nodes as f64
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.nodes).map(move |k| 2.0 * PI * k as f64 / self.nodes as f64)
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(order, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor rule on the closed unit disk: Gauss-Legendre in `r` on `[0, 1]`
/// times the equispaced circle rule, with the `r dr d theta` Jacobian in the
/// weights. Total mass is `pi`, or `1` when `normalized`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskRule {
    radii: Vec<f64>,
    radial_weights: Vec<f64>,
    circle: CircleRule,
    normalized: bool,
}

impl DiskRule {
    pub fn new(radial_order: usize, angular_nodes: usize, normalized: bool) -> Result<Self> {
        if radial_order == 0 {
            return Err(Error::InvalidConfig("disk rule needs a positive radial order".into()));
        }
        let circle = CircleRule::new(angular_nodes)?;
        let (x, w) = gauss_legendre(radial_order);
        let radii: Vec<f64> = x.iter().map(|t| 0.5 * (t + 1.0)).collect();
        let radial_weights = radii.iter().zip(&w).map(|(r, w)| 0.5 * w * r).collect();
        Ok(DiskRule {
            radii,
            radial_weights,
            circle,
            normalized,
        })
    }

    pub fn radial_order(&self) -> usize {
        self.radii.len()
    }

    pub fn angular_nodes(&self) -> usize {
        self.circle.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn with_normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    /// `(r, theta, weight)` for every node.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let scale = if self.normalized { 1.0 / PI } else { 1.0 };
        let wt = self.circle.weight() * scale;
        self.radii
            .iter()
            .zip(&self.radial_weights)
            .flat_map(move |(&r, &wr)| self.circle.angles().map(move |t| (r, t, wr * wt)))
    }
}

/// `sum_k w_k f(theta_k)`.
pub fn integrate_circle<F>(rule: &CircleRule, mut integrand: F) -> Octonion
where
    F: FnMut(f64) -> Octonion,
{
    let w = rule.weight();
    rule.angles().map(|t| integrand(t) * w).sum()
}

pub fn try_integrate_circle<F>(rule: &CircleRule, mut integrand: F) -> Result<Octonion>
where
    F: FnMut(f64) -> Result<Octonion>,
{
    let w = rule.weight();
    let mut sum = Octonion::ZERO;
    for t in rule.angles() {
        sum += integrand(t)? * w;
    }
    Ok(sum)
}

/// Tensor-rule sum of `f(r, theta)` over the disk.
pub fn integrate_disk<F>(rule: &DiskRule, mut integrand: F) -> Octonion
where
    F: FnMut(f64, f64) -> Octonion,
{
    rule.nodes().map(|(r, t, w)| integrand(r, t) * w).sum()
}

pub fn try_integrate_disk<F>(rule: &DiskRule, mut integrand: F) -> Result<Octonion>
where
    F: FnMut(f64, f64) -> Result<Octonion>,
{
    let mut sum = Octonion::ZERO;
    for (r, t, w) in rule.nodes() {
        sum += integrand(r, t)? * w;
    }
    Ok(sum)
}

/// Sample count and random stream for a Monte Carlo integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sampler {
    pub samples: usize,
    pub seed: u64,
    pub stream: u64,
}

pub type SphereSampler = Sampler;
pub type BallSampler = Sampler;

impl Sampler {
    pub fn new(samples: usize, seed: u64) -> Self {
        Sampler {
            samples,
            seed,
            stream: 0,
        }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        Sampler { stream, ..self }
    }

    fn chunk_rng(&self, chunk: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos((chunk as u128) << 40);
        rng
    }

    /// Uniform point on `S^7`.
    pub fn sphere_point<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
        loop {
            let g = Octonion(std::array::from_fn(|_| rng.sample::<f64, _>(StandardNormal)));
            let n = g.norm();
            if n > 1e-150 {
                return g / n;
            }
        }
    }

    /// Uniform point in the unit ball of `R^8`.
    pub fn ball_point<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
        let dir = Self::sphere_point(rng);
        let u: f64 = rng.random();
        dir * u.powf(0.125)
    }

    /// The first `count` sphere points of this stream, in order.
    pub fn sphere_points(&self, count: usize) -> Vec<Octonion> {
        self.points(count, Self::sphere_point)
    }

    pub fn ball_points(&self, count: usize) -> Vec<Octonion> {
        self.points(count, Self::ball_point)
    }

    fn points(&self, count: usize, draw: fn(&mut ChaCha8Rng) -> Octonion) -> Vec<Octonion> {
        let mut out = Vec::with_capacity(count);
        let mut chunk = 0;
        while out.len() < count {
            let mut rng = self.chunk_rng(chunk);
            let take = CHUNK.min(count - out.len());
            out.extend((0..take).map(|_| draw(&mut rng)));
            chunk += 1;
        }
        out
    }
}

/// Monte Carlo estimate of an octonion-valued integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: Octonion,
    /// Euclidean norm of the componentwise standard errors.
    pub stderr: f64,
    pub component_stderr: [f64; 8],
    pub samples: usize,
}

impl McEstimate {
    /// `|value - truth| <= max(4 stderr, tol)`.
    pub fn agrees_with(&self, truth: Octonion, tol: f64) -> bool {
        (self.value - truth).norm() <= (4.0 * self.stderr).max(tol)
    }

    pub fn scaled(self, r: f64) -> McEstimate {
        McEstimate {
            value: self.value * r,
            stderr: self.stderr * r.abs(),
            component_stderr: self.component_stderr.map(|s| s * r.abs()),
            samples: self.samples,
        }
    }
}

#[derive(Clone, Copy)]
struct Moments {
    n: f64,
    mean: [f64; 8],
    m2: [f64; 8],
}

impl Moments {
    const EMPTY: Moments = Moments {
        n: 0.0,
        mean: [0.0; 8],
        m2: [0.0; 8],
    };

    fn push(&mut self, x: Octonion) {
        self.n += 1.0;
        for i in 0..8 {
            let d = x.0[i] - self.mean[i];
            self.mean[i] += d / self.n;
            self.m2[i] += d * (x.0[i] - self.mean[i]);
        }
    }

    fn merge(self, other: Moments) -> Moments {
        if other.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return other;
        }
        let n = self.n + other.n;
        let mut out = Moments { n, ..Moments::EMPTY };
        for i in 0..8 {
            let d = other.mean[i] - self.mean[i];
            out.mean[i] = self.mean[i] + d * other.n / n;
            out.m2[i] = self.m2[i] + other.m2[i] + d * d * self.n * other.n / n;
        }
        out
    }

    fn estimate(&self, scale: f64) -> McEstimate {
        let component_stderr: [f64; 8] = std::array::from_fn(|i| {
            if self.n > 1.0 {
                scale * (self.m2[i] / (self.n - 1.0) / self.n).sqrt()
            } else {
                0.0
            }
        });
        McEstimate {
            value: Octonion(self.mean) * scale,
            stderr: component_stderr.iter().map(|s| s * s).sum::<f64>().sqrt(),
            component_stderr,
            samples: self.n as usize,
        }
    }
}

fn mc_mean<F>(sampler: &Sampler, draw: fn(&mut ChaCha8Rng) -> Octonion, integrand: F) -> Result<Moments>
where
    F: Fn(Octonion) -> Result<Octonion> + Sync,
{
    if sampler.samples == 0 {
        return Err(Error::InvalidConfig("Monte Carlo needs at least one sample".into()));
    }
    let chunks = sampler.samples.div_ceil(CHUNK);
    let parts: Vec<Result<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = sampler.chunk_rng(c);
            let take = CHUNK.min(sampler.samples - c * CHUNK);
            let mut m = Moments::EMPTY;
            for _ in 0..take {
                m.push(integrand(draw(&mut rng))?);
            }
            Ok(m)
        })
        .collect();
    parts
        .into_iter()
        .try_fold(Moments::EMPTY, |acc, m| Ok(acc.merge(m?)))
}

/// `int_{S^7} f |d sigma|`, estimated as `|S^7|` times the sample mean.
pub fn mc_sphere7<F>(sampler: &Sampler, integrand: F) -> McEstimate
where
    F: Fn(Octonion) -> Octonion + Sync,
{
    try_mc_sphere7(sampler, |y| Ok(integrand(y))).expect("infallible integrand")
}

pub fn try_mc_sphere7<F>(sampler: &Sampler, integrand: F) -> Result<McEstimate>
where
    F: Fn(Octonion) -> Result<Octonion> + Sync,
{
    Ok(mc_mean(sampler, Sampler::sphere_point, integrand)?.estimate(SPHERE7_AREA))
}

/// `int_{B_8(center, radius)} f dV`, estimated as `radius^8 V_8` times the
/// sample mean.
pub fn mc_ball8<F>(sampler: &Sampler, center: Octonion, radius: f64, integrand: F) -> McEstimate
where
    F: Fn(Octonion) -> Octonion + Sync,
{
    try_mc_ball8(sampler, center, radius, |y| Ok(integrand(y))).expect("infallible integrand")
}

pub fn try_mc_ball8<F>(
    sampler: &Sampler,
    center: Octonion,
    radius: f64,
    integrand: F,
) -> Result<McEstimate>
where
    F: Fn(Octonion) -> Result<Octonion> + Sync,
{
    if !(radius > 0.0) {
        return Err(Error::InvalidConfig(format!("ball radius must be positive, got {radius}")));
    }
    let m = mc_mean(sampler, Sampler::ball_point, |y| integrand(center + y * radius))?;
    Ok(m.estimate(radius.powi(8) * BALL8_VOLUME))
}
