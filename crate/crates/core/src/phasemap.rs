//! RT-broken/unbroken classification and the finite-size phase boundary.
//!
//! A point is broken as soon as one grid momentum of either sector has
//! `|λ − cos k| < |γ sin k|`, i.e. an imaginary single-particle energy.
//! For `λ ≥ 1` the condition is monotone in `λ`, so the boundary at fixed
//! `γ` is found by bisection on the classifier. In the thermodynamic limit
//! it approaches the hyperbola `λ² − γ² = 1`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{momentum_grid, radicand, ModelParams, Momentum, Sector, EPS_EXCEPTIONAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseClass {
    Unbroken,
    Broken,
    Exceptional,
}

impl PhaseClass {
    pub fn label(self) -> &'static str {
        match self {
            PhaseClass::Unbroken => "unbroken",
            PhaseClass::Broken => "broken",
            PhaseClass::Exceptional => "exceptional",
        }
    }
}

impl std::fmt::Display for PhaseClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub lambda: f64,
    pub gamma: f64,
    pub n: usize,
    pub classification: PhaseClass,
    /// First momentum (even grid, then odd grid, ascending) that violates
    /// reality, or reaches equality for an exceptional point.
    pub witness_k: Option<Momentum>,
}

/// Classify one point from the single-particle radicands of both grids.
pub fn classify(params: &ModelParams) -> Result<PhasePoint> {
    params.validate()?;
    let mut broken = None;
    let mut exceptional = None;
    for sector in Sector::BOTH {
        for k in momentum_grid(params.n, sector)? {
            let s = k.sin();
            if params.gamma * s == 0.0 {
                continue;
            }
            let r = radicand(params.lambda, k.cos(), s, params.gamma);
            if r < -EPS_EXCEPTIONAL {
                broken = Some(k);
                break;
            }
            if r.abs() <= EPS_EXCEPTIONAL && exceptional.is_none() {
                exceptional = Some(k);
            }
        }
        if broken.is_some() {
            break;
        }
    }
    let (classification, witness_k) = match (broken, exceptional) {
        (Some(k), _) => (PhaseClass::Broken, Some(k)),
        (None, Some(k)) => (PhaseClass::Exceptional, Some(k)),
        (None, None) => (PhaseClass::Unbroken, None),
    };
    Ok(PhasePoint { lambda: params.lambda, gamma: params.gamma, n: params.n, classification, witness_k })
}

/// Bisection tolerance on `λ_c`.
pub const CRITICAL_TOL: f64 = 1e-6;

/// Smallest `λ ≥ 1` at which the ring of `n` sites is unbroken for this `γ`.
pub fn critical_lambda(n: usize, gamma: f64) -> Result<f64> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::InvalidParams(format!("critical_lambda needs a finite non-zero gamma, got {gamma}")));
    }
    let base = ModelParams::unit(1.0, gamma, n)?;
    let unbroken = |lambda: f64| -> Result<bool> {
        Ok(classify(&base.with_lambda(lambda))?.classification == PhaseClass::Unbroken)
    };
    if unbroken(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (1.0, (1.0 + gamma * gamma).sqrt() + 1.0);
    while hi - lo > CRITICAL_TOL {
        let mid = 0.5 * (lo + hi);
        if unbroken(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Thermodynamic boundary `λ_c = √(1 + γ²)`.
pub fn hyperbola(gamma: f64) -> f64 {
    gamma.hypot(1.0)
}

/// Inclusive range sampled at `resolution` evenly spaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub resolution: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, resolution: usize) -> Result<Axis> {
        if resolution == 0 || !min.is_finite() || !max.is_finite() || (resolution > 1 && max < min) {
            return Err(Error::InvalidParams(format!("bad axis [{min}, {max}] with {resolution} points")));
        }
        Ok(Axis { min, max, resolution })
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.resolution == 1 {
            return self.min;
        }
        self.min + (self.max - self.min) * i as f64 / (self.resolution - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.resolution).map(|i| self.value(i)).collect()
    }
}

/// Classification grid, row-major: row `r` is `γ = gamma.value(r)`, column
/// `c` is `λ = lambda.value(c)`.
#[derive(Debug, Clone)]
pub struct PhaseGrid {
    pub n: usize,
    pub lambda: Axis,
    pub gamma: Axis,
    pub points: Vec<PhasePoint>,
}

impl PhaseGrid {
    pub fn at(&self, row: usize, col: usize) -> &PhasePoint {
        &self.points[row * self.lambda.resolution + col]
    }
}

pub fn grid_scan(n: usize, lambda: Axis, gamma: Axis) -> Result<PhaseGrid> {
    ModelParams::unit(0.0, 0.0, n)?;
    let points = (0..gamma.resolution * lambda.resolution)
        .into_par_iter()
        .map(|i| {
            let p = ModelParams::unit(lambda.value(i % lambda.resolution), gamma.value(i / lambda.resolution), n)?;
            classify(&p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseGrid { n, lambda, gamma, points })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub n: usize,
    pub gamma_grid: Vec<f64>,
    pub lambda_c: Vec<f64>,
}

/// `λ_c(γ)` for each non-zero `γ`; `γ = 0` maps to the intercept 1.
pub fn boundary_curve(n: usize, gamma_grid: &[f64]) -> Result<BoundaryCurve> {
    let lambda_c = gamma_grid
        .par_iter()
        .map(|&g| if g == 0.0 { ModelParams::unit(1.0, 0.0, n).map(|_| 1.0) } else { critical_lambda(n, g) })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve { n, gamma_grid: gamma_grid.to_vec(), lambda_c })
}

/// `max_γ |λ_c(n, γ) − √(1 + γ²)|` over the grid.
pub fn hyperbola_deviation(n: usize, gamma_grid: &[f64]) -> Result<f64> {
    let curve = boundary_curve(n, gamma_grid)?;
    Ok(curve
        .gamma_grid
        .iter()
        .zip(&curve.lambda_c)
        .map(|(&g, &l)| (l - hyperbola(g)).abs())
        .fold(0.0, f64::max))
}

/// `Re E₁ − Re E₀` over the full many-body spectrum, counting degenerate
/// copies of the ground real part as zero gap.
pub fn real_gap(params: &ModelParams) -> Result<f64> {
    let mut re: Vec<f64> = crate::freeferm::many_body_spectrum(params)?.iter().map(|e| e.re).collect();
    re.sort_by(f64::total_cmp);
    Ok(re[1] - re[0])
}
