//! Model parameters, parity sectors, momentum grids and the square-root
//! branch shared by every solver.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Radicands with `|r| <= EPS_EXCEPTIONAL` are treated as exceptional points.
pub const EPS_EXCEPTIONAL: f64 = 1e-10;

/// Smallest admissible ring. `N = 2` counts its single bond twice.
pub const MIN_SITES: usize = 4;
/// Largest ring for paths that touch the 2^N spin basis.
pub const MAX_ORACLE_SITES: usize = 16;
/// Largest ring for purely analytic paths (grids, couplings, classification).
pub const MAX_ANALYTIC_SITES: usize = 1_000_000;

/// Couplings of the chain and its length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub j: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub n: usize,
}

impl ModelParams {
    pub fn new(j: f64, lambda: f64, gamma: f64, n: usize) -> Result<Self> {
        let params = ModelParams { j, lambda, gamma, n };
        params.validate()?;
        Ok(params)
    }

    /// `J = 1` shorthand used throughout the tests.
    pub fn unit(lambda: f64, gamma: f64, n: usize) -> Result<Self> {
        Self::new(1.0, lambda, gamma, n)
    }

    pub fn validate(&self) -> Result<()> {
        check_sites(self.n)?;
        if self.n > MAX_ANALYTIC_SITES {
            return Err(Error::TooLarge { n: self.n, limit: MAX_ANALYTIC_SITES });
        }
        if !self.j.is_finite() || self.j == 0.0 {
            return Err(Error::InvalidParams(format!("J must be finite and non-zero, got {}", self.j)));
        }
        if !self.lambda.is_finite() || !self.gamma.is_finite() {
            return Err(Error::InvalidParams(format!(
                "lambda and gamma must be finite, got ({}, {})",
                self.lambda, self.gamma
            )));
        }
        Ok(())
    }

    /// Rejects sizes the 2^N spin basis cannot hold.
    pub fn require_spin_basis(&self, limit: usize) -> Result<()> {
        if self.n > limit.min(MAX_ORACLE_SITES) {
            return Err(Error::TooLarge { n: self.n, limit: limit.min(MAX_ORACLE_SITES) });
        }
        Ok(())
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        ModelParams { lambda, ..self }
    }

    pub fn with_gamma(self, gamma: f64) -> Self {
        ModelParams { gamma, ..self }
    }

    /// Hilbert-space dimension 2^N.
    pub fn dim(&self) -> usize {
        1usize << self.n
    }
}

fn check_sites(n: usize) -> Result<()> {
    if n < MIN_SITES || n % 2 != 0 {
        return Err(Error::InvalidParams(format!(
            "site count must be even and at least {MIN_SITES}, got {n}"
        )));
    }
    Ok(())
}

/// Fermion-parity sector. `Even` holds an even number of Jordan-Wigner
/// fermions and uses antiperiodic momenta; `Odd` uses periodic momenta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Even,
    Odd,
}

impl Sector {
    pub const BOTH: [Sector; 2] = [Sector::Even, Sector::Odd];

    /// The sign tag η: +1 for even, −1 for odd.
    pub fn eta(self) -> i32 {
        match self {
            Sector::Even => 1,
            Sector::Odd => -1,
        }
    }

    /// Sector of a basis state from its fermion count.
    pub fn of_popcount(count: u32) -> Sector {
        if count % 2 == 0 {
            Sector::Even
        } else {
            Sector::Odd
        }
    }

    /// Sign picked up by `cos(k (d + N))` relative to `cos(k d)` on this
    /// sector's grid.
    pub fn ring_sign(self) -> f64 {
        match self {
            Sector::Even => -1.0,
            Sector::Odd => 1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sector::Even => "+",
            Sector::Odd => "-",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A lattice momentum on one sector's grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momentum {
    pub sector: Sector,
    pub index: usize,
    pub value: f64,
    n: usize,
}

impl Momentum {
    pub fn new(n: usize, sector: Sector, index: usize) -> Momentum {
        debug_assert!(index < n);
        let offset = match sector {
            Sector::Even => 0.5,
            Sector::Odd => 0.0,
        };
        let value = 2.0 * PI * (index as f64 + offset) / n as f64;
        Momentum { sector, index, value, n }
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    /// Index of `(2π − k) mod 2π` on the same grid.
    pub fn partner_index(&self) -> usize {
        match self.sector {
            Sector::Even => self.n - 1 - self.index,
            Sector::Odd => (self.n - self.index) % self.n,
        }
    }

    pub fn partner(&self) -> Momentum {
        Momentum::new(self.n, self.sector, self.partner_index())
    }

    /// `k = 0` or `k = π`, where `sin k` vanishes identically.
    pub fn is_unpaired(&self) -> bool {
        self.sector == Sector::Odd && (self.index == 0 || 2 * self.index == self.n)
    }

    /// Representative of a `(k, −k)` pair: `0 < k < π`.
    pub fn is_pair_head(&self) -> bool {
        !self.is_unpaired() && 2 * self.index + usize::from(self.sector == Sector::Even) < self.n
    }

    /// `sin k`, exactly zero for unpaired momenta.
    pub fn sin(&self) -> f64 {
        if self.is_unpaired() {
            0.0
        } else {
            self.value.sin()
        }
    }

    /// `cos k`, exactly ±1 for unpaired momenta.
    pub fn cos(&self) -> f64 {
        if self.is_unpaired() {
            if self.index == 0 {
                1.0
            } else {
                -1.0
            }
        } else {
            self.value.cos()
        }
    }
}

/// The `n` momenta of a sector, ascending in `[0, 2π)`.
pub fn momentum_grid(n: usize, sector: Sector) -> Result<Vec<Momentum>> {
    check_sites(n)?;
    Ok((0..n).map(|m| Momentum::new(n, sector, m)).collect())
}

/// `(λ − cos k)² − γ² sin² k`.
pub fn radicand(lambda: f64, cos_k: f64, sin_k: f64, gamma: f64) -> f64 {
    let a = lambda - cos_k;
    let b = gamma * sin_k;
    a * a - b * b
}

/// The continued square root `D(λ, k, γ)` of the radicand.
///
/// The branch follows `γ = 0` continuity: `D = λ − cos k` with its sign when
/// the pairing vanishes, `sign(λ − cos k)·√r` for a positive radicand and
/// `i·√(−r)` (non-negative imaginary part) for a negative one.
pub fn branch_sqrt(lambda: f64, k: f64, gamma: f64) -> Complex64 {
    branch_sqrt_cs(lambda, k.cos(), k.sin(), gamma)
}

/// [`branch_sqrt`] at a grid momentum, using its exact trigonometric values.
pub fn branch_sqrt_at(lambda: f64, k: &Momentum, gamma: f64) -> Complex64 {
    branch_sqrt_cs(lambda, k.cos(), k.sin(), gamma)
}

pub(crate) fn branch_sqrt_cs(lambda: f64, cos_k: f64, sin_k: f64, gamma: f64) -> Complex64 {
    let a = lambda - cos_k;
    let b = gamma * sin_k;
    if b == 0.0 {
        return Complex64::new(a, 0.0);
    }
    let r = a * a - b * b;
    if r >= 0.0 {
        Complex64::new(r.sqrt().copysign(a), 0.0)
    } else {
        Complex64::new(0.0, (-r).sqrt())
    }
}
