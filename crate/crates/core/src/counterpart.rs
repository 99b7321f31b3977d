//! Hermitian counterpart of the chain in its unbroken region.
//!
//! Replacing the biorthogonal pair `(Ā_k, A_k)` by an ordinary fermion
//! `(d_k†, d_k)` gives `h_η = Σ_k ε_k (d_k† d_k − 1/2)` with the same real
//! spectrum. In real space `h_η` is a long-range hopping model with
//! couplings
//!
//! ```text
//! κ_η(d) = (J/N) Σ_{k ∈ grid η} D(λ, k, γ) cos(k d)
//! ```
//!
//! and after Jordan-Wigner on `τ` spins (`τ^± = τˣ ± iτʸ`)
//!
//! ```text
//! h_η = −Σ_{l<m} κ_η(m−l) (τˣ_l Z⋯Z τˣ_m + τʸ_l Z⋯Z τʸ_m) + κ_η(0) Σ_l τᶻ_l
//! ```
//!
//! where the `Z` string covers the sites strictly between `l` and `m`. Every
//! pair appears once and no string wraps around the ring: the boundary
//! condition of sector η lives in the couplings themselves, which obey
//! `κ_η(N−d) = s_η κ_η(d)` with `s_+ = −1` (antiperiodic grid) and
//! `s_− = +1`.
//!
//! Truncating at nearest neighbours with the strong-field approximants
//! `κ(0), κ(1)` yields the ordinary XY ring ℋ.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freeferm::assemble_levels;
use crate::model::{branch_sqrt_at, momentum_grid, ModelParams, Momentum, Sector, MAX_ORACLE_SITES};
use crate::oracle::{self, DenseOperator, Pauli, PauliSum, SpectrumReport, MAX_DENSE_SITES};
use crate::phasemap::{classify, hyperbola, PhaseClass};

/// Largest imaginary residue of a coupling sum accepted as rounding.
const KAPPA_IMAG_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    pub n: usize,
    pub sector: Sector,
    /// `κ_η(d)` for `d = 0..N−1`.
    pub kappa: Vec<f64>,
    pub valid: bool,
}

impl CouplingTable {
    pub fn at(&self, d: usize) -> f64 {
        self.kappa[d]
    }

    /// Largest `|κ(N−d) − s_η κ(d)|` for `d ≥ 1`.
    pub fn aliasing_defect(&self) -> f64 {
        let s = self.sector.ring_sign();
        (1..self.n).map(|d| (self.kappa[self.n - d] - s * self.kappa[d]).abs()).fold(0.0, f64::max)
    }
}

fn require_unbroken(params: &ModelParams) -> Result<()> {
    let point = classify(params)?;
    if point.classification != PhaseClass::Unbroken {
        return Err(Error::NotUnbroken {
            lambda: params.lambda,
            gamma: params.gamma,
            class: point.classification.label().to_string(),
        });
    }
    Ok(())
}

fn kappa_sum(params: &ModelParams, grid: &[Momentum], d: usize) -> Result<f64> {
    let sum: C64 = grid
        .iter()
        .map(|k| branch_sqrt_at(params.lambda, k, params.gamma) * (k.value * d as f64).cos())
        .sum();
    let value = sum * params.j / params.n as f64;
    if value.im.abs() > KAPPA_IMAG_TOL {
        return Err(Error::InvalidParams(format!("coupling κ({d}) has imaginary part {}", value.im)));
    }
    Ok(value.re)
}

/// `κ_η(d)` by direct summation over the sector grid.
pub fn kappa_exact(params: &ModelParams, sector: Sector, d: usize) -> Result<f64> {
    params.validate()?;
    require_unbroken(params)?;
    kappa_sum(params, &momentum_grid(params.n, sector)?, d)
}

pub fn coupling_table(params: &ModelParams, sector: Sector) -> Result<CouplingTable> {
    params.validate()?;
    require_unbroken(params)?;
    let grid = momentum_grid(params.n, sector)?;
    let kappa = (0..params.n).into_par_iter().map(|d| kappa_sum(params, &grid, d)).collect::<Result<Vec<_>>>()?;
    Ok(CouplingTable { n: params.n, sector, kappa, valid: true })
}

/// Both sector tables and their largest entrywise difference.
pub fn coupling_tables(params: &ModelParams) -> Result<(CouplingTable, CouplingTable, f64)> {
    let even = coupling_table(params, Sector::Even)?;
    let odd = coupling_table(params, Sector::Odd)?;
    let diff = even.kappa.iter().zip(&odd.kappa).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok((even, odd, diff))
}

/// Strong-field approximants with `ν = γ²/λ²`:
/// `κ(0) = (1 − ν/4)λJ`, `κ(1) = −(J/2)(1 + ν/8)`, `κ(2) = νλJ/8`, `κ(3) = νJ/16`.
pub fn kappa_approx(params: &ModelParams, order: usize) -> Result<f64> {
    let (j, lambda) = (params.j, params.lambda);
    if lambda == 0.0 {
        return Err(Error::InvalidParams("kappa_approx needs a non-zero field".into()));
    }
    let nu = params.gamma * params.gamma / (lambda * lambda);
    match order {
        0 => Ok((1.0 - nu / 4.0) * lambda * j),
        1 => Ok(-(j / 2.0) * (1.0 + nu / 8.0)),
        2 => Ok(nu * lambda * j / 8.0),
        3 => Ok(nu * j / 16.0),
        _ => Err(Error::InvalidParams(format!("approximant order {order} outside 0..=3"))),
    }
}

fn check_table(params: &ModelParams, table: &CouplingTable) -> Result<()> {
    if !table.valid || table.n != params.n || table.kappa.len() != params.n {
        return Err(Error::InvalidParams("coupling table does not match the chain".into()));
    }
    Ok(())
}

/// Pauli-string form of `h_η` on the full `τ` space.
pub fn counterpart_terms(params: &ModelParams, table: &CouplingTable) -> Result<PauliSum> {
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    check_table(params, table)?;
    let n = params.n;
    let mut h = PauliSum::new(n);
    for l in 0..n {
        h.add(C64::new(table.at(0), 0.0), &[(l, Pauli::Z)]);
        for m in l + 1..n {
            let c = C64::new(-table.at(m - l), 0.0);
            for p in [Pauli::X, Pauli::Y] {
                let mut ops = vec![(l, p)];
                ops.extend((l + 1..m).map(|s| (s, Pauli::Z)));
                ops.push((m, p));
                h.add(c, &ops);
            }
        }
    }
    Ok(h)
}

pub fn build_counterpart_spin(params: &ModelParams, table: &CouplingTable) -> Result<DenseOperator> {
    let mut m = counterpart_terms(params, table)?.to_dense()?;
    m.hermitian = true;
    Ok(m)
}

/// `P_+ h_+ P_+ + P_− h_− P_−` with exact couplings.
pub fn build_full_counterpart(params: &ModelParams) -> Result<DenseOperator> {
    params.require_spin_basis(MAX_DENSE_SITES)?;
    let (even, odd, _) = coupling_tables(params)?;
    let he = build_counterpart_spin(params, &even)?;
    let ho = build_counterpart_spin(params, &odd)?;
    let dim = params.dim();
    let data = (0..dim * dim)
        .map(|i| {
            let (row, col) = (i / dim, i % dim);
            let block = if row.count_ones() % 2 == 0 { &he } else { &ho };
            if (row ^ col).count_ones() % 2 == 0 {
                block.data()[i]
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    let mut m = DenseOperator::from_data(dim, data);
    m.hermitian = true;
    Ok(m)
}

/// Pauli-string form of the reduced model
/// `ℋ = −κ(1) Σ_l (τˣ_l τˣ_{l+1} + τʸ_l τʸ_{l+1}) + κ(0) Σ_l τᶻ_l` on the ring.
pub fn reduced_xy_terms(params: &ModelParams) -> Result<PauliSum> {
    params.validate()?;
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    let (k0, k1) = (kappa_approx(params, 0)?, kappa_approx(params, 1)?);
    let n = params.n;
    let mut h = PauliSum::new(n);
    for l in 0..n {
        let r = (l + 1) % n;
        h.add(C64::new(-k1, 0.0), &[(l, Pauli::X), (r, Pauli::X)]);
        h.add(C64::new(-k1, 0.0), &[(l, Pauli::Y), (r, Pauli::Y)]);
        h.add(C64::new(k0, 0.0), &[(l, Pauli::Z)]);
    }
    Ok(h)
}

pub fn build_reduced_xy(params: &ModelParams) -> Result<DenseOperator> {
    let mut m = reduced_xy_terms(params)?.to_dense()?;
    m.hermitian = true;
    Ok(m)
}

/// Single-particle energies `ε_k = −2 Σ_d κ_η(d) cos(kd)` recovered from a
/// coupling table.
pub fn counterpart_energies(table: &CouplingTable) -> Result<Vec<f64>> {
    Ok(momentum_grid(table.n, table.sector)?
        .iter()
        .map(|k| -2.0 * table.kappa.iter().enumerate().map(|(d, x)| x * (k.value * d as f64).cos()).sum::<f64>())
        .collect())
}

/// The 2^N levels of `h_+ ⊕ h_−`, assembled from the coupling tables with
/// `d`-fermion parity filtering.
pub fn counterpart_spectrum(params: &ModelParams) -> Result<Vec<f64>> {
    crate::freeferm::MAX_ENUMERATED_SITES.checked_sub(params.n).ok_or(Error::TooLarge {
        n: params.n,
        limit: crate::freeferm::MAX_ENUMERATED_SITES,
    })?;
    let (even, odd, _) = coupling_tables(params)?;
    let mut out = Vec::with_capacity(params.dim());
    for table in [&even, &odd] {
        let eps: Vec<C64> = counterpart_energies(table)?.into_iter().map(|e| C64::new(e, 0.0)).collect();
        out.extend(assemble_levels(&eps, table.sector, 1).into_iter().map(|l| l.energy.re));
    }
    Ok(out)
}

/// Dense eigenvalues of the τ-spin counterpart with exact couplings.
pub fn counterpart_spin_spectrum(params: &ModelParams) -> Result<SpectrumReport> {
    oracle::spectrum_by_parity(&build_full_counterpart(params)?)
}

pub fn reduced_spectrum(params: &ModelParams) -> Result<SpectrumReport> {
    oracle::spectrum_by_parity(&build_reduced_xy(params)?)
}

/// Allowance, relative to the largest |E|, when testing a computed distance
/// against [`truncation_bound`].
pub const BOUND_ROUNDING: f64 = 1e-12;

/// `max_η Σ_k |J D(k) − κ(0) − 2κ(1) cos k|`: each many-body level of ℋ
/// lies within this distance of the matching level of `H`.
///
/// The bound is attained by the level whose per-mode errors all share a
/// sign, so numerical comparisons against it need a rounding allowance; see
/// [`BOUND_ROUNDING`].
pub fn truncation_bound(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let (k0, k1) = (kappa_approx(params, 0)?, kappa_approx(params, 1)?);
    let mut bound: f64 = 0.0;
    for sector in Sector::BOTH {
        let mut total = 0.0;
        for k in momentum_grid(params.n, sector)? {
            let d = branch_sqrt_at(params.lambda, &k, params.gamma) * params.j;
            total += (d - k0 - 2.0 * k1 * k.cos()).norm();
        }
        bound = bound.max(total);
    }
    Ok(bound)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaGradient {
    pub d: usize,
    pub d_lambda: f64,
    pub d_gamma: f64,
}

impl KappaGradient {
    pub fn magnitude(&self) -> f64 {
        self.d_lambda.hypot(self.d_gamma)
    }
}

fn gradient_terms(params: &ModelParams, sector: Sector, d: usize) -> Result<Vec<(Momentum, f64, f64)>> {
    let grid = momentum_grid(params.n, sector)?;
    let scale = params.j / params.n as f64;
    Ok(grid
        .into_iter()
        .map(|k| {
            let root = branch_sqrt_at(params.lambda, &k, params.gamma).re;
            let c = (k.value * d as f64).cos() * scale / root;
            let s = k.sin();
            (k, c * (params.lambda - k.cos()), -c * params.gamma * s * s)
        })
        .collect())
}

/// `∇κ_η(d) = (J/N) Σ_k cos(kd) [(λ − cos k) ê₁ − γ sin²k ê₂] / D`.
pub fn kappa_gradient(params: &ModelParams, sector: Sector, d: usize) -> Result<KappaGradient> {
    params.validate()?;
    require_unbroken(params)?;
    let terms = gradient_terms(params, sector, d)?;
    let (d_lambda, d_gamma) = terms.iter().fold((0.0, 0.0), |(a, b), t| (a + t.1, b + t.2));
    Ok(KappaGradient { d, d_lambda, d_gamma })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorProbe {
    pub sector: Sector,
    pub magnitude: f64,
    /// Momentum with the largest contribution to the sum.
    pub dominant_k: f64,
    /// Distance from `dominant_k` to the nearest of `±k_c`.
    pub distance_to_kc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeSample {
    pub delta: f64,
    pub lambda: f64,
    /// Largest `|∇κ_η(0)|` over both sectors.
    pub magnitude: f64,
    pub sectors: Vec<SectorProbe>,
}

/// `|∇κ(0)|` at `λ = √(1 + γ²) + δ` for each `δ`, with the momentum that
/// dominates the sum and its distance to `k_c = arccos(1/λ_c)`.
pub fn divergence_probe(n: usize, gamma: f64, deltas: &[f64]) -> Result<Vec<ProbeSample>> {
    let lambda_c = hyperbola(gamma);
    let kc = (1.0 / lambda_c).acos();
    deltas
        .par_iter()
        .map(|&delta| {
            let params = ModelParams::unit(lambda_c + delta, gamma, n)?;
            let mut sectors = Vec::new();
            for sector in Sector::BOTH {
                let g = kappa_gradient(&params, sector, 0)?;
                let terms = gradient_terms(&params, sector, 0)?;
                let (k, _, _) = terms
                    .iter()
                    .max_by(|a, b| a.1.hypot(a.2).total_cmp(&b.1.hypot(b.2)))
                    .copied()
                    .expect("non-empty grid");
                let distance = (k.value - kc).abs().min((k.value - (2.0 * std::f64::consts::PI - kc)).abs());
                sectors.push(SectorProbe { sector, magnitude: g.magnitude(), dominant_k: k.value, distance_to_kc: distance });
            }
            let magnitude = sectors.iter().map(|s| s.magnitude).fold(0.0, f64::max);
            Ok(ProbeSample { delta, lambda: params.lambda, magnitude, sectors })
        })
        .collect()
}

/// Central finite differences of `κ_η(d)` with step `h` in λ and γ.
pub fn kappa_finite_difference(params: &ModelParams, sector: Sector, d: usize, h: f64) -> Result<KappaGradient> {
    let k = |p: ModelParams| kappa_exact(&p, sector, d);
    let d_lambda =
        (k(params.with_lambda(params.lambda + h))? - k(params.with_lambda(params.lambda - h))?) / (2.0 * h);
    let d_gamma = (k(params.with_gamma(params.gamma + h))? - k(params.with_gamma(params.gamma - h))?) / (2.0 * h);
    Ok(KappaGradient { d, d_lambda, d_gamma })
}

/// Largest `|κ_η(d) − κ(d)| / |κ_η(0)|` over `d = 0..=3` and both sectors.
pub fn approximant_error(params: &ModelParams) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for sector in Sector::BOTH {
        let table = coupling_table(params, sector)?;
        for d in 0..=3.min(params.n - 1) {
            worst = worst.max((table.at(d) - kappa_approx(params, d)?).abs() / table.at(0).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::compare_spectra;
    use crate::oracle::oracle_spectrum;
    use proptest::prelude::*;

    fn params(lambda: f64, gamma: f64, n: usize) -> ModelParams {
        ModelParams::unit(lambda, gamma, n).unwrap()
    }

    fn real(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    /// Independent oracle for `κ_η(d)`: the real part of
    /// `(J/N) Σ_k e^{ikd} √r` with the square root taken in the sign of
    /// `λ − cos k` from scratch.
    fn kappa_oracle(lambda: f64, gamma: f64, n: usize, sector: Sector, d: usize) -> f64 {
        let offset = if sector == Sector::Even { 0.5 } else { 0.0 };
        (0..n)
            .map(|m| {
                let k = 2.0 * std::f64::consts::PI * (m as f64 + offset) / n as f64;
                let a = lambda - k.cos();
                let r = a * a - gamma * gamma * k.sin().powi(2);
                a.signum() * r.max(0.0).sqrt() * (k * d as f64).cos()
            })
            .sum::<f64>()
            / n as f64
    }

    #[test]
    fn kappa_examples() {
        for n in [4, 10, 100] {
            let p = params(2.0, 0.0, n);
            for sector in Sector::BOTH {
                assert!((kappa_exact(&p, sector, 0).unwrap() - 2.0).abs() < 1e-12);
                assert!((kappa_exact(&p, sector, 1).unwrap() + 0.5).abs() < 1e-12);
            }
        }
        let p = params(2.0, 0.2, 10);
        for sector in Sector::BOTH {
            let got = kappa_exact(&p, sector, 2).unwrap();
            assert!((got - kappa_oracle(2.0, 0.2, 10, sector, 2)).abs() < 1e-14);
            assert!(got > 0.0 && (got - 0.0025).abs() < 5e-4, "{got}");
        }
        assert!((kappa_approx(&p, 2).unwrap() - 0.0025).abs() < 1e-16);
        assert_eq!(kappa_approx(&params(2.0, 0.0, 10), 0).unwrap(), 2.0);
        for order in [2, 3] {
            assert_eq!(kappa_approx(&params(1.3, 0.0, 10), order).unwrap(), 0.0);
        }
        assert!(kappa_approx(&params(0.0, 0.3, 10), 0).is_err());
        assert!(kappa_approx(&p, 4).is_err());
    }

    #[test]
    fn broken_points_are_rejected() {
        assert!(matches!(kappa_exact(&params(0.5, 0.5, 8), Sector::Even, 0), Err(Error::NotUnbroken { .. })));
        assert!(coupling_table(&params(2f64.sqrt(), 1.0, 8), Sector::Odd).is_err());
    }

    #[test]
    fn ring_aliasing_carries_sector_sign() {
        for &(lambda, gamma) in &[(2.0, 0.1), (3.0, 1.2), (1.5, 0.2)] {
            let p = params(lambda, gamma, 10);
            for sector in Sector::BOTH {
                let t = coupling_table(&p, sector).unwrap();
                assert!(t.aliasing_defect() < 1e-14, "{sector}: {t:?}");
            }
            // The antiperiodic grid flips the sign: κ_+(N−1) = −κ_+(1) ≠ κ_+(1).
            let even = coupling_table(&p, Sector::Even).unwrap();
            assert!((even.at(9) + even.at(1)).abs() < 1e-14 && even.at(1).abs() > 0.1);
        }
    }

    #[test]
    fn tables_match_oracle_sum() {
        for &(lambda, gamma) in &[(2.0, 0.1), (3.0, 1.2), (-2.5, 0.7)] {
            for n in [4, 10, 30] {
                let p = params(lambda, gamma, n);
                for sector in Sector::BOTH {
                    let t = coupling_table(&p, sector).unwrap();
                    for d in 0..n {
                        assert!((t.at(d) - kappa_oracle(lambda, gamma, n, sector, d)).abs() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn counterpart_energies_invert_the_table() {
        let p = params(2.0, 0.3, 8);
        for sector in Sector::BOTH {
            let eps = counterpart_energies(&coupling_table(&p, sector).unwrap()).unwrap();
            for (e, k) in eps.iter().zip(momentum_grid(8, sector).unwrap()) {
                let expect = -2.0 * branch_sqrt_at(2.0, &k, 0.3).re;
                assert!((e - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn counterpart_spin_matrix_is_hermitian() {
        let p = params(2.0, 0.1, 6);
        for sector in Sector::BOTH {
            let m = build_counterpart_spin(&p, &coupling_table(&p, sector).unwrap()).unwrap();
            assert!(m.hermiticity_defect() <= 1e-12);
        }
        assert!(build_reduced_xy(&p).unwrap().hermiticity_defect() <= 1e-12);
        let bad = CouplingTable { n: 6, sector: Sector::Even, kappa: vec![0.0; 6], valid: false };
        assert!(build_counterpart_spin(&p, &bad).is_err());
    }

    #[test]
    fn counterpart_shares_the_spectrum_of_h() {
        for n in [4, 6, 8] {
            for &(lambda, gamma) in &[(2.0, 0.1), (1.5, 0.5), (3.0, 2.0), (-2.0, 0.4)] {
                let p = params(lambda, gamma, n);
                let analytic = real(&counterpart_spectrum(&p).unwrap());
                let oracle = oracle_spectrum(&p).unwrap().eigenvalues;
                assert!(compare_spectra(&analytic, &oracle).unwrap() <= 1e-8, "({lambda},{gamma},{n})");
                let spin = counterpart_spin_spectrum(&p).unwrap().eigenvalues;
                assert!(compare_spectra(&analytic, &spin).unwrap() <= 1e-8, "({lambda},{gamma},{n})");
            }
        }
    }

    #[test]
    fn reduced_model_within_truncation_bound() {
        for n in [4, 6, 8] {
            let p = params(2.0, 0.1, n);
            let b = truncation_bound(&p).unwrap();
            let h = oracle_spectrum(&p).unwrap().eigenvalues;
            let reduced = reduced_spectrum(&p).unwrap().eigenvalues;
            let dist = compare_spectra(&reduced, &h).unwrap();
            let scale = h.iter().map(|e| e.norm()).fold(0.0, f64::max);
            assert!(dist > 0.0 && dist <= b + BOUND_ROUNDING * scale, "n={n}: {dist} vs {b}");
            if n == 8 {
                // At N=8 the extreme level saturates the bound.
                assert!(dist > (1.0 - 1e-9) * b, "{dist} vs {b}");
            }
        }
    }

    #[test]
    fn gradient_examples() {
        let g = kappa_gradient(&params(2.0, 0.0, 10), Sector::Even, 0).unwrap();
        assert!((g.d_lambda - 1.0).abs() < 1e-14 && g.d_gamma == 0.0);
        let far = kappa_gradient(&params(5.0, 0.1, 50), Sector::Odd, 3).unwrap();
        assert!(far.magnitude() <= 1.0);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for &(lambda, gamma) in &[(3.0, 0.5), (2.0, 0.1), (4.0, 1.5)] {
            let p = params(lambda, gamma, 20);
            for sector in Sector::BOTH {
                for d in [0, 1, 2, 5] {
                    let g = kappa_gradient(&p, sector, d).unwrap();
                    let fd = kappa_finite_difference(&p, sector, d, 1e-6).unwrap();
                    let scale = g.magnitude().max(1e-3);
                    assert!((g.d_lambda - fd.d_lambda).abs() <= 1e-4 * scale, "{g:?} {fd:?}");
                    assert!((g.d_gamma - fd.d_gamma).abs() <= 1e-4 * scale, "{g:?} {fd:?}");
                }
            }
        }
    }

    #[test]
    fn probe_grows_towards_the_boundary() {
        let samples = divergence_probe(200, 1.0, &[1e-1, 1e-2, 1e-3, 1e-4]).unwrap();
        for w in samples.windows(2) {
            assert!(w[1].magnitude > w[0].magnitude);
        }
        // Close to the boundary the sum is dominated by the grid point nearest k_c.
        for sp in &samples[3].sectors {
            assert!(sp.distance_to_kc < 2.0 * std::f64::consts::PI / 200.0 + 1e-12, "{sp:?}");
        }
    }

    #[test]
    fn approximants_improve_with_field() {
        // Relative error of κ(0), κ(1) at γ = 0.2, N = 10, over λ ∈ [2, 6].
        for sector in Sector::BOTH {
            let errors: Vec<(f64, f64)> = (0..=40)
                .map(|i| {
                    let p = params(2.0 + 0.1 * i as f64, 0.2, 10);
                    let t = coupling_table(&p, sector).unwrap();
                    let e0 = (t.at(0) - kappa_approx(&p, 0).unwrap()).abs() / t.at(0).abs();
                    let e1 = (t.at(1) - kappa_approx(&p, 1).unwrap()).abs() / t.at(1).abs();
                    (e0, e1)
                })
                .collect();
            for w in errors.windows(2) {
                assert!(w[1].0 < w[0].0 && w[1].1 < w[0].1, "{sector}: {w:?}");
            }
        }
    }

    /// Sweep maximum over λ ∈ [3, 8], γ ∈ {0.5, 1, 1.5}, N = 100 is 0.314
    /// (at λ=3, γ=0.5); frozen with headroom.
    const NU_SQUARED_CONSTANT: f64 = 0.35;

    #[test]
    fn approximant_error_is_second_order_in_nu() {
        for gamma in [0.5, 1.0, 1.5] {
            for i in 0..=10 {
                let lambda = 3.0 + 0.5 * i as f64;
                let p = params(lambda, gamma, 100);
                let nu = gamma * gamma / (lambda * lambda);
                let err = approximant_error(&p).unwrap();
                assert!(err <= nu * nu * NU_SQUARED_CONSTANT, "λ={lambda} γ={gamma}: {err} vs ν²={}", nu * nu);
            }
        }
    }

    proptest! {
        #[test]
        fn gamma_zero_couplings_are_nearest_neighbour(lambda in 1.01..6.0f64, half in 3usize..30) {
            let p = params(lambda, 0.0, 2 * half);
            for sector in Sector::BOTH {
                let t = coupling_table(&p, sector).unwrap();
                prop_assert!((t.at(0) - lambda).abs() < 1e-12);
                prop_assert!((t.at(1) + 0.5).abs() < 1e-12);
                for d in 2..p.n - 1 {
                    prop_assert!(t.at(d).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn couplings_are_even_in_gamma(lambda in 2.3..6.0f64, gamma in 0.0..2.0f64) {
            let p = params(lambda, gamma, 12);
            let q = params(lambda, -gamma, 12);
            prop_assert_eq!(coupling_table(&p, Sector::Odd).unwrap(), coupling_table(&q, Sector::Odd).unwrap());
        }
    }
}
