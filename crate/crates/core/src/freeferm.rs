//! Exact solution of each parity sector by Jordan-Wigner, Fourier and a
//! complex Bogoliubov rotation.
//!
//! In sector η the Hamiltonian is `H_η = Σ_k ε_k (Ā_k A_k − 1/2)` on that
//! sector's momentum grid, with `ε_k = −2J D(λ, k, γ)` and `D` the
//! continued square root of [`crate::model::branch_sqrt`]. A many-body
//! level is an occupation bitmask over the grid; only masks whose fermion
//! parity matches the sector are physical.
//!
//! Eigenvectors are built in the spin basis, pair by pair. For `0 < k < π`
//! the pair `(k, −k)` spans `{|0⟩, c_k†c_{−k}†|0⟩}` (even) and two singly
//! occupied states (odd). The Bogoliubov vacuum of the pair is
//! `cos(θ/2)|0⟩ + i sin(θ/2)|2⟩` and the filled pair is
//! `i sin(θ/2)|0⟩ + cos(θ/2)|2⟩`; the two are not orthogonal once `θ` is
//! complex.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{
    branch_sqrt_at, momentum_grid, radicand, ModelParams, Momentum, Sector, EPS_EXCEPTIONAL,
    MAX_ORACLE_SITES,
};
use crate::oracle::fock;

/// Largest ring whose 2^N levels are enumerated explicitly.
pub const MAX_ENUMERATED_SITES: usize = 22;

/// Radicands below this multiple of `ε (a² + b²)` are rounding noise on an
/// exact zero.
const RADICAND_ROUNDING: f64 = 8.0 * f64::EPSILON;

/// Real parts closer than this (relative to the level scale) count as tied
/// when selecting the ground level.
const GROUND_TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    /// `(λ − cos k)² > γ² sin² k`: real energy.
    PairedReal,
    /// `(λ − cos k)² < γ² sin² k`: purely imaginary energy.
    PairedImaginary,
    /// `k = 0` or `k = π`: no pairing partner.
    Unpaired,
    /// The radicand vanishes (within [`EPS_EXCEPTIONAL`]) with non-zero pairing.
    Exceptional,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleParticleMode {
    pub k: Momentum,
    pub epsilon: C64,
    /// `cos(θ/2)` of the complex Bogoliubov rotation. When the radicand
    /// vanishes to working precision, `(cos_half, sin_half)` instead span the
    /// single defective pair state and satisfy `cos_half² + sin_half² = 0`.
    pub cos_half: C64,
    pub sin_half: C64,
    pub kind: ModeKind,
}

impl SingleParticleMode {
    /// Pair-space amplitudes `(on |0⟩, on c_k†c_{−k}†|0⟩)` of the
    /// Bogoliubov vacuum (`filled = false`) or filled pair.
    fn pair_state(&self, filled: bool) -> (C64, C64) {
        let i = C64::new(0.0, 1.0);
        if filled && !self.is_defective() {
            (i * self.sin_half, self.cos_half)
        } else {
            (self.cos_half, i * self.sin_half)
        }
    }

    /// The pair block is a Jordan block: vacuum and filled pair coincide.
    pub fn is_defective(&self) -> bool {
        self.kind == ModeKind::Exceptional && (self.cos_half * self.cos_half + self.sin_half * self.sin_half).norm() < 0.5
    }
}

/// Bogoliubov data of one momentum.
pub fn single_mode(params: &ModelParams, k: &Momentum) -> SingleParticleMode {
    let j = params.j;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let a = params.lambda - k.cos();
    if k.is_unpaired() {
        return SingleParticleMode {
            k: *k,
            epsilon: C64::new(-2.0 * j * a, 0.0),
            cos_half: one,
            sin_half: zero,
            kind: ModeKind::Unpaired,
        };
    }
    let b = params.gamma * k.sin();
    let d = branch_sqrt_at(params.lambda, k, params.gamma);
    let epsilon = -2.0 * j * d;
    if b == 0.0 {
        return SingleParticleMode { k: *k, epsilon, cos_half: one, sin_half: zero, kind: ModeKind::PairedReal };
    }
    let r = radicand(params.lambda, k.cos(), k.sin(), params.gamma);
    let kind = if r.abs() <= EPS_EXCEPTIONAL {
        ModeKind::Exceptional
    } else if r > 0.0 {
        ModeKind::PairedReal
    } else {
        ModeKind::PairedImaginary
    };
    if r.abs() <= RADICAND_ROUNDING * (a * a + b * b) {
        // The radicand is zero to working precision: a Jordan block whose
        // only eigenvector is (b, −a) in the (|0⟩, |2⟩) basis.
        let norm = a.hypot(b);
        return SingleParticleMode {
            k: *k,
            epsilon: zero,
            cos_half: C64::new(b / norm, 0.0),
            sin_half: C64::new(0.0, a / norm),
            kind,
        };
    }
    // cos θ = a / D; the tan θ identity fixes sin(θ/2) = i b / (2 D cos(θ/2)).
    let cos_theta = C64::new(a, 0.0) / d;
    let cos_half = ((one + cos_theta) * 0.5).sqrt();
    let sin_half = C64::new(0.0, b) / (2.0 * d * cos_half);
    SingleParticleMode { k: *k, epsilon, cos_half, sin_half, kind }
}

/// Modes of one sector in grid order.
pub fn sector_modes(params: &ModelParams, sector: Sector) -> Result<Vec<SingleParticleMode>> {
    params.validate()?;
    Ok(momentum_grid(params.n, sector)?.iter().map(|k| single_mode(params, k)).collect())
}

/// Fermion parity of the Bogoliubov vacuum in each sector. The vacuum is
/// a superposition of `|0⟩` and doubly occupied pairs, so it is even in both
/// sectors; [`calibrate_vacuum_parity`] re-derives this from the oracle.
pub fn vacuum_parity(_sector: Sector) -> i32 {
    1
}

/// One many-body eigenvalue of `H_η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManyBodyLevel {
    pub sector: Sector,
    /// Bit `m` set when mode `m` of the sector grid is occupied.
    pub occupation: u64,
    pub energy: C64,
    /// `(−1)^popcount × vacuum parity`; equals η for retained levels.
    pub parity: i32,
}

fn mask_parity(mask: u64, vacuum: i32) -> i32 {
    if mask.count_ones() % 2 == 0 {
        vacuum
    } else {
        -vacuum
    }
}

/// Levels `Σ_occ ε − ½ Σ ε` over every mask with the given parity.
pub(crate) fn assemble_levels(energies: &[C64], sector: Sector, vacuum: i32) -> Vec<ManyBodyLevel> {
    let n = energies.len();
    let offset: C64 = -0.5 * energies.iter().sum::<C64>();
    let eta = sector.eta();
    (0..1u64 << n)
        .into_par_iter()
        .filter(|&mask| mask_parity(mask, vacuum) == eta)
        .map(|mask| {
            let mut e = offset;
            let mut rest = mask;
            while rest != 0 {
                let m = rest.trailing_zeros() as usize;
                e += energies[m];
                rest &= rest - 1;
            }
            ManyBodyLevel { sector, occupation: mask, energy: e, parity: eta }
        })
        .collect()
}

fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATED_SITES {
        return Err(Error::TooLarge { n, limit: MAX_ENUMERATED_SITES });
    }
    Ok(())
}

/// The 2^(N−1) levels of `H_η`.
pub fn sector_spectrum(params: &ModelParams, sector: Sector) -> Result<Vec<ManyBodyLevel>> {
    params.validate()?;
    check_enumerable(params.n)?;
    let energies: Vec<C64> = sector_modes(params, sector)?.iter().map(|m| m.epsilon).collect();
    Ok(assemble_levels(&energies, sector, vacuum_parity(sector)))
}

/// Both sectors' levels, even sector first.
pub fn many_body_levels(params: &ModelParams) -> Result<Vec<ManyBodyLevel>> {
    let mut levels = sector_spectrum(params, Sector::Even)?;
    levels.extend(sector_spectrum(params, Sector::Odd)?);
    Ok(levels)
}

/// The full multiset of 2^N energies.
pub fn many_body_spectrum(params: &ModelParams) -> Result<Vec<C64>> {
    Ok(many_body_levels(params)?.into_iter().map(|l| l.energy).collect())
}

/// Ground level with a flag for complex energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundLevel {
    pub level: ManyBodyLevel,
    pub is_complex: bool,
}

/// Lowest real part; among ties the largest imaginary part (so `E` is
/// preferred over `E*`); then the lowest mask.
pub fn select_ground(levels: &[ManyBodyLevel]) -> Option<ManyBodyLevel> {
    let scale = levels.iter().map(|l| l.energy.norm()).fold(1.0, f64::max);
    let tol = GROUND_TIE * scale;
    let min_re = levels.iter().map(|l| l.energy.re).fold(f64::INFINITY, f64::min);
    let tied = levels.iter().filter(|l| l.energy.re <= min_re + tol);
    let max_im = tied.clone().map(|l| l.energy.im).fold(f64::NEG_INFINITY, f64::max);
    tied.filter(|l| l.energy.im >= max_im - tol).min_by_key(|l| (l.sector, l.occupation)).copied()
}

/// Threshold on `|Im E|` above which a ground energy is reported complex.
pub const COMPLEX_FLAG: f64 = 1e-8;

pub fn ground_state_energy(params: &ModelParams) -> Result<GroundLevel> {
    let levels = many_body_levels(params)?;
    let level = select_ground(&levels).expect("non-empty spectrum");
    Ok(GroundLevel { level, is_complex: level.energy.im.abs() > COMPLEX_FLAG })
}

pub fn sector_ground_level(params: &ModelParams, sector: Sector) -> Result<ManyBodyLevel> {
    Ok(select_ground(&sector_spectrum(params, sector)?).expect("non-empty sector"))
}

/// Amplitudes on the 2^N spin basis (bit `j` set = fermion on site `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub n: usize,
    pub amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Unit norm and the largest amplitude real positive.
    pub fn normalized(mut self) -> StateVector {
        let norm = self.norm();
        let (_, pivot) = self
            .amplitudes
            .iter()
            .enumerate()
            .fold((0.0, C64::new(1.0, 0.0)), |(best, p), (_, a)| if a.norm() > best * (1.0 + 1e-12) { (a.norm(), *a) } else { (best, p) });
        let phase = if pivot.norm() > 0.0 { pivot.conj() / pivot.norm() } else { C64::new(1.0, 0.0) };
        for a in &mut self.amplitudes {
            *a *= phase / norm;
        }
        self
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

/// How singly occupied pairs are represented when building a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Singles {
    /// `c_k†|0⟩` or `c_{−k}†|0⟩` as the mask says.
    AsMasked,
    /// `(c_k† + c_{−k}†)|0⟩/√2`, degenerate with either single and mapped to
    /// itself (up to phase) by RT.
    Symmetrized,
}

fn build_state(params: &ModelParams, sector: Sector, occupation: u64, singles: Singles) -> Result<StateVector> {
    params.validate()?;
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    let n = params.n;
    let modes = sector_modes(params, sector)?;
    let occupied = |m: usize| occupation >> m & 1 == 1;
    let mut v = fock::vacuum(n);
    for mode in &modes {
        let k = mode.k;
        let m = k.index;
        if mode.kind == ModeKind::Unpaired {
            if occupied(m) {
                v = fock::create_momentum(&v, n, k.value);
            }
            continue;
        }
        if !k.is_pair_head() {
            continue;
        }
        let partner = k.partner();
        let (head, tail) = (occupied(m), occupied(partner.index));
        v = match (head, tail) {
            (false, false) | (true, true) => {
                let (empty, pair) = mode.pair_state(head);
                let doubled = fock::create_momentum(&fock::create_momentum(&v, n, partner.value), n, k.value);
                v.iter().zip(&doubled).map(|(x, y)| empty * x + pair * y).collect()
            }
            _ => match singles {
                Singles::AsMasked => fock::create_momentum(&v, n, if head { k.value } else { partner.value }),
                Singles::Symmetrized => {
                    let a = fock::create_momentum(&v, n, k.value);
                    let b = fock::create_momentum(&v, n, partner.value);
                    let h = std::f64::consts::FRAC_1_SQRT_2;
                    a.iter().zip(&b).map(|(x, y)| (x + y) * h).collect()
                }
            },
        };
    }
    Ok(StateVector { n, amplitudes: v }.normalized())
}

/// Right eigenvector of `H_η` for a given occupation mask.
pub fn eigenvector(params: &ModelParams, sector: Sector, occupation: u64) -> Result<StateVector> {
    build_state(params, sector, occupation, Singles::AsMasked)
}

/// A sector ground level with its eigenvector.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub level: ManyBodyLevel,
    pub vector: StateVector,
}

pub fn ground_state(params: &ModelParams, sector: Sector) -> Result<GroundState> {
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    let level = sector_ground_level(params, sector)?;
    let vector = build_state(params, sector, level.occupation, Singles::Symmetrized)?;
    Ok(GroundState { level, vector })
}

/// Ground-state vector of `H_η`: the Bogoliubov product state of the
/// sector's ground level.
pub fn ground_state_vector(params: &ModelParams, sector: Sector) -> Result<StateVector> {
    Ok(ground_state(params, sector)?.vector)
}

/// Outcome of matching both vacuum-parity assignments against the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityCalibration {
    pub n: usize,
    /// Vacuum parity per sector (even, odd) that reproduces the oracle.
    pub vacuum: (i32, i32),
    /// Matched distance for each candidate `(even, odd)` assignment.
    pub candidates: Vec<((i32, i32), f64)>,
}

/// Fix the vacuum parity of each sector by comparing the four candidate
/// assignments with the oracle at the Hermitian point `λ = 2, γ = 0`.
pub fn calibrate_vacuum_parity(n: usize) -> Result<ParityCalibration> {
    let params = ModelParams::unit(2.0, 0.0, n)?;
    let blocks = crate::oracle::parity_filter(&crate::oracle::build_hamiltonian(&params)?);
    let mut candidates = Vec::new();
    for ve in [1, -1] {
        for vo in [1, -1] {
            let mut worst: f64 = 0.0;
            for (sector, vac) in [(Sector::Even, ve), (Sector::Odd, vo)] {
                let energies: Vec<C64> = sector_modes(&params, sector)?.iter().map(|m| m.epsilon).collect();
                let analytic: Vec<C64> = assemble_levels(&energies, sector, vac).iter().map(|l| l.energy).collect();
                let oracle = crate::oracle::dense_eigenvalues(blocks.block(sector))?.eigenvalues;
                worst = worst.max(crate::matching::compare_spectra(&analytic, &oracle)?);
            }
            candidates.push(((ve, vo), worst));
        }
    }
    let best = candidates.iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("four candidates");
    Ok(ParityCalibration { n, vacuum: best.0, candidates: candidates.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{build_hamiltonian, hamiltonian_terms, parity_filter, residual_of};
    use std::f64::consts::PI;

    fn params(lambda: f64, gamma: f64, n: usize) -> ModelParams {
        ModelParams::unit(lambda, gamma, n).unwrap()
    }

    fn mode_at(p: &ModelParams, sector: Sector, index: usize) -> SingleParticleMode {
        single_mode(p, &Momentum::new(p.n, sector, index))
    }

    #[test]
    fn single_mode_examples() {
        // (λ=2, γ=0, k=π/2): ε = −4.
        let m = mode_at(&params(2.0, 0.0, 4), Sector::Odd, 1);
        assert!((m.k.value - PI / 2.0).abs() < 1e-15);
        assert!((m.epsilon - C64::new(-4.0, 0.0)).norm() < 1e-15);
        assert_eq!(m.kind, ModeKind::PairedReal);
        // (λ=0, γ=1, k=π/2): ε = −2i.
        let m = mode_at(&params(0.0, 1.0, 4), Sector::Odd, 1);
        assert!((m.epsilon - C64::new(0.0, -2.0)).norm() < 1e-15);
        assert_eq!(m.kind, ModeKind::PairedImaginary);
        // (λ=1, γ=0.5, k=0): unpaired with ε = −2J(λ−1) = 0.
        let m = mode_at(&params(1.0, 0.5, 4), Sector::Odd, 0);
        assert_eq!(m.kind, ModeKind::Unpaired);
        assert_eq!(m.epsilon, C64::new(0.0, 0.0));
        // λ=0, γ=1 at k=π/4 sits on the exceptional line |cos k| = |sin k|.
        let m = mode_at(&params(0.0, 1.0, 4), Sector::Even, 0);
        assert_eq!(m.kind, ModeKind::Exceptional);
        assert!(m.is_defective() && m.epsilon == C64::new(0.0, 0.0));
        assert!((m.cos_half * m.cos_half + m.sin_half * m.sin_half).norm() < 1e-15);
        // Inside the tolerance band but above rounding: regular rotation, tiny energy.
        let near = ModelParams::unit(2f64.sqrt() + 1e-12, 1.0, 8).unwrap();
        let m = mode_at(&near, Sector::Odd, 1);
        assert_eq!(m.kind, ModeKind::Exceptional);
        assert!(!m.is_defective() && m.epsilon.norm() > 1e-7);
        assert!((m.cos_half * m.cos_half + m.sin_half * m.sin_half - 1.0).norm() < 1e-6);
    }

    #[test]
    fn half_angle_identities() {
        for &(lambda, gamma) in &[(2.0, 0.1), (0.5, 0.5), (0.0, 1.7), (1.2, 0.3), (-0.7, 2.0), (0.3, 0.0)] {
            let p = params(lambda, gamma, 10);
            for sector in Sector::BOTH {
                for m in sector_modes(&p, sector).unwrap() {
                    if matches!(m.kind, ModeKind::Unpaired | ModeKind::Exceptional) {
                        continue;
                    }
                    let (c, s) = (m.cos_half, m.sin_half);
                    assert!((c * c + s * s - 1.0).norm() < 1e-12, "{m:?}");
                    let a = lambda - m.k.cos();
                    let b = gamma * m.k.sin();
                    if a.abs() > 1e-8 && (c * c - s * s).norm() > 1e-12 {
                        let tan = 2.0 * s * c / (c * c - s * s);
                        let expect = C64::new(0.0, b / a);
                        assert!((tan - expect).norm() < 1e-10 * (1.0 + expect.norm()), "{tan} vs {expect}");
                    }
                    // Real modes: cos real, sin imaginary; imaginary modes: sin = ±conj(cos).
                    match m.kind {
                        ModeKind::PairedReal => {
                            assert!(c.im.abs() < 1e-14 && s.re.abs() < 1e-14);
                        }
                        ModeKind::PairedImaginary => {
                            assert!((s - c.conj()).norm() < 1e-12 || (s + c.conj()).norm() < 1e-12);
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn kinds_follow_radicand() {
        let p = params(0.5, 0.5, 12);
        for sector in Sector::BOTH {
            for m in sector_modes(&p, sector).unwrap() {
                let r = radicand(p.lambda, m.k.cos(), m.k.sin(), p.gamma);
                let expect = if m.k.sin() == 0.0 {
                    ModeKind::Unpaired
                } else if r.abs() <= EPS_EXCEPTIONAL {
                    ModeKind::Exceptional
                } else if r > 0.0 {
                    ModeKind::PairedReal
                } else {
                    ModeKind::PairedImaginary
                };
                assert_eq!(m.kind, expect);
                if m.is_defective() {
                    assert_eq!(m.epsilon, C64::new(0.0, 0.0));
                } else if m.kind != ModeKind::Unpaired {
                    let d = branch_sqrt_at(p.lambda, &m.k, p.gamma);
                    assert_eq!(m.epsilon, -2.0 * p.j * d);
                }
            }
        }
    }

    #[test]
    fn sector_counts_and_parity() {
        for n in [4, 6, 8] {
            let p = params(0.9, 0.7, n);
            for sector in Sector::BOTH {
                let levels = sector_spectrum(&p, sector).unwrap();
                assert_eq!(levels.len(), 1 << (n - 1));
                for l in &levels {
                    assert_eq!(l.parity, sector.eta());
                    assert_eq!(mask_parity(l.occupation, vacuum_parity(sector)), sector.eta());
                }
            }
            assert_eq!(many_body_spectrum(&p).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn polarized_level_at_strong_field() {
        let levels = sector_spectrum(&params(2.0, 0.0, 4), Sector::Even).unwrap();
        let g = select_ground(&levels).unwrap();
        assert!((g.energy - C64::new(-8.0, 0.0)).norm() < 1e-14);
        assert_eq!(g.occupation, 0b1111);
    }

    #[test]
    fn hermitian_xx_point_symmetric_and_real() {
        let e = many_body_spectrum(&params(0.0, 0.0, 4)).unwrap();
        assert!(e.iter().all(|z| z.im == 0.0));
        let mut re: Vec<f64> = e.iter().map(|z| z.re).collect();
        let mut neg: Vec<f64> = re.iter().map(|x| -x).collect();
        re.sort_by(f64::total_cmp);
        neg.sort_by(f64::total_cmp);
        for (a, b) in re.iter().zip(&neg) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn large_anisotropy_is_nearly_imaginary() {
        // λ = 0: every paired mode is imaginary; unpaired k = 0, π add ±2J real offsets
        // that cancel in the odd sector's allowed levels only pairwise, so test pairing E ↔ −E.
        let e = many_body_spectrum(&params(0.0, 5.0, 6)).unwrap();
        for z in &e {
            assert!(e.iter().any(|w| (w + z).norm() < 1e-8));
        }
    }

    #[test]
    fn spectrum_closed_under_conjugation() {
        let e = many_body_spectrum(&params(0.5, 0.7, 6)).unwrap();
        for z in &e {
            assert!(e.iter().any(|w| (w - z.conj()).norm() < 1e-12));
        }
        assert!(e.iter().any(|z| z.im.abs() > 1e-3));
    }

    #[test]
    fn every_eigenvector_has_small_residual() {
        for &(lambda, gamma) in &[(0.5, 0.7), (2.0, 0.1), (1.3, 1.9), (0.5, 0.2), (0.0, 0.0), (1.0, 0.4)] {
            let p = params(lambda, gamma, 6);
            let h = hamiltonian_terms(&p).unwrap();
            for sector in Sector::BOTH {
                for level in sector_spectrum(&p, sector).unwrap() {
                    let v = eigenvector(&p, sector, level.occupation).unwrap();
                    assert!(v.is_finite() && v.norm() > 0.5);
                    let r = residual_of(&h.apply(&v.amplitudes), &v.amplitudes, level.energy);
                    assert!(r < 1e-10, "({lambda},{gamma}) {sector} mask {:b}: residual {r}", level.occupation);
                    // Support lies in the sector's parity block.
                    for (b, a) in v.amplitudes.iter().enumerate() {
                        if a.norm() > 1e-14 {
                            assert_eq!(Sector::of_popcount(b.count_ones()), sector);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exceptional_mode_state_is_the_defective_eigenvector() {
        // N = 6, λ = γ = 0.5: the even-grid mode k = π/2 sits on the exceptional line.
        let p = params(0.5, 0.5, 6);
        let m = mode_at(&p, Sector::Even, 1);
        assert_eq!(m.kind, ModeKind::Exceptional);
        let h = hamiltonian_terms(&p).unwrap();
        let level = sector_spectrum(&p, Sector::Even).unwrap()[0];
        let v = eigenvector(&p, Sector::Even, level.occupation).unwrap();
        let r = residual_of(&h.apply(&v.amplitudes), &v.amplitudes, level.energy);
        // The split of the radical at a rounded-zero radicand bounds the residual.
        assert!(r < 1e-6, "{r}");
    }

    #[test]
    fn ground_vector_residuals() {
        for &(lambda, gamma) in &[(0.5, 0.2), (2.0, 0.1), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (1.5, 1.5)] {
            for n in [4, 6, 8] {
                let p = params(lambda, gamma, n);
                let h = hamiltonian_terms(&p).unwrap();
                for sector in Sector::BOTH {
                    let g = ground_state(&p, sector).unwrap();
                    let r = residual_of(&h.apply(&g.vector.amplitudes), &g.vector.amplitudes, g.level.energy);
                    assert!(r <= 1e-8, "({lambda},{gamma},{n}) {sector}: {r}");
                }
            }
        }
    }

    #[test]
    fn ground_vector_is_polarized_at_strong_field() {
        let v = ground_state_vector(&params(2.0, 0.0, 6), Sector::Even).unwrap();
        for (b, a) in v.amplitudes.iter().enumerate() {
            let expect = if b == 0b111111 { 1.0 } else { 0.0 };
            assert!((a - C64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn ground_vector_rejects_large_chains() {
        assert!(ground_state_vector(&params(1.0, 0.2, 18), Sector::Even).is_err());
    }

    #[test]
    fn sector_spectrum_matches_oracle_block() {
        for &(lambda, gamma) in &[(0.5, 0.3), (2.0, 0.1), (0.5, 0.5), (0.0, 1.0)] {
            // (0.5, 0.5) and (0, 1) carry exceptional modes; their Jordan blocks
            // need the double-double oracle.
            let p = params(lambda, gamma, 4);
            let blocks = parity_filter(&build_hamiltonian(&p).unwrap());
            for sector in Sector::BOTH {
                let analytic: Vec<C64> = sector_spectrum(&p, sector).unwrap().iter().map(|l| l.energy).collect();
                let oracle = crate::oracle::dense_eigenvalues_extended(blocks.block(sector)).unwrap().eigenvalues;
                let d = crate::matching::compare_spectra(&analytic, &oracle).unwrap();
                assert!(d < 1e-10, "({lambda},{gamma}) {sector}: {d}");
            }
        }
    }

    #[test]
    fn calibration_confirms_even_vacuum() {
        for n in [4, 6, 8] {
            let cal = calibrate_vacuum_parity(n).unwrap();
            assert_eq!(cal.vacuum, (vacuum_parity(Sector::Even), vacuum_parity(Sector::Odd)));
            for (assignment, dist) in &cal.candidates {
                if *assignment != cal.vacuum {
                    assert!(*dist > 0.1, "{assignment:?} also fits");
                }
            }
        }
    }
}
