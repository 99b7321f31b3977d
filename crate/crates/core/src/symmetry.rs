//! The antilinear rotation-time operator `RT = R·K`.
//!
//! `R = exp(−iπ/4 Σ_j σᶻ_j)` is diagonal in the spin basis and `K` is
//! complex conjugation of amplitudes in that basis. On fermions
//! `RT c_k† (RT)⁻¹ = i c_{−k}†`, so `RT` maps a right eigenvector of energy
//! `E` to one of energy `E*`: eigenstates are RT symmetric exactly when their
//! energy is real and non-degenerate with `E*`.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::freeferm::{self, ManyBodyLevel, StateVector};
use crate::model::{momentum_grid, ModelParams, Sector, MAX_ORACLE_SITES};
use crate::oracle::{fock, rotation_phases, DenseOperator};

/// Ray-distance threshold below which a state counts as RT symmetric.
pub const VERDICT_TOL: f64 = 1e-6;

/// `R · conj(v)`.
pub fn rt_apply(n: usize, v: &StateVector) -> StateVector {
    let phases = rotation_phases(n);
    let amplitudes = v.amplitudes.iter().zip(&phases).map(|(a, p)| p * a.conj()).collect();
    StateVector { n: v.n, amplitudes }
}

/// `R conj(M) R⁻¹`; with diagonal `R` this is `R_a conj(M_ab) conj(R_b)`.
pub fn rt_conjugate(m: &DenseOperator) -> DenseOperator {
    let dim = m.dim();
    let phases = rotation_phases(dim.trailing_zeros() as usize);
    let data = m
        .data()
        .iter()
        .enumerate()
        .map(|(i, x)| phases[i / dim] * x.conj() * phases[i % dim].conj())
        .collect();
    DenseOperator::from_data(dim, data)
}

/// `‖R conj(M) R⁻¹ − M‖_max / ‖M‖_max`.
pub fn check_rt_commutation(m: &DenseOperator) -> f64 {
    relative_defect(&rt_conjugate(m), m)
}

/// `‖R conj(M) R⁻¹ + M‖_max / ‖M‖_max`, zero when `RT` reverses the sign of `M`.
pub fn check_rt_anticommutation(m: &DenseOperator) -> f64 {
    relative_defect(&rt_conjugate(m), &m.scaled(C64::new(-1.0, 0.0)))
}

/// How `RT` acts on the eigenstates of the large-anisotropy limit `H_∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReversalReport {
    /// [`check_rt_commutation`] of `H_∞`.
    pub commutation_defect: f64,
    /// [`check_rt_anticommutation`] of `H_∞`.
    pub sign_flip_defect: f64,
    /// `‖M†+M‖_max / ‖M‖_max`: zero for a purely imaginary spectrum.
    pub anti_hermiticity_defect: f64,
    /// `max_n ‖H_∞ RTψ_n + E_n RTψ_n‖ / max|E|` over a full eigenbasis.
    pub eigen_reversal_defect: f64,
}

/// `H_∞ RT|ψ_n⟩ = −E_n RT|ψ_n⟩`. `H_∞` is normal, so the Schur vectors of
/// each parity block form an eigenbasis.
pub fn h_infinity_reversal(params: &ModelParams) -> Result<ReversalReport> {
    let m = crate::oracle::build_h_infinity(params)?;
    let n = params.n;
    let dim = m.dim();
    let scale = m.max_abs();
    let adjoint_sum = (0..dim * dim)
        .map(|i| (m.data()[i] + m.data()[(i % dim) * dim + i / dim].conj()).norm())
        .fold(0.0, f64::max);
    let blocks = crate::oracle::parity_filter(&m);
    let mut worst: f64 = 0.0;
    let mut spectral: f64 = 0.0;
    for sector in Sector::BOTH {
        let block = blocks.block(sector);
        let states = blocks.states(sector);
        let d = block.dim();
        let schur = crate::oracle::eigen::schur(block.data().to_vec(), d, true)?;
        let z = schur.z.expect("vectors requested");
        for (col, e) in schur.eigenvalues.iter().enumerate() {
            spectral = spectral.max(e.norm());
            let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
            for (row, &b) in states.iter().enumerate() {
                amplitudes[b] = z[row * d + col];
            }
            let image = rt_apply(n, &StateVector { n, amplitudes });
            worst = worst.max(crate::oracle::residual(&m, &image.amplitudes, -e));
        }
    }
    Ok(ReversalReport {
        commutation_defect: check_rt_commutation(&m),
        sign_flip_defect: check_rt_anticommutation(&m),
        anti_hermiticity_defect: if scale > 0.0 { adjoint_sum / scale } else { adjoint_sum },
        eigen_reversal_defect: if spectral > 0.0 { worst / spectral } else { worst },
    })
}

fn relative_defect(a: &DenseOperator, b: &DenseOperator) -> f64 {
    let scale = b.max_abs();
    if scale == 0.0 {
        return a.max_abs();
    }
    a.max_abs_diff(b) / scale
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RTVerdict {
    pub is_symmetric: bool,
    /// `min_φ ‖RT v − e^{iφ} v‖` for unit `v`.
    pub overlap_defect: f64,
}

pub fn rt_verdict(v: &StateVector) -> RTVerdict {
    let unit = v.clone().normalized();
    let image = rt_apply(unit.n, &unit);
    let overlap = unit.inner(&image).norm().min(1.0);
    let overlap_defect = (2.0 - 2.0 * overlap).max(0.0).sqrt();
    RTVerdict { is_symmetric: overlap_defect <= VERDICT_TOL, overlap_defect }
}

/// Verdict on the ground level of the whole chain.
#[derive(Debug, Clone)]
pub struct GroundVerdict {
    pub level: ManyBodyLevel,
    pub verdict: RTVerdict,
}

pub fn ground_state_rt_verdict(params: &ModelParams) -> Result<GroundVerdict> {
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    let ground = freeferm::ground_state_energy(params)?.level;
    let state = freeferm::ground_state(params, ground.sector)?;
    Ok(GroundVerdict { level: state.level, verdict: rt_verdict(&state.vector) })
}

/// Largest distance from `E*` to the nearest level, over levels with
/// `|Im E| > 10⁻⁸`. Zero when every complex level has its conjugate partner.
pub fn conjugate_pairing_report(spectrum: &[C64]) -> f64 {
    spectrum
        .iter()
        .filter(|e| e.im.abs() > 1e-8)
        .map(|e| spectrum.iter().map(|w| (w - e.conj()).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// `(RT)² = R·R*` as a diagonal: returns the common phase and the largest
/// deviation of any entry from it.
pub fn rt_square_phase(n: usize) -> (C64, f64) {
    let square: Vec<C64> = rotation_phases(n).iter().map(|p| p * p.conj()).collect();
    let phase = square[0];
    let spread = square.iter().map(|s| (s - phase).norm()).fold(0.0, f64::max);
    (phase, spread)
}

fn number_operator(n: usize, k: f64) -> DenseOperator {
    let dim = 1usize << n;
    let mut data = vec![C64::new(0.0, 0.0); dim * dim];
    for col in 0..dim {
        let mut e = vec![C64::new(0.0, 0.0); dim];
        e[col] = C64::new(1.0, 0.0);
        let image = fock::create_momentum(&fock::annihilate_momentum(&e, n, k), n, k);
        for (row, x) in image.into_iter().enumerate() {
            data[row * dim + col] = x;
        }
    }
    DenseOperator::from_data(dim, data)
}

/// `Π_k [1 − √2 e^{−iπ/4} n_k]` over one sector's grid.
fn momentum_product(n: usize, sector: Sector) -> Result<DenseOperator> {
    let factor = C64::new(1.0, 0.0) - 2f64.sqrt() * C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
    let dim = 1usize << n;
    let mut out = DenseOperator::identity(dim);
    for k in momentum_grid(n, sector)? {
        let nk = number_operator(n, k.value);
        let data = DenseOperator::identity(dim)
            .data()
            .iter()
            .zip(nk.data())
            .map(|(i, x)| i + (factor - 1.0) * x)
            .collect();
        out = out.matmul(&DenseOperator::from_data(dim, data));
    }
    Ok(out)
}

/// Comparison of the site-space `R` with its momentum-space product form
/// `(−i)^{N/2} Π_k [1 − √2 e^{−iπ/4} n_k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumRotationReport {
    /// Each parity block uses the product over its own grid.
    pub sector_projected_defect: f64,
    /// The product runs over the momenta of both grids at once.
    pub both_grids_defect: f64,
}

/// Largest size for the dense momentum-space construction.
pub const MAX_MOMENTUM_ROTATION_SITES: usize = 8;

pub fn momentum_rotation_report(n: usize) -> Result<MomentumRotationReport> {
    ModelParams::unit(0.0, 0.0, n)?.require_spin_basis(MAX_MOMENTUM_ROTATION_SITES)?;
    let dim = 1usize << n;
    let prefactor = C64::new(0.0, -1.0).powu((n / 2) as u32);
    let even = momentum_product(n, Sector::Even)?;
    let odd = momentum_product(n, Sector::Odd)?;
    let r = DenseOperator::diagonal(&rotation_phases(n));
    let projected: Vec<C64> = (0..dim * dim)
        .map(|i| {
            let row = i / dim;
            let block = if row.count_ones() % 2 == 0 { &even } else { &odd };
            prefactor * block.data()[i]
        })
        .collect();
    let both = even.matmul(&odd).scaled(prefactor);
    Ok(MomentumRotationReport {
        sector_projected_defect: DenseOperator::from_data(dim, projected).max_abs_diff(&r),
        both_grids_defect: both.max_abs_diff(&r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{build_h_infinity, build_hamiltonian, oracle_spectrum};
    use crate::phasemap::{classify, PhaseClass};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn basis(n: usize, b: usize, amp: C64) -> StateVector {
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << n];
        amplitudes[b] = amp;
        StateVector { n, amplitudes }
    }

    #[test]
    fn rt_apply_examples() {
        let n = 4;
        let down = rt_apply(n, &basis(n, 0b1111, C64::new(1.0, 0.0)));
        let expect = C64::from_polar(1.0, std::f64::consts::PI * n as f64 / 4.0);
        assert!((down.amplitudes[0b1111] - expect).norm() < 1e-15);
        // Σs = 0 configurations are fixed.
        let balanced = rt_apply(n, &basis(n, 0b0101, C64::new(0.3, 0.0)));
        assert!((balanced.amplitudes[0b0101] - C64::new(0.3, 0.0)).norm() < 1e-15);
        let rotated = rt_apply(n, &basis(n, 0b0101, C64::new(0.0, 0.3)));
        assert!((rotated.amplitudes[0b0101] - C64::new(0.0, -0.3)).norm() < 1e-15);
    }

    #[test]
    fn hamiltonian_commutes_with_rt() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let n = [4, 6, 8][rng.gen_range(0..3)];
            let p = ModelParams::new(rng.gen_range(0.2..2.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), n).unwrap();
            assert!(check_rt_commutation(&build_hamiltonian(&p).unwrap()) <= 1e-12);
        }
    }

    #[test]
    fn rt_reverses_h_infinity_eigenvalues() {
        for n in [4, 6, 8] {
            let report = h_infinity_reversal(&ModelParams::unit(0.0, 1.3, n).unwrap()).unwrap();
            assert!(report.commutation_defect <= 1e-12, "{report:?}");
            assert!(report.anti_hermiticity_defect <= 1e-12, "{report:?}");
            assert!(report.eigen_reversal_defect <= 1e-12, "{report:?}");
            // H_∞ commutes with RT entrywise; it is not mapped to −H_∞.
            assert!((report.sign_flip_defect - 2.0).abs() < 1e-12, "{report:?}");
        }
        assert!(check_rt_anticommutation(&build_h_infinity(&ModelParams::unit(0.0, 1.0, 4).unwrap()).unwrap()) > 1.0);
    }

    #[test]
    fn random_matrix_is_not_rt_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let data = (0..256).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        assert!(check_rt_commutation(&DenseOperator::from_data(16, data)) > 0.1);
    }

    #[test]
    fn rt_is_an_involution() {
        for n in [4, 6, 8, 10] {
            let (phase, spread) = rt_square_phase(n);
            assert!((phase - 1.0).norm() < 1e-15 && spread < 1e-15);
        }
    }

    #[test]
    fn rt_maps_momentum_creation_to_partner() {
        let n = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = StateVector {
            n,
            amplitudes: (0..1 << n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        };
        for sector in Sector::BOTH {
            for k in momentum_grid(n, sector).unwrap() {
                // RT c_k† v = i c_{−k}† RT v
                let lhs = rt_apply(n, &StateVector { n, amplitudes: fock::create_momentum(&v.amplitudes, n, k.value) });
                let rhs = fock::create_momentum(&rt_apply(n, &v).amplitudes, n, k.partner().value);
                for (a, b) in lhs.amplitudes.iter().zip(&rhs) {
                    assert!((a - C64::new(0.0, 1.0) * b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn momentum_rotation_holds_per_sector_only() {
        for n in [4, 6, 8] {
            let report = momentum_rotation_report(n).unwrap();
            assert!(report.sector_projected_defect < 1e-12, "{n}: {report:?}");
            // Over both grids each occupied fermion picks up i twice: the
            // product becomes (−i)^{N/2}·(−1)^{N_p}, not R.
            assert!(report.both_grids_defect > 0.5, "{n}: {report:?}");
        }
    }

    #[test]
    fn ground_verdict_examples() {
        let v = ground_state_rt_verdict(&ModelParams::unit(2.0, 0.1, 4).unwrap()).unwrap();
        assert!(v.verdict.is_symmetric, "{v:?}");
        let v = ground_state_rt_verdict(&ModelParams::unit(0.0, 1.0, 4).unwrap()).unwrap();
        assert!(!v.verdict.is_symmetric, "{v:?}");
        assert!(v.level.energy.im.abs() > 1e-6);
        for lambda in [0.0, 0.3, 1.0, 1.7] {
            let v = ground_state_rt_verdict(&ModelParams::unit(lambda, 0.0, 6).unwrap()).unwrap();
            assert!(v.verdict.is_symmetric, "λ={lambda}: {v:?}");
        }
    }

    #[test]
    fn verdict_tracks_ground_energy() {
        for n in [4, 6, 8] {
            for li in 0..6 {
                for gi in 0..6 {
                    let p = ModelParams::unit(0.45 * li as f64, 0.4 * gi as f64 + 0.01, n).unwrap();
                    let class = classify(&p).unwrap().classification;
                    let v = ground_state_rt_verdict(&p).unwrap();
                    let im = v.level.energy.im.abs();
                    if class == PhaseClass::Unbroken {
                        assert!(v.verdict.is_symmetric, "{p:?} {v:?}");
                    }
                    if im > 1e-6 {
                        assert_eq!(class, PhaseClass::Broken);
                        assert!(!v.verdict.is_symmetric, "{p:?} {v:?}");
                    } else if class != PhaseClass::Exceptional {
                        assert!(v.verdict.is_symmetric, "{p:?} {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn broken_point_can_keep_a_symmetric_ground_state() {
        // The only broken mode (k = π/2) lies on the odd grid; the even-sector
        // ground level is real and its state RT symmetric.
        let p = ModelParams::unit(0.0, 0.01, 4).unwrap();
        assert_eq!(classify(&p).unwrap().classification, PhaseClass::Broken);
        let v = ground_state_rt_verdict(&p).unwrap();
        assert_eq!(v.level.sector, Sector::Even);
        assert!(v.level.energy.im == 0.0 && v.verdict.is_symmetric);
    }

    #[test]
    fn broken_spectra_pair_up() {
        for &(lambda, gamma) in &[(0.5, 0.5), (0.0, 1.0), (1.0, 1.5)] {
            let p = ModelParams::unit(lambda, gamma, 6).unwrap();
            let e = oracle_spectrum(&p).unwrap().eigenvalues;
            assert!(conjugate_pairing_report(&e) <= 1e-8);
            assert!(conjugate_pairing_report(&crate::freeferm::many_body_spectrum(&p).unwrap()) <= 1e-12);
        }
        assert!(conjugate_pairing_report(&[C64::new(0.0, 1.0)]) > 1.0);
    }
}
