//! Acceptance checks.
//!
//! Each `criterion_*` function runs one end-to-end check at its pinned
//! tolerance and reports the measured quantity next to the threshold. A
//! failing criterion is an outcome, not an error: `Err` means the check could
//! not run at all.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counterpart::{
    counterpart_spectrum, counterpart_spin_spectrum, divergence_probe, kappa_approx, kappa_exact,
    kappa_finite_difference, kappa_gradient, reduced_spectrum, truncation_bound, BOUND_ROUNDING,
};
use crate::error::Result;
use crate::freeferm::{ground_state_energy, many_body_spectrum, sector_modes, ModeKind};
use crate::matching::compare_spectra;
use crate::oracle::{
    build_h_infinity, build_hamiltonian, oracle_spectrum, oracle_spectrum_extended, spectrum_by_parity,
};
use crate::phasemap::{classify, critical_lambda, PhaseClass};
use crate::symmetry::{check_rt_commutation, ground_state_rt_verdict, h_infinity_reversal};
use crate::{ModelParams, Sector};

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CriterionOutcome {
    /// `PASS [3] name: measured 1.0e-13 (threshold 1.0e-8); detail`
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {}: measured {:.3e} (threshold {:.3e}); {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.measured,
            self.threshold,
            self.detail
        )
    }
}

/// The 5×5 grid λ, γ ∈ {0, 0.5, 1, 1.5, 2} at N ∈ {4, 6, 8}.
pub fn oracle_grid() -> Vec<ModelParams> {
    let values = [0.0, 0.5, 1.0, 1.5, 2.0];
    let mut out = Vec::new();
    for n in [4, 6, 8] {
        for &gamma in &values {
            for &lambda in &values {
                out.push(ModelParams::unit(lambda, gamma, n).expect("valid grid point"));
            }
        }
    }
    out
}

fn label(p: &ModelParams) -> String {
    format!("(λ={}, γ={}, N={})", p.lambda, p.gamma, p.n)
}

fn worst_of(values: Vec<(f64, String)>) -> (f64, String) {
    values.into_iter().fold((0.0, String::from("-")), |acc, x| if x.0 > acc.0 { x } else { acc })
}

fn has_exceptional_mode(p: &ModelParams) -> Result<bool> {
    for sector in Sector::BOTH {
        if sector_modes(p, sector)?.iter().any(|m| m.kind == ModeKind::Exceptional) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Runs against the double-double oracle: the grid crosses exceptional lines
/// where `H` has Jordan blocks, and a float64 eigensolver only resolves those
/// eigenvalues to `√ε` or `∛ε`. The float64 figure is reported alongside.
pub fn criterion_oracle_equivalence() -> Result<CriterionOutcome> {
    const TOL: f64 = 1e-8;
    let rows: Vec<(f64, f64, String, bool)> = oracle_grid()
        .par_iter()
        .map(|p| {
            let analytic = many_body_spectrum(p)?;
            let extended = compare_spectra(&analytic, &oracle_spectrum_extended(p)?.eigenvalues)?;
            let double = compare_spectra(&analytic, &oracle_spectrum(p)?.eigenvalues)?;
            Ok((extended, double, label(p), has_exceptional_mode(p)?))
        })
        .collect::<Result<_>>()?;
    let failing: Vec<&str> = rows.iter().filter(|r| r.0 > TOL).map(|r| r.2.as_str()).collect();
    let exceptional_points = rows.iter().filter(|r| r.3).count();
    let (worst, at) = worst_of(rows.iter().map(|r| (r.0, r.2.clone())).collect());
    let (double, double_at) = worst_of(rows.iter().map(|r| (r.1, r.2.clone())).collect());
    let (regular, _) = worst_of(rows.iter().filter(|r| !r.3).map(|r| (r.1, r.2.clone())).collect());
    let summary = if failing.is_empty() {
        format!("75 points, worst at {at}")
    } else {
        format!("{} of 75 points above threshold: {}", failing.len(), failing.join(" "))
    };
    Ok(CriterionOutcome {
        id: 1,
        name: "oracle equivalence",
        passed: worst <= TOL,
        measured: worst,
        threshold: TOL,
        detail: format!(
            "{summary}; float64 oracle: {double:.3e} at {double_at}, \
             {regular:.3e} over the {} points without an exceptional mode",
            75 - exceptional_points
        ),
    })
}

pub fn criterion_rt_symmetry() -> Result<CriterionOutcome> {
    const TOL: f64 = 1e-12;
    const RE_TOL: f64 = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5254);
    let sizes = [4, 6, 8, 10];
    let draws: Vec<ModelParams> = (0..20)
        .map(|i| {
            ModelParams::new(
                rng.gen_range(0.5..2.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                sizes[i % sizes.len()],
            )
            .expect("valid draw")
        })
        .collect();
    let commutation = draws
        .par_iter()
        .map(|p| Ok(check_rt_commutation(&build_hamiltonian(p)?)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let mut reversal: f64 = 0.0;
    let mut sign_flip: f64 = 0.0;
    let mut real_part: f64 = 0.0;
    let mut pairing: f64 = 0.0;
    for p in &draws {
        let report = h_infinity_reversal(p)?;
        reversal = reversal.max(report.eigen_reversal_defect);
        sign_flip = sign_flip.max(report.sign_flip_defect);
        let spectrum = spectrum_by_parity(&build_h_infinity(p)?)?.eigenvalues;
        real_part = spectrum.iter().map(|e| e.re.abs()).fold(real_part, f64::max);
        let negated: Vec<C64> = spectrum.iter().map(|e| -e).collect();
        pairing = pairing.max(compare_spectra(&spectrum, &negated)?);
    }
    let passed = commutation <= TOL && reversal <= TOL && real_part <= RE_TOL && pairing <= RE_TOL;
    Ok(CriterionOutcome {
        id: 2,
        name: "RT symmetry",
        passed,
        measured: commutation.max(reversal),
        threshold: TOL,
        detail: format!(
            "commutation {commutation:.3e}, H_inf eigen-reversal {reversal:.3e}, \
             H_inf |Re E| {real_part:.3e}, E<->-E {pairing:.3e}, \
             operator sign flip {sign_flip:.3e} (H_inf commutes with RT)"
        ),
    })
}

pub fn criterion_unbroken_reality() -> Result<CriterionOutcome> {
    const TOL: f64 = 1e-8;
    const HERMITIAN_TOL: f64 = 1e-12;
    let rows: Vec<(PhaseClass, f64, f64, String)> = oracle_grid()
        .par_iter()
        .map(|p| {
            let class = classify(p)?.classification;
            let oracle = oracle_spectrum(p)?.max_abs_imag;
            let analytic = many_body_spectrum(p)?.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
            Ok((class, p.gamma, oracle.max(analytic), label(p)))
        })
        .collect::<Result<_>>()?;
    let unbroken: Vec<(f64, String)> =
        rows.iter().filter(|r| r.0 == PhaseClass::Unbroken).map(|r| (r.2, r.3.clone())).collect();
    let count = unbroken.len();
    let (worst, at) = worst_of(unbroken);
    let hermitian = rows.iter().filter(|r| r.1 == 0.0).map(|r| r.2).fold(0.0, f64::max);
    Ok(CriterionOutcome {
        id: 3,
        name: "reality in the unbroken region",
        passed: worst <= TOL && hermitian <= HERMITIAN_TOL,
        measured: worst,
        threshold: TOL,
        detail: format!("{count} unbroken points, worst at {at}; γ=0 max |Im E| {hermitian:.3e} (≤ {HERMITIAN_TOL:.0e})"),
    })
}

pub fn criterion_hyperbola_convergence() -> Result<CriterionOutcome> {
    const TOL: f64 = 0.05;
    let sizes = [8, 16, 30, 64];
    let deviations: Vec<f64> = sizes
        .iter()
        .map(|&n| Ok((critical_lambda(n, 1.0)? - 2f64.sqrt()).abs()))
        .collect::<Result<_>>()?;
    let monotone = deviations.windows(2).all(|w| w[1] < w[0]);
    let last = *deviations.last().expect("non-empty");
    let listing: Vec<String> = sizes.iter().zip(&deviations).map(|(n, d)| format!("N={n}: {d:.3e}")).collect();
    Ok(CriterionOutcome {
        id: 4,
        name: "hyperbola convergence",
        passed: monotone && last <= TOL,
        measured: last,
        threshold: TOL,
        detail: format!("|λ_c(N, γ=1) − √2|: {}; strictly decreasing: {monotone}", listing.join(", ")),
    })
}

pub fn criterion_hermitian_line() -> Result<CriterionOutcome> {
    let mut wrong = 0usize;
    for n in [4, 8, 30] {
        for i in 0..100 {
            let lambda = 3.0 * i as f64 / 99.0;
            if classify(&ModelParams::unit(lambda, 0.0, n)?)?.classification != PhaseClass::Unbroken {
                wrong += 1;
            }
        }
    }
    Ok(CriterionOutcome {
        id: 5,
        name: "γ=0 excluded from the broken region",
        passed: wrong == 0,
        measured: wrong as f64,
        threshold: 0.0,
        detail: "300 points λ ∈ [0, 3], N ∈ {4, 8, 30}; count of non-unbroken".into(),
    })
}

/// The counterpart comparison setting λ=2, γ=0.1, N ∈ {4, 6, 8}.
fn counterpart_points() -> Vec<ModelParams> {
    [4, 6, 8].iter().map(|&n| ModelParams::unit(2.0, 0.1, n).expect("valid")).collect()
}

fn lift(values: &[f64]) -> Vec<C64> {
    values.iter().map(|&e| C64::new(e, 0.0)).collect()
}

pub fn criterion_counterpart_identity() -> Result<CriterionOutcome> {
    const TOL: f64 = 1e-8;
    let mut against_h: f64 = 0.0;
    let mut against_spin: f64 = 0.0;
    for p in counterpart_points() {
        let analytic = lift(&counterpart_spectrum(&p)?);
        against_h = against_h.max(compare_spectra(&analytic, &oracle_spectrum(&p)?.eigenvalues)?);
        against_spin = against_spin.max(compare_spectra(&analytic, &counterpart_spin_spectrum(&p)?.eigenvalues)?);
    }
    let worst = against_h.max(against_spin);
    Ok(CriterionOutcome {
        id: 6,
        name: "counterpart identity",
        passed: worst <= TOL,
        measured: worst,
        threshold: TOL,
        detail: format!("analytic vs H {against_h:.3e}, analytic vs τ-spin matrix {against_spin:.3e}"),
    })
}

pub fn criterion_reduced_model() -> Result<CriterionOutcome> {
    const RELATIVE_BOUND: f64 = 0.02;
    let mut worst_ratio: f64 = 0.0;
    let mut bound_fraction: f64 = 0.0;
    let mut within = true;
    let mut listing = Vec::new();
    for p in counterpart_points() {
        let h = oracle_spectrum(&p)?.eigenvalues;
        let distance = compare_spectra(&reduced_spectrum(&p)?.eigenvalues, &h)?;
        let bound = truncation_bound(&p)?;
        let norm = h.iter().map(|e| e.norm()).fold(0.0, f64::max);
        within &= distance <= bound + BOUND_ROUNDING * norm;
        worst_ratio = worst_ratio.max(distance / bound);
        bound_fraction = bound_fraction.max(bound / norm);
        listing.push(format!("N={}: d={distance:.3e} B={bound:.3e} B/‖H‖={:.3e}", p.n, bound / norm));
    }
    Ok(CriterionOutcome {
        id: 7,
        name: "reduced model agreement",
        passed: within && bound_fraction <= RELATIVE_BOUND,
        measured: bound_fraction,
        threshold: RELATIVE_BOUND,
        detail: format!("max d/B {worst_ratio:.3e}; {}", listing.join(", ")),
    })
}

pub fn criterion_kappa_closed_forms() -> Result<CriterionOutcome> {
    const TOL: f64 = 1e-12;
    let mut worst: f64 = 0.0;
    for lambda in [1.5, 2.0, 5.0] {
        for n in [10, 100] {
            let p = ModelParams::unit(lambda, 0.0, n)?;
            for sector in Sector::BOTH {
                worst = worst.max((kappa_exact(&p, sector, 0)? - lambda).abs());
                worst = worst.max((kappa_exact(&p, sector, 1)? + 0.5).abs());
            }
        }
    }
    // The approximants written out term by term.
    let mut arithmetic = true;
    for (j, lambda, gamma) in [(1.0, 2.0, 0.1), (0.7, 3.0, 0.5), (1.3, -4.0, 2.0)] {
        let p = ModelParams::new(j, lambda, gamma, 10)?;
        let nu = gamma * gamma / (lambda * lambda);
        let expected = [
            (1.0 - nu / 4.0) * lambda * j,
            -(j / 2.0) * (1.0 + nu / 8.0),
            nu * lambda * j / 8.0,
            nu * j / 16.0,
        ];
        for (order, e) in expected.iter().enumerate() {
            arithmetic &= kappa_approx(&p, order)? == *e;
        }
    }
    Ok(CriterionOutcome {
        id: 8,
        name: "κ closed forms",
        passed: worst <= TOL && arithmetic,
        measured: worst,
        threshold: TOL,
        detail: format!("γ=0 tables in both sectors; approximant arithmetic exact: {arithmetic}"),
    })
}

pub fn criterion_gradient_divergence() -> Result<CriterionOutcome> {
    const RATIO: f64 = 2.0;
    const FD_TOL: f64 = 1e-4;
    let samples = divergence_probe(200, 1.0, &[1e-1, 1e-2, 1e-3, 1e-4])?;
    let ratios: Vec<f64> = samples.windows(2).map(|w| w[1].magnitude / w[0].magnitude).collect();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);

    let p = ModelParams::unit(3.0, 0.5, 200)?;
    let mut fd_worst: f64 = 0.0;
    for sector in Sector::BOTH {
        for d in 0..=3 {
            let exact = kappa_gradient(&p, sector, d)?;
            let fd = kappa_finite_difference(&p, sector, d, 1e-5)?;
            let scale = exact.magnitude().max(f64::MIN_POSITIVE);
            fd_worst = fd_worst.max((exact.d_lambda - fd.d_lambda).hypot(exact.d_gamma - fd.d_gamma) / scale);
        }
    }
    let magnitudes: Vec<String> = samples.iter().map(|s| format!("δ={:.0e}: {:.4}", s.delta, s.magnitude)).collect();
    Ok(CriterionOutcome {
        id: 9,
        name: "gradient divergence",
        passed: min_ratio >= RATIO && fd_worst <= FD_TOL,
        measured: min_ratio,
        threshold: RATIO,
        detail: format!(
            "|∇κ(0)| {}; finite-difference relative error {fd_worst:.3e} (≤ {FD_TOL:.0e})",
            magnitudes.join(", ")
        ),
    })
}

pub fn criterion_ground_verdicts() -> Result<CriterionOutcome> {
    const IMAG: f64 = 1e-6;
    let rows: Vec<(bool, bool, String)> = oracle_grid()
        .par_iter()
        .map(|p| {
            let class = classify(p)?.classification;
            let energy = ground_state_energy(p)?.level.energy;
            let verdict = ground_state_rt_verdict(p)?.verdict;
            let real = energy.im.abs() <= crate::freeferm::COMPLEX_FLAG;
            let checked = (real && class == PhaseClass::Unbroken) || energy.im.abs() > IMAG;
            let agrees = if real { verdict.is_symmetric } else { !verdict.is_symmetric };
            Ok((checked, agrees, label(p)))
        })
        .collect::<Result<_>>()?;
    let checked = rows.iter().filter(|r| r.0).count();
    let bad: Vec<&str> = rows.iter().filter(|r| r.0 && !r.1).map(|r| r.2.as_str()).collect();
    Ok(CriterionOutcome {
        id: 10,
        name: "ground-state RT verdicts",
        passed: bad.is_empty(),
        measured: bad.len() as f64,
        threshold: 0.0,
        detail: if bad.is_empty() {
            format!("{checked} of 75 points checked, all agree")
        } else {
            format!("{checked} checked, disagreeing: {}", bad.join(" "))
        },
    })
}

pub type Criterion = fn() -> Result<CriterionOutcome>;

pub const CRITERIA: [Criterion; 10] = [
    criterion_oracle_equivalence,
    criterion_rt_symmetry,
    criterion_unbroken_reality,
    criterion_hyperbola_convergence,
    criterion_hermitian_line,
    criterion_counterpart_identity,
    criterion_reduced_model,
    criterion_kappa_closed_forms,
    criterion_gradient_divergence,
    criterion_ground_verdicts,
];

pub fn run_all() -> Result<Vec<CriterionOutcome>> {
    CRITERIA.iter().map(|c| c()).collect()
}
