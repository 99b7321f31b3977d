//! Brute-force ground truth on the full 2^N spin basis.
//!
//! Operators are assembled as sums of Pauli strings ([`PauliSum`]), which
//! can act matrix-free on vectors up to `N = 16` or be expanded into a
//! [`DenseOperator`] for diagonalization.

pub mod dd;
pub mod eigen;
pub mod fock;

use num_complex::{Complex, Complex64 as C64};
use rayon::prelude::*;

use dd::{Dd, Real};

use crate::error::{Error, Result};
use crate::model::{ModelParams, Sector, MAX_ORACLE_SITES};

/// Largest chain expanded into a dense matrix (4096 × 4096 complex entries).
pub const MAX_DENSE_SITES: usize = 12;

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// `coeff · ⊗_j P_j` in symplectic form: site `j` carries `X` if bit `j` of
/// `x` is set, `Z` for `z`, and `Y` for both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub coeff: C64,
    pub x: u64,
    pub z: u64,
}

impl PauliTerm {
    /// Amplitude and target of `P |b⟩`. With bit 1 = spin down, `Z|b⟩ =
    /// (−1)^b |b⟩` and `Y = iXZ`.
    #[inline]
    pub fn act(&self, b: usize) -> (usize, C64) {
        let y = (self.x & self.z).count_ones();
        let sign = if ((b as u64) & self.z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        let phase = match y % 4 {
            0 => C64::new(1.0, 0.0),
            1 => I,
            2 => C64::new(-1.0, 0.0),
            _ => -I,
        };
        (b ^ self.x as usize, self.coeff * phase * sign)
    }
}

/// A sum of Pauli strings on `n` sites.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_ORACLE_SITES, "spin basis limited to {MAX_ORACLE_SITES} sites");
        PauliSum { n, terms: Vec::new() }
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn add(&mut self, coeff: C64, ops: &[(usize, Pauli)]) {
        let (mut x, mut z) = (0u64, 0u64);
        for &(site, p) in ops {
            assert!(site < self.n);
            let bit = 1u64 << site;
            assert!((x | z) & bit == 0, "site {site} repeated in Pauli string");
            match p {
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                }
            }
        }
        if coeff != ZERO {
            self.terms.push(PauliTerm { coeff, x, z });
        }
    }

    /// Matrix-free `M v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim());
        let mut out = vec![ZERO; v.len()];
        for t in &self.terms {
            for (b, amp) in v.iter().enumerate() {
                let (target, c) = t.act(b);
                out[target] += c * amp;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Result<DenseOperator> {
        if self.n > MAX_DENSE_SITES {
            return Err(Error::TooLarge { n: self.n, limit: MAX_DENSE_SITES });
        }
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        data.par_chunks_mut(dim).enumerate().for_each(|(row, out)| {
            // Entry (row, col) collects every term mapping col to row; terms are
            // involutive on basis states, so col = row ^ x.
            for t in &self.terms {
                let col = row ^ t.x as usize;
                let (target, c) = t.act(col);
                debug_assert_eq!(target, row);
                out[col] += c;
            }
        });
        let op = DenseOperator::from_data(dim, data);
        Ok(op)
    }
}

/// Row-major `dim × dim` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<C64>,
    /// Advisory flag set when the entries were found Hermitian at construction.
    pub hermitian: bool,
}

impl DenseOperator {
    pub fn from_data(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        let mut op = DenseOperator { dim, data, hermitian: false };
        op.hermitian = op.hermiticity_defect() == 0.0;
        op
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C64::new(1.0, 0.0);
        }
        DenseOperator::from_data(dim, data)
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let dim = entries.len();
        let mut data = vec![ZERO; dim * dim];
        for (i, e) in entries.iter().enumerate() {
            data[i * dim + i] = *e;
        }
        DenseOperator::from_data(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `max |M − M†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `max |M − Mᵀ|`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        worst
    }

    /// Entrywise conjugate (the antilinear `T` in the spin-z product basis).
    pub fn conj(&self) -> DenseOperator {
        DenseOperator::from_data(self.dim, self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn scaled(&self, s: C64) -> DenseOperator {
        DenseOperator::from_data(self.dim, self.data.iter().map(|z| z * s).collect())
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn matmul(&self, other: &DenseOperator) -> DenseOperator {
        let n = self.dim;
        assert_eq!(n, other.dim);
        let mut data = vec![ZERO; n * n];
        data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let src = &other.data[k * n..(k + 1) * n];
                for (r, b) in row.iter_mut().zip(src) {
                    *r += a * b;
                }
            }
        });
        DenseOperator::from_data(n, data)
    }

    /// `M v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .par_chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `‖(M − E) v‖ / ‖v‖`.
    pub fn residual(&self, v: &[C64], energy: C64) -> f64 {
        residual_of(&self.apply(v), v, energy)
    }
}

/// `‖Mv − E v‖ / ‖v‖` given `Mv`.
pub fn residual_of(mv: &[C64], v: &[C64], energy: C64) -> f64 {
    let num: f64 = mv.iter().zip(v).map(|(a, b)| (a - energy * b).norm_sqr()).sum();
    let den: f64 = v.iter().map(|b| b.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Free function form of [`DenseOperator::apply`].
pub fn apply(m: &DenseOperator, v: &[C64]) -> Vec<C64> {
    m.apply(v)
}

/// Free function form of [`DenseOperator::residual`].
pub fn residual(m: &DenseOperator, v: &[C64], energy: C64) -> f64 {
    m.residual(v, energy)
}

fn next(j: usize, n: usize) -> usize {
    (j + 1) % n
}

/// Pauli-string form of the chain Hamiltonian.
pub fn hamiltonian_terms(params: &ModelParams) -> Result<PauliSum> {
    params.validate()?;
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    let n = params.n;
    let j = params.j;
    let xx = C64::new(0.5 * j, 0.5 * j * params.gamma);
    let yy = C64::new(0.5 * j, -0.5 * j * params.gamma);
    let zz = C64::new(j * params.lambda, 0.0);
    let mut h = PauliSum::new(n);
    for site in 0..n {
        let nb = next(site, n);
        h.add(xx, &[(site, Pauli::X), (nb, Pauli::X)]);
        h.add(yy, &[(site, Pauli::Y), (nb, Pauli::Y)]);
        h.add(zz, &[(site, Pauli::Z)]);
    }
    Ok(h)
}

/// Dense `H` on the periodic ring.
pub fn build_hamiltonian(params: &ModelParams) -> Result<DenseOperator> {
    hamiltonian_terms(params)?.to_dense()
}

/// Pauli-string form of the large-anisotropy limit `iJγ/2 Σ (XX − YY)`.
pub fn h_infinity_terms(params: &ModelParams) -> Result<PauliSum> {
    params.validate()?;
    params.require_spin_basis(MAX_ORACLE_SITES)?;
    let n = params.n;
    let c = C64::new(0.0, 0.5 * params.j * params.gamma);
    let mut h = PauliSum::new(n);
    for site in 0..n {
        let nb = next(site, n);
        h.add(c, &[(site, Pauli::X), (nb, Pauli::X)]);
        h.add(-c, &[(site, Pauli::Y), (nb, Pauli::Y)]);
    }
    Ok(h)
}

pub fn build_h_infinity(params: &ModelParams) -> Result<DenseOperator> {
    h_infinity_terms(params)?.to_dense()
}

/// Diagonal of `R = exp(−iπ/4 Σ σᶻ)`: configuration `b` gets
/// `exp(−iπ/4 Σ s_j)` with `s_j = +1` for spin up (bit clear).
pub fn rotation_phases(n: usize) -> Vec<C64> {
    assert!((1..=MAX_ORACLE_SITES).contains(&n));
    (0..1usize << n)
        .map(|b| {
            let down = b.count_ones() as i64;
            let sz = n as i64 - 2 * down;
            // exp(−iπ/4 · sz) evaluated on the exact eighth roots of unity.
            eighth_root(-sz)
        })
        .collect()
}

/// `exp(iπ m / 4)` without trigonometric rounding on the axes.
pub(crate) fn eighth_root(m: i64) -> C64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match m.rem_euclid(8) {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(h, h),
        2 => C64::new(0.0, 1.0),
        3 => C64::new(-h, h),
        4 => C64::new(-1.0, 0.0),
        5 => C64::new(-h, -h),
        6 => C64::new(0.0, -1.0),
        _ => C64::new(h, -h),
    }
}

pub fn build_rotation(n: usize) -> DenseOperator {
    DenseOperator::diagonal(&rotation_phases(n))
}

/// The two fermion-parity blocks of an operator.
#[derive(Debug, Clone)]
pub struct ParityBlocks {
    pub even: DenseOperator,
    pub odd: DenseOperator,
    /// Basis indices of each block, ascending.
    pub even_states: Vec<usize>,
    pub odd_states: Vec<usize>,
    /// `max |M_ij|` over entries connecting different parities.
    pub off_block_max: f64,
}

impl ParityBlocks {
    pub fn block(&self, sector: Sector) -> &DenseOperator {
        match sector {
            Sector::Even => &self.even,
            Sector::Odd => &self.odd,
        }
    }

    pub fn states(&self, sector: Sector) -> &[usize] {
        match sector {
            Sector::Even => &self.even_states,
            Sector::Odd => &self.odd_states,
        }
    }

    /// Embed the blocks back into the full space (off-parity entries zero).
    pub fn reassemble(&self) -> DenseOperator {
        let dim = self.even_states.len() + self.odd_states.len();
        let mut data = vec![ZERO; dim * dim];
        for sector in Sector::BOTH {
            let states = self.states(sector);
            let block = self.block(sector);
            for (a, &ra) in states.iter().enumerate() {
                for (b, &cb) in states.iter().enumerate() {
                    data[ra * dim + cb] = block.get(a, b);
                }
            }
        }
        DenseOperator::from_data(dim, data)
    }
}

/// Split `M` by the parity of the fermion count (popcount of the index).
pub fn parity_filter(m: &DenseOperator) -> ParityBlocks {
    let dim = m.dim();
    assert!(dim.is_power_of_two());
    let (even_states, odd_states): (Vec<usize>, Vec<usize>) =
        (0..dim).partition(|b| b.count_ones() % 2 == 0);
    let extract = |states: &[usize]| {
        let d = states.len();
        let mut data = vec![ZERO; d * d];
        for (a, &ra) in states.iter().enumerate() {
            for (b, &cb) in states.iter().enumerate() {
                data[a * d + b] = m.get(ra, cb);
            }
        }
        DenseOperator::from_data(d, data)
    };
    let mut off_block_max: f64 = 0.0;
    for &r in &even_states {
        for &c in &odd_states {
            off_block_max = off_block_max.max(m.get(r, c).norm()).max(m.get(c, r).norm());
        }
    }
    ParityBlocks {
        even: extract(&even_states),
        odd: extract(&odd_states),
        even_states,
        odd_states,
        off_block_max,
    }
}

/// All eigenvalues of a dense operator with accuracy diagnostics.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<C64>,
    /// Relative backward error `‖MZ − ZT‖_F/‖M‖_F` of the computed Schur
    /// form when it was formed, otherwise the a-priori bound `dim·ε`.
    pub max_residual: f64,
    pub max_abs_imag: f64,
}

/// Schur vectors are accumulated (and the backward error measured) up to this size.
const MEASURED_BACKWARD_ERROR_DIM: usize = 512;

pub fn dense_eigenvalues(m: &DenseOperator) -> Result<SpectrumReport> {
    let n = m.dim();
    let want = n <= MEASURED_BACKWARD_ERROR_DIM;
    let schur = eigen::schur(m.data().to_vec(), n, want)?;
    let max_residual = match (&schur.t, &schur.z) {
        (Some(t), Some(z)) => eigen::schur_backward_error(m.data(), n, t, z),
        _ => n as f64 * f64::EPSILON,
    };
    let max_abs_imag = schur.eigenvalues.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
    Ok(SpectrumReport { eigenvalues: schur.eigenvalues, max_residual, max_abs_imag })
}

/// Largest chain for the double-double oracle.
pub const MAX_EXTENDED_SITES: usize = 10;

/// Eigenvalues computed in double-double arithmetic and rounded to `f64`.
/// The entries of `m` are taken as exact; an eigenvalue in a Jordan block of
/// size `s` is then resolved to about `(10⁻³²)^{1/s}` instead of `(10⁻¹⁶)^{1/s}`.
pub fn dense_eigenvalues_extended(m: &DenseOperator) -> Result<SpectrumReport> {
    let n = m.dim();
    let data: Vec<Complex<Dd>> = m.data().iter().map(|&x| dd::from_c64(x)).collect();
    let schur = eigen::schur(data, n, false)?;
    let eigenvalues: Vec<C64> = schur.eigenvalues.into_iter().map(dd::to_c64).collect();
    let max_abs_imag = eigenvalues.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
    Ok(SpectrumReport { eigenvalues, max_residual: n as f64 * Dd::ULP, max_abs_imag })
}

/// [`oracle_spectrum`] in double-double arithmetic.
pub fn oracle_spectrum_extended(params: &ModelParams) -> Result<SpectrumReport> {
    params.require_spin_basis(MAX_EXTENDED_SITES)?;
    let blocks = parity_filter(&build_hamiltonian(params)?);
    let reports: Vec<Result<SpectrumReport>> =
        [&blocks.even, &blocks.odd].into_par_iter().map(dense_eigenvalues_extended).collect();
    let mut eigenvalues = Vec::with_capacity(params.dim());
    let mut max_residual: f64 = 0.0;
    for r in reports {
        let r = r?;
        max_residual = max_residual.max(r.max_residual);
        eigenvalues.extend(r.eigenvalues);
    }
    let max_abs_imag = eigenvalues.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
    Ok(SpectrumReport { eigenvalues, max_residual, max_abs_imag })
}

/// Eigenvalues of `H` computed block by block over the two parity sectors.
pub fn oracle_spectrum(params: &ModelParams) -> Result<SpectrumReport> {
    let h = build_hamiltonian(params)?;
    spectrum_by_parity(&h)
}

/// Diagonalize each parity block of a parity-conserving operator and merge.
pub fn spectrum_by_parity(m: &DenseOperator) -> Result<SpectrumReport> {
    let blocks = parity_filter(m);
    let reports: Vec<Result<SpectrumReport>> =
        [&blocks.even, &blocks.odd].into_par_iter().map(dense_eigenvalues).collect();
    let mut eigenvalues = Vec::with_capacity(m.dim());
    let mut max_residual: f64 = 0.0;
    for r in reports {
        let r = r?;
        max_residual = max_residual.max(r.max_residual);
        eigenvalues.extend(r.eigenvalues);
    }
    let max_abs_imag = eigenvalues.iter().map(|e| e.im.abs()).fold(0.0, f64::max);
    Ok(SpectrumReport { eigenvalues, max_residual, max_abs_imag })
}

/// Eigenvalues of one parity block of `H` (the sector Hamiltonian `H_η`).
pub fn sector_oracle_spectrum(params: &ModelParams, sector: Sector) -> Result<SpectrumReport> {
    let h = build_hamiltonian(params)?;
    dense_eigenvalues(parity_filter(&h).block(sector))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_resolves_a_triple_jordan_block() {
        // S J₃(2) S⁻¹ with integer S and S⁻¹: exact entries, one defective eigenvalue.
        let a = [1.0, 1.0, 0.0, -1.0, 2.0, 1.0, -1.0, 0.0, 3.0];
        let m = DenseOperator::from_data(3, a.iter().map(|&x| C64::new(x, 0.0)).collect());
        let r = dense_eigenvalues_extended(&m).unwrap();
        for e in r.eigenvalues {
            assert!((e - 2.0).norm() < 1e-9, "{e}");
        }
    }

    #[test]
    fn extended_agrees_with_double_on_regular_points() {
        for (l, g) in [(0.5, 0.3), (2.0, 0.1), (1.3, 1.9)] {
            let p = ModelParams::unit(l, g, 6).unwrap();
            let ext = oracle_spectrum_extended(&p).unwrap().eigenvalues;
            let dbl = oracle_spectrum(&p).unwrap().eigenvalues;
            assert!(crate::matching::compare_spectra(&ext, &dbl).unwrap() < 1e-12);
        }
        assert!(oracle_spectrum_extended(&ModelParams::unit(1.0, 0.5, 12).unwrap()).is_err());
    }

    fn params(lambda: f64, gamma: f64, n: usize) -> ModelParams {
        ModelParams::unit(lambda, gamma, n).unwrap()
    }

    fn sorted_re(e: &[C64]) -> Vec<f64> {
        let mut v: Vec<f64> = e.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn pauli_actions() {
        let mut s = PauliSum::new(1);
        s.add(C64::new(1.0, 0.0), &[(0, Pauli::Y)]);
        // Y|↑⟩ = i|↓⟩ and Y|↓⟩ = −i|↑⟩ with bit 1 = down.
        assert_eq!(s.terms()[0].act(0), (1, I));
        assert_eq!(s.terms()[0].act(1), (0, -I));
        let mut z = PauliSum::new(2);
        z.add(C64::new(1.0, 0.0), &[(1, Pauli::Z)]);
        assert_eq!(z.terms()[0].act(0b10), (0b10, C64::new(-1.0, 0.0)));
    }

    #[test]
    fn hermitian_at_zero_anisotropy() {
        let h = build_hamiltonian(&params(0.7, 0.0, 4)).unwrap();
        assert_eq!(h.hermiticity_defect(), 0.0);
        assert!(h.hermitian);
        let r = dense_eigenvalues(&h).unwrap();
        assert!(r.max_abs_imag < 1e-13);
        assert!(r.max_residual < 1e-13);
    }

    #[test]
    fn traceless_and_complex_symmetric() {
        let h = build_hamiltonian(&params(2.0, 0.1, 4)).unwrap();
        assert_eq!(h.trace(), C64::new(0.0, 0.0));
        let h = build_hamiltonian(&params(0.5, 0.5, 4)).unwrap();
        assert_eq!(h.symmetry_defect(), 0.0);
        assert!(h.hermiticity_defect() > 0.1);
        assert!(!h.hermitian);
    }

    #[test]
    fn polarized_ground_state() {
        let h = build_hamiltonian(&params(2.0, 0.0, 4)).unwrap();
        let r = dense_eigenvalues(&h).unwrap();
        assert!((sorted_re(&r.eigenvalues)[0] + 8.0).abs() < 1e-12);
        assert_eq!(h.get(15, 15), C64::new(-8.0, 0.0));
    }

    #[test]
    fn identity_spectrum() {
        let r = dense_eigenvalues(&DenseOperator::identity(16)).unwrap();
        assert_eq!(r.eigenvalues.len(), 16);
        assert!(r.eigenvalues.iter().all(|e| *e == C64::new(1.0, 0.0)));
    }

    #[test]
    fn matrix_free_matches_dense() {
        let p = params(0.4, 1.3, 6);
        let terms = hamiltonian_terms(&p).unwrap();
        let dense = terms.to_dense().unwrap();
        let v: Vec<C64> = (0..64).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let a = terms.apply(&v);
        let b = dense.apply(&v);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn rotation_examples() {
        let r = rotation_phases(2);
        assert!((r[0b00] - C64::new(0.0, -1.0)).norm() < 1e-15); // ↑↑
        assert!((r[0b10] - C64::new(1.0, 0.0)).norm() < 1e-15); // ↑↓
        // R⁴ = exp(−iπ Σ s): +1 when Σs ≡ 0 (mod 2)... here N even so Σs is even.
        for n in [2, 4, 6] {
            for (b, z) in rotation_phases(n).iter().enumerate() {
                let down = b.count_ones() as i64;
                let sz = n as i64 - 2 * down;
                let expect = if sz.rem_euclid(2) == 0 { C64::new(1.0, 0.0) } else { C64::new(-1.0, 0.0) };
                assert!((z.powi(4) - expect).norm() < 1e-14);
                assert!((z.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn parity_blocks_reassemble() {
        let h = build_hamiltonian(&params(0.3, 0.8, 6)).unwrap();
        let blocks = parity_filter(&h);
        assert_eq!(blocks.even.dim(), 32);
        assert_eq!(blocks.odd.dim(), 32);
        assert!(blocks.off_block_max <= 1e-12);
        assert_eq!(blocks.reassemble(), h);
    }

    #[test]
    fn h_infinity_is_anti_hermitian() {
        let m = build_h_infinity(&params(0.0, 1.7, 6)).unwrap();
        let minus_adj = DenseOperator::from_data(
            m.dim(),
            (0..m.dim() * m.dim()).map(|k| -m.get(k % m.dim(), k / m.dim()).conj()).collect(),
        );
        assert_eq!(m.max_abs_diff(&minus_adj), 0.0);
        let r = spectrum_by_parity(&m).unwrap();
        assert!(r.eigenvalues.iter().all(|e| e.re.abs() < 1e-10));
    }

    #[test]
    fn sizes_rejected() {
        assert!(build_hamiltonian(&params(1.0, 0.0, 14)).is_err());
        assert!(hamiltonian_terms(&params(1.0, 0.0, 18)).is_err());
        assert!(hamiltonian_terms(&params(1.0, 0.0, 16)).is_ok());
    }
}
