//! Solvers for the non-Hermitian anisotropic XY chain
//!
//! ```text
//! H = J Σ_j [ (1+iγ)/2 σˣ_j σˣ_{j+1} + (1−iγ)/2 σʸ_j σʸ_{j+1} + λ σᶻ_j ]
//! ```
//!
//! on a periodic ring of even length `N`. The chain is invariant under the
//! antilinear rotation-time operator `RT` (a π/2 spin rotation about z
//! followed by complex conjugation), which plays the role PT symmetry plays
//! elsewhere: the spectrum is real while the eigenstates are RT symmetric and
//! turns into complex-conjugate pairs once that symmetry breaks.
//!
//! * [`model`] parameters, parity sectors, momentum grids and the branch of
//!   the single-particle square root.
//! * [`freeferm`] the exact free-fermion solution (complex Bogoliubov modes,
//!   per-sector many-body spectra, ground states in the spin basis).
//! * [`oracle`] brute-force exact diagonalization on the 2^N spin basis.
//! * [`phasemap`] broken/unbroken classification and the finite-N boundary.
//! * [`symmetry`] RT action on states and operators.
//! * [`counterpart`] the Hermitian counterpart and its reduced XY form.
//! * [`matching`] multiset comparison of spectra.
//! * [`validation`] the end-to-end acceptance checks.
//!
//! Basis convention used everywhere: bit `j` of a basis index is the
//! Jordan-Wigner fermion occupancy of site `j` (1 = spin down), site 0 is
//! the least significant bit.

pub mod counterpart;
pub mod error;
pub mod freeferm;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod phasemap;
pub mod symmetry;
pub mod validation;

pub use error::{Error, Result};
pub use model::{ModelParams, Momentum, Sector};

pub use num_complex::Complex64;
