//! Free-fermion simulation toolkit.
//!
//! * [`algebra`]: exact Majorana monomials, Jordan–Wigner images and signed permutations.
//! * [`gaussian`]: covariance matrices, Pfaffians, Slater determinants and Born sampling.
//! * [`dense`]: brute-force Fock-space reference used to validate everything else.
//! * [`shadows`]: matchgate classical shadows with symmetry-based error mitigation.
//! * [`compiler`]: Givens-rotation circuits for Gaussian unitaries.
//! * [`partition`]: anticommuting-set partitioning of electronic Hamiltonians.
//!
//! Conventions: modes are `0..n`, generators `0..2n`, `γ_{2p} = Z⋯Z X_p`,
//! `γ_{2p+1} = Z⋯Z Y_p`; bitstrings put mode 0 first.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod combin;
pub mod compiler;
pub mod dense;
pub mod error;
pub mod gaussian;
pub mod io;
pub mod partition;
pub mod random;
pub mod shadows;
pub mod tolerance;
pub mod verify;

pub use algebra::{Bitstring, MajoranaMonomial, PauliString, SignedPermutation};
pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix, QuadraticHamiltonian, SlaterDeterminant};
