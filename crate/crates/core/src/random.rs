//! Random instances for tests, examples and experiments.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{arg, Result};
use crate::gaussian::{
    vacuum_covariance, CovarianceMatrix, QuadraticHamiltonian, SlaterDeterminant,
};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Haar-random element of `O(d)` (QR of a Gaussian matrix with sign fix).
pub fn orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let a = DMatrix::from_fn(d, d, |_, _| normal(rng));
    let qr = a.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Haar-random element of `SO(d)`.
pub fn special_orthogonal<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let mut q = orthogonal(d, rng);
    if q.clone().lu().determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Haar-random element of `U(n)`.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)));
    let qr = a.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Real antisymmetric matrix with standard normal upper-triangle entries.
pub fn antisymmetric<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let x = normal(rng);
            a[(i, j)] = x;
            a[(j, i)] = -x;
        }
    }
    a
}

pub fn quadratic_hamiltonian<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<QuadraticHamiltonian> {
    QuadraticHamiltonian::new(antisymmetric(2 * n, rng))
}

/// Complex Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)));
    (&a + a.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Slater determinant from the first `eta` columns of a Haar unitary.
pub fn slater<R: Rng + ?Sized>(n: usize, eta: usize, rng: &mut R) -> Result<SlaterDeterminant> {
    if eta > n {
        return arg(format!("cannot place {eta} particles in {n} modes"));
    }
    let u = unitary(n, rng);
    SlaterDeterminant::new(u.columns(0, eta).into_owned())
}

/// Pure Gaussian state `Q M_vac Qᵀ`; odd parity when `odd` is set.
pub fn pure_covariance<R: Rng + ?Sized>(
    n: usize,
    odd: bool,
    rng: &mut R,
) -> Result<CovarianceMatrix> {
    let mut q = special_orthogonal(2 * n, rng);
    if odd {
        q.column_mut(0).neg_mut();
    }
    vacuum_covariance(n)?.evolve(&q)
}

/// Mixed Gaussian state: a pure state with every normal-mode block shrunk
/// by a random factor in `[0, 1)`.
pub fn mixed_covariance<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CovarianceMatrix> {
    let mut m = vacuum_covariance(n)?.matrix().clone();
    for p in 0..n {
        let lam: f64 = rng.random();
        m[(2 * p, 2 * p + 1)] = lam;
        m[(2 * p + 1, 2 * p)] = -lam;
    }
    let q = orthogonal(2 * n, rng);
    let m = &q * m * q.transpose();
    CovarianceMatrix::new((&m - m.transpose()) * 0.5)
}
