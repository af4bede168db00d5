//! Independent oracles shared by the integration tests. Everything here is
//! built from dense Fock-space linear algebra or plain combinatorics, never
//! from the fast routines under test.

#![allow(dead_code)]

use freefermion::dense::{self, DenseOperator, DenseState};
use freefermion::gaussian::{vacuum_covariance, CovarianceMatrix, SlaterDeterminant};
use freefermion::random;
use freefermion::Result;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

/// `n choose k` by the multiplicative formula.
pub fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Random pure Gaussian state as a covariance matrix and as the dense vector
/// `exp(-iH)|0⟩`, optionally followed by `γ_0` to make it odd.
pub fn gaussian_pair<R: Rng + ?Sized>(
    n: usize,
    odd: bool,
    rng: &mut R,
) -> Result<(CovarianceMatrix, DenseState)> {
    let h = random::quadratic_hamiltonian(n, rng)?;
    let mut psi = dense::exp_quadratic(&h)?.apply(&DenseState::vacuum(n)?)?;
    let mut q = h.propagator();
    if odd {
        psi = dense::build_majorana(n, 0)?.apply(&psi)?;
        for mu in 1..2 * n {
            q.row_mut(mu).neg_mut();
        }
    }
    Ok((vacuum_covariance(n)?.evolve(&q)?, psi))
}

/// Dense vector of a Slater determinant, `∏_j (Σ_p U_pj a_p†)|0⟩`.
pub fn slater_state(s: &SlaterDeterminant) -> Result<DenseState> {
    let n = s.n_modes();
    let creators = (0..n)
        .map(|p| dense::creation(n, p))
        .collect::<Result<Vec<_>>>()?;
    let mut psi = DenseState::vacuum(n)?;
    for j in 0..s.eta() {
        let mut b = DenseOperator::zeros(n)?;
        for (p, c) in creators.iter().enumerate() {
            b = b.add(&c.scale(s.orbitals()[(p, j)]));
        }
        psi = b.apply(&psi)?;
    }
    Ok(psi)
}

/// `D[(p1,p2),(q1,q2)] = ⟨a_{q1}† a_{q2}† a_{p2} a_{p1}⟩` for pairs `p1 < p2`,
/// `q1 < q2` in lexicographic order.
pub fn dense_two_rdm(psi: &DenseState, n: usize) -> Result<DMatrix<Complex64>> {
    let a = (0..n)
        .map(|p| dense::annihilation(n, p))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    let mut vecs = Vec::new();
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            pairs.push((p1, p2));
            vecs.push(a[p2].apply(&a[p1].apply(psi)?)?.vector);
        }
    }
    let m = pairs.len();
    Ok(DMatrix::from_fn(m, m, |i, j| vecs[j].dotc(&vecs[i])))
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let cov: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    cov / var
}

pub fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// All permutations of `0..d` (Heap's algorithm).
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..d).collect();
    let mut c = vec![0; d];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Is `{..}` a product of complete pairs `{2p, 2p+1}`?
pub fn is_number_monomial(set: &[usize]) -> bool {
    set.len().is_multiple_of(2) && set.chunks(2).all(|c| c[0] % 2 == 0 && c[1] == c[0] + 1)
}
