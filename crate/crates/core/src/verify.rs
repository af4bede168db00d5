//! Oracle-equivalence checks: every fast path against the dense reference.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Bitstring, MajoranaMonomial, SignedPermutation};
use crate::combin::combinations;
use crate::compiler::{compile_blocked, compile_naive, program_to_orthogonal};
use crate::dense;
use crate::error::{arg, Result};
use crate::gaussian::{vacuum_covariance, CovarianceMatrix};
use crate::partition::{
    analytic_partition, apply_template, greedy_partition, majorana_form, norms_report,
    rotation_plan, ElectronicIntegrals,
};
use crate::random;
use crate::shadows::{single_shot_estimates, ShadowSample};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, err: f64, tol: f64) -> Check {
    Check {
        name,
        passed: err <= tol,
        detail: format!("max error {err:.2e} (tolerance {tol:.0e})"),
    }
}

/// All even index sets of degree `≤ max_degree` on `n` modes.
pub fn even_sets(n: usize, max_degree: usize) -> Vec<Vec<usize>> {
    (0..=max_degree.min(2 * n))
        .step_by(2)
        .flat_map(|k| combinations(2 * n, k))
        .collect()
}

/// A random pure Gaussian state built twice: as a covariance matrix and as a
/// dense vector `U|0⟩` with `U = exp(-iH)` for a random quadratic `H`. With
/// `odd` set, `γ_0` is applied afterwards to flip the parity.
pub fn random_gaussian_pair<R: Rng + ?Sized>(
    n: usize,
    odd: bool,
    rng: &mut R,
) -> Result<(CovarianceMatrix, dense::DenseState)> {
    let h = random::quadratic_hamiltonian(n, rng)?;
    let mut q = h.propagator();
    let mut psi = dense::exp_quadratic(&h)?.apply(&dense::DenseState::vacuum(n)?)?;
    if odd {
        for mu in 1..2 * n {
            q.row_mut(mu).neg_mut();
        }
        psi = dense::build_majorana(n, 0)?.apply(&psi)?;
    }
    Ok((vacuum_covariance(n)?.evolve(&q)?, psi))
}

/// Exact monomial products (phase included) against dense matrix products.
fn products(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let d = 2 * n;
    let mut err: f64 = 0.0;
    for _ in 0..20 {
        let mut pick = || {
            let s: Vec<usize> = (0..d).filter(|_| rng.random_bool(0.5)).collect();
            MajoranaMonomial::new(n, s)
        };
        let (a, b) = (pick()?, pick()?);
        let prod = a.multiply(&b)?;
        let lhs = dense::build_monomial(&prod)?;
        let rhs = dense::build_monomial(&a)?.mul(&dense::build_monomial(&b)?);
        err = err.max(lhs.max_diff(&rhs));
        let commutator = rhs.add(
            &dense::build_monomial(&b)?
                .mul(&dense::build_monomial(&a)?)
                .scale(Complex64::new(
                    if a.anticommutes(&b)? { 1.0 } else { -1.0 },
                    0.0,
                )),
        );
        err = err.max(commutator.max_abs());
    }
    Ok(err)
}

fn wick(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (g, psi) = random_gaussian_pair(n, rng.random(), rng)?;
    let mut err: f64 = 0.0;
    for set in even_sets(n, 6) {
        let m = MajoranaMonomial::new(n, set)?;
        let fast = g.wick_expectation(&m)?;
        let slow = dense::expectation(&psi, &dense::build_monomial(&m)?)?;
        err = err.max((fast - slow).norm());
    }
    Ok(err)
}

fn spectrum(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = random::quadratic_hamiltonian(n, rng)?;
    let mut fast = h.spectrum()?;
    let mut slow = dense::quadratic_operator(&h)?.hermitian_eigenvalues();
    fast.sort_by(f64::total_cmp);
    slow.sort_by(f64::total_cmp);
    Ok(fast
        .iter()
        .zip(&slow)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Total-variation distance between sampled and exact Born distributions.
fn sampling(n: usize, shots: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (g, psi) = random_gaussian_pair(n, rng.random(), rng)?;
    let born = dense::born_distribution(&psi);
    let mut counts = vec![0usize; 1 << n];
    for _ in 0..shots {
        counts[g.sample_measurement(rng).to_index()] += 1;
    }
    let tv: f64 = counts
        .iter()
        .zip(&born)
        .map(|(&c, p)| (c as f64 / shots as f64 - p).abs())
        .sum();
    Ok(0.5 * tv)
}

fn compiler_round_trip(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let q = random::orthogonal(2 * n, rng);
    let mut err: f64 = 0.0;
    for prog in [compile_naive(&q)?, compile_blocked(&q)?] {
        err = err.max((program_to_orthogonal(&prog)? - &q).amax());
    }
    Ok(err)
}

fn compiler_dense(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let q = random::orthogonal(2 * n, rng);
    let gammas = (0..2 * n)
        .map(|mu| dense::build_majorana(n, mu))
        .collect::<Result<Vec<_>>>()?;
    let mut err: f64 = 0.0;
    for prog in [compile_naive(&q)?, compile_blocked(&q)?] {
        let u = dense::program_unitary(&prog)?;
        for mu in 0..2 * n {
            let lhs = u.conjugate(&gammas[mu]);
            let mut rhs = dense::DenseOperator::zeros(n)?;
            for nu in 0..2 * n {
                rhs = rhs.add(&gammas[nu].scale(Complex64::new(q[(nu, mu)], 0.0)));
            }
            err = err.max(lhs.max_diff(&rhs));
        }
    }
    Ok(err)
}

fn majorana_form_check(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let ints = ElectronicIntegrals::random(n, rng)?;
    let poly = majorana_form(&ints)?;
    Ok(dense::polynomial_operator(&poly)?.max_diff(&dense::electronic_operator(&ints)?))
}

/// `Σ_l γ_l R_l† (±P_l) R_l` against the polynomial, for both partitioners.
fn partition_energy(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let ints = ElectronicIntegrals::random(n, rng)?;
    let poly = majorana_form(&ints)?;
    let target = dense::polynomial_operator(&poly)?;
    let mut err: f64 = 0.0;
    let partitions = [
        greedy_partition(&poly),
        apply_template(&analytic_partition(n)?, &poly)?,
    ];
    for part in partitions {
        if !part.covers || !part.sets.iter().all(|s| s.is_anticommuting()) {
            return Ok(f64::INFINITY);
        }
        if !norms_report(&poly, &part)?.bounds_ok {
            return Ok(f64::INFINITY);
        }
        let mut acc =
            dense::DenseOperator::identity(n)?.scale(Complex64::new(poly.constant(), 0.0));
        for set in &part.sets {
            let plan = rotation_plan(set)?;
            let r = dense::rotation_plan_unitary(n, &plan)?;
            let p = dense::build_monomial(&MajoranaMonomial::new(n, plan.target.clone())?)?;
            let term = r.adjoint().mul(&p).mul(&r);
            acc = acc.add(&term.scale(Complex64::new(set.gamma * plan.target_sign as f64, 0.0)));
        }
        err = err.max(acc.max_diff(&target));
    }
    Ok(err)
}

/// Enumerates the signed permutation group on `2n` letters.
pub fn signed_permutations(n: usize) -> Vec<SignedPermutation> {
    let d = 2 * n;
    let mut perms = vec![Vec::new()];
    for _ in 0..d {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..d)
                    .filter(|x| !p.contains(x))
                    .map(|x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Vec::with_capacity(perms.len() << d);
    for p in perms {
        for mask in 0..1u32 << d {
            let signs = (0..d)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPermutation::new(n, p.clone(), signs).expect("valid by construction"));
        }
    }
    out
}

/// Exact ensemble-and-Born average of the single-shot estimator.
pub fn exhaustive_channel(
    g: &CovarianceMatrix,
    group: &[SignedPermutation],
) -> Result<Vec<(Vec<usize>, f64)>> {
    let n = g.n_modes();
    let sets: Vec<Vec<usize>> = even_sets(n, 2 * n).into_iter().skip(1).collect();
    let mut avg = vec![0.0; sets.len()];
    let w = 1.0 / group.len() as f64;
    for q in group {
        let evolved = CovarianceMatrix::new(crate::shadows::permute_covariance(g, q)?)?;
        for idx in 0..1usize << n {
            let b = Bitstring::from_index(idx, n);
            let p = evolved.outcome_probability(&b)?;
            if p == 0.0 {
                continue;
            }
            let sample = ShadowSample { q: q.clone(), b };
            for (set, v) in single_shot_estimates(&sample, n)? {
                let k =
                    sets.binary_search_by(|s| s.len().cmp(&set.len()).then_with(|| s.cmp(&set)));
                avg[k.expect("even set present")] += w * p * v;
            }
        }
    }
    Ok(sets.into_iter().zip(avg).collect())
}

fn channel_identity(n: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let group = signed_permutations(n);
    let g = random::mixed_covariance(n, rng)?;
    let mut err: f64 = 0.0;
    for (set, v) in exhaustive_channel(&g, &group)? {
        let exact = g.wick_expectation(&MajoranaMonomial::new(n, set)?)?.re;
        err = err.max((v - exact).abs());
    }
    Ok(err)
}

/// Runs the suite at `n` modes; sampling and exhaustive checks are limited to
/// `n ≤ 3`, the partitioner to `n ≤ 4`.
pub fn run_suite(n: usize, seed: u64) -> Result<Vec<Check>> {
    if !(1..=5).contains(&n) {
        return arg(format!("verify supports 1..=5 modes, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        check("majorana products vs dense", products(n, &mut rng)?, 0.0),
        check("wick expectations vs dense", wick(n, &mut rng)?, 1e-9),
        check("free spectrum vs dense", spectrum(n, &mut rng)?, 1e-9),
        check(
            "compiler round trip",
            compiler_round_trip(n, &mut rng)?,
            1e-9,
        ),
        check(
            "compiled circuit vs dense",
            compiler_dense(n, &mut rng)?,
            1e-8,
        ),
    ];
    if n <= 3 {
        out.push(check(
            "sampling total variation",
            sampling(n, 100_000, &mut rng)?,
            0.01,
        ));
    }
    if n <= 2 {
        out.push(check(
            "shadow channel identity",
            channel_identity(n, &mut rng)?,
            1e-12,
        ));
    }
    if (2..=4).contains(&n) {
        out.push(check(
            "majorana form vs dense",
            majorana_form_check(n, &mut rng)?,
            1e-9,
        ));
        out.push(check(
            "partition energy identity",
            partition_energy(n, &mut rng)?,
            1e-8,
        ));
    }
    Ok(out)
}
