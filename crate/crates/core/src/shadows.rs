//! Matchgate classical shadows.
//!
//! A snapshot is a signed permutation `Q` drawn from the ensemble together with
//! the computational-basis outcome `b` of measuring `U_Q ρ U_Q†`. For every
//! diagonal index set `τ` with `j` pairs, the snapshot contributes
//! `λ_{n,j}⁻¹ · σ · ⟨b|Γ_τ|b⟩` to the estimate of `Γ_μ`, where `μ` is the
//! sorted image `π(τ)` and `σ` the sign with which `U_Q Γ_μ U_Q† = σ Γ_τ`.
//! All other sets receive zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Bitstring, MajoranaMonomial, SignedPermutation};
use crate::combin::{binomial, combinations, permutation_parity, rank, sort_with_parity};
use crate::error::{arg, Error, Result};
use crate::gaussian::{sample_in_place, CovarianceMatrix};
use crate::partition::MajoranaPolynomial;
use crate::tolerance::DEFAULT as TOL;

/// Measurement ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Group {
    /// All signed permutations of the `2n` generators.
    #[default]
    B,
    /// Unsigned even permutations.
    Alt,
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "b" | "B" => Ok(Group::B),
            "alt" | "Alt" => Ok(Group::Alt),
            _ => arg(format!("unknown group {s:?}, expected b or alt")),
        }
    }
}

/// Uniform element of the chosen group.
pub fn sample_ensemble<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    group: Group,
) -> Result<SignedPermutation> {
    if n == 0 {
        return arg("ensemble needs at least one mode");
    }
    let mut perm: Vec<usize> = (0..2 * n).collect();
    perm.shuffle(rng);
    let signs = match group {
        Group::B => (0..2 * n)
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect(),
        Group::Alt => {
            if permutation_parity(&perm) == 1 {
                perm.swap(0, 1);
            }
            vec![1; 2 * n]
        }
    };
    SignedPermutation::new(n, perm, signs)
}

/// `λ_{n,k} = C(n,k) / C(2n,2k)`.
pub fn channel_eigenvalue(n: usize, k: usize) -> Result<Ratio<u128>> {
    if k > n {
        return arg(format!("degree k = {k} exceeds n = {n}"));
    }
    Ok(Ratio::new(binomial(n, k), binomial(2 * n, 2 * k)))
}

/// `C(2n,2k) / C(n,k)`, the squared shadow norm of a degree-`2k` monomial.
pub fn shadow_norm_sq(n: usize, k: usize) -> Result<Ratio<u128>> {
    Ok(channel_eigenvalue(n, k)?.recip())
}

fn inverse_eigenvalue(n: usize, j: usize) -> f64 {
    binomial(2 * n, 2 * j) as f64 / binomial(n, j) as f64
}

/// `Σ_j λ_{n,j}^{-1/2} Σ_{|μ|=2j} |h_μ|`, the constant excluded.
pub fn observable_norm_bound(poly: &MajoranaPolynomial) -> f64 {
    let n = poly.n_modes();
    poly.terms()
        .iter()
        .map(|(set, c)| c.abs() * inverse_eigenvalue(n, set.len() / 2).sqrt())
        .sum()
}

/// Samples sufficient for `L` sample-mean estimates to be `ε`-accurate with
/// probability `1 - δ`: `(1 + ε/3) · 2 ln(2L/δ) / ε² · max_sq_norm`, rounded up.
pub fn sample_bound(epsilon: f64, delta: f64, l: u64, max_sq_norm: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return arg(format!("epsilon = {epsilon} not in (0, 1)"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return arg(format!("delta = {delta} not in (0, 1)"));
    }
    if l == 0 {
        return arg("need at least one observable");
    }
    if !(max_sq_norm > 0.0 && max_sq_norm.is_finite()) {
        return arg(format!("squared norm {max_sq_norm} must be positive"));
    }
    let m = (1.0 + epsilon / 3.0) * 2.0 * (2.0 * l as f64 / delta).ln() / (epsilon * epsilon)
        * max_sq_norm;
    Ok(m.ceil() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NoiseKind {
    #[default]
    None,
    BitFlip,
    Depolarizing,
    AmplitudeDamping,
}

/// Single-qubit readout channel applied just before measurement, reduced to
/// its action on the measured bit.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    kind: NoiseKind,
    p: f64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return arg(format!("noise probability {p} not in [0, 1]"));
        }
        Ok(NoiseModel { kind, p })
    }

    pub fn none() -> Self {
        NoiseModel::default()
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Pushes one ideal outcome bit through the channel.
    pub fn apply_bit<R: Rng + ?Sized>(&self, bit: bool, rng: &mut R) -> bool {
        let flip = |q: f64, rng: &mut R| q > 0.0 && rng.random::<f64>() < q;
        match self.kind {
            NoiseKind::None => bit,
            NoiseKind::BitFlip => bit ^ flip(self.p, rng),
            NoiseKind::Depolarizing => bit ^ flip(self.p / 2.0, rng),
            NoiseKind::AmplitudeDamping => bit && !flip(self.p, rng),
        }
    }

    /// `P(observed | ideal)` for one bit.
    pub fn transition(&self, ideal: bool, observed: bool) -> f64 {
        let q = match self.kind {
            NoiseKind::None => 0.0,
            NoiseKind::BitFlip => self.p,
            NoiseKind::Depolarizing => self.p / 2.0,
            NoiseKind::AmplitudeDamping => {
                return match (ideal, observed) {
                    (false, false) => 1.0,
                    (false, true) => 0.0,
                    (true, false) => self.p,
                    (true, true) => 1.0 - self.p,
                }
            }
        };
        if ideal == observed {
            1.0 - q
        } else {
            q
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    /// `none`, or `kind:p` with kind one of `bit_flip`, `depolarizing`,
    /// `amplitude_damping`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "none" {
            return Ok(NoiseModel::none());
        }
        let (kind, p) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("noise {s:?} is not kind:p")))?;
        let kind = match kind {
            "none" => NoiseKind::None,
            "bit_flip" | "bitflip" => NoiseKind::BitFlip,
            "depolarizing" => NoiseKind::Depolarizing,
            "amplitude_damping" => NoiseKind::AmplitudeDamping,
            _ => return arg(format!("unknown noise kind {kind:?}")),
        };
        let p: f64 = p
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad noise probability {p:?}")))?;
        NoiseModel::new(kind, p)
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            NoiseKind::None => return write!(f, "none"),
            NoiseKind::BitFlip => "bit_flip",
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::AmplitudeDamping => "amplitude_damping",
        };
        write!(f, "{name}:{}", self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowSample {
    pub q: SignedPermutation,
    pub b: Bitstring,
}

/// `Q M Qᵀ` for a signed permutation, entry by entry.
pub fn permute_covariance(g: &CovarianceMatrix, q: &SignedPermutation) -> Result<DMatrix<f64>> {
    if g.n_modes() != q.n_modes() {
        return Err(Error::ModeMismatch(g.n_modes(), q.n_modes()));
    }
    let m = g.matrix();
    let (pi, s) = (q.perm(), q.signs());
    let d = 2 * g.n_modes();
    Ok(DMatrix::from_fn(d, d, |a, b| {
        (s[a] * s[b]) as f64 * m[(pi[a], pi[b])]
    }))
}

/// Measures `U_Q ρ U_Q†` and passes the outcome through the readout noise.
pub fn acquire<R: Rng + ?Sized>(
    g: &CovarianceMatrix,
    q: &SignedPermutation,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<ShadowSample> {
    let m = permute_covariance(g, q)?;
    let mut work = m.as_slice().to_vec();
    let ideal = sample_in_place(&mut work, g.n_modes(), rng);
    let b = Bitstring(
        ideal
            .0
            .into_iter()
            .map(|bit| noise.apply_bit(bit, rng))
            .collect(),
    );
    Ok(ShadowSample { q: q.clone(), b })
}

/// The `C(n, j)` diagonal sets with `j` pairs, in lexicographic order.
fn diagonal_sets(n: usize, j: usize) -> Vec<Vec<usize>> {
    combinations(n, j)
        .map(|pairs| pairs.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect())
        .collect()
}

/// `(μ, σ·⟨b|Γ_τ|b⟩)` for every diagonal `τ` with `j` pairs.
fn hits<'a>(
    sample: &'a ShadowSample,
    taus: &'a [Vec<usize>],
) -> impl Iterator<Item = (Vec<usize>, i64)> + 'a {
    let (pi, s) = (sample.q.perm(), sample.q.signs());
    let bits = sample.b.bits();
    taus.iter().map(move |tau| {
        let mut odd = 0u32;
        let mut mu = Vec::with_capacity(tau.len());
        for (k, &t) in tau.iter().enumerate() {
            mu.push(pi[t]);
            if s[t] < 0 {
                odd ^= 1;
            }
            if k % 2 == 0 && bits[t / 2] {
                odd ^= 1;
            }
        }
        odd ^= sort_with_parity(&mut mu);
        (mu, if odd == 1 { -1 } else { 1 })
    })
}

/// Every nonzero single-snapshot estimate of degree `2..=2 k_max`.
pub fn single_shot_estimates(
    sample: &ShadowSample,
    k_max: usize,
) -> Result<Vec<(Vec<usize>, f64)>> {
    let n = sample.q.n_modes();
    if sample.b.len() != n {
        return Err(Error::ModeMismatch(sample.b.len(), n));
    }
    if k_max > n {
        return arg(format!("k_max = {k_max} exceeds n = {n}"));
    }
    let mut out = Vec::new();
    for j in 1..=k_max {
        let taus = diagonal_sets(n, j);
        let scale = inverse_eigenvalue(n, j);
        out.extend(hits(sample, &taus).map(|(mu, v)| (mu, scale * v as f64)));
    }
    Ok(out)
}

/// Exact integer sums of `σ⟨b|Γ_τ|b⟩` per index set, one dense vector per
/// degree indexed by the colex rank of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShadowAccumulator {
    n_modes: usize,
    k_max: usize,
    taus: Vec<Vec<Vec<usize>>>,
    sums: Vec<Vec<i64>>,
    count: u64,
}

impl ShadowAccumulator {
    pub fn new(n_modes: usize, k_max: usize) -> Result<Self> {
        if n_modes == 0 {
            return arg("accumulator needs at least one mode");
        }
        if k_max == 0 || k_max > n_modes {
            return arg(format!("k_max = {k_max} must be in 1..={n_modes}"));
        }
        let taus = (1..=k_max).map(|j| diagonal_sets(n_modes, j)).collect();
        let sums = (1..=k_max)
            .map(|j| vec![0; binomial(2 * n_modes, 2 * j) as usize])
            .collect();
        Ok(ShadowAccumulator {
            n_modes,
            k_max,
            taus,
            sums,
            count: 0,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn accumulate(&mut self, sample: &ShadowSample) -> Result<()> {
        if sample.q.n_modes() != self.n_modes || sample.b.len() != self.n_modes {
            return Err(Error::ModeMismatch(sample.q.n_modes(), self.n_modes));
        }
        for (j, taus) in self.taus.iter().enumerate() {
            for (mu, v) in hits(sample, taus) {
                self.sums[j][rank(&mu)] += v;
            }
        }
        self.count += 1;
        Ok(())
    }

    /// Entry-wise sum; associative and commutative.
    pub fn merge(&mut self, other: &Self) -> Result<()> {
        if other.n_modes != self.n_modes || other.k_max != self.k_max {
            return Err(Error::ModeMismatch(other.n_modes, self.n_modes));
        }
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.count += other.count;
        Ok(())
    }

    pub fn estimates(&self) -> Result<Estimates> {
        if self.count == 0 {
            return Err(Error::EmptyAccumulator);
        }
        let mut values = BTreeMap::new();
        for (jm1, sums) in self.sums.iter().enumerate() {
            let j = jm1 + 1;
            let scale = inverse_eigenvalue(self.n_modes, j) / self.count as f64;
            for subset in combinations(2 * self.n_modes, 2 * j) {
                let v = sums[rank(&subset)] as f64 * scale;
                values.insert(subset, v);
            }
        }
        Ok(Estimates {
            n_modes: self.n_modes,
            count: self.count,
            values,
        })
    }
}

/// Mean estimates of `tr(Γ_μ ρ)` for every even set of degree `2..=2 k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimates {
    pub n_modes: usize,
    pub count: u64,
    pub values: BTreeMap<Vec<usize>, f64>,
}

impl Estimates {
    /// The identity has expectation 1 by normalization.
    pub fn get(&self, set: &[usize]) -> Option<f64> {
        if set.is_empty() {
            return Some(1.0);
        }
        self.values.get(set).copied()
    }

    /// Scales every estimate of the given degree.
    pub fn scale_degree(&mut self, degree: usize, c: f64) {
        for (k, v) in self.values.iter_mut() {
            if k.len() == degree {
                *v *= c;
            }
        }
    }

    fn require(&self, set: &[usize]) -> Result<f64> {
        self.get(set)
            .ok_or_else(|| Error::MissingEstimate(format!("{set:?}")))
    }
}

/// Per-snapshot RNG: the master seed with the sample index as stream.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowConfig {
    pub group: Group,
    pub noise: NoiseModel,
    pub k_max: usize,
    pub seed: u64,
}

/// Snapshot number `index` of a run; a pure function of the configuration.
pub fn draw(g: &CovarianceMatrix, cfg: &ShadowConfig, index: u64) -> Result<ShadowSample> {
    let mut rng = sample_rng(cfg.seed, index);
    let q = sample_ensemble(g.n_modes(), &mut rng, cfg.group)?;
    acquire(g, &q, &cfg.noise, &mut rng)
}

/// Accumulates snapshots `range` in parallel. The result does not depend on
/// the thread count because every snapshot owns its RNG stream and integer
/// sums are order independent.
pub fn collect(
    g: &CovarianceMatrix,
    cfg: &ShadowConfig,
    range: Range<u64>,
) -> Result<ShadowAccumulator> {
    const CHUNK: u64 = 2048;
    let n = g.n_modes();
    let empty = ShadowAccumulator::new(n, cfg.k_max)?;
    let starts: Vec<u64> = (range.start..range.end).step_by(CHUNK as usize).collect();
    starts
        .into_par_iter()
        .map(|start| {
            let mut acc = empty.clone();
            for i in start..(start + CHUNK).min(range.end) {
                acc.accumulate(&draw(g, cfg, i)?)?;
            }
            Ok(acc)
        })
        .try_reduce(
            || empty.clone(),
            |mut a, b| {
                a.merge(&b)?;
                Ok(a)
            },
        )
}

/// Particle-number symmetry values `s₂ = η − n/2` and
/// `s₄ = C(n,2)/2 − η(n−η)` for `S₂ = −½ Σ Z_p`, `S₄ = ½ Σ_{p<q} Z_p Z_q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetrySpec {
    pub n_modes: usize,
    pub eta: usize,
    pub s2: f64,
    pub s4: f64,
    pub ancilla_added: bool,
}

fn symmetry_values(n: usize, eta: usize) -> (f64, f64) {
    let (n, eta) = (n as f64, eta as f64);
    (eta - n / 2.0, n * (n - 1.0) / 4.0 - eta * (n - eta))
}

/// Appends one vacuum ancilla mode when either value vanishes and
/// `auto_ancilla` is set.
pub fn symmetry_spec(n: usize, eta: usize, auto_ancilla: bool) -> Result<SymmetrySpec> {
    if n == 0 || eta > n {
        return arg(format!(
            "need 0 <= eta <= n with n >= 1, got n={n}, eta={eta}"
        ));
    }
    let (s2, s4) = symmetry_values(n, eta);
    if s2 != 0.0 && s4 != 0.0 {
        return Ok(SymmetrySpec {
            n_modes: n,
            eta,
            s2,
            s4,
            ancilla_added: false,
        });
    }
    if !auto_ancilla {
        return Err(Error::ZeroSymmetry { n, eta });
    }
    let (s2, s4) = symmetry_values(n + 1, eta);
    if s2 == 0.0 || s4 == 0.0 {
        return Err(Error::ZeroSymmetry { n: n + 1, eta });
    }
    Ok(SymmetrySpec {
        n_modes: n + 1,
        eta,
        s2,
        s4,
        ancilla_added: true,
    })
}

/// Estimated `⟨S₂⟩` and `⟨S₄⟩`; `None` for `S₄` when no degree-4 data exist.
pub fn symmetry_estimates(est: &Estimates, n: usize) -> Result<(f64, Option<f64>)> {
    let mut s2 = 0.0;
    for p in 0..n {
        s2 -= 0.5 * est.require(&[2 * p, 2 * p + 1])?;
    }
    if !est.values.keys().any(|k| k.len() == 4) {
        return Ok((s2, None));
    }
    let mut s4 = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s4 += 0.5 * est.require(&[2 * p, 2 * p + 1, 2 * q, 2 * q + 1])?;
        }
    }
    Ok((s2, Some(s4)))
}

/// Divides degree-2 estimates by `ŝ₂/s₂` and degree-4 estimates by `ŝ₄/s₄`.
/// Higher degrees have no symmetry reference and are returned unchanged.
pub fn mitigate(est: &Estimates, spec: &SymmetrySpec) -> Result<Estimates> {
    if est.n_modes != spec.n_modes {
        return Err(Error::ModeMismatch(est.n_modes, spec.n_modes));
    }
    let (h2, h4) = symmetry_estimates(est, spec.n_modes)?;
    let ratio = |hat: f64, s: f64, degree: usize| {
        let r = hat / s;
        if r.abs() < TOL.mitigation_ratio || !r.is_finite() {
            Err(Error::MitigationFailure { degree, ratio: r })
        } else {
            Ok(r)
        }
    };
    let mut out = est.clone();
    out.scale_degree(2, 1.0 / ratio(h2, spec.s2, 2)?);
    if let Some(h4) = h4 {
        out.scale_degree(4, 1.0 / ratio(h4, spec.s4, 4)?);
    }
    Ok(out)
}

/// Majorana expansion of `a_{q1}† a_{q2}† a_{p2} a_{p1}` as (set, coefficient).
fn ladder_expansion(
    n: usize,
    q1: usize,
    q2: usize,
    p2: usize,
    p1: usize,
) -> Result<Vec<(Vec<usize>, Complex64)>> {
    let half = Complex64::new(0.5, 0.0);
    let ihalf = Complex64::new(0.0, 0.5);
    // a = (γ_{2p} + iγ_{2p+1})/2, a† = (γ_{2p} − iγ_{2p+1})/2
    let create = |p: usize| [(2 * p, half), (2 * p + 1, -ihalf)];
    let annihilate = |p: usize| [(2 * p, half), (2 * p + 1, ihalf)];
    let factors = [create(q1), create(q2), annihilate(p2), annihilate(p1)];
    let mut acc: BTreeMap<Vec<usize>, Complex64> = BTreeMap::new();
    for choice in 0..16usize {
        let mut seq = [0usize; 4];
        let mut c = Complex64::new(1.0, 0.0);
        for (f, factor) in factors.iter().enumerate() {
            let (g, w) = factor[(choice >> f) & 1];
            seq[f] = g;
            c *= w;
        }
        let m = MajoranaMonomial::from_product(n, &seq)?;
        *acc.entry(m.indices().to_vec()).or_default() += c * m.phase_value();
    }
    Ok(acc.into_iter().filter(|(_, c)| c.norm() > 1e-15).collect())
}

/// Pairs `p < q` in lexicographic order, the row/column labels of the 2-RDM.
pub fn pair_labels(n: usize) -> Vec<(usize, usize)> {
    combinations(n, 2).map(|c| (c[0], c[1])).collect()
}

/// `²D[(p1,p2),(q1,q2)] = ⟨a_{q1}† a_{q2}† a_{p2} a_{p1}⟩` over the first `n`
/// modes, assembled from degree ≤ 4 estimates and Hermitian-symmetrized.
pub fn two_rdm(est: &Estimates, n: usize) -> Result<DMatrix<Complex64>> {
    if n < 2 || n > est.n_modes {
        return arg(format!(
            "2-RDM over {n} modes from {}-mode estimates",
            est.n_modes
        ));
    }
    let labels = pair_labels(n);
    let m = labels.len();
    let mut d = DMatrix::zeros(m, m);
    for (i, &(p1, p2)) in labels.iter().enumerate() {
        for (j, &(q1, q2)) in labels.iter().enumerate() {
            let mut v = Complex64::new(0.0, 0.0);
            for (set, c) in ladder_expansion(est.n_modes, q1, q2, p2, p1)? {
                v += c * est.require(&set)?;
            }
            d[(i, j)] = v;
        }
    }
    Ok((&d + d.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Exact 2-RDM of a number-conserving Gaussian state from its 1-RDM.
pub fn two_rdm_exact(d1: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let labels = pair_labels(d1.nrows());
    let m = labels.len();
    let mut d = DMatrix::zeros(m, m);
    for (i, &(p1, p2)) in labels.iter().enumerate() {
        for (j, &(q1, q2)) in labels.iter().enumerate() {
            d[(i, j)] = crate::gaussian::k_rdm_element(d1, &[p1, p2], &[q1, q2])?;
        }
    }
    Ok(d)
}

/// Largest singular value.
pub fn spectral_norm(a: &DMatrix<Complex64>) -> f64 {
    a.clone().singular_values().max()
}
