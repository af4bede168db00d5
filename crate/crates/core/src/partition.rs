//! Electronic Hamiltonians in Majorana form, partitioned into sets of
//! mutually anticommuting terms, and the rotations that collapse each set
//! onto a single Majorana monomial.
//!
//! The electronic Hamiltonian is
//! `H = Σ h_pq a_p† a_q + ½ Σ h_pqrs a_p† a_q† a_r a_s`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::{sets_anticommute, MajoranaMonomial};
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::tolerance::DEFAULT as TOL;

/// Generators of the eightfold permutation symmetry of `h_pqrs`.
fn symmetry_images(i: [usize; 4]) -> [[usize; 4]; 3] {
    let [p, q, r, s] = i;
    [[s, q, r, p], [p, r, q, s], [q, p, s, r]]
}

/// The full orbit of an index tuple under the symmetry group.
fn orbit(i: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = vec![i];
    let mut k = 0;
    while k < out.len() {
        for j in symmetry_images(out[k]) {
            if !out.contains(&j) {
                out.push(j);
            }
        }
        k += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElectronicIntegrals {
    n: usize,
    h1: DMatrix<f64>,
    h2: Vec<f64>,
}

/// One stored two-body integral of the JSON form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub pqrs: [usize; 4],
    pub value: f64,
}

impl ElectronicIntegrals {
    /// Checks `h1 = h1ᵀ` and the eightfold symmetry of the dense `n⁴` tensor
    /// (index order `p, q, r, s`, `s` fastest).
    pub fn new(h1: DMatrix<f64>, h2: Vec<f64>) -> Result<Self> {
        let n = h1.nrows();
        if n == 0 || !h1.is_square() || h2.len() != n.pow(4) {
            return Err(Error::Dimension(format!(
                "h1 is {}x{} and h2 has {} entries",
                h1.nrows(),
                h1.ncols(),
                h2.len()
            )));
        }
        let ints = ElectronicIntegrals { n, h1, h2 };
        let d = (&ints.h1 - ints.h1.transpose()).amax();
        if d > TOL.validation {
            return Err(Error::IntegralSymmetry(format!("h1 asymmetric by {d:e}")));
        }
        for idx in ints.tuples() {
            for j in symmetry_images(idx) {
                let d = (ints.at(idx) - ints.at(j)).abs();
                if d > TOL.validation {
                    return Err(Error::IntegralSymmetry(format!(
                        "h2{idx:?} and h2{j:?} differ by {d:e}"
                    )));
                }
            }
        }
        Ok(ints)
    }

    /// Fills every listed entry's symmetry orbit; conflicting values are an error.
    pub fn from_sparse(h1: DMatrix<f64>, entries: &[SparseEntry]) -> Result<Self> {
        let n = h1.nrows();
        let mut h2 = vec![0.0; n.pow(4)];
        let mut set = vec![false; n.pow(4)];
        for e in entries {
            if e.pqrs.iter().any(|&i| i >= n) {
                return Err(Error::Dimension(format!(
                    "index {:?} out of range for n={n}",
                    e.pqrs
                )));
            }
            for j in orbit(e.pqrs) {
                let k = flat(n, j);
                if set[k] && (h2[k] - e.value).abs() > TOL.validation {
                    return Err(Error::IntegralSymmetry(format!(
                        "entry {:?} = {} conflicts with {:?} = {}",
                        e.pqrs, e.value, j, h2[k]
                    )));
                }
                h2[k] = e.value;
                set[k] = true;
            }
        }
        Self::new(h1, h2)
    }

    /// Gaussian random integrals, symmetrized over the permutation group.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one orbital".into()));
        }
        let a = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let h1 = (&a + a.transpose()) * 0.5;
        let raw: Vec<f64> = (0..n.pow(4)).map(|_| rng.sample(StandardNormal)).collect();
        let mut h2 = vec![0.0; n.pow(4)];
        let mut done = vec![false; n.pow(4)];
        for k in 0..n.pow(4) {
            if done[k] {
                continue;
            }
            let orb = orbit(unflat(n, k));
            let mean = orb.iter().map(|&j| raw[flat(n, j)]).sum::<f64>() / orb.len() as f64;
            for j in orb {
                h2[flat(n, j)] = mean;
                done[flat(n, j)] = true;
            }
        }
        Self::new(h1, h2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h1(&self) -> &DMatrix<f64> {
        &self.h1
    }

    pub fn h2(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.h2[flat(self.n, [p, q, r, s])]
    }

    fn at(&self, i: [usize; 4]) -> f64 {
        self.h2[flat(self.n, i)]
    }

    fn tuples(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        (0..self.n.pow(4)).map(move |k| unflat(self.n, k))
    }

    /// One representative per nonzero symmetry orbit.
    pub fn sparse_entries(&self) -> Vec<SparseEntry> {
        let mut seen = vec![false; self.h2.len()];
        let mut out = Vec::new();
        for idx in self.tuples() {
            let k = flat(self.n, idx);
            if seen[k] {
                continue;
            }
            for j in orbit(idx) {
                seen[flat(self.n, j)] = true;
            }
            if self.h2[k] != 0.0 {
                out.push(SparseEntry {
                    pqrs: idx,
                    value: self.h2[k],
                });
            }
        }
        out
    }
}

fn flat(n: usize, [p, q, r, s]: [usize; 4]) -> usize {
    ((p * n + q) * n + r) * n + s
}

fn unflat(n: usize, mut k: usize) -> [usize; 4] {
    let mut out = [0; 4];
    for slot in out.iter_mut().rev() {
        *slot = k % n;
        k /= n;
    }
    out
}

/// `constant · I + Σ_μ h_μ Γ_μ` with real coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MajoranaPolynomial {
    n_modes: usize,
    constant: f64,
    terms: BTreeMap<Vec<usize>, f64>,
}

impl MajoranaPolynomial {
    pub fn new(n_modes: usize) -> Self {
        MajoranaPolynomial {
            n_modes,
            constant: 0.0,
            terms: BTreeMap::new(),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn set_constant(&mut self, c: f64) {
        self.constant = c;
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, f64> {
        &self.terms
    }

    /// Adds `c · Γ_indices`; the index set must be even, ascending and in range.
    pub fn add_term(&mut self, indices: Vec<usize>, c: f64) -> Result<()> {
        MajoranaMonomial::new(self.n_modes, indices.clone())?;
        if indices.len() % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "odd-degree term {indices:?}"
            )));
        }
        if !c.is_finite() {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        if indices.is_empty() {
            self.constant += c;
        } else {
            *self.terms.entry(indices).or_insert(0.0) += c;
        }
        Ok(())
    }

    /// Adds `c` times a raw ordered generator product, which must have a real
    /// coefficient once brought to canonical form.
    fn add_product(&mut self, seq: &[usize], c: f64, imaginary: bool) -> Result<()> {
        let m = MajoranaMonomial::from_product(self.n_modes, seq)?;
        let z = m.phase_value()
            * if imaginary {
                num_complex::Complex64::new(0.0, c)
            } else {
                c.into()
            };
        if z.im.abs() > 1e-12 * c.abs().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "product {seq:?} has a non-real canonical coefficient"
            )));
        }
        self.add_term(m.indices().to_vec(), z.re)
    }

    /// Drops terms with `|coefficient| < cutoff`.
    pub fn pruned(&self, cutoff: f64) -> Self {
        MajoranaPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.abs() >= cutoff)
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
            ..self.clone()
        }
    }

    /// `Σ |h_μ|`, constant excluded.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

/// Majorana form with `γ_{2p}` / `γ_{2p+1}` the real and imaginary parts of `a_p`:
///
/// ```text
/// H = h̃ + Σ_{p,q} h̃_pq i γ_{2p} γ_{2q+1} + ½ Σ_{p≠q, r≠s} h̃_pqrs γ_{2p} γ_{2q} γ_{2r+1} γ_{2s+1}
/// h̃      = ½ Σ_p h_pp + ⅛ Σ_{p≠q} (h_pqqp − h_pqpq)
/// h̃_pq   = ½ h_pq + ¼ Σ_{r≠p,q} (h_prrq − h_pqrr)
/// h̃_pqrs = −¼ h_pqrs
/// ```
pub fn majorana_form(ints: &ElectronicIntegrals) -> Result<MajoranaPolynomial> {
    let n = ints.n;
    let h1 = &ints.h1;
    let h = |p, q, r, s| ints.h2(p, q, r, s);
    let mut poly = MajoranaPolynomial::new(n);

    let mut c = 0.0;
    for p in 0..n {
        c += 0.5 * h1[(p, p)];
        for q in 0..n {
            if p != q {
                c += 0.125 * (h(p, q, q, p) - h(p, q, p, q));
            }
        }
    }
    poly.set_constant(c);

    for p in 0..n {
        for q in 0..n {
            let mut t = 0.5 * h1[(p, q)];
            for r in 0..n {
                if r != p && r != q {
                    t += 0.25 * (h(p, r, r, q) - h(p, q, r, r));
                }
            }
            if t != 0.0 {
                poly.add_product(&[2 * p, 2 * q + 1], t, true)?;
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            for r in 0..n {
                for s in 0..n {
                    if r == s {
                        continue;
                    }
                    let t = -0.25 * h(p, q, r, s);
                    if t != 0.0 {
                        poly.add_product(&[2 * p, 2 * q, 2 * r + 1, 2 * s + 1], 0.5 * t, false)?;
                    }
                }
            }
        }
    }
    poly.terms.retain(|_, c| *c != 0.0);
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnticommutingSet {
    pub members: Vec<Vec<usize>>,
    pub betas: Vec<f64>,
    pub gamma: f64,
}

impl AnticommutingSet {
    fn from_terms(terms: Vec<(Vec<usize>, f64)>) -> Self {
        let gamma = terms.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        let (members, coeffs): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
        let betas = coeffs
            .iter()
            .map(|c| if gamma > 0.0 { c / gamma } else { 0.0 })
            .collect();
        AnticommutingSet {
            members,
            betas,
            gamma,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_anticommuting(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, a)| self.members[i + 1..].iter().all(|b| sets_anticommute(a, b)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnticommutingPartition {
    pub sets: Vec<AnticommutingSet>,
    pub covers: bool,
}

impl AnticommutingPartition {
    pub fn s_max(&self) -> usize {
        self.sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// True iff every member appears exactly once and `γ β` reproduces the
    /// polynomial's coefficients.
    pub fn check_covers(&self, poly: &MajoranaPolynomial) -> bool {
        let mut seen = BTreeMap::new();
        for s in &self.sets {
            for (m, b) in s.members.iter().zip(&s.betas) {
                if seen.insert(m.clone(), s.gamma * b).is_some() {
                    return false;
                }
            }
        }
        seen.len() == poly.terms.len()
            && poly.terms.iter().all(|(k, c)| {
                seen.get(k)
                    .is_some_and(|v| (v - c).abs() <= 1e-10 * c.abs().max(1.0))
            })
    }
}

/// Greedy colouring: terms in order of decreasing `|h|` (ties broken
/// lexicographically) join the first set they anticommute with entirely.
pub fn greedy_partition(poly: &MajoranaPolynomial) -> AnticommutingPartition {
    let pruned = poly.pruned(TOL.coefficient);
    let mut order: Vec<(&Vec<usize>, f64)> = pruned.terms.iter().map(|(k, &c)| (k, c)).collect();
    order.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()).then_with(|| a.0.cmp(b.0)));
    let mut sets: Vec<Vec<(Vec<usize>, f64)>> = Vec::new();
    for (k, c) in order {
        match sets
            .iter_mut()
            .find(|s| s.iter().all(|(m, _)| sets_anticommute(m, k)))
        {
            Some(s) => s.push((k.clone(), c)),
            None => sets.push(vec![(k.clone(), c)]),
        }
    }
    let partition = AnticommutingPartition {
        sets: sets.into_iter().map(AnticommutingSet::from_terms).collect(),
        covers: false,
    };
    AnticommutingPartition {
        covers: partition.check_covers(&pruned),
        ..partition
    }
}

/// Index-set template covering every quadratic `{2p, 2q+1}` and quartic
/// `{2p, 2q, 2r+1, 2s+1}` (`p<q`, `r<s`) support on `n` modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionTemplate {
    pub n_modes: usize,
    pub quartic_sets: usize,
    pub sets: Vec<Vec<Vec<usize>>>,
}

/// The analytic partition.
///
/// Quartic sets are `S_(q,r,s) = {{2p, 2q, 2r+1, 2s+1} : p < q}` for `q ≥ 1`,
/// `r < s`, with `S_(1,r,s)` merged into `S_(2,r,s)`, giving `C(n,2)(n-2)`
/// sets for `n ≥ 3`. For `n ≥ 4` the quadratics `T_p = {{2p, 2q+1}}` with
/// `p ≥ 3` are split between `S_(p,0,1)` and `S_(p,2,3)`; the remaining
/// quadratic families are emitted as sets of their own.
pub fn analytic_partition(n: usize) -> Result<PartitionTemplate> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "analytic partition needs n >= 2, got {n}"
        )));
    }
    let mut quartic: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for q in 1..n {
        let key_q = if q == 1 && n >= 3 { 2 } else { q };
        for r in 0..n {
            for s in r + 1..n {
                let set = quartic.entry((key_q, r, s)).or_default();
                for p in 0..q {
                    let mut m = vec![2 * p, 2 * q, 2 * r + 1, 2 * s + 1];
                    m.sort_unstable();
                    set.push(m);
                }
            }
        }
    }
    for set in quartic.values_mut() {
        set.sort();
    }
    let quartic_sets = quartic.len();

    let mut standalone = Vec::new();
    for p in 0..n {
        let t_p: Vec<Vec<usize>> = (0..n)
            .map(|q| {
                let mut t = vec![2 * p, 2 * q + 1];
                t.sort_unstable();
                t
            })
            .collect();
        if n >= 4 && p >= 3 {
            // {2p, 1} and {2p, 3} commute with every member of S_(p,0,1)
            let (excluded, kept): (Vec<_>, Vec<_>) = t_p
                .into_iter()
                .partition(|t| t.contains(&1) || t.contains(&3));
            quartic
                .get_mut(&(p, 0, 1))
                .expect("q = p >= 3 set exists")
                .extend(kept);
            quartic
                .get_mut(&(p, 2, 3))
                .expect("q = p >= 3 set exists")
                .extend(excluded);
        } else {
            standalone.push(t_p);
        }
    }
    let mut sets: Vec<Vec<Vec<usize>>> = quartic.into_values().collect();
    sets.extend(standalone);
    Ok(PartitionTemplate {
        n_modes: n,
        quartic_sets,
        sets,
    })
}

/// Expected number of quartic sets, `C(n,2)(n-2)`.
pub fn analytic_quartic_count(n: usize) -> usize {
    (binomial(n, 2) as usize) * n.saturating_sub(2)
}

/// Restricts a template to the polynomial's support.
pub fn apply_template(
    template: &PartitionTemplate,
    poly: &MajoranaPolynomial,
) -> Result<AnticommutingPartition> {
    if template.n_modes != poly.n_modes {
        return Err(Error::ModeMismatch(template.n_modes, poly.n_modes));
    }
    let pruned = poly.pruned(TOL.coefficient);
    let mut placed = 0;
    let mut sets = Vec::new();
    for t in &template.sets {
        let terms: Vec<(Vec<usize>, f64)> = t
            .iter()
            .filter_map(|m| pruned.terms.get(m).map(|&c| (m.clone(), c)))
            .collect();
        placed += terms.len();
        if !terms.is_empty() {
            sets.push(AnticommutingSet::from_terms(terms));
        }
    }
    if placed != pruned.terms.len() {
        return Err(Error::Partition(format!(
            "template covers {placed} of {} terms",
            pruned.terms.len()
        )));
    }
    let partition = AnticommutingPartition {
        sets,
        covers: false,
    };
    Ok(AnticommutingPartition {
        covers: partition.check_covers(&pruned),
        ..partition
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationStep {
    pub member: Vec<usize>,
    pub theta: f64,
}

/// `R = R_{s,s-1} ⋯ R_{s,1}` with `R_{sk} = exp(-iθ_k X_{sk}/2)` and
/// `X_{sk} = i P_s P_k`, so that `R H_S R† = γ · target_sign · P_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationPlan {
    pub target: Vec<usize>,
    pub target_sign: i8,
    pub steps: Vec<RotationStep>,
}

/// Angles of the sequential two-term rotations for a normalized set.
pub fn rotation_plan(set: &AnticommutingSet) -> Result<RotationPlan> {
    let live: Vec<(&Vec<usize>, f64)> = set
        .members
        .iter()
        .zip(&set.betas)
        .filter(|(_, b)| b.abs() >= TOL.coefficient)
        .map(|(m, &b)| (m, b))
        .collect();
    let Some((&(target, beta_s), rest)) = live.split_last() else {
        return Err(Error::Partition("set has no nonzero coefficient".into()));
    };
    let norm: f64 = live.iter().map(|(_, b)| b * b).sum::<f64>();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Partition(format!("betas have squared norm {norm}")));
    }
    let mut acc = beta_s;
    let mut steps = Vec::with_capacity(rest.len());
    for &(m, b) in rest {
        let theta = b.atan2(acc);
        acc = acc.hypot(b);
        steps.push(RotationStep {
            member: m.clone(),
            theta,
        });
    }
    Ok(RotationPlan {
        target: target.clone(),
        target_sign: if acc < 0.0 { -1 } else { 1 },
        steps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormsReport {
    pub lambda: f64,
    pub lambda_c: f64,
    pub s_max: usize,
    pub bounds_ok: bool,
}

/// `Λ = Σ|h|`, `Λ_c = Σ γ_l` and the check `Λ/√s_max ≤ Λ_c ≤ Λ`.
pub fn norms_report(
    poly: &MajoranaPolynomial,
    partition: &AnticommutingPartition,
) -> Result<NormsReport> {
    if !partition.check_covers(&poly.pruned(TOL.coefficient)) {
        return Err(Error::Partition(
            "partition does not match the polynomial".into(),
        ));
    }
    let lambda = poly.pruned(TOL.coefficient).one_norm();
    let lambda_c: f64 = partition.sets.iter().map(|s| s.gamma).sum();
    let s_max = partition.s_max();
    let slack = 1e-12 * lambda.max(1.0);
    let bounds_ok = s_max == 0
        || (lambda / (s_max as f64).sqrt() <= lambda_c + slack && lambda_c <= lambda + slack);
    Ok(NormsReport {
        lambda,
        lambda_c,
        s_max,
        bounds_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit([0, 1, 2, 3]).len(), 8);
        assert_eq!(orbit([0, 0, 0, 0]).len(), 1);
        assert!(orbit([0, 1, 2, 3]).contains(&[3, 2, 1, 0]));
    }

    #[test]
    fn zero_integrals_give_zero_polynomial() {
        let ints = ElectronicIntegrals::new(DMatrix::zeros(3, 3), vec![0.0; 81]).unwrap();
        let poly = majorana_form(&ints).unwrap();
        assert_eq!(poly.constant(), 0.0);
        assert!(poly.terms().is_empty());
    }

    #[test]
    fn number_operator_form() {
        let ints = ElectronicIntegrals::new(DMatrix::identity(2, 2), vec![0.0; 16]).unwrap();
        let poly = majorana_form(&ints).unwrap();
        assert_eq!(poly.constant(), 1.0);
        // i γ_{2p} γ_{2p+1} = -Γ_{(2p,2p+1)}
        assert_eq!(poly.terms().len(), 2);
        assert_eq!(poly.terms()[&vec![0, 1]], -0.5);
        assert_eq!(poly.terms()[&vec![2, 3]], -0.5);
    }

    #[test]
    fn sparse_conflicts_rejected() {
        let h1 = DMatrix::zeros(2, 2);
        let e = |pqrs, value| SparseEntry { pqrs, value };
        assert!(ElectronicIntegrals::from_sparse(h1.clone(), &[e([0, 1, 1, 0], 1.0)]).is_ok());
        let clash = [e([0, 1, 1, 0], 1.0), e([1, 0, 0, 1], 2.0)];
        assert!(matches!(
            ElectronicIntegrals::from_sparse(h1, &clash),
            Err(Error::IntegralSymmetry(_))
        ));
        let asym = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(ElectronicIntegrals::new(asym, vec![0.0; 16]).is_err());
    }

    #[test]
    fn sparse_round_trip() {
        let mut rng = rand::rng();
        let ints = ElectronicIntegrals::random(3, &mut rng).unwrap();
        let back =
            ElectronicIntegrals::from_sparse(ints.h1().clone(), &ints.sparse_entries()).unwrap();
        assert_eq!(back, ints);
    }

    #[test]
    fn greedy_extremes() {
        let mut anti = MajoranaPolynomial::new(2);
        for s in [vec![0, 1], vec![1, 2], vec![0, 2]] {
            anti.add_term(s, 1.0).unwrap();
        }
        assert_eq!(greedy_partition(&anti).sets.len(), 1);
        let mut comm = MajoranaPolynomial::new(2);
        comm.add_term(vec![0, 1], 1.0).unwrap();
        comm.add_term(vec![2, 3], 2.0).unwrap();
        let p = greedy_partition(&comm);
        assert_eq!(p.sets.len(), 2);
        assert_eq!(p.sets[0].members, vec![vec![2, 3]]);
        assert!(p.covers);
    }

    #[test]
    fn template_counts() {
        assert_eq!(analytic_partition(4).unwrap().quartic_sets, 12);
        assert_eq!(analytic_partition(2).unwrap().quartic_sets, 1);
        assert!(analytic_partition(1).is_err());
        for n in 3..9 {
            assert_eq!(
                analytic_partition(n).unwrap().quartic_sets,
                analytic_quartic_count(n)
            );
        }
    }

    #[test]
    fn two_term_plan_angle() {
        let set = AnticommutingSet {
            members: vec![vec![0, 2], vec![0, 1]],
            betas: vec![0.6, 0.8],
            gamma: 1.0,
        };
        let plan = rotation_plan(&set).unwrap();
        assert_eq!(plan.target, vec![0, 1]);
        assert!((plan.steps[0].theta - (0.75f64).atan()).abs() < 1e-15);
        let single = AnticommutingSet {
            members: vec![vec![0, 1]],
            betas: vec![-1.0],
            gamma: 2.0,
        };
        let plan = rotation_plan(&single).unwrap();
        assert!(plan.steps.is_empty());
        assert_eq!(plan.target_sign, -1);
        let zero = AnticommutingSet {
            members: vec![vec![0, 1]],
            betas: vec![0.0],
            gamma: 0.0,
        };
        assert!(rotation_plan(&zero).is_err());
    }

    #[test]
    fn trivial_partition_saturates_upper_bound() {
        let mut comm = MajoranaPolynomial::new(2);
        comm.add_term(vec![0, 1], 1.5).unwrap();
        comm.add_term(vec![2, 3], -2.0).unwrap();
        let r = norms_report(&comm, &greedy_partition(&comm)).unwrap();
        assert_eq!(r.lambda, r.lambda_c);
        assert!(r.bounds_ok);
    }
}
