//! Fermionic Gaussian states in polynomial time.
//!
//! A Gaussian state is fixed by its covariance matrix
//! `M_{μν} = -(i/2) tr([γ_μ, γ_ν] ρ)`, which for `μ < ν` is just `⟨Γ_{(μ,ν)}⟩`.
//! A Gaussian unitary with `U γ_μ U† = Σ_ν Q_{νμ} γ_ν` maps `M ↦ Q M Qᵀ`.
//! Higher moments follow from Wick's theorem: `tr(Γ_μ ρ) = Pf(M[μ, μ])`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{Bitstring, MajoranaMonomial};
use crate::error::{arg, Error, Result};
use crate::tolerance::DEFAULT as TOL;

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, &x| a.max(x.abs()))
}

fn antisymmetry_defect(m: &DMatrix<f64>) -> f64 {
    max_abs(&(m + m.transpose()))
}

pub(crate) fn orthogonality_defect(q: &DMatrix<f64>) -> f64 {
    if !q.is_square() {
        return f64::INFINITY;
    }
    let n = q.nrows();
    max_abs(&(q * q.transpose() - DMatrix::identity(n, n)))
}

/// Fails unless `q` is square, of the given size and orthogonal.
pub fn check_orthogonal(q: &DMatrix<f64>, dim: usize) -> Result<()> {
    if q.nrows() != dim || q.ncols() != dim {
        return Err(Error::Dimension(format!(
            "expected a {dim}x{dim} matrix, got {}x{}",
            q.nrows(),
            q.ncols()
        )));
    }
    let d = orthogonality_defect(q);
    if d > TOL.orthogonality {
        return Err(Error::NotOrthogonal(d));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates antisymmetry and that `-M²` has spectrum in `[0, 1]`.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || !matrix.nrows().is_multiple_of(2) || matrix.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "covariance must be 2n x 2n, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let d = antisymmetry_defect(&matrix);
        if d > TOL.antisymmetry {
            return Err(Error::NotAntisymmetric(d));
        }
        let m2 = -(&matrix * &matrix);
        let sym = (&m2 + m2.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym).eigenvalues;
        let slack = TOL.spectrum_slack;
        if let Some(bad) = eig.iter().find(|&&e| e < -slack || e > 1.0 + slack) {
            return Err(Error::InvalidState(format!(
                "eigenvalue {bad} of -M^2 outside [0, 1]"
            )));
        }
        Ok(CovarianceMatrix {
            n_modes: matrix.nrows() / 2,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(matrix: DMatrix<f64>) -> Self {
        CovarianceMatrix {
            n_modes: matrix.nrows() / 2,
            matrix,
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn is_pure(&self) -> bool {
        orthogonality_defect(&self.matrix) <= TOL.purity
    }

    /// `Q M Qᵀ`.
    pub fn evolve(&self, q: &DMatrix<f64>) -> Result<Self> {
        check_orthogonal(q, 2 * self.n_modes)?;
        let m = q * &self.matrix * q.transpose();
        // re-antisymmetrize against rounding
        let m = (&m - m.transpose()) * 0.5;
        Ok(CovarianceMatrix::new_unchecked(m))
    }

    /// The same state with extra vacuum modes appended at the end.
    pub fn with_vacuum_modes(&self, extra: usize) -> Self {
        let n = self.n_modes + extra;
        let mut m = vacuum_covariance(n).expect("n >= 1").matrix;
        let d = 2 * self.n_modes;
        m.view_mut((0, 0), (d, d)).copy_from(&self.matrix);
        CovarianceMatrix::new_unchecked(m)
    }

    /// `tr(m ρ)`; zero for odd degree.
    pub fn wick_expectation(&self, m: &MajoranaMonomial) -> Result<Complex64> {
        if m.n_modes() != self.n_modes {
            return Err(Error::ModeMismatch(m.n_modes(), self.n_modes));
        }
        let idx = m.indices();
        if idx.len() % 2 == 1 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let sub = self.matrix.select_rows(idx).select_columns(idx);
        Ok(m.phase_value() * pfaffian(&sub)?)
    }

    /// Exact probability of observing `b` in a computational-basis measurement.
    pub fn outcome_probability(&self, b: &Bitstring) -> Result<f64> {
        if b.len() != self.n_modes {
            return Err(Error::Dimension(format!(
                "bitstring of length {} for {} modes",
                b.len(),
                self.n_modes
            )));
        }
        let mut work = self.matrix.as_slice().to_vec();
        let mut prob = 1.0;
        for (j, &bit) in b.bits().iter().enumerate() {
            let p = condition_on_outcome(&mut work, 2 * self.n_modes, j, bit);
            prob *= p;
            if prob == 0.0 {
                break;
            }
        }
        Ok(prob)
    }

    /// Draws one computational-basis outcome from the Born distribution.
    pub fn sample_measurement<R: Rng + ?Sized>(&self, rng: &mut R) -> Bitstring {
        let mut work = self.matrix.as_slice().to_vec();
        sample_in_place(&mut work, self.n_modes, rng)
    }
}

/// Probability of the outcome `bit` on mode `j` given the (already conditioned)
/// covariance in `m` (column-major, `dim × dim`), after which the entries on
/// modes `> j` are updated to the post-measurement state.
///
/// Uses `M'_{kl} = M_{kl} + s (M_{kb} M_{la} - M_{ka} M_{lb}) / (1 + s M_{ab})`
/// with `a = 2j`, `b = 2j + 1` and `s = (-1)^bit`.
fn condition_on_outcome(m: &mut [f64], dim: usize, j: usize, bit: bool) -> f64 {
    let (a, b) = (2 * j, 2 * j + 1);
    let at = |m: &[f64], r: usize, c: usize| m[r + c * dim];
    let mab = at(m, a, b);
    let s = if bit { -1.0 } else { 1.0 };
    let p = clamp_probability(0.5 * (1.0 + s * mab));
    if p == 0.0 {
        return 0.0;
    }
    let denom = 1.0 + s * mab;
    for l in b + 1..dim {
        let (mla, mlb) = (at(m, l, a), at(m, l, b));
        for k in b + 1..l {
            let (mka, mkb) = (at(m, k, a), at(m, k, b));
            let v = at(m, k, l) + s * (mkb * mla - mka * mlb) / denom;
            m[k + l * dim] = v;
            m[l + k * dim] = -v;
        }
    }
    p
}

fn clamp_probability(p: f64) -> f64 {
    let eps = TOL.probability_clamp;
    if p < eps {
        0.0
    } else if p > 1.0 - eps {
        1.0
    } else {
        p
    }
}

/// Chain-rule sampler over a scratch copy of a covariance matrix; modes are
/// measured in ascending order.
pub(crate) fn sample_in_place<R: Rng + ?Sized>(m: &mut [f64], n: usize, rng: &mut R) -> Bitstring {
    let dim = 2 * n;
    let mut bits = Vec::with_capacity(n);
    for j in 0..n {
        let p0 = clamp_probability(0.5 * (1.0 + m[2 * j + (2 * j + 1) * dim]));
        let u: f64 = rng.random();
        let bit = u >= p0;
        condition_on_outcome(m, dim, j, bit);
        bits.push(bit);
    }
    Bitstring(bits)
}

/// Block diagonal of `n` copies of `[[0, 1], [-1, 0]]`.
pub fn vacuum_covariance(n: usize) -> Result<CovarianceMatrix> {
    if n == 0 {
        return arg("vacuum needs at least one mode");
    }
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for p in 0..n {
        m[(2 * p, 2 * p + 1)] = 1.0;
        m[(2 * p + 1, 2 * p)] = -1.0;
    }
    Ok(CovarianceMatrix::new_unchecked(m))
}

/// Covariance of a computational basis state.
pub fn basis_covariance(b: &Bitstring) -> Result<CovarianceMatrix> {
    let mut g = vacuum_covariance(b.len())?;
    for (p, &bit) in b.bits().iter().enumerate() {
        if bit {
            g.matrix[(2 * p, 2 * p + 1)] = -1.0;
            g.matrix[(2 * p + 1, 2 * p)] = 1.0;
        }
    }
    Ok(g)
}

/// `H = (-i/4) γᵀ A γ` for a real antisymmetric `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    n_modes: usize,
    coupling: DMatrix<f64>,
}

impl QuadraticHamiltonian {
    pub fn new(coupling: DMatrix<f64>) -> Result<Self> {
        if !coupling.is_square() || !coupling.nrows().is_multiple_of(2) || coupling.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "coupling must be 2n x 2n, got {}x{}",
                coupling.nrows(),
                coupling.ncols()
            )));
        }
        let d = antisymmetry_defect(&coupling);
        let scale = max_abs(&coupling).max(1.0);
        if d > TOL.validation * scale {
            return Err(Error::NotAntisymmetric(d));
        }
        Ok(QuadraticHamiltonian {
            n_modes: coupling.nrows() / 2,
            coupling,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn coupling(&self) -> &DMatrix<f64> {
        &self.coupling
    }

    /// Orthogonal matrix of the Gaussian unitary `e^{-iH}`, which is `e^{-A}`.
    pub fn propagator(&self) -> DMatrix<f64> {
        (-&self.coupling).exp()
    }

    /// Block form `A = Q Λ Qᵀ` with `Λ = ⊕ [[0, ε_p], [-ε_p, 0]]`, `ε` descending.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    /// All `2ⁿ` eigenvalues of `H`, namely `½ Σ_p ±ε_p`, indexed by the
    /// occupation bitstring of the normal modes (`+` for an empty mode).
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        const MAX: usize = 20;
        if self.n_modes > MAX {
            return Err(Error::TooLarge {
                n: self.n_modes,
                max: MAX,
            });
        }
        let eps = self.canonical_form().energies;
        Ok(free_spectrum(&eps))
    }
}

/// `½ Σ_p (-1)^{b_p} ε_p` over all bitstrings `b`.
pub fn free_spectrum(eps: &[f64]) -> Vec<f64> {
    let n = eps.len();
    (0..1usize << n)
        .map(|idx| {
            eps.iter()
                .enumerate()
                .map(|(p, &e)| {
                    if (idx >> (n - 1 - p)) & 1 == 1 {
                        -0.5 * e
                    } else {
                        0.5 * e
                    }
                })
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub rotation: DMatrix<f64>,
    pub energies: Vec<f64>,
    pub det_sign: i8,
}

impl CanonicalForm {
    pub fn block_matrix(&self) -> DMatrix<f64> {
        let n = self.energies.len();
        let mut l = DMatrix::zeros(2 * n, 2 * n);
        for (p, &e) in self.energies.iter().enumerate() {
            l[(2 * p, 2 * p + 1)] = e;
            l[(2 * p + 1, 2 * p)] = -e;
        }
        l
    }

    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.rotation * self.block_matrix() * self.rotation.transpose()
    }
}

/// Normal form of an antisymmetric matrix from the Hermitian eigenproblem of `iA`.
///
/// An eigenvector `x + iy` of `iA` with eigenvalue `ε > 0` gives
/// `A x = ε y`, `A y = -ε x`, so the columns `(√2 y, √2 x)` span one block.
/// The kernel is completed with a real orthonormal basis.
pub fn canonical_form(h: &QuadraticHamiltonian) -> CanonicalForm {
    let n = h.n_modes;
    let dim = 2 * n;
    let a = &h.coupling;
    let ia: DMatrix<Complex64> = a.map(|x| Complex64::new(0.0, x));
    let eig = SymmetricEigen::new(ia);
    let scale = max_abs(a).max(1.0);
    let cut = 1e-10 * scale;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut columns: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(dim);
    let mut energies = Vec::with_capacity(n);
    for &i in &order {
        let e = eig.eigenvalues[i];
        if e <= cut || energies.len() == n {
            break;
        }
        let v = eig.eigenvectors.column(i);
        let x = v.map(|z| z.re) * 2f64.sqrt();
        let y = v.map(|z| z.im) * 2f64.sqrt();
        columns.push(y);
        columns.push(x);
        energies.push(e);
    }

    // kernel: real and imaginary parts of the near-zero eigenvectors,
    // orthonormalized against everything collected so far
    let mut candidates: Vec<nalgebra::DVector<f64>> = Vec::new();
    for &i in &order {
        if eig.eigenvalues[i].abs() <= cut {
            let v = eig.eigenvectors.column(i);
            candidates.push(v.map(|z| z.re));
            candidates.push(v.map(|z| z.im));
        }
    }
    for k in 0..dim {
        let mut e = nalgebra::DVector::zeros(dim);
        e[k] = 1.0;
        candidates.push(e);
    }
    for mut c in candidates {
        if columns.len() == dim {
            break;
        }
        for _ in 0..2 {
            for q in &columns {
                let proj = q.dot(&c);
                c -= q * proj;
            }
        }
        let norm = c.norm();
        if norm > 1e-6 {
            columns.push(c / norm);
        }
    }
    energies.resize(n, 0.0);

    let rotation = DMatrix::from_columns(&columns);
    let det = rotation.clone().lu().determinant();
    CanonicalForm {
        rotation,
        energies,
        det_sign: if det < 0.0 { -1 } else { 1 },
    }
}

/// Pfaffian by Parlett–Reid tridiagonalization with partial pivoting.
pub fn pfaffian(a: &DMatrix<f64>) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Dimension("pfaffian needs a square matrix".into()));
    }
    let scale = max_abs(a).max(1.0);
    let d = antisymmetry_defect(a);
    if d > TOL.validation * scale {
        return Err(Error::NotAntisymmetric(d));
    }
    let n = a.nrows();
    if n % 2 == 1 {
        return Ok(0.0);
    }
    let mut m = a.clone();
    let mut pf = 1.0;
    let mut k = 0;
    while k + 1 < n {
        let mut kp = k + 1;
        let mut best = m[(k + 1, k)].abs();
        for i in k + 2..n {
            if m[(i, k)].abs() > best {
                best = m[(i, k)].abs();
                kp = i;
            }
        }
        if kp != k + 1 {
            m.swap_rows(k + 1, kp);
            m.swap_columns(k + 1, kp);
            pf = -pf;
        }
        let pivot = m[(k, k + 1)];
        if pivot == 0.0 {
            return Ok(0.0);
        }
        pf *= pivot;
        if k + 2 < n {
            let tau: Vec<f64> = (k + 2..n).map(|j| m[(k, j)] / pivot).collect();
            let col: Vec<f64> = (k + 2..n).map(|i| m[(i, k + 1)]).collect();
            for (ii, i) in (k + 2..n).enumerate() {
                for (jj, j) in (k + 2..n).enumerate() {
                    m[(i, j)] += tau[ii] * col[jj] - col[ii] * tau[jj];
                }
            }
        }
        k += 2;
    }
    Ok(pf)
}

/// `n × η` isometry `V`; the state is `Π_k (Σ_p V_{pk} a_p†) |0⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlaterDeterminant {
    orbitals: DMatrix<Complex64>,
}

impl SlaterDeterminant {
    pub fn new(orbitals: DMatrix<Complex64>) -> Result<Self> {
        let (n, eta) = orbitals.shape();
        if n == 0 || eta > n {
            return arg(format!("invalid orbital matrix shape {n}x{eta}"));
        }
        let gram = orbitals.adjoint() * &orbitals - DMatrix::<Complex64>::identity(eta, eta);
        let d = gram.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if d > TOL.validation {
            return Err(Error::NotUnitary(d));
        }
        Ok(SlaterDeterminant { orbitals })
    }

    /// The first `eta` columns of the identity, i.e. `|1⋯10⋯0⟩`.
    pub fn reference(n: usize, eta: usize) -> Result<Self> {
        if eta > n || n == 0 {
            return arg(format!("cannot place {eta} particles in {n} modes"));
        }
        Self::new(DMatrix::identity(n, eta))
    }

    pub fn n_modes(&self) -> usize {
        self.orbitals.nrows()
    }

    pub fn eta(&self) -> usize {
        self.orbitals.ncols()
    }

    pub fn orbitals(&self) -> &DMatrix<Complex64> {
        &self.orbitals
    }

    /// `det V[occ, :]`.
    pub fn amplitude(&self, occ: &[usize]) -> Result<Complex64> {
        if occ.len() != self.eta() {
            return arg(format!(
                "occupation of size {} for {} particles",
                occ.len(),
                self.eta()
            ));
        }
        if occ.windows(2).any(|w| w[0] >= w[1]) || occ.iter().any(|&p| p >= self.n_modes()) {
            return arg(format!("occupation {occ:?} is not an ascending mode list"));
        }
        if occ.is_empty() {
            return Ok(Complex64::new(1.0, 0.0));
        }
        Ok(self.orbitals.select_rows(occ).determinant())
    }

    /// `D_{pq} = ⟨a_q† a_p⟩ = (V V†)_{pq}`.
    pub fn one_rdm(&self) -> DMatrix<Complex64> {
        &self.orbitals * self.orbitals.adjoint()
    }

    pub fn covariance(&self) -> CovarianceMatrix {
        covariance_from_one_rdm(&self.one_rdm())
    }
}

/// Covariance of a number-conserving Gaussian state from its one-body RDM.
pub fn covariance_from_one_rdm(d: &DMatrix<Complex64>) -> CovarianceMatrix {
    let n = d.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for p in 0..n {
        for q in 0..n {
            let (re, im) = (d[(p, q)].re, d[(p, q)].im);
            let delta = if p == q { 1.0 } else { 0.0 };
            if p != q {
                m[(2 * p, 2 * q)] = -2.0 * im;
                m[(2 * p + 1, 2 * q + 1)] = -2.0 * im;
            }
            m[(2 * p, 2 * q + 1)] = delta - 2.0 * re;
            m[(2 * p + 1, 2 * q)] = -delta + 2.0 * re;
        }
    }
    CovarianceMatrix::new_unchecked(m)
}

/// `det D[p, q]`, i.e. `⟨a_{q_1}† ⋯ a_{q_k}† a_{p_k} ⋯ a_{p_1}⟩` for a Slater determinant.
pub fn k_rdm_element(d1: &DMatrix<Complex64>, p: &[usize], q: &[usize]) -> Result<Complex64> {
    if p.len() != q.len() {
        return arg(format!("index lists of sizes {} and {}", p.len(), q.len()));
    }
    let n = d1.nrows();
    if p.iter().chain(q).any(|&i| i >= n) {
        return arg("RDM index out of range");
    }
    if p.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(d1.select_rows(p).select_columns(q).determinant())
}

/// Real `2n × 2n` orthogonal image of `u ∈ U(n)` with blocks `[[Re u, -Im u], [Im u, Re u]]`.
pub fn embed_unitary(u: &DMatrix<Complex64>) -> Result<DMatrix<f64>> {
    if !u.is_square() {
        return Err(Error::Dimension("unitary must be square".into()));
    }
    let n = u.nrows();
    let d = (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if d > TOL.orthogonality {
        return Err(Error::NotUnitary(d));
    }
    let mut r = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = u[(i, j)];
            r[(2 * i, 2 * j)] = z.re;
            r[(2 * i, 2 * j + 1)] = -z.im;
            r[(2 * i + 1, 2 * j)] = z.im;
            r[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_blocks() {
        let g = vacuum_covariance(1).unwrap();
        assert_eq!(
            g.matrix(),
            &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
        );
        assert!(vacuum_covariance(3).unwrap().is_pure());
        assert!(vacuum_covariance(0).is_err());
    }

    #[test]
    fn pfaffian_small_cases() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 2.5, -2.5, 0.0]);
        assert_eq!(pfaffian(&a).unwrap(), 2.5);
        let mut b = DMatrix::zeros(4, 4);
        b[(0, 1)] = 2.0;
        b[(1, 0)] = -2.0;
        b[(2, 3)] = 3.0;
        b[(3, 2)] = -3.0;
        assert!((pfaffian(&b).unwrap() - 6.0).abs() < 1e-14);
        assert_eq!(pfaffian(&DMatrix::zeros(3, 3)).unwrap(), 0.0);
        assert_eq!(pfaffian(&DMatrix::zeros(0, 0)).unwrap(), 1.0);
        assert!(pfaffian(&DMatrix::from_element(2, 2, 1.0)).is_err());
    }

    #[test]
    fn wick_on_vacuum() {
        let g = vacuum_covariance(2).unwrap();
        let m = |i: &[usize]| MajoranaMonomial::new(2, i.to_vec()).unwrap();
        assert_eq!(g.wick_expectation(&m(&[0, 1])).unwrap().re, 1.0);
        assert_eq!(g.wick_expectation(&m(&[0, 2])).unwrap().re, 0.0);
        assert_eq!(g.wick_expectation(&m(&[0, 1, 2, 3])).unwrap().re, 1.0);
        assert_eq!(g.wick_expectation(&m(&[0, 1, 2])).unwrap().norm(), 0.0);
    }

    #[test]
    fn deterministic_samples() {
        let mut rng = rand::rng();
        let g = vacuum_covariance(4).unwrap();
        assert_eq!(g.sample_measurement(&mut rng).to_string(), "0000");
        let s = SlaterDeterminant::reference(4, 2).unwrap();
        assert_eq!(
            s.covariance().sample_measurement(&mut rng).to_string(),
            "1100"
        );
    }

    #[test]
    fn evolve_rejects_non_orthogonal() {
        let g = vacuum_covariance(1).unwrap();
        assert!(matches!(
            g.evolve(&DMatrix::from_element(2, 2, 1.0)),
            Err(Error::NotOrthogonal(_))
        ));
        assert!(g.evolve(&DMatrix::identity(4, 4)).is_err());
    }

    #[test]
    fn covariance_validation() {
        assert!(CovarianceMatrix::new(DMatrix::from_element(2, 2, 1.0)).is_err());
        let too_big = DMatrix::from_row_slice(2, 2, &[0.0, 2.0, -2.0, 0.0]);
        assert!(matches!(
            CovarianceMatrix::new(too_big),
            Err(Error::InvalidState(_))
        ));
        let mixed = DMatrix::from_row_slice(2, 2, &[0.0, 0.3, -0.3, 0.0]);
        let g = CovarianceMatrix::new(mixed).unwrap();
        assert!(!g.is_pure());
    }

    #[test]
    fn reference_slater() {
        let s = SlaterDeterminant::reference(4, 2).unwrap();
        assert_eq!(s.amplitude(&[0, 1]).unwrap().re, 1.0);
        assert_eq!(s.amplitude(&[0, 2]).unwrap().norm(), 0.0);
        assert!(s.amplitude(&[0]).is_err());
        let d = s.one_rdm();
        for p in 0..4 {
            assert_eq!(d[(p, p)].re, if p < 2 { 1.0 } else { 0.0 });
        }
        assert_eq!(k_rdm_element(&d, &[0, 1], &[0, 1]).unwrap().re, 1.0);
        assert!(k_rdm_element(&d, &[0], &[0, 1]).is_err());
    }

    #[test]
    fn embed_examples() {
        let id = DMatrix::<Complex64>::identity(3, 3);
        assert_eq!(embed_unitary(&id).unwrap(), DMatrix::identity(6, 6));
        let u = DMatrix::from_element(1, 1, Complex64::new(0.0, 1.0));
        assert_eq!(
            embed_unitary(&u).unwrap(),
            DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
        );
        let bad = DMatrix::from_element(1, 1, Complex64::new(2.0, 0.0));
        assert!(matches!(embed_unitary(&bad), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn spectrum_examples() {
        let mut s = free_spectrum(&[1.0, 2.0]);
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(s, vec![-1.5, -0.5, 0.5, 1.5]);
        assert_eq!(free_spectrum(&[0.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn canonical_form_fixed_points() {
        let h = QuadraticHamiltonian::new(DMatrix::zeros(4, 4)).unwrap();
        let cf = h.canonical_form();
        assert_eq!(cf.energies, vec![0.0, 0.0]);
        assert!((&cf.rotation - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);

        let mut a = DMatrix::zeros(4, 4);
        a[(0, 1)] = 2.0;
        a[(1, 0)] = -2.0;
        a[(2, 3)] = 1.0;
        a[(3, 2)] = -1.0;
        let cf = QuadraticHamiltonian::new(a.clone())
            .unwrap()
            .canonical_form();
        assert!((cf.energies[0] - 2.0).abs() < 1e-12 && (cf.energies[1] - 1.0).abs() < 1e-12);
        assert!((cf.reconstruct() - a).amax() < 1e-12);
        // a signed permutation
        assert!(cf
            .rotation
            .iter()
            .all(|x| x.abs() < 1e-12 || (x.abs() - 1.0).abs() < 1e-12));
    }
}
