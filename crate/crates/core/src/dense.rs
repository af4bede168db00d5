//! Brute-force Fock-space reference implementation.
//!
//! Everything here builds explicit `2ⁿ × 2ⁿ` matrices and exists to check the
//! polynomial-time routines at small `n`. Basis states are indexed with mode 0
//! as the most significant bit, matching [`Bitstring::to_index`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::{Bitstring, MajoranaMonomial, Pauli, PauliString};
use crate::compiler::{Gate, GateProgram};
use crate::error::{Error, Result};
use crate::gaussian::QuadraticHamiltonian;
use crate::partition::{ElectronicIntegrals, MajoranaPolynomial, RotationPlan};

/// Hard cap on the number of modes of any dense object.
pub const MAX_MODES: usize = 12;
/// Cap for routines that exponentiate dense matrices.
pub const MAX_EXP_MODES: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn guard(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::TooLarge { n, max });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub n_modes: usize,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    pub n_modes: usize,
    pub vector: DVector<Complex64>,
}

impl DenseOperator {
    pub fn identity(n_modes: usize) -> Result<Self> {
        guard(n_modes, MAX_MODES)?;
        let d = 1 << n_modes;
        Ok(DenseOperator {
            n_modes,
            matrix: DMatrix::identity(d, d),
        })
    }

    pub fn zeros(n_modes: usize) -> Result<Self> {
        guard(n_modes, MAX_MODES)?;
        let d = 1 << n_modes;
        Ok(DenseOperator {
            n_modes,
            matrix: DMatrix::zeros(d, d),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            n_modes: self.n_modes,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        DenseOperator {
            n_modes: self.n_modes,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        DenseOperator {
            n_modes: self.n_modes,
            matrix: &self.matrix * c,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        DenseOperator {
            n_modes: self.n_modes,
            matrix: &self.matrix + &other.matrix,
        }
    }

    /// `U X U†`.
    pub fn conjugate(&self, x: &Self) -> Self {
        DenseOperator {
            n_modes: self.n_modes,
            matrix: &self.matrix * &x.matrix * self.matrix.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of a Hermitian operator in ascending order.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = SymmetricEigen::new(herm)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    pub fn apply(&self, psi: &DenseState) -> Result<DenseState> {
        if psi.vector.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "operator of dimension {} applied to state of dimension {}",
                self.dim(),
                psi.vector.len()
            )));
        }
        Ok(DenseState {
            n_modes: self.n_modes,
            vector: &self.matrix * &psi.vector,
        })
    }
}

impl DenseState {
    pub fn basis(bits: &Bitstring) -> Result<Self> {
        let n = bits.len();
        guard(n, MAX_MODES)?;
        let mut vector = DVector::zeros(1 << n);
        vector[bits.to_index()] = ONE;
        Ok(DenseState { n_modes: n, vector })
    }

    pub fn vacuum(n: usize) -> Result<Self> {
        Self::basis(&Bitstring::zeros(n))
    }

    pub fn from_vector(n_modes: usize, vector: DVector<Complex64>) -> Result<Self> {
        guard(n_modes, MAX_MODES)?;
        if vector.len() != 1 << n_modes {
            return Err(Error::Dimension(format!(
                "state vector of length {} for {n_modes} modes",
                vector.len()
            )));
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("state norm {norm}")));
        }
        Ok(DenseState { n_modes, vector })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density_matrix(&self) -> DenseOperator {
        DenseOperator {
            n_modes: self.n_modes,
            matrix: &self.vector * self.vector.adjoint(),
        }
    }
}

/// Matrix of a Pauli string including its phase.
pub fn build_pauli(p: &PauliString) -> Result<DenseOperator> {
    let n = p.len();
    guard(n, MAX_MODES)?;
    let d = 1usize << n;
    let mut flip = 0usize;
    for (q, &l) in p.letters.iter().enumerate() {
        if matches!(l, Pauli::X | Pauli::Y) {
            flip |= 1 << (n - 1 - q);
        }
    }
    let global = crate::algebra::phase_value(p.phase);
    let mut m = DMatrix::zeros(d, d);
    for col in 0..d {
        let mut amp = global;
        for (q, &l) in p.letters.iter().enumerate() {
            let bit = (col >> (n - 1 - q)) & 1;
            match l {
                Pauli::Z if bit == 1 => amp = -amp,
                // Y|0> = i|1>, Y|1> = -i|0>
                Pauli::Y => amp *= if bit == 0 { I } else { -I },
                _ => {}
            }
        }
        m[(col ^ flip, col)] = amp;
    }
    Ok(DenseOperator {
        n_modes: n,
        matrix: m,
    })
}

/// `γ_mu` as an explicit Kronecker product of Jordan–Wigner letters.
pub fn build_majorana(n: usize, mu: usize) -> Result<DenseOperator> {
    guard(n, MAX_MODES)?;
    if mu >= 2 * n {
        return Err(Error::InvalidArgument(format!(
            "Majorana index {mu} out of range for {n} modes"
        )));
    }
    let x = DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
    let y = DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]);
    let z = DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
    let id = DMatrix::<Complex64>::identity(2, 2);
    let p = mu / 2;
    let mut acc = DMatrix::<Complex64>::identity(1, 1);
    for q in 0..n {
        let f = if q < p {
            &z
        } else if q == p {
            if mu.is_multiple_of(2) {
                &x
            } else {
                &y
            }
        } else {
            &id
        };
        acc = acc.kronecker(f);
    }
    Ok(DenseOperator {
        n_modes: n,
        matrix: acc,
    })
}

/// `i^phase (-i)^{C(k,2)} γ_{μ_1}⋯γ_{μ_k}` by explicit matrix products.
pub fn build_monomial(m: &MajoranaMonomial) -> Result<DenseOperator> {
    let n = m.n_modes();
    let mut acc = DenseOperator::identity(n)?;
    for &mu in m.indices() {
        acc = acc.mul(&build_majorana(n, mu)?);
    }
    let k = m.degree();
    let pre = (0..k * k.saturating_sub(1) / 2).fold(ONE, |c, _| c * -I);
    Ok(acc.scale(pre * m.phase_value()))
}

/// Annihilation operator `a_p = (γ_{2p} + iγ_{2p+1}) / 2`.
pub fn annihilation(n: usize, p: usize) -> Result<DenseOperator> {
    let e = build_majorana(n, 2 * p)?;
    let o = build_majorana(n, 2 * p + 1)?;
    Ok(e.add(&o.scale(I)).scale(Complex64::new(0.5, 0.0)))
}

pub fn creation(n: usize, p: usize) -> Result<DenseOperator> {
    Ok(annihilation(n, p)?.adjoint())
}

/// `H = (-i/4) Σ A_{μν} γ_μ γ_ν`.
pub fn quadratic_operator(h: &QuadraticHamiltonian) -> Result<DenseOperator> {
    let n = h.n_modes();
    let gammas = (0..2 * n)
        .map(|mu| build_majorana(n, mu))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = DenseOperator::zeros(n)?;
    let a = h.coupling();
    for mu in 0..2 * n {
        for nu in 0..2 * n {
            if a[(mu, nu)] != 0.0 {
                let c = Complex64::new(0.0, -0.25 * a[(mu, nu)]);
                acc = acc.add(&gammas[mu].mul(&gammas[nu]).scale(c));
            }
        }
    }
    Ok(acc)
}

/// `exp(-i t H)` for a Hermitian dense operator via its eigendecomposition.
pub fn exp_hermitian(h: &DenseOperator, t: f64) -> DenseOperator {
    let herm = (&h.matrix + h.matrix.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let phases =
        DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::new(0.0, -t * e).exp()));
    DenseOperator {
        n_modes: h.n_modes,
        matrix: &eig.eigenvectors * phases * eig.eigenvectors.adjoint(),
    }
}

/// `e^{-iH}` for `H = (-i/4) γᵀ A γ`.
///
/// The result conjugates Majoranas as `U γ_μ U† = Σ_ν (e^{-A})_{νμ} γ_ν`,
/// i.e. it is the Gaussian unitary of the orthogonal matrix `e^{-A}`.
pub fn exp_quadratic(h: &QuadraticHamiltonian) -> Result<DenseOperator> {
    guard(h.n_modes(), MAX_EXP_MODES)?;
    Ok(exp_hermitian(&quadratic_operator(h)?, 1.0))
}

/// `Σ h_pq a_p† a_q` for a complex Hermitian `h`.
pub fn one_body_operator(h: &DMatrix<Complex64>) -> Result<DenseOperator> {
    let n = h.nrows();
    if h.ncols() != n {
        return Err(Error::Dimension("one-body matrix must be square".into()));
    }
    let a = (0..n)
        .map(|p| annihilation(n, p))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = DenseOperator::zeros(n)?;
    for p in 0..n {
        for q in 0..n {
            if h[(p, q)] != ZERO {
                acc = acc.add(&a[p].adjoint().mul(&a[q]).scale(h[(p, q)]));
            }
        }
    }
    Ok(acc)
}

/// `e^{-iH}` for `H = Σ h_pq a_p† a_q`; satisfies `U† a_p U = Σ_q (e^{-ih})_{pq} a_q`.
pub fn exp_one_body(h: &DMatrix<Complex64>) -> Result<DenseOperator> {
    guard(h.nrows(), MAX_EXP_MODES)?;
    let herm_dev = (h - h.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if herm_dev > 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "one-body matrix is not Hermitian (deviation {herm_dev:.3e})"
        )));
    }
    Ok(exp_hermitian(&one_body_operator(h)?, 1.0))
}

pub fn expectation(psi: &DenseState, op: &DenseOperator) -> Result<Complex64> {
    let phi = op.apply(psi)?;
    Ok(psi.vector.dotc(&phi.vector))
}

/// `tr(ρ O)` for a density matrix.
pub fn trace_expectation(rho: &DenseOperator, op: &DenseOperator) -> Result<Complex64> {
    if rho.dim() != op.dim() {
        return Err(Error::Dimension(
            "density matrix and operator differ in size".into(),
        ));
    }
    Ok((&rho.matrix * &op.matrix).trace())
}

pub fn born_distribution(psi: &DenseState) -> Vec<f64> {
    psi.vector.iter().map(|z| z.norm_sqr()).collect()
}

/// Unitary of a single compiled gate.
pub fn gate_unitary(n: usize, gate: &Gate) -> Result<DenseOperator> {
    match gate {
        Gate::ZRot { qubit, theta } => {
            let mut z = PauliString::identity(n);
            z.letters[*qubit] = Pauli::Z;
            rotation(&build_pauli(&z)?, *theta)
        }
        Gate::XXRot { qubit, theta } => {
            let mut xx = PauliString::identity(n);
            xx.letters[*qubit] = Pauli::X;
            xx.letters[*qubit + 1] = Pauli::X;
            rotation(&build_pauli(&xx)?, *theta)
        }
        Gate::Pauli(p) => build_pauli(p),
    }
}

/// `exp(-iθP/2)` for an involutory `P`.
fn rotation(p: &DenseOperator, theta: f64) -> Result<DenseOperator> {
    let id = DenseOperator::identity(p.n_modes)?;
    Ok(id
        .scale(Complex64::new((theta / 2.0).cos(), 0.0))
        .add(&p.scale(Complex64::new(0.0, -(theta / 2.0).sin()))))
}

/// `U_m ⋯ U_1` for a program listed in time order.
pub fn program_unitary(prog: &GateProgram) -> Result<DenseOperator> {
    let n = prog.n_qubits();
    let mut u = DenseOperator::identity(n)?;
    for g in prog.gates() {
        u = gate_unitary(n, g)?.mul(&u);
    }
    Ok(u)
}

/// Dense operator of a Majorana polynomial, constant included.
pub fn polynomial_operator(poly: &MajoranaPolynomial) -> Result<DenseOperator> {
    let n = poly.n_modes();
    let mut acc = DenseOperator::identity(n)?.scale(Complex64::new(poly.constant(), 0.0));
    for (set, &c) in poly.terms() {
        let m = MajoranaMonomial::new(n, set.clone())?;
        acc = acc.add(&build_monomial(&m)?.scale(Complex64::new(c, 0.0)));
    }
    Ok(acc)
}

/// `Σ h_pq a_p†a_q + ½ Σ h_pqrs a_p†a_q†a_r a_s` from ladder operators.
pub fn electronic_operator(ints: &ElectronicIntegrals) -> Result<DenseOperator> {
    let n = ints.n();
    let a = (0..n)
        .map(|p| annihilation(n, p))
        .collect::<Result<Vec<_>>>()?;
    let ad: Vec<_> = a.iter().map(|x| x.adjoint()).collect();
    let mut acc = DenseOperator::zeros(n)?;
    for p in 0..n {
        for q in 0..n {
            let h = ints.h1()[(p, q)];
            if h != 0.0 {
                acc = acc.add(&ad[p].mul(&a[q]).scale(Complex64::new(h, 0.0)));
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            let pq = ad[p].mul(&ad[q]);
            for r in 0..n {
                let pqr = pq.mul(&a[r]);
                for s in 0..n {
                    let h = ints.h2(p, q, r, s);
                    if h != 0.0 {
                        acc = acc.add(&pqr.mul(&a[s]).scale(Complex64::new(0.5 * h, 0.0)));
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// `R = R_{s,s-1} ⋯ R_{s,1}` with `R_{sk} = exp(-iθ_k X_{sk}/2)`, `X_{sk} = i P_s P_k`.
pub fn rotation_plan_unitary(n: usize, plan: &RotationPlan) -> Result<DenseOperator> {
    let target = build_monomial(&MajoranaMonomial::new(n, plan.target.clone())?)?;
    let mut r = DenseOperator::identity(n)?;
    for step in &plan.steps {
        let pk = build_monomial(&MajoranaMonomial::new(n, step.member.clone())?)?;
        let x = target.mul(&pk).scale(I);
        r = rotation(&x, step.theta)?.mul(&r);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_majoranas() {
        let x = build_majorana(1, 0).unwrap();
        let y = build_majorana(1, 1).unwrap();
        assert_eq!(
            x.matrix,
            DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
        );
        assert_eq!(
            y.matrix,
            DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO])
        );
        let zx = build_majorana(2, 2).unwrap();
        let expect = build_pauli(&"ZX".parse().unwrap()).unwrap();
        assert_eq!(zx.matrix, expect.matrix);
    }

    #[test]
    fn pauli_builder_matches_kronecker() {
        for n in 1..4 {
            for mu in 0..2 * n {
                let a = build_majorana(n, mu).unwrap();
                let b = build_pauli(&PauliString::majorana(n, mu)).unwrap();
                assert_eq!(a.matrix, b.matrix);
            }
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(build_majorana(13, 0), Err(Error::TooLarge { .. })));
        assert!(build_majorana(2, 4).is_err());
        assert!(DenseOperator::identity(0).is_err());
    }

    #[test]
    fn born_and_expectation_basics() {
        let psi = DenseState::basis(&"10".parse().unwrap()).unwrap();
        let p = born_distribution(&psi);
        assert_eq!(p, vec![0.0, 0.0, 1.0, 0.0]);
        let z0 = build_monomial(&MajoranaMonomial::new(2, vec![0, 1]).unwrap()).unwrap();
        assert_eq!(expectation(&psi, &z0).unwrap().re, -1.0);
        let vac = DenseState::vacuum(2).unwrap();
        assert_eq!(expectation(&vac, &z0).unwrap().re, 1.0);
    }
}
