//! Exact algebra of Majorana monomials.
//!
//! Modes are numbered `0..n` and Majorana generators `0..2n`, with
//! `γ_{2p} = Z_0⋯Z_{p-1} X_p` and `γ_{2p+1} = Z_0⋯Z_{p-1} Y_p` under the
//! Jordan–Wigner map. A monomial is stored as a strictly ascending index set
//! together with a phase `i^k` relative to the *canonical* Hermitian operator
//!
//! ```text
//! Γ_μ = (-i)^{C(|μ|,2)} γ_{μ_1} γ_{μ_2} ⋯ γ_{μ_k}
//! ```
//!
//! so that `Γ_{(2p,2p+1)} = Z_p`. All phase arithmetic is exact modulo 4.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combin::{permutation_parity, sort_with_parity};
use crate::error::{arg, Error, Result};

/// `i^k` as a complex number.
pub fn phase_value(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Exponent (mod 4) of the canonical prefactor `(-i)^{C(k,2)}`.
fn canonical_exponent(k: usize) -> u8 {
    // (-i) = i^3
    ((3 * (k * k.saturating_sub(1) / 2)) % 4) as u8
}

/// A computational-basis string; bit `p` is the occupation of mode `p`.
///
/// The text form puts mode 0 leftmost, e.g. `"1100"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring(pub Vec<bool>);

impl Bitstring {
    pub fn zeros(n: usize) -> Self {
        Bitstring(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Basis index with mode 0 as the most significant bit.
    pub fn to_index(&self) -> usize {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        Bitstring((0..n).map(|p| (index >> (n - 1 - p)) & 1 == 1).collect())
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => arg(format!("invalid bit character {other:?}")),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bitstring)
    }
}

/// `i^phase · Γ_indices` on `n_modes` fermionic modes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MajoranaMonomial {
    n_modes: usize,
    indices: Vec<usize>,
    phase: u8,
}

/// Wire form of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub indices: Vec<usize>,
    pub phase_pow_i: u8,
}

impl MajoranaMonomial {
    /// Canonical `Γ_indices`; the indices must be strictly ascending.
    pub fn new(n_modes: usize, indices: Vec<usize>) -> Result<Self> {
        Self::with_phase(n_modes, indices, 0)
    }

    pub fn with_phase(n_modes: usize, indices: Vec<usize>, phase: u8) -> Result<Self> {
        if n_modes == 0 {
            return arg("monomial needs at least one mode");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return arg(format!("indices {indices:?} are not strictly ascending"));
        }
        if let Some(&last) = indices.last() {
            if last >= 2 * n_modes {
                return arg(format!("index {last} out of range for {n_modes} modes"));
            }
        }
        Ok(MajoranaMonomial {
            n_modes,
            indices,
            phase: phase & 3,
        })
    }

    pub fn identity(n_modes: usize) -> Self {
        MajoranaMonomial {
            n_modes,
            indices: Vec::new(),
            phase: 0,
        }
    }

    /// The single generator `γ_mu`.
    pub fn generator(n_modes: usize, mu: usize) -> Result<Self> {
        Self::new(n_modes, vec![mu])
    }

    /// The raw ordered product `γ_{seq_0} γ_{seq_1} ⋯` in canonical form.
    /// Repeated generators cancel.
    pub fn from_product(n_modes: usize, seq: &[usize]) -> Result<Self> {
        let mut acc = Self::identity(n_modes);
        for &mu in seq {
            acc = acc.multiply(&Self::generator(n_modes, mu)?)?;
        }
        Ok(acc)
    }

    /// `Z_p` as the monomial `Γ_{(2p,2p+1)}`.
    pub fn number_parity(n_modes: usize, p: usize) -> Result<Self> {
        Self::new(n_modes, vec![2 * p, 2 * p + 1])
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn phase_value(&self) -> Complex64 {
        phase_value(self.phase)
    }

    /// Same index set with the phase multiplied by `i^k`.
    pub fn times_phase(&self, k: u8) -> Self {
        MajoranaMonomial {
            phase: (self.phase + k) & 3,
            ..self.clone()
        }
    }

    /// Hermitian iff the phase is real.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    fn check_modes(&self, other: &Self) -> Result<()> {
        if self.n_modes != other.n_modes {
            return Err(Error::ModeMismatch(self.n_modes, other.n_modes));
        }
        Ok(())
    }

    /// Operator product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_modes(other)?;
        let (a, b) = (&self.indices, &other.indices);
        // transpositions needed to move each generator of `b` past the larger ones of `a`
        let mut swaps = 0usize;
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i] < b[j]) {
                merged.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j] < a[i] {
                swaps += a.len() - i;
                merged.push(b[j]);
                j += 1;
            } else {
                // equal generators: move b[j] next to a[i], then γ² = 1
                swaps += a.len() - i - 1;
                i += 1;
                j += 1;
            }
        }
        let exponent = self.phase as usize
            + other.phase as usize
            + canonical_exponent(a.len()) as usize
            + canonical_exponent(b.len()) as usize
            + 2 * (swaps & 1)
            // γ_C = i^{C(|C|,2)} Γ_C
            + (4 - canonical_exponent(merged.len()) as usize);
        Ok(MajoranaMonomial {
            n_modes: self.n_modes,
            indices: merged,
            phase: (exponent % 4) as u8,
        })
    }

    /// True iff the two operators anticommute: `|A||B| + |A∩B|` odd.
    pub fn anticommutes(&self, other: &Self) -> Result<bool> {
        self.check_modes(other)?;
        Ok(sets_anticommute(&self.indices, &other.indices))
    }

    /// Jordan–Wigner image.
    pub fn to_pauli(&self) -> PauliString {
        let mut acc = PauliString::identity(self.n_modes);
        for &mu in &self.indices {
            acc = acc.multiply(&PauliString::majorana(self.n_modes, mu));
        }
        acc.phase = (acc.phase + self.phase + canonical_exponent(self.indices.len())) & 3;
        acc
    }

    /// `U_Q (self) U_Q†` for the Gaussian unitary of a signed permutation.
    pub fn conjugate(&self, q: &SignedPermutation) -> Result<Self> {
        if q.n_modes != self.n_modes {
            return Err(Error::ModeMismatch(q.n_modes, self.n_modes));
        }
        let inv = q.inverse();
        let mut sign_odd = 0u32;
        let mut image: Vec<usize> = self
            .indices
            .iter()
            .map(|&mu| {
                let src = inv.perm[mu];
                if q.signs[src] < 0 {
                    sign_odd ^= 1;
                }
                src
            })
            .collect();
        sign_odd ^= sort_with_parity(&mut image);
        Ok(MajoranaMonomial {
            n_modes: self.n_modes,
            indices: image,
            phase: (self.phase + 2 * sign_odd as u8) & 3,
        })
    }

    /// True iff the index set is a union of pairs `(2p, 2p+1)`.
    pub fn is_diagonal(&self) -> bool {
        set_is_diagonal(&self.indices)
    }

    /// `⟨b| self |b⟩`.
    pub fn diag_element(&self, b: &Bitstring) -> Result<Complex64> {
        if b.len() != self.n_modes {
            return Err(Error::Dimension(format!(
                "bitstring of length {} for {} modes",
                b.len(),
                self.n_modes
            )));
        }
        Ok(self.phase_value() * diag_sign(&self.indices, b.bits()) as f64)
    }

    pub fn to_record(&self) -> MonomialRecord {
        MonomialRecord {
            indices: self.indices.clone(),
            phase_pow_i: self.phase,
        }
    }

    pub fn from_record(n_modes: usize, rec: &MonomialRecord) -> Result<Self> {
        if rec.phase_pow_i > 3 {
            return arg(format!("phase exponent {} not in 0..4", rec.phase_pow_i));
        }
        Self::with_phase(n_modes, rec.indices.clone(), rec.phase_pow_i)
    }
}

impl fmt::Display for MajoranaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "i^{} * g({})", self.phase, idx.join(","))
    }
}

/// Anticommutation predicate on bare index sets.
pub fn sets_anticommute(a: &[usize], b: &[usize]) -> bool {
    let mut overlap = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                overlap += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (a.len() * b.len() + overlap) % 2 == 1
}

pub fn set_is_diagonal(indices: &[usize]) -> bool {
    indices.len().is_multiple_of(2) && indices.chunks(2).all(|w| w[0] % 2 == 0 && w[1] == w[0] + 1)
}

/// `⟨b|Γ_μ|b⟩` for a canonical monomial: zero off the diagonal, otherwise the
/// product of `(-1)^{b_p}` over the pairs `(2p,2p+1) ⊆ μ`.
pub fn diag_sign(indices: &[usize], bits: &[bool]) -> i8 {
    if !set_is_diagonal(indices) {
        return 0;
    }
    let flips = indices.chunks(2).filter(|w| bits[w[0] / 2]).count();
    if flips % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Product `self · other = i^k · letter`.
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^phase · P_0 ⊗ P_1 ⊗ ⋯`, qubit 0 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub letters: Vec<Pauli>,
    pub phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            letters: vec![Pauli::I; n],
            phase: 0,
        }
    }

    /// Jordan–Wigner image of `γ_mu`.
    pub fn majorana(n: usize, mu: usize) -> Self {
        let p = mu / 2;
        let mut letters = vec![Pauli::I; n];
        for l in letters.iter_mut().take(p) {
            *l = Pauli::Z;
        }
        letters[p] = if mu.is_multiple_of(2) {
            Pauli::X
        } else {
            Pauli::Y
        };
        PauliString { letters, phase: 0 }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &PauliString) -> PauliString {
        let mut phase = self.phase + other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| {
                let (k, p) = a.mul(b);
                phase += k;
                p
            })
            .collect();
        PauliString {
            letters,
            phase: phase & 3,
        }
    }

    pub fn anticommutes(&self, other: &PauliString) -> bool {
        self.letters
            .iter()
            .zip(&other.letters)
            .filter(|(&a, &b)| a != Pauli::I && b != Pauli::I && a != b)
            .count()
            % 2
            == 1
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&l| l == Pauli::I)
    }

    /// Letters only, phase dropped.
    pub fn letters_string(&self) -> String {
        self.letters.iter().map(|l| l.as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i*", "-", "-i*"][self.phase as usize];
        write!(f, "{prefix}{}", self.letters_string())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => arg(format!("invalid Pauli letter {other:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString { letters, phase: 0 })
    }
}

/// Orthogonal matrix `Q_{μν} = s_μ δ_{π(μ),ν}`: a permutation with signs.
///
/// Its Gaussian unitary acts as `γ_μ ↦ s_{π⁻¹(μ)} γ_{π⁻¹(μ)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    n_modes: usize,
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(n_modes: usize, perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let m = 2 * n_modes;
        if perm.len() != m || signs.len() != m {
            return Err(Error::Dimension(format!(
                "signed permutation on {n_modes} modes needs {m} entries"
            )));
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || seen[p] {
                return arg(format!("{perm:?} is not a permutation of 0..{m}"));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return arg("signs must be ±1");
        }
        Ok(SignedPermutation {
            n_modes,
            perm,
            signs,
        })
    }

    pub fn identity(n_modes: usize) -> Self {
        SignedPermutation {
            n_modes,
            perm: (0..2 * n_modes).collect(),
            signs: vec![1; 2 * n_modes],
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        let mut signs = vec![1; self.perm.len()];
        for (mu, &nu) in self.perm.iter().enumerate() {
            perm[nu] = mu;
            signs[nu] = self.signs[mu];
        }
        SignedPermutation {
            n_modes: self.n_modes,
            perm,
            signs,
        }
    }

    /// The element whose matrix is `Q_self · Q_other`, so that conjugating by
    /// the result equals conjugating by `other` first and then by `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n_modes != other.n_modes {
            return Err(Error::ModeMismatch(self.n_modes, other.n_modes));
        }
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s * other.signs[p])
            .collect();
        Ok(SignedPermutation {
            n_modes: self.n_modes,
            perm,
            signs,
        })
    }

    /// `sign(π) · ∏ s`.
    pub fn determinant(&self) -> i8 {
        let neg = self.signs.iter().filter(|&&s| s < 0).count() as u32;
        if (permutation_parity(&self.perm) + neg).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let m = self.perm.len();
        let mut q = DMatrix::zeros(m, m);
        for mu in 0..m {
            q[(mu, self.perm[mu])] = self.signs[mu] as f64;
        }
        q
    }
}
