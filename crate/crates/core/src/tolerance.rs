//! Numerical tolerances shared by every validation routine.

/// One record holding every validation threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `max |M + Mᵀ|` accepted for covariance matrices.
    pub antisymmetry: f64,
    /// Generic input validation (isometries, integral symmetry, Hamiltonians).
    pub validation: f64,
    /// `max |QQᵀ - I|` accepted for orthogonal inputs.
    pub orthogonality: f64,
    /// Purity test `max |MMᵀ - I|`.
    pub purity: f64,
    /// Slack on eigenvalues of `-M²` for state validity.
    pub spectrum_slack: f64,
    /// Conditional outcome probabilities closer than this to 0 or 1 are snapped.
    pub probability_clamp: f64,
    /// Givens rotations with smaller angles are dropped.
    pub angle: f64,
    /// Polynomial terms with smaller magnitude are pruned.
    pub coefficient: f64,
    /// Smallest admissible `ŝ/s` during symmetry mitigation.
    pub mitigation_ratio: f64,
}

pub const DEFAULT: Tolerances = Tolerances {
    antisymmetry: 1e-12,
    validation: 1e-10,
    orthogonality: 1e-8,
    purity: 1e-9,
    spectrum_slack: 1e-10,
    probability_clamp: 1e-12,
    angle: 1e-14,
    coefficient: 1e-12,
    mitigation_ratio: 1e-6,
};

impl Default for Tolerances {
    fn default() -> Self {
        DEFAULT
    }
}
