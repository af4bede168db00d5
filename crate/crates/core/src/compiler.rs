//! Compilation of `Q ∈ O(2n)` into Z-rotations, nearest-neighbour XX-rotations
//! and a single Pauli layer.
//!
//! Gate actions on the Majorana vector, in the `U γ_μ U† = Σ_ν Q_{νμ} γ_ν`
//! convention:
//!
//! * `ZRot(p, θ) = exp(-iθ Z_p / 2)` is the Givens rotation `[[c, -s], [s, c]]`
//!   on axes `(2p, 2p+1)`;
//! * `XXRot(p, θ) = exp(-iθ X_p X_{p+1} / 2)` is the same on axes `(2p+1, 2p+2)`;
//! * a Pauli string flips the sign of every `γ_μ` it anticommutes with.
//!
//! Programs list gates in time order, so the program realizes `Q_m ⋯ Q_1`.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{Pauli, PauliString};
use crate::error::{Error, Result};
use crate::gaussian::check_orthogonal;
use crate::tolerance::DEFAULT as TOL;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    ZRot { qubit: usize, theta: f64 },
    XXRot { qubit: usize, theta: f64 },
    Pauli(PauliString),
}

impl Gate {
    /// Givens rotation on axes `(a, a+1)`.
    fn givens(axis: usize, theta: f64) -> Gate {
        if axis.is_multiple_of(2) {
            Gate::ZRot {
                qubit: axis / 2,
                theta,
            }
        } else {
            Gate::XXRot {
                qubit: axis / 2,
                theta,
            }
        }
    }

    fn support(&self) -> Vec<usize> {
        match self {
            Gate::ZRot { qubit, .. } => vec![*qubit],
            Gate::XXRot { qubit, .. } => vec![*qubit, qubit + 1],
            Gate::Pauli(p) => p
                .letters
                .iter()
                .enumerate()
                .filter(|(_, &l)| l != Pauli::I)
                .map(|(q, _)| q)
                .collect(),
        }
    }
}

/// JSON form of a gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GateRecord {
    Zrot { q: usize, theta: f64 },
    Xxrot { q: [usize; 2], theta: f64 },
    Pauli { string: String },
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        match g {
            Gate::ZRot { qubit, theta } => GateRecord::Zrot {
                q: *qubit,
                theta: *theta,
            },
            Gate::XXRot { qubit, theta } => GateRecord::Xxrot {
                q: [*qubit, qubit + 1],
                theta: *theta,
            },
            Gate::Pauli(p) => GateRecord::Pauli {
                string: p.letters_string(),
            },
        }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        Ok(match r {
            GateRecord::Zrot { q, theta } => Gate::ZRot {
                qubit: *q,
                theta: *theta,
            },
            GateRecord::Xxrot { q, theta } => {
                if q[1] != q[0] + 1 {
                    return Err(Error::MalformedProgram(format!(
                        "xxrot on non-adjacent qubits {q:?}"
                    )));
                }
                Gate::XXRot {
                    qubit: q[0],
                    theta: *theta,
                }
            }
            GateRecord::Pauli { string } => Gate::Pauli(
                string
                    .parse()
                    .map_err(|_| Error::MalformedProgram(format!("bad Pauli string {string:?}")))?,
            ),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramStats {
    pub two_qubit_count: usize,
    pub one_qubit_count: usize,
    pub rotation_count: usize,
    pub pauli_weight: usize,
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateProgram {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl GateProgram {
    /// Validates qubit ranges, finite angles and at most one Pauli layer.
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::MalformedProgram(
                "program needs at least one qubit".into(),
            ));
        }
        let mut layers = 0;
        for g in &gates {
            match g {
                Gate::ZRot { qubit, theta } | Gate::XXRot { qubit, theta } => {
                    let top = if matches!(g, Gate::XXRot { .. }) {
                        qubit + 1
                    } else {
                        *qubit
                    };
                    if top >= n_qubits {
                        return Err(Error::MalformedProgram(format!(
                            "gate on qubit {top} in a {n_qubits}-qubit program"
                        )));
                    }
                    if !theta.is_finite() {
                        return Err(Error::MalformedProgram("non-finite angle".into()));
                    }
                }
                Gate::Pauli(p) => {
                    layers += 1;
                    if p.len() != n_qubits {
                        return Err(Error::MalformedProgram(format!(
                            "Pauli layer of length {} in a {n_qubits}-qubit program",
                            p.len()
                        )));
                    }
                }
            }
        }
        if layers > 1 {
            return Err(Error::MalformedProgram(format!("{layers} Pauli layers")));
        }
        Ok(GateProgram { n_qubits, gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn rotations(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| !matches!(g, Gate::Pauli(_)))
            .count()
    }

    /// Depth uses greedy as-soon-as-possible layering over qubit supports.
    pub fn stats(&self) -> ProgramStats {
        let mut level = vec![0usize; self.n_qubits];
        let mut s = ProgramStats {
            two_qubit_count: 0,
            one_qubit_count: 0,
            rotation_count: 0,
            pauli_weight: 0,
            depth: 0,
        };
        for g in &self.gates {
            match g {
                Gate::ZRot { .. } => s.one_qubit_count += 1,
                Gate::XXRot { .. } => s.two_qubit_count += 1,
                Gate::Pauli(_) => {}
            }
            let sup = g.support();
            if let Gate::Pauli(_) = g {
                s.pauli_weight = sup.len();
                for &q in &sup {
                    level[q] += 1;
                }
                continue;
            }
            let l = sup.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &sup {
                level[q] = l;
            }
        }
        s.rotation_count = s.one_qubit_count + s.two_qubit_count;
        s.depth = level.into_iter().max().unwrap_or(0);
        s
    }

    pub fn to_records(&self) -> Vec<GateRecord> {
        self.gates.iter().map(GateRecord::from).collect()
    }

    /// Rebuilds a program; the qubit count is taken from the Pauli layer when
    /// present, otherwise from the largest qubit touched.
    pub fn from_records(records: &[GateRecord], n_qubits: Option<usize>) -> Result<Self> {
        let gates = records
            .iter()
            .map(Gate::try_from)
            .collect::<Result<Vec<_>>>()?;
        let n = n_qubits
            .or_else(|| {
                gates.iter().find_map(|g| match g {
                    Gate::Pauli(p) => Some(p.len()),
                    _ => None,
                })
            })
            .or_else(|| gates.iter().flat_map(|g| g.support()).max().map(|q| q + 1))
            .ok_or_else(|| Error::MalformedProgram("cannot infer the qubit count".into()))?;
        Self::new(n, gates)
    }
}

impl fmt::Display for GateProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            match g {
                Gate::ZRot { qubit, theta } => writeln!(f, "zrot q{qubit} {theta:.6}")?,
                Gate::XXRot { qubit, theta } => {
                    writeln!(f, "xxrot q{qubit},q{} {theta:.6}", qubit + 1)?
                }
                Gate::Pauli(p) => writeln!(f, "pauli {}", p.letters_string())?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Givens {
    axis: usize,
    theta: f64,
}

/// `rows(a, a+1) ← [[c, -s], [s, c]] · rows(a, a+1)`.
fn rotate_rows(m: &mut DMatrix<f64>, a: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for j in 0..m.ncols() {
        let (x, y) = (m[(a, j)], m[(a + 1, j)]);
        m[(a, j)] = c * x - s * y;
        m[(a + 1, j)] = s * x + c * y;
    }
}

/// `m ← m · G(a, θ)ᵀ`.
fn rotate_cols(m: &mut DMatrix<f64>, a: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for i in 0..m.nrows() {
        let (x, y) = (m[(i, a)], m[(i, a + 1)]);
        m[(i, a)] = c * x - s * y;
        m[(i, a + 1)] = s * x + c * y;
    }
}

/// Angle that zeroes `y` in `G(θ)·(x, y)ᵀ`, keeping the mass on top.
fn angle_up(x: f64, y: f64) -> f64 {
    if y.abs() < TOL.angle {
        return 0.0;
    }
    (-y).atan2(x)
}

/// Angle that zeroes `x` in `G(θ)·(x, y)ᵀ`, keeping the mass at the bottom.
fn angle_down(x: f64, y: f64) -> f64 {
    if x.abs() < TOL.angle {
        return 0.0;
    }
    x.atan2(y)
}

fn significant(theta: f64) -> bool {
    theta.abs() >= TOL.angle
}

/// Per-block signs and rotations of a block-diagonal orthogonal matrix,
/// `B = D · Gc` with `Gc` a product of Givens on axes `(2p, 2p+1)`.
fn split_block_diagonal(w: &DMatrix<f64>) -> (Vec<f64>, Vec<Givens>) {
    let n = w.nrows() / 2;
    let mut d = vec![1.0; 2 * n];
    let mut rot = Vec::new();
    for p in 0..n {
        let (a, b) = (2 * p, 2 * p + 1);
        let det = w[(a, a)] * w[(b, b)] - w[(a, b)] * w[(b, a)];
        let mut theta = if det >= 0.0 {
            w[(b, a)].atan2(w[(a, a)])
        } else {
            d[b] = -1.0;
            (-w[(b, a)]).atan2(w[(a, a)])
        };
        // a half turn is cheaper as a sign flip of both generators
        if theta.abs() > std::f64::consts::FRAC_PI_2 {
            d[a] = -d[a];
            d[b] = -d[b];
            theta -= std::f64::consts::PI.copysign(theta);
        }
        if significant(theta) {
            rot.push(Givens { axis: a, theta });
        }
    }
    (d, rot)
}

/// Pauli string `W = Π_p W_p` realizing the diagonal sign matrix `d`.
pub fn sign_layer(d: &[f64]) -> PauliString {
    let n = d.len() / 2;
    let mut acc = PauliString::identity(n);
    for p in 0..n {
        let (e, o) = (d[2 * p] > 0.0, d[2 * p + 1] > 0.0);
        let head = match (e, o) {
            (true, true) => continue,
            (false, false) => Pauli::Z,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Y,
        };
        let mut w = PauliString::identity(n);
        w.letters[p] = head;
        if head != Pauli::Z {
            for l in &mut w.letters[p + 1..] {
                *l = Pauli::Z;
            }
        }
        acc = acc.multiply(&w);
    }
    acc.phase = 0;
    acc
}

/// Assembles `Q = L_1ᵀ⋯L_Kᵀ · D · Gc · R_M ⋯ R_1` into a time-ordered program
/// after commuting `D` to the far right.
fn assemble(
    n: usize,
    left: &[Givens],
    d: &[f64],
    center: &[Givens],
    right: &[Givens],
) -> GateProgram {
    let flip = |g: &Givens| d[g.axis] * d[g.axis + 1];
    let mut gates = Vec::with_capacity(left.len() + center.len() + right.len() + 1);
    gates.push(Gate::Pauli(sign_layer(d)));
    for g in right {
        gates.push(Gate::givens(g.axis, g.theta * flip(g)));
    }
    for g in center {
        gates.push(Gate::givens(g.axis, g.theta * flip(g)));
    }
    for g in left.iter().rev() {
        gates.push(Gate::givens(g.axis, -g.theta));
    }
    GateProgram { n_qubits: n, gates }
}

/// Column-by-column adjacent Givens elimination.
pub fn compile_naive(q: &DMatrix<f64>) -> Result<GateProgram> {
    let dim = q.nrows();
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::Dimension(format!(
            "expected a 2n x 2n matrix, got {dim}x{}",
            q.ncols()
        )));
    }
    check_orthogonal(q, dim)?;
    let mut w = q.clone();
    let mut left = Vec::new();
    for j in 0..dim - 1 {
        for i in (j + 1..dim).rev() {
            let theta = angle_up(w[(i - 1, j)], w[(i, j)]);
            if significant(theta) {
                rotate_rows(&mut w, i - 1, theta);
                left.push(Givens { axis: i - 1, theta });
            }
        }
    }
    let (d, center) = split_block_diagonal(&w);
    Ok(assemble(dim / 2, &left, &d, &center, &[]))
}

/// Eliminates two rows of a 4×2 slice with five adjacent Givens rotations.
///
/// `get(k, l)` reads the slice; `toward_bottom` selects whether rows `0,1` or
/// `2,3` are zeroed. Returns local axes and angles in application order.
fn block_eliminate(get: impl Fn(usize, usize) -> f64, toward_bottom: bool) -> Vec<Givens> {
    let mut x = [[0.0; 2]; 4];
    for (k, row) in x.iter_mut().enumerate() {
        for (l, v) in row.iter_mut().enumerate() {
            *v = get(k, l);
        }
    }
    let zeroed = if toward_bottom { 0..2 } else { 2..4 };
    if x[zeroed].iter().flatten().all(|v| v.abs() < TOL.angle) {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(5);
    let mut apply = |x: &mut [[f64; 2]; 4], a: usize, theta: f64| {
        let (s, c) = theta.sin_cos();
        for l in 0..2 {
            let (u, v) = (x[a][l], x[a + 1][l]);
            x[a][l] = c * u - s * v;
            x[a + 1][l] = s * u + c * v;
        }
        out.push(Givens { axis: a, theta });
    };
    if toward_bottom {
        for (col, axes) in [(0, &[0usize, 1, 2][..]), (1, &[0, 1][..])] {
            for &a in axes {
                let theta = angle_down(x[a][col], x[a + 1][col]);
                apply(&mut x, a, theta);
            }
        }
    } else {
        for (col, axes) in [(0, &[2usize, 1, 0][..]), (1, &[2, 1][..])] {
            for &a in axes {
                let theta = angle_up(x[a][col], x[a + 1][col]);
                apply(&mut x, a, theta);
            }
        }
    }
    out.retain(|g| significant(g.theta));
    out
}

/// Two-sided elimination over `2 × 2` blocks with `4 × 4` block factors,
/// interleaving row and column operations so that rotations on disjoint
/// block pairs run in parallel.
pub fn compile_blocked(q: &DMatrix<f64>) -> Result<GateProgram> {
    let dim = q.nrows();
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::Dimension(format!(
            "expected a 2n x 2n matrix, got {dim}x{}",
            q.ncols()
        )));
    }
    check_orthogonal(q, dim)?;
    let n = dim / 2;
    let mut w = q.clone();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 1..n {
        if i % 2 == 1 {
            for j in 0..i {
                // zero block (n-1-j, c) with a column operation on blocks (c, c+1)
                let (r, c) = (n - 1 - j, i - 1 - j);
                let ops = block_eliminate(|k, l| w[(2 * r + l, 2 * c + k)], true);
                for g in ops {
                    rotate_cols(&mut w, 2 * c + g.axis, g.theta);
                    right.push(Givens {
                        axis: 2 * c + g.axis,
                        theta: g.theta,
                    });
                }
            }
        } else {
            for j in 1..=i {
                // zero block (r, c) with a row operation on blocks (r-1, r)
                let (r, c) = (n + j - i - 1, j - 1);
                let base = 2 * (r - 1);
                let ops = block_eliminate(|k, l| w[(base + k, 2 * c + l)], false);
                for g in ops {
                    rotate_rows(&mut w, base + g.axis, g.theta);
                    left.push(Givens {
                        axis: base + g.axis,
                        theta: g.theta,
                    });
                }
            }
        }
    }
    let (d, center) = split_block_diagonal(&w);
    Ok(assemble(n, &left, &d, &center, &right))
}

/// Composes the gate actions back into `Q = Q_m ⋯ Q_1`.
pub fn program_to_orthogonal(p: &GateProgram) -> Result<DMatrix<f64>> {
    let n = p.n_qubits;
    let dim = 2 * n;
    let mut q = DMatrix::identity(dim, dim);
    let mut layers = 0;
    for g in &p.gates {
        match g {
            Gate::ZRot { qubit, theta } => {
                if *qubit >= n {
                    return Err(Error::MalformedProgram(format!(
                        "qubit {qubit} out of range"
                    )));
                }
                rotate_rows(&mut q, 2 * qubit, *theta);
            }
            Gate::XXRot { qubit, theta } => {
                if qubit + 1 >= n {
                    return Err(Error::MalformedProgram(format!(
                        "qubit {} out of range",
                        qubit + 1
                    )));
                }
                rotate_rows(&mut q, 2 * qubit + 1, *theta);
            }
            Gate::Pauli(ps) => {
                layers += 1;
                if ps.len() != n || layers > 1 {
                    return Err(Error::MalformedProgram("invalid Pauli layer".into()));
                }
                for mu in 0..dim {
                    if ps.anticommutes(&PauliString::majorana(n, mu)) {
                        for j in 0..dim {
                            q[(mu, j)] = -q[(mu, j)];
                        }
                    }
                }
            }
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub naive: ProgramStats,
    pub blocked: ProgramStats,
    pub depth_ratio: f64,
    pub rotation_ratio: f64,
}

/// Compiles with both schemes and reports blocked/naive ratios.
pub fn stats_compare(q: &DMatrix<f64>) -> Result<Comparison> {
    let naive = compile_naive(q)?.stats();
    let blocked = compile_blocked(q)?.stats();
    let ratio = |a: usize, b: usize| if b == 0 { 1.0 } else { a as f64 / b as f64 };
    Ok(Comparison {
        naive,
        blocked,
        depth_ratio: ratio(blocked.depth, naive.depth),
        rotation_ratio: ratio(blocked.rotation_count, naive.rotation_count),
    })
}
