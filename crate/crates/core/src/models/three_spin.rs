//! Three-spin chains: unique jump gate operations acting as single-qubit
//! unitaries on a Bloch vector, and the partially information-preserving
//! `S_pl` family.
//!
//! States are ordered by the spin triple `(s1, s2, s3)` with `s1` most
//! significant: index 0 is `(-1,-1,-1)`, index 7 is `(1,1,1)`. This is the
//! catalog ordering used throughout this module; [`paper_index`] converts a
//! little-endian [`SpinConfig`] into it.

use crate::error::{Error, Result};
use crate::lattice::{SpinConfig, StepOperator};
use crate::models::unique_jump_step;
use crate::{CMatrix, Matrix, Vector};
use ndarray::{array, Array1};
use num_complex::Complex64;

/// Index of a three-spin configuration in the catalog (big-endian) ordering.
pub fn paper_index(config: &SpinConfig) -> usize {
    assert_eq!(config.num_spins(), 3, "three-spin model needs M = 3");
    (0..3).fold(0usize, |acc, gamma| {
        acc | ((config.occupation(gamma) as usize) << (2 - gamma))
    })
}

/// Spin values `(s1, s2, s3)` of a catalog index.
pub fn spins_of_index(idx: usize) -> [i8; 3] {
    [
        if idx & 4 != 0 { 1 } else { -1 },
        if idx & 2 != 0 { 1 } else { -1 },
        if idx & 1 != 0 { 1 } else { -1 },
    ]
}

fn index_of_spins(s: [i8; 3]) -> usize {
    let bit = |x: i8| usize::from(x > 0);
    (bit(s[0]) << 2) | (bit(s[1]) << 1) | bit(s[2])
}

/// Diagonal classical spin operators `A'_1`, `A'_2`, `A'_3`.
pub fn spin_operators() -> [Matrix; 3] {
    let mut ops = [Matrix::zeros((8, 8)), Matrix::zeros((8, 8)), Matrix::zeros((8, 8))];
    for idx in 0..8 {
        let s = spins_of_index(idx);
        for k in 0..3 {
            ops[k][[idx, idx]] = s[k] as f64;
        }
    }
    ops
}

/// The single-qubit gates realizable as unique jump operations on three
/// classical spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    /// Hadamard: swaps the 1- and 3-axes, flips the 2-axis.
    H,
    /// Rotation in the 3-1 plane.
    U31,
    /// Pauli X conjugation.
    UX,
    /// Pauli Y conjugation.
    UY,
    /// Pauli Z conjugation.
    UZ,
    /// Rotation in the 1-2 plane (phase gate diag(1, -i)).
    U12,
    /// Rotation in the 2-3 plane.
    U23,
}

impl Gate {
    pub const ALL: [Gate; 7] = [
        Gate::H,
        Gate::U31,
        Gate::UX,
        Gate::UY,
        Gate::UZ,
        Gate::U12,
        Gate::U23,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H" => Ok(Gate::H),
            "U31" => Ok(Gate::U31),
            "UX" | "X" => Ok(Gate::UX),
            "UY" | "Y" => Ok(Gate::UY),
            "UZ" | "Z" => Ok(Gate::UZ),
            "U12" => Ok(Gate::U12),
            "U23" => Ok(Gate::U23),
            other => Err(Error::InvalidArgument(format!("unknown gate '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H => "H",
            Gate::U31 => "U31",
            Gate::UX => "UX",
            Gate::UY => "UY",
            Gate::UZ => "UZ",
            Gate::U12 => "U12",
            Gate::U23 => "U23",
        }
    }

    /// Spin map `(s1, s2, s3) -> (s1', s2', s3')` of the unique jump.
    fn spin_map(&self, s: [i8; 3]) -> [i8; 3] {
        let [s1, s2, s3] = s;
        match self {
            Gate::H => [s3, -s2, s1],
            Gate::U31 => [-s3, s2, s1],
            Gate::UX => [s1, -s2, -s3],
            Gate::UY => [-s1, s2, -s3],
            Gate::UZ => [-s1, -s2, s3],
            Gate::U12 => [s2, -s1, s3],
            Gate::U23 => [s1, s3, -s2],
        }
    }

    /// The 8x8 unique jump step operator in catalog ordering. Every gate in
    /// the catalog is realizable with nonnegative entries.
    pub fn step(&self) -> StepOperator {
        let perm: Vec<usize> = (0..8)
            .map(|idx| index_of_spins(self.spin_map(spins_of_index(idx))))
            .collect();
        unique_jump_step(&perm).expect("gate spin maps are bijections")
    }

    /// Associated 2x2 unitary acting on the quantum density matrix.
    pub fn unitary(&self) -> CMatrix {
        let c = Complex64::new;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Gate::H => array![[c(r, 0.), c(r, 0.)], [c(r, 0.), c(-r, 0.)]],
            Gate::U31 => array![[c(r, 0.), c(r, 0.)], [c(-r, 0.), c(r, 0.)]],
            Gate::UX => array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
            Gate::UY => array![[c(0., 0.), c(1., 0.)], [c(-1., 0.), c(0., 0.)]],
            Gate::UZ => array![[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
            Gate::U12 => array![[c(1., 0.), c(0., 0.)], [c(0., 0.), c(0., -1.)]],
            Gate::U23 => array![[c(0., r), c(-r, 0.)], [c(-r, 0.), c(0., r)]],
        }
    }

    /// Action on the Bloch vector: `rho -> R rho`.
    pub fn bloch_matrix(&self) -> Matrix {
        match self {
            Gate::H => array![[0., 0., 1.], [0., -1., 0.], [1., 0., 0.]],
            Gate::U31 => array![[0., 0., -1.], [0., 1., 0.], [1., 0., 0.]],
            Gate::UX => Matrix::from_diag(&array![1., -1., -1.]),
            Gate::UY => Matrix::from_diag(&array![-1., 1., -1.]),
            Gate::UZ => Matrix::from_diag(&array![-1., -1., 1.]),
            Gate::U12 => array![[0., 1., 0.], [-1., 0., 0.], [0., 0., 1.]],
            Gate::U23 => array![[1., 0., 0.], [0., 0., 1.], [0., -1., 0.]],
        }
    }
}

/// Expectation values of the three spins, a Bloch vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub components: [f64; 3],
}

impl BlochState {
    pub fn new(components: [f64; 3]) -> Self {
        Self { components }
    }

    pub fn norm_squared(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum()
    }

    pub fn as_vector(&self) -> Vector {
        Array1::from_vec(self.components.to_vec())
    }
}

/// Bloch vector from the eight local probabilities (catalog ordering).
pub fn bloch_from_probabilities(p: &Vector) -> Result<BlochState> {
    if p.len() != 8 {
        return Err(Error::DimensionMismatch(
            "three-spin probabilities must have length 8".into(),
        ));
    }
    if p.iter().any(|&x| x < -1e-12) {
        return Err(Error::InvalidArgument(
            "probabilities must be nonnegative".into(),
        ));
    }
    let total: f64 = p.sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "probabilities must sum to one, got {total}"
        )));
    }
    let mut rho = [0.0; 3];
    for idx in 0..8 {
        let s = spins_of_index(idx);
        for k in 0..3 {
            rho[k] += s[k] as f64 * p[idx];
        }
    }
    Ok(BlochState::new(rho))
}

/// Quantum density matrix `rho = (1 + rho_k tau_k) / 2` of a Bloch state
/// with `|rho| <= 1`.
pub fn quantum_density_2x2(b: &BlochState) -> Result<CMatrix> {
    if b.norm_squared() > 1.0 + 1e-10 {
        return Err(Error::InvalidArgument(format!(
            "Bloch vector norm^2 = {} exceeds one",
            b.norm_squared()
        )));
    }
    let [x, y, z] = b.components;
    let c = Complex64::new;
    Ok(array![
        [c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y)],
        [c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)]
    ])
}

/// Bloch components recovered from a quantum density matrix.
pub fn bloch_from_density(rho: &CMatrix) -> BlochState {
    let x = (rho[[0, 1]] + rho[[1, 0]]).re;
    let y = (rho[[1, 0]] - rho[[0, 1]]).im;
    let z = (rho[[0, 0]] - rho[[1, 1]]).re;
    BlochState::new([x, y, z])
}

/// Parameters of the `S_pl` family; all in `[0, 1]`.
///
/// The operator is block diagonal over the conserved pair `(s1, s3)`:
/// the `plus` block acts on states 0..4 (`s1 = -1`), the `minus` block on
/// states 4..8 (`s1 = +1`).
#[derive(Debug, Clone, Copy)]
pub struct SPlParams {
    pub a_plus: f64,
    pub b_plus: f64,
    pub c_plus: f64,
    pub d_plus: f64,
    pub a_minus: f64,
    pub b_minus: f64,
    pub c_minus: f64,
    pub d_minus: f64,
}

impl SPlParams {
    pub fn new(values: [f64; 8]) -> Result<Self> {
        if values.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidArgument(
                "S_pl parameters must lie in [0, 1]".into(),
            ));
        }
        let [a_plus, b_plus, c_plus, d_plus, a_minus, b_minus, c_minus, d_minus] = values;
        Ok(Self {
            a_plus,
            b_plus,
            c_plus,
            d_plus,
            a_minus,
            b_minus,
            c_minus,
            d_minus,
        })
    }

    /// Symmetric parameters `c = a`, `d = b` per block.
    pub fn symmetric(a_plus: f64, b_plus: f64, a_minus: f64, b_minus: f64) -> Result<Self> {
        Self::new([
            a_plus, b_plus, a_plus, b_plus, a_minus, b_minus, a_minus, b_minus,
        ])
    }

    fn block(a: f64, b: f64, c: f64, d: f64) -> Matrix {
        array![
            [1.0 - a, 0.0, c, 0.0],
            [0.0, 1.0 - b, 0.0, d],
            [a, 0.0, 1.0 - c, 0.0],
            [0.0, b, 0.0, 1.0 - d]
        ]
    }

    /// The 8x8 step operator in catalog ordering.
    pub fn step(&self) -> Result<StepOperator> {
        let p = Self::block(self.a_plus, self.b_plus, self.c_plus, self.d_plus);
        let m = Self::block(self.a_minus, self.b_minus, self.c_minus, self.d_minus);
        let mut s = Matrix::zeros((8, 8));
        for i in 0..4 {
            for j in 0..4 {
                s[[i, j]] = p[[i, j]];
                s[[i + 4, j + 4]] = m[[i, j]];
            }
        }
        StepOperator::from_matrix(s)
    }

    /// The four non-unit eigenvalues `(lambda_+, lambda'_+, lambda_-,
    /// lambda'_-)`; the other four eigenvalues equal one.
    pub fn nonunit_eigenvalues(&self) -> [f64; 4] {
        [
            1.0 - self.a_plus - self.c_plus,
            1.0 - self.b_plus - self.d_plus,
            1.0 - self.a_minus - self.c_minus,
            1.0 - self.b_minus - self.d_minus,
        ]
    }

    /// The four unit-eigenvalue eigenvectors (normalized, catalog ordering):
    /// two per block, supported on the `(s3 = -1)` and `(s3 = +1)` pairs.
    pub fn unit_eigenvectors(&self) -> [Vector; 4] {
        let embed = |offset: usize, i0: usize, v0: f64, i1: usize, v1: f64| {
            let mut v = Vector::zeros(8);
            let norm = (v0 * v0 + v1 * v1).sqrt();
            v[offset + i0] = v0 / norm;
            v[offset + i1] = v1 / norm;
            v
        };
        [
            embed(0, 0, self.c_plus, 2, self.a_plus),
            embed(0, 1, self.d_plus, 3, self.b_plus),
            embed(4, 0, self.c_minus, 2, self.a_minus),
            embed(4, 1, self.d_minus, 3, self.b_minus),
        ]
    }

    /// The four decaying eigenvectors, ordered as the eigenvalues of
    /// [`Self::nonunit_eigenvalues`].
    pub fn decaying_eigenvectors(&self) -> [Vector; 4] {
        let embed = |offset: usize, i0: usize, i1: usize| {
            let mut v = Vector::zeros(8);
            let r = std::f64::consts::FRAC_1_SQRT_2;
            v[offset + i0] = r;
            v[offset + i1] = -r;
            v
        };
        [embed(0, 0, 2), embed(0, 1, 3), embed(4, 0, 2), embed(4, 1, 3)]
    }

    /// The large-chain limit of the initial local probabilities: only the
    /// components of the final boundary on the unit eigenvectors survive.
    ///
    /// Exact for symmetric parameters (`c = a`, `d = b` per block), where
    /// the unit eigenvectors of `S` and `S^T` coincide. The result is
    /// normalized to sum to one.
    pub fn bulk_initial_probabilities(&self, q_in: &Vector, q_bar_f: &Vector) -> Result<Vector> {
        if q_in.len() != 8 || q_bar_f.len() != 8 {
            return Err(Error::DimensionMismatch(
                "S_pl wave functions must have length 8".into(),
            ));
        }
        let w = self.unit_eigenvectors();
        let f: Vec<f64> = w.iter().map(|v| v.dot(q_bar_f)).collect();
        let n1p = (self.a_plus.powi(2) + self.c_plus.powi(2)).sqrt();
        let n2p = (self.b_plus.powi(2) + self.d_plus.powi(2)).sqrt();
        let n1m = (self.a_minus.powi(2) + self.c_minus.powi(2)).sqrt();
        let n2m = (self.b_minus.powi(2) + self.d_minus.powi(2)).sqrt();
        let mut p = Vector::zeros(8);
        p[0] = f[0] * self.c_plus * q_in[0] / n1p;
        p[2] = f[0] * self.a_plus * q_in[2] / n1p;
        p[1] = f[1] * self.d_plus * q_in[1] / n2p;
        p[3] = f[1] * self.b_plus * q_in[3] / n2p;
        p[4] = f[2] * self.c_minus * q_in[4] / n1m;
        p[6] = f[2] * self.a_minus * q_in[6] / n1m;
        p[5] = f[3] * self.d_minus * q_in[5] / n2m;
        p[7] = f[3] * self.b_minus * q_in[7] / n2m;
        let total = p.sum();
        if total.abs() < 1e-300 {
            return Err(Error::ZeroPartitionFunction);
        }
        Ok(p / total)
    }
}
