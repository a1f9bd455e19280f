//! Configuration encoding, occupation-number basis and step evolution
//! operators built from generalized Ising actions.
//!
//! A layer of `M` Ising spins `s_gamma = ±1` is encoded by occupation numbers
//! `n_gamma = (1 + s_gamma)/2 ∈ {0, 1}`. Configurations are indexed
//! little-endian: bit `gamma` of the index is `n_gamma`, so spin 0 is the
//! least significant bit. The occupation-number basis function `h_tau` equals
//! one exactly on configuration `tau` and vanishes elsewhere.

use crate::error::{Error, Result};
use crate::linalg;
use crate::{Matrix, Vector};
use ndarray::Array2;

/// Largest spin count per layer accepted by [`enumerate_configs`].
pub const MAX_SPINS: usize = 20;

/// Tolerance on `|spectral radius - 1|` for a normalized step operator.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// One local spin configuration of `M` spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    index: usize,
    spins: usize,
}

impl SpinConfig {
    /// Configuration with the given index for `m` spins.
    pub fn new(index: usize, m: usize) -> Result<Self> {
        if m < 1 || m > MAX_SPINS {
            return Err(Error::InvalidArgument(format!(
                "spin count {m} outside [1, {MAX_SPINS}]"
            )));
        }
        if index >= (1usize << m) {
            return Err(Error::InvalidArgument(format!(
                "configuration index {index} out of range for {m} spins"
            )));
        }
        Ok(Self { index, spins: m })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn num_spins(&self) -> usize {
        self.spins
    }

    /// Occupation number `n_gamma ∈ {0, 1}`.
    pub fn occupation(&self, gamma: usize) -> u8 {
        ((self.index >> gamma) & 1) as u8
    }

    /// Spin value `s_gamma = 2 n_gamma - 1 ∈ {-1, +1}`.
    pub fn spin(&self, gamma: usize) -> i8 {
        2 * self.occupation(gamma) as i8 - 1
    }

    /// All occupation numbers, least significant spin first.
    pub fn occupations(&self) -> Vec<u8> {
        (0..self.spins).map(|g| self.occupation(g)).collect()
    }
}

/// All `2^m` configurations of `m` spins in ascending index order.
pub fn enumerate_configs(m: usize) -> Result<Vec<SpinConfig>> {
    if m < 1 || m > MAX_SPINS {
        return Err(Error::InvalidArgument(format!(
            "spin count {m} outside [1, {MAX_SPINS}]"
        )));
    }
    (0..(1usize << m)).map(|i| SpinConfig::new(i, m)).collect()
}

/// Occupation-number basis function `h_tau` evaluated on configuration
/// `sigma`: one iff `tau == sigma`.
pub fn basis_value(tau: &SpinConfig, sigma: &SpinConfig) -> Result<u8> {
    if tau.spins != sigma.spins {
        return Err(Error::DimensionMismatch(
            "basis_value requires configurations with equal spin count".into(),
        ));
    }
    Ok(u8::from(tau.index == sigma.index))
}

/// Local action between two neighboring layers: the matrix of couplings
/// `M_{tau rho}`, with `+inf` marking a forbidden transition.
#[derive(Debug, Clone)]
pub struct LocalAction {
    couplings: Matrix,
    label: f64,
}

impl LocalAction {
    pub fn new(couplings: Matrix, label: f64) -> Result<Self> {
        if couplings.nrows() != couplings.ncols() {
            return Err(Error::DimensionMismatch(
                "local action must be square".into(),
            ));
        }
        if couplings.iter().any(|x| x.is_nan() || *x == f64::NEG_INFINITY) {
            return Err(Error::InvalidArgument(
                "action entries must be finite or +inf".into(),
            ));
        }
        Ok(Self { couplings, label })
    }

    pub fn couplings(&self) -> &Matrix {
        &self.couplings
    }

    pub fn label(&self) -> f64 {
        self.label
    }

    pub fn dim(&self) -> usize {
        self.couplings.nrows()
    }
}

/// A (possibly normalized) step evolution operator.
///
/// `normalization_log` records the additive constant `phi` absorbed from the
/// raw transfer matrix; `classical` is set only when all entries are
/// nonnegative, so the operator can arise from an Ising-type action.
#[derive(Debug, Clone)]
pub struct StepOperator {
    matrix: Matrix,
    normalization_log: f64,
    spectral_radius: f64,
    regular: bool,
    classical: bool,
}

impl PartialEq for StepOperator {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl StepOperator {
    /// Wrap a raw matrix, computing spectral radius and regularity.
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        Self::build(matrix, 0.0)
    }

    fn build(matrix: Matrix, normalization_log: f64) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(
                "step operator must be square".into(),
            ));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "step operator entries must be finite".into(),
            ));
        }
        let spectral_radius = linalg::spectral_radius(&matrix)?;
        let regular = linalg::rcond(&matrix) >= linalg::RCOND_MIN;
        let classical = matrix.iter().all(|&x| x >= 0.0);
        Ok(Self {
            matrix,
            normalization_log,
            spectral_radius,
            regular,
            classical,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Additive constant absorbed by normalization.
    pub fn normalization_log(&self) -> f64 {
        self.normalization_log
    }

    pub fn spectral_radius(&self) -> f64 {
        self.spectral_radius
    }

    /// Invertible within the condition-number tolerance.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// All entries nonnegative.
    pub fn is_classical(&self) -> bool {
        self.classical
    }

    /// Spectral radius equals one within [`NORMALIZATION_TOL`].
    pub fn is_normalized(&self) -> bool {
        (self.spectral_radius - 1.0).abs() <= NORMALIZATION_TOL
    }

    /// Orthogonality defect `max |S^T S - 1|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        linalg::max_abs_diff(&self.matrix.t().dot(&self.matrix), &Array2::eye(n))
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }

    /// Inverse with condition guard.
    pub fn inverse(&self) -> Result<Matrix> {
        linalg::inv_checked(&self.matrix)
    }

    /// Apply to a wave vector.
    pub fn apply(&self, q: &Vector) -> Result<Vector> {
        if q.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator dim {} vs vector dim {}",
                self.dim(),
                q.len()
            )));
        }
        Ok(self.matrix.dot(q))
    }
}

/// Step evolution operator from a local action: `S = exp(-M)` entrywise,
/// with `+inf` couplings mapping to exact zeros.
pub fn step_from_action(action: &LocalAction) -> Result<StepOperator> {
    let matrix = action.couplings().mapv(|m| {
        if m == f64::INFINITY {
            0.0
        } else {
            (-m).exp()
        }
    });
    let op = StepOperator::build(matrix, 0.0)?;
    debug_assert!(op.is_classical());
    Ok(op)
}

/// Recover the local action `M = -ln S` from a nonnegative step operator;
/// zero entries map to `+inf`.
pub fn action_from_step(op: &StepOperator, label: f64) -> Result<LocalAction> {
    if op.matrix().iter().any(|&x| x < 0.0) {
        return Err(Error::NotClassical);
    }
    let couplings = op.matrix().mapv(|s| {
        if s == 0.0 {
            f64::INFINITY
        } else {
            -s.ln()
        }
    });
    LocalAction::new(couplings, label)
}

/// Divide a raw transfer matrix by its largest eigenvalue modulus.
///
/// Returns the normalized operator; `normalization_log` accumulates
/// `ln |lambda_max|` on top of any constant already absorbed. Degenerate
/// largest moduli are allowed; the modulus itself fixes the scale.
pub fn normalize_step(op: &StepOperator) -> Result<StepOperator> {
    let radius = op.spectral_radius;
    if radius <= f64::MIN_POSITIVE {
        return Err(Error::ZeroSpectralRadius);
    }
    let matrix = op.matrix() / radius;
    StepOperator::build(matrix, op.normalization_log + radius.ln())
}

/// An ordered chain of step evolution operators over `G` time steps.
///
/// Slice `k` lives at `t = t_in + k * epsilon` for `k = 0..=G`; operator `k`
/// advances slice `k` to slice `k + 1`.
#[derive(Debug, Clone)]
pub struct ChainSpec {
    spins: usize,
    epsilon: f64,
    t_in: f64,
    operators: Vec<StepOperator>,
}

impl ChainSpec {
    pub fn new(
        spins: usize,
        epsilon: f64,
        t_in: f64,
        operators: Vec<StepOperator>,
    ) -> Result<Self> {
        if spins < 1 || spins > MAX_SPINS {
            return Err(Error::InvalidArgument(format!(
                "spin count {spins} outside [1, {MAX_SPINS}]"
            )));
        }
        if epsilon <= 0.0 {
            return Err(Error::InvalidArgument("epsilon must be positive".into()));
        }
        let n = 1usize << spins;
        for (k, op) in operators.iter().enumerate() {
            if op.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "operator {k} has dim {} but chain needs {n}",
                    op.dim()
                )));
            }
        }
        Ok(Self {
            spins,
            epsilon,
            t_in,
            operators,
        })
    }

    /// Chain repeating one operator `g` times.
    pub fn uniform(
        spins: usize,
        epsilon: f64,
        t_in: f64,
        op: StepOperator,
        g: usize,
    ) -> Result<Self> {
        Self::new(spins, epsilon, t_in, vec![op; g])
    }

    pub fn num_spins(&self) -> usize {
        self.spins
    }

    /// Number of local states `N = 2^M`.
    pub fn dim(&self) -> usize {
        1usize << self.spins
    }

    /// Number of time steps `G`.
    pub fn num_steps(&self) -> usize {
        self.operators.len()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t_in(&self) -> f64 {
        self.t_in
    }

    pub fn t_f(&self) -> f64 {
        self.t_in + self.epsilon * self.operators.len() as f64
    }

    /// Time of slice `k`.
    pub fn time_of(&self, k: usize) -> f64 {
        self.t_in + self.epsilon * k as f64
    }

    pub fn operators(&self) -> &[StepOperator] {
        &self.operators
    }

    pub fn operator(&self, k: usize) -> &StepOperator {
        &self.operators[k]
    }

    /// All operators share one matrix (bitwise).
    pub fn is_uniform(&self) -> bool {
        match self.operators.split_first() {
            None => true,
            Some((first, rest)) => rest.iter().all(|op| op.matrix() == first.matrix()),
        }
    }

    pub fn is_classical(&self) -> bool {
        self.operators.iter().all(|op| op.is_classical())
    }

    pub fn is_regular(&self) -> bool {
        self.operators.iter().all(|op| op.is_regular())
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.operators.iter().all(|op| op.is_orthogonal(tol))
    }

    /// Ordered product `S(t_f - eps) ... S(t_in)` mapping slice 0 to slice G.
    pub fn full_product(&self) -> Matrix {
        linalg::ordered_product(self.dim(), self.operators.iter().map(|op| op.matrix()))
    }

    /// Ordered product mapping slice `from` to slice `to` (`from <= to`).
    pub fn product_between(&self, from: usize, to: usize) -> Matrix {
        linalg::ordered_product(
            self.dim(),
            self.operators[from..to].iter().map(|op| op.matrix()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use ndarray::array;

    #[test]
    fn enumerate_configs_is_a_bijection() {
        let configs = enumerate_configs(3).unwrap();
        assert_eq!(configs.len(), 8);
        for (i, c) in configs.iter().enumerate() {
            assert_eq!(c.index(), i);
            let rebuilt = c
                .occupations()
                .iter()
                .enumerate()
                .fold(0usize, |acc, (g, &n)| acc | ((n as usize) << g));
            assert_eq!(rebuilt, i);
        }
        // m = 1: occupations 0 and 1
        let pair = enumerate_configs(1).unwrap();
        assert_eq!(pair[0].occupation(0), 0);
        assert_eq!(pair[1].occupation(0), 1);
        // m = 2: 00, 01, 10, 11 in little-endian bit order
        let four = enumerate_configs(2).unwrap();
        let occs: Vec<Vec<u8>> = four.iter().map(|c| c.occupations()).collect();
        assert_eq!(occs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(enumerate_configs(0).is_err());
        assert!(enumerate_configs(21).is_err());
    }

    #[test]
    fn paper_three_spin_ordering_via_permutation() {
        // The three-spin catalog orders states by (s1, s2, s3) with s1 most
        // significant; little-endian indices map onto it by bit reversal.
        let configs = enumerate_configs(3).unwrap();
        for c in &configs {
            let paper = models::three_spin::paper_index(c);
            let expect = (0..3).fold(0usize, |acc, k| {
                acc | ((c.occupation(k) as usize) << (2 - k))
            });
            assert_eq!(paper, expect);
        }
        assert_eq!(models::three_spin::paper_index(&configs[0]), 0); // (-1,-1,-1)
        assert_eq!(models::three_spin::paper_index(&configs[7]), 7); // (1,1,1)
    }

    #[test]
    fn basis_values_are_kronecker_deltas() {
        let configs = enumerate_configs(2).unwrap();
        for tau in &configs {
            for sigma in &configs {
                let v = basis_value(tau, sigma).unwrap();
                assert_eq!(v, u8::from(tau.index() == sigma.index()));
            }
        }
        // completeness: sum over tau equals one for every sigma
        for sigma in &configs {
            let total: u8 = configs
                .iter()
                .map(|tau| basis_value(tau, sigma).unwrap())
                .sum();
            assert_eq!(total, 1);
        }
    }

    #[test]
    fn step_from_action_zero_action_gives_all_ones() {
        let action = LocalAction::new(Array2::zeros((4, 4)), 0.0).unwrap();
        let op = step_from_action(&action).unwrap();
        assert!(op.matrix().iter().all(|&x| x == 1.0));
        assert!(op.is_classical());
    }

    #[test]
    fn forbidden_transition_maps_to_exact_zero() {
        let mut m = Array2::zeros((2, 2));
        m[[0, 1]] = f64::INFINITY;
        let op = step_from_action(&LocalAction::new(m, 0.0).unwrap()).unwrap();
        assert_eq!(op.matrix()[[0, 1]], 0.0);
        assert_eq!(op.matrix()[[0, 0]], 1.0);
    }

    #[test]
    fn action_round_trip_is_exact() {
        let beta = 0.7;
        let m = array![[-beta, beta], [beta, -beta]];
        let action = LocalAction::new(m, 0.0).unwrap();
        let op = step_from_action(&action).unwrap();
        let back = action_from_step(&op, 0.0).unwrap();
        let again = step_from_action(&back).unwrap();
        assert!(linalg::max_abs_diff(op.matrix(), again.matrix()) < 1e-12);
    }

    #[test]
    fn action_from_step_identity_and_all_ones() {
        let id = StepOperator::from_matrix(Array2::eye(2)).unwrap();
        let act = action_from_step(&id, 0.0).unwrap();
        assert_eq!(act.couplings()[[0, 0]], 0.0);
        assert_eq!(act.couplings()[[0, 1]], f64::INFINITY);

        let ones = StepOperator::from_matrix(Array2::ones((3, 3))).unwrap();
        let act = action_from_step(&ones, 0.0).unwrap();
        assert!(act.couplings().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn action_from_step_rejects_negative_entries() {
        let op = StepOperator::from_matrix(array![[1.0, -0.5], [0.0, 1.0]]).unwrap();
        assert!(matches!(
            action_from_step(&op, 0.0),
            Err(Error::NotClassical)
        ));
    }

    #[test]
    fn normalize_ising_transfer_matrix() {
        let beta = 1.3f64;
        let raw = array![
            [beta.exp(), (-beta).exp()],
            [(-beta).exp(), beta.exp()]
        ];
        let op = StepOperator::from_matrix(raw).unwrap();
        let norm = normalize_step(&op).unwrap();
        assert!((norm.normalization_log() - (2.0 * beta.cosh()).ln()).abs() < 1e-12);
        assert!(norm.is_normalized());
        // eigenvalues 1 and tanh(beta)
        let evs = linalg::eigenvalues(norm.matrix()).unwrap();
        let mut mods: Vec<f64> = evs.iter().map(|z| z.re).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((mods[1] - 1.0).abs() < 1e-12);
        assert!((mods[0] - beta.tanh()).abs() < 1e-12);
    }

    #[test]
    fn normalize_is_idempotent_and_orthogonal_unchanged() {
        let rot = array![[0.0, -1.0], [1.0, 0.0]];
        let op = StepOperator::from_matrix(rot.clone()).unwrap();
        let norm = normalize_step(&op).unwrap();
        assert_eq!(norm.matrix(), &rot);
        assert_eq!(norm.normalization_log(), 0.0);

        let scaled =
            StepOperator::from_matrix(models::four_state::step_matrix(0.5) * 2.0).unwrap();
        let once = normalize_step(&scaled).unwrap();
        assert!((once.normalization_log() - 2f64.ln()).abs() < 1e-12);
        let twice = normalize_step(&once).unwrap();
        assert_eq!(once.matrix(), twice.matrix());
    }

    #[test]
    fn normalize_rejects_zero_matrix() {
        let op = StepOperator::from_matrix(Array2::zeros((2, 2))).unwrap();
        assert!(matches!(normalize_step(&op), Err(Error::ZeroSpectralRadius)));
    }

    #[test]
    fn chain_spec_checks_dimensions() {
        let op = StepOperator::from_matrix(Array2::eye(2)).unwrap();
        let chain = ChainSpec::uniform(1, 1.0, 0.0, op.clone(), 3).unwrap();
        assert_eq!(chain.num_steps(), 3);
        assert_eq!(chain.t_f(), 3.0);
        assert!(chain.is_uniform());

        let op4 = StepOperator::from_matrix(Array2::eye(4)).unwrap();
        assert!(ChainSpec::new(1, 1.0, 0.0, vec![op, op4]).is_err());
    }
}
