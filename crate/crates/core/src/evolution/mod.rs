//! Forward and backward evolution of wave functions and the classical
//! density matrix, and the continuum generators built from neighboring step
//! evolution operators.
//!
//! The classical wave function advances as `q~(t+eps) = S(t) q~(t)`, the
//! conjugate wave function as `q_bar(t+eps) = (S^-1)^T(t) q_bar(t)`, so the
//! contraction `q_bar . q~` is preserved step by step. In the continuum limit
//! the pair of operators `W` and `W~` generates the motion; for `W~ = W` the
//! density matrix obeys the generalized von Neumann equation
//! `d rho'/dt = [W, rho']`.

pub mod complex;

use crate::error::{Error, Result};
use crate::lattice::StepOperator;
use crate::linalg;
use crate::{Matrix, Vector};
use ndarray_linalg::Solve;

/// Tolerance for treating `W~` and `W` as equal.
pub const GENERATOR_PAIR_TOL: f64 = 1e-10;

/// Allowed trace drift across a von Neumann integration span.
pub const TRACE_DRIFT_TOL: f64 = 1e-9;

/// Tolerance on `max |rho'^2 - rho'|` for the pure-state flag.
pub const PURITY_TOL: f64 = 1e-8;

/// A classical wave function and its conjugate on one hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePair {
    pub q_tilde: Vector,
    pub q_bar: Vector,
    pub t: f64,
}

impl WavePair {
    pub fn new(q_tilde: Vector, q_bar: Vector, t: f64) -> Result<Self> {
        if q_tilde.len() != q_bar.len() {
            return Err(Error::DimensionMismatch(
                "wave function pair must have equal length".into(),
            ));
        }
        if q_tilde.iter().chain(q_bar.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(
                "wave function entries must be finite".into(),
            ));
        }
        Ok(Self { q_tilde, q_bar, t })
    }

    pub fn dim(&self) -> usize {
        self.q_tilde.len()
    }

    /// Contraction `q_bar . q~`, the partition function of a solved problem.
    pub fn contraction(&self) -> f64 {
        self.q_bar.dot(&self.q_tilde)
    }

    /// Componentwise products, the local probabilities in the occupation
    /// number basis.
    pub fn local_probabilities(&self) -> Vector {
        &self.q_bar * &self.q_tilde
    }
}

/// The real classical density matrix `rho'` on one hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDensity {
    matrix: Matrix,
    pub t: f64,
    pure: Option<bool>,
}

impl ClassicalDensity {
    /// Wrap a trace-one matrix; the purity flag is left undetermined.
    pub fn new(matrix: Matrix, t: f64) -> Result<Self> {
        Self::with_purity(matrix, t, None)
    }

    pub fn with_purity(matrix: Matrix, t: f64, pure: Option<bool>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(
                "density matrix must be square".into(),
            ));
        }
        let trace = matrix.diag().sum();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace {trace} deviates from one beyond 1e-10"
            )));
        }
        Ok(Self { matrix, t, pure })
    }

    /// Pure-state density `rho'_{tau rho} = q~_tau q_bar_rho` from a wave
    /// pair normalized to `q_bar . q~ = 1`.
    pub fn from_pure_pair(pair: &WavePair) -> Result<Self> {
        let z = pair.contraction();
        if (z - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "wave pair is not normalized: q_bar . q~ = {z}"
            )));
        }
        let n = pair.dim();
        let mut m = Matrix::zeros((n, n));
        for tau in 0..n {
            for rho in 0..n {
                m[[tau, rho]] = pair.q_tilde[tau] * pair.q_bar[rho];
            }
        }
        Self::with_purity(m, pair.t, Some(true))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().sum()
    }

    /// Diagonal elements, the local probabilities in the occupation number
    /// basis. Negative entries are returned as-is, never clamped.
    pub fn local_probabilities(&self) -> Vector {
        self.matrix.diag().to_owned()
    }

    /// Flag recorded at construction, if any.
    pub fn pure_flag(&self) -> Option<bool> {
        self.pure
    }

    /// Measured purity defect `max |rho'^2 - rho'|`.
    pub fn purity_defect(&self) -> f64 {
        linalg::max_abs_diff(&self.matrix.dot(&self.matrix), &self.matrix)
    }

    pub fn is_pure(&self) -> bool {
        self.purity_defect() <= PURITY_TOL
    }
}

/// Advance the classical wave function by one step: `S q~`.
pub fn evolve_wave(q_tilde: &Vector, op: &StepOperator) -> Result<Vector> {
    op.apply(q_tilde)
}

/// Advance the conjugate wave function by one step: `(S^-1)^T q_bar`,
/// computed as an LU solve on `S^T`.
pub fn evolve_conjugate(q_bar: &Vector, op: &StepOperator) -> Result<Vector> {
    if q_bar.len() != op.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator dim {} vs vector dim {}",
            op.dim(),
            q_bar.len()
        )));
    }
    let st = op.matrix().t().to_owned();
    let rc = linalg::rcond(&st);
    if !rc.is_finite() || rc < linalg::RCOND_MIN {
        return Err(Error::SingularOperator { rcond: rc });
    }
    Ok(st.solve(q_bar)?)
}

/// Step the conjugate wave function backward in time: `q_bar(t) = S^T(t)
/// q_bar(t+eps)`. This is the exact inverse of [`evolve_conjugate`] and
/// needs no linear solve.
pub fn devolve_conjugate(q_bar_next: &Vector, op: &StepOperator) -> Result<Vector> {
    if q_bar_next.len() != op.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator dim {} vs vector dim {}",
            op.dim(),
            q_bar_next.len()
        )));
    }
    Ok(op.matrix().t().dot(q_bar_next))
}

/// The pair of continuum generators formed from neighboring step operators.
///
/// `W(t) = (S(t) - S^-1(t-eps)) / (2 eps)` drives the wave function,
/// `W~(t) = (S(t-eps) - S^-1(t)) / (2 eps)` the conjugate one; the two agree
/// for a `t`-independent chain. The decomposition `W = J + W_A` into the
/// symmetric and antisymmetric parts identifies the damping term `J` and the
/// Hamiltonian `H = i W_A`.
#[derive(Debug, Clone)]
pub struct GeneratorW {
    w: Matrix,
    w_tilde: Matrix,
}

impl GeneratorW {
    pub fn from_pair(w: Matrix, w_tilde: Matrix) -> Result<Self> {
        if w.nrows() != w.ncols() || w.dim() != w_tilde.dim() {
            return Err(Error::DimensionMismatch("generator pair dims".into()));
        }
        Ok(Self { w, w_tilde })
    }

    /// Generator with `W~ = W`, the `t`-independent case.
    pub fn from_single(w: Matrix) -> Result<Self> {
        Self::from_pair(w.clone(), w)
    }

    pub fn w(&self) -> &Matrix {
        &self.w
    }

    pub fn w_tilde(&self) -> &Matrix {
        &self.w_tilde
    }

    /// Symmetric (damping) part of `W`.
    pub fn j(&self) -> Matrix {
        linalg::symmetric_part(&self.w)
    }

    /// Real antisymmetric part `W_A`; the Hamiltonian is `H = i W_A`.
    pub fn w_antisymmetric(&self) -> Matrix {
        linalg::antisymmetric_part(&self.w)
    }

    /// Whether `W~` equals `W` within [`GENERATOR_PAIR_TOL`].
    pub fn is_matched_pair(&self) -> bool {
        linalg::max_abs_diff(&self.w, &self.w_tilde) <= GENERATOR_PAIR_TOL
    }

    fn require_matched(&self) -> Result<()> {
        if self.is_matched_pair() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "density evolution with W~ != W is not implemented; chains with \
                 t-dependent generators must be evolved step by step"
                    .into(),
            ))
        }
    }
}

/// Build the generator pair from `S(t)` and `S(t - eps)`.
pub fn generator(s_t: &StepOperator, s_tminus: &StepOperator, epsilon: f64) -> Result<GeneratorW> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if s_t.dim() != s_tminus.dim() {
        return Err(Error::DimensionMismatch("generator operator dims".into()));
    }
    let inv_minus = s_tminus.inverse()?;
    let inv_t = s_t.inverse()?;
    let w = (s_t.matrix() - &inv_minus) / (2.0 * epsilon);
    let w_tilde = (s_tminus.matrix() - &inv_t) / (2.0 * epsilon);
    GeneratorW::from_pair(w, w_tilde)
}

/// One discrete step of the density matrix: `S rho' S^-1`.
///
/// The right factor is applied by LU solves on `S^T`, never by forming the
/// inverse.
pub fn evolve_density_step(rho: &ClassicalDensity, op: &StepOperator) -> Result<ClassicalDensity> {
    if rho.dim() != op.dim() {
        return Err(Error::DimensionMismatch(
            "density and operator dims differ".into(),
        ));
    }
    let st = op.matrix().t().to_owned();
    let rc = linalg::rcond(&st);
    if !rc.is_finite() || rc < linalg::RCOND_MIN {
        return Err(Error::SingularOperator { rcond: rc });
    }
    let left = op.matrix().dot(rho.matrix());
    // Y = left . S^-1  <=>  S^T Y^T = left^T
    let mut yt = Matrix::zeros((rho.dim(), rho.dim()));
    for (j, col) in left.t().outer_iter().enumerate() {
        let sol = st.solve(&col.to_owned())?;
        yt.row_mut(j).assign(&sol);
    }
    let evolved = yt.t().to_owned();
    ClassicalDensity::with_purity(evolved, rho.t + 1.0, rho.pure_flag())
}

/// A sampled solution of the generalized von Neumann equation.
#[derive(Debug, Clone)]
pub struct DensityTrajectory {
    pub times: Vec<f64>,
    pub densities: Vec<Matrix>,
    /// Largest `|tr rho'(t) - 1|` over the samples.
    pub max_trace_drift: f64,
}

impl DensityTrajectory {
    pub fn last(&self) -> &Matrix {
        self.densities.last().expect("non-empty trajectory")
    }
}

/// Integrate `d rho'/dt = [W, rho']` with a classical fourth-order fixed-step
/// method over `t_span`, sampling after every step.
pub fn integrate_von_neumann(
    rho0: &ClassicalDensity,
    w: &Matrix,
    t_span: (f64, f64),
    dt: f64,
) -> Result<DensityTrajectory> {
    if dt <= 0.0 {
        return Err(Error::InvalidArgument("dt must be positive".into()));
    }
    if w.nrows() != w.ncols() || w.nrows() != rho0.dim() {
        return Err(Error::DimensionMismatch("W and rho' dims differ".into()));
    }
    let (t0, t1) = t_span;
    if t1 < t0 {
        return Err(Error::InvalidArgument("t_span must be ordered".into()));
    }
    let steps = ((t1 - t0) / dt).round() as usize;
    let steps = steps.max(1);
    let h = (t1 - t0) / steps as f64;
    let rhs = |m: &Matrix| linalg::commutator(w, m);

    let mut times = Vec::with_capacity(steps + 1);
    let mut densities = Vec::with_capacity(steps + 1);
    let mut drift = (rho0.trace() - 1.0).abs();
    times.push(t0);
    densities.push(rho0.matrix().clone());
    let mut current = rho0.matrix().clone();
    for k in 1..=steps {
        current = linalg::rk4_step(&current, h, rhs);
        drift = drift.max((current.diag().sum() - 1.0).abs());
        times.push(t0 + h * k as f64);
        densities.push(current.clone());
    }
    if drift > TRACE_DRIFT_TOL {
        return Err(Error::Numerical(format!(
            "trace drift {drift:.3e} exceeds {TRACE_DRIFT_TOL:.1e}; reduce dt"
        )));
    }
    Ok(DensityTrajectory {
        times,
        densities,
        max_trace_drift: drift,
    })
}

/// Same as [`integrate_von_neumann`] but through a [`GeneratorW`]; rejects
/// unmatched `W~ != W` pairs.
pub fn integrate_von_neumann_generator(
    rho0: &ClassicalDensity,
    gen: &GeneratorW,
    t_span: (f64, f64),
    dt: f64,
) -> Result<DensityTrajectory> {
    gen.require_matched()?;
    integrate_von_neumann(rho0, gen.w(), t_span, dt)
}
