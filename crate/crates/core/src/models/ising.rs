//! One-dimensional Ising chain without magnetic field and its exact
//! boundary-problem solution.
//!
//! The normalized step operator is
//! `S = [[e^b, e^-b], [e^-b, e^b]] / (2 cosh b)` with eigenvalues `1` and
//! `tanh b`. Configurations are indexed little-endian, so index 1 is the
//! occupied state `n = 1`.

use crate::error::{Error, Result};
use crate::evolution::ClassicalDensity;
use crate::lattice::{ChainSpec, StepOperator};
use crate::Matrix;
use ndarray::array;

/// Normalized Ising step operator at inverse temperature `beta >= 0`.
pub fn chain_step(beta: f64) -> Result<StepOperator> {
    if !(beta >= 0.0) {
        return Err(Error::InvalidArgument(
            "beta must be nonnegative and finite".into(),
        ));
    }
    let z = 2.0 * beta.cosh();
    let m = array![
        [beta.exp() / z, (-beta).exp() / z],
        [(-beta).exp() / z, beta.exp() / z]
    ];
    StepOperator::from_matrix(m)
}

/// Uniform Ising chain over `g` steps.
pub fn ising_chain(beta: f64, g: usize, epsilon: f64, t_in: f64) -> Result<ChainSpec> {
    ChainSpec::uniform(1, epsilon, t_in, chain_step(beta)?, g)
}

/// The subleading eigenvalue `tanh beta`, the exact per-step decay of the
/// antisymmetric mode.
pub fn decay_per_step(beta: f64) -> f64 {
    beta.tanh()
}

/// Occupation-number operator `n = diag(0, 1)` in the little-endian basis.
pub fn occupation_matrix() -> Matrix {
    array![[0.0, 0.0], [0.0, 1.0]]
}

/// Closed-form solution of the Ising boundary problem.
///
/// The density matrix is parametrized by the static off-diagonal parameter
/// `a` and two decay amplitudes `b_in`, `c_f` attached to the initial and
/// final boundary. The decay rate enters through `omega`; for the discrete
/// chain the exact per-step decay factor is `tanh beta`, reproduced by
/// `omega = -ln(tanh beta) / (2 eps)`.
#[derive(Debug, Clone)]
pub struct IsingAnalytic {
    pub a: f64,
    pub b_in: f64,
    pub c_f: f64,
    pub omega: f64,
    pub t_in: f64,
    pub t_f: f64,
}

impl IsingAnalytic {
    pub fn new(a: f64, b_in: f64, c_f: f64, omega: f64, t_in: f64, t_f: f64) -> Result<Self> {
        if !(t_f > t_in) || omega < 0.0 {
            return Err(Error::InvalidArgument(
                "need t_f > t_in and omega >= 0".into(),
            ));
        }
        Ok(Self {
            a,
            b_in,
            c_f,
            omega,
            t_in,
            t_f,
        })
    }

    /// Decay rate matching the discrete chain at `beta` exactly.
    pub fn omega_for_chain(beta: f64, epsilon: f64) -> f64 {
        -beta.tanh().ln() / (2.0 * epsilon)
    }

    /// Solve for `b_in`, `c_f` from the boundary occupation offsets
    /// `dn_in = <n(t_in)> - 1/2` and `dn_f = <n(t_f)> - 1/2`.
    pub fn from_boundary_offsets(
        dn_in: f64,
        dn_f: f64,
        a: f64,
        omega: f64,
        t_in: f64,
        t_f: f64,
    ) -> Result<Self> {
        let r = (-2.0 * omega * (t_f - t_in)).exp();
        if r >= 1.0 {
            return Err(Error::InvalidArgument(
                "decay factor r must be below one".into(),
            ));
        }
        let b_in = 2.0 * (dn_in - r * dn_f) / (1.0 - r * r);
        let c_f = 2.0 * (dn_f - r * dn_in) / (1.0 - r * r);
        Self::new(a, b_in, c_f, omega, t_in, t_f)
    }

    /// `r = exp(-2 omega (t_f - t_in))`.
    pub fn r(&self) -> f64 {
        (-2.0 * self.omega * (self.t_f - self.t_in)).exp()
    }

    /// Initial-boundary amplitude at `t`.
    pub fn b(&self, t: f64) -> f64 {
        self.b_in * (-2.0 * self.omega * (t - self.t_in)).exp()
    }

    /// Final-boundary amplitude at `t`.
    pub fn c(&self, t: f64) -> f64 {
        self.c_f * (-2.0 * self.omega * (self.t_f - t)).exp()
    }

    /// Occupation offset `<n(t)> - 1/2 = (b(t) + c(t)) / 2`.
    pub fn delta_n(&self, t: f64) -> f64 {
        0.5 * (self.b(t) + self.c(t))
    }

    /// Occupation offset in terms of the boundary offsets.
    pub fn delta_n_from_offsets(dn_in: f64, dn_f: f64, omega: f64, t_in: f64, t_f: f64, t: f64) -> f64 {
        let r = (-2.0 * omega * (t_f - t_in)).exp();
        let den = 1.0 - r * r;
        (dn_in - r * dn_f) / den * (-2.0 * omega * (t - t_in)).exp()
            + (dn_f - r * dn_in) / den * (-2.0 * omega * (t_f - t)).exp()
    }

    /// Small-omega limit: linear interpolation between the boundary offsets.
    pub fn linear_interpolation(dn_in: f64, dn_f: f64, t_in: f64, t_f: f64, t: f64) -> f64 {
        0.5 * (dn_in + dn_f) + 0.5 * (dn_in - dn_f) * (t_f + t_in - 2.0 * t) / (t_f - t_in)
    }

    /// Density matrix at `t` in the little-endian basis (index 1 occupied).
    pub fn density(&self, t: f64) -> Result<ClassicalDensity> {
        let b = self.b(t);
        let c = self.c(t);
        let m = array![
            [0.5 * (1.0 - b - c), 0.5 * (self.a - b + c)],
            [0.5 * (self.a + b - c), 0.5 * (1.0 + b + c)]
        ];
        ClassicalDensity::new(m, t)
    }

    /// `det rho'`, constant in `t`.
    pub fn det_invariant(&self) -> f64 {
        0.25 * (1.0 - self.a * self.a - 4.0 * self.b_in * self.c_f * self.r())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use ndarray::Array2;

    #[test]
    fn step_limits() {
        // beta -> infinity approaches the identity
        let s = chain_step(20.0).unwrap();
        assert!(linalg::max_abs_diff(s.matrix(), &Array2::eye(2)) < 1e-15);
        // beta = 0 is the equal-weight matrix
        let s0 = chain_step(0.0).unwrap();
        assert!(s0.matrix().iter().all(|&x| (x - 0.5).abs() < 1e-15));
        assert!(chain_step(-1.0).is_err());
    }

    #[test]
    fn step_eigenvalues_are_one_and_tanh() {
        let beta = 0.9f64;
        let s = chain_step(beta).unwrap();
        let mut evs: Vec<f64> = linalg::eigenvalues(s.matrix())
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        evs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((evs[1] - 1.0).abs() < 1e-14);
        assert!((evs[0] - beta.tanh()).abs() < 1e-14);
    }

    #[test]
    fn static_density_for_vanishing_amplitudes() {
        let sol = IsingAnalytic::new(0.4, 0.0, 0.0, 0.05, 0.0, 40.0).unwrap();
        for &t in &[0.0, 13.0, 40.0] {
            assert_eq!(sol.delta_n(t), 0.0);
            let rho = sol.density(t).unwrap();
            let expect = ndarray::array![[0.5, 0.2], [0.2, 0.5]];
            assert!(linalg::max_abs_diff(rho.matrix(), &expect) < 1e-15);
        }
    }

    #[test]
    fn determinant_is_t_independent() {
        let sol = IsingAnalytic::new(0.3, 0.5, -0.2, 0.07, 0.0, 30.0).unwrap();
        let expected = sol.det_invariant();
        for &t in &[0.0, 7.5, 18.0, 30.0] {
            let rho = sol.density(t).unwrap();
            let m = rho.matrix();
            let det = m[[0, 0]] * m[[1, 1]] - m[[0, 1]] * m[[1, 0]];
            assert!((det - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn small_omega_limit_is_linear() {
        let (dn_in, dn_f) = (0.31, -0.17);
        let (t_in, t_f) = (0.0, 40.0);
        let omega = 1e-6;
        for &t in &[0.0, 10.0, 23.0, 40.0] {
            let exact = IsingAnalytic::delta_n_from_offsets(dn_in, dn_f, omega, t_in, t_f, t);
            let lin = IsingAnalytic::linear_interpolation(dn_in, dn_f, t_in, t_f, t);
            assert!((exact - lin).abs() < 1e-6);
        }
    }

    #[test]
    fn offsets_round_trip() {
        let sol =
            IsingAnalytic::from_boundary_offsets(0.2, -0.1, 0.0, 0.08, 0.0, 25.0).unwrap();
        assert!((sol.delta_n(0.0) - 0.2).abs() < 1e-14);
        assert!((sol.delta_n(25.0) + 0.1).abs() < 1e-14);
        assert!(IsingAnalytic::from_boundary_offsets(0.1, 0.1, 0.0, 0.0, 0.0, 1.0).is_err());
    }
}
