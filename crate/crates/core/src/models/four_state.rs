//! Four-state oscillator chain: damped oscillatory approach to equilibrium,
//! its continuum generator, and the full fifteen-constant general solution
//! of the density-matrix evolution equation.

use crate::error::{Error, Result};
use crate::evolution::ClassicalDensity;
use crate::lattice::{ChainSpec, StepOperator};
use crate::{CMatrix, Matrix, Vector};
use ndarray::array;
use num_complex::Complex64;

/// The four-state step operator at mixing parameter `0 <= eta <= 1`.
pub fn step_matrix(eta: f64) -> Matrix {
    array![
        [1.0 - eta, 0.0, eta, 0.0],
        [eta, 1.0 - eta, 0.0, 0.0],
        [0.0, 0.0, 1.0 - eta, eta],
        [0.0, eta, 0.0, 1.0 - eta]
    ]
}

/// Uniform four-state chain; classical for `0 <= eta <= 1`.
pub fn four_state_chain(eta: f64, g: usize, epsilon: f64, t_in: f64) -> Result<ChainSpec> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::InvalidArgument(
            "eta must lie in [0, 1]".into(),
        ));
    }
    let op = StepOperator::from_matrix(step_matrix(eta))?;
    debug_assert!(op.is_classical());
    ChainSpec::uniform(2, epsilon, t_in, op, g)
}

/// Analytic spectrum `{1, 1 - eta ± i eta, 1 - 2 eta}`.
pub fn eigenvalues_analytic(eta: f64) -> [Complex64; 4] {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0 - eta, eta),
        Complex64::new(1.0 - eta, -eta),
        Complex64::new(1.0 - 2.0 * eta, 0.0),
    ]
}

/// Unnormalized eigenvectors to the analytic spectrum, in the same order.
pub fn eigenvectors_analytic() -> [Vec<Complex64>; 4] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        vec![c(1., 0.), c(1., 0.), c(1., 0.), c(1., 0.)],
        vec![c(1., 0.), c(0., -1.), c(0., 1.), c(-1., 0.)],
        vec![c(1., 0.), c(0., 1.), c(0., -1.), c(-1., 0.)],
        vec![c(1., 0.), c(-1., 0.), c(-1., 0.), c(1., 0.)],
    ]
}

/// The unique jump limit `eta = 1`.
pub fn unique_jump_matrix() -> Matrix {
    step_matrix(1.0)
}

/// Permutation cycle of the unique jump limit: state `tau` jumps to
/// `cycle[tau]`.
pub const UNIQUE_JUMP_CYCLE: [usize; 4] = [1, 3, 0, 2];

fn v_matrix() -> Matrix {
    unique_jump_matrix()
}

/// Continuum generator `W = -omega (1 - V)`.
pub fn w_matrix(omega: f64) -> Matrix {
    let v = v_matrix();
    let mut w = -Matrix::eye(4);
    w += &v;
    w * omega
}

/// Symmetric (damping) part of `W`.
pub fn j_matrix(omega: f64) -> Matrix {
    let v = v_matrix();
    let mut j = -Matrix::eye(4);
    j += &((&v + &v.t()) / 2.0);
    j * omega
}

/// Real antisymmetric part `W_A` of `W`; the Hamiltonian is `H = i W_A`.
pub fn w_antisymmetric_matrix(omega: f64) -> Matrix {
    let v = v_matrix();
    (&v - &v.t()) * (omega / 2.0)
}

/// The three static invariants commuting with `W`: `B_1`, `B_2 = V^T`,
/// `B_3 = V`.
pub fn b_matrices() -> [Matrix; 3] {
    let b1 = array![
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0]
    ];
    let v = v_matrix();
    [b1, v.t().to_owned(), v]
}

/// The oscillating pair `C_1`, `C_2` closing on the Hamiltonian.
pub fn c_matrices() -> [Matrix; 2] {
    let c1 = array![
        [1.0, 0.0, 0.0, -1.0],
        [0.0, -1.0, 1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
        [-1.0, 0.0, 0.0, 1.0]
    ];
    let c2 = array![
        [0.0, -1.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0, -1.0],
        [0.0, 1.0, -1.0, 0.0]
    ];
    [c1, c2]
}

/// Decaying-mode matrices of the general solution.
pub fn f_matrices() -> [Matrix; 4] {
    let f1 = array![
        [1.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, -1.0]
    ];
    let f2 = array![
        [1.0, -1.0, -1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
        [-1.0, 1.0, 1.0, -1.0]
    ];
    let f3 = array![
        [0.0, 1.0, -1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0],
        [0.0, 1.0, -1.0, 0.0]
    ];
    let f4 = array![
        [0.0, 0.0, 0.0, 0.0],
        [1.0, -1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0, -1.0],
        [0.0, 0.0, 0.0, 0.0]
    ];
    [f1, f2, f3, f4]
}

/// Monotonically growing / decaying mode matrix `E`.
pub fn e_matrix() -> Matrix {
    array![
        [1.0, -1.0, -1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0]
    ]
}

/// Complex eigenmode matrices `D_1 = F_1 - i F_3`, `D_2 = F_2 - i F_4`.
pub fn d_matrices() -> [CMatrix; 2] {
    let i = Complex64::new(0.0, 1.0);
    let [f1, f2, f3, f4] = f_matrices();
    let c = |m: &Matrix| m.mapv(|x| Complex64::new(x, 0.0));
    [&c(&f1) - &(c(&f3) * i), &c(&f2) - &(c(&f4) * i)]
}

/// Member of the quantum-evolving family:
/// `rho'_H = 1/4 + b_k B_k + c_1 C_1 + c_2 C_2`.
pub fn rho_h(b: &[f64; 3], c1: f64, c2: f64) -> Result<ClassicalDensity> {
    let bs = b_matrices();
    let cs = c_matrices();
    let mut m = Matrix::eye(4) * 0.25;
    for (coeff, mat) in b.iter().zip(bs.iter()) {
        m += &(mat * *coeff);
    }
    m += &(&cs[0] * c1);
    m += &(&cs[1] * c2);
    ClassicalDensity::new(m, 0.0)
}

/// The full fifteen-constant general solution of the density evolution
/// equation for the four-state chain.
///
/// The undamped part oscillates with frequency `2 omega`; the `d`-modes
/// decay towards one boundary with rate `omega` while oscillating with
/// frequency `omega`, and the `e`-modes decay with rate `2 omega`.
/// Amplitudes are anchored at the boundaries: `d_1, d_2, e_plus` multiply
/// `exp(-omega (t_f - t))`-type envelopes, `d_3, d_4, e_minus` the mirrored
/// `exp(-omega (t - t_in))` ones.
#[derive(Debug, Clone)]
pub struct FourStateAnalytic {
    pub b: [f64; 3],
    pub c_bar: f64,
    pub alpha: f64,
    pub d: [f64; 4],
    pub beta: [f64; 4],
    pub e_plus: f64,
    pub e_minus: f64,
    pub omega: f64,
    pub t_in: f64,
    pub t_f: f64,
}

impl FourStateAnalytic {
    /// Equilibrium solution: every entry of `rho'` equals 1/4.
    pub fn equilibrium(omega: f64, t_in: f64, t_f: f64) -> Self {
        Self {
            b: [0.25, 0.25, 0.25],
            c_bar: 0.0,
            alpha: 0.0,
            d: [0.0; 4],
            beta: [0.0; 4],
            e_plus: 0.0,
            e_minus: 0.0,
            omega,
            t_in,
            t_f,
        }
    }

    /// Evaluate `rho'(t)`.
    pub fn density(&self, t: f64) -> Result<ClassicalDensity> {
        let om = self.omega;
        let [b1m, b2m, b3m] = b_matrices();
        let [c1m, c2m] = c_matrices();
        let [f1, f2, f3, f4] = f_matrices();
        let e = e_matrix();

        let mut m = Matrix::eye(4) * 0.25;
        m += &(&b1m * self.b[0]);
        m += &(&b2m * self.b[1]);
        m += &(&b3m * self.b[2]);
        let phase = 2.0 * om * t + self.alpha;
        m += &(&c1m * (self.c_bar * phase.sin()));
        m += &(&c2m * (self.c_bar * phase.cos()));

        // decaying towards t_f (amplitude largest at the final boundary)
        let up = (-om * (self.t_f - t)).exp();
        let p1 = om * t + self.beta[0];
        let p2 = om * t + self.beta[1];
        m += &(&f1 * (2.0 * self.d[0] * p1.cos() * up));
        m += &(&f3 * (2.0 * self.d[0] * p1.sin() * up));
        m += &(&f2 * (2.0 * self.d[1] * p2.cos() * up));
        m += &(&f4 * (2.0 * self.d[1] * p2.sin() * up));
        m += &(&e * (self.e_plus * (-2.0 * om * (self.t_f - t)).exp()));

        // decaying towards t_in (transposed mode matrices)
        let down = (-om * (t - self.t_in)).exp();
        let p3 = om * t + self.beta[2];
        let p4 = om * t + self.beta[3];
        m += &(&f1.t() * (2.0 * self.d[2] * p3.cos() * down));
        m += &(&f3.t() * (2.0 * self.d[2] * p3.sin() * down));
        m += &(&f2.t() * (2.0 * self.d[3] * p4.cos() * down));
        m += &(&f4.t() * (2.0 * self.d[3] * p4.sin() * down));
        m += &(&e.t() * (self.e_minus * (-2.0 * om * (t - self.t_in)).exp()));

        ClassicalDensity::new(m, t)
    }

    /// Bulk oscillation of the probability combination
    /// `p_1 - p_2 - p_3 + p_4` once the boundary modes have decayed.
    pub fn bulk_probability_oscillation(&self, t: f64) -> f64 {
        4.0 * self.c_bar * (2.0 * self.omega * t + self.alpha).sin()
    }
}

/// The oscillating pure-state pair that solves the evolution equation but
/// violates boundary positivity: `q~(t) = exp(-omega (t - t_bar)) Q(t)`,
/// `q_bar(t) = exp(omega (t - t_bar)) Q(t)` with
/// `Q = (cos, sin, -sin, -cos) / sqrt(2)`.
pub fn oscillating_pure_state(omega: f64, t_bar: f64, t: f64) -> (Vector, Vector) {
    let c = (omega * t).cos();
    let s = (omega * t).sin();
    let q = array![c, s, -s, -c] / 2f64.sqrt();
    let q_tilde = &q * (-omega * (t - t_bar)).exp();
    let q_bar = &q * (omega * (t - t_bar)).exp();
    (q_tilde, q_bar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use ndarray::Array2;

    #[test]
    fn spectrum_matches_analytic_values() {
        for &eta in &[0.12, 0.5, 0.93] {
            let evs = linalg::eigenvalues(&step_matrix(eta)).unwrap();
            let mut expect: Vec<Complex64> = eigenvalues_analytic(eta).to_vec();
            for z in evs.iter() {
                // pair each computed eigenvalue with the closest expected one
                let (k, _) = expect
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| {
                        (*a - z).norm().partial_cmp(&(*b - z).norm()).unwrap()
                    })
                    .unwrap();
                assert!((expect[k] - z).norm() < 1e-12);
                expect.remove(k);
            }
        }
    }

    #[test]
    fn analytic_eigenvectors_are_eigenvectors() {
        let eta = 0.37;
        let s = linalg::complexify_matrix(&step_matrix(eta));
        for (lambda, v) in eigenvalues_analytic(eta)
            .iter()
            .zip(eigenvectors_analytic().iter())
        {
            let v = ndarray::Array1::from_vec(v.clone());
            let sv = s.dot(&v);
            let lv = v.mapv(|x| x * lambda);
            assert!(sv
                .iter()
                .zip(lv.iter())
                .all(|(a, b)| (a - b).norm() < 1e-12));
        }
    }

    #[test]
    fn eta_limits() {
        assert_eq!(step_matrix(0.0), Array2::eye(4));
        let jump = unique_jump_matrix();
        for (tau, &target) in UNIQUE_JUMP_CYCLE.iter().enumerate() {
            assert_eq!(jump[[target, tau]], 1.0);
        }
        assert!(four_state_chain(1.2, 3, 1.0, 0.0).is_err());
    }

    #[test]
    fn b_matrices_commute_with_w_and_satisfy_algebra() {
        let w = w_matrix(0.83);
        let [b1, b2, b3] = b_matrices();
        for b in [&b1, &b2, &b3] {
            assert!(linalg::max_abs(&linalg::commutator(&w, b)) < 1e-14);
        }
        // B2 B3 = 1, B1 B2 = B3, B1 B3 = B2, B1 symmetric
        assert!(linalg::max_abs_diff(&b2.dot(&b3), &Array2::eye(4)) < 1e-15);
        assert!(linalg::max_abs_diff(&b1.dot(&b2), &b3) < 1e-15);
        assert!(linalg::max_abs_diff(&b1.dot(&b3), &b2) < 1e-15);
        assert!(linalg::max_abs_diff(&b1.t().to_owned(), &b1) < 1e-15);
    }

    #[test]
    fn h_and_j_commute_and_close_on_c_pair() {
        let omega = 0.61;
        let j = j_matrix(omega);
        let wa = w_antisymmetric_matrix(omega);
        assert!(linalg::max_abs(&linalg::commutator(&j, &wa)) < 1e-14);

        let [c1, c2] = c_matrices();
        // [J, C_i] = 0 keeps the family inside the quantum subsystem
        assert!(linalg::max_abs(&linalg::commutator(&j, &c1)) < 1e-14);
        assert!(linalg::max_abs(&linalg::commutator(&j, &c2)) < 1e-14);
        // [H, C_1] = -2 i omega C_2 with H = i W_A reads [W_A, C_1] = -2 omega C_2
        assert!(
            linalg::max_abs_diff(&linalg::commutator(&wa, &c1), &(&c2 * (-2.0 * omega))) < 1e-13
        );
        assert!(
            linalg::max_abs_diff(&linalg::commutator(&wa, &c2), &(&c1 * (2.0 * omega))) < 1e-13
        );
    }

    #[test]
    fn rho_h_has_equal_local_probabilities() {
        let rho = rho_h(&[0.05, 0.03, -0.02], 0.0, 0.0).unwrap();
        for &p in rho.local_probabilities().iter() {
            assert!((p - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn general_solution_satisfies_evolution_equation() {
        let sol = FourStateAnalytic {
            b: [0.02, 0.01, -0.015],
            c_bar: 0.03,
            alpha: 0.4,
            d: [0.01, -0.008, 0.012, 0.005],
            beta: [0.1, 0.7, -0.3, 1.1],
            e_plus: 0.006,
            e_minus: -0.004,
            omega: 0.8,
            t_in: 0.0,
            t_f: 12.0,
        };
        let w = w_matrix(sol.omega);
        let h = 1e-4;
        for &t in &[1.0, 5.5, 9.0] {
            let plus = sol.density(t + h).unwrap();
            let minus = sol.density(t - h).unwrap();
            let deriv = (plus.matrix() - minus.matrix()) / (2.0 * h);
            let rho = sol.density(t).unwrap();
            let rhs = linalg::commutator(&w, rho.matrix());
            assert!(linalg::max_abs_diff(&deriv, &rhs) < 1e-7);
        }
    }

    #[test]
    fn bulk_oscillation_of_probability_difference() {
        let sol = FourStateAnalytic {
            b: [0.0; 3],
            c_bar: 0.04,
            alpha: 0.9,
            d: [0.0; 4],
            beta: [0.0; 4],
            e_plus: 0.0,
            e_minus: 0.0,
            omega: 0.5,
            t_in: 0.0,
            t_f: 50.0,
        };
        for &t in &[20.0, 25.0, 31.0] {
            let p = sol.density(t).unwrap().local_probabilities();
            let diff = p[0] - p[1] - p[2] + p[3];
            assert!((diff - sol.bulk_probability_oscillation(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn oscillating_pure_state_is_a_solution_with_unit_contraction() {
        let omega = 0.45;
        let w = w_matrix(omega);
        let h = 1e-5;
        let t = 2.3;
        let (q0, qb0) = oscillating_pure_state(omega, 1.0, t);
        assert!((qb0.dot(&q0) - 1.0).abs() < 1e-13);
        let (qp, _) = oscillating_pure_state(omega, 1.0, t + h);
        let (qm, _) = oscillating_pure_state(omega, 1.0, t - h);
        let deriv = (&qp - &qm) / (2.0 * h);
        let rhs = w.dot(&q0);
        assert!((&deriv - &rhs).iter().all(|x| x.abs() < 1e-8));
        // some component is negative at generic t: positivity must fail
        assert!(q0.iter().any(|&x| x < -1e-3));
    }
}
