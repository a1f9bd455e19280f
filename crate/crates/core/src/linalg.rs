//! Shared dense linear algebra helpers.
//!
//! Everything here is desk-scale (N up to a few hundred), so the
//! implementations favor robustness: full eigendecompositions instead of
//! power iterations, LU solves with reciprocal-condition guards instead of
//! blind inversion.

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, Matrix, Vector};
use ndarray::Array2;
use ndarray_linalg::{Eig, Eigh, Inverse, OperationNorm, ReciprocalConditionNum, Solve, UPLO};
use num_complex::Complex64;

/// Condition numbers above 1/RCOND_MIN are treated as singular.
pub const RCOND_MIN: f64 = 1e-12;

/// Reciprocal condition number estimate from an LU factorization.
pub fn rcond(m: &Matrix) -> f64 {
    m.rcond().unwrap_or(0.0)
}

fn check_square(m: &Matrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

/// Inverse with a reciprocal-condition guard.
pub fn inv_checked(m: &Matrix) -> Result<Matrix> {
    check_square(m)?;
    let rc = rcond(m);
    if !rc.is_finite() || rc < RCOND_MIN {
        return Err(Error::SingularOperator { rcond: rc });
    }
    Ok(m.inv()?)
}

/// Solve `m x = b` with a condition guard.
pub fn solve_checked(m: &Matrix, b: &Vector) -> Result<Vector> {
    check_square(m)?;
    let rc = rcond(m);
    if !rc.is_finite() || rc < RCOND_MIN {
        return Err(Error::SingularOperator { rcond: rc });
    }
    Ok(m.solve(b)?)
}

/// `d a d^{-1}` computed via LU solves on the right factor.
pub fn similarity(d: &Matrix, a: &Matrix) -> Result<Matrix> {
    let di = inv_checked(d)?;
    Ok(d.dot(a).dot(&di))
}

/// Eigenvalues of a real matrix (complex in general).
pub fn eigenvalues(m: &Matrix) -> Result<CVector> {
    let (vals, _) = eigenpairs(m)?;
    Ok(vals)
}

/// Eigenvalues and (column) eigenvectors of a real matrix.
pub fn eigenpairs(m: &Matrix) -> Result<(CVector, CMatrix)> {
    check_square(m)?;
    let (vals, vecs) = m.eig()?;
    Ok((vals, vecs))
}

/// Eigenvalues and (column) eigenvectors of a complex matrix.
pub fn eigenpairs_complex(m: &CMatrix) -> Result<(CVector, CMatrix)> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch("eig of non-square matrix".into()));
    }
    let (vals, vecs) = m.eig()?;
    Ok((vals, vecs))
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Maximum absolute entry.
pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Maximum absolute entry of a complex matrix.
pub fn max_abs_c(m: &CMatrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Maximum absolute difference between two matrices.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    max_abs(&(a - b))
}

pub fn is_symmetric(m: &Matrix, tol: f64) -> bool {
    max_abs_diff(m, &m.t().to_owned()) <= tol
}

/// Symmetric part `(m + m^T)/2`.
pub fn symmetric_part(m: &Matrix) -> Matrix {
    (m + &m.t()) / 2.0
}

/// Antisymmetric part `(m - m^T)/2`.
pub fn antisymmetric_part(m: &Matrix) -> Matrix {
    (m - &m.t()) / 2.0
}

/// Embed a real matrix into the complex field.
pub fn complexify_matrix(m: &Matrix) -> CMatrix {
    m.mapv(|x| Complex64::new(x, 0.0))
}

/// Embed a real vector into the complex field.
pub fn complexify_vector(v: &Vector) -> CVector {
    v.mapv(|x| Complex64::new(x, 0.0))
}

/// Real part of a complex matrix, failing if any imaginary entry exceeds `tol`.
pub fn real_part_checked(m: &CMatrix, tol: f64) -> Result<Matrix> {
    let max_imag = m.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if max_imag > tol {
        return Err(Error::Numerical(format!(
            "matrix expected to be real has max |Im| = {max_imag:.3e}"
        )));
    }
    Ok(m.mapv(|z| z.re))
}

/// Ordered product `ops[last] ... ops[1] ops[0]` (later factors act last, i.e.
/// stand to the left, matching the chain product of step evolution operators).
pub fn ordered_product<'a, I>(dim: usize, ops: I) -> Matrix
where
    I: IntoIterator<Item = &'a Matrix>,
{
    let mut acc = Array2::<f64>::eye(dim);
    for op in ops {
        acc = op.dot(&acc);
    }
    acc
}

/// Hermitian (symmetric) eigendecomposition.
pub fn eigh_sym(m: &Matrix) -> Result<(Vector, Matrix)> {
    check_square(m)?;
    let (vals, vecs) = m.eigh(UPLO::Lower)?;
    Ok((vals, vecs))
}

/// Inverse square root of a symmetric positive definite matrix.
///
/// Eigenvalues below `floor` are an error; the construction assumes strictly
/// positive spectra.
pub fn spd_inv_sqrt(m: &Matrix, floor: f64) -> Result<Matrix> {
    let (vals, vecs) = eigh_sym(m)?;
    if vals.iter().any(|&l| l < floor) {
        return Err(Error::Numerical(format!(
            "matrix lost positive definiteness: min eigenvalue {:.3e} below floor {floor:.1e}",
            vals.iter().cloned().fold(f64::INFINITY, f64::min)
        )));
    }
    let d = Array2::from_diag(&vals.mapv(|l| 1.0 / l.sqrt()));
    Ok(vecs.dot(&d).dot(&vecs.t()))
}

/// Square root of a symmetric positive definite matrix.
pub fn spd_sqrt(m: &Matrix, floor: f64) -> Result<Matrix> {
    let (vals, vecs) = eigh_sym(m)?;
    if vals.iter().any(|&l| l < floor) {
        return Err(Error::Numerical(
            "matrix lost positive definiteness in square root".into(),
        ));
    }
    let d = Array2::from_diag(&vals.mapv(f64::sqrt));
    Ok(vecs.dot(&d).dot(&vecs.t()))
}

/// Matrix exponential by scaling-and-squaring with a Taylor kernel.
///
/// Accurate to machine precision for the moderate norms used here.
pub fn expm(m: &Matrix) -> Result<Matrix> {
    let n = check_square(m)?;
    let norm = m.opnorm_one().unwrap_or_else(|_| max_abs(m) * n as f64);
    let scale = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let a = m / 2f64.powi(scale as i32);
    let mut term = Array2::<f64>::eye(n);
    let mut sum = Array2::<f64>::eye(n);
    for k in 1..=24 {
        term = term.dot(&a) / k as f64;
        sum = sum + &term;
    }
    let mut result = sum;
    for _ in 0..scale {
        result = result.dot(&result);
    }
    Ok(result)
}

/// Deterministic pairwise (tree) summation in fixed order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// State types integrable by the fixed-step fourth-order integrator.
pub trait OdeState: Clone {
    fn add_scaled(&self, other: &Self, c: f64) -> Self;
}

impl OdeState for Vector {
    fn add_scaled(&self, other: &Self, c: f64) -> Self {
        self + &(other * c)
    }
}

impl OdeState for Matrix {
    fn add_scaled(&self, other: &Self, c: f64) -> Self {
        self + &(other * c)
    }
}

impl OdeState for CVector {
    fn add_scaled(&self, other: &Self, c: f64) -> Self {
        self + &(other * Complex64::new(c, 0.0))
    }
}

impl OdeState for CMatrix {
    fn add_scaled(&self, other: &Self, c: f64) -> Self {
        self + &(other * Complex64::new(c, 0.0))
    }
}

/// One classical fourth-order step of `dy/dt = f(y)` with fixed `dt`.
pub fn rk4_step<S, F>(y: &S, dt: f64, f: F) -> S
where
    S: OdeState,
    F: Fn(&S) -> S,
{
    let k1 = f(y);
    let k2 = f(&y.add_scaled(&k1, dt / 2.0));
    let k3 = f(&y.add_scaled(&k2, dt / 2.0));
    let k4 = f(&y.add_scaled(&k3, dt));
    y.add_scaled(&k1, dt / 6.0)
        .add_scaled(&k2, dt / 3.0)
        .add_scaled(&k3, dt / 3.0)
        .add_scaled(&k4, dt / 6.0)
}

/// Commutator `[a, b] = ab - ba`.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.dot(b) - b.dot(a)
}

/// Anticommutator `{a, b} = ab + ba`.
pub fn anticommutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.dot(b) + b.dot(a)
}

/// Complex commutator.
pub fn commutator_c(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.dot(b) - b.dot(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn expm_matches_series_on_rotation_generator() {
        // exp(theta * [[0,-1],[1,0]]) is a rotation by theta
        let theta = 0.731f64;
        let g = array![[0.0, -theta], [theta, 0.0]];
        let e = expm(&g).unwrap();
        let expect = array![
            [theta.cos(), -theta.sin()],
            [theta.sin(), theta.cos()]
        ];
        assert!(max_abs_diff(&e, &expect) < 1e-14);
    }

    #[test]
    fn rk4_integrates_exponential() {
        let y0: Vector = array![1.0];
        let mut y = y0;
        let dt = 0.01;
        for _ in 0..100 {
            y = rk4_step(&y, dt, |v: &Vector| v.clone());
        }
        assert!((y[0] - 1f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn pairwise_sum_is_deterministic_and_accurate() {
        let xs: Vec<f64> = (0..10_001).map(|i| (i as f64).sin() * 1e-3).collect();
        let a = pairwise_sum(&xs);
        let b = pairwise_sum(&xs);
        assert_eq!(a.to_bits(), b.to_bits());
        let naive: f64 = xs.iter().sum();
        assert!((a - naive).abs() < 1e-9);
    }

    #[test]
    fn inv_checked_rejects_singular() {
        let m = array![[1.0, 2.0], [2.0, 4.0]];
        assert!(matches!(
            inv_checked(&m),
            Err(Error::SingularOperator { .. })
        ));
    }

    #[test]
    fn spd_inv_sqrt_squares_to_inverse() {
        let m = array![[2.0, 0.5], [0.5, 1.0]];
        let s = spd_inv_sqrt(&m, 1e-14).unwrap();
        let ident = s.dot(&m).dot(&s);
        assert!(max_abs_diff(&ident, &Array2::eye(2)) < 1e-12);
    }
}
