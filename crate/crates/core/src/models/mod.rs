//! Built-in chains with known closed-form solutions: the one-dimensional
//! Ising chain, the four-state oscillator chain, unique jump chains, the
//! three-spin gate and `S_pl` models, and the diagonal-Ising fermion
//! sectors.

pub mod fermion;
pub mod four_state;
pub mod ising;
pub mod three_spin;

use crate::error::{Error, Result};
use crate::lattice::StepOperator;
use crate::Matrix;

/// Unique jump (permutation) step operator: `S[perm[tau], tau] = 1`.
///
/// `perm[tau]` is the configuration reached from `tau` after one step.
pub fn unique_jump_step(perm: &[usize]) -> Result<StepOperator> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidArgument(
                "unique jump map must be a permutation".into(),
            ));
        }
        seen[p] = true;
    }
    let mut m = Matrix::zeros((n, n));
    for (tau, &target) in perm.iter().enumerate() {
        m[[target, tau]] = 1.0;
    }
    StepOperator::from_matrix(m)
}
