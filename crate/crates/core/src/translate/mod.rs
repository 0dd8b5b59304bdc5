//! Translations between permutations, controlled circuits, direct-sum
//! circuits and GF(2) matrices.

mod mobit;
mod rig;

pub use mobit::{a_j, b_j, factor_gl2, gray_letter_matrix, zeta, zeta_inductive, GrayLetter, GrayWord, LetterKind};
pub use rig::{a_translate, b_translate, expand_tensor, gamma_word};

use crate::error::{Error, Result};
use crate::gray::{gray_context, gray_rank};
use crate::perm::Permutation;
use crate::semantics::{eval_ctrl, PermBackend};
use crate::term::{multi_ctrl, CtrlTerm};

/// `log₂ d`, failing unless `d` is a power of two.
pub fn log2_exact(d: usize) -> Result<usize> {
    if d.is_power_of_two() {
        Ok(d.trailing_zeros() as usize)
    } else {
        Err(Error::NotPowerOfTwo(d))
    }
}

/// The permutation computed by a circuit over the NOT gate alone.
pub fn alpha(t: &CtrlTerm) -> Result<Permutation> {
    if let Some(g) = t.generator_names().into_iter().next() {
        return Err(Error::UnknownGenerator(format!("{g} (only `x` is allowed here)")));
    }
    eval_ctrl(t, &PermBackend)
}

/// Indices `i₁ … i_k` with `p = θ_{n,i₁} ∘ … ∘ θ_{n,i_k}`.
pub fn gray_factorization(p: &Permutation) -> Result<(usize, Vec<usize>)> {
    let n = log2_exact(p.size())?;
    let r = gray_rank(n)?;
    // θ_i = r ∘ τ_i ∘ r⁻¹, so factor r⁻¹ ∘ p ∘ r into adjacent transpositions
    let q = Permutation::compose(&r.inverse(), &Permutation::compose(p, &r)?)?;
    Ok((n, q.adjacent_factorization()))
}

/// The multi-controlled NOT realising `θ_{n,i}`.
pub fn theta_circuit(n: usize, i: usize) -> Result<CtrlTerm> {
    let ctx = gray_context(n, i)?;
    multi_ctrl(&ctx.prefix, &ctx.suffix, CtrlTerm::Not)
}

/// Synthesises a permutation of `[2^n]` as a sequence of multi-controlled NOTs.
pub fn beta(p: &Permutation) -> Result<CtrlTerm> {
    let (n, word) = gray_factorization(p)?;
    // the rightmost letter acts first
    let gates = word.iter().rev().map(|&i| theta_circuit(n, i)).collect::<Result<Vec<_>>>()?;
    Ok(CtrlTerm::seq_all(gates).unwrap_or(CtrlTerm::Identity(n)))
}
