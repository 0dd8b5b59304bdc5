//! Evaluation of circuits into permutations, GF(2) matrices, exact
//! cyclotomic matrices and complex matrices.
//!
//! A positive control selects the second diagonal block:
//! `c1[f]` is `I ⊕ F` and `c0[f]` is `F ⊕ I`.

mod backends;
mod cyclo;
mod gf2;
mod matrix;

pub use backends::{
    builtin_complex, builtin_cyclo, BackendKind, ComplexBackend, CycloBackend, Gf2Backend, Override, PermBackend,
};
pub use cyclo::Cyclo;
pub use gf2::{
    gf2_all_invertible, gf2_from_bits, gf2_is_invertible, gf2_random_invertible, gf2_rank, gf2_to_bits, j_matrix,
    Gf2, Gf2Matrix,
};
pub use matrix::{Conjugate, Matrix, Ring};

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::term::{CtrlTerm, Polarity, SumTerm};

/// A model of controlled circuits.
pub trait Backend {
    type Value: Clone + Debug;

    fn name(&self) -> &'static str;

    /// Value of generator `name` with `params`, on `2^wires` dimensions.
    fn gen(&self, name: &str, params: &[f64]) -> Result<Self::Value>;
    fn identity(&self, dim: usize) -> Self::Value;
    /// Diagram order: `first` then `then`.
    fn seq(&self, first: &Self::Value, then: &Self::Value) -> Result<Self::Value>;
    fn direct_sum(&self, top: &Self::Value, bottom: &Self::Value) -> Self::Value;
    fn kron(&self, top: &Self::Value, bottom: &Self::Value) -> Self::Value;
    fn from_perm(&self, p: &Permutation) -> Self::Value;
    fn dim(&self, v: &Self::Value) -> usize;
    fn equal(&self, a: &Self::Value, b: &Self::Value) -> bool;
    fn supports_params(&self) -> bool;
    /// Largest number of wires this backend will evaluate.
    fn max_wires(&self) -> usize;
    fn to_json(&self, v: &Self::Value) -> serde_json::Value;
}

fn dim_of_wires(b: &impl Backend, wires: usize) -> Result<usize> {
    if wires > b.max_wires() {
        return Err(Error::Capacity(format!(
            "{wires} wires exceeds the {} backend limit of {}",
            b.name(),
            b.max_wires()
        )));
    }
    Ok(1 << wires)
}

fn eval_gen<B: Backend>(b: &B, name: &str, wires: usize, params: &[f64]) -> Result<B::Value> {
    if !params.is_empty() && !b.supports_params() {
        return Err(Error::ParamsUnsupported(name.to_string(), b.name()));
    }
    let v = b.gen(name, params)?;
    let expected = dim_of_wires(b, wires)?;
    if b.dim(&v) != expected {
        return Err(Error::Invalid(format!(
            "generator `{name}` has dimension {} on {}, expected {expected}",
            b.dim(&v),
            b.name()
        )));
    }
    Ok(v)
}

/// Evaluates a controlled circuit.
pub fn eval_ctrl<B: Backend>(t: &CtrlTerm, b: &B) -> Result<B::Value> {
    let wires = t.wires()?;
    dim_of_wires(b, wires)?;
    eval_ctrl_unchecked(t, b)
}

fn eval_ctrl_unchecked<B: Backend>(t: &CtrlTerm, b: &B) -> Result<B::Value> {
    Ok(match t {
        CtrlTerm::Identity(n) => b.identity(1 << n),
        CtrlTerm::Gen(g) => eval_gen(b, &g.name, g.wires, &g.params)?,
        CtrlTerm::Not => eval_gen(b, "x", 1, &[])?,
        CtrlTerm::Swap(m, n) => b.from_perm(&Permutation::tensor_sym(1 << m, 1 << n)),
        CtrlTerm::Seq(f, g) => {
            let mut acc = eval_ctrl_unchecked(f, b)?;
            let mut rest = &**g;
            while let CtrlTerm::Seq(f, g) = rest {
                acc = b.seq(&acc, &eval_ctrl_unchecked(f, b)?)?;
                rest = g;
            }
            b.seq(&acc, &eval_ctrl_unchecked(rest, b)?)?
        }
        CtrlTerm::Par(f, g) => b.kron(&eval_ctrl_unchecked(f, b)?, &eval_ctrl_unchecked(g, b)?),
        CtrlTerm::Ctrl(p, f) => {
            let v = eval_ctrl_unchecked(f, b)?;
            let id = b.identity(b.dim(&v));
            match p {
                Polarity::Positive => b.direct_sum(&id, &v),
                Polarity::Negative => b.direct_sum(&v, &id),
            }
        }
    })
}

/// Evaluates a direct-sum circuit.
pub fn eval_sum<B: Backend>(s: &SumTerm, b: &B) -> Result<B::Value> {
    let d = s.dim()?;
    if d > 1 << b.max_wires() {
        return Err(Error::Capacity(format!("dimension {d} exceeds the {} backend limit", b.name())));
    }
    eval_sum_unchecked(s, b)
}

fn eval_sum_unchecked<B: Backend>(s: &SumTerm, b: &B) -> Result<B::Value> {
    Ok(match s {
        SumTerm::IdentityD(d) => b.identity(*d),
        SumTerm::GenTilde(g) => eval_gen(b, &g.name, g.wires, &g.params)?,
        SumTerm::Gamma(m, n) => b.from_perm(&Permutation::gamma(*m, *n)),
        SumTerm::SeqS(f, g) => b.seq(&eval_sum_unchecked(f, b)?, &eval_sum_unchecked(g, b)?)?,
        SumTerm::DirectSum(f, g) => b.direct_sum(&eval_sum_unchecked(f, b)?, &eval_sum_unchecked(g, b)?),
    })
}

/// Whether two circuits have equal value on `b`.
pub fn equal_on<B: Backend>(b: &B, lhs: &CtrlTerm, rhs: &CtrlTerm) -> Result<bool> {
    Ok(b.equal(&eval_ctrl(lhs, b)?, &eval_ctrl(rhs, b)?))
}
