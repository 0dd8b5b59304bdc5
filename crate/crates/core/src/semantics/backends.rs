//! The four concrete backends and a wrapper that reinterprets generators.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::json;

use super::cyclo::Cyclo;
use super::gf2::{gf2_to_bits, j_matrix, Gf2Matrix};
use super::matrix::{Matrix, Ring};
use super::{eval_ctrl, eval_sum, Backend};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::term::{CtrlTerm, Signature, SumTerm};

const MATRIX_MAX_WIRES: usize = 10;

/// Permutations; only the NOT gate is a generator.
#[derive(Clone, Copy, Debug, Default)]
pub struct PermBackend;

impl Backend for PermBackend {
    type Value = Permutation;

    fn name(&self) -> &'static str {
        "perm"
    }

    fn gen(&self, name: &str, _params: &[f64]) -> Result<Permutation> {
        match name {
            "x" => Ok(Permutation::gamma(1, 1)),
            _ => Err(Error::UnknownGenerator(format!("{name} (perm backend has no `{name}`)"))),
        }
    }

    fn identity(&self, dim: usize) -> Permutation {
        Permutation::identity(dim)
    }

    fn seq(&self, first: &Permutation, then: &Permutation) -> Result<Permutation> {
        first.then(then)
    }

    fn direct_sum(&self, top: &Permutation, bottom: &Permutation) -> Permutation {
        Permutation::direct_sum(top, bottom)
    }

    fn kron(&self, top: &Permutation, bottom: &Permutation) -> Permutation {
        Permutation::tensor(top, bottom)
    }

    fn from_perm(&self, p: &Permutation) -> Permutation {
        p.clone()
    }

    fn dim(&self, v: &Permutation) -> usize {
        v.size()
    }

    fn equal(&self, a: &Permutation, b: &Permutation) -> bool {
        a == b
    }

    fn supports_params(&self) -> bool {
        false
    }

    fn max_wires(&self) -> usize {
        crate::gray::MAX_BITS
    }

    fn to_json(&self, v: &Permutation) -> serde_json::Value {
        serde_json::to_value(v).expect("serializable")
    }
}

fn seq_matrix<T: Ring>(first: &Matrix<T>, then: &Matrix<T>) -> Result<Matrix<T>> {
    then.mul(first)
}

/// Invertible matrices over the two-element field; generators `x` and `j`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gf2Backend;

impl Backend for Gf2Backend {
    type Value = Gf2Matrix;

    fn name(&self) -> &'static str {
        "gf2"
    }

    fn gen(&self, name: &str, _params: &[f64]) -> Result<Gf2Matrix> {
        match name {
            "x" => Ok(Matrix::from_perm(&Permutation::gamma(1, 1))),
            "j" => Ok(j_matrix()),
            _ => Err(Error::UnknownGenerator(format!("{name} (gf2 backend has no `{name}`)"))),
        }
    }

    fn identity(&self, dim: usize) -> Gf2Matrix {
        Matrix::identity(dim)
    }

    fn seq(&self, first: &Gf2Matrix, then: &Gf2Matrix) -> Result<Gf2Matrix> {
        seq_matrix(first, then)
    }

    fn direct_sum(&self, top: &Gf2Matrix, bottom: &Gf2Matrix) -> Gf2Matrix {
        top.direct_sum(bottom)
    }

    fn kron(&self, top: &Gf2Matrix, bottom: &Gf2Matrix) -> Gf2Matrix {
        top.kron(bottom)
    }

    fn from_perm(&self, p: &Permutation) -> Gf2Matrix {
        Matrix::from_perm(p)
    }

    fn dim(&self, v: &Gf2Matrix) -> usize {
        v.dim()
    }

    fn equal(&self, a: &Gf2Matrix, b: &Gf2Matrix) -> bool {
        a == b
    }

    fn supports_params(&self) -> bool {
        false
    }

    fn max_wires(&self) -> usize {
        MATRIX_MAX_WIRES
    }

    fn to_json(&self, v: &Gf2Matrix) -> serde_json::Value {
        json!(gf2_to_bits(v))
    }
}

/// Exact values of the discrete gates over `ℤ[ω, ½]`.
pub fn builtin_cyclo(name: &str) -> Option<Matrix<Cyclo>> {
    let int = Cyclo::integer;
    let half = Cyclo::new([1, 0, 0, 0], 1);
    let i = Cyclo::i();
    let r = Cyclo::inv_sqrt2();
    let h = || Matrix::from_rows(vec![vec![r, r], vec![r, r.neg()]]).expect("square");
    Some(match name {
        "x" => Matrix::from_perm(&Permutation::gamma(1, 1)),
        "v" => {
            let p = half.mul(&int(1).add(&i));
            let m = half.mul(&int(1).add(&i.neg()));
            Matrix::from_rows(vec![vec![p, m], vec![m, p]]).expect("square")
        }
        "s" => Matrix::diagonal(vec![int(1), i]),
        "t" => Matrix::diagonal(vec![int(1), Cyclo::omega_pow(1)]),
        "h" => h(),
        // (1 - i)/√2 = ω⁷ = -ω³
        "k" => h().map(|e| e.mul(&Cyclo::omega_pow(7))),
        "omega" => Matrix::scalar(Cyclo::omega_pow(1)),
        _ => return None,
    })
}

/// Exact dyadic-cyclotomic matrices; parameterised gates are rejected.
#[derive(Clone, Copy, Debug, Default)]
pub struct CycloBackend;

impl Backend for CycloBackend {
    type Value = Matrix<Cyclo>;

    fn name(&self) -> &'static str {
        "cyclo"
    }

    fn gen(&self, name: &str, _params: &[f64]) -> Result<Matrix<Cyclo>> {
        builtin_cyclo(name).ok_or_else(|| Error::UnknownGenerator(format!("{name} (cyclo backend has no `{name}`)")))
    }

    fn identity(&self, dim: usize) -> Matrix<Cyclo> {
        Matrix::identity(dim)
    }

    fn seq(&self, first: &Matrix<Cyclo>, then: &Matrix<Cyclo>) -> Result<Matrix<Cyclo>> {
        seq_matrix(first, then)
    }

    fn direct_sum(&self, top: &Matrix<Cyclo>, bottom: &Matrix<Cyclo>) -> Matrix<Cyclo> {
        top.direct_sum(bottom)
    }

    fn kron(&self, top: &Matrix<Cyclo>, bottom: &Matrix<Cyclo>) -> Matrix<Cyclo> {
        top.kron(bottom)
    }

    fn from_perm(&self, p: &Permutation) -> Matrix<Cyclo> {
        Matrix::from_perm(p)
    }

    fn dim(&self, v: &Matrix<Cyclo>) -> usize {
        v.dim()
    }

    fn equal(&self, a: &Matrix<Cyclo>, b: &Matrix<Cyclo>) -> bool {
        a == b
    }

    fn supports_params(&self) -> bool {
        false
    }

    fn max_wires(&self) -> usize {
        MATRIX_MAX_WIRES
    }

    fn to_json(&self, v: &Matrix<Cyclo>) -> serde_json::Value {
        let rows: Vec<Vec<serde_json::Value>> = v
            .rows()
            .map(|r| r.iter().map(|e| json!({"coeffs": e.coeffs(), "log2den": e.log2den()})).collect())
            .collect();
        json!(rows)
    }
}

/// Complex values of every builtin gate, including `z(α)` and `phase(α)`.
pub fn builtin_complex(name: &str, params: &[f64]) -> Option<Matrix<Complex64>> {
    let param = |k: usize| params.get(k).copied();
    match name {
        "z" => Some(Matrix::diagonal(vec![Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, param(0)?)])),
        "phase" => Some(Matrix::scalar(Complex64::from_polar(1.0, param(0)?))),
        _ => builtin_cyclo(name).map(|m| m.map(Cyclo::to_complex)),
    }
}

/// Complex matrices compared entrywise within a tolerance.
#[derive(Clone, Copy, Debug)]
pub struct ComplexBackend {
    pub tolerance: f64,
}

impl Default for ComplexBackend {
    fn default() -> Self {
        ComplexBackend { tolerance: 1e-9 }
    }
}

impl ComplexBackend {
    pub fn with_tolerance(tolerance: f64) -> Self {
        ComplexBackend { tolerance }
    }
}

impl Backend for ComplexBackend {
    type Value = Matrix<Complex64>;

    fn name(&self) -> &'static str {
        "complex"
    }

    fn gen(&self, name: &str, params: &[f64]) -> Result<Matrix<Complex64>> {
        builtin_complex(name, params)
            .ok_or_else(|| Error::UnknownGenerator(format!("{name} (complex backend has no `{name}`)")))
    }

    fn identity(&self, dim: usize) -> Matrix<Complex64> {
        Matrix::identity(dim)
    }

    fn seq(&self, first: &Matrix<Complex64>, then: &Matrix<Complex64>) -> Result<Matrix<Complex64>> {
        seq_matrix(first, then)
    }

    fn direct_sum(&self, top: &Matrix<Complex64>, bottom: &Matrix<Complex64>) -> Matrix<Complex64> {
        top.direct_sum(bottom)
    }

    fn kron(&self, top: &Matrix<Complex64>, bottom: &Matrix<Complex64>) -> Matrix<Complex64> {
        top.kron(bottom)
    }

    fn from_perm(&self, p: &Permutation) -> Matrix<Complex64> {
        Matrix::from_perm(p)
    }

    fn dim(&self, v: &Matrix<Complex64>) -> usize {
        v.dim()
    }

    fn equal(&self, a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> bool {
        a.max_distance(b) <= self.tolerance
    }

    fn supports_params(&self) -> bool {
        true
    }

    fn max_wires(&self) -> usize {
        MATRIX_MAX_WIRES
    }

    fn to_json(&self, v: &Matrix<Complex64>) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = v.rows().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
        json!(rows)
    }
}

/// A backend with some generators given other values, e.g. the model sending
/// `j` to the identity permutation.
#[derive(Clone, Debug)]
pub struct Override<B: Backend> {
    inner: B,
    label: &'static str,
    values: BTreeMap<String, B::Value>,
    aliases: BTreeMap<String, String>,
}

impl<B: Backend> Override<B> {
    pub fn new(inner: B, label: &'static str) -> Self {
        Override { inner, label, values: BTreeMap::new(), aliases: BTreeMap::new() }
    }

    pub fn with_value(mut self, name: &str, value: B::Value) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    /// Evaluate `name` as the inner backend's builtin `key`.
    pub fn with_alias(mut self, name: &str, key: &str) -> Self {
        self.aliases.insert(name.to_string(), key.to_string());
        self
    }

    /// Aliases from a signature's `backendKeys` for this backend.
    pub fn from_signature(inner: B, sig: &Signature) -> Self {
        let backend = inner.name();
        let mut out = Override::new(inner, backend);
        for g in &sig.generators {
            let key = sig.backend_key(&g.name, backend);
            if key != g.name {
                out = out.with_alias(&g.name, key);
            }
        }
        out
    }
}

impl<B: Backend> Backend for Override<B> {
    type Value = B::Value;

    fn name(&self) -> &'static str {
        self.label
    }

    fn gen(&self, name: &str, params: &[f64]) -> Result<B::Value> {
        if let Some(v) = self.values.get(name) {
            return Ok(v.clone());
        }
        let key = self.aliases.get(name).map(String::as_str).unwrap_or(name);
        self.inner.gen(key, params)
    }

    fn identity(&self, dim: usize) -> B::Value {
        self.inner.identity(dim)
    }

    fn seq(&self, first: &B::Value, then: &B::Value) -> Result<B::Value> {
        self.inner.seq(first, then)
    }

    fn direct_sum(&self, top: &B::Value, bottom: &B::Value) -> B::Value {
        self.inner.direct_sum(top, bottom)
    }

    fn kron(&self, top: &B::Value, bottom: &B::Value) -> B::Value {
        self.inner.kron(top, bottom)
    }

    fn from_perm(&self, p: &Permutation) -> B::Value {
        self.inner.from_perm(p)
    }

    fn dim(&self, v: &B::Value) -> usize {
        self.inner.dim(v)
    }

    fn equal(&self, a: &B::Value, b: &B::Value) -> bool {
        self.inner.equal(a, b)
    }

    fn supports_params(&self) -> bool {
        self.inner.supports_params()
    }

    fn max_wires(&self) -> usize {
        self.inner.max_wires()
    }

    fn to_json(&self, v: &B::Value) -> serde_json::Value {
        self.inner.to_json(v)
    }
}

/// Run-time choice of backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackendKind {
    Perm,
    Gf2,
    Cyclo,
    Complex,
}

impl BackendKind {
    pub const ALL: [BackendKind; 4] = [BackendKind::Perm, BackendKind::Gf2, BackendKind::Cyclo, BackendKind::Complex];

    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Perm => "perm",
            BackendKind::Gf2 => "gf2",
            BackendKind::Cyclo => "cyclo",
            BackendKind::Complex => "complex",
        }
    }

    /// Builtin generator names this backend can evaluate, other than `x`.
    pub fn generators(self) -> &'static [&'static str] {
        match self {
            BackendKind::Perm => &[],
            BackendKind::Gf2 => &["j"],
            BackendKind::Cyclo => &["v", "s", "h", "k", "t", "omega"],
            BackendKind::Complex => &["v", "s", "h", "k", "t", "omega", "z", "phase"],
        }
    }

    /// Whether every generator of `t` is known to this backend.
    pub fn accepts(self, t: &CtrlTerm) -> bool {
        t.generator_names().iter().all(|g| self.generators().contains(&g.as_str()))
            && (!t.has_params() || self == BackendKind::Complex)
    }

    /// Equality of two circuits, with `tolerance` used by the complex backend.
    pub fn equal(self, lhs: &CtrlTerm, rhs: &CtrlTerm, tolerance: f64) -> Result<bool> {
        match self {
            BackendKind::Perm => super::equal_on(&PermBackend, lhs, rhs),
            BackendKind::Gf2 => super::equal_on(&Gf2Backend, lhs, rhs),
            BackendKind::Cyclo => super::equal_on(&CycloBackend, lhs, rhs),
            BackendKind::Complex => super::equal_on(&ComplexBackend::with_tolerance(tolerance), lhs, rhs),
        }
    }

    pub fn eval_json(self, t: &CtrlTerm) -> Result<serde_json::Value> {
        Ok(match self {
            BackendKind::Perm => PermBackend.to_json(&eval_ctrl(t, &PermBackend)?),
            BackendKind::Gf2 => Gf2Backend.to_json(&eval_ctrl(t, &Gf2Backend)?),
            BackendKind::Cyclo => CycloBackend.to_json(&eval_ctrl(t, &CycloBackend)?),
            BackendKind::Complex => {
                let b = ComplexBackend::default();
                b.to_json(&eval_ctrl(t, &b)?)
            }
        })
    }

    pub fn eval_sum_json(self, s: &SumTerm) -> Result<serde_json::Value> {
        Ok(match self {
            BackendKind::Perm => PermBackend.to_json(&eval_sum(s, &PermBackend)?),
            BackendKind::Gf2 => Gf2Backend.to_json(&eval_sum(s, &Gf2Backend)?),
            BackendKind::Cyclo => CycloBackend.to_json(&eval_sum(s, &CycloBackend)?),
            BackendKind::Complex => {
                let b = ComplexBackend::default();
                b.to_json(&eval_sum(s, &b)?)
            }
        })
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BackendKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown backend `{s}` (expected perm, gf2, cyclo or complex)")))
    }
}
