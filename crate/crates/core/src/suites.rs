//! Randomised soundness suites: the bipermutative axioms and the
//! Kronecker-from-sums identity on any backend, and the control equations on
//! random instantiations.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::Result;
use crate::perm::Permutation;
use crate::rewrite::{Model, Registry};
use crate::semantics::{
    gf2_random_invertible, Backend, BackendKind, ComplexBackend, Cyclo, CycloBackend, Gf2Backend, Matrix, PermBackend,
};
use crate::term::print_ctrl;

/// Outcome of one property over many random trials.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteResult {
    pub property: String,
    pub backend: String,
    pub trials: usize,
    pub passed: usize,
    /// Description of the first failing trial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::new(images).expect("a shuffle is a permutation")
}

/// Backends that can draw random invertible values of any dimension.
pub trait Sample: Backend {
    fn sample(&self, dim: usize, rng: &mut StdRng) -> Self::Value;
}

impl Sample for PermBackend {
    fn sample(&self, dim: usize, rng: &mut StdRng) -> Permutation {
        random_permutation(dim, rng)
    }
}

impl Sample for Gf2Backend {
    fn sample(&self, dim: usize, rng: &mut StdRng) -> Self::Value {
        gf2_random_invertible(dim, rng)
    }
}

impl Sample for CycloBackend {
    /// A random monomial matrix with powers of ω on the diagonal.
    fn sample(&self, dim: usize, rng: &mut StdRng) -> Matrix<Cyclo> {
        let p = Matrix::from_perm(&random_permutation(dim, rng));
        let d = Matrix::diagonal((0..dim).map(|_| Cyclo::omega_pow(rng.gen_range(0..8))).collect());
        d.mul(&p).expect("same size")
    }
}

impl Sample for ComplexBackend {
    fn sample(&self, dim: usize, rng: &mut StdRng) -> Matrix<Complex64> {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
            .collect();
        Matrix::from_rows(rows).expect("square")
    }
}

struct Tally {
    property: &'static str,
    backend: &'static str,
    trials: usize,
    passed: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            property: self.property.to_string(),
            backend: self.backend.to_string(),
            trials: self.trials,
            passed: self.passed,
            counterexample: self.counterexample,
        }
    }
}

fn tally(property: &'static str, backend: &'static str) -> Tally {
    Tally { property, backend, trials: 0, passed: 0, counterexample: None }
}

fn sym<B: Backend>(b: &B, m: usize, n: usize) -> B::Value {
    b.from_perm(&Permutation::gamma(m, n))
}

fn tsym<B: Backend>(b: &B, m: usize, n: usize) -> B::Value {
    b.from_perm(&Permutation::tensor_sym(m, n))
}

fn ident<B: Backend>(b: &B, n: usize) -> B::Value {
    b.identity(n)
}

fn sum_all<B: Backend>(b: &B, items: &[B::Value]) -> B::Value {
    let mut it = items.iter();
    let first = it.next().expect("non-empty").clone();
    it.fold(first, |acc, v| b.direct_sum(&acc, v))
}

fn copies<B: Backend>(b: &B, f: &B::Value, n: usize) -> B::Value {
    sum_all(b, &vec![f.clone(); n])
}

/// `(f ⊕ g) ⊗ h = (f ⊗ h) ⊕ (g ⊗ h)`.
pub fn check_sum_tensor<B: Sample>(b: &B, max_dim: usize, trials: usize, rng: &mut StdRng) -> Result<SuiteResult> {
    let mut t = tally("sum_tensor", b.name());
    for _ in 0..trials {
        let (a, c, d) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
        let (f, g, h) = (b.sample(a, rng), b.sample(c, rng), b.sample(d, rng));
        let lhs = b.kron(&b.direct_sum(&f, &g), &h);
        let rhs = b.direct_sum(&b.kron(&f, &h), &b.kron(&g, &h));
        t.record(b.equal(&lhs, &rhs), || format!("dims ({a}, {c}, {d})"));
    }
    Ok(t.finish())
}

/// `γ_{A,B} ⊗ id_C = γ_{AC,BC}`.
pub fn check_gamma_tensor<B: Sample>(b: &B, max_dim: usize, trials: usize, rng: &mut StdRng) -> Result<SuiteResult> {
    let mut t = tally("gamma_tensor", b.name());
    for _ in 0..trials {
        let (a, c, d) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
        let lhs = b.kron(&sym(b, a, c), &ident(b, d));
        let rhs = sym(b, a * d, c * d);
        t.record(b.equal(&lhs, &rhs), || format!("objects ({a}, {c}, {d})"));
    }
    Ok(t.finish())
}

/// `δ_{A,B,C} = s_{A,B⊕C} ; (s_{B,A} ⊕ s_{C,A})` as a value of `b`.
fn distributor<B: Backend>(b: &B, a: usize, n: usize, k: usize) -> Result<B::Value> {
    b.seq(&tsym(b, a, n + k), &b.direct_sum(&tsym(b, n, a), &tsym(b, k, a)))
}

/// The coherence square relating `δ` on `(A ⊕ B) ⊗ (C ⊕ D)` to the
/// componentwise distributors followed by `id ⊕ γ ⊕ id`.
pub fn check_distributor_coherence<B: Sample>(
    b: &B,
    max_dim: usize,
    trials: usize,
    rng: &mut StdRng,
) -> Result<SuiteResult> {
    let mut t = tally("distributor_coherence", b.name());
    for _ in 0..trials {
        let [a, bb, c, d] = [(); 4].map(|_| rng.gen_range(1..=max_dim));
        let lhs = distributor(b, a + bb, c, d)?;
        let split = b.direct_sum(&distributor(b, a, c, d)?, &distributor(b, bb, c, d)?);
        let middle = sum_all(b, &[ident(b, a * c), sym(b, a * d, bb * c), ident(b, bb * d)]);
        let rhs = b.seq(&split, &middle)?;
        t.record(b.equal(&lhs, &rhs), || format!("objects ({a}, {bb}, {c}, {d})"));
    }
    Ok(t.finish())
}

/// `f ⊗ g = (g ⊕ … ⊕ g) ; s_{m,n} ; (f ⊕ … ⊕ f) ; s_{n,m}` for `f : m → m`, `g : n → n`.
pub fn check_kronecker_from_sums<B: Sample>(
    b: &B,
    max_dim: usize,
    trials: usize,
    rng: &mut StdRng,
) -> Result<SuiteResult> {
    let mut t = tally("kronecker_from_sums", b.name());
    for _ in 0..trials {
        let (m, n) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
        let (f, g) = (b.sample(m, rng), b.sample(n, rng));
        let lhs = b.kron(&f, &g);
        let mut rhs = copies(b, &g, m);
        for step in [tsym(b, m, n), copies(b, &f, n), tsym(b, n, m)] {
            rhs = b.seq(&rhs, &step)?;
        }
        t.record(b.equal(&lhs, &rhs), || format!("dims ({m}, {n})"));
    }
    Ok(t.finish())
}

fn bipermutative_on<B: Sample>(b: &B, max_dim: usize, trials: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    let mut rng = StdRng::seed_from_u64(seed);
    Ok(vec![
        check_sum_tensor(b, max_dim, trials, &mut rng)?,
        check_gamma_tensor(b, max_dim, trials, &mut rng)?,
        check_distributor_coherence(b, max_dim, trials, &mut rng)?,
        check_kronecker_from_sums(b, max_dim, trials, &mut rng)?,
    ])
}

/// The bipermutative axioms and the Kronecker-from-sums identity, each over
/// `trials` random draws with objects of size at most `max_dim`.
pub fn bipermutative_suite(kind: BackendKind, max_dim: usize, trials: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    match kind {
        BackendKind::Perm => bipermutative_on(&PermBackend, max_dim, trials, seed),
        BackendKind::Gf2 => bipermutative_on(&Gf2Backend, max_dim, trials, seed),
        BackendKind::Cyclo => bipermutative_on(&CycloBackend, max_dim, trials, seed),
        BackendKind::Complex => bipermutative_on(&ComplexBackend::with_tolerance(1e-9), max_dim, trials, seed),
    }
}

/// Each control equation on `trials` random instantiations in `kind`.
pub fn control_suite(kind: BackendKind, trials: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    let model = Model::Backend(kind);
    let registry = Registry::control();
    let mut out = Vec::new();
    for (k, rule) in registry.rules().enumerate() {
        let mut rng = StdRng::seed_from_u64(seed.wrapping_add(k as u64));
        let mut t = tally("", kind.name());
        for _ in 0..trials {
            let (l, r) = rule.random_instance(&mut rng, model.generators())?;
            let ok = model.equal(&l, &r)?;
            t.record(ok, || format!("{}  vs  {}", print_ctrl(&l), print_ctrl(&r)));
        }
        let mut result = t.finish();
        result.property = format!("control_{}", rule.name);
        out.push(result);
    }
    Ok(out)
}
