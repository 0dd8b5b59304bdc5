//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always shown.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cropkit::gray::{gray_rank, gray_transposition, gray_transposition_inductive};
use cropkit::rewrite::{
    check_proof, euler_circuit, euler_params, search_equiv, Model, ProofScript, Registry, SearchOptions, SearchOutcome,
};
use cropkit::semantics::{
    eval_ctrl, gf2_all_invertible, gf2_random_invertible, BackendKind, ComplexBackend, Override, PermBackend,
};
use cropkit::suites::{bipermutative_suite, control_suite, random_permutation};
use cropkit::term::{parse_ctrl, print_ctrl};
use cropkit::translate::{a_j, alpha, b_j, beta, factor_gl2};
use cropkit::{Error, Permutation};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gray_structure() -> Check {
    let mut cases = 0;
    for n in 1..=8 {
        let r = gray_rank(n).unwrap();
        for i in 0..(1usize << n) - 1 {
            let direct = gray_transposition(n, i).unwrap();
            let inductive = gray_transposition_inductive(n, i).unwrap();
            ensure(inductive == direct, || format!("inductive θ differs at n={n}, i={i}"))?;
            // θ_{n,i} = r_n ∘ τ_i ∘ r_n⁻¹
            let tau = Permutation::adjacent(1 << n, i).unwrap();
            let conj = Permutation::compose(&r, &Permutation::compose(&tau, &r.inverse()).unwrap()).unwrap();
            ensure(conj == direct, || format!("conjugation identity fails at n={n}, i={i}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} transpositions, n ≤ 8"))
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    // Heap's algorithm
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn synthesis_roundtrip() -> Check {
    let mut count = 0;
    let mut bad = None;
    for_each_permutation(8, |images| {
        let p = Permutation::new(images.to_vec()).unwrap();
        if alpha(&beta(&p).unwrap()).unwrap() != p && bad.is_none() {
            bad = Some(p);
        }
        count += 1;
    });
    ensure(bad.is_none(), || format!("roundtrip fails on {:?}", bad.unwrap()))?;
    ensure(count == 40320, || format!("enumerated {count} permutations"))?;
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..1000 {
        let p = random_permutation(16, &mut rng);
        ensure(alpha(&beta(&p).unwrap()).unwrap() == p, || format!("roundtrip fails on {p}"))?;
    }
    Ok("40320 permutations of [8], 1000 random of [16]".into())
}

fn control_soundness() -> Check {
    let mut total = 0;
    for kind in BackendKind::ALL {
        for r in control_suite(kind, 100, 5).map_err(|e| e.to_string())? {
            ensure(r.ok(), || format!("{} on {}: {:?}", r.property, r.backend, r.counterexample))?;
            ensure(r.trials == 100, || format!("{} ran {} trials", r.property, r.trials))?;
            total += r.trials;
        }
    }
    ensure(total == 4 * 8 * 100, || format!("{total} instantiations"))?;
    Ok(format!("rules (a)-(h) x 4 backends x 100 instantiations"))
}

fn appendix_axioms() -> Check {
    let results = bipermutative_suite(BackendKind::Perm, 8, 200, 9).map_err(|e| e.to_string())?;
    let mut names = Vec::new();
    for r in &results {
        ensure(r.ok(), || format!("{}: {:?}", r.property, r.counterexample))?;
        ensure(r.trials == 200, || format!("{} ran {} trials", r.property, r.trials))?;
        names.push(r.property.as_str());
    }
    for needed in ["sum_tensor", "gamma_tensor", "distributor_coherence"] {
        ensure(names.contains(&needed), || format!("{needed} missing"))?;
    }
    Ok(format!("{} at 200 trials each", names.join(", ")))
}

fn derivations_replay() -> Check {
    let mut summary = Vec::new();
    for name in ["sw", "sw_cnot", "cl_example", "conjugation", "mobit_symm"] {
        let s = ProofScript::shipped(name).map_err(|e| e.to_string())?;
        let rep = check_proof(&s, &s.registry().unwrap()).map_err(|e| e.to_string())?;
        ensure(rep.accepted, || format!("{name} rejected: {:?}", rep.error))?;
        let lhs = parse_ctrl(&s.lhs).unwrap();
        let rhs = parse_ctrl(&s.rhs).unwrap();
        for t in &rep.trace {
            let t = parse_ctrl(t).unwrap();
            let kind = [BackendKind::Perm, BackendKind::Gf2]
                .into_iter()
                .find(|k| k.accepts(&t) && k.accepts(&lhs))
                .ok_or_else(|| format!("{name}: no perm/gf2 value for {}", print_ctrl(&t)))?;
            ensure(kind.equal(&lhs, &t, 0.0).unwrap() && kind.equal(&rhs, &t, 0.0).unwrap(), || {
                format!("{name}: intermediate {} differs", print_ctrl(&t))
            })?;
        }
        summary.push(format!("{name} ({})", s.steps.len()));
    }
    Ok(summary.join(", "))
}

fn independence_model() -> Check {
    let mut reg = Registry::new();
    for rule in Registry::control().rules() {
        reg.load_spec(&rule.to_spec(), Some(Model::Independence)).map_err(|e| e.to_string())?;
    }
    let catalog = Registry::base_catalog().unwrap();
    let spec = |n: &str| catalog.iter().find(|s| s.name == n).unwrap().clone();
    for name in ["x_inv", "j_cube", "jxj"] {
        reg.load_spec(&spec(name), Some(Model::Independence)).map_err(|e| format!("{name}: {e}"))?;
    }
    let mobit = spec("mobit");
    match reg.load_spec(&mobit, Some(Model::Independence)) {
        Err(Error::SemanticMismatch { rule, .. }) if rule == "mobit" => {}
        other => return Err(format!("mobit rule loaded as {other:?}")),
    }
    let b = Override::new(PermBackend, "independence").with_value("j", Permutation::identity(2));
    let l = eval_ctrl(&parse_ctrl(&mobit.lhs).unwrap(), &b).unwrap();
    let r = eval_ctrl(&parse_ctrl(&mobit.rhs).unwrap(), &b).unwrap();
    ensure(l == Permutation::tensor_sym(2, 2), || format!("lhs is {l}"))?;
    ensure(r.is_identity(), || format!("rhs is {r}"))?;
    Ok(format!("{} rules verify; mobit rejected (s_2,2 vs id)", reg.len()))
}

fn gf2_factorisation() -> Check {
    let all = gf2_all_invertible(4);
    ensure(all.len() == 20160, || format!("|GL(4,2)| = {}", all.len()))?;
    let mut rng = StdRng::seed_from_u64(8);
    let random: Vec<_> = (0..1000).map(|_| gf2_random_invertible(8, &mut rng)).collect();
    for m in all.iter().chain(&random) {
        let w = factor_gl2(m).map_err(|e| e.to_string())?;
        ensure(&w.matrix().unwrap() == m, || format!("word does not multiply back to {m:?}"))?;
        ensure(&a_j(&b_j(&w).unwrap()).unwrap() == m, || format!("a_j(b_j(w)) differs for {m:?}"))?;
    }
    Ok("20160 elements of GL(4,2), 1000 random of GL(8,2)".into())
}

fn clifford_t_identities() -> Check {
    let cases = [
        ("omega ; omega ; omega ; omega ; omega ; omega ; omega ; omega", "id0"),
        ("v ; v", "x"),
        ("v ; v ; v ; v", "id1"),
        ("s ; v ; s", "v ; s ; v"),
        ("s", "c1[omega ; omega]"),
    ];
    for (l, r) in cases {
        let (l, r) = (parse_ctrl(l).unwrap(), parse_ctrl(r).unwrap());
        ensure(BackendKind::Cyclo.equal(&l, &r, 0.0).unwrap(), || {
            format!("{} != {}", print_ctrl(&l), print_ctrl(&r))
        })?;
    }
    Ok("ω⁸ = 1, V² = X, V⁴ = I, SVS = VSV, S = C¹(ω²)".into())
}

fn euler_extraction() -> Check {
    let b = ComplexBackend::default();
    let mut rng = StdRng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a1, a2) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        let lhs = parse_ctrl(&format!("h ; z({a1}) ; h ; z({a2}) ; h")).unwrap();
        let rhs = euler_circuit(euler_params(a1, a2).map_err(|e| e.to_string())?);
        let d = eval_ctrl(&lhs, &b).unwrap().max_distance(&eval_ctrl(&rhs, &b).unwrap());
        worst = worst.max(d);
    }
    ensure(worst <= 1e-9, || format!("worst distance {worst:e}"))?;
    Ok(format!("1000 pairs, worst distance {worst:.1e}"))
}

fn search_rediscovers() -> Check {
    let reg = Registry::standard();
    let mut summary = Vec::new();
    for (name, depth) in [("cl_example", 4), ("sw", 8)] {
        let s = ProofScript::shipped(name).unwrap();
        let opts = SearchOptions { max_depth: depth, budget: Duration::from_secs(60), ..Default::default() };
        let t = Instant::now();
        let out = search_equiv(&parse_ctrl(&s.lhs).unwrap(), &parse_ctrl(&s.rhs).unwrap(), &reg, &opts);
        match out {
            Ok(SearchOutcome::Found { steps, .. }) => {
                let found = ProofScript { signature: None, lhs: s.lhs.clone(), rhs: s.rhs.clone(), steps };
                let rep = check_proof(&found, &reg).unwrap();
                ensure(rep.accepted, || format!("{name}: search result rejected"))?;
                summary.push(format!("{name} in {} steps ({:.2?})", found.steps.len(), t.elapsed()));
            }
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    Ok(summary.join(", "))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 10] = [
        ("gray structure", Duration::from_secs(5), gray_structure),
        ("alpha/beta roundtrip", Duration::from_secs(30), synthesis_roundtrip),
        ("control-equation soundness", Duration::from_secs(60), control_soundness),
        ("bipermutative axioms", Duration::from_secs(10), appendix_axioms),
        ("derivations replay", Duration::from_secs(5), derivations_replay),
        ("independence model", Duration::from_secs(5), independence_model),
        ("GF(2) factorisation", Duration::from_secs(120), gf2_factorisation),
        ("Clifford+T identities", Duration::from_secs(1), clifford_t_identities),
        ("Euler extraction", Duration::from_secs(10), euler_extraction),
        ("search rediscovers derivations", Duration::from_secs(120), search_rediscovers),
    ];
    let mut failures = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|m| {
            if elapsed <= limit {
                Ok(m)
            } else {
                Err(format!("{m}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(m) => println!("PASS {:>2} {name}: {m} [{elapsed:.2?}]", k + 1),
            Err(m) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {m} [{elapsed:.2?}]", k + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
