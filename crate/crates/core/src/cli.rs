//! The `cropkit` command line.
//!
//! Exit codes: 0 success, 1 checked and false, 2 usage or input error,
//! 3 search budget exhausted.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gray::gray_table;
use crate::perm::Permutation;
use crate::rewrite::{check_proof, search_equiv, ProofScript, Registry, SearchOptions, SearchOutcome};
use crate::semantics::{gf2_from_bits, BackendKind};
use crate::suites::{bipermutative_suite, control_suite};
use crate::term::{parse_ctrl, print_ctrl, CtrlTerm, Signature};
use crate::translate::{b_j, beta, factor_gl2};

#[derive(Parser, Debug)]
#[command(name = "cropkit", version, about = "Controlled circuits, their semantics and their equational theory")]
struct Cli {
    /// Wrap the output in a machine-readable run report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Synthesise a circuit of multi-controlled NOTs from a permutation file.
    Synth {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a circuit (a .crop file or inline text).
    Eval {
        circuit: String,
        #[arg(long, default_value = "perm")]
        backend: BackendKind,
    },
    /// Compare two circuits semantically.
    Equiv {
        a: String,
        b: String,
        /// Defaults to the first backend that knows every generator.
        #[arg(long)]
        backend: Option<BackendKind>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Replay a proof script (a file or the name of a shipped script).
    Check {
        script: String,
        /// Shipped signature whose relations are available; overrides the script's.
        #[arg(long)]
        sig: Option<String>,
    },
    /// Search for a derivation between two circuits.
    Search {
        a: String,
        b: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Time budget in seconds.
        #[arg(long, default_value_t = 60.0)]
        budget: f64,
        #[arg(long)]
        sig: Option<String>,
        #[arg(long)]
        backend: Option<BackendKind>,
    },
    /// Run the bipermutative and control-equation soundness suites.
    Axioms {
        #[arg(long, default_value = "perm")]
        backend: BackendKind,
        /// Objects range over sizes up to 2^max-n.
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the Gray code table on n bits.
    Gray {
        #[arg(long)]
        n: usize,
    },
    /// Factor an invertible GF(2) matrix into Gray letters.
    Factor {
        #[arg(long)]
        gf2: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Success,
    False,
    Error,
    BudgetExhausted,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Success => 0,
            Verdict::False => 1,
            Verdict::Error => 2,
            Verdict::BudgetExhausted => 3,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Counters {
    pub run: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub verdict: Verdict,
    pub counters: Counters,
    pub wall_time_ms: f64,
    pub output: Value,
}

struct Outcome {
    verdict: Verdict,
    counters: Counters,
    text: String,
    output: Value,
}

impl Outcome {
    fn new(ok: bool, run: usize, passed: usize, text: String, output: Value) -> Self {
        Outcome {
            verdict: if ok { Verdict::Success } else { Verdict::False },
            counters: Counters { run, passed },
            text,
            output,
        }
    }
}

#[derive(Default)]
struct Inputs {
    texts: Vec<String>,
}

impl Inputs {
    fn file(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        self.texts.push(text.clone());
        Ok(text)
    }

    /// A path when one exists, otherwise the argument itself.
    fn file_or_text(&mut self, arg: &str) -> Result<String> {
        let p = Path::new(arg);
        if p.is_file() {
            self.file(p)
        } else {
            self.texts.push(arg.to_string());
            Ok(arg.to_string())
        }
    }

    fn circuit(&mut self, arg: &str) -> Result<CtrlTerm> {
        let text = self.file_or_text(arg)?;
        parse_ctrl(&text)
    }

    fn digest(&self, args: &[String]) -> String {
        let mut h = Sha256::new();
        for a in args.iter().skip(1) {
            h.update(a.as_bytes());
            h.update([0]);
        }
        for t in &self.texts {
            h.update(t.as_bytes());
            h.update([0]);
        }
        format!("{:x}", h.finalize())
    }
}

/// Runs the command line `args` (including the program name), writing the
/// result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let name = command_name(&cli.command);
    let result = dispatch(&cli.command, &mut inputs);
    let wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let digest = inputs.digest(args);
    let (verdict, counters, text, output) = match result {
        Ok(o) => (o.verdict, o.counters, o.text, o.output),
        Err(e) => {
            let verdict =
                if matches!(e, Error::BudgetExhausted(_)) { Verdict::BudgetExhausted } else { Verdict::Error };
            if !cli.json {
                let _ = writeln!(err, "error: {e}");
            }
            (verdict, Counters::default(), String::new(), json!({ "error": e.to_string() }))
        }
    };
    if cli.json {
        let report = RunReport {
            command: name.to_string(),
            inputs_digest: digest,
            verdict,
            counters,
            wall_time_ms,
            output,
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else if !text.is_empty() {
        let _ = write!(out, "{text}");
        if !text.ends_with('\n') {
            let _ = writeln!(out);
        }
    }
    verdict.exit_code()
}

/// Entry point of the binary.
pub fn main_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Synth { .. } => "synth",
        Command::Eval { .. } => "eval",
        Command::Equiv { .. } => "equiv",
        Command::Check { .. } => "check",
        Command::Search { .. } => "search",
        Command::Axioms { .. } => "axioms",
        Command::Gray { .. } => "gray",
        Command::Factor { .. } => "factor",
    }
}

fn dispatch(c: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match c {
        Command::Synth { perm, out } => synth(inputs, perm, out.as_deref()),
        Command::Eval { circuit, backend } => eval(inputs, circuit, *backend),
        Command::Equiv { a, b, backend, tol } => equiv(inputs, a, b, *backend, *tol),
        Command::Check { script, sig } => check(inputs, script, sig.as_deref()),
        Command::Search { a, b, depth, budget, sig, backend } => {
            search(inputs, a, b, *depth, *budget, sig.as_deref(), *backend)
        }
        Command::Axioms { backend, max_n, trials, seed } => axioms(*backend, *max_n, *trials, *seed),
        Command::Gray { n } => gray(*n),
        Command::Factor { gf2 } => factor(inputs, gf2),
    }
}

fn synth(inputs: &mut Inputs, perm: &Path, out: Option<&Path>) -> Result<Outcome> {
    let text = inputs.file(perm)?;
    let p: Permutation =
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("permutation file: {e}")))?;
    let t = beta(&p)?;
    let circuit = print_ctrl(&t);
    if let Some(path) = out {
        std::fs::write(path, format!("{circuit}\n"))
            .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
    }
    let gates = t.gate_count();
    let text = format!("{circuit}\ngates: {gates}\n");
    Ok(Outcome::new(true, 1, 1, text, json!({ "circuit": circuit, "gates": gates })))
}

fn eval(inputs: &mut Inputs, circuit: &str, backend: BackendKind) -> Result<Outcome> {
    let t = inputs.circuit(circuit)?;
    let value = backend.eval_json(&t)?;
    let text = serde_json::to_string(&value).expect("serializable");
    Ok(Outcome::new(true, 1, 1, text, json!({ "backend": backend.name(), "value": value })))
}

fn common_backend(a: &CtrlTerm, b: &CtrlTerm) -> Result<BackendKind> {
    BackendKind::ALL
        .into_iter()
        .find(|k| k.accepts(a) && k.accepts(b))
        .ok_or_else(|| Error::Invalid("no backend evaluates both circuits".into()))
}

fn equiv(inputs: &mut Inputs, a: &str, b: &str, backend: Option<BackendKind>, tol: f64) -> Result<Outcome> {
    let (ta, tb) = (inputs.circuit(a)?, inputs.circuit(b)?);
    let kind = match backend {
        Some(k) => k,
        None => common_backend(&ta, &tb)?,
    };
    let (wa, wb) = (ta.wires()?, tb.wires()?);
    if wa != wb {
        return Err(Error::ArityMismatch { path: vec![], left: wa, right: wb });
    }
    let equal = kind.equal(&ta, &tb, tol)?;
    let mut output = json!({ "backend": kind.name(), "equal": equal });
    let text = if equal {
        format!("equivalent on {}\n", kind.name())
    } else {
        let (va, vb) = (kind.eval_json(&ta)?, kind.eval_json(&tb)?);
        let text = format!("not equivalent on {}\nlhs: {va}\nrhs: {vb}\n", kind.name());
        output["lhsValue"] = va;
        output["rhsValue"] = vb;
        text
    };
    Ok(Outcome::new(equal, 1, usize::from(equal), text, output))
}

fn registry_for(sig: Option<&str>) -> Result<Registry> {
    match sig {
        Some(s) => Registry::for_signature(&Signature::shipped(s)?),
        None => Ok(Registry::standard()),
    }
}

fn load_script(inputs: &mut Inputs, arg: &str) -> Result<ProofScript> {
    if Path::new(arg).is_file() {
        ProofScript::from_json(&inputs.file(Path::new(arg))?)
    } else {
        let s = ProofScript::shipped(arg)?;
        inputs.texts.push(s.to_json());
        Ok(s)
    }
}

fn check(inputs: &mut Inputs, script: &str, sig: Option<&str>) -> Result<Outcome> {
    let s = load_script(inputs, script)?;
    let registry = match sig {
        Some(_) => registry_for(sig)?,
        None => s.registry()?,
    };
    let report = check_proof(&s, &registry)?;
    let mut text = String::new();
    for (k, t) in report.trace.iter().enumerate() {
        if k == 0 {
            text.push_str(&format!("    {t}\n"));
        } else {
            let st = &s.steps[k - 1];
            text.push_str(&format!("{k:>3} = {t}    ({} {} {:?})\n", st.rule, st.dir, st.path));
        }
    }
    match (&report.failed_step, &report.error) {
        (Some(k), Some(e)) => text.push_str(&format!("rejected at step {}: {e}\n", k + 1)),
        (None, Some(e)) => text.push_str(&format!("rejected: {e}\n")),
        _ => text.push_str(&format!("accepted ({} steps)\n", s.steps.len())),
    }
    let applied = report.trace.len() - 1;
    let output = serde_json::to_value(&report).expect("serializable");
    Ok(Outcome::new(report.accepted, s.steps.len(), applied, text, output))
}

fn search(
    inputs: &mut Inputs,
    a: &str,
    b: &str,
    depth: usize,
    budget: f64,
    sig: Option<&str>,
    backend: Option<BackendKind>,
) -> Result<Outcome> {
    let (lhs_text, rhs_text) = (inputs.file_or_text(a)?, inputs.file_or_text(b)?);
    let (lhs, rhs) = (parse_ctrl(&lhs_text)?, parse_ctrl(&rhs_text)?);
    let registry = registry_for(sig)?;
    if !budget.is_finite() || budget < 0.0 {
        return Err(Error::Invalid(format!("budget must be a non-negative number of seconds, not {budget}")));
    }
    let opts = SearchOptions { max_depth: depth, budget: Duration::from_secs_f64(budget), backend, ..Default::default() };
    let outcome = search_equiv(&lhs, &rhs, &registry, &opts)?;
    let output = serde_json::to_value(&outcome).expect("serializable");
    Ok(match outcome {
        SearchOutcome::Found { steps, explored } => {
            let script = ProofScript {
                signature: sig.map(str::to_string),
                lhs: print_ctrl(&lhs),
                rhs: print_ctrl(&rhs),
                steps,
            };
            let report = check_proof(&script, &registry)?;
            let text = format!("{}\nfound {} steps, {explored} terms expanded\n", script.to_json(), script.steps.len());
            let output = json!({ "outcome": "found", "explored": explored, "script": script, "accepted": report.accepted });
            Outcome::new(report.accepted, 1, usize::from(report.accepted), text, output)
        }
        SearchOutcome::NotEqual { backend, lhs_value, rhs_value } => {
            let text = format!("not equivalent on {backend}\nlhs: {lhs_value}\nrhs: {rhs_value}\n");
            Outcome::new(false, 1, 0, text, output)
        }
        SearchOutcome::NotFound { explored } => Outcome {
            verdict: Verdict::BudgetExhausted,
            counters: Counters { run: 1, passed: 0 },
            text: format!("no derivation within depth {depth} ({explored} terms expanded)\n"),
            output,
        },
    })
}

fn axioms(backend: BackendKind, max_n: u32, trials: usize, seed: u64) -> Result<Outcome> {
    if max_n > 4 {
        return Err(Error::Capacity(format!("--max-n {max_n} exceeds 4")));
    }
    let max_dim = 1usize << max_n;
    let mut results = bipermutative_suite(backend, max_dim, trials, seed)?;
    results.extend(control_suite(backend, trials, seed)?);
    let mut text = String::new();
    for r in &results {
        let mark = if r.ok() { "ok  " } else { "FAIL" };
        text.push_str(&format!("{mark} {:<24} {:>5}/{:<5} {}\n", r.property, r.passed, r.trials, r.backend));
        if let Some(c) = &r.counterexample {
            text.push_str(&format!("     counterexample: {c}\n"));
        }
    }
    let run: usize = results.iter().map(|r| r.trials).sum();
    let passed: usize = results.iter().map(|r| r.passed).sum();
    let ok = run == passed;
    Ok(Outcome::new(ok, run, passed, text, json!({ "results": results })))
}

fn gray(n: usize) -> Result<Outcome> {
    let rows = gray_table(n)?;
    let w = n.max(6);
    let iw = rows.len().saturating_sub(1).to_string().len().max(4);
    let mut text = format!("{:>iw$}  {:<w$}  {:<w$}  {:>iw$}\n", "i", "binary", "gray", "rank");
    for r in &rows {
        text.push_str(&format!("{:>iw$}  {:<w$}  {:<w$}  {:>iw$}\n", r.index, r.binary, r.gray, r.rank));
    }
    let count = rows.len();
    Ok(Outcome::new(true, count, count, text, json!({ "n": n, "rows": rows })))
}

fn factor(inputs: &mut Inputs, path: &Path) -> Result<Outcome> {
    let text = inputs.file(path)?;
    let rows: Vec<Vec<u8>> =
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("GF(2) matrix file: {e}")))?;
    let m = gf2_from_bits(&rows)?;
    let word = factor_gl2(&m)?;
    let circuit = print_ctrl(&b_j(&word)?);
    let ok = word.matrix()? == m;
    let letters: Value = serde_json::from_str(&word.to_json()).expect("valid json");
    let text = format!("{}\nletters: {}\ncircuit: {circuit}\n", word.to_json(), word.letters.len());
    let output = json!({ "n": word.n, "length": word.letters.len(), "letters": letters, "circuit": circuit });
    Ok(Outcome::new(ok, 1, usize::from(ok), text, output))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("cropkit").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&args, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_inline() {
        let (code, out, _) = call(&["eval", "c1[x]", "--backend", "perm"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"images":[0,1,3,2],"size":4}"#);
        let (code, _, err) = call(&["eval", "z(1.0)", "--backend", "cyclo"]);
        assert_eq!(code, 2);
        assert!(err.contains("unsupported"), "{err}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["eval", "c1[", "--backend", "perm"]).0, 2);
        assert_eq!(call(&["gray"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn equiv_and_check() {
        assert_eq!(call(&["equiv", "c0[x] ; c1[x]", "id1 + x"]).0, 0);
        assert_eq!(call(&["equiv", "c1[x]", "id2"]).0, 1);
        let (code, out, _) = call(&["check", "sw"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("accepted"));
    }

    #[test]
    fn json_reports_are_deterministic() {
        let strip = |s: String| {
            let mut v: Value = serde_json::from_str(&s).unwrap();
            v.as_object_mut().unwrap().remove("wallTimeMs");
            v
        };
        let a = strip(call(&["--json", "axioms", "--max-n", "2", "--trials", "5", "--seed", "4"]).1);
        let b = strip(call(&["--json", "axioms", "--max-n", "2", "--trials", "5", "--seed", "4"]).1);
        assert_eq!(a, b);
        assert_eq!(a["verdict"], "success");
        assert_eq!(a["command"], "axioms");
    }

    #[test]
    fn search_gives_up_with_code_3() {
        let (code, _, _) = call(&["search", "c1[x + id1] ; c1[id1 + x]", "c1[id1 + x] ; c1[x + id1]", "--depth", "1"]);
        assert_eq!(code, 3);
    }
}
