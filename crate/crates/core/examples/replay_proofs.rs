//! Replay the shipped derivations and print their traces.

use cropkit::rewrite::{check_proof, ProofScript};

fn main() -> cropkit::Result<()> {
    for name in ProofScript::shipped_names() {
        let script = ProofScript::shipped(name)?;
        let report = check_proof(&script, &script.registry()?)?;
        println!("{name}: accepted = {}", report.accepted);
        for (k, t) in report.trace.iter().enumerate() {
            let label = match k {
                0 => String::new(),
                _ => {
                    let s = &script.steps[k - 1];
                    format!("({} {})", s.rule, s.dir)
                }
            };
            println!("  {label:>14}  {t}");
        }
    }
    Ok(())
}
