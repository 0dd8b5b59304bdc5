//! Randomised checks of the bipermutative axioms and the control equations.

use cropkit::semantics::BackendKind;
use cropkit::suites::{bipermutative_suite, control_suite};

fn main() -> cropkit::Result<()> {
    for kind in BackendKind::ALL {
        let mut results = bipermutative_suite(kind, 6, 50, 42)?;
        results.extend(control_suite(kind, 50, 42)?);
        for r in results {
            println!("{:<8} {:<24} {}/{}", r.backend, r.property, r.passed, r.trials);
        }
    }
    Ok(())
}
