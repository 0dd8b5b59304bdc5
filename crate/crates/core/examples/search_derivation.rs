//! Look for a derivation between two circuits, or a semantic counterexample.

use std::time::Duration;

use cropkit::rewrite::{search_equiv, Registry, SearchOptions, SearchOutcome};
use cropkit::term::parse_ctrl;

fn main() -> cropkit::Result<()> {
    let reg = Registry::standard();
    let opts = SearchOptions { max_depth: 8, budget: Duration::from_secs(30), ..Default::default() };
    let pairs = [
        ("c1[x + id1] ; c1[id1 + x]", "c1[id1 + x] ; c1[x + id1]"),
        ("c1[id1 + j] ; (id1 + c1[j])", "c0[c1[j]] ; c1[c0[j]] ; c1[c1[j ; j]]"),
        ("c1[x]", "c0[x]"),
    ];
    for (a, b) in pairs {
        println!("{a}  ~  {b}");
        match search_equiv(&parse_ctrl(a)?, &parse_ctrl(b)?, &reg, &opts)? {
            SearchOutcome::Found { steps, explored } => {
                println!("  found after expanding {explored} terms");
                for s in steps {
                    println!("    ({}) {} at {:?}", s.rule, s.dir, s.path);
                }
            }
            SearchOutcome::NotEqual { backend, lhs_value, rhs_value } => {
                println!("  different on {backend}: {lhs_value} vs {rhs_value}")
            }
            SearchOutcome::NotFound { explored } => println!("  nothing within depth ({explored} terms)"),
        }
    }
    Ok(())
}
