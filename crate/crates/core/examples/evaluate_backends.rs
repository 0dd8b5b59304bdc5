//! One circuit language, four models: permutations, GF(2), exact cyclotomic
//! matrices and floating-point unitaries.

use cropkit::semantics::BackendKind;
use cropkit::term::parse_ctrl;

fn main() -> cropkit::Result<()> {
    let circuits = ["c1[x]", "c1[x] ; swap 1 1", "c1[j]", "v ; v", "c1[omega ; omega]", "h ; z(0.5) ; h"];
    for text in circuits {
        let t = parse_ctrl(text)?;
        println!("{text}");
        for kind in BackendKind::ALL {
            if kind.accepts(&t) {
                println!("  {:<8} {}", kind.name(), kind.eval_json(&t)?);
            }
        }
    }

    let lhs = parse_ctrl("v ; v")?;
    let rhs = parse_ctrl("x")?;
    println!("v ; v == x exactly: {}", BackendKind::Cyclo.equal(&lhs, &rhs, 0.0)?);
    Ok(())
}
