//! Rule files are checked on random instances before they are accepted.

use cropkit::rewrite::{Model, Registry};
use cropkit::term::Signature;

fn main() -> cropkit::Result<()> {
    for name in Signature::shipped_names() {
        let reg = Registry::for_signature(&Signature::shipped(name)?)?;
        println!("{name}: {} rules", reg.len());
    }

    // a mistranscribed rule is refused
    let mut reg = Registry::standard();
    let bad = r#"{"name": "bad", "backend": "perm", "lhs": "c1[x] ; swap 1 1", "rhs": "swap 1 1 ; c1[x]"}"#;
    println!("{}", reg.load_json(bad, None).unwrap_err());

    // with j read as the identity, the mobit rule fails: one side is a swap
    let mobit = Registry::base_catalog()?.into_iter().find(|s| s.name == "mobit").expect("shipped");
    println!("{}", reg.load_spec(&mobit, Some(Model::Independence)).unwrap_err());
    Ok(())
}
