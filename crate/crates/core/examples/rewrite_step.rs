//! Single rewrites with the control equations.

use cropkit::rewrite::{apply_rule, Direction, Registry};
use cropkit::term::{parse_ctrl, print_ctrl};

fn main() -> cropkit::Result<()> {
    let reg = Registry::standard();
    let steps = [
        ("c0[j] ; c1[j]", "e", Direction::LR, vec![]),
        ("(x + id1) ; c0[j] ; (x + id1)", "d", Direction::LR, vec![]),
        ("c1[j ; x]", "a", Direction::LR, vec![]),
        ("c1[x] ; c1[j ; x]", "a", Direction::LR, vec![1]),
    ];
    for (text, rule, dir, path) in steps {
        let t = parse_ctrl(text)?;
        let out = apply_rule(&t, reg.get(rule)?, dir, &path)?;
        println!("({rule}) {dir} at {path:?}:  {}  =  {}", print_ctrl(&t), print_ctrl(&out));
    }

    let err = apply_rule(&parse_ctrl("c1[x]")?, reg.get("e")?, Direction::LR, &vec![]).unwrap_err();
    println!("{err}");
    Ok(())
}
