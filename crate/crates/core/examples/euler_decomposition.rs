//! Euler angles of `h ; z(a1) ; h ; z(a2) ; h` and the rewrite that uses them.

use cropkit::rewrite::{apply_rule, euler_params, Direction, Registry};
use cropkit::semantics::BackendKind;
use cropkit::term::{parse_ctrl, print_ctrl, Signature};

fn main() -> cropkit::Result<()> {
    let reg = Registry::for_signature(&Signature::shipped("quantum")?)?;
    for (a1, a2) in [(0.0, 0.0), (std::f64::consts::PI, 0.0), (0.7, -1.9)] {
        let [b0, b1, b2, b3] = euler_params(a1, a2)?;
        println!("({a1:.3}, {a2:.3}) -> ({b0:.6}, {b1:.6}, {b2:.6}, {b3:.6})");
        let t = parse_ctrl(&format!("h ; z({a1}) ; h ; z({a2}) ; h"))?;
        let out = apply_rule(&t, reg.get("euler")?, Direction::LR, &vec![])?;
        println!("  {}", print_ctrl(&out));
        assert!(BackendKind::Complex.equal(&t, &out, 1e-9)?);
    }
    Ok(())
}
