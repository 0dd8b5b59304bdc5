//! Controlled circuits to direct-sum circuits and back.

use cropkit::semantics::{eval_ctrl, eval_sum, CycloBackend};
use cropkit::term::{parse_ctrl, print_ctrl, print_sum};
use cropkit::translate::{a_translate, b_translate};

fn main() -> cropkit::Result<()> {
    for text in ["c1[v]", "c0[h] ; swap 1 1", "id1 + c1[s]"] {
        let t = parse_ctrl(text)?;
        let sum = a_translate(&t)?;
        let back = b_translate(&sum)?;
        println!("{text}");
        println!("  as a sum   {}", print_sum(&sum));
        println!("  back       {}", print_ctrl(&back));
        let b = CycloBackend;
        assert_eq!(eval_ctrl(&t, &b)?, eval_sum(&sum, &b)?);
        assert_eq!(eval_ctrl(&back, &b)?, eval_ctrl(&t, &b)?);
    }
    Ok(())
}
