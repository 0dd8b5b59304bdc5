//! Gray words, ranks and the multi-controlled NOT behind each Gray transposition.

use cropkit::gray::{gray_code, gray_context, gray_rank, gray_transposition};
use cropkit::term::print_ctrl;
use cropkit::translate::theta_circuit;

fn main() -> cropkit::Result<()> {
    let n = 3;
    println!("r_{n} = {}", gray_rank(n)?);
    for i in 0..(1 << n) - 1 {
        let ctx = gray_context(n, i)?;
        println!(
            "{} -> {}  flip bit {}  theta = {}  {}",
            gray_code(n, i)?,
            gray_code(n, i + 1)?,
            ctx.flip_index,
            gray_transposition(n, i)?,
            print_ctrl(&theta_circuit(n, i)?),
        );
    }
    Ok(())
}
