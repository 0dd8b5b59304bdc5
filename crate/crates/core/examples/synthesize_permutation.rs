//! Synthesise a permutation of [2^n] from multi-controlled NOTs and read it back.

use cropkit::term::print_ctrl;
use cropkit::translate::{alpha, beta, gray_factorization};
use cropkit::Permutation;

fn main() -> cropkit::Result<()> {
    // the Toffoli gate and a 3-cycle
    let toffoli = Permutation::new(vec![0, 1, 2, 3, 4, 5, 7, 6])?;
    let cycle = Permutation::new(vec![1, 2, 0, 3])?;

    for p in [toffoli, cycle, Permutation::tensor_sym(2, 2)] {
        let (n, word) = gray_factorization(&p)?;
        let circuit = beta(&p)?;
        println!("{p}  on {n} wires");
        println!("  Gray word  {word:?}");
        println!("  circuit    {}  ({} gates)", print_ctrl(&circuit), circuit.gate_count());
        assert_eq!(alpha(&circuit)?, p);
    }
    Ok(())
}
