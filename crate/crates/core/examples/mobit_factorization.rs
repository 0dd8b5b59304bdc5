//! Factor an invertible GF(2) matrix into Gray transpositions and Gray J's,
//! then turn the word into a circuit over x and j.

use cropkit::semantics::{gf2_random_invertible, gf2_to_bits};
use cropkit::term::print_ctrl;
use cropkit::translate::{a_j, b_j, factor_gl2};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> cropkit::Result<()> {
    let mut rng = StdRng::seed_from_u64(1);
    let m = gf2_random_invertible(4, &mut rng);
    for row in gf2_to_bits(&m) {
        println!("{row:?}");
    }
    let word = factor_gl2(&m)?;
    println!("{} letters", word.letters.len());
    let circuit = b_j(&word)?;
    println!("{}", print_ctrl(&circuit));
    assert_eq!(a_j(&circuit)?, m);
    Ok(())
}
