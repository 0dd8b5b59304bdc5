//! Random circuits over a generator set, used to instantiate rules and by the
//! property suites.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::term::{builtin_arity, CtrlTerm, Generator};

fn random_gen(rng: &mut impl Rng, name: &str) -> CtrlTerm {
    if name == "x" {
        return CtrlTerm::Not;
    }
    let (wires, count) = builtin_arity(name).unwrap_or((1, 0));
    let params = (0..count).map(|_| rng.gen_range(-PI..PI)).collect();
    CtrlTerm::Gen(Generator::new(name, wires, params))
}

fn leaf(rng: &mut impl Rng, wires: usize, gens: &[&str]) -> CtrlTerm {
    let fitting: Vec<&str> = std::iter::once("x")
        .chain(gens.iter().copied())
        .filter(|g| *g == "x" || builtin_arity(g).is_some_and(|(w, _)| w == wires))
        .filter(|g| wires == 1 || *g != "x")
        .collect();
    match wires {
        0 => match fitting.choose(rng).copied() {
            Some(g) if rng.gen_bool(0.7) => random_gen(rng, g),
            _ => CtrlTerm::Identity(0),
        },
        1 => {
            if rng.gen_bool(0.15) {
                CtrlTerm::Identity(1)
            } else {
                let g = *fitting.choose(rng).unwrap_or(&"x");
                random_gen(rng, g)
            }
        }
        _ => match rng.gen_range(0..3) {
            0 => {
                let m = rng.gen_range(1..wires);
                CtrlTerm::Swap(m, wires - m)
            }
            1 => CtrlTerm::ctrl(
                if rng.gen_bool(0.5) { crate::term::Polarity::Positive } else { crate::term::Polarity::Negative },
                leaf(rng, wires - 1, gens),
            ),
            _ => {
                let m = rng.gen_range(1..wires);
                CtrlTerm::par(leaf(rng, m, gens), leaf(rng, wires - m, gens))
            }
        },
    }
}

/// A random well-formed circuit on `wires` wires. `gens` lists the builtin
/// generators besides `x` that may appear; `depth` bounds the nesting.
pub fn random_circuit(rng: &mut impl Rng, wires: usize, gens: &[&str], depth: usize) -> CtrlTerm {
    if depth == 0 {
        return leaf(rng, wires, gens);
    }
    match rng.gen_range(0..5) {
        0 | 1 => CtrlTerm::seq(random_circuit(rng, wires, gens, depth - 1), random_circuit(rng, wires, gens, depth - 1)),
        2 if wires >= 1 => {
            let p = if rng.gen_bool(0.5) { crate::term::Polarity::Positive } else { crate::term::Polarity::Negative };
            CtrlTerm::ctrl(p, random_circuit(rng, wires - 1, gens, depth - 1))
        }
        3 if wires >= 2 => {
            let m = rng.gen_range(1..wires);
            CtrlTerm::par(random_circuit(rng, m, gens, depth - 1), random_circuit(rng, wires - m, gens, depth - 1))
        }
        _ => leaf(rng, wires, gens),
    }
}
