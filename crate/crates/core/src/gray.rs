//! Binary reflected Gray codes: words, ranks, Gray transpositions and the
//! prefix/suffix context of each single-bit flip.
//!
//! Words are MSB-first strings over `{0,1}`; `flip_index` counts from the left.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest supported number of bits.
pub const MAX_BITS: usize = 24;

fn check_bits(n: usize) -> Result<()> {
    if n > MAX_BITS {
        return Err(Error::Capacity(format!("{n} bits exceeds the limit of {MAX_BITS}")));
    }
    Ok(())
}

/// The integer whose binary expansion is the `i`-th Gray word.
fn gray_value(i: usize) -> usize {
    i ^ (i >> 1)
}

/// `h_n(i)`, the `i`-th word of the `n`-bit Gray code.
pub fn gray_code(n: usize, i: usize) -> Result<String> {
    check_bits(n)?;
    if i >= 1 << n {
        return Err(Error::IndexOutOfRange { index: i, limit: (1 << n) - 1 });
    }
    Ok(to_bits(n, gray_value(i)))
}

/// Recursive form of `h_n`, kept as an independent reference for tests.
pub fn gray_code_recursive(n: usize, i: usize) -> String {
    if n == 0 {
        return String::new();
    }
    let half = 1 << (n - 1);
    if i < half {
        format!("0{}", gray_code_recursive(n - 1, i))
    } else {
        format!("1{}", gray_code_recursive(n - 1, 2 * half - 1 - i))
    }
}

pub(crate) fn to_bits(n: usize, value: usize) -> String {
    (0..n)
        .rev()
        .map(|b| if value >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// `r_n`: sends a Gray rank to the integer value of its word.
pub fn gray_rank(n: usize) -> Result<Permutation> {
    check_bits(n)?;
    Ok(Permutation::from_images_unchecked(
        (0..1usize << n).map(gray_value).collect(),
    ))
}

fn check_transposition_index(n: usize, i: usize) -> Result<()> {
    check_bits(n)?;
    let size = 1usize << n;
    if size < 2 || i > size - 2 {
        return Err(Error::IndexOutOfRange { index: i, limit: size.saturating_sub(2) });
    }
    Ok(())
}

/// `θ_{n,i}`: exchanges `r_n(i)` and `r_n(i+1)`.
pub fn gray_transposition(n: usize, i: usize) -> Result<Permutation> {
    check_transposition_index(n, i)?;
    let mut images: Vec<usize> = (0..1usize << n).collect();
    images.swap(gray_value(i), gray_value(i + 1));
    Ok(Permutation::from_images_unchecked(images))
}

/// `θ_{n,i}` built by induction on `n`:
/// * `θ_{n,i} ⊕ id` when the flip stays in the lower half,
/// * `s_{2^{n-1},2} ∘ (id ⊕ γ₁,₁ ⊕ id) ∘ s_{2,2^{n-1}}` for the middle flip,
/// * `id ⊕ θ_{n-1,2^n−2−i}` in the reflected upper half.
pub fn gray_transposition_inductive(n: usize, i: usize) -> Result<Permutation> {
    check_transposition_index(n, i)?;
    if n == 1 {
        return Ok(Permutation::gamma(1, 1));
    }
    let half = 1usize << (n - 1);
    Ok(if i < half - 1 {
        Permutation::direct_sum(&gray_transposition_inductive(n - 1, i)?, &Permutation::identity(half))
    } else if i == half - 1 {
        let mid = Permutation::adjacent(2 * half, half)?;
        Permutation::tensor_sym(2, half).then(&mid)?.then(&Permutation::tensor_sym(half, 2))?
    } else {
        Permutation::direct_sum(
            &Permutation::identity(half),
            &gray_transposition_inductive(n - 1, 2 * half - 2 - i)?,
        )
    })
}

/// The bits shared by two consecutive Gray words and the position where they differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayContext {
    pub prefix: String,
    pub flip_index: usize,
    pub suffix: String,
}

impl GrayContext {
    pub fn bits(&self) -> usize {
        self.prefix.len() + 1 + self.suffix.len()
    }
}

/// Context of the flip between `h_n(i)` and `h_n(i+1)`.
pub fn gray_context(n: usize, i: usize) -> Result<GrayContext> {
    check_transposition_index(n, i)?;
    let word = to_bits(n, gray_value(i));
    let diff = gray_value(i) ^ gray_value(i + 1);
    let flip_index = n - 1 - diff.trailing_zeros() as usize;
    Ok(GrayContext {
        prefix: word[..flip_index].to_string(),
        flip_index,
        suffix: word[flip_index + 1..].to_string(),
    })
}

/// Whether `h_n(i) < h_n(i+1)` lexicographically.
pub fn flip_is_rising(n: usize, i: usize) -> Result<bool> {
    check_transposition_index(n, i)?;
    Ok(gray_value(i) < gray_value(i + 1))
}

/// One row of the table printed by `cropkit gray`.
#[derive(Clone, Debug, Serialize)]
pub struct GrayRow {
    pub index: usize,
    pub binary: String,
    pub gray: String,
    pub rank: usize,
}

pub fn gray_table(n: usize) -> Result<Vec<GrayRow>> {
    check_bits(n)?;
    Ok((0..1usize << n)
        .map(|i| GrayRow {
            index: i,
            binary: to_bits(n, i),
            gray: to_bits(n, gray_value(i)),
            rank: gray_value(i),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(gray_code(3, 4).unwrap(), "110");
        assert_eq!(gray_code(0, 0).unwrap(), "");
        assert_eq!(gray_code(4, 13).unwrap(), "1011");
        assert!(matches!(gray_code(2, 4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(gray_code(25, 0), Err(Error::Capacity(_))));
    }

    #[test]
    fn closed_form_matches_recursion() {
        for n in 0..=10 {
            for i in 0..1usize << n {
                assert_eq!(gray_code(n, i).unwrap(), gray_code_recursive(n, i));
            }
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(gray_rank(2).unwrap().images(), &[0, 1, 3, 2]);
        assert_eq!(gray_rank(3).unwrap().images(), &[0, 1, 3, 2, 6, 7, 5, 4]);
        assert_eq!(gray_rank(0).unwrap().images(), &[0]);
    }

    #[test]
    fn transpositions() {
        assert_eq!(gray_transposition(1, 0).unwrap().images(), &[1, 0]);
        assert_eq!(gray_transposition(2, 1).unwrap().images(), &[0, 3, 2, 1]);
        assert_eq!(gray_transposition(2, 2).unwrap().images(), &[0, 1, 3, 2]);
        assert!(gray_transposition(2, 3).is_err());
        assert!(gray_transposition(0, 0).is_err());
    }

    #[test]
    fn inductive_transpositions() {
        for n in 1..=7 {
            for i in 0..(1usize << n) - 1 {
                assert_eq!(gray_transposition_inductive(n, i).unwrap(), gray_transposition(n, i).unwrap());
            }
        }
    }

    #[test]
    fn contexts() {
        let c = gray_context(4, 13).unwrap();
        assert_eq!((c.prefix.as_str(), c.flip_index, c.suffix.as_str()), ("10", 2, "1"));
        let c = gray_context(1, 0).unwrap();
        assert_eq!((c.prefix.as_str(), c.flip_index, c.suffix.as_str()), ("", 0, ""));
        let c = gray_context(2, 2).unwrap();
        assert_eq!((c.prefix.as_str(), c.flip_index, c.suffix.as_str()), ("1", 1, ""));
        assert!(flip_is_rising(1, 0).unwrap());
        assert!(!flip_is_rising(2, 2).unwrap());
    }

    #[test]
    fn hamming_distance_one() {
        for n in 1..=12 {
            for i in 0..(1usize << n) - 1 {
                let a = gray_code(n, i).unwrap();
                let b = gray_code(n, i + 1).unwrap();
                let d = a.chars().zip(b.chars()).filter(|(x, y)| x != y).count();
                assert_eq!(d, 1);
                let ctx = gray_context(n, i).unwrap();
                assert_eq!(ctx.bits(), n);
                assert!(a.starts_with(&ctx.prefix) && b.starts_with(&ctx.prefix));
                assert!(a.ends_with(&ctx.suffix) && b.ends_with(&ctx.suffix));
            }
        }
    }

    #[test]
    fn rank_is_word_value() {
        for n in 0..=12 {
            let r = gray_rank(n).unwrap();
            for i in 0..1usize << n {
                let w = gray_code(n, i).unwrap();
                let v = if n == 0 { 0 } else { usize::from_str_radix(&w, 2).unwrap() };
                assert_eq!(r.apply(i), v);
            }
        }
    }
}
