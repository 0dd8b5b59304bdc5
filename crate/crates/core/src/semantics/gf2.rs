//! The two-element field and matrices over it.

use serde::{Deserialize, Serialize};

use super::matrix::{Matrix, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Gf2(pub bool);

impl Ring for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
}

pub type Gf2Matrix = Matrix<Gf2>;

/// `J = [[1,1],[1,0]]`.
pub fn j_matrix() -> Gf2Matrix {
    gf2_from_bits(&[vec![1, 1], vec![1, 0]]).expect("square")
}

pub fn gf2_from_bits(rows: &[Vec<u8>]) -> Result<Gf2Matrix> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut r = Vec::with_capacity(row.len());
        for &b in row {
            match b {
                0 => r.push(Gf2(false)),
                1 => r.push(Gf2(true)),
                other => return Err(Error::Invalid(format!("GF(2) entry {other} is not 0 or 1"))),
            }
        }
        out.push(r);
    }
    Matrix::from_rows(out)
}

pub fn gf2_to_bits(m: &Gf2Matrix) -> Vec<Vec<u8>> {
    m.rows().map(|r| r.iter().map(|b| b.0 as u8).collect()).collect()
}

/// Rank by Gaussian elimination.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    let n = m.dim();
    let mut rows: Vec<Vec<bool>> = m.rows().map(|r| r.iter().map(|b| b.0).collect()).collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, p);
        for r in 0..n {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn gf2_is_invertible(m: &Gf2Matrix) -> bool {
    gf2_rank(m) == m.dim()
}

/// A uniformly random invertible matrix, by rejection sampling.
pub fn gf2_random_invertible(dim: usize, rng: &mut impl rand::Rng) -> Gf2Matrix {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| Gf2(rng.gen_bool(0.5))).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        if gf2_is_invertible(&m) {
            return m;
        }
    }
}

/// Every invertible `dim × dim` matrix, in lexicographic order of their bit patterns.
pub fn gf2_all_invertible(dim: usize) -> Vec<Gf2Matrix> {
    assert!(dim * dim <= 24, "enumeration limited to 4x4");
    (0u32..1 << (dim * dim))
        .filter_map(|bits| {
            let rows = (0..dim)
                .map(|i| (0..dim).map(|j| Gf2(bits >> (i * dim + j) & 1 == 1)).collect())
                .collect();
            let m = Matrix::from_rows(rows).expect("square");
            gf2_is_invertible(&m).then_some(m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_has_order_three() {
        let j = j_matrix();
        assert!(!j.mul(&j).unwrap().is_identity());
        assert!(j.pow(3).is_identity());
    }

    #[test]
    fn general_linear_group_order() {
        // |GL(n, 2)| = prod (2^n - 2^k)
        assert_eq!(gf2_all_invertible(2).len(), 6);
        assert_eq!(gf2_all_invertible(3).len(), 168);
        assert_eq!(gf2_all_invertible(4).len(), 20160);
    }

    #[test]
    fn bits_roundtrip() {
        let m = gf2_from_bits(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(gf2_to_bits(&m), vec![vec![1, 0], vec![1, 1]]);
        assert!(gf2_from_bits(&[vec![2, 0], vec![0, 1]]).is_err());
        let mut rng = <rand::rngs::StdRng as rand::SeedableRng>::seed_from_u64(7);
        assert!(gf2_is_invertible(&gf2_random_invertible(8, &mut rng)));
    }
}
