//! Finite permutations with the bipermutative structure: composition, direct
//! sum, tensor product and the two symmetries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported permutation size.
pub const MAX_SIZE: usize = 1 << 24;

/// A bijection on `{0, .., size-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermFile", into = "PermFile")]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PermFile {
    size: usize,
    images: Vec<usize>,
}

impl TryFrom<PermFile> for Permutation {
    type Error = Error;

    fn try_from(file: PermFile) -> Result<Self> {
        if file.size != file.images.len() {
            return Err(Error::SizeMismatch(file.size, file.images.len()));
        }
        Permutation::new(file.images)
    }
}

impl From<Permutation> for PermFile {
    fn from(p: Permutation) -> Self {
        PermFile {
            size: p.size(),
            images: p.images,
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl Permutation {
    /// Checks that `images` is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > MAX_SIZE {
            return Err(Error::Capacity(format!("permutation of size {n}")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `g ∘ f`: apply `f` first.
    pub fn compose(g: &Permutation, f: &Permutation) -> Result<Self> {
        if g.size() != f.size() {
            return Err(Error::SizeMismatch(g.size(), f.size()));
        }
        Ok(Permutation {
            images: f.images.iter().map(|&i| g.images[i]).collect(),
        })
    }

    /// Diagram-order composition: `self` then `next`.
    pub fn then(&self, next: &Permutation) -> Result<Self> {
        Permutation::compose(next, self)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.size()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Permutation::identity(self.size());
        for _ in 0..k {
            acc = Permutation::compose(self, &acc).expect("same size");
        }
        acc
    }

    /// Block concatenation `f ⊕ g`.
    pub fn direct_sum(f: &Permutation, g: &Permutation) -> Self {
        let m = f.size();
        let images = f
            .images
            .iter()
            .copied()
            .chain(g.images.iter().map(|&j| j + m))
            .collect();
        Permutation { images }
    }

    /// `f ⊕ f ⊕ … ⊕ f` with `copies` summands (identity on 0 when `copies == 0`).
    pub fn direct_power(f: &Permutation, copies: usize) -> Self {
        let m = f.size();
        let mut images = Vec::with_capacity(m * copies);
        for c in 0..copies {
            images.extend(f.images.iter().map(|&j| j + c * m));
        }
        Permutation { images }
    }

    /// Symmetry of the direct sum, `γ_{m,n} : m + n → n + m`.
    pub fn gamma(m: usize, n: usize) -> Self {
        let images = (0..m + n)
            .map(|i| if i < m { n + i } else { i - m })
            .collect();
        Permutation { images }
    }

    /// `f ⊗ g` on `[mn]`, sending `an + b` to `f(a) n + g(b)`.
    pub fn tensor(f: &Permutation, g: &Permutation) -> Self {
        let (m, n) = (f.size(), g.size());
        let mut images = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                images.push(f.images[a] * n + g.images[b]);
            }
        }
        Permutation { images }
    }

    /// Symmetry of the tensor, `s_{m,n} : an + b ↦ bm + a`.
    pub fn tensor_sym(m: usize, n: usize) -> Self {
        let mut images = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                images.push(b * m + a);
            }
        }
        Permutation { images }
    }

    /// Left distributor `δ : m ⊗ (n ⊕ k) → (m ⊗ n) ⊕ (m ⊗ k)`, built as
    /// `s_{m,n+k}` followed by `s_{n,m} ⊕ s_{k,m}`.
    pub fn left_distributor(m: usize, n: usize, k: usize) -> Self {
        let first = Permutation::tensor_sym(m, n + k);
        let second =
            Permutation::direct_sum(&Permutation::tensor_sym(n, m), &Permutation::tensor_sym(k, m));
        first.then(&second).expect("sizes agree")
    }

    /// Adjacent transposition `τ_i = id_i ⊕ γ_{1,1} ⊕ id` on `[n]`.
    pub fn adjacent(n: usize, i: usize) -> Result<Self> {
        if i + 1 >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: n.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Ok(Permutation { images })
    }

    /// Indices `i₁ … i_k` with `self = τ_{i₁} ∘ … ∘ τ_{i_k}`.
    ///
    /// Bubble sort on the image table; the word is canonical but not minimal.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        // Sorting `images` by adjacent swaps on positions: after applying
        // swaps σ_1..σ_k (as position swaps, i.e. right multiplication),
        // self ∘ τ_{σ_1} ∘ … ∘ τ_{σ_k} = id, hence self = τ_{σ_k} ∘ … ∘ τ_{σ_1}.
        let mut work = self.images.clone();
        let mut swaps = Vec::new();
        let n = work.len();
        for pass in 0..n {
            let mut swapped = false;
            for i in 0..n.saturating_sub(1 + pass) {
                if work[i] > work[i + 1] {
                    work.swap(i, i + 1);
                    swaps.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// Product of adjacent transpositions `τ_{i₁} ∘ … ∘ τ_{i_k}` on `[n]`.
    pub fn from_adjacent_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut acc = Permutation::identity(n);
        for &i in word.iter().rev() {
            acc = Permutation::compose(&Permutation::adjacent(n, i)?, &acc)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        assert_eq!(Permutation::compose(&p(&[1, 0]), &p(&[1, 0])).unwrap(), p(&[0, 1]));
        assert_eq!(
            p(&[0, 1, 3, 2, 6, 7, 5, 4]).inverse(),
            p(&[0, 1, 3, 2, 7, 6, 4, 5])
        );
        let q = p(&[2, 0, 3, 1]);
        assert_eq!(Permutation::compose(&Permutation::identity(4), &q).unwrap(), q);
        assert!(matches!(
            Permutation::compose(&p(&[0]), &p(&[1, 0])),
            Err(Error::SizeMismatch(1, 2))
        ));
    }

    #[test]
    fn direct_sums() {
        assert_eq!(Permutation::direct_sum(&Permutation::identity(2), &p(&[1, 0])), p(&[0, 1, 3, 2]));
        assert_eq!(Permutation::direct_sum(&p(&[1, 0]), &Permutation::identity(2)), p(&[1, 0, 2, 3]));
        assert_eq!(Permutation::direct_sum(&p(&[1, 0]), &p(&[1, 0])), p(&[1, 0, 3, 2]));
    }

    #[test]
    fn symmetries() {
        assert_eq!(Permutation::gamma(1, 1), p(&[1, 0]));
        assert_eq!(Permutation::gamma(2, 1), p(&[1, 2, 0]));
        assert_eq!(Permutation::gamma(0, 3), Permutation::identity(3));
        assert_eq!(Permutation::tensor_sym(2, 2), p(&[0, 2, 1, 3]));
        for (m, n) in [(2, 3), (4, 2), (1, 5)] {
            let round = Permutation::compose(&Permutation::tensor_sym(n, m), &Permutation::tensor_sym(m, n)).unwrap();
            assert!(round.is_identity());
        }
    }

    #[test]
    fn tensors() {
        assert_eq!(Permutation::tensor(&p(&[1, 0]), &p(&[1, 0])), p(&[3, 2, 1, 0]));
        let g = p(&[2, 0, 1]);
        assert_eq!(
            Permutation::tensor(&Permutation::identity(2), &g),
            Permutation::direct_sum(&g, &g)
        );
    }

    #[test]
    fn distributor() {
        assert_eq!(Permutation::left_distributor(1, 2, 3), Permutation::identity(5));
        assert_eq!(Permutation::left_distributor(2, 1, 1), p(&[0, 2, 1, 3]));
        // empty middle block: δ is the identity on m ⊗ k
        assert_eq!(Permutation::left_distributor(3, 0, 2), Permutation::identity(6));
    }

    #[test]
    fn factorization_examples() {
        assert!(Permutation::identity(4).adjacent_factorization().is_empty());
        assert_eq!(p(&[1, 0]).adjacent_factorization(), vec![0]);
        assert_eq!(p(&[0, 2, 1, 3]).adjacent_factorization(), vec![1]);
    }

    #[test]
    fn factorization_exhaustive_small() {
        for n in 0..=6usize {
            let mut perm: Vec<usize> = (0..n).collect();
            loop {
                let q = p(&perm);
                let word = q.adjacent_factorization();
                assert!(word.len() <= n * n);
                assert_eq!(Permutation::from_adjacent_word(n, &word).unwrap(), q);
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn json_format() {
        let q = p(&[0, 1, 3, 2]);
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, r#"{"size":4,"images":[0,1,3,2]}"#);
        assert_eq!(serde_json::from_str::<Permutation>(&text).unwrap(), q);
        assert!(serde_json::from_str::<Permutation>(r#"{"size":3,"images":[0,1]}"#).is_err());
    }
}
