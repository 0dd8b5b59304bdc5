//! Dense square matrices over a commutative ring.

use std::fmt::Debug;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// Rings with an involutive conjugation, used for adjoints.
pub trait Conjugate: Ring {
    fn conj(&self) -> Self;
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Conjugate for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::SizeMismatch(row.len(), dim));
            }
            data.extend(row);
        }
        Ok(Matrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn scalar(value: T) -> Self {
        Matrix { dim: 1, data: vec![value] }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Permutation matrix with `P e_i = e_{p(i)}`.
    pub fn from_perm(p: &Permutation) -> Self {
        let mut m = Self::zeros(p.size());
        for (i, &j) in p.images().iter().enumerate() {
            m.set(j, i, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.data[row * self.dim + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::SizeMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self).expect("same size");
        }
        acc
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a + b);
        for i in 0..a {
            for j in 0..a {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..b {
            for j in 0..b {
                out.set(a + i, a + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product with `self` as the most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let mut out = Self::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.set(i * b + k, j * b + l, x.mul(other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// The permutation this matrix realises, if it is a permutation matrix.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let mut images = vec![usize::MAX; self.dim];
        for col in 0..self.dim {
            for row in 0..self.dim {
                let v = self.get(row, col);
                if *v == T::one() {
                    if images[col] != usize::MAX {
                        return None;
                    }
                    images[col] = row;
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Permutation::new(images).ok()
    }
}

impl<T: Conjugate> Matrix<T> {
    pub fn adjoint(&self) -> Self {
        self.transpose().map(T::conj)
    }
}

impl Matrix<Complex64> {
    /// Largest entrywise modulus of `self - other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self).expect("square");
        p.max_distance(&Self::identity(self.dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn products() {
        let x = Matrix::from_rows(vec![vec![c(0.), c(1.)], vec![c(1.), c(0.)]]).unwrap();
        assert!(x.mul(&x).unwrap().is_identity());
        let k = x.kron(&Matrix::identity(2));
        assert_eq!(k.as_permutation().unwrap().images(), &[2, 3, 0, 1]);
        let s = Matrix::<Complex64>::identity(2).direct_sum(&x);
        assert_eq!(s.as_permutation().unwrap().images(), &[0, 1, 3, 2]);
    }

    #[test]
    fn permutation_matrices() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let m = Matrix::<Complex64>::from_perm(&p);
        assert_eq!(m.as_permutation().unwrap(), p);
        let q = Permutation::new(vec![1, 2, 0]).unwrap();
        let mq = Matrix::<Complex64>::from_perm(&q);
        // matrix product composes right to left
        let pq = Permutation::compose(&p, &q).unwrap();
        assert_eq!(m.mul(&mq).unwrap().as_permutation().unwrap(), pq);
        assert!(Matrix::from_rows(vec![vec![c(1.)], vec![c(1.)]]).is_err());
    }
}
