//! Exact arithmetic in `ℤ[ω, ½]` with `ω = e^{iπ/4}`, so `ω⁴ = −1`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{Conjugate, Ring};

/// `(c₀ + c₁ω + c₂ω² + c₃ω³) / 2^log2den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyclo {
    coeffs: [i64; 4],
    log2den: u32,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("cyclotomic coefficient overflow")
}

impl Cyclo {
    pub fn new(coeffs: [i64; 4], log2den: u32) -> Self {
        Cyclo { coeffs, log2den }.reduced()
    }

    pub fn integer(n: i64) -> Self {
        Cyclo::new([n, 0, 0, 0], 0)
    }

    /// `ω^k`.
    pub fn omega_pow(k: usize) -> Self {
        let mut coeffs = [0; 4];
        let sign = if (k / 4) % 2 == 0 { 1 } else { -1 };
        coeffs[k % 4] = sign;
        Cyclo::new(coeffs, 0)
    }

    /// `1/√2 = (ω − ω³)/2`.
    pub fn inv_sqrt2() -> Self {
        Cyclo::new([0, 1, 0, -1], 1)
    }

    pub fn i() -> Self {
        Cyclo::omega_pow(2)
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.coeffs
    }

    pub fn log2den(&self) -> u32 {
        self.log2den
    }

    fn reduced(mut self) -> Self {
        if self.coeffs == [0; 4] {
            self.log2den = 0;
            return self;
        }
        while self.log2den > 0 && self.coeffs.iter().all(|c| c % 2 == 0) {
            for c in &mut self.coeffs {
                *c /= 2;
            }
            self.log2den -= 1;
        }
        self
    }

    fn scaled_to(&self, log2den: u32) -> [i64; 4] {
        let shift = log2den - self.log2den;
        self.coeffs.map(|c| checked(c.checked_mul(1i64.checked_shl(shift).expect("shift"))))
    }

    pub fn to_complex(&self) -> Complex64 {
        let scale = 0.5f64.powi(self.log2den as i32);
        (0..4)
            .map(|k| {
                let angle = std::f64::consts::FRAC_PI_4 * k as f64;
                Complex64::from_polar(self.coeffs[k] as f64 * scale, angle)
            })
            .sum()
    }
}

impl Ring for Cyclo {
    fn zero() -> Self {
        Cyclo::integer(0)
    }

    fn one() -> Self {
        Cyclo::integer(1)
    }

    fn add(&self, other: &Self) -> Self {
        let d = self.log2den.max(other.log2den);
        let (a, b) = (self.scaled_to(d), other.scaled_to(d));
        let mut coeffs = [0; 4];
        for k in 0..4 {
            coeffs[k] = checked(a[k].checked_add(b[k]));
        }
        Cyclo::new(coeffs, d)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut coeffs = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let p = checked(self.coeffs[i].checked_mul(other.coeffs[j]));
                let k = i + j;
                if k < 4 {
                    coeffs[k] = checked(coeffs[k].checked_add(p));
                } else {
                    coeffs[k - 4] = checked(coeffs[k - 4].checked_sub(p));
                }
            }
        }
        Cyclo::new(coeffs, self.log2den + other.log2den)
    }

    fn neg(&self) -> Self {
        Cyclo::new(self.coeffs.map(|c| -c), self.log2den)
    }
}

impl Conjugate for Cyclo {
    /// `ω̄ = ω⁷ = −ω³`, so `conj(a₀ + a₁ω + a₂ω² + a₃ω³) = a₀ − a₃ω − a₂ω² − a₁ω³`.
    fn conj(&self) -> Self {
        let [a0, a1, a2, a3] = self.coeffs;
        Cyclo::new([a0, -a3, -a2, -a1], self.log2den)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.coeffs;
        write!(f, "({a0} + {a1}ω + {a2}ω² + {a3}ω³)")?;
        if self.log2den > 0 {
            write!(f, "/2^{}", self.log2den)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_powers() {
        let w = Cyclo::omega_pow(1);
        let mut acc = Cyclo::one();
        for k in 0..16 {
            assert_eq!(acc, Cyclo::omega_pow(k));
            acc = acc.mul(&w);
        }
        assert_eq!(Cyclo::omega_pow(4), Cyclo::integer(-1));
        assert_eq!(Cyclo::omega_pow(8), Cyclo::one());
    }

    #[test]
    fn inverse_root_two() {
        let r = Cyclo::inv_sqrt2();
        assert_eq!(r.mul(&r), Cyclo::new([1, 0, 0, 0], 1));
        assert!((r.to_complex() - Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Cyclo::new([2, 4, 0, -6], 1), Cyclo::new([1, 2, 0, -3], 0));
        assert_eq!(Cyclo::new([0; 4], 5).log2den(), 0);
        let half = Cyclo::new([1, 0, 0, 0], 1);
        assert_eq!(half.add(&half), Cyclo::one());
    }

    #[test]
    fn conjugation_matches_complex() {
        for k in 0..8 {
            let z = Cyclo::new([3, -1, 2, 5], 2).mul(&Cyclo::omega_pow(k));
            assert!((z.conj().to_complex() - z.to_complex().conj()).norm() < 1e-12);
            assert_eq!(z.conj().conj(), z);
        }
    }
}
