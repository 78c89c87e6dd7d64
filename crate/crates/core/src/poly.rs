//! Dense polynomials with `i64` coefficients, just enough arithmetic to
//! expand generating-function identities exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly::default()
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> IntPoly {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    /// `c · x^k`.
    pub fn monomial(c: i64, k: usize) -> IntPoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    /// `1 + x^step + x^(2·step) + … + x^(terms−1)·step`, the closed form of
    /// `(1 − x^(step·terms)) / (1 − x^step)`.
    pub fn geometric(step: usize, terms: usize) -> IntPoly {
        if terms == 0 {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; step * (terms - 1) + 1];
        for j in 0..terms {
            coeffs[j * step] = 1;
        }
        IntPoly::from_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// `p(x) · x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.coeffs.is_empty() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// `p(x^2)`.
    pub fn compose_square(&self) -> IntPoly {
        let mut coeffs = vec![0; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = a;
        }
        IntPoly { coeffs }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        self.scale(-1)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}
