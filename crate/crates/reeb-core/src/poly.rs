//! Integer polynomials in one variable and 2×2 matrices over them.
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::rat::Q;

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<i128>);

impl Poly {
    pub fn new(mut c: Vec<i128>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }
    pub fn zero() -> Self {
        Poly(Vec::new())
    }
    pub fn constant(a: i128) -> Self {
        Poly::new(vec![a])
    }
    /// `a·u`.
    pub fn linear(a: i128) -> Self {
        Poly::new(vec![0, a])
    }
    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }
    pub fn coeff(&self, k: usize) -> i128 {
        self.0.get(k).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
    pub fn leading(&self) -> i128 {
        self.0.last().copied().unwrap_or(0)
    }
    pub fn eval(&self, u: &Q) -> Q {
        let mut acc = Q::from_integer(0);
        for c in self.0.iter().rev() {
            acc = acc * u + Q::from_integer(*c);
        }
        acc
    }
    pub fn scale(&self, s: i128) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0i128; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

/// Row-major 2×2 matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat(pub [[Poly; 2]; 2]);

impl PolyMat {
    pub fn identity() -> Self {
        PolyMat([
            [Poly::constant(1), Poly::zero()],
            [Poly::zero(), Poly::constant(1)],
        ])
    }
    pub fn mul(&self, o: &PolyMat) -> PolyMat {
        let a = &self.0;
        let b = &o.0;
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        PolyMat([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
    pub fn trace(&self) -> Poly {
        &self.0[0][0] + &self.0[1][1]
    }
    pub fn det(&self) -> Poly {
        &(&self.0[0][0] * &self.0[1][1]) - &(&self.0[0][1] * &self.0[1][0])
    }
    pub fn scale(&self, s: i128) -> PolyMat {
        let m = &self.0;
        PolyMat([
            [m[0][0].scale(s), m[0][1].scale(s)],
            [m[1][0].scale(s), m[1][1].scale(s)],
        ])
    }
    pub fn eval(&self, u: &Q) -> [[Q; 2]; 2] {
        let m = &self.0;
        [
            [m[0][0].eval(u), m[0][1].eval(u)],
            [m[1][0].eval(u), m[1][1].eval(u)],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Poly::new(vec![1, 2]);
        let sq = &p * &p;
        assert_eq!(sq.coeffs(), &[1, 4, 4]);
        assert_eq!((&sq - &sq).degree(), None);
        assert_eq!(sq.eval(&Q::from_integer(3)), Q::from_integer(49));
    }
}
