//! Dense univariate polynomials over Q, coefficients in ascending order.

use num_traits::{One, Zero};

use super::rational::Rational;
use super::matrix::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            if !q.is_zero() {
                for (k, c) in d.coeffs.iter().enumerate() {
                    r[top - dd + k] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => {
                let l = l.clone();
                UniPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Resultant with formal degrees `da >= deg self`, `db >= deg other`,
    /// as the determinant of the Sylvester matrix.
    pub fn resultant_formal(&self, da: usize, other: &UniPoly, db: usize) -> Rational {
        let n = da + db;
        if n == 0 {
            return Rational::one();
        }
        let coeff = |p: &UniPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
        let mut m = RatMatrix::zeros(n, n);
        // rows hold coefficients from highest to lowest degree
        for i in 0..db {
            for k in 0..=da {
                m.set(i, i + k, coeff(self, da - k));
            }
        }
        for i in 0..da {
            for k in 0..=db {
                m.set(db + i, i + k, coeff(other, db - k));
            }
        }
        m.determinant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn resultant_detects_common_roots() {
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert!(a.resultant_formal(2, &b, 2).is_zero());
        // Res(x - a, x - b) = b - a with this row convention up to sign
        let r = p(&[-2, 1]).resultant_formal(1, &p(&[-5, 1]), 1);
        assert_eq!(r.clone() * r, rat(9));
    }
}
