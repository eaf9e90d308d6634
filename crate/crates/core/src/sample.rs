//! Seeded generators for random instances.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::exact::rational::ints_to_rats;
use crate::exact::{HomForm, RatMatrix, Rational};
use crate::hadamard::LineParam;
use crate::projgeom::{Hyperplane, ProjPoint};

/// Invertible integer matrix with entries in `-bound..=bound`.
pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, size: usize, bound: i64) -> Vec<Vec<BigInt>> {
    loop {
        let m: Vec<Vec<BigInt>> = (0..size)
            .map(|_| (0..size).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if RatMatrix::from_int_rows(&m).rank() == size {
            return m;
        }
    }
}

pub fn to_rational_rows(m: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| ints_to_rats(r)).collect()
}

pub fn apply(m: &[Vec<BigInt>], p: &ProjPoint) -> ProjPoint {
    let v: Vec<BigInt> = m
        .iter()
        .map(|row| row.iter().zip(p.coords()).map(|(a, b)| a * b).sum())
        .collect();
    ProjPoint::new(v).expect("invertible matrix")
}

/// Point with coordinates in `-bound..=bound`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> ProjPoint {
    loop {
        let v: Vec<i64> = (0..=n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(p) = ProjPoint::from_i64(&v) {
            return p;
        }
    }
}

pub fn random_hyperplane<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: i64) -> Hyperplane {
    crate::projgeom::dual_line(&random_point(rng, n, bound))
}

/// A random line of P^n whose points have at most one vanishing coordinate.
pub fn random_delta_avoiding_line<R: Rng + ?Sized>(rng: &mut R, n: usize) -> LineParam {
    loop {
        let p = random_point(rng, n, 9);
        let q = random_point(rng, n, 9);
        if let Ok(l) = LineParam::new(p, q) {
            if l.avoids_delta(n.saturating_sub(2)) {
                return l;
            }
        }
    }
}

/// Random conic with random coefficients in `-bound..=bound`.
pub fn random_conic<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> HomForm {
    loop {
        let v: Vec<Rational> = (0..6).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return HomForm::from_coefficient_vector(3, 2, &v);
        }
    }
}

/// Same point moved by a random nonzero integer offset.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, p: &ProjPoint) -> ProjPoint {
    loop {
        let v: Vec<BigInt> = p
            .coords()
            .iter()
            .map(|x| x + BigInt::from(rng.gen_range(-3i64..=3)))
            .collect();
        if let Ok(q) = ProjPoint::new(v) {
            if &q != p {
                return q;
            }
        }
    }
}
