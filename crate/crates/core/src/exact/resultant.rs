//! Sylvester resultants of homogeneous forms and exact coprimality.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::poly::{Exponent, HomForm};
use super::rational::{rat, Rational};
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Sparse polynomial without a homogeneity constraint; the ring in which the
/// Sylvester determinant is eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MPoly {
    terms: BTreeMap<Exponent, Rational>,
}

impl MPoly {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Leading term in graded lexicographic order.
    fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            })
    }

    /// Quotient of an exact division.
    fn div_exact(&self, d: &MPoly) -> MPoly {
        let (de, dc) = d.leading().expect("division by zero polynomial");
        let (de, dc) = (de.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            let e: Exponent = re
                .iter()
                .zip(&de)
                .map(|(a, b)| a.checked_sub(*b).expect("inexact polynomial division"))
                .collect();
            let c = rc / &dc;
            let mut t = MPoly::zero();
            t.add_term(e, c);
            rem = rem.sub(&t.mul(d));
            q = q_add(q, t);
        }
        q
    }
}

fn q_add(mut a: MPoly, b: MPoly) -> MPoly {
    for (e, c) in b.terms {
        a.add_term(e, c);
    }
    a
}

fn poly_determinant(mut a: Vec<Vec<MPoly>>) -> MPoly {
    let n = a.len();
    if n == 0 {
        let mut one = MPoly::zero();
        one.add_term(Vec::new(), Rational::one());
        return one;
    }
    let mut negate = false;
    let mut prev: Option<MPoly> = None;
    for k in 0..n {
        let Some(p) = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].terms.len())
        else {
            return MPoly::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = prow[k].mul(&row[j]).sub(&row[k].mul(&prow[j]));
                row[j] = match &prev {
                    Some(d) => v.div_exact(d),
                    None => v,
                };
            }
            row[k] = MPoly::zero();
        }
        prev = Some(prow[k].clone());
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Resultant of `f` and `g` with respect to variable `var`, using their
/// degrees in `var` as the sizes of the Sylvester matrix. The result does
/// not involve `var`, is homogeneous of degree `q*a + p*b - p*q` (with `a`,
/// `b` the total degrees and `p`, `q` the degrees in `var`), and vanishes
/// identically iff `f` and `g` share a factor of positive degree in `var`.
pub fn sylvester_resultant(f: &HomForm, g: &HomForm, var: usize) -> Result<HomForm> {
    assert_eq!(f.num_vars(), g.num_vars(), "variable count mismatch");
    let nv = f.num_vars();
    assert!(var < nv);
    let (a, b) = (f.degree_in(var) as usize, g.degree_in(var) as usize);
    if f.is_zero() || g.is_zero() || a == 0 || b == 0 {
        return Err(Error::DegenerateLeading);
    }
    let coeffs = |h: &HomForm, deg: usize| -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); deg + 1];
        for (e, c) in h.terms() {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    };
    let fc = coeffs(f, a);
    let gc = coeffs(g, b);
    let degree = (b * f.degree() as usize + a * g.degree() as usize - a * b) as u32;
    let n = a + b;
    let mut m = vec![vec![MPoly::zero(); n]; n];
    for i in 0..b {
        for k in 0..=a {
            m[i][i + k] = fc[a - k].clone();
        }
    }
    for i in 0..a {
        for k in 0..=b {
            m[b + i][i + k] = gc[b - k].clone();
        }
    }
    let det = poly_determinant(m);
    HomForm::try_from_terms(nv, degree, det.terms)
        .map_err(|e| Error::Internal(format!("resultant not homogeneous: {e}")))
}

const CHANGE_ATTEMPTS: usize = 3;

/// Coprimality of two nonzero forms in two or three variables.
///
/// Picks a point `c` with `f(c) g(c) != 0` (random coordinates in -9..9,
/// with a deterministic grid scan as fallback) and restricts both forms to
/// lines through `c`. A common component meets every such line away from
/// `c`, so all restricted resultants vanish; if the forms are coprime, at
/// most `deg f * deg g` lines of the pencil pass through a common point, so
/// one of `deg f * deg g + 1` lines has a nonzero resultant.
pub fn coprime_with<R: Rng>(f: &HomForm, g: &HomForm, rng: &mut R) -> bool {
    assert_eq!(f.num_vars(), g.num_vars(), "variable count mismatch");
    let nv = f.num_vars();
    assert!(nv == 2 || nv == 3, "coprime() supports binary and ternary forms");
    assert!(!f.is_zero() && !g.is_zero(), "coprime() needs nonzero forms");
    if f.degree() == 0 || g.degree() == 0 {
        return true;
    }
    let c = center_point(f, g, rng);
    // A line (or, for binary forms, the whole P^1) not through c.
    let k = c.iter().rposition(|x| !x.is_zero()).unwrap();
    let others: Vec<usize> = (0..nv).filter(|&i| i != k).collect();
    let unit = |i: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); nv];
        v[i] = Rational::one();
        v
    };
    let (a, b) = (f.degree() as usize, g.degree() as usize);
    let candidates: Vec<Vec<Rational>> = if nv == 2 {
        vec![unit(others[0])]
    } else {
        let (base, dir) = (unit(others[0]), unit(others[1]));
        (0..=a * b)
            .map(|t| {
                base.iter()
                    .zip(&dir)
                    .map(|(x, y)| x + y * rat(t as i64))
                    .collect()
            })
            .collect()
    };
    candidates.iter().any(|u| {
        let fu = f.restrict_to_line(u, &c);
        let gu = g.restrict_to_line(u, &c);
        !fu.resultant_formal(a, &gu, b).is_zero()
    })
}

/// Deterministic convenience wrapper around [`coprime_with`].
pub fn coprime(f: &HomForm, g: &HomForm) -> bool {
    let mut rng = StdRng::seed_from_u64(0x00c0_9e1e);
    coprime_with(f, g, &mut rng)
}

fn center_point<R: Rng>(f: &HomForm, g: &HomForm, rng: &mut R) -> Vec<Rational> {
    let nv = f.num_vars();
    let good = |c: &[Rational]| !f.eval(c).is_zero() && !g.eval(c).is_zero();
    for _ in 0..CHANGE_ATTEMPTS {
        let c: Vec<Rational> = (0..nv).map(|_| rat(rng.gen_range(-9..=9))).collect();
        if good(&c) {
            return c;
        }
    }
    // f*g is a nonzero form of degree D, so it cannot vanish on a grid with
    // D + 1 values per coordinate.
    let side = (f.degree() + g.degree() + 1) as i64;
    let mut idx = vec![0i64; nv];
    loop {
        let c: Vec<Rational> = idx.iter().map(|&x| rat(x + 1)).collect();
        if good(&c) {
            return c;
        }
        let mut pos = 0;
        loop {
            idx[pos] += 1;
            if idx[pos] < side {
                break;
            }
            idx[pos] = 0;
            pos += 1;
            assert!(pos < nv, "grid scan exhausted for a nonzero form");
        }
    }
}

/// Degree of the gcd of two binary forms living in variables `x`, `y` of a
/// larger ring. `None` when both forms are zero.
pub fn binary_gcd_degree(r1: &HomForm, r2: &HomForm, x: usize, y: usize) -> Option<usize> {
    match (r1.is_zero(), r2.is_zero()) {
        (true, true) => return None,
        (true, false) => return Some(r2.degree() as usize),
        (false, true) => return Some(r1.degree() as usize),
        _ => {}
    }
    let split = |r: &HomForm| -> (usize, UniPoly) {
        let val = r.terms().map(|(e, _)| e[x]).min().unwrap() as usize;
        let deg = r.degree() as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in r.terms() {
            debug_assert_eq!((e[x] + e[y]) as usize, deg, "not a binary form");
            coeffs[e[y] as usize] += c;
        }
        (val, UniPoly::new(coeffs))
    };
    let (v1, p1) = split(r1);
    let (v2, p2) = split(r2);
    Some(v1.min(v2) + p1.gcd(&p2).degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn var(i: usize) -> HomForm {
        HomForm::var(3, i)
    }

    #[test]
    fn resultant_of_two_linear_forms() {
        let f = var(2).sub(&var(0));
        let g = var(2).sub(&var(1));
        let r = sylvester_resultant(&f, &g, 2).unwrap();
        assert!(r.proportional(&var(1).sub(&var(0))));
    }

    #[test]
    fn resultant_of_form_with_itself_vanishes() {
        let f = var(0).mul(&var(2)).sub(&var(1).pow(2));
        assert!(sylvester_resultant(&f, &f, 2).unwrap().is_zero());
    }

    #[test]
    fn resultant_of_coprime_conics_is_binary_quartic() {
        let c1 = var(0).mul(&var(2)).sub(&var(1).pow(2));
        let c2 = var(0).pow(2).add(&var(1).pow(2)).sub(&var(2).pow(2));
        let r = sylvester_resultant(&c1, &c2, 2).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.degree(), 4);
        assert_eq!(r.degree_in(2), 0);
    }

    #[test]
    fn degenerate_leading_coefficients_are_reported() {
        let f = var(0).mul(&var(1));
        let g = var(0).add(&var(2));
        assert_eq!(sylvester_resultant(&f, &g, 2), Err(Error::DegenerateLeading));
    }

    #[test]
    fn coprime_examples() {
        assert!(coprime(&var(0), &var(1)));
        assert!(!coprime(&var(0).mul(&var(1)), &var(1).mul(&var(2))));
        // common factor free of z is still detected
        let h = var(0).add(&var(1));
        assert!(!coprime(&h.mul(&var(2)), &h.mul(&var(0))));
        let c1 = var(0).mul(&var(2)).sub(&var(1).pow(2));
        assert!(coprime(&c1, &var(0).pow(2).sub(&var(2).pow(2).scale(&rat(2)))));
    }

    #[test]
    fn binary_forms_are_supported() {
        let x = HomForm::var(2, 0);
        let y = HomForm::var(2, 1);
        assert!(coprime(&x, &y));
        assert!(!coprime(&x.mul(&y), &x.pow(2)));
    }

    #[test]
    fn binary_gcd_degree_counts_roots_at_infinity() {
        let x = var(0);
        let y = var(1);
        // x^2 * (y - x) and x * (y + x)
        let r1 = x.pow(2).mul(&y.sub(&x));
        let r2 = x.mul(&y.add(&x));
        assert_eq!(binary_gcd_degree(&r1, &r2, 0, 1), Some(1));
        let r3 = y.sub(&x).mul(&y);
        assert_eq!(binary_gcd_degree(&r1, &r3, 0, 1), Some(1));
        assert_eq!(binary_gcd_degree(&r2, &r3, 0, 1), Some(0));
    }
}
