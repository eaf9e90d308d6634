//! Sparse homogeneous multivariate polynomials over Q.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{int_to_rat, primitive_from_rationals, Rational};
use super::univariate::UniPoly;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Homogeneous form in `num_vars` variables. Every stored exponent vector
/// sums to `degree` and no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomForm {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

/// All exponent vectors of the given degree, in descending lexicographic
/// order (`x0^d` first). This is the column order of every evaluation
/// matrix in the crate.
pub fn monomials(num_vars: usize, degree: u32) -> Vec<Exponent> {
    fn rec(prefix: &mut Exponent, left: usize, degree: u32, out: &mut Vec<Exponent>) {
        if left == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(prefix, left - 1, degree - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        return out;
    }
    rec(&mut Vec::with_capacity(num_vars), num_vars, degree, &mut out);
    out
}

const VAR_NAMES: [&str; 5] = ["x", "y", "z", "t", "w"];

pub fn var_name(num_vars: usize, i: usize) -> String {
    if num_vars <= VAR_NAMES.len() {
        VAR_NAMES[i].to_string()
    } else {
        format!("x{i}")
    }
}

impl HomForm {
    pub fn zero(num_vars: usize, degree: u32) -> Self {
        HomForm {
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::from_terms(num_vars, 0, [(vec![0; num_vars], c)])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::from_terms(num_vars, 1, [(e, Rational::one())])
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            1,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    pub fn linear_int(coeffs: &[BigInt]) -> Self {
        Self::linear(&coeffs.iter().map(int_to_rat).collect::<Vec<_>>())
    }

    /// Panics if an exponent has the wrong length or degree.
    pub fn from_terms<I>(num_vars: usize, degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        Self::try_from_terms(num_vars, degree, terms).expect("malformed homogeneous form")
    }

    pub fn try_from_terms<I>(num_vars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut f = Self::zero(num_vars, degree);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::Dimension {
                    expected: num_vars,
                    got: e.len(),
                });
            }
            if e.iter().sum::<u32>() != degree {
                return Err(Error::Parse(format!("exponent {e:?} is not of degree {degree}")));
            }
            f.add_term(e, c);
        }
        Ok(f)
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

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending lexicographic (= graded lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars, "point dimension mismatch");
        let d = self.degree as usize;
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|x| {
                let mut p = Vec::with_capacity(d + 1);
                p.push(Rational::one());
                for k in 0..d {
                    let next = &p[k] * x;
                    p.push(next);
                }
                p
            })
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(c.clone(), |acc, (i, &k)| acc * &powers[i][k as usize])
            })
            .sum()
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Rational {
        self.eval(&point.iter().map(int_to_rat).collect::<Vec<_>>())
    }

    pub fn partial(&self, var: usize) -> HomForm {
        assert!(var < self.num_vars);
        let mut out = HomForm::zero(self.num_vars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * Rational::from_integer(e[var].into()));
        }
        out
    }

    pub fn gradient_at(&self, point: &[Rational]) -> Vec<Rational> {
        (0..self.num_vars).map(|i| self.partial(i).eval(point)).collect()
    }

    fn check_compatible(&self, other: &HomForm) {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
    }

    /// Sum of two forms of equal degree; a zero summand adopts the other's
    /// degree.
    pub fn add(&self, other: &HomForm) -> HomForm {
        self.check_compatible(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> HomForm {
        HomForm {
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &HomForm) -> HomForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rational) -> HomForm {
        if k.is_zero() {
            return HomForm::zero(self.num_vars, self.degree);
        }
        HomForm {
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &HomForm) -> HomForm {
        self.check_compatible(other);
        let mut out = HomForm::zero(self.num_vars, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> HomForm {
        let mut acc = HomForm::constant(self.num_vars, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Linear change of variables `x_i -> sum_j m[i][j] x_j`, i.e. the form
    /// `F(M x)`.
    pub fn substitute_linear(&self, m: &[Vec<Rational>]) -> HomForm {
        assert_eq!(m.len(), self.num_vars);
        let images: Vec<HomForm> = m.iter().map(|row| HomForm::linear(row)).collect();
        let d = self.degree as usize;
        let powers: Vec<Vec<HomForm>> = images
            .iter()
            .map(|l| {
                let mut p = vec![HomForm::constant(self.num_vars, Rational::one())];
                for k in 0..d {
                    let next = p[k].mul(l);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = HomForm::zero(self.num_vars, self.degree);
        for (e, c) in &self.terms {
            let mut t = HomForm::constant(self.num_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&t);
        }
        out.degree = self.degree;
        out
    }

    /// Restriction to the parametrized line `u + s c`, as a polynomial in
    /// `s`. Its coefficient of `s^degree` is `F(c)`.
    pub fn restrict_to_line(&self, u: &[Rational], c: &[Rational]) -> UniPoly {
        let d = self.degree as usize;
        let lin: Vec<UniPoly> = u
            .iter()
            .zip(c)
            .map(|(a, b)| UniPoly::new(vec![a.clone(), b.clone()]))
            .collect();
        let powers: Vec<Vec<UniPoly>> = lin
            .iter()
            .map(|l| {
                let mut p = vec![UniPoly::new(vec![Rational::one()])];
                for k in 0..d {
                    let next = p[k].mul(l);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = vec![Rational::zero(); d + 1];
        for (e, coeff) in &self.terms {
            let mut t = UniPoly::new(vec![coeff.clone()]);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            for (k, v) in t.coeffs().iter().enumerate() {
                acc[k] += v;
            }
        }
        UniPoly::new(acc)
    }

    /// Coefficients in the order of [`monomials`].
    pub fn coefficient_vector(&self) -> Vec<Rational> {
        monomials(self.num_vars, self.degree)
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    pub fn from_coefficient_vector(num_vars: usize, degree: u32, v: &[Rational]) -> HomForm {
        let mons = monomials(num_vars, degree);
        assert_eq!(mons.len(), v.len(), "coefficient vector length");
        Self::from_terms(num_vars, degree, mons.into_iter().zip(v.iter().cloned()))
    }

    /// Scalar multiple with primitive integer coefficients and a positive
    /// leading coefficient.
    pub fn normalized(&self) -> HomForm {
        if self.is_zero() {
            return self.clone();
        }
        let v = self.coefficient_vector();
        let p = primitive_from_rationals(&v);
        HomForm::from_coefficient_vector(
            self.num_vars,
            self.degree,
            &p.iter().map(int_to_rat).collect::<Vec<_>>(),
        )
    }

    /// True when the two forms differ by a nonzero scalar (two zero forms
    /// count as proportional).
    pub fn proportional(&self, other: &HomForm) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.num_vars == other.num_vars
            && self.degree == other.degree
            && self.normalized() == other.normalized()
    }
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let v = var_name(self.num_vars, i);
                    if k == 1 {
                        v
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomForm[{}; deg {}]({self})", self.num_vars, self.degree)
    }
}

/// Parses a linear form such as `"x+y-z"`, `"2x - 3/2*y"` or `"x0 - x3"`.
pub fn parse_linear_form(s: &str, num_vars: usize) -> Result<Vec<Rational>> {
    let mut coeffs = vec![Rational::zero(); num_vars];
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty linear form".into()));
    }
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('/') {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    for chunk in chunks {
        let (sign, body) = match chunk.strip_prefix('-') {
            Some(b) => (-Rational::one(), b),
            None => (Rational::one(), chunk.strip_prefix('+').unwrap_or(&chunk)),
        };
        let split = body
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(|| Error::Parse(format!("term without variable: {chunk:?}")))?;
        let (num, var) = body.split_at(split);
        let num = num.trim_end_matches('*');
        let c = if num.is_empty() {
            Rational::one()
        } else {
            super::rational::parse_rational(num)?
        };
        let idx = (0..num_vars)
            .find(|&i| var_name(num_vars, i) == var || format!("x{i}") == var)
            .ok_or_else(|| Error::Parse(format!("unknown variable {var:?}")))?;
        coeffs[idx] += sign * c;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn lin(c: &[i64]) -> HomForm {
        HomForm::linear(&c.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    fn pt(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&x| rat(x)).collect()
    }

    fn remark_conic() -> HomForm {
        // (x + y - z)^2 - 4xy
        let l = lin(&[1, 1, -1]);
        let xy = HomForm::var(3, 0).mul(&HomForm::var(3, 1)).scale(&rat(4));
        l.pow(2).sub(&xy)
    }

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m[5], vec![0, 0, 2]);
        assert_eq!(monomials(4, 3).len(), 20);
    }

    #[test]
    fn eval_examples() {
        let l = lin(&[1, 1, -1]);
        assert_eq!(l.eval(&pt(&[1, 1, 2])), rat(0));
        assert_eq!(l.eval(&pt(&[1, 0, 0])), rat(1));
        assert_eq!(remark_conic().eval(&pt(&[1, 1, 4])), rat(0));
    }

    #[test]
    fn partial_examples() {
        let x2y = HomForm::var(3, 0).pow(2).mul(&HomForm::var(3, 1));
        let expected = HomForm::var(3, 0).mul(&HomForm::var(3, 1)).scale(&rat(2));
        assert_eq!(x2y.partial(0), expected);
        assert!(x2y.partial(2).is_zero());
        // gradient of the conic at [1:1:4] is proportional to its tangent
        let g = remark_conic().gradient_at(&pt(&[1, 1, 4]));
        // tangent at P*P for P = [1:1:2]: the line P*l = 2x + 2y - z
        let t = HomForm::linear(&g);
        assert!(t.proportional(&lin(&[2, 2, -1])));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(remark_conic().to_string(), "x^2 - 2*x*y - 2*x*z + y^2 - 2*y*z + z^2");
        assert_eq!(parse_linear_form("x+y-z", 3).unwrap(), pt(&[1, 1, -1]));
        assert_eq!(
            parse_linear_form("2x - 3/2*y", 3).unwrap(),
            vec![rat(2), Rational::new((-3).into(), 2.into()), rat(0)]
        );
        assert_eq!(parse_linear_form("z - x - y", 4).unwrap(), pt(&[-1, -1, 1, 0]));
        assert!(parse_linear_form("x + q", 3).is_err());
    }

    #[test]
    fn restriction_matches_evaluation() {
        let f = remark_conic();
        let u = pt(&[1, 2, 3]);
        let c = pt(&[0, 1, -1]);
        let r = f.restrict_to_line(&u, &c);
        for s in -3..4 {
            let p: Vec<Rational> = u.iter().zip(&c).map(|(a, b)| a + b * rat(s)).collect();
            assert_eq!(r.eval(&rat(s)), f.eval(&p));
        }
        assert_eq!(r.coeffs().get(2).cloned().unwrap_or_default(), f.eval(&c));
    }

    #[test]
    fn substitution_composes() {
        let f = remark_conic();
        let m = vec![pt(&[1, 2, 0]), pt(&[0, 1, 1]), pt(&[3, 0, 1])];
        let g = f.substitute_linear(&m);
        let x = pt(&[2, -1, 5]);
        let mx: Vec<Rational> = m
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        assert_eq!(g.eval(&x), f.eval(&mx));
    }
}
