//! Rational normal curves, their osculating hyperplanes and flats, contact
//! star configurations and plane-conic helpers.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::rational::{int_to_rat, primitive};
use crate::exact::{monomials, HomForm, RatMatrix, Rational};
use crate::projgeom::{meets_properly, star_configuration, Hyperplane, PointSet, ProjPoint};

/// A point `[a:b]` of the parameter line, stored primitive with first
/// nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryParam {
    a: BigInt,
    b: BigInt,
}

impl BinaryParam {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let v = primitive(vec![a, b]);
        let [a, b]: [BigInt; 2] = v.try_into().expect("two entries");
        Ok(BinaryParam { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(a.into(), b.into())
    }

    /// The affine parameter `t`, i.e. `[1:t]`.
    pub fn affine(t: i64) -> Self {
        Self::from_i64(1, t).expect("nonzero")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    fn pair(&self) -> [Rational; 2] {
        [int_to_rat(&self.a), int_to_rat(&self.b)]
    }
}

impl fmt::Debug for BinaryParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

impl fmt::Display for BinaryParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

/// Matrix whose row `i` holds the coefficients of binary form `i` in the
/// degree-`d` monomial basis.
pub fn binary_coefficient_matrix(forms: &[HomForm]) -> RatMatrix {
    RatMatrix::from_rows(forms.iter().map(HomForm::coefficient_vector).collect())
}

/// A rational normal curve of P^n given by `n + 1` binary forms of degree `n`
/// that form a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Rnc {
    n: usize,
    forms: Vec<HomForm>,
}

impl Rnc {
    pub fn new(forms: Vec<HomForm>) -> Result<Self> {
        let n = forms.len().checked_sub(1).ok_or(Error::NotRnc)?;
        if n < 1
            || forms
                .iter()
                .any(|f| f.num_vars() != 2 || f.degree() as usize != n)
        {
            return Err(Error::NotRnc);
        }
        if binary_coefficient_matrix(&forms).rank() != n + 1 {
            return Err(Error::NotRnc);
        }
        Ok(Rnc { n, forms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[HomForm] {
        &self.forms
    }
}

/// `[s^n : s^(n-1) t : ... : t^n]`.
pub fn standard_rnc(n: usize) -> Rnc {
    assert!(n >= 1, "rational normal curve needs n >= 1");
    let forms = monomials(2, n as u32)
        .into_iter()
        .map(|e| HomForm::from_terms(2, n as u32, [(e, Rational::one())]))
        .collect();
    Rnc::new(forms).expect("monomials form a basis")
}

pub fn rnc_point(gamma: &Rnc, p: &BinaryParam) -> ProjPoint {
    let v: Vec<Rational> = gamma.forms.iter().map(|f| f.eval(&p.pair())).collect();
    ProjPoint::from_rationals(&v).expect("a basis of forms has no common zero")
}

/// Rows `0..=d` are the Taylor coefficients of the parametrization at `p`;
/// their span is the osculating `d`-flat.
pub fn osculating_flat(gamma: &Rnc, p: &BinaryParam, d: usize) -> Vec<Vec<Rational>> {
    let base = p.pair();
    let dir = [-base[1].clone(), base[0].clone()];
    let expansions: Vec<Vec<Rational>> = gamma
        .forms
        .iter()
        .map(|f| {
            let u = f.restrict_to_line(&base, &dir);
            (0..=gamma.n)
                .map(|k| u.coeffs().get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    (0..=d.min(gamma.n))
        .map(|k| expansions.iter().map(|e| e[k].clone()).collect())
        .collect()
}

/// The binary form `sum_i c_i phi_i`.
pub fn pullback(gamma: &Rnc, h: &Hyperplane) -> HomForm {
    gamma
        .forms
        .iter()
        .zip(h.coeffs())
        .fold(HomForm::zero(2, gamma.n as u32), |acc, (f, c)| {
            acc.add(&f.scale(&int_to_rat(c)))
        })
}

/// `(b s - a t)^n`, the binary form vanishing to order `n` at `[a:b]`.
pub fn full_contact_form(p: &BinaryParam, n: usize) -> HomForm {
    let [a, b] = p.pair();
    HomForm::linear(&[b, -a]).pow(n as u32)
}

pub fn osculating_hyperplane(gamma: &Rnc, p: &BinaryParam) -> Result<Hyperplane> {
    let rows = osculating_flat(gamma, p, gamma.n - 1);
    let ker = RatMatrix::from_rows(rows).kernel_basis();
    if ker.len() != 1 {
        return Err(Error::Internal(format!(
            "osculating flat at {p} has kernel of dimension {}",
            ker.len()
        )));
    }
    let h = Hyperplane::from_rationals(&ker[0])?;
    if !pullback(gamma, &h).proportional(&full_contact_form(p, gamma.n)) {
        return Err(Error::Internal(format!(
            "osculating hyperplane at {p} lacks full contact"
        )));
    }
    Ok(h)
}

/// Star configuration of osculating hyperplanes at distinct parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactStar {
    pub rnc: Rnc,
    pub params: Vec<BinaryParam>,
    pub hyperplanes: Vec<Hyperplane>,
    pub points: PointSet,
}

impl ContactStar {
    pub fn ambient_dim(&self) -> usize {
        self.rnc.ambient_dim()
    }
}

pub fn contact_star(gamma: &Rnc, params: &[BinaryParam]) -> Result<ContactStar> {
    let n = gamma.ambient_dim();
    if params.len() < n {
        return Err(Error::OutOfRange(format!(
            "a contact star in P^{n} needs at least {n} parameters, got {}",
            params.len()
        )));
    }
    if params.iter().duplicates().next().is_some() {
        return Err(Error::DuplicateParameters);
    }
    let hyperplanes = params
        .iter()
        .map(|p| osculating_hyperplane(gamma, p))
        .collect::<Result<Vec<_>>>()?;
    if !meets_properly(&hyperplanes) {
        return Err(Error::Internal("osculating hyperplanes do not meet properly".into()));
    }
    let points = star_configuration(&hyperplanes)?;
    Ok(ContactStar {
        rnc: gamma.clone(),
        params: params.to_vec(),
        hyperplanes,
        points,
    })
}

/// `r` distinct parameters with entries in `-20..=20`.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R, r: usize) -> Vec<BinaryParam> {
    let mut out: Vec<BinaryParam> = Vec::with_capacity(r);
    while out.len() < r {
        let (a, b) = (rng.gen_range(-20i64..=20), rng.gen_range(-20i64..=20));
        if let Ok(p) = BinaryParam::from_i64(a, b) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Tangent line of a conic at a smooth point on it.
pub fn tangent_line_conic(c: &HomForm, p: &ProjPoint) -> Result<Hyperplane> {
    if c.num_vars() != 3 || c.degree() != 2 {
        return Err(Error::Degenerate(format!("not a plane conic: {c}")));
    }
    if !c.eval_int(p.coords()).is_zero() {
        return Err(Error::Degenerate(format!("{p} is not on the conic")));
    }
    let grad = c.gradient_at(&p.as_rationals());
    Hyperplane::from_rationals(&grad).map_err(|_| Error::SingularPoint)
}

/// Rows of the evaluation matrix of degree-`d` monomials at the points.
pub fn evaluation_matrix(points: &[ProjPoint], d: u32) -> RatMatrix {
    let Some(first) = points.first() else {
        return RatMatrix::zeros(0, 0);
    };
    let mons = monomials(first.dim() + 1, d);
    RatMatrix::from_rows(
        points
            .iter()
            .map(|p| {
                mons.iter()
                    .map(|e| {
                        int_to_rat(
                            &p.coords()
                                .iter()
                                .zip(e)
                                .map(|(x, &k)| x.pow(k))
                                .product::<BigInt>(),
                        )
                    })
                    .collect()
            })
            .collect(),
    )
}

/// The forms of degree `d` through the points, as a basis of the kernel.
pub fn forms_through(points: &[ProjPoint], n: usize, d: u32) -> Vec<HomForm> {
    if points.is_empty() {
        return monomials(n + 1, d)
            .into_iter()
            .map(|e| HomForm::from_terms(n + 1, d, [(e, Rational::one())]))
            .collect();
    }
    evaluation_matrix(points, d)
        .kernel_basis()
        .iter()
        .map(|v| HomForm::from_coefficient_vector(n + 1, d, v))
        .collect()
}

pub fn conic_through_five(ps: &[ProjPoint]) -> Result<HomForm> {
    if ps.len() != 5 || ps.iter().any(|p| p.dim() != 2) {
        return Err(Error::ConicNotUnique);
    }
    let forms = forms_through(ps, 2, 2);
    if forms.len() != 1 {
        return Err(Error::ConicNotUnique);
    }
    Ok(forms.into_iter().next().unwrap().normalized())
}

/// Rational parametrization of a conic from a smooth rational point `p` on
/// it: the line through `p` and `Q = [s : t : 0]` (or another coordinate
/// line avoiding `p`) meets the conic again at `C(Q) p - 2 B(p, Q) Q`.
pub fn conic_parametrization(c: &HomForm, p: &ProjPoint) -> Result<[HomForm; 3]> {
    tangent_line_conic(c, p)?;
    let pr = p.as_rationals();
    // coordinate line x_k = 0 with p_k != 0
    let k = (0..3).rev().find(|&k| !pr[k].is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let q: Vec<HomForm> = (0..3)
        .map(|i| match others.iter().position(|&o| o == i) {
            Some(j) => HomForm::var(2, j),
            None => HomForm::zero(2, 1),
        })
        .collect();
    let c_of_q = c.terms().fold(HomForm::zero(2, 2), |acc, (e, coeff)| {
        let mono = e
            .iter()
            .enumerate()
            .fold(HomForm::constant(2, coeff.clone()), |m, (i, &k)| m.mul(&q[i].pow(k)));
        acc.add(&mono)
    });
    // 2 B(p, Q) is the gradient of C at p applied to Q
    let two_b = c
        .gradient_at(&pr)
        .iter()
        .zip(&q)
        .fold(HomForm::zero(2, 1), |acc, (g, qi)| acc.add(&qi.scale(g)));
    let forms: Vec<HomForm> = (0..3)
        .map(|i| c_of_q.scale(&pr[i]).sub(&two_b.mul(&q[i])))
        .collect();
    Ok(forms.try_into().expect("three forms"))
}
