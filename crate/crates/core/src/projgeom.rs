//! Projective points and hyperplanes, incidence, star configurations and
//! point-set containers.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial, int_to_rat, ints_to_rats, primitive, primitive_from_rationals, Rational};
use crate::exact::{HomForm, RatMatrix};

fn canonical(v: Vec<BigInt>) -> Result<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(primitive(v))
}

/// A point of P^n as a primitive integer vector whose first nonzero entry is
/// positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

/// A hyperplane of P^n, stored like a point in dual coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    coeffs: Vec<BigInt>,
}

macro_rules! projective_vector {
    ($t:ident, $field:ident) => {
        impl $t {
            pub fn new(v: Vec<BigInt>) -> Result<Self> {
                Ok($t {
                    $field: canonical(v)?,
                })
            }

            pub fn from_i64(v: &[i64]) -> Result<Self> {
                Self::new(v.iter().map(|&x| BigInt::from(x)).collect())
            }

            pub fn from_rationals(v: &[Rational]) -> Result<Self> {
                Self::new(primitive_from_rationals(v))
            }

            /// Ambient dimension `n` (the vector has `n + 1` entries).
            pub fn dim(&self) -> usize {
                self.$field.len() - 1
            }

            pub fn as_rationals(&self) -> Vec<Rational> {
                ints_to_rats(&self.$field)
            }

            pub fn entries(&self) -> &[BigInt] {
                &self.$field
            }
        }

        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[{}]", self.$field.iter().join(":"))
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[{}]", self.$field.iter().join(":"))
            }
        }
    };
}

projective_vector!(ProjPoint, coords);
projective_vector!(Hyperplane, coeffs);

impl ProjPoint {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn nonzero_count(&self) -> usize {
        self.coords.iter().filter(|x| !x.is_zero()).count()
    }
}

impl Hyperplane {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, p: &ProjPoint) -> BigInt {
        assert_eq!(self.coeffs.len(), p.coords.len(), "dimension mismatch");
        self.coeffs.iter().zip(&p.coords).map(|(a, b)| a * b).sum()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn to_form(&self) -> HomForm {
        HomForm::linear_int(&self.coeffs)
    }

    pub fn from_form(f: &HomForm) -> Result<Self> {
        if f.degree() != 1 {
            return Err(Error::Parse(format!("not a linear form: {f}")));
        }
        let n = f.num_vars();
        Self::from_rationals(
            &(0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    f.coeff(&e)
                })
                .collect::<Vec<_>>(),
        )
    }
}

fn stacked(rows: &[&[BigInt]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(int_to_rat).collect()).collect())
}

/// Rank of the span of a list of points (or hyperplane coefficient vectors).
pub fn span_rank(rows: &[&[BigInt]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    stacked(rows).rank()
}

/// The common point of `n` hyperplanes in P^n.
pub fn intersect_hyperplanes(hs: &[Hyperplane]) -> Result<ProjPoint> {
    let Some(first) = hs.first() else {
        return Err(Error::NotProper);
    };
    let n = first.dim();
    if hs.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: hs.len(),
        });
    }
    if hs.iter().any(|h| h.dim() != n) {
        return Err(Error::Dimension {
            expected: n,
            got: hs.iter().map(Hyperplane::dim).find(|&d| d != n).unwrap(),
        });
    }
    let m = stacked(&hs.iter().map(|h| h.coeffs()).collect::<Vec<_>>());
    let ker = m.kernel_basis();
    if ker.len() != 1 {
        return Err(Error::NotProper);
    }
    ProjPoint::from_rationals(&ker[0])
}

/// Every `n` of the hyperplanes meet in a point and no `n + 1` of them are
/// concurrent. Checks all subsets.
pub fn meets_properly(hs: &[Hyperplane]) -> bool {
    let Some(first) = hs.first() else {
        return false;
    };
    let n = first.dim();
    if hs.len() < n || hs.iter().any(|h| h.dim() != n) {
        return false;
    }
    let rows: Vec<&[BigInt]> = hs.iter().map(|h| h.coeffs()).collect();
    let full = |k: usize| {
        rows.iter()
            .copied()
            .combinations(k)
            .all(|sub| span_rank(&sub) == k)
    };
    full(n) && (hs.len() == n || full(n + 1))
}

/// A duplicate-free set of points of P^n kept in sorted order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    n: usize,
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet { n, points: Vec::new() }
    }

    pub fn new(n: usize, points: impl IntoIterator<Item = ProjPoint>) -> Result<Self> {
        let mut points: Vec<ProjPoint> = points.into_iter().collect();
        if let Some(p) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::Dimension {
                expected: n,
                got: p.dim(),
            });
        }
        points.sort();
        points.dedup();
        Ok(PointSet { n, points })
    }

    pub fn from_i64(n: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            n,
            rows.iter()
                .map(|r| ProjPoint::from_i64(r))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.n, other.n);
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        PointSet::new(self.n, pts).expect("same dimension")
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            n: self.n,
            points: self
                .points
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn without(&self, p: &ProjPoint) -> PointSet {
        PointSet {
            n: self.n,
            points: self.points.iter().filter(|q| *q != p).cloned().collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(&ProjPoint) -> bool) -> PointSet {
        PointSet {
            n: self.n,
            points: self.points.iter().filter(|p| keep(p)).cloned().collect(),
        }
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| !other.contains(p))
    }
}

/// Points with multiplicities; all multiplicities one is a reduced set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FatScheme {
    n: usize,
    items: Vec<(ProjPoint, u32)>,
}

impl FatScheme {
    pub fn new(n: usize, items: Vec<(ProjPoint, u32)>) -> Result<Self> {
        for (p, m) in &items {
            if p.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: p.dim(),
                });
            }
            if *m == 0 {
                return Err(Error::OutOfRange("multiplicity must be at least 1".into()));
            }
        }
        let support: Vec<&ProjPoint> = items.iter().map(|(p, _)| p).collect();
        if support.iter().duplicates().next().is_some() {
            return Err(Error::OutOfRange("fat scheme support must be distinct".into()));
        }
        Ok(FatScheme { n, items })
    }

    pub fn reduced(points: &PointSet) -> Self {
        FatScheme {
            n: points.n,
            items: points.points.iter().map(|p| (p.clone(), 1)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[(ProjPoint, u32)] {
        &self.items
    }

    /// Sum of `C(n + m - 1, n)` over the points.
    pub fn degree(&self) -> u64 {
        self.items
            .iter()
            .map(|(_, m)| binomial(self.n as u64 + *m as u64 - 1, self.n as u64))
            .sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.items.iter().all(|(_, m)| *m == 1)
    }
}

/// All `n`-wise intersection points of hyperplanes meeting properly.
pub fn star_configuration(hs: &[Hyperplane]) -> Result<PointSet> {
    let Some(first) = hs.first() else {
        return Err(Error::NotProper);
    };
    let n = first.dim();
    if !meets_properly(hs) {
        return Err(Error::NotProper);
    }
    let pts = hs
        .iter()
        .cloned()
        .combinations(n)
        .map(|sub| intersect_hyperplanes(&sub))
        .collect::<Result<Vec<_>>>()?;
    let set = PointSet::new(n, pts)?;
    debug_assert_eq!(set.len() as u64, binomial(hs.len() as u64, n as u64));
    Ok(set)
}

/// Points spanning at most a line.
pub fn collinear(ps: &PointSet) -> bool {
    let rows: Vec<&[BigInt]> = ps.iter().map(|p| p.coords()).collect();
    span_rank(&rows) <= 2
}

pub fn dual_point(h: &Hyperplane) -> ProjPoint {
    ProjPoint {
        coords: h.coeffs.clone(),
    }
}

pub fn dual_line(p: &ProjPoint) -> Hyperplane {
    Hyperplane {
        coeffs: p.coords.clone(),
    }
}

/// The line of P^2 through two distinct points (their cross product).
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<Hyperplane> {
    if p.dim() != 2 || q.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: if p.dim() != 2 { p.dim() } else { q.dim() },
        });
    }
    Hyperplane::new(cross(p.coords(), q.coords())).map_err(|_| Error::Degenerate("coincident points".into()))
}

/// Cross product of two vectors of length 3.
pub fn cross(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    cross(a, b).iter().zip(c).map(|(x, y)| x * y).sum()
}

/// Evaluates a form at a point, returning only whether it vanishes.
pub fn vanishes_at(f: &HomForm, p: &ProjPoint) -> bool {
    f.eval_int(p.coords()).is_zero()
}

pub fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: &[i64]) -> Hyperplane {
        Hyperplane::from_i64(v).unwrap()
    }

    fn p(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[-2, 4, -6]).coords(), p(&[1, -2, 3]).coords());
        assert_eq!(p(&[0, -3, 0]), p(&[0, 1, 0]));
        assert_eq!(ProjPoint::from_i64(&[0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect_hyperplanes(&[h(&[1, 0, 0]), h(&[0, 1, 0])]).unwrap(), p(&[0, 0, 1]));
        // tangents t^2 x - 2 t y + z at t = 0 and t = 1
        assert_eq!(intersect_hyperplanes(&[h(&[0, 0, 1]), h(&[1, -2, 1])]).unwrap(), p(&[2, 1, 0]));
        assert_eq!(
            intersect_hyperplanes(&[h(&[1, 0, 0]), h(&[2, 0, 0])]),
            Err(Error::NotProper)
        );
    }

    #[test]
    fn meets_properly_examples() {
        assert!(meets_properly(&[h(&[1, 0, 0]), h(&[0, 1, 0]), h(&[0, 0, 1]), h(&[1, 1, 1])]));
        assert!(!meets_properly(&[h(&[1, 0, 0]), h(&[0, 1, 0]), h(&[1, 1, 0])]));
    }

    #[test]
    fn star_configuration_sizes() {
        let one = star_configuration(&[h(&[1, 0, 0]), h(&[0, 1, 0])]).unwrap();
        assert_eq!(one.len(), 1);
        let tangents: Vec<Hyperplane> = [0i64, 1, 2, 3].iter().map(|&t| h(&[t * t, -2 * t, 1])).collect();
        let s = star_configuration(&tangents).unwrap();
        // the tangents at t, u meet at [2 : t + u : 2tu]
        let expected = PointSet::from_i64(
            2,
            &[&[2, 1, 0], &[2, 2, 0], &[2, 3, 0], &[2, 3, 4], &[2, 4, 6], &[2, 5, 12]],
        )
        .unwrap();
        assert_eq!(s, expected);
        let five: Vec<Hyperplane> = (0i64..5).map(|t| h(&[t * t, -2 * t, 1])).collect();
        assert_eq!(star_configuration(&five).unwrap().len(), 10);
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&PointSet::from_i64(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap()));
        assert!(!collinear(&PointSet::from_i64(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()));
    }

    #[test]
    fn duality_round_trip() {
        assert_eq!(dual_point(&h(&[0, 0, 1])), p(&[0, 0, 1]));
        let q = p(&[3, -1, 7]);
        assert_eq!(dual_point(&dual_line(&q)), q);
    }

    #[test]
    fn fat_scheme_degree() {
        let z = FatScheme::new(2, vec![(p(&[1, 0, 0]), 3), (p(&[0, 1, 0]), 1)]).unwrap();
        assert_eq!(z.degree(), 7);
        let z3 = FatScheme::new(3, vec![(p(&[1, 0, 0, 0]), 2)]).unwrap();
        assert_eq!(z3.degree(), 4);
        assert!(FatScheme::new(2, vec![(p(&[1, 0, 0]), 1), (p(&[2, 0, 0]), 2)]).is_err());
    }
}
