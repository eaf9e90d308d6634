//! Hadamard (coordinate-wise) products of points, square-free Hadamard
//! powers of point sets and coordinate-wise powers of lines.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::int_to_rat;
use crate::exact::{HomForm, RatMatrix, Rational};
use crate::projgeom::{span_rank, Hyperplane, PointSet, ProjPoint};
use crate::rnc::{binary_coefficient_matrix, BinaryParam, Rnc};

pub fn had_point(p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
    if p.dim() != q.dim() {
        return Err(Error::Dimension {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let v: Vec<BigInt> = p.coords().iter().zip(q.coords()).map(|(a, b)| a * b).collect();
    ProjPoint::new(v).map_err(|_| Error::HadamardUndefined)
}

/// Hadamard product of a nonempty list of points.
pub fn had_product<'a>(ps: impl IntoIterator<Item = &'a ProjPoint>) -> Result<ProjPoint> {
    let mut it = ps.into_iter();
    let first = it.next().ok_or(Error::HadamardUndefined)?.clone();
    it.try_fold(first, |acc, p| had_point(&acc, p))
}

/// Hadamard products of all `r`-subsets of distinct points of `x`.
pub fn sqfree_had_power(x: &PointSet, r: usize) -> Result<PointSet> {
    if r == 0 || r > x.len() {
        return Err(Error::OutOfRange(format!(
            "square-free power {r} of a set of {} points",
            x.len()
        )));
    }
    let pts = x
        .points()
        .iter()
        .combinations(r)
        .map(had_product)
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(x.ambient_dim(), pts)
}

/// Whether `p` lies in the locus of points with at most `i + 1` nonzero
/// coordinates.
pub fn delta_membership(p: &ProjPoint, i: usize) -> bool {
    p.nonzero_count() <= i + 1
}

/// A line of P^n through two distinct points `p`, `q`, parametrized as
/// `a p + b q`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineParam {
    p: ProjPoint,
    q: ProjPoint,
}

impl LineParam {
    pub fn new(p: ProjPoint, q: ProjPoint) -> Result<Self> {
        if p.dim() != q.dim() {
            return Err(Error::Dimension {
                expected: p.dim(),
                got: q.dim(),
            });
        }
        if p == q {
            return Err(Error::Degenerate("a line needs two distinct points".into()));
        }
        Ok(LineParam { p, q })
    }

    /// The line cut out by `n - 1` independent linear forms in P^n.
    pub fn from_equations(eqs: &[Vec<Rational>]) -> Result<Self> {
        let ker = RatMatrix::from_rows(eqs.to_vec()).kernel_basis();
        if ker.len() != 2 {
            return Err(Error::Degenerate(format!(
                "equations cut out a space of projective dimension {}",
                ker.len() as isize - 1
            )));
        }
        Self::new(
            ProjPoint::from_rationals(&ker[0])?,
            ProjPoint::from_rationals(&ker[1])?,
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.p.dim()
    }

    pub fn base_points(&self) -> (&ProjPoint, &ProjPoint) {
        (&self.p, &self.q)
    }

    /// The binary linear forms `L_i(a, b) = a p_i + b q_i`.
    pub fn forms(&self) -> Vec<HomForm> {
        self.p
            .coords()
            .iter()
            .zip(self.q.coords())
            .map(|(a, b)| HomForm::linear(&[int_to_rat(a), int_to_rat(b)]))
            .collect()
    }

    pub fn point_at(&self, t: &BinaryParam) -> ProjPoint {
        let v: Vec<BigInt> = self
            .p
            .coords()
            .iter()
            .zip(self.q.coords())
            .map(|(x, y)| t.a() * x + t.b() * y)
            .collect();
        ProjPoint::new(v).expect("base points are independent")
    }

    /// The parameter of a point of the line, or `None` off the line.
    pub fn param_of(&self, x: &ProjPoint) -> Option<BinaryParam> {
        let rows = [self.p.coords(), self.q.coords(), x.coords()];
        if x.dim() != self.ambient_dim() || span_rank(&rows) != 2 {
            return None;
        }
        let m = RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(int_to_rat).collect())
                .collect(),
        )
        .transpose();
        // a p + b q - c x = 0 with c != 0
        let ker = m.kernel_basis();
        let v = ker.first()?;
        let c = &v[2];
        let a = &v[0] / c;
        let b = &v[1] / c;
        let pr = crate::exact::rational::primitive_from_rationals(&[a, b]);
        BinaryParam::new(pr[0].clone(), pr[1].clone()).ok()
    }

    /// True when every `n - i` of the forms `L_j` are without a common root,
    /// i.e. no point of the line has `n - i` vanishing coordinates.
    pub fn avoids_delta(&self, i: usize) -> bool {
        line_avoids_delta(self, i)
    }
}

pub fn line_avoids_delta(l: &LineParam, i: usize) -> bool {
    let n = l.ambient_dim();
    if i >= n {
        return false;
    }
    let cols: Vec<[&BigInt; 2]> = l.p.coords().iter().zip(l.q.coords()).map(|(a, b)| [a, b]).collect();
    cols.iter().combinations(n - i).all(|sub| {
        // the forms share a root iff the 2 x k matrix of their coefficients
        // has rank at most one
        sub.iter().tuple_combinations().any(|(u, v)| !(u[0] * v[1] - u[1] * v[0]).is_zero())
    })
}

/// Coordinate-wise `k`-th power of the line: the forms `L_i^k` and whether
/// they parametrize a rational normal curve (`k` equal to the ambient
/// dimension and the forms a basis).
pub fn coordinate_power_line(l: &LineParam, k: u32) -> (Vec<HomForm>, bool) {
    let forms: Vec<HomForm> = l.forms().iter().map(|f| f.pow(k)).collect();
    let is_rnc = forms.len() == k as usize + 1 && binary_coefficient_matrix(&forms).rank() == forms.len();
    (forms, is_rnc)
}

/// The curve `l^{∘n}` in P^n.
pub fn power_curve(l: &LineParam) -> Result<Rnc> {
    let (forms, is_rnc) = coordinate_power_line(l, l.ambient_dim() as u32);
    if !is_rnc {
        return Err(Error::NotRnc);
    }
    Rnc::new(forms)
}

fn had_power_vec(p: &[BigInt], k: u32) -> Vec<BigInt> {
    p.iter().map(|x| x.pow(k)).collect()
}

fn had_mul_vec(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    p.iter().zip(q).map(|(a, b)| a * b).collect()
}

/// The linear span of `l^{⋆(n-1)}`, a hyperplane when `l` avoids the
/// coordinate strata.
pub fn line_had_power_hyperplane(l: &LineParam) -> Result<Hyperplane> {
    let n = l.ambient_dim() as u32;
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            had_mul_vec(&had_power_vec(l.p.coords(), n - 1 - i), &had_power_vec(l.q.coords(), i))
                .iter()
                .map(int_to_rat)
                .collect()
        })
        .collect();
    let ker = RatMatrix::from_rows(rows).kernel_basis();
    if ker.len() != 1 {
        return Err(Error::NotHyperplane);
    }
    Hyperplane::from_rationals(&ker[0])
}

/// `P ⋆ H`: the hyperplane with coefficients `c_i / p_i`, which contains
/// `P ⋆ Q` for every `Q` on `H`.
pub fn had_point_hyperplane(p: &ProjPoint, h: &Hyperplane) -> Result<Hyperplane> {
    if p.dim() != h.dim() {
        return Err(Error::Dimension {
            expected: h.dim(),
            got: p.dim(),
        });
    }
    if p.coords().iter().any(Zero::is_zero) {
        return Err(Error::NotHyperplane);
    }
    let v: Vec<Rational> = h
        .coeffs()
        .iter()
        .zip(p.coords())
        .map(|(c, x)| Rational::new(c.clone(), x.clone()))
        .collect();
    Hyperplane::from_rationals(&v)
}

/// Spanning vectors `P^{⋆(n-i)} ⋆ Q^{⋆i}`, `i = 0..=d`, of the osculating
/// `d`-flat to `l^{∘n}` at `P^{⋆n}`, with `Q` the second base point of the
/// line (the first when `P` is the second).
pub fn osculating_flat_hadamard(p: &ProjPoint, l: &LineParam, d: usize) -> Result<Vec<Vec<Rational>>> {
    if l.param_of(p).is_none() {
        return Err(Error::Degenerate(format!("{p} is not on the line")));
    }
    let q = if *p == l.q { &l.p } else { &l.q };
    let n = l.ambient_dim() as u32;
    Ok((0..=d.min(n as usize) as u32)
        .map(|i| {
            had_mul_vec(&had_power_vec(p.coords(), n - i), &had_power_vec(q.coords(), i))
                .iter()
                .map(int_to_rat)
                .collect()
        })
        .collect())
}

/// Implicit equation of the conic `l^{∘2}` for a line `l` of P^2.
pub fn implicit_conic(line: &Hyperplane) -> Result<HomForm> {
    if line.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: line.dim(),
        });
    }
    let c = line.as_rationals();
    // move a coordinate with nonzero coefficient to the last slot
    let k = (0..3).rev().find(|&k| !c[k].is_zero()).expect("nonzero line");
    let mut order = [0usize, 1, 2];
    order.swap(k, 2);
    let alpha = -&c[order[0]] / &c[order[2]];
    let beta = -&c[order[1]] / &c[order[2]];
    let (a2, b2) = (&alpha * &alpha, &beta * &beta);
    let var = |i: usize| HomForm::var(3, order[i]);
    let lin = var(0)
        .scale(&a2)
        .add(&var(1).scale(&b2))
        .sub(&var(2));
    let four = Rational::from_integer(4.into());
    let conic = lin.pow(2).sub(&var(0).mul(&var(1)).scale(&(four * a2 * b2)));
    if conic.is_zero() {
        return Err(Error::Degenerate("coordinate square of the line is degenerate".into()));
    }
    Ok(conic.normalized())
}

/// The all-ones point, the identity for the Hadamard product.
pub fn hadamard_identity(n: usize) -> ProjPoint {
    ProjPoint::new(vec![BigInt::one(); n + 1]).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::projgeom::{intersect_hyperplanes, star_configuration};
    use crate::rnc::{osculating_flat, osculating_hyperplane, tangent_line_conic};

    fn p(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    fn set(n: usize, rows: &[&[i64]]) -> PointSet {
        PointSet::from_i64(n, rows).unwrap()
    }

    #[test]
    fn point_products() {
        assert_eq!(had_point(&p(&[1, 1, 2]), &p(&[1, 2, 3])).unwrap(), p(&[1, 2, 6]));
        assert_eq!(had_point(&p(&[1, -1, 0]), &p(&[1, -2, -1])).unwrap(), p(&[1, 2, 0]));
        assert_eq!(had_point(&p(&[3, -1, 7]), &hadamard_identity(2)).unwrap(), p(&[3, -1, 7]));
        assert_eq!(had_point(&p(&[1, 0, 0]), &p(&[0, 1, 1])), Err(Error::HadamardUndefined));
    }

    #[test]
    fn plane_example_powers() {
        let x = set(2, &[&[1, 1, 2], &[1, 2, 3], &[1, 3, 4], &[1, 4, 5]]);
        let y = set(2, &[&[1, -1, 0], &[1, -2, -1], &[1, -3, -2]]);
        assert_eq!(
            sqfree_had_power(&x, 2).unwrap(),
            set(2, &[&[1, 2, 6], &[1, 3, 8], &[1, 4, 10], &[1, 6, 12], &[1, 8, 15], &[1, 12, 20]])
        );
        assert_eq!(sqfree_had_power(&y, 2).unwrap(), set(2, &[&[1, 2, 0], &[1, 3, 0], &[1, 6, 2]]));
        assert_eq!(sqfree_had_power(&y, 3).unwrap().len(), 1);
    }

    #[test]
    fn space_example_powers() {
        let x = set(3, &[&[1, 1, 2, 0], &[1, 2, 3, 1], &[1, 3, 4, 2], &[1, 4, 5, 3]]);
        let y = set(3, &[&[1, -1, 0, -2], &[1, -2, -1, -3], &[1, -3, -2, -4], &[1, -4, -3, -5]]);
        assert_eq!(
            sqfree_had_power(&x, 3).unwrap(),
            set(3, &[&[1, 6, 24, 0], &[1, 8, 30, 0], &[1, 12, 40, 0], &[1, 24, 60, 6]])
        );
        assert_eq!(
            sqfree_had_power(&y, 3).unwrap(),
            set(3, &[&[1, -6, 0, -24], &[1, -8, 0, -30], &[1, -12, 0, -40], &[1, -24, -6, -60]])
        );
    }

    #[test]
    fn delta_predicates() {
        assert!(delta_membership(&p(&[1, 0, 0]), 0));
        assert!(!delta_membership(&p(&[1, 1, 2]), 0));
        let l = LineParam::new(p(&[1, 1, 2]), p(&[1, 2, 3])).unwrap();
        assert!(line_avoids_delta(&l, 0));
        let axis = LineParam::new(p(&[0, 1, 0]), p(&[0, 0, 1])).unwrap();
        assert!(!line_avoids_delta(&axis, 0));
        let space = LineParam::new(p(&[1, 1, 2, 0]), p(&[1, 2, 3, 1])).unwrap();
        assert!(line_avoids_delta(&space, 1));
        assert!(!line_avoids_delta(&space, 2));
    }

    #[test]
    fn line_equations() {
        let l = LineParam::from_equations(&[vec![rat(1), rat(1), rat(-1)]]).unwrap();
        assert!(l.param_of(&p(&[1, 2, 3])).is_some());
        assert!(l.param_of(&p(&[1, 2, 4])).is_none());
        let t = l.param_of(&p(&[1, -3, -2])).unwrap();
        assert_eq!(l.point_at(&t), p(&[1, -3, -2]));
    }

    #[test]
    fn power_of_line_is_conic() {
        let line = Hyperplane::from_i64(&[1, 1, -1]).unwrap();
        let expected = HomForm::linear(&[rat(1), rat(1), rat(-1)])
            .pow(2)
            .sub(&HomForm::var(3, 0).mul(&HomForm::var(3, 1)).scale(&rat(4)));
        assert!(implicit_conic(&line).unwrap().proportional(&expected));
        let l = LineParam::from_equations(&[vec![rat(1), rat(1), rat(-1)]]).unwrap();
        let (forms, is_rnc) = coordinate_power_line(&l, 2);
        assert!(is_rnc);
        for t in -3..=3 {
            let q: Vec<Rational> = forms.iter().map(|f| f.eval(&[rat(1), rat(t)])).collect();
            assert!(expected.eval(&q).is_zero());
        }
        let bad = LineParam::new(p(&[1, 0, 0]), p(&[0, 1, 0])).unwrap();
        assert!(!coordinate_power_line(&bad, 2).1);
    }

    #[test]
    fn implicit_conic_with_permuted_coordinates() {
        // x - 2y + 0z: no z-coefficient
        let line = Hyperplane::from_i64(&[1, -2, 0]).unwrap();
        let c = implicit_conic(&line).unwrap();
        let l = LineParam::from_equations(&[line.as_rationals()]).unwrap();
        let (forms, _) = coordinate_power_line(&l, 2);
        for t in -3..=3 {
            let q: Vec<Rational> = forms.iter().map(|f| f.eval(&[rat(1), rat(t)])).collect();
            assert!(c.eval(&q).is_zero());
        }
    }

    #[test]
    fn point_times_hyperplane() {
        let h = Hyperplane::from_i64(&[1, 1, -1]).unwrap();
        assert_eq!(had_point_hyperplane(&hadamard_identity(2), &h).unwrap(), h);
        let out = had_point_hyperplane(&p(&[1, 2, 3]), &h).unwrap();
        assert_eq!(out, Hyperplane::from_i64(&[6, 3, -2]).unwrap());
        assert!(out.contains(&had_point(&p(&[1, 2, 3]), &p(&[1, -1, 0])).unwrap()));
        assert_eq!(had_point_hyperplane(&p(&[1, 0, 3]), &h), Err(Error::NotHyperplane));
    }

    #[test]
    fn tangent_to_squared_line() {
        let line = Hyperplane::from_i64(&[1, 1, -1]).unwrap();
        let conic = implicit_conic(&line).unwrap();
        for q in [p(&[1, 2, 3]), p(&[1, -3, -2]), p(&[2, 5, 7])] {
            let qq = had_point(&q, &q).unwrap();
            let tangent = tangent_line_conic(&conic, &qq).unwrap();
            assert_eq!(tangent, had_point_hyperplane(&q, &line).unwrap());
        }
    }

    #[test]
    fn hadamard_osculating_flat_matches_curve() {
        let l = LineParam::new(p(&[1, 1, 2, 0]), p(&[1, 2, 3, 1])).unwrap();
        let gamma = power_curve(&l).unwrap();
        let h = line_had_power_hyperplane(&l).unwrap();
        for t in [BinaryParam::affine(2), BinaryParam::from_i64(3, -1).unwrap()] {
            let q = l.point_at(&t);
            for d in 0..3 {
                let a = osculating_flat_hadamard(&q, &l, d).unwrap();
                let b = osculating_flat(&gamma, &t, d);
                let mut both = a.clone();
                both.extend(b);
                assert_eq!(RatMatrix::from_rows(a).rank(), d + 1);
                assert_eq!(RatMatrix::from_rows(both).rank(), d + 1);
            }
            assert_eq!(osculating_hyperplane(&gamma, &t).unwrap(), had_point_hyperplane(&q, &h).unwrap());
        }
    }

    #[test]
    fn product_of_points_is_intersection_of_hyperplanes() {
        let l = LineParam::new(p(&[1, 1, 2, 0]), p(&[1, 2, 3, 1])).unwrap();
        let h = line_had_power_hyperplane(&l).unwrap();
        let x = set(3, &[&[1, 1, 2, 0], &[1, 2, 3, 1], &[1, 3, 4, 2], &[1, 4, 5, 3]]);
        let hs: Vec<Hyperplane> = x
            .iter()
            .filter(|q| q.coords().iter().all(|c| !c.is_zero()))
            .map(|q| had_point_hyperplane(q, &h).unwrap())
            .collect();
        assert_eq!(hs.len(), 3);
        let qs: Vec<&ProjPoint> = x.iter().filter(|q| q.coords().iter().all(|c| !c.is_zero())).collect();
        assert_eq!(intersect_hyperplanes(&hs).unwrap(), had_product(qs).unwrap());
        let _ = star_configuration(&hs).unwrap();
    }
}
