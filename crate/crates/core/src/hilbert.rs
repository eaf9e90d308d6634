//! Hilbert functions and h-vectors of fat point schemes, from exact ranks of
//! condition matrices and from closed forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::modular::certified_rank;
use crate::exact::rational::binomial;
use crate::exact::{monomials, HomForm, RatMatrix};
use crate::projgeom::{FatScheme, PointSet, ProjPoint};

/// First difference of a Hilbert function, with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(mut entries: Vec<u64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        HVector(entries)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry in degree `t`, zero past the end.
    pub fn at(&self, t: usize) -> u64 {
        self.0.get(t).copied().unwrap_or(0)
    }

    /// The degree of the scheme it describes.
    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn hilbert_function(&self) -> Vec<u64> {
        self.0
            .iter()
            .scan(0, |acc, &h| {
                *acc += h;
                Some(*acc)
            })
            .collect()
    }

    pub fn from_hilbert_function(values: &[u64]) -> Self {
        let mut prev = 0;
        Self::new(
            values
                .iter()
                .map(|&v| {
                    let d = v - prev;
                    prev = v;
                    d
                })
                .collect(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Concatenation, used for sequences built from two halves.
    pub fn concat(&self, other: &HVector) -> HVector {
        HVector::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn reversed(&self) -> HVector {
        HVector(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Debug for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u64>> for HVector {
    fn from(v: Vec<u64>) -> Self {
        HVector::new(v)
    }
}

/// Type `(a, b)` of a complete intersection, stored with `a <= b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CIType {
    pub a: u64,
    pub b: u64,
}

impl CIType {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::OutOfRange(format!("complete intersection type ({a},{b})")));
        }
        Ok(CIType {
            a: a.min(b),
            b: a.max(b),
        })
    }
}

impl fmt::Display for CIType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn falling(b: u32, a: u32) -> BigInt {
    (b - a + 1..=b).map(BigInt::from).product()
}

fn condition_rows(z: &FatScheme, d: u32) -> Vec<Vec<BigInt>> {
    let nv = z.ambient_dim() + 1;
    let mons = monomials(nv, d);
    let mut rows = Vec::new();
    for (p, m) in z.items() {
        let k = (m - 1).min(d);
        let powers: Vec<Vec<BigInt>> = p
            .coords()
            .iter()
            .map(|x| {
                let mut v = vec![BigInt::from(1)];
                for i in 0..d as usize {
                    let next = &v[i] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        for alpha in monomials(nv, k) {
            rows.push(
                mons.iter()
                    .map(|beta| {
                        if beta.iter().zip(&alpha).any(|(b, a)| b < a) {
                            return BigInt::zero();
                        }
                        let mut v = BigInt::from(1);
                        for i in 0..nv {
                            if alpha[i] > 0 {
                                v *= falling(beta[i], alpha[i]);
                            }
                            v *= &powers[i][(beta[i] - alpha[i]) as usize];
                            if v.is_zero() {
                                break;
                            }
                        }
                        v
                    })
                    .collect(),
            );
        }
    }
    rows
}

/// Linear conditions cutting out the degree-`d` part of the ideal of `z`:
/// one row per point and partial derivative of order `min(m - 1, d)`,
/// columns indexed by the degree-`d` monomials.
pub fn conditions_matrix(z: &FatScheme, d: u32) -> RatMatrix {
    let rows = condition_rows(z, d);
    if rows.is_empty() {
        return RatMatrix::zeros(0, monomials(z.ambient_dim() + 1, d).len());
    }
    RatMatrix::from_int_rows(&rows)
}

pub fn hilbert_function(z: &FatScheme, d: u32) -> u64 {
    let rows = condition_rows(z, d);
    let rank = certified_rank(&rows).unwrap_or_else(|| RatMatrix::from_int_rows(&rows).rank_bareiss());
    rank as u64
}

/// Values of the Hilbert function from degree 0 until it reaches the degree
/// of the scheme.
pub fn hilbert_values(z: &FatScheme) -> Result<Vec<u64>> {
    let deg = z.degree();
    let mut values = Vec::new();
    for d in 0..=deg.max(1) as u32 {
        let h = hilbert_function(z, d);
        values.push(h);
        if h == deg {
            return Ok(values);
        }
    }
    Err(Error::Internal(format!(
        "Hilbert function did not reach {deg} by degree {deg}: {values:?}"
    )))
}

pub fn h_vector(z: &FatScheme) -> Result<HVector> {
    Ok(HVector::from_hilbert_function(&hilbert_values(z)?))
}

pub fn h_vector_points(x: &PointSet) -> Result<HVector> {
    h_vector(&FatScheme::reduced(x))
}

/// Basis of the degree-`d` forms vanishing on `z`.
pub fn ideal_slice(z: &FatScheme, d: u32) -> Vec<HomForm> {
    let nv = z.ambient_dim() + 1;
    conditions_matrix(z, d)
        .kernel_basis()
        .iter()
        .map(|v| HomForm::from_coefficient_vector(nv, d, v))
        .collect()
}

pub fn ideal_slice_points(x: &PointSet, d: u32) -> Vec<HomForm> {
    ideal_slice(&FatScheme::reduced(x), d)
}

/// Whether two lists of forms of the same degree span the same space.
pub fn same_span(a: &[HomForm], b: &[HomForm]) -> bool {
    let rows = |fs: &[HomForm]| fs.iter().map(HomForm::coefficient_vector).collect::<Vec<_>>();
    let ra = if a.is_empty() { 0 } else { RatMatrix::from_rows(rows(a)).rank() };
    let rb = if b.is_empty() { 0 } else { RatMatrix::from_rows(rows(b)).rank() };
    if ra != rb {
        return false;
    }
    if ra == 0 {
        return true;
    }
    let mut both = rows(a);
    both.extend(rows(b));
    RatMatrix::from_rows(both).rank() == ra
}

/// `(1, ..., C(n-1+i, n-1), ..., C(r-1, n-1))`, the h-vector of a star
/// configuration of `r` hyperplanes in P^n.
pub fn generic_star_hvector(r: u64, n: u64) -> Result<HVector> {
    if n == 0 || r < n {
        return Err(Error::OutOfRange(format!("star configuration of {r} hyperplanes in P^{n}")));
    }
    Ok(HVector::new((0..=r - n).map(|i| binomial(n - 1 + i, n - 1)).collect()))
}

/// `(1, 2, ..., m, n, n-1, ..., 1)`: two general fat points of
/// multiplicities `m >= n` in P^2.
pub fn two_fat_hvector(m: u64, n: u64) -> Result<HVector> {
    if n > m {
        return Err(Error::OutOfRange(format!("two fat points ({m},{n}) need m >= n")));
    }
    Ok(HVector::new((1..=m).chain((1..=n).rev()).collect()))
}

/// `(1, ..., t-1, t, ..., t)` with `s` copies of `t`.
pub fn star_difference_hvector(s: u64, t: u64) -> Result<HVector> {
    if s == 0 || t == 0 {
        return Err(Error::OutOfRange(format!("star difference ({s},{t})")));
    }
    Ok(HVector::new(
        (1..t).chain(std::iter::repeat_n(t, s as usize)).collect(),
    ))
}

pub fn ci_hvector(ct: CIType) -> HVector {
    let CIType { a, b } = ct;
    HVector::new(
        (1..a)
            .chain(std::iter::repeat_n(a, (b - a + 1) as usize))
            .chain((1..a).rev())
            .collect(),
    )
}

/// h-vector of the residual of `X` in a complete intersection of type `ct`.
pub fn liaison_linked_hvector(ct: CIType, h_x: &HVector) -> Result<HVector> {
    let ci = ci_hvector(ct);
    let top = (ct.a + ct.b - 2) as usize;
    if h_x.len() > top + 1 {
        return Err(Error::NotLinkable { a: ct.a, b: ct.b });
    }
    let mut out = Vec::with_capacity(top + 1);
    for t in 0..=top {
        let k = top - t;
        let v = ci.at(k) as i128 - h_x.at(k) as i128;
        if v < 0 {
            return Err(Error::NotLinkable { a: ct.a, b: ct.b });
        }
        out.push(v as u64);
    }
    Ok(HVector::new(out))
}

fn sorted_desc(mut m: [u64; 3]) -> [u64; 3] {
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}

fn fat_degree_plane(m: u64) -> u64 {
    m * (m + 1) / 2
}

/// Hilbert function in degree `d` of three general fat points of the plane
/// with the given multiplicities (zeros allowed).
pub fn three_fat_hilbert(mults: [u64; 3], d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    let [m1, m2, m3] = sorted_desc(mults);
    let deg = fat_degree_plane(m1) + fat_degree_plane(m2) + fat_degree_plane(m3);
    if m3 == 0 {
        let h = if m2 == 0 {
            HVector::new((1..=m1).collect())
        } else {
            two_fat_hvector(m1, m2).expect("sorted")
        };
        let hf = h.hilbert_function();
        return hf.get(d as usize).copied().unwrap_or(deg);
    }
    if d as u64 + 1 >= m1 + m2 {
        return deg;
    }
    d as u64 + 1 + three_fat_hilbert([m1 - 1, m2 - 1, m3], d - 1)
}

pub fn three_fat_hvector(mults: [u64; 3]) -> HVector {
    let [m1, m2, m3] = sorted_desc(mults);
    let deg = fat_degree_plane(m1) + fat_degree_plane(m2) + fat_degree_plane(m3);
    let mut values = Vec::new();
    let mut d = 0;
    loop {
        let h = three_fat_hilbert(mults, d);
        values.push(h);
        if h == deg {
            return HVector::from_hilbert_function(&values);
        }
        d += 1;
    }
}

/// The h-vector of three contact stars with `t`, `r`, `s` lines on a conic,
/// for `t` in `{r+s-1, r+s, r+s+1}` and `r >= s >= 2`.
pub fn three_fat_3had_hvector(r: u64, s: u64, t: u64) -> Result<HVector> {
    if s < 2 || r < s || t + 1 < r + s || t > r + s + 1 {
        return Err(Error::OutOfRange(format!(
            "three contact stars (r,s,t) = ({r},{s},{t}) outside r >= s >= 2, t in {{r+s-1, r+s, r+s+1}}"
        )));
    }
    let head = 1..t;
    let middle = (0..s - 1).map(|k| r + s - 2 - 2 * k);
    let tail = (1..=r - s).rev();
    Ok(HVector::new(head.chain(middle).chain(tail).collect()))
}

/// `count` points of P^n with coordinates drawn from `-50..=50`.
pub fn random_points<R: Rng + ?Sized>(rng: &mut R, n: usize, count: usize) -> PointSet {
    loop {
        let pts: Vec<ProjPoint> = (0..count)
            .map(|_| loop {
                let v: Vec<i64> = (0..=n).map(|_| rng.gen_range(-50..=50)).collect();
                if let Ok(p) = ProjPoint::from_i64(&v) {
                    break p;
                }
            })
            .collect();
        let set = PointSet::new(n, pts).expect("dimension");
        if set.len() == count {
            return set;
        }
    }
}

pub const GENERAL_DRAWS: usize = 5;

/// Hilbert function of general fat points with the given multiplicities.
///
/// Two random configurations are drawn; if their Hilbert functions differ,
/// further ones are drawn (up to five in total) and the pointwise maximum is
/// returned, since general points maximize the Hilbert function.
pub fn general_fat_hvector<R: Rng + ?Sized>(rng: &mut R, n: usize, mults: &[u32]) -> Result<HVector> {
    let mut best: Option<Vec<u64>> = None;
    let mut agree = 0;
    for _ in 0..GENERAL_DRAWS {
        let pts = random_points(rng, n, mults.len());
        let z = FatScheme::new(n, pts.points().iter().cloned().zip(mults.iter().copied()).collect())?;
        let values = hilbert_values(&z)?;
        best = Some(match best {
            None => values,
            Some(prev) => {
                if prev == values {
                    agree += 1;
                }
                let len = prev.len().max(values.len());
                let deg = z.degree();
                (0..len)
                    .map(|i| {
                        prev.get(i)
                            .copied()
                            .unwrap_or(deg)
                            .max(values.get(i).copied().unwrap_or(deg))
                    })
                    .collect()
            }
        });
        if agree >= 1 {
            break;
        }
    }
    Ok(HVector::from_hilbert_function(&best.expect("at least one draw")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(v: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(v).unwrap()
    }

    fn h(v: &[u64]) -> HVector {
        HVector::new(v.to_vec())
    }

    #[test]
    fn condition_matrix_shapes() {
        let z = FatScheme::new(2, vec![(p(&[1, 2, 3]), 1)]).unwrap();
        let m = conditions_matrix(&z, 1);
        assert_eq!((m.rows(), m.cols()), (1, 3));
        let double = FatScheme::new(2, vec![(p(&[0, 0, 1]), 2)]).unwrap();
        let m = conditions_matrix(&double, 1);
        assert_eq!((m.rows(), m.rank()), (3, 3));
        assert_eq!(conditions_matrix(&double, 4).rows(), 3);
        // a constant cannot vanish at a double point
        assert_eq!(hilbert_function(&double, 0), 1);
    }

    #[test]
    fn single_point() {
        let z = FatScheme::new(3, vec![(p(&[1, 2, 3, 4]), 1)]).unwrap();
        for d in 0..4 {
            assert_eq!(hilbert_function(&z, d), 1);
        }
        assert_eq!(h_vector(&z).unwrap(), h(&[1]));
    }

    #[test]
    fn plane_example_is_complete_intersection() {
        let x = PointSet::from_i64(
            2,
            &[&[1, 2, 6], &[1, 3, 8], &[1, 4, 10], &[1, 6, 12], &[1, 8, 15], &[1, 12, 20], &[1, 2, 0], &[1, 3, 0], &[1, 6, 2]],
        )
        .unwrap();
        assert_eq!(h_vector_points(&x).unwrap(), h(&[1, 2, 3, 2, 1]));
        assert_eq!(ideal_slice_points(&x, 3).len(), 2);
    }

    #[test]
    fn space_example_is_gorenstein_shaped() {
        let x = PointSet::from_i64(
            3,
            &[
                &[1, 6, 24, 0], &[1, 8, 30, 0], &[1, 12, 40, 0], &[1, 24, 60, 6],
                &[1, -6, 0, -24], &[1, -8, 0, -30], &[1, -12, 0, -40], &[1, -24, -6, -60],
            ],
        )
        .unwrap();
        let z = FatScheme::reduced(&x);
        assert_eq!(hilbert_values(&z).unwrap(), vec![1, 4, 7, 8]);
        assert_eq!(h_vector(&z).unwrap(), h(&[1, 3, 3, 1]));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(generic_star_hvector(5, 2).unwrap(), h(&[1, 2, 3, 4]));
        assert_eq!(generic_star_hvector(3, 3).unwrap(), h(&[1]));
        assert_eq!(generic_star_hvector(4, 3).unwrap(), h(&[1, 3]));
        assert_eq!(two_fat_hvector(6, 2).unwrap(), h(&[1, 2, 3, 4, 5, 6, 2, 1]));
        assert_eq!(two_fat_hvector(4, 0).unwrap(), h(&[1, 2, 3, 4]));
        assert_eq!(two_fat_hvector(3, 3).unwrap(), h(&[1, 2, 3, 3, 2, 1]));
        assert_eq!(star_difference_hvector(3, 3).unwrap(), h(&[1, 2, 3, 3, 3]));
        assert_eq!(star_difference_hvector(4, 1).unwrap(), h(&[1, 1, 1, 1]));
        assert_eq!(ci_hvector(CIType::new(3, 3).unwrap()), h(&[1, 2, 3, 2, 1]));
        assert_eq!(ci_hvector(CIType::new(1, 4).unwrap()), h(&[1, 1, 1, 1]));
        assert_eq!(ci_hvector(CIType::new(3, 4).unwrap()), h(&[1, 2, 3, 3, 2, 1]));
    }

    #[test]
    fn linkage() {
        let ct = CIType::new(6, 6).unwrap();
        assert_eq!(
            liaison_linked_hvector(ct, &h(&[1, 2, 3, 3, 3])).unwrap(),
            h(&[1, 2, 3, 4, 5, 6, 2, 1])
        );
        assert!(liaison_linked_hvector(ct, &ci_hvector(ct)).unwrap().is_empty());
        let ct = CIType::new(3, 4).unwrap();
        assert!(liaison_linked_hvector(ct, &h(&[1, 2, 3, 3, 2, 1])).unwrap().is_empty());
        assert_eq!(
            liaison_linked_hvector(ct, &h(&[1, 3])),
            Err(Error::NotLinkable { a: 3, b: 4 })
        );
    }

    #[test]
    fn three_fat_closed_forms() {
        assert_eq!(three_fat_hvector([3, 1, 1]), h(&[1, 2, 3, 2]));
        assert_eq!(three_fat_hilbert([1, 1, 1], 1), 3);
        assert_eq!(three_fat_hilbert([1, 1, 1], 5), 3);
        assert_eq!(three_fat_hvector([5, 2, 2]), h(&[1, 2, 3, 4, 5, 4, 2]));
        assert_eq!(three_fat_3had_hvector(3, 3, 6).unwrap(), h(&[1, 2, 3, 4, 5, 4, 2]));
        assert_eq!(three_fat_3had_hvector(2, 2, 4).unwrap(), h(&[1, 2, 3, 2]));
        assert_eq!(three_fat_3had_hvector(4, 2, 6).unwrap(), h(&[1, 2, 3, 4, 5, 4, 2, 1]));
        assert!(three_fat_3had_hvector(3, 3, 8).is_err());
        assert!(three_fat_3had_hvector(2, 3, 5).is_err());
    }

    #[test]
    fn general_double_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(general_fat_hvector(&mut rng, 2, &[2; 5]).unwrap(), h(&[1, 2, 3, 4, 4, 1]));
        assert_eq!(general_fat_hvector(&mut rng, 2, &[3, 1, 1]).unwrap(), h(&[1, 2, 3, 2]));
        assert_eq!(general_fat_hvector(&mut rng, 2, &[3, 3]).unwrap(), h(&[1, 2, 3, 3, 2, 1]));
    }

    #[test]
    fn slices_compare_as_spans() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_points(&mut rng, 2, 5);
        let slice = ideal_slice_points(&x, 2);
        assert_eq!(slice.len(), 1);
        let doubled = vec![slice[0].clone(), slice[0].scale(&crate::exact::rat(-3))];
        assert!(same_span(&slice, &doubled));
    }
}
