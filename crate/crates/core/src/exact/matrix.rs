//! Dense rational matrices with fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::modular;
use super::rational::{int_to_rat, primitive_from_rationals, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length. An empty row list gives a
    /// `0 x cols` matrix only through [`RatMatrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        RatMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(int_to_rat).collect())
                .collect(),
        )
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Rows scaled to integers; row scaling preserves rank and kernel.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }

    /// Exact rank over Q.
    ///
    /// Uses the certified multi-modular rank and falls back to Bareiss
    /// elimination if the prime pool runs out.
    pub fn rank(&self) -> usize {
        let rows = self.integer_rows();
        modular::certified_rank(&rows).unwrap_or_else(|| bareiss_echelon(rows).1.len())
    }

    /// Exact rank by fraction-free elimination alone.
    pub fn rank_bareiss(&self) -> usize {
        bareiss_echelon(self.integer_rows()).1.len()
    }

    /// Basis of the right null space, each vector primitive integral with a
    /// positive leading entry.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (ech, pivots) = bareiss_echelon(self.integer_rows());
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let row = &ech[k];
                let s: Rational = (pc + 1..self.cols)
                    .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                    .map(|j| int_to_rat(&row[j]) * &x[j])
                    .sum();
                x[pc] = -s / int_to_rat(&row[pc]);
            }
            basis.push(
                primitive_from_rationals(&x)
                    .iter()
                    .map(int_to_rat)
                    .collect(),
            );
        }
        basis
    }

    /// Determinant of a square matrix by Bareiss elimination.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        let mut scale = Rational::one();
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                scale /= int_to_rat(&lcm);
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect();
        int_to_rat(&bareiss_determinant(rows)) * scale
    }
}

/// Fraction-free row echelon form. Returns the reduced rows (only the first
/// `pivots.len()` are meaningful) and the pivot columns.
pub fn bareiss_echelon(mut a: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // smallest nonzero pivot keeps intermediate entries short
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].abs())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let piv = &prow[c];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = piv * &row[j] - &f * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

fn bareiss_determinant(a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut a = a;
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(k, p);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = &prow[k] * &row[j] - &row[k] * &prow[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = prow[k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_frac};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        assert_eq!(RatMatrix::zeros(2, 5).rank(), 0);
        // three collinear points on x + y - z
        let pts = m(&[&[1, 1, 2], &[1, 2, 3], &[1, 3, 4]]);
        assert_eq!(pts.rank(), 2);
        assert_eq!(pts.rank_bareiss(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let row = m(&[&[1, 1, -1]]);
        let ker = row.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(row.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(RatMatrix::from_rows(vec![ker[0].clone(), ker[1].clone()]).rank(), 2);
    }

    #[test]
    fn kernel_vectors_are_primitive() {
        let a = RatMatrix::from_rows(vec![vec![rat_frac(1, 2), rat(1), rat_frac(-1, 3)]]);
        for v in a.kernel_basis() {
            assert!(v.iter().all(|q| q.is_integer()));
            let lead = v.iter().find(|q| !q.is_zero()).unwrap();
            assert!(lead.is_positive());
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant(), rat(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), rat(-1));
        let h = RatMatrix::from_rows(vec![
            vec![rat(1), rat_frac(1, 2)],
            vec![rat_frac(1, 2), rat_frac(1, 3)],
        ]);
        assert_eq!(h.determinant(), rat_frac(1, 12));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), rat(0));
    }
}
