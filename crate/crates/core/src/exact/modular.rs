//! Multi-modular rank with a Hadamard-bound certificate.
//!
//! A rank computed modulo a prime is a lower bound for the rank over the
//! rationals. If the rank over Q were larger than every modular rank seen,
//! some nonzero minor of the next size would be divisible by all the primes
//! used, hence by their product. Once that product exceeds the Hadamard bound
//! for such a minor the modular rank is exact.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

const PRIME_POOL: usize = 1024;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, in decreasing order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut c = (1u64 << 62) - 1;
        while out.len() < PRIME_POOL {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Rank of an integer matrix modulo `p`.
pub fn rank_mod_p(rows: &[Vec<BigInt>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| reduce(x, p)).collect())
        .collect();
    rank_mod_p_in_place(&mut m, p)
}

fn rank_mod_p_in_place(m: &mut [Vec<u64>], p: u64) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &mut top[rank];
        for x in prow[c..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for row in rest.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..ncols {
                let t = mul_mod(f, prow[j], p);
                row[j] = if row[j] >= t { row[j] - t } else { row[j] + p - t };
            }
        }
        rank += 1;
    }
    rank
}

/// Square of the Hadamard bound on any `k`x`k` minor: the product of the `k`
/// largest squared row norms, or of column norms when that is smaller.
fn hadamard_bound_sq(rows: &[Vec<BigInt>], k: usize) -> BigInt {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut row_norms: Vec<BigInt> = rows
        .iter()
        .map(|r| r.iter().map(|x| x * x).sum())
        .collect();
    let mut col_norms: Vec<BigInt> = (0..ncols)
        .map(|j| rows.iter().map(|r| &r[j] * &r[j]).sum())
        .collect();
    let top = |v: &mut Vec<BigInt>| -> BigInt {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.iter().take(k).fold(BigInt::one(), |acc, x| acc * x)
    };
    let a = top(&mut row_norms);
    let b = top(&mut col_norms);
    a.min(b)
}

/// Exact rank of an integer matrix, or `None` when the prime pool is
/// exhausted before the certificate closes.
pub fn certified_rank(rows: &[Vec<BigInt>]) -> Option<usize> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if rows.is_empty() {
        return Some(0);
    }
    let ncols = rows[0].len();
    let full = rows.len().min(ncols);
    let mut best = 0usize;
    let mut product = BigInt::one();
    let mut bound_for: Option<(usize, BigInt)> = None;
    for &p in primes() {
        let r = rank_mod_p(&rows, p);
        if r > best {
            best = r;
            bound_for = None;
        }
        if best == full {
            return Some(best);
        }
        product *= p;
        let bound = match &bound_for {
            Some((k, b)) if *k == best + 1 => b.clone(),
            _ => {
                let b = hadamard_bound_sq(&rows, best + 1);
                bound_for = Some((best + 1, b.clone()));
                b
            }
        };
        if (&product * &product) > bound {
            return Some(best);
        }
    }
    None
}
