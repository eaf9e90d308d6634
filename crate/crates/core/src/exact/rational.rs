//! Rational scalars and canonical integer vectors.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Decimal rendering: `"p"` for integers, `"p/q"` otherwise.
pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Clears denominators, divides by the content and makes the first nonzero
/// entry positive. The zero vector is returned unchanged.
pub fn primitive_from_rationals(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    primitive(ints)
}

/// Primitive integer form with positive leading nonzero entry.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
    v
}

pub fn ints_to_rats(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(int_to_rat).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trips_through_strings() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            assert_eq!(rational_to_string(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(rational_to_string(&parse_rational("6/-4").unwrap()), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = rat_frac(0, -5);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let v = primitive_from_rationals(&[rat_frac(-1, 2), rat(0), rat_frac(3, 4)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::zero(), BigInt::from(-3)]);
        let z = primitive(vec![BigInt::zero(); 3]);
        assert!(z.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(2, 3), 0);
    }
}
