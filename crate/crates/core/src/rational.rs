//! Exact rationals and the `"num/den"` string encoding used in JSON.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a/b"` or `"a"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::domain(format!("cannot parse rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::domain(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Always `"num/den"`, reduced, with the sign on the numerator.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(a: &Rational, p: u64) -> i64 {
    int_valuation(a.numer(), p) - int_valuation(a.denom(), p)
}

/// `a / p^{v_p(a)}`.
pub fn unit_part(a: &Rational, p: u64) -> Rational {
    let v = valuation(a, p);
    a / pow_p(p, v)
}

/// `p^e` for any integer `e`.
pub fn pow_p(p: u64, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        Rational::one() / num_traits::pow(base, (-e) as usize)
    }
}

/// Residue of a `p`-integral rational modulo `p`.
pub fn residue(a: &Rational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let n = a.numer().mod_floor(&pb).to_u64().unwrap();
    let d = a.denom().mod_floor(&pb).to_u64().unwrap();
    assert!(d != 0, "residue of a non-integral rational");
    n * crate::arith::inv_mod(d, p) % p
}

/// The squarefree integer in the square class of a nonzero rational.
pub fn squarefree_kernel(a: &Rational) -> Result<i64> {
    let n = a.numer() * a.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    let m = n.abs().to_u64().filter(|&m| m <= 1_000_000_000_000).ok_or_else(|| {
        Error::Resource(format!("rational {} too large to factor", format(a)))
    })?;
    let mut k = 1i64;
    for (q, e) in crate::arith::factor_u64(m) {
        if e % 2 == 1 {
            k *= q as i64;
        }
    }
    Ok(sign * k)
}

/// Odd primes dividing the numerator or denominator of `a`.
pub fn odd_primes_of(a: &Rational) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in [a.numer(), a.denom()] {
        let m = part.abs().to_u64().filter(|&m| m <= 1_000_000_000_000).ok_or_else(|| {
            Error::Resource(format!("rational {} too large to factor", format(a)))
        })?;
        for (q, _) in crate::arith::factor_u64(m) {
            if q != 2 {
                out.push(q);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Serde adapters for the string encoding.
pub mod serde_str {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| parse(s)).collect::<Result<_>>().map_err(D::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("6/-4").unwrap(), frac(-3, 2));
        assert_eq!(format(&parse(" -3/2 ").unwrap()), "-3/2");
        assert_eq!(format(&int(5)), "5/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&frac(18, 1), 3), 2);
        assert_eq!(valuation(&frac(2, 27), 3), -3);
        assert_eq!(unit_part(&frac(18, 5), 3), frac(2, 5));
        assert_eq!(residue(&frac(2, 5), 3), 1);
    }

    #[test]
    fn kernels() {
        assert_eq!(squarefree_kernel(&frac(-18, 1)).unwrap(), -2);
        assert_eq!(squarefree_kernel(&frac(3, 12)).unwrap(), 1);
        assert_eq!(odd_primes_of(&frac(-45, 14)).unwrap(), vec![3, 5, 7]);
    }
}
