//! Machine-integer number theory: primality, modular powers, Legendre and
//! Kronecker symbols, and small factorizations.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Rejects anything that is not an odd prime.
pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::domain("p = 2 is not supported (odd primes only)"));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not a prime")));
    }
    Ok(())
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Modular inverse of `a` modulo the prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a, p) == -1).expect("odd primes have nonresidues")
}

/// Kronecker symbol `(d | n)` for `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    let mut result = 1i8;
    let mut n = n;
    while n.is_multiple_of(2) {
        n /= 2;
        let r = d.rem_euclid(8);
        let k = match r {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
        result *= k;
    }
    for (q, e) in factor_u64(n) {
        let ls = legendre(d.rem_euclid(q as i64) as u64, q);
        if e % 2 == 1 {
            result *= ls;
        } else if ls == 0 {
            result = 0;
        }
    }
    result
}

/// Prime factorization by trial division, `(prime, exponent)` ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    factor_u64(n).iter().all(|&(_, e)| e == 1)
}

/// True for fundamental discriminants other than 1.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let r = d.rem_euclid(4);
    if r == 1 {
        return is_squarefree(d.unsigned_abs());
    }
    if r == 0 {
        let k = d / 4;
        let kr = k.rem_euclid(4);
        return (kr == 2 || kr == 3) && is_squarefree(k.unsigned_abs());
    }
    false
}
