//! Brute-force solvability of `z^2 = a x^2 + b y^2` over `Q_p`.
//!
//! Independent of [`hilbert_symbol`](super::hilbert_symbol): no Legendre
//! symbols, only exhaustive search modulo `p^depth` plus a Hensel
//! certificate. Slow; meant as a test oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::Sign;
use crate::arith::check_odd_prime;
use crate::error::{Error, Result};
use crate::rational::Rational;

const MAX_MODULUS: u64 = 1 << 20;

/// Reduces a rational modulo squares to an integer of `p`-valuation 0 or 1,
/// returned as `(residue mod p^depth, valuation)`.
fn reduce(a: &Rational, p: u64, modulus: u64) -> (u64, u32) {
    let mut n: BigInt = a.numer() * a.denom();
    let p2 = BigInt::from(p * p);
    loop {
        let (q, r) = n.div_rem(&p2);
        if !r.is_zero() {
            break;
        }
        n = q;
    }
    let v = if (&n % BigInt::from(p)).is_zero() { 1 } else { 0 };
    let r = n.mod_floor(&BigInt::from(modulus)).to_u64().unwrap();
    (r, v)
}

fn val_mod(x: u64, p: u64, depth: u32) -> u32 {
    if x == 0 {
        return depth;
    }
    let mut x = x;
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Decides whether `z^2 = a x^2 + b y^2` has a nontrivial solution in `Q_p`.
///
/// Every primitive solution modulo `p^depth` is normalized to have its first
/// unit coordinate equal to 1. A solution certifies solvability when some
/// partial derivative has valuation `e` with `2e + 1 <= depth`. With no
/// primitive solution at all the answer is `-1`; solutions that cannot be
/// certified give [`Error::Inconclusive`].
pub fn solvable_oracle(a: &Rational, b: &Rational, p: u64, depth: u32) -> Result<Sign> {
    check_odd_prime(p)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("oracle inputs must be nonzero"));
    }
    if depth < 3 {
        return Err(Error::domain(format!("depth {depth} too small to certify (need >= 3)")));
    }
    let modulus = p
        .checked_pow(depth)
        .filter(|&m| m <= MAX_MODULUS)
        .ok_or_else(|| Error::Resource(format!("p^depth = {p}^{depth} exceeds {MAX_MODULUS}")))?;
    let m = modulus;
    let (ra, _) = reduce(a, p, m);
    let (rb, _) = reduce(b, p, m);

    let mut roots: Vec<Vec<u64>> = vec![Vec::new(); m as usize];
    for z in 0..m {
        roots[(z * z % m) as usize].push(z);
    }

    let mut found_any = false;
    let mut certified = false;
    let mut check = |x: u64, y: u64, z: u64| {
        found_any = true;
        let dx = val_mod(2 * ra % m * x % m, p, depth);
        let dy = val_mod(2 * rb % m * y % m, p, depth);
        let dz = val_mod(2 * z % m, p, depth);
        let e = dx.min(dy).min(dz);
        if 2 * e < depth {
            certified = true;
        }
    };
    let rhs = |x: u64, y: u64| (ra * (x * x % m) + rb * (y * y % m)) % m;

    // x = 1
    for y in 0..m {
        for &z in &roots[rhs(1, y) as usize] {
            check(1, y, z);
        }
    }
    // p | x, y = 1
    for x in (0..m).step_by(p as usize) {
        for &z in &roots[rhs(x, 1) as usize] {
            check(x, 1, z);
        }
    }
    // p | x and p | y force p | z, so no primitive triple remains

    if certified {
        Ok(Sign::Plus)
    } else if !found_any {
        Ok(Sign::Minus)
    } else {
        Err(Error::Inconclusive(format!(
            "solutions modulo {p}^{depth} exist but none lifts provably"
        )))
    }
}
