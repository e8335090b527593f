//! Bernoulli numbers, special values `ζ(1-2r)` and `L(1-m, χ)`, and the
//! closed-form superspecial mass.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, is_fundamental_discriminant, kronecker};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> = LazyLock::new(|| RwLock::new(vec![Rational::one()]));

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// `B_n` with `B_1 = -1/2`, from `Σ_{k<=n} C(n+1, k) B_k = 0`. Values are
/// cached; concurrent readers share the table.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().unwrap();
    while table.len() <= n {
        let j = table.len();
        let c = binomial_row(j + 1);
        let s: Rational = (0..j).map(|k| Rational::from(c[k].clone()) * &table[k]).sum();
        table.push(-s / Rational::from(BigInt::from(j + 1)));
    }
    table[n].clone()
}

/// `B_n` by the Akiyama–Tanigawa triangle, reported in the `B_1 = -1/2`
/// convention.
pub fn bernoulli_triangle(n: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(rational::frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = Rational::from(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
    }
    let b = a.swap_remove(0);
    if n == 1 {
        -b
    } else {
        b
    }
}

/// `B_m(x) = Σ_k C(m, k) B_k x^{m-k}`.
pub fn bernoulli_polynomial(m: usize, x: &Rational) -> Rational {
    let c = binomial_row(m);
    let mut pow = Rational::one();
    let mut acc = Rational::zero();
    for k in (0..=m).rev() {
        acc += Rational::from(c[k].clone()) * bernoulli(k) * &pow;
        pow *= x;
    }
    acc
}

/// `ζ(1 - 2r) = -B_{2r} / (2r)`.
pub fn zeta_neg(r: usize) -> Result<Rational> {
    if r == 0 {
        return Err(Error::domain("r must be positive"));
    }
    Ok(-bernoulli(2 * r) / Rational::from(BigInt::from(2 * r)))
}

/// `L(1 - m, χ_D) = -B_{m,χ}/m` for the Kronecker character of a
/// fundamental discriminant `D`, with
/// `B_{m,χ} = f^{m-1} Σ_{a=1}^{f} χ(a) B_m(a/f)`, `f = |D|`.
pub fn l_neg(m: usize, disc: i64) -> Result<Rational> {
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    if !is_fundamental_discriminant(disc) {
        return Err(Error::domain(format!("{disc} is not a nontrivial fundamental discriminant")));
    }
    let f = disc.unsigned_abs();
    let mut sum = Rational::zero();
    for a in 1..=f {
        let chi = kronecker(disc, a);
        if chi != 0 {
            let term = bernoulli_polynomial(m, &rational::frac(a as i64, f as i64));
            sum += if chi > 0 { term } else { -term };
        }
    }
    let b_chi = sum * rational::int(f as i64).pow(m as i32 - 1);
    Ok(-b_chi / rational::int(m as i64))
}

/// The `p`-local factor in even dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvenLocalVariant {
    /// `(p^{m-1} + 1) p^{m+1}`.
    AsPrinted,
    /// `(p^{m-1} + 1)(p^m + 1)`.
    #[default]
    Corrected,
}

impl std::str::FromStr for EvenLocalVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as_printed" => Ok(EvenLocalVariant::AsPrinted),
            "corrected" => Ok(EvenLocalVariant::Corrected),
            _ => Err(Error::domain(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassInput {
    pub n: usize,
    pub p: u64,
    #[serde(with = "rational::serde_str")]
    pub vol: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disc: Option<i64>,
    #[serde(default, alias = "evenLocalVariant")]
    pub even_local_variant: EvenLocalVariant,
}

impl MassInput {
    pub fn odd(n: usize, p: u64, vol: Rational) -> MassInput {
        MassInput { n, p, vol, disc: None, even_local_variant: EvenLocalVariant::default() }
    }

    pub fn even(n: usize, p: u64, vol: Rational, disc: i64, variant: EvenLocalVariant) -> MassInput {
        MassInput { n, p, vol, disc: Some(disc), even_local_variant: variant }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassOutput {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    #[serde(with = "rational::serde_str")]
    pub abs_value: Rational,
}

fn ipow(p: u64, e: usize) -> Rational {
    Rational::from(BigInt::from(p).pow(e as u32))
}

/// The superspecial mass, signed as the closed formula gives it.
pub fn mass(input: &MassInput) -> Result<MassOutput> {
    let MassInput { n, p, ref vol, disc, even_local_variant } = *input;
    check_odd_prime(p)?;
    if n < 3 {
        return Err(Error::domain("n must be at least 3"));
    }
    if !vol.is_positive() {
        return Err(Error::domain("vol must be positive"));
    }
    let m = n / 2;
    let mut value = vol.clone();
    for r in 1..=m {
        value *= zeta_neg(r)?;
    }
    value /= ipow(2, m - 1);
    let local = if n % 2 == 1 {
        if disc.is_some() {
            return Err(Error::domain("disc is only used in even dimension"));
        }
        ipow(p, 2 * m) - Rational::one()
    } else {
        let d = disc.ok_or_else(|| Error::domain("even n requires a fundamental discriminant disc"))?;
        value *= l_neg(m, d)?;
        let first = ipow(p, m - 1) + Rational::one();
        match even_local_variant {
            EvenLocalVariant::AsPrinted => first * ipow(p, m + 1),
            EvenLocalVariant::Corrected => first * (ipow(p, m) + Rational::one()),
        }
    };
    value *= local / rational::int(2 * (p as i64 + 1));
    let abs_value = value.abs();
    Ok(MassOutput { value, abs_value })
}

/// `(p - 1) / 24`.
pub fn deuring(p: u64) -> Result<Rational> {
    check_odd_prime(p)?;
    Ok(rational::frac(p as i64 - 1, 24))
}
