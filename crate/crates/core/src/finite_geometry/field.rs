//! Prime-power fields `F_{p^k}` as `F_p[x] / (f)`, with full operation
//! tables. An element is the integer `Σ c_i p^i` of its coefficient vector.

use crate::arith::{check_odd_prime, inv_mod};
use crate::error::{Error, Result};

pub type Elem = u32;

/// Coefficients low to high; trailing zeros trimmed.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn index_to_poly(mut idx: u64, p: u64, len: usize) -> Poly {
    let mut c = Vec::with_capacity(len);
    for _ in 0..len {
        c.push(idx % p);
        idx /= p;
    }
    c
}

/// Irreducibility over `F_p` by trial division by every monic polynomial of
/// degree at most `deg / 2`.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let f = trim(poly.to_vec());
    if f.len() < 2 {
        return false;
    }
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = index_to_poly(low, p, d);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Monic irreducibles of degree `k`, ordered by the integer `Σ c_i p^i` of
/// the lower coefficients.
pub fn monic_irreducibles(p: u64, k: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(k as u32)).filter_map(move |low| {
        let mut f = index_to_poly(low, p, k);
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    frob: Vec<Elem>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// `F_{p^k}` with the least monic irreducible modulus.
    pub fn new(p: u64, k: usize, max_size: u64) -> Result<FiniteField> {
        check_odd_prime(p)?;
        if k == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        Self::check_size(p, k, max_size)?;
        let modulus = monic_irreducibles(p, k).next().expect("irreducibles exist in every degree");
        Self::with_modulus(p, modulus, max_size)
    }

    fn check_size(p: u64, k: usize, max_size: u64) -> Result<()> {
        match p.checked_pow(k as u32) {
            Some(q) if q <= max_size => Ok(()),
            _ => Err(Error::Resource(format!("field of order {p}^{k} exceeds the cap {max_size}"))),
        }
    }

    pub fn with_modulus(p: u64, modulus: Vec<u64>, max_size: u64) -> Result<FiniteField> {
        check_odd_prime(p)?;
        let modulus = trim(modulus);
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::domain("modulus must be monic of positive degree with entries below p"));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::domain("modulus is reducible"));
        }
        let k = modulus.len() - 1;
        Self::check_size(p, k, max_size)?;
        let size = p.pow(k as u32) as usize;
        let polys: Vec<Poly> = (0..size as u64).map(|i| index_to_poly(i, p, k)).collect();
        let to_index = |c: &[u64]| -> Elem {
            c.iter().rev().fold(0u64, |acc, &x| acc * p + x) as Elem
        };
        let mut add = vec![0; size * size];
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let s: Vec<u64> = polys[a].iter().zip(&polys[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = to_index(&s);
                let prod = poly_rem(&poly_mul(&polys[a], &polys[b], p), &modulus, p);
                mul[a * size + b] = to_index(&prod);
            }
        }
        let neg: Vec<Elem> = polys
            .iter()
            .map(|c| to_index(&c.iter().map(|&x| (p - x) % p).collect::<Vec<_>>()))
            .collect();
        let mut inv = vec![0; size];
        for a in 1..size {
            inv[a] = (1..size).find(|&b| mul[a * size + b] == 1).expect("field") as Elem;
        }
        let frob = (0..size)
            .map(|a| {
                let mut acc: Elem = 1;
                for _ in 0..p {
                    acc = mul[acc as usize * size + a];
                }
                acc
            })
            .collect();
        Ok(FiniteField { p, k, modulus, size, add, mul, neg, inv, frob })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The image of an integer under `Z → F_p ⊂ F_{p^k}`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// `a ↦ a^p`.
    pub fn frob(&self, a: Elem) -> Elem {
        self.frob[a as usize]
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        index_to_poly(a as u64, self.p, self.k)
    }
}
