//! Invariants of rational quadratic forms at every place of `Q`.
//!
//! The module never computes a 2-adic Hilbert symbol. The `ε` entry at 2 is
//! defined as the value forced by the product formula over all other places,
//! so a profile produced by [`profile_of`] is reciprocal by construction and
//! [`reciprocity_check`] detects edits that break the product.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, is_prime};
use crate::error::{Error, Result};
use crate::padic::{self, real_hasse_from_signature, DiagonalForm, Place, Sign, SquareClass, UnitClass};
use crate::rational;

/// Square class of a determinant at an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalDet {
    Square,
    Nonsquare,
    PSquare,
    PNonsquare,
}

impl LocalDet {
    pub fn from_class(c: &SquareClass) -> Option<LocalDet> {
        match *c {
            SquareClass::Padic { odd_valuation, unit, .. } => Some(match (odd_valuation, unit) {
                (false, UnitClass::Square) => LocalDet::Square,
                (false, UnitClass::Nonsquare) => LocalDet::Nonsquare,
                (true, UnitClass::Square) => LocalDet::PSquare,
                (true, UnitClass::Nonsquare) => LocalDet::PNonsquare,
            }),
            SquareClass::Real { .. } => None,
        }
    }

    pub fn to_class(self, p: u64) -> SquareClass {
        let (odd_valuation, unit) = match self {
            LocalDet::Square => (false, UnitClass::Square),
            LocalDet::Nonsquare => (false, UnitClass::Nonsquare),
            LocalDet::PSquare => (true, UnitClass::Square),
            LocalDet::PNonsquare => (true, UnitClass::Nonsquare),
        };
        SquareClass::Padic { p, odd_valuation, unit }
    }

    pub fn is_unit(self) -> bool {
        matches!(self, LocalDet::Square | LocalDet::Nonsquare)
    }

    fn of_kernel(k: i64, p: u64) -> LocalDet {
        LocalDet::from_class(&padic::square_class(&rational::int(k), p).expect("odd prime")).unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    /// Absent at 2, where only the forced `ε` is recorded.
    #[serde(default)]
    pub det: Option<LocalDet>,
    pub eps: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub dim: usize,
    pub signature: (usize, usize),
    /// Signed squarefree integer representing the global determinant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det: Option<i64>,
    /// `ε = +1` and a unit determinant are implied at unlisted odd primes.
    #[serde(default)]
    pub primes: BTreeMap<u64, PrimeEntry>,
}

impl InvariantProfile {
    pub fn validate(&self) -> Result<()> {
        let (r, s) = self.signature;
        if self.dim == 0 || r + s != self.dim {
            return Err(Error::domain(format!("signature {:?} does not match dimension {}", self.signature, self.dim)));
        }
        if let Some(d) = self.det {
            if d == 0 || !crate::arith::is_squarefree(d.unsigned_abs()) {
                return Err(Error::domain("det must be a nonzero squarefree integer"));
            }
            if (d < 0) != (s % 2 == 1) {
                return Err(Error::domain("sign of det disagrees with the signature"));
            }
        }
        for (&p, e) in &self.primes {
            if !is_prime(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            if let (Some(d), Some(ld)) = (self.det, e.det) {
                if p != 2 && LocalDet::of_kernel(d, p) != ld {
                    return Err(Error::domain(format!("local det at {p} disagrees with the global det")));
                }
            }
        }
        Ok(())
    }

    pub fn eps(&self, p: u64) -> Sign {
        self.primes.get(&p).map_or(Sign::Plus, |e| e.eps)
    }

    pub fn eps_real(&self) -> Sign {
        real_hasse_from_signature(self.signature.1)
    }

    /// Determinant class at an odd prime, when it can be read off.
    pub fn local_det(&self, p: u64) -> Option<LocalDet> {
        if let Some(ld) = self.primes.get(&p).and_then(|e| e.det) {
            return Some(ld);
        }
        self.det.map(|d| LocalDet::of_kernel(d, p))
    }

    /// Places with `ε = -1`, `0` standing for the real place.
    pub fn minus_places(&self) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> =
            self.primes.iter().filter(|(_, e)| e.eps == Sign::Minus).map(|(&p, _)| p).collect();
        if self.eps_real() == Sign::Minus {
            out.insert(0);
        }
        out
    }

    /// Equality of the underlying local data, ignoring which `+1` entries
    /// happen to be listed. Local determinants are compared wherever both
    /// sides determine them.
    pub fn equivalent(&self, other: &InvariantProfile) -> bool {
        if self.dim != other.dim || self.signature != other.signature || self.minus_places() != other.minus_places() {
            return false;
        }
        if let (Some(a), Some(b)) = (self.det, other.det) {
            if a != b {
                return false;
            }
        }
        self.primes.keys().chain(other.primes.keys()).filter(|&&p| p != 2).all(|&p| {
            match (self.local_det(p), other.local_det(p)) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            }
        })
    }
}

/// `ε` at 2 as forced by the product formula.
fn forced_eps_2(odd: impl Iterator<Item = Sign>, real: Sign) -> Sign {
    odd.fold(real, |acc, s| acc * s)
}

/// Local invariants of `form` at every place.
pub fn profile_of(form: &DiagonalForm) -> Result<InvariantProfile> {
    let mut primes = BTreeSet::new();
    for a in form.entries() {
        primes.extend(rational::odd_primes_of(a)?);
    }
    let mut map = BTreeMap::new();
    for &p in &primes {
        let inv = padic::local_invariants(form, Place::Prime(p))?;
        map.insert(p, PrimeEntry { det: LocalDet::from_class(&inv.det), eps: inv.hasse });
    }
    // at an unlisted odd prime every entry is a unit, and units pair to +1
    let signature = form.signature();
    let real = padic::hasse_invariant(form, Place::Real)?;
    let eps2 = forced_eps_2(map.values().map(|e| e.eps), real);
    map.insert(2, PrimeEntry { det: None, eps: eps2 });
    Ok(InvariantProfile {
        dim: form.dim(),
        signature,
        det: Some(rational::squarefree_kernel(&form.det())?),
        primes: map,
    })
}

/// `∏_l ε_l = +1` over the listed primes and the real place.
pub fn reciprocity_check(profile: &InvariantProfile) -> bool {
    profile.primes.values().fold(profile.eps_real(), |acc, e| acc * e.eps) == Sign::Plus
}

/// The profile of the nearby space: `ε_p` flipped, signature `(n, 0)`.
pub fn nearby_profile(profile: &InvariantProfile, p: u64) -> Result<InvariantProfile> {
    check_odd_prime(p)?;
    profile.validate()?;
    let n = profile.dim;
    if profile.eps(p) != Sign::Plus {
        return Err(Error::domain(format!("nearby space needs ε_{p} = +1")));
    }
    if n < 2 || profile.signature != (n - 2, 2) {
        return Err(Error::domain(format!(
            "nearby space needs signature (n-2, 2), got {:?}",
            profile.signature
        )));
    }
    let det = profile
        .local_det(p)
        .ok_or_else(|| Error::domain(format!("determinant at {p} is not specified")))?;
    if !det.is_unit() {
        return Err(Error::domain(format!("nearby space needs a unit determinant at {p}")));
    }
    let mut out = profile.clone();
    out.signature = (n, 0);
    out.primes.insert(p, PrimeEntry { det: Some(det), eps: Sign::Minus });
    Ok(out)
}

const MAX_REALIZE_CANDIDATES: u128 = 50_000_000;

fn multisets(k: usize, len: usize) -> u128 {
    // C(len + k - 1, k)
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (len as u128 + i) / (i + 1);
    }
    c
}

fn for_each_multiset(k: usize, len: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..len {
        cur.push(i);
        for_each_multiset(k, len, i, cur, f);
        cur.pop();
    }
}

/// Bounded search for a diagonal form with the given profile.
///
/// Entries are signed squarefree integers whose primes lie in the profile's
/// support (listed primes, primes of `det`, and 2), with `|a| <= bound`.
/// Forms are tried by height `max |a_i|`, then lexicographically in the
/// sorted entry vector, and the first match is returned.
pub fn realize_form(profile: &InvariantProfile, bound: u64) -> Result<DiagonalForm> {
    profile.validate()?;
    if !reciprocity_check(profile) {
        return Err(Error::domain("profile violates Hilbert reciprocity, no rational form exists"));
    }
    if bound == 0 {
        return Err(Error::domain("bound must be positive"));
    }
    let mut support: BTreeSet<u64> = profile.primes.keys().copied().collect();
    support.insert(2);
    if let Some(d) = profile.det {
        support.extend(crate::arith::factor_u64(d.unsigned_abs()).into_iter().map(|(q, _)| q));
    }
    let mut pos: Vec<u64> = vec![1];
    for &q in &support {
        let more: Vec<u64> = pos.iter().filter_map(|&x| x.checked_mul(q)).filter(|&x| x <= bound).collect();
        pos.extend(more);
    }
    pos.sort_unstable();

    let (r, s) = profile.signature;
    for (hi, &h) in pos.iter().enumerate() {
        let len = hi + 1;
        let count = multisets(r, len) * multisets(s, len);
        if count > MAX_REALIZE_CANDIDATES {
            return Err(Error::Resource(format!("realization search at height {h} is too large")));
        }
        let mut layer: Vec<Vec<i64>> = Vec::new();
        let mut negs: Vec<Vec<i64>> = Vec::new();
        for_each_multiset(s, len, 0, &mut Vec::new(), &mut |ix| {
            negs.push(ix.iter().rev().map(|&i| -(pos[i] as i64)).collect());
        });
        for_each_multiset(r, len, 0, &mut Vec::new(), &mut |ix| {
            let posv: Vec<i64> = ix.iter().map(|&i| pos[i] as i64).collect();
            for nv in &negs {
                let top = nv.first().map_or(0, |x| -x).max(*posv.last().unwrap_or(&0));
                if top as u64 != h {
                    continue;
                }
                layer.push(nv.iter().chain(&posv).copied().collect());
            }
        });
        layer.sort();
        for entries in layer {
            if let Some(d) = profile.det {
                let k = rational::squarefree_kernel(&rational::int(entries.iter().product()))?;
                if k != d {
                    continue;
                }
            }
            let form = DiagonalForm::from_ints(&entries)?;
            if profile.equivalent(&profile_of(&form)?) {
                return Ok(form);
            }
        }
    }
    Err(Error::NotFound { bound })
}
