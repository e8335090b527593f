//! Square classes, Hilbert symbols and Hasse–Witt invariants of diagonal
//! quadratic forms over `Q_p` (odd `p`) and `R`.
//!
//! A form `a_1 x_1^2 + ... + a_n x_n^2` is classified over a nonarchimedean
//! completion by its dimension, its determinant `a_1 ... a_n` modulo squares
//! and `ε = ∏_{i<j} (a_i, a_j)`; over `R` by its signature.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, legendre};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub mod oracle;

/// A sign `±1`, serialized as the integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::domain(format!("{v} is not a sign"))),
        }
    }

    pub fn flip(self) -> Sign {
        self * Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity((self == Sign::Minus) != (rhs == Sign::Minus))
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, |a, b| a * b)
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// A place of `Q`: the real place or an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    /// Validates that a finite place is an odd prime.
    pub fn checked(self) -> Result<Place> {
        if let Place::Prime(p) = self {
            check_odd_prime(p)?;
        }
        Ok(self)
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r" | "real" | "inf" | "infinity" => Ok(Place::Real),
            other => other
                .parse::<u64>()
                .map(Place::Prime)
                .map_err(|_| Error::domain(format!("unknown place {s:?}"))),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitClass {
    Square,
    Nonsquare,
}

/// An element of `Q_v^× / Q_v^{×2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "place", rename_all = "lowercase")]
pub enum SquareClass {
    Real { sign: Sign },
    Padic { p: u64, odd_valuation: bool, unit: UnitClass },
}

impl SquareClass {
    pub fn is_unit(&self) -> bool {
        matches!(self, SquareClass::Padic { odd_valuation: false, .. })
    }

    /// The class of a nonzero rational at a place.
    pub fn of(a: &Rational, place: Place) -> Result<SquareClass> {
        match place.checked()? {
            Place::Real => {
                if a.is_zero() {
                    return Err(Error::domain("square class of 0"));
                }
                Ok(SquareClass::Real { sign: Sign::from_parity(a.is_negative()) })
            }
            Place::Prime(p) => square_class(a, p),
        }
    }
}

/// `(v_p(a) mod 2, Legendre class of the unit part)`.
pub fn square_class(a: &Rational, p: u64) -> Result<SquareClass> {
    check_odd_prime(p)?;
    if a.is_zero() {
        return Err(Error::domain("square class of 0"));
    }
    let v = rational::valuation(a, p);
    let u = rational::residue(&rational::unit_part(a, p), p);
    let unit = if legendre(u, p) == 1 { UnitClass::Square } else { UnitClass::Nonsquare };
    Ok(SquareClass::Padic { p, odd_valuation: v.rem_euclid(2) == 1, unit })
}

/// Hilbert symbol `(a, b)_v` by the closed formula.
///
/// For odd `p`, writing `a = p^α u`, `b = p^β w` with units `u, w`:
/// `(a, b)_p = (-1)^{αβ(p-1)/2} (u|p)^β (w|p)^α`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<Sign> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::domain("Hilbert symbol of 0"));
    }
    match place.checked()? {
        Place::Real => Ok(Sign::from_parity(a.is_negative() && b.is_negative())),
        Place::Prime(p) => {
            let alpha = rational::valuation(a, p).rem_euclid(2) == 1;
            let beta = rational::valuation(b, p).rem_euclid(2) == 1;
            let u = rational::residue(&rational::unit_part(a, p), p);
            let w = rational::residue(&rational::unit_part(b, p), p);
            let mut minus = alpha && beta && ((p - 1) / 2) % 2 == 1;
            if beta && legendre(u, p) == -1 {
                minus = !minus;
            }
            if alpha && legendre(w, p) == -1 {
                minus = !minus;
            }
            Ok(Sign::from_parity(minus))
        }
    }
}

/// A diagonal quadratic form with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct DiagonalForm {
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct FormRepr(#[serde(with = "rational::serde_str::vec")] Vec<Rational>);

impl TryFrom<FormRepr> for DiagonalForm {
    type Error = Error;
    fn try_from(r: FormRepr) -> Result<Self> {
        DiagonalForm::new(r.0)
    }
}

impl From<DiagonalForm> for FormRepr {
    fn from(f: DiagonalForm) -> Self {
        FormRepr(f.entries)
    }
}

impl DiagonalForm {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("a diagonal form needs at least one entry"));
        }
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::domain("diagonal entries must be nonzero"));
        }
        Ok(DiagonalForm { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        DiagonalForm::new(entries.iter().map(|&a| rational::int(a)).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> Rational {
        self.entries.iter().fold(Rational::one(), |acc, a| acc * a)
    }

    /// `(r, s)`: counts of positive and negative entries.
    pub fn signature(&self) -> (usize, usize) {
        let s = self.entries.iter().filter(|a| a.is_negative()).count();
        (self.dim() - s, s)
    }

    /// Orthogonal sum.
    pub fn sum(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagonalForm { entries }
    }
}

/// `∏_{i<j} (a_i, a_j)_v`; `+1` in dimension one.
pub fn hasse_invariant(form: &DiagonalForm, place: Place) -> Result<Sign> {
    let place = place.checked()?;
    let e = form.entries();
    let mut acc = Sign::Plus;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            acc = acc * hilbert_symbol(&e[i], &e[j], place)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub dim: usize,
    pub det: SquareClass,
    pub hasse: Sign,
    /// Present at the real place only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
}

/// `ε` of a real form of signature `(r, s)`.
pub fn real_hasse_from_signature(s: usize) -> Sign {
    Sign::from_parity((s * s.saturating_sub(1) / 2) % 2 == 1)
}

pub fn local_invariants(form: &DiagonalForm, place: Place) -> Result<LocalInvariants> {
    let place = place.checked()?;
    let det = SquareClass::of(&form.det(), place)?;
    let hasse = hasse_invariant(form, place)?;
    let signature = match place {
        Place::Real => {
            let sig = form.signature();
            if real_hasse_from_signature(sig.1) != hasse {
                return Err(Error::Consistency(format!(
                    "real Hasse invariant {hasse} disagrees with signature {sig:?}"
                )));
            }
            Some(sig)
        }
        Place::Prime(_) => None,
    };
    Ok(LocalInvariants { dim: form.dim(), det, hasse, signature })
}

/// Local isometry test by comparing the complete invariants.
pub fn is_isometric_local(f1: &DiagonalForm, f2: &DiagonalForm, place: Place) -> Result<bool> {
    let a = local_invariants(f1, place)?;
    let b = local_invariants(f2, place)?;
    Ok(match place {
        Place::Real => a.signature == b.signature,
        Place::Prime(_) => a == b,
    })
}
