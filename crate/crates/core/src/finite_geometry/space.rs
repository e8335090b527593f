use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::field::{Elem, FiniteField};
use crate::arith::{check_odd_prime, inv_mod, least_nonresidue};
use crate::error::{Error, Result};

/// Desk-scale caps on enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_field_size: u64,
    pub max_dim: usize,
    /// Candidate vectors examined before giving up.
    pub max_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_field_size: 125, max_dim: 6, max_nodes: 20_000_000 }
    }
}

impl Limits {
    pub const ENV_FIELD_CAP: &'static str = "SUPERSPECIAL_FIELD_CAP";

    /// Defaults, with the field-size cap taken from `SUPERSPECIAL_FIELD_CAP`
    /// when set.
    pub fn from_env() -> Result<Limits> {
        let mut l = Limits::default();
        if let Ok(v) = std::env::var(Self::ENV_FIELD_CAP) {
            l.max_field_size = v
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("{} must be a positive integer", Self::ENV_FIELD_CAP)))?;
        }
        Ok(l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Split,
    Nonsplit,
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<SpaceKind> {
        match s {
            "split" => Ok(SpaceKind::Split),
            "nonsplit" => Ok(SpaceKind::Nonsplit),
            _ => Err(Error::domain(format!("unknown kind {s:?}"))),
        }
    }
}

/// An even-dimensional quadratic space over `F_p`: hyperbolic planes, and
/// for the nonsplit kind a last block `x^2 - u y^2` with `u` the least
/// nonresidue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuadSpace {
    t: usize,
    kind: SpaceKind,
    p: u64,
    gram: Vec<Vec<u64>>,
}

impl FiniteQuadSpace {
    pub fn new(t: usize, kind: SpaceKind, p: u64, limits: &Limits) -> Result<FiniteQuadSpace> {
        check_odd_prime(p)?;
        if t < 2 || t % 2 == 1 {
            return Err(Error::domain("t must be even and at least 2"));
        }
        if t > limits.max_dim {
            return Err(Error::Resource(format!("dimension {t} exceeds the cap {}", limits.max_dim)));
        }
        let half = inv_mod(2, p);
        let mut gram = vec![vec![0; t]; t];
        let planes = match kind {
            SpaceKind::Split => t / 2,
            SpaceKind::Nonsplit => t / 2 - 1,
        };
        for i in 0..planes {
            gram[2 * i][2 * i + 1] = half;
            gram[2 * i + 1][2 * i] = half;
        }
        if kind == SpaceKind::Nonsplit {
            gram[t - 2][t - 2] = 1;
            gram[t - 1][t - 1] = p - least_nonresidue(p);
        }
        Ok(FiniteQuadSpace { t, kind, p, gram })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn gram(&self) -> &[Vec<u64>] {
        &self.gram
    }
}

/// A subspace of `F_{p^k}^t` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<Elem>>,
}

impl Subspace {
    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entries as coefficient vectors over `F_p`.
    pub fn to_coeffs(&self, f: &FiniteField) -> Vec<Vec<Vec<u64>>> {
        self.rows.iter().map(|r| r.iter().map(|&a| f.coeffs(a)).collect()).collect()
    }
}

/// Reduced row echelon form, zero rows dropped.
pub(crate) fn rref(f: &FiniteField, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let d = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], d);
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// A space together with the field `F_{p^k}` it is extended to.
#[derive(Debug, Clone)]
pub struct Extension {
    space: FiniteQuadSpace,
    field: FiniteField,
    gram: Vec<Vec<Elem>>,
    limits: Limits,
}

impl Extension {
    pub fn new(space: FiniteQuadSpace, k: usize, limits: &Limits) -> Result<Extension> {
        let field = FiniteField::new(space.p, k, limits.max_field_size)?;
        Self::with_field(space, field, limits)
    }

    pub fn with_field(space: FiniteQuadSpace, field: FiniteField, limits: &Limits) -> Result<Extension> {
        if field.p() != space.p {
            return Err(Error::domain("field characteristic differs from the space"));
        }
        let gram = space.gram.iter().map(|r| r.iter().map(|&a| a as Elem).collect()).collect();
        Ok(Extension { space, field, gram, limits: *limits })
    }

    pub fn space(&self) -> &FiniteQuadSpace {
        &self.space
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `M w`.
    fn gram_times(&self, w: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        self.gram
            .iter()
            .map(|row| row.iter().zip(w).fold(0, |acc, (&m, &x)| f.add(acc, f.mul(m, x))))
            .collect()
    }

    fn dot(&self, v: &[Elem], w: &[Elem]) -> Elem {
        let f = &self.field;
        v.iter().zip(w).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    pub fn frobenius(&self, s: &Subspace) -> Subspace {
        Subspace { rows: s.rows.iter().map(|r| r.iter().map(|&a| self.field.frob(a)).collect()).collect() }
    }

    /// `dim(A + B)`.
    pub fn join_dim(&self, a: &Subspace, b: &Subspace) -> usize {
        let rows: Vec<Vec<Elem>> = a.rows.iter().chain(&b.rows).cloned().collect();
        rref(&self.field, rows).len()
    }

    pub fn is_totally_isotropic(&self, s: &Subspace) -> bool {
        s.rows.iter().all(|v| {
            let mv = self.gram_times(v);
            s.rows.iter().all(|w| self.dot(w, &mv) == 0)
        })
    }

    /// All totally isotropic `d`-dimensional subspaces, sorted. Echelon
    /// shapes are enumerated one at a time; each new row must be isotropic
    /// and orthogonal to the rows chosen before it.
    pub fn enumerate_isotropic(&self, d: usize) -> Result<Vec<Subspace>> {
        let t = self.space.t;
        if d == 0 || d > t / 2 {
            return Err(Error::domain(format!("isotropic dimension must be in 1..={}", t / 2)));
        }
        let mut out = Vec::new();
        let mut budget = self.limits.max_nodes;
        let mut pivots = Vec::with_capacity(d);
        self.shapes(d, 0, &mut pivots, &mut |ext, piv| {
            let mut rows = Vec::with_capacity(d);
            let mut images = Vec::with_capacity(d);
            ext.fill_rows(piv, &mut rows, &mut images, &mut budget, &mut out)
        })?;
        out.sort();
        Ok(out)
    }

    fn shapes(
        &self,
        d: usize,
        start: usize,
        pivots: &mut Vec<usize>,
        f: &mut dyn FnMut(&Extension, &[usize]) -> Result<()>,
    ) -> Result<()> {
        if pivots.len() == d {
            return f(self, pivots);
        }
        for c in start..self.space.t {
            pivots.push(c);
            self.shapes(d, c + 1, pivots, f)?;
            pivots.pop();
        }
        Ok(())
    }

    fn fill_rows(
        &self,
        pivots: &[usize],
        rows: &mut Vec<Vec<Elem>>,
        images: &mut Vec<Vec<Elem>>,
        budget: &mut u64,
        out: &mut Vec<Subspace>,
    ) -> Result<()> {
        let r = rows.len();
        if r == pivots.len() {
            out.push(Subspace { rows: rows.clone() });
            return Ok(());
        }
        let t = self.space.t;
        let free: Vec<usize> = (pivots[r] + 1..t).filter(|c| !pivots.contains(c)).collect();
        let q = self.field.size() as u64;
        let count = q
            .checked_pow(free.len() as u32)
            .ok_or_else(|| Error::Resource("isotropic subspace search is too large".into()))?;
        if count > *budget {
            return Err(Error::Resource(format!(
                "isotropic subspace search exceeds {} candidates",
                self.limits.max_nodes
            )));
        }
        *budget -= count;
        let mut v = vec![0 as Elem; t];
        v[pivots[r]] = 1;
        for idx in 0..count {
            let mut rem = idx;
            for &c in &free {
                v[c] = (rem % q) as Elem;
                rem /= q;
            }
            if images.iter().any(|img| self.dot(&v, img) != 0) {
                continue;
            }
            let mv = self.gram_times(&v);
            if self.dot(&v, &mv) != 0 {
                continue;
            }
            rows.push(v.clone());
            images.push(mv);
            self.fill_rows(pivots, rows, images, budget, out)?;
            rows.pop();
            images.pop();
        }
        Ok(())
    }

    pub fn lagrangians(&self) -> Result<Vec<Subspace>> {
        self.enumerate_isotropic(self.space.t / 2)
    }

    /// Lagrangians `L` with `dim(L + Φ L) = t/2 + 1`.
    pub fn s_lambda_points(&self) -> Result<Vec<Subspace>> {
        let h = self.space.t / 2;
        Ok(self.lagrangians()?.into_iter().filter(|l| self.join_dim(l, &self.frobenius(l)) == h + 1).collect())
    }
}

/// `S_Λ` for the space of the given type over `F_{p^k}`.
pub fn s_lambda_points(t: usize, kind: SpaceKind, p: u64, k: usize, limits: &Limits) -> Result<(Extension, Vec<Subspace>)> {
    let ext = Extension::new(FiniteQuadSpace::new(t, kind, p, limits)?, k, limits)?;
    let pts = ext.s_lambda_points()?;
    Ok((ext, pts))
}

/// Orbits of Frobenius on a closed point set, each orbit starting at its
/// least element; orbits sorted by that element.
pub fn frobenius_orbits(ext: &Extension, points: &[Subspace]) -> Result<Vec<Vec<Subspace>>> {
    let set: BTreeSet<&Subspace> = points.iter().collect();
    let mut seen: BTreeMap<Subspace, ()> = BTreeMap::new();
    let mut orbits = Vec::new();
    for start in set.iter() {
        if seen.contains_key(*start) {
            continue;
        }
        let mut orbit = vec![(*start).clone()];
        seen.insert((*start).clone(), ());
        let mut cur = ext.frobenius(start);
        while cur != **start {
            if !set.contains(&cur) {
                return Err(Error::Consistency("point set is not closed under Frobenius".into()));
            }
            seen.insert(cur.clone(), ());
            orbit.push(cur.clone());
            cur = ext.frobenius(&cur);
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// The two isotropic lines of the anisotropic plane over `F_{p^2}`, sorted.
pub fn orientations(space: &FiniteQuadSpace, limits: &Limits) -> Result<(Extension, [Subspace; 2])> {
    if space.t != 2 || space.kind != SpaceKind::Nonsplit {
        return Err(Error::domain("orientations are defined for the anisotropic plane only"));
    }
    let ext = Extension::new(space.clone(), 2, limits)?;
    let lines = ext.enumerate_isotropic(1)?;
    let pair = <[Subspace; 2]>::try_from(lines)
        .map_err(|v| Error::Consistency(format!("expected 2 isotropic lines, found {}", v.len())))?;
    Ok((ext, pair))
}

/// Dimension of a maximal isotropic subspace over `F_p`, by enumeration.
pub fn witt_index(space: &FiniteQuadSpace, limits: &Limits) -> Result<usize> {
    let ext = Extension::new(space.clone(), 1, limits)?;
    let mut w = 0;
    for d in 1..=space.t / 2 {
        if ext.enumerate_isotropic(d)?.is_empty() {
            break;
        }
        w = d;
    }
    Ok(w)
}
