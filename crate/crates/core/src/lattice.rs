//! `Z_p`-lattices given by Gram matrices of the bilinear form `[x, y]`.
//!
//! Valuations are those of the elementary divisors of the Gram matrix of
//! `Λ` itself, so a negative valuation means `Λ^∨ ⊊ Λ`. The quadratic form
//! is `Q(x) = [x, x] / 2` throughout, both on the ambient space and on the
//! quotient `Λ / Λ^∨`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{check_odd_prime, least_nonresidue, legendre};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::padic::{self, DiagonalForm, LocalInvariants, Place, Sign, SquareClass, UnitClass};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: QMatrix,
    p: u64,
}

impl GramLattice {
    pub fn new(gram: QMatrix, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if !gram.is_symmetric() {
            return Err(Error::domain("Gram matrix must be symmetric"));
        }
        if gram.det().is_zero() {
            return Err(Error::domain("Gram matrix is singular"));
        }
        Ok(GramLattice { gram, p })
    }

    pub fn diagonal(entries: Vec<Rational>, p: u64) -> Result<Self> {
        GramLattice::new(QMatrix::diagonal(entries), p)
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.gram.n()
    }

    /// The dual lattice, in the dual basis (Gram matrix inverted).
    pub fn dual(&self) -> GramLattice {
        GramLattice { gram: self.gram.inverse().expect("nonsingular by construction"), p: self.p }
    }

    /// The ambient quadratic form `Q = [x,x]/2`, diagonalized over `Q`.
    pub fn ambient_form(&self) -> DiagonalForm {
        let (d, _) = self.gram.diagonalize().expect("nonsingular symmetric");
        let half = rational::frac(1, 2);
        DiagonalForm::new(d.entries().iter().map(|a| a * &half).collect()).unwrap()
    }

    pub fn ambient_invariants(&self) -> LocalInvariants {
        padic::local_invariants(&self.ambient_form(), Place::Prime(self.p))
            .expect("p validated at construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanBlock {
    pub scale: i64,
    /// Diagonal Gram block of `p`-adic units.
    pub unit_gram: QMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanDecomposition {
    pub blocks: Vec<JordanBlock>,
    /// Columns are the new basis in old coordinates: `Uᵀ G U` is the block
    /// form. Entries are `p`-integral and `det U` is a `p`-adic unit.
    pub witness: QMatrix,
}

impl JordanDecomposition {
    /// The block-diagonal matrix `⊕ p^{scale} · unit_gram`.
    pub fn assembled(&self, p: u64) -> QMatrix {
        let entries = self
            .blocks
            .iter()
            .flat_map(|b| {
                let s = rational::pow_p(p, b.scale);
                (0..b.unit_gram.n()).map(move |i| b.unit_gram.get(i, i) * &s).collect::<Vec<_>>()
            })
            .collect();
        QMatrix::diagonal(entries)
    }

    /// Checks the witness: `p`-integral, unit determinant, and reproducing
    /// the block form exactly.
    pub fn verify(&self, lat: &GramLattice) -> bool {
        let p = lat.p;
        let u = &self.witness;
        let integral = u.rows().iter().flatten().all(|x| x.is_zero() || rational::valuation(x, p) >= 0);
        let det = u.det();
        integral
            && !det.is_zero()
            && rational::valuation(&det, p) == 0
            && lat.gram.congruence(u) == self.assembled(p)
    }

    pub fn valuations(&self) -> Vec<i64> {
        self.blocks.iter().flat_map(|b| std::iter::repeat_n(b.scale, b.unit_gram.n())).collect()
    }
}

fn min_valuation_entry(m: &QMatrix, from: usize, p: u64, diagonal_only: bool) -> Option<(usize, usize, i64)> {
    let n = m.n();
    let mut best: Option<(usize, usize, i64)> = None;
    for i in from..n {
        for j in from..n {
            if diagonal_only && i != j {
                continue;
            }
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            let v = rational::valuation(x, p);
            if best.is_none_or(|(_, _, bv)| v < bv) {
                best = Some((i, j, v));
            }
        }
    }
    best
}

/// Diagonal Jordan splitting over `Z_p` (odd `p`), scales nondecreasing.
pub fn jordan_decompose(lat: &GramLattice) -> Result<JordanDecomposition> {
    let p = lat.p;
    let n = lat.dim();
    let mut m = lat.gram.clone();
    let mut u = QMatrix::identity(n);
    for k in 0..n {
        let (_, _, vmin) =
            min_valuation_entry(&m, k, p, false).ok_or_else(|| Error::domain("Gram matrix is singular"))?;
        let diag = min_valuation_entry(&m, k, p, true).filter(|&(_, _, v)| v == vmin);
        let i = match diag {
            Some((i, _, _)) => i,
            None => {
                // only an off-diagonal entry attains the minimum: e_i += e_j
                // gives a diagonal entry of that valuation since 2 is a unit
                let (i, j, _) = min_valuation_entry(&m, k, p, false).unwrap();
                m.add_basis(i, j, &Rational::one());
                u.add_col(i, j, &Rational::one());
                i
            }
        };
        if i != k {
            m.swap_basis(i, k);
            u.swap_cols(i, k);
        }
        for j in k + 1..n {
            if m.get(j, k).is_zero() {
                continue;
            }
            let c = -(m.get(j, k) / m.get(k, k));
            m.add_basis(j, k, &c);
            u.add_col(j, k, &c);
        }
    }
    debug_assert!(m.is_diagonal());

    let mut order: Vec<(i64, usize)> = (0..n).map(|i| (rational::valuation(m.get(i, i), p), i)).collect();
    order.sort();
    let perm: Vec<usize> = order.iter().map(|&(_, i)| i).collect();
    let witness_rows = (0..n).map(|r| perm.iter().map(|&c| u.get(r, c).clone()).collect()).collect();
    let witness = QMatrix::new(witness_rows)?;

    let mut blocks: Vec<JordanBlock> = Vec::new();
    let mut i = 0;
    while i < n {
        let scale = order[i].0;
        let mut units = Vec::new();
        while i < n && order[i].0 == scale {
            units.push(m.get(order[i].1, order[i].1) / rational::pow_p(p, scale));
            i += 1;
        }
        blocks.push(JordanBlock { scale, unit_gram: QMatrix::diagonal(units) });
    }
    Ok(JordanDecomposition { blocks, witness })
}

/// `p`-adic valuations of the elementary divisors of the Gram matrix,
/// ascending, from a Smith normal form over `Z_(p)`.
pub fn dual_quotient(lat: &GramLattice) -> Vec<i64> {
    let p = lat.p;
    let n = lat.dim();
    let mut x = lat.gram.clone();
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let (i, j, v) = min_valuation_entry(&x, k, p, false).expect("nonsingular");
        if i != k {
            let mut t = x.transpose();
            t.swap_cols(i, k);
            x = t.transpose();
        }
        if j != k {
            x.swap_cols(j, k);
        }
        for r in k + 1..n {
            if !x.get(r, k).is_zero() {
                let c = -(x.get(r, k) / x.get(k, k));
                x.add_row(r, k, &c);
            }
        }
        for c in k + 1..n {
            if !x.get(k, c).is_zero() {
                let f = -(x.get(k, c) / x.get(k, k));
                x.add_col(c, k, &f);
            }
        }
        vals.push(v);
    }
    vals.sort_unstable();
    vals
}

/// A nondegenerate diagonal quadratic form over `F_p`, given by the
/// coefficients of `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientForm {
    pub p: u64,
    pub diag: Vec<u64>,
}

const MAX_ISOTROPY_SEARCH: u64 = 10_000_000;

impl QuotientForm {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Exhaustive search for a nonzero isotropic vector.
    pub fn is_anisotropic(&self) -> Result<bool> {
        let p = self.p;
        let t = self.dim() as u32;
        let total = p
            .checked_pow(t)
            .filter(|&c| c <= MAX_ISOTROPY_SEARCH)
            .ok_or_else(|| Error::Resource(format!("isotropy search over F_{p}^{t}")))?;
        let mut x = vec![0u64; t as usize];
        for idx in 1..total {
            let mut r = idx;
            for xi in x.iter_mut() {
                *xi = r % p;
                r /= p;
            }
            let q: u64 = self.diag.iter().zip(&x).map(|(a, xi)| a * xi % p * xi % p).sum::<u64>() % p;
            if q == 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Witt type for even dimension: split iff the discriminant is the class
    /// of `(-1)^{t/2}`. `None` for odd or zero dimension.
    pub fn is_split(&self) -> Option<bool> {
        let t = self.dim();
        if t == 0 || t % 2 == 1 {
            return None;
        }
        let p = self.p;
        let mut disc = self.diag.iter().fold(1u64, |acc, a| acc * a % p);
        if (t / 2) % 2 == 1 {
            disc = (p - disc) % p;
        }
        Some(legendre(disc, p) == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexReport {
    pub is_vertex: bool,
    pub t: usize,
    pub quotient_form: Option<QuotientForm>,
    anisotropic: Option<bool>,
}

impl VertexReport {
    pub fn quotient_is_anisotropic(&self) -> Option<bool> {
        self.anisotropic
    }
}

impl Serialize for VertexReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("VertexReport", 4)?;
        st.serialize_field("is_vertex", &self.is_vertex)?;
        st.serialize_field("t", &self.t)?;
        let q = self.anisotropic.map(|a| if a { "anisotropic" } else { "split" });
        st.serialize_field("quotient", &q)?;
        let kind = self
            .quotient_form
            .as_ref()
            .and_then(QuotientForm::is_split)
            .map(|s| if s { "split" } else { "nonsplit" });
        st.serialize_field("kind", &kind)?;
        st.end()
    }
}

/// Vertex test `pΛ ⊆ Λ^∨ ⊆ Λ`, the type `t = dim Λ/Λ^∨`, and the quotient
/// quadratic space read off the scale `-1` Jordan block.
pub fn vertex_report(lat: &GramLattice) -> Result<VertexReport> {
    let vals = dual_quotient(lat);
    let is_vertex = vals.iter().all(|&v| v == 0 || v == -1);
    let t = vals.iter().filter(|&&v| v == -1).count();
    if !is_vertex {
        return Ok(VertexReport { is_vertex, t, quotient_form: None, anisotropic: None });
    }
    let p = lat.p;
    let jordan = jordan_decompose(lat)?;
    let inv2 = crate::arith::inv_mod(2, p);
    let diag: Vec<u64> = jordan
        .blocks
        .iter()
        .filter(|b| b.scale == -1)
        .flat_map(|b| (0..b.unit_gram.n()).map(move |i| rational::residue(b.unit_gram.get(i, i), p) * inv2 % p))
        .collect();
    if diag.len() != t {
        return Err(Error::Consistency("Jordan and Smith forms disagree on the type".into()));
    }
    let form = QuotientForm { p, diag };
    let anisotropic = form.is_anisotropic()?;
    Ok(VertexReport { is_vertex, t, quotient_form: Some(form), anisotropic: Some(anisotropic) })
}

pub fn is_self_dual(lat: &GramLattice) -> bool {
    dual_quotient(lat).iter().all(|&v| v == 0)
}

/// Vertex of type 2 whose quotient is the anisotropic plane (the norm form
/// of `F_{p^2}/F_p`).
pub fn is_almost_self_dual(lat: &GramLattice) -> Result<bool> {
    let r = vertex_report(lat)?;
    Ok(r.is_vertex && r.t == 2 && r.anisotropic == Some(true))
}

fn unit_class_of(det: &SquareClass) -> Result<(u64, UnitClass)> {
    match *det {
        SquareClass::Padic { p, odd_valuation: false, unit } => Ok((p, unit)),
        _ => Err(Error::domain("determinant must be a p-adic unit square class")),
    }
}

/// Largest possible vertex type in a space of dimension `n` with unit
/// determinant `det`.
pub fn t_max(n: usize, det: &SquareClass) -> Result<usize> {
    if n < 3 {
        return Err(Error::domain("t_max needs n >= 3"));
    }
    let (p, unit) = unit_class_of(det)?;
    if n % 2 == 1 {
        return Ok(n - 1);
    }
    let minus_one_power = if (n / 2).is_multiple_of(2) { 1 } else { legendre(p - 1, p) };
    let det_sq = unit == UnitClass::Square;
    Ok(if det_sq == (minus_one_power == 1) { n - 2 } else { n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    SelfDual,
    AlmostSelfDual,
}

/// A lattice of the requested kind in the space of dimension `n`, unit
/// determinant `det` and Hasse invariant `eps`. Self-dual lattices exist
/// exactly when `ε = +1`, almost-self-dual ones when `ε = -1`.
pub fn construct_lattice(p: u64, n: usize, det: &SquareClass, eps: Sign, kind: LatticeKind) -> Result<GramLattice> {
    check_odd_prime(p)?;
    let (dp, unit) = unit_class_of(det)?;
    if dp != p {
        return Err(Error::domain(format!("determinant class is at {dp}, not {p}")));
    }
    let u = least_nonresidue(p) as i64;
    let class_rep = |c: UnitClass| if c == UnitClass::Square { 1 } else { u };
    // coefficients of Q; the Gram matrix is twice these
    let q_coeffs: Vec<Rational> = match (kind, eps) {
        (LatticeKind::SelfDual, Sign::Minus) => {
            return Err(Error::domain("a self-dual lattice requires ε(V) = +1"));
        }
        (LatticeKind::AlmostSelfDual, Sign::Plus) => {
            return Err(Error::domain("an almost-self-dual lattice requires ε(V) = -1"));
        }
        (LatticeKind::SelfDual, Sign::Plus) => {
            if n == 0 {
                return Err(Error::domain("n must be positive"));
            }
            let mut c = vec![rational::int(1); n - 1];
            c.push(rational::int(class_rep(unit)));
            c
        }
        (LatticeKind::AlmostSelfDual, Sign::Minus) => {
            if n < 2 {
                return Err(Error::domain("an almost-self-dual lattice needs n >= 2"));
            }
            // the plane (1/p) x^2 - (u/p) y^2 contributes the class of -u
            let plane_class = if legendre((p as i64 - u) as u64, p) == 1 { UnitClass::Square } else { UnitClass::Nonsquare };
            let mut c = Vec::new();
            if n >= 3 {
                c.extend(std::iter::repeat_n(rational::int(1), n - 3));
                let need = if plane_class == unit { UnitClass::Square } else { UnitClass::Nonsquare };
                c.push(rational::int(class_rep(need)));
            } else if plane_class != unit {
                return Err(Error::domain("in dimension 2 the determinant is forced to be the class of -u"));
            }
            c.push(rational::frac(1, p as i64));
            c.push(rational::frac(-u, p as i64));
            c
        }
    };
    let two = rational::int(2);
    let lat = GramLattice::diagonal(q_coeffs.iter().map(|a| a * &two).collect(), p)?;

    let inv = lat.ambient_invariants();
    let ok_pred = match kind {
        LatticeKind::SelfDual => is_self_dual(&lat),
        LatticeKind::AlmostSelfDual => is_almost_self_dual(&lat)?,
    };
    if !ok_pred || inv.dim != n || inv.det != *det || inv.hasse != eps {
        return Err(Error::Consistency("constructed lattice failed verification".into()));
    }
    Ok(lat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::square_class;
    use crate::rational::{frac, int};

    fn diag(p: u64, e: &[Rational]) -> GramLattice {
        GramLattice::diagonal(e.to_vec(), p).unwrap()
    }

    #[test]
    fn jordan_examples() {
        let lat = diag(3, &[int(1), int(1), int(1)]);
        let j = jordan_decompose(&lat).unwrap();
        assert_eq!(j.blocks.len(), 1);
        assert_eq!(j.blocks[0].scale, 0);
        assert!(j.verify(&lat));

        let lat = diag(5, &[int(1), int(5), int(5)]);
        let j = jordan_decompose(&lat).unwrap();
        assert_eq!(j.blocks.iter().map(|b| b.scale).collect::<Vec<_>>(), vec![0, 1]);
        assert!(j.verify(&lat));

        // only an off-diagonal entry has minimal valuation
        let g = QMatrix::from_ints(&[&[3, 1, 0], &[1, 3, 6], &[0, 6, 9]]).unwrap();
        let lat = GramLattice::new(g, 3).unwrap();
        let j = jordan_decompose(&lat).unwrap();
        assert!(j.verify(&lat));
        assert_eq!(j.valuations(), dual_quotient(&lat));
    }

    #[test]
    fn dual_quotient_examples() {
        assert_eq!(dual_quotient(&diag(3, &[int(1), int(1), int(1)])), vec![0, 0, 0]);
        assert_eq!(dual_quotient(&diag(3, &[int(1), frac(1, 3), frac(1, 3)])), vec![-1, -1, 0]);
        assert_eq!(dual_quotient(&diag(7, &[int(7)])), vec![1]);
        let lat = diag(5, &[int(1), frac(2, 5), int(25)]);
        let mut neg: Vec<i64> = dual_quotient(&lat.dual()).iter().map(|v| -v).collect();
        neg.sort();
        assert_eq!(neg, dual_quotient(&lat));
        assert!(GramLattice::new(QMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap(), 3).is_err());
    }

    #[test]
    fn vertex_examples() {
        let r = vertex_report(&diag(3, &[int(1), int(1), int(1)])).unwrap();
        assert!(r.is_vertex);
        assert_eq!(r.t, 0);

        let aniso = diag(3, &[int(1), frac(1, 3), frac(1, 3)]);
        let r = vertex_report(&aniso).unwrap();
        assert!(r.is_vertex);
        assert_eq!(r.t, 2);
        assert_eq!(r.quotient_is_anisotropic(), Some(true));
        assert!(is_almost_self_dual(&aniso).unwrap());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["quotient"], "anisotropic");
        assert_eq!(json["kind"], "nonsplit");

        let split = diag(3, &[int(1), frac(1, 3), frac(-1, 3)]);
        let r = vertex_report(&split).unwrap();
        assert!(r.is_vertex);
        assert_eq!(r.t, 2);
        assert_eq!(r.quotient_is_anisotropic(), Some(false));
        assert!(!is_almost_self_dual(&split).unwrap());

        let r = vertex_report(&diag(3, &[int(1), frac(1, 9)])).unwrap();
        assert!(!r.is_vertex);
        assert!(r.quotient_form.is_none());
    }

    #[test]
    fn self_dual() {
        assert!(is_self_dual(&diag(5, &[int(1), int(2), int(3), int(4)])));
        assert!(!is_self_dual(&diag(5, &[int(1), int(5)])));
    }

    #[test]
    fn t_max_rules() {
        let p = 3;
        let sq = square_class(&int(1), p).unwrap();
        let ns = square_class(&int(2), p).unwrap();
        assert_eq!(t_max(5, &sq).unwrap(), 4);
        // (-1)^3 = -1 is a nonsquare mod 3
        assert_eq!(t_max(6, &ns).unwrap(), 4);
        assert_eq!(t_max(6, &sq).unwrap(), 6);
        assert_eq!(t_max(4, &sq).unwrap(), 2);
        assert!(t_max(6, &square_class(&int(3), p).unwrap()).is_err());
        assert!(t_max(2, &sq).is_err());
    }

    #[test]
    fn construction() {
        let p = 3;
        let one = square_class(&int(1), p).unwrap();
        let lat = construct_lattice(p, 3, &one, Sign::Plus, LatticeKind::SelfDual).unwrap();
        assert!(is_self_dual(&lat));
        assert_eq!(lat.gram(), &QMatrix::diagonal(vec![int(2), int(2), int(2)]));

        let lat = construct_lattice(p, 3, &one, Sign::Minus, LatticeKind::AlmostSelfDual).unwrap();
        assert!(is_almost_self_dual(&lat).unwrap());
        let inv = lat.ambient_invariants();
        assert_eq!((inv.dim, inv.det, inv.hasse), (3, one, Sign::Minus));

        let err = construct_lattice(p, 3, &one, Sign::Minus, LatticeKind::SelfDual).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let err = construct_lattice(p, 3, &one, Sign::Plus, LatticeKind::AlmostSelfDual).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let nonunit = square_class(&int(3), p).unwrap();
        assert!(construct_lattice(p, 3, &nonunit, Sign::Plus, LatticeKind::SelfDual).is_err());
    }
}
