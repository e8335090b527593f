//! Extended affine Weyl groups `W̃ = Z^m ⋊ W_0` of types `B̃_m` and `D̃_m`.
//!
//! An element `t_λ w` acts on `R^m` by `x ↦ w x + λ`. The finite part `w` is
//! a signed permutation (with an even number of sign changes in type D).
//! Nodes are labelled `0..=m` with the fork at `0, 1`:
//!
//! - `s_i` for `1 <= i < m` swaps coordinates `i` and `i + 1`;
//! - `s_m` negates the last coordinate (B) or is the reflection in
//!   `e_{m-1} + e_m` (D);
//! - `s_0` is the affine reflection in `⟨e_1 + e_2, x⟩ = 1`.
//!
//! The length-zero group `Ω` has order 2 and is detected by the parity of
//! `Σ λ_i`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod eo;
mod tables;

pub use eo::{
    adm_set, eo_cox_set, eo_set, is_min_rep, is_sigma_coxeter, j_set, lower_interval, min_rep,
    min_reps, sigma_support,
};
pub use tables::{label_of, t_sigma, table_rows, table_w_sigma, TableRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    B,
    D,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::domain(format!("unknown family {s:?}"))),
        }
    }
}

/// The Frobenius action on the affine diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaChoice {
    Identity,
    SwapLastPair,
}

/// The parahoric type. `Default` is every node except 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KChoice {
    Default,
    Nodes(BTreeSet<usize>),
}

/// `t_λ w`. `finite[j] = ±(k + 1)` encodes `w e_j = ±e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    translation: Vec<i64>,
    finite: Vec<i8>,
}

impl WeylElement {
    pub fn identity(m: usize) -> WeylElement {
        WeylElement { translation: vec![0; m], finite: (1..=m as i8).collect() }
    }

    pub fn translation(lambda: Vec<i64>) -> WeylElement {
        let m = lambda.len();
        WeylElement { translation: lambda, finite: (1..=m as i8).collect() }
    }

    /// From parts; `finite` must be a signed permutation in the encoding above.
    pub fn from_parts(translation: Vec<i64>, finite: Vec<i8>) -> Result<WeylElement> {
        let m = translation.len();
        let mut seen = vec![false; m];
        if finite.len() != m {
            return Err(Error::domain("translation and finite part have different ranks"));
        }
        for &f in &finite {
            let k = f.unsigned_abs() as usize;
            if k == 0 || k > m || seen[k - 1] {
                return Err(Error::domain("finite part is not a signed permutation"));
            }
            seen[k - 1] = true;
        }
        Ok(WeylElement { translation, finite })
    }

    pub fn rank(&self) -> usize {
        self.translation.len()
    }

    pub fn translation_part(&self) -> &[i64] {
        &self.translation
    }

    pub fn finite_part(&self) -> &[i8] {
        &self.finite
    }

    /// Component in `Ω ≅ Z/2`.
    pub fn omega(&self) -> u8 {
        self.translation.iter().sum::<i64>().rem_euclid(2) as u8
    }

    pub fn negations(&self) -> usize {
        self.finite.iter().filter(|&&f| f < 0).count()
    }

    pub fn apply_finite(&self, x: &[i64]) -> Vec<i64> {
        let mut y = vec![0; x.len()];
        for (j, &f) in self.finite.iter().enumerate() {
            let k = f.unsigned_abs() as usize - 1;
            y[k] = if f > 0 { x[j] } else { -x[j] };
        }
        y
    }

    /// `x ↦ w x + scale·λ`, for points scaled by `scale`.
    pub fn apply_scaled(&self, x: &[i64], scale: i64) -> Vec<i64> {
        let mut y = self.apply_finite(x);
        for (yi, l) in y.iter_mut().zip(&self.translation) {
            *yi += scale * l;
        }
        y
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let mut translation = self.apply_finite(&other.translation);
        for (t, l) in translation.iter_mut().zip(&self.translation) {
            *t += l;
        }
        let finite = other
            .finite
            .iter()
            .map(|&f| {
                let g = self.finite[f.unsigned_abs() as usize - 1];
                if f > 0 {
                    g
                } else {
                    -g
                }
            })
            .collect();
        WeylElement { translation, finite }
    }

    pub fn inverse(&self) -> WeylElement {
        let m = self.rank();
        let mut finite = vec![0i8; m];
        for (j, &f) in self.finite.iter().enumerate() {
            let k = f.unsigned_abs() as usize - 1;
            finite[k] = if f > 0 { j as i8 + 1 } else { -(j as i8 + 1) };
        }
        let w_inv = WeylElement { translation: vec![0; m], finite };
        let translation = w_inv.apply_finite(&self.translation).into_iter().map(|t| -t).collect();
        WeylElement { translation, ..w_inv }
    }
}

/// Element in serialized form: a reduced word and the `Ω` component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementRepr {
    pub word: Vec<usize>,
    pub omega: u8,
}

#[derive(Debug, Clone)]
pub struct CoxeterDatum {
    family: Family,
    m: usize,
    sigma: SigmaChoice,
    k: BTreeSet<usize>,
    gens: Vec<WeylElement>,
    positive_roots: Vec<Vec<i64>>,
    coxeter: Vec<Vec<u32>>,
    tau: WeylElement,
    tau_perm: Vec<usize>,
    sigma_perm: Vec<usize>,
}

fn signed_permutations(m: usize, even_only: bool) -> Vec<Vec<i8>> {
    fn perms(rest: &mut Vec<i8>, cur: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            perms(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut ps = Vec::new();
    perms(&mut (1..=m as i8).collect(), &mut Vec::new(), &mut ps);
    let mut out = Vec::new();
    for p in ps {
        for signs in 0u32..(1 << m) {
            if even_only && signs.count_ones() % 2 == 1 {
                continue;
            }
            out.push(p.iter().enumerate().map(|(j, &x)| if signs >> j & 1 == 1 { -x } else { x }).collect());
        }
    }
    out
}

impl CoxeterDatum {
    /// Builds the datum for `λ = ω_1^∨ = e_1`.
    pub fn new(family: Family, m: usize, sigma: SigmaChoice, k: KChoice) -> Result<CoxeterDatum> {
        let min_m = match family {
            Family::B => 2,
            Family::D => 3,
        };
        if m < min_m || m > 8 {
            return Err(Error::domain(format!("rank {m} is out of range for type {family:?} (need {min_m}..=8)")));
        }
        if family == Family::B && sigma == SigmaChoice::SwapLastPair {
            return Err(Error::domain("the B̃ diagram has no automorphism swapping the last pair"));
        }
        let id = WeylElement::identity(m);
        let finite_gen = |f: Vec<i8>| WeylElement { translation: vec![0; m], finite: f };
        let mut gens = Vec::with_capacity(m + 1);
        // s_0 = t_{e1+e2} s_{e1+e2}
        let mut f0 = id.finite.clone();
        f0[0] = -2;
        f0[1] = -1;
        let mut t0 = vec![0; m];
        t0[0] = 1;
        t0[1] = 1;
        gens.push(WeylElement { translation: t0, finite: f0 });
        for i in 1..m {
            let mut f = id.finite.clone();
            f.swap(i - 1, i);
            gens.push(finite_gen(f));
        }
        let mut fm = id.finite.clone();
        match family {
            Family::B => fm[m - 1] = -(m as i8),
            Family::D => {
                fm[m - 2] = -(m as i8);
                fm[m - 1] = -(m as i8 - 1);
            }
        }
        gens.push(finite_gen(fm));

        let mut positive_roots = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let mut a = vec![0; m];
                a[i] = 1;
                a[j] = -1;
                positive_roots.push(a.clone());
                a[j] = 1;
                positive_roots.push(a);
            }
            if family == Family::B {
                let mut a = vec![0; m];
                a[i] = 1;
                positive_roots.push(a);
            }
        }

        let n = m + 1;
        let mut coxeter = vec![vec![1u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let g = gens[i].mul(&gens[j]);
                let mut acc = g.clone();
                let mut order = 1;
                while acc != id {
                    acc = acc.mul(&g);
                    order += 1;
                    if order > 12 {
                        return Err(Error::Consistency("generator product of unexpected order".into()));
                    }
                }
                coxeter[i][j] = order;
            }
        }

        let sigma_perm: Vec<usize> = match sigma {
            SigmaChoice::Identity => (0..n).collect(),
            SigmaChoice::SwapLastPair => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(m - 1, m);
                p
            }
        };
        for i in 0..n {
            for j in 0..n {
                if coxeter[sigma_perm[i]][sigma_perm[j]] != coxeter[i][j] {
                    return Err(Error::domain("sigma is not a diagram automorphism"));
                }
            }
        }

        let k = match k {
            KChoice::Default => (1..n).collect(),
            KChoice::Nodes(s) => s,
        };
        if k.iter().any(|&v| v >= n) {
            return Err(Error::domain("K contains a node outside 0..=m"));
        }
        if k.len() == n {
            return Err(Error::domain("K must be a proper subset of the nodes"));
        }
        if k.iter().any(|&v| !k.contains(&sigma_perm[v])) {
            return Err(Error::domain("K is not sigma-stable"));
        }

        let mut datum = CoxeterDatum {
            family,
            m,
            sigma,
            k,
            gens,
            positive_roots,
            coxeter,
            tau: id.clone(),
            tau_perm: (0..n).collect(),
            sigma_perm,
        };

        let mut e1 = vec![0; m];
        e1[0] = 1;
        let t_e1 = WeylElement::translation(e1);
        let candidates: Vec<WeylElement> = signed_permutations(m, family == Family::D)
            .into_iter()
            .map(|f| t_e1.mul(&finite_gen(f)))
            .filter(|x| datum.length(x) == 0)
            .collect();
        let [tau] = <[WeylElement; 1]>::try_from(candidates)
            .map_err(|_| Error::Consistency("length-zero element is not unique".into()))?;
        let tau_inv = tau.inverse();
        let mut tau_perm = Vec::with_capacity(n);
        for g in &datum.gens {
            let c = tau.mul(g).mul(&tau_inv);
            let j = datum
                .gens
                .iter()
                .position(|h| *h == c)
                .ok_or_else(|| Error::Consistency("τ does not normalize the base alcove".into()))?;
            tau_perm.push(j);
        }
        datum.tau = tau;
        datum.tau_perm = tau_perm;
        Ok(datum)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sigma(&self) -> SigmaChoice {
        self.sigma
    }

    pub fn k(&self) -> &BTreeSet<usize> {
        &self.k
    }

    pub fn nodes(&self) -> usize {
        self.m + 1
    }

    pub fn r#gen(&self, i: usize) -> &WeylElement {
        &self.gens[i]
    }

    pub fn tau(&self) -> &WeylElement {
        &self.tau
    }

    /// `τ s_i τ^{-1} = s_{π(i)}`.
    pub fn tau_perm(&self) -> &[usize] {
        &self.tau_perm
    }

    pub fn sigma_perm(&self) -> &[usize] {
        &self.sigma_perm
    }

    /// The node permutation of `τσ`.
    pub fn tau_sigma_perm(&self) -> Vec<usize> {
        self.sigma_perm.iter().map(|&i| self.tau_perm[i]).collect()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `t_{e_1}`.
    pub fn t_lambda(&self) -> WeylElement {
        let mut e1 = vec![0; self.m];
        e1[0] = 1;
        WeylElement::translation(e1)
    }

    /// The orbit `W_0 · λ = {±e_i}` as translations.
    pub fn lambda_orbit(&self) -> Vec<WeylElement> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for s in [1, -1] {
                let mut v = vec![0; self.m];
                v[i] = s;
                out.push(WeylElement::translation(v));
            }
        }
        out
    }

    pub fn contains(&self, x: &WeylElement) -> bool {
        x.rank() == self.m && (self.family == Family::B || x.negations().is_multiple_of(2))
    }

    pub fn check(&self, x: &WeylElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(format!("element does not belong to the {:?}{} group", self.family, self.m)))
        }
    }

    fn is_positive(root: &[i64]) -> bool {
        root.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    /// Iwahori–Matsumoto length:
    /// `Σ_{α>0, w^{-1}α>0} |⟨α,λ⟩| + Σ_{α>0, w^{-1}α<0} |⟨α,λ⟩ - 1|`.
    pub fn length(&self, x: &WeylElement) -> usize {
        let w_inv = WeylElement { translation: vec![0; self.m], finite: x.finite.clone() }.inverse();
        let mut total = 0;
        for a in &self.positive_roots {
            let pair: i64 = a.iter().zip(&x.translation).map(|(p, q)| p * q).sum();
            let image = w_inv.apply_finite(a);
            total += if Self::is_positive(&image) { pair.abs() } else { (pair - 1).abs() };
        }
        total as usize
    }

    pub fn is_left_descent(&self, s: usize, x: &WeylElement) -> bool {
        self.length(&self.gens[s].mul(x)) < self.length(x)
    }

    pub fn is_right_descent(&self, s: usize, x: &WeylElement) -> bool {
        self.length(&x.mul(&self.gens[s])) < self.length(x)
    }

    pub fn omega_element(&self, c: u8) -> WeylElement {
        if c.is_multiple_of(2) {
            WeylElement::identity(self.m)
        } else {
            self.tau.clone()
        }
    }

    /// Lexicographically least reduced word, by stripping the smallest left
    /// descent each time, and the `Ω` component.
    pub fn reduced_word(&self, x: &WeylElement) -> ElementRepr {
        let mut cur = x.clone();
        let mut word = Vec::new();
        'outer: loop {
            for s in 0..=self.m {
                let y = self.gens[s].mul(&cur);
                if self.length(&y) < self.length(&cur) {
                    word.push(s);
                    cur = y;
                    continue 'outer;
                }
            }
            break;
        }
        ElementRepr { word, omega: x.omega() }
    }

    /// A reduced word found by stripping right descents (largest first).
    pub fn reduced_word_right(&self, x: &WeylElement) -> Vec<usize> {
        let mut cur = x.mul(&self.omega_element(x.omega()).inverse());
        let mut word = Vec::new();
        'outer: loop {
            for s in (0..=self.m).rev() {
                let y = cur.mul(&self.gens[s]);
                if self.length(&y) < self.length(&cur) {
                    word.push(s);
                    cur = y;
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    /// `s_{i_1} ⋯ s_{i_k} τ^{omega}`.
    pub fn from_word(&self, word: &[usize], omega: u8) -> Result<WeylElement> {
        let mut x = WeylElement::identity(self.m);
        for &s in word {
            if s > self.m {
                return Err(Error::domain(format!("node {s} outside 0..={}", self.m)));
            }
            x = x.mul(&self.gens[s]);
        }
        Ok(x.mul(&self.omega_element(omega)))
    }

    pub fn from_repr(&self, r: &ElementRepr) -> Result<WeylElement> {
        if r.omega > 1 {
            return Err(Error::domain("omega must be 0 or 1"));
        }
        self.from_word(&r.word, r.omega)
    }

    /// Bruhat order, with `w_1 τ_1 ≤ w_2 τ_2` only when `τ_1 = τ_2`.
    pub fn bruhat_leq(&self, u: &WeylElement, v: &WeylElement) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.bruhat_leq_unchecked(u, v))
    }

    pub(crate) fn bruhat_leq_unchecked(&self, u: &WeylElement, v: &WeylElement) -> bool {
        if u.omega() != v.omega() {
            return false;
        }
        let (mut u, mut v) = (u.clone(), v.clone());
        loop {
            let lu = self.length(&u);
            let lv = self.length(&v);
            if lu > lv {
                return false;
            }
            if lv == 0 {
                return u == v;
            }
            let s = (0..=self.m).find(|&s| self.is_left_descent(s, &v)).expect("positive length has a descent");
            // u ≤ v  iff  min(u, s u) ≤ s v
            let su = self.gens[s].mul(&u);
            if self.length(&su) < lu {
                u = su;
            }
            v = self.gens[s].mul(&v);
        }
    }

    /// Sorts by `(length, reduced word)`.
    pub fn sort_elements(&self, xs: impl IntoIterator<Item = WeylElement>) -> Vec<WeylElement> {
        let mut keyed: Vec<((usize, ElementRepr), WeylElement)> =
            xs.into_iter().map(|x| ((self.length(&x), self.reduced_word(&x)), x)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.1 == b.1);
        keyed.into_iter().map(|(_, x)| x).collect()
    }

    /// Number of affine root hyperplanes separating the base alcove from its
    /// image, counted at an interior point of the alcove.
    pub fn separating_hyperplanes(&self, x: &WeylElement) -> usize {
        let m = self.m as i64;
        let scale = 4 * m;
        // a_i = (2(m - i) + 1) / 4m lies in the open base alcove
        let a: Vec<i64> = (1..=m).map(|i| 2 * (m - i) + 1).collect();
        let xa = x.apply_scaled(&a, scale);
        self.positive_roots
            .iter()
            .map(|r| {
                let v: i64 = r.iter().zip(&xa).map(|(p, q)| p * q).sum();
                v.div_euclid(scale).unsigned_abs() as usize
            })
            .sum()
    }
}
