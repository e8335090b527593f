//! Admissible sets, minimal coset representatives and Ekedahl–Oort sets.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use super::{CoxeterDatum, WeylElement};
use crate::error::{Error, Result};

type Interval = Rc<HashSet<WeylElement>>;

fn lower_memo(d: &CoxeterDatum, w: &WeylElement, memo: &mut HashMap<WeylElement, Interval>) -> Interval {
    if let Some(hit) = memo.get(w) {
        return hit.clone();
    }
    let out = match (0..d.nodes()).find(|&s| d.is_left_descent(s, w)) {
        None => Rc::new(HashSet::from([w.clone()])),
        Some(s) => {
            // [e, w] = [e, s w] ∪ s [e, s w] for a left descent s
            let below = lower_memo(d, &d.r#gen(s).mul(w), memo);
            let mut set: HashSet<WeylElement> = (*below).clone();
            set.extend(below.iter().map(|u| d.r#gen(s).mul(u)));
            Rc::new(set)
        }
    };
    memo.insert(w.clone(), out.clone());
    out
}

/// `{u : u ≤ w}`, sorted.
pub fn lower_interval(d: &CoxeterDatum, w: &WeylElement) -> Result<Vec<WeylElement>> {
    d.check(w)?;
    let set = lower_memo(d, w, &mut HashMap::new());
    Ok(d.sort_elements(set.iter().cloned()))
}

/// `Adm(μ) = {w : w ≤ t_{x(λ)} for some x ∈ W_0}`, sorted.
pub fn adm_set(d: &CoxeterDatum) -> Vec<WeylElement> {
    let mut memo = HashMap::new();
    let mut all = HashSet::new();
    for t in d.lambda_orbit() {
        all.extend(lower_memo(d, &t, &mut memo).iter().cloned());
    }
    d.sort_elements(all)
}

/// `ℓ(s w) > ℓ(w)` for every `s ∈ K`.
pub fn is_min_rep(d: &CoxeterDatum, w: &WeylElement) -> bool {
    d.k().iter().all(|&s| !d.is_left_descent(s, w))
}

/// The minimal-length element of `W_K w`.
pub fn min_rep(d: &CoxeterDatum, w: &WeylElement) -> WeylElement {
    let mut cur = w.clone();
    while let Some(&s) = d.k().iter().find(|&&s| d.is_left_descent(s, &cur)) {
        cur = d.r#gen(s).mul(&cur);
    }
    cur
}

/// `Adm(μ) ∩ ^K W̃`.
pub fn min_reps(d: &CoxeterDatum) -> Vec<WeylElement> {
    adm_set(d).into_iter().filter(|w| is_min_rep(d, w)).collect()
}

/// `EO^K(μ)`: minimal representatives of left `W_K`-cosets inside
/// `W_K Adm(μ) W_K`, found by closing under right multiplication by `K`.
pub fn eo_set(d: &CoxeterDatum) -> Vec<WeylElement> {
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut queue: VecDeque<WeylElement> = VecDeque::new();
    for a in adm_set(d) {
        let r = min_rep(d, &a);
        if seen.insert(r.clone()) {
            queue.push_back(r);
        }
    }
    while let Some(r) = queue.pop_front() {
        for &s in d.k() {
            let next = min_rep(d, &r.mul(d.r#gen(s)));
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    d.sort_elements(seen)
}

/// The `⟨τσ⟩`-closure of the support of the `W_a`-part of `w`.
pub fn sigma_support(d: &CoxeterDatum, w: &WeylElement) -> BTreeSet<usize> {
    let perm = d.tau_sigma_perm();
    let mut out: BTreeSet<usize> = d.reduced_word(w).word.into_iter().collect();
    let mut frontier: Vec<usize> = out.iter().copied().collect();
    while let Some(v) = frontier.pop() {
        if out.insert(perm[v]) {
            frontier.push(perm[v]);
        }
    }
    out
}

fn orbit_count(perm: &[usize], set: &BTreeSet<usize>) -> usize {
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &v in set {
        if seen.contains(&v) {
            continue;
        }
        count += 1;
        let mut x = v;
        while seen.insert(x) {
            x = perm[x];
        }
    }
    count
}

/// `ℓ(w)` equals the number of `⟨τσ⟩`-orbits on the σ-support.
pub fn is_sigma_coxeter(d: &CoxeterDatum, w: &WeylElement) -> bool {
    d.length(w) == orbit_count(&d.tau_sigma_perm(), &sigma_support(d, w))
}

/// σ-Coxeter elements of `EO^K(μ)` whose σ-support is a proper subset.
pub fn eo_cox_set(d: &CoxeterDatum) -> Vec<WeylElement> {
    eo_set(d)
        .into_iter()
        .filter(|w| is_sigma_coxeter(d, w) && sigma_support(d, w).len() < d.nodes())
        .collect()
}

/// Nonempty `τσ`-stable node sets whose members are equidistant (in the
/// diagram) from the single node outside `K`.
pub fn j_set(d: &CoxeterDatum) -> Result<Vec<BTreeSet<usize>>> {
    let n = d.nodes();
    let outside: Vec<usize> = (0..n).filter(|v| !d.k().contains(v)).collect();
    let [root] = outside[..] else {
        return Err(Error::domain("the node set J needs exactly one node outside K"));
    };
    let cox = d.coxeter_matrix();
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for u in 0..n {
            if u != v && cox[v][u] >= 3 && dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let perm = d.tau_sigma_perm();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let stable = set.iter().all(|&v| set.contains(&perm[v]));
        let first = dist[*set.iter().next().unwrap()];
        if stable && set.iter().all(|&v| dist[v] == first) {
            out.push(set);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{Family, KChoice, SigmaChoice};
    use super::*;

    fn b2() -> CoxeterDatum {
        CoxeterDatum::new(Family::B, 2, SigmaChoice::Identity, KChoice::Default).unwrap()
    }

    #[test]
    fn adm_membership() {
        let d = b2();
        let adm = adm_set(&d);
        assert!(adm.contains(d.tau()));
        assert!(adm.contains(&d.t_lambda()));
        assert!(!adm.contains(&WeylElement::identity(2)));
        for w in &adm {
            assert!(d.bruhat_leq(w, &d.t_lambda()).unwrap() || d.lambda_orbit().iter().any(|t| d.bruhat_leq(w, t).unwrap()));
        }
    }

    #[test]
    fn min_rep_examples() {
        let d = b2();
        assert!(is_min_rep(&d, d.tau()));
        let s0tau = d.from_word(&[0], 1).unwrap();
        assert!(is_min_rep(&d, &s0tau));
        let k0 = CoxeterDatum::new(Family::B, 2, SigmaChoice::Identity, KChoice::Nodes([0, 1].into())).unwrap();
        assert!(!is_min_rep(&k0, &s0tau));
    }

    #[test]
    fn supports() {
        let d = b2();
        assert!(sigma_support(&d, d.tau()).is_empty());
        assert!(is_sigma_coxeter(&d, d.tau()));
        let s0tau = d.from_word(&[0], 1).unwrap();
        assert_eq!(sigma_support(&d, &s0tau), BTreeSet::from([0, 1]));
        assert!(is_sigma_coxeter(&d, &s0tau));
        let s0s1tau = d.from_word(&[0, 1], 1).unwrap();
        assert_eq!(sigma_support(&d, &s0s1tau), BTreeSet::from([0, 1]));
        assert!(!is_sigma_coxeter(&d, &s0s1tau));
    }

    #[test]
    fn eo_matches_min_reps() {
        for (f, m, s) in [
            (Family::B, 2, SigmaChoice::Identity),
            (Family::B, 3, SigmaChoice::Identity),
            (Family::D, 4, SigmaChoice::SwapLastPair),
        ] {
            let d = CoxeterDatum::new(f, m, s, KChoice::Default).unwrap();
            assert_eq!(eo_set(&d), min_reps(&d));
        }
    }

    #[test]
    fn j_set_distances() {
        for m in 2..=4 {
            let excl_m: BTreeSet<usize> = (0..m).collect();
            let d = CoxeterDatum::new(Family::B, m, SigmaChoice::Identity, KChoice::Nodes(excl_m)).unwrap();
            assert!(j_set(&d).unwrap().contains(&BTreeSet::from([0, 1])));
            let d = CoxeterDatum::new(Family::B, m, SigmaChoice::Identity, KChoice::Default).unwrap();
            let j = j_set(&d).unwrap();
            assert!(!j.contains(&BTreeSet::from([0, 1])));
            let perm = d.tau_sigma_perm();
            for v in 0..=m {
                if perm[v] == v {
                    assert!(j.contains(&BTreeSet::from([v])));
                }
            }
        }
        let d = CoxeterDatum::new(Family::B, 3, SigmaChoice::Identity, KChoice::Nodes([1, 2].into())).unwrap();
        assert!(j_set(&d).is_err());
    }
}
