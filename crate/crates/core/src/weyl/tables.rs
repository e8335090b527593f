//! The σ-Coxeter elements `w_Σ` listed by stratum label, and the vertex
//! type `t_Σ = 2(ℓ(w_Σ) + 1)`.
//!
//! In type D both tables print the label `{m-1}` for different elements
//! when σ swaps the last pair. The element `s_0 s_2 ⋯ s_{m-2} τ`, whose
//! σ-support is `{0, …, m-2}`, is labelled `{m-1, m}` here; when σ is
//! trivial the printed `{m-1}` is accepted as an alias.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{CoxeterDatum, Family, SigmaChoice, WeylElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub label: BTreeSet<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<BTreeSet<usize>>,
    /// Word in the simple reflections; the element is `s_{w_1} ⋯ s_{w_k} τ`.
    pub word: Vec<usize>,
}

impl TableRow {
    pub fn matches(&self, label: &BTreeSet<usize>) -> bool {
        self.label == *label || self.aliases.contains(label)
    }
}

fn row(label: &[usize], word: Vec<usize>) -> TableRow {
    TableRow { label: label.iter().copied().collect(), aliases: Vec::new(), word }
}

/// `[0, 2, 3, …, i]`.
fn chain(i: usize) -> Vec<usize> {
    std::iter::once(0).chain(2..=i).collect()
}

pub fn table_rows(family: Family, m: usize, sigma: SigmaChoice) -> Result<Vec<TableRow>> {
    let mut rows = vec![row(&[0, 1], vec![]), row(&[2], vec![0])];
    match family {
        Family::B => {
            if m < 2 {
                return Err(Error::domain("type B needs m >= 2"));
            }
            if sigma != SigmaChoice::Identity {
                return Err(Error::domain("type B has trivial sigma"));
            }
            for i in 2..m {
                rows.push(row(&[i + 1], chain(i)));
            }
        }
        Family::D => {
            if m < 3 {
                return Err(Error::domain("type D needs m >= 3"));
            }
            for i in 2..=m - 2 {
                rows.push(row(&[i + 1], chain(i)));
            }
            // the last row so far is s_0 s_2 ⋯ s_{m-2} τ, printed as {m-1}
            let last = rows.last_mut().unwrap();
            let printed = last.label.clone();
            last.label = BTreeSet::from([m - 1, m]);
            match sigma {
                SigmaChoice::Identity => last.aliases.push(printed),
                SigmaChoice::SwapLastPair => {
                    let mut a = chain(m - 2);
                    a.push(m);
                    rows.push(row(&[m - 1], a));
                    let mut b = chain(m - 2);
                    b.push(m - 1);
                    rows.push(row(&[m], b));
                }
            }
        }
    }
    Ok(rows)
}

fn find_row(d: &CoxeterDatum, label: &BTreeSet<usize>) -> Result<TableRow> {
    table_rows(d.family(), d.m(), d.sigma())?
        .into_iter()
        .find(|r| r.matches(label))
        .ok_or_else(|| Error::domain(format!("{label:?} is not a table label for this datum")))
}

/// `w_Σ` as a group element.
pub fn table_w_sigma(d: &CoxeterDatum, label: &BTreeSet<usize>) -> Result<WeylElement> {
    let r = find_row(d, label)?;
    d.from_word(&r.word, 1)
}

pub fn t_sigma(d: &CoxeterDatum, label: &BTreeSet<usize>) -> Result<usize> {
    Ok(2 * (d.length(&table_w_sigma(d, label)?) + 1))
}

/// The table row whose element is `w`, if any.
pub fn label_of(d: &CoxeterDatum, w: &WeylElement) -> Result<Option<TableRow>> {
    for r in table_rows(d.family(), d.m(), d.sigma())? {
        if d.from_word(&r.word, 1)? == *w {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::KChoice;
    use super::*;

    #[test]
    fn b_rows() {
        let d = CoxeterDatum::new(Family::B, 3, SigmaChoice::Identity, KChoice::Default).unwrap();
        assert_eq!(table_w_sigma(&d, &BTreeSet::from([0, 1])).unwrap(), *d.tau());
        assert_eq!(t_sigma(&d, &BTreeSet::from([0, 1])).unwrap(), 2);
        assert_eq!(t_sigma(&d, &BTreeSet::from([2])).unwrap(), 4);
        assert_eq!(t_sigma(&d, &BTreeSet::from([3])).unwrap(), 6);
        assert!(table_w_sigma(&d, &BTreeSet::from([1])).is_err());
    }

    #[test]
    fn d_rows() {
        let m = 4;
        let d = CoxeterDatum::new(Family::D, m, SigmaChoice::SwapLastPair, KChoice::Default).unwrap();
        let w = table_w_sigma(&d, &BTreeSet::from([m])).unwrap();
        assert_eq!(w, d.from_word(&[0, 2, 3], 1).unwrap());
        let split = CoxeterDatum::new(Family::D, m, SigmaChoice::Identity, KChoice::Default).unwrap();
        assert_eq!(
            table_w_sigma(&split, &BTreeSet::from([m - 1])).unwrap(),
            table_w_sigma(&split, &BTreeSet::from([m - 1, m])).unwrap()
        );
    }
}
