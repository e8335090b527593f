use std::collections::HashSet;
use std::sync::LazyLock;

use proptest::prelude::*;
use superspecial::weyl::{self, CoxeterDatum, Family, KChoice, SigmaChoice, WeylElement};

struct Case {
    datum: CoxeterDatum,
    adm: Vec<WeylElement>,
}

static CASES: LazyLock<Vec<Case>> = LazyLock::new(|| {
    [(Family::B, 2, SigmaChoice::Identity), (Family::B, 3, SigmaChoice::Identity), (Family::D, 3, SigmaChoice::Identity), (Family::D, 4, SigmaChoice::SwapLastPair)]
        .into_iter()
        .map(|(f, m, s)| {
            let datum = CoxeterDatum::new(f, m, s, KChoice::Default).unwrap();
            let adm = weyl::adm_set(&datum);
            Case { datum, adm }
        })
        .collect()
});

fn pick() -> impl Strategy<Value = (usize, usize)> {
    (0..CASES.len(), any::<prop::sample::Index>()).prop_map(|(c, i)| (c, i.index(CASES[c].adm.len())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_lengths_agree((c, i) in pick()) {
        let Case { datum, adm } = &CASES[c];
        let w = &adm[i];
        let l = datum.length(w);
        prop_assert_eq!(datum.separating_hyperplanes(w), l);
        let r = datum.reduced_word(w);
        prop_assert_eq!(r.word.len(), l);
        prop_assert_eq!(&datum.from_repr(&r).unwrap(), w);
    }

    #[test]
    fn inverse_preserves_length((c, i) in pick()) {
        let Case { datum, adm } = &CASES[c];
        prop_assert_eq!(datum.length(&adm[i].inverse()), datum.length(&adm[i]));
    }

    #[test]
    fn bruhat_is_consistent_with_length((c, i) in pick(), j in any::<prop::sample::Index>()) {
        let Case { datum, adm } = &CASES[c];
        let (u, v) = (&adm[i], &adm[j.index(adm.len())]);
        if datum.bruhat_leq(u, v).unwrap() {
            prop_assert!(datum.length(u) <= datum.length(v));
            if datum.length(u) == datum.length(v) {
                prop_assert_eq!(u, v);
            }
        }
    }
}

#[test]
fn eo_cox_inside_eo() {
    for Case { datum, .. } in CASES.iter() {
        let eo: HashSet<_> = weyl::eo_set(datum).into_iter().collect();
        assert!(weyl::eo_cox_set(datum).iter().all(|w| eo.contains(w)));
    }
}
