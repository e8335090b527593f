use proptest::prelude::*;
use superspecial::lattice::{self, GramLattice};
use superspecial::matrix::QMatrix;
use superspecial::rational::{frac, int, Rational};

fn entry(p: i64) -> impl Strategy<Value = Rational> {
    (prop::sample::select(vec![1i64, 2, -1, 7]), -2i64..=2).prop_map(move |(u, e)| {
        if e >= 0 {
            int(u * p.pow(e as u32))
        } else {
            frac(u, p.pow((-e) as u32))
        }
    })
}

fn lattice() -> impl Strategy<Value = GramLattice> {
    prop::sample::select(vec![3i64, 5, 7]).prop_flat_map(|p| {
        (1usize..=4).prop_flat_map(move |n| {
            (prop::collection::vec(entry(p), n), prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8)).prop_map(
                move |(d, moves)| {
                    let mut u = QMatrix::identity(n);
                    for (i, j, c) in moves {
                        if i != j {
                            let mut e = QMatrix::identity(n);
                            e.set(i, j, int(c));
                            u = &u * &e;
                        }
                    }
                    GramLattice::new(QMatrix::diagonal(d).congruence(&u), p as u64).unwrap()
                },
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn jordan_witness_verifies(lat in lattice()) {
        let j = lattice::jordan_decompose(&lat).unwrap();
        prop_assert!(j.verify(&lat));
    }

    #[test]
    fn smith_matches_jordan(lat in lattice()) {
        let mut jv = lattice::jordan_decompose(&lat).unwrap().valuations();
        jv.sort();
        prop_assert_eq!(jv, lattice::dual_quotient(&lat));
    }

    #[test]
    fn dual_is_involution(lat in lattice()) {
        let back = lat.dual().dual();
        prop_assert_eq!(back.gram(), lat.gram());
    }

    #[test]
    fn dual_negates_valuations(lat in lattice()) {
        let mut neg: Vec<i64> = lattice::dual_quotient(&lat).iter().map(|v| -v).collect();
        neg.sort();
        prop_assert_eq!(neg, lattice::dual_quotient(&lat.dual()));
    }

    #[test]
    fn vertex_type_is_minus_one_count(lat in lattice()) {
        let r = lattice::vertex_report(&lat).unwrap();
        let v = lattice::dual_quotient(&lat);
        prop_assert_eq!(r.is_vertex, v.iter().all(|x| *x == 0 || *x == -1));
        if r.is_vertex {
            prop_assert_eq!(r.t, v.iter().filter(|x| **x == -1).count());
        }
    }
}
