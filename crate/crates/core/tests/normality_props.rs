use proptest::prelude::*;
use weylfan::normality::{check_dominant_covers, check_minimal_steps, Decomposer};
use weylfan::numbers_game::{is_winning, play, Mode, Strategy};
use weylfan::tuples::TupleSpace;
use weylfan::{LengthClass, Weight};

mod common;
use common::{polytope, systems};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompositions_sum_back(sys in 0..5usize, s1 in any::<u64>(), s2 in any::<u64>()) {
        let ps = [polytope(sys, s1, 2, 2), polytope(sys, s2, 2, 2)];
        let dec = Decomposer::new(&ps).unwrap();
        let space = TupleSpace::new(&ps).unwrap();
        for z in dec.sum().lambda_points().unwrap().iter() {
            let d = dec.decompose(z).unwrap();
            prop_assert!(d.is_valid(&ps));
            prop_assert_eq!(&d.target, z);
            prop_assert!(space.first(z).is_some());
        }
    }

    #[test]
    fn tuple_search_matches_product(sys in 0..5usize, s1 in any::<u64>(), s2 in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let ps = [polytope(sys, s1, 1, 2), polytope(sys, s2, 1, 2)];
        let space = TupleSpace::new(&ps).unwrap();
        let sums = space.sum().lambda_points().unwrap();
        let z = &sums.points()[pick.index(sums.len())];
        let l0 = ps[0].lambda_points().unwrap();
        let l1 = ps[1].lambda_points().unwrap();
        let mut naive = Vec::new();
        for a in l0.iter() {
            for b in l1.iter() {
                if &(a + b) == z {
                    naive.push(vec![a.clone(), b.clone()]);
                }
            }
        }
        prop_assert_eq!(space.collect(z, usize::MAX - 1).unwrap(), naive);
    }

    #[test]
    fn short_roots_added_to_dominant_weights_win(sys in 0..5usize, x in prop::collection::vec(0i64..=4, 3)) {
        let rs = &systems()[sys];
        let x = Weight::from_slice(&x[..rs.rank()]);
        for a in rs.positive_roots().filter(|r| r.length != LengthClass::Long) {
            let v = &x + &a.weight;
            prop_assert!(is_winning(rs, &v));
            let out = play(rs, &v, Mode::Cutoff, Strategy::MinIndex, 1000).unwrap();
            prop_assert!(out.is_won());
        }
    }

    #[test]
    fn dominant_order_properties(sys in 0..5usize, seed in any::<u64>()) {
        let p = polytope(sys, seed, 2, 2);
        let (_, bad) = check_dominant_covers(&p).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
        let (_, bad) = check_minimal_steps(&p).unwrap();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}
