use std::collections::BTreeMap;

use proptest::prelude::*;
use weylfan::diagsplit::{apply_word, in_interior, is_diagonally_split, ScaledPoint};
use weylfan::{Family, RootSystem};

const SMALL: [(Family, usize); 5] = [(Family::A, 1), (Family::A, 2), (Family::B, 2), (Family::C, 2), (Family::G, 2)];

fn system(k: usize) -> RootSystem {
    let (f, n) = SMALL[k];
    RootSystem::new(f, n).unwrap()
}

/// Least interior point of each residue class over a box twice as wide as
/// the one the search uses.
fn wide_search(rs: &RootSystem, q: i64) -> BTreeMap<Vec<i64>, Vec<i64>> {
    let n = rs.rank();
    let r = 2 * q;
    let mut best = BTreeMap::new();
    let mut u = vec![-r; n];
    loop {
        let p = ScaledPoint::new(u.clone(), q);
        if in_interior(&p, rs).unwrap() {
            best.entry(p.residue()).or_insert_with(|| u.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            if u[k] < r {
                u[k] += 1;
                break;
            }
            u[k] = -r;
        }
    }
}

proptest! {
    #[test]
    fn points_outside_the_box_are_not_interior(
        k in 0..SMALL.len(),
        q in 2i64..8,
        raw in prop::collection::vec(-60i64..60, 2),
        which in 0usize..2,
        push in 0i64..40,
    ) {
        let rs = system(k);
        let n = rs.rank();
        let mut u: Vec<i64> = raw[..n].to_vec();
        let c = which % n;
        // force |u_c| ≥ q, i.e. a root coordinate of magnitude at least 1
        u[c] = if u[c] < 0 { -(q + push) } else { q + push };
        prop_assert!(!in_interior(&ScaledPoint::new(u, q), &rs).unwrap());
    }

    #[test]
    fn interior_is_weyl_invariant(k in 0..SMALL.len(), q in 2i64..8, raw in prop::collection::vec(-10i64..10, 2), i in 0usize..2) {
        let rs = system(k);
        let n = rs.rank();
        let u = ScaledPoint::new(raw[..n].to_vec(), q);
        let v = apply_word(&rs, &u, &[i % n]).unwrap();
        prop_assert_eq!(in_interior(&u, &rs).unwrap(), in_interior(&v, &rs).unwrap());
    }
}

#[test]
fn class_counts_and_partition() {
    for k in 0..SMALL.len() {
        let rs = system(k);
        for q in 2..=5 {
            let r = is_diagonally_split(&rs, q).unwrap();
            let classes = (q as u64).pow(rs.rank() as u32);
            assert_eq!(r.classes, classes);
            assert_eq!(r.covered, r.witnesses.len() as u64);
            assert_eq!(r.witnesses.len() + r.uncovered.len(), classes as usize);
            let mut residues: Vec<Vec<i64>> = r.witnesses.iter().map(ScaledPoint::residue).collect();
            residues.extend(r.uncovered.iter().map(|u| u.numerators.clone()));
            residues.sort();
            residues.dedup();
            assert_eq!(residues.len(), classes as usize, "{} q={q}", rs.name());
            assert_eq!(r.split, r.uncovered.is_empty());
        }
    }
}

#[test]
fn box_search_matches_a_wider_search() {
    for k in 0..SMALL.len() {
        let rs = system(k);
        for q in 2..=5 {
            let r = is_diagonally_split(&rs, q).unwrap();
            let wide = wide_search(&rs, q);
            assert_eq!(r.witnesses.len(), wide.len(), "{} q={q}", rs.name());
            for w in &r.witnesses {
                assert!(in_interior(w, &rs).unwrap());
                assert_eq!(wide.get(&w.residue()), Some(&w.numerators), "{} q={q}", rs.name());
            }
            for u in &r.uncovered {
                assert!(!wide.contains_key(&u.numerators));
            }
        }
    }
}

#[test]
fn small_fixtures() {
    let a1 = RootSystem::new(Family::A, 1).unwrap();
    let r = is_diagonally_split(&a1, 2).unwrap();
    assert!(r.split);
    assert_eq!(r.witnesses, vec![ScaledPoint::new(vec![0], 2), ScaledPoint::new(vec![-1], 2)]);

    let a3 = RootSystem::new(Family::A, 3).unwrap();
    assert!(!is_diagonally_split(&a3, 2).unwrap().split);
    assert!(is_diagonally_split(&a3, 3).unwrap().split);

    let g2 = RootSystem::new(Family::G, 2).unwrap();
    for q in 2..=4 {
        assert!(!is_diagonally_split(&g2, q).unwrap().split);
    }
}
