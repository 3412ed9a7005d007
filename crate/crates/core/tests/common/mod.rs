#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weylfan::instances::random_instance;
use weylfan::{Family, OrthogonalSet, RootSystem};

/// A1, A2, A3, B2, G2.
pub fn systems() -> &'static [Arc<RootSystem>] {
    static CELL: OnceLock<Vec<Arc<RootSystem>>> = OnceLock::new();
    CELL.get_or_init(|| {
        [(Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::B, 2), (Family::G, 2)]
            .iter()
            .map(|&(f, n)| Arc::new(RootSystem::new(f, n).unwrap()))
            .collect()
    })
}

pub fn polytope(sys: usize, seed: u64, max_orbits: usize, max_coord: i64) -> OrthogonalSet {
    let rs = &systems()[sys];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(rs, &mut rng, max_orbits, max_coord).build(rs).unwrap()
}
