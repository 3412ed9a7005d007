//! Seeded random special ample polytopes: Minkowski sums of orbit polytopes
//! plus a translation.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::Weight;
use crate::polytope::OrthogonalSet;
use crate::root_system::RootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub orbits: Vec<Weight>,
    pub translate: Weight,
}

impl InstanceSpec {
    pub fn build(&self, rs: &Arc<RootSystem>) -> Result<OrthogonalSet> {
        let parts = self
            .orbits
            .iter()
            .map(|l| OrthogonalSet::from_orbit(rs.clone(), l))
            .collect::<Result<Vec<_>>>()?;
        OrthogonalSet::sum_all(&parts)?.translate(&self.translate)
    }
}

/// Translations tried before falling back to ν = 0.
const TRANSLATION_ATTEMPTS: usize = 32;

/// Between 1 and `max_orbits` orbit weights with coordinates in
/// 1..=`max_coord`, translated by a vector with entries in −2..=2.
///
/// Translations that break speciality are redrawn, so the result is always
/// special ample.
pub fn random_instance<R: Rng>(
    rs: &Arc<RootSystem>,
    rng: &mut R,
    max_orbits: usize,
    max_coord: i64,
) -> InstanceSpec {
    let n = rs.rank();
    let k = rng.gen_range(1..=max_orbits);
    let orbits: Vec<Weight> = (0..k)
        .map(|_| Weight((0..n).map(|_| rng.gen_range(1..=max_coord)).collect()))
        .collect();
    let mut spec = InstanceSpec {
        orbits,
        translate: Weight::zero(n),
    };
    let base = spec.build(rs).expect("orbit sums are special ample");
    for _ in 0..TRANSLATION_ATTEMPTS {
        let nu = Weight((0..n).map(|_| rng.gen_range(-2..=2)).collect());
        if base.translate(&nu).map(|p| p.is_special()).unwrap_or(false) {
            spec.translate = nu;
            break;
        }
    }
    spec
}
