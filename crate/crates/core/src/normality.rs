//! Constructive decomposition of lattice points of P_1 + ⋯ + P_m into sums
//! of lattice points of the summands.
//!
//! For a target z, pick the chamber w with w⁻¹z dominant, climb from z to
//! the vertex μ_w of the sum along progressive roots, then walk back down
//! from the vertex tuple, each time removing the root from a part that
//! pairs positively with it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{RootVec, Weight};
use crate::numbers_game::{cutoff_result, is_winning};
use crate::polytope::OrthogonalSet;
use crate::root_system::RootSystem;
use crate::tuples::{LabeledTuple, TupleSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub target: Weight,
    pub parts: LabeledTuple,
}

impl Decomposition {
    /// Σ parts = target and parts_i ∈ Λ(P_i).
    pub fn is_valid(&self, polytopes: &[OrthogonalSet]) -> bool {
        if self.parts.len() != polytopes.len() || self.parts.is_empty() {
            return false;
        }
        let mut s = Weight::zero(self.target.rank());
        for p in &self.parts {
            s += p;
        }
        s == self.target
            && self
                .parts
                .iter()
                .zip(polytopes)
                .all(|(x, p)| p.is_lambda_point(x))
    }
}

/// Polytopes plus their sum, reusable across targets.
#[derive(Clone, Debug)]
pub struct Decomposer {
    polytopes: Vec<OrthogonalSet>,
    sum: OrthogonalSet,
}

impl Decomposer {
    pub fn new(polytopes: &[OrthogonalSet]) -> Result<Self> {
        for p in polytopes {
            p.require_special_ample()?;
        }
        let sum = OrthogonalSet::sum_all(polytopes)?;
        Ok(Self {
            polytopes: polytopes.to_vec(),
            sum,
        })
    }

    pub fn polytopes(&self) -> &[OrthogonalSet] {
        &self.polytopes
    }

    pub fn sum(&self) -> &OrthogonalSet {
        &self.sum
    }

    pub fn decompose(&self, z: &Weight) -> Result<Decomposition> {
        let rs = self.sum.root_system();
        if z.rank() != rs.rank() {
            return Err(Error::Dimension {
                expected: rs.rank(),
                got: z.rank(),
            });
        }
        if !self.sum.is_lambda_point(z) {
            return Err(Error::NotInPolytope(z.to_string()));
        }
        let (w, d) = rs.dominant_representative(z);
        let winv = rs.inverse(w);
        let top = rs.act(winv, self.sum.vertex(w));
        let height = rs
            .weight_to_root(&(&top - &d))
            .ok_or_else(|| Error::Internal("target leaves the vertex coset".into()))?
            .height();

        // climb, in the frame of chamber w
        let mut chain = Vec::new();
        let mut x = d;
        while x != top {
            if chain.len() as i64 >= height {
                return Err(Error::Internal(format!(
                    "progressive chain from {z} exceeds height {height}"
                )));
            }
            let i = self.sum.progressive_root(&rs.act(w, &x), w)?;
            x += &rs.simple_root(i).weight;
            chain.push(i);
        }

        // descend from the vertex tuple
        let mut parts: Vec<Weight> = self
            .polytopes
            .iter()
            .map(|p| rs.act(winv, p.vertex(w)))
            .collect();
        for &i in chain.iter().rev() {
            let j = parts.iter().position(|y| y[i] >= 1).ok_or_else(|| {
                Error::Internal(format!("no part pairs positively with α_{} for {z}", i + 1))
            })?;
            parts[j] -= &rs.simple_root(i).weight;
        }
        let out = Decomposition {
            target: z.clone(),
            parts: parts.iter().map(|y| rs.act(w, y)).collect(),
        };
        if !out.is_valid(&self.polytopes) {
            return Err(Error::Internal(format!("invalid decomposition of {z}")));
        }
        Ok(out)
    }
}

pub fn decompose(z: &Weight, polytopes: &[OrthogonalSet]) -> Result<Decomposition> {
    Decomposer::new(polytopes)?.decompose(z)
}

/// Lexicographically first tuple summing to z, by exhaustive search.
pub fn brute_force_decompose(z: &Weight, polytopes: &[OrthogonalSet]) -> Result<Option<Decomposition>> {
    let space = TupleSpace::new(polytopes)?;
    Ok(space.first(z).map(|parts| Decomposition {
        target: z.clone(),
        parts,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityFailure {
    pub target: Weight,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub targets: usize,
    pub decomposed: usize,
    /// Targets also confirmed by exhaustive search, when requested.
    pub brute_force_confirmed: Option<usize>,
    pub failures: Vec<NormalityFailure>,
}

impl NormalityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.decomposed == self.targets
    }
}

/// Decompose every z ∈ Λ(P_1 + ⋯ + P_m); with `exhaustive`, also require
/// the brute-force search to find a tuple.
pub fn check_normality(polytopes: &[OrthogonalSet], exhaustive: bool) -> Result<NormalityReport> {
    let dec = Decomposer::new(polytopes)?;
    let targets = dec.sum().lambda_points()?;
    let space = if exhaustive {
        Some(TupleSpace::new(polytopes)?)
    } else {
        None
    };
    let results: Vec<(bool, bool, Option<NormalityFailure>)> = targets
        .points()
        .par_iter()
        .map(|z| {
            let (ok, failure) = match dec.decompose(z) {
                Ok(_) => (true, None),
                Err(e) => (
                    false,
                    Some(NormalityFailure {
                        target: z.clone(),
                        reason: e.to_string(),
                    }),
                ),
            };
            let confirmed = space.as_ref().is_some_and(|s| s.first(z).is_some());
            let failure = failure.or_else(|| {
                (exhaustive && !confirmed).then(|| NormalityFailure {
                    target: z.clone(),
                    reason: "exhaustive search found no tuple".into(),
                })
            });
            (ok, confirmed, failure)
        })
        .collect();
    Ok(NormalityReport {
        targets: targets.len(),
        decomposed: results.iter().filter(|r| r.0).count(),
        brute_force_confirmed: exhaustive.then(|| results.iter().filter(|r| r.1).count()),
        failures: results.into_iter().filter_map(|r| r.2).collect(),
    })
}

fn dominant_points(p: &OrthogonalSet) -> Result<Vec<Weight>> {
    Ok(p.lambda_points()?
        .iter()
        .filter(|x| x.is_dominant())
        .cloned()
        .collect())
}

/// y − x in simple-root coordinates when x ≺ y.
fn strictly_below(rs: &RootSystem, x: &Weight, y: &Weight) -> Option<RootVec> {
    let d = rs.weight_to_root(&(y - x))?;
    (d.is_nonnegative() && !d.is_zero()).then_some(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderViolation {
    pub lower: Weight,
    pub upper: Weight,
    pub detail: String,
}

/// Among the dominant lattice points of P, every cover y ⋗ x in the
/// dominance order differs by a positive root.
pub fn check_dominant_covers(p: &OrthogonalSet) -> Result<(usize, Vec<OrderViolation>)> {
    let rs = p.root_system();
    let dom = dominant_points(p)?;
    let per_x: Vec<(usize, Vec<OrderViolation>)> = dom
        .par_iter()
        .map(|x| {
            let above: Vec<&Weight> = dom
                .iter()
                .filter(|y| strictly_below(rs, x, y).is_some())
                .collect();
            let mut covers = 0;
            let mut bad = Vec::new();
            for y in &above {
                let is_cover = !above
                    .iter()
                    .any(|z| strictly_below(rs, z, y).is_some());
                if !is_cover {
                    continue;
                }
                covers += 1;
                let d = strictly_below(rs, x, y).unwrap();
                if !rs.is_root(&d) {
                    bad.push(OrderViolation {
                        lower: x.clone(),
                        upper: (*y).clone(),
                        detail: format!("cover difference {d} is not a root"),
                    });
                }
            }
            (covers, bad)
        })
        .collect();
    let covers = per_x.iter().map(|r| r.0).sum();
    Ok((covers, per_x.into_iter().flat_map(|r| r.1).collect()))
}

/// For dominant lattice points x ≺ y of P and each positive root α of
/// minimum length with x + α ⪯ y: x + α is winning and its cutoff result z
/// satisfies x + α ⪯ z ⪯ y.
pub fn check_minimal_steps(p: &OrthogonalSet) -> Result<(usize, Vec<OrderViolation>)> {
    let rs = p.root_system();
    let dom = dominant_points(p)?;
    let below_or_equal = |a: &Weight, b: &Weight| {
        rs.weight_to_root(&(b - a))
            .is_some_and(|d| d.is_nonnegative())
    };
    let per_x: Vec<(usize, Vec<OrderViolation>)> = dom
        .par_iter()
        .map(|x| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for y in &dom {
                if strictly_below(rs, x, y).is_none() {
                    continue;
                }
                let fits: Vec<_> = rs
                    .positive_roots()
                    .filter(|a| below_or_equal(&(x + &a.weight), y))
                    .collect();
                let any_short = fits.iter().any(|a| a.is_short());
                for a in fits.iter().filter(|a| a.is_short() || !any_short) {
                    checked += 1;
                    let xa = x + &a.weight;
                    let fail = |detail: String| OrderViolation {
                        lower: x.clone(),
                        upper: y.clone(),
                        detail,
                    };
                    if !is_winning(rs, &xa) {
                        bad.push(fail(format!("x + {} is not winning", a.root)));
                        continue;
                    }
                    match cutoff_result(rs, &xa) {
                        Some(z) if below_or_equal(&xa, &z) && below_or_equal(&z, y) => {}
                        Some(z) => bad.push(fail(format!("cutoff result {z} of x + {} out of range", a.root))),
                        None => bad.push(fail(format!("cutoff game on x + {} lost", a.root))),
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let checked = per_x.iter().map(|r| r.0).sum();
    Ok((checked, per_x.into_iter().flat_map(|r| r.1).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::Family;
    use std::sync::Arc;

    fn w(v: &[i64]) -> Weight {
        Weight::from_slice(v)
    }

    fn orbit(f: Family, n: usize, l: &[i64]) -> OrthogonalSet {
        let rs = Arc::new(RootSystem::new(f, n).unwrap());
        OrthogonalSet::from_orbit(rs, &w(l)).unwrap()
    }

    #[test]
    fn interval_examples() {
        let p = orbit(Family::A, 1, &[1]);
        let d = decompose(&w(&[0]), &[p.clone(), p.clone()]).unwrap();
        assert_eq!(d.parts, vec![w(&[-1]), w(&[1])]);
        let d = decompose(&w(&[2]), &[p.clone(), p.clone()]).unwrap();
        assert_eq!(d.parts, vec![w(&[1]), w(&[1])]);
        let d = decompose(&w(&[-2]), &[p.clone(), p.clone()]).unwrap();
        assert_eq!(d.parts, vec![w(&[-1]), w(&[-1])]);
        assert!(matches!(
            decompose(&w(&[4]), &[p.clone(), p.clone()]),
            Err(Error::NotInPolytope(_))
        ));
        let r = check_normality(&[p.clone(), p], true).unwrap();
        assert_eq!((r.targets, r.decomposed, r.brute_force_confirmed), (3, 3, Some(3)));
    }

    #[test]
    fn hexagon_examples() {
        let hex = orbit(Family::A, 2, &[1, 1]);
        let d = decompose(&w(&[1, 1]), &[hex.clone(), hex.clone()]).unwrap();
        assert!(d.is_valid(&[hex.clone(), hex.clone()]));
        let r = check_normality(&[hex.clone(), hex.clone()], true).unwrap();
        assert_eq!(r.targets, 19);
        assert!(r.ok());
        // every vertex multiple is the vertex tuple
        for v in hex.vertices() {
            let d = decompose(&v.scale(2), &[hex.clone(), hex.clone()]).unwrap();
            assert_eq!(d.parts, vec![v.clone(), v.clone()]);
        }
    }

    #[test]
    fn b2_and_single() {
        let p = orbit(Family::B, 2, &[1, 1]);
        assert!(check_normality(&[p.clone(), p.clone()], true).unwrap().ok());
        for z in p.lambda_points().unwrap().iter() {
            let d = brute_force_decompose(z, std::slice::from_ref(&p)).unwrap().unwrap();
            assert_eq!(&d.parts[0], z);
        }
        assert_eq!(brute_force_decompose(&w(&[9, 9]), &[p.clone(), p]).unwrap(), None);
    }

    #[test]
    fn order_checks_on_small_polytopes() {
        for (f, n, l) in [
            (Family::A, 2, vec![2, 3]),
            (Family::B, 2, vec![2, 3]),
            (Family::G, 2, vec![2, 2]),
        ] {
            let p = orbit(f, n, &l);
            let (covers, bad) = check_dominant_covers(&p).unwrap();
            assert!(covers > 0);
            assert!(bad.is_empty(), "{bad:?}");
            let (steps, bad) = check_minimal_steps(&p).unwrap();
            assert!(steps > 0);
            assert!(bad.is_empty(), "{bad:?}");
        }
    }
}
