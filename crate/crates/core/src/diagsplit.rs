//! Diagonal splitting of ample polytopes on the Weyl-fan toric variety.
//!
//! The facet normals of any ample polytope are the Weyl images of the
//! fundamental coweights, so the open region F° = {u : |⟨wu, ω_i⟩| < 1} is
//! polytope independent. For u in simple-root coordinates ⟨wu, ω_i⟩ is the
//! i-th root coordinate of wu. Splitting for q asks every class of
//! (1/q)Y / Y to meet F°.

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::root_system::{Family, RootSystem};

/// Candidate count above which the search is refused.
pub const MAX_CANDIDATES: u128 = 100_000_000;

/// u = (1/q)·Σ numerators_i α_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ScaledPoint {
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

impl ScaledPoint {
    pub fn new(numerators: Vec<i64>, denominator: i64) -> Self {
        Self {
            numerators,
            denominator,
        }
    }

    /// Numerators reduced into [0, q).
    pub fn residue(&self) -> Vec<i64> {
        self.numerators
            .iter()
            .map(|c| c.rem_euclid(self.denominator))
            .collect()
    }
}

impl fmt::Display for ScaledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.numerators.iter().map(|c| c.to_string()).collect();
        write!(f, "({})/{}", parts.join(","), self.denominator)
    }
}

/// Distinct rows of the root actions of W: row k of w gives ⟨wu, ω_k⟩.
fn normal_rows(rs: &RootSystem) -> Vec<Vec<i64>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in rs.weyl() {
        for row in e.root_action.rows() {
            if seen.insert(row.clone()) {
                out.push(row);
            }
        }
    }
    out
}

fn interior_with(rows: &[Vec<i64>], numerators: &[i64], q: i64) -> bool {
    rows.iter().all(|r| {
        let s: i64 = r.iter().zip(numerators).map(|(a, b)| a * b).sum();
        s.abs() < q
    })
}

/// u ∈ F°: |⟨wu, ω_i⟩| < 1 for every w and i.
pub fn in_interior(u: &ScaledPoint, rs: &RootSystem) -> Result<bool> {
    if u.numerators.len() != rs.rank() {
        return Err(Error::Dimension {
            expected: rs.rank(),
            got: u.numerators.len(),
        });
    }
    if u.denominator < 1 {
        return Err(Error::Unsupported("denominator must be positive".into()));
    }
    Ok(interior_with(&normal_rows(rs), &u.numerators, u.denominator))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub system: String,
    pub q: i64,
    pub split: bool,
    pub classes: u64,
    pub covered: u64,
    /// Residues (numerators in [0, q)) with no interior representative.
    pub uncovered: Vec<ScaledPoint>,
    /// Lexicographically least interior representative of each covered
    /// class, ordered by residue.
    pub witnesses: Vec<ScaledPoint>,
}

fn class_index(numerators: &[i64], q: i64) -> usize {
    numerators
        .iter()
        .rev()
        .fold(0usize, |acc, c| acc * q as usize + c.rem_euclid(q) as usize)
}

fn class_residue(mut k: usize, n: usize, q: i64) -> Vec<i64> {
    (0..n)
        .map(|_| {
            let r = (k % q as usize) as i64;
            k /= q as usize;
            r
        })
        .collect()
}

/// Searches numerators in [−(q−1), q−1]ⁿ, which is complete since the
/// identity element already forces |u_i| < 1.
pub fn is_diagonally_split(rs: &RootSystem, q: i64) -> Result<SplitReport> {
    if q < 2 {
        return Err(Error::Unsupported(format!("q must be at least 2, got {q}")));
    }
    if rs.family() == Family::E {
        return Err(Error::Unsupported(format!(
            "exhaustive splitting search is not supported for {}",
            rs.name()
        )));
    }
    let n = rs.rank();
    let side = (2 * q - 1) as u128;
    let total = side.checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_CANDIDATES {
        return Err(Error::SearchTooLarge(total));
    }
    let rows = normal_rows(rs);
    let classes = (q as usize).pow(n as u32);

    // partition by the leading coordinate; within each part the odometer
    // runs in lexicographic order, so the first hit per class is minimal
    let parts: Vec<Vec<Option<Vec<i64>>>> = (-(q - 1)..q)
        .into_par_iter()
        .map(|lead| {
            let mut found: Vec<Option<Vec<i64>>> = vec![None; classes];
            let mut u = vec![-(q - 1); n];
            u[0] = lead;
            loop {
                if interior_with(&rows, &u, q) {
                    let k = class_index(&u, q);
                    if found[k].is_none() {
                        found[k] = Some(u.clone());
                    }
                }
                let mut k = n;
                loop {
                    if k == 1 {
                        return found;
                    }
                    k -= 1;
                    if u[k] < q - 1 {
                        u[k] += 1;
                        break;
                    }
                    u[k] = -(q - 1);
                }
            }
        })
        .collect();
    let mut best: Vec<Option<Vec<i64>>> = vec![None; classes];
    for part in parts {
        for (k, hit) in part.into_iter().enumerate() {
            if best[k].is_none() {
                best[k] = hit;
            }
        }
    }
    let mut witnesses = Vec::new();
    let mut uncovered = Vec::new();
    for (k, hit) in best.into_iter().enumerate() {
        match hit {
            Some(u) => witnesses.push(ScaledPoint::new(u, q)),
            None => uncovered.push(ScaledPoint::new(class_residue(k, n, q), q)),
        }
    }
    Ok(SplitReport {
        system: rs.name(),
        q,
        split: uncovered.is_empty(),
        classes: classes as u64,
        covered: witnesses.len() as u64,
        uncovered,
        witnesses,
    })
}

/// The classification: A1, A2 split for every q; A3 and B2 = C2 for odd
/// q; everything else never.
pub fn expected_split(family: Family, rank: usize, q: i64) -> bool {
    match (family, rank) {
        (Family::A, 1) | (Family::A, 2) => true,
        (Family::A, 3) | (Family::B, 2) | (Family::C, 2) => q % 2 == 1,
        _ => false,
    }
}

/// Systems of the default grid.
pub const DEFAULT_SYSTEMS: [(Family, usize); 9] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::B, 2),
    (Family::B, 3),
    (Family::C, 3),
    (Family::D, 4),
    (Family::G, 2),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub system: String,
    pub q: i64,
    pub split: bool,
    pub expected: bool,
    pub matches: bool,
    pub uncovered: usize,
}

pub fn reproduce_table(systems: &[(Family, usize)], qs: &[i64]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &(f, n) in systems {
        let rs = RootSystem::new(f, n)?;
        for &q in qs {
            let r = is_diagonally_split(&rs, q)?;
            let expected = expected_split(f, n, q);
            rows.push(TableRow {
                system: rs.name(),
                q,
                split: r.split,
                expected,
                matches: r.split == expected,
                uncovered: r.uncovered.len(),
            });
        }
    }
    Ok(rows)
}

/// An exact rational that serializes as "a/b".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rational(pub Ratio<i64>);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// s_{a_1} ⋯ s_{a_k} z with 0-based generator indices; s_{a_k} acts first.
pub fn apply_word(rs: &RootSystem, z: &ScaledPoint, word: &[usize]) -> Result<ScaledPoint> {
    let n = rs.rank();
    if z.numerators.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: z.numerators.len(),
        });
    }
    if z.denominator < 1 {
        return Err(Error::Unsupported("denominator must be positive".into()));
    }
    let mut b = z.numerators.clone();
    for &a in word.iter().rev() {
        if a >= n {
            return Err(Error::IndexOutOfRange { index: a, len: n });
        }
        // s_a(b) = b − ⟨b, α_a^∨⟩ α_a
        let pairing: i64 = (0..n).map(|k| b[k] * rs.c(k, a)).sum();
        b[a] -= pairing;
    }
    Ok(ScaledPoint::new(b, z.denominator))
}

/// ⟨s_{a_1} ⋯ s_{a_k} z, ω_i⟩ as an exact rational.
pub fn verify_witness(rs: &RootSystem, z: &ScaledPoint, word: &[usize], i: usize) -> Result<Rational> {
    if i >= rs.rank() {
        return Err(Error::IndexOutOfRange { index: i, len: rs.rank() });
    }
    let u = apply_word(rs, z, word)?;
    Ok(Rational(Ratio::new(u.numerators[i], u.denominator)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    #[test]
    fn interior_examples() {
        let a1 = sys(Family::A, 1);
        assert!(in_interior(&ScaledPoint::new(vec![0], 2), &a1).unwrap());
        assert!(in_interior(&ScaledPoint::new(vec![1], 2), &a1).unwrap());
        assert!(!in_interior(&ScaledPoint::new(vec![2], 2), &a1).unwrap());
        let a3 = sys(Family::A, 3);
        assert!(!in_interior(&ScaledPoint::new(vec![1, 0, 1], 2), &a3).unwrap());
        assert!(in_interior(&ScaledPoint::new(vec![0, 0, 0], 5), &a3).unwrap());
    }

    #[test]
    fn split_examples() {
        let r = is_diagonally_split(&sys(Family::A, 1), 2).unwrap();
        assert!(r.split);
        assert_eq!(r.classes, 2);
        assert_eq!(r.witnesses[1], ScaledPoint::new(vec![-1], 2));
        let r = is_diagonally_split(&sys(Family::A, 3), 2).unwrap();
        assert!(!r.split);
        assert!(r.uncovered.contains(&ScaledPoint::new(vec![1, 0, 1], 2)));
        assert!(is_diagonally_split(&sys(Family::B, 2), 3).unwrap().split);
        assert!(!is_diagonally_split(&sys(Family::B, 2), 2).unwrap().split);
        assert!(is_diagonally_split(&sys(Family::A, 2), 5).unwrap().split);
        for q in 2..=7 {
            assert!(!is_diagonally_split(&sys(Family::G, 2), q).unwrap().split);
        }
        assert!(is_diagonally_split(&sys(Family::A, 1), 1).is_err());
        assert!(is_diagonally_split(&sys(Family::E, 6), 2).is_err());
    }

    #[test]
    fn witnesses_are_interior_and_in_class() {
        let rs = sys(Family::B, 2);
        let r = is_diagonally_split(&rs, 5).unwrap();
        assert_eq!(r.covered, 25);
        let residues: HashSet<Vec<i64>> = r.witnesses.iter().map(|w| w.residue()).collect();
        assert_eq!(residues.len(), 25);
        for w in &r.witnesses {
            assert!(in_interior(w, &rs).unwrap());
        }
    }

    #[test]
    fn witness_identity_word() {
        let rs = sys(Family::A, 3);
        let z = ScaledPoint::new(vec![3, -1, 2], 4);
        for i in 0..3 {
            let v = verify_witness(&rs, &z, &[], i).unwrap();
            assert_eq!(v.0, Ratio::new(z.numerators[i], 4));
        }
    }
}
