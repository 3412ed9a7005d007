//! Enumeration of tuples (y_1, …, y_m) ∈ Λ(P_1) × ⋯ × Λ(P_m) with a given sum.

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::polytope::{LatticePointSet, OrthogonalSet};

pub type LabeledTuple = Vec<Weight>;

/// Coordinate-wise bounding box of a polytope (attained at vertices).
#[derive(Clone, Debug)]
struct BoundingBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl BoundingBox {
    fn of(p: &OrthogonalSet) -> Self {
        let n = p.root_system().rank();
        let col = |i: usize| p.vertices().iter().map(move |v| v[i]);
        Self {
            lo: (0..n).map(|i| col(i).min().unwrap()).collect(),
            hi: (0..n).map(|i| col(i).max().unwrap()).collect(),
        }
    }

    fn contains(&self, x: &Weight) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(c, (lo, hi))| lo <= c && c <= hi)
    }
}

/// Λ(P_k) for each polytope together with the tail sums P_k + ⋯ + P_m used
/// for pruning.
#[derive(Clone, Debug)]
pub struct TupleSpace {
    polytopes: Vec<OrthogonalSet>,
    lambdas: Vec<LatticePointSet>,
    tails: Vec<OrthogonalSet>,
    tail_boxes: Vec<BoundingBox>,
}

impl TupleSpace {
    pub fn new(polytopes: &[OrthogonalSet]) -> Result<Self> {
        if polytopes.is_empty() {
            return Err(Error::EmptyList);
        }
        let lambdas = polytopes
            .iter()
            .map(|p| p.lambda_points())
            .collect::<Result<Vec<_>>>()?;
        let mut tails = vec![polytopes.last().unwrap().clone()];
        for p in polytopes.iter().rev().skip(1) {
            let t = p.minkowski_sum(tails.last().unwrap())?;
            tails.push(t);
        }
        tails.reverse();
        let tail_boxes = tails.iter().map(BoundingBox::of).collect();
        Ok(Self {
            polytopes: polytopes.to_vec(),
            lambdas,
            tails,
            tail_boxes,
        })
    }

    pub fn polytopes(&self) -> &[OrthogonalSet] {
        &self.polytopes
    }

    pub fn lambdas(&self) -> &[LatticePointSet] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.polytopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polytopes.is_empty()
    }

    /// P_1 + ⋯ + P_m.
    pub fn sum(&self) -> &OrthogonalSet {
        &self.tails[0]
    }

    /// Calls `f` on every tuple summing to `z`, in lexicographic order, until
    /// `f` returns false. Returns false if stopped early.
    pub fn visit(&self, z: &Weight, mut f: impl FnMut(&[Weight]) -> bool) -> bool {
        if z.rank() != self.sum().root_system().rank() || !self.tail_boxes[0].contains(z) {
            return true;
        }
        let mut prefix = Vec::with_capacity(self.len());
        self.visit_from(0, z, &mut prefix, &mut f)
    }

    fn visit_from(
        &self,
        k: usize,
        rest: &Weight,
        prefix: &mut Vec<Weight>,
        f: &mut impl FnMut(&[Weight]) -> bool,
    ) -> bool {
        let m = self.len();
        if k + 1 == m {
            if self.lambdas[k].contains(rest) {
                prefix.push(rest.clone());
                let go_on = f(prefix);
                prefix.pop();
                return go_on;
            }
            return true;
        }
        let tail = &self.tails[k + 1];
        let tb = &self.tail_boxes[k + 1];
        // y_0 ∈ [rest_0 − hi_0, rest_0 − lo_0]; points are sorted, so this is
        // a contiguous run.
        let pts = self.lambdas[k].points();
        let lo0 = rest[0] - tb.hi[0];
        let hi0 = rest[0] - tb.lo[0];
        let start = pts.partition_point(|p| p[0] < lo0);
        for y in pts[start..].iter().take_while(|p| p[0] <= hi0) {
            let r = rest - y;
            if !tb.contains(&r) || !tail.contains_point(&r) {
                continue;
            }
            prefix.push(y.clone());
            let go_on = self.visit_from(k + 1, &r, prefix, f);
            prefix.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// First tuple (lexicographically) summing to `z`.
    pub fn first(&self, z: &Weight) -> Option<LabeledTuple> {
        let mut out = None;
        self.visit(z, |t| {
            out = Some(t.to_vec());
            false
        });
        out
    }

    /// All tuples summing to `z`; errors once more than `cap` are found.
    pub fn collect(&self, z: &Weight, cap: usize) -> Result<Vec<LabeledTuple>> {
        let mut out = Vec::new();
        let complete = self.visit(z, |t| {
            out.push(t.to_vec());
            out.len() <= cap
        });
        if complete {
            Ok(out)
        } else {
            Err(Error::SearchTooLarge(out.len() as u128))
        }
    }
}
