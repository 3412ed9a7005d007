//! Polytopes given by orthogonal sets: one vertex μ_σ per Weyl chamber.
//!
//! Chamber σ_w is keyed by the Weyl element w. Membership uses the cone
//! description P = ∩_σ (μ_σ − cone of the σ-simple roots), so no convex hull
//! is ever built.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{RootVec, Weight};
use crate::root_system::{RootSystem, WeylId};

/// Outcome of checking the orthogonal-set, ampleness and speciality
/// conditions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    /// Every wall difference is an integer multiple of the wall root.
    pub orthogonal: bool,
    /// ... with a strictly positive multiple.
    pub ample: bool,
    /// Every μ_σ is σ-dominant.
    pub special: bool,
    pub violations: Vec<String>,
}

/// One inequality ⟨x, normal⟩ ≤ bound, scaled by det C so it stays integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Halfspace {
    normal: Vec<i64>,
    bound: i64,
}

#[derive(Clone)]
pub struct OrthogonalSet {
    rs: Arc<RootSystem>,
    vertices: Vec<Weight>,
    validation: Validation,
    halfspaces: Vec<Halfspace>,
}

impl fmt::Debug for OrthogonalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrthogonalSet")
            .field("system", &self.rs.name())
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl PartialEq for OrthogonalSet {
    fn eq(&self, other: &Self) -> bool {
        *self.rs == *other.rs && self.vertices == other.vertices
    }
}

fn word_label(rs: &RootSystem, w: WeylId) -> String {
    let word: Vec<String> = rs.element(w).word.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", word.join(","))
}

impl OrthogonalSet {
    /// Wrap an explicit vertex map (indexed by [`WeylId`]) and validate it.
    pub fn from_vertices(rs: Arc<RootSystem>, vertices: Vec<Weight>) -> Result<Self> {
        if vertices.len() != rs.group_order() {
            return Err(Error::InvalidPolytope(format!(
                "expected {} vertices, got {}",
                rs.group_order(),
                vertices.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| v.rank() != rs.rank()) {
            return Err(Error::Dimension {
                expected: rs.rank(),
                got: v.rank(),
            });
        }
        let validation = validate_vertices(&rs, &vertices);
        let halfspaces = build_halfspaces(&rs, &vertices);
        Ok(Self {
            rs,
            vertices,
            validation,
            halfspaces,
        })
    }

    /// The W-orbit polytope with μ_{σ_w} = w·λ; λ must be strictly dominant.
    pub fn from_orbit(rs: Arc<RootSystem>, lambda: &Weight) -> Result<Self> {
        if lambda.rank() != rs.rank() {
            return Err(Error::Dimension {
                expected: rs.rank(),
                got: lambda.rank(),
            });
        }
        if lambda.iter().any(|&c| c < 1) {
            return Err(Error::NotStrictlyDominant(lambda.to_string()));
        }
        let vertices = (0..rs.group_order()).map(|w| rs.act(w, lambda)).collect();
        Self::from_vertices(rs, vertices)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn vertices(&self) -> &[Weight] {
        &self.vertices
    }

    /// μ_{σ_w}.
    pub fn vertex(&self, w: WeylId) -> &Weight {
        &self.vertices[w]
    }

    /// Vertex of the dominant chamber.
    pub fn dominant_vertex(&self) -> &Weight {
        &self.vertices[0]
    }

    pub fn validation(&self) -> &Validation {
        &self.validation
    }

    pub fn is_ample(&self) -> bool {
        self.validation.ample
    }

    pub fn is_special(&self) -> bool {
        self.validation.special
    }

    pub fn is_special_ample(&self) -> bool {
        self.validation.ample && self.validation.special
    }

    pub fn require_special_ample(&self) -> Result<()> {
        if self.is_special_ample() {
            Ok(())
        } else {
            Err(Error::InvalidPolytope(self.validation.violations.join("; ")))
        }
    }

    fn same_system(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.rs, &other.rs) || *self.rs == *other.rs {
            Ok(())
        } else {
            Err(Error::RootSystemMismatch)
        }
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        self.same_system(other)?;
        let vertices = self
            .vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_vertices(self.rs.clone(), vertices)
    }

    /// P₁ + ⋯ + P_m.
    pub fn sum_all(polytopes: &[OrthogonalSet]) -> Result<Self> {
        let (first, rest) = polytopes.split_first().ok_or(Error::EmptyList)?;
        rest.iter().try_fold(first.clone(), |acc, p| acc.minkowski_sum(p))
    }

    pub fn dilate(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::BadDilation);
        }
        let vertices = self.vertices.iter().map(|v| v.scale(m)).collect();
        Self::from_vertices(self.rs.clone(), vertices)
    }

    pub fn translate(&self, nu: &Weight) -> Result<Self> {
        if nu.rank() != self.rs.rank() {
            return Err(Error::Dimension {
                expected: self.rs.rank(),
                got: nu.rank(),
            });
        }
        let vertices = self.vertices.iter().map(|v| v + nu).collect();
        Self::from_vertices(self.rs.clone(), vertices)
    }

    /// The same polytope seen from chamber σ_w: vertex map v ↦ w⁻¹μ_{σ_{wv}}.
    pub fn conjugate(&self, w: WeylId) -> Self {
        let winv = self.rs.inverse(w);
        let vertices = (0..self.rs.group_order())
            .map(|v| self.rs.act(winv, &self.vertices[self.rs.compose(w, v)]))
            .collect();
        Self::from_vertices(self.rs.clone(), vertices).expect("conjugate keeps the vertex count")
    }

    /// x ≡ μ_σ modulo the root lattice.
    pub fn same_coset(&self, x: &Weight) -> bool {
        x.rank() == self.rs.rank() && self.rs.in_root_lattice(&(x - &self.vertices[0]))
    }

    /// Real membership of x/denominator in P (no congruence condition).
    pub fn contains_scaled(&self, x: &Weight, denominator: i64) -> bool {
        debug_assert!(denominator > 0);
        self.halfspaces.iter().all(|h| {
            let lhs: i64 = h.normal.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
            lhs <= h.bound * denominator
        })
    }

    /// Real membership of x in P.
    pub fn contains_point(&self, x: &Weight) -> bool {
        self.contains_scaled(x, 1)
    }

    /// Lattice membership: errors if x is not congruent to the vertices.
    pub fn contains(&self, x: &Weight) -> Result<bool> {
        if x.rank() != self.rs.rank() {
            return Err(Error::Dimension {
                expected: self.rs.rank(),
                got: x.rank(),
            });
        }
        if !self.same_coset(x) {
            return Err(Error::WrongCoset {
                point: x.to_string(),
            });
        }
        Ok(self.contains_point(x))
    }

    /// x ∈ Λ(P).
    pub fn is_lambda_point(&self, x: &Weight) -> bool {
        self.same_coset(x) && self.contains_point(x)
    }

    /// x ⪯ μ in the order of chamber σ_w, i.e. w⁻¹(μ_{σ_w} − x) is a
    /// nonnegative combination of simple roots.
    pub fn below_vertex(&self, x: &Weight, w: WeylId) -> bool {
        let rs = &self.rs;
        let d = rs.act(rs.inverse(w), &(&self.vertices[w] - x));
        rs.scaled_root_coords(&d).iter().all(|&c| c >= 0)
    }

    /// Λ(P), enumerated chamber by chamber.
    pub fn lambda_points(&self) -> Result<LatticePointSet> {
        self.require_special_ample()?;
        let rs = &self.rs;
        let per_chamber: Vec<Vec<Weight>> = (0..rs.group_order())
            .into_par_iter()
            .map(|w| self.dominant_points_of_chamber(w))
            .collect();
        let mut seen = HashSet::new();
        let mut points = Vec::new();
        for pts in per_chamber {
            for p in pts {
                if seen.insert(p.clone()) {
                    points.push(p);
                }
            }
        }
        Ok(LatticePointSet::new(points))
    }

    /// Points of Λ(P) in chamber σ_w: w·η for dominant η ⪯ w⁻¹μ_{σ_w}.
    fn dominant_points_of_chamber(&self, w: WeylId) -> Vec<Weight> {
        let rs = &self.rs;
        let n = rs.rank();
        let winv = rs.inverse(w);
        let top = rs.act(winv, &self.vertices[w]);
        // Bound on the simple-root coefficients of top − η. The gap to every
        // other (conjugated) vertex bounds it since η lies in the hull; since
        // dominant weights have nonnegative root coordinates, the root
        // coordinates of top bound it as well.
        let mut bound: Vec<i64> = vec![0; n];
        for v in &self.vertices {
            let gap = rs
                .weight_to_root(&(&top - &rs.act(winv, v)))
                .expect("vertices are congruent modulo Y");
            for i in 0..n {
                bound[i] = bound[i].max(gap[i]);
            }
        }
        let scaled = rs.scaled_root_coords(&top);
        for i in 0..n {
            bound[i] = bound[i].min(scaled[i].div_euclid(rs.det()));
        }
        if bound.iter().any(|&b| b < 0) {
            return Vec::new();
        }
        let simple: Vec<Weight> = (0..n).map(|i| rs.simple_root(i).weight.clone()).collect();
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        let mut eta = top.clone();
        loop {
            if eta.is_dominant() {
                out.push(rs.act(w, &eta));
            }
            // odometer step
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                if c[k] < bound[k] {
                    c[k] += 1;
                    eta -= &simple[k];
                    break;
                }
                eta += &simple[k].scale(c[k]);
                c[k] = 0;
                k += 1;
            }
        }
    }

    /// Simple-root index that is progressive for x relative to chamber σ_w.
    ///
    /// With x' = w⁻¹x and μ' = w⁻¹μ_{σ_w}: if x' is not dominant the smallest
    /// i with x'_i ≤ −1; otherwise the shortest simple root α_i with
    /// x' + α_i ⪯ μ', smallest index first.
    pub fn progressive_root(&self, x: &Weight, w: WeylId) -> Result<usize> {
        if !self.is_lambda_point(x) {
            return Err(Error::NotInPolytope(x.to_string()));
        }
        let rs = &self.rs;
        let winv = rs.inverse(w);
        let xc = rs.act(winv, x);
        if let Some(i) = (0..rs.rank()).find(|&i| xc[i] <= -1) {
            return Ok(i);
        }
        let mu = rs.act(winv, &self.vertices[w]);
        if xc == mu {
            return Err(Error::AtVertex(x.to_string()));
        }
        let gap = rs
            .weight_to_root(&(&mu - &xc))
            .ok_or_else(|| Error::Internal("gap to the vertex leaves Y".into()))?;
        let candidates: Vec<usize> = (0..rs.rank()).filter(|&i| gap[i] >= 1).collect();
        candidates
            .iter()
            .copied()
            .find(|&i| rs.simple_is_short(i))
            .or_else(|| candidates.first().copied())
            .ok_or_else(|| Error::Internal(format!("no progressive root for {x}")))
    }

    /// Whether α_i qualifies as progressive for x (relative to σ_w) under any
    /// tie-break.
    pub fn is_progressive(&self, x: &Weight, w: WeylId, i: usize) -> bool {
        let rs = &self.rs;
        let winv = rs.inverse(w);
        let xc = rs.act(winv, x);
        let mu = rs.act(winv, &self.vertices[w]);
        if xc == mu {
            return false;
        }
        if !xc.is_dominant() {
            return xc[i] <= -1;
        }
        let Some(gap) = rs.weight_to_root(&(&mu - &xc)) else {
            return false;
        };
        if gap[i] < 1 {
            return false;
        }
        let short_available = (0..rs.rank()).any(|j| gap[j] >= 1 && rs.simple_is_short(j));
        !short_available || rs.simple_is_short(i)
    }
}

fn validate_vertices(rs: &RootSystem, vertices: &[Weight]) -> Validation {
    let mut v = Validation {
        orthogonal: true,
        ample: true,
        special: true,
        violations: Vec::new(),
    };
    for w in 0..rs.group_order() {
        for i in 0..rs.rank() {
            let u = rs.mul_simple(w, i);
            // each wall once, from the side where wα_i is positive
            if rs.element(u).length() < rs.element(w).length() {
                continue;
            }
            let root = rs.act(w, &rs.simple_root(i).weight);
            let diff = &vertices[w] - &vertices[u];
            let k = (0..rs.rank()).find(|&k| root[k] != 0).expect("roots are nonzero");
            let r = diff[k] / root[k];
            if diff[k] % root[k] != 0 || root.scale(r) != diff {
                v.orthogonal = false;
                v.ample = false;
                v.violations.push(format!(
                    "wall {}|{}: difference {diff} is not a multiple of the wall root {root}",
                    word_label(rs, w),
                    word_label(rs, u)
                ));
            } else if r <= 0 {
                v.ample = false;
                v.violations.push(format!(
                    "wall {}|{}: coefficient {r} is not positive",
                    word_label(rs, w),
                    word_label(rs, u)
                ));
            }
        }
    }
    for (w, mu) in vertices.iter().enumerate() {
        if !rs.act(rs.inverse(w), mu).is_dominant() {
            v.special = false;
            v.violations.push(format!(
                "chamber {}: vertex {mu} is not dominant for its chamber",
                word_label(rs, w)
            ));
        }
    }
    v
}

fn build_halfspaces(rs: &RootSystem, vertices: &[Weight]) -> Vec<Halfspace> {
    let n = rs.rank();
    let mut set = HashSet::new();
    let mut out = Vec::new();
    for (w, mu) in vertices.iter().enumerate() {
        // det · rootcoords(w⁻¹ y) = A y with A = adj(Cᵀ)·M(w⁻¹); require
        // A(μ − x) ≥ 0, i.e. A x ≤ A μ row by row.
        let winv = rs.inverse(w);
        let m = &rs.element(winv).weight_action;
        for i in 0..n {
            let normal: Vec<i64> = (0..n)
                .map(|col| {
                    let basis = Weight::unit(n, col);
                    rs.scaled_root_coords(&Weight(m.apply(&basis.0)))[i]
                })
                .collect();
            let bound = normal.iter().zip(mu.iter()).map(|(a, b)| a * b).sum();
            let h = Halfspace { normal, bound };
            if set.insert(h.clone()) {
                out.push(h);
            }
        }
    }
    out
}

/// Λ(P) as a sorted list with an index.
#[derive(Clone, Debug, Default)]
pub struct LatticePointSet {
    points: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl LatticePointSet {
    pub fn new(mut points: Vec<Weight>) -> Self {
        points.sort();
        points.dedup();
        let index = points
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        Self { points, index }
    }

    pub fn points(&self) -> &[Weight] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Weight) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Weight) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Weight> {
        self.points.iter()
    }
}

/// Degree-one generators of the Cayley sum: every Λ(P_i) point tagged by i.
pub fn cayley_lambda(polytopes: &[OrthogonalSet]) -> Result<Vec<(Weight, usize)>> {
    if polytopes.is_empty() {
        return Err(Error::EmptyList);
    }
    for p in &polytopes[1..] {
        polytopes[0].same_system(p)?;
    }
    let mut out = Vec::new();
    for (i, p) in polytopes.iter().enumerate() {
        out.extend(p.lambda_points()?.points().iter().map(|x| (x.clone(), i)));
    }
    Ok(out)
}

/// Simple-root coefficients of μ_σ − x in the frame of σ_w, if integral.
pub fn gap_to_vertex(p: &OrthogonalSet, x: &Weight, w: WeylId) -> Option<RootVec> {
    let rs = p.root_system();
    let winv = rs.inverse(w);
    rs.weight_to_root(&rs.act(winv, &(p.vertex(w) - x)))
}
