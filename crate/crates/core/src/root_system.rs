//! Root systems of Dynkin type: Cartan matrices, roots with their coroots,
//! and the Weyl group enumerated as integer matrices.
//!
//! Conventions used throughout the crate:
//!
//! * simple roots are labelled as in Bourbaki (0-based internally, so the
//!   Bourbaki root α_1 is index 0);
//! * the Cartan matrix is `c[i][j] = ⟨α_i, α_j^∨⟩`;
//! * a [`Weight`] is stored as ι(x) with ι(x)_i = ⟨x, α_i^∨⟩, hence
//!   ι(α_j)_i = c[j][i];
//! * the Weyl element with word `[a, b, c]` acts as s_a s_b s_c, i.e. s_c is
//!   applied first. Chamber σ_w is w applied to the dominant chamber.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Coords, IntMatrix, RootVec, Weight};

/// Largest Weyl group built unless the caller raises the guard (|W(E6)|).
pub const DEFAULT_GROUP_LIMIT: usize = 51_840;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn rank_ok(self, n: usize) -> bool {
        match self {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 4,
            Family::E => (6..=8).contains(&n),
            Family::F => n == 4,
            Family::G => n == 2,
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(format!("unknown root-system family {other:?}")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Family, rank and Cartan matrix `c[i][j] = ⟨α_i, α_j^∨⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanSpec {
    pub family: Family,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthClass {
    Long,
    Short,
    SimplyLaced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    /// Simple-root coordinates.
    pub root: RootVec,
    /// ι(β), the root as a weight.
    pub weight: Weight,
    /// β^∨ in the basis of simple coroots.
    pub coroot: Coords,
    pub length: LengthClass,
}

impl RootData {
    pub fn is_positive(&self) -> bool {
        self.root.iter().any(|&c| c > 0)
    }

    pub fn is_short(&self) -> bool {
        self.length == LengthClass::Short
    }

    /// Index of the simple root, if this is one.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &c) in self.root.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }
}

#[derive(Clone, Debug)]
pub struct WeylElement {
    /// A shortest word in the simple reflections (0-based indices).
    pub word: Vec<usize>,
    /// Action on weight coordinates.
    pub weight_action: IntMatrix,
    /// Action on simple-root coordinates.
    pub root_action: IntMatrix,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// Index of a Weyl group element inside [`RootSystem::weyl`]; index 0 is the
/// identity. Chambers are keyed by the same indices.
pub type WeylId = usize;

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: CartanSpec,
    cartan: IntMatrix,
    /// (α_i, α_i) in the normalisation where the symmetric form is integral.
    simple_norms: Vec<i64>,
    roots: Vec<RootData>,
    root_index: HashMap<RootVec, usize>,
    positive: Vec<usize>,
    weyl: Vec<WeylElement>,
    weyl_index: HashMap<IntMatrix, WeylId>,
    right_simple: Vec<WeylId>,
    inverse: Vec<WeylId>,
    det: i64,
    /// det · (Cᵀ)⁻¹: maps weight coordinates to det · root coordinates.
    to_root: IntMatrix,
}

fn gram_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; n]; n];
    let mut edge = |i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    let mut diag = vec![2i64; n];
    match family {
        Family::A => {
            for i in 0..n - 1 {
                edge(i, i + 1, -1);
            }
        }
        Family::B => {
            diag = vec![4; n];
            diag[n - 1] = 2;
            for i in 0..n - 1 {
                edge(i, i + 1, -2);
            }
        }
        Family::C => {
            diag[n - 1] = 4;
            for i in 0..n - 2 {
                edge(i, i + 1, -1);
            }
            edge(n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n - 2 {
                edge(i, i + 1, -1);
            }
            edge(n - 3, n - 1, -1);
        }
        Family::E => {
            edge(0, 2, -1);
            edge(1, 3, -1);
            for i in 2..n - 1 {
                edge(i, i + 1, -1);
            }
        }
        Family::F => {
            diag = vec![4, 4, 2, 2];
            edge(0, 1, -2);
            edge(1, 2, -2);
            edge(2, 3, -1);
        }
        Family::G => {
            diag = vec![2, 6];
            edge(0, 1, -3);
        }
    }
    for (i, d) in diag.into_iter().enumerate() {
        b[i][i] = d;
    }
    b
}

/// Exact inverse of an integer matrix scaled by its determinant.
fn adjugate(m: &IntMatrix) -> (i64, IntMatrix) {
    let n = m.dim();
    let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        Ratio::from_integer(m.get(i, j))
                    } else {
                        Ratio::from_integer((j - n == i) as i64)
                    }
                })
                .collect()
        })
        .collect();
    let mut det = Ratio::from_integer(1);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrices of finite type are invertible");
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                for j in 0..2 * n {
                    let v = a[col][j];
                    a[r][j] -= f * v;
                }
            }
        }
    }
    assert!(det.is_integer());
    let det = det.to_integer();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (n..2 * n)
                .map(|j| {
                    let v = a[i][j] * det;
                    assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    (det, IntMatrix::from_rows(&rows))
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Self::with_group_limit(family, rank, DEFAULT_GROUP_LIMIT)
    }

    pub fn with_group_limit(family: Family, rank: usize, limit: usize) -> Result<Self> {
        if !family.rank_ok(rank) {
            return Err(Error::InvalidRootSystem {
                family: family.letter(),
                rank,
                reason: "rank not allowed for this family",
            });
        }
        if rank > 8 {
            return Err(Error::InvalidRootSystem {
                family: family.letter(),
                rank,
                reason: "rank above 8 is not supported",
            });
        }
        let n = rank;
        let gram = gram_matrix(family, n);
        let simple_norms: Vec<i64> = (0..n).map(|i| gram[i][i]).collect();
        let cartan_rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let cartan = IntMatrix::from_rows(&cartan_rows);
        let spec = CartanSpec {
            family,
            rank: n,
            cartan: cartan_rows,
        };

        let (roots, root_index) = Self::build_roots(&cartan, &gram);
        let mut positive: Vec<usize> = (0..roots.len())
            .filter(|&k| roots[k].is_positive())
            .collect();
        positive.sort_by_key(|&k| (roots[k].root.height(), std::cmp::Reverse(roots[k].root.clone())));

        let name = format!("{}{}", family.letter(), n);
        let (weyl, weyl_index, right_simple) = Self::build_weyl(&cartan, n, limit, &name)?;
        let inverse = weyl
            .iter()
            .map(|w| {
                let mut m = IntMatrix::identity(n);
                for &i in w.word.iter().rev() {
                    m = m.mul(&Self::simple_weight_matrix(&cartan, i));
                }
                weyl_index[&m]
            })
            .collect();
        let (det, to_root) = adjugate(&cartan.transpose());

        Ok(Self {
            spec,
            cartan,
            simple_norms,
            roots,
            root_index,
            positive,
            weyl,
            weyl_index,
            right_simple,
            inverse,
            det,
            to_root,
        })
    }

    /// s_i on weight coordinates: x_j ↦ x_j − c_ij x_i.
    fn simple_weight_matrix(cartan: &IntMatrix, i: usize) -> IntMatrix {
        let n = cartan.dim();
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            m.set(j, i, m.get(j, i) - cartan.get(i, j));
        }
        m
    }

    /// s_i on root coordinates: b ↦ b − ⟨b, α_i^∨⟩ α_i.
    fn simple_root_matrix(cartan: &IntMatrix, i: usize) -> IntMatrix {
        let n = cartan.dim();
        let mut m = IntMatrix::identity(n);
        for k in 0..n {
            m.set(i, k, m.get(i, k) - cartan.get(k, i));
        }
        m
    }

    /// Orbit of the simple (root, coroot) pairs under simple reflections; the
    /// coroot side uses the dual reflection γ^∨ ↦ γ^∨ − ⟨α_j, γ^∨⟩ α_j^∨.
    fn build_roots(
        cartan: &IntMatrix,
        gram: &[Vec<i64>],
    ) -> (Vec<RootData>, HashMap<RootVec, usize>) {
        let n = cartan.dim();
        let mut seen: HashMap<RootVec, usize> = HashMap::new();
        let mut pairs: Vec<(RootVec, Coords)> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let r = RootVec::unit(n, i);
            let k = RootVec::unit(n, i).0;
            seen.insert(r.clone(), pairs.len());
            pairs.push((r.clone(), k.clone()));
            queue.push_back((r, k));
        }
        while let Some((r, k)) = queue.pop_front() {
            for j in 0..n {
                let pr: i64 = (0..n).map(|l| r[l] * cartan.get(l, j)).sum();
                let pk: i64 = (0..n).map(|l| k[l] * cartan.get(j, l)).sum();
                let mut r2 = r.clone();
                r2[j] -= pr;
                let mut k2 = k.clone();
                k2[j] -= pk;
                if !seen.contains_key(&r2) {
                    seen.insert(r2.clone(), pairs.len());
                    pairs.push((r2.clone(), k2.clone()));
                    queue.push_back((r2, k2));
                }
            }
        }
        let norms: Vec<i64> = (0..n).map(|i| gram[i][i]).collect();
        let simply_laced = norms.iter().all(|&d| d == norms[0]);
        let long_norm = *norms.iter().max().unwrap();
        let roots: Vec<RootData> = pairs
            .into_iter()
            .map(|(root, coroot)| {
                let sq: i64 = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| root[i] * root[j] * gram[i][j])
                    .sum();
                let length = if simply_laced {
                    LengthClass::SimplyLaced
                } else if sq == long_norm {
                    LengthClass::Long
                } else {
                    LengthClass::Short
                };
                let weight = Weight(
                    (0..n)
                        .map(|i| (0..n).map(|j| root[j] * cartan.get(j, i)).sum())
                        .collect(),
                );
                RootData {
                    root,
                    weight,
                    coroot,
                    length,
                }
            })
            .collect();
        let index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.root.clone(), k))
            .collect();
        (roots, index)
    }

    #[allow(clippy::type_complexity)]
    fn build_weyl(
        cartan: &IntMatrix,
        n: usize,
        limit: usize,
        name: &str,
    ) -> Result<(Vec<WeylElement>, HashMap<IntMatrix, WeylId>, Vec<WeylId>)> {
        let sw: Vec<IntMatrix> = (0..n).map(|i| Self::simple_weight_matrix(cartan, i)).collect();
        let sr: Vec<IntMatrix> = (0..n).map(|i| Self::simple_root_matrix(cartan, i)).collect();
        let mut elems = vec![WeylElement {
            word: Vec::new(),
            weight_action: IntMatrix::identity(n),
            root_action: IntMatrix::identity(n),
        }];
        let mut index = HashMap::new();
        index.insert(IntMatrix::identity(n), 0);
        let mut right = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            for i in 0..n {
                let m = elems[head].weight_action.mul(&sw[i]);
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        if elems.len() >= limit {
                            return Err(Error::GroupTooLarge(name.to_string(), limit));
                        }
                        let mut word = elems[head].word.clone();
                        word.push(i);
                        let root_action = elems[head].root_action.mul(&sr[i]);
                        let id = elems.len();
                        index.insert(m.clone(), id);
                        elems.push(WeylElement {
                            word,
                            weight_action: m,
                            root_action,
                        });
                        id
                    }
                };
                right.push(id);
            }
            head += 1;
        }
        Ok((elems, index, right))
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.spec.family, self.spec.rank)
    }

    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    /// `c_ij = ⟨α_i, α_j^∨⟩`.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan.get(i, j)
    }

    pub fn simple_norms(&self) -> &[i64] {
        &self.simple_norms
    }

    pub fn is_simply_laced(&self) -> bool {
        self.simple_norms.iter().all(|&d| d == self.simple_norms[0])
    }

    /// Whether the simple root α_i is short (never true when simply laced).
    pub fn simple_is_short(&self, i: usize) -> bool {
        let max = *self.simple_norms.iter().max().unwrap();
        self.simple_norms[i] < max
    }

    pub fn roots(&self) -> &[RootData] {
        &self.roots
    }

    /// Positive roots sorted by height.
    pub fn positive_roots(&self) -> impl Iterator<Item = &RootData> + '_ {
        self.positive.iter().map(move |&k| &self.roots[k])
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn root(&self, k: usize) -> &RootData {
        &self.roots[k]
    }

    pub fn simple_root(&self, i: usize) -> &RootData {
        &self.roots[self.root_index[&RootVec::unit(self.rank(), i)]]
    }

    pub fn root_index(&self, r: &RootVec) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    pub fn is_root(&self, r: &RootVec) -> bool {
        self.root_index.contains_key(r)
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn group_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn element(&self, w: WeylId) -> &WeylElement {
        &self.weyl[w]
    }

    pub fn inverse(&self, w: WeylId) -> WeylId {
        self.inverse[w]
    }

    /// The element w·s_i, i.e. the chamber adjacent to σ_w across its i-th wall.
    pub fn mul_simple(&self, w: WeylId, i: usize) -> WeylId {
        self.right_simple[w * self.rank() + i]
    }

    /// Product a·b.
    pub fn compose(&self, a: WeylId, b: WeylId) -> WeylId {
        let m = self.weyl[a].weight_action.mul(&self.weyl[b].weight_action);
        self.weyl_index[&m]
    }

    /// Element of an arbitrary (not necessarily reduced) word.
    pub fn element_of_word(&self, word: &[usize]) -> Result<WeylId> {
        let mut w = 0;
        for &i in word {
            if i >= self.rank() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.rank(),
                });
            }
            w = self.mul_simple(w, i);
        }
        Ok(w)
    }

    pub fn act(&self, w: WeylId, x: &Weight) -> Weight {
        Weight(self.weyl[w].weight_action.apply(&x.0))
    }

    pub fn act_root(&self, w: WeylId, b: &RootVec) -> RootVec {
        RootVec(self.weyl[w].root_action.apply(&b.0))
    }

    /// s_i(x): coordinate j becomes x_j − c_ij x_i.
    pub fn reflect(&self, i: usize, x: &Weight) -> Weight {
        let xi = x[i];
        let mut y = x.clone();
        for j in 0..self.rank() {
            y[j] -= self.c(i, j) * xi;
        }
        y
    }

    /// ⟨x, β^∨⟩.
    pub fn pair(&self, x: &Weight, beta: &RootData) -> i64 {
        x.dot(&beta.coroot)
    }

    pub fn pair_checked(&self, x: &Weight, beta: &RootData) -> Result<i64> {
        if x.rank() != beta.coroot.len() {
            return Err(Error::Dimension {
                expected: beta.coroot.len(),
                got: x.rank(),
            });
        }
        Ok(self.pair(x, beta))
    }

    /// ι(b) = Cᵀ b.
    pub fn root_to_weight(&self, b: &RootVec) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| b[j] * self.c(j, i)).sum())
                .collect(),
        )
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// det · (root coordinates of x); exact for any weight.
    pub fn scaled_root_coords(&self, x: &Weight) -> Coords {
        self.to_root.apply(&x.0)
    }

    /// Root coordinates of x, if x lies in the root lattice.
    pub fn weight_to_root(&self, x: &Weight) -> Option<RootVec> {
        let s = self.scaled_root_coords(x);
        let d = self.det;
        if s.iter().all(|c| c % d == 0) {
            Some(RootVec(s.iter().map(|c| c / d).collect()))
        } else {
            None
        }
    }

    /// Root coordinates of x as exact rationals.
    pub fn rational_root_coords(&self, x: &Weight) -> Vec<Ratio<i64>> {
        self.scaled_root_coords(x)
            .iter()
            .map(|&c| Ratio::new(c, self.det))
            .collect()
    }

    pub fn in_root_lattice(&self, x: &Weight) -> bool {
        self.weight_to_root(x).is_some()
    }

    /// Returns (w, d) with d dominant and x = w·d, reflecting at the smallest
    /// negative coordinate at every step.
    pub fn dominant_representative(&self, x: &Weight) -> (WeylId, Weight) {
        let mut d = x.clone();
        let mut w = 0;
        while let Some(i) = (0..self.rank()).find(|&i| d[i] < 0) {
            d = self.reflect(i, &d);
            w = self.mul_simple(w, i);
        }
        (w, d)
    }
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for RootSystem {}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(f, n).unwrap()
    }

    #[test]
    fn rank_one_and_two_examples() {
        let a1 = rs(Family::A, 1);
        assert_eq!(a1.roots().len(), 2);
        assert_eq!(a1.group_order(), 2);

        let a2 = rs(Family::A, 2);
        let pos: Vec<_> = a2.positive_roots().map(|r| r.root.clone()).collect();
        assert_eq!(
            pos,
            vec![
                RootVec::from_slice(&[1, 0]),
                RootVec::from_slice(&[0, 1]),
                RootVec::from_slice(&[1, 1])
            ]
        );
        assert_eq!(a2.group_order(), 6);

        let g2 = rs(Family::G, 2);
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.group_order(), 12);
        assert_eq!(g2.simple_root(0).length, LengthClass::Short);
        assert_eq!(g2.simple_root(1).length, LengthClass::Long);
    }

    #[test]
    fn bourbaki_lengths_for_two_root_lengths() {
        let b2 = rs(Family::B, 2);
        assert_eq!(b2.simple_root(0).length, LengthClass::Long);
        assert_eq!(b2.simple_root(1).length, LengthClass::Short);
        assert_eq!(b2.c(0, 1), -2);
        assert_eq!(b2.c(1, 0), -1);
        let c3 = rs(Family::C, 3);
        assert_eq!(c3.simple_root(2).length, LengthClass::Long);
        let b3 = rs(Family::B, 3);
        assert_eq!(b3.simple_root(2).length, LengthClass::Short);
        let f4 = rs(Family::F, 4);
        assert!(!f4.simple_is_short(1) && f4.simple_is_short(2));
    }

    #[test]
    fn group_orders_and_root_counts() {
        let table = [
            (Family::A, 3, 24, 12),
            (Family::A, 4, 120, 20),
            (Family::B, 3, 48, 18),
            (Family::C, 3, 48, 18),
            (Family::D, 4, 192, 24),
            (Family::F, 4, 1152, 48),
            (Family::E, 6, 51840, 72),
        ];
        for (f, n, w, d) in table {
            let r = rs(f, n);
            assert_eq!(r.group_order(), w, "{f}{n}");
            assert_eq!(r.roots().len(), d, "{f}{n}");
            assert_eq!(r.num_positive() * 2, d);
        }
    }

    #[test]
    fn guard_and_bad_ranks() {
        assert!(matches!(
            RootSystem::new(Family::E, 7),
            Err(Error::GroupTooLarge(..))
        ));
        assert!(RootSystem::new(Family::D, 3).is_err());
        assert!(RootSystem::new(Family::G, 3).is_err());
        assert!(RootSystem::new(Family::A, 0).is_err());
        assert!(RootSystem::with_group_limit(Family::A, 3, 10).is_err());
    }

    #[test]
    fn cartan_axioms() {
        for (f, n) in [(Family::B, 4), (Family::C, 4), (Family::D, 5), (Family::G, 2), (Family::F, 4)] {
            let r = rs(f, n);
            for i in 0..n {
                assert_eq!(r.c(i, i), 2);
                for j in 0..n {
                    if i != j {
                        assert!(r.c(i, j) <= 0);
                        assert_eq!(r.c(i, j) == 0, r.c(j, i) == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let a2 = rs(Family::A, 2);
        let rho = Weight::from_slice(&[1, 1]);
        for i in 0..2 {
            assert_eq!(a2.pair(&rho, a2.simple_root(i)), 1);
        }
        let hi = &a2.roots()[a2.root_index(&RootVec::from_slice(&[1, 1])).unwrap()];
        assert_eq!(hi.coroot.as_slice(), &[1, 1]);
        assert_eq!(a2.pair(&rho, hi), 2);
        let neg = &a2.roots()[a2.root_index(&RootVec::from_slice(&[-1, -1])).unwrap()];
        assert_eq!(a2.pair(&rho, neg), -2);
        assert!(a2.pair_checked(&Weight::from_slice(&[1]), hi).is_err());
    }

    #[test]
    fn reflection_examples() {
        let a2 = rs(Family::A, 2);
        let x = Weight::from_slice(&[1, 1]);
        assert_eq!(a2.act(0, &x), x);
        let s1 = a2.element_of_word(&[0]).unwrap();
        assert_eq!(a2.act(s1, &x), Weight::from_slice(&[-1, 2]));
        assert_eq!(a2.reflect(0, &x), Weight::from_slice(&[-1, 2]));
    }

    #[test]
    fn dominant_representative_examples() {
        let a2 = rs(Family::A, 2);
        let (w, d) = a2.dominant_representative(&Weight::from_slice(&[1, 1]));
        assert_eq!((w, d), (0, Weight::from_slice(&[1, 1])));
        let (w, d) = a2.dominant_representative(&Weight::from_slice(&[-1, 2]));
        assert_eq!(a2.element(w).word, vec![0]);
        assert_eq!(d, Weight::from_slice(&[1, 1]));
        let a1 = rs(Family::A, 1);
        let (w, d) = a1.dominant_representative(&Weight::from_slice(&[-3]));
        assert_eq!(a1.element(w).word, vec![0]);
        assert_eq!(d, Weight::from_slice(&[3]));
    }

    #[test]
    fn coroot_pairs_with_roots() {
        for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::G, 2), (Family::F, 4), (Family::D, 4)] {
            let r = rs(f, n);
            for beta in r.roots() {
                assert_eq!(r.pair(&beta.weight, beta), 2);
                for gamma in r.roots() {
                    if gamma.root == beta.root || gamma.root == -&beta.root {
                        continue;
                    }
                    let at_least_as_long = beta.length != LengthClass::Short
                        || gamma.length == LengthClass::Short;
                    if at_least_as_long {
                        let p = r.pair(&gamma.weight, beta);
                        assert!((-1..=1).contains(&p), "{f}{n}: ⟨{:?},{:?}^∨⟩={p}", gamma.root, beta.root);
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(r.pair(&r.simple_root(j).weight, r.simple_root(i)), r.c(j, i));
                }
            }
        }
    }

    #[test]
    fn weyl_group_permutes_roots_and_lengths() {
        let r = rs(Family::B, 3);
        for w in 0..r.group_order() {
            let mut image = HashSet::new();
            for beta in r.roots() {
                let wb = r.act_root(w, &beta.root);
                let k = r.root_index(&wb).expect("w permutes roots");
                assert_eq!(r.root(k).length, beta.length);
                assert_eq!(r.act(w, &beta.weight), r.root(k).weight);
                image.insert(wb);
            }
            assert_eq!(image.len(), r.roots().len());
        }
    }

    #[test]
    fn roots_are_orbits_of_simple_roots() {
        let r = rs(Family::C, 3);
        let mut orbit = HashSet::new();
        for i in 0..3 {
            for w in 0..r.group_order() {
                orbit.insert(r.act_root(w, &RootVec::unit(3, i)));
            }
        }
        let all: HashSet<_> = r.roots().iter().map(|b| b.root.clone()).collect();
        assert_eq!(orbit, all);
    }

    #[test]
    fn inverse_and_words() {
        let r = rs(Family::A, 3);
        for w in 0..r.group_order() {
            assert_eq!(r.compose(w, r.inverse(w)), 0);
            assert_eq!(r.element_of_word(&r.element(w).word).unwrap(), w);
        }
        // words are shortest: length of longest element is |Δ_+|
        let max_len = r.weyl().iter().map(|w| w.length()).max().unwrap();
        assert_eq!(max_len, r.num_positive());
    }

    #[test]
    fn root_coordinate_conversion() {
        let r = rs(Family::G, 2);
        for beta in r.roots() {
            assert_eq!(r.weight_to_root(&beta.weight).unwrap(), beta.root);
        }
        let a2 = rs(Family::A, 2);
        assert!(a2.weight_to_root(&Weight::from_slice(&[1, 0])).is_none());
        assert_eq!(a2.det(), 3);
    }
}
