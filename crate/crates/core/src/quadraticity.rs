//! Root moves between components of a tuple, the fiber graphs they generate,
//! and connectivity checks.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lattice::{RootVec, Weight};
use crate::numbers_game::is_winning;
use crate::polytope::{LatticePointSet, OrthogonalSet};
use crate::root_system::RootSystem;
use crate::tuples::{LabeledTuple, TupleSpace};

/// Fibers with more tuples than this are skipped by default.
pub const DEFAULT_FIBER_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveMode {
    AllRootMoves,
    /// Moves between positions i and i + 1 only.
    AdjacentOnly,
    /// Componentwise-winning tuples and the moves between them.
    WinningRestricted,
    /// Both restrictions at once; connectivity is recorded, not expected.
    AdjacentWinning,
}

impl MoveMode {
    pub fn adjacent_only(self) -> bool {
        matches!(self, Self::AdjacentOnly | Self::AdjacentWinning)
    }

    pub fn winning_only(self) -> bool {
        matches!(self, Self::WinningRestricted | Self::AdjacentWinning)
    }
}

impl fmt::Display for MoveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AllRootMoves => "all_root_moves",
            Self::AdjacentOnly => "adjacent_only",
            Self::WinningRestricted => "winning_restricted",
            Self::AdjacentWinning => "adjacent_winning",
        })
    }
}

/// (t_i + β, t_j − β), if both stay in their Λ sets.
pub fn root_move(
    polytopes: &[OrthogonalSet],
    t: &[Weight],
    i: usize,
    j: usize,
    beta: &Weight,
) -> Result<Option<LabeledTuple>> {
    let m = polytopes.len();
    for k in [i, j] {
        if k >= m || k >= t.len() {
            return Err(Error::IndexOutOfRange { index: k, len: m.min(t.len()) });
        }
    }
    if i == j {
        return Err(Error::Unsupported("a root move needs two distinct indices".into()));
    }
    let a = &t[i] + beta;
    let b = &t[j] - beta;
    if !polytopes[i].is_lambda_point(&a) || !polytopes[j].is_lambda_point(&b) {
        return Ok(None);
    }
    let mut out = t.to_vec();
    out[i] = a;
    out[j] = b;
    Ok(Some(out))
}

/// A simple move: α_i goes to position `to` (pairing ≤ −1) from position
/// `from` (pairing ≥ 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleMove {
    pub to: usize,
    pub from: usize,
    pub simple: usize,
}

impl SimpleMove {
    pub fn apply(&self, rs: &RootSystem, t: &[Weight]) -> LabeledTuple {
        let a = &rs.simple_root(self.simple).weight;
        let mut out = t.to_vec();
        out[self.to] += a;
        out[self.from] -= a;
        out
    }
}

pub fn simple_moves(rs: &RootSystem, t: &[Weight]) -> Vec<SimpleMove> {
    let mut out = Vec::new();
    for simple in 0..rs.rank() {
        for to in 0..t.len() {
            if t[to][simple] > -1 {
                continue;
            }
            for from in 0..t.len() {
                if t[from][simple] >= 1 {
                    out.push(SimpleMove { to, from, simple });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberEdge {
    pub a: usize,
    pub b: usize,
    /// β moves from position j to position i.
    pub i: usize,
    pub j: usize,
    pub root: RootVec,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberGraph {
    pub sum: Weight,
    pub mode: MoveMode,
    pub nodes: Vec<LabeledTuple>,
    pub edges: Vec<FiberEdge>,
}

impl FiberGraph {
    /// Connected components, as lists of node indices, in order of their
    /// smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first path of node indices from `from` to `to`.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut c = to;
                while c != from {
                    c = prev[c];
                    path.push(c);
                }
                path.reverse();
                return Some(path);
            }
            for &v in &adj[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    pub fn node_index(&self, t: &[Weight]) -> Option<usize> {
        self.nodes.iter().position(|n| n.as_slice() == t)
    }
}

type Key = SmallVec<[u32; 4]>;

/// Λ(P_k) with per-point move tables, reusable across sums.
#[derive(Clone, Debug)]
pub struct FiberSpace {
    space: TupleSpace,
    /// `steps[k][p][r]`: index of point p + root r in Λ(P_k).
    steps: Vec<Vec<Vec<Option<u32>>>>,
    winning: Vec<Vec<bool>>,
    negate: Vec<usize>,
    /// Number of tuples in Λ(P_2) × ⋯ × Λ(P_m) with a given sum.
    tail_counts: HashMap<Weight, u64>,
    /// The same tuples listed by sum, when there are few enough of them.
    tail_table: Option<TailTable>,
    /// Range of first coordinates among tail sums.
    tail_range: (i64, i64),
    /// Fiber sizes by sum, when the tail table exists.
    sizes: Option<SumCounts>,
    strides: Vec<u64>,
}

const TAIL_TABLE_LIMIT: u64 = 80_000_000;
const TAIL_BOX_LIMIT: u64 = 1 << 26;

/// Dense counts over a box of weights.
#[derive(Clone, Debug)]
struct SumCounts {
    lo: Vec<i64>,
    hi: Vec<i64>,
    strides: Vec<usize>,
    counts: Vec<u32>,
}

impl SumCounts {
    /// Fiber sizes of Λ(P_1) × tail, by convolving Λ(P_1) with the bucket
    /// sizes of the tail table.
    fn convolve(first: &LatticePointSet, tail: &TailTable) -> Option<Self> {
        let n = tail.lo.len();
        let lo: Vec<i64> = (0..n).map(|k| first.iter().map(|x| x[k]).min().unwrap() + tail.lo[k]).collect();
        let hi: Vec<i64> = (0..n).map(|k| first.iter().map(|x| x[k]).max().unwrap() + tail.hi[k]).collect();
        let mut strides = vec![1usize; n];
        let mut volume = 1u64;
        for k in (0..n).rev() {
            strides[k] = volume as usize;
            volume = volume.checked_mul((hi[k] - lo[k] + 1) as u64)?;
            if volume > TAIL_BOX_LIMIT {
                return None;
            }
        }
        let offset = |x: &[i64]| -> i64 { (0..n).map(|k| x[k] * strides[k] as i64).sum() };
        let base = -offset(&lo);
        let mut buckets: Vec<(i64, u32)> = Vec::new();
        let mut y = tail.lo.clone();
        for cell in 0..tail.offsets.len() - 1 {
            let c = tail.offsets[cell + 1] - tail.offsets[cell];
            if c > 0 {
                let mut rest = cell;
                for k in 0..n {
                    y[k] = tail.lo[k] + (rest / tail.strides[k]) as i64;
                    rest %= tail.strides[k];
                }
                buckets.push((offset(&y), c));
            }
        }
        let mut counts = vec![0u32; volume as usize];
        for x in first.iter() {
            let ox = base + offset(x.as_slice());
            for &(oy, c) in &buckets {
                counts[(ox + oy) as usize] += c;
            }
        }
        Some(Self { lo, hi, strides, counts })
    }

    fn get(&self, x: &Weight) -> u64 {
        let mut idx = 0;
        for k in 0..self.lo.len() {
            if x[k] < self.lo[k] || x[k] > self.hi[k] {
                return 0;
            }
            idx += (x[k] - self.lo[k]) as usize * self.strides[k];
        }
        self.counts[idx] as u64
    }
}

/// Index tuples of Λ(P_2) × ⋯ × Λ(P_m) bucketed by their sum over the
/// bounding box of the sums, each bucket in lexicographic order.
#[derive(Clone, Debug)]
struct TailTable {
    lo: Vec<i64>,
    hi: Vec<i64>,
    strides: Vec<usize>,
    width: usize,
    offsets: Vec<u32>,
    data: Vec<u32>,
}

impl TailTable {
    /// None when the product or the bounding box is too large.
    fn build(lambdas: &[LatticePointSet]) -> Option<Self> {
        let width = lambdas.len();
        let n = lambdas.first()?.points().first()?.rank();
        let total = lambdas.iter().try_fold(1u64, |acc, l| acc.checked_mul(l.len() as u64))?;
        if total == 0 || total > TAIL_TABLE_LIMIT {
            return None;
        }
        let bound = |k: usize, hi: bool| -> i64 {
            lambdas
                .iter()
                .map(|l| {
                    let c = l.iter().map(|x| x[k]);
                    if hi { c.max().unwrap() } else { c.min().unwrap() }
                })
                .sum()
        };
        let lo: Vec<i64> = (0..n).map(|k| bound(k, false)).collect();
        let hi: Vec<i64> = (0..n).map(|k| bound(k, true)).collect();
        let mut strides = vec![1usize; n];
        let mut volume = 1u64;
        for k in (0..n).rev() {
            strides[k] = volume as usize;
            volume = volume.checked_mul((hi[k] - lo[k] + 1) as u64)?;
            if volume > TAIL_BOX_LIMIT {
                return None;
            }
        }
        // the cell of a sum is linear in the summands
        let base: i64 = -(0..n).map(|k| lo[k] * strides[k] as i64).sum::<i64>();
        let offsets_of: Vec<Vec<i64>> = lambdas
            .iter()
            .map(|l| l.iter().map(|x| (0..n).map(|k| x[k] * strides[k] as i64).sum()).collect())
            .collect();
        let for_each = |f: &mut dyn FnMut(usize, &[u32])| {
            let mut idx = vec![0u32; width];
            loop {
                let cell = base + idx.iter().enumerate().map(|(l, &p)| offsets_of[l][p as usize]).sum::<i64>();
                f(cell as usize, &idx);
                let mut l = width;
                loop {
                    if l == 0 {
                        return;
                    }
                    l -= 1;
                    if (idx[l] as usize) + 1 < lambdas[l].len() {
                        idx[l] += 1;
                        break;
                    }
                    idx[l] = 0;
                }
            }
        };
        let mut offsets = vec![0u32; volume as usize + 1];
        for_each(&mut |cell, _| offsets[cell + 1] += 1);
        for c in 1..offsets.len() {
            offsets[c] += offsets[c - 1];
        }
        let mut cursor: Vec<u32> = offsets[..volume as usize].to_vec();
        let mut data = vec![0u32; total as usize * width];
        for_each(&mut |cell, idx| {
            let at = cursor[cell] as usize * width;
            data[at..at + width].copy_from_slice(idx);
            cursor[cell] += 1;
        });
        Some(Self {
            lo,
            hi,
            strides,
            width,
            offsets,
            data,
        })
    }

    fn cell(&self, coord: impl Fn(usize) -> i64) -> Option<usize> {
        let mut idx = 0;
        for k in 0..self.lo.len() {
            let c = coord(k);
            if c < self.lo[k] || c > self.hi[k] {
                return None;
            }
            idx += (c - self.lo[k]) as usize * self.strides[k];
        }
        Some(idx)
    }

    /// Tuples summing to `sum − x`, flattened.
    fn bucket(&self, sum: &Weight, x: &Weight) -> &[u32] {
        match self.cell(|k| sum[k] - x[k]) {
            Some(c) => {
                let (a, b) = (self.offsets[c] as usize, self.offsets[c + 1] as usize);
                &self.data[a * self.width..b * self.width]
            }
            None => &[],
        }
    }
}

/// Fiber nodes in lexicographic order, with their mixed-radix codes.
struct RawFiber {
    nodes: Vec<Key>,
    codes: Vec<u64>,
}

impl FiberSpace {
    pub fn new(polytopes: &[OrthogonalSet]) -> Result<Self> {
        let space = TupleSpace::new(polytopes)?;
        let rs = space.sum().root_system().clone();
        let roots = rs.roots();
        let steps = space
            .lambdas()
            .iter()
            .map(|lam| {
                lam.iter()
                    .map(|x| {
                        roots
                            .iter()
                            .map(|r| lam.index_of(&(x + &r.weight)).map(|k| k as u32))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let winning = space
            .lambdas()
            .iter()
            .map(|lam| lam.iter().map(|x| is_winning(&rs, x)).collect())
            .collect();
        let negate = roots
            .iter()
            .map(|r| rs.root_index(&-&r.root).expect("roots come in pairs"))
            .collect();
        let tail_table = TailTable::build(&space.lambdas()[1..]);
        let mut tail_counts: HashMap<Weight, u64> = HashMap::new();
        if tail_table.is_none() {
            if let Some((last, rest)) = space.lambdas()[1..].split_last() {
                tail_counts = last.iter().map(|x| (x.clone(), 1)).collect();
                for lam in rest.iter().rev() {
                    let mut next: HashMap<Weight, u64> = HashMap::new();
                    for x in lam.iter() {
                        for (y, c) in &tail_counts {
                            *next.entry(x + y).or_default() += c;
                        }
                    }
                    tail_counts = next;
                }
            }
        }
        let sizes = tail_table.as_ref().and_then(|t| SumCounts::convolve(&space.lambdas()[0], t));
        let tail_range = match &tail_table {
            Some(t) => (t.lo[0], t.hi[0]),
            None => tail_counts.keys().fold((i64::MAX, i64::MIN), |(lo, hi), y| (lo.min(y[0]), hi.max(y[0]))),
        };
        let mut strides = vec![1u64; space.lambdas().len()];
        for k in (0..strides.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * space.lambdas()[k + 1].len() as u64;
        }
        Ok(Self {
            space,
            steps,
            winning,
            negate,
            tail_counts,
            tail_table,
            tail_range,
            sizes,
            strides,
        })
    }

    /// |{t ∈ Λ(P_1) × ⋯ × Λ(P_m) : Σ t = sum}|, without enumerating.
    pub fn fiber_size(&self, sum: &Weight) -> u64 {
        let first = &self.space.lambdas()[0];
        if self.space.lambdas().len() == 1 {
            return first.contains(sum) as u64;
        }
        if let Some(sizes) = &self.sizes {
            return sizes.get(sum);
        }
        if let Some(t) = &self.tail_table {
            return self.first_candidates(sum).map(|(_, x)| (t.bucket(sum, x).len() / t.width) as u64).sum();
        }
        self.first_candidates(sum)
            .map(|(_, x)| self.tail_counts.get(&(sum - x)).copied().unwrap_or(0))
            .sum()
    }

    /// Points of Λ(P_1) whose first coordinate leaves a reachable tail sum.
    fn first_candidates<'a>(&'a self, sum: &Weight) -> impl Iterator<Item = (usize, &'a Weight)> + 'a {
        let pts = self.space.lambdas()[0].points();
        let lo = sum[0] - self.tail_range.1;
        let hi = sum[0] - self.tail_range.0;
        let start = pts.partition_point(|p| p[0] < lo);
        pts[start..].iter().enumerate().map(move |(k, x)| (start + k, x)).take_while(move |(_, x)| x[0] <= hi)
    }

    pub fn tuple_space(&self) -> &TupleSpace {
        &self.space
    }

    pub fn sum(&self) -> &OrthogonalSet {
        self.space.sum()
    }

    fn raw_fiber(&self, sum: &Weight, mode: MoveMode, cap: usize) -> Result<Option<RawFiber>> {
        if self.fiber_size(sum) > cap as u64 {
            return Ok(None);
        }
        let lambdas = self.space.lambdas();
        let keep = |key: &Key| !mode.winning_only() || key.iter().enumerate().all(|(k, &p)| self.winning[k][p as usize]);
        let mut nodes: Vec<Key> = Vec::new();
        if let Some(table) = &self.tail_table {
            for (p, x) in self.first_candidates(sum) {
                for chunk in table.bucket(sum, x).chunks(table.width) {
                    let mut key = Key::new();
                    key.push(p as u32);
                    key.extend_from_slice(chunk);
                    if keep(&key) {
                        nodes.push(key);
                    }
                }
            }
            let codes = nodes.iter().map(|k| self.code(k)).collect();
            return Ok(Some(RawFiber { nodes, codes }));
        }
        self.space.visit(sum, |t| {
            let key: Key = t
                .iter()
                .zip(lambdas)
                .map(|(x, lam)| lam.index_of(x).unwrap() as u32)
                .collect();
            if keep(&key) {
                nodes.push(key);
            }
            true
        });
        nodes.sort_unstable();
        let codes = nodes.iter().map(|k| self.code(k)).collect();
        Ok(Some(RawFiber { nodes, codes }))
    }

    fn code(&self, key: &[u32]) -> u64 {
        key.iter().zip(&self.strides).map(|(&p, &s)| p as u64 * s).sum()
    }

    /// `blocks[p]..blocks[p + 1]` are the nodes whose first entry is p.
    fn blocks(&self, raw: &RawFiber) -> Vec<u32> {
        let mut blocks = vec![0u32; self.space.lambdas()[0].len() + 1];
        for node in &raw.nodes {
            blocks[node[0] as usize + 1] += 1;
        }
        for p in 1..blocks.len() {
            blocks[p] += blocks[p - 1];
        }
        blocks
    }

    /// Move pairs (i, j), i < j: consecutive ones first.
    fn pairs(&self, mode: MoveMode) -> Vec<(usize, usize)> {
        let m = self.strides.len();
        let mut out: Vec<(usize, usize)> = (1..m).map(|j| (j - 1, j)).collect();
        if !mode.adjacent_only() {
            out.extend((0..m).flat_map(|i| (i + 2..m).map(move |j| (i, j))));
        }
        out
    }

    /// Calls `f(a, b, r)` for every edge a < b moving between entries i and
    /// j; returns false as soon as `f` does.
    fn pair_edges(
        &self,
        raw: &RawFiber,
        blocks: &[u32],
        (i, j): (usize, usize),
        mut f: impl FnMut(u32, u32, usize) -> bool,
    ) -> bool {
        let (si, sj) = (self.strides[i], self.strides[j]);
        let (steps_i, steps_j) = (&self.steps[i], &self.steps[j]);
        for (a, node) in raw.nodes.iter().enumerate() {
            let code = raw.codes[a];
            let base = code - node[i] as u64 * si - node[j] as u64 * sj;
            let (row_i, row_j) = (&steps_i[node[i] as usize], &steps_j[node[j] as usize]);
            // (i, j, β) and (j, i, −β) coincide; each edge is visited once,
            // from its smaller end
            for (r, step) in row_i.iter().enumerate() {
                let Some(pi) = *step else { continue };
                let Some(pj) = row_j[self.negate[r]] else { continue };
                let next = base + pi as u64 * si + pj as u64 * sj;
                if next <= code {
                    continue;
                }
                let first = if i == 0 { pi } else { node[0] } as usize;
                let (lo, hi) = (blocks[first] as usize, blocks[first + 1] as usize);
                if let Ok(k) = raw.codes[lo..hi].binary_search(&next) {
                    if !f(a as u32, (lo + k) as u32, r) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The fiber over `sum`; errors if `sum` is not a lattice point of the
    /// sum polytope or the fiber has more than `cap` nodes.
    pub fn fiber(&self, sum: &Weight, mode: MoveMode, cap: usize) -> Result<FiberGraph> {
        if !self.sum().is_lambda_point(sum) {
            return Err(Error::NotInPolytope(sum.to_string()));
        }
        let raw = self
            .raw_fiber(sum, mode, cap)?
            .ok_or(Error::SearchTooLarge(cap as u128 + 1))?;
        let rs = self.sum().root_system();
        let lambdas = self.space.lambdas();
        let nodes = raw
            .nodes
            .iter()
            .map(|k| k.iter().zip(lambdas).map(|(&p, lam)| lam.points()[p as usize].clone()).collect())
            .collect();
        let blocks = self.blocks(&raw);
        let mut edges = Vec::new();
        for (i, j) in self.pairs(mode) {
            self.pair_edges(&raw, &blocks, (i, j), |a, b, r| {
                edges.push(FiberEdge {
                    a: a as usize,
                    b: b as usize,
                    i,
                    j,
                    root: rs.root(r).root.clone(),
                });
                true
            });
        }
        Ok(FiberGraph {
            sum: sum.clone(),
            mode,
            nodes,
            edges,
        })
    }

    /// Connectivity of one fiber under consecutive moves and under all
    /// moves, sharing a single union-find pass.
    fn stats(&self, sum: &Weight, winning: bool, cap: usize) -> Result<(FiberStats, FiberStats)> {
        let mode = if winning { MoveMode::WinningRestricted } else { MoveMode::AllRootMoves };
        let Some(raw) = self.raw_fiber(sum, mode, cap)? else {
            let s = FiberStats {
                sum: sum.clone(),
                nodes: self.fiber_size(sum) as usize,
                components: 0,
                skipped: true,
                witness: None,
            };
            return Ok((s.clone(), s));
        };
        let n = raw.nodes.len();
        let blocks = self.blocks(&raw);
        let mut dsu = Dsu::new(n);
        let mut components = n;
        let mut adjacent = None;
        for (i, j) in self.pairs(mode) {
            if j > i + 1 && adjacent.is_none() {
                adjacent = Some(self.summarize(sum, &raw, &mut dsu));
            }
            if components <= 1 {
                break;
            }
            self.pair_edges(&raw, &blocks, (i, j), |a, b, _| {
                if dsu.union(a as usize, b as usize) {
                    components -= 1;
                }
                components > 1
            });
        }
        let all = self.summarize(sum, &raw, &mut dsu);
        Ok((adjacent.unwrap_or_else(|| all.clone()), all))
    }

    fn summarize(&self, sum: &Weight, raw: &RawFiber, dsu: &mut Dsu) -> FiberStats {
        let n = raw.nodes.len();
        let mut roots: Vec<usize> = (0..n).map(|k| dsu.find(k)).collect();
        let witness = roots.iter().position(|&r| r != roots[0]).map(|k| {
            let lambdas = self.space.lambdas();
            let tuple = |key: &Key| -> LabeledTuple {
                key.iter().zip(lambdas).map(|(&p, lam)| lam.points()[p as usize].clone()).collect()
            };
            (tuple(&raw.nodes[0]), tuple(&raw.nodes[k]))
        });
        roots.sort_unstable();
        roots.dedup();
        FiberStats {
            sum: sum.clone(),
            nodes: n,
            components: roots.len(),
            skipped: false,
            witness,
        }
    }

    /// Checks every fiber over Λ(P_1 + ⋯ + P_m) (winning sums only in the
    /// winning modes).
    pub fn check_connected(&self, mode: MoveMode, cap: usize) -> Result<ConnectivityReport> {
        let (adjacent, all) = self.check_connected_both(mode.winning_only(), cap)?;
        Ok(if mode.adjacent_only() { adjacent } else { all })
    }

    /// The reports for consecutive moves and for all moves together, at
    /// the cost of one.
    pub fn check_connected_both(&self, winning: bool, cap: usize) -> Result<(ConnectivityReport, ConnectivityReport)> {
        let rs = self.sum().root_system().clone();
        let sums: Vec<Weight> = self
            .sum()
            .lambda_points()?
            .iter()
            .filter(|s| !winning || is_winning(&rs, s))
            .cloned()
            .collect();
        let (adjacent, all): (Vec<_>, Vec<_>) = sums
            .par_iter()
            .map(|s| self.stats(s, winning, cap))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        let (ma, mb) = if winning {
            (MoveMode::AdjacentWinning, MoveMode::WinningRestricted)
        } else {
            (MoveMode::AdjacentOnly, MoveMode::AllRootMoves)
        };
        Ok((ConnectivityReport::from_fibers(ma, adjacent), ConnectivityReport::from_fibers(mb, all)))
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
        ra != rb
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberStats {
    pub sum: Weight,
    pub nodes: usize,
    pub components: usize,
    /// Over the node cap and not examined.
    pub skipped: bool,
    /// Two tuples in different components.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(LabeledTuple, LabeledTuple)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub mode: MoveMode,
    pub fibers: usize,
    pub checked: usize,
    pub skipped: usize,
    pub connected: usize,
    /// Sums whose fiber has no tuple at all.
    pub empty: usize,
    pub max_nodes: usize,
    pub per_fiber: Vec<FiberStats>,
}

impl ConnectivityReport {
    fn from_fibers(mode: MoveMode, per_fiber: Vec<FiberStats>) -> Self {
        let checked: Vec<&FiberStats> = per_fiber.iter().filter(|f| !f.skipped).collect();
        Self {
            mode,
            fibers: per_fiber.len(),
            checked: checked.len(),
            skipped: per_fiber.len() - checked.len(),
            connected: checked.iter().filter(|f| f.components == 1).count(),
            empty: checked.iter().filter(|f| f.nodes == 0).count(),
            max_nodes: checked.iter().map(|f| f.nodes).max().unwrap_or(0),
            per_fiber,
        }
    }

    /// Every examined fiber is nonempty and connected.
    pub fn ok(&self) -> bool {
        self.connected == self.checked
    }

    pub fn disconnected(&self) -> impl Iterator<Item = &FiberStats> {
        self.per_fiber.iter().filter(|f| !f.skipped && f.components != 1)
    }
}

pub fn fiber(sum: &Weight, polytopes: &[OrthogonalSet], mode: MoveMode) -> Result<FiberGraph> {
    FiberSpace::new(polytopes)?.fiber(sum, mode, DEFAULT_FIBER_CAP)
}

pub fn check_connected(polytopes: &[OrthogonalSet], mode: MoveMode) -> Result<ConnectivityReport> {
    FiberSpace::new(polytopes)?.check_connected(mode, DEFAULT_FIBER_CAP)
}

/// x·y − x'·y' for two unordered pairs with the same sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub sum: Weight,
    pub lhs: (Weight, Weight),
    pub rhs: (Weight, Weight),
}

/// Degree-two relations of the semigroup of P: within each fiber of Λ(2P),
/// all pairs of unordered pairs, or only the edges of a breadth-first
/// spanning tree of the root-move graph.
pub fn quadratic_relations(p: &OrthogonalSet, spanning_tree: bool) -> Result<Vec<Relation>> {
    let space = TupleSpace::new(&[p.clone(), p.clone()])?;
    let lam = p.lambda_points()?;
    let rs = p.root_system();
    let mut out = Vec::new();
    for s in space.sum().lambda_points()?.iter() {
        let mut pairs: Vec<(Weight, Weight)> = Vec::new();
        space.visit(s, |t| {
            if t[0] <= t[1] {
                pairs.push((t[0].clone(), t[1].clone()));
            }
            true
        });
        if pairs.len() < 2 {
            continue;
        }
        if !spanning_tree {
            for a in 0..pairs.len() {
                for b in a + 1..pairs.len() {
                    out.push(Relation {
                        sum: s.clone(),
                        lhs: pairs[a].clone(),
                        rhs: pairs[b].clone(),
                    });
                }
            }
            continue;
        }
        let index: HashMap<&(Weight, Weight), usize> =
            pairs.iter().enumerate().map(|(k, q)| (q, k)).collect();
        let mut seen = vec![false; pairs.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            let (x, y) = &pairs[u];
            for r in rs.roots() {
                let (a, b) = (x + &r.weight, y - &r.weight);
                if !lam.contains(&a) || !lam.contains(&b) {
                    continue;
                }
                let key = if a <= b { (a, b) } else { (b, a) };
                if let Some(&v) = index.get(&key) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                        out.push(Relation {
                            sum: s.clone(),
                            lhs: pairs[u].clone(),
                            rhs: pairs[v].clone(),
                        });
                    }
                }
            }
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::Internal(format!("degree-two fiber over {s} is disconnected")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StillWinningViolation {
    pub point: Weight,
    pub simple: usize,
    pub detail: String,
}

/// For winning x ∈ Λ(P) and simple α_i with ⟨x, α_i^∨⟩ ≥ 1, x − α_i lies in
/// Λ(P) and is winning. Returns the number of cases and the violations.
pub fn check_still_winning(p: &OrthogonalSet) -> Result<(usize, Vec<StillWinningViolation>)> {
    let rs = p.root_system();
    let mut checked = 0;
    let mut bad = Vec::new();
    for x in p.lambda_points()?.iter().filter(|x| is_winning(rs, x)) {
        for i in (0..rs.rank()).filter(|&i| x[i] >= 1) {
            checked += 1;
            let y = x - &rs.simple_root(i).weight;
            let detail = if !p.is_lambda_point(&y) {
                "x − α_i leaves Λ(P)"
            } else if !is_winning(rs, &y) {
                "x − α_i is not winning"
            } else {
                continue;
            };
            bad.push(StillWinningViolation {
                point: x.clone(),
                simple: i,
                detail: detail.into(),
            });
        }
    }
    Ok((checked, bad))
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
    fn root_move_examples() {
        let p = orbit(Family::A, 1, &[1]);
        let ps = [p.clone(), p.clone()];
        let t = [w(&[-1]), w(&[1])];
        let a = w(&[2]);
        assert_eq!(root_move(&ps, &t, 0, 1, &a).unwrap(), Some(vec![w(&[1]), w(&[-1])]));
        assert_eq!(root_move(&ps, &t, 0, 1, &a).unwrap(), root_move(&ps, &t, 1, 0, &-&a).unwrap());
        assert_eq!(root_move(&ps, &t, 1, 0, &a).unwrap(), None);
        assert!(root_move(&ps, &t, 0, 2, &a).is_err());
    }

    #[test]
    fn simple_move_examples() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        assert!(simple_moves(&rs, &[w(&[1, 1]), w(&[0, 2])]).is_empty());
        let mv = simple_moves(&rs, &[w(&[-1, 2]), w(&[1, 1])]);
        assert_eq!(mv, vec![SimpleMove { to: 0, from: 1, simple: 0 }]);
        let hex = orbit(Family::A, 2, &[1, 1]);
        let t = mv[0].apply(&rs, &[w(&[-1, 2]), w(&[1, 1])]);
        assert_eq!(t, vec![w(&[1, 1]), w(&[-1, 2])]);
        assert!(t.iter().all(|x| hex.is_lambda_point(x)));
    }

    #[test]
    fn fiber_examples() {
        let p = orbit(Family::A, 1, &[1]);
        let f = fiber(&w(&[0]), &[p.clone(), p.clone()], MoveMode::AllRootMoves).unwrap();
        assert_eq!((f.nodes.len(), f.edges.len()), (2, 1));
        assert!(f.is_connected());
        let f = fiber(&w(&[2]), &[p.clone(), p.clone()], MoveMode::AllRootMoves).unwrap();
        assert_eq!((f.nodes.len(), f.edges.len()), (1, 0));
        assert!(fiber(&w(&[4]), &[p.clone(), p], MoveMode::AllRootMoves).is_err());

        let hex = orbit(Family::A, 2, &[1, 1]);
        let ps = [hex.clone(), hex.clone()];
        let f = fiber(&w(&[1, 1]), &ps, MoveMode::AllRootMoves).unwrap();
        let lam = hex.lambda_points().unwrap();
        let brute = lam
            .iter()
            .flat_map(|a| lam.iter().map(move |b| (a, b)))
            .filter(|(a, b)| &(*a + *b) == &w(&[1, 1]))
            .count();
        assert_eq!(f.nodes.len(), brute);
        assert!(f.is_connected());
        // swapping the components is realised by moves
        let t = f.nodes[0].clone();
        let swapped = vec![t[1].clone(), t[0].clone()];
        let (a, b) = (f.node_index(&t).unwrap(), f.node_index(&swapped).unwrap());
        assert!(f.path(a, b).is_some());
    }

    #[test]
    fn connectivity_examples() {
        let p = orbit(Family::A, 1, &[1]);
        assert!(check_connected(&[p.clone(), p], MoveMode::AllRootMoves).unwrap().ok());
        let hex = orbit(Family::A, 2, &[1, 1]);
        let r = check_connected(&[hex.clone(), hex.clone(), hex.clone()], MoveMode::AdjacentOnly).unwrap();
        assert!(r.ok());
        assert_eq!(r.skipped, 0);
        let mixed = [hex, orbit(Family::A, 2, &[2, 1])];
        assert!(check_connected(&mixed, MoveMode::AllRootMoves).unwrap().ok());
        assert!(check_connected(&mixed, MoveMode::WinningRestricted).unwrap().ok());
    }

    #[test]
    fn relation_examples() {
        let p = orbit(Family::A, 1, &[1]);
        assert!(quadratic_relations(&p, false).unwrap().is_empty());
        let hex = orbit(Family::A, 2, &[1, 1]);
        let rel = quadratic_relations(&hex, false).unwrap();
        let at_zero: Vec<_> = rel.iter().filter(|r| r.sum.is_zero()).collect();
        assert_eq!(at_zero.len(), 6);
        for v in hex.vertices() {
            assert!(rel.iter().all(|r| r.sum != v.scale(2)));
        }
        let tree = quadratic_relations(&hex, true).unwrap();
        assert_eq!(tree.iter().filter(|r| r.sum.is_zero()).count(), 3);
    }

    #[test]
    fn still_winning_examples() {
        for (f, n, l) in [(Family::A, 2, vec![2, 1]), (Family::B, 2, vec![1, 2]), (Family::G, 2, vec![1, 1])] {
            let (checked, bad) = check_still_winning(&orbit(f, n, &l)).unwrap();
            assert!(checked > 0);
            assert!(bad.is_empty());
        }
    }
}
