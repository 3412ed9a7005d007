//! The acceptance suite as library code, shared by the `acceptance` test
//! target and the `verify-all` command.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagsplit::{apply_word, reproduce_table, ScaledPoint, DEFAULT_SYSTEMS};
use crate::error::{Error, Result};
use crate::instances::{random_instance, InstanceSpec};
use crate::lattice::Weight;
use crate::normality::{
    brute_force_decompose, check_dominant_covers, check_minimal_steps, Decomposer,
};
use crate::numbers_game::{
    exhaustive_outcomes, is_winning, play, trial_seed, LeafKind, Mode, Strategy,
};
use crate::polytope::OrthogonalSet;
use crate::quadraticity::{check_still_winning, FiberSpace, DEFAULT_FIBER_CAP};
use crate::root_system::{Family, RootSystem};
use crate::tuples::TupleSpace;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Systems of the random instance family.
pub const INSTANCE_SYSTEMS: [(Family, usize); 5] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::B, 2),
    (Family::G, 2),
];

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random polytopes per system.
    pub per_system: usize,
    pub max_orbits: usize,
    pub max_coord: i64,
    /// Random cutoff plays per instance polytope.
    pub trajectories: usize,
    /// Fibers larger than this are skipped by the connectivity check.
    pub fiber_cap: usize,
    /// Fibers larger than this are skipped by the oracle comparison.
    pub oracle_fiber_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            per_system: 25,
            max_orbits: 3,
            max_coord: 3,
            trajectories: 1000,
            fiber_cap: DEFAULT_FIBER_CAP,
            oracle_fiber_cap: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub violations: u64,
    pub detail: String,
    /// Up to a handful of concrete failures.
    pub examples: Vec<String>,
    pub seconds: f64,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {} {}: {} checked, {} violations; {} ({:.1}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.violations,
            self.detail,
            self.seconds
        )
    }
}

const MAX_EXAMPLES: usize = 5;

struct Tally {
    checked: u64,
    violations: u64,
    examples: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            checked: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.violations += 1;
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(what);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.violations += other.violations;
        for e in other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(e);
            }
        }
    }

    fn finish(self, id: u8, name: &'static str, detail: String, start: Instant) -> CriterionResult {
        CriterionResult {
            id,
            name,
            passed: self.violations == 0 && self.checked > 0,
            checked: self.checked,
            violations: self.violations,
            detail,
            examples: self.examples,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

/// A tuple of polytopes from the instance family.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub polytopes: Vec<OrthogonalSet>,
    /// All entries are the same polytope.
    pub equal: bool,
}

impl Instance {
    pub fn system(&self) -> &Arc<RootSystem> {
        self.polytopes[0].root_system()
    }
}

/// Random special ample polytopes per system, and the tuples built from
/// them: for each polytope P_k the equal tuples (P_k, P_k) and
/// (P_k, P_k, P_k), and the mixed tuples (P_k, P_{k+1}) and
/// (P_k, P_{k+1}, P_{k+2}) (indices cyclic within the system).
#[derive(Clone, Debug)]
pub struct InstanceFamily {
    pub polytopes: Vec<(String, InstanceSpec, OrthogonalSet)>,
    pub tuples: Vec<Instance>,
}

pub fn instance_family(cfg: &VerifyConfig) -> Result<InstanceFamily> {
    let mut polytopes = Vec::new();
    let mut tuples = Vec::new();
    for (s, &(f, n)) in INSTANCE_SYSTEMS.iter().enumerate() {
        let rs = Arc::new(RootSystem::new(f, n)?);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, s));
        let mut list = Vec::new();
        for k in 0..cfg.per_system {
            let spec = random_instance(&rs, &mut rng, cfg.max_orbits, cfg.max_coord);
            let p = spec.build(&rs)?;
            if !p.is_special_ample() {
                return Err(Error::Internal(format!("instance {}#{k} is not special ample", rs.name())));
            }
            list.push((format!("{}#{k}", rs.name()), spec, p));
        }
        let len = list.len();
        for k in 0..len {
            let (label, _, p) = &list[k];
            for m in [2, 3] {
                tuples.push(Instance {
                    label: format!("{label}x{m}"),
                    polytopes: vec![p.clone(); m],
                    equal: true,
                });
            }
            if len > 1 {
                let q = list[(k + 1) % len].2.clone();
                let r = list[(k + 2) % len].2.clone();
                tuples.push(Instance {
                    label: format!("{label}+{}", (k + 1) % len),
                    polytopes: vec![p.clone(), q.clone()],
                    equal: false,
                });
                tuples.push(Instance {
                    label: format!("{label}+{}+{}", (k + 1) % len, (k + 2) % len),
                    polytopes: vec![p.clone(), q, r],
                    equal: false,
                });
            }
        }
        polytopes.extend(list);
    }
    Ok(InstanceFamily { polytopes, tuples })
}

/// 1: split verdicts for q = 2..7 on the default grid.
pub fn diagonal_split_table() -> Result<CriterionResult> {
    let start = Instant::now();
    let qs: Vec<i64> = (2..=7).collect();
    let rows = reproduce_table(&DEFAULT_SYSTEMS, &qs)?;
    let mut t = Tally::new();
    for r in &rows {
        t.check(r.matches, || {
            format!("{} q={}: split={} expected={}", r.system, r.q, r.split, r.expected)
        });
    }
    let detail = format!("{} (system, q) cells", rows.len());
    Ok(t.finish(1, "diagonal-split table", detail, start))
}

/// One evaluation of s_{a_1}⋯s_{a_k} z̃ for a witness fixture.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessFixture {
    pub label: String,
    pub system: (Family, usize),
    pub z: ScaledPoint,
    /// 0-based generators, leftmost applied last.
    pub word: Vec<usize>,
    pub coweight: usize,
    pub expect: FixtureExpectation,
}

#[derive(Clone, Debug, Serialize)]
pub enum FixtureExpectation {
    Exactly(i64, i64),
    AbsExactly(i64, i64),
    AbsAtLeastOne,
    AbsAboveOne,
    /// The whole transformed vector, as numerators over q.
    Vector(Vec<i64>),
}

fn fixture(
    label: String,
    system: (Family, usize),
    numerators: Vec<i64>,
    q: i64,
    word: &[usize],
    coweight: usize,
    expect: FixtureExpectation,
) -> WitnessFixture {
    WitnessFixture {
        label,
        system,
        z: ScaledPoint::new(numerators, q),
        word: word.iter().map(|a| a - 1).collect(),
        coweight: coweight - 1,
        expect,
    }
}

/// Stated pairings for the non-splitting witnesses. Words and coweight
/// indices are written 1-based here, as in Bourbaki labelling.
pub fn witness_fixtures() -> Vec<WitnessFixture> {
    use FixtureExpectation::*;
    let a3 = (Family::A, 3);
    let a4 = (Family::A, 4);
    let d4 = (Family::D, 4);
    let b3 = (Family::B, 3);
    let c3 = (Family::C, 3);
    let g2 = (Family::G, 2);
    let b2 = (Family::B, 2);
    let mut out = vec![fixture("A3 q=2, z = (α1+α3)/2".into(), a3, vec![1, 0, 1], 2, &[2], 2, Exactly(1, 1))];
    for q in [3i64, 5, 7] {
        let p = (q - 1) / 2;
        // A4: z = ((p+1)α1 + (p+1)α3 + α4)/q minus δ1 α1 + δ3 α3 + δ4 α4
        for d in 0..8 {
            let (d1, d3, d4) = (d & 1, (d >> 1) & 1, (d >> 2) & 1);
            let z = vec![p + 1 - d1 * q, 0, p + 1 - d3 * q, 1 - d4 * q];
            let label = format!("A4 q={q} δ=({d1},{d3},{d4})");
            match (d1, d3, d4) {
                (0, 0, _) => out.push(fixture(label, a4, z, q, &[2], 2, Exactly(q + 1, q))),
                (1, 1, 0) => {
                    out.push(fixture(format!("{label} s3"), a4, z.clone(), q, &[3], 1, Vector(vec![-p, 0, p + 1, 1])));
                    out.push(fixture(label, a4, z, q, &[2, 1, 3], 2, AbsExactly(1, 1)));
                }
                (1, 1, 1) => {
                    out.push(fixture(format!("{label} s4"), a4, z.clone(), q, &[4], 1, Vector(vec![-p, 0, -p, p])));
                    out.push(fixture(format!("{label} s3s4"), a4, z.clone(), q, &[3, 4], 1, Vector(vec![-p, 0, q - 1, p])));
                    out.push(fixture(
                        format!("{label} s2s1s3s4"),
                        a4,
                        z.clone(),
                        q,
                        &[2, 1, 3, 4],
                        1,
                        Vector(vec![p, p + q - 1, q - 1, p]),
                    ));
                    out.push(fixture(label, a4, z, q, &[2, 1, 3, 4], 2, AbsAtLeastOne));
                }
                _ => out.push(fixture(label, a4, z, q, &[2, 1], 2, AbsExactly(1, 1))),
            }
        }
        // D4: z = p(α1 + α3 + α4)/q
        for (d, word) in [((0, 0, 0), vec![2]), ((1, 1, 1), vec![2]), ((0, 0, 1), vec![2, 4])] {
            let z = vec![p - d.0 * q, 0, p - d.1 * q, p - d.2 * q];
            let expect = if d == (0, 0, 1) { AbsAboveOne } else { AbsAtLeastOne };
            out.push(fixture(format!("D4 q={q} δ={d:?}"), d4, z, q, &word, 2, expect));
        }
        // B3 and C3: z = p(α1 + α3)/q and three variants
        for (sys, word, cw) in [(b3, vec![3, 2], 3), (c3, vec![2], 2)] {
            let name = if sys == b3 { "B3" } else { "C3" };
            let base = ScaledPoint::new(vec![p, 0, p], q);
            let rs = RootSystem::new(sys.0, sys.1).expect("rank 3 systems build");
            let variants = [
                ("z", base.numerators.clone()),
                ("z-(α1+α3)", vec![p - q, 0, p - q]),
                ("s1(z-α1)", apply_word(&rs, &ScaledPoint::new(vec![p - q, 0, p], q), &[0]).unwrap().numerators),
                ("s3(z-α3)", apply_word(&rs, &ScaledPoint::new(vec![p, 0, p - q], q), &[2]).unwrap().numerators),
            ];
            for (v, z) in variants {
                out.push(fixture(format!("{name} q={q} {v}"), sys, z, q, &word, cw, AbsAtLeastOne));
            }
        }
    }
    for q in 2i64..=7 {
        let p = q / 2;
        let rs = RootSystem::new(Family::G, 2).expect("G2 builds");
        out.push(fixture(format!("G2 q={q} z"), g2, vec![0, p], q, &[1], 1, AbsAtLeastOne));
        out.push(fixture(format!("G2 q={q} z exact"), g2, vec![0, p], q, &[1], 1, Exactly(3 * p, q)));
        let v = apply_word(&rs, &ScaledPoint::new(vec![0, p - q], q), &[1]).unwrap().numerators;
        out.push(fixture(format!("G2 q={q} s2(z-α2)"), g2, v, q, &[1], 1, AbsAtLeastOne));
    }
    for q in [2i64, 4, 6] {
        out.push(fixture(format!("B2 q={q} z = α1/2"), b2, vec![q / 2, 0], q, &[2], 2, AbsAtLeastOne));
    }
    out
}

/// Evaluates a fixture; returns (ok, observed value or vector).
pub fn check_fixture(f: &WitnessFixture) -> Result<(bool, String)> {
    let rs = RootSystem::new(f.system.0, f.system.1)?;
    let u = apply_word(&rs, &f.z, &f.word)?;
    let q = f.z.denominator;
    let val = Ratio::new(u.numerators[f.coweight], q);
    let abs = if val < Ratio::from_integer(0) { -val } else { val };
    let one = Ratio::from_integer(1);
    let ok = match &f.expect {
        FixtureExpectation::Exactly(a, b) => val == Ratio::new(*a, *b),
        FixtureExpectation::AbsExactly(a, b) => abs == Ratio::new(*a, *b),
        FixtureExpectation::AbsAtLeastOne => abs >= one,
        FixtureExpectation::AbsAboveOne => abs > one,
        FixtureExpectation::Vector(v) => &u.numerators == v,
    };
    let observed = match &f.expect {
        FixtureExpectation::Vector(_) => u.to_string(),
        _ => val.to_string(),
    };
    Ok((ok, observed))
}

/// 2: witness pairings evaluated exactly.
pub fn witness_pairings() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    let fixtures = witness_fixtures();
    for f in &fixtures {
        let (ok, observed) = check_fixture(f)?;
        t.check(ok, || format!("{}: got {observed}, expected {:?}", f.label, f.expect));
    }
    let detail = format!("{} fixtures", fixtures.len());
    Ok(t.finish(2, "witness pairings", detail, start))
}

/// 3: every lattice point of every tuple sum is decomposed and validates.
pub fn normality(fam: &InstanceFamily) -> Result<CriterionResult> {
    let start = Instant::now();
    let tallies = fam
        .tuples
        .iter()
        .map(|inst| -> Result<Tally> {
            let dec = Decomposer::new(&inst.polytopes)?;
            let targets = dec.sum().lambda_points()?;
            let parts: Vec<Tally> = targets
                .points()
                .par_iter()
                .map(|z| {
                    let mut t = Tally::new();
                    match dec.decompose(z) {
                        Ok(d) => t.check(d.is_valid(&inst.polytopes), || format!("{}: {z} invalid", inst.label)),
                        Err(e) => {
                            t.checked += 1;
                            t.fail(format!("{}: {z}: {e}", inst.label));
                        }
                    }
                    t
                })
                .collect();
            let mut t = Tally::new();
            for p in parts {
                t.merge(p);
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    for x in tallies {
        t.merge(x);
    }
    let detail = format!("{} tuples", fam.tuples.len());
    Ok(t.finish(3, "normality", detail, start))
}

/// All weights congruent to the vertices in the bounding box of `p`
/// widened by `pad`.
fn box_targets(p: &OrthogonalSet, pad: i64) -> Vec<Weight> {
    let rs = p.root_system();
    let n = rs.rank();
    let lo: Vec<i64> = (0..n).map(|i| p.vertices().iter().map(|v| v[i]).min().unwrap() - pad).collect();
    let hi: Vec<i64> = (0..n).map(|i| p.vertices().iter().map(|v| v[i]).max().unwrap() + pad).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    'outer: loop {
        let w = Weight::from_slice(&x);
        if p.same_coset(&w) {
            out.push(w);
        }
        for k in 0..n {
            if x[k] < hi[k] {
                x[k] += 1;
                continue 'outer;
            }
            x[k] = lo[k];
        }
        return out;
    }
}

/// 4: existence from the constructive algorithm agrees with exhaustive
/// search on A2 and B2 targets with at most `oracle_fiber_cap` tuples.
pub fn oracle_equivalence(fam: &InstanceFamily, cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut skipped = 0u64;
    for inst in &fam.tuples {
        let name = inst.system().name();
        if name != "A2" && name != "B2" {
            continue;
        }
        let dec = Decomposer::new(&inst.polytopes)?;
        let space = TupleSpace::new(&inst.polytopes)?;
        let results: Vec<(Option<bool>, String)> = box_targets(dec.sum(), 1)
            .par_iter()
            .map(|z| {
                let Ok(fiber) = space.collect(z, cfg.oracle_fiber_cap) else {
                    return (None, String::new());
                };
                let ours = match dec.decompose(z) {
                    Ok(_) => Ok(true),
                    Err(Error::NotInPolytope(_)) => Ok(false),
                    Err(e) => Err(e),
                };
                let brute = brute_force_decompose(z, &inst.polytopes).map(|d| d.is_some());
                let agree = matches!((&ours, &brute), (Ok(a), Ok(b)) if *a == *b && *b == !fiber.is_empty());
                (Some(agree), format!("{}: {z}: constructive {ours:?}, exhaustive {brute:?}", inst.label))
            })
            .collect();
        for (r, msg) in results {
            match r {
                None => skipped += 1,
                Some(ok) => t.check(ok, || msg),
            }
        }
    }
    let detail = format!("{skipped} targets over the fiber cap skipped");
    Ok(t.finish(4, "oracle equivalence", detail, start))
}

/// 5: fiber connectivity in the three move modes.
pub fn quadraticity(fam: &InstanceFamily, cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut skipped = 0;
    let mut adjacent_winning = (0usize, 0usize);
    let mut empty = 0;
    for inst in &fam.tuples {
        let fs = FiberSpace::new(&inst.polytopes)?;
        for winning in [false, true] {
            let (adjacent, all) = fs.check_connected_both(winning, cfg.fiber_cap)?;
            skipped += all.skipped;
            let mut asserted = vec![all];
            if inst.equal && !winning {
                asserted.push(adjacent);
            } else if inst.equal {
                // recorded only
                adjacent_winning.0 += adjacent.checked;
                adjacent_winning.1 += adjacent.checked - adjacent.connected;
            }
            for r in asserted {
                let mode = r.mode;
                empty += r.empty;
                for f in r.per_fiber.iter().filter(|f| !f.skipped && f.nodes > 0) {
                    t.check(f.components == 1, || {
                        format!("{} {mode} sum {}: {} nodes, {} components", inst.label, f.sum, f.nodes, f.components)
                    });
                }
            }
        }
    }
    let detail = format!(
        "{skipped} fibers over the cap skipped, {empty} empty; adjacent+winning: {} of {} fibers disconnected (not asserted)",
        adjacent_winning.1, adjacent_winning.0
    );
    Ok(t.finish(5, "quadraticity", detail, start))
}

/// 6: closure under subtracting positively pairing roots, and the
/// still-winning step, on the instance polytopes and their doubles.
pub fn closure_and_still_winning(fam: &InstanceFamily) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut subjects = Vec::new();
    for (label, _, p) in &fam.polytopes {
        subjects.push((label.clone(), p.clone()));
        subjects.push((format!("2·{label}"), p.dilate(2)?));
    }
    let parts = subjects
        .par_iter()
        .map(|(label, p)| -> Result<Tally> {
            let mut t = Tally::new();
            let rs = p.root_system();
            for y in p.lambda_points()?.iter() {
                for beta in rs.roots() {
                    if rs.pair(y, beta) >= 1 {
                        let z = y - &beta.weight;
                        t.check(p.is_lambda_point(&z), || format!("{label}: {y} − {} leaves Λ", beta.root));
                    }
                }
            }
            let (checked, bad) = check_still_winning(p)?;
            t.checked += checked as u64;
            for b in bad {
                t.fail(format!("{label}: {} α{}: {}", b.point, b.simple + 1, b.detail));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    for p in parts {
        t.merge(p);
    }
    let detail = format!("{} polytopes", subjects.len());
    Ok(t.finish(6, "closure and still-winning", detail, start))
}

/// 7: numbers game over [−1, 2]ⁿ in A2, A3, B2, and membership constancy
/// along random cutoff plays on the instance polytopes.
pub fn numbers_game(fam: &InstanceFamily, cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut configs = 0u64;
    for (f, n) in [(Family::A, 2), (Family::A, 3), (Family::B, 2)] {
        let rs = RootSystem::new(f, n)?;
        let limit = rs.group_order();
        let mut x = vec![-1i64; n];
        'outer: loop {
            let v = Weight::from_slice(&x);
            configs += 1;
            let plain = exhaustive_outcomes(&rs, &v, Mode::Plain, limit)?;
            t.check(plain.len() == 1 && plain.iter().all(|l| l.0 == LeafKind::Won), || {
                format!("{} {v}: plain leaves {plain:?}", rs.name())
            });
            let cut = exhaustive_outcomes(&rs, &v, Mode::Cutoff, limit)?;
            let won: BTreeSet<_> = cut.iter().filter(|l| l.0 == LeafKind::Won).collect();
            let any_lost = cut.iter().any(|l| l.0 != LeafKind::Won);
            // a winning start wins along every play, with one final state
            // and move count; a losing one never wins
            let consistent = if is_winning(&rs, &v) {
                won.len() == 1 && !any_lost
            } else {
                won.is_empty()
            };
            t.check(consistent, || format!("{} {v}: cutoff leaves {cut:?}", rs.name()));
            for k in 0..n {
                if x[k] < 2 {
                    x[k] += 1;
                    continue 'outer;
                }
                x[k] = -1;
            }
            break;
        }
    }
    let mut trajectories = 0u64;
    for (idx, (label, _, p)) in fam.polytopes.iter().enumerate() {
        let rs = p.root_system();
        let n = rs.rank();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed ^ 0xC0FFEE, idx));
        let mu = p.dominant_vertex();
        let spread = mu.iter().map(|c| c.abs()).max().unwrap_or(0) + 2;
        let mut made = 0;
        let mut attempts = 0;
        while made < cfg.trajectories && attempts < 50 * cfg.trajectories {
            attempts += 1;
            // a congruent start with all amplitudes ≥ −1
            let mut x = mu.clone();
            for i in 0..n {
                let c = rng.gen_range(-spread..=spread);
                x = &x - &rs.simple_root(i).weight.scale(c);
            }
            if x.iter().any(|&c| c < -1) {
                continue;
            }
            made += 1;
            let out = play(rs, &x, Mode::Cutoff, Strategy::Random(rng.gen()), 10_000)?;
            let inside = p.is_lambda_point(&x);
            let mut u = x.clone();
            let mut ok = true;
            for &i in out.firing_sequence() {
                u = rs.reflect(i, &u);
                ok &= p.is_lambda_point(&u) == inside;
            }
            t.check(ok, || format!("{label}: membership changes along play from {x}"));
        }
        trajectories += made as u64;
    }
    let detail = format!("{configs} configurations, {trajectories} trajectories");
    Ok(t.finish(7, "numbers game", detail, start))
}

/// 8: dominant covers differ by positive roots; minimum-length steps win
/// and land between the endpoints.
pub fn dominant_order(fam: &InstanceFamily) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::new();
    for (label, _, p) in &fam.polytopes {
        let (covers, bad) = check_dominant_covers(p)?;
        t.checked += covers as u64;
        for b in bad {
            t.fail(format!("{label}: {} ⋖ {}: {}", b.lower, b.upper, b.detail));
        }
        let (steps, bad) = check_minimal_steps(p)?;
        t.checked += steps as u64;
        for b in bad {
            t.fail(format!("{label}: {} ≺ {}: {}", b.lower, b.upper, b.detail));
        }
    }
    let detail = format!("{} polytopes", fam.polytopes.len());
    Ok(t.finish(8, "dominant order", detail, start))
}

/// Runs every criterion in order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CriterionResult>> {
    let fam = instance_family(cfg)?;
    Ok(vec![
        diagonal_split_table()?,
        witness_pairings()?,
        normality(&fam)?,
        oracle_equivalence(&fam, cfg)?,
        quadraticity(&fam, cfg)?,
        closure_and_still_winning(&fam)?,
        numbers_game(&fam, cfg)?,
        dominant_order(&fam)?,
    ])
}
