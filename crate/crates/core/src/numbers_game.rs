//! Mozes's numbers game on a Dynkin diagram, the variant with a cutoff at
//! amplitude −1, and the winning criterion for the cutoff game.
//!
//! A configuration is identified with a weight through ι, so firing vertex
//! `i` is the simple reflection s_i and adds ι(α_i)·(−v_i) to the
//! configuration.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::root_system::RootSystem;

pub type Configuration = Weight;

/// Plain-mode divergence guard.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Stop (and lose) as soon as an amplitude drops below −1.
    Cutoff,
    /// The usual game: any negative vertex may fire.
    Plain,
    /// Keep playing past −1, but only ever fire vertices of amplitude −1.
    FireOnlyMinusOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    MinIndex,
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Won {
        #[serde(rename = "final")]
        final_config: Configuration,
        moves: usize,
        firing_sequence: Vec<usize>,
    },
    /// Cutoff mode reached a forbidden configuration.
    Lost {
        #[serde(rename = "final")]
        final_config: Configuration,
        moves: usize,
        firing_sequence: Vec<usize>,
    },
    /// Fire-only-(−1) mode: negative amplitudes remain but none equals −1.
    Stalled {
        #[serde(rename = "final")]
        final_config: Configuration,
        moves: usize,
        firing_sequence: Vec<usize>,
    },
    Diverged {
        #[serde(rename = "final")]
        final_config: Configuration,
        moves: usize,
        firing_sequence: Vec<usize>,
    },
}

impl Outcome {
    pub fn final_config(&self) -> &Configuration {
        match self {
            Outcome::Won { final_config, .. }
            | Outcome::Lost { final_config, .. }
            | Outcome::Stalled { final_config, .. }
            | Outcome::Diverged { final_config, .. } => final_config,
        }
    }

    pub fn moves(&self) -> usize {
        match self {
            Outcome::Won { moves, .. }
            | Outcome::Lost { moves, .. }
            | Outcome::Stalled { moves, .. }
            | Outcome::Diverged { moves, .. } => *moves,
        }
    }

    pub fn firing_sequence(&self) -> &[usize] {
        match self {
            Outcome::Won {
                firing_sequence, ..
            }
            | Outcome::Lost {
                firing_sequence, ..
            }
            | Outcome::Stalled {
                firing_sequence, ..
            }
            | Outcome::Diverged {
                firing_sequence, ..
            } => firing_sequence,
        }
    }

    pub fn is_won(&self) -> bool {
        matches!(self, Outcome::Won { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::Won { .. } => "won",
            Outcome::Lost { .. } => "lost",
            Outcome::Stalled { .. } => "stalled",
            Outcome::Diverged { .. } => "diverged",
        }
    }
}

/// All amplitudes are at least −1.
pub fn is_allowed(v: &Configuration) -> bool {
    v.iter().all(|&a| a >= -1)
}

/// All amplitudes are nonnegative.
pub fn is_terminal(v: &Configuration) -> bool {
    v.is_dominant()
}

/// Fire vertex `i`: amplitude j becomes v_j − c_ij v_i.
pub fn fire(rs: &RootSystem, v: &Configuration, i: usize) -> Result<Configuration> {
    if v.rank() != rs.rank() {
        return Err(Error::Dimension {
            expected: rs.rank(),
            got: v.rank(),
        });
    }
    if i >= rs.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: rs.rank(),
        });
    }
    if v[i] >= 0 {
        return Err(Error::NotFireable {
            vertex: i,
            amplitude: v[i],
        });
    }
    Ok(rs.reflect(i, v))
}

/// Winning criterion for the cutoff game: ⟨x, β^∨⟩ ≥ −1 for every positive
/// root β. In configuration terms this is the dot product of v with the
/// coroot coordinates of β.
pub fn is_winning(rs: &RootSystem, v: &Configuration) -> bool {
    rs.positive_roots().all(|beta| rs.pair(v, beta) >= -1)
}

fn fireable(mode: Mode, v: &Configuration) -> impl Iterator<Item = usize> + '_ {
    v.iter().enumerate().filter_map(move |(i, &a)| {
        let ok = match mode {
            Mode::Cutoff | Mode::Plain => a < 0,
            Mode::FireOnlyMinusOne => a == -1,
        };
        ok.then_some(i)
    })
}

/// Play with an arbitrary vertex chooser; `choose` receives the list of
/// fireable vertices (never empty) and returns a position in it.
pub fn play_with(
    rs: &RootSystem,
    v: &Configuration,
    mode: Mode,
    max_steps: usize,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<Outcome> {
    if max_steps == 0 {
        return Err(Error::NonPositiveSteps);
    }
    if v.rank() != rs.rank() {
        return Err(Error::Dimension {
            expected: rs.rank(),
            got: v.rank(),
        });
    }
    if mode == Mode::Cutoff && !is_allowed(v) {
        return Err(Error::Forbidden(v.to_string()));
    }
    let mut cur = v.clone();
    let mut seq = Vec::new();
    let mut options = Vec::with_capacity(rs.rank());
    loop {
        if is_terminal(&cur) {
            return Ok(Outcome::Won {
                moves: seq.len(),
                final_config: cur,
                firing_sequence: seq,
            });
        }
        options.clear();
        options.extend(fireable(mode, &cur));
        if options.is_empty() {
            return Ok(Outcome::Stalled {
                moves: seq.len(),
                final_config: cur,
                firing_sequence: seq,
            });
        }
        if seq.len() >= max_steps {
            return Ok(Outcome::Diverged {
                moves: seq.len(),
                final_config: cur,
                firing_sequence: seq,
            });
        }
        let i = options[choose(&options)];
        cur = rs.reflect(i, &cur);
        seq.push(i);
        if mode == Mode::Cutoff && !is_allowed(&cur) {
            return Ok(Outcome::Lost {
                moves: seq.len(),
                final_config: cur,
                firing_sequence: seq,
            });
        }
    }
}

pub fn play(
    rs: &RootSystem,
    v: &Configuration,
    mode: Mode,
    strategy: Strategy,
    max_steps: usize,
) -> Result<Outcome> {
    match strategy {
        Strategy::MinIndex => play_with(rs, v, mode, max_steps, |_| 0),
        Strategy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            play_with(rs, v, mode, max_steps, |opts| rng.gen_range(0..opts.len()))
        }
    }
}

/// Result of the cutoff game under the min-index strategy, if it is won.
pub fn cutoff_result(rs: &RootSystem, x: &Weight) -> Option<Weight> {
    if !is_allowed(x) {
        return None;
    }
    match play(rs, x, Mode::Cutoff, Strategy::MinIndex, DEFAULT_MAX_STEPS) {
        Ok(Outcome::Won { final_config, .. }) => Some(final_config),
        _ => None,
    }
}

/// Seed of the `k`-th trial; trials are independent of scheduling.
pub fn trial_seed(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub trials: usize,
    pub won: usize,
    pub lost: usize,
    pub other: usize,
    pub agree: bool,
    #[serde(rename = "final")]
    pub final_config: Option<Configuration>,
    pub moves: Option<usize>,
    /// Two firing sequences whose results disagree.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

/// Play `trials` random strategies and compare every terminating run. In
/// cutoff mode a mixture of won and lost runs also counts as disagreement.
pub fn verify_strong_convergence(
    rs: &RootSystem,
    v: &Configuration,
    mode: Mode,
    trials: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|k| {
            play(
                rs,
                v,
                mode,
                Strategy::Random(trial_seed(seed, k)),
                DEFAULT_MAX_STEPS,
            )
        })
        .collect::<Result<_>>()?;
    let mut report = ConvergenceReport {
        trials,
        won: 0,
        lost: 0,
        other: 0,
        agree: true,
        final_config: None,
        moves: None,
        counterexample: None,
    };
    let mut first_won: Option<&Outcome> = None;
    let mut first_lost: Option<&Outcome> = None;
    for o in &outcomes {
        match o {
            Outcome::Won { .. } => {
                report.won += 1;
                match first_won {
                    None => first_won = Some(o),
                    Some(f) => {
                        if report.agree
                            && (f.final_config() != o.final_config() || f.moves() != o.moves())
                        {
                            report.agree = false;
                            report.counterexample = Some((
                                f.firing_sequence().to_vec(),
                                o.firing_sequence().to_vec(),
                            ));
                        }
                    }
                }
            }
            Outcome::Lost { .. } => {
                report.lost += 1;
                first_lost.get_or_insert(o);
            }
            _ => report.other += 1,
        }
    }
    if let (Some(w), Some(l)) = (first_won, first_lost) {
        if report.agree {
            report.agree = false;
            report.counterexample = Some((
                w.firing_sequence().to_vec(),
                l.firing_sequence().to_vec(),
            ));
        }
    }
    if let Some(f) = first_won {
        report.final_config = Some(f.final_config().clone());
        report.moves = Some(f.moves());
    }
    Ok(report)
}

/// Kind of a leaf in the full play tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Won,
    Lost,
    Stalled,
}

/// Every distinct (leaf kind, final configuration, move count) over all
/// possible plays from `v`. Memoised on configurations; `depth_limit` bounds
/// the length of any play.
pub fn exhaustive_outcomes(
    rs: &RootSystem,
    v: &Configuration,
    mode: Mode,
    depth_limit: usize,
) -> Result<BTreeSet<(LeafKind, Configuration, usize)>> {
    type Leaves = BTreeSet<(LeafKind, Configuration, usize)>;

    fn go(
        rs: &RootSystem,
        v: &Configuration,
        mode: Mode,
        depth: usize,
        limit: usize,
        memo: &mut HashMap<Configuration, Leaves>,
    ) -> Result<Leaves> {
        if let Some(s) = memo.get(v) {
            return Ok(s.clone());
        }
        if depth > limit {
            return Err(Error::Internal(format!(
                "play from {v} exceeds {limit} moves"
            )));
        }
        let mut out = Leaves::new();
        if is_terminal(v) {
            out.insert((LeafKind::Won, v.clone(), 0));
        } else if mode == Mode::Cutoff && !is_allowed(v) {
            out.insert((LeafKind::Lost, v.clone(), 0));
        } else {
            let options: Vec<usize> = fireable(mode, v).collect();
            if options.is_empty() {
                out.insert((LeafKind::Stalled, v.clone(), 0));
            }
            for i in options {
                let next = rs.reflect(i, v);
                for (k, f, m) in go(rs, &next, mode, depth + 1, limit, memo)? {
                    out.insert((k, f, m + 1));
                }
            }
        }
        memo.insert(v.clone(), out.clone());
        Ok(out)
    }

    if mode == Mode::Cutoff && !is_allowed(v) {
        return Err(Error::Forbidden(v.to_string()));
    }
    go(rs, v, mode, 0, depth_limit, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::Family;
    use super::Strategy;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from_slice(v)
    }

    fn a2() -> RootSystem {
        RootSystem::new(Family::A, 2).unwrap()
    }

    #[test]
    fn fire_examples() {
        let a2 = a2();
        assert_eq!(fire(&a2, &w(&[-1, 0]), 0).unwrap(), w(&[1, -1]));
        assert_eq!(fire(&a2, &w(&[-1, -1]), 0).unwrap(), w(&[1, -2]));
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(fire(&a1, &w(&[-1]), 0).unwrap(), w(&[1]));
        assert!(matches!(
            fire(&a2, &w(&[0, -1]), 0),
            Err(Error::NotFireable { .. })
        ));
        assert!(fire(&a2, &w(&[-1, 0]), 2).is_err());
    }

    #[test]
    fn winning_examples() {
        let a2 = a2();
        assert!(is_winning(&a2, &w(&[-1, 0])));
        assert!(!is_winning(&a2, &w(&[-1, -1])));
        assert!(is_winning(&a2, &w(&[3, 0])));
    }

    #[test]
    fn winning_uses_coroots_in_b2() {
        // (−1,0) in B2: firing α_1 sends the short vertex to −2.
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let v = w(&[-1, 0]);
        assert!(!is_winning(&b2, &v));
        let o = play(&b2, &v, Mode::Cutoff, Strategy::MinIndex, 100).unwrap();
        assert_eq!(
            o,
            Outcome::Lost {
                final_config: w(&[1, -2]),
                moves: 1,
                firing_sequence: vec![0]
            }
        );
    }

    #[test]
    fn play_examples() {
        let a2 = a2();
        let o = play(&a2, &w(&[-1, 0]), Mode::Cutoff, Strategy::MinIndex, 100).unwrap();
        assert_eq!(
            o,
            Outcome::Won {
                final_config: w(&[0, 1]),
                moves: 2,
                firing_sequence: vec![0, 1]
            }
        );
        let o = play(&a2, &w(&[-1, -1]), Mode::Cutoff, Strategy::MinIndex, 100).unwrap();
        assert_eq!(o.kind(), "lost");
        assert_eq!(o.final_config(), &w(&[1, -2]));
        let o = play(&a2, &w(&[2, 5]), Mode::Plain, Strategy::MinIndex, 100).unwrap();
        assert_eq!(o.moves(), 0);
        assert!(o.is_won());
        assert!(play(&a2, &w(&[-1, 0]), Mode::Cutoff, Strategy::MinIndex, 0).is_err());
        assert!(play(&a2, &w(&[-2, 0]), Mode::Cutoff, Strategy::MinIndex, 10).is_err());
    }

    #[test]
    fn plain_and_minus_one_modes() {
        let a2 = a2();
        // plain mode wins from any configuration in finite type
        let o = play(&a2, &w(&[-3, -2]), Mode::Plain, Strategy::MinIndex, 100).unwrap();
        assert!(o.is_won());
        // −1 only: (−2, 0) has nothing fireable
        let o = play(&a2, &w(&[-2, 0]), Mode::FireOnlyMinusOne, Strategy::MinIndex, 100).unwrap();
        assert_eq!(o.kind(), "stalled");
        let o = play(&a2, &w(&[-1, -1]), Mode::Plain, Strategy::MinIndex, 1).unwrap();
        assert_eq!(o.kind(), "diverged");
    }

    #[test]
    fn convergence_examples() {
        let a2 = a2();
        let r = verify_strong_convergence(&a2, &w(&[-1, 0]), Mode::Cutoff, 20, 7).unwrap();
        assert!(r.agree);
        assert_eq!(r.final_config, Some(w(&[0, 1])));
        assert_eq!(r.moves, Some(2));
        let r = verify_strong_convergence(&a2, &w(&[1, 1]), Mode::Plain, 5, 7).unwrap();
        assert!(r.agree);
        assert_eq!(r.moves, Some(0));
    }

    #[test]
    fn a3_convergence_matches_exhaustive_tree() {
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let v = w(&[-1, 0, -1]);
        let leaves = exhaustive_outcomes(&a3, &v, Mode::Plain, 64).unwrap();
        assert_eq!(leaves.len(), 1);
        let (kind, fin, moves) = leaves.into_iter().next().unwrap();
        assert_eq!(kind, LeafKind::Won);
        // −θ for the highest root θ: the game ends at ι(θ) = (1,0,1)
        assert_eq!((fin.clone(), moves), (w(&[1, 0, 1]), 5));
        let r = verify_strong_convergence(&a3, &v, Mode::Plain, 20, 11).unwrap();
        assert!(r.agree);
        assert_eq!(r.final_config, Some(fin));
        assert_eq!(r.moves, Some(moves));
        // with the cutoff every play loses: ⟨v, (α_1+α_2+α_3)^∨⟩ = −2
        assert!(!is_winning(&a3, &v));
        let leaves = exhaustive_outcomes(&a3, &v, Mode::Cutoff, 64).unwrap();
        assert!(leaves.iter().all(|(k, _, _)| *k == LeafKind::Lost));
        let r = verify_strong_convergence(&a3, &v, Mode::Cutoff, 20, 11).unwrap();
        assert!(r.agree && r.won == 0 && r.lost == 20);
    }

    #[test]
    fn seed_stable_reports() {
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let v = w(&[-2, 1, -1]);
        let a = play(&a3, &v, Mode::Plain, Strategy::Random(99), 100).unwrap();
        let b = play(&a3, &v, Mode::Plain, Strategy::Random(99), 100).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn firing_is_reflection(v in proptest::collection::vec(-5i64..5, 3), i in 0usize..3) {
            let b3 = RootSystem::new(Family::B, 3).unwrap();
            let v = Weight::from_slice(&v);
            prop_assume!(v[i] < 0);
            let s = b3.element_of_word(&[i]).unwrap();
            prop_assert_eq!(fire(&b3, &v, i).unwrap(), b3.act(s, &v));
            // conservation: the firing adds −v_i·ι(α_i)
            let delta = b3.simple_root(i).weight.scale(-v[i]);
            prop_assert_eq!(fire(&b3, &v, i).unwrap(), &v + &delta);
        }

        #[test]
        fn reflection_is_involution(v in proptest::collection::vec(-50i64..50, 2), i in 0usize..2) {
            let g2 = RootSystem::new(Family::G, 2).unwrap();
            let v = Weight::from_slice(&v);
            prop_assert_eq!(g2.reflect(i, &g2.reflect(i, &v)), v);
        }

        #[test]
        fn cutoff_fires_only_minus_one(v in proptest::collection::vec(-1i64..3, 3), seed in any::<u64>()) {
            let c3 = RootSystem::new(Family::C, 3).unwrap();
            let v = Weight::from_slice(&v);
            let o = play(&c3, &v, Mode::Cutoff, Strategy::Random(seed), 1000).unwrap();
            let mut cur = v.clone();
            for &i in o.firing_sequence() {
                prop_assert_eq!(cur[i], -1);
                cur = fire(&c3, &cur, i).unwrap();
            }
            prop_assert_eq!(o.is_won(), is_winning(&c3, &v));
        }
    }
}
