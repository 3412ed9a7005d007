use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use weylfan::diagsplit::{is_diagonally_split, reproduce_table, DEFAULT_SYSTEMS};
use weylfan::lattice::parse_coords;
use weylfan::normality::{check_normality, Decomposer};
use weylfan::numbers_game::{play, Mode, Strategy};
use weylfan::quadraticity::{quadratic_relations, FiberSpace, MoveMode};
use weylfan::verify::{self, VerifyConfig};
use weylfan::{Error, Family, LengthClass, OrthogonalSet, PolytopeFile, RootSystem, Weight};

use crate::report::{usage, CliError, Finished};

pub type CmdResult = Result<Finished, CliError>;

fn system(family: Family, rank: usize) -> Result<RootSystem, CliError> {
    Ok(RootSystem::new(family, rank)?)
}

pub fn weight(s: &str, rank: usize) -> Result<Weight, CliError> {
    let c = parse_coords(s).map_err(usage)?;
    if c.len() != rank {
        return Err(usage(format!("expected {rank} coordinates, got {} in {s:?}", c.len())));
    }
    Ok(Weight(c))
}

fn read_polytope(path: &Path) -> Result<(PolytopeFile, OrthogonalSet), CliError> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let file = PolytopeFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let rs = Arc::new(file.root_system()?);
    let p = file.build(&rs).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((file, p))
}

/// Polytopes sharing one root-system instance, each repeated `dilate` times.
fn read_polytopes(paths: &[PathBuf], dilate: usize) -> Result<Vec<OrthogonalSet>, CliError> {
    if paths.is_empty() {
        return Err(usage("at least one polytope file is required"));
    }
    if dilate == 0 {
        return Err(usage("--dilate must be at least 1"));
    }
    let mut files = Vec::new();
    for p in paths {
        files.push(read_polytope(p)?.0);
    }
    let rs = Arc::new(files[0].root_system()?);
    let mut out = Vec::new();
    for (f, path) in files.iter().zip(paths) {
        if (f.family, f.rank) != (rs.family(), rs.rank()) {
            return Err(usage(format!("{}: root system differs from the first file", path.display())));
        }
        let p = f.build(&rs).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        for _ in 0..dilate {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn require_special_ample(ps: &[OrthogonalSet]) -> Result<(), CliError> {
    for p in ps {
        p.require_special_ample()?;
    }
    Ok(())
}

pub fn info(family: Family, rank: usize) -> CmdResult {
    let rs = system(family, rank)?;
    let n = rs.rank();
    let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| rs.c(i, j)).collect()).collect();
    #[derive(Serialize)]
    struct RootOut {
        root: Vec<i64>,
        weight: Weight,
        length: String,
    }
    let roots: Vec<RootOut> = rs
        .positive_roots()
        .map(|r| RootOut {
            root: r.root.as_slice().to_vec(),
            weight: r.weight.clone(),
            length: match r.length {
                LengthClass::Long => "long",
                LengthClass::Short => "short",
                LengthClass::SimplyLaced => "simply-laced",
            }
            .into(),
        })
        .collect();
    let mut text = format!("{}\nCartan matrix (c_ij = <alpha_i, alpha_j^vee>):\n", rs.name());
    for row in &cartan {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>3}")).collect();
        writeln!(text, "  {}", cells.join("")).unwrap();
    }
    writeln!(text, "roots: {} ({} positive)", rs.roots().len(), roots.len()).unwrap();
    for r in &roots {
        writeln!(text, "  {} weight {} {}", Weight::from_slice(&r.root), r.weight, r.length).unwrap();
    }
    write!(text, "|W| = {}", rs.group_order()).unwrap();
    let result = json!({
        "cartan": cartan,
        "roots": rs.roots().len(),
        "positive_roots": roots,
        "weyl_order": rs.group_order(),
    });
    Ok(Finished::new(Some(rs.name()), true, text, result))
}

pub fn lambda(path: &Path, dilate: i64, count_only: bool, emit_spec: Option<&Path>) -> CmdResult {
    let (file, p) = read_polytope(path)?;
    let p = if dilate == 1 { p } else { p.dilate(dilate).map_err(|e| usage(e.to_string()))? };
    p.require_special_ample()?;
    let pts = p.lambda_points()?;
    if let Some(out) = emit_spec {
        let spec = if dilate == 1 { file } else { PolytopeFile::explicit_from(&p) };
        fs::write(out, spec.to_json() + "\n").map_err(|e| usage(format!("{}: {e}", out.display())))?;
    }
    let name = p.root_system().name();
    let mut text = format!("{} lattice points", pts.len());
    if !count_only {
        for x in pts.iter() {
            write!(text, "\n{x}").unwrap();
        }
    }
    let result = if count_only {
        json!({ "count": pts.len() })
    } else {
        json!({ "count": pts.len(), "points": pts.points() })
    };
    Ok(Finished::new(Some(name), true, text, result))
}

pub fn decompose(paths: &[PathBuf], z: &str) -> CmdResult {
    let ps = read_polytopes(paths, 1)?;
    require_special_ample(&ps)?;
    let rs = ps[0].root_system().clone();
    let z = weight(z, rs.rank())?;
    let dec = Decomposer::new(&ps)?;
    match dec.decompose(&z) {
        Ok(d) => {
            let valid = d.is_valid(&ps);
            let parts: Vec<String> = d.parts.iter().map(|x| x.to_string()).collect();
            let text = format!("{} = {}", d.target, parts.join(" + "));
            Ok(Finished::new(Some(rs.name()), valid, text, json!({ "target": d.target, "parts": d.parts, "valid": valid })))
        }
        Err(Error::NotInPolytope(_)) | Err(Error::WrongCoset { .. }) => {
            let text = format!("{z} is not a lattice point of the sum polytope");
            Ok(Finished::new(Some(rs.name()), false, text, json!({ "target": z, "parts": null })))
        }
        Err(e) => Err(e.into()),
    }
}

pub struct GameArgs<'a> {
    pub family: Family,
    pub rank: usize,
    pub config: &'a str,
    pub mode: Mode,
    pub strategy: Strategy,
    pub max_steps: usize,
}

pub fn game(a: GameArgs) -> CmdResult {
    let rs = system(a.family, a.rank)?;
    let v = weight(a.config, rs.rank())?;
    let out = play(&rs, &v, a.mode, a.strategy, a.max_steps)?;
    let firing: Vec<usize> = out.firing_sequence().iter().map(|i| i + 1).collect();
    let text = format!(
        "{} after {} moves, final {}\nfiring sequence: {:?}",
        out.kind(),
        out.moves(),
        out.final_config(),
        firing
    );
    let result = json!({
        "outcome": out.kind(),
        "final": out.final_config(),
        "moves": out.moves(),
        "firing_sequence": firing,
    });
    Ok(Finished::new(Some(rs.name()), true, text, result))
}

pub fn check_normality_cmd(paths: &[PathBuf], dilate: usize, exhaustive: bool) -> CmdResult {
    let ps = read_polytopes(paths, dilate)?;
    require_special_ample(&ps)?;
    let r = check_normality(&ps, exhaustive)?;
    let mut text = format!("{} of {} targets decomposed", r.decomposed, r.targets);
    if let Some(c) = r.brute_force_confirmed {
        write!(text, ", {c} confirmed by exhaustive search").unwrap();
    }
    for f in &r.failures {
        write!(text, "\nfailure at {}: {}", f.target, f.reason).unwrap();
    }
    Ok(Finished::new(Some(ps[0].root_system().name()), r.ok(), text, &r))
}

pub struct QuadraticArgs<'a> {
    pub paths: &'a [PathBuf],
    pub sum: Option<&'a str>,
    pub adjacent_only: bool,
    pub winning: bool,
    pub cap: usize,
}

pub fn check_quadratic(a: QuadraticArgs) -> CmdResult {
    let ps = read_polytopes(a.paths, 1)?;
    require_special_ample(&ps)?;
    let name = ps[0].root_system().name();
    let mode = match (a.adjacent_only, a.winning) {
        (false, false) => MoveMode::AllRootMoves,
        (true, false) => MoveMode::AdjacentOnly,
        (false, true) => MoveMode::WinningRestricted,
        (true, true) => MoveMode::AdjacentWinning,
    };
    let fs = FiberSpace::new(&ps)?;
    if let Some(s) = a.sum {
        let s = weight(s, ps[0].root_system().rank())?;
        let g = fs.fiber(&s, mode, a.cap).map_err(|e| usage(e.to_string()))?;
        let comps = g.components();
        let connected = comps.len() <= 1;
        let text = format!(
            "fiber over {}: {} tuples, {} moves, {} component(s) ({mode})",
            g.sum,
            g.nodes.len(),
            g.edges.len(),
            comps.len()
        );
        let result = json!({
            "mode": mode,
            "sum": g.sum,
            "nodes": g.nodes,
            "edges": g.edges.len(),
            "components": comps.len(),
            "connected": connected,
        });
        return Ok(Finished::new(Some(name), connected, text, result));
    }
    let r = fs.check_connected(mode, a.cap)?;
    let bad: Vec<_> = r.disconnected().cloned().collect();
    let mut text = format!(
        "{mode}: {} fibers, {} checked, {} connected, {} over the cap of {} skipped",
        r.fibers, r.checked, r.connected, r.skipped, a.cap
    );
    for f in &bad {
        write!(text, "\ndisconnected fiber over {}: {} tuples, {} components", f.sum, f.nodes, f.components).unwrap();
    }
    let result = json!({
        "mode": mode,
        "fibers": r.fibers,
        "checked": r.checked,
        "connected": r.connected,
        "skipped": r.skipped,
        "empty": r.empty,
        "max_nodes": r.max_nodes,
        "disconnected": bad,
    });
    Ok(Finished::new(Some(name), r.ok(), text, result))
}

pub fn relations(path: &Path, spanning_tree: bool) -> CmdResult {
    let (_, p) = read_polytope(path)?;
    p.require_special_ample()?;
    let rels = quadratic_relations(&p, spanning_tree)?;
    let mut text = format!("{} relations", rels.len());
    for r in &rels {
        write!(text, "\n[{}][{}] - [{}][{}]", r.lhs.0, r.lhs.1, r.rhs.0, r.rhs.1).unwrap();
    }
    Ok(Finished::new(Some(p.root_system().name()), true, text, json!({ "count": rels.len(), "relations": rels })))
}

pub fn check_diagonal_split(family: Family, rank: usize, q: i64, witnesses: bool, assert: bool) -> CmdResult {
    let rs = system(family, rank)?;
    let r = is_diagonally_split(&rs, q)?;
    let mut text = format!(
        "{} q={}: {} ({} of {} residue classes covered)",
        r.system,
        r.q,
        if r.split { "diagonally split" } else { "not diagonally split" },
        r.covered,
        r.classes
    );
    for u in &r.uncovered {
        write!(text, "\nuncovered class {u}").unwrap();
    }
    if witnesses {
        for u in &r.witnesses {
            write!(text, "\ninterior point {u}").unwrap();
        }
    }
    let mut result = json!({
        "system": r.system,
        "q": r.q,
        "split": r.split,
        "classes": r.classes,
        "covered": r.covered,
        "uncovered": r.uncovered,
    });
    if witnesses {
        result["witnesses"] = json!(r.witnesses);
    }
    Ok(Finished::new(Some(rs.name()), !assert || r.split, text, result))
}

pub fn diagonal_split_table(q_max: i64) -> CmdResult {
    if q_max < 2 {
        return Err(usage("--q-max must be at least 2"));
    }
    let qs: Vec<i64> = (2..=q_max).collect();
    let rows = reproduce_table(&DEFAULT_SYSTEMS, &qs)?;
    let mut text = String::from("system");
    for q in &qs {
        write!(text, " q={q}").unwrap();
    }
    for chunk in rows.chunks(qs.len()) {
        write!(text, "\n{:<6}", chunk[0].system).unwrap();
        for r in chunk {
            let mark = if r.split { "yes" } else { "no" };
            let flag = if r.matches { " " } else { "!" };
            write!(text, " {mark:>3}{flag}").unwrap();
        }
    }
    let ok = rows.iter().all(|r| r.matches);
    Ok(Finished::new(None, ok, text, json!({ "rows": rows })))
}

pub fn verify_all(seed: u64, per_system: usize) -> CmdResult {
    let cfg = VerifyConfig {
        seed,
        per_system,
        ..VerifyConfig::default()
    };
    let results = verify::run_all(&cfg)?;
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{r}").unwrap();
        for e in &r.examples {
            writeln!(text, "    {e}").unwrap();
        }
    }
    let ok = results.iter().all(|r| r.passed);
    write!(text, "{}", if ok { "all criteria pass" } else { "some criteria fail" }).unwrap();
    Ok(Finished::new(None, ok, text, json!({ "config": cfg, "criteria": results })))
}
