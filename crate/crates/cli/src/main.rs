//! `tileforge`: build the lattice tiling constructions, run the verification
//! suites, solve tiling instances and export voxels.
//!
//! Data goes to `--out` (or stdout when omitted); the human summary goes to
//! stdout when `--out` is given and to stderr otherwise. `--json` switches
//! the summary to a JSON object.
//!
//! Exit codes: `solve` returns 0 (SAT), 1 (UNSAT), 2 (resource limit or
//! error). Checking commands (`partition --check`, `simulate --frame`,
//! `solve --verify`, `verify-suite`) return 1 when a check fails. Any error
//! returns 2.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tileforge::boardgames::{encode_domino, lift_solution, project_solution};
use tileforge::export::{export_certificate, export_tile, VoxelFormat};
use tileforge::gadgets::{build_gadgets, bump_dent_report, decorate_gadgets, realize_tiling};
use tileforge::io::{self, NamedTile};
use tileforge::partition::partition_cube;
use tileforge::simulate::{
    build_s_frame, simulate_set, simulation_size, verify_lattice_partition, DEFAULT_MAX_CELLS,
};
use tileforge::solver::{solve_with_limits, verify, SolveLimits, SolveOutcome, SolverError};
use tileforge::suite::{gadget_modulus, run_suite, SuiteParams};

#[derive(Parser)]
#[command(name = "tileforge", version, about = "Translational lattice tiling constructions and checks")]
struct Cli {
    /// Reserved for randomized commands; deterministic paths ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of cells a command may materialize.
    #[arg(long, global = true)]
    max_cells: Option<u128>,
    /// Print the summary as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition the cube {0..m+1}^d into m adjacent parts Q1..Qm.
    Partition(PartitionArgs),
    /// Replace tiles by connected tiles with the same tilings (or build S_l).
    Simulate(SimulateArgs),
    /// Encode a domino set as a cyclic triomino set; lift or project solutions.
    Encode(EncodeArgs),
    /// Build the filler and brick for a cyclic triomino set.
    Gadgets(GadgetsArgs),
    /// Turn a triomino solution into a tiling certificate for the gadgets.
    Realize(RealizeArgs),
    /// Tile a box or torus region by translates of the given tiles.
    Solve(SolveArgs),
    /// Run a named verification suite.
    VerifySuite(SuiteArgs),
    /// Write a tile or certificate as xyz points or an obj mesh.
    Export(ExportArgs),
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long)]
    m: i64,
    /// Emit the 3x-inflated parts with bumps and dents.
    #[arg(long)]
    decorate: bool,
    /// Check exactness, connectivity and both adjacency properties.
    #[arg(long)]
    check: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Tile JSON (one object or an array).
    #[arg(long = "in", conflicts_with = "frame")]
    input: Option<PathBuf>,
    /// Build S_l for this frame side instead of simulating tiles.
    #[arg(long)]
    frame: Option<i64>,
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Only report the predicted sizes.
    #[arg(long)]
    dry_run: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    #[arg(long)]
    domino: PathBuf,
    /// Modulus; defaults to the smallest valid one.
    #[arg(long)]
    n: Option<u32>,
    /// Require gcd(n, 6) = 1, as the gadgets need.
    #[arg(long)]
    coprime_six: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Domino solution (grid JSON) to lift to a triomino solution.
    #[arg(long, conflicts_with = "project")]
    lift: Option<PathBuf>,
    /// Parity of the cells carrying domino values.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    delta: u8,
    /// Triomino solution (grid JSON) to project back to a domino solution.
    #[arg(long)]
    project: Option<PathBuf>,
    /// Where to write the lifted or projected grid.
    #[arg(long)]
    grid_out: Option<PathBuf>,
}

#[derive(Args)]
struct GadgetsArgs {
    #[arg(long)]
    triomino: PathBuf,
    /// Also build the 3-brick and 3-filler and check their bumps and dents.
    #[arg(long)]
    scaled: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(long)]
    triomino: PathBuf,
    /// Grid JSON with a solution of the triomino set.
    #[arg(long)]
    solution: PathBuf,
    /// Realize with the 3-brick and 3-filler on the 3x torus.
    #[arg(long)]
    scaled: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, required_unless_present = "verify")]
    region: Option<PathBuf>,
    #[arg(long, required_unless_present = "verify")]
    tiles: Option<PathBuf>,
    /// Check an existing certificate instead of solving.
    #[arg(long, conflicts_with_all = ["region", "tiles"])]
    verify: Option<PathBuf>,
    /// Largest number of search steps.
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// partition, simulate, blockers, towers, boardgames, gadgets, solver-oracle or all.
    name: String,
    #[arg(long, default_value_t = 12)]
    m_max: i64,
    #[arg(long, default_value_t = 4)]
    high_m_max: i64,
    #[arg(long, default_value_t = 3)]
    l: i64,
    /// Tower moduli (repeatable).
    #[arg(long = "n", default_values_t = [5u32, 7])]
    tower_n: Vec<u32>,
    /// Random solver-oracle instances.
    #[arg(long, default_value_t = 200)]
    cases: usize,
    /// Include the 3-scaled gadget certificate.
    #[arg(long)]
    scaled: bool,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long, conflicts_with = "certificate", required_unless_present = "certificate")]
    tile: Option<PathBuf>,
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Which tile of a tile list to export.
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[arg(long, default_value = "xyz")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Where data and summaries go.
struct Output<'a> {
    json: bool,
    out: Option<&'a Path>,
}

impl Output<'_> {
    fn data(&self, text: &str) -> Result<()> {
        match self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => match std::io::stdout().lock().write_all(text.as_bytes()) {
                // a closed pipe (`| head`) is the reader's choice, not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing stdout"),
                _ => Ok(()),
            },
        }
    }

    fn summary(&self, value: Value, text: String) {
        let line = if self.json { value.to_string() } else { text };
        if self.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Partition(a) => partition(cli, a),
        Command::Simulate(a) => simulate(cli, a),
        Command::Encode(a) => encode(cli, a),
        Command::Gadgets(a) => gadgets(cli, a),
        Command::Realize(a) => realize(cli, a),
        Command::Solve(a) => solve_cmd(cli, a),
        Command::VerifySuite(a) => verify_suite(cli, a),
        Command::Export(a) => export(cli, a),
    }
}

fn partition(cli: &Cli, a: &PartitionArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    let part = partition_cube(a.dim, a.m)?;
    let tiles: Vec<NamedTile> = if a.decorate {
        let deco = part.decorate()?;
        deco.parts.into_iter().enumerate().map(|(i, t)| NamedTile::new(format!("Q{}'", i + 1), t)).collect()
    } else {
        part.parts.iter().enumerate().map(|(i, t)| NamedTile::new(format!("Q{}", i + 1), t.clone())).collect()
    };
    out.data(&io::tiles_to_json(&tiles))?;
    if !a.check {
        let cells: usize = tiles.iter().map(|t| t.tile.len()).sum();
        out.summary(
            json!({"dim": a.dim, "m": a.m, "parts": tiles.len(), "cells": cells}),
            format!("partition d={} m={}: {} parts, {} cells", a.dim, a.m, tiles.len(), cells),
        );
        return Ok(0);
    }
    let exact = part.is_exact();
    let connected = part.all_parts_connected();
    let internal = part.check_internal_adjacency();
    let external = part.check_external_adjacency();
    let ok = exact && connected && internal.holds && external.holds;
    let missing = |m: &Option<tileforge::partition::MissingPair>| {
        m.as_ref().map(|p| json!({"i": p.i, "j": p.j, "direction": p.direction.map(|d| d.to_string())}))
    };
    out.summary(
        json!({
            "dim": a.dim, "m": a.m, "exact": exact, "connected": connected,
            "internal_adjacency": internal.holds, "external_adjacency": external.holds,
            "internal_missing": missing(&internal.missing), "external_missing": missing(&external.missing),
        }),
        format!(
            "partition d={} m={}: exact={exact} connected={connected} internal={} external={} -> {}",
            a.dim,
            a.m,
            internal.holds,
            external.holds,
            if ok { "PASS" } else { "FAIL" }
        ),
    );
    Ok(if ok { 0 } else { 1 })
}

fn simulate(cli: &Cli, a: &SimulateArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    let budget = cli.max_cells.unwrap_or(DEFAULT_MAX_CELLS);
    if let Some(l) = a.frame {
        let frame = build_s_frame(a.dim, l)?;
        let connected = frame.tile.is_connected()?;
        let partition = verify_lattice_partition(&frame.tile, frame.period);
        if a.out.is_some() {
            out.data(&io::tiles_to_json(&[NamedTile::new(format!("S_{l}"), frame.tile.clone())]))?;
        }
        let ok = connected && partition;
        out.summary(
            json!({"l": l, "m": frame.m, "period": frame.period, "cells": frame.tile.len(),
                   "connected": connected, "lattice_partition": partition}),
            format!(
                "S_{l}: m={} period={} cells={} connected={connected} lattice_partition={partition}",
                frame.m,
                frame.period,
                frame.tile.len()
            ),
        );
        return Ok(if ok { 0 } else { 1 });
    }
    let Some(input) = &a.input else { bail!("give --in tiles.json or --frame l") };
    let named = io::parse_tiles(&read(input)?)?;
    let tiles: Vec<_> = named.iter().map(|t| t.tile.clone()).collect();
    let size = simulation_size(&tiles)?;
    let size_json = json!({
        "dim": size.dim, "l": size.l, "m": size.m, "period": size.period,
        "s_cells": size.s_cells.to_string(),
        "output_cells": size.output_cells.iter().map(u128::to_string).collect::<Vec<_>>(),
        "total_cells": size.total_cells().to_string(),
    });
    if a.dry_run {
        out.summary(
            size_json,
            format!(
                "l={} m={} period={} |S|={} outputs={:?} total={}",
                size.l,
                size.m,
                size.period,
                size.s_cells,
                size.output_cells,
                size.total_cells()
            ),
        );
        return Ok(0);
    }
    let result = simulate_set(&tiles, budget)?;
    let outputs: Vec<NamedTile> = named
        .iter()
        .zip(result.transformed)
        .map(|(n, t)| NamedTile::new(format!("{}'", n.name), t))
        .collect();
    out.data(&io::tiles_to_json(&outputs))?;
    let connected: Vec<bool> = outputs.iter().map(|t| t.tile.is_connected().unwrap_or(false)).collect();
    out.summary(
        json!({"size": size_json, "connected": connected}),
        format!("simulated {} tiles with S_{} (period {}): connected={connected:?}", outputs.len(), result.l, result.period),
    );
    Ok(0)
}

fn encode(cli: &Cli, a: &EncodeArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    let r = io::parse_domino(&read(&a.domino)?)?;
    let n = a.n.unwrap_or(if a.coprime_six { gadget_modulus(r.m) } else { 2 * r.m + 1 });
    let s = encode_domino(&r, n, a.coprime_six)?;
    let text = io::triomino_to_json(&s);
    let grid_out = Output { json: cli.json, out: a.grid_out.as_deref() };
    if let Some(path) = &a.lift {
        let g = io::parse_grid(&read(path)?)?;
        let t = lift_solution(&r, &g, a.delta)?;
        if a.out.is_some() {
            out.data(&text)?;
        }
        grid_out.data(&io::grid_to_json(&t))?;
        out.summary(
            json!({"n": n, "delta": a.delta, "px": t.px, "py": t.py}),
            format!("lifted {}x{} domino solution to a {}x{} triomino solution (n={n}, delta={})", g.px, g.py, t.px, t.py, a.delta),
        );
        return Ok(0);
    }
    if let Some(path) = &a.project {
        let t = io::parse_grid(&read(path)?)?;
        let g = project_solution(&s, &r, &t)?;
        if a.out.is_some() {
            out.data(&text)?;
        }
        grid_out.data(&io::grid_to_json(&g))?;
        out.summary(
            json!({"n": n, "px": g.px, "py": g.py}),
            format!("projected to a {}x{} domino solution", g.px, g.py),
        );
        return Ok(0);
    }
    out.data(&text)?;
    let sizes: Vec<usize> = (0..4).map(|i| s.rule_len(i)).collect();
    out.summary(
        json!({"n": n, "m": r.m, "rule_sizes": sizes}),
        format!("encoded m={} domino set over Z_{n}: |S_i| = {sizes:?}", r.m),
    );
    Ok(0)
}

fn gadgets(cli: &Cli, a: &GadgetsArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    let s = io::parse_triomino(&read(&a.triomino)?)?;
    let mut g = build_gadgets(&s)?;
    let mut interlock = None;
    if a.scaled {
        g = decorate_gadgets(&g)?;
        let report = bump_dent_report(&g)?;
        interlock = Some(report.iter().all(|c| c.matched && c.disjoint));
    }
    out.data(&io::gadgets_to_json(&g))?;
    out.summary(
        json!({"n": g.n, "m": g.m, "brick_cells": g.brick.len(), "empty_brick_cells": g.empty_brick.len(),
               "filler_cells": g.filler.len(), "brick3_cells": g.brick3.as_ref().map(|t| t.len()),
               "bumps_meet_dents": interlock}),
        format!(
            "gadgets n={} m={}: |B0|={} |B|={} |filler|={}{}",
            g.n,
            g.m,
            g.empty_brick.len(),
            g.brick.len(),
            g.filler.len(),
            match (&g.brick3, interlock) {
                (Some(b3), Some(ok)) => format!(" |3-brick|={} bumps_meet_dents={ok}", b3.len()),
                _ => String::new(),
            }
        ),
    );
    Ok(if interlock == Some(false) { 1 } else { 0 })
}

fn realize(cli: &Cli, a: &RealizeArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    let s = io::parse_triomino(&read(&a.triomino)?)?;
    let t = io::parse_grid(&read(&a.solution)?)?;
    let g = build_gadgets(&s)?;
    let cert = realize_tiling(&s, &g, &t, a.scaled)?;
    let names: &[&str] = if a.scaled { &["brick3", "filler3"] } else { &["brick", "filler"] };
    out.data(&io::certificate_to_json(&cert, names))?;
    let bricks = cert.placements.iter().filter(|p| p.tile == 0).count();
    let fillers = cert.placements.len() - bricks;
    out.summary(
        json!({"dims": cert.region.dims, "bricks": bricks, "fillers": fillers, "verified": true}),
        format!("certificate on torus {:?}: {bricks} bricks, {fillers} fillers, verified", cert.region.dims),
    );
    Ok(0)
}

fn solve_cmd(cli: &Cli, a: &SolveArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    if let Some(path) = &a.verify {
        let cert = io::parse_certificate(&read(path)?)?;
        let report = verify(&cert);
        let violation = report.violation.as_ref().map(ToString::to_string);
        out.summary(
            json!({"ok": report.ok, "violation": violation}),
            match &violation {
                None => "certificate OK".to_string(),
                Some(v) => format!("certificate INVALID: {v}"),
            },
        );
        return Ok(if report.ok { 0 } else { 1 });
    }
    let region = io::parse_region(&read(a.region.as_deref().expect("clap requires region"))?)?;
    let named = io::parse_tiles(&read(a.tiles.as_deref().expect("clap requires tiles"))?)?;
    let tiles: Vec<_> = named.iter().map(|t| t.tile.clone()).collect();
    let mut limits = SolveLimits::default();
    if let Some(c) = cli.max_cells {
        limits.max_cells = u64::try_from(c).unwrap_or(u64::MAX);
    }
    if let Some(n) = a.max_nodes {
        limits.max_nodes = n;
    }
    match solve_with_limits(&region, &tiles, &limits) {
        Ok(SolveOutcome::Sat(cert)) => {
            let names: Vec<&str> = named.iter().map(|t| t.name.as_str()).collect();
            out.data(&io::certificate_to_json(&cert, &names))?;
            out.summary(
                json!({"result": "SAT", "placements": cert.placements.len()}),
                format!("SAT: {} placements", cert.placements.len()),
            );
            Ok(0)
        }
        Ok(SolveOutcome::Unsat) => {
            out.summary(json!({"result": "UNSAT"}), "UNSAT".to_string());
            Ok(1)
        }
        Err(e @ SolverError::ResourceLimit { .. }) => {
            out.summary(json!({"result": "LIMIT", "error": e.to_string()}), format!("LIMIT: {e}"));
            Ok(2)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify_suite(cli: &Cli, a: &SuiteArgs) -> Result<u8> {
    let params = SuiteParams {
        m_max: a.m_max,
        high_m_max: a.high_m_max,
        l: a.l,
        tower_n: a.tower_n.clone(),
        oracle_cases: a.cases,
        seed: cli.seed,
        scaled: a.scaled,
        max_cells: cli.max_cells.unwrap_or(DEFAULT_MAX_CELLS),
    };
    let report = run_suite(&a.name, &params)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "suite {}: {} cases, {} failures, {:.2}s -> {}",
            report.suite,
            report.cases,
            report.failures.len(),
            report.wall_time_secs,
            if report.passed() { "PASS" } else { "FAIL" }
        );
        for f in &report.failures {
            println!("  FAIL {}: {}\n    reproduce: {}", f.case, f.detail, f.reproduce);
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn export(cli: &Cli, a: &ExportArgs) -> Result<u8> {
    let out = Output { json: cli.json, out: a.out.as_deref() };
    let format: VoxelFormat = a.format.parse()?;
    let text = if let Some(path) = &a.certificate {
        let cert = io::parse_certificate(&read(path)?)?;
        export_certificate(&cert, format)?
    } else {
        let tiles = io::parse_tiles(&read(a.tile.as_deref().expect("clap requires tile"))?)?;
        let Some(t) = tiles.get(a.index) else {
            bail!("tile index {} out of range ({} tiles)", a.index, tiles.len());
        };
        let name = if t.name.is_empty() { "tile" } else { t.name.as_str() };
        export_tile(&t.tile, name, format)?
    };
    out.data(&text)?;
    if a.out.is_some() {
        out.summary(json!({"format": a.format, "bytes": text.len()}), format!("wrote {} bytes of {}", text.len(), a.format));
    }
    Ok(0)
}
