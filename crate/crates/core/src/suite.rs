//! Named verification suites: each checks the finite content of one group
//! of lemmas and reports failures with a command that reproduces them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boardgames::{
    all_triples, check_domino, check_triomino, encode_domino, lift_solution, project_solution,
    CyclicTriominoSet, DominoSet, GridAssignment,
};
use crate::gadgets::{
    blocker_truth_table, box_region, build_gadgets, bump_dent_report, filler_hole_check, pole_column,
    realize_tiling, solve_column, tower_check,
};
use crate::lattice::LatticeTile;
use crate::oracle::brute_force_tileable;
use crate::partition::partition_cube;
use crate::simulate::{build_s_frame, local_forcing_check, simulate_set, verify_lattice_partition};
use crate::solver::{solve, verify, Region, RegionMode};

pub const SUITES: [&str; 8] =
    ["partition", "simulate", "blockers", "towers", "boardgames", "gadgets", "solver-oracle", "all"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?} (expected one of {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("parameter {name} = {value} is outside the supported range {range}")]
    OutOfRange { name: &'static str, value: String, range: &'static str },
}

/// Size parameters shared by all suites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    /// Largest `m` for the 3-D partition checks.
    pub m_max: i64,
    /// Largest `m` for the 4-D and 5-D partition checks.
    pub high_m_max: i64,
    /// Frame side of `S_l`.
    pub l: i64,
    /// Moduli for the exhaustive tower criterion.
    pub tower_n: Vec<u32>,
    /// Random solver-oracle instances.
    pub oracle_cases: usize,
    pub seed: u64,
    /// Also realize the 3-scaled certificate in the gadget suite.
    pub scaled: bool,
    /// Cell budget for `simulate_set`.
    pub max_cells: u128,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            m_max: 12,
            high_m_max: 4,
            l: 3,
            tower_n: vec![5, 7],
            oracle_cases: 200,
            seed: 0,
            scaled: false,
            max_cells: crate::simulate::DEFAULT_MAX_CELLS,
        }
    }
}

impl SuiteParams {
    fn validate(&self) -> Result<(), SuiteError> {
        let out = |name, value: String, range| Err(SuiteError::OutOfRange { name, value, range });
        if !(1..=20).contains(&self.m_max) {
            return out("m_max", self.m_max.to_string(), "1..=20");
        }
        if !(0..=6).contains(&self.high_m_max) {
            return out("high_m_max", self.high_m_max.to_string(), "0..=6");
        }
        if !(3..=4).contains(&self.l) {
            return out("l", self.l.to_string(), "3..=4");
        }
        if let Some(n) = self.tower_n.iter().find(|&&n| n == 0 || n > 31 || n % 2 == 0 || n % 3 == 0) {
            return out("tower_n", n.to_string(), "odd n <= 31 with gcd(n, 6) = 1");
        }
        if self.oracle_cases > 100_000 {
            return out("oracle_cases", self.oracle_cases.to_string(), "0..=100000");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub case: String,
    pub detail: String,
    pub reproduce: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<SuiteFailure>,
    pub wall_time_secs: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Check = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

struct Case {
    name: String,
    reproduce: String,
    check: Check,
}

impl Case {
    fn new(
        name: impl Into<String>,
        reproduce: impl Into<String>,
        check: impl Fn() -> Result<(), String> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), reproduce: reproduce.into(), check: Box::new(check) }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs one suite (or `all`) and collects failures in case order.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    params.validate()?;
    let start = Instant::now();
    let cases = match name {
        "all" => SUITES[..SUITES.len() - 1]
            .iter()
            .flat_map(|s| {
                cases_for(s, params)
                    .expect("known suite")
                    .into_iter()
                    .map(move |c| Case { name: format!("{s}/{}", c.name), ..c })
            })
            .collect(),
        other => cases_for(other, params)?,
    };
    let results: Vec<Result<(), String>> = cases
        .par_iter()
        .map(|c| {
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.check)()))
                .unwrap_or_else(|_| Err("check panicked".to_string()))
        })
        .collect();
    let failures = cases
        .iter()
        .zip(results)
        .filter_map(|(c, r)| {
            r.err().map(|detail| SuiteFailure {
                case: c.name.clone(),
                detail,
                reproduce: c.reproduce.clone(),
            })
        })
        .collect();
    Ok(SuiteReport {
        suite: name.to_string(),
        cases: cases.len(),
        failures,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

fn cases_for(name: &str, p: &SuiteParams) -> Result<Vec<Case>, SuiteError> {
    Ok(match name {
        "partition" => partition_cases(p),
        "simulate" => simulate_cases(p),
        "blockers" => blocker_cases(),
        "towers" => tower_cases(p),
        "boardgames" => boardgame_cases(),
        "gadgets" => gadget_cases(p),
        "solver-oracle" => oracle_cases(p),
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    })
}

fn partition_cases(p: &SuiteParams) -> Vec<Case> {
    let mut sizes: Vec<(usize, i64)> = (1..=p.m_max).map(|m| (3, m)).collect();
    for d in [4, 5] {
        sizes.extend((1..=p.high_m_max).map(|m| (d, m)));
    }
    sizes
        .into_iter()
        .map(|(d, m)| {
            Case::new(
                format!("d={d} m={m}"),
                format!("tileforge partition --dim {d} --m {m} --check"),
                move || {
                    let part = partition_cube(d, m).map_err(|e| e.to_string())?;
                    ensure(part.is_exact(), || "not an exact partition".into())?;
                    ensure(part.all_parts_connected(), || "a part is disconnected".into())?;
                    let inner = part.check_internal_adjacency();
                    ensure(inner.holds, || format!("internal adjacency fails: {:?}", inner.missing))?;
                    let outer = part.check_external_adjacency();
                    ensure(outer.holds, || format!("external adjacency fails: {:?}", outer.missing))?;
                    let deco = part.decorate().map_err(|e| e.to_string())?;
                    ensure(deco.parts.iter().all(|q| q.is_connected().unwrap_or(false)), || {
                        "a decorated part is disconnected".into()
                    })
                },
            )
        })
        .collect()
}

/// Two disconnected 3-D tiles used by the simulation checks.
pub fn sample_disconnected_tiles() -> Vec<LatticeTile> {
    vec![
        LatticeTile::from_points(3, [[0, 0, 0], [2, 0, 0]]).expect("3-D"),
        LatticeTile::from_points(3, [[0, 0, 0], [1, 1, 1]]).expect("3-D"),
    ]
}

fn simulate_cases(p: &SuiteParams) -> Vec<Case> {
    let l = p.l;
    let budget = p.max_cells;
    vec![
        Case::new(format!("S_{l} connected and lattice partition"), format!("tileforge simulate --frame {l}"), move || {
            let frame = build_s_frame(3, l).map_err(|e| e.to_string())?;
            ensure(frame.tile.is_connected().unwrap_or(false), || "S is disconnected".into())?;
            ensure(verify_lattice_partition(&frame.tile, frame.period), || {
                format!("S + {}Z^3 is not a partition", frame.period)
            })?;
            let dims: i64 = (0..3).map(|_| frame.period).product();
            ensure(frame.tile.len() as i64 == dims, || "wrong cell count".into())
        }),
        Case::new(format!("S_{l} local bump/dent forcing"), format!("tileforge simulate --frame {l}"), move || {
            let frame = build_s_frame(3, l).map_err(|e| e.to_string())?;
            let report =
                local_forcing_check(&frame.tile, frame.period, &frame.bumps(), &frame.dents(), 2);
            ensure(report.holds(), || format!("forcing failures: {:?}", report.failures.first()))
        }),
        Case::new("simulate two disconnected tiles", "tileforge simulate --in tiles.json --out out.json", move || {
            let tiles = sample_disconnected_tiles();
            let result = simulate_set(&tiles, budget).map_err(|e| e.to_string())?;
            ensure(result.all_connected(), || "an output tile is disconnected".into())?;
            let s = result.s_tile.len();
            for (input, output) in tiles.iter().zip(&result.transformed) {
                ensure(output.len() == input.len() * s, || {
                    format!("|P'| = {} != {} * {}", output.len(), input.len(), s)
                })?;
            }
            Ok(())
        }),
        Case::new("simulate one cell reproduces S", "tileforge simulate --in cell.json --out out.json", move || {
            let cell = LatticeTile::from_points(3, [[0, 0, 0]]).expect("3-D");
            let result = simulate_set(&[cell], budget).map_err(|e| e.to_string())?;
            ensure(result.transformed[0] == result.s_tile, || "output differs from S".into())
        }),
    ]
}

fn blocker_cases() -> Vec<Case> {
    (0..8u8)
        .map(|bits| {
            let states = [bits & 4 != 0, bits & 2 != 0, bits & 1 != 0];
            let [i, j, k] = states.map(u8::from);
            Case::new(format!("({i},{j},{k})"), "tileforge verify-suite blockers", move || {
                let table = blocker_truth_table().map_err(|e| e.to_string())?;
                let verdict = table.iter().find(|v| v.states == states).ok_or("missing row")?;
                let expected = states != [true, true, true];
                ensure(verdict.tileable == expected, || {
                    format!("tileable = {}, expected {expected}", verdict.tileable)
                })
            })
        })
        .collect()
}

fn tower_cases(p: &SuiteParams) -> Vec<Case> {
    let mut out = Vec::new();
    for &n in &p.tower_n {
        for [a, b, c] in all_triples(n) {
            out.push(Case::new(
                format!("n={n} ({a},{b},{c})"),
                format!("tileforge verify-suite towers --n {n}"),
                move || {
                    let (a, b, c) = (a as i64, b as i64, c as i64);
                    let tileable = tower_check(n, a, b, c).map_err(|e| e.to_string())?;
                    let forbidden = a == b && b == c;
                    ensure(tileable != forbidden, || format!("tileable = {tileable}"))
                },
            ));
        }
    }
    out
}

/// Domino sets with a known periodic solution, for round-trip checks.
pub fn sample_domino_sets() -> Vec<(&'static str, DominoSet, GridAssignment)> {
    let cyc = [[1, 2], [2, 3], [3, 1]];
    let back = [[1, 3], [2, 1], [3, 2]];
    let grid = |px, py, f: fn(usize, usize) -> u32| GridAssignment::from_fn(px, py, f).expect("grid");
    vec![
        (
            "constant",
            DominoSet::new(1, [[1, 1]], [[1, 1]]).expect("valid"),
            GridAssignment::constant(1),
        ),
        (
            "stripes",
            DominoSet::new(2, [[1, 2], [2, 1]], [[1, 1], [2, 2]]).expect("valid"),
            grid(2, 1, |x, _| x as u32 + 1),
        ),
        (
            "checkerboard",
            DominoSet::new(2, [[1, 2], [2, 1]], [[1, 2], [2, 1]]).expect("valid"),
            grid(2, 2, |x, y| ((x + y) % 2) as u32 + 1),
        ),
        (
            "diagonal",
            DominoSet::new(3, cyc, cyc).expect("valid"),
            grid(3, 3, |x, y| ((x + y) % 3) as u32 + 1),
        ),
        (
            "antidiagonal",
            DominoSet::new(3, cyc, back).expect("valid"),
            grid(3, 3, |x, y| ((x + 3 - y) % 3) as u32 + 1),
        ),
    ]
}

/// Smallest `n >= 2m + 1` with `gcd(n, 6) = 1`.
pub fn gadget_modulus(m: u32) -> u32 {
    (2 * m + 1..).find(|n| n % 2 != 0 && n % 3 != 0).expect("unbounded")
}

fn boardgame_cases() -> Vec<Case> {
    let mut out: Vec<Case> = sample_domino_sets()
        .into_iter()
        .map(|(name, r, g)| {
            Case::new(name, "tileforge encode --domino d.json --lift g.json", move || {
                ensure(check_domino(&r, &g).map_err(|e| e.to_string())?, || "sample is not a solution".into())?;
                let n = gadget_modulus(r.m);
                let s = encode_domino(&r, n, true).map_err(|e| e.to_string())?;
                for delta in [0, 1] {
                    let t = lift_solution(&r, &g, delta).map_err(|e| e.to_string())?;
                    ensure(check_triomino(&s, &t).map_err(|e| e.to_string())?, || {
                        format!("lift with delta {delta} violates the triomino rules")
                    })?;
                    for k in [0, 1, n - 1] {
                        let back = project_solution(&s, &r, &t.shifted(k, n)).map_err(|e| e.to_string())?;
                        ensure(back.same_function(&g), || {
                            format!("projection of the lift (delta {delta}, shift {k}) differs")
                        })?;
                    }
                }
                Ok(())
            })
        })
        .collect();
    out.push(Case::new(
        "exhaustive 2x2 boards, m=1, n=5",
        "tileforge verify-suite boardgames",
        || {
            let r = DominoSet::new(1, [[1, 1]], [[1, 1]]).expect("valid");
            let s = encode_domino(&r, 5, true).map_err(|e| e.to_string())?;
            let mut solutions = 0;
            for code in 0..5u32.pow(4) {
                let t = GridAssignment::from_fn(2, 2, |x, y| code / 5u32.pow((2 * y + x) as u32) % 5)
                    .expect("grid");
                if check_triomino(&s, &t).map_err(|e| e.to_string())? {
                    solutions += 1;
                    let g = project_solution(&s, &r, &t).map_err(|e| e.to_string())?;
                    ensure(g.same_function(&GridAssignment::constant(1)), || "bad projection".into())?;
                }
            }
            // shift k in Z_5, parity delta in {0, 1}
            ensure(solutions == 10, || format!("{solutions} solutions, expected 10"))
        },
    ));
    out
}

/// A cyclic triomino set over `Z_5` with one forbidden orbit per rule
/// (`m = 4`) that admits the constant solution 0.
pub fn sample_triomino_set() -> CyclicTriominoSet {
    CyclicTriominoSet::from_forbidden(
        5,
        [vec![[0, 1, 2]], vec![[0, 2, 1]], vec![[0, 1, 1]], vec![[0, 3, 4]]],
    )
    .expect("valid set")
}

/// A non-constant periodic solution of [`sample_triomino_set`].
pub fn sample_triomino_solution() -> GridAssignment {
    GridAssignment::from_rows(&[vec![0, 1, 2, 3, 4]]).expect("grid")
}

fn gadget_cases(p: &SuiteParams) -> Vec<Case> {
    let scaled = p.scaled;
    let mut out = vec![
        Case::new("realize constant solution", "tileforge realize --triomino s.json --solution zero.json --out c.json", || {
            let s = sample_triomino_set();
            let g = build_gadgets(&s).map_err(|e| e.to_string())?;
            let cert = realize_tiling(&s, &g, &GridAssignment::constant(0), false).map_err(|e| e.to_string())?;
            ensure(verify(&cert).ok, || "certificate fails verification".into())
        }),
        Case::new("realize 5x1 solution", "tileforge realize --triomino s.json --solution t.json --out c.json", || {
            let s = sample_triomino_set();
            let t = sample_triomino_solution();
            ensure(check_triomino(&s, &t).map_err(|e| e.to_string())?, || "sample is not a solution".into())?;
            let g = build_gadgets(&s).map_err(|e| e.to_string())?;
            let cert = realize_tiling(&s, &g, &t, false).map_err(|e| e.to_string())?;
            ensure(cert.region.dims == vec![70, 5, 30], || format!("dims {:?}", cert.region.dims))?;
            ensure(verify(&cert).ok, || "certificate fails verification".into())
        }),
        Case::new("3-brick bumps meet dents", "tileforge gadgets --triomino s.json --out g.json --scaled", || {
            let g = build_gadgets(&sample_triomino_set()).map_err(|e| e.to_string())?;
            let report = bump_dent_report(&g).map_err(|e| e.to_string())?;
            ensure(report.iter().all(|c| c.matched && c.disjoint), || format!("{report:?}"))
        }),
        Case::new("forbidden triples block their pole", "tileforge verify-suite gadgets", || {
            let s = sample_triomino_set();
            let g = build_gadgets(&s).map_err(|e| e.to_string())?;
            for entry in &g.layout {
                for k in 0..g.n as i64 {
                    for [x, y, z] in all_triples(g.n) {
                        let h = [x as i64 + k, y as i64, z as i64];
                        let column = pole_column(&g, entry.index, h).map_err(|e| e.to_string())?;
                        let fillable = solve_column(g.n, &column).map_err(|e| e.to_string())?.is_some();
                        let [a, b, c] = entry.triple.map(i64::from);
                        let d = (h[0] - a).rem_euclid(5);
                        let forbidden = (h[1] - b).rem_euclid(5) == d && (h[2] - c).rem_euclid(5) == d;
                        ensure(fillable != forbidden, || {
                            format!("pole {} heights {h:?}: fillable = {fillable}", entry.index)
                        })?;
                    }
                    if k > 0 {
                        break;
                    }
                }
            }
            Ok(())
        }),
    ];
    if scaled {
        out.push(Case::new("realize 3-scaled", "tileforge realize --triomino s.json --solution t.json --out c.json --scaled", || {
            let s = sample_triomino_set();
            let g = build_gadgets(&s).map_err(|e| e.to_string())?;
            let cert = realize_tiling(&s, &g, &sample_triomino_solution(), true).map_err(|e| e.to_string())?;
            ensure(verify(&cert).ok, || "scaled certificate fails verification".into())
        }));
    }
    for (n, dims) in filler_hole_boxes() {
        out.push(Case::new(
            format!("filler n={n} box {dims:?}"),
            format!("tileforge solve --region box.json --tiles filler{n}.json"),
            move || {
                let region = box_region(dims).map_err(|e| e.to_string())?;
                let report = filler_hole_check(n, &region).map_err(|e| e.to_string())?;
                ensure(report.witness.is_some(), || "box has no 3x3 plate".into())?;
                ensure(report.holds(), || "filler tiles a region with a full plate".into())
            },
        ));
    }
    out
}

/// Boxes up to `9 × 9 × 5` for the filler hole lemma, with the filler's
/// layer gap `n`.
pub fn filler_hole_boxes() -> Vec<(u32, [i64; 3])> {
    let mut out = Vec::new();
    for n in [1, 5] {
        for (x, y) in [(3, 3), (3, 6), (6, 6), (4, 5), (9, 9), (6, 9)] {
            for z in [2, 4, 5] {
                if n == 5 && z < 5 {
                    continue;
                }
                out.push((n, [x, y, z]));
            }
        }
    }
    out
}

/// A random 2-D or 3-D solver instance for the brute-force comparison.
/// About one in ten is a hole-free box of up to `10^4` cells tiled by a
/// random brick, on which the oracle's search is a single path.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (Region, Vec<LatticeTile>) {
    let dim = rng.gen_range(2..=3usize);
    if rng.gen_bool(0.1) {
        let max_side = if dim == 2 { 100 } else { 21 };
        let dims: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=max_side)).collect();
        let extents: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=3)).collect();
        let brick = LatticeTile::boxed(&vec![0; dim], &extents).expect("positive extents");
        return (Region::bounded(dims).expect("positive dims"), vec![brick]);
    }
    let (max_side, span) = if dim == 2 { (8, 3) } else { (4, 2) };
    let dims: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=max_side)).collect();
    let mode = if rng.gen_bool(0.5) { RegionMode::Torus } else { RegionMode::Bounded };
    let ntiles = rng.gen_range(1..=2);
    let tiles = (0..ntiles)
        .map(|_| {
            let size = rng.gen_range(1..=4);
            let mut cells = vec![vec![0i64; dim]];
            for _ in 1..size {
                cells.push((0..dim).map(|_| rng.gen_range(0..span)).collect());
            }
            LatticeTile::from_points(dim, cells).expect("same dimension")
        })
        .collect();
    let volume: i64 = dims.iter().product();
    let hole_rate = rng.gen_range(0.0..0.3);
    let holes: Vec<Vec<i64>> = (0..volume)
        .filter(|_| rng.gen_bool(hole_rate))
        .map(|mut k| {
            let mut p = vec![0; dim];
            for axis in (0..dim).rev() {
                p[axis] = k % dims[axis];
                k /= dims[axis];
            }
            p
        })
        .collect();
    let holes = LatticeTile::from_points(dim, holes).expect("same dimension");
    (Region::new(mode, dims, holes).expect("holes in range"), tiles)
}

/// Compares `solve` with the brute-force oracle; `Ok(None)` when the oracle
/// gave up within its node budget.
pub fn compare_with_oracle(region: &Region, tiles: &[LatticeTile]) -> Result<Option<bool>, String> {
    let Some(expected) = brute_force_tileable(region, tiles, 2_000_000) else {
        return Ok(None);
    };
    let outcome = solve(region, tiles).map_err(|e| e.to_string())?;
    ensure(outcome.is_sat() == expected, || {
        format!("solver says {}, oracle says {expected}", outcome.is_sat())
    })?;
    if let Some(cert) = outcome.certificate() {
        let report = verify(cert);
        ensure(report.ok, || format!("certificate rejected: {:?}", report.violation))?;
    }
    Ok(Some(expected))
}

/// Every 1-D instance `Z_L` or `[0, L)` with `L <= max_exhaustive`, tile
/// `{0, k}` and any hole set, plus hole-free `{0, k}` instances up to
/// `L = 42`.
pub fn one_dimensional_family(max_exhaustive: i64) -> Vec<(Region, LatticeTile)> {
    let mut out = Vec::new();
    for l in 1..=42i64 {
        for mode in [RegionMode::Torus, RegionMode::Bounded] {
            for k in 1..=l {
                let tile = LatticeTile::line([0, k]);
                if l <= max_exhaustive {
                    for mask in 0..(1u64 << l) {
                        let holes = LatticeTile::line((0..l).filter(|&z| mask >> z & 1 == 1));
                        out.push((Region::new(mode, vec![l], holes).expect("valid"), tile.clone()));
                    }
                } else {
                    out.push((Region::new(mode, vec![l], LatticeTile::line([])).expect("valid"), tile));
                }
            }
        }
    }
    out
}

fn oracle_cases(p: &SuiteParams) -> Vec<Case> {
    let seed = p.seed;
    let count = p.oracle_cases;
    let mut out = vec![Case::new("1-D family", "tileforge verify-suite solver-oracle", || {
        for (region, tile) in one_dimensional_family(10) {
            compare_with_oracle(&region, std::slice::from_ref(&tile))
                .map_err(|e| format!("{:?} {:?}: {e}", region, tile))?;
        }
        Ok(())
    })];
    out.extend((0..count).map(|i| {
        Case::new(
            format!("random #{i}"),
            format!("tileforge verify-suite solver-oracle --seed {seed} --cases {count}"),
            move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                loop {
                    let (region, tiles) = random_instance(&mut rng);
                    if compare_with_oracle(&region, &tiles)?.is_some() {
                        return Ok(());
                    }
                }
            },
        )
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blockers_suite() {
        let report = run_suite("blockers", &SuiteParams::default()).unwrap();
        assert_eq!(report.cases, 8);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn towers_suite_n5() {
        let params = SuiteParams { tower_n: vec![5], ..SuiteParams::default() };
        let report = run_suite("towers", &params).unwrap();
        assert_eq!(report.cases, 125);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn unknown_suite_and_ranges() {
        assert!(matches!(
            run_suite("nope", &SuiteParams::default()),
            Err(SuiteError::UnknownSuite(_))
        ));
        let bad = SuiteParams { tower_n: vec![9], ..SuiteParams::default() };
        assert!(matches!(run_suite("towers", &bad), Err(SuiteError::OutOfRange { .. })));
    }

    #[test]
    fn moduli() {
        assert_eq!(gadget_modulus(1), 5);
        assert_eq!(gadget_modulus(2), 5);
        assert_eq!(gadget_modulus(3), 7);
        assert_eq!(gadget_modulus(4), 11);
    }

    #[test]
    fn samples_are_solutions() {
        for (name, r, g) in sample_domino_sets() {
            assert!(check_domino(&r, &g).unwrap(), "{name}");
        }
        assert!(check_triomino(&sample_triomino_set(), &sample_triomino_solution()).unwrap());
    }
}
