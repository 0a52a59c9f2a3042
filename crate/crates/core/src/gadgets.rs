//! Blockers, towers, the filler and the brick, and tiling certificates
//! realized from triomino solutions.
//!
//! Coordinates follow the construction exactly: the empty brick occupies
//! `[0, 3m+2) x [0, 5) x [0, 6n)`, pole `i` (1-based) is centred at
//! `(3i-1, 2)`, and bricks are placed on `((3m+2)x, 5y, 6z)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::boardgames::{
    first_triomino_violation, gcd, orbit_closure, validate_cyclic, BoardError, CyclicTriominoSet,
    GridAssignment, Triple,
};
use crate::lattice::{LatticeError, LatticeTile, Point};
use crate::solver::{
    solve, verify, Placement, Region, RegionMode, SolveOutcome, SolverError, TilingCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("gcd({0}, 6) != 1")]
    NotCoprimeToSix(u32),
    #[error("triomino set is not cyclic")]
    NotCyclic,
    #[error("tower cells overlap at {0:?}")]
    TowerOverlap(Point),
    #[error("bump {0:?} collides with an existing brick cell")]
    BumpCollision(Point),
    #[error("dent {0:?} is not a brick cell")]
    DentMissing(Point),
    #[error("grid violates rule S{rule} at ({x}, {y})")]
    NotASolution { x: usize, y: usize, rule: usize },
    #[error("grid value {0} is outside Z_n")]
    ValueOutOfRange(u32),
    #[error("pole column at ({x}, {y}) cannot be filled")]
    ColumnUnsolvable { x: i64, y: i64 },
    #[error("inconsistent construction: {0}")]
    Internal(String),
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockerKind {
    Alpha,
    Beta,
    Gamma,
}

impl BlockerKind {
    pub const ALL: [BlockerKind; 3] = [BlockerKind::Alpha, BlockerKind::Beta, BlockerKind::Gamma];
}

impl fmt::Display for BlockerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockerKind::Alpha => "alpha",
            BlockerKind::Beta => "beta",
            BlockerKind::Gamma => "gamma",
        })
    }
}

impl FromStr for BlockerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alpha" => Ok(BlockerKind::Alpha),
            "beta" => Ok(BlockerKind::Beta),
            "gamma" => Ok(BlockerKind::Gamma),
            other => Err(format!("unknown blocker kind {other:?} (expected alpha, beta or gamma)")),
        }
    }
}

/// A 1-D tile of the period-6 blocker system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocker {
    pub kind: BlockerKind,
    pub on: bool,
    pub cells: LatticeTile,
}

fn blocker_cells(kind: BlockerKind, on: bool) -> &'static [i64] {
    match (kind, on) {
        (BlockerKind::Alpha, false) => &[],
        (BlockerKind::Alpha, true) => &[0, 5],
        (BlockerKind::Beta, false) => &[1, 4],
        (BlockerKind::Beta, true) => &[],
        (BlockerKind::Gamma, false) => &[],
        (BlockerKind::Gamma, true) => &[2, 3],
    }
}

pub fn blocker(kind: BlockerKind, on: bool) -> Blocker {
    Blocker { kind, on, cells: LatticeTile::line(blocker_cells(kind, on).iter().copied()) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockerVerdict {
    /// On/off states of alpha, beta, gamma.
    pub states: [bool; 3],
    pub tileable: bool,
}

/// Whether `{0,1}` tiles `Z_6` minus `alpha_i ∪ beta_j ∪ gamma_k`, for all
/// eight states in lexicographic order.
pub fn blocker_truth_table() -> Result<Vec<BlockerVerdict>, GadgetError> {
    let domino = LatticeTile::line([0, 1]);
    let mut out = Vec::with_capacity(8);
    for bits in 0..8u8 {
        let states = [bits & 4 != 0, bits & 2 != 0, bits & 1 != 0];
        let obstacles: Vec<i64> = BlockerKind::ALL
            .iter()
            .zip(states)
            .flat_map(|(&k, on)| blocker_cells(k, on).iter().copied())
            .collect();
        let region = Region::torus(vec![6])?.with_holes(&LatticeTile::line(obstacles))?;
        let tileable = solve(&region, std::slice::from_ref(&domino))?.is_sat();
        out.push(BlockerVerdict { states, tileable });
    }
    Ok(out)
}

fn require_coprime(n: u32) -> Result<(), GadgetError> {
    if n == 0 || gcd(n as usize, 6) != 1 {
        return Err(GadgetError::NotCoprimeToSix(n));
    }
    Ok(())
}

/// `⋃_{i<n} (n · blocker_{δ(i)} + 6i)` with `δ(i) = [i = 0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub kind: BlockerKind,
    pub n: u32,
    pub cells: LatticeTile,
}

pub fn tower(kind: BlockerKind, n: u32) -> Result<Tower, GadgetError> {
    require_coprime(n)?;
    let parts: Vec<LatticeTile> = (0..n as i64)
        .map(|i| blocker(kind, i == 0).cells.scale(n as i64)?.translate(&[6 * i]))
        .collect::<Result<_, _>>()?;
    let cells = LatticeTile::disjoint_union_all(1, &parts).map_err(|e| match e {
        LatticeError::TilesOverlap(p) => GadgetError::TowerOverlap(p),
        other => other.into(),
    })?;
    Ok(Tower { kind, n, cells })
}

/// Tiles `Z_{6n}` minus `obstacles` with `{0, n}`; returns the placement
/// offsets, or `None` when no tiling exists.
pub fn solve_column(n: u32, obstacles: &[i64]) -> Result<Option<Vec<i64>>, GadgetError> {
    let period = 6 * n as i64;
    let holes = LatticeTile::line(obstacles.iter().map(|z| z.rem_euclid(period)));
    let region = Region::torus(vec![period])?.with_holes(&holes)?;
    let tile = LatticeTile::line([0, n as i64]);
    Ok(match solve(&region, std::slice::from_ref(&tile))? {
        SolveOutcome::Sat(cert) => Some(cert.placements.iter().map(|p| p.offset[0]).collect()),
        SolveOutcome::Unsat => None,
    })
}

/// Whether `{0, n}` tiles `Z_{6n}` minus the towers shifted by `6a, 6b, 6c`.
pub fn tower_check(n: u32, a: i64, b: i64, c: i64) -> Result<bool, GadgetError> {
    let mut obstacles = Vec::new();
    for (kind, shift) in BlockerKind::ALL.into_iter().zip([a, b, c]) {
        obstacles.extend(tower(kind, n)?.cells.cells().map(|z| z[0] + 6 * shift));
    }
    Ok(solve_column(n, &obstacles)?.is_some())
}

/// `K̄_1..K̄_4`: the complement of each `S_i` restricted to first entry 0,
/// in lexicographic order.
pub fn representatives(s: &CyclicTriominoSet) -> Result<[Vec<Triple>; 4], GadgetError> {
    if !validate_cyclic(s) {
        return Err(GadgetError::NotCyclic);
    }
    let mut out: [Vec<Triple>; 4] = Default::default();
    for (rule, reps) in out.iter_mut().enumerate() {
        let complement = s.n.pow(3) as usize - s.rule_len(rule);
        *reps = crate::boardgames::all_triples(s.n)
            .into_iter()
            .filter(|&t| t[0] == 0 && !s.contains(rule, t))
            .collect();
        let orbit = orbit_closure(s.n, reps);
        if orbit.len() != s.n as usize * reps.len() || orbit.len() != complement {
            return Err(GadgetError::Internal(format!(
                "representatives of the complement of S{} do not split into orbits",
                rule + 1
            )));
        }
    }
    Ok(out)
}

/// One forbidden triple and the rule group it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerLayout {
    /// 1-based pole index.
    pub index: usize,
    /// `g(i)` in `1..=4`.
    pub group: usize,
    pub triple: Triple,
}

/// The filler and the brick encoding one cyclic triomino set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSet {
    pub n: u32,
    pub m: usize,
    pub layout: Vec<TowerLayout>,
    pub filler: LatticeTile,
    pub empty_brick: LatticeTile,
    pub brick: LatticeTile,
    /// Decorated 3-scaled variants, present after [`decorate_gadgets`].
    pub brick3: Option<LatticeTile>,
    pub filler3: Option<LatticeTile>,
}

impl GadgetSet {
    /// Extents of the brick's cuboid: `(3m+2, 5, 6n)`.
    pub fn brick_dims(&self) -> [i64; 3] {
        brick_dims(self.m, self.n)
    }

    /// Centre of pole `i` (1-based) in brick coordinates.
    pub fn pole_center(&self, i: usize) -> (i64, i64) {
        (3 * i as i64 - 1, 2)
    }
}

fn brick_dims(m: usize, n: u32) -> [i64; 3] {
    [3 * m as i64 + 2, 5, 6 * n as i64]
}

/// `O = {-1,0,1}^2 \ {(0,0)}`.
pub fn ring() -> LatticeTile {
    let cells = (-1..=1)
        .flat_map(|x| (-1..=1).map(move |y| [x, y]))
        .filter(|&[x, y]| (x, y) != (0, 0));
    LatticeTile::from_points(2, cells).expect("2-D points")
}

fn ring_times(line: &LatticeTile) -> LatticeTile {
    let r = ring();
    let cells = r
        .cells()
        .flat_map(|o| line.cells().map(move |z| [o[0], o[1], z[0]]))
        .collect::<Vec<_>>();
    LatticeTile::from_points(3, cells).expect("3-D points")
}

/// `O × {0, n}`.
pub fn filler(n: u32) -> LatticeTile {
    ring_times(&LatticeTile::line([0, n as i64]))
}

/// The `(3m+2) × 5 × 6n` cuboid with `m` ring-shaped channels carved out.
pub fn empty_brick(m: usize, n: u32) -> Result<LatticeTile, GadgetError> {
    let dims = brick_dims(m, n);
    let cuboid = LatticeTile::boxed(&[0, 0, 0], &dims)?;
    let channel = ring_times(&LatticeTile::line(0..dims[2]));
    let mut carved = Vec::with_capacity(m);
    for i in 0..m as i64 {
        carved.push(channel.translate(&[3 * i + 2, 2, 0])?);
    }
    let carved = LatticeTile::disjoint_union_all(3, &carved)?;
    Ok(cuboid.difference(&carved)?)
}

fn tower_kind_for(q: usize) -> BlockerKind {
    match q {
        0 => BlockerKind::Alpha,
        1 | 3 | 5 => BlockerKind::Beta,
        _ => BlockerKind::Gamma,
    }
}

/// `T_{q,i,j}` for `q` in `0..=5`: a ring tower placed into pole `i` of
/// this brick (`q = 0`) or of the neighbour in direction `u_q`.
pub fn tower_placement(q: usize, i: usize, j: u32, m: usize, n: u32) -> Result<LatticeTile, GadgetError> {
    if q > 5 {
        return Err(GadgetError::Internal(format!("tower index {q} out of range")));
    }
    let (i, m, j) = (i as i64, m as i64, j as i64);
    let (x, y) = match q {
        0 => (3 * i - 1, 2),
        1 | 5 => (3 * i - 3 * m - 3, 2),
        2 => (3 * i - 1, -3),
        3 => (3 * i + 3 * m + 1, 2),
        _ => (3 * i - 1, 7),
    };
    let t = tower(tower_kind_for(q), n)?;
    Ok(ring_times(&t.cells).translate(&[x, y, -6 * j])?)
}

/// Builds the filler and brick for a cyclic triomino set over `Z_n` with
/// `gcd(n, 6) = 1`.
pub fn build_gadgets(s: &CyclicTriominoSet) -> Result<GadgetSet, GadgetError> {
    require_coprime(s.n)?;
    let reps = representatives(s)?;
    let mut layout = Vec::new();
    for (g, group) in reps.iter().enumerate() {
        for &triple in group {
            layout.push(TowerLayout { index: layout.len() + 1, group: g + 1, triple });
        }
    }
    build_gadgets_from_layout(s.n, layout)
}

/// Builds the gadgets for an explicit tower layout; `index` fields are
/// taken as given, so adversarial layouts can be tested for overlaps.
pub fn build_gadgets_from_layout(n: u32, layout: Vec<TowerLayout>) -> Result<GadgetSet, GadgetError> {
    require_coprime(n)?;
    let m = layout.len();
    let empty = empty_brick(m, n)?;
    let mut parts = vec![empty.clone()];
    for entry in &layout {
        if !(1..=4).contains(&entry.group) {
            return Err(GadgetError::Internal(format!("group {} out of range", entry.group)));
        }
        let [a, b, c] = entry.triple;
        parts.push(tower_placement(0, entry.index, a, m, n)?);
        parts.push(tower_placement(entry.group, entry.index, b, m, n)?);
        parts.push(tower_placement(entry.group + 1, entry.index, c, m, n)?);
    }
    let brick = LatticeTile::disjoint_union_all(3, &parts).map_err(|e| match e {
        LatticeError::TilesOverlap(p) => GadgetError::TowerOverlap(p),
        other => other.into(),
    })?;
    Ok(GadgetSet {
        n,
        m,
        layout,
        filler: filler(n),
        empty_brick: empty,
        brick,
        brick3: None,
        filler3: None,
    })
}

/// Bump cells added to and dent cells removed from the 3-scaled brick,
/// grouped by the axis whose neighbour they interlock with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoration {
    pub bumps: [Vec<Point>; 3],
    pub dents: [Vec<Point>; 3],
}

impl Decoration {
    pub fn new(m: usize, n: u32) -> Self {
        let m = m as i64;
        let layers: Vec<i64> = (0..n as i64).map(|i| 1 + 18 * i).collect();
        Self {
            bumps: [
                layers.iter().map(|&z| vec![-1, 1, z]).collect(),
                layers.iter().map(|&z| vec![1, -1, z]).collect(),
                vec![vec![1, 1, -1]],
            ],
            dents: [
                layers.iter().map(|&z| vec![9 * m + 5, 1, z]).collect(),
                layers.iter().map(|&z| vec![1, 14, z]).collect(),
                vec![vec![1, 1, 18 * n as i64 - 1]],
            ],
        }
    }

    pub fn all_bumps(&self) -> impl Iterator<Item = &Point> {
        self.bumps.iter().flatten()
    }

    pub fn all_dents(&self) -> impl Iterator<Item = &Point> {
        self.dents.iter().flatten()
    }
}

/// Adds the 3-scaled, bump/dent decorated brick and filler.
pub fn decorate_gadgets(g: &GadgetSet) -> Result<GadgetSet, GadgetError> {
    let deco = Decoration::new(g.m, g.n);
    let inflated = g.brick.inflate(3)?;
    if let Some(b) = deco.all_bumps().find(|b| inflated.contains(b)) {
        return Err(GadgetError::BumpCollision(b.clone()));
    }
    if let Some(d) = deco.all_dents().find(|d| !inflated.contains(d)) {
        return Err(GadgetError::DentMissing(d.clone()));
    }
    let bumps = LatticeTile::from_points(3, deco.all_bumps().cloned())?;
    let dents = LatticeTile::from_points(3, deco.all_dents().cloned())?;
    let brick3 = inflated.union(&bumps)?.difference(&dents)?;
    if brick3.len() != 27 * g.brick.len() {
        return Err(GadgetError::Internal("3-brick cell count".into()));
    }
    Ok(GadgetSet { brick3: Some(brick3), filler3: Some(g.filler.inflate(3)?), ..g.clone() })
}

/// Interlocking of a 3-brick with its neighbour along one lattice axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BumpDentCheck {
    pub shift: Point,
    /// The neighbour's bumps are exactly this brick's dents.
    pub matched: bool,
    /// The two bricks share no cell.
    pub disjoint: bool,
}

/// Checks that translates of the 3-brick by `(3(3m+2),0,0)`, `(0,15,0)`
/// and `(0,0,18n)` interlock with it.
pub fn bump_dent_report(g: &GadgetSet) -> Result<Vec<BumpDentCheck>, GadgetError> {
    let g3 = match &g.brick3 {
        Some(_) => g.clone(),
        None => decorate_gadgets(g)?,
    };
    let brick3 = g3.brick3.as_ref().expect("decorated");
    let deco = Decoration::new(g.m, g.n);
    let [dx, dy, dz] = g.brick_dims().map(|d| 3 * d);
    let shifts = [vec![dx, 0, 0], vec![0, dy, 0], vec![0, 0, dz]];
    let mut out = Vec::new();
    for (axis, shift) in shifts.into_iter().enumerate() {
        let mut moved: Vec<Point> = deco.bumps[axis]
            .iter()
            .map(|b| b.iter().zip(&shift).map(|(x, s)| x + s).collect())
            .collect();
        moved.sort();
        let mut dents = deco.dents[axis].clone();
        dents.sort();
        let neighbour = brick3.translate(&shift)?;
        out.push(BumpDentCheck {
            matched: moved == dents,
            disjoint: brick3.is_disjoint(&neighbour),
            shift,
        });
    }
    Ok(out)
}

/// Lattice offset of the brick one step from the origin brick along `u_q`
/// (`q` in `1..=5`, with `u_5 = u_1`).
fn neighbour_offset(q: usize, dims: [i64; 3]) -> [i64; 2] {
    match q {
        1 | 5 => [dims[0], 0],
        2 => [0, dims[1]],
        3 => [-dims[0], 0],
        _ => [0, -dims[1]],
    }
}

/// The 1-D instance seen by pole `i` when this brick sits at height `6 z0`
/// and its two interacting neighbours at `6 z1` and `6 z2`: the heights
/// (mod `6n`) of all brick cells in one ring cell of that pole.
pub fn pole_column(g: &GadgetSet, i: usize, heights: [i64; 3]) -> Result<Vec<i64>, GadgetError> {
    let entry = g
        .layout
        .iter()
        .find(|e| e.index == i)
        .ok_or_else(|| GadgetError::Internal(format!("no pole {i}")))?;
    let dims = g.brick_dims();
    let origins = [
        [0, 0],
        neighbour_offset(entry.group, dims),
        neighbour_offset(entry.group + 1, dims),
    ];
    let (cx, cy) = g.pole_center(i);
    let period = dims[2];
    let mut zs = Vec::new();
    for (origin, h) in origins.iter().zip(heights) {
        for c in g.brick.cells() {
            if c[0] + origin[0] == cx + 1 && c[1] + origin[1] == cy {
                zs.push((c[2] + 6 * h).rem_euclid(period));
            }
        }
    }
    zs.sort_unstable();
    Ok(zs)
}

/// Builds a certificate that the filler and brick tile the torus
/// `((3m+2) p_x, 5 p_y, 6n)` following the triomino solution `t`; with
/// `scaled`, the same tiling of the 3-filler and 3-brick on the 3× torus.
pub fn realize_tiling(
    s: &CyclicTriominoSet,
    g: &GadgetSet,
    t: &GridAssignment,
    scaled: bool,
) -> Result<TilingCertificate, GadgetError> {
    if let Some(&v) = t.values().iter().find(|&&v| v >= s.n) {
        return Err(GadgetError::ValueOutOfRange(v));
    }
    if let Some((x, y, rule)) = first_triomino_violation(s, t)? {
        return Err(GadgetError::NotASolution { x, y, rule });
    }
    if s.n != g.n {
        return Err(GadgetError::Internal(format!("gadget modulus {} != set modulus {}", g.n, s.n)));
    }
    let bd = g.brick_dims();
    let dims = vec![bd[0] * t.px as i64, bd[1] * t.py as i64, bd[2]];
    let region = Region::torus(dims.clone())?;
    let mut owner = vec![false; region.volume() as usize];
    let mut placements = Vec::new();
    for y in 0..t.py as i64 {
        for x in 0..t.px as i64 {
            let offset = vec![bd[0] * x, bd[1] * y, 6 * t.get(x, y) as i64];
            for c in g.brick.cells() {
                let p: Point = c.iter().zip(&offset).map(|(a, b)| a + b).collect();
                let k = region.index(&p).expect("torus index");
                if std::mem::replace(&mut owner[k], true) {
                    return Err(GadgetError::Internal(format!("bricks overlap at {:?}", region.point(k))));
                }
            }
            placements.push(Placement { tile: 0, offset });
        }
    }
    let bricks = placements.len();
    let r = ring();
    for y in 0..t.py as i64 {
        for x in 0..t.px as i64 {
            for i in 1..=g.m {
                let (px, py) = g.pole_center(i);
                let (cx, cy) = (bd[0] * x + px, bd[1] * y + py);
                let column = |dx: i64, dy: i64| -> Vec<i64> {
                    (0..bd[2])
                        .filter(|&z| owner[region.index(&[cx + dx, cy + dy, z]).expect("torus index")])
                        .collect()
                };
                let obstacles = column(1, 0);
                if r.cells().any(|o| column(o[0], o[1]) != obstacles) {
                    return Err(GadgetError::Internal(format!("ring cells of pole ({cx}, {cy}) differ")));
                }
                let zs = solve_column(g.n, &obstacles)?
                    .ok_or(GadgetError::ColumnUnsolvable { x: cx, y: cy })?;
                placements.extend(zs.into_iter().map(|z| Placement { tile: 1, offset: vec![cx, cy, z] }));
            }
        }
    }
    let fillers = placements.len() - bricks;
    if region.volume() != (bricks * g.brick.len() + fillers * g.filler.len()) as u64 {
        return Err(GadgetError::Internal("cell accounting does not match the torus volume".into()));
    }
    let cert = if scaled {
        let g3 = match &g.brick3 {
            Some(_) => g.clone(),
            None => decorate_gadgets(g)?,
        };
        TilingCertificate {
            region: Region::torus(dims.iter().map(|d| 3 * d).collect())?,
            tiles: vec![g3.brick3.expect("decorated"), g3.filler3.expect("decorated")],
            placements: placements
                .into_iter()
                .map(|p| Placement { tile: p.tile, offset: p.offset.iter().map(|v| 3 * v).collect() })
                .collect(),
        }
    } else {
        TilingCertificate { region, tiles: vec![g.brick.clone(), g.filler.clone()], placements }
    };
    let report = verify(&cert);
    if !report.ok {
        return Err(GadgetError::Internal(format!(
            "realized certificate fails verification: {}",
            report.violation.map(|v| v.to_string()).unwrap_or_default()
        )));
    }
    Ok(cert)
}

/// Outcome of the hole argument on one region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillerHoleReport {
    /// Some `v` with `{-1,0,1}^2 × {0} + v` inside the free cells.
    pub witness: Option<Point>,
    pub tileable: bool,
}

impl FillerHoleReport {
    /// The lemma's claim on this region: a witness rules out a tiling.
    pub fn holds(&self) -> bool {
        self.witness.is_none() || !self.tileable
    }
}

/// First `v` (row-major) such that the full `3 × 3 × 1` plate around `v`
/// is free in the region.
pub fn plate_witness(region: &Region) -> Option<Point> {
    if region.dim() != 3 {
        return None;
    }
    let free = |p: &[i64]| -> bool {
        region.index(p).is_some_and(|k| !region.holes.contains(&region.point(k)))
    };
    (0..region.volume() as usize).map(|k| region.point(k)).find(|v| {
        (-1..=1).all(|dx| (-1..=1).all(|dy| free(&[v[0] + dx, v[1] + dy, v[2]])))
    })
}

/// Runs the solver with `O × {0, n}` alone on the region.
pub fn filler_hole_check(filler_n: u32, region: &Region) -> Result<FillerHoleReport, GadgetError> {
    let witness = plate_witness(region);
    let tileable = solve(region, &[filler(filler_n)])?.is_sat();
    Ok(FillerHoleReport { witness, tileable })
}

/// A bounded box region.
pub fn box_region(dims: [i64; 3]) -> Result<Region, GadgetError> {
    Ok(Region::new(RegionMode::Bounded, dims.to_vec(), LatticeTile::empty(3)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// n = 5, one forbidden orbit per rule, constant 0 allowed.
    pub(crate) fn sample_set() -> CyclicTriominoSet {
        CyclicTriominoSet::from_forbidden(
            5,
            [vec![[0, 1, 2]], vec![[0, 2, 1]], vec![[0, 1, 1]], vec![[0, 3, 4]]],
        )
        .unwrap()
    }

    #[test]
    fn blockers_match_table() {
        assert_eq!(blocker(BlockerKind::Alpha, true).cells, LatticeTile::line([0, 5]));
        assert_eq!(blocker(BlockerKind::Beta, false).cells, LatticeTile::line([1, 4]));
        assert!(blocker(BlockerKind::Gamma, false).cells.is_empty());
    }

    #[test]
    fn truth_table_has_one_failure() {
        let table = blocker_truth_table().unwrap();
        let failures: Vec<_> = table.iter().filter(|v| !v.tileable).collect();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].states, [true, true, true]);
    }

    #[test]
    fn tower_expansions() {
        assert_eq!(tower(BlockerKind::Alpha, 5).unwrap().cells, LatticeTile::line([0, 25]));
        assert_eq!(
            tower(BlockerKind::Beta, 5).unwrap().cells,
            LatticeTile::line([11, 26, 17, 32, 23, 38, 29, 44])
        );
        assert_eq!(tower(BlockerKind::Alpha, 4).unwrap_err(), GadgetError::NotCoprimeToSix(4));
    }

    #[test]
    fn tower_check_examples() {
        assert!(!tower_check(5, 0, 0, 0).unwrap());
        assert!(tower_check(5, 1, 0, 2).unwrap());
        assert!(!tower_check(7, 3, 10, 17).unwrap());
    }

    #[test]
    fn representatives_canon() {
        let reps = representatives(&sample_set()).unwrap();
        assert_eq!(reps[0], vec![[0, 1, 2]]);
        let full = CyclicTriominoSet::permissive(5).unwrap();
        assert!(representatives(&full).unwrap().iter().all(Vec::is_empty));
    }

    #[test]
    fn brick_sizes() {
        let g = build_gadgets(&sample_set()).unwrap();
        assert_eq!(g.m, 4);
        assert_eq!(g.brick_dims(), [14, 5, 30]);
        assert_eq!(g.empty_brick.len(), 1140);
        assert_eq!(g.filler.len(), 16);
        assert!(!g.filler.is_connected().unwrap());
        assert!(g.brick.flat_coords().len() > g.empty_brick.flat_coords().len());
        assert!(g.empty_brick.difference(&g.brick).unwrap().is_empty());
    }

    #[test]
    fn t2_formula() {
        let t = tower_placement(2, 3, 1, 4, 5).unwrap();
        let gamma = tower(BlockerKind::Gamma, 5).unwrap();
        let expected = ring_times(&gamma.cells).translate(&[8, -3, -6]).unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn decoration_preserves_count_and_interlocks() {
        let g = decorate_gadgets(&build_gadgets(&sample_set()).unwrap()).unwrap();
        assert_eq!(g.filler3.as_ref().unwrap().len(), 432);
        assert_eq!(g.brick3.as_ref().unwrap().len(), 27 * g.brick.len());
        for check in bump_dent_report(&g).unwrap() {
            assert!(check.matched && check.disjoint, "{check:?}");
        }
    }

    #[test]
    fn realize_constant_solution() {
        let s = sample_set();
        let g = build_gadgets(&s).unwrap();
        let cert = realize_tiling(&s, &g, &GridAssignment::constant(0), false).unwrap();
        assert_eq!(cert.region.dims, vec![14, 5, 30]);
        assert_eq!(cert.placements.iter().filter(|p| p.tile == 0).count(), 1);
        assert!(verify(&cert).ok);
    }

    #[test]
    fn realize_rejects_non_solutions() {
        let s = sample_set();
        let g = build_gadgets(&s).unwrap();
        // (0, 1, 2) at every position is in the orbit of K̄_1's (0,1,2)
        let t = GridAssignment::from_rows(&[vec![0, 1, 2, 3, 4], vec![2, 3, 4, 0, 1]]).unwrap();
        assert!(matches!(
            realize_tiling(&s, &g, &t, false),
            Err(GadgetError::NotASolution { .. })
        ));
    }

    #[test]
    fn forbidden_triple_column_is_unsolvable() {
        let g = build_gadgets(&sample_set()).unwrap();
        for entry in &g.layout {
            let [a, b, c] = entry.triple.map(i64::from);
            let blocked = pole_column(&g, entry.index, [a, b, c]).unwrap();
            assert!(solve_column(5, &blocked).unwrap().is_none(), "{entry:?}");
            let shifted = pole_column(&g, entry.index, [a + 3, b + 3, c + 3]).unwrap();
            assert!(solve_column(5, &shifted).unwrap().is_none());
            let free = pole_column(&g, entry.index, [a, b + 1, c]).unwrap();
            assert!(solve_column(5, &free).unwrap().is_some());
        }
    }

    #[test]
    fn filler_hole_small_box() {
        let region = box_region([3, 3, 2]).unwrap();
        let report = filler_hole_check(1, &region).unwrap();
        assert_eq!(report.witness, Some(vec![1, 1, 0]));
        assert!(!report.tileable && report.holds());
    }

    #[test]
    fn empty_layout_is_plain_cuboid() {
        let g = build_gadgets(&CyclicTriominoSet::permissive(5).unwrap()).unwrap();
        assert_eq!(g.m, 0);
        assert_eq!(g.brick.len(), 2 * 5 * 30);
        let cert = realize_tiling(
            &CyclicTriominoSet::permissive(5).unwrap(),
            &g,
            &GridAssignment::from_rows(&[vec![0, 3]]).unwrap(),
            false,
        )
        .unwrap();
        assert_eq!(cert.placements.len(), 2);
    }
}
