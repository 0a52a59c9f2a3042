//! Exact-cover translational tiling of finite boxes and tori.
//!
//! Placements of every tile are enumerated up front and the cover is found
//! with dancing links, always branching on the uncovered cell with the
//! fewest remaining placements. Holes are cells that are already occupied
//! and must not be covered.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::lattice::{LatticeError, LatticeTile, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionMode {
    Bounded,
    Torus,
}

impl fmt::Display for RegionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionMode::Bounded => "bounded",
            RegionMode::Torus => "torus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("region dimensions must be positive, got {0:?}")]
    BadDims(Vec<i64>),
    #[error("hole {0:?} lies outside the region")]
    HoleOutOfBounds(Point),
    #[error("no tiles given")]
    NoTiles,
    #[error("tile {0} is empty")]
    EmptyTile(usize),
    #[error("tile {index} has dimension {found}, region has {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: &'static str, limit: u64 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A finite box `[0, dims)` or the torus `Z^d / dims`, minus `holes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub mode: RegionMode,
    pub dims: Vec<i64>,
    pub holes: LatticeTile,
}

impl Region {
    pub fn new(mode: RegionMode, dims: Vec<i64>, holes: LatticeTile) -> Result<Self, SolverError> {
        if dims.is_empty() || dims.iter().any(|&d| d < 1) {
            return Err(SolverError::BadDims(dims));
        }
        if holes.dim() != dims.len() {
            return Err(LatticeError::DimensionMismatch { left: dims.len(), right: holes.dim() }.into());
        }
        if let Some(h) = holes
            .cells()
            .find(|h| h.iter().zip(&dims).any(|(x, d)| *x < 0 || x >= d))
        {
            return Err(SolverError::HoleOutOfBounds(h.to_vec()));
        }
        Ok(Self { mode, dims, holes })
    }

    pub fn torus(dims: Vec<i64>) -> Result<Self, SolverError> {
        let d = dims.len().max(1);
        Self::new(RegionMode::Torus, dims, LatticeTile::empty(d)?)
    }

    pub fn bounded(dims: Vec<i64>) -> Result<Self, SolverError> {
        let d = dims.len().max(1);
        Self::new(RegionMode::Bounded, dims, LatticeTile::empty(d)?)
    }

    /// Same region with extra holes (duplicates collapse).
    pub fn with_holes(mut self, holes: &LatticeTile) -> Result<Self, SolverError> {
        let merged = self.holes.union(holes)?;
        self.holes = merged;
        Self::new(self.mode, self.dims, self.holes)
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn volume(&self) -> u64 {
        self.dims.iter().map(|&d| d as u64).product()
    }

    /// Number of cells that must be covered.
    pub fn free_cells(&self) -> u64 {
        self.volume() - self.holes.len() as u64
    }

    /// Row-major index of an in-range cell; torus mode reduces first.
    pub fn index(&self, p: &[i64]) -> Option<usize> {
        let mut k = 0usize;
        for (&x, &d) in p.iter().zip(&self.dims) {
            let x = match self.mode {
                RegionMode::Torus => x.rem_euclid(d),
                RegionMode::Bounded if (0..d).contains(&x) => x,
                RegionMode::Bounded => return None,
            };
            k = k * d as usize + x as usize;
        }
        Some(k)
    }

    pub fn point(&self, mut k: usize) -> Point {
        let mut p = vec![0i64; self.dim()];
        for axis in (0..self.dim()).rev() {
            let d = self.dims[axis] as usize;
            p[axis] = (k % d) as i64;
            k /= d;
        }
        p
    }

    fn hole_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.volume() as usize];
        for h in self.holes.cells() {
            mask[self.index(h).expect("validated hole")] = true;
        }
        mask
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    pub tile: usize,
    pub offset: Point,
}

/// A region, a tile table, and placements claimed to partition the region's
/// free cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCertificate {
    pub region: Region,
    pub tiles: Vec<LatticeTile>,
    pub placements: Vec<Placement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownTile { placement: usize, tile: usize },
    DimensionMismatch { placement: usize },
    OutOfBounds { placement: usize, cell: Point },
    CoversHole { placement: usize, cell: Point },
    DoubleCover { cell: Point, first: usize, second: usize },
    Uncovered { cell: Point },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownTile { placement, tile } => {
                write!(f, "placement {placement} names unknown tile {tile}")
            }
            Violation::DimensionMismatch { placement } => {
                write!(f, "placement {placement} has the wrong dimension")
            }
            Violation::OutOfBounds { placement, cell } => {
                write!(f, "placement {placement} leaves the box at {cell:?}")
            }
            Violation::CoversHole { placement, cell } => {
                write!(f, "placement {placement} covers hole {cell:?}")
            }
            Violation::DoubleCover { cell, first, second } => {
                write!(f, "cell {cell:?} covered by placements {first} and {second}")
            }
            Violation::Uncovered { cell } => write!(f, "cell {cell:?} is not covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

impl VerifyReport {
    fn fail(v: Violation) -> Self {
        Self { ok: false, violation: Some(v) }
    }
}

/// Checks that the placements cover every free cell exactly once and never
/// touch a hole or (bounded mode) leave the box. Shares no code with the
/// search.
pub fn verify(cert: &TilingCertificate) -> VerifyReport {
    let region = &cert.region;
    let holes = region.hole_mask();
    const NONE: usize = usize::MAX;
    let mut owner = vec![NONE; holes.len()];
    for (pi, pl) in cert.placements.iter().enumerate() {
        let Some(tile) = cert.tiles.get(pl.tile) else {
            return VerifyReport::fail(Violation::UnknownTile { placement: pi, tile: pl.tile });
        };
        if tile.dim() != region.dim() || pl.offset.len() != region.dim() {
            return VerifyReport::fail(Violation::DimensionMismatch { placement: pi });
        }
        for c in tile.cells() {
            let cell: Point = c.iter().zip(&pl.offset).map(|(x, o)| x + o).collect();
            let Some(k) = region.index(&cell) else {
                return VerifyReport::fail(Violation::OutOfBounds { placement: pi, cell });
            };
            if holes[k] {
                return VerifyReport::fail(Violation::CoversHole { placement: pi, cell: region.point(k) });
            }
            if owner[k] != NONE {
                return VerifyReport::fail(Violation::DoubleCover {
                    cell: region.point(k),
                    first: owner[k],
                    second: pi,
                });
            }
            owner[k] = pi;
        }
    }
    if let Some(k) = (0..owner.len()).find(|&k| !holes[k] && owner[k] == NONE) {
        return VerifyReport::fail(Violation::Uncovered { cell: region.point(k) });
    }
    VerifyReport { ok: true, violation: None }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    /// Largest region volume accepted.
    pub max_cells: u64,
    /// Largest number of candidate placements accepted.
    pub max_placements: u64,
    /// Largest number of branching steps before giving up.
    pub max_nodes: u64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        Self {
            max_cells: 10_000_000,
            max_placements: 20_000_000,
            max_nodes: 2_000_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Sat(TilingCertificate),
    Unsat,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn certificate(&self) -> Option<&TilingCertificate> {
        match self {
            SolveOutcome::Sat(c) => Some(c),
            SolveOutcome::Unsat => None,
        }
    }
}

/// Candidate placements: which cells each one covers.
struct Candidates {
    placements: Vec<Placement>,
    cells: Vec<Vec<usize>>,
}

fn enumerate_placements(
    region: &Region,
    tiles: &[LatticeTile],
    holes: &[bool],
    limits: &SolveLimits,
) -> Result<Candidates, SolverError> {
    let d = region.dim();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Candidates { placements: Vec::new(), cells: Vec::new() };
    for (ti, tile) in tiles.iter().enumerate() {
        let (lo, hi) = tile.bounding_box().expect("non-empty tile");
        // offset search box per axis
        let (min_off, max_off): (Point, Point) = match region.mode {
            RegionMode::Bounded => (
                lo.iter().map(|x| -x).collect(),
                hi.iter().zip(&region.dims).map(|(x, dd)| dd - 1 - x).collect(),
            ),
            RegionMode::Torus => (vec![0; d], region.dims.iter().map(|dd| dd - 1).collect()),
        };
        if min_off.iter().zip(&max_off).any(|(a, b)| a > b) {
            continue;
        }
        let extents: Point = min_off.iter().zip(&max_off).map(|(a, b)| b - a + 1).collect();
        let offsets = LatticeTile::boxed(&min_off, &extents)?;
        let mut cover = Vec::with_capacity(tile.len());
        let mut cell = vec![0i64; d];
        'offsets: for off in offsets.cells() {
            cover.clear();
            for c in tile.cells() {
                for k in 0..d {
                    cell[k] = c[k] + off[k];
                }
                match region.index(&cell) {
                    Some(idx) if !holes[idx] => cover.push(idx),
                    _ => continue 'offsets,
                }
            }
            let mut key = cover.clone();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                // tile wraps onto itself on this torus
                continue;
            }
            if !seen.insert(key.clone()) {
                continue;
            }
            out.placements.push(Placement { tile: ti, offset: off.to_vec() });
            out.cells.push(key);
            if out.placements.len() as u64 > limits.max_placements {
                return Err(SolverError::ResourceLimit {
                    what: "placements",
                    limit: limits.max_placements,
                });
            }
        }
    }
    Ok(out)
}

/// Dancing-links exact cover over primary items only.
struct Dlx {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    col: Vec<usize>,
    row: Vec<usize>,
    size: Vec<usize>,
}

impl Dlx {
    /// Columns are `1..=items`; node 0 is the root.
    fn new(items: usize, rows: &[Vec<usize>]) -> Self {
        let total: usize = items + 1 + rows.iter().map(Vec::len).sum::<usize>();
        let mut x = Dlx {
            left: Vec::with_capacity(total),
            right: Vec::with_capacity(total),
            up: Vec::with_capacity(total),
            down: Vec::with_capacity(total),
            col: Vec::with_capacity(total),
            row: Vec::with_capacity(total),
            size: vec![0; items + 1],
        };
        for i in 0..=items {
            x.left.push(if i == 0 { items } else { i - 1 });
            x.right.push(if i == items { 0 } else { i + 1 });
            x.up.push(i);
            x.down.push(i);
            x.col.push(i);
            x.row.push(usize::MAX);
        }
        for (r, items_of_row) in rows.iter().enumerate() {
            let first = x.col.len();
            let len = items_of_row.len();
            for (k, &item) in items_of_row.iter().enumerate() {
                let c = item + 1;
                let node = x.col.len();
                x.left.push(if k == 0 { first + len - 1 } else { node - 1 });
                x.right.push(if k == len - 1 { first } else { node + 1 });
                let last = x.up[c];
                x.up.push(last);
                x.down.push(c);
                x.down[last] = node;
                x.up[c] = node;
                x.col.push(c);
                x.row.push(r);
                x.size[c] += 1;
            }
        }
        x
    }

    fn cover(&mut self, c: usize) {
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.size[self.col[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.col[j]] += 1;
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[c], self.right[c]);
        self.right[l] = c;
        self.left[r] = c;
    }

    /// Uncovered column with the fewest rows; lowest index on ties.
    fn choose(&self) -> usize {
        let mut best = self.right[0];
        let mut c = self.right[best];
        while c != 0 {
            if self.size[c] < self.size[best] {
                best = c;
                if self.size[c] == 0 {
                    break;
                }
            }
            c = self.right[c];
        }
        best
    }

    fn search(&mut self, max_nodes: u64) -> Result<Option<Vec<usize>>, SolverError> {
        let mut stack: Vec<usize> = Vec::new();
        let mut nodes = 0u64;
        'descend: loop {
            if self.right[0] == 0 {
                return Ok(Some(stack.iter().map(|&n| self.row[n]).collect()));
            }
            let mut c = self.choose();
            self.cover(c);
            let mut node = self.down[c];
            loop {
                if node != c {
                    nodes += 1;
                    if nodes > max_nodes {
                        return Err(SolverError::ResourceLimit { what: "search nodes", limit: max_nodes });
                    }
                    let mut j = self.right[node];
                    while j != node {
                        self.cover(self.col[j]);
                        j = self.right[j];
                    }
                    stack.push(node);
                    continue 'descend;
                }
                self.uncover(c);
                let Some(prev) = stack.pop() else {
                    return Ok(None);
                };
                let mut j = self.left[prev];
                while j != prev {
                    self.uncover(self.col[j]);
                    j = self.left[j];
                }
                c = self.col[prev];
                node = self.down[prev];
            }
        }
    }
}

fn check_tiles(region: &Region, tiles: &[LatticeTile]) -> Result<(), SolverError> {
    if tiles.is_empty() {
        return Err(SolverError::NoTiles);
    }
    for (i, t) in tiles.iter().enumerate() {
        if t.dim() != region.dim() {
            return Err(SolverError::DimensionMismatch { index: i, expected: region.dim(), found: t.dim() });
        }
        if t.is_empty() {
            return Err(SolverError::EmptyTile(i));
        }
    }
    Ok(())
}

pub fn solve(region: &Region, tiles: &[LatticeTile]) -> Result<SolveOutcome, SolverError> {
    solve_with_limits(region, tiles, &SolveLimits::default())
}

/// Finds a tiling of the region's free cells by translates of `tiles`, or
/// proves none exists. Deterministic for fixed inputs.
pub fn solve_with_limits(
    region: &Region,
    tiles: &[LatticeTile],
    limits: &SolveLimits,
) -> Result<SolveOutcome, SolverError> {
    check_tiles(region, tiles)?;
    if region.volume() > limits.max_cells {
        return Err(SolverError::ResourceLimit { what: "region cells", limit: limits.max_cells });
    }
    let holes = region.hole_mask();
    // items are the free cells, renumbered densely
    let mut item_of = vec![usize::MAX; holes.len()];
    let mut items = 0;
    for (k, &h) in holes.iter().enumerate() {
        if !h {
            item_of[k] = items;
            items += 1;
        }
    }
    let cert = |placements: Vec<Placement>| TilingCertificate {
        region: region.clone(),
        tiles: tiles.to_vec(),
        placements,
    };
    if items == 0 {
        return Ok(SolveOutcome::Sat(cert(Vec::new())));
    }
    let cand = enumerate_placements(region, tiles, &holes, limits)?;
    let rows: Vec<Vec<usize>> = cand
        .cells
        .iter()
        .map(|cells| cells.iter().map(|&k| item_of[k]).collect())
        .collect();
    let mut dlx = Dlx::new(items, &rows);
    match dlx.search(limits.max_nodes)? {
        None => Ok(SolveOutcome::Unsat),
        Some(mut chosen) => {
            chosen.sort_unstable();
            let placements = chosen.into_iter().map(|r| cand.placements[r].clone()).collect();
            Ok(SolveOutcome::Sat(cert(placements)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_1d(n: i64, holes: &[i64]) -> Region {
        Region::new(RegionMode::Torus, vec![n], LatticeTile::line(holes.iter().copied())).unwrap()
    }

    #[test]
    fn one_dimensional_examples() {
        let d = LatticeTile::line([0, 1]);
        let sat = solve(&torus_1d(6, &[1, 4]), std::slice::from_ref(&d)).unwrap();
        let cert = sat.certificate().unwrap();
        assert!(verify(cert).ok);
        assert_eq!(cert.placements.len(), 2);

        assert_eq!(solve(&torus_1d(6, &[0, 2, 3, 5]), std::slice::from_ref(&d)).unwrap(), SolveOutcome::Unsat);

        // every cell already occupied
        let full = solve(&torus_1d(6, &[0, 1, 2, 3, 4, 5]), &[d]).unwrap();
        assert!(full.certificate().unwrap().placements.is_empty());
    }

    #[test]
    fn domino_on_small_torus() {
        let region = Region::torus(vec![2, 2]).unwrap();
        let domino = LatticeTile::from_points(2, [[0, 0], [1, 0]]).unwrap();
        let out = solve(&region, &[domino]).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.placements.len(), 2);
        assert!(verify(cert).ok);
    }

    #[test]
    fn bounded_box_respects_edges() {
        let region = Region::bounded(vec![3]).unwrap();
        let d = LatticeTile::line([0, 1]);
        assert_eq!(solve(&region, std::slice::from_ref(&d)).unwrap(), SolveOutcome::Unsat);
        let region = Region::bounded(vec![4]).unwrap();
        assert!(solve(&region, &[d]).unwrap().is_sat());
    }

    #[test]
    fn self_wrapping_tile_is_never_placed() {
        // {0,2} folds onto one cell on the 2-torus
        let region = Region::torus(vec![2]).unwrap();
        assert_eq!(
            solve(&region, &[LatticeTile::line([0, 2])]).unwrap(),
            SolveOutcome::Unsat
        );
    }

    #[test]
    fn verify_catches_double_cover_and_gaps() {
        let region = torus_1d(4, &[]);
        let d = LatticeTile::line([0, 1]);
        let mut cert = TilingCertificate {
            region,
            tiles: vec![d],
            placements: vec![
                Placement { tile: 0, offset: vec![0] },
                Placement { tile: 0, offset: vec![2] },
            ],
        };
        assert!(verify(&cert).ok);
        cert.placements.push(Placement { tile: 0, offset: vec![2] });
        assert!(matches!(
            verify(&cert).violation,
            Some(Violation::DoubleCover { first: 1, second: 2, .. })
        ));
        cert.placements.truncate(1);
        assert!(matches!(verify(&cert).violation, Some(Violation::Uncovered { .. })));
        cert.placements = vec![Placement { tile: 3, offset: vec![0] }];
        assert!(matches!(verify(&cert).violation, Some(Violation::UnknownTile { .. })));
    }

    #[test]
    fn verify_catches_holes_and_bounds() {
        let region = Region::new(RegionMode::Bounded, vec![4], LatticeTile::line([3])).unwrap();
        let cert = TilingCertificate {
            region,
            tiles: vec![LatticeTile::line([0, 1])],
            placements: vec![
                Placement { tile: 0, offset: vec![0] },
                Placement { tile: 0, offset: vec![2] },
            ],
        };
        assert!(matches!(verify(&cert).violation, Some(Violation::CoversHole { .. })));
        let mut c2 = cert.clone();
        c2.placements[1].offset = vec![4];
        assert!(matches!(verify(&c2).violation, Some(Violation::OutOfBounds { .. })));
    }

    #[test]
    fn region_validation() {
        assert!(matches!(Region::torus(vec![0]), Err(SolverError::BadDims(_))));
        assert!(matches!(
            Region::new(RegionMode::Torus, vec![3], LatticeTile::line([5])),
            Err(SolverError::HoleOutOfBounds(_))
        ));
    }

    #[test]
    fn resource_limits_are_distinct_from_unsat() {
        let region = Region::torus(vec![12, 12]).unwrap();
        let t = LatticeTile::from_points(2, [[0, 0], [1, 0], [0, 1]]).unwrap();
        let limits = SolveLimits { max_nodes: 3, ..SolveLimits::default() };
        assert!(matches!(
            solve_with_limits(&region, std::slice::from_ref(&t), &limits),
            Err(SolverError::ResourceLimit { what: "search nodes", .. })
        ));
        let limits = SolveLimits { max_cells: 100, ..SolveLimits::default() };
        assert!(matches!(
            solve_with_limits(&region, &[t], &limits),
            Err(SolverError::ResourceLimit { what: "region cells", .. })
        ));
    }

    #[test]
    fn solve_input_errors() {
        let region = Region::torus(vec![4]).unwrap();
        assert_eq!(solve(&region, &[]).unwrap_err(), SolverError::NoTiles);
        let e = LatticeTile::empty(1).unwrap();
        assert_eq!(solve(&region, &[e]).unwrap_err(), SolverError::EmptyTile(0));
        let t2 = LatticeTile::from_points(2, [[0, 0]]).unwrap();
        assert!(matches!(
            solve(&region, &[t2]),
            Err(SolverError::DimensionMismatch { .. })
        ));
    }
}
