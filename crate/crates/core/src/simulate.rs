//! Simulating disconnected tiles with connected ones.
//!
//! The S tile places the `m` decorated parts of a `(m+2)`-cube partition on
//! the `m` shell cells of an `l`-cube, each blown up by the period `3m+6`.
//! It tiles `Z^d` by the lattice `(3m+6) Z^d`, and a tile `P` is replaced by
//! the connected tile `(3m+6) P (+) S`.

use thiserror::Error;

use crate::lattice::{CellIndex, LatticeError, LatticeTile, Point, UnitVector};
use crate::partition::{partition_cube, DecoratedPartition, PartitionError};

/// Default materialization budget for [`simulate_set`], in cells.
pub const DEFAULT_MAX_CELLS: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulateError {
    #[error("frame side must be at least 3, got {0}")]
    FrameTooSmall(i64),
    #[error("no input tiles")]
    NoTiles,
    #[error("input tile {0} is empty")]
    EmptyTile(usize),
    #[error("input tiles must share a dimension >= 3 (got {0})")]
    BadDimension(usize),
    #[error("output would hold {needed} cells, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `l^d - (l-2)^d`, the number of shell cells of an `l`-cube.
pub fn shell_count(d: usize, l: i64) -> u64 {
    let l = l as u64;
    l.pow(d as u32) - (l - 2).pow(d as u32)
}

/// Cells of `{0..l-1}^d` with at least one coordinate on the boundary, in
/// lexicographic order.
pub fn shell_cells(d: usize, l: i64) -> Vec<Point> {
    let cube = LatticeTile::cube(d, l).expect("dimension >= 1");
    cube.cells()
        .filter(|c| c.iter().any(|&x| x == 0 || x == l - 1))
        .map(<[i64]>::to_vec)
        .collect()
}

/// The S tile together with the pieces it was assembled from.
#[derive(Debug, Clone)]
pub struct SFrame {
    pub dim: usize,
    pub l: i64,
    pub m: i64,
    pub period: i64,
    pub shell: Vec<Point>,
    pub decorated: DecoratedPartition,
    pub tile: LatticeTile,
}

impl SFrame {
    /// Bump cells of the S tile (those of `Q_1'` at its shell cell).
    pub fn bumps(&self) -> Vec<Point> {
        self.shift_to_first_shell(&self.decorated.bumps)
    }

    pub fn dents(&self) -> Vec<Point> {
        self.shift_to_first_shell(&self.decorated.dents)
    }

    fn shift_to_first_shell(&self, cells: &[Point]) -> Vec<Point> {
        let origin = &self.shell[0];
        cells
            .iter()
            .map(|c| c.iter().zip(origin).map(|(x, o)| x + self.period * o).collect())
            .collect()
    }
}

pub fn build_s_frame(d: usize, l: i64) -> Result<SFrame, SimulateError> {
    if l < 3 {
        return Err(SimulateError::FrameTooSmall(l));
    }
    if d < 3 {
        return Err(SimulateError::BadDimension(d));
    }
    let m = shell_count(d, l) as i64;
    let period = 3 * m + 6;
    let decorated = partition_cube(d, m)?.decorate()?;
    let shell = shell_cells(d, l);
    debug_assert_eq!(shell.len() as i64, m);
    let placed = decorated
        .parts
        .iter()
        .zip(&shell)
        .map(|(q, x)| {
            let shift: Point = x.iter().map(|c| c * period).collect();
            q.translate(&shift)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tile = LatticeTile::disjoint_union_all(d, &placed)?;
    Ok(SFrame { dim: d, l, m, period, shell, decorated, tile })
}

/// The connected S tile for frame side `l` in dimension `d`.
pub fn build_s(d: usize, l: i64) -> Result<LatticeTile, SimulateError> {
    build_s_frame(d, l).map(|f| f.tile)
}

/// Whether `t (+) period Z^d` is a partition of `Z^d`: the cells of `t` hit
/// every residue class of `(Z/period)^d` exactly once.
pub fn verify_lattice_partition(t: &LatticeTile, period: i64) -> bool {
    if period < 1 {
        return false;
    }
    let d = t.dim() as u32;
    let Some(classes) = (period as u128).checked_pow(d) else {
        return false;
    };
    if t.len() as u128 != classes {
        return false;
    }
    let mut residues: Vec<u128> = t
        .cells()
        .map(|c| {
            c.iter()
                .fold(0u128, |acc, x| acc * period as u128 + x.rem_euclid(period) as u128)
        })
        .collect();
    residues.sort_unstable();
    residues.windows(2).all(|w| w[0] != w[1])
}

/// Predicted parameters and sizes of [`simulate_set`] without building.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationSize {
    pub dim: usize,
    pub l: i64,
    pub m: u64,
    pub period: u64,
    /// `|S| = period^d`.
    pub s_cells: u128,
    pub input_cells: Vec<u64>,
    /// `|P_i| * period^d`.
    pub output_cells: Vec<u128>,
}

impl SimulationSize {
    /// Size report for tiles with the given bounding-box extents and cell
    /// counts.
    pub fn from_extents(
        dim: usize,
        extents: &[Point],
        cells: &[u64],
    ) -> Result<Self, SimulateError> {
        if dim < 3 {
            return Err(SimulateError::BadDimension(dim));
        }
        if extents.is_empty() {
            return Err(SimulateError::NoTiles);
        }
        let l = extents.iter().flatten().copied().max().unwrap_or(1).max(3);
        let m = shell_count(dim, l);
        let period = 3 * m + 6;
        let s_cells = (period as u128).pow(dim as u32);
        Ok(Self {
            dim,
            l,
            m,
            period,
            s_cells,
            input_cells: cells.to_vec(),
            output_cells: cells.iter().map(|&c| c as u128 * s_cells).collect(),
        })
    }

    /// Cells that [`simulate_set`] materializes (outputs plus the S tile).
    pub fn total_cells(&self) -> u128 {
        self.output_cells.iter().sum::<u128>() + self.s_cells
    }
}

fn check_inputs(tiles: &[LatticeTile]) -> Result<usize, SimulateError> {
    let first = tiles.first().ok_or(SimulateError::NoTiles)?;
    let d = first.dim();
    if d < 3 {
        return Err(SimulateError::BadDimension(d));
    }
    for (i, t) in tiles.iter().enumerate() {
        if t.dim() != d {
            return Err(SimulateError::BadDimension(t.dim()));
        }
        if t.is_empty() {
            return Err(SimulateError::EmptyTile(i));
        }
    }
    Ok(d)
}

pub fn simulation_size(tiles: &[LatticeTile]) -> Result<SimulationSize, SimulateError> {
    let d = check_inputs(tiles)?;
    let extents: Vec<Point> = tiles.iter().map(|t| t.extents().unwrap()).collect();
    let cells: Vec<u64> = tiles.iter().map(|t| t.len() as u64).collect();
    SimulationSize::from_extents(d, &extents, &cells)
}

#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub l: i64,
    pub m: i64,
    pub period: i64,
    pub shell_cells: Vec<Point>,
    pub s_tile: LatticeTile,
    /// `period * P_i (+) S`, in input order.
    pub transformed: Vec<LatticeTile>,
}

impl SimulationResult {
    pub fn all_connected(&self) -> bool {
        self.transformed
            .iter()
            .all(|t| t.is_connected().unwrap_or(false))
    }
}

/// Replaces each tile `P_i` by the connected tile `(3m+6) P_i (+) S_l`, with
/// `l` the smallest side `>= 3` whose cube holds a translate of every tile.
pub fn simulate_set(
    tiles: &[LatticeTile],
    max_cells: u128,
) -> Result<SimulationResult, SimulateError> {
    let size = simulation_size(tiles)?;
    let needed = size.total_cells();
    if needed > max_cells {
        return Err(SimulateError::BudgetExceeded { needed, budget: max_cells });
    }
    let frame = build_s_frame(size.dim, size.l)?;
    let transformed = tiles
        .iter()
        .map(|p| {
            p.scale(frame.period)?
                .minkowski_sum(&frame.tile)
                .map_err(|e| SimulateError::Internal(e.to_string()))
        })
        .collect::<Result<Vec<_>, SimulateError>>()?;
    Ok(SimulationResult {
        l: frame.l,
        m: frame.m,
        period: frame.period,
        shell_cells: frame.shell,
        s_tile: frame.tile,
        transformed,
    })
}

/// One offset of the local bump/dent check that did not behave as forced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingFailure {
    pub direction: UnitVector,
    pub offset: Point,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Default)]
pub struct ForcingReport {
    pub offsets_checked: usize,
    /// Non-lattice offsets near a neighbor position where the translate
    /// does not overlap the tile (its bump then misses the dent).
    pub disjoint_misaligned: usize,
    pub failures: Vec<ForcingFailure>,
}

impl ForcingReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the bump/dent interlock of a tile near each lattice neighbor.
///
/// `bumps[k]` and `dents[k] = bumps[k] + period e_k` are the axis-`k` pair.
/// For each signed axis `v`, the translate by `period v` must be disjoint
/// from the tile with the bump/dent pair engaged; for every perturbed
/// offset `period v + w` with `0 < |w|_inf <= radius`, the translate must
/// overlap the tile or leave the dent unfilled.
pub fn local_forcing_check(
    tile: &LatticeTile,
    period: i64,
    bumps: &[Point],
    dents: &[Point],
    radius: i64,
) -> ForcingReport {
    let d = tile.dim();
    let index = CellIndex::new(tile);
    let mut report = ForcingReport::default();
    let window = LatticeTile::cube(d, 2 * radius + 1)
        .and_then(|c| c.translate(&vec![-radius; d]))
        .expect("valid window");
    for v in UnitVector::all(d) {
        let k = v.axis;
        let base = v.scaled(d, period);
        for w in window.cells() {
            let offset: Point = base.iter().zip(w).map(|(b, x)| b + x).collect();
            report.offsets_checked += 1;
            let overlaps = index.overlaps(tile, &offset);
            // the pair engaged across this interface
            let engaged = if v.positive {
                // the translate's bump fills our dent
                let bump = add(&bumps[k], &offset);
                bump == dents[k]
            } else {
                // our bump fills the translate's dent
                let dent = add(&dents[k], &offset);
                dent == bumps[k]
            };
            let lattice = w.iter().all(|&x| x == 0);
            if lattice {
                if overlaps {
                    report.failures.push(ForcingFailure {
                        direction: v,
                        offset,
                        reason: "lattice neighbor overlaps",
                    });
                } else if !engaged {
                    report.failures.push(ForcingFailure {
                        direction: v,
                        offset,
                        reason: "lattice neighbor leaves the dent empty",
                    });
                }
            } else if !overlaps {
                if engaged {
                    report.failures.push(ForcingFailure {
                        direction: v,
                        offset,
                        reason: "off-lattice neighbor also interlocks",
                    });
                } else {
                    report.disjoint_misaligned += 1;
                }
            }
        }
    }
    report
}

fn add(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_sizes() {
        assert_eq!(shell_count(3, 3), 26);
        assert_eq!(shell_count(3, 4), 56);
        assert_eq!(shell_count(3, 90), 47528);
        assert_eq!(shell_cells(3, 4).len(), 56);
        assert_eq!(shell_cells(3, 3)[0], vec![0, 0, 0]);
        assert!(!shell_cells(3, 3).contains(&vec![1, 1, 1]));
    }

    #[test]
    fn frame_side_must_be_three() {
        assert_eq!(build_s(3, 2).unwrap_err(), SimulateError::FrameTooSmall(2));
    }

    #[test]
    fn lattice_partition_examples() {
        let c5 = LatticeTile::cube(3, 5).unwrap();
        assert!(verify_lattice_partition(&c5, 5));
        assert!(!verify_lattice_partition(&c5, 4));
        assert!(!verify_lattice_partition(&LatticeTile::line([0, 1, 3]), 3));
        assert!(verify_lattice_partition(&LatticeTile::line([0, 1, 5]), 3));
    }

    #[test]
    fn size_from_extents() {
        let s = SimulationSize::from_extents(3, &[vec![42, 15, 90]], &[1]).unwrap();
        assert_eq!(s.l, 90);
        assert_eq!(s.m, 47528);
        assert_eq!(s.period, 3 * 47528 + 6);

        let unit = LatticeTile::from_points(3, [[0, 0, 0]]).unwrap();
        let s = simulation_size(&[unit]).unwrap();
        assert_eq!((s.l, s.m, s.period), (3, 26, 84));
        assert_eq!(s.output_cells, vec![592_704]);
    }

    #[test]
    fn budget_is_enforced() {
        let unit = LatticeTile::from_points(3, [[0, 0, 0]]).unwrap();
        let err = simulate_set(&[unit], 1000).unwrap_err();
        assert!(matches!(err, SimulateError::BudgetExceeded { needed, .. } if needed == 2 * 592_704));
    }

    #[test]
    fn input_validation() {
        assert_eq!(simulate_set(&[], DEFAULT_MAX_CELLS).unwrap_err(), SimulateError::NoTiles);
        let flat = LatticeTile::from_points(2, [[0, 0]]).unwrap();
        assert_eq!(
            simulation_size(&[flat]).unwrap_err(),
            SimulateError::BadDimension(2)
        );
        let e = LatticeTile::empty(3).unwrap();
        assert_eq!(simulation_size(&[e]).unwrap_err(), SimulateError::EmptyTile(0));
    }

    #[test]
    fn forcing_on_decorated_part() {
        let dec = partition_cube(3, 4).unwrap().decorate().unwrap();
        let report = local_forcing_check(&dec.parts[0], dec.side, &dec.bumps, &dec.dents, 2);
        assert_eq!(report.offsets_checked, 6 * 125);
        assert!(report.holds(), "{:?}", report.failures);
    }
}
