//! Internally and externally adjacent partitions of the cube
//! `{0, .., m+1}^d` into `m` connected parts, and their 3x-inflated,
//! bump/dent decorated form.
//!
//! The labeling function is the piecewise 3-D rule below, extended to higher
//! dimensions by stacking `m+2` copies of the `(d-1)`-dimensional labeling and
//! rotating the top copy a quarter turn in the `x_1 x_2` plane.

use thiserror::Error;

use crate::lattice::{LatticeError, LatticeTile, Point, UnitVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("the cube partition needs dimension >= 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("part count must be positive")]
    NoParts,
    #[error("point {point:?} lies outside the cube {{0..{max}}}^{dim}")]
    OutOfCube { point: Point, max: i64, dim: usize },
    #[error("point {point:?} matches labeling cases with different values {values:?}")]
    ConflictingCases { point: Point, values: Vec<i64> },
    #[error("dent cell {0:?} is not part of Q1")]
    DentOutsidePart(Point),
    #[error("bump cell {0:?} is already occupied")]
    BumpOccupied(Point),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The label a point receives: a case of the 3-D rule, or a free coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Case { case: usize, value: i64 },
    Free,
}

impl Label {
    pub fn part(self) -> i64 {
        match self {
            Label::Case { value, .. } => value,
            Label::Free => 1,
        }
    }
}

/// All five case rows of the 3-D labeling that match `(x, y, z)`, in the
/// listed order, with their values.
pub fn f3_matching_cases(m: i64, x: i64, y: i64, z: i64) -> Vec<(usize, i64)> {
    let r = |v: i64, lo: i64, hi: i64| lo <= v && v <= hi;
    let rows = [
        (r(x, 0, m) && r(y, 1, m) && z == 0, y),
        (r(x, 1, m) && r(y, 0, m) && z == m + 1, x),
        (x == 0 && r(y, 1, m) && r(z, 1, m), y),
        (r(x, 1, m) && y == 0 && r(z, 1, m), x),
        (r(x, 1, m + 1) && r(y, 1, m + 1) && r(z, 1, m), z),
    ];
    rows.iter()
        .enumerate()
        .filter(|(_, (hit, _))| *hit)
        .map(|(i, &(_, v))| (i + 1, v))
        .collect()
}

fn f3_label(m: i64, p: &[i64]) -> Result<Label, PartitionError> {
    let cases = f3_matching_cases(m, p[0], p[1], p[2]);
    match cases.first() {
        None => Ok(Label::Free),
        Some(&(case, value)) => {
            if cases.iter().any(|&(_, v)| v != value) {
                return Err(PartitionError::ConflictingCases {
                    point: p.to_vec(),
                    values: cases.iter().map(|&(_, v)| v).collect(),
                });
            }
            Ok(Label::Case { case, value })
        }
    }
}

/// Label of `p` in the `d`-dimensional partition with `m` parts.
pub fn label(d: usize, m: i64, p: &[i64]) -> Result<Label, PartitionError> {
    if d < 3 {
        return Err(PartitionError::DimensionTooSmall(d));
    }
    if m < 1 {
        return Err(PartitionError::NoParts);
    }
    if p.len() != d || p.iter().any(|&c| c < 0 || c > m + 1) {
        return Err(PartitionError::OutOfCube { point: p.to_vec(), max: m + 1, dim: d });
    }
    let mut q = p.to_vec();
    // peel the last coordinate until three remain
    while q.len() > 3 {
        let top = q.pop().unwrap();
        if top == m + 1 {
            let (x1, x2) = (q[0], q[1]);
            q[0] = m + 1 - x2;
            q[1] = x1;
        }
    }
    f3_label(m, &q)
}

/// Part index (1-based) of `p`; free coordinates go to part 1.
pub fn f_value(d: usize, m: i64, p: &[i64]) -> Result<i64, PartitionError> {
    label(d, m, p).map(Label::part)
}

/// Partition of `{0..m+1}^d` into parts `Q_1..Q_m`.
#[derive(Debug, Clone)]
pub struct CubePartition {
    pub dim: usize,
    pub m: i64,
    pub side: i64,
    /// `parts[i]` is `Q_{i+1}`.
    pub parts: Vec<LatticeTile>,
    /// Free coordinates, all of which belong to `Q_1`.
    pub free_cells: LatticeTile,
    labels: Vec<u32>,
}

pub fn partition_cube(d: usize, m: i64) -> Result<CubePartition, PartitionError> {
    if d < 3 {
        return Err(PartitionError::DimensionTooSmall(d));
    }
    if m < 1 {
        return Err(PartitionError::NoParts);
    }
    let side = m + 2;
    let cube = LatticeTile::cube(d, side)?;
    let mut buckets: Vec<Vec<i64>> = vec![Vec::new(); m as usize];
    let mut free = Vec::new();
    let mut labels = Vec::with_capacity(cube.len());
    for p in cube.cells() {
        let l = label(d, m, p)?;
        if l == Label::Free {
            free.extend_from_slice(p);
        }
        let part = l.part();
        buckets[(part - 1) as usize].extend_from_slice(p);
        labels.push(part as u32);
    }
    let parts = buckets
        .into_iter()
        .map(|b| LatticeTile::from_flat_unchecked(d, b))
        .collect();
    Ok(CubePartition {
        dim: d,
        m,
        side,
        parts,
        free_cells: LatticeTile::from_flat_unchecked(d, free),
        labels,
    })
}

/// Outcome of an adjacency check; `missing` holds the first failing pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyReport {
    pub holds: bool,
    pub missing: Option<MissingPair>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingPair {
    pub i: i64,
    pub j: i64,
    pub direction: Option<UnitVector>,
}

impl AdjacencyReport {
    fn from_missing(missing: Option<MissingPair>) -> Self {
        Self { holds: missing.is_none(), missing }
    }
}

impl CubePartition {
    /// Part label (1-based) of an in-cube point.
    pub fn label_at(&self, p: &[i64]) -> Option<i64> {
        self.linear(p).map(|k| self.labels[k] as i64)
    }

    fn linear(&self, p: &[i64]) -> Option<usize> {
        if p.len() != self.dim {
            return None;
        }
        let mut k = 0usize;
        for &c in p {
            if c < 0 || c >= self.side {
                return None;
            }
            k = k * self.side as usize + c as usize;
        }
        Some(k)
    }

    fn points(&self) -> impl Iterator<Item = Point> + '_ {
        let side = self.side as usize;
        let d = self.dim;
        (0..self.labels.len()).map(move |mut k| {
            let mut p = vec![0i64; d];
            for axis in (0..d).rev() {
                p[axis] = (k % side) as i64;
                k /= side;
            }
            p
        })
    }

    pub fn part(&self, i: i64) -> &LatticeTile {
        &self.parts[(i - 1) as usize]
    }

    /// Checks that the parts are disjoint, cover the cube, and that every
    /// free cell belongs to part 1.
    pub fn is_exact(&self) -> bool {
        let total: usize = self.parts.iter().map(LatticeTile::len).sum();
        let expected = (self.side as usize).pow(self.dim as u32);
        if total != expected {
            return false;
        }
        let all = LatticeTile::disjoint_union_all(self.dim, &self.parts);
        match all {
            Ok(u) => {
                u == LatticeTile::cube(self.dim, self.side).expect("valid cube")
                    && self.free_cells.cells().all(|c| self.part(1).contains(c))
            }
            Err(_) => false,
        }
    }

    /// Every part is a connected tile.
    pub fn all_parts_connected(&self) -> bool {
        self.parts
            .iter()
            .all(|p| p.is_connected().unwrap_or(false))
    }

    /// Every pair `Q_i`, `Q_j` (`i < j`) touches through a unit step.
    pub fn check_internal_adjacency(&self) -> AdjacencyReport {
        let m = self.m as usize;
        let mut seen = vec![false; m * m];
        let mut nb = vec![0i64; self.dim];
        for p in self.points() {
            let a = self.label_at(&p).unwrap() as usize - 1;
            for axis in 0..self.dim {
                nb.copy_from_slice(&p);
                nb[axis] += 1;
                if let Some(b) = self.label_at(&nb) {
                    let b = b as usize - 1;
                    seen[a * m + b] = true;
                    seen[b * m + a] = true;
                }
            }
        }
        let missing = pairs(m).find(|&(i, j)| !seen[i * m + j]).map(|(i, j)| MissingPair {
            i: i as i64 + 1,
            j: j as i64 + 1,
            direction: None,
        });
        AdjacencyReport::from_missing(missing)
    }

    /// For every `i < j` and signed axis `v`, some `a in Q_i`, `b in Q_j`
    /// satisfy `a + (m+1) v = b`.
    pub fn check_external_adjacency(&self) -> AdjacencyReport {
        let m = self.m as usize;
        let dirs: Vec<UnitVector> = UnitVector::all(self.dim).collect();
        let mut seen = vec![vec![false; m * m]; dirs.len()];
        for (di, v) in dirs.iter().enumerate() {
            let shift = v.scaled(self.dim, self.m + 1);
            for a in self.points() {
                let b: Point = a.iter().zip(&shift).map(|(x, s)| x + s).collect();
                if let Some(lb) = self.label_at(&b) {
                    let la = self.label_at(&a).unwrap();
                    seen[di][(la as usize - 1) * m + lb as usize - 1] = true;
                }
            }
        }
        let missing = pairs(m).find_map(|(i, j)| {
            dirs.iter()
                .enumerate()
                .find(|(di, _)| !seen[*di][i * m + j])
                .map(|(_, v)| MissingPair {
                    i: i as i64 + 1,
                    j: j as i64 + 1,
                    direction: Some(*v),
                })
        });
        AdjacencyReport::from_missing(missing)
    }

    /// Inflates every part by 3 and adds the bump/dent pairs to part 1.
    pub fn decorate(&self) -> Result<DecoratedPartition, PartitionError> {
        let d = self.dim;
        let far = 3 * self.m + 5;
        let mut parts = self
            .parts
            .iter()
            .map(|p| p.inflate(3))
            .collect::<Result<Vec<_>, _>>()?;
        let bumps: Vec<Point> = (0..d).map(|k| marker(d, k, -1)).collect();
        let dents: Vec<Point> = (0..d).map(|k| marker(d, k, far)).collect();
        for dent in &dents {
            if !parts[0].contains(dent) {
                return Err(PartitionError::DentOutsidePart(dent.clone()));
            }
        }
        for bump in &bumps {
            if parts.iter().any(|p| p.contains(bump)) {
                return Err(PartitionError::BumpOccupied(bump.clone()));
            }
        }
        let bump_tile = LatticeTile::from_points(d, &bumps)?;
        let dent_tile = LatticeTile::from_points(d, &dents)?;
        parts[0] = parts[0].difference(&dent_tile)?.disjoint_union(&bump_tile)?;
        Ok(DecoratedPartition {
            dim: d,
            m: self.m,
            side: 3 * self.m + 6,
            parts,
            bumps,
            dents,
        })
    }
}

/// `(1, .., 1)` with coordinate `axis` replaced by `value`.
fn marker(d: usize, axis: usize, value: i64) -> Point {
    let mut p = vec![1; d];
    p[axis] = value;
    p
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
}

/// The 3x-inflated partition of `{0..3m+5}^d` with bumps on the negative
/// faces of part 1 and matching dents on its positive faces.
#[derive(Debug, Clone)]
pub struct DecoratedPartition {
    pub dim: usize,
    pub m: i64,
    pub side: i64,
    pub parts: Vec<LatticeTile>,
    /// `bumps[k]` sticks out of the `-e_k` face.
    pub bumps: Vec<Point>,
    /// `dents[k]` is carved from the `+e_k` face; `bumps[k] + side e_k`.
    pub dents: Vec<Point>,
}

impl DecoratedPartition {
    pub fn total_cells(&self) -> usize {
        self.parts.iter().map(LatticeTile::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_dimension_and_bad_points() {
        assert_eq!(
            partition_cube(2, 4).unwrap_err(),
            PartitionError::DimensionTooSmall(2)
        );
        assert!(matches!(
            f_value(3, 4, &[6, 0, 0]),
            Err(PartitionError::OutOfCube { .. })
        ));
        assert!(matches!(
            f_value(3, 4, &[-1, 0, 0]),
            Err(PartitionError::OutOfCube { .. })
        ));
        assert_eq!(partition_cube(3, 0).unwrap_err(), PartitionError::NoParts);
    }

    #[test]
    fn adjacency_witness_values() {
        let m = 4;
        for i in 1..=m {
            for j in 1..=m {
                assert_eq!(f_value(3, m, &[i, 0, j]).unwrap(), i);
                assert_eq!(f_value(3, m, &[i, 1, j]).unwrap(), j);
            }
        }
        assert_eq!(f_value(3, m, &[0, 0, 0]).unwrap(), 1);
        assert_eq!(label(3, m, &[0, 0, 0]).unwrap(), Label::Free);
    }

    #[test]
    fn case_rows_never_conflict() {
        for m in 1..=12 {
            for x in 0..=m + 1 {
                for y in 0..=m + 1 {
                    for z in 0..=m + 1 {
                        let cases = f3_matching_cases(m, x, y, z);
                        assert!(
                            cases.windows(2).all(|w| w[0].1 == w[1].1),
                            "m={m} ({x},{y},{z}) -> {cases:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn top_layer_is_rotated() {
        let m = 2;
        let top = m + 1;
        for x1 in 0..=top {
            for x2 in 0..=top {
                for x3 in 0..=top {
                    assert_eq!(
                        f_value(4, m, &[x1, x2, x3, top]).unwrap(),
                        f_value(3, m, &[m + 1 - x2, x1, x3]).unwrap()
                    );
                    for x4 in 0..=m {
                        assert_eq!(
                            f_value(4, m, &[x1, x2, x3, x4]).unwrap(),
                            f_value(3, m, &[x1, x2, x3]).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn partition_m4() {
        let p = partition_cube(3, 4).unwrap();
        assert_eq!(p.parts.iter().map(LatticeTile::len).sum::<usize>(), 216);
        assert!(p.is_exact());
        assert!(p.all_parts_connected());
        for i in 1..=4 {
            for j in i + 1..=4 {
                assert!(p.part(i).contains(&[i, 0, j]));
                assert!(p.part(j).contains(&[i, 1, j]));
            }
        }
        assert!(p.check_internal_adjacency().holds);
        assert!(p.check_external_adjacency().holds);
    }

    #[test]
    fn external_witnesses_from_the_construction() {
        let m = 4;
        let p = partition_cube(3, m).unwrap();
        for i in 1..=m {
            for j in i + 1..=m {
                assert_eq!(p.label_at(&[0, i, j]), Some(i));
                assert_eq!(p.label_at(&[m + 1, i, j]), Some(j));
            }
        }
        let m = 3;
        let p = partition_cube(4, m).unwrap();
        for i in 1..=m {
            for j in i + 1..=m {
                assert_eq!(p.label_at(&[j, i, 0, 0]), Some(i));
                assert_eq!(p.label_at(&[j, i, 0, m + 1]), Some(j));
                assert_eq!(p.label_at(&[i, j, 0, m + 1]), Some(i));
                assert_eq!(p.label_at(&[i, j, 0, 0]), Some(j));
            }
        }
    }

    #[test]
    fn single_part_is_vacuous() {
        let p = partition_cube(3, 1).unwrap();
        assert!(p.check_internal_adjacency().holds);
        assert!(p.check_external_adjacency().holds);
        assert_eq!(p.parts.len(), 1);
    }

    #[test]
    fn broken_partition_reports_a_pair() {
        let mut p = partition_cube(3, 3).unwrap();
        // relabel everything of part 3 as part 2
        for l in p.labels.iter_mut() {
            if *l == 3 {
                *l = 2;
            }
        }
        let r = p.check_internal_adjacency();
        assert!(!r.holds);
        let miss = r.missing.unwrap();
        assert_eq!((miss.i, miss.j), (1, 3));
        let r = p.check_external_adjacency();
        assert!(!r.holds);
        assert!(r.missing.unwrap().direction.is_some());
    }

    #[test]
    fn decorate_m4() {
        let m = 4;
        let dec = partition_cube(3, m).unwrap().decorate().unwrap();
        assert_eq!(dec.side, 18);
        assert_eq!(dec.total_cells(), 5832);
        let q1 = &dec.parts[0];
        for c in [[-1, 1, 1], [1, -1, 1], [1, 1, -1]] {
            assert!(q1.contains(&c));
        }
        for c in [[17, 1, 1], [1, 17, 1], [1, 1, 17]] {
            assert!(!q1.contains(&c));
        }
        assert!(dec.parts.iter().all(|p| p.is_connected().unwrap()));

        // a copy shifted by one period along +x drops its bump into the dent
        let shifted = q1.translate(&[18, 0, 0]).unwrap();
        assert!(shifted.contains(&[17, 1, 1]));
        assert!(shifted.is_disjoint(q1));
    }
}
