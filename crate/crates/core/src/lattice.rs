//! Integer lattice geometry: finite cell sets in `Z^d`, translation,
//! scaling, Minkowski sums, and unit-step adjacency.
//!
//! A [`LatticeTile`] stores its cells as a flat, lexicographically sorted
//! coordinate buffer. Every constructor canonicalizes, so two tiles compare
//! equal exactly when they hold the same cell set.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// An owned lattice point. Coordinates may be negative.
pub type Point = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty tile has no normal form")]
    EmptyTile,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("point {point:?} does not have dimension {dim}")]
    PointDimension { point: Point, dim: usize },
    #[error("overlapping Minkowski sum: {0}")]
    OverlappingSum(Collision),
    #[error("tiles overlap at {0:?}")]
    TilesOverlap(Point),
    #[error("scale factor must be positive, got {0}")]
    BadScale(i64),
}

/// Witness that a Minkowski sum is not direct: `a1 + b1 = a2 + b2` with
/// `(a1, b1) != (a2, b2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub a1: Point,
    pub b1: Point,
    pub a2: Point,
    pub b2: Point,
    pub sum: Point,
}

impl Collision {
    /// Re-checks the witness arithmetic.
    pub fn is_valid(&self) -> bool {
        let s1: Point = self.a1.iter().zip(&self.b1).map(|(x, y)| x + y).collect();
        let s2: Point = self.a2.iter().zip(&self.b2).map(|(x, y)| x + y).collect();
        s1 == self.sum && s2 == self.sum && (self.a1 != self.a2 || self.b1 != self.b2)
    }
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}+{:?} = {:?}+{:?} = {:?}",
            self.a1, self.b1, self.a2, self.b2, self.sum
        )
    }
}

/// An axis-parallel unit vector. `axis` is zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitVector {
    pub axis: usize,
    pub positive: bool,
}

impl UnitVector {
    pub fn new(axis: usize, positive: bool) -> Self {
        Self { axis, positive }
    }

    /// All `2d` signed axis vectors, ordered `+e_0, -e_0, +e_1, ...`.
    pub fn all(dim: usize) -> impl Iterator<Item = UnitVector> {
        (0..dim).flat_map(|axis| [UnitVector::new(axis, true), UnitVector::new(axis, false)])
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn scaled(self, dim: usize, factor: i64) -> Point {
        let mut p = vec![0; dim];
        p[self.axis] = self.sign() * factor;
        p
    }

    pub fn to_point(self, dim: usize) -> Point {
        self.scaled(dim, 1)
    }
}

impl fmt::Display for UnitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", if self.positive { '+' } else { '-' }, self.axis + 1)
    }
}

/// A finite set of points of `Z^d`.
///
/// The empty set is representable (some gadgets are empty), but
/// [`normalize`](Self::normalize) and [`is_connected`](Self::is_connected)
/// reject it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeTile {
    dim: usize,
    coords: Vec<i64>,
}

impl fmt::Debug for LatticeTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeTile")
            .field("dim", &self.dim)
            .field("cells", &self.cells().collect::<Vec<_>>())
            .finish()
    }
}

fn sort_dedup_rows(dim: usize, coords: &[i64]) -> Vec<i64> {
    let n = coords.len() / dim;
    let row = |i: usize| &coords[i * dim..(i + 1) * dim];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| row(i).cmp(row(j)));
    order.dedup_by(|i, j| row(*i) == row(*j));
    let mut out = Vec::with_capacity(order.len() * dim);
    for i in order {
        out.extend_from_slice(row(i));
    }
    out
}

fn sorted_is_strict(dim: usize, coords: &[i64]) -> bool {
    coords
        .chunks_exact(dim)
        .zip(coords.chunks_exact(dim).skip(1))
        .all(|(a, b)| a < b)
}

impl LatticeTile {
    pub fn empty(dim: usize) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        Ok(Self { dim, coords: Vec::new() })
    }

    /// Builds a tile from a list of points. Duplicate points collapse.
    pub fn from_points<I, P>(dim: usize, points: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[i64]>,
    {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        let mut coords = Vec::new();
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(LatticeError::PointDimension { point: p.to_vec(), dim });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self::from_flat_unchecked(dim, coords))
    }

    /// Builds a tile from a flat coordinate buffer of length `k * dim`.
    pub(crate) fn from_flat_unchecked(dim: usize, coords: Vec<i64>) -> Self {
        debug_assert!(dim > 0 && coords.len().is_multiple_of(dim));
        let coords = if sorted_is_strict(dim, &coords) {
            coords
        } else {
            sort_dedup_rows(dim, &coords)
        };
        Self { dim, coords }
    }

    /// One-dimensional tile from integers.
    pub fn line<I: IntoIterator<Item = i64>>(cells: I) -> Self {
        Self::from_flat_unchecked(1, cells.into_iter().collect())
    }

    /// The cube `{0, .., side-1}^dim`.
    pub fn cube(dim: usize, side: i64) -> Result<Self, LatticeError> {
        Self::boxed(&vec![0; dim], &vec![side; dim])
    }

    /// The box `min + {0..extent_0-1} x ... x {0..extent_{d-1}-1}`.
    pub fn boxed(min: &[i64], extents: &[i64]) -> Result<Self, LatticeError> {
        let dim = min.len();
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        if extents.len() != dim {
            return Err(LatticeError::DimensionMismatch { left: dim, right: extents.len() });
        }
        let mut coords = Vec::new();
        if extents.iter().all(|&e| e > 0) {
            let mut cur = min.to_vec();
            'outer: loop {
                coords.extend_from_slice(&cur);
                for axis in (0..dim).rev() {
                    cur[axis] += 1;
                    if cur[axis] < min[axis] + extents[axis] {
                        continue 'outer;
                    }
                    cur[axis] = min[axis];
                }
                break;
            }
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> std::slice::ChunksExact<'_, i64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn cell(&self, index: usize) -> &[i64] {
        &self.coords[index * self.dim..(index + 1) * self.dim]
    }

    pub fn flat_coords(&self) -> &[i64] {
        &self.coords
    }

    fn check_point(&self, p: &[i64]) -> Result<(), LatticeError> {
        if p.len() != self.dim {
            return Err(LatticeError::PointDimension { point: p.to_vec(), dim: self.dim });
        }
        Ok(())
    }

    fn check_dim(&self, other: &LatticeTile) -> Result<(), LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn position(&self, p: &[i64]) -> Option<usize> {
        if p.len() != self.dim {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.cell(mid).cmp(p) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.position(p).is_some()
    }

    /// Componentwise minimum and maximum corners, `None` for the empty tile.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let mut cells = self.cells();
        let first = cells.next()?;
        let (mut lo, mut hi) = (first.to_vec(), first.to_vec());
        for c in cells {
            for k in 0..self.dim {
                lo[k] = lo[k].min(c[k]);
                hi[k] = hi[k].max(c[k]);
            }
        }
        Some((lo, hi))
    }

    /// Side lengths of the bounding box (`max - min + 1` per axis).
    pub fn extents(&self) -> Option<Point> {
        self.bounding_box()
            .map(|(lo, hi)| lo.iter().zip(&hi).map(|(a, b)| b - a + 1).collect())
    }

    pub fn translate(&self, v: &[i64]) -> Result<Self, LatticeError> {
        self.check_point(v)?;
        let mut coords = self.coords.clone();
        for row in coords.chunks_exact_mut(self.dim) {
            for (x, dx) in row.iter_mut().zip(v) {
                *x += dx;
            }
        }
        // translation preserves lexicographic order
        Ok(Self { dim: self.dim, coords })
    }

    /// `cA = { c a }`.
    pub fn scale(&self, c: i64) -> Result<Self, LatticeError> {
        if c < 1 {
            return Err(LatticeError::BadScale(c));
        }
        Ok(Self {
            dim: self.dim,
            coords: self.coords.iter().map(|x| x * c).collect(),
        })
    }

    /// Translate whose bounding-box minimum corner is the origin.
    pub fn normalize(&self) -> Result<Self, LatticeError> {
        let (lo, _) = self.bounding_box().ok_or(LatticeError::EmptyTile)?;
        let neg: Point = lo.iter().map(|x| -x).collect();
        self.translate(&neg)
    }

    /// Set union; overlapping cells collapse.
    pub fn union(&self, other: &LatticeTile) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Ok(Self::from_flat_unchecked(self.dim, coords))
    }

    /// Union of two tiles that must not share a cell.
    pub fn disjoint_union(&self, other: &LatticeTile) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        if let Some(c) = self.first_common_cell(other) {
            return Err(LatticeError::TilesOverlap(c));
        }
        self.union(other)
    }

    /// Union of many tiles that must be pairwise disjoint.
    pub fn disjoint_union_all<'a, I>(dim: usize, parts: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = &'a LatticeTile>,
    {
        let mut coords = Vec::new();
        let mut total = 0;
        for p in parts {
            if p.dim != dim {
                return Err(LatticeError::DimensionMismatch { left: dim, right: p.dim });
            }
            coords.extend_from_slice(&p.coords);
            total += p.len();
        }
        if let Some(dup) = first_duplicate_row(dim, &coords) {
            return Err(LatticeError::TilesOverlap(dup));
        }
        let out = Self::from_flat_unchecked(dim, coords);
        debug_assert_eq!(out.len(), total);
        Ok(out)
    }

    pub fn difference(&self, other: &LatticeTile) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        let coords = self
            .cells()
            .filter(|c| !other.contains(c))
            .flatten()
            .copied()
            .collect();
        Ok(Self { dim: self.dim, coords })
    }

    pub fn intersection(&self, other: &LatticeTile) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        let coords = self
            .cells()
            .filter(|c| other.contains(c))
            .flatten()
            .copied()
            .collect();
        Ok(Self { dim: self.dim, coords })
    }

    /// First shared cell in lexicographic order (merge walk).
    pub fn first_common_cell(&self, other: &LatticeTile) -> Option<Point> {
        if self.dim != other.dim {
            return None;
        }
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            match self.cell(i).cmp(other.cell(j)) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return Some(self.cell(i).to_vec()),
            }
        }
        None
    }

    pub fn is_disjoint(&self, other: &LatticeTile) -> bool {
        self.first_common_cell(other).is_none()
    }

    /// `a (+) b`, failing with a witness when two sums coincide.
    pub fn minkowski_sum(&self, other: &LatticeTile) -> Result<Self, LatticeError> {
        self.check_dim(other)?;
        let d = self.dim;
        let (na, nb) = (self.len(), other.len());
        let mut sums = Vec::with_capacity(na * nb * d);
        for a in self.cells() {
            for b in other.cells() {
                sums.extend(a.iter().zip(b).map(|(x, y)| x + y));
            }
        }
        let row = |k: usize| &sums[k * d..(k + 1) * d];
        let mut order: Vec<usize> = (0..na * nb).collect();
        order.sort_unstable_by(|&i, &j| row(i).cmp(row(j)));
        for w in order.windows(2) {
            if row(w[0]) == row(w[1]) {
                let (k1, k2) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(LatticeError::OverlappingSum(Collision {
                    a1: self.cell(k1 / nb).to_vec(),
                    b1: other.cell(k1 % nb).to_vec(),
                    a2: self.cell(k2 / nb).to_vec(),
                    b2: other.cell(k2 % nb).to_vec(),
                    sum: row(k1).to_vec(),
                }));
            }
        }
        let mut coords = Vec::with_capacity(sums.len());
        for k in order {
            coords.extend_from_slice(row(k));
        }
        Ok(Self { dim: d, coords })
    }

    /// `c T (+) {0..c-1}^d`: every cell becomes a `c`-cube.
    pub fn inflate(&self, c: i64) -> Result<Self, LatticeError> {
        if c < 1 {
            return Err(LatticeError::BadScale(c));
        }
        let block = Self::cube(self.dim, c)?;
        self.scale(c)?.minkowski_sum(&block)
    }

    /// Whether the unit-step adjacency graph on the cells is connected.
    pub fn is_connected(&self) -> Result<bool, LatticeError> {
        if self.is_empty() {
            return Err(LatticeError::EmptyTile);
        }
        Ok(self.component_count() == 1)
    }

    /// Number of unit-adjacency components (0 for the empty tile).
    pub fn component_count(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        let index = CellIndex::new(self);
        // visited marks are kept in tile order; the index resolves positions
        let mut visited = vec![false; n];
        let mut components = 0;
        let mut queue = VecDeque::new();
        let mut nb = vec![0i64; self.dim];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            components += 1;
            visited[start] = true;
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                let c = self.cell(i);
                for axis in 0..self.dim {
                    for step in [-1, 1] {
                        nb.copy_from_slice(c);
                        nb[axis] += step;
                        if !index.contains(&nb) {
                            continue;
                        }
                        let j = self.position(&nb).expect("indexed cell");
                        if !visited[j] {
                            visited[j] = true;
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        components
    }

    /// Whether some cell of `self` and some cell of `other` differ by a unit
    /// vector. The tiles must be disjoint.
    pub fn are_adjacent(&self, other: &LatticeTile) -> Result<bool, LatticeError> {
        self.check_dim(other)?;
        if let Some(c) = self.first_common_cell(other) {
            return Err(LatticeError::TilesOverlap(c));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut nb = vec![0i64; self.dim];
        for c in small.cells() {
            for axis in 0..self.dim {
                for step in [-1, 1] {
                    nb.copy_from_slice(c);
                    nb[axis] += step;
                    if large.contains(&nb) {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Cells as `x y z` lines in lexicographic order, one per line.
    pub fn to_xyz(&self) -> String {
        let mut out = String::new();
        for c in self.cells() {
            let line: Vec<String> = c.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

fn first_duplicate_row(dim: usize, coords: &[i64]) -> Option<Point> {
    let row = |i: usize| &coords[i * dim..(i + 1) * dim];
    let mut order: Vec<usize> = (0..coords.len() / dim).collect();
    order.sort_unstable_by(|&i, &j| row(i).cmp(row(j)));
    order
        .windows(2)
        .find(|w| row(w[0]) == row(w[1]))
        .map(|w| row(w[0]).to_vec())
}

/// Membership lookup for a fixed tile: a bitmap over the bounding box when
/// it is small enough, binary search otherwise.
pub struct CellIndex<'a> {
    tile: &'a LatticeTile,
    dense: Option<DenseBox>,
}

struct DenseBox {
    lo: Point,
    extents: Vec<usize>,
    bits: Vec<u64>,
}

const DENSE_LIMIT: usize = 1 << 31;

impl<'a> CellIndex<'a> {
    pub fn new(tile: &'a LatticeTile) -> Self {
        let dense = tile.bounding_box().and_then(|(lo, hi)| {
            let extents: Vec<usize> =
                lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect();
            let volume = extents
                .iter()
                .try_fold(1usize, |acc, &e| acc.checked_mul(e))
                .filter(|&v| v <= DENSE_LIMIT)?;
            let mut b = DenseBox { lo, extents, bits: vec![0; volume.div_ceil(64)] };
            for c in tile.cells() {
                let k = b.linear(c).expect("cell inside its own bounding box");
                b.bits[k / 64] |= 1 << (k % 64);
            }
            Some(b)
        });
        Self { tile, dense }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        match &self.dense {
            Some(b) => b.linear(p).is_some_and(|k| b.bits[k / 64] >> (k % 64) & 1 == 1),
            None => self.tile.contains(p),
        }
    }

    /// Whether `tile + shift` shares a cell with the indexed tile.
    pub fn overlaps(&self, other: &LatticeTile, shift: &[i64]) -> bool {
        let mut q = vec![0i64; self.tile.dim];
        other.cells().any(|c| {
            for (k, x) in c.iter().enumerate() {
                q[k] = x + shift[k];
            }
            self.contains(&q)
        })
    }
}

impl DenseBox {
    fn linear(&self, p: &[i64]) -> Option<usize> {
        let mut k = 0usize;
        for ((x, lo), e) in p.iter().zip(&self.lo).zip(&self.extents) {
            let off = x - lo;
            if off < 0 || off as usize >= *e {
                return None;
            }
            k = k * e + off as usize;
        }
        Some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t3(cells: &[[i64; 3]]) -> LatticeTile {
        LatticeTile::from_points(3, cells).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(t3(&[[5, 5, 5]]).normalize().unwrap(), t3(&[[0, 0, 0]]));
        assert_eq!(
            t3(&[[-1, 1, 1], [1, 1, 1]]).normalize().unwrap(),
            t3(&[[0, 0, 0], [2, 0, 0]])
        );
        assert_eq!(
            LatticeTile::empty(3).unwrap().normalize().unwrap_err().to_string(),
            "empty tile has no normal form"
        );
    }

    #[test]
    fn minkowski_examples() {
        let a = LatticeTile::line([0, 1]);
        let b = LatticeTile::line([0, 2]);
        assert_eq!(a.minkowski_sum(&b).unwrap(), LatticeTile::line([0, 1, 2, 3]));

        let err = a.minkowski_sum(&a).unwrap_err();
        match err {
            LatticeError::OverlappingSum(c) => {
                assert!(c.is_valid());
                assert_eq!(c.sum, vec![1]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let c4 = LatticeTile::cube(3, 4).unwrap();
        let v = t3(&[[7, -3, 2]]);
        assert_eq!(c4.minkowski_sum(&v).unwrap().len(), 64);
    }

    #[test]
    fn minkowski_dimension_mismatch() {
        let a = LatticeTile::line([0]);
        let b = t3(&[[0, 0, 0]]);
        assert!(matches!(
            a.minkowski_sum(&b),
            Err(LatticeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inflate_examples() {
        let c3 = t3(&[[0, 0, 0]]).inflate(3).unwrap();
        assert_eq!(c3, LatticeTile::cube(3, 3).unwrap());
        assert_eq!(c3.len(), 27);

        let t = t3(&[[0, 0, 0], [2, 1, 0]]);
        assert_eq!(t.inflate(1).unwrap(), t);

        // 3*{0,5} (+) {0,1,2}, enumerated by hand
        let line = LatticeTile::line([0, 5]).inflate(3).unwrap();
        assert_eq!(line, LatticeTile::line([0, 1, 2, 15, 16, 17]));
        assert!(LatticeTile::line([0]).inflate(0).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert!(LatticeTile::cube(3, 3).unwrap().is_connected().unwrap());
        assert!(!t3(&[[0, 0, 0], [2, 0, 0]]).is_connected().unwrap());
        assert!(t3(&[[0, 0, 0], [1, 0, 0]]).is_connected().unwrap());
        assert!(LatticeTile::empty(2).unwrap().is_connected().is_err());
    }

    #[test]
    fn adjacency_examples() {
        let o = t3(&[[0, 0, 0]]);
        assert!(o.are_adjacent(&t3(&[[1, 0, 0]])).unwrap());
        assert!(!o.are_adjacent(&t3(&[[1, 1, 0]])).unwrap());
        assert!(matches!(
            o.are_adjacent(&o),
            Err(LatticeError::TilesOverlap(_))
        ));
    }

    #[test]
    fn disjoint_union_reports_overlap() {
        let a = LatticeTile::line([0, 1]);
        let b = LatticeTile::line([1, 2]);
        assert_eq!(a.disjoint_union(&b), Err(LatticeError::TilesOverlap(vec![1])));
        assert!(LatticeTile::disjoint_union_all(1, [&a, &b]).is_err());
        let e = LatticeTile::empty(1).unwrap();
        assert_eq!(a.disjoint_union(&e).unwrap(), a);
    }

    #[test]
    fn xyz_is_sorted() {
        let t = t3(&[[1, 0, 0], [0, 0, 2], [0, 0, 0]]);
        assert_eq!(t.to_xyz(), "0 0 0\n0 0 2\n1 0 0\n");
    }

    #[test]
    fn unit_vectors() {
        let all: Vec<_> = UnitVector::all(3).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1].to_point(3), vec![-1, 0, 0]);
        assert_eq!(all[4].scaled(3, 5), vec![0, 0, 5]);
    }
}
