//! Voxel export for offline inspection: `xyz` point lists and `obj` meshes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{LatticeTile, Point};
use crate::solver::TilingCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("obj export needs 3-D cells, got dimension {0}")]
    NotThreeDimensional(usize),
    #[error("unknown export format {0:?} (expected xyz or obj)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoxelFormat {
    Xyz,
    Obj,
}

impl std::str::FromStr for VoxelFormat {
    type Err = ExportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xyz" => Ok(VoxelFormat::Xyz),
            "obj" => Ok(VoxelFormat::Obj),
            other => Err(ExportError::UnknownFormat(other.to_string())),
        }
    }
}

/// One `x y z` line per cell in lexicographic order.
pub fn tile_xyz(tile: &LatticeTile) -> String {
    tile.to_xyz()
}

/// Cells covered by each placement, reduced into the region, as
/// `x y z k` lines (`k` = placement index) in lexicographic order.
pub fn certificate_xyz(cert: &TilingCertificate) -> String {
    let mut rows = certificate_cells(cert);
    rows.sort();
    let mut out = String::new();
    for (cell, k) in rows {
        for c in &cell {
            write!(out, "{c} ").expect("write to string");
        }
        writeln!(out, "{k}").expect("write to string");
    }
    out
}

fn certificate_cells(cert: &TilingCertificate) -> Vec<(Point, usize)> {
    let region = &cert.region;
    let mut rows = Vec::new();
    for (k, p) in cert.placements.iter().enumerate() {
        let Some(tile) = cert.tiles.get(p.tile) else { continue };
        for c in tile.cells() {
            let cell: Point = c.iter().zip(&p.offset).map(|(x, o)| x + o).collect();
            let cell = match region.index(&cell) {
                Some(i) => region.point(i),
                None => cell,
            };
            rows.push((cell, k));
        }
    }
    rows
}

/// Unit cubes `[x, x+1] × [y, y+1] × [z, z+1]` per cell, sharing vertices.
/// Vertices are listed in lexicographic order; each cube contributes six
/// quads in cell order, grouped by the `groups` labels.
fn obj_mesh(groups: &[(String, Vec<Point>)]) -> String {
    const CORNERS: [[i64; 3]; 8] = [
        [0, 0, 0],
        [1, 0, 0],
        [1, 1, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 0, 1],
        [1, 1, 1],
        [0, 1, 1],
    ];
    // outward-facing quads as corner indices
    const FACES: [[usize; 4]; 6] = [
        [0, 3, 2, 1],
        [4, 5, 6, 7],
        [0, 1, 5, 4],
        [2, 3, 7, 6],
        [1, 2, 6, 5],
        [0, 4, 7, 3],
    ];
    let mut vertices: BTreeMap<[i64; 3], usize> = BTreeMap::new();
    for (_, cells) in groups {
        for c in cells {
            for k in CORNERS {
                vertices.insert([c[0] + k[0], c[1] + k[1], c[2] + k[2]], 0);
            }
        }
    }
    let mut out = String::new();
    for (i, (v, slot)) in vertices.iter_mut().enumerate() {
        *slot = i + 1;
        writeln!(out, "v {} {} {}", v[0], v[1], v[2]).expect("write to string");
    }
    for (name, cells) in groups {
        writeln!(out, "g {name}").expect("write to string");
        for c in cells {
            let idx = CORNERS.map(|k| vertices[&[c[0] + k[0], c[1] + k[1], c[2] + k[2]]]);
            for f in FACES {
                writeln!(out, "f {} {} {} {}", idx[f[0]], idx[f[1]], idx[f[2]], idx[f[3]])
                    .expect("write to string");
            }
        }
    }
    out
}

pub fn tile_obj(tile: &LatticeTile, name: &str) -> Result<String, ExportError> {
    if tile.dim() != 3 {
        return Err(ExportError::NotThreeDimensional(tile.dim()));
    }
    let cells = tile.cells().map(<[i64]>::to_vec).collect();
    Ok(obj_mesh(&[(name.to_string(), cells)]))
}

/// One group per placement, cells reduced into the region.
pub fn certificate_obj(cert: &TilingCertificate) -> Result<String, ExportError> {
    if cert.region.dim() != 3 {
        return Err(ExportError::NotThreeDimensional(cert.region.dim()));
    }
    let mut groups: Vec<(String, Vec<Point>)> = cert
        .placements
        .iter()
        .enumerate()
        .map(|(k, p)| (format!("placement_{k}_tile_{}", p.tile), Vec::new()))
        .collect();
    for (cell, k) in certificate_cells(cert) {
        groups[k].1.push(cell);
    }
    for (_, cells) in &mut groups {
        cells.sort();
    }
    Ok(obj_mesh(&groups))
}

pub fn export_tile(tile: &LatticeTile, name: &str, format: VoxelFormat) -> Result<String, ExportError> {
    match format {
        VoxelFormat::Xyz => Ok(tile_xyz(tile)),
        VoxelFormat::Obj => tile_obj(tile, name),
    }
}

pub fn export_certificate(cert: &TilingCertificate, format: VoxelFormat) -> Result<String, ExportError> {
    match format {
        VoxelFormat::Xyz => Ok(certificate_xyz(cert)),
        VoxelFormat::Obj => certificate_obj(cert),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{Placement, Region};

    #[test]
    fn single_cell_xyz() {
        let t = LatticeTile::from_points(3, [[0, 0, 0]]).unwrap();
        assert_eq!(tile_xyz(&t), "0 0 0\n");
    }

    #[test]
    fn cube_obj_dedups_vertices() {
        let c2 = LatticeTile::cube(3, 2).unwrap();
        let obj = tile_obj(&c2, "C2").unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 27);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 8 * 6);
        assert_eq!(obj, tile_obj(&c2, "C2").unwrap());
    }

    #[test]
    fn obj_rejects_other_dimensions() {
        assert_eq!(
            tile_obj(&LatticeTile::line([0]), "x").unwrap_err(),
            ExportError::NotThreeDimensional(1)
        );
    }

    #[test]
    fn certificate_xyz_reduces_into_torus() {
        let cert = TilingCertificate {
            region: Region::torus(vec![2, 1, 1]).unwrap(),
            tiles: vec![LatticeTile::from_points(3, [[0, 0, 0], [1, 0, 0]]).unwrap()],
            placements: vec![Placement { tile: 0, offset: vec![1, 0, 0] }],
        };
        assert_eq!(certificate_xyz(&cert), "0 0 0 0\n1 0 0 0\n");
    }
}
