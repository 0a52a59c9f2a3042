//! JSON interchange formats.
//!
//! - Tile: `{"dim": d, "name": str, "cells": [[x1..xd], ...]}`
//! - Region: `{"mode": "torus"|"bounded", "dims": [...], "holes": [[...], ...]}`
//! - Domino set: `{"m": M, "R1": [[a,b], ...], "R2": [...]}`
//! - Triomino set: `{"n": N, "S1": [[a,b,c], ...], ..., "S4": [...],
//!   "cyclic_closure": bool}`; with `cyclic_closure` the lists are orbit
//!   representatives
//! - Grid: `{"px": .., "py": .., "values": [[...], ...]}` with
//!   `values[y][x]`
//! - Certificate: `{"region": Region, "tiles": [Tile], "placements":
//!   [{"tile": k, "offset": [...]}]}`
//! - GadgetSet: `{"n", "m", "layout": [{"index", "group", "triple"}],
//!   "filler", "empty_brick", "brick", "brick3"?, "filler3"?}`

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boardgames::{validate_cyclic, BoardError, CyclicTriominoSet, DominoSet, GridAssignment, Pair, Triple};
use crate::gadgets::{GadgetSet, TowerLayout};
use crate::lattice::{LatticeError, LatticeTile, Point};
use crate::solver::{Placement, Region, RegionMode, SolverError, TilingCertificate};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Board(#[from] BoardError),
}

fn invalid(what: &'static str, reason: impl ToString) -> IoError {
    IoError::Invalid { what, reason: reason.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileJson {
    pub dim: usize,
    #[serde(default)]
    pub name: String,
    pub cells: Vec<Point>,
}

/// A named tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTile {
    pub name: String,
    pub tile: LatticeTile,
}

impl NamedTile {
    pub fn new(name: impl Into<String>, tile: LatticeTile) -> Self {
        Self { name: name.into(), tile }
    }
}

impl From<&NamedTile> for TileJson {
    fn from(t: &NamedTile) -> Self {
        Self {
            dim: t.tile.dim(),
            name: t.name.clone(),
            cells: t.tile.cells().map(<[i64]>::to_vec).collect(),
        }
    }
}

impl TryFrom<TileJson> for NamedTile {
    type Error = IoError;

    fn try_from(j: TileJson) -> Result<Self, IoError> {
        Ok(Self { tile: LatticeTile::from_points(j.dim, j.cells)?, name: j.name })
    }
}

pub fn tile_json(name: &str, tile: &LatticeTile) -> TileJson {
    TileJson::from(&NamedTile::new(name, tile.clone()))
}

/// Accepts a single Tile object or an array of them.
#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(TileJson),
    Many(Vec<TileJson>),
}

pub fn parse_tiles(text: &str) -> Result<Vec<NamedTile>, IoError> {
    let list = match serde_json::from_str::<OneOrMany>(text)? {
        OneOrMany::One(t) => vec![t],
        OneOrMany::Many(ts) => ts,
    };
    list.into_iter().map(NamedTile::try_from).collect()
}

pub fn tiles_to_json(tiles: &[NamedTile]) -> String {
    let list: Vec<TileJson> = tiles.iter().map(TileJson::from).collect();
    to_json_text(&list)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub mode: String,
    pub dims: Vec<i64>,
    #[serde(default)]
    pub holes: Vec<Point>,
}

impl From<&Region> for RegionJson {
    fn from(r: &Region) -> Self {
        Self {
            mode: r.mode.to_string(),
            dims: r.dims.clone(),
            holes: r.holes.cells().map(<[i64]>::to_vec).collect(),
        }
    }
}

impl TryFrom<RegionJson> for Region {
    type Error = IoError;

    fn try_from(j: RegionJson) -> Result<Self, IoError> {
        let mode = match j.mode.as_str() {
            "torus" => RegionMode::Torus,
            "bounded" | "box" => RegionMode::Bounded,
            other => return Err(invalid("region", format!("unknown mode {other:?}"))),
        };
        let dim = j.dims.len().max(1);
        let holes = LatticeTile::from_points(dim, j.holes)?;
        Ok(Region::new(mode, j.dims, holes)?)
    }
}

pub fn parse_region(text: &str) -> Result<Region, IoError> {
    serde_json::from_str::<RegionJson>(text)?.try_into()
}

pub fn region_to_json(r: &Region) -> String {
    to_json_text(&RegionJson::from(r))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoJson {
    pub m: u32,
    #[serde(rename = "R1")]
    pub r1: Vec<Pair>,
    #[serde(rename = "R2")]
    pub r2: Vec<Pair>,
}

pub fn parse_domino(text: &str) -> Result<DominoSet, IoError> {
    let j: DominoJson = serde_json::from_str(text)?;
    Ok(DominoSet::new(j.m, j.r1, j.r2)?)
}

pub fn domino_to_json(r: &DominoSet) -> String {
    to_json_text(&DominoJson {
        m: r.m,
        r1: r.r1.iter().copied().collect(),
        r2: r.r2.iter().copied().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriominoJson {
    pub n: u32,
    #[serde(rename = "S1")]
    pub s1: Vec<Triple>,
    #[serde(rename = "S2")]
    pub s2: Vec<Triple>,
    #[serde(rename = "S3")]
    pub s3: Vec<Triple>,
    #[serde(rename = "S4")]
    pub s4: Vec<Triple>,
    #[serde(default)]
    pub cyclic_closure: bool,
}

pub fn parse_triomino(text: &str) -> Result<CyclicTriominoSet, IoError> {
    let j: TriominoJson = serde_json::from_str(text)?;
    let rules = [j.s1, j.s2, j.s3, j.s4];
    Ok(if j.cyclic_closure {
        CyclicTriominoSet::from_representatives(j.n, rules)?
    } else {
        CyclicTriominoSet::new(j.n, rules)?
    })
}

/// Cyclic sets are written as orbit representatives, others in full.
pub fn triomino_to_json(s: &CyclicTriominoSet) -> String {
    let cyclic = validate_cyclic(s);
    let rule = |i: usize| if cyclic { s.representatives(i) } else { s.triples(i) };
    to_json_text(&TriominoJson {
        n: s.n,
        s1: rule(0),
        s2: rule(1),
        s3: rule(2),
        s4: rule(3),
        cyclic_closure: cyclic,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    pub px: usize,
    pub py: usize,
    pub values: Vec<Vec<u32>>,
}

pub fn parse_grid(text: &str) -> Result<GridAssignment, IoError> {
    let j: GridJson = serde_json::from_str(text)?;
    let g = GridAssignment::from_rows(&j.values)?;
    if (g.px, g.py) != (j.px, j.py) {
        return Err(invalid(
            "grid",
            format!("declared periods ({}, {}) but values are {}x{}", j.px, j.py, g.px, g.py),
        ));
    }
    Ok(g)
}

pub fn grid_to_json(g: &GridAssignment) -> String {
    to_json_text(&GridJson { px: g.px, py: g.py, values: g.rows() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementJson {
    pub tile: usize,
    pub offset: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub region: RegionJson,
    pub tiles: Vec<TileJson>,
    pub placements: Vec<PlacementJson>,
}

/// Tiles in a certificate are named `T0, T1, ...` unless names are given.
pub fn certificate_to_json(cert: &TilingCertificate, names: &[&str]) -> String {
    let tiles = cert
        .tiles
        .iter()
        .enumerate()
        .map(|(k, t)| match names.get(k) {
            Some(name) => tile_json(name, t),
            None => tile_json(&format!("T{k}"), t),
        })
        .collect();
    to_json_text(&CertificateJson {
        region: RegionJson::from(&cert.region),
        tiles,
        placements: cert
            .placements
            .iter()
            .map(|p| PlacementJson { tile: p.tile, offset: p.offset.clone() })
            .collect(),
    })
}

pub fn parse_certificate(text: &str) -> Result<TilingCertificate, IoError> {
    let j: CertificateJson = serde_json::from_str(text)?;
    Ok(TilingCertificate {
        region: j.region.try_into()?,
        tiles: j
            .tiles
            .into_iter()
            .map(|t| NamedTile::try_from(t).map(|n| n.tile))
            .collect::<Result<_, _>>()?,
        placements: j
            .placements
            .into_iter()
            .map(|p| Placement { tile: p.tile, offset: p.offset })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub index: usize,
    pub group: usize,
    pub triple: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSetJson {
    pub n: u32,
    pub m: usize,
    pub layout: Vec<LayoutJson>,
    pub filler: TileJson,
    pub empty_brick: TileJson,
    pub brick: TileJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brick3: Option<TileJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filler3: Option<TileJson>,
}

pub fn gadgets_to_json(g: &GadgetSet) -> String {
    to_json_text(&GadgetSetJson {
        n: g.n,
        m: g.m,
        layout: g
            .layout
            .iter()
            .map(|l| LayoutJson { index: l.index, group: l.group, triple: l.triple })
            .collect(),
        filler: tile_json("filler", &g.filler),
        empty_brick: tile_json("empty_brick", &g.empty_brick),
        brick: tile_json("brick", &g.brick),
        brick3: g.brick3.as_ref().map(|t| tile_json("brick3", t)),
        filler3: g.filler3.as_ref().map(|t| tile_json("filler3", t)),
    })
}

pub fn parse_gadgets(text: &str) -> Result<GadgetSet, IoError> {
    let j: GadgetSetJson = serde_json::from_str(text)?;
    let tile = |t: TileJson| NamedTile::try_from(t).map(|n| n.tile);
    let layout: Vec<TowerLayout> = j
        .layout
        .into_iter()
        .map(|l| TowerLayout { index: l.index, group: l.group, triple: l.triple })
        .collect();
    if layout.len() != j.m {
        return Err(invalid("gadget set", format!("m = {} but {} layout rows", j.m, layout.len())));
    }
    Ok(GadgetSet {
        n: j.n,
        m: j.m,
        layout,
        filler: tile(j.filler)?,
        empty_brick: tile(j.empty_brick)?,
        brick: tile(j.brick)?,
        brick3: j.brick3.map(tile).transpose()?,
        filler3: j.filler3.map(tile).transpose()?,
    })
}

/// Compact JSON with a trailing newline; tiles can hold millions of cells.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tile_round_trip() {
        let t = NamedTile::new("P", LatticeTile::from_points(2, [[0, 0], [1, 0]]).unwrap());
        let text = tiles_to_json(std::slice::from_ref(&t));
        assert_eq!(parse_tiles(&text).unwrap(), vec![t.clone()]);
        let single = serde_json::to_string(&TileJson::from(&t)).unwrap();
        assert_eq!(parse_tiles(&single).unwrap(), vec![t]);
    }

    #[test]
    fn tile_defaults_and_errors() {
        let t = parse_tiles(r#"{"dim": 1, "cells": [[3], [1]]}"#).unwrap();
        assert_eq!(t[0].tile, LatticeTile::line([1, 3]));
        assert!(matches!(
            parse_tiles(r#"{"dim": 2, "cells": [[3]]}"#),
            Err(IoError::Lattice(LatticeError::PointDimension { .. }))
        ));
    }

    #[test]
    fn region_round_trip() {
        let r = parse_region(r#"{"mode":"torus","dims":[6],"holes":[[1],[4]]}"#).unwrap();
        assert_eq!(r.mode, RegionMode::Torus);
        assert_eq!(r.free_cells(), 4);
        assert_eq!(parse_region(&region_to_json(&r)).unwrap(), r);
        assert!(parse_region(r#"{"mode":"sphere","dims":[6]}"#).is_err());
    }

    #[test]
    fn triomino_closure_flag() {
        let text = r#"{"n":5,"S1":[[0,1,2]],"S2":[],"S3":[],"S4":[],"cyclic_closure":true}"#;
        let s = parse_triomino(text).unwrap();
        assert_eq!(s.rule_len(0), 5);
        assert_eq!(parse_triomino(&triomino_to_json(&s)).unwrap(), s);
        let raw = parse_triomino(r#"{"n":5,"S1":[[0,1,2]],"S2":[],"S3":[],"S4":[]}"#).unwrap();
        assert_eq!(raw.rule_len(0), 1);
        assert_eq!(parse_triomino(&triomino_to_json(&raw)).unwrap(), raw);
    }

    #[test]
    fn grid_layout_is_row_major() {
        let g = parse_grid(r#"{"px":2,"py":1,"values":[[1,2]]}"#).unwrap();
        assert_eq!((g.get(0, 0), g.get(1, 0)), (1, 2));
        assert!(parse_grid(r#"{"px":1,"py":1,"values":[[1,2]]}"#).is_err());
        assert_eq!(parse_grid(&grid_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn domino_round_trip() {
        let r = parse_domino(r#"{"m":2,"R1":[[1,2],[2,1]],"R2":[[1,1]]}"#).unwrap();
        assert_eq!(parse_domino(&domino_to_json(&r)).unwrap(), r);
        assert!(parse_domino(r#"{"m":2,"R1":[[1,3]],"R2":[]}"#).is_err());
    }
}
