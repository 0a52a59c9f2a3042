//! Browser bindings for three interactive views: a slice of the adjacent
//! cube partition, a tower column with its filler placements, and the lift
//! of a domino solution to a cyclic triomino solution.
//!
//! Every export returns a JSON string; failures are `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use tileforge::boardgames::{check_triomino, encode_domino, lift_solution, project_solution};
use tileforge::gadgets::{solve_column, tower, BlockerKind};
use tileforge::io;
use tileforge::partition::partition_cube;
use tileforge::suite::gadget_modulus;

/// Largest `m` the page may request; the cube has `(m+2)^3` cells.
pub const MAX_PARTITION_M: i64 = 40;

/// Part labels of the 3-D partition on the layer `z`, as `labels[y][x]`
/// with 0 for cells outside every part.
pub fn partition_slice(m: i64, z: i64) -> Result<Value, String> {
    if !(1..=MAX_PARTITION_M).contains(&m) {
        return Err(format!("m must be in 1..={MAX_PARTITION_M}"));
    }
    let part = partition_cube(3, m).map_err(|e| e.to_string())?;
    if !(0..part.side).contains(&z) {
        return Err(format!("z must be in 0..{}", part.side));
    }
    let labels: Vec<Vec<i64>> = (0..part.side)
        .map(|y| (0..part.side).map(|x| part.label_at(&[x, y, z]).unwrap_or(0)).collect())
        .collect();
    Ok(json!({"m": m, "side": part.side, "z": z, "labels": labels}))
}

/// The period-`6n` column holding the alpha, beta and gamma towers shifted
/// by `6a`, `6b`, `6c`, and the `{0, n}` filler placements when they exist.
pub fn tower_column(n: u32, a: i64, b: i64, c: i64) -> Result<Value, String> {
    if n > 31 {
        return Err("n must be at most 31".into());
    }
    let period = 6 * n as i64;
    let mut owner = vec![Value::from("free"); period as usize];
    let mut obstacles = Vec::new();
    for (kind, shift) in BlockerKind::ALL.into_iter().zip([a, b, c]) {
        let t = tower(kind, n).map_err(|e| e.to_string())?;
        for cell in t.cells.cells() {
            let z = (cell[0] + 6 * shift).rem_euclid(period);
            owner[z as usize] = Value::from(kind.to_string());
            obstacles.push(z);
        }
    }
    let fillers = solve_column(n, &obstacles).map_err(|e| e.to_string())?;
    if let Some(zs) = &fillers {
        for (k, &z) in zs.iter().enumerate() {
            for cell in [z, z + n as i64] {
                owner[cell.rem_euclid(period) as usize] = json!({"filler": k});
            }
        }
    }
    Ok(json!({
        "n": n, "period": period, "shifts": [a, b, c],
        "tileable": fillers.is_some(),
        "forbidden": (a - b).rem_euclid(n as i64) == 0 && (b - c).rem_euclid(n as i64) == 0,
        "cells": owner,
    }))
}

/// Encodes the domino set over the smallest `n >= 2m+1` with
/// `gcd(n, 6) = 1`, lifts the domino solution with parity `delta`, and
/// checks the lift and the projection back.
pub fn lift_domino(domino: &str, grid: &str, delta: u8) -> Result<Value, String> {
    let r = io::parse_domino(domino).map_err(|e| e.to_string())?;
    let g = io::parse_grid(grid).map_err(|e| e.to_string())?;
    let n = gadget_modulus(r.m);
    let s = encode_domino(&r, n, true).map_err(|e| e.to_string())?;
    let t = lift_solution(&r, &g, delta).map_err(|e| e.to_string())?;
    let valid = check_triomino(&s, &t).map_err(|e| e.to_string())?;
    let round_trip = project_solution(&s, &r, &t).map(|back| back.same_function(&g)).unwrap_or(false);
    Ok(json!({
        "n": n, "delta": delta % 2,
        "rule_sizes": (0..4).map(|i| s.rule_len(i)).collect::<Vec<_>>(),
        "triomino": {"px": t.px, "py": t.py, "values": t.rows()},
        "valid": valid, "round_trip": round_trip,
    }))
}

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": e}).to_string(),
    }
}

#[wasm_bindgen(js_name = partitionSlice)]
pub fn partition_slice_js(m: i32, z: i32) -> String {
    respond(partition_slice(m.into(), z.into()))
}

#[wasm_bindgen(js_name = towerColumn)]
pub fn tower_column_js(n: u32, a: i32, b: i32, c: i32) -> String {
    respond(tower_column(n, a.into(), b.into(), c.into()))
}

#[wasm_bindgen(js_name = liftDomino)]
pub fn lift_domino_js(domino: &str, grid: &str, delta: u8) -> String {
    respond(lift_domino(domino, grid, delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slice_covers_every_label() {
        let v = partition_slice(4, 3).unwrap();
        let side = v["side"].as_i64().unwrap();
        let rows = v["labels"].as_array().unwrap();
        assert_eq!(rows.len() as i64, side);
        assert!(partition_slice(0, 0).is_err());
        assert!(partition_slice(4, side).is_err());
    }

    #[test]
    fn tower_column_verdicts() {
        let blocked = tower_column(5, 0, 0, 0).unwrap();
        assert_eq!(blocked["tileable"], false);
        assert_eq!(blocked["forbidden"], true);
        let open = tower_column(5, 1, 0, 2).unwrap();
        assert_eq!(open["tileable"], true);
        let cells = open["cells"].as_array().unwrap();
        assert_eq!(cells.len(), 30);
        assert!(cells.iter().all(|c| c != "free"));
        assert!(tower_column(4, 0, 0, 0).is_err());
    }

    #[test]
    fn lift_round_trip() {
        let domino = r#"{"m":2,"R1":[[1,2],[2,1]],"R2":[[1,1],[2,2]]}"#;
        let grid = r#"{"px":2,"py":1,"values":[[1,2]]}"#;
        for delta in [0, 1] {
            let v = lift_domino(domino, grid, delta).unwrap();
            assert_eq!(v["n"], 5);
            assert_eq!(v["valid"], true);
            assert_eq!(v["round_trip"], true);
        }
        let err = respond(lift_domino(domino, r#"{"px":1,"py":1,"values":[[1]]}"#, 0));
        assert!(err.contains("error"));
    }
}
