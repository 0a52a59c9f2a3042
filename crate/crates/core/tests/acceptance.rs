//! Acceptance gate: criteria 1–9 of the specification, each under its time
//! limit. Every criterion prints one `criterion N: PASS|FAIL (time)` line
//! to stderr (unaffected by libtest capture) and fails its test on error.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tileforge::boardgames::{
    all_triples, check_domino, check_triomino, encode_domino, lift_solution, project_solution,
};
use tileforge::gadgets::{
    blocker_truth_table, box_region, build_gadgets, bump_dent_report, filler_hole_check,
    pole_column, realize_tiling, solve_column, tower_check,
};
use tileforge::lattice::LatticeTile;
use tileforge::partition::partition_cube;
use tileforge::simulate::{
    build_s_frame, local_forcing_check, simulate_set, verify_lattice_partition, DEFAULT_MAX_CELLS,
};
use tileforge::solver::{verify, RegionMode};
use tileforge::suite::{
    compare_with_oracle, filler_hole_boxes, gadget_modulus, one_dimensional_family,
    random_instance, sample_disconnected_tiles, sample_domino_sets, sample_triomino_set,
    sample_triomino_solution,
};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs one criterion, prints its verdict line and fails on error or when
/// the wall time exceeds `limit`.
fn criterion(id: u32, name: &str, limit: Duration, check: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|detail| {
        if elapsed <= limit {
            Ok(detail)
        } else {
            Err(format!("took {elapsed:.2?}, limit {limit:?}"))
        }
    });
    let line = match &outcome {
        Ok(detail) => format!("criterion {id}: PASS ({elapsed:.2?}) {name}: {detail}"),
        Err(e) => format!("criterion {id}: FAIL ({elapsed:.2?}) {name}: {e}"),
    };
    writeln!(std::io::stderr(), "{line}").ok();
    if let Err(e) = outcome {
        panic!("criterion {id} failed: {e}");
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let gcd = (1..=a.min(b)).rev().find(|k| a.is_multiple_of(*k) && b.is_multiple_of(*k)).unwrap_or(1);
    a / gcd * b
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_1_blocker_truth_table() {
    criterion(1, "blocker truth table", secs(1), || {
        let table = blocker_truth_table().map_err(|e| e.to_string())?;
        ensure(table.len() == 8, || format!("{} rows", table.len()))?;
        for row in &table {
            let expected = row.states != [true, true, true];
            ensure(row.tileable == expected, || format!("{:?}: tileable = {}", row.states, row.tileable))?;
        }
        let tileable = table.iter().filter(|r| r.tileable).count();
        ensure(tileable == 7, || format!("{tileable} tileable cases"))?;
        Ok("7/8 tileable, (1,1,1) blocked".into())
    });
}

#[test]
fn criterion_2_tower_criterion() {
    criterion(2, "tower criterion", secs(5), || {
        let mut calls = 0;
        for n in [5u32, 7] {
            for [a, b, c] in all_triples(n) {
                let (a, b, c) = (a as i64, b as i64, c as i64);
                let tileable = tower_check(n, a, b, c).map_err(|e| e.to_string())?;
                calls += 1;
                ensure(tileable == !(a == b && b == c), || format!("n={n} ({a},{b},{c}): tileable = {tileable}"))?;
            }
        }
        ensure(calls == 468, || format!("{calls} solver calls"))?;
        // Shifts are taken mod n: a = b + n is still forbidden.
        ensure(!tower_check(5, 6, 1, 11).map_err(|e| e.to_string())?, || "shifted triple tileable".into())?;
        Ok(format!("{calls} solver calls"))
    });
}

#[test]
fn criterion_3_partitions() {
    criterion(3, "cube partitions", secs(30), || {
        let mut sizes: Vec<(usize, i64)> = (1..=12).map(|m| (3, m)).collect();
        sizes.extend((1..=4).flat_map(|m| [(4, m), (5, m)]));
        let results: Vec<Result<(), String>> = sizes
            .par_iter()
            .map(|&(d, m)| {
                let p = partition_cube(d, m).map_err(|e| e.to_string())?;
                let tag = format!("d={d} m={m}");
                ensure(p.parts.len() as i64 == m, || format!("{tag}: {} parts", p.parts.len()))?;
                ensure(p.is_exact(), || format!("{tag}: not exact"))?;
                ensure(p.all_parts_connected(), || format!("{tag}: disconnected part"))?;
                let inner = p.check_internal_adjacency();
                ensure(inner.holds, || format!("{tag}: internal adjacency {:?}", inner.missing))?;
                let outer = p.check_external_adjacency();
                ensure(outer.holds, || format!("{tag}: external adjacency {:?}", outer.missing))
            })
            .collect();
        results.into_iter().collect::<Result<Vec<()>, String>>()?;
        Ok(format!("{} (d, m) sizes", sizes.len()))
    });
}

/// Peak resident set size of this process in bytes (Linux only).
fn peak_rss() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

#[test]
fn criterion_4_s3() {
    criterion(4, "S_3", secs(120), || {
        let frame = build_s_frame(3, 3).map_err(|e| e.to_string())?;
        ensure(frame.period == 84, || format!("period {}", frame.period))?;
        ensure(frame.tile.len() == 84 * 84 * 84, || format!("|S| = {}", frame.tile.len()))?;
        ensure(frame.tile.is_connected().unwrap_or(false), || "S_3 is disconnected".into())?;
        ensure(verify_lattice_partition(&frame.tile, 84), || "S_3 + 84Z^3 is not a partition".into())?;
        let forcing = local_forcing_check(&frame.tile, 84, &frame.bumps(), &frame.dents(), 2);
        ensure(forcing.holds(), || format!("forcing fails: {:?}", forcing.failures.first()))?;
        let rss = peak_rss();
        if let Some(bytes) = rss {
            ensure(bytes < 2 << 30, || format!("peak RSS {bytes} bytes"))?;
        }
        Ok(format!(
            "|S| = {}, {} offsets checked, peak RSS {}",
            frame.tile.len(),
            forcing.offsets_checked,
            rss.map_or("n/a".into(), |b| format!("{} MiB", b >> 20))
        ))
    });
}

#[test]
fn criterion_5_simulate_set() {
    criterion(5, "simulate_set", secs(120), || {
        let tiles = sample_disconnected_tiles();
        ensure(tiles.iter().all(|t| !t.is_connected().unwrap_or(true)), || "inputs must be disconnected".into())?;
        let result = simulate_set(&tiles, DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?;
        ensure(result.l == 3 && result.period == 84, || format!("l = {}, period = {}", result.l, result.period))?;
        for (p, q) in tiles.iter().zip(&result.transformed) {
            ensure(q.len() == p.len() * 84 * 84 * 84, || format!("|P'| = {}", q.len()))?;
            ensure(q.is_connected().unwrap_or(false), || "output is disconnected".into())?;
        }
        let cell = LatticeTile::from_points(3, [[0, 0, 0]]).map_err(|e| e.to_string())?;
        let single = simulate_set(&[cell], DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?;
        ensure(single.transformed[0] == single.s_tile, || "1-cell input does not reproduce S".into())?;
        Ok(format!("|P'| = {:?}", result.transformed.iter().map(|t| t.len()).collect::<Vec<_>>()))
    });
}

#[test]
fn criterion_6_encoding_round_trip() {
    criterion(6, "domino -> triomino round trip", secs(5), || {
        let sets: Vec<_> = sample_domino_sets().into_iter().filter(|(_, r, _)| r.m <= 3).collect();
        ensure(sets.len() >= 3, || format!("only {} sets", sets.len()))?;
        for (name, r, g) in &sets {
            ensure(check_domino(r, g).map_err(|e| e.to_string())?, || format!("{name}: not a solution"))?;
            let n = gadget_modulus(r.m);
            ensure(n > 2 * r.m && n % 2 == 1 && !n.is_multiple_of(3), || format!("{name}: n = {n}"))?;
            ensure((2 * r.m + 1..n).all(|k| k % 2 == 0 || k % 3 == 0), || format!("{name}: n = {n} not minimal"))?;
            let s = encode_domino(r, n, true).map_err(|e| e.to_string())?;
            for delta in [0, 1] {
                let t = lift_solution(r, g, delta).map_err(|e| e.to_string())?;
                let period = 2 * lcm(g.px, g.py);
                ensure(t.px == period && t.py == period, || format!("{name}: lift is {}x{}", t.px, t.py))?;
                ensure(check_triomino(&s, &t).map_err(|e| e.to_string())?, || {
                    format!("{name}: lift with delta {delta} is not a triomino solution")
                })?;
                let back = project_solution(&s, r, &t).map_err(|e| e.to_string())?;
                ensure(back.same_function(g), || format!("{name}: projection with delta {delta} differs"))?;
            }
        }
        Ok(format!("{} sets, delta in {{0, 1}}", sets.len()))
    });
}

#[test]
fn criterion_7_gadget_end_to_end() {
    let s = sample_triomino_set();
    let t = sample_triomino_solution();
    criterion(7, "gadgets, unscaled", secs(60), || {
        ensure(s.n == 5, || format!("n = {}", s.n))?;
        let g = build_gadgets(&s).map_err(|e| e.to_string())?;
        ensure(g.m == 4, || format!("m = {}", g.m))?;
        let zero = tileforge::boardgames::GridAssignment::constant(0);
        for sol in [&zero, &t] {
            let cert = realize_tiling(&s, &g, sol, false).map_err(|e| e.to_string())?;
            let want = vec![(3 * 4 + 2) * sol.px as i64, 5 * sol.py as i64, 30];
            ensure(cert.region.dims == want, || format!("torus {:?}", cert.region.dims))?;
            ensure(verify(&cert).ok, || "certificate rejected".into())?;
        }
        // The forbidden triple of each pole leaves its column UNSAT.
        for entry in &g.layout {
            let heights = entry.triple.map(i64::from);
            let column = pole_column(&g, entry.index, heights).map_err(|e| e.to_string())?;
            ensure(solve_column(g.n, &column).map_err(|e| e.to_string())?.is_none(), || {
                format!("pole {} with its forbidden triple is tileable", entry.index)
            })?;
        }
        Ok(format!("|B| = {}, {} forbidden columns UNSAT", g.brick.len(), g.layout.len()))
    });
    criterion(7, "gadgets, 3-scaled", secs(900), || {
        let g = build_gadgets(&s).map_err(|e| e.to_string())?;
        ensure(bump_dent_report(&g).map_err(|e| e.to_string())?.iter().all(|c| c.matched && c.disjoint), || {
            "bumps do not meet dents".into()
        })?;
        let cert = realize_tiling(&s, &g, &t, true).map_err(|e| e.to_string())?;
        ensure(cert.region.dims == vec![210, 15, 90], || format!("torus {:?}", cert.region.dims))?;
        ensure(verify(&cert).ok, || "scaled certificate rejected".into())?;
        Ok(format!("{} placements on {:?}", cert.placements.len(), cert.region.dims))
    });
}

#[test]
fn criterion_8_solver_vs_brute_force() {
    criterion(8, "solver vs brute force", secs(120), || {
        let family = one_dimensional_family(10);
        let one_d: Result<Vec<_>, String> = family
            .par_iter()
            .map(|(region, tile)| {
                compare_with_oracle(region, std::slice::from_ref(tile))?
                    .ok_or_else(|| format!("oracle gave up on {region:?}"))
            })
            .collect();
        let one_d = one_d?;
        ensure(
            family.iter().any(|(r, _)| r.mode == RegionMode::Torus && r.dims == [42]),
            || "family stops before L = 42".into(),
        )?;
        let random: Result<Vec<usize>, String> = (0..200u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(i);
                for tries in 1.. {
                    let (region, tiles) = random_instance(&mut rng);
                    ensure(region.dim() >= 2 && region.volume() <= 10_000, || format!("{region:?}"))?;
                    if compare_with_oracle(&region, &tiles)?.is_some() {
                        return Ok(tries);
                    }
                }
                unreachable!()
            })
            .collect();
        let skipped: usize = random?.iter().map(|t| t - 1).sum();
        Ok(format!("{} 1-D instances, 200 random 2-D/3-D ({skipped} oracle give-ups redrawn)", one_d.len()))
    });
}

#[test]
fn criterion_9_filler_hole() {
    criterion(9, "filler hole lemma", secs(60), || {
        let boxes = filler_hole_boxes();
        ensure(boxes.len() >= 20, || format!("{} cases", boxes.len()))?;
        let results: Vec<Result<(), String>> = boxes
            .par_iter()
            .map(|&(n, dims)| {
                ensure(dims[0] <= 9 && dims[1] <= 9 && dims[2] <= 5, || format!("{dims:?}"))?;
                let region = box_region(dims).map_err(|e| e.to_string())?;
                let report = filler_hole_check(n, &region).map_err(|e| e.to_string())?;
                ensure(report.witness.is_some(), || format!("{dims:?}: no plate"))?;
                ensure(!report.tileable, || format!("n={n} {dims:?}: filler tiles the box"))
            })
            .collect();
        results.into_iter().collect::<Result<Vec<()>, String>>()?;
        Ok(format!("{} boxes UNSAT", boxes.len()))
    });
}
