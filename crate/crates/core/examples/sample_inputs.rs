//! Writes the sample inputs used by the suites as JSON files, for trying the
//! CLI by hand: `cargo run --example sample_inputs -- <dir>`.

use std::path::PathBuf;

use tileforge::boardgames::GridAssignment;
use tileforge::io;
use tileforge::suite::{sample_disconnected_tiles, sample_domino_sets, sample_triomino_set, sample_triomino_solution};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "samples".into()));
    std::fs::create_dir_all(&dir)?;
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> std::io::Result<()> {
        std::fs::write(dir.join(&name), text)?;
        written.push(name);
        Ok(())
    };
    put("triomino.json".into(), io::triomino_to_json(&sample_triomino_set()))?;
    put("solution.json".into(), io::grid_to_json(&sample_triomino_solution()))?;
    put("zero.json".into(), io::grid_to_json(&GridAssignment::constant(0)))?;
    let named: Vec<_> = sample_disconnected_tiles()
        .into_iter()
        .enumerate()
        .map(|(k, tile)| io::NamedTile { name: format!("P{}", k + 1), tile })
        .collect();
    put("disconnected.json".into(), io::tiles_to_json(&named))?;
    for (name, r, g) in sample_domino_sets() {
        put(format!("domino-{name}.json"), io::domino_to_json(&r))?;
        put(format!("grid-{name}.json"), io::grid_to_json(&g))?;
    }
    for name in written {
        println!("{}", dir.join(name).display());
    }
    Ok(())
}
