//! A deliberately naive tiling enumerator, used only to cross-check
//! [`crate::solver`]. It shares no code with the solver: it covers the
//! first uncovered cell in row-major order by trying every tile and every
//! tile cell as the anchor, with plain recursion and no heuristics.

use crate::lattice::LatticeTile;
use crate::solver::{Region, RegionMode};

/// `Some(true)` if a tiling exists, `Some(false)` if none does, `None` if
/// the search exceeded `node_limit` recursive calls.
pub fn brute_force_tileable(region: &Region, tiles: &[LatticeTile], node_limit: u64) -> Option<bool> {
    let dims = &region.dims;
    let volume: usize = dims.iter().map(|&d| d as usize).product();
    let flat = |p: &[i64]| -> Option<usize> {
        let mut k = 0usize;
        for (&x, &d) in p.iter().zip(dims) {
            let x = match region.mode {
                RegionMode::Torus => x.rem_euclid(d),
                RegionMode::Bounded if x >= 0 && x < d => x,
                RegionMode::Bounded => return None,
            };
            k = k * d as usize + x as usize;
        }
        Some(k)
    };
    let mut covered = vec![false; volume];
    for h in region.holes.cells() {
        covered[flat(h)?] = true;
    }
    let unflat = |mut k: usize| -> Vec<i64> {
        let mut p = vec![0i64; dims.len()];
        for axis in (0..dims.len()).rev() {
            p[axis] = (k % dims[axis] as usize) as i64;
            k /= dims[axis] as usize;
        }
        p
    };
    let mut nodes = 0u64;
    let mut state = Search { covered, tiles, flat: &flat, unflat: &unflat, nodes: &mut nodes, node_limit };
    state.run(0)
}

struct Search<'a, F, U> {
    covered: Vec<bool>,
    tiles: &'a [LatticeTile],
    flat: &'a F,
    unflat: &'a U,
    nodes: &'a mut u64,
    node_limit: u64,
}

impl<F, U> Search<'_, F, U>
where
    F: Fn(&[i64]) -> Option<usize>,
    U: Fn(usize) -> Vec<i64>,
{
    fn run(&mut self, start: usize) -> Option<bool> {
        *self.nodes += 1;
        if *self.nodes > self.node_limit {
            return None;
        }
        let Some(first) = (start..self.covered.len()).find(|&k| !self.covered[k]) else {
            return Some(true);
        };
        let target = (self.unflat)(first);
        for tile in self.tiles {
            for anchor in tile.cells() {
                let offset: Vec<i64> = target.iter().zip(anchor).map(|(t, a)| t - a).collect();
                let mut cells = Vec::with_capacity(tile.len());
                let mut fits = true;
                for c in tile.cells() {
                    let p: Vec<i64> = c.iter().zip(&offset).map(|(x, o)| x + o).collect();
                    match (self.flat)(&p) {
                        Some(k) if !self.covered[k] && !cells.contains(&k) => cells.push(k),
                        _ => {
                            fits = false;
                            break;
                        }
                    }
                }
                if !fits {
                    continue;
                }
                for &k in &cells {
                    self.covered[k] = true;
                }
                let found = self.run(first + 1);
                for &k in &cells {
                    self.covered[k] = false;
                }
                match found {
                    Some(false) => {}
                    other => return other,
                }
            }
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let domino = LatticeTile::line([0, 1]);
        let odd = Region::torus(vec![5]).unwrap();
        assert_eq!(brute_force_tileable(&odd, std::slice::from_ref(&domino), 1000), Some(false));
        let even = Region::bounded(vec![6]).unwrap();
        assert_eq!(brute_force_tileable(&even, std::slice::from_ref(&domino), 1000), Some(true));
        // {0, 2} wraps onto itself on Z_2
        let wrap = Region::torus(vec![2]).unwrap();
        assert_eq!(brute_force_tileable(&wrap, &[LatticeTile::line([0, 2])], 1000), Some(false));
    }
}
