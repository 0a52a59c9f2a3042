//! Domino and cyclic triomino rule systems on doubly periodic boards.
//!
//! A domino set `(W, R1, R2)` with `W = {1..m}` constrains horizontally and
//! vertically adjacent values. A cyclic triomino set `(Z_n, S1..S4)`
//! constrains the four L-shaped triples `(T(s), T(s+u_i), T(s+u_{i+1}))`
//! with `u = (1,0), (0,1), (-1,0), (0,-1)`, and every `S_i` is closed under
//! adding a constant to all three entries.
//!
//! Boards are represented by one period: `T(x, y) = values[y mod py][x mod px]`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Pair = [u32; 2];
pub type Triple = [u32; 3];

/// Triomino directions `u_1..u_4`.
pub const DIRECTIONS: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error("domino alphabet must be non-empty")]
    EmptyAlphabet,
    #[error("pair {pair:?} is not over {{1..{m}}}")]
    PairOutOfRange { pair: Pair, m: u32 },
    #[error("triple {triple:?} is not over Z_{n}")]
    TripleOutOfRange { triple: Triple, n: u32 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("modulus {n} is too small for {m} symbols (need n >= {need})")]
    ModulusTooSmall { n: u32, m: u32, need: u32 },
    #[error("gcd({0}, 6) != 1")]
    NotCoprimeToSix(u32),
    #[error("grid periods must be positive and match the value count")]
    BadGrid,
    #[error("value {value} at ({x}, {y}) is outside {range}")]
    ValueOutOfRange { x: usize, y: usize, value: u32, range: String },
    #[error("grid is not a solution of the domino set")]
    NotADominoSolution,
    #[error("grid is not a solution of the triomino set")]
    NotATriominoSolution,
    #[error("non-canonical triomino solution: {0}")]
    NonCanonical(String),
    #[error("orbits of the encoded rule {rule} collide")]
    OrbitCollision { rule: usize },
}

/// `(W, R1, R2)` with `W = {1..m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominoSet {
    pub m: u32,
    pub r1: BTreeSet<Pair>,
    pub r2: BTreeSet<Pair>,
}

impl DominoSet {
    pub fn new<A, B>(m: u32, r1: A, r2: B) -> Result<Self, BoardError>
    where
        A: IntoIterator<Item = Pair>,
        B: IntoIterator<Item = Pair>,
    {
        if m == 0 {
            return Err(BoardError::EmptyAlphabet);
        }
        let check = |set: BTreeSet<Pair>| -> Result<BTreeSet<Pair>, BoardError> {
            match set.iter().find(|p| p.iter().any(|&v| v < 1 || v > m)) {
                Some(&pair) => Err(BoardError::PairOutOfRange { pair, m }),
                None => Ok(set),
            }
        };
        Ok(Self {
            m,
            r1: check(r1.into_iter().collect())?,
            r2: check(r2.into_iter().collect())?,
        })
    }

    /// Rules allowing every pair.
    pub fn permissive(m: u32) -> Self {
        let all: Vec<Pair> = (1..=m).flat_map(|a| (1..=m).map(move |b| [a, b])).collect();
        Self::new(m, all.clone(), all).expect("pairs in range")
    }
}

/// `(Z_n, S1..S4)`; `rules[i]` is `S_{i+1}` as a membership table over
/// `Z_n^3`. Cyclicity is not enforced on construction, see
/// [`validate_cyclic`].
#[derive(Clone, PartialEq, Eq)]
pub struct CyclicTriominoSet {
    pub n: u32,
    rules: [Vec<bool>; 4],
}

impl fmt::Debug for CyclicTriominoSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<usize> = (0..4).map(|i| self.rule_len(i)).collect();
        f.debug_struct("CyclicTriominoSet")
            .field("n", &self.n)
            .field("rule_sizes", &sizes)
            .finish()
    }
}

impl CyclicTriominoSet {
    /// Rule sets exactly as listed.
    pub fn new(n: u32, rules: [Vec<Triple>; 4]) -> Result<Self, BoardError> {
        if n == 0 {
            return Err(BoardError::ZeroModulus);
        }
        let size = (n as usize).pow(3);
        let mut tables: [Vec<bool>; 4] = std::array::from_fn(|_| vec![false; size]);
        for (table, triples) in tables.iter_mut().zip(&rules) {
            for &t in triples {
                if t.iter().any(|&v| v >= n) {
                    return Err(BoardError::TripleOutOfRange { triple: t, n });
                }
                table[Self::key(n, t)] = true;
            }
        }
        Ok(Self { n, rules: tables })
    }

    /// Rule sets generated by diagonal shifts of the given representatives.
    pub fn from_representatives(n: u32, reps: [Vec<Triple>; 4]) -> Result<Self, BoardError> {
        let closed = reps.map(|r| orbit_closure(n, &r));
        Self::new(n, closed)
    }

    /// Rule sets `Z_n^3` minus the diagonal orbits of the given triples.
    pub fn from_forbidden(n: u32, forbidden: [Vec<Triple>; 4]) -> Result<Self, BoardError> {
        if n == 0 {
            return Err(BoardError::ZeroModulus);
        }
        let mut out = Self::permissive(n)?;
        for (table, reps) in out.rules.iter_mut().zip(&forbidden) {
            if let Some(&t) = reps.iter().find(|t| t.iter().any(|&v| v >= n)) {
                return Err(BoardError::TripleOutOfRange { triple: t, n });
            }
            for t in orbit_closure(n, reps) {
                table[Self::key(n, t)] = false;
            }
        }
        Ok(out)
    }

    /// Every rule contains all of `Z_n^3`.
    pub fn permissive(n: u32) -> Result<Self, BoardError> {
        let all = all_triples(n);
        Self::new(n, [all.clone(), all.clone(), all.clone(), all])
    }

    fn key(n: u32, t: Triple) -> usize {
        let n = n as usize;
        (t[0] as usize * n + t[1] as usize) * n + t[2] as usize
    }

    /// Membership in `S_{rule+1}`; entries are reduced mod `n`.
    pub fn contains(&self, rule: usize, t: Triple) -> bool {
        let r = t.map(|v| v % self.n);
        self.rules[rule][Self::key(self.n, r)]
    }

    pub fn rule_len(&self, rule: usize) -> usize {
        self.rules[rule].iter().filter(|&&b| b).count()
    }

    /// Triples of `S_{rule+1}` in lexicographic order.
    pub fn triples(&self, rule: usize) -> Vec<Triple> {
        all_triples(self.n)
            .into_iter()
            .filter(|&t| self.contains(rule, t))
            .collect()
    }

    /// Orbit representatives of `S_{rule+1}`: its triples with first entry 0.
    pub fn representatives(&self, rule: usize) -> Vec<Triple> {
        self.triples(rule).into_iter().filter(|t| t[0] == 0).collect()
    }
}

pub fn all_triples(n: u32) -> Vec<Triple> {
    let mut out = Vec::with_capacity((n as usize).pow(3));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// `t + (k, k, k) mod n`.
pub fn shift(n: u32, t: Triple, k: u32) -> Triple {
    t.map(|v| (v + k) % n)
}

/// All diagonal shifts of the given triples.
pub fn orbit_closure(n: u32, triples: &[Triple]) -> Vec<Triple> {
    let set: BTreeSet<Triple> = triples
        .iter()
        .flat_map(|&t| (0..n).map(move |k| shift(n, t.map(|v| v % n), k)))
        .collect();
    set.into_iter().collect()
}

/// Whether all four rules are closed under diagonal shifts.
pub fn validate_cyclic(s: &CyclicTriominoSet) -> bool {
    (0..4).all(|rule| {
        s.triples(rule)
            .into_iter()
            .all(|t| s.contains(rule, shift(s.n, t, 1)))
    })
}

/// One period of a doubly periodic board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAssignment {
    pub px: usize,
    pub py: usize,
    values: Vec<u32>,
}

impl GridAssignment {
    /// `rows[y][x]`.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, BoardError> {
        let py = rows.len();
        let px = rows.first().map_or(0, Vec::len);
        if px == 0 || rows.iter().any(|r| r.len() != px) {
            return Err(BoardError::BadGrid);
        }
        Ok(Self { px, py, values: rows.concat() })
    }

    pub fn from_fn(px: usize, py: usize, f: impl Fn(usize, usize) -> u32) -> Result<Self, BoardError> {
        if px == 0 || py == 0 {
            return Err(BoardError::BadGrid);
        }
        let mut values = Vec::with_capacity(px * py);
        for y in 0..py {
            for x in 0..px {
                values.push(f(x, y));
            }
        }
        Ok(Self { px, py, values })
    }

    pub fn constant(value: u32) -> Self {
        Self { px: 1, py: 1, values: vec![value] }
    }

    pub fn get(&self, x: i64, y: i64) -> u32 {
        let xi = x.rem_euclid(self.px as i64) as usize;
        let yi = y.rem_euclid(self.py as i64) as usize;
        self.values[yi * self.px + xi]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.values.chunks(self.px).map(<[u32]>::to_vec).collect()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Adds `k` to every value mod `n`.
    pub fn shifted(&self, k: u32, n: u32) -> Self {
        Self {
            px: self.px,
            py: self.py,
            values: self.values.iter().map(|v| (v + k) % n).collect(),
        }
    }

    /// Whether both grids describe the same function on `Z^2`.
    pub fn same_function(&self, other: &GridAssignment) -> bool {
        let lx = lcm(self.px, other.px) as i64;
        let ly = lcm(self.py, other.py) as i64;
        (0..ly).all(|y| (0..lx).all(|x| self.get(x, y) == other.get(x, y)))
    }

    /// Same function stored with the smallest periods along each axis.
    pub fn minimal_periods(&self) -> Self {
        let px = (1..=self.px)
            .find(|&p| self.px.is_multiple_of(p) && self.is_x_periodic(p))
            .unwrap_or(self.px);
        let py = (1..=self.py)
            .find(|&p| self.py.is_multiple_of(p) && self.is_y_periodic(p))
            .unwrap_or(self.py);
        Self::from_fn(px, py, |x, y| self.get(x as i64, y as i64)).expect("positive periods")
    }

    fn is_x_periodic(&self, p: usize) -> bool {
        (0..self.py as i64)
            .all(|y| (0..self.px as i64).all(|x| self.get(x, y) == self.get(x + p as i64, y)))
    }

    fn is_y_periodic(&self, p: usize) -> bool {
        (0..self.py as i64)
            .all(|y| (0..self.px as i64).all(|x| self.get(x, y) == self.get(x, y + p as i64)))
    }

    fn check_range(&self, lo: u32, hi: u32) -> Result<(), BoardError> {
        for y in 0..self.py {
            for x in 0..self.px {
                let v = self.values[y * self.px + x];
                if v < lo || v > hi {
                    return Err(BoardError::ValueOutOfRange { x, y, value: v, range: format!("{lo}..={hi}") });
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Whether the board satisfies `(T(s), T(s+e_i)) in R_i` everywhere.
pub fn check_domino(r: &DominoSet, g: &GridAssignment) -> Result<bool, BoardError> {
    g.check_range(1, r.m)?;
    for y in 0..g.py as i64 {
        for x in 0..g.px as i64 {
            let v = g.get(x, y);
            if !r.r1.contains(&[v, g.get(x + 1, y)]) || !r.r2.contains(&[v, g.get(x, y + 1)]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First `(x, y, rule)` whose L-triple is not allowed, if any.
pub fn first_triomino_violation(
    s: &CyclicTriominoSet,
    g: &GridAssignment,
) -> Result<Option<(usize, usize, usize)>, BoardError> {
    g.check_range(0, s.n - 1)?;
    for y in 0..g.py {
        for x in 0..g.px {
            let (xi, yi) = (x as i64, y as i64);
            for rule in 0..4 {
                let (ax, ay) = DIRECTIONS[rule];
                let (bx, by) = DIRECTIONS[(rule + 1) % 4];
                let t = [g.get(xi, yi), g.get(xi + ax, yi + ay), g.get(xi + bx, yi + by)];
                if !s.contains(rule, t) {
                    return Ok(Some((x, y, rule + 1)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether the board satisfies all four L-triomino rules everywhere.
pub fn check_triomino(s: &CyclicTriominoSet, g: &GridAssignment) -> Result<bool, BoardError> {
    Ok(first_triomino_violation(s, g)?.is_none())
}

/// Orbit representatives `K_1..K_4` encoding a domino set.
pub fn encoding_representatives(r: &DominoSet) -> [Vec<Triple>; 4] {
    let l: Vec<Triple> = (1..=r.m).map(|w| [w, 0, 0]).collect();
    let with = |extra: Vec<Triple>| -> Vec<Triple> {
        let mut k = l.clone();
        k.extend(extra);
        k
    };
    [
        with(r.r1.iter().map(|&[a, b]| [0, b, a]).collect()),
        with(r.r2.iter().map(|&[a, b]| [0, a, b]).collect()),
        with(r.r1.iter().map(|&[a, b]| [0, a, b]).collect()),
        with(r.r2.iter().map(|&[a, b]| [0, b, a]).collect()),
    ]
}

/// The cyclic triomino set whose solutions correspond to the domino set's.
/// `n` must be at least `2m + 1`; with `require_coprime_six` also
/// `gcd(n, 6) = 1`, as the polycube gadgets need.
pub fn encode_domino(
    r: &DominoSet,
    n: u32,
    require_coprime_six: bool,
) -> Result<CyclicTriominoSet, BoardError> {
    let need = 2 * r.m + 1;
    if n < need {
        return Err(BoardError::ModulusTooSmall { n, m: r.m, need });
    }
    if require_coprime_six && gcd(n as usize, 6) != 1 {
        return Err(BoardError::NotCoprimeToSix(n));
    }
    let reps = encoding_representatives(r);
    let set = CyclicTriominoSet::from_representatives(n, reps.clone())?;
    for (rule, k) in reps.iter().enumerate() {
        if set.rule_len(rule) != n as usize * k.len() {
            return Err(BoardError::OrbitCollision { rule: rule + 1 });
        }
    }
    Ok(set)
}

/// Board position of domino cell `(x, y)` when the nonzero cells sit on
/// parity `delta`: `e_1 -> (1, -1)` and `e_2 -> (-1, -1)`.
pub fn lift_position(x: i64, y: i64, delta: u8) -> (i64, i64) {
    (x - y + delta as i64, -x - y)
}

/// Embeds a domino solution into the triomino board: zeros on parity
/// `1 - delta`, domino values on the rotated sublattice of parity `delta`.
/// Both periods of the result are `2 lcm(px, py)`.
pub fn lift_solution(
    r: &DominoSet,
    g: &GridAssignment,
    delta: u8,
) -> Result<GridAssignment, BoardError> {
    if !check_domino(r, g)? {
        return Err(BoardError::NotADominoSolution);
    }
    let delta = delta % 2;
    let period = 2 * lcm(g.px, g.py);
    GridAssignment::from_fn(period, period, |a, b| {
        let (a, b) = (a as i64, b as i64);
        if (a + b).rem_euclid(2) != delta as i64 {
            return 0;
        }
        let a0 = a - delta as i64;
        // invert (x - y, -x - y) = (a0, b)
        let x = (a0 - b) / 2;
        let y = (-a0 - b) / 2;
        g.get(x, y)
    })
}

/// Canonical form of a triomino solution: the global shift `k` and the
/// parity `delta` that carries the nonzero values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckerboardForm {
    pub shift: u32,
    pub delta: u8,
}

/// Finds `k`, `delta` such that `T - k` vanishes exactly on parity
/// `1 - delta` and lies in `{1..m}` on parity `delta`.
pub fn checkerboard_form(
    m: u32,
    n: u32,
    g: &GridAssignment,
) -> Result<CheckerboardForm, BoardError> {
    if !g.px.is_multiple_of(2) || !g.py.is_multiple_of(2) {
        return Err(BoardError::NonCanonical(format!(
            "periods ({}, {}) do not preserve the checkerboard",
            g.px, g.py
        )));
    }
    for k in 0..n {
        for delta in 0..2u8 {
            let fits = (0..g.py).all(|y| {
                (0..g.px).all(|x| {
                    let v = (g.get(x as i64, y as i64) + n - k) % n;
                    if (x + y) % 2 == delta as usize {
                        (1..=m).contains(&v)
                    } else {
                        v == 0
                    }
                })
            });
            if fits {
                return Ok(CheckerboardForm { shift: k, delta });
            }
        }
    }
    Err(BoardError::NonCanonical(
        "no shift puts zeros on one parity and {1..m} on the other".into(),
    ))
}

/// Reads the domino solution off a triomino solution of `s`, undoing the
/// global shift. The result uses minimal periods.
pub fn project_solution(
    s: &CyclicTriominoSet,
    r: &DominoSet,
    g: &GridAssignment,
) -> Result<GridAssignment, BoardError> {
    if !check_triomino(s, g)? {
        return Err(BoardError::NotATriominoSolution);
    }
    let form = checkerboard_form(r.m, s.n, g)?;
    let period = lcm(g.px, g.py);
    let n = s.n;
    let out = GridAssignment::from_fn(period, period, |x, y| {
        let (a, b) = lift_position(x as i64, y as i64, form.delta);
        (g.get(a, b) + n - form.shift) % n
    })?
    .minimal_periods();
    if !check_domino(r, &out)? {
        return Err(BoardError::NonCanonical("projected grid violates the domino rules".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alternating() -> DominoSet {
        DominoSet::new(2, [[1, 2], [2, 1]], [[1, 1], [2, 2]]).unwrap()
    }

    #[test]
    fn domino_checker_examples() {
        let r = alternating();
        let g = GridAssignment::from_rows(&[vec![1, 2]]).unwrap();
        assert!(check_domino(&r, &g).unwrap());
        assert!(!check_domino(&r, &GridAssignment::constant(1)).unwrap());
        assert!(check_domino(&DominoSet::permissive(3), &GridAssignment::constant(2)).unwrap());
        assert!(matches!(
            check_domino(&r, &GridAssignment::constant(3)),
            Err(BoardError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn cyclic_validation() {
        let full = CyclicTriominoSet::permissive(4).unwrap();
        assert!(validate_cyclic(&full));
        let e = Vec::new();
        let lone = CyclicTriominoSet::new(3, [vec![[0, 1, 2]], e.clone(), e.clone(), e]).unwrap();
        assert!(!validate_cyclic(&lone));
    }

    #[test]
    fn encoding_representatives_by_hand() {
        let r = DominoSet::new(2, [[1, 2]], []).unwrap();
        let k = encoding_representatives(&r);
        assert_eq!(k[0], vec![[1, 0, 0], [2, 0, 0], [0, 2, 1]]);
        assert!(k[2].contains(&[0, 1, 2]));
        assert_eq!(k[1], vec![[1, 0, 0], [2, 0, 0]]);
        let s = encode_domino(&r, 5, false).unwrap();
        assert_eq!(s.rule_len(0), 15);
        assert_eq!(s.rule_len(1), 10);
        assert!(validate_cyclic(&s));
    }

    #[test]
    fn encoding_modulus_guards() {
        let r = alternating();
        assert_eq!(
            encode_domino(&r, 4, false).unwrap_err(),
            BoardError::ModulusTooSmall { n: 4, m: 2, need: 5 }
        );
        assert!(encode_domino(&r, 9, false).is_ok());
        assert_eq!(encode_domino(&r, 9, true).unwrap_err(), BoardError::NotCoprimeToSix(9));
        assert!(encode_domino(&r, 5, true).is_ok());
    }

    #[test]
    fn lift_constant_solution() {
        let r = DominoSet::new(1, [[1, 1]], [[1, 1]]).unwrap();
        let s = encode_domino(&r, 5, true).unwrap();
        let g = GridAssignment::constant(1);
        for delta in [0, 1] {
            let t = lift_solution(&r, &g, delta).unwrap();
            assert_eq!((t.px, t.py), (2, 2));
            for y in 0..2 {
                for x in 0..2 {
                    let zero = (x + y) % 2 == (1 - delta as i64);
                    assert_eq!(t.get(x, y) == 0, zero);
                }
            }
            assert!(check_triomino(&s, &t).unwrap());
            assert_eq!(project_solution(&s, &r, &t).unwrap(), g);
        }
    }

    #[test]
    fn lift_rejects_non_solutions() {
        let r = alternating();
        assert_eq!(
            lift_solution(&r, &GridAssignment::constant(1), 0).unwrap_err(),
            BoardError::NotADominoSolution
        );
    }

    #[test]
    fn project_rejects_degenerate_boards() {
        let r = DominoSet::new(1, [[1, 1]], [[1, 1]]).unwrap();
        let permissive = CyclicTriominoSet::permissive(5).unwrap();
        let zeros = GridAssignment::from_fn(2, 2, |_, _| 0).unwrap();
        assert!(matches!(
            project_solution(&permissive, &r, &zeros),
            Err(BoardError::NonCanonical(_))
        ));
        // zeros on both parities
        let mixed = GridAssignment::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert!(matches!(
            project_solution(&permissive, &r, &mixed),
            Err(BoardError::NonCanonical(_))
        ));
    }

    #[test]
    fn minimal_periods_and_equality() {
        let g = GridAssignment::from_rows(&[vec![1, 2, 1, 2], vec![1, 2, 1, 2]]).unwrap();
        let m = g.minimal_periods();
        assert_eq!((m.px, m.py), (2, 1));
        assert!(m.same_function(&g));
        assert!(!m.same_function(&GridAssignment::constant(1)));
    }
}
