//! Exhaustive solvers for tiny instances.
//!
//! Colorability is decided by enumerating every coloring (or every choice
//! from the lists). The kappa-painting game is finite, so it is solved by
//! memoized minimax over Lister subsets and valid Painter answers; fixed
//! strategies are checked by letting the other side play every option.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::engine::{
    kappa_game, validate_painter_response, verify_coloring, verify_ranked_coloring, EngineError, GameState, Winner,
};
use crate::graph::{Vertex, WeightedDigraph};
use crate::lister::{filter_move, ListAssignment, ListError, Lister, ListerMove};
use crate::painter::Painter;
use crate::scalar::Scalar;

pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 24;
pub const DEFAULT_MAX_VERTICES: usize = 6;
pub const DEFAULT_STATE_BOUND: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{what} is {size}, above the bound {bound}")]
    TooLarge {
        what: &'static str,
        size: u128,
        bound: u128,
    },
    #[error("expected {expected} per-vertex values, found {found}")]
    Length { expected: usize, found: usize },
    #[error("symmetry reduction: {0}")]
    Symmetry(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Lists(#[from] ListError),
}

fn check_len(expected: usize, found: usize) -> Result<(), OracleError> {
    if expected == found {
        Ok(())
    } else {
        Err(OracleError::Length { expected, found })
    }
}

/// Outcome of a colorability search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringSolution {
    /// A valid coloring when one exists. Colors are `1..=k`, or list colors.
    pub witness: Option<Vec<usize>>,
    /// Number of candidate colorings examined.
    pub examined: u128,
}

impl ColoringSolution {
    pub fn is_colorable(&self) -> bool {
        self.witness.is_some()
    }
}

/// Odometer over `options[0] x options[1] x ...`; stops at the first
/// candidate accepted by `accept`.
fn search_product(options: &[Vec<usize>], mut accept: impl FnMut(&[usize]) -> bool) -> ColoringSolution {
    let n = options.len();
    let mut digits = vec![0usize; n];
    let mut current: Vec<usize> = options.iter().map(|o| o[0]).collect();
    let mut examined = 0u128;
    loop {
        examined += 1;
        if accept(&current) {
            return ColoringSolution {
                witness: Some(current),
                examined,
            };
        }
        let mut i = 0;
        loop {
            if i == n {
                return ColoringSolution {
                    witness: None,
                    examined,
                };
            }
            digits[i] += 1;
            if digits[i] < options[i].len() {
                current[i] = options[i][digits[i]];
                break;
            }
            digits[i] = 0;
            current[i] = options[i][0];
            i += 1;
        }
    }
}

fn product_size(options: &[Vec<usize>]) -> u128 {
    options
        .iter()
        .try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128))
        .unwrap_or(u128::MAX)
}

/// Is there a `tau`-majority coloring with colors `1..=k`?
pub fn is_majority_colorable<S: Scalar>(
    g: &WeightedDigraph<S>,
    tolerance: &[S],
    k: usize,
    bound: u128,
) -> Result<ColoringSolution, OracleError> {
    let n = g.vertex_count();
    check_len(n, tolerance.len())?;
    if k == 0 {
        return Ok(ColoringSolution {
            witness: (n == 0).then(Vec::new),
            examined: 0,
        });
    }
    let options = vec![(1..=k).collect::<Vec<_>>(); n];
    let size = product_size(&options);
    if size > bound {
        return Err(OracleError::TooLarge {
            what: "number of colorings",
            size,
            bound,
        });
    }
    Ok(search_product(&options, |c| {
        verify_coloring(g, c, |v, _| tolerance[v].clone()).is_ok()
    }))
}

/// Which constraint a list coloring must meet.
#[derive(Debug, Clone, Copy)]
pub enum ListConstraint<'a, S> {
    /// `mono(v) <= tau(v) * out_weight(v)`.
    Tolerance(&'a [S]),
    /// `mono(v) <= r_c(v)` with the ranks stored in the lists.
    Ranked,
}

/// Is there a coloring with `c(v)` in `L(v)` meeting the constraint?
pub fn is_colorable_from_lists<S: Scalar>(
    g: &WeightedDigraph<S>,
    constraint: ListConstraint<'_, S>,
    lists: &ListAssignment<S>,
    bound: u128,
) -> Result<ColoringSolution, OracleError> {
    let n = g.vertex_count();
    lists.check_vertex_count(n)?;
    if n == 0 {
        return Ok(ColoringSolution {
            witness: Some(Vec::new()),
            examined: 1,
        });
    }
    let options: Vec<Vec<usize>> = (0..n).map(|v| lists.colors(v).map(|c| c as usize).collect()).collect();
    let size = product_size(&options);
    if size > bound {
        return Err(OracleError::TooLarge {
            what: "number of list colorings",
            size,
            bound,
        });
    }
    match constraint {
        ListConstraint::Tolerance(tau) => {
            check_len(n, tau.len())?;
            Ok(search_product(&options, |c| {
                verify_coloring(g, c, |v, _| tau[v].clone()).is_ok()
            }))
        }
        ListConstraint::Ranked => {
            lists.check_ranked()?;
            Ok(search_product(&options, |c| {
                verify_ranked_coloring(g, c, |v, color| {
                    lists.rank(v, color as u32).cloned().expect("checked ranked")
                })
                .is_ok()
            }))
        }
    }
}

/// Per-vertex status in the kappa game: `None` once colored, otherwise the
/// number of presentations the vertex can still survive.
pub type KappaState = Vec<Option<u32>>;

/// A winning strategy restricted to the positions it can reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaStrategy {
    /// Lister's move in every reachable position.
    Lister(BTreeMap<KappaState, Vec<Vertex>>),
    /// Painter's answer to every Lister move in every reachable position.
    Painter(BTreeMap<(KappaState, Vec<Vertex>), Vec<Vertex>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaSolution {
    pub winner: Winner,
    pub witness: Option<KappaStrategy>,
    /// Distinct (canonical) positions evaluated.
    pub states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    pub max_vertices: usize,
    pub state_bound: usize,
    /// Automorphisms of the graph used to merge equivalent positions. Only
    /// sound when tolerances and counts are uniform; checked.
    pub symmetries: Vec<Vec<Vertex>>,
    pub witness: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            state_bound: DEFAULT_STATE_BOUND,
            symmetries: Vec::new(),
            witness: false,
        }
    }
}

/// Rotations `v -> v + s mod n`: automorphisms of directed cycles and of
/// circulant tournaments.
pub fn rotations(n: usize) -> Vec<Vec<Vertex>> {
    (0..n).map(|s| (0..n).map(|v| (v + s) % n).collect()).collect()
}

/// Every permutation of `0..n`: automorphisms of complete graphs.
pub fn all_permutations(n: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut perm: Vec<Vertex> = (0..n).collect();
    permute(&mut perm, 0, &mut out);
    out.sort();
    out
}

fn permute(perm: &mut Vec<Vertex>, at: usize, out: &mut Vec<Vec<Vertex>>) {
    if at == perm.len() {
        out.push(perm.clone());
        return;
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        permute(perm, at + 1, out);
        perm.swap(at, i);
    }
}

// Compact position: 0 = colored, r + 1 = uncolored with r presentations left.
type Code = Vec<u8>;

fn decode(code: &[u8]) -> KappaState {
    code.iter().map(|&c| c.checked_sub(1).map(u32::from)).collect()
}

fn next_code(code: &[u8], x: usize, y: usize) -> Code {
    code.iter()
        .enumerate()
        .map(|(v, &c)| match (x >> v & 1 == 1, y >> v & 1 == 1) {
            (true, true) => 0,
            (true, false) => c - 1,
            _ => c,
        })
        .collect()
}

fn terminal(code: &[u8]) -> Option<Winner> {
    if code.iter().all(|&c| c == 0) {
        Some(Winner::Painter)
    } else if code.contains(&1) {
        Some(Winner::Lister)
    } else {
        None
    }
}

fn mask_vertices(mask: usize, n: usize) -> Vec<Vertex> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn submasks_desc(mask: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

struct KappaSolver {
    n: usize,
    valid: Vec<bool>,
    perms: Vec<Vec<Vertex>>,
    memo: HashMap<Code, bool>,
    bound: usize,
}

impl KappaSolver {
    fn canonical(&self, code: &[u8]) -> Code {
        let mut best = code.to_vec();
        let mut image = vec![0u8; code.len()];
        for p in &self.perms {
            for (v, &c) in code.iter().enumerate() {
                image[p[v]] = c;
            }
            if image < best {
                best.clone_from(&image);
            }
        }
        best
    }

    fn uncolored(&self, code: &[u8]) -> usize {
        (0..self.n).filter(|&v| code[v] != 0).fold(0, |m, v| m | 1 << v)
    }

    fn lister_wins(&mut self, code: &[u8]) -> Result<bool, OracleError> {
        if let Some(w) = terminal(code) {
            return Ok(w == Winner::Lister);
        }
        let key = self.canonical(code);
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        if self.memo.len() >= self.bound {
            return Err(OracleError::TooLarge {
                what: "number of game positions",
                size: self.memo.len() as u128 + 1,
                bound: self.bound as u128,
            });
        }
        let uncolored = self.uncolored(code);
        let mut wins = false;
        for x in (1..=uncolored).filter(|x| x & !uncolored == 0) {
            if self.lister_move_wins(code, x)? {
                wins = true;
                break;
            }
        }
        self.memo.insert(key, wins);
        Ok(wins)
    }

    fn answers(&self, x: usize) -> Vec<usize> {
        submasks_desc(x).filter(|&y| self.valid[y]).collect()
    }

    fn lister_move_wins(&mut self, code: &[u8], x: usize) -> Result<bool, OracleError> {
        for y in self.answers(x) {
            if !self.lister_wins(&next_code(code, x, y))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn painter_answer(&mut self, code: &[u8], x: usize) -> Result<Option<usize>, OracleError> {
        for y in self.answers(x) {
            if !self.lister_wins(&next_code(code, x, y))? {
                return Ok(Some(y));
            }
        }
        Ok(None)
    }

    fn lister_witness(&mut self, code: &[u8], out: &mut BTreeMap<KappaState, Vec<Vertex>>) -> Result<(), OracleError> {
        let state = decode(code);
        if terminal(code).is_some() || out.contains_key(&state) {
            return Ok(());
        }
        let uncolored = self.uncolored(code);
        let mut chosen = None;
        for x in (1..=uncolored).filter(|x| x & !uncolored == 0) {
            if self.lister_move_wins(code, x)? {
                chosen = Some(x);
                break;
            }
        }
        let x = chosen.expect("called on Lister-won positions only");
        out.insert(state, mask_vertices(x, self.n));
        for y in self.answers(x) {
            self.lister_witness(&next_code(code, x, y), out)?;
        }
        Ok(())
    }

    fn painter_witness(
        &mut self,
        code: &[u8],
        seen: &mut HashSet<Code>,
        out: &mut BTreeMap<(KappaState, Vec<Vertex>), Vec<Vertex>>,
    ) -> Result<(), OracleError> {
        if terminal(code).is_some() || !seen.insert(code.to_vec()) {
            return Ok(());
        }
        let uncolored = self.uncolored(code);
        for x in (1..=uncolored).filter(|x| x & !uncolored == 0) {
            let y = self
                .painter_answer(code, x)?
                .expect("called on Painter-won positions only");
            out.insert((decode(code), mask_vertices(x, self.n)), mask_vertices(y, self.n));
            self.painter_witness(&next_code(code, x, y), seen, out)?;
        }
        Ok(())
    }
}

fn valid_answers<S: Scalar>(g: &WeightedDigraph<S>, tolerance: &[S]) -> Vec<bool> {
    let n = g.vertex_count();
    (0..1usize << n)
        .map(|y| {
            (0..n)
                .filter(|&v| y >> v & 1 == 1)
                .all(|v| g.out_weight_into(v, |w| y >> w & 1 == 1) <= tolerance[v].clone() * g.out_weight(v))
        })
        .collect()
}

fn check_symmetries<S: Scalar>(
    g: &WeightedDigraph<S>,
    tolerance: &[S],
    kappa: &[u32],
    perms: &[Vec<Vertex>],
) -> Result<(), OracleError> {
    if perms.is_empty() {
        return Ok(());
    }
    let n = g.vertex_count();
    if tolerance.windows(2).any(|w| w[0] != w[1]) || kappa.windows(2).any(|w| w[0] != w[1]) {
        return Err(OracleError::Symmetry("tolerances and counts must be uniform".into()));
    }
    for p in perms {
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(OracleError::Symmetry(format!("{p:?} is not a permutation of 0..{n}")));
        }
        let preserved = g.edges().all(|(v, w, wt)| g.weight(p[v], p[w]) == Some(wt));
        if !preserved {
            return Err(OracleError::Symmetry(format!("{p:?} is not an automorphism")));
        }
    }
    Ok(())
}

/// Solves the `tau`-majority `kappa`-painting game exactly.
pub fn solve_kappa_game<S: Scalar>(
    g: &WeightedDigraph<S>,
    tolerance: &[S],
    kappa: &[u32],
    config: &SolveConfig,
) -> Result<KappaSolution, OracleError> {
    let n = g.vertex_count();
    check_len(n, tolerance.len())?;
    check_len(n, kappa.len())?;
    kappa_game(tolerance.to_vec(), kappa.to_vec())?;
    if n > config.max_vertices {
        return Err(OracleError::TooLarge {
            what: "vertex count",
            size: n as u128,
            bound: config.max_vertices as u128,
        });
    }
    if let Some(&k) = kappa.iter().find(|&&k| k >= u8::MAX as u32 - 1) {
        return Err(OracleError::TooLarge {
            what: "presentation count",
            size: k as u128,
            bound: u8::MAX as u128 - 2,
        });
    }
    check_symmetries(g, tolerance, kappa, &config.symmetries)?;

    let mut solver = KappaSolver {
        n,
        valid: valid_answers(g, tolerance),
        perms: config.symmetries.clone(),
        memo: HashMap::new(),
        bound: config.state_bound,
    };
    let start: Code = kappa.iter().map(|&k| k as u8 + 1).collect();
    let lister = solver.lister_wins(&start)?;
    let winner = if lister { Winner::Lister } else { Winner::Painter };
    let witness = if !config.witness {
        None
    } else if lister {
        let mut map = BTreeMap::new();
        solver.lister_witness(&start, &mut map)?;
        Some(KappaStrategy::Lister(map))
    } else {
        let mut map = BTreeMap::new();
        solver.painter_witness(&start, &mut HashSet::new(), &mut map)?;
        Some(KappaStrategy::Painter(map))
    };
    Ok(KappaSolution {
        winner,
        witness,
        states: solver.memo.len(),
    })
}

/// Checks a strategy witness against every option of the other player.
pub fn witness_holds<S: Scalar>(
    g: &WeightedDigraph<S>,
    tolerance: &[S],
    kappa: &[u32],
    strategy: &KappaStrategy,
) -> bool {
    let n = g.vertex_count();
    if tolerance.len() != n || kappa.len() != n || n >= usize::BITS as usize {
        return false;
    }
    let valid = valid_answers(g, tolerance);
    let to_mask = |vs: &[Vertex]| vs.iter().try_fold(0usize, |m, &v| (v < n).then_some(m | 1 << v));
    let start: Code = kappa.iter().map(|&k| (k as u8).saturating_add(1)).collect();
    let mut stack = vec![start];
    let mut seen = HashSet::new();
    while let Some(code) = stack.pop() {
        if let Some(w) = terminal(&code) {
            let expected = match strategy {
                KappaStrategy::Lister(_) => Winner::Lister,
                KappaStrategy::Painter(_) => Winner::Painter,
            };
            if w != expected {
                return false;
            }
            continue;
        }
        if !seen.insert(code.clone()) {
            continue;
        }
        let uncolored = (0..n).filter(|&v| code[v] != 0).fold(0, |m, v| m | 1 << v);
        match strategy {
            KappaStrategy::Lister(map) => {
                let Some(x) = map.get(&decode(&code)).and_then(|x| to_mask(x)) else {
                    return false;
                };
                if x == 0 || x & !uncolored != 0 {
                    return false;
                }
                stack.extend(submasks_desc(x).filter(|&y| valid[y]).map(|y| next_code(&code, x, y)));
            }
            KappaStrategy::Painter(map) => {
                for x in (1..=uncolored).filter(|x| x & !uncolored == 0) {
                    let key = (decode(&code), mask_vertices(x, n));
                    let Some(y) = map.get(&key).and_then(|y| to_mask(y)) else {
                        return false;
                    };
                    if y & !x != 0 || !valid[y] {
                        return false;
                    }
                    stack.push(next_code(&code, x, y));
                }
            }
        }
    }
    true
}

/// Plays a Lister witness through the engine.
#[derive(Debug, Clone)]
pub struct StrategyLister<S> {
    tolerance: Vec<S>,
    kappa: Vec<u32>,
    moves: BTreeMap<KappaState, Vec<Vertex>>,
}

impl<S: Scalar> StrategyLister<S> {
    pub fn new(tolerance: Vec<S>, kappa: Vec<u32>, moves: BTreeMap<KappaState, Vec<Vertex>>) -> Self {
        Self {
            tolerance,
            kappa,
            moves,
        }
    }
}

fn presentations_made<S: Scalar>(spent: &S, tau: &S) -> u32 {
    (spent.clone() / tau.clone()).to_f64().round() as u32
}

impl<S: Scalar> Lister<S> for StrategyLister<S> {
    fn next_move(&mut self, state: &GameState<'_, S>) -> Option<ListerMove<S>> {
        let key: KappaState = (0..self.kappa.len())
            .map(|v| {
                (!state.is_colored(v))
                    .then(|| self.kappa[v].saturating_sub(presentations_made(state.spent(v), &self.tolerance[v])))
            })
            .collect();
        let x = self.moves.get(&key)?;
        Some(x.iter().map(|&v| (v, self.tolerance[v].clone())).collect())
    }
}

/// Plays a Painter witness through the engine, tracking the position itself.
#[derive(Debug, Clone)]
pub struct StrategyPainter {
    position: KappaState,
    answers: BTreeMap<(KappaState, Vec<Vertex>), Vec<Vertex>>,
}

impl StrategyPainter {
    pub fn new(kappa: &[u32], answers: BTreeMap<(KappaState, Vec<Vertex>), Vec<Vertex>>) -> Self {
        Self {
            position: kappa.iter().map(|&k| Some(k)).collect(),
            answers,
        }
    }
}

impl<S: Scalar> Painter<S> for StrategyPainter {
    fn respond(&mut self, mv: &ListerMove<S>) -> Vec<Vertex> {
        let x: Vec<Vertex> = mv.vertices().collect();
        let y = self
            .answers
            .get(&(self.position.clone(), x.clone()))
            .cloned()
            .unwrap_or_default();
        for &v in &x {
            self.position[v] = if y.contains(&v) {
                None
            } else {
                self.position[v].map(|r| r.saturating_sub(1))
            };
        }
        y
    }
}

/// A presented set and the answer to it.
pub type Round = (Vec<Vertex>, Vec<Vertex>);

/// Result of running a fixed Painter against every Lister move sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPainterReport {
    pub painter_wins: bool,
    /// Lister moves and Painter answers of a lost line, when one exists.
    pub losing_line: Option<Vec<Round>>,
    /// First answer the referee rejected, with the reason.
    pub invalid_response: Option<(Vec<Vertex>, Vec<Vertex>, String)>,
    pub states: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct FixedKey {
    colored: usize,
    counts: Vec<u32>,
}

struct FixedSearch<'g, 'p, S, P: ?Sized> {
    g: &'g WeightedDigraph<S>,
    tolerance: &'g [S],
    painter: &'p mut P,
    answers: HashMap<usize, Vec<Vertex>>,
    memo: HashMap<FixedKey, bool>,
    invalid: Option<(Vec<Vertex>, Vec<Vertex>, String)>,
    bound: usize,
}

impl<S: Scalar, P: Painter<S> + ?Sized> FixedSearch<'_, '_, S, P> {
    fn answer(&mut self, x: usize) -> (ListerMove<S>, Vec<Vertex>) {
        let n = self.g.vertex_count();
        let mv: ListerMove<S> = mask_vertices(x, n)
            .into_iter()
            .map(|v| (v, self.tolerance[v].clone()))
            .collect();
        let painter = &mut *self.painter;
        let y = self
            .answers
            .entry(x)
            .or_insert_with(|| {
                let mut y = painter.respond(&mv);
                y.sort_unstable();
                y
            })
            .clone();
        (mv, y)
    }

    /// Returns a losing line for the Painter from this position, if any.
    fn lister_line(&mut self, state: &GameState<'_, S>, counts: &[u32]) -> Result<Option<Vec<Round>>, OracleError> {
        let n = self.g.vertex_count();
        let colored = (0..n).filter(|&v| state.is_colored(v)).fold(0, |m, v| m | 1 << v);
        let key = FixedKey {
            colored,
            counts: counts.to_vec(),
        };
        if self.memo.get(&key) == Some(&false) {
            return Ok(None);
        }
        if self.memo.len() >= self.bound {
            return Err(OracleError::TooLarge {
                what: "number of game positions",
                size: self.memo.len() as u128 + 1,
                bound: self.bound as u128,
            });
        }
        let uncolored = !colored & ((1 << n) - 1);
        for x in (1..=uncolored).filter(|x| x & !uncolored == 0) {
            let (raw, y) = self.answer(x);
            let mv = filter_move(&raw, state).expect("uncolored, non-negative");
            let check = validate_painter_response(self.g, &mv, &y);
            let xs = mask_vertices(x, n);
            if !check.is_ok() {
                self.invalid.get_or_insert((xs.clone(), y.clone(), check.to_string()));
                return Ok(Some(vec![(xs, y)]));
            }
            let mut next = state.clone();
            next.record_round(&mv, &y);
            let mut next_counts = counts.to_vec();
            for &v in xs.iter().filter(|v| !y.contains(v)) {
                next_counts[v] += 1;
            }
            let tail = match next.winner() {
                Some(Winner::Painter) => None,
                Some(Winner::Lister) => Some(Vec::new()),
                None => self.lister_line(&next, &next_counts)?,
            };
            if let Some(mut tail) = tail {
                tail.insert(0, (xs, y));
                self.memo.insert(key, true);
                return Ok(Some(tail));
            }
        }
        self.memo.insert(key, false);
        Ok(None)
    }
}

/// Does `painter` win the kappa game against every Lister? The game runs on
/// the engine's state and validation. Responses are cached per presented
/// set, which assumes the painter is positional (its answer depends only on
/// the move); all strategies in [`crate::painter`] are.
pub fn painter_wins_kappa_game<S: Scalar, P: Painter<S> + ?Sized>(
    g: &WeightedDigraph<S>,
    tolerance: &[S],
    kappa: &[u32],
    painter: &mut P,
    config: &SolveConfig,
) -> Result<FixedPainterReport, OracleError> {
    let n = g.vertex_count();
    check_len(n, tolerance.len())?;
    check_len(n, kappa.len())?;
    if n > config.max_vertices {
        return Err(OracleError::TooLarge {
            what: "vertex count",
            size: n as u128,
            bound: config.max_vertices as u128,
        });
    }
    let game = kappa_game(tolerance.to_vec(), kappa.to_vec())?;
    let state = GameState::new(g, game.lambda)?;
    let mut search = FixedSearch {
        g,
        tolerance,
        painter,
        answers: HashMap::new(),
        memo: HashMap::new(),
        invalid: None,
        bound: config.state_bound,
    };
    let line = if n == 0 {
        None
    } else {
        search.lister_line(&state, &vec![0; n])?
    };
    Ok(FixedPainterReport {
        painter_wins: line.is_none(),
        losing_line: line,
        invalid_response: search.invalid,
        states: search.memo.len(),
    })
}

/// Result of running a fixed Lister against every valid Painter answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedListerReport {
    pub lister_always_wins: bool,
    /// Number of complete games explored.
    pub games: usize,
    pub max_rounds: usize,
    /// Painter answers of a game the Lister did not win, when one exists.
    pub escape: Option<Vec<Vec<Vertex>>>,
}

/// Plays `lister` against every sequence of valid Painter answers. The lister
/// is cloned at every branch point.
pub fn lister_wins_against_all<S: Scalar, L: Lister<S> + Clone>(
    g: &WeightedDigraph<S>,
    lambda: &[S],
    lister: &L,
    game_bound: usize,
) -> Result<FixedListerReport, OracleError> {
    let n = g.vertex_count();
    if n >= usize::BITS as usize {
        return Err(OracleError::TooLarge {
            what: "vertex count",
            size: n as u128,
            bound: usize::BITS as u128 - 1,
        });
    }
    let state = GameState::new(g, lambda.to_vec())?;
    let mut report = FixedListerReport {
        lister_always_wins: true,
        games: 0,
        max_rounds: 0,
        escape: None,
    };
    explore_lister(g, state, lister.clone(), &mut Vec::new(), &mut report, game_bound)?;
    Ok(report)
}

fn explore_lister<S: Scalar, L: Lister<S> + Clone>(
    g: &WeightedDigraph<S>,
    state: GameState<'_, S>,
    mut lister: L,
    answers: &mut Vec<Vec<Vertex>>,
    report: &mut FixedListerReport,
    bound: usize,
) -> Result<(), OracleError> {
    let finish = |report: &mut FixedListerReport, won: bool, answers: &Vec<Vec<Vertex>>| {
        report.games += 1;
        report.max_rounds = report.max_rounds.max(answers.len());
        if !won && report.lister_always_wins {
            report.lister_always_wins = false;
            report.escape = Some(answers.clone());
        }
    };
    if let Some(w) = state.winner() {
        finish(report, w == Winner::Lister, answers);
        return Ok(());
    }
    if report.games >= bound {
        return Err(OracleError::TooLarge {
            what: "number of explored games",
            size: report.games as u128 + 1,
            bound: bound as u128,
        });
    }
    let mut mv = None;
    for _ in 0..=crate::engine::DEFAULT_SKIP_BOUND {
        match lister.next_move(&state) {
            None => break,
            Some(raw) => {
                if let Some(m) = filter_move(&raw, &state) {
                    mv = Some(m);
                    break;
                }
            }
        }
    }
    let Some(mv) = mv else {
        finish(report, false, answers);
        return Ok(());
    };
    let x: usize = mv.vertices().fold(0, |m, v| m | 1 << v);
    for y in submasks_desc(x) {
        let ys = mask_vertices(y, g.vertex_count());
        if !validate_painter_response(g, &mv, &ys).is_ok() {
            continue;
        }
        let mut next = state.clone();
        next.record_round(&mv, &ys);
        answers.push(ys);
        explore_lister(g, next, lister.clone(), answers, report, bound)?;
        answers.pop();
    }
    Ok(())
}

/// All simple digraphs on `n` vertices with unit weights, one per
/// isomorphism class (the representative with the smallest arc mask).
pub fn nonisomorphic_digraphs<S: Scalar>(n: usize) -> Vec<WeightedDigraph<S>> {
    assert!(n <= 5, "enumeration is only meant for tiny n");
    let arcs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|v| (0..n).filter(move |&w| w != v).map(move |w| (v, w)))
        .collect();
    let index: HashMap<(Vertex, Vertex), usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let perms = all_permutations(n);
    let mut out = Vec::new();
    for mask in 0u64..1 << arcs.len() {
        let canonical = perms.iter().all(|p| {
            let image = arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0u64, |m, (_, &(v, w))| m | 1 << index[&(p[v], p[w])]);
            image >= mask
        });
        if canonical {
            let edges = arcs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(v, w))| (v, w, S::one()));
            out.push(WeightedDigraph::new(n, edges).expect("simple by construction"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{play_game, EngineConfig};
    use crate::graph::{complete_graph, directed_cycle};
    use crate::lister::CliqueLister;
    use crate::painter::UndirectedPainter;
    use crate::scalar::Rational;

    fn q(p: i64, d: i64) -> Rational {
        Rational::from_ratio(p, d)
    }

    const B: u128 = DEFAULT_ENUMERATION_BOUND;

    #[test]
    fn colorability_examples() {
        let tri = directed_cycle::<Rational>(3);
        let half = vec![q(1, 2); 3];
        let two = is_majority_colorable(&tri, &half, 2, B).unwrap();
        assert!(!two.is_colorable());
        assert_eq!(two.examined, 8);
        let three = is_majority_colorable(&tri, &half, 3, B).unwrap();
        let c = three.witness.unwrap();
        assert!(verify_coloring(&tri, &c, |_, _| q(1, 2)).is_ok());

        let k2 = complete_graph::<Rational>(2);
        assert!(!is_majority_colorable(&k2, &[q(1, 2), q(1, 2)], 1, B)
            .unwrap()
            .is_colorable());
        assert!(is_majority_colorable(&k2, &[q(1, 2), q(1, 2)], 2, B)
            .unwrap()
            .is_colorable());
        assert!(matches!(
            is_majority_colorable(&complete_graph::<Rational>(6), &vec![q(1, 2); 6], 100, 1000),
            Err(OracleError::TooLarge { .. })
        ));
    }

    #[test]
    fn list_examples() {
        let k2 = complete_graph::<Rational>(2);
        let tau = [q(1, 2), q(1, 2)];
        let both = ListAssignment::plain(vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert!(is_colorable_from_lists(&k2, ListConstraint::Tolerance(&tau), &both, B)
            .unwrap()
            .is_colorable());
        let same = ListAssignment::plain(vec![vec![1], vec![1]]).unwrap();
        assert!(!is_colorable_from_lists(&k2, ListConstraint::Tolerance(&tau), &same, B)
            .unwrap()
            .is_colorable());
        let tri = directed_cycle::<Rational>(3);
        let disjoint = ListAssignment::plain(vec![vec![1], vec![2], vec![3]]).unwrap();
        let sol = is_colorable_from_lists(&tri, ListConstraint::Tolerance(&vec![q(0, 1); 3]), &disjoint, B).unwrap();
        assert_eq!(sol.witness, Some(vec![1, 2, 3]));

        let ranked = crate::io::parse_lists::<Rational>("0: 1=1, 2=0\n1: 1=1, 2=0\n").unwrap();
        let sol = is_colorable_from_lists(&k2, ListConstraint::Ranked, &ranked, B).unwrap();
        assert_eq!(sol.witness, Some(vec![1, 1]));
        let zero = crate::io::parse_lists::<Rational>("0: 1=0\n1: 1=0\n").unwrap();
        assert!(!is_colorable_from_lists(&k2, ListConstraint::Ranked, &zero, B)
            .unwrap()
            .is_colorable());
    }

    #[test]
    fn kappa_examples() {
        let cfg = SolveConfig::default();
        let k2 = complete_graph::<Rational>(2);
        let t2 = [q(1, 2), q(1, 2)];
        assert_eq!(
            solve_kappa_game(&k2, &t2, &[1, 1], &cfg).unwrap().winner,
            Winner::Lister
        );
        assert_eq!(
            solve_kappa_game(&k2, &t2, &[2, 2], &cfg).unwrap().winner,
            Winner::Painter
        );
        let tri = directed_cycle::<Rational>(3);
        let t3 = [q(1, 2), q(1, 2), q(1, 2)];
        assert_eq!(
            solve_kappa_game(&tri, &t3, &[2, 2, 2], &cfg).unwrap().winner,
            Winner::Lister
        );
        assert_eq!(
            solve_kappa_game(&tri, &t3, &[4, 4, 4], &cfg).unwrap().winner,
            Winner::Painter
        );
    }

    #[test]
    fn symmetry_agrees_and_shrinks() {
        let tri = directed_cycle::<Rational>(3);
        let t3 = vec![q(1, 2); 3];
        for k in 1..=4 {
            let plain = solve_kappa_game(&tri, &t3, &[k; 3], &SolveConfig::default()).unwrap();
            let cfg = SolveConfig {
                symmetries: rotations(3),
                ..SolveConfig::default()
            };
            let sym = solve_kappa_game(&tri, &t3, &[k; 3], &cfg).unwrap();
            assert_eq!(plain.winner, sym.winner);
            assert!(sym.states <= plain.states);
        }
        let bad = SolveConfig {
            symmetries: all_permutations(3),
            ..SolveConfig::default()
        };
        assert!(matches!(
            solve_kappa_game(&tri, &t3, &[2; 3], &bad),
            Err(OracleError::Symmetry(_))
        ));
    }

    #[test]
    fn witnesses_hold_and_replay() {
        let cfg = SolveConfig {
            witness: true,
            ..SolveConfig::default()
        };
        let tri = directed_cycle::<Rational>(3);
        let t3 = vec![q(1, 2); 3];

        let lost = solve_kappa_game(&tri, &t3, &[2; 3], &cfg).unwrap();
        let Some(KappaStrategy::Lister(moves)) = &lost.witness else {
            panic!()
        };
        assert!(witness_holds(&tri, &t3, &[2; 3], lost.witness.as_ref().unwrap()));
        let game = kappa_game(t3.clone(), vec![2; 3]).unwrap();
        let mut lister = StrategyLister::new(t3.clone(), vec![2; 3], moves.clone());
        let mut painter = crate::painter::SccPainter::new(&tri).unwrap();
        let trace = play_game(&tri, &game.lambda, &mut lister, &mut painter, &EngineConfig::default()).unwrap();
        assert_eq!(trace.winner, Winner::Lister);

        let won = solve_kappa_game(&tri, &t3, &[4; 3], &cfg).unwrap();
        let Some(KappaStrategy::Painter(answers)) = &won.witness else {
            panic!()
        };
        assert!(witness_holds(&tri, &t3, &[4; 3], won.witness.as_ref().unwrap()));
        let game = kappa_game(t3.clone(), vec![4; 3]).unwrap();
        let mut painter = StrategyPainter::new(&[4; 3], answers.clone());
        let mut lister = game.wrap(CliqueLister::new(q(1, 2)));
        let trace = play_game(&tri, &game.lambda, &mut lister, &mut painter, &EngineConfig::default()).unwrap();
        assert_eq!(trace.winner, Winner::Painter);

        // A witness for the wrong side fails the check.
        assert!(!witness_holds(&tri, &t3, &[4; 3], lost.witness.as_ref().unwrap()));
    }

    #[test]
    fn fixed_painter() {
        let k2 = complete_graph::<Rational>(2);
        let t2 = [q(1, 2), q(1, 2)];
        let cfg = SolveConfig::default();
        let mut p = UndirectedPainter::new(k2.clone()).unwrap();
        let win = painter_wins_kappa_game(&k2, &t2, &[2, 2], &mut p, &cfg).unwrap();
        assert!(win.painter_wins && win.invalid_response.is_none());
        let lose = painter_wins_kappa_game(&k2, &t2, &[1, 1], &mut p, &cfg).unwrap();
        assert!(!lose.painter_wins);
        assert_eq!(lose.losing_line, Some(vec![(vec![0, 1], vec![0])]));

        let mut greedy_all = crate::painter::EdgelessPainter;
        let bad = painter_wins_kappa_game(&k2, &t2, &[2, 2], &mut greedy_all, &cfg).unwrap();
        assert!(!bad.painter_wins);
        assert!(bad.invalid_response.is_some());
    }

    #[test]
    fn clique_lister_lower_bounds() {
        for k in 2..=3 {
            let g = complete_graph::<Rational>(k);
            let lambda = vec![q(k as i64 - 1, k as i64); k];
            let r = lister_wins_against_all(&g, &lambda, &CliqueLister::<Rational>::lower_bound(k), 100_000).unwrap();
            assert!(r.lister_always_wins, "K_{k}");
            assert_eq!(r.max_rounds, k - 1);
        }
        let g = complete_graph::<Rational>(2);
        let r =
            lister_wins_against_all(&g, &vec![q(1, 1); 2], &CliqueLister::<Rational>::lower_bound(2), 1000).unwrap();
        assert!(!r.lister_always_wins);
        assert!(r.escape.is_some());
    }

    #[test]
    fn digraph_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| nonisomorphic_digraphs::<Rational>(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 16, 218]);
    }

    #[test]
    fn permutations() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(rotations(3), vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    }
}
