//! Edge diagrams, level actions, valid intervals, and bordered cylindrical blocks.
//!
//! Vertex `v` is height `v`; level `l` is the unit gap between heights `l` and
//! `l + 1`. An interval `[a, b]` is treated as the set of levels `a..b`, so
//! `[1, 2]` and `[2, 3]` are disjoint.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::limits::{self, MAX_EXHAUSTIVE_N};
use crate::perm::Permutation;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    fn between(from: usize, to: usize) -> Self {
        if to > from {
            Direction::Up
        } else {
            Direction::Down
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

/// An undirected interval `[low, high]` of vertices, `low < high`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub low: usize,
    pub high: usize,
}

impl Interval {
    pub fn new(low: usize, high: usize) -> Self {
        assert!(low < high, "empty interval [{low},{high}]");
        Interval { low, high }
    }

    /// Number of levels covered.
    pub fn width(&self) -> usize {
        self.high - self.low
    }

    pub fn levels(&self) -> std::ops::Range<usize> {
        self.low..self.high
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.low <= other.low && other.high <= self.high
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.high <= other.low || other.high <= self.low
    }

    /// Nested either way, or disjoint.
    pub fn is_compatible(&self, other: &Interval) -> bool {
        self.contains(other) || other.contains(self) || self.is_disjoint(other)
    }

    /// The image of the levels under `sigma`, if it is again an interval.
    pub fn image(&self, sigma: &Permutation) -> Option<Interval> {
        let (mut lo, mut hi) = (usize::MAX, 0);
        for l in self.levels() {
            let v = sigma.get(l);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (hi - lo + 1 == self.width()).then(|| Interval::new(lo, hi + 1))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.low, self.high)
    }
}

/// An edge of a diagram, normalized so that `low < high`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DirectedInterval {
    pub low: usize,
    pub high: usize,
    pub direction: Direction,
}

impl DirectedInterval {
    /// The edge travelled from vertex `from` to vertex `to`.
    pub fn between(from: usize, to: usize) -> Self {
        assert_ne!(from, to);
        DirectedInterval {
            low: from.min(to),
            high: from.max(to),
            direction: Direction::between(from, to),
        }
    }

    pub fn up(low: usize, high: usize) -> Self {
        DirectedInterval::between(low, high)
    }

    pub fn down(low: usize, high: usize) -> Self {
        DirectedInterval::between(high, low)
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.low, self.high)
    }

    /// The vertex the edge leaves from.
    pub fn tail(&self) -> usize {
        match self.direction {
            Direction::Up => self.low,
            Direction::Down => self.high,
        }
    }

    pub fn head(&self) -> usize {
        match self.direction {
            Direction::Up => self.high,
            Direction::Down => self.low,
        }
    }
}

impl fmt::Display for DirectedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{} {}", self.low, self.high, self.direction)
    }
}

/// The edges `e_1, ..., e_{n-1}` of a permutation, kept in path order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDiagram {
    pub n: usize,
    pub edges: Vec<DirectedInterval>,
    /// `{pi(1), pi(n)}` sorted.
    pub endpoints: (usize, usize),
}

impl EdgeDiagram {
    /// The edges sorted, for comparison as a set.
    pub fn edge_set(&self) -> Vec<DirectedInterval> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    pub fn endpoint_interval(&self) -> Option<Interval> {
        let (p, q) = self.endpoints;
        (p < q).then(|| Interval::new(p, q))
    }

    /// Number of edges covering level `l`.
    pub fn level_multiplicity(&self, l: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.low <= l && l < e.high)
            .count()
    }
}

impl PartialEq for EdgeDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edge_set() == other.edge_set()
    }
}

impl Eq for EdgeDiagram {}

impl fmt::Display for EdgeDiagram {
    /// One edge per line, in path order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn edge_diagram(pi: &Permutation) -> EdgeDiagram {
    let n = pi.len();
    let edges = (1..n)
        .map(|i| DirectedInterval::between(pi.get(i), pi.get(i + 1)))
        .collect();
    let (a, b) = (pi.get(1), pi.get(n));
    EdgeDiagram {
        n,
        edges,
        endpoints: (a.min(b), a.max(b)),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LevelOutcome {
    /// Some edge is not carried to an interval.
    NotWellDefined,
    /// The images are intervals but do not form a single directed path.
    WellDefinedNotProper,
    Proper(Permutation),
}

impl LevelOutcome {
    pub fn proper(self) -> Option<Permutation> {
        match self {
            LevelOutcome::Proper(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, LevelOutcome::Proper(_))
    }
}

/// The images of all edges under `sigma`, or `None` if one is not an interval.
pub fn image_edges(e: &EdgeDiagram, sigma: &Permutation) -> Result<Option<Vec<DirectedInterval>>> {
    if sigma.len() + 1 != e.n {
        return Err(Error::LengthMismatch {
            expected: e.n.saturating_sub(1),
            actual: sigma.len(),
        });
    }
    Ok(e.edges
        .iter()
        .map(|d| {
            d.interval().image(sigma).map(|iv| DirectedInterval {
                low: iv.low,
                high: iv.high,
                direction: d.direction,
            })
        })
        .collect())
}

/// Reads the permutation traced by `edges` on vertices `1..=n`, if they form
/// a single path that visits every vertex and respects every direction.
pub fn path_permutation(n: usize, edges: &[DirectedInterval]) -> Option<Permutation> {
    if edges.len() + 1 != n {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (k, e) in edges.iter().enumerate() {
        adj[e.low].push((e.high, k));
        adj[e.high].push((e.low, k));
    }
    if adj.iter().any(|a| a.len() > 2) {
        return None;
    }
    let ends: Vec<usize> = (1..=n).filter(|&v| adj[v].len() == 1).collect();
    if n == 1 {
        return Some(Permutation::identity(1));
    }
    if ends.len() != 2 {
        return None;
    }
    'start: for &start in &ends {
        let mut used = vec![false; edges.len()];
        let mut seq = vec![start];
        let mut cur = start;
        while let Some(&(next, k)) = adj[cur].iter().find(|&&(_, k)| !used[k]) {
            if edges[k].direction != Direction::between(cur, next) {
                continue 'start;
            }
            used[k] = true;
            seq.push(next);
            cur = next;
        }
        if seq.len() == n {
            return Permutation::new(&seq).ok();
        }
    }
    None
}

/// Permutes the levels of `e` by `sigma` and classifies the result.
pub fn apply_level_action(e: &EdgeDiagram, sigma: &Permutation) -> Result<LevelOutcome> {
    Ok(match image_edges(e, sigma)? {
        None => LevelOutcome::NotWellDefined,
        Some(edges) => match path_permutation(e.n, &edges) {
            Some(p) => LevelOutcome::Proper(p),
            None => LevelOutcome::WellDefinedNotProper,
        },
    })
}

/// Whether the edges contain a directed cycle, where an up edge runs from its
/// low vertex to its high vertex and a down edge the other way.
pub fn has_cycle(edges: &[DirectedInterval]) -> bool {
    let n = edges.iter().map(|e| e.high).max().unwrap_or(0);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for e in edges {
        out[e.tail()].push(e.head());
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n + 1];
    for root in 1..=n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = out[v].get(*next) {
                *next += 1;
                match state[w] {
                    1 => return true,
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// The level permutation reversing the levels of `interval` and fixing the rest.
pub fn flip_levels(n: usize, interval: Interval) -> Permutation {
    assert!(interval.high <= n, "{interval} outside 1..={n}");
    let entries: Vec<usize> = (1..n)
        .map(|l| {
            if interval.levels().contains(&l) {
                interval.low + interval.high - 1 - l
            } else {
                l
            }
        })
        .collect();
    Permutation::new(&entries).expect("a flip is a permutation")
}

pub fn is_valid_interval(pi: &Permutation, interval: Interval) -> bool {
    let e = edge_diagram(pi);
    interval_is_valid_in(&e, interval)
}

fn interval_is_valid_in(e: &EdgeDiagram, interval: Interval) -> bool {
    interval.high <= e.n
        && e.edges
            .iter()
            .all(|d| interval.is_compatible(&d.interval()))
        && e.endpoint_interval()
            .is_none_or(|pq| interval.is_compatible(&pq))
}

/// Every valid interval `[i, j]`, including those of width one, ordered by `(i, j)`.
pub fn valid_intervals(pi: &Permutation) -> Vec<Interval> {
    let e = edge_diagram(pi);
    let n = pi.len();
    (1..n)
        .flat_map(|i| (i + 1..=n).map(move |j| Interval::new(i, j)))
        .filter(|&iv| interval_is_valid_in(&e, iv))
        .collect()
}

/// Flips a valid interval in the edge diagram of `pi`.
pub fn flip_interval(pi: &Permutation, interval: Interval) -> Result<Permutation> {
    let e = edge_diagram(pi);
    if !interval_is_valid_in(&e, interval) {
        return Err(Error::InvalidFlip(interval, pi.to_string()));
    }
    let sigma = flip_levels(pi.len(), interval);
    match apply_level_action(&e, &sigma)? {
        LevelOutcome::Proper(tau) => Ok(tau),
        other => Err(Error::Internal(format!(
            "valid flip {interval} of {pi} gave {other:?}"
        ))),
    }
}

/// Exhaustive `sigma`-search: every level permutation with a proper image,
/// paired with that image.
pub fn proper_level_actions(pi: &Permutation) -> Result<Vec<(Permutation, Permutation)>> {
    limits::check("permutation", pi.len(), MAX_EXHAUSTIVE_N)?;
    if pi.len() == 1 {
        return Ok(Vec::new());
    }
    let e = edge_diagram(pi);
    let mut out = Vec::new();
    for sigma in crate::perm::all_permutations(pi.len() - 1) {
        if let LevelOutcome::Proper(tau) = apply_level_action(&e, &sigma)? {
            out.push((sigma, tau));
        }
    }
    Ok(out)
}

/// A window of cyclically consecutive positions holding consecutive values.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CylindricalBlock {
    /// 1-based position of the first entry.
    pub start: usize,
    pub len: usize,
    /// Smallest value in the block.
    pub low: usize,
}

impl CylindricalBlock {
    pub fn values(&self) -> Interval {
        Interval::new(self.low, self.low + self.len - 1)
    }

    /// Whether the block crosses from position `n` back to position 1.
    pub fn wraps(&self, n: usize) -> bool {
        self.start + self.len - 1 > n
    }

    pub fn positions(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |t| (self.start - 1 + t) % n + 1)
    }

    /// The entries in block order.
    pub fn contents(&self, pi: &Permutation) -> Vec<usize> {
        self.positions(pi.len()).map(|p| pi.get(p)).collect()
    }
}

impl fmt::Display for CylindricalBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "positions {}..+{} values {}",
            self.start,
            self.len,
            self.values()
        )
    }
}

fn block_at(pi: &Permutation, start: usize, len: usize) -> Option<CylindricalBlock> {
    let n = pi.len();
    let vals: Vec<usize> = (0..len).map(|t| pi.get((start - 1 + t) % n + 1)).collect();
    let lo = *vals.iter().min()?;
    let hi = *vals.iter().max()?;
    (hi - lo + 1 == len).then_some(CylindricalBlock {
        start,
        len,
        low: lo,
    })
}

fn is_bordered(block: &CylindricalBlock, pi: &Permutation) -> bool {
    let c = block.contents(pi);
    let (first, last) = (c[0], c[c.len() - 1]);
    let hi = block.low + block.len - 1;
    (first == block.low && last == hi) || (first == hi && last == block.low)
}

/// Every bordered cylindrical block with at least two entries.
///
/// Blocks covering all `n` positions are listed once per cut point.
pub fn bordered_cylindrical_blocks(pi: &Permutation) -> Vec<CylindricalBlock> {
    let n = pi.len();
    let mut out = Vec::new();
    for len in 2..=n {
        for start in 1..=n {
            if let Some(b) = block_at(pi, start, len) {
                if is_bordered(&b, pi) {
                    out.push(b);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Flips a bordered cylindrical block.
///
/// A regular block is rotated by 180 degrees in place. A wrapping block is
/// rotated and its two sides exchanged: the rotated contents start `e` places
/// before the end, where `e` is the number of block entries that sat at the
/// left edge, and the remaining entries shift accordingly.
pub fn flip_block(pi: &Permutation, block: &CylindricalBlock) -> Result<Permutation> {
    let n = pi.len();
    let not_block = || Error::NotABlock(format!("{block} in {pi}"));
    if block.start == 0 || block.start > n || block.len < 2 || block.len > n {
        return Err(not_block());
    }
    match block_at(pi, block.start, block.len) {
        Some(b) if b == *block && is_bordered(&b, pi) => {}
        _ => return Err(not_block()),
    }
    let hi = block.low + block.len - 1;
    let rotated: Vec<usize> = block
        .contents(pi)
        .iter()
        .rev()
        .map(|&v| block.low + hi - v)
        .collect();

    let mut out = vec![0usize; n];
    if !block.wraps(n) {
        out.copy_from_slice(&pi.to_vec());
        out[block.start - 1..block.start - 1 + block.len].copy_from_slice(&rotated);
    } else {
        let right = n - block.start + 1;
        let left = block.len - right;
        // block entries now start at position n - left + 1, the rest follow
        let new_start = n - left;
        for (t, &v) in rotated.iter().enumerate() {
            out[(new_start + t) % n] = v;
        }
        for t in 0..n - block.len {
            out[(new_start + block.len + t) % n] = pi.get(left + 1 + t);
        }
    }
    Permutation::new(&out)
}
