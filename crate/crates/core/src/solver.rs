//! Exact `(L, H)`-colorability and the searches built on it.
//!
//! [`solve`] is a chronological backtracking search over vertices, always
//! branching on the uncolored vertex with the fewest surviving colors and
//! pruning neighbor domains as colors are committed. It is deterministic:
//! ties go to the lowest vertex and colors are tried in index order.

use std::time::{Duration, Instant};

use crate::config::Limits;
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use crate::space::{CoverClass, CoverSearch, Pruning};

/// One chosen color index (1-based) per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transversal(pub Vec<usize>);

impl Transversal {
    pub fn choice(&self, v: Vertex) -> usize {
        self.0[v - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Colorable(Transversal),
    Uncolorable,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub nodes_explored: u64,
    pub time: Duration,
}

impl SolveResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self.status, SolveStatus::Colorable(_))
    }
}

/// True iff no two chosen colors are joined by a cross edge.
pub fn check_transversal(cover: &Cover, t: &Transversal) -> Result<bool> {
    if t.0.len() != cover.n() {
        return Err(Error::TransversalLength { got: t.0.len(), expected: cover.n() });
    }
    for v in cover.base().vertices() {
        let (i, size) = (t.choice(v), cover.list_size(v));
        if i == 0 || i > size {
            return Err(Error::ColorOutOfRange { vertex: v, index: i, size });
        }
    }
    Ok(!cover.all_cross_edges().any(|(u, i, v, j)| t.choice(u) == i && t.choice(v) == j))
}

/// Cross adjacency as bitsets: for each color `(v, c)` and each neighbor slot
/// of `v`, the colors of that neighbor it kills.
struct Compiled {
    words: usize,
    sizes: Vec<usize>,
    nbrs: Vec<Vec<usize>>,
    color_base: Vec<usize>,
    kill: Vec<u64>,
}

impl Compiled {
    fn new(cover: &Cover) -> Self {
        let n = cover.n();
        let g = cover.base();
        let sizes: Vec<usize> = cover.list_sizes().to_vec();
        let words = sizes.iter().copied().max().unwrap_or(0).div_ceil(64).max(1);
        let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v + 1).map(|(u, _)| u - 1).collect()).collect();
        let mut color_base = vec![0; n + 1];
        for v in 0..n {
            color_base[v + 1] = color_base[v] + sizes[v] * nbrs[v].len();
        }
        let mut kill = vec![0u64; color_base[n] * words];
        for (u, i, v, j) in cover.all_cross_edges() {
            let (u, v, i, j) = (u - 1, v - 1, i - 1, j - 1);
            let su = nbrs[u].binary_search(&v).expect("cross edge on an edge");
            let sv = nbrs[v].binary_search(&u).expect("cross edge on an edge");
            let a = ((color_base[u] + i * nbrs[u].len() + su) * words) + j / 64;
            kill[a] |= 1 << (j % 64);
            let b = ((color_base[v] + j * nbrs[v].len() + sv) * words) + i / 64;
            kill[b] |= 1 << (i % 64);
        }
        Compiled { words, sizes, nbrs, color_base, kill }
    }

    fn kill_mask(&self, v: usize, c: usize, slot: usize) -> &[u64] {
        let at = (self.color_base[v] + c * self.nbrs[v].len() + slot) * self.words;
        &self.kill[at..at + self.words]
    }
}

struct Backtracker<'a> {
    cx: &'a Compiled,
    domains: Vec<u64>,
    choice: Vec<Option<usize>>,
    trail: Vec<(usize, Vec<u64>)>,
    nodes: u64,
    budget: u64,
}

impl Backtracker<'_> {
    fn domain(&self, v: usize) -> &[u64] {
        &self.domains[v * self.cx.words..(v + 1) * self.cx.words]
    }

    fn size(&self, v: usize) -> u32 {
        self.domain(v).iter().map(|w| w.count_ones()).sum()
    }

    fn search(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NodeBudget(self.budget));
        }
        let Some(v) = (0..self.choice.len()).filter(|&v| self.choice[v].is_none()).min_by_key(|&v| (self.size(v), v))
        else {
            return Ok(true);
        };
        let w = self.cx.words;
        let colors: Vec<usize> = (0..self.cx.sizes[v]).filter(|&c| self.domain(v)[c / 64] >> (c % 64) & 1 == 1).collect();
        for c in colors {
            let mark = self.trail.len();
            let mut dead = false;
            for (slot, &u) in self.cx.nbrs[v].iter().enumerate() {
                if self.choice[u].is_some() {
                    continue;
                }
                let kill = self.cx.kill_mask(v, c, slot);
                let dom = &mut self.domains[u * w..(u + 1) * w];
                if dom.iter().zip(kill).all(|(d, k)| d & k == 0) {
                    continue;
                }
                self.trail.push((u, dom.to_vec()));
                for (d, k) in dom.iter_mut().zip(kill) {
                    *d &= !k;
                }
                if dom.iter().all(|&d| d == 0) {
                    dead = true;
                    break;
                }
            }
            if !dead {
                self.choice[v] = Some(c);
                if self.search()? {
                    return Ok(true);
                }
                self.choice[v] = None;
            }
            while self.trail.len() > mark {
                let (u, saved) = self.trail.pop().expect("trail entry");
                self.domains[u * w..(u + 1) * w].copy_from_slice(&saved);
            }
        }
        Ok(false)
    }
}

/// Decides `(L, H)`-colorability exactly. Invalid covers are rejected.
pub fn solve(cover: &Cover) -> Result<SolveResult> {
    solve_with(cover, &Limits::default())
}

pub fn solve_with(cover: &Cover, limits: &Limits) -> Result<SolveResult> {
    cover.check_valid()?;
    let start = Instant::now();
    let cx = Compiled::new(cover);
    let n = cover.n();
    let mut domains = vec![0u64; n * cx.words];
    for v in 0..n {
        for c in 0..cx.sizes[v] {
            domains[v * cx.words + c / 64] |= 1 << (c % 64);
        }
    }
    let mut bt = Backtracker { cx: &cx, domains, choice: vec![None; n], trail: Vec::new(), nodes: 0, budget: limits.node_budget };
    let found = bt.search()?;
    let status = if found {
        SolveStatus::Colorable(Transversal(bt.choice.iter().map(|c| c.expect("all colored") + 1).collect()))
    } else {
        SolveStatus::Uncolorable
    };
    Ok(SolveResult { status, nodes_explored: bt.nodes, time: start.elapsed() })
}

/// Colors vertices in `order`, each with its lowest color not adjacent to an
/// already chosen one. `Ok(None)` when some vertex has no color left.
pub fn greedy_color(cover: &Cover, order: &[Vertex]) -> Result<Option<Transversal>> {
    let n = cover.n();
    let mut seen = vec![false; n + 1];
    if order.len() != n || order.iter().any(|&v| v == 0 || v > n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::Precondition("order must be a permutation of the vertices".into()));
    }
    let mut chosen = vec![0usize; n + 1];
    for &v in order {
        let mut blocked = vec![false; cover.list_size(v) + 1];
        for (u, _) in cover.base().neighbors(v) {
            if chosen[u] != 0 {
                for j in cover.cross_neighbors(u, chosen[u], v) {
                    blocked[j] = true;
                }
            }
        }
        match (1..=cover.list_size(v)).find(|&c| !blocked[c]) {
            Some(c) => chosen[v] = c,
            None => return Ok(None),
        }
    }
    Ok(Some(Transversal(chosen[1..].to_vec())))
}

/// Outcome of the exhaustive degree-cover search.
#[derive(Debug, Clone)]
pub struct OracleVerdict {
    pub colorable: bool,
    /// First uncolorable maximal degree cover in enumeration order.
    pub witness: Option<Cover>,
    pub nodes_explored: u64,
}

/// Ground truth for DP-degree-colorability of a connected multigraph: walks
/// the gauge-fixed space of maximal degree covers, discarding a partial cover
/// as soon as some partial coloring provably extends to every completion.
pub fn degree_colorable_oracle(g: &Multigraph) -> Result<OracleVerdict> {
    degree_colorable_oracle_with(g, &Limits::default())
}

pub fn degree_colorable_oracle_with(g: &Multigraph, limits: &Limits) -> Result<OracleVerdict> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let sizes: Vec<usize> = g.degrees().into_iter().map(|d| d as usize).collect();
    let mut search = CoverSearch::new(g, &sizes, CoverClass::Maximal, Pruning::Peel, limits)?;
    let witness = search.next_cover()?;
    if let Some(w) = &witness {
        certify_uncolorable(w, limits)?;
    }
    Ok(OracleVerdict { colorable: witness.is_none(), witness, nodes_explored: search.nodes() })
}

fn certify_uncolorable(cover: &Cover, limits: &Limits) -> Result<()> {
    if solve_with(cover, limits)?.is_colorable() {
        return Err(Error::Internal("search leaf is colorable; cover search and solver disagree".into()));
    }
    Ok(())
}

/// An uncolorable cover of `g` with every list of size `k`, if one exists.
/// Only edge-maximal cross-edge graphs are searched, which loses nothing:
/// any `k`-cover is contained in one of them, and extra cross edges never
/// create colorings.
pub fn uncolorable_uniform_cover(g: &Multigraph, k: usize, limits: &Limits) -> Result<Option<Cover>> {
    let sizes = vec![k; g.n()];
    let mut search = CoverSearch::new(g, &sizes, CoverClass::Maximal, Pruning::Peel, limits)?;
    let found = search.next_cover()?;
    if let Some(w) = &found {
        certify_uncolorable(w, limits)?;
    }
    Ok(found)
}

/// DP-chromatic number.
pub fn chi_dp(g: &Multigraph) -> Result<usize> {
    chi_dp_with(g, &Limits::default())
}

pub fn chi_dp_with(g: &Multigraph, limits: &Limits) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut best = 0;
    for comp in g.components() {
        best = best.max(chi_dp_connected(&g.induced(&comp), limits)?);
    }
    Ok(best)
}

fn chi_dp_connected(g: &Multigraph, limits: &Limits) -> Result<usize> {
    let degeneracy = g.degeneracy() as usize;
    // chi_DP >= chi >= clique number; greedy gives degeneracy + 1
    let lower = g.clique_number().max(1);
    for k in lower..=degeneracy {
        if uncolorable_uniform_cover(g, k, limits)?.is_none() {
            return Ok(k);
        }
    }
    Ok(degeneracy + 1)
}

/// Whether every cover of `g` with lists of size `k` is colorable.
pub fn is_dp_colorable(g: &Multigraph, k: usize, limits: &Limits) -> Result<bool> {
    if k > g.degeneracy() as usize {
        return Ok(true);
    }
    if k < g.clique_number() {
        return Ok(false);
    }
    for comp in g.components() {
        if uncolorable_uniform_cover(&g.induced(&comp), k, limits)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}
