//! Loopless multigraphs on the vertex set `1..=n`.
//!
//! Multiplicities are kept in a symmetric sparse adjacency map; a pair with
//! multiplicity zero is simply absent. Structural queries (degrees, powers,
//! degeneracy, block decomposition) never mutate the graph.

mod blocks;

use std::collections::BTreeMap;
use std::fmt;

pub use blocks::{classify_block, cyclic_order, Block, BlockClass, BlockDecomposition};

use crate::error::{Error, Result};

/// Vertices are 1-indexed.
pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Multigraph {
    adj: Vec<BTreeMap<Vertex, u32>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, [", self.n())?;
        for (i, (u, v, k)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}x{k}")?;
        }
        write!(f, "])")
    }
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { adj: vec![BTreeMap::new(); n] }
    }

    /// Builds a multigraph from `(u, v, k)` triples. Pairs must be unique.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u32)>,
    {
        let mut g = Multigraph::new(n);
        for (u, v, k) in edges {
            g.check_pair(u, v)?;
            if k == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            if g.mult(u, v) != 0 {
                return Err(Error::DuplicatePair(u.min(v), u.max(v)));
            }
            g.set_mult(u, v, k)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Multigraph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.adj[u - 1].insert(v, 1);
                g.adj[v - 1].insert(u, 1);
            }
        }
        g
    }

    /// The cycle `1-2-...-n-1`; `n` must be at least 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Multigraph::new(n);
        for v in 1..=n {
            let w = v % n + 1;
            g.adj[v - 1].insert(w, 1);
            g.adj[w - 1].insert(v, 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Multigraph::new(n);
        for v in 1..n {
            g.adj[v - 1].insert(v + 1, 1);
            g.adj[v].insert(v, 1);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.n()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n() {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(())
    }

    /// Sets `e(u, v) = k`; `k = 0` removes the pair.
    pub fn set_mult(&mut self, u: Vertex, v: Vertex, k: u32) -> Result<()> {
        self.check_pair(u, v)?;
        if k == 0 {
            self.adj[u - 1].remove(&v);
            self.adj[v - 1].remove(&u);
        } else {
            self.adj[u - 1].insert(v, k);
            self.adj[v - 1].insert(u, k);
        }
        Ok(())
    }

    /// `e(u, v)`; zero for non-adjacent or out-of-range pairs.
    pub fn mult(&self, u: Vertex, v: Vertex) -> u32 {
        if u == 0 || u > self.n() {
            return 0;
        }
        self.adj[u - 1].get(&v).copied().unwrap_or(0)
    }

    pub fn degree(&self, v: Vertex) -> Result<u32> {
        self.check_vertex(v)?;
        Ok(self.adj[v - 1].values().sum())
    }

    /// Degree without the range check; panics on an invalid vertex.
    pub(crate) fn deg(&self, v: Vertex) -> u32 {
        self.adj[v - 1].values().sum()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.vertices().map(|v| self.deg(v)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.vertices().map(|v| self.deg(v)).max().unwrap_or(0)
    }

    /// Neighbors of `v` with multiplicities, in increasing vertex order.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.adj[v - 1].iter().map(|(&u, &k)| (u, k))
    }

    /// Number of distinct neighbors of `v`.
    pub fn neighbor_count(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    /// All adjacent pairs `(u, v, e(u, v))` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, row)| {
            let u = i + 1;
            row.range(u + 1..).map(move |(&v, &k)| (u, v, k))
        })
    }

    /// `|E(G)|` counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges().map(|(_, _, k)| u64::from(k)).sum()
    }

    /// Number of adjacent pairs (edges of the underlying simple graph).
    pub fn pair_count(&self) -> usize {
        self.edges().count()
    }

    pub fn is_simple(&self) -> bool {
        self.edges().all(|(_, _, k)| k == 1)
    }

    pub fn require_simple(&self) -> Result<()> {
        match self.edges().find(|&(_, _, k)| k != 1) {
            Some((u, v, k)) => Err(Error::NotSimple(u, v, k)),
            None => Ok(()),
        }
    }

    pub fn underlying_simple(&self) -> Multigraph {
        let mut g = self.clone();
        for row in &mut g.adj {
            for k in row.values_mut() {
                *k = 1;
            }
        }
        g
    }

    /// The k-fold power: every edge replaced by `k` parallel copies.
    pub fn power(&self, k: u32) -> Result<Multigraph> {
        if k == 0 {
            return Err(Error::ZeroPower);
        }
        let mut g = self.clone();
        for row in &mut g.adj {
            for m in row.values_mut() {
                *m *= k;
            }
        }
        Ok(g)
    }

    /// Removes one copy of the edge `uv`.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Multigraph> {
        self.check_pair(u, v)?;
        let k = self.mult(u, v);
        if k == 0 {
            return Err(Error::Precondition(format!("no edge between {u} and {v}")));
        }
        let mut g = self.clone();
        g.set_mult(u, v, k - 1)?;
        Ok(g)
    }

    /// Deletes `v`; vertices above `v` shift down by one.
    pub fn without_vertex(&self, v: Vertex) -> Result<Multigraph> {
        self.check_vertex(v)?;
        let keep: Vec<Vertex> = self.vertices().filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// Sub-multigraph induced by `vs`, relabelled so `vs[i]` becomes `i + 1`.
    pub fn induced(&self, vs: &[Vertex]) -> Multigraph {
        let mut pos = vec![0usize; self.n() + 1];
        for (i, &v) in vs.iter().enumerate() {
            pos[v] = i + 1;
        }
        let mut g = Multigraph::new(vs.len());
        for (i, &v) in vs.iter().enumerate() {
            for (u, k) in self.neighbors(v) {
                if pos[u] != 0 {
                    g.adj[i].insert(pos[u], k);
                }
            }
        }
        g
    }

    /// Applies a vertex relabelling `v -> perm[v - 1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[Vertex]) -> Multigraph {
        let mut g = Multigraph::new(self.n());
        for (u, v, k) in self.edges() {
            let (a, b) = (perm[u - 1], perm[v - 1]);
            g.adj[a - 1].insert(b, k);
            g.adj[b - 1].insert(a, k);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend(other.adj.iter().map(|row| row.iter().map(|(&u, &k)| (u + off, k)).collect()));
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for (u, _) in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    /// Smallest `d` such that every sub-multigraph has a vertex of degree at
    /// most `d`, with the minimum-degree deletion order that realises it.
    pub fn degeneracy_order(&self) -> (u32, Vec<Vertex>) {
        let n = self.n();
        let mut deg: Vec<u32> = self.degrees();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut best = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&i| !removed[i])
                .min_by_key(|&i| (deg[i], i))
                .expect("vertex left");
            best = best.max(deg[v]);
            removed[v] = true;
            order.push(v + 1);
            for (u, k) in self.neighbors(v + 1) {
                if !removed[u - 1] {
                    deg[u - 1] -= k;
                }
            }
        }
        (best, order)
    }

    pub fn degeneracy(&self) -> u32 {
        self.degeneracy_order().0
    }

    /// Vertex sets of all cliques of the underlying simple graph are searched
    /// for the largest one; returns its size. Exponential, meant for small graphs.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Multigraph, cand: &[Vertex], size: usize, best: &mut usize) {
            if size + cand.len() <= *best {
                return;
            }
            if cand.is_empty() {
                *best = size;
                return;
            }
            for (i, &v) in cand.iter().enumerate() {
                let next: Vec<Vertex> = cand[i + 1..].iter().copied().filter(|&u| g.mult(u, v) > 0).collect();
                grow(g, &next, size + 1, best);
            }
        }
        let all: Vec<Vertex> = self.vertices().collect();
        let mut best = 0;
        grow(self, &all, 0, &mut best);
        best
    }

    pub fn blocks(&self) -> Result<BlockDecomposition> {
        blocks::decompose(self)
    }
}
