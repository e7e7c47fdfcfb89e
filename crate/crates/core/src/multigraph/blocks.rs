use std::collections::BTreeSet;

use super::{Multigraph, Vertex};
use crate::error::{Error, Result};

/// Shape of a block, up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockClass {
    /// `K_n^k`. A lone vertex is `CompletePower { n: 1, k: 1 }`.
    CompletePower { n: usize, k: u32 },
    /// `C_n^k` with `n >= 4`; triangles are reported as complete powers.
    CyclePower { n: usize, k: u32 },
    Other,
}

impl BlockClass {
    pub fn is_other(&self) -> bool {
        matches!(self, BlockClass::Other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    pub class: BlockClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Ordered by smallest contained vertex, then lexicographically.
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

impl BlockDecomposition {
    /// Indices of blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .filter(move |(_, b)| b.vertices.binary_search(&v).is_ok())
            .map(|(i, _)| i)
    }

    /// Blocks in block-cut-tree preorder, starting from the first block that
    /// contains the lowest-numbered vertex of each component. Every block after
    /// the first of its component shares exactly one vertex (a cut vertex) with
    /// the blocks before it; that vertex is returned alongside.
    pub fn preorder(&self) -> Vec<(usize, Option<Vertex>)> {
        let mut visited = vec![false; self.blocks.len()];
        let mut out = Vec::with_capacity(self.blocks.len());
        for start in 0..self.blocks.len() {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut stack = vec![(start, None)];
            while let Some((b, via)) = stack.pop() {
                out.push((b, via));
                let mut next = Vec::new();
                for &v in &self.blocks[b].vertices {
                    if self.cut_vertices.binary_search(&v).is_err() {
                        continue;
                    }
                    for nb in self.blocks_of(v) {
                        if !visited[nb] {
                            visited[nb] = true;
                            next.push((nb, Some(v)));
                        }
                    }
                }
                // reversed so the lowest block index is expanded first
                next.sort();
                stack.extend(next.into_iter().rev());
            }
        }
        out
    }
}

pub(super) fn decompose(g: &Multigraph) -> Result<BlockDecomposition> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let raw = raw_blocks(g);
    let mut count = vec![0usize; n + 1];
    for b in &raw {
        for &v in b {
            count[v] += 1;
        }
    }
    let cut_vertices = (1..=n).filter(|&v| count[v] > 1).collect();
    let blocks = raw
        .into_iter()
        .map(|vertices| {
            let class = classify_block(&g.induced(&vertices)).expect("decomposition yields blocks");
            Block { vertices, class }
        })
        .collect();
    Ok(BlockDecomposition { blocks, cut_vertices })
}

/// Vertex sets of the biconnected components of the underlying simple graph
/// (iterative Tarjan), sorted.
fn raw_blocks(g: &Multigraph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let nbrs: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbors(v).map(|(u, _)| u).collect()).collect();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 0;
    let mut raw: Vec<Vec<Vertex>> = Vec::new();

    for root in 1..=n {
        if disc[root] != 0 {
            continue;
        }
        timer += 1;
        disc[root] = timer;
        low[root] = timer;
        if nbrs[root - 1].is_empty() {
            raw.push(vec![root]);
            continue;
        }
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, 0, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < nbrs[v - 1].len() {
                top.2 += 1;
                let w = nbrs[v - 1][idx];
                if disc[w] == 0 {
                    timer += 1;
                    disc[w] = timer;
                    low[w] = timer;
                    edge_stack.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.insert(a);
                            comp.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        raw.push(comp.into_iter().collect());
                    }
                }
            }
        }
    }

    raw.sort();
    raw
}

fn is_biconnected(b: &Multigraph) -> bool {
    if !b.is_connected() {
        return false;
    }
    if b.n() <= 2 {
        return true;
    }
    raw_blocks(b).len() == 1
}

/// Classifies a block given as a standalone multigraph.
pub fn classify_block(b: &Multigraph) -> Result<BlockClass> {
    let n = b.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !is_biconnected(b) {
        return Err(Error::NotABlock(format!("{b:?} is not 2-connected")));
    }
    if n == 1 {
        return Ok(BlockClass::CompletePower { n: 1, k: 1 });
    }
    let mults: BTreeSet<u32> = b.edges().map(|(_, _, k)| k).collect();
    if mults.len() != 1 {
        return Ok(BlockClass::Other);
    }
    let k = *mults.iter().next().expect("nonempty");
    let pairs = b.pair_count();
    if pairs == n * (n - 1) / 2 {
        return Ok(BlockClass::CompletePower { n, k });
    }
    // 2-connected with every vertex of degree two in the simple graph is a cycle
    if pairs == n && b.vertices().all(|v| b.neighbor_count(v) == 2) {
        return Ok(BlockClass::CyclePower { n, k });
    }
    Ok(BlockClass::Other)
}

/// Vertices of a cycle block in cyclic order, starting at the smallest vertex
/// and continuing towards its smaller neighbor.
pub fn cyclic_order(g: &Multigraph, vertices: &[Vertex]) -> Option<Vec<Vertex>> {
    let inside: BTreeSet<Vertex> = vertices.iter().copied().collect();
    let nb = |v: Vertex| -> Vec<Vertex> { g.neighbors(v).map(|(u, _)| u).filter(|u| inside.contains(u)).collect() };
    let start = *inside.iter().next()?;
    let first = nb(start);
    if first.len() != 2 {
        return None;
    }
    let mut order = vec![start];
    let (mut prev, mut cur) = (start, first[0]);
    while cur != start {
        order.push(cur);
        let next: Vec<Vertex> = nb(cur).into_iter().filter(|&u| u != prev).collect();
        if next.len() != 1 || order.len() > inside.len() {
            return None;
        }
        prev = cur;
        cur = next[0];
    }
    (order.len() == inside.len()).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Multigraph {
        Multigraph::from_edges(5, [(1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1)]).unwrap()
    }

    #[test]
    fn cycle_is_one_block() {
        let d = Multigraph::cycle(5).blocks().unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].vertices, vec![1, 2, 3, 4, 5]);
        assert_eq!(d.blocks[0].class, BlockClass::CyclePower { n: 5, k: 1 });
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn bowtie_blocks() {
        let d = bowtie().blocks().unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].vertices, vec![1, 2, 3]);
        assert_eq!(d.blocks[1].vertices, vec![3, 4, 5]);
        assert!(d.blocks.iter().all(|b| b.class == BlockClass::CompletePower { n: 3, k: 1 }));
        assert_eq!(d.cut_vertices, vec![3]);
    }

    #[test]
    fn path_blocks() {
        let d = Multigraph::path(3).blocks().unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.blocks[0].vertices, vec![1, 2]);
        assert_eq!(d.blocks[1].vertices, vec![2, 3]);
        assert_eq!(d.cut_vertices, vec![2]);
        assert!(d.blocks.iter().all(|b| b.class == BlockClass::CompletePower { n: 2, k: 1 }));
    }

    #[test]
    fn parallel_edges_form_k2_power_block() {
        let g = Multigraph::from_edges(3, [(1, 2, 2), (2, 3, 3)]).unwrap();
        let d = g.blocks().unwrap();
        assert_eq!(d.blocks[0].class, BlockClass::CompletePower { n: 2, k: 2 });
        assert_eq!(d.blocks[1].class, BlockClass::CompletePower { n: 2, k: 3 });
    }

    #[test]
    fn classify_examples() {
        let k43 = Multigraph::complete(4).power(3).unwrap();
        assert_eq!(classify_block(&k43), Ok(BlockClass::CompletePower { n: 4, k: 3 }));
        let c52 = Multigraph::cycle(5).power(2).unwrap();
        assert_eq!(classify_block(&c52), Ok(BlockClass::CyclePower { n: 5, k: 2 }));
        let alt = Multigraph::from_edges(4, [(1, 2, 1), (2, 3, 2), (3, 4, 1), (1, 4, 2)]).unwrap();
        assert!(alt.vertices().all(|v| alt.degree(v) == Ok(3)));
        assert_eq!(classify_block(&alt), Ok(BlockClass::Other));
        let c32 = Multigraph::cycle(3).power(2).unwrap();
        assert_eq!(classify_block(&c32), Ok(BlockClass::CompletePower { n: 3, k: 2 }));
        assert_eq!(classify_block(&Multigraph::new(1)), Ok(BlockClass::CompletePower { n: 1, k: 1 }));
        assert!(matches!(classify_block(&Multigraph::path(3)), Err(Error::NotABlock(_))));
        assert!(classify_block(&Multigraph::new(2)).is_err());
        let k4_minus = Multigraph::from_edges(4, [(1, 2, 1), (1, 3, 1), (1, 4, 1), (2, 3, 1), (2, 4, 1)]).unwrap();
        assert_eq!(classify_block(&k4_minus), Ok(BlockClass::Other));
    }

    #[test]
    fn preorder_glues_through_cut_vertices() {
        // triangle 1-2-3, pendant 3-4, triangle 4-5-6
        let g = Multigraph::from_edges(
            6,
            [(1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (4, 6, 1), (5, 6, 1)],
        )
        .unwrap();
        let d = g.blocks().unwrap();
        assert_eq!(d.cut_vertices, vec![3, 4]);
        let order = d.preorder();
        assert_eq!(order[0], (0, None));
        assert_eq!(order.len(), 3);
        let mut seen: BTreeSet<Vertex> = d.blocks[order[0].0].vertices.iter().copied().collect();
        for &(b, via) in &order[1..] {
            let vs: BTreeSet<Vertex> = d.blocks[b].vertices.iter().copied().collect();
            let shared: Vec<Vertex> = seen.intersection(&vs).copied().collect();
            assert_eq!(shared, vec![via.unwrap()]);
            seen.extend(vs);
        }
    }

    #[test]
    fn cyclic_order_follows_edges() {
        let g = Multigraph::from_edges(5, [(1, 3, 1), (3, 5, 1), (5, 2, 1), (2, 4, 1), (4, 1, 1)]).unwrap();
        let ord = cyclic_order(&g, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(ord, vec![1, 3, 5, 2, 4]);
    }
}
