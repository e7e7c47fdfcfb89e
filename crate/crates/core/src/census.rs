//! Isomorphism-free generation of small connected multigraphs.
//!
//! Canonical forms come from color refinement followed by an exhaustive
//! search over orderings that respect the refined cells, keeping the
//! lexicographically smallest adjacency code.

use std::collections::BTreeSet;
use std::fmt;

use crate::multigraph::Multigraph;

/// Lower triangle of the adjacency matrix in canonical labelling, row by row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    n: usize,
    code: Vec<u32>,
}

impl CanonicalCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        let mut it = self.code.iter();
        for p in 1..self.n {
            for q in 0..p {
                let k = *it.next().expect("code length");
                if k > 0 {
                    g.set_mult(q + 1, p + 1, k).expect("valid code");
                }
            }
        }
        g
    }
}

/// `n:` followed by the code digits (multiplicities above 9 in brackets).
impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for &k in &self.code {
            if k < 10 {
                write!(f, "{k}")?;
            } else {
                write!(f, "[{k}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Isomorphism-invariant vertex colors from iterated refinement, as ranks.
fn refine(g: &Multigraph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = vec![0; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> = g.neighbors(v + 1).map(|(u, k)| (color[u - 1], k)).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<(usize, u32)>)> = sigs.iter().collect();
        let ranked: Vec<&(usize, Vec<(usize, u32)>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(&s).expect("present")).collect();
        let count = ranked.len();
        color = next;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

pub fn canonical_form(g: &Multigraph) -> CanonicalCode {
    let n = g.n();
    let color = refine(g);
    // slot p of the labelling must be filled from the cell slot_cell[p]
    let mut slot_cell: Vec<usize> = color.clone();
    slot_cell.sort_unstable();
    let mut best: Option<Vec<u32>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut used = vec![false; n];
    search(g, &color, &slot_cell, &mut perm, &mut used, &mut code, &mut best);
    CanonicalCode { n, code: best.unwrap_or_default() }
}

fn search(
    g: &Multigraph,
    color: &[usize],
    slot_cell: &[usize],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    code: &mut Vec<u32>,
    best: &mut Option<Vec<u32>>,
) {
    let p = perm.len();
    if p == color.len() {
        if best.as_ref().is_none_or(|b| code[..] < b[..]) {
            *best = Some(code.clone());
        }
        return;
    }
    for v in 0..color.len() {
        if used[v] || color[v] != slot_cell[p] {
            continue;
        }
        let start = code.len();
        code.extend(perm.iter().map(|&u| g.mult(u + 1, v + 1)));
        // prune on a strictly worse prefix
        let worse = best.as_ref().is_some_and(|b| code[..] > b[..code.len()]);
        if !worse {
            used[v] = true;
            perm.push(v);
            search(g, color, slot_cell, perm, used, code, best);
            perm.pop();
            used[v] = false;
        }
        code.truncate(start);
    }
}

/// All connected multigraphs on `1..=max_n` vertices with multiplicities at
/// most `max_mult`, one per isomorphism class, that satisfy `keep`. `keep`
/// must be hereditary for removal of some non-cut vertex (every connected
/// graph has one), since graphs grow one vertex at a time. Sorted by size,
/// then code.
pub fn connected_census<F>(max_n: usize, max_mult: u32, keep: F) -> Vec<CanonicalCode>
where
    F: Fn(&Multigraph) -> bool,
{
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let k1 = Multigraph::new(1);
    let mut level: BTreeSet<CanonicalCode> = BTreeSet::new();
    if keep(&k1) {
        level.insert(canonical_form(&k1));
    }
    for n in 2..=max_n {
        out.extend(level.iter().cloned());
        let mut next = BTreeSet::new();
        for code in &level {
            let g = code.graph();
            let mut attach = vec![0u32; n - 1];
            while advance(&mut attach, max_mult) {
                let mut h = g.disjoint_union(&Multigraph::new(1));
                for (u, &k) in attach.iter().enumerate() {
                    if k > 0 {
                        h.set_mult(u + 1, n, k).expect("in range");
                    }
                }
                if keep(&h) {
                    next.insert(canonical_form(&h));
                }
            }
        }
        level = next;
    }
    out.extend(level);
    out
}

/// Odometer step over `0..=max` vectors; false after the last one.
fn advance(v: &mut [u32], max: u32) -> bool {
    for x in v.iter_mut() {
        if *x < max {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shuffled(g: &Multigraph, perm: &[usize]) -> Multigraph {
        g.relabel(perm)
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = Multigraph::from_edges(5, [(1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 1, 1), (2, 4, 1)]).unwrap();
        let c = canonical_form(&g);
        for perm in [[2, 3, 4, 5, 1], [5, 4, 3, 2, 1], [1, 3, 5, 2, 4]] {
            assert_eq!(canonical_form(&shuffled(&g, &perm)), c);
        }
        assert_eq!(canonical_form(&c.graph()), c);
        assert_ne!(canonical_form(&Multigraph::cycle(5)), c);
    }

    #[test]
    fn counts_of_connected_simple_graphs() {
        // 1, 1, 2, 6, 21, 112 connected graphs on 1..6 vertices
        let all = connected_census(6, 1, |_| true);
        let by_n: Vec<usize> = (1..=6).map(|n| all.iter().filter(|c| c.n() == n).count()).collect();
        assert_eq!(by_n, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn counts_of_connected_multigraphs() {
        // with multiplicities at most 2: three paths and four triangles on 3 vertices
        let all = connected_census(3, 2, |_| true);
        let by_n: Vec<usize> = (1..=3).map(|n| all.iter().filter(|c| c.n() == n).count()).collect();
        assert_eq!(by_n, vec![1, 2, 7]);
    }

    #[test]
    fn display_is_n_and_code() {
        assert_eq!(canonical_form(&Multigraph::complete(3)).to_string(), "3:111");
        assert_eq!(canonical_form(&Multigraph::path(3)).to_string(), "3:011");
    }
}
