//! Brute-force oracles and random instances shared by the integration tests.
#![allow(dead_code)]

use dpcolor::{Cover, Multigraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_d9c0;

/// Seed from `DPCOLOR_SEED`, else the fixed default.
pub fn seed() -> u64 {
    std::env::var("DPCOLOR_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// Number of transversals avoiding every cross edge, by walking the full
/// product of the lists.
pub fn count_colorings(c: &Cover) -> u64 {
    let n = c.n();
    let sizes = c.list_sizes().to_vec();
    if sizes.contains(&0) {
        return 0;
    }
    let edges: Vec<_> = c.all_cross_edges().collect();
    let mut choice = vec![1usize; n];
    let mut count = 0;
    loop {
        if edges.iter().all(|&(u, i, v, j)| !(choice[u - 1] == i && choice[v - 1] == j)) {
            count += 1;
        }
        let mut p = 0;
        loop {
            if p == n {
                return count;
            }
            if choice[p] < sizes[p] {
                choice[p] += 1;
                break;
            }
            choice[p] = 1;
            p += 1;
        }
    }
}

/// Validity checked from the definition: cross edges only on adjacent pairs,
/// and within each pair every color has at most `e(u, v)` cross neighbors.
pub fn valid_by_definition(c: &Cover) -> bool {
    let g = c.base();
    for (u, i, v, j) in c.all_cross_edges() {
        let k = g.mult(u, v) as usize;
        if k == 0 {
            return false;
        }
        let from_u = c.all_cross_edges().filter(|&(a, b, x, _)| a == u && b == i && x == v).count();
        let into_v = c.all_cross_edges().filter(|&(a, _, x, y)| a == u && x == v && y == j).count();
        if from_u > k || into_v > k {
            return false;
        }
    }
    true
}

/// Every adjacent pair carries an `e(u, v)`-regular bipartite graph.
pub fn exactly_regular_pairs(c: &Cover) -> bool {
    let g = c.base();
    g.edges().all(|(u, v, k)| {
        let cross: Vec<_> = c.all_cross_edges().filter(|&(a, _, b, _)| a == u && b == v).collect();
        (1..=c.list_size(u)).all(|i| cross.iter().filter(|e| e.1 == i).count() == k as usize)
            && (1..=c.list_size(v)).all(|j| cross.iter().filter(|e| e.3 == j).count() == k as usize)
    })
}

pub fn is_regular(g: &Multigraph) -> bool {
    let d = g.degrees();
    d.iter().all(|&x| x == d[0])
}

/// A proper list coloring of a simple graph, by plain backtracking in vertex
/// order.
pub fn list_colorable(g: &Multigraph, lists: &[Vec<u32>]) -> bool {
    fn go(g: &Multigraph, lists: &[Vec<u32>], chosen: &mut Vec<u32>) -> bool {
        let v = chosen.len();
        if v == lists.len() {
            return true;
        }
        for &c in &lists[v] {
            if (0..v).all(|u| g.mult(u + 1, v + 1) == 0 || chosen[u] != c) {
                chosen.push(c);
                if go(g, lists, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    go(g, lists, &mut Vec::new())
}

/// Simple graph on `n` vertices with each pair present with probability `p`.
pub fn random_simple_graph<R: Rng>(r: &mut R, n: usize, p: f64) -> Multigraph {
    let mut g = Multigraph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if r.gen_bool(p) {
                g.set_mult(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// A cover with the given list sizes: each pair of multiplicity `k` gets the
/// union of `k` random partial matchings.
pub fn random_cover<R: Rng>(r: &mut R, g: &Multigraph, sizes: Vec<usize>) -> Cover {
    let mut c = Cover::new(g.clone(), sizes).unwrap();
    for (u, v, k) in g.edges() {
        let (a, b) = (c.list_size(u), c.list_size(v));
        for _ in 0..k {
            let mut left: Vec<usize> = (1..=a).collect();
            let mut right: Vec<usize> = (1..=b).collect();
            left.shuffle(r);
            right.shuffle(r);
            let take = r.gen_range(0..=a.min(b));
            for (&i, &j) in left.iter().zip(&right).take(take) {
                c.add_cross_edge(u, i, v, j).unwrap();
            }
        }
    }
    c
}

/// Like [`random_cover`] but every matching is maximum.
pub fn random_full_cover<R: Rng>(r: &mut R, g: &Multigraph, sizes: Vec<usize>) -> Cover {
    let mut c = Cover::new(g.clone(), sizes).unwrap();
    for (u, v, k) in g.edges() {
        let (a, b) = (c.list_size(u), c.list_size(v));
        for _ in 0..k {
            let mut left: Vec<usize> = (1..=a).collect();
            let mut right: Vec<usize> = (1..=b).collect();
            left.shuffle(r);
            right.shuffle(r);
            for (&i, &j) in left.iter().zip(&right) {
                c.add_cross_edge(u, i, v, j).unwrap();
            }
        }
    }
    c
}

pub fn random_permutations<R: Rng>(r: &mut R, sizes: &[usize]) -> Vec<Vec<usize>> {
    sizes
        .iter()
        .map(|&s| {
            let mut p: Vec<usize> = (1..=s).collect();
            p.shuffle(r);
            p
        })
        .collect()
}
