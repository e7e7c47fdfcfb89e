//! Covers `(L, H)` of multigraphs.
//!
//! The colors of vertex `v` are the indices `1..=|L(v)|`; color `(v, i)` is
//! the `i`-th element of `L(v)`. Only cross edges between lists of distinct
//! vertices are stored. The clique on each list is implicit: two colors of the
//! same vertex are always adjacent, so a coloring picks exactly one per vertex.
//!
//! Validity follows the multigraph definition: between `L(u)` and `L(v)` the
//! cross edges must be a union of `e(u, v)` matchings. By König's edge-coloring
//! theorem a bipartite graph is a union of `e` matchings exactly when its
//! maximum degree is at most `e`, so that is what [`Cover::validate`] checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};

/// `(i, j)`: color `i` of the lower vertex is adjacent to color `j` of the higher one.
pub type CrossEdges = BTreeSet<(usize, usize)>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    base: Multigraph,
    list_sizes: Vec<usize>,
    cross: BTreeMap<(Vertex, Vertex), CrossEdges>,
}

impl fmt::Debug for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cover")
            .field("base", &self.base)
            .field("list_sizes", &self.list_sizes)
            .field("cross", &self.cross)
            .finish()
    }
}

/// One reason a cover is not a cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Cross edges between lists of non-adjacent vertices.
    NonAdjacentPair { u: Vertex, v: Vertex, i: usize, j: usize },
    /// Color `(vertex, color)` has `degree > mult` neighbors in `L(other)`.
    DegreeExceeded { vertex: Vertex, color: usize, other: Vertex, degree: usize, mult: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonAdjacentPair { u, v, i, j } => {
                write!(f, "pair ({u},{v}): cross edge ({u},{i})-({v},{j}) but e({u},{v}) = 0")
            }
            Violation::DegreeExceeded { vertex, color, other, degree, mult } => write!(
                f,
                "pair ({},{}): color ({vertex},{color}) has {degree} neighbors in L({other}) > e = {mult}",
                vertex.min(other),
                vertex.max(other)
            ),
        }
    }
}

impl Cover {
    /// A cover with the given list sizes and no cross edges.
    pub fn new(base: Multigraph, list_sizes: Vec<usize>) -> Result<Self> {
        if list_sizes.len() != base.n() {
            return Err(Error::Precondition(format!(
                "{} list sizes for {} vertices",
                list_sizes.len(),
                base.n()
            )));
        }
        Ok(Cover { base, list_sizes, cross: BTreeMap::new() })
    }

    pub fn base(&self) -> &Multigraph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn list_size(&self, v: Vertex) -> usize {
        self.list_sizes[v - 1]
    }

    pub fn list_sizes(&self) -> &[usize] {
        &self.list_sizes
    }

    fn check_color(&self, v: Vertex, i: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let size = self.list_size(v);
        if i == 0 || i > size {
            return Err(Error::ColorOutOfRange { vertex: v, index: i, size });
        }
        Ok(())
    }

    /// Joins `(u, i)` and `(v, j)`. Does not check the matching condition.
    pub fn add_cross_edge(&mut self, u: Vertex, i: usize, v: Vertex, j: usize) -> Result<()> {
        self.check_color(u, i)?;
        self.check_color(v, j)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let (key, e) = if u < v { ((u, v), (i, j)) } else { ((v, u), (j, i)) };
        self.cross.entry(key).or_default().insert(e);
        Ok(())
    }

    pub fn has_cross_edge(&self, u: Vertex, i: usize, v: Vertex, j: usize) -> bool {
        let (key, e) = if u < v { ((u, v), (i, j)) } else { ((v, u), (j, i)) };
        self.cross.get(&key).is_some_and(|s| s.contains(&e))
    }

    /// Cross edges between `L(u)` and `L(v)` as `(color of u, color of v)`.
    pub fn cross_edges(&self, u: Vertex, v: Vertex) -> Vec<(usize, usize)> {
        let key = (u.min(v), u.max(v));
        let Some(set) = self.cross.get(&key) else { return Vec::new() };
        if u < v {
            set.iter().copied().collect()
        } else {
            let mut out: Vec<_> = set.iter().map(|&(i, j)| (j, i)).collect();
            out.sort_unstable();
            out
        }
    }

    /// All cross edges `(u, i, v, j)` with `u < v`, in lexicographic order.
    pub fn all_cross_edges(&self) -> impl Iterator<Item = (Vertex, usize, Vertex, usize)> + '_ {
        self.cross.iter().flat_map(|(&(u, v), set)| set.iter().map(move |&(i, j)| (u, i, v, j)))
    }

    pub fn cross_edge_count(&self) -> usize {
        self.cross.values().map(BTreeSet::len).sum()
    }

    /// Colors of `L(v)` adjacent to `(u, i)`.
    pub fn cross_neighbors(&self, u: Vertex, i: usize, v: Vertex) -> Vec<usize> {
        self.cross_edges(u, v).into_iter().filter(|&(a, _)| a == i).map(|(_, b)| b).collect()
    }

    pub fn is_degree_cover(&self) -> bool {
        self.base.vertices().all(|v| self.list_size(v) == self.base.deg(v) as usize)
    }

    /// Every violated cover condition, in pair order then color order.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (&(u, v), set) in &self.cross {
            let mult = self.base.mult(u, v);
            if mult == 0 {
                if let Some(&(i, j)) = set.iter().next() {
                    out.push(Violation::NonAdjacentPair { u, v, i, j });
                }
                continue;
            }
            let mut deg_u = vec![0usize; self.list_size(u) + 1];
            let mut deg_v = vec![0usize; self.list_size(v) + 1];
            for &(i, j) in set {
                deg_u[i] += 1;
                deg_v[j] += 1;
            }
            for (color, &degree) in deg_u.iter().enumerate() {
                if degree > mult as usize {
                    out.push(Violation::DegreeExceeded { vertex: u, color, other: v, degree, mult });
                }
            }
            for (color, &degree) in deg_v.iter().enumerate() {
                if degree > mult as usize {
                    out.push(Violation::DegreeExceeded { vertex: v, color, other: u, degree, mult });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `Err` with the first violation, if any.
    pub fn check_valid(&self) -> Result<()> {
        match self.validate().into_iter().next() {
            Some(v) => Err(Error::InvalidCover(v.to_string())),
            None => Ok(()),
        }
    }

    /// Relabels each list: color `i` of `v` becomes `perms[v - 1][i - 1]`.
    pub fn permute_colors(&self, perms: &[Vec<usize>]) -> Result<Cover> {
        if perms.len() != self.n() {
            return Err(Error::Precondition("one permutation per vertex".into()));
        }
        for (idx, p) in perms.iter().enumerate() {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (1..=self.list_sizes[idx]).collect::<Vec<_>>() {
                return Err(Error::Precondition(format!("not a permutation of L({})", idx + 1)));
            }
        }
        let mut out = Cover::new(self.base.clone(), self.list_sizes.clone())?;
        for (u, i, v, j) in self.all_cross_edges() {
            out.add_cross_edge(u, perms[u - 1][i - 1], v, perms[v - 1][j - 1])?;
        }
        Ok(out)
    }

    /// Copy of the cover with one extra color at `v`, adjacent to nothing.
    pub fn with_extra_color(&self, v: Vertex) -> Result<Cover> {
        if v == 0 || v > self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        let mut out = self.clone();
        out.list_sizes[v - 1] += 1;
        Ok(out)
    }

    /// Places the cover inside an ambient multigraph on `n_total` vertices,
    /// vertex `v` going to `map[v - 1]`. Other vertices get empty lists and
    /// no edges.
    pub fn embed(&self, n_total: usize, map: &[Vertex]) -> Result<Cover> {
        if map.len() != self.n() {
            return Err(Error::Precondition("map must cover every vertex".into()));
        }
        let mut base = Multigraph::new(n_total);
        for (u, v, k) in self.base.edges() {
            base.set_mult(map[u - 1], map[v - 1], k)?;
        }
        let mut sizes = vec![0; n_total];
        for (v, &s) in self.list_sizes.iter().enumerate() {
            sizes[map[v] - 1] = s;
        }
        let mut out = Cover::new(base, sizes)?;
        for (u, i, v, j) in self.all_cross_edges() {
            out.add_cross_edge(map[u - 1], i, map[v - 1], j)?;
        }
        Ok(out)
    }

    /// Vertices that carry a nonempty list or an edge.
    pub fn support(&self) -> BTreeSet<Vertex> {
        self.base
            .vertices()
            .filter(|&v| self.list_size(v) > 0 || self.base.neighbor_count(v) > 0)
            .collect()
    }

    /// Whether `cross` is, for every adjacent pair, a bipartite graph that is
    /// `e(u, v)`-regular on both sides.
    pub fn is_pairwise_regular(&self) -> bool {
        self.base.edges().all(|(u, v, k)| {
            let edges = self.cross_edges(u, v);
            let mut du = vec![0u32; self.list_size(u)];
            let mut dv = vec![0u32; self.list_size(v)];
            for (i, j) in edges {
                du[i - 1] += 1;
                dv[j - 1] += 1;
            }
            du.iter().chain(dv.iter()).all(|&d| d == k)
        })
    }
}

/// The cover `H(G, L)` of a simple graph: `(u, i) ~ (v, j)` iff `uv` is an
/// edge and the `i`-th color of `L(u)` equals the `j`-th color of `L(v)`.
pub fn reduce_list(g: &Multigraph, lists: &[Vec<u32>]) -> Result<Cover> {
    g.require_simple()?;
    if lists.len() != g.n() {
        return Err(Error::Precondition(format!("{} lists for {} vertices", lists.len(), g.n())));
    }
    for (v, list) in lists.iter().enumerate() {
        let distinct: BTreeSet<_> = list.iter().collect();
        if distinct.len() != list.len() {
            return Err(Error::Precondition(format!("list of vertex {} repeats a color", v + 1)));
        }
    }
    let mut cover = Cover::new(g.clone(), lists.iter().map(Vec::len).collect())?;
    for (u, v, _) in g.edges() {
        for (i, a) in lists[u - 1].iter().enumerate() {
            if let Some(j) = lists[v - 1].iter().position(|b| b == a) {
                cover.add_cross_edge(u, i + 1, v, j + 1)?;
            }
        }
    }
    Ok(cover)
}

/// All lists `{1..k}`: colorable iff `G` is properly `k`-colorable.
pub fn product_reduction(g: &Multigraph, k: usize) -> Result<Cover> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let colors: Vec<u32> = (1..=k as u32).collect();
    reduce_list(g, &vec![colors; g.n()])
}

/// Uncolorable degree cover of `K_n^k`. Color `(i, j)` with `i` in `1..n` and
/// `j` in `1..=k` has index `(i - 1) k + j`; two colors of different vertices
/// are adjacent iff they share `i`.
pub fn build_bad_complete(n: usize, k: u32) -> Result<Cover> {
    if n < 2 {
        return Err(Error::Precondition("build_bad_complete needs n >= 2".into()));
    }
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let k = k as usize;
    let base = Multigraph::complete(n).power(k as u32)?;
    let mut cover = Cover::new(base, vec![k * (n - 1); n])?;
    for u in 1..=n {
        for v in u + 1..=n {
            for i in 0..n - 1 {
                for a in 1..=k {
                    for b in 1..=k {
                        cover.add_cross_edge(u, i * k + a, v, i * k + b)?;
                    }
                }
            }
        }
    }
    Ok(cover)
}

/// Uncolorable degree cover of `C_n^k` on the cycle `1-2-...-n-1`. Color
/// `(i, j)` with `i` in `{1, 2}` has index `(i - 1) k + j`. Consecutive
/// vertices join colors with equal `i`; across the closing pair `{1, n}`,
/// `(1, i)` meets `(n, i')` iff `i = i' + 1 + n (mod 2)`, which twists the
/// matching exactly when `n` is even.
pub fn build_bad_cycle(n: usize, k: u32) -> Result<Cover> {
    if n < 3 {
        return Err(Error::Precondition("build_bad_cycle needs n >= 3".into()));
    }
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let k = k as usize;
    let base = Multigraph::cycle(n).power(k as u32)?;
    let mut cover = Cover::new(base, vec![2 * k; n])?;
    let join = |cover: &mut Cover, u: Vertex, iu: usize, v: Vertex, iv: usize| -> Result<()> {
        for a in 1..=k {
            for b in 1..=k {
                cover.add_cross_edge(u, (iu - 1) * k + a, v, (iv - 1) * k + b)?;
            }
        }
        Ok(())
    };
    for v in 1..n {
        for i in 1..=2 {
            join(&mut cover, v, i, v + 1, i)?;
        }
    }
    for i1 in 1..=2 {
        for i_n in 1..=2 {
            if (i1 + 2 * n - i_n - 1 - n).is_multiple_of(2) {
                join(&mut cover, 1, i1, n, i_n)?;
            }
        }
    }
    Ok(cover)
}

/// Glues two covers over the same ambient vertex set whose supports meet in
/// exactly `{w}`. The result has `L(w) = L1(w) + L2(w)` (colors of the second
/// cover at `w` are shifted past the first) and keeps every other list.
pub fn glue(c1: &Cover, c2: &Cover, w: Vertex) -> Result<Cover> {
    if c1.n() != c2.n() {
        return Err(Error::BadOverlap(format!("ambient sizes {} and {} differ", c1.n(), c2.n())));
    }
    let shared: Vec<Vertex> = c1.support().intersection(&c2.support()).copied().collect();
    if shared != [w] {
        return Err(Error::BadOverlap(format!("supports share {shared:?}, expected [{w}]")));
    }
    let mut base = c1.base.clone();
    for (u, v, k) in c2.base.edges() {
        if base.mult(u, v) != 0 {
            return Err(Error::BadOverlap(format!("edge {u}-{v} in both")));
        }
        base.set_mult(u, v, k)?;
    }
    let sizes = c1.list_sizes.iter().zip(&c2.list_sizes).map(|(a, b)| a + b).collect();
    let mut out = Cover::new(base, sizes)?;
    for (u, i, v, j) in c1.all_cross_edges() {
        out.add_cross_edge(u, i, v, j)?;
    }
    let shift = c1.list_size(w);
    let lift = |x: Vertex, c: usize| if x == w { c + shift } else { c };
    for (u, i, v, j) in c2.all_cross_edges() {
        out.add_cross_edge(u, lift(u, i), v, lift(v, j))?;
    }
    Ok(out)
}
