//! Depth-first walk over a space of covers with fixed list sizes.
//!
//! Vertices are processed in a BFS order. Each vertex, in turn, decides the
//! cross-edge graphs towards its later neighbors, one column (a color of the
//! later vertex) at a time; a column is the set of earlier-vertex colors it is
//! adjacent to, encoded as a bitmask.
//!
//! Permuting a list does not change colorability, so the walk keeps only
//! covers in a lexicographic normal form. The first pair that touches a
//! vertex is its spanning-tree edge, and there its columns must be
//! lexicographically nonincreasing (row 0 most significant). Colors of a
//! vertex that are still indistinguishable when its own pairs start must be,
//! read as rows across those pairs, lexicographically nonincreasing as well.
//! Every cover can be brought into this form by sorting vertex by vertex in
//! processing order: each sorting swap raises the cover read slot by slot
//! and leaves everything decided earlier untouched.
//!
//! With [`Pruning::Peel`] a partial cover is abandoned once some coloring `p`
//! of the processed vertices `T` forces every completion to be colorable:
//! every color of `T` can still remove at most `e(u, w)` colors from a later
//! `L(w)` through an undecided pair, so if the remaining vertices can be
//! peeled off one by one, each with more surviving colors than remaining
//! neighbors (counted with multiplicity), a greedy pass in reverse peeling
//! order colors them whatever the undecided pairs turn out to be.

use std::collections::HashMap;

use crate::config::Limits;
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverClass {
    /// Every bipartite graph of maximum degree at most `e(u, v)`.
    All,
    /// Edge-maximal ones: every missing cross edge has an endpoint that
    /// already has degree `e(u, v)` (or is adjacent to the whole other list).
    /// Every cover is contained in one of these, and adding cross edges never
    /// creates colorings.
    Maximal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    None,
    /// Skip partial covers all of whose completions are colorable, and
    /// colorable leaves; only uncolorable covers are produced.
    Peel,
}

struct Pair {
    row: usize,
    col: usize,
    cols: usize,
    rmax: u32,
    cmax: u32,
    maximal: bool,
    canonical: bool,
    candidates: Vec<u64>,
    row_pos: usize,
}

pub struct CoverSearch {
    g: Multigraph,
    n: usize,
    sizes: Vec<usize>,
    order: Vec<usize>,
    mult: Vec<u32>,
    pairs: Vec<Pair>,
    pair_index: Vec<usize>,
    slots: Vec<(usize, usize)>,
    stride: usize,
    adj: Vec<u64>,
    row_used: Vec<Vec<u32>>,
    /// Per pair, rows that must end with degree `rmax` because some earlier
    /// column of degree below `cmax` missed them.
    must_fill: Vec<u64>,
    saved_fill: Vec<u64>,
    /// Per vertex, bit `i` set while colors `i` and `i + 1` are identical in
    /// every decided pair.
    tied: Vec<u64>,
    saved_tied: Vec<u64>,
    /// Slots that open the pairs of their row vertex.
    opens_row: Vec<bool>,
    col_pairs: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    next_try: Vec<usize>,
    depth: usize,
    at_leaf: bool,
    finished: bool,
    pruning: Pruning,
    nodes: u64,
    budget: u64,
}

/// Largest number of candidate column sets materialised for one pair.
const MAX_CANDIDATES: u128 = 4_000_000;

/// Subsets of `0..rows` with size in `lo..=hi`, ordered by size then value.
fn subsets(rows: usize, lo: u32, hi: u32) -> Vec<u64> {
    fn rec(start: usize, rows: usize, left: u32, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..rows {
            if rows - i < left as usize {
                break;
            }
            rec(i + 1, rows, left - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    for s in lo..=hi.min(rows as u32) {
        let before = out.len();
        rec(0, rows, s, 0, &mut out);
        out[before..].sort_unstable();
    }
    out
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// Number of bipartite graphs between `rows` and `cols` labelled vertices
/// with row degrees at most `rmax` and column degrees at most `cmax`; with
/// `maximal`, only the edge-maximal ones. Saturates.
pub fn count_pair_graphs(rows: usize, cols: usize, rmax: u32, cmax: u32, maximal: bool) -> u128 {
    // histogram over row states, bucket 2 * used + (must end full)
    fn spread(
        h: &[usize],
        bucket: usize,
        left: usize,
        ways: u128,
        taken: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, u128)>,
    ) {
        if bucket == h.len() {
            if left == 0 {
                out.push((taken.clone(), ways));
            }
            return;
        }
        let top = h.len() / 2 - 1;
        let cap = if bucket / 2 == top { 0 } else { left.min(h[bucket]) };
        for x in 0..=cap {
            taken[bucket] = x;
            spread(h, bucket + 1, left - x, ways.saturating_mul(binom(h[bucket], x)), taken, out);
        }
        taken[bucket] = 0;
    }
    let rmax = rmax.min(cols as u32) as usize;
    let cmax = cmax.min(rows as u32) as usize;
    let buckets = 2 * (rmax + 1);
    let mut states: HashMap<Vec<usize>, u128> = HashMap::new();
    let mut start = vec![0usize; buckets];
    start[0] = rows;
    states.insert(start, 1);
    for _ in 0..cols {
        let mut next: HashMap<Vec<usize>, u128> = HashMap::new();
        for (h, &ways) in &states {
            for s in 0..=cmax {
                let mut picks = Vec::new();
                spread(h, 0, s, ways, &mut vec![0; buckets], &mut picks);
                let flag = maximal && s < cmax;
                for (taken, w) in picks {
                    let mut g = vec![0usize; buckets];
                    for b in 0..buckets {
                        let (used, f) = (b / 2, b % 2);
                        if taken[b] > 0 {
                            g[2 * (used + 1) + f] += taken[b];
                        }
                        g[2 * used + (f | flag as usize)] += h[b] - taken[b];
                    }
                    let e = next.entry(g).or_insert(0);
                    *e = e.saturating_add(w);
                }
            }
        }
        states = next;
    }
    states
        .into_iter()
        .filter(|(h, _)| (0..rmax).all(|u| h[2 * u + 1] == 0))
        .fold(0u128, |acc, (_, w)| acc.saturating_add(w))
}

/// BFS from the vertex of largest degree, visiting neighbors by decreasing
/// degree; ties broken by vertex number.
fn vertex_order(g: &Multigraph) -> Vec<usize> {
    let n = g.n();
    let deg = g.degrees();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let root = (0..n).filter(|&v| !seen[v]).max_by_key(|&v| (deg[v], std::cmp::Reverse(v))).expect("unseen vertex");
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let v = order[head];
            head += 1;
            let mut nb: Vec<usize> = g.neighbors(v + 1).map(|(u, _)| u - 1).filter(|&u| !seen[u]).collect();
            nb.sort_by_key(|&u| (std::cmp::Reverse(deg[u]), u));
            for u in nb {
                seen[u] = true;
                order.push(u);
            }
        }
    }
    order
}

impl CoverSearch {
    pub fn new(g: &Multigraph, sizes: &[usize], class: CoverClass, pruning: Pruning, limits: &Limits) -> Result<Self> {
        let n = g.n();
        assert_eq!(sizes.len(), n);
        let total: usize = sizes.iter().sum();
        if total > limits.max_list_sum {
            return Err(Error::CapExceeded { what: "sum of list sizes", value: total as u128, limit: limits.max_list_sum as u128 });
        }
        let stride = sizes.iter().copied().max().unwrap_or(0);
        if stride > 64 {
            return Err(Error::CapExceeded { what: "list size", value: stride as u128, limit: 64 });
        }
        let order = vertex_order(g);
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut mult = vec![0u32; n * n];
        for (u, v, k) in g.edges() {
            mult[(u - 1) * n + v - 1] = k;
            mult[(v - 1) * n + u - 1] = k;
        }
        let mut pairs = Vec::new();
        let mut pair_index = vec![usize::MAX; n * n];
        let mut touched = vec![false; n];
        for (i, &v) in order.iter().enumerate() {
            let mut later: Vec<usize> = g.neighbors(v + 1).map(|(u, _)| u - 1).filter(|&u| pos[u] > i).collect();
            later.sort_by_key(|&u| pos[u]);
            for w in later {
                let e = mult[v * n + w];
                let (a, b) = (sizes[v], sizes[w]);
                let (ea, eb) = (e.min(b as u32), e.min(a as u32));
                let maximal = class == CoverClass::Maximal;
                let choices = count_pair_graphs(a, b, ea, eb, maximal);
                if choices > limits.max_pair_choices {
                    return Err(Error::CapExceeded { what: "cross-edge graphs for one pair", value: choices, limit: limits.max_pair_choices });
                }
                let ncand: u128 = (0..=eb).map(|s| binom(a, s as usize)).sum();
                if ncand > MAX_CANDIDATES {
                    return Err(Error::CapExceeded { what: "candidate column sets", value: ncand, limit: MAX_CANDIDATES });
                }
                let canonical = !touched[w];
                touched[w] = true;
                let mut candidates = subsets(a, 0, eb);
                if canonical {
                    candidates.sort_by_key(|&m| std::cmp::Reverse(lex_key(m, a)));
                }
                pair_index[v * n + w] = pairs.len();
                pair_index[w * n + v] = pairs.len();
                pairs.push(Pair {
                    row: v,
                    col: w,
                    cols: b,
                    rmax: ea,
                    cmax: eb,
                    maximal,
                    canonical,
                    candidates,
                    row_pos: i,
                });
            }
        }
        let slots: Vec<(usize, usize)> =
            pairs.iter().enumerate().flat_map(|(p, pair)| (0..pair.cols).map(move |c| (p, c))).collect();
        let npairs = pairs.len();
        let opens_row = slots.iter().map(|&(p, c)| c == 0 && (p == 0 || pairs[p - 1].row != pairs[p].row)).collect();
        let mut col_pairs = vec![Vec::new(); n];
        for (p, pair) in pairs.iter().enumerate() {
            col_pairs[pair.col].push(p);
        }
        let row_used = pairs.iter().map(|p| vec![0; sizes[p.row]]).collect();
        let budget = limits.node_budget;
        let mut search = CoverSearch {
            g: g.clone(),
            n,
            sizes: sizes.to_vec(),
            order,
            mult,
            pairs,
            pair_index,
            stride: stride.max(1),
            adj: vec![0; n * stride.max(1) * n],
            row_used,
            must_fill: vec![0; npairs],
            saved_fill: vec![0; slots.len()],
            tied: vec![0; n],
            saved_tied: vec![0; slots.len()],
            opens_row,
            col_pairs,
            chosen: vec![0; slots.len()],
            next_try: vec![0; slots.len() + 1],
            slots,
            depth: 0,
            at_leaf: false,
            finished: false,
            pruning,
            nodes: 0,
            budget,
        };
        if !search.slots.is_empty() {
            search.enter(0);
        }
        Ok(search)
    }

    /// Prepares slot `s` for its first candidate.
    fn enter(&mut self, s: usize) {
        let (p, c) = self.slots[s];
        self.next_try[s] = if c > 0 && self.pairs[p].canonical { self.chosen[s - 1] } else { 0 };
        if self.opens_row[s] {
            let v = self.pairs[p].row;
            let size = self.sizes[v];
            let mut t = full(size.saturating_sub(1));
            for &q in &self.col_pairs[v] {
                let u = self.pairs[q].row;
                for i in 0..size.saturating_sub(1) {
                    if self.adj_at(v, i, u) != self.adj_at(v, i + 1, u) {
                        t &= !(1 << i);
                    }
                }
            }
            self.tied[v] = t;
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    #[inline]
    fn adj_at(&self, v: usize, c: usize, u: usize) -> u64 {
        self.adj[(v * self.stride + c) * self.n + u]
    }

    /// Rows that must end full once `mask` is chosen for the current column.
    fn fill_after(&self, p: usize, mask: u64) -> u64 {
        let pair = &self.pairs[p];
        if pair.maximal && mask.count_ones() < pair.cmax {
            self.must_fill[p] | (full(self.row_used[p].len()) & !mask)
        } else {
            self.must_fill[p]
        }
    }

    fn feasible(&self, p: usize, c: usize, mask: u64) -> bool {
        let pair = &self.pairs[p];
        // a tied pair of rows may not be split with the later row ahead
        if self.tied[pair.row] & !mask & (mask >> 1) != 0 {
            return false;
        }
        let left = (pair.cols - c - 1) as u32;
        let fill = self.fill_after(p, mask);
        let mut need = 0u32;
        for (i, &u) in self.row_used[p].iter().enumerate() {
            let u = u + (mask >> i & 1) as u32;
            if u > pair.rmax {
                return false;
            }
            if fill >> i & 1 == 1 {
                let deficit = pair.rmax - u;
                if deficit > left {
                    return false;
                }
                need += deficit;
            }
        }
        need <= left * pair.cmax
    }

    fn apply(&mut self, s: usize, ci: usize) {
        let (p, c) = self.slots[s];
        let (row, col) = (self.pairs[p].row, self.pairs[p].col);
        let mask = self.pairs[p].candidates[ci];
        self.chosen[s] = ci;
        self.saved_fill[s] = self.must_fill[p];
        self.must_fill[p] = self.fill_after(p, mask);
        self.saved_tied[s] = self.tied[row];
        self.tied[row] &= !(mask ^ (mask >> 1));
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.row_used[p][i] += 1;
            self.adj[(row * self.stride + i) * self.n + col] |= 1 << c;
        }
        self.adj[(col * self.stride + c) * self.n + row] = mask;
    }

    fn undo(&mut self, s: usize) {
        let (p, c) = self.slots[s];
        let (row, col) = (self.pairs[p].row, self.pairs[p].col);
        let mask = self.pairs[p].candidates[self.chosen[s]];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.row_used[p][i] -= 1;
            self.adj[(row * self.stride + i) * self.n + col] &= !(1 << c);
        }
        self.adj[(col * self.stride + c) * self.n + row] = 0;
        self.must_fill[p] = self.saved_fill[s];
        self.tied[row] = self.saved_tied[s];
    }

    /// Next cover of the space in enumeration order (only uncolorable ones
    /// under [`Pruning::Peel`]).
    pub fn next_cover(&mut self) -> Result<Option<Cover>> {
        if self.finished {
            return Ok(None);
        }
        if self.at_leaf {
            self.at_leaf = false;
            if !self.retreat() {
                return Ok(None);
            }
        }
        loop {
            if self.depth == self.slots.len() {
                if self.pruning == Pruning::Peel && self.winning(self.n.saturating_sub(1), self.pairs.len()) {
                    if !self.retreat() {
                        return Ok(None);
                    }
                    continue;
                }
                self.at_leaf = true;
                return Ok(Some(self.to_cover()));
            }
            let s = self.depth;
            let (p, c) = self.slots[s];
            let start = self.next_try[s];
            let found = (start..self.pairs[p].candidates.len()).find(|&ci| self.feasible(p, c, self.pairs[p].candidates[ci]));
            match found {
                Some(ci) => {
                    self.next_try[s] = ci + 1;
                    self.apply(s, ci);
                    self.nodes += 1;
                    if self.nodes > self.budget {
                        return Err(Error::NodeBudget(self.budget));
                    }
                    if c + 1 == self.pairs[p].cols
                        && self.pruning == Pruning::Peel
                        && self.winning(self.pairs[p].row_pos, p + 1)
                    {
                        self.undo(s);
                        continue;
                    }
                    self.depth += 1;
                    if self.depth < self.slots.len() {
                        self.enter(self.depth);
                    }
                }
                None => {
                    if !self.retreat() {
                        return Ok(None);
                    }
                }
            }
        }
    }

    /// Pops one level; false when the walk is over.
    fn retreat(&mut self) -> bool {
        if self.depth == 0 {
            self.finished = true;
            return false;
        }
        self.depth -= 1;
        self.undo(self.depth);
        true
    }

    /// Does some coloring of `order[..=tail]` force every completion to be
    /// colorable, given that pairs with index `< decided` are fixed?
    fn winning(&mut self, tail: usize, decided: usize) -> bool {
        self.nodes += 1;
        let n = self.n;
        if n == 0 {
            return true;
        }
        let t_set: Vec<usize> = self.order[..=tail].to_vec();
        let s_set: Vec<usize> = self.order[tail + 1..].to_vec();
        let mut loss = vec![0i64; n];
        let mut deg_s = vec![0i64; n];
        for &w in &s_set {
            for &u in &t_set {
                let k = self.mult[u * n + w];
                if k > 0 && self.pair_index[u * n + w] >= decided {
                    loss[w] += k as i64;
                }
            }
            for &x in &s_set {
                deg_s[w] += self.mult[w * n + x] as i64;
            }
        }
        let mut avail: Vec<u64> = (0..n).map(|v| full(self.sizes[v])).collect();
        let mut killed = vec![0u64; n];
        let ctx = PeelCtx { t_set: &t_set, s_set: &s_set, loss: &loss, deg_s: &deg_s, decided };
        self.extend(&ctx, 0, &mut avail, &mut killed)
    }

    fn extend(&self, ctx: &PeelCtx, depth: usize, avail: &mut [u64], killed: &mut [u64]) -> bool {
        if depth == ctx.t_set.len() {
            return self.peels(ctx, killed);
        }
        let n = self.n;
        let v = ctx.t_set[depth];
        let mut colors = avail[v];
        while colors != 0 {
            let c = colors.trailing_zeros() as usize;
            colors &= colors - 1;
            let saved_avail: Vec<u64> = ctx.t_set[depth + 1..].iter().map(|&u| avail[u]).collect();
            let saved_killed: Vec<u64> = ctx.s_set.iter().map(|&w| killed[w]).collect();
            let mut dead = false;
            for &u in &ctx.t_set[depth + 1..] {
                if self.mult[v * n + u] > 0 {
                    avail[u] &= !self.adj_at(v, c, u);
                    if avail[u] == 0 {
                        dead = true;
                    }
                }
            }
            if !dead {
                for &w in ctx.s_set {
                    if self.mult[v * n + w] > 0 && self.pair_index[v * n + w] < ctx.decided {
                        killed[w] |= self.adj_at(v, c, w);
                    }
                }
                if self.extend(ctx, depth + 1, avail, killed) {
                    return true;
                }
            }
            for (&u, &a) in ctx.t_set[depth + 1..].iter().zip(&saved_avail) {
                avail[u] = a;
            }
            for (&w, &k) in ctx.s_set.iter().zip(&saved_killed) {
                killed[w] = k;
            }
        }
        false
    }

    fn peels(&self, ctx: &PeelCtx, killed: &[u64]) -> bool {
        let n = self.n;
        let mut left: Vec<usize> = ctx.s_set.to_vec();
        let mut rem = ctx.deg_s.to_vec();
        loop {
            let Some(idx) = left.iter().position(|&w| {
                let lb = self.sizes[w] as i64 - killed[w].count_ones() as i64 - ctx.loss[w];
                lb > rem[w]
            }) else {
                return left.is_empty();
            };
            let w = left.swap_remove(idx);
            for &x in &left {
                rem[x] -= self.mult[w * n + x] as i64;
            }
        }
    }

    fn to_cover(&self) -> Cover {
        let mut cover = Cover::new(self.g.clone(), self.sizes.clone()).expect("sizes match");
        for (s, &(p, c)) in self.slots.iter().enumerate() {
            let pair = &self.pairs[p];
            let mut bits = pair.candidates[self.chosen[s]];
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cover.add_cross_edge(pair.row + 1, i + 1, pair.col + 1, c + 1).expect("indices in range");
            }
        }
        cover
    }
}

/// Iterator over the degree covers of `g` (lists of size `deg(v)`) in
/// lexicographic normal form, which meets every class of covers equal up to
/// list permutations. With `maximal_only` only covers of
/// [`CoverClass::Maximal`] are produced; since every degree cover sits inside
/// one of those and extra cross edges never help, the stream holds an
/// uncolorable cover iff some degree cover is uncolorable. An exhausted
/// budget is yielded as an error and ends the stream.
pub struct DegreeCovers {
    search: CoverSearch,
    failed: bool,
}

impl Iterator for DegreeCovers {
    type Item = Result<Cover>;

    fn next(&mut self) -> Option<Result<Cover>> {
        if self.failed {
            return None;
        }
        let r = self.search.next_cover().transpose();
        self.failed = matches!(r, Some(Err(_)));
        r
    }
}

pub fn enumerate_degree_covers(g: &Multigraph, maximal_only: bool) -> Result<DegreeCovers> {
    enumerate_degree_covers_with(g, maximal_only, &Limits::from_env())
}

pub fn enumerate_degree_covers_with(g: &Multigraph, maximal_only: bool, limits: &Limits) -> Result<DegreeCovers> {
    let sizes: Vec<usize> = g.degrees().iter().map(|&d| d as usize).collect();
    let class = if maximal_only { CoverClass::Maximal } else { CoverClass::All };
    Ok(DegreeCovers { search: CoverSearch::new(g, &sizes, class, Pruning::None, limits)?, failed: false })
}

struct PeelCtx<'a> {
    t_set: &'a [usize],
    s_set: &'a [usize],
    loss: &'a [i64],
    deg_s: &'a [i64],
    decided: usize,
}

/// Reads `mask` over `rows` rows with row 0 as the most significant bit.
fn lex_key(mask: u64, rows: usize) -> u64 {
    (0..rows).filter(|&i| mask >> i & 1 == 1).map(|i| 1u64 << (rows - 1 - i)).sum()
}

fn full(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}
