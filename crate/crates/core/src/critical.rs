//! DP-criticality and exact edge bounds for critical graphs and GDP-trees.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::census::{canonical_form, CanonicalCode};
use crate::config::Limits;
use crate::error::{BoundPrecondition, Error, Result};
use crate::multigraph::{BlockClass, Multigraph, Vertex};
use crate::solver::{chi_dp_with, is_dp_colorable};

pub type Rational = BigRational;

fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A sub-multigraph obtained by one deletion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deletion {
    /// One copy of the edge `uv`.
    Edge(Vertex, Vertex),
    Vertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalityReport {
    pub is_critical: bool,
    pub chi: usize,
    /// A deletion that leaves the DP-chromatic number at `k`.
    pub failing_subgraph: Option<Deletion>,
}

/// Vertex deletions are tried on graphs with at most this many vertices, on
/// top of the edge deletions that already decide criticality.
pub const VERTEX_CHECK_MAX_N: usize = 5;

pub fn check_critical(g: &Multigraph, k: usize) -> Result<CriticalityReport> {
    check_critical_with(g, k, &Limits::from_env(), VERTEX_CHECK_MAX_N)
}

/// Is `g` DP-`k`-critical? Deleting one copy of an edge must lower the
/// DP-chromatic number for every edge. Isolated vertices are removed as well
/// (no edge deletion reaches them), and every vertex when `n <= vertex_max_n`.
pub fn check_critical_with(g: &Multigraph, k: usize, limits: &Limits, vertex_max_n: usize) -> Result<CriticalityReport> {
    let chi = chi_dp_with(g, limits)?;
    let mut report = CriticalityReport { is_critical: false, chi, failing_subgraph: None };
    if chi != k {
        return Ok(report);
    }
    if g.n() == 1 {
        report.is_critical = true;
        return Ok(report);
    }
    let mut memo: HashMap<CanonicalCode, bool> = HashMap::new();
    let mut drops = |h: &Multigraph| -> Result<bool> {
        if h.n() == 0 {
            return Ok(true);
        }
        let code = canonical_form(h);
        if let Some(&d) = memo.get(&code) {
            return Ok(d);
        }
        let d = k >= 2 && is_dp_colorable(h, k - 1, limits)?;
        memo.insert(code, d);
        Ok(d)
    };
    for (u, v, _) in g.edges() {
        if !drops(&g.without_edge(u, v)?)? {
            report.failing_subgraph = Some(Deletion::Edge(u, v));
            return Ok(report);
        }
    }
    for v in g.vertices() {
        if (g.n() <= vertex_max_n || g.neighbor_count(v) == 0) && !drops(&g.without_vertex(v)?)? {
            report.failing_subgraph = Some(Deletion::Vertex(v));
            return Ok(report);
        }
    }
    report.is_critical = true;
    Ok(report)
}

/// Outcome of an edge bound: `slack >= 0` iff the bound holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub slack: Rational,
}

impl BoundCheck {
    fn new(slack: Rational) -> Self {
        BoundCheck { holds: slack >= Rational::zero(), slack }
    }
}

fn twice_edges(g: &Multigraph) -> i64 {
    2 * g.edge_count() as i64
}

/// `2|E| - (k - 1) n`, the slack of the lower bound for DP-`k`-critical
/// multigraphs.
pub fn check_bound_multigraph(g: &Multigraph, k: usize) -> BoundCheck {
    BoundCheck::new(int(twice_edges(g)) - int(k as i64 - 1) * int(g.n() as i64))
}

/// `k - 1 + (k - 3) / (k^2 - 3)`.
pub fn simple_bound_coefficient(k: usize) -> Rational {
    let k = k as i64;
    int(k - 1) + ratio(k - 3, k * k - 3)
}

/// `2|E| - (k - 1 + (k - 3)/(k^2 - 3)) n` for a simple DP-`k`-critical graph
/// other than `K_k`, `k >= 4`.
pub fn check_bound_simple(g: &Multigraph, k: usize) -> Result<BoundCheck> {
    if k < 4 {
        return Err(Error::Bound(BoundPrecondition::KTooSmall { k, min: 4 }));
    }
    g.require_simple()?;
    if g.n() == k && g.pair_count() == k * (k - 1) / 2 {
        return Err(Error::Bound(BoundPrecondition::IsComplete(k)));
    }
    Ok(BoundCheck::new(int(twice_edges(g)) - simple_bound_coefficient(k) * int(g.n() as i64)))
}

fn blocks_all(g: &Multigraph, ok: impl Fn(BlockClass) -> bool) -> Result<bool> {
    g.require_simple()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g.blocks()?.blocks.iter().all(|b| ok(b.class)))
}

/// Connected simple graph whose blocks are complete graphs or cycles.
pub fn is_gdp_tree(g: &Multigraph) -> Result<bool> {
    blocks_all(g, |c| !c.is_other())
}

/// Connected simple graph whose blocks are complete graphs or odd cycles.
pub fn is_gallai_tree(g: &Multigraph) -> Result<bool> {
    blocks_all(g, |c| match c {
        BlockClass::CompletePower { .. } => true,
        BlockClass::CyclePower { n, .. } => n % 2 == 1,
        BlockClass::Other => false,
    })
}

/// `(k - 2 + 2/(k - 1)) n - 2|E|` for a GDP-tree with maximum degree at most
/// `k - 1` and no `K_k`, `k >= 4`.
pub fn check_gdp_edge_bound(t: &Multigraph, k: usize) -> Result<BoundCheck> {
    if k < 4 {
        return Err(Error::Bound(BoundPrecondition::KTooSmall { k, min: 4 }));
    }
    if !is_gdp_tree(t)? {
        return Err(Error::Bound(BoundPrecondition::NotGdpTree));
    }
    let limit = k as u32 - 1;
    if t.max_degree() > limit {
        return Err(Error::Bound(BoundPrecondition::MaxDegree { max: t.max_degree(), limit }));
    }
    if t.clique_number() >= k {
        return Err(Error::Bound(BoundPrecondition::ContainsClique(k)));
    }
    let k = k as i64;
    let coefficient = int(k - 2) + ratio(2, k - 1);
    Ok(BoundCheck::new(coefficient * int(t.n() as i64) - int(twice_edges(t))))
}

/// `num/den` with the sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_critical_graphs() {
        let k4 = check_critical(&Multigraph::complete(4), 4).unwrap();
        assert!(k4.is_critical);
        assert_eq!(k4.chi, 4);
        assert!(check_critical(&Multigraph::cycle(3).power(2).unwrap(), 5).unwrap().is_critical);
        assert!(check_critical(&Multigraph::cycle(4), 3).unwrap().is_critical);
        assert!(check_critical(&Multigraph::new(1), 1).unwrap().is_critical);
        assert!(check_critical(&Multigraph::complete(2), 2).unwrap().is_critical);
    }

    #[test]
    fn pendant_edge_breaks_criticality() {
        let mut g = Multigraph::cycle(4).disjoint_union(&Multigraph::new(1));
        g.set_mult(1, 5, 1).unwrap();
        let r = check_critical(&g, 3).unwrap();
        assert_eq!(r.chi, 3);
        assert!(!r.is_critical);
        assert_eq!(r.failing_subgraph, Some(Deletion::Edge(1, 5)));
    }

    #[test]
    fn isolated_vertex_breaks_criticality() {
        let g = Multigraph::complete(4).disjoint_union(&Multigraph::new(1));
        let r = check_critical_with(&g, 4, &Limits::default(), 0).unwrap();
        assert!(!r.is_critical);
        assert_eq!(r.failing_subgraph, Some(Deletion::Vertex(5)));
    }

    #[test]
    fn wrong_k_is_not_critical() {
        let r = check_critical(&Multigraph::cycle(5), 4).unwrap();
        assert_eq!(r.chi, 3);
        assert!(!r.is_critical);
        assert_eq!(r.failing_subgraph, None);
    }

    #[test]
    fn multigraph_bound_examples() {
        let c32 = Multigraph::cycle(3).power(2).unwrap();
        assert_eq!(check_bound_multigraph(&c32, 5), BoundCheck { holds: true, slack: int(0) });
        assert_eq!(check_bound_multigraph(&Multigraph::complete(4), 4).slack, int(0));
        assert_eq!(check_bound_multigraph(&Multigraph::cycle(5), 3).slack, int(0));
        assert_eq!(check_bound_multigraph(&Multigraph::path(3), 3).slack, int(-2));
    }

    #[test]
    fn simple_bound_examples() {
        assert_eq!(simple_bound_coefficient(4), ratio(40, 13));
        assert_eq!(simple_bound_coefficient(5), int(4) + ratio(2, 22));
        // 2|E| = 90 on n = 22 vertices is exactly (4 + 2/22) n
        let mut g = Multigraph::new(22);
        let mut e = 0;
        'outer: for u in 1..=22 {
            for v in u + 1..=22 {
                g.set_mult(u, v, 1).unwrap();
                e += 1;
                if e == 45 {
                    break 'outer;
                }
            }
        }
        assert_eq!(check_bound_simple(&g, 5).unwrap().slack, int(0));
        assert_eq!(check_bound_simple(&Multigraph::complete(4), 4), Err(Error::Bound(BoundPrecondition::IsComplete(4))));
        assert!(matches!(check_bound_simple(&Multigraph::cycle(5), 3), Err(Error::Bound(BoundPrecondition::KTooSmall { .. }))));
        let k5e = Multigraph::complete(5).without_edge(1, 2).unwrap();
        assert_eq!(check_bound_simple(&k5e, 4).unwrap().slack, int(18) - ratio(200, 13));
    }

    #[test]
    fn gdp_tree_recognition() {
        assert!(is_gdp_tree(&Multigraph::path(6)).unwrap());
        let mut g = Multigraph::complete(4).disjoint_union(&Multigraph::new(2));
        for (u, v) in [(4, 5), (4, 6), (5, 6)] {
            g.set_mult(u, v, 1).unwrap();
        }
        assert!(is_gdp_tree(&g).unwrap());
        assert!(!is_gdp_tree(&Multigraph::complete(4).without_edge(1, 2).unwrap()).unwrap());
        assert!(is_gdp_tree(&Multigraph::cycle(4)).unwrap());
        assert!(!is_gallai_tree(&Multigraph::cycle(4)).unwrap());
        assert!(is_gallai_tree(&Multigraph::cycle(5)).unwrap());
        assert_eq!(is_gdp_tree(&Multigraph::new(2)), Err(Error::Disconnected));
    }

    #[test]
    fn gdp_bound_examples() {
        let tri = check_gdp_edge_bound(&Multigraph::complete(3), 4).unwrap();
        assert_eq!(tri.slack, int(2));
        for n in 1..=9 {
            let p = check_gdp_edge_bound(&Multigraph::path(n), 4).unwrap();
            assert_eq!(p.slack, ratio(8 * n as i64, 3) - int(2 * (n as i64 - 1)));
            assert!(p.holds);
        }
        assert_eq!(check_gdp_edge_bound(&Multigraph::complete(4), 4), Err(Error::Bound(BoundPrecondition::ContainsClique(4))));
        let star = Multigraph::from_edges(5, [(1, 2, 1), (1, 3, 1), (1, 4, 1), (1, 5, 1)]).unwrap();
        assert_eq!(
            check_gdp_edge_bound(&star, 4),
            Err(Error::Bound(BoundPrecondition::MaxDegree { max: 4, limit: 3 }))
        );
        let k4e = Multigraph::complete(4).without_edge(1, 2).unwrap();
        assert_eq!(check_gdp_edge_bound(&k4e, 4), Err(Error::Bound(BoundPrecondition::NotGdpTree)));
    }

    #[test]
    fn rationals_print_reduced() {
        assert_eq!(format_rational(&ratio(80, 26)), "40/13");
        assert_eq!(format_rational(&int(-3)), "-3/1");
    }
}
