//! Degree-colorability from the block structure: a connected multigraph fails
//! to be DP-degree-colorable exactly when every block is some `K_n^k` or
//! `C_n^k`. In that case a bad degree cover is assembled from the per-block
//! covers by gluing along the block-cut tree.

use crate::cover::{build_bad_complete, build_bad_cycle, glue, Cover};
use crate::error::{Error, Result};
use crate::multigraph::{cyclic_order, Block, BlockClass, Multigraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeColorabilityVerdict {
    pub colorable: bool,
    /// Blocks with their classification, in decomposition order.
    pub reason: Vec<Block>,
    /// An uncolorable degree cover; present iff `!colorable`.
    pub witness: Option<Cover>,
}

pub fn decide_degree_colorable(g: &Multigraph) -> Result<DegreeColorabilityVerdict> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let d = g.blocks()?;
    let colorable = d.blocks.iter().any(|b| b.class.is_other());
    let witness = if colorable {
        None
    } else {
        let mut acc: Option<Cover> = None;
        for (idx, via) in d.preorder() {
            let part = block_cover(g, &d.blocks[idx])?;
            acc = Some(match (acc, via) {
                (None, _) => part,
                (Some(prev), Some(w)) => glue(&prev, &part, w)?,
                (Some(_), None) => return Err(Error::Internal("block-cut tree is not connected".into())),
            });
        }
        acc
    };
    Ok(DegreeColorabilityVerdict { colorable, reason: d.blocks, witness })
}

/// Verdict per connected component, ordered by smallest vertex. The vertices
/// of each component are listed alongside; the verdict refers to the induced
/// subgraph relabelled to `1..`.
pub fn decide_degree_colorable_any(g: &Multigraph) -> Result<Vec<(Vec<Vertex>, DegreeColorabilityVerdict)>> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    g.components()
        .into_iter()
        .map(|comp| {
            let verdict = decide_degree_colorable(&g.induced(&comp))?;
            Ok((comp, verdict))
        })
        .collect()
}

/// The bad cover of one block, placed on the vertices of `g`.
fn block_cover(g: &Multigraph, block: &Block) -> Result<Cover> {
    let (local, map) = match block.class {
        BlockClass::CompletePower { n: 1, .. } => (Cover::new(Multigraph::new(1), vec![0])?, block.vertices.clone()),
        BlockClass::CompletePower { n, k } => (build_bad_complete(n, k)?, block.vertices.clone()),
        BlockClass::CyclePower { n, k } => {
            let order = cyclic_order(g, &block.vertices)
                .ok_or_else(|| Error::Internal(format!("block {:?} is not a cycle", block.vertices)))?;
            (build_bad_cycle(n, k)?, order)
        }
        BlockClass::Other => return Err(Error::Precondition("no bad cover for this block".into())),
    };
    local.embed(g.n(), &map)
}
