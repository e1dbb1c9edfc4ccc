//! Billera–Holmes–Vogtmann tree space.
//!
//! Trees are unrooted and leaf-labelled; coordinates are interior edge
//! lengths indexed by splits. Geodesics come from the Owen–Provan leg
//! decomposition computed in [`gtp_geodesic`].

mod flow;
mod geodesic;
mod gtp;
mod newick;
mod split;
mod tree;

pub use geodesic::{bhv_distance, bhv_point, tree_ray_point};
pub use gtp::{gtp_geodesic, CommonEdge, GeodesicSupport, Leg};
pub use newick::{parse_newick, parse_newick_list, serialize_newick, serialize_newick_with};
pub use split::{compatible, LeafMask, Split};
pub use tree::PhyloTree;

use crate::error::{Error, Result};
use crate::spaces::{check_param, ExtensionPolicy};

/// Largest supported leaf count (one bit per leaf in a [`LeafMask`]).
pub const MAX_LEAVES: usize = LeafMask::BITS as usize;

/// Tree space over a fixed metric convention.
///
/// Pendant edge lengths are carried along geodesics but only enter the
/// metric when `include_pendants` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeSpace {
    pub include_pendants: bool,
}

impl TreeSpace {
    pub fn new(include_pendants: bool) -> Self {
        TreeSpace { include_pendants }
    }

    pub(crate) fn check(&self, _t: &PhyloTree) -> Result<()> {
        Ok(())
    }

    pub fn distance(&self, a: &PhyloTree, b: &PhyloTree) -> Result<f64> {
        Ok(gtp_geodesic(a, b)?.length(self.include_pendants))
    }

    pub fn point_at(&self, a: &PhyloTree, b: &PhyloTree, t: f64) -> Result<PhyloTree> {
        let support = gtp_geodesic(a, b)?;
        let d = support.length(self.include_pendants);
        let t = check_param(t, d)?;
        Ok(geodesic::point_on(a, &support, if d == 0.0 { 0.0 } else { t / d }))
    }

    pub fn ray_point(&self, a: &PhyloTree, b: &PhyloTree, t: f64, policy: ExtensionPolicy) -> Result<PhyloTree> {
        geodesic::ray_point_with(a, b, t, policy, self.include_pendants)
    }

    /// Checks that every tree shares the leaf set of the first.
    pub fn check_leaves<'a>(&self, trees: impl IntoIterator<Item = &'a PhyloTree>) -> Result<()> {
        let mut it = trees.into_iter();
        if let Some(first) = it.next() {
            if it.any(|t| !t.same_leaves(first)) {
                return Err(Error::LeafSetMismatch);
            }
        }
        Ok(())
    }
}
