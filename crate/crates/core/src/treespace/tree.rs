use std::collections::BTreeMap;
use std::sync::Arc;

use super::split::{compatible, LeafMask, Split};
use super::MAX_LEAVES;
use crate::error::{Error, Result};

/// An unrooted leaf-labelled tree: interior splits with positive lengths plus pendant lengths.
///
/// Labels are kept in sorted order so that trees read from differently ordered
/// Newick strings share split masks. Zero-length interior splits are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyloTree {
    leaves: Arc<[String]>,
    splits: BTreeMap<Split, f64>,
    pendants: Vec<f64>,
}

impl PhyloTree {
    /// Builds a tree from labels, clusters of labels with lengths, and optional pendant lengths.
    ///
    /// Each cluster names one side of a split. Clusters describing the same
    /// bipartition have their lengths summed.
    pub fn from_clusters<S: AsRef<str>>(
        labels: &[S],
        clusters: &[(&[&str], f64)],
        pendants: &[(&str, f64)],
    ) -> Result<PhyloTree> {
        let leaves = canonical_labels(labels.iter().map(|s| s.as_ref().to_string()).collect())?;
        let index = |label: &str| -> Result<usize> {
            leaves
                .binary_search_by(|l| l.as_str().cmp(label))
                .map_err(|_| Error::InvalidParameter(format!("unknown leaf `{label}`")))
        };
        let mut raw = Vec::with_capacity(clusters.len());
        for (names, len) in clusters {
            let mut mask: LeafMask = 0;
            for name in names.iter() {
                mask |= 1 << index(name)?;
            }
            raw.push((mask, *len));
        }
        let mut pend = vec![0.0; leaves.len()];
        for (name, len) in pendants {
            pend[index(name)?] = *len;
        }
        PhyloTree::from_masks(leaves, raw, pend)
    }

    /// Builds a tree over already canonical (sorted, unique) labels from cluster masks.
    pub(crate) fn from_masks(
        leaves: Arc<[String]>,
        clusters: impl IntoIterator<Item = (LeafMask, f64)>,
        mut pendants: Vec<f64>,
    ) -> Result<PhyloTree> {
        let n = leaves.len();
        pendants.resize(n, 0.0);
        let mut splits: BTreeMap<Split, f64> = BTreeMap::new();
        for (mask, len) in clusters {
            check_length(len)?;
            let Some(split) = Split::new(mask, n) else { continue };
            if let Some(leaf) = split.pendant_leaf(n) {
                pendants[leaf] += len;
            } else {
                *splits.entry(split).or_insert(0.0) += len;
            }
        }
        for &p in &pendants {
            check_length(p)?;
        }
        splits.retain(|_, len| *len > 0.0);
        let keys: Vec<Split> = splits.keys().copied().collect();
        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i + 1..] {
                if !compatible(*a, *b) {
                    return Err(Error::InvalidParameter(format!("incompatible splits {a} and {b}")));
                }
            }
        }
        Ok(PhyloTree { leaves, splits, pendants })
    }

    /// A tree sharing this tree's leaf set, built from canonical splits.
    pub(crate) fn with_parts(&self, splits: BTreeMap<Split, f64>, pendants: Vec<f64>) -> PhyloTree {
        let mut splits = splits;
        splits.retain(|_, len| *len > 0.0);
        PhyloTree { leaves: Arc::clone(&self.leaves), splits, pendants }
    }

    /// The star tree (no interior splits, zero pendants) on these labels.
    pub fn star<S: AsRef<str>>(labels: &[S]) -> Result<PhyloTree> {
        PhyloTree::from_clusters(labels, &[], &[])
    }

    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn splits(&self) -> &BTreeMap<Split, f64> {
        &self.splits
    }

    pub fn pendants(&self) -> &[f64] {
        &self.pendants
    }

    /// Length of `split` in this tree, zero when absent.
    pub fn length(&self, split: Split) -> f64 {
        self.splits.get(&split).copied().unwrap_or(0.0)
    }

    /// Interior split for a cluster of labels, if the labels exist and form a bipartition.
    pub fn split_of(&self, labels: &[&str]) -> Option<Split> {
        let mut mask: LeafMask = 0;
        for l in labels {
            let i = self.leaves.binary_search_by(|x| x.as_str().cmp(l)).ok()?;
            mask |= 1 << i;
        }
        Split::new(mask, self.leaves.len())
    }

    pub fn same_leaves(&self, other: &PhyloTree) -> bool {
        Arc::ptr_eq(&self.leaves, &other.leaves) || self.leaves == other.leaves
    }
}

pub(crate) fn check_length(len: f64) -> Result<()> {
    if !(len >= 0.0) || !len.is_finite() {
        return Err(Error::InvalidParameter(format!("edge length {len} must be finite and >= 0")));
    }
    Ok(())
}

/// Sorts labels and rejects duplicates and out-of-range leaf counts.
pub(crate) fn canonical_labels(mut labels: Vec<String>) -> Result<Arc<[String]>> {
    labels.sort();
    for w in labels.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateLeaf(w[0].clone()));
        }
    }
    if labels.len() < 3 {
        return Err(Error::TooFewLeaves(labels.len()));
    }
    if labels.len() > MAX_LEAVES {
        return Err(Error::TooManyLeaves(labels.len()));
    }
    Ok(labels.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    const LABELS: [&str; 4] = ["a", "b", "c", "d"];

    #[test]
    fn clusters_on_both_sides_merge() {
        let t = PhyloTree::from_clusters(&LABELS, &[(&["a", "b"], 0.5), (&["c", "d"], 0.25)], &[]).unwrap();
        assert_eq!(t.splits().len(), 1);
        assert_eq!(t.length(t.split_of(&["a", "b"]).unwrap()), 0.75);
    }

    #[test]
    fn zero_length_splits_dropped() {
        let t = PhyloTree::from_clusters(&LABELS, &[(&["a", "b"], 0.0)], &[]).unwrap();
        assert!(t.splits().is_empty());
        assert_eq!(t, PhyloTree::star(&LABELS).unwrap());
    }

    #[test]
    fn singleton_clusters_are_pendants() {
        let t = PhyloTree::from_clusters(&LABELS, &[(&["c"], 2.0)], &[("c", 1.0)]).unwrap();
        assert!(t.splits().is_empty());
        assert_eq!(t.pendants(), &[0.0, 0.0, 3.0, 0.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(PhyloTree::from_clusters(&["a", "b", "a"], &[], &[]), Err(Error::DuplicateLeaf(_))));
        assert!(matches!(PhyloTree::star(&["a", "b"]), Err(Error::TooFewLeaves(2))));
        assert!(PhyloTree::from_clusters(&LABELS, &[(&["a", "b"], -1.0)], &[]).is_err());
        let five = ["a", "b", "c", "d", "e"];
        assert!(PhyloTree::from_clusters(&five, &[(&["a", "b"], 1.0), (&["b", "c"], 1.0)], &[]).is_err());
    }

    #[test]
    fn label_order_is_irrelevant() {
        let t1 = PhyloTree::from_clusters(&["d", "c", "b", "a"], &[(&["a", "b"], 1.0)], &[]).unwrap();
        let t2 = PhyloTree::from_clusters(&LABELS, &[(&["c", "d"], 1.0)], &[]).unwrap();
        assert_eq!(t1, t2);
    }
}
