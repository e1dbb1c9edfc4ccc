use std::fmt;

/// Bitmask over leaf indices; bit `i` is leaf `i` in sorted label order.
pub type LeafMask = u128;

/// A bipartition of the leaf set, stored as the side that excludes leaf 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Split {
    side: LeafMask,
}

impl Split {
    /// Canonical split from either side of the bipartition over `n` leaves.
    ///
    /// Returns `None` when one side would be empty.
    pub fn new(side: LeafMask, n: usize) -> Option<Split> {
        let full = full_mask(n);
        let side = side & full;
        let side = if side & 1 == 1 { full & !side } else { side };
        // the complement always contains leaf 0, so only `side` can be empty
        if side == 0 {
            return None;
        }
        Some(Split { side })
    }

    /// Side of the bipartition that does not contain leaf 0.
    pub fn side(&self) -> LeafMask {
        self.side
    }

    /// Leaves on the canonical side.
    pub fn size(&self) -> u32 {
        self.side.count_ones()
    }

    /// Whether both sides have at least two leaves (an interior edge).
    pub fn is_interior(&self, n: usize) -> bool {
        let s = self.size() as usize;
        s >= 2 && n - s >= 2
    }

    /// Leaf index of a pendant split, if exactly one leaf is cut off.
    pub(crate) fn pendant_leaf(&self, n: usize) -> Option<usize> {
        if self.size() == 1 {
            Some(self.side.trailing_zeros() as usize)
        } else if n as u32 - self.size() == 1 {
            Some(0)
        } else {
            None
        }
    }

    /// Leaf indices on the canonical side, ascending.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        let side = self.side;
        (0..LeafMask::BITS as usize).filter(move |i| side >> i & 1 == 1)
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.leaves().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn full_mask(n: usize) -> LeafMask {
    if n >= LeafMask::BITS as usize {
        LeafMask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Two splits are compatible when some pair of opposite sides is disjoint.
///
/// Both canonical sides exclude leaf 0, so their complements always meet and
/// the test reduces to disjointness or nesting of the canonical sides.
pub fn compatible(s1: Split, s2: Split) -> bool {
    let (a, b) = (s1.side, s2.side);
    a & b == 0 || a & !b == 0 || b & !a == 0
}
