//! Fixtures shared by the benchmarks in `benches/`.

use hadopt_core::treespace::{parse_newick, PhyloTree};

/// Caterpillar on leaves `0..n` joined in the given order, interior edges of length `len(i)`.
pub fn caterpillar(order: &[usize], len: impl Fn(usize) -> f64) -> PhyloTree {
    assert!(order.len() >= 4, "need at least 4 leaves");
    let mut s = format!("(t{}:1,t{}:1)", order[0], order[1]);
    for (i, leaf) in order[2..order.len() - 2].iter().enumerate() {
        s = format!("({s}:{},t{leaf}:1)", len(i));
    }
    let n = order.len();
    let tail = order.len() - 4;
    parse_newick(&format!("({s}:{},t{}:1,t{}:1);", len(tail), order[n - 2], order[n - 1])).expect("valid caterpillar")
}

/// Two caterpillars on `n` leaves with opposite leaf orders, which share no interior split.
pub fn opposed_pair(n: usize) -> (PhyloTree, PhyloTree) {
    let fwd: Vec<usize> = (0..n).collect();
    let mut mixed: Vec<usize> = (0..n).step_by(2).collect();
    mixed.extend((1..n).step_by(2));
    (caterpillar(&fwd, |i| 1.0 + 0.1 * i as f64), caterpillar(&mixed, |i| 2.0 - 0.05 * i as f64))
}
