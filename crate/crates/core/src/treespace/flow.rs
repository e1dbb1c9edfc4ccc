//! Minimum-weight vertex cover of a bipartite graph via max-flow (Edmonds–Karp).

use std::collections::VecDeque;

/// Minimum-weight vertex cover of the bipartite graph with left weights `wl`,
/// right weights `wr` and edges `(i, j)` from left `i` to right `j`.
///
/// Returns the cover as membership flags for each side. Residual capacities
/// at or below `tol` are treated as saturated.
pub(crate) fn min_vertex_cover(wl: &[f64], wr: &[f64], edges: &[(usize, usize)], tol: f64) -> (Vec<bool>, Vec<bool>) {
    let (nl, nr) = (wl.len(), wr.len());
    let source = nl + nr;
    let sink = source + 1;
    let size = sink + 1;
    let mut cap = vec![vec![0.0f64; size]; size];
    for (i, &w) in wl.iter().enumerate() {
        cap[source][i] = w;
    }
    for (j, &w) in wr.iter().enumerate() {
        cap[nl + j][sink] = w;
    }
    for &(i, j) in edges {
        cap[i][nl + j] = f64::INFINITY;
    }

    let reach = |cap: &Vec<Vec<f64>>| -> Vec<Option<usize>> {
        let mut prev = vec![None; size];
        prev[source] = Some(source);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..size {
                if prev[v].is_none() && cap[u][v] > tol {
                    prev[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        prev
    };

    loop {
        let prev = reach(&cap);
        if prev[sink].is_none() {
            let left = (0..nl).map(|i| prev[i].is_none()).collect();
            let right = (0..nr).map(|j| prev[nl + j].is_some()).collect();
            return (left, right);
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = sink;
        while v != source {
            let u = prev[v].expect("on path");
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = prev[v].expect("on path");
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(w: &[f64], flags: &[bool]) -> f64 {
        w.iter().zip(flags).filter(|(_, &f)| f).map(|(w, _)| w).sum()
    }

    #[test]
    fn single_edge_takes_lighter_end() {
        let (l, r) = min_vertex_cover(&[2.0], &[1.0], &[(0, 0)], 1e-12);
        assert_eq!((l, r), (vec![false], vec![true]));
    }

    #[test]
    fn star_prefers_center() {
        // left 0 joined to three right vertices of weight 1 each
        let (l, r) = min_vertex_cover(&[2.5], &[1.0, 1.0, 1.0], &[(0, 0), (0, 1), (0, 2)], 1e-12);
        assert_eq!(l, vec![true]);
        assert_eq!(r, vec![false; 3]);
    }

    #[test]
    fn matches_exhaustive_search() {
        let wl = [0.3, 1.2, 0.7];
        let wr = [0.9, 0.4, 0.5];
        let edges = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)];
        let (l, r) = min_vertex_cover(&wl, &wr, &edges, 1e-12);
        for &(i, j) in &edges {
            assert!(l[i] || r[j]);
        }
        let mut best = f64::INFINITY;
        for mask in 0u32..64 {
            let fl: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            let fr: Vec<bool> = (0..3).map(|j| mask >> (3 + j) & 1 == 1).collect();
            if edges.iter().all(|&(i, j)| fl[i] || fr[j]) {
                best = best.min(weight(&wl, &fl) + weight(&wr, &fr));
            }
        }
        assert!((weight(&wl, &l) + weight(&wr, &r) - best).abs() < 1e-12);
    }

    #[test]
    fn no_edges_empty_cover() {
        let (l, r) = min_vertex_cover(&[1.0, 2.0], &[3.0], &[], 1e-12);
        assert!(l.iter().chain(&r).all(|f| !f));
    }
}
