//! Reference implementations, samplers and property checks for tests.
//!
//! The brute-force tree distance is exponential-time and intended for small trees only.

pub mod props;
pub mod sample;

use crate::treespace::{compatible, PhyloTree, Split};

/// BHV distance by exhaustive search over leg decompositions.
///
/// Shared splits interpolate linearly. Every other split may either sit in a
/// leg or, when it is compatible with the whole other tree, interpolate
/// linearly against length zero. Among all ordered partitions into legs that
/// describe a real path (cross compatibility at every leg boundary and
/// nondecreasing length ratios) the shortest is returned. Pendants are ignored.
pub fn brute_force_distance(t1: &PhyloTree, t2: &PhyloTree) -> f64 {
    assert!(t1.same_leaves(t2), "leaf sets differ");
    let mut shared = 0.0;
    let mut only1 = Vec::new();
    let mut only2 = Vec::new();
    for (&s, &l) in t1.splits() {
        match t2.splits().get(&s) {
            Some(&m) => shared += (l - m) * (l - m),
            None => only1.push((s, l, t2.splits().keys().all(|&f| compatible(s, f)))),
        }
    }
    for (&s, &l) in t2.splits() {
        if !t1.splits().contains_key(&s) {
            only2.push((s, l, t1.splits().keys().all(|&e| compatible(e, s))));
        }
    }

    let mut best = f64::INFINITY;
    // choose which optional splits interpolate linearly instead of joining a leg
    for keep1 in subsets_of_optional(&only1) {
        for keep2 in subsets_of_optional(&only2) {
            let mut linear = shared;
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (i, &(s, l, _)) in only1.iter().enumerate() {
                if keep1 >> i & 1 == 1 {
                    linear += l * l;
                } else {
                    a.push((s, l));
                }
            }
            for (j, &(s, l, _)) in only2.iter().enumerate() {
                if keep2 >> j & 1 == 1 {
                    linear += l * l;
                } else {
                    b.push((s, l));
                }
            }
            if a.is_empty() != b.is_empty() {
                // a one-sided leg still needs the cross checks; treat it as a single leg
                if legs_valid(&[a.clone()], &[b.clone()]) {
                    let na = norm(&a);
                    let nb = norm(&b);
                    best = best.min((linear + (na + nb).powi(2)).sqrt());
                }
                continue;
            }
            if a.is_empty() {
                best = best.min(linear.sqrt());
                continue;
            }
            for k in 1..=a.len().min(b.len()) {
                for pa in ordered_partitions(a.len(), k) {
                    for pb in ordered_partitions(b.len(), k) {
                        let la: Vec<Vec<(Split, f64)>> =
                            pa.iter().map(|blk| blk.iter().map(|&i| a[i]).collect()).collect();
                        let lb: Vec<Vec<(Split, f64)>> =
                            pb.iter().map(|blk| blk.iter().map(|&j| b[j]).collect()).collect();
                        if !legs_valid(&la, &lb) {
                            continue;
                        }
                        let legs: f64 = la.iter().zip(&lb).map(|(x, y)| (norm(x) + norm(y)).powi(2)).sum();
                        best = best.min((linear + legs).sqrt());
                    }
                }
            }
        }
    }
    best
}

fn norm(edges: &[(Split, f64)]) -> f64 {
    edges.iter().map(|(_, l)| l * l).sum::<f64>().sqrt()
}

/// Bitmasks over `items` that only set bits of optional (compatible-with-all) entries.
fn subsets_of_optional(items: &[(Split, f64, bool)]) -> Vec<u32> {
    let optional: Vec<usize> = items.iter().enumerate().filter(|(_, x)| x.2).map(|(i, _)| i).collect();
    (0u32..1 << optional.len())
        .map(|m| optional.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).fold(0, |acc, (_, &i)| acc | 1 << i))
        .collect()
}

fn legs_valid(a: &[Vec<(Split, f64)>], b: &[Vec<(Split, f64)>]) -> bool {
    let k = a.len();
    for cut in 0..=k {
        for bj in &b[..cut] {
            for al in &a[cut..] {
                for &(f, _) in bj {
                    for &(e, _) in al {
                        if !compatible(e, f) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    // nondecreasing ‖Aᵢ‖/‖Bᵢ‖, compared by cross multiplication
    (1..k).all(|i| norm(&a[i - 1]) * norm(&b[i]) <= norm(&a[i]) * norm(&b[i - 1]) * (1.0 + 1e-12))
}

/// All ordered partitions of `0..n` into `k` nonempty blocks.
fn ordered_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in assign.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treespace::{bhv_distance, parse_newick};

    #[test]
    fn partitions_count() {
        // 3 elements into 2 ordered blocks: 2^3 - 2
        assert_eq!(ordered_partitions(3, 2).len(), 6);
        assert_eq!(ordered_partitions(2, 1).len(), 1);
    }

    #[test]
    fn agrees_on_fixtures() {
        let trees = [
            "((a:1,b:1):1,(c:1,d:1):2,0:1);",
            "(((a:1,b:1):2,c:1):1.5,d:1,0:1);",
            "(((b:1,c:1):3,a:1):0.5,d:1,0:1);",
            "(a:1,b:1,c:1,d:1,0:1);",
        ];
        for x in trees {
            for y in trees {
                let (x, y) = (parse_newick(x).unwrap(), parse_newick(y).unwrap());
                let fast = bhv_distance(&x, &y).unwrap();
                assert!((fast - brute_force_distance(&x, &y)).abs() < 1e-12);
            }
        }
    }
}
