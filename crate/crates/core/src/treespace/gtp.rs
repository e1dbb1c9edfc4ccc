//! Geodesic supports between two trees (Owen–Provan successive refinement).

use super::flow::min_vertex_cover;
use super::split::{compatible, Split};
use super::tree::PhyloTree;
use crate::error::{Error, Result};

/// Relative guard on the `cover weight < 1` refinement test.
const COVER_GUARD: f64 = 1e-12;

/// A split that is present (possibly with length zero) on both ends of the geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommonEdge {
    pub split: Split,
    pub from: f64,
    pub to: f64,
}

/// One leg `(A, B)`: while it is active the `A` splits shrink to zero and the `B` splits grow.
#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub a: Vec<(Split, f64)>,
    pub b: Vec<(Split, f64)>,
}

fn norm(edges: &[(Split, f64)]) -> f64 {
    edges.iter().map(|(_, l)| l * l).sum::<f64>().sqrt()
}

impl Leg {
    pub fn norm_a(&self) -> f64 {
        norm(&self.a)
    }

    pub fn norm_b(&self) -> f64 {
        norm(&self.b)
    }

    /// `‖A‖ / ‖B‖`; infinite when `B` is empty.
    pub fn ratio(&self) -> f64 {
        self.norm_a() / self.norm_b()
    }
}

/// Leg decomposition of the geodesic between two trees on the same leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSupport {
    pub common: Vec<CommonEdge>,
    pub legs: Vec<Leg>,
    /// Pendant lengths `(from, to)` per leaf.
    pub pendants: Vec<(f64, f64)>,
}

impl GeodesicSupport {
    /// Length of the geodesic; pendant differences count only when `include_pendants`.
    pub fn length(&self, include_pendants: bool) -> f64 {
        let legs: f64 = self.legs.iter().map(|l| (l.norm_a() + l.norm_b()).powi(2)).sum();
        let common: f64 = self.common.iter().map(|c| (c.from - c.to).powi(2)).sum();
        let pendants: f64 =
            if include_pendants { self.pendants.iter().map(|(a, b)| (a - b).powi(2)).sum() } else { 0.0 };
        (legs + common + pendants).sqrt()
    }
}

/// Computes the geodesic support from `t1` to `t2`.
///
/// Splits shared by both trees, or compatible with every split of the other
/// tree, are common edges. The rest start as a single leg (the cone path
/// through the star tree) and legs are split by minimum-weight vertex covers
/// of their incompatibility graphs until no cover has normalized weight below one.
pub fn gtp_geodesic(t1: &PhyloTree, t2: &PhyloTree) -> Result<GeodesicSupport> {
    if !t1.same_leaves(t2) {
        return Err(Error::LeafSetMismatch);
    }
    let mut common = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (&s, &l) in t1.splits() {
        if t2.splits().contains_key(&s) || t2.splits().keys().all(|&f| compatible(s, f)) {
            common.push(CommonEdge { split: s, from: l, to: t2.length(s) });
        } else {
            a.push((s, l));
        }
    }
    for (&s, &l) in t2.splits() {
        if t1.splits().contains_key(&s) {
            continue;
        }
        if t1.splits().keys().all(|&e| compatible(e, s)) {
            common.push(CommonEdge { split: s, from: 0.0, to: l });
        } else {
            b.push((s, l));
        }
    }
    common.sort_by_key(|c| c.split);

    let mut legs = Vec::new();
    if !a.is_empty() {
        legs.push(Leg { a, b });
        let mut i = 0;
        while i < legs.len() {
            match refine(&legs[i]) {
                Some((first, second)) => {
                    legs[i] = first;
                    legs.insert(i + 1, second);
                }
                None => i += 1,
            }
        }
    }
    let pendants = t1.pendants().iter().copied().zip(t2.pendants().iter().copied()).collect();
    Ok(GeodesicSupport { common, legs, pendants })
}

/// Splits a leg by a minimum-weight vertex cover of weight below one, if one exists.
fn refine(leg: &Leg) -> Option<(Leg, Leg)> {
    let (na2, nb2) = (leg.norm_a().powi(2), leg.norm_b().powi(2));
    // weights scaled by ‖A‖²‖B‖² to keep the threshold away from underflow
    let wl: Vec<f64> = leg.a.iter().map(|(_, l)| l * l * nb2).collect();
    let wr: Vec<f64> = leg.b.iter().map(|(_, l)| l * l * na2).collect();
    let mut edges = Vec::new();
    for (i, (e, _)) in leg.a.iter().enumerate() {
        for (j, (f, _)) in leg.b.iter().enumerate() {
            if !compatible(*e, *f) {
                edges.push((i, j));
            }
        }
    }
    let threshold = na2 * nb2;
    let (cl, cr) = min_vertex_cover(&wl, &wr, &edges, threshold * 1e-15);
    let weight: f64 = wl.iter().zip(&cl).chain(wr.iter().zip(&cr)).filter(|(_, &c)| c).map(|(w, _)| w).sum();
    if weight >= threshold * (1.0 - COVER_GUARD) {
        return None;
    }
    let pick = |edges: &[(Split, f64)], flags: &[bool], want: bool| -> Vec<(Split, f64)> {
        edges.iter().zip(flags).filter(|(_, &f)| f == want).map(|(e, _)| *e).collect()
    };
    let first = Leg { a: pick(&leg.a, &cl, true), b: pick(&leg.b, &cr, false) };
    let second = Leg { a: pick(&leg.a, &cl, false), b: pick(&leg.b, &cr, true) };
    if first.a.is_empty() && first.b.is_empty() || second.a.is_empty() && second.b.is_empty() {
        return None;
    }
    Some((first, second))
}
