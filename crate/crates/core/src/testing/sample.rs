//! Random points, directions, trees and components.

use std::f64::consts::TAU;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::oracles::ComponentSpec;
use crate::spaces::{Direction, Point, Space};
use crate::treespace::PhyloTree;

/// Rooted 4-leaf trees, modelled as unrooted trees with the root as leaf `0`.
pub const T4_LABELS: [&str; 5] = ["0", "a", "b", "c", "d"];

/// A random tree on `labels`: a random maximal-or-smaller compatible split set
/// with lengths in `(0.01, max_len)`; each split is kept with probability `keep`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, labels: &[&str], keep: f64, max_len: f64) -> PhyloTree {
    let n = labels.len();
    let mut candidates: Vec<u128> = (1u128..(1 << n))
        .filter(|m| m & 1 == 0)
        .filter(|m| {
            let s = m.count_ones() as usize;
            s >= 2 && n - s >= 2
        })
        .collect();
    candidates.shuffle(rng);
    let mut chosen: Vec<u128> = Vec::new();
    for c in candidates {
        if chosen.iter().all(|&d| c & d == 0 || c & !d == 0 || d & !c == 0) {
            chosen.push(c);
        }
    }
    let names: Vec<Vec<&str>> = chosen
        .iter()
        .filter(|_| rng.random_bool(keep))
        .map(|&m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| labels[i]).collect())
        .collect();
    let clusters: Vec<(&[&str], f64)> = names.iter().map(|v| (v.as_slice(), rng.random_range(0.01..max_len))).collect();
    let pendants: Vec<(&str, f64)> = labels.iter().map(|&l| (l, rng.random_range(0.0..1.0))).collect();
    PhyloTree::from_clusters(labels, &clusters, &pendants).expect("compatible splits")
}

/// A random point within distance about 1 of the basepoint. Spider and cone
/// samples hit the glue point and sector edges with positive probability;
/// trees are on [`T4_LABELS`].
pub fn random_point<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Point {
    match space {
        Space::Euclidean(e) => loop {
            let v: Vec<f64> = (0..e.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
            if v.iter().map(|c| c * c).sum::<f64>() <= 1.0 {
                return Point::euclidean(v);
            }
        },
        Space::Hyperbolic(_) => {
            let rho: f64 = rng.random::<f64>().sqrt();
            let r = (rho / 2.0).tanh();
            let a = rng.random_range(0.0..TAU);
            Point::hyperbolic(r * a.cos(), r * a.sin()).expect("inside the disk")
        }
        Space::Spider(s) => {
            if rng.random_bool(0.1) {
                Point::spider(0, 0.0).expect("glue point")
            } else {
                Point::spider(rng.random_range(0..s.legs()), rng.random_range(0.0..1.0)).expect("valid leg")
            }
        }
        Space::Cone(c) => {
            let sector = rng.random_range(0..c.sectors());
            match rng.random_range(0..20) {
                0 => c.point(0, 0.0, 0.0),
                1 | 2 => c.point(sector, 0.0, rng.random_range(0.0..1.0)),
                _ => c.point(sector, rng.random_range(0.0..0.7), rng.random_range(0.0..0.7)),
            }
            .expect("valid sector")
        }
        Space::Tree(_) => Point::from(random_tree(rng, &T4_LABELS, 0.8, 1.0)),
    }
}

/// A random boundary direction, on spaces that have closed-form Busemann functions.
pub fn random_direction<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> Option<Direction> {
    match space {
        Space::Euclidean(e) => loop {
            let v: Vec<f64> = (0..e.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            if n > 0.1 {
                return Some(Direction::unit(v.iter().map(|c| c / n).collect::<Vec<_>>()).expect("unit"));
            }
        },
        Space::Hyperbolic(_) => {
            let a = rng.random_range(0.0..TAU);
            Some(Direction::unit([a.cos(), a.sin()]).expect("unit"))
        }
        Space::Spider(s) => Some(Direction::Leg(rng.random_range(0..s.legs()))),
        _ => None,
    }
}

/// A random component of any kind the space supports.
pub fn random_component<R: Rng + ?Sized>(space: &Space, rng: &mut R) -> ComponentSpec {
    let kinds = if space.supports_directions() { 6 } else { 5 };
    match rng.random_range(0..kinds) {
        0 => ComponentSpec::weighted_distance(random_point(space, rng), rng.random_range(0.1..2.0)),
        1 => ComponentSpec::DistPower {
            anchor: random_point(space, rng),
            weight: rng.random_range(0.1..2.0),
            p: *[1.5, 2.0, 3.0].choose(rng).expect("nonempty"),
        },
        2 => ComponentSpec::Huber {
            anchor: random_point(space, rng),
            weight: rng.random_range(0.1..2.0),
            delta: rng.random_range(0.1..2.0),
        },
        3 => ComponentSpec::DistBall { anchor: random_point(space, rng), radius: rng.random_range(0.0..1.5) },
        4 => ComponentSpec::MaxOfDistances {
            anchors: (0..rng.random_range(1..4)).map(|_| random_point(space, rng)).collect(),
        },
        _ => ComponentSpec::DistHoroball { direction: random_direction(space, rng).expect("direction space") },
    }
}
