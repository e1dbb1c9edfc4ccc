//! Metric, geodesic, Busemann and oracle invariants on every space.

use std::f64::consts::TAU;

use hadopt_core::oracles::ComponentSpec;
use hadopt_core::spaces::{Direction, Point, RayDescriptor, Space};
use hadopt_core::testing::props::{self, Check};
use hadopt_core::testing::sample::{random_component, random_tree, T4_LABELS};
use hadopt_core::TreeSpace;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check(r: Check) -> Result<(), TestCaseError> {
    r.map_err(TestCaseError::fail)
}

fn component(space: Space) -> impl Strategy<Value = ComponentSpec> {
    any::<u64>().prop_map(move |s| random_component(&space, &mut ChaCha8Rng::seed_from_u64(s)))
}

fn euclidean_points() -> BoxedStrategy<Point> {
    prop::collection::vec(-1.0..1.0f64, 3)
        .prop_filter("unit ball", |v| v.iter().map(|c| c * c).sum::<f64>() <= 1.0)
        .prop_map(Point::euclidean)
        .boxed()
}

fn hyperbolic_points() -> BoxedStrategy<Point> {
    (0.0..1.0f64, 0.0..TAU)
        .prop_map(|(rho, a)| {
            let r = (rho / 2.0).tanh();
            Point::hyperbolic(r * a.cos(), r * a.sin()).unwrap()
        })
        .boxed()
}

fn spider_points() -> BoxedStrategy<Point> {
    (0..3usize, prop_oneof![1 => Just(0.0), 9 => 0.0..1.0f64]).prop_map(|(l, o)| Point::spider(l, o).unwrap()).boxed()
}

fn cone_points() -> BoxedStrategy<Point> {
    (0..5usize, prop_oneof![1 => Just(0.0), 9 => 0.0..0.7f64], 0.0..0.7f64)
        .prop_map(|(s, u, v)| Point::cone(s, u, v).unwrap())
        .boxed()
}

fn tree_points() -> BoxedStrategy<Point> {
    any::<u64>().prop_map(|s| Point::from(random_tree(&mut ChaCha8Rng::seed_from_u64(s), &T4_LABELS, 0.8, 1.0))).boxed()
}

fn euclidean_directions() -> BoxedStrategy<Direction> {
    prop::collection::vec(-1.0..1.0f64, 3)
        .prop_filter("not tiny", |v| v.iter().map(|c| c * c).sum::<f64>() > 0.01)
        .prop_map(|v| {
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            Direction::unit(v.iter().map(|c| c / n).collect::<Vec<_>>()).unwrap()
        })
        .boxed()
}

fn hyperbolic_directions() -> BoxedStrategy<Direction> {
    (0.0..TAU).prop_map(|a| Direction::unit([a.cos(), a.sin()]).unwrap()).boxed()
}

fn spider_directions() -> BoxedStrategy<Direction> {
    (0..3usize).prop_map(Direction::Leg).boxed()
}

macro_rules! space_suite {
    ($name:ident, $space:expr, $points:expr) => {
        mod $name {
            use super::*;

            fn space() -> Space {
                $space
            }

            fn point() -> BoxedStrategy<Point> {
                $points
            }

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(1000))]

                #[test]
                fn metric_axioms(x in point(), y in point(), z in point()) {
                    check(props::metric(&space(), &x, &y, &z))?;
                }

                #[test]
                fn npc_midpoint(x in point(), y in point(), z in point()) {
                    check(props::npc_midpoint(&space(), &x, &y, &z))?;
                }

                #[test]
                fn geodesic_consistency(x in point(), y in point(), lambda in 0.0..=1.0f64) {
                    check(props::geodesic_consistency(&space(), &x, &y, lambda))?;
                }

                #[test]
                fn busemann_monotone(o in point(), a in point(), z in point()) {
                    prop_assume!(space().distance(&o, &a).unwrap() > 1e-6);
                    check(props::busemann_monotone(&space(), &o, &RayDescriptor::TowardPoint(a), &z))?;
                }

                #[test]
                fn busemann_lipschitz(o in point(), a in point(), z1 in point(), z2 in point()) {
                    prop_assume!(space().distance(&o, &a).unwrap() > 1e-6);
                    check(props::busemann_lipschitz(&space(), &o, &RayDescriptor::TowardPoint(a), &z1, &z2))?;
                }

                #[test]
                fn busemann_convex(o in point(), a in point(), x in point(), y in point(), lambda in 0.0..=1.0f64) {
                    prop_assume!(space().distance(&o, &a).unwrap() > 1e-6);
                    check(props::busemann_convex(&space(), &o, &RayDescriptor::TowardPoint(a), &x, &y, lambda))?;
                }

                #[test]
                fn subgradient_inequality(c in component(space()), x in point(), y in point()) {
                    check(props::subgradient_inequality(&space(), &c, &x, &y))?;
                }

                #[test]
                fn projected_step(
                    c in component(space()),
                    center in point(),
                    radius in 0.2..3.0f64,
                    x in point(),
                    y in point(),
                    t in 1e-3..1.0f64,
                ) {
                    check(props::projected_step(&space(), &c, &center, radius, &x, &y, t))?;
                }

                #[test]
                fn projection_nonexpansive(center in point(), radius in 0.0..3.0f64, y1 in point(), y2 in point()) {
                    check(props::projection_nonexpansive(&space(), &center, radius, &y1, &y2))?;
                }
            }
        }
    };
}

macro_rules! direction_suite {
    ($name:ident, $space:expr, $points:expr, $dirs:expr) => {
        mod $name {
            use super::*;

            fn space() -> Space {
                $space
            }

            proptest! {
                #![proptest_config(ProptestConfig::with_cases(1000))]

                #[test]
                fn closed_form_matches_limit(dir in $dirs, z in $points) {
                    check(props::busemann_closed_vs_limit(&space(), &dir, &z))?;
                }

                #[test]
                fn quadratic_form_matches(dir in $dirs, z in $points) {
                    check(props::busemann_quadratic(&space(), &dir, &z))?;
                }

                #[test]
                fn closed_form_lipschitz_and_convex(
                    dir in $dirs,
                    o in $points,
                    x in $points,
                    y in $points,
                    lambda in 0.0..=1.0f64,
                ) {
                    let ray = RayDescriptor::Direction(dir);
                    check(props::busemann_lipschitz(&space(), &o, &ray, &x, &y))?;
                    check(props::busemann_convex(&space(), &o, &ray, &x, &y, lambda))?;
                    check(props::busemann_monotone(&space(), &o, &ray, &x))?;
                }
            }
        }
    };
}

space_suite!(euclidean, Space::euclidean(3).unwrap(), euclidean_points());
space_suite!(hyperbolic, Space::hyperbolic(), hyperbolic_points());
space_suite!(spider, Space::spider(3).unwrap(), spider_points());
space_suite!(cone, Space::cone(5).unwrap(), cone_points());
space_suite!(tree, Space::tree(TreeSpace::default()), tree_points());

direction_suite!(euclidean_boundary, Space::euclidean(3).unwrap(), euclidean_points(), euclidean_directions());
direction_suite!(hyperbolic_boundary, Space::hyperbolic(), hyperbolic_points(), hyperbolic_directions());
direction_suite!(spider_boundary, Space::spider(3).unwrap(), spider_points(), spider_directions());

#[test]
fn five_quadrant_cone_has_no_supporting_ray() {
    let n = props::five_quadrant_positivity().unwrap();
    assert!(n >= 315, "{n} grid points");
    let b = props::five_quadrant_busemann(5.0 * std::f64::consts::PI / 4.0).unwrap();
    assert!((b - (0.4 - 2f64.sqrt() / 4.0)).abs() < 1e-12);
}
