//! Per-case checks of the geometric and oracle invariants.
//!
//! Each check returns `Err` with a description of the violation. [`suite`]
//! drives them from a seeded generator; property-test crates can call them on
//! their own samples.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sample::{random_component, random_direction, random_point};
use crate::error::Result;
use crate::oracles::{eval_component, subgrad_component, ComponentSpec};
use crate::spaces::{Direction, ExtensionPolicy, Point, RayDescriptor, Space};

/// Default additive slack for exact identities.
pub const SLACK: f64 = 1e-9;
/// Horizon at which finite Busemann values stand in for the limit.
pub const HORIZON: f64 = 1e3;
/// Tolerance for closed-form against finite-horizon Busemann values and for oracle inequalities.
pub const BUSEMANN_TOL: f64 = 1e-6;
/// Tolerance for the quadratic Busemann form.
pub const QUADRATIC_TOL: f64 = 1e-3;

pub type Check = std::result::Result<(), String>;

fn ok(r: Result<bool>, what: impl FnOnce() -> String) -> Check {
    match r {
        Ok(true) => Ok(()),
        Ok(false) => Err(what()),
        Err(e) => Err(format!("{}: {e}", what())),
    }
}

/// Symmetry (exact), identity, nonnegativity and the triangle inequality.
pub fn metric(space: &Space, x: &Point, y: &Point, z: &Point) -> Check {
    let r = (|| {
        let (xy, yx) = (space.distance(x, y)?, space.distance(y, x)?);
        let (yz, xz) = (space.distance(y, z)?, space.distance(x, z)?);
        Ok(xy == yx && space.distance(x, x)? == 0.0 && xy >= 0.0 && xz <= xy + yz + SLACK)
    })();
    ok(r, || format!("metric axioms fail at {x:?}, {y:?}, {z:?}"))
}

/// `d(m,z)² <= ½d(x,z)² + ½d(y,z)² - ¼d(x,y)²` for the midpoint `m` of `[x, y]`.
pub fn npc_midpoint(space: &Space, x: &Point, y: &Point, z: &Point) -> Check {
    let r = (|| {
        let d = space.distance(x, y)?;
        let m = space.geodesic_point(x, y, d / 2.0)?;
        let lhs = space.distance(&m, z)?.powi(2);
        let rhs = 0.5 * space.distance(x, z)?.powi(2) + 0.5 * space.distance(y, z)?.powi(2) - 0.25 * d * d;
        Ok(lhs <= rhs + SLACK)
    })();
    ok(r, || format!("NPC midpoint inequality fails at {x:?}, {y:?}, {z:?}"))
}

/// The point at parameter `λ·d` lies at distances `λd` and `(1-λ)d` from the ends.
pub fn geodesic_consistency(space: &Space, x: &Point, y: &Point, lambda: f64) -> Check {
    let r = (|| {
        let d = space.distance(x, y)?;
        let t = lambda * d;
        let p = space.geodesic_point(x, y, t)?;
        Ok((space.distance(x, &p)? - t).abs() <= SLACK && (space.distance(&p, y)? - (d - t)).abs() <= SLACK)
    })();
    ok(r, || format!("geodesic point at λ = {lambda} misplaced between {x:?} and {y:?}"))
}

/// The longest horizon that can be evaluated on `ray` from `origin` without extension trouble.
pub fn horizon_for(space: &Space, origin: &Point, ray: &RayDescriptor) -> Result<f64> {
    match (space, ray) {
        (Space::Tree(_), RayDescriptor::TowardPoint(a)) => space.distance(origin, a),
        _ => Ok(HORIZON),
    }
}

/// Finite-horizon Busemann value from the basepoint agrees with the closed form.
pub fn busemann_closed_vs_limit(space: &Space, dir: &Direction, z: &Point) -> Check {
    let mut gap = f64::NAN;
    let r = (|| {
        let base = space.basepoint()?;
        let ray = RayDescriptor::Direction(dir.clone());
        let limit = space.busemann_limit(&base, &ray, z, HORIZON)?;
        gap = (limit - space.busemann_closed_form(dir, z)?).abs();
        Ok(gap <= BUSEMANN_TOL)
    })();
    ok(r, || format!("closed form and horizon-{HORIZON} value differ by {gap:.3e} for {dir:?} at {z:?}"))
}

/// The quadratic form `(d(r(T), z)² - T²)/(2T)` is within [`QUADRATIC_TOL`] of the closed form.
pub fn busemann_quadratic(space: &Space, dir: &Direction, z: &Point) -> Check {
    let r = (|| {
        let base = space.basepoint()?;
        let q = space.busemann_quadratic(&base, &RayDescriptor::Direction(dir.clone()), z, HORIZON)?;
        Ok((q - space.busemann_closed_form(dir, z)?).abs() <= QUADRATIC_TOL)
    })();
    ok(r, || format!("quadratic Busemann form off for {dir:?} at {z:?}"))
}

/// `T ↦ d(z, r(T)) - T` is nonincreasing.
pub fn busemann_monotone(space: &Space, origin: &Point, ray: &RayDescriptor, z: &Point) -> Check {
    let r = (|| {
        let top = horizon_for(space, origin, ray)?;
        let mut prev = f64::INFINITY;
        for frac in [1e-3, 1e-2, 0.1, 0.5, 1.0] {
            let v = space.busemann_limit(origin, ray, z, top * frac)?;
            if v > prev + SLACK {
                return Ok(false);
            }
            prev = v;
        }
        Ok(true)
    })();
    ok(r, || format!("finite Busemann values increase along {ray:?} from {origin:?} at {z:?}"))
}

fn busemann_value(space: &Space, origin: &Point, ray: &RayDescriptor, z: &Point) -> Result<f64> {
    match ray {
        RayDescriptor::Direction(d) => Ok(space.busemann_closed_form(d, z)? - space.busemann_closed_form(d, origin)?),
        _ => space.busemann_limit(origin, ray, z, horizon_for(space, origin, ray)?),
    }
}

/// `|b(z₁) - b(z₂)| <= d(z₁, z₂)`.
pub fn busemann_lipschitz(space: &Space, origin: &Point, ray: &RayDescriptor, z1: &Point, z2: &Point) -> Check {
    let r = (|| {
        let b1 = busemann_value(space, origin, ray, z1)?;
        let b2 = busemann_value(space, origin, ray, z2)?;
        Ok((b1 - b2).abs() <= space.distance(z1, z2)? + SLACK)
    })();
    ok(r, || format!("Busemann function of {ray:?} not 1-Lipschitz at {z1:?}, {z2:?}"))
}

/// `b(γ(λ)) <= (1-λ) b(x) + λ b(y)` along the geodesic `γ` from `x` to `y`.
pub fn busemann_convex(space: &Space, origin: &Point, ray: &RayDescriptor, x: &Point, y: &Point, lambda: f64) -> Check {
    let r = (|| {
        let p = space.geodesic_point(x, y, lambda * space.distance(x, y)?)?;
        let bp = busemann_value(space, origin, ray, &p)?;
        let bx = busemann_value(space, origin, ray, x)?;
        let by = busemann_value(space, origin, ray, y)?;
        Ok(bp <= (1.0 - lambda) * bx + lambda * by + SLACK)
    })();
    ok(r, || format!("Busemann function of {ray:?} not convex between {x:?} and {y:?}"))
}

/// `f(y) >= f(x) + s·b(y)` with `b(y) = d(y, r(T)) - T` for the oracle's ray from `x`.
///
/// `T` is [`HORIZON`], or `d(x, a)` in tree space where rays cannot pass the anchor.
pub fn subgradient_inequality(space: &Space, c: &ComponentSpec, x: &Point, y: &Point) -> Check {
    let mut slack = f64::NAN;
    let r = (|| {
        let g = subgrad_component(space, c, x)?;
        let fx = eval_component(space, c, x)?;
        let fy = eval_component(space, c, y)?;
        let b = if g.is_zero() { 0.0 } else { space.busemann_limit(x, &g.ray, y, horizon_for(space, x, &g.ray)?)? };
        slack = fy - fx - g.speed * b;
        Ok(slack >= -BUSEMANN_TOL)
    })();
    ok(r, || format!("subgradient inequality violated by {:.3e} for {c:?} at x = {x:?}, y = {y:?}", -slack))
}

/// One projected oracle step `x⁺` satisfies `d(x⁺,y)² <= d(x,y)² - 2t(f(x) - f(y)) + s²t²`
/// for `x, y` in the ball. In tree space `t` is shortened so the step stops short of the anchor.
pub fn projected_step(
    space: &Space,
    c: &ComponentSpec,
    center: &Point,
    radius: f64,
    x: &Point,
    y: &Point,
    t: f64,
) -> Check {
    let mut excess = f64::NAN;
    let r = (|| {
        let x = space.project_ball(center, radius, x)?;
        let y = space.project_ball(center, radius, y)?;
        let g = subgrad_component(space, c, &x)?;
        let mut t = t;
        if let (Space::Tree(_), RayDescriptor::TowardPoint(a)) = (space, &g.ray) {
            t = t.min(space.distance(&x, a)? / g.speed);
        }
        let next = if g.is_zero() {
            x.clone()
        } else {
            let far = space.ray_point(&x, &g.ray, g.speed * t, ExtensionPolicy::Error)?;
            space.project_ball(center, radius, &far)?
        };
        let (fx, fy) = (eval_component(space, c, &x)?, eval_component(space, c, &y)?);
        let lhs = space.distance(&next, &y)?.powi(2);
        let rhs = space.distance(&x, &y)?.powi(2) - 2.0 * t * (fx - fy) + (g.speed * t).powi(2);
        excess = lhs - rhs;
        Ok(excess <= BUSEMANN_TOL)
    })();
    ok(r, || format!("projected step inequality exceeded by {excess:.3e} for {c:?}"))
}

/// `d(P y₁, P y₂) <= d(y₁, y₂)` for the projection onto a ball.
pub fn projection_nonexpansive(space: &Space, center: &Point, radius: f64, y1: &Point, y2: &Point) -> Check {
    let r = (|| {
        let p1 = space.project_ball(center, radius, y1)?;
        let p2 = space.project_ball(center, radius, y2)?;
        Ok(space.distance(&p1, &p2)? <= space.distance(y1, y2)? + SLACK
            && space.distance(center, &p1)? <= radius + SLACK)
    })();
    ok(r, || format!("projection onto B({center:?}, {radius}) expands {y1:?}, {y2:?}"))
}

/// The five-quadrant configuration: quadrant `(+,+,0)` is sector 0 and polar
/// angles continue through `(-,+,0)`, `(-,0,+)`, `(0,-,+)` and `(+,-,0)`.
/// `x̄ = (¼,¼,0)` and `x̃ = (⅖,0,0)`.
pub fn five_quadrant_points() -> (Space, Point, Point) {
    let space = Space::cone(5).expect("five sectors");
    let Space::Cone(c) = &space else { unreachable!() };
    let xbar = c.point_polar(2f64.sqrt() / 4.0, PI / 4.0).expect("valid");
    let xtilde = c.point_polar(0.4, 0.0).expect("valid");
    (space, xbar, xtilde)
}

/// `b_{r_v}(x̃)` for the ray from `x̄` leaving at planar angle `θ`, by [`Space::busemann_limit`].
pub fn five_quadrant_busemann(theta: f64) -> Result<f64> {
    let (space, xbar, xtilde) = five_quadrant_points();
    let Space::Cone(c) = &space else { unreachable!() };
    // a nearby point in direction θ; for θ in [π/4, 5π/4] it stays in the upper half plane
    let (px, py) = (0.25 + 0.1 * theta.cos(), 0.25 + 0.1 * theta.sin());
    let target = c.point_polar(px.hypot(py), py.atan2(px))?;
    space.busemann_limit(&xbar, &RayDescriptor::TowardPoint(target), &xtilde, HORIZON)
}

/// `b_{r_v}(x̃) > 0` for `θ` on the grid `π/4, π/4 + 0.01, …, 5π/4`; returns the number of grid points.
pub fn five_quadrant_positivity() -> std::result::Result<usize, String> {
    let mut n = 0;
    let mut theta = PI / 4.0;
    while theta <= 5.0 * PI / 4.0 + 1e-12 {
        let b = five_quadrant_busemann(theta).map_err(|e| format!("θ = {theta}: {e}"))?;
        if !(b > 0.0) {
            return Err(format!("b = {b} <= 0 at θ = {theta}"));
        }
        n += 1;
        theta += 0.01;
    }
    let b = five_quadrant_busemann(5.0 * PI / 4.0).map_err(|e| e.to_string())?;
    if !(b > 0.0) {
        return Err(format!("b = {b} <= 0 at θ = 5π/4"));
    }
    Ok(n + 1)
}

/// Pass/fail tally of one property over seeded samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub property: &'static str,
    pub space: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn tally(property: &'static str, space: &Space, cases: usize, mut case: impl FnMut(usize) -> Check) -> Outcome {
    let mut out = Outcome { property, space: format!("{space:?}"), cases, failures: 0, first_failure: None };
    for i in 0..cases {
        if let Err(e) = case(i) {
            out.failures += 1;
            out.first_failure.get_or_insert(e);
        }
    }
    out
}

/// Runs every applicable property `cases` times on `space`, drawing samples from `seed`.
pub fn suite(space: &Space, cases: usize, seed: u64) -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rng = &mut rng;
    let mut out = Vec::new();
    let pt = |rng: &mut ChaCha8Rng| random_point(space, rng);
    let ray_from = |rng: &mut ChaCha8Rng, origin: &Point| -> RayDescriptor {
        if space.supports_directions() && rng.random_bool(0.5) {
            return RayDescriptor::Direction(random_direction(space, rng).expect("direction space"));
        }
        loop {
            let a = random_point(space, rng);
            if space.distance(origin, &a).map(|d| d > 1e-6).unwrap_or(false) {
                return RayDescriptor::TowardPoint(a);
            }
        }
    };

    out.push(tally("metric axioms", space, cases, |_| {
        let (x, y, z) = (pt(rng), pt(rng), pt(rng));
        metric(space, &x, &y, &z)
    }));
    out.push(tally("NPC midpoint", space, cases, |_| {
        let (x, y, z) = (pt(rng), pt(rng), pt(rng));
        npc_midpoint(space, &x, &y, &z)
    }));
    out.push(tally("geodesic consistency", space, cases, |_| {
        let (x, y) = (pt(rng), pt(rng));
        geodesic_consistency(space, &x, &y, rng.random())
    }));
    if space.supports_directions() {
        out.push(tally("Busemann closed form vs limit", space, cases, |_| {
            let dir = random_direction(space, rng).expect("direction space");
            busemann_closed_vs_limit(space, &dir, &pt(rng))
        }));
        out.push(tally("quadratic Busemann form", space, cases, |_| {
            let dir = random_direction(space, rng).expect("direction space");
            busemann_quadratic(space, &dir, &pt(rng))
        }));
    }
    out.push(tally("Busemann monotone in horizon", space, cases, |_| {
        let origin = pt(rng);
        let ray = ray_from(rng, &origin);
        busemann_monotone(space, &origin, &ray, &pt(rng))
    }));
    out.push(tally("Busemann 1-Lipschitz", space, cases, |_| {
        let origin = pt(rng);
        let ray = ray_from(rng, &origin);
        busemann_lipschitz(space, &origin, &ray, &pt(rng), &pt(rng))
    }));
    out.push(tally("Busemann convex", space, cases, |_| {
        let origin = pt(rng);
        let ray = ray_from(rng, &origin);
        let (x, y) = (pt(rng), pt(rng));
        busemann_convex(space, &origin, &ray, &x, &y, rng.random())
    }));
    out.push(tally("subgradient inequality", space, cases, |_| {
        let c = random_component(space, rng);
        subgradient_inequality(space, &c, &pt(rng), &pt(rng))
    }));
    out.push(tally("projected step inequality", space, cases, |_| {
        let c = random_component(space, rng);
        let center = pt(rng);
        let radius = rng.random_range(0.2..3.0);
        let (x, y) = (pt(rng), pt(rng));
        projected_step(space, &c, &center, radius, &x, &y, rng.random_range(1e-3..1.0))
    }));
    out.push(tally("projection nonexpansive", space, cases, |_| {
        let center = pt(rng);
        let radius = rng.random_range(0.0..3.0);
        projection_nonexpansive(space, &center, radius, &pt(rng), &pt(rng))
    }));
    out
}
