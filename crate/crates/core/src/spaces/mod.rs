//! Hadamard spaces with explicit geodesics, rays and Busemann functions.
//!
//! A [`Space`] is a tagged union over the concrete models. Every operation
//! takes points of the matching [`Point`] variant and rejects the others with
//! [`Error::SpaceMismatch`]. The Busemann basepoint is fixed per space: the
//! origin for Euclidean space and the Poincaré disk, the apex for the spider
//! and the cone complex.

mod cone;
mod euclidean;
mod hyperbolic;
mod spider;

pub use cone::Cone;
pub use euclidean::Euclidean;
pub use hyperbolic::{Hyperbolic, BOUNDARY_GUARD};
pub use spider::Spider;

use crate::error::{Error, Result};
use crate::treespace::{PhyloTree, TreeSpace};

/// Slack allowed when a geodesic parameter exceeds the segment length through rounding.
pub(crate) const PARAM_SLACK: f64 = 1e-12;

/// A location in one of the supported spaces.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Euclidean(Vec<f64>),
    /// Poincaré disk coordinates, Euclidean norm strictly below one.
    Hyperbolic([f64; 2]),
    /// Distance `offset` from the glue point along leg `leg`.
    Spider {
        leg: usize,
        offset: f64,
    },
    /// Local quadrant coordinates `(u, v)` inside sector `sector`.
    Cone {
        sector: usize,
        u: f64,
        v: f64,
    },
    Tree(PhyloTree),
}

impl Point {
    pub fn euclidean(coords: impl Into<Vec<f64>>) -> Point {
        Point::Euclidean(coords.into())
    }

    pub fn hyperbolic(x: f64, y: f64) -> Result<Point> {
        hyperbolic::check_coords([x, y])?;
        Ok(Point::Hyperbolic([x, y]))
    }

    /// Spider point; offset zero is the glue point and is stored on leg 0.
    pub fn spider(leg: usize, offset: f64) -> Result<Point> {
        if !(offset >= 0.0) || !offset.is_finite() {
            return Err(Error::InvalidPoint(format!("spider offset {offset} must be finite and >= 0")));
        }
        Ok(if offset == 0.0 { Point::Spider { leg: 0, offset: 0.0 } } else { Point::Spider { leg, offset } })
    }

    /// Cone point; the apex is stored in sector 0.
    pub fn cone(sector: usize, u: f64, v: f64) -> Result<Point> {
        if !(u >= 0.0 && v >= 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(Error::InvalidPoint(format!("cone coordinates ({u}, {v}) must be finite and >= 0")));
        }
        Ok(if u == 0.0 && v == 0.0 { Point::Cone { sector: 0, u: 0.0, v: 0.0 } } else { Point::Cone { sector, u, v } })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Point::Euclidean(_) => "euclidean",
            Point::Hyperbolic(_) => "hyperbolic",
            Point::Spider { .. } => "spider",
            Point::Cone { .. } => "cone",
            Point::Tree(_) => "tree",
        }
    }

    pub fn as_tree(&self) -> Option<&PhyloTree> {
        match self {
            Point::Tree(t) => Some(t),
            _ => None,
        }
    }
}

impl From<PhyloTree> for Point {
    fn from(tree: PhyloTree) -> Self {
        Point::Tree(tree)
    }
}

/// A boundary direction for spaces with a closed-form boundary.
#[derive(Debug, Clone, PartialEq)]
pub enum Direction {
    /// Unit vector ξ (Euclidean space, or a point of the unit circle for the disk).
    Unit(Vec<f64>),
    /// The end of spider leg `i`.
    Leg(usize),
}

impl Direction {
    /// Normalizes `v`; fails on a zero or non-finite vector.
    pub fn unit(v: impl Into<Vec<f64>>) -> Result<Direction> {
        let mut v = v.into();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter("direction must be a nonzero finite vector".into()));
        }
        v.iter_mut().for_each(|c| *c /= norm);
        Ok(Direction::Unit(v))
    }
}

/// Describes the ray followed by a subgradient step.
#[derive(Debug, Clone, PartialEq)]
pub enum RayDescriptor {
    /// The class `[0]`; carries no ray.
    Zero,
    /// The ray issuing from the evaluation origin through `target`, extended past it.
    TowardPoint(Point),
    /// The ray issuing from the evaluation origin toward a boundary direction.
    Direction(Direction),
}

/// What to do when a ray must be followed beyond the computable geodesic span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtensionPolicy {
    #[default]
    Error,
    Clamp,
}

/// A Hadamard space with computable geodesics.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Euclidean(Euclidean),
    Hyperbolic(Hyperbolic),
    Spider(Spider),
    Cone(Cone),
    Tree(TreeSpace),
}

fn mismatch(space: &Space, p: &Point) -> Error {
    Error::SpaceMismatch(format!("{} point given to {} space", p.kind(), space.kind()))
}

impl Space {
    pub fn euclidean(dim: usize) -> Result<Space> {
        Euclidean::new(dim).map(Space::Euclidean)
    }

    pub fn hyperbolic() -> Space {
        Space::Hyperbolic(Hyperbolic)
    }

    pub fn spider(legs: usize) -> Result<Space> {
        Spider::new(legs).map(Space::Spider)
    }

    pub fn cone(sectors: usize) -> Result<Space> {
        Cone::new(sectors).map(Space::Cone)
    }

    pub fn tree(space: TreeSpace) -> Space {
        Space::Tree(space)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Space::Euclidean(_) => "euclidean",
            Space::Hyperbolic(_) => "hyperbolic",
            Space::Spider(_) => "spider",
            Space::Cone(_) => "cone",
            Space::Tree(_) => "tree",
        }
    }

    /// Whether [`RayDescriptor::Direction`] and closed-form Busemann functions are available.
    pub fn supports_directions(&self) -> bool {
        matches!(self, Space::Euclidean(_) | Space::Hyperbolic(_) | Space::Spider(_))
    }

    /// The fixed Busemann basepoint (origin or apex). Tree space has none.
    pub fn basepoint(&self) -> Result<Point> {
        match self {
            Space::Euclidean(e) => Ok(Point::Euclidean(vec![0.0; e.dim()])),
            Space::Hyperbolic(_) => Ok(Point::Hyperbolic([0.0, 0.0])),
            Space::Spider(_) => Ok(Point::Spider { leg: 0, offset: 0.0 }),
            Space::Cone(_) => Ok(Point::Cone { sector: 0, u: 0.0, v: 0.0 }),
            Space::Tree(_) => Err(Error::Unsupported("tree space has no fixed basepoint")),
        }
    }

    /// Checks that `p` is a valid point of this space.
    pub fn validate(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (Space::Euclidean(e), Point::Euclidean(x)) => e.check(x),
            (Space::Hyperbolic(_), Point::Hyperbolic(x)) => hyperbolic::check_coords(*x),
            (Space::Spider(s), Point::Spider { leg, offset }) => s.check(*leg, *offset),
            (Space::Cone(c), Point::Cone { sector, u, v }) => c.check(*sector, *u, *v),
            (Space::Tree(ts), Point::Tree(t)) => ts.check(t),
            _ => Err(mismatch(self, p)),
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        match (self, x, y) {
            (Space::Euclidean(e), Point::Euclidean(a), Point::Euclidean(b)) => {
                e.check(a)?;
                e.check(b)?;
                Ok(euclidean::distance(a, b))
            }
            (Space::Hyperbolic(h), Point::Hyperbolic(a), Point::Hyperbolic(b)) => h.distance(*a, *b),
            (Space::Spider(s), Point::Spider { .. }, Point::Spider { .. }) => {
                Ok(s.distance(s.coords(x)?, s.coords(y)?))
            }
            (Space::Cone(c), Point::Cone { .. }, Point::Cone { .. }) => Ok(c.distance(c.polar(x)?, c.polar(y)?)),
            (Space::Tree(ts), Point::Tree(a), Point::Tree(b)) => ts.distance(a, b),
            _ => Err(self.mismatch_pair(x, y)),
        }
    }

    /// The point at distance `t` from `x` on the geodesic `[x, y]`.
    pub fn geodesic_point(&self, x: &Point, y: &Point, t: f64) -> Result<Point> {
        let d = self.distance(x, y)?;
        let t = check_param(t, d)?;
        if t == 0.0 {
            return Ok(x.clone());
        }
        if t == d {
            return Ok(y.clone());
        }
        match (self, x, y) {
            (Space::Euclidean(_), Point::Euclidean(a), Point::Euclidean(b)) => {
                Ok(Point::Euclidean(euclidean::toward(a, b, t)))
            }
            (Space::Hyperbolic(h), Point::Hyperbolic(a), Point::Hyperbolic(b)) => {
                h.toward(*a, *b, t).map(Point::Hyperbolic)
            }
            (Space::Spider(s), _, _) => Ok(s.make_point(s.toward(s.coords(x)?, s.coords(y)?, t))),
            (Space::Cone(c), _, _) => Ok(c.make_point(c.toward(c.polar(x)?, c.polar(y)?, t))),
            (Space::Tree(ts), Point::Tree(a), Point::Tree(b)) => ts.point_at(a, b, t).map(Point::Tree),
            _ => Err(self.mismatch_pair(x, y)),
        }
    }

    /// The point at time `t` on the unit-speed ray described by `ray` issuing from `origin`.
    ///
    /// Toward-point rays follow the geodesic to the target and then its extension.
    /// Extensions through the spider glue point or the cone apex are not unique;
    /// the continuation with the lowest leg or sector index is taken. Tree space
    /// cannot extend and applies `policy` instead.
    pub fn ray_point(&self, origin: &Point, ray: &RayDescriptor, t: f64, policy: ExtensionPolicy) -> Result<Point> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!("ray time {t} must be finite and >= 0")));
        }
        self.validate(origin)?;
        match ray {
            RayDescriptor::Zero => Err(Error::InvalidParameter("the zero ray cannot be followed".into())),
            RayDescriptor::TowardPoint(target) => {
                self.validate(target)?;
                if self.distance(origin, target)? == 0.0 {
                    return Err(Error::InvalidParameter("ray target coincides with its origin".into()));
                }
                if t == 0.0 {
                    return Ok(origin.clone());
                }
                match (self, origin, target) {
                    (Space::Euclidean(_), Point::Euclidean(a), Point::Euclidean(b)) => {
                        Ok(Point::Euclidean(euclidean::toward(a, b, t)))
                    }
                    (Space::Hyperbolic(h), Point::Hyperbolic(a), Point::Hyperbolic(b)) => {
                        h.toward(*a, *b, t).map(Point::Hyperbolic)
                    }
                    (Space::Spider(s), _, _) => Ok(s.make_point(s.toward(s.coords(origin)?, s.coords(target)?, t))),
                    (Space::Cone(c), _, _) => Ok(c.make_point(c.toward(c.polar(origin)?, c.polar(target)?, t))),
                    (Space::Tree(ts), Point::Tree(a), Point::Tree(b)) => ts.ray_point(a, b, t, policy).map(Point::Tree),
                    _ => Err(self.mismatch_pair(origin, target)),
                }
            }
            RayDescriptor::Direction(dir) => match (self, origin, dir) {
                (Space::Euclidean(e), Point::Euclidean(a), Direction::Unit(xi)) => {
                    e.check_direction(xi)?;
                    Ok(Point::Euclidean(a.iter().zip(xi).map(|(p, d)| p + t * d).collect()))
                }
                (Space::Hyperbolic(h), Point::Hyperbolic(a), Direction::Unit(xi)) => {
                    let xi = hyperbolic::check_direction(xi)?;
                    h.toward_ideal(*a, xi, t).map(Point::Hyperbolic)
                }
                (Space::Spider(s), _, Direction::Leg(leg)) => {
                    s.check_leg(*leg)?;
                    Ok(s.make_point(s.toward_end(s.coords(origin)?, *leg, t)))
                }
                _ => Err(self.bad_direction(dir)),
            },
        }
    }

    /// Metric projection onto the closed ball `B_radius(center)`.
    pub fn project_ball(&self, center: &Point, radius: f64, y: &Point) -> Result<Point> {
        if !(radius >= 0.0) {
            return Err(Error::InvalidParameter(format!("ball radius {radius} must be >= 0")));
        }
        let d = self.distance(center, y)?;
        if d <= radius {
            Ok(y.clone())
        } else {
            self.geodesic_point(center, y, radius)
        }
    }

    /// Exact Busemann function of a boundary direction, normalized to vanish at the basepoint.
    pub fn busemann_closed_form(&self, dir: &Direction, z: &Point) -> Result<f64> {
        self.validate(z)?;
        match (self, dir, z) {
            (Space::Euclidean(e), Direction::Unit(xi), Point::Euclidean(p)) => {
                e.check_direction(xi)?;
                Ok(-p.iter().zip(xi).map(|(a, b)| a * b).sum::<f64>())
            }
            (Space::Hyperbolic(_), Direction::Unit(xi), Point::Hyperbolic(p)) => {
                let xi = hyperbolic::check_direction(xi)?;
                Ok(hyperbolic::busemann(xi, *p))
            }
            (Space::Spider(s), Direction::Leg(leg), _) => {
                s.check_leg(*leg)?;
                let (zl, zo) = s.coords(z)?;
                Ok(if zo == 0.0 || zl != *leg { zo } else { -zo })
            }
            _ => Err(self.bad_direction(dir)),
        }
    }

    /// Finite-horizon Busemann value `d(z, r(T)) - T` for the ray `r` issuing from `origin`.
    ///
    /// Nonincreasing in `horizon` and bounded below by the limiting Busemann
    /// function `b_r`. The disk uses an overflow-free closed form for long horizons.
    pub fn busemann_limit(&self, origin: &Point, ray: &RayDescriptor, z: &Point, horizon: f64) -> Result<f64> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::InvalidParameter(format!("horizon {horizon} must be finite and > 0")));
        }
        if let (Space::Hyperbolic(h), Point::Hyperbolic(x), Point::Hyperbolic(zc)) = (self, origin, z) {
            let dir = match ray {
                RayDescriptor::Zero => return Err(Error::InvalidParameter("the zero ray cannot be followed".into())),
                RayDescriptor::TowardPoint(Point::Hyperbolic(a)) => h.unit_toward(*x, *a)?,
                RayDescriptor::Direction(Direction::Unit(xi)) => {
                    h.unit_toward_ideal(*x, hyperbolic::check_direction(xi)?)?
                }
                RayDescriptor::TowardPoint(p) => return Err(mismatch(self, p)),
                RayDescriptor::Direction(d) => return Err(self.bad_direction(d)),
            };
            return h.ray_excess(*x, dir, *zc, horizon);
        }
        let far = self.ray_point(origin, ray, horizon, ExtensionPolicy::Error)?;
        Ok(self.distance(z, &far)? - horizon)
    }

    /// Quadratic form `(d(r(T), z)^2 - T^2) / (2T)`, which converges to the same Busemann limit.
    pub fn busemann_quadratic(&self, origin: &Point, ray: &RayDescriptor, z: &Point, horizon: f64) -> Result<f64> {
        let excess = self.busemann_limit(origin, ray, z, horizon)?;
        Ok(excess + excess * excess / (2.0 * horizon))
    }

    fn mismatch_pair(&self, x: &Point, y: &Point) -> Error {
        Error::SpaceMismatch(format!("{} and {} points given to {} space", x.kind(), y.kind(), self.kind()))
    }

    fn bad_direction(&self, dir: &Direction) -> Error {
        if self.supports_directions() {
            Error::InvalidParameter(format!("direction {dir:?} does not belong to the {} space", self.kind()))
        } else {
            Error::Unsupported("boundary directions are only available on euclidean, hyperbolic and spider spaces")
        }
    }
}

/// Validates a geodesic parameter against the segment length, absorbing rounding slack.
pub(crate) fn check_param(t: f64, len: f64) -> Result<f64> {
    let slack = PARAM_SLACK * len.max(1.0);
    if !(t >= -slack && t <= len + slack) {
        return Err(Error::OutOfRange { t, max: len });
    }
    Ok(t.clamp(0.0, len))
}
