//! Cyclic quadrant complex: `S` Euclidean quadrants glued edge to edge in a
//! cycle, i.e. the Euclidean cone of total angle `S·π/2`. CAT(0) for `S >= 4`.
//!
//! Sector `j` covers polar angles `[jπ/2, (j+1)π/2]`; its local coordinates
//! `(u, v)` are measured from the edge shared with sector `j-1`. Geodesics
//! are straight chords in an unfolding when the angular separation is at most
//! π, and otherwise pass through the apex.

use std::f64::consts::{FRAC_PI_2, PI};

use super::Point;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cone {
    sectors: usize,
}

/// Polar coordinates `(r, φ)` with `φ ∈ [0, S·π/2)`; the apex has `φ = 0`.
pub(crate) type Polar = (f64, f64);

/// Angular separations below this (times the radius) count as radial motion.
const RADIAL_EPS: f64 = 1e-14;

impl Cone {
    pub fn new(sectors: usize) -> Result<Self> {
        if sectors < 4 {
            return Err(Error::InvalidParameter(format!(
                "a cone of {sectors} quadrants has total angle below 2π and is not CAT(0)"
            )));
        }
        Ok(Cone { sectors })
    }

    pub fn sectors(&self) -> usize {
        self.sectors
    }

    pub fn total_angle(&self) -> f64 {
        self.sectors as f64 * FRAC_PI_2
    }

    pub(crate) fn check(&self, sector: usize, u: f64, v: f64) -> Result<()> {
        if !(u >= 0.0 && v >= 0.0) || !u.is_finite() || !v.is_finite() {
            return Err(Error::InvalidPoint(format!("cone coordinates ({u}, {v}) must be finite and >= 0")));
        }
        if sector >= self.sectors && (u > 0.0 || v > 0.0) {
            return Err(Error::InvalidPoint(format!(
                "sector {sector} out of range for a {}-sector cone",
                self.sectors
            )));
        }
        Ok(())
    }

    /// Canonical point from local coordinates.
    pub fn point(&self, sector: usize, u: f64, v: f64) -> Result<Point> {
        self.check(sector, u, v)?;
        Ok(self.make_point(self.polar_of(sector, u, v)))
    }

    /// Canonical point from polar coordinates (any real angle, wrapped).
    pub fn point_polar(&self, r: f64, angle: f64) -> Result<Point> {
        if !(r >= 0.0) || !r.is_finite() || !angle.is_finite() {
            return Err(Error::InvalidPoint(format!("polar coordinates ({r}, {angle}) invalid")));
        }
        Ok(self.make_point((r, self.wrap(angle))))
    }

    fn polar_of(&self, sector: usize, u: f64, v: f64) -> Polar {
        let r = u.hypot(v);
        if r == 0.0 {
            return (0.0, 0.0);
        }
        (r, self.wrap(sector as f64 * FRAC_PI_2 + v.atan2(u)))
    }

    pub(crate) fn polar(&self, p: &Point) -> Result<Polar> {
        match *p {
            Point::Cone { sector, u, v } => {
                self.check(sector, u, v)?;
                Ok(self.polar_of(sector, u, v))
            }
            _ => Err(Error::SpaceMismatch(format!("{} point given to cone space", p.kind()))),
        }
    }

    fn wrap(&self, angle: f64) -> f64 {
        let total = self.total_angle();
        let a = angle.rem_euclid(total);
        if a >= total {
            0.0
        } else {
            a
        }
    }

    pub(crate) fn make_point(&self, (r, phi): Polar) -> Point {
        if r <= 0.0 {
            return Point::Cone { sector: 0, u: 0.0, v: 0.0 };
        }
        let phi = self.wrap(phi);
        let sector = ((phi / FRAC_PI_2).floor() as usize).min(self.sectors - 1);
        let local = (phi - sector as f64 * FRAC_PI_2).clamp(0.0, FRAC_PI_2);
        Point::Cone { sector, u: (r * local.cos()).max(0.0), v: (r * local.sin()).max(0.0) }
    }

    /// Signed angle from `a` to `b` along the shorter way around, in `(-S·π/4, S·π/4]`.
    fn separation(&self, a: f64, b: f64) -> f64 {
        let total = self.total_angle();
        let mut d = (b - a).rem_euclid(total);
        if d > total / 2.0 {
            d -= total;
        }
        d
    }

    pub(crate) fn distance(&self, (r1, a1): Polar, (r2, a2): Polar) -> f64 {
        if r1 == 0.0 || r2 == 0.0 {
            return r1 + r2;
        }
        // unsigned separation computed symmetrically in the two arguments
        let total = self.total_angle();
        let raw = (a1 - a2).abs().rem_euclid(total);
        let sep = raw.min(total - raw);
        if sep <= PI {
            (r1 - r2).hypot(2.0 * (r1 * r2).sqrt() * (sep / 2.0).sin())
        } else {
            r1 + r2
        }
    }

    /// Outgoing angle for a ray arriving radially at the apex along angle `incoming`:
    /// the direction at angle π from `incoming` with the smallest sector index.
    fn apex_exit(&self, incoming: f64) -> f64 {
        let a = self.wrap(incoming + PI);
        let b = self.wrap(incoming - PI);
        let sector = |x: f64| (x / FRAC_PI_2).floor() as usize;
        match sector(a).cmp(&sector(b)) {
            std::cmp::Ordering::Less => a,
            std::cmp::Ordering::Greater => b,
            std::cmp::Ordering::Equal => a.min(b),
        }
    }

    /// Time-`t` point of the ray from `x` through `target`.
    pub(crate) fn toward(&self, x: Polar, target: Polar, t: f64) -> Polar {
        let (r0, a0) = x;
        let (r1, a1) = target;
        if r0 == 0.0 {
            return (t, a1);
        }
        let sep = if r1 == 0.0 { 0.0 } else { self.separation(a0, a1) };
        let inward = r1 == 0.0 || (sep.abs() * r0 < RADIAL_EPS && r1 < r0);
        if inward {
            return if t <= r0 { (r0 - t, a0) } else { (t - r0, self.apex_exit(a0)) };
        }
        if sep.abs() >= PI {
            return if t <= r0 { (r0 - t, a0) } else { (t - r0, a1) };
        }
        // straight line in the unfolding that puts x on the positive horizontal axis
        let (tx, ty) = (r1 * sep.cos() - r0, r1 * sep.sin());
        let len = tx.hypot(ty);
        let (qx, qy) = (r0 + t * tx / len, t * ty / len);
        let r = qx.hypot(qy);
        if r == 0.0 {
            return (0.0, 0.0);
        }
        (r, self.wrap(a0 + qy.atan2(qx)))
    }
}
