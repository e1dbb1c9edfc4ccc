//! The Poincaré disk model of ℍ².
//!
//! Geodesics through a point `x` are computed by moving `x` to the origin with
//! the disk automorphism `z ↦ (z - x) / (1 - x̄ z)`, where geodesics are
//! diameters and the point at distance `t` along the unit direction `u` is
//! `tanh(t/2) u`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points this close to the unit circle are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// The hyperbolic plane in Poincaré disk coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Hyperbolic;

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub(crate) fn check_coords(p: [f64; 2]) -> Result<()> {
    let n = c(p).norm();
    if !n.is_finite() || n >= 1.0 - BOUNDARY_GUARD {
        return Err(Error::InvalidPoint(format!(
            "hyperbolic point ({}, {}) must lie strictly inside the unit disk",
            p[0], p[1]
        )));
    }
    Ok(())
}

pub(crate) fn check_direction(xi: &[f64]) -> Result<Complex64> {
    if xi.len() != 2 {
        return Err(Error::InvalidParameter(format!("disk direction must have 2 components, got {}", xi.len())));
    }
    let z = Complex64::new(xi[0], xi[1]);
    if (z.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!("direction has norm {}, expected 1", z.norm())));
    }
    Ok(z / z.norm())
}

/// `z ↦ (z - x) / (1 - x̄ z)`, sending `x` to the origin.
fn to_origin(x: Complex64, z: Complex64) -> Complex64 {
    (z - x) / (Complex64::new(1.0, 0.0) - x.conj() * z)
}

fn from_origin(x: Complex64, w: Complex64) -> Complex64 {
    (w + x) / (Complex64::new(1.0, 0.0) + x.conj() * w)
}

/// Busemann function of the ideal point `xi`, vanishing at the origin.
pub(crate) fn busemann(xi: Complex64, p: [f64; 2]) -> f64 {
    let z = c(p);
    -((1.0 - z.norm_sqr()) / (z - xi).norm_sqr()).ln()
}

impl Hyperbolic {
    pub(crate) fn distance(&self, a: [f64; 2], b: [f64; 2]) -> Result<f64> {
        check_coords(a)?;
        check_coords(b)?;
        // |1 - āb| and |1 - b̄a| are conjugate moduli, so this is exactly symmetric
        let (a, b) = (c(a), c(b));
        let num = (b - a).norm();
        let den = (Complex64::new(1.0, 0.0) - a.conj() * b).norm();
        Ok(2.0 * (num / den).atanh())
    }

    /// Unit direction, in coordinates centred at `x`, of the geodesic toward `a`.
    pub(crate) fn unit_toward(&self, x: [f64; 2], a: [f64; 2]) -> Result<Complex64> {
        check_coords(x)?;
        check_coords(a)?;
        let w = to_origin(c(x), c(a));
        let n = w.norm();
        if n == 0.0 {
            return Err(Error::InvalidParameter("ray target coincides with its origin".into()));
        }
        Ok(w / n)
    }

    pub(crate) fn unit_toward_ideal(&self, x: [f64; 2], xi: Complex64) -> Result<Complex64> {
        check_coords(x)?;
        let w = to_origin(c(x), xi);
        Ok(w / w.norm())
    }

    fn along(&self, x: [f64; 2], dir: Complex64, t: f64) -> Result<[f64; 2]> {
        let p = from_origin(c(x), dir * (t / 2.0).tanh());
        let out = [p.re, p.im];
        check_coords(out).map_err(|_| {
            Error::Unrepresentable(format!("ray point at time {t} falls within {BOUNDARY_GUARD} of the disk boundary"))
        })?;
        Ok(out)
    }

    pub(crate) fn toward(&self, x: [f64; 2], a: [f64; 2], t: f64) -> Result<[f64; 2]> {
        let u = self.unit_toward(x, a)?;
        self.along(x, u, t)
    }

    pub(crate) fn toward_ideal(&self, x: [f64; 2], xi: Complex64, t: f64) -> Result<[f64; 2]> {
        let u = self.unit_toward_ideal(x, xi)?;
        self.along(x, u, t)
    }

    /// `d(z, r(T)) - T` for the ray from `x` with unit direction `u` (in `x`-centred coordinates).
    ///
    /// Uses `cosh d = 1 + K` with `K = 2|w - q|² cosh²(T/2) / (1 - |w|²)`, evaluated in the
    /// log domain once `K` is large, so horizons far beyond `f64` overflow stay exact.
    pub(crate) fn ray_excess(&self, x: [f64; 2], u: Complex64, z: [f64; 2], horizon: f64) -> Result<f64> {
        check_coords(x)?;
        check_coords(z)?;
        let w = to_origin(c(x), c(z));
        let q = u * (horizon / 2.0).tanh();
        let gap = (w - q).norm();
        if gap == 0.0 {
            return Ok(-horizon);
        }
        let half = horizon / 2.0;
        let ln_cosh_half = half + (-2.0 * half).exp().ln_1p() - std::f64::consts::LN_2;
        let ln_k = (2.0 * gap * gap / (1.0 - w.norm_sqr())).ln() + 2.0 * ln_cosh_half;
        if ln_k < 20.0 {
            let k = ln_k.exp();
            let d = (k + (k * (2.0 + k)).sqrt()).ln_1p();
            return Ok(d - horizon);
        }
        // acosh(C) = ln C + ln(1 + sqrt(1 - 1/C²)),  ln C = ln K + ln(1 + 1/K)
        let ln_c = ln_k + (-ln_k).exp().ln_1p();
        let tail = (1.0 + (1.0 - (-2.0 * ln_c).exp()).sqrt()).ln();
        Ok((ln_k - horizon) + (-ln_k).exp().ln_1p() + tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_matches_arccosh_formula() {
        // d((0,0), (tanh(1/2), 0)) = 1
        let h = Hyperbolic;
        let d = h.distance([0.0, 0.0], [0.5f64.tanh(), 0.0]).unwrap();
        assert!((d - 1.0).abs() < 1e-14, "{d}");

        let (p, q): ([f64; 2], [f64; 2]) = ([0.3, -0.2], [-0.5, 0.4]);
        let num = (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2);
        let den = (1.0 - p[0] * p[0] - p[1] * p[1]) * (1.0 - q[0] * q[0] - q[1] * q[1]);
        let expected = (1.0 + 2.0 * num / den).acosh();
        assert!((h.distance(p, q).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn boundary_points_rejected() {
        assert!(check_coords([1.0, 0.0]).is_err());
        assert!(check_coords([1.0 - 1e-13, 0.0]).is_err());
        assert!(check_coords([0.999, 0.0]).is_ok());
    }

    #[test]
    fn busemann_closed_form_values() {
        let xi = Complex64::new(1.0, 0.0);
        assert_eq!(busemann(xi, [0.0, 0.0]), 0.0);
        assert!((busemann(xi, [0.5, 0.0]) + 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn long_rays_are_unrepresentable_but_excess_is_finite() {
        let h = Hyperbolic;
        let u = Complex64::new(1.0, 0.0);
        assert!(matches!(h.toward_ideal([0.0, 0.0], u, 100.0), Err(Error::Unrepresentable(_))));
        let e = h.ray_excess([0.0, 0.0], u, [0.5, 0.0], 1e3).unwrap();
        assert!((e + 3f64.ln()).abs() < 1e-12, "{e}");
    }

    #[test]
    fn excess_branches_agree_with_direct_distance() {
        let h = Hyperbolic;
        let x = [0.1, 0.2];
        let u = h.unit_toward(x, [-0.3, 0.5]).unwrap();
        for t in [0.5, 3.0, 12.0, 18.0] {
            let p = h.along(x, u, t).unwrap();
            let z = [0.4, -0.3];
            let direct = h.distance(z, p).unwrap() - t;
            let stable = h.ray_excess(x, u, z, t).unwrap();
            assert!((direct - stable).abs() < 1e-7, "t={t}: {direct} vs {stable}");
        }
    }
}
