use crate::error::{Error, Result};

/// Euclidean space ℝⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Euclidean {
    dim: usize,
}

impl Euclidean {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("euclidean dimension must be >= 1".into()));
        }
        Ok(Euclidean { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::SpaceMismatch(format!("point of dimension {} given to R^{}", x.len(), self.dim)));
        }
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint("non-finite euclidean coordinate".into()));
        }
        Ok(())
    }

    pub(crate) fn check_direction(&self, xi: &[f64]) -> Result<()> {
        self.check(xi)?;
        let n = norm(xi);
        if (n - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!("direction has norm {n}, expected 1")));
        }
        Ok(())
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Point at distance `t` from `a` on the line through `b` (past `b` when `t > |b - a|`).
pub(crate) fn toward(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    let d = distance(a, b);
    let s = t / d;
    a.iter().zip(b).map(|(p, q)| p + s * (q - p)).collect()
}
