use super::Point;
use crate::error::{Error, Result};

/// `legs` copies of the half-line glued at a common point (the tripod when `legs == 3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spider {
    legs: usize,
}

/// `(leg, offset)` with the glue point normalized to `(0, 0.0)`.
type Coords = (usize, f64);

impl Spider {
    pub fn new(legs: usize) -> Result<Self> {
        if legs < 2 {
            return Err(Error::InvalidParameter("a spider needs at least 2 legs".into()));
        }
        Ok(Spider { legs })
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub(crate) fn check(&self, leg: usize, offset: f64) -> Result<()> {
        if !(offset >= 0.0) || !offset.is_finite() {
            return Err(Error::InvalidPoint(format!("spider offset {offset} must be finite and >= 0")));
        }
        if offset > 0.0 {
            self.check_leg(leg)?;
        }
        Ok(())
    }

    pub(crate) fn check_leg(&self, leg: usize) -> Result<()> {
        if leg >= self.legs {
            return Err(Error::InvalidPoint(format!("leg {leg} out of range for a {}-leg spider", self.legs)));
        }
        Ok(())
    }

    pub(crate) fn coords(&self, p: &Point) -> Result<Coords> {
        match *p {
            Point::Spider { leg, offset } => {
                self.check(leg, offset)?;
                Ok(if offset == 0.0 { (0, 0.0) } else { (leg, offset) })
            }
            _ => Err(Error::SpaceMismatch(format!("{} point given to spider space", p.kind()))),
        }
    }

    pub(crate) fn make_point(&self, (leg, offset): Coords) -> Point {
        if offset <= 0.0 {
            Point::Spider { leg: 0, offset: 0.0 }
        } else {
            Point::Spider { leg, offset }
        }
    }

    pub(crate) fn distance(&self, (xl, xo): Coords, (yl, yo): Coords) -> f64 {
        if xl == yl {
            (xo - yo).abs()
        } else {
            xo + yo
        }
    }

    /// Lowest-index leg other than `leg`, used to continue rays through the glue point.
    fn continuation(&self, leg: usize) -> usize {
        if leg == 0 {
            1
        } else {
            0
        }
    }

    /// Time-`t` point of the ray from `x` through `a`.
    pub(crate) fn toward(&self, x: Coords, a: Coords, t: f64) -> Coords {
        let (xl, xo) = x;
        let (al, ao) = a;
        if xo == 0.0 {
            return (al, t);
        }
        if ao == 0.0 || (al == xl && ao < xo) {
            // inward along the leg of x, then out along the lowest other leg
            return if t <= xo { (xl, xo - t) } else { (self.continuation(xl), t - xo) };
        }
        if al == xl {
            return (xl, xo + t);
        }
        if t <= xo {
            (xl, xo - t)
        } else {
            (al, t - xo)
        }
    }

    /// Time-`t` point of the ray from `x` toward the end of leg `leg`.
    pub(crate) fn toward_end(&self, x: Coords, leg: usize, t: f64) -> Coords {
        let (xl, xo) = x;
        if xo == 0.0 || xl == leg {
            (leg, xo + t)
        } else if t <= xo {
            (xl, xo - t)
        } else {
            (leg, t - xo)
        }
    }
}
