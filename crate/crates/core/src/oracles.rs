//! Busemann-subgradient oracles for sums of distance-type functions.

use crate::error::{Error, Result};
use crate::spaces::{Direction, Point, RayDescriptor, Space};

/// Distances at or below this count as coincident points (the oracle returns `[0]`).
pub const COINCIDENCE: f64 = 1e-12;

/// A Busemann subgradient `[ξ, s]`: the ray to follow and its speed.
#[derive(Debug, Clone, PartialEq)]
pub struct BusemannSubgradient {
    pub ray: RayDescriptor,
    pub speed: f64,
}

impl BusemannSubgradient {
    /// The class `[0]`, certifying a minimizer.
    pub fn zero() -> Self {
        BusemannSubgradient { ray: RayDescriptor::Zero, speed: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.speed == 0.0 || matches!(self.ray, RayDescriptor::Zero)
    }
}

/// One summand of an objective.
#[derive(Debug, Clone, PartialEq)]
pub enum ComponentSpec {
    /// `σ·d(x, a)^p` with `p >= 1`.
    DistPower { anchor: Point, weight: f64, p: f64 },
    /// Smoothed `σ·d(x, a)`: `σ d²/(2δ)` for `d <= δ`, `σ (d - δ/2)` beyond.
    Huber { anchor: Point, weight: f64, delta: f64 },
    /// `max(0, d(x, a) - ρ)`, the distance to the closed ball `B_ρ(a)`.
    DistBall { anchor: Point, radius: f64 },
    /// `max(0, b_ξ(x))`, the distance to the horoball `{b_ξ <= 0}`.
    DistHoroball { direction: Direction },
    /// `max_i d(x, aᵢ)`.
    MaxOfDistances { anchors: Vec<Point> },
}

impl ComponentSpec {
    /// The median summand `w·d(x, a)`.
    pub fn weighted_distance(anchor: Point, weight: f64) -> Self {
        ComponentSpec::DistPower { anchor, weight, p: 1.0 }
    }

    pub fn validate(&self, space: &Space) -> Result<()> {
        let nonneg = |name: &str, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} {v} must be finite and >= 0")))
            }
        };
        match self {
            ComponentSpec::DistPower { anchor, weight, p } => {
                space.validate(anchor)?;
                nonneg("weight", *weight)?;
                if !(*p >= 1.0) || !p.is_finite() {
                    return Err(Error::InvalidParameter(format!("exponent {p} must be finite and >= 1")));
                }
            }
            ComponentSpec::Huber { anchor, weight, delta } => {
                space.validate(anchor)?;
                nonneg("weight", *weight)?;
                if !(*delta > 0.0) || !delta.is_finite() {
                    return Err(Error::InvalidParameter(format!("huber threshold {delta} must be finite and > 0")));
                }
            }
            ComponentSpec::DistBall { anchor, radius } => {
                space.validate(anchor)?;
                nonneg("radius", *radius)?;
            }
            ComponentSpec::DistHoroball { direction } => {
                if !space.supports_directions() {
                    return Err(Error::Unsupported("horoballs need a space with boundary directions"));
                }
                space.busemann_closed_form(direction, &space.basepoint()?)?;
            }
            ComponentSpec::MaxOfDistances { anchors } => {
                if anchors.is_empty() {
                    return Err(Error::InvalidParameter("max of distances needs at least one anchor".into()));
                }
                for a in anchors {
                    space.validate(a)?;
                }
            }
        }
        Ok(())
    }

    /// Global Lipschitz constant, when one exists (`None` for `p > 1`).
    pub fn lipschitz(&self) -> Option<f64> {
        match self {
            ComponentSpec::DistPower { weight, p, .. } if *p == 1.0 => Some(*weight),
            ComponentSpec::DistPower { .. } => None,
            ComponentSpec::Huber { weight, .. } => Some(*weight),
            _ => Some(1.0),
        }
    }

    /// Lipschitz constant over the ball `B_radius(center)`.
    pub fn lipschitz_on_ball(&self, space: &Space, center: &Point, radius: f64) -> Result<f64> {
        match self {
            ComponentSpec::DistPower { anchor, weight, p } if *p > 1.0 => {
                let reach = radius + space.distance(center, anchor)?;
                Ok(p * weight * reach.powf(p - 1.0))
            }
            _ => Ok(self.lipschitz().expect("global constant")),
        }
    }
}

/// `[0]` at `x = a`, otherwise the ray from `x` through `a` at unit speed.
pub fn subgrad_distance(space: &Space, a: &Point, x: &Point) -> Result<BusemannSubgradient> {
    let d = space.distance(x, a)?;
    Ok(toward(a, d, 1.0))
}

fn toward(a: &Point, d: f64, speed: f64) -> BusemannSubgradient {
    if d <= COINCIDENCE || speed == 0.0 {
        BusemannSubgradient::zero()
    } else {
        BusemannSubgradient { ray: RayDescriptor::TowardPoint(a.clone()), speed }
    }
}

/// A Busemann subgradient of component `c` at `x`.
pub fn subgrad_component(space: &Space, c: &ComponentSpec, x: &Point) -> Result<BusemannSubgradient> {
    match c {
        ComponentSpec::DistPower { anchor, weight, p } => {
            let d = space.distance(x, anchor)?;
            Ok(toward(anchor, d, p * weight * d.powf(p - 1.0)))
        }
        ComponentSpec::Huber { anchor, weight, delta } => {
            let d = space.distance(x, anchor)?;
            Ok(toward(anchor, d, weight * d.min(*delta) / delta))
        }
        ComponentSpec::DistBall { anchor, radius } => {
            let d = space.distance(x, anchor)?;
            Ok(if d > *radius { toward(anchor, d, 1.0) } else { BusemannSubgradient::zero() })
        }
        ComponentSpec::DistHoroball { direction } => {
            if !space.supports_directions() {
                return Err(Error::Unsupported("horoballs need a space with boundary directions"));
            }
            Ok(if space.busemann_closed_form(direction, x)? > 0.0 {
                BusemannSubgradient { ray: RayDescriptor::Direction(direction.clone()), speed: 1.0 }
            } else {
                BusemannSubgradient::zero()
            })
        }
        ComponentSpec::MaxOfDistances { anchors } => {
            let (i, _) = farthest(space, anchors, x)?;
            subgrad_distance(space, &anchors[i], x)
        }
    }
}

/// Index and distance of the farthest anchor, lowest index on ties.
fn farthest(space: &Space, anchors: &[Point], x: &Point) -> Result<(usize, f64)> {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, a) in anchors.iter().enumerate() {
        let d = space.distance(x, a)?;
        if d > best.1 {
            best = (i, d);
        }
    }
    if anchors.is_empty() {
        return Err(Error::InvalidParameter("max of distances needs at least one anchor".into()));
    }
    Ok(best)
}

pub fn eval_component(space: &Space, c: &ComponentSpec, x: &Point) -> Result<f64> {
    match c {
        ComponentSpec::DistPower { anchor, weight, p } => {
            let d = space.distance(x, anchor)?;
            Ok(weight * if *p == 1.0 { d } else { d.powf(*p) })
        }
        ComponentSpec::Huber { anchor, weight, delta } => {
            let d = space.distance(x, anchor)?;
            Ok(weight * if d <= *delta { d * d / (2.0 * delta) } else { d - delta / 2.0 })
        }
        ComponentSpec::DistBall { anchor, radius } => Ok((space.distance(x, anchor)? - radius).max(0.0)),
        ComponentSpec::DistHoroball { direction } => Ok(space.busemann_closed_form(direction, x)?.max(0.0)),
        ComponentSpec::MaxOfDistances { anchors } => Ok(farthest(space, anchors, x)?.1),
    }
}

/// `f = Σ fᵢ` over a space, with a Lipschitz bound per component.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    space: Space,
    components: Vec<ComponentSpec>,
    lipschitz: Vec<f64>,
}

impl ObjectiveSpec {
    /// Derives Lipschitz constants; fails for `p > 1` components, which need [`ObjectiveSpec::on_ball`].
    pub fn new(space: Space, components: Vec<ComponentSpec>) -> Result<Self> {
        let lipschitz = components
            .iter()
            .map(|c| {
                c.lipschitz().ok_or_else(|| {
                    Error::InvalidParameter("p > 1 has no global Lipschitz constant; give a feasible ball".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_lipschitz(space, components, lipschitz)
    }

    /// Derives Lipschitz constants valid on `B_radius(center)`.
    pub fn on_ball(space: Space, components: Vec<ComponentSpec>, center: &Point, radius: f64) -> Result<Self> {
        let lipschitz =
            components.iter().map(|c| c.lipschitz_on_ball(&space, center, radius)).collect::<Result<Vec<_>>>()?;
        Self::with_lipschitz(space, components, lipschitz)
    }

    pub fn with_lipschitz(space: Space, components: Vec<ComponentSpec>, lipschitz: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter("an objective needs at least one component".into()));
        }
        if lipschitz.len() != components.len() {
            return Err(Error::InvalidParameter(format!(
                "{} Lipschitz constants for {} components",
                lipschitz.len(),
                components.len()
            )));
        }
        if let Some(l) = lipschitz.iter().find(|l| !(**l >= 0.0) || !l.is_finite()) {
            return Err(Error::InvalidParameter(format!("Lipschitz constant {l} must be finite and >= 0")));
        }
        for c in &components {
            c.validate(&space)?;
        }
        Ok(ObjectiveSpec { space, components, lipschitz })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.components
    }

    /// Number of components `m`.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn lipschitz(&self) -> &[f64] {
        &self.lipschitz
    }

    /// `L = maxᵢ Lᵢ`.
    pub fn max_lipschitz(&self) -> f64 {
        self.lipschitz.iter().copied().fold(0.0, f64::max)
    }

    pub fn eval(&self, x: &Point) -> Result<f64> {
        eval_objective(self, x)
    }

    pub fn eval_component(&self, i: usize, x: &Point) -> Result<f64> {
        eval_component(&self.space, self.component(i)?, x)
    }

    pub fn subgrad(&self, i: usize, x: &Point) -> Result<BusemannSubgradient> {
        subgrad_component(&self.space, self.component(i)?, x)
    }

    fn component(&self, i: usize) -> Result<&ComponentSpec> {
        self.components
            .get(i)
            .ok_or_else(|| Error::InvalidParameter(format!("component {i} out of range for m = {}", self.len())))
    }
}

/// Ordered sum of the component values.
pub fn eval_objective(obj: &ObjectiveSpec, x: &Point) -> Result<f64> {
    let mut total = 0.0;
    for c in &obj.components {
        total += eval_component(&obj.space, c, x)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2() -> Space {
        Space::euclidean(2).unwrap()
    }

    #[test]
    fn distance_subgradients() {
        let s = e2();
        let a = Point::euclidean([0.0, 0.0]);
        assert!(subgrad_distance(&s, &a, &a).unwrap().is_zero());
        let g = subgrad_distance(&s, &a, &Point::euclidean([1.0, 0.0])).unwrap();
        assert_eq!(g, BusemannSubgradient { ray: RayDescriptor::TowardPoint(a), speed: 1.0 });

        let spider = Space::spider(3).unwrap();
        let apex = spider.basepoint().unwrap();
        let g = subgrad_distance(&spider, &apex, &Point::spider(2, 3.0).unwrap()).unwrap();
        assert_eq!(g.ray, RayDescriptor::TowardPoint(apex));
        assert_eq!(g.speed, 1.0);
    }

    #[test]
    fn reparametrized_distance_speed() {
        let s = e2();
        let c = ComponentSpec::DistPower { anchor: Point::euclidean([0.0, 0.0]), weight: 0.5, p: 2.0 };
        let g = subgrad_component(&s, &c, &Point::euclidean([3.0, 0.0])).unwrap();
        assert_eq!(g.speed, 3.0);
        assert_eq!(eval_component(&s, &c, &Point::euclidean([3.0, 0.0])).unwrap(), 4.5);
    }

    #[test]
    fn ball_and_max_components() {
        let s = e2();
        let ball = ComponentSpec::DistBall { anchor: Point::euclidean([0.0, 0.0]), radius: 1.0 };
        assert!(subgrad_component(&s, &ball, &Point::euclidean([0.5, 0.0])).unwrap().is_zero());
        assert_eq!(eval_component(&s, &ball, &Point::euclidean([3.0, 0.0])).unwrap(), 2.0);

        let anchors = vec![Point::euclidean([1.0, 0.0]), Point::euclidean([-4.0, 0.0]), Point::euclidean([0.0, 2.0])];
        let max = ComponentSpec::MaxOfDistances { anchors: anchors.clone() };
        let x = Point::euclidean([0.0, 0.0]);
        let g = subgrad_component(&s, &max, &x).unwrap();
        assert_eq!(g, subgrad_distance(&s, &anchors[1], &x).unwrap());
        assert_eq!(eval_component(&s, &max, &x).unwrap(), 4.0);
    }

    #[test]
    fn max_ties_pick_lowest_index() {
        let s = e2();
        let anchors = vec![Point::euclidean([1.0, 0.0]), Point::euclidean([-1.0, 0.0])];
        let g = subgrad_component(
            &s,
            &ComponentSpec::MaxOfDistances { anchors: anchors.clone() },
            &Point::euclidean([0.0, 0.0]),
        )
        .unwrap();
        assert_eq!(g.ray, RayDescriptor::TowardPoint(anchors[0].clone()));
    }

    #[test]
    fn huber_is_continuous_and_consistent() {
        let s = e2();
        let (sigma, delta) = (2.0, 0.5);
        let c = ComponentSpec::Huber { anchor: Point::euclidean([0.0, 0.0]), weight: sigma, delta };
        let at = |d: f64| eval_component(&s, &c, &Point::euclidean([d, 0.0])).unwrap();
        assert!((at(delta) - sigma * delta / 2.0).abs() < 1e-15);
        // speed is the derivative of the value in d
        for d in [0.1, 0.3, 0.9, 2.0] {
            let h = 1e-6;
            let slope = (at(d + h) - at(d - h)) / (2.0 * h);
            let g = subgrad_component(&s, &c, &Point::euclidean([d, 0.0])).unwrap();
            assert!((slope - g.speed).abs() < 1e-6, "d={d}");
            assert!(g.speed <= c.lipschitz().unwrap());
        }
    }

    #[test]
    fn horoballs() {
        let s = e2();
        let c = ComponentSpec::DistHoroball { direction: Direction::unit([1.0, 0.0]).unwrap() };
        // b_ξ(x) = -x₁ relative to the origin
        assert_eq!(eval_component(&s, &c, &Point::euclidean([-2.0, 5.0])).unwrap(), 2.0);
        assert!(subgrad_component(&s, &c, &Point::euclidean([1.0, 0.0])).unwrap().is_zero());
        let g = subgrad_component(&s, &c, &Point::euclidean([-1.0, 0.0])).unwrap();
        assert!(matches!(g.ray, RayDescriptor::Direction(_)));

        let cone = Space::cone(5).unwrap();
        assert!(matches!(subgrad_component(&cone, &c, &cone.basepoint().unwrap()), Err(Error::Unsupported(_))));
        assert!(c.validate(&cone).is_err());
    }

    #[test]
    fn objectives() {
        let s = e2();
        let comps = vec![
            ComponentSpec::weighted_distance(Point::euclidean([0.0, 0.0]), 0.5),
            ComponentSpec::weighted_distance(Point::euclidean([3.0, 4.0]), 0.5),
        ];
        let obj = ObjectiveSpec::new(s.clone(), comps).unwrap();
        assert_eq!(obj.len(), 2);
        assert_eq!(obj.eval(&Point::euclidean([0.0, 0.0])).unwrap(), 2.5);
        assert_eq!(obj.max_lipschitz(), 0.5);

        let pow = vec![ComponentSpec::DistPower { anchor: Point::euclidean([1.0, 0.0]), weight: 1.0, p: 2.0 }];
        assert!(ObjectiveSpec::new(s.clone(), pow.clone()).is_err());
        let on_ball = ObjectiveSpec::on_ball(s.clone(), pow, &Point::euclidean([0.0, 0.0]), 2.0).unwrap();
        assert_eq!(on_ball.lipschitz(), &[6.0]);
        assert!(ObjectiveSpec::new(s, vec![]).is_err());
    }
}
