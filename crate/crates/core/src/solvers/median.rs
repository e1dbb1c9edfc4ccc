//! Weighted medians and p-means `Σ wᵢ d(x, aᵢ)^p`.

use log::warn;

use super::{
    check_start, incremental_subgradient, stochastic_subgradient, Bound, Feasible, IndexRng, Recorder, RunOptions,
    RunTrace, StepSchedule,
};
use crate::error::{Error, Result};
use crate::oracles::{ComponentSpec, ObjectiveSpec};
use crate::spaces::{Point, Space};

/// A median (or p-mean) instance with its feasible ball.
///
/// With `w*` the largest weight and `a*` its anchor, every minimizer lies in
/// `B(a*, (f(x⁰)/w*)^(1/p))` since `f(x) >= w*·d(x, a*)^p`.
#[derive(Debug, Clone, PartialEq)]
pub struct MedianProblem {
    pub objective: ObjectiveSpec,
    pub feasible: Feasible,
    pub anchors: Vec<Point>,
    /// Weights normalized to sum to one.
    pub weights: Vec<f64>,
    pub p: f64,
    /// `f(x⁰)`.
    pub f0: f64,
    /// `w* = maxᵢ wᵢ`.
    pub w_star: f64,
    /// Index of `a*` (lowest index among the heaviest anchors).
    pub center: usize,
}

impl MedianProblem {
    /// Diameter `D` of the feasible ball.
    pub fn diameter(&self) -> f64 {
        match &self.feasible {
            Feasible::Ball { radius, .. } => 2.0 * radius,
            Feasible::Whole => f64::INFINITY,
        }
    }

    /// The default schedule: component `i` moves `wᵢ·D/(m·√(k+1))` at iteration `k`.
    pub fn theory_schedule(&self) -> StepSchedule {
        StepSchedule::Theory { d: self.diameter(), l: 1.0, m: self.anchors.len() }
    }

    /// The median complexity bound `4(1+ln 3)·m·f(x⁰)/√(k+2)`.
    pub fn bound(&self) -> Bound {
        Bound::Median { m: self.anchors.len(), f0: self.f0 }
    }
}

/// Sets up the weighted median `Σ wᵢ d(x, aᵢ)` with its feasible ball around `a*`.
pub fn median_setup(space: &Space, anchors: &[Point], weights: &[f64], x0: &Point) -> Result<MedianProblem> {
    pmean_setup(space, anchors, weights, 1.0, x0)
}

/// Sets up `Σ wᵢ d(x, aᵢ)^p`; for `p > 1` the Lipschitz constants are taken over the feasible ball.
pub fn pmean_setup(space: &Space, anchors: &[Point], weights: &[f64], p: f64, x0: &Point) -> Result<MedianProblem> {
    if anchors.is_empty() {
        return Err(Error::InvalidParameter("at least one anchor is required".into()));
    }
    if weights.len() != anchors.len() {
        return Err(Error::InvalidParameter(format!("{} weights for {} anchors", weights.len(), anchors.len())));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::InvalidParameter(format!("weight {w} must be finite and >= 0")));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidParameter("weights sum to zero".into()));
    }
    if (total - 1.0).abs() > 1e-12 {
        warn!("weights sum to {total}; normalizing");
    }
    let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mut center = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > weights[center] {
            center = i;
        }
    }
    let w_star = weights[center];
    let components: Vec<ComponentSpec> = anchors
        .iter()
        .zip(&weights)
        .map(|(a, &w)| ComponentSpec::DistPower { anchor: a.clone(), weight: w, p })
        .collect();
    let f0 = {
        let mut f = 0.0;
        for c in &components {
            f += crate::oracles::eval_component(space, c, x0)?;
        }
        f
    };
    let radius = (f0 / w_star).powf(1.0 / p);
    let a_star = anchors[center].clone();
    let objective = if p == 1.0 {
        ObjectiveSpec::new(space.clone(), components)?
    } else {
        ObjectiveSpec::on_ball(space.clone(), components, &a_star, radius)?
    };
    Ok(MedianProblem {
        objective,
        feasible: Feasible::Ball { center: a_star, radius },
        anchors: anchors.to_vec(),
        weights,
        p,
        f0,
        w_star,
        center,
    })
}

/// Annotates `opts` with the median bound when the theory schedule is in use.
fn median_options(problem: &MedianProblem, schedule: &Option<StepSchedule>, opts: &RunOptions) -> RunOptions {
    let mut opts = opts.clone();
    if schedule.is_none() && opts.bound.is_none() && problem.p == 1.0 {
        opts.bound = Some(problem.bound());
    }
    opts
}

/// Stochastic median algorithm: a random anchor per iteration, projected onto the feasible ball.
///
/// `schedule` defaults to [`MedianProblem::theory_schedule`], which also attaches the median bound.
pub fn stochastic_median(
    problem: &MedianProblem,
    x0: &Point,
    schedule: Option<StepSchedule>,
    rng: &mut IndexRng,
    opts: &RunOptions,
) -> Result<RunTrace> {
    let opts = median_options(problem, &schedule, opts);
    let schedule = schedule.unwrap_or_else(|| problem.theory_schedule());
    stochastic_subgradient(&problem.objective, &problem.feasible, x0, &schedule, rng, &opts)
}

/// Incremental median algorithm: a sweep over all anchors per iteration, projected onto the feasible ball.
///
/// `schedule` defaults to [`MedianProblem::theory_schedule`], which also attaches the median bound.
pub fn incremental_median(
    problem: &MedianProblem,
    x0: &Point,
    schedule: Option<StepSchedule>,
    opts: &RunOptions,
) -> Result<RunTrace> {
    let opts = median_options(problem, &schedule, opts);
    let schedule = schedule.unwrap_or_else(|| problem.theory_schedule());
    incremental_subgradient(&problem.objective, &problem.feasible, x0, &schedule, &opts)
}

/// Cyclic proximal median algorithm: each inner step moves toward `aᵢ` by
/// `min(d(x, aᵢ), wᵢ·t_k)` and so never passes the anchor. No projection is applied.
pub fn cyclic_proximal_median(
    problem: &MedianProblem,
    x0: &Point,
    schedule: &StepSchedule,
    opts: &RunOptions,
) -> Result<RunTrace> {
    let obj = &problem.objective;
    let space = obj.space();
    let f0 = check_start(obj, &Feasible::Whole, x0, schedule)?;
    let mut rec = Recorder::start(opts, x0, f0);
    let mut x = x0.clone();
    for k in 0..opts.iterations {
        let sweep = |mut x: Point| -> Result<Point> {
            let t = schedule.step(k)?;
            for (a, &w) in problem.anchors.iter().zip(&problem.weights) {
                let d = space.distance(&x, a)?;
                x = space.geodesic_point(&x, a, d.min(w * t))?;
            }
            Ok(x)
        };
        x = sweep(x).map_err(|e| e.at_iteration(k))?;
        let f = obj.eval(&x).map_err(|e| e.at_iteration(k))?;
        rec.push(k + 1, &x, f)?;
    }
    Ok(rec.finish(x))
}
