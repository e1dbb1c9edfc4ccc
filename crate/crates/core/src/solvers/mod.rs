//! Stochastic, incremental and proximal Busemann-subgradient methods.
//!
//! Every step follows the oracle's ray from the current iterate for time
//! `s·t_k` and projects onto the feasible set. A `[0]` subgradient leaves the
//! iterate unchanged.

mod median;
mod rng;
mod trace;

pub use median::{
    cyclic_proximal_median, incremental_median, median_setup, pmean_setup, stochastic_median, MedianProblem,
};
pub use rng::IndexRng;
pub use trace::{format_sig, RunTrace, TraceRow, CSV_HEADER};

use crate::error::{Error, Result};
use crate::oracles::ObjectiveSpec;
use crate::spaces::{ExtensionPolicy, Point, Space};

/// Step sizes `t_k`, indexed from `k = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum StepSchedule {
    /// `t_k = D / (L·m·√(k+1))`.
    Theory { d: f64, l: f64, m: usize },
    /// `t_k = c / (k+1)`.
    Harmonic { c: f64 },
    /// Fixed sequence; running past its end is an error.
    Explicit(Vec<f64>),
}

impl StepSchedule {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} {v} must be finite and > 0")))
            }
        };
        match self {
            StepSchedule::Theory { d, l, m } => {
                positive("D", *d)?;
                positive("L", *l)?;
                if *m == 0 {
                    return Err(Error::InvalidParameter("m must be >= 1".into()));
                }
            }
            StepSchedule::Harmonic { c } => positive("c", *c)?,
            StepSchedule::Explicit(ts) => {
                for t in ts {
                    positive("step", *t)?;
                }
            }
        }
        Ok(())
    }

    pub fn step(&self, k: usize) -> Result<f64> {
        match self {
            StepSchedule::Theory { d, l, m } => Ok(d / (l * *m as f64 * ((k + 1) as f64).sqrt())),
            StepSchedule::Harmonic { c } => Ok(c / (k + 1) as f64),
            StepSchedule::Explicit(ts) => ts.get(k).copied().ok_or_else(|| {
                Error::InvalidParameter(format!("explicit schedule has {} steps, step {k} requested", ts.len()))
            }),
        }
    }
}

/// The constraint set `C`.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Feasible {
    #[default]
    Whole,
    Ball {
        center: Point,
        radius: f64,
    },
}

impl Feasible {
    pub fn project(&self, space: &Space, y: &Point) -> Result<Point> {
        match self {
            Feasible::Whole => Ok(y.clone()),
            Feasible::Ball { center, radius } => space.project_ball(center, *radius, y),
        }
    }

    pub fn contains(&self, space: &Space, y: &Point, slack: f64) -> Result<bool> {
        match self {
            Feasible::Whole => Ok(true),
            Feasible::Ball { center, radius } => Ok(space.distance(center, y)? <= radius + slack),
        }
    }
}

/// Theoretical bounds on `f_best^k - f_opt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// `2(1+ln 3)·m·L·D/√(k+2)` for the stochastic method (in expectation).
    Stochastic { m: usize, l: f64, d: f64 },
    /// `2(1+ln 3)·m·L·D/√(k+2)` for the incremental method.
    Incremental { m: usize, l: f64, d: f64 },
    /// `4(1+ln 3)·m·f(x⁰)/√(k+2)` for the median algorithms.
    Median { m: usize, f0: f64 },
}

/// Value of `bound` at iteration `k >= 2`.
pub fn complexity_bound(bound: &Bound, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("complexity bounds hold for k >= 2, got {k}")));
    }
    let root = ((k + 2) as f64).sqrt();
    let c = 1.0 + 3f64.ln();
    Ok(match *bound {
        Bound::Stochastic { m, l, d } | Bound::Incremental { m, l, d } => 2.0 * c * m as f64 * l * d / root,
        Bound::Median { m, f0 } => 4.0 * c * m as f64 * f0 / root,
    })
}

/// Run length and trace annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub iterations: usize,
    pub f_opt: Option<f64>,
    pub bound: Option<Bound>,
    pub policy: ExtensionPolicy,
    pub record_iterates: bool,
}

impl RunOptions {
    pub fn new(iterations: usize) -> Self {
        RunOptions { iterations, f_opt: None, bound: None, policy: ExtensionPolicy::Error, record_iterates: false }
    }

    pub fn f_opt(mut self, f_opt: f64) -> Self {
        self.f_opt = Some(f_opt);
        self
    }

    pub fn bound(mut self, bound: Bound) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn policy(mut self, policy: ExtensionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn record_iterates(mut self) -> Self {
        self.record_iterates = true;
        self
    }
}

/// Accumulates trace rows as iterates are produced.
pub(crate) struct Recorder<'a> {
    opts: &'a RunOptions,
    rows: Vec<TraceRow>,
    best: Option<(f64, Point)>,
    iterates: Option<Vec<Point>>,
    x0: Point,
}

impl<'a> Recorder<'a> {
    pub(crate) fn start(opts: &'a RunOptions, x0: &Point, f0: f64) -> Self {
        Recorder {
            opts,
            rows: vec![TraceRow { k: 0, f: f0, f_best: None, gap: None, bound: None }],
            best: None,
            iterates: opts.record_iterates.then(|| vec![x0.clone()]),
            x0: x0.clone(),
        }
    }

    pub(crate) fn push(&mut self, k: usize, x: &Point, f: f64) -> Result<()> {
        if self.best.as_ref().is_none_or(|(b, _)| f < *b) {
            self.best = Some((f, x.clone()));
        }
        let f_best = self.best.as_ref().map(|(b, _)| *b).expect("set above");
        let bound = match &self.opts.bound {
            Some(b) if k >= 2 => Some(complexity_bound(b, k)?),
            _ => None,
        };
        self.rows.push(TraceRow { k, f, f_best: Some(f_best), gap: self.opts.f_opt.map(|o| f_best - o), bound });
        if let Some(its) = &mut self.iterates {
            its.push(x.clone());
        }
        Ok(())
    }

    pub(crate) fn finish(self, final_point: Point) -> RunTrace {
        let best_point = self.best.map(|(_, p)| p).unwrap_or(self.x0);
        RunTrace { rows: self.rows, final_point, best_point, iterates: self.iterates }
    }
}

pub(crate) fn check_start(
    obj: &ObjectiveSpec,
    feasible: &Feasible,
    x0: &Point,
    schedule: &StepSchedule,
) -> Result<f64> {
    schedule.validate()?;
    obj.space().validate(x0)?;
    if !feasible.contains(obj.space(), x0, 1e-9)? {
        return Err(Error::InvalidPoint("start point lies outside the feasible set".into()));
    }
    obj.eval(x0)
}

/// One projected subgradient step on component `i` with step size `t`.
pub(crate) fn component_step(
    obj: &ObjectiveSpec,
    feasible: &Feasible,
    x: &Point,
    i: usize,
    t: f64,
    policy: ExtensionPolicy,
) -> Result<Point> {
    let g = obj.subgrad(i, x)?;
    if g.is_zero() {
        return Ok(x.clone());
    }
    let y = obj.space().ray_point(x, &g.ray, g.speed * t, policy)?;
    feasible.project(obj.space(), &y)
}

/// Stochastic Busemann subgradient method: one uniformly drawn component per iteration.
pub fn stochastic_subgradient(
    obj: &ObjectiveSpec,
    feasible: &Feasible,
    x0: &Point,
    schedule: &StepSchedule,
    rng: &mut IndexRng,
    opts: &RunOptions,
) -> Result<RunTrace> {
    let f0 = check_start(obj, feasible, x0, schedule)?;
    let mut rec = Recorder::start(opts, x0, f0);
    let mut x = x0.clone();
    for k in 0..opts.iterations {
        let i = rng.index(obj.len());
        x = schedule
            .step(k)
            .and_then(|t| component_step(obj, feasible, &x, i, t, opts.policy))
            .map_err(|e| e.at_iteration(k))?;
        let f = obj.eval(&x).map_err(|e| e.at_iteration(k))?;
        rec.push(k + 1, &x, f)?;
    }
    Ok(rec.finish(x))
}

/// Incremental Busemann subgradient method: a full sweep over the components per iteration.
pub fn incremental_subgradient(
    obj: &ObjectiveSpec,
    feasible: &Feasible,
    x0: &Point,
    schedule: &StepSchedule,
    opts: &RunOptions,
) -> Result<RunTrace> {
    let f0 = check_start(obj, feasible, x0, schedule)?;
    let mut rec = Recorder::start(opts, x0, f0);
    let mut x = x0.clone();
    for k in 0..opts.iterations {
        let sweep = |mut x: Point| -> Result<Point> {
            let t = schedule.step(k)?;
            for i in 0..obj.len() {
                x = component_step(obj, feasible, &x, i, t, opts.policy)?;
            }
            Ok(x)
        };
        x = sweep(x).map_err(|e| e.at_iteration(k))?;
        let f = obj.eval(&x).map_err(|e| e.at_iteration(k))?;
        rec.push(k + 1, &x, f)?;
    }
    Ok(rec.finish(x))
}
