//! Parsing of space, point, schedule and list arguments.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use hadopt_core::experiments::{preset, Preset};
use hadopt_core::solvers::StepSchedule;
use hadopt_core::treespace::{parse_newick, parse_newick_list, PhyloTree};
use hadopt_core::{Point, Space, TreeSpace};

/// Malformed user input; reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(InputError(msg.into()).into())
}

fn number(s: &str, what: &str) -> Result<f64> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => input(format!("{what}: `{s}` is not a finite number")),
    }
}

fn index(s: &str, what: &str) -> Result<usize> {
    s.trim().parse::<usize>().or_else(|_| input(format!("{what}: `{s}` is not a nonnegative integer")))
}

/// `euclidean:N`, `hyperbolic`, `spider:K`, `cone:S` or `tree`.
pub fn parse_space(s: &str) -> Result<Space> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    let need = |what: &str| -> Result<usize> {
        match arg {
            Some(a) => index(a, what),
            None => input(format!("space `{name}` needs a parameter, e.g. `{name}:3`")),
        }
    };
    let space = match name {
        "euclidean" => Space::euclidean(need("dimension")?),
        "hyperbolic" => Ok(Space::hyperbolic()),
        "spider" => Space::spider(need("legs")?),
        "cone" => Space::cone(need("sectors")?),
        "tree" => Ok(Space::tree(TreeSpace::default())),
        _ => return input(format!("unknown space `{s}` (euclidean:N, hyperbolic, spider:K, cone:S, tree)")),
    };
    space.map_err(|e| InputError(e.to_string()).into())
}

/// A point in the syntax of its space: `x1,x2,...` (euclidean, hyperbolic),
/// `leg:offset` (spider), `sector:u,v` (cone) or a Newick string (tree).
pub fn parse_point(space: &Space, s: &str) -> Result<Point> {
    let s = s.trim();
    let p = match space {
        Space::Euclidean(_) => {
            let coords = s.split(',').map(|c| number(c, "coordinate")).collect::<Result<Vec<_>>>()?;
            Ok(Point::euclidean(coords))
        }
        Space::Hyperbolic(_) => {
            let c = s.split(',').map(|c| number(c, "coordinate")).collect::<Result<Vec<_>>>()?;
            match c[..] {
                [x, y] => Point::hyperbolic(x, y),
                _ => return input(format!("hyperbolic point `{s}` needs two coordinates")),
            }
        }
        Space::Spider(_) => match s.split_once(':') {
            Some((leg, off)) => Point::spider(index(leg, "leg")?, number(off, "offset")?),
            None => return input(format!("spider point `{s}` must be `leg:offset`")),
        },
        Space::Cone(_) => {
            let Some((sector, uv)) = s.split_once(':') else {
                return input(format!("cone point `{s}` must be `sector:u,v`"));
            };
            let Some((u, v)) = uv.split_once(',') else {
                return input(format!("cone point `{s}` must be `sector:u,v`"));
            };
            Point::cone(index(sector, "sector")?, number(u, "u")?, number(v, "v")?)
        }
        Space::Tree(_) => parse_newick(s).map(Point::from),
    };
    let p = p.map_err(|e| InputError(format!("point `{s}`: {e}")))?;
    space.validate(&p).map_err(|e| InputError(format!("point `{s}`: {e}")))?;
    Ok(p)
}

/// Semicolon-separated points.
pub fn parse_points(space: &Space, s: &str) -> Result<Vec<Point>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_point(space, p)).collect()
}

pub fn parse_weights(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|w| number(w, "weight")).collect()
}

/// Reads all trees of a Newick file; syntax errors carry the file offset.
pub fn read_trees(path: &Path) -> Result<Vec<PhyloTree>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_newick_list(&text).with_context(|| format!("{}", path.display()))
}

/// `theory`, `harmonic[:C]` or `explicit:FILE` (numbers separated by whitespace or commas).
#[derive(Debug, Clone, PartialEq)]
pub enum StepChoice {
    Theory,
    Given(StepSchedule),
}

pub fn parse_stepsize(s: &str) -> Result<StepChoice> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    match (name, arg) {
        ("theory", None) => Ok(StepChoice::Theory),
        ("harmonic", None) => Ok(StepChoice::Given(StepSchedule::Harmonic { c: 1.0 })),
        ("harmonic", Some(c)) => {
            let c = number(c, "harmonic constant")?;
            if c <= 0.0 {
                return input("harmonic constant must be > 0");
            }
            Ok(StepChoice::Given(StepSchedule::Harmonic { c }))
        }
        ("explicit", Some(file)) => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
            let steps = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| number(t, file))
                .collect::<Result<Vec<_>>>()?;
            let sched = StepSchedule::Explicit(steps);
            sched.validate().map_err(|e| InputError(format!("{file}: {e}")))?;
            Ok(StepChoice::Given(sched))
        }
        _ => input(format!("unknown step size `{s}` (theory, harmonic[:C], explicit:FILE)")),
    }
}

pub fn lookup_preset(name: &str) -> Result<Preset> {
    match preset(name) {
        Some(p) => Ok(p),
        None => input(format!("unknown preset `{name}` (available: {})", hadopt_core::experiments::PRESETS.join(", "))),
    }
}
