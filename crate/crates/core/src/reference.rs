//! High-accuracy reference optima for checking solver gaps.

use crate::error::{Error, Result};

/// Minimizes a unimodal `f` on `[lo, hi]` by golden-section search; returns `(x, f(x))`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let x = (lo + hi) / 2.0;
    (x, f(x))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// `Σ wᵢ ‖x - aᵢ‖^p`.
pub fn euclidean_pmean_value(anchors: &[Vec<f64>], weights: &[f64], p: f64, x: &[f64]) -> f64 {
    anchors.iter().zip(weights).map(|(a, w)| w * dist(x, a).powf(p)).sum()
}

/// Minimizer of `Σ wᵢ ‖x - aᵢ‖^p` in `ℝⁿ` for `1 <= p <= 2`; returns `(x, value)`.
///
/// `p = 1` uses Weiszfeld's iteration with the Vardi–Zhang correction at
/// anchors, `p = 2` the weighted mean, and `1 < p < 2` iteratively reweighted
/// least squares.
pub fn euclidean_pmean(anchors: &[Vec<f64>], weights: &[f64], p: f64) -> Result<(Vec<f64>, f64)> {
    if anchors.is_empty() || anchors.len() != weights.len() {
        return Err(Error::InvalidParameter("need one weight per anchor and at least one anchor".into()));
    }
    if !(1.0..=2.0).contains(&p) {
        return Err(Error::Unsupported("reference p-means are available for 1 <= p <= 2"));
    }
    let dim = anchors[0].len();
    if anchors.iter().any(|a| a.len() != dim) {
        return Err(Error::InvalidParameter("anchors have different dimensions".into()));
    }
    let total: f64 = weights.iter().sum();
    let mean: Vec<f64> =
        (0..dim).map(|j| anchors.iter().zip(weights).map(|(a, w)| w * a[j]).sum::<f64>() / total).collect();
    if p == 2.0 || anchors.len() == 1 {
        let x = if anchors.len() == 1 { anchors[0].clone() } else { mean };
        let v = euclidean_pmean_value(anchors, weights, p, &x);
        return Ok((x, v));
    }

    let mut x = mean;
    for _ in 0..1_000_000 {
        let next = if p == 1.0 { weiszfeld_step(anchors, weights, &x) } else { irls_step(anchors, weights, p, &x) };
        let moved = dist(&next, &x);
        x = next;
        if moved <= 1e-15 * (1.0 + x.iter().map(|c| c.abs()).fold(0.0, f64::max)) {
            break;
        }
    }
    let v = euclidean_pmean_value(anchors, weights, p, &x);
    Ok((x, v))
}

fn weiszfeld_step(anchors: &[Vec<f64>], weights: &[f64], x: &[f64]) -> Vec<f64> {
    let dim = x.len();
    let mut num = vec![0.0; dim];
    let mut den = 0.0;
    let mut at_anchor = None;
    for (i, (a, &w)) in anchors.iter().zip(weights).enumerate() {
        let d = dist(x, a);
        if d == 0.0 {
            at_anchor = Some(i);
            continue;
        }
        for j in 0..dim {
            num[j] += w * a[j] / d;
        }
        den += w / d;
    }
    if den == 0.0 {
        return x.to_vec();
    }
    let t: Vec<f64> = num.iter().map(|n| n / den).collect();
    let Some(k) = at_anchor else { return t };
    // Vardi–Zhang: at an anchor, move only if the pull of the others exceeds its weight
    let r: Vec<f64> = (0..dim).map(|j| den * (t[j] - x[j])).collect();
    let rn = r.iter().map(|c| c * c).sum::<f64>().sqrt();
    let wk = weights[k];
    if rn <= wk {
        return x.to_vec();
    }
    let lambda = (1.0 - wk / rn).max(0.0);
    (0..dim).map(|j| lambda * t[j] + (1.0 - lambda) * x[j]).collect()
}

fn irls_step(anchors: &[Vec<f64>], weights: &[f64], p: f64, x: &[f64]) -> Vec<f64> {
    let dim = x.len();
    let mut num = vec![0.0; dim];
    let mut den = 0.0;
    for (a, &w) in anchors.iter().zip(weights) {
        let d = dist(x, a).max(1e-300);
        let c = w * d.powf(p - 2.0);
        for j in 0..dim {
            num[j] += c * a[j];
        }
        den += c;
    }
    num.iter().map(|n| n / den).collect()
}

/// Optimal height `y*` and value of `Σ wᵢ √((y - hᵢ)² + oᵢ²)` over `y >= 0`,
/// for anchors at off-axis distance `oᵢ` and height `hᵢ` in half-planes glued along the axis.
pub fn spine_reduction(anchors: &[(f64, f64)], weights: &[f64]) -> Result<(f64, f64)> {
    if anchors.is_empty() || anchors.len() != weights.len() {
        return Err(Error::InvalidParameter("need one weight per anchor and at least one anchor".into()));
    }
    let f =
        |y: f64| -> f64 { anchors.iter().zip(weights).map(|((o, h), w)| w * ((y - h) * (y - h) + o * o).sqrt()).sum() };
    let hi = anchors.iter().map(|(o, h)| h + o).fold(0.0, f64::max) + 1.0;
    Ok(golden_section(f, 0.0, hi, 1e-12))
}
