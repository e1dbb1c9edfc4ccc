use std::collections::BTreeMap;

use super::gtp::{gtp_geodesic, GeodesicSupport};
use super::tree::PhyloTree;
use crate::error::{Error, Result};
use crate::spaces::{check_param, ExtensionPolicy, PARAM_SLACK};

/// BHV distance over interior edges.
pub fn bhv_distance(t1: &PhyloTree, t2: &PhyloTree) -> Result<f64> {
    Ok(gtp_geodesic(t1, t2)?.length(false))
}

/// The tree at distance `t` from `t1` on the geodesic to `t2` (interior-edge metric).
pub fn bhv_point(t1: &PhyloTree, t2: &PhyloTree, t: f64) -> Result<PhyloTree> {
    let support = gtp_geodesic(t1, t2)?;
    let d = support.length(false);
    let t = check_param(t, d)?;
    Ok(point_on(t1, &support, if d == 0.0 { 0.0 } else { t / d }))
}

/// Follows the geodesic from `origin` through `target` for time `t`.
///
/// Tree space offers no canonical extension past `target`: with
/// [`ExtensionPolicy::Error`] such times fail, with [`ExtensionPolicy::Clamp`]
/// they return `target`.
pub fn tree_ray_point(origin: &PhyloTree, target: &PhyloTree, t: f64, policy: ExtensionPolicy) -> Result<PhyloTree> {
    ray_point_with(origin, target, t, policy, false)
}

pub(crate) fn ray_point_with(
    origin: &PhyloTree,
    target: &PhyloTree,
    t: f64,
    policy: ExtensionPolicy,
    include_pendants: bool,
) -> Result<PhyloTree> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("ray time {t} must be finite and >= 0")));
    }
    let support = gtp_geodesic(origin, target)?;
    let d = support.length(include_pendants);
    if t > d + PARAM_SLACK * d.max(1.0) {
        return match policy {
            ExtensionPolicy::Error => Err(Error::ExtensionUnsupported { overshoot: t - d }),
            ExtensionPolicy::Clamp => Ok(target.clone()),
        };
    }
    let t = t.min(d);
    Ok(point_on(origin, &support, if d == 0.0 { 0.0 } else { t / d }))
}

/// The tree at fraction `lambda` of the way along `support`, starting from `from`.
pub(crate) fn point_on(from: &PhyloTree, support: &GeodesicSupport, lambda: f64) -> PhyloTree {
    if lambda <= 0.0 {
        return from.clone();
    }
    let lambda = lambda.min(1.0);
    let mut splits = BTreeMap::new();
    for c in &support.common {
        splits.insert(c.split, (1.0 - lambda) * c.from + lambda * c.to);
    }
    for leg in &support.legs {
        let (a, b) = (leg.norm_a(), leg.norm_b());
        let s = lambda * (a + b);
        if s <= a {
            for &(e, len) in &leg.a {
                splits.insert(e, len * (a - s) / a);
            }
        } else {
            for &(f, len) in &leg.b {
                splits.insert(f, len * (s - a) / b);
            }
        }
    }
    let pendants = support.pendants.iter().map(|(p, q)| (1.0 - lambda) * p + lambda * q).collect();
    from.with_parts(splits, pendants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treespace::parse_newick;

    fn t(s: &str) -> PhyloTree {
        parse_newick(s).unwrap()
    }

    #[test]
    fn same_orthant_is_euclidean() {
        let x = t("((a:1,b:1):0.5,c:1,d:1);");
        let y = t("((a:1,b:1):0.75,c:1,d:1);");
        assert_eq!(bhv_distance(&x, &y).unwrap(), 0.25);
        let mid = bhv_point(&x, &y, 0.125).unwrap();
        assert_eq!(mid.length(mid.split_of(&["a", "b"]).unwrap()), 0.625);
    }

    #[test]
    fn star_to_single_split() {
        let star = t("(a:1,b:1,c:1,d:1);");
        let x = t("((a:1,b:1):1.25,c:1,d:1);");
        assert_eq!(bhv_distance(&star, &x).unwrap(), 1.25);
    }

    #[test]
    fn cone_path_passes_through_star() {
        let x = t("((a:1,b:1):1,c:1,d:1);");
        let y = t("((a:1,c:1):1,b:1,d:1);");
        assert_eq!(bhv_distance(&x, &y).unwrap(), 2.0);
        let mid = bhv_point(&x, &y, 1.0).unwrap();
        assert!(mid.splits().is_empty());
        assert_eq!(bhv_point(&x, &y, 0.0).unwrap(), x);
        assert_eq!(bhv_point(&x, &y, 2.0).unwrap(), y);
        assert!(matches!(bhv_point(&x, &y, 2.5), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn ray_policies() {
        let x = t("((a:1,b:1):1,c:1,d:1);");
        let y = t("((a:1,c:1):1,b:1,d:1);");
        assert_eq!(tree_ray_point(&x, &y, 2.4, ExtensionPolicy::Clamp).unwrap(), y);
        match tree_ray_point(&x, &y, 2.4, ExtensionPolicy::Error) {
            Err(Error::ExtensionUnsupported { overshoot }) => assert!((overshoot - 0.4).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let p = tree_ray_point(&x, &y, 0.5, ExtensionPolicy::Error).unwrap();
        assert_eq!(p, bhv_point(&x, &y, 0.5).unwrap());
    }

    #[test]
    fn point_splits_distance() {
        let x = t("(((a:1,b:1):2,c:1):1.5,d:1,0:1);");
        let y = t("(((b:1,c:1):3,a:1):0.5,d:1,0:1);");
        let d = bhv_distance(&x, &y).unwrap();
        for k in 0..=10 {
            let s = d * k as f64 / 10.0;
            let p = bhv_point(&x, &y, s).unwrap();
            assert!((bhv_distance(&x, &p).unwrap() - s).abs() < 1e-12);
            assert!((bhv_distance(&p, &y).unwrap() - (d - s)).abs() < 1e-12);
        }
    }
}
