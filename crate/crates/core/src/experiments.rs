//! Median instances in the space of rooted 4-leaf trees.
//!
//! A rooted tree on leaves `a, b, c, d` is stored as an unrooted tree with
//! the root as an extra leaf `0`. Its two interior edges are the coordinates
//! of a quadrant.

use crate::error::Result;
use crate::reference::{euclidean_pmean, spine_reduction};
use crate::treespace::{parse_newick, PhyloTree};

/// Anchors, weights, start point and optimal value of a median instance.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub trees: Vec<PhyloTree>,
    pub weights: Vec<f64>,
    pub x0: PhyloTree,
    pub f_opt: f64,
}

pub const PRESETS: [&str; 2] = ["example7_1", "example7_2"];

pub fn preset(name: &str) -> Option<Preset> {
    match name {
        "example7_1" => Some(example7_1()),
        "example7_2" => Some(example7_2()),
        _ => None,
    }
}

/// The star tree on `0, a, b, c, d` with unit pendants.
pub fn t4_star() -> PhyloTree {
    parse_newick("(a:1,b:1,c:1,d:1,0:1);").expect("valid fixture")
}

/// Three trees in neighbouring quadrants at planar coordinates `(1, 2)`,
/// `(2, -3/2)` and `(-3, -1/2)`, with the quadrant axes `{a,b}` (x > 0),
/// `{c,d}` (y > 0), `{a,b,c}` (y < 0) and `{b,c}` (x < 0).
pub const EXAMPLE7_1_NEWICK: [&str; 3] =
    ["((a:1,b:1):1,(c:1,d:1):2,0:1);", "(((a:1,b:1):2,c:1):1.5,d:1,0:1);", "(((b:1,c:1):3,a:1):0.5,d:1,0:1);"];

/// Minimizer of the first example, in the `({a,b}, {c,d})` quadrant.
pub fn example7_1_xstar() -> (f64, f64) {
    let s = 3f64.sqrt();
    ((2657.0 - 1038.0 * s) / 1898.0, (3006.0 - 1369.0 * s) / 5694.0)
}

/// Closed-form optimal value of the first example.
pub fn example7_1_fopt() -> f64 {
    let s = 3f64.sqrt();
    (0.5 * (43.0 + 11.0 * s + (37.0 * (49.0 + 22.0 * s)).sqrt())).sqrt() / 3.0
}

/// Reference optimum of the first example found numerically.
///
/// On the `({a,b}, {c,d})` quadrant the objective is a planar Weber problem in
/// the first two anchors and the origin, plus the constant cone-path length
/// `√37/2` to the third anchor.
pub fn example7_1_fopt_numeric() -> Result<f64> {
    let anchors = vec![vec![1.0, 2.0], vec![2.0, -1.5], vec![0.0, 0.0]];
    let (_, v) = euclidean_pmean(&anchors, &[1.0, 1.0, 1.0], 1.0)?;
    Ok((v + 37f64.sqrt() / 2.0) / 3.0)
}

pub fn example7_1() -> Preset {
    Preset {
        name: "example7_1",
        trees: EXAMPLE7_1_NEWICK.iter().map(|s| parse_newick(s).expect("valid fixture")).collect(),
        weights: vec![1.0 / 3.0; 3],
        x0: t4_star(),
        f_opt: example7_1_fopt(),
    }
}

/// Off-spine and spine coordinates of the three anchors of the second example, in order.
pub fn example7_2_coords() -> [(f64, f64); 3] {
    let s = 3f64.sqrt();
    let alpha = 2.0 * s / (1.0 + 2.0 * s);
    let gamma = (2.0 + 2.0 * s) / (1.0 + 2.0 * s);
    [(alpha, alpha), (1.0, 1.0), (gamma, gamma)]
}

/// Trees `(((x,y):u,z):v,d,0)` with cherries `{a,b}`, `{a,c}`, `{b,c}`; `{a,b,c}` is the spine.
pub fn example7_2_newick() -> [String; 3] {
    let [p, q, r] = example7_2_coords();
    [
        format!("(((a:1,b:1):{},c:1):{},d:1,0:1);", p.0, p.1),
        format!("(((a:1,c:1):{},b:1):{},d:1,0:1);", q.0, q.1),
        format!("(((b:1,c:1):{},a:1):{},d:1,0:1);", r.0, r.1),
    ]
}

/// Optimal spine height and value of the second example.
pub fn example7_2_reference() -> (f64, f64) {
    spine_reduction(&example7_2_coords(), &[1.0 / 3.0; 3]).expect("three anchors")
}

pub fn example7_2() -> Preset {
    Preset {
        name: "example7_2",
        trees: example7_2_newick().iter().map(|s| parse_newick(s).expect("valid fixture")).collect(),
        weights: vec![1.0 / 3.0; 3],
        x0: t4_star(),
        f_opt: example7_2_reference().1,
    }
}

/// Largest interior edge length that does not contain all of `a, b, c` (the off-spine coordinate).
pub fn off_spine(tree: &PhyloTree) -> f64 {
    let spine = tree.split_of(&["a", "b", "c"]);
    tree.splits().iter().filter(|(s, _)| Some(**s) != spine).map(|(_, l)| *l).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::ObjectiveSpec;
    use crate::solvers::median_setup;
    use crate::spaces::{Point, Space};
    use crate::treespace::TreeSpace;

    fn median_value(p: &Preset, x: &PhyloTree) -> f64 {
        let space = Space::tree(TreeSpace::default());
        let anchors: Vec<Point> = p.trees.iter().cloned().map(Point::from).collect();
        let prob = median_setup(&space, &anchors, &p.weights, &Point::from(x.clone())).unwrap();
        let obj: &ObjectiveSpec = &prob.objective;
        obj.eval(&Point::from(x.clone())).unwrap()
    }

    #[test]
    fn example7_1_values() {
        let p = example7_1();
        let f0 = median_value(&p, &p.x0);
        assert!((f0 - 2.592483080882966).abs() < 1e-12, "{f0}");
        let (u, v) = example7_1_xstar();
        let xstar = parse_newick(&format!("((a:1,b:1):{u},(c:1,d:1):{v},0:1);")).unwrap();
        assert!((median_value(&p, &xstar) - p.f_opt).abs() < 1e-12);
        assert!((example7_1_fopt_numeric().unwrap() - p.f_opt).abs() < 1e-10);
    }

    #[test]
    fn example7_2_values() {
        let (y, f) = example7_2_reference();
        assert!((y - 0.9668).abs() < 1e-4, "{y}");
        assert!((f - 1.0168).abs() < 1e-4, "{f}");
        let p = example7_2();
        let spine = parse_newick(&format!("((a:1,b:1,c:1):{y},d:1,0:1);")).unwrap();
        assert!((median_value(&p, &spine) - f).abs() < 1e-12);
        assert_eq!(off_spine(&spine), 0.0);
        assert!((off_spine(&p.trees[1]) - 1.0).abs() < 1e-15);
    }
}
