//! Newick reading and writing.
//!
//! Trees are read as unrooted: the root is flattened, internal node labels are
//! ignored, and every non-root node must carry a branch length. Written trees
//! hang from the reference leaf (the first label in sorted order), so the
//! output root always has degree at least three.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::split::LeafMask;
use super::tree::{canonical_labels, PhyloTree};
use crate::error::{Error, Result};

/// Parses a single Newick tree terminated by `;`.
pub fn parse_newick(text: &str) -> Result<PhyloTree> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, labels: Vec::new(), clusters: Vec::new() };
    p.skip_ws();
    p.subtree(true)?;
    p.skip_ws();
    p.expect(b';')?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected text after `;`"));
    }
    let Parser { labels, clusters, .. } = p;

    // masks were built over first-appearance order; remap to sorted order
    let named: Vec<String> = labels.iter().map(|(l, _)| l.clone()).collect();
    let leaves = canonical_labels(named)?;
    let rank: Vec<usize> = labels.iter().map(|(l, _)| leaves.binary_search(l).expect("label present")).collect();
    let remap = |mask: LeafMask| -> LeafMask {
        rank.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |m, (_, &r)| m | 1 << r)
    };
    let mut pendants = vec![0.0; leaves.len()];
    for (i, (_, len)) in labels.iter().enumerate() {
        pendants[rank[i]] = *len;
    }
    PhyloTree::from_masks(leaves, clusters.into_iter().map(|(m, l)| (remap(m), l)), pendants)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    /// Leaves in order of appearance with their pendant lengths.
    labels: Vec<(String, f64)>,
    /// Clusters of internal non-root nodes with their branch lengths.
    clusters: Vec<(LeafMask, f64)>,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Newick { offset: self.pos, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.error(format!("expected `{}`, found `{}`", c as char, x as char))),
            None => Err(self.error(format!("expected `{}`, found end of input", c as char))),
        }
    }

    fn is_label_byte(c: u8) -> bool {
        c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'-'
    }

    fn label(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(Self::is_label_byte) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    /// Reads `:length` if present (required for non-root nodes).
    fn length(&mut self, required: bool) -> Result<f64> {
        self.skip_ws();
        if self.peek() != Some(b':') {
            return if required { Err(self.error("missing branch length")) } else { Ok(0.0) };
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || matches!(c, b'.' | b'e' | b'E' | b'+' | b'-')) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let value: f64 = text
            .parse()
            .map_err(|_| Error::Newick { offset: start, message: format!("invalid branch length `{text}`") })?;
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::Newick {
                offset: start,
                message: format!("branch length {value} must be finite and >= 0"),
            });
        }
        Ok(value)
    }

    /// Parses a subtree, returning its branch length and leaf mask (over appearance order).
    fn subtree(&mut self, root: bool) -> Result<(f64, LeafMask)> {
        self.skip_ws();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut mask: LeafMask = 0;
            let mut children = 0;
            loop {
                let (_, m) = self.subtree(false)?;
                mask |= m;
                children += 1;
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => return Err(self.error(format!("expected `,` or `)`, found `{}`", c as char))),
                    None => return Err(self.error("unbalanced parentheses")),
                }
            }
            if root && children < 2 {
                return Err(self.error("root must have at least two children"));
            }
            self.skip_ws();
            let _ = self.label(); // internal labels carry no meaning here
            let len = self.length(!root)?;
            if !root {
                self.clusters.push((mask, len));
            }
            Ok((len, mask))
        } else {
            let at = self.pos;
            let name = self.label().to_string();
            if name.is_empty() {
                return Err(match self.peek() {
                    Some(c) => self.error(format!("expected a leaf label or `(`, found `{}`", c as char)),
                    None => self.error("unexpected end of input"),
                });
            }
            if root {
                return Err(Error::Newick { offset: at, message: "a tree needs at least one `(...)` group".into() });
            }
            let len = self.length(true)?;
            let index = self.labels.len();
            if index >= LeafMask::BITS as usize {
                return Err(Error::TooManyLeaves(index + 1));
            }
            if self.labels.iter().any(|(l, _)| *l == name) {
                return Err(Error::DuplicateLeaf(name));
            }
            self.labels.push((name, len));
            Ok((len, 1 << index))
        }
    }
}

/// Writes a tree in Newick form; reading it back gives an equal tree.
pub fn serialize_newick(tree: &PhyloTree) -> String {
    serialize_newick_with(tree, &|x| x.to_string())
}

/// Writes a tree in Newick form with branch lengths rendered by `num`.
pub fn serialize_newick_with(tree: &PhyloTree, num: &dyn Fn(f64) -> String) -> String {
    let n = tree.leaf_count();
    // the canonical sides form a laminar family; nest them by inclusion
    let mut nodes: Vec<(LeafMask, Option<f64>)> = tree.splits().iter().map(|(s, &l)| (s.side(), Some(l))).collect();
    nodes.extend((1..n).map(|i| (1 << i, None)));
    // larger clusters first so parents precede children
    nodes.sort_by_key(|(m, _)| (std::cmp::Reverse(m.count_ones()), m.trailing_zeros()));
    let mut children: BTreeMap<Option<usize>, Vec<usize>> = BTreeMap::new();
    for i in 0..nodes.len() {
        let parent = (0..i).rev().find(|&j| nodes[i].0 & !nodes[j].0 == 0 && nodes[j].1.is_some());
        children.entry(parent).or_default().push(i);
    }

    type Kids = BTreeMap<Option<usize>, Vec<usize>>;
    type Fmt<'a> = &'a dyn Fn(f64) -> String;

    fn write(out: &mut String, tree: &PhyloTree, num: Fmt, nodes: &[(LeafMask, Option<f64>)], kids: &Kids, i: usize) {
        let (mask, len) = nodes[i];
        match len {
            None => {
                let leaf = mask.trailing_zeros() as usize;
                let _ = write!(out, "{}:{}", tree.leaves()[leaf], num(tree.pendants()[leaf]));
            }
            Some(len) => {
                out.push('(');
                write_children(out, tree, num, nodes, kids, Some(i));
                let _ = write!(out, "):{}", num(len));
            }
        }
    }

    fn write_children(
        out: &mut String,
        tree: &PhyloTree,
        num: Fmt,
        nodes: &[(LeafMask, Option<f64>)],
        kids: &Kids,
        parent: Option<usize>,
    ) {
        let mut list = kids.get(&parent).cloned().unwrap_or_default();
        list.sort_by_key(|&c| nodes[c].0.trailing_zeros());
        for (k, c) in list.into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write(out, tree, num, nodes, kids, c);
        }
    }

    let mut out = String::from("(");
    write_children(&mut out, tree, num, &nodes, &children, None);
    let _ = write!(out, ",{}:{});", tree.leaves()[0], num(tree.pendants()[0]));
    out
}

/// Parses every non-empty `;`-terminated tree in `text`, in order.
pub fn parse_newick_list(text: &str) -> Result<Vec<PhyloTree>> {
    let mut trees = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == ';' {
            let chunk = &text[start..=i];
            if !chunk.trim().is_empty() {
                trees.push(parse_newick(chunk).map_err(|e| shift(e, start))?);
            }
            start = i + 1;
        }
    }
    if !text[start..].trim().is_empty() {
        let lead = text[start..].len() - text[start..].trim_start().len();
        return Err(Error::Newick { offset: text.len().max(start + lead), message: "missing `;` terminator".into() });
    }
    Ok(trees)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Newick { offset, message } => Error::Newick { offset: offset + by, message },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_one_split() {
        let t = parse_newick("((a:1,b:1):0.5,c:1,d:1);").unwrap();
        assert_eq!(t.splits().len(), 1);
        assert_eq!(t.length(t.split_of(&["a", "b"]).unwrap()), 0.5);
        assert_eq!(t.pendants(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn star_tree() {
        let t = parse_newick("(a:1,b:1,c:1,d:1);").unwrap();
        assert!(t.splits().is_empty());
    }

    #[test]
    fn rooted_binary_root_edges_sum() {
        let t = parse_newick("((a:1,b:1):0.5,(c:1,d:1):0.25);").unwrap();
        assert_eq!(t.splits().len(), 1);
        assert_eq!(t.length(t.split_of(&["c", "d"]).unwrap()), 0.75);
    }

    #[test]
    fn round_trips() {
        for s in [
            "((a:1,b:1):0.5,c:1,d:1);",
            "(a:1,b:1,c:1,d:1);",
            "((a:1,b:1):0.5,(c:1,d:1):0.25);",
            "(((a:1,b:1):2,c:1):1.5,d:1,0:1);",
            "((x:0.1,(y:0.2,z:0.3):0.7):1e-3,(w:2,v:0):0.125,u:1);",
        ] {
            let t = parse_newick(s).unwrap();
            let text = serialize_newick(&t);
            assert_eq!(parse_newick(&text).unwrap(), t, "{s} -> {text}");
        }
    }

    #[test]
    fn serialized_form_hangs_from_reference_leaf() {
        let t = parse_newick("(0:1,(b:1,a:1):1,(d:1,c:1):2);").unwrap();
        assert_eq!(serialize_newick(&t), "((a:1,b:1):1,(c:1,d:1):2,0:1);");
    }

    #[test]
    fn whitespace_and_internal_labels() {
        let t = parse_newick(" ( (a:1, b:1)x:0.5 , c:1 , d:1 )root ;\n").unwrap();
        assert_eq!(t.splits().len(), 1);
    }

    #[test]
    fn error_offsets() {
        let offset = |s: &str| match parse_newick(s) {
            Err(Error::Newick { offset, .. }) => offset,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(offset("((a:1,b:1):0.5,c:1,d:1)"), 23);
        assert_eq!(offset("((a:1,b:1),c:1,d:1);"), 10);
        assert_eq!(offset("((a:1,b:x):0.5,c:1,d:1);"), 8);
        assert_eq!(offset("((a:1,b:1):0.5,c:1,d:1);x"), 24);
        assert_eq!(offset("((a:1,b:1:0.5,c:1,d:1);"), 9);
        assert_eq!(offset("(a:1,,b:1);"), 5);
    }

    #[test]
    fn rejects_duplicates_and_small_trees() {
        assert!(matches!(parse_newick("(a:1,a:1,b:1);"), Err(Error::DuplicateLeaf(_))));
        assert!(matches!(parse_newick("(a:1,b:1);"), Err(Error::TooFewLeaves(2))));
    }

    #[test]
    fn tree_lists() {
        let ts = parse_newick_list("(a:1,b:1,c:1);\n((a:1,b:1):1,c:1,d:1);\n").unwrap();
        assert_eq!(ts.len(), 2);
        match parse_newick_list("(a:1,b:1,c:1);\n(a:1,b:1,c:x);") {
            Err(Error::Newick { offset, .. }) => assert_eq!(offset, 26),
            other => panic!("{other:?}"),
        }
    }
}
