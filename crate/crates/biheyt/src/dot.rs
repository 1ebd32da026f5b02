//! Graphviz output: Hasse diagrams drawn bottom-up.

use std::fmt::Write;

use biheyt_core::{BiHeyting, Poset};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn hasse(n: usize, covers: impl IntoIterator<Item = (usize, usize)>, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for i in 0..n {
        let label = labels.and_then(|l| l.get(i)).cloned().unwrap_or_else(|| i.to_string());
        writeln!(out, "  n{i} [label=\"{}\"];", escape(&label)).unwrap();
    }
    for (a, b) in covers {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Cover edges of `p`, with optional node labels.
pub fn poset_dot(p: &Poset, labels: Option<&[String]>) -> String {
    hasse(p.size(), p.covers(), labels)
}

/// Hasse diagram of an algebra's lattice order. Cubic in the size.
pub fn algebra_dot<A: BiHeyting + ?Sized>(a: &A, labels: Option<&[String]>) -> String {
    let n = a.size();
    let covers = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| {
        x != y && a.leq(x, y) && !(0..n).any(|z| z != x && z != y && a.leq(x, z) && a.leq(z, y))
    });
    hasse(n, covers, labels)
}
