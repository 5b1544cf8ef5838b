//! Static Graphviz output for documentation figures.

use std::fmt::Write as _;

use cwapprox::{SimplicialSet, Tower};

/// Larger 1-skeletons are not worth drawing.
pub const MAX_SKELETON_EDGES: usize = 500;

/// Stages as a chain of boxes, each labelled with its generator counts.
pub fn growth_dot(t: &Tower) -> String {
    let mut out = String::from("digraph growth {\n  rankdir=LR;\n  node [shape=box];\n");
    for (n, stage) in t.stages().iter().enumerate() {
        let counts: Vec<String> = stage.counts().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  s{n} [label=\"A{n}\\n[{}]\"];", counts.join(", "));
        if n > 0 {
            let _ = writeln!(out, "  s{} -> s{n} [label=\"+{}\"];", n - 1, t.squares(n).len());
        }
    }
    out.push_str("}\n");
    out
}

/// Vertices and nondegenerate edges, each edge drawn from `d_1` to `d_0`.
pub fn one_skeleton_dot(x: &SimplicialSet) -> String {
    let mut out = String::from("digraph skeleton {\n  node [shape=circle];\n");
    for v in x.refs(0) {
        let _ = writeln!(out, "  v{} [label={:?}];", v.index, x.label(v));
    }
    for e in x.refs(1) {
        let f = &x.generator(e).faces;
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", f[1].gen.index, f[0].gen.index, e.index);
    }
    out.push_str("}\n");
    out
}
