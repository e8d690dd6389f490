//! Graphviz export.
//!
//! Decompositions are circles labelled with their vtrees, elements are
//! two-cell records (prime | sub) and terminals are boxes showing the symbol
//! and vtrees. Edge-based managers print the primary vtree on each edge.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::manager::{Dd, Manager, NodeId};

impl Manager {
    pub fn to_dot(&self, root: Dd) -> String {
        let edge_based = self.kind().is_edge_based();
        let mut out = String::from("digraph tsdd {\n  node [fontname=\"Helvetica\"];\n");
        let _ = writeln!(out, "  root [shape=point];");
        let _ = writeln!(
            out,
            "  root -> {}{};",
            root.node(),
            edge_label(edge_based, root)
        );
        let mut seen: HashSet<NodeId> = HashSet::new();
        let mut stack = vec![root];
        while let Some(d) = stack.pop() {
            if !seen.insert(d.node()) {
                continue;
            }
            let sv = self.secondary(d);
            let n = d.node();
            match self.terminal(d) {
                Some(t) => {
                    let label = if edge_based {
                        format!("{t}\\n{sv}")
                    } else {
                        format!("{t}\\n({},{sv})", d.primary())
                    };
                    let _ = writeln!(out, "  {n} [shape=square,label=\"{label}\"];");
                }
                None => {
                    let label = if edge_based {
                        sv.to_string()
                    } else {
                        format!("{}|{sv}", d.primary())
                    };
                    let _ = writeln!(out, "  {n} [shape=circle,label=\"{label}\"];");
                    for (i, &(p, s)) in self.elements(d).iter().enumerate() {
                        let e = format!("{n}e{i}");
                        let _ = writeln!(out, "  {e} [shape=record,label=\"<p>|<s>\"];");
                        let _ = writeln!(out, "  {n} -> {e};");
                        let _ =
                            writeln!(out, "  {e}:p -> {}{};", p.node(), edge_label(edge_based, p));
                        let _ =
                            writeln!(out, "  {e}:s -> {}{};", s.node(), edge_label(edge_based, s));
                        stack.push(p);
                        stack.push(s);
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn edge_label(edge_based: bool, d: Dd) -> String {
    if edge_based {
        format!(" [label=\"{}\"]", d.primary())
    } else {
        String::new()
    }
}
