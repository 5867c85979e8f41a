//! Whole-graph serialization: edge list, DOT and JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::graph::neighbor_words;
use crate::word::{GraphParams, Limits, Word};

/// Edges `(u, v)` with `u < v`, sorted lexicographically.
pub fn edges(g: &GraphParams, limits: &Limits) -> Result<Vec<(Word, Word)>> {
    let mut out = Vec::new();
    for u in g.words(limits)? {
        let mut later: Vec<Word> = neighbor_words(g, &u)
            .into_iter()
            .filter(|v| *v > u)
            .collect();
        later.sort_unstable();
        out.extend(later.into_iter().map(|v| (u.clone(), v)));
    }
    Ok(out)
}

/// One `u v` pair per line.
pub fn to_edge_list(g: &GraphParams, limits: &Limits) -> Result<String> {
    let mut out = String::new();
    for (u, v) in edges(g, limits)? {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    Ok(out)
}

/// Undirected DOT. Every vertex is declared so that isolated ones would still
/// render.
pub fn to_dot(g: &GraphParams, limits: &Limits) -> Result<String> {
    let mut out = format!("graph \"S(K_{},{})\" {{\n", g.n(), g.t());
    for v in g.words(limits)? {
        writeln!(out, "  \"{v}\";").expect("writing to a String");
    }
    for (u, v) in edges(g, limits)? {
        writeln!(out, "  \"{u}\" -- \"{v}\";").expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Serialize)]
struct GraphDoc {
    n: u32,
    t: u32,
    vertices: Vec<Word>,
    edges: Vec<(Word, Word)>,
}

/// `{"edges":[[u,v],…],"n":…,"t":…,"vertices":[…]}`.
pub fn to_json(g: &GraphParams, limits: &Limits) -> Result<String> {
    let doc = GraphDoc {
        n: g.n(),
        t: g.t(),
        vertices: g.words(limits)?.collect(),
        edges: edges(g, limits)?,
    };
    Ok(crate::json::to_sorted_string(&doc))
}
