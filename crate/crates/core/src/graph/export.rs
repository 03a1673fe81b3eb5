//! Ball exports: JSON, Graphviz DOT and a plain text listing.
//!
//! JSON layout: `{"base", "radius", "vertices": [id], "edges": [[i, j]],
//! "dist": [d]}` with `i < j` indexing into `vertices`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Ball, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallExport {
    pub base: String,
    pub radius: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub dist: Vec<usize>,
}

impl BallExport {
    pub fn from_ball<V: VertexId>(ball: &Ball<V>) -> Self {
        Self {
            base: ball.base().to_string(),
            radius: ball.radius(),
            vertices: ball.vertices().iter().map(|v| v.to_string()).collect(),
            edges: ball.edges().map(|(i, j)| [i, j]).collect(),
            dist: (0..ball.len()).map(|i| ball.dist(i)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ball export serializes")
    }

    /// Undirected DOT graph; nodes are labelled with their distance.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ball {\n");
        for (i, (v, d)) in self.vertices.iter().zip(&self.dist).enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{d}\", tooltip=\"{v}\"];");
        }
        for [i, j] in &self.edges {
            let _ = writeln!(out, "  n{i} -- n{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "base {} radius {}: {} vertices, {} edges",
            self.base,
            self.radius,
            self.vertices.len(),
            self.edges.len()
        );
        let max = self.dist.iter().copied().max().unwrap_or(0);
        for d in 0..=max {
            let count = self.dist.iter().filter(|&&x| x == d).count();
            let _ = writeln!(out, "  sphere {d}: {count}");
        }
        for (v, d) in self.vertices.iter().zip(&self.dist) {
            let _ = writeln!(out, "{d}\t{v}");
        }
        out
    }
}
