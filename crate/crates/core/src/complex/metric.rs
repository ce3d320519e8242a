use std::collections::BTreeMap;

use serde::Serialize;

use super::chains::DerivedComplex;
use super::poset::Tag;
use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::subset::VertexSet;

/// Which triangle a 2-chain `[∅ ⊂ {s} ⊂ T]` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    /// `T` is a part: isosceles right triangle.
    Part,
    /// `T` is an inter-edge sharing no vertex with another inter-edge.
    DisjointInterEdge,
    /// `T` is an inter-edge touching another inter-edge.
    NonDisjointInterEdge,
}

impl Shape {
    /// Angles at `(∅, {s}, T)` in units of π/8.
    pub fn angles(self) -> [u32; 3] {
        match self {
            Shape::Part | Shape::DisjointInterEdge => [2, 4, 2],
            Shape::NonDisjointInterEdge => [3, 4, 1],
        }
    }
}

/// Exact edge length of a right triangle with legs `[∅,{s}] = 1` and
/// `[{s},T]`, keyed by the angle at `∅`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "angle_units")]
pub enum EdgeLength {
    One,
    /// `sec θ` for the angle `θ` at `∅`: the hypotenuse `[∅, T]`.
    Secant(u32),
    /// `tan θ`: the leg `[{s}, T]`.
    Tangent(u32),
}

impl EdgeLength {
    fn tangent(angle: u32) -> Self {
        if angle == 2 {
            EdgeLength::One
        } else {
            EdgeLength::Tangent(angle)
        }
    }

    pub fn value(self) -> f64 {
        let rad = |u: u32| u as f64 * std::f64::consts::PI / 8.0;
        match self {
            EdgeLength::One => 1.0,
            EdgeLength::Secant(a) => 1.0 / rad(a).cos(),
            EdgeLength::Tangent(a) => rad(a).tan(),
        }
    }
}

/// A Euclidean triangle on a 2-chain `[∅ ⊂ {s} ⊂ T]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricSimplex {
    pub chain: [VertexSet; 3],
    pub shape: Shape,
    /// At `(∅, {s}, T)`, in units of π/8.
    pub angles: [u32; 3],
    /// Lengths of `[∅,{s}]`, `[{s},T]`, `[∅,T]`.
    pub lengths: [EdgeLength; 3],
}

impl MetricSimplex {
    pub fn edges(&self) -> [((VertexSet, VertexSet), EdgeLength); 3] {
        let [a, b, c] = self.chain;
        [((a, b), self.lengths[0]), ((b, c), self.lengths[1]), ((a, c), self.lengths[2])]
    }
}

/// Assigns the triangle metric to every 2-chain of the `S^ℓ` complex.
pub fn assign_metric(complex: &DerivedComplex, inst: &Instance) -> Result<Vec<MetricSimplex>> {
    let poset = complex.poset();
    let inter = inst.inter_edges();
    let describe = |c: &[VertexSet]| {
        let parts: Vec<String> = c.iter().map(|&t| inst.graph.format_set(t)).collect();
        format!("[{}]", parts.join(" < "))
    };
    let mut out = Vec::new();
    for chain in complex.simplices(2, usize::MAX)? {
        let [t0, t1, t2] = [chain[0], chain[1], chain[2]];
        if !t0.is_empty() || t1.len() != 1 {
            return Err(Error::UnrecognizedSimplex(describe(&chain)));
        }
        let edge = inter.iter().find(|e| e.vertices() == t2);
        let shape = if let Some(e) = edge.filter(|_| poset.has_tag(t2, Tag::InterEdge)) {
            if inst.is_disjoint_inter_edge(e) {
                Shape::DisjointInterEdge
            } else {
                Shape::NonDisjointInterEdge
            }
        } else if inst.family.parts().contains(&t2) {
            Shape::Part
        } else {
            return Err(Error::UnrecognizedSimplex(describe(&chain)));
        };
        let angles = shape.angles();
        out.push(MetricSimplex {
            chain: [t0, t1, t2],
            shape,
            angles,
            lengths: [EdgeLength::One, EdgeLength::tangent(angles[0]), EdgeLength::Secant(angles[0])],
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedEdge {
    pub edge: (VertexSet, VertexSet),
    pub simplices: usize,
    pub lengths: Vec<EdgeLength>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub consistent: bool,
    /// Edges lying in two or more triangles.
    pub shared_edges: Vec<SharedEdge>,
}

/// Checks that every edge shared by several triangles gets one length.
pub fn check_gluing(simplices: &[MetricSimplex]) -> GluingReport {
    let mut by_edge: BTreeMap<(VertexSet, VertexSet), Vec<EdgeLength>> = BTreeMap::new();
    for s in simplices {
        for (e, l) in s.edges() {
            by_edge.entry(e).or_default().push(l);
        }
    }
    let shared_edges: Vec<SharedEdge> = by_edge
        .into_iter()
        .filter(|(_, ls)| ls.len() > 1)
        .map(|(edge, ls)| {
            let consistent = ls.iter().all(|&l| l == ls[0]);
            let mut lengths = ls.clone();
            lengths.dedup();
            SharedEdge { edge, simplices: ls.len(), lengths, consistent }
        })
        .collect();
    GluingReport { consistent: shared_edges.iter().all(|e| e.consistent), shared_edges }
}
