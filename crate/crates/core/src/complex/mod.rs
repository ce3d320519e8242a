//! Subset posets `S^ℓ`, `S^f`, `S̄`, their derived complexes, the triangle
//! metric on the `S^ℓ` complex, and the retraction of the `S̄` complex onto it.

mod chains;
mod metric;
mod poset;
mod retraction;

use serde_json::{json, Value};

use crate::graph::DefiningGraph;

pub use chains::{check_two_dimensional, Chain, DerivedComplex, TwoDimReport};
pub use metric::{assign_metric, check_gluing, EdgeLength, GluingReport, MetricSimplex, Shape, SharedEdge};
pub use poset::{build_s_bar, build_s_ell, build_s_f, SubsetPoset, Tag};
pub use retraction::{collapse_rule, retraction_map, Retraction, RetractionReport, DEFAULT_CHAIN_CAP};

fn names(graph: &DefiningGraph, t: crate::VertexSet) -> Vec<String> {
    t.iter().map(|v| graph.name(v).to_string()).collect()
}

/// Hasse diagram of a poset in DOT.
pub fn poset_to_dot(poset: &SubsetPoset, graph: &DefiningGraph, title: &str) -> String {
    let mut out = format!("digraph \"{title}\" {{\n  rankdir=BT;\n");
    for (i, &t) in poset.elements().iter().enumerate() {
        let tags: Vec<String> = poset.tags(t).into_iter().flatten().map(tag_name).collect();
        out.push_str(&format!("  n{i} [label=\"{}\\n{}\"];\n", graph.format_set(t), tags.join(",")));
    }
    for (i, j) in poset.covering_pairs() {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn poset_to_json(poset: &SubsetPoset, graph: &DefiningGraph) -> Value {
    let elements: Vec<Value> = poset
        .elements()
        .iter()
        .map(|&t| {
            let tags: Vec<String> = poset.tags(t).into_iter().flatten().map(tag_name).collect();
            json!({ "set": names(graph, t), "tags": tags })
        })
        .collect();
    let covers: Vec<[usize; 2]> = poset.covering_pairs().into_iter().map(|(i, j)| [i, j]).collect();
    json!({ "elements": elements, "covers": covers })
}

/// Summary of a derived complex: vertices, chain counts by dimension, and
/// the maximal chains when there are at most `cap` of them.
pub fn complex_to_json(complex: &DerivedComplex, graph: &DefiningGraph, cap: usize) -> Value {
    let maximal: Value = match complex.maximal_chains(cap) {
        Ok(chains) => chains
            .iter()
            .map(|c| c.iter().map(|&t| names(graph, t)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into(),
        Err(_) => Value::Null,
    };
    json!({
        "vertices": complex.vertex_count(),
        "dimension": complex.dimension(),
        "simplices_by_dimension": complex.chain_counts(),
        "maximal_chains": maximal,
    })
}

pub fn tag_name(tag: &Tag) -> String {
    match tag {
        Tag::Empty => "empty".into(),
        Tag::Part(i) => format!("part-{i}"),
        Tag::InterEdge => "inter-edge".into(),
        Tag::InterEdgeVertex => "inter-edge-vertex".into(),
        Tag::Spherical => "spherical".into(),
        Tag::PartSubset(i) => format!("part-subset-{i}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn exports_are_stable() {
        let inst = instances::single_edge(4);
        let p = build_s_ell(&inst);
        let dot = poset_to_dot(&p, &inst.graph, "S_ell");
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("part-0,inter-edge-vertex"));
        assert_eq!(dot, poset_to_dot(&p, &inst.graph, "S_ell"));
        let j = poset_to_json(&p, &inst.graph);
        assert_eq!(j["elements"].as_array().unwrap().len(), 4);
        let c = complex_to_json(&DerivedComplex::new(p), &inst.graph, 100);
        assert_eq!(c["simplices_by_dimension"], json!([4, 5, 2]));
    }
}
