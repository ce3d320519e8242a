//! Fixture instances and a seeded generator of random (REL′) instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DefiningGraph, Instance, SubgraphFamily};
use crate::subset::VertexSet;

const C3_TILDE_EDGES: [(&str, &str, u32); 6] =
    [("a", "b", 3), ("a", "c", 4), ("a", "d", 2), ("b", "c", 2), ("b", "d", 4), ("d", "c", 2)];

/// The complete graph on four vertices whose Coxeter diagram is C̃3, with a
/// one-part family.
pub fn c3_tilde() -> Instance {
    let graph = DefiningGraph::new(&["a", "b", "c", "d"], &C3_TILDE_EDGES).expect("valid fixture");
    let family = SubgraphFamily::new(&graph, vec![graph.vertex_set()]).expect("valid fixture");
    Instance::new(graph, family)
}

/// Join of two copies of the C̃3 graph with every cross edge labeled
/// `cross_label`; the family is the two copies.
pub fn c3_tilde_join(cross_label: u32) -> Instance {
    let names: Vec<String> = ["1", "2"]
        .iter()
        .flat_map(|i| ["a", "b", "c", "d"].iter().map(move |v| format!("{v}{i}")))
        .collect();
    let mut edges: Vec<(String, String, u32)> = Vec::new();
    for i in ["1", "2"] {
        for (u, v, m) in C3_TILDE_EDGES {
            edges.push((format!("{u}{i}"), format!("{v}{i}"), m));
        }
    }
    for u in ["a", "b", "c", "d"] {
        for v in ["a", "b", "c", "d"] {
            edges.push((format!("{u}1"), format!("{v}2"), cross_label));
        }
    }
    let graph = DefiningGraph::new(&names, &edges).expect("valid fixture");
    let family = SubgraphFamily::new(&graph, vec![VertexSet::from_indices(0..4), VertexSet::from_indices(4..8)])
        .expect("valid fixture");
    Instance::new(graph, family)
}

/// A single edge `{a, b}` labeled `m` with family `[[a], [b]]`.
pub fn single_edge(m: u32) -> Instance {
    let graph = DefiningGraph::new(&["a", "b"], &[("a", "b", m)]).expect("valid fixture");
    let family = SubgraphFamily::from_names(&graph, &[vec!["a"], vec!["b"]]).expect("valid fixture");
    Instance::new(graph, family)
}

/// A (REL′)-violating control: parts `{a, c}` and `{b}`, inter-edges
/// `{a, b}` and `{c, b}` both labeled 3, and `{a, c}` labeled 2. The triangle
/// is of type A3, so it is a spherical subset crossing the two parts.
pub fn non_rel_prime_control() -> Instance {
    let graph = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 3), ("c", "b", 3), ("a", "c", 2)])
        .expect("valid fixture");
    let family = SubgraphFamily::from_names(&graph, &[vec!["a", "c"], vec!["b"]]).expect("valid fixture");
    Instance::new(graph, family)
}

/// Knobs for [`random_rel_prime`].
#[derive(Debug, Clone, Copy)]
pub struct RandomSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_label: u32,
    pub max_parts: usize,
    pub edge_probability: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { min_vertices: 3, max_vertices: 10, max_label: 6, max_parts: 4, edge_probability: 0.5 }
    }
}

/// A random instance satisfying (REL′), deterministic in `seed`.
///
/// Labels are drawn from `2..=max_label`; afterwards every inter-edge that
/// touches another inter-edge is relabeled into `4..=max_label`.
pub fn random_rel_prime(seed: u64, spec: RandomSpec) -> Instance {
    assert!(spec.max_label >= 4, "need labels >= 4 available");
    assert!(spec.min_vertices >= 2 && spec.min_vertices <= spec.max_vertices);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(spec.min_vertices..=spec.max_vertices);
    let parts_count = rng.gen_range(2..=spec.max_parts.min(n).max(2));

    // first `parts_count` vertices seed the parts, the rest land anywhere
    let mut part_of: Vec<usize> = (0..n).map(|v| if v < parts_count { v } else { rng.gen_range(0..parts_count) }).collect();
    // shuffle so part membership is not correlated with vertex order
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        part_of.swap(i, j);
    }

    let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut labels: Vec<(usize, usize, u32)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(spec.edge_probability) {
                labels.push((u, v, rng.gen_range(2..=spec.max_label)));
            }
        }
    }
    let is_inter = |u: usize, v: usize| part_of[u] != part_of[v];
    let inter: Vec<(usize, usize)> = labels.iter().filter(|e| is_inter(e.0, e.1)).map(|e| (e.0, e.1)).collect();
    for e in labels.iter_mut() {
        if !is_inter(e.0, e.1) {
            continue;
        }
        let touches = inter
            .iter()
            .any(|&(a, b)| (a, b) != (e.0, e.1) && (a == e.0 || a == e.1 || b == e.0 || b == e.1));
        if touches && e.2 < 4 {
            e.2 = rng.gen_range(4..=spec.max_label);
        }
    }

    let edges: Vec<(String, String, u32)> =
        labels.iter().map(|&(u, v, m)| (names[u].clone(), names[v].clone(), m)).collect();
    let graph = DefiningGraph::new(&names, &edges).expect("generated graph is valid");
    let parts: Vec<VertexSet> =
        (0..parts_count).map(|p| VertexSet::from_indices((0..n).filter(|&v| part_of[v] == p))).collect();
    let family = SubgraphFamily::new(&graph, parts).expect("generated family is a cover");
    Instance::new(graph, family)
}
