//! Labeled defining graphs, subgraph families, and the relative extra-large
//! conditions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter;
use crate::error::InputError;
use crate::subset::{VertexSet, MAX_VERTICES};

/// A finite simplicial graph with integer edge labels `m >= 2`.
///
/// A missing edge means there is no relation between the two generators
/// (`m = ∞` in the Coxeter convention).
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    // symmetric n×n matrix, `None` off the edge set and on the diagonal
    labels: Vec<Option<u32>>,
}

impl DefiningGraph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, u32)]) -> Result<Self, InputError> {
        let mut g = Self::with_vertices(vertices)?;
        for (u, v, m) in edges {
            g.add_edge(u.as_ref(), v.as_ref(), *m as i64)?;
        }
        Ok(g)
    }

    fn with_vertices<S: AsRef<str>>(vertices: &[S]) -> Result<Self, InputError> {
        if vertices.is_empty() {
            return Err(InputError::NoVertices);
        }
        if vertices.len() > MAX_VERTICES {
            return Err(InputError::TooManyVertices(vertices.len()));
        }
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref().to_string();
            if index.insert(v.clone(), i).is_some() {
                return Err(InputError::DuplicateVertex(v));
            }
            names.push(v);
        }
        let n = names.len();
        Ok(DefiningGraph { names, index, labels: vec![None; n * n] })
    }

    fn add_edge(&mut self, u: &str, v: &str, m: i64) -> Result<(), InputError> {
        let iu = self.index_of(u).ok_or_else(|| InputError::UnknownVertex(u.to_string()))?;
        let iv = self.index_of(v).ok_or_else(|| InputError::UnknownVertex(v.to_string()))?;
        if iu == iv {
            return Err(InputError::SelfLoop(u.to_string()));
        }
        if m < 2 || m > u32::MAX as i64 {
            return Err(InputError::BadLabel { u: u.into(), v: v.into(), label: m.to_string() });
        }
        if self.label(iu, iv).is_some() {
            return Err(InputError::ParallelEdge(u.to_string(), v.to_string()));
        }
        let n = self.len();
        self.labels[iu * n + iv] = Some(m as u32);
        self.labels[iv * n + iu] = Some(m as u32);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edge label `m(u, v)`, or `None` when `{u, v}` is not an edge.
    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        self.labels[u * self.len() + v]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.label(u, v).is_some()
    }

    /// Edges as `(u, v, m)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| ((u + 1)..n).filter_map(move |v| self.label(u, v).map(|m| (u, v, m))))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&u| self.is_edge(u, v))
    }

    /// Whether the full subgraph on `t` is connected (the empty set is not).
    pub fn is_connected_on(&self, t: VertexSet) -> bool {
        let Some(start) = t.iter().next() else { return false };
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in t.iter() {
                if !seen.contains(u) && self.is_edge(u, v) {
                    seen = seen.with(u);
                    stack.push(u);
                }
            }
        }
        seen == t
    }

    pub fn format_set(&self, t: VertexSet) -> String {
        let names: Vec<&str> = t.iter().map(|v| self.name(v)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl fmt::Debug for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v, m)| format!("{}-{}:{}", self.names[u], self.names[v], m))
            .collect();
        f.debug_struct("DefiningGraph").field("vertices", &self.names).field("edges", &edges).finish()
    }
}

/// A disjoint, covering family of non-empty vertex subsets. Each part spans a
/// full subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphFamily {
    parts: Vec<VertexSet>,
    part_of: Vec<usize>,
}

impl SubgraphFamily {
    pub fn new(graph: &DefiningGraph, parts: Vec<VertexSet>) -> Result<Self, InputError> {
        let mut part_of = vec![usize::MAX; graph.len()];
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(InputError::EmptyPart(i));
            }
            for v in p.iter() {
                if v >= graph.len() {
                    return Err(InputError::UnknownVertex(format!("#{v}")));
                }
                if part_of[v] != usize::MAX {
                    return Err(InputError::OverlappingParts(graph.name(v).to_string()));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(InputError::UncoveredVertex(graph.name(v).to_string()));
        }
        Ok(SubgraphFamily { parts, part_of })
    }

    pub fn from_names<S: AsRef<str>>(graph: &DefiningGraph, parts: &[Vec<S>]) -> Result<Self, InputError> {
        let mut sets = Vec::with_capacity(parts.len());
        for (i, p) in parts.iter().enumerate() {
            let mut set = VertexSet::EMPTY;
            for name in p {
                let v = graph
                    .index_of(name.as_ref())
                    .ok_or_else(|| InputError::UnknownVertex(name.as_ref().to_string()))?;
                if set.contains(v) {
                    return Err(InputError::OverlappingParts(name.as_ref().to_string()));
                }
                set = set.with(v);
            }
            if set.is_empty() {
                return Err(InputError::EmptyPart(i));
            }
            sets.push(set);
        }
        Self::new(graph, sets)
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> VertexSet {
        self.parts[i]
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }
}

/// An edge whose endpoints lie in distinct parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InterEdge {
    pub u: usize,
    pub v: usize,
    pub part_u: usize,
    pub part_v: usize,
    pub label: u32,
}

impl InterEdge {
    pub fn vertices(&self) -> VertexSet {
        VertexSet::pair(self.u, self.v)
    }

    pub fn shares_vertex_with(&self, other: &InterEdge) -> bool {
        self.vertices().intersects(other.vertices())
    }
}

/// A defining graph together with its subgraph family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: DefiningGraph,
    pub family: SubgraphFamily,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
    family: Vec<Vec<String>>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    u: String,
    v: String,
    m: serde_json::Value,
}

impl Instance {
    pub fn new(graph: DefiningGraph, family: SubgraphFamily) -> Self {
        Instance { graph, family }
    }

    /// Parses the JSON graph format
    /// `{"vertices": [...], "edges": [{"u":..,"v":..,"m":..}], "family": [[...]]}`.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
        let mut graph = DefiningGraph::with_vertices(&doc.vertices)?;
        for e in &doc.edges {
            let m = match &e.m {
                serde_json::Value::Number(n) => n.as_i64(),
                _ => None,
            };
            let Some(m) = m else {
                return Err(InputError::BadLabel { u: e.u.clone(), v: e.v.clone(), label: e.m.to_string() });
            };
            graph.add_edge(&e.u, &e.v, m)?;
        }
        let family = SubgraphFamily::from_names(&graph, &doc.family)?;
        Ok(Instance { graph, family })
    }

    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let doc = InstanceDoc {
            vertices: g.names().to_vec(),
            edges: g
                .edges()
                .map(|(u, v, m)| EdgeDoc { u: g.name(u).into(), v: g.name(v).into(), m: m.into() })
                .collect(),
            family: self
                .family
                .parts()
                .iter()
                .map(|p| p.iter().map(|v| g.name(v).to_string()).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("instance serializes")
    }

    /// Edges between distinct parts, in lexicographic vertex order.
    pub fn inter_edges(&self) -> Vec<InterEdge> {
        self.graph
            .edges()
            .filter_map(|(u, v, label)| {
                let (pu, pv) = (self.family.part_of(u), self.family.part_of(v));
                (pu != pv).then_some(InterEdge { u, v, part_u: pu, part_v: pv, label })
            })
            .collect()
    }

    /// Vertices lying on at least one inter-edge.
    pub fn inter_edge_vertices(&self) -> VertexSet {
        self.inter_edges().iter().fold(VertexSet::EMPTY, |acc, e| acc.union(e.vertices()))
    }

    /// An inter-edge is disjoint when it shares no vertex with any other
    /// inter-edge.
    pub fn is_disjoint_inter_edge(&self, edge: &InterEdge) -> bool {
        !self.inter_edges().iter().any(|o| o != edge && o.shares_vertex_with(edge))
    }

    pub fn find_inter_edge(&self, u: usize, v: usize) -> Option<InterEdge> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.inter_edges().into_iter().find(|e| e.u == u && e.v == v)
    }

    pub fn format_edge(&self, e: &InterEdge) -> String {
        format!("{{{},{}}}", self.graph.name(e.u), self.graph.name(e.v))
    }

    /// Every inter-edge has label at least 4.
    pub fn check_rel(&self) -> RelReport {
        let violations: Vec<InterEdge> = self.inter_edges().into_iter().filter(|e| e.label < 4).collect();
        RelReport { holds: violations.is_empty(), violations }
    }

    /// Every inter-edge that shares a vertex with another inter-edge has
    /// label at least 4; isolated inter-edges may carry any label.
    pub fn check_rel_prime(&self) -> RelReport {
        let edges = self.inter_edges();
        let violations: Vec<InterEdge> = edges
            .iter()
            .filter(|e| e.label < 4 && edges.iter().any(|o| o != *e && o.shares_vertex_with(e)))
            .copied()
            .collect();
        RelReport { holds: violations.is_empty(), violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelReport {
    pub holds: bool,
    pub violations: Vec<InterEdge>,
}

/// Tri-state flag for classes the toolkit cannot decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Yes,
    No,
    Unknown,
}

impl From<bool> for Flag {
    fn from(b: bool) -> Self {
        if b {
            Flag::Yes
        } else {
            Flag::No
        }
    }
}

/// Membership of a defining graph in the classes for which the K(π,1)
/// conjecture or acylindrical hyperbolicity was previously known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierReport {
    pub spherical: bool,
    pub affine: bool,
    pub two_dimensional: bool,
    pub locally_reducible: Flag,
    pub fc: bool,
    pub large: bool,
    pub extra_large: bool,
    pub xxl: bool,
    pub right_angled: bool,
    pub join_decomposable: bool,
    pub coxeter_type: String,
    pub notes: Vec<String>,
}

impl ClassifierReport {
    /// Whether any of the known K(π,1) classes applies (locally reducible is
    /// not decided and therefore not counted).
    pub fn known_kpi1_class(&self) -> Option<&'static str> {
        if self.spherical {
            Some("spherical")
        } else if self.affine {
            Some("affine")
        } else if self.two_dimensional {
            Some("2-dimensional")
        } else if self.fc {
            Some("FC")
        } else {
            None
        }
    }
}

/// Classifies the full graph against the known-class list.
pub fn classify_known(graph: &DefiningGraph) -> ClassifierReport {
    classify_known_on(graph, graph.vertex_set())
}

/// Classifies the full subgraph on `t`.
pub fn classify_known_on(graph: &DefiningGraph, t: VertexSet) -> ClassifierReport {
    let labels: Vec<u32> = graph
        .edges()
        .filter(|&(u, v, _)| t.contains(u) && t.contains(v))
        .map(|(_, _, m)| m)
        .collect();
    let large = labels.iter().all(|&m| m >= 3);
    let extra_large = labels.iter().all(|&m| m >= 4);
    let xxl = labels.iter().all(|&m| m >= 5);
    let right_angled = labels.iter().all(|&m| m == 2);

    let ty = coxeter::classify_type(graph, t);
    let spherical = ty.is_finite();
    let affine = ty.is_affine();

    let spherical_sets = coxeter::enumerate_spherical_subsets_within(graph, t);
    let two_dimensional = spherical_sets.iter().all(|s| s.len() <= 2);
    let fc = cliques_within(graph, t).into_iter().all(|c| coxeter::is_spherical(graph, c));
    let join_decomposable = is_join(graph, t);

    let mut notes = vec!["locally reducible: not decided (no checkable criterion)".to_string()];
    if labels.is_empty() {
        notes.push("no edges: label thresholds hold vacuously".to_string());
    }
    ClassifierReport {
        spherical,
        affine,
        two_dimensional,
        locally_reducible: Flag::Unknown,
        fc,
        large,
        extra_large,
        xxl,
        right_angled,
        join_decomposable,
        coxeter_type: ty.to_string(),
        notes,
    }
}

/// All vertex sets inducing complete subgraphs inside `t` (∅ included).
pub fn cliques_within(graph: &DefiningGraph, t: VertexSet) -> Vec<VertexSet> {
    let verts: Vec<usize> = t.iter().collect();
    let mut out = vec![VertexSet::EMPTY];
    let mut frontier = vec![VertexSet::EMPTY];
    while let Some(c) = frontier.pop() {
        let start = c.iter().last().map_or(0, |m| m + 1);
        for &v in verts.iter().filter(|&&v| v >= start) {
            if c.iter().all(|u| graph.is_edge(u, v)) {
                let next = c.with(v);
                out.push(next);
                frontier.push(next);
            }
        }
    }
    out.sort();
    out
}

/// `t` splits as a join of two non-empty subgraphs iff the complement graph on
/// `t` is disconnected.
fn is_join(graph: &DefiningGraph, t: VertexSet) -> bool {
    if t.len() < 2 {
        return false;
    }
    let start = t.iter().next().unwrap();
    let mut seen = VertexSet::singleton(start);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for u in t.iter() {
            if u != v && !seen.contains(u) && !graph.is_edge(u, v) {
                seen = seen.with(u);
                stack.push(u);
            }
        }
    }
    seen != t
}

/// Edge list grouped by label, handy for reports.
pub fn label_histogram(graph: &DefiningGraph) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for (_, _, m) in graph.edges() {
        *h.entry(m).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn parses_c3_tilde_graph() {
        let inst = instances::c3_tilde();
        assert_eq!(inst.graph.len(), 4);
        assert_eq!(inst.graph.edge_count(), 6);
        let mut labels: Vec<u32> = inst.graph.edges().map(|e| e.2).collect();
        labels.sort();
        assert_eq!(labels, vec![2, 2, 2, 3, 4, 4]);
    }

    #[test]
    fn singleton_instance_is_valid() {
        let inst = Instance::parse(r#"{"vertices":["a"],"edges":[],"family":[["a"]]}"#).unwrap();
        assert_eq!(inst.graph.len(), 1);
        assert!(inst.inter_edges().is_empty());
        assert!(inst.check_rel().holds);
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":1}],"family":[["a","b"]]}"#, "label"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":2.5}],"family":[["a","b"]]}"#, "label"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":"4"}],"family":[["a","b"]]}"#, "label"),
            (r#"{"vertices":["a","a"],"edges":[],"family":[["a"]]}"#, "duplicate"),
            (r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"c","m":3}],"family":[["a","b"]]}"#, "unknown"),
            (r#"{"vertices":["a","b"],"edges":[],"family":[["a"]]}"#, "covered"),
            (r#"{"vertices":["a","b"],"edges":[],"family":[["a","b"],["b"]]}"#, "more than one"),
            (r#"{"vertices":["a","b"],"edges":[],"family":[["a","b"],[]]}"#, "empty"),
            (r#"{"vertices":["a"],"edges":[{"u":"a","v":"a","m":3}],"family":[["a"]]}"#, "self-loop"),
            (
                r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":3},{"u":"b","v":"a","m":3}],"family":[["a","b"]]}"#,
                "parallel",
            ),
            (r#"{"vertices":["a"],"edges":[],"family":[["a"]],"extra":1}"#, "unknown field"),
        ];
        for (text, needle) in cases {
            let err = Instance::parse(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{text}: {err}");
        }
    }

    #[test]
    fn label_lookup_is_symmetric() {
        let inst = instances::c3_tilde();
        let g = &inst.graph;
        for u in 0..g.len() {
            for v in 0..g.len() {
                assert_eq!(g.label(u, v), g.label(v, u));
            }
        }
    }

    #[test]
    fn inter_edges_of_c3_tilde_join() {
        let inst = instances::c3_tilde_join(4);
        let edges = inst.inter_edges();
        assert_eq!(edges.len(), 16);
        assert!(edges.iter().all(|e| e.part_u != e.part_v && e.label == 4));
        assert!(inst.check_rel().holds);
        assert!(inst.check_rel_prime().holds);
    }

    #[test]
    fn single_part_has_no_inter_edges() {
        let mut inst = instances::c3_tilde();
        inst.family = SubgraphFamily::new(&inst.graph, vec![inst.graph.vertex_set()]).unwrap();
        assert!(inst.inter_edges().is_empty());
        assert!(inst.check_rel().holds);
    }

    #[test]
    fn one_inter_edge() {
        let inst = instances::single_edge(4);
        let e = inst.inter_edges();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].part_u, e[0].part_v, e[0].label), (0, 1, 4));
    }

    #[test]
    fn rel_failure_lists_violator() {
        let inst = instances::single_edge(3);
        let r = inst.check_rel();
        assert!(!r.holds);
        assert_eq!(r.violations.len(), 1);
        // isolated, so REL′ tolerates it
        assert!(inst.check_rel_prime().holds);
    }

    #[test]
    fn rel_prime_allows_isolated_label_two() {
        let inst = instances::single_edge(2);
        assert!(inst.check_rel_prime().holds);
    }

    #[test]
    fn rel_prime_rejects_touching_label_three() {
        let inst = Instance::parse(
            r#"{"vertices":["a","b","c"],
                "edges":[{"u":"a","v":"b","m":3},{"u":"b","v":"c","m":5}],
                "family":[["a","c"],["b"]]}"#,
        )
        .unwrap();
        let r = inst.check_rel_prime();
        assert!(!r.holds);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].label, 3);
    }

    #[test]
    fn c3_tilde_join_is_in_no_known_class() {
        let inst = instances::c3_tilde_join(4);
        let r = classify_known(&inst.graph);
        assert!(!r.spherical && !r.affine && !r.two_dimensional && !r.fc);
        assert!(!r.xxl && !r.right_angled && !r.large);
        assert_eq!(r.known_kpi1_class(), None);
        assert_eq!(r.locally_reducible, Flag::Unknown);
    }

    #[test]
    fn small_classifications() {
        let edge = instances::single_edge(3);
        assert!(classify_known(&edge.graph).spherical);
        let tri = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 3), ("b", "c", 3), ("a", "c", 3)]).unwrap();
        let r = classify_known(&tri);
        assert!(!r.spherical && r.affine);
    }

    #[test]
    fn json_round_trip() {
        let inst = instances::c3_tilde_join(5);
        let again = Instance::parse(&inst.to_json()).unwrap();
        assert_eq!(inst, again);
    }
}
