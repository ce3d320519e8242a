use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::coxeter;
use crate::graph::{DefiningGraph, Instance};
use crate::subset::VertexSet;

/// Why a subset belongs to a poset. A subset can carry several tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "part")]
pub enum Tag {
    Empty,
    Part(usize),
    InterEdge,
    InterEdgeVertex,
    Spherical,
    PartSubset(usize),
}

/// A family of vertex subsets ordered by inclusion.
///
/// Elements are kept sorted by size, then bitmask, which fixes the vertex
/// order of every derived complex and export.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubsetPoset {
    elements: Vec<VertexSet>,
    tags: Vec<BTreeSet<Tag>>,
    index: HashMap<VertexSet, usize>,
}

impl SubsetPoset {
    pub fn new() -> Self {
        Self::default()
    }

    /// A poset on the given subsets, each tagged with `tag`.
    pub fn from_sets<I: IntoIterator<Item = VertexSet>>(sets: I, tag: Tag) -> Self {
        let mut p = SubsetPoset::new();
        for s in sets {
            p.insert(s, tag);
        }
        p
    }

    pub fn insert(&mut self, set: VertexSet, tag: Tag) {
        if let Some(&i) = self.index.get(&set) {
            self.tags[i].insert(tag);
            return;
        }
        let key = (set.len(), set.0);
        let pos = self.elements.partition_point(|e| (e.len(), e.0) < key);
        self.elements.insert(pos, set);
        self.tags.insert(pos, BTreeSet::from([tag]));
        self.reindex();
    }

    /// Drops an element; used to build negative controls.
    pub fn remove(&mut self, set: VertexSet) -> bool {
        let Some(i) = self.index.get(&set).copied() else {
            return false;
        };
        self.elements.remove(i);
        self.tags.remove(i);
        self.reindex();
        true
    }

    fn reindex(&mut self) {
        self.index = self.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.index.contains_key(&set)
    }

    pub fn position(&self, set: VertexSet) -> Option<usize> {
        self.index.get(&set).copied()
    }

    pub fn elements(&self) -> &[VertexSet] {
        &self.elements
    }

    pub fn tags(&self, set: VertexSet) -> Option<&BTreeSet<Tag>> {
        self.index.get(&set).map(|&i| &self.tags[i])
    }

    pub fn has_tag(&self, set: VertexSet, tag: Tag) -> bool {
        self.tags(set).is_some_and(|t| t.contains(&tag))
    }

    /// Pairs `(i, j)` with `elements[i] ⊊ elements[j]` and nothing in between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.elements[i], self.elements[j]);
                if !a.is_proper_subset_of(b) {
                    continue;
                }
                let between = self
                    .elements
                    .iter()
                    .any(|&c| a.is_proper_subset_of(c) && c.is_proper_subset_of(b));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn union(&self, other: &SubsetPoset) -> SubsetPoset {
        let mut out = self.clone();
        for (i, &e) in other.elements.iter().enumerate() {
            for &t in &other.tags[i] {
                out.insert(e, t);
            }
        }
        out
    }
}

/// `S^ℓ`: the empty set, the parts, the inter-edges and their vertices.
pub fn build_s_ell(inst: &Instance) -> SubsetPoset {
    let mut p = SubsetPoset::new();
    p.insert(VertexSet::EMPTY, Tag::Empty);
    for (i, &part) in inst.family.parts().iter().enumerate() {
        p.insert(part, Tag::Part(i));
    }
    for e in inst.inter_edges() {
        p.insert(e.vertices(), Tag::InterEdge);
        p.insert(VertexSet::singleton(e.u), Tag::InterEdgeVertex);
        p.insert(VertexSet::singleton(e.v), Tag::InterEdgeVertex);
    }
    p
}

/// `S^f`: all spherical subsets.
pub fn build_s_f(graph: &DefiningGraph) -> SubsetPoset {
    let mut p = SubsetPoset::from_sets(coxeter::enumerate_spherical_subsets(graph), Tag::Spherical);
    p.insert(VertexSet::EMPTY, Tag::Empty);
    p
}

/// `S̄`: `S^ℓ` together with every subset of every part.
pub fn build_s_bar(inst: &Instance) -> SubsetPoset {
    let mut p = build_s_ell(inst);
    for (i, &part) in inst.family.parts().iter().enumerate() {
        for t in part.subsets() {
            p.insert(t, Tag::PartSubset(i));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn s_ell_of_single_edge() {
        let inst = instances::single_edge(4);
        let p = build_s_ell(&inst);
        assert_eq!(p.len(), 4);
        let a = VertexSet::singleton(0);
        assert!(p.has_tag(a, Tag::Part(0)));
        assert!(p.has_tag(a, Tag::InterEdgeVertex));
        assert_eq!(build_s_bar(&inst).elements(), p.elements());
    }

    #[test]
    fn c3_join_counts() {
        let inst = instances::c3_tilde_join(4);
        assert_eq!(build_s_ell(&inst).len(), 27);
        // 27 plus the 10 new subsets of each part
        assert_eq!(build_s_bar(&inst).len(), 47);
    }

    #[test]
    fn no_inter_edges() {
        let g = DefiningGraph::new(&["a", "b", "c"], &[("a", "b", 3)]).unwrap();
        let fam = crate::SubgraphFamily::from_names(&g, &[vec!["a", "b"], vec!["c"]]).unwrap();
        let inst = Instance::new(g, fam);
        let p = build_s_ell(&inst);
        assert_eq!(p.elements(), &[VertexSet::EMPTY, VertexSet::singleton(2), VertexSet::pair(0, 1)]);
    }

    #[test]
    fn s_f_of_small_graphs() {
        let g = DefiningGraph::new(&["a"], &[] as &[(&str, &str, u32)]).unwrap();
        assert_eq!(build_s_f(&g).len(), 2);
        let g = DefiningGraph::new(&["a", "b"], &[("a", "b", 4)]).unwrap();
        assert_eq!(build_s_f(&g).len(), 4);
        let c3 = instances::c3_tilde();
        let sf = build_s_f(&c3.graph);
        assert!(!sf.contains(c3.graph.vertex_set()));
        assert!(sf.elements().iter().all(|s| s.len() <= 3));
    }

    #[test]
    fn insert_keeps_order_and_merges_tags() {
        let mut p = SubsetPoset::new();
        p.insert(VertexSet::pair(0, 1), Tag::InterEdge);
        p.insert(VertexSet::singleton(3), Tag::InterEdgeVertex);
        p.insert(VertexSet::EMPTY, Tag::Empty);
        p.insert(VertexSet::singleton(3), Tag::Part(1));
        assert_eq!(p.elements()[0], VertexSet::EMPTY);
        assert_eq!(p.tags(VertexSet::singleton(3)).unwrap().len(), 2);
        assert!(p.remove(VertexSet::EMPTY));
        assert!(!p.contains(VertexSet::EMPTY));
        assert_eq!(p.position(VertexSet::singleton(3)), Some(0));
    }

    #[test]
    fn covering_pairs_skip_transitive() {
        let p = SubsetPoset::from_sets(
            [VertexSet::EMPTY, VertexSet::singleton(0), VertexSet::pair(0, 1)],
            Tag::Spherical,
        );
        assert_eq!(p.covering_pairs(), vec![(0, 1), (1, 2)]);
    }
}
