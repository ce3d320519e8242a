//! Finite and affine Coxeter type recognition for vertex subsets.
//!
//! Two independent routes decide the type of `W_T`: a diagram table lookup
//! ([`classify_type`]) and the signature of the cosine matrix
//! ([`definiteness_oracle`]). Missing edges of the defining graph carry
//! `m = ∞`, which is a diagram edge labeled ∞.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DefiningGraph;
use crate::subset::VertexSet;

/// Default tolerance for eigenvalue sign decisions.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Symmetric Coxeter matrix of a vertex subset; diagonal 1, `∞` for
/// non-adjacent pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub vertices: Vec<usize>,
    pub entries: Vec<Vec<Order>>,
}

impl CoxeterMatrix {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `B[s][t] = -cos(π / m(s,t))`, with `-1` for `m = ∞`.
    pub fn cosine_matrix(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| match self.entries[i][j] {
            Order::Finite(1) => 1.0,
            Order::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            Order::Infinite => -1.0,
        })
    }
}

pub fn coxeter_matrix(graph: &DefiningGraph, t: VertexSet) -> Result<CoxeterMatrix> {
    if let Some(v) = t.iter().find(|&v| v >= graph.len()) {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    let vertices: Vec<usize> = t.iter().collect();
    let entries = vertices
        .iter()
        .map(|&s| {
            vertices
                .iter()
                .map(|&u| {
                    if s == u {
                        Order::Finite(1)
                    } else {
                        graph.label(s, u).map_or(Order::Infinite, Order::Finite)
                    }
                })
                .collect()
        })
        .collect();
    Ok(CoxeterMatrix { vertices, entries })
}

pub fn coxeter_matrix_by_names(graph: &DefiningGraph, names: &[&str]) -> Result<CoxeterMatrix> {
    let mut t = VertexSet::EMPTY;
    for n in names {
        t = t.with(graph.index_of(n).ok_or_else(|| Error::UnknownVertex(n.to_string()))?);
    }
    coxeter_matrix(graph, t)
}

/// Connected Coxeter diagram types recognized by the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
    AffineA(usize),
    AffineB(usize),
    AffineC(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    AffineF4,
    AffineG2,
}

impl ComponentType {
    pub fn is_finite(self) -> bool {
        use ComponentType::*;
        matches!(self, A(_) | B(_) | D(_) | E6 | E7 | E8 | F4 | H3 | H4 | I2(_))
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ComponentType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => write!(f, "E6"),
            E7 => write!(f, "E7"),
            E8 => write!(f, "E8"),
            F4 => write!(f, "F4"),
            H3 => write!(f, "H3"),
            H4 => write!(f, "H4"),
            I2(m) => write!(f, "I2({m})"),
            AffineA(n) => write!(f, "A~{n}"),
            AffineB(n) => write!(f, "B~{n}"),
            AffineC(n) => write!(f, "C~{n}"),
            AffineD(n) => write!(f, "D~{n}"),
            AffineE6 => write!(f, "E~6"),
            AffineE7 => write!(f, "E~7"),
            AffineE8 => write!(f, "E~8"),
            AffineF4 => write!(f, "F~4"),
            AffineG2 => write!(f, "G~2"),
        }
    }
}

/// Type of `W_T`: finite or affine with a component decomposition, or
/// neither.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "components", rename_all = "lowercase")]
pub enum CoxeterType {
    Finite(Vec<ComponentType>),
    Affine(Vec<ComponentType>),
    Neither,
}

impl CoxeterType {
    pub fn is_finite(&self) -> bool {
        matches!(self, CoxeterType::Finite(_))
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, CoxeterType::Affine(_))
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |c: &[ComponentType]| c.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" x ");
        match self {
            CoxeterType::Finite(c) if c.is_empty() => write!(f, "finite (trivial)"),
            CoxeterType::Finite(c) => write!(f, "finite {}", join(c)),
            CoxeterType::Affine(c) => write!(f, "affine {}", join(c)),
            CoxeterType::Neither => write!(f, "neither finite nor affine"),
        }
    }
}

/// A Coxeter diagram on a subset: nodes are vertices of `t`, joined when
/// `m >= 3` (including `m = ∞`).
struct Diagram<'a> {
    graph: &'a DefiningGraph,
}

impl Diagram<'_> {
    fn order(&self, u: usize, v: usize) -> Order {
        self.graph.label(u, v).map_or(Order::Infinite, Order::Finite)
    }

    fn joined(&self, u: usize, v: usize) -> bool {
        u != v && self.order(u, v) != Order::Finite(2)
    }

    fn components(&self, t: VertexSet) -> Vec<VertexSet> {
        let mut rest = t;
        let mut out = Vec::new();
        while let Some(start) = rest.iter().next() {
            let mut comp = VertexSet::singleton(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in rest.iter() {
                    if !comp.contains(u) && self.joined(u, v) {
                        comp = comp.with(u);
                        stack.push(u);
                    }
                }
            }
            rest = VertexSet(rest.0 & !comp.0);
            out.push(comp);
        }
        out
    }

    /// Label of a diagram edge as an integer, ∞ encoded as `u32::MAX`.
    fn weight(&self, u: usize, v: usize) -> u32 {
        match self.order(u, v) {
            Order::Finite(m) => m,
            Order::Infinite => u32::MAX,
        }
    }

    fn classify_component(&self, c: VertexSet) -> Option<ComponentType> {
        use ComponentType::*;
        let verts: Vec<usize> = c.iter().collect();
        let k = verts.len();
        if k == 1 {
            return Some(A(1));
        }
        let edges: Vec<(usize, usize, u32)> = verts
            .iter()
            .enumerate()
            .flat_map(|(i, &u)| verts[i + 1..].iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| self.joined(u, v))
            .map(|(u, v)| (u, v, self.weight(u, v)))
            .collect();
        if k == 2 {
            let m = edges[0].2;
            return if m == u32::MAX { Some(AffineA(1)) } else { Some(I2(m)) };
        }
        if edges.iter().any(|e| e.2 == u32::MAX) {
            return None;
        }
        let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
        let all_three = edges.iter().all(|e| e.2 == 3);

        if edges.len() == k {
            // one cycle: only Ã_{k-1}
            return (all_three && verts.iter().all(|&v| degree(v) == 2)).then_some(AffineA(k - 1));
        }
        if edges.len() > k {
            return None;
        }
        // tree
        let max_deg = verts.iter().map(|&v| degree(v)).max().unwrap_or(0);
        let branch: Vec<usize> = verts.iter().copied().filter(|&v| degree(v) >= 3).collect();
        if max_deg >= 5 {
            return None;
        }
        if max_deg == 4 {
            return (k == 5 && all_three).then_some(AffineD(4));
        }
        let label = |u: usize, v: usize| self.weight(u, v);
        match branch.len() {
            0 => {
                let path = self.path_order(&verts, &edges);
                let labels: Vec<u32> = path.windows(2).map(|w| label(w[0], w[1])).collect();
                classify_path(&labels)
            }
            1 => {
                let center = branch[0];
                // arms as (length, labels from the center outward)
                let mut arms: Vec<Vec<u32>> = Vec::new();
                for &(a, b, _) in edges.iter().filter(|e| e.0 == center || e.1 == center) {
                    let first = if a == center { b } else { a };
                    let mut arm = vec![label(center, first)];
                    let (mut prev, mut cur) = (center, first);
                    loop {
                        let next = verts.iter().copied().find(|&w| w != prev && w != cur && self.joined(cur, w));
                        match next {
                            Some(w) => {
                                arm.push(label(cur, w));
                                prev = cur;
                                cur = w;
                            }
                            None => break,
                        }
                    }
                    arms.push(arm);
                }
                arms.sort_by_key(|a| a.len());
                classify_fork(&arms)
            }
            2 => {
                // D̃_n: two branch points, each carrying two leaves
                let leaves = verts.iter().filter(|&&v| degree(v) == 1).count();
                let leaf_on_branch = verts
                    .iter()
                    .filter(|&&v| degree(v) == 1)
                    .all(|&v| branch.iter().any(|&b| self.joined(v, b)));
                (all_three && leaves == 4 && leaf_on_branch && k >= 6).then_some(AffineD(k - 1))
            }
            _ => None,
        }
    }

    fn path_order(&self, verts: &[usize], edges: &[(usize, usize, u32)]) -> Vec<usize> {
        let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
        let start = verts.iter().copied().find(|&v| degree(v) == 1).expect("path has an end");
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = verts.iter().copied().find(|&w| w != prev && w != cur && self.joined(cur, w)) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        path
    }
}

/// Path diagram with `labels.len() + 1` nodes.
fn classify_path(labels: &[u32]) -> Option<ComponentType> {
    use ComponentType::*;
    let k = labels.len() + 1;
    let non_three: Vec<(usize, u32)> = labels.iter().copied().enumerate().filter(|&(_, m)| m != 3).collect();
    let last = labels.len() - 1;
    match non_three.as_slice() {
        [] => Some(A(k)),
        [(i, 4)] if *i == 0 || *i == last => Some(B(k)),
        [(1, 4)] if k == 4 => Some(F4),
        [(i, 4)] if k == 5 && (*i == 2 && labels[1] == 3 || *i == 1 && labels[2] == 3) => {
            // 3,3,4,3 read from either end
            let lab: Vec<u32> = if *i == 2 { labels.to_vec() } else { labels.iter().rev().copied().collect() };
            (lab == [3, 3, 4, 3]).then_some(AffineF4)
        }
        [(i, 5)] if (*i == 0 || *i == last) && k == 3 => Some(H3),
        [(i, 5)] if (*i == 0 || *i == last) && k == 4 => Some(H4),
        [(i, 6)] if (*i == 0 || *i == last) && k == 3 => Some(AffineG2),
        [(0, 4), (j, 4)] if *j == last => Some(AffineC(k - 1)),
        _ => None,
    }
}

/// Star with a single branch node; `arms` sorted by length, labels listed
/// from the center outward.
fn classify_fork(arms: &[Vec<u32>]) -> Option<ComponentType> {
    use ComponentType::*;
    if arms.len() != 3 {
        return None;
    }
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    let non_three: Vec<(usize, usize)> = arms
        .iter()
        .enumerate()
        .flat_map(|(ai, a)| a.iter().enumerate().filter(|(_, &m)| m != 3).map(move |(pos, _)| (ai, pos)))
        .collect();
    if non_three.is_empty() {
        return match lens.as_slice() {
            [1, 1, r] => Some(D(r + 3)),
            [1, 2, 2] => Some(E6),
            [1, 2, 3] => Some(E7),
            [1, 2, 4] => Some(E8),
            [2, 2, 2] => Some(AffineE6),
            [1, 3, 3] => Some(AffineE7),
            [1, 2, 5] => Some(AffineE8),
            _ => None,
        };
    }
    // B̃_n: a D-type fork whose long arm ends in a 4
    if let ([1, 1, r], [(ai, pos)]) = (lens.as_slice(), non_three.as_slice()) {
        let arm = &arms[*ai];
        if arm[*pos] == 4 && *pos == arm.len() - 1 && arm.len() == *r {
            return Some(AffineB(r + 2));
        }
    }
    None
}

/// Table classification of `W_T`. The empty set is finite (trivial group).
pub fn classify_type(graph: &DefiningGraph, t: VertexSet) -> CoxeterType {
    let d = Diagram { graph };
    let mut comps = Vec::new();
    for c in d.components(t) {
        match d.classify_component(c) {
            Some(ty) => comps.push(ty),
            None => return CoxeterType::Neither,
        }
    }
    if comps.iter().all(|c| c.is_finite()) {
        CoxeterType::Finite(comps)
    } else {
        CoxeterType::Affine(comps)
    }
}

/// Whether `W_T` is finite. Callers treat `∅` as spherical too.
pub fn is_spherical(graph: &DefiningGraph, t: VertexSet) -> bool {
    if t.is_empty() {
        return true;
    }
    // any missing edge puts an ∞ in the component, never finite
    let verts: Vec<usize> = t.iter().collect();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if !graph.is_edge(u, v) {
                return false;
            }
        }
    }
    classify_type(graph, t).is_finite()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signature {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub signature: Signature,
    pub eigenvalues: Vec<f64>,
    /// An eigenvalue sits close to the decision boundary without crossing
    /// the tolerance; the table classification is authoritative then.
    pub low_confidence: bool,
}

/// Signature of the cosine matrix of `T`, decided by its eigenvalues.
pub fn definiteness_oracle(graph: &DefiningGraph, t: VertexSet, tolerance: f64) -> Result<OracleVerdict> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")));
    }
    if t.is_empty() {
        return Err(Error::InvalidParameter("definiteness oracle needs a non-empty subset".into()));
    }
    let b = coxeter_matrix(graph, t)?.cosine_matrix();
    Ok(signature_of(b, tolerance))
}

pub fn signature_of(b: DMatrix<f64>, tolerance: f64) -> OracleVerdict {
    let mut eigenvalues: Vec<f64> = b.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.total_cmp(b));
    let min = eigenvalues[0];
    let signature = if min > tolerance {
        Signature::PositiveDefinite
    } else if min >= -tolerance {
        Signature::PositiveSemidefinite
    } else {
        Signature::Indefinite
    };
    let band = tolerance.sqrt().max(tolerance * 1e3);
    let low_confidence = eigenvalues.iter().any(|&l| l.abs() > tolerance && l.abs() < band);
    OracleVerdict { signature, eigenvalues, low_confidence }
}

/// All spherical subsets of the whole vertex set, `∅` included.
pub fn enumerate_spherical_subsets(graph: &DefiningGraph) -> Vec<VertexSet> {
    enumerate_spherical_subsets_within(graph, graph.vertex_set())
}

/// All spherical subsets of `within`, sorted by size then bitmask.
///
/// Spherical subsets are downward closed, so the search only extends sets
/// that are already spherical.
pub fn enumerate_spherical_subsets_within(graph: &DefiningGraph, within: VertexSet) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::EMPTY];
    let mut stack = vec![VertexSet::EMPTY];
    while let Some(s) = stack.pop() {
        let start = s.iter().last().map_or(0, |m| m + 1);
        for v in within.iter().filter(|&v| v >= start) {
            // cheap prefilter: a new vertex must be adjacent to everything
            if !s.iter().all(|u| graph.is_edge(u, v)) {
                continue;
            }
            let next = s.with(v);
            if is_spherical(graph, next) {
                out.push(next);
                stack.push(next);
            }
        }
    }
    out.sort_by_key(|s| (s.len(), s.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn graph(edges: &[(&str, &str, u32)], verts: &[&str]) -> DefiningGraph {
        DefiningGraph::new(verts, edges).unwrap()
    }

    fn all(g: &DefiningGraph) -> VertexSet {
        g.vertex_set()
    }

    #[test]
    fn coxeter_matrix_entries() {
        let g = graph(&[("a", "b", 4)], &["a", "b", "c"]);
        let m = coxeter_matrix_by_names(&g, &["a"]).unwrap();
        assert_eq!(m.entries, vec![vec![Order::Finite(1)]]);
        let m = coxeter_matrix_by_names(&g, &["a", "b"]).unwrap();
        assert_eq!(m.entries[0][1], Order::Finite(4));
        let m = coxeter_matrix_by_names(&g, &["a", "c"]).unwrap();
        assert_eq!(m.entries[0][1], Order::Infinite);
        assert!(matches!(coxeter_matrix_by_names(&g, &["z"]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn spherical_basics() {
        let g = graph(&[("a", "b", 7)], &["a", "b"]);
        assert!(is_spherical(&g, VertexSet::singleton(0)));
        assert!(is_spherical(&g, all(&g)));
        let h3 = graph(&[("a", "b", 2), ("b", "c", 3), ("a", "c", 5)], &["a", "b", "c"]);
        assert!(is_spherical(&h3, all(&h3)));
        assert_eq!(classify_type(&h3, all(&h3)), CoxeterType::Finite(vec![ComponentType::H3]));
        let a2t = graph(&[("a", "b", 3), ("b", "c", 3), ("a", "c", 3)], &["a", "b", "c"]);
        assert!(!is_spherical(&a2t, all(&a2t)));
        assert_eq!(classify_type(&a2t, all(&a2t)), CoxeterType::Affine(vec![ComponentType::AffineA(2)]));
    }

    #[test]
    fn c3_tilde_is_affine() {
        let inst = instances::c3_tilde();
        assert_eq!(
            classify_type(&inst.graph, all(&inst.graph)),
            CoxeterType::Affine(vec![ComponentType::AffineC(3)])
        );
    }

    #[test]
    fn path_a3_and_commuting_pair() {
        let g = graph(&[("a", "b", 3), ("b", "c", 3), ("a", "c", 2)], &["a", "b", "c"]);
        assert_eq!(classify_type(&g, all(&g)), CoxeterType::Finite(vec![ComponentType::A(3)]));
        // without the commuting edge a and c generate a free product
        let g = graph(&[("a", "b", 3), ("b", "c", 3)], &["a", "b", "c"]);
        assert_eq!(classify_type(&g, all(&g)), CoxeterType::Neither);
        let g = graph(&[("a", "b", 2)], &["a", "b"]);
        assert_eq!(
            classify_type(&g, all(&g)),
            CoxeterType::Finite(vec![ComponentType::A(1), ComponentType::A(1)])
        );
    }

    #[test]
    fn non_adjacent_pair_is_infinite_dihedral() {
        let g = graph(&[], &["a", "b"]);
        assert!(!is_spherical(&g, all(&g)));
        assert_eq!(classify_type(&g, all(&g)), CoxeterType::Affine(vec![ComponentType::AffineA(1)]));
    }

    #[test]
    fn oracle_examples() {
        let g = graph(&[("a", "b", 2), ("b", "c", 3), ("a", "c", 3)], &["a", "b", "c"]);
        let v = definiteness_oracle(&g, VertexSet::singleton(0), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(v.signature, Signature::PositiveDefinite);
        let v = definiteness_oracle(&g, VertexSet::pair(0, 1), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(v.signature, Signature::PositiveDefinite);
        assert!((v.eigenvalues[0] - 1.0).abs() < 1e-12);
        let a2t = graph(&[("a", "b", 3), ("b", "c", 3), ("a", "c", 3)], &["a", "b", "c"]);
        let v = definiteness_oracle(&a2t, all(&a2t), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(v.signature, Signature::PositiveSemidefinite);
        let expect = [0.0, 1.5, 1.5];
        for (l, e) in v.eigenvalues.iter().zip(expect) {
            assert!((l - e).abs() < 1e-9, "{:?}", v.eigenvalues);
        }
        assert!(definiteness_oracle(&a2t, all(&a2t), 0.0).is_err());
    }

    #[test]
    fn enumerate_single_edge() {
        let g = graph(&[("a", "b", 4)], &["a", "b"]);
        assert_eq!(enumerate_spherical_subsets(&g).len(), 4);
    }

    #[test]
    fn enumerate_edgeless_is_singletons() {
        let g = graph(&[], &["a", "b", "c", "d"]);
        let s = enumerate_spherical_subsets(&g);
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|t| t.len() <= 1));
    }

    #[test]
    fn enumerate_c3_tilde_matches_exhaustive_oracle() {
        let inst = instances::c3_tilde();
        let g = &inst.graph;
        let found = enumerate_spherical_subsets(g);
        let mut brute: Vec<VertexSet> = all(g)
            .subsets()
            .filter(|t| {
                t.is_empty()
                    || definiteness_oracle(g, *t, DEFAULT_TOLERANCE).unwrap().signature == Signature::PositiveDefinite
            })
            .collect();
        brute.sort_by_key(|s| (s.len(), s.0));
        assert_eq!(found, brute);
        assert!(!found.contains(&all(g)));
        assert_eq!(found.iter().filter(|t| t.len() == 3).count(), 4);
    }

    #[test]
    fn finite_table_spot_checks() {
        use ComponentType::*;
        let cases: Vec<(Vec<u32>, Option<ComponentType>)> = vec![
            (vec![3, 3, 3], Some(A(4))),
            (vec![4, 3, 3], Some(B(4))),
            (vec![3, 3, 4], Some(B(4))),
            (vec![3, 4, 3], Some(F4)),
            (vec![5, 3, 3], Some(H4)),
            (vec![5, 3], Some(H3)),
            (vec![6, 3], Some(AffineG2)),
            (vec![4, 4], Some(AffineC(2))),
            (vec![4, 3, 4], Some(AffineC(3))),
            (vec![3, 3, 4, 3], Some(AffineF4)),
            (vec![3, 5, 3], None),
            (vec![4, 4, 3], None),
        ];
        for (labels, want) in cases {
            assert_eq!(classify_path(&labels), want, "{labels:?}");
        }
    }
}
