//! Weighted link graphs of the vertices of the `S^ℓ` coset complex.
//!
//! The link of the trivial coset and of `A_{s}` are finite (the latter up
//! to the symmetry of its `⟨s⟩` side) and are built outright. The links of
//! `A_i` and of an inter-edge subgroup are infinite coset graphs; they are
//! developed around the basepoint `1` using an exact word-problem engine.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::{assign_metric, build_s_ell, DerivedComplex};
use crate::error::{Error, Result};
use crate::garside::{
    DihedralArtin, Exactness, FreeGroup, Letter, WordProblemOracle, DEFAULT_ELEMENT_CAP,
};
use crate::graph::{Instance, InterEdge};
use crate::subset::VertexSet;

/// Default element budget used to pick the exponent window of a development.
pub const DEFAULT_BUDGET: usize = 200_000;
/// Largest exponent window considered when picking one automatically.
pub const MAX_AUTO_EXPONENT: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkCase {
    /// Link of `A_i`.
    Part,
    /// Link of `A_{s}` for an inter-edge vertex `s`.
    Single,
    /// Link of the subgroup of an inter-edge.
    InterEdge,
    /// Link of the trivial coset.
    Empty,
}

impl LinkCase {
    pub fn number(self) -> u8 {
        match self {
            LinkCase::Part => 1,
            LinkCase::Single => 2,
            LinkCase::InterEdge => 3,
            LinkCase::Empty => 4,
        }
    }
}

/// Identity of a link vertex, i.e. of a coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LinkVertexId {
    /// The coset `α·A_∅`, i.e. the element `α` of the centre's subgroup.
    Element { rep: String },
    /// The coset `α·A_{s}` with canonical representative `rep`.
    Coset { rep: String, generator: String },
    /// The coset `1·A_T` for `T` strictly above the centre.
    Above { subset: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkVertex {
    pub id: LinkVertexId,
    pub label: String,
    /// Side of the bipartition, 0 or 1.
    pub side: u8,
    /// Distance in syllable steps from the basepoint, for developments.
    pub depth: Option<usize>,
    /// Lies on the frontier of a truncated development.
    pub boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinkEdge {
    pub u: usize,
    pub v: usize,
    /// In units of π/8.
    pub length: u32,
}

/// How much of an infinite link a graph contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// Cycles of at most this many edges through the basepoint are
    /// contained, subject to `max_exponent`.
    pub radius: usize,
    /// Syllable exponents range over `[-max_exponent, max_exponent]`.
    pub max_exponent: u32,
    pub steps: usize,
    pub engine: String,
    /// Every cycle of the full link is represented up to symmetry.
    pub complete: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkGraph {
    pub center: String,
    pub case: LinkCase,
    pub vertices: Vec<LinkVertex>,
    pub edges: Vec<LinkEdge>,
    pub basepoint: Option<usize>,
    pub truncation: Option<Truncation>,
}

impl LinkGraph {
    pub fn edge_list(&self) -> Vec<(usize, usize, u32)> {
        self.edges.iter().map(|e| (e.u, e.v, e.length)).collect()
    }

    /// Every edge joins the two recorded sides, and the recorded sides agree
    /// with a 2-colouring computed from scratch.
    pub fn is_bipartite(&self) -> bool {
        if self.edges.iter().any(|e| self.vertices[e.u].side == self.vertices[e.v].side) {
            return false;
        }
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut colour: Vec<Option<u8>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(0);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let c = colour[x].expect("coloured");
                for &y in &adj[x] {
                    match colour[y] {
                        None => {
                            colour[y] = Some(1 - c);
                            stack.push(y);
                        }
                        Some(d) if d == c => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph \"lk {}\" {{\n", self.center.replace('"', "'"));
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if v.side == 0 { "ellipse" } else { "box" };
            let style = if v.boundary { ", style=dashed" } else { "" };
            out.push_str(&format!("  v{i} [label=\"{}\", shape={shape}{style}];\n", v.label.replace('"', "'")));
        }
        for e in &self.edges {
            out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", e.u, e.v, e.length));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("link graph serializes")
    }

    fn push_vertex(&mut self, id: LinkVertexId, label: String, side: u8) -> usize {
        self.vertices.push(LinkVertex { id, label, side, depth: None, boundary: false });
        self.vertices.len() - 1
    }
}

fn subset_names(inst: &Instance, t: VertexSet) -> Vec<String> {
    t.iter().map(|v| inst.graph.name(v).to_string()).collect()
}

fn subgroup_label(inst: &Instance, t: VertexSet) -> String {
    format!("A_{}", inst.graph.format_set(t))
}

/// Link of the trivial coset: inter-edge vertices `A_{s}` on one side, parts
/// and inter-edge subgroups on the other, joined when `{s} ⊂ T`, with the
/// triangle angle at `∅` as length.
pub fn build_link_empty(inst: &Instance) -> Result<LinkGraph> {
    let complex = DerivedComplex::new(build_s_ell(inst));
    let metric = assign_metric(&complex, inst)?;
    let mut link = LinkGraph {
        center: "1".into(),
        case: LinkCase::Empty,
        vertices: Vec::new(),
        edges: Vec::new(),
        basepoint: None,
        truncation: None,
    };
    let mut lower: Vec<VertexSet> = metric.iter().map(|s| s.chain[1]).collect();
    let mut upper: Vec<VertexSet> = metric.iter().map(|s| s.chain[2]).collect();
    for list in [&mut lower, &mut upper] {
        list.sort_by_key(|t| (t.len(), t.0));
        list.dedup();
    }
    let mut index = HashMap::new();
    for (side, list) in [(0u8, &lower), (1u8, &upper)] {
        for &t in list {
            let id = LinkVertexId::Above { subset: subset_names(inst, t) };
            index.insert(t, link.push_vertex(id, subgroup_label(inst, t), side));
        }
    }
    for s in &metric {
        link.edges.push(LinkEdge { u: index[&s.chain[1]], v: index[&s.chain[2]], length: s.angles[0] });
    }
    Ok(link)
}

/// Link of `A_{s}`: the powers `s^k`, `|k| <= powers`, against the part of
/// `s` and the inter-edges at `s`. Complete bipartite, every edge a right
/// angle.
pub fn build_link_single(inst: &Instance, s: usize, powers: usize) -> Result<LinkGraph> {
    if powers == 0 {
        return Err(Error::InvalidParameter("need at least one power on each side".into()));
    }
    let name = inst.graph.name(s).to_string();
    if !inst.inter_edge_vertices().contains(s) {
        return Err(Error::NotInterEdgeVertex(name));
    }
    let single = VertexSet::singleton(s);
    let mut above = Vec::new();
    let part = inst.family.part(inst.family.part_of(s));
    if part != single {
        above.push(part);
    }
    above.extend(inst.inter_edges().iter().map(|e| e.vertices()).filter(|e| e.contains(s)));

    let mut link = LinkGraph {
        center: subgroup_label(inst, single),
        case: LinkCase::Single,
        vertices: Vec::new(),
        edges: Vec::new(),
        basepoint: None,
        truncation: None,
    };
    let p = powers as i64;
    let mut lower = Vec::new();
    for k in -p..=p {
        let rep = match k {
            0 => "1".to_string(),
            1 => name.clone(),
            _ => format!("{name}^{k}"),
        };
        let i = link.push_vertex(LinkVertexId::Element { rep: rep.clone() }, rep, 0);
        if k == 0 {
            link.basepoint = Some(i);
        }
        if k.abs() == p {
            link.vertices[i].boundary = true;
        }
        lower.push(i);
    }
    for &t in &above {
        let j = link.push_vertex(LinkVertexId::Above { subset: subset_names(inst, t) }, subgroup_label(inst, t), 1);
        for &i in &lower {
            link.edges.push(LinkEdge { u: i, v: j, length: 4 });
        }
    }
    let complete = lower.len() >= above.len();
    link.truncation = Some(Truncation {
        radius: 4 * lower.len().min(above.len()),
        max_exponent: powers as u32,
        steps: 1,
        engine: "infinite cyclic".into(),
        complete,
        note: if complete {
            "complete bipartite; every simple cycle of the full link has an isomorphic copy here".into()
        } else {
            format!("only {} of the powers of {name}; cycles longer than the truncation may be missing", lower.len())
        },
    });
    Ok(link)
}

/// Knobs for ball developments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DevelopOptions {
    /// Cycles through the basepoint with at most this many edges are kept.
    pub radius: usize,
    /// Exponent window; picked from `budget` when `None`.
    pub max_exponent: Option<u32>,
    pub element_cap: usize,
    pub budget: usize,
}

impl DevelopOptions {
    pub fn with_radius(radius: usize) -> Self {
        DevelopOptions { radius, max_exponent: None, element_cap: DEFAULT_ELEMENT_CAP, budget: DEFAULT_BUDGET }
    }
}

/// Upper bound on the number of elements reachable in `steps` syllable
/// steps with exponents in `[-k, k]` over `rank` generators.
pub fn estimated_elements(rank: usize, steps: usize, k: u32) -> f64 {
    let choices = 2.0 * k as f64;
    let g = rank as f64;
    let mut total = 1.0;
    let mut layer = g * choices;
    for _ in 0..steps {
        total += layer;
        layer *= (g - 1.0) * choices;
    }
    total
}

/// Largest exponent window, up to [`MAX_AUTO_EXPONENT`], whose estimated
/// development fits in `budget`; at least 1.
pub fn auto_max_exponent(rank: usize, steps: usize, budget: usize) -> u32 {
    (1..=MAX_AUTO_EXPONENT)
        .take_while(|&k| estimated_elements(rank, steps, k) <= budget as f64)
        .last()
        .unwrap_or(1)
}

/// Develops the coset link of `⟨generators⟩` around `1`.
///
/// Element vertices are the group elements reached from `1` in at most
/// `radius / 4` syllable steps `g ↦ g·s^k` with `0 < |k| <= max_exponent`;
/// coset vertices are all cosets `g⟨s⟩` of those elements. This is the full
/// subgraph of the link on these vertices, and it contains every simple
/// cycle through `1` with at most `radius` edges whose syllable exponents
/// stay in the window: such a cycle alternates element and coset vertices
/// and never strays more than a quarter of its length from `1`.
pub fn develop<O: WordProblemOracle>(
    oracle: &O,
    generator_names: &[String],
    edge_length: u32,
    opts: DevelopOptions,
    center: String,
    case: LinkCase,
) -> Result<LinkGraph> {
    if oracle.exactness() != Exactness::Exact {
        return Err(Error::InvalidParameter(format!("{} cannot decide coset identity", oracle.name())));
    }
    if opts.radius == 0 {
        return Err(Error::InvalidParameter("development radius must be at least 1".into()));
    }
    let rank = oracle.rank();
    assert_eq!(rank, generator_names.len());
    let steps = opts.radius / 4;
    let k_max = opts.max_exponent.unwrap_or_else(|| auto_max_exponent(rank, steps, opts.budget));
    if k_max == 0 {
        return Err(Error::InvalidParameter("exponent window must be at least 1".into()));
    }

    // elements with their depth and the generators of the syllables that
    // reach them at that depth
    let mut elements: Vec<(O::Element, usize, u64)> = vec![(oracle.identity(), 0, 0)];
    let mut index: HashMap<O::Element, usize> = HashMap::from([(oracle.identity(), 0)]);
    let mut layer_start = 0;
    for depth in 0..steps {
        let layer_end = elements.len();
        for i in layer_start..layer_end {
            let (g, _, mask) = elements[i].clone();
            for gen in 0..rank {
                if mask == 1 << gen {
                    continue;
                }
                for sign in [false, true] {
                    let mut h = g.clone();
                    for _ in 0..k_max {
                        oracle.mul_letter(&mut h, Letter { generator: gen as u8, inverse: sign });
                        match index.get(&h) {
                            Some(&j) => {
                                if elements[j].1 == depth + 1 {
                                    elements[j].2 |= 1 << gen;
                                }
                            }
                            None => {
                                if elements.len() >= opts.element_cap {
                                    return Err(Error::ResourceLimit { cap: opts.element_cap, partial: elements.len() });
                                }
                                index.insert(h.clone(), elements.len());
                                elements.push((h.clone(), depth + 1, 1 << gen));
                            }
                        }
                    }
                }
            }
        }
        layer_start = layer_end;
    }

    let mut link = LinkGraph { center, case, vertices: Vec::new(), edges: Vec::new(), basepoint: Some(0), truncation: None };
    for (g, depth, _) in &elements {
        let rep = oracle.describe(g);
        let i = link.push_vertex(LinkVertexId::Element { rep: rep.clone() }, rep, 0);
        link.vertices[i].depth = Some(*depth);
        link.vertices[i].boundary = *depth == steps;
    }
    let mut cosets: HashMap<(O::Element, usize), usize> = HashMap::new();
    for (i, (g, depth, _)) in elements.iter().enumerate() {
        for (gen, gname) in generator_names.iter().enumerate() {
            let rep = oracle.coset_rep(g, gen as u8);
            let j = match cosets.get(&(rep.clone(), gen)) {
                Some(&j) => j,
                None => {
                    let r = oracle.describe(&rep);
                    let label = format!("{r}·A_{{{gname}}}");
                    let j = link.push_vertex(LinkVertexId::Coset { rep: r, generator: gname.clone() }, label, 1);
                    link.vertices[j].depth = Some(*depth);
                    link.vertices[j].boundary = *depth == steps;
                    cosets.insert((rep, gen), j);
                    j
                }
            };
            link.edges.push(LinkEdge { u: i, v: j, length: edge_length });
        }
    }
    link.truncation = Some(Truncation {
        radius: opts.radius,
        max_exponent: k_max,
        steps,
        engine: oracle.name(),
        complete: false,
        note: format!(
            "contains every simple cycle through 1 with at most {} edges whose syllable exponents lie in [-{k_max}, {k_max}]",
            opts.radius
        ),
    });
    Ok(link)
}

/// Which exact engine covers `A_i`, if any.
pub enum PartEngine {
    Free(FreeGroup),
    Dihedral(DihedralArtin),
}

pub fn part_engine(inst: &Instance, part: usize) -> Result<PartEngine> {
    let t = inst.family.part(part);
    let verts: Vec<usize> = t.iter().collect();
    let names: Vec<String> = verts.iter().map(|&v| inst.graph.name(v).to_string()).collect();
    let edges: Vec<(usize, usize, u32)> =
        inst.graph.edges().filter(|&(u, v, _)| t.contains(u) && t.contains(v)).collect();
    match (verts.len(), edges.as_slice()) {
        (_, []) => Ok(PartEngine::Free(FreeGroup::new(names))),
        (2, [(_, _, m)]) => Ok(PartEngine::Dihedral(DihedralArtin::with_names(*m, &names[0], &names[1])?)),
        _ => Err(Error::UnsupportedPart {
            part,
            reason: format!(
                "{} vertices and {} edges; only edgeless parts and single edges have an exact engine",
                verts.len(),
                edges.len()
            ),
        }),
    }
}

/// Develops the link of `A_i`: elements of `A_i` against the cosets
/// `α·A_{s}`, `s ∈ S_i`, every edge π/4.
pub fn develop_link_part(inst: &Instance, part: usize, opts: DevelopOptions) -> Result<LinkGraph> {
    if part >= inst.family.len() {
        return Err(Error::InvalidParameter(format!("no part {part}")));
    }
    let t = inst.family.part(part);
    let names: Vec<String> = t.iter().map(|v| inst.graph.name(v).to_string()).collect();
    let center = subgroup_label(inst, t);
    match part_engine(inst, part)? {
        PartEngine::Free(f) => develop(&f, &names, 2, opts, center, LinkCase::Part),
        PartEngine::Dihedral(d) => develop(&d, &names, 2, opts, center, LinkCase::Part),
    }
}

/// Edge length in the link of an inter-edge subgroup: π/4 for a disjoint
/// inter-edge, π/8 otherwise.
pub fn inter_edge_link_length(inst: &Instance, edge: &InterEdge) -> u32 {
    if inst.is_disjoint_inter_edge(edge) {
        2
    } else {
        1
    }
}

/// Develops the link of `A_{s_i, s_j}` for an inter-edge `{s_i, s_j}`.
pub fn develop_link_interedge(inst: &Instance, u: usize, v: usize, opts: DevelopOptions) -> Result<LinkGraph> {
    let edge = inst
        .find_inter_edge(u, v)
        .ok_or_else(|| Error::NotInterEdge(inst.graph.name(u).into(), inst.graph.name(v).into()))?;
    let names = [inst.graph.name(edge.u).to_string(), inst.graph.name(edge.v).to_string()];
    let oracle = DihedralArtin::with_names(edge.label, &names[0], &names[1])?;
    develop(
        &oracle,
        &names,
        inter_edge_link_length(inst, &edge),
        opts,
        subgroup_label(inst, edge.vertices()),
        LinkCase::InterEdge,
    )
}

/// Summary used by reports that do not need the whole graph.
pub fn summary(link: &LinkGraph) -> Value {
    json!({
        "center": link.center,
        "case": link.case.number(),
        "vertices": link.vertices.len(),
        "edges": link.edges.len(),
        "truncation": link.truncation,
    })
}
