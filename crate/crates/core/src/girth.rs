//! Shortest embedded cycles in weighted link graphs and certification of
//! the link condition (every embedded loop has length at least 2π).

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Instance;
use crate::link::{self, DevelopOptions, LinkCase, LinkGraph, DEFAULT_BUDGET};
use crate::par::{self, ExecMode};
use crate::garside::DEFAULT_ELEMENT_CAP;
use crate::TWO_PI_UNITS;

/// A simple cycle, listed without repeating the first vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub length: u64,
}

struct Adjacency {
    adj: Vec<Vec<(usize, u32)>>,
}

impl Adjacency {
    fn new(n: usize, edges: &[(usize, usize, u32)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            assert!(w > 0, "edge lengths must be positive");
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        Adjacency { adj }
    }

    /// Dijkstra from `source`, skipping the edge `{skip.0, skip.1}`; stops
    /// once `target` is settled or distances reach `bound`.
    fn dijkstra(
        &self,
        source: usize,
        target: Option<usize>,
        skip: Option<(usize, usize)>,
        bound: u64,
    ) -> (Vec<u64>, Vec<usize>) {
        let n = self.adj.len();
        let mut dist = vec![u64::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0u64, source)));
        while let Some(Reverse((d, x))) = heap.pop() {
            if d > dist[x] {
                continue;
            }
            if Some(x) == target || d >= bound {
                break;
            }
            for &(y, w) in &self.adj[x] {
                if skip == Some((x, y)) || skip == Some((y, x)) {
                    continue;
                }
                let nd = d + w as u64;
                if nd < dist[y] || (nd == dist[y] && x < parent[y]) {
                    dist[y] = nd;
                    parent[y] = x;
                    heap.push(Reverse((nd, y)));
                }
            }
        }
        (dist, parent)
    }
}

fn path_to(parent: &[usize], source: usize, target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut x = target;
    while x != source {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// Minimum-length simple cycle of a graph with positive integer lengths.
///
/// For each edge `{u, v}` the shortest `u`–`v` path avoiding it closes the
/// shortest cycle through that edge; the minimum over all edges is the
/// girth. Edges are processed in parallel under [`ExecMode::Parallel`]; ties
/// go to the lowest edge index so the result does not depend on scheduling.
pub fn shortest_embedded_cycle(n: usize, edges: &[(usize, usize, u32)], mode: ExecMode) -> Option<Cycle> {
    let adj = Adjacency::new(n, edges);
    let per_edge = par::map_range(mode, edges.len(), |i| {
        let (u, v, w) = edges[i];
        let (dist, _) = adj.dijkstra(u, Some(v), Some((u, v)), u64::MAX);
        (dist[v] != u64::MAX).then(|| dist[v] + w as u64)
    });
    let (best, length) = per_edge
        .iter()
        .enumerate()
        .filter_map(|(i, l)| l.map(|l| (i, l)))
        .min_by_key(|&(i, l)| (l, i))?;
    let (u, v, _) = edges[best];
    let (_, parent) = adj.dijkstra(u, Some(v), Some((u, v)), u64::MAX);
    Some(Cycle { vertices: path_to(&parent, u, v), length })
}

/// Minimum-length simple cycle through `base`.
///
/// One shortest-path tree from `base`: every tree vertex belongs to the
/// branch of its ancestor adjacent to `base`. A non-tree edge `{x, y}` with
/// `x`, `y` in different branches (or with `x = base`) closes a simple cycle
/// of length `d(x) + w + d(y)`, and the shortest cycle through `base` always
/// contains such an edge, so the minimum over them is exact.
pub fn shortest_cycle_through(n: usize, edges: &[(usize, usize, u32)], base: usize) -> Option<Cycle> {
    let adj = Adjacency::new(n, edges);
    let (dist, parent) = adj.dijkstra(base, None, None, u64::MAX);
    let mut branch = vec![usize::MAX; n];
    let mut order: Vec<usize> = (0..n).filter(|&x| dist[x] != u64::MAX && x != base).collect();
    order.sort_by_key(|&x| (dist[x], x));
    for &x in &order {
        branch[x] = if parent[x] == base { x } else { branch[parent[x]] };
    }
    let mut best: Option<(u64, usize, usize)> = None;
    for &(x, y, w) in edges {
        if dist[x] == u64::MAX || dist[y] == u64::MAX {
            continue;
        }
        let tree_edge = parent[x] == y || parent[y] == x;
        let valid = if x == base || y == base { !tree_edge } else { branch[x] != branch[y] };
        if !valid {
            continue;
        }
        let len = dist[x] + w as u64 + dist[y];
        let key = (len, x.min(y), x.max(y));
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    let (length, x, y) = best?;
    let (x, y) = if y == base { (y, x) } else { (x, y) };
    let mut vertices = path_to(&parent, base, y);
    if x != base {
        // base .. x, then y .. back towards base
        let mut there = path_to(&parent, base, x);
        vertices.remove(0);
        vertices.reverse();
        there.extend(vertices);
        vertices = there;
    }
    Some(Cycle { vertices, length })
}

/// Length of a closed walk along `vertices`, or `None` if a step is not an
/// edge. Recomputes from the edge list, independent of the search.
pub fn cycle_length(edges: &[(usize, usize, u32)], vertices: &[usize]) -> Option<u64> {
    let mut lookup = BTreeMap::new();
    for &(u, v, w) in edges {
        lookup.insert((u.min(v), u.max(v)), w);
    }
    let k = vertices.len();
    (0..k)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            lookup.get(&(a.min(b), a.max(b))).map(|&w| w as u64)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// A finite link, checked in full.
    PassComplete,
    /// A truncated development: no short cycle within the stated radius.
    PassWithinRadius,
    /// No exact engine for this part; the 8-edge bound for part links is assumed, not checked.
    Trusted,
    Fail,
}

/// Result of checking one link.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCertificate {
    pub vertex_type: String,
    pub case: u8,
    /// Labels of the minimal cycle's vertices, in order.
    pub minimal_cycle: Option<Vec<String>>,
    pub cycle_edges: Option<usize>,
    pub length_units: Option<u64>,
    pub status: Status,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub note: String,
}

/// Checks one link graph against the 2π threshold.
pub fn certify_link(link: &LinkGraph, mode: ExecMode) -> CycleCertificate {
    let edges = link.edge_list();
    let n = link.vertices.len();
    let cycle = match (link.case, link.basepoint) {
        // the group acts transitively on the element vertices of a
        // development, so every cycle has a translate through the basepoint
        (LinkCase::Part | LinkCase::InterEdge, Some(b)) => shortest_cycle_through(n, &edges, b),
        _ => shortest_embedded_cycle(n, &edges, mode),
    };
    let complete = link.truncation.as_ref().is_none_or(|t| t.complete);
    let status = match &cycle {
        Some(c) if c.length < TWO_PI_UNITS as u64 => Status::Fail,
        _ if complete => Status::PassComplete,
        _ => Status::PassWithinRadius,
    };
    let note = match (&link.truncation, &cycle) {
        (Some(t), _) if !t.complete => format!("{}; exponent window {}, {} syllable steps", t.note, t.max_exponent, t.steps),
        (Some(t), _) => t.note.clone(),
        (None, None) => "finite link, acyclic".into(),
        (None, Some(_)) => "finite link, checked exhaustively".into(),
    };
    CycleCertificate {
        vertex_type: link.center.clone(),
        case: link.case.number(),
        minimal_cycle: cycle.as_ref().map(|c| c.vertices.iter().map(|&v| link.vertices[v].label.clone()).collect()),
        cycle_edges: cycle.as_ref().map(|c| c.vertices.len()),
        length_units: cycle.as_ref().map(|c| c.length),
        status,
        link_vertices: n,
        link_edges: edges.len(),
        note,
    }
}

/// Knobs for [`certify_link_condition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub radius_case1: usize,
    /// `None` means `8m` for an inter-edge labeled `m`.
    pub radius_case3: Option<usize>,
    pub max_exponent: Option<u32>,
    /// Powers of `s` kept in each `A_{s}` link; `None` keeps enough for
    /// every cycle to appear.
    pub single_powers: Option<usize>,
    pub element_cap: usize,
    pub budget: usize,
    pub mode: ExecMode,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            radius_case1: 16,
            radius_case3: None,
            max_exponent: None,
            single_powers: None,
            element_cap: DEFAULT_ELEMENT_CAP,
            budget: DEFAULT_BUDGET,
            mode: ExecMode::Parallel,
        }
    }
}

impl CertifyOptions {
    fn develop(&self, radius: usize) -> DevelopOptions {
        DevelopOptions { radius, max_exponent: self.max_exponent, element_cap: self.element_cap, budget: self.budget }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub certificates: Vec<CycleCertificate>,
    /// Weakest status over all certificates.
    pub status: Status,
    pub failures: Vec<CycleCertificate>,
}

impl LinkReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Job {
    Empty,
    Single(usize),
    Part(usize),
    InterEdge(usize, usize),
}

/// Builds and checks the links of every vertex type: the trivial coset,
/// each `A_{s}` for inter-edge vertices `s`, each part `A_i`, and each
/// inter-edge subgroup.
///
/// Inter-edge links depend only on the label and on whether the edge
/// touches another inter-edge, so each such class is developed once.
pub fn certify_link_condition(inst: &Instance, opts: &CertifyOptions) -> Result<LinkReport> {
    let mut jobs = vec![Job::Empty];
    jobs.extend(inst.inter_edge_vertices().iter().map(Job::Single));
    let inter = inst.inter_edges();
    for part in 0..inst.family.len() {
        let p = inst.family.part(part);
        // a singleton part on an inter-edge is the vertex A_{s} already
        if p.len() == 1 && inst.inter_edge_vertices().intersects(p) {
            continue;
        }
        jobs.push(Job::Part(part));
    }
    let mut classes: BTreeMap<(u32, u32), (usize, usize)> = BTreeMap::new();
    for e in &inter {
        let key = (e.label, link::inter_edge_link_length(inst, e));
        classes.entry(key).or_insert((e.u, e.v));
    }
    jobs.extend(classes.values().map(|&(u, v)| Job::InterEdge(u, v)));

    let results: Vec<Result<CycleCertificate>> = par::map(opts.mode, &jobs, |job| run_job(inst, *job, opts));
    let mut by_job: BTreeMap<Job, CycleCertificate> = BTreeMap::new();
    for (job, r) in jobs.iter().zip(results) {
        by_job.insert(*job, r?);
    }

    let mut certificates = Vec::new();
    for job in &jobs {
        if let Job::InterEdge(..) = job {
            continue;
        }
        certificates.push(by_job[job].clone());
    }
    for e in &inter {
        let (u, v) = classes[&(e.label, link::inter_edge_link_length(inst, e))];
        let mut c = by_job[&Job::InterEdge(u, v)].clone();
        if (u, v) != (e.u, e.v) {
            let own = format!("A_{}", inst.graph.format_set(e.vertices()));
            c.note = format!("{}; same link as {} up to renaming generators", c.note, c.vertex_type);
            if let Some(cycle) = c.minimal_cycle.as_mut() {
                let (from, to) = ([inst.graph.name(u), inst.graph.name(v)], [inst.graph.name(e.u), inst.graph.name(e.v)]);
                for label in cycle.iter_mut() {
                    *label = rename(label, &from, &to);
                }
            }
            c.vertex_type = own;
        }
        certificates.push(c);
    }
    let status = certificates.iter().map(|c| c.status).max().unwrap_or(Status::PassComplete);
    let failures = certificates.iter().filter(|c| c.status == Status::Fail).cloned().collect();
    Ok(LinkReport { certificates, status, failures })
}

/// Renames generator names inside an element or coset label.
fn rename(label: &str, from: &[&str; 2], to: &[&str; 2]) -> String {
    let mut out = String::new();
    let mut rest = label;
    'outer: while !rest.is_empty() {
        for (f, t) in from.iter().zip(to) {
            if let Some(tail) = rest.strip_prefix(f) {
                out.push_str(t);
                rest = tail;
                continue 'outer;
            }
        }
        let c = rest.chars().next().expect("non-empty");
        out.push(c);
        rest = &rest[c.len_utf8()..];
    }
    out
}

fn run_job(inst: &Instance, job: Job, opts: &CertifyOptions) -> Result<CycleCertificate> {
    let link = match job {
        Job::Empty => link::build_link_empty(inst)?,
        Job::Single(s) => {
            let above = inst.inter_edges().iter().filter(|e| e.vertices().contains(s)).count() + 1;
            link::build_link_single(inst, s, opts.single_powers.unwrap_or(above))?
        }
        Job::Part(part) => match link::develop_link_part(inst, part, opts.develop(opts.radius_case1)) {
            Ok(l) => l,
            Err(Error::UnsupportedPart { reason, .. }) => {
                return Ok(CycleCertificate {
                    vertex_type: format!("A_{}", inst.graph.format_set(inst.family.part(part))),
                    case: 1,
                    minimal_cycle: None,
                    cycle_edges: None,
                    length_units: None,
                    status: Status::Trusted,
                    link_vertices: 0,
                    link_edges: 0,
                    note: format!(
                        "not developed ({reason}); assumed: every embedded loop has at least 8 edges of length π/4"
                    ),
                })
            }
            Err(e) => return Err(e),
        },
        Job::InterEdge(u, v) => {
            let m = inst.graph.label(u, v).expect("inter-edge");
            let radius = opts.radius_case3.unwrap_or(8 * m as usize);
            link::develop_link_interedge(inst, u, v, opts.develop(radius))?
        }
    };
    Ok(certify_link(&link, opts.mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn cycle_graph(k: usize, w: u32) -> Vec<(usize, usize, u32)> {
        (0..k).map(|i| (i, (i + 1) % k, w)).collect()
    }

    #[test]
    fn small_cycles() {
        let c = shortest_embedded_cycle(3, &cycle_graph(3, 1), ExecMode::Sequential).unwrap();
        assert_eq!(c.length, 3);
        let c = shortest_embedded_cycle(4, &cycle_graph(4, 4), ExecMode::Parallel).unwrap();
        assert_eq!(c.length, 16);
        assert_eq!(shortest_embedded_cycle(8, &cycle_graph(8, 2), ExecMode::Sequential).unwrap().length, 16);
        assert_eq!(shortest_embedded_cycle(6, &cycle_graph(6, 2), ExecMode::Sequential).unwrap().length, 12);
        assert!(shortest_embedded_cycle(3, &[(0, 1, 1), (1, 2, 1)], ExecMode::Sequential).is_none());
    }

    #[test]
    fn through_base_matches_cycle() {
        let edges = cycle_graph(5, 3);
        let c = shortest_cycle_through(5, &edges, 2).unwrap();
        assert_eq!(c.length, 15);
        assert_eq!(c.vertices.len(), 5);
        assert_eq!(cycle_length(&edges, &c.vertices), Some(15));
    }

    #[test]
    fn through_base_ignores_far_cycles() {
        // a triangle hanging off a path from the base
        let edges = [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 1, 1)];
        assert!(shortest_cycle_through(4, &edges, 0).is_none());
        assert_eq!(shortest_cycle_through(4, &edges, 1).unwrap().length, 3);
    }

    #[test]
    fn certificate_lengths_recompute() {
        let inst = instances::c3_tilde_join(4);
        let l = link::build_link_empty(&inst).unwrap();
        let edges = l.edge_list();
        let c = shortest_embedded_cycle(l.vertices.len(), &edges, ExecMode::Parallel).unwrap();
        assert_eq!(cycle_length(&edges, &c.vertices), Some(c.length));
        assert_eq!(c.vertices.len() % 2, 0);
    }

    #[test]
    fn rename_labels() {
        assert_eq!(rename("D^1.a1b2·A_{a1}", &["a1", "b2"], &["c1", "d2"]), "D^1.c1d2·A_{c1}");
    }

    #[test]
    fn single_isolated_edge_m2_passes_at_exactly_two_pi() {
        let inst = instances::single_edge(2);
        let r = certify_link_condition(&inst, &CertifyOptions::default()).unwrap();
        assert!(r.passed());
        let c3 = r.certificates.iter().find(|c| c.case == 3).unwrap();
        assert_eq!(c3.length_units, Some(16));
        assert_eq!(c3.cycle_edges, Some(8));
    }
}
