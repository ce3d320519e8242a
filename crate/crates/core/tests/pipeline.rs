use std::collections::BTreeSet;

use relxl_core::complex::{self, DerivedComplex, Shape};
use relxl_core::girth::{self, CertifyOptions, Status};
use relxl_core::instances;
use relxl_core::link::{self, DevelopOptions};
use relxl_core::{Instance, VertexSet};

/// Chains of length 1, 2 and 3 in a family of sets ordered by strict
/// inclusion, by brute force over all pairs and triples.
fn brute_force_chain_counts(sets: &[VertexSet]) -> [u64; 3] {
    let lt = |a: VertexSet, b: VertexSet| a.is_proper_subset_of(b);
    let mut counts = [sets.len() as u64, 0, 0];
    for &a in sets {
        for &b in sets {
            if lt(a, b) {
                counts[1] += 1;
                counts[2] += sets.iter().filter(|&&c| lt(b, c)).count() as u64;
            }
        }
    }
    counts
}

#[test]
fn instance_json_round_trip() {
    for inst in [instances::c3_tilde_join(4), instances::non_rel_prime_control(), instances::single_edge(5)] {
        assert_eq!(Instance::parse(&inst.to_json()).unwrap(), inst);
    }
}

#[test]
fn c3_join_complex_counts() {
    let inst = instances::c3_tilde_join(4);
    let s_ell = DerivedComplex::new(complex::build_s_ell(&inst));
    let counts = s_ell.chain_counts();
    assert_eq!(counts.len(), 3);
    assert_eq!(counts[..], brute_force_chain_counts(s_ell.poset().elements())[..]);

    let metric = complex::assign_metric(&s_ell, &inst).unwrap();
    assert_eq!(metric.len() as u64, counts[2]);
    for t in &metric {
        assert_eq!(t.angles.iter().sum::<u32>(), 8);
    }
    // every inter-edge touches another one, so no disjoint-edge triangles
    assert!(metric.iter().all(|t| t.shape != Shape::DisjointInterEdge));
    assert!(complex::check_gluing(&metric).consistent);
}

#[test]
fn disjoint_edges_get_right_isosceles_triangles() {
    let inst = instances::single_edge(2);
    let s_ell = DerivedComplex::new(complex::build_s_ell(&inst));
    let metric = complex::assign_metric(&s_ell, &inst).unwrap();
    assert_eq!(metric.len(), 2);
    assert!(metric.iter().all(|t| t.angles == [2, 4, 2]));
}

#[test]
fn certificates_are_deterministic_across_modes() {
    let inst = instances::random_rel_prime(3, instances::RandomSpec::default());
    let seq = CertifyOptions { mode: relxl_core::ExecMode::Sequential, ..CertifyOptions::default() };
    let a = girth::certify_link_condition(&inst, &seq).unwrap();
    let b = girth::certify_link_condition(&inst, &CertifyOptions::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn wider_exponent_window_keeps_the_bound() {
    // the fixed window 3 at m=2 covers more syllables per step than the default
    let inst = instances::single_edge(2);
    let opts = DevelopOptions { max_exponent: Some(3), ..DevelopOptions::with_radius(8) };
    let l = link::develop_link_interedge(&inst, 0, 1, opts).unwrap();
    let cert = girth::certify_link(&l, relxl_core::ExecMode::Sequential);
    assert_eq!(cert.length_units, Some(16));
    assert_eq!(cert.status, Status::PassWithinRadius);
}

#[test]
fn element_cap_is_reported() {
    let inst = instances::single_edge(3);
    let opts = DevelopOptions { element_cap: 100, ..DevelopOptions::with_radius(24) };
    let err = link::develop_link_interedge(&inst, 0, 1, opts).unwrap_err();
    assert!(matches!(err, relxl_core::Error::ResourceLimit { cap: 100, .. }));
}

#[test]
fn asserted_parts_upgrade_a_conditional_verdict() {
    let g = relxl_core::DefiningGraph::new(
        &["a", "b", "c", "d", "e"],
        &[("a", "b", 3), ("b", "c", 3), ("a", "c", 2), ("a", "d", 7), ("b", "d", 7), ("c", "d", 7), ("d", "e", 5)],
    )
    .unwrap();
    let f = relxl_core::SubgraphFamily::from_names(&g, &[vec!["a", "b", "c", "d"], vec!["e"]]).unwrap();
    let inst = Instance::new(g, f);
    let opts = CertifyOptions::default();
    let v = relxl_core::kpi1::kpi1_verdict(&inst, &BTreeSet::new(), &opts).unwrap();
    assert_eq!(v.status, relxl_core::kpi1::VerdictStatus::Conditional, "{}", v.to_text());
    let v = relxl_core::kpi1::kpi1_verdict(&inst, &BTreeSet::from([0]), &opts).unwrap();
    assert_eq!(v.status, relxl_core::kpi1::VerdictStatus::Holds, "{}", v.to_text());
}

/// Lengths of all simple cycles with exactly `k` edges, by depth-first
/// search from each cycle's smallest vertex.
fn cycles_with_edges(n: usize, edges: &[(usize, usize, u32)], k: usize) -> Vec<u64> {
    let mut w = vec![vec![None; n]; n];
    for &(u, v, l) in edges {
        w[u][v] = Some(l as u64);
        w[v][u] = Some(l as u64);
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn dfs(w: &[Vec<Option<u64>>], k: usize, len: u64, path: &mut Vec<usize>, out: &mut Vec<u64>) {
        let (start, at) = (path[0], *path.last().unwrap());
        if path.len() == k {
            // each cycle is seen in both directions; keep one
            if let Some(l) = w[at][start] {
                if path[1] < at {
                    out.push(len + l);
                }
            }
            return;
        }
        for next in start + 1..w.len() {
            if let Some(l) = w[at][next] {
                if !path.contains(&next) {
                    path.push(next);
                    dfs(w, k, len + l, path, out);
                    path.pop();
                }
            }
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        dfs(&w, k, 0, &mut path, &mut out);
    }
    out
}

#[test]
fn empty_links_have_no_short_cycles() {
    let mut all = vec![instances::c3_tilde_join(4)];
    all.extend((0..8).map(|s| instances::random_rel_prime(s, instances::RandomSpec { max_vertices: 7, ..Default::default() })));
    for inst in &all {
        let l = link::build_link_empty(inst).unwrap();
        let edges = l.edge_list();
        assert!(cycles_with_edges(l.vertices.len(), &edges, 4).is_empty());
        assert!(cycles_with_edges(l.vertices.len(), &edges, 6).iter().all(|&len| len >= 16));
    }
    let l = link::build_link_empty(&instances::c3_tilde_join(4)).unwrap();
    assert!(!cycles_with_edges(l.vertices.len(), &l.edge_list(), 6).is_empty());
}

#[test]
fn free_part_development_is_a_tree() {
    let g = relxl_core::DefiningGraph::new(&["a", "b", "c"], &[("b", "c", 4)]).unwrap();
    let f = relxl_core::SubgraphFamily::from_names(&g, &[vec!["a", "b"], vec!["c"]]).unwrap();
    let inst = Instance::new(g, f);
    let l = link::develop_link_part(&inst, 0, DevelopOptions::with_radius(4)).unwrap();
    assert_eq!(l.edges.len() + 1, l.vertices.len());
    assert_eq!(girth::certify_link(&l, relxl_core::ExecMode::Sequential).length_units, None);
}

#[test]
fn generator_is_not_a_word_in_the_other() {
    use relxl_core::garside::{DihedralArtin, Letter, Word, WordProblemOracle};
    for m in 2..=6 {
        let g = DihedralArtin::new(m).unwrap();
        let a = g.evaluate(&Word::power(0, 1));
        for n in 0..=8usize {
            for bits in 0..1u32 << n {
                let w = Word((0..n).map(|i| if bits >> i & 1 == 1 { Letter::neg(1) } else { Letter::pos(1) }).collect());
                assert_ne!(g.evaluate(&w), a, "m={m}: a = {w}");
            }
        }
    }
}
