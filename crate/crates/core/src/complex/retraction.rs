use std::collections::BTreeMap;

use serde::Serialize;

use super::chains::{Chain, DerivedComplex};
use crate::error::Error;
use crate::graph::Instance;
use crate::subset::VertexSet;

/// Default cap on enumerated maximal chains of the `S̄` complex.
pub const DEFAULT_CHAIN_CAP: usize = 1_000_000;

/// Vertex map from the `S̄` complex onto the `S^ℓ` complex: elements of
/// `S^ℓ` stay put, every other subset of a part `S_i` goes to `S_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Retraction {
    pub vertex_map: BTreeMap<VertexSet, VertexSet>,
}

impl Retraction {
    /// Image of a chain, as a chain.
    pub fn apply(&self, chain: &[VertexSet]) -> Option<Chain> {
        let mut out: Chain = chain.iter().map(|t| self.vertex_map.get(t).copied()).collect::<Option<_>>()?;
        out.sort_by_key(|t| t.len());
        out.dedup();
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetractionReport {
    pub maximal_chains: usize,
    /// Every vertex and maximal chain has an image.
    pub total: bool,
    /// Every image is a simplex of the `S^ℓ` complex.
    pub lands_in_s_ell: bool,
    /// The image of each maximal chain is the face prescribed by the
    /// collapsing rule.
    pub matches_rule: bool,
    /// The prescribed face is exactly the part of the chain lying in `S^ℓ`,
    /// so adjacent maximal chains retract compatibly along shared faces.
    pub compatible: bool,
    pub identity_on_s_ell: bool,
    pub idempotent: bool,
    pub well_defined: bool,
    pub failures: Vec<String>,
    /// Set when the check was skipped because a chain cap was hit.
    pub skipped: Option<String>,
}

/// The face a maximal chain `Δ` of the `S̄` complex collapses onto: `Δ`
/// itself when it already lies in `S^ℓ`; otherwise `Δ = [∅ ⊂ {s} ⊂ … ⊂ S_i]`
/// goes to `[∅ ⊂ {s} ⊂ S_i]` when `s` lies on an inter-edge and to
/// `[∅ ⊂ S_i]` when it does not.
pub fn collapse_rule(chain: &[VertexSet], s_ell: &DerivedComplex, inst: &Instance) -> Option<Chain> {
    if chain.iter().all(|&t| s_ell.poset().contains(t)) {
        return Some(chain.to_vec());
    }
    let top = *chain.last()?;
    if !inst.family.parts().contains(&top) || chain.len() < 2 || !chain[0].is_empty() || chain[1].len() != 1 {
        return None;
    }
    let s = chain[1];
    if inst.inter_edge_vertices().intersects(s) {
        Some(vec![VertexSet::EMPTY, s, top])
    } else {
        Some(vec![VertexSet::EMPTY, top])
    }
}

pub fn retraction_map(
    s_bar: &DerivedComplex,
    s_ell: &DerivedComplex,
    inst: &Instance,
    cap: usize,
) -> (Retraction, RetractionReport) {
    let g = &inst.graph;
    let fmt_chain = |c: &[VertexSet]| {
        let parts: Vec<String> = c.iter().map(|&t| g.format_set(t)).collect();
        format!("[{}]", parts.join(" < "))
    };
    let mut failures = Vec::new();

    let mut vertex_map = BTreeMap::new();
    for &t in s_bar.poset().elements() {
        let image = if s_ell.poset().contains(t) {
            Some(t)
        } else {
            inst.family.parts().iter().copied().find(|&p| t.is_subset_of(p))
        };
        match image {
            Some(i) => {
                vertex_map.insert(t, i);
            }
            None => failures.push(format!("vertex {} has no image", g.format_set(t))),
        }
    }
    let retraction = Retraction { vertex_map };
    let mut report = RetractionReport {
        maximal_chains: 0,
        total: failures.is_empty(),
        lands_in_s_ell: true,
        matches_rule: true,
        compatible: true,
        identity_on_s_ell: true,
        idempotent: true,
        well_defined: false,
        failures: Vec::new(),
        skipped: None,
    };

    let maximal = match s_bar.maximal_chains(cap) {
        Ok(m) => m,
        Err(Error::ResourceLimit { cap, .. }) => {
            report.skipped = Some(format!("more than {cap} maximal chains"));
            report.failures = failures;
            return (retraction, report);
        }
        Err(e) => unreachable!("maximal chain enumeration only fails on the cap: {e}"),
    };
    report.maximal_chains = maximal.len();

    for delta in &maximal {
        let Some(rule) = collapse_rule(delta, s_ell, inst) else {
            report.total = false;
            failures.push(format!("no collapsing rule for {}", fmt_chain(delta)));
            continue;
        };
        let Some(image) = retraction.apply(delta) else {
            report.total = false;
            failures.push(format!("no image for {}", fmt_chain(delta)));
            continue;
        };
        if !s_ell.contains_chain(&image) {
            report.lands_in_s_ell = false;
            failures.push(format!("{} maps to {}, not a simplex of S^l", fmt_chain(delta), fmt_chain(&image)));
        }
        if image != rule || !rule.iter().all(|t| delta.contains(t)) {
            report.matches_rule = false;
            failures.push(format!("{} maps to {}, rule gives {}", fmt_chain(delta), fmt_chain(&image), fmt_chain(&rule)));
        }
        let in_s_ell: Chain = delta.iter().copied().filter(|&t| s_ell.poset().contains(t)).collect();
        if rule != in_s_ell {
            report.compatible = false;
            failures.push(format!("rule face of {} is not its S^l part", fmt_chain(delta)));
        }
        if retraction.apply(&image).as_ref() != Some(&image) {
            report.idempotent = false;
            failures.push(format!("retraction is not idempotent on {}", fmt_chain(delta)));
        }
    }

    match s_ell.chains(cap) {
        Ok(chains) => {
            for c in chains {
                if retraction.apply(&c).as_ref() != Some(&c) {
                    report.identity_on_s_ell = false;
                    failures.push(format!("{} is moved", fmt_chain(&c)));
                }
            }
        }
        Err(_) => report.skipped = Some(format!("more than {cap} chains in the S^l complex")),
    }
    for (&t, &i) in &retraction.vertex_map {
        if retraction.vertex_map.get(&i) != Some(&i) {
            report.idempotent = false;
            failures.push(format!("vertex {} is not fixed after one step", g.format_set(t)));
        }
    }

    report.well_defined = report.skipped.is_none()
        && report.total
        && report.lands_in_s_ell
        && report.matches_rule
        && report.compatible
        && report.identity_on_s_ell
        && report.idempotent;
    report.failures = failures;
    (retraction, report)
}
