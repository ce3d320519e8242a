//! Audit of the family `S̄` as a complete and K(π,1) family, and assembly of
//! the K(π,1) reduction verdict from the checks that feed it.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{
    assign_metric, build_s_bar, build_s_ell, check_gluing, check_two_dimensional, retraction_map, DerivedComplex,
    SubsetPoset, DEFAULT_CHAIN_CAP,
};
use crate::coxeter;
use crate::error::Result;
use crate::girth::{certify_link_condition, CertifyOptions, Status};
use crate::graph::{classify_known_on, Instance};
use crate::subset::VertexSet;

/// Where a part's K(π,1) status comes from, strongest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "provenance", content = "class")]
pub enum Provenance {
    KnownClass(String),
    UserAsserted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartStatus {
    pub part: usize,
    pub vertices: Vec<String>,
    #[serde(flatten)]
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditOutcome {
    Pass,
    /// Closure conditions hold but some part has unknown status.
    Conditional,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyAudit {
    /// Closed under taking subsets.
    pub subset_closed: ConditionCheck,
    /// Every part's Artin group is K(π,1), by provenance.
    pub parts: Vec<PartStatus>,
    /// Contains every spherical subset.
    pub contains_spherical: ConditionCheck,
    pub outcome: AuditOutcome,
}

/// Checks the three conditions of a complete and K(π,1) family for `s_bar`.
///
/// The K(π,1) condition is taken from the known-class classifier per part,
/// then from `asserted` (part indices the user vouches for).
pub fn audit_family(s_bar: &SubsetPoset, inst: &Instance, asserted: &BTreeSet<usize>) -> FamilyAudit {
    let g = &inst.graph;
    let mut witness = None;
    for &t in s_bar.elements() {
        if let Some(v) = t.iter().find(|&v| !s_bar.contains(t.without(v))) {
            witness = Some(format!("{} is missing although {} is present", g.format_set(t.without(v)), g.format_set(t)));
            break;
        }
    }
    let subset_closed = ConditionCheck { holds: witness.is_none(), checked: s_bar.len(), witness };

    let spherical = coxeter::enumerate_spherical_subsets(g);
    let missing = spherical.iter().find(|&&t| !s_bar.contains(t));
    let contains_spherical = ConditionCheck {
        holds: missing.is_none(),
        checked: spherical.len(),
        witness: missing.map(|&t| format!("spherical {} is missing", g.format_set(t))),
    };

    let parts: Vec<PartStatus> = inst
        .family
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let provenance = match classify_known_on(g, p).known_kpi1_class() {
                Some(class) => Provenance::KnownClass(class.to_string()),
                None if asserted.contains(&i) => Provenance::UserAsserted,
                None => Provenance::Unknown,
            };
            PartStatus { part: i, vertices: p.iter().map(|v| g.name(v).to_string()).collect(), provenance }
        })
        .collect();

    let outcome = if !subset_closed.holds || !contains_spherical.holds {
        AuditOutcome::Fail
    } else if parts.iter().any(|p| p.provenance == Provenance::Unknown) {
        AuditOutcome::Conditional
    } else {
        AuditOutcome::Pass
    };
    FamilyAudit { subset_closed, parts, contains_spherical, outcome }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub holds: bool,
    /// Spherical subsets not inside a single part.
    pub crossing: usize,
    pub witnesses: Vec<String>,
}

/// Every spherical subset that is not inside one part has at most two
/// vertices, and if it has two they span an edge.
pub fn verify_no_large_crossing_spherical(inst: &Instance) -> CrossingReport {
    let g = &inst.graph;
    let mut crossing = 0;
    let mut witnesses = Vec::new();
    for t in coxeter::enumerate_spherical_subsets(g) {
        if inst.family.parts().iter().any(|&p| t.is_subset_of(p)) {
            continue;
        }
        crossing += 1;
        let verts: Vec<usize> = t.iter().collect();
        let ok = match verts.as_slice() {
            [u, v] => g.is_edge(*u, *v),
            _ => verts.len() < 2,
        };
        if !ok {
            witnesses.push(g.format_set(t));
        }
    }
    CrossingReport { holds: witnesses.is_empty(), crossing, witnesses }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceKind {
    MachineChecked,
    /// Quoted theory, not verified here.
    Trusted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub claim: String,
    pub kind: EvidenceKind,
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Holds,
    /// The reduction is established; some parts have unknown status.
    Conditional,
    Inapplicable,
    /// A machine check failed.
    NotEstablished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Kpi1Verdict {
    pub status: VerdictStatus,
    pub summary: String,
    pub evidence: Vec<Evidence>,
    pub parts: Vec<PartStatus>,
}

impl Kpi1Verdict {
    pub fn to_text(&self) -> String {
        let mut out = format!("K(pi,1): {}\n", self.summary);
        for e in &self.evidence {
            let mark = match (e.kind, e.holds) {
                (EvidenceKind::Trusted, _) => "trusted",
                (_, Some(true)) => "ok",
                (_, Some(false)) => "FAILED",
                (_, None) => "n/a",
            };
            let _ = writeln!(out, "  [{mark}] {}: {}", e.claim, e.detail);
        }
        out
    }
}

fn evidence(claim: &str, holds: bool, detail: String) -> Evidence {
    Evidence { claim: claim.into(), kind: EvidenceKind::MachineChecked, holds: Some(holds), detail }
}

fn trusted(claim: &str, detail: &str) -> Evidence {
    Evidence { claim: claim.into(), kind: EvidenceKind::Trusted, holds: None, detail: detail.into() }
}

/// Runs every machine-checkable ingredient of the reduction "`A_Γ` is
/// K(π,1) iff every `A_{Γ_i}` is" and reports what follows.
pub fn kpi1_verdict(inst: &Instance, asserted: &BTreeSet<usize>, opts: &CertifyOptions) -> Result<Kpi1Verdict> {
    let g = &inst.graph;
    let rel = inst.check_rel_prime();
    let mut ev = vec![evidence(
        "relative extra-large condition (REL')",
        rel.holds,
        if rel.holds {
            format!("{} inter-edges checked", inst.inter_edges().len())
        } else {
            let list: Vec<String> = rel.violations.iter().map(|e| inst.format_edge(e)).collect();
            format!("violated by {}", list.join(", "))
        },
    )];
    let s_bar = build_s_bar(inst);
    let audit = audit_family(&s_bar, inst, asserted);
    if !rel.holds {
        let list: Vec<String> = rel.violations.iter().map(|e| inst.format_edge(e)).collect();
        return Ok(Kpi1Verdict {
            status: VerdictStatus::Inapplicable,
            summary: format!("reduction inapplicable: REL' fails on {}", list.join(", ")),
            evidence: ev,
            parts: audit.parts,
        });
    }

    let s_ell = DerivedComplex::new(build_s_ell(inst));
    let dim = check_two_dimensional(&s_ell);
    ev.push(evidence(
        "complex over S^l is 2-dimensional",
        dim.holds,
        format!("longest chain has {} elements", dim.longest_chain_len),
    ));
    let gluing = assign_metric(&s_ell, inst).map(|m| (m.len(), check_gluing(&m)));
    ev.push(match &gluing {
        Ok((n, r)) => evidence(
            "triangle metric glues consistently",
            r.consistent,
            format!("{n} triangles, {} shared edges", r.shared_edges.len()),
        ),
        Err(e) => evidence("triangle metric glues consistently", false, e.to_string()),
    });

    let links = certify_link_condition(inst, opts)?;
    let count = |s: Status| links.certificates.iter().filter(|c| c.status == s).count();
    ev.push(evidence(
        "link condition: every embedded loop in every vertex link has length >= 2pi",
        links.passed(),
        format!(
            "{} links: {} complete, {} within radius, {} assumed for parts without an exact engine, {} failed",
            links.certificates.len(),
            count(Status::PassComplete),
            count(Status::PassWithinRadius),
            count(Status::Trusted),
            count(Status::Fail)
        ),
    ));
    ev.push(trusted(
        "the coset complex over S^l is simply connected",
        "via the development of the associated complex of groups",
    ));
    ev.push(evidence(
        "S-bar is closed under subsets",
        audit.subset_closed.holds,
        audit.subset_closed.witness.clone().unwrap_or_else(|| format!("{} subsets checked", audit.subset_closed.checked)),
    ));
    ev.push(evidence(
        "S-bar contains every spherical subset",
        audit.contains_spherical.holds,
        audit
            .contains_spherical
            .witness
            .clone()
            .unwrap_or_else(|| format!("{} spherical subsets checked", audit.contains_spherical.checked)),
    ));
    let crossing = verify_no_large_crossing_spherical(inst);
    ev.push(evidence(
        "spherical subsets meeting two parts are single inter-edges",
        crossing.holds,
        if crossing.holds {
            format!("{} crossing spherical subsets", crossing.crossing)
        } else {
            format!("counterexamples {}", crossing.witnesses.join(", "))
        },
    ));
    let bar_complex = DerivedComplex::new(s_bar);
    let (_, retraction) = retraction_map(&bar_complex, &s_ell, inst, DEFAULT_CHAIN_CAP);
    ev.push(evidence(
        "S-bar complex retracts onto the S^l complex",
        retraction.well_defined,
        match &retraction.skipped {
            Some(why) => format!("not checked: {why}"),
            None => format!("{} maximal chains", retraction.maximal_chains),
        },
    ));
    ev.push(trusted(
        "complete and K(pi,1) families compute the homotopy type",
        "the complex of a complete and K(pi,1) family is homotopy equivalent to the quotient of the hyperplane complement",
    ));
    for p in &audit.parts {
        let names = g.format_set(VertexSet::from_indices(p.vertices.iter().filter_map(|n| g.index_of(n))));
        let (holds, detail) = match &p.provenance {
            Provenance::KnownClass(c) => (Some(true), format!("{c} type")),
            Provenance::UserAsserted => (Some(true), "asserted by the user".to_string()),
            Provenance::Unknown => (None, "not in a known class; pending".to_string()),
        };
        ev.push(Evidence {
            claim: format!("A_{names} satisfies the K(pi,1) conjecture"),
            kind: EvidenceKind::MachineChecked,
            holds,
            detail,
        });
    }

    let failed: Vec<&str> = ev.iter().filter(|e| e.holds == Some(false)).map(|e| e.claim.as_str()).collect();
    let (status, summary) = if !failed.is_empty() {
        (VerdictStatus::NotEstablished, format!("not established: {}", failed.join("; ")))
    } else if audit.outcome == AuditOutcome::Conditional {
        let pending: Vec<String> = audit
            .parts
            .iter()
            .filter(|p| p.provenance == Provenance::Unknown)
            .map(|p| format!("{{{}}}", p.vertices.join(",")))
            .collect();
        (
            VerdictStatus::Conditional,
            format!("reduction established, per-part status pending for {}", pending.join(", ")),
        )
    } else {
        let mut classes: Vec<String> = Vec::new();
        for p in &audit.parts {
            let c = match &p.provenance {
                Provenance::KnownClass(c) => c.clone(),
                _ => "asserted".into(),
            };
            if !classes.contains(&c) {
                classes.push(c);
            }
        }
        (VerdictStatus::Holds, format!("holds, parts {}", classes.join("/")))
    };
    Ok(Kpi1Verdict { status, summary, evidence: ev, parts: audit.parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn c3_join_audit_passes() {
        let inst = instances::c3_tilde_join(4);
        let a = audit_family(&build_s_bar(&inst), &inst, &BTreeSet::new());
        assert_eq!(a.outcome, AuditOutcome::Pass);
        assert!(a.parts.iter().all(|p| p.provenance == Provenance::KnownClass("affine".into())));
    }

    #[test]
    fn removed_subset_breaks_closure() {
        let inst = instances::c3_tilde_join(4);
        let mut bar = build_s_bar(&inst);
        bar.remove(VertexSet::pair(0, 1));
        let a = audit_family(&bar, &inst, &BTreeSet::new());
        assert!(!a.subset_closed.holds);
        assert!(a.subset_closed.witness.unwrap().contains("{a1,b1}"));
        assert_eq!(a.outcome, AuditOutcome::Fail);
    }

    /// The C~3 join as a single part, plus a pendant vertex.
    fn join_as_one_part() -> Instance {
        let join = instances::c3_tilde_join(4);
        let mut names: Vec<String> = join.graph.names().to_vec();
        names.push("x".into());
        let mut edges: Vec<(String, String, u32)> =
            join.graph.edges().map(|(u, v, m)| (names[u].clone(), names[v].clone(), m)).collect();
        edges.push(("a1".into(), "x".into(), 2));
        let g = crate::DefiningGraph::new(&names, &edges).unwrap();
        let fam = crate::SubgraphFamily::from_names(&g, &[names[..8].to_vec(), vec!["x".to_string()]]).unwrap();
        Instance::new(g, fam)
    }

    #[test]
    fn unknown_parts_are_conditional() {
        let inst = join_as_one_part();
        let a = audit_family(&build_s_bar(&inst), &inst, &BTreeSet::new());
        assert_eq!(a.parts[0].provenance, Provenance::Unknown);
        assert_eq!(a.outcome, AuditOutcome::Conditional);
        let a = audit_family(&build_s_bar(&inst), &inst, &BTreeSet::from([0]));
        assert_eq!(a.parts[0].provenance, Provenance::UserAsserted);
        assert_eq!(a.outcome, AuditOutcome::Pass);
    }

    #[test]
    fn crossing_spherical_subsets() {
        assert!(verify_no_large_crossing_spherical(&instances::c3_tilde_join(4)).holds);
        let r = verify_no_large_crossing_spherical(&instances::non_rel_prime_control());
        assert!(!r.holds);
        assert_eq!(r.witnesses, vec!["{a,b,c}".to_string()]);
    }

    #[test]
    fn inapplicable_without_rel_prime() {
        let v = kpi1_verdict(&instances::non_rel_prime_control(), &BTreeSet::new(), &CertifyOptions::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Inapplicable);
        assert!(v.summary.contains("{a,b}"));
    }
}
