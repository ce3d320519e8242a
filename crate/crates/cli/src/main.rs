use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relxl_core::acyl::{self, AcylStatus, WitnessSearch};
use relxl_core::complex::{self, DerivedComplex};
use relxl_core::coxeter::{self, DEFAULT_TOLERANCE};
use relxl_core::garside::DEFAULT_ELEMENT_CAP;
use relxl_core::girth::{self, CertifyOptions, LinkReport};
use relxl_core::graph::{classify_known, RelReport};
use relxl_core::kpi1::{self, VerdictStatus};
use relxl_core::link::{self, DevelopOptions, LinkGraph, DEFAULT_BUDGET};
use relxl_core::{Error, ExecMode, Instance};

#[derive(Parser, Debug)]
#[command(name = "relxl", version, about = "Checks relative extra-large Artin groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Graph file in JSON: {"vertices": [..], "edges": [{"u","v","m"}], "family": [[..]]}
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Syllable-step radius of part developments.
    #[arg(long, default_value_t = 16, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    radius_case1: u64,
    /// Radius of inter-edge developments; defaults to 8m.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    radius_case3: Option<u64>,
    /// Cap on enumerated group elements and complex chains.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP as u64, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    /// Eigenvalue tolerance of the definiteness oracle.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, global = true)]
    tolerance: f64,
    /// Fixed exponent window for developments; chosen from the budget otherwise.
    #[arg(long, global = true)]
    max_exponent: Option<u32>,
    /// Run link jobs on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check (REL) and (REL').
    CheckRel,
    /// Membership in the known K(pi,1) and acylindrical hyperbolicity classes.
    Classify,
    /// Build the subset posets and their derived complexes.
    Build,
    /// Certify the link condition for every vertex type.
    Links,
    /// Audit the K(pi,1) reduction.
    Kpi1 {
        /// Part indices whose parabolic is known to be K(pi,1), comma separated.
        #[arg(long, value_delimiter = ',')]
        assert_kpi1: Vec<usize>,
    },
    /// Hypotheses and witness for acylindrical hyperbolicity.
    Acyl,
    /// Emit one link as DOT or JSON.
    Develop(DevelopTarget),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DevelopTarget {
    /// Link of the trivial coset.
    #[arg(long)]
    empty: bool,
    /// Link of A_{s} for an inter-edge vertex.
    #[arg(long)]
    vertex: Option<String>,
    /// Link of A_i for a part index.
    #[arg(long)]
    part: Option<usize>,
    /// Link of the inter-edge subgroup, given as `u,v`.
    #[arg(long)]
    edge: Option<String>,
}

/// Exit status: 0 pass, 2 condition failure, 1 input error.
enum Outcome {
    Pass,
    ConditionFailed,
}

struct Report {
    body: String,
    outcome: Outcome,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.body);
            if !report.body.ends_with('\n') {
                println!();
            }
            match report.outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::ConditionFailed => ExitCode::from(2),
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Condition(msg)) => {
            println!("FAIL: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Input(String),
    Condition(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnrecognizedSimplex(_) => CliError::Condition(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    if c.tolerance.is_nan() || c.tolerance <= 0.0 {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", c.tolerance)));
    }
    let path = c.input.as_ref().ok_or_else(|| CliError::Input("--input is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let inst = Instance::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
    let opts = certify_options(c);
    match &cli.command {
        Command::CheckRel => Ok(check_rel(&inst, c.format)),
        Command::Classify => classify(&inst, c),
        Command::Build => build(&inst, c),
        Command::Links => links(&inst, &opts, c.format),
        Command::Kpi1 { assert_kpi1 } => kpi1(&inst, assert_kpi1, &opts, c.format),
        Command::Acyl => acyl(&inst, c.format),
        Command::Develop(target) => develop(&inst, target, c),
    }
}

fn certify_options(c: &Common) -> CertifyOptions {
    CertifyOptions {
        radius_case1: c.radius_case1 as usize,
        radius_case3: c.radius_case3.map(|r| r as usize),
        max_exponent: c.max_exponent,
        element_cap: c.cap as usize,
        mode: if c.sequential { ExecMode::Sequential } else { ExecMode::Parallel },
        ..CertifyOptions::default()
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn rel_json(inst: &Instance, r: &RelReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|e| json!({"edge": [inst.graph.name(e.u), inst.graph.name(e.v)], "m": e.label}))
        .collect();
    json!({"holds": r.holds, "violations": violations})
}

fn check_rel(inst: &Instance, format: Format) -> Report {
    let rel = inst.check_rel();
    let rel_prime = inst.check_rel_prime();
    let outcome = if rel_prime.holds { Outcome::Pass } else { Outcome::ConditionFailed };
    let body = if format == Format::Json {
        pretty(&json!({"rel": rel_json(inst, &rel), "rel_prime": rel_json(inst, &rel_prime)}))
    } else {
        let mut out = String::new();
        for (name, r) in [("REL", &rel), ("REL'", &rel_prime)] {
            let _ = writeln!(out, "{name}: {}", if r.holds { "holds" } else { "fails" });
            for e in &r.violations {
                let _ = writeln!(out, "  violator {} m={}", inst.format_edge(e), e.label);
            }
        }
        out
    };
    Report { body, outcome }
}

fn classify(inst: &Instance, c: &Common) -> Result<Report, CliError> {
    let g = &inst.graph;
    let report = classify_known(g);
    let oracle = if g.is_empty() { None } else { Some(coxeter::definiteness_oracle(g, g.vertex_set(), c.tolerance)?) };
    let parts: Vec<Value> = inst
        .family
        .parts()
        .iter()
        .map(|&p| json!({"part": g.format_set(p), "type": coxeter::classify_type(g, p).to_string()}))
        .collect();
    let body = if c.format == Format::Json {
        pretty(&json!({"classification": report, "oracle": oracle, "parts": parts}))
    } else {
        let mut out = format!("type: {}\n", report.coxeter_type);
        let known = report.known_kpi1_class().unwrap_or("none");
        let _ = writeln!(out, "known K(pi,1) class: {known}");
        for (name, v) in [
            ("spherical", report.spherical),
            ("affine", report.affine),
            ("2-dimensional", report.two_dimensional),
            ("FC", report.fc),
            ("large", report.large),
            ("extra-large", report.extra_large),
            ("XXL", report.xxl),
            ("right-angled", report.right_angled),
            ("join-decomposable", report.join_decomposable),
        ] {
            let _ = writeln!(out, "  {name}: {v}");
        }
        let _ = writeln!(out, "  locally reducible: unknown");
        if let Some(o) = &oracle {
            let _ = writeln!(out, "oracle signature: {:?}", o.signature);
        }
        for p in &parts {
            let _ = writeln!(out, "part {}: {}", p["part"].as_str().unwrap_or(""), p["type"].as_str().unwrap_or(""));
        }
        out
    };
    Ok(Report { body, outcome: Outcome::Pass })
}

fn build(inst: &Instance, c: &Common) -> Result<Report, CliError> {
    let g = &inst.graph;
    let cap = c.cap as usize;
    let s_ell = DerivedComplex::new(complex::build_s_ell(inst));
    let s_f = DerivedComplex::new(complex::build_s_f(g));
    let s_bar = DerivedComplex::new(complex::build_s_bar(inst));
    let two_dim = complex::check_two_dimensional(&s_ell);
    let metric = complex::assign_metric(&s_ell, inst)?;
    let gluing = complex::check_gluing(&metric);
    let (_, retraction) = complex::retraction_map(&s_bar, &s_ell, inst, cap);
    let ok = two_dim.holds && gluing.consistent && retraction.well_defined;
    let outcome = if ok { Outcome::Pass } else { Outcome::ConditionFailed };
    let body = match c.format {
        Format::Dot => [("S_ell", &s_ell), ("S_f", &s_f), ("S_bar", &s_bar)]
            .iter()
            .map(|(name, cx)| complex::poset_to_dot(cx.poset(), g, name))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => pretty(&json!({
            "s_ell": complex::complex_to_json(&s_ell, g, cap),
            "s_f": complex::complex_to_json(&s_f, g, cap),
            "s_bar": complex::complex_to_json(&s_bar, g, cap),
            "two_dimensional": two_dim,
            "metric_triangles": metric.len(),
            "gluing": gluing,
            "retraction": retraction,
        })),
        Format::Text => {
            let mut out = String::new();
            for (name, cx) in [("S^l", &s_ell), ("S^f", &s_f), ("S-bar", &s_bar)] {
                let _ = writeln!(out, "{name}: {} vertices, chain counts {:?}", cx.vertex_count(), cx.chain_counts());
            }
            let _ = writeln!(out, "2-dimensional: {} (longest chain {})", two_dim.holds, two_dim.longest_chain_len);
            let _ = writeln!(out, "metric triangles: {}", metric.len());
            let _ = writeln!(out, "gluing consistent: {}", gluing.consistent);
            match &retraction.skipped {
                Some(why) => {
                    let _ = writeln!(out, "retraction: skipped ({why})");
                }
                None => {
                    let _ = writeln!(
                        out,
                        "retraction: well-defined {} over {} maximal chains",
                        retraction.well_defined, retraction.maximal_chains
                    );
                }
            }
            out
        }
    };
    Ok(Report { body, outcome })
}

fn links_text(r: &LinkReport) -> String {
    let mut out = format!("link condition: {}\n", if r.passed() { "PASS" } else { "FAIL" });
    for c in &r.certificates {
        let cycle = match (&c.length_units, &c.minimal_cycle) {
            (Some(len), Some(vs)) if vs.len() <= 8 || c.status == girth::Status::Fail => {
                format!("girth {len} units over {} edges [{}]", vs.len(), vs.join(" "))
            }
            (Some(len), Some(vs)) => format!("girth {len} units over {} edges", vs.len()),
            _ => "acyclic".to_string(),
        };
        let _ = writeln!(out, "  case {} {}: {:?}, {cycle}", c.case, c.vertex_type, c.status);
    }
    out
}

fn links(inst: &Instance, opts: &CertifyOptions, format: Format) -> Result<Report, CliError> {
    let report = girth::certify_link_condition(inst, opts)?;
    let outcome = if report.passed() { Outcome::Pass } else { Outcome::ConditionFailed };
    let body = match format {
        Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
        _ => links_text(&report),
    };
    Ok(Report { body, outcome })
}

fn kpi1(inst: &Instance, asserted: &[usize], opts: &CertifyOptions, format: Format) -> Result<Report, CliError> {
    if let Some(&bad) = asserted.iter().find(|&&p| p >= inst.family.len()) {
        return Err(CliError::Input(format!("part index {bad} out of range")));
    }
    let asserted: BTreeSet<usize> = asserted.iter().copied().collect();
    let verdict = kpi1::kpi1_verdict(inst, &asserted, opts)?;
    let outcome = match verdict.status {
        VerdictStatus::Holds | VerdictStatus::Conditional => Outcome::Pass,
        VerdictStatus::Inapplicable | VerdictStatus::NotEstablished => Outcome::ConditionFailed,
    };
    let body = match format {
        Format::Json => pretty(&serde_json::to_value(&verdict).expect("verdict serializes")),
        _ => verdict.to_text(),
    };
    Ok(Report { body, outcome })
}

fn acyl(inst: &Instance, format: Format) -> Result<Report, CliError> {
    let verdict = acyl::acyl_verdict(inst)?;
    let outcome = match verdict.status {
        AcylStatus::Inapplicable => Outcome::ConditionFailed,
        _ => Outcome::Pass,
    };
    let body = match format {
        Format::Json => pretty(&serde_json::to_value(&verdict).expect("verdict serializes")),
        _ => {
            let mut out = format!("{}\n", verdict.summary);
            let h = &verdict.hypotheses;
            let _ = writeln!(out, "  hypotheses: {} ({})", h.holds, h.explanation);
            if let Some(WitnessSearch::Found(w)) = &verdict.witness {
                let _ = writeln!(out, "  witness: edge {{{},{}}} m={} with {}", w.edge[0], w.edge[1], w.label, w.vertex);
            }
            if let Some(d) = &verdict.delta_checks {
                let _ = writeln!(
                    out,
                    "  Delta: rank 3 {}, connected {}, 2-dimensional {}, not right-angled {}, type {}",
                    d.rank_three, d.connected, d.two_dimensional, d.not_right_angled, d.coxeter_type
                );
            }
            if let Some(m) = &verdict.weak_malnormality {
                let _ = writeln!(out, "  weak malnormality: {} ({})", m.condition, m.status);
            }
            for row in &verdict.orbit_growth {
                let _ = writeln!(
                    out,
                    "  radius {}: {} elements, max syllable length {}",
                    row.radius, row.elements, row.max_syllable_length
                );
            }
            out
        }
    };
    Ok(Report { body, outcome })
}

fn vertex_index(inst: &Instance, name: &str) -> Result<usize, CliError> {
    inst.graph.index_of(name).ok_or_else(|| CliError::Input(format!("unknown vertex `{name}`")))
}

fn develop(inst: &Instance, target: &DevelopTarget, c: &Common) -> Result<Report, CliError> {
    let dev = |radius: usize| DevelopOptions {
        radius,
        max_exponent: c.max_exponent,
        element_cap: c.cap as usize,
        budget: DEFAULT_BUDGET,
    };
    let link: LinkGraph = if target.empty {
        link::build_link_empty(inst)?
    } else if let Some(name) = &target.vertex {
        let s = vertex_index(inst, name)?;
        let powers = inst.inter_edges().iter().filter(|e| e.u == s || e.v == s).count() + 1;
        link::build_link_single(inst, s, powers)?
    } else if let Some(part) = target.part {
        if part >= inst.family.len() {
            return Err(CliError::Input(format!("part index {part} out of range")));
        }
        link::develop_link_part(inst, part, dev(c.radius_case1 as usize))?
    } else if let Some(edge) = &target.edge {
        let (a, b) = edge
            .split_once(',')
            .ok_or_else(|| CliError::Input(format!("--edge expects `u,v`, got `{edge}`")))?;
        let (u, v) = (vertex_index(inst, a.trim())?, vertex_index(inst, b.trim())?);
        let e = inst
            .find_inter_edge(u, v)
            .ok_or_else(|| CliError::Input(format!("{{{a}, {b}}} is not an inter-edge")))?;
        let radius = c.radius_case3.map(|r| r as usize).unwrap_or(8 * e.label as usize);
        link::develop_link_interedge(inst, u, v, dev(radius))?
    } else {
        unreachable!("clap requires one target")
    };
    let mode = if c.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let cert = girth::certify_link(&link, mode);
    let body = match c.format {
        Format::Dot => link.to_dot(),
        Format::Json => pretty(&json!({"link": link.to_json(), "certificate": cert})),
        Format::Text => {
            let s = link::summary(&link);
            format!(
                "{} (case {}): {} vertices, {} edges, girth {}\n",
                link.center,
                link.case.number(),
                s["vertices"],
                s["edges"],
                cert.length_units.map_or("none".to_string(), |l| format!("{l} units")),
            )
        }
    };
    let outcome = if cert.status == girth::Status::Fail { Outcome::ConditionFailed } else { Outcome::Pass };
    Ok(Report { body, outcome })
}
