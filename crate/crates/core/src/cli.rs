//! Instance-file ingestion, check-suite orchestration, and reporting.
//!
//! An instance file is a single JSON document with named declarations of
//! spaces, equilogical spaces, assemblies, tracked morphisms, spans over
//! either ambient, and 2-groupoid bases, plus a config block. All
//! declared objects are validated at load time; a validation failure is
//! a parse-stage rejection naming the object.
//!
//! Three suites are exposed: `axioms` runs every validator, the
//! equivalence suite runs the span–equilogical pipeline, and the
//! quotient suite runs the assembly-side pipeline. Reports are
//! deterministic byte-for-byte for a fixed file and config; timing is
//! written to stderr only.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::cat::{audit_category_laws, Ambient, CategoryContext, CatError};
use crate::equ::{EqRel, Equilogical};
use crate::fintop::{self, FinSpace, FinTopCat};
use crate::groupoid::{
    groupoid_from_jointly_monic, groupoid_interval_data, homotopy_congruence_report,
    homotopy_quotient_equals_equ, GroupoidInC, GrpdTop,
};
use crate::interval::verify_interval_structure;
use crate::ncat::{
    homotopy_quotient_check_n, ncat_interval_data, NCat, NObj,
};
use crate::pasm::{
    self, auto_track, monic_form, PartitionedAssembly, PAsmCat, PAsmMorphism,
};
use crate::spans::{
    enumerate_span_homs, functor_f, functor_g, identification_classes, is_subspatial,
    EquivalenceSpan,
};
use crate::tracklang::{self, nat, parse_program};
use crate::twogroupoid::{
    essential_surjectivity_check, NumericTwoGroupoid, TripleGraph,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unresolved reference `{0}`")]
    Unresolved(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CapExceeded(_) => 3,
            _ => 2,
        }
    }
}

fn classify<E: std::fmt::Display>(e: E) -> CliError {
    let s = e.to_string();
    if s.contains("cap") || s.contains("exceeds") {
        CliError::CapExceeded(s)
    } else {
        CliError::Parse(s)
    }
}

// ---------------------------------------------------------------------
// File schema.
// ---------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub config: ConfigBlock,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDecl>,
    #[serde(default)]
    pub equilogical: BTreeMap<String, EquDecl>,
    #[serde(default)]
    pub assemblies: BTreeMap<String, AssemblyDecl>,
    #[serde(default)]
    pub assembly_morphisms: BTreeMap<String, AssemblyMorDecl>,
    #[serde(default)]
    pub top_spans: BTreeMap<String, TopSpanDecl>,
    #[serde(default)]
    pub pasm_spans: BTreeMap<String, PasmSpanDecl>,
    #[serde(default)]
    pub two_groupoid_bases: BTreeMap<String, BaseDecl>,
    #[serde(default)]
    pub generate: Option<GenerateBlock>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigBlock {
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_cap")]
    pub cap: usize,
    #[serde(default = "default_bound")]
    pub zigzag_bound: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_budget() -> u64 {
    100_000
}
fn default_cap() -> usize {
    crate::cat::DEFAULT_CAP
}
fn default_bound() -> usize {
    3
}
fn default_seed() -> u64 {
    crate::fixtures::DEFAULT_SEED
}

impl Default for ConfigBlock {
    fn default() -> Self {
        ConfigBlock {
            budget: default_budget(),
            cap: default_cap(),
            zigzag_bound: default_bound(),
            seed: default_seed(),
        }
    }
}

/// `{"points": n, "opens": [[...point indices...], ...]}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    pub points: usize,
    pub opens: Vec<Vec<usize>>,
}

/// `{"space": "<name>", "rel": [[i, j], ...]}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquDecl {
    pub space: String,
    pub rel: Vec<(usize, usize)>,
}

/// `{"carrier": n, "xi": [..naturals..]}`
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssemblyDecl {
    pub carrier: usize,
    pub xi: Vec<u64>,
}

/// A tracked map; the tracker is surface syntax, or omitted to request
/// automatic tracking.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssemblyMorDecl {
    pub src: String,
    pub tgt: String,
    pub map: Vec<usize>,
    #[serde(default)]
    pub tracker: Option<String>,
    #[serde(default)]
    pub budget: Option<u64>,
}

/// A span of spaces: either derived from an equilogical space (the
/// relation with its subspace topology and the unique structure maps),
/// or given fully explicitly.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TopSpanDecl {
    Derived {
        equilogical: String,
    },
    Explicit {
        a0: String,
        a1: String,
        d1: Vec<usize>,
        d2: Vec<usize>,
        r: Vec<usize>,
        s: Vec<usize>,
        t: Vec<usize>,
    },
}

/// A span of assemblies: base assembly plus edges `(src, tgt, code)`
/// with least-index structure maps, or fully explicit tables.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PasmSpanDecl {
    Edges {
        a0: String,
        edges: Vec<(usize, usize, u64)>,
    },
    Explicit {
        a0: String,
        a1: String,
        d1: Vec<usize>,
        d2: Vec<usize>,
        r: Vec<usize>,
        s: Vec<usize>,
        t: Vec<usize>,
    },
}

/// A 2-groupoid base: the monic form of a declared span of assemblies.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDecl {
    pub span: String,
}

/// Deterministic generated fixtures appended to the declared ones.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateBlock {
    #[serde(default)]
    pub subspatial: usize,
    #[serde(default)]
    pub pasm: usize,
}

// ---------------------------------------------------------------------
// The resolved instance.
// ---------------------------------------------------------------------

#[derive(Debug)]
pub struct Instance {
    pub config: ConfigBlock,
    pub spaces: BTreeMap<String, Arc<FinSpace>>,
    pub equilogical: BTreeMap<String, Equilogical>,
    pub assemblies: BTreeMap<String, Arc<PartitionedAssembly>>,
    pub assembly_morphisms: BTreeMap<String, PAsmMorphism>,
    pub top_spans: BTreeMap<String, EquivalenceSpan<FinTopCat>>,
    pub pasm_spans: BTreeMap<String, EquivalenceSpan<PAsmCat>>,
    pub bases: BTreeMap<String, TripleGraph>,
}

/// Parse and validate an instance file.
pub fn load_instance(text: &str) -> Result<Instance, CliError> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let config = file.config.clone();
    let mut spaces = BTreeMap::new();
    for (name, decl) in &file.spaces {
        let space = FinSpace::from_subsets(decl.points, &decl.opens)
            .map_err(|e| CliError::Parse(format!("space `{name}`: {e}")))?;
        spaces.insert(name.clone(), Arc::new(space));
    }
    let mut equilogical = BTreeMap::new();
    for (name, decl) in &file.equilogical {
        let space = spaces
            .get(&decl.space)
            .ok_or_else(|| CliError::Unresolved(format!("space `{}`", decl.space)))?;
        let rel = EqRel::from_pairs(space.points(), &decl.rel)
            .map_err(|e| CliError::Parse(format!("equilogical `{name}`: {e}")))?;
        let e = Equilogical::new(space.clone(), rel)
            .map_err(|e| CliError::Parse(format!("equilogical `{name}`: {e}")))?;
        equilogical.insert(name.clone(), e);
    }
    let mut assemblies = BTreeMap::new();
    for (name, decl) in &file.assemblies {
        let asm = PartitionedAssembly::new(decl.carrier, decl.xi.iter().map(|&x| nat(x)).collect())
            .map_err(|e| CliError::Parse(format!("assembly `{name}`: {e}")))?;
        assemblies.insert(name.clone(), Arc::new(asm));
    }
    let mut assembly_morphisms = BTreeMap::new();
    for (name, decl) in &file.assembly_morphisms {
        let src = assemblies
            .get(&decl.src)
            .ok_or_else(|| CliError::Unresolved(format!("assembly `{}`", decl.src)))?;
        let tgt = assemblies
            .get(&decl.tgt)
            .ok_or_else(|| CliError::Unresolved(format!("assembly `{}`", decl.tgt)))?;
        let morphism = match &decl.tracker {
            Some(src_text) => {
                let program = parse_program(src_text)
                    .map_err(|e| CliError::Parse(format!("morphism `{name}` tracker: {e}")))?;
                PAsmMorphism::with_tracker(
                    src.clone(),
                    tgt.clone(),
                    decl.map.clone(),
                    Arc::new(program),
                    decl.budget.unwrap_or(config.budget),
                )
                .map_err(|e| CliError::Parse(format!("morphism `{name}`: {e}")))?
            }
            None => auto_track(src, tgt, decl.map.clone())
                .map_err(|e| CliError::Parse(format!("morphism `{name}`: {e}")))?,
        };
        assembly_morphisms.insert(name.clone(), morphism);
    }
    let cat_top = FinTopCat;
    let mut top_spans = BTreeMap::new();
    for (name, decl) in &file.top_spans {
        let span = match decl {
            TopSpanDecl::Derived { equilogical: e } => {
                let eq = equilogical
                    .get(e)
                    .ok_or_else(|| CliError::Unresolved(format!("equilogical `{e}`")))?;
                functor_g(&cat_top, eq)
                    .map_err(|err| CliError::Parse(format!("span `{name}`: {err}")))?
            }
            TopSpanDecl::Explicit {
                a0,
                a1,
                d1,
                d2,
                r,
                s,
                t,
            } => {
                let a0 = spaces
                    .get(a0)
                    .ok_or_else(|| CliError::Unresolved(format!("space `{a0}`")))?;
                let a1 = spaces
                    .get(a1)
                    .ok_or_else(|| CliError::Unresolved(format!("space `{a1}`")))?;
                let d1 = Ambient::make_mor(&cat_top, a1, a0, d1.clone())
                    .map_err(|e| CliError::Parse(format!("span `{name}` d1: {e}")))?;
                let d2 = Ambient::make_mor(&cat_top, a1, a0, d2.clone())
                    .map_err(|e| CliError::Parse(format!("span `{name}` d2: {e}")))?;
                EquivalenceSpan::from_tables(&cat_top, d1, d2, r.clone(), s.clone(), t.clone())
                    .map_err(|e| CliError::Parse(format!("span `{name}`: {e}")))?
            }
        };
        top_spans.insert(name.clone(), span);
    }
    let cat_pasm = PAsmCat;
    let mut pasm_spans = BTreeMap::new();
    for (name, decl) in &file.pasm_spans {
        let span = match decl {
            PasmSpanDecl::Edges { a0, edges } => {
                let a0 = assemblies
                    .get(a0)
                    .ok_or_else(|| CliError::Unresolved(format!("assembly `{a0}`")))?;
                build_edge_span(a0, edges)
                    .map_err(|e| CliError::Parse(format!("span `{name}`: {e}")))?
            }
            PasmSpanDecl::Explicit {
                a0,
                a1,
                d1,
                d2,
                r,
                s,
                t,
            } => {
                let a0 = assemblies
                    .get(a0)
                    .ok_or_else(|| CliError::Unresolved(format!("assembly `{a0}`")))?;
                let a1 = assemblies
                    .get(a1)
                    .ok_or_else(|| CliError::Unresolved(format!("assembly `{a1}`")))?;
                let d1 = Ambient::make_mor(&cat_pasm, a1, a0, d1.clone())
                    .map_err(|e| CliError::Parse(format!("span `{name}` d1: {e}")))?;
                let d2 = Ambient::make_mor(&cat_pasm, a1, a0, d2.clone())
                    .map_err(|e| CliError::Parse(format!("span `{name}` d2: {e}")))?;
                EquivalenceSpan::from_tables(&cat_pasm, d1, d2, r.clone(), s.clone(), t.clone())
                    .map_err(|e| CliError::Parse(format!("span `{name}`: {e}")))?
            }
        };
        pasm_spans.insert(name.clone(), span);
    }
    let mut bases = BTreeMap::new();
    for (name, decl) in &file.two_groupoid_bases {
        let span = pasm_spans
            .get(&decl.span)
            .ok_or_else(|| CliError::Unresolved(format!("pasm span `{}`", decl.span)))?;
        let mf = monic_form(span).map_err(|e| CliError::Parse(format!("base `{name}`: {e}")))?;
        bases.insert(name.clone(), TripleGraph::from_monic_form(&mf));
    }
    let mut instance = Instance {
        config,
        spaces,
        equilogical,
        assemblies,
        assembly_morphisms,
        top_spans,
        pasm_spans,
        bases,
    };
    if let Some(generate) = &file.generate {
        let mut rng = crate::fixtures::rng_from(instance.config.seed);
        use rand::Rng as _;
        for i in 0..generate.subspatial {
            let e = crate::fixtures::random_equilogical(&mut rng, 4);
            let span = functor_g(&cat_top, &e)
                .map_err(|err| CliError::Parse(format!("generated span: {err}")))?;
            instance.top_spans.insert(format!("gen_top_{i:02}"), span);
        }
        for i in 0..generate.pasm {
            let style = crate::fixtures::PasmSpanStyle {
                injective_base: rng.gen_bool(0.5),
                paired_edge_codes: true,
            };
            let span = crate::fixtures::random_pasm_span(&mut rng, 5, style);
            instance.pasm_spans.insert(format!("gen_pasm_{i:02}"), span);
        }
    }
    Ok(instance)
}

fn build_edge_span(
    a0: &Arc<PartitionedAssembly>,
    edges: &[(usize, usize, u64)],
) -> Result<EquivalenceSpan<PAsmCat>, String> {
    let cat = PAsmCat;
    let a1 = Arc::new(
        PartitionedAssembly::new(edges.len(), edges.iter().map(|&(_, _, c)| nat(c)).collect())
            .map_err(|e| e.to_string())?,
    );
    let d1 = Ambient::make_mor(&cat, &a1, a0, edges.iter().map(|&(i, _, _)| i).collect())
        .map_err(|e| e.to_string())?;
    let d2 = Ambient::make_mor(&cat, &a1, a0, edges.iter().map(|&(_, j, _)| j).collect())
        .map_err(|e| e.to_string())?;
    let least_edge = |i: usize, j: usize| -> Result<usize, String> {
        edges
            .iter()
            .position(|&(a, b, _)| (a, b) == (i, j))
            .ok_or_else(|| format!("no edge ({i}, {j}) for a structure map"))
    };
    let r: Vec<usize> = (0..a0.carrier())
        .map(|x| least_edge(x, x))
        .collect::<Result<_, _>>()?;
    let s: Vec<usize> = edges
        .iter()
        .map(|&(i, j, _)| least_edge(j, i))
        .collect::<Result<_, _>>()?;
    let pullback = crate::cat::pullback_of_cospan(&cat, &d2, &d1).map_err(|e| e.to_string())?;
    let t: Vec<usize> = pullback
        .pairs
        .iter()
        .map(|&(u, v)| least_edge(edges[u].0, edges[v].1))
        .collect::<Result<_, _>>()?;
    EquivalenceSpan::from_tables(&cat, d1, d2, r, s, t).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub suite: String,
    pub checks: Vec<CheckLine>,
}

impl CheckReport {
    fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {}", self.suite);
        for check in &self.checks {
            let tag = match check.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
            };
            if check.detail.is_empty() {
                let _ = writeln!(out, "  [{tag}] {}", check.name);
            } else {
                let _ = writeln!(out, "  [{tag}] {} ({})", check.name, check.detail);
            }
        }
        out
    }

    pub fn render_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "verdict": match c.verdict { Verdict::Pass => "pass", Verdict::Fail => "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

// ---------------------------------------------------------------------
// Suites.
// ---------------------------------------------------------------------

/// Run every declared-object validator.
pub fn run_axioms(instance: &Instance) -> Result<CheckReport, CliError> {
    let mut report = CheckReport {
        suite: "axioms".into(),
        ..Default::default()
    };
    let cat_top = FinTopCat;
    let cat_pasm = PAsmCat;
    let cap = instance.config.cap;
    for (name, space) in &instance.spaces {
        report.push(
            format!("space `{name}` topology"),
            true,
            format!("{} points, {} opens", space.points(), space.open_count()),
        );
        report.push(
            format!("space `{name}` T0"),
            true,
            if fintop::is_t0(space) { "T0" } else { "not T0" },
        );
    }
    for (name, e) in &instance.equilogical {
        report.push(
            format!("equilogical `{name}`"),
            true,
            format!("{} points, {} related pairs", e.points(), e.rel.pairs().len()),
        );
    }
    for (name, m) in &instance.assembly_morphisms {
        let ok = match &m.tracker {
            pasm::Tracker::Program { program, budget } => {
                pasm::is_morphism(&m.source, &m.target, m.map(), program, *budget)
            }
            pasm::Tracker::Consistent => {
                pasm::consistency_violation(&m.source, &m.target, m.map()).is_none()
            }
        };
        report.push(format!("assembly morphism `{name}` tracked"), ok, "");
    }
    for (name, span) in &instance.top_spans {
        let subspatial = is_subspatial(&cat_top, span);
        report.push(
            format!("top span `{name}`"),
            true,
            format!(
                "{} arrows over {} points{}",
                span.graph.a1.points(),
                span.graph.a0.points(),
                if subspatial { ", subspatial" } else { "" }
            ),
        );
    }
    for (name, span) in &instance.pasm_spans {
        report.push(
            format!("pasm span `{name}`"),
            true,
            format!(
                "{} arrows over {} points",
                span.graph.a1.carrier(),
                span.graph.a0.carrier()
            ),
        );
    }
    // Category law audits over the declared objects.
    let ctx_top = CategoryContext {
        ambient: &cat_top,
        objects: instance.spaces.values().cloned().collect(),
        cap,
    };
    match audit_category_laws(&ctx_top, 8) {
        Ok(audit) => report.push(
            "space category laws",
            audit.is_clean(),
            format!("{} triples checked", audit.triples_checked),
        ),
        Err(CatError::CapExceeded { candidates, cap }) => {
            return Err(CliError::CapExceeded(format!(
                "space law audit needs {candidates} candidates, cap {cap}"
            )))
        }
        Err(e) => return Err(classify(e)),
    }
    let ctx_pasm = CategoryContext {
        ambient: &cat_pasm,
        objects: instance.assemblies.values().cloned().collect(),
        cap,
    };
    match audit_category_laws(&ctx_pasm, 8) {
        Ok(audit) => report.push(
            "assembly category laws",
            audit.is_clean(),
            format!("{} triples checked", audit.triples_checked),
        ),
        Err(CatError::CapExceeded { candidates, cap }) => {
            return Err(CliError::CapExceeded(format!(
                "assembly law audit needs {candidates} candidates, cap {cap}"
            )))
        }
        Err(e) => return Err(classify(e)),
    }
    // Numeric base invariants.
    for (name, base) in &instance.bases {
        let g = NumericTwoGroupoid::new(base.clone(), instance.config.zigzag_bound);
        report.push(
            format!("base `{name}` level-1 embedding injective"),
            g.embedding_injective(),
            format!("{} cells", g.cell_count()),
        );
        report.push(
            format!("base `{name}` 2-cells total and subsingleton"),
            g.two_cells_total_and_subsingleton(),
            "",
        );
    }
    // Encoding sanity.
    let roundtrip = (0u64..=1000).all(|k| {
        let k = nat(k);
        let (a, b) = tracklang::cantor_unpair(&k);
        tracklang::cantor_pair(&a, &b) == k
    });
    report.push("pairing round-trip on [0, 1000]", roundtrip, "");
    Ok(report)
}

/// The span–equilogical pipeline over the declared spans of spaces.
pub fn run_equ_equivalence(instance: &Instance) -> Result<CheckReport, CliError> {
    let mut report = CheckReport {
        suite: "equ-equivalence".into(),
        ..Default::default()
    };
    let cat = FinTopCat;
    let cap = instance.config.cap;
    let named: Vec<(&String, &EquivalenceSpan<FinTopCat>)> = instance.top_spans.iter().collect();
    let spans: Vec<EquivalenceSpan<FinTopCat>> =
        named.iter().map(|(_, s)| (*s).clone()).collect();
    for (name, span) in &named {
        if !is_subspatial(&cat, span) {
            report.push(format!("span `{name}` subspatial"), false, "");
            return Ok(report);
        }
        let e = functor_f(&cat, span).map_err(classify)?;
        let back = functor_g(&cat, &e).map_err(classify)?;
        let same = functor_f(&cat, &back).map_err(classify)? == e;
        report.push(format!("round trip on `{name}`"), same, "");
    }
    // Hom-class bijections for every ordered pair, in parallel.
    let results: Vec<(usize, usize, Result<(usize, usize), CliError>)> = (0..spans.len())
        .flat_map(|i| (0..spans.len()).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let out = (|| {
                let homs = enumerate_span_homs(&cat, &spans[i], &spans[j], cap)
                    .map_err(classify)?;
                let classes = identification_classes(&cat, &spans[i], &spans[j], &homs, cap)
                    .map_err(classify)?;
                let fe = functor_f(&cat, &spans[i]).map_err(classify)?;
                let ff = functor_f(&cat, &spans[j]).map_err(classify)?;
                let equ_classes = crate::equ::hom_set(&fe, &ff, cap).map_err(classify)?;
                Ok((classes.len(), equ_classes.len()))
            })();
            (i, j, out)
        })
        .collect();
    let mut sorted = results;
    sorted.sort_by_key(|&(i, j, _)| (i, j));
    let mut bijections = 0usize;
    for (i, j, out) in sorted {
        let (span_classes, equ_classes) = out?;
        if span_classes != equ_classes {
            report.push(
                format!("hom bijection ({}, {})", named[i].0, named[j].0),
                false,
                format!("{span_classes} span classes vs {equ_classes} map classes"),
            );
        } else {
            bijections += 1;
        }
    }
    report.push(
        "hom-class bijections",
        bijections == spans.len() * spans.len(),
        format!("{bijections} ordered pairs"),
    );
    // Every span upgrades to a groupoid and every hom to a functor.
    let mut upgrades = true;
    for span in &spans {
        if groupoid_from_jointly_monic(&cat, span).is_err() {
            upgrades = false;
        }
    }
    report.push("groupoid upgrades", upgrades, "");
    // The three-way equivalence.
    let quotient = homotopy_quotient_equals_equ(&cat, &spans, cap).map_err(classify)?;
    report.push(
        "homotopy = identification = map equivalence",
        quotient.is_clean(),
        format!("{} functor pairs", quotient.functor_pairs),
    );
    let congruence =
        homotopy_congruence_report(&cat, &spans, cap, 4.min(spans.len())).map_err(classify)?;
    report.push(
        "homotopy is a composition-respecting equivalence",
        congruence.is_clean(),
        "",
    );
    // The interval groupoid satisfies the interval contract against the
    // declared fixtures as samples.
    let grpd = GrpdTop::new(cap);
    let data = groupoid_interval_data();
    let samples: Vec<Arc<GroupoidInC<FinTopCat>>> = spans
        .iter()
        .filter(|s| s.graph.a1.points() <= 9)
        .take(5)
        .map(|s| groupoid_from_jointly_monic(&cat, s).map(Arc::new))
        .collect::<Result<_, _>>()
        .map_err(classify)?;
    let interval_report =
        verify_interval_structure(&grpd, &data, &samples, cap).map_err(classify)?;
    report.push(
        "interval groupoid structure",
        interval_report.is_clean(),
        format!(
            "{} pushout cocones, {} stability cocones",
            interval_report.pushout_cocones_checked, interval_report.stability_cocones_checked
        ),
    );
    Ok(report)
}

/// The assembly-side pipeline over the declared spans of assemblies.
pub fn run_eff_quotient(instance: &Instance) -> Result<CheckReport, CliError> {
    let mut report = CheckReport {
        suite: "eff-quotient".into(),
        ..Default::default()
    };
    let cap = instance.config.cap;
    let bound = instance.config.zigzag_bound;
    let named: Vec<(&String, &EquivalenceSpan<PAsmCat>)> = instance.pasm_spans.iter().collect();
    // Monic forms.
    for (name, span) in &named {
        let mf = monic_form(span).map_err(classify)?;
        let ok = mf.triple_map_injective();
        report.push(
            format!("monic form of `{name}`"),
            ok,
            format!(
                "{} triples from {} arrows",
                mf.triples.len(),
                span.graph.a1.carrier()
            ),
        );
    }
    // Essential surjectivity, in parallel.
    let results: Vec<(usize, Result<String, CliError>)> = named
        .par_iter()
        .enumerate()
        .map(|(i, (_, span))| {
            let out = essential_surjectivity_check(span, bound, cap)
                .map_err(classify)
                .and_then(|e| {
                    e.verify(span).map_err(classify)?;
                    Ok(format!("{} cells", e.groupoid.cell_count()))
                });
            (i, out)
        })
        .collect();
    let mut sorted = results;
    sorted.sort_by_key(|&(i, _)| i);
    for (i, out) in sorted {
        let detail = out?;
        report.push(format!("essential surjectivity on `{}`", named[i].0), true, detail);
    }
    // The homotopy quotient over the declared bases.
    let ncat = NCat::new(bound, cap);
    let suite: Vec<Arc<NObj>> = instance
        .bases
        .values()
        .map(|b| NObj::free(NumericTwoGroupoid::new(b.clone(), bound)))
        .collect();
    if !suite.is_empty() {
        let quotient = homotopy_quotient_check_n(&ncat, &suite, cap).map_err(classify)?;
        report.push(
            "identification = homotopy over the bases",
            quotient.is_clean(),
            format!(
                "{} functor pairs, {} homotopies",
                quotient.functor_pairs, quotient.homotopies_built
            ),
        );
    }
    // The interval 2-groupoid contract. Samples are fixed small bases:
    // competitor enumeration out of cylinders grows with the cube of
    // the sample hom-set sizes, so richer declared bases would blow the
    // cap rather than add value.
    let ncat_small = NCat::new(2.min(bound.max(2)), cap);
    let data = ncat_interval_data(&ncat_small).map_err(classify)?;
    let samples = crate::ncat::small_interval_samples(ncat_small.bound);
    let targets = samples[..2].to_vec();
    let interval_report = crate::interval::verify_interval_structure_against(
        &ncat_small,
        &data,
        &samples,
        &targets,
        cap,
    )
    .map_err(classify)?;
    report.push(
        "interval 2-groupoid structure",
        interval_report.is_clean(),
        format!(
            "{} pushout cocones, {} stability cocones",
            interval_report.pushout_cocones_checked, interval_report.stability_cocones_checked
        ),
    );
    Ok(report)
}

/// Run the selected suites.
pub fn run(instance: &Instance, suites: &[String]) -> Result<Vec<CheckReport>, CliError> {
    let mut reports = Vec::new();
    for suite in suites {
        let report = match suite.as_str() {
            "axioms" => run_axioms(instance)?,
            "equ-equivalence" => run_equ_equivalence(instance)?,
            "eff-quotient" => run_eff_quotient(instance)?,
            other => return Err(CliError::Parse(format!("unknown suite `{other}`"))),
        };
        reports.push(report);
    }
    Ok(reports)
}

// ---------------------------------------------------------------------
// DOT emission.
// ---------------------------------------------------------------------

/// Render a named object as a DOT graph: spans of either flavour as
/// their edge graphs, and 2-groupoid bases with their edge labels.
pub fn emit_dot(instance: &Instance, name: &str) -> Result<String, CliError> {
    if let Some(span) = instance.top_spans.get(name) {
        let cat = FinTopCat;
        let d1 = cat.point_map(&span.graph.d1);
        let d2 = cat.point_map(&span.graph.d2);
        return Ok(render_dot(name, span.graph.a0.points(), |out| {
            for e in 0..d1.len() {
                let _ = writeln!(out, "  p{} -> p{} [label=\"e{}\"];", d1[e], d2[e], e);
            }
        }));
    }
    if let Some(span) = instance.pasm_spans.get(name) {
        let cat = PAsmCat;
        let d1 = cat.point_map(&span.graph.d1);
        let d2 = cat.point_map(&span.graph.d2);
        let a1 = &span.graph.a1;
        return Ok(render_dot(name, span.graph.a0.carrier(), |out| {
            for e in 0..d1.len() {
                let _ = writeln!(
                    out,
                    "  p{} -> p{} [label=\"e{}:{}\"];",
                    d1[e],
                    d2[e],
                    e,
                    a1.realizer(e)
                );
            }
        }));
    }
    if let Some(base) = instance.bases.get(name) {
        return Ok(render_dot(name, base.nodes.carrier(), |out| {
            for (i, e) in base.edges.iter().enumerate() {
                let label = if base.edges.len() == 1 {
                    "u".to_string()
                } else {
                    format!("u{i}")
                };
                let _ = writeln!(out, "  p{} -> p{} [label=\"{label}\"];", e.src, e.tgt);
            }
        }));
    }
    Err(CliError::UnknownObject(name.to_string()))
}

fn render_dot(name: &str, nodes: usize, edges: impl Fn(&mut String)) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    for p in 0..nodes {
        let _ = writeln!(out, "  p{p};");
    }
    edges(&mut out);
    let _ = writeln!(out, "}}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "config": {"zigzag_bound": 2, "cap": 100000},
        "spaces": {
            "sierp": {"points": 2, "opens": [[], [1], [0, 1]]},
            "disc2": {"points": 2, "opens": [[], [0], [1], [0, 1]]}
        },
        "equilogical": {
            "diag": {"space": "sierp", "rel": [[0, 0], [1, 1]]},
            "total2": {"space": "disc2", "rel": [[0, 0], [0, 1], [1, 0], [1, 1]]}
        },
        "top_spans": {
            "Sdiag": {"equilogical": "diag"},
            "Stotal": {"equilogical": "total2"}
        },
        "assemblies": {"A": {"carrier": 2, "xi": [0, 1]}},
        "assembly_morphisms": {
            "swap": {"src": "A", "tgt": "A", "map": [1, 0]},
            "tracked_id": {"src": "A", "tgt": "A", "map": [0, 1], "tracker": "in", "budget": 8}
        },
        "pasm_spans": {
            "Pdiag": {"a0": "A", "edges": [[0, 0, 1], [1, 1, 2]]},
            "Ptotal": {"a0": "A", "edges": [[0, 0, 1], [0, 1, 2], [1, 0, 3], [1, 1, 4]]}
        },
        "two_groupoid_bases": {"B": {"span": "Ptotal"}}
    }"#;

    #[test]
    fn loads_and_runs_all_suites() {
        let instance = load_instance(SMALL).unwrap();
        let reports = run(
            &instance,
            &[
                "axioms".to_string(),
                "equ-equivalence".to_string(),
                "eff-quotient".to_string(),
            ],
        )
        .unwrap();
        for r in &reports {
            assert!(r.passed(), "suite {} failed:\n{}", r.suite, r.render_text());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let instance = load_instance(SMALL).unwrap();
        let a = run_axioms(&instance).unwrap().render_text();
        let b = run_axioms(&load_instance(SMALL).unwrap()).unwrap().render_text();
        assert_eq!(a, b);
    }

    #[test]
    fn non_topology_is_rejected_naming_the_space() {
        let bad = r#"{"spaces": {"broken": {"points": 3, "opens": [[], [0], [1], [0, 1, 2]]}}}"#;
        let err = load_instance(bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("broken"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unresolved_reference_is_reported() {
        let bad = r#"{"equilogical": {"e": {"space": "missing", "rel": []}}}"#;
        let err = load_instance(bad).unwrap_err();
        assert!(matches!(err, CliError::Unresolved(_)));
    }

    #[test]
    fn dot_for_diagonal_span_has_two_loops() {
        let instance = load_instance(SMALL).unwrap();
        let dot = emit_dot(&instance, "Sdiag").unwrap();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("p0 -> p0"));
        assert!(dot.contains("p1 -> p1"));
    }

    #[test]
    fn dot_for_total_span_has_four_edges() {
        let instance = load_instance(SMALL).unwrap();
        let dot = emit_dot(&instance, "Stotal").unwrap();
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn dot_for_interval_base_has_single_edge_u() {
        let instance = load_instance(
            r#"{
            "assemblies": {"T2": {"carrier": 2, "xi": [0, 1]}},
            "pasm_spans": {"I": {"a0": "T2", "edges": [[0,0,1],[0,1,0],[1,0,2],[1,1,3]]}},
            "two_groupoid_bases": {"IB": {"span": "I"}}
        }"#,
        )
        .unwrap();
        let dot = emit_dot(&instance, "IB").unwrap();
        assert!(dot.contains("p0;"));
        assert!(dot.contains("p1;"));
    }

    #[test]
    fn unknown_object_for_dot() {
        let instance = load_instance(SMALL).unwrap();
        assert!(matches!(
            emit_dot(&instance, "nope"),
            Err(CliError::UnknownObject(_))
        ));
    }
}
