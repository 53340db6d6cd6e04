//! JSON document formats: instances, certificates, solver reports, source
//! problems for the encoders, and benchmark specifications.
//!
//! Parsing is strict. Unknown fields are rejected, syntax errors carry line
//! and column, and semantic errors carry a machine-readable code plus a JSON
//! pointer to the offending element — validated here, before the typed
//! constructors run, so messages point at the document rather than at
//! internal state.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, InvalidCode, Result};
use crate::model::{Allocation, ConflictGraph, Instance, SolveReport};
use crate::reductions::{
    IndependentSetInstance, Numerical3dmInstance, ThreePartitionInstance,
};
use crate::sbmwis::SbMwisInstance;

fn json_err(e: serde_json::Error) -> Error {
    Error::Json {
        line: e.line(),
        column: e.column(),
        detail: e.to_string(),
    }
}

/// Validates an edge list against a vertex count, with JSON-pointer
/// diagnostics under `{root}/{index}`. Demands canonical form: `a < b`,
/// endpoints in range, no duplicates.
fn check_edges(edges: &[[usize; 2]], vertices: usize, root: &str) -> Result<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(edges.len());
    for (i, &[a, b]) in edges.iter().enumerate() {
        let pointer = format!("{root}/{i}");
        if a == b {
            return Err(Error::invalid(
                InvalidCode::SelfLoop,
                pointer,
                format!("edge joins vertex {a} to itself"),
            ));
        }
        if a > b {
            return Err(Error::invalid(
                InvalidCode::EdgeOrder,
                pointer,
                format!("edge [{a},{b}] must be written with the smaller endpoint first"),
            ));
        }
        if b >= vertices {
            return Err(Error::invalid(
                InvalidCode::EdgeRange,
                pointer,
                format!("endpoint {b} outside 0..{vertices}"),
            ));
        }
        if !seen.insert((a, b)) {
            return Err(Error::invalid(
                InvalidCode::DuplicateEdge,
                pointer,
                format!("edge [{a},{b}] appears more than once"),
            ));
        }
        out.push((a, b));
    }
    Ok(out)
}

fn check_unique(names: &[String], root: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (i, name) in names.iter().enumerate() {
        if !seen.insert(name) {
            return Err(Error::invalid(
                InvalidCode::DuplicateId,
                format!("{root}/{i}"),
                format!("identifier {name:?} appears more than once"),
            ));
        }
    }
    Ok(())
}

// -- Instances --------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    agents: Vec<String>,
    jobs: Vec<String>,
    utilities: Vec<Vec<u64>>,
    edges: Vec<[usize; 2]>,
    eta: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bundle_cap: Option<usize>,
}

/// Parses and fully validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(json_err)?;
    let m = doc.jobs.len();
    check_unique(&doc.agents, "/agents")?;
    check_unique(&doc.jobs, "/jobs")?;
    if doc.eta < 1 {
        return Err(Error::invalid(
            InvalidCode::EtaRange,
            "/eta",
            "the utility threshold must be at least 1",
        ));
    }
    if doc.utilities.len() != doc.agents.len() {
        return Err(Error::invalid(
            InvalidCode::DimMismatch,
            "/utilities",
            format!("{} rows for {} agents", doc.utilities.len(), doc.agents.len()),
        ));
    }
    for (i, row) in doc.utilities.iter().enumerate() {
        if row.len() != m {
            return Err(Error::invalid(
                InvalidCode::DimMismatch,
                format!("/utilities/{i}"),
                format!("{} entries for {m} jobs", row.len()),
            ));
        }
    }
    if let Some(cap) = doc.bundle_cap {
        if cap < 1 || cap > m {
            return Err(Error::invalid(
                InvalidCode::CapRange,
                "/bundle_cap",
                format!("bundle cap must lie in 1..={m}, got {cap}"),
            ));
        }
    }
    let edges = check_edges(&doc.edges, m, "/edges")?;
    Instance::new(
        doc.agents,
        doc.jobs,
        doc.utilities,
        ConflictGraph::new(m, edges)?,
        doc.eta,
        doc.bundle_cap,
    )
}

/// Serializes an instance compactly with a fixed field order, so equal
/// instances produce byte-identical documents.
pub fn instance_to_json(inst: &Instance) -> String {
    let doc = InstanceDoc {
        agents: inst.agents().to_vec(),
        jobs: inst.jobs().to_vec(),
        utilities: inst.utilities().to_vec(),
        edges: inst
            .conflicts()
            .edges()
            .iter()
            .map(|&(a, b)| [a, b])
            .collect(),
        eta: inst.eta(),
        bundle_cap: inst.bundle_cap(),
    };
    serde_json::to_string(&doc).expect("instance document serialization cannot fail")
}

// -- Certificates and reports --------------------------------------------------------

/// A feasibility claim with an optional assignment backing it.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<BTreeMap<String, Vec<String>>>,
}

impl CertificateDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_err)
    }

    /// The assignment as an [`Allocation`], required when `feasible`.
    pub fn allocation(&self) -> Result<Allocation> {
        let assignment = self.assignment.as_ref().ok_or_else(|| {
            Error::MalformedCertificate(
                "certificate claims feasibility but carries no assignment".into(),
            )
        })?;
        let bundles = assignment
            .iter()
            .map(|(agent, jobs)| (agent.clone(), jobs.iter().cloned().collect()))
            .collect();
        Ok(Allocation::new(bundles))
    }
}

fn allocation_to_doc(alloc: &Allocation) -> BTreeMap<String, Vec<String>> {
    alloc
        .bundles()
        .iter()
        .map(|(agent, jobs)| (agent.clone(), jobs.iter().cloned().collect()))
        .collect()
}

/// Renders a report as a single-line JSON object:
/// `{"verdict":"yes"|"no","algorithm":...,"counters":{...},"elapsed_ms":...,
/// "certificate":{...}|null}`. Counters are sorted by key, so everything but
/// `elapsed_ms` is byte-stable across runs.
pub fn report_to_json(report: &SolveReport) -> String {
    #[derive(Serialize)]
    struct ReportDoc<'a> {
        verdict: &'a str,
        algorithm: &'a str,
        counters: &'a BTreeMap<String, u64>,
        elapsed_ms: u64,
        certificate: Option<BTreeMap<String, Vec<String>>>,
    }
    let doc = ReportDoc {
        verdict: if report.verdict { "yes" } else { "no" },
        algorithm: report.algorithm,
        counters: &report.counters,
        elapsed_ms: report.elapsed_ms,
        certificate: report.certificate.as_ref().map(allocation_to_doc),
    };
    serde_json::to_string(&doc).expect("report serialization cannot fail")
}

/// Renders a report's certificate (or lack of one) as a [`CertificateDoc`].
pub fn certificate_to_json(report: &SolveReport) -> String {
    let doc = CertificateDoc {
        feasible: report.verdict,
        assignment: report.certificate.as_ref().map(allocation_to_doc),
    };
    serde_json::to_string(&doc).expect("certificate serialization cannot fail")
}

// -- Source problems -----------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThreePartitionDoc {
    sizes: Vec<u64>,
    bound: u64,
}

pub fn parse_3partition(text: &str) -> Result<ThreePartitionInstance> {
    let doc: ThreePartitionDoc = serde_json::from_str(text).map_err(json_err)?;
    ThreePartitionInstance::new(doc.sizes, doc.bound)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Numerical3dmDoc {
    x: Vec<u64>,
    y: Vec<u64>,
    z: Vec<u64>,
    bound: u64,
}

pub fn parse_numerical_3dm(text: &str) -> Result<Numerical3dmInstance> {
    let doc: Numerical3dmDoc = serde_json::from_str(text).map_err(json_err)?;
    Numerical3dmInstance::new(doc.x, doc.y, doc.z, doc.bound)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl GraphDoc {
    fn build(&self) -> Result<ConflictGraph> {
        let edges = check_edges(&self.edges, self.vertices, "/edges")?;
        ConflictGraph::new(self.vertices, edges)
    }
}

/// Parses a bare graph document `{"vertices": ..., "edges": [[a,b], ...]}`.
pub fn parse_graph(text: &str) -> Result<ConflictGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(json_err)?;
    doc.build()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndependentSetDoc {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    k: usize,
}

pub fn parse_independent_set(text: &str) -> Result<IndependentSetInstance> {
    let doc: IndependentSetDoc = serde_json::from_str(text).map_err(json_err)?;
    let graph = GraphDoc {
        vertices: doc.vertices,
        edges: doc.edges,
    }
    .build()?;
    IndependentSetInstance::new(graph, doc.k)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SbMwisDoc {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    weights: Vec<u64>,
    size_cap: usize,
    target: u64,
}

pub fn parse_sbmwis(text: &str) -> Result<SbMwisInstance> {
    let doc: SbMwisDoc = serde_json::from_str(text).map_err(json_err)?;
    let graph = GraphDoc {
        vertices: doc.vertices,
        edges: doc.edges,
    }
    .build()?;
    if doc.weights.len() != doc.vertices {
        return Err(Error::invalid(
            InvalidCode::WeightDim,
            "/weights",
            format!("{} weights for {} vertices", doc.weights.len(), doc.vertices),
        ));
    }
    SbMwisInstance::new(graph, doc.weights, doc.size_cap, doc.target)
}

// -- Benchmark specifications -----------------------------------------------------------

/// One generator invocation inside a benchmark specification.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenDoc {
    Random {
        agents: usize,
        jobs: usize,
        eta: u64,
        max_utility: u64,
        edge_percent: u8,
        #[serde(default)]
        cap: Option<usize>,
        #[serde(default)]
        uniform: bool,
        seed: u64,
    },
    Cluster {
        agents: usize,
        jobs: usize,
        eta: u64,
        max_utility: u64,
        cliques: usize,
        #[serde(default)]
        cap: Option<usize>,
        #[serde(default)]
        uniform: bool,
        seed: u64,
    },
    NearComplete {
        agents: usize,
        jobs: usize,
        eta: u64,
        max_utility: u64,
        missing: usize,
        #[serde(default)]
        cap: Option<usize>,
        #[serde(default)]
        uniform: bool,
        seed: u64,
    },
    ComplementMatching {
        agents: usize,
        jobs: usize,
        eta: u64,
        max_utility: u64,
        #[serde(default)]
        cap: Option<usize>,
        #[serde(default)]
        uniform: bool,
        seed: u64,
    },
}

impl GenDoc {
    /// Runs the generator this row describes.
    pub fn build(&self) -> Result<Instance> {
        use crate::reductions::{
            gen_cluster, gen_complement_matching, gen_near_complete, gen_random, GenParams,
        };
        let params = |agents: &usize, jobs: &usize, eta: &u64, max_utility: &u64, cap: &Option<usize>, uniform: &bool| GenParams {
            agents: *agents,
            jobs: *jobs,
            eta: *eta,
            max_utility: *max_utility,
            cap: *cap,
            uniform: *uniform,
        };
        match self {
            GenDoc::Random {
                agents, jobs, eta, max_utility, edge_percent, cap, uniform, seed,
            } => gen_random(&params(agents, jobs, eta, max_utility, cap, uniform), *edge_percent, *seed),
            GenDoc::Cluster {
                agents, jobs, eta, max_utility, cliques, cap, uniform, seed,
            } => Ok(gen_cluster(&params(agents, jobs, eta, max_utility, cap, uniform), *cliques, *seed)?.0),
            GenDoc::NearComplete {
                agents, jobs, eta, max_utility, missing, cap, uniform, seed,
            } => gen_near_complete(&params(agents, jobs, eta, max_utility, cap, uniform), *missing, *seed),
            GenDoc::ComplementMatching {
                agents, jobs, eta, max_utility, cap, uniform, seed,
            } => gen_complement_matching(&params(agents, jobs, eta, max_utility, cap, uniform), *seed),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GenDoc::Random { .. } => "random",
            GenDoc::Cluster { .. } => "cluster",
            GenDoc::NearComplete { .. } => "near_complete",
            GenDoc::ComplementMatching { .. } => "complement_matching",
        }
    }

    /// Compact `key=value;...` rendering of the generator parameters for CSV
    /// output (the kind itself is reported separately).
    pub fn describe(&self) -> String {
        fn fmt(fields: &[(&str, String)]) -> String {
            fields
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";")
        }
        let cap_str = |cap: &Option<usize>| cap.map_or("none".to_string(), |c| c.to_string());
        match self {
            GenDoc::Random { agents, jobs, eta, max_utility, edge_percent, cap, uniform, seed } => fmt(
                &[
                    ("agents", agents.to_string()),
                    ("jobs", jobs.to_string()),
                    ("eta", eta.to_string()),
                    ("max_utility", max_utility.to_string()),
                    ("edge_percent", edge_percent.to_string()),
                    ("cap", cap_str(cap)),
                    ("uniform", uniform.to_string()),
                    ("seed", seed.to_string()),
                ],
            ),
            GenDoc::Cluster { agents, jobs, eta, max_utility, cliques, cap, uniform, seed } => fmt(
                &[
                    ("agents", agents.to_string()),
                    ("jobs", jobs.to_string()),
                    ("eta", eta.to_string()),
                    ("max_utility", max_utility.to_string()),
                    ("cliques", cliques.to_string()),
                    ("cap", cap_str(cap)),
                    ("uniform", uniform.to_string()),
                    ("seed", seed.to_string()),
                ],
            ),
            GenDoc::NearComplete { agents, jobs, eta, max_utility, missing, cap, uniform, seed } => fmt(
                &[
                    ("agents", agents.to_string()),
                    ("jobs", jobs.to_string()),
                    ("eta", eta.to_string()),
                    ("max_utility", max_utility.to_string()),
                    ("missing", missing.to_string()),
                    ("cap", cap_str(cap)),
                    ("uniform", uniform.to_string()),
                    ("seed", seed.to_string()),
                ],
            ),
            GenDoc::ComplementMatching { agents, jobs, eta, max_utility, cap, uniform, seed } => fmt(
                &[
                    ("agents", agents.to_string()),
                    ("jobs", jobs.to_string()),
                    ("eta", eta.to_string()),
                    ("max_utility", max_utility.to_string()),
                    ("cap", cap_str(cap)),
                    ("uniform", uniform.to_string()),
                    ("seed", seed.to_string()),
                ],
            ),
        }
    }
}

/// One benchmark row: generate an instance, solve it `reps` times with one
/// solver, report the lower median wall time.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchRow {
    pub gen: GenDoc,
    pub solver: String,
    /// Timing repetitions (at least 1).
    pub reps: u64,
    /// Seed handed to randomized solvers.
    #[serde(default)]
    pub seed: u64,
    /// Repetition override for the Monte Carlo solver.
    #[serde(default)]
    pub repetitions: Option<u64>,
    /// Work budget override for budgeted solvers.
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSpec {
    pub rows: Vec<BenchRow>,
}

pub fn parse_bench_spec(text: &str) -> Result<BenchSpec> {
    let spec: BenchSpec = serde_json::from_str(text).map_err(json_err)?;
    for (i, row) in spec.rows.iter().enumerate() {
        if row.reps == 0 {
            return Err(Error::invalid(
                InvalidCode::BadParam,
                format!("/rows/{i}/reps"),
                "timing repetitions must be at least 1",
            ));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_instance_json() -> &'static str {
        r#"{
            "agents": ["a1", "a2"],
            "jobs": ["x1", "x2", "x3"],
            "utilities": [[5, 1, 0], [0, 1, 5]],
            "edges": [[0, 2]],
            "eta": 5,
            "bundle_cap": 2
        }"#
    }

    #[test]
    fn instance_round_trips_byte_stable() {
        let inst = parse_instance(sample_instance_json()).unwrap();
        assert_eq!(inst.agent_count(), 2);
        assert_eq!(inst.eta(), 5);
        assert_eq!(inst.bundle_cap(), Some(2));
        assert!(inst.conflicts().has_edge(0, 2));

        let json = instance_to_json(&inst);
        let again = parse_instance(&json).unwrap();
        assert_eq!(inst, again);
        assert_eq!(json, instance_to_json(&again));

        // The cap is omitted entirely when absent.
        let uncapped = parse_instance(
            r#"{"agents":["a1"],"jobs":["x1"],"utilities":[[1]],"edges":[],"eta":1}"#,
        )
        .unwrap();
        assert!(!instance_to_json(&uncapped).contains("bundle_cap"));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_instance("{\n  \"agents\": [,]\n}") {
            Err(Error::Json { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let doc = r#"{"agents":[],"jobs":[],"utilities":[],"edges":[],"eta":1,"extra":0}"#;
        assert!(matches!(parse_instance(doc), Err(Error::Json { .. })));
    }

    #[test]
    fn semantic_errors_point_into_the_document() {
        let cases: Vec<(String, InvalidCode, &str)> = vec![
            (
                sample_instance_json().replace("\"eta\": 5", "\"eta\": 0"),
                InvalidCode::EtaRange,
                "/eta",
            ),
            (
                sample_instance_json().replace("[0, 1, 5]", "[0, 1]"),
                InvalidCode::DimMismatch,
                "/utilities/1",
            ),
            (
                sample_instance_json().replace("[[0, 2]]", "[[2, 0]]"),
                InvalidCode::EdgeOrder,
                "/edges/0",
            ),
            (
                sample_instance_json().replace("[[0, 2]]", "[[1, 1]]"),
                InvalidCode::SelfLoop,
                "/edges/0",
            ),
            (
                sample_instance_json().replace("[[0, 2]]", "[[0, 7]]"),
                InvalidCode::EdgeRange,
                "/edges/0",
            ),
            (
                sample_instance_json().replace("[[0, 2]]", "[[0, 2], [0, 2]]"),
                InvalidCode::DuplicateEdge,
                "/edges/1",
            ),
            (
                sample_instance_json().replace("\"a2\"", "\"a1\""),
                InvalidCode::DuplicateId,
                "/agents/1",
            ),
            (
                sample_instance_json().replace("\"bundle_cap\": 2", "\"bundle_cap\": 9"),
                InvalidCode::CapRange,
                "/bundle_cap",
            ),
        ];
        for (doc, want_code, want_pointer) in cases {
            match parse_instance(&doc) {
                Err(Error::Invalid { code, pointer, .. }) => {
                    assert_eq!(code, want_code);
                    assert_eq!(pointer, want_pointer);
                }
                other => panic!("expected {want_code:?} at {want_pointer}, got {other:?}"),
            }
        }
    }

    #[test]
    fn certificates_parse_and_resolve() {
        let doc = CertificateDoc::parse(
            r#"{"feasible": true, "assignment": {"a1": ["x1", "x2"], "a2": ["x3"]}}"#,
        )
        .unwrap();
        assert!(doc.feasible);
        let alloc = doc.allocation().unwrap();
        assert_eq!(alloc.bundles()["a1"].len(), 2);

        let bare = CertificateDoc::parse(r#"{"feasible": true}"#).unwrap();
        assert!(matches!(
            bare.allocation(),
            Err(Error::MalformedCertificate(_))
        ));

        let negative = CertificateDoc::parse(r#"{"feasible": false}"#).unwrap();
        assert!(!negative.feasible);
    }

    #[test]
    fn reports_render_stably() {
        let inst = parse_instance(sample_instance_json()).unwrap();
        let report = crate::oracle::brute_force_cffa(&inst).unwrap();
        let json = report_to_json(&report);
        assert!(json.starts_with(r#"{"verdict":"yes","algorithm":"brute""#));
        assert!(json.contains(r#""certificate":{"a1":["x1","x2"],"a2":["x3"]}"#));

        let cert = certificate_to_json(&report);
        let parsed = CertificateDoc::parse(&cert).unwrap();
        assert!(parsed.feasible);
        assert!(crate::model::verify_allocation(&inst, &parsed.allocation().unwrap()).unwrap());

        let hopeless = parse_instance(
            r#"{"agents":["a1"],"jobs":["x1"],"utilities":[[1]],"edges":[],"eta":9}"#,
        )
        .unwrap();
        let no = crate::oracle::brute_force_cffa(&hopeless).unwrap();
        assert!(report_to_json(&no).contains(r#""certificate":null"#));
        assert_eq!(certificate_to_json(&no), r#"{"feasible":false}"#);
    }

    #[test]
    fn source_documents_parse() {
        let tp = parse_3partition(r#"{"sizes": [3, 3, 4], "bound": 10}"#).unwrap();
        assert_eq!(tp.groups(), 1);
        assert!(matches!(
            parse_3partition(r#"{"sizes": [3, 3, 3], "bound": 10}"#),
            Err(Error::Invalid { code: InvalidCode::SumMismatch, .. })
        ));

        let n3dm =
            parse_numerical_3dm(r#"{"x": [1], "y": [3], "z": [5], "bound": 9}"#).unwrap();
        assert_eq!(n3dm.bound(), 9);

        let is = parse_independent_set(
            r#"{"vertices": 3, "edges": [[0, 1], [1, 2]], "k": 2}"#,
        )
        .unwrap();
        assert_eq!(is.k(), 2);

        let sb = parse_sbmwis(
            r#"{"vertices": 2, "edges": [[0, 1]], "weights": [3, 4], "size_cap": 1, "target": 4}"#,
        )
        .unwrap();
        assert_eq!(sb.target(), 4);
        assert!(matches!(
            parse_sbmwis(
                r#"{"vertices": 2, "edges": [], "weights": [3], "size_cap": 1, "target": 4}"#
            ),
            Err(Error::Invalid { code: InvalidCode::WeightDim, .. })
        ));

        let g = parse_graph(r#"{"vertices": 4, "edges": [[0, 3]]}"#).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(matches!(
            parse_graph(r#"{"vertices": 2, "edges": [[1, 0]]}"#),
            Err(Error::Invalid { code: InvalidCode::EdgeOrder, .. })
        ));
    }

    #[test]
    fn bench_specs_parse() {
        let spec = parse_bench_spec(
            r#"{"rows": [
                {"gen": {"kind": "random", "agents": 2, "jobs": 6, "eta": 4,
                         "max_utility": 9, "edge_percent": 30, "seed": 1},
                 "solver": "subsetconv", "reps": 3},
                {"gen": {"kind": "cluster", "agents": 2, "jobs": 6, "eta": 4,
                         "max_utility": 9, "cliques": 2, "uniform": true, "seed": 2},
                 "solver": "auto", "reps": 1, "seed": 5, "budget": 1000}
            ]}"#,
        )
        .unwrap();
        assert_eq!(spec.rows.len(), 2);
        assert_eq!(spec.rows[0].solver, "subsetconv");
        assert_eq!(spec.rows[1].seed, 5);
        let inst = spec.rows[0].gen.build().unwrap();
        assert_eq!(inst.job_count(), 6);
        assert_eq!(spec.rows[0].gen.kind_name(), "random");
        assert!(spec.rows[0].gen.describe().starts_with("agents=2;"));

        assert!(matches!(
            parse_bench_spec(r#"{"rows": [{"gen": {"kind": "random", "agents": 1, "jobs": 2, "eta": 1, "max_utility": 1, "edge_percent": 0, "seed": 0}, "solver": "auto", "reps": 0}]}"#),
            Err(Error::Invalid { code: InvalidCode::BadParam, .. })
        ));
    }
}
