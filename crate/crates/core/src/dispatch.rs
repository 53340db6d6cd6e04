//! Solver selection: a name for every solver, an automatic router that
//! inspects instance shape, and a benchmark runner.

use std::fmt;
use std::str::FromStr;

use crate::color_coding::{solve_color_coding, AutoSbMwis};
use crate::error::{Error, Result};
use crate::io::BenchSpec;
use crate::model::{Instance, SolveReport};
use crate::near_complete::{solve_guess_per_agent, solve_partition_contract};
use crate::oracle::{brute_force_cffa, subset_dp_cffa};
use crate::structured::{
    solve_cluster_two_cliques_uniform, solve_complete_graph, solve_near_complete_uniform,
};
use crate::subsetconv::solve_fpt_items;

/// Every selectable solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    /// Route by instance shape.
    Auto,
    /// Exhaustive assignment search.
    Brute,
    /// Subset dynamic program over job sets.
    SubsetDp,
    /// Subset-convolution engine.
    SubsetConv,
    /// Randomized color coding (needs a bundle cap).
    Color,
    /// Complete conflict graph: single-job bundles via matching.
    Complete,
    /// Two cliques, shared utilities.
    Cluster2u,
    /// Every vertex degree `jobs - 2`, shared utilities.
    NearCompleteU,
    /// Few missing edges: guess per-agent independent sets.
    GuessTn,
    /// Few missing edges: canonical vertex partitions.
    PartitionT,
}

impl SolverChoice {
    pub const ALL: [SolverChoice; 10] = [
        SolverChoice::Auto,
        SolverChoice::Brute,
        SolverChoice::SubsetDp,
        SolverChoice::SubsetConv,
        SolverChoice::Color,
        SolverChoice::Complete,
        SolverChoice::Cluster2u,
        SolverChoice::NearCompleteU,
        SolverChoice::GuessTn,
        SolverChoice::PartitionT,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SolverChoice::Auto => "auto",
            SolverChoice::Brute => "brute",
            SolverChoice::SubsetDp => "subsetdp",
            SolverChoice::SubsetConv => "subsetconv",
            SolverChoice::Color => "color",
            SolverChoice::Complete => "complete",
            SolverChoice::Cluster2u => "cluster2u",
            SolverChoice::NearCompleteU => "nearcomplete_u",
            SolverChoice::GuessTn => "guess_tn",
            SolverChoice::PartitionT => "partition_t",
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SolverChoice::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SolverChoice::ALL.iter().map(|c| c.as_str()).collect();
                Error::Routing(format!(
                    "unknown solver {s:?}; expected one of {}",
                    known.join(", ")
                ))
            })
    }
}

/// Knobs shared across solvers; harmless where unused.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Seed for randomized solvers.
    pub seed: u64,
    /// Repetition override for the Monte Carlo color solver.
    pub repetitions: Option<u64>,
    /// Work budget: guess count for the guessing solver, repetition ceiling
    /// for the color solver's default plan.
    pub budget: Option<u64>,
    /// Missing-edge ceiling for the partition solver.
    pub max_missing: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            repetitions: None,
            budget: None,
            max_missing: None,
        }
    }
}

/// Picks a solver for `auto` mode from instance shape alone, preferring
/// structure-specific polynomial solvers, then the missing-edge partition
/// solver, then the exact exponential engines smallest-first, with
/// randomized color coding as a narrow last resort before plain search.
pub fn route(inst: &Instance) -> SolverChoice {
    let m = inst.job_count();
    let g = inst.conflicts();
    if g.is_complete() {
        return SolverChoice::Complete;
    }
    if inst.uniform_utilities() {
        if g.cluster_partition().is_some_and(|p| p.len() == 2) {
            return SolverChoice::Cluster2u;
        }
        if m >= 2 && (0..m).all(|v| g.degree(v) == m - 2) {
            return SolverChoice::NearCompleteU;
        }
    }
    let missing = m * m.saturating_sub(1) / 2 - g.edge_count();
    if missing <= 10 {
        return SolverChoice::PartitionT;
    }
    if m <= 20 {
        return SolverChoice::SubsetConv;
    }
    if m <= 22 {
        return SolverChoice::SubsetDp;
    }
    if m <= 24 {
        if let Some(cap) = inst.bundle_cap() {
            if inst.agent_count() * cap <= 12 {
                return SolverChoice::Color;
            }
        }
    }
    SolverChoice::Brute
}

/// Runs the chosen solver (resolving `Auto` through [`route`]).
pub fn solve(inst: &Instance, choice: SolverChoice, opts: &SolveOptions) -> Result<SolveReport> {
    match choice {
        SolverChoice::Auto => solve(inst, route(inst), opts),
        SolverChoice::Brute => brute_force_cffa(inst),
        SolverChoice::SubsetDp => subset_dp_cffa(inst),
        SolverChoice::SubsetConv => solve_fpt_items(inst),
        SolverChoice::Color => {
            solve_color_coding(inst, &AutoSbMwis, opts.seed, opts.repetitions, opts.budget)
        }
        SolverChoice::Complete => solve_complete_graph(inst),
        SolverChoice::Cluster2u => solve_cluster_two_cliques_uniform(inst),
        SolverChoice::NearCompleteU => solve_near_complete_uniform(inst),
        SolverChoice::GuessTn => solve_guess_per_agent(inst, opts.budget),
        SolverChoice::PartitionT => solve_partition_contract(inst, opts.max_missing),
    }
}

/// Runs a benchmark specification row by row and renders a CSV table:
/// `row,kind,params,solver,verdict,counters,median_elapsed_ms,status`.
///
/// Each row generates its instance, solves it `reps` times, and reports the
/// lower-median wall time. All repetitions must return identical verdicts,
/// counters, and certificates; disagreement is flagged in the `status`
/// column rather than averaged away. A row that fails (bad generator
/// parameters, unknown solver, capacity) gets `verdict` = `error` and the
/// message in its `status` column, and the run continues. Everything except
/// the timing column is reproducible byte for byte.
pub fn run_bench(spec: &BenchSpec) -> String {
    let mut out = String::from("row,kind,params,solver,verdict,counters,median_elapsed_ms,status\n");
    let csv_safe = |s: &str| s.replace([',', '\n'], ";");
    for (i, row) in spec.rows.iter().enumerate() {
        match bench_row(row) {
            Ok((algorithm, verdict, counters, median, consistent)) => {
                out.push_str(&format!(
                    "{i},{},{},{algorithm},{},{counters},{median},{}\n",
                    row.gen.kind_name(),
                    row.gen.describe(),
                    if verdict { "yes" } else { "no" },
                    if consistent { "ok" } else { "nondeterministic" },
                ));
            }
            Err(e) => {
                out.push_str(&format!(
                    "{i},{},{},{},error,,0,{}\n",
                    row.gen.kind_name(),
                    row.gen.describe(),
                    csv_safe(&row.solver),
                    csv_safe(&e.to_string()),
                ));
            }
        }
    }
    out
}

fn bench_row(row: &crate::io::BenchRow) -> Result<(&'static str, bool, String, u64, bool)> {
    let inst = row.gen.build()?;
    let choice = SolverChoice::from_str(&row.solver)?;
    let opts = SolveOptions {
        seed: row.seed,
        repetitions: row.repetitions,
        budget: row.budget,
        max_missing: None,
    };
    let mut runs = Vec::with_capacity(row.reps as usize);
    for _ in 0..row.reps {
        runs.push(solve(&inst, choice, &opts)?);
    }
    let first = &runs[0];
    let consistent = runs.iter().all(|r| {
        r.verdict == first.verdict
            && r.counters == first.counters
            && r.algorithm == first.algorithm
            && r.certificate == first.certificate
    });
    let mut elapsed: Vec<u64> = runs.iter().map(|r| r.elapsed_ms).collect();
    elapsed.sort_unstable();
    let median = elapsed[(elapsed.len() - 1) / 2];
    let counters = first
        .counters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";");
    Ok((first.algorithm, first.verdict, counters, median, consistent))
}
