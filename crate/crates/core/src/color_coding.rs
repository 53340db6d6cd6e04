//! Color-coding solver for capped bundles: jobs get random colors, and a
//! dynamic program over color sets finds an allocation whose bundles use
//! pairwise-distinct colors.
//!
//! With a bundle cap `s`, a feasible allocation touches at most `n*s` jobs.
//! Coloring jobs uniformly with `n*s` colors makes any fixed witness
//! "colorful" (all touched jobs distinctly colored) with probability at least
//! `e^(-n*s)`; repeating with fresh colorings drives the false-negative rate
//! arbitrarily low, and a yes is always certified, so errors are one-sided.
//!
//! Deciding one coloring runs a subset DP over color sets whose inner
//! question — "does this agent have a feasible bundle inside this color
//! set?" — reduces to a size-bounded weighted independent-set query on the
//! conflict graph plus same-color edges. That inner solver is injected via
//! [`SbMwisSolver`], so structured graphs get their fast algorithms and
//! everything else falls back to the exhaustive scan.
//!
//! [`solve_exhaustive_colorings`] replaces the randomness with a full sweep
//! over all `(n*s)^m` colorings: slower, but exact and deterministic — every
//! witness is colorful under some coloring in the sweep.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec;
use crate::model::{ms_since, ConflictGraph, Instance, SolveReport};
use crate::oracle::brute_force_sbmwis;
use crate::sbmwis::{
    detect_class, solve_ifc_branching, solve_sbmwis_cluster, GraphClass,
    IndependenceFriendlyProfile, SbMwisAnswer, SbMwisInstance,
};

/// Most colors the subset DP accepts (the table has `2^colors` entries).
const MAX_COLORS: usize = 20;

/// Most colorings the exhaustive sweep will enumerate.
const MAX_SWEEP: u128 = 10_000_000;

/// Default ceiling on Monte Carlo repetitions when none is given explicitly.
pub const DEFAULT_REPETITION_BUDGET: u64 = 1_000_000;

/// Interchangeable inner solver for the size-bounded weighted
/// independent-set queries the color DP issues.
pub trait SbMwisSolver: Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, inst: &SbMwisInstance) -> Result<SbMwisAnswer>;
}

/// Exhaustive inner solver; correct on anything small enough.
pub struct BruteForceSbMwis;

impl SbMwisSolver for BruteForceSbMwis {
    fn name(&self) -> &'static str {
        "sbmwis_brute"
    }
    fn solve(&self, inst: &SbMwisInstance) -> Result<SbMwisAnswer> {
        brute_force_sbmwis(inst)
    }
}

/// Structure-aware inner solver: cluster graphs take the greedy, bipartite
/// and low-degeneracy graphs take the branching search, everything else
/// falls back to the exhaustive scan.
pub struct AutoSbMwis;

impl SbMwisSolver for AutoSbMwis {
    fn name(&self) -> &'static str {
        "sbmwis_auto"
    }
    fn solve(&self, inst: &SbMwisInstance) -> Result<SbMwisAnswer> {
        let report = detect_class(inst.graph());
        if let Some(cliques) = report.cluster {
            return solve_sbmwis_cluster(inst, &cliques);
        }
        if inst.graph().vertex_count() <= 62 {
            let class = if report.bipartition.is_some() {
                Some(GraphClass::Bipartite)
            } else if report.degeneracy <= 4 {
                Some(GraphClass::Degenerate(report.degeneracy))
            } else {
                None
            };
            if let Some(class) = class {
                let profile = IndependenceFriendlyProfile::new(class)?;
                let out = solve_ifc_branching(inst, &profile)?;
                return Ok(SbMwisAnswer {
                    feasible: out.feasible,
                    witness: out.witness,
                });
            }
        }
        brute_force_sbmwis(inst)
    }
}

/// Result of deciding a single coloring.
#[derive(Debug, Clone)]
pub struct ColorfulOutcome {
    /// One bundle per agent when this coloring admits a colorful allocation.
    pub bundles: Option<Vec<Vec<usize>>>,
    /// Inner independent-set queries issued.
    pub inner_solves: u64,
    /// Submask probes performed by the table fill.
    pub transitions: u64,
}

/// Decides one coloring: is there an allocation whose bundles are feasible
/// for their agents and whose touched jobs carry pairwise-distinct colors?
///
/// Table row `i`, entry `S`: agents `0..i` can be served using colors drawn
/// from `S` only. The inner feasibility question per (agent, color set) is
/// answered by the injected solver on the conflict graph restricted to jobs
/// of those colors, with an extra edge between every same-colored pair, and
/// memoized. Requires a bundle cap (the color count is `agents * cap`).
pub fn dp_colorful(
    inst: &Instance,
    coloring: &[usize],
    solver: &dyn SbMwisSolver,
) -> Result<ColorfulOutcome> {
    let n = inst.agent_count();
    let m = inst.job_count();
    let Some(cap) = inst.bundle_cap() else {
        return Err(Error::Contract(
            "color coding requires a bundle size cap".into(),
        ));
    };
    if n == 0 {
        return Ok(ColorfulOutcome {
            bundles: Some(Vec::new()),
            inner_solves: 0,
            transitions: 0,
        });
    }
    let colors = n * cap;
    if colors > MAX_COLORS {
        return Err(Error::Capacity(format!(
            "color table has 2^{colors} entries; refusing beyond {MAX_COLORS} colors"
        )));
    }
    if coloring.len() != m {
        return Err(Error::Contract(format!(
            "coloring covers {} jobs, instance has {m}",
            coloring.len()
        )));
    }
    if let Some(&bad) = coloring.iter().find(|&&c| c >= colors) {
        return Err(Error::Contract(format!(
            "color {bad} out of range 0..{colors}"
        )));
    }

    let size = 1usize << colors;
    let restricted_jobs = |mask: usize| -> Vec<usize> {
        (0..m).filter(|&j| mask >> coloring[j] & 1 == 1).collect()
    };
    let aux_query = |agent: usize, mask: usize| -> Result<Option<SbMwisInstance>> {
        let jobs = restricted_jobs(mask);
        if jobs.is_empty() {
            return Ok(None);
        }
        let mut edges = Vec::new();
        for (p, &a) in jobs.iter().enumerate() {
            for (q, &b) in jobs.iter().enumerate().skip(p + 1) {
                if inst.conflicts().has_edge(a, b) || coloring[a] == coloring[b] {
                    edges.push((p, q));
                }
            }
        }
        let graph = ConflictGraph::new(jobs.len(), edges)?;
        let weights: Vec<u64> = jobs.iter().map(|&j| inst.utility(agent, j)).collect();
        let k = cap.min(jobs.len());
        Ok(Some(SbMwisInstance::new(graph, weights, k, inst.eta())?))
    };

    // Memoized inner feasibility for every color set that can host a bundle.
    let mut memo: Vec<Vec<u8>> = vec![vec![0u8; size]; n];
    let mut inner_solves = 0u64;
    for mask in 1..size {
        if mask.count_ones() as usize > cap {
            continue;
        }
        for (agent, row) in memo.iter_mut().enumerate() {
            if let Some(aux) = aux_query(agent, mask)? {
                inner_solves += 1;
                if solver.solve(&aux)?.feasible {
                    row[mask] = 1;
                }
            }
        }
    }

    let words = size.div_ceil(64);
    let get = |row: &[u64], idx: u64| row[(idx >> 6) as usize] >> (idx & 63) & 1 == 1;
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    rows.push(vec![u64::MAX; words]); // zero agents fit inside any color set
    let mut transitions = 0u64;
    for i in 1..=n {
        let mut cur = vec![0u64; words];
        for target in 0..size as u64 {
            let mut s = target;
            let hit = loop {
                transitions += 1;
                if s != 0
                    && s.count_ones() as usize <= cap
                    && memo[i - 1][s as usize] == 1
                    && get(&rows[i - 1], target ^ s)
                {
                    break true;
                }
                if s == 0 {
                    break false;
                }
                s = (s - 1) & target;
            };
            if hit {
                cur[(target >> 6) as usize] |= 1 << (target & 63);
            }
        }
        rows.push(cur);
    }

    let full = (size - 1) as u64;
    if !get(&rows[n], full) {
        return Ok(ColorfulOutcome {
            bundles: None,
            inner_solves,
            transitions,
        });
    }

    // Backtrack: smallest qualifying color set per agent, last agent first;
    // the inner solver is re-run on the chosen set to recover the bundle.
    let mut bundles = vec![Vec::new(); n];
    let mut remaining = full;
    for i in (1..=n).rev() {
        let mut s = 0u64;
        let chosen = loop {
            if s != 0
                && s.count_ones() as usize <= cap
                && memo[i - 1][s as usize] == 1
                && get(&rows[i - 1], remaining ^ s)
            {
                break s;
            }
            if s == remaining {
                return Err(Error::Internal(
                    "color table claims a split the backtrack cannot reproduce".into(),
                ));
            }
            s = s.wrapping_sub(remaining) & remaining;
        };
        let jobs = restricted_jobs(chosen as usize);
        let aux = aux_query(i - 1, chosen as usize)?
            .expect("memoized feasible set restricts to a nonempty job set");
        inner_solves += 1;
        let answer = solver.solve(&aux)?;
        let witness = answer.witness.ok_or_else(|| {
            Error::Internal("inner solver reported feasible without a witness".into())
        })?;
        bundles[i - 1] = witness.iter().map(|&p| jobs[p]).collect();
        remaining ^= chosen;
    }
    Ok(ColorfulOutcome {
        bundles: Some(bundles),
        inner_solves,
        transitions,
    })
}

/// Repetitions that push the colorful-witness miss probability below
/// `2^-40`: one coloring hits with probability at least `e^-colors`, so
/// `ceil(e^colors * 40 ln 2)` misses with probability at most
/// `exp(-40 ln 2) = 2^-40`.
pub fn default_repetitions(colors: usize) -> u64 {
    let reps = (colors as f64).exp() * 40.0 * std::f64::consts::LN_2;
    if reps >= u64::MAX as f64 {
        u64::MAX
    } else {
        reps.ceil() as u64
    }
}

/// Monte Carlo color-coding solver.
///
/// Repetition `r` draws its coloring from an independent, deterministic
/// stream (`seed` selects the generator, `r` the stream), so results are
/// reproducible and independent of how repetitions are scheduled. The first
/// successful repetition (lowest index) supplies the certificate. Errors are
/// one-sided: a yes is always verified, a no may — with probability at most
/// `2^-40` per feasible instance under the default repetition count — be a
/// miss. Explicit `repetitions` are honored as given; otherwise the default
/// count applies, capped by `budget` (default 10^6).
pub fn solve_color_coding(
    inst: &Instance,
    solver: &dyn SbMwisSolver,
    seed: u64,
    repetitions: Option<u64>,
    budget: Option<u64>,
) -> Result<SolveReport> {
    let start = Instant::now();
    let n = inst.agent_count();
    let m = inst.job_count();
    let Some(cap) = inst.bundle_cap() else {
        return Err(Error::Contract(
            "color coding requires a bundle size cap".into(),
        ));
    };
    if n == 0 {
        return SolveReport::verified_yes(inst, "color", &[], BTreeMap::new(), ms_since(start));
    }
    let colors = n * cap;
    if colors > MAX_COLORS {
        return Err(Error::Capacity(format!(
            "color table has 2^{colors} entries; refusing beyond {MAX_COLORS} colors"
        )));
    }
    let ceiling = budget.unwrap_or(DEFAULT_REPETITION_BUDGET).max(1);
    let (planned, capped) = match repetitions {
        Some(r) => (r.max(1), false),
        None => {
            let wanted = default_repetitions(colors);
            (wanted.min(ceiling), wanted > ceiling)
        }
    };

    let attempt = |rep: u64| -> Option<Result<(u64, ColorfulOutcome)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(rep);
        let coloring: Vec<usize> = (0..m).map(|_| rng.gen_range(0..colors)).collect();
        match dp_colorful(inst, &coloring, solver) {
            Err(e) => Some(Err(e)),
            Ok(out) if out.bundles.is_some() => Some(Ok((rep, out))),
            Ok(_) => None,
        }
    };

    match exec::find_map_first(planned, attempt).transpose()? {
        Some((rep, out)) => {
            let counters = BTreeMap::from([
                ("colors".to_string(), colors as u64),
                ("repetitions_planned".to_string(), planned),
                ("colorings_tried".to_string(), rep + 1),
                ("inner_solves".to_string(), out.inner_solves),
                ("budget_capped".to_string(), capped as u64),
            ]);
            let bundles = out.bundles.expect("successful repetition carries bundles");
            SolveReport::verified_yes(inst, "color", &bundles, counters, ms_since(start))
        }
        None => {
            let counters = BTreeMap::from([
                ("colors".to_string(), colors as u64),
                ("repetitions_planned".to_string(), planned),
                ("colorings_tried".to_string(), planned),
                ("budget_capped".to_string(), capped as u64),
            ]);
            Ok(SolveReport::no("color", counters, ms_since(start)))
        }
    }
}

/// Derandomized color coding: sweeps every one of the `colors^m` colorings
/// (job 0 varies fastest). Exact — any feasible allocation is colorful under
/// some coloring in the sweep — but only viable when `colors^m` is small;
/// refuses beyond 10^7.
pub fn solve_exhaustive_colorings(inst: &Instance, solver: &dyn SbMwisSolver) -> Result<SolveReport> {
    let start = Instant::now();
    let n = inst.agent_count();
    let m = inst.job_count();
    let Some(cap) = inst.bundle_cap() else {
        return Err(Error::Contract(
            "color coding requires a bundle size cap".into(),
        ));
    };
    if n == 0 {
        return SolveReport::verified_yes(
            inst,
            "color_exhaustive",
            &[],
            BTreeMap::new(),
            ms_since(start),
        );
    }
    let colors = n * cap;
    if colors > MAX_COLORS {
        return Err(Error::Capacity(format!(
            "color table has 2^{colors} entries; refusing beyond {MAX_COLORS} colors"
        )));
    }
    let mut total: u128 = 1;
    for _ in 0..m {
        total *= colors as u128;
        if total > MAX_SWEEP {
            return Err(Error::Capacity(format!(
                "coloring sweep would enumerate {colors}^{m} colorings; refusing beyond {MAX_SWEEP}"
            )));
        }
    }

    let attempt = |idx: u64| -> Option<Result<(u64, ColorfulOutcome)>> {
        let mut code = idx;
        let coloring: Vec<usize> = (0..m)
            .map(|_| {
                let c = (code % colors as u64) as usize;
                code /= colors as u64;
                c
            })
            .collect();
        match dp_colorful(inst, &coloring, solver) {
            Err(e) => Some(Err(e)),
            Ok(out) if out.bundles.is_some() => Some(Ok((idx, out))),
            Ok(_) => None,
        }
    };

    match exec::find_map_first(total as u64, attempt).transpose()? {
        Some((idx, out)) => {
            let counters = BTreeMap::from([
                ("colors".to_string(), colors as u64),
                ("colorings_tried".to_string(), idx + 1),
                ("inner_solves".to_string(), out.inner_solves),
            ]);
            let bundles = out.bundles.expect("successful coloring carries bundles");
            SolveReport::verified_yes(inst, "color_exhaustive", &bundles, counters, ms_since(start))
        }
        None => {
            let counters = BTreeMap::from([
                ("colors".to_string(), colors as u64),
                ("colorings_tried".to_string(), total as u64),
            ]);
            Ok(SolveReport::no("color_exhaustive", counters, ms_since(start)))
        }
    }
}
