//! Polynomial-time exact solvers for structured conflict graphs, plus the
//! bipartite matching engine they share.
//!
//! Three shapes admit direct algorithms:
//!
//! - **complete** conflict graphs: every bundle is a singleton, so the
//!   problem is a bipartite matching between agents and individually
//!   sufficient jobs;
//! - **two-clique cluster graphs with uniform utilities**: bundles are
//!   singletons or cross-clique pairs, and a matching over qualifying
//!   low-value pairs settles the rest;
//! - **near-complete graphs with uniform utilities** (every job conflicts
//!   with all but exactly one other): the non-conflicting pairs form a fixed
//!   perfect matching on the jobs, so counting suffices.
//!
//! Each solver checks its structural precondition up front and refuses with a
//! routing error instead of answering a question it was not built for.

use std::collections::{BTreeMap, VecDeque};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{ms_since, Instance, SolveReport};

/// Maximum matching in a bipartite graph.
#[derive(Debug, Clone)]
pub struct BipartiteMatching {
    pub size: usize,
    /// For each left vertex, its matched right vertex.
    pub left_match: Vec<Option<usize>>,
    /// For each right vertex, its matched left vertex.
    pub right_match: Vec<Option<usize>>,
}

/// Hopcroft–Karp maximum bipartite matching.
///
/// `adjacency[u]` lists the right-side neighbors of left vertex `u` (any
/// order; duplicates tolerated). Deterministic: adjacency is sorted
/// internally and all scans run in index order, so equal inputs produce the
/// identical matching, not merely one of equal size.
pub fn max_bipartite_matching(
    left: usize,
    right: usize,
    adjacency: &[Vec<usize>],
) -> BipartiteMatching {
    debug_assert_eq!(adjacency.len(), left);
    let adj: Vec<Vec<usize>> = adjacency
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.sort_unstable();
            row.dedup();
            debug_assert!(row.iter().all(|&v| v < right));
            row
        })
        .collect();

    let mut left_match: Vec<Option<usize>> = vec![None; left];
    let mut right_match: Vec<Option<usize>> = vec![None; right];
    let mut dist: Vec<u64> = vec![u64::MAX; left];

    loop {
        // Layer the alternating-path forest from the free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left {
            if left_match[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = u64::MAX;
            }
        }
        let mut free_right_reachable = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match right_match[v] {
                    None => free_right_reachable = true,
                    Some(w) => {
                        if dist[w] == u64::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !free_right_reachable {
            break;
        }
        // Augment along a maximal set of disjoint shortest paths.
        for u in 0..left {
            if left_match[u].is_none() {
                augment(u, &adj, &mut left_match, &mut right_match, &mut dist);
            }
        }
    }

    let size = left_match.iter().flatten().count();
    BipartiteMatching {
        size,
        left_match,
        right_match,
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    left_match: &mut [Option<usize>],
    right_match: &mut [Option<usize>],
    dist: &mut [u64],
) -> bool {
    for &v in &adj[u] {
        let extends = match right_match[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, left_match, right_match, dist),
        };
        if extends {
            left_match[u] = Some(v);
            right_match[v] = Some(u);
            return true;
        }
    }
    dist[u] = u64::MAX;
    false
}

/// Exact solver for complete conflict graphs.
///
/// When every pair of jobs conflicts, a bundle can hold at most one job, so
/// feasibility is a bipartite matching question: can each agent be given a
/// distinct job they value at least `eta`? The certificate pairs agents with
/// their matched jobs.
pub fn solve_complete_graph(inst: &Instance) -> Result<SolveReport> {
    let start = Instant::now();
    if !inst.conflicts().is_complete() {
        return Err(Error::Routing(
            "complete-graph solver requires every pair of jobs to conflict".into(),
        ));
    }
    let n = inst.agent_count();
    let m = inst.job_count();
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..m).filter(|&j| inst.utility(a, j) >= inst.eta()).collect())
        .collect();
    let qualifying: u64 = adjacency.iter().map(|r| r.len() as u64).sum();
    let matching = max_bipartite_matching(n, m, &adjacency);
    let counters = BTreeMap::from([
        ("qualifying_pairs".to_string(), qualifying),
        ("matched_agents".to_string(), matching.size as u64),
    ]);
    if matching.size == n {
        let bundles: Vec<Vec<usize>> = matching
            .left_match
            .iter()
            .map(|j| vec![j.expect("a perfect matching covers every agent")])
            .collect();
        SolveReport::verified_yes(inst, "complete", &bundles, counters, ms_since(start))
    } else {
        Ok(SolveReport::no("complete", counters, ms_since(start)))
    }
}

/// Exact solver for cluster graphs with exactly two cliques under uniform
/// utilities (all agents value each job identically).
///
/// Bundles can hold at most one job per clique: singletons, or one job from
/// each side. A job worth `eta` alone serves an agent by itself, and it is
/// never worse to use such jobs as singletons; the remaining agents each
/// need a cross-clique pair of below-threshold jobs whose values sum to
/// `eta`, which is again a bipartite matching. A bundle cap of 1 simply
/// forbids the pairs.
pub fn solve_cluster_two_cliques_uniform(inst: &Instance) -> Result<SolveReport> {
    let start = Instant::now();
    let parts = inst.conflicts().cluster_partition().ok_or_else(|| {
        Error::Routing("two-clique solver requires a cluster conflict graph".into())
    })?;
    if parts.len() != 2 {
        return Err(Error::Routing(format!(
            "two-clique solver requires exactly two cliques, found {}",
            parts.len()
        )));
    }
    if !inst.uniform_utilities() {
        return Err(Error::Routing(
            "two-clique solver requires all agents to share one utility row".into(),
        ));
    }
    let n = inst.agent_count();
    let eta = inst.eta();
    if n == 0 {
        return SolveReport::verified_yes(inst, "cluster2u", &[], BTreeMap::new(), ms_since(start));
    }
    let value = |j: usize| inst.utility(0, j);

    let high: Vec<usize> = (0..inst.job_count()).filter(|&j| value(j) >= eta).collect();
    if high.len() >= n {
        let bundles: Vec<Vec<usize>> = high[..n].iter().map(|&j| vec![j]).collect();
        let counters = BTreeMap::from([
            ("high_jobs".to_string(), high.len() as u64),
            ("qualifying_pairs".to_string(), 0),
            ("matched_pairs".to_string(), 0),
        ]);
        return SolveReport::verified_yes(inst, "cluster2u", &bundles, counters, ms_since(start));
    }

    let pairs_allowed = inst.bundle_cap().is_none_or(|cap| cap >= 2);
    let left: Vec<usize> = parts[0].iter().copied().filter(|&j| value(j) < eta).collect();
    let right: Vec<usize> = parts[1].iter().copied().filter(|&j| value(j) < eta).collect();
    let adjacency: Vec<Vec<usize>> = left
        .iter()
        .map(|&a| {
            if !pairs_allowed {
                return Vec::new();
            }
            right
                .iter()
                .enumerate()
                .filter(|&(_, &b)| value(a).saturating_add(value(b)) >= eta)
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    let qualifying: u64 = adjacency.iter().map(|r| r.len() as u64).sum();
    let matching = max_bipartite_matching(left.len(), right.len(), &adjacency);
    let counters = BTreeMap::from([
        ("high_jobs".to_string(), high.len() as u64),
        ("qualifying_pairs".to_string(), qualifying),
        ("matched_pairs".to_string(), matching.size as u64),
    ]);
    let need = n - high.len();
    if matching.size < need {
        return Ok(SolveReport::no("cluster2u", counters, ms_since(start)));
    }
    let mut bundles: Vec<Vec<usize>> = high.iter().map(|&j| vec![j]).collect();
    for (li, mv) in matching.left_match.iter().enumerate() {
        if bundles.len() == n {
            break;
        }
        if let Some(ri) = mv {
            bundles.push(vec![left[li], right[*ri]]);
        }
    }
    SolveReport::verified_yes(inst, "cluster2u", &bundles, counters, ms_since(start))
}

/// Exact solver for near-complete conflict graphs under uniform utilities:
/// every job conflicts with all but exactly one other job.
///
/// The non-edges then form a perfect matching on the jobs, so the only
/// conflict-free bundles are singletons and those fixed partner pairs. Jobs
/// worth `eta` alone serve as singletons; each remaining agent needs a
/// partner pair of two below-threshold jobs summing to `eta`. The pairs are
/// disjoint by construction, so feasibility is pure counting.
pub fn solve_near_complete_uniform(inst: &Instance) -> Result<SolveReport> {
    let start = Instant::now();
    let m = inst.job_count();
    if m < 2 || (0..m).any(|v| inst.conflicts().degree(v) != m - 2) {
        return Err(Error::Routing(
            "near-complete solver requires every job to conflict with all but exactly one other"
                .into(),
        ));
    }
    if !inst.uniform_utilities() {
        return Err(Error::Routing(
            "near-complete solver requires all agents to share one utility row".into(),
        ));
    }
    let n = inst.agent_count();
    let eta = inst.eta();
    if n == 0 {
        return SolveReport::verified_yes(inst, "nearcomplete_u", &[], BTreeMap::new(), ms_since(start));
    }
    let value = |j: usize| inst.utility(0, j);

    let partner: Vec<usize> = (0..m)
        .map(|v| {
            (0..m)
                .find(|&u| u != v && !inst.conflicts().has_edge(u, v))
                .expect("degree m-2 leaves exactly one non-neighbor")
        })
        .collect();
    let high: Vec<usize> = (0..m).filter(|&j| value(j) >= eta).collect();
    let pairs_allowed = inst.bundle_cap().is_none_or(|cap| cap >= 2);
    let pairs: Vec<(usize, usize)> = (0..m)
        .filter(|&v| v < partner[v])
        .map(|v| (v, partner[v]))
        .filter(|&(a, b)| {
            pairs_allowed
                && value(a) < eta
                && value(b) < eta
                && value(a).saturating_add(value(b)) >= eta
        })
        .collect();
    let counters = BTreeMap::from([
        ("high_jobs".to_string(), high.len() as u64),
        ("qualifying_pairs".to_string(), pairs.len() as u64),
    ]);

    if high.len() >= n {
        let bundles: Vec<Vec<usize>> = high[..n].iter().map(|&j| vec![j]).collect();
        return SolveReport::verified_yes(inst, "nearcomplete_u", &bundles, counters, ms_since(start));
    }
    if high.len() + pairs.len() < n {
        return Ok(SolveReport::no("nearcomplete_u", counters, ms_since(start)));
    }
    let mut bundles: Vec<Vec<usize>> = high.iter().map(|&j| vec![j]).collect();
    for &(a, b) in pairs.iter().take(n - high.len()) {
        bundles.push(vec![a, b]);
    }
    SolveReport::verified_yes(inst, "nearcomplete_u", &bundles, counters, ms_since(start))
}
