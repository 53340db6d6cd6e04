//! Solvers parameterized by distance from completeness: when the conflict
//! graph is missing only `t` edges, every bundle of two or more jobs is a
//! clique of the complement graph, which has just `t` edges. That confines
//! all interesting structure to the at most `2t` vertices those missing
//! edges touch, and two exact strategies fall out:
//!
//! * [`solve_guess_per_agent`] enumerates the nontrivial independent sets
//!   (provably few — see [`enumerate_nontrivial_independent_sets`]), guesses
//!   which agent takes which set, and serves everyone else a single job via
//!   maximum bipartite matching.
//! * [`solve_partition_contract`] instead enumerates canonical partitions of
//!   the touched vertices into prospective bundles and lets one matching
//!   assign bundles and leftover single jobs to agents simultaneously.
//!
//! Both are exact on every input; the missing-edge count only governs cost,
//! so each refuses (with a capacity error) when its parameter is too large.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec;
use crate::model::{ms_since, ConflictGraph, Instance, SolveReport};
use crate::structured::{max_bipartite_matching, solve_complete_graph};

/// Most missing edges the set enumeration accepts (keeps the touched-vertex
/// masks within a `u64`).
const MAX_MISSING: usize = 24;

/// Default ceiling on the number of per-agent guesses.
pub const DEFAULT_GUESS_BUDGET: u64 = 100_000_000;

/// Default ceiling on missing edges for the partition solver.
pub const DEFAULT_PARTITION_MISSING: usize = 10;

/// The complement of a conflict graph, restricted to the vertices that are
/// actually missing an edge.
///
/// `support` lists those vertices ascending; `complement_graph` is the
/// complement on them (local indices follow `support` order).
pub struct ComplementView {
    missing: Vec<(usize, usize)>,
    support: Vec<usize>,
    local: ConflictGraph,
    degeneracy: usize,
    order: Vec<usize>,
}

impl ComplementView {
    pub fn new(g: &ConflictGraph) -> Result<Self> {
        let missing = g.complement_edges();
        let mut support: Vec<usize> = missing.iter().flat_map(|&(a, b)| [a, b]).collect();
        support.sort_unstable();
        support.dedup();
        let local_of = |v: usize| support.binary_search(&v).expect("endpoint is in support");
        let local_edges: Vec<(usize, usize)> = missing
            .iter()
            .map(|&(a, b)| (local_of(a), local_of(b)))
            .collect();
        let local = ConflictGraph::new(support.len(), local_edges)?;
        let (degeneracy, order) = local.degeneracy_order();
        Ok(ComplementView {
            missing,
            support,
            local,
            degeneracy,
            order,
        })
    }

    pub fn missing_edge_count(&self) -> usize {
        self.missing.len()
    }

    pub fn missing_edges(&self) -> &[(usize, usize)] {
        &self.missing
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn complement_graph(&self) -> &ConflictGraph {
        &self.local
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy
    }

    pub fn elimination_order(&self) -> &[usize] {
        &self.order
    }
}

/// Every independent set of size at least two, sorted by size then
/// lexicographically.
///
/// Such a set is a clique of the complement, so with `t` missing edges it
/// lives on the at most `2t` touched vertices, and each set is discovered
/// exactly once: at its elimination-order-first vertex, as a subset of that
/// vertex's forward neighborhood. Forward degrees are bounded by the
/// complement's degeneracy, which is at most `ceil(2 sqrt(t))` for a graph
/// with `t` edges, so at most `2t * 2^ceil(2 sqrt(t))` sets come back.
pub fn enumerate_nontrivial_independent_sets(view: &ComplementView) -> Result<Vec<Vec<usize>>> {
    let t = view.missing_edge_count();
    if t > MAX_MISSING {
        return Err(Error::Capacity(format!(
            "graph misses {t} edges; set enumeration is only guaranteed small near completeness (at most {MAX_MISSING} missing)"
        )));
    }
    let w = view.support.len();
    let mut pos = vec![0usize; w];
    for (p, &v) in view.order.iter().enumerate() {
        pos[v] = p;
    }
    let adj: Vec<u64> = (0..w).map(|v| view.local.neighbor_mask(v)).collect();

    let mut out: Vec<Vec<usize>> = Vec::new();
    for v in 0..w {
        let fwd: Vec<usize> = view.local.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        for sub in 1u64..1 << fwd.len() {
            let mut mask = 0u64;
            let mut clique = true;
            let mut bits = sub;
            while bits != 0 {
                let u = fwd[bits.trailing_zeros() as usize];
                bits &= bits - 1;
                if adj[u] & mask != mask {
                    clique = false;
                    break;
                }
                mask |= 1 << u;
            }
            if !clique {
                continue;
            }
            let mut set = vec![view.support[v]];
            let mut bits = mask;
            while bits != 0 {
                set.push(view.support[bits.trailing_zeros() as usize]);
                bits &= bits - 1;
            }
            set.sort_unstable();
            out.push(set);
        }
    }
    out.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Exact solver that guesses, per agent, which nontrivial independent set
/// (if any) the agent receives; agents left out of the guess are served a
/// single job each through a maximum matching on the unclaimed jobs.
///
/// Sound because every guess is checked end to end, complete because a
/// feasible allocation's multi-job bundles are nontrivial independent sets —
/// so some guess names exactly them, and the allocation's own single jobs
/// saturate the matching. Guess counts above `budget` (default 10^8) are
/// refused; the partition solver handles such shapes with different cost.
pub fn solve_guess_per_agent(inst: &Instance, budget: Option<u64>) -> Result<SolveReport> {
    let start = Instant::now();
    let n = inst.agent_count();
    let m = inst.job_count();
    let eta = inst.eta();
    let view = ComplementView::new(inst.conflicts())?;
    let raw = enumerate_nontrivial_independent_sets(&view)?;
    let sets_enumerated = raw.len() as u64;

    // Keep only sets somebody could receive; record who.
    let mut sets: Vec<(Vec<usize>, u64)> = Vec::new();
    let mut agent_ok: Vec<Vec<bool>> = Vec::new();
    for set in raw {
        if inst.bundle_cap().is_some_and(|c| set.len() > c) {
            continue;
        }
        let ok: Vec<bool> = (0..n)
            .map(|a| {
                inst.bundle_utility(a, &set)
                    .expect("enumerated set indexes this instance")
                    >= eta
            })
            .collect();
        if ok.contains(&true) {
            let mask = set.iter().fold(0u64, |acc, &j| {
                acc | 1 << view.support.binary_search(&j).expect("set lives on the support")
            });
            sets.push((set, mask));
            agent_ok.push(ok);
        }
    }

    let base = sets.len() as u64 + 1;
    let limit = budget.unwrap_or(DEFAULT_GUESS_BUDGET).max(1);
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(base as u128);
        if total > limit as u128 {
            return Err(Error::Capacity(format!(
                "{} usable sets across {n} agents exceed the guess budget of {limit}; \
                 the partition solver handles this shape",
                sets.len()
            )));
        }
    }
    let total = total as u64;
    let place: Vec<u64> = (0..n).rev().map(|e| base.pow(e as u32)).collect();
    let qualifies: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..m).map(|j| inst.utility(a, j) >= eta).collect())
        .collect();

    // Digit 0 = "single job"; digit d >= 1 = set d-1. Agent 0 varies slowest,
    // so guess 0 is the all-singles allocation and low indices prefer sets
    // for late agents — a fixed, platform-independent preference order.
    let attempt = |guess: u64| -> Option<(u64, Vec<Vec<usize>>)> {
        let mut union_mask = 0u64;
        let mut used = vec![false; m];
        let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut singles: Vec<usize> = Vec::new();
        for a in 0..n {
            let digit = guess / place[a] % base;
            if digit == 0 {
                singles.push(a);
                continue;
            }
            let idx = (digit - 1) as usize;
            if !agent_ok[idx][a] {
                return None;
            }
            let (set, mask) = &sets[idx];
            if mask & union_mask != 0 {
                return None;
            }
            union_mask |= mask;
            for &j in set {
                used[j] = true;
            }
            bundles[a] = set.clone();
        }
        let adjacency: Vec<Vec<usize>> = singles
            .iter()
            .map(|&a| (0..m).filter(|&j| !used[j] && qualifies[a][j]).collect())
            .collect();
        let matching = max_bipartite_matching(singles.len(), m, &adjacency);
        if matching.size != singles.len() {
            return None;
        }
        for (li, &a) in singles.iter().enumerate() {
            let j = matching.left_match[li].expect("saturated left side is fully matched");
            bundles[a] = vec![j];
        }
        Some((guess, bundles))
    };

    let counters = |tried: u64| {
        BTreeMap::from([
            ("complement_edges".to_string(), view.missing_edge_count() as u64),
            ("sets_enumerated".to_string(), sets_enumerated),
            ("sets_usable".to_string(), sets.len() as u64),
            ("guesses_tried".to_string(), tried),
        ])
    };
    match exec::find_map_first(total, attempt) {
        Some((guess, bundles)) => {
            SolveReport::verified_yes(inst, "guess_tn", &bundles, counters(guess + 1), ms_since(start))
        }
        None => Ok(SolveReport::no("guess_tn", counters(total), ms_since(start))),
    }
}

/// Exact solver that enumerates canonical partitions of the missing-edge
/// vertices into prospective multi-job bundles (each a complement clique
/// grown in vertex order: stay single, join an existing class, or open a
/// new one), then matches agents to those bundles and to leftover single
/// jobs in one pass.
///
/// Complete because a feasible allocation's multi-job bundles induce exactly
/// one canonical labeling, and at that leaf the allocation itself saturates
/// the matching. Refuses more than `max_missing` missing edges (default 10).
pub fn solve_partition_contract(inst: &Instance, max_missing: Option<usize>) -> Result<SolveReport> {
    let start = Instant::now();
    let view = ComplementView::new(inst.conflicts())?;
    let t = view.missing_edge_count();
    if t == 0 {
        // Nothing is missing: the graph is complete and every bundle is a
        // single job, which the complete-graph matcher decides directly.
        let inner = solve_complete_graph(inst)?;
        let mut counters = inner.counters;
        counters.insert("complement_edges".to_string(), 0);
        counters.insert("delegated_complete".to_string(), 1);
        return Ok(SolveReport {
            verdict: inner.verdict,
            certificate: inner.certificate,
            algorithm: "partition_t",
            counters,
            elapsed_ms: ms_since(start),
        });
    }
    let limit = max_missing.unwrap_or(DEFAULT_PARTITION_MISSING).min(MAX_MISSING);
    if t > limit {
        return Err(Error::Capacity(format!(
            "graph misses {t} edges, above the partition solver's ceiling of {limit}"
        )));
    }

    let w = view.support.len();
    let adj: Vec<u64> = (0..w).map(|v| view.local.neighbor_mask(v)).collect();
    // A class opened at its first vertex must still gain a partner, so the
    // opener needs a complement neighbor later in the order.
    let can_open: Vec<bool> = (0..w).map(|v| adj[v] >> (v + 1) != 0).collect();

    struct Search<'a> {
        inst: &'a Instance,
        view: &'a ComplementView,
        adj: &'a [u64],
        can_open: &'a [bool],
        classes: Vec<Vec<usize>>,
        masks: Vec<u64>,
        labelings_tried: u64,
    }

    impl Search<'_> {
        fn step(&mut self, v: usize) -> Option<Vec<Vec<usize>>> {
            if v == self.view.support.len() {
                return self.leaf();
            }
            // Stay out of every class.
            if let Some(hit) = self.step(v + 1) {
                return Some(hit);
            }
            // Join an existing class, oldest first; membership demands
            // complement adjacency to the whole class.
            for c in 0..self.classes.len() {
                if self.masks[c] & !self.adj[v] == 0 {
                    self.classes[c].push(v);
                    self.masks[c] |= 1 << v;
                    if let Some(hit) = self.step(v + 1) {
                        return Some(hit);
                    }
                    self.classes[c].pop();
                    self.masks[c] &= !(1 << v);
                }
            }
            // Open a new class (never more classes than agents).
            if self.classes.len() < self.inst.agent_count() && self.can_open[v] {
                self.classes.push(vec![v]);
                self.masks.push(1 << v);
                if let Some(hit) = self.step(v + 1) {
                    return Some(hit);
                }
                self.classes.pop();
                self.masks.pop();
            }
            None
        }

        fn leaf(&mut self) -> Option<Vec<Vec<usize>>> {
            let cap = self.inst.bundle_cap();
            for class in &self.classes {
                if class.len() < 2 || cap.is_some_and(|c| class.len() > c) {
                    return None;
                }
            }
            self.labelings_tried += 1;
            let n = self.inst.agent_count();
            let m = self.inst.job_count();
            let eta = self.inst.eta();
            // Vertices were added in ascending order, so classes map to
            // sorted global job lists directly.
            let class_jobs: Vec<Vec<usize>> = self
                .classes
                .iter()
                .map(|cl| cl.iter().map(|&l| self.view.support[l]).collect())
                .collect();
            let mut used = vec![false; m];
            for set in &class_jobs {
                for &j in set {
                    used[j] = true;
                }
            }
            let free: Vec<usize> = (0..m).filter(|&j| !used[j]).collect();
            let adjacency: Vec<Vec<usize>> = (0..n)
                .map(|a| {
                    let mut opts: Vec<usize> = Vec::new();
                    for (ci, set) in class_jobs.iter().enumerate() {
                        let value = self
                            .inst
                            .bundle_utility(a, set)
                            .expect("classes index this instance");
                        if value >= eta {
                            opts.push(ci);
                        }
                    }
                    for (fi, &j) in free.iter().enumerate() {
                        if self.inst.utility(a, j) >= eta {
                            opts.push(class_jobs.len() + fi);
                        }
                    }
                    opts
                })
                .collect();
            let matching = max_bipartite_matching(n, class_jobs.len() + free.len(), &adjacency);
            if matching.size != n {
                return None;
            }
            let bundles = (0..n)
                .map(|a| {
                    let r = matching.left_match[a].expect("saturated left side is fully matched");
                    if r < class_jobs.len() {
                        class_jobs[r].clone()
                    } else {
                        vec![free[r - class_jobs.len()]]
                    }
                })
                .collect();
            Some(bundles)
        }
    }

    let mut search = Search {
        inst,
        view: &view,
        adj: &adj,
        can_open: &can_open,
        classes: Vec::new(),
        masks: Vec::new(),
        labelings_tried: 0,
    };
    let hit = search.step(0);
    let counters = BTreeMap::from([
        ("complement_edges".to_string(), t as u64),
        ("labelings_tried".to_string(), search.labelings_tried),
    ]);
    match hit {
        Some(bundles) => {
            SolveReport::verified_yes(inst, "partition_t", &bundles, counters, ms_since(start))
        }
        None => Ok(SolveReport::no("partition_t", counters, ms_since(start))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_cffa;

    struct XorShift(u64);
    impl XorShift {
        fn next(&mut self) -> u64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            self.0
        }
        fn below(&mut self, bound: u64) -> u64 {
            self.next() % bound
        }
    }

    /// Complete graph on `m` vertices minus `gaps` chosen non-edges.
    fn nearly_complete(m: usize, gaps: &[(usize, usize)]) -> ConflictGraph {
        let mut edges = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if !gaps.contains(&(i, j)) {
                    edges.push((i, j));
                }
            }
        }
        ConflictGraph::new(m, edges).unwrap()
    }

    fn random_gaps(rng: &mut XorShift, m: usize, t: usize) -> Vec<(usize, usize)> {
        let mut all: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        // Partial Fisher-Yates: the first t entries become the sample.
        for i in 0..t.min(all.len()) {
            let j = i + rng.below((all.len() - i) as u64) as usize;
            all.swap(i, j);
        }
        let mut gaps: Vec<(usize, usize)> = all.into_iter().take(t).collect();
        gaps.sort_unstable();
        gaps
    }

    fn random_near_complete_instance(rng: &mut XorShift, max_t: usize) -> Instance {
        let m = 2 + rng.below(8) as usize;
        let n = 1 + rng.below(3) as usize;
        let t = rng.below(max_t as u64 + 1) as usize;
        let graph = nearly_complete(m, &random_gaps(rng, m, t));
        let utilities: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.below(12)).collect())
            .collect();
        let eta = 1 + rng.below(16);
        let cap = match rng.below(3) {
            0 => None,
            _ => Some(1 + rng.below(m as u64) as usize),
        };
        Instance::new(
            (0..n).map(|i| format!("a{}", i + 1)).collect(),
            (0..m).map(|j| format!("x{}", j + 1)).collect(),
            utilities,
            graph,
            eta,
            cap,
        )
        .unwrap()
    }

    // -- complement view and enumeration ---------------------------------------------

    #[test]
    fn complement_view_worked_example() {
        let g = nearly_complete(5, &[(0, 1), (2, 3)]);
        let view = ComplementView::new(&g).unwrap();
        assert_eq!(view.missing_edges(), &[(0, 1), (2, 3)]);
        assert_eq!(view.support(), &[0, 1, 2, 3]);
        assert_eq!(view.complement_graph().edges(), &[(0, 1), (2, 3)]);
        assert_eq!(view.degeneracy(), 1);

        let sets = enumerate_nontrivial_independent_sets(&view).unwrap();
        assert_eq!(sets, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn enumeration_finds_chained_pairs_but_not_non_sets() {
        // Complement is the path 0-1-2: {0,1} and {1,2} are independent in
        // the original graph, {0,2} is not, and no triple is.
        let g = nearly_complete(4, &[(0, 1), (1, 2)]);
        let view = ComplementView::new(&g).unwrap();
        let sets = enumerate_nontrivial_independent_sets(&view).unwrap();
        assert_eq!(sets, vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn enumeration_matches_subset_scan_and_respects_bounds() {
        let mut rng = XorShift(0x9ea4c0);
        for round in 0..200 {
            let m = 2 + rng.below(9) as usize;
            let t = rng.below(9) as usize;
            let g = nearly_complete(m, &random_gaps(&mut rng, m, t));
            let view = ComplementView::new(&g).unwrap();
            let got = enumerate_nontrivial_independent_sets(&view).unwrap();

            let mut want: Vec<Vec<usize>> = Vec::new();
            for mask in 0u64..1 << m {
                if mask.count_ones() >= 2 && g.is_independent_mask(mask) {
                    let set: Vec<usize> = (0..m).filter(|&v| mask >> v & 1 == 1).collect();
                    want.push(set);
                }
            }
            want.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            assert_eq!(got, want, "round {round}");

            let t = view.missing_edge_count();
            let deg_bound = (2.0 * (t as f64).sqrt()).ceil() as usize;
            assert!(view.degeneracy() <= deg_bound, "round {round}");
            let count_bound = 2 * t as u64 * (1u64 << deg_bound.min(40));
            assert!(got.len() as u64 <= count_bound, "round {round}");
        }
    }

    // -- guess solver ------------------------------------------------------------

    #[test]
    fn guess_worked_example() {
        // Complete on 4 jobs minus (0,1): agent 1 needs the pair, agent 2 a
        // single. eta 6; u1 = [3,3,1,1], u2 = [1,1,6,2].
        let g = nearly_complete(4, &[(0, 1)]);
        let inst = Instance::new(
            vec!["a1".into(), "a2".into()],
            vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
            vec![vec![3, 3, 1, 1], vec![1, 1, 6, 2]],
            g,
            6,
            None,
        )
        .unwrap();
        let report = solve_guess_per_agent(&inst, None).unwrap();
        assert!(report.verdict);
        assert_eq!(report.algorithm, "guess_tn");
        assert_eq!(report.counters["complement_edges"], 1);
        assert_eq!(report.counters["sets_enumerated"], 1);
        let cert = report.certificate.unwrap();
        let bundles = cert.index_bundles(&inst).unwrap();
        assert_eq!(bundles, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn guess_matches_brute_on_seeded_corpus() {
        let mut rng = XorShift(0x97e55);
        let mut yes = 0;
        for round in 0..200 {
            let inst = random_near_complete_instance(&mut rng, 6);
            let guess = solve_guess_per_agent(&inst, None).unwrap();
            let exact = brute_force_cffa(&inst).unwrap();
            assert_eq!(guess.verdict, exact.verdict, "round {round}: {inst:?}");
            yes += guess.verdict as u32;
        }
        assert!(yes > 40 && yes < 190, "degenerate corpus: {yes} yes verdicts");
    }

    #[test]
    fn guess_respects_budget() {
        let mut rng = XorShift(0xb4d9e7);
        let inst = random_near_complete_instance(&mut rng, 6);
        match solve_guess_per_agent(&inst, Some(1)) {
            Err(Error::Capacity(msg)) => assert!(msg.contains("budget")),
            Ok(report) => assert!(report.counters["guesses_tried"] <= 1),
            Err(other) => panic!("unexpected error: {other}"),
        }
    }

    // -- partition solver ----------------------------------------------------------

    #[test]
    fn partition_matches_brute_on_seeded_corpus() {
        let mut rng = XorShift(0x9a471710);
        for round in 0..200 {
            let inst = random_near_complete_instance(&mut rng, 5);
            let part = solve_partition_contract(&inst, None).unwrap();
            let exact = brute_force_cffa(&inst).unwrap();
            assert_eq!(part.verdict, exact.verdict, "round {round}: {inst:?}");
        }
    }

    #[test]
    fn partition_and_guess_agree() {
        let mut rng = XorShift(0xa9ee);
        for round in 0..150 {
            let inst = random_near_complete_instance(&mut rng, 5);
            let part = solve_partition_contract(&inst, None).unwrap();
            let guess = solve_guess_per_agent(&inst, None).unwrap();
            assert_eq!(part.verdict, guess.verdict, "round {round}: {inst:?}");
        }
    }

    #[test]
    fn partition_delegates_complete_graphs() {
        let g = nearly_complete(3, &[]);
        let inst = Instance::new(
            vec!["a1".into()],
            vec!["x1".into(), "x2".into(), "x3".into()],
            vec![vec![4, 1, 1]],
            g,
            4,
            None,
        )
        .unwrap();
        let report = solve_partition_contract(&inst, None).unwrap();
        assert!(report.verdict);
        assert_eq!(report.algorithm, "partition_t");
        assert_eq!(report.counters["delegated_complete"], 1);
        assert_eq!(report.counters["complement_edges"], 0);
    }

    #[test]
    fn partition_respects_missing_edge_ceiling() {
        let g = nearly_complete(6, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let inst = Instance::new(
            vec!["a1".into()],
            (0..6).map(|j| format!("x{}", j + 1)).collect(),
            vec![vec![1; 6]],
            g,
            1,
            None,
        )
        .unwrap();
        assert!(matches!(
            solve_partition_contract(&inst, Some(3)),
            Err(Error::Capacity(_))
        ));
        assert!(solve_partition_contract(&inst, Some(4)).is_ok());
    }

    #[test]
    fn solvers_handle_empty_corners() {
        // No agents: trivially feasible either way.
        let g = nearly_complete(3, &[(0, 1)]);
        let empty_agents = Instance::new(
            vec![],
            vec!["x1".into(), "x2".into(), "x3".into()],
            vec![],
            g,
            1,
            None,
        )
        .unwrap();
        assert!(solve_guess_per_agent(&empty_agents, None).unwrap().verdict);
        assert!(solve_partition_contract(&empty_agents, None).unwrap().verdict);

        // No jobs: one agent can never be served.
        let jobless = Instance::new(
            vec!["a1".into()],
            vec![],
            vec![vec![]],
            ConflictGraph::new(0, vec![]).unwrap(),
            1,
            None,
        )
        .unwrap();
        assert!(!solve_guess_per_agent(&jobless, None).unwrap().verdict);
        assert!(!solve_partition_contract(&jobless, None).unwrap().verdict);
    }

    #[test]
    fn near_complete_solvers_are_deterministic() {
        let mut rng = XorShift(0xde7de7);
        for _ in 0..20 {
            let inst = random_near_complete_instance(&mut rng, 5);
            let a = solve_guess_per_agent(&inst, None).unwrap();
            let b = solve_guess_per_agent(&inst, None).unwrap();
            assert_eq!(a.verdict, b.verdict);
            assert_eq!(a.counters, b.counters);
            assert_eq!(
                a.certificate.as_ref().map(|c| c.bundles()),
                b.certificate.as_ref().map(|c| c.bundles())
            );
            let p = solve_partition_contract(&inst, None).unwrap();
            let q = solve_partition_contract(&inst, None).unwrap();
            assert_eq!(p.counters, q.counters);
            assert_eq!(
                p.certificate.as_ref().map(|c| c.bundles()),
                q.certificate.as_ref().map(|c| c.bundles())
            );
        }
    }
}
