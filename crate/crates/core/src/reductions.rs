//! Encodings of classical hard problems as allocation instances, seeded
//! instance generators, and small exhaustive deciders for cross-checking
//! the encodings.
//!
//! Each encoder is an exact reduction: the produced instance is feasible if
//! and only if the source instance is a yes-instance. The deciders
//! ([`exhaustive_3partition`], [`exhaustive_numerical_3dm`],
//! [`exhaustive_independent_set`]) answer the source problems directly by
//! search, deliberately sharing no code with the encoders or solvers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, InvalidCode, Result};
use crate::model::{ConflictGraph, Instance};
use crate::sbmwis::SbMwisInstance;

fn agent_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{}", i + 1)).collect()
}

fn job_names(m: usize) -> Vec<String> {
    (0..m).map(|j| format!("x{}", j + 1)).collect()
}

// -- 3-Partition ------------------------------------------------------------------

/// `3m` element sizes, each strictly between `bound/4` and `bound/2`, summing
/// to `m * bound`: can they be split into `m` triples that each sum to
/// `bound`?
#[derive(Debug, Clone)]
pub struct ThreePartitionInstance {
    sizes: Vec<u64>,
    bound: u64,
}

impl ThreePartitionInstance {
    pub fn new(sizes: Vec<u64>, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::invalid(
                InvalidCode::BadParam,
                "/bound",
                "bound must be positive",
            ));
        }
        if sizes.is_empty() || sizes.len() % 3 != 0 {
            return Err(Error::invalid(
                InvalidCode::BadParam,
                "/sizes",
                format!("need a positive multiple of 3 sizes, got {}", sizes.len()),
            ));
        }
        for (i, &s) in sizes.iter().enumerate() {
            // strictly between bound/4 and bound/2, in integers: 4s > bound && 2s < bound
            if 4 * s as u128 <= bound as u128 || 2 * s as u128 >= bound as u128 {
                return Err(Error::invalid(
                    InvalidCode::ElementRange,
                    format!("/sizes/{i}"),
                    format!("size {s} is not strictly between {bound}/4 and {bound}/2"),
                ));
            }
        }
        let groups = (sizes.len() / 3) as u128;
        let total: u128 = sizes.iter().map(|&s| s as u128).sum();
        if total != groups * bound as u128 {
            return Err(Error::invalid(
                InvalidCode::SumMismatch,
                "/sizes",
                format!("sizes sum to {total}, expected {}", groups * bound as u128),
            ));
        }
        Ok(ThreePartitionInstance { sizes, bound })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn groups(&self) -> usize {
        self.sizes.len() / 3
    }

    /// One agent per triple, one job per element, no conflicts, utility
    /// `bound - size(x)` for every agent, threshold `2 * bound`.
    ///
    /// A bundle of `c` jobs is worth `c * bound - (its sizes)`; with every
    /// size strictly inside `(bound/4, bound/2)`, reaching `2 * bound` takes
    /// at least three jobs, and `3m` jobs across `m` agents then force
    /// exactly three each with sizes summing to at most — hence, by the
    /// global sum, exactly — `bound`.
    pub fn encode(&self) -> Instance {
        let n = self.groups();
        let m = self.sizes.len();
        let row: Vec<u64> = self.sizes.iter().map(|&s| self.bound - s).collect();
        Instance::new(
            agent_names(n),
            job_names(m),
            vec![row; n],
            ConflictGraph::new(m, Vec::new()).expect("edgeless graph is always valid"),
            2 * self.bound,
            None,
        )
        .expect("validated sizes encode to a valid instance")
    }
}

/// Decides 3-Partition by backtracking placement of elements into triples
/// (first empty group canonical, groups capped at three elements and sum
/// `bound`).
pub fn exhaustive_3partition(inst: &ThreePartitionInstance) -> bool {
    fn place(sizes: &[u64], idx: usize, counts: &mut [u8], sums: &mut [u64], bound: u64) -> bool {
        if idx == sizes.len() {
            // Every element placed under the count/sum caps: 3m elements in
            // m groups of at most 3 means exactly 3 each, and the global sum
            // then forces every group to hit the bound exactly.
            return true;
        }
        let mut tried_empty = false;
        for g in 0..counts.len() {
            if counts[g] == 0 {
                if tried_empty {
                    continue;
                }
                tried_empty = true;
            }
            if counts[g] == 3 || sums[g] + sizes[idx] > bound {
                continue;
            }
            counts[g] += 1;
            sums[g] += sizes[idx];
            if place(sizes, idx + 1, counts, sums, bound) {
                return true;
            }
            counts[g] -= 1;
            sums[g] -= sizes[idx];
        }
        false
    }
    let mut counts = vec![0u8; inst.groups()];
    let mut sums = vec![0u64; inst.groups()];
    place(&inst.sizes, 0, &mut counts, &mut sums, inst.bound)
}

// -- Numerical 3-dimensional matching ------------------------------------------------

/// Three equal-length value lists and a bound `b` with grand total
/// `m * b`: can the values be grouped into `m` triples, one from each list,
/// each summing to `b`?
#[derive(Debug, Clone)]
pub struct Numerical3dmInstance {
    x: Vec<u64>,
    y: Vec<u64>,
    z: Vec<u64>,
    bound: u64,
}

impl Numerical3dmInstance {
    pub fn new(x: Vec<u64>, y: Vec<u64>, z: Vec<u64>, bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::invalid(
                InvalidCode::BadParam,
                "/bound",
                "bound must be positive",
            ));
        }
        if x.is_empty() || x.len() != y.len() || x.len() != z.len() {
            return Err(Error::invalid(
                InvalidCode::BadParam,
                "/x",
                format!(
                    "need three nonempty lists of equal length, got {}/{}/{}",
                    x.len(),
                    y.len(),
                    z.len()
                ),
            ));
        }
        for (name, list) in [("x", &x), ("y", &y), ("z", &z)] {
            if let Some(i) = list.iter().position(|&v| v == 0) {
                return Err(Error::invalid(
                    InvalidCode::ElementRange,
                    format!("/{name}/{i}"),
                    "values must be positive",
                ));
            }
        }
        let total: u128 = x.iter().chain(&y).chain(&z).map(|&v| v as u128).sum();
        if total != x.len() as u128 * bound as u128 {
            return Err(Error::invalid(
                InvalidCode::SumMismatch,
                "/x",
                format!(
                    "values sum to {total}, expected {}",
                    x.len() as u128 * bound as u128
                ),
            ));
        }
        Ok(Numerical3dmInstance { x, y, z, bound })
    }

    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn y(&self) -> &[u64] {
        &self.y
    }

    pub fn z(&self) -> &[u64] {
        &self.z
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn groups(&self) -> usize {
        self.x.len()
    }

    /// One agent per triple; jobs are the values of the three lists in
    /// order, with each list forming one clique, so a bundle takes at most
    /// one job per list. Utilities are the values themselves (identical for
    /// every agent), threshold `bound`.
    ///
    /// Positive values and the grand total `m * bound` force a feasible
    /// allocation to use every job and give each agent exactly `bound`.
    pub fn encode(&self) -> Instance {
        let n = self.groups();
        let m = 3 * n;
        let row: Vec<u64> = self
            .x
            .iter()
            .chain(&self.y)
            .chain(&self.z)
            .copied()
            .collect();
        let mut edges = Vec::new();
        for list in 0..3 {
            let base = list * n;
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((base + i, base + j));
                }
            }
        }
        let names = ["x", "y", "z"]
            .iter()
            .flat_map(|p| (0..n).map(move |i| format!("{p}{}", i + 1)))
            .collect();
        Instance::new(
            agent_names(n),
            names,
            vec![row; n],
            ConflictGraph::new(m, edges).expect("clique edges are canonical"),
            self.bound,
            None,
        )
        .expect("validated values encode to a valid instance")
    }
}

/// Decides numerical 3-dimensional matching by matching each `x` in order
/// with an unused `y` and `z`.
pub fn exhaustive_numerical_3dm(inst: &Numerical3dmInstance) -> bool {
    fn rec(inst: &Numerical3dmInstance, i: usize, used_y: &mut [bool], used_z: &mut [bool]) -> bool {
        if i == inst.x.len() {
            return true;
        }
        for j in 0..inst.y.len() {
            if used_y[j] {
                continue;
            }
            for k in 0..inst.z.len() {
                if used_z[k] {
                    continue;
                }
                let sum = inst.x[i] as u128 + inst.y[j] as u128 + inst.z[k] as u128;
                if sum != inst.bound as u128 {
                    continue;
                }
                used_y[j] = true;
                used_z[k] = true;
                if rec(inst, i + 1, used_y, used_z) {
                    return true;
                }
                used_y[j] = false;
                used_z[k] = false;
            }
        }
        false
    }
    let m = inst.groups();
    rec(inst, 0, &mut vec![false; m], &mut vec![false; m])
}

// -- Independent set ------------------------------------------------------------------

/// A graph and a target size `k`: does an independent set of `k` vertices
/// exist?
#[derive(Debug, Clone)]
pub struct IndependentSetInstance {
    graph: ConflictGraph,
    k: usize,
}

impl IndependentSetInstance {
    pub fn new(graph: ConflictGraph, k: usize) -> Result<Self> {
        if k == 0 || k > graph.vertex_count() {
            return Err(Error::invalid(
                InvalidCode::TargetRange,
                "/k",
                format!("k must lie in 1..={}, got {k}", graph.vertex_count()),
            ));
        }
        Ok(IndependentSetInstance { graph, k })
    }

    pub fn graph(&self) -> &ConflictGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// One agent, unit utilities, the graph itself as conflicts, threshold
    /// and bundle cap both `k`: a feasible bundle is exactly `k` pairwise
    /// non-adjacent vertices.
    pub fn encode(&self) -> Instance {
        let m = self.graph.vertex_count();
        Instance::new(
            agent_names(1),
            job_names(m),
            vec![vec![1; m]],
            self.graph.clone(),
            self.k as u64,
            Some(self.k),
        )
        .expect("unit utilities over a validated graph form a valid instance")
    }
}

/// Decides independent set by include/exclude search with a remaining-vertex
/// prune.
pub fn exhaustive_independent_set(inst: &IndependentSetInstance) -> bool {
    fn rec(g: &ConflictGraph, at: usize, need: usize, chosen: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        if g.vertex_count() - at < need {
            return false;
        }
        if chosen.iter().all(|&c| !g.has_edge(c, at)) {
            chosen.push(at);
            if rec(g, at + 1, need - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        rec(g, at + 1, need, chosen)
    }
    rec(&inst.graph, 0, inst.k, &mut Vec::new())
}

// -- Size-bounded weighted independent set ----------------------------------------------

/// Encodes a size-bounded weighted independent-set instance as a single-agent
/// allocation: utilities are the weights, the threshold is the target, the
/// bundle cap is the size bound.
///
/// A zero target makes the source trivially feasible (take nothing), which a
/// threshold of at least one cannot express. Strict mode (`lenient = false`)
/// rejects that case; lenient mode substitutes threshold one and returns
/// `true` in the flag to signal that the encoded question is now strictly
/// harder than the (trivial) original.
pub fn from_sbmwis(sb: &SbMwisInstance, lenient: bool) -> Result<(Instance, bool)> {
    let clamped = sb.target() == 0;
    if clamped && !lenient {
        return Err(Error::invalid(
            InvalidCode::TargetRange,
            "/target",
            "a zero target is trivially feasible and has no strict encoding; \
             use lenient mode to encode the target-one question instead",
        ));
    }
    let m = sb.graph().vertex_count();
    let inst = Instance::new(
        agent_names(1),
        job_names(m),
        vec![sb.weights().to_vec()],
        sb.graph().clone(),
        sb.target().max(1),
        Some(sb.size_cap()),
    )?;
    Ok((inst, clamped))
}

// -- Seeded generators -----------------------------------------------------------------

/// Shared shape parameters for the instance generators.
#[derive(Debug, Clone)]
pub struct GenParams {
    pub agents: usize,
    pub jobs: usize,
    pub eta: u64,
    /// Utilities are drawn uniformly from `0..=max_utility`.
    pub max_utility: u64,
    pub cap: Option<usize>,
    /// One shared utility row instead of per-agent rows.
    pub uniform: bool,
}

impl GenParams {
    fn validate(&self) -> Result<()> {
        if self.max_utility == 0 {
            return Err(Error::invalid(
                InvalidCode::BadParam,
                "/max_utility",
                "max utility must be positive",
            ));
        }
        Ok(())
    }

    fn draw_utilities(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
        if self.uniform {
            let row: Vec<u64> = (0..self.jobs)
                .map(|_| rng.gen_range(0..=self.max_utility))
                .collect();
            vec![row; self.agents]
        } else {
            (0..self.agents)
                .map(|_| {
                    (0..self.jobs)
                        .map(|_| rng.gen_range(0..=self.max_utility))
                        .collect()
                })
                .collect()
        }
    }
}

fn all_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

/// Draws `count` distinct pairs by partial shuffle, returned in canonical
/// order.
fn sample_pairs(rng: &mut ChaCha8Rng, m: usize, count: usize) -> Vec<(usize, usize)> {
    let mut pairs = all_pairs(m);
    for i in 0..count.min(pairs.len()) {
        let j = rng.gen_range(i..pairs.len());
        pairs.swap(i, j);
    }
    let mut out: Vec<(usize, usize)> = pairs.into_iter().take(count).collect();
    out.sort_unstable();
    out
}

/// Instance with each conflict edge present independently with probability
/// `edge_percent / 100`.
pub fn gen_random(params: &GenParams, edge_percent: u8, seed: u64) -> Result<Instance> {
    params.validate()?;
    if edge_percent > 100 {
        return Err(Error::invalid(
            InvalidCode::BadParam,
            "/edge_percent",
            format!("edge percentage must be at most 100, got {edge_percent}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = all_pairs(params.jobs)
        .into_iter()
        .filter(|_| rng.gen_range(0..100u8) < edge_percent)
        .collect();
    let utilities = params.draw_utilities(&mut rng);
    Instance::new(
        agent_names(params.agents),
        job_names(params.jobs),
        utilities,
        ConflictGraph::new(params.jobs, edges)?,
        params.eta,
        params.cap,
    )
}

/// Cluster-graph instance: jobs are split into `cliques` nonempty groups
/// (job `j < cliques` seeds group `j`, the rest land randomly) and each
/// group becomes a clique. Returns the instance and the clique partition in
/// smallest-member order.
pub fn gen_cluster(
    params: &GenParams,
    cliques: usize,
    seed: u64,
) -> Result<(Instance, Vec<Vec<usize>>)> {
    params.validate()?;
    if cliques == 0 || cliques > params.jobs {
        return Err(Error::invalid(
            InvalidCode::BadParam,
            "/cliques",
            format!("clique count must lie in 1..={}, got {cliques}", params.jobs),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let membership: Vec<usize> = (0..params.jobs)
        .map(|j| if j < cliques { j } else { rng.gen_range(0..cliques) })
        .collect();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); cliques];
    for (j, &g) in membership.iter().enumerate() {
        groups[g].push(j);
    }
    let mut edges = Vec::new();
    for group in &groups {
        for (p, &a) in group.iter().enumerate() {
            for &b in &group[p + 1..] {
                edges.push((a, b));
            }
        }
    }
    let utilities = params.draw_utilities(&mut rng);
    let inst = Instance::new(
        agent_names(params.agents),
        job_names(params.jobs),
        utilities,
        ConflictGraph::new(params.jobs, edges)?,
        params.eta,
        params.cap,
    )?;
    groups.sort_by_key(|g| g[0]);
    Ok((inst, groups))
}

/// Complete conflict graph minus `missing` randomly chosen edges.
pub fn gen_near_complete(params: &GenParams, missing: usize, seed: u64) -> Result<Instance> {
    params.validate()?;
    let pairs = params.jobs * params.jobs.saturating_sub(1) / 2;
    if missing > pairs {
        return Err(Error::invalid(
            InvalidCode::BadParam,
            "/missing",
            format!("cannot remove {missing} of {pairs} edges"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gaps = sample_pairs(&mut rng, params.jobs, missing);
    let edges: Vec<(usize, usize)> = all_pairs(params.jobs)
        .into_iter()
        .filter(|p| !gaps.contains(p))
        .collect();
    let utilities = params.draw_utilities(&mut rng);
    Instance::new(
        agent_names(params.agents),
        job_names(params.jobs),
        utilities,
        ConflictGraph::new(params.jobs, edges)?,
        params.eta,
        params.cap,
    )
}

/// Complete conflict graph minus a random perfect matching (every vertex
/// degree is `jobs - 2`); `jobs` must be even and at least 2.
pub fn gen_complement_matching(params: &GenParams, seed: u64) -> Result<Instance> {
    params.validate()?;
    if params.jobs < 2 || params.jobs % 2 != 0 {
        return Err(Error::invalid(
            InvalidCode::BadParam,
            "/jobs",
            format!("need an even job count of at least 2, got {}", params.jobs),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..params.jobs).collect();
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let gaps: Vec<(usize, usize)> = order
        .chunks(2)
        .map(|pair| (pair[0].min(pair[1]), pair[0].max(pair[1])))
        .collect();
    let edges: Vec<(usize, usize)> = all_pairs(params.jobs)
        .into_iter()
        .filter(|p| !gaps.contains(p))
        .collect();
    let utilities = params.draw_utilities(&mut rng);
    Instance::new(
        agent_names(params.agents),
        job_names(params.jobs),
        utilities,
        ConflictGraph::new(params.jobs, edges)?,
        params.eta,
        params.cap,
    )
}
