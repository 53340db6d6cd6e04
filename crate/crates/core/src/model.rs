//! Problem model: instances, conflict graphs, allocations, solver reports,
//! and the definitional verifier every solver is checked against.
//!
//! The decision problem: can the jobs be split into pairwise-disjoint bundles,
//! one per agent, such that no bundle contains a conflict edge and every
//! agent's bundle is worth at least `eta` to them? Jobs may be left
//! unassigned. An optional `bundle_cap` additionally bounds every bundle's
//! size.
//!
//! Identifiers are strings at the boundary; internally everything runs on
//! dense 0-based indices in declaration order.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, InvalidCode, Result};

/// Undirected conflict graph over job indices `0..vertex_count`.
///
/// Edges are stored canonically — each unordered pair once, smaller endpoint
/// first, sorted ascending — with an adjacency matrix alongside for O(1)
/// queries. Vertex counts stay desk-scale, so the quadratic footprint is
/// irrelevant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<bool>,
}

impl ConflictGraph {
    /// Builds a graph, normalizing edge orientation. Rejects out-of-range
    /// endpoints, self-loops, and duplicate edges (after normalization).
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canonical: Vec<(usize, usize)> = Vec::new();
        let mut adj = vec![false; vertex_count * vertex_count];
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::invalid(
                    InvalidCode::EdgeRange,
                    "/edges",
                    format!("edge ({a}, {b}) outside 0..{vertex_count}"),
                ));
            }
            if a == b {
                return Err(Error::invalid(
                    InvalidCode::SelfLoop,
                    "/edges",
                    format!("self-loop at vertex {a}"),
                ));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if adj[i * vertex_count + j] {
                return Err(Error::invalid(
                    InvalidCode::DuplicateEdge,
                    "/edges",
                    format!("edge ({i}, {j}) listed twice"),
                ));
            }
            adj[i * vertex_count + j] = true;
            adj[j * vertex_count + i] = true;
            canonical.push((i, j));
        }
        canonical.sort_unstable();
        Ok(ConflictGraph {
            vertex_count,
            edges: canonical,
            adj,
        })
    }

    /// Complete graph on `vertex_count` vertices.
    pub fn complete(vertex_count: usize) -> Self {
        let edges = (0..vertex_count)
            .flat_map(|i| (i + 1..vertex_count).map(move |j| (i, j)))
            .collect::<Vec<_>>();
        ConflictGraph::new(vertex_count, edges).expect("complete graph is always valid")
    }

    /// Graph with no edges at all.
    pub fn edgeless(vertex_count: usize) -> Self {
        ConflictGraph::new(vertex_count, []).expect("edgeless graph is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Canonical edge list: `(i, j)` with `i < j`, sorted ascending.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adj[a * self.vertex_count + b]
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.vertex_count).filter(|&u| self.has_edge(v, u)).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count).filter(move |&u| self.has_edge(v, u))
    }

    /// Bitmask of neighbors of `v`. Only valid for graphs with at most 64
    /// vertices; mask-based solvers guard their own capacity before calling.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.vertex_count <= 64);
        self.neighbors(v).fold(0u64, |m, u| m | (1 << u))
    }

    /// True iff no two of the given jobs conflict. The slice is treated as a
    /// set; duplicates do not make a vertex conflict with itself.
    pub fn is_independent(&self, jobs: &[usize]) -> Result<bool> {
        for &v in jobs {
            if v >= self.vertex_count {
                return Err(Error::invalid(
                    InvalidCode::IndexRange,
                    "-",
                    format!("vertex {v} outside 0..{}", self.vertex_count),
                ));
            }
        }
        for (p, &a) in jobs.iter().enumerate() {
            for &b in &jobs[p + 1..] {
                if self.has_edge(a, b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Mask variant of [`is_independent`](Self::is_independent) for the
    /// bitmask solvers (vertex count must be at most 64).
    pub fn is_independent_mask(&self, mask: u64) -> bool {
        debug_assert!(self.vertex_count <= 64);
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.neighbor_mask(v) & rest != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        let m = self.vertex_count;
        self.edges.len() == m * m.saturating_sub(1) / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut out = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// If every connected component is a clique, returns the clique partition
    /// (components ordered by smallest member). Otherwise `None`.
    pub fn cluster_partition(&self) -> Option<Vec<Vec<usize>>> {
        let comps = self.components();
        for comp in &comps {
            for (p, &a) in comp.iter().enumerate() {
                for &b in &comp[p + 1..] {
                    if !self.has_edge(a, b) {
                        return None;
                    }
                }
            }
        }
        Some(comps)
    }

    /// A proper 2-coloring (side 0/1 per vertex, BFS from each smallest
    /// unvisited vertex), or `None` if some cycle is odd.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.vertex_count];
        for start in 0..self.vertex_count {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if side[u] == u8::MAX {
                        side[u] = side[v] ^ 1;
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Degeneracy and a matching elimination order: repeatedly remove a
    /// minimum-degree vertex (ties broken by lowest index). The degeneracy is
    /// the largest degree seen at removal time.
    pub fn degeneracy_order(&self) -> (usize, Vec<usize>) {
        let m = self.vertex_count;
        let mut deg: Vec<usize> = (0..m).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; m];
        let mut order = Vec::with_capacity(m);
        let mut degeneracy = 0;
        for _ in 0..m {
            let v = (0..m)
                .filter(|&v| alive[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("an alive vertex remains");
            degeneracy = degeneracy.max(deg[v]);
            alive[v] = false;
            order.push(v);
            for u in self.neighbors(v) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        (degeneracy, order)
    }

    /// Edges of the complement graph, canonical order.
    pub fn complement_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.vertex_count {
            for j in i + 1..self.vertex_count {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A full problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    agents: Vec<String>,
    jobs: Vec<String>,
    utilities: Vec<Vec<u64>>,
    conflicts: ConflictGraph,
    eta: u64,
    bundle_cap: Option<usize>,
    agent_lookup: BTreeMap<String, usize>,
    job_lookup: BTreeMap<String, usize>,
}

impl Instance {
    /// Validates and builds an instance.
    ///
    /// Rejected: `eta < 1`, utility matrix shape not `agents × jobs`, a graph
    /// over the wrong vertex count, `bundle_cap` outside `1..=jobs`, and
    /// duplicate identifiers.
    pub fn new(
        agents: Vec<String>,
        jobs: Vec<String>,
        utilities: Vec<Vec<u64>>,
        conflicts: ConflictGraph,
        eta: u64,
        bundle_cap: Option<usize>,
    ) -> Result<Self> {
        if eta < 1 {
            return Err(Error::invalid(
                InvalidCode::EtaRange,
                "/eta",
                "eta must be at least 1",
            ));
        }
        if utilities.len() != agents.len() {
            return Err(Error::invalid(
                InvalidCode::DimMismatch,
                "/utilities",
                format!("expected {} rows (one per agent), found {}", agents.len(), utilities.len()),
            ));
        }
        for (i, row) in utilities.iter().enumerate() {
            if row.len() != jobs.len() {
                return Err(Error::invalid(
                    InvalidCode::DimMismatch,
                    format!("/utilities/{i}"),
                    format!("expected {} columns (one per job), found {}", jobs.len(), row.len()),
                ));
            }
        }
        if conflicts.vertex_count() != jobs.len() {
            return Err(Error::invalid(
                InvalidCode::DimMismatch,
                "/edges",
                format!(
                    "conflict graph has {} vertices but there are {} jobs",
                    conflicts.vertex_count(),
                    jobs.len()
                ),
            ));
        }
        if let Some(cap) = bundle_cap {
            if cap < 1 || cap > jobs.len() {
                return Err(Error::invalid(
                    InvalidCode::CapRange,
                    "/bundle_cap",
                    format!("bundle_cap must lie in 1..={}, got {cap}", jobs.len()),
                ));
            }
        }
        let mut agent_lookup = BTreeMap::new();
        for (i, name) in agents.iter().enumerate() {
            if agent_lookup.insert(name.clone(), i).is_some() {
                return Err(Error::invalid(
                    InvalidCode::DuplicateId,
                    format!("/agents/{i}"),
                    format!("agent identifier {name:?} appears twice"),
                ));
            }
        }
        let mut job_lookup = BTreeMap::new();
        for (i, name) in jobs.iter().enumerate() {
            if job_lookup.insert(name.clone(), i).is_some() {
                return Err(Error::invalid(
                    InvalidCode::DuplicateId,
                    format!("/jobs/{i}"),
                    format!("job identifier {name:?} appears twice"),
                ));
            }
        }
        Ok(Instance {
            agents,
            jobs,
            utilities,
            conflicts,
            eta,
            bundle_cap,
            agent_lookup,
            job_lookup,
        })
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn job_count(&self) -> usize {
        self.jobs.len()
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn jobs(&self) -> &[String] {
        &self.jobs
    }

    pub fn utility(&self, agent: usize, job: usize) -> u64 {
        self.utilities[agent][job]
    }

    pub fn utilities(&self) -> &[Vec<u64>] {
        &self.utilities
    }

    pub fn conflicts(&self) -> &ConflictGraph {
        &self.conflicts
    }

    pub fn eta(&self) -> u64 {
        self.eta
    }

    pub fn bundle_cap(&self) -> Option<usize> {
        self.bundle_cap
    }

    pub fn agent_index(&self, name: &str) -> Option<usize> {
        self.agent_lookup.get(name).copied()
    }

    pub fn job_index(&self, name: &str) -> Option<usize> {
        self.job_lookup.get(name).copied()
    }

    /// True iff all agents value every job identically (trivially true for
    /// fewer than two agents).
    pub fn uniform_utilities(&self) -> bool {
        self.utilities.windows(2).all(|w| w[0] == w[1])
    }

    /// Sum of `agent`'s utilities over the given jobs, treating the slice as
    /// a set (duplicate indices are counted once). Saturating: sums clamp at
    /// `u64::MAX`, which can never flip a `>= eta` comparison the wrong way.
    pub fn bundle_utility(&self, agent: usize, jobs: &[usize]) -> Result<u64> {
        if agent >= self.agent_count() {
            return Err(Error::invalid(
                InvalidCode::IndexRange,
                "-",
                format!("agent index {agent} outside 0..{}", self.agent_count()),
            ));
        }
        let mut seen = BTreeSet::new();
        let mut total: u64 = 0;
        for &j in jobs {
            if j >= self.job_count() {
                return Err(Error::invalid(
                    InvalidCode::IndexRange,
                    "-",
                    format!("job index {j} outside 0..{}", self.job_count()),
                ));
            }
            if seen.insert(j) {
                total = total.saturating_add(self.utilities[agent][j]);
            }
        }
        Ok(total)
    }
}

/// A proposed assignment of jobs to agents, keyed by identifier.
///
/// Invariants when used as a certificate: every agent of the instance has
/// exactly one entry, and job sets are pairwise disjoint. Empty bundles are
/// representable but can never pass verification (eta >= 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    bundles: BTreeMap<String, BTreeSet<String>>,
}

impl Allocation {
    pub fn new(bundles: BTreeMap<String, BTreeSet<String>>) -> Self {
        Allocation { bundles }
    }

    /// Builds an allocation from per-agent index bundles (one bundle per
    /// agent, in agent order). Intended for solvers; index errors here are
    /// solver bugs, reported as internal.
    pub fn from_index_bundles(inst: &Instance, bundles: &[Vec<usize>]) -> Result<Self> {
        if bundles.len() != inst.agent_count() {
            return Err(Error::Internal(format!(
                "expected {} bundles, got {}",
                inst.agent_count(),
                bundles.len()
            )));
        }
        let mut map = BTreeMap::new();
        for (a, bundle) in bundles.iter().enumerate() {
            let mut set = BTreeSet::new();
            for &j in bundle {
                if j >= inst.job_count() {
                    return Err(Error::Internal(format!("job index {j} out of range in bundle")));
                }
                set.insert(inst.jobs()[j].clone());
            }
            map.insert(inst.agents()[a].clone(), set);
        }
        Ok(Allocation { bundles: map })
    }

    pub fn bundles(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.bundles
    }

    /// Resolves the allocation against an instance to index form (one sorted
    /// bundle per agent, in agent order).
    ///
    /// Malformed certificates — an unknown agent key, a missing agent entry,
    /// or an unknown job identifier — are errors, deliberately distinct from
    /// a verification verdict of `false`.
    pub fn index_bundles(&self, inst: &Instance) -> Result<Vec<Vec<usize>>> {
        for key in self.bundles.keys() {
            if inst.agent_index(key).is_none() {
                return Err(Error::MalformedCertificate(format!(
                    "unknown agent identifier {key:?}"
                )));
            }
        }
        let mut out = Vec::with_capacity(inst.agent_count());
        for name in inst.agents() {
            let set = self.bundles.get(name).ok_or_else(|| {
                Error::MalformedCertificate(format!("certificate is missing agent {name:?}"))
            })?;
            let mut bundle = Vec::with_capacity(set.len());
            for job in set {
                let j = inst.job_index(job).ok_or_else(|| {
                    Error::MalformedCertificate(format!("unknown job identifier {job:?}"))
                })?;
                bundle.push(j);
            }
            bundle.sort_unstable();
            out.push(bundle);
        }
        Ok(out)
    }
}

/// The definitional check: returns `Ok(true)` iff bundles are pairwise
/// disjoint, each bundle is conflict-free, every agent's bundle is worth at
/// least `eta` to them, and (when present) every bundle respects the size cap.
///
/// Purely a function of its inputs. Malformed certificates error instead of
/// returning `false`; see [`Allocation::index_bundles`].
pub fn verify_allocation(inst: &Instance, alloc: &Allocation) -> Result<bool> {
    let bundles = alloc.index_bundles(inst)?;
    let mut used = vec![false; inst.job_count()];
    for (agent, bundle) in bundles.iter().enumerate() {
        if let Some(cap) = inst.bundle_cap() {
            if bundle.len() > cap {
                return Ok(false);
            }
        }
        for &j in bundle {
            if used[j] {
                return Ok(false);
            }
            used[j] = true;
        }
        if !inst.conflicts().is_independent(bundle)? {
            return Ok(false);
        }
        if inst.bundle_utility(agent, bundle)? < inst.eta() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What a solver hands back: a verdict, a certificate when the verdict is
/// yes, the algorithm identity, deterministic work counters, and wall time.
///
/// Everything except `elapsed_ms` is reproducible bit-for-bit across runs of
/// the same build on the same input.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub verdict: bool,
    pub certificate: Option<Allocation>,
    pub algorithm: &'static str,
    pub counters: BTreeMap<String, u64>,
    pub elapsed_ms: u64,
}

impl SolveReport {
    pub fn no(algorithm: &'static str, counters: BTreeMap<String, u64>, elapsed_ms: u64) -> Self {
        SolveReport {
            verdict: false,
            certificate: None,
            algorithm,
            counters,
            elapsed_ms,
        }
    }

    /// Builds a yes-report from index bundles, running the certificate
    /// through [`verify_allocation`] first. A solver producing a bundle set
    /// the verifier rejects is a bug, surfaced as an internal error — so a
    /// yes-verdict always carries a verifier-accepted certificate.
    pub fn verified_yes(
        inst: &Instance,
        algorithm: &'static str,
        bundles: &[Vec<usize>],
        counters: BTreeMap<String, u64>,
        elapsed_ms: u64,
    ) -> Result<Self> {
        let alloc = Allocation::from_index_bundles(inst, bundles)?;
        if !verify_allocation(inst, &alloc)? {
            return Err(Error::Internal(format!(
                "{algorithm} produced a certificate the verifier rejects"
            )));
        }
        Ok(SolveReport {
            verdict: true,
            certificate: Some(alloc),
            algorithm,
            counters,
            elapsed_ms,
        })
    }
}

/// Milliseconds elapsed since `start`, rounded down.
pub(crate) fn ms_since(start: std::time::Instant) -> u64 {
    start.elapsed().as_millis() as u64
}
