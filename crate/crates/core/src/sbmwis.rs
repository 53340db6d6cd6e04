//! Size-bounded maximum-weight independent set: given a vertex-weighted
//! graph, is there an independent set of at most `size_cap` vertices with
//! total weight at least `target`?
//!
//! This is both a problem in its own right (one-agent allocation) and the
//! workhorse subroutine of the color-coding solver. Two exact algorithms live
//! here — a branching search for "independence-friendly" graph classes and a
//! greedy for cluster graphs — plus the structural detector that picks
//! between them.

use crate::error::{Error, InvalidCode, Result};
use crate::model::ConflictGraph;

/// Decision instance: independent set of size `<= size_cap` and weight
/// `>= target`.
#[derive(Debug, Clone)]
pub struct SbMwisInstance {
    graph: ConflictGraph,
    weights: Vec<u64>,
    size_cap: usize,
    target: u64,
}

impl SbMwisInstance {
    pub fn new(graph: ConflictGraph, weights: Vec<u64>, size_cap: usize, target: u64) -> Result<Self> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::invalid(
                InvalidCode::WeightDim,
                "/weights",
                format!(
                    "expected {} weights (one per vertex), found {}",
                    graph.vertex_count(),
                    weights.len()
                ),
            ));
        }
        if size_cap < 1 || size_cap > graph.vertex_count() {
            return Err(Error::invalid(
                InvalidCode::SizeCapRange,
                "/size_cap",
                format!("size_cap must lie in 1..={}, got {size_cap}", graph.vertex_count()),
            ));
        }
        Ok(SbMwisInstance {
            graph,
            weights,
            size_cap,
            target,
        })
    }

    pub fn graph(&self) -> &ConflictGraph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    /// Saturating weight of a vertex set.
    pub fn set_weight(&self, verts: &[usize]) -> u64 {
        verts.iter().fold(0u64, |acc, &v| acc.saturating_add(self.weights[v]))
    }
}

/// Answer to a decision query, with a witness when the answer is yes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbMwisAnswer {
    pub feasible: bool,
    /// Sorted vertex set reaching the target; `None` iff `feasible` is false.
    pub witness: Option<Vec<usize>>,
}

impl SbMwisAnswer {
    pub fn no() -> Self {
        SbMwisAnswer {
            feasible: false,
            witness: None,
        }
    }

    pub fn yes(mut witness: Vec<usize>) -> Self {
        witness.sort_unstable();
        SbMwisAnswer {
            feasible: true,
            witness: Some(witness),
        }
    }
}

/// Hereditary graph classes where every n-vertex member is guaranteed an
/// independent set of size `f(n)` for a known monotone `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Bipartite,
    TriangleFree,
    Planar,
    /// Every subgraph has a vertex of degree at most `d`.
    Degenerate(usize),
    /// No clique on `l` vertices (`l >= 2`).
    CliqueFree(usize),
}

/// A graph class together with its independence guarantee `f` and the inverse
/// threshold `f_inverse_at(k)` = least vertex count that guarantees an
/// independent set of size `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceFriendlyProfile {
    class: GraphClass,
}

impl IndependenceFriendlyProfile {
    pub fn new(class: GraphClass) -> Result<Self> {
        if let GraphClass::CliqueFree(l) = class {
            if l < 2 {
                return Err(Error::invalid(
                    InvalidCode::BadParam,
                    "-",
                    format!("clique-free order must be at least 2, got {l}"),
                ));
            }
        }
        Ok(IndependenceFriendlyProfile { class })
    }

    pub fn class(&self) -> GraphClass {
        self.class
    }

    pub fn class_name(&self) -> String {
        match self.class {
            GraphClass::Bipartite => "bipartite".into(),
            GraphClass::TriangleFree => "triangle-free".into(),
            GraphClass::Planar => "planar".into(),
            GraphClass::Degenerate(d) => format!("{d}-degenerate"),
            GraphClass::CliqueFree(l) => format!("K{l}-free"),
        }
    }

    /// Guaranteed independent-set size in any member graph on `n` vertices.
    /// Conservative integer guarantees, chosen so that `f_inverse_at` below is
    /// exactly the least `n` with `f(n) >= k`.
    pub fn guaranteed_independent(&self, n: usize) -> usize {
        match self.class {
            GraphClass::Bipartite => n / 2,
            GraphClass::Planar => n / 4,
            GraphClass::Degenerate(d) => n / (d + 1),
            GraphClass::TriangleFree => (n as u64).isqrt() as usize / 2,
            GraphClass::CliqueFree(l) => {
                let mut k = 0usize;
                while binomial(l + k + 1 - 2, l - 1).map_or(false, |b| b <= n as u64) {
                    k += 1;
                }
                k
            }
        }
    }

    /// Least vertex count at which the class guarantees an independent set of
    /// size `k` (`k >= 1`). Closed forms per class: 2k (bipartite), 4k^2
    /// (triangle-free), 4k (planar), k(d+1) (d-degenerate), C(l+k-2, l-1)
    /// (K_l-free, via the Ramsey bound).
    pub fn f_inverse_at(&self, k: usize) -> u64 {
        let k64 = k as u64;
        match self.class {
            GraphClass::Bipartite => 2 * k64,
            GraphClass::Planar => 4 * k64,
            GraphClass::Degenerate(d) => k64 * (d as u64 + 1),
            GraphClass::TriangleFree => 4 * k64 * k64,
            GraphClass::CliqueFree(l) => {
                binomial(l + k - 2, l - 1).unwrap_or(u64::MAX)
            }
        }
    }
}

/// C(n, r) in u64, `None` on overflow.
fn binomial(n: usize, r: usize) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u64 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u64)?;
        acc /= (i + 1) as u64;
    }
    Some(acc)
}

/// Outcome of the branching solver, including the node-expansion counter the
/// complexity claim is asserted against.
#[derive(Debug, Clone)]
pub struct BranchOutcome {
    pub feasible: bool,
    pub witness: Option<Vec<usize>>,
    /// Number of recursive search-node entries. On class-valid inputs this is
    /// bounded by `f_inverse_at(k)^k`.
    pub nodes_expanded: u64,
    /// Size-k candidate subsets tested in the direct-enumeration phase
    /// (the polynomial-per-node factor, deliberately outside the node count).
    pub candidate_subsets_tried: u64,
}

/// Branching search exploiting an independence guarantee.
///
/// At each node, vertices weighing at least `ceil(target/k)` form the
/// `HighWeight` pool. If the class already guarantees an independent set of
/// size `k` inside the pool, the k-subsets of the `f_inverse_at(k)`
/// lowest-index pool vertices are enumerated directly — any independent one
/// wins. Otherwise the search branches on each pool vertex: take it, delete
/// its closed neighborhood, recurse with `k-1` and the reduced target.
///
/// Cheap class checks run on entry (2-coloring for bipartite, degeneracy for
/// degenerate/planar, a triangle scan for triangle-free); a mismatch is a
/// class-violation error. K_l-freeness is accepted on the caller's assertion.
/// If the guaranteed enumeration ever comes up empty (possible only on a
/// class-violating graph that slipped past the entry check), the node falls
/// back to branching instead of giving a wrong answer.
pub fn solve_ifc_branching(
    inst: &SbMwisInstance,
    profile: &IndependenceFriendlyProfile,
) -> Result<BranchOutcome> {
    let g = inst.graph();
    let v = g.vertex_count();
    if v > 62 {
        return Err(Error::Capacity(format!(
            "branching solver uses 64-bit vertex masks; {v} vertices exceed 62"
        )));
    }
    check_class_membership(g, profile)?;

    let neighbor_masks: Vec<u64> = (0..v).map(|u| g.neighbor_mask(u)).collect();
    let mut search = BranchSearch {
        weights: inst.weights(),
        neighbor_masks: &neighbor_masks,
        profile,
        nodes: 0,
        subsets: 0,
    };
    let live = if v == 64 { u64::MAX } else { (1u64 << v) - 1 };
    let found = search.run(live, inst.size_cap(), inst.target());
    Ok(BranchOutcome {
        feasible: found.is_some(),
        witness: found.map(|mut w| {
            w.sort_unstable();
            w
        }),
        nodes_expanded: search.nodes,
        candidate_subsets_tried: search.subsets,
    })
}

fn check_class_membership(g: &ConflictGraph, profile: &IndependenceFriendlyProfile) -> Result<()> {
    match profile.class() {
        GraphClass::Bipartite => {
            if g.bipartition().is_none() {
                return Err(Error::ClassViolation(
                    "graph contains an odd cycle; not bipartite".into(),
                ));
            }
        }
        GraphClass::Degenerate(d) => {
            let (deg, _) = g.degeneracy_order();
            if deg > d {
                return Err(Error::ClassViolation(format!(
                    "graph has degeneracy {deg}, profile promises at most {d}"
                )));
            }
        }
        GraphClass::Planar => {
            // Full planarity testing is out of scope; every planar graph is
            // 5-degenerate, so this catches gross mismatches.
            let (deg, _) = g.degeneracy_order();
            if deg > 5 {
                return Err(Error::ClassViolation(format!(
                    "graph has degeneracy {deg} > 5; cannot be planar"
                )));
            }
        }
        GraphClass::TriangleFree => {
            for &(a, b) in g.edges() {
                for c in 0..g.vertex_count() {
                    if c != a && c != b && g.has_edge(a, c) && g.has_edge(b, c) {
                        return Err(Error::ClassViolation(format!(
                            "triangle {{{a}, {b}, {c}}} found; not triangle-free"
                        )));
                    }
                }
            }
        }
        GraphClass::CliqueFree(_) => {}
    }
    Ok(())
}

struct BranchSearch<'a> {
    weights: &'a [u64],
    neighbor_masks: &'a [u64],
    profile: &'a IndependenceFriendlyProfile,
    nodes: u64,
    subsets: u64,
}

impl BranchSearch<'_> {
    fn run(&mut self, live: u64, k: usize, target: u64) -> Option<Vec<usize>> {
        self.nodes += 1;
        if target == 0 {
            return Some(Vec::new());
        }
        if k == 0 {
            return None;
        }
        let threshold = target.div_ceil(k as u64);
        let mut high: Vec<usize> = Vec::new();
        let mut rest = live;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.weights[u] >= threshold {
                high.push(u);
            }
        }
        if high.is_empty() {
            return None;
        }

        if self.profile.guaranteed_independent(high.len()) >= k {
            // The pool is large enough that the class guarantees a size-k
            // independent set among its lowest-index f_inverse_at(k) members;
            // each member weighs >= ceil(target/k), so any such set wins.
            let need = self.profile.f_inverse_at(k);
            debug_assert!(high.len() as u64 >= need);
            let pool = &high[..need as usize];
            if let Some(set) = self.first_independent_k_subset(pool, k) {
                debug_assert!(
                    set.iter().map(|&u| self.weights[u]).sum::<u64>() >= target,
                    "k vertices at >= ceil(target/k) each must reach the target"
                );
                return Some(set);
            }
            // Enumeration exhausted: only possible when the graph is not
            // actually in the promised class. Fall through to branching.
        }

        for &u in &high {
            let child_live = live & !(self.neighbor_masks[u] | (1 << u));
            if let Some(mut set) = self.run(child_live, k - 1, target.saturating_sub(self.weights[u])) {
                set.push(u);
                return Some(set);
            }
        }
        None
    }

    /// Lexicographically first independent k-subset of `pool` (pool is sorted).
    fn first_independent_k_subset(&mut self, pool: &[usize], k: usize) -> Option<Vec<usize>> {
        let mut choice: Vec<usize> = (0..k).collect();
        loop {
            self.subsets += 1;
            let verts: Vec<usize> = choice.iter().map(|&i| pool[i]).collect();
            let mut ok = true;
            'pairs: for (p, &a) in verts.iter().enumerate() {
                for &b in &verts[p + 1..] {
                    if self.neighbor_masks[a] >> b & 1 == 1 {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if ok {
                return Some(verts);
            }
            // Advance to the next k-combination of pool indices.
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if choice[i] != i + pool.len() - k {
                    break;
                }
            }
            choice[i] += 1;
            for j in i + 1..k {
                choice[j] = choice[j - 1] + 1;
            }
        }
    }
}

/// Greedy exact solver for cluster graphs (disjoint unions of cliques).
///
/// An independent set holds at most one vertex per clique, so the best
/// choice is forced: take the heaviest vertex of each clique (ties to the
/// lowest index), keep the `size_cap` heaviest of those (or all, if there are
/// fewer cliques), and compare against the target. The selected set is the
/// witness when it reaches the target.
///
/// `cliques` must partition the vertices, cover every edge, and contain no
/// cross-clique edge; an inconsistent partition is an error.
pub fn solve_sbmwis_cluster(inst: &SbMwisInstance, cliques: &[Vec<usize>]) -> Result<SbMwisAnswer> {
    let g = inst.graph();
    let v = g.vertex_count();
    let mut owner = vec![usize::MAX; v];
    for (c, clique) in cliques.iter().enumerate() {
        for &u in clique {
            if u >= v {
                return Err(Error::invalid(
                    InvalidCode::PartitionMismatch,
                    "/cliques",
                    format!("vertex {u} outside 0..{v}"),
                ));
            }
            if owner[u] != usize::MAX {
                return Err(Error::invalid(
                    InvalidCode::PartitionMismatch,
                    "/cliques",
                    format!("vertex {u} listed in two cliques"),
                ));
            }
            owner[u] = c;
        }
    }
    if owner.iter().any(|&c| c == usize::MAX) {
        return Err(Error::invalid(
            InvalidCode::PartitionMismatch,
            "/cliques",
            "partition does not cover every vertex",
        ));
    }
    for a in 0..v {
        for b in a + 1..v {
            let same = owner[a] == owner[b];
            if same != g.has_edge(a, b) {
                return Err(Error::invalid(
                    InvalidCode::PartitionMismatch,
                    "/cliques",
                    format!(
                        "pair ({a}, {b}) is {} the declared partition but the edge says otherwise",
                        if same { "inside" } else { "across" }
                    ),
                ));
            }
        }
    }

    // Heaviest vertex per clique, lowest index on ties.
    let mut reps: Vec<usize> = cliques
        .iter()
        .filter(|c| !c.is_empty())
        .map(|clique| {
            let mut sorted = clique.clone();
            sorted.sort_unstable();
            sorted
                .into_iter()
                .max_by(|&a, &b| {
                    inst.weights()[a]
                        .cmp(&inst.weights()[b])
                        .then(b.cmp(&a)) // lower index wins ties under max_by
                })
                .expect("clique is nonempty")
        })
        .collect();
    // `size_cap` heaviest representatives, lowest index first on equal weight.
    reps.sort_by(|&a, &b| inst.weights()[b].cmp(&inst.weights()[a]).then(a.cmp(&b)));
    reps.truncate(inst.size_cap());
    let total = inst.set_weight(&reps);
    if total >= inst.target() {
        Ok(SbMwisAnswer::yes(reps))
    } else {
        Ok(SbMwisAnswer::no())
    }
}

/// Structural report used to route instances to the right algorithm.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub edgeless: bool,
    pub complete: bool,
    /// Clique partition, present iff the graph is a cluster graph.
    pub cluster: Option<Vec<Vec<usize>>>,
    /// Proper 2-coloring, present iff bipartite.
    pub bipartition: Option<Vec<u8>>,
    pub degeneracy: usize,
    /// Elimination order witnessing `degeneracy`.
    pub elimination_order: Vec<usize>,
    /// True iff the graph has at least 2 vertices and every vertex has degree
    /// exactly `vertex_count - 2` (complement is a perfect matching).
    pub all_degrees_minus_two: bool,
}

/// Inspects a graph once and tags every structure the specialized solvers
/// care about. Deterministic: all witnesses come from index-ordered scans.
pub fn detect_class(g: &ConflictGraph) -> ClassReport {
    let m = g.vertex_count();
    let (degeneracy, elimination_order) = g.degeneracy_order();
    ClassReport {
        edgeless: g.is_edgeless(),
        complete: g.is_complete(),
        cluster: g.cluster_partition(),
        bipartition: g.bipartition(),
        degeneracy,
        elimination_order,
        all_degrees_minus_two: m >= 2 && (0..m).all(|v| g.degree(v) == m - 2),
    }
}
