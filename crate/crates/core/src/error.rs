//! Error taxonomy shared across the workspace.
//!
//! Every failure carries a machine-readable discriminant so the CLI can map it
//! onto a stable exit code, and every validation failure names the offending
//! field the way a JSON pointer would (`/utilities/2`).

use thiserror::Error;

/// Machine-readable code attached to every input-validation failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidCode {
    /// `eta` outside `1..` (fairness thresholds below 1 are meaningless here).
    EtaRange,
    /// Utility matrix shape does not match the agent/job lists, or a graph was
    /// declared over the wrong number of vertices.
    DimMismatch,
    /// An agent or job identifier appears twice.
    DuplicateId,
    /// A conflict edge joins a vertex to itself.
    SelfLoop,
    /// An edge endpoint is not a valid vertex index.
    EdgeRange,
    /// An edge is written `[i, j]` with `i >= j`; the canonical form requires
    /// the smaller endpoint first.
    EdgeOrder,
    /// The same unordered edge appears twice.
    DuplicateEdge,
    /// `bundle_cap` outside `1..=m`.
    CapRange,
    /// A vertex/agent/job index argument is out of range.
    IndexRange,
    /// Weight vector length does not match the vertex count.
    WeightDim,
    /// Independent-set size bound outside `1..=vertex_count`.
    SizeCapRange,
    /// A weight target that the chosen strictness mode refuses (e.g. 0).
    TargetRange,
    /// Element sums do not match the declared bound.
    SumMismatch,
    /// A source element violates its required window (e.g. `B/4 < s < B/2`).
    ElementRange,
    /// A declared clique partition disagrees with the edge set.
    PartitionMismatch,
    /// Any other rejected parameter (probabilities outside [0,1], zero sizes, ...).
    BadParam,
}

impl InvalidCode {
    pub fn as_str(self) -> &'static str {
        match self {
            InvalidCode::EtaRange => "ETA_RANGE",
            InvalidCode::DimMismatch => "DIM_MISMATCH",
            InvalidCode::DuplicateId => "DUPLICATE_ID",
            InvalidCode::SelfLoop => "SELF_LOOP",
            InvalidCode::EdgeRange => "EDGE_RANGE",
            InvalidCode::EdgeOrder => "EDGE_ORDER",
            InvalidCode::DuplicateEdge => "DUPLICATE_EDGE",
            InvalidCode::CapRange => "CAP_RANGE",
            InvalidCode::IndexRange => "INDEX_RANGE",
            InvalidCode::WeightDim => "WEIGHT_DIM",
            InvalidCode::SizeCapRange => "SIZE_CAP_RANGE",
            InvalidCode::TargetRange => "TARGET_RANGE",
            InvalidCode::SumMismatch => "SUM_MISMATCH",
            InvalidCode::ElementRange => "ELEMENT_RANGE",
            InvalidCode::PartitionMismatch => "PARTITION_MISMATCH",
            InvalidCode::BadParam => "BAD_PARAM",
        }
    }
}

impl std::fmt::Display for InvalidCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Rejected input: a malformed instance, a bad parameter, bad source data.
    #[error("{code} at {pointer}: {detail}")]
    Invalid {
        code: InvalidCode,
        /// JSON-pointer-style location of the offending field ("/eta",
        /// "/utilities/2", "-" when there is no meaningful field).
        pointer: String,
        detail: String,
    },

    /// Input that is not valid JSON at all.
    #[error("JSON_SYNTAX at line {line}, column {column}: {detail}")]
    Json {
        line: usize,
        column: usize,
        detail: String,
    },

    /// Problem size beyond what the chosen algorithm can represent, or an
    /// enumeration that would exceed its configured budget.
    #[error("capacity: {0}")]
    Capacity(String),

    /// A solver was asked to run on an instance outside its applicability
    /// class (e.g. the complete-graph solver on a graph with a missing edge).
    #[error("routing: {0}")]
    Routing(String),

    /// A graph handed to a class-specific algorithm turned out not to be in
    /// the promised class (e.g. an odd cycle under a bipartite profile).
    #[error("class violation: {0}")]
    ClassViolation(String),

    /// A certificate naming unknown agents or jobs, or missing an agent.
    /// Deliberately distinct from a verdict of "false".
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    /// A caller violated an operation's contract (e.g. color coding without a
    /// bundle size cap).
    #[error("contract: {0}")]
    Contract(String),

    /// Invariant breakage inside a solver. Indicates a bug, not bad input.
    #[error("internal: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(code: InvalidCode, pointer: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invalid {
            code,
            pointer: pointer.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
