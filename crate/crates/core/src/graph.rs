//! Graphs whose edges each carry a qubit, projected through one shared frame.
//!
//! The frame is held behind an [`Arc`] and every projection goes through it,
//! so all edge vectors land in the same `ℝ³`. The counterfactual in which
//! each edge has its own frame (and its own copy of `ℝ³`) is available only
//! as the explicit simulation [`counterfactual_dimension`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::equivariance::adjoint_rotation;
use crate::linalg::{haar_pure_state, haar_special_unitary, numerical_rank, pauli_basis, CMatrix, GeneratorBasis, PureState, RMatrix};
use crate::projection::{bloch_project, BlochVector};
use crate::{Error, Result};

/// Fresh joint samples drawn per reachable dimension in the counterfactual.
const COUNTERFACTUAL_OVERSAMPLING: usize = 2;

/// A finite, simple, undirected, connected graph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidGraph("at least one edge is required".into()));
        }
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (idx, &(a, b)) in edges.iter().enumerate() {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!("edge {idx} = ({a}, {b}) has an endpoint out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("edge {idx} is a self-loop at {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("edge {idx} = ({a}, {b}) is a duplicate")));
            }
            adjacency[a].push(idx);
            adjacency[b].push(idx);
        }
        let g = Graph { vertex_count, edges, adjacency };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    /// One centre (vertex 0) joined to `k` leaves.
    pub fn star(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidGraph("star valence must be >= 1".into()));
        }
        Graph::new(k + 1, (1..=k).map(|leaf| (0, leaf)).collect())
    }

    pub fn path(vertices: usize) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::InvalidGraph("path needs >= 2 vertices".into()));
        }
        Graph::new(vertices, (1..vertices).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(vertices: usize) -> Result<Self> {
        if vertices < 3 {
            return Err(Error::InvalidGraph("cycle needs >= 3 vertices".into()));
        }
        Graph::new(vertices, (0..vertices).map(|i| (i, (i + 1) % vertices)).collect())
    }

    pub fn complete(vertices: usize) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::InvalidGraph("complete graph needs >= 2 vertices".into()));
        }
        let edges = (0..vertices).flat_map(|a| (a + 1..vertices).map(move |b| (a, b))).collect();
        Graph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Indices of edges incident to `v`, in insertion order.
    pub fn incident_edges(&self, v: usize) -> Result<&[usize]> {
        self.adjacency
            .get(v)
            .map(Vec::as_slice)
            .ok_or(Error::InvalidVertex { vertex: v, count: self.vertex_count })
    }

    pub fn valence(&self, v: usize) -> Result<usize> {
        self.incident_edges(v).map(<[usize]>::len)
    }

    fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut visited = vec![false; self.vertex_count];
        let mut stack = vec![0];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.adjacency[v] {
                let (a, b) = self.edges[e];
                let w = if a == v { b } else { a };
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        visited.into_iter().all(|x| x)
    }
}

/// A graph family plus its size parameter, parsed from strings such as
/// `kind=star,k=6`, `kind=path,n=5`, `kind=cycle,n=4`, `kind=complete,n=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphSpec {
    Star { k: usize },
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
}

impl GraphSpec {
    pub fn build(self) -> Result<Graph> {
        match self {
            GraphSpec::Star { k } => Graph::star(k),
            GraphSpec::Path { n } => Graph::path(n),
            GraphSpec::Cycle { n } => Graph::cycle(n),
            GraphSpec::Complete { n } => Graph::complete(n),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut kind = None;
        let mut size = None;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {part:?}")))?;
            match key.trim() {
                "kind" => kind = Some(value.trim().to_owned()),
                "k" | "n" => {
                    let parsed = value
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidParameter(format!("{key} must be a count, got {value:?}")))?;
                    size = Some((key.trim().to_owned(), parsed));
                }
                other => return Err(Error::InvalidParameter(format!("unknown graph key {other:?}"))),
            }
        }
        let kind = kind.ok_or_else(|| Error::InvalidParameter("missing kind=".into()))?;
        let (key, value) = size.ok_or_else(|| Error::InvalidParameter("missing size (k= or n=)".into()))?;
        match (kind.as_str(), key.as_str()) {
            ("star", "k") => Ok(GraphSpec::Star { k: value }),
            ("path", "n") => Ok(GraphSpec::Path { n: value }),
            ("cycle", "n") => Ok(GraphSpec::Cycle { n: value }),
            ("complete", "n") => Ok(GraphSpec::Complete { n: value }),
            ("star" | "path" | "cycle" | "complete", key) => {
                Err(Error::InvalidParameter(format!("graph kind {kind:?} does not take {key}=")))
            }
            (other, _) => Err(Error::InvalidParameter(format!(
                "unknown graph kind {other:?} (star|path|cycle|complete)"
            ))),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Star { k } => write!(f, "kind=star,k={k}"),
            GraphSpec::Path { n } => write!(f, "kind=path,n={n}"),
            GraphSpec::Cycle { n } => write!(f, "kind=cycle,n={n}"),
            GraphSpec::Complete { n } => write!(f, "kind=complete,n={n}"),
        }
    }
}

/// One qubit state per edge plus the global generator frame.
#[derive(Debug, Clone)]
pub struct GraphAssignment {
    graph: Graph,
    edge_states: Vec<PureState>,
    frame: Arc<GeneratorBasis>,
}

impl GraphAssignment {
    pub fn new(graph: Graph, edge_states: Vec<PureState>, frame: Arc<GeneratorBasis>) -> Result<Self> {
        if edge_states.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch { left: edge_states.len(), right: graph.edge_count() });
        }
        if frame.n() != 2 {
            return Err(Error::InvalidDimension(frame.n(), "a qubit frame (n = 2)"));
        }
        if let Some(bad) = edge_states.iter().find(|s| s.n() != 2) {
            return Err(Error::DimensionMismatch { left: bad.n(), right: 2 });
        }
        Ok(Self { graph, edge_states, frame })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_states(&self) -> &[PureState] {
        &self.edge_states
    }

    pub fn frame(&self) -> &Arc<GeneratorBasis> {
        &self.frame
    }

    /// `ψ_e ↦ Uψ_e` on every edge; the frame is untouched.
    pub fn apply_global_gauge(&self, u: &CMatrix) -> Result<GraphAssignment> {
        // Validates U ∈ SU(2) before touching any state.
        adjoint_rotation(u, &self.frame)?;
        let edge_states = self.edge_states.iter().map(|s| s.evolved(u)).collect::<Result<_>>()?;
        Ok(GraphAssignment { graph: self.graph.clone(), edge_states, frame: Arc::clone(&self.frame) })
    }

    /// Bloch vectors of the edges at `v`, in adjacency order.
    pub fn vertex_configuration(&self, v: usize) -> Result<VertexConfiguration> {
        let bloch_vectors = self
            .graph
            .incident_edges(v)?
            .iter()
            .map(|&e| bloch_project(&self.edge_states[e], &self.frame))
            .collect::<Result<_>>()?;
        Ok(VertexConfiguration { vertex: v, bloch_vectors })
    }
}

/// Independent Haar qubit on every edge, Pauli frame.
pub fn assign_random_states<R: Rng + ?Sized>(graph: &Graph, rng: &mut R) -> Result<GraphAssignment> {
    let states = (0..graph.edge_count())
        .map(|_| haar_pure_state(2, rng))
        .collect::<Result<_>>()?;
    GraphAssignment::new(graph.clone(), states, Arc::new(pauli_basis()))
}

/// The tuple `(n̂₁, …, n̂_k)` at a vertex.
#[derive(Debug, Clone)]
pub struct VertexConfiguration {
    pub vertex: usize,
    pub bloch_vectors: Vec<BlochVector>,
}

impl VertexConfiguration {
    pub fn valence(&self) -> usize {
        self.bloch_vectors.len()
    }

    /// `k × 3` matrix with one Bloch vector per row.
    pub fn matrix(&self) -> RMatrix {
        let k = self.bloch_vectors.len();
        let d = self.bloch_vectors.first().map_or(3, |b| b.components().len());
        RMatrix::from_fn(k, d, |i, j| self.bloch_vectors[i].components()[j])
    }
}

/// Rank of the span of the vertex's Bloch vectors.
pub fn ambient_dimension(config: &VertexConfiguration, tol: f64) -> usize {
    numerical_rank(&config.matrix(), tol)
}

/// Dimension reached when the shared frame is dropped, with the default
/// number of samples (`2 · 3k`).
pub fn counterfactual_dimension<R: Rng + ?Sized>(
    assignment: &GraphAssignment,
    v: usize,
    rng: &mut R,
    tol: f64,
) -> Result<usize> {
    let k = assignment.graph.valence(v)?;
    counterfactual_dimension_with_samples(assignment, v, COUNTERFACTUAL_OVERSAMPLING * 3 * k, rng, tol)
}

/// Each edge `i` at `v` gets its own random frame `V_i σ_a V_i†` and its
/// Bloch vector is written into block `i` of `ℝ^{3k}`. The first sample uses
/// the assignment's own states, the rest redraw every edge state. Returns the
/// rank of the `samples × 3k` matrix of joint configurations.
pub fn counterfactual_dimension_with_samples<R: Rng + ?Sized>(
    assignment: &GraphAssignment,
    v: usize,
    samples: usize,
    rng: &mut R,
    tol: f64,
) -> Result<usize> {
    let edges = assignment.graph.incident_edges(v)?;
    let k = edges.len();
    if k == 0 {
        return Err(Error::InvalidGraph(format!("vertex {v} has no incident edges")));
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("counterfactual needs at least one sample".into()));
    }
    let frames = (0..k)
        .map(|_| assignment.frame.conjugated(&haar_special_unitary(2, rng)?))
        .collect::<Result<Vec<_>>>()?;
    let mut m = RMatrix::zeros(samples, 3 * k);
    for s in 0..samples {
        for (i, (&e, frame)) in edges.iter().zip(&frames).enumerate() {
            let vector = if s == 0 {
                bloch_project(&assignment.edge_states[e], frame)?
            } else {
                bloch_project(&haar_pure_state(2, rng)?, frame)?
            };
            for (j, &c) in vector.components().iter().enumerate() {
                m[(s, 3 * i + j)] = c;
            }
        }
    }
    Ok(numerical_rank(&m, tol))
}
