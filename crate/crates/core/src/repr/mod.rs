//! Faithful orthogonal and independent vector representations of graphs.

mod fixtures;
mod kneser;
mod minrank;
mod normalize;
mod ortho;

pub use fixtures::{petersen_ortho_graph, petersen_ortho_rep, PETERSEN_ORTHO_VECTORS};
pub use kneser::{kneser_construction, kneser_field, kneser_field_threshold, kneser_rep, KneserConstruction};
pub use minrank::minrank_matrix;
pub use normalize::{normalize_first_entry, normalize_first_entry_with};
pub use ortho::{ortho_graph, ortho_graph_with};

use crate::ffalg::{Echelon, Fe, Field, FieldSpec};
use crate::graph::Graph;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Orthogonal,
    Independent,
}

/// Vectors `x_v` in `F^dim`, one per vertex of `graph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    field: Field,
    dim: usize,
    kind: RepKind,
    graph: Graph,
    vectors: Vec<Vec<Fe>>,
}

/// The first pair at which the defining equivalence fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `{u, v}` is an edge but `x_u` is outside `span{x_w : w ~ v}`.
    EdgeOutsideSpan { u: usize, v: usize },
    /// `{u, v}` is not an edge but `x_u` lies in `span{x_w : w ~ v}`.
    NonEdgeInSpan { u: usize, v: usize },
    SelfOrthogonal { v: usize },
    EdgeNotOrthogonal { u: usize, v: usize },
    NonEdgeOrthogonal { u: usize, v: usize },
}

impl Violation {
    pub fn pair(&self) -> (usize, usize) {
        match *self {
            Violation::EdgeOutsideSpan { u, v }
            | Violation::NonEdgeInSpan { u, v }
            | Violation::EdgeNotOrthogonal { u, v }
            | Violation::NonEdgeOrthogonal { u, v } => (u, v),
            Violation::SelfOrthogonal { v } => (v, v),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeOutsideSpan { u, v } => {
                write!(f, "{u}~{v} but x_{u} is not in the span of N({v})")
            }
            Violation::NonEdgeInSpan { u, v } => {
                write!(f, "{u} !~ {v} but x_{u} is in the span of N({v})")
            }
            Violation::SelfOrthogonal { v } => write!(f, "x_{v} is self-orthogonal"),
            Violation::EdgeNotOrthogonal { u, v } => {
                write!(f, "{u}~{v} but <x_{u}, x_{v}> != 0")
            }
            Violation::NonEdgeOrthogonal { u, v } => {
                write!(f, "{u} !~ {v} but <x_{u}, x_{v}> = 0")
            }
        }
    }
}

impl Representation {
    pub fn new(
        graph: Graph,
        field: Field,
        dim: usize,
        kind: RepKind,
        vectors: Vec<Vec<Fe>>,
    ) -> Result<Self> {
        if vectors.len() != graph.n() {
            return Err(Error::invalid(format!(
                "{} vectors for {} vertices",
                vectors.len(),
                graph.n()
            )));
        }
        if let Some(v) = vectors.iter().position(|x| x.len() != dim) {
            return Err(Error::invalid(format!("vector of vertex {v} is not {dim}-dimensional")));
        }
        if vectors.iter().flatten().any(|x| x.0 >= field.order()) {
            return Err(Error::Field(format!("vector entry outside {field:?}")));
        }
        Ok(Representation {
            field,
            dim,
            kind,
            graph,
            vectors,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vectors(&self) -> &[Vec<Fe>] {
        &self.vectors
    }

    pub fn vector(&self, v: usize) -> &[Fe] {
        &self.vectors[v]
    }

    /// Same vectors read as the other kind.
    pub fn with_kind(mut self, kind: RepKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn has_unit_first_entries(&self) -> bool {
        self.dim > 0 && self.vectors.iter().all(|x| x[0] == Fe::ONE)
    }

    pub fn is_faithful(&self) -> bool {
        check_faithful(self).is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RepFile::from(self)).expect("representation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: RepFile = serde_json::from_str(text)?;
        file.try_into()
    }
}

/// Checks the faithfulness equivalence for every ordered pair of vertices,
/// including `u = v`. The reported violation is the first in `(v, u)` order.
pub fn check_faithful(rep: &Representation) -> std::result::Result<(), Violation> {
    let g = &rep.graph;
    let f = &rep.field;
    let n = g.n();
    let failures = match rep.kind {
        RepKind::Independent => crate::par::map_range(0..n, |v| {
            let span = Echelon::from_vectors(f, rep.dim, g.neighbors(v).iter().map(|w| rep.vector(w)));
            (0..n).find_map(|u| {
                let inside = span.contains(rep.vector(u));
                match (g.has_edge(u, v), inside) {
                    (true, false) => Some(Violation::EdgeOutsideSpan { u, v }),
                    (false, true) => Some(Violation::NonEdgeInSpan { u, v }),
                    _ => None,
                }
            })
        }),
        RepKind::Orthogonal => crate::par::map_range(0..n, |v| {
            (0..n).find_map(|u| {
                let zero = f.dot(rep.vector(u), rep.vector(v)).is_zero();
                if u == v {
                    return zero.then_some(Violation::SelfOrthogonal { v });
                }
                match (g.has_edge(u, v), zero) {
                    (true, false) => Some(Violation::EdgeNotOrthogonal { u, v }),
                    (false, true) => Some(Violation::NonEdgeOrthogonal { u, v }),
                    _ => None,
                }
            })
        }),
    };
    match failures.into_iter().flatten().next() {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// `x_v = (1, a_v, a_v^2, ..., a_v^Δ)` where `a_v` is the `v`-th field element
/// in encoding order; any `Δ + 1` of these vectors are independent.
pub fn vandermonde_rep(g: &Graph, field: &Field) -> Result<Representation> {
    let n = g.n();
    if (field.order() as usize) < n {
        return Err(Error::Field(format!(
            "{field:?} has fewer than {n} elements"
        )));
    }
    let d = g.max_degree() + 1;
    let vectors = (0..n)
        .map(|v| (0..d).map(|i| field.pow(Fe(v as u32), i as u64)).collect())
        .collect();
    Representation::new(g.clone(), field.clone(), d, RepKind::Independent, vectors)
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<usize, String>,
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    field: FieldSpec,
    dim: usize,
    kind: RepKind,
    graph: GraphFile,
    /// Per vertex, per coordinate, the base-p digits of the entry.
    vectors: Vec<Vec<Vec<u32>>>,
}

impl From<&Representation> for RepFile {
    fn from(rep: &Representation) -> Self {
        let g = &rep.graph;
        RepFile {
            field: rep.field.spec().clone(),
            dim: rep.dim,
            kind: rep.kind,
            graph: GraphFile {
                n: g.n(),
                edges: g.edges().collect(),
                labels: g.labels().clone(),
            },
            vectors: rep
                .vectors
                .iter()
                .map(|x| x.iter().map(|&e| rep.field.digits(e)).collect())
                .collect(),
        }
    }
}

impl TryFrom<RepFile> for Representation {
    type Error = Error;

    fn try_from(file: RepFile) -> Result<Self> {
        let field = Field::try_from(file.field)?;
        let graph = Graph::from_edges(file.graph.n, file.graph.edges)?;
        if file.graph.labels.keys().any(|&v| v >= graph.n()) {
            return Err(Error::invalid("label for a vertex outside the graph"));
        }
        let graph = graph.with_labels(file.graph.labels);
        let vectors = file
            .vectors
            .iter()
            .map(|x| x.iter().map(|d| field.from_digits(d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Representation::new(graph, field, file.dim, file.kind, vectors)
    }
}
