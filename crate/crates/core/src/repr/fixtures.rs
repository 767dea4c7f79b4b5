use super::{RepKind, Representation};
use crate::ffalg::Field;
use crate::graph::Graph;
use crate::Result;

/// Integer vectors of a 3-dimensional orthogonal representation of the
/// Petersen graph, for the labelling of [`petersen_ortho_graph`].
pub const PETERSEN_ORTHO_VECTORS: [[i64; 3]; 10] = [
    [1, 0, 0],
    [0, 1, 0],
    [1, 0, 1],
    [1, 1, -1],
    [0, 1, 1],
    [0, 1, 2],
    [1, 0, -3],
    [1, 2, -1],
    [3, -2, 1],
    [3, -1, 1],
];

/// Petersen graph with outer cycle `0..5`, inner pentagram `5..10` and
/// spokes `i ~ i + 5`.
pub fn petersen_ortho_graph() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (4, 0),
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
    ];
    Graph::from_edges(10, edges).expect("valid edge list")
}

/// The integer vectors reduced into `field`'s prime subfield.
pub fn petersen_ortho_rep(field: &Field) -> Result<Representation> {
    let vectors = PETERSEN_ORTHO_VECTORS
        .iter()
        .map(|x| x.iter().map(|&e| field.from_int(e)).collect())
        .collect();
    Representation::new(petersen_ortho_graph(), field.clone(), 3, RepKind::Orthogonal, vectors)
}
