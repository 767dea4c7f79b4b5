use serde::{Deserialize, Serialize};

/// Size limits for the exponential searches.
///
/// Every guarded operation has a `*_with` variant taking explicit ceilings; the
/// plain variant uses [`Ceilings::default`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ceilings {
    /// Largest source graph handed to the homomorphism oracle in verification
    /// helpers.
    pub oracle_vertices: usize,
    /// Largest graph for the exact witness-number search.
    pub witness_vertices: usize,
    /// Largest graph for `compute_core`.
    pub core_vertices: usize,
    /// Largest graph for the exact clique search.
    pub clique_vertices: usize,
    /// Largest `m` for `B_{m,l}` copy searches.
    pub b_pattern_m: usize,
    /// Largest candidate gadget size in the edge-gadget search.
    pub gadget_vertices: usize,
    /// Largest extension degree accepted when building fields.
    pub field_degree: u32,
    /// Largest vertex count of an orthogonality graph `H(F,d)`.
    pub ortho_vertices: usize,
    /// Largest number of candidate subsets enumerated by the combinatorial kernel.
    pub kernel_subsets: usize,
    /// Largest variable count for brute-force NAE-satisfiability.
    pub nae_vars: usize,
    /// Attempts allowed for seeded sample-and-verify loops.
    pub retry_cap: usize,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            oracle_vertices: 5000,
            witness_vertices: 64,
            core_vertices: 12,
            clique_vertices: 512,
            b_pattern_m: 7,
            gadget_vertices: 7,
            field_degree: 8,
            ortho_vertices: 5000,
            kernel_subsets: 4_000_000,
            nae_vars: 24,
            retry_cap: 64,
        }
    }
}
