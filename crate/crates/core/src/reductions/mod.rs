//! Constructive reductions: edge gadgets, List-H-Coloring to H-Coloring, and
//! NAE-SAT to H-Coloring parameterized by vertex cover.

mod cnf;
mod gadget;
mod list;
mod nae;

pub use cnf::{nae_sat_brute, nae_sat_brute_with, parse_dimacs, random_formula, CnfFormula};
pub use gadget::{
    connected_graphs, find_edge_gadget, find_edge_gadget_with, verify_edge_gadget,
    verify_edge_gadget_with, EdgeGadget, GadgetSearch,
};
pub use list::{random_lists, reduce_list_to_plain, ListInstance};
pub use nae::{find_tight_witness_set, find_tight_witness_set_with, nae_cover_size, reduce_naesat_to_hcol, NaeReduction};
