//! Finite fields, dense matrices over them, and sparse multilinear
//! polynomials.

mod field;
mod matrix;
mod poly;

pub use field::{
    field_extension_above, field_extension_above_with, field_is_prime, field_make, Embedding, Fe,
    Field, FieldSpec,
};
pub use matrix::{Echelon, Matrix, RowReduction};
pub use poly::{det_poly, poly_basis_select, BasisSelection, MonomialKey, SparsePoly};
