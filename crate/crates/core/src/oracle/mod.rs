//! Brute-force ground truth: quiver Grassmannians over small finite fields
//! and Littlewood-Richardson tableaux.

mod field;
mod grassmannian;
mod tableaux;

pub use field::FiniteField;
pub use grassmannian::{
    brute_is_sub, brute_subdims, grassmannian_nonempty, subspaces, FieldRepresentation, Subspace,
    FEASIBILITY_LIMIT,
};
pub use tableaux::lr_coefficient;
