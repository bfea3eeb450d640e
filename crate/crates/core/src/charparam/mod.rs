mod branch;
mod interp;
mod points;
mod spoly;

pub use branch::{
    class_map, class_values, decompose, decompose_rational, rational_inner_product,
    reduced_character_basis, restriction_matrix, VirtualCharacter,
};
pub use interp::{
    evaluate, generic_relations, interpolate_character, interpolate_minimal, kernel_ideal,
    restriction_image_rank, scaled_idempotents, separating_polynomial, KernelIdealBasis, PointSet,
};
pub use points::{s_vector, ClassPoint};
pub use spoly::{Monomial, SPolynomial};
