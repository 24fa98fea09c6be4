//! Ground-truth engines used to validate the enumeration formulas.

pub mod qword;
pub mod walk;
pub mod winding;

pub use qword::{
    brute_force_distribution_triangular, brute_force_distribution_triangular_with_limit,
    expand_power, identity_of_power, square_generators, triangular_generators,
    word_distribution_square, Exponents, GaussianInt, QMonomial, QPolynomial,
};
pub use walk::{
    brute_force_distribution_square, brute_force_distribution_square_with_limit,
    DEFAULT_WALK_LIMIT,
};
pub use winding::{
    algebraic_area, winding_decomposition, winding_numbers, winding_sectors, LatticePath, Step,
    WindingSector,
};
