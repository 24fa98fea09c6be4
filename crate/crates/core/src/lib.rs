//! Exact counting of closed lattice paths by algebraic area.
//!
//! The square-lattice counts come from a sum over integer compositions
//! weighted by rational coefficients ([`square`]). They are checked against
//! a walk counter, a winding-number decomposer and a q-commuting word
//! expander ([`oracle`]), and connected to Hofstadter-type spectral data
//! ([`spectral`]). [`triangular`] covers chiral paths on the triangular
//! lattice.

pub mod combinatorics;
pub mod distribution;
pub mod error;
pub mod oracle;
pub mod spectral;
pub mod square;
pub mod triangular;

pub use combinatorics::{
    binomial, coeff_c, coeff_cg, composition_count, compositions, g_compositions, Composition,
    GComposition,
};
pub use distribution::AreaDistribution;
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use square::{
    area_distribution_square, area_distribution_square_mirror_reduced, count_closed_paths_square,
    count_closed_paths_square_mirror_reduced, levy_comparison, single_sum_expansion, LevyRow,
};
