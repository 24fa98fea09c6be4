//! Hofstadter-type matrices, secular determinants, nested sums `Z(n)`,
//! cluster coefficients `b(n)` and trace-based area extraction.

pub mod dft;
pub mod flux;
pub mod hamiltonian;
pub mod nested;
pub mod scalar;
pub mod secular;

pub use dft::{
    area_over_bound, dealias_modulus, extract_distribution_dft, extract_distribution_dft_with,
    q_exponent_range,
};
pub use flux::RationalFlux;
pub use hamiltonian::{
    hofstadter_matrix, hofstadter_spectrum, quantum_trace, trace_identity_check,
    CliffordHamiltonian, TraceIdentity,
};
pub use nested::{
    cluster_b_all, cluster_b_compositions, cluster_b_logseries, general_z, kreft_z, z_series,
};
pub use scalar::Scalar;
pub use secular::{
    build_secular_matrix, characteristic_coeffs, secular_det_coeffs, secular_polynomial,
    SpectralFunctions,
};
