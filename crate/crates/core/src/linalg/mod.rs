//! Quaternionic vectors and right-linear operators, the complex embedding
//! that carries all spectral work, and the polar decomposition of
//! anti-selfadjoint operators.

pub mod embed;
pub mod expm;
pub mod flags;
pub mod matrix;
pub mod polar;
pub mod spectral;
pub mod svd;
pub mod vector;

pub use embed::{
    complex_embed, complex_unembed, embed_vector, real_embed, unembed_vector, CMatrix,
    CVector, ComplexMatrix, RMatrix, RVector,
};
pub use expm::expm;
pub use flags::{classify_complex, classify_operator, classify_real, OperatorFlags, FLAG_TOL};
pub use matrix::{adjoint, outer, QMatrix};
pub use polar::{antiselfadjoint_residual, polar_antiselfadjoint, polar_antiselfadjoint_in, polar_residuals, PolarDecomposition};
pub use spectral::{operator_norm, s_eigenspheres, selfadjoint_eigenvalues, spectral_projection, EigenSphere};
pub use vector::{inner, QVector};
