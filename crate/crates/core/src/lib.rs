//! Immanants of generalized principal submatrices, read through Schur-Weyl
//! duality on the tensor space `(C^n)^{⊗m}`.
//!
//! The crate provides
//!
//! * the combinatorial indexing layer ([`combinatorics`]): partitions, weak
//!   compositions, standard and semistandard tableaux, Gelfand-Tsetlin
//!   patterns, hook lengths and Kostka numbers;
//! * [`symmetric_group`]: permutations, Murnaghan-Nakayama characters,
//!   Young's orthogonal form, primitive and central idempotents;
//! * [`immanant`]: exact and float immanant kernels;
//! * [`tensor`]: weight projectors, the `GL_n` and `S_m` actions on tensors,
//!   Capelli operators, and two independent evaluations of the weight-space
//!   trace that equals `Imm_lambda(A_I) / m(I)`;
//! * [`factories`] for certified positive-definite and totally nonnegative
//!   matrices, and [`inequalities`] for the checks built on top of them.
//!
//! All algebra is generic over [`Scalar`]; the aliases below fix the usual
//! modes.

pub mod combinatorics;
pub mod error;
pub mod factories;
pub mod immanant;
pub mod inequalities;
pub mod scalar;
pub mod symmetric_group;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Complex64, FloatScalar, GaussianRational, Rational, Scalar, ToFloat};

pub type RationalMatrix = immanant::Matrix<Rational>;
pub type GaussianMatrix = immanant::Matrix<GaussianRational>;
pub type FloatMatrix = immanant::Matrix<f64>;
pub type ComplexMatrix = immanant::Matrix<Complex64>;

pub type RationalTensor = tensor::TensorVector<Rational>;
pub type FloatTensor = tensor::TensorVector<f64>;
