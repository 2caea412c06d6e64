//! Exact-arithmetic computer algebra for bialgebras presented on
//! combinatorial bases, partial coverings between them, and transfer of
//! structure along coverings.
//!
//! Everything computes over the rationals with exact arithmetic and
//! deterministic elimination, so identical inputs always produce identical
//! reports.

pub mod antipode;
pub mod basis;
pub mod coalgebra_ops;
pub mod combinat;
pub mod covering;
pub mod element;
pub mod error;
pub mod handle;
pub mod instances;
pub mod linalg;
pub mod linmap;
pub mod primitives;
pub mod registry;
pub mod scalar;
pub mod suite;
pub mod text;
pub mod transfer;
pub mod verify;

pub use antipode::{antipode_oracle, eulerian_projection, takeuchi_antipode};
pub use basis::{BasisKey, CompositionLetter, PowerLetter};
pub use coalgebra_ops::{
    direct_sum_coalgebra, quotient_coalgebra, tensor_coalgebra, QuotientData,
};
pub use covering::{
    canonical_covering, compose, direct_sum, factor_through_canonical, identity_covering,
    locally_finitize, pushout, verify_covering, CoveringMorphism, PartialCovering,
};
pub use element::Element;
pub use error::{AlgebraError, Result};
pub use handle::{BialgebraHandle, CoalgebraHandle, GradedBasis, StructureFlags};
pub use linalg::{DenseMatrix, SpanBuilder};
pub use linmap::{convolution, convolution_power, LinMap};
pub use primitives::{is_primitive, primitive_basis, primitive_basis_by_projection, PrimitiveSpace};
pub use registry::{build_bialgebra, build_covering, RunParams};
pub use scalar::Scalar;
pub use suite::{full_suite, suite_to_json, SuiteReport};
pub use transfer::{
    galois_check, gamma_surjectivity, linear_section, swap_identity_check, transfer_antipode,
    transfer_primitive, GaloisReport, LinearSection,
};
pub use verify::{verify_bialgebra, verify_coalgebra, BialgebraReport, IdentityFailure};
