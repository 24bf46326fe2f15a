//! Exact linear algebra for conjugation invariants of matrix tuples under
//! the unitriangular group: exact scalars, minor families, invariant
//! evaluation, the adjoint action, canonical section representatives, and
//! machine-checkable certificates.

pub mod action;
pub mod canonical;
pub mod certify;
pub mod dual;
pub mod invariants;
pub mod matrix;
pub mod ring;
pub mod rng;
pub mod scalar;

pub use action::{adjoint_matrix, adjoint_tuple, check_elementary_action, UnitriangularMatrix};
pub use canonical::{
    anti_triangular_signs, bring_to_section, find_conjugator, genericity_report,
    is_section_shape, recover_cross_minors, reconstruct_section_single, CanonicalError,
    GenericityReport, SectionTuple, SignTables,
};
pub use certify::{
    certify_action_rules, certify_all, certify_full_rank, certify_invariance,
    certify_section_identities, certify_section_square, Certificate, CertificateKind, Verdict,
    Witness, DEFAULT_CERTIFICATE_PRIME,
};
pub use dual::DualScalar;
pub use invariants::{
    enumerate_generators, evaluate_invariants, p_pair, p_single, GeneratorLabel, InvariantVector,
};
pub use matrix::{index_prime, LinalgError, Matrix, MatrixTuple};
pub use ring::Ring;
pub use scalar::{FieldSpec, Scalar, ScalarError};
