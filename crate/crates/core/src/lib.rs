//! Exact recognition of square {0, 1, -1} matrices all of whose principal
//! submatrices have even rank, i.e. matrices that are skew-symmetric up to
//! multiplying rows and columns by -1.
//!
//! Every decision comes with a certificate that can be re-checked
//! independently: a set of row/column signs that produces a skew-symmetric
//! matrix, or an index set whose principal submatrix has odd rank.
//!
//! ```
//! use skewrank::{recognize_sign, FieldSpec, Matrix, SignVerdict, Certificate};
//!
//! let m = Matrix::from_ints(
//!     FieldSpec::Rationals,
//!     &[[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 1], [0, 1, 1, 0]],
//! )
//! .unwrap();
//! match recognize_sign(&m).unwrap() {
//!     SignVerdict::Accept(cert) => assert!(cert.verify(&m).unwrap()),
//!     SignVerdict::Reject(_) => unreachable!(),
//! }
//! ```

pub mod counterexamples;
pub mod error;
pub mod evenrank;
pub mod field;
pub mod format;
pub mod lemma;
pub mod matrix;
pub mod recognizer;

pub use error::{Error, Result};
pub use evenrank::{
    check_all_principal_even, verify_witness, EvenRankChecker, EvenRankOutcome, EvenRankVerdict,
    OddWitness, SearchMode,
};
pub use field::{FieldSpec, Scalar};
pub use lemma::{build_lemma_matrix, lemma_parity_predicate, schur_reduce_step, LemmaParams};
pub use matrix::{GuttmanReport, IndexSet, Matrix, Permutation};
pub use recognizer::{
    apply_certificate, extract_witness, m_ordering, precheck, recognize_general_scaling,
    recognize_sign, sign_normalize, Certificate, MOrdering, Precheck, ScalingCertificate,
    ScalingRejection, ScalingVerdict, Sign, SignCertificate, SignVerdict, SupportGraph,
};
