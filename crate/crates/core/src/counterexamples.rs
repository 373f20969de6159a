//! Executable boundary cases of the sign recognition equivalence.
//!
//! * The 4x4 lemma-family matrix with `c = 1`, `a = -1` and `b` outside
//!   `{0, 1, -1}`: every principal submatrix has even rank, yet no nonzero
//!   scaling makes it skew-symmetric, while every strict principal submatrix
//!   can be scaled. The equivalence needs the `{0, 1, -1}` restriction.
//! * A 4x4 matrix on which sign normalization without the reordering step
//!   leaves a non-skew-symmetric matrix, though a sign certificate exists.
//! * Over GF(3) every entry is in `{0, 1, -1}`, so the equivalence holds for
//!   all matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evenrank::{check_all_principal_even, SearchMode};
use crate::field::{FieldSpec, Scalar};
use crate::lemma::{build_lemma_matrix, LemmaParams};
use crate::matrix::{IndexSet, Matrix};
use crate::recognizer::{recognize_general_scaling, recognize_sign, SignCertificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Remark1Report {
    pub field: String,
    pub a: Scalar,
    pub b: Scalar,
    pub all_principal_even: bool,
    pub whole_scalable: bool,
    pub strict_submatrices_scalable: bool,
}

impl Remark1Report {
    /// The counterexample pattern: all even, not scalable, every strict
    /// principal submatrix scalable.
    pub fn is_counterexample(&self) -> bool {
        self.all_principal_even && !self.whole_scalable && self.strict_submatrices_scalable
    }
}

/// The lemma-family matrix with `n = 4`, `c = 1`, and arbitrary nonzero
/// `a, b`.
pub fn remark1_matrix(a: &Scalar, b: &Scalar) -> Result<Matrix> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidParams("a and b must be nonzero".into()));
    }
    let one = a.field().one();
    Ok(build_lemma_matrix(&LemmaParams::new(
        4,
        a.clone(),
        b.clone(),
        one,
    )?))
}

/// Full-matrix parity rule for [`remark1_matrix`]: even rank iff
/// `a = 1 = -b` or (`a != 1` and `1 != -b`).
pub fn remark1_parity_rule(a: &Scalar, b: &Scalar) -> bool {
    let one = a.field().one();
    let minus_b = -b;
    (*a == one && minus_b == one) || (*a != one && minus_b != one)
}

pub fn remark1_validate(a: &Scalar, b: &Scalar) -> Result<Remark1Report> {
    let m = remark1_matrix(a, b)?;
    let all_principal_even = check_all_principal_even(&m, SearchMode::Exhaustive)?.is_all_even();
    let whole_scalable = recognize_general_scaling(&m)?.is_accept();
    let mut strict_submatrices_scalable = true;
    for mask in 1u64..(1 << 4) - 1 {
        let sub = m.principal_submatrix(&IndexSet::from_mask(mask))?;
        if !recognize_general_scaling(&sub)?.is_accept() {
            strict_submatrices_scalable = false;
            break;
        }
    }
    Ok(Remark1Report {
        field: a.field().to_string(),
        a: a.clone(),
        b: b.clone(),
        all_principal_even,
        whole_scalable,
        strict_submatrices_scalable,
    })
}

/// `[[0,0,-1,0],[0,0,0,-1],[1,0,0,1],[0,1,1,0]]` over `field`.
pub fn remark2_matrix(field: FieldSpec) -> Matrix {
    Matrix::from_ints(
        field,
        &[[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 1], [0, 1, 1, 0]],
    )
    .expect("rectangular literal")
}

/// Flip column 1 and row 3.
pub fn remark2_reference_certificate() -> SignCertificate {
    SignCertificate::flipping(4, &[3], &[1]).expect("indices within 4")
}

/// Runs the recognizer and the even-rank oracle on a GF(3) matrix and
/// reports whether they agree.
pub fn gf3_corollary_check(m: &Matrix) -> Result<bool> {
    if m.field() != FieldSpec::Prime(3) {
        return Err(Error::FieldMismatch {
            left: "gf 3".into(),
            right: m.field().to_string(),
        });
    }
    let accept = recognize_sign(m)?.is_accept();
    let even = check_all_principal_even(m, SearchMode::Exhaustive)?.is_all_even();
    Ok(accept == even)
}
