//! The banded matrix family whose rank parity drives the whole recognizer.
//!
//! For `n >= 3` and nonzero `a, b, c` the family member is the `n x n` matrix
//! with `M[1][2] = -c`, `M[2][1] = c`, `-1` on the second superdiagonal, `1`
//! on the second subdiagonal, `M[n-1][n] = b`, `M[n][n-1] = a` and zeros
//! elsewhere. With `a, b, c` in `{1, -1}` its rank is even exactly when
//! `a = -b`.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{IndexSet, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaParams {
    n: usize,
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl LemmaParams {
    /// Any nonzero `a, b, c` from one field are accepted; the `{1, -1}`
    /// restriction only matters to [`lemma_parity_predicate`].
    pub fn new(n: usize, a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n = {n}, need n >= 3")));
        }
        let field = a.field();
        for (name, x) in [("a", &a), ("b", &b), ("c", &c)] {
            if x.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: x.field().to_string(),
                });
            }
            if x.is_zero() {
                return Err(Error::InvalidParams(format!("{name} must be nonzero")));
            }
        }
        Ok(LemmaParams { n, a, b, c })
    }

    pub fn from_ints(field: FieldSpec, n: usize, a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(
            n,
            field.from_integer(a),
            field.from_integer(b),
            field.from_integer(c),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    /// True when `a, b, c` all lie in `{1, -1}`.
    pub fn is_sign_restricted(&self) -> bool {
        [&self.a, &self.b, &self.c]
            .iter()
            .all(|x| x.is_one() || x.is_minus_one())
    }
}

pub fn build_lemma_matrix(p: &LemmaParams) -> Matrix {
    let f = p.field();
    let n = p.n;
    let mut m = Matrix::zeros(f, n, n);
    let mut put = |i: usize, j: usize, v: Scalar| m.set(i, j, v).expect("in range");
    put(1, 2, -&p.c);
    put(2, 1, p.c.clone());
    for i in 1..=n - 2 {
        put(i, i + 2, f.minus_one());
        put(i + 2, i, f.one());
    }
    put(n - 1, n, p.b.clone());
    put(n, n - 1, p.a.clone());
    m
}

/// Predicted evenness of the family member's rank: `a == -b`.
///
/// Meaningful for sign-restricted parameters. In characteristic two it is
/// always true.
pub fn lemma_parity_predicate(p: &LemmaParams) -> bool {
    p.a == -&p.b
}

/// Reads `(a, b, c)` back from a matrix of the family, or `None` when the
/// matrix does not have the banded form.
pub fn lemma_form(m: &Matrix) -> Option<LemmaParams> {
    let n = m.rows();
    if !m.is_square() || n < 3 {
        return None;
    }
    let f = m.field();
    let c = m.entry(2, 1).clone();
    let b = m.entry(n - 1, n).clone();
    let a = m.entry(n, n - 1).clone();
    let params = LemmaParams::new(n, a, b, c).ok()?;
    let expected = build_lemma_matrix(&params);
    (expected == *m && f == params.field()).then_some(params)
}

/// One step of the family's Schur recursion: the complement on `{1, 2}` of a
/// member of size `n >= 5` is a member of size `n - 2` with the same `a, b`
/// and `c' = -1/c`.
pub fn schur_reduce_step(m: &Matrix) -> Result<Matrix> {
    let params = lemma_form(m).ok_or_else(|| {
        Error::StructureViolation("input is not a member of the lemma family".into())
    })?;
    if params.n < 5 {
        return Err(Error::StructureViolation(format!(
            "reduction needs n >= 5, got {}",
            params.n
        )));
    }
    let reduced = m.schur_complement(&IndexSet::full(2))?;
    let got = lemma_form(&reduced).ok_or_else(|| {
        Error::StructureViolation("Schur complement left the lemma family".into())
    })?;
    let expected_c = -params.c.inv()?;
    if got.a != params.a || got.b != params.b || got.c != expected_c {
        return Err(Error::StructureViolation(format!(
            "reduced parameters (a, b, c) = ({}, {}, {}), expected ({}, {}, {})",
            got.a, got.b, got.c, params.a, params.b, expected_c
        )));
    }
    debug_assert_eq!(got.c, -reduced.entry(1, 2));
    Ok(reduced)
}
