//! Independent oracles and random generators shared by the integration
//! tests. Nothing here calls into the library's elimination or recognizer
//! code paths.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use skewrank::{FieldSpec, IndexSet, Matrix, Scalar};

pub const FIELDS: [FieldSpec; 3] = [FieldSpec::Prime(3), FieldSpec::Prime(5), FieldSpec::Rationals];

pub fn rows_of(m: &Matrix) -> Vec<Vec<Scalar>> {
    (1..=m.rows())
        .map(|i| (1..=m.cols()).map(|j| m.entry(i, j).clone()).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(field: FieldSpec, a: &[Vec<Scalar>]) -> Scalar {
    let n = a.len();
    if n == 0 {
        return field.one();
    }
    let mut acc = field.zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * &det_cofactor(field, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Rank as the largest order of a nonzero minor. Only for tiny matrices.
pub fn rank_by_minors(m: &Matrix) -> usize {
    let a = rows_of(m);
    let (r, c) = (m.rows(), m.cols());
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<Scalar>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect())
                    .collect();
                if !det_cofactor(m.field(), &sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|b| mask >> b & 1 == 1).collect())
        .collect()
}

/// Rank by textbook Gaussian elimination over field scalars.
pub fn rank_gauss(m: &Matrix) -> usize {
    let mut a = rows_of(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let inv = a[rank][c].inv().unwrap();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] * &inv;
                for j in c..cols {
                    let v = &a[r][j] - &(&f * &a[rank][j]);
                    a[r][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn principal_rank_gauss(m: &Matrix, idx: &IndexSet) -> usize {
    rank_gauss(&m.principal_submatrix(idx).unwrap())
}

/// Entries of a {0, ±1} matrix as small integers; panics on other entries.
pub fn sign_entries(m: &Matrix) -> Vec<Vec<i8>> {
    rows_of(m)
        .iter()
        .map(|row| row.iter().map(|x| x.as_sign().expect("{0,±1} entry")).collect())
        .collect()
}

/// Tries all 2^(2n) row/column sign vectors. Characteristic 2 is handled by
/// comparing residues mod 2.
pub fn sign_scalable_brute(m: &Matrix) -> bool {
    let a = sign_entries(m);
    let n = a.len();
    let char_two = m.field().is_char_two();
    let eq = |x: i8, y: i8| if char_two { (x - y) % 2 == 0 } else { x == y };
    for d in 0u32..1 << n {
        for e in 0u32..1 << n {
            let sd = |i: usize| if d >> i & 1 == 1 { -1i8 } else { 1 };
            let se = |i: usize| if e >> i & 1 == 1 { -1i8 } else { 1 };
            let ok = (0..n).all(|i| {
                a[i][i] == 0
                    && (i + 1..n).all(|j| {
                        eq(sd(i) * a[i][j] * se(j), -(sd(j) * a[j][i] * se(i)))
                    })
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Every nonempty principal submatrix has even rank, by Gaussian elimination
/// on each of the 2^n - 1 index sets.
pub fn all_principal_even_gauss(m: &Matrix) -> bool {
    let n = m.rows();
    (1u64..1 << n).all(|mask| principal_rank_gauss(m, &IndexSet::from_mask(mask)) % 2 == 0)
}

pub fn random_sign<R: Rng>(rng: &mut R) -> i64 {
    if rng.gen::<bool>() {
        1
    } else {
        -1
    }
}

/// Uniform entries from {0, 1, -1}.
pub fn uniform_sign_matrix<R: Rng>(rng: &mut R, field: FieldSpec, n: usize) -> Matrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect())
        .collect();
    Matrix::from_ints(field, &rows).unwrap()
}

/// Skew-symmetric {0, ±1} matrix with the given density of nonzero pairs.
pub fn skew_sign_rows<R: Rng>(rng: &mut R, n: usize, density: f64) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let s = random_sign(rng);
                rows[i][j] = s;
                rows[j][i] = -s;
            }
        }
    }
    rows
}

/// A random skew {0, ±1} matrix hit by random row and column sign flips:
/// sign-scalable by construction.
pub fn scaled_skew_rows<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let density = rng.gen_range(0.15..0.9);
    let mut rows = skew_sign_rows(rng, n, density);
    let d: Vec<i64> = (0..n).map(|_| random_sign(rng)).collect();
    let e: Vec<i64> = (0..n).map(|_| random_sign(rng)).collect();
    for i in 0..n {
        for j in 0..n {
            rows[i][j] *= d[i] * e[j];
        }
    }
    rows
}

/// Mixture used by the equivalence tests: a third uniform, a third
/// sign-scalable, a third sign-scalable with one or two entries negated
/// (support stays symmetric, so rejections exercise witness extraction).
pub fn mixed_sign_matrix<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, kind: usize) -> Matrix {
    match kind % 3 {
        0 => uniform_sign_matrix(rng, field, n),
        1 => Matrix::from_ints(field, &scaled_skew_rows(rng, n)).unwrap(),
        _ => {
            let mut rows = scaled_skew_rows(rng, n);
            let nonzero: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| rows[i][j] != 0)
                .collect();
            let flips = rng.gen_range(1..=2);
            for &(i, j) in nonzero.choose_multiple(rng, flips) {
                rows[i][j] = -rows[i][j];
            }
            Matrix::from_ints(field, &rows).unwrap()
        }
    }
}

/// Uniformly random field element; rationals are small fractions.
pub fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_integer(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => {
            let num = rng.gen_range(-9..=9);
            let den = *[1, 1, 1, 2, 3, 7].choose(rng).unwrap();
            field.from_integer(num) / field.from_integer(den)
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols).map(|_| random_scalar(rng, field)).collect();
    Matrix::from_scalars(field, rows, cols, entries).unwrap()
}

/// A random matrix of rank at most `r`, as a product of `n x r` and `r x n`
/// factors.
pub fn random_low_rank<R: Rng>(rng: &mut R, field: FieldSpec, n: usize, r: usize) -> Matrix {
    let left = random_matrix(rng, field, n, r);
    let right = random_matrix(rng, field, r, n);
    let mut out = Matrix::zeros(field, n, n);
    for i in 1..=n {
        for j in 1..=n {
            let mut acc = field.zero();
            for k in 1..=r {
                acc = &acc + &(left.entry(i, k) * right.entry(k, j));
            }
            out.set(i, j, acc).unwrap();
        }
    }
    out
}

/// Random skew-symmetric matrix: antisymmetrized random strictly-upper part.
pub fn random_skew<R: Rng>(rng: &mut R, field: FieldSpec, n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in 1..=n {
        for j in i + 1..=n {
            let x = random_scalar(rng, field);
            m.set(j, i, -&x).unwrap();
            m.set(i, j, x).unwrap();
        }
    }
    m
}

pub fn random_nonempty_subset<R: Rng>(rng: &mut R, n: usize) -> IndexSet {
    loop {
        let v: Vec<usize> = (1..=n).filter(|_| rng.gen::<bool>()).collect();
        if !v.is_empty() {
            return IndexSet::new(v).unwrap();
        }
    }
}

/// All 3^(n*n) {0, ±1} matrices of size n, in a fixed order.
pub fn all_sign_matrices(field: FieldSpec, n: usize) -> impl Iterator<Item = Matrix> {
    let cells = n * n;
    let total = 3u64.pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut rows = vec![vec![0i64; n]; n];
        for cell in 0..cells {
            rows[cell / n][cell % n] = (code % 3) as i64 - 1;
            code /= 3;
        }
        Matrix::from_ints(field, &rows).unwrap()
    })
}

/// Entrywise skew-symmetry with a zero diagonal, without the library check.
pub fn is_skew_independent(m: &Matrix) -> bool {
    let n = m.rows();
    m.cols() == n
        && (1..=n).all(|i| {
            m.entry(i, i).is_zero()
                && (i + 1..=n).all(|j| (m.entry(i, j) + m.entry(j, i)).is_zero())
        })
}

/// `diag(d) M diag(e)` computed entrywise from the certificate's signs.
pub fn apply_signs(m: &Matrix, cert: &skewrank::SignCertificate) -> Matrix {
    let field = m.field();
    let n = m.rows();
    let mut out = Matrix::zeros(field, n, n);
    for i in 1..=n {
        for j in 1..=n {
            let s = cert.row_signs[i - 1].as_i8() * cert.col_signs[j - 1].as_i8();
            out.set(i, j, m.entry(i, j) * &field.from_integer(s as i64)).unwrap();
        }
    }
    out
}
