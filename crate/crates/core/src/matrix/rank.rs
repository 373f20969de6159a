//! Exact rank of arbitrary row/column selections of a matrix.
//!
//! The matrix is converted once into a compact form: residues for GF(p),
//! and for the rationals, integers obtained by scaling each row by the lcm
//! of its denominators (row scaling preserves the rank of every submatrix
//! that keeps whole rows). Rational ranks are then computed with
//! fraction-free (Bareiss) elimination in `i128`, falling back to `BigInt`
//! when an intermediate minor overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::field::{abs_bits, denominator_lcm, inv_mod, FieldSpec, Scalar};

use super::Matrix;

#[derive(Clone, Debug)]
enum Compact {
    Modular { p: u64, data: Vec<u64> },
    Integer { data: Vec<i128> },
    Big { data: Vec<BigInt> },
}

#[derive(Clone, Debug)]
pub(crate) struct RankKernel {
    cols: usize,
    compact: Compact,
}

impl RankKernel {
    pub(crate) fn new(m: &Matrix) -> Self {
        let cols = m.cols();
        let compact = match m.field() {
            FieldSpec::Prime(p) => Compact::Modular {
                p: p as u64,
                data: m
                    .entries()
                    .iter()
                    .map(|s| match s {
                        Scalar::Modular { value, .. } => *value as u64,
                        Scalar::Rational(_) => unreachable!("matrix entries share one field"),
                    })
                    .collect(),
            },
            FieldSpec::Rationals => {
                let mut big = Vec::with_capacity(m.entries().len());
                for r in 0..m.rows() {
                    let row: Vec<_> = m.entries()[r * cols..(r + 1) * cols]
                        .iter()
                        .map(|s| match s {
                            Scalar::Rational(q) => q,
                            Scalar::Modular { .. } => unreachable!("matrix entries share one field"),
                        })
                        .collect();
                    let lcm = denominator_lcm(row.iter().copied());
                    big.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
                }
                if big.iter().all(|x| abs_bits(x) <= 62) {
                    Compact::Integer {
                        data: big.iter().map(|x| x.to_i128().unwrap()).collect(),
                    }
                } else {
                    Compact::Big { data: big }
                }
            }
        };
        RankKernel { cols, compact }
    }

    /// Rank of the submatrix on the given 0-based rows and columns.
    pub(crate) fn rank_of(&self, rows: &[usize], cols: &[usize]) -> usize {
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        match &self.compact {
            Compact::Modular { p, data } => {
                let mut buf = self.extract(data, rows, cols);
                modular_rank(&mut buf, rows.len(), cols.len(), *p)
            }
            Compact::Integer { data } => {
                let mut buf = self.extract(data, rows, cols);
                match bareiss_rank_i128(&mut buf, rows.len(), cols.len()) {
                    Some(r) => r,
                    None => {
                        let mut big: Vec<BigInt> = self
                            .extract(data, rows, cols)
                            .into_iter()
                            .map(BigInt::from)
                            .collect();
                        bareiss_rank_big(&mut big, rows.len(), cols.len())
                    }
                }
            }
            Compact::Big { data } => {
                let mut buf = self.extract(data, rows, cols);
                bareiss_rank_big(&mut buf, rows.len(), cols.len())
            }
        }
    }

    /// Rank of the principal submatrix on 0-based `indices`.
    pub(crate) fn principal_rank(&self, indices: &[usize]) -> usize {
        self.rank_of(indices, indices)
    }

    fn extract<T: Clone>(&self, data: &[T], rows: &[usize], cols: &[usize]) -> Vec<T> {
        let mut buf = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            let base = r * self.cols;
            buf.extend(cols.iter().map(|&c| data[base + c].clone()));
        }
        buf
    }
}

fn modular_rank(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(a[rank * cols + c], p);
        for r in rank + 1..rows {
            let factor = a[r * cols + c] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let sub = factor * a[rank * cols + j] % p;
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Bareiss elimination; `None` if an intermediate value overflows.
fn bareiss_rank_i128(a: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c];
        for r in rank + 1..rows {
            let lead = a[r * cols + c];
            for j in c + 1..cols {
                let x = pivot.checked_mul(a[r * cols + j])?;
                let y = lead.checked_mul(a[rank * cols + j])?;
                let num = x.checked_sub(y)?;
                debug_assert_eq!(num % prev, 0);
                a[r * cols + j] = num / prev;
            }
            a[r * cols + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(a: &mut [BigInt], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                a.swap(piv * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + c].clone();
            for j in c + 1..cols {
                let num = &pivot * &a[r * cols + j] - &lead * &a[rank * cols + j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[r * cols + j] = q;
            }
            a[r * cols + c] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
