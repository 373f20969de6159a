//! Brute-force decision of "every principal submatrix has even rank".
//!
//! This is the trusted baseline the recognizer is checked against, so it
//! deliberately computes every submatrix rank from scratch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, Matrix, RankKernel};

/// Default ceiling on `n` for exhaustive enumeration (2^24 - 1 subsets).
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

/// An index set whose principal submatrix has odd rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddWitness {
    pub indices: IndexSet,
    pub observed_rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvenRankOutcome {
    AllEven,
    Odd(OddWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenRankVerdict {
    pub outcome: EvenRankOutcome,
    pub mode: SearchMode,
    /// Number of nonempty index sets whose rank was computed.
    pub checked: u64,
}

impl EvenRankVerdict {
    pub fn is_all_even(&self) -> bool {
        self.outcome == EvenRankOutcome::AllEven
    }

    pub fn witness(&self) -> Option<&OddWitness> {
        match &self.outcome {
            EvenRankOutcome::Odd(w) => Some(w),
            EvenRankOutcome::AllEven => None,
        }
    }
}

/// Exhaustive/sampled checker with a configurable size guard.
#[derive(Clone, Copy, Debug)]
pub struct EvenRankChecker {
    pub exhaustive_limit: usize,
}

impl Default for EvenRankChecker {
    fn default() -> Self {
        EvenRankChecker {
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

impl EvenRankChecker {
    pub fn check(&self, m: &Matrix, mode: SearchMode) -> Result<EvenRankVerdict> {
        let n = m.require_square()?;
        let kernel = RankKernel::new(m);
        match mode {
            SearchMode::Exhaustive => {
                if n > self.exhaustive_limit {
                    return Err(Error::TooLarge {
                        n,
                        limit: self.exhaustive_limit,
                    });
                }
                let mut checked = 0;
                for size in 1..=n {
                    let mut combo = Combinations::new(n, size);
                    while let Some(idx) = combo.next_combination() {
                        checked += 1;
                        let r = kernel.principal_rank(idx);
                        if r % 2 == 1 {
                            return Ok(odd(idx, r, mode, checked));
                        }
                    }
                }
                Ok(EvenRankVerdict {
                    outcome: EvenRankOutcome::AllEven,
                    mode,
                    checked,
                })
            }
            SearchMode::Sampled { trials, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut checked = 0;
                if n > 0 {
                    let mut idx = Vec::with_capacity(n);
                    for _ in 0..trials {
                        random_nonempty_subset(&mut rng, n, &mut idx);
                        checked += 1;
                        let r = kernel.principal_rank(&idx);
                        if r % 2 == 1 {
                            return Ok(odd(&idx, r, mode, checked));
                        }
                    }
                }
                Ok(EvenRankVerdict {
                    outcome: EvenRankOutcome::AllEven,
                    mode,
                    checked,
                })
            }
        }
    }
}

fn odd(idx: &[usize], rank: usize, mode: SearchMode, checked: u64) -> EvenRankVerdict {
    let indices = IndexSet::new(idx.iter().map(|i| i + 1).collect()).expect("increasing");
    EvenRankVerdict {
        outcome: EvenRankOutcome::Odd(OddWitness {
            indices,
            observed_rank: rank,
        }),
        mode,
        checked,
    }
}

fn random_nonempty_subset(rng: &mut ChaCha8Rng, n: usize, out: &mut Vec<usize>) {
    loop {
        out.clear();
        out.extend((0..n).filter(|_| rng.gen::<bool>()));
        if !out.is_empty() {
            return;
        }
    }
}

/// Checks every nonempty principal submatrix (or a seeded sample of them)
/// for odd rank. Exhaustive mode visits index sets by increasing size and
/// lexicographically within a size, so the reported witness is the first odd
/// set in that order.
pub fn check_all_principal_even(m: &Matrix, mode: SearchMode) -> Result<EvenRankVerdict> {
    EvenRankChecker::default().check(m, mode)
}

/// Re-checks a witness: its submatrix rank must be odd and match the claim.
pub fn verify_witness(m: &Matrix, w: &OddWitness) -> Result<bool> {
    let sub = m.principal_submatrix(&w.indices)?;
    let r = sub.rank();
    Ok(r % 2 == 1 && r == w.observed_rank)
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    fn next_combination(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if !self.started {
            self.started = true;
            return (k <= self.n).then_some(&self.idx[..]);
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx[..]);
            }
        }
        None
    }
}
