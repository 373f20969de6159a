//! Recognition of {0, 1, -1} matrices that become skew-symmetric after
//! multiplying some rows and columns by -1.
//!
//! The pipeline is constructive in both directions:
//!
//! 1. [`precheck`] rejects nonzero diagonals and asymmetric support with a
//!    witness of size one or two.
//! 2. [`m_ordering`] reorders the indices so that, inside each connected
//!    component of the support graph, `m(i)` (the first index adjacent to
//!    `i`) is nondecreasing and smaller than `i` for every non-root `i`.
//! 3. [`sign_normalize`] flips rows and columns so that
//!    `M[i][m(i)] = 1` and `M[m(i)][i] = -1` for every non-root `i`.
//! 4. If the result is skew-symmetric the flips are the certificate.
//!    Otherwise the lexicographically first violation `(k, l)` seeds the
//!    alternating chain `k, l, m(k), m(l), m(m(k)), ...`, and
//!    [`extract_witness`] cuts from it an index set inducing a member of the
//!    lemma family with `a = b`, which has odd rank.
//!
//! [`recognize_general_scaling`] answers the same question for arbitrary
//! nonzero scalars by propagating row/column ratios along a spanning forest.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::evenrank::{verify_witness, OddWitness};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{IndexSet, Matrix, Permutation, RankKernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_flip(flip: bool) -> Self {
        if flip {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_scalar(self, field: FieldSpec) -> Scalar {
        field.from_integer(self.as_i8() as i64)
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Row and column scalings to be applied to a matrix: `diag(row) M diag(col)`.
pub trait Certificate {
    fn scalings(&self, field: FieldSpec) -> (Vec<Scalar>, Vec<Scalar>);

    fn apply(&self, m: &Matrix) -> Result<Matrix> {
        let (rows, cols) = self.scalings(m.field());
        m.scale(&rows, &cols)
    }

    /// Applies the scalings and checks the result is skew-symmetric.
    fn verify(&self, m: &Matrix) -> Result<bool> {
        Ok(self.apply(m)?.is_skew_symmetric())
    }
}

/// Per-row and per-column signs, indexed by original position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignCertificate {
    pub row_signs: Vec<Sign>,
    pub col_signs: Vec<Sign>,
}

impl SignCertificate {
    pub fn identity(n: usize) -> Self {
        SignCertificate {
            row_signs: vec![Sign::Plus; n],
            col_signs: vec![Sign::Plus; n],
        }
    }

    /// The certificate flipping the given 1-based rows and columns.
    pub fn flipping(n: usize, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let mut cert = Self::identity(n);
        for (targets, signs) in [(rows, &mut cert.row_signs), (cols, &mut cert.col_signs)] {
            for &i in targets {
                if i == 0 || i > n {
                    return Err(Error::IndexOutOfRange { index: i, dim: n });
                }
                signs[i - 1] = Sign::Minus;
            }
        }
        Ok(cert)
    }
}

impl Certificate for SignCertificate {
    fn scalings(&self, field: FieldSpec) -> (Vec<Scalar>, Vec<Scalar>) {
        let conv = |v: &[Sign]| v.iter().map(|s| s.to_scalar(field)).collect();
        (conv(&self.row_signs), conv(&self.col_signs))
    }
}

/// Arbitrary nonzero row and column scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingCertificate {
    pub row_scalars: Vec<Scalar>,
    pub col_scalars: Vec<Scalar>,
}

impl Certificate for ScalingCertificate {
    fn scalings(&self, _field: FieldSpec) -> (Vec<Scalar>, Vec<Scalar>) {
        (self.row_scalars.clone(), self.col_scalars.clone())
    }
}

pub fn apply_certificate<C: Certificate + ?Sized>(m: &Matrix, cert: &C) -> Result<Matrix> {
    cert.apply(m)
}

/// Undirected graph on `{1..n}` with an edge wherever `M[i][j] != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportGraph {
    adj: Vec<Vec<usize>>,
}

impl SupportGraph {
    /// Assumes symmetric support; only the upper triangle is read.
    fn from_symmetric(m: &Matrix) -> Self {
        let n = m.rows();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if !m.at(i, j).is_zero() {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SupportGraph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Edges `(i, j)` with `i < j`, 1-based, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i + 1, j + 1)));
        }
        out
    }

    /// Sorted 1-based neighbours of 1-based `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.adj[i - 1].iter().map(|j| j + 1).collect()
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.adj[i - 1].is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precheck {
    Support(SupportGraph),
    Odd(OddWitness),
}

fn require_sign_entries(m: &Matrix) -> Result<()> {
    let n = m.cols();
    for (pos, x) in m.entries().iter().enumerate() {
        if !x.is_signed_unit_or_zero() {
            return Err(Error::EntryOutOfRange {
                row: pos / n + 1,
                col: pos % n + 1,
                value: x.to_string(),
            });
        }
    }
    Ok(())
}

/// Necessary conditions for every principal submatrix to have even rank:
/// zero diagonal and symmetric support. A failure yields a witness.
pub fn precheck(m: &Matrix) -> Result<Precheck> {
    let n = m.require_square()?;
    require_sign_entries(m)?;
    if let Some(i) = (0..n).find(|&i| !m.at(i, i).is_zero()) {
        return Ok(Precheck::Odd(OddWitness {
            indices: IndexSet::new(vec![i + 1]).expect("singleton"),
            observed_rank: 1,
        }));
    }
    for i in 0..n {
        for j in i + 1..n {
            if m.at(i, j).is_zero() != m.at(j, i).is_zero() {
                return Ok(Precheck::Odd(OddWitness {
                    indices: IndexSet::new(vec![i + 1, j + 1]).expect("increasing"),
                    observed_rank: 1,
                }));
            }
        }
    }
    Ok(Precheck::Support(SupportGraph::from_symmetric(m)))
}

/// A simultaneous reordering with the m-values it realizes.
///
/// Positions are 1-based indices of the reordered matrix; `m_values[i - 1]`
/// is the smallest position adjacent to position `i`, or `n + 1` for an
/// isolated position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MOrdering {
    permutation: Permutation,
    m_values: Vec<usize>,
    component_roots: Vec<usize>,
}

impl MOrdering {
    /// `π`, with `reordered[i][j] = original[π(i)][π(j)]`.
    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }

    pub fn m_values(&self) -> &[usize] {
        &self.m_values
    }

    pub fn m(&self, pos: usize) -> usize {
        self.m_values[pos - 1]
    }

    /// First position of every non-trivial component, increasing.
    pub fn component_roots(&self) -> &[usize] {
        &self.component_roots
    }

    pub fn is_root(&self, pos: usize) -> bool {
        self.component_roots.binary_search(&pos).is_ok()
    }

    pub fn len(&self) -> usize {
        self.m_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m_values.is_empty()
    }

    /// Checks this ordering against the reordered matrix from scratch:
    /// the m-values, the component layout (contiguous blocks led by their
    /// roots, isolated positions last) and, for non-root positions of each
    /// component, `m(i) < i` with `m` nondecreasing.
    pub fn validate(&self, reordered: &Matrix) -> Result<()> {
        let n = reordered.require_square()?;
        let fail = |msg: String| Err(Error::StructureViolation(msg));
        if self.m_values.len() != n || self.permutation.len() != n {
            return fail("ordering length does not match the matrix".into());
        }
        let m_actual: Vec<usize> = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&j| !reordered.at(j, i).is_zero())
                    .map_or(n + 1, |j| j + 1)
            })
            .collect();
        if m_actual != self.m_values {
            return fail(format!(
                "m-values {:?} differ from the matrix's {:?}",
                self.m_values, m_actual
            ));
        }

        let mut comp = vec![usize::MAX; n];
        let mut roots = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX || m_actual[start] == n + 1 {
                continue;
            }
            roots.push(start + 1);
            let mut queue = VecDeque::from([start]);
            comp[start] = start;
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if comp[v] == usize::MAX && !reordered.at(u, v).is_zero() {
                        comp[v] = start;
                        queue.push_back(v);
                    }
                }
            }
        }
        if roots != self.component_roots {
            return fail(format!(
                "component roots {:?}, expected {:?}",
                self.component_roots, roots
            ));
        }
        let mut seen_isolated = false;
        for i in 0..n {
            let isolated = m_actual[i] == n + 1;
            if seen_isolated && !isolated {
                return fail(format!("position {} follows an isolated position", i + 1));
            }
            seen_isolated |= isolated;
            if i > 0 && !isolated && comp[i] != comp[i - 1] && comp[i] != i {
                return fail(format!("component of position {} is not contiguous", i + 1));
            }
        }
        let mut last: Option<(usize, usize)> = None;
        for i in 0..n {
            let pos = i + 1;
            if m_actual[i] == n + 1 || comp[i] == i {
                last = None;
                continue;
            }
            if m_actual[i] >= pos {
                return fail(format!("m({pos}) = {} is not below {pos}", m_actual[i]));
            }
            if let Some((c, prev)) = last {
                if c == comp[i] && prev > m_actual[i] {
                    return fail(format!("m decreases at position {pos}"));
                }
            }
            last = Some((comp[i], m_actual[i]));
        }
        Ok(())
    }
}

/// Greedy reordering. Each component is opened at its smallest unplaced
/// original index; afterwards the next position goes to the unplaced vertex
/// whose earliest placed neighbour is earliest, ties to the smaller original
/// index. Isolated vertices go last in original order.
///
/// A vertex's key is fixed once finite, since later placements only take
/// larger positions, and the greedy always takes the minimal key, so keys
/// (which become the m-values) are nondecreasing within a component.
pub fn m_ordering(g: &SupportGraph) -> MOrdering {
    let n = g.n();
    let mut position = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    let mut key = vec![usize::MAX; n];

    for start in 0..n {
        if position[start] != 0 || g.adj[start].is_empty() {
            continue;
        }
        let mut next = Some(start);
        while let Some(v) = next {
            order.push(v);
            let pos = order.len();
            position[v] = pos;
            if v == start {
                roots.push(pos);
            }
            for &w in &g.adj[v] {
                if position[w] == 0 && key[w] == usize::MAX {
                    key[w] = pos;
                }
            }
            next = (0..n)
                .filter(|&w| position[w] == 0 && key[w] != usize::MAX)
                .min_by_key(|&w| (key[w], w));
        }
    }
    for v in 0..n {
        if g.adj[v].is_empty() {
            order.push(v);
            position[v] = order.len();
        }
    }

    let m_values = order
        .iter()
        .map(|&v| {
            g.adj[v]
                .iter()
                .map(|&w| position[w])
                .min()
                .unwrap_or(n + 1)
        })
        .collect();
    let permutation =
        Permutation::new(order.iter().map(|v| v + 1).collect()).expect("bijective order");
    MOrdering {
        permutation,
        m_values,
        component_roots: roots,
    }
}

/// Reordered matrix after sign normalization, with the flips applied at
/// each reordered position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub matrix: Matrix,
    pub row_flips: Vec<bool>,
    pub col_flips: Vec<bool>,
}

/// Visits non-root, non-isolated positions `i` in increasing order, flipping
/// row `i` when `M[i][m(i)] = -1` and column `i` when `M[m(i)][i] = 1`. In
/// characteristic two nothing is flipped.
pub fn sign_normalize(reordered: &Matrix, ord: &MOrdering) -> Result<Normalized> {
    let n = reordered.require_square()?;
    if ord.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: ord.len(),
        });
    }
    let mut a = reordered.clone();
    let mut row_flips = vec![false; n];
    let mut col_flips = vec![false; n];
    if reordered.field().is_char_two() {
        return Ok(Normalized {
            matrix: a,
            row_flips,
            col_flips,
        });
    }
    for pos in 1..=n {
        let mi = ord.m(pos);
        if mi > n || ord.is_root(pos) {
            continue;
        }
        let (i, j) = (pos - 1, mi - 1);
        if a.at(i, j).is_minus_one() {
            row_flips[i] = true;
            for c in 0..n {
                let v = -a.at(i, c);
                *a.at_mut(i, c) = v;
            }
        }
        if a.at(j, i).is_one() {
            col_flips[i] = true;
            for r in 0..n {
                let v = -a.at(r, i);
                *a.at_mut(r, i) = v;
            }
        }
    }
    Ok(Normalized {
        matrix: a,
        row_flips,
        col_flips,
    })
}

/// Lexicographically smallest `(k, l)`, `k > l`, with `M[k][l] != -M[l][k]`.
pub fn first_violation(m: &Matrix) -> Option<(usize, usize)> {
    let n = m.rows();
    (0..n)
        .flat_map(|k| (0..k).map(move |l| (k, l)))
        .find(|&(k, l)| *m.at(k, l) != -m.at(l, k))
        .map(|(k, l)| (k + 1, l + 1))
}

/// Builds the alternating chain `k, l, m(k), m(l), ...`, keeps its longest
/// strictly decreasing prefix `s_1 > ... > s_q`, and returns either the whole
/// prefix or, if some `c_t = M[s_{t+1}][s_{t+2}]` is nonzero, the shortest
/// prefix `s_1..s_{t+2}` ending at the first such `t`. Positions refer to the
/// normalized matrix.
pub fn extract_witness(
    normalized: &Matrix,
    ord: &MOrdering,
    k: usize,
    l: usize,
) -> Result<IndexSet> {
    let n = normalized.require_square()?;
    let not_violation = |reason: &str| Error::NotAViolation {
        k,
        l,
        reason: reason.into(),
    };
    if !(1..=n).contains(&k) || !(1..=n).contains(&l) {
        return Err(not_violation("index out of range"));
    }
    if k <= l {
        return Err(not_violation("need k > l"));
    }
    let (mk, ml) = (normalized.entry(k, l), normalized.entry(l, k));
    if mk.is_zero() {
        return Err(not_violation("entry is zero"));
    }
    if *mk == -ml {
        return Err(not_violation("entries are already opposite"));
    }

    let mut chain = vec![k, l];
    loop {
        let q = chain.len();
        let next = ord.m(chain[q - 2]);
        if next < chain[q - 1] {
            chain.push(next);
        } else {
            break;
        }
    }
    let q = chain.len();
    if q < 3 {
        return Err(Error::Internal(format!(
            "decreasing chain from ({k}, {l}) has length {q}; the input was not normalized"
        )));
    }
    // c_t for t = 1..=q-3 reads M[s_{t+1}][s_{t+2}] (chain is 0-based here).
    let cut = (1..=q - 3)
        .find(|&t| !normalized.entry(chain[t], chain[t + 1]).is_zero())
        .map_or(q, |t| t + 2);
    IndexSet::from_unsorted(chain[..cut].to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignVerdict {
    Accept(SignCertificate),
    Reject(OddWitness),
}

impl SignVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, SignVerdict::Accept(_))
    }
}

/// Decides whether `m` (entries in {0, 1, -1}) is skew-symmetric up to
/// multiplying rows and columns by -1. Accepts with a certificate in
/// original coordinates, or rejects with an odd-rank principal index set.
/// Both are re-verified before being returned.
pub fn recognize_sign(m: &Matrix) -> Result<SignVerdict> {
    let n = m.require_square()?;
    let graph = match precheck(m)? {
        Precheck::Odd(w) => return checked_reject(m, w),
        Precheck::Support(g) => g,
    };
    let ord = m_ordering(&graph);
    let reordered = m.permute_simultaneous(ord.permutation())?;
    debug_assert_eq!(ord.validate(&reordered), Ok(()));
    let norm = sign_normalize(&reordered, &ord)?;
    let perm = ord.permutation();

    match first_violation(&norm.matrix) {
        None => {
            let mut cert = SignCertificate::identity(n);
            for pos in 1..=n {
                let orig = perm.image(pos) - 1;
                cert.row_signs[orig] = Sign::from_flip(norm.row_flips[pos - 1]);
                cert.col_signs[orig] = Sign::from_flip(norm.col_flips[pos - 1]);
            }
            if !cert.verify(m)? {
                return Err(Error::Internal(
                    "sign certificate does not produce a skew-symmetric matrix".into(),
                ));
            }
            Ok(SignVerdict::Accept(cert))
        }
        Some((k, l)) => {
            let local = extract_witness(&norm.matrix, &ord, k, l)?;
            let indices = IndexSet::from_unsorted(local.iter().map(|p| perm.image(p)).collect())?;
            let observed_rank =
                RankKernel::new(m).principal_rank(&indices.zero_based());
            checked_reject(
                m,
                OddWitness {
                    indices,
                    observed_rank,
                },
            )
        }
    }
}

fn checked_reject(m: &Matrix, w: OddWitness) -> Result<SignVerdict> {
    if !verify_witness(m, &w)? {
        return Err(Error::Internal(format!(
            "witness {} with claimed rank {} does not have odd rank",
            w.indices, w.observed_rank
        )));
    }
    Ok(SignVerdict::Reject(w))
}

/// Why no nonzero scaling makes the matrix skew-symmetric. Indices 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalingRejection {
    NonzeroDiagonal { index: usize },
    AsymmetricSupport { row: usize, col: usize },
    /// A closed walk through a spanning-forest path plus one extra edge whose
    /// ratio product is not 1.
    InconsistentCycle { cycle: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalingVerdict {
    Accept(ScalingCertificate),
    Reject(ScalingRejection),
}

impl ScalingVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, ScalingVerdict::Accept(_))
    }
}

/// Decides whether `diag(d) M diag(e)` is skew-symmetric for some nonzero
/// `d, e`. Writing `t_i = d_i / e_i`, every edge `{i, j}` of the support
/// graph forces `t_i M[i][j] = -t_j M[j][i]`; `t` is propagated from `t = 1`
/// at each component's smallest index along a BFS forest and every other
/// edge is checked. Accepting certificates use `d = t` and `e = 1`.
pub fn recognize_general_scaling(m: &Matrix) -> Result<ScalingVerdict> {
    let n = m.require_square()?;
    let f = m.field();
    if let Some(i) = (0..n).find(|&i| !m.at(i, i).is_zero()) {
        return Ok(ScalingVerdict::Reject(ScalingRejection::NonzeroDiagonal {
            index: i + 1,
        }));
    }
    for i in 0..n {
        for j in i + 1..n {
            if m.at(i, j).is_zero() != m.at(j, i).is_zero() {
                return Ok(ScalingVerdict::Reject(
                    ScalingRejection::AsymmetricSupport {
                        row: i + 1,
                        col: j + 1,
                    },
                ));
            }
        }
    }
    let graph = SupportGraph::from_symmetric(m);

    let mut t: Vec<Option<Scalar>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if t[root].is_some() {
            continue;
        }
        t[root] = Some(f.one());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let tu = t[u].clone().expect("visited");
            for &v in &graph.adj[u] {
                if t[v].is_none() {
                    // t_v = -t_u M[u][v] / M[v][u]
                    let tv = -(&(&tu * m.at(u, v)) / m.at(v, u));
                    t[v] = Some(tv);
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    let t: Vec<Scalar> = t.into_iter().map(|x| x.expect("all visited")).collect();

    for (i, j) in graph.edges() {
        let (u, v) = (i - 1, j - 1);
        let lhs = &t[u] * m.at(u, v);
        let rhs = &t[v] * m.at(v, u);
        if !(&lhs + &rhs).is_zero() {
            return Ok(ScalingVerdict::Reject(ScalingRejection::InconsistentCycle {
                cycle: fundamental_cycle(&parent, u, v),
            }));
        }
    }

    let cert = ScalingCertificate {
        row_scalars: t,
        col_scalars: vec![f.one(); n],
    };
    if !cert.verify(m)? {
        return Err(Error::Internal(
            "scaling certificate does not produce a skew-symmetric matrix".into(),
        ));
    }
    Ok(ScalingVerdict::Accept(cert))
}

/// Tree path `u -> lca -> v` (1-based); closing it with edge `{v, u}` gives
/// the cycle.
fn fundamental_cycle(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let ancestors = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let up = ancestors(u);
    let vp = ancestors(v);
    let lca = *up
        .iter()
        .find(|x| vp.contains(x))
        .expect("same component");
    let mut cycle: Vec<usize> = up.iter().take_while(|&&x| x != lca).copied().collect();
    cycle.push(lca);
    let back: Vec<usize> = vp.iter().take_while(|&&x| x != lca).copied().collect();
    cycle.extend(back.iter().rev());
    cycle.into_iter().map(|x| x + 1).collect()
}
