//! Veronese gradings, the lattice bases of the Veronese and principal minor
//! lattices, and the generator sets of `I_n`, `J_n` and `J_{d,n}`.
//!
//! Indices are 1-based throughout. Variables `x_ij` of the second Veronese
//! ring are identified with pairs `i ≤ j` and ordered lexicographically:
//! `x11, x12, …, x1n, x22, …, xnn`. That order is the column order of
//! [`veronese_matrix`] for `d = 2` and the coordinate order of every exponent
//! and lattice vector in the crate.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::fibers::MultiDegree;
use crate::poly::SparsePoly;

/// Largest supported matrix size.
pub const MAX_N: usize = 8;
/// Largest supported value of `d * n` for higher Veronese gradings.
pub const MAX_DN: usize = 24;

/// `binom(n, 2)`.
pub fn c(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of variables `c_{n+1}` of the second Veronese ring.
pub fn num_vars(n: usize) -> usize {
    c(n + 1)
}

pub fn check_size(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::SizeCapExceeded {
            what: format!("n = {n}"),
            limit: MAX_N,
        });
    }
    Ok(())
}

/// Unordered pair `{i, j}` stored as `i ≤ j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairIndex {
    i: usize,
    j: usize,
}

impl PairIndex {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1, "indices are 1-based");
        PairIndex {
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }

    /// Position of `x_ij` in the lexicographic variable order for size `n`.
    pub fn position(self, n: usize) -> usize {
        debug_assert!(self.j <= n);
        // rows 1..i-1 contribute n, n-1, ..., n-i+2 variables
        let before = (self.i - 1) * n - c(self.i - 1);
        before + (self.j - self.i)
    }

    pub fn from_position(n: usize, pos: usize) -> Self {
        pairs(n)[pos]
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i, self.j)
    }
}

/// All pairs `i ≤ j` in `[n]`, in variable order.
pub fn pairs(n: usize) -> Vec<PairIndex> {
    (1..=n)
        .flat_map(|i| (i..=n).map(move |j| PairIndex { i, j }))
        .collect()
}

/// Off-diagonal pairs `i < j` in `[m]`, lexicographic.
pub fn off_diagonal_pairs(m: usize) -> Vec<(usize, usize)> {
    (1..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
        .collect()
}

/// The grading matrix `V_{d,n}`: one column per weight-`d` multiset on `[n]`,
/// in lexicographic order of the sorted multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingMatrix {
    d: usize,
    n: usize,
    matrix: IntMatrix,
    column_index: Vec<Vec<usize>>,
    weights: Vec<Vec<u32>>,
}

impl GradingMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Multiset (sorted, 1-based) labelling each column.
    pub fn column_index(&self) -> &[Vec<usize>] {
        &self.column_index
    }

    pub fn num_columns(&self) -> usize {
        self.column_index.len()
    }

    /// Column `k` as a weight vector of length `n`.
    pub fn column(&self, k: usize) -> &[u32] {
        &self.weights[k]
    }

    pub fn position_of(&self, multiset: &[usize]) -> Option<usize> {
        self.column_index.iter().position(|m| m == multiset)
    }

    /// `V · u` for a nonnegative exponent vector over the columns.
    pub fn apply(&self, u: &[u32]) -> Vec<u32> {
        assert_eq!(u.len(), self.num_columns());
        let mut b = vec![0; self.n];
        for (k, &e) in u.iter().enumerate() {
            if e > 0 {
                for (bi, w) in b.iter_mut().zip(&self.weights[k]) {
                    *bi += w * e;
                }
            }
        }
        b
    }
}

/// Builds `V_{d,n}`.
pub fn veronese_matrix(d: usize, n: usize) -> Result<GradingMatrix> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "grading needs d ≥ 1 and n ≥ 1, got d = {d}, n = {n}"
        )));
    }
    check_size(n)?;
    if d * n > MAX_DN {
        return Err(Error::SizeCapExceeded {
            what: format!("d * n = {}", d * n),
            limit: MAX_DN,
        });
    }
    let column_index: Vec<Vec<usize>> = (1..=n).combinations_with_replacement(d).collect();
    let weights: Vec<Vec<u32>> = column_index
        .iter()
        .map(|ms| {
            let mut w = vec![0u32; n];
            for &i in ms {
                w[i - 1] += 1;
            }
            w
        })
        .collect();
    let mut matrix = IntMatrix::zeros(n, weights.len());
    for (k, w) in weights.iter().enumerate() {
        for (i, &x) in w.iter().enumerate() {
            matrix[(i, k)] = x.into();
        }
    }
    Ok(GradingMatrix {
        d,
        n,
        matrix,
        column_index,
        weights,
    })
}

/// Exponent vector of a monomial in the `x_ij`, viewed as an upper
/// triangular nonnegative integer matrix. Ordering is lexicographic on the
/// exponent vector in variable order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentMatrix {
    n: usize,
    exps: Vec<u32>,
}

impl ExponentMatrix {
    /// The empty monomial.
    pub fn one(n: usize) -> Self {
        ExponentMatrix {
            n,
            exps: vec![0; num_vars(n)],
        }
    }

    pub fn from_exponents(n: usize, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), num_vars(n), "exponent vector length");
        ExponentMatrix { n, exps }
    }

    /// Monomial from `(i, j, exponent)` triples; repeated pairs accumulate.
    pub fn from_pairs(n: usize, entries: &[(usize, usize, u32)]) -> Self {
        let mut m = Self::one(n);
        for &(i, j, e) in entries {
            m.exps[PairIndex::new(i, j).position(n)] += e;
        }
        m
    }

    /// The single variable `x_ij`.
    pub fn var(n: usize, i: usize, j: usize) -> Self {
        Self::from_pairs(n, &[(i, j, 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.exps[PairIndex::new(i, j).position(self.n)]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Veronese degree: how often each index occurs.
    pub fn degree(&self) -> MultiDegree {
        let mut b = vec![0u32; self.n];
        for (p, &e) in pairs(self.n).iter().zip(&self.exps) {
            b[p.i - 1] += e;
            b[p.j - 1] += e;
        }
        MultiDegree::new(b)
    }

    pub fn mul(&self, other: &ExponentMatrix) -> ExponentMatrix {
        assert_eq!(self.n, other.n, "monomials of different size");
        ExponentMatrix {
            n: self.n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ExponentMatrix {
        ExponentMatrix {
            n: self.n,
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// `self + v` if the result stays nonnegative.
    pub fn checked_add(&self, v: &LatticeVector) -> Option<ExponentMatrix> {
        assert_eq!(self.n, v.n);
        let exps = self
            .exps
            .iter()
            .zip(&v.entries)
            .map(|(&a, &b)| u32::try_from(i64::from(a) + b).ok())
            .collect::<Option<Vec<u32>>>()?;
        Some(ExponentMatrix { n: self.n, exps })
    }

    /// `self - other` as a lattice vector.
    pub fn difference(&self, other: &ExponentMatrix) -> LatticeVector {
        assert_eq!(self.n, other.n);
        LatticeVector {
            n: self.n,
            entries: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| i64::from(a) - i64::from(b))
                .collect(),
        }
    }
}

/// Integer vector in `ℤ^{c_{n+1}}`, indexed by pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    n: usize,
    entries: Vec<i64>,
}

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector {
            n,
            entries: vec![0; num_vars(n)],
        }
    }

    pub fn from_entries(n: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), num_vars(n));
        LatticeVector { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[PairIndex::new(i, j).position(self.n)]
    }

    /// Adds `k` times the unit vector `e_ij`.
    pub fn add_unit(&mut self, i: usize, j: usize, k: i64) {
        self.entries[PairIndex::new(i, j).position(self.n)] += k;
    }

    pub fn scaled(&self, k: i64) -> LatticeVector {
        LatticeVector {
            n: self.n,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn negated(&self) -> LatticeVector {
        self.scaled(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn positive_part(&self) -> ExponentMatrix {
        ExponentMatrix {
            n: self.n,
            exps: self.entries.iter().map(|&x| x.max(0) as u32).collect(),
        }
    }

    pub fn negative_part(&self) -> ExponentMatrix {
        ExponentMatrix {
            n: self.n,
            exps: self.entries.iter().map(|&x| (-x).max(0) as u32).collect(),
        }
    }

    /// The binomial `x^{u+} - x^{u-}`.
    pub fn binomial(&self) -> SparsePoly {
        let mut p = SparsePoly::monomial(self.positive_part(), BigRational::one());
        p.add_term(self.negative_part(), -BigRational::one());
        p
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `[ij|kl] = e_ik + e_jl - e_il - e_jk`, with coinciding pairs accumulating.
pub fn bracket(i: usize, j: usize, k: usize, l: usize, n: usize) -> LatticeVector {
    for x in [i, j, k, l] {
        assert!((1..=n).contains(&x), "index {x} outside [1, {n}]");
    }
    let mut v = LatticeVector::zero(n);
    v.add_unit(i, k, 1);
    v.add_unit(j, l, 1);
    v.add_unit(i, l, -1);
    v.add_unit(j, k, -1);
    v
}

/// Matrix whose columns are the given lattice vectors.
pub fn lattice_matrix(n: usize, vectors: &[LatticeVector]) -> IntMatrix {
    let cols: Vec<Vec<i64>> = vectors.iter().map(|v| v.entries.clone()).collect();
    IntMatrix::from_columns(num_vars(n), &cols)
}

/// Lattice basis `{[in|jn] : i ≤ j ∈ [n-1]}` of the Veronese lattice.
pub fn basis_b(n: usize) -> Vec<LatticeVector> {
    assert!(n >= 2, "basis_b needs n ≥ 2");
    (1..n)
        .flat_map(|i| (i..n).map(move |j| bracket(i, n, j, n, n)))
        .collect()
}

/// Basis `{2[in|jn] : i < j ∈ [n-1]} ∪ {[in|in] : i ∈ [n-1]}` of the
/// principal minor lattice.
pub fn basis_bprime(n: usize) -> Vec<LatticeVector> {
    assert!(n >= 2, "basis_bprime needs n ≥ 2");
    let doubled = off_diagonal_pairs(n - 1)
        .into_iter()
        .map(|(i, j)| bracket(i, n, j, n, n).scaled(2));
    let diagonal = (1..n).map(|i| bracket(i, n, i, n, n));
    doubled.chain(diagonal).collect()
}

/// Exponent vectors `[ij|ij]`, `i < j ∈ [n]`, of the principal 2-minors.
pub fn principal_minor_moves(n: usize) -> Vec<LatticeVector> {
    off_diagonal_pairs(n)
        .into_iter()
        .map(|(i, j)| bracket(i, j, i, j, n))
        .collect()
}

/// `x_ii x_jj - x_ij^2` for `i < j ∈ [n]`.
pub fn principal_minor_gens(n: usize) -> Vec<SparsePoly> {
    assert!(n >= 2, "principal_minor_gens needs n ≥ 2");
    principal_minor_moves(n).iter().map(LatticeVector::binomial).collect()
}

/// All nonzero 2-minors of the generic symmetric matrix, one per ± pair,
/// signed so that the lex-leading monomial has coefficient +1.
pub fn veronese_minor_gens(n: usize) -> Vec<SparsePoly> {
    assert!(n >= 2, "veronese_minor_gens needs n ≥ 2");
    let two_sets = off_diagonal_pairs(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a, &(i, j)) in two_sets.iter().enumerate() {
        for &(k, l) in &two_sets[a..] {
            let v = bracket(i, j, k, l, n);
            if v.is_zero() {
                continue;
            }
            let canonical = if v.positive_part() > v.negative_part() {
                v
            } else {
                v.negated()
            };
            if seen.insert(canonical.clone()) {
                out.push(canonical.binomial());
            }
        }
    }
    out
}

/// A generator `f_v = x_v^d - ∏ x_{d e_i}^{v_i}` of `J_{d,n}`, with exponents
/// over the columns of `V_{d,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherBinomial {
    pub column: Vec<usize>,
    pub head: Vec<u32>,
    pub tail: Vec<u32>,
}

impl HigherBinomial {
    pub fn exponent_vector(&self) -> Vec<i64> {
        self.head
            .iter()
            .zip(&self.tail)
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect()
    }
}

/// Generators of the complete intersection `J_{d,n}`, one per column of
/// `V_{d,n}` that is not a multiple of a unit vector.
pub fn higher_gens(d: usize, n: usize) -> Result<Vec<HigherBinomial>> {
    if d < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "higher Veronese generators need d ≥ 2 and n ≥ 2, got d = {d}, n = {n}"
        )));
    }
    let v = veronese_matrix(d, n)?;
    let pure: Vec<usize> = (1..=n)
        .map(|i| v.position_of(&vec![i; d]).expect("pure column"))
        .collect();
    let mut out = Vec::new();
    for (k, ms) in v.column_index().iter().enumerate() {
        if pure.contains(&k) {
            continue;
        }
        let mut head = vec![0; v.num_columns()];
        head[k] = d as u32;
        let mut tail = vec![0; v.num_columns()];
        for (i, &w) in v.column(k).iter().enumerate() {
            tail[pure[i]] += w;
        }
        out.push(HigherBinomial {
            column: ms.clone(),
            head,
            tail,
        });
    }
    Ok(out)
}
