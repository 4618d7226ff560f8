//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision entries: `BigInt` for lattice
//! computations (Hermite and Smith normal forms, integer kernels, invariant
//! factors) and `BigRational` for subspace computations over ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have the
    /// same length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        m
    }

    /// Builds a `len × columns.len()` matrix whose columns are the given vectors.
    pub fn from_columns<T: Into<BigInt> + Copy>(len: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut p = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        p[(i, j)] += a * b;
                    }
                }
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let d = factor * s;
                self.entries[target * self.cols + j] -= d;
            }
        }
    }

    /// col[target] -= factor * col[source]
    fn sub_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if !s.is_zero() {
                let d = factor * s;
                self.entries[i * self.cols + target] -= d;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let x = &mut self.entries[r * self.cols + j];
            *x = -std::mem::take(x);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dense matrix of exact rationals, row-major. `BigRational` keeps every
/// entry reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            entries.extend(row);
        }
        RatMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(rows).to_rational()
    }

    /// Matrix with the given vectors as columns; `len` fixes the row count
    /// even when there are no columns.
    pub fn from_columns(len: usize, columns: &[Vec<BigRational>]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigRational>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut p = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        p[(i, j)] += a * b;
                    }
                }
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.entries.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    if a[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &a[(r, j)];
                    a[(i, j)] -= d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut e = SparseEchelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(dense_to_sparse(self.row(i)));
            if e.rank() == self.cols {
                break;
            }
        }
        e.rank()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * m * w = s` with `u`, `w` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub w: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `s`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * m = h`. Pivots are positive and the entries above each pivot lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        let mut has_pivot = false;
        loop {
            let Some(p) = (r..h.rows())
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()))
            else {
                break;
            };
            has_pivot = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for q in r + 1..h.rows() {
                if h[(q, c)].is_zero() {
                    continue;
                }
                let f = h[(q, c)].div_floor(&h[(r, c)]);
                h.sub_row_multiple(q, r, &f);
                u.sub_row_multiple(q, r, &f);
                if !h[(q, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for q in 0..r {
            let f = h[(q, c)].div_floor(&h[(r, c)]);
            h.sub_row_multiple(q, r, &f);
            u.sub_row_multiple(q, r, &f);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form with pivots of minimal absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = &s[(i, t)] / &s[(t, t)];
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = &s[(t, j)] / &s[(t, t)];
                s.sub_col_multiple(j, t, &q);
                w.sub_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // divisibility of the remaining block by the pivot
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, s, w }
}

/// Basis of the integer kernel `{x ∈ ℤ^cols : m x = 0}`, as columns.
pub fn kernel_lattice(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let n = m.cols();
    let mut k = IntMatrix::zeros(n, n - rank);
    for (c, r) in (rank..n).enumerate() {
        for i in 0..n {
            k[(i, c)] = u[(r, i)].clone();
        }
    }
    k
}

/// Coordinates of `vector` in the row basis `basis` (a row-style HNF with
/// no zero rows). Fails when the vector is not an integer combination.
fn coordinates_in_hnf(basis: &IntMatrix, pivots: &[usize], vector: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut residual = vector.to_vec();
    let mut coords = Vec::with_capacity(basis.rows());
    for (k, &p) in pivots.iter().enumerate() {
        let (q, r) = residual[p].div_rem(&basis[(k, p)]);
        if !r.is_zero() {
            return Err(Error::NotInLattice);
        }
        if !q.is_zero() {
            for (j, x) in basis.row(k).iter().enumerate() {
                residual[j] -= &q * x;
            }
        }
        coords.push(q);
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return Err(Error::NotInLattice);
    }
    Ok(coords)
}

/// Invariant factors greater than one of `span(ambient) / span(sub)`, both
/// given by their columns, sorted ascending.
pub fn invariant_factors(sub: &IntMatrix, ambient: &IntMatrix) -> Result<Vec<BigInt>> {
    if sub.rows() != ambient.rows() {
        return Err(Error::InvalidArgument(format!(
            "vectors of length {} and {}",
            sub.rows(),
            ambient.rows()
        )));
    }
    let (h, _) = hermite_normal_form(&ambient.transpose());
    let nonzero: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .collect();
    let rank = nonzero.len();
    let mut basis = IntMatrix::zeros(rank, h.cols());
    let mut pivots = Vec::with_capacity(rank);
    for (k, &i) in nonzero.iter().enumerate() {
        for j in 0..h.cols() {
            basis[(k, j)] = h[(i, j)].clone();
        }
        pivots.push(h.row(i).iter().position(|x| !x.is_zero()).unwrap());
    }

    let mut coords = IntMatrix::zeros(rank, sub.cols());
    for j in 0..sub.cols() {
        let c = coordinates_in_hnf(&basis, &pivots, &sub.column(j))?;
        for (i, x) in c.into_iter().enumerate() {
            coords[(i, j)] = x;
        }
    }
    let snf = smith_normal_form(&coords);
    if snf.rank() < rank {
        return Err(Error::IndexNotFinite);
    }
    Ok(snf
        .diagonal()
        .into_iter()
        .filter(|d| *d > BigInt::one())
        .collect())
}

/// Basis of the right nullspace over ℚ, as columns of a `cols × k` matrix.
pub fn rational_nullspace(m: &RatMatrix) -> RatMatrix {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut n = RatMatrix::zeros(m.cols(), free.len());
    for (k, &f) in free.iter().enumerate() {
        n[(f, k)] = BigRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            let x = &r[(row, f)];
            if !x.is_zero() {
                n[(p, k)] = -x.clone();
            }
        }
    }
    n
}

pub type SparseVector = BTreeMap<usize, BigRational>;

pub fn dense_to_sparse(v: &[BigRational]) -> SparseVector {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVector, len: usize) -> Vec<BigRational> {
    let mut d = vec![BigRational::zero(); len];
    for (&i, x) in v {
        d[i] = x.clone();
    }
    d
}

/// Incrementally built echelon basis of a subspace of ℚ^dim, stored
/// sparsely. Each stored vector has leading coefficient one at a distinct
/// pivot coordinate.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVector>,
}

impl SparseEchelon {
    pub fn new(dim: usize) -> Self {
        SparseEchelon {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after reduction against the stored pivots.
    pub fn reduce(&self, mut v: SparseVector) -> SparseVector {
        let mut cursor = 0;
        loop {
            let Some((&lead, _)) = v.range(cursor..).find(|(c, _)| self.rows.contains_key(c)) else {
                return v;
            };
            let f = v.remove(&lead).unwrap();
            for (&c, x) in self.rows[&lead].iter().skip(1) {
                let e = v.entry(c).or_insert_with(BigRational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    v.remove(&c);
                }
            }
            cursor = lead + 1;
        }
    }

    pub fn contains(&self, v: SparseVector) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanning set. Returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, _)) = r.iter().next() else {
            return false;
        };
        let inv = r[&lead].recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(lead, r);
        true
    }

    /// The stored echelon vectors, ordered by pivot.
    pub fn vectors(&self) -> impl Iterator<Item = &SparseVector> {
        self.rows.values()
    }

    /// The stored basis, as columns of a `dim × rank` matrix.
    pub fn basis_matrix(&self) -> RatMatrix {
        let cols: Vec<Vec<BigRational>> = self
            .rows
            .values()
            .map(|v| sparse_to_dense(v, self.dim))
            .collect();
        RatMatrix::from_columns(self.dim, &cols)
    }
}
