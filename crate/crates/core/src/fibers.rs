//! Veronese fibers, their equivalence classes modulo the principal minor
//! lattice, and the graded Hilbert function of the quotient by `J_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::veronese::{c, off_diagonal_pairs, veronese_matrix, ExponentMatrix, GradingMatrix, LatticeVector};

pub const DEFAULT_FIBER_CAP: usize = 1_000_000;
pub const SIZE_CAP_ENV: &str = "VLAB_SIZE_CAP";

/// Resource limits for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of points a single fiber (or term expansion) may have.
    pub fiber_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            fiber_cap: DEFAULT_FIBER_CAP,
        }
    }
}

impl Limits {
    /// Default limits, with the fiber cap overridden by `VLAB_SIZE_CAP` when
    /// it holds a positive integer.
    pub fn from_env() -> Self {
        let fiber_cap = std::env::var(SIZE_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&c: &usize| c > 0)
            .unwrap_or(DEFAULT_FIBER_CAP);
        Limits { fiber_cap }
    }

    pub(crate) fn check(&self, count: usize, what: impl FnOnce() -> String) -> Result<()> {
        if count > self.fiber_cap {
            return Err(Error::SizeCapExceeded {
                what: what(),
                limit: self.fiber_cap,
            });
        }
        Ok(())
    }
}

/// A value of the Veronese grading.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(Vec<u32>);

impl MultiDegree {
    pub fn new(b: Vec<u32>) -> Self {
        MultiDegree(b)
    }

    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    /// `(v, …, v)` of length `n`.
    pub fn constant(n: usize, v: u32) -> Self {
        MultiDegree(vec![v; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `self + e_i` (1-based).
    pub fn plus_unit(&self, i: usize) -> MultiDegree {
        let mut b = self.0.clone();
        b[i - 1] += 1;
        MultiDegree(b)
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        assert_eq!(self.n(), other.n());
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when it stays nonnegative.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        assert_eq!(self.n(), other.n());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiDegree)
    }

    /// Coordinate permutation: entry `k` of the result is entry `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> MultiDegree {
        MultiDegree(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MultiDegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad degree entry {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()
            .map(MultiDegree)
    }
}

/// Invariant of a fiber point modulo the principal minor lattice: its degree
/// together with the parities of the entries `u_ij`, `i < j ≤ n-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberClassKey {
    pub degree: MultiDegree,
    pub parities: Vec<bool>,
}

impl fmt::Display for FiberClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.parities.iter().map(|&p| if p { '1' } else { '0' }).collect();
        write!(f, "{}|{}", self.degree, bits)
    }
}

pub fn degree_of(u: &ExponentMatrix, v: &GradingMatrix) -> MultiDegree {
    MultiDegree(v.apply(u.exponents()))
}

struct Search<'a> {
    v: &'a GradingMatrix,
    // last column index with nonzero weight in each row
    last_use: Vec<Option<usize>>,
    residual: Vec<u32>,
    current: Vec<u32>,
    out: Vec<Vec<u32>>,
    limits: &'a Limits,
    stop_at_first: bool,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) -> Result<()> {
        let m = self.v.num_columns();
        if pos == m {
            if self.residual.iter().all(|&r| r == 0) {
                self.out.push(self.current.clone());
                self.limits.check(self.out.len(), || "fiber size".to_string())?;
            }
            return Ok(());
        }
        let w = self.v.column(pos);
        let max_e = w
            .iter()
            .zip(&self.residual)
            .filter(|(&wk, _)| wk > 0)
            .map(|(&wk, &r)| r / wk)
            .min()
            .unwrap_or(0);
        for e in 0..=max_e {
            for (r, &wk) in self.residual.iter_mut().zip(w) {
                *r -= wk * e;
            }
            let closed_ok = self
                .last_use
                .iter()
                .zip(&self.residual)
                .all(|(&last, &r)| last != Some(pos) || r == 0);
            if closed_ok {
                self.current[pos] = e;
                self.run(pos + 1)?;
                self.current[pos] = 0;
            }
            for (r, &wk) in self.residual.iter_mut().zip(w) {
                *r += wk * e;
            }
            if self.stop_at_first && !self.out.is_empty() {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn search(v: &GradingMatrix, b: &[u32], limits: &Limits, stop_at_first: bool) -> Result<Vec<Vec<u32>>> {
    if b.len() != v.n() {
        return Err(Error::InvalidArgument(format!(
            "degree of length {} for a grading with {} rows",
            b.len(),
            v.n()
        )));
    }
    let last_use = (0..v.n())
        .map(|k| (0..v.num_columns()).rev().find(|&p| v.column(p)[k] > 0))
        .collect();
    // rows no column touches must be zero
    if b.iter().zip(&last_use).any(|(&bk, l): (&u32, &Option<usize>)| bk > 0 && l.is_none()) {
        return Ok(Vec::new());
    }
    let mut s = Search {
        v,
        last_use,
        residual: b.to_vec(),
        current: vec![0; v.num_columns()],
        out: Vec::new(),
        limits,
        stop_at_first,
    };
    s.run(0)?;
    Ok(s.out)
}

/// All nonnegative integer solutions of `V u = b`, lexicographically
/// ascending, for any grading matrix.
pub fn enumerate_solutions(v: &GradingMatrix, b: &[u32], limits: &Limits) -> Result<Vec<Vec<u32>>> {
    search(v, b, limits, false)
}

fn require_d2(v: &GradingMatrix) -> Result<()> {
    if v.d() != 2 {
        return Err(Error::InvalidArgument(format!(
            "pair-indexed monomials need d = 2, got d = {}",
            v.d()
        )));
    }
    Ok(())
}

/// The fiber `V^{-1}[b]` as monomials, lexicographically ascending.
pub fn enumerate_fiber(v: &GradingMatrix, b: &MultiDegree, limits: &Limits) -> Result<Vec<ExponentMatrix>> {
    require_d2(v)?;
    Ok(enumerate_solutions(v, b.entries(), limits)?
        .into_iter()
        .map(|e| ExponentMatrix::from_exponents(v.n(), e))
        .collect())
}

/// Lex-least point of the fiber, if the fiber is nonempty.
pub fn first_fiber_point(v: &GradingMatrix, b: &MultiDegree) -> Result<Option<ExponentMatrix>> {
    require_d2(v)?;
    let mut sols = search(v, b.entries(), &Limits::default(), true)?;
    Ok(sols.pop().map(|e| ExponentMatrix::from_exponents(v.n(), e)))
}

pub fn class_key(u: &ExponentMatrix) -> FiberClassKey {
    let n = u.n();
    let parities = off_diagonal_pairs(n.saturating_sub(1))
        .into_iter()
        .map(|(i, j)| u.get(i, j) % 2 == 1)
        .collect();
    FiberClassKey {
        degree: u.degree(),
        parities,
    }
}

/// Connected components of the fiber graph whose edges are `u → u ± m`.
/// Each component is sorted ascending; components are ordered by their
/// least element.
pub fn connectivity_classes(
    v: &GradingMatrix,
    b: &MultiDegree,
    moves: &[LatticeVector],
    limits: &Limits,
) -> Result<Vec<Vec<ExponentMatrix>>> {
    let fiber = enumerate_fiber(v, b, limits)?;
    let index: HashMap<&ExponentMatrix, usize> = fiber.iter().enumerate().map(|(k, u)| (u, k)).collect();
    let mut component = vec![usize::MAX; fiber.len()];
    let mut classes = Vec::new();
    for start in 0..fiber.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        component[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for m in moves {
                for step in [m.clone(), m.negated()] {
                    let Some(next) = fiber[k].checked_add(&step) else {
                        continue;
                    };
                    if let Some(&t) = index.get(&next) {
                        if component[t] == usize::MAX {
                            component[t] = id;
                            members.push(t);
                            stack.push(t);
                        }
                    }
                }
            }
        }
        members.sort_unstable();
        classes.push(members.into_iter().map(|k| fiber[k].clone()).collect());
    }
    Ok(classes)
}

/// Fiber points grouped by class key.
pub fn fiber_classes(
    v: &GradingMatrix,
    b: &MultiDegree,
    limits: &Limits,
) -> Result<BTreeMap<FiberClassKey, Vec<ExponentMatrix>>> {
    let mut out: BTreeMap<FiberClassKey, Vec<ExponentMatrix>> = BTreeMap::new();
    for u in enumerate_fiber(v, b, limits)? {
        out.entry(class_key(&u)).or_default().push(u);
    }
    Ok(out)
}

/// Number of classes in the fiber of `V_n` over `b`, i.e. the Hilbert
/// function of the quotient by `J_n` at `b`.
pub fn class_count(n: usize, b: &MultiDegree, limits: &Limits) -> Result<usize> {
    let v = veronese_matrix(2, n)?;
    Ok(fiber_classes(&v, b, limits)?.len())
}

pub fn is_saturated_degree(n: usize, b: &MultiDegree) -> bool {
    let floor = n.saturating_sub(2) as u32;
    b.entries().iter().all(|&x| x >= floor)
}

/// `(n-2, …, n-2) + e_i` for each `i` when `n` is odd, `(n-2, …, n-2)` when
/// `n` is even.
pub fn minimal_saturated_fibers(n: usize) -> Vec<MultiDegree> {
    assert!(n >= 3, "minimal saturated fibers need n ≥ 3");
    let base = MultiDegree::constant(n, (n - 2) as u32);
    if n % 2 == 0 {
        vec![base]
    } else {
        (1..=n).map(|i| base.plus_unit(i)).collect()
    }
}

/// `2^{c_{n-1}}`, the eventual number of classes per degree.
pub fn saturated_class_count(n: usize) -> usize {
    1usize << c(n.saturating_sub(1))
}

/// All `b ∈ ℕ^n` with even coordinate sum at most `max_sum`, in lex order.
pub fn degrees_up_to(n: usize, max_sum: u32) -> Vec<MultiDegree> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiDegree>) {
        if cur.len() == n {
            if cur.iter().sum::<u32>() % 2 == 0 {
                out.push(MultiDegree(cur.clone()));
            }
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_sum, &mut Vec::with_capacity(n), &mut out);
    out
}
