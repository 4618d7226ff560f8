//! Sparse polynomials with rational coefficients in the pair-indexed
//! variables `x_ij`, together with twisting automorphisms, sign characters
//! and normal forms modulo `J_n`.

mod json;
mod normal_form;
mod text;
mod twist;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fibers::MultiDegree;
use crate::veronese::ExponentMatrix;

pub use json::JsonTerm;
pub use text::monomial_string;
pub use normal_form::{in_jn, in_twisted_veronese, normal_form_mod_jn, ClassVector};
pub use twist::{character_of_twisting, character_value, twist, twisting_for_character, SignCharacter, Twisting};

/// A polynomial as a map from monomials to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    n: usize,
    terms: BTreeMap<ExponentMatrix, BigRational>,
}

impl SparsePoly {
    pub fn zero(n: usize) -> Self {
        SparsePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(ExponentMatrix::one(n), BigRational::one())
    }

    pub fn monomial(m: ExponentMatrix, coeff: BigRational) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, coeff);
        p
    }

    /// The variable `x_ij`.
    pub fn var(n: usize, i: usize, j: usize) -> Self {
        Self::monomial(ExponentMatrix::var(n, i, j), BigRational::one())
    }

    /// Sums the given terms; repeated monomials accumulate.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (ExponentMatrix, BigRational)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<ExponentMatrix, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ExponentMatrix) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: ExponentMatrix, coeff: BigRational) {
        assert_eq!(m.n(), self.n, "monomial from a ring of different size");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &SparsePoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.same_ring(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn try_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.same_ring(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.same_ring(other)?;
        let mut p = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                p.add_term(a.mul(b), x * y);
            }
        }
        Ok(p)
    }

    pub fn scale(&self, k: &BigRational) -> SparsePoly {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ExponentMatrix) -> SparsePoly {
        assert_eq!(m.n(), self.n);
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    /// The common Veronese degree of all terms.
    pub fn multidegree(&self) -> Result<MultiDegree> {
        let mut degrees = self.terms.keys().map(ExponentMatrix::degree);
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.any(|d| d != first) {
            return Err(Error::Inhomogeneous);
        }
        Ok(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.multidegree().is_ok()
    }

    /// Decomposition into Veronese-homogeneous components.
    pub fn homogeneous_parts(&self) -> BTreeMap<MultiDegree, SparsePoly> {
        let mut parts: BTreeMap<MultiDegree, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(m.degree())
                .or_insert_with(|| Self::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        parts
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentMatrix::total_degree).max()
    }

    /// Coefficients in the coordinates of `basis` (a list of monomials).
    /// Returns `None` if some term is not among them.
    pub fn coordinates(&self, basis: &[ExponentMatrix]) -> Option<Vec<BigRational>> {
        let index: BTreeMap<&ExponentMatrix, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in &self.terms {
            v[*index.get(m)?] = c.clone();
        }
        Some(v)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, other: &SparsePoly) -> SparsePoly {
        self.try_add(other).expect("ring size mismatch")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, other: &SparsePoly) -> SparsePoly {
        self.try_sub(other).expect("ring size mismatch")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, other: &SparsePoly) -> SparsePoly {
        self.try_mul(other).expect("ring size mismatch")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}
