//! Degreewise verification of ideal identities by exact linear algebra in
//! the coordinates of a fiber, plus the group-algebra model of the Laurent
//! case and the torsion of higher Veronese lattices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{invariant_factors, kernel_lattice, rational_nullspace, IntMatrix, RatMatrix, SparseEchelon, SparseVector};
use crate::fibers::{class_key, degrees_up_to, enumerate_fiber, FiberClassKey, Limits, MultiDegree};
use crate::link::link_generators;
use crate::poly::{character_value, in_jn, SignCharacter, SparsePoly};
use crate::veronese::{higher_gens, veronese_matrix, veronese_minor_gens, ExponentMatrix, GradingMatrix};

/// A subspace of the degree-`b` part of the polynomial ring, given by
/// spanning columns in the coordinates of the (lex ordered) fiber.
#[derive(Debug, Clone)]
pub struct DegreePiece {
    pub degree: MultiDegree,
    pub fiber: Vec<ExponentMatrix>,
    pub basis_vectors: RatMatrix,
}

impl DegreePiece {
    pub fn dim(&self) -> usize {
        self.basis_vectors.rank()
    }

    /// `rank(A) = rank(B) = rank(A|B)`.
    pub fn same_space(&self, other: &DegreePiece) -> bool {
        if self.fiber != other.fiber {
            return false;
        }
        let ra = self.dim();
        if ra != other.dim() {
            return false;
        }
        let mut cols: Vec<Vec<BigRational>> = self.basis_vectors.columns().collect();
        cols.extend(other.basis_vectors.columns());
        RatMatrix::from_columns(self.fiber.len(), &cols).rank() == ra
    }

    /// The spanning columns as polynomials.
    pub fn polynomials(&self) -> Vec<SparsePoly> {
        let n = self.degree.n();
        self.basis_vectors
            .columns()
            .map(|col| SparsePoly::from_terms(n, self.fiber.iter().cloned().zip(col)))
            .collect()
    }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: Vec<u32>,
    pub fiber_size: usize,
    pub classes: usize,
    /// Dimension of the piece of `J_n`.
    pub dim_jn: usize,
    /// Dimension of the piece of the ideal under test.
    pub dim_ideal: usize,
    /// Dimension of the piece of the intersection of components.
    pub dim_sub: usize,
    pub contained: bool,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub n: usize,
    pub degree_bound: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omitted: Option<String>,
    pub records: Vec<DegreeRecord>,
    pub verdict: bool,
}

fn fiber_index(fiber: &[ExponentMatrix]) -> HashMap<&ExponentMatrix, usize> {
    fiber.iter().enumerate().map(|(k, u)| (u, k)).collect()
}

fn to_sparse(p: &SparsePoly, index: &HashMap<&ExponentMatrix, usize>) -> SparseVector {
    p.terms()
        .iter()
        .map(|(m, c)| (*index.get(m).expect("term lies in the fiber"), c.clone()))
        .collect()
}

fn ideal_echelon(
    gens: &[SparsePoly],
    v: &GradingMatrix,
    b: &MultiDegree,
    fiber: &[ExponentMatrix],
    limits: &Limits,
) -> Result<SparseEchelon> {
    let index = fiber_index(fiber);
    let mut ech = SparseEchelon::new(fiber.len());
    for g in gens {
        let Some(rest) = b.checked_sub(&g.multidegree()?) else {
            continue;
        };
        if rest.sum() % 2 == 1 {
            continue;
        }
        for m in enumerate_fiber(v, &rest, limits)? {
            ech.insert(to_sparse(&g.mul_monomial(&m), &index));
        }
    }
    Ok(ech)
}

/// Rows `u ↦ character_value(eps, u, u0)`, basepoint the lex-least point.
fn character_matrix<'a>(chars: impl Iterator<Item = &'a SignCharacter>, fiber: &[ExponentMatrix]) -> RatMatrix {
    let rows: Vec<Vec<BigRational>> = chars
        .map(|eps| {
            fiber
                .iter()
                .map(|u| BigRational::from_integer(character_value(eps, u, &fiber[0]).expect("same degree").into()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return RatMatrix::zeros(0, fiber.len());
    }
    RatMatrix::from_rows(rows)
}

fn require_n(n: usize, what: &SparsePoly) -> Result<()> {
    if what.n() != n {
        return Err(Error::SizeMismatch(what.n(), n));
    }
    Ok(())
}

/// Span of `m·g` over generators `g` and monomials `m` with
/// `degree(m·g) = b`.
pub fn ideal_degree_piece(gens: &[SparsePoly], n: usize, b: &MultiDegree, limits: &Limits) -> Result<DegreePiece> {
    for g in gens {
        require_n(n, g)?;
    }
    let v = veronese_matrix(2, n)?;
    let fiber = enumerate_fiber(&v, b, limits)?;
    let ech = ideal_echelon(gens, &v, b, &fiber, limits)?;
    Ok(DegreePiece {
        degree: b.clone(),
        fiber,
        basis_vectors: ech.basis_matrix(),
    })
}

/// Common kernel of the character functionals for every character other
/// than `omitted`.
pub fn subintersection_degree_piece(n: usize, omitted: &SignCharacter, b: &MultiDegree, limits: &Limits) -> Result<DegreePiece> {
    let v = veronese_matrix(2, n)?;
    let fiber = enumerate_fiber(&v, b, limits)?;
    let chars = SignCharacter::all(n);
    let x = character_matrix(chars.iter().filter(|e| *e != omitted), &fiber);
    let basis_vectors = if fiber.is_empty() {
        RatMatrix::zeros(0, 0)
    } else {
        rational_nullspace(&x)
    };
    Ok(DegreePiece {
        degree: b.clone(),
        fiber,
        basis_vectors,
    })
}

fn class_count_of(fiber: &[ExponentMatrix]) -> usize {
    let keys: std::collections::BTreeSet<FiberClassKey> = fiber.iter().map(class_key).collect();
    keys.len()
}

fn link_record(
    gens: &[SparsePoly],
    omitted: &SignCharacter,
    v: &GradingMatrix,
    b: &MultiDegree,
    limits: &Limits,
) -> Result<DegreeRecord> {
    let n = v.n();
    let fiber = enumerate_fiber(v, b, limits)?;
    let classes = class_count_of(&fiber);
    let ech = ideal_echelon(gens, v, b, &fiber, limits)?;
    let chars = SignCharacter::all(n);
    let others: Vec<&SignCharacter> = chars.iter().filter(|e| *e != omitted).collect();
    let x = character_matrix(others.iter().copied(), &fiber);
    let dim_sub = fiber.len() - x.rank();
    // A ⊆ ker X, and equal dimension, is rank(A) = rank(B) = rank(A|B).
    let contained = ech.vectors().all(|a| {
        (0..x.rows()).all(|r| {
            let row = x.row(r);
            a.iter().fold(BigRational::zero(), |acc, (&k, c)| acc + c * &row[k]).is_zero()
        })
    });
    let dim_ideal = ech.rank();
    Ok(DegreeRecord {
        degree: b.entries().to_vec(),
        fiber_size: fiber.len(),
        classes,
        dim_jn: fiber.len() - classes,
        dim_ideal,
        dim_sub,
        contained,
        equal: contained && dim_ideal == dim_sub,
    })
}

fn decomposition_record(v: &GradingMatrix, b: &MultiDegree, limits: &Limits) -> Result<DegreeRecord> {
    let n = v.n();
    let fiber = enumerate_fiber(v, b, limits)?;
    let keys: Vec<FiberClassKey> = fiber.iter().map(class_key).collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    let class_rows: Vec<Vec<BigRational>> = distinct
        .iter()
        .map(|k| {
            keys.iter()
                .map(|x| if x == k { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let chars = SignCharacter::all(n);
    let x = character_matrix(chars.iter(), &fiber);
    let (rank_f, rank_g, rank_both) = if fiber.is_empty() {
        (0, 0, 0)
    } else {
        let f = RatMatrix::from_rows(class_rows.clone());
        let mut both = class_rows;
        both.extend((0..x.rows()).map(|r| x.row(r).to_vec()));
        (f.rank(), x.rank(), RatMatrix::from_rows(both).rank())
    };
    let dim_jn = fiber.len() - rank_f;
    let dim_sub = fiber.len() - rank_g;
    let contained = rank_both == rank_g;
    Ok(DegreeRecord {
        degree: b.entries().to_vec(),
        fiber_size: fiber.len(),
        classes: distinct.len(),
        dim_jn,
        dim_ideal: dim_jn,
        dim_sub,
        contained,
        equal: rank_f == rank_g && rank_g == rank_both,
    })
}

fn degrees_for_bound(n: usize, total_degree_bound: u32) -> Vec<MultiDegree> {
    degrees_up_to(n, 2 * total_degree_bound)
}

/// Compares, in every degree of total degree at most the bound, the ideal
/// generated by [`link_generators`] with the intersection of all
/// components except `omitted`.
pub fn verify_link(n: usize, omitted: &SignCharacter, total_degree_bound: u32, limits: &Limits) -> Result<VerificationReport> {
    let gens: Vec<SparsePoly> = link_generators(n, omitted, limits)?.all().cloned().collect();
    let v = veronese_matrix(2, n)?;
    let records = degrees_for_bound(n, total_degree_bound)
        .par_iter()
        .map(|b| link_record(&gens, omitted, &v, b, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        check: "link".into(),
        n,
        degree_bound: total_degree_bound,
        omitted: Some(omitted.to_string()),
        verdict: records.iter().all(|r| r.equal),
        records,
    })
}

/// Compares, degree by degree, the piece of `J_n` with the intersection of
/// all `2^{c_{n-1}}` components.
pub fn verify_decomposition(n: usize, total_degree_bound: u32, limits: &Limits) -> Result<VerificationReport> {
    let v = veronese_matrix(2, n)?;
    let records = degrees_for_bound(n, total_degree_bound)
        .par_iter()
        .map(|b| decomposition_record(&v, b, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        check: "decomposition".into(),
        n,
        degree_bound: total_degree_bound,
        omitted: None,
        verdict: records.iter().all(|r| r.equal),
        records,
    })
}

/// Whether `f·g ∈ J_n` for every 2-minor `g`, i.e. `f ∈ J_n : I_n`.
pub fn colon_membership(f: &SparsePoly, n: usize) -> Result<bool> {
    require_n(n, f)?;
    Ok(veronese_minor_gens(n).iter().all(|g| in_jn(&(f * g))))
}

/// An element of the rational group algebra of `(ℤ/2)^k`; the group
/// element `g` is a bitmask and `t_i` is bit `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub k: usize,
    pub coefficients: Vec<BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(k: usize) -> Self {
        GroupAlgebraElement {
            k,
            coefficients: vec![BigRational::zero(); 1 << k],
        }
    }

    pub fn basis(k: usize, g: usize) -> Self {
        let mut e = Self::zero(k);
        e.coefficients[g] = BigRational::one();
        e
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k);
        let mut out = Self::zero(self.k);
        for (g, a) in self.coefficients.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (h, b) in other.coefficients.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out.coefficients[g ^ h] += a * b;
            }
        }
        out
    }

    /// Value at the character `χ_s(g) = (-1)^{|s ∧ g|}`.
    pub fn evaluate(&self, s: usize) -> BigRational {
        self.coefficients
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (g, c)| {
                if (s & g).count_ones() % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
    }

    /// `∏ (1 + χ_s(t_i) t_i)`.
    pub fn twisted_p_l(k: usize, s: usize) -> Self {
        let mut p = Self::basis(k, 0);
        for i in 0..k {
            let mut factor = Self::basis(k, 0);
            factor.coefficients[1 << i] = if s >> i & 1 == 1 { -BigRational::one() } else { BigRational::one() };
            p = p.mul(&factor);
        }
        p
    }
}

fn omission_holds(k: usize, omitted: usize) -> bool {
    let size = 1usize << k;
    let rows: Vec<Vec<BigRational>> = (0..size)
        .filter(|&s| s != omitted)
        .map(|s| {
            (0..size)
                .map(|g| {
                    if (s & g).count_ones() % 2 == 0 {
                        BigRational::one()
                    } else {
                        -BigRational::one()
                    }
                })
                .collect()
        })
        .collect();
    let kernel = if rows.is_empty() {
        RatMatrix::identity(size)
    } else {
        rational_nullspace(&RatMatrix::from_rows(rows))
    };
    let p = GroupAlgebraElement::twisted_p_l(k, omitted);
    let ideal: Vec<Vec<BigRational>> = (0..size)
        .map(|g| GroupAlgebraElement::basis(k, g).mul(&p).coefficients)
        .collect();
    let ideal = RatMatrix::from_columns(size, &ideal);
    let mut both: Vec<Vec<BigRational>> = kernel.columns().collect();
    both.extend(ideal.columns());
    let r = kernel.rank();
    r == ideal.rank() && RatMatrix::from_columns(size, &both).rank() == r
}

/// For every character `χ*` of `(ℤ/2)^k`, whether the intersection of the
/// kernels of all other characters is the ideal generated by the twisted
/// `p_L`.
pub fn group_algebra_subintersection(k: usize) -> Result<bool> {
    if !(1..=8).contains(&k) {
        return Err(Error::InvalidArgument(format!("rank k must lie in [1, 8], got {k}")));
    }
    Ok((0..1usize << k).into_par_iter().all(|s| omission_holds(k, s)))
}

/// Invariant factors of the lattice of `higher_gens(d, n)` inside the
/// kernel of `V_{d,n}`.
pub fn higher_torsion(d: usize, n: usize) -> Result<Vec<BigInt>> {
    let v = veronese_matrix(d, n)?;
    let gens = higher_gens(d, n)?;
    let cols: Vec<Vec<i64>> = gens.iter().map(|g| g.exponent_vector()).collect();
    let sub = IntMatrix::from_columns(v.num_columns(), &cols);
    let ambient = kernel_lattice(v.matrix());
    invariant_factors(&sub, &ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::p_plus;
    use crate::veronese::principal_minor_gens;

    fn deg(b: &[u32]) -> MultiDegree {
        MultiDegree::new(b.to_vec())
    }

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn ideal_pieces() {
        let j3 = principal_minor_gens(3);
        let a = ideal_degree_piece(&j3, 3, &deg(&[2, 2, 0]), &l()).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.polynomials()[0].to_string(), "-x11*x22 + x12^2");
        assert_eq!(ideal_degree_piece(&j3, 3, &deg(&[2, 1, 1]), &l()).unwrap().dim(), 0);

        let mut k4 = principal_minor_gens(4);
        let j4 = ideal_degree_piece(&k4, 4, &deg(&[2, 2, 2, 2]), &l()).unwrap();
        k4.push(p_plus(4, 1, &l()).unwrap());
        let k = ideal_degree_piece(&k4, 4, &deg(&[2, 2, 2, 2]), &l()).unwrap();
        assert_eq!(k.dim(), j4.dim() + 1);
        assert_eq!(j4.dim(), j4.fiber.len() - 8);
    }

    #[test]
    fn subintersection_pieces() {
        let t3 = SignCharacter::trivial(3);
        let s = subintersection_degree_piece(3, &t3, &deg(&[2, 1, 1]), &l()).unwrap();
        assert_eq!(s.dim(), 1);
        let q = &s.polynomials()[0];
        assert_eq!(q.len(), 2);
        assert_eq!(q.terms().values().collect::<std::collections::BTreeSet<_>>().len(), 1);
        assert_eq!(subintersection_degree_piece(3, &t3, &deg(&[2, 0, 0]), &l()).unwrap().dim(), 0);
        let t4 = SignCharacter::trivial(4);
        assert_eq!(subintersection_degree_piece(4, &t4, &deg(&[1, 1, 1, 1]), &l()).unwrap().dim(), 0);
    }

    #[test]
    fn fast_record_agrees_with_explicit_spaces() {
        for eps in SignCharacter::all(3) {
            let gens: Vec<SparsePoly> = link_generators(3, &eps, &l()).unwrap().all().cloned().collect();
            let v = veronese_matrix(2, 3).unwrap();
            for b in degrees_up_to(3, 8) {
                let a = ideal_degree_piece(&gens, 3, &b, &l()).unwrap();
                let s = subintersection_degree_piece(3, &eps, &b, &l()).unwrap();
                let r = link_record(&gens, &eps, &v, &b, &l()).unwrap();
                assert_eq!(r.equal, a.same_space(&s), "{b}");
                assert_eq!((r.dim_ideal, r.dim_sub), (a.dim(), s.dim()));
            }
        }
    }

    #[test]
    fn small_verifications() {
        let t3 = SignCharacter::trivial(3);
        let r = verify_link(3, &t3, 1, &l()).unwrap();
        assert!(r.verdict);
        assert!(r.records.iter().all(|x| x.dim_ideal == 0 && x.dim_sub == 0));
        assert!(verify_link(3, &t3, 4, &l()).unwrap().verdict);
        assert!(verify_decomposition(3, 0, &l()).unwrap().verdict);
        assert!(verify_decomposition(3, 4, &l()).unwrap().verdict);
    }

    #[test]
    fn wrong_generators_fail() {
        // J_3 alone is strictly smaller than the intersection of the other
        // component, so the record at (2,1,1) must be unequal.
        let v = veronese_matrix(2, 3).unwrap();
        let r = link_record(&principal_minor_gens(3), &SignCharacter::trivial(3), &v, &deg(&[2, 1, 1]), &l()).unwrap();
        assert!(r.contained);
        assert!(!r.equal);
        assert_eq!((r.dim_ideal, r.dim_sub), (0, 1));
    }

    #[test]
    fn colon() {
        assert!(colon_membership(&p_plus(4, 1, &l()).unwrap(), 4).unwrap());
        assert!(!colon_membership(&SparsePoly::var(3, 1, 1), 3).unwrap());
        for g in principal_minor_gens(3) {
            assert!(colon_membership(&g, 3).unwrap());
        }
        assert!(colon_membership(&SparsePoly::one(4), 3).is_err());
    }

    #[test]
    fn group_algebra() {
        let p = GroupAlgebraElement::twisted_p_l(1, 1);
        assert_eq!(p.coefficients, vec![BigRational::one(), -BigRational::one()]);
        assert!(p.evaluate(0).is_zero());
        for k in 1..=4 {
            assert!(group_algebra_subintersection(k).unwrap());
        }
        assert!(group_algebra_subintersection(0).is_err());
        assert!(group_algebra_subintersection(9).is_err());
    }

    #[test]
    fn torsion() {
        let f = |d, n| -> Vec<i64> {
            higher_torsion(d, n).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
        };
        assert_eq!(f(2, 2), Vec::<i64>::new());
        assert_eq!(f(2, 3), vec![2]);
        assert_eq!(f(2, 4), vec![2, 2, 2]);
        assert_eq!(f(3, 4), vec![3; 13]);
    }
}
