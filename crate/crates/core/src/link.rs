//! The zonotope polynomial `p_n`, the link polynomials `p⁺_{n,i}` and the
//! identities relating them modulo `J_n`.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fibers::{fiber_classes, minimal_saturated_fibers, saturated_class_count, Limits};
use crate::poly::{normal_form_mod_jn, twist, twisting_for_character, SignCharacter, SparsePoly};
use crate::veronese::{c, check_size, off_diagonal_pairs, principal_minor_gens, veronese_matrix};

/// Generators of the ideal obtained by intersecting every component of
/// `J_n` except `omitted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkGenerators {
    pub n: usize,
    pub omitted: SignCharacter,
    pub binomial_part: Vec<SparsePoly>,
    pub extra: Vec<SparsePoly>,
}

impl LinkGenerators {
    pub fn all(&self) -> impl Iterator<Item = &SparsePoly> {
        self.binomial_part.iter().chain(&self.extra)
    }
}

fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
    }
    check_size(n)
}

/// `∏ (x_ij x_nn + x_in x_jn)` over `i < j ≤ n-1`.
pub fn p_n(n: usize, limits: &Limits) -> Result<SparsePoly> {
    require_n(n)?;
    limits.check(saturated_class_count(n), || format!("expansion of p_{n}"))?;
    let mut p = SparsePoly::one(n);
    for (i, j) in off_diagonal_pairs(n - 1) {
        let factor = &(&SparsePoly::var(n, i, j) * &SparsePoly::var(n, n, n))
            + &(&SparsePoly::var(n, i, n) * &SparsePoly::var(n, j, n));
        p = &p * &factor;
    }
    Ok(p)
}

/// `c_{n-1} - ⌊(n-1)/2⌋`.
pub fn sigma(n: usize) -> usize {
    assert!(n >= 3, "sigma needs n ≥ 3");
    c(n - 1) - (n - 1) / 2
}

/// Valid indices `i` of `p⁺_{n,i}`: all of `[n]` for odd `n`, only 1 for
/// even `n`.
pub fn p_plus_indices(n: usize) -> Vec<usize> {
    if n % 2 == 1 {
        (1..=n).collect()
    } else {
        vec![1]
    }
}

/// Sum of one monomial per class of the `i`-th minimal saturated fiber,
/// each class represented by its lex-greatest member.
pub fn p_plus(n: usize, i: usize, limits: &Limits) -> Result<SparsePoly> {
    require_n(n)?;
    if !p_plus_indices(n).contains(&i) {
        let range = if n % 2 == 1 { format!("[1, {n}]") } else { "{1}".to_string() };
        return Err(Error::IndexOutOfRange { index: i, range });
    }
    let b = &minimal_saturated_fibers(n)[i - 1];
    let v = veronese_matrix(2, n)?;
    let classes = fiber_classes(&v, b, limits)?;
    Ok(SparsePoly::from_terms(
        n,
        classes
            .into_values()
            .map(|members| (members.into_iter().max().expect("classes are nonempty"), BigRational::one())),
    ))
}

pub fn p_plus_all(n: usize, limits: &Limits) -> Result<Vec<SparsePoly>> {
    p_plus_indices(n).into_iter().map(|i| p_plus(n, i, limits)).collect()
}

fn same_normal_form(a: &SparsePoly, b: &SparsePoly) -> Result<bool> {
    Ok(normal_form_mod_jn(a)? == normal_form_mod_jn(b)?)
}

/// `x_nn^σ p⁺_{n,1} ≡ p_n` for even `n`, and `x_nn^{σ+1} p⁺_{n,i} ≡ x_in p_n`
/// for odd `n` and every `i`, modulo `J_n`.
pub fn check_pnpnplus(n: usize, limits: &Limits) -> Result<bool> {
    let pn = p_n(n, limits)?;
    let s = sigma(n) as u32;
    let xnn = SparsePoly::var(n, n, n);
    if n % 2 == 0 {
        let lhs = &xnn.pow(s) * &p_plus(n, 1, limits)?;
        return same_normal_form(&lhs, &pn);
    }
    for i in 1..=n {
        let lhs = &xnn.pow(s + 1) * &p_plus(n, i, limits)?;
        let rhs = &SparsePoly::var(n, i, n) * &pn;
        if !same_normal_form(&lhs, &rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x_ij p⁺_{n,k} ≡ x_jk p⁺_{n,i}` modulo `J_n`, for odd `n`.
pub fn check_syzygy(n: usize, i: usize, j: usize, k: usize, limits: &Limits) -> Result<bool> {
    if n % 2 == 0 {
        return Err(Error::NotOdd(n));
    }
    require_n(n)?;
    for x in [i, j, k] {
        if x == 0 || x > n {
            return Err(Error::IndexOutOfRange {
                index: x,
                range: format!("[1, {n}]"),
            });
        }
    }
    if i == j || j == k || i == k {
        return Err(Error::InvalidArgument(format!("indices {i}, {j}, {k} are not distinct")));
    }
    let lhs = &SparsePoly::var(n, i, j) * &p_plus(n, k, limits)?;
    let rhs = &SparsePoly::var(n, j, k) * &p_plus(n, i, limits)?;
    same_normal_form(&lhs, &rhs)
}

/// `J_n` together with the link polynomials twisted so that the component
/// `omitted` is the one left out. The trivial character is `I_n` itself.
pub fn link_generators(n: usize, omitted: &SignCharacter, limits: &Limits) -> Result<LinkGenerators> {
    require_n(n)?;
    if omitted.n() != n {
        return Err(Error::SizeMismatch(omitted.n(), n));
    }
    let t = twisting_for_character(omitted);
    let extra = p_plus_all(n, limits)?.iter().map(|p| twist(p, &t)).collect();
    Ok(LinkGenerators {
        n,
        omitted: omitted.clone(),
        binomial_part: principal_minor_gens(n),
        extra,
    })
}
