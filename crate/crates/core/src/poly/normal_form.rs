//! Normal forms modulo `J_n` and membership in its components.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::twist::character_value;
use super::{SignCharacter, SparsePoly};
use crate::error::Result;
use crate::fibers::{class_key, first_fiber_point, FiberClassKey, MultiDegree};
use crate::veronese::veronese_matrix;

/// Coefficient sums per class of one degree; zero sums are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    pub degree: MultiDegree,
    pub coefficients: BTreeMap<FiberClassKey, BigRational>,
}

impl ClassVector {
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.coefficients.len()
    }
}

/// Normal form of a homogeneous polynomial. The zero polynomial maps to the
/// empty vector in degree zero.
pub fn normal_form_mod_jn(p: &SparsePoly) -> Result<ClassVector> {
    if p.is_zero() {
        return Ok(ClassVector {
            degree: MultiDegree::zero(p.n()),
            coefficients: BTreeMap::new(),
        });
    }
    let degree = p.multidegree()?;
    let mut coefficients: BTreeMap<FiberClassKey, BigRational> = BTreeMap::new();
    for (m, c) in p.terms() {
        *coefficients.entry(class_key(m)).or_insert_with(BigRational::zero) += c;
    }
    coefficients.retain(|_, c| !c.is_zero());
    Ok(ClassVector { degree, coefficients })
}

pub fn in_jn(p: &SparsePoly) -> bool {
    p.homogeneous_parts()
        .values()
        .all(|q| normal_form_mod_jn(q).expect("homogeneous part").is_zero())
}

/// Membership in the component of `J_n` cut out by `eps`; the trivial
/// character gives the Veronese ideal `I_n`.
pub fn in_twisted_veronese(p: &SparsePoly, eps: &SignCharacter) -> Result<bool> {
    let v = veronese_matrix(2, p.n())?;
    for (b, q) in p.homogeneous_parts() {
        let u0 = first_fiber_point(&v, &b)?.expect("a degree with support has a nonempty fiber");
        let mut sum = BigRational::zero();
        for (u, c) in q.terms() {
            if character_value(eps, u, &u0)? > 0 {
                sum += c;
            } else {
                sum -= c;
            }
        }
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{twist, twisting_for_character, Twisting};
    use crate::veronese::{principal_minor_gens, veronese_minor_gens, ExponentMatrix};
    use proptest::prelude::*;

    fn p(n: usize, s: &str) -> SparsePoly {
        SparsePoly::parse(s, n).unwrap()
    }

    const P4_PLUS: &str = "x11*x22*x33*x44 + x11*x23*x24*x34 + x13*x14*x22*x34 + x12*x14*x24*x33 \
                           + x13*x14*x23*x24 + x12*x14*x23*x34 + x12*x13*x24*x34 + x12*x13*x23*x44";

    #[test]
    fn normal_forms() {
        assert!(normal_form_mod_jn(&p(3, "x11*x22 - x12^2")).unwrap().is_zero());
        let nf = normal_form_mod_jn(&p(3, "x11*x23 - x12*x13")).unwrap();
        let mut values: Vec<String> = nf.coefficients.values().map(ToString::to_string).collect();
        values.sort();
        assert_eq!(values, ["-1", "1"]);
        let nf = normal_form_mod_jn(&p(4, P4_PLUS)).unwrap();
        assert_eq!(nf.support_size(), 8);
        assert!(nf.coefficients.values().all(|c| *c == BigRational::from_integer(1.into())));
        assert_eq!(nf.degree, MultiDegree::new(vec![2, 2, 2, 2]));
        assert!(normal_form_mod_jn(&p(3, "x11 + x22")).is_err());
    }

    #[test]
    fn membership() {
        let plus12 = SignCharacter::parse("12:-", 3).unwrap();
        let triv = SignCharacter::trivial(3);
        assert!(in_twisted_veronese(&p(3, "x11*x23 - x12*x13"), &triv).unwrap());
        assert!(!in_twisted_veronese(&p(3, "x11*x23 + x12*x13"), &triv).unwrap());
        assert!(in_twisted_veronese(&p(3, "x11*x23 + x12*x13"), &plus12).unwrap());
        assert!(in_jn(&p(3, "x11*x22 - x12^2 + x11*x33^2 - x13^2*x33")));
        assert!(!in_jn(&p(3, "x11*x22 + x12^2")));
        for g in veronese_minor_gens(4) {
            assert!(in_twisted_veronese(&g, &SignCharacter::trivial(4)).unwrap());
        }
    }

    #[test]
    fn jn_generators_lie_in_every_component() {
        for n in 3..=4 {
            for g in principal_minor_gens(n) {
                assert!(in_jn(&g));
                for eps in SignCharacter::all(n) {
                    assert!(in_twisted_veronese(&g, &eps).unwrap());
                }
            }
        }
    }

    #[test]
    fn twisted_minors_lie_in_twisted_component() {
        for eps in SignCharacter::all(4) {
            let t = twisting_for_character(&eps);
            for g in veronese_minor_gens(4) {
                assert!(in_twisted_veronese(&twist(&g, &t), &eps).unwrap());
            }
        }
    }

    fn arb_j3_element() -> impl Strategy<Value = SparsePoly> {
        let gens = principal_minor_gens(3);
        let k = gens.len();
        prop::collection::vec((0..k, prop::collection::vec(0u32..2, 6), -3i64..=3), 1..4).prop_map(move |v| {
            v.into_iter().fold(SparsePoly::zero(3), |acc, (g, e, c)| {
                let m = ExponentMatrix::from_exponents(3, e);
                &acc + &gens[g].mul_monomial(&m).scale(&BigRational::from_integer(c.into()))
            })
        })
    }

    proptest! {
        #[test]
        fn jn_members_lie_in_every_component(f in arb_j3_element()) {
            prop_assert!(in_jn(&f));
            for eps in SignCharacter::all(3) {
                prop_assert!(in_twisted_veronese(&f, &eps).unwrap());
            }
        }

        #[test]
        fn membership_ignores_the_basepoint(
            e in prop::collection::vec(0u32..3, 10),
            f in prop::collection::vec(0u32..3, 10),
            idx in 0usize..8,
        ) {
            // Weighted sums against two basepoints differ by a global sign.
            let u = ExponentMatrix::from_exponents(4, e);
            let w = ExponentMatrix::from_exponents(4, f);
            let eps = SignCharacter::from_index(4, idx).unwrap();
            let v = veronese_matrix(2, 4).unwrap();
            let b = u.degree();
            let fiber = crate::fibers::enumerate_fiber(&v, &b, &Default::default()).unwrap();
            let s = character_value(&eps, &w, &u);
            if w.degree() == b {
                let s = s.unwrap();
                for x in &fiber {
                    prop_assert_eq!(
                        character_value(&eps, x, &w).unwrap(),
                        s * character_value(&eps, x, &u).unwrap()
                    );
                }
            } else {
                prop_assert!(s.is_err());
            }
        }

        #[test]
        fn twisting_moves_components(idx in 0usize..8, jdx in 0usize..8) {
            let eps = SignCharacter::from_index(4, idx).unwrap();
            let chi = SignCharacter::from_index(4, jdx).unwrap();
            let t = twisting_for_character(&chi);
            let product = SignCharacter::from_index(4, idx ^ jdx).unwrap();
            for g in veronese_minor_gens(4) {
                let q = twist(&g, &twisting_for_character(&eps));
                prop_assert!(in_twisted_veronese(&twist(&q, &t), &product).unwrap());
            }
            prop_assert!(Twisting::identity(4).preserves_jn());
        }
    }
}
