use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use vlab::fibers::{class_count, Limits, MultiDegree};
use vlab::link::{link_generators, p_n, p_plus, p_plus_all};
use vlab::poly::{in_twisted_veronese, normal_form_mod_jn, SignCharacter, SparsePoly};
use vlab::verify::{colon_membership, ideal_degree_piece, subintersection_degree_piece, verify_link, GroupAlgebraElement};
use vlab::veronese::{num_vars, ExponentMatrix};

fn l() -> Limits {
    Limits::default()
}

fn monomials_up_to(n: usize, max_degree: u32) -> Vec<ExponentMatrix> {
    fn rec(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(num_vars(n), max_degree, &mut Vec::new(), &mut out);
    out.into_iter().map(|e| ExponentMatrix::from_exponents(n, e)).collect()
}

#[test]
fn multiples_of_link_polynomials_stay_longest() {
    for n in [3, 4] {
        let mut counts: HashMap<MultiDegree, usize> = HashMap::new();
        let monomials = monomials_up_to(n, 4);
        for q in p_plus_all(n, &l()).unwrap() {
            for m in &monomials {
                let nf = normal_form_mod_jn(&q.mul_monomial(m)).unwrap();
                let classes = *counts
                    .entry(nf.degree.clone())
                    .or_insert_with(|| class_count(n, &nf.degree, &l()).unwrap());
                assert_eq!(nf.support_size(), classes, "n={n}, m={m:?}");
                assert!(nf.coefficients.values().all(One::is_one));
            }
        }
    }
}

#[test]
fn zonotope_terms_are_distinct() {
    for n in 3..=5 {
        let p = p_n(n, &l()).unwrap();
        assert_eq!(p.len(), 1 << vlab::veronese::c(n - 1));
        assert!(p.terms().values().all(One::is_one));
    }
}

#[test]
fn link_polynomials_are_in_the_colon() {
    for n in 3..=5 {
        for q in p_plus_all(n, &l()).unwrap() {
            assert!(colon_membership(&q, n).unwrap());
        }
    }
}

#[test]
fn quotient_jumps_by_at_most_one_class() {
    for n in [3, 4] {
        for eps in SignCharacter::all(n).into_iter().take(3) {
            let r = verify_link(n, &eps, 5, &l()).unwrap();
            assert!(r.verdict);
            for x in &r.records {
                assert!(x.dim_sub - x.dim_jn <= 1, "{:?}", x.degree);
            }
        }
    }
}

#[test]
fn mismatched_twisting_is_detected() {
    let gens: Vec<SparsePoly> = link_generators(3, &SignCharacter::trivial(3), &l()).unwrap().all().cloned().collect();
    let b = MultiDegree::new(vec![2, 1, 1]);
    let a = ideal_degree_piece(&gens, 3, &b, &l()).unwrap();
    let right = subintersection_degree_piece(3, &SignCharacter::trivial(3), &b, &l()).unwrap();
    let wrong = subintersection_degree_piece(3, &SignCharacter::parse("12:-", 3).unwrap(), &b, &l()).unwrap();
    assert!(a.same_space(&right));
    assert!(!a.same_space(&wrong));
}

fn rational(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn link_ideal_lies_in_the_other_components(
        idx in 0usize..8,
        picks in prop::collection::vec((0usize..7, prop::collection::vec(0u32..2, 10), -4i64..=4), 1..4),
    ) {
        let eps = SignCharacter::from_index(4, idx).unwrap();
        let gens: Vec<SparsePoly> = link_generators(4, &eps, &l()).unwrap().all().cloned().collect();
        let f = picks.into_iter().fold(SparsePoly::zero(4), |acc, (g, e, c)| {
            let m = ExponentMatrix::from_exponents(4, e);
            &acc + &gens[g].mul_monomial(&m).scale(&rational(c))
        });
        for chi in SignCharacter::all(4) {
            if chi != eps {
                prop_assert!(in_twisted_veronese(&f, &chi).unwrap());
            }
        }
    }

    #[test]
    fn twisted_p_l_sees_only_its_character(k in 1usize..=6, seed in any::<u64>()) {
        let s = (seed as usize) % (1 << k);
        let p = GroupAlgebraElement::twisted_p_l(k, s);
        for chi in 0..(1usize << k) {
            let v = p.evaluate(chi);
            if chi == s {
                prop_assert_eq!(v, rational(1 << k));
            } else {
                prop_assert!(v.is_zero());
            }
        }
        // t_i · p is ±p, so p generates a one-dimensional ideal.
        for i in 0..k {
            let tp = GroupAlgebraElement::basis(k, 1 << i).mul(&p);
            let sign = if s >> i & 1 == 1 { -1 } else { 1 };
            let scaled: Vec<BigRational> = p.coefficients.iter().map(|c| c * rational(sign)).collect();
            prop_assert_eq!(tp.coefficients, scaled);
        }
    }

    #[test]
    fn link_polynomial_degrees_are_minimal_saturated(i in 1usize..=5) {
        let q = p_plus(5, i, &l()).unwrap();
        let mut want = vec![3u32; 5];
        want[i - 1] = 4;
        prop_assert_eq!(q.multidegree().unwrap(), MultiDegree::new(want));
    }
}
