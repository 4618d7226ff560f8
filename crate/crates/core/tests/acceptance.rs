//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so that the lines always reach the output.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_traits::One;
use vlab::fibers::{
    class_count, class_key, connectivity_classes, degrees_up_to, enumerate_fiber, is_saturated_degree,
    saturated_class_count, Limits,
};
use vlab::link::{check_pnpnplus, check_syzygy, p_n, p_plus, p_plus_all, p_plus_indices, sigma};
use vlab::poly::{in_jn, normal_form_mod_jn, SignCharacter, SparsePoly};
use vlab::verify::{group_algebra_subintersection, higher_torsion, verify_decomposition, verify_link};
use vlab::veronese::{c, principal_minor_moves, veronese_matrix, veronese_minor_gens};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn limits() -> Limits {
    Limits::default()
}

/// Rewrites a polynomial over `x11..x33` with the letters `a..f` and puts
/// every term and the term list in sorted order.
fn lettered(p: &SparsePoly) -> String {
    const LETTERS: [char; 6] = ['a', 'b', 'c', 'd', 'e', 'f'];
    let mut terms: Vec<String> = p
        .terms()
        .iter()
        .map(|(m, coef)| {
            let mut word = String::new();
            for (k, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    word.push(LETTERS[k]);
                }
            }
            if coef.is_one() {
                word
            } else {
                format!("{coef}{word}")
            }
        })
        .collect();
    terms.sort();
    terms.join("+")
}

fn canonical_letters(s: &str) -> String {
    let mut terms: Vec<String> = s
        .split('+')
        .map(|t| {
            let mut ch: Vec<char> = t.trim().chars().collect();
            ch.sort_unstable();
            ch.into_iter().collect()
        })
        .collect();
    terms.sort();
    terms.join("+")
}

fn criterion_1() -> Outcome {
    let got: BTreeSet<String> = (1..=3)
        .map(|i| p_plus(3, i, &limits()).map(|p| lettered(&p)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let expected: BTreeSet<String> = ["ae+bc", "cd+be", "ce+bf"].iter().map(|s| canonical_letters(s)).collect();
    ensure(got == expected, || format!("got {got:?}, expected {expected:?}"))?;
    let first = p_plus(3, 1, &limits()).map_err(|e| e.to_string())?.to_string();
    ensure(first == "x11*x23 + x12*x13", || format!("pplus -n 3 -i 1 printed {first}"))?;
    Ok("p+_{3,i} = {ae+bc, cd+be, ce+bf}".into())
}

const P4_PLUS: &str = "x11*x22*x33*x44 + x11*x23*x24*x34 + x13*x14*x22*x34 + x12*x14*x24*x33 \
                       + x13*x14*x23*x24 + x12*x14*x23*x34 + x12*x13*x24*x34 + x12*x13*x23*x44";

fn criterion_2() -> Outcome {
    let l = limits();
    let parse = |s: &str| SparsePoly::parse(s, 4).map_err(|e| e.to_string());
    let plus = p_plus(4, 1, &l).map_err(|e| e.to_string())?;
    let expected = parse(P4_PLUS)?;
    ensure(plus == expected, || format!("p4+ = {plus}"))?;
    ensure(plus.terms().values().all(One::is_one), || "coefficient other than 1".into())?;
    let triple = &(&parse("x12*x44 + x14*x24")? * &parse("x13*x44 + x14*x34")?) * &parse("x23*x44 + x24*x34")?;
    let pn = p_n(4, &l).map_err(|e| e.to_string())?;
    ensure(pn == triple, || format!("p4 = {pn}"))?;
    ensure(sigma(4) == 2, || format!("sigma(4) = {}", sigma(4)))?;
    let lhs = &SparsePoly::var(4, 4, 4).pow(2) * &plus;
    let (a, b) = (normal_form_mod_jn(&lhs), normal_form_mod_jn(&pn));
    ensure(a.is_ok() && a == b, || "x44^2 p4+ and p4 differ modulo J4".into())?;
    Ok("p4+ printed quartic, p4 triple product, sigma(4) = 2, x44^2 p4+ = p4 mod J4".into())
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=6 {
        let want_deg = if n % 2 == 1 { (n - 1) * (n - 1) / 2 } else { n * (n - 2) / 2 } as u32;
        let want_terms = 1usize << c(n - 1);
        for i in p_plus_indices(n) {
            let p = p_plus(n, i, &limits()).map_err(|e| format!("n={n}, i={i}: {e}"))?;
            ensure(p.len() == want_terms, || format!("n={n}, i={i}: {} terms", p.len()))?;
            ensure(p.total_degree() == Some(want_deg), || format!("n={n}, i={i}: degree {:?}", p.total_degree()))?;
            ensure(p.multidegree().is_ok(), || format!("n={n}, i={i}: not homogeneous"))?;
        }
        parts.push(format!("n={n}: {want_terms} terms, degree {want_deg}"));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Outcome {
    let as_ints = |d, n| -> Result<Vec<i64>, String> {
        higher_torsion(d, n)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|x| i64::try_from(x).map_err(|e| e.to_string()))
            .collect()
    };
    for n in 3..=6 {
        let got = as_ints(2, n)?;
        ensure(got == vec![2; c(n - 1)], || format!("d=2, n={n}: {got:?}"))?;
    }
    let got = as_ints(3, 4)?;
    ensure(got == vec![3; 13], || format!("d=3, n=4: {got:?}"))?;
    Ok("(Z/2)^{c_{n-1}} for n = 3..6, (Z/3)^13 for d=3, n=4".into())
}

fn criterion_5() -> Outcome {
    let l = limits();
    let mut done = Vec::new();
    for n in [3, 4] {
        for eps in SignCharacter::all(n) {
            let r = verify_link(n, &eps, 8, &l).map_err(|e| e.to_string())?;
            ensure(r.records.iter().all(|x| x.contained), || format!("n={n}, omit {eps}: containment failed"))?;
            ensure(r.verdict, || {
                let bad: Vec<String> = r
                    .records
                    .iter()
                    .filter(|x| !x.equal)
                    .take(3)
                    .map(|x| format!("{:?} ideal={} sub={}", x.degree, x.dim_ideal, x.dim_sub))
                    .collect();
                format!("n={n}, omit {eps}: {}", bad.join("; "))
            })?;
        }
        done.push(format!("n={n}: all {} omitted characters", SignCharacter::count(n)));
    }
    Ok(format!("{} up to total degree 8", done.join(", ")))
}

fn criterion_6() -> Outcome {
    for n in [3, 4] {
        let r = verify_decomposition(n, 8, &limits()).map_err(|e| e.to_string())?;
        ensure(r.verdict, || format!("n={n} fails"))?;
    }
    Ok("J_n = intersection of all components, n = 3, 4, total degree <= 8".into())
}

fn criterion_7() -> Outcome {
    let l = limits();
    for n in 3..=5 {
        ensure(check_pnpnplus(n, &l).map_err(|e| e.to_string())?, || format!("pnpnplus fails at n={n}"))?;
    }
    let mut count = 0;
    for n in [3, 5] {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let ok = check_syzygy(n, i, j, k, &l).map_err(|e| e.to_string())?;
                    ensure(ok, || format!("syzygy fails at n={n}, ({i},{j},{k})"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("pnpnplus for n = 3, 4, 5; {count} syzygy triples"))
}

fn criterion_8() -> Outcome {
    let l = limits();
    let mut degrees = 0;
    for n in [3, 4] {
        let v = veronese_matrix(2, n).map_err(|e| e.to_string())?;
        let moves = principal_minor_moves(n);
        for b in degrees_up_to(n, 10) {
            let components: BTreeSet<Vec<_>> = connectivity_classes(&v, &b, &moves, &l)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            let mut by_key: BTreeMap<_, Vec<_>> = BTreeMap::new();
            for u in enumerate_fiber(&v, &b, &l).map_err(|e| e.to_string())? {
                by_key.entry(class_key(&u)).or_default().push(u);
            }
            let keyed: BTreeSet<Vec<_>> = by_key.into_values().collect();
            ensure(components == keyed, || format!("n={n}, b={b}: partitions differ"))?;
            degrees += 1;
        }
    }
    Ok(format!("{degrees} degrees at n = 3, 4, coordinate sum <= 10"))
}

fn criterion_9() -> Outcome {
    let l = limits();
    let mut degrees = 0;
    for n in 3..=5 {
        let cap = saturated_class_count(n);
        for b in degrees_up_to(n, 12) {
            let k = class_count(n, &b, &l).map_err(|e| e.to_string())?;
            ensure(k <= cap, || format!("n={n}, b={b}: {k} classes > {cap}"))?;
            ensure((k == cap) == is_saturated_degree(n, &b), || {
                format!("n={n}, b={b}: {k} classes, saturated = {}", is_saturated_degree(n, &b))
            })?;
            degrees += 1;
        }
    }
    Ok(format!("{degrees} degrees at n = 3, 4, 5, coordinate sum <= 12"))
}

fn criterion_10() -> Outcome {
    for k in 1..=6 {
        ensure(group_algebra_subintersection(k).map_err(|e| e.to_string())?, || format!("k={k} fails"))?;
    }
    Ok("k = 1..6, every omitted character".into())
}

fn criterion_11() -> Outcome {
    let l = limits();
    let mut products = 0;
    for n in 3..=5 {
        let minors = veronese_minor_gens(n);
        for p in p_plus_all(n, &l).map_err(|e| e.to_string())? {
            for g in &minors {
                ensure(in_jn(&(&p * g)), || format!("n={n}: ({p})*({g}) not in J_n"))?;
                products += 1;
            }
        }
    }
    Ok(format!("{products} products p+ * minor lie in J_n, n = 3, 4, 5"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("golden n=3 link polynomials", criterion_1, Duration::from_secs(1)),
        ("golden n=4 link and zonotope polynomials", criterion_2, Duration::from_secs(1)),
        ("degree and term count of p+", criterion_3, Duration::from_secs(300)),
        ("torsion invariant factors", criterion_4, Duration::from_secs(10)),
        ("subintersection verification", criterion_5, Duration::from_secs(300)),
        ("decomposition verification", criterion_6, Duration::from_secs(300)),
        ("p_n and syzygy identities", criterion_7, Duration::from_secs(120)),
        ("class keys match connectivity", criterion_8, Duration::from_secs(120)),
        ("bounded class counts", criterion_9, Duration::from_secs(300)),
        ("group algebra subintersection", criterion_10, Duration::from_secs(30)),
        ("colon containment", criterion_11, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *budget => Err(format!("{detail}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} ({took:.2?})", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name}: {why} ({took:.2?})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
