//! Acceptance suite: one test per criterion, exact tolerances throughout
//! (integer/rational equality or valuation bounds). Each test prints a
//! PASS line on success; run with `cargo test --test acceptance -- --nocapture`
//! to see them.

use cobord::{
    alpha_coeff, beta_coeff, builtin_action, congruent_mod_p_omega, cp_class, exponential, gamma_p,
    k_series, logarithm, partitions_of, rat, rat_int, realize_class, s_numbers, BuiltinAction,
    Classification, Classifier, GeneratorBasis, GradedElement, OddPrime, Partition, WeightList,
};
use cobord_cli::{expr, run_command, suites};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(n: u32) -> OddPrime {
    OddPrime::new(n).unwrap()
}

fn is_identity(series: &cobord::USeries) -> bool {
    series.coefficient(1).unwrap() == GradedElement::one()
        && (2..=series.truncation()).all(|k| series.coefficient(k).unwrap().is_zero())
}

#[test]
fn ac01_round_trip() {
    let t = 12;
    let g = logarithm(t);
    let e = exponential(t);
    assert!(is_identity(&g.compose(&e).unwrap()), "g(e(u)) != u");
    assert!(is_identity(&e.compose(&g).unwrap()), "e(g(u)) != u");
    println!("AC-1 round-trip g(e(u)) = e(g(u)) = u at T=12: PASS");
}

#[test]
fn ac02_power_system() {
    let t = 10;
    for a in [2i64, 3, 5, 7] {
        for b in [2i64, 3, 5, 7] {
            let composed = k_series(a, t)
                .unwrap()
                .compose(&k_series(b, t).unwrap())
                .unwrap();
            assert_eq!(composed, k_series(a * b, t).unwrap(), "[[u]_{b}]_{a}");
            let swapped = k_series(b, t)
                .unwrap()
                .compose(&k_series(a, t).unwrap())
                .unwrap();
            assert_eq!(composed, swapped, "({a},{b}) commutation");
        }
    }
    let g = logarithm(12);
    for k in (-7i64..=7).filter(|&k| k != 0) {
        assert_eq!(
            g.compose(&k_series(k, 12).unwrap()).unwrap(),
            g.scalar_mul(&rat_int(k)),
            "g([u]_{k}) != k g(u)"
        );
    }
    println!("AC-2 power system [[u]_a]_b = [u]_ab = [[u]_b]_a and g([u]_k) = k*g(u): PASS");
}

#[test]
fn ac03_explicit_coefficients_golden() {
    let golden = include_str!("golden/explicit_coefficients.txt");
    let t = 8;
    let mut checked = 0;
    for line in golden.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (lhs, rhs) = line.split_once('=').expect("golden line has an '='");
        let expected = expr::eval(&expr::parse_expression(rhs.trim()).unwrap(), t).unwrap();
        let lhs = lhs.trim();
        let actual =
            if let Some(args) = lhs.strip_prefix("alpha[").and_then(|s| s.strip_suffix(']')) {
                let (k, n) = args.split_once(',').unwrap();
                alpha_coeff(k.parse().unwrap(), n.parse().unwrap(), t).unwrap()
            } else if let Some(arg) = lhs.strip_prefix("beta[").and_then(|s| s.strip_suffix(']')) {
                beta_coeff(arg.parse().unwrap(), t).unwrap()
            } else if let Some(args) = lhs.strip_prefix("fgl[").and_then(|s| s.strip_suffix(']')) {
                let (i, j) = args.split_once(',').unwrap();
                cobord::universal_fgl(t)
                    .coefficient(i.parse().unwrap(), j.parse().unwrap())
                    .unwrap()
            } else {
                panic!("unrecognized golden quantity '{lhs}'");
            };
        assert_eq!(actual, expected, "golden mismatch for {lhs}");
        checked += 1;
    }
    assert_eq!(checked, 5);
    println!("AC-3 explicit coefficients match the golden file ({checked} identities): PASS");
}

#[test]
fn ac04_leading_coefficient_law() {
    for k in [2i64, 3, 5] {
        for n in 1..=10u32 {
            let lead = alpha_coeff(k, n, 12).unwrap().leading_b_coefficient();
            let expect = rat_int(k) - rat_int(k).pow(n as i32 + 1);
            assert_eq!(lead, expect, "k={k}, n={n}");
        }
    }
    println!(
        "AC-4 leading coefficient of alpha[k,n] is k - k^(n+1) for k in {{2,3,5}}, n <= 10: PASS"
    );
}

#[test]
fn ac05_generator_theorem() {
    for prime in [3u32, 5] {
        let basis = GeneratorBasis::alpha(p(prime), 10, 12).unwrap();
        for q in 2..=7i64 {
            for n in 1..=10u32 {
                let coeffs = basis.expand(&alpha_coeff(q, n, 12).unwrap()).unwrap();
                for (omega, c) in coeffs {
                    assert!(
                        cobord::is_p_integral(&c, p(prime)),
                        "p={prime}, q={q}, n={n}, {omega}: {c}"
                    );
                }
            }
        }
    }
    println!("AC-5 every alpha[q,n] (q <= 7, n <= 10) expands p-integrally over the alpha basis, p in {{3,5}}: PASS");
}

#[test]
fn ac06_divisibility_claim_reported() {
    // The p-series itself: every coefficient is an integer divisible by p.
    for prime in [3u32, 5] {
        let series = k_series(prime as i64, 13).unwrap();
        for (j, c) in series.terms() {
            for (omega, q) in c.terms() {
                assert!(q.denom() == &num_bigint::BigInt::from(1), "u^{j} {omega}");
                assert!(
                    cobord::p_valuation(q, p(prime)).is_at_least(1),
                    "u^{j} {omega} not divisible by {prime}"
                );
            }
        }
    }

    // The division claim is checked per l and the refutations are surfaced:
    // alpha_l^(p)/p expands p-integrally exactly when p does not divide l+1
    // (l+1 a power of p never occurs here since those l are excluded). The
    // engine and an independent computation agree that the claim fails at
    // l = 5, 11 for p = 3 and l = 9 for p = 5.
    let mut findings = Vec::new();
    for prime in [3u32, 5] {
        let op = p(prime);
        let basis = GeneratorBasis::alpha(op, 12, 13).unwrap();
        for l in 1..=12u32 {
            if cobord::partition::is_p_power_minus_one(l, op) {
                continue;
            }
            let candidate = alpha_coeff(prime as i64, l, 13)
                .unwrap()
                .scale(&rat(1, prime as i64));
            let integral = basis
                .expand(&candidate)
                .unwrap()
                .values()
                .all(|c| cobord::is_p_integral(c, op));
            let forced = (l + 1) % prime != 0;
            assert_eq!(
                integral, forced,
                "p={prime}, l={l}: divisibility pattern deviates from the verified truth table"
            );
            if !integral {
                findings.push(format!("p={prime}, l={l}"));
            }
        }
    }
    assert_eq!(findings, vec!["p=3, l=5", "p=3, l=11", "p=5, l=9"]);

    // the CLI suite surfaces the same findings with a failing exit status
    for (prime, expected_failures) in [(3u32, 2usize), (5, 1)] {
        let out = run_command([
            "verify".to_string(),
            "--p".into(),
            prime.to_string(),
            "--suite".into(),
            "divisibility-claim".into(),
            "--trunc".into(),
            "13".into(),
            "--json".into(),
        ]);
        assert_eq!(out.status, 1, "suite must fail loudly at p={prime}");
        let parsed: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
        assert_eq!(
            parsed["failures"].as_array().unwrap().len(),
            expected_failures
        );
    }
    println!(
        "AC-6 divisibility: [u]_p coefficients all divisible by p (n <= 12); \
         the per-l division claim holds iff p does not divide l+1 — counterexamples \
         {{p=3: l=5,11; p=5: l=9}} surfaced as findings by the suite (exit 1): PASS"
    );
}

#[test]
fn ac07_equivalence_theorem() {
    for prime in [3u32, 5] {
        let outcome = suites::run_suite("charnum-equivalence", p(prime), 12, 20260810).unwrap();
        assert!(
            outcome.passed,
            "discrepancies at p={prime}: {:?}",
            outcome.failures().collect::<Vec<_>>()
        );
        // all alpha-monomials of degree <= 10 plus 100 random classes per degree
        assert_eq!(outcome.cases.len(), 10);
    }
    println!("AC-7 ideal test == characteristic-number test on all alpha-monomials (deg <= 10) and 100 random classes per degree, p in {{3,5}}: PASS");
}

#[test]
fn ac08_fixed_point_realization() {
    // exact intermediate values at p = 3
    let w1 = WeightList::new(p(3), &[1]).unwrap();
    let w2 = WeightList::new(p(3), &[2]).unwrap();
    assert_eq!(
        gamma_p(&w1, 12).unwrap(),
        GradedElement::generator(1).scale(&rat_int(2))
    );
    assert_eq!(
        gamma_p(&w2, 12).unwrap(),
        GradedElement::generator(1).scale(&rat(3, 2))
    );

    for prime in [3u32, 5] {
        let op = p(prime);
        let classifier = Classifier::new(op, prime, 12).unwrap();
        let all: Vec<i64> = (1..prime as i64).collect();
        let gamma_all = gamma_p(&WeightList::new(op, &all).unwrap(), 12).unwrap();
        let congruent = congruent_mod_p_omega(
            &cp_class(prime - 1),
            &gamma_all.scale(&op.to_rational()),
            classifier.alpha_basis(),
        )
        .unwrap();
        assert!(congruent, "CP[{}] != p*gamma mod {prime}", prime - 1);
    }
    println!("AC-8 CP[p-1] == p*gamma_p(1,...,p-1) mod p for p in {{3,5}}; gamma_3(1) = 2*b[1], gamma_3(2) = (3/2)*b[1]: PASS");
}

#[test]
fn ac09_two_actions_one_class() {
    for prime in [3u32, 5] {
        let op = p(prime);
        let classifier = Classifier::new(op, prime, 12).unwrap();
        let basis = classifier.alpha_basis();
        let first = realize_class(
            &builtin_action(BuiltinAction::ProductFirst, op).unwrap(),
            12,
        )
        .unwrap();
        let second = realize_class(
            &builtin_action(BuiltinAction::ProductSecond, op).unwrap(),
            12,
        )
        .unwrap();
        let target = cp_class(prime - 1).mul(&cp_class(1));
        assert!(
            first.congruent_to(&target, basis).unwrap(),
            "p={prime} first"
        );
        assert!(
            second.congruent_to(&target, basis).unwrap(),
            "p={prime} second"
        );
        assert!(
            first.congruent_to(second.class(), basis).unwrap(),
            "p={prime} pair"
        );
    }
    println!("AC-9 both product actions realize CP[p-1]*CP[1] mod p, p in {{3,5}}: PASS");
}

#[test]
fn ac10_obstruction_examples() {
    let c3 = Classifier::new(p(3), 4, 12).unwrap();
    let report = c3.classify(&cp_class(4)).unwrap();
    assert_eq!(report.classification, Classification::NotRealizable);
    let witness = report
        .charnum_witnesses
        .iter()
        .find(|w| w.partition == Partition::single(4))
        .expect("s_(4) witness");
    assert_eq!(witness.s_number, rat_int(-5));
    assert_eq!(witness.residue_mod_p, Some(1));

    let c5 = Classifier::new(p(5), 8, 12).unwrap();
    let report = c5.classify(&cp_class(8)).unwrap();
    assert_eq!(report.classification, Classification::NotRealizable);
    let witness = report
        .charnum_witnesses
        .iter()
        .find(|w| w.partition == Partition::single(8))
        .expect("s_(8) witness");
    assert_eq!(witness.s_number, rat_int(-9));
    assert_eq!(witness.residue_mod_p, Some(1));
    println!("AC-10 CP[4] obstructed at p=3 (s_(4) = -5 == 1 mod 3), CP[8] at p=5 (s_(8) = -9 == 1 mod 5): PASS");
}

#[test]
fn ac11_low_dimensions_all_realizable() {
    for prime in [3u32, 5, 7] {
        let op = p(prime);
        let n_max = 2 * prime - 3;
        let classifier = Classifier::new(op, n_max, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20260810);
        for degree in 1..=n_max {
            for omega in partitions_of(degree) {
                let m = classifier.alpha_basis().monomial(&omega).unwrap().clone();
                let report = classifier.classify(&m).unwrap();
                assert!(report.realizable, "p={prime}, monomial {omega}");
            }
            for i in 0..100 {
                let sigma = classifier
                    .alpha_basis()
                    .random_integral_class(degree, &mut rng)
                    .unwrap();
                let report = classifier.classify(&sigma).unwrap();
                assert!(report.realizable, "p={prime}, degree {degree}, sample {i}");
            }
        }
    }
    println!("AC-11 every class of degree <= 2p-3 is realizable (alpha-monomials + 100 random per degree), p in {{3,5,7}}: PASS");
}

#[test]
fn ac12_strict_simple_separation() {
    // separation at p = 5
    let c5 = Classifier::new(p(5), 10, 12).unwrap();
    let a12 = alpha_coeff(2, 1, 12).unwrap();
    let (strict, wit) = c5.strictly_simple_realizable(&a12).unwrap();
    assert!(!strict);
    assert_eq!(wit[0].s_number, rat_int(2));
    assert_eq!(
        c5.classify(&a12).unwrap().classification,
        Classification::Realizable
    );

    // 20 seeded-random elements of (p, alpha_{p-1}^{(p)}, alpha_{p^2-1}^{(p)})
    // in degrees <= 10 have every characteristic number divisible by p
    for prime in [3u32, 5] {
        let op = p(prime);
        let classifier = Classifier::new(op, 10, 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(777);
        let mut gens: Vec<GradedElement> = Vec::new();
        let mut k = prime - 1;
        while k <= 10 {
            gens.push(alpha_coeff(prime as i64, k, 12).unwrap());
            k = (k + 1) * prime - 1;
        }
        let mut tested = 0;
        while tested < 20 {
            let degree = 1 + (tested as u32 % 10);
            let mut element = classifier
                .alpha_basis()
                .random_integral_class(degree, &mut rng)
                .unwrap()
                .scale(&rat_int(prime as i64));
            for g in &gens {
                if g.degree() > degree {
                    continue;
                }
                let lam = if g.degree() == degree {
                    GradedElement::one()
                } else {
                    classifier
                        .alpha_basis()
                        .random_integral_class(degree - g.degree(), &mut rng)
                        .unwrap()
                };
                element = element.add(&lam.mul(g));
            }
            if element.is_zero() {
                continue;
            }
            tested += 1;
            for (omega, value) in s_numbers(&element, classifier.beta_basis()).unwrap() {
                assert!(
                    cobord::p_valuation(&value, op).is_at_least(1),
                    "p={prime}, degree {degree}, s{omega} = {value}"
                );
            }
            // membership in the smaller ideal implies plain realizability
            assert!(classifier.classify(&element).unwrap().realizable);
        }
    }
    println!("AC-12 alpha[2,1] separates strict from plain realizability at p=5; 20 ideal elements per prime have all s_w == 0 mod p: PASS");
}

/// Independent counting oracle for the lattice index: enumerates partitions
/// with its own recursion and counts parts of the form p^k − 1.
fn iota_count(n: u32, prime: u32) -> u32 {
    fn walk(remaining: u32, max: u32, stack: &mut Vec<u32>, total: &mut u32, prime: u32) {
        if remaining == 0 {
            *total += stack
                .iter()
                .filter(|&&x| {
                    let mut m = x as u64 + 1;
                    while m.is_multiple_of(prime as u64) {
                        m /= prime as u64;
                    }
                    m == 1 && x as u64 + 1 >= prime as u64
                })
                .count() as u32;
            return;
        }
        for first in (1..=remaining.min(max)).rev() {
            stack.push(first);
            walk(remaining - first, first, stack, total, prime);
            stack.pop();
        }
    }
    let mut total = 0;
    walk(n, n, &mut Vec::new(), &mut total, prime);
    total
}

#[test]
fn ac13_lattice_certification() {
    let basis = GeneratorBasis::alpha(p(3), 8, 12).unwrap();
    let mut observed = Vec::new();
    for n in 1..=8u32 {
        let v = basis.lattice_index_valuation(n).unwrap();
        assert_eq!(v, iota_count(n, 3), "n={n}");
        observed.push(v);
    }
    assert_eq!(&observed[..4], &[0, 1, 1, 3], "documented leading values");
    println!("AC-13 lattice index valuations match the counting oracle for p=3, n <= 8 (values {observed:?}): PASS");
}

#[test]
fn ac14_cli_contract() {
    // 1. classify in JSON mode, bit-exact
    let out = run_command(["classify", "--p", "3", "--expr", "CP[4]", "--json"].map(String::from));
    assert_eq!(out.status, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout.trim(),
        r#"{"p":3,"degree":4,"in_omega_p":true,"realizable":false,"classification":"NotRealizable","witnesses":[{"partition":[4],"s_number":"-5","residue_mod_p":1}]}"#
    );

    // 2. the equivalence suite exits 0
    let out =
        run_command(["verify", "--p", "3", "--suite", "charnum-equivalence"].map(String::from));
    assert_eq!(out.status, 0, "{}\n{}", out.stdout, out.stderr);

    // 3. gamma prints the exact element
    let out = run_command(["gamma", "--p", "3", "--weights", "2"].map(String::from));
    assert_eq!(out.status, 0);
    assert_eq!(out.stdout.trim(), "(3/2)*b[1]");
    let out = run_command(["gamma", "--p", "3", "--weights", "2", "--json"].map(String::from));
    let parsed: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(parsed["element"], "(3/2)*b[1]");
    println!("AC-14 CLI contract (classify JSON bit-exact, verify exit 0, gamma output): PASS");
}
