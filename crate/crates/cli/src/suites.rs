//! Built-in verification suites.
//!
//! Each suite runs a batch of exact checks and reports per-case pass/fail
//! with expected/actual strings; a failing case makes the whole suite fail
//! (exit status 1 with a machine-readable report). Randomized suites are
//! deterministic given (p, truncation, seed).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cobord::{
    alpha_coeff, builtin_action, congruent_mod_p_omega, cp_class, gamma_p, k_series, logarithm,
    partitions_of, rat, rat_int, realize_class, s_numbers, BuiltinAction, Classifier,
    GeneratorBasis, GradedElement, OddPrime, WeightList,
};

use crate::CliError;

#[derive(Debug, Clone, serde::Serialize)]
pub struct CaseResult {
    pub case: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub p: u32,
    pub trunc: usize,
    pub seed: u64,
    pub passed: bool,
    pub cases: Vec<CaseResult>,
}

impl SuiteOutcome {
    fn new(suite: &str, p: OddPrime, trunc: usize, seed: u64) -> Self {
        SuiteOutcome {
            suite: suite.to_string(),
            p: p.get(),
            trunc,
            seed,
            passed: true,
            cases: Vec::new(),
        }
    }

    fn case(
        &mut self,
        name: impl Into<String>,
        pass: bool,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) {
        self.passed &= pass;
        self.cases.push(CaseResult {
            case: name.into(),
            pass,
            expected: expected.into(),
            actual: actual.into(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "roundtrip",
    "power-system",
    "theorem-form",
    "divisibility-claim",
    "charnum-equivalence",
    "smdim",
    "fixed-points",
    "strict-simple",
];

pub fn run_suite(
    name: &str,
    p: OddPrime,
    trunc: usize,
    seed: u64,
) -> Result<SuiteOutcome, CliError> {
    match name {
        "roundtrip" => roundtrip(p, trunc, seed),
        "power-system" => power_system(p, trunc, seed),
        "theorem-form" => theorem_form(p, trunc, seed),
        "divisibility-claim" => divisibility_claim(p, trunc, seed),
        "charnum-equivalence" => charnum_equivalence(p, trunc, seed),
        "smdim" => smdim(p, trunc, seed),
        "fixed-points" => fixed_points(p, trunc, seed),
        "strict-simple" => strict_simple(p, trunc, seed),
        other => Err(CliError::Usage(format!(
            "unknown suite '{other}'; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

fn is_identity(series: &cobord::USeries) -> bool {
    let Ok(first) = series.coefficient(1) else {
        return false;
    };
    if first != GradedElement::one() {
        return false;
    }
    (2..=series.truncation()).all(|k| series.coefficient(k).map(|c| c.is_zero()).unwrap_or(false))
}

/// g(e(u)) = e(g(u)) = u, exact up to the truncation.
fn roundtrip(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("roundtrip", p, trunc, seed);
    let g = logarithm(trunc);
    let e = cobord::exponential(trunc);
    let ge = g.compose(&e)?;
    let eg = e.compose(&g)?;
    out.case("g(e(u)) == u", is_identity(&ge), "u", ge.render());
    out.case("e(g(u)) == u", is_identity(&eg), "u", eg.render());
    Ok(out)
}

/// [[u]_a]_b = [u]_{ab} = [[u]_b]_a for a,b in {2,3,5,7}, and
/// g([u]_k) = k·g(u) for 0 < |k| <= 7.
fn power_system(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("power-system", p, trunc, seed);
    let t = trunc.min(10);
    for a in [2i64, 3, 5, 7] {
        for b in [2i64, 3, 5, 7] {
            let composed = k_series(a, t)?.compose(&k_series(b, t)?)?;
            let direct = k_series(a * b, t)?;
            out.case(
                format!("[[u]_{b}]_{a} == [u]_{}", a * b),
                composed == direct,
                "equal series",
                if composed == direct {
                    "equal series"
                } else {
                    "mismatch"
                }
                .to_string(),
            );
            let swapped = k_series(b, t)?.compose(&k_series(a, t)?)?;
            out.case(
                format!("[[u]_{b}]_{a} == [[u]_{a}]_{b}"),
                composed == swapped,
                "equal series",
                if composed == swapped {
                    "equal series"
                } else {
                    "mismatch"
                }
                .to_string(),
            );
        }
    }
    let g = logarithm(trunc);
    for k in (-7i64..=7).filter(|&k| k != 0) {
        let lhs = g.compose(&k_series(k, trunc)?)?;
        let rhs = g.scalar_mul(&rat_int(k));
        out.case(
            format!("g([u]_{k}) == {k}*g(u)"),
            lhs == rhs,
            "equal series",
            if lhs == rhs {
                "equal series"
            } else {
                "mismatch"
            }
            .to_string(),
        );
    }
    Ok(out)
}

/// Every power-system coefficient α_n^{(q)}, q <= 7, expands over the α-basis
/// with p-integral coefficients.
fn theorem_form(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("theorem-form", p, trunc, seed);
    let n_max = 10.min(trunc as u32 - 1);
    let basis = GeneratorBasis::alpha(p, n_max, trunc)?;
    for q in 2..=7i64 {
        let mut bad = Vec::new();
        for n in 1..=n_max {
            let coeffs = basis.expand(&alpha_coeff(q, n, trunc)?)?;
            for (omega, c) in coeffs {
                if !cobord::is_p_integral(&c, p) {
                    bad.push(format!("n={n} {omega}: {}", cobord::render_rational(&c)));
                }
            }
        }
        out.case(
            format!("alpha_n^({q}) p-integral over the alpha basis, n <= {n_max}"),
            bad.is_empty(),
            "all coefficients p-integral",
            if bad.is_empty() {
                "all coefficients p-integral".to_string()
            } else {
                bad.join("; ")
            },
        );
    }
    Ok(out)
}

/// The division claim for the p-series coefficients: α_l^{(p)}/p should
/// expand p-integrally for l != p^k − 1. Reported per l; the engine finds
/// counterexamples exactly where p | l+1 with l+1 not a power of p, and those
/// are surfaced as failing cases (exit status 1), not hidden.
fn divisibility_claim(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("divisibility-claim", p, trunc, seed);
    let l_max = 12.min(trunc as u32 - 1);
    let basis = GeneratorBasis::alpha(p, l_max, trunc)?;

    // every coefficient of [u]_p is an integer divisible by p
    let s = k_series(p.get() as i64, trunc)?;
    let mut bad = Vec::new();
    for (j, c) in s.terms() {
        if j > l_max as usize + 1 {
            break;
        }
        for (omega, q) in c.terms() {
            let integral = q.denom() == &num_bigint::BigInt::from(1);
            let divisible = cobord::p_valuation(q, p).is_at_least(1);
            if !integral || !divisible {
                bad.push(format!("u^{j} {omega}: {}", cobord::render_rational(q)));
            }
        }
    }
    out.case(
        format!("[u]_{p} coefficients divisible by {p} (n <= {l_max})"),
        bad.is_empty(),
        "all divisible",
        if bad.is_empty() {
            "all divisible".to_string()
        } else {
            bad.join("; ")
        },
    );

    for l in 1..=l_max {
        if cobord::partition::is_p_power_minus_one(l, p) {
            continue;
        }
        let candidate = alpha_coeff(p.get() as i64, l, trunc)?.scale(&rat(1, p.get() as i64));
        let coeffs = basis.expand(&candidate)?;
        let worst = coeffs
            .values()
            .map(|c| cobord::p_valuation(c, p))
            .fold(cobord::PValuation::Infinite, cobord::PValuation::min);
        let pass = worst.is_at_least(0);
        out.case(
            format!("alpha_{l}^({p})/{p} expands p-integrally"),
            pass,
            "p-integral expansion",
            if pass {
                "p-integral expansion".to_string()
            } else {
                format!("minimum valuation {worst}")
            },
        );
    }
    Ok(out)
}

/// The two realizability tests agree on every α-monomial of degree <= 10 and
/// on 100 seeded-random p-integral classes per degree.
fn charnum_equivalence(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("charnum-equivalence", p, trunc, seed);
    let n_max = 10.min(trunc as u32 - 1);
    let classifier = Classifier::new(p, n_max, trunc)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for degree in 1..=n_max {
        let mut tested = 0usize;
        let mut disagreements = Vec::new();
        for omega in partitions_of(degree) {
            let m = classifier.alpha_basis().monomial(&omega)?.clone();
            let ideal = classifier.realizable_via_ideal(&m)?.0;
            let charnum = classifier.realizable_via_charnum(&m)?.0;
            tested += 1;
            if ideal != charnum {
                disagreements.push(format!("monomial {omega}: ideal={ideal} charnum={charnum}"));
            }
        }
        for _ in 0..100 {
            let sigma = classifier
                .alpha_basis()
                .random_integral_class(degree, &mut rng)?;
            let ideal = classifier.realizable_via_ideal(&sigma)?.0;
            let charnum = classifier.realizable_via_charnum(&sigma)?.0;
            tested += 1;
            if ideal != charnum {
                disagreements.push(format!("random class: ideal={ideal} charnum={charnum}"));
            }
        }
        out.case(
            format!("degree {degree}: ideal test == characteristic-number test ({tested} classes)"),
            disagreements.is_empty(),
            "zero discrepancies",
            if disagreements.is_empty() {
                "zero discrepancies".to_string()
            } else {
                disagreements.join("; ")
            },
        );
    }
    Ok(out)
}

/// Every class of degree <= 2p−3 is realizable: α-monomials and 100
/// seeded-random p-integral classes per degree.
fn smdim(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("smdim", p, trunc, seed);
    let n_max = 2 * p.get() - 3;
    if trunc <= n_max as usize {
        return Err(CliError::Usage(format!(
            "smdim at p={p} needs --trunc > {n_max}"
        )));
    }
    let classifier = Classifier::new(p, n_max, trunc)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for degree in 1..=n_max {
        let mut tested = 0usize;
        let mut failures = Vec::new();
        for omega in partitions_of(degree) {
            let m = classifier.alpha_basis().monomial(&omega)?.clone();
            tested += 1;
            if !classifier.classify(&m)?.realizable {
                failures.push(format!("monomial {omega}"));
            }
        }
        for _ in 0..100 {
            let sigma = classifier
                .alpha_basis()
                .random_integral_class(degree, &mut rng)?;
            tested += 1;
            if !classifier.classify(&sigma)?.realizable {
                failures.push("random class".to_string());
            }
        }
        out.case(
            format!("degree {degree}: all {tested} classes realizable"),
            failures.is_empty(),
            "all realizable",
            if failures.is_empty() {
                "all realizable".to_string()
            } else {
                failures.join("; ")
            },
        );
    }
    Ok(out)
}

/// Fixed-point realization: the γ values, the projective-space congruence and
/// the two product actions realizing one class.
fn fixed_points(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("fixed-points", p, trunc, seed);
    let needed = p.get() as usize + 2;
    if trunc < needed {
        return Err(CliError::Usage(format!(
            "fixed-points at p={p} needs --trunc >= {needed}"
        )));
    }
    let classifier = Classifier::new(p, p.get() + 1, trunc)?;
    let basis = classifier.alpha_basis();

    if p.get() == 3 {
        let g1 = gamma_p(&WeightList::new(p, &[1])?, trunc)?;
        let expect1 = GradedElement::generator(1).scale(&rat_int(2));
        out.case(
            "gamma_3(1) == 2*b[1]",
            g1 == expect1,
            expect1.render(),
            g1.render(),
        );
        let g2 = gamma_p(&WeightList::new(p, &[2])?, trunc)?;
        let expect2 = GradedElement::generator(1).scale(&rat(3, 2));
        out.case(
            "gamma_3(2) == (3/2)*b[1]",
            g2 == expect2,
            expect2.render(),
            g2.render(),
        );
    }

    // [ℂP^{p−1}] ≡ p·γ_p(1,…,p−1) mod p·(Ω_U⊗ℤ_(p))
    let all: Vec<i64> = (1..p.get() as i64).collect();
    let gamma_all = gamma_p(&WeightList::new(p, &all)?, trunc)?;
    let congruent = congruent_mod_p_omega(
        &cp_class(p.get() - 1),
        &gamma_all.scale(&p.to_rational()),
        basis,
    )?;
    out.case(
        format!(
            "CP[{}] == {p}*gamma_{p}(1..{}) mod {p}",
            p.get() - 1,
            p.get() - 1
        ),
        congruent,
        "congruent",
        if congruent {
            "congruent"
        } else {
            "not congruent"
        }
        .to_string(),
    );

    // two simple actions on ℂP^{p−1} × ℂP¹ realize the product class
    let first = realize_class(&builtin_action(BuiltinAction::ProductFirst, p)?, trunc)?;
    let second = realize_class(&builtin_action(BuiltinAction::ProductSecond, p)?, trunc)?;
    let target = cp_class(p.get() - 1).mul(&cp_class(1));
    for (name, value) in [("product_first", &first), ("product_second", &second)] {
        let ok = congruent_mod_p_omega(value.class(), &target, basis)?;
        out.case(
            format!("realize({name}) == CP[{}]*CP[1] mod {p}", p.get() - 1),
            ok,
            "congruent",
            if ok { "congruent" } else { "not congruent" }.to_string(),
        );
    }
    let ok = congruent_mod_p_omega(first.class(), second.class(), basis)?;
    out.case(
        "realize(product_first) == realize(product_second)",
        ok,
        "congruent",
        if ok { "congruent" } else { "not congruent" }.to_string(),
    );

    // the isolated-fixed-point actions themselves
    let cp_small = realize_class(&builtin_action(BuiltinAction::Cp1, p)?, trunc)?;
    let ok = congruent_mod_p_omega(cp_small.class(), &cp_class(1), basis)?;
    out.case(
        "realize(cp1) == CP[1] mod p",
        ok,
        "congruent",
        if ok { "congruent" } else { "not congruent" }.to_string(),
    );
    Ok(out)
}

/// Separation of the identical-weights test from the plain one, and the
/// all-numbers-vanish property on the smaller ideal.
fn strict_simple(p: OddPrime, trunc: usize, seed: u64) -> Result<SuiteOutcome, CliError> {
    let mut out = SuiteOutcome::new("strict-simple", p, trunc, seed);
    let n_max = 10.min(trunc as u32 - 1);
    let classifier = Classifier::new(p, n_max, trunc)?;

    // α₁^{(2)} = −2b₁ is realizable but not strictly: s_(1) = 2 ≢ 0 mod p
    let a12 = alpha_coeff(2, 1, trunc)?;
    let plain = classifier.classify(&a12)?.realizable;
    let (strict, _) = classifier.strictly_simple_realizable(&a12)?;
    out.case(
        "alpha[2,1] realizable",
        plain,
        "Realizable",
        classifier.classify(&a12)?.classification.to_string(),
    );
    out.case(
        "alpha[2,1] not strictly-simple realizable",
        !strict,
        "witness s_(1) = 2",
        if strict {
            "no witness".to_string()
        } else {
            "witness found".to_string()
        },
    );

    // 20 seeded-random elements of the ideal (p, α_{p−1}^{(p)}, α_{p²−1}^{(p)}, …)
    // restricted to degrees <= n_max: all characteristic numbers vanish mod p
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<GradedElement> = Vec::new();
    let mut k = p.get() - 1;
    while k <= n_max {
        gens.push(alpha_coeff(p.get() as i64, k, trunc)?);
        k = (k + 1) * p.get() - 1;
    }
    let mut failures = Vec::new();
    let mut strict_members = 0usize;
    for trial in 0..20 {
        let degree = rng.gen_range(1..=n_max);
        // p·(random class)
        let mut element = classifier
            .alpha_basis()
            .random_integral_class(degree, &mut rng)?
            .scale(&p.to_rational());
        // plus λ·α_{p^k−1}^{(p)} whenever the degrees fit
        for g in &gens {
            if g.degree() > degree {
                continue;
            }
            let lam_degree = degree - g.degree();
            let lam = if lam_degree == 0 {
                GradedElement::scalar(rat_int(rng.gen_range(-4i64..=4)))
            } else {
                classifier
                    .alpha_basis()
                    .random_integral_class(lam_degree, &mut rng)?
            };
            element = element.add(&lam.mul(g));
        }
        if element.is_zero() {
            continue;
        }
        strict_members += 1;
        let s = s_numbers(&element, classifier.beta_basis())?;
        for (omega, value) in s {
            if !cobord::p_valuation(&value, p).is_at_least(1) {
                failures.push(format!(
                    "trial {trial} degree {degree} {omega}: s = {}",
                    cobord::render_rational(&value)
                ));
            }
        }
        // strictly-simple membership implies plain realizability
        if classifier.strictly_simple_realizable(&element)?.0
            && !classifier.classify(&element)?.realizable
        {
            failures.push(format!("trial {trial}: strict member not plain-realizable"));
        }
    }
    out.case(
        format!("{strict_members} ideal elements have all s_w == 0 mod {p}"),
        failures.is_empty(),
        "all characteristic numbers vanish mod p",
        if failures.is_empty() {
            "all characteristic numbers vanish mod p".to_string()
        } else {
            failures.join("; ")
        },
    );

    Ok(out)
}
