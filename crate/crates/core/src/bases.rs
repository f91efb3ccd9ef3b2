//! Generator systems for the p-local cobordism ring and exact change of basis.
//!
//! A `GeneratorBasis` holds one generator per degree together with cached
//! per-degree solvers for expanding a class over the monomials g_ω = ∏ g_i^{k_i}.
//! Three families are built with the same machinery:
//!
//! * the α-basis: gₙ = αₙ^{(p₁)} when (p−1) ∤ n, gₙ = αₙ^{(p)} when
//!   n = p^k − 1, and an honest manifold combination (ℂPⁿ and Milnor
//!   hypersurfaces, via extended gcd on leading coefficients) in the
//!   remaining dimensions — its monomials span the p-local cobordism ring;
//! * the β-basis (Chern–Dold coefficients) — expansion coefficients in it
//!   are the characteristic numbers s_ω;
//! * the b-basis of the ambient ring itself.
//!
//! Solvers are built eagerly at construction and read-only afterwards, so a
//! basis can be queried concurrently.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::fgl::{alpha_coeff, cp_class, exponential, milnor_hypersurface};
use crate::graded::GradedElement;
use crate::partition::{is_p_power_minus_one, partitions_of, Partition};
use crate::rational::{p_valuation, rat, OddPrime, PValuation, Rational};

/// How a generator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// αₙ^{(p₁)} for the prime primitive root p₁, dimensions with (p−1) ∤ n.
    AlphaP1,
    /// αₙ^{(p)} in dimensions n = p^k − 1.
    AlphaP,
    /// Extended-gcd combination of [ℂPⁿ] and Milnor hypersurfaces in the
    /// remaining dimensions divisible by p − 1.
    Filler,
    /// Chern–Dold coefficient βₙ.
    Beta,
    /// Ambient generator bₙ.
    B,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::AlphaP1 => "alpha-p1",
            Provenance::AlphaP => "alpha-p",
            Provenance::Filler => "filler",
            Provenance::Beta => "beta",
            Provenance::B => "b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Alpha,
    Beta,
    B,
}

struct DegreeSolver {
    parts: Vec<Partition>,
    /// Exact inverse of the (b-monomial × basis-monomial) transition matrix.
    inverse: Vec<Vec<Rational>>,
    det: Rational,
}

pub struct GeneratorBasis {
    kind: BasisKind,
    p: Option<OddPrime>,
    p1: Option<u32>,
    n_max: u32,
    trunc: usize,
    gens: Vec<(GradedElement, Provenance)>,
    monomials: HashMap<Partition, GradedElement>,
    solvers: Vec<DegreeSolver>,
}

/// Smallest prime p₁ generating the cyclic group (ℤ/p)*.
pub fn primitive_prime_root(p: OddPrime) -> u32 {
    let pv = p.get();
    let mut q = 2u32;
    loop {
        if crate::rational::is_prime(q)
            && !q.is_multiple_of(pv)
            && multiplicative_order(q, pv) == pv - 1
        {
            return q;
        }
        q += 1;
    }
}

fn multiplicative_order(a: u32, p: u32) -> u32 {
    let mut x = (a % p) as u64;
    let mut order = 1;
    while x != 1 {
        x = (x * (a % p) as u64) % p as u64;
        order += 1;
    }
    order
}

/// Filler generator for a dimension n divisible by p−1 with n ≠ p^k − 1:
/// fold [ℂPⁿ], H(2,n−1), …, H(n−1,2) with extended gcd on their leading
/// coefficients, stopping as soon as the accumulated leading coefficient is a
/// p-unit (later candidates get coefficient zero). n+1 is not a power of p in
/// these dimensions, so some prefix always succeeds.
fn filler_generator(n: u32, p: OddPrime, trunc: usize) -> Result<GradedElement> {
    let mut candidates = vec![cp_class(n)];
    for m in 2..n {
        candidates.push(milnor_hypersurface(m, n + 1 - m, trunc)?);
    }
    let mut acc = candidates[0].clone();
    let mut lead = leading_integer(&acc);
    for cand in &candidates[1..] {
        if p_unit(&lead, p) {
            break;
        }
        let cand_lead = leading_integer(cand);
        let eg = lead.extended_gcd(&cand_lead);
        acc = acc
            .scale(&Rational::from_integer(eg.x))
            .add(&cand.scale(&Rational::from_integer(eg.y)));
        lead = eg.gcd;
    }
    assert!(
        p_unit(&lead, p),
        "filler search failed in dimension {n}: leading gcd {lead} is divisible by {p}"
    );
    Ok(acc)
}

fn leading_integer(e: &GradedElement) -> BigInt {
    let lead = e.leading_b_coefficient();
    assert!(
        lead.denom().is_one(),
        "filler candidates have integer leading coefficients"
    );
    lead.numer().clone()
}

fn p_unit(n: &BigInt, p: OddPrime) -> bool {
    !n.is_zero() && !(n % p.to_bigint()).is_zero()
}

impl GeneratorBasis {
    /// The α-basis for the prime p, generators in degrees 1..=n_max.
    pub fn alpha(p: OddPrime, n_max: u32, trunc: usize) -> Result<Self> {
        if trunc <= n_max as usize {
            return Err(Error::TruncationExceeded {
                needed: n_max as usize + 1,
                truncation: trunc,
            });
        }
        let p1 = primitive_prime_root(p);
        let mut gens = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            let (g, prov) = if n % (p.get() - 1) != 0 {
                (alpha_coeff(p1 as i64, n, trunc)?, Provenance::AlphaP1)
            } else if is_p_power_minus_one(n, p) {
                (alpha_coeff(p.get() as i64, n, trunc)?, Provenance::AlphaP)
            } else {
                (filler_generator(n, p, trunc)?, Provenance::Filler)
            };
            gens.push((g, prov));
        }
        Ok(Self::build(
            BasisKind::Alpha,
            Some(p),
            Some(p1),
            n_max,
            trunc,
            gens,
        ))
    }

    /// The β-basis (Chern–Dold coefficients); expansion over it computes s_ω.
    pub fn beta(n_max: u32, trunc: usize) -> Result<Self> {
        if trunc <= n_max as usize {
            return Err(Error::TruncationExceeded {
                needed: n_max as usize + 1,
                truncation: trunc,
            });
        }
        let e = exponential(trunc);
        let mut gens = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            gens.push((e.coefficient(n as usize + 1)?, Provenance::Beta));
        }
        Ok(Self::build(BasisKind::Beta, None, None, n_max, trunc, gens))
    }

    /// The tautological b-basis of the ambient ring.
    pub fn b_basis(n_max: u32) -> Self {
        let gens = (1..=n_max)
            .map(|n| (GradedElement::generator(n), Provenance::B))
            .collect();
        Self::build(BasisKind::B, None, None, n_max, n_max as usize + 1, gens)
    }

    fn build(
        kind: BasisKind,
        p: Option<OddPrime>,
        p1: Option<u32>,
        n_max: u32,
        trunc: usize,
        gens: Vec<(GradedElement, Provenance)>,
    ) -> Self {
        // triangularity: each generator must hit its single-part monomial
        for (i, (g, _)) in gens.iter().enumerate() {
            assert_eq!(g.degree(), i as u32 + 1);
            assert!(
                !g.leading_b_coefficient().is_zero(),
                "generator in degree {} has zero leading coefficient",
                i + 1
            );
        }
        let mut monomials: HashMap<Partition, GradedElement> = HashMap::new();
        monomials.insert(Partition::empty(), GradedElement::one());
        let mut solvers = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            let parts = partitions_of(n);
            for omega in &parts {
                let first = omega.parts()[0];
                let rest = Partition::new(omega.parts()[1..].to_vec());
                let value = gens[first as usize - 1].0.mul(&monomials[&rest]);
                monomials.insert(omega.clone(), value);
            }
            let dim = parts.len();
            let mut matrix = vec![vec![Rational::zero(); dim]; dim];
            for (col, omega) in parts.iter().enumerate() {
                let g_omega = &monomials[omega];
                for (row, row_part) in parts.iter().enumerate() {
                    matrix[row][col] = g_omega.coefficient_of(row_part);
                }
            }
            let (inverse, det) = invert_matrix(matrix)
                .unwrap_or_else(|| panic!("transition matrix singular in degree {n}"));
            solvers.push(DegreeSolver {
                parts,
                inverse,
                det,
            });
        }
        GeneratorBasis {
            kind,
            p,
            p1,
            n_max,
            trunc,
            gens,
            monomials,
            solvers,
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn prime(&self) -> Option<OddPrime> {
        self.p
    }

    pub fn prime_primitive_root(&self) -> Option<u32> {
        self.p1
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    /// Generator in degree n with its provenance.
    pub fn generator(&self, n: u32) -> Result<(&GradedElement, Provenance)> {
        if n == 0 || n > self.n_max {
            return Err(Error::DegreeExceedsBasis {
                degree: n,
                max: self.n_max,
            });
        }
        let (g, prov) = &self.gens[n as usize - 1];
        Ok((g, *prov))
    }

    pub fn generators(&self) -> impl Iterator<Item = (u32, &GradedElement, Provenance)> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, (g, prov))| (i as u32 + 1, g, *prov))
    }

    /// The monomial g_ω = ∏ g_i^{k_i}.
    pub fn monomial(&self, omega: &Partition) -> Result<&GradedElement> {
        self.monomials.get(omega).ok_or(Error::DegreeExceedsBasis {
            degree: omega.weight(),
            max: self.n_max,
        })
    }

    /// Exact coefficients r_ω with Σ r_ω g_ω = σ; zero coefficients omitted.
    pub fn expand(&self, sigma: &GradedElement) -> Result<BTreeMap<Partition, Rational>> {
        let n = sigma.degree();
        let mut out = BTreeMap::new();
        if n == 0 {
            let c = sigma.coefficient_of(&Partition::empty());
            if !c.is_zero() {
                out.insert(Partition::empty(), c);
            }
            return Ok(out);
        }
        if n > self.n_max {
            return Err(Error::DegreeExceedsBasis {
                degree: n,
                max: self.n_max,
            });
        }
        let solver = &self.solvers[n as usize - 1];
        let rhs: Vec<Rational> = solver
            .parts
            .iter()
            .map(|w| sigma.coefficient_of(w))
            .collect();
        for (i, row) in solver.inverse.iter().enumerate() {
            let mut acc = Rational::zero();
            for (r, v) in row.iter().zip(rhs.iter()) {
                if !r.is_zero() && !v.is_zero() {
                    acc += r * v;
                }
            }
            if !acc.is_zero() {
                out.insert(solver.parts[i].clone(), acc);
            }
        }
        Ok(out)
    }

    /// Reassemble Σ r_ω g_ω from expansion coefficients.
    pub fn combine(
        &self,
        degree: u32,
        coeffs: &BTreeMap<Partition, Rational>,
    ) -> Result<GradedElement> {
        let mut acc = GradedElement::zero(degree);
        for (omega, c) in coeffs {
            acc = acc.add(&self.monomial(omega)?.scale(c));
        }
        Ok(acc)
    }

    /// v_p of the determinant of the degree-n transition matrix from basis
    /// monomials to b-monomials — the p-part of the lattice index.
    pub fn lattice_index_valuation(&self, n: u32) -> Result<u32> {
        let p = self.p.expect("lattice index needs a p-local basis");
        if n == 0 {
            return Ok(0);
        }
        if n > self.n_max {
            return Err(Error::DegreeExceedsBasis {
                degree: n,
                max: self.n_max,
            });
        }
        match p_valuation(&self.solvers[n as usize - 1].det, p) {
            PValuation::Finite(v) => {
                assert!(v >= 0, "transition determinant must be a p-integer");
                Ok(v as u32)
            }
            PValuation::Infinite => unreachable!("determinant of an invertible matrix is nonzero"),
        }
    }

    /// Deterministic pseudo-random p-integral class of the given degree:
    /// an integer-over-p-unit combination of basis monomials.
    pub fn random_integral_class<R: Rng>(&self, degree: u32, rng: &mut R) -> Result<GradedElement> {
        if degree == 0 || degree > self.n_max {
            return Err(Error::DegreeExceedsBasis {
                degree,
                max: self.n_max,
            });
        }
        let parts = partitions_of(degree);
        let mut acc = GradedElement::zero(degree);
        for omega in &parts {
            let numer = rng.gen_range(-9i64..=9);
            if numer == 0 {
                continue;
            }
            let denom = *[1i64, 1, 1, 2, 4].get(rng.gen_range(0..5)).unwrap();
            acc = acc.add(&self.monomial(omega)?.scale(&rat(numer, denom)));
        }
        if acc.is_zero() {
            acc = self.monomial(&Partition::single(degree))?.clone();
        }
        Ok(acc)
    }
}

/// Characteristic numbers s_ω(σ): the coefficients of σ over the β-monomials.
/// For σ with integer b-coefficients every output is an integer.
pub fn s_numbers(
    sigma: &GradedElement,
    beta_basis: &GeneratorBasis,
) -> Result<BTreeMap<Partition, Rational>> {
    assert_eq!(
        beta_basis.kind(),
        BasisKind::Beta,
        "s-numbers are expansion coefficients over the beta basis"
    );
    beta_basis.expand(sigma)
}

/// Gauss–Jordan inverse with exact rational arithmetic. Returns the inverse
/// and the determinant, or None if singular.
fn invert_matrix(mut m: Vec<Vec<Rational>>) -> Option<(Vec<Vec<Rational>>, Rational)> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m[r][col].is_zero())?;
        if pivot_row != col {
            m.swap(col, pivot_row);
            inv.swap(col, pivot_row);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        let scale = Rational::one() / &pivot;
        for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
            if !x.is_zero() {
                *x *= &scale;
            }
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone();
            for j in 0..n {
                if !m[col][j].is_zero() {
                    let delta = &m[col][j] * &factor;
                    m[row][j] -= delta;
                }
                if !inv[col][j].is_zero() {
                    let delta = &inv[col][j] * &factor;
                    inv[row][j] -= delta;
                }
            }
        }
    }
    Some((inv, det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(n: u32) -> OddPrime {
        OddPrime::new(n).unwrap()
    }

    fn el(terms: Vec<(Vec<u32>, i64)>) -> GradedElement {
        let degree = terms[0].0.iter().sum();
        GradedElement::from_terms(
            degree,
            terms
                .into_iter()
                .map(|(parts, c)| (Partition::new(parts), rat_int(c))),
        )
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_prime_root(p(3)), 2);
        assert_eq!(primitive_prime_root(p(5)), 2);
        assert_eq!(primitive_prime_root(p(7)), 3); // 2 has order 3 mod 7
        assert_eq!(primitive_prime_root(p(11)), 2);
    }

    #[test]
    fn alpha_basis_first_generators() {
        let basis = GeneratorBasis::alpha(p(3), 4, 8).unwrap();
        let (g1, prov1) = basis.generator(1).unwrap();
        assert_eq!(g1, &GradedElement::generator(1).scale(&rat_int(-2)));
        assert_eq!(prov1, Provenance::AlphaP1);

        let (g2, prov2) = basis.generator(2).unwrap();
        assert_eq!(g2, &el(vec![(vec![1, 1], 36), (vec![2], -24)]));
        assert_eq!(prov2, Provenance::AlphaP); // 2 = 3¹ − 1

        let (g4, prov4) = basis.generator(4).unwrap();
        assert_eq!(prov4, Provenance::Filler);
        assert_eq!(g4, &cp_class(4)); // v₃(5) = 0, so the fold stops at [ℂP⁴]
    }

    #[test]
    fn alpha_basis_leading_valuations() {
        // v_p(leading) = 1 exactly in dimensions p^k − 1, else 0
        for prime in [3u32, 5] {
            let op = p(prime);
            let basis = GeneratorBasis::alpha(op, 8, 10).unwrap();
            for (n, g, _) in basis.generators() {
                let v = p_valuation(&g.leading_b_coefficient(), op);
                let expect = if is_p_power_minus_one(n, op) { 1 } else { 0 };
                assert_eq!(v, PValuation::Finite(expect), "p={prime}, n={n}");
            }
        }
    }

    #[test]
    fn p5_degree4_generator_is_p_series_coefficient() {
        let basis = GeneratorBasis::alpha(p(5), 4, 8).unwrap();
        let (g4, prov) = basis.generator(4).unwrap();
        assert_eq!(prov, Provenance::AlphaP); // 4 = 5¹ − 1
        assert_eq!(g4, &alpha_coeff(5, 4, 8).unwrap());
        // leading coefficient 5 − 5⁵ has v₅ = 1
        assert_eq!(
            p_valuation(&g4.leading_b_coefficient(), p(5)),
            PValuation::Finite(1)
        );
    }

    #[test]
    fn triangularity() {
        let basis = GeneratorBasis::alpha(p(3), 8, 10).unwrap();
        for (n, g, _) in basis.generators() {
            let lead = g.leading_b_coefficient();
            let dec = g.decomposable_part();
            let reconstructed = GradedElement::monomial(Partition::single(n), lead).add(&dec);
            assert_eq!(&reconstructed, g);
            assert!(dec.terms().all(|(w, _)| w.len() >= 2));
        }
    }

    #[test]
    fn expand_examples() {
        let basis = GeneratorBasis::alpha(p(3), 6, 8).unwrap();

        // basis element expands to itself
        let (g2, _) = basis.generator(2).unwrap();
        let r = basis.expand(&g2.clone()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&Partition::single(2)], rat_int(1));

        // b₁² = (g₁/−2)² = g₁²/4
        let b1sq = el(vec![(vec![1, 1], 1)]);
        let r = basis.expand(&b1sq).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&Partition::new(vec![1, 1])], rat(1, 4));

        // degree out of range
        let too_big = GradedElement::generator(7);
        assert!(matches!(
            basis.expand(&too_big),
            Err(Error::DegreeExceedsBasis { degree: 7, max: 6 })
        ));
    }

    #[test]
    fn expand_round_trip_random() {
        let basis = GeneratorBasis::alpha(p(3), 8, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let degree = rng.gen_range(1..=8);
            let sigma = basis.random_integral_class(degree, &mut rng).unwrap();
            let coeffs = basis.expand(&sigma).unwrap();
            let back = basis.combine(degree, &coeffs).unwrap();
            assert_eq!(back, sigma);
        }
    }

    #[test]
    fn s_numbers_examples() {
        let beta = GeneratorBasis::beta(8, 10).unwrap();

        // s_(1)([ℂP¹]) = −2 since 2b₁ = −2β₁
        let s = s_numbers(&cp_class(1), &beta).unwrap();
        assert_eq!(s[&Partition::single(1)], rat_int(-2));

        // s_(2)(α₂^{(3)}) = 24 and s_(1,1) = −12
        let s = s_numbers(&alpha_coeff(3, 2, 10).unwrap(), &beta).unwrap();
        assert_eq!(s[&Partition::single(2)], rat_int(24));
        assert_eq!(s[&Partition::new(vec![1, 1])], rat_int(-12));

        // s_(n)([ℂPⁿ]) = −(n+1)
        for n in 1..=8 {
            let s = s_numbers(&cp_class(n), &beta).unwrap();
            assert_eq!(s[&Partition::single(n)], rat_int(-(n as i64 + 1)));
        }
    }

    #[test]
    fn s_numbers_integer_on_integer_classes() {
        let beta = GeneratorBasis::beta(6, 8).unwrap();
        let sigma = el(vec![(vec![3, 2, 1], 7), (vec![6], -2), (vec![2, 2, 2], 3)]);
        for (_, v) in s_numbers(&sigma, &beta).unwrap() {
            assert!(v.denom().is_one());
        }
    }

    #[test]
    fn beta_b_change_is_unimodular() {
        // the b↔β transition has determinant ±1 in every degree ≤ 12
        let beta = GeneratorBasis::beta(12, 13).unwrap();
        for n in 1..=12u32 {
            let det = &beta.solvers[n as usize - 1].det;
            assert!(
                det == &rat_int(1) || det == &rat_int(-1),
                "degree {n}: determinant {det}"
            );
        }
    }

    #[test]
    fn lattice_index_examples() {
        let basis3 = GeneratorBasis::alpha(p(3), 6, 8).unwrap();
        // degree 2: partitions (2),(1,1); only (2) has a part of the form 3^k−1
        assert_eq!(basis3.lattice_index_valuation(2).unwrap(), 1);
        // degree 4: (2,2) contributes 2 and (2,1,1) contributes 1
        assert_eq!(basis3.lattice_index_valuation(4).unwrap(), 3);

        let basis5 = GeneratorBasis::alpha(p(5), 4, 8).unwrap();
        assert_eq!(basis5.lattice_index_valuation(3).unwrap(), 0);
    }

    #[test]
    fn filler_fold_uses_hypersurfaces_when_needed() {
        // first dimension where [ℂPⁿ] alone is not a p-unit: n = 14, p = 3
        // (15 = 3·5); the fold must reach H(3,12) where gcd(15, C(15,3)) = 5.
        let g = filler_generator(14, p(3), 16).unwrap();
        let lead = g.leading_b_coefficient();
        assert_eq!(p_valuation(&lead, p(3)), PValuation::Finite(0));
        assert!(lead.denom().is_one());
    }

    #[test]
    fn invert_matrix_small() {
        let m = vec![vec![rat_int(2), rat_int(1)], vec![rat_int(1), rat_int(1)]];
        let (inv, det) = invert_matrix(m).unwrap();
        assert_eq!(det, rat_int(1));
        assert_eq!(inv[0], vec![rat_int(1), rat_int(-1)]);
        assert_eq!(inv[1], vec![rat_int(-1), rat_int(2)]);

        let singular = vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]];
        assert!(invert_matrix(singular).is_none());
    }
}
