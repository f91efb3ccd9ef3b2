//! Truncated power series in one and two variables with graded coefficients.
//!
//! A `USeries` keeps powers of u up to and including u^T. A series may carry
//! a weight w, in which case the grading law deg(c_j) = j − w is enforced on
//! construction and preserved by every operation (the logarithm and the
//! k-series have w = 1, quotients like u/[u]_x have w = 0). Series without a
//! weight tag are unconstrained apart from each coefficient being
//! homogeneous. Operations never silently extend truncation: binary ops
//! truncate to the minimum of the operands and the result records it.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct USeries {
    trunc: usize,
    weight: Option<i64>,
    coeffs: BTreeMap<usize, GradedElement>,
}

impl USeries {
    /// Assemble a series, dropping zero coefficients and checking the grading
    /// law when a weight is given.
    pub fn new(
        trunc: usize,
        weight: Option<i64>,
        coeffs: impl IntoIterator<Item = (usize, GradedElement)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (j, c) in coeffs {
            if c.is_zero() || j > trunc {
                continue;
            }
            if let Some(w) = weight {
                assert_eq!(
                    c.degree() as i64,
                    j as i64 - w,
                    "grading law violated: coefficient of u^{j} has degree {} in a weight-{w} series",
                    c.degree()
                );
            }
            map.insert(j, c);
        }
        USeries {
            trunc,
            weight,
            coeffs: map,
        }
    }

    pub fn zero(trunc: usize) -> Self {
        USeries::new(trunc, None, [])
    }

    /// The identity series u (weight 1).
    pub fn identity(trunc: usize) -> Self {
        USeries::new(trunc, Some(1), [(1, GradedElement::one())])
    }

    /// The constant series c (weight 0).
    pub fn constant(trunc: usize, c: Rational) -> Self {
        USeries::new(trunc, Some(0), [(0, GradedElement::scalar(c))])
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    /// Coefficient of u^k, for k ≤ T; absent slots are zero of the degree the
    /// grading law dictates (or degree 0 for untagged series).
    pub fn coefficient(&self, k: usize) -> Result<GradedElement> {
        if k > self.trunc {
            return Err(Error::TruncationExceeded {
                needed: k,
                truncation: self.trunc,
            });
        }
        if let Some(c) = self.coeffs.get(&k) {
            return Ok(c.clone());
        }
        let degree = match self.weight {
            Some(w) => (k as i64 - w).max(0) as u32,
            None => 0,
        };
        Ok(GradedElement::zero(degree))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &GradedElement)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    fn result_weight_mul(&self, other: &USeries) -> Option<i64> {
        match (self.weight, other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        }
    }

    pub fn add(&self, other: &USeries) -> USeries {
        let trunc = self.trunc.min(other.trunc);
        let weight = match (self.weight, other.weight) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        let mut coeffs: BTreeMap<usize, GradedElement> = BTreeMap::new();
        for (j, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if *j > trunc {
                continue;
            }
            match coeffs.get_mut(j) {
                Some(acc) => *acc = acc.add(c),
                None => {
                    coeffs.insert(*j, c.clone());
                }
            }
        }
        USeries::new(trunc, weight, coeffs)
    }

    pub fn neg(&self) -> USeries {
        USeries {
            trunc: self.trunc,
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|(&j, c)| (j, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &USeries) -> USeries {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &Rational) -> USeries {
        USeries::new(
            self.trunc,
            self.weight,
            self.coeffs.iter().map(|(&j, x)| (j, x.scale(c))),
        )
    }

    /// Multiply every coefficient by a fixed graded element (weight drops by
    /// its degree).
    pub fn element_mul(&self, e: &GradedElement) -> USeries {
        USeries::new(
            self.trunc,
            self.weight.map(|w| w - e.degree() as i64),
            self.coeffs.iter().map(|(&j, c)| (j, c.mul(e))),
        )
    }

    /// Cauchy product, truncated to the minimum of the two truncations.
    pub fn mul(&self, other: &USeries) -> USeries {
        let trunc = self.trunc.min(other.trunc);
        let mut acc: BTreeMap<usize, GradedElement> = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            if i > trunc {
                break;
            }
            for (&j, b) in &other.coeffs {
                if i + j > trunc {
                    break;
                }
                let prod = a.mul(b);
                match acc.get_mut(&(i + j)) {
                    Some(e) => *e = e.add(&prod),
                    None => {
                        acc.insert(i + j, prod);
                    }
                }
            }
        }
        USeries::new(trunc, self.result_weight_mul(other), acc)
    }

    pub fn pow(&self, exp: u32) -> USeries {
        let mut out = USeries::constant(self.trunc, Rational::one());
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// f(h(u)); h must have zero constant term.
    pub fn compose(&self, h: &USeries) -> Result<USeries> {
        if h.coeffs.contains_key(&0) {
            return Err(Error::NonzeroConstantTerm);
        }
        let trunc = self.trunc.min(h.trunc);
        let weight = match (self.weight, h.weight) {
            (Some(wf), Some(1)) => Some(wf),
            _ => None,
        };
        let mut acc: BTreeMap<usize, GradedElement> = BTreeMap::new();
        if let Some(c0) = self.coeffs.get(&0) {
            acc.insert(0, c0.clone());
        }
        let mut power = h.clone();
        for k in 1..=trunc {
            if let Some(ck) = self.coeffs.get(&k) {
                for (&j, c) in &power.coeffs {
                    if j > trunc {
                        break;
                    }
                    let prod = c.mul(ck);
                    match acc.get_mut(&j) {
                        Some(e) => *e = e.add(&prod),
                        None => {
                            acc.insert(j, prod);
                        }
                    }
                }
            }
            if k < trunc {
                power = power.mul(h);
            }
        }
        Ok(USeries::new(trunc, weight, acc))
    }

    /// Compositional inverse of f = c·u + O(u²) with c a nonzero rational
    /// scalar; computed degree by degree by a triangular solve.
    pub fn inverse(&self) -> Result<USeries> {
        if self.coeffs.contains_key(&0) {
            return Err(Error::NonScalarLeading);
        }
        let lead = match self.coeffs.get(&1) {
            Some(c) => match c.as_scalar() {
                Some(s) if !s.is_zero() => s,
                _ => return Err(Error::NonScalarLeading),
            },
            None => return Err(Error::NonScalarLeading),
        };
        let trunc = self.trunc;
        let weight = if self.weight == Some(1) {
            Some(1)
        } else {
            None
        };
        let inv_lead = Rational::one() / &lead;
        let mut g = USeries::new(
            trunc,
            weight,
            [(1, GradedElement::scalar(inv_lead.clone()))],
        );
        for m in 2..=trunc {
            let residual = self.compose(&g)?.coefficient(m)?;
            if residual.is_zero() {
                continue;
            }
            let cm = residual.scale(&-&inv_lead);
            let mut coeffs: Vec<(usize, GradedElement)> =
                g.terms().map(|(j, c)| (j, c.clone())).collect();
            coeffs.push((m, cm));
            g = USeries::new(trunc, weight, coeffs);
        }
        Ok(g)
    }

    /// Multiplicative inverse of a series whose constant term is a nonzero
    /// rational scalar.
    pub fn reciprocal(&self) -> Result<USeries> {
        let c0 = match self.coeffs.get(&0) {
            Some(c) => match c.as_scalar() {
                Some(s) if !s.is_zero() => s,
                _ => return Err(Error::NonInvertibleConstant),
            },
            None => return Err(Error::NonInvertibleConstant),
        };
        let trunc = self.trunc;
        let weight = if self.weight == Some(0) {
            Some(0)
        } else {
            None
        };
        let inv_c0 = Rational::one() / &c0;
        let neg_inv_c0 = -&inv_c0;
        let mut out: BTreeMap<usize, GradedElement> = BTreeMap::new();
        out.insert(0, GradedElement::scalar(inv_c0));
        for m in 1..=trunc {
            let mut sum: Option<GradedElement> = None;
            for (&k, fk) in self.coeffs.range(1..=m) {
                if let Some(prev) = out.get(&(m - k)) {
                    let prod = fk.mul(prev);
                    sum = Some(match sum {
                        Some(s) => s.add(&prod),
                        None => prod,
                    });
                }
            }
            if let Some(s) = sum {
                let cm = s.scale(&neg_inv_c0);
                if !cm.is_zero() {
                    out.insert(m, cm);
                }
            }
        }
        Ok(USeries::new(trunc, weight, out))
    }

    /// Divide by u^m: shift all exponents down; every retained coefficient
    /// must have exponent ≥ m. Weight drops by m.
    pub fn divide_by_u(&self, m: usize) -> USeries {
        assert!(
            self.coeffs.keys().all(|&j| j >= m),
            "division by u^{m} leaves negative exponents"
        );
        USeries::new(
            self.trunc - m,
            self.weight.map(|w| w - m as i64),
            self.coeffs.iter().map(|(&j, c)| (j - m, c.clone())),
        )
    }

    /// Rendering: "3*u + [-6*b[1]]*u^2 + …"; scalar coefficients print bare,
    /// graded ones in brackets.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&j, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let coeff = if c.degree() == 0 {
                crate::rational::render_rational(
                    &c.coefficient_of(&crate::partition::Partition::empty()),
                )
            } else {
                format!("[{}]", c.render())
            };
            match j {
                0 => out.push_str(&coeff),
                1 => out.push_str(&format!("{coeff}*u")),
                _ => out.push_str(&format!("{coeff}*u^{j}")),
            }
        }
        out
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Truncated series in two variables u, v with graded coefficients; total
/// degree ≤ T is retained and the grading law reads deg(a_{ij}) = i + j − w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    trunc: usize,
    weight: i64,
    coeffs: BTreeMap<(usize, usize), GradedElement>,
}

impl BiSeries {
    pub fn new(
        trunc: usize,
        weight: i64,
        coeffs: impl IntoIterator<Item = ((usize, usize), GradedElement)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if c.is_zero() || i + j > trunc {
                continue;
            }
            assert_eq!(
                c.degree() as i64,
                (i + j) as i64 - weight,
                "grading law violated at u^{i} v^{j}"
            );
            map.insert((i, j), c);
        }
        BiSeries {
            trunc,
            weight,
            coeffs: map,
        }
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Result<GradedElement> {
        if i + j > self.trunc {
            return Err(Error::TruncationExceeded {
                needed: i + j,
                truncation: self.trunc,
            });
        }
        if let Some(c) = self.coeffs.get(&(i, j)) {
            return Ok(c.clone());
        }
        let degree = ((i + j) as i64 - self.weight).max(0) as u32;
        Ok(GradedElement::zero(degree))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &GradedElement)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        assert_eq!(
            self.weight, other.weight,
            "weight mismatch in bivariate add"
        );
        let trunc = self.trunc.min(other.trunc);
        let mut coeffs: BTreeMap<(usize, usize), GradedElement> = BTreeMap::new();
        for (k, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            match coeffs.get_mut(k) {
                Some(acc) => *acc = acc.add(c),
                None => {
                    coeffs.insert(*k, c.clone());
                }
            }
        }
        BiSeries::new(trunc, self.weight, coeffs)
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut acc: BTreeMap<(usize, usize), GradedElement> = BTreeMap::new();
        for (&(i1, j1), a) in &self.coeffs {
            if i1 + j1 > trunc {
                continue;
            }
            for (&(i2, j2), b) in &other.coeffs {
                if i1 + i2 + j1 + j2 > trunc {
                    continue;
                }
                let key = (i1 + i2, j1 + j2);
                let prod = a.mul(b);
                match acc.get_mut(&key) {
                    Some(e) => *e = e.add(&prod),
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        BiSeries::new(trunc, self.weight + other.weight, acc)
    }

    /// Substitute this (constant-term-free, weight-1) series into a
    /// univariate one: returns f(self).
    pub fn substitute_into(&self, f: &USeries) -> Result<BiSeries> {
        if self.coeffs.contains_key(&(0, 0)) {
            return Err(Error::NonzeroConstantTerm);
        }
        assert_eq!(self.weight, 1, "substitution target must have weight 1");
        let trunc = self.trunc.min(f.truncation());
        let wf = f.weight().expect("substitution needs a weighted series");
        let mut acc: BTreeMap<(usize, usize), GradedElement> = BTreeMap::new();
        let mut power = self.clone();
        for k in 1..=trunc {
            let ck = f.coefficient(k)?;
            if !ck.is_zero() {
                for (key, c) in &power.coeffs {
                    let prod = c.mul(&ck);
                    match acc.get_mut(key) {
                        Some(e) => *e = e.add(&prod),
                        None => {
                            acc.insert(*key, prod);
                        }
                    }
                }
            }
            if k < trunc {
                power = power.mul(self);
            }
        }
        Ok(BiSeries::new(trunc, wf, acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;
    use crate::rational::{rat, rat_int};

    fn b(n: u32) -> GradedElement {
        GradedElement::generator(n)
    }

    #[test]
    fn multiply_examples() {
        let u = USeries::identity(8);
        let u2 = u.mul(&u);
        assert_eq!(u2.coefficient(2).unwrap(), GradedElement::one());
        assert_eq!(u2.weight(), Some(2));

        // (1 + 2b1 u)(1 + b1 u) = 1 + 3b1 u + 2b1² u²
        let f = USeries::new(
            8,
            Some(0),
            [(0, GradedElement::one()), (1, b(1).scale(&rat_int(2)))],
        );
        let g = USeries::new(8, Some(0), [(0, GradedElement::one()), (1, b(1))]);
        let prod = f.mul(&g);
        assert_eq!(prod.coefficient(1).unwrap(), b(1).scale(&rat_int(3)));
        assert_eq!(
            prod.coefficient(2).unwrap(),
            GradedElement::monomial(Partition::new(vec![1, 1]), rat_int(2))
        );
    }

    #[test]
    fn reciprocal_examples() {
        // 1/(1 − 2b1 u) = 1 + 2b1 u + 4b1² u² + …
        let f = USeries::new(
            6,
            Some(0),
            [(0, GradedElement::one()), (1, b(1).scale(&rat_int(-2)))],
        );
        let r = f.reciprocal().unwrap();
        assert_eq!(r.coefficient(1).unwrap(), b(1).scale(&rat_int(2)));
        assert_eq!(
            r.coefficient(2).unwrap(),
            GradedElement::monomial(Partition::new(vec![1, 1]), rat_int(4))
        );
        assert_eq!(f.mul(&r).coefficient(0).unwrap(), GradedElement::one());
        for k in 1..=6 {
            assert!(f.mul(&r).coefficient(k).unwrap().is_zero());
        }

        let three = USeries::constant(5, rat_int(3));
        assert_eq!(
            three.reciprocal().unwrap().coefficient(0).unwrap(),
            GradedElement::scalar(rat(1, 3))
        );

        assert_eq!(
            USeries::identity(5).reciprocal(),
            Err(Error::NonInvertibleConstant)
        );
    }

    #[test]
    fn compose_examples() {
        // f(u) = u², h(u) = u + u² → u² + 2u³ + u⁴ (scalar series, no weight)
        let f = USeries::new(8, None, [(2, GradedElement::one())]);
        let h = USeries::new(
            8,
            None,
            [(1, GradedElement::one()), (2, GradedElement::one())],
        );
        let c = f.compose(&h).unwrap();
        assert_eq!(c.coefficient(2).unwrap(), GradedElement::one());
        assert_eq!(c.coefficient(3).unwrap(), GradedElement::scalar(rat_int(2)));
        assert_eq!(c.coefficient(4).unwrap(), GradedElement::one());
        assert!(c.coefficient(5).unwrap().is_zero());

        let with_const = USeries::constant(8, rat_int(1));
        assert_eq!(f.compose(&with_const), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn inverse_examples() {
        // inverse of u + b1 u²: u − b1 u² + 2b1² u³ − …
        let f = USeries::new(6, Some(1), [(1, GradedElement::one()), (2, b(1))]);
        let g = f.inverse().unwrap();
        assert_eq!(g.coefficient(2).unwrap(), b(1).neg());
        assert_eq!(
            g.coefficient(3).unwrap(),
            GradedElement::monomial(Partition::new(vec![1, 1]), rat_int(2))
        );
        // f(g) = u
        let comp = f.compose(&g).unwrap();
        assert_eq!(comp.coefficient(1).unwrap(), GradedElement::one());
        for k in 2..=6 {
            assert!(comp.coefficient(k).unwrap().is_zero(), "residual at u^{k}");
        }

        // inverse of 2u is u/2
        let two_u = USeries::new(6, Some(1), [(1, GradedElement::scalar(rat_int(2)))]);
        assert_eq!(
            two_u.inverse().unwrap().coefficient(1).unwrap(),
            GradedElement::scalar(rat(1, 2))
        );

        // involution
        assert_eq!(f.inverse().unwrap().inverse().unwrap(), f);

        // rejected leading coefficients
        let bad = USeries::new(6, None, [(1, b(1))]);
        assert_eq!(bad.inverse(), Err(Error::NonScalarLeading));
        assert_eq!(USeries::zero(6).inverse(), Err(Error::NonScalarLeading));
    }

    #[test]
    fn coefficient_out_of_range() {
        let u = USeries::identity(4);
        assert_eq!(
            u.coefficient(5),
            Err(Error::TruncationExceeded {
                needed: 5,
                truncation: 4
            })
        );
        // ⟨u + 5b2 u³⟩₃ = 5b2
        let f = USeries::new(
            4,
            Some(1),
            [(1, GradedElement::one()), (3, b(2).scale(&rat_int(5)))],
        );
        assert_eq!(f.coefficient(3).unwrap(), b(2).scale(&rat_int(5)));
    }

    #[test]
    #[should_panic(expected = "grading law")]
    fn grading_law_rejected() {
        // weight-1 series with a scalar u² coefficient
        USeries::new(4, Some(1), [(2, GradedElement::one())]);
    }

    #[test]
    fn truncation_is_minimum() {
        let a = USeries::identity(10);
        let b = USeries::identity(6);
        assert_eq!(a.mul(&b).truncation(), 6);
        assert_eq!(a.add(&b).truncation(), 6);
    }

    #[test]
    fn rendering() {
        let f = USeries::new(
            4,
            Some(1),
            [
                (1, GradedElement::scalar(rat_int(3))),
                (2, b(1).scale(&rat_int(-6))),
            ],
        );
        assert_eq!(f.render(), "3*u + [-6*b[1]]*u^2");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_scalar_series() -> impl Strategy<Value = USeries> {
            proptest::collection::vec(-5i64..=5, 8).prop_map(|cs| {
                let mut coeffs = vec![(1usize, GradedElement::scalar(rat_int(1 + cs[0].abs())))];
                for (k, &c) in cs.iter().enumerate().skip(1) {
                    coeffs.push((k + 1, GradedElement::scalar(rat_int(c))));
                }
                USeries::new(8, None, coeffs)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn compose_associative(
                f in arb_scalar_series(), g in arb_scalar_series(), h in arb_scalar_series()
            ) {
                let lhs = f.compose(&g.compose(&h).unwrap()).unwrap();
                let rhs = f.compose(&g).unwrap().compose(&h).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn mul_reciprocal_is_one(f in arb_scalar_series()) {
                // shift to a unit constant term
                let unit = USeries::new(
                    8,
                    None,
                    std::iter::once((0usize, GradedElement::scalar(rat_int(1))))
                        .chain(f.terms().map(|(j, c)| (j, c.clone()))),
                );
                let r = unit.reciprocal().unwrap();
                let prod = unit.mul(&r);
                prop_assert_eq!(prod.coefficient(0).unwrap(), GradedElement::one());
                for k in 1..=8 {
                    prop_assert!(prod.coefficient(k).unwrap().is_zero());
                }
            }
        }
    }
}
