//! Homogeneous graded polynomials in the logarithm generators b₁, b₂, …
//!
//! This is the ambient coefficient ring of the whole engine: ℚ[b₁,b₂,…] with
//! deg bᵢ = i (complex degree; an element of degree n lives in cohomological
//! degree −2n). An element is a sparse map from partitions to rationals,
//! where the partition ω encodes the monomial b_ω = ∏ b_i^{k_i}. Homogeneity
//! is a structural invariant: every stored partition has weight equal to the
//! element's degree, and zero coefficients are never stored.

use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::partition::Partition;
use crate::rational::{
    is_p_integral, p_valuation, render_rational, OddPrime, PValuation, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    degree: u32,
    terms: BTreeMap<Partition, Rational>,
}

impl GradedElement {
    pub fn zero(degree: u32) -> Self {
        GradedElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 element: a plain rational embedded as the empty monomial.
    pub fn scalar(value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Partition::empty(), value);
        }
        GradedElement { degree: 0, terms }
    }

    pub fn one() -> Self {
        GradedElement::scalar(Rational::one())
    }

    /// The generator bₙ, n ≥ 1.
    pub fn generator(n: u32) -> Self {
        GradedElement::monomial(Partition::single(n), Rational::one())
    }

    pub fn monomial(omega: Partition, coeff: Rational) -> Self {
        let degree = omega.weight();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(omega, coeff);
        }
        GradedElement { degree, terms }
    }

    /// Assemble from raw terms; every partition must have weight `degree`.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut out = GradedElement::zero(degree);
        for (omega, c) in terms {
            assert_eq!(
                omega.weight(),
                degree,
                "homogeneity violated: partition {omega} in a degree-{degree} element"
            );
            out.add_term(omega, c);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, omega: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(omega) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        assert_eq!(
            self.degree, other.degree,
            "cannot add elements of degrees {} and {}",
            self.degree, other.degree
        );
        let mut out = self.clone();
        for (omega, c) in &other.terms {
            out.add_term(omega.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedElement {
        GradedElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedElement {
        if c.is_zero() {
            return GradedElement::zero(self.degree);
        }
        GradedElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Exact convolution of monomials; degrees add.
    pub fn mul(&self, other: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(self.degree + other.degree);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.union(wb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> GradedElement {
        let mut out = GradedElement::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Exact coefficient lookup; 0 if the monomial is absent.
    pub fn coefficient_of(&self, omega: &Partition) -> Rational {
        self.terms
            .get(omega)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the single-part monomial b_n for a degree-n element,
    /// n ≥ 1 — the part of the element visible modulo decomposables.
    pub fn leading_b_coefficient(&self) -> Rational {
        assert!(self.degree >= 1, "leading coefficient needs degree >= 1");
        self.coefficient_of(&Partition::single(self.degree))
    }

    /// The element with its single-part term removed (the decomposable part).
    pub fn decomposable_part(&self) -> GradedElement {
        assert!(self.degree >= 1);
        let single = Partition::single(self.degree);
        GradedElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| **w != single)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Minimum p-adic valuation over all coefficients; Infinite for zero.
    pub fn min_p_valuation(&self, p: OddPrime) -> PValuation {
        self.terms
            .values()
            .map(|c| p_valuation(c, p))
            .fold(PValuation::Infinite, PValuation::min)
    }

    /// True iff every coefficient lies in ℤ_(p).
    pub fn is_p_integral(&self, p: OddPrime) -> bool {
        self.terms.values().all(|c| is_p_integral(c, p))
    }

    /// The scalar value of a degree-0 element.
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.degree != 0 {
            return None;
        }
        Some(self.coefficient_of(&Partition::empty()))
    }
}

/// Text rendering: terms in canonical partition order, monomials printed with
/// ascending generator index, e.g. 36b₁²−24b₂ renders as
/// "-24*b[2] + 36*b[1]^2" (the single-part monomial comes first).
impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl GradedElement {
    fn render_term(omega: &Partition, coeff: &Rational) -> (bool, String) {
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        let coeff_str = if magnitude.denom().is_one() {
            magnitude.numer().to_string()
        } else {
            format!("({})", render_rational(&magnitude))
        };
        if omega.is_empty() {
            return (negative, coeff_str);
        }
        // group equal parts into b[i]^k factors, ascending index
        let mut factors: Vec<String> = Vec::new();
        let mut parts = omega.parts().to_vec();
        parts.reverse();
        let mut idx = 0;
        while idx < parts.len() {
            let part = parts[idx];
            let mut count = 1;
            while idx + count < parts.len() && parts[idx + count] == part {
                count += 1;
            }
            factors.push(if count == 1 {
                format!("b[{part}]")
            } else {
                format!("b[{part}]^{count}")
            });
            idx += count;
        }
        let monomial = factors.join("*");
        let body = if magnitude.is_one() {
            monomial
        } else {
            format!("{coeff_str}*{monomial}")
        };
        (negative, body)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (omega, coeff)) in self.terms.iter().enumerate() {
            let (negative, body) = Self::render_term(omega, coeff);
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}
