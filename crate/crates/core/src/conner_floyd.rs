//! The realization side: from fixed-point data to the mod-p cobordism class.
//!
//! For a weight list (x₁,…,x_k) the map γ_p takes the invariant of the unit
//! sphere in the normal fibre to the u^k-coefficient of
//! (∏ u/[u]_{x_j}) · (pu/[u]_p); Φ does the same without the pu/[u]_p factor
//! and lands in the quotient mod p. Realization sums λ_j · γ_p(weights_j)
//! over the fixed components; the result is exact, with the "read modulo
//! p·(Ω_U⊗ℤ_(p))" contract applied only by `congruent_mod_p_omega`.

use num_traits::One;
use std::str::FromStr;

use crate::bases::{BasisKind, GeneratorBasis};
use crate::error::{Error, Result};
use crate::fgl::{alpha_coeff, cp_class, k_series};
use crate::graded::GradedElement;
use crate::rational::{OddPrime, Rational};
use crate::series::USeries;

/// Nonzero residues mod p describing the normal representation at a fixed
/// component. Stored as canonical residues in 1..p−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightList {
    p: OddPrime,
    weights: Vec<u32>,
}

impl WeightList {
    /// Normalize raw integers mod p; zero residues are rejected, as is an
    /// empty list (the invariant of an empty sphere does not exist).
    pub fn new(p: OddPrime, raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyWeightList);
        }
        let mut weights = Vec::with_capacity(raw.len());
        for &x in raw {
            let r = x.rem_euclid(p.get() as i64) as u32;
            if r == 0 {
                return Err(Error::InvalidWeight(x));
            }
            weights.push(r);
        }
        Ok(WeightList { p, weights })
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees nonemptiness
    }
}

/// An exact representative carrying the contract "read modulo
/// p·(Ω_U⊗ℤ_(p))". No coset representative is ever chosen; reduction happens
/// only inside [`congruent_mod_p_omega`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPRepresentative {
    prime: OddPrime,
    class: GradedElement,
}

impl ModPRepresentative {
    pub fn new(prime: OddPrime, class: GradedElement) -> Self {
        ModPRepresentative { prime, class }
    }

    pub fn prime(&self) -> OddPrime {
        self.prime
    }

    pub fn class(&self) -> &GradedElement {
        &self.class
    }

    pub fn into_class(self) -> GradedElement {
        self.class
    }

    /// Congruence against another representative of the same degree.
    pub fn congruent_to(
        &self,
        other: &GradedElement,
        alpha_basis: &GeneratorBasis,
    ) -> Result<bool> {
        congruent_mod_p_omega(&self.class, other, alpha_basis)
    }
}

/// One fixed component: its cobordism class and normal weights.
#[derive(Debug, Clone)]
pub struct FixedComponentDatum {
    pub component_class: GradedElement,
    pub weights: WeightList,
}

/// Fixed-point data of a simple action on a manifold of complex degree n.
#[derive(Debug, Clone)]
pub struct SimpleActionData {
    p: OddPrime,
    ambient_degree: u32,
    components: Vec<FixedComponentDatum>,
}

impl SimpleActionData {
    /// Validates deg(λ_j) + m_j = n for every component.
    pub fn new(
        p: OddPrime,
        ambient_degree: u32,
        components: Vec<FixedComponentDatum>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyComponentList);
        }
        for c in &components {
            if c.component_class.degree() + c.weights.len() as u32 != ambient_degree {
                return Err(Error::ComponentDimensionMismatch {
                    class_degree: c.component_class.degree(),
                    weight_count: c.weights.len(),
                    ambient: ambient_degree,
                });
            }
        }
        Ok(SimpleActionData {
            p,
            ambient_degree,
            components,
        })
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn ambient_degree(&self) -> u32 {
        self.ambient_degree
    }

    pub fn components(&self) -> &[FixedComponentDatum] {
        &self.components
    }
}

/// u/[u]_x as a weight-0 series with constant term 1/x.
fn u_over_k_series(x: u32, trunc: usize) -> Result<USeries> {
    k_series(x as i64, trunc)?.divide_by_u(1).reciprocal()
}

/// γ_p(x₁,…,x_k) = ⟨(∏ u/[u]_{x_j}) · pu/[u]_p⟩_k; degree k, p-integral.
pub fn gamma_p(w: &WeightList, trunc: usize) -> Result<GradedElement> {
    let k = w.len();
    if k + 1 > trunc {
        return Err(Error::TruncationExceeded {
            needed: k + 1,
            truncation: trunc,
        });
    }
    let p = w.prime();
    let mut prod = normalized_p_series_reciprocal(p, trunc)?;
    for &x in w.weights() {
        prod = prod.mul(&u_over_k_series(x, trunc)?);
    }
    prod.coefficient(k)
}

/// pu/[u]_p: reciprocal of [u]_p/(pu), constant term 1.
fn normalized_p_series_reciprocal(p: OddPrime, trunc: usize) -> Result<USeries> {
    k_series(p.get() as i64, trunc)?
        .divide_by_u(1)
        .scalar_mul(&(Rational::one() / p.to_rational()))
        .reciprocal()
}

/// Φ on the relation a(x₁,…,x_k): ⟨∏ u/[u]_{x_i}⟩_k mod p.
pub fn phi_a(w: &WeightList, trunc: usize) -> Result<ModPRepresentative> {
    let k = w.len();
    if k + 1 > trunc {
        return Err(Error::TruncationExceeded {
            needed: k + 1,
            truncation: trunc,
        });
    }
    let mut prod = USeries::constant(trunc - 1, Rational::one());
    for &x in w.weights() {
        prod = prod.mul(&u_over_k_series(x, trunc)?);
    }
    Ok(ModPRepresentative::new(w.prime(), prod.coefficient(k)?))
}

/// Φ on the relation a_k: −⟨[u]_p/u⟩_k = −α_k^{(p)} mod p.
pub fn phi_ak(k: u32, p: OddPrime, trunc: usize) -> Result<ModPRepresentative> {
    Ok(ModPRepresentative::new(
        p,
        alpha_coeff(p.get() as i64, k, trunc)?.neg(),
    ))
}

/// The ambient class of the action from its fixed-point data:
/// Σ_j λ_j · γ_p(x₁^{(j)},…), exact, read modulo p·(Ω_U⊗ℤ_(p)).
pub fn realize_class(data: &SimpleActionData, trunc: usize) -> Result<ModPRepresentative> {
    let n = data.ambient_degree();
    if n as usize + 1 > trunc {
        return Err(Error::TruncationExceeded {
            needed: n as usize + 1,
            truncation: trunc,
        });
    }
    let mut acc = GradedElement::zero(n);
    for comp in data.components() {
        let gamma = gamma_p(&comp.weights, trunc)?;
        acc = acc.add(&comp.component_class.mul(&gamma));
    }
    Ok(ModPRepresentative::new(data.prime(), acc))
}

/// σ ≡ τ mod p·(Ω_U⊗ℤ_(p)): every α-coefficient of σ−τ has v_p ≥ 1.
pub fn congruent_mod_p_omega(
    sigma: &GradedElement,
    tau: &GradedElement,
    alpha_basis: &GeneratorBasis,
) -> Result<bool> {
    assert_eq!(
        alpha_basis.kind(),
        BasisKind::Alpha,
        "congruence is read off the alpha basis"
    );
    if sigma.degree() != tau.degree() {
        return Err(Error::DegreeMismatch {
            left: sigma.degree(),
            right: tau.degree(),
        });
    }
    let p = alpha_basis.prime().expect("alpha basis carries its prime");
    let diff = sigma.sub(tau);
    let expansion = alpha_basis.expand(&diff)?;
    Ok(expansion
        .values()
        .all(|c| crate::rational::p_valuation(c, p).is_at_least(1)))
}

/// The worked example actions on ℂP^{p−1}, ℂP¹ and their product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinAction {
    /// ℂP^{p−1} with p isolated fixed points, weights {1,…,p−1} at each.
    CpPMinus1,
    /// ℂP¹ with two isolated fixed points, weights (1) and (p−1).
    Cp1,
    /// ℂP^{p−1} × ℂP¹, acting on the first factor: p copies of ℂP¹, each
    /// with weights {1,…,p−1} (strictly simple).
    ProductFirst,
    /// ℂP^{p−1} × ℂP¹, acting on the second factor: two copies of ℂP^{p−1}
    /// with weights (1) and (p−1) (simple, not strictly simple).
    ProductSecond,
}

impl FromStr for BuiltinAction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cp_p_minus_1" => Ok(BuiltinAction::CpPMinus1),
            "cp1" => Ok(BuiltinAction::Cp1),
            "product_first" => Ok(BuiltinAction::ProductFirst),
            "product_second" => Ok(BuiltinAction::ProductSecond),
            other => Err(Error::UnknownBuiltinAction(other.to_string())),
        }
    }
}

pub fn builtin_action(action: BuiltinAction, p: OddPrime) -> Result<SimpleActionData> {
    let pv = p.get() as i64;
    let all_weights: Vec<i64> = (1..pv).collect();
    match action {
        BuiltinAction::CpPMinus1 => {
            let w = WeightList::new(p, &all_weights)?;
            let comps = (0..pv)
                .map(|_| FixedComponentDatum {
                    component_class: GradedElement::one(),
                    weights: w.clone(),
                })
                .collect();
            SimpleActionData::new(p, p.get() - 1, comps)
        }
        BuiltinAction::Cp1 => {
            let comps = vec![
                FixedComponentDatum {
                    component_class: GradedElement::one(),
                    weights: WeightList::new(p, &[1])?,
                },
                FixedComponentDatum {
                    component_class: GradedElement::one(),
                    weights: WeightList::new(p, &[pv - 1])?,
                },
            ];
            SimpleActionData::new(p, 1, comps)
        }
        BuiltinAction::ProductFirst => {
            let w = WeightList::new(p, &all_weights)?;
            let comps = (0..pv)
                .map(|_| FixedComponentDatum {
                    component_class: cp_class(1),
                    weights: w.clone(),
                })
                .collect();
            SimpleActionData::new(p, p.get(), comps)
        }
        BuiltinAction::ProductSecond => {
            let comps = vec![
                FixedComponentDatum {
                    component_class: cp_class(p.get() - 1),
                    weights: WeightList::new(p, &[1])?,
                },
                FixedComponentDatum {
                    component_class: cp_class(p.get() - 1),
                    weights: WeightList::new(p, &[pv - 1])?,
                },
            ];
            SimpleActionData::new(p, p.get(), comps)
        }
    }
}
