//! Classification tests for cobordism classes against the simple-action ideal.
//!
//! A `Classifier` caches the α- and β-bases for one prime and answers three
//! questions about a homogeneous class σ:
//!
//! * is σ a p-local cobordism class at all (α-expansion p-integral)?
//! * does σ contain a manifold with a simple Z/p-action? Decided twice, by
//!   independent routes: the ideal test on α-coefficients r_ω (ω divisible by
//!   p−1 and non-p-adic must vanish mod p) and the characteristic-number test
//!   on s_ω (ω divisible by p−1 must vanish mod p). The two verdicts must
//!   agree for p-local classes; a disagreement is a hard failure.
//! * the stricter identical-weights variant: every s_ω must vanish mod p.
//!
//! Witnesses always name explicit monomials or partitions with exact residues.

use std::fmt;

use crate::bases::GeneratorBasis;
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::partition::{classify_partition, Partition};
use crate::rational::{p_valuation, residue_mod_p, OddPrime, PValuation, Rational};

/// Verdict of `classify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// Some α-coefficient is not p-integral: not a p-local cobordism class.
    NotPLocalClass,
    /// A p-local class that contains no manifold with a simple action.
    NotRealizable,
    /// Contains a manifold with a simple action.
    Realizable,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::NotPLocalClass => "NotPLocalClass",
            Classification::NotRealizable => "NotRealizable",
            Classification::Realizable => "Realizable",
        })
    }
}

/// An α-monomial whose coefficient falls outside ℤ_(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaWitness {
    pub partition: Partition,
    pub coefficient: Rational,
    pub valuation: i64,
}

/// A partition whose characteristic number is nonzero mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharnumWitness {
    pub partition: Partition,
    pub s_number: Rational,
    /// Residue of the s-number mod p; None when the s-number is not even
    /// p-integral (possible only for non-p-local inputs).
    pub residue_mod_p: Option<u32>,
}

/// An α-monomial coefficient that is a p-unit where the ideal requires p | r_ω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness {
    pub partition: Partition,
    pub coefficient: Rational,
    pub residue_mod_p: u32,
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub p: u32,
    pub degree: u32,
    pub in_omega_p: bool,
    pub omega_witnesses: Vec<OmegaWitness>,
    pub realizable: bool,
    pub charnum_witnesses: Vec<CharnumWitness>,
    pub ideal_witnesses: Vec<IdealWitness>,
    pub classification: Classification,
    /// Which tests actually ran.
    pub methods: Vec<&'static str>,
}

pub struct Classifier {
    p: OddPrime,
    alpha: GeneratorBasis,
    beta: GeneratorBasis,
}

impl Classifier {
    pub fn new(p: OddPrime, n_max: u32, trunc: usize) -> Result<Self> {
        Ok(Classifier {
            p,
            alpha: GeneratorBasis::alpha(p, n_max, trunc)?,
            beta: GeneratorBasis::beta(n_max, trunc)?,
        })
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn alpha_basis(&self) -> &GeneratorBasis {
        &self.alpha
    }

    pub fn beta_basis(&self) -> &GeneratorBasis {
        &self.beta
    }

    pub fn n_max(&self) -> u32 {
        self.alpha.n_max()
    }

    /// Membership in the p-local cobordism ring: true iff every α-expansion
    /// coefficient is p-integral, with the offending monomials as witnesses.
    pub fn is_in_omega_p(&self, sigma: &GradedElement) -> Result<(bool, Vec<OmegaWitness>)> {
        let expansion = self.alpha.expand(sigma)?;
        let mut witnesses = Vec::new();
        for (omega, coeff) in expansion {
            if let PValuation::Finite(v) = p_valuation(&coeff, self.p) {
                if v < 0 {
                    witnesses.push(OmegaWitness {
                        partition: omega,
                        coefficient: coeff,
                        valuation: v,
                    });
                }
            }
        }
        Ok((witnesses.is_empty(), witnesses))
    }

    /// Ideal-coefficient test. Precondition: σ is p-local (checked; violation
    /// reported as an error, not silently ignored).
    pub fn realizable_via_ideal(&self, sigma: &GradedElement) -> Result<(bool, Vec<IdealWitness>)> {
        if sigma.degree() == 0 {
            return Err(Error::DegreeZeroClass);
        }
        let (ok, _) = self.is_in_omega_p(sigma)?;
        if !ok {
            return Err(Error::NotPLocal);
        }
        let expansion = self.alpha.expand(sigma)?;
        let mut witnesses = Vec::new();
        for (omega, coeff) in expansion {
            let class = classify_partition(&omega, self.p);
            if !(class.divisible_by_p_minus_1 && class.non_p_adic) {
                continue;
            }
            if !p_valuation(&coeff, self.p).is_at_least(1) {
                let residue = residue_mod_p(&coeff, self.p);
                witnesses.push(IdealWitness {
                    partition: omega,
                    coefficient: coeff,
                    residue_mod_p: residue,
                });
            }
        }
        Ok((witnesses.is_empty(), witnesses))
    }

    /// Characteristic-number test: s_ω(σ) ≡ 0 mod p for every ω with all
    /// parts divisible by p−1.
    pub fn realizable_via_charnum(
        &self,
        sigma: &GradedElement,
    ) -> Result<(bool, Vec<CharnumWitness>)> {
        if sigma.degree() == 0 {
            return Err(Error::DegreeZeroClass);
        }
        let s = self.beta.expand(sigma)?;
        let mut witnesses = Vec::new();
        for (omega, value) in s {
            if !classify_partition(&omega, self.p).divisible_by_p_minus_1 {
                continue;
            }
            let v = p_valuation(&value, self.p);
            if !v.is_at_least(1) {
                let residue = match v {
                    PValuation::Finite(x) if x >= 0 => Some(residue_mod_p(&value, self.p)),
                    _ => None,
                };
                witnesses.push(CharnumWitness {
                    partition: omega,
                    s_number: value,
                    residue_mod_p: residue,
                });
            }
        }
        Ok((witnesses.is_empty(), witnesses))
    }

    /// Run the membership test, then both realizability tests, asserting they
    /// agree (a disagreement would contradict the equivalence theorem the
    /// engine is built on, so it panics).
    pub fn classify(&self, sigma: &GradedElement) -> Result<ObstructionReport> {
        if sigma.degree() == 0 {
            return Err(Error::DegreeZeroClass);
        }
        let (in_omega, omega_witnesses) = self.is_in_omega_p(sigma)?;
        if !in_omega {
            return Ok(ObstructionReport {
                p: self.p.get(),
                degree: sigma.degree(),
                in_omega_p: false,
                omega_witnesses,
                realizable: false,
                charnum_witnesses: Vec::new(),
                ideal_witnesses: Vec::new(),
                classification: Classification::NotPLocalClass,
                methods: vec!["alpha-expansion"],
            });
        }
        let (ideal_ok, ideal_witnesses) = self.realizable_via_ideal(sigma)?;
        let (charnum_ok, charnum_witnesses) = self.realizable_via_charnum(sigma)?;
        assert_eq!(
            ideal_ok, charnum_ok,
            "ideal and characteristic-number tests disagree on a p-local class (p={}, degree={}); this is a bug",
            self.p,
            sigma.degree()
        );
        Ok(ObstructionReport {
            p: self.p.get(),
            degree: sigma.degree(),
            in_omega_p: true,
            omega_witnesses,
            realizable: charnum_ok,
            charnum_witnesses,
            ideal_witnesses,
            classification: if charnum_ok {
                Classification::Realizable
            } else {
                Classification::NotRealizable
            },
            methods: vec![
                "alpha-expansion",
                "ideal-coefficients",
                "characteristic-numbers",
            ],
        })
    }

    /// The identical-weights variant: every characteristic number must vanish
    /// mod p, not only those indexed by divisible partitions.
    pub fn strictly_simple_realizable(
        &self,
        sigma: &GradedElement,
    ) -> Result<(bool, Vec<CharnumWitness>)> {
        if sigma.degree() == 0 {
            return Err(Error::DegreeZeroClass);
        }
        let s = self.beta.expand(sigma)?;
        let mut witnesses = Vec::new();
        for (omega, value) in s {
            let v = p_valuation(&value, self.p);
            if !v.is_at_least(1) {
                let residue = match v {
                    PValuation::Finite(x) if x >= 0 => Some(residue_mod_p(&value, self.p)),
                    _ => None,
                };
                witnesses.push(CharnumWitness {
                    partition: omega,
                    s_number: value,
                    residue_mod_p: residue,
                });
            }
        }
        Ok((witnesses.is_empty(), witnesses))
    }
}
