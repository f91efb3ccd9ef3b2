//! The universal formal group law of geometric cobordisms.
//!
//! Everything here is exact truncated series arithmetic over ℚ[b₁,b₂,…]:
//!
//! * `logarithm`: g(u) = u + Σ bₙ u^{n+1},
//! * `exponential`: its compositional inverse; the u^{i+1}-coefficient is the
//!   Chern–Dold character coefficient βᵢ,
//! * `k_series`: the k-th power [u]_k = e(k·g(u)) of the power system, with
//!   coefficients αₙ^{(k)},
//! * `universal_fgl`: F(u,v) = e(g(u) + g(v)),
//! * distinguished classes: [ℂPⁿ] = (n+1)bₙ and the Milnor hypersurfaces
//!   H(m,n) assembled from the F-coefficients.

use num_traits::One;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::rational::{rat_int, Rational};
use crate::series::{BiSeries, USeries};

/// g(u) = u + Σ_{1 ≤ n < T} bₙ u^{n+1}; weight 1.
pub fn logarithm(trunc: usize) -> USeries {
    assert!(trunc >= 1);
    let mut coeffs = vec![(1usize, GradedElement::one())];
    for n in 1..trunc as u32 {
        coeffs.push((n as usize + 1, GradedElement::generator(n)));
    }
    USeries::new(trunc, Some(1), coeffs)
}

/// The exponential e with g(e(u)) = e(g(u)) = u; memoized per truncation.
pub fn exponential(trunc: usize) -> USeries {
    static CACHE: OnceLock<Mutex<HashMap<usize, USeries>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().unwrap().get(&trunc) {
        return e.clone();
    }
    let e = logarithm(trunc)
        .inverse()
        .expect("the logarithm always has a compositional inverse");
    cache.lock().unwrap().insert(trunc, e.clone());
    e
}

/// Chern–Dold coefficient βᵢ (degree i), the u^{i+1}-coefficient of the
/// exponential.
pub fn beta_coeff(i: u32, trunc: usize) -> Result<GradedElement> {
    exponential(trunc).coefficient(i as usize + 1)
}

/// [u]_k = e(k·g(u)), the k-th power in the formal group law; leading
/// coefficient k. k = 0 is rejected: the zero series is degenerate for every
/// downstream quotient. Memoized per (k, T).
pub fn k_series(k: i64, trunc: usize) -> Result<USeries> {
    if k == 0 {
        return Err(Error::ZeroKSeries);
    }
    static CACHE: OnceLock<Mutex<HashMap<(i64, usize), USeries>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(k, trunc)) {
        return Ok(s.clone());
    }
    let scaled_log = logarithm(trunc).scalar_mul(&rat_int(k));
    let series = exponential(trunc).compose(&scaled_log)?;
    cache.lock().unwrap().insert((k, trunc), series.clone());
    Ok(series)
}

/// αₙ^{(k)}: the u^{n+1}-coefficient of [u]_k; degree n.
pub fn alpha_coeff(k: i64, n: u32, trunc: usize) -> Result<GradedElement> {
    if n as usize + 1 > trunc {
        return Err(Error::TruncationExceeded {
            needed: n as usize + 1,
            truncation: trunc,
        });
    }
    k_series(k, trunc)?.coefficient(n as usize + 1)
}

/// F(u,v) = e(g(u) + g(v)) = Σ a_{ij} u^i v^j, truncated at total degree T;
/// a₁₀ = a₀₁ = 1. Memoized per truncation.
pub fn universal_fgl(trunc: usize) -> BiSeries {
    assert!(trunc >= 2);
    static CACHE: OnceLock<Mutex<HashMap<usize, BiSeries>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&trunc) {
        return f.clone();
    }
    let g = logarithm(trunc);
    let mut sum_terms = Vec::new();
    for (j, c) in g.terms() {
        sum_terms.push(((j, 0), c.clone()));
        sum_terms.push(((0, j), c.clone()));
    }
    let split = BiSeries::new(trunc, 1, sum_terms);
    let f = split
        .substitute_into(&exponential(trunc))
        .expect("g(u)+g(v) has zero constant term");
    debug_assert!(f.coefficient(1, 0).unwrap().as_scalar() == Some(Rational::one()));
    debug_assert!(f.coefficient(0, 1).unwrap().as_scalar() == Some(Rational::one()));
    cache.lock().unwrap().insert(trunc, f.clone());
    f
}

/// [ℂPⁿ] = (n+1)·bₙ; n = 0 gives the scalar 1.
pub fn cp_class(n: u32) -> GradedElement {
    if n == 0 {
        return GradedElement::one();
    }
    GradedElement::generator(n).scale(&rat_int(n as i64 + 1))
}

/// The Milnor hypersurface class
/// [H(m,n)] = Σ_{i≤m, j≤n, i+j≥1} a_{ij} [ℂP^{m−i}] [ℂP^{n−j}], degree m+n−1.
pub fn milnor_hypersurface(m: u32, n: u32, trunc: usize) -> Result<GradedElement> {
    assert!(m >= 1 && n >= 1, "H(m,n) needs m, n >= 1");
    if (m + n) as usize > trunc {
        return Err(Error::TruncationExceeded {
            needed: (m + n) as usize,
            truncation: trunc,
        });
    }
    let fgl = universal_fgl(trunc);
    let mut acc = GradedElement::zero(m + n - 1);
    for i in 0..=m {
        for j in 0..=n {
            if i + j == 0 {
                continue;
            }
            let a = fgl.coefficient(i as usize, j as usize)?;
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&a.mul(&cp_class(m - i)).mul(&cp_class(n - j)));
        }
    }
    Ok(acc)
}
