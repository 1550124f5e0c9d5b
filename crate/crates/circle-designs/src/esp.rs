//! Elementary symmetric polynomials σ_{k,l} on blocks of field elements.
//!
//! For a block B = {u₁, …, u_k}, σ_{k,l}(B) is the sum of all products of l
//! distinct elements of B, i.e. the coefficient of x^{k−l} in Π_i (x + u_i)
//! (characteristic 2, so + is also −). Two facts carry most of the crate:
//!
//! * **Shift expansion.** Over characteristic 2,
//!   σ_{k,l}(B − a) = Σ_{i=0}^{l} C(k−i, l−i) a^{l−i} σ_{k,i}(B) with the
//!   binomials taken mod 2, so the shifted value is a degree-l polynomial in
//!   the shift a whose coefficients come from the unshifted σ's. Both the
//!   direct evaluation on {u − a} and this expansion are implemented and
//!   checked against each other.
//! * **Conjugation identity.** For B ⊂ U_{q+1} (where u^q = u^{−1}),
//!   σ_{k,l}(B)^q · σ_{k,k}(B) = σ_{k,k−l}(B).

use alloc::vec::Vec;

use crate::field::{Elem, Field};
use crate::subsets::binomial_odd;
use crate::{Error, Result};

/// Maximum block size the σ routines accept (coefficient buffers are fixed
/// size; every family in the crate has k ≤ 7).
pub const MAX_K: usize = 8;

/// All σ_{k,0..=k}(B) at once, as the coefficient list of Π (x + u):
/// returns [σ₀, σ₁, …, σ_k] (σ₀ = 1).
pub fn esp_all(f: &Field, block: &[Elem]) -> Vec<Elem> {
    let k = block.len();
    assert!(k <= MAX_K, "block too large for sigma evaluation");
    let mut c = [Elem::ZERO; MAX_K + 1];
    c[0] = Elem::ONE;
    for (n, &u) in block.iter().enumerate() {
        // Multiply the running polynomial by (x + u): new σ_j = σ_j + u σ_{j−1}.
        for j in (1..=n + 1).rev() {
            c[j] += f.mul(u, c[j - 1]);
        }
    }
    c[..=k].to_vec()
}

/// σ_{k,l}(B), the l-th elementary symmetric polynomial of the block.
pub fn esp(f: &Field, block: &[Elem], l: usize) -> Elem {
    assert!(l <= block.len(), "sigma index exceeds block size");
    esp_all(f, block)[l]
}

/// σ_{k,l}(B − a) by direct evaluation on the shifted block {u − a : u ∈ B}.
pub fn esp_shifted_direct(f: &Field, block: &[Elem], l: usize, a: Elem) -> Elem {
    let shifted: Vec<Elem> = block.iter().map(|&u| u + a).collect();
    esp(f, &shifted, l)
}

/// σ_{k,l}(B − a) from the precomputed σ's of B via the shift expansion.
/// `sigmas` must be `esp_all(f, block)` for a block of size k.
#[allow(clippy::needless_range_loop)] // i is both index and exponent offset
pub fn esp_shifted_expansion(f: &Field, sigmas: &[Elem], l: usize, a: Elem) -> Elem {
    let k = sigmas.len() - 1;
    debug_assert!(l <= k);
    let mut acc = Elem::ZERO;
    for i in 0..=l {
        if binomial_odd((k - i) as u64, (l - i) as u64) {
            acc += f.mul(f.pow(a, (l - i) as i64), sigmas[i]);
        }
    }
    acc
}

/// σ_{k,l}(B − a). Uses the shift expansion; `esp_shifted_direct` computes
/// the same value on the translated block and the two are property-tested
/// against each other.
pub fn esp_shifted(f: &Field, block: &[Elem], l: usize, a: Elem) -> Elem {
    let sigmas = esp_all(f, block);
    esp_shifted_expansion(f, &sigmas, l, a)
}

/// The exceptional sets S₁ ⊂ S ⊂ U_{q+1} attached to a quadruple on the
/// unit circle.
///
/// For a quadruple T = {u₁, …, u₄} ⊂ U_{q+1} such that no fifth circle
/// point u₅ has σ_{5,2}(T ∪ {u₅}) = 0:
///
/// * S₁ consists of the four values (σ_{4,3} + u_i σ_{4,2}) / (σ_{4,2} +
///   u_i σ_{4,1}) together with √(σ_{4,3}/σ_{4,1}), and has exactly 5
///   elements, all on the unit circle;
/// * S = S₁ ∪ T has exactly 9 elements;
/// * for u₅ ∈ U ∖ T, the quotient σ_{5,3}/σ_{5,2} of the quintuple
///   T ∪ {u₅} lies in the quintuple exactly when u₅ ∈ S₁.
#[derive(Debug, Clone)]
pub struct ExceptionalSets {
    /// The five exceptional extension points.
    pub s1: Vec<Elem>,
    /// S₁ together with the quadruple itself (9 points).
    pub s: Vec<Elem>,
}

/// Computes the exceptional sets of a quadruple of circle indices.
///
/// Errors with the witness index if some extension point u₅ ∈ U ∖ T has
/// σ_{5,2}(T ∪ {u₅}) = 0 (the construction's hypothesis; it always holds
/// when m is odd, where σ_{5,2} never vanishes on circle quintuples).
pub fn exceptional_sets(
    f: &Field,
    circle: &crate::field::UnitCircle,
    quad: &[u8; 4],
) -> Result<ExceptionalSets> {
    let t: Vec<Elem> = quad.iter().map(|&i| circle.point(i as usize)).collect();
    let sig = esp_all(f, &t);
    // Hypothesis check: σ_{5,2}(T ∪ {u₅}) = σ_{4,2} + u₅ σ_{4,1} ≠ 0 for
    // every u₅ on the circle outside T.
    for i in 0..circle.len() {
        if quad.contains(&(i as u8)) {
            continue;
        }
        let u5 = circle.point(i);
        if sig[2] + f.mul(u5, sig[1]) == Elem::ZERO {
            return Err(Error::ExceptionalSetPrecondition {
                witness_index: i as u32,
            });
        }
    }
    // σ_{4,1} ≠ 0 for any genuine quadruple: σ₁ = σ₃ = 0 would force
    // Π(x+u_i) = (x² + √σ₂ x + √σ₄)², contradicting distinct roots, and
    // σ₁ = 0 ⟺ σ₃ = 0 by the conjugation identity.
    let mut s1 = Vec::with_capacity(5);
    for &ui in &t {
        let num = sig[3] + f.mul(ui, sig[2]);
        let den = sig[2] + f.mul(ui, sig[1]);
        let v = f.mul(
            num,
            f.inv(den), // nonzero: σ_{5,2} of the multiset T ⊎ {u_i} cannot vanish for u_i ∈ T
        );
        if !s1.contains(&v) {
            s1.push(v);
        }
    }
    let extra = f.sqrt(f.mul(sig[3], f.inv(sig[1])));
    if !s1.contains(&extra) {
        s1.push(extra);
    }
    let mut s = s1.clone();
    for &ui in &t {
        if !s.contains(&ui) {
            s.push(ui);
        }
    }
    Ok(ExceptionalSets { s1, s })
}
