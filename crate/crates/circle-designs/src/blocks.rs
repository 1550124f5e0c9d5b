//! Block-set families over the unit circle, cut out by σ-vanishing
//! conditions.
//!
//! A block is a k-subset of U_{q+1}, stored as strictly increasing circle
//! indices (discrete logs base β). The families:
//!
//! * **plain** B_{σk,l}: σ_{k,l}(B) = 0;
//! * **u-variant** B^u_{σk,l}: σ_{k,l}(B − a) = 0 for some a ∈ U_{q+1};
//! * **b-variant** B^b_{σk,l}: σ_{k,l}(B − a) = 0 for some a ∈ B;
//! * **b̄-variant** B^b̄_{σk,l}: σ_{k,l}(B − a) = 0 for some a ∈ U ∖ B;
//! * **zero63**: 6-subsets with σ_{5,2}(B ∖ {u}) = 0 for some u ∈ B;
//! * **zero73**: 7-subsets with σ_{5,2}(B ∖ {u_i, u_j}) = 0 for some pair;
//! * **general**: f(σ_{k,0}, …, σ_{k,k}) = 0 for a caller-supplied
//!   polynomial f.
//!
//! All scans enumerate k-subsets in colexicographic rank order and accept a
//! rank range, so callers can partition a scan across workers and merge the
//! per-range outputs by concatenation without any nondeterminism.

use alloc::vec;
use alloc::vec::Vec;

use crate::esp::esp_all;
use crate::field::{Elem, Field, UnitCircle};
use crate::subsets::{binomial, binomial_odd, for_each_ksubset_in_range};
use crate::{Error, Result};

/// A set of equal-size blocks over v points, stored flat.
///
/// Blocks are strictly increasing index lists; the container preserves the
/// order in which blocks were pushed (family scans push in colex order of
/// the underlying subsets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    v: u16,
    k: u8,
    data: Vec<u8>,
}

impl BlockSet {
    /// An empty block set over v points with block size k.
    pub fn new(v: u16, k: u8) -> BlockSet {
        BlockSet {
            v,
            k,
            data: Vec::new(),
        }
    }

    /// Number of points of the underlying point set.
    #[inline]
    pub fn v(&self) -> u16 {
        self.v
    }

    /// Block size.
    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    /// Number of blocks.
    #[inline]
    pub fn len(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.data.len() / self.k as usize
        }
    }

    /// Whether the set has no blocks.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Appends a block (must be strictly increasing and within range).
    pub fn push(&mut self, block: &[u8]) {
        debug_assert_eq!(block.len(), self.k as usize);
        debug_assert!(block.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(block.iter().all(|&i| (i as u16) < self.v));
        self.data.extend_from_slice(block);
    }

    /// The i-th block in insertion order.
    #[inline]
    pub fn get(&self, i: usize) -> &[u8] {
        let k = self.k as usize;
        &self.data[i * k..(i + 1) * k]
    }

    /// Iterates over blocks in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks_exact(self.k.max(1) as usize)
    }

    /// Appends all blocks of `other` (same v and k required).
    pub fn extend(&mut self, other: &BlockSet) {
        assert_eq!((self.v, self.k), (other.v, other.k));
        self.data.extend_from_slice(&other.data);
    }

    /// Sorts blocks lexicographically (the serialization order).
    pub fn sort_lex(&mut self) {
        let k = self.k as usize;
        if k == 0 {
            return;
        }
        let mut blocks: Vec<&[u8]> = self.data.chunks_exact(k).collect();
        blocks.sort_unstable();
        let mut sorted = Vec::with_capacity(self.data.len());
        for b in blocks {
            sorted.extend_from_slice(b);
        }
        self.data = sorted;
    }

    /// Whether the blocks are in lexicographic order.
    pub fn is_sorted_lex(&self) -> bool {
        let k = self.k as usize;
        k == 0
            || self
                .data
                .chunks_exact(k)
                .zip(self.data.chunks_exact(k).skip(1))
                .all(|(a, b)| a <= b)
    }

    /// Binary-searches for a block; requires `sort_lex` first.
    pub fn contains_sorted(&self, block: &[u8]) -> bool {
        let k = self.k as usize;
        if k == 0 || block.len() != k {
            return false;
        }
        let n = self.len();
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(block) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Set equality irrespective of block order.
    pub fn eq_as_sets(&self, other: &BlockSet) -> bool {
        if (self.v, self.k, self.len()) != (other.v, other.k, other.len()) {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.sort_lex();
        b.sort_lex();
        a.data == b.data
    }

    /// The set of complements U ∖ B of the blocks (block size v − k).
    pub fn complement_blocks(&self) -> BlockSet {
        let v = self.v;
        let mut out = BlockSet::new(v, (v - self.k as u16) as u8);
        let mut comp = Vec::with_capacity(v as usize);
        for b in self.iter() {
            comp.clear();
            let mut it = b.iter().peekable();
            for p in 0..v as u8 {
                if it.peek() == Some(&&p) {
                    it.next();
                } else {
                    comp.push(p);
                }
            }
            out.push(&comp);
        }
        out
    }
}

/// A formal polynomial in σ_{k,0}, …, σ_{k,k} with GF(q²) coefficients,
/// stored as a sum of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPoly {
    /// (coefficient, exponents of σ_0..σ_7). A term with zero coefficient
    /// is allowed but contributes nothing.
    pub terms: Vec<(Elem, [u8; 8])>,
}

impl SigmaPoly {
    /// The zero polynomial (vanishes on every block).
    pub fn zero() -> SigmaPoly {
        SigmaPoly { terms: Vec::new() }
    }

    /// A single σ_{k,l} (for building simple conditions programmatically).
    pub fn sigma(l: usize) -> SigmaPoly {
        let mut exps = [0u8; 8];
        exps[l] = 1;
        SigmaPoly {
            terms: vec![(Elem::ONE, exps)],
        }
    }

    /// Largest σ subscript referenced.
    pub fn max_subscript(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|(_, e)| e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i))
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the polynomial on the σ values of a block.
    pub fn eval(&self, f: &Field, sigmas: &[Elem]) -> Elem {
        let mut acc = Elem::ZERO;
        for (coeff, exps) in &self.terms {
            let mut term = *coeff;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = f.mul(term, f.pow(sigmas[i], e as i64));
                }
            }
            acc += term;
        }
        acc
    }
}

/// A block-set family over the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// B_{σk,l}: σ_{k,l}(B) = 0. Supports any k ≤ 7, l ≤ k.
    Plain { k: u32, l: u32 },
    /// B^u_{σk,l}: some shift a ∈ U_{q+1} kills σ_{k,l}(B − a).
    /// Supported (k, l): (4,2), (5,2), (5,3), (6,3), (7,3).
    ShiftU { k: u32, l: u32 },
    /// B^b_{σk,l}: some shift a ∈ B. Supported (k, l): (5,3), (6,2).
    ShiftB { k: u32, l: u32 },
    /// B^b̄_{σk,l}: some shift a ∈ U ∖ B. Supported (k, l): (5,3), (6,2).
    ShiftBBar { k: u32, l: u32 },
    /// 6-subsets with σ_{5,2}(B ∖ {u}) = 0 for some u ∈ B (even m only).
    Zero63,
    /// 7-subsets with σ_{5,2}(B ∖ {u_i, u_j}) = 0 for some pair (even m only).
    Zero73,
    /// k-subsets on which the given σ-polynomial vanishes.
    General { k: u32, poly: SigmaPoly },
}

impl Family {
    /// Block size of the family.
    pub fn k(&self) -> u32 {
        match self {
            Family::Plain { k, .. }
            | Family::ShiftU { k, .. }
            | Family::ShiftB { k, .. }
            | Family::ShiftBBar { k, .. }
            | Family::General { k, .. } => *k,
            Family::Zero63 => 6,
            Family::Zero73 => 7,
        }
    }

    /// Validates the family against its supported parameter list and the
    /// field parity.
    pub fn validate(&self, f: &Field) -> Result<()> {
        let unsupported = |family, k, l| Err(Error::UnsupportedFamily { family, k, l });
        match *self {
            Family::Plain { k, l } => {
                if k > 7 || l > k {
                    return unsupported("plain", k, l);
                }
            }
            Family::ShiftU { k, l } => {
                if !matches!((k, l), (4, 2) | (5, 2) | (5, 3) | (6, 3) | (7, 3)) {
                    return unsupported("u", k, l);
                }
            }
            Family::ShiftB { k, l } => {
                if !matches!((k, l), (5, 3) | (6, 2)) {
                    return unsupported("b", k, l);
                }
            }
            Family::ShiftBBar { k, l } => {
                if !matches!((k, l), (5, 3) | (6, 2)) {
                    return unsupported("bbar", k, l);
                }
            }
            Family::Zero63 | Family::Zero73 => {
                if !f.m().is_multiple_of(2) {
                    return Err(Error::ParityMismatch {
                        required: "even",
                        m: f.m(),
                    });
                }
            }
            Family::General { k, ref poly } => {
                if k > 7 || poly.max_subscript() > k as usize {
                    return unsupported("general", k, poly.max_subscript() as u32);
                }
            }
        }
        Ok(())
    }
}

/// Coefficients of the shift polynomial P(a) = σ_{k,l}(B − a) as a
/// polynomial in a: the a^{l−i} coefficient is σ_{k,i}(B) when C(k−i, l−i)
/// is odd and 0 otherwise (binomials reduce mod 2 in characteristic 2).
/// Returned indexed by degree: `c[d]` is the a^d coefficient.
#[inline]
fn shift_poly_coeffs(k: u32, l: u32, sigmas: &[Elem]) -> [Elem; 8] {
    let mut c = [Elem::ZERO; 8];
    for i in 0..=l {
        if binomial_odd((k - i) as u64, (l - i) as u64) {
            c[(l - i) as usize] = sigmas[i as usize];
        }
    }
    c
}

/// Evaluates Σ_{d=0}^{l} c[d] a^d by Horner's rule.
#[inline]
fn eval_shift_poly(f: &Field, c: &[Elem; 8], l: u32, a: Elem) -> Elem {
    let mut acc = c[l as usize];
    for d in (0..l).rev() {
        acc = f.mul(acc, a) + c[d as usize];
    }
    acc
}

/// Whether the block (given as circle elements) belongs to the family.
/// `scratch` carries the σ buffer to avoid reallocation in scans.
fn family_contains(f: &Field, circle: &UnitCircle, fam: &Family, elems: &[Elem]) -> bool {
    match *fam {
        Family::Plain { l, .. } => esp_all(f, elems)[l as usize].is_zero(),
        Family::ShiftU { k, l } => {
            let sig = esp_all(f, elems);
            let c = shift_poly_coeffs(k, l, &sig);
            circle
                .points()
                .iter()
                .any(|&a| eval_shift_poly(f, &c, l, a).is_zero())
        }
        Family::ShiftB { k, l } => {
            let sig = esp_all(f, elems);
            let c = shift_poly_coeffs(k, l, &sig);
            elems
                .iter()
                .any(|&a| eval_shift_poly(f, &c, l, a).is_zero())
        }
        Family::ShiftBBar { k, l } => {
            let sig = esp_all(f, elems);
            let c = shift_poly_coeffs(k, l, &sig);
            circle
                .points()
                .iter()
                .any(|&a| !elems.contains(&a) && eval_shift_poly(f, &c, l, a).is_zero())
        }
        Family::Zero63 => drop_some_vanishes(f, elems, 1),
        Family::Zero73 => drop_some_vanishes(f, elems, 2),
        Family::General { ref poly, .. } => {
            let sig = esp_all(f, elems);
            poly.eval(f, &sig).is_zero()
        }
    }
}

/// Whether σ_{5,2} vanishes on B minus some `drop`-subset (drop ∈ {1, 2};
/// |B| = 5 + drop). Definitional: each candidate sub-block is evaluated
/// directly.
fn drop_some_vanishes(f: &Field, elems: &[Elem], drop: usize) -> bool {
    let k = elems.len();
    debug_assert_eq!(k, 5 + drop);
    let mut sub = [Elem::ZERO; 5];
    let mut check = |skip1: usize, skip2: usize| {
        let mut j = 0;
        for (i, &e) in elems.iter().enumerate() {
            if i != skip1 && i != skip2 {
                sub[j] = e;
                j += 1;
            }
        }
        esp_all(f, &sub)[2].is_zero()
    };
    if drop == 1 {
        (0..k).any(|i| check(i, usize::MAX))
    } else {
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .any(|(i, j)| check(i, j))
    }
}

/// Collects the family's blocks with colex subset ranks in [lo, hi).
pub fn blockset_in_range(
    f: &Field,
    circle: &UnitCircle,
    fam: &Family,
    lo: u64,
    hi: u64,
) -> Result<BlockSet> {
    fam.validate(f)?;
    let k = fam.k() as usize;
    let mut out = BlockSet::new(circle.len() as u16, k as u8);
    let mut elems = vec![Elem::ZERO; k];
    for_each_ksubset_in_range(circle.len() as u32, k, lo, hi, |set| {
        for (e, &i) in elems.iter_mut().zip(set) {
            *e = circle.point(i as usize);
        }
        if family_contains(f, circle, fam, &elems) {
            out.push(set);
        }
    });
    Ok(out)
}

/// Counts the family's blocks with colex subset ranks in [lo, hi) without
/// materializing them.
pub fn count_in_range(
    f: &Field,
    circle: &UnitCircle,
    fam: &Family,
    lo: u64,
    hi: u64,
) -> Result<u64> {
    fam.validate(f)?;
    let k = fam.k() as usize;
    let mut count = 0u64;
    let mut elems = vec![Elem::ZERO; k];
    for_each_ksubset_in_range(circle.len() as u32, k, lo, hi, |set| {
        for (e, &i) in elems.iter_mut().zip(set) {
            *e = circle.point(i as usize);
        }
        if family_contains(f, circle, fam, &elems) {
            count += 1;
        }
    });
    Ok(count)
}

/// Collects all blocks of the family.
pub fn blockset(f: &Field, circle: &UnitCircle, fam: &Family) -> Result<BlockSet> {
    blockset_in_range(f, circle, fam, 0, u64::MAX)
}

/// Total number of k-subsets a family scan ranges over (for partitioning).
pub fn scan_size(circle: &UnitCircle, fam: &Family) -> u64 {
    binomial(circle.len() as u64, fam.k() as u64)
}

/// Accelerated membership for B^u_{σ7,3}: B belongs exactly when
/// σ_{6,3}(B ∖ {a}) = 0 for some a ∈ B. The 6-point σ's come from dividing
/// Π(x + u_i) by (x + a), so each candidate costs three multiplications.
/// The definitional scan (`Family::ShiftU { k: 7, l: 3 }`) is the reference;
/// the two are cross-validated exhaustively in tests at q = 16 and q = 32
/// and on a rank slice at q = 64.
pub fn u73_contains_fast(f: &Field, elems: &[Elem; 7]) -> bool {
    // σ_1..σ_3 of the 7 points via the truncated product DP.
    let (mut s1, mut s2, mut s3) = (Elem::ZERO, Elem::ZERO, Elem::ZERO);
    for &u in elems {
        s3 += f.mul(u, s2);
        s2 += f.mul(u, s1);
        s1 += u;
    }
    // For a ∈ B, the quotient Π/(x+a) has c1 = σ1 + a, c2 = σ2 + a c1,
    // c3 = σ3 + a c2 = σ_{6,3}(B ∖ {a}).
    elems.iter().any(|&a| {
        let c1 = s1 + a;
        let c2 = s2 + f.mul(a, c1);
        let c3 = s3 + f.mul(a, c2);
        c3.is_zero()
    })
}

/// Counts B^u_{σ7,3} members on a rank range via the accelerated path
/// (used for the large-field streaming scans).
pub fn count_u73_fast_in_range(f: &Field, circle: &UnitCircle, lo: u64, hi: u64) -> u64 {
    let mut count = 0u64;
    let mut elems = [Elem::ZERO; 7];
    for_each_ksubset_in_range(circle.len() as u32, 7, lo, hi, |set| {
        for (e, &i) in elems.iter_mut().zip(set) {
            *e = circle.point(i as usize);
        }
        if u73_contains_fast(f, &elems) {
            count += 1;
        }
    });
    count
}
