//! GF(2^{2m}) arithmetic, the subfield GF(2^m), and the unit circle U_{q+1}.
//!
//! The field GF(q²), q = 2^m, is presented as GF(2)[x]/(p(x)) for a fixed
//! primitive polynomial p of degree 2m. Elements are bitmasks of their
//! polynomial coefficients; multiplication goes through log/antilog tables
//! indexed by the discrete logarithm base α, where α is the class of x.
//!
//! Key structural facts used throughout the crate (and re-checked by tests):
//!
//! * the subfield GF(q) is exactly the fixed set of the Frobenius map
//!   x ↦ x^q;
//! * the unit circle U_{q+1} = { x : x^{q+1} = 1 } is the cyclic group
//!   generated by β = α^{q−1}, and u^q = u^{−1} on it;
//! * in characteristic 2 every element has a unique square root,
//!   √x = x^{2^{2m−1}};
//! * the relative trace Tr(x) = x + x^q lands in GF(q).

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An element of GF(2^{2m}), stored as the bitmask of its coefficients over
/// GF(2) (bit i = coefficient of x^i). Addition is coefficient-wise XOR and
/// needs no field context; all other arithmetic goes through [`Field`].
#[derive(Copy, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u16);

impl Elem {
    /// The additive identity.
    pub const ZERO: Elem = Elem(0);
    /// The multiplicative identity.
    pub const ONE: Elem = Elem(1);

    /// Whether this is the zero element.
    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// Addition in characteristic 2 is xor; clippy's arithmetic-impl lint
// expects `+` on the raw representation.
impl core::ops::Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl core::ops::AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

// In characteristic 2 subtraction and addition coincide.
impl core::ops::Sub for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl core::fmt::Debug for Elem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Elem({:#x})", self.0)
    }
}

/// Fixed primitive reduction polynomials, one per supported degree 2m.
/// Each is re-verified at construction time; the table is a presentation
/// choice, not a trusted fact.
const REDUCTION_POLYS: [(u32, u32); 4] = [
    (8, 0x11D),   // x^8 + x^4 + x^3 + x^2 + 1
    (10, 0x409),  // x^10 + x^3 + 1
    (12, 0x1053), // x^12 + x^6 + x^4 + x + 1
    (14, 0x4443), // x^14 + x^10 + x^6 + x + 1
];

/// Arithmetic context for GF(2^{2m}), with log/antilog tables.
///
/// Debug output shows only the defining data, not the tables.
pub struct Field {
    m: u32,
    poly: u32,
    /// log[x] = discrete log of x base α, for x ≠ 0 (log[0] is a sentinel).
    log: Vec<u16>,
    /// exp[i] = α^i for i in 0..2(q²−1), doubled so products need no modulo.
    exp: Vec<u16>,
    /// frob[x] = x^q, tabulated for all x.
    frob: Vec<u16>,
}

impl core::fmt::Debug for Field {
    fn fmt(&self, w: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        w.debug_struct("Field")
            .field("m", &self.m)
            .field("poly", &self.poly)
            .finish_non_exhaustive()
    }
}

impl Field {
    /// Builds GF(2^{2m}) for m ∈ {4, 5, 6, 7} with the fixed reduction
    /// polynomial for that degree.
    pub fn new(m: u32) -> Result<Field> {
        let poly = REDUCTION_POLYS
            .iter()
            .find(|&&(deg, _)| deg == 2 * m)
            .map(|&(_, p)| p)
            .ok_or(Error::UnsupportedDegree { m })?;
        Field::with_poly(m, poly)
    }

    /// Builds GF(2^{2m}) from an explicit degree-2m reduction polynomial,
    /// verifying that it is primitive (hence irreducible).
    ///
    /// The verification is the table construction itself: the powers
    /// α⁰, α¹, …, α^{2^{2m}−2} of the class of x are computed by repeated
    /// multiplication by x. If they are pairwise distinct, nonzero, and
    /// return to 1 after exactly 2^{2m}−1 steps, then every nonzero residue
    /// is a power of α and therefore invertible, so the quotient ring is a
    /// field (p irreducible) and α generates its multiplicative group
    /// (p primitive). Any early repetition or early return to 1 disproves
    /// primitivity and is reported as an error naming the polynomial.
    pub fn with_poly(m: u32, poly: u32) -> Result<Field> {
        if !(4..=7).contains(&m) {
            return Err(Error::UnsupportedDegree { m });
        }
        let n = 2 * m;
        let size: u32 = 1 << n;
        let err = Error::NotPrimitive { poly, degree: n };
        // Degree must be exactly n and the constant term must be 1
        // (otherwise x divides p and the class of x is a zero divisor).
        if poly >> n != 1 || poly & 1 == 0 {
            return Err(err);
        }

        let order = (size - 1) as usize;
        let mut log = vec![u16::MAX; size as usize];
        let mut exp = vec![0u16; 2 * order];
        let mut v: u32 = 1;
        for i in 0..order {
            if v == 1 && i > 0 {
                // The class of x has multiplicative order i < 2^{2m}−1.
                return Err(err);
            }
            if log[v as usize] != u16::MAX {
                // A repeated power: x is not even a unit of maximal order.
                return Err(err);
            }
            log[v as usize] = i as u16;
            exp[i] = v as u16;
            exp[i + order] = v as u16;
            v <<= 1;
            if v & size != 0 {
                v ^= poly;
            }
        }
        if v != 1 {
            return Err(err);
        }

        let mut field = Field {
            m,
            poly,
            log,
            exp,
            frob: Vec::new(),
        };
        // Tabulate Frobenius x ↦ x^q.
        let q = field.q() as i64;
        let mut frob = vec![0u16; size as usize];
        for x in 1..size {
            let e = field.log[x as usize] as i64;
            frob[x as usize] = field.alpha_pow(e * q).0;
        }
        field.frob = frob;
        Ok(field)
    }

    /// m, where the field is GF(2^{2m}).
    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// q = 2^m, the order of the subfield.
    #[inline]
    pub fn q(&self) -> u32 {
        1 << self.m
    }

    /// q² = 2^{2m}, the order of the field.
    #[inline]
    pub fn order(&self) -> u32 {
        1 << (2 * self.m)
    }

    /// The reduction polynomial as a coefficient bitmask.
    #[inline]
    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// α, the class of x (a generator of the multiplicative group).
    #[inline]
    pub fn alpha(&self) -> Elem {
        Elem(2)
    }

    /// α^e for any signed exponent (reduced mod q²−1).
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> Elem {
        let order = (self.order() - 1) as i64;
        Elem(self.exp[e.rem_euclid(order) as usize])
    }

    /// Discrete log base α of a nonzero element.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as u32)
        }
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            Elem::ZERO
        } else {
            let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
            Elem(self.exp[i])
        }
    }

    /// Multiplicative inverse. Panics on zero; callers validate nonzeroness
    /// at their public boundaries.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let order = self.order() as usize - 1;
        Elem(self.exp[order - self.log[a.0 as usize] as usize])
    }

    /// Quotient a/b, or `None` when b = 0.
    #[inline]
    pub fn checked_div(&self, a: Elem, b: Elem) -> Option<Elem> {
        if b.is_zero() {
            None
        } else {
            Some(self.mul(a, self.inv(b)))
        }
    }

    /// a^e for a signed exponent. 0^0 = 1 by convention; 0 to a negative
    /// power panics.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        if a.is_zero() {
            if e == 0 {
                return Elem::ONE;
            }
            assert!(e > 0, "negative power of zero");
            return Elem::ZERO;
        }
        let order = (self.order() - 1) as i64;
        let le = (self.log[a.0 as usize] as i64 * (e.rem_euclid(order))).rem_euclid(order);
        Elem(self.exp[le as usize])
    }

    /// The unique square root of a (every element of a characteristic-2
    /// field is a square: √a = a^{2^{2m−1}}).
    #[inline]
    pub fn sqrt(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = self.order() - 1;
        let e = self.log[a.0 as usize] as u32;
        // Halve the discrete log mod the (odd-free) group order: the group
        // order q²−1 is odd, so 2 is invertible and e/2 means e·2^{−1}.
        let half = if e.is_multiple_of(2) {
            e / 2
        } else {
            (e + order) / 2
        };
        Elem(self.exp[half as usize])
    }

    /// Frobenius over the subfield: x ↦ x^q.
    #[inline]
    pub fn frobenius(&self, a: Elem) -> Elem {
        Elem(self.frob[a.0 as usize])
    }

    /// Relative trace onto the subfield: Tr(x) = x + x^q ∈ GF(q).
    #[inline]
    pub fn trace_to_subfield(&self, a: Elem) -> Elem {
        a + self.frobenius(a)
    }

    /// Whether a lies in the subfield GF(q) (the Frobenius fixed set).
    #[inline]
    pub fn in_subfield(&self, a: Elem) -> bool {
        self.frob[a.0 as usize] == a.0
    }

    /// All q elements of the subfield GF(q), sorted by bitmask.
    pub fn subfield_elements(&self) -> Vec<Elem> {
        (0..self.order())
            .map(|x| Elem(x as u16))
            .filter(|&x| self.in_subfield(x))
            .collect()
    }

    /// Raw table access for hot loops: (log, exp, q²−1).
    ///
    /// `log` is indexed by bitmask (entry for 0 is a sentinel), `exp` by
    /// exponent and is doubled in length, so `exp[log[a] + log[b]]` is a
    /// valid product of nonzero a, b without a modulo.
    #[inline]
    pub fn tables(&self) -> (&[u16], &[u16], u32) {
        (&self.log, &self.exp, self.order() - 1)
    }
}

/// The unit circle U_{q+1} ⊂ GF(q²): the cyclic group of order q+1
/// generated by β = α^{q−1}, indexed by discrete log base β.
pub struct UnitCircle {
    beta: Elem,
    points: Vec<Elem>,
    /// Bitmask → circle index, with `u16::MAX` off the circle.
    index_of: Vec<u16>,
}

impl UnitCircle {
    /// Enumerates U_{q+1} for the given field: points\[i\] = β^i, i = 0..q.
    pub fn new(f: &Field) -> UnitCircle {
        let q = f.q();
        let beta = f.alpha_pow((q - 1) as i64);
        let mut points = Vec::with_capacity(q as usize + 1);
        let mut index_of = vec![u16::MAX; f.order() as usize];
        let mut v = Elem::ONE;
        for i in 0..=q {
            debug_assert_eq!(index_of[v.0 as usize], u16::MAX, "unit circle repeats");
            index_of[v.0 as usize] = i as u16;
            points.push(v);
            v = f.mul(v, beta);
        }
        debug_assert_eq!(v, Elem::ONE, "beta does not have order q+1");
        UnitCircle {
            beta,
            points,
            index_of,
        }
    }

    /// β = α^{q−1}, the generator used for indexing.
    #[inline]
    pub fn beta(&self) -> Elem {
        self.beta
    }

    /// Number of points, q+1.
    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the circle is empty (it never is; for clippy's benefit).
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// β^i.
    #[inline]
    pub fn point(&self, i: usize) -> Elem {
        self.points[i]
    }

    /// All points in index order.
    #[inline]
    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    /// Circle index of x, if x ∈ U_{q+1}.
    #[inline]
    pub fn index_of(&self, x: Elem) -> Option<usize> {
        let i = self.index_of[x.0 as usize];
        (i != u16::MAX).then_some(i as usize)
    }

    /// Whether x lies on the unit circle.
    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.index_of[x.0 as usize] != u16::MAX
    }

    /// Index of the inverse of point i (inverse = conjugate on the circle).
    #[inline]
    pub fn inverse_index(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.points.len() - i
        }
    }

    /// Maps a block of circle indices to field elements.
    pub fn block_elems(&self, block: &[u8]) -> Vec<Elem> {
        block.iter().map(|&i| self.points[i as usize]).collect()
    }
}
