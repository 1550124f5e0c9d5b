//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors reported by the toolkit.
///
/// Every variant corresponds to a violated precondition or a falsified
/// internal invariant; computations that merely *fail to verify a claim*
/// (e.g. a block set that is not a t-design) report that through their
/// result type instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Field degree out of the supported range m ∈ {4, 5, 6, 7}.
    UnsupportedDegree { m: u32 },
    /// The reduction polynomial is not primitive over GF(2) (or not of the
    /// requested degree), so it cannot define the field presentation.
    NotPrimitive { poly: u32, degree: u32 },
    /// A block-set family was requested for a (k, l) pair outside its
    /// supported list.
    UnsupportedFamily {
        family: &'static str,
        k: u32,
        l: u32,
    },
    /// An operation requiring a specific parity of m was called with the
    /// other parity.
    ParityMismatch { required: &'static str, m: u32 },
    /// A quadruple handed to the exceptional-set construction admits an
    /// extension u₅ (the witness) on which σ_{5,2} vanishes, violating the
    /// construction's hypothesis.
    ExceptionalSetPrecondition { witness_index: u32 },
    /// A support-enumeration kernel had dimension above the bound that the
    /// support-multiplicity law allows for k ≤ 7.
    KernelAnomaly { k: u32, dim: u32, block_rank: u64 },
    /// A kernel of dimension ≥ 2 contained an everywhere-nonzero vector,
    /// which would give two projectively independent codewords with the same
    /// support — falsifying the support-multiplicity law.
    SupportMultiplicityViolated { k: u32, block_rank: u64 },
    /// A trace word vanished on more than 6 points of the unit circle.
    ZeroSetTooLarge { count: u32 },
    /// The weight-q−4 parameterization was invoked with a point of the block
    /// that is not its distinguished double root.
    NotDistinguishedRoot { index: u32 },
    /// A design-index transform did not divide exactly.
    NonIntegralIndex { num: u64, den: u64 },
    /// Block parameters (v, k, t, ...) out of range or inconsistent.
    BadParameters(String),
    /// A Möbius map with vanishing determinant was constructed.
    DegenerateMoebius,
    /// A Möbius map expected to stabilize the unit circle moved a point off
    /// it (the offending point index is reported).
    NotAStabilizer { point_index: u32 },
    /// The generated group closure has an unexpected order.
    ClosureOrderMismatch { expected: u64, got: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedDegree { m } => {
                write!(f, "unsupported field degree m = {m} (supported: 4..=7)")
            }
            Error::NotPrimitive { poly, degree } => write!(
                f,
                "polynomial {poly:#x} is not a degree-{degree} primitive polynomial over GF(2)"
            ),
            Error::UnsupportedFamily { family, k, l } => {
                write!(f, "family `{family}` does not support (k, l) = ({k}, {l})")
            }
            Error::ParityMismatch { required, m } => {
                write!(f, "operation requires {required} m, got m = {m}")
            }
            Error::ExceptionalSetPrecondition { witness_index } => write!(
                f,
                "quadruple admits an extension with vanishing sigma_5,2 (witness point index {witness_index})"
            ),
            Error::KernelAnomaly { k, dim, block_rank } => write!(
                f,
                "support kernel for a {k}-subset (colex rank {block_rank}) has dimension {dim} > 2"
            ),
            Error::SupportMultiplicityViolated { k, block_rank } => write!(
                f,
                "kernel of dimension >= 2 for a {k}-subset (colex rank {block_rank}) contains a full-support vector"
            ),
            Error::ZeroSetTooLarge { count } => {
                write!(f, "trace word vanishes on {count} > 6 unit-circle points")
            }
            Error::NotDistinguishedRoot { index } => write!(
                f,
                "block point {index} is not the distinguished double root of the block"
            ),
            Error::NonIntegralIndex { num, den } => {
                write!(f, "design-index transform is not integral: {num}/{den}")
            }
            Error::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
            Error::DegenerateMoebius => write!(f, "Moebius map has zero determinant"),
            Error::NotAStabilizer { point_index } => write!(
                f,
                "map moves unit-circle point {point_index} off the unit circle"
            ),
            Error::ClosureOrderMismatch { expected, got } => {
                write!(f, "group closure has order {got}, expected {expected}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
