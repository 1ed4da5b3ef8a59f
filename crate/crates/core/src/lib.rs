//! Single-qubit private quantum channels without ancillas.
//!
//! A private quantum channel (PQC) encrypts a publicly known set of plaintext
//! states by applying a unitary drawn from a keyed ensemble, so that an
//! interceptor without the key always sees one fixed ciphertext state. This
//! crate provides:
//!
//! - [`qmath`]: small complex/Hermitian linear algebra, Bloch-sphere
//!   conversions and entropy primitives,
//! - [`channels`]: random-unitary and λ-diagonal representations of qubit
//!   unital channels, complete positivity, entropy exchange,
//! - [`pqc`]: classification of plaintext sets, PQC verification,
//!   key-entropy lower bounds and optimal channel synthesis,
//! - [`apqc`]: the entropy-security frontier for approximate PQCs over the
//!   full qubit state space, with a brute-force grid oracle,
//! - [`protocol`]: seeded key streams and encrypt/decrypt round trips with
//!   eavesdropper auditing.

pub mod apqc;
pub mod channels;
pub mod pqc;
pub mod protocol;
pub mod qmath;

/// Tolerance for state validity checks (Bloch norm, trace, eigenvalue floor).
pub const TOL_STATE: f64 = 1e-9;
/// Tolerance for probability distributions.
pub const TOL_PROB: f64 = 1e-9;
/// Tolerance for hermiticity checks.
pub const TOL_HERM: f64 = 1e-10;
/// Tolerance for unitarity and rotation checks.
pub const TOL_UNIT: f64 = 1e-10;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("Bloch vector of norm {0} lies outside the unit ball")]
    UnphysicalBloch(f64),
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("matrix is not a proper rotation (max deviation {0:.3e})")]
    NotRotation(f64),
    #[error("operator is not a valid density operator: {0}")]
    InvalidState(String),
    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),
    #[error("channel is not completely positive (min probability {0:.3e})")]
    NotCompletelyPositive(f64),
    #[error("argument {name} = {value} outside the allowed range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("ciphertext distance theta = {theta} exceeds delta = {delta}")]
    ThetaExceedsDelta { theta: f64, delta: f64 },
    #[error("plaintext set is empty")]
    EmptySet,
    #[error("key stream length {key} does not match message length {msg}")]
    LengthMismatch { key: usize, msg: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
