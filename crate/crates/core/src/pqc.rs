//! Private quantum channels for arbitrary qubit plaintext sets.
//!
//! A plaintext set is classified by the affine dimension of its
//! trace-preserving hull in the Bloch ball. The hull dimension determines
//! the optimal key entropy: 0 bits for a single state, 1 bit for lines and
//! planes, 2 bits for the full ball. For lines and planes the synthesized
//! channel can additionally place the ciphertext at any distance theta up
//! to delta (the hull's distance from the total mixture), trading entropy
//! for ciphertext purity in the plane case.

use crate::channels::{
    apply_bloch, check_orthogonal_terms, entropy_exchange, pauli_decomposition,
    probs_from_lambdas, PauliDiagonal, RandomUnitaryChannel, Rotation, UnitalChannel,
};
use crate::qmath::{
    bloch_to_density, h_function, shannon_entropy, von_neumann_entropy, BlochVector,
    DensityOperator, QubitUnitary,
};
use crate::{Error, Result};

/// Rank threshold on singular values of the state-difference matrix.
const TOL_RANK: f64 = 1e-7;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A nonempty set of plaintext states given as Bloch vectors.
#[derive(Debug, Clone)]
pub struct PlaintextSet {
    states: Vec<BlochVector>,
}

impl PlaintextSet {
    pub fn new(states: Vec<BlochVector>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptySet);
        }
        for s in &states {
            s.validate()?;
        }
        Ok(PlaintextSet { states })
    }

    pub fn states(&self) -> &[BlochVector] {
        &self.states
    }
}

/// Classification of the trace-preserving hull of a plaintext set.
#[derive(Debug, Clone)]
pub struct TpHullDescriptor {
    /// Affine dimension of the hull, 0..=3.
    pub affine_dim: usize,
    /// Orthonormal direction vectors spanning the hull (affine_dim entries).
    pub basis: Vec<BlochVector>,
    /// Orthogonal projection of the origin onto the affine hull.
    pub anchor: BlochVector,
    /// |anchor|: the minimum trace distance from the hull to I/2.
    pub delta: f64,
}

/// A synthesized private quantum channel for one plaintext set and target
/// ciphertext distance theta.
#[derive(Debug, Clone)]
pub struct PqcSolution {
    pub channel: UnitalChannel,
    pub decomposition: RandomUnitaryChannel,
    /// Bloch vector of the common ciphertext state rho0.
    pub ciphertext: BlochVector,
    /// Shannon entropy of the decomposition probabilities, in bits.
    pub key_entropy: f64,
    /// Trace distance of the ciphertext from the total mixture.
    pub theta: f64,
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Affine dimension, direction basis, minimum-norm point and delta of the
/// trace-preserving hull of `set`, at the default rank threshold.
pub fn classify(set: &PlaintextSet) -> TpHullDescriptor {
    classify_with_tol(set, TOL_RANK)
}

/// `classify` with an explicit singular-value threshold for rank decisions.
pub fn classify_with_tol(set: &PlaintextSet, tol_rank: f64) -> TpHullDescriptor {
    let states = set.states();
    let first = states[0];
    let diffs: Vec<BlochVector> = states[1..].iter().map(|s| s.sub(&first)).collect();

    // Singular values and left singular vectors of the 3 x (n-1) difference
    // matrix via the 3x3 Gram matrix D D^T.
    let mut gram = [[0.0f64; 3]; 3];
    for d in &diffs {
        let v = [d.x, d.y, d.z];
        for i in 0..3 {
            for j in 0..3 {
                gram[i][j] += v[i] * v[j];
            }
        }
    }
    let gram_h = crate::qmath::HermitianMatrix::new(
        3,
        gram.iter()
            .flatten()
            .map(|&x| num_complex::Complex64::new(x, 0.0))
            .collect(),
    )
    .expect("gram matrix is symmetric");
    let (eigs, vecs) = crate::qmath::hermitian_eigen(&gram_h);

    let mut basis = Vec::new();
    for (e, v) in eigs.iter().zip(vecs.iter()) {
        if e.max(0.0).sqrt() > tol_rank {
            let mut b = BlochVector::new(v[0].re, v[1].re, v[2].re);
            // Orient along the first state difference with a nonzero
            // component, so the basis transforms covariantly under global
            // rotations of the input set.
            if let Some(d) = diffs.iter().find(|d| d.dot(&b).abs() > tol_rank) {
                if d.dot(&b) < 0.0 {
                    b = b.scale(-1.0);
                }
            }
            basis.push(b);
        }
    }
    let affine_dim = basis.len();

    // Projection of the origin onto the affine hull through `first`.
    let mut anchor = first;
    for b in &basis {
        anchor = anchor.sub(&b.scale(first.dot(b)));
    }
    if affine_dim == 3 {
        anchor = BlochVector::ORIGIN;
    }
    let delta = anchor.norm();
    TpHullDescriptor { affine_dim, basis, anchor, delta }
}

// ---------------------------------------------------------------------------
// Verification and bounds
// ---------------------------------------------------------------------------

/// Outcome of checking a channel against a plaintext set.
#[derive(Debug, Clone)]
pub struct PqcCheck {
    pub ok: bool,
    /// Image of the first plaintext.
    pub ciphertext: BlochVector,
    /// Largest trace distance of any image from the first image.
    pub max_deviation: f64,
}

/// Checks that every plaintext maps to the same ciphertext within `tol`.
pub fn verify_pqc(ch: &RandomUnitaryChannel, set: &PlaintextSet, tol: f64) -> Result<PqcCheck> {
    let images: Vec<BlochVector> = set
        .states()
        .iter()
        .map(|s| apply_bloch(ch, s))
        .collect::<Result<_>>()?;
    let ciphertext = images[0];
    let max_deviation = images
        .iter()
        .map(|im| im.sub(&ciphertext).norm())
        .fold(0.0, f64::max);
    Ok(PqcCheck { ok: max_deviation <= tol, ciphertext, max_deviation })
}

/// The two lower bounds on the key entropy of a PQC realizing `ch` with
/// ciphertext `rho0`: the entropy exchange at the total mixture and the von
/// Neumann entropy of the ciphertext.
#[derive(Debug, Clone, Copy)]
pub struct KeyEntropyBounds {
    pub s_ex_bound: f64,
    pub cipher_bound: f64,
}

pub fn key_entropy_bounds(ch: &RandomUnitaryChannel, rho0: &DensityOperator) -> KeyEntropyBounds {
    KeyEntropyBounds {
        s_ex_bound: entropy_exchange(ch, &DensityOperator::maximally_mixed()),
        cipher_bound: von_neumann_entropy(&rho0.to_hermitian()).expect("ciphertext is a state"),
    }
}

/// Key entropy of the general ancilla-free PQC with a = lx - ly, b = lx + ly
/// and lz = 0: H = 2 - [h(a) + h(b)] / 4.
pub fn general_pqc_entropy(a: f64, b: f64) -> Result<f64> {
    if a.abs() > 1.0 {
        return Err(Error::OutOfRange { name: "a", value: a, range: "[-1, 1]" });
    }
    if b.abs() > 1.0 {
        return Err(Error::OutOfRange { name: "b", value: b, range: "[-1, 1]" });
    }
    Ok(2.0 - 0.25 * (h_function(a)? + h_function(b)?))
}

// ---------------------------------------------------------------------------
// Synthesis
// ---------------------------------------------------------------------------

/// Builds the four-term decomposition of a rotated diagonal channel out of
/// the rotated Pauli axes sigma . (R e_j). The terms stay mutually
/// orthogonal and the Bloch action is R diag(l) R^T.
fn rotated_pauli_channel(
    rotation: &Rotation,
    diag: PauliDiagonal,
) -> Result<(UnitalChannel, RandomUnitaryChannel)> {
    let probs = probs_from_lambdas(&diag);
    let mut terms = vec![(probs[0].max(0.0), QubitUnitary::identity())];
    for j in 0..3 {
        let axis = rotation.column(j);
        terms.push((probs[j + 1].max(0.0), QubitUnitary::from_pauli_axis(&axis)?));
    }
    let channel = UnitalChannel {
        rot_left: *rotation,
        diag,
        rot_right: rotation.transpose(),
    };
    Ok((channel, RandomUnitaryChannel::new(terms)?))
}

/// Rotation whose first column is the given unit vector.
fn frame_from_axis(axis: &BlochVector) -> Rotation {
    let c1 = axis.any_orthogonal_unit();
    let c2 = axis.cross(&c1);
    Rotation::from_columns(axis, &c1, &c2).expect("columns are orthonormal")
}

/// Synthesizes the minimal-entropy private quantum channel for the hull and
/// a target ciphertext distance theta.
///
/// - dim 0: identity channel (nothing to hide), H = 0.
/// - dim 1: two-term projection channel onto an axis tilted away from the
///   anchor so that the projected line collapses to a point at distance
///   theta; H = 1 for every admissible theta.
/// - dim 2: phase-damping channel diag(theta/delta, 0, 0) with the preserved
///   axis along the anchor; H = 2 - h(theta/delta) / 2.
/// - dim 3: completely depolarizing channel; theta must be 0 and H = 2.
pub fn optimal_pqc(hull: &TpHullDescriptor, theta: f64) -> Result<PqcSolution> {
    if theta < 0.0 {
        return Err(Error::OutOfRange { name: "theta", value: theta, range: "[0, delta]" });
    }
    if theta > hull.delta + crate::TOL_STATE && hull.affine_dim != 0 {
        return Err(Error::ThetaExceedsDelta { theta, delta: hull.delta });
    }
    let theta = theta.min(hull.delta);

    match hull.affine_dim {
        0 => {
            // Single plaintext: the identity channel already "encrypts" it,
            // and the ciphertext is the plaintext itself at distance delta.
            let channel = UnitalChannel::from_diagonal(PauliDiagonal::new(1.0, 1.0, 1.0));
            Ok(PqcSolution {
                channel,
                decomposition: RandomUnitaryChannel::identity(),
                ciphertext: hull.anchor,
                key_entropy: 0.0,
                theta: hull.delta,
            })
        }
        1 => {
            let line_dir = hull.basis[0];
            // Preserved axis m orthogonal to the line, tilted from the
            // anchor direction by phi with cos phi = theta / delta.
            let axis = if hull.delta > crate::TOL_STATE {
                let anchor_dir = hull.anchor.normalized()?;
                let tilt_dir = anchor_dir.cross(&line_dir);
                let cos_phi = (theta / hull.delta).clamp(0.0, 1.0);
                let sin_phi = (1.0 - cos_phi * cos_phi).max(0.0).sqrt();
                anchor_dir.scale(cos_phi).add(&tilt_dir.scale(sin_phi))
            } else {
                line_dir.any_orthogonal_unit()
            };
            let (channel, decomposition) =
                rotated_pauli_channel(&frame_from_axis(&axis), PauliDiagonal::new(1.0, 0.0, 0.0))?;
            let ciphertext = axis.scale(hull.anchor.dot(&axis));
            Ok(PqcSolution {
                channel,
                decomposition,
                ciphertext,
                key_entropy: 1.0,
                theta,
            })
        }
        2 => {
            if hull.delta <= crate::TOL_STATE {
                // Plane through the center: only theta = 0 is reachable and
                // any phase damping along the normal encrypts it; lambda = 1
                // minimizes the entropy.
                let normal = hull.basis[0].cross(&hull.basis[1]).normalized()?;
                let (channel, decomposition) = rotated_pauli_channel(
                    &frame_from_axis(&normal),
                    PauliDiagonal::new(1.0, 0.0, 0.0),
                )?;
                return Ok(PqcSolution {
                    channel,
                    decomposition,
                    ciphertext: BlochVector::ORIGIN,
                    key_entropy: 1.0,
                    theta: 0.0,
                });
            }
            let lambda = theta / hull.delta;
            let anchor_dir = hull.anchor.normalized()?;
            let (channel, decomposition) = rotated_pauli_channel(
                &frame_from_axis(&anchor_dir),
                PauliDiagonal::new(lambda, 0.0, 0.0),
            )?;
            let key_entropy = 2.0 - 0.5 * h_function(lambda)?;
            Ok(PqcSolution {
                channel,
                decomposition,
                ciphertext: anchor_dir.scale(theta),
                key_entropy,
                theta,
            })
        }
        3 => {
            if theta > crate::TOL_STATE {
                return Err(Error::ThetaExceedsDelta { theta, delta: 0.0 });
            }
            let diag = PauliDiagonal::new(0.0, 0.0, 0.0);
            Ok(PqcSolution {
                channel: UnitalChannel::from_diagonal(diag),
                decomposition: pauli_decomposition(&diag)?,
                ciphertext: BlochVector::ORIGIN,
                key_entropy: 2.0,
                theta: 0.0,
            })
        }
        dim => unreachable!("affine dimension {dim} out of range"),
    }
}

/// Kind of plaintext hull for the entropy-distance curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullKind {
    Line,
    Plane,
}

/// Optimal key entropy as a function of the ciphertext distance theta:
/// constant 1 for lines, 2 - h(theta/delta) / 2 for planes.
pub fn optimal_entropy_curve(
    kind: HullKind,
    delta: f64,
    theta_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if delta <= 0.0 {
        return Err(Error::OutOfRange { name: "delta", value: delta, range: "(0, 1]" });
    }
    theta_grid
        .iter()
        .map(|&theta| {
            if !(0.0..=delta + crate::TOL_STATE).contains(&theta) {
                return Err(Error::ThetaExceedsDelta { theta, delta });
            }
            let h = match kind {
                HullKind::Line => 1.0,
                HullKind::Plane => 2.0 - 0.5 * h_function((theta / delta).min(1.0))?,
            };
            Ok((theta, h))
        })
        .collect()
}

/// Internal consistency checks of a solution, used by tests.
pub fn solution_is_consistent(sol: &PqcSolution) -> bool {
    let probs = sol.decomposition.probabilities();
    check_orthogonal_terms(&sol.decomposition, 1e-9)
        && (sol.ciphertext.norm() - sol.theta).abs() < 1e-9
        && (shannon_entropy(&probs).unwrap() - sol.key_entropy).abs() < 1e-9
}

/// Sanity helper: the ciphertext entropy never exceeds the key entropy.
pub fn ciphertext_bound_holds(sol: &PqcSolution) -> bool {
    let rho0 = bloch_to_density(&sol.ciphertext).expect("ciphertext is a state");
    von_neumann_entropy(&rho0.to_hermitian()).expect("state") <= sol.key_entropy + 1e-9
}
