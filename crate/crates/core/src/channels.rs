//! Single-qubit unital channels.
//!
//! Two pictures are used throughout: the random-unitary form
//! rho -> sum_j p_j U_j rho U_j^dagger, and the lambda-diagonal normal form
//! acting on Bloch vectors as diag(lx, ly, lz) sandwiched between two
//! rotations. The entropy exchange of a channel lower-bounds the Shannon
//! entropy of any key distribution realizing it.

use num_complex::Complex64;

use crate::qmath::{
    bloch_to_density, density_to_bloch, mat2_add_scaled, mat2_adjoint, mat2_mul, mat2_trace,
    shannon_entropy, von_neumann_entropy, BlochVector, DensityOperator, HermitianMatrix,
    QubitUnitary, MAT2_ZERO,
};
use crate::{Error, Result, TOL_PROB, TOL_UNIT};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A convex mixture of unitaries: rho -> sum_j p_j U_j rho U_j^dagger.
#[derive(Debug, Clone)]
pub struct RandomUnitaryChannel {
    terms: Vec<(f64, QubitUnitary)>,
}

impl RandomUnitaryChannel {
    pub fn new(terms: Vec<(f64, QubitUnitary)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidDistribution("no channel terms".into()));
        }
        let mut sum = 0.0;
        for &(p, _) in &terms {
            if p < -TOL_PROB || !p.is_finite() {
                return Err(Error::InvalidDistribution(format!("probability {p}")));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > TOL_PROB {
            return Err(Error::InvalidDistribution(format!("sum = {sum}")));
        }
        Ok(RandomUnitaryChannel { terms })
    }

    pub fn identity() -> Self {
        RandomUnitaryChannel { terms: vec![(1.0, QubitUnitary::identity())] }
    }

    pub fn terms(&self) -> &[(f64, QubitUnitary)] {
        &self.terms
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.terms.iter().map(|&(p, _)| p.max(0.0)).collect()
    }

    /// Shannon entropy of the term probabilities (the key entropy of this
    /// particular decomposition).
    pub fn key_entropy(&self) -> f64 {
        shannon_entropy(&self.probabilities()).expect("terms form a distribution")
    }
}

/// The diagonal Bloch action (lx, ly, lz) of a Pauli channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliDiagonal {
    pub lx: f64,
    pub ly: f64,
    pub lz: f64,
}

impl PauliDiagonal {
    pub const fn new(lx: f64, ly: f64, lz: f64) -> Self {
        PauliDiagonal { lx, ly, lz }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.lx, self.ly, self.lz]
    }
}

/// A proper 3x3 rotation of the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    m: [[f64; 3]; 3],
}

impl Rotation {
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self> {
        let mut dev = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[i][k] * m[j][k]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((dot - expected).abs());
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        dev = dev.max((det - 1.0).abs());
        if dev > 1e2 * TOL_UNIT {
            return Err(Error::NotRotation(dev));
        }
        Ok(Rotation { m })
    }

    pub fn identity() -> Self {
        Rotation { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    /// Rotation with the given orthonormal columns.
    pub fn from_columns(c0: &BlochVector, c1: &BlochVector, c2: &BlochVector) -> Result<Self> {
        Rotation::new([
            [c0.x, c1.x, c2.x],
            [c0.y, c1.y, c2.y],
            [c0.z, c1.z, c2.z],
        ])
    }

    pub fn from_axis_angle(axis: &BlochVector, angle: f64) -> Result<Self> {
        let n = axis.normalized()?;
        let (s, c) = angle.sin_cos();
        let k = 1.0 - c;
        Rotation::new([
            [c + n.x * n.x * k, n.x * n.y * k - n.z * s, n.x * n.z * k + n.y * s],
            [n.y * n.x * k + n.z * s, c + n.y * n.y * k, n.y * n.z * k - n.x * s],
            [n.z * n.x * k - n.y * s, n.z * n.y * k + n.x * s, c + n.z * n.z * k],
        ])
    }

    pub fn matrix(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn apply(&self, r: &BlochVector) -> BlochVector {
        let v = [r.x, r.y, r.z];
        let mut out = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i] += self.m[i][j] * v[j];
            }
        }
        BlochVector::new(out[0], out[1], out[2])
    }

    pub fn transpose(&self) -> Rotation {
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] = self.m[j][i];
            }
        }
        Rotation { m: t }
    }

    pub fn column(&self, j: usize) -> BlochVector {
        BlochVector::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    /// The SU(2) element whose conjugation action on Bloch vectors equals
    /// this rotation (unique up to sign).
    pub fn lift_su2(&self) -> QubitUnitary {
        // Axis-angle extraction from the rotation matrix.
        let trace = self.m[0][0] + self.m[1][1] + self.m[2][2];
        let cos_angle = ((trace - 1.0) / 2.0).clamp(-1.0, 1.0);
        let angle = cos_angle.acos();
        if angle < 1e-12 {
            return QubitUnitary::identity();
        }
        let axis = if (std::f64::consts::PI - angle).abs() < 1e-6 {
            // Near angle pi the antisymmetric part degenerates; take the
            // dominant column of (R + I) / 2, which is axis axis^T there.
            let mut best = BlochVector::ORIGIN;
            let mut best_norm = -1.0;
            for j in 0..3 {
                let col = BlochVector::new(
                    (self.m[0][j] + if j == 0 { 1.0 } else { 0.0 }) / 2.0,
                    (self.m[1][j] + if j == 1 { 1.0 } else { 0.0 }) / 2.0,
                    (self.m[2][j] + if j == 2 { 1.0 } else { 0.0 }) / 2.0,
                );
                if col.norm() > best_norm {
                    best_norm = col.norm();
                    best = col;
                }
            }
            best.normalized().expect("rotation axis exists")
        } else {
            BlochVector::new(
                self.m[2][1] - self.m[1][2],
                self.m[0][2] - self.m[2][0],
                self.m[1][0] - self.m[0][1],
            )
            .scale(1.0 / (2.0 * angle.sin()))
            .normalized()
            .expect("rotation axis exists")
        };
        QubitUnitary::from_axis_angle(&axis, angle).expect("axis is unit")
    }
}

/// A unital qubit channel in singular-value form: T = R_left D R_right.
#[derive(Debug, Clone, Copy)]
pub struct UnitalChannel {
    pub rot_left: Rotation,
    pub diag: PauliDiagonal,
    pub rot_right: Rotation,
}

impl UnitalChannel {
    pub fn from_diagonal(diag: PauliDiagonal) -> Self {
        UnitalChannel {
            rot_left: Rotation::identity(),
            diag,
            rot_right: Rotation::identity(),
        }
    }

    /// The 3x3 Bloch action R_left diag R_right.
    pub fn bloch_matrix(&self) -> [[f64; 3]; 3] {
        let l = self.rot_left.matrix();
        let d = self.diag.as_array();
        let r = self.rot_right.matrix();
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[i][j] += l[i][k] * d[k] * r[k][j];
                }
            }
        }
        out
    }

    /// Orthogonal random-unitary decomposition: Kraus terms
    /// sqrt(p_j) U sigma_j V^dagger with U, V the SU(2) lifts of the
    /// rotations and p_j from the diagonal.
    pub fn decompose(&self) -> Result<RandomUnitaryChannel> {
        let probs = probs_from_lambdas(&self.diag);
        let min_p = probs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_p < -TOL_PROB {
            return Err(Error::NotCompletelyPositive(min_p));
        }
        let u = self.rot_left.lift_su2();
        // Right rotation acts first on the state, so the Kraus factor is the
        // lift of its transpose (inverse) applied as V^dagger.
        let v = self.rot_right.transpose().lift_su2();
        let paulis = [
            QubitUnitary::identity(),
            QubitUnitary::sigma_x(),
            QubitUnitary::sigma_y(),
            QubitUnitary::sigma_z(),
        ];
        let mut terms = Vec::with_capacity(4);
        for (p, sigma) in probs.iter().zip(paulis.iter()) {
            let m = mat2_mul(
                u.matrix(),
                &mat2_mul(sigma.matrix(), &mat2_adjoint(v.matrix())),
            );
            terms.push((p.max(0.0), QubitUnitary::new(m)?));
        }
        RandomUnitaryChannel::new(terms)
    }
}

/// The environment state omega_env after a random-unitary channel acts:
/// omega_jk = sqrt(p_j p_k) Tr[U_j rho U_k^dagger].
#[derive(Debug, Clone)]
pub struct EnvironmentState {
    pub omega: HermitianMatrix,
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Pauli-term probabilities (p0, px, py, pz) of the diagonal channel.
pub fn probs_from_lambdas(l: &PauliDiagonal) -> [f64; 4] {
    let px = 0.25 * (1.0 + l.lx - l.ly - l.lz);
    let py = 0.25 * (1.0 - l.lx + l.ly - l.lz);
    let pz = 0.25 * (1.0 - l.lx - l.ly + l.lz);
    let p0 = 1.0 - px - py - pz;
    [p0, px, py, pz]
}

/// Inverse of [`probs_from_lambdas`].
pub fn lambdas_from_probs(p: &[f64; 4]) -> Result<PauliDiagonal> {
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > TOL_PROB || p.iter().any(|&x| x < -TOL_PROB) {
        return Err(Error::InvalidDistribution(format!("{p:?}")));
    }
    Ok(PauliDiagonal::new(
        1.0 - 2.0 * (p[2] + p[3]),
        1.0 - 2.0 * (p[1] + p[3]),
        1.0 - 2.0 * (p[1] + p[2]),
    ))
}

/// Complete positivity of the diagonal channel: all four probabilities
/// nonnegative, equivalently 1 -/+ lz >= |lx -/+ ly|.
pub fn is_completely_positive(l: &PauliDiagonal, tol: f64) -> bool {
    probs_from_lambdas(l).iter().all(|&p| p >= -tol)
}

/// Orthogonal Pauli decomposition of a CP diagonal channel. Zero-probability
/// terms are kept so the four-term shape is stable.
pub fn pauli_decomposition(l: &PauliDiagonal) -> Result<RandomUnitaryChannel> {
    let probs = probs_from_lambdas(l);
    let min_p = probs.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_p < -TOL_PROB {
        return Err(Error::NotCompletelyPositive(min_p));
    }
    let paulis = [
        QubitUnitary::identity(),
        QubitUnitary::sigma_x(),
        QubitUnitary::sigma_y(),
        QubitUnitary::sigma_z(),
    ];
    RandomUnitaryChannel::new(
        probs
            .iter()
            .zip(paulis.iter())
            .map(|(&p, &u)| (p.max(0.0), u))
            .collect(),
    )
}

/// sum_j p_j U_j rho U_j^dagger.
pub fn apply(ch: &RandomUnitaryChannel, rho: &DensityOperator) -> DensityOperator {
    let mut acc = MAT2_ZERO;
    for (p, u) in ch.terms() {
        let conj = u.conjugate(rho);
        mat2_add_scaled(&mut acc, conj.matrix(), *p);
    }
    DensityOperator::new(acc).expect("convex mixture of states is a state")
}

/// Channel action on a Bloch vector.
pub fn apply_bloch(ch: &RandomUnitaryChannel, r: &BlochVector) -> Result<BlochVector> {
    Ok(density_to_bloch(&apply(ch, &bloch_to_density(r)?)))
}

/// The 3x3 Bloch-action matrix T_jk = Tr(sigma_j E[sigma_k]) / 2, read off
/// by conjugating the Pauli axes.
pub fn bloch_action(ch: &RandomUnitaryChannel) -> [[f64; 3]; 3] {
    let mut t = [[0.0; 3]; 3];
    let axes = [
        BlochVector::new(1.0, 0.0, 0.0),
        BlochVector::new(0.0, 1.0, 0.0),
        BlochVector::new(0.0, 0.0, 1.0),
    ];
    for (k, axis) in axes.iter().enumerate() {
        // Columns are images of the basis axes; unitality removes the offset.
        let image = apply_bloch(ch, axis).expect("axis is a valid state");
        t[0][k] = image.x;
        t[1][k] = image.y;
        t[2][k] = image.z;
    }
    t
}

/// omega_env = sum_jk sqrt(p_j p_k) Tr[U_j rho U_k^dagger] |j><k|.
pub fn environment_state(ch: &RandomUnitaryChannel, rho: &DensityOperator) -> EnvironmentState {
    let n = ch.terms().len();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, (pj, uj)) in ch.terms().iter().enumerate() {
        for (k, (pk, uk)) in ch.terms().iter().enumerate() {
            let amp = (pj.max(0.0) * pk.max(0.0)).sqrt();
            let prod = mat2_mul(
                &mat2_mul(uj.matrix(), rho.matrix()),
                &mat2_adjoint(uk.matrix()),
            );
            data[j * n + k] = mat2_trace(&prod) * amp;
        }
    }
    // Hermiticity holds analytically; round off is below TOL_HERM.
    EnvironmentState {
        omega: HermitianMatrix::new(n, data).expect("omega_env is Hermitian"),
    }
}

/// Entropy exchange S(omega_env) in bits.
pub fn entropy_exchange(ch: &RandomUnitaryChannel, rho: &DensityOperator) -> f64 {
    von_neumann_entropy(&environment_state(ch, rho).omega).expect("omega_env is a state")
}

/// Re-mixes a four-term Pauli decomposition into a non-orthogonal
/// decomposition of the same channel: the (I, sz) Kraus pair is rotated by
/// `alpha` (with an i phase that keeps both combinations proportional to
/// unitaries) and the (sx, sy) pair by `beta`. Useful for exercising the
/// entropy-exchange lower bound against suboptimal key distributions.
pub fn remix_pauli_decomposition(
    ch: &RandomUnitaryChannel,
    alpha: f64,
    beta: f64,
) -> Result<RandomUnitaryChannel> {
    let p = ch.probabilities();
    if p.len() != 4 {
        return Err(Error::InvalidDistribution("expected a four-term channel".into()));
    }
    let kraus: Vec<crate::qmath::Mat2> = ch
        .terms()
        .iter()
        .map(|(pj, u)| {
            let mut m = MAT2_ZERO;
            mat2_add_scaled(&mut m, u.matrix(), pj.max(0.0).sqrt());
            m
        })
        .collect();
    let i = Complex64::new(0.0, 1.0);
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let (cb, sb) = (beta.cos(), beta.sin());
    // Block-unitary mixing: [[c, i s], [i s, c]] on (0, 3) and the real
    // rotation [[c, s], [-s, c]] on (1, 2).
    let combos: [(usize, usize, Complex64, Complex64); 4] = [
        (0, 3, Complex64::new(ca, 0.0), i * sa),
        (3, 0, Complex64::new(ca, 0.0), i * sa),
        (1, 2, Complex64::new(cb, 0.0), Complex64::new(sb, 0.0)),
        (2, 1, Complex64::new(cb, 0.0), Complex64::new(-sb, 0.0)),
    ];
    let mut terms = Vec::new();
    for (a, b, wa, wb) in combos {
        let mut m = MAT2_ZERO;
        for idx in 0..2 {
            for jdx in 0..2 {
                m[idx][jdx] = wa * kraus[a][idx][jdx] + wb * kraus[b][idx][jdx];
            }
        }
        // q = squared Frobenius norm / 2 recovers the term probability.
        let q: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>() / 2.0;
        if q < 1e-15 {
            terms.push((0.0, QubitUnitary::identity()));
            continue;
        }
        let scale = 1.0 / q.sqrt();
        let mut um = MAT2_ZERO;
        for idx in 0..2 {
            for jdx in 0..2 {
                um[idx][jdx] = m[idx][jdx] * scale;
            }
        }
        terms.push((q, QubitUnitary::new(um)?));
    }
    RandomUnitaryChannel::new(terms)
}

/// True iff Tr[U_j U_k^dagger] = 0 for all distinct term pairs.
pub fn check_orthogonal_terms(ch: &RandomUnitaryChannel, tol: f64) -> bool {
    let terms = ch.terms();
    for j in 0..terms.len() {
        for k in (j + 1)..terms.len() {
            let prod = mat2_mul(terms[j].1.matrix(), &mat2_adjoint(terms[k].1.matrix()));
            if mat2_trace(&prod).norm() > tol {
                return false;
            }
        }
    }
    true
}
