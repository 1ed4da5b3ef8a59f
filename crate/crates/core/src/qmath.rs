//! Complex 2x2 / small Hermitian linear algebra, Bloch conversions and
//! entropy primitives.
//!
//! Everything here is desk scale: density operators are 2x2 and the only
//! larger matrices are environment states of at most a handful of channel
//! terms, so eigenvalues are computed with a cyclic Jacobi sweep rather
//! than an external solver.

use num_complex::Complex64;

use crate::{Error, Result, TOL_HERM, TOL_PROB, TOL_STATE, TOL_UNIT};

pub type ComplexScalar = Complex64;

const LN_2: f64 = std::f64::consts::LN_2;

fn log2(x: f64) -> f64 {
    x.ln() / LN_2
}

/// x log2(x) with the 0 log 0 = 0 convention.
fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * log2(x)
    }
}

// ---------------------------------------------------------------------------
// Bloch vectors
// ---------------------------------------------------------------------------

/// A qubit state as the real vector r in rho = (I + r . sigma) / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ORIGIN: BlochVector = BlochVector::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector::new(s * self.x, s * self.y, s * self.z)
    }

    pub fn add(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &BlochVector) -> BlochVector {
        BlochVector::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    /// Unit vector in the same direction; errors on the zero vector.
    pub fn normalized(&self) -> Result<BlochVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::InvalidState("cannot normalize zero vector".into()));
        }
        Ok(self.scale(1.0 / n))
    }

    /// Checks |r| <= 1 within the state tolerance.
    pub fn validate(&self) -> Result<()> {
        let n = self.norm();
        if !n.is_finite() || n > 1.0 + TOL_STATE {
            return Err(Error::UnphysicalBloch(n));
        }
        Ok(())
    }

    /// Some unit vector orthogonal to self (self need not be unit).
    pub fn any_orthogonal_unit(&self) -> BlochVector {
        let candidate = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            BlochVector::new(1.0, 0.0, 0.0)
        } else if self.y.abs() <= self.z.abs() {
            BlochVector::new(0.0, 1.0, 0.0)
        } else {
            BlochVector::new(0.0, 0.0, 1.0)
        };
        let c = self.cross(&candidate);
        c.normalized().expect("candidate axis is never parallel")
    }
}

// ---------------------------------------------------------------------------
// 2x2 complex matrices
// ---------------------------------------------------------------------------

pub type Mat2 = [[Complex64; 2]; 2];

pub(crate) const MAT2_ZERO: Mat2 = [
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
];

pub(crate) fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = MAT2_ZERO;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn mat2_adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub(crate) fn mat2_trace(a: &Mat2) -> Complex64 {
    a[0][0] + a[1][1]
}

pub(crate) fn mat2_add_scaled(acc: &mut Mat2, a: &Mat2, s: f64) {
    for i in 0..2 {
        for j in 0..2 {
            acc[i][j] += a[i][j] * s;
        }
    }
}

fn mat2_max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut m = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub(crate) fn mat2_identity() -> Mat2 {
    [
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]
}

// ---------------------------------------------------------------------------
// Density operators
// ---------------------------------------------------------------------------

/// A 2x2 Hermitian, trace-1, positive-semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOperator {
    m: Mat2,
}

impl DensityOperator {
    /// Validates hermiticity, unit trace and positivity.
    pub fn new(m: Mat2) -> Result<Self> {
        let herm_dev = mat2_max_abs_diff(&m, &mat2_adjoint(&m));
        if herm_dev > TOL_HERM {
            return Err(Error::NotHermitian(herm_dev));
        }
        let tr = mat2_trace(&m);
        if (tr.re - 1.0).abs() > TOL_STATE || tr.im.abs() > TOL_STATE {
            return Err(Error::InvalidState(format!("trace = {tr}, expected 1")));
        }
        let rho = DensityOperator { m };
        let (lo, _) = rho.eigenvalues_pair();
        if lo < -TOL_STATE {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo}")));
        }
        Ok(rho)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn maximally_mixed() -> Self {
        bloch_to_density(&BlochVector::ORIGIN).unwrap()
    }

    /// Closed-form eigenvalues (min, max): (1 -/+ |r|) / 2.
    pub fn eigenvalues_pair(&self) -> (f64, f64) {
        let r = density_to_bloch_unchecked(&self.m).norm();
        ((1.0 - r) / 2.0, (1.0 + r) / 2.0)
    }

    pub fn to_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix::new(2, vec![self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]])
            .expect("density operator is Hermitian")
    }
}

// ---------------------------------------------------------------------------
// Qubit unitaries
// ---------------------------------------------------------------------------

/// A 2x2 unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitUnitary {
    m: Mat2,
}

impl QubitUnitary {
    pub fn new(m: Mat2) -> Result<Self> {
        let prod = mat2_mul(&m, &mat2_adjoint(&m));
        let dev = mat2_max_abs_diff(&prod, &mat2_identity());
        if dev > TOL_UNIT {
            return Err(Error::NotUnitary(dev));
        }
        Ok(QubitUnitary { m })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn identity() -> Self {
        QubitUnitary { m: mat2_identity() }
    }

    pub fn sigma_x() -> Self {
        QubitUnitary {
            m: [
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        }
    }

    pub fn sigma_y() -> Self {
        QubitUnitary {
            m: [
                [Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
                [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
            ],
        }
    }

    pub fn sigma_z() -> Self {
        QubitUnitary {
            m: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(-1.0, 0.0)],
            ],
        }
    }

    /// sigma . n for a unit axis n: a Hermitian unitary (its own inverse).
    pub fn from_pauli_axis(n: &BlochVector) -> Result<Self> {
        if (n.norm() - 1.0).abs() > TOL_STATE {
            return Err(Error::InvalidState(format!("axis norm {} != 1", n.norm())));
        }
        let mut m = MAT2_ZERO;
        mat2_add_scaled(&mut m, QubitUnitary::sigma_x().matrix(), n.x);
        mat2_add_scaled(&mut m, QubitUnitary::sigma_y().matrix(), n.y);
        mat2_add_scaled(&mut m, QubitUnitary::sigma_z().matrix(), n.z);
        QubitUnitary::new(m)
    }

    /// exp(-i angle/2 sigma . n): the SU(2) element whose Bloch action is a
    /// rotation by `angle` about the unit axis `n`.
    pub fn from_axis_angle(n: &BlochVector, angle: f64) -> Result<Self> {
        let half = angle / 2.0;
        let pauli = QubitUnitary::from_pauli_axis(n)?;
        let mut m = mat2_identity();
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e *= half.cos();
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] += Complex64::new(0.0, -half.sin()) * pauli.matrix()[i][j];
            }
        }
        QubitUnitary::new(m)
    }

    pub fn adjoint(&self) -> QubitUnitary {
        QubitUnitary { m: mat2_adjoint(&self.m) }
    }

    /// U rho U^dagger.
    pub fn conjugate(&self, rho: &DensityOperator) -> DensityOperator {
        let m = mat2_mul(&mat2_mul(&self.m, rho.matrix()), &mat2_adjoint(&self.m));
        DensityOperator { m }
    }
}

// ---------------------------------------------------------------------------
// Hermitian matrices and the Jacobi eigensolver
// ---------------------------------------------------------------------------

/// A dim x dim complex Hermitian matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        assert_eq!(data.len(), dim * dim, "data length must be dim^2");
        let mut dev = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                dev = dev.max((data[i * dim + j] - data[j * dim + i].conj()).norm());
            }
        }
        if dev > TOL_HERM {
            return Err(Error::NotHermitian(dev));
        }
        Ok(HermitianMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }
}

const JACOBI_OFFDIAG_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
/// rotations. Returns (values descending, matching eigenvector columns).
///
/// Each pivot applies a phase followed by a real Givens rotation to zero
/// one off-diagonal pair; sweeps stop when the off-diagonal Frobenius norm
/// drops below 1e-12.
pub fn hermitian_eigen(a: &HermitianMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = a.dim;
    let mut m = a.data.clone();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let offdiag_norm = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if offdiag_norm(&m) < JACOBI_OFFDIAG_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let r = apq.norm();
                if r < JACOBI_OFFDIAG_TOL / (n as f64) {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                // Real Givens angle zeroing the phased 2x2 block.
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Column transform J: J_pp = c, J_pq = s,
                // J_qp = -s conj(phase), J_qq = c conj(phase).
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                // m <- J^H m J, applied as column then row updates.
                for i in 0..n {
                    let mip = m[i * n + p];
                    let miq = m[i * n + q];
                    m[i * n + p] = mip * jpp + miq * jqp;
                    m[i * n + q] = mip * jpq + miq * jqq;
                }
                for j in 0..n {
                    let mpj = m[p * n + j];
                    let mqj = m[q * n + j];
                    m[p * n + j] = jpp.conj() * mpj + jqp.conj() * mqj;
                    m[q * n + j] = jpq.conj() * mpj + jqq.conj() * mqj;
                }
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * jpp + viq * jqp;
                    v[i * n + q] = vip * jpq + viq * jqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let values: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    (sorted_values, vectors)
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(a: &HermitianMatrix) -> Vec<f64> {
    hermitian_eigen(a).0
}

// ---------------------------------------------------------------------------
// Bloch conversions and distances
// ---------------------------------------------------------------------------

/// rho = (I + r . sigma) / 2.
pub fn bloch_to_density(r: &BlochVector) -> Result<DensityOperator> {
    r.validate()?;
    let mut m = MAT2_ZERO;
    mat2_add_scaled(&mut m, &mat2_identity(), 0.5);
    mat2_add_scaled(&mut m, QubitUnitary::sigma_x().matrix(), 0.5 * r.x);
    mat2_add_scaled(&mut m, QubitUnitary::sigma_y().matrix(), 0.5 * r.y);
    mat2_add_scaled(&mut m, QubitUnitary::sigma_z().matrix(), 0.5 * r.z);
    Ok(DensityOperator { m })
}

fn density_to_bloch_unchecked(m: &Mat2) -> BlochVector {
    // r_j = Tr(rho sigma_j), all real for Hermitian rho.
    BlochVector::new(
        2.0 * m[0][1].re,
        -2.0 * m[0][1].im,
        (m[0][0] - m[1][1]).re,
    )
}

/// r_j = Tr(rho sigma_j).
pub fn density_to_bloch(rho: &DensityOperator) -> BlochVector {
    density_to_bloch_unchecked(rho.matrix())
}

/// Trace distance D(rho, sigma) = Tr|rho - sigma|, which for qubits equals
/// the Euclidean distance of the Bloch vectors (so D(rho, I/2) = |r|).
pub fn trace_distance(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    density_to_bloch(rho).sub(&density_to_bloch(sigma)).norm()
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

/// Shannon entropy in bits, with 0 log 0 = 0.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &pj in p {
        if pj < -TOL_PROB || !pj.is_finite() {
            return Err(Error::InvalidDistribution(format!("probability {pj}")));
        }
        sum += pj;
    }
    if (sum - 1.0).abs() > TOL_PROB {
        return Err(Error::InvalidDistribution(format!("sum = {sum}")));
    }
    Ok(-p.iter().map(|&pj| xlog2x(pj.max(0.0))).sum::<f64>())
}

/// Von Neumann entropy in bits: Shannon entropy of the eigenvalue spectrum.
pub fn von_neumann_entropy(rho: &HermitianMatrix) -> Result<f64> {
    if (rho.trace() - 1.0).abs() > TOL_PROB {
        return Err(Error::InvalidState(format!("trace = {}", rho.trace())));
    }
    let eigs = hermitian_eigenvalues(rho);
    for &e in &eigs {
        if e < -TOL_STATE {
            return Err(Error::InvalidState(format!("negative eigenvalue {e}")));
        }
    }
    Ok(-eigs.iter().map(|&e| xlog2x(e.max(0.0))).sum::<f64>())
}

/// h(x) = (1+x) log2(1+x) + (1-x) log2(1-x) on [-1, 1].
pub fn h_function(x: f64) -> Result<f64> {
    if x.abs() > 1.0 {
        return Err(Error::OutOfRange { name: "x", value: x, range: "[-1, 1]" });
    }
    Ok(xlog2x(1.0 + x) + xlog2x(1.0 - x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bloch_to_density_basics() {
        let half = bloch_to_density(&BlochVector::ORIGIN).unwrap();
        assert!((half.matrix()[0][0].re - 0.5).abs() < 1e-15);
        assert!((half.matrix()[1][1].re - 0.5).abs() < 1e-15);
        assert!(half.matrix()[0][1].norm() < 1e-15);

        let north = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert!((north.matrix()[0][0].re - 1.0).abs() < 1e-15);
        assert!(north.matrix()[1][1].norm() < 1e-15);

        let plus = bloch_to_density(&BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((plus.matrix()[i][j] - c(0.5, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bloch_to_density_rejects_long_vectors() {
        assert!(matches!(
            bloch_to_density(&BlochVector::new(1.1, 0.0, 0.0)),
            Err(Error::UnphysicalBloch(_))
        ));
    }

    #[test]
    fn density_to_bloch_basics() {
        let r = density_to_bloch(&DensityOperator::maximally_mixed());
        assert!(r.norm() < 1e-15);

        let north = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let r = density_to_bloch(&north);
        assert!(r.sub(&BlochVector::new(0.0, 0.0, 1.0)).norm() < 1e-15);

        let mixed = bloch_to_density(&BlochVector::new(0.3, 0.0, 0.0)).unwrap();
        let r = density_to_bloch(&mixed);
        assert!(r.sub(&BlochVector::new(0.3, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn trace_distance_examples() {
        let zero = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let one = bloch_to_density(&BlochVector::new(0.0, 0.0, -1.0)).unwrap();
        assert_eq!(trace_distance(&zero, &zero), 0.0);
        assert!((trace_distance(&zero, &one) - 2.0).abs() < 1e-12);

        // D(rho_min, I/2) = |x'|
        let xprime = 0.37;
        let rho = bloch_to_density(&BlochVector::new(xprime, 0.0, 0.0)).unwrap();
        let d = trace_distance(&rho, &DensityOperator::maximally_mixed());
        assert!((d - xprime).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_of_diagonal_matrices() {
        let id4: Vec<Complex64> = (0..16)
            .map(|k| if k % 5 == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) })
            .collect();
        let m = HermitianMatrix::new(4, id4).unwrap();
        let eigs = hermitian_eigenvalues(&m);
        for e in eigs {
            assert!((e - 1.0).abs() < 1e-12);
        }

        let quarter: Vec<Complex64> = (0..16)
            .map(|k| if k % 5 == 0 { c(0.25, 0.0) } else { c(0.0, 0.0) })
            .collect();
        let m = HermitianMatrix::new(4, quarter).unwrap();
        for e in hermitian_eigenvalues(&m) {
            assert!((e - 0.25).abs() < 1e-12);
        }
    }

    /// Independent oracle: characteristic polynomial coefficients by
    /// Faddeev-LeVerrier must match the monic polynomial expanded from the
    /// computed eigenvalues.
    #[test]
    fn eigenvalues_match_characteristic_polynomial() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = 4;
            let mut data = vec![c(0.0, 0.0); n * n];
            for i in 0..n {
                data[i * n + i] = c(rng.gen_range(-1.0..1.0), 0.0);
                for j in (i + 1)..n {
                    let e = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    data[i * n + j] = e;
                    data[j * n + i] = e.conj();
                }
            }
            let a = HermitianMatrix::new(n, data.clone()).unwrap();
            let eigs = hermitian_eigenvalues(&a);

            // Faddeev-LeVerrier: M_1 = A, c_1 = -tr M_1,
            // M_{k+1} = A (M_k + c_k I), c_{k+1} = -tr(M_{k+1}) / (k+1).
            let mul = |x: &[Complex64], y: &[Complex64]| -> Vec<Complex64> {
                let mut out = vec![c(0.0, 0.0); n * n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            out[i * n + j] += x[i * n + k] * y[k * n + j];
                        }
                    }
                }
                out
            };
            let trace = |x: &[Complex64]| -> Complex64 { (0..n).map(|i| x[i * n + i]).sum() };
            let mut coeffs = vec![c(1.0, 0.0)]; // monic leading coefficient
            let mut mk = data.clone();
            for k in 1..=n {
                let ck = -trace(&mk) / (k as f64);
                coeffs.push(ck);
                if k < n {
                    let mut shifted = mk.clone();
                    for i in 0..n {
                        shifted[i * n + i] += ck;
                    }
                    mk = mul(&data, &shifted);
                }
            }

            // Expand prod (x - eig_i) and compare coefficients.
            let mut poly = vec![1.0f64];
            for &e in &eigs {
                let mut next = vec![0.0; poly.len() + 1];
                for (i, &p) in poly.iter().enumerate() {
                    next[i] += p;
                    next[i + 1] -= p * e;
                }
                poly = next;
            }
            for (k, &pk) in poly.iter().enumerate() {
                assert!(
                    (coeffs[k].re - pk).abs() < 1e-9 && coeffs[k].im.abs() < 1e-9,
                    "coefficient {k}: {} vs {}",
                    coeffs[k],
                    pk
                );
            }
        }
    }

    #[test]
    fn shannon_entropy_examples() {
        assert!((shannon_entropy(&[0.25; 4]).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(shannon_entropy(&[1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        let third = 1.0 / 3.0;
        let h = shannon_entropy(&[0.0, third, third, third]).unwrap();
        assert!((h - 3.0f64.log2()).abs() < 1e-12);
        assert!(shannon_entropy(&[0.5, 0.4]).is_err());
        assert!(shannon_entropy(&[-0.1, 1.1]).is_err());
    }

    #[test]
    fn von_neumann_entropy_examples() {
        let half = DensityOperator::maximally_mixed().to_hermitian();
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-12);

        let pure = bloch_to_density(&BlochVector::new(0.0, 1.0, 0.0))
            .unwrap()
            .to_hermitian();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-9);

        let quarter: Vec<Complex64> = (0..16)
            .map(|k| if k % 5 == 0 { c(0.25, 0.0) } else { c(0.0, 0.0) })
            .collect();
        let m = HermitianMatrix::new(4, quarter).unwrap();
        assert!((von_neumann_entropy(&m).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn h_function_examples() {
        assert_eq!(h_function(0.0).unwrap(), 0.0);
        assert!((h_function(1.0).unwrap() - 2.0).abs() < 1e-12);
        // Frozen from direct evaluation: 1.5 log2 1.5 + 0.5 log2 0.5.
        assert!((h_function(0.5).unwrap() - 0.3774437510817346).abs() < 1e-12);
        assert!(h_function(1.5).is_err());
    }

    #[test]
    fn unitary_constructors() {
        for u in [
            QubitUnitary::identity(),
            QubitUnitary::sigma_x(),
            QubitUnitary::sigma_y(),
            QubitUnitary::sigma_z(),
        ] {
            QubitUnitary::new(*u.matrix()).unwrap();
        }
        let n = BlochVector::new(0.6, 0.0, 0.8);
        let s = QubitUnitary::from_pauli_axis(&n).unwrap();
        // sigma.n squares to the identity
        let sq = mat2_mul(s.matrix(), s.matrix());
        assert!(mat2_max_abs_diff(&sq, &mat2_identity()) < 1e-12);

        let u = QubitUnitary::from_axis_angle(&BlochVector::new(0.0, 0.0, 1.0), 1.3).unwrap();
        QubitUnitary::new(*u.matrix()).unwrap();
    }
}
