//! Approximate private quantum channels for the full qubit state space.
//!
//! An epsilon-PQC allows encrypted plaintexts to remain distinguishable up
//! to trace distance epsilon. For the full Bloch ball the security parameter
//! of a diagonal channel is 2 max |lambda_j|, and the minimal key entropy as
//! a function of epsilon is piecewise: depolarizing channels with negative
//! lambda up to the universal-NOT point, then a phase-damping family, then
//! depolarizing channels with positive lambda down to H = 0. A brute-force
//! grid enumeration over the completely-positive tetrahedron serves as the
//! numerical oracle for the analytic curve.

use rayon::prelude::*;
use std::sync::OnceLock;

use crate::channels::{
    apply_bloch, is_completely_positive, probs_from_lambdas, PauliDiagonal, RandomUnitaryChannel,
};
use crate::pqc::PlaintextSet;
use crate::{Error, Result, TOL_PROB};

const LOG2_3: f64 = 1.584962500721156;

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// One point on the entropy-security frontier with its witness channel.
#[derive(Debug, Clone, Copy)]
pub struct FrontierPoint {
    pub epsilon: f64,
    pub entropy: f64,
    pub lambda: PauliDiagonal,
}

/// Per-bin minimal entropies found by brute-force enumeration.
#[derive(Debug, Clone)]
pub struct FrontierCurve {
    pub points: Vec<FrontierPoint>,
    pub bin_width: f64,
}

// ---------------------------------------------------------------------------
// Security parameter
// ---------------------------------------------------------------------------

/// epsilon = 2 max |lambda_j| for the full-ball plaintext set.
pub fn epsilon_full_sphere(l: &PauliDiagonal) -> Result<f64> {
    if !is_completely_positive(l, TOL_PROB) {
        let min_p = probs_from_lambdas(l).iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(Error::NotCompletelyPositive(min_p));
    }
    Ok(2.0 * l.lx.abs().max(l.ly.abs()).max(l.lz.abs()))
}

/// Largest pairwise trace distance between encrypted plaintexts.
pub fn epsilon_for_set(ch: &RandomUnitaryChannel, set: &PlaintextSet) -> Result<f64> {
    let images: Vec<_> = set
        .states()
        .iter()
        .map(|s| apply_bloch(ch, s))
        .collect::<Result<Vec<_>>>()?;
    let mut eps = 0.0f64;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            eps = eps.max(images[i].sub(&images[j]).norm());
        }
    }
    Ok(eps)
}

// ---------------------------------------------------------------------------
// Entropy families
// ---------------------------------------------------------------------------

/// Key entropy of the depolarizing channel lx = ly = lz = lambda:
/// H_I = 2 - [(1+3l) log(1+3l) + 3(1-l) log(1-l)] / 4, physical for
/// -1/3 <= lambda <= 1.
pub fn entropy_depolarizing(lambda: f64) -> Result<f64> {
    if !(-1.0 / 3.0 - TOL_PROB..=1.0 + TOL_PROB).contains(&lambda) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda, range: "[-1/3, 1]" });
    }
    let xlx = |x: f64| if x <= 0.0 { 0.0 } else { x * x.log2() };
    Ok(2.0 - 0.25 * (xlx(1.0 + 3.0 * lambda) + 3.0 * xlx(1.0 - lambda)))
}

/// Key entropy of the optimal phase-damping family lz = -lambda,
/// lx = ly = -(1 - lambda)/2 for lambda in [1/3, 1]:
/// H_II = [3 + l - (1-l) log(1-l) - (1+l) log(1+l)] / 2.
pub fn entropy_phase_family(lambda: f64) -> Result<f64> {
    if !(1.0 / 3.0 - TOL_PROB..=1.0 + TOL_PROB).contains(&lambda) {
        return Err(Error::OutOfRange { name: "lambda", value: lambda, range: "[1/3, 1]" });
    }
    let xlx = |x: f64| if x <= 0.0 { 0.0 } else { x * x.log2() };
    Ok(0.5 * (3.0 + lambda - xlx(1.0 - lambda) - xlx(1.0 + lambda)))
}

/// Witness channel of the phase-damping family at a given lambda.
pub fn phase_family_witness(lambda: f64) -> PauliDiagonal {
    let kappa = (1.0 - lambda) / 2.0;
    PauliDiagonal::new(-kappa, -kappa, -lambda)
}

// ---------------------------------------------------------------------------
// Crossover and plateau
// ---------------------------------------------------------------------------

/// The lambda where the depolarizing and phase-damping entropies meet.
#[derive(Debug, Clone, Copy)]
pub struct Crossover {
    pub lambda_star: f64,
    pub epsilon_star: f64,
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    debug_assert!(flo * f(hi) <= 0.0, "root not bracketed");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm >= 0.0) == (flo >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of H_I(lambda) = H_II(lambda) on (1/3, 1), found by bisection.
pub fn crossover() -> Crossover {
    static CACHE: OnceLock<Crossover> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let f = |l: f64| entropy_depolarizing(l).unwrap() - entropy_phase_family(l).unwrap();
        let lambda_star = bisect(f, 1.0 / 3.0 + 1e-9, 1.0 - 1e-9, 1e-10);
        Crossover { lambda_star, epsilon_star: 2.0 * lambda_star }
    })
}

/// Epsilon where the depolarizing entropy drops back to log2(3): the right
/// end of the constant plateau of the depolarizing-only curve.
pub fn depolarizing_plateau_end() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        let f = |l: f64| entropy_depolarizing(l).unwrap() - LOG2_3;
        2.0 * bisect(f, 1.0 / 3.0 + 1e-9, 1.0 - 1e-9, 1e-10)
    })
}

// ---------------------------------------------------------------------------
// Frontier
// ---------------------------------------------------------------------------

/// Minimal key entropy at security parameter epsilon, over all ancilla-free
/// channels encrypting the full ball. Piecewise: negative depolarizing on
/// [0, 2/3], phase damping on [2/3, epsilon*], positive depolarizing on
/// [epsilon*, 2].
pub fn analytic_frontier(epsilon: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&epsilon) {
        return Err(Error::OutOfRange { name: "epsilon", value: epsilon, range: "[0, 2]" });
    }
    let eps_star = crossover().epsilon_star;
    if epsilon <= 2.0 / 3.0 {
        entropy_depolarizing(-epsilon / 2.0)
    } else if epsilon <= eps_star {
        entropy_phase_family(epsilon / 2.0)
    } else {
        entropy_depolarizing(epsilon / 2.0)
    }
}

/// Witness channel achieving [`analytic_frontier`] at epsilon.
pub fn analytic_frontier_witness(epsilon: f64) -> Result<PauliDiagonal> {
    if !(0.0..=2.0).contains(&epsilon) {
        return Err(Error::OutOfRange { name: "epsilon", value: epsilon, range: "[0, 2]" });
    }
    let eps_star = crossover().epsilon_star;
    let l = epsilon / 2.0;
    Ok(if epsilon <= 2.0 / 3.0 {
        PauliDiagonal::new(-l, -l, -l)
    } else if epsilon <= eps_star {
        phase_family_witness(l)
    } else {
        PauliDiagonal::new(l, l, l)
    })
}

/// Brute-force frontier oracle: enumerates lambda over the cube [-1, 1]^3
/// at the given step, keeps CP channels, and records the per-bin minimum
/// entropy with its witness. Ties go to the smaller |lx| + |ly| + |lz|.
pub fn brute_force_frontier(step: f64, bin_width: f64) -> Result<FrontierCurve> {
    if !(0.0..=0.02).contains(&step) || step == 0.0 {
        return Err(Error::OutOfRange { name: "step", value: step, range: "(0, 0.02]" });
    }
    if bin_width < step {
        return Err(Error::OutOfRange { name: "bin_width", value: bin_width, range: "[step, _]" });
    }
    let n = (2.0 / step).round() as usize;
    let n_bins = (2.0 / bin_width).ceil() as usize + 1;
    let grid = |i: usize| -1.0 + (i as f64) * step;

    let merge = |mut a: Vec<Option<FrontierPoint>>, b: Vec<Option<FrontierPoint>>| {
        for (slot, candidate) in a.iter_mut().zip(b) {
            let Some(c) = candidate else { continue };
            match slot {
                None => *slot = Some(c),
                Some(cur) => {
                    let key = |p: &FrontierPoint| {
                        (p.entropy, p.lambda.lx.abs() + p.lambda.ly.abs() + p.lambda.lz.abs())
                    };
                    if key(&c) < key(cur) {
                        *slot = Some(c);
                    }
                }
            }
        }
        a
    };

    let bins = (0..=n)
        .into_par_iter()
        .fold(
            || vec![None; n_bins],
            |mut bins: Vec<Option<FrontierPoint>>, i| {
                let lx = grid(i);
                for j in 0..=n {
                    let ly = grid(j);
                    for k in 0..=n {
                        let lz = grid(k);
                        let l = PauliDiagonal::new(lx, ly, lz);
                        let probs = probs_from_lambdas(&l);
                        if probs.iter().any(|&p| p < -TOL_PROB) {
                            continue;
                        }
                        let epsilon = 2.0 * lx.abs().max(ly.abs()).max(lz.abs());
                        let entropy =
                            -probs.iter().map(|&p| if p <= 0.0 { 0.0 } else { p * p.log2() }).sum::<f64>();
                        let bin = ((epsilon / bin_width) as usize).min(n_bins - 1);
                        let point = FrontierPoint { epsilon, entropy, lambda: l };
                        let slot = &mut bins[bin];
                        let replace = match slot {
                            None => true,
                            Some(cur) => {
                                let key = |p: &FrontierPoint| {
                                    (
                                        p.entropy,
                                        p.lambda.lx.abs() + p.lambda.ly.abs() + p.lambda.lz.abs(),
                                    )
                                };
                                key(&point) < key(cur)
                            }
                        };
                        if replace {
                            *slot = Some(point);
                        }
                    }
                }
                bins
            },
        )
        .reduce(|| vec![None; n_bins], merge);

    Ok(FrontierCurve {
        points: bins.into_iter().flatten().collect(),
        bin_width,
    })
}

/// Entropy-security curve restricted to depolarizing witnesses: for each
/// epsilon the best of the positive branch, the negative branch (physical
/// only up to epsilon = 2/3) and the fixed universal-NOT approximation at
/// lambda = -1/3, which is admissible once epsilon >= 2/3.
pub fn depolarizing_curve(epsilon_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    epsilon_grid
        .iter()
        .map(|&eps| {
            if !(0.0..=2.0).contains(&eps) {
                return Err(Error::OutOfRange { name: "epsilon", value: eps, range: "[0, 2]" });
            }
            let mut best = entropy_depolarizing(eps / 2.0)?;
            if eps <= 2.0 / 3.0 {
                best = best.min(entropy_depolarizing(-eps / 2.0)?);
            } else {
                best = best.min(LOG2_3);
            }
            Ok((eps, best))
        })
        .collect()
}
