//! JSON file schemas: plaintext state lists and channel descriptions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use pqc_core::channels::{
    pauli_decomposition, PauliDiagonal, RandomUnitaryChannel, Rotation, UnitalChannel,
};
use pqc_core::pqc::PlaintextSet;
use pqc_core::qmath::{BlochVector, QubitUnitary};

use crate::{AppError, ExitCode};

#[derive(Deserialize)]
pub struct StateFile {
    pub states: Vec<[f64; 3]>,
}

/// A channel is given either as Pauli diagonal lambdas (optionally rotated)
/// or as an explicit list of weighted unitary terms.
#[derive(Deserialize, Serialize, Default)]
pub struct ChannelFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation_left: Option<[[f64; 3]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation_right: Option<[[f64; 3]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermEntry>>,
}

/// One random-unitary term: probability and the 2x2 matrix as four [re, im]
/// pairs in row-major order.
#[derive(Deserialize, Serialize, Clone)]
pub struct TermEntry {
    pub p: f64,
    pub u: [[f64; 2]; 4],
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::new(ExitCode::Parse, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| AppError::new(ExitCode::Parse, format!("{}: {e}", path.display())))
}

pub fn load_states(path: &Path) -> Result<PlaintextSet, AppError> {
    let file: StateFile = read_json(path)?;
    let states = file
        .states
        .into_iter()
        .map(|[x, y, z]| BlochVector::new(x, y, z))
        .collect();
    PlaintextSet::new(states).map_err(AppError::from)
}

pub fn load_channel(path: &Path) -> Result<RandomUnitaryChannel, AppError> {
    let file: ChannelFile = read_json(path)?;
    if let Some(terms) = file.terms {
        let terms = terms
            .into_iter()
            .map(|t| {
                let c = |k: usize| Complex64::new(t.u[k][0], t.u[k][1]);
                let u = QubitUnitary::new([[c(0), c(1)], [c(2), c(3)]])?;
                Ok((t.p, u))
            })
            .collect::<pqc_core::Result<Vec<_>>>()?;
        return Ok(RandomUnitaryChannel::new(terms)?);
    }
    let Some([lx, ly, lz]) = file.lambdas else {
        return Err(AppError::new(
            ExitCode::Parse,
            format!("{}: channel file needs either \"lambdas\" or \"terms\"", path.display()),
        ));
    };
    let diag = PauliDiagonal::new(lx, ly, lz);
    if file.rotation_left.is_none() && file.rotation_right.is_none() {
        return Ok(pauli_decomposition(&diag)?);
    }
    let rot = |m: Option<[[f64; 3]; 3]>| -> pqc_core::Result<Rotation> {
        m.map_or(Ok(Rotation::identity()), Rotation::new)
    };
    let ch = UnitalChannel {
        rot_left: rot(file.rotation_left)?,
        diag,
        rot_right: rot(file.rotation_right)?,
    };
    Ok(ch.decompose()?)
}

/// Serializes a synthesized channel so that `load_channel` reads back the
/// identical decomposition (terms take precedence over the lambdas).
pub fn channel_to_file(ch: &UnitalChannel, dec: &RandomUnitaryChannel) -> ChannelFile {
    let terms = dec
        .terms()
        .iter()
        .map(|(p, u)| {
            let m = u.matrix();
            let pair = |z: Complex64| [z.re, z.im];
            TermEntry {
                p: *p,
                u: [pair(m[0][0]), pair(m[0][1]), pair(m[1][0]), pair(m[1][1])],
            }
        })
        .collect();
    ChannelFile {
        lambdas: Some(ch.diag.as_array()),
        rotation_left: Some(*ch.rot_left.matrix()),
        rotation_right: Some(*ch.rot_right.matrix()),
        terms: Some(terms),
    }
}

pub fn bloch_triple(r: &BlochVector) -> [f64; 3] {
    [r.x, r.y, r.z]
}
