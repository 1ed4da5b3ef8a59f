//! Operational PQC simulation: seeded key streams, per-qubit encrypt and
//! decrypt round trips, and eavesdropper-view auditing.
//!
//! Key streams are drawn with a ChaCha8 generator seeded from a 64-bit
//! integer, sampling term indices by inverse CDF over the channel
//! probabilities in term order; the same seed always reproduces the same
//! stream. States travel as exact density operators, so the audit measures
//! algebraic security rather than statistical estimation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apqc::epsilon_for_set;
use crate::channels::{apply_bloch, RandomUnitaryChannel};
use crate::pqc::PlaintextSet;
use crate::qmath::{bloch_to_density, density_to_bloch, BlochVector};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// A reproducible sequence of term indices into a channel's unitary list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyStream {
    pub seed: u64,
    pub indices: Vec<usize>,
}

/// A sequence of qubit states to transmit.
#[derive(Debug, Clone)]
pub struct Message {
    slots: Vec<BlochVector>,
}

impl Message {
    pub fn new(slots: Vec<BlochVector>) -> Result<Self> {
        for s in &slots {
            s.validate()?;
        }
        Ok(Message { slots })
    }

    pub fn slots(&self) -> &[BlochVector] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// Aggregate results of one simulated transmission.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionReport {
    pub n_slots: usize,
    /// Largest Bloch distance between a plaintext and its decrypted image.
    pub max_roundtrip_error: f64,
    /// What the eavesdropper holds for the first slot (the channel mixture).
    pub eavesdropper_ciphertext: BlochVector,
    /// Largest pairwise distance between eavesdropper views of the slots.
    pub max_eavesdropper_deviation: f64,
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Samples `n` term indices with the channel probabilities, deterministically
/// from the seed.
pub fn generate_key(ch: &RandomUnitaryChannel, n: usize, seed: u64) -> KeyStream {
    let probs = ch.probabilities();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let mut cumulative = 0.0;
        let mut chosen = probs.len() - 1;
        for (j, &p) in probs.iter().enumerate() {
            cumulative += p;
            if u < cumulative {
                chosen = j;
                break;
            }
        }
        indices.push(chosen);
    }
    KeyStream { seed, indices }
}

fn conjugate_slot(r: &BlochVector, u: &crate::qmath::QubitUnitary) -> Result<BlochVector> {
    Ok(density_to_bloch(&u.conjugate(&bloch_to_density(r)?)))
}

/// Applies U_{j_i} to slot i.
pub fn encrypt(msg: &Message, key: &KeyStream, ch: &RandomUnitaryChannel) -> Result<Message> {
    if key.indices.len() != msg.len() {
        return Err(Error::LengthMismatch { key: key.indices.len(), msg: msg.len() });
    }
    let slots = msg
        .slots()
        .iter()
        .zip(&key.indices)
        .map(|(r, &j)| conjugate_slot(r, &ch.terms()[j].1))
        .collect::<Result<_>>()?;
    Ok(Message { slots })
}

/// Applies U_{j_i}^dagger to slot i; inverse of [`encrypt`].
pub fn decrypt(msg: &Message, key: &KeyStream, ch: &RandomUnitaryChannel) -> Result<Message> {
    if key.indices.len() != msg.len() {
        return Err(Error::LengthMismatch { key: key.indices.len(), msg: msg.len() });
    }
    let slots = msg
        .slots()
        .iter()
        .zip(&key.indices)
        .map(|(r, &j)| conjugate_slot(r, &ch.terms()[j].1.adjoint()))
        .collect::<Result<_>>()?;
    Ok(Message { slots })
}

/// The mixture an interceptor without the key holds: the full channel
/// applied to the plaintext.
pub fn eavesdropper_view(r: &BlochVector, ch: &RandomUnitaryChannel) -> Result<BlochVector> {
    apply_bloch(ch, r)
}

/// Runs the full round trip for a message and aggregates round-trip and
/// eavesdropper deviations.
pub fn audit(msg: &Message, ch: &RandomUnitaryChannel, key: &KeyStream) -> Result<TransmissionReport> {
    let encrypted = encrypt(msg, key, ch)?;
    let decrypted = decrypt(&encrypted, key, ch)?;
    let max_roundtrip_error = msg
        .slots()
        .iter()
        .zip(decrypted.slots())
        .map(|(a, b)| a.sub(b).norm())
        .fold(0.0, f64::max);

    let views: Vec<BlochVector> = msg
        .slots()
        .iter()
        .map(|r| eavesdropper_view(r, ch))
        .collect::<Result<_>>()?;
    let eavesdropper_ciphertext = views.first().copied().unwrap_or(BlochVector::ORIGIN);
    let mut max_eavesdropper_deviation = 0.0f64;
    for i in 0..views.len() {
        for j in (i + 1)..views.len() {
            max_eavesdropper_deviation =
                max_eavesdropper_deviation.max(views[i].sub(&views[j]).norm());
        }
    }
    Ok(TransmissionReport {
        n_slots: msg.len(),
        max_roundtrip_error,
        eavesdropper_ciphertext,
        max_eavesdropper_deviation,
    })
}

/// Convenience: the audit deviation equals the pairwise security parameter
/// of the slots as a plaintext set.
pub fn audit_matches_epsilon(msg: &Message, ch: &RandomUnitaryChannel) -> Result<bool> {
    if msg.is_empty() {
        return Ok(true);
    }
    let key = generate_key(ch, msg.len(), 0);
    let report = audit(msg, ch, &key)?;
    let set = PlaintextSet::new(msg.slots().to_vec())?;
    Ok((report.max_eavesdropper_deviation - epsilon_for_set(ch, &set)?).abs() < 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{pauli_decomposition, PauliDiagonal};
    use rand::Rng;

    fn ball(rng: &mut ChaCha8Rng) -> BlochVector {
        loop {
            let r = BlochVector::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if r.norm() <= 1.0 {
                return r;
            }
        }
    }

    #[test]
    fn generate_key_examples() {
        let id = RandomUnitaryChannel::identity();
        let key = generate_key(&id, 32, 1);
        assert!(key.indices.iter().all(|&j| j == 0));
        assert!(generate_key(&id, 0, 1).indices.is_empty());

        // Depolarizing frequencies stay within 3 sigma of 1/4.
        let depol = pauli_decomposition(&PauliDiagonal::new(0.0, 0.0, 0.0)).unwrap();
        let n = 100_000usize;
        let key = generate_key(&depol, n, 42);
        let mut counts = [0usize; 4];
        for &j in &key.indices {
            counts[j] += 1;
        }
        let sigma = (n as f64 * 0.25 * 0.75).sqrt();
        for &c in &counts {
            assert!((c as f64 - n as f64 * 0.25).abs() < 3.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn generate_key_is_deterministic() {
        let depol = pauli_decomposition(&PauliDiagonal::new(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(generate_key(&depol, 1000, 7), generate_key(&depol, 1000, 7));
        assert_ne!(generate_key(&depol, 1000, 7), generate_key(&depol, 1000, 8));
    }

    #[test]
    fn zero_probability_terms_never_drawn() {
        let phase = pauli_decomposition(&PauliDiagonal::new(1.0, 0.0, 0.0)).unwrap();
        let key = generate_key(&phase, 10_000, 3);
        assert!(key.indices.iter().all(|&j| j <= 1));
    }

    #[test]
    fn encrypt_examples() {
        let depol = pauli_decomposition(&PauliDiagonal::new(0.0, 0.0, 0.0)).unwrap();
        // sx flips z.
        let msg = Message::new(vec![BlochVector::new(0.0, 0.0, 1.0)]).unwrap();
        let key = KeyStream { seed: 0, indices: vec![1] };
        let out = encrypt(&msg, &key, &depol).unwrap();
        assert!(out.slots()[0].sub(&BlochVector::new(0.0, 0.0, -1.0)).norm() < 1e-12);
        // sz flips x.
        let msg = Message::new(vec![BlochVector::new(1.0, 0.0, 0.0)]).unwrap();
        let key = KeyStream { seed: 0, indices: vec![3] };
        let out = encrypt(&msg, &key, &depol).unwrap();
        assert!(out.slots()[0].sub(&BlochVector::new(-1.0, 0.0, 0.0)).norm() < 1e-12);

        let bad_key = KeyStream { seed: 0, indices: vec![0, 0] };
        assert!(encrypt(&msg, &bad_key, &depol).is_err());
    }

    #[test]
    fn decrypt_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let depol = pauli_decomposition(&PauliDiagonal::new(0.1, -0.2, 0.4)).unwrap();
        let msg = Message::new((0..100).map(|_| ball(&mut rng)).collect()).unwrap();
        let key = generate_key(&depol, msg.len(), 5);
        let round = decrypt(&encrypt(&msg, &key, &depol).unwrap(), &key, &depol).unwrap();
        for (a, b) in msg.slots().iter().zip(round.slots()) {
            assert!(a.sub(b).norm() < 1e-12);
        }

        // Wrong key index on a pure state generally fails to recover it.
        let msg = Message::new(vec![BlochVector::new(0.0, 0.0, 1.0)]).unwrap();
        let enc_key = KeyStream { seed: 0, indices: vec![1] };
        let wrong_key = KeyStream { seed: 0, indices: vec![0] };
        let out = decrypt(&encrypt(&msg, &enc_key, &depol).unwrap(), &wrong_key, &depol).unwrap();
        assert!(out.slots()[0].sub(&msg.slots()[0]).norm() > 1.0);

        let empty = Message::new(vec![]).unwrap();
        let key = generate_key(&depol, 0, 1);
        assert!(decrypt(&empty, &key, &depol).unwrap().is_empty());
    }

    #[test]
    fn eavesdropper_view_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let depol = pauli_decomposition(&PauliDiagonal::new(0.0, 0.0, 0.0)).unwrap();
        for _ in 0..10 {
            let r = ball(&mut rng);
            assert!(eavesdropper_view(&r, &depol).unwrap().norm() < 1e-12);
            let id = RandomUnitaryChannel::identity();
            assert!(eavesdropper_view(&r, &id).unwrap().sub(&r).norm() < 1e-12);
        }
    }

    #[test]
    fn audit_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let msg = Message::new((0..30).map(|_| ball(&mut rng)).collect()).unwrap();

        let depol = pauli_decomposition(&PauliDiagonal::new(0.0, 0.0, 0.0)).unwrap();
        let key = generate_key(&depol, msg.len(), 1);
        let report = audit(&msg, &depol, &key).unwrap();
        assert!(report.max_roundtrip_error < 1e-12);
        assert!(report.max_eavesdropper_deviation <= 1e-9);

        // Universal-NOT approximation over the Pauli eigenstates: epsilon = 2/3.
        let third = 1.0 / 3.0;
        let not3 = pauli_decomposition(&PauliDiagonal::new(-third, -third, -third)).unwrap();
        let six = Message::new(vec![
            BlochVector::new(1.0, 0.0, 0.0),
            BlochVector::new(-1.0, 0.0, 0.0),
            BlochVector::new(0.0, 1.0, 0.0),
            BlochVector::new(0.0, -1.0, 0.0),
            BlochVector::new(0.0, 0.0, 1.0),
            BlochVector::new(0.0, 0.0, -1.0),
        ])
        .unwrap();
        let key = generate_key(&not3, six.len(), 2);
        let report = audit(&six, &not3, &key).unwrap();
        assert!(report.max_eavesdropper_deviation <= 2.0 / 3.0 + 1e-9);
        assert!(audit_matches_epsilon(&six, &not3).unwrap());

        let id = RandomUnitaryChannel::identity();
        let poles = Message::new(vec![
            BlochVector::new(0.0, 0.0, 1.0),
            BlochVector::new(0.0, 0.0, -1.0),
        ])
        .unwrap();
        let key = generate_key(&id, 2, 0);
        let report = audit(&poles, &id, &key).unwrap();
        assert!((report.max_eavesdropper_deviation - 2.0).abs() < 1e-12);
    }
}
