//! Labeled, per-trial random substreams derived from one master seed.
//!
//! Each `(seed, label, trial)` triple maps to its own ChaCha stream, so the
//! draws for one trial never depend on how many trials ran before it, on
//! which worker ran it, or on draws made under a different label.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum StreamLabel {
    /// Horizontal device coordinates.
    Positions = 1,
    AerialRx = 2,
    AerialTx = 3,
    Fading = 4,
}

pub fn substream(seed: u64, label: StreamLabel, trial: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(label as u64).to_le_bytes());
    key[16..24].copy_from_slice(b"dipolnet");
    let mut rng = ChaCha12Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}
