//! Counter-based splittable random number generation.
//!
//! Every stream is keyed by (seed, chunk index) through SplitMix64 mixing, so
//! sampling is reproducible independently of thread count and evaluation
//! order. Non-cryptographic.

/// SplitMix64 (Sebastiano Vigna): fast, good diffusion.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Stream for a fixed (seed, chunk) key; streams for different chunks are
    /// statistically independent.
    pub fn keyed(seed: u64, chunk: u64) -> Self {
        Self::new(mix(seed ^ chunk.wrapping_mul(GOLDEN).wrapping_add(GOLDEN)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const DEN: f64 = (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64) / DEN
    }

    /// Uniform in [-1, 1).
    #[inline]
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Standard normal via Box-Muller (two draws per pair, one cached would
    /// break counter semantics, so we just discard the twin).
    pub fn next_normal(&mut self) -> f64 {
        loop {
            let u = self.next_f64();
            if u > 0.0 {
                let v = self.next_f64();
                return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
            }
        }
    }
}

/// Samples used per fixed-size Monte Carlo chunk.
pub const CHUNK: usize = 4096;
