//! Reproducible random sources.
//!
//! Everything stochastic in this crate draws from ChaCha8 keyed by a user
//! seed, with the 64-bit stream number carving out independent substreams:
//! one per sampling worker, plus disjoint ranges for parameter fitting and
//! the coupon-collector simulator so different consumers never share a
//! stream. Gaussians come from our own Box-Muller transform rather than a
//! library sampler, so the exact value stream is pinned by this crate alone
//! and survives dependency upgrades.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream-number ranges per consumer. Workers index from the base.
pub(crate) const STREAM_SPHERE_BASE: u64 = 0;
pub(crate) const STREAM_FIT_BASE: u64 = 1 << 32;
pub(crate) const STREAM_COUPON_BASE: u64 = 1 << 33;

/// Deterministic stream of standard Gaussian deviates (Box-Muller).
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    /// Uniform in (0, 1]; the open lower end keeps ln() finite.
    #[inline]
    fn unit_open_low(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, 1).
    #[inline]
    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let radius = (-2.0 * self.unit_open_low().ln()).sqrt();
        let angle = std::f64::consts::TAU * self.unit();
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    pub fn fill_gaussian(&mut self, out: &mut [f64]) {
        for slot in out {
            *slot = self.next_gaussian();
        }
    }
}

/// Uniform integer source for the coupon-collector simulator.
pub(crate) fn uniform_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
