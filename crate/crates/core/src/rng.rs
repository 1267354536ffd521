//! Seeded 64-bit linear congruential generator.
//!
//! Random initial interface guesses must reproduce bit-for-bit across
//! platforms, so the generator is pinned explicitly: MMIX multiplier
//! `6364136223846793005`, increment `1442695040888963407`, output from the
//! top 53 bits.

#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Log-uniform in [lo, hi].
    pub fn next_log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo > 0.0 && hi > lo);
        (lo.ln() + self.next_f64() * (hi.ln() - lo.ln())).exp()
    }

    pub fn fill_symmetric(&mut self, out: &mut [f64]) {
        for v in out {
            *v = self.next_symmetric();
        }
    }
}
