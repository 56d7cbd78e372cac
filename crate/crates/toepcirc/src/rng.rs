//! Deterministic pseudo-randomness for reproducible experiments: a
//! splitmix-style 64-bit generator plus Box–Muller normal sampling. The
//! generator is pinned by constants rather than by a dependency so that CSV
//! outputs reproduce bit-for-bit across toolchains and platforms.

use num_complex::Complex64;

/// 64-bit splitmix generator: an additive Weyl sequence scrambled by two
/// xor-shift multiplications.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Generator seeded with `seed`.
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    /// Next raw 64-bit value.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Pair of independent standard normals (Box–Muller).
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        // Guard against ln(0) by nudging u away from zero.
        let u = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let v = self.next_f64();
        let radius = (-2.0 * u.ln()).sqrt();
        let angle = std::f64::consts::TAU * v;
        (radius * angle.cos(), radius * angle.sin())
    }

    /// Complex vector with independent standard-normal real and imaginary
    /// parts.
    pub fn complex_normal_vector(&mut self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| {
                let (re, im) = self.next_normal_pair();
                Complex64::new(re, im)
            })
            .collect()
    }
}
