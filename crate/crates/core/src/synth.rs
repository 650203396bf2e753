//! Synthetic data generators.

use crate::estimator::Label;
use crate::feature::FeatureVector;
use crate::stream::StreamItem;

/// SplitMix64; used only to spread a user seed over the generator state.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256++ (Blackman & Vigna). Fixed algorithm, fixed seeding, so a
/// seed pins the byte-exact sample sequence on every platform. The four
/// state words come from consecutive SplitMix64 outputs of the seed.
#[derive(Debug, Clone, PartialEq)]
struct Xoshiro256PlusPlus {
    s: [u64; 4],
}

impl Xoshiro256PlusPlus {
    fn from_seed(seed: u64) -> Self {
        let mut mix = SplitMix64 { state: seed };
        Xoshiro256PlusPlus {
            s: [
                mix.next_u64(),
                mix.next_u64(),
                mix.next_u64(),
                mix.next_u64(),
            ],
        }
    }

    fn next_u64(&mut self) -> u64 {
        let result = self.s[0]
            .wrapping_add(self.s[3])
            .rotate_left(23)
            .wrapping_add(self.s[0]);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform on [0, 1) from the top 53 bits.
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal deviate via the Marsaglia polar method. Each call
    /// runs its own rejection loop and uses the first coordinate of the
    /// accepted pair, so the draw count per call is a pure function of the
    /// preceding uniform stream.
    fn next_normal(&mut self) -> f64 {
        loop {
            let a = 2.0 * self.next_f64() - 1.0;
            let b = 2.0 * self.next_f64() - 1.0;
            let s = a * a + b * b;
            if s > 0.0 && s < 1.0 {
                return a * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }
}

const WAVEFORM_FEATURES: usize = 21;

/// Which two base waves each class blends.
const CLASS_WAVES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Three-class waveform stream: 21 numeric features per sample, classes
/// drawn uniformly. A sample blends its class's two triangular base waves
/// with a uniform weight and adds unit Gaussian noise per feature.
///
/// Per sample the generator draws, in order: the class, the blend weight,
/// then one normal deviate per feature. Identical seeds replay identical
/// sequences bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    rng: Xoshiro256PlusPlus,
}

impl Waveform {
    pub fn new(seed: u64) -> Self {
        Waveform {
            rng: Xoshiro256PlusPlus::from_seed(seed),
        }
    }

    /// The classical triangular base waves, peaking at positions 6, 13
    /// and 9: `h_w(i) = max(6 - |i - peak_w|, 0)`. The overlap between
    /// the shifted pulses is what makes the classes hard to tell apart.
    pub(crate) fn base_wave(wave: usize, position: usize) -> f64 {
        let peak = [6.0, 13.0, 9.0][wave];
        (6.0 - (position as f64 - peak).abs()).max(0.0)
    }

    /// Deterministic sample assembly from the class index, the blend
    /// weight and the per-feature noise.
    pub(crate) fn assemble(
        class_index: usize,
        blend: f64,
        noise: &[f64; WAVEFORM_FEATURES],
    ) -> (FeatureVector, Label) {
        let (wave_a, wave_b) = CLASS_WAVES[class_index];
        let x = FeatureVector::from_numeric((0..WAVEFORM_FEATURES).map(|i| {
            let value = blend * Self::base_wave(wave_a, i)
                + (1.0 - blend) * Self::base_wave(wave_b, i)
                + noise[i];
            (format!("x{i:02}"), value)
        }))
        .expect("waveform features are finite");
        (x, Label::int(class_index as i64))
    }
}

impl Iterator for Waveform {
    type Item = StreamItem;

    fn next(&mut self) -> Option<Self::Item> {
        let class_index = (self.rng.next_f64() * 3.0) as usize;
        let blend = self.rng.next_f64();
        let mut noise = [0.0; WAVEFORM_FEATURES];
        for slot in &mut noise {
            *slot = self.rng.next_normal();
        }
        Some(Ok(Self::assemble(class_index, blend, &noise)))
    }
}
