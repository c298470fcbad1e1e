//! Fixed-point quantization of multiplexor angles.
//!
//! An angle `θ` is stored as `n_alpha` fractional bits of `θ / 2π`:
//! `θ̂ = 2π Σ_k a_k 2^{-k}`, `k = 1..=n_alpha`, with `a_1` the most
//! significant bit.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Largest supported control register.
pub const MAX_N_BETA: usize = 24;
/// Largest supported precision. Beyond this the rounding of `θ / 2π` in
/// an `f64` approaches the size of the last stored bit.
pub const MAX_N_ALPHA: usize = 32;

/// Distance, in units of the last stored bit, within which a scaled angle is
/// snapped to the neighbouring integer. Widened to the rounding error of
/// `θ / 2π · 2^n_alpha` at high precision.
const SNAP_TOLERANCE: f64 = 1e-9;

fn snap_tolerance(scale: f64) -> f64 {
    SNAP_TOLERANCE.max(8.0 * f64::EPSILON * scale)
}

/// The `2^n_beta` multiplexor angles, indexed by the integer value of the
/// control bitstring `b = (b_{n_beta-1}, …, b_0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleVector {
    n_beta: usize,
    angles: Vec<f64>,
}

impl AngleVector {
    pub fn new(n_beta: usize, angles: Vec<f64>) -> Result<Self> {
        if n_beta == 0 {
            return Err(Error::EmptyControlRegister);
        }
        if n_beta > MAX_N_BETA {
            return Err(Error::ControlCount(n_beta));
        }
        let expected = 1usize << n_beta;
        if angles.len() != expected {
            return Err(Error::AngleCount {
                expected,
                found: angles.len(),
            });
        }
        check_finite(&angles)?;
        Ok(AngleVector { n_beta, angles })
    }

    /// Infers `n_beta` from the length, which must be a power of two ≥ 2.
    pub fn from_angles(angles: Vec<f64>) -> Result<Self> {
        let len = angles.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::AngleCount {
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        Self::new(len.trailing_zeros() as usize, angles)
    }

    pub fn zeros(n_beta: usize) -> Result<Self> {
        Self::new(
            n_beta,
            alloc::vec![0.0; 1usize.checked_shl(n_beta as u32).unwrap_or(0)],
        )
    }

    pub fn n_beta(&self) -> usize {
        self.n_beta
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.angles
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.angles
    }
}

fn check_finite(angles: &[f64]) -> Result<()> {
    match angles.iter().position(|a| !a.is_finite()) {
        Some(index) => Err(Error::NonFiniteAngle { index }),
        None => Ok(()),
    }
}

/// How the tail beyond `n_alpha` bits is discarded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum QuantizeMode {
    /// Keep the leading bits of the binary expansion.
    #[default]
    Truncate,
    /// Round to the nearest representable angle, wrapping `2π` to 0.
    Nearest,
}

impl QuantizeMode {
    /// Worst-case spectral error of the quantized multiplexor.
    pub fn bound(self, n_alpha: usize) -> f64 {
        let step = TAU / pow2(n_alpha);
        match self {
            QuantizeMode::Truncate => step,
            QuantizeMode::Nearest => step / 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuantizeMode::Truncate => "truncate",
            QuantizeMode::Nearest => "nearest",
        }
    }
}

impl core::str::FromStr for QuantizeMode {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "truncate" => Ok(QuantizeMode::Truncate),
            "nearest" => Ok(QuantizeMode::Nearest),
            _ => Err(()),
        }
    }
}

fn pow2(n: usize) -> f64 {
    libm::ldexp(1.0, n as i32)
}

/// Boolean table `a[b][k]` of quantized angle bits, `k = 1..=n_alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitTable {
    n_beta: usize,
    n_alpha: usize,
    // Row-major, row b holds a[b][1..=n_alpha].
    bits: Vec<bool>,
}

impl BitTable {
    pub fn from_rows(n_beta: usize, n_alpha: usize, rows: &[Vec<bool>]) -> Result<Self> {
        if n_beta == 0 {
            return Err(Error::EmptyControlRegister);
        }
        if n_beta > MAX_N_BETA {
            return Err(Error::ControlCount(n_beta));
        }
        if n_alpha == 0 || n_alpha > MAX_N_ALPHA {
            return Err(Error::Precision(n_alpha));
        }
        if rows.len() != 1 << n_beta || rows.iter().any(|r| r.len() != n_alpha) {
            return Err(Error::BitTableShape);
        }
        Ok(BitTable {
            n_beta,
            n_alpha,
            bits: rows.concat(),
        })
    }

    /// Builds a table from per-row fixed-point numerators `m_b`, where
    /// `θ̂_b = 2π m_b / 2^n_alpha`.
    fn from_numerators(n_beta: usize, n_alpha: usize, numerators: &[u64]) -> Self {
        let mut bits = Vec::with_capacity(numerators.len() * n_alpha);
        for &m in numerators {
            bits.extend((1..=n_alpha).map(|k| (m >> (n_alpha - k)) & 1 == 1));
        }
        BitTable {
            n_beta,
            n_alpha,
            bits,
        }
    }

    pub fn n_beta(&self) -> usize {
        self.n_beta
    }

    pub fn n_alpha(&self) -> usize {
        self.n_alpha
    }

    pub fn num_rows(&self) -> usize {
        1 << self.n_beta
    }

    /// Bits `a[b][1..=n_alpha]`.
    pub fn row(&self, b: usize) -> &[bool] {
        &self.bits[b * self.n_alpha..(b + 1) * self.n_alpha]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[bool]> {
        self.bits.chunks(self.n_alpha)
    }

    /// `a[b][k]` with `k` counted from 1. Panics when out of range.
    pub fn bit(&self, b: usize, k: usize) -> bool {
        assert!(
            (1..=self.n_alpha).contains(&k),
            "bit index {k} outside 1..={}",
            self.n_alpha
        );
        self.row(b)[k - 1]
    }

    /// Fixed-point numerator of row `b`.
    pub fn numerator(&self, b: usize) -> u64 {
        self.row(b)
            .iter()
            .fold(0, |acc, &bit| (acc << 1) | bit as u64)
    }
}

/// Encodes every angle to `n_alpha` fractional bits of `θ / 2π`, after
/// reducing `θ` into `[0, 2π)`.
pub fn quantize(angles: &AngleVector, n_alpha: usize, mode: QuantizeMode) -> Result<BitTable> {
    if n_alpha == 0 || n_alpha > MAX_N_ALPHA {
        return Err(Error::Precision(n_alpha));
    }
    check_finite(angles.as_slice())?;
    let modulus = 1u64 << n_alpha;
    let scale = pow2(n_alpha);
    let tolerance = snap_tolerance(scale);
    let numerators: Vec<u64> = angles
        .as_slice()
        .iter()
        .map(|&theta| {
            let mut scaled = reduce_angle(theta) / TAU * scale;
            let nearest = libm::round(scaled);
            if libm::fabs(scaled - nearest) < tolerance {
                scaled = nearest;
            }
            let m = match mode {
                QuantizeMode::Truncate => libm::floor(scaled),
                QuantizeMode::Nearest => libm::round(scaled),
            };
            (m as u64) % modulus
        })
        .collect();
    Ok(BitTable::from_numerators(
        angles.n_beta(),
        n_alpha,
        &numerators,
    ))
}

/// Angles `θ̂_b = 2π Σ_k a[b][k] 2^{-k}`, all in `[0, 2π)`.
pub fn dequantize(table: &BitTable) -> AngleVector {
    let scale = pow2(table.n_alpha());
    let angles = (0..table.num_rows())
        .map(|b| TAU * table.numerator(b) as f64 / scale)
        .collect();
    AngleVector {
        n_beta: table.n_beta(),
        angles,
    }
}

/// `2|sin((θ - θ̂)/2)|`, the spectral distance between `exp(iθσ)` and
/// `exp(iθ̂σ)`.
pub fn per_angle_error(theta: f64, theta_hat: f64) -> f64 {
    2.0 * libm::fabs(libm::sin((theta - theta_hat) / 2.0))
}

/// Reduces an angle into `[0, 2π)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = libm::fmod(theta, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    // r + TAU can round up to exactly TAU for tiny negative r.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = reduce_angle(a - b);
    if d > PI {
        TAU - d
    } else {
        d
    }
}
