//! Densities and test signals sampled onto a caller-chosen grid.

use core::f64::consts::PI;

use crate::error::Result;
use crate::field::{GridSpec, SampledField};
use crate::quaternion::Quaternion;

/// `(2x1 + x2) + i(x1² − x2²) + j x1x2 + k(3x1 − x2)`.
pub fn example1_numerator_at(x1: f64, x2: f64) -> Quaternion {
    Quaternion::new(2.0 * x1 + x2, x1 * x1 - x2 * x2, x1 * x2, 3.0 * x1 - x2)
}

/// The printed normalizer `20 + 4j + 8k` of the worked quaternion density.
pub const EXAMPLE1_DENOMINATOR: Quaternion = Quaternion::new(20.0, 0.0, 4.0, 8.0);

pub fn example1_numerator(spec: GridSpec) -> Result<SampledField> {
    SampledField::sample(spec, example1_numerator_at)
}

/// The numerator left-multiplied by `(20 + 4j + 8k)⁻¹`.
pub fn example1_density(spec: GridSpec) -> Result<SampledField> {
    let inv = EXAMPLE1_DENOMINATOR.inverse()?;
    SampledField::sample(spec, |x1, x2| inv * example1_numerator_at(x1, x2))
}

/// `x1 + j x2`.
pub fn example2_density(spec: GridSpec) -> Result<SampledField> {
    SampledField::sample(spec, |x1, x2| Quaternion::new(x1, 0.0, x2, 0.0))
}

/// Constant density `1 / area` over the grid's box.
pub fn uniform_pdf(spec: GridSpec) -> Result<SampledField> {
    let area = (spec.x1_max - spec.x1_min) * (spec.x2_max - spec.x2_min);
    SampledField::sample(spec, |_, _| Quaternion::real(1.0 / area))
}

/// Centred independent normal density with standard deviations `s1`, `s2`.
pub fn gaussian_pdf(spec: GridSpec, s1: f64, s2: f64) -> Result<SampledField> {
    correlated_gaussian_pdf(spec, s1, s2, 0.0)
}

/// Centred bivariate normal density with correlation `rho`.
pub fn correlated_gaussian_pdf(spec: GridSpec, s1: f64, s2: f64, rho: f64) -> Result<SampledField> {
    let one_minus = 1.0 - rho * rho;
    let norm = 1.0 / (2.0 * PI * s1 * s2 * libm::sqrt(one_minus));
    SampledField::sample(spec, |x1, x2| {
        let (z1, z2) = (x1 / s1, x2 / s2);
        let q = (z1 * z1 - 2.0 * rho * z1 * z2 + z2 * z2) / one_minus;
        Quaternion::real(norm * libm::exp(-0.5 * q))
    })
}

/// `exp(−|x|²/2)`.
pub fn gaussian(spec: GridSpec) -> Result<SampledField> {
    SampledField::sample(spec, |x1, x2| Quaternion::real(libm::exp(-0.5 * (x1 * x1 + x2 * x2))))
}

/// A smooth, off-centre bump with all four components nonzero.
pub fn quaternion_bump(spec: GridSpec) -> Result<SampledField> {
    SampledField::sample(spec, |x1, x2| {
        let e = libm::exp(-0.5 * ((x1 - 0.5) * (x1 - 0.5) + (x2 + 0.3) * (x2 + 0.3)));
        Quaternion::new(1.0, 0.5 * x1, -0.4 * x2, 0.3 + 0.2 * x1 * x2) * e
    })
}

/// A pair for which the Fourier-parameter convolution identity is exact:
/// `f = α(x1) β(x2)` with `α` in `span{1, i}` and `β` in `span{1, j}`,
/// `g = γ(x1) δ(x2)` with `γ` real and even and `δ` in `span{1, j}`.
pub fn structured_pair(spec: GridSpec) -> Result<(SampledField, SampledField)> {
    let f = SampledField::sample(spec, |x1, x2| {
        let alpha = Quaternion::new(1.0, 0.5 * x1, 0.0, 0.0) * libm::exp(-0.5 * x1 * x1);
        let beta = Quaternion::new(1.0, 0.0, 0.3, 0.0) * libm::exp(-0.5 * x2 * x2);
        alpha * beta
    })?;
    let g = SampledField::sample(spec, |x1, x2| {
        let gamma = libm::exp(-x1 * x1);
        let delta = Quaternion::new(1.0, 0.0, 0.5 * x2, 0.0) * libm::exp(-x2 * x2);
        delta * gamma
    })?;
    Ok((f, g))
}

/// A pair without the commutation structure: `f` has a `k` part and `g`
/// an `i` part.
pub fn generic_pair(spec: GridSpec) -> Result<(SampledField, SampledField)> {
    let f = quaternion_bump(spec)?;
    let g = SampledField::sample(spec, |x1, x2| {
        Quaternion::new(1.0, 0.6, 0.0, 0.0) * libm::exp(-(x1 * x1 + 0.5 * x2 * x2))
    })?;
    Ok((f, g))
}
