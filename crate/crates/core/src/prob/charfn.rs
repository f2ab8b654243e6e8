use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{GridSpec, SampledField};
use crate::lct::{kernel_i, kernel_j, TransformParams};
use crate::prob::density::Qpdf;
use crate::quaternion::Quaternion;
use crate::transform::{self, left_matrix, right_matrix, sandwich, Spectrum};

/// Kernel family of a characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CharFnMode {
    /// `∫ e^{iux1} f(x) e^{jvx2} dx`, no amplitude factor.
    #[default]
    FourierUnnormalized,
    /// The QLCT sandwich with the parameters' kernels.
    Lct,
}

/// A characteristic function sampled over a `(u, v)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CharFn {
    field: SampledField,
    mode: CharFnMode,
    params: Option<TransformParams>,
}

impl CharFn {
    /// Wraps stored samples, e.g. read back from a file.
    pub fn from_parts(field: SampledField, mode: CharFnMode, params: Option<TransformParams>) -> Result<Self> {
        let params = match mode {
            CharFnMode::FourierUnnormalized => None,
            CharFnMode::Lct => {
                let p = params.ok_or(Error::MissingParams)?;
                p.validate()?;
                Some(p)
            }
        };
        Ok(Self { field, mode, params })
    }

    pub fn field(&self) -> &SampledField {
        &self.field
    }

    pub fn spec(&self) -> &GridSpec {
        self.field.spec()
    }

    pub fn values(&self) -> &[Quaternion] {
        self.field.values()
    }

    pub fn mode(&self) -> CharFnMode {
        self.mode
    }

    /// Set in LCT mode only.
    pub fn params(&self) -> Option<TransformParams> {
        self.params
    }
}

fn evaluate(
    f: &SampledField,
    mode: CharFnMode,
    params: Option<TransformParams>,
    us: &[f64],
    vs: &[f64],
) -> Result<Vec<Quaternion>> {
    let spec = f.spec();
    let (left, right) = match (mode, params) {
        (CharFnMode::FourierUnnormalized, _) => (
            left_matrix(&spec.x1_nodes(), us, |x, u| Ok(Quaternion::exp_i(u * x)))?,
            right_matrix(&spec.x2_nodes(), vs, |x, v| Ok(Quaternion::exp_j(v * x)))?,
        ),
        (CharFnMode::Lct, Some(p)) => (
            left_matrix(&spec.x1_nodes(), us, |x, u| kernel_i(p.a1, x, u))?,
            right_matrix(&spec.x2_nodes(), vs, |x, v| kernel_j(p.a2, x, v))?,
        ),
        (CharFnMode::Lct, None) => return Err(Error::MissingParams),
    };
    Ok(sandwich(f, &left, us.len(), &right, vs.len()))
}

/// Characteristic function of `f` over the frequency grid `freq`.
///
/// `params` is required in LCT mode and ignored in Fourier mode.
pub fn charfn(f: &Qpdf, mode: CharFnMode, params: Option<TransformParams>, freq: GridSpec) -> Result<CharFn> {
    freq.validate()?;
    let shell = CharFn::from_parts(SampledField::zeros(freq)?, mode, params)?;
    let values = evaluate(f.field(), mode, shell.params, &freq.x1_nodes(), &freq.x2_nodes())?;
    Ok(CharFn { field: SampledField::new(freq, values)?, ..shell })
}

/// Fourier-mode characteristic function at arbitrary nodes, row-major over
/// `us × vs`.
pub fn fourier_charfn_at(f: &SampledField, us: &[f64], vs: &[f64]) -> Vec<Quaternion> {
    evaluate(f, CharFnMode::FourierUnnormalized, None, us, vs).expect("fourier kernels are total")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    X1,
    X2,
}

/// Fourier-mode characteristic function of one marginal.
///
/// The other coordinate is integrated out first. The `x1` marginal takes
/// `e^{iux1}` on the left, the `x2` marginal `e^{jvx2}` on the right.
pub fn marginal_charfn(f: &Qpdf, axis: Axis, freqs: &[f64]) -> Vec<Quaternion> {
    let field = f.field();
    let spec = field.spec();
    let (w1, w2) = (spec.weights1(), spec.weights2());
    let (n1, n2) = (spec.n1, spec.n2);
    let (nodes, weights, marginal): (Vec<f64>, Vec<f64>, Vec<Quaternion>) = match axis {
        Axis::X1 => (
            spec.x1_nodes(),
            w1,
            (0..n1).map(|r| (0..n2).map(|c| field.get(r, c) * w2[c]).sum()).collect(),
        ),
        Axis::X2 => (
            spec.x2_nodes(),
            w2,
            (0..n2).map(|c| (0..n1).map(|r| field.get(r, c) * w1[r]).sum()).collect(),
        ),
    };
    freqs
        .iter()
        .map(|&u| {
            nodes
                .iter()
                .zip(&weights)
                .zip(&marginal)
                .map(|((&x, &w), &m)| match axis {
                    Axis::X1 => Quaternion::exp_i(u * x) * m * w,
                    Axis::X2 => m * Quaternion::exp_j(u * x) * w,
                })
                .sum()
        })
        .collect()
}

/// Recovers the density from its characteristic function on `space`.
///
/// Fourier mode applies `e^{−iux1}` on the left, `e^{−jvx2}` on the right
/// and `1/(2π)²`. LCT mode is the inverse transform, which needs no
/// constant.
pub fn invert_charfn(cf: &CharFn, space: GridSpec) -> Result<SampledField> {
    match cf.mode {
        CharFnMode::FourierUnnormalized => {
            space.validate()?;
            let freq = cf.spec();
            let (xs1, xs2) = (space.x1_nodes(), space.x2_nodes());
            let left = left_matrix(&freq.x1_nodes(), &xs1, |u, x| Ok(Quaternion::exp_i(-u * x)))?;
            let right = right_matrix(&freq.x2_nodes(), &xs2, |v, x| Ok(Quaternion::exp_j(-v * x)))?;
            let scale = 1.0 / (4.0 * PI * PI);
            let values =
                sandwich(&cf.field, &left, xs1.len(), &right, xs2.len()).into_iter().map(|q| q * scale).collect();
            SampledField::new(space, values)
        }
        CharFnMode::Lct => {
            let params = cf.params.ok_or(Error::MissingParams)?;
            transform::inverse(&Spectrum::new(cf.field.clone(), params)?, space)
        }
    }
}

/// Largest jump between neighbouring frequency nodes along each axis.
///
/// In Fourier mode `|φ(u+h, v) − φ(u, v)| ≤ h ∫|x1||f| dx`, which also
/// holds for the quadrature sums since the weights are positive; the
/// bounds are only filled in that mode.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Continuity {
    pub step_u: f64,
    pub step_v: f64,
    pub max_jump_u: f64,
    pub max_jump_v: f64,
    pub bound_u: Option<f64>,
    pub bound_v: Option<f64>,
}

impl Continuity {
    pub fn holds(&self) -> Option<bool> {
        match (self.bound_u, self.bound_v) {
            (Some(bu), Some(bv)) => Some(self.max_jump_u <= bu * (1.0 + 1e-12) && self.max_jump_v <= bv * (1.0 + 1e-12)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PropertyReport {
    pub mode: CharFnMode,
    /// `φ(0, 0)` evaluated with the same kernels and quadrature.
    pub origin: Quaternion,
    pub integral: Quaternion,
    pub max_abs: f64,
    /// `∫|f|` times the kernel amplitudes; `1` for a real PDF in Fourier mode.
    pub bound: f64,
    /// For real `f` on a grid symmetric about the origin: the largest
    /// deviation from `φ(−u, −v) = −k φ(u, v) k` (scalar and `k` parts
    /// even, `i` and `j` parts odd).
    pub parity_error: Option<f64>,
    /// Same comparison against `−k conj(φ(u, v)) k`.
    pub conj_parity_error: Option<f64>,
    pub continuity: Continuity,
}

impl PropertyReport {
    pub fn bounded(&self, tol: f64) -> bool {
        self.max_abs <= self.bound + tol
    }
}

fn is_symmetric(spec: &GridSpec) -> bool {
    let close = |a: f64, b: f64| (a + b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    close(spec.x1_min, spec.x1_max) && close(spec.x2_min, spec.x2_max)
}

/// Normalization, boundedness, parity and continuity of `cf`, which must
/// have been computed from `f`.
pub fn charfn_properties(cf: &CharFn, f: &Qpdf) -> Result<PropertyReport> {
    let field = f.field();
    let origin = evaluate(field, cf.mode, cf.params, &[0.0], &[0.0])?[0];
    let integral = field.integrate();
    let amplitude = match cf.params {
        Some(p) => p.a1.amplitude()? * p.a2.amplitude()?,
        None => 1.0,
    };
    let bound = amplitude * field.integrate_abs();
    let max_abs = cf.values().iter().map(|q| q.norm()).fold(0.0, f64::max);

    let spec = *cf.spec();
    let (n1, n2) = (spec.n1, spec.n2);
    let (parity_error, conj_parity_error) = if f.is_real() && is_symmetric(&spec) {
        let reflect = |q: Quaternion| -(Quaternion::K * q * Quaternion::K);
        let mut literal = 0.0f64;
        let mut conj = 0.0f64;
        for r in 0..n1 {
            for c in 0..n2 {
                let phi = cf.field.get(r, c);
                let mirrored = cf.field.get(n1 - 1 - r, n2 - 1 - c);
                literal = literal.max((mirrored - reflect(phi)).norm());
                conj = conj.max((mirrored - reflect(phi.conj())).norm());
            }
        }
        (Some(literal), Some(conj))
    } else {
        (None, None)
    };

    let mut max_jump_u = 0.0f64;
    let mut max_jump_v = 0.0f64;
    for r in 0..n1 {
        for c in 0..n2 {
            let phi = cf.field.get(r, c);
            if r + 1 < n1 {
                max_jump_u = max_jump_u.max((cf.field.get(r + 1, c) - phi).norm());
            }
            if c + 1 < n2 {
                max_jump_v = max_jump_v.max((cf.field.get(r, c + 1) - phi).norm());
            }
        }
    }
    let (bound_u, bound_v) = match cf.mode {
        CharFnMode::FourierUnnormalized => {
            (Some(spec.h1() * abs_moment(field, Axis::X1)), Some(spec.h2() * abs_moment(field, Axis::X2)))
        }
        CharFnMode::Lct => (None, None),
    };
    Ok(PropertyReport {
        mode: cf.mode,
        origin,
        integral,
        max_abs,
        bound,
        parity_error,
        conj_parity_error,
        continuity: Continuity { step_u: spec.h1(), step_v: spec.h2(), max_jump_u, max_jump_v, bound_u, bound_v },
    })
}

/// `∫ |x_axis| |f(x)| dx`.
fn abs_moment(field: &SampledField, axis: Axis) -> f64 {
    let spec = *field.spec();
    let (w1, w2) = (spec.weights1(), spec.weights2());
    let mut total = 0.0;
    for (r, wr) in w1.iter().enumerate() {
        for (c, wc) in w2.iter().enumerate() {
            let x = match axis {
                Axis::X1 => spec.x1(r),
                Axis::X2 => spec.x2(c),
            };
            total += wr * wc * x.abs() * field.get(r, c).norm();
        }
    }
    total
}
