//! The two-sided 2D QLCT
//!
//! ```text
//! T{f}(u) = ∫ K^i_{A1}(x1, u1) · f(x) · K^j_{A2}(x2, u2) dx
//! ```
//!
//! evaluated by quadrature. The `i`-kernel always multiplies from the left
//! and the `j`-kernel from the right. Because the quadrature weights are a
//! tensor product, the double sum is evaluated as two nested 1-D sums
//! (`x2` first, then `x1`), which is the same sum reassociated.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exec::for_each_row;
use crate::field::{GridSpec, SampledField};
use crate::lct::{adjoint_kernel_i, adjoint_kernel_j, kernel_i, kernel_j, TransformParams};
use crate::quaternion::Quaternion;

/// Transform values over a `(u1, u2)` grid, with the parameters that made them.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    field: SampledField,
    params: TransformParams,
}

impl Spectrum {
    pub fn new(field: SampledField, params: TransformParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { field, params })
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

    pub fn params(&self) -> &TransformParams {
        &self.params
    }

    pub fn into_field(self) -> SampledField {
        self.field
    }
}

/// Weighted sandwich sum `out[o1, o2] = Σ_{r,c} L[o1, r] · w1[r] w2[c] f[r, c] · R[c, o2]`.
///
/// `left` is `n_out1 × n1` (row per output), `right` is `n2 × n_out2`
/// (row per input). Each output node is reduced in a fixed order.
pub(crate) fn sandwich(
    field: &SampledField,
    left: &[Quaternion],
    n_out1: usize,
    right: &[Quaternion],
    n_out2: usize,
) -> Vec<Quaternion> {
    let (n1, n2) = (field.spec().n1, field.spec().n2);
    debug_assert_eq!(left.len(), n_out1 * n1);
    debug_assert_eq!(right.len(), n2 * n_out2);
    let weighted = field.weighted_values();

    // Stage 1: G[r, o2] = Σ_c wf[r, c] · R[c, o2]
    let mut partial = vec![Quaternion::ZERO; n1 * n_out2];
    for_each_row(&mut partial, n_out2, |r, row| {
        for (c, &fw) in weighted[r * n2..(r + 1) * n2].iter().enumerate() {
            let krow = &right[c * n_out2..(c + 1) * n_out2];
            for (acc, &k) in row.iter_mut().zip(krow) {
                *acc += fw * k;
            }
        }
    });

    // Stage 2: T[o1, o2] = Σ_r L[o1, r] · G[r, o2]
    let mut out = vec![Quaternion::ZERO; n_out1 * n_out2];
    for_each_row(&mut out, n_out2, |o1, row| {
        for (r, &k) in left[o1 * n1..(o1 + 1) * n1].iter().enumerate() {
            let grow = &partial[r * n_out2..(r + 1) * n_out2];
            for (acc, &g) in row.iter_mut().zip(grow) {
                *acc += k * g;
            }
        }
    });
    out
}

/// Tabulates `kernel(x, u)` as an `outs × ins` matrix (`left` layout).
pub(crate) fn left_matrix<K>(ins: &[f64], outs: &[f64], kernel: K) -> Result<Vec<Quaternion>>
where
    K: Fn(f64, f64) -> Result<Quaternion>,
{
    let mut m = Vec::with_capacity(ins.len() * outs.len());
    for &u in outs {
        for &x in ins {
            m.push(kernel(x, u)?);
        }
    }
    Ok(m)
}

/// Tabulates `kernel(x, u)` as an `ins × outs` matrix (`right` layout).
pub(crate) fn right_matrix<K>(ins: &[f64], outs: &[f64], kernel: K) -> Result<Vec<Quaternion>>
where
    K: Fn(f64, f64) -> Result<Quaternion>,
{
    let mut m = Vec::with_capacity(ins.len() * outs.len());
    for &x in ins {
        for &u in outs {
            m.push(kernel(x, u)?);
        }
    }
    Ok(m)
}

/// Forward transform of `f` onto the frequency grid `freq`.
pub fn forward(f: &SampledField, params: TransformParams, freq: GridSpec) -> Result<Spectrum> {
    params.validate()?;
    freq.validate()?;
    let spec = f.spec();
    let (us, vs) = (freq.x1_nodes(), freq.x2_nodes());
    let left = left_matrix(&spec.x1_nodes(), &us, |x, u| kernel_i(params.a1, x, u))?;
    let right = right_matrix(&spec.x2_nodes(), &vs, |x, v| kernel_j(params.a2, x, v))?;
    let values = sandwich(f, &left, us.len(), &right, vs.len());
    Spectrum::new(SampledField::new(freq, values)?, params)
}

/// Inverse transform of `s` onto the spatial grid `space`.
///
/// Uses the adjoint kernels `conj K^i_{A1}(x1, u1)` (left) and
/// `conj K^j_{A2}(x2, u2)` (right); with the `1/sqrt(2π|b|)` amplitude the
/// forward transform is unitary, so no extra constant is applied.
pub fn inverse(s: &Spectrum, space: GridSpec) -> Result<SampledField> {
    let params = s.params;
    for (axis, p) in [(1, params.a1), (2, params.a2)] {
        if p.is_dirac() {
            return Err(Error::DiracAxis { axis });
        }
    }
    space.validate()?;
    let freq = s.spec();
    let (xs1, xs2) = (space.x1_nodes(), space.x2_nodes());
    let left = left_matrix(&freq.x1_nodes(), &xs1, |u, x| adjoint_kernel_i(params.a1, u, x))?;
    let right = right_matrix(&freq.x2_nodes(), &xs2, |v, x| adjoint_kernel_j(params.a2, v, x))?;
    let values = sandwich(&s.field, &left, xs1.len(), &right, xs2.len());
    SampledField::new(space, values)
}

/// `∫|T{f}|² du / ∫|f|² dx`, measured rather than assumed.
pub fn parseval_ratio(f: &SampledField, params: TransformParams, freq: GridSpec) -> Result<f64> {
    let energy = f.integrate_real(Quaternion::norm_sqr);
    if energy == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let spectrum = forward(f, params, freq)?;
    Ok(spectrum.field().integrate_real(Quaternion::norm_sqr) / energy)
}

/// The three spectra entering a product identity `T{h} ≈ L · R`.
///
/// For convolution `h = f ∗ g`, `L = T{f}`, `R = T{g}`; for correlation
/// `h = f ∘ g`, `L = T{f}`, `R = conj T{g}`.
#[derive(Debug, Clone)]
pub struct ProductIdentity {
    pub target: Spectrum,
    pub left: Spectrum,
    pub right: Vec<Quaternion>,
}

impl ProductIdentity {
    /// `‖T{h} − combine(L, R)‖₂ / ‖T{h}‖₂` over the frequency grid.
    pub fn residual_by<F>(&self, combine: F) -> Result<f64>
    where
        F: Fn(Quaternion, Quaternion) -> Quaternion,
    {
        let reference = self.target.field().l2_norm();
        if reference == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let diff: Vec<Quaternion> = self
            .target
            .values()
            .iter()
            .zip(self.left.values())
            .zip(&self.right)
            .map(|((&t, &l), &r)| t - combine(l, r))
            .collect();
        let diff = SampledField::new(*self.target.spec(), diff)?;
        Ok(diff.l2_norm() / reference)
    }

    /// Residual against `scale · L · R`, left factor first.
    pub fn residual(&self, scale: f64) -> Result<f64> {
        self.residual_by(|l, r| l * r * scale)
    }
}

/// Spectra for the convolution identity `T{f ∗ g} = T{f} · T{g}`.
pub fn convolution_identity(
    f: &SampledField,
    g: &SampledField,
    params: TransformParams,
    freq: GridSpec,
) -> Result<ProductIdentity> {
    let conv = f.convolve(g)?;
    let target = forward(&conv, params, freq)?;
    let left = forward(f, params, freq)?;
    let right = forward(g, params, freq)?.into_field().into_values();
    Ok(ProductIdentity { target, left, right })
}

/// `‖T{f ∗ g} − T{f}·T{g}‖ / ‖T{f ∗ g}‖`.
pub fn convolution_residual(
    f: &SampledField,
    g: &SampledField,
    params: TransformParams,
    freq: GridSpec,
) -> Result<f64> {
    convolution_identity(f, g, params, freq)?.residual(1.0)
}

/// `(f ∘ g)(x) = ∫ f(x + y) conj(g(y)) dy`.
pub fn correlate(f: &SampledField, g: &SampledField) -> Result<SampledField> {
    f.correlate(g)
}

/// Spectra for the correlation identity `T{f ∘ g} = T{f} · conj T{g}`.
pub fn correlation_identity(
    f: &SampledField,
    g: &SampledField,
    params: TransformParams,
    freq: GridSpec,
) -> Result<ProductIdentity> {
    let corr = f.correlate(g)?;
    let target = forward(&corr, params, freq)?;
    let left = forward(f, params, freq)?;
    let right = forward(g, params, freq)?.into_field().into_values().into_iter().map(Quaternion::conj).collect();
    Ok(ProductIdentity { target, left, right })
}

/// `‖T{f ∘ g} − T{f}·conj T{g}‖ / ‖T{f ∘ g}‖`.
pub fn correlation_residual(
    f: &SampledField,
    g: &SampledField,
    params: TransformParams,
    freq: GridSpec,
) -> Result<f64> {
    correlation_identity(f, g, params, freq)?.residual(1.0)
}
