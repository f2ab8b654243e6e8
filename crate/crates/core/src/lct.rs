//! Linear canonical transform parameters and the quaternion kernels.
//!
//! For a unimodular matrix `A = (a b; c d)` and `b ≠ 0`
//!
//! ```text
//! K^i_A(x, u) = 1/sqrt(2π|b|) · exp(i (a/(2b) x² − x u / b + d/(2b) u² − π/4))
//! ```
//!
//! and for `b = 0`, `K^i_A(x, u) = sqrt(d) · exp(i c d u² / 2)`. The
//! `j`-kernel is the same expression in the unit `j`. The constant `−π/4`
//! phase is kept for every `b ≠ 0`, Fourier parameters included.

use core::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Tolerance on `|det A − 1|`.
pub const DET_TOL: f64 = 1e-9;

/// One real 2×2 matrix `(a b; c d)` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LctParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LctParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let p = Self { a, b, c, d };
        p.validate()?;
        Ok(p)
    }

    /// The Fourier matrix `(0 1; −1 0)`.
    pub const fn fourier() -> Self {
        Self { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
    }

    pub const fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_axis(None)
    }

    fn validate_axis(&self, axis: Option<u8>) -> Result<()> {
        if ![self.a, self.b, self.c, self.d].iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteParams);
        }
        let det = self.det();
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::NotUnimodular { axis, det });
        }
        Ok(())
    }

    #[inline]
    pub fn is_dirac(&self) -> bool {
        self.b == 0.0
    }

    /// Kernel modulus: `1/sqrt(2π|b|)`, or `sqrt(d)` when `b = 0`.
    pub fn amplitude(&self) -> Result<f64> {
        if self.b != 0.0 {
            Ok(1.0 / libm::sqrt(2.0 * PI * self.b.abs()))
        } else if self.d > 0.0 {
            Ok(libm::sqrt(self.d))
        } else {
            Err(Error::NonPositiveD { d: self.d })
        }
    }

    /// Kernel phase at `(x, u)`, including the `−π/4` offset when `b ≠ 0`.
    pub fn phase(&self, x: f64, u: f64) -> f64 {
        if self.b != 0.0 {
            let inv2b = 0.5 / self.b;
            self.a * inv2b * x * x - x * u / self.b + self.d * inv2b * u * u - FRAC_PI_4
        } else {
            0.5 * self.c * self.d * u * u
        }
    }
}

/// `(a b; c d)⁻¹ = (d −b; −c a)` for unimodular matrices.
pub fn inverse_params(p: LctParams) -> LctParams {
    LctParams { a: p.d, b: -p.b, c: -p.c, d: p.a }
}

/// `K^i_A(x1, u1)`; lies in `span{1, i}`.
pub fn kernel_i(p: LctParams, x1: f64, u1: f64) -> Result<Quaternion> {
    Ok(Quaternion::exp_i(p.phase(x1, u1)) * p.amplitude()?)
}

/// `K^j_A(x2, u2)`; lies in `span{1, j}`.
pub fn kernel_j(p: LctParams, x2: f64, u2: f64) -> Result<Quaternion> {
    Ok(Quaternion::exp_j(p.phase(x2, u2)) * p.amplitude()?)
}

/// Kernel used by the inverse transform on the `i` side: `conj K^i_A(x1, u1)`.
///
/// This is the `−i`-unit kernel of the forward matrix. In terms of the
/// inverse matrix it equals `K^i_{A⁻¹}(u1, x1)` with the constant phase
/// `−π/4` replaced by `+π/4`.
pub fn adjoint_kernel_i(p: LctParams, u1: f64, x1: f64) -> Result<Quaternion> {
    Ok(kernel_i(p, x1, u1)?.conj())
}

/// `conj K^j_A(x2, u2)`, the `j`-side counterpart of [`adjoint_kernel_i`].
pub fn adjoint_kernel_j(p: LctParams, u2: f64, x2: f64) -> Result<Quaternion> {
    Ok(kernel_j(p, x2, u2)?.conj())
}

/// The matrix pair `(A1, A2)`: `A1` drives the left `i`-kernel over `x1`,
/// `A2` the right `j`-kernel over `x2`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransformParams {
    #[cfg_attr(feature = "serde", serde(rename = "A1"))]
    pub a1: LctParams,
    #[cfg_attr(feature = "serde", serde(rename = "A2"))]
    pub a2: LctParams,
}

impl TransformParams {
    pub fn new(a1: LctParams, a2: LctParams) -> Result<Self> {
        let p = Self { a1, a2 };
        p.validate()?;
        Ok(p)
    }

    /// Same matrix on both axes.
    pub fn both(p: LctParams) -> Result<Self> {
        Self::new(p, p)
    }

    pub fn validate(&self) -> Result<()> {
        self.a1.validate_axis(Some(1))?;
        self.a2.validate_axis(Some(2))
    }

    pub fn inverse(&self) -> Self {
        Self { a1: inverse_params(self.a1), a2: inverse_params(self.a2) }
    }
}

/// `(0 1; −1 0)` on both axes: the two-sided quaternion Fourier transform.
pub fn fourier_params() -> TransformParams {
    TransformParams { a1: LctParams::fourier(), a2: LctParams::fourier() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::SQRT_2;
    use proptest::prelude::*;

    fn inv_sqrt_2pi() -> f64 {
        1.0 / libm::sqrt(2.0 * PI)
    }

    #[test]
    fn kernel_i_examples() {
        let p = LctParams::fourier();
        let k = kernel_i(p, 0.0, 0.0).unwrap();
        let v = inv_sqrt_2pi() * SQRT_2 / 2.0;
        assert!(k.approx_eq(Quaternion::new(v, -v, 0.0, 0.0), 1e-15));
        assert!((k.q0 - 0.282095).abs() < 1e-6);

        assert_eq!(kernel_i(LctParams::identity(), 3.0, 1.7).unwrap(), Quaternion::ONE);

        let shear = LctParams { a: 1.0, b: 1.0, c: 0.0, d: 1.0 };
        let expected = Quaternion::exp_i(-FRAC_PI_4) * inv_sqrt_2pi();
        assert!(kernel_i(shear, 1.0, 1.0).unwrap().approx_eq(expected, 1e-15));
    }

    #[test]
    fn kernel_j_examples() {
        let p = LctParams::fourier();
        let v = inv_sqrt_2pi() * SQRT_2 / 2.0;
        assert!(kernel_j(p, 0.0, 0.0).unwrap().approx_eq(Quaternion::new(v, 0.0, -v, 0.0), 1e-15));

        let chirp = LctParams { a: 1.0, b: 0.0, c: 2.0, d: 1.0 };
        let expected = Quaternion::new(libm::cos(1.0), 0.0, libm::sin(1.0), 0.0);
        assert!(kernel_j(chirp, 0.3, 1.0).unwrap().approx_eq(expected, 1e-15));
    }

    #[test]
    fn dirac_branch_rejects_non_positive_d() {
        let p = LctParams::new(-1.0, 0.0, 0.3, -1.0).unwrap();
        assert_eq!(kernel_i(p, 0.0, 1.0), Err(Error::NonPositiveD { d: -1.0 }));
        assert_eq!(kernel_j(p, 0.0, 1.0), Err(Error::NonPositiveD { d: -1.0 }));
    }

    #[test]
    fn params_validation() {
        assert!(LctParams::new(1.0, 0.5, 0.0, 1.0).is_ok());
        assert_eq!(
            LctParams::new(0.9, 0.0, 0.0, 1.0),
            Err(Error::NotUnimodular { axis: None, det: 0.9 })
        );
        let bad = LctParams { a: 0.9, b: 0.0, c: 0.0, d: 1.0 };
        let err = TransformParams::new(bad, LctParams::fourier()).unwrap_err();
        assert_eq!(err, Error::NotUnimodular { axis: Some(1), det: 0.9 });
        assert!(alloc::format!("{err}").contains("det(A1) != 1"));
        let err = TransformParams::new(LctParams::fourier(), bad).unwrap_err();
        assert!(alloc::format!("{err}").contains("det(A2) != 1"));
    }

    #[test]
    fn inverse_params_examples() {
        let rot = LctParams::fourier();
        assert_eq!(inverse_params(rot), LctParams { a: 0.0, b: -1.0, c: 1.0, d: 0.0 });
        assert_eq!(inverse_params(LctParams::identity()), LctParams::identity());
        let shear = LctParams { a: 1.0, b: 0.5, c: 0.0, d: 1.0 };
        assert_eq!(inverse_params(shear), LctParams { a: 1.0, b: -0.5, c: 0.0, d: 1.0 });
    }

    #[test]
    fn fourier_params_example() {
        let p = fourier_params();
        assert_eq!(p.a1, LctParams { a: 0.0, b: 1.0, c: -1.0, d: 0.0 });
        assert_eq!(p.a2, p.a1);
        assert_eq!(p.a1.det(), 1.0);
        for (x, u) in [(0.3, -1.2), (2.0, 0.5), (-1.0, -1.0)] {
            let expected = Quaternion::exp_i(-x * u - FRAC_PI_4) * inv_sqrt_2pi();
            assert!(kernel_i(p.a1, x, u).unwrap().approx_eq(expected, 1e-15));
        }
    }

    fn unimodular() -> impl Strategy<Value = LctParams> {
        // a, b, d free with |b| >= 0.2; c solved from det = 1
        (-3.0..3.0f64, 0.2..3.0f64, prop::bool::ANY, -3.0..3.0f64).prop_map(|(a, b, neg, d)| {
            let b = if neg { -b } else { b };
            LctParams { a, b, c: (a * d - 1.0) / b, d }
        })
    }

    proptest! {
        #[test]
        fn kernel_modulus(p in unimodular(), x in -5.0..5.0f64, u in -5.0..5.0f64) {
            let amp = 1.0 / libm::sqrt(2.0 * PI * p.b.abs());
            prop_assert!((kernel_i(p, x, u).unwrap().norm() - amp).abs() < 1e-13);
            prop_assert!((kernel_j(p, x, u).unwrap().norm() - amp).abs() < 1e-13);
        }

        #[test]
        fn kernel_j_mirrors_kernel_i(p in unimodular(), x in -5.0..5.0f64, u in -5.0..5.0f64) {
            let ki = kernel_i(p, x, u).unwrap();
            let kj = kernel_j(p, x, u).unwrap();
            prop_assert_eq!(ki.q2, 0.0);
            prop_assert_eq!(ki.q3, 0.0);
            prop_assert_eq!(kj.q1, 0.0);
            prop_assert_eq!(kj.q3, 0.0);
            prop_assert_eq!(ki.q0, kj.q0);
            prop_assert_eq!(ki.q1, kj.q2);
        }

        #[test]
        fn inverse_phase_identity(p in unimodular(), x in -5.0..5.0f64, u in -5.0..5.0f64) {
            let sum = p.phase(x, u) + inverse_params(p).phase(u, x);
            prop_assert!((sum + core::f64::consts::FRAC_PI_2).abs() < 1e-9 * (1.0 + x * x + u * u) * (1.0 + p.a.abs() + p.d.abs()) / p.b.abs());
        }

        #[test]
        fn adjoint_relation(p in unimodular(), x in -5.0..5.0f64, u in -5.0..5.0f64) {
            let adj = adjoint_kernel_i(p, u, x).unwrap();
            let via_inverse = Quaternion::exp_i(inverse_params(p).phase(u, x) + core::f64::consts::FRAC_PI_2)
                * p.amplitude().unwrap();
            prop_assert!(adj.approx_eq(via_inverse, 1e-9 * (1.0 + x * x + u * u)));
        }

        #[test]
        fn inverse_params_involution(p in unimodular()) {
            prop_assert_eq!(inverse_params(inverse_params(p)), p);
            let q = inverse_params(p);
            // A · A⁻¹ = I
            prop_assert!((p.a * q.a + p.b * q.c - 1.0).abs() < 1e-9);
            prop_assert!((p.a * q.b + p.b * q.d).abs() < 1e-12);
            prop_assert!((p.c * q.a + p.d * q.c).abs() < 1e-9);
            prop_assert!((p.c * q.b + p.d * q.d - 1.0).abs() < 1e-9);
        }
    }
}
