//! The quaternion algebra over `f64`.
//!
//! Basis products follow `i² = j² = k² = ijk = −1`, so `ij = k`, `jk = i`,
//! `ki = j` and the reversed products flip sign.

use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Default tolerance for [`Quaternion::approx_eq`].
pub const DEFAULT_TOL: f64 = 1e-12;

/// `q0 + i q1 + j q2 + k q3`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    #[inline]
    pub const fn real(x: f64) -> Self {
        Self::new(x, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    /// `cos θ + i sin θ`.
    #[inline]
    pub fn exp_i(theta: f64) -> Self {
        let (s, c) = libm::sincos(theta);
        Self::new(c, s, 0.0, 0.0)
    }

    /// `cos θ + j sin θ`.
    #[inline]
    pub fn exp_j(theta: f64) -> Self {
        let (s, c) = libm::sincos(theta);
        Self::new(c, 0.0, s, 0.0)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    /// Squared modulus `q0² + q1² + q2² + q3²`.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// `q* / |q|²`; errors on the zero quaternion.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj() / n2)
    }

    /// Scalar part.
    #[inline]
    pub fn sc(self) -> f64 {
        self.q0
    }

    /// Vector part as a pure quaternion.
    #[inline]
    pub fn vec(self) -> Self {
        Self::new(0.0, self.q1, self.q2, self.q3)
    }

    /// Euclidean dot product of the vector parts.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.q1 * other.q1 + self.q2 * other.q2 + self.q3 * other.q3
    }

    /// Cross product of the vector parts, as a pure quaternion.
    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            0.0,
            self.q2 * other.q3 - self.q3 * other.q2,
            self.q3 * other.q1 - self.q1 * other.q3,
            self.q1 * other.q2 - self.q2 * other.q1,
        )
    }

    /// `pq − qp`.
    #[inline]
    pub fn commutator(self, other: Self) -> Self {
        self * other - other * self
    }

    pub fn is_finite(self) -> bool {
        self.q0.is_finite() && self.q1.is_finite() && self.q2.is_finite() && self.q3.is_finite()
    }

    /// Componentwise `|a − b| <= tol · max(1, |a|, |b|)`.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        let scale = 1.0_f64.max(self.norm()).max(other.norm());
        (self - other).norm() <= tol * scale
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.q0, self.q1, self.q2, self.q3)
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.q0 + r.q0, self.q1 + r.q1, self.q2 + r.q2, self.q3 + r.q3)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.q0 - r.q0, self.q1 - r.q1, self.q2 - r.q2, self.q3 - r.q3)
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, p: Self) -> Self {
        let q = self;
        Self::new(
            q.q0 * p.q0 - q.q1 * p.q1 - q.q2 * p.q2 - q.q3 * p.q3,
            q.q0 * p.q1 + q.q1 * p.q0 + q.q2 * p.q3 - q.q3 * p.q2,
            q.q0 * p.q2 - q.q1 * p.q3 + q.q2 * p.q0 + q.q3 * p.q1,
            q.q0 * p.q3 + q.q1 * p.q2 - q.q2 * p.q1 + q.q3 * p.q0,
        )
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.q0 / s, self.q1 / s, self.q2 / s, self.q3 / s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Quaternion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Quaternion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(d).map(Self::from_array)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};
    use proptest::prelude::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn close(a: Quaternion, b: Quaternion) -> bool {
        a.approx_eq(b, 1e-12)
    }

    #[test]
    fn basis_table() {
        let one = Quaternion::ONE;
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(J * I, -K);
        assert_eq!(K * J, -I);
        assert_eq!(I * K, -J);
        for u in [I, J, K] {
            assert_eq!(u * u, -one);
        }
        assert_eq!(I * J * K, -one);
    }

    #[test]
    fn mul_examples() {
        let q = Quaternion::new(2.0, 3.0, -1.0, 0.5);
        assert_eq!(q * Quaternion::ONE, q);
        let p = Quaternion::new(1.0, 1.0, 0.0, 0.0) * Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(p, Quaternion::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(
            Quaternion::new(1.0, 1.0, 1.0, 1.0).conj(),
            Quaternion::new(1.0, -1.0, -1.0, -1.0)
        );
        // (ij)* = j* i* = (−j)(−i) = ji = −k
        assert_eq!((I * J).conj(), -K);
        assert_eq!((I * J).conj(), J.conj() * I.conj());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Quaternion::new(1.0, 1.0, 1.0, 1.0).norm(), 2.0);
        assert_eq!(Quaternion::new(20.0, 0.0, 4.0, 8.0).norm(), libm::sqrt(480.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Quaternion::real(2.0).inverse().unwrap(), Quaternion::real(0.5));
        let q = Quaternion::new(20.0, 0.0, 4.0, 8.0);
        let expected = Quaternion::new(20.0, 0.0, -4.0, -8.0) / 480.0;
        assert!(close(q.inverse().unwrap(), expected));
        assert_eq!(I.inverse().unwrap(), -I);
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn exponentials() {
        assert_eq!(Quaternion::exp_i(0.0), Quaternion::ONE);
        assert!(close(Quaternion::exp_i(FRAC_PI_2), I));
        assert!(close(Quaternion::exp_j(FRAC_PI_2), J));
        let h = SQRT_2 / 2.0;
        assert!(close(Quaternion::exp_i(-FRAC_PI_4), Quaternion::new(h, -h, 0.0, 0.0)));
    }

    #[test]
    fn parts_and_products() {
        assert_eq!(Quaternion::new(3.0, 1.0, 0.0, 0.0).sc(), 3.0);
        assert_eq!(I.cross(J), K);
        let a = Quaternion::new(0.0, 1.0, 2.0, 0.0);
        let b = Quaternion::new(0.0, 2.0, 1.0, 0.0);
        assert_eq!(a.dot(b), 4.0);
    }

    #[test]
    fn printed_non_cyclic_trace_identity_fails() {
        // Sc(rpq) = Sc(prq) swaps adjacent factors; r = i, p = j, q = k refutes it.
        assert_eq!((I * J * K).sc(), -1.0);
        assert_eq!((J * I * K).sc(), 1.0);
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0..10.0f64).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn product_from_scalar_vector_parts(p in quat(), q in quat()) {
            let rebuilt = Quaternion::real(p.sc() * q.sc() - p.dot(q))
                + q.vec() * p.sc()
                + p.vec() * q.sc()
                + p.vec().cross(q.vec());
            prop_assert!(close(p * q, rebuilt));
        }

        #[test]
        fn sc_plus_vec_reconstructs(q in quat()) {
            prop_assert_eq!(Quaternion::real(q.sc()) + q.vec(), q);
        }

        #[test]
        fn conj_is_anti_homomorphism(p in quat(), q in quat()) {
            prop_assert!(close((q * p).conj(), p.conj() * q.conj()));
            prop_assert_eq!(q.conj().conj(), q);
        }

        #[test]
        fn norm_properties(p in quat(), q in quat()) {
            prop_assert!(((q * p).norm() - q.norm() * p.norm()).abs() <= 1e-12 * q.norm() * p.norm());
            prop_assert!(q.sc().abs() <= q.norm());
            prop_assert!(((q * q).norm() - q.norm_sqr()).abs() <= 1e-12 * q.norm_sqr());
            prop_assert!((q + p).norm() <= q.norm() + p.norm() + 1e-12);
            prop_assert_eq!(q.norm_sqr(), q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3);
        }

        #[test]
        fn cyclic_scalar_trace(p in quat(), q in quat(), r in quat()) {
            let scale = p.norm() * q.norm() * r.norm();
            let a = (r * p * q).sc();
            prop_assert!((a - (q * r * p).sc()).abs() <= 1e-12 * scale);
            prop_assert!((a - (p * q * r).sc()).abs() <= 1e-12 * scale);
        }

        #[test]
        fn associativity(p in quat(), q in quat(), r in quat()) {
            let scale = p.norm() * q.norm() * r.norm();
            prop_assert!(((p * q) * r - p * (q * r)).norm() <= 1e-12 * scale.max(1.0));
        }

        #[test]
        fn inverse_identity(q in quat()) {
            prop_assume!(q.norm() > 1e-6);
            let inv = q.inverse().unwrap();
            prop_assert!((q * inv - Quaternion::ONE).norm() < 1e-12);
            prop_assert!((inv * q - Quaternion::ONE).norm() < 1e-12);
        }

        #[test]
        fn exp_i_group_law(a in -10.0..10.0f64, b in -10.0..10.0f64) {
            let lhs = Quaternion::exp_i(a) * Quaternion::exp_i(b);
            prop_assert!(close(lhs, Quaternion::exp_i(a + b)));
            prop_assert!((Quaternion::exp_i(a).norm() - 1.0).abs() < 1e-15);
            prop_assert!((Quaternion::exp_j(a).norm() - 1.0).abs() < 1e-15);
        }
    }
}
