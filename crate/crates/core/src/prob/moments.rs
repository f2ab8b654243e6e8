use crate::error::{Error, Result};
use crate::field::Rule;
use crate::prob::charfn::fourier_charfn_at;
use crate::prob::density::Qpdf;
use crate::quaternion::Quaternion;

/// Cancellation guard for [`fd_moment`].
pub const MIN_FD_STEP: f64 = 1e-5;

/// Real weight of an expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    X1,
    X2,
    X1X2,
    /// `x1^m · x2^n`.
    Monomial { m: u32, n: u32 },
}

impl Weight {
    pub fn eval(self, x1: f64, x2: f64) -> f64 {
        match self {
            Weight::X1 => x1,
            Weight::X2 => x2,
            Weight::X1X2 => x1 * x2,
            Weight::Monomial { m, n } => libm::pow(x1, m as f64) * libm::pow(x2, n as f64),
        }
    }
}

/// `∫ w(x) f(x) dx`, componentwise.
pub fn expectation(f: &Qpdf, weight: Weight) -> Quaternion {
    f.field().integrate_weighted(|x1, x2| weight.eval(x1, x2))
}

/// Side on which a quaternion normalizer divides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Quotient {
    /// `d⁻¹ · value`
    #[default]
    Left,
    /// `value · d⁻¹`
    Right,
}

/// Divides `value` by the quaternion `denominator` on the given side.
pub fn quotient(value: Quaternion, denominator: Quaternion, side: Quotient) -> Result<Quaternion> {
    let inv = denominator.inverse()?;
    Ok(match side {
        Quotient::Left => inv * value,
        Quotient::Right => value * inv,
    })
}

/// First and second moments with both covariance orders.
///
/// `cov_12 = E[X1X2] − E[X1]·E[X2]`, `cov_21 = E[X1X2] − E[X2]·E[X1]`,
/// `var_k = E[Xk²] − E[Xk]·E[Xk]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MomentReport {
    pub total: Quaternion,
    pub e_x1: Quaternion,
    pub e_x2: Quaternion,
    pub e_x1x2: Quaternion,
    pub e_x1_sq: Quaternion,
    pub e_x2_sq: Quaternion,
    pub var_x1: Quaternion,
    pub var_x2: Quaternion,
    pub cov_12: Quaternion,
    pub cov_21: Quaternion,
    pub n1: usize,
    pub n2: usize,
    pub rule: Rule,
}

impl MomentReport {
    /// `cov_12 − cov_21 = E[X2]E[X1] − E[X1]E[X2]`.
    pub fn asymmetry(&self) -> Quaternion {
        self.cov_12 - self.cov_21
    }
}

pub fn covariance(f: &Qpdf) -> MomentReport {
    let e_x1 = expectation(f, Weight::X1);
    let e_x2 = expectation(f, Weight::X2);
    let e_x1x2 = expectation(f, Weight::X1X2);
    let e_x1_sq = expectation(f, Weight::Monomial { m: 2, n: 0 });
    let e_x2_sq = expectation(f, Weight::Monomial { m: 0, n: 2 });
    let spec = f.support();
    MomentReport {
        total: f.field().integrate(),
        e_x1,
        e_x2,
        e_x1x2,
        e_x1_sq,
        e_x2_sq,
        var_x1: e_x1_sq - e_x1 * e_x1,
        var_x2: e_x2_sq - e_x2 * e_x2,
        cov_12: e_x1x2 - e_x1 * e_x2,
        cov_21: e_x1x2 - e_x2 * e_x1,
        n1: spec.n1,
        n2: spec.n2,
        rule: spec.rule,
    }
}

/// `E[X1^m X2^n]` from central differences of the Fourier-mode
/// characteristic function at the origin, for `m + n <= 2`.
///
/// Each `u`-derivative brings down `i·x1` on the left and each
/// `v`-derivative `x2·j` on the right, so the difference quotient `D` is
/// corrected to `(i⁻¹)^m · D · (j⁻¹)^n`.
pub fn fd_moment(f: &Qpdf, m: u32, n: u32, h: f64) -> Result<Quaternion> {
    if m + n > 2 {
        return Err(Error::UnsupportedOrder { m, n });
    }
    if h.is_nan() || h < MIN_FD_STEP {
        return Err(Error::StepTooSmall { h });
    }
    let nodes = [-h, 0.0, h];
    let grid = fourier_charfn_at(f.field(), &nodes, &nodes);
    let phi = |a: usize, b: usize| grid[a * 3 + b];
    let diff = match (m, n) {
        (0, 0) => phi(1, 1),
        (1, 0) => (phi(2, 1) - phi(0, 1)) / (2.0 * h),
        (0, 1) => (phi(1, 2) - phi(1, 0)) / (2.0 * h),
        (2, 0) => (phi(2, 1) - phi(1, 1) * 2.0 + phi(0, 1)) / (h * h),
        (0, 2) => (phi(1, 2) - phi(1, 1) * 2.0 + phi(1, 0)) / (h * h),
        (1, 1) => (phi(2, 2) - phi(2, 0) - phi(0, 2) + phi(0, 0)) / (4.0 * h * h),
        _ => unreachable!(),
    };
    let i_inv = -Quaternion::I;
    let j_inv = -Quaternion::J;
    let mut out = diff;
    for _ in 0..m {
        out = i_inv * out;
    }
    for _ in 0..n {
        out *= j_inv;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GridSpec, SampledField};
    use crate::fixtures;

    fn uniform(n: usize) -> Qpdf {
        Qpdf::assess(fixtures::uniform_pdf(GridSpec::square(0.0, 1.0, n).unwrap().with_rule(Rule::Simpson)).unwrap())
    }

    #[test]
    fn uniform_moments() {
        let f = uniform(33);
        assert!((expectation(&f, Weight::X1).q0 - 0.5).abs() < 1e-14);
        assert!((expectation(&f, Weight::X1X2).q0 - 0.25).abs() < 1e-14);
        let report = covariance(&f);
        assert!(report.cov_12.norm() < 1e-8);
        assert!(report.cov_21.norm() < 1e-8);
        assert!((report.var_x1.q0 - 1.0 / 12.0).abs() < 1e-8);
    }

    #[test]
    fn example1_numerator_moment() {
        let spec = GridSpec::square(0.0, 2.0, 513).unwrap().with_rule(Rule::Simpson);
        let f = Qpdf::assess(fixtures::example1_numerator(spec).unwrap());
        let e = expectation(&f, Weight::X1);
        let expected = Quaternion::new(44.0 / 3.0, 8.0 / 3.0, 16.0 / 3.0, 12.0);
        assert!((e - expected).norm() < 1e-6, "{e}");
    }

    #[test]
    fn quotient_sides() {
        let d = Quaternion::new(20.0, 0.0, 4.0, 8.0);
        let v = Quaternion::new(1.0, 2.0, 0.0, -1.0);
        let left = quotient(v, d, Quotient::Left).unwrap();
        let right = quotient(v, d, Quotient::Right).unwrap();
        assert!((d * left).approx_eq(v, 1e-14));
        assert!((right * d).approx_eq(v, 1e-14));
        assert!(!left.approx_eq(right, 1e-6));
        assert_eq!(quotient(v, Quaternion::ZERO, Quotient::Left), Err(Error::ZeroQuaternion));
    }

    #[test]
    fn covariance_asymmetry_is_a_commutator() {
        let spec = GridSpec::square(0.0, 2.0, 65).unwrap().with_rule(Rule::Simpson);
        let f = Qpdf::assess(fixtures::example1_density(spec).unwrap());
        let r = covariance(&f);
        let commutator = r.e_x2 * r.e_x1 - r.e_x1 * r.e_x2;
        assert!(commutator.norm() > 1e-3);
        assert!((r.asymmetry() - commutator).norm() < 1e-12);
    }

    #[test]
    fn real_scaling_of_covariance() {
        let spec = GridSpec::square(-6.0, 6.0, 97).unwrap();
        let base = fixtures::correlated_gaussian_pdf(spec, 1.0, 1.0, 0.5).unwrap();
        let a = 2.0;
        // density of (aX1, X2) sampled on the stretched grid
        let stretched = GridSpec::new(a * spec.x1_min, a * spec.x1_max, spec.x2_min, spec.x2_max, spec.n1, spec.n2).unwrap();
        let scaled = SampledField::new(stretched, base.values().iter().map(|&q| q / a).collect()).unwrap();
        let c0 = covariance(&Qpdf::assess(base)).cov_12;
        let c1 = covariance(&Qpdf::assess(scaled)).cov_12;
        assert!((c1 - c0 * a).norm() < 1e-9);
        assert!((c1 - c0 * (a * a)).norm() > 0.1);
    }

    #[test]
    fn fd_moment_uniform() {
        let f = uniform(129);
        let m10 = fd_moment(&f, 1, 0, 1e-3).unwrap();
        assert!((m10 - Quaternion::real(0.5)).norm() < 1e-5, "{m10}");
        let m11 = fd_moment(&f, 1, 1, 1e-3).unwrap();
        assert!((m11 - Quaternion::real(0.25)).norm() < 1e-4, "{m11}");
        let m01 = fd_moment(&f, 0, 1, 1e-3).unwrap();
        assert!((m01 - Quaternion::real(0.5)).norm() < 1e-5);
        let m20 = fd_moment(&f, 2, 0, 1e-3).unwrap();
        assert!((m20 - Quaternion::real(1.0 / 3.0)).norm() < 1e-5, "{m20}");
        let m00 = fd_moment(&f, 0, 0, 1e-3).unwrap();
        assert_eq!(m00, fourier_charfn_at(f.field(), &[0.0], &[0.0])[0]);
    }

    #[test]
    fn fd_moment_guards() {
        let f = uniform(9);
        assert_eq!(fd_moment(&f, 1, 0, 1e-6), Err(Error::StepTooSmall { h: 1e-6 }));
        assert_eq!(fd_moment(&f, 2, 1, 1e-3), Err(Error::UnsupportedOrder { m: 2, n: 1 }));
    }

    #[test]
    fn fd_moment_quaternion_density() {
        // Sandwich correction recovers quaternion-valued moments too.
        let spec = GridSpec::square(0.0, 1.0, 65).unwrap().with_rule(Rule::Simpson);
        let f = Qpdf::assess(fixtures::example2_density(spec).unwrap());
        for (m, n, w) in [(1, 0, Weight::X1), (0, 1, Weight::X2), (1, 1, Weight::X1X2)] {
            let fd = fd_moment(&f, m, n, 1e-3).unwrap();
            let direct = expectation(&f, w);
            assert!((fd - direct).norm() < 1e-6, "({m},{n}): {fd} vs {direct}");
        }
    }
}
