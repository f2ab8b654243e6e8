use alloc::vec::Vec;
use core::fmt;

use crate::field::{GridSpec, SampledField};
use crate::quaternion::Quaternion;

/// Default tolerance on a component integral equal to 1.
pub const INTEGRAL_TOL: f64 = 1e-6;
/// A component counts as nonnegative down to this value.
pub const NEGATIVITY_TOL: f64 = 1e-12;

/// Which reading of the density conditions to enforce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Strictness {
    /// Every one of the four components is a real PDF: nonnegative with
    /// unit integral.
    Strict,
    /// Every component nonnegative; the total quaternion mass is recorded
    /// but not required to be 1 (it must be nonzero).
    #[default]
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Component {
    Scalar,
    I,
    J,
    K,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::Scalar, Component::I, Component::J, Component::K];

    pub fn of(self, q: Quaternion) -> f64 {
        match self {
            Component::Scalar => q.q0,
            Component::I => q.q1,
            Component::J => q.q2,
            Component::K => q.q3,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Scalar => "scalar",
            Component::I => "i",
            Component::J => "j",
            Component::K => "k",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComponentStats {
    pub component: Component,
    pub integral: f64,
    pub min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Violation {
    Negative { component: Component, min: f64 },
    NotNormalized { component: Component, integral: f64 },
    ZeroMass,
}

/// Both verdicts plus the numbers behind them.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QpdfReport {
    pub components: [ComponentStats; 4],
    pub total: Quaternion,
    pub integral_tol: f64,
    pub strict_violations: Vec<Violation>,
    pub relaxed_violations: Vec<Violation>,
}

impl QpdfReport {
    pub fn assess(field: &SampledField, integral_tol: f64) -> Self {
        let total = field.integrate();
        let components = Component::ALL.map(|component| ComponentStats {
            component,
            integral: component.of(total),
            min: field.values().iter().map(|&q| component.of(q)).fold(f64::INFINITY, f64::min),
        });
        let negatives: Vec<Violation> = components
            .iter()
            .filter(|s| s.min < -NEGATIVITY_TOL)
            .map(|s| Violation::Negative { component: s.component, min: s.min })
            .collect();
        let mut strict = negatives.clone();
        strict.extend(
            components
                .iter()
                .filter(|s| (s.integral - 1.0).abs() > integral_tol)
                .map(|s| Violation::NotNormalized { component: s.component, integral: s.integral }),
        );
        let mut relaxed = negatives;
        if total.norm() <= integral_tol {
            relaxed.push(Violation::ZeroMass);
        }
        Self { components, total, integral_tol, strict_violations: strict, relaxed_violations: relaxed }
    }

    pub fn strict_ok(&self) -> bool {
        self.strict_violations.is_empty()
    }

    pub fn relaxed_ok(&self) -> bool {
        self.relaxed_violations.is_empty()
    }

    pub fn accepts(&self, strictness: Strictness) -> bool {
        match strictness {
            Strictness::Strict => self.strict_ok(),
            Strictness::Relaxed => self.relaxed_ok(),
        }
    }
}

/// A sampled quaternion density and its validation report.
///
/// [`Qpdf::assess`] always succeeds, so densities that break the rules
/// (several worked examples do) can still be integrated; check
/// [`Qpdf::report`] or go through [`validate_qpdf`] to enforce them.
#[derive(Debug, Clone, PartialEq)]
pub struct Qpdf {
    field: SampledField,
    report: QpdfReport,
}

impl Qpdf {
    pub fn assess(field: SampledField) -> Self {
        Self::assess_with_tol(field, INTEGRAL_TOL)
    }

    pub fn assess_with_tol(field: SampledField, integral_tol: f64) -> Self {
        let report = QpdfReport::assess(&field, integral_tol);
        Self { field, report }
    }

    pub fn field(&self) -> &SampledField {
        &self.field
    }

    pub fn support(&self) -> &GridSpec {
        self.field.spec()
    }

    pub fn report(&self) -> &QpdfReport {
        &self.report
    }

    pub fn into_field(self) -> SampledField {
        self.field
    }

    /// True when every sample has a zero vector part.
    pub fn is_real(&self) -> bool {
        self.field.values().iter().all(|q| q.q1 == 0.0 && q.q2 == 0.0 && q.q3 == 0.0)
    }
}

/// Accepts `field` as a density under `strictness`, or returns the report.
#[allow(clippy::result_large_err)]
pub fn validate_qpdf(field: SampledField, strictness: Strictness) -> Result<Qpdf, QpdfReport> {
    let qpdf = Qpdf::assess(field);
    if qpdf.report.accepts(strictness) {
        Ok(qpdf)
    } else {
        Err(qpdf.report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::field::GridSpec;

    #[test]
    fn uniform_real_density_relaxed_only() {
        let spec = GridSpec::square(0.0, 2.0, 21).unwrap();
        let f = SampledField::sample(spec, |_, _| Quaternion::real(0.25)).unwrap();
        let report = validate_qpdf(f.clone(), Strictness::Strict).unwrap_err();
        assert!(!report.strict_ok());
        assert!(report.relaxed_ok());
        assert!(report
            .strict_violations
            .contains(&Violation::NotNormalized { component: Component::I, integral: 0.0 }));
        assert!(validate_qpdf(f, Strictness::Relaxed).is_ok());
    }

    #[test]
    fn example1_density_is_rejected() {
        let f = fixtures::example1_numerator(GridSpec::square(0.0, 2.0, 129).unwrap()).unwrap();
        let report = validate_qpdf(f, Strictness::Relaxed).unwrap_err();
        assert!(report.relaxed_violations.iter().any(|v| matches!(
            v,
            Violation::Negative { component: Component::I, .. }
        )));
        assert!(report.components[1].integral.abs() < 1e-9);
        assert!((report.components[0].integral - 12.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_density_accepted() {
        let f = fixtures::gaussian_pdf(GridSpec::square(-8.0, 8.0, 129).unwrap(), 1.0, 1.0).unwrap();
        let q = validate_qpdf(f, Strictness::Relaxed).unwrap();
        assert!((q.report().total.q0 - 1.0).abs() < 1e-6);
        assert!(q.is_real());
    }

    #[test]
    fn zero_density_has_no_mass() {
        let f = SampledField::zeros(GridSpec::square(0.0, 1.0, 5).unwrap()).unwrap();
        let report = validate_qpdf(f, Strictness::Relaxed).unwrap_err();
        assert_eq!(report.relaxed_violations, alloc::vec![Violation::ZeroMass]);
    }
}
