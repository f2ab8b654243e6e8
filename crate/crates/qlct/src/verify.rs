//! The verification ledger: every published claim the library can check,
//! what was claimed, what was measured, and whether they agree.
//!
//! Fixtures are generated in-process at fixed resolutions and the random
//! algebra check uses a fixed seed, so two runs print identical ledgers.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::{self, Write as _};

use qlct_core::fixtures;
use qlct_core::lct::{adjoint_kernel_i, inverse_params, kernel_i, kernel_j};
use qlct_core::prob::{
    charfn, charfn_properties, covariance, expectation, fd_moment, marginal_charfn, quotient, Axis, CharFnMode, Qpdf,
    Quotient, Strictness, Weight,
};
use qlct_core::transform::{self, convolution_identity, correlation_identity};
use qlct_core::{fourier_params, GridSpec, LctParams, Quaternion, Rule, SampledField, TransformParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

pub type CoreResult<T> = qlct_core::Result<T>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Reproduced,
    ReproducedWithDifferentConstant,
    NotReproduced,
    DiagnosticOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reproduced => "reproduced",
            Verdict::ReproducedWithDifferentConstant => "reproduced-with-different-constant",
            Verdict::NotReproduced => "not-reproduced",
            Verdict::DiagnosticOnly => "diagnostic-only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub id: &'static str,
    /// Acceptance criterion this claim gates, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub claimed: String,
    pub measured: String,
    pub verdict: Verdict,
    pub required: bool,
    /// Outcome of the claim's own numerical check, when it has one.
    pub check: Option<bool>,
}

impl Claim {
    fn required(id: &'static str, criterion: u8, claimed: String, measured: String, verdict: Verdict, ok: bool) -> Self {
        Self { id, criterion: Some(criterion), claimed, measured, verdict, required: true, check: Some(ok) }
    }

    fn diagnostic(id: &'static str, claimed: String, measured: String, verdict: Verdict, check: Option<bool>) -> Self {
        Self { id, criterion: None, claimed, measured, verdict, required: false, check }
    }

    pub fn failed(&self) -> bool {
        self.required && self.check != Some(true)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let check = match (self.check, self.required) {
            (Some(true), true) => "pass (required)",
            (Some(false), true) => "FAIL (required)",
            (Some(true), false) => "pass",
            (Some(false), false) => "fail",
            (None, _) => "n/a",
        };
        write!(f, "{}: {}; measured {}; claimed {}; check {}", self.id, self.verdict, self.measured, self.claimed, check)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ledger {
    pub claims: Vec<Claim>,
}

impl Ledger {
    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| c.failed()).collect()
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for claim in &self.claims {
            writeln!(out, "{claim}").expect("writing to a String");
        }
        let failures = self.failures();
        let required = self.claims.iter().filter(|c| c.required).count();
        writeln!(out, "summary: {} claims, {} required, {} required failing", self.claims.len(), required, failures.len())
            .expect("writing to a String");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes") + "\n"
    }
}

fn q(q: Quaternion) -> String {
    format!("[{:.9}, {:.9}, {:.9}, {:.9}]", q.q0, q.q1, q.q2, q.q3)
}

fn e(x: f64) -> String {
    format!("{x:.3e}")
}

fn max_component_delta(a: Quaternion, b: Quaternion) -> f64 {
    let d = (a - b).to_array();
    d.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn relative_l2(a: &SampledField, b: &SampledField) -> CoreResult<f64> {
    let diff: Vec<Quaternion> = a.values().iter().zip(b.values()).map(|(&x, &y)| x - y).collect();
    Ok(SampledField::new(*a.spec(), diff)?.l2_norm() / b.l2_norm())
}

pub fn run() -> CoreResult<Ledger> {
    let mut claims = Vec::new();
    example1(&mut claims)?;
    algebra(&mut claims);
    plancherel(&mut claims)?;
    roundtrip(&mut claims)?;
    inverse_kernel(&mut claims)?;
    convolution(&mut claims)?;
    charfn_claims(&mut claims)?;
    moments_from_derivatives(&mut claims)?;
    example2(&mut claims)?;
    covariance_claims(&mut claims)?;
    unimplemented_claims(&mut claims);
    Ok(Ledger { claims })
}

const EXAMPLE1_NUMERATOR_MOMENT: Quaternion = Quaternion::new(44.0 / 3.0, 8.0 / 3.0, 16.0 / 3.0, 12.0);

fn example1(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(0.0, 2.0, 513)?.with_rule(Rule::Simpson);
    let numerator = Qpdf::assess(fixtures::example1_numerator(spec)?);
    let moment = expectation(&numerator, Weight::X1);
    let delta = max_component_delta(moment, EXAMPLE1_NUMERATOR_MOMENT);
    let ok = delta < 1e-6;
    claims.push(Claim::required(
        "example1.E_X1_numerator",
        1,
        q(EXAMPLE1_NUMERATOR_MOMENT),
        format!("{} (max component delta {}, 513x513 nodes)", q(moment), e(delta)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let denominator = fixtures::EXAMPLE1_DENOMINATOR;
    let printed = quotient(EXAMPLE1_NUMERATOR_MOMENT, denominator, Quotient::Left)?;
    let left = quotient(moment, denominator, Quotient::Left)?;
    let right = quotient(moment, denominator, Quotient::Right)?;
    let delta = max_component_delta(left, printed);
    let ok = delta < 1e-6;
    claims.push(Claim::required(
        "example1.E_X1",
        1,
        format!("(20+4j+8k)^-1 (44/3 + 8/3 i + 16/3 j + 12k) = {}", q(printed)),
        format!("left quotient {} (delta {}); right quotient {}", q(left), e(delta), q(right)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let total = numerator.report().total;
    let expected = Quaternion::new(12.0, 0.0, 4.0, 8.0);
    let delta = max_component_delta(total, expected);
    let mismatch = (total - denominator).norm();
    claims.push(Claim::required(
        "example1.normalization",
        2,
        format!("normalizer {}", q(denominator)),
        format!("integral of numerator {} (delta to [12, 0, 4, 8] {}); |integral - normalizer| = {}", q(total), e(delta), e(mismatch)),
        Verdict::NotReproduced,
        delta <= 1e-6 && mismatch > 1.0,
    ));

    let density = Qpdf::assess(fixtures::example1_density(spec)?);
    let report = density.report();
    claims.push(Claim::diagnostic(
        "example1.density_conditions",
        "every component a real probability density".into(),
        format!(
            "strict {}, relaxed {}; component minima {}",
            report.accepts(Strictness::Strict),
            report.accepts(Strictness::Relaxed),
            report.components.iter().map(|s| format!("{}={:.6}", s.component, s.min)).collect::<Vec<_>>().join(" ")
        ),
        Verdict::NotReproduced,
        None,
    ));
    Ok(())
}

fn algebra(claims: &mut Vec<Claim>) {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut draw = || {
        Quaternion::new(
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
        )
    };
    let (mut norm, mut conj, mut assoc, mut inv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    const TRIPLES: usize = 10_000;
    for _ in 0..TRIPLES {
        let (a, b, c) = (draw(), draw(), draw());
        let scale = a.norm() * b.norm();
        norm = norm.max(((a * b).norm() - scale).abs() / scale);
        conj = conj.max(((a * b).conj() - b.conj() * a.conj()).norm() / scale);
        assoc = assoc.max(((a * b) * c - a * (b * c)).norm() / (scale * c.norm()));
        let ai = a.inverse().expect("random quaternions are nonzero");
        inv = inv.max((a * ai - Quaternion::ONE).norm().max((ai * a - Quaternion::ONE).norm()));
    }
    let worst = norm.max(conj).max(assoc).max(inv);
    let ok = worst <= 1e-12;
    claims.push(Claim::required(
        "quaternion.algebra",
        3,
        "|pq| = |p||q|, conj(pq) = conj(q)conj(p), (pq)r = p(qr), p p^-1 = 1".into(),
        format!("{TRIPLES} random triples: relative errors norm {}, conj {}, assoc {}, inverse {}", e(norm), e(conj), e(assoc), e(inv)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));
}

fn shear() -> TransformParams {
    TransformParams::both(LctParams { a: 1.0, b: 0.5, c: 0.0, d: 1.0 }).expect("shear is unimodular")
}

fn plancherel(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(-8.0, 8.0, 129)?;
    let gaussian = fixtures::gaussian(spec)?;
    let bump = fixtures::quaternion_bump(spec)?;
    let r1 = transform::parseval_ratio(&gaussian, fourier_params(), spec)?;
    let r2 = transform::parseval_ratio(&bump, fourier_params(), spec)?;
    let claimed = 4.0 * PI * PI;
    let consistent = (r1 - r2).abs() <= 1e-3;
    let verdict = match (consistent, (r1 - claimed).abs() <= 1e-3 * claimed) {
        (false, _) => Verdict::NotReproduced,
        (true, true) => Verdict::Reproduced,
        (true, false) => Verdict::ReproducedWithDifferentConstant,
    };
    claims.push(Claim::required(
        "theorem1.parseval",
        5,
        format!("constant (2π)² = {claimed:.6}"),
        format!("constant {r1:.1} (gaussian {r1:.9}, quaternion bump {r2:.9})"),
        verdict,
        verdict == Verdict::ReproducedWithDifferentConstant,
    ));

    let wide = GridSpec::square(-10.0, 10.0, 129)?;
    let r3 = transform::parseval_ratio(&gaussian, shear(), wide)?;
    claims.push(Claim::diagnostic(
        "theorem1.parseval_shear",
        format!("constant (2π)² = {claimed:.6}"),
        format!("constant {r3:.9} with shear parameters (1, 0.5, 0, 1)"),
        Verdict::ReproducedWithDifferentConstant,
        Some((r3 - 1.0).abs() <= 1e-3),
    ));
    Ok(())
}

fn roundtrip(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(-8.0, 8.0, 257)?;
    let gaussian = fixtures::gaussian(spec)?;
    for (id, params, freq, tol) in [
        ("transform.roundtrip_fourier", fourier_params(), spec, 1e-3),
        ("transform.roundtrip_shear", shear(), GridSpec::square(-10.0, 10.0, 257)?, 1e-2),
    ] {
        let spectrum = transform::forward(&gaussian, params, freq)?;
        let back = transform::inverse(&spectrum, spec)?;
        let err = relative_l2(&back, &gaussian)?;
        let ok = err <= tol;
        claims.push(Claim::required(
            id,
            4,
            "the inverse transform recovers f".into(),
            format!("relative L2 roundtrip error {} at 257x257 (tolerance {})", e(err), e(tol)),
            if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
            ok,
        ));
    }
    Ok(())
}

/// One-axis roundtrip comparing the printed inverse kernel (unit `−i`,
/// matrix `A⁻¹`) with the adjoint kernel.
fn inverse_kernel(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let p = LctParams::fourier();
    let spec = GridSpec::square(-8.0, 8.0, 257)?;
    let (xs, w) = (spec.x1_nodes(), spec.weights1());
    // off-centre, so a reflected result does not pass
    let f: Vec<f64> = xs.iter().map(|x| (-0.5 * (x - 0.7) * (x - 0.7)).exp()).collect();
    let mut spectrum = Vec::with_capacity(xs.len());
    for &u in &xs {
        let mut acc = Quaternion::ZERO;
        for ((&x, &wx), &fx) in xs.iter().zip(&w).zip(&f) {
            acc += kernel_i(p, x, u)? * (wx * fx);
        }
        spectrum.push(acc);
    }
    let roundtrip_error = |kernel: &dyn Fn(f64, f64) -> CoreResult<Quaternion>| -> CoreResult<f64> {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&x, &wx), &fx) in xs.iter().zip(&w).zip(&f) {
            let mut acc = Quaternion::ZERO;
            for ((&u, &wu), &s) in xs.iter().zip(&w).zip(&spectrum) {
                acc += kernel(u, x)? * s * wu;
            }
            num += wx * (acc - Quaternion::real(fx)).norm_sqr();
            den += wx * fx * fx;
        }
        Ok((num / den).sqrt())
    };
    let printed = roundtrip_error(&|u, x| Ok(kernel_i(inverse_params(p), u, x)?.conj()))?;
    let adjoint = roundtrip_error(&|u, x| adjoint_kernel_i(p, u, x))?;
    claims.push(Claim::diagnostic(
        "definition2.inverse_kernel",
        "kernel with unit -i and matrix A^-1 inverts the transform".into(),
        format!("one-axis relative L2 roundtrip error: printed kernel {}, adjoint kernel {}", e(printed), e(adjoint)),
        if printed <= 1e-3 { Verdict::Reproduced } else { Verdict::NotReproduced },
        Some(adjoint <= 1e-3),
    ));
    Ok(())
}

fn convolution(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(-6.0, 6.0, 129)?;
    let freq = GridSpec::square(-5.0, 5.0, 65)?;
    let (f, g) = fixtures::structured_pair(spec)?;
    let params = fourier_params();
    let origin = kernel_i(params.a1, 0.0, 0.0)? * kernel_j(params.a2, 0.0, 0.0)?;
    // 2π · conj(K_i(0,0) K_j(0,0)) = e^{jπ/4} e^{iπ/4}
    let middle = origin.conj() * (2.0 * PI);
    let trailing = Quaternion::exp_i(-FRAC_PI_4) * Quaternion::exp_j(-FRAC_PI_4);

    let conv = convolution_identity(&f, &g, params, freq)?;
    let literal = conv.residual(2.0 * PI)?;
    let compensated = conv.residual_by(|l, r| l * middle * r * (2.0 * PI))?;
    let ok = literal <= 1e-2;
    claims.push(Claim::required(
        "theorem2.convolution_structured",
        6,
        "T{f*g} = 2π T{f} T{g} for the structured commuting pair".into(),
        format!("relative residual {} at 129x129 (tolerance 1.000e-2)", e(literal)),
        if ok { Verdict::ReproducedWithDifferentConstant } else { Verdict::NotReproduced },
        ok,
    ));
    claims.push(Claim::diagnostic(
        "theorem2.convolution_phase_compensated",
        "T{f*g} = 2π T{f} T{g}".into(),
        format!("residual of T{{f*g}} = 2π T{{f}} e^{{jπ/4}}e^{{iπ/4}} T{{g}}: {}", e(compensated)),
        Verdict::DiagnosticOnly,
        Some(compensated <= 1e-2),
    ));

    let corr = correlation_identity(&f, &g, params, freq)?;
    let literal = corr.residual(2.0 * PI)?;
    let compensated = corr.residual_by(|l, r| l * r * trailing * (2.0 * PI))?;
    let ok = literal <= 1e-2;
    claims.push(Claim::required(
        "theorem3.correlation_structured",
        6,
        "T{f∘g} = 2π T{f} conj(T{g}) for the structured commuting pair".into(),
        format!("relative residual {} at 129x129 (tolerance 1.000e-2)", e(literal)),
        if ok { Verdict::ReproducedWithDifferentConstant } else { Verdict::NotReproduced },
        ok,
    ));
    claims.push(Claim::diagnostic(
        "theorem3.correlation_phase_compensated",
        "T{f∘g} = 2π T{f} conj(T{g})".into(),
        format!("residual of T{{f∘g}} = 2π T{{f}} conj(T{{g}}) e^{{-iπ/4}}e^{{-jπ/4}}: {}", e(compensated)),
        Verdict::DiagnosticOnly,
        Some(compensated <= 1e-2),
    ));

    let small = GridSpec::square(-6.0, 6.0, 65)?;
    let (f, g) = fixtures::generic_pair(small)?;
    let conv = convolution_identity(&f, &g, shear(), freq)?;
    let corr = correlation_identity(&f, &g, shear(), freq)?;
    let (c1, c2) = (conv.residual(1.0)?, conv.residual(2.0 * PI)?);
    let (r1, r2) = (corr.residual(1.0)?, corr.residual(2.0 * PI)?);
    claims.push(Claim::diagnostic(
        "theorem2.convolution_generic",
        "T{f*g} = T{f} T{g}".into(),
        format!("shear parameters, quaternion pair at 65x65: residual {} (unscaled), {} (2π-scaled)", e(c1), e(c2)),
        Verdict::DiagnosticOnly,
        Some(c1.is_finite() && c2.is_finite()),
    ));
    claims.push(Claim::diagnostic(
        "theorem3.correlation_generic",
        "T{f∘g} = T{f} conj(T{g})".into(),
        format!("shear parameters, quaternion pair at 65x65: residual {} (unscaled), {} (2π-scaled)", e(r1), e(r2)),
        Verdict::DiagnosticOnly,
        Some(r1.is_finite() && r2.is_finite()),
    ));
    Ok(())
}

fn charfn_claims(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let fourier = CharFnMode::FourierUnnormalized;
    let gaussian = Qpdf::assess(fixtures::gaussian_pdf(GridSpec::square(-8.0, 8.0, 129)?, 1.0, 1.0)?);
    let uniform = Qpdf::assess(fixtures::uniform_pdf(GridSpec::square(0.0, 1.0, 65)?)?);
    let freq = GridSpec::square(-6.0, 6.0, 25)?;
    let g_cf = charfn(&gaussian, fourier, None, freq)?;
    let u_cf = charfn(&uniform, fourier, None, freq)?;
    let g = charfn_properties(&g_cf, &gaussian)?;
    let u = charfn_properties(&u_cf, &uniform)?;

    let worst = (g.origin - Quaternion::ONE).norm().max((u.origin - Quaternion::ONE).norm());
    let ok = worst <= 1e-6;
    claims.push(Claim::required(
        "property1.normalization",
        7,
        "φ(0,0) = 1".into(),
        format!("gaussian {}, uniform {} (max deviation {})", q(g.origin), q(u.origin), e(worst)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let max_abs = g.max_abs.max(u.max_abs);
    let ok = max_abs <= 1.0 + 1e-9;
    claims.push(Claim::required(
        "theorem8.bound",
        7,
        "|φ(u,v)| <= 1".into(),
        format!("max |φ| gaussian {:.12}, uniform {:.12}", g.max_abs, u.max_abs),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let four = Qpdf::assess(gaussian.field().map(|_, _, v| Quaternion::new(v.q0, v.q0, v.q0, v.q0))?);
    let four_cf = charfn(&four, fourier, None, freq)?;
    let four_report = charfn_properties(&four_cf, &four)?;
    claims.push(Claim::diagnostic(
        "theorem8.quaternion_density",
        "|φ(u,v)| <= 1".into(),
        format!("all four components gaussian: max |φ| {:.9}, bound ∫|f| = {:.9}", four_report.max_abs, four_report.bound),
        Verdict::NotReproduced,
        Some(four_report.bounded(1e-9)),
    ));

    let parity = u.parity_error.unwrap_or(f64::INFINITY).max(g.parity_error.unwrap_or(f64::INFINITY));
    let ok = parity <= 1e-8;
    claims.push(Claim::required(
        "property3.parity",
        7,
        "scalar and k parts even, i and j parts odd under (u,v) -> (-u,-v)".into(),
        format!("max deviation from φ(-u,-v) = -k φ(u,v) k: {}", e(parity)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));
    let conj = u.conj_parity_error.unwrap_or(f64::NAN);
    claims.push(Claim::diagnostic(
        "property3.conjugate_form",
        "φ(-u,-v) = -k conj(φ(u,v)) k".into(),
        format!("max deviation for the uniform density: {}", e(conj)),
        if conj <= 1e-8 { Verdict::Reproduced } else { Verdict::NotReproduced },
        None,
    ));

    let separable = Qpdf::assess(fixtures::gaussian_pdf(GridSpec::square(-8.0, 8.0, 129)?, 1.0, 0.5)?);
    let sep_freq = GridSpec::square(-3.0, 3.0, 13)?;
    let cf = charfn(&separable, fourier, None, sep_freq)?;
    let phi1 = marginal_charfn(&separable, Axis::X1, &sep_freq.x1_nodes());
    let phi2 = marginal_charfn(&separable, Axis::X2, &sep_freq.x2_nodes());
    let mut worst = 0.0f64;
    for (r, &a) in phi1.iter().enumerate() {
        for (c, &b) in phi2.iter().enumerate() {
            worst = worst.max((cf.field().get(r, c) - a * b).norm());
        }
    }
    let ok = worst <= 1e-6;
    claims.push(Claim::required(
        "theorem5.factorization",
        7,
        "φ(u,v) = φ1(u) φ2(v) for independent components".into(),
        format!("max node error {} (real marginals, σ = 1, 0.5)", e(worst)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let c = g.continuity;
    claims.push(Claim::diagnostic(
        "theorem4.continuity",
        "φ is uniformly continuous".into(),
        format!(
            "max neighbour jump u {} (bound {}), v {} (bound {}) at step {:.3}",
            e(c.max_jump_u),
            e(c.bound_u.unwrap_or(f64::NAN)),
            e(c.max_jump_v),
            e(c.bound_v.unwrap_or(f64::NAN)),
            c.step_u
        ),
        Verdict::Reproduced,
        c.holds(),
    ));

    let spec = GridSpec::square(-8.0, 8.0, 129)?;
    let cf = charfn(&gaussian, fourier, None, spec)?;
    let back = qlct_core::prob::invert_charfn(&cf, spec)?;
    let err = relative_l2(&back, gaussian.field())?;
    claims.push(Claim::diagnostic(
        "property5.inversion",
        "f = (2π)^-2 ∫ e^{-iux1} φ e^{-jvx2} du dv".into(),
        format!("gaussian relative L2 roundtrip error {} at 129x129", e(err)),
        if err <= 1e-3 { Verdict::Reproduced } else { Verdict::NotReproduced },
        Some(err <= 1e-3),
    ));
    Ok(())
}

fn moments_from_derivatives(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(0.0, 1.0, 129)?.with_rule(Rule::Simpson);
    let uniform = Qpdf::assess(fixtures::uniform_pdf(spec)?);
    let m10 = fd_moment(&uniform, 1, 0, 1e-3)?;
    let m11 = fd_moment(&uniform, 1, 1, 1e-3)?;
    let e10 = (m10 - Quaternion::real(0.5)).norm();
    let e11 = (m11 - Quaternion::real(0.25)).norm();
    let direct = expectation(&uniform, Weight::X1);
    let coarse = (fd_moment(&uniform, 1, 0, 2e-3)? - direct).norm();
    let fine = (fd_moment(&uniform, 1, 0, 1e-3)? - direct).norm();
    let ratio = coarse / fine;
    let ok = e10 <= 1e-5 && e11 <= 1e-4 && ratio >= 3.5;
    claims.push(Claim::required(
        "property6.moments",
        8,
        "E[X1^m X2^n] from derivatives of φ at the origin".into(),
        format!(
            "uniform: (1,0) {} (error {}), (1,1) {} (error {}), error ratio h=2e-3 / h=1e-3 {:.3}",
            q(m10),
            e(e10),
            q(m11),
            e(e11),
            ratio
        ),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));
    Ok(())
}

/// `∫₀¹ x e^{−iux} dx = (e^{−iu}(1 + iu) − 1)/u²`, as `(re, im)`.
pub fn first_moment_integral(u: f64) -> (f64, f64) {
    let (s, c) = u.sin_cos();
    ((c + u * s - 1.0) / (u * u), (u * c - s) / (u * u))
}

/// `∫₀¹ e^{−iux} dx = (1 − e^{−iu})/(iu)`, as `(re, im)`.
pub fn zeroth_moment_integral(u: f64) -> (f64, f64) {
    let (s, c) = u.sin_cos();
    (s / u, (c - 1.0) / u)
}

/// Closed form of the LCT-mode characteristic function of `x1 + j x2` on
/// the unit square with Fourier parameters, `u, v != 0`.
pub fn unit_square_oracle(u: f64, v: f64) -> Quaternion {
    let amp = 1.0 / (2.0 * PI).sqrt();
    let ci = Quaternion::exp_i(-FRAC_PI_4) * amp;
    let cj = Quaternion::exp_j(-FRAC_PI_4) * amp;
    let as_i = |(re, im): (f64, f64)| Quaternion::new(re, im, 0.0, 0.0);
    let as_j = |(re, im): (f64, f64)| Quaternion::new(re, 0.0, im, 0.0);
    let x1_term = as_i(first_moment_integral(u)) * as_j(zeroth_moment_integral(v));
    let x2_term = as_i(zeroth_moment_integral(u)) * Quaternion::J * as_j(first_moment_integral(v));
    ci * (x1_term + x2_term) * cj
}

fn example2(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(0.0, 1.0, 513)?.with_rule(Rule::Simpson);
    let density = Qpdf::assess(fixtures::example2_density(spec)?);
    let freq = GridSpec::square(-2.5, 2.5, 6)?;
    let cf = charfn(&density, CharFnMode::Lct, Some(fourier_params()), freq)?;
    let mut worst = 0.0f64;
    for r in 0..freq.n1 {
        for c in 0..freq.n2 {
            worst = worst.max((cf.field().get(r, c) - unit_square_oracle(freq.x1(r), freq.x2(c))).norm());
        }
    }
    let ok = worst <= 1e-6;
    claims.push(Claim::required(
        "example2.charfn",
        9,
        "φ built from (1 - e^{-iu} + iu)/u² without the j x2 contribution".into(),
        format!("max node error against the closed form with (e^{{-iu}}(1+iu)-1)/u² and the j x2 term: {}", e(worst)),
        Verdict::NotReproduced,
        ok,
    ));

    let (ore, oim) = first_moment_integral(1.0);
    let (s, c) = 1.0f64.sin_cos();
    // (1 − e^{−iu} + iu)/u² at u = 1
    let (pre, pim) = (1.0 - c, s + 1.0);
    claims.push(Claim::diagnostic(
        "example2.moment_integral",
        format!("(1 - e^{{-iu}} + iu)/u², at u = 1: {pre:.6} + {pim:.6}i"),
        format!("oracle (e^{{-iu}}(1+iu)-1)/u², at u = 1: {ore:.6} {oim:+.6}i"),
        Verdict::NotReproduced,
        Some(((ore - pre).powi(2) + (oim - pim).powi(2)).sqrt() > 1e-3),
    ));

    let k = kernel_i(LctParams::fourier(), 1.0, 1.0)?;
    let printed = Quaternion::exp_i(-1.0) * (1.0 / (2.0 * PI).sqrt());
    let phase = (printed.conj() * k).q1.atan2((printed.conj() * k).q0);
    claims.push(Claim::diagnostic(
        "example2.kernel_phase",
        "Fourier-parameter kernel (2π)^-1/2 e^{-ix1u}".into(),
        format!("kernel keeps the constant phase: ratio to the printed kernel is e^{{i·{phase:.6}}} (-π/4 = {:.6})", -FRAC_PI_4),
        Verdict::NotReproduced,
        Some((phase + FRAC_PI_4).abs() < 1e-12),
    ));

    let with_x2 = unit_square_oracle(1.0, 1.0);
    let x1_only = {
        let amp = 1.0 / (2.0 * PI).sqrt();
        let ci = Quaternion::exp_i(-FRAC_PI_4) * amp;
        let cj = Quaternion::exp_j(-FRAC_PI_4) * amp;
        let (a, b) = first_moment_integral(1.0);
        let (c, d) = zeroth_moment_integral(1.0);
        ci * Quaternion::new(a, b, 0.0, 0.0) * Quaternion::new(c, 0.0, d, 0.0) * cj
    };
    claims.push(Claim::diagnostic(
        "example2.x2_term",
        "final expression omits the j x2 contribution".into(),
        format!("|j x2 contribution| at (1, 1) = {:.6} of |φ| = {:.6}", (with_x2 - x1_only).norm(), with_x2.norm()),
        Verdict::NotReproduced,
        None,
    ));
    Ok(())
}

fn covariance_claims(claims: &mut Vec<Claim>) -> CoreResult<()> {
    let spec = GridSpec::square(0.0, 1.0, 33)?.with_rule(Rule::Simpson);
    let uniform = covariance(&Qpdf::assess(fixtures::uniform_pdf(spec)?));
    let cov = uniform.cov_12.norm().max(uniform.cov_21.norm());
    let var = (uniform.var_x1 - Quaternion::real(1.0 / 12.0)).norm().max((uniform.var_x2 - Quaternion::real(1.0 / 12.0)).norm());
    let ok = cov <= 1e-8 && var <= 1e-8;
    claims.push(Claim::required(
        "definition7.uniform",
        10,
        "independent uniforms: Cov = 0, Var = 1/12".into(),
        format!("max |Cov| {}, max |Var - 1/12| {}", e(cov), e(var)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let spec = GridSpec::square(0.0, 2.0, 129)?.with_rule(Rule::Simpson);
    let r = covariance(&Qpdf::assess(fixtures::example1_density(spec)?));
    let commutator = r.e_x2 * r.e_x1 - r.e_x1 * r.e_x2;
    let err = (r.asymmetry() - commutator).norm();
    let ok = err <= 1e-8 && commutator.norm() > 1e-6;
    claims.push(Claim::required(
        "definition7.asymmetry",
        10,
        "Cov(X1,X2) != Cov(X2,X1)".into(),
        format!("cov_12 - cov_21 = {}, commutator E[X2]E[X1] - E[X1]E[X2] = {} (error {})", q(r.asymmetry()), q(commutator), e(err)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let spec = GridSpec::square(-6.0, 6.0, 97)?;
    let base = fixtures::correlated_gaussian_pdf(spec, 1.0, 1.0, 0.5)?;
    let shifted = base.clone().with_spec(spec.shifted(1.5, 0.0))?;
    let c0 = covariance(&Qpdf::assess(base.clone()));
    let c1 = covariance(&Qpdf::assess(shifted));
    let err = (c1.cov_12 - c0.cov_12).norm().max((c1.cov_21 - c0.cov_21).norm());
    let ok = err <= 1e-6;
    claims.push(Claim::required(
        "property4.covariance_shift",
        10,
        "Cov(X + b, Y) = Cov(X, Y)".into(),
        format!("shift b = 1.5: cov_12 {} -> {} (change {})", q(c0.cov_12), q(c1.cov_12), e(err)),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        ok,
    ));

    let narrow = GridSpec::new(0.7, 0.7 + 1e-7, -1.0, 1.0, 5, 65)?;
    let constant = covariance(&Qpdf::assess(fixtures::uniform_pdf(narrow)?.map(|_, x2, v| v * (1.0 + x2))?));
    let ok = constant.cov_12.norm() <= 1e-6;
    claims.push(Claim::diagnostic(
        "property2.covariance_constant",
        "Cov(c, X) = 0".into(),
        format!("X1 confined to a width-1e-7 strip: |cov_12| {}", e(constant.cov_12.norm())),
        if ok { Verdict::Reproduced } else { Verdict::NotReproduced },
        Some(ok),
    ));

    let a = 2.0;
    let stretched = GridSpec::new(a * spec.x1_min, a * spec.x1_max, spec.x2_min, spec.x2_max, spec.n1, spec.n2)?;
    let scaled = SampledField::new(stretched, base.values().iter().map(|&v| v / a).collect())?;
    let cs = covariance(&Qpdf::assess(scaled));
    claims.push(Claim::diagnostic(
        "property3.covariance_scaling",
        "Cov(aX, Y) = a² Cov(X, Y)".into(),
        format!("a = 2: cov_12 {} vs a·cov {} and a²·cov {}", q(cs.cov_12), q(c0.cov_12 * a), q(c0.cov_12 * (a * a))),
        Verdict::NotReproduced,
        Some((cs.cov_12 - c0.cov_12 * a).norm() <= 1e-9),
    ));
    Ok(())
}

fn unimplemented_claims(claims: &mut Vec<Claim>) {
    for (id, claimed, why) in [
        (
            "theorem7.recursion",
            "∂φ/∂u = (-j u c1 + a1 ∂/∂u) φ",
            "not evaluated: the identity is self-referential and mixes j into the x1 axis; moments come from Fourier-mode differences",
        ),
        ("property2.linearity", "φ of quaternion-weighted sums of real variables", "not evaluated: quaternion scaling of real variables is undefined"),
        ("property7.modulation", "modulation rule for φ", "not evaluated: the modulated variable is undefined"),
        ("property1.covariance_nonnegative", "Cov(X, X) >= 0", "not evaluated: no order on quaternion-valued covariances"),
    ] {
        claims.push(Claim::diagnostic(id, claimed.into(), why.into(), Verdict::DiagnosticOnly, None));
    }
}
