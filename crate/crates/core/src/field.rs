//! Quaternion-valued functions on a box in the plane, sampled on a uniform
//! grid, together with the quadrature that stands in for `∫_{ℝ²}`.
//!
//! Nodes include the box endpoints. Values are stored row-major with the
//! first coordinate `x1` indexing rows:
//! `values[r * n2 + c] = f(x1_min + r h1, x2_min + c h2)`.
//!
//! The box truncates `ℝ²`; choosing it is the caller's job. For Gaussian
//! test fields `[−8σ, 8σ]` per axis keeps the truncated mass below `1e−14`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exec::for_each_row;
use crate::quaternion::Quaternion;

/// Tensor-product quadrature rule applied along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Rule {
    /// Composite trapezoid: second order, exact for bilinear integrands.
    #[default]
    Trapezoid,
    /// Composite Simpson, closed with a 3/8 panel when the interval count
    /// is odd: fourth order, exact for cubics in each variable.
    Simpson,
}

impl Rule {
    /// Quadrature weights for `n` equispaced nodes with step `h`.
    pub fn weights(self, n: usize, h: f64) -> Vec<f64> {
        let mut w = vec![0.0; n];
        if n < 2 {
            return w;
        }
        let intervals = n - 1;
        match self {
            Rule::Trapezoid => trapezoid_panel(&mut w, h),
            Rule::Simpson if intervals == 1 => trapezoid_panel(&mut w, h),
            Rule::Simpson => {
                let simpson_end = if intervals.is_multiple_of(2) { intervals } else { intervals - 3 };
                for p in (0..simpson_end).step_by(2) {
                    w[p] += h / 3.0;
                    w[p + 1] += 4.0 * h / 3.0;
                    w[p + 2] += h / 3.0;
                }
                if simpson_end < intervals {
                    let s = simpson_end;
                    for (o, c) in [1.0, 3.0, 3.0, 1.0].into_iter().enumerate() {
                        w[s + o] += 3.0 * h / 8.0 * c;
                    }
                }
            }
        }
        w
    }
}

fn trapezoid_panel(w: &mut [f64], h: f64) {
    let n = w.len();
    w.iter_mut().for_each(|x| *x = h);
    w[0] = h / 2.0;
    w[n - 1] = h / 2.0;
}

/// A uniform grid over `[x1_min, x1_max] × [x2_min, x2_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    pub x1_min: f64,
    pub x1_max: f64,
    pub x2_min: f64,
    pub x2_max: f64,
    pub n1: usize,
    pub n2: usize,
    #[cfg_attr(feature = "serde", serde(default))]
    pub rule: Rule,
}

impl GridSpec {
    /// A trapezoid-rule grid; fails unless `min < max` and `n >= 2` per axis.
    pub fn new(x1_min: f64, x1_max: f64, x2_min: f64, x2_max: f64, n1: usize, n2: usize) -> Result<Self> {
        let spec = Self { x1_min, x1_max, x2_min, x2_max, n1, n2, rule: Rule::Trapezoid };
        spec.validate()?;
        Ok(spec)
    }

    /// Square grid `[lo, hi]²` with `n` nodes per axis.
    pub fn square(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::new(lo, hi, lo, hi, n, n)
    }

    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bounds = [self.x1_min, self.x1_max, self.x2_min, self.x2_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite"));
        }
        if self.x1_min >= self.x1_max {
            return Err(Error::InvalidGrid("x1_min must be < x1_max"));
        }
        if self.x2_min >= self.x2_max {
            return Err(Error::InvalidGrid("x2_min must be < x2_max"));
        }
        if self.n1 < 2 || self.n2 < 2 {
            return Err(Error::InvalidGrid("need at least 2 nodes per axis"));
        }
        Ok(())
    }

    #[inline]
    pub fn h1(&self) -> f64 {
        (self.x1_max - self.x1_min) / (self.n1 - 1) as f64
    }

    #[inline]
    pub fn h2(&self) -> f64 {
        (self.x2_max - self.x2_min) / (self.n2 - 1) as f64
    }

    #[inline]
    pub fn x1(&self, r: usize) -> f64 {
        self.x1_min + r as f64 * self.h1()
    }

    #[inline]
    pub fn x2(&self, c: usize) -> f64 {
        self.x2_min + c as f64 * self.h2()
    }

    pub fn x1_nodes(&self) -> Vec<f64> {
        (0..self.n1).map(|r| self.x1(r)).collect()
    }

    pub fn x2_nodes(&self) -> Vec<f64> {
        (0..self.n2).map(|c| self.x2(c)).collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weights1(&self) -> Vec<f64> {
        self.rule.weights(self.n1, self.h1())
    }

    pub fn weights2(&self) -> Vec<f64> {
        self.rule.weights(self.n2, self.h2())
    }

    /// The same grid translated by `(d1, d2)`.
    pub fn shifted(&self, d1: f64, d2: f64) -> Self {
        Self {
            x1_min: self.x1_min + d1,
            x1_max: self.x1_max + d1,
            x2_min: self.x2_min + d2,
            x2_max: self.x2_max + d2,
            ..*self
        }
    }

    /// Node nearest to `(x1, x2)`, clamped to the grid.
    pub fn nearest(&self, x1: f64, x2: f64) -> (usize, usize) {
        let pick = |x: f64, lo: f64, h: f64, n: usize| {
            let s = libm::round((x - lo) / h);
            if s <= 0.0 {
                0
            } else {
                (s as usize).min(n - 1)
            }
        };
        (pick(x1, self.x1_min, self.h1(), self.n1), pick(x2, self.x2_min, self.h2(), self.n2))
    }
}

/// Quaternion samples of a function on a [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    spec: GridSpec,
    values: Vec<Quaternion>,
}

impl SampledField {
    /// Checks the grid, the value count and that every sample is finite.
    pub fn new(spec: GridSpec, values: Vec<Quaternion>) -> Result<Self> {
        spec.validate()?;
        if values.len() != spec.len() {
            return Err(Error::LengthMismatch { expected: spec.len(), found: values.len() });
        }
        if let Some(idx) = values.iter().position(|q| !q.is_finite()) {
            return Err(Error::NonFinite { row: idx / spec.n2, col: idx % spec.n2 });
        }
        Ok(Self { spec, values })
    }

    pub fn zeros(spec: GridSpec) -> Result<Self> {
        Self::new(spec, vec![Quaternion::ZERO; spec.len()])
    }

    /// Evaluates `f` at every node.
    pub fn sample<F>(spec: GridSpec, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Quaternion,
    {
        spec.validate()?;
        let mut values = Vec::with_capacity(spec.len());
        for r in 0..spec.n1 {
            let x1 = spec.x1(r);
            for c in 0..spec.n2 {
                let q = f(x1, spec.x2(c));
                if !q.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                values.push(q);
            }
        }
        Ok(Self { spec, values })
    }

    /// Unit mass concentrated on the node nearest `(x1, x2)`: value
    /// `1 / (h1 h2)` there and zero elsewhere.
    pub fn delta_surrogate(spec: GridSpec, x1: f64, x2: f64) -> Result<Self> {
        let mut field = Self::zeros(spec)?;
        let (r, c) = spec.nearest(x1, x2);
        field.values[r * spec.n2 + c] = Quaternion::real(1.0 / (spec.h1() * spec.h2()));
        Ok(field)
    }

    #[inline]
    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    #[inline]
    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Quaternion> {
        self.values
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        self.values[r * self.spec.n2 + c]
    }

    /// Same samples reinterpreted on another grid of the same shape.
    pub fn with_spec(self, spec: GridSpec) -> Result<Self> {
        Self::new(spec, self.values)
    }

    /// Applies `f(x1, x2, value)` to every node.
    pub fn map<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(f64, f64, Quaternion) -> Quaternion,
    {
        let spec = self.spec;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, &q)| f(spec.x1(idx / spec.n2), spec.x2(idx % spec.n2), q))
            .collect();
        Self::new(spec, values)
    }

    /// Componentwise quadrature of the field over its box.
    pub fn integrate(&self) -> Quaternion {
        self.integrate_weighted(|_, _| 1.0)
    }

    /// `∫ w(x) f(x) dx` for a real weight `w`.
    pub fn integrate_weighted<W>(&self, weight: W) -> Quaternion
    where
        W: Fn(f64, f64) -> f64,
    {
        let (w1, w2) = (self.spec.weights1(), self.spec.weights2());
        let terms: Vec<Quaternion> = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, &q)| {
                let (r, c) = (idx / self.spec.n2, idx % self.spec.n2);
                q * (w1[r] * w2[c] * weight(self.spec.x1(r), self.spec.x2(c)))
            })
            .collect();
        pairwise_sum(&terms)
    }

    /// `∫ |f(x)| dx`.
    pub fn integrate_abs(&self) -> f64 {
        self.integrate_real(|q| q.norm())
    }

    /// Quadrature of a real functional of the samples.
    pub fn integrate_real<F>(&self, g: F) -> f64
    where
        F: Fn(Quaternion) -> f64,
    {
        let (w1, w2) = (self.spec.weights1(), self.spec.weights2());
        let terms: Vec<Quaternion> = self
            .values
            .iter()
            .enumerate()
            .map(|(idx, &q)| Quaternion::real(w1[idx / self.spec.n2] * w2[idx % self.spec.n2] * g(q)))
            .collect();
        pairwise_sum(&terms).q0
    }

    /// `(∫ |f|² dx)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        libm::sqrt(self.integrate_real(Quaternion::norm_sqr))
    }

    /// `⟨f, g⟩ = ∫ f(x) g(x)* dx`.
    pub fn inner_product(&self, other: &SampledField) -> Result<Quaternion> {
        self.check_same_grid(other)?;
        let products: Vec<Quaternion> =
            self.values.iter().zip(&other.values).map(|(&f, &g)| f * g.conj()).collect();
        Ok(SampledField { spec: self.spec, values: products }.integrate())
    }

    /// Largest node-wise `|f − g|`.
    pub fn max_abs_diff(&self, other: &SampledField) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(&f, &g)| (f - g).norm()).fold(0.0, f64::max))
    }

    pub fn check_same_grid(&self, other: &SampledField) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// `(f ∗ g)(x) = ∫ f(y) g(x − y) dy` on `f`'s grid, factor order kept.
    ///
    /// `g` is zero outside its box and linearly interpolated between nodes
    /// when `x − y` falls off the grid lattice.
    pub fn convolve(&self, g: &SampledField) -> Result<SampledField> {
        self.check_same_grid(g)?;
        let spec = self.spec;
        let (n1, n2) = (spec.n1, spec.n2);
        // g(x − y) only depends on the index differences r − r', c − c'.
        let off1 = snap(-spec.x1_min / spec.h1());
        let off2 = snap(-spec.x2_min / spec.h2());
        let (t1, t2) = (2 * n1 - 1, 2 * n2 - 1);
        let mut table = vec![Quaternion::ZERO; t1 * t2];
        for a in 0..t1 {
            for b in 0..t2 {
                let s1 = a as f64 - (n1 - 1) as f64 + off1;
                let s2 = b as f64 - (n2 - 1) as f64 + off2;
                table[a * t2 + b] = g.interpolate_index(s1, s2);
            }
        }
        let weighted = self.weighted_values();
        let mut out = vec![Quaternion::ZERO; spec.len()];
        for_each_row(&mut out, n2, |r, row| {
            for (c, slot) in row.iter_mut().enumerate() {
                let mut acc = Quaternion::ZERO;
                for rp in 0..n1 {
                    let trow = &table[(r + n1 - 1 - rp) * t2..];
                    let frow = &weighted[rp * n2..(rp + 1) * n2];
                    for (cp, &fy) in frow.iter().enumerate() {
                        acc += fy * trow[c + n2 - 1 - cp];
                    }
                }
                *slot = acc;
            }
        });
        SampledField::new(spec, out)
    }

    /// `(f ∘ g)(x) = ∫ f(x + y) conj(g(y)) dy` on `f`'s grid, factor order kept.
    pub fn correlate(&self, g: &SampledField) -> Result<SampledField> {
        self.check_same_grid(g)?;
        let spec = self.spec;
        let (n1, n2) = (spec.n1, spec.n2);
        // f(x + y) only depends on the index sums r + r', c + c'.
        let off1 = snap(spec.x1_min / spec.h1());
        let off2 = snap(spec.x2_min / spec.h2());
        let (t1, t2) = (2 * n1 - 1, 2 * n2 - 1);
        let mut table = vec![Quaternion::ZERO; t1 * t2];
        for a in 0..t1 {
            for b in 0..t2 {
                table[a * t2 + b] = self.interpolate_index(a as f64 + off1, b as f64 + off2);
            }
        }
        let (w1, w2) = (spec.weights1(), spec.weights2());
        let gbar: Vec<Quaternion> = g
            .values
            .iter()
            .enumerate()
            .map(|(idx, &q)| q.conj() * (w1[idx / n2] * w2[idx % n2]))
            .collect();
        let mut out = vec![Quaternion::ZERO; spec.len()];
        for_each_row(&mut out, n2, |r, row| {
            for (c, slot) in row.iter_mut().enumerate() {
                let mut acc = Quaternion::ZERO;
                for rp in 0..n1 {
                    let trow = &table[(r + rp) * t2 + c..];
                    let grow = &gbar[rp * n2..(rp + 1) * n2];
                    for (cp, &gy) in grow.iter().enumerate() {
                        acc += trow[cp] * gy;
                    }
                }
                *slot = acc;
            }
        });
        SampledField::new(spec, out)
    }

    /// Samples multiplied by their quadrature weights.
    pub(crate) fn weighted_values(&self) -> Vec<Quaternion> {
        let (w1, w2) = (self.spec.weights1(), self.spec.weights2());
        let n2 = self.spec.n2;
        self.values.iter().enumerate().map(|(idx, &q)| q * (w1[idx / n2] * w2[idx % n2])).collect()
    }

    /// Bilinear interpolation at fractional node indices, zero off the grid.
    fn interpolate_index(&self, s1: f64, s2: f64) -> Quaternion {
        let (Some((r, t)), Some((c, u))) = (locate(s1, self.spec.n1), locate(s2, self.spec.n2)) else {
            return Quaternion::ZERO;
        };
        let mut q = self.get(r, c) * ((1.0 - t) * (1.0 - u));
        if t > 0.0 {
            q += self.get(r + 1, c) * (t * (1.0 - u));
        }
        if u > 0.0 {
            q += self.get(r, c + 1) * ((1.0 - t) * u);
        }
        if t > 0.0 && u > 0.0 {
            q += self.get(r + 1, c + 1) * (t * u);
        }
        q
    }
}

const SNAP: f64 = 1e-9;

fn snap(x: f64) -> f64 {
    let r = libm::round(x);
    if (x - r).abs() < SNAP {
        r
    } else {
        x
    }
}

/// Splits a fractional index into `(node, fraction)`; `None` off the grid.
fn locate(s: f64, n: usize) -> Option<(usize, f64)> {
    let s = snap(s);
    if s < 0.0 || s > (n - 1) as f64 {
        return None;
    }
    let i = libm::floor(s) as usize;
    let t = s - i as f64;
    if t == 0.0 || i == n - 1 {
        Some((i.min(n - 1), 0.0))
    } else {
        Some((i, t))
    }
}

/// Pairwise (cascade) summation; fixed association order, so results do
/// not depend on thread scheduling.
pub fn pairwise_sum(xs: &[Quaternion]) -> Quaternion {
    const BLOCK: usize = 64;
    if xs.len() <= BLOCK {
        xs.iter().copied().sum()
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}
