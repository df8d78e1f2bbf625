//! Hamiltonians H = [[h1, h3], [h3, h2]] on an interval (0, L): evaluation,
//! primitives, trace normalization, indivisible starts and the distance
//! between trace-normalised primitives.

mod quad;
mod spec;

pub use spec::{parse_spec, HamiltonianSpec, SegmentSpec};

use crate::error::{Error, Result};
use crate::power_model::PowerData;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

/// Relative tolerance for primitives computed by quadrature.
pub const QUAD_TOL: f64 = 1e-10;

/// Relative tolerance of the bisection that inverts the trace primitive.
pub const INVERSE_TOL: f64 = 1e-12;

/// Relative threshold under which a diagonal primitive counts as vanishing.
pub const INDIVISIBLE_TOL: f64 = 1e-10;

/// A real symmetric 2×2 matrix stored as (h1, h2, h3) = (upper-left,
/// lower-right, off-diagonal).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sym2 {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
}

impl Sym2 {
    pub const fn new(h1: f64, h2: f64, h3: f64) -> Self {
        Sym2 { h1, h2, h3 }
    }

    pub const fn identity() -> Self {
        Sym2::new(1.0, 1.0, 0.0)
    }

    pub fn trace(&self) -> f64 {
        self.h1 + self.h2
    }

    pub fn det(&self) -> f64 {
        self.h1 * self.h2 - self.h3 * self.h3
    }

    pub fn scaled(&self, s: f64) -> Self {
        Sym2::new(self.h1 * s, self.h2 * s, self.h3 * s)
    }

    /// Positive semidefinite up to a relative slack.
    pub fn is_psd(&self, slack: f64) -> bool {
        let tr = self.trace().abs();
        self.h1 >= -slack * tr && self.h2 >= -slack * tr && self.det() >= -slack * tr * tr
    }

    fn to_array(self) -> [f64; 3] {
        [self.h1, self.h2, self.h3]
    }
}

/// Values (m1, m2, m3) of the entrywise primitive M(t) = ∫_0^t H.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrimitiveMatrix {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl PrimitiveMatrix {
    pub const fn new(m1: f64, m2: f64, m3: f64) -> Self {
        PrimitiveMatrix { m1, m2, m3 }
    }

    /// 𝔱 = m1 + m2.
    pub fn trace_primitive(&self) -> f64 {
        self.m1 + self.m2
    }

    /// Largest absolute entry of the difference.
    pub fn max_abs_diff(&self, other: &PrimitiveMatrix) -> f64 {
        (self.m1 - other.m1)
            .abs()
            .max((self.m2 - other.m2).abs())
            .max((self.m3 - other.m3).abs())
    }

    /// Operator-style size max(|m1|, |m2|, |m3|).
    pub fn max_abs(&self) -> f64 {
        self.m1.abs().max(self.m2.abs()).max(self.m3.abs())
    }

    fn from_array(a: [f64; 3]) -> Self {
        PrimitiveMatrix::new(a[0], a[1], a[2])
    }
}

/// One constant piece of a piecewise Hamiltonian. The final segment may
/// have infinite length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub len: f64,
    pub h: Sym2,
}

/// Multiplicative perturbations of a power Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    /// Factor 1 + a/(1 + |ln t|), which tends to 1 as t → 0.
    LogDecay { amplitude: f64 },
}

impl Perturbation {
    pub fn factor(&self, t: f64) -> f64 {
        match *self {
            Perturbation::LogDecay { amplitude } => 1.0 + amplitude / (1.0 + t.ln().abs()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Perturbation::LogDecay { .. } => "log_decay",
        }
    }
}

/// Which diagonal entry carries the rapidly varying primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapidEntry {
    Upper,
    Lower,
}

/// Diagonal Hamiltonian with one regularly varying primitive (κ/ρ)t^ρ and one
/// rapidly varying primitive e^{−t^{−β}}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RapidData {
    pub rapid_entry: RapidEntry,
    pub rho: f64,
    pub kappa: f64,
    pub beta: f64,
}

impl RapidData {
    fn split(&self, regular: f64, rapid: f64) -> [f64; 3] {
        match self.rapid_entry {
            RapidEntry::Upper => [rapid, regular, 0.0],
            RapidEntry::Lower => [regular, rapid, 0.0],
        }
    }

    fn entries(&self, t: f64) -> [f64; 3] {
        let regular = self.kappa * t.powf(self.rho - 1.0);
        let u = t.powf(-self.beta);
        // e^{−u} underflows long before u/t overflows
        let rapid = if u > 800.0 { 0.0 } else { self.beta * u / t * (-u).exp() };
        self.split(regular, rapid)
    }

    fn primitives(&self, t: f64) -> [f64; 3] {
        if t == 0.0 {
            return [0.0; 3];
        }
        let regular = self.kappa / self.rho * t.powf(self.rho);
        let rapid = (-t.powf(-self.beta)).exp();
        self.split(regular, rapid)
    }
}

type EntryFn = dyn Fn(f64) -> Sym2 + Send + Sync;
type PrimitiveFn = dyn Fn(f64) -> PrimitiveMatrix + Send + Sync;

/// A Hamiltonian given by an evaluator closure.
#[derive(Clone)]
pub struct Sampled {
    label: String,
    length: f64,
    eval: Arc<EntryFn>,
    primitive: Option<Arc<PrimitiveFn>>,
    breakpoints: Vec<f64>,
    trace_diverges: bool,
}

impl Sampled {
    /// A sampled Hamiltonian on (0, length); `∫ tr H = ∞` is declared true.
    pub fn new<F>(label: impl Into<String>, length: f64, eval: F) -> Self
    where
        F: Fn(f64) -> Sym2 + Send + Sync + 'static,
    {
        Sampled {
            label: label.into(),
            length,
            eval: Arc::new(eval),
            primitive: None,
            breakpoints: Vec::new(),
            trace_diverges: true,
        }
    }

    /// Supplies a closed-form primitive, used instead of quadrature.
    pub fn with_primitive<F>(mut self, f: F) -> Self
    where
        F: Fn(f64) -> PrimitiveMatrix + Send + Sync + 'static,
    {
        self.primitive = Some(Arc::new(f));
        self
    }

    /// Declares points where the evaluator may jump or kink.
    pub fn with_breakpoints(mut self, mut points: Vec<f64>) -> Self {
        points.retain(|p| *p > 0.0 && *p < self.length);
        points.sort_by(f64::total_cmp);
        points.dedup();
        self.breakpoints = points;
        self
    }

    /// Declares whether ∫_0^L tr H is infinite.
    pub fn with_trace_divergence(mut self, diverges: bool) -> Self {
        self.trace_diverges = diverges;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for Sampled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sampled")
            .field("label", &self.label)
            .field("length", &self.length)
            .field("closed_form_primitive", &self.primitive.is_some())
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

/// A Hamiltonian on (0, L).
#[derive(Debug, Clone)]
pub enum Hamiltonian {
    /// Entries κ_i t^{ρ_i − 1}.
    Power(PowerData),
    /// Power entries times a common positive factor.
    PerturbedPower {
        data: PowerData,
        perturbation: Perturbation,
    },
    /// Diagonal, with one rapidly varying primitive.
    Rapid(RapidData),
    /// Constant on consecutive segments.
    Piecewise(Vec<Segment>),
    /// Pointwise evaluator.
    Sampled(Sampled),
    /// t ↦ [[b1²h1(st), b1b2h3(st)], [b1b2h3(st), b2²h2(st)]] with s = b1b2/r.
    Rescaled {
        inner: Box<Hamiltonian>,
        r: f64,
        b1: f64,
        b2: f64,
    },
    /// H(𝔱⁻¹(t))·(𝔱⁻¹)′(t).
    TraceNormalized(Box<Hamiltonian>),
}

/// Classification of the start of a Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndivisibleKind {
    None,
    /// h2 vanishes near 0.
    Type0,
    /// h1 vanishes near 0.
    TypeHalfPi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndivisibleStart {
    pub kind: IndivisibleKind,
    /// Largest tested ε on which the entry vanishes; 0 when `kind` is `None`.
    pub epsilon: f64,
}

fn clamp_open(t: f64, lo: f64, hi: f64) -> f64 {
    let a = lo + 4.0 * f64::EPSILON * lo.abs();
    let b = hi - 4.0 * f64::EPSILON * hi.abs();
    if a < b {
        t.clamp(a, b)
    } else {
        0.5 * (lo + hi)
    }
}

impl Hamiltonian {
    pub fn power(data: PowerData) -> Result<Self> {
        data.validate()?;
        Ok(Hamiltonian::Power(data))
    }

    pub fn perturbed_power(data: PowerData, perturbation: Perturbation) -> Result<Self> {
        let h = Hamiltonian::PerturbedPower { data, perturbation };
        h.validate()?;
        Ok(h)
    }

    pub fn rapid(data: RapidData) -> Result<Self> {
        let h = Hamiltonian::Rapid(data);
        h.validate()?;
        Ok(h)
    }

    pub fn piecewise(segments: Vec<Segment>) -> Result<Self> {
        let h = Hamiltonian::Piecewise(segments);
        h.validate()?;
        Ok(h)
    }

    /// H(t) = h for all t > 0.
    pub fn constant(h: Sym2) -> Self {
        Hamiltonian::Piecewise(vec![Segment { len: f64::INFINITY, h }])
    }

    pub fn identity() -> Self {
        Hamiltonian::constant(Sym2::identity())
    }

    pub fn sampled(s: Sampled) -> Result<Self> {
        let h = Hamiltonian::Sampled(s);
        h.validate()?;
        Ok(h)
    }

    /// Power data when this is a power Hamiltonian.
    pub fn power_data(&self) -> Option<&PowerData> {
        match self {
            Hamiltonian::Power(d) => Some(d),
            _ => None,
        }
    }

    /// Right endpoint L of the domain.
    pub fn length(&self) -> f64 {
        match self {
            Hamiltonian::Power(_) | Hamiltonian::PerturbedPower { .. } | Hamiltonian::Rapid(_) => {
                f64::INFINITY
            }
            Hamiltonian::Piecewise(segs) => segs.iter().map(|s| s.len).sum(),
            Hamiltonian::Sampled(s) => s.length,
            Hamiltonian::Rescaled { inner, r, b1, b2 } => inner.length() / (b1 * b2 / r),
            Hamiltonian::TraceNormalized(inner) => {
                let l = inner.length();
                if l.is_infinite() {
                    f64::INFINITY
                } else {
                    inner
                        .primitive(l)
                        .map(|m| m.trace_primitive())
                        .unwrap_or(f64::INFINITY)
                }
            }
        }
    }

    /// Checks the standing assumptions; grid-based for sampled input.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidHamiltonian(m));
        match self {
            Hamiltonian::Power(d) => d.validate(),
            Hamiltonian::PerturbedPower { data, perturbation } => {
                data.validate()?;
                match *perturbation {
                    Perturbation::LogDecay { amplitude } => {
                        if !(amplitude > -1.0 && amplitude.is_finite()) {
                            return bad(format!("perturbation amplitude {amplitude} must exceed −1"));
                        }
                    }
                }
                Ok(())
            }
            Hamiltonian::Rapid(d) => {
                if !(d.rho > 0.0 && d.kappa > 0.0 && d.beta > 0.0)
                    || ![d.rho, d.kappa, d.beta].iter().all(|x| x.is_finite())
                {
                    return bad("rapid data needs ρ, κ, β > 0".into());
                }
                Ok(())
            }
            Hamiltonian::Piecewise(segs) => {
                if segs.is_empty() {
                    return bad("piecewise Hamiltonian has no segments".into());
                }
                for (k, s) in segs.iter().enumerate() {
                    let last = k + 1 == segs.len();
                    if !(s.len > 0.0) || (!last && !s.len.is_finite()) {
                        return bad(format!("segment {k} has invalid length {}", s.len));
                    }
                    if ![s.h.h1, s.h.h2, s.h.h3].iter().all(|x| x.is_finite()) {
                        return bad(format!("segment {k} has non-finite entries"));
                    }
                    if !(s.h.trace() > 0.0) || !s.h.is_psd(1e-14) {
                        return bad(format!("segment {k} is not positive semidefinite with positive trace"));
                    }
                }
                if segs.last().is_some_and(|s| s.len.is_finite()) {
                    return bad("the last segment must be unbounded so that ∫ tr H = ∞".into());
                }
                Ok(())
            }
            Hamiltonian::Sampled(s) => {
                if !(s.length > 0.0) {
                    return bad("sampled Hamiltonian needs L > 0".into());
                }
                if !s.trace_diverges {
                    return bad("∫ tr H must be infinite".into());
                }
                for t in self.probe_grid() {
                    let h = (s.eval)(t);
                    if !(h.trace() > 0.0) || !h.is_psd(1e-12) {
                        return bad(format!("H({t}) is not positive semidefinite with positive trace"));
                    }
                }
                Ok(())
            }
            Hamiltonian::Rescaled { inner, r, b1, b2 } => {
                if ![r, b1, b2].iter().all(|x| **x > 0.0 && x.is_finite()) {
                    return bad("rescaling parameters must be positive".into());
                }
                inner.validate()
            }
            Hamiltonian::TraceNormalized(inner) => inner.validate(),
        }
    }

    fn probe_grid(&self) -> Vec<f64> {
        let l = self.length();
        let top = if l.is_finite() { l } else { 1e6 };
        (0..=48)
            .map(|k| top * 10f64.powf(-(k as f64) / 4.0))
            .map(|t| if t >= l { 0.999 * l } else { t })
            .collect()
    }

    fn check_point(&self, t: f64) -> Result<()> {
        if !(t > 0.0) || t >= self.length() || t.is_nan() {
            return Err(Error::Domain(format!(
                "t = {t} is outside (0, {})",
                self.length()
            )));
        }
        Ok(())
    }

    /// H(t) for t ∈ (0, L).
    pub fn evaluate(&self, t: f64) -> Result<Sym2> {
        self.check_point(t)?;
        self.evaluate_unchecked(t)
    }

    fn evaluate_unchecked(&self, t: f64) -> Result<Sym2> {
        let v = match self {
            Hamiltonian::Power(d) => {
                let e = d.entries(t);
                Sym2::new(e[0], e[1], e[2])
            }
            Hamiltonian::PerturbedPower { data, perturbation } => {
                let e = data.entries(t);
                Sym2::new(e[0], e[1], e[2]).scaled(perturbation.factor(t))
            }
            Hamiltonian::Rapid(d) => {
                let e = d.entries(t);
                Sym2::new(e[0], e[1], e[2])
            }
            Hamiltonian::Piecewise(segs) => {
                let mut start = 0.0;
                let mut found = segs.last().map(|s| s.h).unwrap_or_default();
                for s in segs {
                    if t < start + s.len {
                        found = s.h;
                        break;
                    }
                    start += s.len;
                }
                found
            }
            Hamiltonian::Sampled(s) => (s.eval)(t),
            Hamiltonian::Rescaled { inner, r, b1, b2 } => {
                let s = b1 * b2 / r;
                let h = inner.evaluate_unchecked(s * t)?;
                Sym2::new(b1 * b1 * h.h1, b2 * b2 * h.h2, b1 * b2 * h.h3)
            }
            Hamiltonian::TraceNormalized(inner) => {
                let s = inner.inverse_trace_primitive(t)?;
                let h = inner.evaluate_unchecked(s)?;
                let tr = h.trace();
                if !(tr > 0.0) {
                    return Err(Error::InvalidHamiltonian(format!(
                        "trace vanishes at t = {s}; cannot normalise"
                    )));
                }
                h.scaled(1.0 / tr)
            }
        };
        Ok(v)
    }

    /// H(t) with t pulled into the open interval (lo, hi), for integrators
    /// that must not see the value from a neighbouring segment.
    pub(crate) fn evaluate_within(&self, t: f64, lo: f64, hi: f64) -> Result<Sym2> {
        self.evaluate_unchecked(clamp_open(t, lo, hi))
    }

    /// Points in (0, L) where H may jump or fail to be smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Hamiltonian::Power(_) | Hamiltonian::Rapid(_) => Vec::new(),
            Hamiltonian::PerturbedPower { .. } => vec![1.0],
            Hamiltonian::Piecewise(segs) => {
                let mut out = Vec::new();
                let mut acc = 0.0;
                for s in &segs[..segs.len().saturating_sub(1)] {
                    acc += s.len;
                    out.push(acc);
                }
                out
            }
            Hamiltonian::Sampled(s) => s.breakpoints.clone(),
            Hamiltonian::Rescaled { inner, r, b1, b2 } => {
                let s = b1 * b2 / r;
                inner.breakpoints().into_iter().map(|p| p / s).collect()
            }
            Hamiltonian::TraceNormalized(inner) => inner
                .breakpoints()
                .into_iter()
                .filter_map(|p| inner.primitive(p).ok().map(|m| m.trace_primitive()))
                .collect(),
        }
    }

    /// M(t) = ∫_0^t H for t ∈ [0, L].
    pub fn primitive(&self, t: f64) -> Result<PrimitiveMatrix> {
        if !(t >= 0.0) || t > self.length() {
            return Err(Error::Domain(format!(
                "t = {t} is outside [0, {}]",
                self.length()
            )));
        }
        if t == 0.0 {
            return Ok(PrimitiveMatrix::default());
        }
        match self {
            Hamiltonian::Power(d) => Ok(PrimitiveMatrix::from_array(d.primitives(t))),
            Hamiltonian::Rapid(d) => Ok(PrimitiveMatrix::from_array(d.primitives(t))),
            Hamiltonian::Piecewise(segs) => {
                let mut m = PrimitiveMatrix::default();
                let mut left = t;
                for s in segs {
                    let w = left.min(s.len);
                    m.m1 += w * s.h.h1;
                    m.m2 += w * s.h.h2;
                    m.m3 += w * s.h.h3;
                    left -= w;
                    if left <= 0.0 {
                        break;
                    }
                }
                Ok(m)
            }
            Hamiltonian::Sampled(s) if s.primitive.is_some() => {
                Ok((s.primitive.as_ref().expect("checked"))(t))
            }
            Hamiltonian::PerturbedPower { .. } | Hamiltonian::Sampled(_) => self.primitive_by_quadrature(t),
            Hamiltonian::Rescaled { inner, r, b1, b2 } => {
                let s = b1 * b2 / r;
                let m = inner.primitive(s * t)?;
                Ok(PrimitiveMatrix::new(
                    r * b1 / b2 * m.m1,
                    r * b2 / b1 * m.m2,
                    r * m.m3,
                ))
            }
            Hamiltonian::TraceNormalized(inner) => {
                let s = inner.inverse_trace_primitive(t)?;
                inner.primitive(s)
            }
        }
    }

    fn primitive_by_quadrature(&self, t: f64) -> Result<PrimitiveMatrix> {
        let mut cuts: Vec<f64> = self.breakpoints().into_iter().filter(|p| *p < t).collect();
        cuts.push(t);
        let first = cuts[0];
        let head = |s: f64| -> Result<[f64; 3]> {
            Ok(self.evaluate_within(s, 0.0, first)?.to_array())
        };
        let mut acc = quad::integrate_from_origin(&head, first, QUAD_TOL)?;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let piece = |s: f64| -> Result<[f64; 3]> { Ok(self.evaluate_within(s, a, b)?.to_array()) };
            let v = quad::integrate_log(&piece, a, b, QUAD_TOL)?;
            for k in 0..3 {
                acc[k] += v[k];
            }
        }
        Ok(PrimitiveMatrix::from_array(acc))
    }

    /// 𝔱(t) = m1(t) + m2(t).
    pub fn trace_primitive(&self, t: f64) -> Result<f64> {
        Ok(self.primitive(t)?.trace_primitive())
    }

    /// 𝔱⁻¹(x) by monotone bisection to relative tolerance [`INVERSE_TOL`].
    pub fn inverse_trace_primitive(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("cannot invert 𝔱 at {x}")));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let l = self.length();
        if let Hamiltonian::TraceNormalized(_) = self {
            // 𝔱(t) = t by construction
            if x > l {
                return Err(Error::Domain(format!("𝔱 stays below {x}")));
            }
            return Ok(x);
        }
        let tr = |t: f64| self.trace_primitive(t);
        let mut hi = if l.is_finite() { 0.5 * l } else { 1.0 };
        let mut guard = 0;
        while tr(hi)? < x {
            if l.is_finite() {
                hi = 0.5 * (hi + l);
                if l - hi <= f64::EPSILON * l {
                    return Err(Error::Domain(format!("𝔱 stays below {x} on (0, L)")));
                }
            } else {
                hi *= 2.0;
            }
            guard += 1;
            if guard > 2100 {
                return Err(Error::Domain(format!("𝔱 stays below {x}")));
            }
        }
        let mut lo = hi * 0.5;
        while lo > f64::MIN_POSITIVE && tr(lo)? > x {
            hi = lo;
            lo *= 0.5;
        }
        let (mut f_lo, mut f_hi) = (tr(lo)?, tr(hi)?);
        if f_lo > f_hi {
            return Err(Error::InvalidHamiltonian("trace primitive is not monotone".into()));
        }
        while hi - lo > INVERSE_TOL * hi {
            let mid = 0.5 * (lo + hi);
            let f = tr(mid)?;
            if f < f_lo || f > f_hi {
                return Err(Error::InvalidHamiltonian("trace primitive is not monotone".into()));
            }
            if f < x {
                lo = mid;
                f_lo = f;
            } else {
                hi = mid;
                f_hi = f;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// The trace-normalised reparameterisation Ĥ of H. Closed forms are used
/// when H is piecewise constant or a power Hamiltonian with equal indices.
pub fn trace_normalize(h: &Hamiltonian) -> Result<Hamiltonian> {
    h.validate()?;
    match h {
        Hamiltonian::TraceNormalized(_) => Ok(h.clone()),
        Hamiltonian::Piecewise(segs) => {
            let out = segs
                .iter()
                .map(|s| {
                    let tr = s.h.trace();
                    Segment {
                        len: s.len * tr,
                        h: s.h.scaled(1.0 / tr),
                    }
                })
                .collect();
            Ok(Hamiltonian::Piecewise(out))
        }
        Hamiltonian::Power(d) => {
            let active: Vec<f64> = [(d.kappa1, d.rho1), (d.kappa2, d.rho2), (d.kappa3, d.rho3)]
                .iter()
                .filter(|(k, _)| *k != 0.0)
                .map(|(_, r)| *r)
                .collect();
            let common = active.iter().all(|r| *r == active[0]);
            if common {
                // H = t^{ρ−1}K, so Ĥ = K/tr K.
                let k = Sym2::new(d.kappa1, d.kappa2, d.kappa3);
                Ok(Hamiltonian::constant(k.scaled(1.0 / k.trace())))
            } else {
                Ok(Hamiltonian::TraceNormalized(Box::new(h.clone())))
            }
        }
        _ => Ok(Hamiltonian::TraceNormalized(Box::new(h.clone()))),
    }
}

/// Reports whether H starts with an indivisible interval, testing each ε
/// of the grid and keeping the largest one that qualifies.
pub fn detect_indivisible_start(h: &Hamiltonian, epsilon_grid: &[f64]) -> IndivisibleStart {
    let mut type0: Option<f64> = None;
    let mut half: Option<f64> = None;
    for &eps in epsilon_grid {
        let Ok(m) = h.primitive(eps) else { continue };
        let tr = m.trace_primitive();
        if !(tr > 0.0) {
            continue;
        }
        if m.m2.abs() <= INDIVISIBLE_TOL * tr {
            type0 = Some(type0.map_or(eps, |e: f64| e.max(eps)));
        }
        if m.m1.abs() <= INDIVISIBLE_TOL * tr {
            half = Some(half.map_or(eps, |e: f64| e.max(eps)));
        }
    }
    match (type0, half) {
        (Some(e), _) => IndivisibleStart {
            kind: IndivisibleKind::Type0,
            epsilon: e,
        },
        (None, Some(e)) => IndivisibleStart {
            kind: IndivisibleKind::TypeHalfPi,
            epsilon: e,
        },
        _ => IndivisibleStart {
            kind: IndivisibleKind::None,
            epsilon: 0.0,
        },
    }
}

/// max over x in an equispaced grid of [0, T] of the largest entry of
/// M1(𝔱1⁻¹(x)) − M2(𝔱2⁻¹(x)).
pub fn convergence_distance(h1: &Hamiltonian, h2: &Hamiltonian, t: f64, grid_size: usize) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("T = {t} must be finite and nonnegative")));
    }
    let n = grid_size.max(1);
    let xs: Vec<f64> = if n == 1 {
        vec![t]
    } else {
        (0..n).map(|k| t * k as f64 / (n - 1) as f64).collect()
    };
    let at = |h: &Hamiltonian, x: f64| -> Result<PrimitiveMatrix> {
        let s = h.inverse_trace_primitive(x)?;
        h.primitive(s)
    };
    let d: Result<Vec<f64>> = xs
        .par_iter()
        .map(|&x| Ok(at(h1, x)?.max_abs_diff(&at(h2, x)?)))
        .collect();
    Ok(d?.into_iter().fold(0.0, f64::max))
}
