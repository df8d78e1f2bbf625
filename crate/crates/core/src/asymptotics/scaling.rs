use crate::error::{Error, Result};
use crate::hamiltonian::{Hamiltonian, PrimitiveMatrix};
use crate::power_model::{rescale_power, PowerClass};
use rayon::prelude::*;

fn product(h: &Hamiltonian, t: f64) -> Result<f64> {
    let m = h.primitive(t)?;
    Ok(m.m1 * m.m2)
}

/// The t with (m1·m2)(t) = 1/r², by bisection in log t.
pub fn breve_t(h: &Hamiltonian, r: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("r = {r} must be positive")));
    }
    if let Hamiltonian::Power(d) = h {
        if d.class() == PowerClass::Full {
            let c = d.leading_coefficients();
            return Ok((c[0] * c[1] * r * r).powf(-1.0 / (d.rho1 + d.rho2)));
        }
    }
    let target = 1.0 / (r * r);
    let l = h.length();
    let cap = if l.is_finite() { l * (1.0 - 1e-12) } else { f64::INFINITY };
    let mut lo = 1f64.min(0.5 * cap);
    let mut hi = lo;
    let mut guard = 0;
    while product(h, lo)? >= target {
        lo *= 1.0 / 16.0;
        guard += 1;
        if guard > 300 {
            return Err(Error::Hypotheses("m1·m2 does not vanish at 0".into()));
        }
    }
    while !(product(h, hi)? >= target) {
        if hi >= cap || hi > 1e300 {
            return Err(Error::Hypotheses(format!(
                "m1·m2 stays below 1/r² = {target:e} on the whole domain"
            )));
        }
        hi = (hi * 16.0).min(cap);
        guard += 1;
        if guard > 600 {
            return Err(Error::Hypotheses("m1·m2 is bounded".into()));
        }
    }
    let (mut p_lo, mut p_hi) = (product(h, lo)?, product(h, hi)?);
    for _ in 0..200 {
        if hi / lo - 1.0 <= 1e-15 {
            break;
        }
        let mid = (lo * hi).sqrt();
        let p = product(h, mid)?;
        if p < p_lo || p > p_hi {
            return Err(Error::Hypotheses(format!("m1·m2 is not increasing near t = {mid}")));
        }
        if p < target {
            lo = mid;
            p_lo = p;
        } else {
            hi = mid;
            p_hi = p;
        }
    }
    Ok((lo * hi).sqrt())
}

/// a_H(r) = √(m1/m2) at t = breve_t(r).
pub fn a_h(h: &Hamiltonian, r: f64) -> Result<f64> {
    let m = h.primitive(breve_t(h, r)?)?;
    Ok((m.m1 / m.m2).sqrt())
}

/// b1(r) = r√(t·m2(t)) and b2(r) = r√(t·m1(t)) at t = breve_t(r).
pub fn kasahara_scalers(h: &Hamiltonian, r: f64) -> Result<(f64, f64)> {
    let t = breve_t(h, r)?;
    let m = h.primitive(t)?;
    Ok((r * (t * m.m2).sqrt(), r * (t * m.m1).sqrt()))
}

/// The transform A_r^{b1,b2}: entries b1²h1(st), b1b2h3(st), b2²h2(st) with
/// s = b1b2/r. Power data stays in closed form and nested transforms merge.
pub fn rescale(h: &Hamiltonian, r: f64, b1: f64, b2: f64) -> Result<Hamiltonian> {
    if !(r > 0.0 && b1 > 0.0 && b2 > 0.0) || !(r * b1 * b2).is_finite() {
        return Err(Error::Domain("r, b1 and b2 must be positive and finite".into()));
    }
    if (r, b1, b2) == (1.0, 1.0, 1.0) {
        return Ok(h.clone());
    }
    match h {
        Hamiltonian::Power(d) => Hamiltonian::power(rescale_power(d, r, b1, b2)?),
        Hamiltonian::Rescaled {
            inner,
            r: r0,
            b1: c1,
            b2: c2,
        } => Ok(Hamiltonian::Rescaled {
            inner: inner.clone(),
            r: r * r0,
            b1: b1 * c1,
            b2: b2 * c2,
        }),
        _ => Ok(Hamiltonian::Rescaled {
            inner: Box::new(h.clone()),
            r,
            b1,
            b2,
        }),
    }
}

/// Expected limit of the rescaled primitives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitShape {
    /// m̃1 = x^{ρ1}, m̃2 = x^{ρ2}, m̃3 = δx^{(ρ1+ρ2)/2}.
    Regular { rho1: f64, rho2: f64, delta: f64 },
    /// m2 rapidly varying: trace-normalised limit diag(𝟙_[0,1], 𝟙_(1,∞)).
    RapidM2,
    /// m1 rapidly varying: trace-normalised limit diag(𝟙_(1,∞), 𝟙_[0,1]).
    RapidM1,
}

/// Deviations from the limit at one value of r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescalingRow {
    pub r: f64,
    pub breve_t: f64,
    /// Max over the x-grid, for the entries m1, m2, m3.
    pub deviation: [f64; 3],
}

impl RescalingRow {
    pub fn max(&self) -> f64 {
        self.deviation.iter().copied().fold(0.0, f64::max)
    }
}

struct Normalised<'a> {
    h: &'a Hamiltonian,
    t: f64,
    base: PrimitiveMatrix,
}

impl Normalised<'_> {
    /// Primitives of A_r^{b1,b2}H at x: m1(tx)/m1(t), m2(tx)/m2(t) and
    /// m3(tx)/√(m1m2)(t).
    fn at(&self, x: f64) -> Result<[f64; 3]> {
        let m = self.h.primitive(self.t * x)?;
        Ok([
            m.m1 / self.base.m1,
            m.m2 / self.base.m2,
            m.m3 / (self.base.m1 * self.base.m2).sqrt(),
        ])
    }

    /// Point x where the rescaled trace primitive equals T.
    fn trace_inverse(&self, target: f64) -> Result<f64> {
        let tr = |x: f64| -> Result<f64> {
            let m = self.at(x)?;
            Ok(m[0] + m[1])
        };
        let l = self.h.length() / self.t;
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        while tr(lo)? > target {
            lo *= 0.5;
            if lo < 1e-300 {
                return Err(Error::Hypotheses("rescaled trace does not vanish at 0".into()));
            }
        }
        while tr(hi)? < target {
            hi *= 2.0;
            if hi >= l {
                return Err(Error::Hypotheses("rescaled trace is bounded".into()));
            }
        }
        for _ in 0..200 {
            if hi - lo <= 1e-14 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if tr(mid)? < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Compares the primitives of A_r^{b1,b2}H, with the scalers of
/// [`kasahara_scalers`], against the expected limit for each r. For the
/// rapid shapes `x_grid` holds trace-normalised positions T.
pub fn rescaling_limit_check(
    h: &Hamiltonian,
    r_values: &[f64],
    x_grid: &[f64],
    shape: LimitShape,
) -> Result<Vec<RescalingRow>> {
    if r_values.is_empty() || x_grid.is_empty() {
        return Err(Error::Domain("r and x grids must be nonempty".into()));
    }
    if r_values.windows(2).any(|w| w[1] <= w[0]) || r_values[0] <= 0.0 {
        return Err(Error::Domain("r values must be positive and increasing".into()));
    }
    if x_grid.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::Domain("x grid must be positive".into()));
    }
    if let LimitShape::Regular { rho1, rho2, delta } = shape {
        if !(rho1 > 0.0 && rho2 > 0.0 && rho1.is_finite() && rho2.is_finite()) || !(delta.abs() <= 1.0) {
            return Err(Error::Hypotheses(format!(
                "limit shape needs finite positive indices and |δ| ≤ 1, got ({rho1}, {rho2}, {delta})"
            )));
        }
    }
    r_values
        .par_iter()
        .map(|&r| {
            let t = breve_t(h, r)?;
            let n = Normalised {
                h,
                t,
                base: h.primitive(t)?,
            };
            let mut dev = [0.0f64; 3];
            for &x in x_grid {
                let d = match shape {
                    LimitShape::Regular { rho1, rho2, delta } => {
                        let m = n.at(x)?;
                        let r3 = 0.5 * (rho1 + rho2);
                        [
                            (m[0] / x.powf(rho1) - 1.0).abs(),
                            (m[1] / x.powf(rho2) - 1.0).abs(),
                            (m[2] - delta * x.powf(r3)).abs() / x.powf(r3),
                        ]
                    }
                    LimitShape::RapidM2 | LimitShape::RapidM1 => {
                        let y = n.trace_inverse(x)?;
                        let m = n.at(y)?;
                        let (first, second) = (x.min(1.0), (x - 1.0).max(0.0));
                        let (e1, e2) = if shape == LimitShape::RapidM2 {
                            (first, second)
                        } else {
                            (second, first)
                        };
                        [(m[0] - e1).abs(), (m[1] - e2).abs(), m[2].abs()]
                    }
                };
                for k in 0..3 {
                    dev[k] = dev[k].max(d[k]);
                }
            }
            Ok(RescalingRow {
                r,
                breve_t: t,
                deviation: dev,
            })
        })
        .collect()
}
