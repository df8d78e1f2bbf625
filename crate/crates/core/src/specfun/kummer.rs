//! Kummer's confluent hypergeometric function M(a, b, x) = ₁F₁(a; b; x).

use crate::error::{Error, Result};
use super::gamma::ln_gamma_complex;
use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

/// Largest |x| accepted by [`kummer_m`].
pub const KUMMER_MAX_ABS_X: f64 = 100.0;

const MAX_TERMS: usize = 10_000;
const STOP_RATIO: f64 = 1e-17;
/// Accepted relative error estimate before a more careful method is tried.
const TARGET: f64 = 1e-14;
const EPS: f64 = f64::EPSILON;
const EPS_DD: f64 = 1.0 / (1u128 << 104) as f64;
/// Below this |x| the asymptotic expansion is never more accurate.
const ASYMPTOTIC_MIN_ABS_X: f64 = 25.0;

type Cdd = Complex<TwoFloat>;

fn is_nonpositive_integer(b: Complex64) -> bool {
    b.im == 0.0 && b.re <= 0.0 && b.re == b.re.round()
}

/// A value with an estimate of its relative error.
#[derive(Clone, Copy)]
struct Estimate {
    value: Complex64,
    error: f64,
}

fn series(a: Complex64, b: Complex64, x: Complex64) -> Result<Estimate> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut biggest = 1.0f64;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * x / (nf + 1.0);
        sum += term;
        biggest = biggest.max(term.norm());
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::Overflow);
        }
        if term.norm() <= STOP_RATIO * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                let error = 4.0 * EPS * biggest * ((n + 1) as f64).sqrt() / sum.norm();
                return Ok(Estimate { value: sum, error });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "Kummer series for a={a}, b={b}, x={x} exceeded {MAX_TERMS} terms"
    )))
}

fn dd(z: Complex64) -> Cdd {
    Cdd::new(TwoFloat::from(z.re), TwoFloat::from(z.im))
}

/// 1/d with one Newton step. The crate's own dd/dd division loses the low
/// word because it forms 1 − d·(1/d) without a fused multiply-add.
fn dd_recip(d: TwoFloat) -> TwoFloat {
    let r0 = TwoFloat::from(d.hi().recip());
    let e = TwoFloat::from(1.0) - d * r0;
    r0 + r0 * e
}

fn dd_div(z: Cdd, w: Cdd) -> Cdd {
    let inv = dd_recip(w.re * w.re + w.im * w.im);
    let n = z * w.conj();
    Cdd::new(n.re * inv, n.im * inv)
}

fn dd_norm_hi(z: &Cdd) -> f64 {
    z.re.hi().hypot(z.im.hi())
}

/// The same series summed in double-double arithmetic, for arguments
/// where the terms cancel far beyond double precision.
fn series_dd(a: Complex64, b: Complex64, x: Complex64) -> Result<Estimate> {
    let (a, b, x) = (dd(a), dd(b), dd(x));
    let one = TwoFloat::from(1.0);
    let mut sum = Cdd::new(one, TwoFloat::from(0.0));
    let mut term = sum;
    let mut biggest = 1.0f64;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = TwoFloat::from(n as f64);
        let num = (a + nf) * x;
        let den = (b + nf) * (nf + one);
        term = dd_div(term * num, den);
        sum += term;
        let (t, s) = (dd_norm_hi(&term), dd_norm_hi(&sum));
        biggest = biggest.max(t);
        if !s.is_finite() {
            return Err(Error::Overflow);
        }
        if t <= 1e-33 * s {
            quiet += 1;
            if quiet == 3 {
                let value = Complex64::new(sum.re.hi() + sum.re.lo(), sum.im.hi() + sum.im.lo());
                let error = 8.0 * EPS_DD * biggest * ((n + 1) as f64).sqrt() / s + EPS;
                return Ok(Estimate { value, error });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!("double-double Kummer series exceeded {MAX_TERMS} terms")))
}

/// Σ (p)_s (q)_s / s! w^s up to its smallest term; returns the sum and
/// the magnitude of the first omitted term.
fn asymptotic_sum(p: Complex64, q: Complex64, w: Complex64) -> (Complex64, f64) {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = sum;
    let mut last = 1.0f64;
    for s in 0..200 {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) / (sf + 1.0) * w;
        let m = next.norm();
        if m >= last || m == 0.0 {
            return (sum, if m == 0.0 { 0.0 } else { last });
        }
        term = next;
        sum += term;
        last = m;
        if m <= 1e-17 * sum.norm() {
            return (sum, m);
        }
    }
    (sum, last)
}

/// Γ(b)/Γ(c) · w as exp of logs; zero when c is a pole of Γ.
fn scaled(b: Complex64, c: Complex64, log_w: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((ln_gamma_complex(b)? - ln_gamma_complex(c)? + log_w).exp())
}

/// Large-|x| expansion for Re x ≥ 0:
/// M ∼ Γ(b)/Γ(a) eˣ x^{a−b} Σ (1−a)_s(b−a)_s/s! x^{−s} plus
/// Γ(b)/Γ(b−a) e^{±iπa} x^{−a} Σ (a)_s(a−b+1)_s/s! (−x)^{−s},
/// with the upper sign for Im x ≥ 0.
fn asymptotic(a: Complex64, b: Complex64, x: Complex64) -> Result<Estimate> {
    let one = Complex64::new(1.0, 0.0);
    let ln_x = x.ln();
    let sign = if x.im >= 0.0 { 1.0 } else { -1.0 };
    let (s1, e1) = asymptotic_sum(one - a, b - a, one / x);
    let (s2, e2) = asymptotic_sum(a, a - b + 1.0, -one / x);
    let p1 = scaled(b, a, x + (a - b) * ln_x)?;
    let p2 = scaled(b, b - a, Complex64::new(0.0, sign * std::f64::consts::PI) * a - a * ln_x)?;
    let value = p1 * s1 + p2 * s2;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow);
    }
    let size = value.norm();
    let error = (p1.norm() * (e1 + EPS * s1.norm()) + p2.norm() * (e2 + EPS * s2.norm())) / size;
    Ok(Estimate { value, error })
}

/// Best available evaluation for Re x ≥ 0.
fn evaluate(a: Complex64, b: Complex64, x: Complex64) -> Result<Complex64> {
    let plain = series(a, b, x)?;
    if plain.error <= TARGET {
        return Ok(plain.value);
    }
    let mut best = plain;
    if let Ok(d) = series_dd(a, b, x) {
        if d.error < best.error {
            best = d;
        }
    }
    if best.error > TARGET && x.norm() >= ASYMPTOTIC_MIN_ABS_X {
        if let Ok(s) = asymptotic(a, b, x) {
            if s.error < best.error {
                best = s;
            }
        }
    }
    Ok(best.value)
}

/// M(a, b, x) for |x| ≤ [`KUMMER_MAX_ABS_X`]. For Re x < 0 the Kummer
/// transformation M(a, b, x) = eˣ M(b − a, b, −x) is applied first. The
/// Taylor series is summed in double precision, and redone in
/// double-double arithmetic when its terms cancel; for large |x| the
/// asymptotic expansion is used if its error estimate is smaller.
pub fn kummer_m(a: Complex64, b: Complex64, x: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::ParameterPole(b.re));
    }
    if x.norm() > KUMMER_MAX_ABS_X {
        return Err(Error::NonConvergence(format!(
            "|x| = {} exceeds the supported range {KUMMER_MAX_ABS_X}",
            x.norm()
        )));
    }
    if x.re < 0.0 {
        let m = evaluate(b - a, b, -x)?;
        let v = x.exp() * m;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Overflow);
        }
        Ok(v)
    } else {
        evaluate(a, b, x)
    }
}
