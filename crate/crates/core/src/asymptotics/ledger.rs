use crate::error::{Error, Result};
use crate::power_model::{PowerLaw, DEGENERATE_KAPPA};
use crate::specfun::{gamma_complex, gamma_ratio};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// α from the indices of m1 and m2; an infinite index marks rapid variation.
pub fn alpha_from_indices(rho1: f64, rho2: f64) -> Result<f64> {
    if !(rho1 > 0.0 && rho2 > 0.0) {
        return Err(Error::Domain(format!("indices must be positive, got ({rho1}, {rho2})")));
    }
    match (rho1.is_infinite(), rho2.is_infinite()) {
        (true, true) => Err(Error::Domain("both indices are infinite".into())),
        (false, true) => Ok(1.0),
        (true, false) => Ok(-1.0),
        (false, false) => Ok((rho2 - rho1) / (rho2 + rho1)),
    }
}

/// √(1 − α²), the largest admissible |δ|.
pub fn delta_bound(alpha: f64) -> f64 {
    (1.0 - alpha * alpha).max(0.0).sqrt()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.abs() <= 1.0) {
        return Err(Error::Domain(format!("α = {alpha} outside [−1, 1]")));
    }
    Ok(())
}

/// √(1 − α² − δ²), or `None` on the boundary |δ| = √(1 − α²).
fn interior_gap(alpha: f64, delta: f64) -> Result<Option<f64>> {
    check_alpha(alpha)?;
    let b = delta_bound(alpha);
    if !(delta.abs() <= b * (1.0 + 1e-12) + 1e-15) {
        return Err(Error::Domain(format!("|δ| = {} exceeds √(1 − α²) = {b}", delta.abs())));
    }
    let s2 = ((b - delta.abs()) * (b + delta.abs())).max(0.0);
    if s2 <= DEGENERATE_KAPPA * b * b {
        Ok(None)
    } else {
        Ok(Some(s2.sqrt()))
    }
}

/// ω as a function of (α, δ).
pub fn omega_from_alpha_delta(alpha: f64, delta: f64) -> Result<Complex64> {
    let gap = interior_gap(alpha, delta)?;
    if alpha.abs() == 1.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if alpha == 0.0 {
        return Ok(Complex64::new((1.0 - delta * delta).max(0.0).sqrt(), -delta));
    }
    let g = gamma_complex(Complex64::new(-alpha, 0.0))? / gamma_complex(Complex64::new(2.0 + alpha, 0.0))?;
    match gap {
        Some(s) => {
            let tau = delta / s;
            let num = Complex64::new(1.0 + 0.5 * alpha, 0.5 * alpha * tau);
            let den = Complex64::new(-0.5 * alpha, 0.5 * alpha * tau);
            Ok((2.0 * s).powf(1.0 + alpha) * g * gamma_ratio(num, den)?)
        }
        None => Ok(Complex64::new(0.0, alpha * delta).powf(1.0 + alpha) * g),
    }
}

/// arg ω as a function of (α, δ); decreasing and odd in δ.
pub fn arg_omega_from_alpha_delta(alpha: f64, delta: f64) -> Result<f64> {
    let gap = interior_gap(alpha, delta)?;
    if alpha == 0.0 {
        return Ok(-delta.clamp(-1.0, 1.0).asin());
    }
    let half = FRAC_PI_2 * (1.0 - alpha.abs());
    match gap {
        _ if half == 0.0 => Ok(0.0),
        Some(s) => Ok(-(half.tan() * (PI * alpha.abs() * delta / (2.0 * s)).tanh()).atan()),
        None => Ok(-delta.signum() * half),
    }
}

/// Distance (π/2)(1 − |α|) − |arg ω| from the edge of the sector. Near the
/// edge arg ω itself no longer resolves δ in double precision; this form
/// keeps full relative accuracy until e^{−2x} underflows.
pub fn arg_omega_gap(alpha: f64, delta: f64) -> Result<f64> {
    let gap = interior_gap(alpha, delta)?;
    let half = FRAC_PI_2 * (1.0 - alpha.abs());
    if alpha == 0.0 {
        // π/2 − asin|δ| without cancellation
        return Ok(2.0 * ((1.0 - delta.abs().min(1.0)) / 2.0).sqrt().asin());
    }
    match gap {
        _ if half == 0.0 => Ok(0.0),
        None => Ok(0.0),
        Some(s) => {
            let x = PI * alpha.abs() * delta.abs() / (2.0 * s);
            let u = 2.0 / ((2.0 * x).exp() + 1.0);
            let t = half.tan();
            Ok((t * u / (1.0 + t * t * (1.0 - u))).atan())
        }
    }
}

/// δ from (α, arg ω), the inverse of [`arg_omega_from_alpha_delta`].
pub fn delta_from_arg_omega(alpha: f64, arg: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let half = FRAC_PI_2 * (1.0 - alpha.abs());
    if !(arg.abs() <= half + 1e-12) {
        return Err(Error::Domain(format!(
            "arg ω = {arg} outside the cone of half-width {half}"
        )));
    }
    if alpha == 0.0 {
        return Ok(-arg.sin());
    }
    delta_from_arg_gap(alpha, -arg.signum(), (half - arg.abs()).max(0.0))
}

/// δ from the sign of δ and the gap of [`arg_omega_gap`].
pub fn delta_from_arg_gap(alpha: f64, sign: f64, gap: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let half = FRAC_PI_2 * (1.0 - alpha.abs());
    if !(gap >= 0.0 && gap <= half + 1e-12) {
        return Err(Error::Domain(format!("gap {gap} outside [0, {half}]")));
    }
    let sign = if sign < 0.0 { -1.0 } else { 1.0 };
    if alpha == 0.0 {
        return Ok(sign * gap.min(half).cos());
    }
    let b = delta_bound(alpha);
    if half == 0.0 || gap >= half {
        return Ok(0.0);
    }
    if gap == 0.0 {
        return Ok(sign * b);
    }
    // 1 − tanh(x) = 1 − tan(half − gap)/tan(half), formed without cancellation
    let u = gap.sin() / (half.sin() * (half - gap).cos());
    let x = 0.5 * ((2.0 - u) / u).ln();
    let c = 2.0 * x / (PI * alpha.abs());
    Ok(sign * b * c / c.hypot(1.0))
}

/// (α, ω′) with q_H(ri) ∼ iω′r^α for primitives m_i ∼ c_i t^{ρ_i}.
pub fn predict_power_asymptotics(c1: f64, c2: f64, c3: f64, rho1: f64, rho2: f64) -> Result<PowerLaw> {
    if !(c1 > 0.0 && c2 > 0.0 && c3.is_finite()) {
        return Err(Error::Domain("need c1, c2 > 0 and finite c3".into()));
    }
    if !(rho1.is_finite() && rho2.is_finite()) {
        return Err(Error::Domain("indices must be finite".into()));
    }
    let alpha = alpha_from_indices(rho1, rho2)?;
    let delta = c3 / (c1 * c2).sqrt();
    let omega = omega_from_alpha_delta(alpha, delta)?;
    let omega_prime = omega * c1.powf(0.5 * (alpha + 1.0)) * c2.powf(0.5 * (alpha - 1.0));
    PowerLaw::new(alpha, omega_prime)
}

/// The constants attached to a Hamiltonian with regularly or rapidly
/// varying primitives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsLedger {
    pub rho1: f64,
    pub rho2: f64,
    /// Index of the trace primitive, min(ρ1, ρ2).
    pub sigma: f64,
    pub alpha: f64,
    pub delta: f64,
    pub omega: Complex64,
    pub arg_omega: f64,
    /// Present when both indices are finite.
    pub omega_prime: Option<Complex64>,
    /// Leading coefficients of m1, m2, m3.
    pub c: [f64; 3],
}

/// Builds the ledger from indices and leading coefficients. With an
/// infinite index the off-diagonal limit δ is 0.
pub fn constants_ledger(rho1: f64, rho2: f64, c: [f64; 3]) -> Result<ConstantsLedger> {
    let alpha = alpha_from_indices(rho1, rho2)?;
    let finite = rho1.is_finite() && rho2.is_finite();
    let delta = if finite {
        if !(c[0] > 0.0 && c[1] > 0.0) {
            return Err(Error::Domain("need c1, c2 > 0".into()));
        }
        c[2] / (c[0] * c[1]).sqrt()
    } else {
        0.0
    };
    let omega = omega_from_alpha_delta(alpha, delta)?;
    let omega_prime = if finite {
        Some(predict_power_asymptotics(c[0], c[1], c[2], rho1, rho2)?.omega)
    } else {
        None
    };
    Ok(ConstantsLedger {
        rho1,
        rho2,
        sigma: rho1.min(rho2),
        alpha,
        delta,
        omega,
        arg_omega: arg_omega_from_alpha_delta(alpha, delta)?,
        omega_prime,
        c,
    })
}
