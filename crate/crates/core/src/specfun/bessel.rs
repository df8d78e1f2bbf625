//! The entire Bessel-type function 𝔍_ν(x) = Γ(ν+1)(x/2)^{−ν} J_ν(x) = ₀F₁(; ν+1; −x²/4).

use super::gamma::gamma_complex;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

// Below this modulus the power series is summed directly; above it the
// Hankel expansion of J_ν takes over. At the switch the series loses about
// e^{13}·ε to cancellation and the asymptotic tail is below 1e-11.
const SERIES_RADIUS: f64 = 13.0;

fn series(nu: f64, x: Complex64) -> Result<Complex64> {
    let w = -x * x / 4.0;
    let b = nu + 1.0;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for n in 0..10_000 {
        let nf = n as f64;
        term *= w / ((nf + 1.0) * (b + nf));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence("0F1 series".into()))
}

/// Hankel's expansion J_ν(x) ≈ √(2/(πx)) (P cos χ − Q sin χ), χ = x − νπ/2 − π/4,
/// valid for |arg x| < π. Returns the pair (P, Q).
fn hankel_pq(nu: f64, x: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    // a_k(ν) / x^k with a_k = Π_{j≤k} (μ − (2j−1)²) / (k! 8^k)
    let mut term = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        let size = next.norm();
        if size > last {
            break;
        }
        last = size;
        term = next;
        // Even k contribute to P with sign (−1)^{k/2}; odd k to Q with sign (−1)^{(k−1)/2}.
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if size <= 1e-17 {
            break;
        }
    }
    (p, q)
}

/// 𝔍_ν(x) for real ν > −1 and complex x.
pub fn bessel_frak(nu: f64, x: Complex64) -> Result<Complex64> {
    if !(nu > -1.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("bessel_frak requires ν > −1, got {nu}")));
    }
    if x.norm() < SERIES_RADIUS {
        return series(nu, x);
    }
    // 𝔍_ν is even, so fold into the closed right half-plane.
    let x = if x.re < 0.0 { -x } else { x };
    let (p, q) = hankel_pq(nu, x);
    let chi = x - nu * PI / 2.0 - PI / 4.0;
    let j = (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin());
    let pre = gamma_complex(Complex64::new(nu + 1.0, 0.0))? * (x / 2.0).powf(-nu);
    let v = pre * j;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::Overflow);
    }
    Ok(v)
}
