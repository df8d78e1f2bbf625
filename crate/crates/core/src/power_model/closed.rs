use super::data::{PowerClass, PowerData};
use super::law::PowerLaw;
use crate::error::{Error, Result};
use crate::hamiltonian::{Hamiltonian, Segment, Sym2};
use crate::specfun::{gamma_complex, gamma_ratio};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// κ² ≤ DEGENERATE_KAPPA·κ1κ2 selects the κ = 0 branch of the closed form.
pub const DEGENERATE_KAPPA: f64 = 1e-14;
/// Angle tolerance of the κ3 bisection in [`inverse_problem`].
pub const INVERSE_ANGLE_TOL: f64 = 1e-12;

fn require_full(data: &PowerData) -> Result<()> {
    data.validate()?;
    if data.class() != PowerClass::Full {
        return Err(Error::Domain(
            "boundary data with a vanishing κ_i; see boundary_case".into(),
        ));
    }
    Ok(())
}

fn is_degenerate(data: &PowerData) -> bool {
    let k = data.kappa();
    k * k <= DEGENERATE_KAPPA * data.kappa1 * data.kappa2
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The power law Q_{α,ω} with q_H = Q_{α,ω} for a power Hamiltonian with
/// κ1, κ2 > 0.
pub fn closed_form_q(data: &PowerData) -> Result<PowerLaw> {
    require_full(data)?;
    let alpha = data.alpha();
    let (k2, k3, r3) = (data.kappa2, data.kappa3, data.rho3);
    let kappa = data.kappa();
    let omega = if data.rho1 == data.rho2 {
        Complex64::new(kappa, -k3) / k2
    } else {
        let g = gamma_complex(real(-alpha))? / gamma_complex(real(1.0 + alpha))?;
        let pre = real(k2 * r3.powf(alpha)).inv();
        if is_degenerate(data) {
            // principal branch of (iακ3)^{1+α}
            let base = Complex64::new(0.0, alpha * k3);
            pre * base.powf(1.0 + alpha) * g
        } else {
            let tau = k3 / kappa;
            let num = Complex64::new(1.0 + 0.5 * alpha, 0.5 * alpha * tau);
            let den = Complex64::new(-0.5 * alpha, 0.5 * alpha * tau);
            let w = pre * (2.0 * kappa).powf(1.0 + alpha) * g * gamma_ratio(num, den)?;
            // For large |τ| the Γ-ratio phase carries an absolute error of
            // order ε·|τ|ln|τ|; the tanh form of the argument does not.
            Complex64::from_polar(w.norm(), arg_omega(data)?)
        }
    };
    PowerLaw::new(alpha, omega)
}

/// arg ω of the closed-form law, decreasing and odd in κ3.
pub fn arg_omega(data: &PowerData) -> Result<f64> {
    require_full(data)?;
    let alpha = data.alpha();
    let k3 = data.kappa3;
    let kappa = data.kappa();
    if data.rho1 == data.rho2 {
        return Ok(-k3.atan2(kappa));
    }
    let half = FRAC_PI_2 * (1.0 - alpha.abs());
    if is_degenerate(data) {
        return Ok(-k3.signum() * half);
    }
    Ok(-(half.tan() * (PI * alpha.abs() * k3 / (2.0 * kappa)).tanh()).atan())
}

/// Outcome for the boundary members of the power family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCase {
    QInfinite,
    QZero,
    Law(PowerLaw),
}

/// diag(𝟙_(0,ω], 𝟙_(ω,∞)), whose Weyl coefficient is ωz.
pub fn step_up(omega: f64) -> Result<Hamiltonian> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("switch point must be positive, got {omega}")));
    }
    Hamiltonian::piecewise(vec![
        Segment { len: omega, h: Sym2::new(1.0, 0.0, 0.0) },
        Segment { len: f64::INFINITY, h: Sym2::new(0.0, 1.0, 0.0) },
    ])
}

/// diag(𝟙_(1/ω,∞), 𝟙_(0,1/ω]), whose Weyl coefficient is −ω/z.
pub fn step_down(omega: f64) -> Result<Hamiltonian> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!("switch point must be positive, got {omega}")));
    }
    Hamiltonian::piecewise(vec![
        Segment { len: 1.0 / omega, h: Sym2::new(0.0, 1.0, 0.0) },
        Segment { len: f64::INFINITY, h: Sym2::new(1.0, 0.0, 0.0) },
    ])
}

fn is_diag(h: &Sym2, a: f64, b: f64) -> bool {
    h.h1 == a && h.h2 == b && h.h3 == 0.0
}

/// Recognises the boundary members: power or constant data with only one
/// diagonal entry, and the two-segment step Hamiltonians with α = ±1.
pub fn boundary_case(h: &Hamiltonian) -> Result<BoundaryCase> {
    match h {
        Hamiltonian::Power(d) => {
            d.validate()?;
            match d.class() {
                PowerClass::UpperOnly => Ok(BoundaryCase::QInfinite),
                PowerClass::LowerOnly => Ok(BoundaryCase::QZero),
                PowerClass::Full => Err(Error::NotBoundary),
            }
        }
        Hamiltonian::Piecewise(segs) if segs.len() == 1 => {
            let h = segs[0].h;
            if h.h2 == 0.0 && h.h3 == 0.0 && h.h1 > 0.0 {
                Ok(BoundaryCase::QInfinite)
            } else if h.h1 == 0.0 && h.h3 == 0.0 && h.h2 > 0.0 {
                Ok(BoundaryCase::QZero)
            } else {
                Err(Error::NotBoundary)
            }
        }
        Hamiltonian::Piecewise(segs) if segs.len() == 2 => {
            let (a, b) = (&segs[0], &segs[1]);
            if is_diag(&a.h, 1.0, 0.0) && is_diag(&b.h, 0.0, 1.0) {
                Ok(BoundaryCase::Law(PowerLaw::new(1.0, real(a.len))?))
            } else if is_diag(&a.h, 0.0, 1.0) && is_diag(&b.h, 1.0, 0.0) {
                Ok(BoundaryCase::Law(PowerLaw::new(-1.0, real(1.0 / a.len))?))
            } else {
                Err(Error::NotBoundary)
            }
        }
        _ => Err(Error::NotBoundary),
    }
}

/// Power data realising a prescribed law up to a positive factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSolution {
    pub data: PowerData,
    /// q_H = (1/γ)·iω̂(z/i)^α.
    pub gamma: f64,
}

/// Finds ρ from α and σ, and κ3 by bisection on arg ω, so that the power
/// Hamiltonian has Weyl coefficient (1/γ)·iω̂(z/i)^α.
pub fn inverse_problem(
    alpha: f64,
    omega_hat: Complex64,
    kappa1: f64,
    kappa2: f64,
    sigma: f64,
) -> Result<InverseSolution> {
    if !(alpha.abs() < 1.0) {
        return Err(Error::Domain(format!("α = {alpha} must lie in (−1, 1)")));
    }
    if !(kappa1 > 0.0 && kappa2 > 0.0 && sigma > 0.0) {
        return Err(Error::Domain("κ1, κ2 and σ must be positive".into()));
    }
    if omega_hat.norm() == 0.0 || !omega_hat.norm().is_finite() {
        return Err(Error::Domain("ω̂ must be finite and nonzero".into()));
    }
    let half = FRAC_PI_2 * (1.0 - alpha.abs());
    let target = omega_hat.arg();
    if target.abs() > half + 1e-12 {
        return Err(Error::Domain(format!(
            "arg ω̂ = {target} outside the admissible cone of half-width {half}"
        )));
    }
    let (rho1, rho2) = if alpha >= 0.0 {
        (sigma, (1.0 + alpha) / (1.0 - alpha) * sigma)
    } else {
        ((1.0 - alpha) / (1.0 + alpha) * sigma, sigma)
    };
    let s = (kappa1 * kappa2).sqrt();
    let make = |k3: f64| PowerData::new(rho1, rho2, kappa1, kappa2, k3);
    // arg ω is decreasing in κ3: bracket [lo, hi] with arg(lo) ≥ target ≥ arg(hi)
    let (mut lo, mut hi) = (-s, s);
    let mut k3 = 0.0;
    for _ in 0..200 {
        k3 = 0.5 * (lo + hi);
        let a = arg_omega(&make(k3)?)?;
        if (a - target).abs() <= 0.25 * INVERSE_ANGLE_TOL || hi - lo <= 1e-16 * s {
            break;
        }
        if a > target {
            lo = k3;
        } else {
            hi = k3;
        }
    }
    // the interval ends are exact solutions at the cone boundary
    for end in [-s, s] {
        let a = arg_omega(&make(end)?)?;
        if (a - target).abs() < (arg_omega(&make(k3)?)? - target).abs() {
            k3 = end;
        }
    }
    let data = make(k3)?;
    let omega = closed_form_q(&data)?.omega;
    Ok(InverseSolution {
        data,
        gamma: omega.norm() / omega_hat.norm(),
    })
}

/// (β, c) with ρ̃ = βρ and κ̃_i = βc^{ρ_i}κ_i, when the two data have the
/// same Weyl coefficient.
pub fn reparam_equivalent(d1: &PowerData, d2: &PowerData) -> Option<(f64, f64)> {
    if require_full(d1).is_err() || require_full(d2).is_err() {
        return None;
    }
    let beta = d2.rho1 / d1.rho1;
    if (d2.rho2 / d1.rho2 - beta).abs() > 1e-12 * beta {
        return None;
    }
    if (d1.kappa3 != 0.0 || d2.kappa3 != 0.0) && (d2.rho3 / d1.rho3 - beta).abs() > 1e-12 * beta {
        return None;
    }
    let c = (d2.kappa1 / (beta * d1.kappa1)).powf(1.0 / d1.rho1);
    if !(c > 0.0 && c.is_finite()) {
        return None;
    }
    let k2 = beta * c.powf(d1.rho2) * d1.kappa2;
    if (k2 - d2.kappa2).abs() > 1e-10 * d2.kappa2 {
        return None;
    }
    let k3 = beta * c.powf(d1.rho3) * d1.kappa3;
    if (k3 - d2.kappa3).abs() > 1e-10 * (d2.kappa1 * d2.kappa2).sqrt() {
        return None;
    }
    Some((beta, c))
}

/// Closed form of the rescaling A_r^{b1,b2} on power data.
pub fn rescale_power(data: &PowerData, r: f64, b1: f64, b2: f64) -> Result<PowerData> {
    data.validate()?;
    if !(r > 0.0 && b1 > 0.0 && b2 > 0.0) {
        return Err(Error::Domain("r, b1 and b2 must be positive".into()));
    }
    let s = b1 * b2 / r;
    let out = PowerData {
        kappa1: b1 * b1 * s.powf(data.rho1 - 1.0) * data.kappa1,
        kappa2: b2 * b2 * s.powf(data.rho2 - 1.0) * data.kappa2,
        kappa3: b1 * b2 * s.powf(data.rho3 - 1.0) * data.kappa3,
        ..*data
    };
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma_complex;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g(x: f64) -> f64 {
        gamma_complex(c(x, 0.0)).unwrap().re
    }

    /// ω from the |Γ|²·sin form, which avoids Γ at a negative argument.
    fn omega_sine_form(d: &PowerData) -> Complex64 {
        let a = d.alpha();
        let kappa = d.kappa();
        let tau = d.kappa3 / kappa;
        let gm = gamma_complex(c(1.0 + 0.5 * a, 0.5 * a * tau)).unwrap().norm_sqr();
        let s = (c(0.5 * PI * a, -0.5 * PI * a * tau)).sin() / (PI * a).sin();
        (2.0 * kappa).powf(a + 1.0) / (d.kappa2 * d.rho3.powf(a)) * gm / g(1.0 + a).powi(2) * s
    }

    #[test]
    fn equal_indices() {
        let l = closed_form_q(&PowerData::new(1.0, 1.0, 1.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!((l.alpha, l.omega), (0.0, c(1.0, 0.0)));
        let l = closed_form_q(&PowerData::new(1.0, 1.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((l.omega - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn gamma_quarter_example() {
        let l = closed_form_q(&PowerData::new(1.0, 3.0, 1.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(l.alpha, 0.5);
        let want = g(0.25) / (2.0 * g(0.75));
        assert!((l.omega - c(want, 0.0)).norm() < 1e-13, "{}", l.omega);
        assert!((want - 1.479_337_559_594_319_4).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_sine_form() {
        for (r1, r2) in [(1.0, 3.0), (2.0, 1.0), (1.5, 2.0), (0.4, 5.0)] {
            for t in [-0.9, -0.3, 0.0, 0.5, 0.95] {
                let d = PowerData::new(r1, r2, 1.3, 0.7, t * (1.3f64 * 0.7).sqrt()).unwrap();
                let w = closed_form_q(&d).unwrap().omega;
                let o = omega_sine_form(&d);
                assert!((w - o).norm() <= 1e-11 * o.norm(), "{r1} {r2} {t}: {w} vs {o}");
            }
        }
    }

    #[test]
    fn degenerate_branch_is_the_limit() {
        let (k1, k2) = (1.0, 2.0);
        let s = (k1 * k2 as f64).sqrt();
        for (r1, r2) in [(1.0, 2.0), (2.0, 1.0)] {
            for sign in [1.0, -1.0] {
                let lim = closed_form_q(&PowerData::new(r1, r2, k1, k2, sign * s).unwrap()).unwrap();
                let mut prev = f64::INFINITY;
                for k in 2..8 {
                    let k3 = sign * (1.0 - 10f64.powi(-k)) * s;
                    let w = closed_form_q(&PowerData::new(r1, r2, k1, k2, k3).unwrap()).unwrap();
                    let e = (w.omega - lim.omega).norm() / lim.omega.norm();
                    assert!(e < prev, "k={k} e={e}");
                    prev = e;
                }
                assert!(prev < 1e-3, "{prev}");
                assert!((lim.omega.arg() + sign * FRAC_PI_2 * (1.0 - lim.alpha.abs())).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn arg_matches_closed_form() {
        for (r1, r2) in [(1.0, 3.0), (2.0, 1.0), (1.0, 1.0), (0.7, 1.9)] {
            for t in [-1.0, -0.6, 0.0, 0.2, 0.99, 1.0] {
                let d = PowerData::new(r1, r2, 2.0, 0.5, t).unwrap();
                let w = closed_form_q(&d).unwrap().omega;
                assert!((arg_omega(&d).unwrap() - w.arg()).abs() < 1e-12, "{r1} {r2} {t}");
            }
        }
    }

    #[test]
    fn arg_examples() {
        assert_eq!(arg_omega(&PowerData::new(1.0, 2.0, 1.0, 1.0, 0.0).unwrap()).unwrap(), 0.0);
        let k3 = 0.5f64.sqrt();
        let a = arg_omega(&PowerData::new(1.0, 1.0, 1.0, 1.0, k3).unwrap()).unwrap();
        assert!((a + PI / 4.0).abs() < 1e-15);
        let d = PowerData::new(1.0, 3.0, 1.0, 1.0, 1.0).unwrap();
        assert!((arg_omega(&d).unwrap() + FRAC_PI_2 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn boundary_cases() {
        let h = Hamiltonian::power(PowerData::new(1.0, 1.0, 1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(boundary_case(&h).unwrap(), BoundaryCase::QInfinite);
        let h = Hamiltonian::power(PowerData::new(1.0, 1.0, 0.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(boundary_case(&h).unwrap(), BoundaryCase::QZero);
        match boundary_case(&step_up(3.0).unwrap()).unwrap() {
            BoundaryCase::Law(l) => assert_eq!((l.alpha, l.omega), (1.0, c(3.0, 0.0))),
            other => panic!("{other:?}"),
        }
        match boundary_case(&step_down(0.5).unwrap()).unwrap() {
            BoundaryCase::Law(l) => assert_eq!((l.alpha, l.omega), (-1.0, c(0.5, 0.0))),
            other => panic!("{other:?}"),
        }
        assert_eq!(boundary_case(&Hamiltonian::identity()), Err(Error::NotBoundary));
    }

    #[test]
    fn inverse_examples() {
        let s = inverse_problem(0.0, c(1.0, 0.0), 1.0, 1.0, 1.0).unwrap();
        assert_eq!((s.data.rho1, s.data.rho2), (1.0, 1.0));
        assert!(s.data.kappa3.abs() < 1e-12);
        assert!((s.gamma - 1.0).abs() < 1e-12);
        let s = inverse_problem(0.0, Complex64::from_polar(1.0, -PI / 4.0), 1.0, 1.0, 1.0).unwrap();
        assert!((s.data.kappa3 - 0.5f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn inverse_roundtrip() {
        for alpha in [-0.8, -0.2, 0.3, 0.7] {
            let half = FRAC_PI_2 * (1.0 - f64::abs(alpha));
            for frac in [-1.0, -0.5, 0.0, 0.9, 1.0] {
                let target = Complex64::from_polar(2.5, frac * half);
                let s = inverse_problem(alpha, target, 1.5, 0.5, 2.0).unwrap();
                assert_eq!(s.data.rho1.min(s.data.rho2), 2.0);
                let l = closed_form_q(&s.data).unwrap();
                assert!((l.alpha - alpha).abs() < 1e-14);
                assert!((l.omega.arg() - target.arg()).abs() <= 1e-10, "{alpha} {frac}");
                assert!((l.omega / s.gamma - target).norm() <= 1e-9 * target.norm());
            }
        }
        assert!(inverse_problem(0.5, Complex64::from_polar(1.0, 1.0), 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn reparam_examples() {
        let d1 = PowerData::new(1.0, 2.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(reparam_equivalent(&d1, &d1), Some((1.0, 1.0)));
        let d2 = PowerData::new(2.0, 4.0, 6.0, 18.0, 0.0).unwrap();
        let (b, cc) = reparam_equivalent(&d1, &d2).unwrap();
        assert!((b - 2.0).abs() < 1e-15 && (cc - 3.0).abs() < 1e-14);
        let l1 = closed_form_q(&d1).unwrap();
        let l2 = closed_form_q(&d2).unwrap();
        assert!((l1.omega - l2.omega).norm() < 1e-10 && l1.alpha == l2.alpha);
        let d3 = PowerData::new(1.0, 3.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(reparam_equivalent(&d1, &d3), None);
    }

    #[test]
    fn rescale_examples() {
        let d = PowerData::new(1.5, 2.5, 1.2, 0.8, 0.4).unwrap();
        assert_eq!(rescale_power(&d, 1.0, 1.0, 1.0).unwrap(), d);
        let gm = 1.7;
        let e = rescale_power(&d, 1.0, gm, 1.0).unwrap();
        assert!((e.kappa1 - gm.powf(d.rho1 + 1.0) * d.kappa1).abs() < 1e-14);
        assert!((e.kappa2 - gm.powf(d.rho2 - 1.0) * d.kappa2).abs() < 1e-14);
        assert!((e.kappa3 - gm.powf(d.rho3) * d.kappa3).abs() < 1e-14);
        let (r, b1, b2) = (3.0, 0.4, 2.2);
        let l = closed_form_q(&d).unwrap();
        let m = closed_form_q(&rescale_power(&d, r, b1, b2).unwrap()).unwrap();
        let want = l.rescaled(r, b1, b2);
        assert_eq!(m.alpha, l.alpha);
        assert!((m.omega - want.omega).norm() <= 1e-10 * want.omega.norm());
    }
}
