use super::data::{PowerClass, PowerData};
use crate::error::{Error, Result};
use crate::specfun::{bessel_frak, kummer_m};
use num_complex::Complex64;

/// Parameters a±, b± of the Kummer functions in the power-model solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParameters {
    pub a_plus: Complex64,
    pub a_minus: Complex64,
    pub b_plus: Complex64,
    pub b_minus: Complex64,
}

impl KummerParameters {
    pub fn from_data(data: &PowerData) -> Result<Self> {
        check_hypotheses(data)?;
        let q = data.rho2 / data.rho3;
        let skew = Complex64::new(0.0, -data.kappa3 / data.kappa())
            * ((data.rho1 - data.rho2) / (data.rho1 + data.rho2));
        let half = |s: f64| (Complex64::new(1.0 + s * q, 0.0) + skew) * 0.5;
        Ok(KummerParameters {
            a_plus: half(1.0),
            a_minus: half(-1.0),
            b_plus: Complex64::new(1.0 + q, 0.0),
            b_minus: Complex64::new(1.0 - q, 0.0),
        })
    }
}

fn check_hypotheses(data: &PowerData) -> Result<()> {
    data.validate()?;
    if data.class() != PowerClass::Full {
        return Err(Error::Hypotheses("need κ1, κ2 > 0".into()));
    }
    if data.rho1 == data.rho2 {
        return Err(Error::Hypotheses("need ρ1 ≠ ρ2".into()));
    }
    let k = data.kappa();
    if k * k <= super::DEGENERATE_KAPPA * data.kappa1 * data.kappa2 {
        return Err(Error::Hypotheses("need κ > 0".into()));
    }
    Ok(())
}

/// (w11, w21) of a power Hamiltonian at (x, z) in Kummer form.
pub fn solution_entries_power(data: &PowerData, x: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let p = KummerParameters::from_data(data)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("x = {x} must be nonnegative")));
    }
    if x == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let xi = Complex64::new(0.0, -2.0 * data.kappa() / data.rho3) * z * x.powf(data.rho3);
    let e = (-0.5 * xi).exp();
    let w11 = e * kummer_m(p.a_minus, p.b_minus, xi)?;
    let w21 = -(data.kappa2 / data.rho2) * z * x.powf(data.rho2) * e * kummer_m(p.a_plus, p.b_plus, xi)?;
    Ok((w11, w21))
}

/// (w11, w21) for diagonal power data through the entire Bessel function 𝔍_ν.
pub fn solution_entries_bessel(data: &PowerData, x: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
    check_hypotheses(data)?;
    if data.kappa3 != 0.0 {
        return Err(Error::Hypotheses("the Bessel form needs κ3 = 0".into()));
    }
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("x = {x} must be nonnegative")));
    }
    let nu = data.rho2 / (data.rho1 + data.rho2);
    let y = z * ((data.kappa1 * data.kappa2).sqrt() / data.rho3 * x.powf(data.rho3));
    let w11 = bessel_frak(-nu, y)?;
    let w21 = -(data.kappa2 / data.rho2) * z * x.powf(data.rho2) * bessel_frak(nu, y)?;
    Ok((w11, w21))
}

/// Sixth-order central second difference.
fn second_difference7<F: Fn(f64) -> Result<Complex64>>(f: &F, x: f64, h: f64) -> Result<Complex64> {
    let outer = f(x + 3.0 * h)? + f(x - 3.0 * h)?;
    let mid = f(x + 2.0 * h)? + f(x - 2.0 * h)?;
    let inner = f(x + h)? + f(x - h)?;
    Ok((2.0 * outer - 27.0 * mid + 270.0 * inner - 490.0 * f(x)?) / (180.0 * h * h))
}

fn first_difference<F: Fn(f64) -> Result<Complex64>>(f: &F, x: f64, h: f64) -> Result<Complex64> {
    Ok((-f(x + 2.0 * h)? + 8.0 * f(x + h)? - 8.0 * f(x - h)? + f(x - 2.0 * h)?) / (12.0 * h))
}

/// Relative residual of the scalar equation
/// (y′/h2)′ + [z(h3/h2)′ + z²(h1 − h3²/h2)]y = 0 for y = w11(·, z) at x,
/// using central differences with step `rel_step`·x.
pub fn scalar_equation_residual(data: &PowerData, x: f64, z: Complex64, rel_step: f64) -> Result<f64> {
    let y = |s: f64| Ok(solution_entries_power(data, s, z)?.0);
    let h = rel_step * x;
    let ent = |s: f64| data.entries(s);
    // flux p(s) = y′(s)/h2(s), differenced once more
    let flux = |s: f64| -> Result<Complex64> { Ok(first_difference(&y, s, 0.5 * h)? / ent(s)[1]) };
    let dflux = first_difference(&flux, x, h)?;
    let ratio = |s: f64| -> Result<Complex64> {
        let e = ent(s);
        Ok(Complex64::new(e[2] / e[1], 0.0))
    };
    let dratio = first_difference(&ratio, x, h)?;
    let e = ent(x);
    let yx = y(x)?;
    let pot = z * dratio + z * z * (e[0] - e[2] * e[2] / e[1]);
    let res = dflux + pot * yx;
    Ok(res.norm() / (dflux.norm() + (pot * yx).norm()).max(f64::MIN_POSITIVE))
}

/// u₊ and u₋ solving u″ + (c x^{γ−2} − d² x^{2γ−2})u = 0.
pub fn kummer_pair(c: Complex64, d: Complex64, gamma: f64, x: f64) -> Result<(Complex64, Complex64)> {
    if d == Complex64::new(0.0, 0.0) || !(gamma > 0.0) || gamma == 1.0 {
        return Err(Error::Domain("need d ≠ 0 and γ > 0 with γ ≠ 1".into()));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    let xg = x.powf(gamma);
    let arg = 2.0 * d * xg / gamma;
    let e = (-d * xg / gamma).exp();
    let cd = c / d;
    let ap = (gamma + 1.0 - cd) / (2.0 * gamma);
    let am = (gamma - 1.0 - cd) / (2.0 * gamma);
    let bp = Complex64::new((gamma + 1.0) / gamma, 0.0);
    let bm = Complex64::new((gamma - 1.0) / gamma, 0.0);
    let up = x * e * kummer_m(ap, bp, arg)?;
    let um = e * kummer_m(am, bm, arg)?;
    Ok((up, um))
}

/// Diagnostics of the Kummer-type solution pair at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerCheck {
    /// max over u± of |u″ + qu| / (|u″| + (|c|x^{γ−2} + |d|²x^{2γ−2})|u|), with
    /// u″ from a seven-point stencil.
    pub residual: f64,
    /// u₊u₋′ − u₊′u₋, which the equation forces to be constant.
    pub wronskian: Complex64,
    /// max(|u₊ − x + c x^{γ+1}/(γ(γ+1))|/x, |u₋ − 1 + c x^γ/((γ−1)γ)|),
    /// of order x^{2γ} as x → 0.
    pub expansion_defect: f64,
}

/// Finite-difference check of the solution pair at x. The residual is the
/// best over a ladder of steps x/5, x/10, …, x/80, each capped by the local
/// length scale; no single step suits both the x^γ singularity at 0 and
/// the rounding floor when u″ is small.
pub fn kummer_solutions_check(c: Complex64, d: Complex64, gamma: f64, x: f64) -> Result<KummerCheck> {
    let up = |s: f64| Ok(kummer_pair(c, d, gamma, s)?.0);
    let um = |s: f64| Ok(kummer_pair(c, d, gamma, s)?.1);
    let q_pos = c * x.powf(gamma - 2.0);
    let q_neg = d * d * x.powf(2.0 * gamma - 2.0);
    let q = q_pos - q_neg;
    let scale = q_pos.norm() + q_neg.norm();
    let (u_p, u_m) = kummer_pair(c, d, gamma, x)?;
    let mut residual = 0.0f64;
    for (u, f) in [(u_p, &up as &dyn Fn(f64) -> Result<Complex64>), (u_m, &um)] {
        let mut best = f64::INFINITY;
        for k in 0..5 {
            let h = x.min(scale.powf(-0.5)) / (5.0 * f64::from(1u32 << k));
            let upp = second_difference7(&f, x, h)?;
            let r = (upp + q * u).norm() / (upp.norm() + scale * u.norm()).max(f64::MIN_POSITIVE);
            best = best.min(r);
        }
        residual = residual.max(best);
    }
    let h = 1e-3 * x;
    let dp = first_difference(&up, x, h)?;
    let dm = first_difference(&um, x, h)?;
    let xg = x.powf(gamma);
    let ep = (u_p - (x - c / (gamma * (gamma + 1.0)) * x * xg)).norm() / x;
    let em = (u_m - (1.0 - c / ((gamma - 1.0) * gamma) * xg)).norm();
    Ok(KummerCheck {
        residual,
        wronskian: u_p * dm - dp * u_m,
        expansion_defect: ep.max(em),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn origin_is_identity_column() {
        let d = PowerData::new(1.0, 2.0, 1.0, 1.0, 0.3).unwrap();
        assert_eq!(
            solution_entries_power(&d, 0.0, c(0.0, 1.0)).unwrap(),
            (c(1.0, 0.0), c(0.0, 0.0))
        );
    }

    #[test]
    fn kummer_and_bessel_forms_agree() {
        for (r1, r2, k1, k2) in [(1.0, 2.0, 1.0, 1.0), (2.0, 1.0, 0.5, 3.0), (0.5, 1.7, 2.0, 0.4)] {
            let d = PowerData::new(r1, r2, k1, k2, 0.0).unwrap();
            for (x, z) in [(0.3, c(0.0, 1.0)), (1.0, c(1.0, 1.0)), (2.0, c(-0.5, 2.0))] {
                let (a, b) = solution_entries_power(&d, x, z).unwrap();
                let (p, q) = solution_entries_bessel(&d, x, z).unwrap();
                assert!((a - p).norm() <= 1e-10 * a.norm().max(1.0), "{r1} {r2} {x}: {a} vs {p}");
                assert!((b - q).norm() <= 1e-10 * b.norm().max(1.0), "{r1} {r2} {x}: {b} vs {q}");
            }
        }
    }

    #[test]
    fn scalar_equation_holds() {
        for k3 in [0.0, 0.4, -0.8] {
            let d = PowerData::new(1.0, 2.5, 1.0, 1.2, k3).unwrap();
            for x in [0.2, 0.7, 1.5] {
                let r = scalar_equation_residual(&d, x, c(0.5, 1.0), 1e-3).unwrap();
                assert!(r <= 1e-6, "k3={k3} x={x} r={r}");
            }
        }
    }

    #[test]
    fn kummer_pair_residual_and_wronskian() {
        let (cc, dd, g) = (c(1.0, 0.0), c(1.0, 1.0), 1.5);
        let mut w0 = None;
        for k in 0..=20 {
            let x = 0.01 * (200f64).powf(k as f64 / 20.0);
            let chk = kummer_solutions_check(cc, dd, g, x).unwrap();
            assert!(chk.residual <= 1e-6, "x={x} r={}", chk.residual);
            let w = *w0.get_or_insert(chk.wronskian);
            assert!((chk.wronskian - w).norm() <= 1e-8 * w.norm(), "x={x}");
        }
    }

    #[test]
    fn small_x_expansion() {
        // c = 0, d = 1, γ = 2: u₋ = 1 + O(x⁴)
        let mut prev = f64::INFINITY;
        for x in [0.1, 0.05, 0.025, 0.0125] {
            let (_, um) = kummer_pair(c(0.0, 0.0), c(1.0, 0.0), 2.0, x).unwrap();
            let lead = ((um - 1.0) / (x * x)).norm();
            assert!(lead < prev);
            prev = lead;
        }
        assert!(prev < 1e-3);
        let chk = kummer_solutions_check(c(0.7, 0.2), c(1.0, -0.5), 1.5, 1e-2).unwrap();
        assert!(chk.expansion_defect <= 10.0 * 1e-2f64.powf(3.0));
    }

    #[test]
    fn hypotheses_enforced() {
        let d = PowerData::new(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(solution_entries_power(&d, 1.0, c(0.0, 1.0)), Err(Error::Hypotheses(_))));
        let d = PowerData::new(1.0, 2.0, 1.0, 1.0, 0.2).unwrap();
        assert!(matches!(solution_entries_bessel(&d, 1.0, c(0.0, 1.0)), Err(Error::Hypotheses(_))));
    }
}
