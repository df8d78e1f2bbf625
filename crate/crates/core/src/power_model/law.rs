use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Slack on the sector condition |arg ω| ≤ (π/2)(1 − |α|).
pub const SECTOR_SLACK: f64 = 1e-12;

/// The power Nevanlinna function Q_{α,ω}(z) = iω(z/i)^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub alpha: f64,
    pub omega: Complex64,
}

impl PowerLaw {
    pub fn new(alpha: f64, omega: Complex64) -> Result<Self> {
        let law = PowerLaw { alpha, omega };
        law.validate()?;
        Ok(law)
    }

    /// Half-opening (π/2)(1 − |α|) of the admissible sector for ω.
    pub fn sector(&self) -> f64 {
        FRAC_PI_2 * (1.0 - self.alpha.abs())
    }

    /// Checks that Q_{α,ω} is a Nevanlinna function.
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.omega.re.is_finite() && self.omega.im.is_finite()) {
            return Err(Error::Domain("power law must be finite".into()));
        }
        if self.omega == Complex64::new(0.0, 0.0) {
            return Ok(());
        }
        if self.alpha.abs() > 1.0 {
            return Err(Error::Domain(format!("α = {} lies outside [−1, 1]", self.alpha)));
        }
        let arg = self.omega.arg();
        if arg.abs() > self.sector() + SECTOR_SLACK {
            return Err(Error::Domain(format!(
                "arg ω = {arg} outside the sector of half-width {}",
                self.sector()
            )));
        }
        Ok(())
    }

    /// Q_{α,ω}(z).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        q_power_eval(self, z)
    }

    /// Law of the rescaled Hamiltonian: ω ↦ ω·(b1/b2)·r^α.
    pub fn rescaled(&self, r: f64, b1: f64, b2: f64) -> PowerLaw {
        PowerLaw {
            alpha: self.alpha,
            omega: self.omega * (b1 / b2) * r.powf(self.alpha),
        }
    }
}

/// iω(z/i)^α on the principal branch.
pub fn q_power_eval(law: &PowerLaw, z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let w = z / i;
    let p = if law.alpha == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if law.alpha == 1.0 {
        w
    } else if law.alpha == -1.0 {
        w.inv()
    } else {
        w.powf(law.alpha)
    };
    i * law.omega * p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_values() {
        let l = PowerLaw::new(0.0, c(1.0, 0.0)).unwrap();
        assert_eq!(l.eval(c(0.0, 1.0)), c(0.0, 1.0));
        let l = PowerLaw::new(1.0, c(2.0, 0.0)).unwrap();
        let z = c(0.3, 1.7);
        assert!((l.eval(z) - 2.0 * z).norm() < 1e-15);
        let l = PowerLaw::new(-1.0, c(1.0, 0.0)).unwrap();
        assert!((l.eval(c(0.0, 2.0)) - c(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn sector_membership() {
        assert!(PowerLaw::new(0.5, Complex64::from_polar(1.0, -0.7)).is_ok());
        assert!(PowerLaw::new(0.5, Complex64::from_polar(1.0, -0.8)).is_err());
        assert!(PowerLaw::new(2.0, c(0.0, 0.0)).is_ok());
        assert!(PowerLaw::new(1.5, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn values_are_nevanlinna() {
        let l = PowerLaw::new(-0.3, Complex64::from_polar(2.0, 0.9)).unwrap();
        for k in 1..40 {
            let z = Complex64::from_polar(0.1 * k as f64, 0.08 * k as f64);
            assert!(l.eval(z).im >= -1e-14);
        }
    }
}
