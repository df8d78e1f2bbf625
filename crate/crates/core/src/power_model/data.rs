use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Relative slack allowed in κ3² ≤ κ1κ2 so that data built from
/// κ3 = ±√(κ1κ2) in floating point is still accepted.
const PSD_SLACK: f64 = 1e-12;

/// Index and coefficient data of a power Hamiltonian with entries κ_i t^{ρ_i − 1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerData {
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
}

/// Which membership class of the power family a datum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerClass {
    /// κ2 = κ3 = 0: only the upper-left entry is present.
    UpperOnly,
    /// κ1 = κ3 = 0: only the lower-right entry is present.
    LowerOnly,
    /// κ1, κ2 > 0.
    Full,
}

impl PowerData {
    /// Data with ρ3 = (ρ1 + ρ2)/2, validated.
    pub fn new(rho1: f64, rho2: f64, kappa1: f64, kappa2: f64, kappa3: f64) -> Result<Self> {
        let d = PowerData {
            rho1,
            rho2,
            rho3: 0.5 * (rho1 + rho2),
            kappa1,
            kappa2,
            kappa3,
        };
        d.validate()?;
        Ok(d)
    }

    /// Data with an explicit ρ3, validated.
    pub fn with_rho3(rho: [f64; 3], kappa: [f64; 3]) -> Result<Self> {
        let d = PowerData {
            rho1: rho[0],
            rho2: rho[1],
            rho3: rho[2],
            kappa1: kappa[0],
            kappa2: kappa[1],
            kappa3: kappa[2],
        };
        d.validate()?;
        Ok(d)
    }

    pub fn rho(&self) -> [f64; 3] {
        [self.rho1, self.rho2, self.rho3]
    }

    pub fn kappa_vec(&self) -> [f64; 3] {
        [self.kappa1, self.kappa2, self.kappa3]
    }

    /// κ = √(κ1κ2 − κ3²), clamped at zero.
    pub fn kappa(&self) -> f64 {
        (self.kappa1 * self.kappa2 - self.kappa3 * self.kappa3).max(0.0).sqrt()
    }

    /// α = (ρ2 − ρ1)/(ρ2 + ρ1).
    pub fn alpha(&self) -> f64 {
        (self.rho2 - self.rho1) / (self.rho2 + self.rho1)
    }

    /// Leading coefficients c_i = κ_i/ρ_i of the primitives.
    pub fn leading_coefficients(&self) -> [f64; 3] {
        let c = |k: f64, r: f64| if k == 0.0 { 0.0 } else { k / r };
        [
            c(self.kappa1, self.rho1),
            c(self.kappa2, self.rho2),
            c(self.kappa3, self.rho3),
        ]
    }

    pub fn class(&self) -> PowerClass {
        if self.kappa2 == 0.0 && self.kappa3 == 0.0 {
            PowerClass::UpperOnly
        } else if self.kappa1 == 0.0 && self.kappa3 == 0.0 {
            PowerClass::LowerOnly
        } else {
            PowerClass::Full
        }
    }

    /// Checks membership in the power family.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidHamiltonian(m));
        let all = [self.rho1, self.rho2, self.rho3, self.kappa1, self.kappa2, self.kappa3];
        if all.iter().any(|x| !x.is_finite()) {
            return bad("power data must be finite".into());
        }
        match self.class() {
            PowerClass::UpperOnly => {
                if !(self.kappa1 > 0.0 && self.rho1 > 0.0) {
                    return bad("need κ1 > 0 and ρ1 > 0 when κ2 = κ3 = 0".into());
                }
            }
            PowerClass::LowerOnly => {
                if !(self.kappa2 > 0.0 && self.rho2 > 0.0) {
                    return bad("need κ2 > 0 and ρ2 > 0 when κ1 = κ3 = 0".into());
                }
            }
            PowerClass::Full => {
                if !(self.kappa1 > 0.0 && self.kappa2 > 0.0 && self.rho1 > 0.0 && self.rho2 > 0.0) {
                    return bad("need κ1, κ2, ρ1, ρ2 > 0".into());
                }
                let prod = self.kappa1 * self.kappa2;
                if self.kappa3 * self.kappa3 > prod * (1.0 + PSD_SLACK) {
                    return bad(format!(
                        "κ3² = {} exceeds κ1κ2 = {prod}",
                        self.kappa3 * self.kappa3
                    ));
                }
                let mean = 0.5 * (self.rho1 + self.rho2);
                if self.kappa3 != 0.0 && (self.rho3 - mean).abs() > 1e-12 * mean {
                    return bad("κ3 ≠ 0 requires ρ3 = (ρ1 + ρ2)/2".into());
                }
            }
        }
        Ok(())
    }

    /// Entries (h1, h2, h3) at t > 0.
    pub fn entries(&self, t: f64) -> [f64; 3] {
        let h = |k: f64, r: f64| if k == 0.0 { 0.0 } else { k * t.powf(r - 1.0) };
        [
            h(self.kappa1, self.rho1),
            h(self.kappa2, self.rho2),
            h(self.kappa3, self.rho3),
        ]
    }

    /// Primitives (m1, m2, m3) at t ≥ 0.
    pub fn primitives(&self, t: f64) -> [f64; 3] {
        let c = self.leading_coefficients();
        let m = |c: f64, r: f64| if c == 0.0 { 0.0 } else { c * t.powf(r) };
        [m(c[0], self.rho1), m(c[1], self.rho2), m(c[2], self.rho3)]
    }
}
