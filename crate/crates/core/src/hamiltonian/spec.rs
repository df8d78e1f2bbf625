//! JSON description of a Hamiltonian, as read by the command-line tool.

use super::{Hamiltonian, Perturbation, RapidData, RapidEntry, Segment, Sym2};
use crate::error::{Error, Result};
use crate::power_model::PowerData;
use serde::{Deserialize, Serialize};

/// One piece of a piecewise specification. A missing `len` marks the final,
/// unbounded segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSpec {
    #[serde(default)]
    pub len: Option<f64>,
    pub h: [[f64; 2]; 2],
}

fn default_profile() -> String {
    "log_decay".into()
}

fn default_amplitude() -> f64 {
    0.1
}

fn one() -> f64 {
    1.0
}

fn lower() -> u8 {
    2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HamiltonianSpec {
    Power {
        rho: Vec<f64>,
        kappa: [f64; 3],
    },
    Piecewise {
        segments: Vec<SegmentSpec>,
    },
    PerturbedPower {
        rho: Vec<f64>,
        kappa: [f64; 3],
        #[serde(default = "default_profile")]
        profile: String,
        #[serde(default = "default_amplitude")]
        amplitude: f64,
    },
    Rapid {
        #[serde(default = "lower")]
        rapid_entry: u8,
        rho: f64,
        #[serde(default = "one")]
        kappa: f64,
        #[serde(default = "one")]
        beta: f64,
    },
}

fn power_data(rho: &[f64], kappa: [f64; 3]) -> Result<PowerData> {
    match *rho {
        [r1, r2] => PowerData::new(r1, r2, kappa[0], kappa[1], kappa[2]),
        [r1, r2, r3] => PowerData::with_rho3([r1, r2, r3], kappa),
        _ => Err(Error::InvalidHamiltonian(format!(
            "rho must have 2 or 3 entries, got {}",
            rho.len()
        ))),
    }
}

impl HamiltonianSpec {
    pub fn build(&self) -> Result<Hamiltonian> {
        match self {
            HamiltonianSpec::Power { rho, kappa } => Hamiltonian::power(power_data(rho, *kappa)?),
            HamiltonianSpec::PerturbedPower {
                rho,
                kappa,
                profile,
                amplitude,
            } => {
                let data = power_data(rho, *kappa)?;
                let perturbation = match profile.as_str() {
                    "log_decay" => Perturbation::LogDecay { amplitude: *amplitude },
                    other => {
                        return Err(Error::InvalidHamiltonian(format!(
                            "unknown perturbation profile `{other}`"
                        )))
                    }
                };
                Hamiltonian::perturbed_power(data, perturbation)
            }
            HamiltonianSpec::Piecewise { segments } => {
                let mut out = Vec::with_capacity(segments.len());
                for (k, s) in segments.iter().enumerate() {
                    if s.h[0][1] != s.h[1][0] {
                        return Err(Error::InvalidHamiltonian(format!("segment {k} is not symmetric")));
                    }
                    let len = match s.len {
                        Some(l) => l,
                        None if k + 1 == segments.len() => f64::INFINITY,
                        None => {
                            return Err(Error::InvalidHamiltonian(format!(
                                "segment {k} has no length but is not the last one"
                            )))
                        }
                    };
                    out.push(Segment {
                        len,
                        h: Sym2::new(s.h[0][0], s.h[1][1], s.h[0][1]),
                    });
                }
                Hamiltonian::piecewise(out)
            }
            HamiltonianSpec::Rapid {
                rapid_entry,
                rho,
                kappa,
                beta,
            } => {
                let entry = match rapid_entry {
                    1 => RapidEntry::Upper,
                    2 => RapidEntry::Lower,
                    e => {
                        return Err(Error::InvalidHamiltonian(format!(
                            "rapid_entry must be 1 or 2, got {e}"
                        )))
                    }
                };
                Hamiltonian::rapid(RapidData {
                    rapid_entry: entry,
                    rho: *rho,
                    kappa: *kappa,
                    beta: *beta,
                })
            }
        }
    }
}

/// Parses and validates a JSON Hamiltonian specification. Syntax errors
/// carry the line and column reported by the parser.
pub fn parse_spec(json: &str) -> Result<Hamiltonian> {
    let spec: HamiltonianSpec =
        serde_json::from_str(json).map_err(|e| Error::InvalidHamiltonian(format!("malformed spec: {e}")))?;
    spec.build()
}
