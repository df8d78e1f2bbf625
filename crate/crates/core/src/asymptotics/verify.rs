use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::power_model::PowerLaw;
use crate::weyl_numeric::{weyl_run, WeylOptions};
use num_complex::Complex64;
use rayon::prelude::*;

/// Errors below this count as converged when checking for decay; pure
/// power data sits at this floor for every r.
pub const ERROR_FLOOR: f64 = 1e-6;

/// One (angle, r) evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub angle: f64,
    pub r: f64,
    pub z: Complex64,
    pub predicted: Complex64,
    pub q: Option<Complex64>,
    /// |q − Q|/|Q|.
    pub error: Option<f64>,
    pub failure: Option<Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleRow {
    pub angle: f64,
    /// One entry per r, `None` where the numeric solver failed.
    pub errors: Vec<Option<f64>>,
    /// Errors never increase along r, up to [`ERROR_FLOOR`].
    pub decreasing: bool,
}

impl AngleRow {
    pub fn final_error(&self) -> Option<f64> {
        self.errors.last().copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticsVerdict {
    pub r_grid: Vec<f64>,
    pub rows: Vec<AngleRow>,
    /// Row-major by angle, then r.
    pub cells: Vec<Cell>,
}

impl AsymptoticsVerdict {
    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.failure.is_some())
    }

    pub fn all_failed(&self) -> bool {
        self.cells.iter().all(|c| c.failure.is_some())
    }

    pub fn all_decreasing(&self) -> bool {
        self.rows.iter().all(|r| r.decreasing)
    }

    /// Largest error at the last r over all angles; `None` if any is missing.
    pub fn worst_final_error(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(AngleRow::final_error)
            .try_fold(0.0f64, |acc, e| e.map(|e| acc.max(e)))
    }

    /// Success needs decay along r at every angle and final errors under
    /// `threshold`.
    pub fn passes(&self, threshold: f64) -> bool {
        self.all_decreasing() && self.worst_final_error().is_some_and(|e| e <= threshold)
    }
}

fn decreasing(errors: &[Option<f64>]) -> bool {
    errors.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => b <= a || b <= ERROR_FLOOR,
        (_, None) => false,
        (None, Some(_)) => true,
    })
}

/// Compares numeric q_H(re^{iθ}) against the predicted power law for every
/// angle θ ∈ (0, π) and r in the increasing grid.
pub fn verify_asymptotics(
    h: &Hamiltonian,
    law: &PowerLaw,
    r_grid: &[f64],
    angles: &[f64],
    opts: &WeylOptions,
) -> Result<AsymptoticsVerdict> {
    law.validate()?;
    if r_grid.is_empty() || angles.is_empty() {
        return Err(Error::Domain("r grid and angle list must be nonempty".into()));
    }
    if r_grid[0] <= 0.0 || r_grid.windows(2).any(|w| w[1] <= w[0]) || !r_grid.iter().all(|r| r.is_finite()) {
        return Err(Error::Domain("r grid must be positive and increasing".into()));
    }
    if let Some(a) = angles.iter().find(|&&a| !(a > 0.0 && a < std::f64::consts::PI)) {
        return Err(Error::Domain(format!("angle {a} outside (0, π)")));
    }
    let jobs: Vec<(f64, f64)> = angles
        .iter()
        .flat_map(|&a| r_grid.iter().map(move |&r| (a, r)))
        .collect();
    let cells: Vec<Cell> = jobs
        .par_iter()
        .map(|&(angle, r)| {
            let z = Complex64::from_polar(r, angle);
            let predicted = law.eval(z);
            match weyl_run(h, z, opts) {
                Ok(run) => Cell {
                    angle,
                    r,
                    z,
                    predicted,
                    q: Some(run.q),
                    error: Some((run.q - predicted).norm() / predicted.norm()),
                    failure: None,
                },
                Err(e) => Cell {
                    angle,
                    r,
                    z,
                    predicted,
                    q: None,
                    error: None,
                    failure: Some(e),
                },
            }
        })
        .collect();
    let rows = cells
        .chunks(r_grid.len())
        .map(|chunk| {
            let errors: Vec<_> = chunk.iter().map(|c| c.error).collect();
            AngleRow {
                angle: chunk[0].angle,
                decreasing: decreasing(&errors),
                errors,
            }
        })
        .collect();
    Ok(AsymptoticsVerdict {
        r_grid: r_grid.to_vec(),
        rows,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::power_model::{closed_form_q, PowerData};
    use std::f64::consts::PI;

    #[test]
    fn exact_power_passes_and_wrong_law_fails() {
        let d = PowerData::new(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let law = closed_form_q(&d).unwrap();
        let h = Hamiltonian::power(d).unwrap();
        let opts = WeylOptions::default();
        let v = verify_asymptotics(&h, &law, &[1.0, 10.0], &[PI / 2.0], &opts).unwrap();
        assert!(v.passes(1e-5), "{v:?}");
        let wrong = PowerLaw::new(law.alpha, law.omega * 2.0).unwrap();
        let v = verify_asymptotics(&h, &wrong, &[1.0, 10.0], &[PI / 2.0], &opts).unwrap();
        assert!(!v.passes(0.05));
        assert!(v.worst_final_error().unwrap() >= 0.49);
    }

    #[test]
    fn decay_rule() {
        assert!(decreasing(&[Some(0.3), Some(0.1), Some(0.01)]));
        assert!(!decreasing(&[Some(0.1), Some(0.3)]));
        assert!(decreasing(&[Some(1e-8), Some(2e-8)]));
        assert!(!decreasing(&[Some(0.1), None]));
    }

    #[test]
    fn rejects_bad_grids() {
        let h = Hamiltonian::identity();
        let law = PowerLaw::new(0.0, Complex64::new(1.0, 0.0)).unwrap();
        let o = WeylOptions::default();
        assert!(verify_asymptotics(&h, &law, &[10.0, 1.0], &[1.0], &o).is_err());
        assert!(verify_asymptotics(&h, &law, &[1.0], &[PI], &o).is_err());
    }
}
