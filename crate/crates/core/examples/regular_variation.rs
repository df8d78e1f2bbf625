//! Index estimation for the primitives near 0, including the rapid flag for
//! e^{−1/t} and the Karamata ratio of a pure power.

use canonical_weyl::asymptotics::{estimate_regvar_index, karamata_ratio, log_grid, primitive_samples};
use canonical_weyl::hamiltonian::{Hamiltonian, Perturbation, RapidData, RapidEntry};
use canonical_weyl::power_model::PowerData;

fn main() -> Result<(), canonical_weyl::Error> {
    let grid = log_grid(1e-7, 1.0, 71);
    let pert = Hamiltonian::perturbed_power(
        PowerData::new(1.0, 2.0, 1.0, 1.0, 0.3)?,
        Perturbation::LogDecay { amplitude: 0.1 },
    )?;
    for (k, name) in [(0, "m1"), (1, "m2")] {
        let r = estimate_regvar_index(&primitive_samples(&pert, &grid, k)?)?;
        println!("perturbed {name}: index {:.5} residual {:.2e}", r.index, r.fit_residual);
    }
    let rapid = Hamiltonian::rapid(RapidData { rapid_entry: RapidEntry::Lower, rho: 1.0, kappa: 1.0, beta: 1.0 })?;
    let r = estimate_regvar_index(&primitive_samples(&rapid, &grid, 1)?)?;
    println!("e^(-1/t): rapid {}", r.rapid);
    let samples: Vec<_> = log_grid(1e-6, 1e-2, 41).into_iter().map(|t| (t, t.sqrt())).collect();
    println!("karamata deviation for t^0.5: {:.2e}", karamata_ratio(&samples, 0.5)?);
    Ok(())
}
