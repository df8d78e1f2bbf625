//! Relative error of the predicted power law along rays r·e^{iφ} for a
//! power Hamiltonian with a slowly decaying perturbation.

use canonical_weyl::asymptotics::{predict_power_asymptotics, verify_asymptotics};
use canonical_weyl::hamiltonian::{Hamiltonian, Perturbation};
use canonical_weyl::power_model::PowerData;
use canonical_weyl::weyl_numeric::WeylOptions;
use std::f64::consts::FRAC_PI_4;

fn main() -> Result<(), canonical_weyl::Error> {
    let data = PowerData::new(1.0, 2.0, 1.0, 1.0, 0.3)?;
    let c = data.leading_coefficients();
    let law = predict_power_asymptotics(c[0], c[1], c[2], 1.0, 2.0)?;
    let h = Hamiltonian::perturbed_power(data, Perturbation::LogDecay { amplitude: 0.1 })?;
    let r_grid = [10.0, 1e2, 1e3, 1e4];
    let angles = [FRAC_PI_4, 2.0 * FRAC_PI_4, 3.0 * FRAC_PI_4];
    let v = verify_asymptotics(&h, &law, &r_grid, &angles, &WeylOptions::default())?;
    print!("{:>8}", "phi\\r");
    for r in r_grid {
        print!("{r:>11.0e}");
    }
    println!();
    for row in &v.rows {
        print!("{:>8.4}", row.angle);
        for e in &row.errors {
            match e {
                Some(e) => print!("{e:>11.3e}"),
                None => print!("{:>11}", "failed"),
            }
        }
        println!("  decreasing={}", row.decreasing);
    }
    println!("passes at 5%: {}", v.passes(0.05));
    Ok(())
}
