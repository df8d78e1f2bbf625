//! Rescaling A_r^{b1,b2} with the scalers chosen from m1·m2 = 1/r², and the
//! identity q_{AH}(z) = (b1/b2)q_H(rz) checked numerically.

use canonical_weyl::asymptotics::{a_h, breve_t, kasahara_scalers, rescale, rescaling_limit_check, LimitShape};
use canonical_weyl::hamiltonian::{Hamiltonian, Perturbation};
use canonical_weyl::power_model::PowerData;
use canonical_weyl::weyl_numeric::weyl_coefficient;
use num_complex::Complex64;

fn main() -> Result<(), canonical_weyl::Error> {
    let data = PowerData::new(1.0, 2.0, 1.0, 1.0, 0.3)?;
    let h = Hamiltonian::perturbed_power(data, Perturbation::LogDecay { amplitude: 0.1 })?;
    for r in [1e2, 1e3, 1e4] {
        let (b1, b2) = kasahara_scalers(&h, r)?;
        println!("r={r:>6.0e} breve_t={:.4e} a_H={:.4} b1={b1:.4} b2={b2:.4}", breve_t(&h, r)?, a_h(&h, r)?);
    }
    let c = data.leading_coefficients();
    let shape = LimitShape::Regular { rho1: 1.0, rho2: 2.0, delta: c[2] / (c[0] * c[1]).sqrt() };
    for row in rescaling_limit_check(&h, &[1e2, 1e3, 1e4], &[0.5, 1.0, 2.0], shape)? {
        println!("r={:>6.0e} deviation from the limit {:.2e}", row.r, row.max());
    }

    let power = Hamiltonian::power(data)?;
    let (r, b1, b2) = (3.0, 0.7, 1.9);
    let z = Complex64::new(0.0, 1.0);
    let lhs = weyl_coefficient(&rescale(&power, r, b1, b2)?, z, 1e-9, 1e6)?;
    let rhs = b1 / b2 * weyl_coefficient(&power, r * z, 1e-9, 1e6)?;
    println!("q_AH(i) = {lhs:.10}, (b1/b2) q_H(ri) = {rhs:.10}");
    Ok(())
}
