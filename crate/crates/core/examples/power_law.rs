//! Closed-form Weyl coefficient of a power Hamiltonian against the nested
//! disc computation.

use canonical_weyl::hamiltonian::Hamiltonian;
use canonical_weyl::power_model::{arg_omega, closed_form_q, PowerData};
use canonical_weyl::weyl_numeric::weyl_coefficient;
use num_complex::Complex64;

fn main() -> Result<(), canonical_weyl::Error> {
    let data = PowerData::new(1.0, 2.0, 1.0, 1.0, 0.5)?;
    let law = closed_form_q(&data)?;
    println!("alpha = {}, omega = {}, arg = {}", law.alpha, law.omega, arg_omega(&data)?);
    let h = Hamiltonian::power(data)?;
    for z in [Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), Complex64::new(-1.0, 2.0)] {
        let exact = law.eval(z);
        let numeric = weyl_coefficient(&h, z, 1e-8, 1e6)?;
        println!("z = {z:<6} closed {exact:.10}  numeric {numeric:.10}  rel {:.1e}", (numeric - exact).norm() / exact.norm());
    }
    Ok(())
}
