//! The extremal members of the power family: step Hamiltonians with
//! q(z) = ωz and q(z) = −ω/z, and a start that sends q to infinity.

use canonical_weyl::hamiltonian::{Hamiltonian, Sym2};
use canonical_weyl::power_model::{boundary_case, step_down, step_up, BoundaryCase};
use canonical_weyl::weyl_numeric::{weyl_run, WeylOptions};
use canonical_weyl::Error;
use num_complex::Complex64;

fn main() -> Result<(), Error> {
    let z = Complex64::new(0.0, 1.0);
    let opts = WeylOptions::default().with_disc_tol(1e-7).with_t_max(1e8);
    for (name, h) in [("step_up(3)", step_up(3.0)?), ("step_down(3)", step_down(3.0)?)] {
        let BoundaryCase::Law(law) = boundary_case(&h)? else { unreachable!() };
        let q = weyl_run(&h, z, &opts)?.q;
        println!("{name:<13} predicted {}  numeric {q:.8}", law.eval(z));
    }
    let upper = Hamiltonian::constant(Sym2::new(1.0, 0.0, 0.0));
    match weyl_run(&upper, z, &WeylOptions::default().with_t_max(100.0)) {
        Err(Error::AtInfinity) => println!("diag(1, 0): q = infinity"),
        other => println!("diag(1, 0): unexpected {other:?}"),
    }
    Ok(())
}
