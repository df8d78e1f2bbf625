//! Nested Weyl discs for a constant Hamiltonian, whose Weyl coefficient is
//! i·√(h1/h2) when h3 = 0.

use canonical_weyl::hamiltonian::{Hamiltonian, Sym2};
use canonical_weyl::weyl_numeric::{weyl_run, WeylOptions};
use num_complex::Complex64;

fn main() -> Result<(), canonical_weyl::Error> {
    let h = Hamiltonian::constant(Sym2::new(4.0, 1.0, 0.0));
    let run = weyl_run(&h, Complex64::new(0.0, 1.0), &WeylOptions::default())?;
    println!("{:>12} {:>12}", "t", "radius");
    for (t, r) in &run.radius_curve {
        println!("{t:>12.4e} {r:>12.4e}");
    }
    println!("q = {}  (expected 2i)", run.q);
    println!("largest det defect {:.2e}", run.max_det_defect);
    Ok(())
}
