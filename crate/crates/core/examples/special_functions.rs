//! Complex Gamma, Kummer's M and the normalised Bessel function.

use canonical_weyl::specfun::{bessel_frak, gamma_complex, kummer_m};
use num_complex::Complex64;

fn main() -> Result<(), canonical_weyl::Error> {
    let c = Complex64::new;
    println!("Gamma(0.5)        = {}", gamma_complex(c(0.5, 0.0))?);
    println!("Gamma(1+2i)       = {}", gamma_complex(c(1.0, 2.0))?);
    println!("M(1, 2, 1)        = {}  (e - 1)", kummer_m(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0))?);
    // heavy cancellation along the imaginary axis
    println!("M(0.7-1.1i, 1.9+0.4i, -10+80i) = {}", kummer_m(c(0.7, -1.1), c(1.9, 0.4), c(-10.0, 80.0))?);
    for x in [0.5, 2.0, 10.0] {
        let j = bessel_frak(0.5, c(x, 0.0))?;
        println!("J(1/2; {x:>4}) = {:.15}  sin(x)/x = {:.15}", j.re, x.sin() / x);
    }
    Ok(())
}
