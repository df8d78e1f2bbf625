//! Special functions: complex Gamma, Kummer's M and the entire Bessel function 𝔍_ν.

mod bessel;
mod gamma;
mod kummer;

pub use bessel::bessel_frak;
pub use gamma::{gamma_complex, gamma_ratio, ln_gamma_complex};
pub use kummer::{kummer_m, KUMMER_MAX_ABS_X};
