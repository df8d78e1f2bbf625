//! The constants that govern q(ri) ~ iω′r^α, from leading coefficients of
//! the primitives m_i ~ c_i t^{ρ_i}.

use canonical_weyl::asymptotics::{arg_omega_gap, constants_ledger, delta_bound, delta_from_arg_gap};

fn main() -> Result<(), canonical_weyl::Error> {
    let l = constants_ledger(1.0, 2.0, [1.0, 0.5, 0.2])?;
    println!("alpha       {}", l.alpha);
    println!("delta       {}  (bound {})", l.delta, delta_bound(l.alpha));
    println!("omega       {}", l.omega);
    println!("arg omega   {}", l.arg_omega);
    println!("omega'      {}", l.omega_prime.expect("finite indices"));

    // near the bound the gap to the sector edge still resolves δ
    let b = delta_bound(l.alpha);
    let delta = b - 1e-4;
    let gap = arg_omega_gap(l.alpha, delta)?;
    println!("gap at δ = bound - 1e-4: {gap:e}, δ recovered {:e} off", (delta_from_arg_gap(l.alpha, 1.0, gap)? - delta).abs());

    let rapid = constants_ledger(1.0, f64::INFINITY, [1.0, 0.0, 0.0])?;
    println!("rapid m2: alpha {} omega {}", rapid.alpha, rapid.omega);
    Ok(())
}
