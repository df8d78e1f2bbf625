//! Power Hamiltonians H_{ρ,κ} with entries κ_i t^{ρ_i−1} and the power
//! Nevanlinna functions Q_{α,ω} they map to.

mod closed;
mod data;
mod law;
mod solutions;

pub use closed::{
    arg_omega, boundary_case, closed_form_q, inverse_problem, reparam_equivalent, rescale_power, step_down,
    step_up, BoundaryCase, InverseSolution, DEGENERATE_KAPPA, INVERSE_ANGLE_TOL,
};
pub use data::{PowerClass, PowerData};
pub use law::{q_power_eval, PowerLaw, SECTOR_SLACK};
pub use solutions::{
    kummer_pair, kummer_solutions_check, scalar_equation_residual, solution_entries_bessel,
    solution_entries_power, KummerCheck, KummerParameters,
};
