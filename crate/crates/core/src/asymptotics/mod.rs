//! Asymptotics of q_H(ri) as r → ∞ from the behaviour of the primitives
//! at 0: the constants ledger, rescaling, regular-variation diagnostics
//! and numeric verification.

mod ledger;
mod regvar;
mod scaling;
mod verify;

pub use ledger::{
    alpha_from_indices, arg_omega_from_alpha_delta, arg_omega_gap, delta_from_arg_gap, constants_ledger, delta_bound, delta_from_arg_omega,
    omega_from_alpha_delta, predict_power_asymptotics, ConstantsLedger,
};
pub use regvar::{
    estimate_delta, estimate_regvar_index, karamata_ratio, log_grid, primitive_samples, RegVarReport,
    MIN_DECADES, MIN_SAMPLES, RAPID_SLOPE,
};
pub use scaling::{a_h, breve_t, kasahara_scalers, rescale, rescaling_limit_check, LimitShape, RescalingRow};
pub use verify::{verify_asymptotics, AngleRow, AsymptoticsVerdict, Cell, ERROR_FLOOR};
