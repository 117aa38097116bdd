//! Scalar foundation: dual numbers, κ-labelled trigonometry and gradients.

mod diff;
mod dual;
mod ktrig;
mod scalar;

pub use diff::{fd_grad, grad};
pub use dual::{Dual, NVARS};
pub use ktrig::{
    arc_skappa, arc_tkappa, ckappa, exprel, log1prel, sinhc, skappa, tkappa, POLE_EPS,
    TAYLOR_SWITCH,
};
pub use scalar::Scalar;
