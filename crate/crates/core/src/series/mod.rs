//! Exact rational formal power series and the closed-form generating
//! functions of every model regime, plus high-precision evaluation of their
//! large-order asymptotics.

pub mod asym;
pub mod closed;
mod rs;

pub use asym::{
    asymptotic_form, asymptotic_ratio_scan, asymptotic_value, s32_sigma, s32_x0, AsymptoticForm,
    HWeight,
};
pub use closed::closed_form;
pub use rs::RationalSeries;
