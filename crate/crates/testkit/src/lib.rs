//! Test-only support for the regression workspace: an exact-arithmetic
//! least-squares oracle (normal equations over big rationals) and seeded
//! random design generators. Not part of the shipped library surface.

pub mod designs;
pub mod oracle;

pub use designs::{correlated_design, design_sweep, GeneratedDesign};
pub use oracle::{normal_equations_fit, OracleFit};

/// Relative difference guarded for near-zero magnitudes.
pub fn relative_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
