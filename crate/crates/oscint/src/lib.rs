//! Oscillatory integrals with inhomogeneous phase functions of arbitrary
//! positive order: a symbolic expression kernel, numerical symbol-class and
//! phase-function certification, the integration-by-parts operators that
//! regularize divergent fiber integrals, adaptive oscillatory quadrature,
//! and scans that characterize the singular structure of the resulting
//! distributions (critical set, asymptotic stationary-phase set, empirical
//! wave front set).

pub mod calculus;
pub mod config;
pub mod exec;
pub mod expr;
pub mod microlocal;
pub mod presets;
pub mod quadrature;
pub mod regularize;
pub mod report;

pub use expr::{Axis, Dims, Expr, MultiIndex};
