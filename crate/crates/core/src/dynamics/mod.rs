//! Set evolutions `d/dt sigma = f(t, sigma)` on the support cone.

pub mod diagnostics;
pub mod example;
pub mod field;
pub mod integrate;

pub use diagnostics::{
    existence_horizon, lipschitz_estimate, osl_check, subtangent_feasible, Horizon,
    LambdaInterval, OslCandidate, OslCase, OslReport, Subtangent, SweepConfig,
};
pub use example::closed_form_example;
pub use field::{Affine, Constant, FnField, GrowthClass, GrowthFunction, RelaxTo, RhsField};
pub use integrate::{
    integrate, IntegrateOptions, IntegrationError, Method, RegularizationPolicy, Trajectory,
};
