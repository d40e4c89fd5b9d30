//! Light-cone counting and depth/size scaling measurements.

mod cone;
mod scaling;

pub use cone::{
    layered_cone_bound, light_cone, light_cone_brute_force, marginal_fidelity_lower_bound, naive_cone_bound,
    reduced_density, restrict_to_cone, LightCone,
};
pub use scaling::{
    ceil_log2, fit_line, fit_log_depth, scaling_run, write_csv, Family, LogFit, ScalingReport, ScalingRow,
};
