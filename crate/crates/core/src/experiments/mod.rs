//! Experiment drivers: convergence curves, parameter sweeps, perturbation
//! probes and resolution scaling. All drivers are deterministic given their
//! inputs; parallel work is collected back in input order.

pub mod bridge;
pub mod convergence;
pub mod figures;
pub mod generators;
pub mod probe;
pub mod scaling;
pub mod sweep;

pub use bridge::{cells_to_interval_union, itm_to_grid_spec};
pub use convergence::{convergence_curve, ConvergenceCurve};
pub use figures::{record_iteration, IterationRecord, Snapshot};
pub use probe::{semicontinuity_probe, SemicontinuityReport};
pub use scaling::{resolution_scaling, ScalingReport, ScalingRow};
pub use sweep::{
    finite_type_sweep, ComponentRange, SampleStatus, Sampling, SweepConfig, SweepMode, SweepRow,
    SweepTable,
};

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(usize, &T) -> U + Sync) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().enumerate().map(|(k, x)| f(k, x)).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(usize, &T) -> U + Sync) -> Vec<U> {
    items.iter().enumerate().map(|(k, x)| f(k, x)).collect()
}
