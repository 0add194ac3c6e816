//! Homological algebra over the finite-dimensional graded algebra: free
//! modules, homogeneous matrices, complexes, modules as graded
//! representations, minimal resolutions, complete resolutions and the
//! derived functors computed from them.

pub mod complete;
pub mod complex;
pub mod derived;
pub mod free;
pub mod functors;
pub mod module;
pub mod presets;
pub mod resolution;

pub use complete::{
    build_complete_resolution_c, complete_resolution_of, fib_lower_bound, series_quotient, CompleteResolutionFamily,
};
pub use complex::Complex;
pub use derived::{
    bass_numbers, bass_numbers_via_dual, bass_numbers_via_ext, betti_numbers, ext, ext_from, ext_range, tate_ext,
    tate_ext_range_via_dual, tate_ext_via_dual, tate_tor, tate_tor_range_via_dual, tate_tor_via_dual, tor, tor_from,
    tor_range, ExtRoute, TorRoute,
};
pub use free::{FreeModule, RMatrix};
pub use module::FpModule;
pub use presets::{length_two_from_functional, preset_module, random_length2_module, ModulePreset};
pub use resolution::{
    extend_by_syzygies, graded_image, graded_kernel, kernel_generators, min_free_resolution, minimal_generators,
    r_dual, resolve_from, submodule_span, BettiTable, GradedSubspace, RDual, Resolution,
};
