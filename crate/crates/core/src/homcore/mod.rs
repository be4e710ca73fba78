//! Presented modules over a ring and the homological toolkit: resolutions, Betti numbers,
//! Hom, tensor, Ext, Tor, transpose, dualities, annihilators and fingerprints.

mod duality;
mod functors;
mod invariants;
mod matrix;
mod module;
mod resolution;

pub use duality::{artinian_dual, codim_profile, dagger, syzygy_module, syzygy_power, transpose, CodimProfile};
pub use functors::{
    ext, ext_from_resolution, ext_range, hom_cycles, hom_modules, tensor, tor, tor_from_resolution, tor_range,
    HomCycles,
};
pub use invariants::{annihilator, fingerprint, trace_and_stability, Fingerprint, TraceReport};
pub use matrix::{rank_over_field, shift_vector, FreeModuleMap};
pub use module::{kernel_mod, subquotient, PresentedModule};
pub use resolution::{
    betti, minimal_part, minimize_complex, resolve, syzygy_map, unit_inverse, BettiTable, FreeComplex,
    Resolution,
};
