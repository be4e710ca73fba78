//! Standard bases (Buchberger for global orders, Mora for local ones) and the ideal and
//! submodule operations built on them.

mod engine;
mod ideal;
pub mod module;
mod vector;

pub use engine::{Elem, Engine, StdBasis};
pub use ideal::{
    colon_ideal, contained_in_power, ideal_member, intersect, is_gorenstein_artinian, krull_dim, mingens,
    normal_form, socle_dim, std_basis, vspace_dim, Ideal, LeadIdeal,
};
pub use vector::{ModuleOrder, Term, VecArith, Vector};
