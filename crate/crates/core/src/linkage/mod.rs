//! Linkage of modules: horizontal links, links through an ideal, the Ferrand cone and the
//! MCM approximation it yields, complexity, Eisenbud operators and windowed vanishing.

mod complexity;
mod cone;
mod link;
mod operators;
pub mod sample;
mod verdict;

pub use complexity::{
    classify, complexity, complexity_transfer_check, ComplexityEstimate, CxClass, TransferRegime, TransferReport,
};
pub use cone::{cone_report, ferrand_cone, mcm_approx, ConeComplex, ConeReport, MCMApprox};
pub use link::{check_annihilates, horizontal_link, link_via, restrict_scalars, LinkageDatum};
pub use operators::{eisenbud_operators, CohomOperators};
pub use verdict::{vanishing_verdict, VanishingMode, VanishingVerdict};
