//! Exact rational polytope engine: LP with certificates, double description,
//! affine images, hull reduction.

pub mod dd;
pub mod lp;
mod polytope;
mod project;

pub use polytope::{
    affine_image, contains, extreme_subset, hull_weights, in_hull, is_subset, lp_feasible, optimize,
    polytope_equal, vertex_enumeration, AffineMap, FeasibilityCertificate, HPolytope, HPolytopeJson, Optimum,
    VPolytope,
};
pub(crate) use polytope::hull_system;
pub use project::image_by_lp;
