//! Exact computations with hollow lattice polytopes: lattice-point enumeration,
//! lattice projections and width, coefficients of asymmetry, volume bounds for
//! exceptional hollow polytopes, maximality certificates, and constructors for
//! explicit families.

pub mod asymmetry;
pub mod census;
pub mod error;
pub mod exactgeom;
pub mod families;
pub mod lattice;
pub mod maximality;
pub mod project;

pub use error::{GeomError, Result};
pub use exactgeom::{
    are_equivalent, canonical_form, hermite_normal_form, hull, lp_optimize, vertices_of, volume,
    CanonicalForm, Facet, HalfSpace, Integer, LatticePoint, Point, Polytope, Rational, Sense,
    UnimodularMap,
};
pub use lattice::{
    enumerate_points, integer_hull, is_hollow, HollownessCertificate, LatticePointSet, Region,
};
pub use project::{
    find_hollow_projection, is_cayley, lattice_width, project_polytope, projection_along,
    ProjectionMap, ProjectionSearch, WidthResult,
};
pub use asymmetry::{
    coefficient_of_asymmetry, is_delta_central, max_area_triangle, min_asymmetry_point,
    AsymmetryReport, MaxAreaTriangle,
};
pub use maximality::{
    facet_reports, is_maximal_hollow_body, is_maximal_hollow_lattice, FacetReport,
    MaximalityKind, MaximalityOptions, MaximalityVerdict,
};
pub use families::{
    delta_i, delta_simplex, exceptional_triangle, verify_theorem_examples,
    FamilyVerificationReport,
};
pub use census::{
    census_polygons, classify_hollow_polygon, empty_polytopes_3d, CensusResult, HollowClass,
    PolygonClass,
};
