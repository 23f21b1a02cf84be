//! Local expansions, truncated local unit groups and ray class quotients.

pub mod conductor;
pub mod group;
pub mod local;
pub mod units;

pub use conductor::{
    check_sunit, image_of, parse_place_list, ray_class_quotient, residue_poly, sunit_images, unit_at,
    witness_search, ConductorSpec, ConductorTerm, RayClassResult, SplitVerdict, UnitImage,
};
pub use group::FiniteAbelianGroup;
pub use local::{default_uniformizer, local_expand, valuation_at, LocalSeries};
pub use units::{unit_group_structure, LocalUnitGroup, UnitGenerator};
