//! Proliferating series over an `n`-note pitch universe.
//!
//! A proliferating permutation (PP) maps each note of a series to the note in
//! the same position of a transformed copy; iterating it proliferates the
//! series. This crate builds PPs for the four serial transformations, lists
//! exactly which cycle structures each transformation can produce, checks
//! those lists against an exhaustive census, and classifies and realizes
//! series by structure.
//!
//! ```
//! use prolifera::{pp_from_transform, cycle_decomposition, Series, TransformKind, TransformSpec};
//!
//! let a = Series::from_notes(&[0, 3, 4, 2, 1, 6, 5]).unwrap();
//! let spec = TransformSpec::new(TransformKind::RI, 2, a.modulus()).unwrap();
//! let pp = pp_from_transform(&a, spec).unwrap();
//! assert_eq!(cycle_decomposition(&pp).to_string(), "(0 4 1 5 2)(3)(6)");
//! ```

pub mod catalog;
pub mod census;
pub mod classify;
pub mod error;
pub mod partition;
pub mod perm;
pub mod pitch;

pub use catalog::{
    catalog, catalog_i, catalog_p, catalog_r_coprime, catalog_r_general, catalog_ri,
    is_achievable, unachievable_reason, CatalogEntry, GtShape, LabeledStructure,
};
pub use census::{
    census, verify_catalog, write_census_files, CensusOptions, CensusPaths, CensusResult,
    CountConvention, VerifyReport,
};
pub use classify::{
    apply_op, are_equivalent, canonical_form, canonical_representative, class_table,
    enumerate_classes, realize, ClassEntry, ClassTable, EquivalenceOp, InversePairing,
    MirrorPairing,
};
pub use error::{Error, Result};
pub use partition::{partitions, Partition};
pub use perm::{
    cycle_decomposition, cycle_decomposition_with_center, order, orbit, pp_from_pair,
    pp_fixed_axis, pp_from_transform, CycleDecomposition, CycleStructure, Permutation,
};
pub use pitch::{
    apply_ir, apply_transform, normalize_to_zero, Modulus, PitchClass, Series, TransformKind,
    TransformSpec,
};
