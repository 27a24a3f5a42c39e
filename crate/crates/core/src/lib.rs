//! Exact arithmetic for rank-two bundles on ruled surfaces blown up at
//! general points.
//!
//! - [`lattice`]: intersection form, canonical class, Riemann-Roch,
//!   effectivity and Hirzebruch section counts.
//! - [`invariants`]: the class `zeta` and length of `Z` of a canonical
//!   extension, twists, and the lower bounds on `r`.
//! - [`walls`]: wall enumeration, suitability, the `d_V = 0` certificate.
//! - [`families`]: moduli and extension-family dimension counts,
//!   birational structure.
//! - [`stability`]: box-bounded destabilizer search.
//!
//! All integers are `i64` with checked arithmetic; overflow is an error.

pub mod error;
pub mod families;
pub mod invariants;
pub mod lattice;
pub mod stability;
pub mod walls;

pub use error::{Error, Result, Warning};
pub use families::{
    classify_structure, example_family_dim, ext1_rr, family_dim_c1f0, family_dim_c1f1,
    maximize_family_dim, moduli_dim, Classification, Dominance, ExampleDims, FamilyReport,
    Maximizer, StructureKind,
};
pub use invariants::{
    bound_prop_a, chern_twist, is_extension_unique, length_z, nagata_bound, r0_generic, zeta_class,
    ChernData, ExtensionDatum, SubschemeLength,
};
pub use lattice::{DivisorClass, Effectivity, SurfaceConfig, Verdict, Witness};
pub use stability::{
    destabilizer_search, slope_margin, SearchBox, StabilityStatus, StabilityVerdict,
};
pub use walls::{
    certify_dv_zero, enumerate_separating_walls, hodge_xi, is_suitable, DvZeroCertificate,
    Polarization, WallClass,
};
