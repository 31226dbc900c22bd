//! Numerical data of modular tensor categories: fusion rules, S matrix,
//! twists and quantum dimensions, plus the built-in catalog.

pub mod catalog;
pub mod io;
pub mod modular;
pub mod ring;

pub use catalog::{catalog_get, trivial_category, Catalog, DataKind};
pub use modular::{
    conjugate, deligne_product, validate_category, validate_modular_data, ModularData, EPS,
    INTEGER_TOL,
};
pub use ring::{validate_fusion_ring, FusionRing};
