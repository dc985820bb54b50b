//! Finite quotient search: catalogs of targets, detection and growth tables.

mod catalog;
mod detect;
mod growth;

pub use catalog::{build_catalog, CatalogClass, TargetCatalog, ALL_COMPLETE_BELOW, SIMPLE_COMPLETE_BELOW};
pub use detect::{detect, enumerate_homs, verify_minimal, DetectionResult, ValueTag};
pub use growth::{
    compare_classes, dominance_constant, growth, ratio_experiment, ClassComparison, ComparisonRow, GrowthRow,
    GrowthTable, RatioCurve, RatioPoint,
};
