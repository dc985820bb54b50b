//! Concrete finite groups: fields, matrices, permutations, catalog targets
//! and homomorphisms into them.

pub mod arith;
pub mod element;
pub mod field;
pub mod hom;
pub mod matrix;
pub mod perm;
pub mod table;
pub mod target;

pub use element::{element_order, GroupElement};
pub use field::FiniteField;
pub use hom::{evaluate_images, is_homomorphism, Homomorphism};
pub use matrix::Matrix;
pub use perm::Permutation;
pub use table::GroupTable;
pub use target::{ClassTags, GroupDescriptor, TargetGroup};
