//! Finitely generated abelian groups over exact integer arithmetic.

mod group;
mod hom;
mod matrix;
mod snf;

pub use group::{ext1, group_from_relations, is_prime, FgAbGroup};
pub(crate) use group::factorize;
pub use hom::{hom_cokernel, hom_image, hom_kernel, Homomorphism};
pub use matrix::IntegerMatrix;
pub use snf::{smith_form, smith_normal_form, SmithForm};
