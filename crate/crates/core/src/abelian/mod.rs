//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod normal_form;

pub use group::{fiber_product, hom_induced, FgAbGroup, FiberProduct, GroupHom, Subgroup, Subquotient};
pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use normal_form::{hermite_basis, hermite_normal_form, integer_kernel, smith_normal_form, Hermite, Smith};
