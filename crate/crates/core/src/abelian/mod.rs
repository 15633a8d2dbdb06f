//! Exact arithmetic for finite abelian groups and integer matrices.

mod group;
mod hom;
mod lattice;
mod local;
mod matrix;
mod snf;

pub use group::{gcd_u64, lcm_u64, AddTable, FiniteAbelianGroup, GroupElement};
pub use hom::{hom_group, homomorphisms, isomorphisms, prime_powers, GroupHom};
pub use lattice::{ext_gcd, solve_affine, ModLattice};
pub use local::{local_smith, LocalRing, LocalSmith};
pub use matrix::IntMatrix;
pub use snf::{cokernel, homology_of_pair, smith, smith_diagonal, smith_normal_form, HomologyGroup, SmithForm};
