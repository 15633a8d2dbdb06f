//! Cubical (Eilenberg–MacLane) cohomology of finite abelian groups, and finite
//! AC-2-group / symmetric monoidal instances built from cubical 3-cocycles.
//!
//! Modules follow the data flow: exact abelian-group arithmetic, the cubical
//! Q-construction, the cochain complex and its 3-cocycles, table-presented
//! AC-categories, and the bridge to symmetric monoidal data.

pub mod abelian;
pub mod ac2group;
pub mod cohomology;
pub mod config;
pub mod cubical;
mod error;
pub mod smc_bridge;

pub use error::{Error, Result};
