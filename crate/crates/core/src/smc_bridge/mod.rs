//! Symmetric monoidal instances, the conversions to and from AC-categories,
//! semistrict instances via their commutators, and Sinh pairs.

mod convert;
mod instance;
mod semistrict;
mod sinh;

pub use convert::{ac_from_smc, b_paths, roundtrip_ac, roundtrip_smc, smc_from_ac, smc_from_ac_unchecked};
pub use instance::{sign_smc, skeletal_smc, strict_smc, verify_smc_axioms, SMCInstance, SMCInstanceFile};
pub use semistrict::{
    build_from_commutator, semistrict_commutator, semistrict_model, semistrict_violation, skew_bilinear_maps,
    strict_product_violation, verify_sac, verify_ssm,
};
pub use sinh::{sinh_pair, verify_sinh, SinhPair, SinhPairFile, SinhValue};
