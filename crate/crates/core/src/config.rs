//! Default resource caps shared by the library and the CLI.

/// Largest number of candidate cubes `|A|^(2^n)` enumerated for one basis.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// Highest cohomological degree computed unless raised explicitly.
pub const DEFAULT_DEGREE_CAP: usize = 3;

/// Instance size limits for exhaustive axiom checking.
pub const MAX_OBJECTS: usize = 64;
pub const MAX_MORPHISMS: usize = 4096;

/// Largest object-tuple sweep (e.g. the 8-tuples of the 4x4 axiom).
pub const MAX_TUPLE_SWEEP: u64 = 1 << 28;

/// Caps applied to cohomology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_cap: u64,
    pub degree_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumeration_cap: DEFAULT_ENUMERATION_CAP, degree_cap: DEFAULT_DEGREE_CAP }
    }
}

impl Limits {
    pub fn with_cap(enumeration_cap: u64) -> Self {
        Limits { enumeration_cap, ..Limits::default() }
    }
}
