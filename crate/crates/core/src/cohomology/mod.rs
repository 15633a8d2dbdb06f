//! The cubical cochain complex `C^n(G, B) = Hom(Q_{n-1}(G), B)`, 3-cocycle
//! predicates and cohomology groups.

mod cochain;
mod cocycle3;
mod complex;
pub mod oracle;

pub use cochain::{cube_index, Cochain, CochainFile, CochainSpace, ValueRecord};
pub use cocycle3::{
    check_middle_antisymmetry, is_cocycle3, middle_antisymmetry_violation, table4_violation, CocycleCheck,
    CocycleViolation,
};
pub use complex::{
    class_representative, coboundary, coboundary_capped, coboundary_witness, cocycle_representatives,
    cocycle_representatives3, cohomology_group, cohomology_group_with, CocycleClass, Cohomology,
};

/// Advances a lexicographic odometer over `[0, base)^len` (last digit fastest); returns
/// `false` after the last tuple.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Mixed-radix odometer with per-digit bases.
pub(crate) fn odometer_mixed(digits: &mut [usize], bases: &[usize]) -> bool {
    for (d, &b) in digits.iter_mut().zip(bases).rev() {
        *d += 1;
        if *d < b {
            return true;
        }
        *d = 0;
    }
    false
}

/// `k * v` in `B` on element indices.
pub(crate) fn scale_idx(b: &crate::abelian::FiniteAbelianGroup, k: i64, v: usize) -> usize {
    b.index(&b.scale(k as i128, &b.element(v)))
}
