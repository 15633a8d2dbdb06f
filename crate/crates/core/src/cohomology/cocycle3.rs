use std::fmt;

use super::cochain::Cochain;
use super::odometer;
use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    /// Nonzero value on one of the normalized-zero 4-tuples.
    Normalization(Vec<GroupElement>),
    /// The 4x4 condition fails at `(x, y, z, t, x', y', z', t')`.
    Condition(Vec<GroupElement>),
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, tuple) = match self {
            CocycleViolation::Normalization(t) => ("normalization", t),
            CocycleViolation::Condition(t) => ("cocycle condition", t),
        };
        let parts: Vec<String> = tuple.iter().map(|e| e.to_string()).collect();
        write!(f, "{kind} at ({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    pub violation: Option<CocycleViolation>,
}

impl CocycleCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn is_normalized_zero(x: usize, y: usize, z: usize, t: usize) -> bool {
    (z == 0 && t == 0) || (x == 0 && y == 0) || (y == 0 && z == 0) || (x == 0 && z == 0) || (y == 0 && t == 0)
}

/// Checks a table `z : G^4 -> B` (indexed `((x*n+y)*n+z)*n+t`, values are
/// element indices of `B`) against normalization and the 4x4 cocycle
/// condition. Returns the first violation in lexicographic tuple order,
/// normalization first.
pub fn table4_violation(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup, table: &[usize]) -> Option<CocycleViolation> {
    let n = g.size();
    let ga = g.add_table();
    let ba = b.add_table();
    let idx = |x: usize, y: usize, z: usize, t: usize| table[((x * n + y) * n + z) * n + t];
    let elems = |d: &[usize]| d.iter().map(|&i| g.element(i)).collect::<Vec<_>>();
    let mut d = [0usize; 4];
    loop {
        let [x, y, z, t] = d;
        if is_normalized_zero(x, y, z, t) && idx(x, y, z, t) != 0 {
            return Some(CocycleViolation::Normalization(elems(&d)));
        }
        if !odometer(&mut d, n) {
            break;
        }
    }
    let mut d = [0usize; 8];
    loop {
        let [x, y, z, t, x2, y2, z2, t2] = d;
        let s = |a: usize, c: usize| ga.add(a, c);
        let lhs = [
            idx(x, y, z, t),
            idx(x2, y2, z2, t2),
            ba.neg(idx(s(x, x2), s(y, y2), s(z, z2), s(t, t2))),
            idx(x, z, x2, z2),
            idx(y, t, y2, t2),
            ba.neg(idx(s(x, y), s(z, t), s(x2, y2), s(z2, t2))),
        ]
        .into_iter()
        .fold(0, |acc, v| ba.add(acc, v));
        let rhs = [idx(x, y, x2, y2), idx(z, t, z2, t2), ba.neg(idx(s(x, z), s(y, t), s(x2, z2), s(y2, t2)))]
            .into_iter()
            .fold(0, |acc, v| ba.add(acc, v));
        if lhs != rhs {
            return Some(CocycleViolation::Condition(elems(&d)));
        }
        if !odometer(&mut d, n) {
            return None;
        }
    }
}

/// Normalization and the 4x4 cocycle condition over all of `G^8`.
pub fn is_cocycle3(z: &Cochain) -> Result<CocycleCheck> {
    if z.degree() != 3 {
        return Err(Error::invalid(format!("is_cocycle3 needs a degree-3 cochain, got degree {}", z.degree())));
    }
    Ok(CocycleCheck { violation: table4_violation(z.base(), z.coeff(), &z.full_table()) })
}

/// First `(x, y, z, t)` with `z(x,y,z,t) + z(x,z,y,t) != 0`, if any.
pub fn middle_antisymmetry_violation(z: &Cochain) -> Result<Option<Vec<GroupElement>>> {
    if z.degree() != 3 {
        return Err(Error::invalid("middle antisymmetry is a property of degree-3 cochains"));
    }
    let g = z.base();
    let b = z.coeff();
    let n = g.size();
    let table = z.full_table();
    let idx = |x: usize, y: usize, u: usize, t: usize| table[((x * n + y) * n + u) * n + t];
    let mut d = [0usize; 4];
    loop {
        let [x, y, u, t] = d;
        if b.add_idx(idx(x, y, u, t), idx(x, u, y, t)) != 0 {
            return Ok(Some(d.iter().map(|&i| g.element(i)).collect()));
        }
        if !odometer(&mut d, n) {
            return Ok(None);
        }
    }
}

/// `z(x,y,z,t) + z(x,z,y,t) = 0` for every tuple.
pub fn check_middle_antisymmetry(z: &Cochain) -> Result<bool> {
    Ok(middle_antisymmetry_violation(z)?.is_none())
}
