use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A finite abelian group `Z/m_1 x ... x Z/m_k` with every `m_i >= 2`.
///
/// Elements are addressed either as residue vectors ([`GroupElement`]) or by
/// their index in the canonical (lexicographic) element order. The index of
/// `(r_1, ..., r_k)` is the mixed-radix number with `r_1` most significant, so
/// index order and lexicographic residue order coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
}

/// Residue vector of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub residues: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::invalid(format!("cyclic factor Z{m} must have order >= 2")));
        }
        let g = FiniteAbelianGroup { moduli };
        g.checked_order()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { moduli: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::new(vec![n])
    }

    /// Parses the literal grammar `Z2xZ4`, with `1` for the trivial group.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::trivial());
        }
        let mut moduli = Vec::new();
        for part in s.split('x') {
            let digits = part
                .strip_prefix('Z')
                .ok_or_else(|| Error::parse(format!("bad group literal {s:?}: factor {part:?}")))?;
            let m: u64 = digits
                .parse()
                .map_err(|_| Error::parse(format!("bad group literal {s:?}: factor {part:?}")))?;
            if m < 2 {
                return Err(Error::parse(format!("bad group literal {s:?}: factor order must be >= 2")));
            }
            moduli.push(m);
        }
        Self::new(moduli).map_err(|e| Error::parse(e.to_string()))
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    fn checked_order(&self) -> Result<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or(Error::Overflow("group order"))
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Number of elements as a `usize`, for indexing.
    pub fn size(&self) -> usize {
        self.order() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &m| lcm_u64(acc, m))
    }

    /// Invariant-factor form `m_1 | m_2 | ...`, computed by Smith normal form of
    /// the diagonal relation matrix.
    pub fn canonical_form(&self) -> FiniteAbelianGroup {
        let n = self.moduli.len();
        let mut rel = super::IntMatrix::zeros(n, n);
        for (i, &m) in self.moduli.iter().enumerate() {
            rel.set(i, i, m as i128);
        }
        let snf = super::smith(&rel).expect("diagonal SNF of group moduli cannot overflow");
        let moduli = snf.diagonal().into_iter().filter(|&d| d > 1).map(|d| d as u64).collect();
        FiniteAbelianGroup { moduli }
    }

    pub fn is_canonical(&self) -> bool {
        self.moduli.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn is_isomorphic(&self, other: &FiniteAbelianGroup) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn literal(&self) -> String {
        if self.moduli.is_empty() {
            "1".to_string()
        } else {
            self.moduli.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x")
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.moduli.len()] }
    }

    /// Element at position `idx` of the canonical order.
    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut residues = vec![0; self.moduli.len()];
        for (i, &m) in self.moduli.iter().enumerate().rev() {
            residues[i] = (idx as u64) % m;
            idx /= m as usize;
        }
        GroupElement { residues }
    }

    pub fn index(&self, e: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&r, &m) in e.residues.iter().zip(&self.moduli) {
            idx = idx * m as usize + r as usize;
        }
        idx
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.residues.len() == self.moduli.len() && e.residues.iter().zip(&self.moduli).all(|(r, m)| r < m)
    }

    /// Builds an element from arbitrary integers, reducing each modulo its factor.
    pub fn element_from_ints(&self, ints: &[i128]) -> Result<GroupElement> {
        if ints.len() != self.moduli.len() {
            return Err(Error::Dimension(format!(
                "element has {} residues, group {} has {} factors",
                ints.len(),
                self.literal(),
                self.moduli.len()
            )));
        }
        let residues = ints
            .iter()
            .zip(&self.moduli)
            .map(|(&v, &m)| v.rem_euclid(m as i128) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    /// Parses `[1,3]` and checks membership.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let e = GroupElement::parse(s)?;
        self.check_element(&e)?;
        Ok(e)
    }

    pub fn check_element(&self, e: &GroupElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{e} is not an element of {}", self.literal())))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        GroupElement { residues }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let residues = a.residues.iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect();
        GroupElement { residues }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i128, a: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (k.rem_euclid(m as i128) as u64 * x) % m)
            .collect();
        GroupElement { residues }
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.residues
            .iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&x, &m)| lcm_u64(acc, m / gcd_u64(x, m)))
    }

    // Index-level arithmetic for hot loops.

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.moduli.len() == 1 {
            let m = self.moduli[0] as usize;
            return (a + b) % m;
        }
        self.index(&self.add(&self.element(a), &self.element(b)))
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        if self.moduli.len() == 1 {
            let m = self.moduli[0] as usize;
            return (m - a) % m;
        }
        self.index(&self.neg(&self.element(a)))
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// Dense `size x size` addition table on element indices.
    pub fn add_table(&self) -> AddTable {
        let n = self.size();
        let mut add = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = self.add_idx(a, b) as u32;
            }
        }
        let neg = (0..n).map(|a| self.neg_idx(a) as u32).collect();
        AddTable { n, add, neg }
    }
}

/// Precomputed addition and negation on element indices.
#[derive(Clone, Debug)]
pub struct AddTable {
    n: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl AddTable {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.literal())
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FiniteAbelianGroup::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl GroupElement {
    pub fn new(residues: Vec<u64>) -> Self {
        GroupElement { residues }
    }

    /// Parses the bracket form `[1,3]` (`[]` for the trivial group) without
    /// checking membership.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("bad element literal {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(GroupElement { residues: Vec::new() });
        }
        let residues = inner
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|_| Error::parse(format!("bad element literal {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { residues })
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.residues.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(GroupElement { residues: Vec::<u64>::deserialize(d)? })
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(FiniteAbelianGroup::parse("Z2xZ4").unwrap().moduli(), &[2, 4]);
        assert!(FiniteAbelianGroup::parse("1").unwrap().is_trivial());
        for bad in ["Z1", "Z2x", "z2", "Z", "Z2xZ0", ""] {
            assert!(matches!(FiniteAbelianGroup::parse(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn invariant_factors() {
        let g = FiniteAbelianGroup::new(vec![6, 4, 2]).unwrap();
        assert_eq!(g.canonical_form().literal(), "Z2xZ2xZ12");
        assert!(FiniteAbelianGroup::cyclic(6).unwrap().is_isomorphic(&FiniteAbelianGroup::new(vec![3, 2]).unwrap()));
        assert!(!FiniteAbelianGroup::cyclic(4).unwrap().is_isomorphic(&FiniteAbelianGroup::new(vec![2, 2]).unwrap()));
    }
}
