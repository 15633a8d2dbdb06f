use super::group::gcd_u64;
use super::{FiniteAbelianGroup, GroupElement, IntMatrix};
use crate::{Error, Result};

/// A homomorphism given by the images of the standard generators `e_i`
/// (the unit residue vector of factor `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteAbelianGroup,
    pub target: FiniteAbelianGroup,
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: FiniteAbelianGroup, target: FiniteAbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Dimension(format!(
                "{} generator images for a group with {} factors",
                images.len(),
                source.rank()
            )));
        }
        for (img, &m) in images.iter().zip(source.moduli()) {
            target.check_element(img)?;
            if !target.scale(m as i128, img).is_zero() {
                return Err(Error::invalid(format!(
                    "image {img} of a generator of order {m} does not have order dividing {m}"
                )));
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(g: &FiniteAbelianGroup) -> Self {
        let images = (0..g.rank())
            .map(|i| {
                let mut r = vec![0; g.rank()];
                r[i] = 1;
                GroupElement::new(r)
            })
            .collect();
        GroupHom { source: g.clone(), target: g.clone(), images }
    }

    /// Matrix acting on residue vectors: column `i` is the image of `e_i`.
    pub fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target.rank(), self.source.rank());
        for (j, img) in self.images.iter().enumerate() {
            for (i, &r) in img.residues.iter().enumerate() {
                m.set(i, j, r as i128);
            }
        }
        m
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let mut acc = self.target.zero();
        for (img, &c) in self.images.iter().zip(&x.residues) {
            acc = self.target.add(&acc, &self.target.scale(c as i128, img));
        }
        acc
    }

    /// Image table on element indices.
    pub fn index_table(&self) -> Vec<usize> {
        self.source.elements().map(|x| self.target.index(&self.apply(&x))).collect()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.size()];
        for i in self.index_table() {
            if std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        true
    }

    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::Dimension("composing homomorphisms with mismatched groups".into()));
        }
        let images = first.images.iter().map(|x| self.apply(x)).collect();
        Ok(GroupHom { source: first.source.clone(), target: self.target.clone(), images })
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_bijective() {
            return Err(Error::invalid("homomorphism is not invertible"));
        }
        let table = self.index_table();
        let mut inv = vec![0usize; table.len()];
        for (x, &y) in table.iter().enumerate() {
            inv[y] = x;
        }
        let images = (0..self.target.rank())
            .map(|i| {
                let mut r = vec![0; self.target.rank()];
                r[i] = 1;
                self.source.element(inv[self.target.index(&GroupElement::new(r))])
            })
            .collect();
        Ok(GroupHom { source: self.target.clone(), target: self.source.clone(), images })
    }

    /// Generator images as literals, e.g. `[1,0]`.
    pub fn describe(&self) -> String {
        let imgs: Vec<String> = self.images.iter().map(|e| e.to_string()).collect();
        format!("{} -> {}: generators |-> ({})", self.source, self.target, imgs.join(", "))
    }
}

/// `Hom(G, B) = prod_{i,j} Z/gcd(m_i, n_j)` in canonical form.
pub fn hom_group(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> FiniteAbelianGroup {
    let moduli: Vec<u64> = g
        .moduli()
        .iter()
        .flat_map(|&m| b.moduli().iter().map(move |&n| gcd_u64(m, n)))
        .filter(|&d| d > 1)
        .collect();
    FiniteAbelianGroup::new(moduli).expect("gcd factors are valid moduli").canonical_form()
}

/// All homomorphisms `G -> B`, ordered lexicographically by the tuple of
/// generator images (each compared in canonical element order).
pub fn homomorphisms(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup, cap: u64) -> Result<Vec<GroupHom>> {
    let choices: Vec<Vec<GroupElement>> = g
        .moduli()
        .iter()
        .map(|&m| b.elements().filter(|y| b.scale(m as i128, y).is_zero()).collect())
        .collect();
    let total = choices.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    if total.is_none_or(|t| t > cap) {
        return Err(Error::cap(format!("too many homomorphisms {} -> {}", g, b)));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let images = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        out.push(GroupHom { source: g.clone(), target: b.clone(), images });
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All isomorphisms `G -> G'`, in the same deterministic order.
pub fn isomorphisms(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup, cap: u64) -> Result<Vec<GroupHom>> {
    if g.canonical_form() != h.canonical_form() {
        return Ok(Vec::new());
    }
    Ok(homomorphisms(g, h, cap)?.into_iter().filter(|f| f.is_bijective()).collect())
}

/// Prime-power factorization `n = prod p^e`, primes ascending.
pub fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
