//! The Eilenberg–MacLane Q-construction: A-cubes, faces, the cubical
//! differential, slabs and diagonals, and the normalized complex `Q_•(A)`.
//!
//! A cube of dimension `n` labels the `2^n` binary words `(e_1, ..., e_n)` by
//! group elements; the word is stored at index `sum e_i 2^(n-i)`, so `e_1` is
//! the most significant bit. Labels are element indices in the canonical
//! order of the group, which makes index 0 the zero element.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{homology_of_pair, AddTable, FiniteAbelianGroup, GroupElement, HomologyGroup, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    dim: usize,
    labels: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

impl Cube {
    pub fn new(dim: usize, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != 1 << dim {
            return Err(Error::Dimension(format!("a {dim}-cube needs {} labels, got {}", 1 << dim, labels.len())));
        }
        Ok(Cube { dim, labels })
    }

    pub fn zero(dim: usize) -> Self {
        Cube { dim, labels: vec![0; 1 << dim] }
    }

    pub fn from_elements(group: &FiniteAbelianGroup, dim: usize, labels: &[GroupElement]) -> Result<Self> {
        for e in labels {
            group.check_element(e)?;
        }
        Cube::new(dim, labels.iter().map(|e| group.index(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn elements(&self, group: &FiniteAbelianGroup) -> Vec<GroupElement> {
        self.labels.iter().map(|&i| group.element(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }

    pub fn to_json(&self, group: &FiniteAbelianGroup) -> CubeJson {
        CubeJson { dim: self.dim, labels: self.elements(group) }
    }

    pub fn display(&self, group: &FiniteAbelianGroup) -> String {
        let parts: Vec<String> = self.elements(group).iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Serialized cube: `{"dim": n, "labels": [[..], ...]}` in index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeJson {
    pub dim: usize,
    pub labels: Vec<GroupElement>,
}

impl CubeJson {
    pub fn to_cube(&self, group: &FiniteAbelianGroup) -> Result<Cube> {
        Cube::from_elements(group, self.dim, &self.labels)
    }
}

/// Index in the full `2^n` word list of the word obtained from the
/// `(n-1)`-word `e` by inserting `bit` at position `i` (1-based).
#[inline]
fn insert_bit(n: usize, i: usize, e: usize, bit: usize) -> usize {
    let low_bits = n - i;
    let high = e >> low_bits;
    let low = e & ((1 << low_bits) - 1);
    (high << (low_bits + 1)) | (bit << low_bits) | low
}

fn check_face_index(x: &Cube, i: usize) -> Result<()> {
    if i == 0 || i > x.dim {
        return Err(Error::invalid(format!("face index {i} out of range for a {}-cube", x.dim)));
    }
    Ok(())
}

/// Lower (`L^(i)`, restriction along `0_i`) or upper (`U^(i)`, along `1_i`) face.
pub fn face(x: &Cube, i: usize, side: Side) -> Result<Cube> {
    check_face_index(x, i)?;
    let bit = usize::from(side == Side::Upper);
    let n = x.dim;
    let labels = (0..1 << (n - 1)).map(|e| x.labels[insert_bit(n, i, e, bit)]).collect();
    Ok(Cube { dim: n - 1, labels })
}

/// `S^(i)`: vertexwise sum of the two `i`-faces.
pub fn face_sum(group: &FiniteAbelianGroup, x: &Cube, i: usize) -> Result<Cube> {
    check_face_index(x, i)?;
    Ok(face_sum_with(&group.add_table(), x, i))
}

fn face_sum_with(add: &AddTable, x: &Cube, i: usize) -> Cube {
    let n = x.dim;
    let labels = (0..1 << (n - 1))
        .map(|e| add.add(x.labels[insert_bit(n, i, e, 0)], x.labels[insert_bit(n, i, e, 1)]))
        .collect();
    Cube { dim: n - 1, labels }
}

/// A finite formal integer combination of cubes of one dimension. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chain {
    dim: usize,
    terms: BTreeMap<Cube, i64>,
}

impl Chain {
    pub fn new(dim: usize) -> Self {
        Chain { dim, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, cube: Cube, coeff: i64) {
        debug_assert_eq!(cube.dim, self.dim);
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(cube);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cube, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn coefficient(&self, cube: &Cube) -> i64 {
        self.terms.get(cube).copied().unwrap_or(0)
    }

    /// Drops slabs and diagonals, i.e. projects to the normalized complex.
    pub fn normalized(&self) -> Chain {
        Chain {
            dim: self.dim,
            terms: self.terms.iter().filter(|(c, _)| !is_degenerate(c)).map(|(c, &k)| (c.clone(), k)).collect(),
        }
    }

    pub fn to_json(&self, group: &FiniteAbelianGroup) -> Vec<ChainTermJson> {
        self.terms.iter().map(|(c, &k)| ChainTermJson { cube: c.to_json(group), coeff: k }).collect()
    }
}

/// Serialized chain term `{cube, coeff}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub cube: CubeJson,
    pub coeff: i64,
}

/// `dX = sum_{i=1}^n (-1)^i (S^(i) - U^(i) - L^(i))(X)`, like terms collected.
pub fn differential(group: &FiniteAbelianGroup, x: &Cube) -> Result<Chain> {
    if x.dim == 0 {
        return Err(Error::invalid("the differential is defined on cubes of dimension >= 1"));
    }
    Ok(differential_with(&group.add_table(), x))
}

pub(crate) fn differential_with(add: &AddTable, x: &Cube) -> Chain {
    let mut chain = Chain::new(x.dim - 1);
    for (i, sign) in (1..=x.dim).map(|i| (i, if i % 2 == 0 { 1 } else { -1 })) {
        chain.add_term(face_sum_with(add, x, i), sign);
        chain.add_term(face(x, i, Side::Upper).expect("index in range"), -sign);
        chain.add_term(face(x, i, Side::Lower).expect("index in range"), -sign);
    }
    chain
}

/// Extends the differential linearly to chains.
pub fn differential_chain(group: &FiniteAbelianGroup, c: &Chain) -> Result<Chain> {
    if c.dim == 0 {
        return Err(Error::invalid("the differential is defined on chains of dimension >= 1"));
    }
    let add = group.add_table();
    let mut out = Chain::new(c.dim - 1);
    for (cube, k) in c.terms() {
        for (face_cube, j) in differential_with(&add, cube).terms() {
            out.add_term(face_cube.clone(), k * j);
        }
    }
    Ok(out)
}

/// Some `i`-face (lower or upper) is identically zero; for `n = 0`, the label is zero.
pub fn is_slab(x: &Cube) -> bool {
    let n = x.dim;
    if n == 0 {
        return x.labels[0] == 0;
    }
    (1..=n).any(|i| {
        [0, 1].iter().any(|&bit| (0..1 << (n - 1)).all(|e| x.labels[insert_bit(n, i, e, bit)] == 0))
    })
}

/// For some `i < n`, `X(e) = 0` whenever `e_i != e_{i+1}` (an `i`-diagonal).
/// Only for `n >= 2`.
pub fn is_diagonal(x: &Cube) -> bool {
    let n = x.dim;
    if n < 2 {
        return false;
    }
    (0..n - 1).any(|j| (0..1usize << n).all(|w| ((w >> j) ^ (w >> (j + 1))) & 1 == 0 || x.labels[w] == 0))
}

pub fn is_degenerate(x: &Cube) -> bool {
    is_slab(x) || is_diagonal(x)
}

/// Ordered basis of `Q_n(A)`: all cubes that are neither slabs nor diagonals,
/// lexicographic on the concatenated label residues.
#[derive(Clone, Debug)]
pub struct NormalizedBasis {
    pub group: FiniteAbelianGroup,
    pub dim: usize,
    pub generators: Vec<Cube>,
    index: HashMap<Cube, usize>,
}

impl NormalizedBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn position(&self, cube: &Cube) -> Option<usize> {
        self.index.get(cube).copied()
    }
}

impl PartialEq for NormalizedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.dim == other.dim && self.generators == other.generators
    }
}

/// `|A|^(2^n)`, or `None` on overflow.
pub fn candidate_count(group: &FiniteAbelianGroup, n: usize) -> Option<u64> {
    let exp = u32::try_from(1u64 << n.min(63)).ok()?;
    group.order().checked_pow(exp)
}

pub fn check_cap(group: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<()> {
    match candidate_count(group, n) {
        Some(c) if c <= cap => Ok(()),
        _ => Err(Error::cap(format!(
            "{}-cubes over {} exceed the enumeration cap of {cap} candidates",
            n,
            group.literal()
        ))),
    }
}

pub fn normalized_basis(group: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<NormalizedBasis> {
    check_cap(group, n, cap)?;
    let size = group.size();
    let len = 1usize << n;
    let mut generators = Vec::new();
    if size > 1 {
        let mut labels = vec![0usize; len];
        loop {
            let cube = Cube { dim: n, labels: labels.clone() };
            if !is_degenerate(&cube) {
                generators.push(cube);
            }
            let mut k = len;
            let done = loop {
                if k == 0 {
                    break true;
                }
                k -= 1;
                labels[k] += 1;
                if labels[k] < size {
                    break false;
                }
                labels[k] = 0;
            };
            if done {
                break;
            }
        }
    }
    let index = generators.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    Ok(NormalizedBasis { group: group.clone(), dim: n, generators, index })
}

/// Sparse matrix of the quotient differential `Q_n -> Q_{n-1}`: entry `k` is
/// the list of `(row, coefficient)` for generator `k` of `from`.
pub fn differential_columns(from: &NormalizedBasis, to: &NormalizedBasis) -> Vec<Vec<(usize, i64)>> {
    assert_eq!(from.dim, to.dim + 1, "bases must be in consecutive dimensions");
    let add = from.group.add_table();
    from.generators
        .iter()
        .map(|x| {
            differential_with(&add, x)
                .terms()
                .filter_map(|(c, k)| to.position(c).map(|r| (r, k)))
                .collect()
        })
        .collect()
}

/// Matrix of `d_n : Q_n(A) -> Q_{n-1}(A)` on normalized bases (rows index
/// `Q_{n-1}`, columns `Q_n`). For `n = 0` this is the zero map to `Q_{-1} = 0`.
pub fn differential_matrix(group: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<IntMatrix> {
    let from = normalized_basis(group, n, cap)?;
    if n == 0 {
        return Ok(IntMatrix::zeros(0, from.len()));
    }
    let to = normalized_basis(group, n - 1, cap)?;
    Ok(dense_from_columns(&differential_columns(&from, &to), to.len()))
}

pub(crate) fn dense_from_columns(cols: &[Vec<(usize, i64)>], rows: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, k) in col {
            m.set(i, j, m.get(i, j) + k as i128);
        }
    }
    m
}

/// `H_n(Q_•(A))` from the normalized differential matrices.
pub fn q_homology(group: &FiniteAbelianGroup, n: usize, cap: u64) -> Result<HomologyGroup> {
    let d_out = differential_matrix(group, n, cap)?;
    let d_in = differential_matrix(group, n + 1, cap)?;
    homology_of_pair(&d_out, &d_in)
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faces_of_a_square() {
        // Vertex index e_1 * 2 + e_2.
        let x = Cube::new(2, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(face(&x, 1, Side::Lower).unwrap().labels(), &[0, 1]);
        assert_eq!(face(&x, 1, Side::Upper).unwrap().labels(), &[2, 3]);
        assert_eq!(face(&x, 2, Side::Lower).unwrap().labels(), &[0, 2]);
        assert_eq!(face(&x, 2, Side::Upper).unwrap().labels(), &[1, 3]);
        assert!(face(&x, 3, Side::Lower).is_err());
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        assert_eq!(face_sum(&z4, &x, 1).unwrap().labels(), &[2, 0]);
    }

    #[test]
    fn degenerate_squares() {
        let cube = |l: [usize; 4]| Cube::new(2, l.to_vec()).unwrap();
        assert!(is_slab(&cube([0, 1, 0, 1])));
        assert!(is_slab(&cube([1, 1, 0, 0])));
        assert!(!is_slab(&cube([1, 0, 0, 1])));
        assert!(is_diagonal(&cube([1, 0, 0, 1])));
        assert!(!is_diagonal(&cube([0, 1, 1, 0])));
        assert!(!is_degenerate(&cube([0, 1, 1, 0])));
        assert!(is_slab(&Cube::zero(0)));
    }
}
