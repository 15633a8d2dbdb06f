use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, GroupElement, GroupHom};
use crate::cubical::{is_degenerate, normalized_basis, Cube, NormalizedBasis};
use crate::{Error, Result};

/// The group `C^d(G, B) = Hom(Q_{d-1}(G), B)` together with its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainSpace {
    pub base: FiniteAbelianGroup,
    pub coeff: FiniteAbelianGroup,
    pub degree: usize,
    pub basis: NormalizedBasis,
}

impl CochainSpace {
    pub fn new(base: &FiniteAbelianGroup, coeff: &FiniteAbelianGroup, degree: usize, cap: u64) -> Result<Arc<Self>> {
        if degree == 0 {
            return Err(Error::invalid("cochains are indexed by degree >= 1"));
        }
        let basis = normalized_basis(base, degree - 1, cap)?;
        Ok(Arc::new(CochainSpace { base: base.clone(), coeff: coeff.clone(), degree, basis }))
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Dimension of the cubes the cochains are evaluated on.
    pub fn cube_dim(&self) -> usize {
        self.degree - 1
    }
}

/// A `B`-valued function on the normalized generators of `Q_{d-1}(G)`,
/// implicitly zero on slabs and diagonals. Values are element indices of `B`.
#[derive(Clone, Debug)]
pub struct Cochain {
    space: Arc<CochainSpace>,
    values: Vec<usize>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.space.base == other.space.base
            && self.space.coeff == other.space.coeff
            && self.space.degree == other.space.degree
            && self.values == other.values
    }
}

impl Eq for Cochain {}

impl PartialOrd for Cochain {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the value table (canonical element order).
impl Ord for Cochain {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.values.cmp(&other.values)
    }
}

impl Cochain {
    pub fn zero(space: &Arc<CochainSpace>) -> Self {
        Cochain { space: space.clone(), values: vec![0; space.len()] }
    }

    pub fn from_values(space: &Arc<CochainSpace>, values: Vec<usize>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Dimension(format!("{} values for a basis of size {}", values.len(), space.len())));
        }
        let n = space.coeff.size();
        if values.iter().any(|&v| v >= n) {
            return Err(Error::invalid("cochain value outside the coefficient group"));
        }
        Ok(Cochain { space: space.clone(), values })
    }

    /// Builds a cochain from a function on all cubes. Errors if the function
    /// is nonzero on a slab or diagonal.
    pub fn from_fn(space: &Arc<CochainSpace>, f: impl Fn(&Cube) -> usize) -> Result<Self> {
        let values = space.basis.generators.iter().map(&f).collect();
        let c = Cochain { space: space.clone(), values };
        c.check_normalized_fn(f)?;
        Ok(c)
    }

    fn check_normalized_fn(&self, f: impl Fn(&Cube) -> usize) -> Result<()> {
        let n = self.space.cube_dim();
        let size = self.space.base.size();
        let mut labels = vec![0usize; 1 << n];
        loop {
            let cube = Cube::new(n, labels.clone())?;
            if is_degenerate(&cube) && f(&cube) != 0 {
                return Err(Error::invalid(format!(
                    "nonzero value on the degenerate cube {}",
                    cube.display(&self.space.base)
                )));
            }
            if !crate::cohomology::odometer(&mut labels, size) {
                return Ok(());
            }
        }
    }

    /// Degree-3 cochain from a table over `G^4` indexed by `((x*n+y)*n+z)*n+t`.
    pub fn from_table4(space: &Arc<CochainSpace>, table: &[usize]) -> Result<Self> {
        if space.degree != 3 {
            return Err(Error::invalid("from_table4 needs a degree-3 cochain space"));
        }
        let n = space.base.size();
        if table.len() != n.pow(4) {
            return Err(Error::Dimension(format!("table of length {} for |G|^4 = {}", table.len(), n.pow(4))));
        }
        Self::from_fn(space, |c| table[cube_index(c.labels(), n)])
    }

    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.space.base
    }

    pub fn coeff(&self) -> &FiniteAbelianGroup {
        &self.space.coeff
    }

    pub fn degree(&self) -> usize {
        self.space.degree
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Value on an arbitrary cube (zero on degenerate ones).
    pub fn eval(&self, cube: &Cube) -> usize {
        self.space.basis.position(cube).map_or(0, |i| self.values[i])
    }

    /// Dense table over all `|G|^(2^(d-1))` cubes, indexed by the label
    /// vector read as a mixed-radix number (first label most significant).
    pub fn full_table(&self) -> Vec<usize> {
        let n = self.space.base.size();
        let len = 1usize << self.space.cube_dim();
        let mut table = vec![0usize; n.pow(len as u32)];
        for (cube, &v) in self.space.basis.generators.iter().zip(&self.values) {
            table[cube_index(cube.labels(), n)] = v;
        }
        table
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_same_space(other)?;
        let c = &self.space.coeff;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| c.add_idx(a, b)).collect();
        Ok(Cochain { space: self.space.clone(), values })
    }

    pub fn neg(&self) -> Cochain {
        let c = &self.space.coeff;
        Cochain { space: self.space.clone(), values: self.values.iter().map(|&a| c.neg_idx(a)).collect() }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    fn check_same_space(&self, other: &Cochain) -> Result<()> {
        if self.space.base != other.space.base
            || self.space.coeff != other.space.coeff
            || self.space.degree != other.space.degree
        {
            return Err(Error::invalid("cochains live in different cochain groups"));
        }
        Ok(())
    }

    /// `g^*(z)`: precomposition with `g : H -> G` on every label. The result is
    /// a cochain over `H` in `space` (which must have base `H`).
    pub fn pullback(&self, g: &GroupHom, space: &Arc<CochainSpace>) -> Result<Cochain> {
        if g.target != self.space.base || g.source != space.base || space.coeff != self.space.coeff {
            return Err(Error::invalid("pullback along a homomorphism with mismatched groups"));
        }
        let map = g.index_table();
        Cochain::from_fn(space, |cube| {
            let labels = cube.labels().iter().map(|&l| map[l]).collect();
            self.eval(&Cube::new(cube.dim(), labels).expect("same dimension"))
        })
    }

    /// `f_*(z)`: postcomposition with `f : B -> B'`.
    pub fn pushforward(&self, f: &GroupHom, space: &Arc<CochainSpace>) -> Result<Cochain> {
        if f.source != self.space.coeff || space.coeff != f.target || space.base != self.space.base {
            return Err(Error::invalid("pushforward along a homomorphism with mismatched groups"));
        }
        let map = f.index_table();
        let values = self.values.iter().map(|&v| map[v]).collect();
        Cochain::from_values(space, values)
    }

    pub fn to_file(&self) -> CochainFile {
        let base = &self.space.base;
        let coeff = &self.space.coeff;
        let values = self
            .space
            .basis
            .generators
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v != 0)
            .map(|(cube, &v)| ValueRecord { args: cube.elements(base), value: coeff.element(v) })
            .collect();
        CochainFile { base: base.literal(), coeff: coeff.literal(), degree: self.space.degree, values }
    }

    pub fn from_file(file: &CochainFile, cap: u64) -> Result<Cochain> {
        let base = FiniteAbelianGroup::parse(&file.base)?;
        let coeff = FiniteAbelianGroup::parse(&file.coeff)?;
        let space = CochainSpace::new(&base, &coeff, file.degree, cap)?;
        let dim = space.cube_dim();
        let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
        for rec in &file.values {
            if rec.args.len() != 1 << dim {
                return Err(Error::invalid(format!(
                    "degree-{} values need {} arguments, got {}",
                    file.degree,
                    1 << dim,
                    rec.args.len()
                )));
            }
            let cube = Cube::from_elements(&base, dim, &rec.args)?;
            coeff.check_element(&rec.value)?;
            let v = coeff.index(&rec.value);
            match space.basis.position(&cube) {
                Some(pos) => {
                    if let Some(&old) = assigned.get(&pos) {
                        if old != v {
                            return Err(Error::invalid(format!(
                                "conflicting values for {}",
                                cube.display(&base)
                            )));
                        }
                    }
                    assigned.insert(pos, v);
                }
                None if v != 0 => {
                    return Err(Error::invalid(format!(
                        "nonzero value on the normalized-zero tuple {}",
                        cube.display(&base)
                    )))
                }
                None => {}
            }
        }
        let mut values = vec![0; space.len()];
        for (pos, v) in assigned {
            values[pos] = v;
        }
        Cochain::from_values(&space, values)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("cochain file serializes")
    }

    pub fn from_json_str(s: &str, cap: u64) -> Result<Cochain> {
        let file: CochainFile = serde_json::from_str(s).map_err(|e| Error::parse(format!("cocycle file: {e}")))?;
        Cochain::from_file(&file, cap)
    }

    /// Short human-readable listing of the nonzero values.
    pub fn describe(&self) -> String {
        let base = &self.space.base;
        let coeff = &self.space.coeff;
        let parts: Vec<String> = self
            .space
            .basis
            .generators
            .iter()
            .zip(&self.values)
            .filter(|(_, &v)| v != 0)
            .map(|(cube, &v)| format!("{}={}", cube.display(base), coeff.element(v)))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Mixed-radix index of a label vector (first label most significant).
pub fn cube_index(labels: &[usize], n: usize) -> usize {
    labels.iter().fold(0, |acc, &l| acc * n + l)
}

/// UTF-8 JSON cocycle file. Omitted argument tuples have value zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainFile {
    pub base: String,
    pub coeff: String,
    pub degree: usize,
    pub values: Vec<ValueRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRecord {
    pub args: Vec<GroupElement>,
    pub value: GroupElement,
}
