//! Cohomology of `C^•(G, B)` over each cyclic factor `Z/m` of `B`, split into
//! prime powers and solved over the local rings `Z/p^e`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use super::cochain::{Cochain, CochainSpace};
use super::cocycle3::is_cocycle3;
use super::scale_idx;
use crate::abelian::{local_smith, prime_powers, solve_affine, FiniteAbelianGroup, IntMatrix, LocalRing, ModLattice};
use crate::config::{Limits, DEFAULT_ENUMERATION_CAP};
use crate::cubical::{differential_columns, normalized_basis};
use crate::{Error, Result};

type Sparse = Vec<(usize, i64)>;

/// A cohomology class with an optional witness `c` for `representative = ∂c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleClass {
    pub representative: Cochain,
    pub witness: Option<Cochain>,
}

/// `(∂f)(X) = f(δX)`, extending `f` by zero on degenerate cubes.
pub fn coboundary(f: &Cochain) -> Result<Cochain> {
    coboundary_capped(f, DEFAULT_ENUMERATION_CAP)
}

pub fn coboundary_capped(f: &Cochain, cap: u64) -> Result<Cochain> {
    let src = f.space();
    let dst = CochainSpace::new(&src.base, &src.coeff, src.degree + 1, cap)?;
    let cols = differential_columns(&dst.basis, &src.basis);
    let b = &src.coeff;
    let values = cols
        .iter()
        .map(|terms| {
            terms.iter().fold(0usize, |acc, &(pos, k)| b.add_idx(acc, scale_idx(b, k, f.values()[pos])))
        })
        .collect();
    Cochain::from_values(&dst, values)
}

/// Data of `H^n(G, Z/m)` for one cyclic factor of the coefficients.
#[derive(Clone, Debug)]
struct FactorData {
    /// Cocycles `Z^n(G, Z/m)` inside `(Z/m)^{b_{n-1}}`.
    kernel: ModLattice,
    /// Coboundaries `B^n(G, Z/m)`.
    image: ModLattice,
}

/// `H^n(G, B)` together with the cocycle and coboundary subgroups, so that
/// representatives and class reductions can be read off.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub group: FiniteAbelianGroup,
    space: Arc<CochainSpace>,
    factors: Vec<FactorData>,
}

impl Cohomology {
    pub fn compute(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup, n: usize, limits: Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cochains start in degree 1; H^0 is zero"));
        }
        if n > limits.degree_cap {
            return Err(Error::cap(format!("degree {n} above the degree cap {}", limits.degree_cap)));
        }
        let cap = limits.enumeration_cap;
        let space = CochainSpace::new(g, b, n, cap)?;
        let upper = normalized_basis(g, n, cap)?;
        let rows = differential_columns(&upper, &space.basis);
        let image = if n >= 2 {
            let lower = normalized_basis(g, n - 2, cap)?;
            transpose(&differential_columns(&space.basis, &lower), lower.len())
        } else {
            Vec::new()
        };
        let a = space.len();
        let mut summands = Vec::new();
        let mut factors = Vec::new();
        for &m in b.moduli() {
            let m = m as i128;
            let mut kernel_gens = Vec::new();
            for (p, e) in prime_powers(m as u64) {
                let ring = LocalRing::new(p, e);
                let part = local_part(a, &rows, &image, ring)?;
                let r = m / ring.q;
                let lift = r * ring.unit_inverse(r);
                kernel_gens.extend(
                    part.kernel_gens.into_iter().map(|v| v.into_iter().map(|x| (x * lift).rem_euclid(m)).collect()),
                );
                summands.extend(part.factors);
            }
            let kernel = ModLattice::generated_by(a, m, kernel_gens);
            let image = ModLattice::generated_by(a, m, image.iter().map(|g| dense(g, a)));
            factors.push(FactorData { kernel, image });
        }
        let group = FiniteAbelianGroup::new(summands)?.canonical_form();
        Ok(Cohomology { degree: n, group, space, factors })
    }

    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }

    /// `|Z^n(G, B)|`, saturating.
    pub fn cocycle_count(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.kernel.quotient_order()))
    }

    /// `|B^n(G, B)|`, saturating.
    pub fn coboundary_count(&self) -> u128 {
        self.factors.iter().fold(1u128, |acc, f| acc.saturating_mul(f.image.quotient_order()))
    }

    fn check_space(&self, z: &Cochain) -> Result<()> {
        if z.base() != &self.space.base || z.coeff() != &self.space.coeff || z.degree() != self.degree {
            return Err(Error::invalid("cochain does not belong to this cohomology computation"));
        }
        Ok(())
    }

    pub fn is_cocycle(&self, z: &Cochain) -> Result<bool> {
        self.check_space(z)?;
        Ok(self.components(z).iter().zip(&self.factors).all(|(v, f)| f.kernel.contains(v)))
    }

    pub fn is_coboundary(&self, z: &Cochain) -> Result<bool> {
        self.check_space(z)?;
        Ok(self.components(z).iter().zip(&self.factors).all(|(v, f)| f.image.contains(v)))
    }

    /// Lexicographically least member of `z + B^n(G, B)`.
    pub fn class_representative(&self, z: &Cochain) -> Result<Cochain> {
        self.check_space(z)?;
        let reduced: Vec<Vec<i128>> =
            self.components(z).iter().zip(&self.factors).map(|(v, f)| f.image.reduce(v)).collect();
        self.assemble(&reduced)
    }

    /// One cocycle per class, each the lexicographically least member of its
    /// class, sorted.
    pub fn representatives(&self, cap: u64) -> Result<Vec<Cochain>> {
        if self.group.order() > cap {
            return Err(Error::cap(format!("{} classes exceed the enumeration cap {cap}", self.group.order())));
        }
        let per_factor: Vec<Vec<Vec<i128>>> =
            self.factors.iter().map(|f| coset_representatives(&f.kernel, &f.image, cap)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut idx = vec![0usize; per_factor.len()];
        loop {
            let pick: Vec<Vec<i128>> = idx.iter().zip(&per_factor).map(|(&i, reps)| reps[i].clone()).collect();
            out.push(self.assemble(&pick)?);
            if !super::odometer_mixed(&mut idx, &per_factor.iter().map(Vec::len).collect::<Vec<_>>()) {
                break;
            }
        }
        out.sort();
        Ok(out)
    }

    /// Residue vectors of `z` in each cyclic factor of `B`.
    fn components(&self, z: &Cochain) -> Vec<Vec<i128>> {
        let b = &self.space.coeff;
        (0..self.factors.len())
            .map(|j| z.values().iter().map(|&v| b.element(v).residues[j] as i128).collect())
            .collect()
    }

    fn assemble(&self, parts: &[Vec<i128>]) -> Result<Cochain> {
        let b = &self.space.coeff;
        let values = (0..self.space.len())
            .map(|k| {
                let ints: Vec<i128> = parts.iter().map(|p| p[k]).collect();
                b.element_from_ints(&ints).map(|e| b.index(&e))
            })
            .collect::<Result<Vec<_>>>()?;
        Cochain::from_values(&self.space, values)
    }
}

struct LocalPart {
    /// Generators of the cocycles modulo `p^e`.
    kernel_gens: Vec<Vec<i128>>,
    /// Orders `p^t` of the cyclic summands of the local cohomology.
    factors: Vec<u64>,
}

fn local_part(a: usize, rows: &[Sparse], image: &[Sparse], ring: LocalRing) -> Result<LocalPart> {
    let q = ring.q;
    let mut lattice = ModLattice::zero(a, q);
    let mut seen = HashSet::new();
    for (i, row) in rows.iter().enumerate() {
        let Some(key) = unit_normalized(row, ring) else { continue };
        if !seen.insert(key) {
            continue;
        }
        lattice.insert(dense(row, a));
        if i % 64 == 63 && lattice.is_full() {
            break;
        }
    }
    // Row space R of the coboundary; its annihilator is the cocycle group.
    let smith = local_smith(lattice.rows(), a, ring, true);
    let vals = &smith.vals[..a];
    let shift: Vec<i128> = vals.iter().map(|&v| ring.pow_p(ring.e - v)).collect();
    let kernel_gens = (0..a)
        .filter(|&i| vals[i] > 0)
        .map(|i| (0..a).map(|r| (smith.v[r][i] * shift[i]).rem_euclid(q)).collect())
        .collect();
    // Coordinates of each coboundary generator in the cyclic decomposition of
    // the cocycle group, then the cokernel over Z/p^e.
    let c = image.len();
    let mut m = vec![vec![0i128; c + a]; a];
    for (j, g) in image.iter().enumerate() {
        for (i, row) in m.iter_mut().enumerate() {
            let w = g.iter().fold(0i128, |acc, &(k, x)| (acc + smith.v_inv[i][k] * x as i128).rem_euclid(q));
            if w % shift[i] != 0 {
                return Err(Error::Verification("coboundary generator is not a cocycle".into()));
            }
            row[j] = (w / shift[i]).rem_euclid(ring.pow_p(vals[i]));
        }
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[c + i] = ring.pow_p(vals[i]).rem_euclid(q);
    }
    let coker = local_smith(&m, c + a, ring, false);
    let factors = coker.vals[..a].iter().filter(|&&t| t > 0).map(|&t| ring.pow_p(t) as u64).collect();
    Ok(LocalPart { kernel_gens, factors })
}

/// `row` modulo `p^e` scaled so its first nonzero entry is a power of `p`,
/// with coefficients collected; `None` for the zero row.
fn unit_normalized(row: &Sparse, ring: LocalRing) -> Option<Vec<(usize, i128)>> {
    let q = ring.q;
    let mut terms: Vec<(usize, i128)> = row.iter().map(|&(k, x)| (k, x as i128)).collect();
    terms.sort_unstable_by_key(|&(k, _)| k);
    let mut merged: Vec<(usize, i128)> = Vec::with_capacity(terms.len());
    for (k, x) in terms {
        match merged.last_mut() {
            Some((j, y)) if *j == k => *y += x,
            _ => merged.push((k, x)),
        }
    }
    merged.retain_mut(|(_, x)| {
        *x = x.rem_euclid(q);
        *x != 0
    });
    let first = merged.first()?.1;
    let unit = first / ring.pow_p(ring.valuation(first));
    let inv = ring.unit_inverse(unit);
    for (_, x) in merged.iter_mut() {
        *x = (*x * inv).rem_euclid(q);
    }
    Some(merged)
}

fn dense(v: &Sparse, a: usize) -> Vec<i128> {
    let mut out = vec![0i128; a];
    for &(k, x) in v {
        out[k] += x as i128;
    }
    out
}

fn transpose(cols: &[Sparse], rows: usize) -> Vec<Sparse> {
    let mut out = vec![Vec::new(); rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, x) in col {
            out[i].push((j, x));
        }
    }
    out
}

/// Sorted lexicographically least representatives of `K / I`.
fn coset_representatives(kernel: &ModLattice, image: &ModLattice, cap: u64) -> Result<Vec<Vec<i128>>> {
    let m = kernel.modulus();
    let gens: Vec<Vec<i128>> =
        kernel.rows().iter().map(|r| image.reduce(r)).filter(|r| r.iter().any(|&x| x != 0)).collect();
    let zero = vec![0i128; kernel.dim()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let sum: Vec<i128> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(m)).collect();
            let y = image.reduce(&sum);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::cap(format!("more than {cap} cohomology classes")));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `H^n(G, B)` in canonical form.
pub fn cohomology_group(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup, n: usize) -> Result<FiniteAbelianGroup> {
    cohomology_group_with(g, b, n, Limits::default())
}

pub fn cohomology_group_with(
    g: &FiniteAbelianGroup,
    b: &FiniteAbelianGroup,
    n: usize,
    limits: Limits,
) -> Result<FiniteAbelianGroup> {
    if n == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    Ok(Cohomology::compute(g, b, n, limits)?.group)
}

pub fn cocycle_representatives(
    g: &FiniteAbelianGroup,
    b: &FiniteAbelianGroup,
    n: usize,
    limits: Limits,
) -> Result<Vec<Cochain>> {
    Cohomology::compute(g, b, n, limits)?.representatives(limits.enumeration_cap)
}

/// One lexicographically least 3-cocycle per class of `H^3(G, B)`.
pub fn cocycle_representatives3(g: &FiniteAbelianGroup, b: &FiniteAbelianGroup) -> Result<Vec<Cochain>> {
    cocycle_representatives(g, b, 3, Limits::default())
}

/// Lexicographically least member of the class of `z`.
pub fn class_representative(z: &Cochain) -> Result<Cochain> {
    let limits = Limits { degree_cap: z.degree(), ..Limits::default() };
    Cohomology::compute(z.base(), z.coeff(), z.degree(), limits)?.class_representative(z)
}

/// Least `c` (lexicographic on its value table) with `∂c = z`, or `None` if
/// `z` is not a coboundary. Requires `z` to be a cocycle.
pub fn coboundary_witness(z: &Cochain) -> Result<Option<Cochain>> {
    let n = z.degree();
    if n < 2 {
        return Err(Error::invalid("coboundary witnesses need a cochain of degree at least 2"));
    }
    let cocycle = if n == 3 { is_cocycle3(z)?.holds() } else { coboundary(z)?.is_zero() };
    if !cocycle {
        return Err(Error::invalid("coboundary_witness needs a cocycle"));
    }
    let cap = DEFAULT_ENUMERATION_CAP;
    let src = CochainSpace::new(z.base(), z.coeff(), n - 1, cap)?;
    let cols = differential_columns(&z.space().basis, &src.basis);
    let mut mat = IntMatrix::zeros(z.space().len(), src.len());
    for (i, col) in cols.iter().enumerate() {
        for &(k, x) in col {
            mat.set(i, k, mat.get(i, k) + x as i128);
        }
    }
    let b = z.coeff();
    let mut parts = Vec::new();
    for (j, &m) in b.moduli().iter().enumerate() {
        let rhs: Vec<i128> = z.values().iter().map(|&v| b.element(v).residues[j] as i128).collect();
        match solve_affine(&mat, &vec![m; rhs.len()], &rhs)? {
            Some(x) => parts.push(x),
            None => return Ok(None),
        }
    }
    let values = (0..src.len())
        .map(|k| {
            let ints: Vec<i128> = parts.iter().map(|p| p[k]).collect();
            b.element_from_ints(&ints).map(|e| b.index(&e))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = Cochain::from_values(&src, values)?;
    debug_assert_eq!(coboundary(&c).ok().as_ref(), Some(z));
    Ok(Some(c))
}
