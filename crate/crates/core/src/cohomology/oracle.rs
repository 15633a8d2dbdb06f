//! Brute-force cohomology: cocycles by constraint-propagating search,
//! coboundaries by applying `∂` to every cochain of the degree below, and
//! the quotient's isomorphism type from its element-order statistics.
//! Shares no linear algebra with the Smith-form path.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::abelian::FiniteAbelianGroup;
use crate::cubical::{differential, normalized_basis, NormalizedBasis};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct EnumeratedCohomology {
    /// Every cocycle as a value table on the normalized basis, sorted.
    pub cocycles: Vec<Vec<usize>>,
    pub coboundaries: BTreeSet<Vec<usize>>,
    /// Least member of each class, sorted.
    pub representatives: Vec<Vec<usize>>,
    pub group: FiniteAbelianGroup,
}

/// Exhaustive `H^n(G, B)`. Fails with `CapExceeded` when the cochain group
/// of degree `n - 1` or the cocycle set exceeds `cap` elements.
pub fn enumerate_cohomology(
    g: &FiniteAbelianGroup,
    b: &FiniteAbelianGroup,
    n: usize,
    cap: u64,
) -> Result<EnumeratedCohomology> {
    if n < 2 {
        return Err(Error::invalid("the enumeration oracle covers degrees >= 2"));
    }
    let cells = normalized_basis(g, n - 1, cap)?;
    let above = normalized_basis(g, n, cap)?;
    let below = normalized_basis(g, n - 2, cap)?;
    let constraints = sparse_rows(g, &above, &cells)?;
    let cocycles = search_cocycles(b, cells.len(), &constraints, cap)?;

    let lower_rows = sparse_rows(g, &cells, &below)?;
    let bsize = b.size();
    let count = (bsize as u64).checked_pow(below.len() as u32);
    if count.is_none_or(|c| c > cap) {
        return Err(Error::cap(format!("{bsize}^{} lower cochains exceed the cap {cap}", below.len())));
    }
    let scale = ScaleTable::new(b, &lower_rows);
    let mut coboundaries = BTreeSet::new();
    let mut c = vec![0usize; below.len()];
    loop {
        coboundaries.insert(lower_rows.iter().map(|row| scale.eval(row, &c)).collect::<Vec<_>>());
        if !super::odometer(&mut c, bsize) {
            break;
        }
    }

    let cob: Vec<&Vec<usize>> = coboundaries.iter().collect();
    let add = |x: &[usize], y: &[usize]| x.iter().zip(y).map(|(&a, &c)| b.add_idx(a, c)).collect::<Vec<_>>();
    let mut class_of: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for z in &cocycles {
        if class_of.contains_key(z) {
            continue;
        }
        let coset: Vec<Vec<usize>> = cob.iter().map(|c| add(z, c)).collect();
        let least = coset.iter().min().expect("coboundaries contain zero").clone();
        for member in coset {
            class_of.insert(member, least.clone());
        }
    }
    let representatives: Vec<Vec<usize>> =
        class_of.values().cloned().collect::<BTreeSet<_>>().into_iter().collect();

    // Order of each class: least k with k z a coboundary.
    let mut stats: BTreeMap<u64, usize> = BTreeMap::new();
    for r in &representatives {
        let mut acc = r.clone();
        let mut k = 1u64;
        while !coboundaries.contains(&acc) {
            acc = add(&acc, r);
            k += 1;
        }
        *stats.entry(k).or_default() += 1;
    }
    let group = group_from_order_statistics(representatives.len() as u64, &stats)?;
    Ok(EnumeratedCohomology { cocycles, coboundaries, representatives, group })
}

/// Rows `X -> [(position of a term of δX, coefficient)]`, over `to`.
fn sparse_rows(g: &FiniteAbelianGroup, from: &NormalizedBasis, to: &NormalizedBasis) -> Result<Vec<Vec<(usize, i64)>>> {
    from.generators
        .iter()
        .map(|x| {
            let d = differential(g, x)?;
            Ok(d.terms().filter_map(|(c, k)| to.position(c).map(|p| (p, k))).collect())
        })
        .collect()
}

struct ScaleTable<'a> {
    b: &'a FiniteAbelianGroup,
    tables: HashMap<i64, Vec<usize>>,
}

impl<'a> ScaleTable<'a> {
    fn new(b: &'a FiniteAbelianGroup, rows: &[Vec<(usize, i64)>]) -> Self {
        let mut tables = HashMap::new();
        for &(_, k) in rows.iter().flatten() {
            tables
                .entry(k)
                .or_insert_with(|| b.elements().map(|e| b.index(&b.scale(k as i128, &e))).collect());
        }
        ScaleTable { b, tables }
    }

    fn eval(&self, row: &[(usize, i64)], values: &[usize]) -> usize {
        row.iter().fold(0, |acc, &(p, k)| self.b.add_idx(acc, self.tables[&k][values[p]]))
    }
}

/// Depth-first search over value tables. Variables are ordered greedily so
/// that constraints close early; each constraint is tested as soon as its
/// last variable is assigned.
fn search_cocycles(
    b: &FiniteAbelianGroup,
    vars: usize,
    constraints: &[Vec<(usize, i64)>],
    cap: u64,
) -> Result<Vec<Vec<usize>>> {
    let constraints: Vec<&Vec<(usize, i64)>> = constraints.iter().filter(|c| !c.is_empty()).collect();
    let mut order = Vec::with_capacity(vars);
    let mut placed = vec![false; vars];
    while order.len() < vars {
        let mut best: Option<(usize, usize)> = None;
        for c in &constraints {
            let open: Vec<usize> = c.iter().map(|&(p, _)| p).filter(|&p| !placed[p]).collect();
            if let Some(&v) = open.iter().min() {
                if best.is_none_or(|(n, bv)| (open.len(), v) < (n, bv)) {
                    best = Some((open.len(), v));
                }
            }
        }
        let v = best.map(|(_, v)| v).unwrap_or_else(|| (0..vars).find(|&p| !placed[p]).expect("unplaced var"));
        placed[v] = true;
        order.push(v);
    }
    let mut depth_of = vec![0usize; vars];
    for (d, &v) in order.iter().enumerate() {
        depth_of[v] = d;
    }
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); vars];
    for (i, c) in constraints.iter().enumerate() {
        let last = c.iter().map(|&(p, _)| depth_of[p]).max().expect("nonempty");
        closing[last].push(i);
    }
    let owned: Vec<Vec<(usize, i64)>> = constraints.iter().map(|c| (*c).clone()).collect();
    let scale = ScaleTable::new(b, &owned);
    let bsize = b.size();
    let mut values = vec![0usize; vars];
    let mut out = Vec::new();
    if vars == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let mut depth = 0usize;
    let mut next = vec![0usize; vars];
    loop {
        let var = order[depth];
        if next[depth] == bsize {
            next[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            continue;
        }
        values[var] = next[depth];
        next[depth] += 1;
        if closing[depth].iter().all(|&i| scale.eval(&owned[i], &values) == 0) {
            if depth + 1 == vars {
                out.push(values.clone());
                if out.len() as u64 > cap {
                    return Err(Error::cap(format!("more than {cap} cocycles")));
                }
            } else {
                depth += 1;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Identifies a finite abelian group of the given order by the number of
/// elements of each order.
pub fn group_from_order_statistics(order: u64, stats: &BTreeMap<u64, usize>) -> Result<FiniteAbelianGroup> {
    for chain in divisor_chains(order) {
        let cand = FiniteAbelianGroup::new(chain)?;
        let mut s: BTreeMap<u64, usize> = BTreeMap::new();
        for e in cand.elements() {
            *s.entry(cand.element_order(&e)).or_default() += 1;
        }
        if &s == stats {
            return Ok(cand.canonical_form());
        }
    }
    Err(Error::Verification(format!("no abelian group of order {order} has the observed element orders")))
}

/// All invariant-factor chains `d_1 | d_2 | ... | d_k` with product `n`.
fn divisor_chains(n: u64) -> Vec<Vec<u64>> {
    fn rec(rest: u64, min: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) && d % min == 0 {
                prefix.push(d);
                rec(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}
