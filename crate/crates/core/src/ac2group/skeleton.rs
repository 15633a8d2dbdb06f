//! Skeletalization of an AC-2-group to its classifying triple, and the
//! equivalence test on triples.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::instance::ACInstance;
use crate::abelian::{isomorphisms, FiniteAbelianGroup, GroupHom};
use crate::cohomology::oracle::group_from_order_statistics;
use crate::cohomology::{coboundary_witness, is_cocycle3, Cochain, CochainFile, CochainSpace, Cohomology};
use crate::config::{Limits, DEFAULT_ENUMERATION_CAP};
use crate::{Error, Result};

/// `(π_0, π_1, z)` with `z` a normalized 3-cocycle over `(π_0, π_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyingTriple {
    z: Cochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleFile {
    pub group: FiniteAbelianGroup,
    pub coeff: FiniteAbelianGroup,
    pub cocycle: CochainFile,
}

impl ClassifyingTriple {
    pub fn new(z: Cochain) -> Result<Self> {
        if z.degree() != 3 {
            return Err(Error::invalid("a classifying triple needs a degree-3 cochain"));
        }
        if let Some(v) = is_cocycle3(&z)?.violation {
            return Err(Error::invalid(format!("z is not a normalized 3-cocycle: {v}")));
        }
        Ok(ClassifyingTriple { z })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.z.base()
    }

    pub fn coeff(&self) -> &FiniteAbelianGroup {
        self.z.coeff()
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.z
    }

    pub fn into_cocycle(self) -> Cochain {
        self.z
    }

    pub fn to_file(&self) -> TripleFile {
        TripleFile { group: self.group().clone(), coeff: self.coeff().clone(), cocycle: self.z.to_file() }
    }

    pub fn from_file(file: &TripleFile, cap: u64) -> Result<Self> {
        let z = Cochain::from_file(&file.cocycle, cap)?;
        if z.base() != &file.group || z.coeff() != &file.coeff {
            return Err(Error::invalid("triple groups differ from the cocycle's groups"));
        }
        Self::new(z)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("triple serializes")
    }

    /// Accepts a triple file or a bare degree-3 cocycle file.
    pub fn from_json_str(s: &str, cap: u64) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::parse(format!("triple: {e}")))?;
        if value.get("cocycle").is_some() {
            let file: TripleFile = serde_json::from_value(value).map_err(|e| Error::parse(format!("triple: {e}")))?;
            Self::from_file(&file, cap)
        } else {
            let file: CochainFile =
                serde_json::from_value(value).map_err(|e| Error::parse(format!("cocycle: {e}")))?;
            Self::new(Cochain::from_file(&file, cap)?)
        }
    }
}

/// Representatives `x_g` (one object per isomorphism class, the unit object
/// for the class of the unit) and isomorphisms `ι_x : x -> x_[x]`, with
/// `ι` the identity on representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Choices {
    pub representatives: Vec<usize>,
    pub iota: Vec<usize>,
}

/// Connected components of the underlying groupoid, numbered by least member.
fn components(x: &ACInstance) -> Vec<usize> {
    let c = x.cat();
    let n = c.n_objects();
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        for y in 0..n {
            if !c.hom(start, y).is_empty() || !c.hom(y, start).is_empty() {
                comp[y] = next;
            }
        }
        next += 1;
    }
    comp
}

impl Choices {
    /// Least object of each class (the unit for its own class) and the least
    /// morphism `x -> x_[x]`.
    pub fn canonical(x: &ACInstance) -> Result<Self> {
        let c = x.cat();
        let comp = components(x);
        let k = comp.iter().max().map_or(0, |m| m + 1);
        let mut reps: Vec<Option<usize>> = vec![None; k];
        reps[comp[c.unit()]] = Some(c.unit());
        for (obj, &cl) in comp.iter().enumerate() {
            reps[cl].get_or_insert(obj);
        }
        let representatives: Vec<usize> = reps.into_iter().map(|r| r.expect("nonempty class")).collect();
        Self::with_representatives(x, &comp, representatives, |hom| hom[0])
    }

    /// Seeded random representatives and isomorphisms.
    pub fn random(x: &ACInstance, seed: u64) -> Result<Self> {
        let c = x.cat();
        let comp = components(x);
        let k = comp.iter().max().map_or(0, |m| m + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut representatives = Vec::with_capacity(k);
        for cl in 0..k {
            let members: Vec<usize> = (0..comp.len()).filter(|&o| comp[o] == cl).collect();
            if cl == comp[c.unit()] {
                representatives.push(c.unit());
            } else {
                representatives.push(*members.choose(&mut rng).expect("nonempty class"));
            }
        }
        Self::with_representatives(x, &comp, representatives, |hom| *hom.choose(&mut rng).expect("nonempty hom"))
    }

    fn with_representatives(
        x: &ACInstance,
        comp: &[usize],
        representatives: Vec<usize>,
        mut pick: impl FnMut(&[usize]) -> usize,
    ) -> Result<Self> {
        let c = x.cat();
        let iota = (0..c.n_objects())
            .map(|obj| {
                let rep = representatives[comp[obj]];
                if rep == obj {
                    return Ok(c.id(obj));
                }
                let hom = c.hom(obj, rep);
                if hom.is_empty() {
                    return Err(Error::invalid("not a groupoid: an object has no arrow to its representative"));
                }
                Ok(pick(hom))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Choices { representatives, iota })
    }
}

/// Identifies a finite abelian group given by an operation table on
/// `0..n` with an explicit isomorphism `table element -> canonical index`.
pub fn identify_group(n: usize, op: &dyn Fn(usize, usize) -> usize, zero: usize) -> Result<(FiniteAbelianGroup, Vec<usize>)> {
    for a in 0..n {
        if op(zero, a) != a || op(a, zero) != a {
            return Err(Error::Verification("the operation has no two-sided neutral element".into()));
        }
        for b in 0..n {
            if op(a, b) != op(b, a) {
                return Err(Error::Verification("the operation is not commutative".into()));
            }
        }
    }
    let order_of = |a: usize| -> Result<u64> {
        let mut acc = a;
        let mut k = 1u64;
        while acc != zero {
            acc = op(acc, a);
            k += 1;
            if k as usize > n {
                return Err(Error::Verification("an element has no finite order".into()));
            }
        }
        Ok(k)
    };
    let mut stats: BTreeMap<u64, usize> = BTreeMap::new();
    let orders = (0..n).map(order_of).collect::<Result<Vec<_>>>()?;
    for &o in &orders {
        *stats.entry(o).or_default() += 1;
    }
    let group = group_from_order_statistics(n as u64, &stats)?;
    let moduli = group.moduli().to_vec();
    let mul = |k: u64, a: usize| (0..k).fold(zero, |acc, _| op(acc, a));

    // Depth-first search over images of the canonical generators.
    let mut images: Vec<usize> = Vec::with_capacity(moduli.len());
    fn extend(
        images: &mut Vec<usize>,
        moduli: &[u64],
        orders: &[u64],
        group: &FiniteAbelianGroup,
        n: usize,
        op: &dyn Fn(usize, usize) -> usize,
        mul: &dyn Fn(u64, usize) -> usize,
    ) -> Option<Vec<usize>> {
        if images.len() == moduli.len() {
            let forward: Vec<usize> = group
                .elements()
                .map(|e| {
                    e.residues.iter().zip(images.iter()).fold(
                        mul(0, 0),
                        |acc, (&r, &img)| op(acc, mul(r, img)),
                    )
                })
                .collect();
            let mut backward = vec![usize::MAX; n];
            for (i, &f) in forward.iter().enumerate() {
                if backward[f] != usize::MAX {
                    return None;
                }
                backward[f] = i;
            }
            return Some(backward);
        }
        let m = moduli[images.len()];
        for a in 0..n {
            if orders[a] == m {
                images.push(a);
                if let Some(found) = extend(images, moduli, orders, group, n, op, mul) {
                    return Some(found);
                }
                images.pop();
            }
        }
        None
    }
    let backward = extend(&mut images, &moduli, &orders, &group, n, op, &mul)
        .ok_or_else(|| Error::Verification("no isomorphism onto the identified group".into()))?;
    for a in 0..n {
        for b in 0..n {
            if backward[op(a, b)] != group.add_idx(backward[a], backward[b]) {
                return Err(Error::Verification("the operation is not associative".into()));
            }
        }
    }
    Ok((group, backward))
}

/// The classifying triple of an AC-2-group, with `z` read off from
/// `H(z, Σ) ∘ ι_{x_{g1+g2} x_{g3+g4}} ∘ (ι·ι) = ι_{x_{g1+g3} x_{g2+g4}} ∘ (ι·ι) ∘ b(x_{g1}, x_{g2}, x_{g3}, x_{g4})`
/// where `H(u, g) = r ∘ (id·u) ∘ r^{-1}` transports a unit automorphism to `x_g`.
/// An annotation on the instance fixes the identification of `π_0` and `π_1`;
/// otherwise both groups are identified abstractly.
pub fn skeletalize(x: &ACInstance, choices: &Choices) -> Result<ClassifyingTriple> {
    let c = x.cat();
    let n = c.n_objects();
    let u = c.unit();
    if let Some(f) = (0..c.n_morphisms()).find(|&f| c.inv(f).is_none()) {
        return Err(Error::invalid(format!("not a groupoid: {} has no inverse", c.morphism_label(f))));
    }
    let comp = components(x);
    let k = comp.iter().max().map_or(0, |m| m + 1);

    if choices.representatives.len() != k || choices.iota.len() != n {
        return Err(Error::invalid("choices must name one representative per class and one ι per object"));
    }
    for (cl, &rep) in choices.representatives.iter().enumerate() {
        if rep >= n || comp[rep] != cl {
            return Err(Error::invalid(format!("representative for class {cl} is not in that class")));
        }
    }
    if choices.representatives[comp[u]] != u {
        return Err(Error::invalid("the unit class must be represented by the unit object"));
    }
    for obj in 0..n {
        let rep = choices.representatives[comp[obj]];
        let iota = choices.iota[obj];
        if iota >= c.n_morphisms() || !c.has_type(iota, obj, rep) || (rep == obj && !c.is_identity(iota)) {
            return Err(Error::invalid(format!("ι for {} is not a valid choice", c.object_label(obj))));
        }
    }

    // π_0 on classes.
    let class_op = |a: usize, b: usize| comp[c.osum(choices.representatives[a], choices.representatives[b])];
    for a in 0..n {
        for b in 0..n {
            if comp[c.osum(a, b)] != class_op(comp[a], comp[b]) {
                return Err(Error::invalid("the product is not well defined on isomorphism classes"));
            }
        }
    }
    for a in 0..k {
        if !(0..k).any(|b| class_op(a, b) == comp[u]) {
            return Err(Error::invalid("an object has no weak inverse"));
        }
    }
    let annotation = c.annotation();
    let (g, class_to_g) = match annotation {
        Some(ann) => {
            let g = FiniteAbelianGroup::parse(&ann.pi0)?;
            let mut map = vec![usize::MAX; k];
            for (obj, e) in ann.object_classes.iter().enumerate() {
                g.check_element(e)?;
                let gi = g.index(e);
                if map[comp[obj]] != usize::MAX && map[comp[obj]] != gi {
                    return Err(Error::invalid("annotation assigns different classes to isomorphic objects"));
                }
                map[comp[obj]] = gi;
            }
            check_iso(&g, &map, k, &class_op, comp[u], "π0")?;
            (g, map)
        }
        None => identify_group(k, &class_op, comp[u])?,
    };
    let mut rep_of = vec![usize::MAX; g.size()];
    for (cl, &gi) in class_to_g.iter().enumerate() {
        rep_of[gi] = choices.representatives[cl];
    }

    // π_1 on automorphisms of the unit.
    let auts = c.hom(u, u).to_vec();
    let pos: BTreeMap<usize, usize> = auts.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let aut_op = |p: usize, q: usize| pos[&c.comp(auts[p], auts[q]).expect("endomorphisms compose")];
    let d = x.l(u);
    if d != x.r(u) {
        return Err(Error::Verification("l_1 and r_1 differ".into()));
    }
    let d_inv = c.inv(d).expect("groupoid");
    for &p in &auts {
        for &q in &auts {
            if c.seq(&[d_inv, c.msum(p, q), d]) != c.comp(p, q) {
                return Err(Error::Verification(
                    "composition of unit automorphisms differs from the Eckmann-Hilton sum".into(),
                ));
            }
        }
    }
    let zero_aut = pos[&c.id(u)];
    let (a, aut_to_a) = match annotation {
        Some(ann) => {
            let a = FiniteAbelianGroup::parse(&ann.pi1)?;
            let mut map = vec![usize::MAX; auts.len()];
            for ua in &ann.unit_automorphisms {
                a.check_element(&ua.value)?;
                let p = *pos.get(&ua.morphism).ok_or_else(|| Error::invalid("annotated morphism is not a unit automorphism"))?;
                map[p] = a.index(&ua.value);
            }
            check_iso(&a, &map, auts.len(), &aut_op, zero_aut, "π1")?;
            (a, map)
        }
        None => identify_group(auts.len(), &aut_op, zero_aut)?,
    };

    // δ_x(u) = r_x ∘ (id_x·u) ∘ r_x^{-1}, inverted on each representative.
    let mut delta_inv: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); g.size()];
    for (gi, &rep) in rep_of.iter().enumerate() {
        let r = x.r(rep);
        let r_inv = c.inv(r).expect("groupoid");
        for (p, &f) in auts.iter().enumerate() {
            let t = c
                .seq(&[r_inv, c.msum(c.id(rep), f), r])
                .ok_or_else(|| Error::Verification("transport of a unit automorphism is not composable".into()))?;
            if delta_inv[gi].insert(t, aut_to_a[p]).is_some() {
                return Err(Error::Verification("transport of unit automorphisms is not injective".into()));
            }
        }
    }

    let ng = g.size();
    let add = g.add_table();
    let iota = |obj: usize| choices.iota[obj];
    let mut table = vec![0usize; ng.pow(4)];
    for (idx, slot) in table.iter_mut().enumerate() {
        let gs = [idx / (ng * ng * ng), (idx / (ng * ng)) % ng, (idx / ng) % ng, idx % ng];
        let xs = gs.map(|gi| rep_of[gi]);
        let (x12, x34) = (c.osum(xs[0], xs[1]), c.osum(xs[2], xs[3]));
        let (x13, x24) = (c.osum(xs[0], xs[2]), c.osum(xs[1], xs[3]));
        let top = c.seq(&[
            c.msum(iota(x12), iota(x34)),
            iota(c.osum(rep_of[add.add(gs[0], gs[1])], rep_of[add.add(gs[2], gs[3])])),
        ]);
        let bottom = c.seq(&[
            x.b(xs[0], xs[1], xs[2], xs[3]),
            c.msum(iota(x13), iota(x24)),
            iota(c.osum(rep_of[add.add(gs[0], gs[2])], rep_of[add.add(gs[1], gs[3])])),
        ]);
        let h = top
            .and_then(|t| c.inv(t))
            .zip(bottom)
            .and_then(|(ti, bo)| c.comp(bo, ti))
            .ok_or_else(|| Error::Verification("the defining diagram of z is not composable".into()))?;
        let sigma = add.add(add.add(gs[0], gs[1]), add.add(gs[2], gs[3]));
        *slot = *delta_inv[sigma]
            .get(&h)
            .ok_or_else(|| Error::Verification("comparison morphism is not a transported unit automorphism".into()))?;
    }
    let space = CochainSpace::new(&g, &a, 3, DEFAULT_ENUMERATION_CAP)?;
    let z = Cochain::from_table4(&space, &table).map_err(|e| {
        Error::Verification(format!("the read-off cochain is not normalized ({e}); the unitors are not identities"))
    })?;
    if let Some(v) = is_cocycle3(&z)?.violation {
        return Err(Error::Verification(format!("the read-off cochain is not a cocycle: {v}")));
    }
    ClassifyingTriple::new(z)
}

/// Checks that `map` is a bijective homomorphism from `(0..k, op)` onto `g`.
fn check_iso(
    g: &FiniteAbelianGroup,
    map: &[usize],
    k: usize,
    op: &dyn Fn(usize, usize) -> usize,
    zero: usize,
    what: &str,
) -> Result<()> {
    let mut seen = vec![false; g.size()];
    if k != g.size() || map.contains(&usize::MAX) || map[zero] != 0 {
        return Err(Error::invalid(format!("annotation does not identify {what} with {g}")));
    }
    for &v in map {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!("annotation of {what} is not injective")));
        }
    }
    for p in 0..k {
        for q in 0..k {
            if map[op(p, q)] != g.add_idx(map[p], map[q]) {
                return Err(Error::invalid(format!("annotation of {what} is not a homomorphism")));
            }
        }
    }
    Ok(())
}

/// Outcome of [`equivalent`]: isomorphisms `g : G -> G'`, `f : A -> A'` and a
/// 2-cochain `c` over `(G, A')` with `g^*(z') = f_*(z) + ∂c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent { g: GroupHom, f: GroupHom, witness: Cochain },
    Inequivalent,
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

/// Isomorphisms in search order: the identity first when the groups agree.
fn ordered_isomorphisms(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup, cap: u64) -> Result<Vec<GroupHom>> {
    let mut isos = isomorphisms(g, h, cap)?;
    if g == h {
        let id = GroupHom::identity(g);
        if let Some(i) = isos.iter().position(|f| *f == id) {
            let first = isos.remove(i);
            isos.insert(0, first);
        }
    }
    Ok(isos)
}

/// Searches `Aut`-twisted coboundary witnesses between two triples in a
/// fixed order (isomorphisms of `G` outer, of `A` inner).
pub fn equivalent(t: &ClassifyingTriple, t2: &ClassifyingTriple, cap: u64) -> Result<Equivalence> {
    if !t.group().is_isomorphic(t2.group()) || !t.coeff().is_isomorphic(t2.coeff()) {
        return Ok(Equivalence::Inequivalent);
    }
    let gs = ordered_isomorphisms(t.group(), t2.group(), cap)?;
    let fs = ordered_isomorphisms(t.coeff(), t2.coeff(), cap)?;
    if (gs.len() as u64).saturating_mul(fs.len() as u64) > cap {
        return Err(Error::cap(format!("{} x {} isomorphism pairs exceed the cap {cap}", gs.len(), fs.len())));
    }
    let space = CochainSpace::new(t.group(), t2.coeff(), 3, cap)?;
    for g in &gs {
        let pulled = t2.cocycle().pullback(g, &space)?;
        for f in &fs {
            let pushed = t.cocycle().pushforward(f, &space)?;
            if let Some(witness) = coboundary_witness(&pulled.sub(&pushed)?)? {
                return Ok(Equivalence::Equivalent { g: g.clone(), f: f.clone(), witness });
            }
        }
    }
    Ok(Equivalence::Inequivalent)
}

/// One equivalence class of AC-2-groups with fixed `(π_0, π_1)`: its least
/// cohomology-class representative and all representatives in the orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub representative: ClassifyingTriple,
    pub members: Vec<Cochain>,
}

/// Orbits of `H^3(G, A)` under `Aut(G) x Aut(A)`, each represented by the
/// least lexicographic class representative; sorted by that representative.
pub fn classify(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, limits: Limits) -> Result<Vec<EquivalenceClass>> {
    let cap = limits.enumeration_cap;
    let coh = Cohomology::compute(g, a, 3, Limits { degree_cap: limits.degree_cap.max(3), ..limits })?;
    let reps = coh.representatives(cap)?;
    let auts_g = isomorphisms(g, g, cap)?;
    let auts_a = isomorphisms(a, a, cap)?;
    if (auts_g.len() as u64).saturating_mul(auts_a.len() as u64) > cap {
        return Err(Error::cap("automorphism pairs exceed the cap"));
    }
    let index: BTreeMap<&Cochain, usize> = reps.iter().enumerate().map(|(i, z)| (z, i)).collect();
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let space = coh.space().clone();
    for (i, z) in reps.iter().enumerate() {
        for gh in &auts_g {
            let pulled = z.pullback(gh, &space)?;
            for fh in &auts_a {
                let moved = coh.class_representative(&pulled.pushforward(fh, &space)?)?;
                let j = *index
                    .get(&moved)
                    .ok_or_else(|| Error::Verification("class representative outside the representative list".into()))?;
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<Cochain>> = BTreeMap::new();
    for (i, z) in reps.iter().enumerate() {
        let root = find(&mut parent, i);
        classes.entry(root).or_default().push(z.clone());
    }
    classes
        .into_values()
        .map(|members| {
            Ok(EquivalenceClass { representative: ClassifyingTriple::new(members[0].clone())?, members })
        })
        .collect()
}
