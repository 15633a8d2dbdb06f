//! Semistrict AC-categories (identity unitors, `b(x,y,z,t)` an identity when
//! `y` or `z` is the unit) and their description by `c_{x,y} = b(1,x,y,1)`.

use crate::abelian::FiniteAbelianGroup;
use crate::ac2group::{
    equivalent, first_violation, ACInstance, CheckResult, ClassifyingTriple, Equivalence, MonoidalGroupoid, Report,
};
use crate::cohomology::{is_cocycle3, Cochain, CochainSpace};
use crate::{Error, Result};

/// First reason the product is not strictly associative with a strict unit,
/// on objects or on morphisms.
pub fn strict_product_violation(cat: &MonoidalGroupoid) -> Result<Option<String>> {
    let (n, m, u) = (cat.n_objects(), cat.n_morphisms(), cat.unit());
    if let Some(t) = first_violation(n, 3, |t| cat.osum(cat.osum(t[0], t[1]), t[2]) == cat.osum(t[0], cat.osum(t[1], t[2])))? {
        return Ok(Some(format!("object product not associative at {}", cat.fmt_objects(&t))));
    }
    if let Some(f) = (0..m).find(|&f| cat.msum(cat.id(u), f) != f || cat.msum(f, cat.id(u)) != f) {
        return Ok(Some(format!("unit is not strict at ({})", cat.morphism_label(f))));
    }
    if let Some(t) = first_violation(m, 3, |t| cat.msum(cat.msum(t[0], t[1]), t[2]) == cat.msum(t[0], cat.msum(t[1], t[2])))? {
        let labels: Vec<&str> = t.iter().map(|&f| cat.morphism_label(f)).collect();
        return Ok(Some(format!("morphism product not associative at ({})", labels.join(","))));
    }
    Ok(None)
}

/// First reason `x` is not semistrict.
pub fn semistrict_violation(x: &ACInstance) -> Result<Option<String>> {
    let c = x.cat();
    let (n, u) = (c.n_objects(), c.unit());
    if let Some(v) = (0..n).find(|&o| !c.is_identity(x.l(o)) || !c.is_identity(x.r(o))) {
        return Ok(Some(format!("unitor at {} is not an identity", c.object_label(v))));
    }
    let t = first_violation(n, 4, |t| (t[1] != u && t[2] != u) || c.is_identity(x.b(t[0], t[1], t[2], t[3])))?;
    Ok(t.map(|t| format!("b{} is not an identity", c.fmt_objects(&t))))
}

/// The family `c_{x,y} = b(1,x,y,1) : xy -> yx`, at `x*n+y`.
pub fn semistrict_commutator(x: &ACInstance) -> Result<Vec<usize>> {
    if let Some(v) = semistrict_violation(x)? {
        return Err(Error::invalid(format!("instance is not semistrict: {v}")));
    }
    let n = x.n_objects();
    let u = x.cat().unit();
    Ok((0..n * n).map(|i| x.b(u, i / n, i % n, u)).collect())
}

/// `sac1`-`sac3` on the components `b(1,x,y,1)` of a semistrict instance.
pub fn verify_sac(x: &ACInstance) -> Result<Report> {
    let c = x.cat();
    let (n, u) = (c.n_objects(), c.unit());
    let fmt = |t: &[usize]| c.fmt_objects(t);
    let bc = |p: usize, q: usize| x.b(u, p, q, u);
    let mut report = Report::default();
    let sac1 = first_violation(n, 3, |t| {
        let (p, q, r) = (t[0], t[1], t[2]);
        let rhs = c.seq(&[c.msum(bc(p, q), c.id(r)), c.msum(c.id(q), bc(p, r))]);
        rhs == Some(bc(p, c.osum(q, r)))
    })?;
    report.push(CheckResult::from_violation("sac1", sac1.map(|t| fmt(&t))));
    let sac2 = first_violation(n, 2, |t| c.seq(&[bc(t[0], t[1]), bc(t[1], t[0])]) == Some(c.id(c.osum(t[0], t[1]))))?;
    report.push(CheckResult::from_violation("sac2", sac2.map(|t| fmt(&t))));
    let sac3 = (0..n).find(|&p| bc(u, p) != c.id(p)).map(|p| fmt(&[p]));
    report.push(CheckResult::from_violation("sac3", sac3));
    Ok(report)
}

/// Types and naturality of a family `c_{x,y} : xy -> yx`, and `ssm1`-`ssm3`.
pub fn verify_ssm(cat: &MonoidalGroupoid, fam: &[usize]) -> Result<Report> {
    let (n, u) = (cat.n_objects(), cat.unit());
    if fam.len() != n * n || fam.iter().any(|&f| f >= cat.n_morphisms()) {
        return Err(Error::Dimension("the family needs one morphism per ordered object pair".into()));
    }
    let fmt = |t: &[usize]| cat.fmt_objects(t);
    let cc = |p: usize, q: usize| fam[p * n + q];
    let mut report = Report::default();
    let types = first_violation(n, 2, |t| cat.has_type(cc(t[0], t[1]), cat.osum(t[0], t[1]), cat.osum(t[1], t[0])))?;
    report.push(CheckResult::from_violation("c-types", types.map(|t| fmt(&t))));
    let natural = cat.naturality_violation(2, &|t| cc(t[0], t[1]), &|f| cat.msum(f[0], f[1]), &|f| cat.msum(f[1], f[0]))?;
    report.push(CheckResult::from_violation("c-natural", natural));
    let ssm1 = first_violation(n, 3, |t| {
        let (p, q, r) = (t[0], t[1], t[2]);
        let rhs = cat.seq(&[cat.msum(cc(p, q), cat.id(r)), cat.msum(cat.id(q), cc(p, r))]);
        rhs == Some(cc(p, cat.osum(q, r)))
    })?;
    report.push(CheckResult::from_violation("ssm1", ssm1.map(|t| fmt(&t))));
    let ssm2 = first_violation(n, 2, |t| cat.seq(&[cc(t[0], t[1]), cc(t[1], t[0])]) == Some(cat.id(cat.osum(t[0], t[1]))))?;
    report.push(CheckResult::from_violation("ssm2", ssm2.map(|t| fmt(&t))));
    let ssm3 = (0..n).find(|&p| cc(u, p) != cat.id(p)).map(|p| fmt(&[p]));
    report.push(CheckResult::from_violation("ssm3", ssm3));
    Ok(report)
}

/// The semistrict instance with `b(x,y,z,t) = id_x·c_{y,z}·id_t` and
/// identity unitors. Needs a strictly associative product with a strict
/// unit and a family satisfying `ssm1`-`ssm3`.
pub fn build_from_commutator(cat: &MonoidalGroupoid, fam: &[usize]) -> Result<ACInstance> {
    if let Some(v) = strict_product_violation(cat)? {
        return Err(Error::invalid(format!("the product must be strict: {v}")));
    }
    let report = verify_ssm(cat, fam)?;
    if let Some(f) = report.failures().next() {
        return Err(Error::invalid(format!("the family violates {f}")));
    }
    let n = cat.n_objects();
    let b = (0..n.pow(4))
        .map(|i| {
            let (x, y, z, t) = (i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n);
            cat.msum(cat.msum(cat.id(x), fam[y * n + z]), cat.id(t))
        })
        .collect();
    let ids: Vec<usize> = (0..n).map(|x| cat.id(x)).collect();
    ACInstance::new(cat.clone(), b, ids.clone(), ids)
}

/// Bilinear skew-symmetric maps `G x G -> A`, as value tables at `x*n+y`,
/// in lexicographic order of their values on generator pairs.
pub fn skew_bilinear_maps(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, cap: u64) -> Result<Vec<Vec<usize>>> {
    let r = g.rank();
    let k = a.size();
    let count = (k as u64).checked_pow((r * r) as u32);
    if count.is_none_or(|c| c > cap) {
        return Err(Error::cap(format!("{k}^{} generator-pair assignments exceed the cap {cap}", r * r)));
    }
    let n = g.size();
    let elems: Vec<_> = g.elements().collect();
    let mut out = Vec::new();
    let mut vals = vec![0usize; r * r];
    loop {
        let ok = (0..r * r).all(|p| {
            let (i, j) = (p / r, p % r);
            let e = a.element(vals[p]);
            a.scale(g.moduli()[i] as i128, &e).is_zero() && a.scale(g.moduli()[j] as i128, &e).is_zero()
        });
        if ok {
            let table: Vec<usize> = (0..n * n)
                .map(|idx| {
                    let (x, y) = (&elems[idx / n], &elems[idx % n]);
                    let mut acc = a.zero();
                    for i in 0..r {
                        for j in 0..r {
                            let term = a.scale((x.residues[i] * y.residues[j]) as i128, &a.element(vals[i * r + j]));
                            acc = a.add(&acc, &term);
                        }
                    }
                    a.index(&acc)
                })
                .collect();
            let skew = (0..n * n).all(|idx| a.add_idx(table[idx], table[(idx % n) * n + idx / n]) == 0);
            if skew {
                out.push(table);
            }
        }
        if !crate::cohomology::odometer(&mut vals, k) {
            break;
        }
    }
    Ok(out)
}

/// A semistrict special triple equivalent to `t`: the first skew bilinear
/// `c` (in [`skew_bilinear_maps`] order) whose cocycle `z_c(x,y,z,t) = c(y,z)`
/// is equivalent to `t`, with the equivalence found.
pub fn semistrict_model(t: &ClassifyingTriple, cap: u64) -> Result<Option<(ClassifyingTriple, Equivalence)>> {
    let (g, a) = (t.group(), t.coeff());
    let n = g.size();
    let space = CochainSpace::new(g, a, 3, cap)?;
    for c in skew_bilinear_maps(g, a, cap)? {
        let table: Vec<usize> = (0..n.pow(4)).map(|i| c[((i / (n * n)) % n) * n + (i / n) % n]).collect();
        let Ok(z) = Cochain::from_table4(&space, &table) else { continue };
        if !is_cocycle3(&z)?.holds() {
            continue;
        }
        let model = ClassifyingTriple::new(z)?;
        let verdict = equivalent(t, &model, cap)?;
        if verdict.is_equivalent() {
            return Ok(Some((model, verdict)));
        }
    }
    Ok(None)
}
