use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::ac2group::{first_violation, special_groupoid, special_morphism, CheckResult, GroupoidFile, MonoidalGroupoid, Report};
use crate::{Error, Result};

/// A symmetric monoidal category presented by tables: the associator
/// `a_{x,y,z} : x(yz) -> (xy)z` at `(x*n+y)*n+z`, the commutator
/// `c_{x,y} : xy -> yx` at `x*n+y`, and unitors `l_x : 1x -> x`, `r_x : x1 -> x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMCInstance {
    cat: MonoidalGroupoid,
    a: Vec<usize>,
    c: Vec<usize>,
    l: Vec<usize>,
    r: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMCInstanceFile {
    pub kind: String,
    #[serde(flatten)]
    pub category: GroupoidFile,
    pub a_table: Vec<usize>,
    pub c_table: Vec<usize>,
    pub l_table: Vec<usize>,
    pub r_table: Vec<usize>,
}

impl SMCInstance {
    pub fn new(cat: MonoidalGroupoid, a: Vec<usize>, c: Vec<usize>, l: Vec<usize>, r: Vec<usize>) -> Result<Self> {
        let n = cat.n_objects();
        if a.len() != n.pow(3) || c.len() != n * n || l.len() != n || r.len() != n {
            return Err(Error::Dimension(format!(
                "a/c/l/r tables must have {}/{}/{n}/{n} entries",
                n.pow(3),
                n * n
            )));
        }
        if a.iter().chain(&c).chain(&l).chain(&r).any(|&f| f >= cat.n_morphisms()) {
            return Err(Error::invalid("structure table entry is not a morphism"));
        }
        Ok(SMCInstance { cat, a, c, l, r })
    }

    pub fn cat(&self) -> &MonoidalGroupoid {
        &self.cat
    }

    pub fn n_objects(&self) -> usize {
        self.cat.n_objects()
    }

    pub fn a(&self, x: usize, y: usize, z: usize) -> usize {
        let n = self.n_objects();
        self.a[(x * n + y) * n + z]
    }

    pub fn c(&self, x: usize, y: usize) -> usize {
        self.c[x * self.n_objects() + y]
    }

    pub fn l(&self, x: usize) -> usize {
        self.l[x]
    }

    pub fn r(&self, x: usize) -> usize {
        self.r[x]
    }

    pub fn a_table(&self) -> &[usize] {
        &self.a
    }

    pub fn c_table(&self) -> &[usize] {
        &self.c
    }

    pub fn l_table(&self) -> &[usize] {
        &self.l
    }

    pub fn r_table(&self) -> &[usize] {
        &self.r
    }

    pub fn to_file(&self) -> SMCInstanceFile {
        SMCInstanceFile {
            kind: "sm".into(),
            category: self.cat.to_file(),
            a_table: self.a.clone(),
            c_table: self.c.clone(),
            l_table: self.l.clone(),
            r_table: self.r.clone(),
        }
    }

    pub fn from_file(file: &SMCInstanceFile) -> Result<Self> {
        if file.kind != "sm" {
            return Err(Error::invalid(format!("expected an instance of kind \"sm\", got \"{}\"", file.kind)));
        }
        let cat = MonoidalGroupoid::from_file(&file.category)?;
        SMCInstance::new(cat, file.a_table.clone(), file.c_table.clone(), file.l_table.clone(), file.r_table.clone())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: SMCInstanceFile =
            serde_json::from_str(s).map_err(|e| Error::parse(format!("symmetric monoidal instance: {e}")))?;
        Self::from_file(&file)
    }
}

/// Skeletal symmetric monoidal instance on the special groupoid of `(G, A)`
/// with `a_{x,y,z} = (h(x,y,z), x+y+z)`, `c_{x,y} = (c(x,y), x+y)` and
/// identity unitors. Tables are indexed like the instance tables.
pub fn skeletal_smc(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, h: &[usize], c: &[usize]) -> Result<SMCInstance> {
    let n = g.size();
    let k = a.size();
    if h.len() != n.pow(3) || c.len() != n * n {
        return Err(Error::Dimension("h needs |G|^3 and c needs |G|^2 entries".into()));
    }
    if h.iter().chain(c).any(|&v| v >= k) {
        return Err(Error::invalid("value outside the coefficient group"));
    }
    let cat = special_groupoid(g, a)?;
    let add = g.add_table();
    let a_table = (0..n.pow(3))
        .map(|i| special_morphism(k, add.add(add.add(i / (n * n), (i / n) % n), i % n), h[i]))
        .collect();
    let c_table = (0..n * n).map(|i| special_morphism(k, add.add(i / n, i % n), c[i])).collect();
    let ids: Vec<usize> = (0..n).map(|x| cat.id(x)).collect();
    SMCInstance::new(cat, a_table, c_table, ids.clone(), ids)
}

/// Strict instance: every structure morphism is an identity.
pub fn strict_smc(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup) -> Result<SMCInstance> {
    let n = g.size();
    skeletal_smc(g, a, &vec![0; n.pow(3)], &vec![0; n * n])
}

/// The sign symmetric 2-group over `(Z2, Z2)`: identity associator and
/// unitors, `c_{1,1}` the nontrivial automorphism.
pub fn sign_smc() -> Result<SMCInstance> {
    let z2 = FiniteAbelianGroup::cyclic(2)?;
    skeletal_smc(&z2, &z2, &[0; 8], &[0, 0, 0, 1])
}

/// Types and naturality of `a`, `c`, `l`, `r`; pentagon, triangle, both
/// hexagons and symmetry, exhaustively.
pub fn verify_smc_axioms(s: &SMCInstance) -> Result<Report> {
    let c = s.cat();
    let n = c.n_objects();
    let u = c.unit();
    let mut report = Report::default();
    for check in c.structural_checks()? {
        report.push(check);
    }
    let fmt = |t: &[usize]| c.fmt_objects(t);
    let o = |x: usize, y: usize| c.osum(x, y);
    let m = |f: usize, g: usize| c.msum(f, g);
    let id = |x: usize| c.id(x);
    let inv = |f: usize| c.inv(f);

    let a_types = first_violation(n, 3, |t| c.has_type(s.a(t[0], t[1], t[2]), o(t[0], o(t[1], t[2])), o(o(t[0], t[1]), t[2])))?;
    report.push(CheckResult::from_violation("a-types", a_types.map(|t| fmt(&t))));
    let c_types = first_violation(n, 2, |t| c.has_type(s.c(t[0], t[1]), o(t[0], t[1]), o(t[1], t[0])))?;
    report.push(CheckResult::from_violation("c-types", c_types.map(|t| fmt(&t))));
    let lr_types = (0..n)
        .find(|&x| !c.has_type(s.l(x), o(u, x), x) || !c.has_type(s.r(x), o(x, u), x))
        .map(|x| fmt(&[x]));
    report.push(CheckResult::from_violation("lr-types", lr_types));

    let a_nat = c.naturality_violation(3, &|t| s.a(t[0], t[1], t[2]), &|f| m(f[0], m(f[1], f[2])), &|f| m(m(f[0], f[1]), f[2]))?;
    report.push(CheckResult::from_violation("a-natural", a_nat));
    let c_nat = c.naturality_violation(2, &|t| s.c(t[0], t[1]), &|f| m(f[0], f[1]), &|f| m(f[1], f[0]))?;
    report.push(CheckResult::from_violation("c-natural", c_nat));
    let l_nat = c.naturality_violation(1, &|t| s.l(t[0]), &|f| m(id(u), f[0]), &|f| f[0])?;
    report.push(CheckResult::from_violation("l-natural", l_nat));
    let r_nat = c.naturality_violation(1, &|t| s.r(t[0]), &|f| m(f[0], id(u)), &|f| f[0])?;
    report.push(CheckResult::from_violation("r-natural", r_nat));

    let pentagon = first_violation(n, 4, |t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        let lhs = c.seq(&[s.a(x, y, o(z, w)), s.a(o(x, y), z, w)]);
        let rhs = c.seq(&[m(id(x), s.a(y, z, w)), s.a(x, o(y, z), w), m(s.a(x, y, z), id(w))]);
        lhs.is_some() && lhs == rhs
    })?;
    report.push(CheckResult::from_violation("pentagon", pentagon.map(|t| fmt(&t))));
    let triangle = first_violation(n, 2, |t| {
        let (x, y) = (t[0], t[1]);
        c.seq(&[s.a(x, u, y), m(s.r(x), id(y))]) == Some(m(id(x), s.l(y)))
    })?;
    report.push(CheckResult::from_violation("triangle", triangle.map(|t| fmt(&t))));
    let hexagon = first_violation(n, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = c.seq_opt(&[inv(s.a(x, y, z)), Some(s.c(x, o(y, z)))]);
        let rhs = c.seq_opt(&[
            Some(m(s.c(x, y), id(z))),
            inv(s.a(y, x, z)),
            Some(m(id(y), s.c(x, z))),
            Some(s.a(y, z, x)),
        ]);
        lhs.is_some() && lhs == rhs
    })?;
    report.push(CheckResult::from_violation("hexagon", hexagon.map(|t| fmt(&t))));
    let hexagon_inv = first_violation(n, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = c.seq(&[s.a(x, y, z), s.c(o(x, y), z)]);
        let rhs = c.seq_opt(&[
            Some(m(id(x), s.c(y, z))),
            Some(s.a(x, z, y)),
            Some(m(s.c(x, z), id(y))),
            inv(s.a(z, x, y)),
        ]);
        lhs.is_some() && lhs == rhs
    })?;
    report.push(CheckResult::from_violation("hexagon-inverse", hexagon_inv.map(|t| fmt(&t))));
    let symmetry = first_violation(n, 2, |t| c.seq(&[s.c(t[0], t[1]), s.c(t[1], t[0])]) == Some(id(o(t[0], t[1]))))?;
    report.push(CheckResult::from_violation("symmetry", symmetry.map(|t| fmt(&t))));
    Ok(report)
}
