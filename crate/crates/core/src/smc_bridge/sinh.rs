use serde::{Deserialize, Serialize};

use super::convert::smc_from_ac;
use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::ac2group::{build_special, first_violation, CheckResult, ClassifyingTriple, Report};
use crate::{Error, Result};

/// A pair `(h, c)` with `h : G^3 -> A` at `(x*n+y)*n+z` and `c : G^2 -> A`
/// at `x*n+y`, values as element indices of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinhPair {
    pub group: FiniteAbelianGroup,
    pub coeff: FiniteAbelianGroup,
    pub h: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinhPairFile {
    pub group: FiniteAbelianGroup,
    pub coeff: FiniteAbelianGroup,
    /// Nonzero values of `h`; omitted arguments map to zero.
    pub h: Vec<SinhValue>,
    /// Nonzero values of `c`.
    pub c: Vec<SinhValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinhValue {
    pub args: Vec<GroupElement>,
    pub value: GroupElement,
}

impl SinhPair {
    fn records(&self, table: &[usize], arity: usize) -> Vec<SinhValue> {
        let n = self.group.size();
        table
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| {
                let args = (0..arity).rev().map(|k| self.group.element((i / n.pow(k as u32)) % n)).collect();
                SinhValue { args, value: self.coeff.element(v) }
            })
            .collect()
    }

    pub fn to_file(&self) -> SinhPairFile {
        SinhPairFile {
            group: self.group.clone(),
            coeff: self.coeff.clone(),
            h: self.records(&self.h, 3),
            c: self.records(&self.c, 2),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("pair serializes")
    }
}

/// `h(x,y,z)` and `c(x,y)` read off the associator and commutator of the
/// symmetric monoidal category of `A(G, A, z)`. The relations hold for the
/// associator written `(xy)z -> x(yz)`, so `h` is the component of
/// `a_{x,y,z}^{-1}`, that is `-z(x,0,y,z)`; `c(x,y) = z(0,x,y,0)`. Both are
/// cross-checked against `z` and then verified. Any failure here is a defect,
/// reported as a verification error.
pub fn sinh_pair(t: &ClassifyingTriple) -> Result<SinhPair> {
    let z = t.cocycle();
    let (g, a) = (t.group(), t.coeff());
    let (n, k) = (g.size(), a.size());
    let smc = smc_from_ac(&build_special(z)?)?;
    let table = z.full_table();
    let zt = |x: usize, y: usize, w: usize, v: usize| table[((x * n + y) * n + w) * n + v];
    let cat = smc.cat();
    let h = (0..n.pow(3))
        .map(|i| {
            let f = smc.a(i / (n * n), (i / n) % n, i % n);
            cat.inv(f).map(|g| g % k).ok_or_else(|| Error::Verification("associator is not invertible".into()))
        })
        .collect::<Result<Vec<usize>>>()?;
    let c: Vec<usize> = (0..n * n).map(|i| smc.c(i / n, i % n) % k).collect();
    for i in 0..n.pow(3) {
        if h[i] != a.neg_idx(zt(i / (n * n), 0, (i / n) % n, i % n)) {
            return Err(Error::Verification("associator component differs from -z(x,0,y,z)".into()));
        }
    }
    for i in 0..n * n {
        if c[i] != zt(0, i / n, i % n, 0) {
            return Err(Error::Verification("commutator component differs from z(0,x,y,0)".into()));
        }
    }
    let pair = SinhPair { group: g.clone(), coeff: a.clone(), h, c };
    let report = verify_sinh(&pair)?;
    if let Some(f) = report.failures().next() {
        return Err(Error::Verification(format!("Sinh pair check failed: {f}")));
    }
    Ok(pair)
}

/// Normalization and the cocycle condition for `h`, skew-symmetry of `c`,
/// and the two relations tying `c` to `h`.
pub fn verify_sinh(p: &SinhPair) -> Result<Report> {
    let (g, a) = (&p.group, &p.coeff);
    let n = g.size();
    if p.h.len() != n.pow(3) || p.c.len() != n * n {
        return Err(Error::Dimension("h needs |G|^3 and c needs |G|^2 entries".into()));
    }
    let ga = g.add_table();
    let aa = a.add_table();
    let h = |x: usize, y: usize, z: usize| p.h[(x * n + y) * n + z];
    let c = |x: usize, y: usize| p.c[x * n + y];
    let sum = |plus: &[usize], minus: &[usize]| {
        let s = plus.iter().fold(0, |acc, &v| aa.add(acc, v));
        minus.iter().fold(s, |acc, &v| aa.sub(acc, v))
    };
    let fmt = |t: &[usize]| {
        let parts: Vec<String> = t.iter().map(|&x| g.element(x).to_string()).collect();
        format!("({})", parts.join(","))
    };
    let mut report = Report::default();

    let normalized = first_violation(n, 3, |t| !t.contains(&0) || h(t[0], t[1], t[2]) == 0)?;
    report.push(CheckResult::from_violation("h-normalized", normalized.map(|t| fmt(&t))));
    let cocycle = first_violation(n, 4, |t| {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        sum(
            &[h(y, z, w), h(x, ga.add(y, z), w), h(x, y, z)],
            &[h(ga.add(x, y), z, w), h(x, y, ga.add(z, w))],
        ) == 0
    })?;
    report.push(CheckResult::from_violation("h-cocycle", cocycle.map(|t| fmt(&t))));
    let skew = first_violation(n, 2, |t| aa.add(c(t[0], t[1]), c(t[1], t[0])) == 0)?;
    report.push(CheckResult::from_violation("c-skew", skew.map(|t| fmt(&t))));
    let first = first_violation(n, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = sum(&[c(y, z), c(x, z)], &[c(ga.add(x, y), z)]);
        let rhs = sum(&[h(x, z, y)], &[h(x, y, z), h(z, x, y)]);
        lhs == rhs
    })?;
    report.push(CheckResult::from_violation("sinh-relation-1", first.map(|t| fmt(&t))));
    let second = first_violation(n, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = sum(&[c(x, z), c(x, y)], &[c(x, ga.add(y, z))]);
        let rhs = sum(&[h(x, y, z), h(y, z, x)], &[h(y, x, z)]);
        lhs == rhs
    })?;
    report.push(CheckResult::from_violation("sinh-relation-2", second.map(|t| fmt(&t))));
    Ok(report)
}
