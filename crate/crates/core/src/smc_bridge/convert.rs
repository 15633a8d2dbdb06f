//! The two conversions between AC-categories and symmetric monoidal
//! categories, evaluated by composing table morphisms.

use super::instance::{verify_smc_axioms, SMCInstance};
use crate::ac2group::{verify_ac_axioms, ACInstance, Report};
use crate::{Error, Result};

fn require(report: &Report, what: &str) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(f) => Err(Error::invalid(format!("input fails the {what} axioms: {f}"))),
    }
}

/// Associo-commutator of a symmetric monoidal category,
/// `b(x,y,z,t) : (xy)(zt) -> (xz)(yt)`, along one of the two paths of the
/// defining diagram:
/// `a_{x,z,yt} ∘ (id·a^{-1}_{z,y,t}) ∘ (id·(c_{y,z}·id)) ∘ (id·a_{y,z,t}) ∘ a^{-1}_{x,y,zt}`
/// or
/// `a^{-1}_{xz,y,t} ∘ (a_{x,z,y}·id) ∘ ((id·c_{y,z})·id) ∘ (a^{-1}_{x,y,z}·id) ∘ a_{xy,z,t}`.
pub fn b_paths(s: &SMCInstance, x: usize, y: usize, z: usize, t: usize) -> (Option<usize>, Option<usize>) {
    let c = s.cat();
    let o = |p: usize, q: usize| c.osum(p, q);
    let m = |f: usize, g: usize| c.msum(f, g);
    let id = |p: usize| c.id(p);
    let inv = |f: usize| c.inv(f);
    let top = c.seq_opt(&[
        inv(s.a(x, y, o(z, t))),
        Some(m(id(x), s.a(y, z, t))),
        Some(m(id(x), m(s.c(y, z), id(t)))),
        inv(s.a(z, y, t)).map(|ai| m(id(x), ai)),
        Some(s.a(x, z, o(y, t))),
    ]);
    let bottom = c.seq_opt(&[
        Some(s.a(o(x, y), z, t)),
        inv(s.a(x, y, z)).map(|ai| m(ai, id(t))),
        Some(m(m(id(x), s.c(y, z)), id(t))),
        Some(m(s.a(x, z, y), id(t))),
        inv(s.a(o(x, z), y, t)),
    ]);
    (top, bottom)
}

/// `S_ac`: same category and unitors, `b` from the associator and
/// commutator. Fails if `S` is not a verified symmetric monoidal instance or
/// the two paths of the defining diagram disagree.
pub fn ac_from_smc(s: &SMCInstance) -> Result<ACInstance> {
    require(&verify_smc_axioms(s)?, "symmetric monoidal")?;
    let n = s.n_objects();
    let mut b = Vec::with_capacity(n.pow(4));
    for idx in 0..n.pow(4) {
        let (x, y, z, t) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        match b_paths(s, x, y, z, t) {
            (Some(p), Some(q)) if p == q => b.push(p),
            _ => {
                return Err(Error::Verification(format!(
                    "the two associo-commutator paths disagree at {}",
                    s.cat().fmt_objects(&[x, y, z, t])
                )))
            }
        }
    }
    ACInstance::new(s.cat().clone(), b, s.l_table().to_vec(), s.r_table().to_vec())
}

/// `X_sm`: same category and unitors,
/// `a_{x,y,z} = (id_{xy}·l_z) ∘ b(x,1,y,z) ∘ (r_x^{-1}·id_{yz})` and
/// `c_{x,y} = (l_y·r_x) ∘ b(1,x,y,1) ∘ (l_x^{-1}·r_y^{-1})`.
pub fn smc_from_ac(x: &ACInstance) -> Result<SMCInstance> {
    require(&verify_ac_axioms(x)?, "AC")?;
    smc_from_ac_unchecked(x)
}

/// The conversion formulas without verifying the input first.
pub fn smc_from_ac_unchecked(x: &ACInstance) -> Result<SMCInstance> {
    let c = x.cat();
    let n = c.n_objects();
    let u = c.unit();
    let broken = || Error::Verification("conversion composite is not composable".into());
    let mut a = Vec::with_capacity(n.pow(3));
    for idx in 0..n.pow(3) {
        let (p, q, r) = (idx / (n * n), (idx / n) % n, idx % n);
        let ri = c.inv(x.r(p)).ok_or_else(broken)?;
        let f = c
            .seq(&[c.msum(ri, c.id(c.osum(q, r))), x.b(p, u, q, r), c.msum(c.id(c.osum(p, q)), x.l(r))])
            .ok_or_else(broken)?;
        a.push(f);
    }
    let mut comm = Vec::with_capacity(n * n);
    for idx in 0..n * n {
        let (p, q) = (idx / n, idx % n);
        let li = c.inv(x.l(p)).ok_or_else(broken)?;
        let ri = c.inv(x.r(q)).ok_or_else(broken)?;
        let f = c.seq(&[c.msum(li, ri), x.b(u, p, q, u), c.msum(x.l(q), x.r(p))]).ok_or_else(broken)?;
        comm.push(f);
    }
    SMCInstance::new(c.clone(), a, comm, x.l_table().to_vec(), x.r_table().to_vec())
}

/// `(X_sm)_ac = X` as strict table equality.
pub fn roundtrip_ac(x: &ACInstance) -> Result<bool> {
    Ok(ac_from_smc(&smc_from_ac(x)?)? == *x)
}

/// `(S_ac)_sm = S` as strict table equality.
pub fn roundtrip_smc(s: &SMCInstance) -> Result<bool> {
    Ok(smc_from_ac(&ac_from_smc(s)?)? == *s)
}
