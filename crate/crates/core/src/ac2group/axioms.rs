//! Exhaustive verification of the AC axioms and their consequences.

use super::instance::ACInstance;
use super::report::{first_violation, CheckResult, Report};
use crate::Result;

/// Structural invariants, types of `b`, `l`, `r`, their naturality, the
/// 4x4 axiom `acc1`, the four unital diagrams `acc2-*` and normalization
/// `acc3`.
pub fn verify_ac_axioms(x: &ACInstance) -> Result<Report> {
    let c = x.cat();
    let n = c.n_objects();
    let u = c.unit();
    let mut report = Report::default();
    for check in c.structural_checks()? {
        report.push(check);
    }
    let fmt = |t: &[usize]| c.fmt_objects(t);
    let o = |a: usize, b: usize| c.osum(a, b);

    let b_types = first_violation(n, 4, |t| {
        let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
        c.has_type(x.b(a, b, cc, d), o(o(a, b), o(cc, d)), o(o(a, cc), o(b, d)))
    })?;
    report.push(CheckResult::from_violation("b-types", b_types.map(|t| fmt(&t))));
    let lr_types = (0..n)
        .find(|&a| !c.has_type(x.l(a), o(u, a), a) || !c.has_type(x.r(a), o(a, u), a))
        .map(|a| fmt(&[a]));
    report.push(CheckResult::from_violation("lr-types", lr_types));

    let s = |f: usize, g: usize| c.msum(f, g);
    let b_nat = c.naturality_violation(
        4,
        &|t| x.b(t[0], t[1], t[2], t[3]),
        &|f| s(s(f[0], f[1]), s(f[2], f[3])),
        &|f| s(s(f[0], f[2]), s(f[1], f[3])),
    )?;
    report.push(CheckResult::from_violation("b-natural", b_nat));
    let l_nat = c.naturality_violation(1, &|t| x.l(t[0]), &|f| s(c.id(u), f[0]), &|f| f[0])?;
    report.push(CheckResult::from_violation("l-natural", l_nat));
    let r_nat = c.naturality_violation(1, &|t| x.r(t[0]), &|f| s(f[0], c.id(u)), &|f| f[0])?;
    report.push(CheckResult::from_violation("r-natural", r_nat));

    let acc1 = first_violation(n, 8, |t| {
        let (a, b, cc, d, a2, b2, c2, d2) = (t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7]);
        let lhs = c.seq(&[
            s(x.b(a, b, cc, d), x.b(a2, b2, c2, d2)),
            x.b(o(a, cc), o(b, d), o(a2, c2), o(b2, d2)),
            s(x.b(a, cc, a2, c2), x.b(b, d, b2, d2)),
        ]);
        let rhs = c.seq(&[
            x.b(o(a, b), o(cc, d), o(a2, b2), o(c2, d2)),
            s(x.b(a, b, a2, b2), x.b(cc, d, c2, d2)),
            x.b(o(a, a2), o(b, b2), o(cc, c2), o(d, d2)),
        ]);
        lhs.is_some() && lhs == rhs
    })?;
    report.push(CheckResult::from_violation("acc1", acc1.map(|t| fmt(&t))));

    let l1 = x.l(u);
    let r1 = x.r(u);
    let unital: [(&str, &dyn Fn(usize, usize) -> bool); 4] = [
        ("acc2-eq00-r", &|a, b| {
            let lhs = c.seq(&[x.b(a, u, b, u), s(c.id(o(a, b)), l1), x.r(o(a, b))]);
            lhs.is_some() && lhs == Some(s(x.r(a), x.r(b)))
        }),
        ("acc2-eq00-l", &|a, b| {
            let lhs = c.seq(&[x.b(u, a, u, b), s(r1, c.id(o(a, b))), x.l(o(a, b))]);
            lhs.is_some() && lhs == Some(s(x.l(a), x.l(b)))
        }),
        ("acc2-eq0-r", &|a, b| {
            let lhs = c.seq(&[x.b(a, b, u, u), s(x.r(a), x.r(b))]);
            lhs.is_some() && lhs == c.seq(&[s(c.id(o(a, b)), l1), x.r(o(a, b))])
        }),
        ("acc2-eq0-l", &|a, b| {
            let lhs = c.seq(&[x.b(u, u, a, b), s(x.l(a), x.l(b))]);
            lhs.is_some() && lhs == c.seq(&[s(r1, c.id(o(a, b))), x.l(o(a, b))])
        }),
    ];
    for (name, holds) in unital {
        let v = first_violation(n, 2, |t| holds(t[0], t[1]))?;
        report.push(CheckResult::from_violation(name, v.map(|t| fmt(&t))));
    }

    let acc3 = first_violation(n, 2, |t| c.is_identity(x.b(t[0], u, u, t[1])))?;
    report.push(CheckResult::from_violation("acc3", acc3.map(|t| fmt(&t))));
    Ok(report)
}

/// Consequences of the axioms: symmetry of `b`, `l_1 = r_1`, and the
/// diagrams `eq0'`, `eq1`, `eq21`, `eq23`, `eq22`.
pub fn verify_derived_coherence(x: &ACInstance) -> Result<Report> {
    let c = x.cat();
    let n = c.n_objects();
    let u = c.unit();
    let mut report = Report::default();
    let fmt = |t: &[usize]| c.fmt_objects(t);
    let o = |a: usize, b: usize| c.osum(a, b);
    let s = |f: usize, g: usize| c.msum(f, g);
    let id = |a: usize| c.id(a);
    let inv = |f: usize| c.inv(f);
    let same = |p: Option<usize>, q: Option<usize>| p.is_some() && p == q;

    let symmetry = first_violation(n, 4, |t| {
        let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
        c.seq(&[x.b(a, b, cc, d), x.b(a, cc, b, d)]) == Some(id(o(o(a, b), o(cc, d))))
    })?;
    report.push(CheckResult::from_violation("symmetry", symmetry.map(|t| fmt(&t))));

    let (l1, r1) = (x.l(u), x.r(u));
    let unit_agree = (l1 != r1).then(|| format!("({})", c.object_label(u)));
    report.push(CheckResult::from_violation("l1=r1", unit_agree));

    let eq0p = first_violation(n, 1, |t| {
        let a = t[0];
        let left = same(
            c.seq(&[x.b(u, u, a, u), s(x.l(a), l1), x.r(a)]),
            c.seq(&[s(r1, x.r(a)), x.l(a)]),
        );
        let right = same(
            c.seq(&[x.b(u, a, u, u), s(r1, x.r(a)), x.l(a)]),
            c.seq(&[s(x.l(a), l1), x.r(a)]),
        );
        left && right
    })?;
    report.push(CheckResult::from_violation("eq0'", eq0p.map(|t| fmt(&t))));

    // Morphism `u -> u1` built as r_u^{-1} ∘ l_u, used by eq21 and eq23.
    let lr = |a: usize| inv(x.r(a)).and_then(|ri| c.comp(ri, x.l(a)));

    let eq1 = first_violation(n, 4, |t| {
        let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
        let a1 = id(o(a, u));
        let top = c.seq_opt(&[
            Some(s(a1, s(x.r(b), id(o(cc, d))))),
            Some(x.b(a, u, b, o(cc, d))),
            inv(x.r(o(a, b))).map(|ri| s(ri, x.l(o(cc, d)))),
            Some(x.b(o(a, b), u, cc, d)),
            inv(x.l(cc)).map(|li| s(s(id(o(a, b)), li), id(o(u, d)))),
        ]);
        let bottom = c.seq_opt(&[
            Some(s(a1, x.b(b, u, cc, d))),
            Some(s(a1, s(id(o(b, cc)), x.l(d)))),
            Some(x.b(a, u, o(b, cc), d)),
            inv(x.r(a)).map(|ri| s(s(ri, id(o(b, cc))), id(o(u, d)))),
            Some(s(x.b(a, u, b, cc), id(o(u, d)))),
        ]);
        same(top, bottom)
    })?;
    report.push(CheckResult::from_violation("eq1", eq1.map(|t| fmt(&t))));

    let eq21 = first_violation(n, 3, |t| {
        let (a, b, cc) = (t[0], t[1], t[2]);
        let top = c.seq_opt(&[
            inv(x.r(a)).map(|ri| s(ri, s(x.l(b), x.r(cc)))),
            Some(x.b(a, u, b, cc)),
            lr(cc).map(|m| s(id(o(a, b)), m)),
            Some(x.b(a, b, cc, u)),
        ]);
        let bottom = c.seq_opt(&[
            Some(s(id(a), x.b(u, b, cc, u))),
            inv(x.r(a)).map(|ri| s(ri, s(x.l(cc), x.r(b)))),
            Some(x.b(a, u, cc, b)),
            lr(b).map(|m| s(id(o(a, cc)), m)),
        ]);
        same(top, bottom)
    })?;
    report.push(CheckResult::from_violation("eq21", eq21.map(|t| fmt(&t))));

    let eq23 = first_violation(n, 3, |t| {
        let (a, b, cc) = (t[0], t[1], t[2]);
        let top = c.seq_opt(&[
            Some(s(x.l(o(a, b)), id(o(cc, u)))),
            Some(x.b(a, b, cc, u)),
            inv(x.l(a)).zip(inv(x.r(cc))).map(|(li, ri)| s(s(li, ri), x.r(b))),
            Some(s(x.b(u, a, cc, u), id(b))),
        ]);
        let bottom = c.seq_opt(&[
            Some(x.b(u, o(a, b), cc, u)),
            lr(cc).map(|m| s(m, x.r(o(a, b)))),
            Some(x.b(cc, u, a, b)),
            inv(x.l(cc)).zip(inv(x.r(a))).map(|(li, ri)| s(s(li, ri), x.l(b))),
        ]);
        same(top, bottom)
    })?;
    report.push(CheckResult::from_violation("eq23", eq23.map(|t| fmt(&t))));

    let eq22 = first_violation(n, 4, |t| {
        let (a, b, cc, d) = (t[0], t[1], t[2], t[3]);
        let one_d = id(o(u, d));
        let top = c.seq_opt(&[
            inv(x.r(o(a, b))).map(|ri| s(ri, id(o(cc, d)))),
            Some(x.b(o(a, b), u, cc, d)),
            inv(x.r(cc)).map(|ri| s(s(id(o(a, b)), ri), one_d)),
            Some(s(x.b(a, b, cc, u), one_d)),
        ]);
        let bottom = c.seq_opt(&[
            Some(x.b(a, b, cc, d)),
            inv(x.r(o(a, cc))).map(|ri| s(ri, id(o(b, d)))),
            Some(x.b(o(a, cc), u, b, d)),
            inv(x.r(b)).map(|ri| s(s(id(o(a, cc)), ri), one_d)),
        ]);
        same(top, bottom)
    })?;
    report.push(CheckResult::from_violation("eq22", eq22.map(|t| fmt(&t))));
    Ok(report)
}
