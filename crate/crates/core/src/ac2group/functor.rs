use serde::{Deserialize, Serialize};

use super::instance::{special_morphism, ACInstance};
use super::report::{first_violation, CheckResult, Report};
use crate::cohomology::Cochain;
use crate::{Error, Result};

/// An AC-functor `(F, F_2, F_1)`: `F_2(x, y) : Fx·Fy -> F(xy)` is stored at
/// `x*n + y` and `F_1 : 1' -> F1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACFunctor<'a> {
    source: &'a ACInstance,
    target: &'a ACInstance,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
    f2: Vec<usize>,
    f1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACFunctorFile {
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
    pub f2_table: Vec<usize>,
    pub f1: usize,
}

impl<'a> ACFunctor<'a> {
    pub fn new(
        source: &'a ACInstance,
        target: &'a ACInstance,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
        f2: Vec<usize>,
        f1: usize,
    ) -> Result<Self> {
        let (n, m) = (source.n_objects(), source.cat().n_morphisms());
        let (n2, m2) = (target.n_objects(), target.cat().n_morphisms());
        if object_map.len() != n || morphism_map.len() != m || f2.len() != n * n {
            return Err(Error::Dimension("functor tables do not match the source instance".into()));
        }
        if object_map.iter().any(|&x| x >= n2) || morphism_map.iter().chain(&f2).chain([&f1]).any(|&f| f >= m2) {
            return Err(Error::invalid("functor table entry out of range of the target instance"));
        }
        Ok(ACFunctor { source, target, object_map, morphism_map, f2, f1 })
    }

    pub fn identity(x: &'a ACInstance) -> Self {
        let n = x.n_objects();
        let c = x.cat();
        ACFunctor {
            source: x,
            target: x,
            object_map: (0..n).collect(),
            morphism_map: (0..c.n_morphisms()).collect(),
            f2: (0..n * n).map(|i| c.id(c.osum(i / n, i % n))).collect(),
            f1: c.id(c.unit()),
        }
    }

    pub fn source(&self) -> &'a ACInstance {
        self.source
    }

    pub fn target(&self) -> &'a ACInstance {
        self.target
    }

    pub fn obj(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    pub fn f2(&self, x: usize, y: usize) -> usize {
        self.f2[x * self.source.n_objects() + y]
    }

    pub fn f1(&self) -> usize {
        self.f1
    }

    /// Copy with one `F_2` entry replaced.
    pub fn with_f2_entry(&self, x: usize, y: usize, f: usize) -> Result<Self> {
        let mut out = self.clone();
        let n = self.source.n_objects();
        if f >= self.target.cat().n_morphisms() || x >= n || y >= n {
            return Err(Error::invalid("entry out of range"));
        }
        out.f2[x * n + y] = f;
        Ok(out)
    }

    /// `G ∘ F` with `(GF)_2 = G(F_2) ∘ G_2(Fx, Fy)` and `(GF)_1 = G(F_1) ∘ G_1`.
    pub fn then(&self, g: &ACFunctor<'a>) -> Result<ACFunctor<'a>> {
        if !std::ptr::eq(self.target, g.source) && self.target != g.source {
            return Err(Error::invalid("functors are not composable"));
        }
        let tc = g.target.cat();
        let n = self.source.n_objects();
        let f2 = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                tc.comp(g.mor(self.f2(x, y)), g.f2(self.obj(x), self.obj(y)))
                    .ok_or_else(|| Error::Verification("(GF)_2 is not composable".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let f1 = tc
            .comp(g.mor(self.f1), g.f1)
            .ok_or_else(|| Error::Verification("(GF)_1 is not composable".into()))?;
        ACFunctor::new(
            self.source,
            g.target,
            self.object_map.iter().map(|&x| g.obj(x)).collect(),
            self.morphism_map.iter().map(|&f| g.mor(f)).collect(),
            f2,
            f1,
        )
    }

    pub fn to_file(&self) -> ACFunctorFile {
        ACFunctorFile {
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
            f2_table: self.f2.clone(),
            f1: self.f1,
        }
    }

    pub fn from_file(file: &ACFunctorFile, source: &'a ACInstance, target: &'a ACInstance) -> Result<Self> {
        Self::new(source, target, file.object_map.clone(), file.morphism_map.clone(), file.f2_table.clone(), file.f1)
    }
}

/// The functor `A(G,A,z) -> A(G,A,z+∂c)` that is the identity on objects and
/// morphisms, with `F_2(x, y) = (c(x, y), x+y)` and `F_1 = id`.
pub fn coboundary_functor<'a>(source: &'a ACInstance, target: &'a ACInstance, c: &Cochain) -> Result<ACFunctor<'a>> {
    if c.degree() != 2 {
        return Err(Error::invalid("the structure cochain must have degree 2"));
    }
    let n = c.base().size();
    let k = c.coeff().size();
    if source.n_objects() != n || target.n_objects() != n || source.cat().n_morphisms() != n * k {
        return Err(Error::Dimension("instances are not special instances over the cochain's groups".into()));
    }
    let add = c.base().add_table();
    let table = c.full_table();
    let f2 = (0..n * n).map(|i| special_morphism(k, add.add(i / n, i % n), table[i])).collect();
    ACFunctor::new(
        source,
        target,
        (0..n).collect(),
        (0..n * k).collect(),
        f2,
        target.cat().id(target.cat().unit()),
    )
}

/// Functoriality, types and naturality of `F_2`, `acf1` over object
/// 4-tuples and `acf2` over objects.
pub fn verify_ac_functor(f: &ACFunctor<'_>) -> Result<Report> {
    let (x, y) = (f.source, f.target);
    let (sc, tc) = (x.cat(), y.cat());
    let n = x.n_objects();
    let m = sc.n_morphisms();
    let fmt = |t: &[usize]| sc.fmt_objects(t);
    let mut report = Report::default();

    let mut functor = (0..m)
        .find(|&g| !tc.has_type(f.mor(g), f.obj(sc.src(g)), f.obj(sc.tgt(g))))
        .map(|g| format!("({})", sc.morphism_label(g)));
    if functor.is_none() {
        functor = (0..n).find(|&a| f.mor(sc.id(a)) != tc.id(f.obj(a))).map(|a| fmt(&[a]));
    }
    if functor.is_none() {
        'comp: for g in 0..m {
            for &h in (0..n).flat_map(|b| sc.hom(sc.tgt(g), b)) {
                let hg = sc.comp(h, g).expect("composable");
                if tc.comp(f.mor(h), f.mor(g)) != Some(f.mor(hg)) {
                    functor = Some(format!("({},{})", sc.morphism_label(h), sc.morphism_label(g)));
                    break 'comp;
                }
            }
        }
    }
    report.push(CheckResult::from_violation("functor", functor));

    let f2_types = first_violation(n, 2, |t| {
        let (a, b) = (t[0], t[1]);
        tc.has_type(f.f2(a, b), y.cat().osum(f.obj(a), f.obj(b)), f.obj(sc.osum(a, b)))
    })?;
    report.push(CheckResult::from_violation("f2-types", f2_types.map(|t| fmt(&t))));
    let f1_type = (!tc.has_type(f.f1, tc.unit(), f.obj(sc.unit()))).then(|| "()".to_string());
    report.push(CheckResult::from_violation("f1-type", f1_type));

    let mut f2_nat = None;
    'nat: for g in 0..m {
        for h in 0..m {
            let (s1, s2, t1, t2) = (sc.src(g), sc.src(h), sc.tgt(g), sc.tgt(h));
            let lhs = tc.comp(f.mor(sc.msum(g, h)), f.f2(s1, s2));
            let rhs = tc.comp(f.f2(t1, t2), tc.msum(f.mor(g), f.mor(h)));
            if lhs.is_none() || lhs != rhs {
                f2_nat = Some(format!("({},{})", sc.morphism_label(g), sc.morphism_label(h)));
                break 'nat;
            }
        }
    }
    report.push(CheckResult::from_violation("f2-natural", f2_nat));

    let o = |a: usize, b: usize| sc.osum(a, b);
    let acf1 = first_violation(n, 4, |t| {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let lhs = tc.seq(&[
            y.b(f.obj(a), f.obj(b), f.obj(c), f.obj(d)),
            tc.msum(f.f2(a, c), f.f2(b, d)),
            f.f2(o(a, c), o(b, d)),
        ]);
        let rhs = tc.seq(&[
            tc.msum(f.f2(a, b), f.f2(c, d)),
            f.f2(o(a, b), o(c, d)),
            f.mor(x.b(a, b, c, d)),
        ]);
        lhs.is_some() && lhs == rhs
    })?;
    report.push(CheckResult::from_violation("acf1", acf1.map(|t| fmt(&t))));

    let u = sc.unit();
    let acf2 = first_violation(n, 1, |t| {
        let a = t[0];
        let fa = tc.id(f.obj(a));
        let left = tc.seq(&[tc.msum(f.f1, fa), f.f2(u, a), f.mor(x.l(a))]);
        let right = tc.seq(&[tc.msum(fa, f.f1), f.f2(a, u), f.mor(x.r(a))]);
        left == Some(y.l(f.obj(a))) && right == Some(y.r(f.obj(a)))
    })?;
    report.push(CheckResult::from_violation("acf2", acf2.map(|t| fmt(&t))));
    Ok(report)
}

/// An AC-natural transformation `τ : F => G` with components `τ_x : Fx -> Gx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACNatTrans<'a> {
    source: ACFunctor<'a>,
    target: ACFunctor<'a>,
    components: Vec<usize>,
}

impl<'a> ACNatTrans<'a> {
    pub fn new(source: ACFunctor<'a>, target: ACFunctor<'a>, components: Vec<usize>) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(Error::invalid("natural transformations need parallel functors"));
        }
        if components.len() != source.source.n_objects() {
            return Err(Error::Dimension("one component per source object is required".into()));
        }
        if components.iter().any(|&f| f >= source.target.cat().n_morphisms()) {
            return Err(Error::invalid("component out of range"));
        }
        Ok(ACNatTrans { source, target, components })
    }

    pub fn identity(f: &ACFunctor<'a>) -> Self {
        let tc = f.target.cat();
        let components = f.object_map.iter().map(|&x| tc.id(x)).collect();
        ACNatTrans { source: f.clone(), target: f.clone(), components }
    }

    pub fn source(&self) -> &ACFunctor<'a> {
        &self.source
    }

    pub fn target(&self) -> &ACFunctor<'a> {
        &self.target
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn with_component(&self, x: usize, f: usize) -> Result<Self> {
        let mut out = self.clone();
        *out.components.get_mut(x).ok_or_else(|| Error::invalid("object out of range"))? = f;
        Ok(out)
    }

    /// `(σ ∘ τ)_x = σ_x ∘ τ_x` for `self = τ : F => G`, `sigma : G => H`.
    pub fn vertical(&self, sigma: &ACNatTrans<'a>) -> Result<Self> {
        if self.target != sigma.source {
            return Err(Error::invalid("vertical composite needs matching functors"));
        }
        let tc = self.source.target.cat();
        let components = (0..self.components.len())
            .map(|x| {
                tc.comp(sigma.components[x], self.components[x])
                    .ok_or_else(|| Error::Verification("components are not composable".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ACNatTrans::new(self.source.clone(), sigma.target.clone(), components)
    }

    /// Horizontal composite `σ * τ : F'F => G'G` with components
    /// `σ_{Gx} ∘ F'(τ_x)`, for `self = τ : F => G` and `sigma : F' => G'`.
    pub fn horizontal(&self, sigma: &ACNatTrans<'a>) -> Result<Self> {
        let source = self.source.then(&sigma.source)?;
        let target = self.target.then(&sigma.target)?;
        let zc = sigma.source.target.cat();
        let components = (0..self.components.len())
            .map(|x| {
                zc.comp(sigma.components[self.target.obj(x)], sigma.source.mor(self.components[x]))
                    .ok_or_else(|| Error::Verification("components are not composable".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        ACNatTrans::new(source, target, components)
    }
}

/// Component types, naturality, the `F_2` square and the `F_1` triangle.
pub fn verify_ac_nat_trans(tau: &ACNatTrans<'_>) -> Result<Report> {
    let (f, g) = (&tau.source, &tau.target);
    let (sc, tc) = (f.source.cat(), f.target.cat());
    let n = sc.n_objects();
    let fmt = |t: &[usize]| sc.fmt_objects(t);
    let mut report = Report::default();

    let types = (0..n).find(|&x| !tc.has_type(tau.components[x], f.obj(x), g.obj(x))).map(|x| fmt(&[x]));
    report.push(CheckResult::from_violation("component-types", types));
    let natural = (0..sc.n_morphisms())
        .find(|&h| {
            let (a, b) = (sc.src(h), sc.tgt(h));
            let lhs = tc.comp(g.mor(h), tau.components[a]);
            lhs.is_none() || lhs != tc.comp(tau.components[b], f.mor(h))
        })
        .map(|h| format!("({})", sc.morphism_label(h)));
    report.push(CheckResult::from_violation("natural", natural));
    let square = first_violation(n, 2, |t| {
        let (a, b) = (t[0], t[1]);
        let lhs = tc.comp(tau.components[sc.osum(a, b)], f.f2(a, b));
        let rhs = tc.comp(g.f2(a, b), tc.msum(tau.components[a], tau.components[b]));
        lhs.is_some() && lhs == rhs
    })?;
    report.push(CheckResult::from_violation("f2-square", square.map(|t| fmt(&t))));
    let unit = tc.comp(tau.components[sc.unit()], f.f1);
    let triangle = (unit.is_none() || unit != Some(g.f1)).then(|| "()".to_string());
    report.push(CheckResult::from_violation("f1-triangle", triangle));
    Ok(report)
}
