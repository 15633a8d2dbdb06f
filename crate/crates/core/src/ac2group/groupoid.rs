//! Finite categories with a tensor product, presented entirely by tables.

use serde::{Deserialize, Serialize};

use super::report::{first_violation, CheckResult};
use crate::abelian::GroupElement;
use crate::config::{MAX_MORPHISMS, MAX_OBJECTS, MAX_TUPLE_SWEEP};
use crate::{Error, Result};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// Optional identification of `pi_0` and `pi_1` with concrete groups: the
/// class of every object in `pi0`, and the value in `pi1` of every
/// automorphism of the unit object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub pi0: String,
    pub pi1: String,
    pub object_classes: Vec<GroupElement>,
    pub unit_automorphisms: Vec<UnitAutomorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitAutomorphism {
    pub morphism: usize,
    pub value: GroupElement,
}

/// Serialized form of [`MonoidalGroupoid`]. `compose[g][f]` is `g ∘ f`
/// (null when `tgt f != src g`); `object_sum` and `morphism_sum` are square
/// tables of the tensor product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidFile {
    pub objects: Vec<String>,
    pub unit: usize,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub object_sum: Vec<Vec<usize>>,
    pub morphism_sum: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<Annotation>,
}

/// A finite category with a product on objects and morphisms and a unit
/// object. Nothing beyond index ranges is assumed; the category and functor
/// laws are checked by [`MonoidalGroupoid::structural_checks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidalGroupoid {
    objects: Vec<String>,
    unit: usize,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    compose: Vec<u32>,
    object_sum: Vec<usize>,
    morphism_sum: Vec<usize>,
    inverses: Vec<Option<usize>>,
    hom: Vec<Vec<usize>>,
    annotation: Option<Annotation>,
}

/// Builder input with dense tables; `compose(g, f)` returns `g ∘ f`.
pub struct GroupoidSpec<'a> {
    pub objects: Vec<String>,
    pub unit: usize,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    pub compose: &'a dyn Fn(usize, usize) -> Option<usize>,
    pub object_sum: &'a dyn Fn(usize, usize) -> usize,
    pub morphism_sum: &'a dyn Fn(usize, usize) -> usize,
    pub annotation: Option<Annotation>,
}

impl MonoidalGroupoid {
    pub fn from_spec(spec: GroupoidSpec<'_>) -> Result<Self> {
        let n = spec.objects.len();
        let m = spec.morphisms.len();
        check_size(n, m)?;
        let mut compose = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if spec.morphisms[f].tgt == spec.morphisms[g].src {
                    if let Some(h) = (spec.compose)(g, f) {
                        compose[g * m + f] = h as u32;
                    }
                }
            }
        }
        let object_sum = (0..n * n).map(|i| (spec.object_sum)(i / n, i % n)).collect();
        let morphism_sum = (0..m * m).map(|i| (spec.morphism_sum)(i / m, i % m)).collect();
        Self::assemble(
            spec.objects,
            spec.unit,
            spec.morphisms,
            spec.identities,
            compose,
            object_sum,
            morphism_sum,
            spec.annotation,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        objects: Vec<String>,
        unit: usize,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<u32>,
        object_sum: Vec<usize>,
        morphism_sum: Vec<usize>,
        annotation: Option<Annotation>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        check_size(n, m)?;
        if n == 0 {
            return Err(Error::invalid("a monoidal groupoid needs at least the unit object"));
        }
        if unit >= n {
            return Err(Error::invalid(format!("unit object {unit} out of range")));
        }
        if identities.len() != n {
            return Err(Error::Dimension(format!("{} identities for {n} objects", identities.len())));
        }
        for f in &morphisms {
            if f.src >= n || f.tgt >= n {
                return Err(Error::invalid(format!("morphism {} has an endpoint out of range", f.label)));
            }
        }
        if identities.iter().any(|&i| i >= m) {
            return Err(Error::invalid("identity index out of range"));
        }
        if object_sum.iter().any(|&x| x >= n) || morphism_sum.iter().any(|&f| f >= m) {
            return Err(Error::invalid("sum table entry out of range"));
        }
        if compose.iter().any(|&h| h != NONE && h as usize >= m) {
            return Err(Error::invalid("composition table entry out of range"));
        }
        if let Some(a) = &annotation {
            if a.object_classes.len() != n {
                return Err(Error::Dimension("annotation must classify every object".into()));
            }
            if a.unit_automorphisms.iter().any(|u| u.morphism >= m) {
                return Err(Error::invalid("annotated morphism out of range"));
            }
        }
        let mut hom = vec![Vec::new(); n * n];
        for (i, f) in morphisms.iter().enumerate() {
            hom[f.src * n + f.tgt].push(i);
        }
        let mut cat = MonoidalGroupoid {
            objects,
            unit,
            morphisms,
            identities,
            compose,
            object_sum,
            morphism_sum,
            inverses: Vec::new(),
            hom,
            annotation,
        };
        cat.inverses = (0..m)
            .map(|f| {
                let (s, t) = (cat.src(f), cat.tgt(f));
                cat.hom(t, s).iter().copied().find(|&g| {
                    cat.comp(g, f) == Some(cat.identities[s]) && cat.comp(f, g) == Some(cat.identities[t])
                })
            })
            .collect();
        Ok(cat)
    }

    pub fn from_file(file: &GroupoidFile) -> Result<Self> {
        let n = file.objects.len();
        let m = file.morphisms.len();
        check_size(n, m)?;
        let square = |rows: &Vec<Vec<usize>>, k: usize, what: &str| -> Result<Vec<usize>> {
            if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                return Err(Error::Dimension(format!("{what} must be a {k}x{k} table")));
            }
            Ok(rows.iter().flatten().copied().collect())
        };
        if file.compose.len() != m || file.compose.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!("compose must be a {m}x{m} table")));
        }
        let compose = file.compose.iter().flatten().map(|h| h.map_or(NONE, |h| h as u32)).collect();
        Self::assemble(
            file.objects.clone(),
            file.unit,
            file.morphisms.clone(),
            file.identities.clone(),
            compose,
            square(&file.object_sum, n, "object_sum")?,
            square(&file.morphism_sum, m, "morphism_sum")?,
            file.annotation.clone(),
        )
    }

    pub fn to_file(&self) -> GroupoidFile {
        let n = self.n_objects();
        let m = self.n_morphisms();
        GroupoidFile {
            objects: self.objects.clone(),
            unit: self.unit,
            morphisms: self.morphisms.clone(),
            identities: self.identities.clone(),
            compose: (0..m).map(|g| (0..m).map(|f| self.comp(g, f)).collect()).collect(),
            object_sum: (0..n).map(|x| (0..n).map(|y| self.osum(x, y)).collect()).collect(),
            morphism_sum: (0..m).map(|f| (0..m).map(|g| self.msum(f, g)).collect()).collect(),
            annotation: self.annotation.clone(),
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphisms[f].label
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn annotation(&self) -> Option<&Annotation> {
        self.annotation.as_ref()
    }

    pub fn set_annotation(&mut self, annotation: Option<Annotation>) {
        self.annotation = annotation;
    }

    pub fn id(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.objects.len() + y]
    }

    /// `g ∘ f`.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        match self.compose[g * self.morphisms.len() + f] {
            NONE => None,
            h => Some(h as usize),
        }
    }

    /// Composite of a path given in application order (`path[0]` first).
    pub fn seq(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &g| self.comp(g, acc))
    }

    /// Like [`seq`](Self::seq) but every step may itself be missing.
    pub fn seq_opt(&self, path: &[Option<usize>]) -> Option<usize> {
        let path: Option<Vec<usize>> = path.iter().copied().collect();
        self.seq(&path?)
    }

    pub fn osum(&self, x: usize, y: usize) -> usize {
        self.object_sum[x * self.objects.len() + y]
    }

    pub fn msum(&self, f: usize, g: usize) -> usize {
        self.morphism_sum[f * self.morphisms.len() + g]
    }

    pub fn inv(&self, f: usize) -> Option<usize> {
        self.inverses[f]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `f` has source `s` and target `t`.
    pub fn has_type(&self, f: usize, s: usize, t: usize) -> bool {
        self.src(f) == s && self.tgt(f) == t
    }

    /// Category laws, invertibility and functoriality of the product.
    pub fn structural_checks(&self) -> Result<Vec<CheckResult>> {
        let n = self.n_objects();
        let m = self.n_morphisms();
        let mut out = Vec::new();

        let mut composable = 0u64;
        let mut triples = 0u64;
        for f in 0..m {
            let out_deg = (0..n).map(|y| self.hom(self.tgt(f), y).len() as u64).sum::<u64>();
            composable += out_deg;
            triples = triples.saturating_add(out_deg.saturating_mul(m as u64));
        }
        if triples > MAX_TUPLE_SWEEP || composable.saturating_mul(composable) > MAX_TUPLE_SWEEP {
            return Err(Error::cap("structural sweeps exceed the tuple cap"));
        }

        let label = |f: usize| self.morphism_label(f).to_string();
        let mut category = None;
        'cat: for f in 0..m {
            for g in 0..m {
                let ok = match self.comp(g, f) {
                    Some(h) => self.tgt(f) == self.src(g) && self.has_type(h, self.src(f), self.tgt(g)),
                    None => self.tgt(f) != self.src(g),
                };
                if !ok {
                    category = Some(format!("({},{})", label(g), label(f)));
                    break 'cat;
                }
            }
        }
        if category.is_none() {
            category = (0..n)
                .find(|&x| {
                    let i = self.id(x);
                    !self.has_type(i, x, x)
                        || (0..m).any(|f| {
                            (self.src(f) == x && self.comp(f, i) != Some(f))
                                || (self.tgt(f) == x && self.comp(i, f) != Some(f))
                        })
                })
                .map(|x| format!("({})", self.object_label(x)));
        }
        if category.is_none() {
            'assoc: for f in 0..m {
                for &g in (0..n).flat_map(|y| self.hom(self.tgt(f), y)) {
                    for &h in (0..n).flat_map(|y| self.hom(self.tgt(g), y)) {
                        let left = self.comp(h, g).and_then(|hg| self.comp(hg, f));
                        let right = self.comp(g, f).and_then(|gf| self.comp(h, gf));
                        if left != right {
                            category = Some(format!("({},{},{})", label(h), label(g), label(f)));
                            break 'assoc;
                        }
                    }
                }
            }
        }
        out.push(CheckResult::from_violation("category", category));

        let groupoid = (0..m).find(|&f| self.inv(f).is_none()).map(|f| format!("({})", label(f)));
        out.push(CheckResult::from_violation("groupoid", groupoid));

        // Product: endpoints, identities, interchange.
        let mut sum = None;
        'ends: for f in 0..m {
            for g in 0..m {
                let h = self.msum(f, g);
                if !self.has_type(h, self.osum(self.src(f), self.src(g)), self.osum(self.tgt(f), self.tgt(g))) {
                    sum = Some(format!("({},{})", label(f), label(g)));
                    break 'ends;
                }
            }
        }
        if sum.is_none() {
            sum = first_violation(n, 2, |t| self.msum(self.id(t[0]), self.id(t[1])) == self.id(self.osum(t[0], t[1])))?
                .map(|t| format!("({},{})", self.object_label(t[0]), self.object_label(t[1])));
        }
        if sum.is_none() {
            let pairs: Vec<(usize, usize, usize)> = (0..m)
                .flat_map(|f| {
                    (0..n).flat_map(move |y| self.hom(self.tgt(f), y).iter().map(move |&g| (f, g)))
                })
                .filter_map(|(f, g)| self.comp(g, f).map(|h| (f, g, h)))
                .collect();
            'inter: for &(f1, g1, h1) in &pairs {
                for &(f2, g2, h2) in &pairs {
                    let lhs = self.msum(h1, h2);
                    let rhs = self.comp(self.msum(g1, g2), self.msum(f1, f2));
                    if rhs != Some(lhs) {
                        sum = Some(format!("({},{},{},{})", label(g1), label(f1), label(g2), label(f2)));
                        break 'inter;
                    }
                }
            }
        }
        out.push(CheckResult::from_violation("sum-functor", sum));
        Ok(out)
    }

    /// Formats an object tuple with labels.
    pub fn fmt_objects(&self, t: &[usize]) -> String {
        let parts: Vec<&str> = t.iter().map(|&x| self.object_label(x)).collect();
        format!("({})", parts.join(","))
    }

    /// Naturality of a family `eta` of morphisms indexed by `arity` objects,
    /// one variable at a time. `eta(objs)` returns the component; `source`
    /// and `target` build the functors on a tuple of morphisms. The check is
    /// `target(fs) ∘ eta(srcs) = eta(tgts) ∘ source(fs)` where all but one
    /// entry of `fs` are identities.
    pub fn naturality_violation(
        &self,
        arity: usize,
        eta: &dyn Fn(&[usize]) -> usize,
        source: &dyn Fn(&[usize]) -> usize,
        target: &dyn Fn(&[usize]) -> usize,
    ) -> Result<Option<String>> {
        let n = self.n_objects();
        let m = self.n_morphisms();
        let count = (m as u64).saturating_mul((n as u64).saturating_pow(arity as u32 - 1)).saturating_mul(arity as u64);
        if count > MAX_TUPLE_SWEEP {
            return Err(Error::cap("naturality sweep exceeds the tuple cap"));
        }
        let mut others = vec![0usize; arity - 1];
        for pos in 0..arity {
            for f in 0..m {
                others.iter_mut().for_each(|o| *o = 0);
                loop {
                    let mut fs = Vec::with_capacity(arity);
                    let mut k = 0;
                    for i in 0..arity {
                        if i == pos {
                            fs.push(f);
                        } else {
                            fs.push(self.id(others[k]));
                            k += 1;
                        }
                    }
                    let srcs: Vec<usize> = fs.iter().map(|&g| self.src(g)).collect();
                    let tgts: Vec<usize> = fs.iter().map(|&g| self.tgt(g)).collect();
                    let lhs = self.comp(target(&fs), eta(&srcs));
                    let rhs = self.comp(eta(&tgts), source(&fs));
                    if lhs.is_none() || lhs != rhs {
                        let labels: Vec<&str> = fs.iter().map(|&g| self.morphism_label(g)).collect();
                        return Ok(Some(format!("({})", labels.join(","))));
                    }
                    if !crate::cohomology::odometer(&mut others, n) {
                        break;
                    }
                }
            }
        }
        Ok(None)
    }
}

fn check_size(n: usize, m: usize) -> Result<()> {
    if n > MAX_OBJECTS || m > MAX_MORPHISMS {
        return Err(Error::cap(format!(
            "instance with {n} objects and {m} morphisms exceeds the limits ({MAX_OBJECTS} objects, {MAX_MORPHISMS} morphisms)"
        )));
    }
    Ok(())
}
