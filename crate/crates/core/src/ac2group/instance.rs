use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::groupoid::{Annotation, GroupoidFile, GroupoidSpec, Morphism, MonoidalGroupoid, UnitAutomorphism};
use crate::abelian::FiniteAbelianGroup;
use crate::cohomology::{is_cocycle3, Cochain};
use crate::{Error, Result};

/// An AC-category presented by tables: `b(x,y,z,t) : (xy)(zt) -> (xz)(yt)`
/// stored at `((x*n+y)*n+z)*n+t`, `l_x : 1x -> x` and `r_x : x1 -> x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACInstance {
    cat: MonoidalGroupoid,
    b: Vec<usize>,
    l: Vec<usize>,
    r: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ACInstanceFile {
    pub kind: String,
    #[serde(flatten)]
    pub category: GroupoidFile,
    pub b_table: Vec<usize>,
    pub l_table: Vec<usize>,
    pub r_table: Vec<usize>,
}

impl ACInstance {
    pub fn new(cat: MonoidalGroupoid, b: Vec<usize>, l: Vec<usize>, r: Vec<usize>) -> Result<Self> {
        let n = cat.n_objects();
        let m = cat.n_morphisms();
        if b.len() != n.pow(4) || l.len() != n || r.len() != n {
            return Err(Error::Dimension(format!(
                "b/l/r tables must have {}/{n}/{n} entries, got {}/{}/{}",
                n.pow(4),
                b.len(),
                l.len(),
                r.len()
            )));
        }
        if b.iter().chain(&l).chain(&r).any(|&f| f >= m) {
            return Err(Error::invalid("structure table entry is not a morphism"));
        }
        Ok(ACInstance { cat, b, l, r })
    }

    pub fn cat(&self) -> &MonoidalGroupoid {
        &self.cat
    }

    pub fn n_objects(&self) -> usize {
        self.cat.n_objects()
    }

    pub fn b(&self, x: usize, y: usize, z: usize, t: usize) -> usize {
        let n = self.cat.n_objects();
        self.b[((x * n + y) * n + z) * n + t]
    }

    pub fn l(&self, x: usize) -> usize {
        self.l[x]
    }

    pub fn r(&self, x: usize) -> usize {
        self.r[x]
    }

    pub fn b_table(&self) -> &[usize] {
        &self.b
    }

    pub fn l_table(&self) -> &[usize] {
        &self.l
    }

    pub fn r_table(&self) -> &[usize] {
        &self.r
    }

    /// Replaces one `b` entry; meant for building deliberately broken inputs.
    pub fn with_b_entry(mut self, x: usize, y: usize, z: usize, t: usize, f: usize) -> Result<Self> {
        let n = self.cat.n_objects();
        if f >= self.cat.n_morphisms() {
            return Err(Error::invalid("not a morphism"));
        }
        self.b[((x * n + y) * n + z) * n + t] = f;
        Ok(self)
    }

    pub fn to_file(&self) -> ACInstanceFile {
        ACInstanceFile {
            kind: "ac".into(),
            category: self.cat.to_file(),
            b_table: self.b.clone(),
            l_table: self.l.clone(),
            r_table: self.r.clone(),
        }
    }

    pub fn from_file(file: &ACInstanceFile) -> Result<Self> {
        if file.kind != "ac" {
            return Err(Error::invalid(format!("expected an instance of kind \"ac\", got \"{}\"", file.kind)));
        }
        let cat = MonoidalGroupoid::from_file(&file.category)?;
        ACInstance::new(cat, file.b_table.clone(), file.l_table.clone(), file.r_table.clone())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: ACInstanceFile = serde_json::from_str(s).map_err(|e| Error::parse(format!("AC instance: {e}")))?;
        Self::from_file(&file)
    }
}

/// Index of the morphism `(a, x)` in a special instance.
pub fn special_morphism(a_size: usize, x: usize, a: usize) -> usize {
    x * a_size + a
}

/// The special AC-2-group `A(G, A, z)`.
pub fn build_special(z: &Cochain) -> Result<ACInstance> {
    if let Some(v) = is_cocycle3(z)?.violation {
        return Err(Error::invalid(format!("z is not a normalized 3-cocycle: {v}")));
    }
    build_special_from_table(z.base(), z.coeff(), &z.full_table())
}

/// Skeletal instance on objects `G` with automorphisms `A` at every object,
/// identity unitors and `b(x,y,z,t) = (z(x,y,z,t), x+y+z+t)`. The table is
/// not checked, so non-cocycles give instances that fail the axioms.
pub fn build_special_from_table(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, table: &[usize]) -> Result<ACInstance> {
    let n = g.size();
    let k = a.size();
    if table.len() != n.pow(4) {
        return Err(Error::Dimension(format!("table of length {} for |G|^4 = {}", table.len(), n.pow(4))));
    }
    if table.iter().any(|&v| v >= k) {
        return Err(Error::invalid("table value outside the coefficient group"));
    }
    let cat = special_groupoid(g, a)?;
    let gt = g.add_table();
    let identities: Vec<usize> = (0..n).map(|x| cat.id(x)).collect();
    let mut b = Vec::with_capacity(n.pow(4));
    for idx in 0..n.pow(4) {
        let (x, y, z, t) = (idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n);
        let sum = gt.add(gt.add(x, y), gt.add(z, t));
        b.push(special_morphism(k, sum, table[idx]));
    }
    ACInstance::new(cat, b, identities.clone(), identities)
}

/// The skeletal groupoid with objects `G`, automorphisms `A` at each object
/// (morphism `(a, x)` at index `x*|A| + a`) and componentwise sum.
pub fn special_groupoid(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup) -> Result<MonoidalGroupoid> {
    let n = g.size();
    let k = a.size();
    let gt = g.add_table();
    let at = a.add_table();
    let objects = g.elements().map(|e| e.to_string()).collect();
    let morphisms = (0..n * k)
        .map(|i| {
            let (x, v) = (i / k, i % k);
            Morphism { label: format!("({},{})", a.element(v), g.element(x)), src: x, tgt: x }
        })
        .collect();
    let identities: Vec<usize> = (0..n).map(|x| special_morphism(k, x, 0)).collect();
    let annotation = Annotation {
        pi0: g.literal(),
        pi1: a.literal(),
        object_classes: g.elements().collect(),
        unit_automorphisms: (0..k)
            .map(|v| UnitAutomorphism { morphism: special_morphism(k, 0, v), value: a.element(v) })
            .collect(),
    };
    let compose = |h: usize, f: usize| Some(special_morphism(k, f / k, at.add(h % k, f % k)));
    let object_sum = |x: usize, y: usize| gt.add(x, y);
    let morphism_sum = |f: usize, h: usize| special_morphism(k, gt.add(f / k, h / k), at.add(f % k, h % k));
    MonoidalGroupoid::from_spec(GroupoidSpec {
        objects,
        unit: 0,
        morphisms,
        identities,
        compose: &compose,
        object_sum: &object_sum,
        morphism_sum: &morphism_sum,
        annotation: Some(annotation),
    })
}

/// A non-skeletal AC-2-group equivalent to `A(G, A, z)`: every `g` gets
/// `copies` isomorphic objects `(g, i)`, and the structure is transported
/// along a seeded random product on copy indices and a seeded random
/// correction `mu(x, y)` in `A`. Copy 0 of `0` is a strict unit and the
/// unitors are identities.
pub fn inflate(z: &Cochain, copies: usize, seed: u64) -> Result<ACInstance> {
    if copies == 0 {
        return Err(Error::invalid("inflation needs at least one copy per object"));
    }
    if let Some(v) = is_cocycle3(z)?.violation {
        return Err(Error::invalid(format!("z is not a normalized 3-cocycle: {v}")));
    }
    let g = z.base();
    let a = z.coeff();
    let table = z.full_table();
    let (n, k, c) = (g.size(), a.size(), copies);
    let no = n * c;
    let gt = g.add_table();
    let at = a.add_table();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sigma = vec![0usize; c * c];
    for i in 0..c {
        for j in 0..c {
            sigma[i * c + j] = if i == 0 {
                j
            } else if j == 0 {
                i
            } else {
                rng.gen_range(0..c)
            };
        }
    }
    let mut mu = vec![0usize; no * no];
    for x in 1..no {
        for y in 1..no {
            mu[x * no + y] = rng.gen_range(0..k);
        }
    }
    let class = |x: usize| x / c;
    let copy = |x: usize| x % c;
    let osum = |x: usize, y: usize| gt.add(class(x), class(y)) * c + sigma[copy(x) * c + copy(y)];
    let mu_at = |x: usize, y: usize| mu[x * no + y];
    // Morphism ((g,i) -> (g,j), value v) has index ((g*c+i)*c+j)*k+v.
    let mor = |cls: usize, i: usize, j: usize, v: usize| ((cls * c + i) * c + j) * k + v;
    let decode = |f: usize| {
        let v = f % k;
        let rest = f / k;
        let j = rest % c;
        let rest = rest / c;
        (rest / c, rest % c, j, v)
    };
    let between = |x: usize, y: usize, v: usize| {
        debug_assert_eq!(class(x), class(y));
        mor(class(x), copy(x), copy(y), v)
    };
    let m = n * c * c * k;
    let morphisms = (0..m)
        .map(|f| {
            let (cls, i, j, v) = decode(f);
            Morphism {
                label: format!("({},{}#{}->#{})", a.element(v), g.element(cls), i, j),
                src: cls * c + i,
                tgt: cls * c + j,
            }
        })
        .collect();
    let objects = (0..no).map(|x| format!("{}#{}", g.element(class(x)), copy(x))).collect();
    let identities: Vec<usize> = (0..no).map(|x| between(x, x, 0)).collect();
    let compose = |h: usize, f: usize| {
        let (cls, i, _, v) = decode(f);
        let (_, _, l, w) = decode(h);
        Some(mor(cls, i, l, at.add(v, w)))
    };
    let morphism_sum = |f: usize, h: usize| {
        let (c1, i1, j1, v1) = decode(f);
        let (c2, i2, j2, v2) = decode(h);
        let (s1, t1) = (c1 * c + i1, c1 * c + j1);
        let (s2, t2) = (c2 * c + i2, c2 * c + j2);
        let v = at.sub(at.add(at.add(v1, v2), mu_at(t1, t2)), mu_at(s1, s2));
        between(osum(s1, s2), osum(t1, t2), v)
    };
    let annotation = Annotation {
        pi0: g.literal(),
        pi1: a.literal(),
        object_classes: (0..no).map(|x| g.element(class(x))).collect(),
        unit_automorphisms: (0..k).map(|v| UnitAutomorphism { morphism: mor(0, 0, 0, v), value: a.element(v) }).collect(),
    };
    let cat = MonoidalGroupoid::from_spec(GroupoidSpec {
        objects,
        unit: 0,
        morphisms,
        identities: identities.clone(),
        compose: &compose,
        object_sum: &osum,
        morphism_sum: &morphism_sum,
        annotation: Some(annotation),
    })?;
    let mut b = Vec::with_capacity(no.pow(4));
    for idx in 0..no.pow(4) {
        let (x, y, zz, t) = (idx / (no * no * no), (idx / (no * no)) % no, (idx / no) % no, idx % no);
        let (xy, zt, xz, yt) = (osum(x, y), osum(zz, t), osum(x, zz), osum(y, t));
        let gi = ((class(x) * n + class(y)) * n + class(zz)) * n + class(t);
        let plus = [mu_at(xz, yt), mu_at(x, zz), mu_at(y, t), table[gi]];
        let minus = [mu_at(x, y), mu_at(zz, t), mu_at(xy, zt)];
        let v = minus.iter().fold(plus.iter().fold(0, |s, &p| at.add(s, p)), |s, &q| at.sub(s, q));
        b.push(between(osum(xy, zt), osum(xz, yt), v));
    }
    let l = (0..no).map(|x| between(osum(0, x), x, at.neg(mu_at(0, x)))).collect();
    let r = (0..no).map(|x| between(osum(x, 0), x, at.neg(mu_at(x, 0)))).collect();
    ACInstance::new(cat, b, l, r)
}
