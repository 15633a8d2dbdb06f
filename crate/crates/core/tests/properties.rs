use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use cubac::abelian::{homomorphisms, isomorphisms, smith, smith_diagonal, FiniteAbelianGroup, GroupElement, GroupHom, IntMatrix};
use cubac::ac2group::{build_special, ACInstance};
use cubac::cohomology::{check_middle_antisymmetry, coboundary, is_cocycle3, Cochain, CochainSpace, Cohomology};
use cubac::config::Limits;
use cubac::cubical::{differential, differential_chain, Cube};
use cubac::smc_bridge::{smc_from_ac, SMCInstance};

const CAP: u64 = 1 << 20;
const BASES: [&str; 4] = ["Z2", "Z3", "Z4", "Z2xZ2"];
const COEFFS: [&str; 3] = ["Z2", "Z3", "Z4"];

fn grp(s: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(s).unwrap()
}

struct Pair {
    lower: Arc<CochainSpace>,
    coh: Cohomology,
    reps: Vec<Cochain>,
}

/// Degree-3 cohomology for every base/coefficient pair, computed once.
fn pairs() -> &'static Vec<Pair> {
    static PAIRS: OnceLock<Vec<Pair>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        let mut out = Vec::new();
        for g in BASES {
            for b in COEFFS {
                let (g, b) = (grp(g), grp(b));
                let coh = Cohomology::compute(&g, &b, 3, Limits::with_cap(CAP)).unwrap();
                let reps = coh.representatives(CAP).unwrap();
                out.push(Pair { lower: CochainSpace::new(&g, &b, 2, CAP).unwrap(), coh, reps });
            }
        }
        out
    })
}

fn group_strategy() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop::collection::vec(2u64..7, 0..4).prop_map(|m| FiniteAbelianGroup::new(m).unwrap())
}

fn random_cochain(space: &Arc<CochainSpace>, seed: &[usize]) -> Cochain {
    let k = space.coeff.size();
    let values = (0..space.len()).map(|i| seed[i % seed.len()].wrapping_mul(i + 1) % k).collect();
    Cochain::from_values(space, values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_literals_round_trip(g in group_strategy()) {
        prop_assert_eq!(FiniteAbelianGroup::parse(&g.literal()).unwrap(), g.clone());
        let c = g.canonical_form();
        prop_assert!(c.is_canonical());
        prop_assert!(c.is_isomorphic(&g));
        prop_assert_eq!(c.order(), g.order());
    }

    #[test]
    fn group_laws(g in group_strategy(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let n = g.size();
        let (a, b, c) = (g.element(i % n), g.element(j % n), g.element(k % n));
        prop_assert_eq!(g.add(&g.add(&a, &b), &c), g.add(&a, &g.add(&b, &c)));
        prop_assert_eq!(g.add(&a, &b), g.add(&b, &a));
        prop_assert!(g.add(&a, &g.neg(&a)).is_zero());
        prop_assert_eq!(g.add(&g.sub(&a, &b), &b), a.clone());
        prop_assert_eq!(g.element(g.index(&a)), a.clone());
        prop_assert_eq!(g.index(&a), i % n);
        prop_assert_eq!(GroupElement::parse(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(g.scale(g.element_order(&a) as i128, &a), g.zero());
        prop_assert_eq!(g.scale(g.exponent() as i128, &b), g.zero());
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(
        rows in prop::collection::vec(prop::collection::vec(-6i128..7, 4), 1..5)
    ) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let s = smith(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        prop_assert_eq!(s.u.determinant().unwrap().abs(), 1);
        prop_assert_eq!(s.v.determinant().unwrap().abs(), 1);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d.get(i, j) == 0);
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|&x| x >= 0));
        prop_assert_eq!(diag.iter().filter(|&&x| x != 0).count(), s.rank);
        for w in diag[..s.rank].windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert_eq!(smith_diagonal(&m).unwrap(), (diag, s.rank));
    }

    #[test]
    fn invariant_factors_multiply_to_the_determinant(
        rows in prop::collection::vec(prop::collection::vec(-5i128..6, 3), 3)
    ) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let (diag, _) = smith_diagonal(&m).unwrap();
        prop_assert_eq!(diag.iter().product::<i128>(), m.determinant().unwrap().abs());
    }

    #[test]
    fn differential_squares_to_zero(gi in 0usize..4, dim in 2usize..5, seed in prop::collection::vec(any::<usize>(), 16)) {
        let g = grp(BASES[gi]);
        let labels = (0..1 << dim).map(|w| seed[w] % g.size()).collect();
        let x = Cube::new(dim, labels).unwrap();
        let dd = differential_chain(&g, &differential(&g, &x).unwrap()).unwrap();
        prop_assert!(dd.is_zero(), "d d {} = {:?}", x.display(&g), dd);
    }

    #[test]
    fn coboundaries_are_antisymmetric_cocycles(pi in 0usize..12, seed in prop::collection::vec(any::<usize>(), 1..8)) {
        let p = &pairs()[pi];
        let z = coboundary(&random_cochain(&p.lower, &seed)).unwrap();
        prop_assert!(is_cocycle3(&z).unwrap().holds());
        prop_assert!(check_middle_antisymmetry(&z).unwrap());
        prop_assert!(p.coh.is_cocycle(&z).unwrap());
        prop_assert!(p.coh.is_coboundary(&z).unwrap());
        prop_assert!(p.coh.class_representative(&z).unwrap().is_zero());
    }

    #[test]
    fn class_representatives_are_invariant(pi in 0usize..12, r in any::<usize>(), seed in prop::collection::vec(any::<usize>(), 1..8)) {
        let p = &pairs()[pi];
        let rep = &p.reps[r % p.reps.len()];
        prop_assert!(check_middle_antisymmetry(rep).unwrap());
        let moved = rep.add(&coboundary(&random_cochain(&p.lower, &seed)).unwrap()).unwrap();
        prop_assert!(is_cocycle3(&moved).unwrap().holds());
        prop_assert_eq!(&p.coh.class_representative(&moved).unwrap(), rep);
        prop_assert_eq!(p.coh.is_coboundary(&moved).unwrap(), rep.is_zero());
    }

    #[test]
    fn json_round_trips(pi in 0usize..12, r in any::<usize>(), seed in prop::collection::vec(any::<usize>(), 1..8)) {
        let p = &pairs()[pi];
        let c = random_cochain(&p.lower, &seed);
        prop_assert_eq!(Cochain::from_json_str(&c.to_json_string(), CAP).unwrap(), c);
        let rep = &p.reps[r % p.reps.len()];
        prop_assert_eq!(&Cochain::from_json_str(&rep.to_json_string(), CAP).unwrap(), rep);
        let x = build_special(rep).unwrap();
        prop_assert_eq!(ACInstance::from_json_str(&x.to_json_string()).unwrap(), x.clone());
        let s = smc_from_ac(&x).unwrap();
        prop_assert_eq!(SMCInstance::from_json_str(&s.to_json_string()).unwrap(), s);
    }

    #[test]
    fn homomorphisms_compose(gi in 0usize..4, bi in 0usize..3, i in any::<usize>(), j in any::<usize>()) {
        let (g, b) = (grp(BASES[gi]), grp(COEFFS[bi]));
        let homs = homomorphisms(&g, &b, CAP).unwrap();
        let f = &homs[i % homs.len()];
        for x in g.elements() {
            for y in g.elements() {
                prop_assert_eq!(f.apply(&g.add(&x, &y)), b.add(&f.apply(&x), &f.apply(&y)));
            }
        }
        prop_assert_eq!(&f.compose(&GroupHom::identity(&g)).unwrap(), f);
        let auts = isomorphisms(&g, &g, CAP).unwrap();
        let a = &auts[j % auts.len()];
        prop_assert_eq!(a.inverse().unwrap().compose(a).unwrap(), GroupHom::identity(&g));
        prop_assert!(f.compose(a).unwrap().compose(&a.inverse().unwrap()).unwrap() == *f);
    }
}
