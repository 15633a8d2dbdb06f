use std::sync::Arc;

use cubac::abelian::FiniteAbelianGroup;
use cubac::ac2group::{
    build_special, classify, coboundary_functor, special_morphism, verify_ac_axioms, verify_ac_functor,
    verify_ac_nat_trans, ACFunctor, ACInstance, ACNatTrans,
};
use cubac::cohomology::{coboundary, cocycle_representatives3, Cochain, CochainSpace};
use cubac::config::Limits;
use cubac::smc_bridge::{sign_smc, skeletal_smc, strict_smc, verify_smc_axioms, SMCInstance};

const CAP: u64 = 1 << 20;

fn grp(s: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(s).unwrap()
}

fn nontrivial_z2() -> Cochain {
    let reps = cocycle_representatives3(&grp("Z2"), &grp("Z2")).unwrap();
    assert_eq!(reps.len(), 2);
    reps[1].clone()
}

fn two_cochain(g: &FiniteAbelianGroup, a: &FiniteAbelianGroup, f: impl Fn(usize) -> usize) -> Cochain {
    let space: Arc<CochainSpace> = CochainSpace::new(g, a, 2, CAP).unwrap();
    Cochain::from_values(&space, (0..space.len()).map(f).collect()).unwrap()
}

#[test]
fn every_single_entry_corruption_of_b_is_detected() {
    let z = nontrivial_z2();
    let x = build_special(&z).unwrap();
    assert!(verify_ac_axioms(&x).unwrap().passed());
    let n = x.n_objects();
    for i in 0..n.pow(4) {
        let (a, b, c, d) = (i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n);
        let f = x.b(a, b, c, d);
        // Same object, other automorphism.
        let flipped = f ^ 1;
        let bad = x.clone().with_b_entry(a, b, c, d, flipped).unwrap();
        let report = verify_ac_axioms(&bad).unwrap();
        assert!(!report.passed(), "b({a},{b},{c},{d}) corrupted but all checks pass");
    }
}

#[test]
fn corrupting_an_associativity_entry_breaks_acc1() {
    let x = build_special(&nontrivial_z2()).unwrap();
    let bad = x.with_b_entry(0, 1, 1, 0, 0).unwrap();
    let report = verify_ac_axioms(&bad).unwrap();
    assert!(!report.get("acc1").unwrap().passed, "{report}");
}

#[test]
fn coboundary_functors_compose() {
    let (g, a) = (grp("Z2xZ2"), grp("Z2"));
    let z = cocycle_representatives3(&g, &a).unwrap().pop().unwrap();
    let c1 = two_cochain(&g, &a, |i| i % 2);
    let c2 = two_cochain(&g, &a, |i| (i / 3) % 2);
    let z1 = z.add(&coboundary(&c1).unwrap()).unwrap();
    let z2 = z1.add(&coboundary(&c2).unwrap()).unwrap();
    let (x0, x1, x2) = (build_special(&z).unwrap(), build_special(&z1).unwrap(), build_special(&z2).unwrap());

    let f = coboundary_functor(&x0, &x1, &c1).unwrap();
    let h = coboundary_functor(&x1, &x2, &c2).unwrap();
    assert!(verify_ac_functor(&f).unwrap().passed());
    assert!(verify_ac_functor(&h).unwrap().passed());
    let composite = f.then(&h).unwrap();
    assert!(verify_ac_functor(&composite).unwrap().passed());
    assert_eq!(composite, coboundary_functor(&x0, &x2, &c1.add(&c2).unwrap()).unwrap());
    assert_eq!(ACFunctor::identity(&x0).then(&f).unwrap(), f);
    assert_eq!(f.then(&ACFunctor::identity(&x1)).unwrap(), f);

    // Wrong structure cochain: the functor exists but is not monoidal.
    let wrong = coboundary_functor(&x0, &x2, &c1).unwrap();
    assert!(!verify_ac_functor(&wrong).unwrap().passed());
}

#[test]
fn natural_automorphisms_are_homomorphisms() {
    let (g, a) = (grp("Z4"), grp("Z2"));
    let z = cocycle_representatives3(&g, &a).unwrap().pop().unwrap();
    let x = build_special(&z).unwrap();
    let c = two_cochain(&g, &a, |i| (i / 2) % 2);
    let y = build_special(&z.add(&coboundary(&c).unwrap()).unwrap()).unwrap();
    let f = coboundary_functor(&x, &y, &c).unwrap();
    let (n, k) = (g.size(), a.size());
    let mut passing = 0;
    for code in 0..k.pow(n as u32) {
        let phi: Vec<usize> = (0..n).map(|i| (code / k.pow(i as u32)) % k).collect();
        let components = (0..n).map(|i| special_morphism(k, i, phi[i])).collect();
        let tau = ACNatTrans::new(f.clone(), f.clone(), components).unwrap();
        let is_hom = (0..n).all(|i| (0..n).all(|j| phi[(i + j) % n] == (phi[i] + phi[j]) % k));
        assert_eq!(verify_ac_nat_trans(&tau).unwrap().passed(), is_hom, "{phi:?}");
        if is_hom {
            passing += 1;
            let twice = tau.vertical(&tau).unwrap();
            assert!(verify_ac_nat_trans(&twice).unwrap().passed());
            assert_eq!(twice, ACNatTrans::identity(&f));
            let id_y = ACNatTrans::identity(&ACFunctor::identity(&y));
            assert!(verify_ac_nat_trans(&tau.horizontal(&id_y).unwrap()).unwrap().passed());
        }
    }
    assert_eq!(passing, 2);
}

fn with_tables(s: &SMCInstance, a: Vec<usize>, c: Vec<usize>) -> SMCInstance {
    SMCInstance::new(s.cat().clone(), a, c, s.l_table().to_vec(), s.r_table().to_vec()).unwrap()
}

#[test]
fn smc_corruptions_are_detected() {
    for s in [strict_smc(&grp("Z2"), &grp("Z2")).unwrap(), sign_smc().unwrap()] {
        assert!(verify_smc_axioms(&s).unwrap().passed());
    }
    let s = strict_smc(&grp("Z2"), &grp("Z2")).unwrap();
    // c_{0,1} nontrivial but c_{1,0} trivial.
    let mut c = s.c_table().to_vec();
    c[1] = special_morphism(2, 1, 1);
    let report = verify_smc_axioms(&with_tables(&s, s.a_table().to_vec(), c)).unwrap();
    assert!(!report.get("symmetry").unwrap().passed, "{report}");

    // A nontrivial associator at (1,1,1) satisfies the pentagon but needs a
    // matching commutator for the hexagon.
    let mut h = vec![0; 8];
    h[7] = 1;
    let twisted = skeletal_smc(&grp("Z2"), &grp("Z2"), &h, &[0; 4]).unwrap();
    let report = verify_smc_axioms(&twisted).unwrap();
    assert!(report.get("pentagon").unwrap().passed);
    assert!(!report.get("hexagon").unwrap().passed, "{report}");
}

fn two_rank(g: &FiniteAbelianGroup) -> usize {
    g.moduli().iter().filter(|&&m| m % 2 == 0).count()
}

/// Classes are orbits of `Hom(G/2G, A)`, indexed by the rank of the map.
#[test]
fn classification_counts() {
    let pairs = [
        ("Z2", "Z2"),
        ("Z3", "Z3"),
        ("Z4", "Z4"),
        ("Z4", "Z2"),
        ("Z3", "Z2"),
        ("Z2xZ2", "Z2"),
        ("Z2", "Z2xZ2"),
        ("Z2xZ2", "Z2xZ2"),
    ];
    for (g, a) in pairs {
        let (g, a) = (grp(g), grp(a));
        let classes = classify(&g, &a, Limits::with_cap(CAP)).unwrap();
        assert_eq!(classes.len(), 1 + two_rank(&g).min(two_rank(&a)), "({g}, {a})");
        let members: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(members as u64, 2u64.pow((two_rank(&g) * two_rank(&a)) as u32), "({g}, {a})");
        for class in &classes {
            assert!(class.members.contains(class.representative.cocycle()));
            let x: ACInstance = build_special(class.representative.cocycle()).unwrap();
            assert!(verify_ac_axioms(&x).unwrap().passed());
        }
    }
}
