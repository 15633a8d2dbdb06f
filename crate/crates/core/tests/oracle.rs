//! Independent oracles for the cubical complex and its cohomology.
//!
//! Basis sizes come from a from-scratch degeneracy test written over explicit
//! coordinate words; cohomology is checked against the universal coefficient
//! formula `H^n = Hom(H_{n-1}(Q), B) + Ext(H_{n-2}(Q), B)` and against the
//! exhaustive enumeration in `cohomology::oracle`.

use std::collections::HashMap;

use cubac::abelian::{gcd_u64, FiniteAbelianGroup, HomologyGroup};
use cubac::cohomology::oracle::enumerate_cohomology;
use cubac::cohomology::Cohomology;
use cubac::config::Limits;
use cubac::cubical::{differential, is_degenerate, normalized_basis, q_homology, Cube};

const CAP: u64 = 1 << 24;

fn grp(s: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(s).unwrap()
}

/// Vertex `w` as the word `(e_1, ..., e_n)` with `e_1` the most significant bit.
fn word(n: usize, w: usize) -> Vec<u8> {
    (1..=n).map(|i| ((w >> (n - i)) & 1) as u8).collect()
}

fn oracle_degenerate(n: usize, labels: &[usize]) -> bool {
    if n == 0 {
        return labels[0] == 0;
    }
    let words: Vec<Vec<u8>> = (0..1 << n).map(|w| word(n, w)).collect();
    let zero_where = |pred: &dyn Fn(&[u8]) -> bool| words.iter().zip(labels).all(|(e, &l)| !pred(e) || l == 0);
    let slab = (0..n).any(|i| (0..2u8).any(|s| zero_where(&|e| e[i] == s)));
    let diagonal = (0..n.saturating_sub(1)).any(|i| zero_where(&|e| e[i] != e[i + 1]));
    slab || diagonal
}

fn oracle_basis_size(size: usize, n: usize) -> usize {
    let len = 1 << n;
    (0..size.pow(len as u32))
        .filter(|&code| {
            let labels: Vec<usize> = (0..len).map(|k| (code / size.pow(k as u32)) % size).collect();
            !oracle_degenerate(n, &labels)
        })
        .count()
}

#[test]
fn normalized_basis_sizes() {
    let frozen: [(&str, [usize; 4]); 4] = [
        ("Z2", [1, 1, 6, 180]),
        ("Z3", [2, 4, 52, 6052]),
        ("Z4", [3, 9, 198, 63756]),
        ("Z2xZ2", [3, 9, 198, 63756]),
    ];
    for (g, sizes) in frozen {
        let group = grp(g);
        for (n, &expected) in sizes.iter().enumerate() {
            assert_eq!(oracle_basis_size(group.size(), n), expected, "oracle {g} dim {n}");
            assert_eq!(normalized_basis(&group, n, CAP).unwrap().len(), expected, "{g} dim {n}");
        }
    }
}

#[test]
fn diagonals_of_dimension_three() {
    // Supports {000,001,110,111} and {000,011,100,111} with nonzero labels.
    for support in [[0usize, 1, 6, 7], [0, 3, 4, 7]] {
        let mut labels = vec![0; 8];
        for w in support {
            labels[w] = 1;
        }
        assert!(oracle_degenerate(3, &labels));
        assert!(is_degenerate(&Cube::new(3, labels).unwrap()));
    }
    assert!(!is_degenerate(&Cube::new(3, vec![1; 8]).unwrap()));
}

/// The differential maps slabs and diagonals into the span of degenerate cubes.
#[test]
fn degenerate_cubes_span_a_subcomplex() {
    for g in ["Z2", "Z3"] {
        let group = grp(g);
        let size = group.size();
        for n in 2..=3usize {
            let len = 1usize << n;
            for code in 0..size.pow(len as u32) {
                let labels: Vec<usize> = (0..len).map(|k| (code / size.pow(k as u32)) % size).collect();
                let x = Cube::new(n, labels).unwrap();
                if !is_degenerate(&x) {
                    continue;
                }
                let d = differential(&group, &x).unwrap();
                for (face, k) in d.terms() {
                    assert!(k == 0 || is_degenerate(face), "{} has the face {}", x.display(&group), face.display(&group));
                }
            }
        }
    }
}

fn mod2(g: &FiniteAbelianGroup) -> FiniteAbelianGroup {
    let moduli: Vec<u64> = g.moduli().iter().map(|&m| gcd_u64(m, 2)).filter(|&m| m > 1).collect();
    FiniteAbelianGroup::new(moduli).unwrap()
}

#[test]
fn low_stable_homology() {
    for g in ["Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "Z2xZ4"] {
        let group = grp(g);
        let h0 = q_homology(&group, 0, CAP).unwrap();
        assert_eq!(h0.free_rank, 0);
        assert!(h0.finite.is_isomorphic(&group), "H_0(Q({g})) = {}", h0.literal());
        assert!(q_homology(&group, 1, CAP).unwrap().is_trivial(), "H_1(Q({g}))");
    }
    for g in ["Z2", "Z3", "Z4"] {
        let group = grp(g);
        let h2 = q_homology(&group, 2, CAP).unwrap();
        assert!(h2.finite.is_isomorphic(&mod2(&group)), "H_2(Q({g})) = {}", h2.literal());
    }
    let h3 = q_homology(&grp("Z2"), 3, CAP).unwrap();
    assert_eq!(h3.literal(), "Z2");
}

/// `Hom(X, B)` and `Ext(X, B)` agree for finite `X`: one `Z_gcd` per pair of factors.
fn hom_or_ext(x: &HomologyGroup, b: &FiniteAbelianGroup) -> Vec<u64> {
    assert_eq!(x.free_rank, 0);
    let mut out = Vec::new();
    for &m in x.finite.moduli() {
        for &k in b.moduli() {
            let d = gcd_u64(m, k);
            if d > 1 {
                out.push(d);
            }
        }
    }
    out
}

#[test]
fn cohomology_obeys_universal_coefficients() {
    let mut homology: HashMap<(String, usize), HomologyGroup> = HashMap::new();
    let mut h = |g: &FiniteAbelianGroup, n: usize| {
        homology.entry((g.literal(), n)).or_insert_with(|| q_homology(g, n, CAP).unwrap()).clone()
    };
    let mut cases: Vec<(&str, &str, usize)> = Vec::new();
    for g in ["Z2", "Z3", "Z4", "Z2xZ2"] {
        for b in ["Z2", "Z3", "Z4", "Z2xZ2"] {
            for n in 1..=3 {
                cases.push((g, b, n));
            }
        }
    }
    cases.push(("Z2", "Z2", 4));
    cases.push(("Z2", "Z4", 4));
    for (g, b, n) in cases {
        let (group, coeff) = (grp(g), grp(b));
        let mut moduli = hom_or_ext(&h(&group, n - 1), &coeff);
        if n >= 2 {
            moduli.extend(hom_or_ext(&h(&group, n - 2), &coeff));
        }
        let expected = FiniteAbelianGroup::new(moduli).unwrap();
        let limits = Limits { enumeration_cap: CAP, degree_cap: 4 };
        let got = Cohomology::compute(&group, &coeff, n, limits).unwrap().group;
        assert!(got.is_isomorphic(&expected), "H^{n}({g}; {b}) = {got}, expected {expected}");
    }
}

#[test]
fn frozen_cohomology_table() {
    let frozen = [
        ("Z2", "Z2", ["Z2", "Z2", "Z2"]),
        ("Z3", "Z3", ["Z3", "Z3", "1"]),
        ("Z2", "Z4", ["Z2", "Z2", "Z2"]),
        ("Z4", "Z2", ["Z2", "Z2", "Z2"]),
        ("Z2xZ2", "Z2", ["Z2xZ2", "Z2xZ2", "Z2xZ2"]),
        ("Z4", "Z4", ["Z4", "Z4", "Z2"]),
        ("Z3", "Z2", ["1", "1", "1"]),
        ("Z2", "Z3", ["1", "1", "1"]),
    ];
    for (g, b, groups) in frozen {
        let (group, coeff) = (grp(g), grp(b));
        for (i, expected) in groups.iter().enumerate() {
            let n = i + 1;
            let coh = Cohomology::compute(&group, &coeff, n, Limits::with_cap(CAP)).unwrap();
            assert_eq!(coh.group.literal(), *expected, "H^{n}({g}; {b})");
            // Enumerating H^3(Z4; Z4) takes over a minute; the universal
            // coefficient test covers it.
            if n >= 2 && !(g == "Z4" && b == "Z4" && n == 3) {
                let brute = enumerate_cohomology(&group, &coeff, n, CAP).unwrap();
                assert_eq!(brute.group.literal(), *expected, "enumerated H^{n}({g}; {b})");
                assert_eq!(brute.cocycles.len() as u128, coh.cocycle_count());
                assert_eq!(brute.coboundaries.len() as u128, coh.coboundary_count());
            }
        }
    }
}

#[test]
fn degree_four_over_z2() {
    let limits = Limits { enumeration_cap: CAP, degree_cap: 4 };
    let coh = Cohomology::compute(&grp("Z2"), &grp("Z2"), 4, limits).unwrap();
    assert_eq!(coh.group.literal(), "Z2xZ2");
    assert_eq!((coh.cocycle_count(), coh.coboundary_count()), (128, 32));
}
