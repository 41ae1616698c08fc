use std::collections::BTreeSet;

use empty4::arith::units;
use empty4::enumeration::algorithm1;
use empty4::oracle::{oracle_facet_volumes, oracle_is_empty, oracle_lattice_points, oracle_width_upper};
use empty4::simplex::{
    check_certificate, facet_volumes, functional_from_certificate, is_empty, lattice_classes_in_simplex,
    width, WidthResult, DEFAULT_WIDTH_CAP,
};
use empty4::torus::{permutations, Determinant, ResidueTuple};
use empty4::VRepSimplex;
use proptest::prelude::*;

fn quintuple(d: u32, v: [u32; 3]) -> ResidueTuple {
    let [a, b, c] = v.map(|x| x as i64);
    ResidueTuple::new(Determinant::new(d as i64).unwrap(), &[-1, a, b, c, 1 - a - b - c]).unwrap()
}

fn unit_bearing() -> impl Strategy<Value = ResidueTuple> {
    (2u32..=60)
        .prop_flat_map(|d| (Just(d), prop::array::uniform3(0..d)))
        .prop_map(|(d, v)| quintuple(d, v))
}

proptest! {
    #[test]
    fn emptiness_and_width_are_orbit_invariants(
        u in unit_bearing(),
        p in 0usize..120,
        ci in 0usize..1000,
    ) {
        let us = units(u.modulus());
        let moved = u.scale(us[ci % us.len()]).permute(&permutations(5)[p]);
        prop_assert_eq!(is_empty(&moved), is_empty(&u));
        prop_assert_eq!(width(&moved, DEFAULT_WIDTH_CAP).width(), width(&u, DEFAULT_WIDTH_CAP).width());
    }

    #[test]
    fn certificates_are_valid(u in unit_bearing()) {
        if let WidthResult::Exact { width: w, certificate } = width(&u, DEFAULT_WIDTH_CAP) {
            prop_assert_eq!(check_certificate(&u, &certificate).unwrap(), w);
            prop_assert_eq!(*certificate.iter().min().unwrap(), 0);
            prop_assert_eq!(*certificate.iter().max().unwrap(), w);
            let s = VRepSimplex::new({
                let e = u.entries();
                [e[1] as i64, e[2] as i64, e[3] as i64, u.modulus() as i64 + 1 - (e[1] + e[2] + e[3]) as i64]
            }).unwrap();
            prop_assert_eq!(&s.tuple(), &u);
            let f = functional_from_certificate(&s, &certificate).unwrap();
            prop_assert_eq!(f.width_on(&s), w as i64);
        }
    }

    #[test]
    fn vrep_round_trip_is_equivalent(u in unit_bearing(), c in 0usize..1000, p in 0usize..120) {
        let us = units(u.modulus());
        let moved = u.scale(us[c % us.len()]).permute(&permutations(5)[p]);
        let s = VRepSimplex::from_tuple(&moved).unwrap();
        prop_assert_eq!(s.determinant().get(), u.modulus());
        prop_assert!(s.tuple().equivalent(&moved).unwrap());
    }

    #[test]
    fn complementary_multiples_sum_to_nonzero_count(u in unit_bearing()) {
        let d = u.modulus() as u64;
        for k in 1..d {
            let rep = |k: u64| -> Vec<u64> { u.entries().iter().map(|&x| k * x as u64 % d).collect() };
            let a = rep(k);
            let b = rep(d - k);
            let z = a.iter().filter(|&&x| x != 0).count() as u64;
            prop_assert_eq!(a.iter().sum::<u64>() + b.iter().sum::<u64>(), z * d);
        }
    }
}

#[test]
fn oracle_agrees_on_all_candidates_up_to_9() {
    for d in 1..=9u32 {
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let u = quintuple(d, [a, b, c]);
                    let s = VRepSimplex::new([a as i64, b as i64, c as i64, d as i64 + 1 - (a + b + c) as i64]).unwrap();
                    assert_eq!(s.tuple(), u);
                    let pts = oracle_lattice_points(&s).unwrap();
                    assert_eq!(pts.len(), lattice_classes_in_simplex(&u).len(), "{s}");
                    assert_eq!(oracle_is_empty(&s).unwrap(), is_empty(&u), "{s}");
                }
            }
        }
    }
}

#[test]
fn facet_gcds_match_minors() {
    for d in 1..=20u32 {
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let s = VRepSimplex::new([a as i64, b as i64, c as i64, d as i64 + 1 - (a + b + c) as i64]).unwrap();
                    let expect: Vec<u64> = facet_volumes(&s.tuple()).as_slice().iter().map(|&x| x as u64).collect();
                    assert_eq!(oracle_facet_volumes(&s), expect, "{s}");
                }
            }
        }
    }
}

#[test]
fn empty_classes_have_coprime_facets() {
    for d in 1..=80u32 {
        let classes = algorithm1(Determinant::new(d as i64).unwrap()).unwrap();
        for c in &classes {
            let f = facet_volumes(c);
            assert!(f.pairwise_coprime(), "{c}");
            assert!(f.unimodular_count() >= 1, "{c}");
        }
    }
}

#[test]
fn width_is_minimal_against_functional_scan() {
    // true width <= scanned upper bound, with equality on small instances
    let mut pinched = 0;
    let mut seen = BTreeSet::new();
    for d in 2..=12u32 {
        for c in algorithm1(Determinant::new(d as i64).unwrap()).unwrap() {
            let s = VRepSimplex::from_tuple(&c).unwrap();
            let w = width(&s.tuple(), DEFAULT_WIDTH_CAP).width().unwrap() as u64;
            let upper = oracle_width_upper(&s, 3);
            assert!(upper >= w, "{s}: scan {upper} < width {w}");
            if upper == w {
                pinched += 1;
            }
            seen.insert(c);
        }
    }
    assert_eq!(pinched, seen.len());
}
