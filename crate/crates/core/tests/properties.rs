use std::sync::Arc;

use cayley_core::algebra::{CdAlgebra, LoopIdentity};
use cayley_core::magma::{classify, MagmaTable};
use cayley_core::ring::{Elem, Ring};
use cayley_core::RingSpec;
use proptest::prelude::*;

fn gf(q: u64) -> RingSpec {
    RingSpec::gf_order(q, 1 << 20).unwrap()
}

fn normed() -> Vec<Arc<CdAlgebra>> {
    [
        (gf(2), vec![1, 1, 1]),
        (gf(3), vec![1, 1, 1]),
        (gf(3), vec![2, 1, 2]),
        (gf(4), vec![1, 2, 3]),
        (gf(5), vec![2, 3]),
        (gf(7), vec![3, 1, 2]),
        (gf(9), vec![1, 5, 2]),
        (RingSpec::zn(4), vec![1, 3, 1]),
        (RingSpec::zn(6), vec![1, 5, 1]),
        (RingSpec::zn(9), vec![1, 2, 4]),
    ]
    .into_iter()
    .map(|(s, c)| CdAlgebra::from_spec(s, &c).unwrap())
    .collect()
}

fn level_four() -> Vec<Arc<CdAlgebra>> {
    [(gf(3), vec![1, 1, 1, 1]), (gf(5), vec![1, 2, 3, 4]), (RingSpec::zn(4), vec![1, 1, 1, 1])]
        .into_iter()
        .map(|(s, c)| CdAlgebra::from_spec(s, &c).unwrap())
        .collect()
}

fn every() -> Vec<Arc<CdAlgebra>> {
    let mut v = normed();
    v.extend(level_four());
    v
}

/// Carves `k` elements of `alg` out of raw random words.
fn elems(alg: &CdAlgebra, raw: &[u32], k: usize) -> Vec<Vec<Elem>> {
    let size = alg.ring().size() as u32;
    let d = alg.dim();
    (0..k).map(|i| (0..d).map(|j| Elem(raw[i * d + j] % size)).collect()).collect()
}

fn words() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn table_product_matches_recursive(i in 0usize..13, raw in words()) {
        let algs = every();
        let alg = &algs[i];
        let v = elems(alg, &raw, 2);
        prop_assert_eq!(alg.mul(&v[0], &v[1]), alg.mul_recursive(&v[0], &v[1]));
    }

    #[test]
    fn conjugation_axioms(i in 0usize..13, raw in words()) {
        let algs = every();
        let alg = &algs[i];
        let v = elems(alg, &raw, 2);
        let (x, y) = (&v[0], &v[1]);
        let one = alg.one_coeffs();
        prop_assert_eq!(alg.conj(&one), one.clone());
        prop_assert_eq!(alg.conj(&alg.conj(x)), x.clone());
        prop_assert_eq!(alg.conj(&alg.mul(x, y)), alg.mul(&alg.conj(y), &alg.conj(x)));
        prop_assert_eq!(alg.add(x, &alg.conj(x)), alg.scale(alg.trace(x), &one));
        prop_assert_eq!(alg.mul(x, &alg.conj(x)), alg.scale(alg.norm(x), &one));
        prop_assert_eq!(alg.mul(&alg.conj(x), x), alg.scale(alg.norm(x), &one));
    }

    #[test]
    fn trace_and_norm_identities(i in 0usize..13, raw in words()) {
        let algs = every();
        let alg = &algs[i];
        let r = alg.ring();
        let v = elems(alg, &raw, 2);
        let (x, y) = (&v[0], &v[1]);
        let one = alg.one_coeffs();
        prop_assert_eq!(alg.trace(&alg.conj(x)), alg.trace(x));
        prop_assert_eq!(alg.norm(&alg.conj(x)), alg.norm(x));
        prop_assert_eq!(alg.trace(&alg.mul(x, y)), alg.trace(&alg.mul(y, x)));
        let polar = r.sub(r.sub(alg.norm(&alg.add(x, y)), alg.norm(x)), alg.norm(y));
        prop_assert_eq!(alg.trace(&alg.mul(x, &alg.conj(y))), polar);
        let square = alg.sub(&alg.scale(alg.trace(x), x), &alg.scale(alg.norm(x), &one));
        prop_assert_eq!(alg.mul(x, x), square);
    }

    #[test]
    fn norm_is_multiplicative_up_to_level_three(i in 0usize..10, raw in words()) {
        let algs = normed();
        let alg = &algs[i];
        let v = elems(alg, &raw, 2);
        let r = alg.ring();
        prop_assert_eq!(alg.norm(&alg.mul(&v[0], &v[1])), r.mul(alg.norm(&v[0]), alg.norm(&v[1])));
    }

    #[test]
    fn teichmuller_holds_at_every_level(i in 0usize..13, raw in words()) {
        let algs = every();
        let alg = &algs[i];
        let v = elems(alg, &raw, 4);
        let (l, r) = alg.teichmuller(&v[0], &v[1], &v[2], &v[3]);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn kleinfeld_is_alternated(i in 0usize..10, raw in words()) {
        let algs = normed();
        let alg = &algs[i];
        let v = elems(alg, &raw, 4);
        let (p, q, r, s) = (&v[0], &v[1], &v[2], &v[3]);
        let zero = alg.zero_coeffs();
        prop_assert_eq!(alg.kleinfeld(p, p, q, r), zero.clone());
        prop_assert_eq!(alg.kleinfeld(p, p, p, p), zero.clone());
        prop_assert_eq!(alg.kleinfeld(p, q, s, r), alg.neg(&alg.kleinfeld(p, q, r, s)));
        prop_assert_eq!(alg.kleinfeld(q, p, r, s), alg.neg(&alg.kleinfeld(p, q, r, s)));
    }

    #[test]
    fn alternator_and_moufang_identities(i in 0usize..10, raw in words()) {
        let algs = normed();
        let alg = &algs[i];
        let v = elems(alg, &raw, 3);
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let zero = alg.zero_coeffs();
        prop_assert_eq!(alg.alternator(x, x, y), zero.clone());
        prop_assert_eq!(alg.alternator(y, x, x), zero.clone());
        prop_assert_eq!(alg.alternator(&alg.one_coeffs(), y, z), zero);
        for id in LoopIdentity::MOUFANG.into_iter().chain(LoopIdentity::ALTERNATOR) {
            let (l, r) = alg.identity_sides(id, x, y, z);
            prop_assert_eq!(l, r, "{:?}", id);
        }
    }

    #[test]
    fn power_laws_on_units(i in 0usize..10, raw in words(), n in -6i64..6, m in -6i64..6, p in -6i64..6, q in -6i64..6) {
        let algs = normed();
        let alg = &algs[i];
        let v = elems(alg, &raw, 2);
        let (a, b) = (&v[0], &v[1]);
        prop_assume!(alg.is_unit(a).unwrap() && alg.is_unit(b).unwrap());
        let pa = |k| alg.pow(a, k).unwrap();
        let pb = |k| alg.pow(b, k).unwrap();
        prop_assert_eq!(pa(n + m), alg.mul(&pa(n), &pa(m)));
        prop_assert_eq!(pa(n + m), alg.mul(&pa(m), &pa(n)));
        let lhs = alg.mul(&pa(n + m), &pb(p + q));
        prop_assert_eq!(&lhs, &alg.mul(&pa(m), &alg.mul(&pa(n), &pb(p + q))));
        prop_assert_eq!(&lhs, &alg.mul(&alg.mul(&pa(n + m), &pb(p)), &pb(q)));
    }

    #[test]
    fn quadratic_character_is_multiplicative(q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 25, 27]), a in any::<u32>(), b in any::<u32>()) {
        let f = Ring::new(gf(q)).unwrap();
        let (x, y) = (Elem(a % q as u32), Elem(b % q as u32));
        prop_assert_eq!(f.chi2(f.mul(x, y)).unwrap(), f.chi2(x).unwrap() * f.chi2(y).unwrap());
    }
}

fn table_strategy() -> impl Strategy<Value = MagmaTable> {
    (1usize..=6).prop_flat_map(|m| {
        prop::collection::vec(prop::collection::vec(0..m, m), m).prop_map(move |rows| {
            let names = (0..m).map(|i| format!("x{i}")).collect();
            MagmaTable::new(names, rows).unwrap()
        })
    })
}

/// Latin squares with a neutral element, so the loop branches get exercised.
fn loop_strategy() -> impl Strategy<Value = MagmaTable> {
    (1usize..=6, any::<u64>()).prop_map(|(m, seed)| {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (1..m).collect();
        perm.shuffle(&mut rng);
        let mut labels = vec![0];
        labels.extend(perm);
        let mut rows = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..m {
                rows[labels[i]][labels[j]] = labels[(i + j) % m];
            }
        }
        let names = (0..m).map(|i| format!("x{i}")).collect();
        MagmaTable::new(names, rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn taxonomy_lattice_on_random_tables(t in table_strategy()) {
        let r = classify(&t).unwrap();
        for v in [&r.commutative, &r.alternative, &r.power_associative, &r.di_associative, &r.associative,
                  &r.quasigroup, &r.lip, &r.rip, &r.moufang] {
            if let Some(w) = &v.witness {
                let (l, rr) = w.evaluate(&t).unwrap();
                prop_assert_eq!(t.name(l), w.lhs.as_str());
                prop_assert_eq!(t.name(rr), w.rhs.as_str());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cyclic_loops_are_groups(t in loop_strategy()) {
        let r = classify(&t).unwrap();
        prop_assert!(r.is_loop.holds && r.associative.holds && r.moufang.holds && r.ip.holds);
        prop_assert!(r.monogenic.holds && r.commutative.holds);
    }
}
