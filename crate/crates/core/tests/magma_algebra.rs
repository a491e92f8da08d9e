use cayley_core::algebra::CdAlgebra;
use cayley_core::loops::UnitLoop;
use cayley_core::magma::{
    algebra_closure, classify, is_alternative, is_associative, power_laws, strongly_associative_check, MagmaTable,
};
use cayley_core::{RingSpec, RunConfig};

const CAP: u64 = 1 << 26;

fn gf(q: u64) -> RingSpec {
    RingSpec::gf_order(q, 1 << 20).unwrap()
}

fn full(spec: RingSpec, constants: &[i64]) -> MagmaTable {
    let alg = CdAlgebra::from_spec(spec, constants).unwrap();
    MagmaTable::from_algebra_full(&alg, CAP).unwrap()
}

#[test]
fn characteristic_two_ladder() {
    for level in 0..=3 {
        let t = full(gf(2), &vec![1; level]);
        let r = classify(&t).unwrap();
        assert!(r.associative.holds, "level {level}");
        assert!(r.commutative.holds, "level {level}");
        assert!(r.has_unit.holds && !r.quasigroup.holds);
    }
}

#[test]
fn odd_characteristic_ladder() {
    let r0 = classify(&full(gf(3), &[])).unwrap();
    let r1 = classify(&full(gf(3), &[1])).unwrap();
    let r2 = classify(&full(gf(3), &[1, 1])).unwrap();
    assert!(r0.associative.holds && r0.commutative.holds);
    assert!(r1.associative.holds && r1.commutative.holds);
    assert!(r2.associative.holds && !r2.commutative.holds);
    let z4 = classify(&full(RingSpec::zn(4), &[])).unwrap();
    assert!(z4.associative.holds && !z4.monogenic.holds);
}

#[test]
fn level_three_is_alternative_not_associative() {
    let alg = CdAlgebra::from_spec(gf(3), &[1, 1, 1]).unwrap();
    let mut gens: Vec<_> = (1..8).map(|i| alg.basis_coeffs(i)).collect();
    gens.push(alg.zero_coeffs());
    let closure = algebra_closure(&alg, &gens, 1 << 16).unwrap();
    assert_eq!(closure.len(), 17);
    let t = MagmaTable::from_algebra(&alg, &closure).unwrap();
    let r = classify(&t).unwrap();
    assert!(r.alternative.holds && r.di_associative.holds && !r.associative.holds);
    assert!(!r.quasigroup.holds);
    for h in 0..t.size() {
        assert!(strongly_associative_check(&t, &[h]).holds, "singleton {}", t.name(h));
    }
    let whole: Vec<usize> = (0..t.size()).collect();
    let w = strongly_associative_check(&t, &whole);
    assert!(!w.holds);
    assert_eq!(w.witness, is_associative(&t).witness);
    assert!(is_alternative(&t).holds);
}

#[test]
fn basis_units_form_a_moufang_loop() {
    let alg = CdAlgebra::from_spec(gf(3), &[1, 1, 1]).unwrap();
    let gens: Vec<_> = (1..8).map(|i| alg.basis_coeffs(i)).collect();
    let closure = algebra_closure(&alg, &gens, 1 << 16).unwrap();
    assert_eq!(closure.len(), 16);
    let t = MagmaTable::from_algebra(&alg, &closure).unwrap();
    let r = classify(&t).unwrap();
    assert!(r.is_loop.holds && r.moufang.holds && r.ip.holds && r.di_associative.holds);
    assert!(!r.associative.holds);
    let laws = power_laws(&t, 3, CAP).unwrap();
    assert!(laws.all_hold(), "{laws:?}");
}

#[test]
fn unit_loops_satisfy_power_laws() {
    let cfg = RunConfig::default();
    for (spec, constants) in [(gf(3), vec![1]), (gf(3), vec![1, 1]), (gf(2), vec![1, 1])] {
        let alg = CdAlgebra::from_spec(spec, &constants).unwrap();
        let lp = UnitLoop::materialize(&alg, &cfg).unwrap();
        let t = MagmaTable::from_algebra(&alg, lp.indices()).unwrap();
        let r = classify(&t).unwrap();
        assert!(r.is_loop.holds && r.moufang.holds, "{constants:?}");
        let laws = power_laws(&t, 2, CAP).unwrap();
        assert!(laws.all_hold(), "{constants:?}: {laws:?}");
    }
}
