use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{left_inverse_candidate, right_inverse_candidate, Law, MagmaTable, Witness};
use crate::error::{Error, Result};

/// Default bound on `m³` for a full classification.
pub const MAGMA_CAP: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes() -> Verdict {
        Verdict { holds: true, witness: None }
    }

    pub fn no(witness: Option<Witness>) -> Verdict {
        Verdict { holds: false, witness }
    }

    fn from_witness(witness: Option<Witness>) -> Verdict {
        Verdict { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaxonomyReport {
    pub size: usize,
    pub commutative: Verdict,
    pub has_unit: Verdict,
    pub alternative: Verdict,
    pub power_associative: Verdict,
    pub di_associative: Verdict,
    pub associative: Verdict,
    pub quasigroup: Verdict,
    #[serde(rename = "loop")]
    pub is_loop: Verdict,
    pub lip: Verdict,
    pub rip: Verdict,
    pub ip: Verdict,
    pub moufang: Verdict,
    pub monogenic: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

impl TaxonomyReport {
    /// Flag values by name.
    pub fn flags(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("commutative", self.commutative.holds),
            ("has_unit", self.has_unit.holds),
            ("alternative", self.alternative.holds),
            ("power_associative", self.power_associative.holds),
            ("di_associative", self.di_associative.holds),
            ("associative", self.associative.holds),
            ("quasigroup", self.quasigroup.holds),
            ("loop", self.is_loop.holds),
            ("lip", self.lip.holds),
            ("rip", self.rip.holds),
            ("ip", self.ip.holds),
            ("moufang", self.moufang.holds),
            ("monogenic", self.monogenic.holds),
        ]
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags().into_iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

fn first_failure(
    t: &MagmaTable,
    law: Law,
    xs: &[usize],
    guard: impl Fn(usize, usize, usize) -> bool,
) -> Option<Witness> {
    for &x in xs {
        for &y in xs {
            for &z in xs {
                if !guard(x, y, z) {
                    continue;
                }
                let (l, r) = law.sides3(t, x, y, z).expect("three-variable law");
                if l != r {
                    return Some(Witness::new(t, law, &[x, y, z], l, r));
                }
            }
        }
    }
    None
}

fn all(t: &MagmaTable) -> Vec<usize> {
    (0..t.size()).collect()
}

pub fn is_associative(t: &MagmaTable) -> Verdict {
    Verdict::from_witness(first_failure(t, Law::Associative, &all(t), |_, _, _| true))
}

/// Only triples with a repeated entry are visited, so this is quadratic.
pub fn is_alternative(t: &MagmaTable) -> Verdict {
    let m = t.size();
    for x in 0..m {
        let mut best: Option<[usize; 3]> = None;
        for y in 0..m {
            for c in [[x, x, y], [x, y, x], [x, y, y]] {
                let (l, r) = Law::Associative.sides3(t, c[0], c[1], c[2]).expect("three-variable law");
                if l != r && best.is_none_or(|b| c < b) {
                    best = Some(c);
                }
            }
        }
        if let Some([x, y, z]) = best {
            let (l, r) = Law::Associative.sides3(t, x, y, z).expect("three-variable law");
            return Verdict::no(Some(Witness::new(t, Law::Associative, &[x, y, z], l, r)));
        }
    }
    Verdict::yes()
}

fn commutativity(t: &MagmaTable) -> Verdict {
    for x in 0..t.size() {
        for y in x + 1..t.size() {
            if t.op(x, y) != t.op(y, x) {
                return Verdict::no(Some(Witness::new(t, Law::Commutative, &[x, y], t.op(x, y), t.op(y, x))));
            }
        }
    }
    Verdict::yes()
}

/// Associativity of the submagma generated by each group of generators, with
/// results shared between generator sets that close to the same submagma.
fn closure_associativity(t: &MagmaTable, gens: impl Iterator<Item = Vec<usize>>) -> Verdict {
    let mut cache: HashMap<Vec<usize>, Option<Witness>> = HashMap::new();
    for g in gens {
        let closure = t.submagma_generated(&g);
        let failure = cache
            .entry(closure)
            .or_insert_with_key(|c| first_failure(t, Law::Associative, c, |_, _, _| true))
            .clone();
        if let Some(w) = failure {
            let mut args: Vec<String> = g.iter().map(|&i| t.name(i).to_string()).collect();
            args.extend(w.args);
            return Verdict::no(Some(Witness { args, ..w }));
        }
    }
    Verdict::yes()
}

/// Every single-generator submagma is associative. A witness carries the
/// generator followed by the failing triple.
pub fn power_associativity(t: &MagmaTable) -> Verdict {
    closure_associativity(t, (0..t.size()).map(|a| vec![a]))
}

/// Every submagma generated by two elements is associative. A witness carries
/// both generators followed by the failing triple.
pub fn di_associativity(t: &MagmaTable) -> Verdict {
    let m = t.size();
    closure_associativity(t, (0..m).flat_map(move |a| (a..m).map(move |b| vec![a, b])))
}

fn quasigroup(t: &MagmaTable) -> Verdict {
    let m = t.size();
    if m == 0 {
        return Verdict::no(None);
    }
    for a in 0..m {
        for x in 0..m {
            for y in x + 1..m {
                if t.op(a, x) == t.op(a, y) {
                    return Verdict::no(Some(Witness::new(t, Law::LeftCancellation, &[a, x, y], t.op(a, x), t.op(a, y))));
                }
                if t.op(x, a) == t.op(y, a) {
                    return Verdict::no(Some(Witness::new(t, Law::RightCancellation, &[a, x, y], t.op(x, a), t.op(y, a))));
                }
            }
        }
    }
    Verdict::yes()
}

/// Left inverse property: for each `a` the candidate `a^λ` undoes left
/// multiplication by `a`. Only meaningful for quasigroups.
fn left_inverse_property(t: &MagmaTable) -> Verdict {
    for a in 0..t.size() {
        let lam = left_inverse_candidate(t, a);
        for x in 0..t.size() {
            let lhs = lam.map(|l| t.op(l, t.op(a, x)));
            if lhs != Some(x) {
                let w = lhs.map(|l| Witness::new(t, Law::LeftInverse, &[a, x], l, x));
                return Verdict::no(w);
            }
        }
    }
    Verdict::yes()
}

fn right_inverse_property(t: &MagmaTable) -> Verdict {
    for a in 0..t.size() {
        let rho = right_inverse_candidate(t, a);
        for x in 0..t.size() {
            let lhs = rho.map(|r| t.op(t.op(x, a), r));
            if lhs != Some(x) {
                let w = lhs.map(|l| Witness::new(t, Law::RightInverse, &[x, a], l, x));
                return Verdict::no(w);
            }
        }
    }
    Verdict::yes()
}

fn monogenic(t: &MagmaTable) -> (Verdict, Option<usize>) {
    let m = t.size();
    match (0..m).find(|&a| t.submagma_generated(&[a]).len() == m) {
        Some(g) => (Verdict::yes(), Some(g)),
        None => (Verdict::no(None), None),
    }
}

pub fn classify(t: &MagmaTable) -> Result<TaxonomyReport> {
    classify_with_cap(t, MAGMA_CAP)
}

/// Decides every flag exactly. The cap bounds `m³`.
pub fn classify_with_cap(t: &MagmaTable, cap: u64) -> Result<TaxonomyReport> {
    let m = t.size() as u128;
    if m * m * m > cap as u128 {
        return Err(Error::CapExceeded { requested: m * m * m, cap });
    }
    let associative = is_associative(t);
    let alternative = if associative.holds { Verdict::yes() } else { is_alternative(t) };
    let (power_associative, di_associative) = if associative.holds {
        (Verdict::yes(), Verdict::yes())
    } else {
        (power_associativity(t), di_associativity(t))
    };
    let unit = t.unit();
    let has_unit = if unit.is_some() { Verdict::yes() } else { Verdict::no(None) };
    let quasigroup = quasigroup(t);
    let is_loop = match (&quasigroup.holds, unit) {
        (true, Some(_)) => Verdict::yes(),
        (true, None) => Verdict::no(None),
        (false, _) => Verdict::no(quasigroup.witness.clone()),
    };
    let (lip, rip) = if quasigroup.holds {
        (left_inverse_property(t), right_inverse_property(t))
    } else {
        (Verdict::no(None), Verdict::no(None))
    };
    let ip = match (lip.holds, rip.holds) {
        (true, true) => Verdict::yes(),
        (false, _) => Verdict::no(lip.witness.clone()),
        (true, false) => Verdict::no(rip.witness.clone()),
    };
    let moufang = if is_loop.holds {
        let xs = all(t);
        let failure = (0..5).find_map(|k| first_failure(t, Law::moufang(k), &xs, |_, _, _| true));
        Verdict::from_witness(failure)
    } else {
        Verdict::no(is_loop.witness.clone())
    };
    let (monogenic, generator) = monogenic(t);
    let report = TaxonomyReport {
        size: t.size(),
        commutative: commutativity(t),
        has_unit,
        alternative,
        power_associative,
        di_associative,
        associative,
        quasigroup,
        is_loop,
        lip,
        rip,
        ip,
        moufang,
        monogenic,
        unit: unit.map(|u| t.name(u).to_string()),
        generator: generator.map(|g| t.name(g).to_string()),
    };
    check_lattice(&report)?;
    Ok(report)
}

/// The implications between flags that every report must respect.
pub fn check_lattice(r: &TaxonomyReport) -> Result<()> {
    let rules: [(&str, bool, bool); 10] = [
        ("associative implies di-associative", r.associative.holds, r.di_associative.holds),
        ("di-associative implies alternative", r.di_associative.holds, r.alternative.holds),
        ("di-associative implies power-associative", r.di_associative.holds, r.power_associative.holds),
        ("loop implies quasigroup", r.is_loop.holds, r.quasigroup.holds),
        ("loop implies neutral element", r.is_loop.holds, r.has_unit.holds),
        ("I.P. implies L.I.P.", r.ip.holds, r.lip.holds),
        ("I.P. implies R.I.P.", r.ip.holds, r.rip.holds),
        ("Moufang implies di-associative", r.moufang.holds, r.di_associative.holds),
        ("Moufang implies I.P.", r.moufang.holds, r.ip.holds),
        ("associative quasigroup is a loop", r.associative.holds && r.quasigroup.holds, r.is_loop.holds),
    ];
    for (name, premise, conclusion) in rules {
        if premise && !conclusion {
            return Err(Error::InconsistentTaxonomy(name.into()));
        }
    }
    if r.lip.holds && r.rip.holds && !r.ip.holds {
        return Err(Error::InconsistentTaxonomy("L.I.P. and R.I.P. without I.P.".into()));
    }
    Ok(())
}

/// `subset` is strongly associative when every triple having two of its
/// positions in `subset` associates.
pub fn strongly_associative_check(t: &MagmaTable, subset: &[usize]) -> Verdict {
    let mut best: Option<[usize; 3]> = None;
    let mut consider = |x: usize, y: usize, z: usize| {
        if best.is_some_and(|b| b <= [x, y, z]) {
            return;
        }
        let (l, r) = Law::Associative.sides3(t, x, y, z).expect("three-variable law");
        if l != r {
            best = Some([x, y, z]);
        }
    };
    for &s in subset {
        for &u in subset {
            for w in 0..t.size() {
                consider(s, u, w);
                consider(s, w, u);
                consider(w, s, u);
            }
        }
    }
    match best {
        None => Verdict::yes(),
        Some([x, y, z]) => {
            let (l, r) = Law::Associative.sides3(t, x, y, z).expect("three-variable law");
            Verdict::no(Some(Witness::new(t, Law::Associative, &[x, y, z], l, r)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(rows: &[&str]) -> MagmaTable {
        MagmaTable::from_letters(rows).unwrap()
    }

    fn witness(v: &Verdict) -> (Law, Vec<&str>, &str, &str) {
        let w = v.witness.as_ref().expect("witness");
        (w.law, w.args.iter().map(|s| s.as_str()).collect(), w.lhs.as_str(), w.rhs.as_str())
    }

    #[test]
    fn alternative_not_power_associative() {
        let t = letters(&["aaaa", "adac", "aaca", "acaa"]);
        let r = classify(&t).unwrap();
        assert!(r.alternative.holds);
        assert!(!r.power_associative.holds);
        assert_eq!(witness(&r.power_associative), (Law::Associative, vec!["b", "b", "d", "c"], "a", "c"));
        assert_eq!(r.generator.as_deref(), Some("b"));
    }

    #[test]
    fn power_associative_not_alternative() {
        let t = letters(&["acb", "cba", "bac"]);
        let r = classify(&t).unwrap();
        assert!(r.power_associative.holds);
        assert!(!r.alternative.holds);
        assert_eq!(witness(&r.alternative), (Law::Associative, vec!["a", "a", "b"], "b", "c"));
        assert!(!r.monogenic.holds);
        assert!(r.quasigroup.holds);
        assert!(r.commutative.holds);
    }

    #[test]
    fn monogenic_loop_not_power_associative() {
        let t = letters(&["abcde", "baecd", "cedba", "dcaeb", "edbac"]);
        let r = classify(&t).unwrap();
        assert!(r.is_loop.holds && r.monogenic.holds && !r.power_associative.holds);
        assert_eq!(t.submagma_generated(&[4]).len(), 5);
        assert_eq!(r.unit.as_deref(), Some("a"));
        assert!(!r.moufang.holds);
    }

    #[test]
    fn di_associative_ladder() {
        let alt_not_di = classify(&letters(&["aaaa", "aaac", "aaca", "aaaa"])).unwrap();
        assert!(alt_not_di.alternative.holds && alt_not_di.power_associative.holds);
        assert!(!alt_not_di.di_associative.holds);
        assert_eq!(witness(&alt_not_di.di_associative), (Law::Associative, vec!["b", "d", "b", "d", "c"], "a", "c"));

        let pa_not_di = classify(&letters(&["aba", "baa", "aaa"])).unwrap();
        assert!(pa_not_di.power_associative.holds && !pa_not_di.di_associative.holds);

        let di_not_as = classify(&letters(&["aac", "abb", "abc"])).unwrap();
        assert!(di_not_as.di_associative.holds && !di_not_as.associative.holds);
        assert_eq!(witness(&di_not_as.associative), (Law::Associative, vec!["a", "b", "c"], "a", "c"));
    }

    #[test]
    fn quasigroups_without_unit() {
        let not_loop = classify(&letters(&["bac", "acb", "cba"])).unwrap();
        assert!(not_loop.quasigroup.holds && !not_loop.has_unit.holds && !not_loop.is_loop.holds);
        let bare = classify(&letters(&["bca", "abc", "cab"])).unwrap();
        assert!(bare.quasigroup.holds && !bare.is_loop.holds && !bare.alternative.holds);
    }

    #[test]
    fn monoid_not_quasigroup() {
        let r = classify(&letters(&["caa", "abc", "acc"])).unwrap();
        assert!(r.associative.holds && r.has_unit.holds);
        assert_eq!(r.unit.as_deref(), Some("b"));
        assert!(!r.quasigroup.holds);
        assert_eq!(witness(&r.quasigroup), (Law::LeftCancellation, vec!["a", "b", "c"], "a", "a"));
    }

    #[test]
    fn loop_without_inverse_property() {
        let t = letters(&["abcde", "baecd", "cdaeb", "debac", "ecdba"]);
        let r = classify(&t).unwrap();
        assert!(r.is_loop.holds);
        assert!(!r.lip.holds && !r.rip.holds && !r.ip.holds);
        for x in 0..5 {
            assert_eq!(t.inverses(x, 0), vec![x]);
        }
        assert_eq!(witness(&r.lip), (Law::LeftInverse, vec!["b", "c"], "d", "c"));
    }

    #[test]
    fn groups_are_moufang() {
        let z3 = classify(&letters(&["abc", "bca", "cab"])).unwrap();
        assert!(z3.moufang.holds && z3.ip.holds && z3.associative.holds && z3.monogenic.holds);
        let klein = classify(&letters(&["abcd", "badc", "cdab", "dcba"])).unwrap();
        assert!(klein.moufang.holds && !klein.monogenic.holds);
    }

    #[test]
    fn empty_and_trivial() {
        let empty = MagmaTable::new(vec![], vec![]).unwrap();
        let r = classify(&empty).unwrap();
        assert!(r.associative.holds && r.alternative.holds);
        assert!(!r.quasigroup.holds && !r.is_loop.holds && !r.has_unit.holds);
        let one = classify(&letters(&["a"])).unwrap();
        assert!(one.flags().iter().all(|(_, v)| *v));
    }

    #[test]
    fn strongly_associative_subsets() {
        let t = letters(&["aaaa", "adac", "aaca", "acaa"]);
        assert!(strongly_associative_check(&t, &[]).holds);
        let full = strongly_associative_check(&t, &[0, 1, 2, 3]);
        assert!(!full.holds);
        assert_eq!(full.witness, is_associative(&t).witness);
        assert!(strongly_associative_check(&t, &[0]).holds);
    }

    #[test]
    fn cap_is_enforced() {
        let t = letters(&["aaaa", "adac", "aaca", "acaa"]);
        assert!(matches!(classify_with_cap(&t, 63), Err(Error::CapExceeded { .. })));
        assert!(classify_with_cap(&t, 64).is_ok());
    }

    #[test]
    fn lattice_rejects_conflicts() {
        let mut r = classify(&letters(&["abc", "bca", "cab"])).unwrap();
        r.di_associative.holds = false;
        assert!(matches!(check_lattice(&r), Err(Error::InconsistentTaxonomy(_))));
    }
}
