//! The bundled counterexample tables and their expected verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{classify, quasigroup_power_pitfalls, MagmaTable, TaxonomyReport, Witness};
use crate::error::{Error, Result};

const CAP: u64 = 1 << 24;

pub const FIXTURES: [(&str, &str); 10] = [
    ("alt_not_pa", include_str!("../../fixtures/magma/alt_not_pa.json")),
    ("pa_not_alt", include_str!("../../fixtures/magma/pa_not_alt.json")),
    ("mono_loop", include_str!("../../fixtures/magma/mono_loop.json")),
    ("alt_not_di", include_str!("../../fixtures/magma/alt_not_di.json")),
    ("pa_not_di", include_str!("../../fixtures/magma/pa_not_di.json")),
    ("di_not_as", include_str!("../../fixtures/magma/di_not_as.json")),
    ("qg_not_loop", include_str!("../../fixtures/magma/qg_not_loop.json")),
    ("loop_ip", include_str!("../../fixtures/magma/loop_ip.json")),
    ("pit_lr", include_str!("../../fixtures/magma/pit_lr.json")),
    ("pit_alt", include_str!("../../fixtures/magma/pit_alt.json")),
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub claim: String,
    #[serde(flatten)]
    pub table: MagmaTable,
    /// Expected flags. Besides the taxonomy flags, `powers_agree` and
    /// `additive_powers` refer to the power pitfalls.
    pub expect: BTreeMap<String, bool>,
    #[serde(default)]
    pub witnesses: Vec<Witness>,
    /// Elements claimed to generate the whole table.
    #[serde(default)]
    pub generates: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub claim: String,
    pub pass: bool,
    pub mismatches: Vec<String>,
    pub report: TaxonomyReport,
}

pub fn load(json: &str) -> Result<Fixture> {
    serde_json::from_str(json).map_err(|e| Error::InvalidTable(e.to_string()))
}

pub fn fixtures() -> Result<Vec<Fixture>> {
    FIXTURES.iter().map(|(_, json)| load(json)).collect()
}

/// Classifies the table and checks every expectation and quoted witness.
pub fn check(f: &Fixture) -> Result<FixtureOutcome> {
    let t = &f.table;
    let report = classify(t)?;
    let pitfalls = quasigroup_power_pitfalls(t, CAP)?;
    let mut mismatches = Vec::new();
    for (flag, &want) in &f.expect {
        let got = match flag.as_str() {
            "powers_agree" => Some(pitfalls.powers_agree()),
            "additive_powers" => Some(pitfalls.additive_holds()),
            other => report.flag(other),
        };
        match got {
            Some(g) if g == want => {}
            Some(g) => mismatches.push(format!("{flag}: expected {want}, got {g}")),
            None => mismatches.push(format!("unknown flag {flag}")),
        }
    }
    for w in &f.witnesses {
        let (lhs, rhs) = w.evaluate(t)?;
        let (lhs, rhs) = (t.name(lhs), t.name(rhs));
        if lhs != w.lhs || rhs != w.rhs {
            mismatches.push(format!("{:?} {:?}: table gives {lhs}, {rhs}", w.law, w.args));
        } else if lhs == rhs {
            mismatches.push(format!("{:?} {:?}: both sides equal {lhs}", w.law, w.args));
        }
    }
    if let Some(gens) = &f.generates {
        let idx = gens
            .iter()
            .map(|g| t.position(g).ok_or_else(|| Error::InvalidTable(format!("unknown element {g}"))))
            .collect::<Result<Vec<_>>>()?;
        if t.submagma_generated(&idx).len() != t.size() {
            mismatches.push(format!("{gens:?} does not generate the table"));
        }
    }
    Ok(FixtureOutcome { name: f.name.clone(), claim: f.claim.clone(), pass: mismatches.is_empty(), mismatches, report })
}

pub fn run_corpus() -> Result<Vec<FixtureOutcome>> {
    fixtures()?.iter().map(check).collect()
}
