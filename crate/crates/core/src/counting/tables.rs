//! Sweeps that regenerate the two cardinality tables and compare the closed
//! forms against enumeration.

use serde::{Deserialize, Serialize};

use crate::algebra::CdAlgebra;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::loops::norm_census;
use crate::report::{Check, Report};
use crate::ring::{gcd, prime_power, Ring, RingSpec};

use super::closed_form::{closed_form_galois, closed_form_zn_composite, Counts};
use super::norm_dist::oracle_counts;

/// How the enumerated column was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Every element visited.
    Exhaustive,
    /// Norm-distribution convolution, used above the cap.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: String,
    pub ring: String,
    pub level: usize,
    pub class: String,
    pub constants: String,
    pub units_closed: u128,
    pub units_counted: u128,
    pub unimodulars_closed: u128,
    pub unimodulars_counted: u128,
    pub residues: u128,
    pub method: Method,
    pub pass: bool,
}

fn product<T: Clone>(choices: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// One representative constant tuple per class.
///
/// Odd `q`: each slot is a square (`s`, represented by 1) or a non-square
/// (`n`, the smallest one by index). Even `q`: all squares, so only `1`.
pub fn galois_classes(field: &Ring, level: usize) -> Result<Vec<(String, Vec<i64>)>> {
    let reps: Vec<(char, i64)> = if field.has_char_two() {
        vec![('u', 1)]
    } else {
        let ns = field
            .elements()
            .find(|&a| field.chi2(a) == Ok(-1))
            .ok_or_else(|| Error::InvalidSpec("no non-square".into()))?;
        vec![('s', 1), ('n', ns.0 as i64)]
    };
    Ok(product(&reps, level)
        .into_iter()
        .map(|t| (t.iter().map(|c| c.0).collect::<String>(), t.iter().map(|c| c.1).collect()))
        .collect())
}

/// One representative per class for `Z_n`.
///
/// Odd prime powers: quadratic residue class mod `p`. Powers of two:
/// `α mod 8` in `{1,3,5,7}` (as far as `n` allows). Composite `n`: `±1`.
pub fn zn_classes(n: u64, level: usize) -> Vec<(String, Vec<i64>)> {
    let reps: Vec<(String, i64)> = match prime_power(n) {
        Some((2, s)) => [1i64, 3, 5, 7]
            .iter()
            .filter(|&&a| s >= 3 || a < n as i64)
            .map(|&a| (a.to_string(), a))
            .collect(),
        Some((p, _)) => {
            let ns = (2..p).find(|&a| {
                let mut acc = 1u64;
                for _ in 0..(p - 1) / 2 {
                    acc = acc * a % p;
                }
                acc != 1
            });
            let mut v = vec![("s".to_string(), 1)];
            if let Some(a) = ns {
                v.push(("n".to_string(), a as i64));
            }
            v
        }
        None => vec![("1".to_string(), 1), ("-1".to_string(), n as i64 - 1)],
    };
    product(&reps, level)
        .into_iter()
        .map(|t| {
            let label = t.iter().map(|c| c.0.clone()).collect::<Vec<_>>().join("");
            (label, t.iter().map(|c| c.1).collect())
        })
        .collect()
}

fn counted(alg: &CdAlgebra, cfg: &RunConfig) -> Result<(Counts, Method)> {
    if alg.size() <= cfg.cap as u128 {
        let c = norm_census(alg, cfg)?;
        let r = alg.ring();
        Ok((Counts { units: c.units(r) as u128, unimodulars: c.unimodulars(r) as u128 }, Method::Exhaustive))
    } else {
        Ok((oracle_counts(alg.ring(), alg.constants())?, Method::Oracle))
    }
}

fn constants_string(c: &[i64]) -> String {
    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn row(table: &str, ring: String, alg: &CdAlgebra, class: String, constants: &[i64], closed: Counts, cfg: &RunConfig) -> Result<TableRow> {
    let (count, method) = counted(alg, cfg)?;
    Ok(TableRow {
        table: table.into(),
        ring,
        level: alg.level(),
        class,
        constants: constants_string(constants),
        units_closed: closed.units,
        units_counted: count.units,
        unimodulars_closed: closed.unimodulars,
        unimodulars_counted: count.unimodulars,
        residues: if count.unimodulars == 0 { 0 } else { count.units / count.unimodulars },
        method,
        pass: closed == count,
    })
}

pub fn galois_row(q: u64, constants: &[i64], class: &str, cfg: &RunConfig) -> Result<TableRow> {
    let alg = CdAlgebra::from_spec(RingSpec::gf_order(q, cfg.cap.max(q))?, constants)?;
    let closed = closed_form_galois(alg.ring(), alg.constants())?;
    row("galois", q.to_string(), &alg, class.into(), constants, closed, cfg)
}

pub fn zn_row(n: u64, constants: &[i64], class: &str, cfg: &RunConfig) -> Result<TableRow> {
    let alg = CdAlgebra::from_spec(RingSpec::zn(n), constants)?;
    let closed = closed_form_zn_composite(n, constants)?;
    row("zn", n.to_string(), &alg, class.into(), constants, closed, cfg)
}

/// Every prime power `q <= max_q` and level `0..=max_level`, one row per class.
pub fn galois_sweep(max_q: u64, max_level: usize, cfg: &RunConfig) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for q in (2..=max_q).filter(|&q| prime_power(q).is_some()) {
        let field = Ring::new(RingSpec::gf_order(q, cfg.cap.max(q))?)?;
        for t in 0..=max_level.min(3) {
            for (class, c) in galois_classes(&field, t)? {
                rows.push(galois_row(q, &c, &class, cfg)?);
            }
        }
    }
    Ok(rows)
}

/// Every `2 <= n <= max_n` and level `0..=max_level`, one row per class.
pub fn zn_sweep(max_n: u64, max_level: usize, cfg: &RunConfig) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for t in 0..=max_level.min(3) {
            for (class, c) in zn_classes(n, t) {
                debug_assert!(c.iter().all(|&a| gcd(a as u64 % n, n) == 1));
                rows.push(zn_row(n, &c, &class, cfg)?);
            }
        }
    }
    Ok(rows)
}

/// Pins the sign of the odd-`q` level-1 closed form against enumeration.
///
/// The closed form carries `χ₂(α)χ₂(-1) = χ₂(-α)`; the opposite sign is
/// evaluated too, so the report shows which convention the counts select.
pub fn level_one_sign_check(q: u64, alpha: i64, cfg: &RunConfig) -> Result<Report> {
    let alg = CdAlgebra::from_spec(RingSpec::gf_order(q, cfg.cap.max(q))?, &[alpha])?;
    let field = alg.ring();
    if field.has_char_two() {
        return Err(Error::InvalidSpec("the sign only matters for odd q".into()));
    }
    let closed = closed_form_galois(field, alg.constants())?;
    let census = norm_census(&alg, cfg)?;
    let units = census.units(field) as u128;
    let uni = census.unimodulars(field) as u128;
    let c = field.chi2(field.neg(alg.constants()[0]))? as i128;
    let qi = q as i128;
    let flipped_units = (qi * qi - (qi + (qi - 1) * -c)) as u128;
    let flipped_uni = (qi + c) as u128;
    let flipped_matches = flipped_units == units && flipped_uni == uni;
    let mut report = Report::default();
    report.push(Check::eq("units: closed form = enumeration", closed.units as u64, units as u64));
    report.push(Check::eq("unimodulars: closed form = enumeration", closed.unimodulars as u64, uni as u64));
    report.push(Check::new("units with the opposite sign", flipped_units as u64, units as u64, true));
    report.push(Check::new("unimodulars with the opposite sign", flipped_uni as u64, uni as u64, true));
    let erratum = closed != Counts { units, unimodulars: uni } && flipped_matches;
    report.push(Check::new("sign erratum required", erratum, false, !erratum));
    Ok(report)
}

pub fn to_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidSpec(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidSpec(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_representatives() {
        let f5 = Ring::new(RingSpec::gf_order(5, 1 << 20).unwrap()).unwrap();
        let classes = galois_classes(&f5, 2).unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(classes[1], ("sn".to_string(), vec![1, 2]));
        let f4 = Ring::new(RingSpec::gf_order(4, 1 << 20).unwrap()).unwrap();
        assert_eq!(galois_classes(&f4, 3).unwrap().len(), 1);
        assert_eq!(zn_classes(8, 1).len(), 4);
        assert_eq!(zn_classes(4, 1).len(), 2);
        assert_eq!(zn_classes(9, 1), vec![("s".to_string(), vec![1]), ("n".to_string(), vec![2])]);
        assert_eq!(zn_classes(6, 0), vec![(String::new(), vec![])]);
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = RunConfig::default();
        let rows = galois_sweep(5, 2, &cfg).unwrap();
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
        let rows = zn_sweep(9, 2, &cfg).unwrap();
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
        let csv = to_csv(&rows).unwrap();
        assert!(csv.starts_with("table,ring,level,class,constants,units_closed"));
    }

    #[test]
    fn oracle_used_above_cap() {
        let cfg = RunConfig::default().with_cap(100);
        let r = galois_row(3, &[1, 1, 1], "sss", &cfg).unwrap();
        assert_eq!(r.method, Method::Oracle);
        assert!(r.pass);
    }

    #[test]
    fn level_one_sign_is_pinned() {
        let cfg = RunConfig::default();
        let r = level_one_sign_check(5, 2, &cfg).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.checks[0].rhs, 24);
        assert_eq!(r.checks[1].rhs, 6);
        assert_eq!(r.checks[2].lhs, 16);
        let r = level_one_sign_check(3, 1, &cfg).unwrap();
        assert_eq!(r.checks[0].lhs, 8);
        assert_eq!(r.checks[2].lhs, 4);
    }
}
