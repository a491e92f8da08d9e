//! Finite magmas given by explicit Cayley tables, classified along the
//! associativity taxonomy: alternative, power- and di-associative, quasigroup,
//! loop, inverse properties and Moufang.

mod classify;
pub mod corpus;
mod powers;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::CdAlgebra;
use crate::error::{Error, Result};
use crate::ring::Elem;

pub use classify::{
    check_lattice, classify, classify_with_cap, di_associativity, is_alternative, is_associative,
    power_associativity, strongly_associative_check, TaxonomyReport, Verdict, MAGMA_CAP,
};
pub use powers::{
    left_power, power_laws, quasigroup_power_pitfalls, right_power, AdditiveFailure, PowerDivergence,
    PowerLaws, PowerPitfalls,
};

/// An explicit finite Cayley table. Row `x`, column `y` holds the index of `f(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct MagmaTable {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawTable {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for MagmaTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        MagmaTable::new(raw.elements, raw.table)
    }
}

impl MagmaTable {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<MagmaTable> {
        let m = elements.len();
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != m {
            return Err(Error::InvalidTable("element names must be distinct".into()));
        }
        if table.len() != m {
            return Err(Error::InvalidTable(format!("expected {m} rows, found {}", table.len())));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= m) {
                return Err(Error::InvalidTable(format!("row {i} refers to element {bad}")));
            }
        }
        Ok(MagmaTable { elements, table })
    }

    /// Single-letter elements `a, b, c, ..`; each row is a string of letters.
    pub fn from_letters(rows: &[&str]) -> Result<MagmaTable> {
        let m = rows.len();
        if m > 26 {
            return Err(Error::InvalidTable("at most 26 letters".into()));
        }
        let elements: Vec<String> = (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let table = rows
            .iter()
            .map(|r| {
                r.bytes()
                    .map(|c| match c {
                        b'a'..=b'z' => Ok((c - b'a') as usize),
                        _ => Err(Error::InvalidTable(format!("bad letter {:?}", c as char))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        MagmaTable::new(elements, table)
    }

    /// The multiplication of `alg` restricted to the elements with the given
    /// indexes, which must be closed under the product.
    pub fn from_algebra(alg: &CdAlgebra, indices: &[u64]) -> Result<MagmaTable> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let coeffs: Vec<Vec<Elem>> = sorted.iter().map(|&i| alg.coeffs_of_index(i)).collect();
        let mut table = Vec::with_capacity(sorted.len());
        for x in &coeffs {
            let mut row = Vec::with_capacity(sorted.len());
            for y in &coeffs {
                let p = alg.index_of(&alg.mul(x, y));
                let pos = sorted
                    .binary_search(&p)
                    .map_err(|_| Error::InvalidTable("subset is not closed under the product".into()))?;
                row.push(pos);
            }
            table.push(row);
        }
        let elements = coeffs.iter().map(|c| coeff_name(c)).collect();
        MagmaTable::new(elements, table)
    }

    /// The whole multiplicative magma of `alg`.
    pub fn from_algebra_full(alg: &CdAlgebra, cap: u64) -> Result<MagmaTable> {
        let size = alg.size();
        if size * size > cap as u128 {
            return Err(Error::CapExceeded { requested: size * size, cap });
        }
        let all: Vec<u64> = (0..size as u64).collect();
        MagmaTable::from_algebra(alg, &all)
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// The smallest submagma containing `gens`, as sorted indexes.
    pub fn submagma_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.size()];
        let mut list = Vec::new();
        for &g in gens {
            if !member[g] {
                member[g] = true;
                list.push(g);
            }
        }
        let mut done = 0;
        while done < list.len() {
            let x = list[done];
            done += 1;
            let mut i = 0;
            while i < done {
                let y = list[i];
                for p in [self.op(x, y), self.op(y, x)] {
                    if !member[p] {
                        member[p] = true;
                        list.push(p);
                    }
                }
                i += 1;
            }
        }
        list.sort_unstable();
        list
    }

    /// The unique neutral element, if any.
    pub fn unit(&self) -> Option<usize> {
        (0..self.size()).find(|&e| (0..self.size()).all(|x| self.op(e, x) == x && self.op(x, e) == x))
    }

    /// Two-sided inverses of `a` relative to `unit`.
    pub fn inverses(&self, a: usize, unit: usize) -> Vec<usize> {
        (0..self.size()).filter(|&b| self.op(a, b) == unit && self.op(b, a) == unit).collect()
    }
}

fn coeff_name(c: &[Elem]) -> String {
    let parts: Vec<String> = c.iter().map(|e| e.0.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Closes `gens` under the product of `alg`, returning sorted element indexes.
pub fn algebra_closure(alg: &CdAlgebra, gens: &[Vec<Elem>], cap: u64) -> Result<Vec<u64>> {
    let mut seen = BTreeSet::new();
    let mut list: Vec<Vec<Elem>> = Vec::new();
    for g in gens {
        if seen.insert(alg.index_of(g)) {
            list.push(g.clone());
        }
    }
    let mut done = 0;
    while done < list.len() {
        let x = list[done].clone();
        done += 1;
        for i in 0..done {
            let y = list[i].clone();
            for p in [alg.mul(&x, &y), alg.mul(&y, &x)] {
                if seen.insert(alg.index_of(&p)) {
                    if seen.len() as u64 > cap {
                        return Err(Error::CapExceeded { requested: seen.len() as u128, cap });
                    }
                    list.push(p);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A failing instance of a law, with the two sides that should have agreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: Law,
    pub args: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// The laws a witness can refer to, with the shape of their arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// `[x, y]`: `xy` against `yx`.
    Commutative,
    /// `[x, y, z]`: `x(yz)` against `(xy)z`. Power- and di-associativity
    /// witnesses prefix the generators.
    Associative,
    /// `[a, x, y]`: `ax = ay` with `x != y`.
    LeftCancellation,
    /// `[a, x, y]`: `xa = ya` with `x != y`.
    RightCancellation,
    /// `[a, x]`: `a^λ(ax)` against `x`.
    LeftInverse,
    /// `[x, a]`: `(xa)a^ρ` against `x`.
    RightInverse,
    /// `[x, y, z]`: `(xy)(zx)` against `(x(yz))x`.
    M1,
    /// `[x, y, z]`: `(xy)(zx)` against `x((yz)x)`.
    M2,
    /// `[x, y, z]`: `(x(zx))y` against `x(z(xy))`.
    M3,
    /// `[x, y, z]`: `((xz)x)y` against `x(z(xy))`.
    M4,
    /// `[x, y, z]`: `((yx)z)x` against `y(x(zx))`.
    M5,
    /// `[a, n]`: left-iterated `a^n` against right-iterated `a^n`.
    Power,
    /// `[a, n, m]` or `[a, α, n, m]`: `a^(n+m)` against `f(a^n, a^m)`.
    Additive,
    /// `[a, b, n, m, p, q]` or with inverses `[a, α, b, β, ..]`:
    /// `f(a^(n+m), b^(p+q))` against `f(a^m, f(a^n, b^(p+q)))`.
    BilinearLeft,
    /// Same arguments: `f(a^(n+m), b^(p+q))` against `f(f(a^(n+m), b^p), b^q)`.
    BilinearRight,
}

impl Law {
    pub fn moufang(k: usize) -> Law {
        [Law::M1, Law::M2, Law::M3, Law::M4, Law::M5][k]
    }

    /// Both sides of a three-variable identity.
    pub fn sides3(self, t: &MagmaTable, x: usize, y: usize, z: usize) -> Option<(usize, usize)> {
        let f = |a, b| t.op(a, b);
        Some(match self {
            Law::Associative => (f(x, f(y, z)), f(f(x, y), z)),
            Law::M1 => (f(f(x, y), f(z, x)), f(f(x, f(y, z)), x)),
            Law::M2 => (f(f(x, y), f(z, x)), f(x, f(f(y, z), x))),
            Law::M3 => (f(f(x, f(z, x)), y), f(x, f(z, f(x, y)))),
            Law::M4 => (f(f(f(x, z), x), y), f(x, f(z, f(x, y)))),
            Law::M5 => (f(f(f(y, x), z), x), f(y, f(x, f(z, x)))),
            _ => return None,
        })
    }
}

impl Witness {
    pub fn new(t: &MagmaTable, law: Law, args: &[usize], lhs: usize, rhs: usize) -> Witness {
        Witness {
            law,
            args: args.iter().map(|&i| t.name(i).to_string()).collect(),
            lhs: t.name(lhs).to_string(),
            rhs: t.name(rhs).to_string(),
        }
    }

    /// Recomputes both sides on `t`. Element arguments are names, exponents
    /// are integers.
    pub fn evaluate(&self, t: &MagmaTable) -> Result<(usize, usize)> {
        let bad = || Error::InvalidTable(format!("malformed {:?} witness {:?}", self.law, self.args));
        let el = |s: &String| t.position(s).ok_or_else(bad);
        let int = |s: &String| s.parse::<i64>().map_err(|_| bad());
        let a = &self.args;
        let need = |n: usize| if a.len() == n { Ok(()) } else { Err(bad()) };
        match self.law {
            Law::Commutative => {
                need(2)?;
                let (x, y) = (el(&a[0])?, el(&a[1])?);
                Ok((t.op(x, y), t.op(y, x)))
            }
            Law::LeftCancellation | Law::RightCancellation => {
                need(3)?;
                let (p, x, y) = (el(&a[0])?, el(&a[1])?, el(&a[2])?);
                Ok(if self.law == Law::LeftCancellation { (t.op(p, x), t.op(p, y)) } else { (t.op(x, p), t.op(y, p)) })
            }
            Law::LeftInverse => {
                need(2)?;
                let (p, x) = (el(&a[0])?, el(&a[1])?);
                let lam = left_inverse_candidate(t, p).ok_or_else(bad)?;
                Ok((t.op(lam, t.op(p, x)), x))
            }
            Law::RightInverse => {
                need(2)?;
                let (x, p) = (el(&a[0])?, el(&a[1])?);
                let rho = right_inverse_candidate(t, p).ok_or_else(bad)?;
                Ok((t.op(t.op(x, p), rho), x))
            }
            Law::Power => {
                need(2)?;
                let (p, n) = (el(&a[0])?, int(&a[1])?);
                if n < 1 {
                    return Err(bad());
                }
                Ok((left_power(t, p, n as usize), right_power(t, p, n as usize)))
            }
            Law::Additive => {
                let (p, inv, n, m) = match a.len() {
                    3 => (el(&a[0])?, None, int(&a[1])?, int(&a[2])?),
                    4 => (el(&a[0])?, Some(el(&a[1])?), int(&a[2])?, int(&a[3])?),
                    _ => return Err(bad()),
                };
                let pw = |k| powers::signed_power(t, p, inv, k).ok_or_else(bad);
                Ok((pw(n + m)?, t.op(pw(n)?, pw(m)?)))
            }
            Law::BilinearLeft | Law::BilinearRight => {
                let (p, pi, q, qi, e) = match a.len() {
                    6 => (el(&a[0])?, None, el(&a[1])?, None, &a[2..]),
                    8 => (el(&a[0])?, Some(el(&a[1])?), el(&a[2])?, Some(el(&a[3])?), &a[4..]),
                    _ => return Err(bad()),
                };
                let (n, m, r, s) = (int(&e[0])?, int(&e[1])?, int(&e[2])?, int(&e[3])?);
                let pa = |k| powers::signed_power(t, p, pi, k).ok_or_else(bad);
                let pb = |k| powers::signed_power(t, q, qi, k).ok_or_else(bad);
                let lhs = t.op(pa(n + m)?, pb(r + s)?);
                let rhs = if self.law == Law::BilinearLeft {
                    t.op(pa(m)?, t.op(pa(n)?, pb(r + s)?))
                } else {
                    t.op(t.op(pa(n + m)?, pb(r)?), pb(s)?)
                };
                Ok((lhs, rhs))
            }
            Law::Associative => {
                if !(3..=5).contains(&a.len()) {
                    return Err(bad());
                }
                let k = a.len() - 3;
                let (x, y, z) = (el(&a[k])?, el(&a[k + 1])?, el(&a[k + 2])?);
                Law::Associative.sides3(t, x, y, z).ok_or_else(bad)
            }
            law => {
                need(3)?;
                let (x, y, z) = (el(&a[0])?, el(&a[1])?, el(&a[2])?);
                law.sides3(t, x, y, z).ok_or_else(bad)
            }
        }
    }
}

/// The only element that can serve as `a^λ`: the solution of `λ(aa) = a`.
pub(crate) fn left_inverse_candidate(t: &MagmaTable, a: usize) -> Option<usize> {
    let aa = t.op(a, a);
    (0..t.size()).find(|&l| t.op(l, aa) == a)
}

/// The only element that can serve as `a^ρ`: the solution of `(aa)ρ = a`.
pub(crate) fn right_inverse_candidate(t: &MagmaTable, a: usize) -> Option<usize> {
    let aa = t.op(a, a);
    (0..t.size()).find(|&r| t.op(aa, r) == a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_validation() {
        let json = r#"{"elements":["a","b","c"],"table":[[0,2,1],[2,1,0],[1,0,2]]}"#;
        let t: MagmaTable = serde_json::from_str(json).unwrap();
        assert_eq!(t.op(0, 1), 2);
        assert_eq!(serde_json::to_string(&t).unwrap(), json);
        let bad = r#"{"elements":["a","b"],"table":[[0,2],[1,0]]}"#;
        assert!(serde_json::from_str::<MagmaTable>(bad).is_err());
        let dup = r#"{"elements":["a","a"],"table":[[0,0],[0,0]]}"#;
        assert!(serde_json::from_str::<MagmaTable>(dup).is_err());
        let empty: MagmaTable = serde_json::from_str(r#"{"elements":[],"table":[]}"#).unwrap();
        assert_eq!(empty.size(), 0);
    }

    #[test]
    fn submagma_generation() {
        let t = MagmaTable::from_letters(&["aaaa", "adac", "aaca", "acaa"]).unwrap();
        assert_eq!(t.submagma_generated(&[]), Vec::<usize>::new());
        assert_eq!(t.submagma_generated(&[1, 3]), vec![0, 1, 2, 3]);
        assert_eq!(t.submagma_generated(&[1]), vec![0, 1, 2, 3]);
        assert_eq!(t.submagma_generated(&[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        assert_eq!(t.submagma_generated(&[2]), vec![2]);
    }

    #[test]
    fn algebra_tables() {
        let alg = CdAlgebra::from_spec(crate::ring::RingSpec::zn(4), &[]).unwrap();
        let t = MagmaTable::from_algebra_full(&alg, 1 << 20).unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(t.op(2, 2), 0);
        assert_eq!(t.name(3), "(3)");
        assert!(MagmaTable::from_algebra(&alg, &[1, 2]).is_err());
        assert_eq!(MagmaTable::from_algebra(&alg, &[1, 3]).unwrap().size(), 2);
    }
}
