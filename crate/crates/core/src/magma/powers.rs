use serde::{Deserialize, Serialize};

use super::{Law, MagmaTable, Verdict, Witness};
use crate::error::{Error, Result};

/// `a^n` with `a^(k+1) = f(a, a^k)`, for `n >= 1`.
pub fn left_power(t: &MagmaTable, a: usize, n: usize) -> usize {
    (1..n).fold(a, |p, _| t.op(a, p))
}

/// `a^n` with `a^(k+1) = f(a^k, a)`, for `n >= 1`.
pub fn right_power(t: &MagmaTable, a: usize, n: usize) -> usize {
    (1..n).fold(a, |p, _| t.op(p, a))
}

/// Left powers extended by `a^0 = e` and `a^-n = α^n`.
pub(crate) fn signed_power(t: &MagmaTable, a: usize, inverse: Option<usize>, n: i64) -> Option<usize> {
    match n {
        0 => t.unit(),
        n if n > 0 => Some(left_power(t, a, n as usize)),
        n => inverse.map(|alpha| left_power(t, alpha, n.unsigned_abs() as usize)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDivergence {
    pub element: String,
    pub exponent: usize,
    pub left: String,
    pub right: String,
}

/// `a^(n+m) != f(a^n, a^m)` for left powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveFailure {
    pub element: String,
    pub n: usize,
    pub m: usize,
    pub power: String,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerPitfalls {
    /// Exponents are tried up to this bound.
    pub bound: usize,
    /// First exponent, per element, at which left and right powers differ.
    pub divergences: Vec<PowerDivergence>,
    /// First failure of the additive law, per element, ordered by `n + m` then `n`.
    pub additive: Vec<AdditiveFailure>,
}

impl PowerPitfalls {
    pub fn powers_agree(&self) -> bool {
        self.divergences.is_empty()
    }

    pub fn additive_holds(&self) -> bool {
        self.additive.is_empty()
    }
}

/// Compares left and right powers of every element, and checks
/// `a^(n+m) = f(a^n, a^m)` for `n + m <= 2·size`.
pub fn quasigroup_power_pitfalls(t: &MagmaTable, cap: u64) -> Result<PowerPitfalls> {
    let m = t.size();
    let bound = 2 * m;
    let work = (m as u128) * (bound as u128) * (bound as u128);
    if work > cap as u128 {
        return Err(Error::CapExceeded { requested: work, cap });
    }
    let mut divergences = Vec::new();
    let mut additive = Vec::new();
    for a in 0..m {
        let mut left = vec![a];
        let mut right = vec![a];
        for _ in 1..bound {
            left.push(t.op(a, *left.last().unwrap()));
            right.push(t.op(*right.last().unwrap(), a));
        }
        if let Some(k) = (0..bound).find(|&k| left[k] != right[k]) {
            divergences.push(PowerDivergence {
                element: t.name(a).into(),
                exponent: k + 1,
                left: t.name(left[k]).into(),
                right: t.name(right[k]).into(),
            });
        }
        'sums: for s in 2..=bound {
            for n in 1..s {
                let (p, q) = (left[n - 1], left[s - n - 1]);
                if left[s - 1] != t.op(p, q) {
                    additive.push(AdditiveFailure {
                        element: t.name(a).into(),
                        n,
                        m: s - n,
                        power: t.name(left[s - 1]).into(),
                        product: t.name(t.op(p, q)).into(),
                    });
                    break 'sums;
                }
            }
        }
    }
    Ok(PowerPitfalls { bound, divergences, additive })
}

/// The six power laws. Those needing a neutral element are `None` without one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerLaws {
    #[serde(rename = "A")]
    pub a: Verdict,
    #[serde(rename = "A'")]
    pub a_nat: Option<Verdict>,
    #[serde(rename = "A''")]
    pub a_int: Option<Verdict>,
    #[serde(rename = "B")]
    pub b: Verdict,
    #[serde(rename = "B'")]
    pub b_nat: Option<Verdict>,
    #[serde(rename = "B''")]
    pub b_int: Option<Verdict>,
}

impl PowerLaws {
    pub fn all_hold(&self) -> bool {
        [Some(&self.a), self.a_nat.as_ref(), self.a_int.as_ref(), Some(&self.b), self.b_nat.as_ref(), self.b_int.as_ref()]
            .into_iter()
            .flatten()
            .all(|v| v.holds)
    }
}

struct Ctx<'a> {
    t: &'a MagmaTable,
    bound: i64,
    unit: Option<usize>,
}

impl Ctx<'_> {
    fn name(&self, i: usize) -> String {
        self.t.name(i).to_string()
    }

    /// `a^k` for `k` in `-bound..=bound`, shifted by `bound`. Entries that
    /// need a missing unit or inverse are `usize::MAX`.
    fn powers(&self, a: usize, inv: Option<usize>) -> Vec<usize> {
        let b = self.bound as usize;
        let mut out = vec![usize::MAX; 2 * b + 1];
        out[b] = self.unit.unwrap_or(usize::MAX);
        for k in 1..=b {
            out[b + k] = left_power(self.t, a, k);
            if let Some(alpha) = inv {
                out[b - k] = left_power(self.t, alpha, k);
            }
        }
        out
    }

    /// Checks the additive law for one element over `lo..=bound`.
    fn additive(&self, a: usize, inv: Option<usize>, lo: i64) -> Option<Witness> {
        let t = self.t;
        let table = self.powers(a, inv);
        let pw = |k: i64| table[(k + self.bound) as usize];
        for n in lo..=self.bound {
            for m in lo..=self.bound {
                if (n + m).abs() > self.bound || n + m < lo {
                    continue;
                }
                let (lhs, rhs) = (pw(n + m), t.op(pw(n), pw(m)));
                if lhs != rhs {
                    let mut args = vec![self.name(a)];
                    args.extend(inv.map(|i| self.name(i)));
                    args.extend([n.to_string(), m.to_string()]);
                    return Some(Witness { law: Law::Additive, args, lhs: self.name(lhs), rhs: self.name(rhs) });
                }
            }
        }
        None
    }

    fn bilinear(&self, a: usize, ai: Option<usize>, b: usize, bi: Option<usize>, lo: i64) -> Option<Witness> {
        let t = self.t;
        let (ta, tb) = (self.powers(a, ai), self.powers(b, bi));
        let pa = |k: i64| ta[(k + self.bound) as usize];
        let pb = |k: i64| tb[(k + self.bound) as usize];
        let range = lo..=self.bound;
        for n in range.clone() {
            for m in range.clone() {
                for p in range.clone() {
                    for q in range.clone() {
                        if (n + m).abs() > self.bound || (p + q).abs() > self.bound || n + m < lo || p + q < lo {
                            continue;
                        }
                        let lhs = t.op(pa(n + m), pb(p + q));
                        let left = t.op(pa(m), t.op(pa(n), pb(p + q)));
                        let right = t.op(t.op(pa(n + m), pb(p)), pb(q));
                        let bad = if lhs != left {
                            Some((Law::BilinearLeft, left))
                        } else if lhs != right {
                            Some((Law::BilinearRight, right))
                        } else {
                            None
                        };
                        if let Some((law, rhs)) = bad {
                            let mut args = vec![self.name(a)];
                            args.extend(ai.map(|i| self.name(i)));
                            args.push(self.name(b));
                            args.extend(bi.map(|i| self.name(i)));
                            args.extend([n, m, p, q].map(|e| e.to_string()));
                            return Some(Witness { law, args, lhs: self.name(lhs), rhs: self.name(rhs) });
                        }
                    }
                }
            }
        }
        None
    }
}

/// Checks (A), (A'), (A'') with exponents of absolute value at most
/// `bound`, and (B), (B'), (B'') with every exponent and every exponent sum
/// within `bound`. Negative exponents use each two-sided inverse in turn.
pub fn power_laws(t: &MagmaTable, bound: usize, cap: u64) -> Result<PowerLaws> {
    let m = t.size() as u128;
    let span = 2 * bound as u128 + 1;
    let work = m * m * span.pow(4);
    if work > cap as u128 {
        return Err(Error::CapExceeded { requested: work, cap });
    }
    let n = t.size();
    let unit = t.unit();
    let ctx = Ctx { t, bound: bound as i64, unit };
    let inverses: Vec<Vec<usize>> = match unit {
        Some(e) => (0..n).map(|a| t.inverses(a, e)).collect(),
        None => vec![Vec::new(); n],
    };
    let verdict = |w: Option<Witness>| Verdict { holds: w.is_none(), witness: w };

    let a = verdict((0..n).find_map(|x| ctx.additive(x, None, 1)));
    let b = verdict((0..n).find_map(|x| (0..n).find_map(|y| ctx.bilinear(x, None, y, None, 1))));
    let (a_nat, a_int, b_nat, b_int) = if unit.is_some() {
        let a_nat = verdict((0..n).find_map(|x| ctx.additive(x, None, 0)));
        let a_int = verdict((0..n).find_map(|x| inverses[x].iter().find_map(|&i| ctx.additive(x, Some(i), -ctx.bound))));
        let b_nat = verdict((0..n).find_map(|x| (0..n).find_map(|y| ctx.bilinear(x, None, y, None, 0))));
        let b_int = verdict((0..n).find_map(|x| {
            (0..n).find_map(|y| {
                inverses[x]
                    .iter()
                    .find_map(|&i| inverses[y].iter().find_map(|&j| ctx.bilinear(x, Some(i), y, Some(j), -ctx.bound)))
            })
        }));
        (Some(a_nat), Some(a_int), Some(b_nat), Some(b_int))
    } else {
        (None, None, None, None)
    };
    Ok(PowerLaws { a, a_nat, a_int, b, b_nat, b_int })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 1 << 26;

    fn letters(rows: &[&str]) -> MagmaTable {
        MagmaTable::from_letters(rows).unwrap()
    }

    #[test]
    fn left_right_divergence() {
        let t = letters(&["bca", "aaa", "aaa"]);
        let p = quasigroup_power_pitfalls(&t, CAP).unwrap();
        let d = &p.divergences[0];
        assert_eq!((d.element.as_str(), d.exponent, d.left.as_str(), d.right.as_str()), ("a", 3, "c", "a"));
        assert_eq!(p.divergences.len(), 2);
        assert_eq!(p.divergences[1].element, "b");
    }

    #[test]
    fn alternative_additive_failure() {
        let t = letters(&["bcdee", "cdeee", "dedee", "eeeee", "eeeee"]);
        let p = quasigroup_power_pitfalls(&t, CAP).unwrap();
        let f = &p.additive[0];
        assert_eq!((f.element.as_str(), f.n, f.m, f.power.as_str(), f.product.as_str()), ("a", 3, 3, "e", "d"));
        assert_eq!((1..=5).map(|n| left_power(&t, 0, n)).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        let laws = power_laws(&t, 6, CAP).unwrap();
        assert!(!laws.a.holds);
        assert!(laws.a_nat.is_none());
    }

    #[test]
    fn associative_tables_have_no_pitfalls() {
        let z4 = letters(&["abcd", "bcda", "cdab", "dabc"]);
        let p = quasigroup_power_pitfalls(&z4, CAP).unwrap();
        assert!(p.powers_agree() && p.additive_holds());
        assert!(power_laws(&z4, 3, CAP).unwrap().all_hold());
    }

    #[test]
    fn inverse_power_pitfall() {
        let t = letters(&["abcd", "bcba", "cbca", "daaa"]);
        let laws = power_laws(&t, 2, CAP).unwrap();
        assert!(laws.a.holds && laws.a_nat.as_ref().unwrap().holds);
        let a_int = laws.a_int.unwrap();
        assert!(!a_int.holds);
        let w = a_int.witness.unwrap();
        assert_eq!(w.evaluate(&t).unwrap(), (t.position(&w.lhs).unwrap(), t.position(&w.rhs).unwrap()));
        assert_eq!(t.inverses(1, 0), vec![3]);
        assert_eq!(t.op(3, t.op(1, 1)), 0);
    }

    #[test]
    fn cap_is_enforced() {
        let t = letters(&["ab", "ba"]);
        assert!(quasigroup_power_pitfalls(&t, 15).is_err());
        assert!(power_laws(&t, 1, 10).is_err());
    }
}
