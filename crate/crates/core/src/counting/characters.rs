//! Multiplicative characters of `GF(q)`, Gauss sums and Jacobi sums.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::ring::{gcd, Elem, Ring};

use super::diag::count_diag_quadratic;

/// Tolerance for identities that hold exactly in `C`.
pub const EXACT_TOL: f64 = 1e-9;

/// Relative tolerance for products of sums.
pub const RELATIVE_TOL: f64 = 1e-6;

/// `χ_j(γ^k) = exp(2πi jk/(q-1))` for the fixed generator `γ`, extended to 0
/// by `ε(0) = 1` and `χ(0) = 0` otherwise.
#[derive(Clone, Debug)]
pub struct Character {
    field: Arc<Ring>,
    exponent: u64,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.exponent == other.exponent
    }
}

impl Character {
    pub fn new(field: &Arc<Ring>, exponent: i64) -> Result<Character> {
        if !field.is_field() {
            return Err(Error::NotAField(field.spec().to_string()));
        }
        let m = field.size() as i64 - 1;
        Ok(Character { field: Arc::clone(field), exponent: exponent.rem_euclid(m) as u64 })
    }

    pub fn trivial(field: &Arc<Ring>) -> Result<Character> {
        Character::new(field, 0)
    }

    /// `χ₂`, the character of order two.
    pub fn quadratic(field: &Arc<Ring>) -> Result<Character> {
        if field.has_char_two() {
            return Err(Error::EvenCharacteristic);
        }
        Character::new(field, (field.size() as i64 - 1) / 2)
    }

    /// All `q - 1` characters, `χ_0 = ε` first.
    pub fn all(field: &Arc<Ring>) -> Result<Vec<Character>> {
        (0..field.size() as i64 - 1).map(|j| Character::new(field, j)).collect()
    }

    pub fn field(&self) -> &Arc<Ring> {
        &self.field
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    fn group_order(&self) -> u64 {
        self.field.size() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.exponent == 0
    }

    pub fn order(&self) -> u64 {
        let m = self.group_order();
        m / gcd(self.exponent, m)
    }

    pub fn inverse(&self) -> Character {
        let m = self.group_order();
        Character { field: Arc::clone(&self.field), exponent: (m - self.exponent) % m }
    }

    pub fn mul(&self, other: &Character) -> Character {
        let m = self.group_order();
        Character { field: Arc::clone(&self.field), exponent: (self.exponent + other.exponent) % m }
    }

    pub fn pow(&self, n: i64) -> Character {
        let m = self.group_order() as i128;
        let e = (self.exponent as i128 * n as i128).rem_euclid(m);
        Character { field: Arc::clone(&self.field), exponent: e as u64 }
    }

    /// The extended value `χ̌(a)`.
    pub fn value(&self, a: Elem) -> Complex64 {
        match self.field.discrete_log(a).expect("character fields carry log tables") {
            None => {
                if self.is_trivial() {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Some(k) => {
                let m = self.group_order();
                let phase = ((self.exponent as u128 * k as u128) % m as u128) as f64 / m as f64;
                Complex64::from_polar(1.0, TAU * phase)
            }
        }
    }

    /// `χ(-1)`, always `±1`.
    pub fn at_minus_one(&self) -> Complex64 {
        self.value(self.field.neg(self.field.one()))
    }
}

/// `ψ(a) = exp(2πi Tr(a)/p)`.
pub fn additive_character(field: &Ring, a: Elem) -> Result<Complex64> {
    let p = field.characteristic() as f64;
    let t = field.galois_trace(a)? as f64;
    Ok(Complex64::from_polar(1.0, TAU * t / p))
}

/// `g_α(χ) = Σ_β χ̌(β) ψ(αβ)`.
pub fn gauss_sum(chi: &Character, alpha: Elem) -> Result<Complex64> {
    let f = chi.field();
    let mut acc = Complex64::new(0.0, 0.0);
    for b in f.elements() {
        acc += chi.value(b) * additive_character(f, f.mul(alpha, b))?;
    }
    Ok(acc)
}

/// `J` (tuples summing to 1) or `J₀` (tuples summing to 0) by direct summation.
///
/// The sum runs over `q^{ℓ-1}` tuples. A single character gives `χ̌(1) = 1`
/// for `J` and `χ̌(0)` for `J₀`.
pub fn jacobi_sum(chis: &[Character], zero_variant: bool, cap: u64) -> Result<Complex64> {
    let Some(first) = chis.first() else {
        return Err(Error::InvalidSpec("at least one character is required".into()));
    };
    let f = first.field();
    if chis.iter().any(|c| c.field() != f) {
        return Err(Error::AlgebraMismatch);
    }
    let q = f.size();
    let l = chis.len() as u32;
    let tuples = (q as u128).pow(l - 1);
    if tuples > cap as u128 {
        return Err(Error::CapExceeded { requested: tuples, cap });
    }
    let target = if zero_variant { f.zero() } else { f.one() };
    let tables: Vec<Vec<Complex64>> = chis.iter().map(|c| f.elements().map(|a| c.value(a)).collect()).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut t = vec![0u32; l as usize - 1];
    for _ in 0..tuples {
        let mut sum = f.zero();
        let mut prod = Complex64::new(1.0, 0.0);
        for (i, &ti) in t.iter().enumerate() {
            sum = f.add(sum, Elem(ti));
            prod *= tables[i][ti as usize];
        }
        let last = f.sub(target, sum);
        acc += prod * tables[l as usize - 1][last.0 as usize];
        for d in t.iter_mut() {
            *d += 1;
            if (*d as u64) < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(acc)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn close_rel(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= RELATIVE_TOL * b.norm().max(1.0)
}

fn cjson(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

/// Running conjunction of one numeric relation, remembering the first failure.
struct Tally {
    name: String,
    checked: u64,
    failure: Option<(Complex64, Complex64, String)>,
}

impl Tally {
    fn new(name: &str) -> Tally {
        Tally { name: name.into(), checked: 0, failure: None }
    }

    fn record(&mut self, ok: bool, lhs: Complex64, rhs: Complex64, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some((lhs, rhs, witness()));
        }
    }

    fn finish(self) -> Check {
        match self.failure {
            None => Check::new(self.name, self.checked, self.checked, true),
            Some((l, r, w)) => Check::new(self.name, cjson(l), cjson(r), false).with_witness(Some(w)),
        }
    }
}

fn exps(chis: &[&Character]) -> String {
    let v: Vec<String> = chis.iter().map(|c| c.exponent().to_string()).collect();
    format!("chi exponents ({})", v.join(","))
}

/// Numerical verification of the Gauss and Jacobi sum identities over one field.
///
/// Character tuples of length `ℓ <= 3` are enumerated exhaustively when the
/// total work fits the cap and sampled otherwise.
pub fn verify_gauss_jacobi_relations(field: &Arc<Ring>, cfg: &RunConfig) -> Result<Report> {
    let chars = Character::all(field)?;
    let q = field.size();
    let qf = q as f64;
    let mut report = Report::default();

    let mut ortho = Tally::new("orthogonality");
    for chi in &chars {
        let s: Complex64 = field.elements().map(|a| chi.value(a)).sum();
        let expected = if chi.is_trivial() { qf } else { 0.0 };
        ortho.record(close(s, expected.into(), EXACT_TOL), s, expected.into(), || exps(&[chi]));
    }
    report.push(ortho.finish());

    let generator_order = chars.get(1).map_or(1, |c| c.order());
    report.push(Check::eq("character group is cyclic", generator_order, q - 1));

    let gauss: Vec<Complex64> = chars.iter().map(|c| gauss_sum(c, field.one())).collect::<Result<_>>()?;
    let mut cells = Tally::new("gauss value table");
    let mut modulus = Tally::new("|g(chi)| = sqrt(q)");
    let mut conj = Tally::new("g(chi^-1) = chi(-1) conj(g(chi))");
    let mut product = Tally::new("g(chi) g(chi^-1) = chi(-1) q");
    for (j, chi) in chars.iter().enumerate() {
        for a in field.elements() {
            let g = gauss_sum(chi, a)?;
            let expected = match (chi.is_trivial(), a.0 == 0) {
                (true, true) => Complex64::new(qf, 0.0),
                (true, false) | (false, true) => Complex64::new(0.0, 0.0),
                (false, false) => chi.value(field.inv(a)?) * gauss[j],
            };
            cells.record(close(g, expected, EXACT_TOL), g, expected, || format!("{} alpha {}", exps(&[chi]), a));
        }
        let inv = chi.inverse();
        let g_inv = gauss[inv.exponent() as usize];
        let rhs = chi.at_minus_one() * gauss[j].conj();
        conj.record(close(g_inv, rhs, EXACT_TOL), g_inv, rhs, || exps(&[chi]));
        if !chi.is_trivial() {
            let m = Complex64::new(gauss[j].norm(), 0.0);
            modulus.record(close(m, qf.sqrt().into(), EXACT_TOL), m, qf.sqrt().into(), || exps(&[chi]));
            let lhs = gauss[j] * g_inv;
            let rhs = chi.at_minus_one() * qf;
            product.record(close_rel(lhs, rhs), lhs, rhs, || exps(&[chi]));
        }
    }
    report.push(cells.finish());
    report.push(modulus.finish());
    report.push(conj.finish());
    report.push(product.finish());

    let mut all_trivial = Tally::new("J = J0 = q^(l-1) for trivial characters");
    let mut mixed = Tally::new("J = J0 = 0 when some but not all are trivial");
    let mut inverse_j0 = Tally::new("J0 = chi_l(-1) (q-1) J(chi_1..chi_l-1) when the product is trivial");
    let mut inverse_j = Tally::new("J = -chi_l(-1) J(chi_1..chi_l-1) when the product is trivial");
    let mut inverse_g = Tally::new("prod g = chi_l(-1) q J(chi_1..chi_l-1) when the product is trivial");
    let mut generic_j0 = Tally::new("J0 = 0 when the product is non-trivial");
    let mut generic_g = Tally::new("prod g = g(prod chi) J when the product is non-trivial");
    let mut generic_abs = Tally::new("|J| = q^((l-1)/2) when the product is non-trivial");
    let mut single = Tally::new("J(chi) = 1");

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for l in 1..=3usize {
        let n = chars.len();
        let work = (n as u128).pow(l as u32) * (q as u128).pow(l as u32 - 1);
        let tuples: Vec<Vec<usize>> = if work <= cfg.cap as u128 {
            let mut out = Vec::new();
            let mut t = vec![0usize; l];
            loop {
                out.push(t.clone());
                let mut k = 0;
                while k < l {
                    t[k] += 1;
                    if t[k] < n {
                        break;
                    }
                    t[k] = 0;
                    k += 1;
                }
                if k == l {
                    break;
                }
            }
            out
        } else {
            (0..cfg.samples).map(|_| (0..l).map(|_| rng.gen_range(0..n)).collect()).collect()
        };
        for t in tuples {
            let cs: Vec<Character> = t.iter().map(|&i| chars[i].clone()).collect();
            let refs: Vec<&Character> = cs.iter().collect();
            let j = jacobi_sum(&cs, false, cfg.cap)?;
            let j0 = jacobi_sum(&cs, true, cfg.cap)?;
            let w = || exps(&refs);
            if l == 1 {
                single.record(close(j, 1.0.into(), EXACT_TOL), j, 1.0.into(), w);
                continue;
            }
            let trivial = cs.iter().filter(|c| c.is_trivial()).count();
            let prod = cs.iter().skip(1).fold(cs[0].clone(), |acc, c| acc.mul(c));
            let gprod: Complex64 = t.iter().map(|&i| gauss[i]).product();
            if trivial == l {
                let v = Complex64::new(qf.powi(l as i32 - 1), 0.0);
                all_trivial.record(close_rel(j, v) && close_rel(j0, v), j, v, w);
            } else if trivial > 0 {
                let zero = Complex64::new(0.0, 0.0);
                mixed.record(close(j, zero, RELATIVE_TOL) && close(j0, zero, RELATIVE_TOL), j, j0, w);
            } else if prod.is_trivial() {
                let head = jacobi_sum(&cs[..l - 1], false, cfg.cap)?;
                let s = cs[l - 1].at_minus_one();
                let e0 = s * (qf - 1.0) * head;
                inverse_j0.record(close_rel(j0, e0), j0, e0, w);
                let e = -s * head;
                inverse_j.record(close_rel(j, e), j, e, w);
                let eg = s * qf * head;
                inverse_g.record(close_rel(gprod, eg), gprod, eg, w);
            } else {
                let zero = Complex64::new(0.0, 0.0);
                generic_j0.record(close(j0, zero, RELATIVE_TOL), j0, zero, w);
                let eg = gauss[prod.exponent() as usize] * j;
                generic_g.record(close_rel(gprod, eg), gprod, eg, w);
                let target = Complex64::new(qf.powf((l as f64 - 1.0) / 2.0), 0.0);
                let absj = Complex64::new(j.norm(), 0.0);
                generic_abs.record(close_rel(absj, target), absj, target, w);
            }
        }
    }
    for t in [single, all_trivial, mixed, inverse_j0, inverse_j, inverse_g, generic_j0, generic_g, generic_abs] {
        report.push(t.finish());
    }

    if !field.has_char_two() {
        report.push(diag_by_characters(field, cfg)?);
    }
    report.push(xn_by_characters(field)?);
    Ok(report)
}

/// `N(Σ a_i x_i^2 = b) = Σ_{S} Π_{i∈S} χ₂(a_i) · J_b(χ₂^{[i∈S]})`, with
/// `J_0 = J₀` and `J_b = (Π χ)(b) J` for `b != 0`.
pub fn diag_count_by_characters(field: &Arc<Ring>, a: &[Elem], b: Elem, cap: u64) -> Result<i128> {
    let chi2 = Character::quadratic(field)?;
    let eps = Character::trivial(field)?;
    let r = a.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for mask in 0u32..(1 << r) {
        let cs: Vec<Character> =
            (0..r).map(|i| if mask >> i & 1 == 1 { chi2.clone() } else { eps.clone() }).collect();
        let coeff: Complex64 = (0..r).filter(|i| mask >> i & 1 == 1).map(|i| chi2.value(a[i])).product();
        let term = if b.0 == 0 {
            jacobi_sum(&cs, true, cap)?
        } else {
            let prod = cs.iter().skip(1).fold(cs[0].clone(), |acc, c| acc.mul(c));
            prod.value(b) * jacobi_sum(&cs, false, cap)?
        };
        acc += coeff * term;
    }
    Ok(acc.re.round() as i128)
}

fn diag_by_characters(field: &Arc<Ring>, cfg: &RunConfig) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd1a9);
    let q = field.size() as u32;
    let trials = cfg.samples.min(200);
    for _ in 0..trials {
        let r = rng.gen_range(1..=4usize);
        if (q as u128).pow(r as u32 - 1) > cfg.cap as u128 {
            continue;
        }
        let a: Vec<Elem> = (0..r).map(|_| Elem(rng.gen_range(1..q))).collect();
        let b = Elem(rng.gen_range(0..q));
        let by_chars = diag_count_by_characters(field, &a, b, cfg.cap)?;
        let closed = count_diag_quadratic(field, &a, b)? as i128;
        if by_chars != closed {
            let w = format!("a={:?} b={}", a.iter().map(|c| c.0).collect::<Vec<_>>(), b);
            return Ok(Check::new("diagonal count by characters", by_chars as i64, closed as i64, false)
                .with_witness(Some(w)));
        }
    }
    Ok(Check::new("diagonal count by characters", trials as u64, trials as u64, true))
}

/// `N(x^n = a) = Σ_{χ^n = ε} χ̌(a)`.
pub fn xn_count_by_characters(field: &Arc<Ring>, n: u64, a: Elem) -> Result<i128> {
    let sum: Complex64 = Character::all(field)?
        .iter()
        .filter(|c| c.pow(n as i64).is_trivial())
        .map(|c| c.value(a))
        .sum();
    Ok(sum.re.round() as i128)
}

fn xn_by_characters(field: &Arc<Ring>) -> Result<Check> {
    let q = field.size();
    let mut checked = 0u64;
    for n in 1..=q.min(16) {
        for a in field.elements() {
            let lhs = xn_count_by_characters(field, n, a)?;
            let rhs = field.count_xn_eq_a(n, a)? as i128;
            checked += 1;
            if lhs != rhs {
                return Ok(Check::new("x^n = a count by characters", lhs as i64, rhs as i64, false)
                    .with_witness(Some(format!("n={n} a={a}"))));
            }
        }
    }
    Ok(Check::new("x^n = a count by characters", checked, checked, true))
}
