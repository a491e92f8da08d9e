//! Exact arithmetic in the base rings `Z/nZ` and `GF(p^k)`.
//!
//! Every ring element is stored as a canonical index [`Elem`]. For `Z/nZ`
//! the index is the representative in `[0, n)`. For `GF(p^k)` it is the
//! polynomial-basis coefficient vector `(c_0, .., c_{k-1})` read as the
//! base-`p` integer `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`, so the prime
//! subfield occupies the indexes `0..p`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Largest field for which discrete-log tables are built.
pub const FIELD_TABLE_CAP: u64 = 1 << 22;

/// Fields at most this large also get a full addition table.
const ADD_TABLE_CAP: u64 = 1024;

/// Canonical index of a base-ring element.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a base ring.
///
/// JSON form: `{"kind":"zn","n":9}` or
/// `{"kind":"gf","p":3,"k":2,"modulus":[1,0,1]}` (coefficients low to high,
/// leading one included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Zn { n: u64 },
    Gf { p: u64, k: u32, modulus: Vec<u64> },
}

impl RingSpec {
    pub fn zn(n: u64) -> Self {
        RingSpec::Zn { n }
    }

    /// `GF(p^k)` with the lexicographically smallest irreducible modulus.
    pub fn gf(p: u64, k: u32, cap: u64) -> Result<Self> {
        let modulus = gf_find_modulus(p, k, cap)?;
        Ok(RingSpec::Gf { p, k, modulus })
    }

    /// `GF(q)` for a prime power `q`.
    pub fn gf_order(q: u64, cap: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidSpec(format!("{q} is not a prime power")))?;
        Self::gf(p, k, cap)
    }

    pub fn size(&self) -> u128 {
        match self {
            RingSpec::Zn { n } => *n as u128,
            RingSpec::Gf { p, k, .. } => (*p as u128).pow(*k),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Zn { n } => {
                if *n == 0 {
                    return Err(Error::InvalidSpec("n must be at least 1".into()));
                }
                if *n > u32::MAX as u64 {
                    return Err(Error::InvalidSpec(format!("n = {n} is too large")));
                }
                Ok(())
            }
            RingSpec::Gf { p, k, modulus } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidSpec(format!("{p} is not prime")));
                }
                if *k == 0 {
                    return Err(Error::InvalidSpec("k must be at least 1".into()));
                }
                if modulus.len() != *k as usize + 1 || modulus[*k as usize] != 1 {
                    return Err(Error::InvalidSpec(
                        "modulus must be monic of degree k".into(),
                    ));
                }
                if modulus.iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidSpec("modulus coefficient out of range".into()));
                }
                let m: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
                if !is_irreducible(*p as u32, &m) {
                    return Err(Error::InvalidSpec("modulus is reducible".into()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn { n } => write!(f, "Z/{n}"),
            RingSpec::Gf { p, k, .. } if *k == 1 => write!(f, "GF({p})"),
            RingSpec::Gf { p, k, .. } => write!(f, "GF({p}^{k})"),
        }
    }
}

/// Prime-power factorization `n = prod p_i^{s_i}`, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, s)| p.pow(s)).product()
    }

    /// The coprime prime-power moduli `p_i^{s_i}`.
    pub fn moduli(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, s)| p.pow(s)).collect()
    }
}

#[derive(Debug)]
struct ExtTables {
    p: u32,
    k: u32,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl ExtTables {
    fn add(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.add {
            return t[(a as usize) * self.neg.len() + b as usize];
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }
}

#[derive(Debug)]
struct FieldTables {
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    square: Vec<bool>,
}

/// A finite commutative ring with unit: `Z/nZ` or `GF(p^k)`.
#[derive(Debug)]
pub struct Ring {
    spec: RingSpec,
    size: u32,
    /// `n` for `Z/nZ` and for `GF(p)`; `p` for proper extensions.
    modulus: u32,
    ext: Option<ExtTables>,
    field: Option<FieldTables>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        spec.validate()?;
        match &spec {
            RingSpec::Zn { n } => {
                let n = *n as u32;
                let mut ring = Ring { spec: spec.clone(), size: n, modulus: n, ext: None, field: None };
                if is_prime(n as u64) && (n as u64) <= FIELD_TABLE_CAP {
                    ring.field = Some(ring.build_field_tables());
                }
                Ok(ring)
            }
            RingSpec::Gf { p, k, modulus } => {
                let q = spec.size();
                if q > FIELD_TABLE_CAP as u128 {
                    return Err(Error::CapExceeded { requested: q, cap: FIELD_TABLE_CAP });
                }
                let p = *p as u32;
                if *k == 1 {
                    let mut ring =
                        Ring { spec: spec.clone(), size: p, modulus: p, ext: None, field: None };
                    ring.field = Some(ring.build_field_tables());
                    return Ok(ring);
                }
                let q = q as u32;
                let neg = (0..q)
                    .map(|a| {
                        let d = digits(a, p, *k);
                        undigits(&d.iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)
                    })
                    .collect();
                let mut ext = ExtTables { p, k: *k, neg, add: None };
                if q as u64 <= ADD_TABLE_CAP {
                    let mut table = vec![0u32; (q * q) as usize];
                    for a in 0..q {
                        for b in 0..q {
                            table[(a * q + b) as usize] = ext.add(a, b);
                        }
                    }
                    ext.add = Some(table);
                }
                let m: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
                let mut ring = Ring { spec: spec.clone(), size: q, modulus: p, ext: Some(ext), field: None };
                ring.field = Some(build_extension_tables(p, *k, &m, q));
                Ok(ring)
            }
        }
    }

    /// Builds log tables for a prime field using modular multiplication.
    fn build_field_tables(&self) -> FieldTables {
        let q = self.size;
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % q as u64) as u32;
        let generator = find_generator(q, mul);
        tables_from_generator(q, generator, mul)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> u64 {
        self.size as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus as u64
    }

    pub fn is_field(&self) -> bool {
        self.field.is_some()
    }

    /// True when `1 + 1 = 0`.
    pub fn has_char_two(&self) -> bool {
        self.modulus == 2
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1 % self.size)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// Image of an integer under `Z -> ring`.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.modulus as i64) as u32)
    }

    /// Integer input convention: reduced mod `n` for `Z/nZ`, a canonical index for `GF(p^k)`.
    pub fn lift(&self, v: i64) -> Result<Elem> {
        match &self.spec {
            RingSpec::Zn { n } => Ok(Elem(v.rem_euclid(*n as i64) as u32)),
            RingSpec::Gf { .. } => {
                if v < 0 {
                    return Err(Error::InvalidElement(format!("{v} is not an index of {}", self.spec)));
                }
                self.element(v as u64)
            }
        }
    }

    pub fn element(&self, index: u64) -> Result<Elem> {
        if index >= self.size as u64 {
            return Err(Error::InvalidElement(format!("{index} is outside {}", self.spec)));
        }
        Ok(Elem(index as u32))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.ext {
            None => {
                let s = a.0 as u64 + b.0 as u64;
                let n = self.modulus as u64;
                Elem(if s >= n { s - n } else { s } as u32)
            }
            Some(ext) => Elem(ext.add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.ext {
            None => Elem(if a.0 == 0 { 0 } else { self.modulus - a.0 }),
            Some(ext) => Elem(ext.neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.ext {
            None => Elem(((a.0 as u64 * b.0 as u64) % self.modulus as u64) as u32),
            Some(_) => {
                if a.0 == 0 || b.0 == 0 {
                    return Elem(0);
                }
                let f = self.field.as_ref().expect("extension fields carry log tables");
                let order = f.exp.len();
                let l = f.log[a.0 as usize] as usize + f.log[b.0 as usize] as usize;
                Elem(f.exp[if l >= order { l - order } else { l }])
            }
        }
    }

    /// `a + a + .. + a` (`m` terms).
    pub fn scale(&self, m: u64, a: Elem) -> Elem {
        self.mul(self.from_int((m % self.modulus as u64) as i64), a)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.field {
            Some(_) => a.0 != 0 || self.size == 1,
            None => gcd(a.0 as u64, self.modulus as u64) == 1,
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if let Some(f) = &self.field {
            if a.0 == 0 {
                return Err(Error::NotInvertible(format!("0 in {}", self.spec)));
            }
            let order = f.exp.len();
            let l = f.log[a.0 as usize] as usize;
            return Ok(Elem(f.exp[(order - l) % order]));
        }
        let n = self.modulus as i64;
        match mod_inverse(a.0 as i64, n) {
            Some(v) => Ok(Elem(v as u32)),
            None => Err(Error::NotInvertible(format!("{} in {}", a.0, self.spec))),
        }
    }

    /// Square-and-multiply; negative exponents go through the inverse.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv(a)? } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    pub fn unit_count(&self) -> u64 {
        match &self.field {
            Some(_) => self.size as u64 - 1,
            None => euler_phi(self.modulus as u64),
        }
    }

    /// Polynomial-basis coefficients, low to high (one entry for `Z/nZ`).
    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        match &self.ext {
            None => vec![a.0 as u64],
            Some(ext) => digits(a.0, ext.p, ext.k).into_iter().map(u64::from).collect(),
        }
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<Elem> {
        match &self.ext {
            None => match c {
                [v] if *v < self.modulus as u64 => Ok(Elem(*v as u32)),
                _ => Err(Error::InvalidElement(format!("{c:?} is not an element of {}", self.spec))),
            },
            Some(ext) => {
                if c.len() != ext.k as usize || c.iter().any(|&v| v >= ext.p as u64) {
                    return Err(Error::InvalidElement(format!(
                        "{c:?} is not an element of {}",
                        self.spec
                    )));
                }
                Ok(Elem(undigits(&c.iter().map(|&v| v as u32).collect::<Vec<_>>(), ext.p)))
            }
        }
    }

    /// JSON encoding: an integer for `Z/nZ`, a coefficient list for `GF(p^k)`.
    pub fn encode(&self, a: Elem) -> Value {
        match &self.spec {
            RingSpec::Zn { .. } => Value::from(a.0),
            RingSpec::Gf { .. } => Value::from(self.coeffs(a)),
        }
    }

    pub fn decode(&self, v: &Value) -> Result<Elem> {
        match v {
            Value::Number(n) => {
                let n = n
                    .as_u64()
                    .ok_or_else(|| Error::InvalidElement(format!("{v} is not a nonnegative integer")))?;
                match &self.spec {
                    RingSpec::Zn { .. } => self.element(n),
                    RingSpec::Gf { .. } => Err(Error::InvalidElement(
                        "field elements are coefficient lists".into(),
                    )),
                }
            }
            Value::Array(items) => {
                let c = items
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(|| Error::InvalidElement(format!("bad coefficient {x}"))))
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&c)
            }
            _ => Err(Error::InvalidElement(format!("cannot decode {v}"))),
        }
    }

    fn field(&self) -> Result<&FieldTables> {
        self.field.as_ref().ok_or_else(|| Error::NotAField(self.spec.to_string()))
    }

    /// The smallest element of multiplicative order `q - 1`.
    pub fn multiplicative_generator(&self) -> Result<Elem> {
        Ok(Elem(self.field()?.generator))
    }

    /// `k` with `g^k = a` for the fixed generator `g`; `None` for zero.
    pub fn discrete_log(&self, a: Elem) -> Result<Option<u64>> {
        let f = self.field()?;
        Ok(if a.0 == 0 { None } else { Some(f.log[a.0 as usize] as u64) })
    }

    /// `g^k` for the fixed generator `g`.
    pub fn generator_power(&self, k: u64) -> Result<Elem> {
        let f = self.field()?;
        Ok(Elem(f.exp[(k % f.exp.len() as u64) as usize]))
    }

    pub fn is_square(&self, a: Elem) -> Result<bool> {
        Ok(self.field()?.square[a.0 as usize])
    }

    /// Quadratic character: `+1` on nonzero squares, `0` at zero, `-1` otherwise.
    pub fn chi2(&self, a: Elem) -> Result<i8> {
        let f = self.field()?;
        if self.has_char_two() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(if a.0 == 0 {
            0
        } else if f.square[a.0 as usize] {
            1
        } else {
            -1
        })
    }

    /// Number of solutions of `x^n = a` in the field.
    pub fn count_xn_eq_a(&self, n: u64, a: Elem) -> Result<u64> {
        self.field()?;
        if n == 0 {
            return Err(Error::InvalidSpec("exponent must be at least 1".into()));
        }
        if a.0 == 0 {
            return Ok(1);
        }
        let order = self.size as u64 - 1;
        let d = gcd(n, order);
        let test = self.pow(a, (order / d) as i64)?;
        Ok(if test == self.one() { d } else { 0 })
    }

    /// Absolute trace `a + a^p + .. + a^{p^{k-1}}`, returned as a value in `[0, p)`.
    pub fn galois_trace(&self, a: Elem) -> Result<u32> {
        self.field()?;
        let (p, k) = match &self.spec {
            RingSpec::Gf { p, k, .. } => (*p, *k),
            RingSpec::Zn { n } => (*n, 1),
        };
        let mut acc = self.zero();
        let mut frob = a;
        for _ in 0..k {
            acc = self.add(acc, frob);
            frob = self.pow(frob, p as i64)?;
        }
        debug_assert!((acc.0 as u64) < p, "trace must land in the prime subfield");
        Ok(acc.0)
    }
}

fn find_generator(q: u32, mul: impl Fn(u32, u32) -> u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let order = (q - 1) as u64;
    let primes: Vec<u64> = factorize(order).factors.iter().map(|&(p, _)| p).collect();
    let pow = |a: u32, mut e: u64| {
        let mut acc = 1u32;
        let mut sq = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, sq);
            }
            sq = mul(sq, sq);
            e >>= 1;
        }
        acc
    };
    (1..q)
        .find(|&g| primes.iter().all(|&r| pow(g, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn tables_from_generator(q: u32, generator: u32, mul: impl Fn(u32, u32) -> u32) -> FieldTables {
    let order = (q - 1) as usize;
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..order {
        exp.push(cur);
        log[cur as usize] = i as u32;
        cur = mul(cur, generator);
    }
    let mut square = vec![false; q as usize];
    for x in 1..q {
        square[mul(x, x) as usize] = true;
    }
    FieldTables { generator, exp, log, square }
}

fn build_extension_tables(p: u32, k: u32, modulus: &[u32], q: u32) -> FieldTables {
    let mul = |a: u32, b: u32| {
        let prod = poly_mul_mod(&digits(a, p, k), &digits(b, p, k), modulus, p);
        undigits(&prod, p)
    };
    let generator = find_generator(q, mul);
    tables_from_generator(q, generator, mul)
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two residues modulo a monic polynomial over `GF(p)`.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p64 - c) * m as u64) % p64;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

/// Remainder of `a` modulo the monic `m`, both low-to-high over `GF(p)`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let c = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p64 - c) * mc as u64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Exhaustive irreducibility test for a monic polynomial (low to high).
pub fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let degree = poly.len() - 1;
    if degree == 0 {
        return false;
    }
    for d in 1..=degree / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut candidate = digits(idx as u32, p, d as u32);
            candidate.push(1);
            if poly_rem(poly, &candidate, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`
/// over `GF(p)`, coefficients low to high with the leading one included.
///
/// Candidates are scanned by the base-`p` value of their lower coefficients
/// with `c_{k-1}` most significant.
pub fn gf_find_modulus(p: u64, k: u32, cap: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidSpec("k must be at least 1".into()));
    }
    let q = (p as u128).pow(k);
    if q > cap as u128 || q > FIELD_TABLE_CAP as u128 {
        return Err(Error::CapExceeded { requested: q, cap: cap.min(FIELD_TABLE_CAP) });
    }
    let p32 = p as u32;
    for idx in 0..q as u32 {
        let mut poly = digits(idx, p32, k);
        poly.push(1);
        if is_irreducible(p32, &poly) {
            return Ok(poly.into_iter().map(u64::from).collect());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    match f.factors.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .factors
        .iter()
        .map(|&(p, s)| p.pow(s - 1) * (p - 1))
        .product()
}

/// Trial-division factorization; `1` factors as the empty product.
pub fn factorize(mut n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut s = 0;
            while n % d == 0 {
                n /= d;
                s += 1;
            }
            factors.push((d, s));
        }
        d += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

/// Prime-power decomposition used by the Chinese remainder split.
pub fn crt_split(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("cannot split n = {n}")));
    }
    Ok(factorize(n))
}

/// Reduction of a residue mod `n` to the factor modulus `m` (which must divide `n`).
pub fn crt_project(x: u64, n: u64, m: u64) -> Result<u64> {
    if m == 0 || n % m != 0 {
        return Err(Error::InvalidSpec(format!("{m} does not divide {n}")));
    }
    Ok((x % n) % m)
}

/// Inverse of the CRT projection: the unique residue mod `prod m_i` with the given images.
pub fn crt_combine(residues: &[(u64, u64)]) -> Result<u64> {
    let mut acc = 0u64;
    let mut modulus = 1u64;
    for &(r, m) in residues {
        if gcd(modulus, m) != 1 {
            return Err(Error::InvalidSpec("moduli are not coprime".into()));
        }
        // acc + modulus * t = r (mod m)
        let inv = mod_inverse((modulus % m) as i64, m as i64)
            .ok_or_else(|| Error::InvalidSpec("moduli are not coprime".into()))? as u128;
        let diff = ((r % m) as i128 - (acc % m) as i128).rem_euclid(m as i128) as u128;
        let t = (diff * inv) % m as u128;
        acc += modulus * t as u64;
        modulus *= m;
    }
    Ok(acc)
}
