//! Cayley–Dickson towers over a base ring.
//!
//! An algebra of level `t` has dimension `2^t`. Coefficient vectors are laid
//! out so that the pair `(x, y)` of the last doubling is the low half
//! followed by the high half; basis vector `e_i` therefore sits at index `i`
//! and bit `j` of `i` records whether the `(j+1)`-th doubling took the
//! second component.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingSpec};

/// Highest supported doubling level.
pub const MAX_LEVEL: usize = 4;

#[derive(Clone, Copy, Debug)]
enum Kernel {
    /// `Z/nZ` or `GF(p)` with `n < 2^24`: accumulate in `u64`, reduce once.
    SmallModular(u64),
    Generic,
}

/// A base ring together with doubling constants `(ζ_1, .., ζ_t)`.
#[derive(Debug)]
pub struct CdAlgebra {
    ring: Arc<Ring>,
    constants: Vec<Elem>,
    dim: usize,
    constants_are_units: bool,
    /// Norm weight of each coordinate: the product of the constants on its set bits.
    weights: Vec<Elem>,
    /// `e_i e_j = c * e_{i ^ j}`; entry `i * dim + j` holds `c`.
    table: Vec<Elem>,
    kernel: Kernel,
}

impl PartialEq for CdAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.constants == other.constants
    }
}

impl Eq for CdAlgebra {}

impl CdAlgebra {
    pub fn new(ring: Arc<Ring>, constants: Vec<Elem>) -> Result<Arc<CdAlgebra>> {
        if constants.len() > MAX_LEVEL {
            return Err(Error::UnsupportedLevel(constants.len()));
        }
        for c in &constants {
            ring.element(c.0 as u64)?;
        }
        let dim = 1usize << constants.len();
        let constants_are_units = constants.iter().all(|&c| ring.is_unit(c));
        let weights = (0..dim)
            .map(|i| {
                (0..constants.len())
                    .filter(|j| i >> j & 1 == 1)
                    .fold(ring.one(), |acc, j| ring.mul(acc, constants[j]))
            })
            .collect();
        let kernel = match ring.spec() {
            RingSpec::Zn { n } if *n < 1 << 24 => Kernel::SmallModular(*n),
            RingSpec::Gf { p, k: 1, .. } if *p < 1 << 24 => Kernel::SmallModular(*p),
            _ => Kernel::Generic,
        };
        let mut alg = CdAlgebra {
            ring,
            constants,
            dim,
            constants_are_units,
            weights,
            table: Vec::new(),
            kernel,
        };
        alg.table = alg.build_table();
        Ok(Arc::new(alg))
    }

    /// Builds an algebra from a ring spec and integer constants (see [`Ring::lift`]).
    pub fn from_spec(spec: RingSpec, constants: &[i64]) -> Result<Arc<CdAlgebra>> {
        let ring = Arc::new(Ring::new(spec)?);
        let constants = constants.iter().map(|&c| ring.lift(c)).collect::<Result<Vec<_>>>()?;
        CdAlgebra::new(ring, constants)
    }

    fn build_table(&self) -> Vec<Elem> {
        let mut table = vec![self.ring.zero(); self.dim * self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mul_recursive(&self.basis_coeffs(i), &self.basis_coeffs(j));
                for (k, &c) in prod.iter().enumerate() {
                    if k != i ^ j {
                        assert_eq!(c, self.ring.zero(), "basis products are monomial");
                    }
                }
                table[i * self.dim + j] = prod[i ^ j];
            }
        }
        table
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn constants(&self) -> &[Elem] {
        &self.constants
    }

    pub fn level(&self) -> usize {
        self.constants.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants_are_units(&self) -> bool {
        self.constants_are_units
    }

    /// Number of elements, `|A|^{2^t}`.
    pub fn size(&self) -> u128 {
        (self.ring.size() as u128).pow(self.dim as u32)
    }

    /// Norm weights `w_i`, so that `N(x) = Σ w_i x_i^2`.
    pub fn weights(&self) -> &[Elem] {
        &self.weights
    }

    /// The structure constant `c` with `e_i e_j = c e_{i^j}`.
    pub fn structure_constant(&self, i: usize, j: usize) -> Elem {
        self.table[i * self.dim + j]
    }

    pub fn zero_coeffs(&self) -> Vec<Elem> {
        vec![self.ring.zero(); self.dim]
    }

    pub fn one_coeffs(&self) -> Vec<Elem> {
        self.basis_coeffs(0)
    }

    pub fn basis_coeffs(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_coeffs();
        v[i] = self.ring.one();
        v
    }

    /// Coefficients of the element with the given index (coordinate 0 least significant).
    pub fn coeffs_of_index(&self, mut index: u64) -> Vec<Elem> {
        let m = self.ring.size();
        (0..self.dim)
            .map(|_| {
                let c = Elem((index % m) as u32);
                index /= m;
                c
            })
            .collect()
    }

    pub fn index_of(&self, coeffs: &[Elem]) -> u64 {
        let m = self.ring.size();
        coeffs.iter().rev().fold(0u64, |acc, c| acc * m + c.0 as u64)
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Elem>) -> Result<CdElement> {
        if coeffs.len() != self.dim {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.dim,
                coeffs.len()
            )));
        }
        for c in &coeffs {
            self.ring.element(c.0 as u64)?;
        }
        Ok(CdElement { alg: Arc::clone(self), coeffs })
    }

    /// Element from integers, each lifted into the base ring (see [`Ring::lift`]).
    pub fn element_from_ints(self: &Arc<Self>, values: &[i64]) -> Result<CdElement> {
        self.element(values.iter().map(|&v| self.ring.lift(v)).collect::<Result<Vec<_>>>()?)
    }

    pub fn one(self: &Arc<Self>) -> CdElement {
        CdElement { alg: Arc::clone(self), coeffs: self.one_coeffs() }
    }

    pub fn zero(self: &Arc<Self>) -> CdElement {
        CdElement { alg: Arc::clone(self), coeffs: self.zero_coeffs() }
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> CdElement {
        CdElement { alg: Arc::clone(self), coeffs: self.basis_coeffs(i) }
    }

    pub fn element_at(self: &Arc<Self>, index: u64) -> CdElement {
        CdElement { alg: Arc::clone(self), coeffs: self.coeffs_of_index(index) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.ring.spec(),
            "constants": self.constants.iter().map(|&c| self.ring.encode(c)).collect::<Vec<_>>(),
        })
    }

    // ---- coefficient-level arithmetic ----

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(&x, &y)| self.ring.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|&x| self.ring.neg(x)).collect()
    }

    pub fn scale(&self, s: Elem, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|&x| self.ring.mul(s, x)).collect()
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let mut out = vec![Elem(0); self.dim];
        self.mul_into(a, b, &mut out);
        out
    }

    /// Product through the structure-constant table.
    pub fn mul_into(&self, a: &[Elem], b: &[Elem], out: &mut [Elem]) {
        let d = self.dim;
        match self.kernel {
            Kernel::SmallModular(n) => {
                let mut acc = [0u64; 1 << MAX_LEVEL];
                for i in 0..d {
                    let ai = a[i].0 as u64;
                    if ai == 0 {
                        continue;
                    }
                    let row = &self.table[i * d..(i + 1) * d];
                    for j in 0..d {
                        let bj = b[j].0 as u64;
                        if bj == 0 {
                            continue;
                        }
                        acc[i ^ j] += (ai * bj % n) * row[j].0 as u64;
                    }
                }
                for k in 0..d {
                    out[k] = Elem((acc[k] % n) as u32);
                }
            }
            Kernel::Generic => {
                let r = &*self.ring;
                for o in out.iter_mut() {
                    *o = r.zero();
                }
                for i in 0..d {
                    if a[i].0 == 0 {
                        continue;
                    }
                    for j in 0..d {
                        if b[j].0 == 0 {
                            continue;
                        }
                        let term = r.mul(r.mul(a[i], b[j]), self.table[i * d + j]);
                        out[i ^ j] = r.add(out[i ^ j], term);
                    }
                }
            }
        }
    }

    /// Product by the literal doubling formula
    /// `(x,y)(x',y') = (x x' - ζ σ(y') y, y σ(x') + y' x)`.
    pub fn mul_recursive(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        self.mul_level(self.level(), a, b)
    }

    fn mul_level(&self, level: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let r = &*self.ring;
        if level == 0 {
            return vec![r.mul(a[0], b[0])];
        }
        let h = a.len() / 2;
        let (x, y) = a.split_at(h);
        let (xp, yp) = b.split_at(h);
        let zeta = self.constants[level - 1];
        let xx = self.mul_level(level - 1, x, xp);
        let yy = self.mul_level(level - 1, &conj_slice(r, yp), y);
        let first: Vec<Elem> = xx.iter().zip(&yy).map(|(&u, &v)| r.sub(u, r.mul(zeta, v))).collect();
        let left = self.mul_level(level - 1, y, &conj_slice(r, xp));
        let right = self.mul_level(level - 1, yp, x);
        let second: Vec<Elem> = left.iter().zip(&right).map(|(&u, &v)| r.add(u, v)).collect();
        let mut out = first;
        out.extend(second);
        out
    }

    /// `σ`: keeps coordinate 0 and negates the others.
    pub fn conj(&self, a: &[Elem]) -> Vec<Elem> {
        conj_slice(&self.ring, a)
    }

    /// `N(x) = x σ(x)`, a base-ring value.
    pub fn norm(&self, a: &[Elem]) -> Elem {
        let r = &*self.ring;
        a.iter()
            .zip(&self.weights)
            .fold(r.zero(), |acc, (&c, &w)| r.add(acc, r.mul(w, r.mul(c, c))))
    }

    /// `Tr(x) = x + σ(x) = 2 x_0`.
    pub fn trace(&self, a: &[Elem]) -> Elem {
        self.ring.add(a[0], a[0])
    }

    pub fn is_unit(&self, a: &[Elem]) -> Result<bool> {
        if self.level() == MAX_LEVEL {
            return Err(Error::UnsupportedLevel(MAX_LEVEL));
        }
        Ok(self.ring.is_unit(self.norm(a)))
    }

    /// `N(x)^{-1} σ(x)`; refused at level 4 where the norm criterion is void.
    pub fn inverse(&self, a: &[Elem]) -> Result<Vec<Elem>> {
        if self.level() == MAX_LEVEL {
            return Err(Error::UnsupportedLevel(MAX_LEVEL));
        }
        let n = self.norm(a);
        let ninv = self.ring.inv(n).map_err(|_| Error::NotInvertible(format!("{a:?}")))?;
        let inv = self.scale(ninv, &self.conj(a));
        debug_assert_eq!(self.mul(a, &inv), self.one_coeffs());
        Ok(inv)
    }

    /// Powers; square-and-multiply below level 4, left-iterated products at level 4.
    pub fn pow(&self, a: &[Elem], n: i64) -> Result<Vec<Elem>> {
        if self.level() == MAX_LEVEL {
            if n < 0 {
                return Err(Error::UnsupportedLevel(MAX_LEVEL));
            }
            let mut acc = self.one_coeffs();
            for _ in 0..n {
                acc = self.mul(a, &acc);
            }
            return Ok(acc);
        }
        let base = if n < 0 { self.inverse(a)? } else { a.to_vec() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_coeffs();
        let mut sq = base.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        if cfg!(debug_assertions) && n.unsigned_abs() >= 1 {
            let prev = self.pow_unchecked(&base, n.unsigned_abs() - 1);
            debug_assert_eq!(self.mul(&base, &prev), self.mul(&prev, &base));
            debug_assert_eq!(self.mul(&base, &prev), acc);
        }
        Ok(acc)
    }

    fn pow_unchecked(&self, a: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut acc = self.one_coeffs();
        let mut sq = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `a(x,y,z) = x(yz) - (xy)z`.
    pub fn alternator(&self, x: &[Elem], y: &[Elem], z: &[Elem]) -> Vec<Elem> {
        let l = self.mul(x, &self.mul(y, z));
        let r = self.mul(&self.mul(x, y), z);
        self.sub(&l, &r)
    }

    /// `k(p,q,r,s) = q a(p,r,s) + a(q,r,s) p - a(pq,r,s)`.
    pub fn kleinfeld(&self, p: &[Elem], q: &[Elem], r: &[Elem], s: &[Elem]) -> Vec<Elem> {
        let t1 = self.mul(q, &self.alternator(p, r, s));
        let t2 = self.mul(&self.alternator(q, r, s), p);
        let t3 = self.alternator(&self.mul(p, q), r, s);
        self.sub(&self.add(&t1, &t2), &t3)
    }

    /// Both sides of
    /// `a(pq,r,s) - a(p,qr,s) + a(p,q,rs) = p a(q,r,s) + a(p,q,r) s`.
    pub fn teichmuller(
        &self,
        p: &[Elem],
        q: &[Elem],
        r: &[Elem],
        s: &[Elem],
    ) -> (Vec<Elem>, Vec<Elem>) {
        let lhs = self.add(
            &self.sub(
                &self.alternator(&self.mul(p, q), r, s),
                &self.alternator(p, &self.mul(q, r), s),
            ),
            &self.alternator(p, q, &self.mul(r, s)),
        );
        let rhs = self.add(
            &self.mul(p, &self.alternator(q, r, s)),
            &self.mul(&self.alternator(p, q, r), s),
        );
        (lhs, rhs)
    }

    /// Both sides of a Moufang-type identity at `(x, y, z)`.
    pub fn identity_sides(
        &self,
        id: LoopIdentity,
        x: &[Elem],
        y: &[Elem],
        z: &[Elem],
    ) -> (Vec<Elem>, Vec<Elem>) {
        let m = |a: &[Elem], b: &[Elem]| self.mul(a, b);
        match id {
            LoopIdentity::M1 => (m(&m(x, y), &m(z, x)), m(&m(x, &m(y, z)), x)),
            LoopIdentity::M2 => (m(&m(x, y), &m(z, x)), m(x, &m(&m(y, z), x))),
            LoopIdentity::M3 => (m(&m(x, &m(z, x)), y), m(x, &m(z, &m(x, y)))),
            LoopIdentity::M4 => (m(&m(&m(x, z), x), y), m(x, &m(z, &m(x, y)))),
            LoopIdentity::M5 => (m(&m(&m(y, x), z), x), m(y, &m(x, &m(z, x)))),
            // The alternator identities as they follow from k(x,x,y,z),
            // k(x,y,x,z) and k(y,x,x,z) vanishing.
            LoopIdentity::R1 => (
                self.alternator(&m(x, x), y, z),
                self.add(&m(x, &self.alternator(x, y, z)), &m(&self.alternator(x, y, z), x)),
            ),
            LoopIdentity::R2 => (self.alternator(&m(x, y), x, z), self.neg(&m(&self.alternator(x, y, z), x))),
            LoopIdentity::R3 => (self.alternator(&m(y, x), x, z), self.neg(&m(x, &self.alternator(x, y, z)))),
        }
    }

    /// The alternator identities with flipped signs:
    /// `a(x²,y,z) = x a(x,y,z) - a(x,y,z) x`, `a(xy,x,z) = a(x,y,z) x` and
    /// `a(yx,x,z) = x a(x,y,z)`. These agree with [`Self::identity_sides`]
    /// only in characteristic 2.
    pub fn flipped_alternator_sides(
        &self,
        id: LoopIdentity,
        x: &[Elem],
        y: &[Elem],
        z: &[Elem],
    ) -> Option<(Vec<Elem>, Vec<Elem>)> {
        let m = |a: &[Elem], b: &[Elem]| self.mul(a, b);
        let a = self.alternator(x, y, z);
        Some(match id {
            LoopIdentity::R1 => (self.alternator(&m(x, x), y, z), self.sub(&m(x, &a), &m(&a, x))),
            LoopIdentity::R2 => (self.alternator(&m(x, y), x, z), m(&a, x)),
            LoopIdentity::R3 => (self.alternator(&m(y, x), x, z), m(x, &a)),
            _ => return None,
        })
    }

    // ---- exact structure predicates ----

    /// Commutativity, decided on basis pairs.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i * self.dim + j] == self.table[j * self.dim + i]))
    }

    /// Associativity, decided on basis triples (the alternator is trilinear).
    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// First basis triple `(i, j, k)` with `a(e_i, e_j, e_k) != 0`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let a = self.alternator(&self.basis_coeffs(i), &self.basis_coeffs(j), &self.basis_coeffs(k));
                    if a.iter().any(|c| c.0 != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Left, right and flexible alternativity.
    ///
    /// Each identity is quadratic in `x` and linear in `y`, so it vanishes
    /// identically iff it vanishes at `x = e_i`, `x = e_i + e_j` and `y = e_k`.
    pub fn is_alternative(&self) -> bool {
        self.alternativity_witness().is_none()
    }

    /// A pair `(x, y)` with `a(x,x,y)`, `a(y,x,x)` or `a(x,y,x)` nonzero.
    pub fn alternativity_witness(&self) -> Option<(Vec<Elem>, Vec<Elem>)> {
        let mut probes = Vec::new();
        for i in 0..self.dim {
            probes.push(self.basis_coeffs(i));
            for j in i + 1..self.dim {
                probes.push(self.add(&self.basis_coeffs(i), &self.basis_coeffs(j)));
            }
        }
        for x in &probes {
            for k in 0..self.dim {
                let y = self.basis_coeffs(k);
                let bad = [self.alternator(x, x, &y), self.alternator(&y, x, x), self.alternator(x, &y, x)]
                    .iter()
                    .any(|a| a.iter().any(|c| c.0 != 0));
                if bad {
                    return Some((x.clone(), y));
                }
            }
        }
        None
    }

    /// Exhaustive alternativity over all pairs; only for small algebras.
    pub fn is_alternative_brute(&self, cap: u64) -> Result<bool> {
        let size = self.size();
        if size * size > cap as u128 {
            return Err(Error::CapExceeded { requested: size * size, cap });
        }
        let size = size as u64;
        for xi in 0..size {
            let x = self.coeffs_of_index(xi);
            for yi in 0..size {
                let y = self.coeffs_of_index(yi);
                if self.alternator(&x, &x, &y).iter().any(|c| c.0 != 0)
                    || self.alternator(&y, &x, &x).iter().any(|c| c.0 != 0)
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Exhaustive associativity over all triples; only for small algebras.
    pub fn is_associative_brute(&self, cap: u64) -> Result<bool> {
        let size = self.size();
        if size.pow(3) > cap as u128 {
            return Err(Error::CapExceeded { requested: size.pow(3), cap });
        }
        let size = size as u64;
        let elems: Vec<Vec<Elem>> = (0..size).map(|i| self.coeffs_of_index(i)).collect();
        for x in &elems {
            for y in &elems {
                let xy = self.mul(x, y);
                for z in &elems {
                    if self.mul(x, &self.mul(y, z)) != self.mul(&xy, z) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn conj_slice(r: &Ring, a: &[Elem]) -> Vec<Elem> {
    a.iter()
        .enumerate()
        .map(|(i, &c)| if i == 0 { c } else { r.neg(c) })
        .collect()
}

/// The Moufang identities and the alternator identities of alternative rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopIdentity {
    M1,
    M2,
    M3,
    M4,
    M5,
    R1,
    R2,
    R3,
}

impl LoopIdentity {
    pub const MOUFANG: [LoopIdentity; 5] =
        [LoopIdentity::M1, LoopIdentity::M2, LoopIdentity::M3, LoopIdentity::M4, LoopIdentity::M5];
    pub const ALTERNATOR: [LoopIdentity; 3] = [LoopIdentity::R1, LoopIdentity::R2, LoopIdentity::R3];
}

impl fmt::Display for LoopIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An element of a Cayley–Dickson algebra.
#[derive(Clone, Debug)]
pub struct CdElement {
    alg: Arc<CdAlgebra>,
    coeffs: Vec<Elem>,
}

impl PartialEq for CdElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

impl Eq for CdElement {}

impl CdElement {
    pub fn algebra(&self) -> &Arc<CdAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn index(&self) -> u64 {
        self.alg.index_of(&self.coeffs)
    }

    fn same_algebra(&self, other: &CdElement) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    fn check(&self, other: &CdElement) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn wrap(&self, coeffs: Vec<Elem>) -> CdElement {
        CdElement { alg: Arc::clone(&self.alg), coeffs }
    }

    pub fn add(&self, other: &CdElement) -> Result<CdElement> {
        self.check(other)?;
        Ok(self.wrap(self.alg.add(&self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &CdElement) -> Result<CdElement> {
        self.check(other)?;
        Ok(self.wrap(self.alg.sub(&self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &CdElement) -> Result<CdElement> {
        self.check(other)?;
        Ok(self.wrap(self.alg.mul(&self.coeffs, &other.coeffs)))
    }

    pub fn mul_recursive(&self, other: &CdElement) -> Result<CdElement> {
        self.check(other)?;
        Ok(self.wrap(self.alg.mul_recursive(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, s: Elem) -> CdElement {
        self.wrap(self.alg.scale(s, &self.coeffs))
    }

    pub fn conjugate(&self) -> CdElement {
        self.wrap(self.alg.conj(&self.coeffs))
    }

    pub fn norm(&self) -> Elem {
        self.alg.norm(&self.coeffs)
    }

    pub fn trace(&self) -> Elem {
        self.alg.trace(&self.coeffs)
    }

    pub fn inverse(&self) -> Result<CdElement> {
        Ok(self.wrap(self.alg.inverse(&self.coeffs)?))
    }

    pub fn pow(&self, n: i64) -> Result<CdElement> {
        Ok(self.wrap(self.alg.pow(&self.coeffs, n)?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.0 == 0)
    }

    pub fn alternator(&self, y: &CdElement, z: &CdElement) -> Result<CdElement> {
        self.check(y)?;
        self.check(z)?;
        Ok(self.wrap(self.alg.alternator(&self.coeffs, &y.coeffs, &z.coeffs)))
    }

    pub fn kleinfeld(p: &CdElement, q: &CdElement, r: &CdElement, s: &CdElement) -> Result<CdElement> {
        p.check(q)?;
        p.check(r)?;
        p.check(s)?;
        Ok(p.wrap(p.alg.kleinfeld(&p.coeffs, &q.coeffs, &r.coeffs, &s.coeffs)))
    }

    pub fn to_json(&self) -> Value {
        let r = self.alg.ring();
        json!({
            "algebra": self.alg.to_json(),
            "coeffs": self.coeffs.iter().map(|&c| r.encode(c)).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CdElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.0.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
