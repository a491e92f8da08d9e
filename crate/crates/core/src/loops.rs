//! Measurements on the unit loop `E*`: norm census, unimodulars, quadratic
//! residues, element orders, coset indexes and the relations between their
//! cardinalities.

use std::collections::{BTreeSet, HashMap};
use std::ops::Range;
use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{CdAlgebra, MAX_LEVEL};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::ring::{crt_split, Elem, Ring, RingSpec};

/// Unit loops at most this large get exhaustive coset verification.
pub const EXHAUSTIVE_LOOP_LIMIT: u64 = 10_000;

fn check_cap(requested: u128, cap: u64) -> Result<u64> {
    if requested > cap as u128 {
        Err(Error::CapExceeded { requested, cap })
    } else {
        Ok(requested as u64)
    }
}

/// Splits `0..n` into at most `parts` contiguous ranges.
pub fn partition(n: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(n.max(1));
    let step = n.div_ceil(parts);
    (0..parts)
        .map(|i| (i * step).min(n)..((i + 1) * step).min(n))
        .filter(|r| !r.is_empty())
        .collect()
}

/// `w_i c^2` for every coordinate `i` and base value `c`.
fn weighted_squares(alg: &CdAlgebra) -> Vec<Vec<Elem>> {
    let r = alg.ring();
    alg.weights()
        .iter()
        .map(|&w| r.elements().map(|c| r.mul(w, r.mul(c, c))).collect())
        .collect()
}

/// Calls `f(index, norm)` for every element whose index lies in `range`.
///
/// Indexes are visited in increasing order. The range is in element
/// indexes; coordinate 0 varies fastest.
pub fn scan_norms(alg: &CdAlgebra, range: Range<u64>, mut f: impl FnMut(u64, Elem)) {
    let r = alg.ring();
    let m = r.size();
    let sq = weighted_squares(alg);
    let mut idx = range.start;
    while idx < range.end {
        let high = idx / m;
        let mut partial = r.zero();
        let mut h = high;
        for row in sq.iter().skip(1) {
            partial = r.add(partial, row[(h % m) as usize]);
            h /= m;
        }
        let stop = ((high + 1) * m).min(range.end);
        for i in idx..stop {
            f(i, r.add(partial, sq[0][(i % m) as usize]));
        }
        idx = stop;
    }
}

/// Histogram of the Cayley norm over every element of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormCensus {
    pub size: u64,
    pub histogram: Vec<u64>,
}

impl NormCensus {
    pub fn units(&self, ring: &Ring) -> u64 {
        ring.elements().filter(|&v| ring.is_unit(v)).map(|v| self.histogram[v.0 as usize]).sum()
    }

    pub fn unimodulars(&self, ring: &Ring) -> u64 {
        self.histogram[ring.one().0 as usize]
    }

    /// The norm image of the units.
    pub fn residues(&self, ring: &Ring) -> Vec<Elem> {
        ring.elements().filter(|&v| ring.is_unit(v) && self.histogram[v.0 as usize] > 0).collect()
    }
}

/// One exhaustive pass over the algebra, partitioned across `cfg.workers` threads.
pub fn norm_census(alg: &CdAlgebra, cfg: &RunConfig) -> Result<NormCensus> {
    let size = check_cap(alg.size(), cfg.cap)?;
    let m = alg.ring().size();
    let ranges = partition(size / m, cfg.workers);
    let parts: Vec<Vec<u64>> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|hr| {
                s.spawn(move || {
                    let mut hist = vec![0u64; m as usize];
                    scan_norms(alg, hr.start * m..hr.end * m, |_, v| hist[v.0 as usize] += 1);
                    hist
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("census worker panicked")).collect()
    });
    let mut histogram = vec![0u64; m as usize];
    for part in parts {
        for (acc, v) in histogram.iter_mut().zip(part) {
            *acc += v;
        }
    }
    Ok(NormCensus { size, histogram })
}

fn require_normed(alg: &CdAlgebra) -> Result<()> {
    if alg.level() >= MAX_LEVEL {
        Err(Error::UnsupportedLevel(alg.level()))
    } else {
        Ok(())
    }
}

/// `card(E*)`; by the norm criterion below level 4, by inverse search at level 4.
pub fn enumerate_units(alg: &CdAlgebra, cfg: &RunConfig) -> Result<u64> {
    if alg.level() >= MAX_LEVEL {
        return Ok(inverse_search_units(alg, cfg)?.len() as u64);
    }
    Ok(norm_census(alg, cfg)?.units(alg.ring()))
}

/// `card(U_E)`, the kernel of the norm on `E*`.
pub fn enumerate_unimodulars(alg: &CdAlgebra, cfg: &RunConfig) -> Result<u64> {
    require_normed(alg)?;
    Ok(norm_census(alg, cfg)?.unimodulars(alg.ring()))
}

/// The quadratic residues: the image of `E*` under the norm.
pub fn quadratic_residues(alg: &CdAlgebra, cfg: &RunConfig) -> Result<Vec<Elem>> {
    require_normed(alg)?;
    Ok(norm_census(alg, cfg)?.residues(alg.ring()))
}

/// Indexes of the units in increasing order.
pub fn unit_indices(alg: &CdAlgebra, cfg: &RunConfig) -> Result<Vec<u64>> {
    if alg.level() >= MAX_LEVEL {
        return inverse_search_units(alg, cfg);
    }
    let size = check_cap(alg.size(), cfg.cap)?;
    let r = alg.ring();
    let mut out = Vec::new();
    scan_norms(alg, 0..size, |i, v| {
        if r.is_unit(v) {
            out.push(i)
        }
    });
    Ok(out)
}

/// Indexes of the unimodulars in increasing order.
pub fn unimodular_indices(alg: &CdAlgebra, cfg: &RunConfig) -> Result<Vec<u64>> {
    require_normed(alg)?;
    let size = check_cap(alg.size(), cfg.cap)?;
    let one = alg.ring().one();
    let mut out = Vec::new();
    scan_norms(alg, 0..size, |i, v| {
        if v == one {
            out.push(i)
        }
    });
    Ok(out)
}

/// A `y` with `xy = e = yx`, found by solving both linear systems at once.
pub fn two_sided_inverse_linear(alg: &CdAlgebra, x: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let r = alg.ring();
    if !r.is_field() {
        return Err(Error::NotAField(r.spec().to_string()));
    }
    let d = alg.dim();
    let mut rows: Vec<Vec<Elem>> = vec![vec![r.zero(); d + 1]; 2 * d];
    for j in 0..d {
        let e = alg.basis_coeffs(j);
        let left = alg.mul(x, &e);
        let right = alg.mul(&e, x);
        for k in 0..d {
            rows[k][j] = left[k];
            rows[d + k][j] = right[k];
        }
    }
    rows[0][d] = r.one();
    rows[d][d] = r.one();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..d {
        let Some(p) = (top..2 * d).find(|&i| rows[i][col].0 != 0) else { continue };
        rows.swap(top, p);
        let inv = r.inv(rows[top][col])?;
        for v in rows[top].iter_mut() {
            *v = r.mul(*v, inv);
        }
        for i in 0..2 * d {
            if i != top && rows[i][col].0 != 0 {
                let f = rows[i][col];
                for c in 0..=d {
                    let t = r.mul(f, rows[top][c]);
                    rows[i][c] = r.sub(rows[i][c], t);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    if rows[top..].iter().any(|row| row[d].0 != 0) {
        return Ok(None);
    }
    let mut y = alg.zero_coeffs();
    for (row, &col) in pivots.iter().enumerate() {
        y[col] = rows[row][d];
    }
    debug_assert_eq!(alg.mul(x, &y), alg.one_coeffs());
    debug_assert_eq!(alg.mul(&y, x), alg.one_coeffs());
    Ok(Some(y))
}

/// Units as the elements with an explicit two-sided inverse.
///
/// Over a field each candidate costs one linear solve; over other rings the
/// search is by brute force and needs `|E|^2` within the cap.
pub fn inverse_search_units(alg: &CdAlgebra, cfg: &RunConfig) -> Result<Vec<u64>> {
    let size = check_cap(alg.size(), cfg.cap)?;
    let one = alg.one_coeffs();
    if alg.ring().is_field() {
        let mut out = Vec::new();
        for i in 0..size {
            if two_sided_inverse_linear(alg, &alg.coeffs_of_index(i))?.is_some() {
                out.push(i);
            }
        }
        return Ok(out);
    }
    check_cap(alg.size() * alg.size(), cfg.cap)?;
    let all: Vec<Vec<Elem>> = (0..size).map(|i| alg.coeffs_of_index(i)).collect();
    Ok((0..size)
        .filter(|&i| {
            let x = &all[i as usize];
            all.iter().any(|y| alg.mul(x, y) == one && alg.mul(y, x) == one)
        })
        .collect())
}

/// The materialized unit loop `E*`.
#[derive(Clone, Debug)]
pub struct UnitLoop {
    alg: Arc<CdAlgebra>,
    units: Vec<u64>,
}

impl UnitLoop {
    /// Lists every unit and checks its two-sided inverse.
    pub fn materialize(alg: &Arc<CdAlgebra>, cfg: &RunConfig) -> Result<UnitLoop> {
        let units = unit_indices(alg, cfg)?;
        if alg.level() < MAX_LEVEL {
            let one = alg.one_coeffs();
            for &i in &units {
                let x = alg.coeffs_of_index(i);
                let y = alg.inverse(&x)?;
                assert!(alg.mul(&x, &y) == one && alg.mul(&y, &x) == one, "unit {i} lacks an inverse");
            }
        }
        Ok(UnitLoop { alg: Arc::clone(alg), units })
    }

    /// The unimodulars as a loop of their own.
    pub fn unimodulars(alg: &Arc<CdAlgebra>, cfg: &RunConfig) -> Result<UnitLoop> {
        Ok(UnitLoop { alg: Arc::clone(alg), units: unimodular_indices(alg, cfg)? })
    }

    pub fn algebra(&self) -> &Arc<CdAlgebra> {
        &self.alg
    }

    pub fn card(&self) -> u64 {
        self.units.len() as u64
    }

    pub fn indices(&self) -> &[u64] {
        &self.units
    }

    pub fn position(&self, x: &[Elem]) -> Option<usize> {
        self.units.binary_search(&self.alg.index_of(x)).ok()
    }

    pub fn contains(&self, x: &[Elem]) -> bool {
        self.position(x).is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.units.iter().map(|&i| self.alg.coeffs_of_index(i))
    }
}

/// The cyclic subgroup `P_ω = {ω^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSubloop {
    pub base: Vec<Elem>,
    /// `[ω^0 = e, ω^1, ..]`, closing before the first repeat.
    pub cycle: Vec<Vec<Elem>>,
}

impl PowerSubloop {
    pub fn order(&self) -> u64 {
        self.cycle.len() as u64
    }
}

pub fn power_subloop(alg: &CdAlgebra, x: &[Elem]) -> Result<PowerSubloop> {
    require_normed(alg)?;
    if !alg.is_unit(x)? {
        return Err(Error::NotAUnit);
    }
    let one = alg.one_coeffs();
    let mut cycle = vec![one.clone()];
    let mut p = x.to_vec();
    while p != one {
        cycle.push(p.clone());
        p = alg.mul(&p, x);
        assert!(cycle.len() as u128 <= alg.size(), "power sequence failed to close");
    }
    Ok(PowerSubloop { base: x.to_vec(), cycle })
}

/// Least `m >= 1` with `x^m = e`.
pub fn element_order(alg: &CdAlgebra, x: &[Elem]) -> Result<u64> {
    Ok(power_subloop(alg, x)?.order())
}

/// Coset structure of `P_ω` inside a materialized loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetCensus {
    pub order: u64,
    /// Number of classes `P_ω y`.
    pub right_classes: u64,
    /// Number of classes `y P_ω`.
    pub left_classes: u64,
    /// Both families are partitions into blocks of size `order`.
    pub equipotent: bool,
    /// The two partitions coincide.
    pub partitions_agree: bool,
}

fn classes(
    lp: &UnitLoop,
    powers: &[Vec<Elem>],
    right: bool,
) -> (Vec<u32>, u64, bool) {
    let alg = &lp.alg;
    let n = lp.units.len();
    let mut class = vec![u32::MAX; n];
    let mut count = 0u32;
    let mut equipotent = true;
    for start in 0..n {
        if class[start] != u32::MAX {
            continue;
        }
        let y = alg.coeffs_of_index(lp.units[start]);
        let mut members = BTreeSet::new();
        for p in powers {
            let z = if right { alg.mul(p, &y) } else { alg.mul(&y, p) };
            let pos = lp.position(&z).expect("loop is closed under multiplication");
            if class[pos] != u32::MAX && class[pos] != count {
                equipotent = false;
            }
            class[pos] = count;
            members.insert(pos);
        }
        if members.len() != powers.len() {
            equipotent = false;
        }
        count += 1;
    }
    (class, count as u64, equipotent)
}

pub fn coset_census(lp: &UnitLoop, omega: &[Elem]) -> Result<CosetCensus> {
    let sub = power_subloop(&lp.alg, omega)?;
    let (rc, right_classes, req) = classes(lp, &sub.cycle, true);
    let (lc, left_classes, leq) = classes(lp, &sub.cycle, false);
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    let mut agree = true;
    for (&a, &b) in rc.iter().zip(&lc) {
        agree &= *forward.entry(a).or_insert(b) == b && *backward.entry(b).or_insert(a) == a;
    }
    Ok(CosetCensus {
        order: sub.order(),
        right_classes,
        left_classes,
        equipotent: req && leq,
        partitions_agree: agree,
    })
}

/// `[E*:P_x]`, computed as `card(E*)/order(x)`.
///
/// For loops of at most [`EXHAUSTIVE_LOOP_LIMIT`] elements the right cosets
/// are also counted directly and must agree.
pub fn power_index(lp: &UnitLoop, x: &[Elem]) -> Result<u64> {
    let order = element_order(&lp.alg, x)?;
    assert_eq!(lp.card() % order, 0, "order must divide the loop cardinality");
    let index = lp.card() / order;
    if lp.card() <= EXHAUSTIVE_LOOP_LIMIT {
        let census = coset_census(lp, x)?;
        assert!(census.equipotent);
        assert_eq!(census.right_classes, index);
        assert_eq!(census.left_classes, index);
    }
    Ok(index)
}

/// Uniformly random element by coordinates.
pub fn random_element(alg: &CdAlgebra, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let m = alg.ring().size() as u32;
    (0..alg.dim()).map(|_| Elem(rng.gen_range(0..m))).collect()
}

/// Rejection-sampled element satisfying `accept`; `None` after many misses.
pub fn random_element_where(
    alg: &CdAlgebra,
    rng: &mut ChaCha8Rng,
    accept: impl Fn(&[Elem]) -> bool,
) -> Option<Vec<Elem>> {
    (0..10_000).map(|_| random_element(alg, rng)).find(|x| accept(x))
}

fn coeff_string(x: &[Elem]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.0.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Index relation for every `ω` in `omegas`: `card = [L:P_ω] card(P_ω)`.
fn index_relation(
    name: &str,
    lp: &UnitLoop,
    omegas: &[Vec<Elem>],
    exhaustive: bool,
) -> Result<Check> {
    let card = lp.card();
    let mut cache: HashMap<Vec<usize>, u64> = HashMap::new();
    for w in omegas {
        let sub = power_subloop(&lp.alg, w)?;
        let order = sub.order();
        let index = if exhaustive {
            let mut key: Vec<usize> = sub.cycle.iter().map(|p| lp.position(p).expect("closed")).collect();
            key.sort_unstable();
            match cache.get(&key) {
                Some(&i) => i,
                None => {
                    let (_, count, equipotent) = classes(lp, &sub.cycle, true);
                    let i = if equipotent { count } else { 0 };
                    cache.insert(key, i);
                    i
                }
            }
        } else if card % order == 0 {
            card / order
        } else {
            0
        };
        if index * order != card {
            return Ok(Check::new(name, card, index * order, false).with_witness(Some(coeff_string(w))));
        }
    }
    Ok(Check::new(name, card, card, true))
}

/// P1–P5 plus the power laws tying units, unimodulars and residues.
pub fn verify_p1_p5(alg: &Arc<CdAlgebra>, cfg: &RunConfig) -> Result<Report> {
    require_normed(alg)?;
    let r = alg.ring();
    let census = norm_census(alg, cfg)?;
    let card_units = census.units(r);
    let card_uni = census.unimodulars(r);
    let residues = census.residues(r);
    let card_res = residues.len() as u64;
    let card_base_units = r.unit_count();
    let mut report = Report::default();
    let exhaustive = card_units <= EXHAUSTIVE_LOOP_LIMIT;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let one = alg.one_coeffs();

    let (units_loop, uni_loop, omegas, uni_omegas) = if exhaustive {
        let lp = UnitLoop::materialize(alg, cfg)?;
        let ul = UnitLoop::unimodulars(alg, cfg)?;
        let omegas: Vec<Vec<Elem>> = lp.elements().collect();
        let uni: Vec<Vec<Elem>> = ul.elements().collect();
        (lp, ul, omegas, uni)
    } else {
        let unit = |x: &[Elem]| r.is_unit(alg.norm(x));
        let uni = |x: &[Elem]| alg.norm(x) == r.one();
        let omegas: Vec<Vec<Elem>> =
            (0..cfg.samples).filter_map(|_| random_element_where(alg, &mut rng, unit)).collect();
        let uni_omegas: Vec<Vec<Elem>> =
            (0..cfg.samples).filter_map(|_| random_element_where(alg, &mut rng, uni)).collect();
        let stub = |units| UnitLoop { alg: Arc::clone(alg), units };
        (stub(Vec::new()), stub(Vec::new()), omegas, uni_omegas)
    };

    if exhaustive {
        report.push(index_relation("P1", &units_loop, &omegas, true)?);
        report.push(index_relation("P2", &uni_loop, &uni_omegas, true)?);
    } else {
        let sized = |card: u64, name: &str, ws: &[Vec<Elem>]| -> Result<Check> {
            for w in ws {
                let order = element_order(alg, w)?;
                if card % order != 0 {
                    return Ok(Check::new(name, card, (card / order) * order, false)
                        .with_witness(Some(coeff_string(w))));
                }
            }
            Ok(Check::new(name, card, card, true))
        };
        report.push(sized(card_units, "P1", &omegas)?);
        report.push(sized(card_uni, "P2", &uni_omegas)?);
    }

    report.push(Check::eq("P3", card_units, card_uni * card_res));
    report.push(Check::new("P4", card_res, card_base_units, card_res > 0 && card_base_units % card_res == 0));

    let mut p5 = Check::new("P5", card_res, card_res, true);
    let mut res_pow = Check::new("x^card(R) in U", true, true, true);
    let mut base_pow = Check::new("x^card(A*) in U", true, true, true);
    for x in &omegas {
        let sub = power_subloop(alg, x)?;
        let norms: BTreeSet<Elem> = sub.cycle.iter().map(|p| alg.norm(p)).collect();
        let k = norms.len() as u64;
        if p5.pass && card_res % k != 0 {
            p5 = Check::new("P5", card_res, k, false).with_witness(Some(coeff_string(x)));
        }
        if res_pow.pass && alg.norm(&alg.pow(x, card_res as i64)?) != r.one() {
            res_pow = Check::new("x^card(R) in U", false, true, false).with_witness(Some(coeff_string(x)));
        }
        if base_pow.pass && alg.norm(&alg.pow(x, card_base_units as i64)?) != r.one() {
            base_pow = Check::new("x^card(A*) in U", false, true, false).with_witness(Some(coeff_string(x)));
        }
    }
    report.push(p5);
    report.push(res_pow);
    report.push(base_pow);

    let mut uni_pow = Check::new("u^card(U) = e", true, true, true);
    for u in &uni_omegas {
        if alg.pow(u, card_uni as i64)? != one {
            uni_pow = Check::new("u^card(U) = e", false, true, false).with_witness(Some(coeff_string(u)));
            break;
        }
    }
    report.push(uni_pow);

    let closed = residues.iter().all(|&a| {
        residues.iter().all(|&b| residues.contains(&r.mul(a, b)))
            && r.inv(a).map(|i| residues.contains(&i)).unwrap_or(false)
    });
    report.push(Check::new("R is a subgroup of A*", closed, true, closed));
    Ok(report)
}

/// Outcome of checking `z -> (z + 1/z, (z - 1/z)/ω)/2` against `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parametrization {
    pub omega: Elem,
    pub domain: u64,
    pub unimodulars: u64,
    pub image: u64,
    pub lands_in_unimodulars: bool,
    pub bijective: bool,
    pub homomorphic: bool,
}

impl Parametrization {
    pub fn pass(&self) -> bool {
        self.lands_in_unimodulars && self.bijective && self.homomorphic
    }
}

/// The isomorphism `F_q* -> U` of a split level-1 algebra, verified exhaustively.
pub fn unimodular_parametrization(alg: &CdAlgebra, cfg: &RunConfig) -> Result<Parametrization> {
    if alg.level() != 1 {
        return Err(Error::UnsupportedLevel(alg.level()));
    }
    let r = alg.ring();
    if !r.is_field() {
        return Err(Error::NotAField(r.spec().to_string()));
    }
    if r.has_char_two() {
        return Err(Error::EvenCharacteristic);
    }
    let alpha = alg.constants()[0];
    let minus_alpha = r.neg(alpha);
    let omega = r.elements().find(|&w| r.mul(w, w) == minus_alpha).ok_or(Error::NotSplit)?;
    let half = r.inv(r.from_int(2))?;
    let omega_inv = r.inv(omega).map_err(|_| Error::NotSplit)?;
    let phi = |z: Elem| -> Vec<Elem> {
        let zi = r.inv(z).expect("nonzero");
        vec![r.mul(half, r.add(z, zi)), r.mul(half, r.mul(omega_inv, r.sub(z, zi)))]
    };
    let domain: Vec<Elem> = r.elements().skip(1).collect();
    let images: Vec<Vec<Elem>> = domain.iter().map(|&z| phi(z)).collect();
    let lands = images.iter().all(|x| alg.norm(x) == r.one());
    let distinct: BTreeSet<&Vec<Elem>> = images.iter().collect();
    let card_uni = enumerate_unimodulars(alg, cfg)?;
    let mut homomorphic = true;
    for (i, &z) in domain.iter().enumerate() {
        for (j, &w) in domain.iter().enumerate() {
            if phi(r.mul(z, w)) != alg.mul(&images[i], &images[j]) {
                homomorphic = false;
            }
        }
    }
    Ok(Parametrization {
        omega,
        domain: domain.len() as u64,
        unimodulars: card_uni,
        image: distinct.len() as u64,
        lands_in_unimodulars: lands,
        bijective: distinct.len() == domain.len() && distinct.len() as u64 == card_uni,
        homomorphic,
    })
}

/// Unit and unimodular counts on `Z_n` against the product over its prime-power factors,
/// plus the componentwise reduction map as a multiplicative bijection.
pub fn crt_consistency(n: u64, constants: &[i64], cfg: &RunConfig) -> Result<Report> {
    let factors = crt_split(n)?;
    let direct = CdAlgebra::from_spec(RingSpec::zn(n), constants)?;
    require_normed(&direct)?;
    let dc = norm_census(&direct, cfg)?;
    let mut unit_product = 1u64;
    let mut uni_product = 1u64;
    let mut parts = Vec::new();
    for m in factors.moduli() {
        let a = CdAlgebra::from_spec(RingSpec::zn(m), constants)?;
        let c = norm_census(&a, cfg)?;
        unit_product *= c.units(a.ring());
        uni_product *= c.unimodulars(a.ring());
        parts.push((m, a));
    }
    let mut report = Report::default();
    report.push(Check::eq("units", dc.units(direct.ring()), unit_product));
    report.push(Check::eq("unimodulars", dc.unimodulars(direct.ring()), uni_product));

    let project = |x: &[Elem]| -> Vec<Vec<Elem>> {
        parts.iter().map(|(m, _)| x.iter().map(|c| Elem((c.0 as u64 % m) as u32)).collect()).collect()
    };
    let image_mul = |a: &[Vec<Elem>], b: &[Vec<Elem>]| -> Vec<Vec<Elem>> {
        parts.iter().enumerate().map(|(i, (_, alg))| alg.mul(&a[i], &b[i])).collect()
    };
    let size = direct.size();
    let mut morphism = true;
    let mut witness = None;
    let mut bijective = true;
    if size <= 1000 {
        let elems: Vec<Vec<Elem>> = (0..size as u64).map(|i| direct.coeffs_of_index(i)).collect();
        let images: Vec<Vec<Vec<Elem>>> = elems.iter().map(|x| project(x)).collect();
        bijective = images.iter().collect::<BTreeSet<_>>().len() as u128 == size;
        'outer: for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                if project(&direct.mul(x, y)) != image_mul(&images[i], &images[j]) {
                    morphism = false;
                    witness = Some(format!("{} * {}", coeff_string(x), coeff_string(y)));
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            let x = random_element(&direct, &mut rng);
            let y = random_element(&direct, &mut rng);
            if project(&direct.mul(&x, &y)) != image_mul(&project(&x), &project(&y)) {
                morphism = false;
                witness = Some(format!("{} * {}", coeff_string(&x), coeff_string(&y)));
                break;
            }
        }
    }
    report.push(Check::new("componentwise map is multiplicative", morphism, true, morphism).with_witness(witness));
    report.push(Check::new("componentwise map is bijective", bijective, true, bijective));
    report.push(Check::new(
        "factors",
        json!(factors.factors),
        json!(factors.factors),
        factors.value() == n,
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(spec: RingSpec, constants: &[i64]) -> Arc<CdAlgebra> {
        CdAlgebra::from_spec(spec, constants).unwrap()
    }

    fn gf(q: u64) -> RingSpec {
        RingSpec::gf_order(q, 1 << 24).unwrap()
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    /// Oracle: count by computing `x * conj(x)` with the recursive product.
    fn brute_counts(a: &CdAlgebra) -> (u64, u64) {
        let r = a.ring();
        let mut units = 0;
        let mut uni = 0;
        for i in 0..a.size() as u64 {
            let x = a.coeffs_of_index(i);
            let n = a.mul_recursive(&x, &a.conj(&x));
            assert!(n[1..].iter().all(|c| c.0 == 0));
            if r.is_unit(n[0]) {
                units += 1;
            }
            if n[0] == r.one() {
                uni += 1;
            }
        }
        (units, uni)
    }

    #[test]
    fn unit_examples() {
        assert_eq!(enumerate_units(&alg(gf(3), &[1]), &cfg()).unwrap(), 8);
        assert_eq!(enumerate_units(&alg(gf(2), &[1, 1]), &cfg()).unwrap(), 8);
        assert_eq!(enumerate_units(&alg(RingSpec::zn(9), &[1]), &cfg()).unwrap(), 72);
    }

    #[test]
    fn unimodular_examples() {
        assert_eq!(enumerate_unimodulars(&alg(gf(3), &[1]), &cfg()).unwrap(), 4);
        assert_eq!(enumerate_unimodulars(&alg(RingSpec::zn(8), &[]), &cfg()).unwrap(), 4);
        assert_eq!(enumerate_unimodulars(&alg(gf(5), &[2]), &cfg()).unwrap(), 6);
        assert_eq!(
            enumerate_unimodulars(&alg(gf(3), &[1, 1, 1, 1]), &cfg()),
            Err(Error::UnsupportedLevel(4))
        );
    }

    #[test]
    fn census_matches_recursive_norm() {
        for (spec, c) in [
            (gf(3), vec![1, 2]),
            (gf(4), vec![2]),
            (RingSpec::zn(8), vec![3, 5]),
            (RingSpec::zn(6), vec![5]),
            (gf(2), vec![1, 1, 1]),
        ] {
            let a = alg(spec, &c);
            let census = norm_census(&a, &cfg()).unwrap();
            assert_eq!((census.units(a.ring()), census.unimodulars(a.ring())), brute_counts(&a));
        }
    }

    #[test]
    fn census_independent_of_worker_count() {
        let a = alg(gf(5), &[2, 3]);
        let one = norm_census(&a, &cfg().with_workers(1)).unwrap();
        for w in [2, 3, 7, 64] {
            assert_eq!(norm_census(&a, &cfg().with_workers(w)).unwrap(), one);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = alg(gf(7), &[1, 1, 1]);
        assert!(matches!(enumerate_units(&a, &cfg().with_cap(1000)), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn residue_examples() {
        let r = quadratic_residues(&alg(gf(3), &[1]), &cfg()).unwrap();
        assert_eq!(r, vec![Elem(1), Elem(2)]);
        for s in [3u32, 4] {
            let n = 2u64.pow(s);
            let units = n / 2;
            let res = quadratic_residues(&alg(RingSpec::zn(n), &[3]), &cfg()).unwrap();
            assert_eq!(res.len() as u64, units);
            let res = quadratic_residues(&alg(RingSpec::zn(n), &[1]), &cfg()).unwrap();
            assert_eq!(res.len() as u64, units / 2);
        }
    }

    #[test]
    fn orders_and_indexes() {
        let a = alg(gf(3), &[1]);
        let lp = UnitLoop::materialize(&a, &cfg()).unwrap();
        assert_eq!(lp.card(), 8);
        let e = a.one_coeffs();
        assert_eq!(element_order(&a, &e).unwrap(), 1);
        assert_eq!(power_index(&lp, &e).unwrap(), 8);
        let g = vec![Elem(1), Elem(1)];
        assert_eq!(element_order(&a, &g).unwrap(), 8);
        assert_eq!(power_index(&lp, &g).unwrap(), 1);
        let i = vec![Elem(0), Elem(1)];
        assert_eq!(element_order(&a, &i).unwrap(), 4);
        assert_eq!(power_index(&lp, &i).unwrap(), 2);
        assert_eq!(element_order(&a, &a.zero_coeffs()), Err(Error::NotAUnit));
    }

    #[test]
    fn p_relations_examples() {
        let rep = verify_p1_p5(&alg(gf(3), &[1]), &cfg()).unwrap();
        assert_eq!(rep.get("P3").unwrap().lhs, json!(8));
        assert_eq!(rep.get("P3").unwrap().rhs, json!(8));
        assert!(rep.all_pass(), "{rep:?}");
        let rep = verify_p1_p5(&alg(gf(5), &[1]), &cfg()).unwrap();
        let p4 = rep.get("P4").unwrap();
        assert_eq!((p4.lhs.clone(), p4.rhs.clone()), (json!(4), json!(4)));
        assert!(rep.all_pass());
    }

    #[test]
    fn p_relations_sampled_path() {
        let rep = verify_p1_p5(&alg(gf(5), &[1, 2, 3]), &cfg().with_samples(200)).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn parametrization_examples() {
        let p = unimodular_parametrization(&alg(gf(5), &[1]), &cfg()).unwrap();
        assert!(p.pass());
        assert_eq!((p.domain, p.unimodulars), (4, 4));
        let p = unimodular_parametrization(&alg(gf(3), &[2]), &cfg()).unwrap();
        assert_eq!(p.omega, Elem(1));
        assert_eq!(p.domain, 2);
        assert!(p.pass());
        assert_eq!(unimodular_parametrization(&alg(gf(3), &[1]), &cfg()), Err(Error::NotSplit));
    }

    #[test]
    fn crt_examples() {
        let rep = crt_consistency(15, &[1], &cfg()).unwrap();
        assert_eq!(rep.get("units").unwrap().lhs, json!(128));
        assert_eq!(rep.get("unimodulars").unwrap().lhs, json!(16));
        assert!(rep.all_pass(), "{rep:?}");
        assert!(crt_consistency(7, &[3], &cfg()).unwrap().all_pass());
    }

    #[test]
    fn level_four_units_by_inverse_search() {
        let a = alg(gf(2), &[1, 1, 1, 1]);
        let units = inverse_search_units(&a, &cfg()).unwrap();
        assert_eq!(units.len(), 1 << 15);
        for (spec, c) in [(gf(3), vec![1, 1]), (gf(2), vec![1, 1, 1])] {
            let a = alg(spec, &c);
            assert_eq!(inverse_search_units(&a, &cfg()).unwrap(), unit_indices(&a, &cfg()).unwrap());
        }
        let z4 = alg(RingSpec::zn(4), &[1]);
        assert_eq!(inverse_search_units(&z4, &cfg()).unwrap(), unit_indices(&z4, &cfg()).unwrap());
    }

    #[test]
    fn left_and_right_cosets_can_differ() {
        let quat = alg(gf(3), &[1, 1]);
        let lp = UnitLoop::materialize(&quat, &cfg()).unwrap();
        let differ = lp.elements().filter(|x| !coset_census(&lp, x).unwrap().partitions_agree).count();
        assert_eq!((lp.card(), differ), (48, 46));

        let oct = alg(gf(3), &[1, 1, 1]);
        let lp = UnitLoop::materialize(&oct, &cfg()).unwrap();
        let e1 = oct.basis_coeffs(1);
        let census = coset_census(&lp, &e1).unwrap();
        assert_eq!(census.order, 4);
        assert!(census.equipotent && !census.partitions_agree);
        assert_eq!((census.right_classes, census.left_classes), (1080, 1080));
        let minus_one = oct.neg(&oct.one_coeffs());
        assert!(coset_census(&lp, &minus_one).unwrap().partitions_agree);
    }
}
