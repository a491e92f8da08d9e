use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{crt_split, gcd, is_prime, Elem, Ring};

/// Cardinalities of `E*` and of the unimodulars `U_E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Counts {
    pub units: u128,
    pub unimodulars: u128,
}

impl Counts {
    /// `card(R_E) = card(E*) / card(U_E)`.
    pub fn residues(&self) -> u128 {
        self.units / self.unimodulars
    }
}

/// Unit and unimodular counts of `F_{q;ζ_1..ζ_t}` for nonzero constants, `t <= 3`.
pub fn closed_form_galois(field: &Ring, constants: &[Elem]) -> Result<Counts> {
    if !field.is_field() {
        return Err(Error::NotAField(field.spec().to_string()));
    }
    if let Some(i) = constants.iter().position(|c| c.0 == 0) {
        return Err(Error::ZeroConstant(i));
    }
    let t = constants.len();
    if t > 3 {
        return Err(Error::UnsupportedLevel(t));
    }
    let q = field.size() as i128;
    let dim = 1u32 << t;
    let counts = if field.has_char_two() {
        Counts { units: (q.pow(dim) - q.pow(dim - 1)) as u128, unimodulars: q.pow(dim - 1) as u128 }
    } else {
        // χ₂(-1) = (-1)^{(q-1)/2}
        let sign = field.chi2(field.neg(field.one()))? as i128;
        let (units, uni) = match t {
            0 => (q - 1, 2),
            1 => {
                let c = field.chi2(constants[0])? as i128;
                (q * q - (q + c * (q - 1) * sign), q - c * sign)
            }
            2 => (q.pow(4) - (q.pow(3) + (q - 1) * q), q.pow(3) - q),
            _ => (q.pow(8) - (q.pow(7) + (q - 1) * q.pow(3)), q.pow(7) - q.pow(3)),
        };
        Counts { units: units as u128, unimodulars: uni as u128 }
    };
    Ok(counts)
}

fn legendre(a: u64, p: u64) -> i128 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let mut acc = 1u64;
    let mut base = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Unit and unimodular counts of `Z_{p^s;ζ_1..ζ_t}` for unit constants, `t <= 3`.
///
/// Constants are integers reduced mod `p^s`; for `p = 2` the level-1 branch
/// reads the binary digit `α₁` of `α = α₀ + 2α₁ + ..`.
pub fn closed_form_zn(p: u64, s: u32, constants: &[u64]) -> Result<Counts> {
    if !is_prime(p) || s == 0 {
        return Err(Error::InvalidSpec(format!("{p}^{s} is not a prime power")));
    }
    let t = constants.len();
    if t > 3 {
        return Err(Error::UnsupportedLevel(t));
    }
    let n = p.pow(s);
    if let Some(i) = constants.iter().position(|&c| gcd(c % n, n) != 1) {
        return Err(Error::NonUnitConstant(i));
    }
    let (pi, si) = (p as i128, s as i32);
    let pw = |e: i32| pi.pow(e as u32);
    let dim = 1i32 << t;
    let (units, uni) = if p == 2 {
        let units = pw(dim * si - 1);
        let uni = match t {
            0 => match s {
                1 => 1,
                2 => 2,
                _ => 4,
            },
            1 => {
                if s == 1 {
                    2
                } else {
                    let alpha1 = ((constants[0] % n) >> 1 & 1) as i32;
                    pw(si + 1 - alpha1)
                }
            }
            2 => pw(3 * si),
            _ => pw(7 * si),
        };
        (units, uni)
    } else {
        let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
        match t {
            0 => (pw(si - 1) * (pi - 1), 2),
            1 => {
                let c = legendre(constants[0], p);
                (
                    pw(2 * si) - pw(2 * (si - 1)) * (pi + c * (pi - 1) * sign),
                    pw(si - 1) * (pi - c * sign),
                )
            }
            2 => (pw(4 * si) - pw(4 * (si - 1)) * (pw(3) + (pi - 1) * pi), pw(3 * (si - 1)) * (pw(3) - pi)),
            _ => (
                pw(8 * si) - pw(8 * (si - 1)) * (pw(7) + (pi - 1) * pw(3)),
                pw(7 * (si - 1)) * (pw(7) - pw(3)),
            ),
        }
    };
    Ok(Counts { units: units as u128, unimodulars: uni as u128 })
}

/// Counts for arbitrary `n >= 2` as the product over its prime-power factors.
pub fn closed_form_zn_composite(n: u64, constants: &[i64]) -> Result<Counts> {
    let mut acc = Counts { units: 1, unimodulars: 1 };
    for (p, s) in crt_split(n)?.factors {
        let m = p.pow(s);
        let local: Vec<u64> = constants.iter().map(|&c| c.rem_euclid(m as i64) as u64).collect();
        let c = closed_form_zn(p, s, &local)?;
        acc.units *= c.units;
        acc.unimodulars *= c.unimodulars;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn gf(q: u64) -> Ring {
        Ring::new(RingSpec::gf_order(q, 1 << 24).unwrap()).unwrap()
    }

    #[test]
    fn galois_examples() {
        let c = closed_form_galois(&gf(3), &[Elem(1); 3]).unwrap();
        assert_eq!((c.units, c.unimodulars, c.residues()), (4320, 2160, 2));
        let c = closed_form_galois(&gf(2), &[Elem(1); 2]).unwrap();
        assert_eq!((c.units, c.unimodulars), (8, 8));
        let c = closed_form_galois(&gf(5), &[Elem(2)]).unwrap();
        assert_eq!((c.units, c.unimodulars, c.residues()), (24, 6, 4));
        assert_eq!(closed_form_galois(&gf(5), &[Elem(1), Elem(0)]), Err(Error::ZeroConstant(1)));
    }

    #[test]
    fn zn_examples() {
        let c = closed_form_zn(3, 2, &[1]).unwrap();
        assert_eq!((c.units, c.unimodulars), (72, 12));
        assert_eq!(closed_form_zn(2, 3, &[1]).unwrap().unimodulars, 16);
        assert_eq!(closed_form_zn(2, 3, &[3]).unwrap().unimodulars, 8);
        assert_eq!(closed_form_zn(2, 3, &[]).unwrap().unimodulars, 4);
        assert_eq!(closed_form_zn(3, 2, &[3]), Err(Error::NonUnitConstant(0)));
    }

    #[test]
    fn composite_examples() {
        let c = closed_form_zn_composite(15, &[1]).unwrap();
        assert_eq!((c.units, c.unimodulars), (128, 16));
    }

    #[test]
    fn level_one_field_iff_minus_alpha_is_non_square() {
        for q in [3u64, 5, 7, 9, 11, 13] {
            let f = gf(q);
            for a in f.elements().skip(1) {
                let c = closed_form_galois(&f, &[a]).unwrap();
                let split = f.chi2(f.neg(a)).unwrap() == 1;
                assert_eq!(c.units == (q * q - 1) as u128, !split);
            }
        }
    }
}
