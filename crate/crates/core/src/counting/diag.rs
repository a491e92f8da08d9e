use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Number of solutions of `a_1 x_1^2 + .. + a_r x_r^2 = b` over a finite field.
///
/// For `q` odd and `r` even the count with `b != 0` does not depend on `b`:
/// `q^{r-1} - χ₂((-1)^{r/2} a_1..a_r) q^{r/2-1}`.
pub fn count_diag_quadratic(field: &Ring, a: &[Elem], b: Elem) -> Result<u64> {
    if !field.is_field() {
        return Err(Error::NotAField(field.spec().to_string()));
    }
    if a.is_empty() {
        return Err(Error::InvalidSpec("at least one coefficient is required".into()));
    }
    if let Some(i) = a.iter().position(|c| c.0 == 0) {
        return Err(Error::ZeroCoefficient(i));
    }
    let q = field.size() as i128;
    let r = a.len() as u32;
    let base = q.pow(r - 1);
    if field.has_char_two() {
        return Ok(base as u64);
    }
    let prod = a.iter().fold(field.one(), |acc, &c| field.mul(acc, c));
    let chi_prod = field.chi2(prod)? as i128;
    // χ₂(-1) = (-1)^{(q-1)/2}
    let chi_minus_one = field.chi2(field.neg(field.one()))? as i128;
    let n = if r % 2 == 1 {
        if b.0 == 0 {
            base
        } else {
            let sign = chi_minus_one.pow((r - 1) / 2);
            base + field.chi2(b)? as i128 * chi_prod * sign * q.pow((r - 1) / 2)
        }
    } else {
        let sign = chi_minus_one.pow(r / 2);
        if b.0 == 0 {
            base + chi_prod * sign * (q - 1) * q.pow(r / 2 - 1)
        } else {
            base - chi_prod * sign * q.pow(r / 2 - 1)
        }
    };
    Ok(n as u64)
}

/// The count with an extra factor `χ₂(b)` in the even-`r`, `b != 0` case.
/// Kept only so the difference can be reported.
pub fn count_diag_quadratic_tabulated(field: &Ring, a: &[Elem], b: Elem) -> Result<i128> {
    let n = count_diag_quadratic(field, a, b)? as i128;
    if field.has_char_two() || a.len() % 2 == 1 || b.0 == 0 {
        return Ok(n);
    }
    let q = field.size() as i128;
    let base = q.pow(a.len() as u32 - 1);
    Ok(base + (n - base) * field.chi2(b)? as i128)
}

/// Exhaustive count over all `q^r` tuples; refuses beyond `cap` tuples.
pub fn count_diag_quadratic_brute(field: &Ring, a: &[Elem], b: Elem, cap: u64) -> Result<u64> {
    let q = field.size();
    let total = (q as u128).pow(a.len() as u32);
    if total > cap as u128 {
        return Err(Error::CapExceeded { requested: total, cap });
    }
    let mut count = 0;
    let mut x = vec![0u64; a.len()];
    for _ in 0..total {
        let v = x.iter().zip(a).fold(field.zero(), |acc, (&xi, &ai)| {
            let xi = Elem(xi as u32);
            field.add(acc, field.mul(ai, field.mul(xi, xi)))
        });
        if v == b {
            count += 1;
        }
        for d in x.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}
