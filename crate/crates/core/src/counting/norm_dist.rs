use crate::error::Result;
use crate::ring::{Elem, Ring};

use super::closed_form::Counts;

/// `dist[v]` = number of elements of `A_{ζ_1..ζ_t}` with norm `v`.
///
/// Level 0 counts squares; each doubling maps the pair `(x, y)` to
/// `N(x) + ζ N(y)`, so the new distribution is a twisted self-convolution.
/// Cost is `O(|A|^2)` per level.
pub fn norm_distribution(ring: &Ring, constants: &[Elem]) -> Vec<u128> {
    let m = ring.size() as usize;
    let mut dist = vec![0u128; m];
    for c in ring.elements() {
        dist[ring.mul(c, c).0 as usize] += 1;
    }
    for &zeta in constants {
        let mut next = vec![0u128; m];
        let scaled: Vec<usize> = ring.elements().map(|b| ring.mul(zeta, b).0 as usize).collect();
        for a in 0..m {
            if dist[a] == 0 {
                continue;
            }
            for b in 0..m {
                if dist[b] == 0 {
                    continue;
                }
                let v = ring.add(Elem(a as u32), Elem(scaled[b] as u32));
                next[v.0 as usize] += dist[a] * dist[b];
            }
        }
        dist = next;
    }
    dist
}

/// Unit and unimodular counts read off the norm distribution.
pub fn oracle_counts(ring: &Ring, constants: &[Elem]) -> Result<Counts> {
    let dist = norm_distribution(ring, constants);
    let units = ring.elements().filter(|&v| ring.is_unit(v)).map(|v| dist[v.0 as usize]).sum();
    Ok(Counts { units, unimodulars: dist[ring.one().0 as usize] })
}
