//! Quotient diameters along subgroup chains, the amenable length `ℓ` and
//! the concentration bound `2 exp(−ε²/(2ℓ²))`.

use num_traits::{Signed, Zero};

use crate::concentration::metric_group::{FiniteMetricGroup, FiniteMetricSpace, SubgroupChain};
use crate::error::{Error, Result};
use crate::rational::{from_f64, sqrt_bounds, to_f64, Q};

/// Slack added to floating-point bounds before exact comparison.
pub const FLOAT_SLACK: f64 = 1e-9;

/// Left cosets `xH` of `H` inside `K`: returns one representative per coset
/// and the coset number of every element of `K` (others get `usize::MAX`).
fn left_cosets(g: &FiniteMetricGroup, h: &[usize], k: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut id = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for &x in k {
        if id[x] != usize::MAX {
            continue;
        }
        for &y in h {
            id[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    (reps, id)
}

fn check_pair(g: &FiniteMetricGroup, h: &[usize], k: &[usize]) -> Result<()> {
    if !g.is_subgroup(h) || !g.is_subgroup(k) {
        return Err(Error::Structure("quotient diameter needs subgroups".into()));
    }
    let mut member = vec![false; g.order()];
    for &x in k {
        member[x] = true;
    }
    if !h.iter().all(|&x| member[x]) {
        return Err(Error::Structure("H must be contained in K".into()));
    }
    Ok(())
}

fn diameter_unchecked(g: &FiniteMetricGroup, h: &[usize], k: &[usize], base: usize) -> Q {
    let (reps, coset) = left_cosets(g, h, k);
    let mut best = Q::zero();
    let mut mins: Vec<Option<&Q>> = vec![None; reps.len()];
    for &x in &reps {
        mins.iter_mut().for_each(|m| *m = None);
        let gx = g.mul(base, x);
        for &y in k {
            let d = g.dist(gx, g.mul(base, y));
            let slot = &mut mins[coset[y]];
            if slot.is_none_or(|m| d < m) {
                *slot = Some(d);
            }
        }
        for m in mins.iter().flatten() {
            if *m > &best {
                best = (*m).clone();
            }
        }
    }
    best
}

/// Diameter of `K/H` under `d^g(xH, yH) = min_{h ∈ H} d(gx, gyh)`.
pub fn coset_quotient_diameter(g: &FiniteMetricGroup, h: &[usize], k: &[usize], base: usize) -> Result<Q> {
    check_pair(g, h, k)?;
    if base >= g.order() {
        return Err(Error::Argument(format!("base index {base} out of range")));
    }
    Ok(diameter_unchecked(g, h, k, base))
}

/// `sup_g diam(K/H, d^g)`. Bases in one left coset `gK` give the same value,
/// and for bi-invariant metrics every base gives the same value.
pub fn sup_quotient_diameter(g: &FiniteMetricGroup, h: &[usize], k: &[usize]) -> Result<Q> {
    check_pair(g, h, k)?;
    if g.is_bi_invariant() {
        return Ok(diameter_unchecked(g, h, k, g.identity()));
    }
    let all: Vec<usize> = (0..g.order()).collect();
    let (bases, _) = left_cosets(g, k, &all);
    Ok(bases.into_iter().map(|b| diameter_unchecked(g, h, k, b)).max().unwrap_or_else(Q::zero))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainLength {
    pub step_diameters: Vec<Q>,
    /// `ℓ² = Σ diamᵢ²`, exact.
    pub radicand: Q,
    /// Verified floats `lo ≤ ℓ ≤ hi`.
    pub bounds: (f64, f64),
}

impl ChainLength {
    pub fn ell(&self) -> f64 {
        self.bounds.1
    }
}

pub fn chain_length(g: &FiniteMetricGroup, chain: &SubgroupChain) -> Result<ChainLength> {
    let groups = chain.groups();
    let step_diameters: Vec<Q> =
        groups.windows(2).map(|w| sup_quotient_diameter(g, &w[0], &w[1])).collect::<Result<_>>()?;
    let radicand: Q = step_diameters.iter().map(|d| d * d).sum();
    let bounds = sqrt_bounds(&radicand);
    Ok(ChainLength { step_diameters, radicand, bounds })
}

/// `2 exp(−ε²/(2ℓ²))`, and 0 when `ℓ = 0`.
pub fn azuma_bound(epsilon: &Q, ell: f64) -> Result<f64> {
    if !epsilon.is_positive() {
        return Err(Error::Argument("epsilon must be positive".into()));
    }
    if !(ell >= 0.0) {
        return Err(Error::Argument("length must be nonnegative".into()));
    }
    if ell == 0.0 {
        return Ok(0.0);
    }
    let e = to_f64(epsilon);
    Ok(2.0 * (-(e * e) / (2.0 * ell * ell)).exp())
}

/// Same bound from the exact radicand `ℓ²`; the exponent is formed exactly.
pub fn azuma_bound_exact(epsilon: &Q, ell_sq: &Q) -> Result<f64> {
    if !epsilon.is_positive() {
        return Err(Error::Argument("epsilon must be positive".into()));
    }
    if ell_sq.is_negative() {
        return Err(Error::Argument("squared length must be nonnegative".into()));
    }
    if ell_sq.is_zero() {
        return Ok(0.0);
    }
    let exponent = -(epsilon * epsilon) / (ell_sq * Q::from_integer(2.into()));
    Ok(2.0 * to_f64(&exponent).exp())
}

/// `value ≤ bound + FLOAT_SLACK`, compared exactly.
pub fn within_float_bound(value: &Q, bound: f64) -> bool {
    value <= &from_f64(bound + FLOAT_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concentration::product::hamming_cube;
    use crate::rational::q;

    #[test]
    fn z2_squared_first_coordinate() {
        let (g, _) = hamming_cube(2).unwrap();
        let h = vec![0, 1];
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(coset_quotient_diameter(&g, &h, &all, 0).unwrap(), q(1, 2));
        assert_eq!(coset_quotient_diameter(&g, &all, &all, 3).unwrap(), q(0, 1));
        assert!(coset_quotient_diameter(&g, &[0, 1, 2], &all, 0).is_err());
    }

    #[test]
    fn hamming_chain_lengths() {
        let (g, chain) = hamming_cube(4).unwrap();
        let cl = chain_length(&g, &chain).unwrap();
        assert_eq!(cl.radicand, q(1, 4));
        assert!(cl.bounds.0 <= 0.5 && 0.5 <= cl.bounds.1);
        let triv = chain_length(&g, &SubgroupChain::trivial(&g)).unwrap();
        assert_eq!(triv.radicand, q(1, 1));
    }

    #[test]
    fn azuma_values() {
        assert_eq!(azuma_bound(&q(1, 2), 0.0).unwrap(), 0.0);
        assert!((azuma_bound(&q(1, 2), 0.5).unwrap() - 1.213061319425267).abs() < 1e-12);
        assert!((azuma_bound(&q(1, 2), 0.1).unwrap() - 7.453306344157342e-6).abs() < 1e-15);
        assert!((azuma_bound_exact(&q(1, 2), &q(1, 4)).unwrap() - 1.213061319425267).abs() < 1e-12);
        assert!(azuma_bound(&q(0, 1), 1.0).is_err());
        assert!(azuma_bound(&q(-1, 2), 1.0).is_err());
    }
}
