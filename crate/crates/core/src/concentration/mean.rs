//! Means (probability vectors) on a finite group, the convolution operator
//! `(Φ_μ f)(x) = Σ_h μ(h) f(xh)`, and concentration profiles.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::concentration::metric_group::FiniteMetricGroup;
use crate::error::{Error, Result};
use crate::rational::{common_scale, one, q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanVector {
    weights: Vec<Q>,
}

impl MeanVector {
    pub fn new(weights: Vec<Q>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Structure("a mean needs at least one point".into()));
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::Structure("mean weights must be nonnegative".into()));
        }
        let total: Q = weights.iter().sum();
        if total != one() {
            return Err(Error::Structure(format!("mean weights sum to {total}, not 1")));
        }
        Ok(MeanVector { weights })
    }

    /// Uniform weights (the invariant mean of a finite group).
    pub fn haar(k: usize) -> Self {
        MeanVector { weights: vec![q(1, k as i64); k] }
    }

    /// Uniform on `subset`.
    pub fn haar_on(k: usize, subset: &[usize]) -> Self {
        let w = q(1, subset.len() as i64);
        let mut weights = vec![Q::zero(); k];
        for &i in subset {
            weights[i] = w.clone();
        }
        MeanVector { weights }
    }

    /// Point mass at `i`.
    pub fn point(k: usize, i: usize) -> Self {
        let mut weights = vec![Q::zero(); k];
        weights[i] = one();
        MeanVector { weights }
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.weights[i].is_zero()).collect()
    }

    /// `μ(f) = Σ μ(x) f(x)`.
    pub fn integrate(&self, f: &GroupFunction) -> Q {
        self.weights.iter().zip(&f.values).filter(|(w, _)| !w.is_zero()).map(|(w, v)| w * v).sum()
    }

    /// `μ(S)` for the set of points where `pred` holds.
    pub fn measure(&self, mut pred: impl FnMut(usize) -> bool) -> Q {
        (0..self.len()).filter(|&i| pred(i)).map(|i| &self.weights[i]).sum()
    }
}

/// Exact real-valued function on the points of a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFunction {
    values: Vec<Q>,
}

impl GroupFunction {
    pub fn new(values: Vec<Q>) -> Self {
        GroupFunction { values }
    }

    pub fn constant(k: usize, c: Q) -> Self {
        GroupFunction { values: vec![c; k] }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> Q {
        self.values.iter().max().cloned().unwrap_or_else(Q::zero)
    }

    pub fn min(&self) -> Q {
        self.values.iter().min().cloned().unwrap_or_else(Q::zero)
    }

    /// `diam f(X) = max f − min f`.
    pub fn range_diameter(&self) -> Q {
        self.max() - self.min()
    }

    /// `‖f − g‖∞`.
    pub fn sup_distance(&self, other: &GroupFunction) -> Q {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).max().unwrap_or_else(Q::zero)
    }

    pub fn sup_norm(&self) -> Q {
        self.values.iter().map(Signed::abs).max().unwrap_or_else(Q::zero)
    }

    pub fn scaled(&self, t: &Q) -> GroupFunction {
        GroupFunction { values: self.values.iter().map(|v| v * t).collect() }
    }
}

fn check_sizes(g: &FiniteMetricGroup, k: usize) -> Result<()> {
    if k != g.order() {
        return Err(Error::Dimension(format!("vector of length {k} on a group of order {}", g.order())));
    }
    Ok(())
}

/// `μν`: the pushforward of `μ ⊗ ν` under multiplication.
pub fn convolve_means(mu: &MeanVector, nu: &MeanVector, g: &FiniteMetricGroup) -> Result<MeanVector> {
    check_sizes(g, mu.len())?;
    check_sizes(g, nu.len())?;
    let mut w = vec![Q::zero(); g.order()];
    for x in mu.support() {
        for y in nu.support() {
            w[g.mul(x, y)] += &mu.weights[x] * &nu.weights[y];
        }
    }
    Ok(MeanVector { weights: w })
}

/// `(Φ_μ f)(x) = Σ_h μ(h) f(xh)`.
pub fn convolve_function(mu: &MeanVector, f: &GroupFunction, g: &FiniteMetricGroup) -> Result<GroupFunction> {
    check_sizes(g, mu.len())?;
    check_sizes(g, f.len())?;
    let support = mu.support();
    let values = (0..g.order())
        .map(|x| support.iter().map(|&h| &mu.weights[h] * &f.values[g.mul(x, h)]).sum())
        .collect();
    Ok(GroupFunction { values })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub mean: Q,
    pub variance: Q,
    /// `μ{x : |f(x) − μ(f)| ≥ ε}`.
    pub tail: Q,
}

pub fn concentration_profile(mu: &MeanVector, f: &GroupFunction, epsilon: &Q) -> Result<Profile> {
    if !epsilon.is_positive() {
        return Err(Error::Argument("epsilon must be positive".into()));
    }
    if mu.len() != f.len() {
        return Err(Error::Dimension("mean and function sizes differ".into()));
    }
    Ok(profile_scaled(mu, f, epsilon).unwrap_or_else(|| profile_rational(mu, f, epsilon)))
}

fn profile_rational(mu: &MeanVector, f: &GroupFunction, epsilon: &Q) -> Profile {
    let mean = mu.integrate(f);
    let mut variance = Q::zero();
    let mut tail = Q::zero();
    for x in mu.support() {
        let dev = &f.values[x] - &mean;
        variance += &mu.weights[x] * &dev * &dev;
        if &dev.abs() >= epsilon {
            tail += &mu.weights[x];
        }
    }
    Profile { mean, variance, tail }
}

/// Same profile in `i128` over common denominators; `None` on overflow.
fn profile_scaled(mu: &MeanVector, f: &GroupFunction, epsilon: &Q) -> Option<Profile> {
    let (a, lw) = common_scale(&mu.weights)?;
    let (b, lv) = common_scale(&f.values)?;
    let (en, ed) = (epsilon.numer().to_i128()?, epsilon.denom().to_i128()?);
    let (lw, lv) = (lw as i128, lv as i128);
    let d = lw.checked_mul(lv)?;
    let mut m: i128 = 0;
    for (&ai, &bi) in a.iter().zip(&b) {
        m = m.checked_add((ai as i128).checked_mul(bi as i128)?)?;
    }
    let threshold = en.checked_mul(d)?;
    let mut var_num: i128 = 0;
    let mut tail_num: i128 = 0;
    for (&ai, &bi) in a.iter().zip(&b) {
        if ai == 0 {
            continue;
        }
        let t = (bi as i128).checked_mul(lw)?.checked_sub(m)?;
        var_num = var_num.checked_add((ai as i128).checked_mul(t.checked_mul(t)?)?)?;
        if t.checked_abs()?.checked_mul(ed)? >= threshold {
            tail_num += ai as i128;
        }
    }
    let big = |x: i128| BigInt::from(x);
    Some(Profile {
        mean: Q::new(big(m), big(d)),
        variance: Q::new(big(var_num), big(lw) * big(d) * big(d)),
        tail: Q::new(big(tail_num), big(lw)),
    })
}

/// `(μ{f ≥ 1}, μ(f))` for the Markov inequality.
pub fn markov_sides(mu: &MeanVector, f: &GroupFunction) -> (Q, Q) {
    let level = mu.measure(|x| f.values[x] >= one());
    (level, mu.integrate(f))
}

/// `μ(f²) − μ(f)²`, the other form of the variance.
pub fn variance_by_moments(mu: &MeanVector, f: &GroupFunction) -> Q {
    let sq = GroupFunction { values: f.values.iter().map(|v| v * v).collect() };
    let m = mu.integrate(f);
    mu.integrate(&sq) - &m * &m
}

/// Normalized weight `#{i : xᵢ ≠ 0}/n` on `Z₂ⁿ` with little-endian indexing.
pub fn hamming_weight_function(n: usize) -> GroupFunction {
    GroupFunction {
        values: (0..1usize << n).map(|x| q(x.count_ones() as i64, n as i64)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_masses_multiply() {
        let g = FiniteMetricGroup::symmetric3();
        for a in 0..6 {
            for b in 0..6 {
                let c = convolve_means(&MeanVector::point(6, a), &MeanVector::point(6, b), &g).unwrap();
                assert_eq!(c, MeanVector::point(6, g.mul(a, b)));
            }
        }
    }

    #[test]
    fn haar_flattens_functions() {
        let g = FiniteMetricGroup::symmetric3();
        let f = GroupFunction::new((0..6).map(|i| q(i * i, 7)).collect());
        let haar = MeanVector::haar(6);
        let phi = convolve_function(&haar, &f, &g).unwrap();
        assert_eq!(phi, GroupFunction::constant(6, haar.integrate(&f)));
    }

    #[test]
    fn weight_profile_on_z2_4() {
        let f = hamming_weight_function(4);
        let p = concentration_profile(&MeanVector::haar(16), &f, &q(1, 2)).unwrap();
        assert_eq!((p.mean, p.variance.clone(), p.tail), (q(1, 2), q(1, 16), q(1, 8)));
        assert_eq!(variance_by_moments(&MeanVector::haar(16), &f), p.variance);
        let c = concentration_profile(&MeanVector::haar(16), &GroupFunction::constant(16, q(1, 3)), &q(1, 2)).unwrap();
        assert_eq!((c.variance, c.tail), (q(0, 1), q(0, 1)));
        assert!(concentration_profile(&MeanVector::haar(16), &f, &q(0, 1)).is_err());
    }

    #[test]
    fn mean_validation() {
        assert!(MeanVector::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(MeanVector::new(vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(MeanVector::new(vec![q(1, 2), q(1, 2)]).is_ok());
    }

    #[test]
    fn scaled_profile_matches_rational() {
        let mu = MeanVector::new(vec![q(1, 6), q(1, 3), q(1, 4), q(1, 4)]).unwrap();
        let f = GroupFunction::new(vec![q(1, 5), q(-2, 7), q(3, 4), q(0, 1)]);
        for eps in [q(1, 10), q(1, 3), q(37, 140), q(2, 1)] {
            let fast = profile_scaled(&mu, &f, &eps).unwrap();
            assert_eq!(fast, profile_rational(&mu, &f, &eps));
        }
        let huge = GroupFunction::new(vec![q(1, i64::MAX), q(1, i64::MAX - 1), q(0, 1), q(0, 1)]);
        assert!(profile_scaled(&mu, &huge, &q(1, 2)).is_none());
        assert_eq!(concentration_profile(&mu, &huge, &q(1, 2)).unwrap(), profile_rational(&mu, &huge, &q(1, 2)));
    }
}
