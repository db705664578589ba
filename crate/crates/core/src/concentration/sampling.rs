//! Seeded random inputs: Lipschitz functions, norms, means, matrices.

use rand::Rng;

use crate::concentration::mean::{GroupFunction, MeanVector};
use crate::concentration::metric_group::{FiniteMetricGroup, FiniteMetricSpace};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::lattice::Subspace;
use crate::rational::{common_scale, one, q, Q};

/// Denominator of sampled anchor values.
const VALUE_DENOM: i64 = 64;

/// `f(x) = min(1, min_j (v_j + d(x, a_j)))` over `anchors` random pairs
/// `(a_j, v_j)` with `v_j ∈ [0, 1]`; 1-Lipschitz with values in `[0, 1]`.
pub fn random_lipschitz<S, R>(space: &S, anchors: usize, rng: &mut R) -> GroupFunction
where
    S: FiniteMetricSpace + ?Sized,
    R: Rng + ?Sized,
{
    let k = space.size();
    let picks: Vec<(usize, Q)> =
        (0..anchors.max(1)).map(|_| (rng.gen_range(0..k), q(rng.gen_range(0..=VALUE_DENOM), VALUE_DENOM))).collect();
    let cols: Vec<&Q> = picks.iter().flat_map(|(a, _)| (0..k).map(move |x| space.dist(x, *a))).collect();
    let cap = one();
    let scaled = common_scale(cols.iter().copied().chain(picks.iter().map(|(_, v)| v)).chain([&cap]));
    if let Some((nums, l)) = scaled {
        let (dists, rest) = nums.split_at(cols.len());
        let values = (0..k)
            .map(|x| {
                let m = (0..picks.len()).map(|j| rest[j] + dists[j * k + x]).min().expect("at least one anchor");
                q(m.min(l), l)
            })
            .collect();
        return GroupFunction::new(values);
    }
    let values = (0..k)
        .map(|x| {
            let m = picks.iter().map(|(a, v)| v + space.dist(x, *a)).min().expect("at least one anchor");
            m.min(one())
        })
        .collect();
    GroupFunction::new(values)
}

/// Any function with values in `[0, 1]` and denominator `VALUE_DENOM`.
pub fn random_function<R: Rng + ?Sized>(k: usize, rng: &mut R) -> GroupFunction {
    GroupFunction::new((0..k).map(|_| q(rng.gen_range(0..=VALUE_DENOM), VALUE_DENOM)).collect())
}

/// Random right-invariant metric: `N(z) = N(z⁻¹) ∈ [1/2, 1]` off the
/// identity, which makes the triangle inequality automatic.
pub fn random_norm<R: Rng + ?Sized>(g: &FiniteMetricGroup, rng: &mut R) -> Result<FiniteMetricGroup> {
    let mut norm = vec![None; g.order()];
    norm[g.identity()] = Some(Q::from_integer(0.into()));
    for z in 0..g.order() {
        if norm[z].is_none() {
            let v = q(6 + rng.gen_range(0..=6), 12);
            norm[g.inv(z)] = Some(v.clone());
            norm[z] = Some(v);
        }
    }
    g.with_norm(norm.into_iter().map(|v| v.expect("filled")).collect())
}

/// Random mean with small integer weights on a random nonempty support.
pub fn random_mean<R: Rng + ?Sized>(k: usize, rng: &mut R) -> MeanVector {
    let mut w: Vec<i64> = (0..k).map(|_| if rng.gen_bool(0.6) { rng.gen_range(1..=9) } else { 0 }).collect();
    if w.iter().all(|&x| x == 0) {
        w[rng.gen_range(0..k)] = 1;
    }
    let total: i64 = w.iter().sum();
    MeanVector::new(w.into_iter().map(|x| q(x, total)).collect()).expect("normalized weights")
}

/// Span of `count` uniformly random vectors of `F_p^n`.
pub fn random_subspace<R: Rng + ?Sized>(field: FieldSpec, n: usize, count: usize, rng: &mut R) -> Subspace {
    let vs: Vec<Vec<u8>> =
        (0..count).map(|_| (0..n).map(|_| rng.gen_range(0..field.p()) as u8).collect()).collect();
    Subspace::span(field, n, &vs).expect("consistent lengths")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concentration::lipschitz::is_lipschitz;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = random_norm(&FiniteMetricGroup::symmetric3(), &mut rng).unwrap();
        for _ in 0..20 {
            let f = random_lipschitz(&g, 3, &mut rng);
            assert!(is_lipschitz(&g, &f, &one()));
            assert!(f.values().iter().all(|v| *v >= q(0, 1) && *v <= one()));
            let m = random_mean(6, &mut rng);
            assert_eq!(m.weights().iter().sum::<Q>(), one());
        }
    }
}
