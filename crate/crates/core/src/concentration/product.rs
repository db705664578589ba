//! Products `G₁ × … × G_m` with weighted sum metrics and the coordinate
//! chain `Hᵢ = G₁ × … × Gᵢ × {e} × … × {e}`.
//!
//! Elements are indexed in mixed radix with component 0 least significant.

use num_traits::Signed;

use crate::concentration::mean::GroupFunction;
use crate::concentration::metric_group::{FiniteMetricGroup, SubgroupChain};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Largest product order that is materialized.
pub const MAX_PRODUCT_ORDER: usize = 1 << 13;

fn compose(ds: &[usize], radices: &[usize]) -> usize {
    ds.iter().zip(radices).rev().fold(0, |acc, (&d, &r)| acc * r + d)
}

fn digits(mut x: usize, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = x % r;
            x /= r;
            d
        })
        .collect()
}

/// Product group with metric `Σ wᵢ dᵢ` and its coordinate chain.
pub fn build_product_chain(
    components: &[FiniteMetricGroup],
    weights: &[Q],
) -> Result<(FiniteMetricGroup, SubgroupChain)> {
    if components.is_empty() {
        return Err(Error::Argument("a product needs at least one component".into()));
    }
    if weights.len() != components.len() {
        return Err(Error::Dimension("one weight per component".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Argument("weights must be positive".into()));
    }
    let radices: Vec<usize> = components.iter().map(FiniteMetricGroup::order).collect();
    let total = radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).filter(|&t| t <= MAX_PRODUCT_ORDER);
    let Some(total) = total else {
        return Err(Error::Scale { size: radices.iter().product(), max: MAX_PRODUCT_ORDER });
    };
    let all_digits: Vec<Vec<usize>> = (0..total).map(|x| digits(x, &radices)).collect();
    let labels = all_digits
        .iter()
        .map(|ds| {
            let parts: Vec<&str> = ds.iter().zip(components).map(|(&d, c)| c.label(d)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    // Grow the table one component at a time, new component most significant.
    let mut table: Vec<u32> = vec![0];
    let mut size = 1usize;
    for c in components {
        let r = c.order();
        let next = size * r;
        let mut t = Vec::with_capacity(next * next);
        for a in 0..next {
            let (a_lo, a_hi) = (a % size, a / size);
            for b in 0..next {
                let (b_lo, b_hi) = (b % size, b / size);
                t.push(table[a_lo * size + b_lo] + (size * c.mul(a_hi, b_hi)) as u32);
            }
        }
        table = t;
        size = next;
    }
    let inverse = all_digits
        .iter()
        .map(|ds| {
            let inv: Vec<usize> = ds.iter().zip(components).map(|(&d, c)| c.inv(d)).collect();
            compose(&inv, &radices) as u32
        })
        .collect();
    let norm = all_digits
        .iter()
        .map(|ds| ds.iter().zip(components).zip(weights).map(|((&d, c), w)| w * &c.norm()[d]).sum())
        .collect();
    let bi = components.iter().all(FiniteMetricGroup::is_bi_invariant);
    let identity_digits: Vec<usize> = components.iter().map(FiniteMetricGroup::identity).collect();
    let identity = compose(&identity_digits, &radices) as u32;
    let group = FiniteMetricGroup::from_parts(labels, table, inverse, identity, norm, bi);
    let chain = (0..=components.len())
        .map(|i| {
            (0..total)
                .filter(|&x| all_digits[x][i..] == identity_digits[i..])
                .collect()
        })
        .collect();
    Ok((group, SubgroupChain::from_trusted(chain)))
}

/// `Z₂ⁿ` with the normalized Hamming metric `d_n` and its coordinate chain.
pub fn hamming_cube(n: usize) -> Result<(FiniteMetricGroup, SubgroupChain)> {
    let comps = vec![FiniteMetricGroup::cyclic(2); n];
    build_product_chain(&comps, &vec![q(1, n as i64); n])
}

/// `f_{n,i}(x) = (1/n) Σ_{j ≤ i} f(x_j)` on `Xⁿ`, coordinates in the
/// product's mixed-radix order.
pub fn partial_sum_function(f: &GroupFunction, n: usize, i: usize) -> Result<GroupFunction> {
    if i > n {
        return Err(Error::Argument(format!("index {i} exceeds {n}")));
    }
    let k = f.len();
    let total = k.checked_pow(n as u32).filter(|&t| t <= MAX_PRODUCT_ORDER);
    let Some(total) = total else {
        return Err(Error::Scale { size: k, max: MAX_PRODUCT_ORDER });
    };
    let radices = vec![k; n];
    let inv_n = q(1, n as i64);
    let values = (0..total)
        .map(|x| {
            let ds = digits(x, &radices);
            let s: Q = ds[..i].iter().map(|&d| &f.values()[d]).sum();
            s * &inv_n
        })
        .collect();
    Ok(GroupFunction::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concentration::length::chain_length;
    use crate::concentration::mean::hamming_weight_function;
    use crate::concentration::metric_group::FiniteMetricSpace;

    #[test]
    fn single_component_is_itself() {
        let s3 = FiniteMetricGroup::symmetric3();
        let (g, chain) = build_product_chain(&[s3.clone()], &[q(1, 1)]).unwrap();
        assert_eq!(g.norm(), s3.norm());
        assert_eq!(g.table_rows(), s3.table_rows());
        assert_eq!(chain.steps(), 1);
    }

    #[test]
    fn z2_squared_is_hamming() {
        let (g, _) = hamming_cube(2).unwrap();
        for x in 0..4usize {
            for y in 0..4usize {
                assert_eq!(*g.dist(x, y), q((x ^ y).count_ones() as i64, 2));
            }
        }
    }

    #[test]
    fn step_diameters_are_weighted_diameters() {
        let comps = [FiniteMetricGroup::cyclic(3), FiniteMetricGroup::symmetric3(), FiniteMetricGroup::cyclic(2)];
        let w = [q(1, 2), q(1, 3), q(1, 6)];
        let (g, chain) = build_product_chain(&comps, &w).unwrap();
        let cl = chain_length(&g, &chain).unwrap();
        assert_eq!(cl.step_diameters, w.to_vec());
        assert!(build_product_chain(&comps, &[q(1, 2), q(0, 1), q(1, 2)]).is_err());
        assert!(build_product_chain(&[], &[]).is_err());
    }

    #[test]
    fn partial_sums() {
        let ind = GroupFunction::new(vec![q(0, 1), q(1, 1)]);
        assert_eq!(partial_sum_function(&ind, 2, 2).unwrap(), hamming_weight_function(2));
        assert_eq!(partial_sum_function(&ind, 3, 0).unwrap(), GroupFunction::constant(8, q(0, 1)));
        let one = GroupFunction::constant(2, q(1, 1));
        assert_eq!(partial_sum_function(&one, 3, 3).unwrap(), GroupFunction::constant(8, q(1, 1)));
        assert!(partial_sum_function(&ind, 2, 3).is_err());
    }

    #[test]
    fn mixed_product_passes_full_validation() {
        let comps = [FiniteMetricGroup::symmetric3(), FiniteMetricGroup::cyclic(4), FiniteMetricGroup::cyclic(2)];
        let (g, chain) = build_product_chain(&comps, &[q(1, 2), q(1, 3), q(1, 1)]).unwrap();
        let rebuilt = FiniteMetricGroup::new(g.labels().to_vec(), g.table_rows(), g.metric_rows()).unwrap();
        assert_eq!(rebuilt, g);
        assert!(SubgroupChain::new(&g, chain.groups().to_vec()).is_ok());
    }
}
