//! Lipschitz checks and the regularization `g(x) = min(min_y f(y) + ℓ d(x,y), t)`.

use num_traits::{Signed, Zero};

use crate::concentration::mean::GroupFunction;
use crate::concentration::metric_group::FiniteMetricSpace;
use crate::error::{Error, Result};
use crate::rational::Q;

/// `|f(x) − f(y)| ≤ ℓ d(x, y)` for all pairs.
pub fn is_lipschitz<S: FiniteMetricSpace + ?Sized>(space: &S, f: &GroupFunction, ell: &Q) -> bool {
    let v = f.values();
    (0..space.size()).all(|x| (0..x).all(|y| (&v[x] - &v[y]).abs() <= ell * space.dist(x, y)))
}

/// Smallest `L` with `f` being `L`-Lipschitz, or `None` when `f` separates
/// points at distance zero.
pub fn lipschitz_constant<S: FiniteMetricSpace + ?Sized>(space: &S, f: &GroupFunction) -> Option<Q> {
    let v = f.values();
    let mut best = Q::zero();
    for x in 0..space.size() {
        for y in 0..x {
            let gap = (&v[x] - &v[y]).abs();
            let d = space.dist(x, y);
            if d.is_zero() {
                if !gap.is_zero() {
                    return None;
                }
                continue;
            }
            let r = gap / d;
            if r > best {
                best = r;
            }
        }
    }
    Some(best)
}

/// For `s ≤ f ≤ t` with `|f(x) − f(y)| ≤ ℓ d(x, y) + ε`, returns an
/// `ℓ`-Lipschitz `g` with values in `[s, t]` and `‖f − g‖∞ ≤ ε`.
pub fn lipschitz_regularize<S: FiniteMetricSpace + ?Sized>(
    space: &S,
    f: &GroupFunction,
    ell: &Q,
    epsilon: &Q,
    bounds: (&Q, &Q),
) -> Result<GroupFunction> {
    let (s, t) = bounds;
    let v = f.values();
    if v.len() != space.size() {
        return Err(Error::Dimension("function and space sizes differ".into()));
    }
    if v.iter().any(|x| x < s || x > t) {
        return Err(Error::Precondition("f leaves the interval [s, t]".into()));
    }
    for x in 0..v.len() {
        for y in 0..x {
            if (&v[x] - &v[y]).abs() > ell * space.dist(x, y) + epsilon {
                return Err(Error::Precondition(format!("|f(x) − f(y)| > ℓd(x,y) + ε at ({x}, {y})")));
            }
        }
    }
    let values = (0..v.len())
        .map(|x| {
            let inf = (0..v.len()).map(|y| &v[y] + ell * space.dist(x, y)).min().expect("nonempty space");
            inf.min(t.clone())
        })
        .collect();
    Ok(GroupFunction::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concentration::metric_group::MetricTable;
    use crate::rational::q;

    fn two_points() -> MetricTable {
        MetricTable::new(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap()
    }

    #[test]
    fn regularization_examples() {
        let sp = two_points();
        let f = GroupFunction::new(vec![q(0, 1), q(3, 2)]);
        let g = lipschitz_regularize(&sp, &f, &q(1, 1), &q(1, 2), (&q(0, 1), &q(3, 2))).unwrap();
        assert_eq!(g, GroupFunction::new(vec![q(0, 1), q(1, 1)]));
        let lip = GroupFunction::new(vec![q(1, 4), q(3, 4)]);
        assert_eq!(lipschitz_regularize(&sp, &lip, &q(1, 1), &q(0, 1), (&q(0, 1), &q(1, 1))).unwrap(), lip);
        let c = GroupFunction::constant(2, q(1, 3));
        assert_eq!(lipschitz_regularize(&sp, &c, &q(1, 1), &q(0, 1), (&q(0, 1), &q(1, 1))).unwrap(), c);
        assert!(matches!(
            lipschitz_regularize(&sp, &f, &q(1, 1), &q(1, 4), (&q(0, 1), &q(3, 2))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn constants() {
        let sp = two_points();
        let f = GroupFunction::new(vec![q(0, 1), q(3, 2)]);
        assert_eq!(lipschitz_constant(&sp, &f), Some(q(3, 2)));
        assert!(is_lipschitz(&sp, &f, &q(3, 2)));
        assert!(!is_lipschitz(&sp, &f, &q(1, 1)));
    }
}
