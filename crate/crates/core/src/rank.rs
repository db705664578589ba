//! The normalized rank function `ρ = rank/n`, the rank metric, and
//! characteristic polynomials.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::MatrixFp;
use crate::poly::{self, PolyFp};
use crate::rational::{q, Q};

/// Largest side length accepted by polynomial computations.
pub const MAX_POLY_SIDE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInfo {
    pub rref: MatrixFp,
    pub rank: usize,
    pub rho: Q,
    pub pivots: Vec<usize>,
}

pub fn rref_rank(m: &MatrixFp) -> RankInfo {
    let mut rows = m.rows();
    let pivots = linalg::rref(m.field(), &mut rows);
    let rank = pivots.len();
    RankInfo {
        rref: MatrixFp::from_fn(m.field(), m.n(), |i, j| rows[i][j]),
        rank,
        rho: q(rank as i64, m.n() as i64),
        pivots,
    }
}

/// `ρ(a) = rank(a)/n`.
pub fn rho(a: &MatrixFp) -> Q {
    q(a.rank() as i64, a.n() as i64)
}

/// `d(a, b) = ρ(a − b)`.
pub fn rank_distance(a: &MatrixFp, b: &MatrixFp) -> Result<Q> {
    a.same_shape(b)?;
    Ok(rho(&(a - b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyFactorization {
    pub char_poly: PolyFp,
    /// Roots in ascending order with multiplicities.
    pub roots: Vec<(u8, usize)>,
    pub splits: bool,
}

pub fn char_poly_factor(m: &MatrixFp) -> Result<CharPolyFactorization> {
    if m.n() > MAX_POLY_SIDE {
        return Err(Error::Scale { size: m.n(), max: MAX_POLY_SIDE });
    }
    let f = m.field();
    let char_poly = poly::char_poly(m);
    let roots = char_poly.roots_with_multiplicity();
    let mut prod = PolyFp::one(f);
    for &(r, k) in &roots {
        for _ in 0..k {
            prod = prod.mul(&PolyFp::linear(f, r));
        }
    }
    let splits = prod == char_poly;
    Ok(CharPolyFactorization { char_poly, roots, splits })
}

/// Inverts `a` from a relation `p(a) = 0` with `p = q·X + c`, `c ≠ 0`,
/// as `b = −c⁻¹ q(a)`.
pub fn unit_from_polynomial_relation(a: &MatrixFp, p: &PolyFp) -> Result<MatrixFp> {
    if p.field() != a.field() {
        return Err(Error::Dimension(format!(
            "polynomial over F_{} applied to a matrix over F_{}",
            p.field().p(),
            a.field().p()
        )));
    }
    let f = a.field();
    let c = p.coeff(0);
    let Some(c_inv) = f.inv(c) else {
        return Err(Error::NotApplicable("constant term of the relation is zero".into()));
    };
    if !p.eval_matrix(a).is_zero() {
        return Err(Error::RelationViolated);
    }
    let qpoly = PolyFp::from_residues(f, p.coeffs().get(1..).unwrap_or(&[]).to_vec());
    let b = qpoly.eval_matrix(a).scale(f.neg(c_inv));
    debug_assert!((&b * a).is_identity() && (a * &b).is_identity());
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn m(p: u32, rows: &[&[i64]]) -> MatrixFp {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        MatrixFp::new(FieldSpec::new(p).unwrap(), &rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = FieldSpec::new(2).unwrap();
        let id = rref_rank(&MatrixFp::identity(f, 4));
        assert_eq!((id.rank, id.rho.clone()), (4, q(1, 1)));
        let z = rref_rank(&MatrixFp::zero(f, 3));
        assert_eq!((z.rank, z.rho), (0, q(0, 1)));
        let u = rref_rank(&m(2, &[&[1, 1], &[0, 1]]));
        assert_eq!(u.rank, 2);
        assert!(u.rref.is_identity());
    }

    #[test]
    fn distance_examples() {
        let a = m(2, &[&[1, 1], &[0, 1]]);
        let id = MatrixFp::identity(a.field(), 2);
        assert_eq!(rank_distance(&a, &a).unwrap(), q(0, 1));
        assert_eq!(rank_distance(&id, &MatrixFp::zero(a.field(), 2)).unwrap(), q(1, 1));
        assert_eq!(rank_distance(&a, &id).unwrap(), q(1, 2));
        assert!(rank_distance(&a, &MatrixFp::identity(a.field(), 3)).is_err());
    }

    #[test]
    fn char_poly_examples() {
        let nil = char_poly_factor(&m(2, &[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(nil.char_poly.coeffs(), &[0, 0, 1]);
        assert_eq!(nil.roots, vec![(0, 2)]);
        assert!(nil.splits);
        let swap = char_poly_factor(&m(2, &[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(swap.char_poly.coeffs(), &[1, 0, 1]);
        assert_eq!(swap.roots, vec![(1, 2)]);
        assert!(swap.splits);
        let comp = char_poly_factor(&m(2, &[&[0, 1], &[1, 1]])).unwrap();
        assert_eq!(comp.char_poly.coeffs(), &[1, 1, 1]);
        assert!(comp.roots.is_empty());
        assert!(!comp.splits);
        let big = MatrixFp::identity(FieldSpec::new(2).unwrap(), 13);
        assert!(matches!(char_poly_factor(&big), Err(Error::Scale { .. })));
    }

    #[test]
    fn inverse_from_relation() {
        let f2 = FieldSpec::new(2).unwrap();
        let f3 = FieldSpec::new(3).unwrap();
        let id = MatrixFp::identity(f2, 2);
        assert_eq!(unit_from_polynomial_relation(&id, &PolyFp::new(f2, &[-1, 1])).unwrap(), id);
        let s = m(3, &[&[0, 1], &[1, 0]]);
        assert_eq!(unit_from_polynomial_relation(&s, &PolyFp::new(f3, &[-1, 0, 1])).unwrap(), s);
        let u = m(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(unit_from_polynomial_relation(&u, &PolyFp::new(f2, &[1, 0, 1])).unwrap(), u);
        assert_eq!(
            unit_from_polynomial_relation(&u, &PolyFp::new(f2, &[0, 1, 1])),
            Err(Error::NotApplicable("constant term of the relation is zero".into()))
        );
        assert_eq!(
            unit_from_polynomial_relation(&u, &PolyFp::new(f2, &[1, 1])),
            Err(Error::RelationViolated)
        );
    }
}
