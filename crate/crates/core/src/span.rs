//! Linear spans of matrices, stored as canonical bases of flattened entries.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::MatrixFp;

/// Largest span whose elements may be listed one by one.
pub const MAX_ENUMERATED: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixSpan {
    field: FieldSpec,
    n: usize,
    basis: Vec<Vec<u8>>,
}

impl MatrixSpan {
    pub fn new(field: FieldSpec, n: usize, gens: &[MatrixFp]) -> Result<Self> {
        if gens.iter().any(|g| g.field() != field || g.n() != n) {
            return Err(Error::Dimension("span generators must share field and size".into()));
        }
        let flat: Vec<Vec<u8>> = gens.iter().map(MatrixFp::to_flat).collect();
        Ok(MatrixSpan { field, n, basis: linalg::canonical_span(field, &flat) })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        MatrixSpan { field, n, basis: Vec::new() }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        let units: Vec<MatrixFp> =
            (0..n * n).map(|k| MatrixFp::unit(field, n, k / n, k % n)).collect();
        MatrixSpan::new(field, n, &units).expect("consistent units")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> Vec<MatrixFp> {
        self.basis.iter().map(|v| MatrixFp::from_flat(self.field, self.n, v)).collect()
    }

    pub fn contains(&self, m: &MatrixFp) -> bool {
        m.field() == self.field && m.n() == self.n && linalg::in_canonical_span(self.field, &self.basis, &m.to_flat())
    }

    pub fn is_subspan_of(&self, other: &MatrixSpan) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn join(&self, other: &MatrixSpan) -> MatrixSpan {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        MatrixSpan { field: self.field, n: self.n, basis: linalg::canonical_span(self.field, &vs) }
    }

    /// `span{ab : a ∈ self, b ∈ other}`.
    pub fn product(&self, other: &MatrixSpan) -> MatrixSpan {
        let (a, b) = (self.basis(), other.basis());
        let prods: Vec<MatrixFp> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        MatrixSpan::new(self.field, self.n, &prods).expect("consistent products")
    }

    /// Span of all `k`-fold products of elements (`k ≥ 1`).
    pub fn power(&self, k: usize) -> Result<MatrixSpan> {
        if k == 0 {
            return Err(Error::Argument("power index must be at least 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            if acc.is_zero() {
                break;
            }
            acc = acc.product(self);
        }
        Ok(acc)
    }

    pub fn is_closed_under_product(&self) -> bool {
        let b = self.basis();
        b.iter().all(|x| b.iter().all(|y| self.contains(&(x * y))))
    }

    /// Whether `R·self·R ⊆ self` for `R` spanned by `ring`.
    pub fn is_two_sided_ideal_of(&self, ring: &MatrixSpan) -> bool {
        let (b, r) = (self.basis(), ring.basis());
        b.iter().all(|x| r.iter().all(|y| self.contains(&(x * y)) && self.contains(&(y * x))))
    }

    /// Smallest subalgebra containing the span (without adjoining 1).
    pub fn multiplicative_closure(&self) -> MatrixSpan {
        let mut cur = self.clone();
        loop {
            let next = cur.join(&cur.product(&cur));
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    /// Every element, as linear combinations ordered by the coefficient code.
    pub fn elements(&self) -> Result<Vec<MatrixFp>> {
        let p = self.field.p() as u64;
        let total = p.checked_pow(self.dim() as u32).filter(|&t| t <= MAX_ENUMERATED);
        let Some(total) = total else {
            return Err(Error::Scale { size: self.dim(), max: MAX_ENUMERATED.ilog(p) as usize });
        };
        let nn = self.n * self.n;
        Ok((0..total)
            .map(|mut code| {
                let mut v = vec![0u8; nn];
                for b in &self.basis {
                    let c = (code % p) as u8;
                    code /= p;
                    if c != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = self.field.add(*x, self.field.mul(c, y));
                        }
                    }
                }
                MatrixFp::from_flat(self.field, self.n, &v)
            })
            .collect())
    }

    /// Minimal `k` with `self^k = 0`, or `None` once the powers stabilize at
    /// a nonzero span.
    pub fn nilpotency_order(&self) -> Option<usize> {
        if self.is_zero() {
            return Some(1);
        }
        let mut cur = self.clone();
        let mut k = 1;
        loop {
            let next = cur.product(self);
            k += 1;
            if next.is_zero() {
                return Some(k);
            }
            // nilpotent subalgebras of M_n vanish in degree n
            if next == cur || k > self.n {
                return None;
            }
            cur = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strict_upper(field: FieldSpec, n: usize) -> MatrixSpan {
        let gens: Vec<MatrixFp> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| MatrixFp::unit(field, n, i, j))).collect();
        MatrixSpan::new(field, n, &gens).unwrap()
    }

    #[test]
    fn strict_upper_powers() {
        let f = FieldSpec::new(2).unwrap();
        let n = strict_upper(f, 3);
        assert_eq!(n.dim(), 3);
        let sq = n.power(2).unwrap();
        assert_eq!(sq, MatrixSpan::new(f, 3, &[MatrixFp::unit(f, 3, 0, 2)]).unwrap());
        assert!(n.power(3).unwrap().is_zero());
        assert_eq!(n.nilpotency_order(), Some(3));
        assert!(n.power(0).is_err());
    }

    #[test]
    fn idempotent_span_is_not_nilpotent() {
        let f = FieldSpec::new(2).unwrap();
        let e = MatrixSpan::new(f, 2, &[MatrixFp::unit(f, 2, 0, 0)]).unwrap();
        assert_eq!(e.nilpotency_order(), None);
        assert_eq!(MatrixSpan::zero(f, 2).nilpotency_order(), Some(1));
    }

    #[test]
    fn elements_and_closure() {
        let f = FieldSpec::new(3).unwrap();
        let n = strict_upper(f, 3);
        assert_eq!(n.elements().unwrap().len(), 27);
        let gen = MatrixSpan::new(f, 3, &[MatrixFp::unit(f, 3, 0, 1), MatrixFp::unit(f, 3, 1, 2)]).unwrap();
        assert_eq!(gen.multiplicative_closure(), n);
        assert!(MatrixSpan::full(f, 3).is_closed_under_product());
    }
}
