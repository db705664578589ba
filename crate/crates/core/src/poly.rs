//! Univariate polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;

use crate::field::FieldSpec;
use crate::matrix::MatrixFp;

/// Polynomial with coefficients `c0 + c1 X + ...`, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    field: FieldSpec,
    coeffs: Vec<u8>,
}

impl PolyFp {
    pub fn new(field: FieldSpec, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&x| field.reduce(x)).collect();
        PolyFp::from_residues(field, c)
    }

    pub fn from_residues(field: FieldSpec, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        PolyFp { field, coeffs: Vec::new() }
    }

    pub fn constant(field: FieldSpec, c: u8) -> Self {
        PolyFp::from_residues(field, vec![c])
    }

    pub fn one(field: FieldSpec) -> Self {
        PolyFp::constant(field, 1)
    }

    /// `X - r`.
    pub fn linear(field: FieldSpec, r: u8) -> Self {
        PolyFp::from_residues(field, vec![field.neg(r), 1])
    }

    pub fn monomial(field: FieldSpec, c: u8, k: usize) -> Self {
        let mut v = vec![0u8; k + 1];
        v[k] = c;
        PolyFp::from_residues(field, v)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u8 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> PolyFp {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: u8) -> PolyFp {
        let f = self.field;
        PolyFp::from_residues(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn add(&self, other: &PolyFp) -> PolyFp {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyFp::from_residues(f, (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &PolyFp) -> PolyFp {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyFp::from_residues(f, (0..n).map(|k| f.sub(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn mul(&self, other: &PolyFp) -> PolyFp {
        if self.is_zero() || other.is_zero() {
            return PolyFp::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        PolyFp::from_residues(f, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &PolyFp) -> (PolyFp, PolyFp) {
        let f = self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = f.inv(d.leading()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (PolyFp::zero(f), self.clone());
        }
        let mut q = vec![0u8; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let t = f.mul(r[k], inv);
            if t == 0 {
                continue;
            }
            q[k - dd] = t;
            for (j, &c) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = f.sub(r[k - dd + j], f.mul(t, c));
            }
        }
        (PolyFp::from_residues(f, q), PolyFp::from_residues(f, r))
    }

    pub fn rem(&self, d: &PolyFp) -> PolyFp {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &PolyFp) -> PolyFp {
        let mut base = self.rem(m);
        let mut acc = PolyFp::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `p^R(a)`: Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &MatrixFp) -> MatrixFp {
        let n = a.n();
        let mut acc = MatrixFp::zero(self.field, n);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + &MatrixFp::identity(self.field, n).scale(c);
        }
        acc
    }

    /// Roots in `F_p` in ascending order, with multiplicities found by
    /// repeated division by `X - r`.
    pub fn roots_with_multiplicity(&self) -> Vec<(u8, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let f = self.field;
        let mut out = Vec::new();
        for r in f.elements() {
            if self.eval(r) != 0 {
                continue;
            }
            let lin = PolyFp::linear(f, r);
            let mut cur = self.clone();
            let mut mult = 0;
            loop {
                let (q, rem) = cur.divrem(&lin);
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                cur = q;
            }
            out.push((r, mult));
        }
        out
    }

    /// Smallest irreducible factor of degree at least 2 under the order
    /// (degree, coefficients), or `None` when the polynomial splits.
    pub fn nonlinear_irreducible_factor(&self) -> Option<PolyFp> {
        let f = self.field;
        let mut h = self.monic();
        for (r, mult) in self.roots_with_multiplicity() {
            for _ in 0..mult {
                h = h.divrem(&PolyFp::linear(f, r)).0;
            }
        }
        let deg = h.degree()?;
        if deg == 0 {
            return None;
        }
        let p = f.p() as u128;
        let x = PolyFp::monomial(f, 1, 1);
        let mut frob = x.clone();
        for d in 1..=deg {
            frob = frob.powmod(p, &h);
            if d == 1 {
                continue;
            }
            let g = h.gcd(&frob.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                let mut factors = Vec::new();
                equal_degree_split(&g, d, &mut factors);
                return factors.into_iter().min_by(poly_order);
            }
        }
        unreachable!("a polynomial without roots has an irreducible factor of degree at most its own")
    }
}

fn poly_order(a: &PolyFp, b: &PolyFp) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| {
        a.coeffs.iter().rev().cmp(b.coeffs.iter().rev())
    })
}

/// Splits a squarefree monic product of degree-`d` irreducibles into its
/// factors, trying candidate splitters in a fixed enumeration order.
fn equal_degree_split(g: &PolyFp, d: usize, out: &mut Vec<PolyFp>) {
    let deg = g.degree().unwrap_or(0);
    if deg == d {
        out.push(g.monic());
        return;
    }
    let f = g.field;
    let p = f.p() as u128;
    for code in 1u64.. {
        let a = candidate(f, code, deg);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let t = if p == 2 {
            let mut acc = a.rem(g);
            let mut sq = acc.clone();
            for _ in 1..d {
                sq = sq.mul(&sq).rem(g);
                acc = acc.add(&sq);
            }
            acc
        } else {
            a.powmod((p.pow(d as u32) - 1) / 2, g).sub(&PolyFp::one(f))
        };
        let c = g.gcd(&t);
        let cd = c.degree().unwrap_or(0);
        if c.is_zero() || cd == 0 || cd == deg {
            continue;
        }
        let rest = g.divrem(&c).0;
        equal_degree_split(&c, d, out);
        equal_degree_split(&rest, d, out);
        return;
    }
}

/// The polynomial whose base-`p` digits are `code`, truncated below `deg`.
fn candidate(f: FieldSpec, mut code: u64, deg: usize) -> PolyFp {
    let p = f.p() as u64;
    let mut v = Vec::with_capacity(deg);
    for _ in 0..deg {
        v.push((code % p) as u8);
        code /= p;
    }
    PolyFp::from_residues(f, v)
}

/// `det(X·1 − m)` via reduction to upper Hessenberg form.
pub fn char_poly(m: &MatrixFp) -> PolyFp {
    let f = m.field();
    let n = m.n();
    let mut h: Vec<Vec<u8>> = m.rows();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]).expect("nonzero pivot");
        for r in j + 2..n {
            let t = f.mul(h[r][j], inv);
            if t == 0 {
                continue;
            }
            for c in 0..n {
                h[r][c] = f.sub(h[r][c], f.mul(t, h[j + 1][c]));
            }
            for row in h.iter_mut() {
                row[j + 1] = f.add(row[j + 1], f.mul(t, row[r]));
            }
        }
    }
    // p_k = (X - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{i<j<=k} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<PolyFp> = vec![PolyFp::one(f)];
    for k in 0..n {
        let mut pk = PolyFp::linear(f, h[k][k]).mul(&ps[k]);
        let mut prod = 1u8;
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let c = f.mul(h[i][k], prod);
            pk = pk.sub(&ps[i].scale(c));
        }
        ps.push(pk);
    }
    ps.pop().expect("n >= 1")
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, _) => write!(f, "{c}X")?,
                (_, 1) => write!(f, "X^{k}")?,
                _ => write!(f, "{c}X^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.field.p())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn division_identity() {
        let f = fp(7);
        let a = PolyFp::new(f, &[3, 0, 5, 1, 2]);
        let b = PolyFp::new(f, &[1, 4, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn roots_of_x_squared_plus_one_over_f2() {
        let p = PolyFp::new(fp(2), &[1, 0, 1]);
        assert_eq!(p.roots_with_multiplicity(), vec![(1, 2)]);
        assert_eq!(p.nonlinear_irreducible_factor(), None);
    }

    #[test]
    fn finds_irreducible_quadratic() {
        let f = fp(2);
        let p = PolyFp::new(f, &[1, 1, 1]).mul(&PolyFp::new(f, &[0, 1]));
        assert_eq!(p.nonlinear_irreducible_factor(), Some(PolyFp::new(f, &[1, 1, 1])));
    }

    #[test]
    fn equal_degree_splitting_picks_smallest() {
        // (X^2+1)(X^2+X+2) over F_3: both irreducible
        let f = fp(3);
        let a = PolyFp::new(f, &[1, 0, 1]);
        let b = PolyFp::new(f, &[2, 1, 1]);
        assert_eq!(a.mul(&b).nonlinear_irreducible_factor(), Some(a.clone()));
        let f2 = fp(2);
        let c = PolyFp::new(f2, &[1, 1, 0, 1]);
        let d = PolyFp::new(f2, &[1, 0, 1, 1]);
        assert_eq!(c.mul(&d).nonlinear_irreducible_factor(), Some(c));
    }

    #[test]
    fn display() {
        let p = PolyFp::new(fp(5), &[1, 0, 3, 1]);
        assert_eq!(p.to_string(), "X^3 + 3X^2 + 1");
        assert_eq!(PolyFp::zero(fp(5)).to_string(), "0");
    }
}
