//! Square matrices over a prime field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;

/// An `n x n` matrix over `F_p`, row-major, entries reduced to `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixFp {
    field: FieldSpec,
    n: usize,
    data: Vec<u8>,
}

impl MatrixFp {
    pub fn new(field: FieldSpec, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("matrix side must be at least 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "row of length {} in a {n}x{n} matrix",
                bad.len()
            )));
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(MatrixFp { field, n, data })
    }

    /// Builds a matrix from residues already in `[0, p)`.
    pub fn from_fn(field: FieldSpec, n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        assert!(n >= 1, "matrix side must be at least 1");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j) % field.p() as u8);
            }
        }
        MatrixFp { field, n, data }
    }

    /// Inverse of [`MatrixFp::to_flat`].
    pub fn from_flat(field: FieldSpec, n: usize, flat: &[u8]) -> Self {
        assert_eq!(flat.len(), n * n);
        MatrixFp::from_fn(field, n, |i, j| flat[i * n + j])
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        MatrixFp::from_fn(field, n, |_, _| 0)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        MatrixFp::from_fn(field, n, |i, j| u8::from(i == j))
    }

    /// Matrix unit `E_ij` (0-based indices).
    pub fn unit(field: FieldSpec, n: usize, i: usize, j: usize) -> Self {
        MatrixFp::from_fn(field, n, |r, c| u8::from(r == i && c == j))
    }

    pub fn diag(field: FieldSpec, entries: &[u8]) -> Self {
        MatrixFp::from_fn(field, entries.len(), |i, j| if i == j { entries[i] } else { 0 })
    }

    /// Matrix whose columns are the given vectors (`cols.len() == n`).
    pub fn from_columns(field: FieldSpec, cols: &[Vec<u8>]) -> Self {
        let n = cols.len();
        MatrixFp::from_fn(field, n, |i, j| cols[j][i])
    }

    pub fn random<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Self {
        MatrixFp::from_fn(field, n, |_, _| rng.gen_range(0..field.p()) as u8)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn to_flat(&self) -> Vec<u8> {
        self.data.clone()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).iter().map(|&x| x as i64).collect()).collect()
    }

    pub fn same_shape(&self, other: &MatrixFp) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::Dimension(format!(
                "{}x{} over F_{} vs {}x{} over F_{}",
                self.n,
                self.n,
                self.field.p(),
                other.n,
                other.n,
                other.field.p()
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &MatrixFp, f: impl Fn(u8, u8) -> u8) -> MatrixFp {
        self.same_shape(other).expect("matrix shapes must agree");
        MatrixFp {
            field: self.field,
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u8) -> MatrixFp {
        let f = self.field;
        MatrixFp { field: f, n: self.n, data: self.data.iter().map(|&x| f.mul(x, c)).collect() }
    }

    pub fn transpose(&self) -> MatrixFp {
        MatrixFp::from_fn(self.field, self.n, |i, j| self.get(j, i))
    }

    pub fn pow(&self, mut e: u64) -> MatrixFp {
        let mut base = self.clone();
        let mut acc = MatrixFp::identity(self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let p = self.field.p();
        (0..self.n)
            .map(|i| {
                let s: u32 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == MatrixFp::identity(self.field, self.n)
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn trace(&self) -> u8 {
        (0..self.n).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.field, &self.rows())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inverse, `None` for singular matrices.
    pub fn inverse(&self) -> Option<MatrixFp> {
        let n = self.n;
        let mut aug: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u8::from(i == j)));
                r
            })
            .collect();
        let pivots = linalg::rref(self.field, &mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(MatrixFp::from_fn(self.field, n, |i, j| aug[i][n + j]))
    }

    /// Whether every entry strictly below the diagonal vanishes.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    /// All `p^(n^2)` matrices, in lexicographic order of the flattened entries.
    pub fn enumerate_all(field: FieldSpec, n: usize) -> impl Iterator<Item = MatrixFp> {
        let p = field.p() as u64;
        let total = p.pow((n * n) as u32);
        (0..total).map(move |mut code| {
            let mut flat = vec![0u8; n * n];
            for slot in flat.iter_mut().rev() {
                *slot = (code % p) as u8;
                code /= p;
            }
            MatrixFp::from_flat(field, n, &flat)
        })
    }
}

impl<'a> Add<&'a MatrixFp> for &'a MatrixFp {
    type Output = MatrixFp;
    fn add(self, rhs: &MatrixFp) -> MatrixFp {
        let f = self.field;
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl<'a> Sub<&'a MatrixFp> for &'a MatrixFp {
    type Output = MatrixFp;
    fn sub(self, rhs: &MatrixFp) -> MatrixFp {
        let f = self.field;
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &MatrixFp {
    type Output = MatrixFp;
    fn neg(self) -> MatrixFp {
        let f = self.field;
        MatrixFp { field: f, n: self.n, data: self.data.iter().map(|&x| f.neg(x)).collect() }
    }
}

impl<'a> Mul<&'a MatrixFp> for &'a MatrixFp {
    type Output = MatrixFp;
    fn mul(self, rhs: &MatrixFp) -> MatrixFp {
        self.same_shape(rhs).expect("matrix shapes must agree");
        let n = self.n;
        let p = self.field.p();
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            let a = self.row(i);
            for j in 0..n {
                let mut s = 0u32;
                for k in 0..n {
                    s += a[k] as u32 * rhs.data[k * n + j] as u32;
                }
                data[i * n + j] = (s % p) as u8;
            }
        }
        MatrixFp { field: self.field, n, data }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MatrixFp> for MatrixFp {
            type Output = MatrixFp;
            fn $m(self, rhs: MatrixFp) -> MatrixFp {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{}", self.field.p(), self)
    }
}
