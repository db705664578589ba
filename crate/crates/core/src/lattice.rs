//! The lattice `lat(M_n(F_p))` of column spaces with dimension function
//! `δ = dim/n` and the metric `d_δ = δ(∨) − δ(∧)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg;
use crate::matrix::MatrixFp;
use crate::rational::{q, Q};

/// Subspace of `F_p^n` stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: FieldSpec,
    n: usize,
    basis: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn span(field: FieldSpec, n: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::Dimension(format!("vector of length {} in F_p^{n}", v.len())));
        }
        let reduced: Vec<Vec<u8>> =
            vectors.iter().map(|v| v.iter().map(|&x| x % field.p() as u8).collect()).collect();
        Ok(Subspace::from_reduced(field, n, &reduced))
    }

    fn from_reduced(field: FieldSpec, n: usize, vectors: &[Vec<u8>]) -> Self {
        Subspace { field, n, basis: linalg::canonical_span(field, vectors) }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace { field, n, basis: Vec::new() }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace::from_reduced(field, n, &standard_basis(n))
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(field: FieldSpec, n: usize, indices: &[usize]) -> Self {
        let std = standard_basis(n);
        let vs: Vec<Vec<u8>> = indices.iter().map(|&i| std[i].clone()).collect();
        Subspace::from_reduced(field, n, &vs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `δ = dim/n`.
    pub fn delta(&self) -> Q {
        q(self.dim() as i64, self.n as i64)
    }

    pub fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::Dimension(format!(
                "subspaces of F_{}^{} and F_{}^{}",
                self.field.p(),
                self.n,
                other.field.p(),
                other.n
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        linalg::in_canonical_span(self.field, &self.basis, v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.same_ambient(other).is_ok() && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_reduced(self.field, self.n, &vs)
    }

    /// Annihilator under the standard bilinear form.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.field, self.n);
        }
        let ker = linalg::kernel(self.field, &self.basis, self.n);
        Subspace::from_reduced(self.field, self.n, &ker)
    }

    /// Intersection, computed as `ann(ann V + ann W)`.
    pub fn meet(&self, other: &Subspace) -> Subspace {
        self.annihilator().join(&other.annihilator()).annihilator()
    }

    /// Standard basis vectors, lowest index first, that extend `self` to a
    /// complement inside the ambient space.
    pub fn greedy_complement(&self) -> Subspace {
        let chosen = extend_greedily(self.field, &self.basis, &standard_basis(self.n));
        Subspace::from_reduced(self.field, self.n, &chosen)
    }

    /// Vectors chosen from `candidates` in order that extend `self` to the
    /// span of `self ∪ candidates`.
    pub fn extension_vectors(&self, candidates: &[Vec<u8>]) -> Vec<Vec<u8>> {
        extend_greedily(self.field, &self.basis, candidates)
    }

    /// `a·V`: image under left multiplication.
    pub fn image_under(&self, a: &MatrixFp) -> Subspace {
        let imgs: Vec<Vec<u8>> = self.basis.iter().map(|v| a.apply(v)).collect();
        Subspace::from_reduced(self.field, self.n, &imgs)
    }

    pub fn is_invariant_under(&self, a: &MatrixFp) -> bool {
        self.basis.iter().all(|v| self.contains(&a.apply(v)))
    }

    /// Matrix whose leading columns are the basis, padded with zero columns.
    pub fn to_matrix(&self) -> MatrixFp {
        let mut cols = self.basis.clone();
        cols.resize(self.n, vec![0u8; self.n]);
        MatrixFp::from_columns(self.field, &cols)
    }

    /// Every subspace of `F_p^n`, ordered by dimension and then by basis.
    pub fn enumerate_all(field: FieldSpec, n: usize) -> Vec<Subspace> {
        let p = field.p() as usize;
        let mut out = Vec::new();
        for k in 0..=n {
            for pivots in combinations(n, k) {
                // free slots: row r, column c > pivots[r], c not a pivot
                let free: Vec<(usize, usize)> = (0..k)
                    .flat_map(|r| {
                        let piv = pivots.clone();
                        (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
                    })
                    .collect();
                let total = p.pow(free.len() as u32);
                for mut code in 0..total {
                    let mut rows = vec![vec![0u8; n]; k];
                    for (r, &c) in pivots.iter().enumerate() {
                        rows[r][c] = 1;
                    }
                    for &(r, c) in &free {
                        rows[r][c] = (code % p) as u8;
                        code /= p;
                    }
                    out.push(Subspace { field, n, basis: rows });
                }
            }
        }
        out.sort();
        out
    }
}

fn standard_basis(n: usize) -> Vec<Vec<u8>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v
        })
        .collect()
}

fn extend_greedily(field: FieldSpec, start: &[Vec<u8>], candidates: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut span = linalg::canonical_span(field, start);
    let mut chosen = Vec::new();
    for c in candidates {
        if !linalg::in_canonical_span(field, &span, c) {
            chosen.push(c.clone());
            span.push(c.clone());
            span = linalg::canonical_span(field, &span);
        }
    }
    chosen
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Column space `aR` of a matrix.
pub fn column_space(m: &MatrixFp) -> Subspace {
    Subspace::from_reduced(m.field(), m.n(), &m.columns())
}

pub fn join_meet(i: &Subspace, j: &Subspace) -> Result<(Subspace, Subspace)> {
    i.same_ambient(j)?;
    Ok((i.join(j), i.meet(j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaDistance {
    pub delta_i: Q,
    pub delta_j: Q,
    pub distance: Q,
}

pub fn delta_and_distance(i: &Subspace, j: &Subspace) -> Result<DeltaDistance> {
    let (join, meet) = join_meet(i, j)?;
    Ok(DeltaDistance { delta_i: i.delta(), delta_j: j.delta(), distance: join.delta() - meet.delta() })
}

/// `d_δ(I, J) = δ(I ∨ J) − δ(I ∧ J)`.
pub fn lattice_distance(i: &Subspace, j: &Subspace) -> Result<Q> {
    Ok(delta_and_distance(i, j)?.distance)
}

/// For `a ⊆ x ⊆ b`, returns `y` with `x ∧ y = a` and `x ∨ y = b`:
/// the join of `a` with the vectors of `b`'s canonical basis that extend `x`.
pub fn relative_complement(a: &Subspace, x: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.same_ambient(x)?;
    x.same_ambient(b)?;
    if !a.is_subspace_of(x) || !x.is_subspace_of(b) {
        return Err(Error::Order("relative complement needs a ⊆ x ⊆ b".into()));
    }
    let ext = x.extension_vectors(b.basis());
    let c = Subspace::from_reduced(x.field, x.n, &ext);
    let y = a.join(&c);
    debug_assert!(x.meet(&y) == *a && x.join(&y) == *b);
    Ok(y)
}

/// A common complement of `i` and `j` when `dim i = dim j`, else `None`.
pub fn perspectivity_witness(i: &Subspace, j: &Subspace) -> Result<Option<Subspace>> {
    i.same_ambient(j)?;
    if i.dim() != j.dim() {
        return Ok(None);
    }
    let f = i.field;
    let m = i.meet(j);
    let ui = m.extension_vectors(i.basis());
    let vj = m.extension_vectors(j.basis());
    let diag: Vec<Vec<u8>> = ui
        .iter()
        .zip(&vj)
        .map(|(u, v)| u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect())
        .collect();
    let w = i.join(j).greedy_complement();
    let mut vs = diag;
    vs.extend(w.basis.iter().cloned());
    let z = Subspace::from_reduced(f, i.n, &vs);
    let zero = Subspace::zero(f, i.n);
    let full = Subspace::full(f, i.n);
    if i.meet(&z) != zero || j.meet(&z) != zero || i.join(&z) != full || j.join(&z) != full {
        return Err(Error::Structure("common complement construction failed".into()));
    }
    Ok(Some(z))
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let parts: Vec<String> = v.iter().map(u8::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ⊆ F_{}^{}", self.field.p(), self.n)
    }
}
