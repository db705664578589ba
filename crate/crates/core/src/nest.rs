//! Idempotents, nests, flags, interval partitions and the map
//! `Λ(E) = {eR | e ∈ E}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lattice::{column_space, Subspace};
use crate::matrix::MatrixFp;
use crate::rank::rho;
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Idempotent(MatrixFp);

impl Idempotent {
    pub fn new(m: MatrixFp) -> Result<Self> {
        if !m.is_idempotent() {
            return Err(Error::Structure(format!("{m} is not idempotent")));
        }
        Ok(Idempotent(m))
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Idempotent(MatrixFp::zero(field, n))
    }

    pub fn one(field: FieldSpec, n: usize) -> Self {
        Idempotent(MatrixFp::identity(field, n))
    }

    /// `diag(1,…,1,0,…,0)` with `k` ones.
    pub fn leading(field: FieldSpec, n: usize, k: usize) -> Self {
        Idempotent(MatrixFp::from_fn(field, n, |i, j| u8::from(i == j && i < k)))
    }

    pub fn matrix(&self) -> &MatrixFp {
        &self.0
    }

    pub fn into_matrix(self) -> MatrixFp {
        self.0
    }

    pub fn field(&self) -> FieldSpec {
        self.0.field()
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn rho(&self) -> Q {
        rho(&self.0)
    }

    /// `e ≤ f` iff `ef = fe = e`.
    pub fn le(&self, other: &Idempotent) -> bool {
        let ef = &self.0 * &other.0;
        ef == self.0 && &other.0 * &self.0 == self.0
    }

    pub fn is_orthogonal(&self, other: &Idempotent) -> bool {
        (&self.0 * &other.0).is_zero() && (&other.0 * &self.0).is_zero()
    }

    /// `1 − e`.
    pub fn complement(&self) -> Idempotent {
        Idempotent(&MatrixFp::identity(self.field(), self.n()) - &self.0)
    }

    pub fn image(&self) -> Subspace {
        column_space(&self.0)
    }

    /// All idempotents of `M_n(F_p)`, by exhaustive enumeration.
    pub fn enumerate_all(field: FieldSpec, n: usize) -> Vec<Idempotent> {
        MatrixFp::enumerate_all(field, n).filter(MatrixFp::is_idempotent).map(Idempotent).collect()
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A strictly increasing chain of idempotents; endpoints are optional.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nest {
    field: FieldSpec,
    n: usize,
    elements: Vec<Idempotent>,
}

impl Nest {
    pub fn new(field: FieldSpec, n: usize, mut elements: Vec<Idempotent>) -> Result<Self> {
        if elements.iter().any(|e| e.field() != field || e.n() != n) {
            return Err(Error::Dimension("nest members must live in the same ring".into()));
        }
        // members of a chain are ordered by rank
        elements.sort_by_key(Idempotent::rank);
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Order(format!("duplicate nest member {}", w[0])));
            }
            if !w[0].le(&w[1]) {
                return Err(Error::Order(format!("{} and {} are not comparable", w[0], w[1])));
            }
        }
        Ok(Nest { field, n, elements })
    }

    pub fn empty(field: FieldSpec, n: usize) -> Self {
        Nest { field, n, elements: Vec::new() }
    }

    /// `{diag(1^k, 0^(n−k)) : 0 ≤ k ≤ n}`, the nest of the standard flag.
    pub fn standard(field: FieldSpec, n: usize) -> Self {
        Nest { field, n, elements: (0..=n).map(|k| Idempotent::leading(field, n, k)).collect() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Idempotent] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Idempotent) -> bool {
        self.elements.contains(e)
    }

    pub fn rho_values(&self) -> Vec<Q> {
        self.elements.iter().map(Idempotent::rho).collect()
    }

    /// The nest with `0` and `1` adjoined.
    pub fn with_endpoints(&self) -> Nest {
        let mut els = self.elements.clone();
        let zero = Idempotent::zero(self.field, self.n);
        let one = Idempotent::one(self.field, self.n);
        if !els.contains(&zero) {
            els.insert(0, zero);
        }
        if !els.contains(&one) {
            els.push(one);
        }
        Nest { field: self.field, n: self.n, elements: els }
    }

    /// Nest member of the given rank, endpoints included.
    pub fn member_of_rank(&self, k: usize) -> Option<Idempotent> {
        self.with_endpoints().elements.into_iter().find(|e| e.rank() == k)
    }
}

/// A strictly increasing chain of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    field: FieldSpec,
    n: usize,
    subspaces: Vec<Subspace>,
}

impl Flag {
    pub fn new(field: FieldSpec, n: usize, mut subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.iter().any(|s| s.field() != field || s.ambient_dim() != n) {
            return Err(Error::Dimension("flag members must live in the same space".into()));
        }
        subspaces.sort_by_key(Subspace::dim);
        for w in subspaces.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Order(format!("duplicate flag member {}", w[0])));
            }
            if !w[0].is_subspace_of(&w[1]) {
                return Err(Error::Order(format!("{} is not contained in {}", w[0], w[1])));
            }
        }
        Ok(Flag { field, n, subspaces })
    }

    pub fn standard(field: FieldSpec, n: usize) -> Self {
        let subspaces = (0..=n).map(|k| Subspace::coordinate(field, n, &(0..k).collect::<Vec<_>>())).collect();
        Flag { field, n, subspaces }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn delta_values(&self) -> Vec<Q> {
        self.subspaces.iter().map(Subspace::delta).collect()
    }

    pub fn is_invariant_under(&self, a: &MatrixFp) -> bool {
        self.subspaces.iter().all(|s| s.is_invariant_under(a))
    }
}

/// Chains whose maximality is decided by their value sets.
pub trait Chain {
    /// Ranks (resp. dimensions) of the members, as integers out of `n`.
    fn levels(&self) -> Vec<usize>;
    fn side(&self) -> usize;
    /// Whether `{0, n}` is adjoined before comparing value sets.
    fn adjoins_endpoints(&self) -> bool;
}

impl Chain for Nest {
    fn levels(&self) -> Vec<usize> {
        self.elements.iter().map(Idempotent::rank).collect()
    }
    fn side(&self) -> usize {
        self.n
    }
    fn adjoins_endpoints(&self) -> bool {
        true
    }
}

impl Chain for Flag {
    fn levels(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }
    fn side(&self) -> usize {
        self.n
    }
    fn adjoins_endpoints(&self) -> bool {
        false
    }
}

/// True iff the value set of `ρ` (resp. `δ`) is all of `{0, 1/n, …, 1}`;
/// nests are compared with `0` and `1` adjoined.
pub fn is_maximal<C: Chain>(chain: &C) -> bool {
    let n = chain.side();
    let mut seen = vec![false; n + 1];
    for k in chain.levels() {
        seen[k] = true;
    }
    if chain.adjoins_endpoints() {
        seen[0] = true;
        seen[n] = true;
    }
    seen.iter().all(|&b| b)
}

/// Points `0 = e₀ ≤ e₁ ≤ … ≤ e_m = 1` drawn from a nest with endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartition {
    nest: Nest,
    points: Vec<Idempotent>,
}

impl IntervalPartition {
    pub fn from_points(nest: &Nest, points: Vec<Idempotent>) -> Result<Self> {
        let closed = nest.with_endpoints();
        let (f, n) = (nest.field, nest.n);
        if points.first() != Some(&Idempotent::zero(f, n)) || points.last() != Some(&Idempotent::one(f, n)) {
            return Err(Error::Order("interval partitions start at 0 and end at 1".into()));
        }
        if let Some(e) = points.iter().find(|e| !closed.contains(e)) {
            return Err(Error::Membership(format!("{e} is not in the nest")));
        }
        if points.windows(2).any(|w| !w[0].le(&w[1])) {
            return Err(Error::Order("interval partition points must increase".into()));
        }
        Ok(IntervalPartition { nest: nest.clone(), points })
    }

    /// All members of the nest with endpoints adjoined.
    pub fn finest(nest: &Nest) -> Self {
        IntervalPartition { nest: nest.clone(), points: nest.with_endpoints().elements }
    }

    /// `(0, 1)`.
    pub fn trivial(nest: &Nest) -> Self {
        let (f, n) = (nest.field, nest.n);
        IntervalPartition { nest: nest.clone(), points: vec![Idempotent::zero(f, n), Idempotent::one(f, n)] }
    }

    pub fn nest(&self) -> &Nest {
        &self.nest
    }

    pub fn points(&self) -> &[Idempotent] {
        &self.points
    }

    pub fn intervals(&self) -> usize {
        self.points.len() - 1
    }

    /// `ēᵢ = eᵢ − eᵢ₋₁` for `i = 1..=m`.
    pub fn differences(&self) -> Vec<MatrixFp> {
        self.points.windows(2).map(|w| w[1].matrix() - w[0].matrix()).collect()
    }

    /// Whether every point of `self` is a point of `other`.
    pub fn is_refined_by(&self, other: &IntervalPartition) -> bool {
        self.points.iter().all(|e| other.points.contains(e))
    }
}

pub fn lambda_map(nest: &Nest) -> Flag {
    Flag {
        field: nest.field,
        n: nest.n,
        subspaces: nest.elements.iter().map(Idempotent::image).collect(),
    }
}

/// For `e₀ ≤ e₁` and `e₀R ⊆ I ⊆ e₁R`, an idempotent `f` with
/// `e₀ ≤ f ≤ e₁` and `fR = I`, built as `f = e₀ + f₀(e₁ − e₀)` where `f₀`
/// projects onto `(e₁ − e₀)I` along its greedy complement.
pub fn intermediate_idempotent(e0: &Idempotent, e1: &Idempotent, i: &Subspace) -> Result<Idempotent> {
    let field = e0.field();
    let n = e0.n();
    if e1.field() != field || e1.n() != n || i.field() != field || i.ambient_dim() != n {
        return Err(Error::Dimension("intermediate idempotent over mismatched rings".into()));
    }
    if !e0.le(e1) {
        return Err(Error::Order(format!("{e0} ≰ {e1}")));
    }
    if !e0.image().is_subspace_of(i) || !i.is_subspace_of(&e1.image()) {
        return Err(Error::Order("need e0·R ⊆ I ⊆ e1·R".into()));
    }
    let diff = e1.matrix() - e0.matrix();
    let w = i.image_under(&diff);
    let c = w.greedy_complement();
    let mut cols: Vec<Vec<u8>> = w.basis().to_vec();
    cols.extend(c.basis().iter().cloned());
    let basis = MatrixFp::from_columns(field, &cols);
    let inv = basis.inverse().expect("a basis joined with its complement is invertible");
    let mut kept = w.basis().to_vec();
    kept.resize(n, vec![0u8; n]);
    let f0 = &MatrixFp::from_columns(field, &kept) * &inv;
    let f = e0.matrix() + &(&f0 * &diff);
    let f = Idempotent::new(f).map_err(|_| Error::Structure("intermediate construction not idempotent".into()))?;
    if !e0.le(&f) || !f.le(e1) || f.image() != *i {
        return Err(Error::Structure("intermediate construction failed its checks".into()));
    }
    Ok(f)
}

/// Lifts a flag to a nest with `Λ(nest) = flag`, bottom-up.
pub fn nest_from_flag(flag: &Flag) -> Result<Nest> {
    let (f, n) = (flag.field, flag.n);
    let one = Idempotent::one(f, n);
    let mut prev = Idempotent::zero(f, n);
    let mut out = Vec::with_capacity(flag.len());
    for s in &flag.subspaces {
        let e = intermediate_idempotent(&prev, &one, s)?;
        out.push(e.clone());
        prev = e;
    }
    Ok(Nest { field: f, n, elements: out })
}

/// Returns the nest itself when maximal; otherwise adjoins `0, 1` and fills
/// each rank gap `e < e'` along the tower spanned by `e'R`'s canonical basis.
pub fn complete_to_maximal_nest(nest: &Nest) -> Result<Nest> {
    if is_maximal(nest) {
        return Ok(nest.clone());
    }
    let closed = nest.with_endpoints();
    let mut out = vec![closed.elements[0].clone()];
    for w in closed.elements.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let lo_img = lo.image();
        let ext = lo_img.extension_vectors(hi.image().basis());
        let mut prev = lo.clone();
        let mut span = lo_img.basis().to_vec();
        for v in ext.iter().take(ext.len().saturating_sub(1)) {
            span.push(v.clone());
            let target = Subspace::span(nest.field, nest.n, &span)?;
            let e = intermediate_idempotent(&prev, hi, &target)?;
            out.push(e.clone());
            prev = e;
        }
        out.push(hi.clone());
    }
    Ok(Nest { field: nest.field, n: nest.n, elements: out })
}
