//! Stabilizer rings `R_E`, block projections, nest envelopes, `ψ`-folds,
//! the hull `Γ_S` and triangularization.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::FiniteMatrixGroup;
use crate::lattice::Subspace;
use crate::linalg;
use crate::matrix::MatrixFp;
use crate::nest::{Flag, Idempotent, IntervalPartition, Nest};
use crate::poly::{self, PolyFp};
use crate::rank::MAX_POLY_SIDE;
use crate::span::MatrixSpan;

/// Largest side for which `[G]_E` is materialized.
pub const MAX_FULL_ENVELOPE_SIDE: usize = 4;

/// `eae = ae`, i.e. `a` maps `eR` into itself.
pub fn stabilizes(a: &MatrixFp, e: &MatrixFp) -> bool {
    let ae = a * e;
    &(e * &ae) == &ae
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestAlgebra {
    nest: Nest,
    span: MatrixSpan,
}

impl NestAlgebra {
    pub fn nest(&self) -> &Nest {
        &self.nest
    }

    pub fn basis(&self) -> Vec<MatrixFp> {
        self.span.basis()
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span(&self) -> &MatrixSpan {
        &self.span
    }

    pub fn contains(&self, a: &MatrixFp) -> bool {
        a.field() == self.nest.field()
            && a.n() == self.nest.n()
            && self.nest.elements().iter().all(|e| stabilizes(a, e.matrix()))
    }

    /// The unit group `GL(R_E)`, listed exhaustively.
    pub fn unit_group(&self) -> Result<FiniteMatrixGroup> {
        let units: Vec<MatrixFp> = self.span.elements()?.into_iter().filter(MatrixFp::is_invertible).collect();
        Ok(FiniteMatrixGroup::from_trusted(self.nest.field(), self.nest.n(), units))
    }
}

/// Solves the linear system `eae − ae = 0` for every member `e`.
pub fn stabilizer_basis(nest: &Nest) -> NestAlgebra {
    let (f, n) = (nest.field(), nest.n());
    let nn = n * n;
    // column k of the system is the image of the k-th matrix unit
    let images: Vec<Vec<u8>> = (0..nn)
        .map(|k| {
            let u = MatrixFp::unit(f, n, k / n, k % n);
            nest.elements()
                .iter()
                .flat_map(|e| {
                    let ae = &u * e.matrix();
                    (&(e.matrix() * &ae) - &ae).to_flat()
                })
                .collect()
        })
        .collect();
    let rows: Vec<Vec<u8>> = (0..nest.len() * nn).map(|r| images.iter().map(|col| col[r]).collect()).collect();
    let sols = if rows.is_empty() {
        (0..nn).map(|k| MatrixFp::unit(f, n, k / n, k % n).to_flat()).collect()
    } else {
        linalg::kernel(f, &rows, nn)
    };
    let mats: Vec<MatrixFp> = sols.iter().map(|v| MatrixFp::from_flat(f, n, v)).collect();
    let span = MatrixSpan::new(f, n, &mats).expect("consistent shapes");
    NestAlgebra { nest: nest.clone(), span }
}

/// Inverse of `a` when `a ∈ GL(R_E)`; the inverse is checked to lie in `R_E`.
pub fn is_unit_in_stabilizer(a: &MatrixFp, alg: &NestAlgebra) -> Option<MatrixFp> {
    if !alg.contains(a) {
        return None;
    }
    let inv = a.inverse()?;
    assert!(alg.contains(&inv), "inverse of a unit of R_E left R_E");
    Some(inv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub blocks: Vec<MatrixFp>,
    pub reassembled: MatrixFp,
}

/// `π(a) = (ēᵢ a ēᵢ)ᵢ` and `ι(π(a)) = Σ ēᵢ a ēᵢ`.
pub fn project_inject(a: &MatrixFp, part: &IntervalPartition) -> Result<Projection> {
    let nest = part.nest();
    a.same_shape(&MatrixFp::zero(nest.field(), nest.n()))?;
    if !nest.elements().iter().all(|e| stabilizes(a, e.matrix())) {
        return Err(Error::Membership(format!("{a} is not in the nest algebra")));
    }
    let blocks = project(a, &part.differences());
    let reassembled = inject(nest.field(), nest.n(), &blocks);
    Ok(Projection { blocks, reassembled })
}

fn project(a: &MatrixFp, diffs: &[MatrixFp]) -> Vec<MatrixFp> {
    diffs.iter().map(|d| &(d * a) * d).collect()
}

fn inject(field: FieldSpec, n: usize, blocks: &[MatrixFp]) -> MatrixFp {
    blocks.iter().fold(MatrixFp::zero(field, n), |acc, b| &acc + b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelNilpotency {
    pub kernel: MatrixSpan,
    pub order: usize,
}

/// `Ker π = {a ∈ R_E : ēᵢaēᵢ = 0 ∀i}` and its exact nilpotency order.
pub fn kernel_nilpotency(part: &IntervalPartition) -> KernelNilpotency {
    let kernel = projection_kernel(part);
    let order = kernel.nilpotency_order().expect("the kernel of π is nilpotent");
    debug_assert!(order <= part.intervals().max(1));
    KernelNilpotency { kernel, order }
}

fn projection_kernel(part: &IntervalPartition) -> MatrixSpan {
    let nest = part.nest();
    let (f, n) = (nest.field(), nest.n());
    let nn = n * n;
    let diffs = part.differences();
    let images: Vec<Vec<u8>> = (0..nn)
        .map(|k| {
            let u = MatrixFp::unit(f, n, k / n, k % n);
            let mut col: Vec<u8> = nest
                .elements()
                .iter()
                .flat_map(|e| {
                    let ae = &u * e.matrix();
                    (&(e.matrix() * &ae) - &ae).to_flat()
                })
                .collect();
            for d in &diffs {
                col.extend((&(d * &u) * d).to_flat());
            }
            col
        })
        .collect();
    let nrows = images[0].len();
    let rows: Vec<Vec<u8>> = (0..nrows).map(|r| images.iter().map(|c| c[r]).collect()).collect();
    let sols = linalg::kernel(f, &rows, nn);
    let mats: Vec<MatrixFp> = sols.iter().map(|v| MatrixFp::from_flat(f, n, v)).collect();
    MatrixSpan::new(f, n, &mats).expect("consistent shapes")
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub group: FiniteMatrixGroup,
    pub kernel_order: usize,
    pub block_orders: Vec<usize>,
}

impl Envelope {
    /// `|Ker π| · ∏ |ēᵢGēᵢ|`.
    pub fn predicted_order(&self) -> usize {
        self.kernel_order * self.block_orders.iter().product::<usize>()
    }
}

fn check_in_units(g: &FiniteMatrixGroup, nest: &Nest) -> Result<()> {
    if g.field() != nest.field() || g.n() != nest.n() {
        return Err(Error::Dimension("group and nest live in different rings".into()));
    }
    if let Some(x) = g.elements().iter().find(|x| !nest.elements().iter().all(|e| stabilizes(x, e.matrix()))) {
        return Err(Error::Membership(format!("{x} is not in GL(R_E)")));
    }
    Ok(())
}

/// `[G]_{E,e} = (1 + Ker π)·ι(∏ ēᵢGēᵢ)`, verified to be a group.
pub fn envelope_group(g: &FiniteMatrixGroup, part: &IntervalPartition) -> Result<Envelope> {
    let nest = part.nest();
    check_in_units(g, nest)?;
    let (f, n) = (nest.field(), nest.n());
    let diffs = part.differences();
    let block_sets: Vec<Vec<MatrixFp>> = diffs.iter().map(|d| g.map_set(|x| &(d * x) * d)).collect();
    let block_orders = block_sets.iter().map(Vec::len).collect();
    let mut sections = vec![MatrixFp::zero(f, n)];
    for blocks in &block_sets {
        sections = sections.iter().flat_map(|s| blocks.iter().map(move |b| s + b)).collect();
    }
    let kernel = projection_kernel(part).elements()?;
    let id = MatrixFp::identity(f, n);
    let mut set = BTreeSet::new();
    for k in &kernel {
        let u = &id + k;
        for s in &sections {
            set.insert(&u * s);
        }
    }
    let group = FiniteMatrixGroup::from_elements(f, n, set.into_iter().collect())?;
    Ok(Envelope { group, kernel_order: kernel.len(), block_orders })
}

/// `[G]_E`, realized by the finest partition of the nest.
pub fn full_envelope(g: &FiniteMatrixGroup, nest: &Nest) -> Result<Envelope> {
    if nest.n() > MAX_FULL_ENVELOPE_SIDE {
        return Err(Error::Scale { size: nest.n(), max: MAX_FULL_ENVELOPE_SIDE });
    }
    envelope_group(g, &IntervalPartition::finest(nest))
}

/// `ψ_e(a) = eae + 1 − e` for `a ∈ GL(R_E)` and `e ∈ E ∪ {0, 1}`.
pub fn psi_fold(a: &MatrixFp, e: &Idempotent, alg: &NestAlgebra) -> Result<MatrixFp> {
    if !alg.nest().with_endpoints().contains(e) {
        return Err(Error::Membership(format!("{e} is not in the nest")));
    }
    if is_unit_in_stabilizer(a, alg).is_none() {
        return Err(Error::Membership(format!("{a} is not in GL(R_E)")));
    }
    Ok(psi(a, e.matrix()))
}

/// `eae + 1 − e` without membership checks.
pub fn psi(a: &MatrixFp, e: &MatrixFp) -> MatrixFp {
    let id = MatrixFp::identity(a.field(), a.n());
    &(&(e * a) * e) + &(&id - e)
}

/// The hull operator `Γ_S(I) = Σ_{t ∈ T} tI` for a basis `T` of the
/// unital subalgebra generated by the supplied matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    algebra: MatrixSpan,
}

impl Hull {
    pub fn new(field: FieldSpec, n: usize, s_basis: &[MatrixFp]) -> Result<Self> {
        let mut gens = s_basis.to_vec();
        gens.push(MatrixFp::identity(field, n));
        let algebra = MatrixSpan::new(field, n, &gens)?.multiplicative_closure();
        Ok(Hull { algebra })
    }

    /// `dim S` after adjoining 1 and closing under products.
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &MatrixSpan {
        &self.algebra
    }

    pub fn apply(&self, i: &Subspace) -> Subspace {
        self.algebra.basis().iter().fold(Subspace::zero(i.field(), i.ambient_dim()), |acc, t| acc.join(&i.image_under(t)))
    }
}

pub fn gamma_hull(s_basis: &[MatrixFp], i: &Subspace) -> Result<Subspace> {
    Ok(Hull::new(i.field(), i.ambient_dim(), s_basis)?.apply(i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Triangularization {
    /// A maximal `a`-invariant flag, zero and full space included.
    Flag(Flag),
    /// No invariant line in some quotient; carries an irreducible factor of
    /// the characteristic polynomial of that quotient.
    NonSplit { factor: PolyFp },
}

/// Builds an invariant maximal flag one line at a time: in the quotient by
/// the current invariant subspace, take the smallest eigenvalue and the
/// first kernel vector of the reduced system.
pub fn triangularize(a: &MatrixFp) -> Result<Triangularization> {
    let (f, n) = (a.field(), a.n());
    if n > MAX_POLY_SIDE {
        return Err(Error::Scale { size: n, max: MAX_POLY_SIDE });
    }
    let mut v = Subspace::zero(f, n);
    let mut chain = vec![v.clone()];
    while v.dim() < n {
        let comp = v.greedy_complement();
        let mut cols = v.basis().to_vec();
        cols.extend(comp.basis().iter().cloned());
        let p = MatrixFp::from_columns(f, &cols);
        let conj = &(&p.inverse().expect("basis with complement") * a) * &p;
        let k = v.dim();
        let m = n - k;
        let quot = MatrixFp::from_fn(f, m, |i, j| conj.get(k + i, k + j));
        let cp = poly::char_poly(&quot);
        let Some(&(lambda, _)) = cp.roots_with_multiplicity().first() else {
            let factor = cp.nonlinear_irreducible_factor().expect("rootless polynomial of positive degree");
            return Ok(Triangularization::NonSplit { factor });
        };
        let shifted: Vec<Vec<u8>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { f.sub(quot.get(i, j), lambda) } else { quot.get(i, j) }).collect())
            .collect();
        let x = linalg::kernel(f, &shifted, m).into_iter().next().expect("eigenvalue has a kernel vector");
        let mut w = vec![0u8; n];
        for (c, &xj) in comp.basis().iter().zip(&x) {
            for (wi, &ci) in w.iter_mut().zip(c) {
                *wi = f.add(*wi, f.mul(xj, ci));
            }
        }
        let mut span = v.basis().to_vec();
        span.push(w);
        v = Subspace::span(f, n, &span)?;
        debug_assert!(v.is_invariant_under(a));
        chain.push(v.clone());
    }
    Ok(Triangularization::Flag(Flag::new(f, n, chain)?))
}

/// Exhaustive search for a maximal flag of `a`-invariant subspaces.
pub fn invariant_maximal_flag_exists(a: &MatrixFp) -> bool {
    let (f, n) = (a.field(), a.n());
    let invariant: Vec<Subspace> =
        Subspace::enumerate_all(f, n).into_iter().filter(|s| s.is_invariant_under(a)).collect();
    fn extend(cur: &Subspace, n: usize, pool: &[Subspace]) -> bool {
        if cur.dim() == n {
            return true;
        }
        pool.iter()
            .filter(|s| s.dim() == cur.dim() + 1 && cur.is_subspace_of(s))
            .any(|s| extend(s, n, pool))
    }
    extend(&Subspace::zero(f, n), n, &invariant)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn m2(rows: [[i64; 2]; 2]) -> MatrixFp {
        MatrixFp::new(f2(), &rows.map(|r| r.to_vec())).unwrap()
    }

    fn e11_nest() -> Nest {
        Nest::new(f2(), 2, vec![Idempotent::leading(f2(), 2, 1)]).unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let alg = stabilizer_basis(&e11_nest());
        assert_eq!(alg.dim(), 3);
        assert!(alg.contains(&m2([[1, 1], [0, 1]])));
        assert!(!alg.contains(&m2([[1, 0], [1, 1]])));
        assert_eq!(stabilizer_basis(&Nest::empty(f2(), 3)).dim(), 9);
        assert_eq!(stabilizer_basis(&Nest::standard(f2(), 3)).dim(), 6);
    }

    #[test]
    fn units_in_stabilizer() {
        let alg = stabilizer_basis(&e11_nest());
        let u = m2([[1, 1], [0, 1]]);
        assert_eq!(is_unit_in_stabilizer(&u, &alg), Some(u.clone()));
        assert!(is_unit_in_stabilizer(&MatrixFp::identity(f2(), 2), &alg).is_some());
        assert_eq!(is_unit_in_stabilizer(&m2([[1, 0], [1, 1]]), &alg), None);
    }

    #[test]
    fn projection_examples() {
        let f = FieldSpec::new(5).unwrap();
        let nest = Nest::new(f, 2, vec![Idempotent::leading(f, 2, 1)]).unwrap();
        let part = IntervalPartition::finest(&nest);
        let a = MatrixFp::new(f, &[vec![2, 3], vec![0, 4]]).unwrap();
        let pr = project_inject(&a, &part).unwrap();
        assert_eq!(pr.blocks, vec![MatrixFp::diag(f, &[2, 0]), MatrixFp::diag(f, &[0, 4])]);
        assert_eq!(pr.reassembled, MatrixFp::diag(f, &[2, 4]));
        let lower = MatrixFp::new(f, &[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(matches!(project_inject(&lower, &part), Err(Error::Membership(_))));
    }

    #[test]
    fn kernel_orders() {
        let f = f2();
        let triv = kernel_nilpotency(&IntervalPartition::trivial(&Nest::empty(f, 2)));
        assert!(triv.kernel.is_zero());
        assert_eq!(triv.order, 1);
        let full3 = kernel_nilpotency(&IntervalPartition::finest(&Nest::standard(f, 3)));
        assert_eq!((full3.kernel.dim(), full3.order), (3, 3));
        let two = kernel_nilpotency(&IntervalPartition::finest(&e11_nest()));
        assert_eq!(two.kernel, MatrixSpan::new(f, 2, &[MatrixFp::unit(f, 2, 0, 1)]).unwrap());
        assert_eq!(two.order, 2);
    }

    #[test]
    fn envelope_of_trivial_group() {
        let f = f2();
        let env = envelope_group(&FiniteMatrixGroup::trivial(f, 2), &IntervalPartition::finest(&e11_nest())).unwrap();
        assert_eq!(env.group.order(), 2);
        assert!(env.group.contains(&m2([[1, 1], [0, 1]])));
        let env3 = full_envelope(&FiniteMatrixGroup::trivial(f, 3), &Nest::standard(f, 3)).unwrap();
        assert_eq!(env3.group.order(), 8);
        assert_eq!(env3.predicted_order(), 8);
    }

    #[test]
    fn psi_examples() {
        let alg = stabilizer_basis(&e11_nest());
        let a = m2([[1, 1], [0, 1]]);
        let (f, n) = (f2(), 2);
        assert!(psi_fold(&a, &Idempotent::zero(f, n), &alg).unwrap().is_identity());
        assert_eq!(psi_fold(&a, &Idempotent::one(f, n), &alg).unwrap(), a);
        assert!(psi_fold(&a, &Idempotent::leading(f, n, 1), &alg).unwrap().is_identity());
        assert!(psi_fold(&m2([[1, 0], [1, 1]]), &Idempotent::one(f, n), &alg).is_err());
    }

    #[test]
    fn hull_examples() {
        let f = f2();
        let e12 = MatrixFp::unit(f, 2, 0, 1);
        let e1 = Subspace::coordinate(f, 2, &[0]);
        let e2 = Subspace::coordinate(f, 2, &[1]);
        assert_eq!(gamma_hull(&[], &e2).unwrap(), e2);
        assert_eq!(gamma_hull(&[e12.clone()], &e2).unwrap(), Subspace::full(f, 2));
        assert_eq!(gamma_hull(&[e12], &e1).unwrap(), e1);
    }

    #[test]
    fn triangularize_examples() {
        let f = f2();
        let nil = triangularize(&m2([[0, 1], [0, 0]])).unwrap();
        assert_eq!(nil, Triangularization::Flag(Flag::standard(f, 2)));
        let swap = triangularize(&m2([[0, 1], [1, 0]])).unwrap();
        let diag = Subspace::span(f, 2, &[vec![1, 1]]).unwrap();
        let want = Flag::new(f, 2, vec![Subspace::zero(f, 2), diag, Subspace::full(f, 2)]).unwrap();
        assert_eq!(swap, Triangularization::Flag(want));
        let comp = triangularize(&m2([[0, 1], [1, 1]])).unwrap();
        assert_eq!(comp, Triangularization::NonSplit { factor: PolyFp::new(f, &[1, 1, 1]) });
    }
}
