//! Power spans `N^(k)`, nilpotent groups `1 + N`, and the Levitzki radical of
//! finite-dimensional matrix algebras.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::commutator;
use crate::lattice::Subspace;
use crate::linalg;
use crate::matrix::MatrixFp;
use crate::span::MatrixSpan;

/// Largest algebra dimension accepted by [`levitzki_radical`].
pub const MAX_ALGEBRA_DIM: usize = 36;
/// Largest group `1 + N` whose lower central series is computed by brute force.
pub const MAX_UNIPOTENT_ORDER: usize = 1 << 12;
/// Elementwise radical search is used up to this many algebra elements.
const ELEMENTWISE_LIMIT: u64 = 1 << 12;

/// A span of matrices closed under multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubringSpan {
    span: MatrixSpan,
    unital: bool,
}

impl SubringSpan {
    pub fn new(field: FieldSpec, n: usize, basis: &[MatrixFp], unital: bool) -> Result<Self> {
        let mut gens = basis.to_vec();
        if unital {
            gens.push(MatrixFp::identity(field, n));
        }
        let span = MatrixSpan::new(field, n, &gens)?;
        if !span.is_closed_under_product() {
            return Err(Error::Structure("span is not closed under multiplication".into()));
        }
        Ok(SubringSpan { span, unital })
    }

    pub fn from_span(span: MatrixSpan, unital: bool) -> Result<Self> {
        let b = span.basis();
        SubringSpan::new(span.field(), span.n(), &b, unital)
    }

    fn trusted(span: MatrixSpan) -> Self {
        SubringSpan { span, unital: false }
    }

    pub fn span(&self) -> &MatrixSpan {
        &self.span
    }

    pub fn basis(&self) -> Vec<MatrixFp> {
        self.span.basis()
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn field(&self) -> FieldSpec {
        self.span.field()
    }

    pub fn n(&self) -> usize {
        self.span.n()
    }

    pub fn contains(&self, m: &MatrixFp) -> bool {
        self.span.contains(m)
    }
}

/// `N^(k)`: span of all `k`-fold products.
pub fn power_span(n: &SubringSpan, k: usize) -> Result<SubringSpan> {
    Ok(SubringSpan::trusted(n.span.power(k)?))
}

pub fn nilpotency_order(n: &SubringSpan) -> Option<usize> {
    n.span.nilpotency_order()
}

fn is_nilpotent(a: &MatrixFp) -> bool {
    a.pow(a.n() as u64).is_zero()
}

/// `(1 − a)⁻¹ = Σ_{i<n} aⁱ` for nilpotent `a`.
pub fn geometric_inverse(a: &MatrixFp) -> Result<MatrixFp> {
    if !is_nilpotent(a) {
        return Err(Error::Domain(format!("{a} is not nilpotent")));
    }
    let n = a.n();
    let mut term = MatrixFp::identity(a.field(), n);
    let mut sum = term.clone();
    for _ in 1..n {
        term = &term * a;
        sum = &sum + &term;
    }
    Ok(sum)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClass {
    /// Nilpotency class of `1 + N`.
    pub class: usize,
    /// Orders of `γ₁ ⊇ γ₂ ⊇ … ⊇ γ_{c+1} = 1` in the lower central series.
    pub lower_central_orders: Vec<usize>,
    /// Orders of `1 + N^(k)` for `k = 1, …` until the trivial group.
    pub power_orders: Vec<usize>,
}

fn unipotent_elements(n: &MatrixSpan) -> Result<Vec<MatrixFp>> {
    let id = MatrixFp::identity(n.field(), n.n());
    Ok(n.elements()?.iter().map(|x| &id + x).collect())
}

/// Class of `1 + N` by brute-force lower central series, after checking
/// that commutators of `1 + N` with `1 + N^(k)` land in `1 + N^(k+1)`.
pub fn nilpotent_group_class(n: &SubringSpan) -> Result<GroupClass> {
    let order = nilpotency_order(n).ok_or_else(|| Error::Domain("N is not nilpotent".into()))?;
    let p = n.field().p() as u64;
    if p.checked_pow(n.dim() as u32).is_none_or(|s| s > MAX_UNIPOTENT_ORDER as u64) {
        return Err(Error::Scale { size: n.dim(), max: MAX_UNIPOTENT_ORDER.ilog(p as usize) as usize });
    }
    let powers: Vec<MatrixSpan> = (1..=order).map(|k| n.span.power(k)).collect::<Result<_>>()?;
    let power_orders = powers.iter().map(|s| p.pow(s.dim() as u32) as usize).collect();
    let g = unipotent_elements(&n.span)?;
    let id = MatrixFp::identity(n.field(), n.n());
    for w in powers.windows(2) {
        for x in &g {
            for y in unipotent_elements(&w[0])? {
                let c = &commutator(x, &y) - &id;
                if !w[1].contains(&c) {
                    return Err(Error::Structure("commutator escaped the next power".into()));
                }
            }
        }
    }
    let lower = lower_central_series(&g);
    Ok(GroupClass { class: lower.len() - 1, lower_central_orders: lower, power_orders })
}

/// Orders of the lower central series of the finite group with the given
/// elements, ending at the trivial group.
pub fn lower_central_series(g: &[MatrixFp]) -> Vec<usize> {
    let mut orders = vec![g.len()];
    let mut cur: Vec<MatrixFp> = g.to_vec();
    while cur.len() > 1 {
        let comms: BTreeSet<MatrixFp> = g.iter().flat_map(|x| cur.iter().map(move |y| commutator(x, y))).collect();
        let next = generated_subgroup(comms.into_iter().collect(), &g[0]);
        if next.len() == cur.len() {
            break;
        }
        orders.push(next.len());
        cur = next;
    }
    orders
}

fn generated_subgroup(gens: Vec<MatrixFp>, any: &MatrixFp) -> Vec<MatrixFp> {
    let id = MatrixFp::identity(any.field(), any.n());
    let mut set: BTreeSet<MatrixFp> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = &x * g;
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Two-sided ideal generated by `a` inside the algebra spanned by `ring`.
fn generated_ideal(a: &MatrixFp, ring: &[MatrixFp]) -> MatrixSpan {
    let mut gens = vec![a.clone()];
    for x in ring {
        let xa = x * a;
        gens.push(xa.clone());
        gens.push(a * x);
        for y in ring {
            gens.push(&xa * y);
        }
    }
    MatrixSpan::new(a.field(), a.n(), &gens).expect("consistent shapes")
}

/// The Levitzki radical (largest nilpotent two-sided ideal).
pub fn levitzki_radical(alg: &SubringSpan) -> Result<SubringSpan> {
    if alg.dim() > MAX_ALGEBRA_DIM {
        return Err(Error::Scale { size: alg.dim(), max: MAX_ALGEBRA_DIM });
    }
    let small = (alg.field().p() as u64).checked_pow(alg.dim() as u32).is_some_and(|s| s <= ELEMENTWISE_LIMIT);
    let rad = if small { radical_elementwise(alg)? } else { radical_by_composition_series(alg) };
    if !rad.is_two_sided_ideal_of(&alg.span) || rad.nilpotency_order().is_none() {
        return Err(Error::Structure("radical failed its ideal or nilpotency check".into()));
    }
    Ok(SubringSpan::trusted(rad))
}

/// Sum of the ideals generated by single elements whose ideal is nilpotent.
pub fn radical_elementwise(alg: &SubringSpan) -> Result<MatrixSpan> {
    let ring = alg.basis();
    let mut rad = MatrixSpan::zero(alg.field(), alg.n());
    for a in alg.span.elements()? {
        if rad.contains(&a) {
            continue;
        }
        let ideal = generated_ideal(&a, &ring);
        if ideal.nilpotency_order().is_some() {
            rad = rad.join(&ideal);
        }
    }
    Ok(rad)
}

/// Elements acting as zero on every composition factor of `F_p^n` viewed as
/// a module over the algebra with 1 adjoined.
pub fn radical_by_composition_series(alg: &SubringSpan) -> MatrixSpan {
    let (f, n) = (alg.field(), alg.n());
    let ring = alg.basis();
    let series = composition_series(f, n, &ring);
    // unknowns: coefficients of a = Σ c_k ring[k]
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for w in series.windows(2) {
        let ann = w[0].annihilator();
        for v in w[1].basis() {
            let imgs: Vec<Vec<u8>> = ring.iter().map(|b| b.apply(v)).collect();
            for u in ann.basis() {
                rows.push(imgs.iter().map(|img| dot(f, u, img)).collect());
            }
        }
    }
    let coeffs =
        if rows.is_empty() { identity_rows(ring.len()) } else { linalg::kernel(f, &rows, ring.len()) };
    let mats: Vec<MatrixFp> = coeffs
        .iter()
        .map(|c| {
            ring.iter().zip(c).fold(MatrixFp::zero(f, n), |acc, (b, &ck)| &acc + &b.scale(ck))
        })
        .collect();
    MatrixSpan::new(f, n, &mats).expect("consistent shapes")
}

fn identity_rows(k: usize) -> Vec<Vec<u8>> {
    (0..k).map(|i| (0..k).map(|j| u8::from(i == j)).collect()).collect()
}

fn dot(f: FieldSpec, u: &[u8], v: &[u8]) -> u8 {
    u.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Submodule generated by `start` under the algebra spanned by `ring`, 1 adjoined.
fn submodule(f: FieldSpec, n: usize, ring: &[MatrixFp], start: &Subspace) -> Subspace {
    let mut cur = start.clone();
    loop {
        let mut vs = cur.basis().to_vec();
        for b in ring {
            vs.extend(cur.basis().iter().map(|v| b.apply(v)));
        }
        let next = Subspace::span(f, n, &vs).expect("consistent lengths");
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// `0 = V₀ ⊂ V₁ ⊂ … ⊂ V_m = F_p^n` with simple quotients, each step the
/// smallest cyclic extension, scanning vectors of the greedy complement.
fn composition_series(f: FieldSpec, n: usize, ring: &[MatrixFp]) -> Vec<Subspace> {
    let full = Subspace::full(f, n);
    let mut cur = Subspace::zero(f, n);
    let mut series = vec![cur.clone()];
    let p = f.p() as u64;
    while cur != full {
        let comp = cur.greedy_complement();
        let k = comp.dim();
        let mut best: Option<Subspace> = None;
        for code in 1..p.pow(k as u32) {
            let mut v = vec![0u8; n];
            let mut c = code;
            for b in comp.basis() {
                let coef = (c % p) as u8;
                c /= p;
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(coef, y));
                }
            }
            let mut gens = cur.basis().to_vec();
            gens.push(v);
            let start = Subspace::span(f, n, &gens).expect("consistent lengths");
            let sub = submodule(f, n, ring, &start);
            if best.as_ref().is_none_or(|b| sub.dim() < b.dim()) {
                let minimal = sub.dim() == cur.dim() + 1;
                best = Some(sub);
                if minimal {
                    break;
                }
            }
        }
        cur = best.expect("a proper submodule has a cyclic extension");
        series.push(cur.clone());
    }
    series
}
