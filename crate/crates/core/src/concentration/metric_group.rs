//! Finite groups given by Cayley tables, carrying an exact right-invariant
//! metric stored as the norm `N(z) = d(z, e)`, so that `d(x, y) = N(xy⁻¹)`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{one, Q};

/// A finite set with an exact (pseudo-)metric.
pub trait FiniteMetricSpace {
    fn size(&self) -> usize;
    fn dist(&self, i: usize, j: usize) -> &Q;

    /// Largest distance between two points.
    fn diameter(&self) -> Q {
        let mut best = Q::zero();
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.dist(i, j) > &best {
                    best = self.dist(i, j).clone();
                }
            }
        }
        best
    }
}

/// An explicit distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTable {
    d: Vec<Vec<Q>>,
}

impl MetricTable {
    /// Checks zero diagonal, symmetry, nonnegativity and the triangle inequality.
    pub fn new(d: Vec<Vec<Q>>) -> Result<Self> {
        let k = d.len();
        if d.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension("distance matrix must be square".into()));
        }
        for i in 0..k {
            if !d[i][i].is_zero() {
                return Err(Error::Structure(format!("d({i},{i}) is not zero")));
            }
            for j in 0..k {
                if d[i][j].is_negative() || d[i][j] != d[j][i] {
                    return Err(Error::Structure(format!("d({i},{j}) is negative or asymmetric")));
                }
                for m in 0..k {
                    if d[i][m] > &d[i][j] + &d[j][m] {
                        return Err(Error::Structure(format!("triangle inequality fails at ({i},{j},{m})")));
                    }
                }
            }
        }
        Ok(MetricTable { d })
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.d
    }
}

impl FiniteMetricSpace for MetricTable {
    fn size(&self) -> usize {
        self.d.len()
    }
    fn dist(&self, i: usize, j: usize) -> &Q {
        &self.d[i][j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricGroup {
    labels: Vec<String>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
    norm: Vec<Q>,
    bi_invariant: bool,
}

impl FiniteMetricGroup {
    /// Validates the group axioms and a full distance matrix, which must be
    /// right-invariant: `d(xg, yg) = d(x, y)`.
    pub fn new(labels: Vec<String>, table: Vec<Vec<u32>>, metric: Vec<Vec<Q>>) -> Result<Self> {
        let (flat, inverse, identity) = validate_group(&labels, &table)?;
        let k = labels.len();
        if metric.len() != k || metric.iter().any(|r| r.len() != k) {
            return Err(Error::Dimension(format!("metric must be {k}x{k}")));
        }
        let norm: Vec<Q> = (0..k).map(|z| metric[z][identity as usize].clone()).collect();
        let mut g = FiniteMetricGroup { labels, table: flat, inverse, identity, norm, bi_invariant: false };
        for x in 0..k {
            for y in 0..k {
                if metric[x][y] != *g.dist(x, y) {
                    return Err(Error::Structure(format!(
                        "metric is not right-invariant at ({}, {})",
                        g.labels[x], g.labels[y]
                    )));
                }
            }
        }
        g.check_norm()?;
        g.bi_invariant = g.detect_bi_invariance();
        Ok(g)
    }

    /// Validates the group axioms and a norm `N` with `N(e) = 0`,
    /// `N(z⁻¹) = N(z) ≥ 0` and `N(uw) ≤ N(u) + N(w)`.
    pub fn from_norm(labels: Vec<String>, table: Vec<Vec<u32>>, norm: Vec<Q>) -> Result<Self> {
        let (flat, inverse, identity) = validate_group(&labels, &table)?;
        if norm.len() != labels.len() {
            return Err(Error::Dimension("norm length must equal the group order".into()));
        }
        let mut g = FiniteMetricGroup { labels, table: flat, inverse, identity, norm, bi_invariant: false };
        g.check_norm()?;
        g.bi_invariant = g.detect_bi_invariance();
        Ok(g)
    }

    /// Assembles a group from parts known to be valid.
    pub(crate) fn from_trusted(labels: Vec<String>, table: Vec<u32>, norm: Vec<Q>, bi_invariant: bool) -> Self {
        let k = labels.len();
        let identity = (0..k).find(|&e| (0..k).all(|x| table[e * k + x] as usize == x)).expect("identity") as u32;
        let inverse = (0..k)
            .map(|x| (0..k).find(|&y| table[x * k + y] == identity).expect("inverse") as u32)
            .collect();
        FiniteMetricGroup { labels, table, inverse, identity, norm, bi_invariant }
    }

    pub(crate) fn from_parts(
        labels: Vec<String>,
        table: Vec<u32>,
        inverse: Vec<u32>,
        identity: u32,
        norm: Vec<Q>,
        bi_invariant: bool,
    ) -> Self {
        FiniteMetricGroup { labels, table, inverse, identity, norm, bi_invariant }
    }

    fn check_norm(&self) -> Result<()> {
        let k = self.order();
        if !self.norm[self.identity as usize].is_zero() {
            return Err(Error::Structure("d(e, e) is not zero".into()));
        }
        for z in 0..k {
            if self.norm[z].is_negative() || self.norm[z] != self.norm[self.inv(z)] {
                return Err(Error::Structure(format!("metric is negative or asymmetric at {}", self.labels[z])));
            }
        }
        for u in 0..k {
            for w in 0..k {
                if self.norm[self.mul(u, w)] > &self.norm[u] + &self.norm[w] {
                    return Err(Error::Structure(format!(
                        "triangle inequality fails for {} and {}",
                        self.labels[u], self.labels[w]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Left invariance holds iff `N` is constant on conjugacy classes.
    fn detect_bi_invariance(&self) -> bool {
        let k = self.order();
        (0..k).all(|g| (0..k).all(|z| self.norm[self.mul(self.mul(g, z), self.inv(g))] == self.norm[z]))
    }

    /// `Z_k` with the discrete metric.
    pub fn cyclic(k: usize) -> Self {
        let labels = (0..k).map(|i| i.to_string()).collect();
        let table = (0..k * k).map(|c| ((c / k + c % k) % k) as u32).collect();
        let norm = (0..k).map(|i| if i == 0 { Q::zero() } else { one() }).collect();
        FiniteMetricGroup::from_trusted(labels, table, norm, true)
    }

    /// `S₃` with the discrete metric; permutations in one-line notation,
    /// composed as `(στ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let labels: Vec<String> =
            perms.iter().map(|p| p.iter().map(|&x| (x + 1).to_string()).collect::<String>()).collect();
        let pos = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation") as u32;
        let mut table = Vec::with_capacity(36);
        for s in &perms {
            for t in &perms {
                table.push(pos([s[t[0]], s[t[1]], s[t[2]]]));
            }
        }
        let norm = (0..6).map(|i| if i == 0 { Q::zero() } else { one() }).collect();
        FiniteMetricGroup::from_trusted(labels, table, norm, true)
    }

    /// Same group with another norm, validated.
    pub fn with_norm(&self, norm: Vec<Q>) -> Result<Self> {
        if norm.len() != self.order() {
            return Err(Error::Dimension("norm length must equal the group order".into()));
        }
        let mut g = FiniteMetricGroup { norm, ..self.clone() };
        g.check_norm()?;
        g.bi_invariant = g.detect_bi_invariance();
        Ok(g)
    }

    /// The metric `t·d` for `t > 0`.
    pub fn scaled(&self, t: &Q) -> Self {
        assert!(t.is_positive(), "scale factor must be positive");
        FiniteMetricGroup { norm: self.norm.iter().map(|x| x * t).collect(), ..self.clone() }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn norm(&self) -> &[Q] {
        &self.norm
    }

    pub fn is_bi_invariant(&self) -> bool {
        self.bi_invariant
    }

    pub fn table_rows(&self) -> Vec<Vec<u32>> {
        self.table.chunks(self.order()).map(<[u32]>::to_vec).collect()
    }

    pub fn metric_rows(&self) -> Vec<Vec<Q>> {
        (0..self.order()).map(|x| (0..self.order()).map(|y| self.dist(x, y).clone()).collect()).collect()
    }

    /// Whether `subset` is a subgroup (nonempty and closed under products).
    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &x in subset {
            if x >= self.order() {
                return false;
            }
            member[x] = true;
        }
        !subset.is_empty() && subset.iter().all(|&a| subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Subgroup generated by the given elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity()] = true;
        let mut stack = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| member[i]).collect()
    }
}

impl FiniteMetricSpace for FiniteMetricGroup {
    fn size(&self) -> usize {
        self.order()
    }

    #[inline]
    fn dist(&self, x: usize, y: usize) -> &Q {
        &self.norm[self.mul(x, self.inv(y))]
    }

    fn diameter(&self) -> Q {
        self.norm.iter().max().cloned().unwrap_or_else(Q::zero)
    }
}

fn validate_group(labels: &[String], table: &[Vec<u32>]) -> Result<(Vec<u32>, Vec<u32>, u32)> {
    let k = labels.len();
    if k == 0 {
        return Err(Error::Structure("a group has at least one element".into()));
    }
    if table.len() != k || table.iter().any(|r| r.len() != k) {
        return Err(Error::Dimension(format!("Cayley table must be {k}x{k}")));
    }
    if table.iter().flatten().any(|&x| x as usize >= k) {
        return Err(Error::Structure("Cayley table entry out of range".into()));
    }
    let mut sorted = labels.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != k {
        return Err(Error::Structure("duplicate element labels".into()));
    }
    let flat: Vec<u32> = table.iter().flatten().copied().collect();
    let m = |a: usize, b: usize| flat[a * k + b] as usize;
    let identity = (0..k)
        .find(|&e| (0..k).all(|x| m(e, x) == x && m(x, e) == x))
        .ok_or_else(|| Error::Structure("no identity element".into()))?;
    let mut inverse = Vec::with_capacity(k);
    for x in 0..k {
        let y = (0..k)
            .find(|&y| m(x, y) == identity && m(y, x) == identity)
            .ok_or_else(|| Error::Structure(format!("{} has no inverse", labels[x])))?;
        inverse.push(y as u32);
    }
    for a in 0..k {
        for b in 0..k {
            let ab = m(a, b);
            for c in 0..k {
                if m(ab, c) != m(a, m(b, c)) {
                    return Err(Error::Structure("Cayley table is not associative".into()));
                }
            }
        }
    }
    Ok((flat, inverse, identity as u32))
}

/// An increasing chain `{e} = G₀ ≤ … ≤ G_m = G` of subgroups, as sorted
/// index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupChain {
    groups: Vec<Vec<usize>>,
}

impl SubgroupChain {
    pub fn new(g: &FiniteMetricGroup, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut groups: Vec<Vec<usize>> = groups
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        if groups.len() < 2 {
            return Err(Error::Structure("a chain has at least two members".into()));
        }
        if groups[0] != [g.identity()] {
            return Err(Error::Structure("a chain starts at the trivial subgroup".into()));
        }
        if groups.last().map(Vec::len) != Some(g.order()) {
            return Err(Error::Structure("a chain ends at the whole group".into()));
        }
        for (i, s) in groups.iter().enumerate() {
            if !g.is_subgroup(s) {
                return Err(Error::Structure(format!("chain member {i} is not a subgroup")));
            }
        }
        for w in groups.windows(2) {
            if !w[0].iter().all(|x| w[1].binary_search(x).is_ok()) {
                return Err(Error::Structure("chain members must increase".into()));
            }
        }
        groups.shrink_to_fit();
        Ok(SubgroupChain { groups })
    }

    /// `({e}, G)`.
    pub fn trivial(g: &FiniteMetricGroup) -> Self {
        SubgroupChain { groups: vec![vec![g.identity()], (0..g.order()).collect()] }
    }

    pub(crate) fn from_trusted(groups: Vec<Vec<usize>>) -> Self {
        SubgroupChain { groups }
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn steps(&self) -> usize {
        self.groups.len() - 1
    }
}
