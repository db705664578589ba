//! Brute-force oracles on raw `Vec<Vec<u32>>` matrices, independent of the
//! library's linear algebra.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use nestlab::{FieldSpec, MatrixFp};

pub type Raw = Vec<Vec<u32>>;
pub type Vector = Vec<u32>;

pub fn raw(m: &MatrixFp) -> Raw {
    (0..m.n()).map(|i| (0..m.n()).map(|j| u32::from(m.get(i, j))).collect()).collect()
}

pub fn from_raw(p: u32, m: &Raw) -> MatrixFp {
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| i64::from(x)).collect()).collect();
    MatrixFp::new(FieldSpec::new(p).unwrap(), &rows).unwrap()
}

pub fn mul(p: u32, a: &Raw, b: &Raw) -> Raw {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u32>() % p).collect()).collect()
}

pub fn add(p: u32, a: &Raw, b: &Raw) -> Raw {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + y) % p).collect()).collect()
}

pub fn identity(n: usize) -> Raw {
    (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect()
}

pub fn zero(n: usize) -> Raw {
    vec![vec![0; n]; n]
}

pub fn apply(p: u32, a: &Raw, v: &[u32]) -> Vector {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum::<u32>() % p).collect()
}

/// Every `n×n` matrix over `F_p`.
pub fn all_matrices(p: u32, n: usize) -> Vec<Raw> {
    let cells = n * n;
    let total = (p as usize).pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut m = zero(n);
            for c in 0..cells {
                m[c / n][c % n] = (code % p as usize) as u32;
                code /= p as usize;
            }
            m
        })
        .collect()
}

/// All linear combinations of `gens`.
pub fn span_set(p: u32, gens: &[Vector], len: usize) -> BTreeSet<Vector> {
    let mut set = BTreeSet::new();
    set.insert(vec![0; len]);
    for g in gens {
        let snapshot: Vec<Vector> = set.iter().cloned().collect();
        for v in snapshot {
            for c in 1..p {
                set.insert(v.iter().zip(g).map(|(x, y)| (x + c * y) % p).collect());
            }
        }
    }
    set
}

/// Depth-first search for a chain `0 ⊂ V₁ ⊂ … ⊂ F_pⁿ` of `a`-invariant
/// subspaces with each step one dimension.
pub fn has_invariant_maximal_flag(p: u32, a: &Raw) -> bool {
    let n = a.len();
    let full = (p as usize).pow(n as u32);
    let vectors: Vec<Vector> = span_set(p, &(0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect::<Vec<_>>(), n)
        .into_iter()
        .collect();
    fn dfs(p: u32, a: &Raw, cur: &BTreeSet<Vector>, gens: &mut Vec<Vector>, vectors: &[Vector], full: usize) -> bool {
        if cur.len() == full {
            return true;
        }
        for v in vectors {
            if cur.contains(v) {
                continue;
            }
            gens.push(v.clone());
            let next = span_set(p, gens, a.len());
            let invariant = next.iter().all(|w| next.contains(&apply(p, a, w)));
            if invariant && dfs(p, a, &next, gens, vectors, full) {
                return true;
            }
            gens.pop();
        }
        false
    }
    let start: BTreeSet<Vector> = [vec![0; n]].into_iter().collect();
    dfs(p, a, &start, &mut Vec::new(), &vectors, full)
}

fn poly_mul(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut q = rest.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// `det(X·1 − a)` by the Leibniz formula; constant term first.
pub fn leibniz_char_poly(p: u32, a: &Raw) -> Vec<u32> {
    let n = a.len();
    let entry = |i: usize, j: usize| -> Vec<u32> {
        let c = (p - a[i][j] % p) % p;
        if i == j {
            vec![c, 1]
        } else {
            vec![c]
        }
    };
    let mut total = vec![0u32; n + 1];
    for perm in permutations(n) {
        let mut term = vec![1u32];
        for (i, &j) in perm.iter().enumerate() {
            term = poly_mul(p, &term, &entry(i, j));
        }
        for (k, c) in term.iter().enumerate() {
            let c = if sign(&perm) { *c } else { (p - c) % p };
            total[k] = (total[k] + c) % p;
        }
    }
    total
}

/// Whether the polynomial is a product of linear factors, by repeated
/// synthetic division at roots.
pub fn splits(p: u32, poly: &[u32]) -> bool {
    let mut f = poly.to_vec();
    while f.len() > 1 {
        let eval = |x: u32| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p);
        let Some(r) = (0..p).find(|&x| eval(x) == 0) else {
            return false;
        };
        let deg = f.len() - 1;
        let mut q = vec![0u32; deg];
        let mut carry = 0;
        for k in (0..deg).rev() {
            carry = (f[k + 1] + carry * r) % p;
            q[k] = carry;
        }
        f = q;
    }
    true
}

/// Subgroup generated by `gens` inside the invertible matrices.
pub fn generated_group(p: u32, n: usize, gens: &[Raw]) -> BTreeSet<Raw> {
    let mut set: BTreeSet<Raw> = [identity(n)].into_iter().collect();
    let mut queue: VecDeque<Raw> = [identity(n)].into_iter().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(p, &x, g);
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Inverse in a finite group by search.
pub fn group_inverse(p: u32, g: &BTreeSet<Raw>, x: &Raw) -> Raw {
    let id = identity(x.len());
    g.iter().find(|y| mul(p, x, y) == id).expect("element has an inverse").clone()
}

/// Orders of `γ₁ = G, γ_{k+1} = [G, γ_k]` down to the trivial group.
pub fn lower_central_orders(p: u32, g: &BTreeSet<Raw>) -> Vec<usize> {
    let n = g.iter().next().unwrap().len();
    let mut cur = g.clone();
    let mut orders = vec![cur.len()];
    while cur.len() > 1 {
        let mut comms = Vec::new();
        for x in g {
            let xi = group_inverse(p, g, x);
            for y in &cur {
                let yi = group_inverse(p, g, y);
                comms.push(mul(p, &mul(p, &mul(p, &xi, &yi), x), y));
            }
        }
        comms.sort();
        comms.dedup();
        let next = generated_group(p, n, &comms);
        if next.len() == cur.len() {
            break;
        }
        cur = next;
        orders.push(cur.len());
    }
    orders
}

/// All subspaces of `F_p^len` given as sets of vectors.
pub fn all_subspaces(p: u32, len: usize) -> Vec<BTreeSet<Vector>> {
    let vectors: Vec<Vector> = span_set(p, &(0..len).map(|i| (0..len).map(|j| u32::from(i == j)).collect()).collect::<Vec<_>>(), len)
        .into_iter()
        .collect();
    let mut seen: BTreeSet<Vec<Vector>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<Vector>, BTreeSet<Vector>)> = VecDeque::new();
    let zero: BTreeSet<Vector> = [vec![0; len]].into_iter().collect();
    seen.insert(zero.iter().cloned().collect());
    queue.push_back((Vec::new(), zero));
    let mut out = Vec::new();
    while let Some((gens, set)) = queue.pop_front() {
        for v in &vectors {
            if set.contains(v) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(v.clone());
            let next = span_set(p, &g2, len);
            if seen.insert(next.iter().cloned().collect()) {
                queue.push_back((g2, next));
            }
        }
        out.push(set);
    }
    out
}

pub mod gen {
    use nestlab::lattice::Subspace;
    use nestlab::nest::Idempotent;
    use nestlab::{FieldSpec, MatrixFp};
    use proptest::prelude::*;

    pub fn field() -> impl Strategy<Value = FieldSpec> {
        prop::sample::select(vec![2u32, 3, 5, 7]).prop_map(|p| FieldSpec::new(p).unwrap())
    }

    pub fn matrix_in(f: FieldSpec, n: usize) -> impl Strategy<Value = MatrixFp> {
        prop::collection::vec(0..f.p() as u8, n * n).prop_map(move |d| MatrixFp::from_flat(f, n, &d))
    }

    pub fn vectors_in(f: FieldSpec, n: usize, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vec<u8>>> {
        prop::collection::vec(prop::collection::vec(0..f.p() as u8, n), count)
    }

    pub fn subspace_in(f: FieldSpec, n: usize) -> impl Strategy<Value = Subspace> {
        vectors_in(f, n, 0..=n).prop_map(move |vs| Subspace::span(f, n, &vs).unwrap())
    }

    /// `(field, n, k matrices)`.
    pub fn matrices(k: usize) -> impl Strategy<Value = (FieldSpec, usize, Vec<MatrixFp>)> {
        (field(), 1usize..=4).prop_flat_map(move |(f, n)| {
            prop::collection::vec(matrix_in(f, n), k).prop_map(move |ms| (f, n, ms))
        })
    }

    /// `(field, n, k subspaces)`.
    pub fn subspaces(k: usize) -> impl Strategy<Value = (FieldSpec, usize, Vec<Subspace>)> {
        (field(), 1usize..=4).prop_flat_map(move |(f, n)| {
            prop::collection::vec(subspace_in(f, n), k).prop_map(move |ss| (f, n, ss))
        })
    }

    /// An idempotent projecting onto `span(image)` along a complement.
    pub fn idempotent_in(f: FieldSpec, n: usize) -> impl Strategy<Value = Idempotent> {
        (subspace_in(f, n), matrix_in(f, n)).prop_map(move |(s, g)| {
            let k = s.dim();
            let p = if g.is_invertible() { g } else { MatrixFp::identity(f, n) };
            let leading = Idempotent::leading(f, n, k);
            let conj = &(&p * leading.matrix()) * &p.inverse().unwrap();
            Idempotent::new(conj).unwrap()
        })
    }
}
