//! Seeded batch suites shared by the command-line runner, the acceptance
//! tests and the benchmarks. Every row records an exact left-hand side.

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::concentration::{
    build_product_chain, chain_length, concentration_profile, convolve_function, convolve_means, hamming_cube,
    is_lipschitz, matrix_group_bridge, mean, sampling, FiniteMetricGroup, FiniteMetricSpace, GroupFunction,
    MeanVector, SubgroupChain,
};
use crate::concentration::length::{azuma_bound_exact, within_float_bound, ChainLength};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::FiniteMatrixGroup;
use crate::lattice::lattice_distance;
use crate::matrix::MatrixFp;
use crate::nest::{is_maximal, Idempotent, IntervalPartition, Nest};
use crate::nest_algebra::{invariant_maximal_flag_exists, kernel_nilpotency, psi, triangularize, Hull, Triangularization};
use crate::parallel::{map_indexed, trial_rng, Execution};
use crate::rank::char_poly_factor;
use crate::rational::{fmt_q, one, q, qi, Q};

/// One checked relation `lhs relation bound`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub subject: String,
    pub lhs: String,
    pub relation: String,
    pub bound: String,
    pub pass: bool,
}

impl CheckRow {
    pub fn le(check: &str, subject: impl Into<String>, lhs: &Q, bound: &Q) -> Self {
        CheckRow::exact(check, subject, lhs, "<=", bound, lhs <= bound)
    }

    pub fn lt(check: &str, subject: impl Into<String>, lhs: &Q, bound: &Q) -> Self {
        CheckRow::exact(check, subject, lhs, "<", bound, lhs < bound)
    }

    pub fn eq(check: &str, subject: impl Into<String>, lhs: &Q, bound: &Q) -> Self {
        CheckRow::exact(check, subject, lhs, "=", bound, lhs == bound)
    }

    /// A yes/no fact, recorded as `1` or `0` against the expected value.
    pub fn holds(check: &str, subject: impl Into<String>, actual: bool, expected: bool) -> Self {
        let (a, e) = (qi(actual.into()), qi(expected.into()));
        CheckRow::exact(check, subject, &a, "=", &e, actual == expected)
    }

    fn exact(check: &str, subject: impl Into<String>, lhs: &Q, rel: &str, bound: &Q, pass: bool) -> Self {
        CheckRow {
            check: check.to_string(),
            subject: subject.into(),
            lhs: fmt_q(lhs),
            relation: rel.to_string(),
            bound: fmt_q(bound),
            pass,
        }
    }
}

/// One concentration measurement under the Haar mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationRow {
    pub group: String,
    pub chain: String,
    pub function: String,
    pub n_steps: usize,
    pub epsilon: String,
    pub ell_sq: String,
    pub tail: String,
    pub azuma: f64,
    /// `variance/ε²`.
    pub chebyshev: String,
    pub pass: bool,
}

/// Haar-mean concentration rows for every (function, ε) pair; a row passes
/// when the tail is below both the Azuma and the Chebyshev bound.
pub fn concentrate(
    g: &FiniteMetricGroup,
    chain: &SubgroupChain,
    labels: (&str, &str),
    functions: &[(String, GroupFunction)],
    epsilons: &[Q],
    exec: Execution,
) -> Result<Vec<ConcentrationRow>> {
    let cl = chain_length(g, chain)?;
    let haar = MeanVector::haar(g.order());
    let per_fn: Vec<Result<Vec<ConcentrationRow>>> = map_indexed(exec, functions.len(), |i| {
        let (name, f) = &functions[i];
        epsilons
            .iter()
            .map(|eps| {
                let prof = concentration_profile(&haar, f, eps)?;
                let azuma = azuma_bound_exact(eps, &cl.radicand)?;
                let cheb = &prof.variance / (eps * eps);
                let pass = within_float_bound(&prof.tail, azuma) && prof.tail <= cheb;
                Ok(ConcentrationRow {
                    group: labels.0.to_string(),
                    chain: labels.1.to_string(),
                    function: name.clone(),
                    n_steps: chain.steps(),
                    epsilon: fmt_q(eps),
                    ell_sq: fmt_q(&cl.radicand),
                    tail: fmt_q(&prof.tail),
                    azuma,
                    chebyshev: fmt_q(&cheb),
                    pass,
                })
            })
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_fn {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Seeded random 1-Lipschitz functions on `space`, one stream per trial.
pub fn sample_lipschitz<S: FiniteMetricSpace + Sync + ?Sized>(
    space: &S,
    count: usize,
    anchors: usize,
    seed: u64,
    exec: Execution,
) -> Vec<(String, GroupFunction)> {
    map_indexed(exec, count, |i| {
        let mut rng = trial_rng(seed, i as u64);
        (format!("lip#{i}"), sampling::random_lipschitz(space, anchors, &mut rng))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AzumaSuite {
    pub dims: Vec<usize>,
    pub samples: usize,
    pub anchors: usize,
    pub epsilons: Vec<Q>,
    pub seed: u64,
}

impl Default for AzumaSuite {
    fn default() -> Self {
        AzumaSuite { dims: vec![4, 8, 12], samples: 200, anchors: 6, epsilons: vec![q(1, 10), q(1, 4), q(1, 2)], seed: 2024 }
    }
}

/// `Z₂ⁿ` with the normalized Hamming metric and coordinate chain: the
/// normalized weight plus seeded random 1-Lipschitz functions.
pub fn azuma_suite(cfg: &AzumaSuite, exec: Execution) -> Result<Vec<ConcentrationRow>> {
    let mut rows = Vec::new();
    for &n in &cfg.dims {
        let (g, chain) = hamming_cube(n)?;
        let mut fns = vec![("weight".to_string(), mean::hamming_weight_function(n))];
        fns.extend(sample_lipschitz(&g, cfg.samples, cfg.anchors, cfg.seed ^ n as u64, exec));
        rows.extend(concentrate(&g, &chain, (&format!("Z2^{n}"), "coordinate"), &fns, &cfg.epsilons, exec)?);
    }
    Ok(rows)
}

fn random_component<R: Rng + ?Sized>(rng: &mut R) -> Result<(String, FiniteMetricGroup)> {
    let (name, g) = match rng.gen_range(0..4) {
        0 => ("Z2", FiniteMetricGroup::cyclic(2)),
        1 => ("Z3", FiniteMetricGroup::cyclic(3)),
        2 => ("Z4", FiniteMetricGroup::cyclic(4)),
        _ => ("S3", FiniteMetricGroup::symmetric3()),
    };
    if rng.gen_bool(0.5) {
        Ok((format!("{name}[rand]"), sampling::random_norm(&g, rng)?))
    } else {
        Ok((format!("{name}[disc]"), g))
    }
}

/// Random weighted products: each step diameter equals the weighted
/// component diameter, and `ℓ² = Σ wᵢ² diamᵢ²`.
pub fn product_suite(count: usize, seed: u64, exec: Execution) -> Result<Vec<CheckRow>> {
    let per: Vec<Result<Vec<CheckRow>>> = map_indexed(exec, count, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let len = rng.gen_range(1..=4);
        let mut comps = Vec::new();
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for _ in 0..len {
            let (name, g) = random_component(&mut rng)?;
            names.push(name);
            comps.push(g);
            weights.push(q(rng.gen_range(1..=6), 6));
        }
        let subject = format!("#{t} {}", names.join("x"));
        let (g, chain) = build_product_chain(&comps, &weights)?;
        let cl = chain_length(&g, &chain)?;
        let mut rows = Vec::new();
        let mut expected_sq = Q::zero();
        for (i, (c, w)) in comps.iter().zip(&weights).enumerate() {
            let want = w * c.diameter();
            expected_sq += &want * &want;
            rows.push(CheckRow::eq("step diameter", format!("{subject} step {}", i + 1), &cl.step_diameters[i], &want));
        }
        rows.push(CheckRow::eq("ell^2", subject, &cl.radicand, &expected_sq));
        Ok(rows)
    });
    flatten(per)
}

fn flatten(per: Vec<Result<Vec<CheckRow>>>) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for r in per {
        rows.extend(r?);
    }
    Ok(rows)
}

/// Largest side for which the fold chain is materialized.
pub const MAX_FOLD_SIDE: usize = 5;

/// `UT(n, F₂)` with the rank metric and the chain `Gᵢ = ψ_{eᵢ}(G)` along
/// the standard maximal nest.
pub fn fold_chain(n: usize) -> Result<(FiniteMetricGroup, SubgroupChain)> {
    if n == 0 || n > MAX_FOLD_SIDE {
        return Err(Error::Scale { size: n, max: MAX_FOLD_SIDE });
    }
    let f = FieldSpec::new(2)?;
    let nest = Nest::standard(f, n);
    let kernel = kernel_nilpotency(&IntervalPartition::finest(&nest)).kernel;
    let id = MatrixFp::identity(f, n);
    let els: Vec<MatrixFp> = kernel.elements()?.iter().map(|k| &id + k).collect();
    let ut = FiniteMatrixGroup::from_elements(f, n, els)?;
    let mg = matrix_group_bridge(&ut)?;
    let groups = (0..=n)
        .map(|i| {
            let e = Idempotent::leading(f, n, i);
            ut.map_set(|a| psi(a, e.matrix())).iter().map(|m| ut.index_of(m).expect("ψ-stable group")).collect()
        })
        .collect();
    let chain = SubgroupChain::new(&mg, groups)?;
    Ok((mg, chain))
}

/// Chain lengths of the fold chains for each side in `ns`.
pub fn fold_lengths(ns: &[usize]) -> Result<Vec<(usize, ChainLength)>> {
    ns.iter()
        .map(|&n| {
            let (g, chain) = fold_chain(n)?;
            Ok((n, chain_length(&g, &chain)?))
        })
        .collect()
}

/// `ℓ² ≤ 16/n` for each fold chain and `ℓ` strictly decreasing in `n`.
pub fn fold_rows(lengths: &[(usize, ChainLength)]) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for (i, (n, cl)) in lengths.iter().enumerate() {
        rows.push(CheckRow::le("fold ell^2 <= 16/n", format!("UT({n},F2)"), &cl.radicand, &q(16, *n as i64)));
        if i > 0 {
            let (m, prev) = &lengths[i - 1];
            rows.push(CheckRow::lt("fold ell decreasing", format!("UT({n},F2) vs UT({m},F2)"), &cl.radicand, &prev.radicand));
        }
    }
    rows
}

pub fn fold_suite(ns: &[usize]) -> Result<Vec<CheckRow>> {
    Ok(fold_rows(&fold_lengths(ns)?))
}

/// Random (group, metric, mean, function, ε): both Chebyshev directions.
pub fn chebyshev_suite(count: usize, seed: u64, exec: Execution) -> Result<Vec<CheckRow>> {
    let per: Vec<Result<Vec<CheckRow>>> = map_indexed(exec, count, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let (name, g) = match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(2..=6);
                (format!("Z{k}"), sampling::random_norm(&FiniteMetricGroup::cyclic(k), &mut rng)?)
            }
            1 => ("S3".to_string(), sampling::random_norm(&FiniteMetricGroup::symmetric3(), &mut rng)?),
            _ => ("Z2^3".to_string(), hamming_cube(3)?.0),
        };
        let mu = sampling::random_mean(g.order(), &mut rng);
        let f = if rng.gen_bool(0.5) {
            sampling::random_lipschitz(&g, 3, &mut rng)
        } else {
            sampling::random_function(g.order(), &mut rng)
        };
        let eps = q(rng.gen_range(1..=8), 8);
        let p = concentration_profile(&mu, &f, &eps)?;
        let subject = format!("#{t} {name} eps={}", fmt_q(&eps));
        let diam = f.range_diameter();
        let (level, integral) = mean::markov_sides(&mu, &f);
        Ok(vec![
            CheckRow::le("tail <= var/eps^2", subject.clone(), &p.tail, &(&p.variance / (&eps * &eps))),
            CheckRow::le("var <= diam^2 tail + eps^2", subject.clone(), &p.variance, &(&diam * &diam * &p.tail + &eps * &eps)),
            CheckRow::le("markov", subject, &level, &integral),
        ])
    });
    flatten(per)
}

/// `S₃` with a seeded right-invariant metric: point masses multiply, Haar
/// absorbs every mean, and `Φ_μ` keeps 1-Lipschitz functions 1-Lipschitz.
pub fn convolution_suite(count: usize, seed: u64, exec: Execution) -> Result<Vec<CheckRow>> {
    let mut rng = trial_rng(seed, u64::MAX);
    let g = sampling::random_norm(&FiniteMetricGroup::symmetric3(), &mut rng)?;
    let k = g.order();
    let mut rows = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let c = convolve_means(&MeanVector::point(k, a), &MeanVector::point(k, b), &g)?;
            let gap = total_variation(&c, &MeanVector::point(k, g.mul(a, b)));
            rows.push(CheckRow::eq("point masses multiply", format!("{}*{}", g.label(a), g.label(b)), &gap, &Q::zero()));
        }
    }
    let haar = MeanVector::haar(k);
    let per: Vec<Result<Vec<CheckRow>>> = map_indexed(exec, count, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let mu = sampling::random_mean(k, &mut rng);
        let f = sampling::random_lipschitz(&g, 3, &mut rng);
        let phi = convolve_function(&mu, &f, &g)?;
        let left = total_variation(&convolve_means(&mu, &haar, &g)?, &haar);
        let right = total_variation(&convolve_means(&haar, &mu, &g)?, &haar);
        let subject = format!("#{t}");
        Ok(vec![
            CheckRow::eq("nu*haar = haar", subject.clone(), &left, &Q::zero()),
            CheckRow::eq("haar*nu = haar", subject.clone(), &right, &Q::zero()),
            CheckRow::holds("phi_mu f 1-Lipschitz", subject.clone(), is_lipschitz(&g, &phi, &one()), true),
            CheckRow::le("|phi_mu f| <= |f|", subject, &phi.sup_norm(), &f.sup_norm()),
        ])
    });
    rows.extend(flatten(per)?);
    Ok(rows)
}

fn total_variation(a: &MeanVector, b: &MeanVector) -> Q {
    a.weights().iter().zip(b.weights()).map(|(x, y)| (x - y).abs()).sum()
}

/// `S = span{aᵏ}` in `M₄(F₃)` with random `I`, `J`: the hull bounds and
/// idempotence of `Γ_S`.
pub fn hull_suite(count: usize, seed: u64, exec: Execution) -> Result<Vec<CheckRow>> {
    let f = FieldSpec::new(3)?;
    let n = 4;
    let per: Vec<Result<Vec<CheckRow>>> = map_indexed(exec, count, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let a = MatrixFp::random(f, n, &mut rng);
        let powers: Vec<MatrixFp> = (1..n as u64).map(|k| a.pow(k)).collect();
        let hull = Hull::new(f, n, &powers)?;
        let i = sampling::random_subspace(f, n, rng.gen_range(0..=2), &mut rng);
        let j = sampling::random_subspace(f, n, rng.gen_range(0..=2), &mut rng);
        let (gi, gj) = (hull.apply(&i), hull.apply(&j));
        let dim = qi(hull.dim() as i64);
        let subject = format!("#{t} a={a}");
        Ok(vec![
            CheckRow::le("delta(G(I)) <= dim S delta(I)", subject.clone(), &gi.delta(), &(&dim * i.delta())),
            CheckRow::le(
                "d(G(I),G(J)) <= dim S d(I,J)",
                subject.clone(),
                &lattice_distance(&gi, &gj)?,
                &(&dim * lattice_distance(&i, &j)?),
            ),
            CheckRow::eq("d(G(G(I)),G(I)) = 0", subject.clone(), &lattice_distance(&hull.apply(&gi), &gi)?, &Q::zero()),
            CheckRow::le("dim S <= 4", subject, &dim, &qi(4)),
        ])
    });
    flatten(per)
}

fn triangularization_rows(a: &MatrixFp, subject: String) -> Result<Vec<CheckRow>> {
    let outcome = triangularize(a)?;
    let splits = char_poly_factor(a)?.splits;
    let brute = invariant_maximal_flag_exists(a);
    let success = matches!(outcome, Triangularization::Flag(_));
    let mut rows = vec![
        CheckRow::holds("triangularizes iff brute force", subject.clone(), success, brute),
        CheckRow::holds("triangularizes iff char poly splits", subject.clone(), success, splits),
    ];
    if let Triangularization::Flag(flag) = outcome {
        rows.push(CheckRow::holds("flag invariant and maximal", subject, flag.is_invariant_under(a) && is_maximal(&flag), true));
    }
    Ok(rows)
}

/// All of `M₂(F₂)` and `count` seeded matrices of `M₃(F₃)`.
pub fn triangularization_suite(count: usize, seed: u64, exec: Execution) -> Result<Vec<CheckRow>> {
    let f2 = FieldSpec::new(2)?;
    let f3 = FieldSpec::new(3)?;
    let all: Vec<MatrixFp> = MatrixFp::enumerate_all(f2, 2).collect();
    let mut per: Vec<Result<Vec<CheckRow>>> =
        map_indexed(exec, all.len(), |i| triangularization_rows(&all[i], format!("M2(F2) {}", all[i])));
    per.extend(map_indexed(exec, count, |t| {
        let a = MatrixFp::random(f3, 3, &mut trial_rng(seed, t as u64));
        triangularization_rows(&a, format!("M3(F3) #{t} {a}"))
    }));
    flatten(per)
}

/// Whether every row passes.
pub fn all_pass<'a>(rows: impl IntoIterator<Item = &'a CheckRow>) -> bool {
    rows.into_iter().all(|r| r.pass)
}
