//! One runner per subcommand. Each returns checked rows plus JSON details.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use nestlab::concentration::{chain_length, hamming_cube, mean, FiniteMetricGroup, FiniteMetricSpace, GroupFunction, SubgroupChain};
use nestlab::experiments::{self, CheckRow, ConcentrationRow};
use nestlab::group::FiniteMatrixGroup;
use nestlab::json::{self as wire, GroupJson, MatrixJson, PolyJson, SubspaceJson};
use nestlab::lattice::{delta_and_distance, lattice_distance, perspectivity_witness, Subspace};
use nestlab::matrix::MatrixFp;
use nestlab::nest::{complete_to_maximal_nest, is_maximal, lambda_map, nest_from_flag, Idempotent, IntervalPartition, Nest};
use nestlab::nest_algebra::{envelope_group, invariant_maximal_flag_exists, kernel_nilpotency, triangularize, Triangularization};
use nestlab::nilpotency::{self, levitzki_radical, nilpotency_order, MAX_UNIPOTENT_ORDER};
use nestlab::parallel::Execution;
use nestlab::rank::{char_poly_factor, rank_distance, rho, unit_from_polynomial_relation, MAX_POLY_SIDE};
use nestlab::rational::{fmt_q, parse_q, qi, Q};
use nestlab::{Error, FieldSpec};

use crate::config::{
    ChainLengthConfig, Command, ConcentrateConfig, EnvelopeConfig, FoldConfig, LatticeConfig, LevitzkiConfig,
    NestConfig, RankConfig, Source, TriangularizeConfig,
};
use crate::CliError;

/// Envelopes larger than this are reported by order only.
const MAX_LISTED_ELEMENTS: usize = 512;
/// Exhaustive flag search runs when `p^(n²/4)` stays below this.
const MAX_FLAG_SEARCH: f64 = 1e5;

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Rows {
    Checks(Vec<CheckRow>),
    Concentration(Vec<ConcentrationRow>),
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: Option<u64>,
    pub pass: bool,
    pub rows: Rows,
    pub details: Value,
}

pub struct Context<'a> {
    pub base: &'a Path,
    pub seed: Option<u64>,
    pub exec: Execution,
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Report, CliError> {
    let (rows, details) = match cmd {
        Command::Rank(c) => rank(c, ctx)?,
        Command::Lattice(c) => lattice(c, ctx)?,
        Command::Nest(c) => nest(c, ctx)?,
        Command::Envelope(c) => envelope(c, ctx)?,
        Command::Triangularize(c) => triangular(c, ctx)?,
        Command::Levitzki(c) => levitzki(c, ctx)?,
        Command::ChainLength(c) => chain(c, ctx)?,
        Command::Concentrate(c) => concentrate(c, ctx)?,
        Command::Fold(c) => fold(c)?,
    };
    let pass = match &rows {
        Rows::Checks(r) => r.iter().all(|x| x.pass),
        Rows::Concentration(r) => r.iter().all(|x| x.pass),
    };
    Ok(Report { command: cmd.name().to_string(), seed: ctx.seed, pass, rows, details })
}

type Outcome = Result<(Rows, Value), CliError>;

fn load_matrices(srcs: &[Source<MatrixJson>], base: &Path) -> Result<Vec<MatrixFp>, CliError> {
    srcs.iter().map(|s| Ok(s.resolve(base)?.load()?)).collect()
}

fn rank(c: &RankConfig, ctx: &Context) -> Outcome {
    let ms = load_matrices(&c.matrices, ctx.base)?;
    let mut rows = Vec::new();
    let mut details = Vec::new();
    for (i, a) in ms.iter().enumerate() {
        let mut d = json!({ "name": format!("m{i}"), "rank": a.rank(), "rho": fmt_q(&rho(a)) });
        if a.n() <= MAX_POLY_SIDE {
            let cp = char_poly_factor(a)?;
            d["char_poly"] = json!(cp.char_poly.to_string());
            d["roots"] = json!(cp.roots.iter().map(|&(r, m)| json!([r, m])).collect::<Vec<_>>());
            d["splits"] = json!(cp.splits);
        }
        if let Some(rel) = &c.relation {
            let u = unit_from_polynomial_relation(a, &rel.resolve(ctx.base)?.load()?)?;
            let ok = (a * &u).is_identity() && (&u * a).is_identity();
            rows.push(CheckRow::holds("a u = u a = 1", format!("m{i}"), ok, true));
            d["inverse"] = json!(MatrixJson::from(&u));
        }
        details.push(d);
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let (a, b) = (&ms[i], &ms[j]);
            a.same_shape(b)?;
            let subject = format!("m{i},m{j}");
            let (ra, rb) = (rho(a), rho(b));
            rows.push(CheckRow::le("rho(a+b) <= rho(a)+rho(b)", subject.clone(), &rho(&(a + b)), &(&ra + &rb)));
            let ab = rho(&(a * b));
            rows.push(CheckRow::le("rho(ab) <= rho(a)", subject.clone(), &ab, &ra));
            rows.push(CheckRow::le("rho(ab) <= rho(b)", subject.clone(), &ab, &rb));
            rows.push(CheckRow::le("d(a,b) <= rho(a)+rho(b)", subject, &rank_distance(a, b)?, &(&ra + &rb)));
            for k in j + 1..ms.len() {
                let cc = &ms[k];
                let lhs = rank_distance(a, cc)?;
                let rhs = rank_distance(a, b)? + rank_distance(b, cc)?;
                rows.push(CheckRow::le("d(a,c) <= d(a,b)+d(b,c)", format!("m{i},m{j},m{k}"), &lhs, &rhs));
            }
        }
    }
    Ok((Rows::Checks(rows), json!({ "matrices": details })))
}

fn lattice(c: &LatticeConfig, ctx: &Context) -> Outcome {
    let subs: Vec<Subspace> = c.subspaces.iter().map(|s| Ok(s.resolve(ctx.base)?.load()?)).collect::<Result<_, CliError>>()?;
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            let (a, b) = (&subs[i], &subs[j]);
            let subject = format!("s{i},s{j}");
            let dd = delta_and_distance(a, b)?;
            let join = a.join(b);
            let meet = a.meet(b);
            rows.push(CheckRow::eq(
                "delta(I+J)+delta(I^J) = delta(I)+delta(J)",
                subject.clone(),
                &(join.delta() + meet.delta()),
                &(a.delta() + b.delta()),
            ));
            let witness = perspectivity_witness(a, b)?;
            rows.push(CheckRow::holds("perspective iff equal dimension", subject.clone(), witness.is_some(), a.dim() == b.dim()));
            if let Some(z) = &witness {
                let full = Subspace::full(a.field(), a.ambient_dim());
                let ok = [a, b].iter().all(|x| x.meet(z).dim() == 0 && x.join(z) == full);
                rows.push(CheckRow::holds("witness complements both", subject.clone(), ok, true));
            }
            pairs.push(json!({
                "pair": subject,
                "join": SubspaceJson::from(&join),
                "meet": SubspaceJson::from(&meet),
                "distance": fmt_q(&dd.distance),
                "witness": witness.as_ref().map(SubspaceJson::from),
            }));
            for k in j + 1..subs.len() {
                let cc = &subs[k];
                let rhs = lattice_distance(a, b)? + lattice_distance(b, cc)?;
                rows.push(CheckRow::le("d(I,K) <= d(I,J)+d(J,K)", format!("s{i},s{j},s{k}"), &lattice_distance(a, cc)?, &rhs));
            }
        }
    }
    let singles: Vec<Value> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "name": format!("s{i}"), "dim": s.dim(), "delta": fmt_q(&s.delta()), "basis": SubspaceJson::from(s) }))
        .collect();
    Ok((Rows::Checks(rows), json!({ "subspaces": singles, "pairs": pairs })))
}

fn nest(c: &NestConfig, ctx: &Context) -> Outcome {
    let input = match (&c.nest, &c.flag) {
        (Some(n), None) => wire::load_nest(&n.resolve(ctx.base)?)?,
        (None, Some(f)) => nest_from_flag(&wire::load_flag(&f.resolve(ctx.base)?)?)?,
        _ => return Err(CliError::Parse("nest needs exactly one of \"nest\" or \"flag\"".into())),
    };
    let done = complete_to_maximal_nest(&input)?;
    let flag = lambda_map(&done);
    let n = done.n() as i64;
    let subject = format!("M{}(F{})", n, done.field().p());
    let expected: Vec<Q> = (0..=n).map(|k| Q::new(k.into(), n.into())).collect();
    let rows = vec![
        CheckRow::holds("completion is maximal", subject.clone(), is_maximal(&done), true),
        CheckRow::holds("completion contains input", subject.clone(), input.elements().iter().all(|e| done.contains(e)), true),
        CheckRow::holds("rho values are k/n", subject.clone(), done.with_endpoints().rho_values() == expected, true),
        CheckRow::holds("lambda image is a maximal flag", subject.clone(), is_maximal(&flag), true),
        CheckRow::holds("lambda(nest_from_flag(F)) = F", subject, lambda_map(&nest_from_flag(&flag)?) == flag, true),
    ];
    let details = json!({
        "input": wire::dump_nest(&input),
        "completed": wire::dump_nest(&done),
        "flag": wire::dump_flag(&flag),
        "rho": done.rho_values().iter().map(fmt_q).collect::<Vec<_>>(),
    });
    Ok((Rows::Checks(rows), details))
}

fn envelope(c: &EnvelopeConfig, ctx: &Context) -> Outcome {
    let g: FiniteMatrixGroup = c.group.resolve(ctx.base)?.load()?;
    let (f, n) = (g.field(), g.n());
    let nest = match &c.nest {
        Some(s) => wire::load_nest(&s.resolve(ctx.base)?)?,
        None => Nest::standard(f, n),
    };
    let part = match &c.partition {
        Some(s) => {
            let pts = s.resolve(ctx.base)?.iter().map(|m| Idempotent::new(m.load()?)).collect::<Result<Vec<_>, Error>>()?;
            IntervalPartition::from_points(&nest, pts)?
        }
        None => IntervalPartition::finest(&nest),
    };
    let env = envelope_group(&g, &part)?;
    let kn = kernel_nilpotency(&part);
    let subject = format!("|G|={}", g.order());
    let mut rows = vec![
        CheckRow::eq(
            "|[G]| = |Ker pi| prod |e_i G e_i|",
            subject.clone(),
            &qi(env.group.order() as i64),
            &qi(env.predicted_order() as i64),
        ),
        CheckRow::holds("G inside [G]", subject.clone(), g.is_subgroup_of(&env.group), true),
        CheckRow::le("nilpotency order of Ker pi <= intervals", subject, &qi(kn.order as i64), &qi(part.intervals() as i64)),
    ];
    for (i, a) in load_matrices(&c.conjugators, ctx.base)?.iter().enumerate() {
        let lhs = env.group.conjugate(a)?;
        let rhs = envelope_group(&g.conjugate(a)?, &part)?.group;
        rows.push(CheckRow::holds("a[G]a^-1 = [aGa^-1]", format!("a{i}"), lhs.elements() == rhs.elements(), true));
    }
    let mut details = json!({
        "group_order": g.order(),
        "kernel_order": env.kernel_order,
        "kernel_nilpotency_order": kn.order,
        "block_orders": env.block_orders,
        "envelope_order": env.group.order(),
        "partition": part.points().iter().map(|e| MatrixJson::from(e.matrix())).collect::<Vec<_>>(),
    });
    if env.group.order() <= MAX_LISTED_ELEMENTS {
        details["envelope"] = json!(GroupJson::from(&env.group));
    }
    Ok((Rows::Checks(rows), details))
}

fn flag_search_feasible(f: FieldSpec, n: usize) -> bool {
    (f.p() as f64).powf((n * n) as f64 / 4.0) <= MAX_FLAG_SEARCH
}

fn triangular(c: &TriangularizeConfig, ctx: &Context) -> Outcome {
    let ms = load_matrices(&c.matrices, ctx.base)?;
    let mut rows = Vec::new();
    let mut details = Vec::new();
    for (i, a) in ms.iter().enumerate() {
        let subject = format!("m{i}");
        let outcome = triangularize(a)?;
        let cp = char_poly_factor(a)?;
        let success = matches!(outcome, Triangularization::Flag(_));
        rows.push(CheckRow::holds("triangularizes iff char poly splits", subject.clone(), success, cp.splits));
        if flag_search_feasible(a.field(), a.n()) {
            rows.push(CheckRow::holds("triangularizes iff brute force", subject.clone(), success, invariant_maximal_flag_exists(a)));
        }
        let mut d = json!({ "name": subject.clone(), "char_poly": cp.char_poly.to_string() });
        match outcome {
            Triangularization::Flag(flag) => {
                let ok = flag.is_invariant_under(a) && is_maximal(&flag);
                rows.push(CheckRow::holds("flag invariant and maximal", subject, ok, true));
                d["outcome"] = json!("flag");
                d["flag"] = json!(wire::dump_flag(&flag));
            }
            Triangularization::NonSplit { factor } => {
                d["outcome"] = json!("non-split");
                d["factor"] = json!(PolyJson::from(&factor));
                d["factor_text"] = json!(factor.to_string());
            }
        }
        details.push(d);
    }
    Ok((Rows::Checks(rows), json!({ "matrices": details })))
}

fn levitzki(c: &LevitzkiConfig, ctx: &Context) -> Outcome {
    let alg = c.subring.resolve(ctx.base)?.load()?;
    let rad = levitzki_radical(&alg)?;
    let order = nilpotency_order(&rad).ok_or_else(|| Error::Structure("radical is not nilpotent".into()))?;
    let subject = format!("dim {} in M{}(F{})", alg.dim(), alg.n(), alg.field().p());
    let mut rows = vec![
        CheckRow::holds("radical is a two-sided ideal", subject.clone(), rad.span().is_two_sided_ideal_of(alg.span()), true),
        CheckRow::le("nilpotency order <= n", subject.clone(), &qi(order as i64), &qi(alg.n() as i64)),
    ];
    let p = alg.field().p() as u64;
    if p.checked_pow(alg.dim() as u32).is_some_and(|s| s <= 4096) {
        let elementwise = nilpotency::radical_elementwise(&alg)?;
        let series = nilpotency::radical_by_composition_series(&alg);
        rows.push(CheckRow::holds("elementwise = composition series", subject.clone(), elementwise == series, true));
    }
    let mut details = json!({
        "dim": rad.dim(),
        "basis": rad.basis().iter().map(MatrixJson::from).collect::<Vec<_>>(),
        "nilpotency_order": order,
    });
    if p.checked_pow(rad.dim() as u32).is_some_and(|s| s <= MAX_UNIPOTENT_ORDER as u64) {
        let gc = nilpotency::nilpotent_group_class(&rad)?;
        rows.push(CheckRow::le("class(1+J) <= order-1", subject, &qi(gc.class as i64), &qi(order as i64 - 1)));
        details["class"] = json!(gc.class);
        details["lower_central_orders"] = json!(gc.lower_central_orders);
        details["power_orders"] = json!(gc.power_orders);
    }
    Ok((Rows::Checks(rows), details))
}

struct Space {
    group: FiniteMetricGroup,
    chain: SubgroupChain,
    group_label: String,
    chain_label: String,
    cube: Option<usize>,
}

fn load_space(
    group: &Option<Source<wire::MetricGroupJson>>,
    chain: &Option<Source<Vec<Vec<String>>>>,
    cube: Option<usize>,
    base: &Path,
) -> Result<Space, CliError> {
    match (group, chain, cube) {
        (None, None, Some(n)) => {
            let (group, chain) = hamming_cube(n)?;
            Ok(Space { group, chain, group_label: format!("Z2^{n}"), chain_label: "coordinate".into(), cube: Some(n) })
        }
        (Some(g), Some(ch), None) => {
            let group = g.resolve(base)?.load()?;
            let chain = wire::load_chain(&group, &ch.resolve(base)?)?;
            let group_label = format!("G{}", group.order());
            Ok(Space { group, chain, group_label, chain_label: "input".into(), cube: None })
        }
        _ => Err(CliError::Parse("give either \"cube\" or both \"group\" and \"chain\"".into())),
    }
}

fn chain(c: &ChainLengthConfig, ctx: &Context) -> Outcome {
    let sp = load_space(&c.group, &c.chain, c.cube, ctx.base)?;
    let cl = chain_length(&sp.group, &sp.chain)?;
    let diam = sp.group.diameter();
    let mut rows: Vec<CheckRow> = cl
        .step_diameters
        .iter()
        .enumerate()
        .map(|(i, d)| CheckRow::le("step diameter <= diam G", format!("{} step {}", sp.group_label, i + 1), d, &diam))
        .collect();
    let sum: Q = cl.step_diameters.iter().map(|d| d * d).sum();
    rows.push(CheckRow::eq("ell^2 = sum of squared steps", sp.group_label.clone(), &cl.radicand, &sum));
    let details = json!({
        "group": sp.group_label,
        "order": sp.group.order(),
        "bi_invariant": sp.group.is_bi_invariant(),
        "step_diameters": cl.step_diameters.iter().map(fmt_q).collect::<Vec<_>>(),
        "ell_sq": fmt_q(&cl.radicand),
        "ell_bounds": [cl.bounds.0, cl.bounds.1],
    });
    Ok((Rows::Checks(rows), details))
}

fn concentrate(c: &ConcentrateConfig, ctx: &Context) -> Outcome {
    let sp = load_space(&c.group, &c.chain, c.cube, ctx.base)?;
    let k = sp.group.order();
    let epsilons = c.epsilons.iter().map(|e| parse_q(e)).collect::<Result<Vec<_>, Error>>()?;
    if epsilons.is_empty() {
        return Err(CliError::Parse("epsilons must not be empty".into()));
    }
    let mut fns: Vec<(String, GroupFunction)> = Vec::new();
    if c.weight {
        let n = sp.cube.ok_or_else(|| CliError::Parse("\"weight\" needs \"cube\"".into()))?;
        fns.push(("weight".into(), mean::hamming_weight_function(n)));
    }
    for nf in &c.functions {
        let values = nf.values.iter().map(|v| parse_q(v)).collect::<Result<Vec<_>, Error>>()?;
        if values.len() != k {
            return Err(Error::Dimension(format!("function {} has {} values for {k} elements", nf.name, values.len())).into());
        }
        fns.push((nf.name.clone(), GroupFunction::new(values)));
    }
    if c.samples > 0 {
        let seed = ctx.seed.ok_or(CliError::MissingSeed)?;
        fns.extend(experiments::sample_lipschitz(&sp.group, c.samples, c.anchors, seed, ctx.exec));
    }
    if fns.is_empty() {
        return Err(CliError::Parse("no functions to evaluate".into()));
    }
    let rows = experiments::concentrate(&sp.group, &sp.chain, (&sp.group_label, &sp.chain_label), &fns, &epsilons, ctx.exec)?;
    Ok((Rows::Concentration(rows), json!({ "group": sp.group_label, "order": k, "functions": fns.len() })))
}

fn fold(c: &FoldConfig) -> Outcome {
    let lengths = experiments::fold_lengths(&c.ns)?;
    let chains: Vec<Value> = lengths
        .iter()
        .map(|(n, cl)| {
            json!({
                "n": n,
                "step_diameters": cl.step_diameters.iter().map(fmt_q).collect::<Vec<_>>(),
                "ell_sq": fmt_q(&cl.radicand),
            })
        })
        .collect();
    Ok((Rows::Checks(experiments::fold_rows(&lengths)), json!({ "chains": chains })))
}
