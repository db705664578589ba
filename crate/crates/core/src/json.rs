//! Wire formats. Every object carries its modulus; loading validates and
//! normalizes, so a round trip yields canonical output.

use serde::{Deserialize, Serialize};

use crate::concentration::{FiniteMetricGroup, SubgroupChain};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::FiniteMatrixGroup;
use crate::lattice::Subspace;
use crate::matrix::MatrixFp;
use crate::nest::{Flag, Idempotent, Nest};
use crate::nilpotency::SubringSpan;
use crate::poly::PolyFp;
use crate::rational::{fmt_q, parse_q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub p: u32,
    pub n: usize,
    pub entries: Vec<Vec<i64>>,
}

impl MatrixJson {
    pub fn load(&self) -> Result<MatrixFp> {
        let m = MatrixFp::new(FieldSpec::new(self.p)?, &self.entries)?;
        if m.n() != self.n {
            return Err(Error::Dimension(format!("declared n = {} but entries are {}x{}", self.n, m.n(), m.n())));
        }
        Ok(m)
    }
}

impl From<&MatrixFp> for MatrixJson {
    fn from(m: &MatrixFp) -> Self {
        MatrixJson { p: m.field().p(), n: m.n(), entries: m.to_i64_rows() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub p: u32,
    /// Constant term first.
    pub coeffs: Vec<i64>,
}

impl PolyJson {
    pub fn load(&self) -> Result<PolyFp> {
        Ok(PolyFp::new(FieldSpec::new(self.p)?, &self.coeffs))
    }
}

impl From<&PolyFp> for PolyJson {
    fn from(f: &PolyFp) -> Self {
        PolyJson { p: f.field().p(), coeffs: f.coeffs().iter().map(|&c| i64::from(c)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceJson {
    pub p: u32,
    pub n: usize,
    /// Spanning column vectors.
    pub basis: Vec<Vec<i64>>,
}

impl SubspaceJson {
    pub fn load(&self) -> Result<Subspace> {
        let f = FieldSpec::new(self.p)?;
        let vs: Vec<Vec<u8>> = self.basis.iter().map(|v| v.iter().map(|&x| f.reduce(x)).collect()).collect();
        Subspace::span(f, self.n, &vs)
    }
}

impl From<&Subspace> for SubspaceJson {
    fn from(s: &Subspace) -> Self {
        SubspaceJson {
            p: s.field().p(),
            n: s.ambient_dim(),
            basis: s.basis().iter().map(|v| v.iter().map(|&x| i64::from(x)).collect()).collect(),
        }
    }
}

fn common_shape(mut items: impl Iterator<Item = (u32, usize)>, what: &str) -> Result<(FieldSpec, usize)> {
    let (p, n) = items.next().ok_or_else(|| Error::Argument(format!("empty {what}")))?;
    if items.any(|s| s != (p, n)) {
        return Err(Error::Dimension(format!("{what} members disagree on p or n")));
    }
    Ok((FieldSpec::new(p)?, n))
}

pub fn load_nest(items: &[MatrixJson]) -> Result<Nest> {
    let (f, n) = common_shape(items.iter().map(|m| (m.p, m.n)), "nest")?;
    let els = items.iter().map(|m| Idempotent::new(m.load()?)).collect::<Result<Vec<_>>>()?;
    Nest::new(f, n, els)
}

pub fn dump_nest(nest: &Nest) -> Vec<MatrixJson> {
    nest.elements().iter().map(|e| MatrixJson::from(e.matrix())).collect()
}

pub fn load_flag(items: &[SubspaceJson]) -> Result<Flag> {
    let (f, n) = common_shape(items.iter().map(|s| (s.p, s.n)), "flag")?;
    let subs = items.iter().map(SubspaceJson::load).collect::<Result<Vec<_>>>()?;
    Flag::new(f, n, subs)
}

pub fn dump_flag(flag: &Flag) -> Vec<SubspaceJson> {
    flag.subspaces().iter().map(SubspaceJson::from).collect()
}

/// A matrix given either as a full object or as bare rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixOrRows {
    Matrix(MatrixJson),
    Rows(Vec<Vec<i64>>),
}

impl MatrixOrRows {
    fn load(&self, p: u32, n: usize) -> Result<MatrixFp> {
        match self {
            MatrixOrRows::Matrix(m) if m.p == p && m.n == n => m.load(),
            MatrixOrRows::Matrix(_) => Err(Error::Dimension("member matrix disagrees with p or n".into())),
            MatrixOrRows::Rows(rows) => MatrixJson { p, n, entries: rows.clone() }.load(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub p: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<MatrixOrRows>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<MatrixOrRows>>,
}

impl GroupJson {
    pub fn load(&self) -> Result<FiniteMatrixGroup> {
        let f = FieldSpec::new(self.p)?;
        let load = |xs: &[MatrixOrRows]| xs.iter().map(|x| x.load(self.p, self.n)).collect::<Result<Vec<_>>>();
        match (&self.elements, &self.generators) {
            (Some(els), None) => FiniteMatrixGroup::from_elements(f, self.n, load(els)?),
            (None, Some(gens)) => FiniteMatrixGroup::from_generators(f, self.n, &load(gens)?),
            _ => Err(Error::Argument("a group needs exactly one of \"elements\" or \"generators\"".into())),
        }
    }
}

impl From<&FiniteMatrixGroup> for GroupJson {
    fn from(g: &FiniteMatrixGroup) -> Self {
        GroupJson {
            p: g.field().p(),
            n: g.n(),
            elements: Some(g.elements().iter().map(|m| MatrixOrRows::Matrix(m.into())).collect()),
            generators: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubringJson {
    pub p: u32,
    pub n: usize,
    pub basis: Vec<MatrixOrRows>,
    #[serde(default)]
    pub unital: bool,
}

impl SubringJson {
    pub fn load(&self) -> Result<SubringSpan> {
        let f = FieldSpec::new(self.p)?;
        let basis = self.basis.iter().map(|x| x.load(self.p, self.n)).collect::<Result<Vec<_>>>()?;
        SubringSpan::new(f, self.n, &basis, self.unital)
    }
}

/// Cayley table by element index, metric as `"a/b"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricGroupJson {
    pub labels: Vec<String>,
    pub table: Vec<Vec<u32>>,
    pub metric: Vec<Vec<String>>,
}

impl MetricGroupJson {
    pub fn load(&self) -> Result<FiniteMetricGroup> {
        let metric = self
            .metric
            .iter()
            .map(|row| row.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteMetricGroup::new(self.labels.clone(), self.table.clone(), metric)
    }
}

impl From<&FiniteMetricGroup> for MetricGroupJson {
    fn from(g: &FiniteMetricGroup) -> Self {
        MetricGroupJson {
            labels: g.labels().to_vec(),
            table: g.table_rows(),
            metric: g.metric_rows().iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
        }
    }
}

/// Chain members as label lists, smallest first.
pub fn load_chain(g: &FiniteMetricGroup, groups: &[Vec<String>]) -> Result<SubgroupChain> {
    let idx = groups
        .iter()
        .map(|h| {
            h.iter()
                .map(|l| g.index_of(l).ok_or_else(|| Error::Membership(format!("unknown element label {l:?}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SubgroupChain::new(g, idx)
}

pub fn dump_chain(g: &FiniteMetricGroup, chain: &SubgroupChain) -> Vec<Vec<String>> {
    chain.groups().iter().map(|h| h.iter().map(|&x| g.label(x).to_string()).collect()).collect()
}
