//! Experiment configuration: one JSON object per run.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use nestlab::json::{GroupJson, MatrixJson, MetricGroupJson, PolyJson, SubringJson, SubspaceJson};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// An input given inline or as a path relative to the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

impl<T: DeserializeOwned + Clone> Source<T> {
    pub fn resolve(&self, base: &Path) -> Result<T, CliError> {
        match self {
            Source::Inline(t) => Ok(t.clone()),
            Source::Path(p) => {
                let path = base.join(p);
                let text = fs::read_to_string(&path).map_err(|e| CliError::Io(path.clone(), e))?;
                serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Rank(RankConfig),
    Lattice(LatticeConfig),
    Nest(NestConfig),
    Envelope(EnvelopeConfig),
    Triangularize(TriangularizeConfig),
    Levitzki(LevitzkiConfig),
    ChainLength(ChainLengthConfig),
    Concentrate(ConcentrateConfig),
    Fold(FoldConfig),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rank(_) => "rank",
            Command::Lattice(_) => "lattice",
            Command::Nest(_) => "nest",
            Command::Envelope(_) => "envelope",
            Command::Triangularize(_) => "triangularize",
            Command::Levitzki(_) => "levitzki",
            Command::ChainLength(_) => "chain-length",
            Command::Concentrate(_) => "concentrate",
            Command::Fold(_) => "fold",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankConfig {
    pub matrices: Vec<Source<MatrixJson>>,
    /// Polynomial with nonzero constant term to invert each matrix with.
    #[serde(default)]
    pub relation: Option<Source<PolyJson>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub subspaces: Vec<Source<SubspaceJson>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestConfig {
    #[serde(default)]
    pub nest: Option<Source<Vec<MatrixJson>>>,
    #[serde(default)]
    pub flag: Option<Source<Vec<SubspaceJson>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeConfig {
    pub group: Source<GroupJson>,
    /// Defaults to the standard maximal nest.
    #[serde(default)]
    pub nest: Option<Source<Vec<MatrixJson>>>,
    /// Interval points inside the nest; defaults to every member.
    #[serde(default)]
    pub partition: Option<Source<Vec<MatrixJson>>>,
    /// Units `a` for which `a[G]a⁻¹ = [aGa⁻¹]` is checked.
    #[serde(default)]
    pub conjugators: Vec<Source<MatrixJson>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangularizeConfig {
    pub matrices: Vec<Source<MatrixJson>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevitzkiConfig {
    pub subring: Source<SubringJson>,
}

/// A metric group from JSON with its chain, or `cube: n` for `Z₂ⁿ` with the
/// normalized Hamming metric and the coordinate chain.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainLengthConfig {
    #[serde(default)]
    pub group: Option<Source<MetricGroupJson>>,
    #[serde(default)]
    pub chain: Option<Source<Vec<Vec<String>>>>,
    #[serde(default)]
    pub cube: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFunction {
    pub name: String,
    pub values: Vec<String>,
}

fn default_anchors() -> usize {
    6
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcentrateConfig {
    #[serde(default)]
    pub group: Option<Source<MetricGroupJson>>,
    #[serde(default)]
    pub chain: Option<Source<Vec<Vec<String>>>>,
    #[serde(default)]
    pub cube: Option<usize>,
    pub epsilons: Vec<String>,
    #[serde(default)]
    pub functions: Vec<NamedFunction>,
    /// Include the normalized weight function (cube only).
    #[serde(default)]
    pub weight: bool,
    #[serde(default)]
    pub samples: usize,
    #[serde(default = "default_anchors")]
    pub anchors: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldConfig {
    pub ns: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub command: Command,
    pub seed: Option<u64>,
    pub output: Option<Format>,
    pub base: PathBuf,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        if text.trim().is_empty() {
            return Err(CliError::Parse(format!("{}: empty config", path.display())));
        }
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Config::parse(&text, base)
    }

    pub fn parse(text: &str, base: PathBuf) -> Result<Config, CliError> {
        let mut v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let obj = v.as_object_mut().ok_or_else(|| CliError::Parse("config must be a JSON object".into()))?;
        let seed = obj
            .remove("seed")
            .map(|s| s.as_u64().ok_or_else(|| CliError::Parse("seed must be an unsigned integer".into())))
            .transpose()?;
        let output = obj
            .remove("output")
            .map(|o| serde_json::from_value(o).map_err(|e| CliError::Parse(format!("output: {e}"))))
            .transpose()?;
        let command = serde_json::from_value(v).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Config { command, seed, output, base })
    }
}
