//! The JSON instance file shared by every subcommand.
//!
//! ```json
//! {
//!   "sigma2": [1, 4, 9],
//!   "x": [0.5, 0.3, 0.2],
//!   "gamma": [0.2, 0.5, 0.9],
//!   "C": [[0, 0.5, 0.5], [0.5, 0, 0.5], [0.5, 0.5, 0]],
//!   "mu": 0,
//!   "seed": 7,
//!   "rational": false
//! }
//! ```
//!
//! Only `sigma2` is required. `C` and `adjacency` are mutually exclusive.
//! Unknown keys are rejected. Entries of `sigma2` may be JSON numbers or
//! decimal strings; with `"rational": true` the ordering conditions are
//! evaluated exactly on the decimal text.

use std::path::Path;

use serde::Deserialize;
use wisdom_core::dynamics::{equal_neighbor, Matrix, Population};
use wisdom_core::orderings::ExactProfile;
use wisdom_core::{Allocation, VarianceProfile};

use crate::error::{CliError, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    sigma2: Vec<Number>,
    x: Option<Vec<f64>>,
    gamma: Option<Vec<f64>>,
    #[serde(rename = "C")]
    c: Option<Vec<Vec<f64>>>,
    adjacency: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    mu: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    rational: bool,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Float(f64),
    Text(String),
}

/// How the instance describes who listens to whom.
#[derive(Debug, Clone, PartialEq)]
pub enum Network {
    /// Relative interaction matrix `C`, as given.
    Interaction(Matrix),
    /// 0/1 adjacency of an undirected graph, turned into `C` by equal
    /// neighbour weights.
    Adjacency(Matrix),
}

/// A validated instance file.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub sigma2: VarianceProfile,
    /// Decimal rendering of each variance, as used in rational mode.
    pub sigma2_text: Vec<String>,
    pub x: Option<Allocation>,
    pub gamma: Option<Vec<f64>>,
    pub network: Option<Network>,
    pub mu: f64,
    pub seed: u64,
    pub rational: bool,
}

/// Attaches the key path of the offending entry to a model error.
pub fn locate(key: &str, err: wisdom_core::Error) -> CliError {
    use wisdom_core::Error as E;
    let path = match &err {
        E::InvalidVariance { index, .. }
        | E::NegativeWeight { index, .. }
        | E::InvalidSusceptibility { index, .. } => format!("{key}[{index}]"),
        E::NotRowStochastic { row, .. } => format!("{key}[{row}]"),
        E::InvalidMatrixEntry { row, col, .. } | E::InvalidAdjacency { row, col } => {
            format!("{key}[{row}][{col}]")
        }
        E::NonzeroDiagonal(i) => format!("{key}[{i}][{i}]"),
        _ => key.to_string(),
    };
    CliError::schema(path, err.to_string())
}

fn square(key: &str, rows: Vec<Vec<f64>>, n: usize) -> Result<Matrix> {
    if rows.len() != n {
        return Err(CliError::schema(
            key,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CliError::schema(
            format!("{key}[{i}]"),
            format!("expected {n} entries, found {}", r.len()),
        ));
    }
    Matrix::from_rows(&rows).map_err(|e| locate(key, e))
}

fn check_len(key: &str, len: usize, n: usize) -> Result<()> {
    if len != n {
        return Err(CliError::schema(
            key,
            format!("expected {n} entries to match sigma2, found {len}"),
        ));
    }
    Ok(())
}

impl Instance {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawInstance = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { "instance".to_string() } else { path };
            CliError::schema(path, e.into_inner().to_string())
        })?;
        Self::from_raw(raw)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    fn from_raw(raw: RawInstance) -> Result<Self> {
        let mut values = Vec::with_capacity(raw.sigma2.len());
        let mut text = Vec::with_capacity(raw.sigma2.len());
        for (i, v) in raw.sigma2.into_iter().enumerate() {
            match v {
                Number::Float(f) => {
                    values.push(f);
                    text.push(f.to_string());
                }
                Number::Text(t) => {
                    let f = t.trim().parse::<f64>().map_err(|_| {
                        CliError::schema(format!("sigma2[{i}]"), format!("cannot parse {t:?} as a number"))
                    })?;
                    values.push(f);
                    text.push(t);
                }
            }
        }
        let sigma2 = VarianceProfile::new(values).map_err(|e| locate("sigma2", e))?;
        let n = sigma2.len();

        let x = match raw.x {
            Some(x) => {
                check_len("x", x.len(), n)?;
                Some(Allocation::new(x).map_err(|e| locate("x", e))?)
            }
            None => None,
        };
        if let Some(g) = &raw.gamma {
            check_len("gamma", g.len(), n)?;
            Population::new(sigma2.clone(), g.clone()).map_err(|e| locate("gamma", e))?;
        }
        let network = match (raw.c, raw.adjacency) {
            (Some(_), Some(_)) => {
                return Err(CliError::schema(
                    "adjacency",
                    "\"C\" and \"adjacency\" are mutually exclusive",
                ))
            }
            (Some(c), None) => Some(Network::Interaction(square("C", c, n)?)),
            (None, Some(a)) => {
                let m = square("adjacency", a, n)?;
                equal_neighbor(&m).map_err(|e| locate("adjacency", e))?;
                Some(Network::Adjacency(m))
            }
            (None, None) => None,
        };
        if !raw.mu.is_finite() {
            return Err(CliError::schema("mu", "expected a finite number"));
        }
        Ok(Self {
            sigma2,
            sigma2_text: text,
            x,
            gamma: raw.gamma,
            network,
            mu: raw.mu,
            seed: raw.seed,
            rational: raw.rational,
        })
    }

    pub fn len(&self) -> usize {
        self.sigma2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma2.is_empty()
    }

    /// The allocation, required by `analyze` and `mc`.
    pub fn require_x(&self) -> Result<&Allocation> {
        self.x
            .as_ref()
            .ok_or_else(|| CliError::schema("x", "missing key \"x\", required by this command"))
    }

    pub fn require_gamma(&self) -> Result<&[f64]> {
        self.gamma
            .as_deref()
            .ok_or_else(|| CliError::schema("gamma", "missing key \"gamma\", required by this command"))
    }

    /// The relative interaction matrix `C`, built from `adjacency` if that
    /// is what the file gives.
    pub fn require_interaction(&self) -> Result<Matrix> {
        match &self.network {
            Some(Network::Interaction(c)) => Ok(c.clone()),
            Some(Network::Adjacency(m)) => equal_neighbor(m).map_err(|e| locate("adjacency", e)),
            None => Err(CliError::schema(
                "C",
                "missing key \"C\" (or \"adjacency\"), required by this command",
            )),
        }
    }

    /// Key under which the network was given, for error paths.
    pub fn network_key(&self) -> &'static str {
        match self.network {
            Some(Network::Adjacency(_)) => "adjacency",
            _ => "C",
        }
    }

    /// `sigma2` as exact rationals parsed from its decimal text.
    pub fn exact_profile(&self) -> Result<ExactProfile> {
        ExactProfile::from_decimals(&self.sigma2_text).map_err(|e| locate("sigma2", e))
    }
}
