//! Coefficient data of the surface that every rewrite and evaluation depends on.

use std::fmt;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{fmt_q, parse_q, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    K3,
    Abelian,
    #[serde(rename = "generic", alias = "genericb1zero")]
    GenericB1Zero,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::K3 => "k3",
            Mode::Abelian => "abelian",
            Mode::GenericB1Zero => "generic",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k3" => Ok(Mode::K3),
            "abelian" => Ok(Mode::Abelian),
            "generic" | "genericb1zero" => Ok(Mode::GenericB1Zero),
            other => Err(Error::Config(format!("unknown surface mode `{other}`"))),
        }
    }
}

/// Numerical data of a surface `S`: Euler number, `K_S^2`, and the
/// intersection matrix of a finite set of named divisor classes.
///
/// In generic mode the canonical class is taken orthogonal to the named
/// divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    mode: Mode,
    chi_top: i64,
    canonical_self_intersection: i64,
    gram: Matrix,
}

impl SurfaceModel {
    /// A K3 surface with a single polarisation of degree 2.
    pub fn k3() -> Self {
        Self::k3_with_gram(vec![vec![q(2)]]).expect("default K3 model is valid")
    }

    pub fn k3_with_gram(gram: Matrix) -> Result<Self> {
        Self::new(Mode::K3, 24, 0, gram)
    }

    /// An abelian surface with a principal polarisation.
    pub fn abelian() -> Self {
        Self::abelian_with_gram(vec![vec![q(2)]]).expect("default abelian model is valid")
    }

    pub fn abelian_with_gram(gram: Matrix) -> Result<Self> {
        Self::new(Mode::Abelian, 0, 0, gram)
    }

    pub fn generic(chi_top: i64, k2: i64, gram: Matrix) -> Result<Self> {
        Self::new(Mode::GenericB1Zero, chi_top, k2, gram)
    }

    pub fn new(mode: Mode, chi_top: i64, k2: i64, gram: Matrix) -> Result<Self> {
        match mode {
            Mode::K3 if chi_top != 24 || k2 != 0 => {
                return Err(Error::InvalidModel(
                    "K3 mode requires chi_top = 24 and k2 = 0".into(),
                ))
            }
            Mode::Abelian if chi_top != 0 || k2 != 0 => {
                return Err(Error::InvalidModel(
                    "abelian mode requires chi_top = 0 and k2 = 0".into(),
                ))
            }
            _ => {}
        }
        if !linalg::is_symmetric(&gram) {
            return Err(Error::InvalidModel("gram matrix must be square and symmetric".into()));
        }
        if !gram.is_empty() && linalg::determinant(&gram).is_zero() {
            return Err(Error::InvalidModel("gram matrix is degenerate".into()));
        }
        let limit = match mode {
            Mode::K3 => 20,
            Mode::Abelian => 3,
            Mode::GenericB1Zero => usize::MAX,
        };
        if gram.len() > limit {
            return Err(Error::InvalidModel(format!(
                "ns_rank {} exceeds the supported maximum {limit} for {mode} mode",
                gram.len()
            )));
        }
        Ok(SurfaceModel {
            mode,
            chi_top,
            canonical_self_intersection: k2,
            gram,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn chi_top(&self) -> i64 {
        self.chi_top
    }

    pub fn chi(&self) -> Q {
        q(self.chi_top)
    }

    pub fn canonical_self_intersection(&self) -> i64 {
        self.canonical_self_intersection
    }

    pub fn ns_rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Intersection number of divisors `a` and `b` (1-based).
    pub fn pairing(&self, a: usize, b: usize) -> Q {
        self.gram[a - 1][b - 1].clone()
    }

    /// Whether the canonical class is kept as a live generator.
    pub fn has_canonical(&self) -> bool {
        self.mode == Mode::GenericB1Zero
    }

    pub fn describe(&self) -> String {
        let rows: Vec<String> = self
            .gram
            .iter()
            .map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(","))
            .collect();
        format!(
            "{} (chi_top={}, k2={}, gram=[{}])",
            self.mode,
            self.chi_top,
            self.canonical_self_intersection,
            rows.join(";")
        )
    }

    pub fn from_config_str(text: &str, json: bool) -> Result<Self> {
        let raw: RawConfig = if json {
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?
        };
        raw.into_model()
    }

    pub fn from_config_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let json = path.extension().is_some_and(|e| e == "json");
        Self::from_config_str(&text, json)
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

impl RawScalar {
    fn to_q(&self) -> Result<Q> {
        match self {
            RawScalar::Int(n) => Ok(q(*n)),
            RawScalar::Text(s) => {
                parse_q(s).ok_or_else(|| Error::Config(format!("bad rational `{s}` in gram")))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Mode,
    chi_top: Option<i64>,
    k2: Option<i64>,
    ns_rank: Option<usize>,
    gram: Option<Vec<Vec<RawScalar>>>,
}

impl RawConfig {
    fn into_model(self) -> Result<SurfaceModel> {
        let (chi_default, k2_default) = match self.mode {
            Mode::K3 => (Some(24), Some(0)),
            Mode::Abelian => (Some(0), Some(0)),
            Mode::GenericB1Zero => (None, None),
        };
        let chi = self
            .chi_top
            .or(chi_default)
            .ok_or_else(|| Error::Config("generic mode requires chi_top".into()))?;
        let k2 = self
            .k2
            .or(k2_default)
            .ok_or_else(|| Error::Config("generic mode requires k2".into()))?;
        let gram: Matrix = match self.gram {
            Some(rows) => rows
                .iter()
                .map(|r| r.iter().map(RawScalar::to_q).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
            None => vec![vec![q(2)]],
        };
        if let Some(rank) = self.ns_rank {
            if rank != gram.len() {
                return Err(Error::Config(format!(
                    "ns_rank = {rank} but gram has {} rows",
                    gram.len()
                )));
            }
        }
        SurfaceModel::new(self.mode, chi, k2, gram).map_err(|e| Error::Config(e.to_string()))
    }
}
