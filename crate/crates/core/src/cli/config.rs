//! JSON run configuration.

use crate::chebli::{ChebliFamily, WeightTable};
use crate::error::{Error, Result};
use crate::verify::Numerics;
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// The family block: `{"kind": "dunkl", "alpha": 0.5}` and friends.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilySpec {
    Dunkl {
        alpha: f64,
    },
    Jacobi {
        alpha: f64,
        beta: f64,
    },
    /// CSV with header `x,B,Bprime`; `rho` is inferred from the last row when absent.
    Table {
        path: PathBuf,
        alpha: f64,
        #[serde(default)]
        rho: Option<f64>,
    },
}

impl FamilySpec {
    /// Builds the family; relative table paths resolve against `base`.
    pub fn build(&self, base: Option<&Path>) -> Result<ChebliFamily> {
        match self {
            Self::Dunkl { alpha } => ChebliFamily::dunkl(*alpha),
            Self::Jacobi { alpha, beta } => ChebliFamily::jacobi(*alpha, *beta),
            Self::Table { path, alpha, rho } => {
                let full = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                ChebliFamily::table(WeightTable::from_csv(&full)?, *alpha, *rho)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: FamilySpec,
    #[serde(default)]
    pub eps: f64,
    #[serde(default)]
    pub numerics: Numerics,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        check_eps(self.eps)?;
        self.numerics.validate()
    }
}

pub fn check_eps(eps: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps out of [-1,1]: {eps}")));
    }
    Ok(())
}

/// Parses either a bare family block or a full run configuration.
pub fn parse_config(text: &str, origin: &str) -> Result<RunConfig> {
    let located = |e: serde_json::Error| {
        let msg = e.to_string();
        let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(head, _)| head).to_string();
        Error::Config(format!("{origin}:{}:{}: {msg}", e.line(), e.column()))
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(located)?;
    if value.get("kind").is_some() {
        let family = serde_json::from_str(text).map_err(located)?;
        return Ok(RunConfig { family, eps: 0.0, numerics: Numerics::default() });
    }
    serde_json::from_str(text).map_err(located)
}

/// `arg` is a path to a JSON file or an inline JSON object.
pub fn load_config(arg: &str) -> Result<(RunConfig, Option<PathBuf>)> {
    if arg.trim_start().starts_with('{') {
        return Ok((parse_config(arg, "<inline>")?, None));
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{arg}: {e}")))?;
    let base = path.parent().map(Path::to_path_buf);
    Ok((parse_config(&text, arg)?, base))
}
