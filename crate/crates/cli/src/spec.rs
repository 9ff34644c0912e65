// SPDX-License-Identifier: Apache-2.0

//! Command line, config loading and experiment validation.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use minorantlab::functional::catalog::{named_entry, CatalogEntry, NAMED};
use minorantlab::functional::AlphaParam;
use serde::Serialize;
use serde_json::Value;

use crate::{io_error, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyTheorem,
    MacbeathPair,
    SteinerChain,
    Minorant,
    Rearrange,
    Symmetrize,
    RecoverMacbeath,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyTheorem => "verify-theorem",
            Command::MacbeathPair => "macbeath-pair",
            Command::SteinerChain => "steiner-chain",
            Command::Minorant => "minorant",
            Command::Rearrange => "rearrange",
            Command::Symmetrize => "symmetrize",
            Command::RecoverMacbeath => "recover-macbeath",
        }
    }

    fn parse(name: &str) -> Result<Self> {
        <Command as ValueEnum>::from_str(name, false).map_err(|_| CliError::Usage(format!("unknown command {name:?}")))
    }
}

/// Experiments on alpha-concave functions.
#[derive(Debug, Parser)]
#[command(name = "minorantlab", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Catalog id, catalog entry JSON file, or batch JSON file.
    #[arg(long)]
    pub config: String,
    /// Break point budget.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Overrides the function's alpha (a number or `inf`).
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Experiments run in parallel up to this many threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Writes an SVG chart per experiment.
    #[arg(long)]
    pub plot: bool,
    /// Writes the best minorants as JSON (break points and facets).
    #[arg(long)]
    pub dump_minorant: bool,
    /// Number of symmetrization steps for steiner-chain.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Hyperplane angle for symmetrize and macbeath-pair (random from the seed if absent).
    #[arg(long)]
    pub angle: Option<f64>,
    /// Optimizer restarts.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Grid output for rearrange and symmetrize; `.json` or binary `.grid`.
    #[arg(long)]
    pub grid_out: Option<PathBuf>,
}

pub const DEFAULT_N: usize = 4;
pub const DEFAULT_STEPS: usize = 200;

/// One validated experiment.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub command: Command,
    pub function_id: String,
    pub function: CatalogEntry,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub steps: usize,
    pub angle: Option<f64>,
    pub restarts: Option<usize>,
}

pub fn parse_alpha(text: &str) -> Result<AlphaParam> {
    let v = match text.trim() {
        "inf" | "+inf" | "infinity" => Value::String("inf".into()),
        t => Value::from(t.parse::<f64>().map_err(|_| CliError::Usage(format!("--alpha: not a number: {t:?}")))?),
    };
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("--alpha: {e}")))
}

fn entry_from_value(v: &Value, what: &str) -> Result<CatalogEntry> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn function_ref(v: &Value, base_dir: Option<&Path>) -> Result<(String, CatalogEntry, Option<PathBuf>)> {
    match v {
        Value::String(id) => resolve_config(id),
        Value::Object(_) => Ok(("inline".into(), entry_from_value(v, "function")?, base_dir.map(Path::to_path_buf))),
        _ => Err(CliError::Usage("function must be a catalog id or an inline entry".into())),
    }
}

/// A catalog id or the path of a single catalog entry.
fn resolve_config(config: &str) -> Result<(String, CatalogEntry, Option<PathBuf>)> {
    if NAMED.contains(&config) {
        return Ok((config.to_string(), named_entry(config)?, None));
    }
    let path = Path::new(config);
    if !path.is_file() {
        return Err(CliError::Usage(format!("{config:?} is neither a catalog id nor a file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{config}: {e}")))?;
    if value.get("kind").is_none() {
        return Err(CliError::Usage(format!("{config}: not a catalog entry")));
    }
    let id = path.file_stem().map_or_else(|| config.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((id, entry_from_value(&value, config)?, path.parent().map(Path::to_path_buf)))
}

fn field_usize(item: &Value, key: &str) -> Result<Option<usize>> {
    match item.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| CliError::Usage(format!("{key} must be a nonnegative integer"))),
    }
}

/// Expands `--config` into experiments, applying flag overrides.
///
/// A batch file is `{"experiments": [...]}` (or a bare array) whose items
/// carry `function` (catalog id or inline entry) and optionally `command`,
/// `N`, `alpha`, `seed`, `steps` and `angle`.
pub fn load(cli: &Cli) -> Result<Vec<ExperimentSpec>> {
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let path = Path::new(&cli.config);
    let mut batch: Option<(Vec<Value>, Option<PathBuf>)> = None;
    if !NAMED.contains(&cli.config.as_str()) && path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", cli.config)))?;
        let items = match &value {
            Value::Array(items) => Some(items.clone()),
            Value::Object(map) if map.contains_key("experiments") => Some(
                map["experiments"]
                    .as_array()
                    .ok_or_else(|| CliError::Usage("experiments must be a list".into()))?
                    .clone(),
            ),
            _ => None,
        };
        if let Some(items) = items {
            batch = Some((items, path.parent().map(Path::to_path_buf)));
        }
    }
    let raw: Vec<(Command, String, CatalogEntry, Option<PathBuf>, Value)> = match batch {
        None => {
            let (id, entry, dir) = resolve_config(&cli.config)?;
            vec![(cli.command, id, entry, dir, Value::Null)]
        }
        Some((items, dir)) => {
            if items.is_empty() {
                return Err(CliError::Usage("empty experiment batch".into()));
            }
            items
                .into_iter()
                .map(|item| {
                    let f = item.get("function").ok_or_else(|| CliError::Usage("experiment without function".into()))?;
                    let (id, entry, fdir) = function_ref(f, dir.as_deref())?;
                    let command = match item.get("command").and_then(Value::as_str) {
                        Some(name) => Command::parse(name)?,
                        None => cli.command,
                    };
                    Ok((command, id, entry, fdir, item))
                })
                .collect::<Result<_>>()?
        }
    };
    let alpha = cli.alpha.as_deref().map(parse_alpha).transpose()?;
    raw.into_iter()
        .map(|(command, function_id, mut function, base_dir, item)| {
            if let Some(a) = item.get("alpha").filter(|v| !v.is_null()) {
                function.alpha = serde_json::from_value(a.clone()).map_err(|e| CliError::Usage(format!("alpha: {e}")))?;
            }
            if let Some(a) = alpha {
                function.alpha = a;
            }
            let n = cli.n.or(field_usize(&item, "N")?).unwrap_or(DEFAULT_N);
            let steps = cli.steps.or(field_usize(&item, "steps")?).unwrap_or(DEFAULT_STEPS);
            let seed = match cli.seed {
                Some(s) => s,
                None => field_usize(&item, "seed")?.unwrap_or(0) as u64,
            };
            let angle = cli.angle.or(item.get("angle").and_then(Value::as_f64));
            let spec = ExperimentSpec {
                command,
                function_id,
                function,
                base_dir,
                n,
                seed,
                steps,
                angle,
                restarts: cli.restarts,
            };
            validate(&spec)?;
            Ok(spec)
        })
        .collect()
}

fn validate(spec: &ExperimentSpec) -> Result<()> {
    if spec.n == 0 {
        return Err(CliError::Usage("--N must be at least 1".into()));
    }
    if spec.steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if spec.restarts == Some(0) {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    if spec.command == Command::RecoverMacbeath && spec.function.alpha != AlphaParam::PosInf {
        return Err(CliError::Usage("recover-macbeath needs an indicator (alpha = inf)".into()));
    }
    if spec.angle.is_some_and(|a| !a.is_finite()) {
        return Err(CliError::Usage("--angle must be finite".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("minorantlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn catalog_id_with_overrides() {
        let specs = load(&cli(&["minorant", "--config", "gaussian_2d", "--N", "5", "--alpha", "1", "--seed", "3"])).unwrap();
        assert_eq!(specs.len(), 1);
        assert_eq!(specs[0].n, 5);
        assert_eq!(specs[0].seed, 3);
        assert_eq!(specs[0].function.alpha, AlphaParam::Finite(1.0));
    }

    #[test]
    fn unknown_id_is_a_usage_error() {
        assert!(matches!(load(&cli(&["minorant", "--config", "no_such_function"])), Err(CliError::Usage(_))));
    }

    #[test]
    fn recover_macbeath_needs_an_indicator() {
        assert!(matches!(load(&cli(&["recover-macbeath", "--config", "gaussian_2d"])), Err(CliError::Usage(_))));
        assert!(load(&cli(&["recover-macbeath", "--config", "unit_disk"])).is_ok());
    }

    #[test]
    fn alpha_text() {
        assert_eq!(parse_alpha("inf").unwrap(), AlphaParam::PosInf);
        assert_eq!(parse_alpha("-0.5").unwrap(), AlphaParam::Finite(-0.5));
        assert!(parse_alpha("abc").is_err());
    }
}
