// SPDX-License-Identifier: Apache-2.0

//! Experiment runner behind the `minorantlab` binary.

pub mod experiment;
pub mod output;
pub mod plot;
pub mod spec;

use std::path::PathBuf;

/// Failures of the runner. Usage errors map to exit status 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] minorantlab::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn io_error(path: &std::path::Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

use std::path::Path;

use rayon::prelude::*;
use serde_json::json;

use crate::experiment::Outcome;
use crate::spec::Cli;

/// Exit status when some certificate fails.
pub const EXIT_CERTIFICATE: i32 = 2;

fn numbered(path: &Path, k: usize, count: usize) -> PathBuf {
    if count == 1 {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{k}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{k}"),
    };
    path.with_file_name(name)
}

/// Runs every experiment of the config and writes the artifacts into
/// `--out`: `results.csv`, `log.json`, and on request SVG plots, minorant
/// dumps and grids. Returns the exit status.
pub fn run(cli: &Cli, args: &[String]) -> Result<i32> {
    let specs = spec::load(cli)?;
    std::fs::create_dir_all(&cli.out).map_err(|e| io_error(&cli.out, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    let outcomes: Vec<Result<Outcome>> = pool.install(|| specs.par_iter().map(experiment::run).collect());
    let outcomes: Vec<Outcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let rows: Vec<_> = outcomes.iter().map(|o| o.row.clone()).collect();
    output::write_csv(&rows, &cli.out.join("results.csv"))?;
    print!("{}", output::csv(&rows));

    let count = outcomes.len();
    let mut entries = Vec::with_capacity(count);
    for (k, (spec, o)) in specs.iter().zip(&outcomes).enumerate() {
        let mut artifacts = Vec::new();
        if cli.plot {
            if let Some(series) = &o.series {
                let path = cli.out.join(format!("plot_{k}_{}.svg", spec.command.name()));
                plot::emit_plot(series, &path)?;
                artifacts.push(path);
            }
        }
        if cli.dump_minorant {
            for (label, value) in &o.minorants {
                let path = cli.out.join(format!("minorant_{k}_{label}.json"));
                output::write_json(value, &path)?;
                artifacts.push(path);
            }
        }
        if let (Some(target), Some(grid)) = (&cli.grid_out, &o.grid) {
            let path = numbered(target, k, count);
            minorantlab::functional::catalog::write_grid(grid, &path)?;
            artifacts.push(path);
        }
        entries.push(json!({
            "spec": spec,
            "row": o.row,
            "details": o.details,
            "artifacts": artifacts,
        }));
    }
    output::write_json(&output::log(args, entries), &cli.out.join("log.json"))?;

    Ok(exit_status(&rows))
}

/// 0 when every certificate holds, [`EXIT_CERTIFICATE`] otherwise.
pub fn exit_status(rows: &[experiment::Row]) -> i32 {
    if rows.iter().all(|r| r.certificate_ok) {
        0
    } else {
        EXIT_CERTIFICATE
    }
}
