use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, ValueEnum};
use ordwalk_core::diagram::{bordered_cylindrical_blocks, edge_diagram, valid_intervals, Interval};
use ordwalk_core::equivalence::{
    class_lists, class_table, enumerate_classes_parallel, flip_witness,
};
use ordwalk_core::matrix::{determinant_sign, step_matrix};
use ordwalk_core::structure::{irreducible_partition_fast, CohesionAnalysis};
use ordwalk_core::Permutation;
use ordwalk_lab::{class_report, estimate_frequencies, HomogeneityConfig, StepDistribution};
use serde::{Deserialize, Serialize};

use crate::{ClassFormat, TextFormat};

pub const DISTRIBUTION_SCHEMA: &str = include_str!("../schema/step-distribution.schema.json");

/// Longest patterns accepted by `check`, whose search visits a whole class.
const MAX_CHECK_N: usize = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ordwalk_core::Error),
    #[error(transparent)]
    Lab(#[from] ordwalk_lab::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, CliError>;

fn parse_pattern(s: &str) -> Result<Permutation> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("bad pattern `{s}`: {e}")))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn classes(
    n: usize,
    format: ClassFormat,
    workers: usize,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let classes = enumerate_classes_parallel(n, workers.max(1))?;
    let text = match format {
        ClassFormat::Table => class_table(&classes),
        ClassFormat::Csv => {
            let mut s = String::from("representative,size,members\n");
            for c in &classes {
                let members: Vec<String> = c.members().iter().map(|m| m.to_string()).collect();
                s.push_str(&format!(
                    "{},{},{}\n",
                    c.representative(),
                    c.len(),
                    members.join(" ")
                ));
            }
            s
        }
        ClassFormat::Json => {
            let doc = serde_json::json!({ "n": n, "classes": class_lists(&classes) });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    write_out(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn check(pi: &str, tau: &str, witness: bool) -> Result<ExitCode> {
    let (pi, tau) = (parse_pattern(pi)?, parse_pattern(tau)?);
    if pi.len() != tau.len() {
        return Err(CliError::Usage(format!(
            "patterns have different lengths ({} and {})",
            pi.len(),
            tau.len()
        )));
    }
    if pi.len() > MAX_CHECK_N {
        return Err(ordwalk_core::Error::SizeTooLarge {
            what: "pattern length",
            size: pi.len(),
            limit: MAX_CHECK_N,
        }
        .into());
    }
    match flip_witness(&pi, &tau)? {
        Some(w) => {
            println!("EQUIVALENT");
            if witness {
                print!("{w}");
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("NOT EQUIVALENT");
            Ok(ExitCode::from(1))
        }
    }
}

#[derive(Serialize)]
struct StructureDoc {
    pattern: String,
    valid_intervals: Vec<String>,
    bordered_blocks: Vec<BlockDoc>,
    irreducible_borders: Vec<usize>,
    /// `None` when the block count is beyond the search limit.
    cohesive_intervals: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohesive_skipped: Option<String>,
}

#[derive(Serialize)]
struct BlockDoc {
    start: usize,
    len: usize,
    values: String,
    contents: Vec<usize>,
}

fn intervals(v: &[Interval]) -> Vec<String> {
    v.iter().map(Interval::to_string).collect()
}

pub fn structure(pi: &str, format: TextFormat) -> Result<ExitCode> {
    let pi = parse_pattern(pi)?;
    let irreducible = irreducible_partition_fast(&pi);
    let (cohesive, skipped) = if pi.len() < 2 {
        (Some(Vec::new()), None)
    } else {
        match CohesionAnalysis::new(&pi) {
            Ok(a) => (Some(intervals(&a.cohesive_intervals())), None),
            Err(e @ ordwalk_core::Error::SizeTooLarge { .. }) => (None, Some(e.to_string())),
            Err(e) => return Err(e.into()),
        }
    };
    let doc = StructureDoc {
        pattern: pi.to_string(),
        valid_intervals: intervals(&valid_intervals(&pi)),
        bordered_blocks: bordered_cylindrical_blocks(&pi)
            .iter()
            .map(|b| BlockDoc {
                start: b.start,
                len: b.len,
                values: b.values().to_string(),
                contents: b.contents(&pi),
            })
            .collect(),
        irreducible_borders: irreducible.borders().to_vec(),
        cohesive_intervals: cohesive,
        cohesive_skipped: skipped,
    };
    match format {
        TextFormat::Json => println!("{}", serde_json::to_string_pretty(&doc)?),
        TextFormat::Text => {
            println!("pattern: {}", doc.pattern);
            println!("valid intervals: {}", doc.valid_intervals.join(" "));
            let blocks: Vec<String> = doc
                .bordered_blocks
                .iter()
                .map(|b| {
                    let c: Vec<String> = b.contents.iter().map(usize::to_string).collect();
                    format!("{}@{}", c.join(","), b.start)
                })
                .collect();
            println!("bordered blocks: {}", blocks.join(" "));
            println!("irreducible borders: {irreducible}");
            match (&doc.cohesive_intervals, &doc.cohesive_skipped) {
                (Some(c), _) => println!("cohesive intervals: {}", c.join(" ")),
                (None, Some(why)) => println!("cohesive intervals: skipped ({why})"),
                (None, None) => unreachable!(),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

pub fn diagram(pi: &str) -> Result<ExitCode> {
    let pi = parse_pattern(pi)?;
    println!("pattern: {pi}");
    print!("edges:\n{}", edge_diagram(&pi));
    let l = step_matrix(&pi);
    if l.dim() > 0 {
        print!("step matrix:\n{}", l.as_matrix());
        println!("determinant: {}", determinant_sign(&l)?);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

/// Flags of `simulate`; any of them may instead come from `--config`.
#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Step law, e.g. gaussian:0,1.
    #[arg(long)]
    dist: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Flag a class when its chi-square statistic exceeds this quantile.
    #[arg(long)]
    quantile: Option<f64>,
    /// JSON file with any of: n, dist, trials, seed, workers, quantile.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Frequency table destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Write the per-class homogeneity report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write pattern,frequency,class rows for plotting.
    #[arg(long)]
    plot_data: Option<PathBuf>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    n: Option<usize>,
    dist: Option<DistField>,
    trials: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    quantile: Option<f64>,
}

/// A law given either as a spec string or as a JSON object.
#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum DistField {
    Spec(String),
    Object(StepDistribution),
}

fn load_config(path: &Path) -> Result<SimulateConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn simulate(args: SimulateArgs) -> Result<ExitCode> {
    let cfg = match &args.config {
        Some(p) => load_config(p)?,
        None => SimulateConfig::default(),
    };
    let missing = |what: &str| CliError::Usage(format!("simulate needs --{what}"));
    let n = args.n.or(cfg.n).ok_or_else(|| missing("n"))?;
    let dist = match (&args.dist, cfg.dist) {
        (Some(s), _) => s.parse::<StepDistribution>()?,
        (None, Some(DistField::Spec(s))) => s.parse::<StepDistribution>()?,
        (None, Some(DistField::Object(d))) => d,
        (None, None) => return Err(missing("dist")),
    };
    let trials = args
        .trials
        .or(cfg.trials)
        .ok_or_else(|| missing("trials"))?;
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let workers = args.workers.or(cfg.workers).unwrap_or(1);
    let quantile = args
        .quantile
        .or(cfg.quantile)
        .unwrap_or(HomogeneityConfig::default().quantile);
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }

    // classes first, so a size error comes before any sampling
    let classes = enumerate_classes_parallel(n, workers)?;
    let table = estimate_frequencies(&dist, n, trials, seed, workers)?;
    let report = class_report(&table, &classes, &HomogeneityConfig { quantile })?;

    let body = match args.format {
        TableFormat::Csv => table.to_csv(Some(&classes))?,
        TableFormat::Json => table.to_json()? + "\n",
    };
    write_out(args.out.as_deref(), &body)?;
    if let Some(p) = &args.report {
        write_out(Some(p), &(report.to_json()? + "\n"))?;
    }
    if let Some(p) = &args.plot_data {
        let mut s = String::from("pattern,frequency,class\n");
        for row in &report.classes {
            for (m, f) in row.members.iter().zip(&row.frequencies) {
                s.push_str(&format!("{m},{f:.8},{}\n", row.representative));
            }
        }
        write_out(Some(p), &s)?;
    }

    let flagged: Vec<String> = report
        .flagged()
        .map(|c| c.representative.to_string())
        .collect();
    eprintln!(
        "{} classes, {} missing patterns, {} tie rejections",
        report.classes.len(),
        report.missing_patterns.len(),
        table.tie_rejections()
    );
    if flagged.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("inhomogeneous classes: {}", flagged.join(" "));
        Ok(ExitCode::from(1))
    }
}
