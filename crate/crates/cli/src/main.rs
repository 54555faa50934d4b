//! Command-line calculator for the irregularity of cyclic multiple planes
//! and the cluster/covering machinery behind it.
//!
//! Every subcommand reads structured JSON (or flag arguments), computes
//! with exact rational arithmetic, and writes a canonical JSON report:
//! identical invocations produce byte-identical output.

use clap::{Args, Parser, Subcommand};
use multiplane::format::{
    rat_from_str, rat_to_string, ArrangementFile, ClusterFile, ClusterOut, CoveringFile,
    CurveFile, ReportOut, TypeEntry,
};
use multiplane::{
    irregularity, jumping_numbers, jumping_numbers_oracle, line_arrangement, multiplier_cluster,
    profile, triple_point_bound, BranchCurve, LineArrangement,
};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "multiplane",
    about = "Exact irregularity of cyclic multiple planes z^n = f(x,y)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print the JSON report (default is compact canonical JSON).
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TypeArgs {
    /// Smaller exponent of the local model x^(dp) = y^(dq).
    #[arg(long)]
    p: Option<u64>,
    /// Larger exponent partner, coprime to p.
    #[arg(long)]
    q: Option<u64>,
    /// Common factor d of the two exponents.
    #[arg(long)]
    d: Option<u64>,
    /// Type label such as A_2, A_5 or ordinary_3 (alternative to p/q/d).
    #[arg(long, conflicts_with_all = ["p", "q", "d"])]
    label: Option<String>,
}

impl TypeArgs {
    fn resolve(&self) -> Result<multiplane::SingularityType, multiplane::Error> {
        if let Some(label) = &self.label {
            return TypeEntry::Label(label.clone()).resolve();
        }
        match (self.p, self.q, self.d) {
            (Some(p), Some(q), Some(d)) => TypeEntry::Explicit { p, q, d }.resolve(),
            _ => Err(multiplane::Error::InvalidParameter(
                "give either --label or all of --p, --q, --d".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Subunitary jumping numbers of a singularity type.
    JumpingNumbers {
        #[command(flatten)]
        ty: TypeArgs,
        /// Also run the brute-force sweep and report both lists.
        #[arg(long)]
        oracle: bool,
    },
    /// Multiplier-ideal cluster of xi times the local branch.
    MultiplierCluster {
        #[command(flatten)]
        ty: TypeArgs,
        /// Rational coefficient in (0, 1), e.g. 5/6.
        #[arg(long)]
        xi: String,
    },
    /// Unload a cluster file.
    Unload { input: PathBuf },
    /// Minimal unloaded cluster on T_{p,q} with last coefficient a p + b q.
    MinimalCluster {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Normalize cyclic-covering building data.
    CoveringNormalize { input: PathBuf },
    /// Irregularity of the n-cyclic multiple plane of a curve file.
    Irregularity {
        input: PathBuf,
        #[arg(long)]
        n: u64,
        /// Drop prime-power-denominator jumping numbers (irreducible B).
        #[arg(long)]
        irreducible: bool,
    },
    /// Irregularity for every covering degree 2..=n-max.
    Profile {
        input: PathBuf,
        #[arg(long)]
        n_max: u64,
    },
    /// Triple-point bound and irregularity for a line arrangement.
    ArrangementBound {
        input: PathBuf,
        #[arg(long)]
        n: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&report).expect("serializable")
            } else {
                serde_json::to_string(&report).expect("serializable")
            };
            match &cli.output {
                Some(path) => {
                    if let Err(err) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Value, String> {
    match &cli.command {
        Command::JumpingNumbers { ty, oracle } => {
            let t = ty.resolve().map_err(|e| e.to_string())?;
            let numbers = jumping_numbers(&t);
            let mut report = json!({
                "type": { "p": t.p(), "q": t.q(), "d": t.d() },
                "jumping_numbers": numbers
                    .iter()
                    .map(|j| rat_to_string(&j.value))
                    .collect::<Vec<_>>(),
                "representations": numbers
                    .iter()
                    .map(|j| json!({
                        "xi": rat_to_string(&j.value),
                        "pairs": j.reps,
                    }))
                    .collect::<Vec<_>>(),
            });
            if *oracle {
                let swept = jumping_numbers_oracle(&t);
                report["oracle"] = json!(swept.iter().map(rat_to_string).collect::<Vec<_>>());
                let agree = swept == numbers.iter().map(|j| j.value.clone()).collect::<Vec<_>>();
                report["oracle_agrees"] = json!(agree);
                if !agree {
                    return Err("closed form and oracle disagree".into());
                }
            }
            Ok(report)
        }
        Command::MultiplierCluster { ty, xi } => {
            let t = ty.resolve().map_err(|e| e.to_string())?;
            let xi = rat_from_str(xi).map_err(|e| e.to_string())?;
            let cluster = multiplier_cluster(&t, &xi).map_err(|e| e.to_string())?;
            let out = ClusterOut::new(&cluster);
            Ok(json!({
                "type": { "p": t.p(), "q": t.q(), "d": t.d() },
                "xi": rat_to_string(&xi),
                "cluster": out,
            }))
        }
        Command::Unload { input } => {
            let file: ClusterFile = read_json(input)?;
            let cluster = file.to_cluster().map_err(|e| e.to_string())?;
            let unloaded = cluster.unload();
            Ok(serde_json::to_value(ClusterOut::new(&unloaded)).expect("serializable"))
        }
        Command::MinimalCluster { p, q, a, b } => {
            let cluster =
                multiplane::minimal_cluster(*p, *q, *a, *b).map_err(|e| e.to_string())?;
            Ok(serde_json::to_value(ClusterOut::new(&cluster)).expect("serializable"))
        }
        Command::CoveringNormalize { input } => {
            let file: CoveringFile = read_json(input)?;
            let data = file.to_data().map_err(|e| e.to_string())?;
            let normalized = data.normalize().map_err(|e| e.to_string())?;
            Ok(serde_json::to_value(CoveringFile::from_data(&normalized)).expect("serializable"))
        }
        Command::Irregularity {
            input,
            n,
            irreducible,
        } => {
            let curve = read_curve(input)?;
            let report = irregularity(&curve, *n, *irreducible).map_err(|e| e.to_string())?;
            Ok(serde_json::to_value(ReportOut::from_report(&report)).expect("serializable"))
        }
        Command::Profile { input, n_max } => {
            let curve = read_curve(input)?;
            let rows = profile(&curve, *n_max).map_err(|e| e.to_string())?;
            Ok(json!({
                "b": curve.degree,
                "profile": rows
                    .iter()
                    .map(|&(n, q)| json!({ "n": n, "q": q }))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::ArrangementBound { input, n } => {
            let arrangement = read_arrangement(input)?;
            let bound = triple_point_bound(&arrangement, *n).map_err(|e| e.to_string())?;
            let report =
                irregularity(&arrangement.curve, *n, false).map_err(|e| e.to_string())?;
            Ok(json!({
                "n": n,
                "lines": arrangement.triple_counts.len(),
                "triple_points_per_line": arrangement.triple_counts,
                "bound": bound,
                "q": report.q,
            }))
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    serde_json::from_str(&text).map_err(|err| format!("{}: {err}", path.display()))
}

/// Curve inputs: either a curve file or a line-arrangement file (detected
/// by its "lines" key).
fn read_curve(path: &Path) -> Result<BranchCurve, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|err| format!("{}: {err}", path.display()))?;
    if value.get("lines").is_some() {
        let file: ArrangementFile =
            serde_json::from_value(value).map_err(|err| format!("{}: {err}", path.display()))?;
        let lines = file.to_lines().map_err(|e| e.to_string())?;
        let arrangement = line_arrangement(&lines).map_err(|e| e.to_string())?;
        return Ok(arrangement.curve);
    }
    let file: CurveFile =
        serde_json::from_value(value).map_err(|err| format!("{}: {err}", path.display()))?;
    file.to_curve().map_err(|e| e.to_string())
}

fn read_arrangement(path: &Path) -> Result<LineArrangement, String> {
    let file: ArrangementFile = read_json(path)?;
    let lines = file.to_lines().map_err(|e| e.to_string())?;
    line_arrangement(&lines).map_err(|e| e.to_string())
}
