//! Command-line front end: `analyze` for one ideal, `sweep` for whole
//! parameter ranges. All output is deterministic, so reruns are
//! byte-identical and suitable for golden files.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::classify::{
    predicted_borel, predicted_veronese, sweep_borel, sweep_veronese, SweepReport, Verdict,
};
use crate::graphs::sorted_graph;
use crate::ideals::{parse_generator_file, AnalysisReport, GeneratorSet};
use crate::monomial::Monomial;

#[derive(Debug, Parser)]
#[command(name = "freiman", version, about = "Freiman property of equigenerated monomial ideals")]
struct Cli {
    /// Output format: text, json, csv (sweeps), dot (analyses)
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a single ideal
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
    /// Analyze a whole parameter range and cross-check every point
    #[command(subcommand)]
    Sweep(SweepCmd),
}

#[derive(Debug, Subcommand)]
enum AnalyzeCmd {
    /// Principal Borel ideal B(u)
    Borel {
        /// Root monomial, e.g. x3^2 or "0 0 2"
        #[arg(long)]
        u: String,
        /// Number of ambient variables
        #[arg(long)]
        n: usize,
        /// Also write the sorted graph in DOT form to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Bounded family: degree-d monomials with exponents at most min(k, d)
    Veronese {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        /// Also write the sorted graph in DOT form to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Explicit generator set from a file (header `n d`, one monomial per line)
    Set {
        #[arg(long)]
        file: PathBuf,
        /// Also write the sorted graph in DOT form to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum SweepCmd {
    /// Every monomial root u of each degree in --d, in each ambient size in --n
    Borel {
        /// Ambient size range, e.g. 3..5 (inclusive) or a single value
        #[arg(long)]
        n: RangeArg<usize>,
        /// Degree range, e.g. 2..5 (inclusive) or a single value
        #[arg(long)]
        d: RangeArg<u32>,
    },
    /// Bounded families over ranges of k and n; --d defaults to all nonempty degrees
    Veronese {
        #[arg(long)]
        k: RangeArg<u32>,
        #[arg(long)]
        n: RangeArg<usize>,
        #[arg(long)]
        d: Option<RangeArg<u32>>,
    },
}

/// Inclusive range argument written `a..b`, or a single value `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RangeArg<T> {
    lo: T,
    hi: T,
}

impl<T: FromStr + PartialOrd + Copy> FromStr for RangeArg<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").unwrap_or((s, s));
        let lo: T = a
            .trim()
            .parse()
            .map_err(|_| format!("invalid range bound '{}'", a.trim()))?;
        let hi: T = b
            .trim()
            .parse()
            .map_err(|_| format!("invalid range bound '{}'", b.trim()))?;
        if lo > hi {
            return Err(format!("empty range '{s}': lower bound exceeds upper"));
        }
        Ok(RangeArg { lo, hi })
    }
}

impl<T: Copy> RangeArg<T> {
    fn range(&self) -> RangeInclusive<T> {
        self.lo..=self.hi
    }
}

/// Everything a command produces, before any of it touches the file system.
#[derive(Debug)]
struct Rendered {
    body: String,
    out: Option<PathBuf>,
    dot_sidecar: Option<(PathBuf, String)>,
    code: i32,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(rendered) => {
            if let Some((path, dot)) = &rendered.dot_sidecar {
                if let Err(err) = fs::write(path, dot) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return 2;
                }
            }
            match &rendered.out {
                Some(path) => {
                    if let Err(err) = fs::write(path, &rendered.body) {
                        eprintln!("error: cannot write {}: {err}", path.display());
                        return 2;
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(rendered.body.as_bytes()).is_err() {
                        return 2;
                    }
                }
            }
            rendered.code
        }
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<Rendered, String> {
    match cli.command {
        Command::Analyze(cmd) => {
            let (set, input, prediction, dot_path) = prepare_analysis(cmd)?;
            let report = set.freiman_report();
            let body = match cli.format {
                Format::Text => render_analysis_text(&set, &input, &report, prediction.as_ref()),
                Format::Json => render_analysis_json(&set, &input, &report, prediction.as_ref()),
                Format::Dot => sorted_graph(&set).to_dot(),
                Format::Csv => return Err("csv output applies to sweeps only".into()),
            };
            let dot_sidecar = dot_path.map(|path| (path, sorted_graph(&set).to_dot()));
            Ok(Rendered {
                body,
                out: cli.out,
                dot_sidecar,
                code: 0,
            })
        }
        Command::Sweep(cmd) => {
            let (report, input) = match cmd {
                SweepCmd::Borel { n, d } => {
                    let input = json!({"family": "borel", "n": format!("{}..{}", n.lo, n.hi), "d": format!("{}..{}", d.lo, d.hi)});
                    let report =
                        sweep_borel(n.range(), d.range()).map_err(|e| e.to_string())?;
                    (report, input)
                }
                SweepCmd::Veronese { k, n, d } => {
                    let input = json!({
                        "family": "veronese",
                        "k": format!("{}..{}", k.lo, k.hi),
                        "n": format!("{}..{}", n.lo, n.hi),
                        "d": d.as_ref().map(|d| format!("{}..{}", d.lo, d.hi)),
                    });
                    let report = sweep_veronese(k.range(), n.range(), d.map(|d| d.range()))
                        .map_err(|e| e.to_string())?;
                    (report, input)
                }
            };
            let body = match cli.format {
                Format::Text => render_sweep_text(&report),
                Format::Json => render_sweep_json(&report, &input),
                Format::Csv => report.to_csv(),
                Format::Dot => return Err("dot output applies to single analyses only".into()),
            };
            let code = if report.all_agree() { 0 } else { 1 };
            Ok(Rendered {
                body,
                out: cli.out,
                dot_sidecar: None,
                code,
            })
        }
    }
}

type PreparedAnalysis = (GeneratorSet, serde_json::Value, Option<Verdict>, Option<PathBuf>);

fn prepare_analysis(cmd: AnalyzeCmd) -> Result<PreparedAnalysis, String> {
    match cmd {
        AnalyzeCmd::Borel { u, n, dot } => {
            let root = Monomial::parse(&u, n).map_err(|e| e.to_string())?;
            let set = GeneratorSet::borel_closure(std::slice::from_ref(&root))
                .map_err(|e| e.to_string())?;
            let input = json!({"family": "borel", "u": root.to_string(), "n": n});
            Ok((set, input, Some(predicted_borel(&root)), dot))
        }
        AnalyzeCmd::Veronese { k, n, d, dot } => {
            let set = GeneratorSet::veronese_constant(k, n, d).map_err(|e| e.to_string())?;
            let verdict =
                predicted_veronese(k, n, d).expect("prediction domain matches construction");
            let input = json!({
                "family": "veronese",
                "k": k,
                "effective_k": verdict.effective_k,
                "n": n,
                "d": d,
            });
            Ok((set, input, Some(verdict), dot))
        }
        AnalyzeCmd::Set { file, dot } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let set = parse_generator_file(&text).map_err(|e| e.to_string())?;
            let input = json!({
                "family": "set",
                "file": file.display().to_string(),
                "n": set.num_vars(),
                "d": set.degree(),
            });
            Ok((set, input, None, dot))
        }
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn labels_for(set: &GeneratorSet, vertices: &[usize]) -> Vec<String> {
    vertices.iter().map(|&v| set.gens()[v].to_string()).collect()
}

fn render_analysis_text(
    set: &GeneratorSet,
    input: &serde_json::Value,
    report: &AnalysisReport,
    prediction: Option<&Verdict>,
) -> String {
    let mut out = String::new();
    let header = match input["family"].as_str().unwrap_or_default() {
        "borel" => format!("borel: u={}, n={}", input["u"].as_str().unwrap(), input["n"]),
        "veronese" => format!(
            "veronese: k={} (effective {}), n={}, d={}",
            input["k"], input["effective_k"], input["n"], input["d"]
        ),
        _ => format!(
            "set: {} (n={}, d={})",
            input["file"].as_str().unwrap(),
            input["n"],
            input["d"]
        ),
    };
    out.push_str(&header);
    out.push('\n');
    out.push_str(&format!("mu        {}\n", report.mu));
    out.push_str(&format!("spread    {}\n", report.spread));
    out.push_str(&format!("mu(I^2)   {}\n", report.mu_square));
    out.push_str(&format!("bound     {}\n", report.bound));
    out.push_str(&format!("gap       {}\n", report.gap));
    out.push_str(&format!("freiman   {}\n", yn(report.freiman)));
    out.push_str(&format!("sortable  {}\n", yn(report.sortable)));
    match &report.chordal {
        None => out.push_str("chordal   n/a (not sortable)\n"),
        Some(verdict) => {
            out.push_str(&format!("chordal   {}\n", yn(verdict.chordal)));
            if let Some(order) = &verdict.peo {
                let simplicial_first: Vec<usize> = order.iter().rev().copied().collect();
                out.push_str(&format!(
                    "elimination order: {}\n",
                    labels_for(set, &simplicial_first).join(", ")
                ));
            }
            if let Some(cycle) = &verdict.chordless_cycle {
                out.push_str(&format!(
                    "chordless cycle: {}\n",
                    labels_for(set, cycle).join(" -- ")
                ));
            }
        }
    }
    if let Some(p) = prediction {
        out.push_str(&format!(
            "predicted {} by {}\n",
            yn(p.freiman),
            p.clause
        ));
    }
    out
}

fn certificate_json(set: &GeneratorSet, report: &AnalysisReport) -> serde_json::Value {
    match &report.chordal {
        None => serde_json::Value::Null,
        Some(verdict) => {
            if let Some(order) = &verdict.peo {
                let simplicial_first: Vec<usize> = order.iter().rev().copied().collect();
                json!({
                    "type": "elimination_order",
                    "vertices": simplicial_first,
                    "labels": labels_for(set, &simplicial_first),
                })
            } else {
                let cycle = verdict.chordless_cycle.as_ref().expect("one certificate");
                json!({
                    "type": "chordless_cycle",
                    "vertices": cycle,
                    "labels": labels_for(set, cycle),
                })
            }
        }
    }
}

fn render_analysis_json(
    set: &GeneratorSet,
    input: &serde_json::Value,
    report: &AnalysisReport,
    prediction: Option<&Verdict>,
) -> String {
    let value = json!({
        "schema": 1,
        "input": input,
        "mu": report.mu,
        "spread": report.spread,
        "mu_square": report.mu_square,
        "bound": report.bound,
        "gap": report.gap,
        "freiman": report.freiman,
        "sortable": report.sortable,
        "chordal": report.chordal.as_ref().map(|v| v.chordal),
        "certificate": certificate_json(set, report),
        "prediction": prediction.map(|p| json!({"freiman": p.freiman, "clause": p.clause})),
    });
    let mut body = serde_json::to_string_pretty(&value).expect("report serializes");
    body.push('\n');
    body
}

fn render_sweep_text(report: &SweepReport) -> String {
    let mut out = String::new();
    let freiman = report.rows.iter().filter(|r| r.freiman_computed).count();
    out.push_str(&format!(
        "swept {} points, {} skipped (empty family)\n",
        report.rows.len(),
        report.skipped.len()
    ));
    out.push_str(&format!("freiman on {freiman} of {} points\n", report.rows.len()));
    let bad = report.disagreements();
    if bad.is_empty() {
        out.push_str("all points agree: counted, predicted, and graph answers coincide\n");
    } else {
        out.push_str(&format!("{} disagreements:\n", bad.len()));
        for row in bad {
            out.push_str(&format!(
                "  {}: computed={} predicted={} clause={} sortable={} chordal={}\n",
                row.params,
                row.freiman_computed,
                row.freiman_predicted,
                row.clause,
                row.sortable,
                row.chordal.map(|c| c.to_string()).unwrap_or_else(|| "n/a".into()),
            ));
        }
    }
    out
}

fn render_sweep_json(report: &SweepReport, input: &serde_json::Value) -> String {
    let value = json!({
        "schema": 1,
        "input": input,
        "rows": report.rows,
        "skipped": report.skipped,
        "all_agree": report.all_agree(),
    });
    let mut body = serde_json::to_string_pretty(&value).expect("report serializes");
    body.push('\n');
    body
}
