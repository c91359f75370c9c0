//! Command-line front end.
//!
//! Exit codes: 0 when every report matches its expected verdict, 1 on any
//! unexpected verdict, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Deserialize;

use crate::catalog::{self, FormulaId, FormulaValue};
use crate::gamma::{SumMode, DEFAULT_ENUMERATION_BOUND};
use crate::genus::{Genus, Side};
use crate::verify::{self, Identity, VerificationReport};

pub const CONFIG_ENV: &str = "IE_MIRROR_CONFIG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEXPECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ie-mirror",
    version,
    about = "Verify intersection E-polynomial mirror identities for rank-2 character varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the selected checks and print one line (or JSON record) per report.
    Verify(RunArgs),
    /// Run the selected checks and print a summary table.
    Sweep(RunArgs),
    /// Print a catalog formula.
    Show(ShowArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Genus range `A..B` (inclusive) or a single genus.
    #[arg(long)]
    genus: Option<String>,
    /// Comma-separated sides: dolbeault, betti.
    #[arg(long, value_delimiter = ',')]
    sides: Option<Vec<String>>,
    /// Comma-separated identities: tms-kappa, tms-total, ordinary-failure,
    /// perverse-kappa, q1-specialization, rhl-kappa.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// closed_form or enumerate.
    #[arg(long)]
    mode: Option<String>,
    /// table or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    show_provenance: bool,
    /// Largest 2g for which enumerate mode iterates over the group.
    #[arg(long)]
    enumerate_bound: Option<u32>,
    /// Config file; defaults to $IE_MIRROR_CONFIG when set.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write 0 for all timings so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct ShowArgs {
    formula: String,
    #[arg(long)]
    genus: u32,
    /// Rank, read by total_dimension only.
    #[arg(long = "r", default_value_t = 2)]
    rank: u32,
    /// pretty, canonical or json.
    #[arg(long, default_value = "pretty")]
    format: String,
    #[arg(long)]
    show_provenance: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ClosedForm,
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub genus_min: u32,
    pub genus_max: u32,
    pub sides: Vec<Side>,
    pub checks: Vec<Identity>,
    pub mode: Mode,
    pub output: OutputFormat,
    pub show_provenance: bool,
    pub enumerate_bound: u32,
    pub include_timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            genus_min: 2,
            genus_max: 8,
            sides: Side::ALL.to_vec(),
            checks: Identity::SWEEP.to_vec(),
            mode: Mode::ClosedForm,
            output: OutputFormat::Table,
            show_provenance: false,
            enumerate_bound: DEFAULT_ENUMERATION_BOUND,
            include_timing: true,
        }
    }
}

/// On-disk config (TOML); every key optional, names mirror [`RunConfig`].
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    genus_min: Option<u32>,
    genus_max: Option<u32>,
    sides: Option<Vec<String>>,
    checks: Option<Vec<String>>,
    mode: Option<String>,
    output: Option<String>,
    show_provenance: Option<bool>,
    enumerate_bound: Option<u32>,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn parse_genus_range(s: &str) -> Result<(u32, u32), UsageError> {
    let parse = |x: &str| {
        x.trim()
            .parse::<u32>()
            .map_err(|_| UsageError(format!("invalid genus `{x}` in `{s}`")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let g = parse(s)?;
            Ok((g, g))
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode, UsageError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "closed_form" | "closed-form" | "closed" => Ok(Mode::ClosedForm),
        "enumerate" => Ok(Mode::Enumerate),
        other => Err(UsageError(format!(
            "unknown mode `{other}` (expected closed_form or enumerate)"
        ))),
    }
}

fn parse_output(s: &str) -> Result<OutputFormat, UsageError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "table" => Ok(OutputFormat::Table),
        "json" => Ok(OutputFormat::Json),
        other => Err(UsageError(format!(
            "unknown format `{other}` (expected table or json)"
        ))),
    }
}

fn parse_sides(items: &[String]) -> Result<Vec<Side>, UsageError> {
    let mut sides = items
        .iter()
        .map(|s| s.parse::<Side>().map_err(UsageError))
        .collect::<Result<Vec<_>, _>>()?;
    sides.sort();
    sides.dedup();
    Ok(sides)
}

fn parse_checks(items: &[String]) -> Result<Vec<Identity>, UsageError> {
    let mut checks = Vec::new();
    for item in items {
        match item.trim().to_ascii_lowercase().as_str() {
            "all" => checks.extend(Identity::SWEEP),
            _ => checks.push(item.parse::<Identity>()?),
        }
    }
    checks.sort();
    checks.dedup();
    Ok(checks)
}

fn load_file_config(path: &Path) -> Result<FileConfig, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
}

impl RunConfig {
    fn from_args(args: &RunArgs) -> Result<RunConfig, UsageError> {
        let mut cfg = RunConfig::default();
        let path = args
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        if let Some(path) = path {
            let file = load_file_config(&path)?;
            if let Some(x) = file.genus_min {
                cfg.genus_min = x;
            }
            if let Some(x) = file.genus_max {
                cfg.genus_max = x;
            }
            if let Some(x) = &file.sides {
                cfg.sides = parse_sides(x)?;
            }
            if let Some(x) = &file.checks {
                cfg.checks = parse_checks(x)?;
            }
            if let Some(x) = &file.mode {
                cfg.mode = parse_mode(x)?;
            }
            if let Some(x) = &file.output {
                cfg.output = parse_output(x)?;
            }
            if let Some(x) = file.show_provenance {
                cfg.show_provenance = x;
            }
            if let Some(x) = file.enumerate_bound {
                cfg.enumerate_bound = x;
            }
        }
        if let Some(range) = &args.genus {
            (cfg.genus_min, cfg.genus_max) = parse_genus_range(range)?;
        }
        if let Some(x) = &args.sides {
            cfg.sides = parse_sides(x)?;
        }
        if let Some(x) = &args.checks {
            cfg.checks = parse_checks(x)?;
        }
        if let Some(x) = &args.mode {
            cfg.mode = parse_mode(x)?;
        }
        if let Some(x) = &args.format {
            cfg.output = parse_output(x)?;
        }
        cfg.show_provenance |= args.show_provenance;
        if let Some(x) = args.enumerate_bound {
            cfg.enumerate_bound = x;
        }
        cfg.include_timing = !args.no_timing;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), UsageError> {
        Genus::new(self.genus_min)?;
        Genus::new(self.genus_max)?;
        if self.genus_min > self.genus_max {
            return Err(UsageError(format!(
                "empty genus range {}..{}",
                self.genus_min, self.genus_max
            )));
        }
        if self.checks.is_empty() {
            return Err(UsageError("no checks selected".into()));
        }
        if self.sides.is_empty() && self.checks.iter().any(|c| c.per_side()) {
            return Err(UsageError("no sides selected".into()));
        }
        if self.mode == Mode::Enumerate
            && self.checks.contains(&Identity::TmsTotal)
            && 2 * self.genus_max > self.enumerate_bound
        {
            return Err(UsageError(format!(
                "enumeration at genus {} needs 2^{} elements, above the bound 2g <= {}; \
                 use --mode closed_form or raise --enumerate-bound",
                self.genus_max,
                2 * self.genus_max,
                self.enumerate_bound
            )));
        }
        Ok(())
    }

    fn sum_mode(&self) -> SumMode {
        match self.mode {
            Mode::ClosedForm => SumMode::ClosedForm,
            Mode::Enumerate => SumMode::Enumerate {
                bound: self.enumerate_bound,
            },
        }
    }

    /// Cells in report order: genus, then identity, then side.
    pub fn cells(&self) -> Vec<(Genus, Identity, Side)> {
        let mut cells = Vec::new();
        for g in self.genus_min..=self.genus_max {
            let g = Genus::new(g).expect("validated");
            for &id in &self.checks {
                if id.per_side() {
                    cells.extend(self.sides.iter().map(|&s| (g, id, s)));
                } else {
                    cells.push((g, id, Side::Dolbeault));
                }
            }
        }
        cells
    }
}

/// Runs every cell of the config, in parallel, returning reports in cell order.
pub fn run_reports(cfg: &RunConfig) -> crate::Result<Vec<VerificationReport>> {
    let mode = cfg.sum_mode();
    cfg.cells()
        .into_par_iter()
        .map(|(g, id, side)| verify::run_check(id, g, side, mode))
        .collect()
}

fn verdict(r: &VerificationReport) -> &'static str {
    match (r.passed, r.identity.expected_pass()) {
        (true, true) => "PASS",
        (false, false) => "OBSERVED",
        (false, true) => "FAIL",
        (true, false) => "UNEXPECTED-PASS",
    }
}

fn side_label(r: &VerificationReport) -> &'static str {
    r.side.map_or("-", Side::name)
}

fn exit_status(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::matches_expectation) {
        EXIT_OK
    } else {
        EXIT_UNEXPECTED
    }
}

fn json_array(reports: &[VerificationReport], include_timing: bool) -> String {
    let records: Vec<_> = reports
        .iter()
        .map(|r| r.to_record(include_timing))
        .collect();
    serde_json::to_string_pretty(&records).expect("records serialise")
}

fn summary_line(reports: &[VerificationReport]) -> String {
    let expected = reports.iter().filter(|r| r.matches_expectation()).count();
    format!(
        "summary: {} reports, {} as expected, {} unexpected",
        reports.len(),
        expected,
        reports.len() - expected
    )
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::ClosedForm => "closed_form",
        Mode::Enumerate => "enumerate",
    }
}

fn render_verify(cfg: &RunConfig, reports: &[VerificationReport]) -> String {
    if cfg.output == OutputFormat::Json {
        return json_array(reports, cfg.include_timing) + "\n";
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# verify: {} reports (genus {}..{}, mode {})",
        reports.len(),
        cfg.genus_min,
        cfg.genus_max,
        mode_name(cfg.mode)
    );
    for r in reports {
        let _ = write!(
            out,
            "{:<16} {:<18} g={:<3} {:<10} difference={}",
            verdict(r),
            r.identity.name(),
            r.genus.unwrap_or(0),
            side_label(r),
            r.difference.to_pretty_string()
        );
        if let Some(gap) = &r.gap {
            let _ = write!(out, " gap={}", gap.to_pretty_string());
        }
        if let Some(detail) = &r.detail {
            let _ = write!(out, " [{detail}]");
        }
        out.push('\n');
        if cfg.show_provenance {
            let _ = writeln!(out, "    provenance: {}", r.provenance);
        }
    }
    let _ = writeln!(out, "{}", summary_line(reports));
    out
}

fn render_sweep(cfg: &RunConfig, reports: &[VerificationReport]) -> String {
    if cfg.output == OutputFormat::Json {
        return json_array(reports, cfg.include_timing) + "\n";
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5}  {:<18} {:<10} {:<16} {:>6} {:>8} {:>11}",
        "genus", "identity", "side", "verdict", "terms", "max_deg", "elapsed_ms"
    );
    for r in reports {
        let ms = if cfg.include_timing {
            r.elapsed.as_secs_f64() * 1000.0
        } else {
            0.0
        };
        let _ = writeln!(
            out,
            "{:>5}  {:<18} {:<10} {:<16} {:>6} {:>8} {:>11.3}",
            r.genus.unwrap_or(0),
            r.identity.name(),
            side_label(r),
            verdict(r).to_ascii_lowercase(),
            r.lhs.len(),
            r.lhs.max_total_degree().unwrap_or(0),
            ms
        );
        if cfg.show_provenance {
            let _ = writeln!(out, "       provenance: {}", r.provenance);
        }
    }
    let _ = writeln!(out, "{}", summary_line(reports));
    out
}

fn cmd_run(args: &RunArgs, sweep: bool, out: &mut dyn Write) -> Result<i32, UsageError> {
    let cfg = RunConfig::from_args(args)?;
    let reports = run_reports(&cfg)?;
    let text = if sweep {
        render_sweep(&cfg, &reports)
    } else {
        render_verify(&cfg, &reports)
    };
    out.write_all(text.as_bytes())?;
    Ok(exit_status(&reports))
}

fn cmd_show(args: &ShowArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let id: FormulaId = args.formula.parse()?;
    let g = Genus::new(args.genus)?;
    let value = catalog::evaluate(id, g, args.rank)?;
    let text = match args.format.as_str() {
        "pretty" | "canonical" => {
            let mut s = match &value {
                FormulaValue::Integer(n) => n.to_string(),
                FormulaValue::Poly(p) if args.format == "pretty" => p.to_pretty_string(),
                FormulaValue::Poly(p) => p.to_canonical_string(),
            };
            s.push('\n');
            if args.show_provenance {
                s.push_str(&format!("provenance: {}\n", id.provenance()));
            }
            s
        }
        "json" => {
            let mut obj = serde_json::json!({
                "formula": id.name(),
                "genus": g.get(),
                "value": match &value {
                    FormulaValue::Integer(n) => serde_json::json!(n),
                    FormulaValue::Poly(p) => serde_json::json!(p.to_canonical_string()),
                },
            });
            if id == FormulaId::TotalDimension {
                obj["rank"] = serde_json::json!(args.rank);
            }
            if args.show_provenance {
                obj["provenance"] = serde_json::json!(id.provenance());
            }
            serde_json::to_string_pretty(&obj).expect("json") + "\n"
        }
        other => {
            return Err(UsageError(format!(
                "unknown format `{other}` (expected pretty, canonical or json)"
            )))
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

/// Parses `argv` and runs the selected command, writing results to `out`
/// and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => cmd_run(args, false, out),
        Command::Sweep(args) => cmd_run(args, true, out),
        Command::Show(args) => cmd_show(args, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("ie-mirror").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn genus_range_parsing() {
        assert_eq!(parse_genus_range("2..6").unwrap(), (2, 6));
        assert_eq!(parse_genus_range("3..=5").unwrap(), (3, 5));
        assert_eq!(parse_genus_range("4").unwrap(), (4, 4));
        assert!(parse_genus_range("a..3").is_err());
    }

    #[test]
    fn cells_cover_sides_only_where_needed() {
        let cfg = RunConfig {
            genus_min: 2,
            genus_max: 6,
            checks: vec![Identity::TmsKappa, Identity::PerverseKappa],
            ..RunConfig::default()
        };
        // 5 genera x (2 sides + 1)
        assert_eq!(cfg.cells().len(), 15);
    }

    #[test]
    fn verify_exit_codes() {
        let (code, out, _) = run_capture(&[
            "verify",
            "--genus",
            "2..6",
            "--checks",
            "tms-kappa,perverse-kappa",
            "--sides",
            "dolbeault,betti",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# verify: 15 reports"));

        let (code, _, err) = run_capture(&["verify", "--genus", "1..3"]);
        assert_eq!(code, 2);
        assert!(err.contains("genus must be ≥ 2"), "{err}");

        let (code, _, err) = run_capture(&["verify", "--checks", "nope"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown identity"));

        let (code, _, err) = run_capture(&[
            "verify",
            "--genus",
            "2..14",
            "--mode",
            "enumerate",
            "--checks",
            "tms-total",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("closed_form"));
    }

    #[test]
    fn show_outputs() {
        let (code, out, _) = run_capture(&["show", "ie_dol_sl2_kappa", "--genus", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "u^4 v^4 + u^3 v^3\n");
        assert_eq!(
            run_capture(&["show", "fermionic_shift", "--genus", "4"]).1,
            "6\n"
        );
        assert_eq!(
            run_capture(&["show", "total_dimension", "--r", "2", "--genus", "3"]).1,
            "12\n"
        );
        let (code, _, err) = run_capture(&["show", "bogus", "--genus", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown formula"));
    }
}
