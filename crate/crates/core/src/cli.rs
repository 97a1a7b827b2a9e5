//! The `pcrfuse` command-line front end.
//!
//! Sources come from a JSON document:
//!
//! ```json
//! {
//!   "frame": ["A", "B"],
//!   "sources": [
//!     {"name": "m1", "masses": {"A": 0.1, "B": 0.7, "A|B": 0.2}},
//!     {"name": "m2", "weight": 2, "masses": {"A": 0.4, "B": 0.1, "A|B": 0.5}}
//!   ]
//! }
//! ```
//!
//! Focal keys join singleton names with `|` in any order. Exit codes: 0 on
//! success, 1 for unreadable or invalid input, 2 for usage errors and rule
//! constraints such as the source cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::conjunctive::dempster_normalize;
use crate::error::FusionError;
use crate::importance::{
    convergence_profile, expand, fuse_with_importance, reduce_weights, Fused, FusionRule,
    WeightedSource,
};
use crate::mass::{FocalSet, Frame, MassFunction};
use crate::pcr::{trace, PcrRule, RedistributionTrace, DEFAULT_SOURCE_CAP};

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input document.
    #[error("{0}")]
    Input(String),
    /// Valid input that violates a rule or usage constraint.
    #[error("{0}")]
    Constraint(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Constraint(_) => 2,
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::TooFewSources { .. }
            | FusionError::TooManySources { .. }
            | FusionError::TotalConflict
            | FusionError::AlphaOutOfRange(_) => CliError::Constraint(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pcrfuse",
    version,
    about = "Fuse belief functions with the conjunctive, PCR5 and PCR6 rules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fuse every source of a document, honouring source weights.
    Fuse(FuseArgs),
    /// Show how each conflicting tuple is redistributed.
    Trace(TraceArgs),
    /// Fuse the first source with k copies of the second for k = 1..kmax.
    Converge(ConvergeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    /// Conjunctive rule; the conflict is reported separately.
    Conjunctive,
    /// Normalized Dempster rule (comparison baseline, not a PCR rule).
    Dempster,
    /// Proportional conflict redistribution rule #5.
    Pcr5,
    /// Proportional conflict redistribution rule #6.
    Pcr6,
}

impl RuleArg {
    fn pcr(self, command: &str) -> Result<PcrRule, CliError> {
        match self {
            RuleArg::Pcr5 => Ok(PcrRule::Pcr5),
            RuleArg::Pcr6 => Ok(PcrRule::Pcr6),
            other => Err(CliError::Constraint(format!(
                "{command} requires --rule pcr5 or pcr6, got {}",
                other.name()
            ))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            RuleArg::Conjunctive => "conjunctive",
            RuleArg::Dempster => "dempster",
            RuleArg::Pcr5 => "pcr5",
            RuleArg::Pcr6 => "pcr6",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    /// JSON input document.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RuleArg::Pcr5)]
    pub rule: RuleArg,
    /// Decimal places in the output.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=20))]
    pub precision: u8,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RuleArg::Pcr5)]
    pub rule: RuleArg,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=20))]
    pub precision: u8,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// Document with exactly two sources: the base, then the repeated one.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RuleArg::Pcr5)]
    pub rule: RuleArg,
    /// Largest repetition count of the second source.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub kmax: u32,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=20))]
    pub precision: u8,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command and returns its rendered output.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Fuse(args) => {
            let doc = InputDocument::load(&args.input)?;
            let report = fuse_report(&doc, args.rule)?;
            Ok(match args.format {
                OutputFormat::Table => report.render_table(args.precision.into()),
                OutputFormat::Json => report.render_json(args.precision.into()),
            })
        }
        Command::Trace(args) => {
            let rule = args.rule.pcr("trace")?;
            let doc = InputDocument::load(&args.input)?;
            render_trace(&doc, rule, args.precision.into())
        }
        Command::Converge(args) => {
            let rule = args.rule.pcr("converge")?;
            let doc = InputDocument::load(&args.input)?;
            render_convergence(&doc, rule, args.kmax, args.precision.into())
        }
    }
}

/// One source of an [`InputDocument`].
#[derive(Debug, Clone, PartialEq)]
pub struct NamedSource {
    pub name: String,
    pub weight: u32,
    pub mass: MassFunction,
}

/// A validated input document.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub frame: Frame,
    pub sources: Vec<NamedSource>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    frame: Vec<String>,
    sources: Vec<RawSource>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    name: String,
    #[serde(default)]
    weight: Option<u32>,
    masses: Map<String, Value>,
}

impl InputDocument {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let raw: RawDocument = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("malformed document: {e}")))?;
        if let Some(bad) = raw
            .frame
            .iter()
            .find(|n| n.contains('|') || n.trim() != n.as_str())
        {
            return Err(CliError::Input(format!(
                "frame: singleton name {bad:?} may not contain '|' or surrounding whitespace"
            )));
        }
        let frame = Frame::new(raw.frame).map_err(|e| CliError::Input(format!("frame: {e}")))?;
        if raw.sources.is_empty() {
            return Err(CliError::Input("document has no sources".into()));
        }
        let sources = raw
            .sources
            .into_iter()
            .map(|src| parse_source(&frame, src))
            .collect::<Result<_, _>>()?;
        Ok(Self { frame, sources })
    }

    fn weighted(&self) -> Result<Vec<WeightedSource>, CliError> {
        self.sources
            .iter()
            .map(|s| WeightedSource::new(s.mass.clone(), s.weight).map_err(CliError::from))
            .collect()
    }

    /// Source names after gcd reduction and repetition, matching
    /// [`expand`].
    fn expanded_names(&self) -> Result<Vec<&str>, CliError> {
        let weights: Vec<u32> = self.sources.iter().map(|s| s.weight).collect();
        let reduced = reduce_weights(&weights)?;
        Ok(self
            .sources
            .iter()
            .zip(reduced)
            .flat_map(|(s, w)| std::iter::repeat_n(s.name.as_str(), w as usize))
            .collect())
    }
}

fn parse_source(frame: &Frame, src: RawSource) -> Result<NamedSource, CliError> {
    let name = src.name;
    let fail = |msg: String| CliError::Input(format!("source '{name}': {msg}"));
    let weight = src.weight.unwrap_or(1);
    if weight == 0 {
        return Err(fail("weight must be a positive integer".into()));
    }
    let mut raw = Vec::with_capacity(src.masses.len());
    for (key, value) in &src.masses {
        let set = parse_key(frame, key).map_err(|msg| fail(format!("key {key:?}: {msg}")))?;
        let mass = value
            .as_f64()
            .ok_or_else(|| fail(format!("key {key:?}: mass must be a number")))?;
        raw.push((set, mass));
    }
    let mass = MassFunction::validate(frame, raw).map_err(|e| fail(e.to_string()))?;
    Ok(NamedSource { name, weight, mass })
}

/// Parses a `|`-joined focal key such as `"B|A"`.
pub fn parse_key(frame: &Frame, key: &str) -> Result<FocalSet, String> {
    let mut set = FocalSet::EMPTY;
    for part in key.split('|').map(str::trim) {
        if part.is_empty() {
            return Err("empty singleton name".into());
        }
        let single = frame
            .singleton(part)
            .ok_or_else(|| format!("unknown singleton '{part}'"))?;
        if single.is_subset_of(set) {
            return Err(format!("singleton '{part}' repeated"));
        }
        set = set.union(single);
    }
    Ok(set)
}

/// Formats with round-half-to-even on exact ties.
pub fn format_number(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_owned(),
        _ => s,
    }
}

/// Fused output of `pcrfuse fuse`, in canonical focal order.
#[derive(Debug, Clone, PartialEq)]
pub struct FuseReport {
    pub rule: String,
    pub masses: Vec<(String, f64)>,
    pub conflict: Option<f64>,
}

pub fn fuse_report(doc: &InputDocument, rule: RuleArg) -> Result<FuseReport, CliError> {
    let weighted = doc.weighted()?;
    let entries_of = |m: &[(FocalSet, f64)]| -> Vec<(String, f64)> {
        m.iter()
            .map(|&(s, v)| (doc.frame.format_set(s), v))
            .collect()
    };
    let report = match rule {
        RuleArg::Conjunctive | RuleArg::Dempster => {
            let conj = match fuse_with_importance(&weighted, FusionRule::Conjunctive)? {
                Fused::Conjunctive(c) => c,
                Fused::Redistributed(_) => {
                    unreachable!("conjunctive rule yields a conjunctive result")
                }
            };
            if rule == RuleArg::Conjunctive {
                FuseReport {
                    rule: rule.name().into(),
                    masses: entries_of(conj.entries()),
                    conflict: Some(conj.conflict()),
                }
            } else {
                let normalized = dempster_normalize(&conj)?;
                FuseReport {
                    rule: rule.name().into(),
                    masses: entries_of(normalized.entries()),
                    conflict: None,
                }
            }
        }
        RuleArg::Pcr5 | RuleArg::Pcr6 => {
            let pcr = rule.pcr("fuse")?;
            let fused = match fuse_with_importance(&weighted, pcr.into())? {
                Fused::Redistributed(m) => m,
                Fused::Conjunctive(_) => unreachable!("PCR rules yield a mass function"),
            };
            FuseReport {
                rule: rule.name().into(),
                masses: entries_of(fused.entries()),
                conflict: None,
            }
        }
    };
    Ok(report)
}

impl FuseReport {
    pub fn render_table(&self, precision: usize) -> String {
        let mut rows: Vec<Vec<String>> = self
            .masses
            .iter()
            .map(|(k, v)| vec![k.clone(), format_number(*v, precision)])
            .collect();
        if let Some(c) = self.conflict {
            rows.push(vec!["CONFLICT".into(), format_number(c, precision)]);
        }
        render_columns(&["focal".into(), "mass".into()], &rows)
    }

    /// Single-line JSON with numbers printed at `precision` decimals.
    pub fn render_json(&self, precision: usize) -> String {
        let mut s = String::from("{\"rule\":");
        s.push_str(&Value::from(self.rule.as_str()).to_string());
        s.push_str(",\"masses\":{");
        for (i, (k, v)) in self.masses.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(
                s,
                "{}:{}",
                Value::from(k.as_str()),
                format_number(*v, precision)
            );
        }
        s.push('}');
        if let Some(c) = self.conflict {
            let _ = write!(s, ",\"conflict\":{}", format_number(c, precision));
        }
        s.push_str("}\n");
        s
    }

    /// Reads back the output of [`Self::render_json`].
    pub fn parse_json(text: &str) -> Result<Self, CliError> {
        let bad = |what: &str| CliError::Input(format!("malformed fuse report: {what}"));
        let value: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| bad("not an object"))?;
        let rule = obj
            .get("rule")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing rule"))?
            .to_owned();
        let masses = obj
            .get("masses")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing masses"))?
            .iter()
            .map(|(k, v)| {
                v.as_f64()
                    .map(|x| (k.clone(), x))
                    .ok_or_else(|| bad("non-numeric mass"))
            })
            .collect::<Result<_, _>>()?;
        let conflict = match obj.get("conflict") {
            None => None,
            Some(v) => Some(v.as_f64().ok_or_else(|| bad("non-numeric conflict"))?),
        };
        Ok(Self {
            rule,
            masses,
            conflict,
        })
    }
}

/// Left-aligned columns separated by two spaces, no trailing whitespace.
fn render_columns(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{cell:<width$}", width = widths[i]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_trace(doc: &InputDocument, rule: PcrRule, precision: usize) -> Result<String, CliError> {
    let expanded = expand(&doc.weighted()?, DEFAULT_SOURCE_CAP)?;
    let names = doc.expanded_names()?;
    let traced = trace(&expanded, rule)?;
    Ok(format_trace(&traced, &names, precision))
}

/// Renders a trace with one block per conflicting tuple and a reconciliation
/// footer. `names[i]` labels source `i`.
pub fn format_trace(traced: &RedistributionTrace, names: &[&str], precision: usize) -> String {
    let frame = traced.frame();
    let num = |x: f64| format_number(x, precision);
    let set_list = |entries: &[(FocalSet, f64)]| {
        entries
            .iter()
            .map(|&(s, v)| format!("{}={}", frame.format_set(s), num(v)))
            .collect::<Vec<_>>()
            .join("  ")
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "rule: {}  sources: {}  conflicting tuples: {}",
        traced.rule(),
        names.join(", "),
        traced.entries().len()
    );

    if traced.entries().is_empty() {
        out.push_str("no conflicting tuples\n\n");
        let rows: Vec<Vec<String>> = traced
            .conjunctive()
            .entries()
            .iter()
            .map(|&(s, v)| vec![frame.format_set(s), num(v)])
            .collect();
        out.push_str(&render_columns(&["focal".into(), "mass".into()], &rows));
        return out;
    }

    for (i, entry) in traced.entries().iter().enumerate() {
        let assignment = entry
            .tuple
            .assignment()
            .iter()
            .map(|a| {
                let source = names.get(a.source).copied().unwrap_or("?");
                format!("{source}:{}={}", frame.format_set(a.set), num(a.mass))
            })
            .collect::<Vec<_>>()
            .join("  ");
        let _ = writeln!(out, "\ntuple {}", i + 1);
        let _ = writeln!(out, "  assignment  {assignment}");
        let _ = writeln!(out, "  product     {}", num(entry.tuple.product()));
        let _ = writeln!(out, "  weights     {}", set_list(&entry.weights));
        let _ = writeln!(out, "  shares      {}", set_list(entry.shares.entries()));
    }

    let conj = traced.conjunctive();
    let sums = traced.column_sums();
    let fused = traced.fused();
    let mut sets: Vec<FocalSet> = fused.focal_sets().collect();
    sets.extend(sums.iter().map(|&(s, _)| s));
    sets.extend(conj.entries().iter().map(|&(s, _)| s));
    sets.sort_unstable();
    sets.dedup();
    let redistributed = |s: FocalSet| crate::mass::lookup(&sums, s);
    let rows: Vec<Vec<String>> = sets
        .iter()
        .map(|&s| {
            vec![
                frame.format_set(s),
                num(conj.mass(s)),
                num(redistributed(s)),
                num(fused.mass(s)),
            ]
        })
        .collect();
    out.push_str("\nreconciliation\n");
    out.push_str(&render_columns(
        &[
            "focal".into(),
            "conjunctive".into(),
            "redistributed".into(),
            "fused".into(),
        ],
        &rows,
    ));
    let total: f64 = sums.iter().map(|&(_, v)| v).sum();
    let _ = writeln!(
        out,
        "conflict {}  redistributed {}  max gap {:.1e}",
        num(conj.conflict()),
        num(total),
        traced.reconciliation_gap()
    );
    out
}

fn render_convergence(
    doc: &InputDocument,
    rule: PcrRule,
    k_max: u32,
    precision: usize,
) -> Result<String, CliError> {
    let [base, repeated] = doc.sources.as_slice() else {
        return Err(CliError::Constraint(format!(
            "converge needs exactly 2 sources, document has {}",
            doc.sources.len()
        )));
    };
    let profile = convergence_profile(&base.mass, &repeated.mass, rule, k_max)?;
    let mut sets: Vec<FocalSet> = profile.iter().flat_map(|p| p.fused.focal_sets()).collect();
    sets.sort_unstable();
    sets.dedup();

    let mut header = vec!["k".to_owned()];
    header.extend(sets.iter().map(|&s| doc.frame.format_set(s)));
    header.push("distance".into());
    let rows: Vec<Vec<String>> = profile
        .iter()
        .map(|p| {
            let mut row = vec![p.k.to_string()];
            row.extend(
                sets.iter()
                    .map(|&s| format_number(p.fused.mass(s), precision)),
            );
            row.push(format_number(p.distance, precision));
            row
        })
        .collect();
    Ok(render_columns(&header, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAPER: &str = r#"{
        "frame": ["A", "B"],
        "sources": [
            {"name": "m1", "masses": {"A": 0.1, "B": 0.7, "A|B": 0.2}},
            {"name": "m2", "weight": 2, "masses": {"B|A": 0.5, "A": 0.4, "B": 0.1}}
        ]
    }"#;

    fn doc() -> InputDocument {
        InputDocument::from_json(PAPER).unwrap()
    }

    #[test]
    fn keys_are_order_insensitive() {
        let f = Frame::new(["A", "B", "C"]).unwrap();
        assert_eq!(parse_key(&f, "C|A"), parse_key(&f, "A|C"));
        assert_eq!(parse_key(&f, " A | B ").unwrap().bits(), 0b011);
        assert!(parse_key(&f, "A|A").unwrap_err().contains("repeated"));
        assert!(parse_key(&f, "A||B").is_err());
        assert!(parse_key(&f, "D").unwrap_err().contains("unknown"));
    }

    #[test]
    fn document_loads() {
        let d = doc();
        assert_eq!(d.sources.len(), 2);
        assert_eq!(d.sources[0].weight, 1);
        assert_eq!(d.sources[1].weight, 2);
        assert_eq!(d.expanded_names().unwrap(), vec!["m1", "m2", "m2"]);
    }

    #[test]
    fn document_errors_name_the_culprit() {
        let bad_sum = r#"{"frame":["A","B"],"sources":[{"name":"s1","masses":{"A":0.5,"B":0.4}}]}"#;
        let e = InputDocument::from_json(bad_sum).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("s1") && e.to_string().contains("sum"));

        let bad_key = r#"{"frame":["A","B"],"sources":[{"name":"s1","masses":{"A|Q":1.0}}]}"#;
        let e = InputDocument::from_json(bad_key).unwrap_err();
        assert!(e.to_string().contains("A|Q"));

        let zero = r#"{"frame":["A"],"sources":[{"name":"z","weight":0,"masses":{"A":1}}]}"#;
        assert!(InputDocument::from_json(zero)
            .unwrap_err()
            .to_string()
            .contains("weight"));

        let text = r#"{"frame":["A"],"sources":[{"name":"t","masses":{"A":"one"}}]}"#;
        assert!(InputDocument::from_json(text)
            .unwrap_err()
            .to_string()
            .contains("number"));

        let pipe = r#"{"frame":["A|B"],"sources":[]}"#;
        assert_eq!(InputDocument::from_json(pipe).unwrap_err().exit_code(), 1);

        let none = r#"{"frame":["A"],"sources":[]}"#;
        assert_eq!(InputDocument::from_json(none).unwrap_err().exit_code(), 1);

        assert_eq!(InputDocument::from_json("{").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn fuse_table_pcr5() {
        let text = fuse_report(&doc(), RuleArg::Pcr5).unwrap().render_table(6);
        assert_eq!(
            text,
            "focal  mass\nA      0.345263\nB      0.505523\nA|B    0.149214\n"
        );
    }

    #[test]
    fn fuse_table_conjunctive_has_conflict_row() {
        let text = fuse_report(&doc(), RuleArg::Conjunctive)
            .unwrap()
            .render_table(6);
        assert!(text
            .lines()
            .any(|l| l.split_whitespace().eq(["CONFLICT", "0.483000"])));
    }

    #[test]
    fn dempster_report() {
        let r = fuse_report(&doc(), RuleArg::Dempster).unwrap();
        assert_eq!(r.conflict, None);
        let total: f64 = r.masses.iter().map(|(_, v)| v).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trips() {
        for rule in [RuleArg::Conjunctive, RuleArg::Pcr6] {
            for precision in [0, 3, 6, 12] {
                let json = fuse_report(&doc(), rule).unwrap().render_json(precision);
                let again = FuseReport::parse_json(&json)
                    .unwrap()
                    .render_json(precision);
                assert_eq!(json, again);
            }
        }
    }

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.125, 2), "0.12");
        assert_eq!(format_number(0.375, 2), "0.38");
        assert_eq!(format_number(-0.0, 3), "0.000");
        assert_eq!(format_number(-1e-9, 3), "0.000");
        assert_eq!(format_number(0.4835, 0), "0");
    }

    #[test]
    fn trace_rejects_non_pcr_rules() {
        assert_eq!(RuleArg::Dempster.pcr("trace").unwrap_err().exit_code(), 2);
        assert_eq!(
            RuleArg::Conjunctive.pcr("trace").unwrap_err().exit_code(),
            2
        );
    }

    #[test]
    fn trace_rendering() {
        let text = render_trace(&doc(), PcrRule::Pcr5, 6).unwrap();
        assert_eq!(text.matches("\ntuple ").count(), 12);
        assert!(text.contains("m1:B=0.700000  m2:A=0.400000  m2:A=0.400000"));
        assert!(text.contains("weights     A=0.160000  B=0.700000"));
        assert!(text.contains("shares      A=0.020837  B=0.091163"));
    }

    #[test]
    fn converge_table() {
        let text = render_convergence(&doc(), PcrRule::Pcr5, 2, 6).unwrap();
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(|l| l.split_whitespace().collect())
            .collect();
        assert_eq!(rows[0], ["k", "A", "B", "A|B", "distance"]);
        assert_eq!(rows[1][0], "1");
        assert_eq!(rows[1][4], "0.523182");
        assert_eq!(rows[2][4], "0.405523");
    }
}
