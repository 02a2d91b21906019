use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ucfam::analysis::{closure_tree_with, density_census_with, Enumeration};
use ucfam::{
    brute_force_closure_roots, closure_trace, density_report, format_family, format_set,
    frankl_check, has_closure_root, iterated_closure, parse_family, run_suite, s_param, Check,
    ConstructionSpec, ElementSet, Exec, RootSearch, SetFamily, SuiteConfig, Threshold,
};

const SCHEMA_VERSION: u32 = 1;

const EXIT_VALIDATION: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "ucfam", version, about = "Closures, density and closure roots of union-closed families")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure of a family (or its t-fold closure with --times).
    Closure {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Every iterated closure up to the power set.
    Trace {
        #[command(flatten)]
        source: Source,
    },
    /// Density, s(F) and whether s(F) + 1 = density.
    Density {
        #[command(flatten)]
        source: Source,
    },
    /// Longest member chain below a non-member.
    SParam {
        #[command(flatten)]
        source: Source,
    },
    /// Closure-root test for a 1-dense family.
    Root {
        #[command(flatten)]
        source: Source,
        /// Also run the exhaustive subfamily search.
        #[arg(long)]
        brute: bool,
        /// Largest family the exhaustive search accepts.
        #[arg(long, default_value_t = ucfam::relative::DEFAULT_ROOT_MEMBER_CAP)]
        member_cap: usize,
    },
    /// Print a named construction.
    Construct {
        #[command(flatten)]
        source: Source,
    },
    /// Counts of union-closed families over [n] by density.
    Census {
        #[arg(long)]
        n: u32,
        /// Allow n = 5.
        #[arg(long)]
        long_run: bool,
    },
    /// The closure tree over [n] as `child_id parent_id` lines.
    Tree {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        long_run: bool,
        /// Write the edge list here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Most frequent element and the half threshold.
    Frankl {
        #[command(flatten)]
        source: Source,
        /// Require 2·count >= |F| instead of count >= floor(|F|/2).
        #[arg(long)]
        strict_half: bool,
    },
    /// Run the verification suite.
    VerifyPaper {
        /// Checks to run (default: all).
        #[arg(value_enum)]
        checks: Vec<SuiteCheck>,
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// Largest universe tried.
        #[arg(long, default_value_t = 6)]
        max_n: u32,
    },
    /// Canonical form under relabelling of [n].
    Iso {
        #[command(flatten)]
        source: Source,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SuiteCheck {
    Laws,
    Chain,
    Lift,
    Path,
    Relative,
    Roots,
    Census,
    Probe,
    Frankl,
}

impl SuiteCheck {
    fn check(self) -> Check {
        match self {
            SuiteCheck::Laws => Check::Laws,
            SuiteCheck::Chain => Check::Chain,
            SuiteCheck::Lift => Check::Lift,
            SuiteCheck::Path => Check::Path,
            SuiteCheck::Relative => Check::Relative,
            SuiteCheck::Roots => Check::Roots,
            SuiteCheck::Census => Check::Census,
            SuiteCheck::Probe => Check::Probe,
            SuiteCheck::Frankl => Check::Frankl,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Chain,
    Lifted,
    Path,
    PathUpset,
    LooseBound,
    IntervalChain,
    CubePlusUniverse,
    UpSet,
    PowerSet,
}

/// Where the family comes from: a file or an inline construction.
#[derive(Args, Debug)]
struct Source {
    /// Family file: optional `universe n` line, then one set per line.
    #[arg(long, conflicts_with = "construct")]
    input: Option<PathBuf>,
    /// Named construction.
    #[arg(long, value_enum)]
    construct: Option<Kind>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    c: Option<u32>,
    /// Base family file for `lifted`.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Generators for `up-set`, e.g. "1 2, 2 3".
    #[arg(long)]
    gens: Option<String>,
}

fn read_family(path: &PathBuf) -> anyhow::Result<SetFamily> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).with_context(|| format!("in {}", path.display()))
}

impl Source {
    fn spec(&self) -> anyhow::Result<ConstructionSpec> {
        let Some(kind) = self.construct else { bail!(UsageError("--construct is required".into())) };
        let need = |v: Option<u32>, flag: &str| {
            v.ok_or_else(|| anyhow::Error::new(UsageError(format!("--{flag} is required for this construction"))))
        };
        let n = need(self.n, "n")?;
        Ok(match kind {
            Kind::Chain => ConstructionSpec::Chain { n },
            Kind::Lifted => {
                let path = self.base.as_ref().ok_or_else(|| UsageError("--base is required for lifted".into()))?;
                ConstructionSpec::Lifted { base: read_family(path)?, n }
            }
            Kind::Path => ConstructionSpec::Path { n },
            Kind::PathUpset => ConstructionSpec::PathUpSet { n },
            Kind::LooseBound => ConstructionSpec::LooseBound { n },
            Kind::IntervalChain => {
                ConstructionSpec::IntervalChain { c: need(self.c, "c")?, k: need(self.k, "k")?, n }
            }
            Kind::CubePlusUniverse => ConstructionSpec::CubePlusUniverse { n },
            Kind::UpSet => {
                let raw = self.gens.as_deref().ok_or_else(|| UsageError("--gens is required for up-set".into()))?;
                ConstructionSpec::UpSet { generators: parse_generators(raw)?, n }
            }
            Kind::PowerSet => ConstructionSpec::PowerSet { n },
        })
    }

    fn family(&self) -> anyhow::Result<SetFamily> {
        match &self.input {
            Some(path) => read_family(path),
            None if self.construct.is_some() => Ok(self.spec()?.build()?.family),
            None => bail!(UsageError("give --input FILE or --construct KIND".into())),
        }
    }
}

fn parse_generators(raw: &str) -> anyhow::Result<Vec<ElementSet>> {
    raw.split(',')
        .map(|part| {
            let elems = part
                .split_whitespace()
                .map(|t| match t.parse::<u32>() {
                    Ok(e) if (1..=32).contains(&e) => Ok(e),
                    _ => Err(UsageError(format!("bad generator element {t:?}"))),
                })
                .collect::<Result<Vec<u32>, _>>()?;
            Ok(ElementSet::from_elements(elems))
        })
        .collect()
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Raised when a verification ran and found a failure.
#[derive(Debug)]
struct VerificationFailure;

impl std::fmt::Display for VerificationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("verification failed")
    }
}

impl std::error::Error for VerificationFailure {}

struct Output {
    format: Format,
    text: String,
    json: Value,
}

fn envelope(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Some(d), Value::Object(b)) = (doc.as_object_mut(), body) {
        d.extend(b);
    }
    doc
}

fn family_json(f: &SetFamily) -> Value {
    serde_json::to_value(f).expect("family serializes")
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global().ok();
    }
    let (text, json) = match &cli.command {
        Command::Closure { source, times } => {
            let f = source.family()?;
            let c = iterated_closure(&f, *times)?;
            (format_family(&c), envelope("closure", json!({ "times": times, "family": family_json(&c) })))
        }
        Command::Trace { source } => {
            let trace = closure_trace(&source.family()?)?;
            let mut text = String::new();
            for (i, level) in trace.levels.iter().enumerate() {
                writeln!(text, "--- level {i}")?;
                text.push_str(&format_family(level));
            }
            let levels: Vec<Value> = trace.levels.iter().map(family_json).collect();
            (text, envelope("trace", json!({ "density": trace.density(), "levels": levels })))
        }
        Command::Density { source } => {
            let r = density_report(&source.family()?)?;
            let text = format!("density={} s={} bound_tight={}\n", r.density, r.s_param, r.bound_tight);
            (text, envelope("density", serde_json::to_value(r)?))
        }
        Command::SParam { source } => {
            let s = s_param(&source.family()?)?;
            (format!("s={s}\n"), envelope("s-param", json!({ "s": s })))
        }
        Command::Root { source, brute, member_cap } => {
            let f = source.family()?;
            let cert = has_closure_root(&f)?;
            let gens: Vec<String> = cert.generating_set.iter().map(|g| format!("{{{}}}", format_set(*g))).collect();
            let mut text = format!("has_root={}\ngenerating_set={}\n", cert.has_root, gens.join(" "));
            writeln!(text, "--- relative_generated")?;
            text.push_str(&format_family(&cert.relative_generated));
            writeln!(text, "--- closure_of_generated")?;
            text.push_str(&format_family(&cert.closure_of_generated));
            let mut body = json!({ "certificate": cert });
            if *brute {
                let opts = RootSearch { member_cap: *member_cap, ..RootSearch::default() };
                let roots = brute_force_closure_roots(&f, opts)?;
                writeln!(text, "brute_force_roots={}", roots.len())?;
                body["brute_force_roots"] = json!(roots.len());
                if (!roots.is_empty()) != cert.has_root {
                    emit(&Output { format: cli.format, text, json: envelope("root", body) });
                    bail!(VerificationFailure);
                }
            }
            (text, envelope("root", body))
        }
        Command::Construct { source } => {
            let built = source.spec()?.build()?;
            (format_family(&built.family), envelope("construct", serde_json::to_value(&built)?))
        }
        Command::Census { n, long_run } => {
            let opts = Enumeration { allow_long_run: *long_run, exec: Exec::Parallel };
            let c = density_census_with(*n, opts)?;
            let mut text = format!("n={} total={}\n", c.n, c.total);
            for (k, count) in &c.labelled_counts {
                write!(text, "density={k} labelled={count} iso={} leaves={}", c.iso_counts[k], c.leaf_counts[k])?;
                if let Some(b) = c.lower_bounds.get(k) {
                    write!(text, " lower_bound={b}")?;
                }
                text.push('\n');
            }
            (text, envelope("census", serde_json::to_value(&c)?))
        }
        Command::Tree { n, long_run, output } => {
            let opts = Enumeration { allow_long_run: *long_run, exec: Exec::Parallel };
            let t = closure_tree_with(*n, opts)?;
            let edges = t.edge_list();
            let text = match output {
                Some(path) => {
                    std::fs::write(path, &edges).with_context(|| format!("writing {}", path.display()))?;
                    format!("nodes={} depth={} leaves={} root={}\n", t.nodes.len(), t.depth, t.leaves.len(), t.root)
                }
                None => edges,
            };
            let edge_pairs: Vec<[usize; 2]> = t.parent.iter().enumerate().map(|(c, &p)| [c, p]).collect();
            let body = json!({
                "n": t.n,
                "root": t.root,
                "depth": t.depth,
                "leaves": t.leaves,
                "edges": edge_pairs,
                "nodes": t.nodes.iter().map(family_json).collect::<Vec<_>>(),
            });
            (text, envelope("tree", body))
        }
        Command::Frankl { source, strict_half } => {
            let threshold = if *strict_half { Threshold::Half } else { Threshold::Floor };
            let r = frankl_check(&source.family()?, threshold);
            let text = format!("element={} count={} size={} satisfied={}\n", r.element, r.count, r.size, r.satisfied);
            (text, envelope("frankl", serde_json::to_value(&r)?))
        }
        Command::VerifyPaper { checks, all, max_n } => {
            let selected: Vec<Check> = if *all || checks.is_empty() {
                Check::ALL.to_vec()
            } else {
                checks.iter().map(|c| c.check()).collect()
            };
            let report = run_suite(&SuiteConfig { checks: selected, max_n: *max_n });
            let mut text = String::new();
            for o in &report.outcomes {
                let verdict = if o.passed { "PASS" } else { "FAIL" };
                writeln!(text, "{}: {verdict} ({})", o.check, o.detail)?;
            }
            let passed = report.passed();
            writeln!(text, "verify-paper: {}", if passed { "PASS" } else { "FAIL" })?;
            let body = json!({ "passed": passed, "report": report });
            let out = Output { format: cli.format, text, json: envelope("verify-paper", body) };
            if !passed {
                emit(&out);
                bail!(VerificationFailure);
            }
            return Ok(out);
        }
        Command::Iso { source } => {
            let c = source.family()?.canonical_iso_form()?;
            (format_family(&c), envelope("iso", json!({ "canonical": family_json(&c) })))
        }
    };
    Ok(Output { format: cli.format, text, json })
}

fn emit(out: &Output) {
    match out.format {
        Format::Text => print!("{}", out.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json renders")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) if e.is::<VerificationFailure>() => ExitCode::from(EXIT_VERIFICATION),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                return ExitCode::from(EXIT_USAGE);
            }
            match e.downcast_ref::<ucfam::Error>() {
                Some(ucfam::Error::VerificationFailed(_) | ucfam::Error::DisagreementFound(_)) => {
                    ExitCode::from(EXIT_VERIFICATION)
                }
                _ => ExitCode::from(EXIT_VALIDATION),
            }
        }
    }
}
