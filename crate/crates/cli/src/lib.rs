//! Command-line front end for the nmsize workbench.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use nmsize::io::{parse_mu, parse_system, SystemDoc, SystemFile};
use nmsize::preferential::row;
use nmsize::{
    check_mu_rule, count, derive_relation, find_counterexample, mu_to_rule_bridge, nm_entails_formulas, parse_formula,
    verify_correspondence, verify_implication, with_parallelism, CheckReport, Condition, Direction, Interpretation,
    Mode, MuFunction, MuRuleId, PropertyId, RuleId, SearchSpec,
};

pub mod fixtures;
pub mod render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nmsize::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_capacity() => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Parser)]
#[command(name = "nmsize", version, about = "Check abstract size systems, choice functions and their rules")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a system or choice file and report its structure.
    Validate(ValidateArgs),
    /// Check size properties of a system.
    Check(CheckArgs),
    /// Check consequence rules of a system.
    Rules(RulesArgs),
    /// Check choice-function rules, or verify a correspondence row.
    Mu(MuArgs),
    /// Dump the consequence relation of a system.
    Derive(DeriveArgs),
    /// Enumerate small systems.
    Search(SearchArgs),
    /// Replay a stored fixture against its expected verdicts.
    Repro(ReproArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// System file.
    #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
    pub system: Option<PathBuf>,
    /// Choice-function file.
    #[arg(long)]
    pub mu: Option<PathBuf>,
    /// Reject ideals that are not downward closed.
    #[arg(long)]
    pub monotone: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// System file.
    #[arg(long)]
    pub system: PathBuf,
    /// Comma-separated property names; `level:n` is accepted.
    #[arg(long, value_delimiter = ',', conflicts_with = "all", required_unless_present = "all")]
    pub props: Vec<String>,
    /// Check every property.
    #[arg(long)]
    pub all: bool,
    /// JSON object of expected verdicts keyed by name.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RulesArgs {
    /// System file.
    #[arg(long)]
    pub system: PathBuf,
    /// Comma-separated rule names.
    #[arg(long, value_delimiter = ',', conflicts_with = "all", required_unless_present = "all")]
    pub rules: Vec<String>,
    /// Check every rule.
    #[arg(long)]
    pub all: bool,
    /// JSON object of expected verdicts keyed by name.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    /// Choice-function file.
    #[arg(long, conflicts_with = "row", required_unless_present = "row")]
    pub mu: Option<PathBuf>,
    /// Choice rules, or consequence rules checked on the generated system.
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    pub rules: Vec<String>,
    /// Check every choice rule.
    #[arg(long)]
    pub all: bool,
    /// Correspondence row, 1 to 10.
    #[arg(long)]
    pub row: Option<usize>,
    /// `fwd` or `bwd`; both when absent.
    #[arg(long, requires = "row")]
    pub direction: Option<String>,
    /// Largest universe size for row checks.
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    /// JSON object of expected verdicts keyed by name.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// System file.
    #[arg(long)]
    pub system: PathBuf,
    /// Antecedent formula; atoms come from the file or default to `p0, p1, ...`.
    #[arg(long, requires = "then")]
    pub query: Option<String>,
    /// Consequent formula.
    #[arg(long, requires = "query")]
    pub then: Option<String>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Universe size.
    #[arg(long, visible_alias = "max-size")]
    pub size: usize,
    /// Comma-separated premise conditions.
    #[arg(long, value_delimiter = ',')]
    pub required: Vec<String>,
    /// Condition to refute or count.
    #[arg(long)]
    pub target: Option<String>,
    /// `find-counterexample`, `verify-implication` or `count`.
    #[arg(long, default_value = "find-counterexample")]
    pub mode: String,
    /// Include ideals that are not downward closed.
    #[arg(long)]
    pub all_families: bool,
    /// One system per relabelling class.
    #[arg(long)]
    pub canonical: bool,
    /// Append found witnesses as JSON lines.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    /// Fixture id.
    #[arg(required_unless_present_any = ["list", "all"])]
    pub id: Option<String>,
    /// List fixture ids.
    #[arg(long)]
    pub list: bool,
    /// Replay every fixture.
    #[arg(long, conflicts_with = "id")]
    pub all: bool,
}

/// Result of a run: exit status and standard output.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs them, never exiting the process.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let mut out = String::new();
    let res = with_parallelism(cli.jobs, || run(cli, &mut out));
    match res {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: out, stderr: format!("error: {e}\n") },
    }
}

pub fn run(cli: &Cli, out: &mut String) -> Result<i32> {
    match &cli.command {
        Command::Validate(a) => validate(a, cli.json, out),
        Command::Check(a) => check(a, cli.json, out),
        Command::Rules(a) => rules(a, cli.json, out),
        Command::Mu(a) => mu(a, cli.json, out),
        Command::Derive(a) => derive(a, cli.json, out),
        Command::Search(a) => search(a, cli.json, out),
        Command::Repro(a) => fixtures::repro(a, cli.json, out),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn load_system(path: &Path) -> Result<SystemFile> {
    Ok(parse_system(&read(path)?)?)
}

fn load_mu(path: &Path) -> Result<MuFunction> {
    Ok(parse_mu(&read(path)?)?)
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn validate(a: &ValidateArgs, json: bool, out: &mut String) -> Result<i32> {
    if let Some(p) = &a.mu {
        let mu = load_mu(p)?;
        let empty: Vec<String> =
            mu.choice_listing().iter().filter(|(_, f)| f.is_empty()).map(|(x, _)| mu.universe().show(x)).collect();
        if json {
            out.push_str(&to_json(&json!({
                "kind": "mu",
                "name": mu.name(),
                "universe": mu.universe().labels(),
                "domain_sets": mu.domain().len(),
                "full_domain": mu.is_full_domain(),
                "empty_choices": empty,
            })));
        } else {
            let u = mu.universe();
            let _ = writeln!(
                out,
                "choice function {} on {} ({} domain sets)",
                mu.name(),
                render::set(u.labels()),
                mu.domain().len()
            );
            for (x, fx) in mu.choice_listing() {
                let _ = writeln!(out, "  f({}) = {}", u.key(&x), u.show(&fx));
            }
            if !empty.is_empty() {
                let _ = writeln!(out, "  empty choice at {}", empty.join(" "));
            }
        }
        return Ok(0);
    }
    let path = a.system.as_ref().expect("clap requires one input");
    let file = load_system(path)?;
    let s = &file.system;
    if a.monotone {
        s.check_monotone()?;
    }
    let basics: Vec<CheckReport> = [PropertyId::Opt, PropertyId::IM]
        .into_iter()
        .map(|p| nmsize::check_property(s, p))
        .collect::<nmsize::Result<_>>()?;
    let principal = s.principal_mu().err().map(|e| e.to_string());
    if json {
        out.push_str(&to_json(&json!({
            "kind": "system",
            "name": s.name(),
            "system": SystemDoc(s),
            "checks": basics,
            "principal": principal.is_none(),
        })));
    } else {
        out.push_str(&render::system(s));
        for r in &basics {
            out.push_str(&render::report(r));
        }
        match principal {
            None => out.push_str("filters are principal\n"),
            Some(e) => {
                let _ = writeln!(out, "filters are not principal: {e}");
            }
        }
    }
    Ok(0)
}

fn expected(path: &Option<PathBuf>) -> Result<Option<serde_json::Map<String, Value>>> {
    let Some(p) = path else { return Ok(None) };
    match serde_json::from_str::<Value>(&read(p)?) {
        Ok(Value::Object(m)) if m.values().all(Value::is_boolean) => Ok(Some(m)),
        Ok(_) => Err(nmsize::Error::Input(format!("{} must map names to booleans", p.display())).into()),
        Err(e) => Err(nmsize::Error::Input(format!("{}: {e}", p.display())).into()),
    }
}

/// One verdict line; `Err` carries an inapplicability message.
type Verdict = (String, std::result::Result<CheckReport, String>);

fn emit_verdicts(
    verdicts: &[Verdict],
    expect: Option<serde_json::Map<String, Value>>,
    json: bool,
    out: &mut String,
) -> i32 {
    let mut mismatches = Vec::new();
    if let Some(m) = &expect {
        for (name, want) in m {
            let got = verdicts.iter().find(|(n, _)| n == name).and_then(|(_, r)| r.as_ref().ok()).map(|r| r.holds);
            if got != want.as_bool() {
                mismatches.push(json!({ "name": name, "expected": want, "actual": got }));
            }
        }
    }
    if json {
        let rows: Vec<Value> = verdicts
            .iter()
            .map(|(n, r)| match r {
                Ok(rep) => serde_json::to_value(rep).expect("serializable"),
                Err(e) => json!({ "condition": n, "error": e }),
            })
            .collect();
        let mut doc = json!({ "reports": rows });
        if expect.is_some() {
            doc["mismatches"] = Value::Array(mismatches.clone());
        }
        out.push_str(&to_json(&doc));
    } else {
        for (n, r) in verdicts {
            match r {
                Ok(rep) => out.push_str(&render::report(rep)),
                Err(e) => {
                    let _ = writeln!(out, "{n:<16} n/a    {e}");
                }
            }
        }
        for m in &mismatches {
            let _ = writeln!(
                out,
                "mismatch {}: expected {} got {}",
                m["name"].as_str().unwrap_or(""),
                m["expected"],
                m["actual"]
            );
        }
    }
    i32::from(!mismatches.is_empty())
}

fn property_condition(name: &str) -> Result<Condition> {
    if name.starts_with("level:") {
        return Ok(name.parse()?);
    }
    Ok(Condition::Property(name.parse()?))
}

fn collect(s: &nmsize::SizeSystem, conds: Vec<(String, Condition)>) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for (n, c) in conds {
        match c.check(s) {
            Ok(r) => v.push((n, Ok(r))),
            Err(e @ (nmsize::Error::DomainNotClosed(_) | nmsize::Error::DomainNotFull)) => {
                v.push((n, Err(e.to_string())))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(v)
}

fn check(a: &CheckArgs, json: bool, out: &mut String) -> Result<i32> {
    let expect = expected(&a.expect)?;
    let s = load_system(&a.system)?.system;
    let conds: Vec<(String, Condition)> = if a.all {
        PropertyId::catalogue(s.universe().len()).into_iter().map(|p| (p.to_string(), Condition::Property(p))).collect()
    } else {
        a.props.iter().map(|n| Ok((n.clone(), property_condition(n)?))).collect::<Result<_>>()?
    };
    let verdicts = collect(&s, conds)?;
    Ok(emit_verdicts(&verdicts, expect, json, out))
}

fn rules(a: &RulesArgs, json: bool, out: &mut String) -> Result<i32> {
    let expect = expected(&a.expect)?;
    let s = load_system(&a.system)?.system;
    let conds: Vec<(String, Condition)> = if a.all {
        RuleId::catalogue(s.universe().len()).into_iter().map(|r| (r.to_string(), Condition::Rule(r))).collect()
    } else {
        a.rules.iter().map(|n| Ok((n.clone(), Condition::Rule(n.parse()?)))).collect::<Result<_>>()?
    };
    let verdicts = collect(&s, conds)?;
    Ok(emit_verdicts(&verdicts, expect, json, out))
}

fn mu(a: &MuArgs, json: bool, out: &mut String) -> Result<i32> {
    if let Some(n) = a.row {
        let r = row(n)?;
        let dirs = match &a.direction {
            Some(d) => vec![d.parse::<Direction>()?],
            None => vec![Direction::Forward, Direction::Backward],
        };
        let reports: Vec<_> =
            dirs.into_iter().map(|d| verify_correspondence(n, d, a.max_size)).collect::<nmsize::Result<_>>()?;
        if json {
            out.push_str(&to_json(&reports));
        } else {
            for rep in &reports {
                out.push_str(&render::correspondence(rep, &r.label()));
            }
        }
        return Ok(0);
    }
    let expect = expected(&a.expect)?;
    let m = load_mu(a.mu.as_ref().expect("clap requires one input"))?;
    let names: Vec<String> = if a.all || a.rules.is_empty() {
        MuRuleId::ALL.iter().map(|r| r.to_string()).collect()
    } else {
        a.rules.clone()
    };
    let mut verdicts = Vec::new();
    for n in names {
        let got = match n.parse::<MuRuleId>() {
            Ok(r) => check_mu_rule(&m, r),
            Err(_) => mu_to_rule_bridge(&m, n.parse()?),
        };
        match got {
            Ok(r) => verdicts.push((n, Ok(r))),
            Err(e @ (nmsize::Error::DomainNotClosed(_) | nmsize::Error::DomainNotFull)) => {
                verdicts.push((n, Err(e.to_string())))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(emit_verdicts(&verdicts, expect, json, out))
}

fn derive(a: &DeriveArgs, json: bool, out: &mut String) -> Result<i32> {
    let file = load_system(&a.system)?;
    let s = &file.system;
    let u = s.universe();
    if let (Some(q), Some(t)) = (&a.query, &a.then) {
        let interp = file.atoms.clone().unwrap_or_else(|| Interpretation::canonical(u));
        let (f, g) = (parse_formula(q)?, parse_formula(t)?);
        let holds = nm_entails_formulas(s, &interp, &f, &g)?;
        if json {
            out.push_str(&to_json(
                &json!({ "antecedent": f.to_string(), "consequent": g.to_string(), "holds": holds }),
            ));
        } else {
            let _ = writeln!(out, "{f} |~ {g}: {holds}");
        }
        return Ok(0);
    }
    let rel = derive_relation(s)?;
    if json {
        let pairs: Vec<Value> =
            rel.iter().map(|(x, y)| json!({ "antecedent": u.labels_of(x), "consequent": u.labels_of(y) })).collect();
        out.push_str(&to_json(&json!({ "system": s.name(), "pairs": pairs })));
    } else {
        for (x, y) in &rel {
            let _ = writeln!(out, "{} |~ {}", u.show(x), u.show(y));
        }
        let _ = writeln!(out, "{} pairs", rel.len());
    }
    Ok(0)
}

fn search_spec(a: &SearchArgs) -> Result<SearchSpec> {
    let mode: Mode = a.mode.parse()?;
    let mut spec = SearchSpec::new(a.size, mode).monotone(!a.all_families).canonical(a.canonical);
    for r in &a.required {
        spec = spec.require(r.parse()?);
    }
    if let Some(t) = &a.target {
        spec = spec.target(t.parse()?);
    }
    Ok(spec)
}

fn append_log(path: &Path, record: &Value) -> Result<()> {
    let err = |source| CliError::Write { path: path.to_path_buf(), source };
    let mut f = fs::OpenOptions::new().create(true).append(true).open(path).map_err(err)?;
    writeln!(f, "{}", serde_json::to_string(record).expect("serializable")).map_err(err)
}

fn search(a: &SearchArgs, json: bool, out: &mut String) -> Result<i32> {
    let spec = search_spec(a)?;
    let header = |out: &mut String| {
        let lhs: Vec<String> = spec.required.iter().map(|c| c.to_string()).collect();
        let target = spec.target.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        let space = if spec.monotone_only { "monotone" } else { "all families" };
        let canon = if spec.canonical_only { ", canonical" } else { "" };
        let _ =
            writeln!(out, "{} size {} ({space}{canon}): [{}] => {target}", a.mode, spec.universe_size, lhs.join(", "));
    };
    match spec.mode {
        Mode::Count => {
            let c = count(&spec)?;
            if json {
                out.push_str(&to_json(&json!({ "spec": spec, "count": c })));
            } else {
                header(out);
                let _ = writeln!(out, "enumerated {}, satisfying {}", c.enumerated, c.satisfying);
            }
        }
        Mode::FindCounterexample => {
            let cx = find_counterexample(&spec)?;
            let record = cx.as_ref().map(|c| json!({ "system": SystemDoc(&c.system), "report": c.report }));
            if let (Some(path), Some(r)) = (&a.log, &record) {
                append_log(path, &json!({ "spec": spec, "witness": r }))?;
            }
            if json {
                out.push_str(&to_json(&json!({ "spec": spec, "counterexample": record })));
            } else {
                header(out);
                match &cx {
                    None => out.push_str("no counterexample\n"),
                    Some(c) => {
                        out.push_str(&render::system(&c.system));
                        out.push_str(&render::report(&c.report));
                    }
                }
            }
        }
        Mode::VerifyImplication => {
            let o = verify_implication(&spec)?;
            let record =
                o.counterexample.as_ref().map(|c| json!({ "system": SystemDoc(&c.system), "report": c.report }));
            if let (Some(path), Some(r)) = (&a.log, &record) {
                append_log(path, &json!({ "spec": spec, "witness": r }))?;
            }
            if json {
                out.push_str(&to_json(&json!({ "spec": spec, "report": o.report, "counterexample": record })));
            } else {
                header(out);
                out.push_str(&render::report(&o.report));
                if let Some(c) = &o.counterexample {
                    out.push_str(&render::system(&c.system));
                }
            }
        }
    }
    Ok(0)
}
