//! Stored fixtures and their expected verdicts.

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use nmsize::io::{parse_system, FiltersDoc};
use nmsize::{verify_correspondence, verify_implication, verify_two_small, Condition, Direction, Mode, SearchSpec};

use crate::{render, CliError, ReproArgs, Result};

const EXPECTED: &str = include_str!("../fixtures/expected.json");

/// System files shipped with the fixtures.
pub const SYSTEMS: &[(&str, &str)] = &[
    ("independence-1.json", include_str!("../fixtures/systems/independence-1.json")),
    ("independence-2.json", include_str!("../fixtures/systems/independence-2.json")),
    ("singletons-3.json", include_str!("../fixtures/systems/singletons-3.json")),
    ("singletons-4.json", include_str!("../fixtures/systems/singletons-4.json")),
    ("singletons-5.json", include_str!("../fixtures/systems/singletons-5.json")),
    ("omega-1.json", include_str!("../fixtures/systems/omega-1.json")),
    ("omega-2.json", include_str!("../fixtures/systems/omega-2.json")),
    ("omega-3.json", include_str!("../fixtures/systems/omega-3.json")),
];

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub description: String,
    #[serde(flatten)]
    pub kind: Kind,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Kind {
    Checks {
        system: String,
        expect: Map<String, Value>,
        #[serde(default)]
        witness: Map<String, Value>,
    },
    Implications {
        size: usize,
        monotone: bool,
        claims: Vec<Claim>,
    },
    TwoSmall {
        max_size: usize,
        holds: bool,
    },
    Correspondence {
        row: usize,
        direction: String,
        max_size: usize,
        holds: bool,
        #[serde(default)]
        non_implication_confirmed: bool,
        witness_filters: Option<Value>,
    },
}

#[derive(Clone, Debug, Deserialize)]
pub struct Claim {
    pub required: Vec<String>,
    pub target: String,
    pub holds: bool,
}

/// Every fixture, in file order.
pub fn all() -> &'static [(String, Fixture)] {
    static TABLE: OnceLock<Vec<(String, Fixture)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m: Map<String, Value> = serde_json::from_str(EXPECTED).expect("fixture table parses");
        m.into_iter()
            .map(|(id, v)| {
                let f = serde_json::from_value(v).unwrap_or_else(|e| panic!("fixture {id}: {e}"));
                (id, f)
            })
            .collect()
    })
}

pub fn lookup(id: &str) -> Option<&'static Fixture> {
    all().iter().find(|(i, _)| i == id).map(|(_, f)| f)
}

pub fn system_text(name: &str) -> Option<&'static str> {
    SYSTEMS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// One compared verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Line {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

fn line(check: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Line {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Line { check: check.into(), ok: expected == actual, expected, actual }
}

fn verdict(holds: bool) -> &'static str {
    if holds {
        "holds"
    } else {
        "fails"
    }
}

fn sets(v: &Value) -> String {
    let list = v.as_array().map(Vec::as_slice).unwrap_or_default();
    let parts: Vec<String> = list
        .iter()
        .map(|s| {
            let labels: Vec<String> =
                s.as_array().into_iter().flatten().map(|l| l.as_str().unwrap_or_default().to_string()).collect();
            render::set(&labels)
        })
        .collect();
    parts.join(" ")
}

fn condition(name: &str) -> Result<Condition> {
    Ok(name.parse()?)
}

/// Runs one fixture and compares every stored verdict.
pub fn evaluate(f: &Fixture) -> Result<Vec<Line>> {
    let mut out = Vec::new();
    match &f.kind {
        Kind::Checks { system, expect, witness } => {
            let text = system_text(system).ok_or_else(|| CliError::Usage(format!("missing system file {system}")))?;
            let s = parse_system(text)?.system;
            for (name, want) in expect {
                let r = condition(name)?.check(&s)?;
                out.push(line(name.as_str(), verdict(want.as_bool().unwrap_or_default()), verdict(r.holds)));
                if let Some(w) = witness.get(name) {
                    let got: Vec<String> = r.witness.iter().flatten().map(|e| render::set(&e.set)).collect();
                    out.push(line(format!("{name} witness"), sets(w), got.join(" ")));
                }
            }
        }
        Kind::Implications { size, monotone, claims } => {
            for c in claims {
                let mut spec = SearchSpec::new(*size, Mode::VerifyImplication).monotone(*monotone);
                for r in &c.required {
                    spec = spec.require(condition(r)?);
                }
                spec = spec.target(condition(&c.target)?);
                let o = verify_implication(&spec)?;
                out.push(line(o.report.condition.clone(), verdict(c.holds), verdict(o.report.holds)));
            }
        }
        Kind::TwoSmall { max_size, holds } => {
            let o = verify_two_small(*max_size)?;
            out.push(line(o.report.condition.clone(), verdict(*holds), verdict(o.report.holds)));
        }
        Kind::Correspondence { row, direction, max_size, holds, non_implication_confirmed, witness_filters } => {
            let dir: Direction = direction.parse()?;
            let r = verify_correspondence(*row, dir, *max_size)?;
            let label = nmsize::preferential::row(*row)?.label();
            out.push(line(format!("{label} {dir}"), verdict(*holds), verdict(r.holds)));
            out.push(line("non-implication confirmed", non_implication_confirmed, r.non_implication_confirmed));
            if let Some(want) = witness_filters {
                let got =
                    r.witness.as_ref().map(|w| serde_json::to_string(&FiltersDoc(&w.system)).expect("serializable"));
                let want = serde_json::to_string(want).expect("serializable");
                out.push(line("witness filters", want, got.unwrap_or_else(|| "none".into())));
            }
        }
    }
    Ok(out)
}

fn unknown(id: &str) -> CliError {
    let ids: Vec<&str> = all().iter().map(|(i, _)| i.as_str()).collect();
    CliError::Usage(format!("unknown fixture {id:?}; known: {}", ids.join(", ")))
}

pub fn repro(a: &ReproArgs, json: bool, out: &mut String) -> Result<i32> {
    if a.list {
        if json {
            let rows: Vec<Value> =
                all().iter().map(|(i, f)| serde_json::json!({ "id": i, "description": f.description })).collect();
            out.push_str(&crate::to_json(&rows));
        } else {
            for (i, f) in all() {
                let _ = writeln!(out, "{i:<18} {}", f.description);
            }
        }
        return Ok(0);
    }
    let ids: Vec<&str> = match &a.id {
        Some(id) => vec![lookup(id).map(|_| id.as_str()).ok_or_else(|| unknown(id))?],
        None => all().iter().map(|(i, _)| i.as_str()).collect(),
    };
    let mut docs = Vec::new();
    let mut failed = 0;
    for id in ids {
        let f = lookup(id).expect("listed");
        let lines = evaluate(f)?;
        let ok = lines.iter().all(|l| l.ok);
        failed += usize::from(!ok);
        if json {
            docs.push(serde_json::json!({ "id": id, "description": f.description, "lines": lines, "ok": ok }));
        } else {
            let _ = writeln!(out, "{id}  {}", f.description);
            for l in &lines {
                let mark = if l.ok { "ok" } else { "MISMATCH" };
                if l.ok {
                    let _ = writeln!(out, "  {:<44} {:<8} {mark}", l.check, l.actual);
                } else {
                    let _ = writeln!(out, "  {:<44} expected {} got {} {mark}", l.check, l.expected, l.actual);
                }
            }
        }
    }
    if json {
        let doc = if a.id.is_some() { docs.pop().expect("one fixture") } else { Value::Array(docs) };
        out.push_str(&crate::to_json(&doc));
    } else if a.id.is_none() {
        let _ = writeln!(out, "{} fixtures, {failed} mismatched", all().len());
    }
    Ok(i32::from(failed > 0))
}
