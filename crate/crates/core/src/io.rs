//! JSON files for systems and choice functions.
//!
//! ```json
//! { "universe": ["x","y","z"], "domain": "full",
//!   "ideals": { "x,z": [[], ["x"]] }, "atoms": { "p": ["x"] } }
//! ```
//!
//! Choice files share the header and carry `"choice": { "x,z": ["z"] }`.
//! Output lists sets in canonical order.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::logic::Interpretation;
use crate::setcore::{Subset, Universe};
use crate::sizesys::{DomainSpec, MuFunction, SizeSystem};

#[derive(Clone, Debug)]
pub struct SystemFile {
    pub system: SizeSystem,
    pub atoms: Option<Interpretation>,
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn object(text: &str) -> Result<Map<String, Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(input("top level must be an object")),
        Err(e) => Err(input(format!("invalid JSON: {e}"))),
    }
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(input(format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn universe(m: &Map<String, Value>) -> Result<Universe> {
    let labels = m.get("universe").ok_or_else(|| input("missing field \"universe\""))?;
    let labels = labels.as_array().ok_or_else(|| input("\"universe\" must be a list of labels"))?;
    let labels: Vec<&str> = labels
        .iter()
        .map(|v| v.as_str().ok_or_else(|| input("universe labels must be strings")))
        .collect::<Result<_>>()?;
    Universe::new(&labels)
}

fn subset(u: &Universe, v: &Value) -> Result<Subset> {
    let items = v.as_array().ok_or_else(|| input("a set must be a list of labels"))?;
    let mut labels = Vec::with_capacity(items.len());
    for item in items {
        labels.push(item.as_str().ok_or_else(|| input("set members must be strings"))?);
    }
    let s = u.subset(&labels)?;
    if s.len() != labels.len() {
        return Err(input(format!("repeated label in {}", u.show(&s))));
    }
    Ok(s)
}

fn domain(u: &Universe, m: &Map<String, Value>) -> Result<DomainSpec> {
    match m.get("domain") {
        None => Ok(DomainSpec::Full),
        Some(Value::String(s)) if s == "full" => Ok(DomainSpec::Full),
        Some(Value::Array(sets)) => Ok(DomainSpec::Explicit(sets.iter().map(|v| subset(u, v)).collect::<Result<_>>()?)),
        Some(_) => Err(input("\"domain\" must be \"full\" or a list of sets")),
    }
}

fn name(m: &Map<String, Value>) -> Result<Option<String>> {
    match m.get("name") {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(input("\"name\" must be a string")),
    }
}

fn entries<'a>(m: &'a Map<String, Value>, field: &str) -> Result<Vec<(&'a String, &'a Value)>> {
    match m.get(field) {
        None => Ok(Vec::new()),
        Some(Value::Object(o)) => Ok(o.iter().collect()),
        Some(_) => Err(input(format!("\"{field}\" must be an object"))),
    }
}

fn atoms(u: &Universe, m: &Map<String, Value>) -> Result<Option<Interpretation>> {
    if m.get("atoms").is_none() {
        return Ok(None);
    }
    let mut i = Interpretation::new(u.clone());
    for (atom, ext) in entries(m, "atoms")? {
        i.bind(atom, subset(u, ext)?)?;
    }
    Ok(Some(i))
}

/// Parses a system file.
pub fn parse_system(text: &str) -> Result<SystemFile> {
    let m = object(text)?;
    check_keys(&m, &["universe", "domain", "ideals", "atoms", "name"])?;
    let u = universe(&m)?;
    let dom = domain(&u, &m)?;
    let mut ideals = Vec::new();
    for (key, members) in entries(&m, "ideals")? {
        let x = u.parse_key(key)?;
        let members = members.as_array().ok_or_else(|| input(format!("ideal of {key:?} must be a list of sets")))?;
        let members = members.iter().map(|v| subset(&u, v)).collect::<Result<Vec<_>>>()?;
        ideals.push((x, members));
    }
    let atoms = atoms(&u, &m)?;
    let mut system = SizeSystem::build(u, dom, ideals)?;
    if let Some(n) = name(&m)? {
        system = system.with_name(n);
    }
    Ok(SystemFile { system, atoms })
}

/// Parses a choice-function file.
pub fn parse_mu(text: &str) -> Result<MuFunction> {
    let m = object(text)?;
    check_keys(&m, &["universe", "domain", "choice", "name"])?;
    let u = universe(&m)?;
    let dom = domain(&u, &m)?;
    let mut choices = Vec::new();
    for (key, fx) in entries(&m, "choice")? {
        choices.push((u.parse_key(key)?, subset(&u, fx)?));
    }
    let mut mu = MuFunction::build(u, dom, choices)?;
    if let Some(n) = name(&m)? {
        mu = mu.with_name(n);
    }
    Ok(mu)
}

struct Labels<'a>(&'a Universe, Subset);

impl Serialize for Labels<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let labels = self.0.labels_of(&self.1);
        let mut seq = ser.serialize_seq(Some(labels.len()))?;
        for l in &labels {
            seq.serialize_element(l)?;
        }
        seq.end()
    }
}

struct Sets<'a>(&'a Universe, &'a [Subset]);

impl Serialize for Sets<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.1.len()))?;
        for s in self.1 {
            seq.serialize_element(&Labels(self.0, *s))?;
        }
        seq.end()
    }
}

struct DomainDoc<'a>(&'a Universe, bool, Vec<Subset>);

impl Serialize for DomainDoc<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        if self.1 {
            ser.serialize_str("full")
        } else {
            Sets(self.0, &self.2).serialize(ser)
        }
    }
}

/// A system in file form; every domain set's ideal is written out.
pub struct SystemDoc<'a>(pub &'a SizeSystem);

impl Serialize for SystemDoc<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let s = self.0;
        let u = s.universe();
        let mut m = ser.serialize_map(Some(3))?;
        m.serialize_entry("universe", u.labels())?;
        m.serialize_entry("domain", &DomainDoc(u, s.is_full_domain(), s.domain()))?;
        m.serialize_entry("ideals", &Listing(u, s.ideal_listing()))?;
        m.end()
    }
}

/// Filters of every domain set, keyed like ideals.
pub struct FiltersDoc<'a>(pub &'a SizeSystem);

impl Serialize for FiltersDoc<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let s = self.0;
        let listing = s.domain().into_iter().map(|x| (x, s.filter_of(&x).expect("domain member"))).collect();
        Listing(s.universe(), listing).serialize(ser)
    }
}

struct Listing<'a>(&'a Universe, Vec<(Subset, Vec<Subset>)>);

impl Serialize for Listing<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(self.1.len()))?;
        for (x, fam) in &self.1 {
            m.serialize_entry(&self.0.key(x), &Sets(self.0, fam))?;
        }
        m.end()
    }
}

pub struct MuDoc<'a>(pub &'a MuFunction);

impl Serialize for MuDoc<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mu = self.0;
        let u = mu.universe();
        let mut m = ser.serialize_map(Some(3))?;
        m.serialize_entry("universe", u.labels())?;
        m.serialize_entry("domain", &DomainDoc(u, mu.is_full_domain(), mu.domain()))?;
        m.serialize_entry("choice", &Choices(u, mu.choice_listing()))?;
        m.end()
    }
}

struct Choices<'a>(&'a Universe, Vec<(Subset, Subset)>);

impl Serialize for Choices<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(self.1.len()))?;
        for (x, fx) in &self.1 {
            m.serialize_entry(&self.0.key(x), &Labels(self.0, *fx))?;
        }
        m.end()
    }
}

pub fn system_to_json(s: &SizeSystem) -> String {
    serde_json::to_string_pretty(&SystemDoc(s)).expect("serializable")
}

pub fn mu_to_json(mu: &MuFunction) -> String {
    serde_json::to_string_pretty(&MuDoc(mu)).expect("serializable")
}
