//! Choice-function conditions and their correspondence with size properties.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::io::{FiltersDoc, MuDoc, SystemDoc};
use crate::properties::{check_property, PropertyId};
use crate::report::CheckReport;
use crate::rules::{check_rule, RuleId};
use crate::search::{scan_mus, scan_systems, Visit};
use crate::setcore::{submasks, Subset, Universe};
use crate::sizesys::{from_mu, DomainSpec, MuFunction, SizeSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MuRuleId {
    MuWOR,
    MuDisjOR,
    MuOR,
    MuPR,
    MuPRprime,
    MuCM,
    MuResM,
    MuCUT,
    MuCUM,
    MuSubsetSupset,
    MuRatM,
    MuEq,
    MuEqPrime,
    MuParallel,
    MuUnion,
    MuUnionPrime,
    MuIn,
    MuEmpty,
    MuEmptyFin,
}

impl MuRuleId {
    pub const ALL: [MuRuleId; 19] = [
        MuRuleId::MuWOR,
        MuRuleId::MuDisjOR,
        MuRuleId::MuOR,
        MuRuleId::MuPR,
        MuRuleId::MuPRprime,
        MuRuleId::MuCM,
        MuRuleId::MuResM,
        MuRuleId::MuCUT,
        MuRuleId::MuCUM,
        MuRuleId::MuSubsetSupset,
        MuRuleId::MuRatM,
        MuRuleId::MuEq,
        MuRuleId::MuEqPrime,
        MuRuleId::MuParallel,
        MuRuleId::MuUnion,
        MuRuleId::MuUnionPrime,
        MuRuleId::MuIn,
        MuRuleId::MuEmpty,
        MuRuleId::MuEmptyFin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MuRuleId::MuWOR => "mu-wOR",
            MuRuleId::MuDisjOR => "mu-disjOR",
            MuRuleId::MuOR => "mu-OR",
            MuRuleId::MuPR => "mu-PR",
            MuRuleId::MuPRprime => "mu-PR'",
            MuRuleId::MuCM => "mu-CM",
            MuRuleId::MuResM => "mu-ResM",
            MuRuleId::MuCUT => "mu-CUT",
            MuRuleId::MuCUM => "mu-CUM",
            MuRuleId::MuSubsetSupset => "mu-subset-supset",
            MuRuleId::MuRatM => "mu-RatM",
            MuRuleId::MuEq => "mu-eq",
            MuRuleId::MuEqPrime => "mu-eq'",
            MuRuleId::MuParallel => "mu-parallel",
            MuRuleId::MuUnion => "mu-union",
            MuRuleId::MuUnionPrime => "mu-union'",
            MuRuleId::MuIn => "mu-in",
            MuRuleId::MuEmpty => "mu-empty",
            MuRuleId::MuEmptyFin => "mu-empty-fin",
        }
    }
}

impl fmt::Display for MuRuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MuRuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MuRuleId::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl Serialize for MuRuleId {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

struct MuChecker<'a> {
    mu: &'a MuFunction,
    report: CheckReport,
    count: u128,
}

impl MuChecker<'_> {
    /// `f` on a set that an instance needs; `f(∅) = ∅`.
    fn get(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Ok(0);
        }
        if !self.mu.has(m) {
            return Err(Error::DomainNotClosed(self.mu.universe().show(&Subset::raw(m, self.mu.width()))));
        }
        Ok(self.mu.f(m))
    }

    fn fail(&mut self, names: &[&str], sets: &[u64]) {
        self.count += 1;
        self.report.fail(self.mu.universe(), names, sets);
    }

    /// Runs `test` over ordered pairs of domain sets; `Ok(None)` skips,
    /// `Ok(Some(ok))` counts an instance.
    fn pairs(&mut self, mut test: impl FnMut(&Self, u64, u64) -> Result<Option<bool>>) -> Result<()> {
        let dom: Vec<u64> = self.mu.domain_masks().collect();
        for &x in &dom {
            for &y in &dom {
                match test(self, x, y)? {
                    None => {}
                    Some(true) => self.count += 1,
                    Some(false) => {
                        self.fail(&["X", "Y"], &[x, y]);
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn run(&mut self, r: MuRuleId) -> Result<()> {
        use MuRuleId::*;
        let full = (1u64 << self.mu.width()) - 1;
        match r {
            MuWOR => self.pairs(|c, x, y| Ok(Some(c.get(x | y)? & !(c.get(x)? | y) == 0))),
            MuDisjOR => self.pairs(|c, x, y| {
                if x & y != 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(x | y)? & !(c.get(x)? | c.get(y)?) == 0))
            }),
            MuOR => self.pairs(|c, x, y| Ok(Some(c.get(x | y)? & !(c.get(x)? | c.get(y)?) == 0))),
            MuPR => self.pairs(|c, x, y| {
                if x & !y != 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(y)? & x & !c.get(x)? == 0))
            }),
            MuPRprime => self.pairs(|c, x, y| Ok(Some(c.get(x)? & y & !c.get(x & y)? == 0))),
            MuCM => self.pairs(|c, x, y| {
                let fx = c.get(x)?;
                if fx & !y != 0 || y & !x != 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(y)? & !fx == 0))
            }),
            MuCUT => self.pairs(|c, x, y| {
                let fx = c.get(x)?;
                if fx & !y != 0 || y & !x != 0 {
                    return Ok(None);
                }
                Ok(Some(fx & !c.get(y)? == 0))
            }),
            MuCUM => self.pairs(|c, x, y| {
                let fx = c.get(x)?;
                if fx & !y != 0 || y & !x != 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(y)? == fx))
            }),
            MuSubsetSupset => self.pairs(|c, x, y| {
                let (fx, fy) = (c.get(x)?, c.get(y)?);
                if fx & !y != 0 || fy & !x != 0 {
                    return Ok(None);
                }
                Ok(Some(fx == fy))
            }),
            MuRatM => self.pairs(|c, x, y| {
                let fy = c.get(y)?;
                if x & !y != 0 || x & fy == 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(x)? & !(fy & x) == 0))
            }),
            MuEq => self.pairs(|c, x, y| {
                let fy = c.get(y)?;
                if x & !y != 0 || x & fy == 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(x)? == fy & x))
            }),
            MuEqPrime => self.pairs(|c, x, y| {
                let fy = c.get(y)?;
                if x & fy == 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(x & y)? == fy & x))
            }),
            MuParallel => self.pairs(|c, x, y| {
                let (fx, fy, fxy) = (c.get(x)?, c.get(y)?, c.get(x | y)?);
                Ok(Some(fxy == fx || fxy == fy || fxy == fx | fy))
            }),
            MuUnion => self.pairs(|c, x, y| {
                let fx = c.get(x)?;
                if c.get(y)? & x & !fx == 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(x | y)? & y == 0))
            }),
            MuUnionPrime => self.pairs(|c, x, y| {
                let fx = c.get(x)?;
                if c.get(y)? & x & !fx == 0 {
                    return Ok(None);
                }
                Ok(Some(c.get(x | y)? == fx))
            }),
            MuResM => {
                let dom: Vec<u64> = self.mu.domain_masks().collect();
                let all = submasks(full);
                for &x in &dom {
                    let fx = self.get(x)?;
                    for &a in all {
                        for &b in all {
                            if fx & !(a & b) != 0 {
                                continue;
                            }
                            if self.get(x & a)? & !b == 0 {
                                self.count += 1;
                            } else {
                                self.fail(&["X", "A", "B"], &[x, a, b]);
                                return Ok(());
                            }
                        }
                    }
                }
                Ok(())
            }
            MuIn => {
                let dom: Vec<u64> = self.mu.domain_masks().collect();
                for &x in &dom {
                    let fx = self.get(x)?;
                    for i in 0..self.mu.width() {
                        let a = 1u64 << i;
                        if x & a == 0 || fx & a != 0 {
                            continue;
                        }
                        let mut ok = false;
                        for j in 0..self.mu.width() {
                            let b = 1u64 << j;
                            if x & b != 0 && self.get(a | b)? & a == 0 {
                                ok = true;
                                break;
                            }
                        }
                        if ok {
                            self.count += 1;
                        } else {
                            self.fail(&["X", "a"], &[x, a]);
                            return Ok(());
                        }
                    }
                }
                Ok(())
            }
            MuEmpty | MuEmptyFin => {
                let dom: Vec<u64> = self.mu.domain_masks().collect();
                for &x in &dom {
                    if self.get(x)? != 0 {
                        self.count += 1;
                    } else {
                        self.fail(&["X"], &[x]);
                        return Ok(());
                    }
                }
                Ok(())
            }
        }
    }
}

pub fn check_mu_rule(mu: &MuFunction, r: MuRuleId) -> Result<CheckReport> {
    let mut c = MuChecker { mu, report: CheckReport::new(mu.name(), r.name()), count: 0 };
    c.run(r)?;
    let mut report = c.report;
    report.instances_checked = u64::try_from(c.count).unwrap_or(u64::MAX);
    if r == MuRuleId::MuEmptyFin {
        report.notes.push("every set is finite, so this coincides with mu-empty".into());
    }
    Ok(report)
}

/// `check_rule` on the system generated by `mu`.
pub fn mu_to_rule_bridge(mu: &MuFunction, r: RuleId) -> Result<CheckReport> {
    check_rule(&from_mu(mu), r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" | "fwd" => Ok(Direction::Forward),
            "backward" | "bwd" => Ok(Direction::Backward),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSide {
    Rule(MuRuleId),
    /// Principal filters are closed under finite intersection.
    Intersection,
}

impl fmt::Display for MuSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuSide::Rule(r) => write!(f, "{r}"),
            MuSide::Intersection => f.write_str("mu-AND"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Row {
    pub number: usize,
    pub sizes: &'static [PropertyId],
    pub mu: MuSide,
    /// Whether the μ-condition gives back the size side.
    pub reversible: bool,
}

use PropertyId::{IOmega, EMF, EMI};

pub const ROWS: [Row; 10] = [
    Row { number: 1, sizes: &[EMI], mu: MuSide::Rule(MuRuleId::MuWOR), reversible: true },
    Row { number: 2, sizes: &[EMI, IOmega], mu: MuSide::Rule(MuRuleId::MuOR), reversible: true },
    Row { number: 3, sizes: &[EMI, IOmega], mu: MuSide::Rule(MuRuleId::MuPR), reversible: true },
    Row { number: 4, sizes: &[PropertyId::IUnionDisj], mu: MuSide::Rule(MuRuleId::MuDisjOR), reversible: true },
    Row { number: 5, sizes: &[PropertyId::MPlusOmega(4)], mu: MuSide::Rule(MuRuleId::MuCM), reversible: true },
    Row { number: 6, sizes: &[PropertyId::MPlusPlus(1)], mu: MuSide::Rule(MuRuleId::MuRatM), reversible: true },
    Row { number: 7, sizes: &[IOmega], mu: MuSide::Intersection, reversible: true },
    Row { number: 8, sizes: &[EMI, IOmega], mu: MuSide::Rule(MuRuleId::MuCUT), reversible: false },
    Row {
        number: 9,
        sizes: &[EMI, IOmega, PropertyId::MPlusOmega(4)],
        mu: MuSide::Rule(MuRuleId::MuCUM),
        reversible: false,
    },
    Row { number: 10, sizes: &[EMI, IOmega, EMF], mu: MuSide::Rule(MuRuleId::MuSubsetSupset), reversible: false },
];

pub fn row(number: usize) -> Result<&'static Row> {
    ROWS.iter()
        .find(|r| r.number == number)
        .ok_or_else(|| Error::InvalidParameter(format!("row {number} is not in 1..=10")))
}

impl Row {
    /// Size properties checked when going from μ back to sizes.
    fn backward_sizes(&self) -> Vec<PropertyId> {
        if self.number == 6 {
            (1..=3).map(PropertyId::MPlusPlus).collect()
        } else {
            self.sizes.to_vec()
        }
    }

    pub fn label(&self) -> String {
        let lhs: Vec<String> = self.sizes.iter().map(|p| p.to_string()).collect();
        format!("{} <-> {}", lhs.join(" + "), self.mu)
    }
}

#[derive(Clone, Debug)]
pub struct CorrespondenceWitness {
    pub system: SizeSystem,
    pub mu: MuFunction,
    /// Failed checks on the witness.
    pub failing: Vec<CheckReport>,
}

impl Serialize for CorrespondenceWitness {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(4))?;
        m.serialize_entry("system", &SystemDoc(&self.system))?;
        m.serialize_entry("filters", &FiltersDoc(&self.system))?;
        m.serialize_entry("mu", &MuDoc(&self.mu))?;
        m.serialize_entry("failing", &self.failing)?;
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub row: usize,
    pub direction: Direction,
    pub universe_max: usize,
    pub systems_checked: u64,
    pub holds: bool,
    pub witness: Option<CorrespondenceWitness>,
    pub skipped_non_principal: u64,
    pub non_implication_confirmed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CorrespondenceReport {
    fn new(row: &Row, direction: Direction, universe_max: usize) -> Self {
        CorrespondenceReport {
            row: row.number,
            direction,
            universe_max,
            systems_checked: 0,
            holds: true,
            witness: None,
            skipped_non_principal: 0,
            non_implication_confirmed: false,
            notes: Vec::new(),
        }
    }
}

fn check_range(max_universe: usize) -> Result<()> {
    if max_universe == 0 {
        return Err(Error::InvalidParameter("max_universe must be at least 1".into()));
    }
    if max_universe > crate::search::EXHAUSTIVE_CEILING {
        return Err(Error::SizeCeiling {
            size: max_universe,
            reason: format!("correspondence checks run up to {}", crate::search::EXHAUSTIVE_CEILING),
        });
    }
    Ok(())
}

fn failures(s: &SizeSystem, ps: &[PropertyId]) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &p in ps {
        let r = check_property(s, p)?;
        if !r.holds {
            out.push(r);
        }
    }
    Ok(out)
}

fn mu_side_failure(row: &Row, s: &SizeSystem, mu: &MuFunction) -> Result<Option<CheckReport>> {
    match row.mu {
        MuSide::Rule(r) => {
            let rep = check_mu_rule(mu, r)?;
            Ok((!rep.holds).then_some(rep))
        }
        MuSide::Intersection => {
            // the filter must be exactly the principal filter of its least member
            let back = from_mu(mu);
            if &back == s {
                return Ok(None);
            }
            let mut rep = CheckReport::new(s.name(), "mu-AND");
            let x = s.domain_masks().find(|&x| back.ideal_family(x) != s.ideal_family(x)).expect("systems differ");
            rep.fail(s.universe(), &["X"], &[x]);
            rep.instances_checked = 1;
            Ok(Some(rep))
        }
    }
}

fn saturate(n: u128) -> u64 {
    u64::try_from(n).unwrap_or(u64::MAX)
}

/// Sizes to μ: every monotone full system whose filters are principal and
/// which satisfies the row's size properties yields a `principal_mu` with the
/// row's μ-condition.
pub fn verify_correspondence_forward(number: usize, max_universe: usize) -> Result<CorrespondenceReport> {
    check_range(max_universe)?;
    let r = row(number)?;
    let mut out = CorrespondenceReport::new(r, Direction::Forward, max_universe);
    if r.mu == MuSide::Intersection {
        out.notes.push("structural: the filter of a principal system is closed under intersection".into());
    }
    for n in 1..=max_universe {
        let sc = scan_systems(n, true, false, |s| {
            match failures(s, r.sizes) {
                Err(e) => return Visit::Fail(e),
                Ok(f) if !f.is_empty() => return Visit::Ignore,
                Ok(_) => {}
            }
            let mu = match s.principal_mu() {
                Ok(mu) => mu,
                Err(Error::NotPrincipal(_)) => return Visit::Aside,
                Err(e) => return Visit::Fail(e),
            };
            match mu_side_failure(r, s, &mu) {
                Err(e) => Visit::Fail(e),
                Ok(None) => Visit::Count,
                Ok(Some(rep)) => Visit::Hit(CorrespondenceWitness { system: s.clone(), mu, failing: vec![rep] }),
            }
        })?;
        out.systems_checked += saturate(sc.counted);
        out.skipped_non_principal += saturate(sc.aside);
        if let Some(w) = sc.hit {
            out.holds = false;
            out.notes.push(format!("counterexample at universe size {n}"));
            out.witness = Some(w);
            break;
        }
    }
    Ok(out)
}

/// The choice function with `f({a,b}) = {a}` and `f(Z) = Z` elsewhere, over `{a,b,c}`.
pub fn non_implication_witness() -> MuFunction {
    let u = Universe::letters(3).expect("three letters");
    let x = u.subset(&["a", "b"]).expect("labels");
    let fx = u.subset(&["a"]).expect("labels");
    MuFunction::build(u, DomainSpec::Full, vec![(x, fx)]).expect("valid choice").with_name("mu")
}

/// μ to sizes: for reversible rows, every choice function on a full domain
/// with the row's μ-condition generates a system with the row's size
/// properties. For the other rows, a choice function with the μ-condition
/// whose system lacks a size property is exhibited.
pub fn verify_correspondence_backward(number: usize, max_universe: usize) -> Result<CorrespondenceReport> {
    check_range(max_universe)?;
    let r = row(number)?;
    let sizes = r.backward_sizes();
    let mut out = CorrespondenceReport::new(r, Direction::Backward, max_universe);
    if r.mu == MuSide::Intersection {
        out.notes.push("structural: a system generated by a choice function has principal filters".into());
    }
    if !r.reversible && max_universe >= 3 {
        let mu = non_implication_witness();
        let s = from_mu(&mu).with_name("witness");
        if let Some(rep) = mu_side_failure(r, &s, &mu)? {
            return Err(Error::InvalidSpec(format!("witness violates {}", rep.condition)));
        }
        let failing = failures(&s, &sizes)?;
        out.systems_checked = 1;
        if !failing.is_empty() {
            out.holds = false;
            out.non_implication_confirmed = true;
            out.witness = Some(CorrespondenceWitness { system: s, mu, failing });
            return Ok(out);
        }
        out.notes.push("fixed witness satisfies the size side; searching".into());
    }
    for n in 1..=max_universe {
        let sc = scan_mus(n, |mu| {
            let s = from_mu(mu);
            match mu_side_failure(r, &s, mu) {
                Err(e) => return Visit::Fail(e),
                Ok(Some(_)) => return Visit::Ignore,
                Ok(None) => {}
            }
            let inner = match failures(&s, &sizes) {
                Ok(f) => f,
                Err(e) => return Visit::Fail(e),
            };
            if r.mu == MuSide::Intersection && inner.is_empty() && s.principal_mu().map_or(true, |m| &m != mu) {
                let mut rep = CheckReport::new(s.name(), "principal round trip");
                rep.holds = false;
                return Visit::Hit(CorrespondenceWitness { system: s, mu: mu.clone(), failing: vec![rep] });
            }
            if inner.is_empty() {
                Visit::Count
            } else {
                Visit::Hit(CorrespondenceWitness { system: s, mu: mu.clone(), failing: inner })
            }
        })?;
        out.systems_checked += saturate(sc.counted);
        if let Some(w) = sc.hit {
            out.holds = false;
            out.non_implication_confirmed = !r.reversible;
            out.notes.push(format!("counterexample at universe size {n}"));
            out.witness = Some(w);
            return Ok(out);
        }
    }
    if !r.reversible {
        out.notes.push(format!("no separating choice function up to size {max_universe}"));
    }
    Ok(out)
}

pub fn verify_correspondence(number: usize, direction: Direction, max_universe: usize) -> Result<CorrespondenceReport> {
    match direction {
        Direction::Forward => verify_correspondence_forward(number, max_universe),
        Direction::Backward => verify_correspondence_backward(number, max_universe),
    }
}
