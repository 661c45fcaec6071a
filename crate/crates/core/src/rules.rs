//! The consequence relation of a size system and the logical rule checkers.
//!
//! `α |~ β` holds iff `M(α ∧ β) ∈ F(M(α))`, and unconditionally when
//! `M(α) = ∅`. Rule metavariables range over all subsets of the universe, so
//! rule checks need the full domain. Rules concluding a negated consequence
//! or a consistency claim are only instantiated where the relevant antecedent
//! model set is nonempty.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::{models, Formula, Interpretation};
use crate::properties::{lex_first, parse_param, Search};
use crate::report::{indexed, CheckReport};
use crate::setcore::{all_masks, Family, Subset};
use crate::sizesys::SizeSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    SC,
    REF,
    RW,
    WOR,
    PRprime,
    WCM,
    DisjOR,
    CP,
    ANDn(usize),
    ANDOmega,
    ORn(usize),
    OROmega,
    CMn(usize),
    CMOmega,
    RatM,
    CUT,
    CUM,
    CCL,
    MPlusDerived,
}

impl RuleId {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            RuleId::ANDn(n) => n >= 1,
            RuleId::ORn(n) | RuleId::CMn(n) => n >= 2,
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidParameter(format!("{self} is out of range")))
        }
    }

    pub fn catalogue(width: usize) -> Vec<RuleId> {
        use RuleId::*;
        let top = width.max(2) + 1;
        let mut v = vec![SC, REF, RW, WOR, PRprime, WCM, DisjOR, CP];
        v.extend((1..=top).map(ANDn));
        v.push(ANDOmega);
        v.extend((2..=top).map(ORn));
        v.push(OROmega);
        v.extend((2..=top).map(CMn));
        v.extend([CMOmega, RatM, CUT, CUM, CCL, MPlusDerived]);
        v
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::SC => write!(f, "SC"),
            RuleId::REF => write!(f, "REF"),
            RuleId::RW => write!(f, "RW"),
            RuleId::WOR => write!(f, "wOR"),
            RuleId::PRprime => write!(f, "PR'"),
            RuleId::WCM => write!(f, "wCM"),
            RuleId::DisjOR => write!(f, "disjOR"),
            RuleId::CP => write!(f, "CP"),
            RuleId::ANDn(n) => write!(f, "AND:{n}"),
            RuleId::ANDOmega => write!(f, "AND:omega"),
            RuleId::ORn(n) => write!(f, "OR:{n}"),
            RuleId::OROmega => write!(f, "OR:omega"),
            RuleId::CMn(n) => write!(f, "CM:{n}"),
            RuleId::CMOmega => write!(f, "CM:omega"),
            RuleId::RatM => write!(f, "RatM"),
            RuleId::CUT => write!(f, "CUT"),
            RuleId::CUM => write!(f, "CUM"),
            RuleId::CCL => write!(f, "CCL"),
            RuleId::MPlusDerived => write!(f, "M+derived"),
        }
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = match s {
            "SC" => RuleId::SC,
            "REF" => RuleId::REF,
            "RW" => RuleId::RW,
            "wOR" => RuleId::WOR,
            "PR'" => RuleId::PRprime,
            "wCM" => RuleId::WCM,
            "disjOR" => RuleId::DisjOR,
            "CP" => RuleId::CP,
            "AND:omega" => RuleId::ANDOmega,
            "OR:omega" => RuleId::OROmega,
            "CM:omega" => RuleId::CMOmega,
            "RatM" => RuleId::RatM,
            "CUT" => RuleId::CUT,
            "CUM" => RuleId::CUM,
            "CCL" => RuleId::CCL,
            "M+derived" => RuleId::MPlusDerived,
            _ => {
                if let Some(n) = s.strip_prefix("AND:") {
                    RuleId::ANDn(parse_param(s, n)?)
                } else if let Some(n) = s.strip_prefix("OR:") {
                    RuleId::ORn(parse_param(s, n)?)
                } else if let Some(n) = s.strip_prefix("CM:") {
                    RuleId::CMn(parse_param(s, n)?)
                } else {
                    return Err(Error::UnknownName(s.to_string()));
                }
            }
        };
        r.validate()
    }
}

pub fn nm_entails(s: &SizeSystem, a: &Subset, b: &Subset) -> Result<bool> {
    s.universe().check(a)?;
    s.universe().check(b)?;
    if a.is_empty() {
        return Ok(true);
    }
    if !s.in_domain(a) {
        return Err(Error::SetNotInDomain(s.universe().show(a)));
    }
    Ok(s.small(a.bits(), a.bits() & !b.bits()))
}

pub fn nm_entails_formulas(s: &SizeSystem, i: &Interpretation, f: &Formula, g: &Formula) -> Result<bool> {
    if i.universe() != s.universe() {
        return Err(Error::Input("interpretation and system use different universes".into()));
    }
    nm_entails(s, &models(f, i)?, &models(g, i)?)
}

/// All pairs `(a, b)` with `a |~ b`, in canonical order.
pub fn derive_relation(s: &SizeSystem) -> Result<Vec<(Subset, Subset)>> {
    let t = Table::new(s)?;
    let w = s.width();
    let mut out = Vec::new();
    for &a in t.all {
        for &b in t.all {
            if t.nm(a, b) {
                out.push((Subset::raw(a, w), Subset::raw(b, w)));
            }
        }
    }
    Ok(out)
}

/// Precomputed relation over masks.
struct Table<'a> {
    s: &'a SizeSystem,
    all: &'static [u64],
    full: u64,
    rel: Vec<Family>,
}

impl<'a> Table<'a> {
    fn new(s: &'a SizeSystem) -> Result<Self> {
        if !s.is_full_domain() {
            return Err(Error::DomainNotFull);
        }
        let w = s.width();
        let all = all_masks(w);
        let full = (1u64 << w) - 1;
        let mut rel = vec![0u64; 1 << w];
        for &a in all {
            for &b in all {
                if a == 0 || s.small(a, a & !b) {
                    rel[a as usize] |= 1 << b;
                }
            }
        }
        Ok(Table { s, all, full, rel })
    }

    #[inline]
    fn nm(&self, a: u64, b: u64) -> bool {
        self.rel[a as usize] >> b & 1 == 1
    }

    #[inline]
    fn neg(&self, a: u64) -> u64 {
        self.full & !a
    }

    fn consequences(&self, a: u64) -> Vec<u64> {
        self.all.iter().copied().filter(|&b| self.nm(a, b)).collect()
    }
}

pub fn check_rule(s: &SizeSystem, r: RuleId) -> Result<CheckReport> {
    r.validate()?;
    let t = Table::new(s)?;
    let mut c = RuleChecker { t: &t, r: CheckReport::new(s.name(), r.to_string()), count: 0 };
    match r {
        RuleId::SC => c.pairs(&["α", "β"], |a, b| a & !b == 0, |t, a, b| t.nm(a, b)),
        RuleId::REF => c.pairs(&["α", "γ"], |_, _| true, |t, a, g| t.nm(a & g, g)),
        RuleId::CP => c.cp(),
        RuleId::RW => c.after_nm(&["α", "β", "β'"], |t, a, b, x| (b & !x == 0).then(|| t.nm(a, x))),
        RuleId::WOR => c.after_nm(&["α", "β", "α'"], |t, a, b, x| (x & !b == 0).then(|| t.nm(a | x, b))),
        RuleId::PRprime => {
            c.after_nm(&["α", "β", "α'"], |t, a, b, x| (a & !x == 0 && x & !a & !b == 0).then(|| t.nm(x, b)))
        }
        RuleId::WCM => {
            c.after_nm(&["α", "β", "α'"], |t, a, b, x| (x & !a == 0 && a & b & !x == 0).then(|| t.nm(x, b)))
        }
        RuleId::ANDOmega => c.after_nm(&["α", "β", "β'"], |t, a, b, x| t.nm(a, x).then(|| t.nm(a, b & x))),
        RuleId::CMOmega => c.after_nm(&["α", "β", "β'"], |t, a, b, x| t.nm(a, x).then(|| t.nm(a & b, x))),
        RuleId::RatM => c.after_nm(&["φ", "ψ", "ψ'"], |t, p, q, x| (!t.nm(p, t.neg(x))).then(|| t.nm(p & x, q))),
        RuleId::CUT => c.after_nm(&["α", "β", "γ"], |t, a, b, g| t.nm(a & b, g).then(|| t.nm(a, g))),
        RuleId::CUM => c.after_nm(&["α", "β", "γ"], |t, a, b, g| Some(t.nm(a, g) == t.nm(a & b, g))),
        RuleId::CCL => c.after_nm(&["α", "β", "β'"], |t, a, b, x| {
            let up = b & !x != 0 || t.nm(a, x);
            let meet = !t.nm(a, x) || t.nm(a, b & x);
            Some(up && meet)
        }),
        RuleId::OROmega => c.or_omega(),
        RuleId::DisjOR => c.disj_or(),
        RuleId::MPlusDerived => c.mplus_derived(),
        RuleId::ANDn(n) => c.and_n(n),
        RuleId::ORn(2) | RuleId::CMn(2) => {
            c.cm_n(2);
            c.r.notes.push("OR:2 and CM:2 are the same rule and share one checker".into());
        }
        RuleId::ORn(n) => c.or_n(n),
        RuleId::CMn(n) => c.cm_n(n),
    }
    Ok(c.finish())
}

struct RuleChecker<'t, 'a> {
    t: &'t Table<'a>,
    r: CheckReport,
    count: u128,
}

impl RuleChecker<'_, '_> {
    fn finish(mut self) -> CheckReport {
        self.r.instances_checked = u64::try_from(self.count).unwrap_or(u64::MAX);
        self.r
    }

    fn fail(&mut self, names: &[&str], sets: &[u64]) {
        self.r.fail(self.t.s.universe(), names, sets);
    }

    fn pairs(&mut self, names: &[&str], hyp: impl Fn(u64, u64) -> bool, concl: impl Fn(&Table, u64, u64) -> bool) {
        let t = self.t;
        for &a in t.all {
            for &b in t.all {
                if !hyp(a, b) {
                    continue;
                }
                self.count += 1;
                if !concl(t, a, b) {
                    return self.fail(names, &[a, b]);
                }
            }
        }
    }

    /// Triples `(a, b, x)` with `a |~ b`; `body` returns `None` when the
    /// remaining hypotheses fail, else the conclusion.
    fn after_nm(&mut self, names: &[&str], body: impl Fn(&Table, u64, u64, u64) -> Option<bool>) {
        let t = self.t;
        for &a in t.all {
            for &b in t.all {
                if !t.nm(a, b) {
                    continue;
                }
                for &x in t.all {
                    let Some(ok) = body(t, a, b, x) else { continue };
                    self.count += 1;
                    if !ok {
                        return self.fail(names, &[a, b, x]);
                    }
                }
            }
        }
    }

    fn cp(&mut self) {
        let t = self.t;
        for &a in t.all {
            if !t.nm(a, 0) {
                continue;
            }
            self.count += 1;
            if a != 0 {
                return self.fail(&["φ"], &[a]);
            }
        }
    }

    fn or_omega(&mut self) {
        let t = self.t;
        for &a in t.all {
            for &x in t.all {
                for &b in t.all {
                    if !t.nm(a, b) || !t.nm(x, b) {
                        continue;
                    }
                    self.count += 1;
                    if !t.nm(a | x, b) {
                        return self.fail(&["α", "α'", "β"], &[a, x, b]);
                    }
                }
            }
        }
    }

    fn disj_or(&mut self) {
        let t = self.t;
        for &p in t.all {
            for &px in t.all {
                if p & px != 0 {
                    continue;
                }
                for &q in t.all {
                    if !t.nm(p, q) {
                        continue;
                    }
                    for &qx in t.all {
                        if !t.nm(px, qx) {
                            continue;
                        }
                        self.count += 1;
                        if !t.nm(p | px, q | qx) {
                            return self.fail(&["φ", "φ'", "ψ", "ψ'"], &[p, px, q, qx]);
                        }
                    }
                }
            }
        }
    }

    fn mplus_derived(&mut self) {
        let t = self.t;
        for &g in t.all {
            for &b in t.all {
                if t.nm(g, t.neg(b)) {
                    continue;
                }
                for &a in t.all {
                    if !t.nm(g & b, a) {
                        continue;
                    }
                    self.count += 1;
                    if t.nm(g, t.neg(a & b)) {
                        return self.fail(&["γ", "β", "α"], &[g, b, a]);
                    }
                }
            }
        }
    }

    fn report_tuple(&mut self, first: (&str, u64), rest: &str, picks: &[u64]) {
        let names = indexed(rest, picks.len());
        let mut nm = vec![first.0];
        nm.extend(names.iter().map(String::as_str));
        let mut sets = vec![first.1];
        sets.extend_from_slice(picks);
        self.fail(&nm, &sets);
    }

    fn and_n(&mut self, n: usize) {
        let t = self.t;
        for &a in t.all {
            if a == 0 {
                continue;
            }
            let cands = t.consequences(a);
            match lex_first(&cands, n, t.full, |x, y| x & y, |v| v & a == 0) {
                Search::None(total) => self.count += total,
                Search::Found { picks, rank } => {
                    self.count += rank;
                    let sets: Vec<u64> = picks.iter().map(|&i| cands[i]).collect();
                    return self.report_tuple(("α", a), "β", &sets);
                }
            }
        }
    }

    fn or_n(&mut self, n: usize) {
        let t = self.t;
        for &b in t.all {
            let cands: Vec<u64> = t.all.iter().copied().filter(|&a| t.nm(a, b)).collect();
            let nb = t.neg(b);
            match lex_first(&cands, n - 1, 0, |x, y| x | y, |v| v != 0 && t.nm(v, nb)) {
                Search::None(total) => self.count += total,
                Search::Found { picks, rank } => {
                    self.count += rank;
                    let sets: Vec<u64> = picks.iter().map(|&i| cands[i]).collect();
                    return self.report_tuple(("β", b), "α", &sets);
                }
            }
        }
    }

    fn cm_n(&mut self, n: usize) {
        let t = self.t;
        for &a in t.all {
            if a == 0 {
                continue;
            }
            let cands = t.consequences(a);
            let width = cands.len() as u128;
            // contexts c for which some consequence b of a gives c |~ ¬b
            let mut good: Family = 0;
            for &c in t.all {
                if c != 0 && cands.iter().any(|&b| t.nm(c, t.neg(b))) {
                    good |= 1 << c;
                }
            }
            let prefix = lex_first(&cands, n - 2, t.full, |x, y| x & y, |v| good >> (v & a) & 1 == 1);
            match prefix {
                Search::None(total) => self.count += total.saturating_mul(width),
                Search::Found { picks, rank } => {
                    let c = picks.iter().fold(a, |v, &i| v & cands[i]);
                    let last = cands.iter().position(|&b| t.nm(c, t.neg(b))).expect("feasible context");
                    self.count += (rank - 1).saturating_mul(width) + last as u128 + 1;
                    let mut sets: Vec<u64> = picks.iter().map(|&i| cands[i]).collect();
                    sets.push(cands[last]);
                    return self.report_tuple(("α", a), "β", &sets);
                }
            }
        }
    }
}
