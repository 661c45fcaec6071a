//! Checkers for the size properties.
//!
//! Every checker walks its quantified tuple in canonical order, top set
//! first, and stops at the first violation. `instances_checked` counts the
//! tuples whose hypotheses held, up to and including the witness.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::{indexed, CheckReport};
use crate::setcore::{family_members, submasks, Family, Subset};
use crate::sizesys::SizeSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    Opt,
    IM,
    EMI,
    EMF,
    IUnionDisj,
    FUnionDisj,
    NStarS(usize),
    IOmega,
    MPlusN(usize),
    MPlusOmega(u8),
    MPlusPlus(u8),
}

impl PropertyId {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            PropertyId::NStarS(n) => n >= 1,
            PropertyId::MPlusN(n) => n >= 3,
            PropertyId::MPlusOmega(v) => (1..=4).contains(&v),
            PropertyId::MPlusPlus(v) => (1..=3).contains(&v),
            _ => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidParameter(format!("{self} is out of range")))
        }
    }

    /// Every property, with the numeric families instantiated up to `width`.
    pub fn catalogue(width: usize) -> Vec<PropertyId> {
        use PropertyId::*;
        let mut v = vec![Opt, IM, EMI, EMF, IUnionDisj, FUnionDisj];
        v.extend((1..=width.max(2)).map(NStarS));
        v.push(IOmega);
        v.extend((3..=width.max(3)).map(MPlusN));
        v.extend((1..=4).map(MPlusOmega));
        v.extend((1..=3).map(MPlusPlus));
        v
    }

    /// Whether the checker reads `I(X − B)` for domain members `X`.
    pub fn needs_difference_closure(self) -> bool {
        matches!(self, PropertyId::MPlusOmega(4) | PropertyId::MPlusPlus(1) | PropertyId::MPlusPlus(2))
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyId::Opt => write!(f, "Opt"),
            PropertyId::IM => write!(f, "iM"),
            PropertyId::EMI => write!(f, "eMI"),
            PropertyId::EMF => write!(f, "eMF"),
            PropertyId::IUnionDisj => write!(f, "I-union-disj"),
            PropertyId::FUnionDisj => write!(f, "F-union-disj"),
            PropertyId::NStarS(1) => write!(f, "1*s"),
            PropertyId::NStarS(n) => write!(f, "n*s:{n}"),
            PropertyId::IOmega => write!(f, "I-omega"),
            PropertyId::MPlusN(n) => write!(f, "M+n:{n}"),
            PropertyId::MPlusOmega(v) => write!(f, "M+omega:{v}"),
            PropertyId::MPlusPlus(v) => write!(f, "M++:{v}"),
        }
    }
}

pub(crate) fn parse_param<T: FromStr>(name: &str, text: &str) -> Result<T> {
    text.parse().map_err(|_| Error::UnknownName(name.to_string()))
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = match s {
            "Opt" => PropertyId::Opt,
            "iM" => PropertyId::IM,
            "eMI" => PropertyId::EMI,
            "eMF" => PropertyId::EMF,
            "I-union-disj" => PropertyId::IUnionDisj,
            "F-union-disj" => PropertyId::FUnionDisj,
            "I-omega" | "<omega*s" => PropertyId::IOmega,
            _ => {
                if let Some(n) = s.strip_prefix("n*s:").or_else(|| s.strip_prefix("I:")) {
                    PropertyId::NStarS(parse_param(s, n)?)
                } else if let Some(n) = s.strip_suffix("*s") {
                    PropertyId::NStarS(parse_param(s, n)?)
                } else if let Some(n) = s.strip_prefix("M+n:") {
                    PropertyId::MPlusN(parse_param(s, n)?)
                } else if let Some(v) = s.strip_prefix("M+omega:") {
                    PropertyId::MPlusOmega(parse_param(s, v)?)
                } else if let Some(v) = s.strip_prefix("M++:") {
                    PropertyId::MPlusPlus(parse_param(s, v)?)
                } else {
                    return Err(Error::UnknownName(s.to_string()));
                }
            }
        };
        p.validate()
    }
}

/// Restriction of a check to the instances whose top set is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Top(Subset),
}

pub fn check_property(s: &SizeSystem, p: PropertyId) -> Result<CheckReport> {
    check_property_scoped(s, p, Scope::All)
}

pub fn check_property_scoped(s: &SizeSystem, p: PropertyId, scope: Scope) -> Result<CheckReport> {
    p.validate()?;
    let tops: Vec<u64> = match scope {
        Scope::All => s.domain_masks().collect(),
        Scope::Top(x) => {
            s.universe().check(&x)?;
            if !s.in_domain(&x) {
                return Err(Error::SetNotInDomain(s.universe().show(&x)));
            }
            vec![x.bits()]
        }
    };
    let mut c = Checker { s, r: CheckReport::new(s.name(), p.to_string()), count: 0 };
    match p {
        PropertyId::Opt => c.opt(&tops),
        PropertyId::IM => c.im(&tops),
        PropertyId::EMI => c.emi(&tops),
        PropertyId::EMF => c.emf(&tops),
        PropertyId::IUnionDisj => c.union_disj(&tops, false)?,
        PropertyId::FUnionDisj => c.union_disj(&tops, true)?,
        PropertyId::NStarS(n) => c.nstar(&tops, n),
        PropertyId::IOmega => c.iomega(&tops),
        PropertyId::MPlusN(n) => c.mplus_n(&tops, n),
        PropertyId::MPlusOmega(4) => c.mplus_omega4(&tops)?,
        PropertyId::MPlusOmega(v) => c.triple(&tops, v),
        PropertyId::MPlusPlus(3) => c.triple(&tops, 5),
        PropertyId::MPlusPlus(v) => c.mplus_plus(&tops, v == 2)?,
    }
    let mut r = c.finish();
    if let PropertyId::NStarS(n) | PropertyId::MPlusN(n) = p {
        if n > s.universe().len() + 1 {
            r.notes.push(format!("parameter {n} exceeds |U|+1; evaluated anyway"));
        }
    }
    Ok(r)
}

/// Level check: Opt, iM, eMI, eMF and `x*s` together.
pub fn check_level(s: &SizeSystem, x: usize) -> Result<CheckReport> {
    if x == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    let parts = [PropertyId::Opt, PropertyId::IM, PropertyId::EMI, PropertyId::EMF, PropertyId::NStarS(x)];
    let mut out = CheckReport::new(s.name(), format!("level:{x}"));
    for p in parts {
        let r = check_property(s, p)?;
        out.instances_checked = out.instances_checked.saturating_add(r.instances_checked);
        if !r.holds {
            out.holds = false;
            out.witness = r.witness;
            out.notes.push(format!("fails {p}"));
            break;
        }
    }
    Ok(out)
}

pub fn property_matrix(s: &SizeSystem, ps: &[PropertyId]) -> Vec<Result<CheckReport>> {
    ps.iter().map(|&p| check_property(s, p)).collect()
}

struct Checker<'a> {
    s: &'a SizeSystem,
    r: CheckReport,
    count: u128,
}

impl Checker<'_> {
    fn finish(mut self) -> CheckReport {
        self.r.instances_checked = u64::try_from(self.count).unwrap_or(u64::MAX);
        self.r
    }

    fn fail(&mut self, names: &[&str], sets: &[u64]) {
        self.r.fail(self.s.universe(), names, sets);
    }

    fn missing(&self, m: u64) -> Error {
        Error::DomainNotClosed(self.s.universe().show(&Subset::raw(m, self.s.width())))
    }

    fn opt(&mut self, tops: &[u64]) {
        for &x in tops {
            self.count += 1;
            if !self.s.small(x, 0) {
                return self.fail(&["X"], &[x]);
            }
        }
    }

    fn im(&mut self, tops: &[u64]) {
        let s = self.s;
        for &x in tops {
            for &b in submasks(x) {
                if !s.small(x, b) {
                    continue;
                }
                for &a in submasks(b) {
                    self.count += 1;
                    if !s.small(x, a) {
                        return self.fail(&["X", "B", "A"], &[x, b, a]);
                    }
                }
            }
        }
    }

    fn emi(&mut self, tops: &[u64]) {
        let s = self.s;
        for &y in tops {
            for &x in submasks(y) {
                if !s.has(x) {
                    continue;
                }
                for &a in submasks(x) {
                    if !s.small(x, a) {
                        continue;
                    }
                    self.count += 1;
                    if !s.small(y, a) {
                        return self.fail(&["Y", "X", "A"], &[y, x, a]);
                    }
                }
            }
        }
    }

    fn emf(&mut self, tops: &[u64]) {
        let s = self.s;
        for &y in tops {
            for &x in submasks(y) {
                if !s.has(x) {
                    continue;
                }
                for &a in submasks(x) {
                    if !s.big(y, a) {
                        continue;
                    }
                    self.count += 1;
                    if !s.big(x, a) {
                        return self.fail(&["Y", "X", "A"], &[y, x, a]);
                    }
                }
            }
        }
    }

    fn union_disj(&mut self, tops: &[u64], filter: bool) -> Result<()> {
        let s = self.s;
        let fam = |x: u64| if filter { s.filter_family(x) } else { s.ideal_family(x) };
        let domain: Vec<u64> = s.domain_masks().collect();
        for &x in tops {
            let fx = fam(x);
            for &y in &domain {
                if x & y != 0 {
                    continue;
                }
                let fy = fam(y);
                if fx == 0 || fy == 0 {
                    continue;
                }
                if !s.has(x | y) {
                    return Err(self.missing(x | y));
                }
                for a in family_members(fx, x) {
                    for b in family_members(fy, y) {
                        self.count += 1;
                        let ok = if filter { s.big(x | y, a | b) } else { s.small(x | y, a | b) };
                        if !ok {
                            self.fail(&["X", "Y", "A", "B"], &[x, y, a, b]);
                            return Ok(());
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn nstar(&mut self, tops: &[u64], n: usize) {
        let s = self.s;
        for &x in tops {
            let cands: Vec<u64> = family_members(s.ideal_family(x), x).collect();
            let found = lex_first(&cands, n, 0, |a, b| a | b, |v| v == x);
            match found {
                Search::None(total) => self.count += total,
                Search::Found { picks, rank } => {
                    self.count += rank;
                    let names = indexed("A", n);
                    let mut nm: Vec<&str> = vec!["X"];
                    nm.extend(names.iter().map(String::as_str));
                    let mut sets = vec![x];
                    sets.extend(picks.iter().map(|&i| cands[i]));
                    return self.fail(&nm, &sets);
                }
            }
        }
    }

    fn iomega(&mut self, tops: &[u64]) {
        let s = self.s;
        for &x in tops {
            let fam = s.ideal_family(x);
            for a in family_members(fam, x) {
                for b in family_members(fam, x) {
                    self.count += 1;
                    if !s.small(x, a | b) {
                        return self.fail(&["X", "A", "B"], &[x, a, b]);
                    }
                }
            }
        }
    }

    fn mplus_n(&mut self, tops: &[u64], n: usize) {
        let s = self.s;
        let size = 1usize << s.width();
        let domain: Vec<u64> = s.domain_masks().collect();
        // steps[y]: domain members that may sit directly below y in a chain
        let mut steps: Vec<Vec<u64>> = vec![Vec::new(); size];
        for &y in &domain {
            steps[y as usize] = family_members(s.filter_family(y), y).filter(|&z| s.has(z)).collect();
        }
        // down[k][y]: bottoms reachable from y in k steps; cnt[k][y]: number of such chains
        let mut down: Vec<Vec<Family>> = vec![vec![0; size]];
        let mut cnt: Vec<Vec<u128>> = vec![vec![0; size]];
        for &y in &domain {
            down[0][y as usize] = 1 << y;
            cnt[0][y as usize] = 1;
        }
        for k in 1..n {
            let mut d = vec![0; size];
            let mut c = vec![0u128; size];
            for &y in &domain {
                for &z in &steps[y as usize] {
                    d[y as usize] |= down[k - 1][z as usize];
                    c[y as usize] = c[y as usize].saturating_add(cnt[k - 1][z as usize]);
                }
            }
            down.push(d);
            cnt.push(c);
        }
        for &y in tops {
            let bad = s.ideal_family(y);
            if down[n - 1][y as usize] & bad == 0 {
                self.count = self.count.saturating_add(cnt[n - 1][y as usize]);
                continue;
            }
            let mut chain = vec![y];
            let mut z = y;
            for k in (0..n - 1).rev() {
                for &w in &steps[z as usize] {
                    if down[k][w as usize] & bad != 0 {
                        chain.push(w);
                        z = w;
                        break;
                    }
                    self.count = self.count.saturating_add(cnt[k][w as usize]);
                }
            }
            self.count += 1;
            let names: Vec<String> = (1..=n).rev().map(|i| format!("X{i}")).collect();
            let nm: Vec<&str> = names.iter().map(String::as_str).collect();
            return self.fail(&nm, &chain);
        }
    }

    /// Shapes over `A ⊆ X ⊆ Y`: M+omega 1..3 and, as variant 5, M++ 3.
    fn triple(&mut self, tops: &[u64], variant: u8) {
        let s = self.s;
        for &y in tops {
            for &x in submasks(y) {
                if !s.has(x) {
                    continue;
                }
                for &a in submasks(x) {
                    let (hyp, concl) = match variant {
                        1 => (s.big(x, a) && s.not_small(y, x), s.not_small(y, a)),
                        2 => (s.not_small(x, a) && s.big(y, x), s.not_small(y, a)),
                        3 => (s.big(x, a) && s.big(y, x), s.big(y, a)),
                        _ => (s.not_small(x, a) && s.not_small(y, x), s.not_small(y, a)),
                    };
                    if !hyp {
                        continue;
                    }
                    self.count += 1;
                    if !concl {
                        return self.fail(&["Y", "X", "A"], &[y, x, a]);
                    }
                }
            }
        }
    }

    fn difference_base(&self, z: u64) -> Result<()> {
        if z != 0 && !self.s.has(z) {
            return Err(self.missing(z));
        }
        Ok(())
    }

    fn mplus_omega4(&mut self, tops: &[u64]) -> Result<()> {
        let s = self.s;
        for &x in tops {
            let fam = s.ideal_family(x);
            for a in family_members(fam, x) {
                for b in family_members(fam, x) {
                    let z = x & !b;
                    self.difference_base(z)?;
                    self.count += 1;
                    if !s.small(z, a & !b) {
                        self.fail(&["X", "A", "B"], &[x, a, b]);
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn mplus_plus(&mut self, tops: &[u64], filter: bool) -> Result<()> {
        let s = self.s;
        for &x in tops {
            for &a in submasks(x) {
                let hyp_a = if filter { s.big(x, a) } else { s.small(x, a) };
                if !hyp_a {
                    continue;
                }
                for &b in submasks(x) {
                    if s.big(x, b) {
                        continue;
                    }
                    let z = x & !b;
                    self.difference_base(z)?;
                    self.count += 1;
                    let ok = if filter { s.big(z, a & !b) } else { s.small(z, a & !b) };
                    if !ok {
                        self.fail(&["X", "A", "B"], &[x, a, b]);
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) enum Search {
    /// No violating tuple; carries the number of tuples examined.
    None(u128),
    /// Lex-first violating tuple as candidate indices, and its 1-based rank.
    Found { picks: Vec<usize>, rank: u128 },
}

/// Lex-first tuple over `cands^n` whose fold under `op` from `init` satisfies `goal`.
///
/// `op` must be associative, commutative and idempotent with identity `init`.
pub(crate) fn lex_first(
    cands: &[u64],
    n: usize,
    init: u64,
    op: impl Fn(u64, u64) -> u64,
    goal: impl Fn(u64) -> bool,
) -> Search {
    let c = cands.len() as u128;
    let total = (0..n).fold(1u128, |t, _| t.saturating_mul(c));
    if n == 0 {
        return if goal(init) { Search::Found { picks: vec![], rank: 1 } } else { Search::None(1) };
    }
    // reach[k]: values obtainable by folding k candidates
    let mut reach: Vec<Family> = vec![1 << init];
    for k in 1..n {
        let mut next = 0u64;
        for v in bits(reach[k - 1]) {
            for &x in cands {
                next |= 1 << op(v, x);
            }
        }
        reach.push(next);
    }
    let feasible = |v: u64, k: usize| bits(reach[k]).any(|r| goal(op(v, r)));
    let mut v = init;
    let mut picks = Vec::with_capacity(n);
    let mut rank = 0u128;
    for level in 0..n {
        let rest = n - level - 1;
        let weight = (0..rest).fold(1u128, |t, _| t.saturating_mul(c));
        let mut chosen = None;
        for (i, &x) in cands.iter().enumerate() {
            let w = op(v, x);
            if feasible(w, rest) {
                chosen = Some((i, w));
                break;
            }
        }
        let Some((i, w)) = chosen else {
            return Search::None(total);
        };
        rank = rank.saturating_add(weight.saturating_mul(i as u128));
        picks.push(i);
        v = w;
    }
    Search::Found { picks, rank: rank + 1 }
}

pub(crate) fn bits(f: Family) -> impl Iterator<Item = u64> {
    let mut rest = f;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let m = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        Some(m)
    })
}
