//! Brute-force evaluator used as an oracle by the integration tests.
//!
//! Works from the public accessors of a system only, enumerating every
//! quantified tuple in canonical order.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use nmsize::{PropertyId, RuleId, SizeSystem, Subset, Universe};

pub fn canon(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_by_key(|&m| (m.count_ones(), m));
    v
}

pub fn subsets_of(x: u64) -> Vec<u64> {
    canon((0..=x).filter(|m| m & !x == 0).collect())
}

/// Verdict of a brute-force run: `(holds, witness, instances)`.
pub type Verdict = (bool, Option<Vec<u64>>, u64);

pub struct Oracle {
    pub width: u8,
    pub all: Vec<u64>,
    pub domain: Vec<u64>,
    ideals: Vec<BTreeSet<u64>>,
    in_domain: Vec<bool>,
}

impl Oracle {
    pub fn new(s: &SizeSystem) -> Self {
        let width = s.width();
        let n = 1usize << width;
        let mut ideals = vec![BTreeSet::new(); n];
        ideals[0].insert(0);
        let mut in_domain = vec![false; n];
        let domain: Vec<u64> = s.domain().iter().map(|x| x.bits()).collect();
        for x in s.domain() {
            in_domain[x.bits() as usize] = true;
            ideals[x.bits() as usize] = s.ideal_of(&x).unwrap().iter().map(|a| a.bits()).collect();
        }
        let all = subsets_of(n as u64 - 1);
        Oracle { width, all, domain: canon(domain), ideals, in_domain }
    }

    pub fn has(&self, x: u64) -> bool {
        self.in_domain[x as usize]
    }

    pub fn small(&self, x: u64, a: u64) -> bool {
        self.ideals[x as usize].contains(&a)
    }

    pub fn big(&self, x: u64, a: u64) -> bool {
        a & !x == 0 && self.small(x, x & !a)
    }

    pub fn ideal(&self, x: u64) -> Vec<u64> {
        canon(self.ideals[x as usize].iter().copied().collect())
    }

    pub fn filter(&self, x: u64) -> Vec<u64> {
        canon(self.ideals[x as usize].iter().map(|a| x & !a).collect())
    }

    fn below(&self, y: u64) -> Vec<u64> {
        subsets_of(y).into_iter().filter(|&x| self.has(x)).collect()
    }

    /// Returns `None` when a needed domain set is missing.
    pub fn property(&self, p: PropertyId) -> Option<Verdict> {
        let mut t = Tally::default();
        let full_set = |x: u64| x == 0 || self.has(x);
        match p {
            PropertyId::Opt => {
                for &x in &self.domain {
                    if t.step(true, self.small(x, 0), &[x]) {
                        break;
                    }
                }
            }
            PropertyId::IM => {
                'o: for &x in &self.domain {
                    for b in self.ideal(x) {
                        for a in subsets_of(b) {
                            if t.step(true, self.small(x, a), &[x, b, a]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
            PropertyId::EMI => {
                'o: for &y in &self.domain {
                    for x in self.below(y) {
                        for a in subsets_of(x) {
                            if t.step(self.small(x, a), self.small(y, a), &[y, x, a]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
            PropertyId::EMF => {
                'o: for &y in &self.domain {
                    for x in self.below(y) {
                        for a in subsets_of(x) {
                            if t.step(self.big(y, a), self.big(x, a), &[y, x, a]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
            PropertyId::IUnionDisj | PropertyId::FUnionDisj => {
                let f = p == PropertyId::FUnionDisj;
                let fam = |x: u64| if f { self.filter(x) } else { self.ideal(x) };
                'o: for &x in &self.domain {
                    for &y in &self.domain {
                        if x & y != 0 {
                            continue;
                        }
                        for a in fam(x) {
                            for b in fam(y) {
                                if !self.has(x | y) {
                                    return None;
                                }
                                let ok = if f { self.big(x | y, a | b) } else { self.small(x | y, a | b) };
                                if t.step(true, ok, &[x, y, a, b]) {
                                    break 'o;
                                }
                            }
                        }
                    }
                }
            }
            PropertyId::NStarS(n) => {
                'o: for &x in &self.domain {
                    for tuple in tuples(&self.ideal(x), n) {
                        let u = tuple.iter().fold(0, |v, a| v | a);
                        let mut w = vec![x];
                        w.extend(&tuple);
                        if t.step(true, u != x, &w) {
                            break 'o;
                        }
                    }
                }
            }
            PropertyId::IOmega => {
                'o: for &x in &self.domain {
                    for a in self.ideal(x) {
                        for b in self.ideal(x) {
                            if t.step(true, self.small(x, a | b), &[x, a, b]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
            PropertyId::MPlusN(n) => {
                for &top in &self.domain {
                    if self.chains(top, n, &mut vec![top], &mut t) {
                        break;
                    }
                }
            }
            PropertyId::MPlusOmega(4) => {
                'o: for &x in &self.domain {
                    for a in self.ideal(x) {
                        for b in self.ideal(x) {
                            let z = x & !b;
                            if !full_set(z) {
                                return None;
                            }
                            if t.step(true, z == 0 || self.small(z, a & !b), &[x, a, b]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
            PropertyId::MPlusOmega(v) | PropertyId::MPlusPlus(v @ 3) => {
                let pp = matches!(p, PropertyId::MPlusPlus(_));
                let ns = |x: u64, a: u64| !self.small(x, a);
                'o: for &y in &self.domain {
                    for x in self.below(y) {
                        for a in subsets_of(x) {
                            let (hyp, concl) = match (pp, v) {
                                (true, _) => (ns(x, a) && ns(y, x), ns(y, a)),
                                (_, 1) => (self.big(x, a) && ns(y, x), ns(y, a)),
                                (_, 2) => (ns(x, a) && self.big(y, x), ns(y, a)),
                                _ => (self.big(x, a) && self.big(y, x), self.big(y, a)),
                            };
                            if t.step(hyp, concl, &[y, x, a]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
            PropertyId::MPlusPlus(v) => {
                'o: for &x in &self.domain {
                    for a in subsets_of(x) {
                        let hyp = if v == 1 { self.small(x, a) } else { self.big(x, a) };
                        if !hyp {
                            continue;
                        }
                        for b in subsets_of(x) {
                            if self.big(x, b) {
                                continue;
                            }
                            let z = x & !b;
                            if !full_set(z) {
                                return None;
                            }
                            let d = a & !b;
                            let ok = if z == 0 {
                                true
                            } else if v == 1 {
                                self.small(z, d)
                            } else {
                                self.big(z, d)
                            };
                            if t.step(true, ok, &[x, a, b]) {
                                break 'o;
                            }
                        }
                    }
                }
            }
        }
        Some(t.verdict())
    }

    fn chains(&self, top: u64, n: usize, chain: &mut Vec<u64>, t: &mut Tally) -> bool {
        let last = *chain.last().unwrap();
        if chain.len() == n {
            return t.step(true, !self.small(top, last), chain);
        }
        for z in self.filter(last) {
            if !self.has(z) {
                continue;
            }
            chain.push(z);
            if self.chains(top, n, chain, t) {
                return true;
            }
            chain.pop();
        }
        false
    }

    pub fn nm(&self, a: u64, b: u64) -> bool {
        a == 0 || self.small(a, a & !b)
    }

    pub fn rule(&self, r: RuleId) -> Verdict {
        let all = &self.all;
        let full = (1u64 << self.width) - 1;
        let nm = |a: u64, b: u64| self.nm(a, b);
        let neg = |a: u64| full & !a;
        let mut t = Tally::default();
        macro_rules! pairs {
            ($hyp:expr, $concl:expr) => {{
                let hyp: &dyn Fn(u64, u64) -> bool = &$hyp;
                let concl: &dyn Fn(u64, u64) -> bool = &$concl;
                'o: for &a in all {
                    for &b in all {
                        if t.step(hyp(a, b), concl(a, b), &[a, b]) {
                            break 'o;
                        }
                    }
                }
            }};
        }
        macro_rules! triples {
            ($hyp:expr, $concl:expr) => {{
                let hyp: &dyn Fn(u64, u64, u64) -> bool = &$hyp;
                let concl: &dyn Fn(u64, u64, u64) -> bool = &$concl;
                'o: for &a in all {
                    for &b in all {
                        for &x in all {
                            if t.step(hyp(a, b, x), concl(a, b, x), &[a, b, x]) {
                                break 'o;
                            }
                        }
                    }
                }
            }};
        }
        match r {
            RuleId::SC => pairs!(|a: u64, b: u64| a & !b == 0, |a, b| nm(a, b)),
            RuleId::REF => pairs!(|_, _| true, |a: u64, g| nm(a & g, g)),
            RuleId::CP => {
                for &a in all {
                    if t.step(nm(a, 0), a == 0, &[a]) {
                        break;
                    }
                }
            }
            RuleId::RW => triples!(|a, b: u64, x| nm(a, b) && b & !x == 0, |a, _, x| nm(a, x)),
            RuleId::WOR => triples!(|a, b, x: u64| nm(a, b) && x & !b == 0, |a: u64, b, x| nm(a | x, b)),
            RuleId::PRprime => {
                triples!(|a: u64, b: u64, x: u64| nm(a, b) && a & !x == 0 && x & !a & !b == 0, |_, b, x| nm(x, b))
            }
            RuleId::WCM => {
                triples!(|a: u64, b: u64, x: u64| nm(a, b) && x & !a == 0 && a & b & !x == 0, |_, b, x| nm(x, b))
            }
            RuleId::ANDOmega => triples!(|a, b, x| nm(a, b) && nm(a, x), |a, b: u64, x| nm(a, b & x)),
            RuleId::CMOmega => triples!(|a, b, x| nm(a, b) && nm(a, x), |a: u64, b, x| nm(a & b, x)),
            RuleId::RatM => triples!(|p, q, x| nm(p, q) && !nm(p, neg(x)), |p: u64, q, x| nm(p & x, q)),
            RuleId::CUT => triples!(|a: u64, b, g| nm(a, b) && nm(a & b, g), |a, _, g| nm(a, g)),
            RuleId::CUM => triples!(|a, b, _| nm(a, b), |a: u64, b, g| nm(a, g) == nm(a & b, g)),
            RuleId::CCL => triples!(|a, b, _| nm(a, b), |a, b: u64, x| {
                (b & !x != 0 || nm(a, x)) && (!nm(a, x) || nm(a, b & x))
            }),
            RuleId::OROmega => triples!(|a, x, b| nm(a, b) && nm(x, b), |a: u64, x, b| nm(a | x, b)),
            RuleId::DisjOR => {
                'o: for &p in all {
                    for &px in all {
                        for &q in all {
                            for &qx in all {
                                let hyp = p & px == 0 && nm(p, q) && nm(px, qx);
                                if t.step(hyp, nm(p | px, q | qx), &[p, px, q, qx]) {
                                    break 'o;
                                }
                            }
                        }
                    }
                }
            }
            RuleId::MPlusDerived => {
                triples!(|g, b: u64, a| !nm(g, neg(b)) && nm(g & b, a), |g, b, a: u64| !nm(g, neg(a & b)))
            }
            RuleId::ANDn(n) => {
                'o: for &a in all {
                    if a == 0 {
                        continue;
                    }
                    for bs in tuples(all, n) {
                        let hyp = bs.iter().all(|&b| nm(a, b));
                        let meet = bs.iter().fold(full, |v, &b| v & b);
                        let mut w = vec![a];
                        w.extend(&bs);
                        if t.step(hyp, meet & a != 0, &w) {
                            break 'o;
                        }
                    }
                }
            }
            RuleId::ORn(n) if n > 2 => {
                'o: for &b in all {
                    for alphas in tuples(all, n - 1) {
                        let hyp = alphas.iter().all(|&a| nm(a, b));
                        let join = alphas.iter().fold(0, |v, &a| v | a);
                        let mut w = vec![b];
                        w.extend(&alphas);
                        if t.step(hyp, join == 0 || !nm(join, neg(b)), &w) {
                            break 'o;
                        }
                    }
                }
            }
            RuleId::ORn(n) | RuleId::CMn(n) => {
                'o: for &a in all {
                    if a == 0 {
                        continue;
                    }
                    for bs in tuples(all, n - 1) {
                        let hyp = bs.iter().all(|&b| nm(a, b));
                        let ctx = bs[..n - 2].iter().fold(a, |v, &b| v & b);
                        let last = bs[n - 2];
                        let mut w = vec![a];
                        w.extend(&bs);
                        if t.step(hyp, ctx == 0 || !nm(ctx, neg(last)), &w) {
                            break 'o;
                        }
                    }
                }
            }
        }
        t.verdict()
    }
}

/// All `n`-tuples over `items`, lexicographic in item order.
pub fn tuples(items: &[u64], n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * items.len());
        for t in &out {
            for &i in items {
                let mut v = t.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[derive(Default)]
pub struct Tally {
    count: u64,
    witness: Option<Vec<u64>>,
}

impl Tally {
    /// Records one tuple; returns true once a violation is found.
    fn step(&mut self, hyp: bool, concl: bool, tuple: &[u64]) -> bool {
        if !hyp {
            return false;
        }
        self.count += 1;
        if !concl {
            self.witness = Some(tuple.to_vec());
            return true;
        }
        false
    }

    fn verdict(self) -> Verdict {
        (self.witness.is_none(), self.witness, self.count)
    }
}

pub fn system(n: usize, table: &[u64]) -> SizeSystem {
    let u = Arc::new(Universe::numbered(n).unwrap());
    let domain = (1..1u64 << n).fold(0u64, |d, x| d | 1 << x);
    SizeSystem::from_raw(u, domain, table.to_vec())
}

/// Family of every subset of `x`, as a bitset over masks.
pub fn powerset_family(x: u64) -> u64 {
    subsets_of(x).iter().fold(0, |f, &a| f | 1 << a)
}

/// Ideal table from arbitrary bits: each family is cut down to subsets of its set.
pub fn table_from_bits(n: usize, raw: &[u64], opt: bool, monotone: bool) -> Vec<u64> {
    let mut table = vec![1u64; 1 << n];
    for x in 1..(1u64 << n) {
        let mut fam = raw[x as usize % raw.len()] & powerset_family(x);
        if opt {
            fam |= 1;
        }
        if monotone {
            fam = subsets_of(x)
                .into_iter()
                .filter(|&a| fam >> a & 1 == 1 && subsets_of(a).iter().all(|&b| fam >> b & 1 == 1))
                .fold(0, |f, a| f | 1 << a);
        }
        table[x as usize] = fam;
    }
    table
}

pub fn masks(sets: &[Subset]) -> Vec<u64> {
    sets.iter().map(|s| s.bits()).collect()
}

fn filters(labels: &[&str], filters: &[(&[&str], &[&[&str]])]) -> SizeSystem {
    let u = Universe::new(labels).unwrap();
    let f = filters
        .iter()
        .map(|(x, fam)| (u.subset(x).unwrap(), fam.iter().map(|a| u.subset(a).unwrap()).collect()))
        .collect();
    SizeSystem::from_filters(u, nmsize::DomainSpec::Full, f).unwrap()
}

/// `F(U) = {A : z ∈ A}`, `F(Y) = {Y}` otherwise.
pub fn independence_one() -> SizeSystem {
    let fu: &[&[&str]] = &[&["z"], &["x", "z"], &["y", "z"], &["x", "y", "z"]];
    filters(&["x", "y", "z"], &[(&["x", "y", "z"], fu)])
}

/// `F({x,z}) = {{z}, {x,z}}`, `F(Y) = {Y}` otherwise.
pub fn independence_two() -> SizeSystem {
    filters(&["x", "y", "z"], &[(&["x", "z"], &[&["z"], &["x", "z"]])])
}

/// Universe `1..=n`; `I(U)` is `∅` and the singletons, `I(X) = {∅}` otherwise.
pub fn top_singletons(n: usize) -> SizeSystem {
    let u = Universe::numbered(n).unwrap();
    let mut i = vec![u.empty()];
    i.extend((0..n).map(|k| u.singleton(k)));
    SizeSystem::build(u.clone(), nmsize::DomainSpec::Full, vec![(u.full(), i)]).unwrap()
}

/// The three systems separating the versions of `M+omega`.
pub fn omega_versions(k: usize) -> SizeSystem {
    let y = ["a", "b", "c"];
    let ab: (&[&str], &[&[&str]]) = (&["a", "b"], &[&["a"], &["a", "b"]]);
    let ac: (&[&str], &[&[&str]]) = (&["a", "c"], &[&["a"], &["a", "c"]]);
    match k {
        1 => filters(&y, &[(&y, &[&["a", "c"], &["b", "c"], &y]), ab]),
        2 => filters(&y, &[(&y, &[&["a", "b"], &["a", "c"], &y]), ab]),
        3 => filters(&y, &[(&y, &[&["a", "b"], &["a", "c"], &y]), ab, ac]),
        _ => panic!("no system {k}"),
    }
}
