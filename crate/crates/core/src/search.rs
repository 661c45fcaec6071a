//! Exhaustive enumeration of size systems and choice functions.
//!
//! Systems over the full domain are enumerated in mixed radix: one digit per
//! domain set, the first set in canonical order being the most significant.
//! The digit at `X` selects a family for `I(X)` from a list sorted by
//! cardinality, then bitset value. Every family contains `∅`.
//!
//! Parallel scans split the space by leading digits and merge in order, so
//! results do not depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::properties::{bits, check_level, check_property, check_property_scoped, PropertyId, Scope};
use crate::report::CheckReport;
use crate::rules::{check_rule, RuleId};
use crate::setcore::{
    all_masks, canon_cmp, family_members, permutations, permute_family, permute_mask, submasks, Family, Subset,
    Universe, MAX_CAPACITY,
};
use crate::sizesys::{full_domain, MuFunction, SizeSystem};

/// Largest universe for which unrestricted exhaustive modes are allowed.
pub const EXHAUSTIVE_CEILING: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Property(PropertyId),
    Rule(RuleId),
    Level(usize),
}

impl Condition {
    pub fn check(&self, s: &SizeSystem) -> Result<CheckReport> {
        match *self {
            Condition::Property(p) => check_property(s, p),
            Condition::Rule(r) => check_rule(s, r),
            Condition::Level(x) => check_level(s, x),
        }
    }

    pub fn holds(&self, s: &SizeSystem) -> Result<bool> {
        Ok(self.check(s)?.holds)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Property(p) => write!(f, "{p}"),
            Condition::Rule(r) => write!(f, "{r}"),
            Condition::Level(x) => write!(f, "level:{x}"),
        }
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(x) = s.strip_prefix("level:") {
            let x: usize = x.parse().map_err(|_| Error::UnknownName(s.to_string()))?;
            if x == 0 {
                return Err(Error::InvalidParameter("level must be at least 1".into()));
            }
            return Ok(Condition::Level(x));
        }
        match s.parse::<PropertyId>() {
            Ok(p) => return Ok(Condition::Property(p)),
            Err(Error::UnknownName(_)) => {}
            Err(e) => return Err(e),
        }
        match s.parse::<RuleId>() {
            Ok(r) => Ok(Condition::Rule(r)),
            Err(e) => Err(e),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FindCounterexample,
    VerifyImplication,
    Count,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "find-counterexample" | "find" => Ok(Mode::FindCounterexample),
            "verify-implication" | "verify" => Ok(Mode::VerifyImplication),
            "count" => Ok(Mode::Count),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    pub universe_size: usize,
    pub required: Vec<Condition>,
    pub target: Option<Condition>,
    pub mode: Mode,
    pub monotone_only: bool,
    pub canonical_only: bool,
}

impl SearchSpec {
    pub fn new(universe_size: usize, mode: Mode) -> Self {
        SearchSpec {
            universe_size,
            required: Vec::new(),
            target: None,
            mode,
            monotone_only: true,
            canonical_only: false,
        }
    }

    pub fn require(mut self, c: Condition) -> Self {
        self.required.push(c);
        self
    }

    pub fn target(mut self, c: Condition) -> Self {
        self.target = Some(c);
        self
    }

    pub fn monotone(mut self, on: bool) -> Self {
        self.monotone_only = on;
        self
    }

    pub fn canonical(mut self, on: bool) -> Self {
        self.canonical_only = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.universe_size;
        if n == 0 {
            return Err(Error::InvalidSpec("universe size must be at least 1".into()));
        }
        if n > MAX_CAPACITY {
            return Err(Error::CapacityExceeded { size: n, capacity: MAX_CAPACITY });
        }
        if n > EXHAUSTIVE_CEILING && !(self.canonical_only && self.monotone_only) {
            return Err(Error::SizeCeiling {
                size: n,
                reason: format!("sizes above {EXHAUSTIVE_CEILING} need both canonical_only and monotone_only"),
            });
        }
        if let Some(t) = &self.target {
            if self.required.contains(t) {
                return Err(Error::InvalidSpec(format!("target {t} is also required")));
            }
        }
        if self.target.is_none() && self.mode != Mode::Count {
            return Err(Error::InvalidSpec("this mode needs a target".into()));
        }
        Ok(())
    }
}

/// Runs `f` on a pool with `jobs` worker threads; `0` uses the default pool.
pub fn with_parallelism<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(f)
}

/// Down-sets of the subset lattice of `of` that contain `∅`, as families.
pub fn down_sets(of: u64) -> Vec<Family> {
    let order = submasks(of);
    let mut out = Vec::new();
    fn go(order: &[u64], k: usize, fam: Family, out: &mut Vec<Family>) {
        if k == order.len() {
            out.push(fam);
            return;
        }
        let m = order[k];
        go(order, k + 1, fam, out);
        let below = bits(m).all(|i| fam >> (m & !(1 << i)) & 1 == 1);
        if below {
            go(order, k + 1, fam | 1 << m, out);
        }
    }
    go(&order[1..], 0, 1, &mut out);
    sort_families(&mut out);
    out
}

/// Every family over the subsets of `of` that contains `∅`.
pub fn families_with_empty(of: u64) -> Vec<Family> {
    let rest = &submasks(of)[1..];
    let n = rest.len();
    let mut out = Vec::with_capacity(1 << n);
    for pick in 0u64..1 << n {
        let mut fam = 1u64;
        for (i, &m) in rest.iter().enumerate() {
            if pick >> i & 1 == 1 {
                fam |= 1 << m;
            }
        }
        out.push(fam);
    }
    sort_families(&mut out);
    out
}

fn sort_families(v: &mut [Family]) {
    v.sort_by(|&a, &b| canon_cmp(a, b));
}

type OptionSlot = OnceLock<Arc<Vec<Family>>>;

fn cached_options(monotone: bool, of: u64) -> Arc<Vec<Family>> {
    static CACHE: OnceLock<Vec<[OptionSlot; 2]>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..64).map(|_| [OnceLock::new(), OnceLock::new()]).collect());
    cache[of as usize][monotone as usize]
        .get_or_init(|| {
            // canonical order of families only depends on the member count and
            // the bit pattern, so smaller sets can share the low-bit lists
            Arc::new(if monotone { down_sets(of) } else { families_with_empty(of) })
        })
        .clone()
}

/// A mixed-radix space of ideal tables or choice tables.
#[derive(Clone)]
struct Space {
    universe: Arc<Universe>,
    positions: Vec<u64>,
    options: Vec<Arc<Vec<u64>>>,
    choices: bool,
    canonical: bool,
    perms: Vec<Vec<usize>>,
}

impl Space {
    fn systems(n: usize, monotone: bool, canonical: bool) -> Result<Self> {
        let universe = Arc::new(Universe::numbered(n)?);
        let positions: Vec<u64> = all_masks(n as u8)[1..].to_vec();
        let options = positions.iter().map(|&x| cached_options(monotone, x)).collect();
        let perms = if canonical { permutations(n).into_iter().skip(1).collect() } else { Vec::new() };
        Ok(Space { universe, positions, options, choices: false, canonical, perms })
    }

    fn mus(n: usize) -> Result<Self> {
        let universe = Arc::new(Universe::numbered(n)?);
        let positions: Vec<u64> = all_masks(n as u8)[1..].to_vec();
        let options = positions.iter().map(|&x| Arc::new(submasks(x).to_vec())).collect();
        Ok(Space { universe, positions, options, choices: true, canonical: false, perms: Vec::new() })
    }

    fn width(&self) -> u8 {
        self.universe.width()
    }

    fn total(&self) -> u128 {
        self.options.iter().fold(1u128, |t, o| t.saturating_mul(o.len() as u128))
    }

    fn fresh_table(&self) -> Vec<u64> {
        let n = 1usize << self.width();
        if self.choices {
            (0..n as u64).collect()
        } else {
            let mut t = vec![0; n];
            t[0] = 1;
            t
        }
    }

    /// Whether the ideal table is the least of its relabelling orbit.
    fn is_orbit_min(&self, table: &[u64]) -> bool {
        for p in &self.perms {
            let mut inv = vec![0usize; p.len()];
            for (i, &j) in p.iter().enumerate() {
                inv[j] = i;
            }
            for &x in &self.positions {
                let image = permute_family(table[permute_mask(x, &inv) as usize], p);
                match canon_cmp(image, table[x as usize]) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }

    fn split(&self) -> usize {
        let mut p = 0;
        let mut prod = 1u128;
        while p < self.options.len() && prod < 64 {
            prod = prod.saturating_mul(self.options[p].len() as u128);
            p += 1;
        }
        p
    }

    fn prefixes(&self) -> Vec<Vec<usize>> {
        let p = self.split();
        let mut out = vec![Vec::new()];
        for k in 0..p {
            let mut next = Vec::with_capacity(out.len() * self.options[k].len());
            for pre in &out {
                for d in 0..self.options[k].len() {
                    let mut v = pre.clone();
                    v.push(d);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Visits every table extending `prefix` in order; stops when `f` returns false.
    fn walk(&self, prefix: &[usize], mut f: impl FnMut(&[u64]) -> bool) {
        let mut table = self.fresh_table();
        for (k, &d) in prefix.iter().enumerate() {
            table[self.positions[k] as usize] = self.options[k][d];
        }
        let free = &self.positions[prefix.len()..];
        let opts = &self.options[prefix.len()..];
        let mut digits = vec![0usize; free.len()];
        for (k, &x) in free.iter().enumerate() {
            table[x as usize] = opts[k][0];
        }
        loop {
            if (!self.canonical || self.is_orbit_min(&table)) && !f(&table) {
                return;
            }
            let mut k = free.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < opts[k].len() {
                    table[free[k] as usize] = opts[k][digits[k]];
                    break;
                }
                digits[k] = 0;
                table[free[k] as usize] = opts[k][0];
            }
        }
    }

    fn system(&self, table: &[u64]) -> SizeSystem {
        SizeSystem::from_raw(self.universe.clone(), full_domain(self.width()), table.to_vec())
    }

    fn mu(&self, table: &[u64]) -> MuFunction {
        MuFunction::from_raw(self.universe.clone(), full_domain(self.width()), table.to_vec())
    }
}

pub(crate) enum Visit<T> {
    /// Not counted.
    Ignore,
    /// Counted towards the examined total.
    Count,
    /// Counted separately, e.g. skipped for lacking a property.
    Aside,
    /// Counted, and ends the scan.
    Hit(T),
    /// Ends the scan with an error.
    Fail(Error),
}

pub(crate) struct Scan<T> {
    pub enumerated: u128,
    pub counted: u128,
    pub aside: u128,
    pub hit: Option<T>,
}

struct Part<T> {
    enumerated: u128,
    counted: u128,
    aside: u128,
    stop: Option<std::result::Result<T, Error>>,
}

fn scan<T: Send>(space: &Space, visit: impl Fn(&[u64]) -> Visit<T> + Sync) -> Result<Scan<T>> {
    let prefixes = space.prefixes();
    let best = AtomicUsize::new(usize::MAX);
    let parts: Vec<Part<T>> = prefixes
        .par_iter()
        .enumerate()
        .map(|(j, pre)| {
            let mut part = Part { enumerated: 0, counted: 0, aside: 0, stop: None };
            if j > best.load(AtomicOrdering::Relaxed) {
                return part;
            }
            space.walk(pre, |table| {
                part.enumerated += 1;
                match visit(table) {
                    Visit::Ignore => {}
                    Visit::Count => part.counted += 1,
                    Visit::Aside => part.aside += 1,
                    Visit::Hit(t) => {
                        part.counted += 1;
                        part.stop = Some(Ok(t));
                    }
                    Visit::Fail(e) => part.stop = Some(Err(e)),
                }
                if part.stop.is_some() {
                    best.fetch_min(j, AtomicOrdering::Relaxed);
                    return false;
                }
                j <= best.load(AtomicOrdering::Relaxed)
            });
            part
        })
        .collect();
    let mut out = Scan { enumerated: 0, counted: 0, aside: 0, hit: None };
    for part in parts {
        out.enumerated += part.enumerated;
        out.counted += part.counted;
        out.aside += part.aside;
        match part.stop {
            Some(Ok(t)) => {
                out.hit = Some(t);
                break;
            }
            Some(Err(e)) => return Err(e),
            None => {}
        }
    }
    Ok(out)
}

/// Scan over every full-domain system of size `n`.
pub(crate) fn scan_systems<T: Send>(
    n: usize,
    monotone: bool,
    canonical: bool,
    visit: impl Fn(&SizeSystem) -> Visit<T> + Sync,
) -> Result<Scan<T>> {
    let space = Space::systems(n, monotone, canonical)?;
    scan(&space, |t| visit(&space.system(t)))
}

/// Scan over every choice function on the full domain of size `n`.
pub(crate) fn scan_mus<T: Send>(n: usize, visit: impl Fn(&MuFunction) -> Visit<T> + Sync) -> Result<Scan<T>> {
    let space = Space::mus(n)?;
    scan(&space, |t| visit(&space.mu(t)))
}

/// Number of choice functions on the full domain of size `n`.
pub fn mu_space_size(n: usize) -> Result<u128> {
    Ok(Space::mus(n)?.total())
}

/// Number of systems in the space of a spec, ignoring all conditions.
pub fn space_size(universe_size: usize, monotone_only: bool) -> Result<u128> {
    if universe_size == 0 || universe_size > MAX_CAPACITY {
        return Err(Error::CapacityExceeded { size: universe_size, capacity: MAX_CAPACITY });
    }
    if !monotone_only && universe_size > EXHAUSTIVE_CEILING {
        return Err(Error::SizeCeiling { size: universe_size, reason: "too many families to list".into() });
    }
    Ok(Space::systems(universe_size, monotone_only, false)?.total())
}

/// Systems of the spec's space in canonical order; conditions are not applied.
pub fn enumerate_systems(spec: &SearchSpec) -> Result<impl Iterator<Item = SizeSystem>> {
    spec.validate()?;
    let space = Space::systems(spec.universe_size, spec.monotone_only, spec.canonical_only)?;
    let (tx, rx) = std::sync::mpsc::sync_channel::<SizeSystem>(256);
    std::thread::spawn(move || {
        space.walk(&[], |t| tx.send(space.system(t)).is_ok());
    });
    Ok(rx.into_iter())
}

/// Choice functions on the full domain of size `n`, in canonical order.
pub fn enumerate_mus(n: usize) -> Result<impl Iterator<Item = MuFunction>> {
    if n == 0 || n > EXHAUSTIVE_CEILING {
        return Err(Error::SizeCeiling { size: n, reason: format!("supported range is 1..={EXHAUSTIVE_CEILING}") });
    }
    let space = Space::mus(n)?;
    let (tx, rx) = std::sync::mpsc::sync_channel::<MuFunction>(256);
    std::thread::spawn(move || {
        space.walk(&[], |t| tx.send(space.mu(t)).is_ok());
    });
    Ok(rx.into_iter())
}

fn satisfies_all(s: &SizeSystem, conds: &[Condition]) -> Result<bool> {
    for c in conds {
        if !c.holds(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub system: SizeSystem,
    pub report: CheckReport,
}

fn first_violation(spec: &SearchSpec, size: usize) -> Result<Scan<Counterexample>> {
    let target = spec.target.expect("validated");
    scan_systems(size, spec.monotone_only, spec.canonical_only, |s| {
        match satisfies_all(s, &spec.required) {
            Err(e) => return Visit::Fail(e),
            Ok(false) => return Visit::Ignore,
            Ok(true) => {}
        }
        match target.check(s) {
            Err(e) => Visit::Fail(e),
            Ok(r) if r.holds => Visit::Count,
            Ok(r) => Visit::Hit(Counterexample { system: s.clone().with_name("counterexample"), report: r }),
        }
    })
}

/// First system of the given size satisfying `required` and violating `target`.
pub fn find_counterexample(spec: &SearchSpec) -> Result<Option<Counterexample>> {
    spec.validate()?;
    Ok(first_violation(spec, spec.universe_size)?.hit)
}

#[derive(Clone, Debug)]
pub struct ImplicationOutcome {
    pub report: CheckReport,
    pub counterexample: Option<Counterexample>,
}

fn implication_name(required: &[Condition], target: &Condition) -> String {
    let lhs: Vec<String> = required.iter().map(|c| c.to_string()).collect();
    let lhs = if lhs.is_empty() { "true".to_string() } else { lhs.join(" + ") };
    format!("{lhs} => {target}")
}

/// Checks `required ⇒ target` on every system of size `1..=universe_size`.
pub fn verify_implication(spec: &SearchSpec) -> Result<ImplicationOutcome> {
    spec.validate()?;
    let target = spec.target.expect("validated");
    let mut report = CheckReport::new("search", implication_name(&spec.required, &target));
    let mut counted = 0u128;
    let mut counterexample = None;
    for size in 1..=spec.universe_size {
        let sc = first_violation(spec, size)?;
        counted += sc.counted;
        if let Some(cx) = sc.hit {
            report.holds = false;
            report.witness = cx.report.witness.clone();
            report.notes.push(format!("counterexample at universe size {size}"));
            counterexample = Some(cx);
            break;
        }
    }
    report.instances_checked = u64::try_from(counted).unwrap_or(u64::MAX);
    Ok(ImplicationOutcome { report, counterexample })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountOutcome {
    pub enumerated: u128,
    pub satisfying: u128,
}

/// Counts systems of the given size, and those satisfying `required` and the target.
pub fn count(spec: &SearchSpec) -> Result<CountOutcome> {
    spec.validate()?;
    let mut conds = spec.required.clone();
    conds.extend(spec.target);
    if conds.is_empty() && !spec.canonical_only {
        let total = space_size(spec.universe_size, spec.monotone_only)?;
        return Ok(CountOutcome { enumerated: total, satisfying: total });
    }
    let sc =
        scan_systems::<()>(spec.universe_size, spec.monotone_only, spec.canonical_only, |s| {
            match satisfies_all(s, &conds) {
                Err(e) => Visit::Fail(e),
                Ok(true) => Visit::Count,
                Ok(false) => Visit::Ignore,
            }
        })?;
    Ok(CountOutcome { enumerated: sc.enumerated, satisfying: sc.counted })
}

#[derive(Clone, Debug)]
pub struct TwoSmallOutcome {
    pub report: CheckReport,
    /// Families over `𝒫(X)` examined, per universe size.
    pub families: Vec<u128>,
    pub counterexample: Option<(SizeSystem, Subset)>,
}

/// Checks, for every full-powerset system with `|U| ≤ max_size`, that a set
/// satisfying all three `M++` variants but not `I-omega` forces some set to
/// fail `2*s`.
///
/// Only `I(X)` and the sets `I(Z)`, `Z ∉ I(X)`, enter the `M++` conditions at
/// `X`, and the least admissible `I(Z)` is `{A ∩ Z : A ∈ I(X)}`. Enlarging any
/// ideal can only break `2*s`, so a counterexample exists iff one exists with
/// these least ideals and `I(Y) = {∅}` elsewhere. It therefore suffices to
/// range over the families `I(X)` for `X = U`.
pub fn verify_two_small(max_size: usize) -> Result<TwoSmallOutcome> {
    if max_size == 0 || max_size > EXHAUSTIVE_CEILING {
        return Err(Error::SizeCeiling {
            size: max_size,
            reason: format!("supported range is 1..={EXHAUSTIVE_CEILING}"),
        });
    }
    let mut report = CheckReport::new("search", "M++:1 + M++:2 + M++:3 + not I-omega at X => some Y fails 2*s");
    let mut families = Vec::new();
    let mut premises = 0u128;
    for n in 1..=max_size {
        let x = (1u64 << n) - 1;
        let members = submasks(x);
        let total = 1u64 << members.len();
        let found = (0..total)
            .into_par_iter()
            .map(|pick| {
                let fam = members.iter().enumerate().fold(0u64, |f, (i, &m)| f | ((pick >> i & 1) << m));
                match two_small_case(x, fam) {
                    Case::Irrelevant => (0u128, None),
                    Case::Premise => (1, None),
                    Case::Counterexample => (1, Some(fam)),
                }
            })
            .collect::<Vec<_>>();
        families.push(total as u128);
        for (p, hit) in found {
            premises += p;
            if let Some(fam) = hit {
                let sys = completion(n, x, fam)?;
                verify_completion(&sys, x)?;
                report.holds = false;
                report.witness = Some(crate::report::witness(sys.universe(), &["X"], &[x]));
                report.instances_checked = u64::try_from(premises).unwrap_or(u64::MAX);
                let xs = Subset::from_bits(x, n as u8)?;
                return Ok(TwoSmallOutcome { report, families, counterexample: Some((sys, xs)) });
            }
        }
    }
    report.instances_checked = u64::try_from(premises).unwrap_or(u64::MAX);
    Ok(TwoSmallOutcome { report, families, counterexample: None })
}

enum Case {
    Irrelevant,
    Premise,
    Counterexample,
}

fn two_small_fails(fam: Family, x: u64) -> bool {
    let members: Vec<u64> = bits(fam).collect();
    members.iter().any(|&a| members.iter().any(|&b| a | b == x))
}

fn restrict(fam: Family, z: u64) -> Family {
    bits(fam).fold(0, |f, a| f | 1 << (a & z))
}

fn two_small_case(x: u64, fam: Family) -> Case {
    let members: Vec<u64> = bits(fam).collect();
    let omega_fails = members.iter().any(|&a| members.iter().any(|&b| fam >> (a | b) & 1 == 0));
    if !omega_fails {
        return Case::Irrelevant;
    }
    if two_small_fails(fam, x) {
        return Case::Premise;
    }
    for &z in submasks(x) {
        if z == 0 || z == x || fam >> z & 1 == 1 {
            continue;
        }
        if two_small_fails(restrict(fam, z), z) {
            return Case::Premise;
        }
    }
    Case::Counterexample
}

fn completion(n: usize, x: u64, fam: Family) -> Result<SizeSystem> {
    let u = Arc::new(Universe::numbered(n)?);
    let mut table = vec![1u64; 1 << n];
    table[x as usize] = fam;
    for &z in submasks(x) {
        if z != 0 && z != x && fam >> z & 1 == 0 {
            table[z as usize] = restrict(fam, z);
        }
    }
    Ok(SizeSystem::from_raw(u, full_domain(n as u8), table).with_name("completion"))
}

fn verify_completion(s: &SizeSystem, x: u64) -> Result<()> {
    let xs = Subset::from_bits(x, s.width())?;
    for v in 1..=3 {
        if !check_property_scoped(s, PropertyId::MPlusPlus(v), Scope::Top(xs))?.holds {
            return Err(Error::InvalidSpec("completion does not satisfy M++ at X".into()));
        }
    }
    if check_property_scoped(s, PropertyId::IOmega, Scope::Top(xs))?.holds {
        return Err(Error::InvalidSpec("completion satisfies I-omega at X".into()));
    }
    if !check_property(s, PropertyId::NStarS(2))?.holds {
        return Err(Error::InvalidSpec("completion fails 2*s".into()));
    }
    Ok(())
}

/// Ideal-table members of a family, for display.
pub fn family_listing(fam: Family, within: u64, width: u8) -> Vec<Subset> {
    family_members(fam, within).map(|m| Subset::from_bits(m, width).expect("member fits")).collect()
}
