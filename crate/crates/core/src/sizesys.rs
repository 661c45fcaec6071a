//! Coherent systems of sizes and choice functions.
//!
//! Only ideals are stored. Filters, the not-small family and medium sets are
//! derived on demand. The empty set is never a domain member, but wherever a
//! checker needs `I(∅)` it is taken to be `{∅}`, consistent with the
//! empty-antecedent convention of the consequence relation.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::setcore::{family_members, submasks, Family, Subset, Universe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    /// Every nonempty subset of the universe.
    Full,
    Explicit(Vec<Subset>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Reject ideals that are not downward closed.
    pub require_monotone: bool,
}

#[derive(Clone, Debug)]
pub struct SizeSystem {
    universe: Arc<Universe>,
    name: String,
    domain: Family,
    ideals: Vec<Family>,
}

impl PartialEq for SizeSystem {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.domain == other.domain && self.ideals == other.ideals
    }
}

impl Eq for SizeSystem {}

pub(crate) fn full_domain(width: u8) -> Family {
    let n = 1u64 << width;
    if n == 64 {
        !1
    } else {
        ((1u64 << n) - 1) & !1
    }
}

fn resolve_domain(u: &Universe, domain: &DomainSpec) -> Result<Family> {
    match domain {
        DomainSpec::Full => Ok(full_domain(u.width())),
        DomainSpec::Explicit(sets) => {
            let mut fam = 0u64;
            for x in sets {
                u.check(x)?;
                if x.is_empty() {
                    return Err(Error::EmptySetInDomain);
                }
                fam |= 1 << x.bits();
            }
            Ok(fam)
        }
    }
}

impl SizeSystem {
    /// Validated construction; ideals not listed default to `{∅}`.
    pub fn build(universe: Universe, domain: DomainSpec, ideals: Vec<(Subset, Vec<Subset>)>) -> Result<Self> {
        Self::build_with(universe, domain, ideals, BuildOptions::default())
    }

    pub fn build_with(
        universe: Universe,
        domain: DomainSpec,
        ideals: Vec<(Subset, Vec<Subset>)>,
        opts: BuildOptions,
    ) -> Result<Self> {
        let dom = resolve_domain(&universe, &domain)?;
        let n = 1usize << universe.len();
        let mut table: Vec<Family> = vec![0; n];
        let mut given: Vec<bool> = vec![false; n];
        table[0] = 1;
        for (x, members) in &ideals {
            universe.check(x)?;
            if dom >> x.bits() & 1 == 0 {
                if x.is_empty() {
                    return Err(Error::EmptySetInDomain);
                }
                return Err(Error::SetNotInDomain(universe.show(x)));
            }
            if given[x.bits() as usize] {
                return Err(Error::Input(format!("ideal of {} given twice", universe.show(x))));
            }
            given[x.bits() as usize] = true;
            let mut fam = 0u64;
            for a in members {
                universe.check(a)?;
                if !a.is_subset_of(x) {
                    return Err(Error::IdealMemberNotSubset { x: universe.show(x), a: universe.show(a) });
                }
                fam |= 1 << a.bits();
            }
            table[x.bits() as usize] = fam;
        }
        for (x, g) in given.iter().enumerate() {
            if !g && dom >> x & 1 == 1 {
                table[x] = 1;
            }
        }
        let s = SizeSystem { universe: Arc::new(universe), name: "system".into(), domain: dom, ideals: table };
        if opts.require_monotone {
            s.check_monotone()?;
        }
        Ok(s)
    }

    /// Construction from filters; `F(X)` not listed defaults to `{X}`.
    pub fn from_filters(universe: Universe, domain: DomainSpec, filters: Vec<(Subset, Vec<Subset>)>) -> Result<Self> {
        let mut ideals = Vec::with_capacity(filters.len());
        for (x, members) in filters {
            universe.check(&x)?;
            let mut out = Vec::with_capacity(members.len());
            for a in members {
                universe.check(&a)?;
                if !a.is_subset_of(&x) {
                    return Err(Error::IdealMemberNotSubset { x: universe.show(&x), a: universe.show(&a) });
                }
                out.push(x.difference(&a));
            }
            ideals.push((x, out));
        }
        Self::build(universe, domain, ideals)
    }

    /// Unvalidated construction from a domain bitset and an ideal table indexed by mask.
    pub fn from_raw(universe: Arc<Universe>, domain: Family, mut ideals: Vec<Family>) -> Self {
        assert_eq!(ideals.len(), 1 << universe.len());
        assert_eq!(domain & 1, 0, "empty set in domain");
        ideals[0] = 1;
        for (x, fam) in ideals.iter().enumerate().skip(1) {
            debug_assert!(family_members(*fam, x as u64).count() == fam.count_ones() as usize);
        }
        SizeSystem { universe, name: "system".into(), domain, ideals }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn universe_arc(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn width(&self) -> u8 {
        self.universe.width()
    }

    pub fn domain_bits(&self) -> Family {
        self.domain
    }

    pub fn ideal_table(&self) -> &[Family] {
        &self.ideals
    }

    pub fn is_full_domain(&self) -> bool {
        self.domain == full_domain(self.width())
    }

    /// Domain members as masks, in canonical order.
    pub fn domain_masks(&self) -> impl Iterator<Item = u64> + '_ {
        let all = (1u64 << self.width()) - 1;
        family_members(self.domain, all)
    }

    pub fn domain(&self) -> Vec<Subset> {
        let w = self.width();
        self.domain_masks().map(|m| Subset::raw(m, w)).collect()
    }

    pub fn in_domain(&self, x: &Subset) -> bool {
        x.width() == self.width() && self.domain >> x.bits() & 1 == 1
    }

    #[inline]
    pub(crate) fn has(&self, x: u64) -> bool {
        self.domain >> x & 1 == 1
    }

    /// `a ∈ I(x)` on masks; `I(∅) = {∅}`.
    #[inline]
    pub(crate) fn small(&self, x: u64, a: u64) -> bool {
        self.ideals[x as usize] >> a & 1 == 1
    }

    /// `a ∈ F(x)` on masks.
    #[inline]
    pub(crate) fn big(&self, x: u64, a: u64) -> bool {
        a & !x == 0 && self.small(x, x & !a)
    }

    /// `a ∈ M⁺(x)` on masks.
    #[inline]
    pub(crate) fn not_small(&self, x: u64, a: u64) -> bool {
        !self.small(x, a)
    }

    pub(crate) fn ideal_family(&self, x: u64) -> Family {
        self.ideals[x as usize]
    }

    pub(crate) fn filter_family(&self, x: u64) -> Family {
        let i = self.ideals[x as usize];
        submasks(x).iter().filter(|&&a| i >> (x & !a) & 1 == 1).fold(0, |f, &a| f | 1 << a)
    }

    fn member(&self, x: &Subset) -> Result<u64> {
        self.universe.check(x)?;
        if !self.has(x.bits()) {
            return Err(Error::SetNotInDomain(self.universe.show(x)));
        }
        Ok(x.bits())
    }

    fn listing(&self, x: u64, pick: impl Fn(u64) -> bool) -> Vec<Subset> {
        let w = self.width();
        submasks(x).iter().copied().filter(|&a| pick(a)).map(|a| Subset::raw(a, w)).collect()
    }

    pub fn ideal_of(&self, x: &Subset) -> Result<Vec<Subset>> {
        let x = self.member(x)?;
        Ok(self.listing(x, |a| self.small(x, a)))
    }

    pub fn filter_of(&self, x: &Subset) -> Result<Vec<Subset>> {
        let x = self.member(x)?;
        Ok(self.listing(x, |a| self.big(x, a)))
    }

    pub fn mplus_of(&self, x: &Subset) -> Result<Vec<Subset>> {
        let x = self.member(x)?;
        Ok(self.listing(x, |a| !self.small(x, a)))
    }

    pub fn medium_of(&self, x: &Subset) -> Result<Vec<Subset>> {
        let x = self.member(x)?;
        Ok(self.listing(x, |a| !self.small(x, a) && !self.big(x, a)))
    }

    pub fn is_small(&self, x: &Subset, a: &Subset) -> Result<bool> {
        let xm = self.member(x)?;
        self.universe.check(a)?;
        Ok(a.is_subset_of(x) && self.small(xm, a.bits()))
    }

    pub fn is_big(&self, x: &Subset, a: &Subset) -> Result<bool> {
        let xm = self.member(x)?;
        self.universe.check(a)?;
        Ok(self.big(xm, a.bits()))
    }

    /// Fails with `NotMonotone` naming the first missing subset.
    pub fn check_monotone(&self) -> Result<()> {
        for x in self.domain_masks() {
            for &b in submasks(x) {
                if !self.small(x, b) {
                    continue;
                }
                for &a in submasks(b) {
                    if !self.small(x, a) {
                        let w = self.width();
                        return Err(Error::NotMonotone {
                            x: self.universe.show(&Subset::raw(x, w)),
                            a: self.universe.show(&Subset::raw(a, w)),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Image under the element map `i -> perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SizeSystem {
        use crate::setcore::{permute_family, permute_mask};
        assert_eq!(perm.len(), self.universe.len());
        let mut ideals = vec![0; self.ideals.len()];
        let mut domain = 0u64;
        for x in 0..self.ideals.len() as u64 {
            let y = permute_mask(x, perm);
            ideals[y as usize] = permute_family(self.ideals[x as usize], perm);
            if self.has(x) {
                domain |= 1 << y;
            }
        }
        SizeSystem { universe: self.universe.clone(), name: self.name.clone(), domain, ideals }
    }

    /// Ideals as `(X, I(X))` pairs over the domain, in canonical order.
    pub fn ideal_listing(&self) -> Vec<(Subset, Vec<Subset>)> {
        self.domain()
            .into_iter()
            .map(|x| {
                let fam = self.listing(x.bits(), |a| self.small(x.bits(), a));
                (x, fam)
            })
            .collect()
    }

    /// The choice function picking the least filter member of every domain set.
    pub fn principal_mu(&self) -> Result<MuFunction> {
        let n = self.ideals.len();
        let mut choice = vec![0u64; n];
        for x in self.domain_masks() {
            match least_member(self.filter_family(x), x) {
                Some(m) => choice[x as usize] = m,
                None => return Err(Error::NotPrincipal(self.universe.show(&Subset::raw(x, self.width())))),
            }
        }
        for (x, c) in choice.iter_mut().enumerate() {
            if !self.has(x as u64) {
                *c = x as u64;
            }
        }
        choice[0] = 0;
        Ok(MuFunction { universe: self.universe.clone(), name: self.name.clone(), domain: self.domain, choice })
    }

    /// Principal system generated by a choice function: `I(X) = {A ⊆ X : A ∩ f(X) = ∅}`.
    pub fn from_mu(mu: &MuFunction) -> SizeSystem {
        let mut ideals = vec![0u64; mu.choice.len()];
        ideals[0] = 1;
        for x in mu.domain_masks() {
            let free = x & !mu.choice[x as usize];
            ideals[x as usize] = submasks(free).iter().fold(0, |f, &a| f | 1 << a);
        }
        SizeSystem { universe: mu.universe.clone(), name: mu.name.clone(), domain: mu.domain, ideals }
    }
}

fn least_member(fam: Family, within: u64) -> Option<u64> {
    let mut meet = within;
    let mut any = false;
    for m in family_members(fam, within) {
        meet &= m;
        any = true;
    }
    (any && fam >> meet & 1 == 1).then_some(meet)
}

/// A choice function `f(X) ⊆ X` on a domain.
#[derive(Clone, Debug)]
pub struct MuFunction {
    universe: Arc<Universe>,
    name: String,
    domain: Family,
    choice: Vec<u64>,
}

impl PartialEq for MuFunction {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.domain == other.domain && self.choice == other.choice
    }
}

impl Eq for MuFunction {}

impl MuFunction {
    /// Validated construction; choices not listed default to `f(X) = X`.
    pub fn build(universe: Universe, domain: DomainSpec, choices: Vec<(Subset, Subset)>) -> Result<Self> {
        let dom = resolve_domain(&universe, &domain)?;
        let n = 1usize << universe.len();
        let mut choice: Vec<u64> = (0..n as u64).collect();
        let mut seen = BTreeSet::new();
        for (x, fx) in &choices {
            universe.check(x)?;
            universe.check(fx)?;
            if dom >> x.bits() & 1 == 0 {
                if x.is_empty() {
                    return Err(Error::EmptySetInDomain);
                }
                return Err(Error::SetNotInDomain(universe.show(x)));
            }
            if !seen.insert(x.bits()) {
                return Err(Error::Input(format!("choice for {} given twice", universe.show(x))));
            }
            if !fx.is_subset_of(x) {
                return Err(Error::ChoiceNotSubset { x: universe.show(x), a: universe.show(fx) });
            }
            choice[x.bits() as usize] = fx.bits();
        }
        Ok(MuFunction { universe: Arc::new(universe), name: "mu".into(), domain: dom, choice })
    }

    /// Unvalidated construction from a choice table indexed by mask.
    pub fn from_raw(universe: Arc<Universe>, domain: Family, mut choice: Vec<u64>) -> Self {
        assert_eq!(choice.len(), 1 << universe.len());
        assert_eq!(domain & 1, 0, "empty set in domain");
        choice[0] = 0;
        debug_assert!(choice.iter().enumerate().all(|(x, &c)| c & !(x as u64) == 0));
        MuFunction { universe, name: "mu".into(), domain, choice }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn universe_arc(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn width(&self) -> u8 {
        self.universe.width()
    }

    pub fn domain_bits(&self) -> Family {
        self.domain
    }

    pub fn is_full_domain(&self) -> bool {
        self.domain == full_domain(self.width())
    }

    pub fn domain_masks(&self) -> impl Iterator<Item = u64> + '_ {
        let all = (1u64 << self.width()) - 1;
        family_members(self.domain, all)
    }

    pub fn domain(&self) -> Vec<Subset> {
        let w = self.width();
        self.domain_masks().map(|m| Subset::raw(m, w)).collect()
    }

    #[inline]
    pub(crate) fn has(&self, x: u64) -> bool {
        self.domain >> x & 1 == 1
    }

    /// `f(x)` on masks; `f(∅) = ∅`.
    #[inline]
    pub(crate) fn f(&self, x: u64) -> u64 {
        self.choice[x as usize]
    }

    pub fn choice(&self, x: &Subset) -> Result<Subset> {
        self.universe.check(x)?;
        if !self.has(x.bits()) {
            return Err(Error::SetNotInDomain(self.universe.show(x)));
        }
        Ok(Subset::raw(self.f(x.bits()), self.width()))
    }

    /// `(X, f(X))` pairs over the domain, in canonical order.
    pub fn choice_listing(&self) -> Vec<(Subset, Subset)> {
        let w = self.width();
        self.domain_masks().map(|x| (Subset::raw(x, w), Subset::raw(self.f(x), w))).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> MuFunction {
        use crate::setcore::permute_mask;
        let mut choice = vec![0; self.choice.len()];
        let mut domain = 0u64;
        for x in 0..self.choice.len() as u64 {
            let y = permute_mask(x, perm);
            choice[y as usize] = permute_mask(self.choice[x as usize], perm);
            if self.has(x) {
                domain |= 1 << y;
            }
        }
        MuFunction { universe: self.universe.clone(), name: self.name.clone(), domain, choice }
    }
}

pub fn filter_of(s: &SizeSystem, x: &Subset) -> Result<Vec<Subset>> {
    s.filter_of(x)
}

pub fn mplus_of(s: &SizeSystem, x: &Subset) -> Result<Vec<Subset>> {
    s.mplus_of(x)
}

pub fn medium_of(s: &SizeSystem, x: &Subset) -> Result<Vec<Subset>> {
    s.medium_of(x)
}

pub fn principal_mu(s: &SizeSystem) -> Result<MuFunction> {
    s.principal_mu()
}

pub fn from_mu(mu: &MuFunction) -> SizeSystem {
    SizeSystem::from_mu(mu)
}
