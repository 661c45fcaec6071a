mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{subsets_of, table_from_bits};
use nmsize::io::{mu_to_json, parse_mu, parse_system, system_to_json};
use nmsize::{
    check_level, check_property, check_rule, define, enumerate_systems, find_counterexample, models, parse_formula,
    verify_two_small, with_parallelism, Formula, Interpretation, Mode, MuFunction, PropertyId, RuleId, SearchSpec,
    SizeSystem, Subset, Universe,
};
use proptest::prelude::*;

fn arb_system(max: usize) -> impl Strategy<Value = SizeSystem> {
    (1..=max, prop::collection::vec(any::<u64>(), 16), any::<bool>(), any::<bool>())
        .prop_map(|(n, raw, opt, monotone)| common::system(n, &table_from_bits(n, &raw, opt, monotone)))
}

fn arb_mu(max: usize) -> impl Strategy<Value = MuFunction> {
    (1..=max, prop::collection::vec(any::<u64>(), 16)).prop_map(|(n, raw)| {
        let choice = (0..1u64 << n).map(|x| raw[x as usize] & x).collect();
        let domain = (1..1u64 << n).fold(0, |d, x| d | 1 << x);
        MuFunction::from_raw(Arc::new(Universe::numbered(n).unwrap()), domain, choice)
    })
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        (0..3usize).prop_map(|k| Formula::atom(&format!("p{k}"))),
        Just(Formula::Verum),
        Just(Formula::Falsum),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negation),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

fn verdicts(s: &SizeSystem) -> Vec<bool> {
    let n = s.universe().len();
    let mut v: Vec<bool> = PropertyId::catalogue(n).into_iter().map(|p| check_property(s, p).unwrap().holds).collect();
    v.extend(RuleId::catalogue(n).into_iter().map(|r| check_rule(s, r).unwrap().holds));
    v
}

fn keys(sets: &[Subset]) -> BTreeSet<u64> {
    sets.iter().map(|a| a.bits()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn size_classes_partition(s in arb_system(4)) {
        for x in s.domain() {
            let small = keys(&s.ideal_of(&x).unwrap());
            let big = keys(&s.filter_of(&x).unwrap());
            let medium = keys(&s.medium_of(&x).unwrap());
            let plus = keys(&s.mplus_of(&x).unwrap());
            let all: BTreeSet<u64> = subsets_of(x.bits()).into_iter().collect();
            prop_assert_eq!(&big, &small.iter().map(|a| x.bits() & !a).collect());
            prop_assert_eq!(&plus, &all.difference(&small).copied().collect());
            prop_assert_eq!(&medium, &plus.difference(&big).copied().collect());
            for a in &all {
                let sa = Subset::from_bits(*a, s.width()).unwrap();
                prop_assert_eq!(s.is_small(&x, &sa).unwrap(), small.contains(a));
                prop_assert_eq!(s.is_big(&x, &sa).unwrap(), big.contains(a));
            }
        }
    }

    #[test]
    fn choice_round_trip(mu in arb_mu(4)) {
        let s = SizeSystem::from_mu(&mu);
        prop_assert_eq!(s.principal_mu().unwrap(), mu.clone());
        for p in [PropertyId::Opt, PropertyId::IM, PropertyId::IOmega] {
            prop_assert!(check_property(&s, p).unwrap().holds, "{}", p);
        }
        let nonempty = mu.choice_listing().iter().all(|(_, f)| !f.is_empty());
        prop_assert_eq!(check_property(&s, PropertyId::NStarS(1)).unwrap().holds, nonempty);
    }

    #[test]
    fn verdicts_survive_relabelling(s in arb_system(3), seed in any::<u64>()) {
        let perms = nmsize::setcore::permutations(s.universe().len());
        let perm = &perms[seed as usize % perms.len()];
        prop_assert_eq!(verdicts(&s), verdicts(&s.permuted(perm)));
    }

    #[test]
    fn levels_are_nested(s in arb_system(4)) {
        let holds: Vec<bool> = (1..=5).map(|x| check_level(&s, x).unwrap().holds).collect();
        for w in holds.windows(2) {
            prop_assert!(!w[1] || w[0]);
        }
    }

    #[test]
    fn formula_display_round_trip(f in arb_formula(), bits in 0u64..8) {
        let g = parse_formula(&f.to_string()).unwrap();
        prop_assert_eq!(&g, &f);
        let i = Interpretation::canonical(&Universe::numbered(3).unwrap());
        prop_assert_eq!(models(&g, &i).unwrap(), models(&f, &i).unwrap());
        let a = Subset::from_bits(bits, 3).unwrap();
        prop_assert_eq!(models(&define(&a), &i).unwrap(), a);
    }

    #[test]
    fn system_json_round_trip(s in arb_system(4)) {
        let text = system_to_json(&s);
        let back = parse_system(&text).unwrap().system;
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(system_to_json(&back), text);
    }

    #[test]
    fn mu_json_round_trip(mu in arb_mu(4)) {
        let text = mu_to_json(&mu);
        prop_assert_eq!(parse_mu(&text).unwrap(), mu);
    }
}

fn orbit_key(s: &SizeSystem) -> Vec<u64> {
    let perms = nmsize::setcore::permutations(s.universe().len());
    perms.iter().map(|p| s.permuted(p).ideal_table().to_vec()).min().unwrap()
}

#[test]
fn canonical_representatives_cover_every_orbit() {
    for (n, monotone) in [(1, false), (2, false), (2, true), (3, true)] {
        let all: BTreeSet<Vec<u64>> = enumerate_systems(&SearchSpec::new(n, Mode::Count).monotone(monotone))
            .unwrap()
            .map(|s| orbit_key(&s))
            .collect();
        let reps: Vec<Vec<u64>> =
            enumerate_systems(&SearchSpec::new(n, Mode::Count).monotone(monotone).canonical(true))
                .unwrap()
                .map(|s| orbit_key(&s))
                .collect();
        let distinct: BTreeSet<Vec<u64>> = reps.iter().cloned().collect();
        assert_eq!(distinct.len(), reps.len(), "n={n} monotone={monotone}");
        assert_eq!(distinct, all, "n={n} monotone={monotone}");
    }
}

fn first_counterexample(jobs: usize) -> String {
    with_parallelism(jobs, || {
        let spec = ["Opt", "iM", "eMI", "I-omega"]
            .iter()
            .fold(SearchSpec::new(3, Mode::FindCounterexample), |s, c| s.require(c.parse().unwrap()))
            .target("eMF".parse().unwrap());
        let cx = find_counterexample(&spec).unwrap().unwrap();
        let two = verify_two_small(3).unwrap();
        format!("{}\n{:?}\n{:?}", system_to_json(&cx.system), cx.report, two.report)
    })
}

#[test]
fn results_do_not_depend_on_parallelism() {
    let one = first_counterexample(1);
    assert_eq!(one, first_counterexample(4));
    assert_eq!(one, first_counterexample(0));
}
