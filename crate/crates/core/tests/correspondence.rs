use std::sync::Arc;

use nmsize::preferential::non_implication_witness;
use nmsize::{
    check_mu_rule, check_property, check_rule, mu_to_rule_bridge, verify_correspondence, Direction, MuFunction,
    MuRuleId, PropertyId, RuleId, SizeSystem, Universe,
};

fn every_mu(n: usize) -> Vec<MuFunction> {
    let u = Arc::new(Universe::letters(n).unwrap());
    let domain = (1..1u64 << n).fold(0, |d, x| d | 1 << x);
    let mut tables = vec![vec![0u64]];
    for x in 1..1u64 << n {
        let subs: Vec<u64> = (0..=x).filter(|a| a & !x == 0).collect();
        tables = tables.into_iter().flat_map(|t| subs.iter().map(move |&a| [t.as_slice(), &[a]].concat())).collect();
    }
    tables.into_iter().map(|t| MuFunction::from_raw(u.clone(), domain, t)).collect()
}

fn mu_of(n: usize, f: impl Fn(u64) -> u64) -> MuFunction {
    let domain = (1..1u64 << n).fold(0, |d, x| d | 1 << x);
    MuFunction::from_raw(Arc::new(Universe::letters(n).unwrap()), domain, (0..1u64 << n).map(f).collect())
}

#[test]
fn forward_rows() {
    for row in 1..=10 {
        let r = verify_correspondence(row, Direction::Forward, 3).unwrap();
        assert!(r.holds, "row {row}: {:?}", r.witness.map(|w| w.system.ideal_listing()));
        assert!(r.systems_checked > 0, "row {row}");
    }
    let r = verify_correspondence(1, Direction::Forward, 3).unwrap();
    assert!(r.skipped_non_principal > 0);
}

#[test]
fn backward_rows() {
    for row in 1..=7 {
        let r = verify_correspondence(row, Direction::Backward, 3).unwrap();
        assert!(r.holds, "row {row}: {:?}", r.witness.map(|w| w.mu.choice_listing()));
        assert!(!r.non_implication_confirmed);
    }
}

#[test]
fn backward_non_implications() {
    for row in 8..=10 {
        let r = verify_correspondence(row, Direction::Backward, 3).unwrap();
        assert!(!r.holds, "row {row}");
        assert!(r.non_implication_confirmed, "row {row}");
        let w = r.witness.unwrap();
        assert_eq!(w.mu, non_implication_witness());
        let u = w.system.universe().clone();
        let ab = u.subset(&["a", "b"]).unwrap();
        assert_eq!(w.system.filter_of(&ab).unwrap(), [u.subset(&["a"]).unwrap(), ab]);
        for x in w.system.domain().into_iter().filter(|x| *x != ab) {
            assert_eq!(w.system.filter_of(&x).unwrap(), [x]);
        }
        assert_eq!(w.failing[0].condition, "eMI");
    }
}

#[test]
fn witness_choice_rules() {
    let mu = non_implication_witness();
    for r in [MuRuleId::MuCUT, MuRuleId::MuCUM, MuRuleId::MuSubsetSupset] {
        assert!(check_mu_rule(&mu, r).unwrap().holds, "{r}");
    }
    assert!(mu_to_rule_bridge(&mu, RuleId::CUT).unwrap().holds);
    let s = SizeSystem::from_mu(&mu);
    let r = check_property(&s, PropertyId::EMI).unwrap();
    assert!(!r.holds);
}

#[test]
fn identity_and_empty_choices() {
    let id = mu_of(3, |x| x);
    assert!(check_mu_rule(&id, MuRuleId::MuOR).unwrap().holds);
    for r in [RuleId::SC, RuleId::RW, RuleId::ANDOmega] {
        assert!(mu_to_rule_bridge(&id, r).unwrap().holds, "{r}");
    }
    let empty = mu_of(3, |_| 0);
    let r = check_mu_rule(&empty, MuRuleId::MuEmpty).unwrap();
    assert!(!r.holds);
    assert_eq!(r.witness_sets()[0].bits(), 1);
    assert!(!mu_to_rule_bridge(&empty, RuleId::CP).unwrap().holds);
}

#[test]
fn every_choice_round_trips() {
    let mut total = 0;
    for n in 1..=3 {
        for mu in every_mu(n) {
            let s = SizeSystem::from_mu(&mu);
            assert_eq!(s.principal_mu().unwrap(), mu);
            assert!(check_property(&s, PropertyId::IOmega).unwrap().holds);
            total += 1;
        }
    }
    assert_eq!(total, 2 + 2 * 2 * 4 + 2 * 2 * 2 * 4 * 4 * 4 * 8);
}

#[test]
fn bridge_matches_rule_checker() {
    for mu in every_mu(2) {
        let s = SizeSystem::from_mu(&mu);
        for r in RuleId::catalogue(2) {
            assert_eq!(
                mu_to_rule_bridge(&mu, r).unwrap().holds,
                check_rule(&s, r).unwrap().holds,
                "{r} {:?}",
                mu.choice_listing()
            );
        }
    }
}

#[test]
fn range_limits() {
    assert!(verify_correspondence(1, Direction::Forward, 0).is_err());
    assert!(verify_correspondence(1, Direction::Forward, 5).is_err());
    assert!(verify_correspondence(11, Direction::Backward, 2).is_err());
}
