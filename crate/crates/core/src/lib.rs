//! Finite abstract-size semantics for nonmonotonic consequence.
//!
//! A [`SizeSystem`] assigns each set `X` of a finite domain an ideal of small
//! subsets. The crate checks size properties, derives the consequence
//! relation `α |~ β` and its rules, relates principal systems to choice
//! functions, and enumerates small universes exhaustively.

pub mod error;
pub mod io;
pub mod logic;
pub mod preferential;
pub mod properties;
pub mod report;
pub mod rules;
pub mod search;
pub mod setcore;
pub mod sizesys;

pub use error::{Error, Result};
pub use logic::{classical_entails, define, models, parse_formula, Formula, Interpretation};
pub use preferential::{
    check_mu_rule, mu_to_rule_bridge, verify_correspondence, verify_correspondence_backward,
    verify_correspondence_forward, CorrespondenceReport, Direction, MuRuleId,
};
pub use properties::{check_level, check_property, check_property_scoped, property_matrix, PropertyId, Scope};
pub use report::{CheckReport, WitnessEntry};
pub use rules::{check_rule, derive_relation, nm_entails, nm_entails_formulas, RuleId};
pub use search::{
    count, enumerate_mus, enumerate_systems, find_counterexample, verify_implication, verify_two_small,
    with_parallelism, Condition, Mode, SearchSpec,
};
pub use setcore::{Family, Subset, Universe};
pub use sizesys::{from_mu, principal_mu, DomainSpec, MuFunction, SizeSystem};
