//! Equational rewriting of controlled circuits: patterns, named rules,
//! proof checking and bounded proof search.

mod euler;
mod normal;
mod pattern;
mod proof;
mod random;
mod rules;
mod search;

pub use euler::{euler_angles, euler_circuit, euler_params};
pub use normal::normalize_structural;
pub use pattern::{instantiate, match_term, parse_pattern, Env, ParamAtom, ParamExpr, Pat, Vars, WidthExpr};
pub use proof::{check_proof, ProofReport, ProofScript, ProofStep};
pub use random::random_circuit;
pub use rules::{
    apply_rule, parse_rule_specs, verify_rule, Direction, Model, ParamMode, Registry, Rule, RuleSpec, VERIFY_TRIALS,
};
pub use search::{search_equiv, SearchOptions, SearchOutcome};
