//! Union-closed set families over `[n] = {1, …, n}`: the closure operator,
//! density, relative subsets and closure roots, named constructions, case
//! classifications checked against direct computation, and small-universe
//! enumeration.
//!
//! Sets are bitmasks (`ElementSet`), element `i` at bit `i − 1`. Families
//! never contain the empty set and always contain `[n]`.

pub mod analysis;
pub mod checks;
pub mod closure;
pub mod constructions;
pub mod error;
pub mod exec;
pub mod family;
pub mod iso;
pub mod oracles;
pub mod relative;
pub mod set;
pub mod text;

pub use analysis::{
    a_table, a_value, closure_tree, density_census, enumerate_union_closed, frankl_check,
    g_monotonicity_probe, g_value, ClosureTree, DensityCensus, Enumeration, FranklReport, GProbe,
    Threshold,
};
pub use checks::{run_suite, Check, CheckOutcome, SuiteConfig, SuiteReport};
pub use closure::{
    closure, closure_trace, closure_with, density, density_report, iterated_closure,
    min_full_level, s_param, ClosureTrace, DensityReport,
};
pub use constructions::{
    chain_family, cube_plus_universe, interval_chain_family, is_path_member, lifted_family,
    loose_bound_family, path_family, path_generators, path_up_set, Construction, ConstructionSpec,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use family::{FamilyStatistics, SetFamily};
pub use iso::relabel_family;
pub use oracles::{
    classify_lift, classify_path, verify_lift, verify_path, CaseLabel, CaseReport, LiftSweep,
    LiftVerification, PathSweep, PathVerification,
};
pub use relative::{
    brute_force_closure_roots, closure_dominates_generated, covers_under_closure,
    has_closure_root, is_relative_subset, is_relative_transitive, minimal_members,
    relative_generated, relative_minimal_members, up_set_generated, RelativeOrder,
    RootCertificate, RootSearch, TransitivityReport,
};
pub use set::{subsets_of_size, ElementSet};
pub use text::{format_family, format_set, parse_family};
