//! Finite-group toolkit for approximate subgroups, invariant means and
//! metric-entropy descent.
//!
//! Everything is exact: groups are Cayley tables, subsets are bitmasks and
//! measures are rationals.

pub mod action;
pub mod approx;
pub mod certificate;
pub mod descent;
pub mod error;
pub mod group;
pub mod measure;
pub mod scenario;
pub mod solver;
pub mod subset;
pub mod systems;
pub mod verify;

pub use action::ActionTable;
pub use approx::{
    approximate_constant, commensurability, covering_number, s_operator, thickness_cover_bridge, thickness_number,
    BridgeReport, CoverWitness, SolveMode, ThicknessWitness,
};
pub use error::{Error, Result};
pub use group::{build_group, cyclic, dihedral, direct_product, heisenberg_mod, GroupFamily, GroupTable};
pub use measure::{GroupMean, MeasureValue, SpaceMean};
pub use subset::{ESet, GSet, LocalSet, Subset};
pub use certificate::{Certificate, ChainCertificate, DescentCertificate, QuotientModel, Termination};
pub use descent::{basic_descent, extract_model, recursive_chain, DescentParams};
pub use systems::{mu_thickness_bound_check, LevelSet, MwSystem, SystemKind};
pub use verify::{verify, Verdict, VerifyContext};
pub use scenario::{Context, Overrides, Scenario};
