//! Finite groups realized as Cayley tables: construction from structured
//! specifications, element orders, `ψ(G)`, and the structural queries the
//! classification checks rely on.

mod build;
mod families;
mod finite;
mod spec;
mod table;

pub use build::{build_group, build_group_with, kernel_of_action, BuildOptions};
pub use families::{abelian_groups_of_order, family_groups_of_order, is_witness_cofactor, semidirect_actions};
pub use finite::{Group, OrderProfile};
pub use spec::GroupSpec;
pub use table::{CayleyTable, TableError};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("malformed group spec {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("invalid semidirect action: {a} does not define an action of C{k} on C{m}")]
    InvalidAction { m: u64, k: u64, a: u64 },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("group would have more than {budget} elements")]
    BudgetExceeded { budget: usize },
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("element {element} has order {order}, which does not divide {group_order}")]
    Lagrange { element: usize, order: u64, group_order: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing {path}: {source}")]
    Json { path: String, source: serde_json::Error },
}
