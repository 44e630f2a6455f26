//! Character theory of finite class-2 groups: Heisenberg pairs, Lagrangians,
//! special pairs and Lagrangian induction.

pub mod abelian;
pub mod chars;
pub mod cyclo;
pub mod group;
pub mod heisenberg;
pub mod lind;
pub mod special;

pub use chars::{CharTable, ClassFn, Irr, LinChar};
pub use cyclo::CycloRing;
pub use group::{El, Group, GroupJson, Subgroup};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeisError {
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("subgroup {0} is not central")]
    NotCentral(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degenerate pairing: element {0} lies in the radical")]
    Degenerate(u32),
    #[error("character engine certificate failed: {0}")]
    Engine(String),
}
