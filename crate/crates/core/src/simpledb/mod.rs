//! Exact orders of finite simple groups, the transcribed torus tables, and
//! the embedded permutation-group corpus.

mod corpus;
pub mod expr;
mod group_id;
mod tables;

use thiserror::Error;

pub use corpus::{corpus, corpus_entry, CorpusEntry};
pub use expr::{Expr, PrimePowers};
pub use group_id::{is_prime_power, order_factored, order_of, LieFamily, SimpleGroupId, Sporadic};
pub use tables::{
    instantiate_rows, sporadic_rows, LieInstance, LieTableRow, ParamBounds, ParamKind,
    SporadicRow, SporadicTorus, Tables, TorusVariant, TABLES_TOML,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DbError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("unknown corpus entry {0:?}")]
    UnknownEntry(String),
}
