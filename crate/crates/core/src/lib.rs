//! Exact symbolic calculus for pairs of Arthur parameters: relevance,
//! L-function pole orders, sign characters and GL branching.
//!
//! Weil-group representations are inert symbols; only their dimension,
//! duality type and contragredient are used.

pub mod chars;
pub mod enumerate;
pub mod error;
pub mod glbranch;
pub mod globlfun;
pub mod half;
pub mod io;
pub mod lfun;
pub mod relevance;
pub mod repcore;

pub use error::{Error, Result};
pub use half::Half;
pub use repcore::{AParam, ATerm, Duality, Parity, SymbolTable, WeilSymbol};
