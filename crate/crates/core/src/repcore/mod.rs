//! Symbols, A-parameters, parsing and the elementary structural maps.

mod maps;
mod param;
mod symbol;

pub(crate) use maps::require_parity;
pub use maps::{
    a_to_l, alt2_sl2, clebsch_gordan, delta_map, dual_param, plus_map, swap_sl2, sym2_sl2, validate_parity,
    venkatesh_partition, ParityViolation,
};
pub use param::{parse_param, AParam, ATerm, LParam, LTerm, Parity, Partition};
pub use symbol::{Duality, SymbolTable, WeilSymbol, TRIVIAL_ID};
