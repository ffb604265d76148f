//! Shared fixtures for the benchmarks.

use aparam_core::repcore::parse_param;
use aparam_core::{AParam, ATerm, Duality, Parity, SymbolTable, WeilSymbol};

fn table() -> SymbolTable {
    SymbolTable::new([
        WeilSymbol::new("chi", 1, Duality::None, Some("chib")),
        WeilSymbol::new("chib", 1, Duality::None, Some("chi")),
        WeilSymbol::new("sigma", 2, Duality::Symplectic, None),
    ])
    .expect("fixture symbols are consistent")
}

pub fn param(text: &str, parity: Parity) -> AParam {
    parse_param(text, &table(), parity).expect("fixture parameters parse")
}

/// The symplectic/orthogonal pair with Deligne dims 3 and 5.
pub fn bessel_pair() -> (AParam, AParam) {
    (param("1:D3:A4 + 1:D5:A4", Parity::Symplectic), param("1:D3:A3 + 1:D5:A5", Parity::Orthogonal))
}

/// A relevant `gl` pair of dimension about `4k`, built from blocks `([a], [a+1])`.
pub fn gl_chain_pair(k: u32) -> (AParam, AParam) {
    let mut m = Vec::new();
    let mut n = Vec::new();
    for a in 1..=k {
        let weil =
            if a % 2 == 0 { WeilSymbol::trivial() } else { WeilSymbol::new("chi", 1, Duality::None, Some("chib")) };
        m.push(ATerm::new(weil.clone(), 1, a, 1));
        n.push(ATerm::new(weil, 1, a + 1, 1));
    }
    (AParam::new(Parity::Gl, m).expect("valid"), AParam::new(Parity::Gl, n).expect("valid"))
}

/// A `gl` branching instance `dim M = dim N + 1` satisfying both hypotheses.
pub fn branching_pair() -> (AParam, AParam) {
    (param("1:D1:A3 + chi:D2:A1 + chib:D1:A2", Parity::Gl), param("1:D1:A2 + chi:D2:A1 + chib:D1:A2", Parity::Gl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use aparam_core::glbranch::decide_gl_branching;
    use aparam_core::relevance::check_relevant;

    #[test]
    fn fixtures_are_usable() {
        for k in [1, 4, 16] {
            let (m, n) = gl_chain_pair(k);
            assert!(check_relevant(&m, &n).is_relevant());
        }
        let (m, n) = branching_pair();
        assert_eq!(m.dim(), n.dim() + 1);
        assert!(decide_gl_branching(&m, &n).unwrap().hom_nonzero().is_some());
    }
}
