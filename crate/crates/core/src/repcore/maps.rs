use serde::Serialize;

use crate::error::{Error, Result};
use crate::half::Half;
use crate::repcore::param::{AParam, ATerm, LParam, LTerm, Parity, Partition};
use crate::repcore::symbol::Duality;

/// Irreducible constituents of `[a] ⊗ [b]`: `[a+b−1], [a+b−3], …, [|a−b|+1]`.
pub fn clebsch_gordan(a: u32, b: u32) -> Vec<u32> {
    if a == 0 || b == 0 {
        return Vec::new();
    }
    let top = a + b - 1;
    (0..a.min(b)).map(|k| top - 2 * k).collect()
}

/// Constituents of `Sym²[a]`: `[2a−1], [2a−5], …`.
pub fn sym2_sl2(a: u32) -> Vec<u32> {
    if a == 0 {
        return Vec::new();
    }
    (0..).map(|k| 2 * a as i64 - 1 - 4 * k).take_while(|&c| c > 0).map(|c| c as u32).collect()
}

/// Constituents of `Λ²[a]`: `[2a−3], [2a−7], …`.
pub fn alt2_sl2(a: u32) -> Vec<u32> {
    if a == 0 {
        return Vec::new();
    }
    (0..).map(|k| 2 * a as i64 - 3 - 4 * k).take_while(|&c| c > 0).map(|c| c as u32).collect()
}

/// Restricts the Arthur `SL_2` along `w ↦ diag(|w|^{1/2}, |w|^{−1/2})`.
pub fn a_to_l(p: &AParam) -> LParam {
    LParam::new(p.terms().iter().flat_map(|t| {
        (0..t.a_dim).map(move |q| LTerm {
            weil: t.weil.clone(),
            d_dim: t.d_dim,
            twist: Half::from_twice(i64::from(t.a_dim) - 1 - 2 * i64::from(q)),
            mult: t.mult,
        })
    }))
}

/// Restricts to the diagonal `SL_2`: each `ρ ⊠ [a] ⊠ [b]` becomes
/// `Σ_k ρ ⊠ [a+b−1−2k] ⊠ [1]`.
pub fn delta_map(p: &AParam) -> AParam {
    p.map_terms(p.parity(), |t| {
        clebsch_gordan(t.d_dim, t.a_dim).into_iter().map(|c| ATerm::new(t.weil.clone(), c, 1, t.mult)).collect()
    })
}

/// Replaces every symbol by its contragredient.
pub fn dual_param(p: &AParam) -> AParam {
    p.map_terms(p.parity(), |t| vec![ATerm::new(t.weil.dual(), t.d_dim, t.a_dim, t.mult)])
}

/// A summand whose composite duality disagrees with the declared parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityViolation {
    pub term: String,
    pub found: Duality,
    pub expected: Duality,
}

/// Lists every summand violating the parity; empty means valid. A `gl`
/// parameter is always valid.
pub fn validate_parity(p: &AParam) -> Vec<ParityViolation> {
    let Some(expected) = p.parity().duality() else {
        return Vec::new();
    };
    p.terms()
        .iter()
        .filter(|t| t.composite_duality() != expected)
        .map(|t| ParityViolation { term: t.render(), found: t.composite_duality(), expected })
        .collect()
}

/// `(n_1, …, n_r) ↦ (n_1−1, …)` with zeros dropped and padded by 1's to total `n−1`.
pub fn venkatesh_partition(p: &Partition) -> Result<Partition> {
    let n = p.total();
    if n < 2 {
        return Err(Error::Precondition("partition of n ≥ 2 required".to_string()));
    }
    let mut parts: Vec<u32> = p.parts().iter().map(|&x| x - 1).filter(|&x| x > 0).collect();
    let current: u64 = parts.iter().map(|&x| u64::from(x)).sum();
    parts.extend(std::iter::repeat_n(1, (n - 1 - current) as usize));
    Partition::new(parts)
}

/// Exchanges the Deligne and Arthur factors of every term.
pub fn swap_sl2(p: &AParam) -> AParam {
    p.map_terms(p.parity(), |t| vec![ATerm::new(t.weil.clone(), t.a_dim, t.d_dim, t.mult)])
}

/// `[b] ↦ [b+1]` on every Arthur factor. The composite sign of each term
/// flips, so a classical parity becomes its opposite.
pub fn plus_map(p: &AParam) -> AParam {
    p.map_terms(p.parity().opposite(), |t| vec![ATerm::new(t.weil.clone(), t.d_dim, t.a_dim + 1, t.mult)])
}

/// Parity shared by two parameters, or an error naming both.
pub(crate) fn require_parity(p: &AParam, allowed: &[Parity], what: &str) -> Result<()> {
    if allowed.contains(&p.parity()) {
        Ok(())
    } else {
        Err(Error::ParityMismatch(format!("{what} has parity {}", p.parity())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::param::parse_param;
    use crate::repcore::symbol::{SymbolTable, WeilSymbol};

    fn table() -> SymbolTable {
        SymbolTable::new([
            WeilSymbol::new("rho", 1, Duality::Orthogonal, None),
            WeilSymbol::new("chi", 1, Duality::None, Some("chib")),
            WeilSymbol::new("chib", 1, Duality::None, Some("chi")),
        ])
        .unwrap()
    }

    fn gl(text: &str) -> AParam {
        parse_param(text, &table(), Parity::Gl).unwrap()
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan(1, 5), vec![5]);
        assert_eq!(clebsch_gordan(2, 3), vec![4, 2]);
        assert_eq!(clebsch_gordan(4, 4), vec![7, 5, 3, 1]);
    }

    #[test]
    fn clebsch_gordan_matches_weight_multiset() {
        // Oracle: the weights of [a] ⊗ [b] are sums of weights; peel off highest weights.
        for a in 1..=7u32 {
            for b in 1..=7u32 {
                let mut weights: Vec<i64> = Vec::new();
                for i in 0..a {
                    for j in 0..b {
                        weights.push((a as i64 - 1 - 2 * i as i64) + (b as i64 - 1 - 2 * j as i64));
                    }
                }
                let mut found = Vec::new();
                while let Some(&top) = weights.iter().max() {
                    found.push((top + 1) as u32);
                    for w in (-top..=top).step_by(2) {
                        let pos = weights.iter().position(|&x| x == w).unwrap();
                        weights.swap_remove(pos);
                    }
                }
                assert_eq!(clebsch_gordan(a, b), found, "[{a}] ⊗ [{b}]");
            }
        }
    }

    #[test]
    fn sym2_and_alt2_dimensions() {
        for a in 1..=9u32 {
            let s: u32 = sym2_sl2(a).iter().sum();
            let l: u32 = alt2_sl2(a).iter().sum();
            assert_eq!(s, a * (a + 1) / 2);
            assert_eq!(l, a * (a - 1) / 2);
        }
        assert_eq!(sym2_sl2(3), vec![5, 1]);
        assert_eq!(alt2_sl2(4), vec![5, 1]);
    }

    #[test]
    fn a_to_l_examples() {
        let l = a_to_l(&gl("1:D1:A2"));
        let twists: Vec<Half> = l.terms.iter().map(|t| t.twist).collect();
        assert_eq!(twists, vec![Half::from_twice(-1), Half::from_twice(1)]);
        let l = a_to_l(&gl("rho:D2:A1"));
        assert_eq!(l.terms.len(), 1);
        assert_eq!((l.terms[0].d_dim, l.terms[0].twist), (2, Half::ZERO));
        let l = a_to_l(&gl("1:D1:A3"));
        let twists: Vec<Half> = l.terms.iter().map(|t| t.twist).collect();
        assert_eq!(twists, vec![Half::from_int(-1), Half::ZERO, Half::from_int(1)]);
    }

    #[test]
    fn delta_map_examples() {
        assert_eq!(delta_map(&gl("rho:D2:A2")).render(), "rho:D1:A1 + rho:D3:A1");
        assert_eq!(delta_map(&gl("rho:D1:A1")).render(), "rho:D1:A1");
    }

    #[test]
    fn dual_swaps_symbols() {
        assert_eq!(dual_param(&gl("chi:D1:A1")).render(), "chib:D1:A1");
        let p = gl("rho:D2:A3 + 2*chi:D1:A2");
        assert_eq!(dual_param(&p).with_parity(Parity::Gl).render(), "2*chib:D1:A2 + rho:D2:A3");
        assert_eq!(dual_param(&dual_param(&p)), p);
    }

    #[test]
    fn parity_reports() {
        let t = table();
        let p = AParam::new(Parity::Symplectic, [ATerm::new(t.get("1").unwrap().clone(), 1, 2, 1)]).unwrap();
        assert!(validate_parity(&p).is_empty());
        let q = p.with_parity(Parity::Orthogonal);
        assert_eq!(validate_parity(&q).len(), 1);
        let n = parse_param("1:D3:A3 + 1:D5:A5", &t, Parity::Gl).unwrap().with_parity(Parity::Orthogonal);
        assert!(validate_parity(&n).is_empty());
    }

    #[test]
    fn venkatesh_examples() {
        let v = |parts: Vec<u32>| venkatesh_partition(&Partition::new(parts).unwrap()).unwrap();
        assert_eq!(v(vec![5]).parts(), &[4]);
        assert_eq!(v(vec![1, 1, 1, 1]).parts(), &[1, 1, 1]);
        assert_eq!(v(vec![3, 1]).parts(), &[2, 1]);
        assert!(venkatesh_partition(&Partition::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn plus_map_flips_parity() {
        let t = table();
        let p = parse_param("rho:D1:A1", &t, Parity::Orthogonal).unwrap();
        let q = plus_map(&p);
        assert_eq!(q.parity(), Parity::Symplectic);
        assert!(validate_parity(&q).is_empty());
        assert_eq!(q.render(), "rho:D1:A2");
    }
}
