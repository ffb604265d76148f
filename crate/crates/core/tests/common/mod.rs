//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use aparam_core::repcore::validate_parity;
use aparam_core::{AParam, ATerm, Duality, Parity, WeilSymbol};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sym(id: &str, dim: u32, duality: Duality) -> WeilSymbol {
    WeilSymbol::new(id, dim, duality, None)
}

/// Symbols for `gl` pairs: the trivial one, a non-selfdual character pair and
/// two selfdual symbols of higher dimension.
pub fn gl_symbols() -> Vec<WeilSymbol> {
    vec![
        WeilSymbol::trivial(),
        WeilSymbol::new("chi", 1, Duality::None, Some("chib")),
        WeilSymbol::new("chib", 1, Duality::None, Some("chi")),
        sym("sigma", 2, Duality::Symplectic),
        sym("omega", 2, Duality::Orthogonal),
    ]
}

/// Selfdual symbols for symplectic/orthogonal pairs.
pub fn classical_symbols() -> Vec<WeilSymbol> {
    vec![
        WeilSymbol::trivial(),
        sym("eta", 1, Duality::Orthogonal),
        sym("sigma", 2, Duality::Symplectic),
        sym("omega", 2, Duality::Orthogonal),
    ]
}

/// Composite sign of `weil ⊠ [d] ⊠ [a]`.
pub fn composite_sign(weil: &WeilSymbol, d: u32, a: u32) -> i8 {
    weil.duality.composite(d, a).sign().expect("selfdual symbol")
}

/// Options for [`block_pair`].
#[derive(Clone, Copy, Debug)]
pub struct BlockOptions {
    pub m_parity: Parity,
    pub max_labels: usize,
    pub max_blocks_per_label: usize,
    pub max_arthur: u32,
    pub max_deligne: u32,
    pub deligne_trivial: bool,
}

/// A relevant pair assembled from blocks `(ρ⊠[d]⊠[m], ρ⊠[d]⊠[n])` with
/// `|m − n| = 1`, dimension 0 meaning the summand is absent. Every such sum
/// is relevant, which is independent of the descent in `check_relevant`.
pub fn block_pair(r: &mut impl Rng, symbols: &[WeilSymbol], o: BlockOptions) -> (AParam, AParam) {
    let n_parity = match o.m_parity {
        Parity::Gl => Parity::Gl,
        p => p.opposite(),
    };
    let want = o.m_parity.sign();
    let n_labels = r.gen_range(1..=o.max_labels);
    let mut m_terms = Vec::new();
    let mut n_terms = Vec::new();
    for _ in 0..n_labels {
        let weil = symbols.choose(r).unwrap().clone();
        let d = if o.deligne_trivial { 1 } else { r.gen_range(1..=o.max_deligne) };
        for _ in 0..r.gen_range(1..=o.max_blocks_per_label) {
            // Arthur dims on the M side with the right composite sign; 0 is
            // allowed when the sign works out for an even dim.
            let candidates: Vec<u32> = (0..=o.max_arthur)
                .filter(|&m| match want {
                    None => true,
                    Some(s) => {
                        let parity_dim = if m == 0 { 2 } else { m };
                        composite_sign(&weil, d, parity_dim) == s
                    }
                })
                .collect();
            let Some(&m) = candidates.choose(r) else { continue };
            let n = if m == 0 || r.gen_bool(0.5) { m + 1 } else { m - 1 };
            if m > 0 {
                m_terms.push(ATerm::new(weil.clone(), d, m, 1));
            }
            if n > 0 {
                n_terms.push(ATerm::new(weil.clone(), d, n, 1));
            }
        }
    }
    (AParam::new(o.m_parity, m_terms).unwrap(), AParam::new(n_parity, n_terms).unwrap())
}

/// A parameter with independent random summands of the right parity.
pub fn random_param(
    r: &mut impl Rng,
    symbols: &[WeilSymbol],
    parity: Parity,
    max_terms: usize,
    max_arthur: u32,
    max_deligne: u32,
    max_mult: u32,
) -> AParam {
    let want = parity.sign();
    let mut terms = Vec::new();
    let count = r.gen_range(1..=max_terms);
    let mut tries = 0;
    while terms.len() < count && tries < 200 {
        tries += 1;
        let weil = symbols.choose(r).unwrap().clone();
        let d = r.gen_range(1..=max_deligne);
        let a = r.gen_range(1..=max_arthur);
        if let Some(s) = want {
            if composite_sign(&weil, d, a) != s {
                continue;
            }
        }
        terms.push(ATerm::new(weil, d, a, r.gen_range(1..=max_mult)));
    }
    let p = AParam::new(parity, terms).unwrap();
    assert!(validate_parity(&p).is_empty());
    p
}

/// Keeps the parameter only if its merged multiplicities stay within `cap`.
pub fn within_mult(p: &AParam, cap: u32) -> bool {
    p.terms().iter().all(|t| t.mult <= cap)
}

/// Adds trivial `1:D1:A1` summands to one side so that `dim M = dim N + 1`.
pub fn balance_for_branching(m: &AParam, n: &AParam) -> (AParam, AParam) {
    let one = |k: u64| {
        let terms = if k == 0 { vec![] } else { vec![ATerm::new(WeilSymbol::trivial(), 1, 1, k as u32)] };
        AParam::new(Parity::Gl, terms).unwrap()
    };
    let (dm, dn) = (m.dim(), n.dim());
    if dm < dn + 1 {
        (m.sum(&one(dn + 1 - dm)).unwrap(), n.clone())
    } else {
        (m.clone(), n.sum(&one(dm - dn - 1)).unwrap())
    }
}

/// Number of distinct `(symbol, Deligne dim)` labels in a pair.
pub fn label_count(m: &AParam, n: &AParam) -> usize {
    let mut labels: Vec<(String, u32)> =
        m.terms().iter().chain(n.terms()).map(|t| (t.weil.id.clone(), t.d_dim)).collect();
    labels.sort();
    labels.dedup();
    labels.len()
}
