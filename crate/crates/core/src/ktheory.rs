//! Complex and real K-groups of `#_k CP^n` with symbolic bases.
//!
//! Real K-groups come from a case table indexed by `s` and `n mod 4`,
//! evaluated at `n = 4m + r`. The basis of each group is assembled from the
//! single-copy bases: `q^*` of the basis of `CP^n` (on the last summand) and
//! one copy of the basis of `CP^(n-1)` for each of the other `k - 1`
//! summands.

use std::fmt;

use serde::Serialize;

use crate::error::{out_of_range, Result};
use crate::fgab::FgAbGroup;
use crate::labels::{Decoration, GeneratorLabel, Symbol};
use crate::tables::Tables;

pub const FUJII: &str = "Fujii (1967), KO-groups of projective spaces";
const SPLIT: &str = "split cofiber sequence of the connected sum: KO of CP^n plus k-1 copies of KO of CP^(n-1)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KResult {
    pub k: u32,
    pub n: u32,
    /// Degree `s` of `K^{-s}` or `KO^{-s}`.
    pub s: u8,
    pub group: FgAbGroup,
    pub basis: Vec<GeneratorLabel>,
    pub citations: Vec<String>,
}

impl KResult {
    pub fn basis_names(&self) -> Vec<String> {
        self.basis.iter().map(ToString::to_string).collect()
    }

    pub fn relations(&self) -> Vec<String> {
        self.basis.iter().filter_map(GeneratorLabel::relation_text).collect()
    }
}

impl fmt::Display for KResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)?;
        if !self.basis.is_empty() {
            write!(f, "\nbasis: {}", self.basis_names().join(", "))?;
        }
        let rel = self.relations();
        if !rel.is_empty() {
            write!(f, "\nrelations: {}", rel.join("; "))?;
        }
        Ok(())
    }
}

fn label(symbol: Symbol, power: u32) -> GeneratorLabel {
    GeneratorLabel::new(symbol).power(power)
}

/// Basis of `KO^{-s}(CP^n)` for a single copy, in canonical order (free
/// generators first, torsion last).
pub fn single_cp_ko_basis(s: u8, n: u32) -> Vec<GeneratorLabel> {
    let r = n % 4;
    let half_down = n / 2;
    let half_up = n.div_ceil(2);
    let mut out = Vec::new();
    match s {
        0 => {
            out.extend((1..=half_down).map(|j| label(Symbol::Eta, j)));
            if r == 1 {
                out.push(label(Symbol::Eta, half_down + 1).torsion(2));
            }
        }
        2 if r == 3 => {
            let top = (n - 1) / 2;
            out.extend((0..top).map(|j| label(Symbol::AlphaEta, j)));
            out.push(GeneratorLabel::new(Symbol::Sigma).multiple_of(2, label(Symbol::AlphaEta, top)));
        }
        2 => out.extend((0..half_up).map(|j| label(Symbol::AlphaEta, j))),
        3 if r == 3 => out.push(GeneratorLabel::new(Symbol::X).torsion(2)),
        4 => {
            out.extend((0..half_down).map(|j| label(Symbol::BetaEta, j)));
            if r == 3 {
                out.push(label(Symbol::BetaEta, half_down).torsion(2));
            }
        }
        6 if r == 1 => {
            let top = (n - 1) / 2;
            out.extend((0..top).map(|j| label(Symbol::GammaEta, j)));
            out.push(GeneratorLabel::new(Symbol::Tau).multiple_of(2, label(Symbol::GammaEta, top)));
        }
        6 => out.extend((0..half_up).map(|j| label(Symbol::GammaEta, j))),
        7 if r == 1 => out.push(GeneratorLabel::new(Symbol::X).torsion(2)),
        _ => {}
    }
    out
}

/// Basis of `KO^{-s}(#_k CP^n)`: `q^*` of the `CP^n` basis on summand `k`,
/// then the `CP^(n-1)` basis on each summand `1..k-1`.
pub fn connected_sum_ko_basis(s: u8, k: u32, n: u32) -> Vec<GeneratorLabel> {
    let top: Vec<GeneratorLabel> = single_cp_ko_basis(s, n)
        .iter()
        .map(|g| g.transported(Some(k), Decoration::QStar))
        .collect();
    let lower = single_cp_ko_basis(s, n - 1);
    let mut free = Vec::new();
    let mut torsion = Vec::new();
    let copies = (1..k).flat_map(|i| lower.iter().map(move |g| g.transported(Some(i), Decoration::None)));
    for g in top.into_iter().chain(copies) {
        if g.torsion_order().is_some() {
            torsion.push(g);
        } else {
            free.push(g);
        }
    }
    free.extend(torsion);
    free
}

/// Group spanned by a basis: free generators plus one cyclic summand per
/// torsion relation.
pub fn group_from_basis(basis: &[GeneratorLabel]) -> FgAbGroup {
    let free = basis.iter().filter(|g| g.torsion_order().is_none()).count();
    FgAbGroup::from_cyclic_orders(free, basis.iter().filter_map(|g| g.torsion_order()).map(Into::into))
}

/// Free rank and number of `Z_2` summands of `KO^{-s}(#_k CP^n)`, read off
/// the case table at `n = 4m + r`.
pub fn ko_case(s: u8, k: u32, n: u32) -> (u64, u64) {
    let (k, m) = (u64::from(k), u64::from(n / 4));
    match (s, n % 4) {
        (0, 0) => (2 * m + (k - 1) * (2 * m - 1), 0),
        (0, 1) => (2 * k * m, 1),
        (0, 2) => (2 * k * m + 1, k - 1),
        (0, 3) => (k * (2 * m + 1), 0),
        (2 | 6, 0) => (2 * k * m, 0),
        (2 | 6, 1) => (2 * m + 1 + (k - 1) * 2 * m, 0),
        (2 | 6, 2) => (k * (2 * m + 1), 0),
        (2 | 6, 3) => (2 * m + 2 + (k - 1) * (2 * m + 1), 0),
        (3, 0) => (0, k - 1),
        (3, 3) => (0, 1),
        (4, 0) => (2 * m + (k - 1) * (2 * m - 1), k - 1),
        (4, 1) => (2 * k * m, 0),
        (4, 2) => (2 * m + 1 + (k - 1) * 2 * m, 0),
        (4, 3) => (2 * m + 1 + (k - 1) * (2 * m + 1), 1),
        (7, 1) => (0, 1),
        (7, 2) => (0, k - 1),
        _ => (0, 0),
    }
}

fn case_group(s: u8, k: u32, n: u32) -> FgAbGroup {
    let (free, twos) = ko_case(s, k, n);
    FgAbGroup::from_cyclic_orders(free as usize, (0..twos).map(|_| 2u32.into()))
}

/// `KO^{-s}(#_k CP^n)` for `0 <= s <= 7`, `k >= 2`, `n >= 2`.
pub fn ko_group(s: i64, k: i64, n: i64) -> Result<KResult> {
    if !(0..=7).contains(&s) {
        return Err(out_of_range("s", s, "0..=7"));
    }
    if k < 2 {
        return Err(out_of_range("k", k, "k >= 2"));
    }
    if n < 2 {
        return Err(out_of_range("n", n, "n >= 2"));
    }
    let (s, k, n) = (s as u8, k as u32, n as u32);
    Ok(KResult {
        k,
        n,
        s,
        group: case_group(s, k, n),
        basis: connected_sum_ko_basis(s, k, n),
        citations: vec![FUJII.to_string(), SPLIT.to_string()],
    })
}

/// `K~^0(#_k CP^n)`: free on `d^*(omega)` and `eta_i^j`, `1 <= j <= n-1`.
pub fn complex_k0(k: i64, n: i64) -> Result<KResult> {
    if k < 1 {
        return Err(out_of_range("k", k, "k >= 1"));
    }
    if n < 1 {
        return Err(out_of_range("n", n, "n >= 1"));
    }
    let (k, n) = (k as u32, n as u32);
    let mut basis = vec![GeneratorLabel::new(Symbol::Omega).decorated(Decoration::DStar)];
    for i in 1..=k {
        basis.extend((1..n).map(|j| label(Symbol::Eta, j).copy(i)));
    }
    Ok(KResult {
        k,
        n,
        s: 0,
        group: FgAbGroup::free(basis.len()),
        basis,
        citations: vec![
            "split sequence from the top cell: K of S^2n plus k copies of K of CP^(n-1)".into(),
        ],
    })
}

/// `K~^{-1}(#_k CP^n) = 0`.
pub fn complex_k_minus1(k: i64, n: i64) -> Result<KResult> {
    if k < 1 {
        return Err(out_of_range("k", k, "k >= 1"));
    }
    if n < 1 {
        return Err(out_of_range("n", n, "n >= 1"));
    }
    Ok(KResult {
        k: k as u32,
        n: n as u32,
        s: 1,
        group: FgAbGroup::zero(),
        basis: Vec::new(),
        citations: vec!["odd complex K-groups of spheres and CP^(n-1) vanish".into()],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub s: u8,
    pub k: u32,
    pub n: u32,
    pub group: FgAbGroup,
    /// `KO^{-s}(CP^n)`, whose image is a subgroup of `group`.
    pub from_top: FgAbGroup,
    /// `k-1` copies of `KO^{-s}(CP^(n-1))`, containing the quotient.
    pub into_lower: FgAbGroup,
    pub violated: Option<String>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.violated.is_none()
    }
}

impl fmt::Display for SandwichReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "KO^-{}(#_{}CP^{}) = {} between {} and {}: ",
            self.s, self.k, self.n, self.group, self.from_top, self.into_lower
        )?;
        match &self.violated {
            None => write!(f, "pass"),
            Some(c) => write!(f, "FAIL ({c})"),
        }
    }
}

/// Checks `ko_group(s, k, n)` against the exact sequence
/// `KO^{-s}(CP^n) -> KO^{-s}(#_k CP^n) -> (+)_{k-1} KO^{-s}(CP^(n-1))`: the
/// group is an extension of a subgroup of the right end by a quotient of the
/// left end. Only counting consequences are checked.
pub fn verify_sandwich(tables: &Tables, s: i64, k: i64, n: i64) -> Result<SandwichReport> {
    let g = ko_group(s, k, n)?;
    let top = tables.ko_single_cp(s, n)?.group;
    let lower = tables.ko_single_cp(s, n - 1)?.group.multiple((k - 1) as usize);
    let mut violated = None;
    let mut fail = |c: String| {
        if violated.is_none() {
            violated = Some(c);
        }
    };
    if g.group.free_rank() > top.free_rank() + lower.free_rank() {
        fail(format!(
            "free-rank bound: {} > {} + {}",
            g.group.free_rank(),
            top.free_rank(),
            lower.free_rank()
        ));
    }
    for p in g.group.torsion_primes() {
        let (a, b, c) = (g.group.rank_mod_p(p), top.rank_mod_p(p), lower.rank_mod_p(p));
        if a > b + c {
            fail(format!("{p}-rank bound: {a} > {b} + {c}"));
        }
    }
    if let Some(top_order) = top.order() {
        let bound = top_order * lower.torsion_order();
        if g.group.torsion_order() > bound {
            fail(format!(
                "torsion-order bound: {} > {bound}",
                g.group.torsion_order()
            ));
        }
    }
    Ok(SandwichReport {
        s: s as u8,
        k: k as u32,
        n: n as u32,
        group: g.group,
        from_top: top,
        into_lower: lower,
        violated,
    })
}
