//! Normal invariants, PL/O groups and tangential structure sets of
//! `#_k CP^n`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::cohomotopy::pi_s0_connected_sum;
use crate::error::{out_of_range, Result};
use crate::fgab::FgAbGroup;
use crate::ktheory::ko_group;
use crate::labels::{Decoration, GeneratorLabel, Symbol};
use crate::tables::Tables;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Target {
    #[serde(rename = "F/O")]
    FOverO,
    #[serde(rename = "F/PL")]
    FOverPl,
    #[serde(rename = "SF")]
    Sf,
    #[serde(rename = "PL/O")]
    PlOverO,
    #[serde(rename = "BSO")]
    Bso,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FOverO => "F/O",
            Self::FOverPl => "F/PL",
            Self::Sf => "SF",
            Self::PlOverO => "PL/O",
            Self::Bso => "BSO",
        })
    }
}

/// `[#_k CP^n, target]` with the origin of its torsion and free parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalInvariantResult {
    pub k: u32,
    pub n: u32,
    pub target: Target,
    pub group: FgAbGroup,
    pub torsion_source: String,
    pub free_source: String,
    pub citations: Vec<String>,
}

impl fmt::Display for NormalInvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[#_{}CP^{}, {}] = {}", self.k, self.n, self.target, self.group)
    }
}

fn positive(what: &'static str, v: i64, min: i64, range: &'static str) -> Result<u32> {
    if v < min {
        return Err(out_of_range(what, v, range));
    }
    Ok(v as u32)
}

/// Free rank of `[#_k CP^n, F/O]`: `k*floor(n/2)` for odd `n`,
/// `k*floor((n-1)/2) + 1` for even `n`.
pub fn f_over_o_rank(k: u32, n: u32) -> usize {
    let (k, n) = (k as usize, n as usize);
    if n % 2 == 1 {
        k * (n / 2)
    } else {
        k * ((n - 1) / 2) + 1
    }
}

/// `[#_k CP^n, F/O] = pi_s^0(#_k CP^n) + Z^r`, the free part being the
/// kernel of `f_*: [-, BSO] -> [-, BSF]`.
pub fn f_over_o(tables: &Tables, k: i64, n: i64) -> Result<NormalInvariantResult> {
    let k = positive("k", k, 1, "k >= 1")?;
    if n == 8 {
        pi_s0_connected_sum(tables, i64::from(k), 8)?.require_unique()?;
    }
    if !(3..=7).contains(&n) {
        return Err(out_of_range("n", n, "3..=7"));
    }
    let n = n as u32;
    let cohomotopy = pi_s0_connected_sum(tables, i64::from(k), i64::from(n))?;
    let torsion = cohomotopy.require_unique()?.clone();
    let rank = f_over_o_rank(k, n);
    let mut citations = cohomotopy.citations.clone();
    citations.push("F/O splits as SF times the kernel of f_*, which is torsion free".into());
    Ok(NormalInvariantResult {
        k,
        n,
        target: Target::FOverO,
        group: torsion.direct_sum(&FgAbGroup::free(rank)),
        torsion_source: format!("pi_s^0(#_{k}CP^{n}) = {torsion}"),
        free_source: format!("kernel of f_* on KO^0, rank {rank}"),
        citations,
    })
}

/// Rank of the kernel of `f_*`, read off as the free rank of
/// `KO^0(#_k CP^n)`.
pub fn kernel_f_star_rank(k: i64, n: i64) -> Result<usize> {
    Ok(ko_group(0, k, n)?.group.free_rank())
}

/// `[CP^m, F/PL]` as the product of `L_{2j}` for `2 <= j <= m`.
pub fn f_over_pl_single(tables: &Tables, m: u32) -> Result<FgAbGroup> {
    let mut g = FgAbGroup::zero();
    for j in 2..=i64::from(m) {
        g = g.direct_sum(&tables.wall_group(2 * j)?);
    }
    Ok(g)
}

/// `[#_k CP^n, F/PL]` from the cofiber sequence: the top copy plus `k - 1`
/// copies of `CP^(n-1)`. Used to cross-check [`f_over_pl`].
pub fn f_over_pl_from_cells(tables: &Tables, k: i64, n: i64) -> Result<FgAbGroup> {
    let k = positive("k", k, 1, "k >= 1")?;
    let n = positive("n", n, 1, "n >= 1")?;
    Ok(f_over_pl_single(tables, n)?.direct_sum(&f_over_pl_single(tables, n - 1)?.multiple(k as usize - 1)))
}

/// `[#_k CP^n, F/PL]`: `Z^{k[(n-1)/2]+1} + Z_2^{k[(n-1)/2]}` for even `n`,
/// `Z^{k[n/2]} + Z_2^{k([n/2]-1)+1}` for odd `n >= 3`. For `n = 1` the
/// connected sum is `S^2`, and the product convention above gives `0`.
pub fn f_over_pl(k: i64, n: i64) -> Result<NormalInvariantResult> {
    let k = positive("k", k, 1, "k >= 1")?;
    let n = positive("n", n, 1, "n >= 1")?;
    let (ku, nu) = (k as usize, n as usize);
    let (free, twos) = match n {
        1 => (0, 0),
        _ if n % 2 == 0 => (ku * ((nu - 1) / 2) + 1, ku * ((nu - 1) / 2)),
        _ => (ku * (nu / 2), ku * (nu / 2 - 1) + 1),
    };
    Ok(NormalInvariantResult {
        k,
        n,
        target: Target::FOverPl,
        group: FgAbGroup::free(free).direct_sum(&FgAbGroup::elementary(2, twos)),
        torsion_source: format!("Z_2 summands from L_(4j+2), {twos} in all"),
        free_source: format!("Z summands from L_(4j), {free} in all"),
        citations: vec![
            "Sullivan: [CP^m, F/PL] is the product of L_(2j) for 2 <= j <= m".into(),
            "cofiber sequence of the connected sum".into(),
        ],
    })
}

/// `[#_k CP^n, PL/O]` for `3 <= n <= 7`: the tabulated group for one copy
/// plus one increment per further summand.
pub fn pl_over_o(tables: &Tables, k: i64, n: i64) -> Result<NormalInvariantResult> {
    let k = positive("k", k, 1, "k >= 1")?;
    let (base, step) = tables.pl_over_o_parts(n)?;
    let group = base.group.direct_sum(&step.group.multiple(k as usize - 1));
    let mut citations = vec![base.citation.clone()];
    if step.citation != base.citation {
        citations.push(step.citation.clone());
    }
    Ok(NormalInvariantResult {
        k,
        n: n as u32,
        target: Target::PlOverO,
        group,
        torsion_source: format!("{} for one copy, {} for each further copy", base.group, step.group),
        free_source: "none".into(),
        citations,
    })
}

/// Behaviour of the surgery obstruction on tangential normal invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Obstruction {
    Zero,
    /// Nonzero; the kernel has the given index.
    Nonzero { image_index: u64 },
    /// Nonzero and additive.
    NonzeroHomomorphism { image_index: u64 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => write!(f, "s = 0, eta is onto"),
            Self::Nonzero { image_index } => {
                write!(f, "s != 0, image of eta has index {image_index}")
            }
            Self::NonzeroHomomorphism { image_index } => write!(
                f,
                "s is a nonzero homomorphism, image of eta has index {image_index}"
            ),
        }
    }
}

fn serialize_count<S: Serializer>(c: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match c {
        None => s.serialize_none(),
        Some(v) => match v.to_u64() {
            Some(x) => s.serialize_u64(x),
            None => s.serialize_str(&v.to_string()),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureSetResult {
    pub k: u32,
    pub n: u32,
    /// Tangential normal invariants `[#_k CP^n, SF]`.
    pub normal_invariants: FgAbGroup,
    /// Smooth tangential structure set, identified with the image of `eta`.
    pub image_of_eta: FgAbGroup,
    /// 2-primary part of the image of `eta`.
    pub image_of_eta_2local: FgAbGroup,
    /// Concordance classes of smoothings, `[#_k CP^n, PL/O]`.
    pub pl_group: FgAbGroup,
    pub obstruction: Obstruction,
    /// `|image of eta| / |PL/O|`, when that is an integer.
    #[serde(serialize_with = "serialize_count")]
    pub index: Option<BigUint>,
    /// Tangentially homotopy equivalent manifolds not homeomorphic to
    /// `#_k CP^n`, as published; `None` outside the range where the count
    /// applies.
    #[serde(serialize_with = "serialize_count")]
    pub exotic_count: Option<BigUint>,
    /// The count recomputed from the group orders: the index for `n = 4, 5`,
    /// zero for `n = 3, 6, 7` when the index is 1.
    #[serde(serialize_with = "serialize_count")]
    pub derived_count: Option<BigUint>,
    pub derivation: String,
    pub citations: Vec<String>,
}

/// Published counts: `0` for `n = 3, 6, 7`, `2^k` for `n = 4`, `2^(k-2)` for
/// `n = 5` and `k >= 2`.
pub fn recorded_exotic_count(k: u32, n: u32) -> Option<BigUint> {
    match n {
        3 | 6 | 7 => Some(BigUint::zero()),
        4 => Some(BigUint::one() << k as usize),
        5 if k >= 2 => Some(BigUint::one() << (k as usize - 2)),
        _ => None,
    }
}

/// Structure set of `#_k CP^n` for `3 <= n <= 7`.
///
/// `L_(2n+1) = 0` makes `eta` injective, so the structure set is its image.
/// Smoothings of the underlying PL manifold form the subgroup `PL/O`. The
/// published count is reported; alongside it the count is recomputed as the
/// index of `PL/O` for `n = 4, 5`, and as zero for `n = 3, 6, 7` when `PL/O`
/// is everything.
pub fn structure_set(tables: &Tables, k: i64, n: i64) -> Result<StructureSetResult> {
    let k = positive("k", k, 1, "k >= 1")?;
    if !(3..=7).contains(&n) {
        return Err(out_of_range("n", n, "3..=7"));
    }
    let n = n as u32;
    let (ki, ni) = (i64::from(k), i64::from(n));
    let cohomotopy = pi_s0_connected_sum(tables, ki, ni)?;
    let normal = cohomotopy.require_unique()?.clone();
    let pl = pl_over_o(tables, ki, ni)?;
    let odd = normal.localize_at_prime(3)?;
    let (image, obstruction_kind) = match n {
        3 | 4 | 6 => (normal.clone(), 0),
        5 => (FgAbGroup::elementary(2, 2 * k as usize - 1).direct_sum(&odd), 1),
        _ => (pl.group.clone(), 2),
    };
    let image_index = (normal.torsion_order() / image.torsion_order())
        .try_into()
        .expect("index divides |L_2n|");
    let obstruction = match obstruction_kind {
        0 => Obstruction::Zero,
        1 => Obstruction::Nonzero { image_index },
        _ => Obstruction::NonzeroHomomorphism { image_index },
    };
    let (q, r) = image.torsion_order().div_rem(&pl.group.torsion_order());
    let index = r.is_zero().then_some(q);
    let derived_count = match (n, &index) {
        (4 | 5, Some(i)) => Some(i.clone()),
        (3 | 6 | 7, Some(i)) if i.is_one() => Some(BigUint::zero()),
        _ => None,
    };
    let derivation = format!(
        "index |{image}| / |{}| = {}",
        pl.group,
        index.as_ref().map_or("not an integer".to_string(), ToString::to_string)
    );
    let mut citations = cohomotopy.citations.clone();
    citations.extend(pl.citations.iter().cloned());
    citations.push("Wall groups of the trivial group: Z, 0, Z_2, 0".into());
    Ok(StructureSetResult {
        k,
        n,
        image_of_eta_2local: image.localize_at_prime(2)?,
        normal_invariants: normal,
        image_of_eta: image,
        pl_group: pl.group,
        obstruction,
        index,
        exotic_count: recorded_exotic_count(k, n),
        derived_count,
        derivation,
        citations,
    })
}

/// A generator of the image of `c_*` with its expansion in powers of
/// `etabar`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiGenerator {
    pub label: GeneratorLabel,
    /// `(power, coefficient)` pairs.
    pub terms: Vec<(u32, i64)>,
}

impl fmt::Display for XiGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|&(j, c)| match j {
                1 => format!("{c}*etabar"),
                _ => format!("{c}*etabar^{j}"),
            })
            .collect();
        let sum = terms.join(" + ");
        match self.label.decoration {
            Decoration::QStar => write!(f, "{} = q*({sum})", self.label),
            _ => write!(f, "{} = {sum}", self.label),
        }
    }
}

/// Expansion of `xi_i`, `1 <= i <= 3`.
pub fn xi_terms(i: u8) -> Option<&'static [(u32, i64)]> {
    match i {
        1 => Some(&[(1, 24), (2, 98), (3, 111)]),
        2 => Some(&[(2, 240), (3, 380)]),
        3 => Some(&[(3, 504)]),
        _ => None,
    }
}

/// Generators of the image of `c_*: [#_k CP^n, BSO] -> [#_k CP^n, BSU]`
/// for `n <= 7`: `xi_1, xi_2, xi_3`, and their pullbacks `q^*(xi_i)` when
/// `k >= 2`.
pub fn image_c_star_generators(k: i64, n: i64) -> Result<Vec<XiGenerator>> {
    let k = positive("k", k, 1, "k >= 1")?;
    if !(1..=7).contains(&n) {
        return Err(out_of_range("n", n, "1..=7"));
    }
    let decorations: &[Decoration] = if k >= 2 {
        &[Decoration::None, Decoration::QStar]
    } else {
        &[Decoration::None]
    };
    let mut out = Vec::new();
    for &d in decorations {
        for i in 1..=3u8 {
            out.push(XiGenerator {
                label: GeneratorLabel::new(Symbol::Xi { index: i }).decorated(d),
                terms: xi_terms(i).expect("1..=3").to_vec(),
            });
        }
    }
    Ok(out)
}

/// `L_(2n+1) -> S^t(#_k CP^n) -> N^t(#_k CP^n) -> L_(2n)` with the groups
/// filled in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryReport {
    pub k: u32,
    pub n: u32,
    pub l_odd: FgAbGroup,
    pub structure_set: FgAbGroup,
    pub normal_invariants: FgAbGroup,
    pub l_even: FgAbGroup,
    pub eta_injective: bool,
    pub obstruction: Obstruction,
    pub citations: Vec<String>,
}

pub fn surgery_sequence_report(tables: &Tables, k: i64, n: i64) -> Result<SurgeryReport> {
    let s = structure_set(tables, k, n)?;
    let l_odd = tables.wall_group(2 * n + 1)?;
    Ok(SurgeryReport {
        k: s.k,
        n: s.n,
        eta_injective: l_odd.is_trivial(),
        l_odd,
        structure_set: s.image_of_eta,
        normal_invariants: s.normal_invariants,
        l_even: tables.wall_group(2 * n)?,
        obstruction: s.obstruction,
        citations: s.citations,
    })
}

impl fmt::Display for SurgeryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, k) = (self.n, self.k);
        writeln!(
            f,
            "L_{} = {} -> S^t(#_{k}CP^{n}) = {} -> N^t(#_{k}CP^{n}) = {} -> L_{} = {}",
            2 * n + 1,
            self.l_odd,
            self.structure_set,
            self.normal_invariants,
            2 * n,
            self.l_even
        )?;
        if self.eta_injective {
            writeln!(f, "eta is injective since L_{} = 0", 2 * n + 1)?;
        }
        write!(f, "{}", self.obstruction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn f_over_o_examples() {
        let t = Tables::builtin();
        assert_eq!(f_over_o(t, 2, 5).unwrap().group, g("Z^4 + Z_2^4 + Z_3"));
        assert_eq!(f_over_o(t, 1, 4).unwrap().group, g("Z^2 + Z_2^2"));
        assert_eq!(f_over_o(t, 3, 3).unwrap().group, g("Z^3 + Z_2"));
        assert!(matches!(
            f_over_o(t, 2, 8),
            Err(crate::Error::AmbiguousUpstream(_))
        ));
        assert!(f_over_o(t, 2, 9).is_err());
    }

    #[test]
    fn kernel_ranks() {
        assert_eq!(kernel_f_star_rank(2, 5).unwrap(), 4);
        assert_eq!(kernel_f_star_rank(2, 6).unwrap(), 5);
        assert_eq!(kernel_f_star_rank(3, 4).unwrap(), 4);
    }

    #[test]
    fn f_over_pl_examples() {
        let t = Tables::builtin();
        for k in 1..8 {
            assert_eq!(
                f_over_pl(k, 5).unwrap().group,
                FgAbGroup::free(2 * k as usize).direct_sum(&FgAbGroup::elementary(2, k as usize + 1))
            );
        }
        assert_eq!(f_over_pl(1, 4).unwrap().group, g("Z^2 + Z_2"));
        assert_eq!(f_over_pl(3, 7).unwrap().group, g("Z^9 + Z_2^7"));
        for k in 1..6 {
            for n in 1..12 {
                assert_eq!(
                    f_over_pl(k, n).unwrap().group,
                    f_over_pl_from_cells(t, k, n).unwrap(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn pl_over_o_examples() {
        let t = Tables::builtin();
        assert_eq!(pl_over_o(t, 4, 5).unwrap().group, g("Z_2^5 + Z_3"));
        let six = pl_over_o(t, 3, 6).unwrap().group;
        assert_eq!(six, pi_s0_connected_sum(t, 3, 6).unwrap().unique().cloned().unwrap());
        assert!(pl_over_o(t, 2, 8).is_err());
    }

    #[test]
    fn structure_sets() {
        let t = Tables::builtin();
        let s = structure_set(t, 2, 4).unwrap();
        assert_eq!(s.image_of_eta, g("Z_2^3"));
        assert_eq!(s.exotic_count, Some(4u32.into()));
        let s = structure_set(t, 3, 5).unwrap();
        assert_eq!(s.image_of_eta_2local, g("Z_2^5"));
        assert_eq!(s.exotic_count, Some(2u32.into()));
        assert_eq!(s.obstruction, Obstruction::Nonzero { image_index: 2 });
        assert_eq!(structure_set(t, 5, 6).unwrap().exotic_count, Some(0u32.into()));
        assert_eq!(structure_set(t, 1, 5).unwrap().exotic_count, None);
        let s = structure_set(t, 2, 5).unwrap();
        assert_eq!(s.index, Some(1u32.into()));
        assert_eq!(s.exotic_count, Some(1u32.into()));
        assert_eq!(s.derived_count, s.exotic_count);
    }

    #[test]
    fn xi_generators() {
        assert_eq!(image_c_star_generators(1, 7).unwrap().len(), 3);
        let six = image_c_star_generators(2, 7).unwrap();
        assert_eq!(six.len(), 6);
        assert_eq!(six[5].to_string(), "q*(xi_3) = q*(504*etabar^3)");
        assert_eq!(
            six[0].to_string(),
            "xi_1 = 24*etabar + 98*etabar^2 + 111*etabar^3"
        );
        assert!(image_c_star_generators(1, 8).is_err());
    }

    #[test]
    fn reports() {
        let t = Tables::builtin();
        let r = surgery_sequence_report(t, 2, 4).unwrap();
        assert!(r.eta_injective);
        assert_eq!(r.obstruction, Obstruction::Zero);
        let r = surgery_sequence_report(t, 2, 7).unwrap();
        assert_eq!(r.obstruction, Obstruction::NonzeroHomomorphism { image_index: 2 });
        assert!(r.to_string().starts_with("L_15 = 0 -> S^t(#_2CP^7)"));
    }
}
