//! Middle terms of short exact sequences `0 -> A -> G -> B -> 0` of finitely
//! generated abelian groups, up to isomorphism of `G`.

pub mod oracle;
pub mod partitions;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
pub use oracle::{brute_force_middle_terms, ORACLE_LIMIT};
use partitions::{lr_positive, partitions_above, size, subpartitions, Partition};

/// `0 -> sub -> middle -> quot -> 0`, with the middle term optionally known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortExactSequence {
    pub sub: FgAbGroup,
    pub quot: FgAbGroup,
    pub middle: Option<FgAbGroup>,
    pub provenance: String,
}

impl ShortExactSequence {
    pub fn new(sub: FgAbGroup, quot: FgAbGroup, provenance: impl Into<String>) -> Self {
        Self {
            sub,
            quot,
            middle: None,
            provenance: provenance.into(),
        }
    }

    /// Attaches a middle term after checking that it fits.
    pub fn with_middle(mut self, middle: FgAbGroup) -> Result<Self> {
        if !admits_middle(&self.sub, &self.quot, &middle)? {
            return Err(Error::InvalidGroup(format!(
                "{middle} is not an extension of {} by {}",
                self.quot, self.sub
            )));
        }
        self.middle = Some(middle);
        Ok(self)
    }
}

/// Whether `0 -> a -> g -> b -> 0` is exact for some maps. Small finite cases
/// go through the brute-force search, the rest through [`middle_candidates`].
pub fn admits_middle(a: &FgAbGroup, b: &FgAbGroup, g: &FgAbGroup) -> Result<bool> {
    let small = match (a.order(), b.order()) {
        (Some(x), Some(y)) => (x * y).to_u64().is_some_and(|n| n <= ORACLE_LIMIT),
        _ => false,
    };
    if small {
        Ok(brute_force_middle_terms(a, b)?.contains(g))
    } else {
        Ok(middle_candidates(a, b).contains(g))
    }
}

/// A decidable property used to discard candidate middle terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SplittingFilter {
    NoElementOfOrder { n: u64 },
    LocalizationEquals { p: u64, group: FgAbGroup },
    TorsionEquals { group: FgAbGroup },
    FreeRankEquals { rank: usize },
}

impl SplittingFilter {
    pub fn accepts(&self, g: &FgAbGroup) -> bool {
        match self {
            Self::NoElementOfOrder { n } => !g.has_element_of_order(*n),
            Self::LocalizationEquals { p, group } => {
                g.localize_at_prime(*p).is_ok_and(|l| l == *group)
            }
            Self::TorsionEquals { group } => g.torsion() == *group,
            Self::FreeRankEquals { rank } => g.free_rank() == *rank,
        }
    }
}

impl fmt::Display for SplittingFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoElementOfOrder { n } => write!(f, "no element of order {n}"),
            Self::LocalizationEquals { p, group } => {
                write!(f, "localization at {p} is {group}")
            }
            Self::TorsionEquals { group } => write!(f, "torsion subgroup is {group}"),
            Self::FreeRankEquals { rank } => write!(f, "free rank is {rank}"),
        }
    }
}

/// Several middle terms survive; the caller must not pick one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguousResult {
    pub candidates: Vec<FgAbGroup>,
}

impl fmt::Display for AmbiguousResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.candidates.iter().map(ToString::to_string).collect();
        write!(f, "one of {{{}}}", names.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolution {
    Unique(FgAbGroup),
    Ambiguous(AmbiguousResult),
}

impl Resolution {
    pub fn unique(&self) -> Option<&FgAbGroup> {
        match self {
            Self::Unique(g) => Some(g),
            Self::Ambiguous(_) => None,
        }
    }

    pub fn candidates(&self) -> Vec<FgAbGroup> {
        match self {
            Self::Unique(g) => vec![g.clone()],
            Self::Ambiguous(a) => a.candidates.clone(),
        }
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unique(g) => write!(f, "{g}"),
            Self::Ambiguous(a) => write!(f, "{a}"),
        }
    }
}

/// All isomorphism types of `G` in `0 -> a -> G -> b -> 0`, sorted.
///
/// Finite parts are handled prime by prime with Littlewood-Richardson
/// positivity. Free summands of `b` split off. A free part `Z^r` of `a` can
/// absorb a quotient of the torsion of `b` generated by at most `r` elements,
/// so the torsion of `G` is an extension of a subgroup `C` of `T(b)` by
/// `T(a)`, where `T(b)/C` needs at most `r` generators.
pub fn middle_candidates(a: &FgAbGroup, b: &FgAbGroup) -> Vec<FgAbGroup> {
    let free_rank = a.free_rank() + b.free_rank();
    let absorb = a.free_rank();
    let mut primes: BTreeSet<u64> = a.torsion_primes().into_iter().collect();
    primes.extend(b.torsion_primes());

    let per_prime: Vec<(u64, Vec<Partition>)> = primes
        .iter()
        .map(|&p| {
            let lambda = a.p_partition(p);
            let mu = b.p_partition(p);
            (p, torsion_types(&lambda, &mu, absorb))
        })
        .collect();

    let mut out = Vec::new();
    let mut choice: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    assemble(&per_prime, 0, &mut choice, free_rank, &mut out);
    out.sort();
    out.dedup();
    out
}

fn assemble(
    per_prime: &[(u64, Vec<Partition>)],
    i: usize,
    choice: &mut BTreeMap<u64, Vec<u32>>,
    free_rank: usize,
    out: &mut Vec<FgAbGroup>,
) {
    if i == per_prime.len() {
        out.push(FgAbGroup::from_primary_parts(free_rank, choice));
        return;
    }
    let (p, options) = &per_prime[i];
    for nu in options {
        choice.insert(*p, nu.clone());
        assemble(per_prime, i + 1, choice, free_rank, out);
    }
    choice.remove(p);
}

/// Possible `p`-types of `T(G)` given `p`-types `lambda` of `T(a)` and `mu`
/// of `T(b)`, when `a` has `absorb` free generators.
fn torsion_types(lambda: &[u32], mu: &[u32], absorb: usize) -> Vec<Partition> {
    let subgroup_types: Vec<Partition> = if absorb == 0 {
        vec![mu.to_vec()]
    } else {
        subpartitions(mu)
            .into_iter()
            .filter(|rho| {
                let rest = size(mu) - size(rho);
                partitions_above(rest, &[], absorb, mu.first().copied().unwrap_or(0))
                    .iter()
                    .any(|delta| lr_positive(rho, delta, mu))
            })
            .collect()
    };
    let mut found: BTreeSet<Partition> = BTreeSet::new();
    for rho in &subgroup_types {
        found.extend(extension_types(lambda, rho));
    }
    found.into_iter().collect()
}

/// `p`-types `nu` with a subgroup of type `lambda` and cotype `mu`.
pub fn extension_types(lambda: &[u32], mu: &[u32]) -> Vec<Partition> {
    let n = size(lambda) + size(mu);
    let lower: Vec<u32> = (0..lambda.len().max(mu.len()))
        .map(|i| {
            lambda
                .get(i)
                .copied()
                .unwrap_or(0)
                .max(mu.get(i).copied().unwrap_or(0))
        })
        .collect();
    let max_first = lambda.first().copied().unwrap_or(0) + mu.first().copied().unwrap_or(0);
    partitions_above(n, &lower, lambda.len() + mu.len(), max_first)
        .into_iter()
        .filter(|nu| lr_positive(lambda, mu, nu))
        .collect()
}

/// Isomorphism types of `g / h` over all subgroups of `g` isomorphic to `h`,
/// for finite `g`. Empty when `h` does not embed.
pub fn quotient_candidates(g: &FgAbGroup, h: &FgAbGroup) -> Result<Vec<FgAbGroup>> {
    if !g.is_finite() || !h.is_finite() {
        return Err(Error::InvalidGroup("quotient types need finite groups".into()));
    }
    let mut primes: BTreeSet<u64> = g.torsion_primes().into_iter().collect();
    primes.extend(h.torsion_primes());
    let per_prime: Vec<(u64, Vec<Partition>)> = primes
        .iter()
        .map(|&p| {
            let nu = g.p_partition(p);
            let lambda = h.p_partition(p);
            let rest = size(&nu).checked_sub(size(&lambda));
            let options = match rest {
                None => Vec::new(),
                Some(rest) => partitions_above(rest, &[], nu.len(), nu.first().copied().unwrap_or(0))
                    .into_iter()
                    .filter(|mu| lr_positive(&lambda, mu, &nu))
                    .collect(),
            };
            (p, options)
        })
        .collect();
    let mut out = Vec::new();
    assemble(&per_prime, 0, &mut BTreeMap::new(), 0, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

/// Candidates for the middle term that pass every filter.
pub fn resolve(seq: &ShortExactSequence, filters: &[SplittingFilter]) -> Result<Resolution> {
    let all = match &seq.middle {
        Some(g) => vec![g.clone()],
        None => middle_candidates(&seq.sub, &seq.quot),
    };
    let survivors: Vec<FgAbGroup> = all
        .iter()
        .filter(|g| filters.iter().all(|f| f.accepts(g)))
        .cloned()
        .collect();
    match survivors.len() {
        0 => Err(Error::EmptyAfterFiltering {
            candidates: all.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        }),
        1 => Ok(Resolution::Unique(survivors.into_iter().next().expect("one survivor"))),
        _ => Ok(Resolution::Ambiguous(AmbiguousResult {
            candidates: survivors,
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn order_four_candidates() {
        assert_eq!(middle_candidates(&g("Z_2"), &g("Z_2")), vec![g("Z_2^2"), g("Z_4")]);
    }

    #[test]
    fn z2_by_z2_squared() {
        assert_eq!(
            middle_candidates(&g("Z_2"), &g("Z_2^2")),
            vec![g("Z_2^3"), g("Z_2 + Z_4")]
        );
    }

    #[test]
    fn free_quotient_splits() {
        assert_eq!(middle_candidates(&g("Z_6 + Z"), &g("Z^2")), vec![g("Z^3 + Z_6")]);
    }

    #[test]
    fn free_sub_absorbs_torsion() {
        // Z -> Z -> Z_n, and Z -> Z + Z_n -> Z_n
        let got = middle_candidates(&g("Z"), &g("Z_4"));
        assert_eq!(got, vec![g("Z"), g("Z + Z_2"), g("Z + Z_4")]);
        // Z_2^2 needs two generators, one free summand absorbs at most one
        let got = middle_candidates(&g("Z"), &g("Z_2^2"));
        assert_eq!(got, vec![g("Z + Z_2"), g("Z + Z_2^2")]);
        let got = middle_candidates(&g("Z^2"), &g("Z_2^2"));
        assert_eq!(got, vec![g("Z^2"), g("Z^2 + Z_2"), g("Z^2 + Z_2^2")]);
    }

    #[test]
    fn resolve_examples() {
        let seq = ShortExactSequence::new(g("Z_2"), g("Z_2^2"), "test");
        let r = resolve(&seq, &[SplittingFilter::NoElementOfOrder { n: 4 }]).unwrap();
        assert_eq!(r, Resolution::Unique(g("Z_2^3")));

        let seq = ShortExactSequence::new(g("Z_2"), g("Z_2"), "test");
        let r = resolve(&seq, &[]).unwrap();
        assert_eq!(r.candidates(), vec![g("Z_2^2"), g("Z_4")]);
        assert!(r.unique().is_none());

        let err = resolve(
            &seq,
            &[
                SplittingFilter::NoElementOfOrder { n: 4 },
                SplittingFilter::TorsionEquals { group: g("Z_4") },
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::EmptyAfterFiltering { .. }));
    }

    #[test]
    fn asserted_middle_is_checked() {
        let seq = ShortExactSequence::new(g("Z_4"), g("Z_2"), "test");
        assert!(seq.clone().with_middle(g("Z_8")).is_ok());
        assert!(seq.with_middle(g("Z_2^3")).is_err());
        let seq = ShortExactSequence::new(g("Z"), g("Z_3"), "test");
        assert!(seq.with_middle(g("Z")).is_ok());
    }

    #[test]
    fn quotients() {
        let q = quotient_candidates(&g("Z_2 + Z_4"), &g("Z_2")).unwrap();
        assert_eq!(q, vec![g("Z_2^2"), g("Z_4")]);
        assert_eq!(quotient_candidates(&g("Z_2^2"), &g("Z_2")).unwrap(), vec![g("Z_2")]);
        assert_eq!(quotient_candidates(&g("Z_6"), &g("Z_3")).unwrap(), vec![g("Z_2")]);
        assert!(quotient_candidates(&g("Z_4"), &g("Z_2^2")).unwrap().is_empty());
        assert!(quotient_candidates(&g("Z"), &g("Z_2")).is_err());
    }

    #[test]
    fn filter_json_shape() {
        let f = SplittingFilter::LocalizationEquals { p: 3, group: g("Z_3") };
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"kind":"localization-equals","p":3,"group":{"rank":0,"torsion":[3]}}"#
        );
    }
}
