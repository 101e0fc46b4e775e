//! Stable cohomotopy `pi_s^0(#_k CP^n)` for `3 <= n <= 8`.
//!
//! Collapsing all but one summand and pinching off the top cell give a short
//! exact sequence whose ends come from stable stems and single-copy groups.
//! The middle term is then pinned down by splitting filters, or reported as
//! ambiguous when the known facts do not decide it.

use std::fmt;

use serde::Serialize;

use crate::error::{out_of_range, Error, Result};
use crate::extension::{quotient_candidates, resolve, Resolution, ShortExactSequence, SplittingFilter};
use crate::fgab::FgAbGroup;
use crate::tables::Tables;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomotopyResult {
    pub k: u32,
    pub n: u32,
    pub group: Resolution,
    pub sequence: ShortExactSequence,
    pub filters: Vec<SplittingFilter>,
    pub citations: Vec<String>,
}

impl CohomotopyResult {
    pub fn unique(&self) -> Option<&FgAbGroup> {
        self.group.unique()
    }

    /// The group, or [`Error::AmbiguousUpstream`] when the extension is open.
    pub fn require_unique(&self) -> Result<&FgAbGroup> {
        self.group.unique().ok_or_else(|| {
            Error::AmbiguousUpstream(format!(
                "pi_s^0(#_{}CP^{}) is {}",
                self.k, self.n, self.group
            ))
        })
    }
}

impl fmt::Display for CohomotopyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)
    }
}

/// JSON shape shared with the CLI: a group, or `{"ambiguous": [...]}`.
impl Serialize for CohomotopyResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        resolution_json(&self.group).serialize(s)
    }
}

pub fn resolution_json(r: &Resolution) -> serde_json::Value {
    match r {
        Resolution::Unique(g) => serde_json::to_value(g).expect("groups serialize"),
        Resolution::Ambiguous(a) => serde_json::json!({ "ambiguous": a.candidates }),
    }
}

fn check_range(k: i64, n: i64) -> Result<(u32, u32)> {
    if k < 1 {
        return Err(out_of_range("k", k, "k >= 1"));
    }
    if !(3..=8).contains(&n) {
        return Err(out_of_range("n", n, "3..=8"));
    }
    Ok((k as u32, n as u32))
}

/// `0 -> pi_2n^s / im (Sigma h)^* -> pi_s^0(#_k CP^n) -> Q -> 0`.
///
/// For `n = 3` the left map is onto and `Q = 0`. For `n = 4` the quotient is
/// `k` copies of `pi_s^0(CP^3)`. Otherwise `Q` is `k - 1` copies of
/// `pi_s^0(CP^(n-1))` plus the kernel of `h^*`.
pub fn build_sequence(tables: &Tables, k: i64, n: i64) -> Result<ShortExactSequence> {
    let (k, n) = check_range(k, n)?;
    let ni = i64::from(n);
    let stem = tables.stable_stem(2 * ni)?;
    let image = tables.hopf_image_suspension(ni)?;
    let sub = match quotient_candidates(&stem, &image)?.as_slice() {
        [q] => q.clone(),
        [] => {
            return Err(Error::InvalidGroup(format!(
                "{image} is not a subgroup of {stem}"
            )))
        }
        many => {
            return Err(Error::AmbiguousUpstream(format!(
                "{stem} / {image} could be any of {}",
                many.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )))
        }
    };
    let (quot, provenance) = match n {
        3 => (
            FgAbGroup::zero(),
            "top-cell sequence; the collapse map is an isomorphism for n = 3".to_string(),
        ),
        4 => (
            tables.pi_s0_single_cp(3)?.multiple(k as usize),
            "top-cell sequence; quotient is k copies of pi_s^0(CP^3)".to_string(),
        ),
        _ => (
            tables
                .pi_s0_single_cp(ni - 1)?
                .multiple(k as usize - 1)
                .direct_sum(&tables.hopf_kernel(ni)?),
            format!("top-cell sequence; quotient is k-1 copies of pi_s^0(CP^{}) plus ker h^*", n - 1),
        ),
    };
    Ok(ShortExactSequence::new(sub, quot, provenance))
}

/// Filters that decide the extension, with the facts they rest on.
fn filters_for(tables: &Tables, n: u32, seq: &ShortExactSequence) -> Result<(Vec<SplittingFilter>, Vec<String>)> {
    let no_four = SplittingFilter::NoElementOfOrder { n: 4 };
    Ok(match n {
        4 => (
            vec![no_four],
            vec!["an element of order 4 would survive in the smooth normal invariants of CP^4, whose torsion is elementary".into()],
        ),
        5 => (
            vec![no_four],
            vec!["[#_k CP^5, PL/O] and [#_k CP^5, F/PL] have no Z_4, so neither does [#_k CP^5, SF]".into()],
        ),
        7 => {
            // the sub has no 3-torsion, so the 3-part is read off the quotient
            let three = seq.quot.localize_at_prime(3)?.direct_sum(&seq.sub.localize_at_prime(3)?);
            let cite = tables
                .citation("stable-stem-2local", &[("n", 13)])
                .unwrap_or_default();
            (
                vec![SplittingFilter::LocalizationEquals { p: 3, group: three }, no_four],
                vec![
                    "3-localization splits since the sub has no 3-torsion".into(),
                    format!("2-primary pi_13^s vanishes ({cite}), so q^* splits at 2"),
                ],
            )
        }
        _ => (Vec::new(), Vec::new()),
    })
}

pub fn pi_s0_connected_sum(tables: &Tables, k: i64, n: i64) -> Result<CohomotopyResult> {
    let seq = build_sequence(tables, k, n)?;
    let (k, n) = check_range(k, n)?;
    let (filters, notes) = filters_for(tables, n, &seq)?;
    let group = resolve(&seq, &filters)?;
    let ni = i64::from(n);
    let mut citations = vec![seq.provenance.clone()];
    citations.extend(tables.citation("stable-stem", &[("n", 2 * ni)]));
    if n > 3 {
        citations.extend(tables.citation("pi-s0-cp", &[("n", ni - 1)]));
    }
    citations.extend(tables.citation("hopf-kernel", &[("n", ni)]));
    citations.extend(tables.citation("hopf-image-suspension", &[("n", ni)]));
    citations.extend(notes);
    citations.dedup();
    Ok(CohomotopyResult {
        k,
        n,
        group,
        sequence: seq,
        filters,
        citations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Cross-checks among the cohomotopy inputs:
/// `|pi_s^0(CP^n)| = |pi_2n^s / im| * |ker h^*|`, the image embeds in the
/// stem, and `pi_s^0(CP^(n-1)) / ker h^*` embeds in `pi_(2n-1)^s` where
/// that stem is tabulated.
pub fn table_consistency(tables: &Tables) -> Result<Vec<ConsistencyCheck>> {
    let mut out = Vec::new();
    for n in 4..=8i64 {
        let stem = tables.stable_stem(2 * n)?;
        let image = tables.hopf_image_suspension(n)?;
        let kernel = tables.hopf_kernel(n)?;
        let quotients = quotient_candidates(&stem, &image)?;
        out.push(ConsistencyCheck {
            name: format!("image of (Sigma h)^* embeds in pi_{}^s (n={n})", 2 * n),
            passed: !quotients.is_empty(),
            detail: format!("{image} in {stem}"),
        });
        let single = tables.pi_s0_single_cp(n)?;
        let sub_order = stem.torsion_order() / image.torsion_order();
        let passed = single.torsion_order() == sub_order.clone() * kernel.torsion_order();
        out.push(ConsistencyCheck {
            name: format!("order of pi_s^0(CP^{n})"),
            passed,
            detail: format!(
                "|{single}| vs {} * |{kernel}|",
                sub_order
            ),
        });
        if let (Ok(lower), Ok(odd_stem)) = (tables.pi_s0_single_cp(n - 1), tables.stable_stem(2 * n - 1)) {
            let images = quotient_candidates(&lower, &kernel)?;
            let embeds = images
                .iter()
                .any(|q| !quotient_candidates(&odd_stem, q).unwrap_or_default().is_empty());
            out.push(ConsistencyCheck {
                name: format!("image of h^* embeds in pi_{}^s (n={n})", 2 * n - 1),
                passed: embeds,
                detail: format!("{lower} / {kernel} into {odd_stem}"),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn sequences() {
        let t = Tables::builtin();
        let s = build_sequence(t, 2, 4).unwrap();
        assert_eq!((s.sub, s.quot), (g("Z_2"), g("Z_2^2")));
        let s = build_sequence(t, 1, 6).unwrap();
        assert_eq!((s.sub, s.quot), (FgAbGroup::zero(), g("Z_6")));
        let s = build_sequence(t, 3, 7).unwrap();
        assert_eq!(s.sub, g("Z_2^2"));
        assert_eq!(s.quot, g("Z_2 + Z_6^2"));
        assert!(build_sequence(t, 0, 4).is_err());
        assert!(build_sequence(t, 2, 9).is_err());
    }

    #[test]
    fn resolved_groups() {
        let t = Tables::builtin();
        let r = |k, n| pi_s0_connected_sum(t, k, n).unwrap().unique().cloned().unwrap();
        assert_eq!(r(1, 4), g("Z_2^2"));
        assert_eq!(r(2, 5), g("Z_2^4 + Z_3"));
        assert_eq!(r(4, 6), g("Z_2^7 + Z_3^4"));
        assert_eq!(r(3, 7), g("Z_2^5 + Z_3^2"));
        assert_eq!(r(5, 3), g("Z_2"));
    }

    #[test]
    fn n8_stays_open() {
        let t = Tables::builtin();
        let r = pi_s0_connected_sum(t, 1, 8).unwrap();
        assert_eq!(r.group.candidates(), vec![g("Z_2^3"), g("Z_2 + Z_4")]);
        assert!(matches!(r.require_unique(), Err(Error::AmbiguousUpstream(_))));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"ambiguous":[{"rank":0,"torsion":[2,2,2]},{"rank":0,"torsion":[2,4]}]}"#
        );
    }

    #[test]
    fn builtin_tables_are_consistent() {
        for c in table_consistency(Tables::builtin()).unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
