//! Self-checks run by `cpsum verify`: each suite evaluates a family of
//! properties and collects the ones that fail.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomotopy::{build_sequence, pi_s0_connected_sum, table_consistency};
use crate::error::Result;
use crate::extension::oracle::finite_groups_up_to;
use crate::extension::{brute_force_middle_terms, middle_candidates};
use crate::fgab::{smith_form, FgAbGroup, IntegerMatrix};
use crate::ktheory::{ko_case, ko_group, verify_sandwich};
use crate::surgery::{
    f_over_o, f_over_o_rank, f_over_pl, f_over_pl_from_cells, kernel_f_star_rank, pl_over_o,
    recorded_exotic_count, structure_set,
};
use crate::tables::Tables;

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Oracle,
    Snf,
    Cohomotopy,
    Ko,
    Surgery,
    Tables,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Oracle,
        Suite::Snf,
        Suite::Cohomotopy,
        Suite::Ko,
        Suite::Surgery,
        Suite::Tables,
    ];
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Bound on `|A| * |B|` for the oracle suite.
    pub max_order: u64,
    pub seed: u64,
    /// Random matrices for the SNF suite.
    pub cases: usize,
    /// Largest number of summands exercised by the table suites.
    pub max_k: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_order: 64,
            seed: DEFAULT_SEED,
            cases: 1000,
            max_k: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub property: String,
    pub detail: String,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, property: &str, detail: impl FnOnce() -> String, citation: &str) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                property: property.to_string(),
                detail: detail(),
                citation: citation.to_string(),
            });
        }
    }

    /// Records an error from the code under test as a failed check.
    fn check_result<T>(&mut self, r: Result<T>, property: &str, citation: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, property, || e.to_string(), citation);
                None
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = serde_json::to_value(self.suite).expect("suite names serialize");
        write!(
            f,
            "suite {}: {} checks, {} failures",
            name.as_str().unwrap_or_default(),
            self.checks,
            self.failures.len()
        )?;
        for x in &self.failures {
            write!(f, "\n  FAIL {}: {} [{}]", x.property, x.detail, x.citation)?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, tables: &Tables, opts: &VerifyOptions) -> SuiteReport {
    match suite {
        Suite::Oracle => oracle_suite(opts.max_order),
        Suite::Snf => snf_suite(opts.seed, opts.cases),
        Suite::Cohomotopy => cohomotopy_suite(tables, opts.max_k),
        Suite::Ko => ko_suite(tables),
        Suite::Surgery => surgery_suite(tables, opts.max_k.max(2)),
        Suite::Tables => tables_suite(tables),
    }
}

/// `middle_candidates` agrees with the brute-force search for every pair of
/// finite groups with `|A| * |B| <= max_order`.
pub fn oracle_suite(max_order: u64) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Oracle);
    let groups = finite_groups_up_to(max_order);
    for (&oa, gas) in &groups {
        for (&ob, gbs) in groups.range(..=max_order / oa) {
            debug_assert!(oa * ob <= max_order);
            for a in gas {
                for b in gbs {
                    let fast = middle_candidates(a, b);
                    let slow = brute_force_middle_terms(a, b);
                    let citation = "exhaustive subgroup search";
                    if let Some(slow) = r.check_result(slow, "oracle runs", citation) {
                        r.check(
                            fast == slow,
                            "middle candidates match brute force",
                            || format!("{a} by {b}: {fast:?} vs {slow:?}"),
                            citation,
                        );
                    }
                }
            }
        }
    }
    r
}

/// `u * m * v = d`, `u` and `v` unimodular, and the diagonal of `d` a
/// divisibility chain, on seeded random matrices up to 8x8 with entries in
/// `[-20, 20]`.
pub fn snf_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Snf);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let citation = "Smith normal form over the integers";
    for _ in 0..cases {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let entries: Vec<BigInt> = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-20i64..=20))).collect();
        let m = IntegerMatrix::new(rows, cols, entries).expect("shape matches");
        let s = smith_form(&m);
        let product = s.u.mul(&m).and_then(|um| um.mul(&s.v));
        r.check(
            product.as_ref() == Ok(&s.d),
            "u*m*v = d",
            || format!("{m:?}"),
            citation,
        );
        r.check(
            s.u.is_unimodular() && s.v.is_unimodular(),
            "u and v unimodular",
            || format!("{m:?}"),
            citation,
        );
        r.check(
            divisibility_chain(&s.d),
            "diagonal divisibility chain",
            || format!("{:?}", s.d.diagonal()),
            citation,
        );
    }
    r
}

fn divisibility_chain(d: &IntegerMatrix) -> bool {
    if !d.is_diagonal() {
        return false;
    }
    let diag = d.diagonal();
    diag.iter().all(|x| *x >= BigInt::zero())
        && diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
}

fn group(s: &str) -> FgAbGroup {
    s.parse().expect("literal group")
}

/// Closed forms for `pi_s^0(#_k CP^n)`, `3 <= n <= 7`.
pub fn expected_pi_s0(k: u32, n: u32) -> Option<FgAbGroup> {
    let k = k as usize;
    let two = |c: usize| FgAbGroup::elementary(2, c);
    let three = |c: usize| FgAbGroup::elementary(3, c);
    match n {
        3 => Some(group("Z_2")),
        4 => Some(two(k + 1)),
        5 => Some(two(2 * k).direct_sum(&three(1))),
        6 => Some(two(2 * k - 1).direct_sum(&three(k))),
        7 => Some(two(k + 2).direct_sum(&three(k - 1))),
        _ => None,
    }
}

fn cohomotopy_suite(tables: &Tables, max_k: u32) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Cohomotopy);
    let cite = "top-cell sequence with splitting filters";
    for k in 1..=max_k {
        for n in 3..=8u32 {
            let (ki, ni) = (i64::from(k), i64::from(n));
            let Some(res) = r.check_result(pi_s0_connected_sum(tables, ki, ni), "pi_s^0 computes", cite) else {
                continue;
            };
            let seq = &res.sequence;
            let candidates = crate::extension::middle_candidates(&seq.sub, &seq.quot);
            for g in res.group.candidates() {
                r.check(
                    candidates.contains(&g),
                    "result is a middle term of its sequence",
                    || format!("k={k} n={n}: {g}"),
                    cite,
                );
                r.check(
                    g.torsion_order() == seq.sub.torsion_order() * seq.quot.torsion_order(),
                    "order is |sub| * |quot|",
                    || format!("k={k} n={n}: {g}"),
                    cite,
                );
            }
            if let Some(want) = expected_pi_s0(k, n) {
                r.check(
                    res.unique() == Some(&want),
                    "closed form for pi_s^0",
                    || format!("k={k} n={n}: got {}, want {want}", res.group),
                    cite,
                );
            }
            if n == 8 {
                r.check(res.unique().is_none(), "n=8 stays ambiguous", || format!("k={k}"), cite);
            }
            if let (Some(g), 4 | 5 | 7) = (res.unique(), n) {
                r.check(!g.has_element_of_order(4), "no element of order 4", || format!("k={k} n={n}: {g}"), cite);
            }
            if let Some(g) = res.unique() {
                let want3 = match n {
                    5 => Some(FgAbGroup::elementary(3, 1)),
                    7 => Some(FgAbGroup::elementary(3, k as usize - 1)),
                    _ => None,
                };
                if let Some(want3) = want3 {
                    r.check(
                        g.localize_at_prime(3).ok() == Some(want3.clone()),
                        "3-localization",
                        || format!("k={k} n={n}: {g} vs {want3}"),
                        cite,
                    );
                }
            }
            if k == 1 {
                let single = tables.pi_s0_single_cp(ni).ok();
                if let Some(single) = single {
                    r.check(
                        res.group.candidates().contains(&single),
                        "k=1 agrees with the single-copy table",
                        || format!("n={n}: {} vs {single}", res.group),
                        cite,
                    );
                }
            }
            if k <= 2 && n == 8 {
                if let Some(oracle) = r.check_result(
                    brute_force_middle_terms(&seq.sub, &seq.quot),
                    "oracle runs",
                    cite,
                ) {
                    r.check(
                        res.group.candidates() == oracle,
                        "n=8 candidates equal brute-force middle terms",
                        || format!("k={k}: {} vs {oracle:?}", res.group),
                        cite,
                    );
                }
            }
        }
    }
    for (k, n) in [(0, 4), (1, 2), (1, 9)] {
        r.check(build_sequence(tables, k, n).is_err(), "range is enforced", || format!("k={k} n={n}"), cite);
    }
    r
}

fn ko_suite(tables: &Tables) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Ko);
    let cite = crate::ktheory::FUJII;
    for s in 0..8i64 {
        for k in 2..=6i64 {
            for n in 2..=12i64 {
                let Some(g) = r.check_result(ko_group(s, k, n), "ko_group computes", cite) else {
                    continue;
                };
                let labels = crate::ktheory::group_from_basis(&g.basis);
                r.check(labels == g.group, "basis spans the group", || format!("s={s} k={k} n={n}"), cite);
                let (Ok(top), Ok(low)) = (tables.ko_single_cp(s, n), tables.ko_single_cp(s, n - 1)) else {
                    r.check(false, "single-copy KO tabulated", || format!("s={s} n={n}"), cite);
                    continue;
                };
                r.check(
                    g.group.free_rank() == top.group.free_rank() + (k as usize - 1) * low.group.free_rank(),
                    "rank additivity",
                    || format!("s={s} k={k} n={n}"),
                    cite,
                );
                if s == 3 || s == 7 {
                    r.check(
                        g.group.invariant_factors().iter().all(|d| *d == BigUint::from(2u32)) && g.group.is_finite(),
                        "annihilated by 2",
                        || format!("s={s} k={k} n={n}: {}", g.group),
                        cite,
                    );
                }
                if let Some(rep) = r.check_result(verify_sandwich(tables, s, k, n), "sandwich computes", cite) {
                    r.check(rep.passed(), "exact-sequence sandwich", || rep.to_string(), cite);
                }
            }
        }
    }
    // the k = 1 degeneration of the case table against single copies
    for s in 0..8u8 {
        for n in 2..=12u32 {
            let (free, twos) = ko_case(s, 1, n);
            let want = FgAbGroup::free(free as usize).direct_sum(&FgAbGroup::elementary(2, twos as usize));
            if let Ok(single) = tables.ko_single_cp(i64::from(s), i64::from(n)) {
                r.check(
                    single.group == want,
                    "k=1 case table equals single copy",
                    || format!("s={s} n={n}: {} vs {want}", single.group),
                    cite,
                );
            }
        }
    }
    r
}

fn surgery_suite(tables: &Tables, max_k: u32) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Surgery);
    let cite = "surgery exact sequence for #_k CP^n";
    for k in 1..=max_k.max(10) {
        let ki = i64::from(k);
        for n in 3..=7u32 {
            let ni = i64::from(n);
            let Some(fo) = r.check_result(f_over_o(tables, ki, ni), "F/O computes", cite) else {
                continue;
            };
            r.check(
                fo.group.free_rank() == f_over_o_rank(k, n),
                "F/O rank formula",
                || format!("k={k} n={n}"),
                cite,
            );
            if k >= 2 {
                r.check(
                    kernel_f_star_rank(ki, ni).ok() == Some(fo.group.free_rank()),
                    "F/O free rank equals the free rank of KO^0",
                    || format!("k={k} n={n}"),
                    cite,
                );
            }
            r.check(
                Some(fo.group.torsion()) == pi_s0_connected_sum(tables, ki, ni).ok().and_then(|c| c.unique().cloned()),
                "F/O torsion equals pi_s^0",
                || format!("k={k} n={n}"),
                cite,
            );
            if let Some(fpl) = r.check_result(f_over_pl(ki, ni), "F/PL computes", cite) {
                r.check(
                    fpl.group.torsion_primes().iter().all(|&p| p == 2),
                    "F/PL has no odd torsion",
                    || fpl.group.to_string(),
                    cite,
                );
                r.check(
                    f_over_pl_from_cells(tables, ki, ni).ok() == Some(fpl.group.clone()),
                    "F/PL closed form equals the cell product",
                    || format!("k={k} n={n}"),
                    cite,
                );
            }
            if let (Some(pl), Some(ss)) = (
                r.check_result(pl_over_o(tables, ki, ni), "PL/O computes", cite),
                r.check_result(structure_set(tables, ki, ni), "structure set computes", cite),
            ) {
                r.check(
                    pl.group.torsion_order() <= ss.normal_invariants.torsion_order(),
                    "|PL/O| <= |pi_s^0|",
                    || format!("k={k} n={n}"),
                    cite,
                );
                r.check(
                    ss.exotic_count == recorded_exotic_count(k, n),
                    "exotic count is the published count",
                    || format!("k={k} n={n}: {:?}", ss.exotic_count),
                    cite,
                );
                if ss.exotic_count.is_some() {
                    r.check(
                        ss.derived_count == ss.exotic_count,
                        "exotic count recomputed from group orders",
                        || format!("k={k} n={n}: {:?} ({})", ss.derived_count, ss.derivation),
                        cite,
                    );
                }
                if n == 4 {
                    let half = ss.normal_invariants.torsion_order() / BigUint::from(2u32);
                    r.check(
                        ss.exotic_count == Some(half),
                        "n=4 count is |pi_s^0| / 2",
                        || format!("k={k}"),
                        cite,
                    );
                }
            }
        }
    }
    r.check(
        f_over_pl(1, 1).map(|x| x.group.is_trivial()).unwrap_or(false),
        "F/PL of S^2 under the product convention",
        String::new,
        cite,
    );
    r
}

fn tables_suite(tables: &Tables) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::Tables);
    for e in tables.entries() {
        r.check(!e.citation.trim().is_empty(), "record has a citation", || e.kind.clone(), "table data");
    }
    if let Some(checks) = r.check_result(table_consistency(tables), "consistency computes", "table data") {
        for c in checks {
            r.check(c.passed, &c.name, || c.detail.clone(), "stable stems and Hopf maps");
        }
    }
    r
}
