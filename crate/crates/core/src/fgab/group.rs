use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntegerMatrix;
use super::snf::smith_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group in invariant-factor form
/// `Z^r + Z_{d_1} + ... + Z_{d_t}` with `d_1 | d_2 | ... | d_t` and every
/// `d_i >= 2`. Equality of values is isomorphism of groups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigUint>,
}

impl FgAbGroup {
    /// Validating constructor: the factors must already form a divisibility
    /// chain of integers `>= 2`.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigUint>) -> Result<Self> {
        if let Some(d) = invariant_factors.iter().find(|d| **d < BigUint::from(2u8)) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = invariant_factors
            .windows(2)
            .find(|w| !w[1].is_multiple_of(&w[0]))
        {
            return Err(Error::InvalidGroup(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(Self {
            free_rank,
            invariant_factors,
        })
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(0, [BigUint::from(order)])
    }

    /// `Z_p^count` (any modulus, not just primes).
    pub fn elementary(modulus: u64, count: usize) -> Self {
        Self::from_cyclic_orders(0, std::iter::repeat_n(BigUint::from(modulus), count))
    }

    /// Canonical form of `Z^free_rank + Z_{m_1} + ... + Z_{m_s}` for arbitrary
    /// positive orders. Orders equal to 1 vanish; zero orders count as free
    /// summands.
    pub fn from_cyclic_orders(free_rank: usize, orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut free_rank = free_rank;
        let mut ds: Vec<BigUint> = Vec::new();
        for m in orders {
            if m.is_zero() {
                free_rank += 1;
            } else if !m.is_one() {
                ds.push(m);
            }
        }
        // gcd/lcm comparator network over all pairs; the divisibility lattice
        // is distributive, so a selection network leaves a divisibility chain
        let n = ds.len();
        for i in 0..n {
            for j in i + 1..n {
                let g = ds[i].gcd(&ds[j]);
                let l = &ds[i] / &g * &ds[j];
                ds[i] = g;
                ds[j] = l;
            }
        }
        ds.retain(|d| !d.is_one());
        Self {
            free_rank,
            invariant_factors: ds,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    /// Invariant factors as `u64`, when they all fit.
    pub fn invariant_factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(|d| d.to_u64()).collect()
    }

    /// Number of generators in canonical order: free ones first, then one per
    /// invariant factor.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion(&self) -> Self {
        Self {
            free_rank: 0,
            invariant_factors: self.invariant_factors.clone(),
        }
    }

    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors.iter().product()
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigUint> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Exponent of the torsion subgroup (1 for a torsion-free group).
    pub fn torsion_exponent(&self) -> BigUint {
        self.invariant_factors.last().cloned().unwrap_or_else(BigUint::one)
    }

    /// Primes dividing the torsion order, ascending.
    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut primes = Vec::new();
        for d in &self.invariant_factors {
            for (p, _) in factorize(d) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        primes.sort_unstable();
        primes
    }

    /// Exponents of `p` in the cyclic factors of the `p`-primary part, largest
    /// first: the partition that classifies the `p`-part.
    pub fn p_partition(&self, p: u64) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .invariant_factors
            .iter()
            .map(|d| valuation(d, p))
            .filter(|&e| e > 0)
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// Minimal number of generators of `G / pG`: free rank plus the number of
    /// invariant factors divisible by `p`.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        self.free_rank
            + self
                .invariant_factors
                .iter()
                .filter(|d| valuation(d, p) > 0)
                .count()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        // merge primary decompositions, then rebuild invariant factors
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for g in [self, other] {
            for d in &g.invariant_factors {
                for (p, e) in factorize(d) {
                    by_prime.entry(p).or_default().push(e);
                }
            }
        }
        Self::from_primary_parts(self.free_rank + other.free_rank, &by_prime)
    }

    /// `copies`-fold direct sum of `self` with itself (the zero group for 0).
    pub fn multiple(&self, copies: usize) -> Self {
        Self::direct_sum_all(std::iter::repeat_n(self, copies))
    }

    pub fn direct_sum_all<'a>(groups: impl IntoIterator<Item = &'a FgAbGroup>) -> Self {
        groups
            .into_iter()
            .fold(Self::zero(), |acc, g| acc.direct_sum(g))
    }

    /// Rebuilds canonical form from per-prime partitions (exponent lists).
    pub fn from_primary_parts(free_rank: usize, parts: &BTreeMap<u64, Vec<u32>>) -> Self {
        let mut sorted: Vec<(u64, Vec<u32>)> = parts
            .iter()
            .map(|(&p, es)| {
                let mut es: Vec<u32> = es.iter().copied().filter(|&e| e > 0).collect();
                es.sort_unstable_by(|a, b| b.cmp(a));
                (p, es)
            })
            .collect();
        sorted.retain(|(_, es)| !es.is_empty());
        let t = sorted.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        // i-th largest factor collects the i-th largest power of every prime
        let mut factors: Vec<BigUint> = (0..t)
            .map(|i| {
                sorted
                    .iter()
                    .filter_map(|(p, es)| es.get(i).map(|&e| BigUint::from(*p).pow(e)))
                    .product()
            })
            .collect();
        factors.reverse();
        Self {
            free_rank,
            invariant_factors: factors,
        }
    }

    /// Free part plus the `p`-primary torsion.
    pub fn localize_at_prime(&self, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let factors = self
            .invariant_factors
            .iter()
            .map(|d| BigUint::from(p).pow(valuation(d, p)))
            .filter(|q| !q.is_one())
            .collect();
        Ok(Self {
            free_rank: self.free_rank,
            invariant_factors: factors,
        })
    }

    /// Whether the torsion subgroup has an element of order exactly `n`.
    /// The free part is ignored: order means finite order here.
    pub fn has_element_of_order(&self, n: u64) -> bool {
        n >= 2
            && self
                .invariant_factors
                .iter()
                .any(|d| d.is_multiple_of(&BigUint::from(n)))
    }

    /// Generator offsets of the torsion block inside the canonical basis.
    pub(crate) fn relation_columns(&self) -> Vec<Vec<BigInt>> {
        let n = self.generator_count();
        self.invariant_factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut col = vec![BigInt::zero(); n];
                col[self.free_rank + i] = BigInt::from(d.clone());
                col
            })
            .collect()
    }
}

/// `Z^generators / rowspan(relations)` in canonical form.
pub fn group_from_relations(generators: usize, relations: &IntegerMatrix) -> Result<FgAbGroup> {
    if relations.cols() != generators {
        return Err(Error::DimensionMismatch(format!(
            "relation matrix has {} columns but there are {generators} generators",
            relations.cols()
        )));
    }
    let s = smith_form(relations);
    let factors = s.invariant_factors();
    let free_rank = generators - factors.len();
    let torsion = factors
        .into_iter()
        .map(|d| d.to_biguint().expect("Smith diagonal is nonnegative"));
    Ok(FgAbGroup::from_cyclic_orders(free_rank, torsion))
}

/// `Ext^1(b, a)`, assembled summand by summand from
/// `Ext(Z, -) = 0`, `Ext(Z_m, Z) = Z_m`, `Ext(Z_m, Z_n) = Z_gcd(m,n)`.
pub fn ext1(b: &FgAbGroup, a: &FgAbGroup) -> FgAbGroup {
    let mut orders = Vec::new();
    for m in &b.invariant_factors {
        orders.extend(std::iter::repeat_n(m.clone(), a.free_rank));
        orders.extend(a.invariant_factors.iter().map(|n| m.gcd(n)));
    }
    FgAbGroup::from_cyclic_orders(0, orders)
}

pub(crate) fn valuation(d: &BigUint, p: u64) -> u32 {
    let p = BigUint::from(p);
    let mut d = d.clone();
    let mut e = 0;
    while !d.is_zero() && (&d % &p).is_zero() {
        d /= &p;
        e += 1;
    }
    e
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Trial-division factorization into `(prime, exponent)` pairs, ascending.
///
/// Panics if a prime factor does not fit in `u64`; group orders in this crate
/// never come close.
pub(crate) fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    let mut q = 2u64;
    while BigUint::from(q) * BigUint::from(q) <= n {
        let bq = BigUint::from(q);
        if (&n % &bq).is_zero() {
            let mut e = 0;
            while (&n % &bq).is_zero() {
                n /= &bq;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        out.push((n.to_u64().expect("prime factor exceeds u64"), 1));
    }
    out
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..]
                .iter()
                .take_while(|x| *x == d)
                .count();
            terms.push(if run == 1 {
                format!("Z_{d}")
            } else {
                format!("Z_{d}^{run}")
            });
            i += run;
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the notation produced by `Display`: `0`, or `+`-separated terms
/// `Z`, `Z^r`, `Z_m`, `Z_m^c`. `⊕` is accepted as a separator too.
impl FromStr for FgAbGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::InvalidGroup(format!("cannot parse {s:?}"));
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in s.split(['+', '⊕']) {
            let term = term.trim();
            let rest = term.strip_prefix('Z').ok_or_else(bad)?;
            if let Some(cyc) = rest.strip_prefix('_') {
                let (m, c) = match cyc.split_once('^') {
                    Some((m, c)) => (m, c.parse::<usize>().map_err(|_| bad())?),
                    None => (cyc, 1),
                };
                let m: BigUint = m.parse().map_err(|_| bad())?;
                if m.is_zero() {
                    return Err(bad());
                }
                orders.extend(std::iter::repeat_n(m, c));
            } else if let Some(r) = rest.strip_prefix('^') {
                free += r.parse::<usize>().map_err(|_| bad())?;
            } else if rest.is_empty() {
                free += 1;
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_cyclic_orders(free, orders))
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    rank: usize,
    torsion: Vec<serde_json::Value>,
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let torsion = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        GroupRepr {
            rank: self.free_rank,
            torsion,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(deserializer)?;
        let factors = repr
            .torsion
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| D::Error::custom("torsion entries must be positive integers")),
                serde_json::Value::String(s) => s.parse::<BigUint>().map_err(D::Error::custom),
                _ => Err(D::Error::custom("torsion entries must be integers")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FgAbGroup::new(repr.rank, factors).map_err(D::Error::custom)
    }
}
