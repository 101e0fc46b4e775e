//! Exhaustive middle-term search, independent of the partition machinery in
//! the solver: every abelian group of the right order is built explicitly and
//! searched for a subgroup of the right type and cotype.

use std::collections::{BTreeMap, HashSet};

use num_traits::ToPrimitive;

use super::partitions::partitions_of;
use crate::error::{Error, Result};
use crate::fgab::{factorize, FgAbGroup};

/// Largest `|a| * |b|` the oracle accepts.
pub const ORACLE_LIMIT: u64 = 1 << 12;

/// Every abelian `G` (up to isomorphism) with a subgroup isomorphic to `a`
/// whose quotient is isomorphic to `b`, sorted canonically.
pub fn brute_force_middle_terms(a: &FgAbGroup, b: &FgAbGroup) -> Result<Vec<FgAbGroup>> {
    let (oa, ob) = match (a.order(), b.order()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::InvalidGroup(
                "brute-force search needs finite groups".into(),
            ))
        }
    };
    let order = &oa * &ob;
    let n = order
        .to_u64()
        .filter(|&n| n <= ORACLE_LIMIT)
        .ok_or_else(|| Error::SizeLimitExceeded {
            order: order.to_string(),
            limit: ORACLE_LIMIT,
        })?;
    // a subgroup H with G/H = Y exists iff one with type Y and cotype H exists
    // (annihilator duality), so search for whichever side has fewer generators
    let (sub, quot) = if (b.generator_count(), ob) < (a.generator_count(), oa) {
        (b, a)
    } else {
        (a, b)
    };
    let sub_orders: Vec<u64> = sub.invariant_factors_u64().expect("bounded by limit");
    let quot_orders: Vec<u64> = quot.invariant_factors_u64().expect("bounded by limit");
    let mut out: Vec<FgAbGroup> = abelian_groups_of_order(n)
        .into_iter()
        .filter(|moduli| {
            let g = Explicit::new(moduli);
            g.has_subgroup(&sub_orders, &quot_orders)
        })
        .map(|moduli| FgAbGroup::from_cyclic_orders(0, moduli.into_iter().map(Into::into)))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Cyclic prime-power decompositions of all abelian groups of order `n`.
fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    let mut groups = vec![Vec::new()];
    for (p, e) in factorize(&n.into()) {
        let mut next = Vec::new();
        for g in &groups {
            for lambda in partitions_of(e) {
                let mut h: Vec<u64> = g.clone();
                h.extend(lambda.iter().map(|&x| p.pow(x)));
                next.push(h);
            }
        }
        groups = next;
    }
    groups
}

/// `Z_{m_1} x ... x Z_{m_s}` with elements numbered in mixed radix.
struct Explicit {
    moduli: Vec<u64>,
    order: usize,
}

impl Explicit {
    fn new(moduli: &[u64]) -> Self {
        Self {
            moduli: moduli.to_vec(),
            order: moduli.iter().product::<u64>() as usize,
        }
    }

    fn decode(&self, mut x: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = x as u64 % m;
                x /= m as usize;
                c
            })
            .collect()
    }

    fn encode(&self, coords: &[u64]) -> usize {
        let mut x = 0usize;
        for (&c, &m) in coords.iter().zip(&self.moduli).rev() {
            x = x * m as usize + c as usize;
        }
        x
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<u64> = a
            .iter()
            .zip(&b)
            .zip(&self.moduli)
            .map(|((p, q), m)| (p + q) % m)
            .collect();
        self.encode(&s)
    }

    fn scale(&self, x: usize, k: u64) -> usize {
        let s: Vec<u64> = self
            .decode(x)
            .iter()
            .zip(&self.moduli)
            .map(|(c, m)| (c * (k % m)) % m)
            .collect();
        self.encode(&s)
    }

    fn element_order(&self, x: usize) -> u64 {
        self.decode(x)
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| m / num_integer::gcd(c, m))
            .fold(1, num_integer::lcm)
    }

    /// Subgroup generated by `members` together with `h`.
    fn extend(&self, members: &[bool], h: usize) -> Vec<bool> {
        let mut out = members.to_vec();
        let elems: Vec<usize> = (0..self.order).filter(|&x| members[x]).collect();
        let mut mult = h;
        while mult != 0 {
            for &s in &elems {
                out[self.add(s, mult)] = true;
            }
            mult = self.add(mult, h);
        }
        out
    }

    /// Whether some subgroup has invariant factors `sub` and quotient with
    /// invariant factors `quot`.
    fn has_subgroup(&self, sub: &[u64], quot: &[u64]) -> bool {
        let mut trivial = vec![false; self.order];
        trivial[0] = true;
        let mut level: Vec<Vec<bool>> = vec![trivial];
        let mut expected = 1usize;
        for &d in sub.iter().rev() {
            expected *= d as usize;
            let mut seen: HashSet<Vec<bool>> = HashSet::new();
            let mut next = Vec::new();
            for s in &level {
                for h in 0..self.order {
                    if s[h] || self.element_order(h) != d {
                        continue;
                    }
                    let t = self.extend(s, h);
                    if t.iter().filter(|&&x| x).count() == expected && seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
            level = next;
            if level.is_empty() {
                return false;
            }
        }
        level.iter().any(|h| self.quotient_matches(h, quot))
    }

    /// Compares `|(G/H)[q]|` with `prod gcd(q, y_i)` for every prime power `q`
    /// dividing the exponent of `G`; these counts determine the quotient type.
    fn quotient_matches(&self, h: &[bool], quot: &[u64]) -> bool {
        let h_size = h.iter().filter(|&&x| x).count();
        let exponent = self.moduli.iter().copied().fold(1, num_integer::lcm);
        let mut prime_powers = Vec::new();
        for (p, e) in factorize(&exponent.into()) {
            prime_powers.extend((1..=e).map(|i| p.pow(i)));
        }
        prime_powers.iter().all(|&q| {
            let lifted = (0..self.order).filter(|&g| h[self.scale(g, q)]).count();
            let want: u64 = quot.iter().map(|&y| num_integer::gcd(q, y)).product();
            lifted == h_size * want as usize
        })
    }
}

/// Groups of order at most `max_order`, keyed by order.
pub fn finite_groups_up_to(max_order: u64) -> BTreeMap<u64, Vec<FgAbGroup>> {
    (1..=max_order)
        .map(|n| {
            let mut gs: Vec<FgAbGroup> = abelian_groups_of_order(n)
                .into_iter()
                .map(|m| FgAbGroup::from_cyclic_orders(0, m.into_iter().map(Into::into)))
                .collect();
            gs.sort();
            (n, gs)
        })
        .collect()
}
