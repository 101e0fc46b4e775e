//! Partitions and Littlewood-Richardson positivity.
//!
//! A finite abelian `p`-group of type `nu` has a subgroup of type `lambda`
//! with quotient of type `mu` exactly when the Littlewood-Richardson
//! coefficient `c^nu_{lambda mu}` is positive (Green; Klein).

use std::collections::HashSet;

pub type Partition = Vec<u32>;

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

fn part(p: &[u32], i: usize) -> u32 {
    p.get(i).copied().unwrap_or(0)
}

/// All partitions of `n`, largest parts first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    bounded(n, n, usize::MAX, &[], &mut cur, &mut out);
    out
}

/// Partitions `nu` of `n` with `nu_i >= lower_i` for every `i`, with at most
/// `max_len` parts and first part at most `max_first`.
pub fn partitions_above(n: u32, lower: &[u32], max_len: usize, max_first: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    bounded(n, max_first.min(n), max_len, lower, &mut cur, &mut out);
    out
}

fn bounded(
    remaining: u32,
    max_part: u32,
    max_len: usize,
    lower: &[u32],
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    let i = cur.len();
    // the remaining lower bounds must still fit
    let need: u32 = lower.iter().skip(i).sum();
    if need > remaining {
        return;
    }
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    if i >= max_len {
        return;
    }
    let lo = part(lower, i).max(1);
    for x in (lo..=max_part.min(remaining)).rev() {
        cur.push(x);
        bounded(remaining - x, x, max_len, lower, cur, out);
        cur.pop();
    }
}

/// Sub-partitions `rho` with `rho_i <= mu_i`.
pub fn subpartitions(mu: &[u32]) -> Vec<Partition> {
    fn go(mu: &[u32], i: usize, prev: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(cur.clone());
        if i >= mu.len() {
            return;
        }
        for x in 1..=mu[i].min(prev) {
            cur.push(x);
            go(mu, i + 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(mu, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

/// Whether `c^nu_{lambda mu} > 0`.
pub fn lr_positive(lambda: &[u32], mu: &[u32], nu: &[u32]) -> bool {
    if size(nu) != size(lambda) + size(mu) {
        return false;
    }
    if (0..nu.len().max(lambda.len()).max(mu.len()))
        .any(|i| part(nu, i) < part(lambda, i) || part(nu, i) < part(mu, i))
    {
        return false;
    }
    if mu.is_empty() {
        return true;
    }
    let mut search = LrSearch {
        lambda,
        mu,
        nu,
        failed: HashSet::new(),
    };
    search.fill_row(0, &vec![0; mu.len()], &[])
}

struct LrSearch<'a> {
    lambda: &'a [u32],
    mu: &'a [u32],
    nu: &'a [u32],
    failed: HashSet<(usize, Vec<u32>, Vec<u32>)>,
}

impl LrSearch<'_> {
    /// `cum[i]` counts letter `i` used in rows above `r`; `prev` is the letter
    /// content of row `r - 1`, one entry per cell from column `lambda_{r-1}`.
    fn fill_row(&mut self, r: usize, cum: &[u32], prev: &[u32]) -> bool {
        if r == self.nu.len() {
            return cum == self.mu;
        }
        let key = (r, cum.to_vec(), prev.to_vec());
        if self.failed.contains(&key) {
            return false;
        }
        let width = (self.nu[r] - part(self.lambda, r)) as usize;
        let letters = self.mu.len().min(r + 1);
        let mut counts = vec![0u32; letters];
        let found = self.compose(r, cum, prev, width, 0, &mut counts);
        if !found {
            self.failed.insert(key);
        }
        found
    }

    // distribute `width` cells of row r among letters, largest letter first
    fn compose(
        &mut self,
        r: usize,
        cum: &[u32],
        prev: &[u32],
        width: usize,
        letter: usize,
        counts: &mut Vec<u32>,
    ) -> bool {
        let letters = counts.len();
        if letter == letters {
            if counts.iter().sum::<u32>() as usize != width {
                return false;
            }
            return self.accept_row(r, cum, prev, counts);
        }
        let used: u32 = counts[..letter].iter().sum();
        let left = width as u32 - used;
        let cap = (self.mu[letter] - cum[letter]).min(left);
        // lattice condition: letter i+1 in rows <= r at most letter i in rows < r
        let cap = if letter > 0 {
            cap.min(cum[letter - 1].saturating_sub(cum[letter]))
        } else {
            cap
        };
        for x in (0..=cap).rev() {
            counts[letter] = x;
            if self.compose(r, cum, prev, width, letter + 1, counts) {
                return true;
            }
        }
        counts[letter] = 0;
        false
    }

    fn accept_row(&mut self, r: usize, cum: &[u32], prev: &[u32], counts: &[u32]) -> bool {
        let start = part(self.lambda, r) as usize;
        let mut row = Vec::new();
        for (letter, &c) in counts.iter().enumerate() {
            row.extend(std::iter::repeat_n(letter as u32, c as usize));
        }
        // columns strictly increase downwards where the cell above is filled
        if r > 0 {
            let prev_start = part(self.lambda, r - 1) as usize;
            for (offset, &x) in row.iter().enumerate() {
                let col = start + offset;
                if col >= prev_start {
                    if let Some(&above) = prev.get(col - prev_start) {
                        if x <= above {
                            return false;
                        }
                    }
                }
            }
        }
        let mut next = cum.to_vec();
        for (i, &c) in counts.iter().enumerate() {
            next[i] += c;
        }
        self.fill_row(r + 1, &next, &row)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn small_lr_coefficients() {
        // s_1 * s_1 = s_2 + s_11
        assert!(lr_positive(&[1], &[1], &[2]));
        assert!(lr_positive(&[1], &[1], &[1, 1]));
        // s_2 * s_1 = s_3 + s_21
        assert!(lr_positive(&[2], &[1], &[3]));
        assert!(lr_positive(&[2], &[1], &[2, 1]));
        assert!(!lr_positive(&[2], &[1], &[1, 1, 1]));
        // s_11 * s_11 = s_22 + s_211 + s_1111
        assert!(lr_positive(&[1, 1], &[1, 1], &[2, 2]));
        assert!(lr_positive(&[1, 1], &[1, 1], &[2, 1, 1]));
        assert!(!lr_positive(&[1, 1], &[1, 1], &[3, 1]));
        assert!(!lr_positive(&[1, 1], &[1, 1], &[4]));
        // c^{321}_{21,21} = 2
        assert!(lr_positive(&[2, 1], &[2, 1], &[3, 2, 1]));
        assert!(!lr_positive(&[2, 1], &[2, 1], &[6]));
    }

    #[test]
    fn bounded_enumeration() {
        let ps = partitions_above(4, &[2, 1], 3, 4);
        assert_eq!(ps, vec![vec![3, 1], vec![2, 2], vec![2, 1, 1]]);
        assert_eq!(subpartitions(&[2, 1]).len(), 5);
    }
}
