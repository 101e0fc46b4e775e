//! Property tests for the group arithmetic. The Smith form is checked
//! against determinantal divisors computed from minors, which share no code
//! with the reduction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use cpsum::fgab::{ext1, group_from_relations, smith_form, Homomorphism};
use cpsum::{FgAbGroup, IntegerMatrix};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-bound..=bound, r * c).prop_map(move |xs| {
            IntegerMatrix::new(r, c, xs.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn group() -> impl Strategy<Value = FgAbGroup> {
    (0usize..3, proptest::collection::vec(1u64..=12, 0..4)).prop_map(|(r, orders)| {
        FgAbGroup::from_cyclic_orders(r, orders.into_iter().map(BigUint::from))
    })
}

fn finite_group() -> impl Strategy<Value = FgAbGroup> {
    proptest::collection::vec(1u64..=12, 0..4)
        .prop_map(|orders| FgAbGroup::from_cyclic_orders(0, orders.into_iter().map(BigUint::from)))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k x k` minors.
fn determinantal_divisor(m: &IntegerMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let entries = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| m[(i, j)].clone()))
                .collect();
            let sub = IntegerMatrix::new(k, k, entries).unwrap();
            g = g.gcd(&sub.determinant().unwrap());
        }
    }
    g
}

/// A unimodular `n x n` matrix as a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3), 0..8).prop_map(move |ops| {
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for (a, b, f) in ops {
            if a != b {
                let source = rows[b].clone();
                for (x, y) in rows[a].iter_mut().zip(source) {
                    *x += f * y;
                }
            } else {
                rows.swap(a, (a + 1) % n);
            }
        }
        IntegerMatrix::from_rows(n, &rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_diagonalization(m in matrix(6, 20)) {
        let s = smith_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(s.u_inverse()).unwrap(), IntegerMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(s.v_inverse()).unwrap(), IntegerMatrix::identity(m.cols()));
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn invariant_factors_match_minors(m in matrix(4, 9)) {
        let s = smith_form(&m);
        let diag = s.d.diagonal();
        let mut prefix = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prefix *= d;
            prop_assert_eq!(&prefix, &determinantal_divisor(&m, k + 1));
        }
    }

    #[test]
    fn presentation_is_invariant(
        (m, u, v) in matrix(4, 9).prop_flat_map(|m| {
            let (r, c) = (m.rows(), m.cols());
            (Just(m), unimodular(r), unimodular(c))
        })
    ) {
        prop_assert!(u.is_unimodular() && v.is_unimodular());
        let moved = u.mul(&m).unwrap().mul(&v).unwrap();
        prop_assert_eq!(
            group_from_relations(m.cols(), &m).unwrap(),
            group_from_relations(m.cols(), &moved).unwrap()
        );
    }

    #[test]
    fn direct_sum_laws(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&FgAbGroup::zero()), a.clone());
        prop_assert_eq!(
            a.direct_sum(&b).torsion_order(),
            a.torsion_order() * b.torsion_order()
        );
    }

    #[test]
    fn localizations_recover_the_group(a in group(), b in group()) {
        let mut product = BigUint::one();
        for p in a.torsion_primes() {
            let l = a.localize_at_prime(p).unwrap();
            prop_assert_eq!(l.free_rank(), a.free_rank());
            let exponent: u32 = a.p_partition(p).iter().sum();
            prop_assert_eq!(l.torsion_order(), BigUint::from(p).pow(exponent));
            product *= l.torsion_order();
            prop_assert_eq!(
                a.direct_sum(&b).localize_at_prime(p).unwrap(),
                l.direct_sum(&b.localize_at_prime(p).unwrap())
            );
        }
        prop_assert_eq!(product, a.torsion_order());
    }

    #[test]
    fn text_and_json_round_trip(a in group()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<FgAbGroup>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<FgAbGroup>(&json).unwrap(), a);
    }

    #[test]
    fn kernel_and_image_orders(
        dom in finite_group(),
        cod in finite_group(),
        seeds in proptest::collection::vec(0i64..12, 16),
    ) {
        // entry (j, i) must kill d_i: a multiple of b_j / gcd(d_i, b_j)
        let d: Vec<BigUint> = dom.invariant_factors().to_vec();
        let b: Vec<BigUint> = cod.invariant_factors().to_vec();
        let entries: Vec<BigInt> = (0..b.len())
            .flat_map(|j| (0..d.len()).map(move |i| (i, j)))
            .enumerate()
            .map(|(t, (i, j))| {
                let step = &b[j] / b[j].gcd(&d[i]);
                BigInt::from(step) * seeds[t % seeds.len()]
            })
            .collect();
        let m = IntegerMatrix::new(b.len(), d.len(), entries).unwrap();
        let f = Homomorphism::new(dom.clone(), cod.clone(), m).unwrap();
        let (ker, im, coker) = (f.kernel(), f.image(), f.cokernel());
        prop_assert_eq!(dom.torsion_order(), ker.torsion_order() * im.torsion_order());
        prop_assert_eq!(cod.torsion_order(), im.torsion_order() * coker.torsion_order());
    }

    #[test]
    fn ext_of_cyclic_is_a_quotient(m in 1u64..=12, a in group()) {
        // Ext(Z_m, A) = A / mA, the cokernel of multiplication by m
        let n = a.generator_count();
        let mut times_m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            times_m[(i, i)] = BigInt::from(m);
        }
        let f = Homomorphism::new(a.clone(), a.clone(), times_m).unwrap();
        prop_assert_eq!(ext1(&FgAbGroup::cyclic(m), &a), f.cokernel());
    }

    #[test]
    fn ext_is_additive(b1 in finite_group(), b2 in finite_group(), a in group()) {
        prop_assert_eq!(
            ext1(&b1.direct_sum(&b2), &a),
            ext1(&b1, &a).direct_sum(&ext1(&b2, &a))
        );
        prop_assert!(ext1(&FgAbGroup::free(2), &a).is_trivial());
    }
}
