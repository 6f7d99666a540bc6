mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use perikit::linalg::{char_poly, det, eval_poly, power_sum, rank, smith_normal_form};
use perikit::IntMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn square(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(lo..=hi, n * n)
        .prop_map(move |v| IntMatrix::from_fn(n, |i, j| BigInt::from(v[i * n + j])))
}

fn sized_square(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(move |n| square(n, lo, hi))
}

/// A matrix of rank at most `r`, as a product of `n×r` and `r×n` factors.
fn low_rank() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 0usize..=5).prop_flat_map(|(n, r)| {
        let r = r.min(n);
        (
            prop::collection::vec(-3i64..=3, n * r),
            prop::collection::vec(-3i64..=3, r * n),
        )
            .prop_map(move |(x, y)| {
                IntMatrix::from_fn(n, |i, j| {
                    (0..r)
                        .map(|k| BigInt::from(x[i * r + k] * y[k * n + j]))
                        .sum()
                })
            })
    })
}

/// Reduced row echelon form over `Q`, returning the pivot columns.
fn rref(a: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let n = a.n();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from(a.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Kernel basis from the free columns of the echelon form.
fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = a.n();
    let (rows, pivots) = rref(a);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

proptest! {
    #[test]
    fn det_is_multiplicative(a in square(4, -5, 5), b in square(4, -5, 5)) {
        prop_assert_eq!(det(&(&a * &b)), det(&a) * det(&b));
    }

    #[test]
    fn char_poly_at_zero(a in sized_square(6, -5, 5)) {
        let p = char_poly(&a);
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), a.n());
        let sign = if a.n() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(eval_poly(&p, &BigInt::zero()), sign * det(&a));
    }

    #[test]
    fn char_poly_trace_coefficient(a in sized_square(6, -5, 5)) {
        let p = char_poly(&a);
        prop_assert_eq!(&p.coeffs()[a.n() - 1], &(-a.trace()));
    }

    #[test]
    fn smith_form_diagonalizes(a in sized_square(5, -6, 6)) {
        let s = smith_normal_form(&a);
        prop_assert!(s.u.is_unimodular());
        prop_assert!(s.v.is_unimodular());
        prop_assert_eq!(&(&s.u * &a) * &s.v, IntMatrix::diagonal(&s.d));
        let nonzero: Vec<&BigInt> = s.d.iter().filter(|d| !d.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), rank(&a));
        for w in s.d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let product: BigInt = s.d.iter().product();
        prop_assert_eq!(product, det(&a).abs());
    }

    #[test]
    fn power_sum_telescopes(seed in any::<u64>(), n in 1usize..=4, m in 0u64..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = common::random_unimodular(n, 6, &mut rng);
        let lhs = &a.minus_identity() * &power_sum(&a, m);
        prop_assert_eq!(lhs, a.pow(m).minus_identity());
    }

    #[test]
    fn rank_plus_nullity(a in low_rank()) {
        let n = a.n();
        let basis = kernel_basis(&a);
        prop_assert_eq!(rank(&a) + basis.len(), n);
        for v in &basis {
            for i in 0..n {
                let s: BigRational = (0..n)
                    .map(|j| BigRational::from(a.get(i, j).clone()) * &v[j])
                    .sum();
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn rank_is_transpose_invariant(a in sized_square(5, -2, 2)) {
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
    }
}
