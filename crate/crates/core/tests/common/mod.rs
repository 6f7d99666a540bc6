#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use perikit::{CyclicExtension, IntMatrix, TorsionPoint, TorusAutomorphism};
use rand::Rng;

pub fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

/// A random product of elementary and signed-swap matrices, with its inverse.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut pinv = IntMatrix::identity(n);
    if n == 1 {
        let s = if rng.random::<bool>() { 1 } else { -1 };
        return (m(&[&[s]]), m(&[&[s]]));
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (e, einv) = if rng.random_range(0..4) == 0 {
            // e_i ↔ -e_j
            let mut e = IntMatrix::identity(n);
            e.set(i, i, 0.into());
            e.set(j, j, 0.into());
            e.set(i, j, 1.into());
            e.set(j, i, (-1).into());
            (e.clone(), e.transpose())
        } else {
            let c: i64 = *[-2, -1, 1, 2].get(rng.random_range(0..4)).unwrap();
            let mut e = IntMatrix::identity(n);
            e.set(i, j, c.into());
            let mut einv = IntMatrix::identity(n);
            einv.set(i, j, (-c).into());
            (e, einv)
        };
        p = &p * &e;
        pinv = &einv * &pinv;
    }
    (p, pinv)
}

/// Finite-order integer matrices without eigenvalue 1, by rank.
pub fn periodic_models(n: usize) -> Vec<IntMatrix> {
    match n {
        1 => vec![m(&[&[-1]])],
        2 => vec![
            m(&[&[-1, 0], &[0, -1]]),
            m(&[&[0, -1], &[1, 0]]),
            m(&[&[0, -1], &[1, -1]]),
            m(&[&[0, -1], &[1, 1]]),
        ],
        3 => vec![
            m(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            m(&[&[-1, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
            m(&[&[-1, 0, 0], &[0, 0, -1], &[0, 1, -1]]),
            m(&[&[-1, 0, 0], &[0, 0, -1], &[0, 1, 1]]),
            m(&[&[0, 0, -1], &[-1, 0, 0], &[0, -1, 0]]),
            m(&[&[0, 0, -1], &[1, 0, 0], &[0, 1, 0]]),
        ],
        _ => unreachable!(),
    }
}

/// A random valid extension with a periodic generating component:
/// `n ≤ 3`, `m ≤ 12`, denominators of `tau0` at most 12.
pub fn random_periodic_extension<R: Rng>(rng: &mut R) -> CyclicExtension {
    let n = rng.random_range(1..=3);
    let models = periodic_models(n);
    let a = &models[rng.random_range(0..models.len())];
    let (p, pinv) = random_unimodular(n, 4, rng);
    let b = &(&p * a) * &pinv;
    let k = b.order(12).expect("finite order");
    let mults: Vec<u64> = (1..=12 / k).collect();
    let degree = k * mults[rng.random_range(0..mults.len())];
    let fixed = TorusAutomorphism::new(b.clone())
        .unwrap()
        .fixed_subgroup()
        .unwrap();
    let small: Vec<TorsionPoint> = fixed
        .elements()
        .into_iter()
        .filter(|x| x.order() <= BigInt::from(12))
        .collect();
    let tau0 = small[rng.random_range(0..small.len())].clone();
    CyclicExtension::new(b, degree, tau0).expect("valid by construction")
}

/// Fixed points of `x ↦ Bx` on `(Z/N)^n` by exhaustive search in machine
/// integers, as sorted numerator vectors over `N`.
pub fn brute_force_fixed(b: &[Vec<i64>], modulus: i64) -> BTreeSet<Vec<i64>> {
    let n = b.len();
    let total = (modulus as usize).pow(n as u32);
    let mut out = BTreeSet::new();
    let mut a = vec![0i64; n];
    for idx in 0..total {
        let mut r = idx;
        for slot in a.iter_mut() {
            *slot = (r % modulus as usize) as i64;
            r /= modulus as usize;
        }
        let fixed = (0..n).all(|i| {
            let s: i64 = (0..n).map(|j| b[i][j] * a[j]).sum::<i64>() - a[i];
            s.rem_euclid(modulus) == 0
        });
        if fixed {
            out.insert(a.clone());
        }
    }
    out
}

/// Numerators over `modulus` of a torsion point whose order divides it.
pub fn numerators(x: &TorsionPoint, modulus: i64) -> Vec<i64> {
    x.coords()
        .iter()
        .map(|q| {
            let num: i64 = q.numer().try_into().unwrap();
            let den: i64 = q.denom().try_into().unwrap();
            assert_eq!(modulus % den, 0);
            num * (modulus / den)
        })
        .collect()
}

/// 2×2 integer determinant, written out.
pub fn det2(a: &[Vec<i64>]) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// 3×3 integer determinant by cofactor expansion.
pub fn det3(a: &[Vec<i64>]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn det_small(a: &[Vec<i64>]) -> i64 {
    match a.len() {
        1 => a[0][0],
        2 => det2(a),
        3 => det3(a),
        _ => unimplemented!(),
    }
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

pub fn double_factorial(n: u64) -> u64 {
    (1..=n).rev().step_by(2).product()
}
