use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntMatrix;

/// `U·A·V = diag(d)` with `U`, `V` unimodular, `d_i | d_{i+1}` and zeros last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.d)
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    /// Product of the nonzero elementary divisors.
    pub fn nonzero_product(&self) -> BigInt {
        self.d.iter().filter(|x| !x.is_zero()).product()
    }
}

struct Work {
    n: usize,
    m: Vec<BigInt>,
    u: Vec<BigInt>,
    v: Vec<BigInt>,
}

impl Work {
    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.m[i * self.n + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        for j in 0..n {
            self.m.swap(a * n + j, b * n + j);
            self.u.swap(a * n + j, b * n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.n;
        for i in 0..n {
            self.m.swap(i * n + a, i * n + b);
            self.v.swap(i * n + a, i * n + b);
        }
    }

    /// row[dst] += k·row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        let n = self.n;
        for j in 0..n {
            let dm = &self.m[src * n + j] * k;
            self.m[dst * n + j] += dm;
            let du = &self.u[src * n + j] * k;
            self.u[dst * n + j] += du;
        }
    }

    /// col[dst] += k·col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        let n = self.n;
        for i in 0..n {
            let dm = &self.m[i * n + src] * k;
            self.m[i * n + dst] += dm;
            let dv = &self.v[i * n + src] * k;
            self.v[i * n + dst] += dv;
        }
    }

    fn negate_row(&mut self, r: usize) {
        let n = self.n;
        for j in 0..n {
            self.m[r * n + j] = -&self.m[r * n + j];
            self.u[r * n + j] = -&self.u[r * n + j];
        }
    }

    /// Smallest nonzero |entry| in the trailing block, ties to the lowest
    /// (row, column).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.n {
            for j in t..self.n {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                let a = a.abs();
                if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let n = a.n();
    let id = IntMatrix::identity(n);
    let mut w = Work {
        n,
        m: a.entries().to_vec(),
        u: id.entries().to_vec(),
        v: id.entries().to_vec(),
    };

    'diag: for t in 0..n {
        loop {
            let Some((pi, pj)) = w.min_pivot(t) else {
                break 'diag;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..n {
                if w.at(i, t).is_zero() {
                    continue;
                }
                let q = w.at(i, t) / w.at(t, t);
                w.add_row(i, t, &-q);
                clean &= w.at(i, t).is_zero();
            }
            for j in t + 1..n {
                if w.at(t, j).is_zero() {
                    continue;
                }
                let q = w.at(t, j) / w.at(t, t);
                w.add_col(j, t, &-q);
                clean &= w.at(t, j).is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = w.at(t, t).clone();
            let offender =
                (t + 1..n).find(|&i| (t + 1..n).any(|j| !(w.at(i, j) % &pivot).is_zero()));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.at(t, t).is_negative() {
            w.negate_row(t);
        }
    }

    let d = (0..n).map(|i| w.at(i, i).clone()).collect();
    let to_matrix = |data: Vec<BigInt>| {
        IntMatrix::from_rows(data.chunks(n).map(|r| r.to_vec()).collect()).expect("square")
    };
    SmithForm {
        d,
        u: to_matrix(w.u),
        v: to_matrix(w.v),
    }
}
