//! Weyl groups of classical type as (signed) permutations, and explicit
//! lifts of their elements to monomial matrices in `SL_n`, `SO_{2n+1}`,
//! `Sp_{2n}` and `SO_{2n}`.
//!
//! For `SO` and `Sp` the torus is `diag(t_1, …, t_n, [1,] t_n⁻¹, …, t_1⁻¹)`,
//! so the mirror of index `i` is `2n−1−i` (or `2n−i` with a middle index).

use std::fmt;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::types::{Family, RootSystemType};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::monomial::{Form, MonomialMatrix};
use crate::qz::Qz;

/// `w·e_j = θ_j·e_{σ(j)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    sigma: Vec<usize>,
    theta: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(sigma: Vec<usize>, theta: Vec<i8>) -> Result<Self> {
        check_permutation(&sigma)?;
        if theta.len() != sigma.len() {
            return Err(Error::DimensionMismatch {
                expected: sigma.len(),
                found: theta.len(),
            });
        }
        if theta.iter().any(|&t| t != 1 && t != -1) {
            return Err(Error::InvalidElement(format!(
                "signs must be ±1, got {theta:?}"
            )));
        }
        Ok(SignedPermutation { sigma, theta })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            sigma: (0..n).collect(),
            theta: vec![1; n],
        }
    }

    /// From 1-based cycles, e.g. `[[1, 2], [3]]`, and signs.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>], theta: Vec<i8>) -> Result<Self> {
        Self::new(permutation_from_cycles(n, cycles)?, theta)
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn theta(&self) -> &[i8] {
        &self.theta
    }

    pub fn minus_count(&self) -> usize {
        self.theta.iter().filter(|&&t| t < 0).count()
    }

    pub fn is_even(&self) -> bool {
        self.minus_count().is_multiple_of(2)
    }

    /// Cycles of `σ` including fixed points, each starting at its least index.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        cycles_of(&self.sigma)
    }

    pub fn cycle_signs(&self) -> Vec<i8> {
        self.cycles()
            .iter()
            .map(|c| c.iter().map(|&j| self.theta[j]).product())
            .collect()
    }

    /// Every cycle (fixed points included) has sign product `−1`.
    pub fn check_condition2(&self) -> bool {
        self.cycle_signs().iter().all(|&s| s == -1)
    }

    /// The `n×n` signed permutation matrix.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.n();
        IntMatrix::from_fn(n, |i, j| {
            if self.sigma[j] == i {
                self.theta[j].into()
            } else {
                0.into()
            }
        })
    }

    /// All `n!·2ⁿ` signed permutations.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let perms = permutations(n);
        let mut out = Vec::with_capacity(perms.len() << n);
        for sigma in perms {
            for mask in 0u32..(1 << n) {
                let theta = (0..n)
                    .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                    .collect();
                out.push(SignedPermutation {
                    sigma: sigma.clone(),
                    theta,
                });
            }
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(rng);
        let theta = (0..n)
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        SignedPermutation { sigma, theta }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let items: Vec<String> = c.iter().map(|j| (j + 1).to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        let signs: String = self
            .theta
            .iter()
            .map(|&t| if t > 0 { '+' } else { '-' })
            .collect();
        write!(f, " {signs}")
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            sigma: Vec<usize>,
            theta: &'a [i8],
        }
        Repr {
            sigma: self.sigma.iter().map(|s| s + 1).collect(),
            theta: &self.theta,
        }
        .serialize(s)
    }
}

pub fn check_condition2(sp: &SignedPermutation) -> bool {
    sp.check_condition2()
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidElement(format!(
                "{sigma:?} is not a permutation of 0..{n}"
            )));
        }
    }
    Ok(())
}

fn cycles_of(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            c.push(j);
            j = sigma[j];
        }
        out.push(c);
    }
    out
}

/// Builds `σ` on `0..n` from 1-based cycles; unlisted points are fixed.
pub fn permutation_from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>> {
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    for c in cycles {
        for (k, &a) in c.iter().enumerate() {
            if a == 0 || a > n || std::mem::replace(&mut used[a - 1], true) {
                return Err(Error::InvalidElement(format!(
                    "bad cycle {c:?} for a permutation of 1..{n}"
                )));
            }
            sigma[a - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    Ok(sigma)
}

/// Parses cycle notation such as `(1 2)(3)`, `(1,2,3)` or `(123)`.
/// Digits without separators are read one per point when `n < 10`.
pub fn parse_cycles(s: &str, n: usize) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Parse(format!("cannot parse cycles {s:?}"));
    let s = s.trim();
    if s.is_empty() || s == "()" || s.eq_ignore_ascii_case("id") {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        rest = rest.trim_start();
        let inner_end = rest.find(')').ok_or_else(bad)?;
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let inner = &rest[1..inner_end];
        let tokens: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let cycle: Vec<usize> = if tokens.len() == 1 && tokens[0].len() > 1 && n < 10 {
            tokens[0]
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        } else {
            tokens
                .iter()
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        if cycle.is_empty() {
            return Err(bad());
        }
        cycles.push(cycle);
        rest = &rest[inner_end + 1..];
    }
    Ok(cycles)
}

/// Parses signs such as `+--`, `+,-,-` or `1,-1,-1`.
pub fn parse_signs(s: &str) -> Result<Vec<i8>> {
    let bad = || Error::Parse(format!("cannot parse signs {s:?}"));
    let tokens: Vec<&str> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let one = |t: &str| match t {
        "+" | "1" | "+1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(bad()),
    };
    if tokens.len() == 1 && tokens[0].chars().all(|c| c == '+' || c == '-') {
        return Ok(tokens[0]
            .chars()
            .map(|c| if c == '+' { 1 } else { -1 })
            .collect());
    }
    tokens.into_iter().map(one).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// A Weyl group element of classical type: a permutation for `A`, a signed
/// permutation for `B`, `C` and `D`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalElement {
    Permutation(Vec<usize>),
    Signed(SignedPermutation),
}

impl ClassicalElement {
    /// Every element of the Weyl group of `t` (classical types only).
    pub fn all(t: &RootSystemType) -> Vec<ClassicalElement> {
        match t.family() {
            Family::A => permutations(t.rank() + 1)
                .into_iter()
                .map(ClassicalElement::Permutation)
                .collect(),
            Family::B | Family::C => SignedPermutation::all(t.rank())
                .into_iter()
                .map(ClassicalElement::Signed)
                .collect(),
            Family::D => SignedPermutation::all(t.rank())
                .into_iter()
                .filter(SignedPermutation::is_even)
                .map(ClassicalElement::Signed)
                .collect(),
            _ => Vec::new(),
        }
    }

    pub fn random<R: Rng + ?Sized>(t: &RootSystemType, rng: &mut R) -> Option<Self> {
        match t.family() {
            Family::A => {
                let mut sigma: Vec<usize> = (0..=t.rank()).collect();
                sigma.shuffle(rng);
                Some(ClassicalElement::Permutation(sigma))
            }
            Family::B | Family::C => Some(ClassicalElement::Signed(SignedPermutation::random(
                t.rank(),
                rng,
            ))),
            Family::D => loop {
                let sp = SignedPermutation::random(t.rank(), rng);
                if sp.is_even() {
                    return Some(ClassicalElement::Signed(sp));
                }
            },
            _ => None,
        }
    }

    /// Whether the corresponding component of `N(T)` is periodic: an
    /// `n`-cycle for `A`, condition (2) on every cycle otherwise.
    pub fn is_periodic(&self) -> bool {
        match self {
            ClassicalElement::Permutation(s) => s.len() <= 1 || cycles_of(s).len() == 1,
            ClassicalElement::Signed(sp) => sp.check_condition2(),
        }
    }
}

impl fmt::Display for ClassicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalElement::Permutation(s) => {
                for c in cycles_of(s) {
                    let items: Vec<String> = c.iter().map(|j| (j + 1).to_string()).collect();
                    write!(f, "({})", items.join(" "))?;
                }
                Ok(())
            }
            ClassicalElement::Signed(sp) => write!(f, "{sp}"),
        }
    }
}

fn unsupported(t: &RootSystemType) -> Error {
    Error::UnsupportedFamily(format!("{} ({})", t.name(), t.group_name()))
}

fn expect_permutation<'a>(t: &RootSystemType, w: &'a ClassicalElement) -> Result<&'a [usize]> {
    match w {
        ClassicalElement::Permutation(s) if s.len() == t.rank() + 1 => Ok(s),
        _ => Err(Error::InvalidElement(format!(
            "type {t} needs a permutation of {} points",
            t.rank() + 1
        ))),
    }
}

fn expect_signed<'a>(t: &RootSystemType, w: &'a ClassicalElement) -> Result<&'a SignedPermutation> {
    match w {
        ClassicalElement::Signed(sp) if sp.n() == t.rank() => {
            if t.family() == Family::D && !sp.is_even() {
                return Err(Error::InvalidElement(format!(
                    "type {t} needs an even number of minus signs, got {}",
                    sp.minus_count()
                )));
            }
            Ok(sp)
        }
        _ => Err(Error::InvalidElement(format!(
            "type {t} needs a signed permutation of {} points",
            t.rank()
        ))),
    }
}

/// An explicit monomial matrix in `SL_{n+1}`, `SO_{2n+1}`, `Sp_{2n}` or
/// `SO_{2n}` normalizing the diagonal torus and mapping to `w`.
pub fn lift_to_normalizer(t: &RootSystemType, w: &ClassicalElement) -> Result<MonomialMatrix> {
    let g = match t.family() {
        Family::A => {
            let sigma = expect_permutation(t, w)?.to_vec();
            let n = sigma.len();
            let g = MonomialMatrix::from_permutation(sigma)?;
            if g.permutation_is_odd() {
                g.with_exponent(n - 1, Qz::half())
            } else {
                g
            }
        }
        Family::B | Family::C | Family::D => {
            let sp = expect_signed(t, w)?;
            signed_lift(t.family(), sp)?
        }
        _ => return Err(unsupported(t)),
    };
    let ok = g.det_exponent().is_zero()
        && match t.family() {
            Family::B | Family::D => g.preserves_form(Form::Omega)?,
            Family::C => g.preserves_form(Form::Lambda)?,
            _ => true,
        };
    if !ok {
        return Err(Error::Inconsistent(format!(
            "lift of {w} to {} is invalid",
            t.group_name()
        )));
    }
    Ok(g)
}

fn signed_lift(family: Family, sp: &SignedPermutation) -> Result<MonomialMatrix> {
    let n = sp.n();
    let odd = family == Family::B;
    let dim = if odd { 2 * n + 1 } else { 2 * n };
    let mirror = |i: usize| dim - 1 - i;
    let mut sigma = vec![0; dim];
    let mut q = vec![Qz::zero(); dim];
    for j in 0..n {
        let s = sp.sigma[j];
        if sp.theta[j] > 0 {
            sigma[j] = s;
            sigma[mirror(j)] = mirror(s);
        } else {
            sigma[j] = mirror(s);
            sigma[mirror(j)] = s;
            if family == Family::C {
                q[j] = Qz::half();
            }
        }
    }
    if odd {
        sigma[n] = n;
        let g = MonomialMatrix::new(sigma.clone(), q.clone())?;
        if !g.det_exponent().is_zero() {
            q[n] = Qz::half();
        }
    }
    MonomialMatrix::new(sigma, q)
}

/// The Weyl group element of a monomial matrix in the normalizer, read off
/// from how it permutes the diagonal torus coordinates.
pub fn weyl_image(t: &RootSystemType, g: &MonomialMatrix) -> Result<ClassicalElement> {
    let dim = t.matrix_dim().ok_or_else(|| unsupported(t))?;
    if g.n() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: g.n(),
        });
    }
    if t.family() == Family::A {
        return Ok(ClassicalElement::Permutation(g.sigma().to_vec()));
    }
    let n = t.rank();
    let mirror = |i: usize| dim - 1 - i;
    let mut sigma = Vec::with_capacity(n);
    let mut theta = Vec::with_capacity(n);
    for j in 0..n {
        let img = g.sigma()[j];
        if img < n {
            sigma.push(img);
            theta.push(1);
        } else if dim - img <= n {
            sigma.push(mirror(img));
            theta.push(-1);
        } else {
            return Err(Error::InvalidElement(format!(
                "{g:?} does not normalize the torus of {}",
                t.group_name()
            )));
        }
    }
    Ok(ClassicalElement::Signed(SignedPermutation::new(
        sigma, theta,
    )?))
}

/// Order of every element of the periodic component over `w`: `n` or `2n`
/// for an `n`-cycle in `SL_n`; `2·lcm(s_j)` in `SO`; `4·lcm(s_j)` in `Sp`,
/// where `s_j` are the cycle lengths.
pub fn lift_order_rule(t: &RootSystemType, w: &ClassicalElement) -> Result<u64> {
    let not_periodic = |why: String| Err(Error::NonPeriodic(format!("{w} in {t}: {why}")));
    match t.family() {
        Family::A => {
            let sigma = expect_permutation(t, w)?;
            let n = sigma.len() as u64;
            if !w.is_periodic() {
                return not_periodic(format!("not a {n}-cycle"));
            }
            Ok(if n % 2 == 1 { n } else { 2 * n })
        }
        Family::B | Family::C | Family::D => {
            let sp = expect_signed(t, w)?;
            if !sp.check_condition2() {
                return not_periodic("some cycle has sign product +1".into());
            }
            let l = sp
                .cycles()
                .iter()
                .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)));
            Ok(if t.family() == Family::C {
                4 * l
            } else {
                2 * l
            })
        }
        _ => Err(unsupported(t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn signed(n: usize, cycles: &[&[usize]], theta: &[i8]) -> SignedPermutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        SignedPermutation::from_cycles(n, &cycles, theta.to_vec()).unwrap()
    }

    #[test]
    fn condition2_examples() {
        assert!(signed(2, &[], &[-1, -1]).check_condition2());
        assert!(!signed(2, &[&[1, 2]], &[1, 1]).check_condition2());
        assert!(signed(3, &[&[1, 2]], &[1, -1, -1]).check_condition2());
    }

    #[test]
    fn condition2_matches_determinant() {
        for n in 1..=4 {
            for sp in SignedPermutation::all(n) {
                let det = sp.matrix().minus_identity().det();
                assert_eq!(sp.check_condition2(), !det.is_zero(), "{sp}");
            }
        }
    }

    #[test]
    fn a_lifts() {
        let a2 = RootSystemType::a(2);
        let g = lift_to_normalizer(&a2, &ClassicalElement::Permutation(vec![1, 2, 0])).unwrap();
        assert!(g.exponents().iter().all(Qz::is_zero));
        assert_eq!(g.order(), 3);

        let a1 = RootSystemType::a(1);
        let g = lift_to_normalizer(&a1, &ClassicalElement::Permutation(vec![1, 0])).unwrap();
        assert_eq!(
            g.to_sign_matrix().unwrap(),
            IntMatrix::from_i64(&[&[0, -1], &[1, 0]])
        );
        assert_eq!(g.order(), 4);

        let five = ClassicalElement::Permutation(vec![1, 2, 3, 4, 0]);
        assert_eq!(lift_order_rule(&RootSystemType::a(4), &five).unwrap(), 5);
    }

    #[test]
    fn c1_lift() {
        let c1 = RootSystemType::c(1);
        let w = ClassicalElement::Signed(signed(1, &[], &[-1]));
        let g = lift_to_normalizer(&c1, &w).unwrap();
        assert_eq!(
            g.to_sign_matrix().unwrap(),
            IntMatrix::from_i64(&[&[0, 1], &[-1, 0]])
        );
        assert!(g.preserves_form(Form::Lambda).unwrap());
        assert_eq!(g.order(), 4);
        assert_eq!(lift_order_rule(&c1, &w).unwrap(), 4);
    }

    #[test]
    fn order_rule_examples() {
        let d3 = RootSystemType::d(3);
        let w = ClassicalElement::Signed(signed(3, &[&[1, 2]], &[1, -1, -1]));
        assert_eq!(lift_order_rule(&d3, &w).unwrap(), 4);
        assert_eq!(lift_to_normalizer(&d3, &w).unwrap().order(), 4);

        let c2 = RootSystemType::c(2);
        let w = ClassicalElement::Signed(signed(2, &[&[1, 2]], &[1, -1]));
        assert_eq!(lift_order_rule(&c2, &w).unwrap(), 8);
        assert_eq!(lift_to_normalizer(&c2, &w).unwrap().order(), 8);
    }

    #[test]
    fn errors() {
        let w = ClassicalElement::Signed(SignedPermutation::identity(4));
        let f4 = RootSystemType::exceptional(Family::F4);
        assert!(matches!(
            lift_to_normalizer(&f4, &w),
            Err(Error::UnsupportedFamily(_))
        ));
        assert!(matches!(
            lift_order_rule(&RootSystemType::b(4), &w),
            Err(Error::NonPeriodic(_))
        ));
        let odd = ClassicalElement::Signed(signed(3, &[], &[-1, 1, 1]));
        assert!(matches!(
            lift_to_normalizer(&RootSystemType::d(3), &odd),
            Err(Error::InvalidElement(_))
        ));
    }

    #[test]
    fn lift_coherence_small() {
        for t in [
            RootSystemType::a(1),
            RootSystemType::a(3),
            RootSystemType::b(2),
            RootSystemType::b(3),
            RootSystemType::c(3),
            RootSystemType::d(3),
            RootSystemType::d(4),
        ] {
            for w in ClassicalElement::all(&t) {
                let g = lift_to_normalizer(&t, &w).unwrap();
                assert_eq!(weyl_image(&t, &g).unwrap(), w);
                if let Ok(ord) = lift_order_rule(&t, &w) {
                    assert_eq!(g.order(), ord, "{t} {w}");
                }
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(
            parse_cycles("(1 2)(3)", 3).unwrap(),
            vec![vec![1, 2], vec![3]]
        );
        assert_eq!(parse_cycles("(123)", 3).unwrap(), vec![vec![1, 2, 3]]);
        assert_eq!(parse_cycles("(1,10)", 10).unwrap(), vec![vec![1, 10]]);
        assert!(parse_cycles("(1 2", 3).is_err());
        assert_eq!(parse_signs("+--").unwrap(), vec![1, -1, -1]);
        assert_eq!(parse_signs("1,-1").unwrap(), vec![1, -1]);
        assert!(parse_signs("+x").is_err());
        assert!(permutation_from_cycles(3, &[vec![1, 1]]).is_err());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(SignedPermutation::all(3).len(), 48);
    }
}
