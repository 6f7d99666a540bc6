use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::auto::TorusAutomorphism;
use super::point::TorsionPoint;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::qz::Qz;

/// `G = T ∪ gT ∪ … ∪ g^{m-1}T`, restricted to torsion points of `T`.
///
/// `g` acts on `T` by `t ↦ g⁻¹tg`, written as the exponent matrix `B`, and
/// `g^m ∈ T` has exponent vector `tau0`. Construction enforces `B^m = I`
/// and `B·tau0 ≡ tau0`.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclicExtension {
    degree: u64,
    auto: TorusAutomorphism,
    tau0: TorsionPoint,
    auto_order: u64,
    /// `B^0, …, B^{m-1}`
    powers: Vec<IntMatrix>,
}

impl CyclicExtension {
    pub fn new(matrix: IntMatrix, degree: u64, tau0: TorsionPoint) -> Result<Self> {
        let auto = TorusAutomorphism::new(matrix)?;
        Self::from_automorphism(auto, degree, tau0)
    }

    pub fn from_automorphism(
        auto: TorusAutomorphism,
        degree: u64,
        tau0: TorsionPoint,
    ) -> Result<Self> {
        let n = auto.rank();
        if degree == 0 {
            return Err(Error::InvalidExtension("degree must be positive".into()));
        }
        if tau0.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: tau0.dim(),
            });
        }
        let mut powers = Vec::with_capacity(degree as usize);
        let mut p = IntMatrix::identity(n);
        let mut auto_order = None;
        for j in 0..degree {
            if j > 0 && auto_order.is_none() && p.is_identity() {
                auto_order = Some(j);
            }
            let next = &p * auto.matrix();
            powers.push(p);
            p = next;
        }
        if !p.is_identity() {
            return Err(Error::InvalidExtension(format!(
                "B^{degree} is not the identity, so g^{degree} cannot lie in T"
            )));
        }
        let auto_order = auto_order.unwrap_or(degree);
        if !auto.fixes(&tau0) {
            return Err(Error::InvalidExtension(format!(
                "B does not fix tau0 = {tau0}, but g must commute with g^{degree}"
            )));
        }
        Ok(CyclicExtension {
            degree,
            auto,
            tau0,
            auto_order,
            powers,
        })
    }

    pub fn rank(&self) -> usize {
        self.auto.rank()
    }

    /// `m`, the number of components.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn automorphism(&self) -> &TorusAutomorphism {
        &self.auto
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.auto.matrix()
    }

    pub fn tau0(&self) -> &TorsionPoint {
        &self.tau0
    }

    /// `k`, the order of `φ_g`.
    pub fn auto_order(&self) -> u64 {
        self.auto_order
    }

    /// `B^j`, `j` taken mod `m`.
    pub fn auto_power(&self, j: u64) -> &IntMatrix {
        &self.powers[(j % self.degree) as usize]
    }

    pub fn identity(&self) -> ExtElement<'_> {
        ExtElement {
            ext: self,
            i: 0,
            x: TorsionPoint::zero(self.rank()),
        }
    }

    /// `g^p · t`, normalised so that the component index lies in `[0, m)`.
    pub fn element(&self, p: u64, t: TorsionPoint) -> ExtElement<'_> {
        assert_eq!(t.dim(), self.rank(), "torsion point dimension");
        let carry = BigInt::from(p / self.degree);
        let x = if carry.is_zero() {
            t
        } else {
            &t + &self.tau0.scale(&carry)
        };
        ExtElement {
            ext: self,
            i: p % self.degree,
            x,
        }
    }

    /// Component `g^i T` is periodic iff `B^i` has no eigenvalue 1.
    pub fn is_component_periodic(&self, i: u64) -> bool {
        let bi = self.auto_power(i);
        !bi.minus_identity().det().is_zero()
    }

    pub fn periodic_components(&self) -> Vec<u64> {
        (1..self.degree)
            .filter(|&i| self.is_component_periodic(i))
            .collect()
    }

    fn component_automorphism(&self, i: u64) -> TorusAutomorphism {
        TorusAutomorphism::new(self.auto_power(i).clone()).expect("powers of B are unimodular")
    }

    /// Common order of all elements of `g^i T`.
    ///
    /// The order of `g^i` is computed exactly and then checked against a
    /// fixed pseudo-random sample of ten further elements of the component.
    pub fn component_order(&self, i: u64, exec: Execution) -> Result<u64> {
        let i = i % self.degree;
        if !self.is_component_periodic(i) {
            return Err(Error::NonPeriodic(format!(
                "B^{i} has eigenvalue 1, elements of g^{i}T have different orders"
            )));
        }
        let base = self
            .element(i, TorsionPoint::zero(self.rank()))
            .order_checked()?;
        let sample = random_points(self.rank(), 10, 24, 0x5eed_0000 + i);
        let orders = exec.map(&sample, |x| self.element(i, x.clone()).order());
        for (x, o) in sample.iter().zip(orders) {
            let o = o?;
            if o != base {
                return Err(Error::Inconsistent(format!(
                    "order of g^{i}·{x} is {o}, order of g^{i} is {base}"
                )));
            }
        }
        Ok(base)
    }

    /// Orders of `count` sampled elements of component `i`.
    pub fn sample_component_orders(
        &self,
        i: u64,
        count: usize,
        max_den: i64,
        seed: u64,
        exec: Execution,
    ) -> Result<Vec<u64>> {
        let sample = random_points(self.rank(), count, max_den, seed);
        exec.map(&sample, |x| self.element(i, x.clone()).order_checked())
            .into_iter()
            .collect()
    }

    /// `m·k`: every element of a periodic `gT` has order dividing it.
    pub fn order_bound_cor5(&self) -> u64 {
        self.degree * self.auto_order
    }

    /// `m·|χ_B(1)|`: upper bound for element orders in a periodic `gT`.
    pub fn order_bound_prop7(&self) -> Result<u64> {
        let chi = self.auto.chi_at_one();
        if chi.is_zero() {
            return Err(Error::NonPeriodic("χ_B(1) = 0".into()));
        }
        let bound = BigInt::from(self.degree) * chi.abs();
        bound
            .to_u64()
            .ok_or_else(|| Error::Inconsistent(format!("bound {bound} exceeds u64")))
    }

    /// An element `g₀ = g·x₀ ∈ gT` with `g₀^{mk} = e`.
    ///
    /// `g₀^m = g^m·P_B(x₀)`; choosing `x₀` with
    /// `Q_B(tau0 + P_B·x₀) ≡ 0 (mod 1)` puts `g₀^m` in the kernel of `Q_B`,
    /// and because `g₀^m` is fixed by `B` that kernel element has order
    /// dividing `k`. The congruence is solved through the Smith normal form
    /// of `Q_B·P_B`.
    pub fn find_mk_representative(&self) -> Result<ExtElement<'_>> {
        let b = self.matrix();
        let p = b.power_sum(self.degree);
        let q = b.power_sum(self.auto_order);
        let qp = &q * &p;
        let rhs = self.tau0.apply(&q).neg();
        let snf = smith_normal_form(&qp);
        let urhs = rhs.apply(&snf.u);
        let mut y = Vec::with_capacity(self.rank());
        for (d, r) in snf.d.iter().zip(urhs.coords()) {
            if d.is_zero() {
                if !r.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "Q_B·P_B·x ≡ -Q_B·tau0 has no solution (residue {r})"
                    )));
                }
                y.push(Qz::zero());
            } else {
                y.push(r.div_int(d));
            }
        }
        let x0 = TorsionPoint::new(y).apply(&snf.v);
        let g0 = self.element(1, x0);
        let mk = self.order_bound_cor5();
        let ord = g0.order()?;
        if !mk.is_multiple_of(ord) {
            return Err(Error::Inconsistent(format!(
                "representative has order {ord}, which does not divide m·k = {mk}"
            )));
        }
        Ok(g0)
    }
}

impl fmt::Debug for CyclicExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CyclicExtension")
            .field("rank", &self.rank())
            .field("degree", &self.degree)
            .field("matrix", self.matrix())
            .field("tau0", &self.tau0)
            .field("auto_order", &self.auto_order)
            .finish()
    }
}

/// Deterministic sample of torsion points with denominators in `1..=max_den`.
pub fn random_points(n: usize, count: usize, max_den: i64, seed: u64) -> Vec<TorsionPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coords = (0..n)
                .map(|_| {
                    let den = rng.random_range(1..=max_den);
                    Qz::from_frac(rng.random_range(0..den), den)
                })
                .collect();
            TorsionPoint::new(coords)
        })
        .collect()
}

/// `g^i · t` inside a fixed extension.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement<'a> {
    ext: &'a CyclicExtension,
    i: u64,
    x: TorsionPoint,
}

impl<'a> ExtElement<'a> {
    pub fn extension(&self) -> &'a CyclicExtension {
        self.ext
    }

    pub fn component(&self) -> u64 {
        self.i
    }

    pub fn torus_part(&self) -> &TorsionPoint {
        &self.x
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.x.is_zero()
    }

    /// `(i, x)·(j, y) = ((i+j) mod m, B^j·x + y + c·tau0)`, `c = ⌊(i+j)/m⌋`.
    pub fn mul(&self, other: &ExtElement<'a>) -> ExtElement<'a> {
        debug_assert!(std::ptr::eq(self.ext, other.ext), "same extension");
        let ext = self.ext;
        let s = self.i + other.i;
        let mut x = &self.x.apply(ext.auto_power(other.i)) + &other.x;
        if s >= ext.degree {
            x = &x + &ext.tau0;
        }
        ExtElement {
            ext,
            i: s % ext.degree,
            x,
        }
    }

    pub fn pow(&self, mut e: u64) -> ExtElement<'a> {
        let mut base = self.clone();
        let mut acc = self.ext.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Closed form: with `m' = m / gcd(i, m)`, `e^{m'}` lies in `T`, so the
    /// order is `m'` times the order of that torsion point.
    pub fn order(&self) -> Result<u64> {
        let m = self.ext.degree;
        let cycle = m / self.i.gcd(&m);
        let collapsed = self.pow(cycle);
        debug_assert_eq!(collapsed.i, 0);
        let ord = BigInt::from(cycle) * collapsed.x.order();
        ord.to_u64()
            .ok_or_else(|| Error::Inconsistent(format!("element order {ord} exceeds u64")))
    }

    /// Smallest `N` with `e^N = 1` by repeated multiplication, giving up
    /// after `cap` steps.
    pub fn order_by_iteration(&self, cap: u64) -> Result<u64> {
        let mut acc = self.clone();
        for n in 1..=cap {
            if acc.is_identity() {
                return Ok(n);
            }
            acc = acc.mul(self);
        }
        Err(Error::Inconsistent(format!(
            "no power up to {cap} of g^{}·{} is the identity",
            self.i, self.x
        )))
    }

    /// Iteration cap: `m·k·|χ(1)|` for periodic components (it bounds
    /// every legal answer), otherwise `m'` times the lcm of every
    /// denominator in play.
    pub fn iteration_cap(&self) -> u64 {
        let ext = self.ext;
        let m = ext.degree;
        if self.i != 0 && ext.is_component_periodic(self.i) {
            let chi = ext
                .component_automorphism(self.i)
                .chi_at_one()
                .abs()
                .to_u64()
                .unwrap_or(u64::MAX);
            return m.saturating_mul(ext.auto_order).saturating_mul(chi);
        }
        let cycle = m / self.i.gcd(&m);
        let l = self.x.order().lcm(&ext.tau0.order());
        l.to_u64()
            .map(|l| l.saturating_mul(cycle))
            .unwrap_or(u64::MAX)
    }

    /// Closed-form order, cross-checked by iteration.
    pub fn order_checked(&self) -> Result<u64> {
        let closed = self.order()?;
        let iterated = self.order_by_iteration(self.iteration_cap())?;
        if closed != iterated {
            return Err(Error::Inconsistent(format!(
                "closed-form order {closed} differs from iterated order {iterated}"
            )));
        }
        Ok(closed)
    }
}

impl fmt::Debug for ExtElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g^{}·{}", self.i, self.x)
    }
}

#[derive(Serialize, Deserialize)]
struct ExtensionJson {
    rank: usize,
    degree: u64,
    matrix: IntMatrix,
    tau0: Vec<Qz>,
}

impl Serialize for CyclicExtension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtensionJson {
            rank: self.rank(),
            degree: self.degree,
            matrix: self.matrix().clone(),
            tau0: self.tau0.coords().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclicExtension {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ExtensionJson::deserialize(d)?;
        if j.matrix.n() != j.rank {
            return Err(serde::de::Error::custom(format!(
                "rank is {} but the matrix is {}x{}",
                j.rank,
                j.matrix.n(),
                j.matrix.n()
            )));
        }
        CyclicExtension::new(j.matrix, j.degree, TorsionPoint::new(j.tau0))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank1(tau0: (i64, i64)) -> CyclicExtension {
        CyclicExtension::new(
            IntMatrix::from_i64(&[&[-1]]),
            2,
            TorsionPoint::from_fracs(&[tau0]),
        )
        .unwrap()
    }

    #[test]
    fn rejects_invalid() {
        let b = IntMatrix::from_i64(&[&[-1]]);
        let err = CyclicExtension::new(b.clone(), 1, TorsionPoint::zero(1)).unwrap_err();
        assert!(matches!(err, Error::InvalidExtension(_)));
        // -x ≡ x forces 2x ≡ 0
        let err =
            CyclicExtension::new(b.clone(), 2, TorsionPoint::from_fracs(&[(1, 3)])).unwrap_err();
        assert!(matches!(err, Error::InvalidExtension(_)));
        assert!(CyclicExtension::new(b, 0, TorsionPoint::zero(1)).is_err());
        assert!(
            CyclicExtension::new(IntMatrix::from_i64(&[&[2]]), 1, TorsionPoint::zero(1)).is_err()
        );
    }

    #[test]
    fn identity_has_order_one() {
        let e = rank1((0, 1));
        assert_eq!(e.identity().order_checked().unwrap(), 1);
    }

    #[test]
    fn reflections() {
        let e = rank1((0, 1));
        for x in random_points(1, 12, 20, 1) {
            assert_eq!(e.element(1, x).order_checked().unwrap(), 2);
        }
        assert_eq!(e.component_order(1, Execution::Sequential).unwrap(), 2);
    }

    #[test]
    fn sl2_coxeter_lift() {
        let e = rank1((1, 2));
        for x in random_points(1, 12, 20, 2) {
            assert_eq!(e.element(1, x).order_checked().unwrap(), 4);
        }
        assert_eq!(e.component_order(1, Execution::Parallel).unwrap(), 4);
    }

    #[test]
    fn component_zero_is_not_periodic() {
        let e = rank1((0, 1));
        assert!(matches!(
            e.component_order(0, Execution::Sequential),
            Err(Error::NonPeriodic(_))
        ));
    }

    #[test]
    fn product_rule_and_carry() {
        let e = rank1((1, 2));
        let g = e.element(1, TorsionPoint::zero(1));
        let sq = g.mul(&g);
        assert_eq!(sq.component(), 0);
        assert_eq!(sq.torus_part(), &TorsionPoint::from_fracs(&[(1, 2)]));
        assert_eq!(e.element(3, TorsionPoint::zero(1)), g.pow(3));
    }

    #[test]
    fn bounds() {
        let e = rank1((0, 1));
        assert_eq!(e.order_bound_cor5(), 4);
        assert_eq!(e.order_bound_prop7().unwrap(), 4);
    }

    #[test]
    fn mk_representative_rank1() {
        let e = rank1((0, 1));
        let g0 = e.find_mk_representative().unwrap();
        assert_eq!(g0.component(), 1);
        assert_eq!(g0.torus_part(), &TorsionPoint::zero(1));
        assert_eq!(g0.order().unwrap(), 2);

        let e = rank1((1, 2));
        let g0 = e.find_mk_representative().unwrap();
        assert_eq!(g0.order_checked().unwrap(), 4);
    }

    #[test]
    fn json_round_trip() {
        let e = rank1((1, 2));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"{"rank":1,"degree":2,"matrix":{"n":1,"rows":[[-1]]},"tau0":["1/2"]}"#
        );
        let back: CyclicExtension = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        let bad = r#"{"rank":2,"degree":2,"matrix":{"n":1,"rows":[[-1]]},"tau0":["1/2"]}"#;
        assert!(serde_json::from_str::<CyclicExtension>(bad).is_err());
    }
}
