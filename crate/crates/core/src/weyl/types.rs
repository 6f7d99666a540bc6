use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::G2 => Some(2),
            Family::F4 => Some(4),
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }

    fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G",
            Family::F4 => "F",
            Family::E6 | Family::E7 | Family::E8 => "E",
        }
    }
}

/// An irreducible reduced root system, by Cartan–Killing type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family.fixed_rank() {
            Some(r) => r == rank,
            None => match family {
                Family::A | Family::B | Family::C => rank >= 1,
                Family::D => rank >= 3,
                _ => unreachable!(),
            },
        };
        if !ok {
            return Err(Error::InvalidType(format!(
                "{}{rank} is not a root system type",
                family.letter()
            )));
        }
        Ok(RootSystemType { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("valid rank")
    }
    pub fn b(rank: usize) -> Self {
        Self::new(Family::B, rank).expect("valid rank")
    }
    pub fn c(rank: usize) -> Self {
        Self::new(Family::C, rank).expect("valid rank")
    }
    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("valid rank")
    }
    pub fn exceptional(family: Family) -> Self {
        let rank = family.fixed_rank().expect("exceptional family");
        RootSystemType { family, rank }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    /// The simply connected matrix group the normalizer lives in.
    pub fn group_name(&self) -> String {
        let n = self.rank;
        match self.family {
            Family::A => format!("SL_{}", n + 1),
            Family::B => format!("SO_{}", 2 * n + 1),
            Family::C => format!("Sp_{}", 2 * n),
            Family::D => format!("SO_{}", 2 * n),
            Family::G2 => "G_2".into(),
            Family::F4 => "F_4".into(),
            Family::E6 => "E_6".into(),
            Family::E7 => "E_7".into(),
            Family::E8 => "E_8".into(),
        }
    }

    /// Dimension of the natural matrix representation used for lifts.
    pub fn matrix_dim(&self) -> Option<usize> {
        let n = self.rank;
        match self.family {
            Family::A => Some(n + 1),
            Family::B => Some(2 * n + 1),
            Family::C | Family::D => Some(2 * n),
            _ => None,
        }
    }

    /// Edges of the Dynkin diagram `(i, j)` (0-based, Bourbaki numbering)
    /// with the Cartan entries `(C_ij, C_ji)`.
    fn bonds(&self) -> Vec<(usize, usize, i64, i64)> {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, -1, -1));
        match self.family {
            Family::A => chain(n).collect(),
            Family::B => {
                // α_n short
                let mut v: Vec<_> = chain(n - 1).collect();
                if n >= 2 {
                    v.push((n - 2, n - 1, -1, -2));
                }
                v
            }
            Family::C => {
                // α_n long
                let mut v: Vec<_> = chain(n - 1).collect();
                if n >= 2 {
                    v.push((n - 2, n - 1, -2, -1));
                }
                v
            }
            Family::D => {
                let mut v: Vec<_> = chain(n - 1).collect();
                v.push((n - 3, n - 1, -1, -1));
                v
            }
            // α_1 short, α_2 long
            Family::G2 => vec![(0, 1, -3, -1)],
            Family::F4 => vec![(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)],
            Family::E6 | Family::E7 | Family::E8 => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                let mut v = vec![(0, 2, -1, -1), (1, 3, -1, -1)];
                v.extend((2..n - 1).map(|i| (i, i + 1, -1, -1)));
                v
            }
        }
    }

    /// Cartan matrix with `C_ij = 2(α_i, α_j)/(α_i, α_i)`, so that the
    /// simple reflection acts by `s_i(α_j) = α_j − C_ij·α_i`.
    pub fn cartan(&self) -> IntMatrix {
        let n = self.rank;
        let mut c = IntMatrix::identity(n).scale(&BigInt::from(2));
        for (i, j, cij, cji) in self.bonds() {
            c.set(i, j, cij.into());
            c.set(j, i, cji.into());
        }
        c
    }

    pub(crate) fn cartan_i64(&self) -> Vec<Vec<i64>> {
        self.cartan().to_i64_rows().expect("small Cartan entries")
    }

    /// Order of `s_i s_j` read from the Coxeter diagram.
    pub fn coxeter_matrix_entry(&self, i: usize, j: usize) -> u64 {
        if i == j {
            return 1;
        }
        let c = self.cartan_i64();
        match c[i][j] * c[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => panic!("Cartan product {p} is not crystallographic"),
        }
    }

    pub fn exponents(&self) -> Vec<u64> {
        let n = self.rank as u64;
        let mut e: Vec<u64> = match self.family {
            Family::A => (1..=n).collect(),
            Family::B | Family::C => (0..n).map(|i| 2 * i + 1).collect(),
            Family::D => (0..n - 1).map(|i| 2 * i + 1).chain([n - 1]).collect(),
            Family::G2 => vec![1, 5],
            Family::F4 => vec![1, 5, 7, 11],
            Family::E6 => vec![1, 4, 5, 7, 8, 11],
            Family::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            Family::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
        };
        e.sort_unstable();
        e
    }

    pub fn coxeter_number(&self) -> u64 {
        self.exponents().last().copied().expect("rank ≥ 1") + 1
    }

    /// `|W| = ∏ (m_i + 1)`.
    pub fn weyl_order(&self) -> BigInt {
        self.exponents()
            .iter()
            .map(|&m| BigInt::from(m + 1))
            .product()
    }

    /// `∏ m_i`, the number of periodic components of `N_G(T)`.
    pub fn periodic_count_closed_form(&self) -> BigInt {
        self.exponents().iter().map(|&m| BigInt::from(m)).product()
    }

    /// `|W| / h`, the number of Coxeter elements.
    pub fn coxeter_count_closed_form(&self) -> BigInt {
        self.weyl_order() / BigInt::from(self.coxeter_number())
    }

    /// Coefficients of `∏ (1 + m_i z)`, low degree first.
    pub fn solomon_coefficients(&self) -> Vec<BigInt> {
        let mut c = vec![BigInt::one()];
        for m in self.exponents() {
            let mut next = c.clone();
            next.push(BigInt::from(0));
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck * m;
            }
            c = next;
        }
        c
    }

    /// The types whose census appears in the standard table.
    pub fn table_types() -> Vec<RootSystemType> {
        let mut v = Vec::new();
        v.extend((1..=6).map(Self::a));
        v.extend((2..=6).map(Self::b));
        v.extend((2..=6).map(Self::c));
        v.extend((3..=6).map(Self::d));
        v.extend(
            [Family::G2, Family::F4, Family::E6, Family::E7, Family::E8]
                .into_iter()
                .map(Self::exceptional),
        );
        v
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    /// `"A3"`, `"b4"`, `"G2"`, `"E_8"`, `"D 5"`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .collect();
        let bad = || Error::InvalidType(format!("cannot parse root system type {s:?}"));
        let mut chars = cleaned.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let family = match (letter, rank) {
            ('A', _) => Family::A,
            ('B', _) => Family::B,
            ('C', _) => Family::C,
            ('D', _) => Family::D,
            ('G', 2) => Family::G2,
            ('F', 4) => Family::F4,
            ('E', 6) => Family::E6,
            ('E', 7) => Family::E7,
            ('E', 8) => Family::E8,
            _ => return Err(bad()),
        };
        RootSystemType::new(family, rank)
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}
