use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::element::{coxeter_element, WeylElement};
use super::signed::{lift_order_rule, ClassicalElement};
use super::types::{Family, RootSystemType};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::matrix::BigIntJson;
use crate::torus::{resolve_order_constraints, Resolution};

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerationOptions {
    /// Permit the 2.9M-element E7 enumeration (roughly 250 MB of memory).
    pub allow_e7: bool,
    /// Serve the census from the closed forms instead of enumerating.
    pub closed_form: bool,
    pub exec: Execution,
}

impl EnumerationOptions {
    pub fn sequential() -> Self {
        EnumerationOptions {
            exec: Execution::Sequential,
            ..Default::default()
        }
    }
}

fn check_enumerable(t: &RootSystemType, opts: &EnumerationOptions) -> Result<()> {
    let too_large = |hint| Error::TooLarge {
        name: t.name(),
        order: t.weyl_order().to_string(),
        hint,
    };
    match t.family() {
        Family::E8 => Err(too_large("use the closed-form census instead")),
        Family::E7 if !opts.allow_e7 => Err(too_large(
            "pass the E7 opt-in flag (about 250 MB) or use the closed-form census",
        )),
        _ if t.rank() > super::element::MAX_RANK => {
            Err(too_large("only ranks up to 8 can be enumerated"))
        }
        _ if t.weyl_order() > BigInt::from(5_000_000u64) => {
            Err(too_large("enumeration is limited to 5·10⁶ elements"))
        }
        _ => Ok(()),
    }
}

/// All elements of `W`, by breadth-first closure of the identity under
/// left multiplication by simple reflections. Sorted, so the result does
/// not depend on the execution mode.
pub fn enumerate_weyl(t: &RootSystemType, opts: &EnumerationOptions) -> Result<Vec<WeylElement>> {
    check_enumerable(t, opts)?;
    let cartan = t.cartan_i64();
    let n = t.rank();
    let bound = 4 * t.coxeter_number() as i64;
    let expected: usize = (&t.weyl_order()).try_into().expect("checked size");

    let id = WeylElement::identity(n);
    let mut visited: HashSet<WeylElement> = HashSet::with_capacity(expected);
    visited.insert(id);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let candidates = opts.exec.flat_map(&frontier, |w| {
            (0..n).map(|i| w.left_reflect(i, &cartan)).collect()
        });
        frontier = candidates
            .into_iter()
            .filter(|w| visited.insert(*w))
            .collect();
        if let Some(w) = frontier.iter().find(|w| w.max_abs() > bound) {
            return Err(Error::Inconsistent(format!(
                "entry bound 4h = {bound} exceeded by {w:?}"
            )));
        }
    }
    if visited.len() != expected {
        return Err(Error::Inconsistent(format!(
            "enumerated {} elements of {t}, expected {expected}",
            visited.len()
        )));
    }
    let mut all: Vec<WeylElement> = visited.into_iter().collect();
    all.sort_unstable();
    Ok(all)
}

/// Conjugacy class of the Coxeter element, by orbit closure under
/// conjugation `w ↦ s_i w s_i`.
pub fn coxeter_class(
    t: &RootSystemType,
    opts: &EnumerationOptions,
) -> Result<HashSet<WeylElement>> {
    check_enumerable(t, opts)?;
    let cartan = t.cartan_i64();
    let c = coxeter_element(t);
    let mut class = HashSet::from([c]);
    let mut frontier = vec![c];
    while !frontier.is_empty() {
        let candidates = opts.exec.flat_map(&frontier, |w| {
            (0..t.rank())
                .map(|i| w.left_reflect(i, &cartan).right_reflect(i, &cartan))
                .collect()
        });
        frontier = candidates
            .into_iter()
            .filter(|w| class.insert(*w))
            .collect();
    }
    Ok(class)
}

pub fn coxeter_class_size(t: &RootSystemType, opts: &EnumerationOptions) -> Result<u64> {
    Ok(coxeter_class(t, opts)?.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusSource {
    Enumerated,
    ClosedForm,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    #[serde(rename = "type")]
    pub root_system: RootSystemType,
    pub group: String,
    pub rank: usize,
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
    #[serde(serialize_with = "ser_big")]
    pub weyl_order: BigInt,
    /// `g_n`: elements without eigenvalue 1, i.e. periodic components.
    #[serde(serialize_with = "ser_big")]
    pub periodic_count: BigInt,
    /// `N_c`: size of the Coxeter conjugacy class.
    #[serde(serialize_with = "ser_big")]
    pub coxeter_count: BigInt,
    /// `g_0, …, g_n`.
    #[serde(serialize_with = "ser_big_vec")]
    pub solomon_coefficients: Vec<BigInt>,
    pub source: CensusSource,
    /// Orders of lifts of powers of a Coxeter element, from divisibility.
    pub coxeter_power_orders: Resolution,
    /// For classical types of small rank: lift order → number of periodic
    /// Weyl group elements whose components have that order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift_orders: Option<BTreeMap<u64, u64>>,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    BigIntJson(v.clone()).serialize(s)
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let w: Vec<BigIntJson> = v.iter().cloned().map(BigIntJson).collect();
    w.serialize(s)
}

impl CensusReport {
    /// Checks `g_n = ∏ m_i`, `N_c = |W|/h`, `Σ g_k = |W|` and Solomon's
    /// identity term by term.
    pub fn verify(&self) -> Result<()> {
        let t = &self.root_system;
        let fail = |what: &str| Err(Error::Inconsistent(format!("{t}: {what}")));
        if self.solomon_coefficients != t.solomon_coefficients() {
            return fail("counted g_k differ from the coefficients of ∏(1 + m_i z)");
        }
        if self.periodic_count != t.periodic_count_closed_form() {
            return fail("g_n ≠ ∏ m_i");
        }
        if self.coxeter_count != t.coxeter_count_closed_form() {
            return fail("N_c ≠ |W|/h");
        }
        if self.solomon_coefficients.iter().sum::<BigInt>() != self.weyl_order {
            return fail("Σ g_k ≠ |W|");
        }
        Ok(())
    }
}

fn lift_order_histogram(t: &RootSystemType) -> Option<BTreeMap<u64, u64>> {
    if !t.family().is_classical() || t.rank() > 6 {
        return None;
    }
    let mut hist = BTreeMap::new();
    for w in ClassicalElement::all(t) {
        if let Ok(ord) = lift_order_rule(t, &w) {
            *hist.entry(ord).or_insert(0) += 1;
        }
    }
    Some(hist)
}

fn closed_form_census(t: &RootSystemType) -> CensusReport {
    CensusReport {
        root_system: *t,
        group: t.group_name(),
        rank: t.rank(),
        exponents: t.exponents(),
        coxeter_number: t.coxeter_number(),
        weyl_order: t.weyl_order(),
        periodic_count: t.periodic_count_closed_form(),
        coxeter_count: t.coxeter_count_closed_form(),
        solomon_coefficients: t.solomon_coefficients(),
        source: CensusSource::ClosedForm,
        coxeter_power_orders: resolve_order_constraints(t.coxeter_number(), &t.exponents()),
        lift_orders: lift_order_histogram(t),
    }
}

/// Census of periodic components of `N_G(T)`: `g_k` counts elements with
/// `rank(w − I) = k`, computed exactly for every element.
pub fn census(t: &RootSystemType, opts: &EnumerationOptions) -> Result<CensusReport> {
    if opts.closed_form {
        return Ok(closed_form_census(t));
    }
    let elements = enumerate_weyl(t, opts)?;
    let n = t.rank();
    let codims = opts.exec.map(&elements, |w| w.fixed_codimension());
    let mut g = vec![0u64; n + 1];
    for k in codims {
        g[k] += 1;
    }
    let coxeter_count = coxeter_class_size(t, opts)?;
    let report = CensusReport {
        weyl_order: BigInt::from(elements.len()),
        periodic_count: BigInt::from(g[n]),
        coxeter_count: BigInt::from(coxeter_count),
        solomon_coefficients: g.into_iter().map(BigInt::from).collect(),
        source: CensusSource::Enumerated,
        ..closed_form_census(t)
    };
    Ok(report)
}

/// Enumerated census where feasible under `opts`, closed form otherwise.
pub fn census_auto(t: &RootSystemType, opts: &EnumerationOptions) -> Result<CensusReport> {
    match check_enumerable(t, opts) {
        Ok(()) if !opts.closed_form => census(t, opts),
        _ => Ok(closed_form_census(t)),
    }
}

/// Aligned text table with columns `|W|`, `g_n`, `N_c`.
pub fn render_table(reports: &[CensusReport]) -> String {
    let header = ["type", "group", "|W|", "g_n", "N_c", "source"];
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            [
                r.root_system.name(),
                r.group.clone(),
                r.weyl_order.to_string(),
                r.periodic_count.to_string(),
                r.coxeter_count.to_string(),
                match r.source {
                    CensusSource::Enumerated => "enumerated".into(),
                    CensusSource::ClosedForm => "closed form".into(),
                },
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if (2..5).contains(&i) {
                    format!("{c:>w$}")
                } else {
                    format!("{c:<w$}")
                }
            })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn enumerated(name: &str) -> CensusReport {
        census(&name.parse().unwrap(), &EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let opts = EnumerationOptions::default();
        assert_eq!(
            enumerate_weyl(&RootSystemType::a(2), &opts).unwrap().len(),
            6
        );
        let g2 = RootSystemType::exceptional(Family::G2);
        assert_eq!(enumerate_weyl(&g2, &opts).unwrap().len(), 12);
    }

    #[test]
    fn modes_agree() {
        let t = RootSystemType::b(3);
        let a = enumerate_weyl(&t, &EnumerationOptions::default()).unwrap();
        let b = enumerate_weyl(&t, &EnumerationOptions::sequential()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn census_examples() {
        let a3 = enumerated("A3");
        assert_eq!(a3.periodic_count, BigInt::from(6));
        assert_eq!(a3.coxeter_count, BigInt::from(6));
        assert_eq!(enumerated("B2").periodic_count, BigInt::from(3));
        let g2 = enumerated("G2");
        assert_eq!(g2.weyl_order, BigInt::from(12));
        assert_eq!(g2.periodic_count, BigInt::from(5));
        assert_eq!(g2.coxeter_count, BigInt::from(2));
        for r in [a3, g2] {
            r.verify().unwrap();
        }
    }

    #[test]
    fn too_large() {
        let opts = EnumerationOptions::default();
        let e8 = RootSystemType::exceptional(Family::E8);
        let e7 = RootSystemType::exceptional(Family::E7);
        assert!(matches!(
            enumerate_weyl(&e8, &opts),
            Err(Error::TooLarge { .. })
        ));
        assert!(matches!(census(&e7, &opts), Err(Error::TooLarge { .. })));
        let cf = census_auto(&e8, &opts).unwrap();
        assert_eq!(cf.source, CensusSource::ClosedForm);
        cf.verify().unwrap();
    }

    #[test]
    fn coxeter_class_contains_inverse() {
        for name in ["A4", "B3", "D4", "G2", "F4"] {
            let t: RootSystemType = name.parse().unwrap();
            let class = coxeter_class(&t, &EnumerationOptions::default()).unwrap();
            assert!(class.contains(&coxeter_element(&t).inverse()), "{name}");
        }
    }

    #[test]
    fn table_rendering() {
        let g2 = enumerated("G2");
        let text = render_table(&[g2]);
        let row: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
        assert_eq!(row[2..5], ["12", "5", "2"]);
        assert_eq!(render_table(&[]).lines().count(), 1);
    }

    #[test]
    fn classical_lift_histogram() {
        let r = enumerated("C2");
        let hist = r.lift_orders.unwrap();
        assert_eq!(hist.values().sum::<u64>(), 3);
        assert_eq!(hist.get(&4), Some(&1));
        assert_eq!(hist.get(&8), Some(&2));
    }
}
