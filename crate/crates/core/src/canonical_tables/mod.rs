//! Canonical representatives of every Λ-module of order `p^n`, `n ≤ 4`,
//! stratified by `|(1-t)M|`, with closed-form counts and an oracle-backed
//! verifier.

mod families;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::conjugacy::{self, class_size, enumerate_units, fingerprint, orbit, Budget};
use crate::core_algebra::{arith, gl_order, unit_count, GroupShape, PolyModP, Prime};
use crate::decomposition::LambdaModule;
use crate::error::{Error, Result};

use families::{families, Family};

/// Largest `n` for which the tables are known.
pub const MAX_EXPONENT: u32 = 4;

/// Named row parameters in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Params(pub Vec<(String, u64)>);

impl Params {
    pub fn get(&self, name: &str) -> Option<u64> {
        self.0.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl std::fmt::Display for Params {
    /// `b=1;c=2`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub shape: GroupShape,
    pub family: String,
    pub parameters: Params,
    pub module: LambdaModule,
    /// `|(1-t)M|`.
    pub image_order: u64,
    pub image_log_order: u32,
    /// Distinct irreducible factors of the reduced minimal polynomial, as
    /// the family declares them.
    #[serde(skip)]
    pub factors: Vec<PolyModP>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeTotal {
    pub shape: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumTotal {
    pub image_order: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyTotal {
    pub shape: String,
    pub family: String,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub p: u64,
    pub n: u32,
    pub rows: Vec<TableRow>,
    pub shape_totals: Vec<ShapeTotal>,
    pub stratum_totals: Vec<StratumTotal>,
    pub family_totals: Vec<FamilyTotal>,
    pub grand_total: usize,
}

fn check_exponent(n: u32) -> Result<()> {
    if n > MAX_EXPONENT {
        Err(Error::UnsupportedExponent(n))
    } else {
        Ok(())
    }
}

/// Number of isomorphism classes of Λ-modules of order `p^n`.
pub fn count_modules(p: Prime, n: u32) -> Result<u128> {
    check_exponent(n)?;
    let p = p.get() as i128;
    let v = match n {
        0 => 1,
        1 => p - 1,
        2 => 2 * p * p - p - 1,
        3 => 3 * p.pow(3) - 2 * p * p - 1,
        _ => 5 * p.pow(4) - 2 * p.pow(3) - 2 * p - 1,
    };
    Ok(v as u128)
}

/// `|(1-t)M|`.
pub fn image_order(module: &LambdaModule) -> u64 {
    arith::pow(module.p(), module.image_log_order())
}

fn family_rows(p: Prime, fam: &Family) -> Result<Vec<TableRow>> {
    let shape = GroupShape::new(p, fam.layers)?;
    (fam.members)(p.get())
        .into_iter()
        .map(|mem| {
            let module = LambdaModule::from_entries(shape.clone(), &mem.entries)?;
            let k = module.image_log_order();
            Ok(TableRow {
                shape: shape.clone(),
                family: fam.id.to_string(),
                parameters: Params(mem.params.into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
                image_order: arith::pow(p.get(), k),
                image_log_order: k,
                module,
                factors: mem.factors,
            })
        })
        .collect()
}

/// One row per isomorphism class of Λ-modules of order `p^n`.
pub fn enumerate_modules(p: Prime, n: u32) -> Result<ClassificationReport> {
    check_exponent(n)?;
    let mut rows = Vec::new();
    let mut family_totals = Vec::new();
    for fam in families(n) {
        let fr = family_rows(p, &fam)?;
        let shape = GroupShape::new(p, fam.layers)?;
        family_totals.push(FamilyTotal { shape: shape.to_string(), family: fam.id.into(), count: fr.len() });
        rows.extend(fr);
    }
    let mut shape_totals: Vec<ShapeTotal> = Vec::new();
    for r in &rows {
        let name = r.shape.to_string();
        match shape_totals.iter_mut().find(|s| s.shape == name) {
            Some(s) => s.count += 1,
            None => shape_totals.push(ShapeTotal { shape: name, count: 1 }),
        }
    }
    let mut strata: BTreeMap<u64, usize> = BTreeMap::new();
    for r in &rows {
        *strata.entry(r.image_order).or_default() += 1;
    }
    Ok(ClassificationReport {
        p: p.get(),
        n,
        grand_total: rows.len(),
        rows,
        shape_totals,
        stratum_totals: strata.into_iter().map(|(image_order, count)| StratumTotal { image_order, count }).collect(),
        family_totals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<String>,
    pub status: CheckStatus,
    /// How the check was decided.
    pub method: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub p: u64,
    pub n: u32,
    pub checks: Vec<Check>,
    /// Some check was skipped, or decided without an exhaustive sweep.
    pub partial: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn check(name: &str, shape: Option<&GroupShape>, ok: bool, method: &str, detail: String) -> Check {
    Check {
        name: name.into(),
        shape: shape.map(|s| s.to_string()),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        method: method.into(),
        detail,
    }
}

fn skipped(name: &str, shape: &GroupShape, detail: String) -> Check {
    Check {
        name: name.into(),
        shape: Some(shape.to_string()),
        status: CheckStatus::Skipped,
        method: "budget".into(),
        detail,
    }
}

/// Distinct irreducible factors of the reduced minimal polynomial.
fn actual_factors(m: &LambdaModule) -> Vec<PolyModP> {
    let mut fs: Vec<PolyModP> = m.action().reduce_mod_p().min_poly().factor().into_iter().map(|(f, _)| f).collect();
    fs.sort();
    fs
}

/// Check the table for `p^n` against oracles: soundness of every row,
/// pairwise non-conjugacy, completeness, and the per-family and per-stratum
/// counts.
pub fn verify_table(p: Prime, n: u32, budget: Budget) -> Result<VerificationReport> {
    let report = enumerate_modules(p, n)?;
    let mut checks = Vec::new();
    let mut partial = false;

    let unsound: Vec<String> = report
        .rows
        .iter()
        .filter(|r| {
            !r.module.action().is_unit()
                || actual_factors(&r.module) != r.factors
                || r.module.image_log_order() != r.image_log_order
        })
        .map(|r| format!("{} {} [{}]", r.shape, r.family, r.parameters))
        .collect();
    checks.push(check(
        "soundness",
        None,
        unsound.is_empty(),
        "direct",
        if unsound.is_empty() {
            format!("{} rows are units with the declared factors", report.rows.len())
        } else {
            format!("mismatched rows: {}", unsound.join(", "))
        },
    ));

    let mut by_shape: Vec<(GroupShape, Vec<&TableRow>)> = Vec::new();
    for r in &report.rows {
        match by_shape.iter_mut().find(|(s, _)| *s == r.shape) {
            Some((_, v)) => v.push(r),
            None => by_shape.push((r.shape.clone(), vec![r])),
        }
    }
    for (shape, rows) in &by_shape {
        if shape.is_trivial() {
            checks.push(check("distinctness", Some(shape), rows.len() == 1, "direct", "zero module".into()));
            checks.push(check("completeness", Some(shape), rows.len() == 1, "direct", "zero module".into()));
        } else if budget.allows(shape) {
            checks.extend(orbit_checks(shape, rows, budget)?);
        } else if shape.is_elementary() {
            partial = true;
            checks.extend(rcf_checks(shape, rows));
        } else {
            partial = true;
            let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
            let mut clashes = 0;
            for r in rows {
                let e = seen.entry(fingerprint(r.module.action()).0).or_default();
                *e += 1;
                if *e > 1 {
                    clashes += 1;
                }
            }
            if clashes == 0 {
                checks.push(check(
                    "distinctness",
                    Some(shape),
                    true,
                    "fingerprint",
                    format!("{} rows with pairwise distinct conjugacy invariants", rows.len()),
                ));
            } else {
                checks.push(skipped(
                    "distinctness",
                    shape,
                    format!("{clashes} rows share invariants; {} units exceed the budget", unit_count(shape)),
                ));
            }
            checks.push(skipped(
                "completeness",
                shape,
                format!("{} units exceed the budget of {}", unit_count(shape), budget.0),
            ));
        }
    }

    checks.extend(count_checks(p, n, &report)?);

    Ok(VerificationReport { p: p.get(), n, partial, checks })
}

/// Per-family row counts and per-stratum counts of the generated table
/// against the closed forms.
pub fn check_counts(p: Prime, n: u32) -> Result<Vec<Check>> {
    count_checks(p, n, &enumerate_modules(p, n)?)
}

fn count_checks(p: Prime, n: u32, report: &ClassificationReport) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let pi = p.get() as i128;
    let mut bad_counts = Vec::new();
    let mut bad_strata = Vec::new();
    for fam in families(n) {
        let rows: Vec<&TableRow> = report
            .rows
            .iter()
            .filter(|r| r.family == fam.id && r.shape.layers() == GroupShape::new(p, fam.layers).unwrap().layers())
            .collect();
        if rows.len() as i128 != fam.total(pi) {
            bad_counts.push(format!("{}: {} rows, expected {}", fam.id, rows.len(), fam.total(pi)));
        }
        let mut got: BTreeMap<u32, i128> = BTreeMap::new();
        for r in &rows {
            *got.entry(r.image_log_order).or_default() += 1;
        }
        let want: BTreeMap<u32, i128> = (fam.strata)(pi).into_iter().filter(|&(_, c)| c != 0).collect();
        if got != want {
            bad_strata.push(format!("{}: {:?} vs {:?}", fam.id, got, want));
        }
    }
    let expected = count_modules(p, n)?;
    if report.grand_total as u128 != expected {
        bad_counts.push(format!("grand total {} vs {}", report.grand_total, expected));
    }
    out.push(check(
        "counts",
        None,
        bad_counts.is_empty(),
        "closed form",
        if bad_counts.is_empty() {
            format!("{} families, grand total {}", families(n).len(), report.grand_total)
        } else {
            bad_counts.join("; ")
        },
    ));
    out.push(check(
        "strata",
        None,
        bad_strata.is_empty(),
        "closed form",
        if bad_strata.is_empty() { "every family matches its strata".into() } else { bad_strata.join("; ") },
    ));

    Ok(out)
}

/// Distinctness and completeness by orbit enumeration: the rows' orbits are
/// pairwise disjoint, their sizes add up to `|GL(M)|`, and a sweep of every
/// unit finds each one in some orbit.
fn orbit_checks(shape: &GroupShape, rows: &[&TableRow], budget: Budget) -> Result<Vec<Check>> {
    let mut owner: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut overlaps = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        for a in orbit(r.module.action()) {
            if let Some(&j) = owner.get(&a) {
                overlaps.push((j, i));
                break;
            }
            owner.insert(a, i);
        }
    }
    let total = unit_count(shape);
    let mut missing = 0u64;
    let mut swept = 0u64;
    for a in enumerate_units(shape, budget)? {
        swept += 1;
        if !owner.contains_key(a.entries()) {
            missing += 1;
        }
    }
    let describe = |i: usize| format!("{} [{}]", rows[i].family, rows[i].parameters);
    Ok(vec![
        check(
            "distinctness",
            Some(shape),
            overlaps.is_empty(),
            "orbit",
            if overlaps.is_empty() {
                format!("{} pairwise disjoint orbits", rows.len())
            } else {
                let (j, i) = overlaps[0];
                format!("{} conjugate pairs, first {} ~ {}", overlaps.len(), describe(j), describe(i))
            },
        ),
        check(
            "completeness",
            Some(shape),
            missing == 0 && owner.len() as u128 == total && swept as u128 == total,
            "orbit sweep",
            format!("orbits cover {} of {} units; {} missed by the sweep", owner.len(), total, missing),
        ),
    ])
}

/// For `Z_p^n` out of budget: rows have pairwise distinct elementary
/// divisors, and their class sizes add up to `|GL(n, p)|`.
fn rcf_checks(shape: &GroupShape, rows: &[&TableRow]) -> Vec<Check> {
    let p = shape.p();
    let n = shape.rank();
    let mut seen = HashSet::new();
    let mut dup = 0;
    let mut sum: u128 = 0;
    for r in rows {
        let ed = r.module.action().reduce_mod_p().elementary_divisors();
        sum += class_size(p, n as u32, &ed);
        if !seen.insert(ed) {
            dup += 1;
        }
    }
    let order = gl_order(n as u32, p as u128);
    let types = conjugacy::rcf_types(p, n).len();
    vec![
        check(
            "distinctness",
            Some(shape),
            dup == 0,
            "rcf",
            format!("{} rows, {} repeated elementary-divisor data", rows.len(), dup),
        ),
        check(
            "completeness",
            Some(shape),
            dup == 0 && sum == order && rows.len() == types,
            "rcf class equation",
            format!("class sizes sum to {sum} of {order}; {} of {types} types", rows.len()),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(count_modules(pr(2), 4).unwrap(), 59);
        assert_eq!(count_modules(pr(2), 2).unwrap(), 5);
        assert_eq!(count_modules(pr(3), 3).unwrap(), 62);
        assert_eq!(count_modules(pr(7), 0).unwrap(), 1);
        assert!(matches!(count_modules(pr(2), 5), Err(Error::UnsupportedExponent(5))));
    }

    #[test]
    fn small_tables() {
        let r = enumerate_modules(pr(2), 1).unwrap();
        assert_eq!(r.grand_total, 1);
        assert_eq!(r.rows[0].module.action().entries(), &[1]);
        let r = enumerate_modules(pr(2), 2).unwrap();
        let got: Vec<(String, Vec<u64>)> =
            r.rows.iter().map(|r| (r.shape.to_string(), r.module.action().entries().to_vec())).collect();
        let want = vec![
            ("Z_4", vec![1]),
            ("Z_4", vec![3]),
            ("Z_2^2", vec![1, 0, 0, 1]),
            ("Z_2^2", vec![1, 1, 0, 1]),
            ("Z_2^2", vec![0, 1, 1, 1]),
        ];
        assert_eq!(got, want.into_iter().map(|(s, e)| (s.to_string(), e)).collect::<Vec<_>>());
        let orders: Vec<u64> = r.rows.iter().map(|r| r.image_order).collect();
        assert_eq!(orders, vec![1, 2, 1, 2, 4]);
    }

    #[test]
    fn image_order_examples() {
        let p = pr(2);
        let z4 = GroupShape::cyclic(p, 2).unwrap();
        assert_eq!(image_order(&LambdaModule::from_entries(z4.clone(), &[1]).unwrap()), 1);
        assert_eq!(image_order(&LambdaModule::from_entries(z4, &[3]).unwrap()), 2);
        let v = GroupShape::new(p, &[(1, 2)]).unwrap();
        assert_eq!(image_order(&LambdaModule::from_entries(v, &[0, 1, 1, 1]).unwrap()), 4);
    }

    #[test]
    fn grand_totals() {
        for p in [2, 3, 5] {
            for n in 0..=4 {
                let r = enumerate_modules(pr(p), n).unwrap();
                assert_eq!(r.grand_total as u128, count_modules(pr(p), n).unwrap(), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn family_z4_z2() {
        let r = enumerate_modules(pr(2), 3).unwrap();
        let rows: Vec<&TableRow> = r.rows.iter().filter(|r| r.shape.to_string() == "Z_4 x Z_2").collect();
        assert_eq!(rows.len(), 5);
        assert_eq!(
            conjugacy::conjugacy_classes(&rows[0].shape, &PolyModP::linear(2, 1), Budget::default())
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn verify_small() {
        for n in 0..=3 {
            let v = verify_table(pr(2), n, Budget::default()).unwrap();
            assert!(v.passed(), "{v:#?}");
            assert!(!v.partial);
        }
        let v = verify_table(pr(3), 3, Budget::default()).unwrap();
        assert!(v.passed(), "{v:#?}");
    }
}
