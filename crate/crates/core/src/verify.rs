//! Named cross-check suites. Each compares two independent routes to the same
//! numbers and reports one line per comparison.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::abacus::Variant;
use crate::counting::{
    anderson_count, catalan, closed_form_raney, count_brute_limited, count_recurrence, count_series,
};
use crate::diffset::DiffSet;
use crate::error::CountError;
use crate::oddeven::{audit_insertion, audit_phi, count_odd_brute, oddeven_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    OracleVsRecurrence,
    GfVsRecurrence,
    OddevenIdentities,
    Bijections,
}

impl Suite {
    pub const ALL: [Suite; 4] =
        [Suite::OracleVsRecurrence, Suite::GfVsRecurrence, Suite::OddevenIdentities, Suite::Bijections];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleVsRecurrence => "oracle-vs-recurrence",
            Suite::GfVsRecurrence => "gf-vs-recurrence",
            Suite::OddevenIdentities => "oddeven-identities",
            Suite::Bijections => "bijections",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n_max: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn first_mismatch(a: &[BigUint], b: &[BigUint]) -> String {
    if a.len() != b.len() {
        return format!("lengths {} and {}", a.len(), b.len());
    }
    match a.iter().zip(b).position(|(x, y)| x != y) {
        Some(n) => format!("first mismatch at n={n}: {} vs {}", a[n], b[n]),
        None => format!("agree on 0..={}", a.len().saturating_sub(1)),
    }
}

/// Sets exercised by the counting suites; both signs of `0 ∈ M` appear.
pub const BATTERY: [&str; 12] = [
    "all",
    "positive",
    "mult:2",
    "mult:3",
    "mult+:2",
    "mult+:3",
    "atleast:2",
    "upto:1",
    "upto:2",
    "finite:1,3|ap:10:5",
    "ap:1:2",
    "finite:0,2,5|mult+:4",
];

/// Runs `suite` for `0..=n_max`. Enumeration-based suites refuse `n_max`
/// above `brute_limit`.
pub fn run(suite: Suite, n_max: usize, brute_limit: usize) -> Result<SuiteReport, CountError> {
    let checks = match suite {
        Suite::OracleVsRecurrence => oracle_vs_recurrence(n_max, brute_limit)?,
        Suite::GfVsRecurrence => gf_vs_recurrence(n_max),
        Suite::OddevenIdentities => oddeven_identities(n_max, brute_limit)?,
        Suite::Bijections => bijections(n_max, brute_limit)?,
    };
    Ok(SuiteReport { suite, n_max, checks })
}

fn battery() -> impl Iterator<Item = DiffSet> {
    BATTERY.iter().map(|s| DiffSet::parse(s).expect("battery specs parse"))
}

fn oracle_vs_recurrence(n_max: usize, limit: usize) -> Result<Vec<Check>, CountError> {
    let mut checks = Vec::new();
    let all = count_brute_limited(&DiffSet::all(), n_max, Variant::Q, limit)?;
    let cat: Vec<BigUint> = (0..=n_max as u64).map(catalan).collect();
    let anderson = (0..=n_max as u64)
        .map(|n| if n == 0 { Ok(BigUint::from(1u8)) } else { anderson_count(n, n + 1) })
        .collect::<Result<Vec<_>, _>>()?;
    checks.push(check("brute(all) = Catalan", all.values == cat, first_mismatch(&all.values, &cat)));
    checks.push(check("Anderson(n,n+1) = Catalan", anderson == cat, first_mismatch(&anderson, &cat)));
    for m in battery() {
        let brute = count_brute_limited(&m, n_max, Variant::Q, limit)?;
        let rec = count_recurrence(&m, n_max);
        checks.push(check(
            format!("brute = recurrence [{}]", m.spec_text()),
            brute.values == rec.values,
            first_mismatch(&brute.values, &rec.values),
        ));
    }
    for d in 2..=5u64 {
        let m = DiffSet::parse(&format!("mult:{d}")).expect("valid");
        let rec = count_recurrence(&m, n_max);
        let raney: Vec<BigUint> = (0..=n_max as u64).map(|n| closed_form_raney(d, n)).collect();
        checks.push(check(
            format!("recurrence = Raney [mult:{d}]"),
            rec.values == raney,
            first_mismatch(&rec.values, &raney),
        ));
    }
    Ok(checks)
}

fn gf_vs_recurrence(n_max: usize) -> Vec<Check> {
    battery()
        .map(|m| {
            let rec = count_recurrence(&m, n_max);
            let gf = count_series(&m, n_max);
            check(
                format!("series = recurrence [{}]", m.spec_text()),
                rec.values == gf.values,
                first_mismatch(&rec.values, &gf.values),
            )
        })
        .collect()
}

fn oddeven_identities(n_max: usize, limit: usize) -> Result<Vec<Check>, CountError> {
    // The table needs two extra rows for E(n+2) and CE(n+2).
    let table = oddeven_table(n_max, limit)?;
    let mut checks = Vec::new();
    let mut push_all = |name: &str, pick: &dyn Fn(&crate::oddeven::OddEvenRow) -> Option<bool>| {
        let failing: Vec<usize> = table.iter().filter(|r| pick(r) == Some(false)).map(|r| r.n).collect();
        let tested = table.iter().filter(|r| pick(r).is_some()).count();
        let detail =
            if failing.is_empty() { format!("{tested} rows") } else { format!("fails at n = {failing:?}") };
        checks.push(check(name, failing.is_empty(), detail));
    };
    push_all("E = SE + CE and O = SO + CO", &|r| Some(r.routes_agree));
    push_all("E(n+2) = 2O(n) - O(n-2)", &|r| r.theorem);
    push_all("CE(n+2) = 2CO(n) - CO(n-2)", &|r| r.ce_identity);
    push_all("SE(n) = SE(n-1) + SE(n-2)", &|r| r.se_recurrence);
    push_all("SO(n-1) = SE(n)", &|r| r.so_shift);
    let brute: Vec<BigUint> = (0..=n_max).map(|n| BigUint::from(count_odd_brute(n))).collect();
    let theorem: Vec<BigUint> = table.iter().map(|r| r.o.clone()).collect();
    checks.push(check("count_odd = brute force", brute == theorem, first_mismatch(&brute, &theorem)));
    Ok(checks)
}

fn bijections(n_max: usize, limit: usize) -> Result<Vec<Check>, CountError> {
    if n_max + 2 > limit {
        return Err(CountError::WorkLimit { n_max: n_max + 2, limit });
    }
    let domain = |e: crate::error::OddEvenError| CountError::Domain(e.to_string());
    let mut checks = Vec::new();
    for n in 1..=n_max {
        let a = audit_phi(n).map_err(domain)?;
        checks.push(check(
            format!("phi: DO({n}) -> DE({})", n + 1),
            a.passed(),
            format!("|DO|={} |DE|={} injective={} onto={}", a.domain, a.codomain, a.injective, a.onto),
        ));
    }
    for n in 1..=n_max {
        let a = audit_insertion(n).map_err(domain)?;
        checks.push(check(
            format!("insertion: CO({n}) -> CE({})", n + 2),
            a.passed(),
            format!(
                "CO={} CE(n+2)={} twice={} CE(n)={} unhit={} correction={}",
                a.co_n, a.ce_n_plus_2, a.hit_twice, a.ce_n, a.unhit, a.correction
            ),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let report = run(s, 6, 14).unwrap();
            assert!(report.passed(), "{s}: {:?}", report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(run(Suite::OracleVsRecurrence, 20, 14), Err(CountError::WorkLimit { .. })));
        assert!(matches!(run(Suite::Bijections, 13, 14), Err(CountError::WorkLimit { .. })));
    }
}
