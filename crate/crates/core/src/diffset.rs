//! Restriction sets `M ⊂ ℕ` for smallest parts and part differences.
//!
//! A [`DiffSet`] is a finite set together with finitely many arithmetic
//! progressions `{start + t·step : t ≥ 0}`. The textual form accepted by
//! [`DiffSet::parse`] (and by the CLI `--set` flag) is a `|`-separated union
//! of clauses:
//!
//! | clause          | set                    |
//! |-----------------|------------------------|
//! | `all`           | ℕ = {0, 1, 2, …}       |
//! | `positive`      | ℕ₊ = {1, 2, …}         |
//! | `mult:d`        | dℕ = {0, d, 2d, …}     |
//! | `mult+:d`       | dℕ₊ = {d, 2d, …}       |
//! | `atleast:r`     | {r, r+1, …}            |
//! | `upto:r`        | {0, 1, …, r}           |
//! | `finite:a,b,…`  | {a, b, …}              |
//! | `ap:a:d`        | {a, a+d, a+2d, …}      |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DiffSetError;
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSet {
    finite: BTreeSet<u64>,
    progressions: BTreeSet<(u64, u64)>,
    spec_text: String,
}

impl DiffSet {
    pub fn parse(spec: &str) -> Result<Self, DiffSetError> {
        let mut finite = BTreeSet::new();
        let mut progressions = BTreeSet::new();
        let mut offset = 0;
        for clause in spec.split('|') {
            parse_clause(clause, offset, &mut finite, &mut progressions)?;
            offset += clause.len() + 1;
        }
        Ok(Self::build(finite, progressions, spec.trim().to_string()))
    }

    pub fn from_parts(
        finite: impl IntoIterator<Item = u64>,
        progressions: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, DiffSetError> {
        let finite: BTreeSet<u64> = finite.into_iter().collect();
        let progressions: BTreeSet<(u64, u64)> = progressions.into_iter().collect();
        if progressions.iter().any(|&(_, step)| step == 0) {
            return Err(DiffSetError::ZeroStep { position: 0 });
        }
        let mut set = Self::build(finite, progressions, String::new());
        set.spec_text = set.canonical_spec();
        Ok(set)
    }

    fn build(mut finite: BTreeSet<u64>, progressions: BTreeSet<(u64, u64)>, spec_text: String) -> Self {
        finite.retain(|&k| !progressions.iter().any(|&(a, d)| in_progression(k, a, d)));
        DiffSet { finite, progressions, spec_text }
    }

    pub fn all() -> Self {
        Self::parse("all").expect("literal spec")
    }

    pub fn positive() -> Self {
        Self::parse("positive").expect("literal spec")
    }

    pub fn finite(&self) -> &BTreeSet<u64> {
        &self.finite
    }

    pub fn progressions(&self) -> &BTreeSet<(u64, u64)> {
        &self.progressions
    }

    /// The text this set was parsed from.
    pub fn spec_text(&self) -> &str {
        &self.spec_text
    }

    pub fn contains(&self, k: i64) -> bool {
        if k < 0 {
            return false;
        }
        self.contains_nat(k as u64)
    }

    pub fn contains_nat(&self, k: u64) -> bool {
        self.finite.contains(&k) || self.progressions.iter().any(|&(a, d)| in_progression(k, a, d))
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_nat(0)
    }

    /// Membership flags for `0..len`, for hot loops.
    pub fn membership_table(&self, len: usize) -> Vec<bool> {
        (0..len as u64).map(|k| self.contains_nat(k)).collect()
    }

    /// Elements of the set that are at most `bound`, ascending.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&k| self.contains_nat(k)).collect()
    }

    /// `χ_M = Σ_{m∈M} q^m` truncated at `order`.
    pub fn indicator_series(&self, order: usize) -> PowerSeries {
        PowerSeries::from_fn(order, |k| i64::from(self.contains_nat(k as u64)))
    }

    /// A spec using only `finite:` and `ap:` clauses that parses back to the same set.
    pub fn canonical_spec(&self) -> String {
        let mut clauses = Vec::new();
        if !self.finite.is_empty() {
            let items: Vec<String> = self.finite.iter().map(u64::to_string).collect();
            clauses.push(format!("finite:{}", items.join(",")));
        }
        for &(a, d) in &self.progressions {
            clauses.push(format!("ap:{a}:{d}"));
        }
        if clauses.is_empty() {
            // Only reachable through `from_parts`; the grammar cannot express ∅.
            return String::new();
        }
        clauses.join("|")
    }

    /// Extensional equality on `0..=bound`.
    pub fn agrees_up_to(&self, other: &DiffSet, bound: u64) -> bool {
        (0..=bound).all(|k| self.contains_nat(k) == other.contains_nat(k))
    }

    /// If the set is exactly `dℕ` for some `d ≥ 1`, returns `d`.
    pub fn as_multiples(&self) -> Option<u64> {
        match (self.finite.is_empty(), self.progressions.len()) {
            (true, 1) => {
                let &(a, d) = self.progressions.iter().next()?;
                (a == 0).then_some(d)
            }
            _ => None,
        }
    }

    pub fn is_positive_integers(&self) -> bool {
        self.finite.is_empty() && self.progressions.len() == 1 && self.progressions.contains(&(1, 1))
    }
}

fn in_progression(k: u64, start: u64, step: u64) -> bool {
    k >= start && (k - start).is_multiple_of(step)
}

fn parse_clause(
    clause: &str,
    offset: usize,
    finite: &mut BTreeSet<u64>,
    progressions: &mut BTreeSet<(u64, u64)>,
) -> Result<(), DiffSetError> {
    let lead = clause.len() - clause.trim_start().len();
    let body = clause.trim();
    let pos = offset + lead;
    if body.is_empty() {
        return Err(syntax(pos, "empty clause"));
    }
    let (keyword, args) = match body.find(':') {
        Some(i) => (&body[..i], Some((&body[i + 1..], pos + i + 1))),
        None => (body, None),
    };
    let no_args = |args: Option<(&str, usize)>| match args {
        None => Ok(()),
        Some((_, p)) => Err(syntax(p, &format!("`{keyword}` takes no argument"))),
    };
    match keyword {
        "all" => {
            no_args(args)?;
            progressions.insert((0, 1));
        }
        "positive" => {
            no_args(args)?;
            progressions.insert((1, 1));
        }
        "mult" | "mult+" => {
            let (text, p) = args.ok_or_else(|| syntax(pos + body.len(), "expected `:d`"))?;
            let d = number(text, p)?;
            if d == 0 {
                return Err(DiffSetError::ZeroStep { position: pos });
            }
            progressions.insert(if keyword == "mult" { (0, d) } else { (d, d) });
        }
        "atleast" => {
            let (text, p) = args.ok_or_else(|| syntax(pos + body.len(), "expected `:r`"))?;
            progressions.insert((number(text, p)?, 1));
        }
        "upto" => {
            let (text, p) = args.ok_or_else(|| syntax(pos + body.len(), "expected `:r`"))?;
            finite.extend(0..=number(text, p)?);
        }
        "finite" => {
            let (text, p) = args.ok_or_else(|| syntax(pos + body.len(), "expected `:a,b,...`"))?;
            let mut item_pos = p;
            for item in text.split(',') {
                finite.insert(number(item, item_pos)?);
                item_pos += item.len() + 1;
            }
        }
        "ap" => {
            let (text, p) = args.ok_or_else(|| syntax(pos + body.len(), "expected `:a:d`"))?;
            let Some(colon) = text.find(':') else {
                return Err(syntax(p + text.len(), "expected `:d` after the start"));
            };
            let start = number(&text[..colon], p)?;
            let step = number(&text[colon + 1..], p + colon + 1)?;
            if step == 0 {
                return Err(DiffSetError::ZeroStep { position: pos });
            }
            progressions.insert((start, step));
        }
        other => {
            return Err(syntax(pos, &format!("unknown clause `{other}`")));
        }
    }
    Ok(())
}

fn number(text: &str, position: usize) -> Result<u64, DiffSetError> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    if t.is_empty() {
        return Err(syntax(position + lead, "expected a nonnegative integer"));
    }
    t.parse::<u64>()
        .map_err(|_| syntax(position + lead, &format!("`{t}` is not a nonnegative integer")))
}

fn syntax(position: usize, message: &str) -> DiffSetError {
    DiffSetError::Syntax { position, message: message.to_string() }
}

impl FromStr for DiffSet {
    type Err = DiffSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DiffSet::parse(s)
    }
}

impl fmt::Display for DiffSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_text)
    }
}

#[derive(Serialize, Deserialize)]
struct DiffSetJson {
    finite: Vec<u64>,
    progressions: Vec<[u64; 2]>,
}

impl Serialize for DiffSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DiffSetJson {
            finite: self.finite.iter().copied().collect(),
            progressions: self.progressions.iter().map(|&(a, d)| [a, d]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiffSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DiffSetJson::deserialize(deserializer)?;
        DiffSet::from_parts(raw.finite, raw.progressions.into_iter().map(|[a, d]| (a, d)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> DiffSet {
        DiffSet::parse(s).unwrap()
    }

    #[test]
    fn named_families() {
        let even = set("mult:2");
        assert!(even.contains(0) && even.contains(4) && !even.contains(3));
        assert_eq!(set("upto:1").elements_up_to(10), vec![0, 1]);
        assert!(!set("positive").contains(0));
        assert!(set("mult:2").contains(6));
        assert!(!set("atleast:2").contains(1) && set("atleast:2").contains(2));
        assert_eq!(set("mult+:3").elements_up_to(10), vec![3, 6, 9]);
        assert_eq!(set("all").elements_up_to(3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn unions() {
        let m = set("finite:1,3|ap:10:5");
        assert_eq!(m.elements_up_to(25), vec![1, 3, 10, 15, 20, 25]);
        assert!(!m.contains(-1));
    }

    #[test]
    fn canonicalization_drops_covered_elements() {
        let m = set("finite:0,2,3|mult:2");
        assert_eq!(m.finite().iter().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(m.canonical_spec(), "finite:3|ap:0:2");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            DiffSet::parse("mult:0"),
            Err(DiffSetError::ZeroStep { position: 0 })
        );
        assert!(matches!(DiffSet::parse("ap:3:0"), Err(DiffSetError::ZeroStep { .. })));
        assert!(matches!(
            DiffSet::parse("all|bogus"),
            Err(DiffSetError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            DiffSet::parse("finite:1,x"),
            Err(DiffSetError::Syntax { position: 9, .. })
        ));
        assert!(matches!(DiffSet::parse(""), Err(DiffSetError::Syntax { position: 0, .. })));
        assert!(matches!(DiffSet::parse("all:3"), Err(DiffSetError::Syntax { position: 4, .. })));
        assert!(matches!(DiffSet::parse("mult"), Err(DiffSetError::Syntax { .. })));
    }

    #[test]
    fn indicator_series_matches_membership() {
        let s = set("positive").indicator_series(4);
        assert_eq!(s.coeffs_i64(), vec![0, 1, 1, 1, 1]);
        let s = set("mult+:2").indicator_series(5);
        assert_eq!(s.coeffs_i64(), vec![0, 0, 1, 0, 1, 0]);
        let s = set("upto:1").indicator_series(5);
        assert_eq!(s.coeffs_i64(), vec![1, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn json_form() {
        let m = set("finite:1,3|ap:10:5");
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"finite":[1,3],"progressions":[[10,5]]}"#);
        let back: DiffSet = serde_json::from_str(&text).unwrap();
        assert!(back.agrees_up_to(&m, 200));
        assert!(serde_json::from_str::<DiffSet>(r#"{"finite":[],"progressions":[[1,0]]}"#).is_err());
    }

    #[test]
    fn shape_queries() {
        assert_eq!(set("mult:3").as_multiples(), Some(3));
        assert_eq!(set("all").as_multiples(), Some(1));
        assert_eq!(set("mult+:3").as_multiples(), None);
        assert!(set("atleast:1").is_positive_integers());
        assert!(!set("upto:1").is_positive_integers());
    }
}
