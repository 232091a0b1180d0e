//! Recognizing computed count sequences.
//!
//! A small curated snapshot of OEIS records ships with the crate
//! (`data/oeis_snapshot.jsonl`, one JSON object per line). Live lookups are
//! opt-in: the caller passes an explicit flag and the environment variable
//! [`NETWORK_ENV`] must be set to `1`.

use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::OeisError;

/// Environment variable that must be `1` for [`fetch_remote`] to touch the network.
pub const NETWORK_ENV: &str = "SIMCORES_NETWORK";
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(5);
pub const MIN_PREFIX: usize = 5;
pub const SEARCH_URL: &str = "https://oeis.org/search";

const SNAPSHOT: &str = include_str!("../data/oeis_snapshot.jsonl");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub id: String,
    pub name: String,
    pub values: Vec<i64>,
}

impl SequenceRecord {
    fn check(&self) -> Result<(), String> {
        let digits = self.id.strip_prefix('A').unwrap_or("");
        if digits.len() != 6 || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad id {:?}", self.id));
        }
        if self.values.is_empty() {
            return Err(format!("{} has no values", self.id));
        }
        Ok(())
    }

    /// Smallest offset `s <= max_shift` with `values[s..s+len] == prefix`.
    pub fn find(&self, prefix: &[i64], max_shift: usize) -> Option<usize> {
        (0..=max_shift).find(|&s| self.values.get(s..s + prefix.len()) == Some(prefix))
    }
}

/// Parses and validates snapshot text: one record per nonblank line,
/// at least 12 terms each, ids unique.
pub fn parse_snapshot(text: &str) -> Result<Vec<SequenceRecord>, OeisError> {
    let mut seen = HashSet::new();
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| OeisError::Snapshot { line: i + 1, reason };
        let record: SequenceRecord = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        record.check().map_err(bad)?;
        if record.values.len() < 12 {
            return Err(bad(format!("{} has fewer than 12 terms", record.id)));
        }
        if !seen.insert(record.id.clone()) {
            return Err(bad(format!("duplicate id {}", record.id)));
        }
        records.push(record);
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

/// The bundled snapshot, parsed once.
pub fn snapshot() -> &'static [SequenceRecord] {
    static RECORDS: OnceLock<Vec<SequenceRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| parse_snapshot(SNAPSHOT).expect("bundled snapshot is valid"))
}

/// Snapshot records containing `prefix` as a contiguous run that starts at
/// index `<= max_shift`, ordered by id, each with its smallest such start.
pub fn match_local(prefix: &[i64], max_shift: usize) -> Result<Vec<(SequenceRecord, usize)>, OeisError> {
    match_in(snapshot(), prefix, max_shift)
}

pub fn match_in(
    records: &[SequenceRecord],
    prefix: &[i64],
    max_shift: usize,
) -> Result<Vec<(SequenceRecord, usize)>, OeisError> {
    if prefix.len() < MIN_PREFIX {
        return Err(OeisError::PrefixTooShort { min: MIN_PREFIX, got: prefix.len() });
    }
    Ok(records.iter().filter_map(|r| r.find(prefix, max_shift).map(|s| (r.clone(), s))).collect())
}

/// Parses a search response. Accepts both the bare-array form and the older
/// `{"results": [...]}` wrapper; `null` means no hits.
pub fn parse_search_response(body: &str) -> Result<Vec<SequenceRecord>, OeisError> {
    #[derive(Deserialize)]
    struct Hit {
        number: u64,
        name: String,
        data: String,
    }
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Body {
        Hits(Vec<Hit>),
        Wrapped { results: Option<Vec<Hit>> },
    }
    let malformed = || OeisError::Malformed { excerpt: body.chars().take(200).collect() };
    let parsed: Option<Body> = serde_json::from_str(body).map_err(|_| malformed())?;
    let hits = match parsed {
        None => Vec::new(),
        Some(Body::Hits(h)) => h,
        Some(Body::Wrapped { results }) => results.unwrap_or_default(),
    };
    hits.into_iter()
        .map(|h| {
            let values = h
                .data
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| malformed())?;
            let record = SequenceRecord { id: format!("A{:06}", h.number), name: h.name, values };
            record.check().map_err(|_| malformed())?;
            Ok(record)
        })
        .collect()
}

pub fn network_enabled_by_env() -> bool {
    std::env::var(NETWORK_ENV).is_ok_and(|v| v == "1")
}

/// Queries the public OEIS search endpoint for `prefix`.
///
/// Refuses to run unless `enabled` is set and [`NETWORK_ENV`] is `1`.
pub fn fetch_remote(prefix: &[i64], timeout: Duration, enabled: bool) -> Result<Vec<SequenceRecord>, OeisError> {
    if !enabled || !network_enabled_by_env() {
        return Err(OeisError::NetworkDisabled(NETWORK_ENV));
    }
    if prefix.len() < MIN_PREFIX {
        return Err(OeisError::PrefixTooShort { min: MIN_PREFIX, got: prefix.len() });
    }
    if timeout.is_zero() {
        return Err(OeisError::Timeout);
    }
    let query: Vec<String> = prefix.iter().map(i64::to_string).collect();
    let body = http_get(&query.join(","), timeout)?;
    parse_search_response(&body)
}

#[cfg(feature = "remote")]
fn http_get(query: &str, timeout: Duration) -> Result<String, OeisError> {
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(timeout)).build().into();
    let response = agent.get(SEARCH_URL).query("q", query).query("fmt", "json").call();
    match response {
        Ok(mut r) => r.body_mut().read_to_string().map_err(|e| OeisError::Http(e.to_string())),
        Err(ureq::Error::Timeout(_)) => Err(OeisError::Timeout),
        Err(e) => Err(OeisError::Http(e.to_string())),
    }
}

#[cfg(not(feature = "remote"))]
fn http_get(_query: &str, _timeout: Duration) -> Result<String, OeisError> {
    Err(OeisError::Http("built without the `remote` feature".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(hits: &[(SequenceRecord, usize)]) -> Vec<&str> {
        hits.iter().map(|(r, _)| r.id.as_str()).collect()
    }

    #[test]
    fn snapshot_is_valid() {
        let records = snapshot();
        assert!(records.len() >= 20);
        for id in ["A000931", "A000108", "A000045", "A001764"] {
            assert!(records.iter().any(|r| r.id == id), "{id} missing");
        }
    }

    #[test]
    fn local_matches() {
        let catalan = match_local(&[1, 2, 5, 14, 42], 3).unwrap();
        assert!(ids(&catalan).contains(&"A000108"));
        assert!(match_local(&[9, 9, 9, 9, 9], 10).unwrap().is_empty());
        assert!(matches!(match_local(&[1, 2], 0), Err(OeisError::PrefixTooShort { .. })));
    }

    #[test]
    fn padovan_offsets() {
        let prefix = [1, 1, 1, 2, 2, 3, 4, 5, 7, 9];
        let hits = match_local(&prefix, 10).unwrap();
        let a931 = hits.iter().find(|(r, _)| r.id == "A000931").expect("A000931 found");
        assert_eq!(a931.1, 5);
        let spiral = hits.iter().find(|(r, _)| r.id == "A134816").expect("A134816 found");
        assert_eq!(spiral.1, 0);
    }

    #[test]
    fn snapshot_validation_errors() {
        assert!(matches!(parse_snapshot("{\"id\":\"B1\",\"name\":\"x\",\"values\":[1]}"), Err(OeisError::Snapshot { line: 1, .. })));
        let line = r#"{"id":"A000001","name":"x","values":[1,1,1,1,1,1,1,1,1,1,1,1]}"#;
        let twice = format!("{line}\n{line}\n");
        assert!(matches!(parse_snapshot(&twice), Err(OeisError::Snapshot { line: 2, .. })));
        let short = r#"{"id":"A000001","name":"x","values":[1,2,3]}"#;
        assert!(parse_snapshot(short).is_err());
    }

    #[test]
    fn search_response_forms() {
        let bare = r#"[{"number":45,"name":"Fibonacci numbers","data":"0,1,1,2,3,5,8"}]"#;
        let r = parse_search_response(bare).unwrap();
        assert_eq!(r[0].id, "A000045");
        assert_eq!(r[0].values, vec![0, 1, 1, 2, 3, 5, 8]);
        let wrapped = r#"{"results":[{"number":108,"name":"Catalan","data":"1,1,2,5"}]}"#;
        assert_eq!(parse_search_response(wrapped).unwrap()[0].id, "A000108");
        assert!(parse_search_response("null").unwrap().is_empty());
        assert!(parse_search_response(r#"{"results":null}"#).unwrap().is_empty());
        match parse_search_response("<html>busy</html>") {
            Err(OeisError::Malformed { excerpt }) => assert!(excerpt.contains("busy")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn remote_is_opt_in() {
        let prefix = [1, 1, 2, 3, 5, 8, 13, 21];
        assert!(matches!(fetch_remote(&prefix, DEFAULT_TIMEOUT, false), Err(OeisError::NetworkDisabled(_))));
    }
}
