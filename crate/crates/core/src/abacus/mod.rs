//! The n-abacus of an `(n, n+1)`-core.
//!
//! The boundary word `a_1 a_2 …` (first letter the first E step) is laid out
//! so that position `i = kn + r` with `1 <= r <= n`, `k >= 0` sits in row `r`,
//! column `k`. E steps are black beads and S steps white beads. An
//! `(n, n+1)`-core is recorded by `f(r-1)`, the first column in which row `r`
//! is black; row `r` is white in columns `0..f(r-1)` and black afterwards.
//!
//! Valid functions satisfy `f(0) = 0` and `f(k+1) <= f(k) + 1`; they are in
//! bijection with `(n, n+1)`-cores.

pub mod render;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffset::DiffSet;
use crate::error::AbacusError;
use crate::partitions::{hook_multiset, Partition};

pub use render::{render_ascii, render_svg};

/// Which gaps of the abacus are tested against the restriction set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Every gap, including the smallest part, lies in `M`.
    #[serde(rename = "Q")]
    Q,
    /// Every gap except the smallest part lies in `M`.
    #[serde(rename = "P")]
    P,
    /// All parts odd: inner gaps even, smallest part odd. Ignores `M`.
    #[serde(rename = "ODD")]
    Odd,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Q => "Q",
            Variant::P => "P",
            Variant::Odd => "ODD",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "q" => Ok(Variant::Q),
            "p" => Ok(Variant::P),
            "odd" => Ok(Variant::Odd),
            other => Err(format!("unknown variant `{other}` (expected q, p or odd)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AbacusJson", into = "AbacusJson")]
pub struct AbacusFunction {
    n: usize,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct AbacusJson {
    n: usize,
    f: Vec<usize>,
}

impl TryFrom<AbacusJson> for AbacusFunction {
    type Error = AbacusError;

    fn try_from(raw: AbacusJson) -> Result<Self, Self::Error> {
        AbacusFunction::validate(raw.n, raw.f)
    }
}

impl From<AbacusFunction> for AbacusJson {
    fn from(f: AbacusFunction) -> Self {
        AbacusJson { n: f.n, f: f.values }
    }
}

/// Totals read off an abacus: `(λ₁, ℓ(λ), |λ|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Statistics {
    pub largest: usize,
    pub length: usize,
    pub size: usize,
}

impl AbacusFunction {
    pub fn validate(n: usize, values: Vec<usize>) -> Result<Self, AbacusError> {
        if n == 0 {
            return Err(AbacusError::ZeroModulus);
        }
        if values.len() != n {
            return Err(AbacusError::Length { expected: n, found: values.len() });
        }
        if values[0] != 0 {
            return Err(AbacusError::NonZeroStart { value: values[0] });
        }
        for k in 1..n {
            if values[k] > values[k - 1] + 1 {
                return Err(AbacusError::Growth { index: k, value: values[k], previous: values[k - 1] });
            }
        }
        Ok(AbacusFunction { n, values })
    }

    /// The abacus of the empty partition.
    pub fn zero(n: usize) -> Result<Self, AbacusError> {
        Self::validate(n, vec![0; n])
    }

    pub(crate) fn from_valid(values: Vec<usize>) -> Self {
        debug_assert!(is_valid(&values), "{values:?}");
        AbacusFunction { n: values.len(), values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn max_value(&self) -> usize {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Bead colour at row `row` (1-based) and column `col` (0-based).
    pub fn is_black(&self, row: usize, col: usize) -> bool {
        col >= self.values[row - 1]
    }

    pub fn decode(&self) -> Partition {
        partition_from_gaps(&self.gap_lengths())
    }

    pub fn encode(lambda: &Partition, n: usize) -> Result<Self, AbacusError> {
        if n == 0 {
            return Err(AbacusError::ZeroModulus);
        }
        let hooks = hook_multiset(lambda);
        for modulus in [n, n + 1] {
            if hooks.contains(&modulus) {
                return Err(AbacusError::NotACore { partition: lambda.to_string(), modulus });
            }
        }
        // Boundary word: a black bead for each part, followed by the gap to the next part.
        let mut word = Vec::with_capacity(lambda.length() + lambda.largest() + 1);
        for gap in lambda.differences() {
            word.push(true);
            word.extend(std::iter::repeat_n(false, gap));
        }
        let bead = |pos: usize| word.get(pos - 1).copied().unwrap_or(true);
        let values = (1..=n)
            .map(|row| (0..).find(|&col| bead(col * n + row)).expect("word is eventually black"))
            .collect();
        let f = AbacusFunction::validate(n, values).expect("cores give valid abacus functions");
        debug_assert_eq!(&f.decode(), lambda);
        Ok(f)
    }

    /// White beads strictly between consecutive black beads, for every black
    /// bead that precedes a white one. Equals the part differences of the
    /// decoded partition, ending with its smallest part.
    pub fn gap_lengths(&self) -> Vec<usize> {
        let mut gaps = Vec::new();
        scan_gaps(&self.values, |gap, _| {
            gaps.push(gap);
            true
        });
        gaps
    }

    pub fn satisfies(&self, m: &DiffSet, variant: Variant) -> bool {
        satisfies_with(&self.values, variant, |g| m.contains_nat(g as u64))
    }

    pub fn statistics(&self) -> Statistics {
        statistics_of(&self.values)
    }

    /// Parses `"n:f0,f1,..."`, e.g. `"8:0,1,2,0,0,0,1,1"`.
    pub fn parse_spec(text: &str) -> Result<Self, AbacusError> {
        let parse_err = |reason: &str| AbacusError::Parse { text: text.to_string(), reason: reason.to_string() };
        let (n_text, f_text) = text.split_once(':').ok_or_else(|| parse_err("expected `n:f0,f1,...`"))?;
        let n: usize = n_text.trim().parse().map_err(|_| parse_err("n is not a nonnegative integer"))?;
        let values = f_text
            .split(',')
            .map(|v| v.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| parse_err("values must be nonnegative integers"))?;
        Self::validate(n, values)
    }
}

impl fmt::Display for AbacusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_valid(values: &[usize]) -> bool {
    !values.is_empty() && values[0] == 0 && values.windows(2).all(|w| w[1] <= w[0] + 1)
}

/// Parts from gaps: `λ_k = g_k + g_{k+1} + … + g_ℓ`.
pub fn partition_from_gaps(gaps: &[usize]) -> Partition {
    let mut parts = vec![0; gaps.len()];
    let mut acc = 0;
    for (k, g) in gaps.iter().enumerate().rev() {
        acc += g;
        parts[k] = acc;
    }
    Partition::new(parts).expect("suffix sums of gaps with positive last gap")
}

/// Walks the beads in position order and reports each gap together with a
/// flag marking the last one. Stops early when `visit` returns false.
///
/// Only positions up to the bead after the last white are read: the last
/// white bead sits in column `max f - 1`, in the highest row attaining the
/// maximum, and the bead following it is black.
pub(crate) fn scan_gaps(values: &[usize], mut visit: impl FnMut(usize, bool) -> bool) {
    let n = values.len();
    let top = values.iter().copied().max().unwrap_or(0);
    if top == 0 {
        return;
    }
    let last_row = values.iter().rposition(|&v| v == top).expect("max exists");
    let mut run = 0;
    let mut started = false;
    for col in 0..top {
        let rows = if col + 1 == top { last_row + 1 } else { n };
        for &v in &values[..rows] {
            if col < v {
                run += 1;
            } else {
                if started && !visit(run, false) {
                    return;
                }
                started = true;
                run = 0;
            }
        }
    }
    visit(run, true);
}

pub(crate) fn satisfies_with(values: &[usize], variant: Variant, member: impl Fn(usize) -> bool) -> bool {
    let mut ok = true;
    scan_gaps(values, |gap, last| {
        ok = match (variant, last) {
            (Variant::Q, _) | (Variant::P, false) => member(gap),
            (Variant::P, true) => true,
            (Variant::Odd, false) => gap % 2 == 0,
            (Variant::Odd, true) => gap % 2 == 1,
        };
        ok
    });
    ok
}

pub(crate) fn statistics_of(values: &[usize]) -> Statistics {
    let n = values.len();
    let top = values.iter().copied().max().unwrap_or(0);
    if top == 0 {
        return Statistics::default();
    }
    let last_row = values.iter().rposition(|&v| v == top).expect("max exists");
    // The scan stops at the last white bead, so every black seen precedes a white.
    let mut blacks = 0usize;
    let mut size = 0usize;
    for col in 0..top {
        let rows = if col + 1 == top { last_row + 1 } else { n };
        for &v in &values[..rows] {
            if col < v {
                size += blacks;
            } else {
                blacks += 1;
            }
        }
    }
    Statistics { largest: values.iter().sum(), length: blacks, size }
}

/// Visits every valid abacus function on `n` indices in lexicographic order.
pub fn for_each_abacus(n: usize, visit: impl FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    for_each_completion(&[0], n, visit);
}

/// Visits every valid abacus function on `n` indices that starts with `prefix`.
/// The prefix must itself satisfy the abacus conditions.
pub fn for_each_completion(prefix: &[usize], n: usize, mut visit: impl FnMut(&[usize])) {
    assert!(is_valid(prefix) && prefix.len() <= n, "invalid prefix {prefix:?}");
    let fixed = prefix.len();
    let mut f = prefix.to_vec();
    f.resize(n, 0);
    loop {
        visit(&f);
        // Rightmost free index that can still grow.
        let Some(i) = (fixed.max(1)..n).rev().find(|&i| f[i] <= f[i - 1]) else {
            return;
        };
        f[i] += 1;
        for v in &mut f[i + 1..] {
            *v = 0;
        }
    }
}

/// Valid prefixes of length `len` (used to split the search tree).
pub fn prefixes(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len == 0 {
        return vec![Vec::new()];
    }
    for_each_abacus(len, |f| out.push(f.to_vec()));
    out
}

/// Every valid abacus function on `n` indices.
pub fn all_abaci(n: usize) -> Vec<AbacusFunction> {
    let mut out = Vec::new();
    for_each_abacus(n, |f| out.push(AbacusFunction::from_valid(f.to_vec())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::is_ab_core;

    fn abacus(values: &[usize]) -> AbacusFunction {
        AbacusFunction::validate(values.len(), values.to_vec()).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    const FIGURE: [usize; 8] = [0, 1, 2, 0, 0, 0, 1, 1];

    #[test]
    fn validation() {
        assert!(AbacusFunction::validate(2, vec![0, 1]).is_ok());
        let err = AbacusFunction::validate(2, vec![0, 2]).unwrap_err();
        assert_eq!(err.failing_index(), Some(1));
        assert!(AbacusFunction::validate(8, FIGURE.to_vec()).is_ok());
        assert_eq!(AbacusFunction::validate(2, vec![1, 1]).unwrap_err().failing_index(), Some(0));
        assert!(matches!(AbacusFunction::validate(3, vec![0]), Err(AbacusError::Length { .. })));
        assert_eq!(AbacusFunction::validate(0, vec![]), Err(AbacusError::ZeroModulus));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(abacus(&[0, 0, 0, 0]).decode(), Partition::empty());
        assert_eq!(abacus(&[0, 1]).decode(), p(&[1]));
        let lambda = abacus(&FIGURE).decode();
        assert_eq!(lambda, p(&[5, 3, 3, 3, 1, 1]));
        assert_eq!((lambda.largest(), lambda.length(), lambda.size()), (5, 6, 16));
        assert!(is_ab_core(&lambda, 8, 9));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(AbacusFunction::encode(&Partition::empty(), 5).unwrap().values(), &[0; 5]);
        assert_eq!(AbacusFunction::encode(&p(&[1]), 2).unwrap().values(), &[0, 1]);
        assert_eq!(AbacusFunction::encode(&p(&[5, 3, 3, 3, 1, 1]), 8).unwrap().values(), &FIGURE);
        assert!(matches!(
            AbacusFunction::encode(&p(&[3]), 2),
            Err(AbacusError::NotACore { modulus: 2, .. })
        ));
    }

    #[test]
    fn gaps() {
        assert!(abacus(&[0, 0, 0]).gap_lengths().is_empty());
        assert_eq!(abacus(&[0, 1]).gap_lengths(), vec![1]);
        assert_eq!(abacus(&FIGURE).gap_lengths(), vec![2, 0, 0, 2, 0, 1]);
        assert_eq!(abacus(&[0, 1, 2]).gap_lengths(), vec![2, 0, 1]);
    }

    #[test]
    fn restriction_tests() {
        let all = DiffSet::all();
        let even = DiffSet::parse("mult:2").unwrap();
        assert!(abacus(&FIGURE).satisfies(&all, Variant::Q));
        assert!(!abacus(&[0, 1]).satisfies(&even, Variant::Q));
        assert!(abacus(&[0, 1]).satisfies(&even, Variant::Odd));
        assert!(abacus(&[0, 1, 2]).satisfies(&even, Variant::Odd));
        assert!(!abacus(&[0, 1, 2]).satisfies(&DiffSet::positive(), Variant::Q));
        // P ignores the smallest part.
        assert!(abacus(&[0, 1]).satisfies(&even, Variant::P));
        assert!(abacus(&[0, 0]).satisfies(&DiffSet::parse("finite:7").unwrap(), Variant::Q));
    }

    #[test]
    fn statistics_examples() {
        assert_eq!(abacus(&[0, 0, 0]).statistics(), Statistics::default());
        assert_eq!(abacus(&FIGURE).statistics(), Statistics { largest: 5, length: 6, size: 16 });
        assert_eq!(abacus(&[0, 1]).statistics(), Statistics { largest: 1, length: 1, size: 1 });
    }

    #[test]
    fn spec_text_and_json() {
        let f = AbacusFunction::parse_spec("8:0,1,2,0,0,0,1,1").unwrap();
        assert_eq!(f.values(), &FIGURE);
        assert_eq!(f.to_string(), "8:0,1,2,0,0,0,1,1");
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"n":8,"f":[0,1,2,0,0,0,1,1]}"#);
        assert!(serde_json::from_str::<AbacusFunction>(r#"{"n":2,"f":[0,2]}"#).is_err());
        assert!(AbacusFunction::parse_spec("3;0,1,2").is_err());
        assert!(AbacusFunction::parse_spec("3:0,1,x").is_err());
    }

    #[test]
    fn enumeration_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 1..=8 {
            let mut count = 0;
            for_each_abacus(n, |_| count += 1);
            assert_eq!(count, catalan[n], "n = {n}");
        }
        let mut split = 0;
        for prefix in prefixes(4) {
            for_each_completion(&prefix, 7, |_| split += 1);
        }
        assert_eq!(split, 429);
    }
}
