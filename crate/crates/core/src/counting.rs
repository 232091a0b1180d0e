//! Counting `(n, n+1)`-cores in `Q^M`: the recurrence, the generating-function
//! route, closed forms, statistic totals and the brute-force abacus oracle.
//!
//! Every route returns a [`CountReport`] so results can be compared and
//! serialized with their provenance.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abacus::{for_each_completion, prefixes, satisfies_with, statistics_of, Variant};
use crate::diffset::DiffSet;
use crate::error::CountError;
use crate::partitions::{partitions_of, Partition};
use crate::series::PowerSeries;

/// Default largest `n` the brute-force oracle will enumerate (Catalan(14) ≈ 2.7M abaci).
pub const DEFAULT_BRUTE_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recurrence,
    Series,
    Brute,
    Closed,
    /// Closed-form generating functions for the statistic totals.
    Formulas,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::Series => "series",
            Method::Brute => "brute",
            Method::Closed => "closed",
            Method::Formulas => "formulas",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recurrence" => Ok(Method::Recurrence),
            "series" => Ok(Method::Series),
            "brute" => Ok(Method::Brute),
            "closed" => Ok(Method::Closed),
            "formulas" => Ok(Method::Formulas),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// Sums of largest part, length and size over the counted cores, per `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Totals {
    pub largest: Vec<BigUint>,
    pub length: Vec<BigUint>,
    pub size: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub m_spec: String,
    pub variant: Variant,
    pub method: Method,
    /// Inclusive range of `n`; always starts at 0.
    pub n_range: (usize, usize),
    pub values: Vec<BigUint>,
    pub totals: Option<Totals>,
}

impl CountReport {
    fn new(m_spec: &str, variant: Variant, method: Method, values: Vec<BigUint>) -> Self {
        let n_max = values.len() - 1;
        CountReport { m_spec: m_spec.to_string(), variant, method, n_range: (0, n_max), values, totals: None }
    }

    pub fn n_max(&self) -> usize {
        self.n_range.1
    }

    pub fn value(&self, n: usize) -> &BigUint {
        &self.values[n - self.n_range.0]
    }

    /// Values as `u64`, panicking on overflow. Convenient for small ranges.
    pub fn values_u64(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.to_u64().expect("value fits in u64")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    m_spec: String,
    variant: Variant,
    method: Method,
    n_range: [usize; 2],
    values: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tl: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tp: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    ts: Option<Vec<String>>,
}

fn decimal(values: &[BigUint]) -> Vec<String> {
    values.iter().map(BigUint::to_string).collect()
}

impl Serialize for CountReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let totals = self.totals.as_ref();
        ReportJson {
            m_spec: self.m_spec.clone(),
            variant: self.variant,
            method: self.method,
            n_range: [self.n_range.0, self.n_range.1],
            values: decimal(&self.values),
            tl: totals.map(|t| decimal(&t.largest)),
            tp: totals.map(|t| decimal(&t.length)),
            ts: totals.map(|t| decimal(&t.size)),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CountReport {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = ReportJson::deserialize(deserializer)?;
        let parse = |v: &[String]| -> Result<Vec<BigUint>, D::Error> {
            v.iter().map(|s| s.parse::<BigUint>().map_err(|e| D::Error::custom(format!("{s:?}: {e}")))).collect()
        };
        let values = parse(&raw.values)?;
        if raw.n_range[1] < raw.n_range[0] || values.len() != raw.n_range[1] - raw.n_range[0] + 1 {
            return Err(D::Error::custom("values length does not match n_range"));
        }
        let totals = match (raw.tl, raw.tp, raw.ts) {
            (Some(tl), Some(tp), Some(ts)) => Some(Totals { largest: parse(&tl)?, length: parse(&tp)?, size: parse(&ts)? }),
            (None, None, None) => None,
            _ => return Err(D::Error::custom("tl, tp and ts must appear together")),
        };
        Ok(CountReport {
            m_spec: raw.m_spec,
            variant: raw.variant,
            method: raw.method,
            n_range: (raw.n_range[0], raw.n_range[1]),
            values,
            totals,
        })
    }
}

// ---------------------------------------------------------------------------
// Recurrence and generating functions

/// `C^M(0) = 1`, and for `n >= 0`
/// `C^M(n+1) = Σ_{k∈M, k≤n} C^M(k)·C^M(n-k)` when `0 ∈ M`,
/// `C^M(n+1) = 1 + Σ_{k∈M, k≤n} C^M(n-k)` when `0 ∉ M`.
pub fn count_recurrence(m: &DiffSet, n_max: usize) -> CountReport {
    let ks: Vec<usize> = m.elements_up_to(n_max as u64).into_iter().map(|k| k as usize).collect();
    let mut c: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    c.push(BigUint::one());
    let catalan_branch = m.contains_zero();
    for n in 0..n_max {
        let mut next = if catalan_branch { BigUint::zero() } else { BigUint::one() };
        for &k in ks.iter().take_while(|&&k| k <= n) {
            if catalan_branch {
                next += &c[k] * &c[n - k];
            } else {
                next += &c[n - k];
            }
        }
        c.push(next);
    }
    CountReport::new(m.spec_text(), Variant::Q, Method::Recurrence, c)
}

/// The same counts read off generating functions.
///
/// For `0 ∉ M` this is `1/((1-q)(1-qχ_M))`. For `0 ∈ M` it solves
/// `C = 1 + q·(C ⋆ χ_M)·C` one degree at a time: the degree-`d` coefficient
/// of the right side only involves coefficients of `C` below `d`.
pub fn count_series(m: &DiffSet, n_max: usize) -> CountReport {
    let chi = m.indicator_series(n_max);
    let series = if m.contains_zero() {
        let one = PowerSeries::one(n_max);
        let mut c = PowerSeries::zero(n_max);
        for d in 0..=n_max {
            let rhs = one
                .add(&c.hadamard(&chi).expect("same order").mul(&c).expect("same order").shift(1))
                .expect("same order");
            let mut coeffs = c.into_coeffs();
            coeffs[d] = rhs.coeff(d);
            c = PowerSeries::from_coeffs(n_max, coeffs);
        }
        c
    } else {
        generating_function_without_zero(&chi)
    };
    let values = series.coeffs().iter().map(to_nonnegative).collect();
    CountReport::new(m.spec_text(), Variant::Q, Method::Series, values)
}

/// `1/((1-q)(1-qχ))` at the order of `chi`.
fn generating_function_without_zero(chi: &PowerSeries) -> PowerSeries {
    let order = chi.order();
    let one_minus_q = PowerSeries::from_coeffs(order, [1, -1]);
    let one_minus_q_chi = PowerSeries::one(order).sub(&chi.shift(1)).expect("same order");
    one_minus_q.mul(&one_minus_q_chi).expect("same order").reciprocal().expect("constant term 1")
}

fn to_nonnegative(c: &BigInt) -> BigUint {
    assert!(!c.is_negative(), "negative count {c}");
    c.magnitude().clone()
}

// ---------------------------------------------------------------------------
// Closed forms

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Number of `(n, n+1)`-cores with all parts divisible by `d`:
/// with `n = qd + r`, `0 <= r < d`, this is `(r+1)/(n+1) · binom(n+q, q)`.
pub fn closed_form_raney(d: u64, n: u64) -> BigUint {
    assert!(d >= 1, "d must be positive");
    let (q, r) = n.div_rem(&d);
    let numerator = binomial(n + q, q) * (r + 1);
    let (value, rem) = numerator.div_rem(&BigUint::from(n + 1));
    assert!(rem.is_zero(), "Raney value for d={d}, n={n} is not integral");
    value
}

/// `binom(a+b, a)/(a+b)`, the number of `(a, b)`-cores for coprime `a`, `b`.
pub fn anderson_count(a: u64, b: u64) -> Result<BigUint, CountError> {
    if a == 0 || b == 0 {
        return Err(CountError::Domain("core moduli must be positive".into()));
    }
    if a.gcd(&b) != 1 {
        return Err(CountError::NotCoprime { a: a as usize, b: b as usize });
    }
    let (value, rem) = binomial(a + b, a).div_rem(&BigUint::from(a + b));
    assert!(rem.is_zero());
    Ok(value)
}

/// Closed forms for the sets that have one: ℕ (Catalan), ℕ₊ (Fibonacci)
/// and dℕ (Raney).
pub fn count_closed(m: &DiffSet, n_max: usize) -> Result<CountReport, CountError> {
    let values: Vec<BigUint> = if let Some(d) = m.as_multiples() {
        (0..=n_max as u64).map(|n| closed_form_raney(d, n)).collect()
    } else if m.is_positive_integers() {
        let mut fib = vec![BigUint::one(), BigUint::one()];
        while fib.len() <= n_max {
            let k = fib.len();
            let next = &fib[k - 1] + &fib[k - 2];
            fib.push(next);
        }
        fib.truncate(n_max + 1);
        fib
    } else {
        return Err(CountError::NoClosedForm { spec: m.spec_text().to_string() });
    };
    Ok(CountReport::new(m.spec_text(), Variant::Q, Method::Closed, values))
}

// ---------------------------------------------------------------------------
// Brute force over abacus functions

/// Folds `visit` over every valid abacus function on `n` indices, splitting the
/// search tree by prefix when the `parallel` feature is on.
pub fn fold_abaci<A, V, M>(n: usize, visit: V, merge: M) -> A
where
    A: Default + Send,
    V: Fn(&mut A, &[usize]) + Sync,
    M: Fn(A, A) -> A + Sync + Send,
{
    if n == 0 {
        return A::default();
    }
    let split = prefixes(n.min(6));
    let run = |prefix: &Vec<usize>| {
        let mut acc = A::default();
        for_each_completion(prefix, n, |f| visit(&mut acc, f));
        acc
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        split.par_iter().map(run).reduce(A::default, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        split.iter().map(run).fold(A::default(), merge)
    }
}

/// Number of abacus functions on `n` indices accepted by `pred`. For `n = 0`
/// the only core is the empty partition, which `pred` sees as an empty slice.
pub fn count_abaci_where(n: usize, pred: impl Fn(&[usize]) -> bool + Sync) -> u64 {
    if n == 0 {
        return u64::from(pred(&[]));
    }
    fold_abaci(n, |acc: &mut u64, f| *acc += u64::from(pred(f)), |a, b| a + b)
}

fn member_table(m: &DiffSet, n: usize) -> Vec<bool> {
    // Gaps are bounded by the largest part, at most n(n-1)/2.
    m.membership_table(n * n / 2 + 2)
}

fn check_limit(n_max: usize, limit: usize) -> Result<(), CountError> {
    if n_max > limit {
        Err(CountError::WorkLimit { n_max, limit })
    } else {
        Ok(())
    }
}

/// Brute-force count of a single `n`, without a work limit.
pub fn brute_count_at(m: &DiffSet, n: usize, variant: Variant) -> u64 {
    let table = member_table(m, n);
    count_abaci_where(n, |f| satisfies_with(f, variant, |g| table[g]))
}

pub fn count_brute(m: &DiffSet, n_max: usize, variant: Variant) -> Result<CountReport, CountError> {
    count_brute_limited(m, n_max, variant, DEFAULT_BRUTE_LIMIT)
}

pub fn count_brute_limited(
    m: &DiffSet,
    n_max: usize,
    variant: Variant,
    limit: usize,
) -> Result<CountReport, CountError> {
    check_limit(n_max, limit)?;
    let values = (0..=n_max).map(|n| BigUint::from(brute_count_at(m, n, variant))).collect();
    Ok(CountReport::new(report_spec(m, variant), variant, Method::Brute, values))
}

fn report_spec(m: &DiffSet, variant: Variant) -> &str {
    match variant {
        Variant::Odd => "mult:2",
        _ => m.spec_text(),
    }
}

// ---------------------------------------------------------------------------
// Totals of largest part, length and size

/// `TL = q²χ'/((1-q)(1-qχ)²)`, `TP = qχ/((1-q)(1-qχ)²)`, `TS = q²χ'/((1-q)(1-qχ)³)`.
///
/// The derivative loses one order, so `χ` is built one order higher.
pub fn totals_formulas(m: &DiffSet, n_max: usize) -> Result<CountReport, CountError> {
    if m.contains_zero() {
        return Err(CountError::ZeroInSet { spec: m.spec_text().to_string() });
    }
    let chi_prime = m.indicator_series(n_max + 1).derivative();
    let chi = m.indicator_series(n_max);
    let geometric = PowerSeries::all_ones(n_max);
    let inner = PowerSeries::one(n_max).sub(&chi.shift(1)).expect("same order").reciprocal().expect("unit");
    let inner2 = inner.mul(&inner).expect("same order");
    let mul = |a: &PowerSeries, b: &PowerSeries| a.mul(b).expect("same order");
    let tl = mul(&mul(&chi_prime.shift(2), &geometric), &inner2);
    let tp = mul(&mul(&chi.shift(1), &geometric), &inner2);
    let ts = mul(&tl, &inner);
    let counts = mul(&geometric, &inner);
    let unsigned = |s: &PowerSeries| s.coeffs().iter().map(to_nonnegative).collect::<Vec<_>>();
    let mut report = CountReport::new(m.spec_text(), Variant::Q, Method::Formulas, unsigned(&counts));
    report.totals = Some(Totals { largest: unsigned(&tl), length: unsigned(&tp), size: unsigned(&ts) });
    Ok(report)
}

#[derive(Default)]
struct Tally {
    count: u64,
    largest: u64,
    length: u64,
    size: u64,
}

pub fn totals_brute(m: &DiffSet, n_max: usize, variant: Variant) -> Result<CountReport, CountError> {
    totals_brute_limited(m, n_max, variant, DEFAULT_BRUTE_LIMIT)
}

pub fn totals_brute_limited(
    m: &DiffSet,
    n_max: usize,
    variant: Variant,
    limit: usize,
) -> Result<CountReport, CountError> {
    check_limit(n_max, limit)?;
    let mut values = Vec::new();
    let mut totals = Totals { largest: Vec::new(), length: Vec::new(), size: Vec::new() };
    for n in 0..=n_max {
        let table = member_table(m, n);
        let tally = if n == 0 {
            Tally { count: 1, ..Tally::default() }
        } else {
            fold_abaci(
                n,
                |acc: &mut Tally, f| {
                    if satisfies_with(f, variant, |g| table[g]) {
                        let s = statistics_of(f);
                        acc.count += 1;
                        acc.largest += s.largest as u64;
                        acc.length += s.length as u64;
                        acc.size += s.size as u64;
                    }
                },
                |a, b| Tally {
                    count: a.count + b.count,
                    largest: a.largest + b.largest,
                    length: a.length + b.length,
                    size: a.size + b.size,
                },
            )
        };
        values.push(BigUint::from(tally.count));
        totals.largest.push(BigUint::from(tally.largest));
        totals.length.push(BigUint::from(tally.length));
        totals.size.push(BigUint::from(tally.size));
    }
    let mut report = CountReport::new(report_spec(m, variant), variant, Method::Brute, values);
    report.totals = Some(totals);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Dispatch

/// Runs the requested route. The recurrence, series and closed routes count
/// `Q^M`; the odd variant is counted through [`crate::oddeven::count_odd`]
/// when the recurrence route is asked for.
pub fn count(
    m: &DiffSet,
    n_max: usize,
    variant: Variant,
    method: Method,
    brute_limit: usize,
) -> Result<CountReport, CountError> {
    let unsupported = |valid: &str| CountError::UnsupportedMethod {
        variant: variant.to_string(),
        method: method.to_string(),
        valid: valid.to_string(),
    };
    match (variant, method) {
        (_, Method::Brute) => count_brute_limited(m, n_max, variant, brute_limit),
        (Variant::Q, Method::Recurrence) => Ok(count_recurrence(m, n_max)),
        (Variant::Q, Method::Series) => Ok(count_series(m, n_max)),
        (Variant::Q, Method::Closed) => count_closed(m, n_max),
        (Variant::Odd, Method::Recurrence) => {
            let values = (0..=n_max as i64).map(crate::oddeven::count_odd).collect();
            Ok(CountReport::new("mult:2", Variant::Odd, Method::Recurrence, values))
        }
        (Variant::Q, Method::Formulas) => Err(unsupported("recurrence, series, brute, closed")),
        (Variant::Odd, _) => Err(unsupported("recurrence, brute")),
        (Variant::P, _) => Err(unsupported("brute")),
    }
}

// ---------------------------------------------------------------------------
// Partition-level filters (not restricted to cores)

/// `λ ∈ Q^M`: every consecutive difference and the smallest part lie in `M`.
pub fn in_q_set(lambda: &Partition, m: &DiffSet) -> bool {
    lambda.differences().iter().all(|&d| m.contains_nat(d as u64))
}

/// `λ ∈ P^M`: every consecutive difference lies in `M`; the smallest part is free.
pub fn in_p_set(lambda: &Partition, m: &DiffSet) -> bool {
    let d = lambda.differences();
    d.iter().take(d.len().saturating_sub(1)).all(|&d| m.contains_nat(d as u64))
}

/// `Σ_{λ ∈ Q^M or P^M} q^{|λ|}` by filtering every partition of each size.
pub fn partition_series_brute(m: &DiffSet, variant: Variant, order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |size| {
        partitions_of(size)
            .iter()
            .filter(|l| match variant {
                Variant::Q => in_q_set(l, m),
                Variant::P => in_p_set(l, m),
                Variant::Odd => l.parts().iter().all(|p| p % 2 == 1),
            })
            .count() as u64
    })
}

/// `∏_{m ∈ parts} 1/(1-q^m)` truncated at `order`.
pub fn product_of_geometrics(parts: impl IntoIterator<Item = usize>, order: usize) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for part in parts {
        if part == 0 || part > order {
            continue;
        }
        // Multiplying by 1/(1-q^m) is the running sum with stride m.
        let mut coeffs = acc.into_coeffs();
        for k in part..=order {
            let prev = coeffs[k - part].clone();
            coeffs[k] += prev;
        }
        acc = PowerSeries::from_coeffs(order, coeffs);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> DiffSet {
        DiffSet::parse(s).unwrap()
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(count_recurrence(&set("all"), 6).values_u64(), vec![1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(count_recurrence(&set("positive"), 6).values_u64(), vec![1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(
            count_recurrence(&set("mult+:2"), 11).values_u64(),
            vec![1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16]
        );
        assert_eq!(count_recurrence(&set("all"), 0).values_u64(), vec![1]);
    }

    #[test]
    fn series_examples() {
        assert_eq!(count_series(&set("positive"), 6).values_u64(), vec![1, 1, 2, 3, 5, 8, 13]);
        assert_eq!(count_series(&set("all"), 6).values_u64(), vec![1, 1, 2, 5, 14, 42, 132]);
        // (1+q)/(1-q²-q³), expanded by its recurrence.
        let mut padovan = vec![1u64, 1, 1];
        while padovan.len() < 12 {
            let k = padovan.len();
            padovan.push(padovan[k - 2] + padovan[k - 3]);
        }
        assert_eq!(count_series(&set("mult+:2"), 11).values_u64(), padovan);
    }

    #[test]
    fn brute_examples() {
        let all = count_brute(&set("all"), 6, Variant::Q).unwrap();
        assert_eq!(all.values_u64(), vec![1, 1, 2, 5, 14, 42, 132]);
        let even = count_brute(&set("mult:2"), 7, Variant::Q).unwrap();
        assert_eq!(even.values_u64(), vec![1, 1, 1, 2, 3, 7, 12, 30]);
        let odd = count_brute(&set("mult:2"), 5, Variant::Odd).unwrap();
        assert_eq!(odd.values_u64(), vec![1, 1, 2, 4, 7, 17]);
        assert_eq!(odd.m_spec, "mult:2");
        assert!(matches!(
            count_brute(&set("all"), 15, Variant::Q),
            Err(CountError::WorkLimit { n_max: 15, limit: 14 })
        ));
    }

    #[test]
    fn odd_parts_are_p_minus_q() {
        // P^{2ℕ} \ Q^{2ℕ} together with ∅ is the set of partitions with odd parts.
        let even = set("mult:2");
        for n in 0..=9 {
            let p = brute_count_at(&even, n, Variant::P);
            let q = brute_count_at(&even, n, Variant::Q);
            assert_eq!(p - q + 1, brute_count_at(&even, n, Variant::Odd), "n = {n}");
        }
    }

    #[test]
    fn raney_examples() {
        assert_eq!(closed_form_raney(2, 3), BigUint::from(2u32));
        assert_eq!(closed_form_raney(2, 6), BigUint::from(12u32));
        for n in 0..20 {
            assert_eq!(closed_form_raney(1, n), catalan(n));
        }
        // binom(n+q, n) = binom(n+q, q).
        for d in 1..6u64 {
            for n in 0..40u64 {
                let q = n / d;
                assert_eq!(binomial(n + q, n), binomial(n + q, q));
            }
        }
    }

    #[test]
    fn anderson_examples() {
        assert_eq!(anderson_count(3, 4).unwrap(), BigUint::from(5u32));
        assert_eq!(anderson_count(2, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(anderson_count(1, 2).unwrap(), BigUint::one());
        assert!(matches!(anderson_count(2, 4), Err(CountError::NotCoprime { .. })));
    }

    #[test]
    fn totals_examples() {
        let f = totals_formulas(&set("positive"), 4).unwrap();
        let t = f.totals.as_ref().unwrap();
        assert_eq!((&t.largest[4], &t.length[4], &t.size[4]), (&8u32.into(), &5u32.into(), &9u32.into()));
        assert!(t.largest[0].is_zero() && t.length[0].is_zero() && t.size[0].is_zero());

        let b = totals_brute(&set("positive"), 4, Variant::Q).unwrap();
        let bt = b.totals.as_ref().unwrap();
        let as_u64 = |v: &[BigUint]| v.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_u64(&bt.largest), vec![0, 0, 1, 3, 8]);
        assert_eq!(as_u64(&bt.length), vec![0, 0, 1, 2, 5]);
        assert_eq!(as_u64(&bt.size), vec![0, 0, 1, 3, 9]);

        let nat = totals_brute(&set("all"), 2, Variant::Q).unwrap();
        let nt = nat.totals.unwrap();
        assert_eq!((nt.largest[2].clone(), nt.length[2].clone(), nt.size[2].clone()), (1u32.into(), 1u32.into(), 1u32.into()));

        assert!(matches!(totals_formulas(&set("all"), 4), Err(CountError::ZeroInSet { .. })));
    }

    #[test]
    fn tp_is_convolved_fibonacci() {
        // For M = ℕ₊ the TP series simplifies to q²/(1-q-q²)².
        let order = 20;
        let fib = PowerSeries::from_coeffs(order, [1, -1, -1]).reciprocal().unwrap();
        let want = fib.mul(&fib).unwrap().shift(2);
        let got = totals_formulas(&set("positive"), order).unwrap().totals.unwrap().length;
        let want: Vec<BigUint> = want.coeffs().iter().map(|c| c.magnitude().clone()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(count_closed(&set("positive"), 10).unwrap().values_u64().last(), Some(&89));
        assert_eq!(count_closed(&set("all"), 5).unwrap().values_u64(), vec![1, 1, 2, 5, 14, 42]);
        assert!(matches!(count_closed(&set("upto:2"), 5), Err(CountError::NoClosedForm { .. })));
    }

    #[test]
    fn dispatch_rejects_unsupported_pairs() {
        let m = set("all");
        assert!(matches!(
            count(&m, 5, Variant::P, Method::Recurrence, 14),
            Err(CountError::UnsupportedMethod { .. })
        ));
        let odd = count(&m, 5, Variant::Odd, Method::Recurrence, 14).unwrap();
        assert_eq!(odd.values_u64(), vec![1, 1, 2, 4, 7, 17]);
    }

    #[test]
    fn report_json() {
        let r = count_recurrence(&set("mult+:2"), 4);
        let text = r.to_json();
        assert_eq!(
            text,
            r#"{"m_spec":"mult+:2","variant":"Q","method":"recurrence","n_range":[0,4],"values":["1","1","1","2","2"]}"#
        );
        let back: CountReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let t = totals_formulas(&set("positive"), 3).unwrap();
        let back: CountReport = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<CountReport>(
            r#"{"m_spec":"x","variant":"Q","method":"brute","n_range":[0,2],"values":["1"]}"#
        )
        .is_err());
    }

    #[test]
    fn geometric_products() {
        // ∏_{m≥1} 1/(1-q^m) counts all partitions.
        let p = product_of_geometrics(1..=10, 10);
        assert_eq!(p.coeffs_i64(), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }
}
