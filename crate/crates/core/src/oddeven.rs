//! Cores with all parts odd versus all parts even.
//!
//! `E(n+2) = 2·O(n) - O(n-2)`, where `E(n)` (`O(n)`) counts `(n, n+1)`-cores
//! with all parts even (odd). The argument splits cores by whether every white
//! bead lies in column 0 of the abacus (the single-column classes SE/SO) or not
//! (CE/CO), and relates the complicated classes through explicit maps on
//! abacus functions:
//!
//! * [`insert_two_rows`]: CO(n) → CE(n+2), placing an extra black bead just
//!   before or just after the last white run;
//! * [`delete_rows_h`]: the CE(n+2) elements reached by neither insertion,
//!   sent to CO(n-2c) where `2c` is the length of their last run;
//! * [`whiten_extra_after`]: CO(j) elements with an extra black bead after the
//!   last run, sent to CE(j);
//! * [`phi_insert_one`]: distinct odd parts on `n` rows to distinct even parts
//!   on `n+1` rows.
//!
//! The empty partition counts as both all-odd and all-even.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abacus::{all_abaci, is_valid, satisfies_with, AbacusFunction, Variant};
use crate::counting::{closed_form_raney, count_abaci_where};
use crate::error::{CountError, OddEvenError};

pub fn count_even(n: usize) -> BigUint {
    closed_form_raney(2, n as u64)
}

/// `O(n)` from the theorem: `O(n) = (E(n+2) + O(n-2)) / 2` for `n >= 2`,
/// with `O(0) = O(1) = 1` and `O(n) = 0` for `n < 0`.
pub fn count_odd(n: i64) -> BigUint {
    if n < 0 {
        return BigUint::zero();
    }
    count_odd_sequence(n as usize).pop().expect("nonempty")
}

/// `O(0..=n_max)` by the theorem route.
pub fn count_odd_sequence(n_max: usize) -> Vec<BigUint> {
    let mut odd: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let value = if n < 2 {
            BigUint::from(1u32)
        } else {
            let (half, rem) = (count_even(n + 2) + &odd[n - 2]).div_rem(&BigUint::from(2u32));
            assert!(rem.is_zero(), "E({}) + O({}) is odd", n + 2, n - 2);
            half
        };
        odd.push(value);
    }
    odd
}

// ---------------------------------------------------------------------------
// Classification of abacus functions

pub(crate) fn all_parts_odd(f: &[usize]) -> bool {
    satisfies_with(f, Variant::Odd, |_| true)
}

pub(crate) fn all_parts_even(f: &[usize]) -> bool {
    satisfies_with(f, Variant::Q, |g| g % 2 == 0)
}

fn distinct_parts(f: &[usize]) -> bool {
    satisfies_with(f, Variant::Q, |g| g > 0)
}

fn single_column(f: &[usize]) -> bool {
    f.iter().all(|&v| v <= 1)
}

/// True iff every white bead is in column 0, i.e. `f(k) <= 1` for all `k`.
pub fn is_single_column(f: &AbacusFunction) -> bool {
    single_column(f.values())
}

/// Position of the last white run: rows `ell+1 ..= ell+k` (0-based indices of
/// `f`) have value `m`, `f(ell) = m - 1` and every later index is below `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunLocus {
    pub m: usize,
    pub ell: usize,
    pub k: usize,
    /// `f(ell - 1) = m - 1`.
    pub extra_before: bool,
    /// `f(ell + k + 1) = m - 1`.
    pub extra_after: bool,
}

fn locus_of(f: &[usize]) -> Option<RunLocus> {
    let m = f.iter().copied().max().unwrap_or(0);
    if m == 0 {
        return None;
    }
    let last = f.iter().rposition(|&v| v == m)?;
    let mut start = last;
    while f[start - 1] == m {
        start -= 1;
    }
    let ell = start - 1;
    let k = last - ell;
    debug_assert_eq!(f[ell], m - 1);
    Some(RunLocus {
        m,
        ell,
        k,
        extra_before: ell >= 1 && f[ell - 1] == m - 1,
        extra_after: f.get(last + 1) == Some(&(m - 1)),
    })
}

pub fn locate_last_run(f: &AbacusFunction) -> Result<RunLocus, OddEvenError> {
    locus_of(f.values()).ok_or(OddEvenError::EmptyPartition)
}

// ---------------------------------------------------------------------------
// Maps

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Before,
    After,
}

fn require(cond: bool, what: &str) -> Result<(), OddEvenError> {
    if cond {
        Ok(())
    } else {
        Err(OddEvenError::Precondition(what.to_string()))
    }
}

fn ensure(values: Vec<usize>, ok: impl Fn(&[usize]) -> bool, what: &str) -> Result<AbacusFunction, OddEvenError> {
    if is_valid(&values) && ok(&values) {
        Ok(AbacusFunction::from_valid(values))
    } else {
        Err(OddEvenError::Postcondition(format!("{what}: {values:?}")))
    }
}

/// `g_b` or `g_a`: inserts two rows around the last white run of a CO(n)
/// abacus, giving a CE(n+2) abacus.
///
/// `g_b` puts `m-1, m` right after index `ell`; `g_a` puts `m, m-1` right
/// after the run.
pub fn insert_two_rows(f: &AbacusFunction, side: Side) -> Result<AbacusFunction, OddEvenError> {
    let v = f.values();
    require(all_parts_odd(v), "all parts must be odd")?;
    require(!single_column(v), "abacus must use more than one column")?;
    let RunLocus { m, ell, k, .. } = locus_of(v).expect("not single column");
    let cut = match side {
        Side::Before => ell + 1,
        Side::After => ell + k + 1,
    };
    let inserted = match side {
        Side::Before => [m - 1, m],
        Side::After => [m, m - 1],
    };
    let mut g = Vec::with_capacity(v.len() + 2);
    g.extend_from_slice(&v[..cut]);
    g.extend_from_slice(&inserted);
    g.extend_from_slice(&v[cut..]);
    ensure(g, |g| all_parts_even(g) && !single_column(g), "insertion did not land in CE(n+2)")
}

/// `h`: for a CE abacus whose last run (length `2c`) has no extra black bead
/// on either side, deletes indices `ell-1 ..= ell+2c` and lands in CO(n-2c).
///
/// The missing extra beads force `f(ell-1) = m`; if that fails the input is
/// rejected rather than guessed at.
pub fn delete_rows_h(f: &AbacusFunction) -> Result<AbacusFunction, OddEvenError> {
    let v = f.values();
    require(all_parts_even(v), "all parts must be even")?;
    require(!single_column(v), "abacus must use more than one column")?;
    let RunLocus { m, ell, k, extra_before, extra_after } = locus_of(v).expect("not single column");
    require(!extra_before, "last run has an extra black bead before it")?;
    require(!extra_after, "last run has an extra black bead after it")?;
    require(ell >= 1 && v[ell - 1] == m, "expected f(ell-1) = m")?;
    let mut h = Vec::with_capacity(v.len() - k - 2);
    h.extend_from_slice(&v[..ell - 1]);
    h.extend_from_slice(&v[ell + k + 1..]);
    ensure(h, |h| all_parts_odd(h) && !single_column(h), "deletion did not land in CO")
}

/// Turns the extra black bead after the last run white: CO(j) → CE(j).
pub fn whiten_extra_after(f: &AbacusFunction) -> Result<AbacusFunction, OddEvenError> {
    let v = f.values();
    require(all_parts_odd(v), "all parts must be odd")?;
    require(!single_column(v), "abacus must use more than one column")?;
    let RunLocus { m, ell, k, extra_after, .. } = locus_of(v).expect("not single column");
    require(extra_after, "last run has no extra black bead after it")?;
    let mut g = v.to_vec();
    g[ell + k + 1] = m;
    ensure(g, |g| all_parts_even(g) && !single_column(g), "whitening did not land in CE")
}

/// `φ`: distinct odd parts on `n` rows to distinct even parts on `n+1` rows,
/// by adding one white bead (one row) to the last run. Sends ∅ to ∅.
pub fn phi_insert_one(f: &AbacusFunction) -> Result<AbacusFunction, OddEvenError> {
    let v = f.values();
    require(all_parts_odd(v) && distinct_parts(v), "parts must be distinct and odd")?;
    let mut g = v.to_vec();
    match v.iter().rposition(|&x| x == 1) {
        None => g.push(0),
        Some(last) => g.insert(last + 1, 1),
    }
    ensure(g, |g| all_parts_even(g) && distinct_parts(g), "φ did not land in DE(n+1)")
}

/// `φ⁻¹`: removes one row from the last run (or one row of ∅).
pub fn phi_remove_one(f: &AbacusFunction) -> Result<AbacusFunction, OddEvenError> {
    let v = f.values();
    require(v.len() >= 2, "need at least two rows")?;
    require(all_parts_even(v) && distinct_parts(v), "parts must be distinct and even")?;
    let mut g = v.to_vec();
    match v.iter().rposition(|&x| x == 1) {
        None => {
            g.pop();
        }
        Some(last) => {
            g.remove(last);
        }
    }
    ensure(g, |g| all_parts_odd(g) && distinct_parts(g), "φ⁻¹ did not land in DO(n)")
}

// ---------------------------------------------------------------------------
// Brute-force counts

/// SE/SO/CE/CO counts for one `n`, by enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Split {
    pub se: u64,
    pub so: u64,
    pub ce: u64,
    pub co: u64,
}

impl Split {
    pub fn even(&self) -> u64 {
        self.se + self.ce
    }

    pub fn odd(&self) -> u64 {
        self.so + self.co
    }
}

pub fn split_counts(n: usize) -> Split {
    if n == 0 {
        return Split { se: 1, so: 1, ce: 0, co: 0 };
    }
    crate::counting::fold_abaci(
        n,
        |acc: &mut Split, f| {
            let single = single_column(f);
            if all_parts_even(f) {
                if single {
                    acc.se += 1;
                } else {
                    acc.ce += 1;
                }
            }
            if all_parts_odd(f) {
                if single {
                    acc.so += 1;
                } else {
                    acc.co += 1;
                }
            }
        },
        |a, b| Split { se: a.se + b.se, so: a.so + b.so, ce: a.ce + b.ce, co: a.co + b.co },
    )
}

/// `E(n)` by enumeration.
pub fn count_even_brute(n: usize) -> u64 {
    count_abaci_where(n, all_parts_even)
}

/// `O(n)` by enumeration.
pub fn count_odd_brute(n: usize) -> u64 {
    count_abaci_where(n, all_parts_odd)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddEvenRow {
    pub n: usize,
    #[serde(with = "decimal")]
    pub e: BigUint,
    #[serde(with = "decimal")]
    pub o: BigUint,
    pub se: u64,
    pub so: u64,
    pub ce: u64,
    pub co: u64,
    /// `E(n) = SE(n) + CE(n)` and `O(n) = SO(n) + CO(n)`.
    pub routes_agree: bool,
    /// `2·O(n) - O(n-2) = E(n+2)`, for `n >= 2`.
    pub theorem: Option<bool>,
    /// `2·CO(n) - CO(n-2) = CE(n+2)`, when `n >= 2` and `n+2` is in the table.
    pub ce_identity: Option<bool>,
    /// `SE(n) = SE(n-1) + SE(n-2)`, for `n >= 3`.
    pub se_recurrence: Option<bool>,
    /// `SO(n-1) = SE(n)`, for `n >= 1`.
    pub so_shift: Option<bool>,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// The E/O/SE/SO/CE/CO table for `0..=n_max`, with identity checks.
///
/// E and O come from the closed form and the theorem; the split columns come
/// from enumeration, so every check compares independent routes.
pub fn oddeven_table(n_max: usize, brute_limit: usize) -> Result<Vec<OddEvenRow>, CountError> {
    if n_max > brute_limit {
        return Err(CountError::WorkLimit { n_max, limit: brute_limit });
    }
    let splits: Vec<Split> = (0..=n_max).map(split_counts).collect();
    let odd = count_odd_sequence(n_max);
    let rows = (0..=n_max)
        .map(|n| {
            let s = splits[n];
            let e = count_even(n);
            let o = odd[n].clone();
            let routes_agree = e == BigUint::from(s.even()) && o == BigUint::from(s.odd());
            let theorem = (n >= 2).then(|| {
                let lhs = BigUint::from(2 * s.odd());
                lhs == count_even(n + 2) + BigUint::from(splits[n - 2].odd())
            });
            let ce_identity = (n >= 2 && n + 2 <= n_max)
                .then(|| 2 * s.co == splits[n + 2].ce + splits[n - 2].co);
            let se_recurrence = (n >= 3).then(|| s.se == splits[n - 1].se + splits[n - 2].se);
            let so_shift = (n >= 1).then(|| splits[n - 1].so == s.se);
            OddEvenRow {
                n,
                e,
                o,
                se: s.se,
                so: s.so,
                ce: s.ce,
                co: s.co,
                routes_agree,
                theorem,
                ce_identity,
                se_recurrence,
                so_shift,
            }
        })
        .collect();
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Audits of the maps

fn class(n: usize, pred: impl Fn(&[usize]) -> bool) -> Vec<AbacusFunction> {
    if n == 0 {
        return Vec::new();
    }
    all_abaci(n).into_iter().filter(|f| pred(f.values())).collect()
}

/// CO(n): all parts odd, more than one column.
pub fn co_class(n: usize) -> Vec<AbacusFunction> {
    class(n, |f| all_parts_odd(f) && !single_column(f))
}

/// CE(n): all parts even, more than one column.
pub fn ce_class(n: usize) -> Vec<AbacusFunction> {
    class(n, |f| all_parts_even(f) && !single_column(f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiAudit {
    pub n: usize,
    /// |DO(n)|
    pub domain: usize,
    /// |DE(n+1)|
    pub codomain: usize,
    pub injective: bool,
    /// The image is exactly DE(n+1).
    pub onto: bool,
    pub inverse_ok: bool,
}

impl PhiAudit {
    pub fn passed(&self) -> bool {
        self.domain == self.codomain && self.injective && self.onto && self.inverse_ok
    }
}

pub fn audit_phi(n: usize) -> Result<PhiAudit, OddEvenError> {
    let domain = class(n, |f| all_parts_odd(f) && distinct_parts(f));
    let codomain: BTreeSet<AbacusFunction> = class(n + 1, |f| all_parts_even(f) && distinct_parts(f)).into_iter().collect();
    let mut image = BTreeSet::new();
    let mut inverse_ok = true;
    for f in &domain {
        let g = phi_insert_one(f)?;
        inverse_ok &= phi_remove_one(&g)? == *f;
        image.insert(g);
    }
    Ok(PhiAudit {
        n,
        domain: domain.len(),
        codomain: codomain.len(),
        injective: image.len() == domain.len(),
        onto: image == codomain,
        inverse_ok,
    })
}

/// Bookkeeping for `insert_two_rows` from CO(n) into CE(n+2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionAudit {
    pub n: usize,
    pub co_n: usize,
    pub ce_n_plus_2: usize,
    pub ce_n: usize,
    pub before_injective: bool,
    pub after_injective: bool,
    pub hit_twice: usize,
    pub hit_once: usize,
    pub unhit: usize,
    /// Hit twice exactly when there are extra black beads before and after.
    pub double_hits_are_extra_both: bool,
    /// Unhit exactly when there is no extra black bead on either side.
    pub unhit_are_extra_neither: bool,
    pub h_injective: bool,
    /// `h` maps the unhit set onto `⋃_{c≥1} {CO(n-2c) without extra-after}`.
    pub h_onto: bool,
    /// Whitening maps `{CO(j) with extra-after}` onto CE(j) for every `j <= n`.
    pub whitening_bijective: bool,
    /// `Σ_{c≥1} (CO(n-2c) - CE(n-2c))`.
    pub correction: i64,
}

impl InsertionAudit {
    pub fn passed(&self) -> bool {
        self.before_injective
            && self.after_injective
            && self.double_hits_are_extra_both
            && self.unhit_are_extra_neither
            && self.hit_twice == self.ce_n
            && self.h_injective
            && self.h_onto
            && self.whitening_bijective
            && self.unhit as i64 == self.correction
            && self.ce_n_plus_2 as i64 == 2 * self.co_n as i64 - self.ce_n as i64 + self.correction
    }
}

pub fn audit_insertion(n: usize) -> Result<InsertionAudit, OddEvenError> {
    let co = co_class(n);
    let ce2 = ce_class(n + 2);
    let mut hits: HashMap<AbacusFunction, usize> = ce2.iter().map(|f| (f.clone(), 0)).collect();
    let mut images = [BTreeSet::new(), BTreeSet::new()];
    for f in &co {
        for (i, side) in [Side::Before, Side::After].into_iter().enumerate() {
            let g = insert_two_rows(f, side)?;
            *hits
                .get_mut(&g)
                .ok_or_else(|| OddEvenError::Postcondition(format!("{g} is not in CE({})", n + 2)))? += 1;
            images[i].insert(g);
        }
    }
    let mut hit_twice = 0;
    let mut hit_once = 0;
    let mut double_ok = true;
    let mut unhit_ok = true;
    let mut unhit = Vec::new();
    for g in &ce2 {
        let locus = locus_of(g.values()).expect("CE is nonempty");
        let both = locus.extra_before && locus.extra_after;
        let neither = !locus.extra_before && !locus.extra_after;
        match hits[g] {
            2 => hit_twice += 1,
            1 => hit_once += 1,
            _ => unhit.push(g.clone()),
        }
        double_ok &= (hits[g] == 2) == both;
        unhit_ok &= (hits[g] == 0) == neither;
    }
    let mut h_image = BTreeSet::new();
    for g in &unhit {
        h_image.insert(delete_rows_h(g)?);
    }
    let mut target = BTreeSet::new();
    let mut correction = 0i64;
    for c in 1..=n / 2 {
        let j = n - 2 * c;
        for f in co_class(j) {
            if !locus_of(f.values()).expect("nonempty").extra_after {
                target.insert(f);
            }
        }
        correction += co_class(j).len() as i64 - ce_class(j).len() as i64;
    }
    let mut whitening_bijective = true;
    for j in 0..=n {
        let mut image = BTreeSet::new();
        let mut count = 0;
        for f in co_class(j) {
            if locus_of(f.values()).expect("nonempty").extra_after {
                image.insert(whiten_extra_after(&f)?);
                count += 1;
            }
        }
        let ce: BTreeSet<_> = ce_class(j).into_iter().collect();
        whitening_bijective &= image.len() == count && image == ce;
    }
    Ok(InsertionAudit {
        n,
        co_n: co.len(),
        ce_n_plus_2: ce2.len(),
        ce_n: ce_class(n).len(),
        before_injective: images[0].len() == co.len(),
        after_injective: images[1].len() == co.len(),
        hit_twice,
        hit_once,
        unhit: unhit.len(),
        double_hits_are_extra_both: double_ok,
        unhit_are_extra_neither: unhit_ok,
        h_injective: h_image.len() == unhit.len(),
        h_onto: h_image == target,
        whitening_bijective,
        correction,
    })
}
