//! Truncated formal power series with exact integer coefficients.
//!
//! A series of order `N` keeps the coefficients of `q^0..=q^N`. Binary
//! operations require equal orders; use [`PowerSeries::truncate`] or
//! [`PowerSeries::extend`] to line them up first.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0)
    }

    /// `q^power`, or zero if `power > order`.
    pub fn monomial(order: usize, power: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = BigInt::one();
        }
        s
    }

    /// `1 + q + q² + …` truncated at `order`.
    pub fn all_ones(order: usize) -> Self {
        PowerSeries { coeffs: vec![BigInt::one(); order + 1] }
    }

    /// Builds a series of the given order from its first coefficients, padding with zeros.
    /// Extra coefficients beyond `order` are dropped.
    pub fn from_coeffs<T: Into<BigInt>>(order: usize, coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    pub fn from_fn<T: Into<BigInt>>(order: usize, mut f: impl FnMut(usize) -> T) -> Self {
        PowerSeries { coeffs: (0..=order).map(|k| f(k).into()).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k`; zero above the order.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Small-coefficient view, mostly for tests. Panics if a coefficient overflows `i64`.
    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| c.to_i64().expect("coefficient fits in i64")).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, BigInt::zero());
        PowerSeries { coeffs }
    }

    /// Raises the order by padding with zeros. This is only exact for
    /// polynomials, so callers must know the dropped tail was zero.
    pub fn extend(&self, order: usize) -> Self {
        assert!(order >= self.order(), "extend cannot lower the order");
        self.truncate(order)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(PowerSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(PowerSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Coefficientwise product `Σ a_n b_n q^n`.
    pub fn hadamard(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(PowerSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect() })
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn neg(&self) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplies by `q^power`, keeping the order.
    pub fn shift(&self, power: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in power..=n {
            out.coeffs[k] = self.coeffs[k - power].clone();
        }
        out
    }

    /// Formal `d/dq`. The result has order one less than the input (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        PowerSeries { coeffs: (1..=n).map(|k| &self.coeffs[k] * BigInt::from(k)).collect() }
    }

    /// The series `b` with `self · b = 1` up to the order. Needs a constant term of ±1.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnit);
        }
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = c0.clone();
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out.coeffs[k - i];
                }
            }
            // b_k = -c0^{-1} · acc, and c0^{-1} = c0 for units.
            out.coeffs[k] = -(acc * c0);
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..exp {
            out = out.mul(self).expect("same order");
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            match (show_mag, k) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}q")?,
                (false, 1) => write!(f, "q")?,
                (true, _) => write!(f, "{mag}q^{k}")?,
                (false, _) => write!(f, "q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for PowerSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson { order: self.order(), coeffs: self.coeffs.iter().map(BigInt::to_string).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(D::Error::custom(SeriesError::Coefficient(format!(
                "order {} needs {} coefficients, found {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            ))));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| D::Error::custom(SeriesError::Coefficient(format!("{s:?}: {e}")))))
            .collect::<Result<_, _>>()?;
        Ok(PowerSeries { coeffs })
    }
}
