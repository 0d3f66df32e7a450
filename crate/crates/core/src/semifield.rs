//! Scalar arithmetic in the two real tropical semifields.
//!
//! | tag        | carrier       | ⊕   | ⊗   | 𝟘   | 𝟙 |
//! |------------|---------------|-----|-----|-----|---|
//! | `MaxPlus`  | ℝ ∪ {−∞}      | max | +   | −∞  | 0 |
//! | `MaxTimes` | ℝ≥0           | max | ×   | 0   | 1 |
//!
//! The two are isomorphic through `exp` / `ln`. Both are selective, so the
//! order induced by ⊕ is the natural order on the carrier.
//!
//! [`TropScalar`] carries its tag and checks it on every binary operation.
//! The `*_raw` kernels on [`SemifieldTag`] operate on bare carrier values
//! and are what the vector and polynomial code use internally.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SemifieldTag {
    #[serde(rename = "max-plus")]
    MaxPlus,
    /// Max-times, also called max-algebra.
    #[serde(rename = "max-algebra")]
    MaxTimes,
}

impl SemifieldTag {
    /// Carrier value of 𝟘.
    pub const fn zero(self) -> f64 {
        match self {
            SemifieldTag::MaxPlus => f64::NEG_INFINITY,
            SemifieldTag::MaxTimes => 0.0,
        }
    }

    /// Carrier value of 𝟙.
    pub const fn one(self) -> f64 {
        match self {
            SemifieldTag::MaxPlus => 0.0,
            SemifieldTag::MaxTimes => 1.0,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            SemifieldTag::MaxPlus => "max-plus",
            SemifieldTag::MaxTimes => "max-algebra",
        }
    }

    pub fn is_zero_raw(self, v: f64) -> bool {
        v == self.zero()
    }

    /// Checks that `v` is a member of the carrier.
    pub fn check(self, v: f64) -> Result<f64> {
        if v.is_nan() {
            return Err(Error::domain("NaN is not a tropical scalar"));
        }
        match self {
            SemifieldTag::MaxPlus if v == f64::INFINITY => {
                Err(Error::domain("+inf is outside the max-plus carrier"))
            }
            SemifieldTag::MaxTimes if v < 0.0 || v == f64::INFINITY => Err(Error::domain(format!(
                "{v} is outside the max-times carrier [0, inf)"
            ))),
            // fold -0.0 into 0.0
            SemifieldTag::MaxTimes => Ok(v + 0.0),
            SemifieldTag::MaxPlus => Ok(v),
        }
    }

    #[inline]
    pub fn oplus_raw(self, a: f64, b: f64) -> f64 {
        if a >= b {
            a
        } else {
            b
        }
    }

    #[inline]
    pub fn otimes_raw(self, a: f64, b: f64) -> f64 {
        match self {
            SemifieldTag::MaxPlus => {
                if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY {
                    f64::NEG_INFINITY
                } else {
                    a + b
                }
            }
            SemifieldTag::MaxTimes => a * b,
        }
    }

    /// Inverse of a nonzero value. Callers guarantee `a` is not 𝟘.
    #[inline]
    pub fn inv_raw(self, a: f64) -> f64 {
        match self {
            SemifieldTag::MaxPlus => -a,
            SemifieldTag::MaxTimes => 1.0 / a,
        }
    }

    /// Conjugate entry: inverse for nonzero values, 𝟘 for 𝟘.
    #[inline]
    pub fn conj_raw(self, a: f64) -> f64 {
        if self.is_zero_raw(a) {
            a
        } else {
            self.inv_raw(a)
        }
    }

    /// Real power. `pow_raw(𝟘, r)` is 𝟘 for `r > 0` and 𝟙 for `r == 0`;
    /// negative powers of 𝟘 are left to the caller to reject.
    #[inline]
    pub fn pow_raw(self, a: f64, r: f64) -> f64 {
        if r == 0.0 {
            return self.one();
        }
        match self {
            SemifieldTag::MaxPlus => {
                if a == f64::NEG_INFINITY {
                    if r > 0.0 {
                        f64::NEG_INFINITY
                    } else {
                        f64::INFINITY
                    }
                } else {
                    r * a
                }
            }
            SemifieldTag::MaxTimes => a.powf(r),
        }
    }

    /// Dual minimum. Equals `(a⁻¹ ⊕ b⁻¹)⁻¹` for nonzero arguments.
    #[inline]
    pub fn min_raw(self, a: f64, b: f64) -> f64 {
        if a <= b {
            a
        } else {
            b
        }
    }

    /// Map a carrier value into max-plus (identity for max-plus values).
    #[inline]
    pub fn to_max_plus_raw(self, v: f64) -> f64 {
        match self {
            SemifieldTag::MaxPlus => v,
            SemifieldTag::MaxTimes => v.ln(),
        }
    }

    /// Map a max-plus value into this semifield's carrier.
    #[inline]
    pub fn from_max_plus_raw(self, v: f64) -> f64 {
        match self {
            SemifieldTag::MaxPlus => v,
            SemifieldTag::MaxTimes => v.exp(),
        }
    }
}

impl fmt::Display for SemifieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SemifieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-plus" | "maxplus" => Ok(SemifieldTag::MaxPlus),
            "max-algebra" | "max-times" | "maxtimes" => Ok(SemifieldTag::MaxTimes),
            other => Err(Error::invalid(format!("unknown algebra '{other}'"))),
        }
    }
}

/// A carrier value tagged with its semifield.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TropScalar {
    value: f64,
    tag: SemifieldTag,
}

impl TropScalar {
    /// Rejects NaN, +inf, and negative values under max-times.
    pub fn new(value: f64, tag: SemifieldTag) -> Result<Self> {
        let value = tag.check(value)?;
        Ok(Self { value, tag })
    }

    pub fn max_plus(value: f64) -> Result<Self> {
        Self::new(value, SemifieldTag::MaxPlus)
    }

    pub fn max_times(value: f64) -> Result<Self> {
        Self::new(value, SemifieldTag::MaxTimes)
    }

    pub(crate) fn from_raw(value: f64, tag: SemifieldTag) -> Self {
        debug_assert!(tag.check(value).is_ok(), "{value} outside {tag}");
        Self { value, tag }
    }

    pub const fn zero(tag: SemifieldTag) -> Self {
        Self { value: tag.zero(), tag }
    }

    pub const fn one(tag: SemifieldTag) -> Self {
        Self { value: tag.one(), tag }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn tag(self) -> SemifieldTag {
        self.tag
    }

    pub fn is_zero(self) -> bool {
        self.tag.is_zero_raw(self.value)
    }

    fn same_tag(self, other: Self) -> Result<SemifieldTag> {
        if self.tag == other.tag {
            Ok(self.tag)
        } else {
            Err(Error::TagMismatch(self.tag, other.tag))
        }
    }

    pub fn oplus(self, other: Self) -> Result<Self> {
        let tag = self.same_tag(other)?;
        Ok(Self::from_raw(tag.oplus_raw(self.value, other.value), tag))
    }

    pub fn otimes(self, other: Self) -> Result<Self> {
        let tag = self.same_tag(other)?;
        Ok(Self::from_raw(tag.otimes_raw(self.value, other.value), tag))
    }

    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("zero has no inverse"));
        }
        Ok(Self::from_raw(self.tag.inv_raw(self.value), self.tag))
    }

    /// Tropical power `a^r`: `r·a` in max-plus, `a^r` in max-times.
    pub fn pow(self, r: f64) -> Result<Self> {
        if r.is_nan() || r.is_infinite() {
            return Err(Error::domain(format!("exponent {r} is not a finite real")));
        }
        if self.is_zero() && r <= 0.0 {
            return Err(Error::domain(format!("zero raised to nonpositive power {r}")));
        }
        let v = self.tag.pow_raw(self.value, r);
        Self::new(v, self.tag)
    }

    pub fn sqrt(self) -> Result<Self> {
        self.pow(0.5)
    }

    pub fn min(self, other: Self) -> Result<Self> {
        let tag = self.same_tag(other)?;
        Ok(Self::from_raw(tag.min_raw(self.value, other.value), tag))
    }

    /// `ln` from max-times into max-plus.
    pub fn to_max_plus(self) -> Result<Self> {
        match self.tag {
            SemifieldTag::MaxTimes => Ok(Self::from_raw(self.value.ln(), SemifieldTag::MaxPlus)),
            SemifieldTag::MaxPlus => Err(Error::TagMismatch(self.tag, SemifieldTag::MaxTimes)),
        }
    }

    /// `exp` from max-plus into max-times.
    pub fn to_max_times(self) -> Result<Self> {
        match self.tag {
            SemifieldTag::MaxPlus => Self::new(self.value.exp(), SemifieldTag::MaxTimes),
            SemifieldTag::MaxTimes => Err(Error::TagMismatch(self.tag, SemifieldTag::MaxPlus)),
        }
    }
}

impl PartialOrd for TropScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.tag != other.tag {
            return None;
        }
        self.value.partial_cmp(&other.value)
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
