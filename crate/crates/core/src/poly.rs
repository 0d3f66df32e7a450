//! One-variable tropical Puiseux polynomials and their closed-form
//! minimization.
//!
//! In max-plus a polynomial `⊕_j a_j x^{p_j}` is the upper envelope of the
//! lines `p_j·x + a_j`. Its minimum comes from crossings of a line with
//! negative slope and a line with positive slope, or from a flat line:
//!
//! ```text
//! μ = max( max_{p_j<0<p_k} (p_j·a_k − p_k·a_j)/(p_j − p_k),  max_{p_j=0} a_j )
//! ```
//!
//! and the set of minimizers is the interval
//! `[max_{p_j<0} (μ−a_j)/p_j, min_{p_k>0} (μ−a_k)/p_k]`.
//! Max-times polynomials are minimized by moving to max-plus through `ln`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semifield::{SemifieldTag, TropScalar};

/// Exponents closer than this are fused by [`TropPolynomial::new`].
pub const DEFAULT_EXPONENT_MERGE_TOL: f64 = 1e-9;

/// `coeff ⊗ x^exp`. The coefficient is a nonzero carrier value of the
/// owning polynomial's semifield.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff: f64,
    pub exp: f64,
}

impl Monomial {
    pub const fn new(coeff: f64, exp: f64) -> Self {
        Self { coeff, exp }
    }
}

/// Nonempty polynomial with strictly increasing exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct TropPolynomial {
    monomials: Vec<Monomial>,
    tag: SemifieldTag,
}

/// End of a minimizer interval; `Unbounded` on the low side means −∞ in
/// the exponent line, on the high side +∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Finite(f64),
    Unbounded,
}

impl Bound {
    pub fn finite(self) -> Option<f64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Unbounded => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite(_))
    }
}

/// Minimum value and full minimizer set of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinResult {
    pub mu: TropScalar,
    pub lo: Bound,
    pub hi: Bound,
}

impl MinResult {
    /// Representative minimizer: the midpoint of a bounded interval (the
    /// geometric mean in max-times), the finite end of a half-bounded one,
    /// and 𝟙 when the polynomial is constant.
    pub fn select_point(&self) -> f64 {
        let tag = self.mu.tag();
        match (self.lo, self.hi) {
            (Bound::Finite(lo), Bound::Finite(hi)) => match tag {
                SemifieldTag::MaxPlus => lo + 0.5 * (hi - lo),
                SemifieldTag::MaxTimes => {
                    let (l, h) = (lo.ln(), hi.ln());
                    (l + 0.5 * (h - l)).exp()
                }
            },
            (Bound::Unbounded, Bound::Finite(hi)) => hi,
            (Bound::Finite(lo), Bound::Unbounded) => lo,
            (Bound::Unbounded, Bound::Unbounded) => tag.one(),
        }
    }

    /// Whether `t` lies in `[lo − slack, hi + slack]`.
    pub fn contains(&self, t: f64, slack: f64) -> bool {
        let above = self.lo.finite().is_none_or(|lo| t >= lo - slack);
        let below = self.hi.finite().is_none_or(|hi| t <= hi + slack);
        above && below
    }
}

impl TropPolynomial {
    /// Sorts by exponent and fuses runs of exponents spaced at most
    /// [`DEFAULT_EXPONENT_MERGE_TOL`] apart.
    pub fn new(terms: Vec<Monomial>, tag: SemifieldTag) -> Result<Self> {
        Self::normalize(terms, tag, DEFAULT_EXPONENT_MERGE_TOL)
    }

    /// A fused run keeps the ⊕ of its coefficients and the run's smallest
    /// exponent, or exactly 0 if 0 occurs in the run. Runs are chained on
    /// consecutive gaps, so representatives of distinct runs stay more than
    /// `tol` apart and normalization is idempotent.
    pub fn normalize(mut terms: Vec<Monomial>, tag: SemifieldTag, tol: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("polynomial needs at least one monomial"));
        }
        for t in &terms {
            tag.check(t.coeff)?;
            if tag.is_zero_raw(t.coeff) {
                return Err(Error::domain("monomial coefficient is zero"));
            }
            if !t.exp.is_finite() {
                return Err(Error::domain(format!("exponent {} is not finite", t.exp)));
            }
        }
        terms.sort_by(|a, b| a.exp.total_cmp(&b.exp));
        Ok(Self { monomials: fuse_sorted(&terms, tag, tol), tag })
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn tag(&self) -> SemifieldTag {
        self.tag
    }

    /// `P ⊕ Q` with the default merge tolerance.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.sum_with_tol(other, DEFAULT_EXPONENT_MERGE_TOL)
    }

    pub fn sum_with_tol(&self, other: &Self, tol: f64) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        // both inputs are sorted, so a linear merge keeps the order
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            if self.monomials[i].exp <= other.monomials[j].exp {
                merged.push(self.monomials[i]);
                i += 1;
            } else {
                merged.push(other.monomials[j]);
                j += 1;
            }
        }
        merged.extend_from_slice(&self.monomials[i..]);
        merged.extend_from_slice(&other.monomials[j..]);
        Ok(Self { monomials: fuse_sorted(&merged, self.tag, tol), tag: self.tag })
    }

    /// Evaluate at `x`. At `x = 𝟘` the constant term survives, positive
    /// powers vanish, and negative powers are a domain error.
    pub fn eval(&self, x: TropScalar) -> Result<TropScalar> {
        if x.tag() != self.tag {
            return Err(Error::TagMismatch(self.tag, x.tag()));
        }
        if x.is_zero() && self.monomials.iter().any(|m| m.exp < 0.0) {
            return Err(Error::domain("negative power of zero"));
        }
        Ok(TropScalar::from_raw(self.eval_raw(x.value()), self.tag))
    }

    pub(crate) fn eval_raw(&self, x: f64) -> f64 {
        let tag = self.tag;
        self.monomials.iter().fold(tag.zero(), |acc, m| {
            tag.oplus_raw(acc, tag.otimes_raw(m.coeff, tag.pow_raw(x, m.exp)))
        })
    }

    /// Closed-form minimum over the nonzero carrier, with the interval of
    /// all minimizers.
    pub fn minimize(&self) -> Result<MinResult> {
        self.minimize_counted().map(|(r, _)| r)
    }

    /// [`minimize`](Self::minimize) plus the number of candidate terms it
    /// evaluated (pair crossings and endpoint terms).
    pub fn minimize_counted(&self) -> Result<(MinResult, u64)> {
        let tag = self.tag;
        let lines: Vec<(f64, f64)> = self
            .monomials
            .iter()
            .map(|m| (m.exp, tag.to_max_plus_raw(m.coeff)))
            .collect();
        let (mu, lo, hi, count) = minimize_lines(&lines)?;
        let lift = |b: Option<f64>| match b {
            Some(v) => Bound::Finite(tag.from_max_plus_raw(v)),
            None => Bound::Unbounded,
        };
        let mu = TropScalar::from_raw(tag.from_max_plus_raw(mu), tag);
        Ok((MinResult { mu, lo: lift(lo), hi: lift(hi) }, count))
    }
}

fn fuse_sorted(sorted: &[Monomial], tag: SemifieldTag, tol: f64) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(sorted.len());
    let mut prev_exp = f64::NAN;
    for &m in sorted {
        match out.last_mut() {
            Some(last) if m.exp - prev_exp <= tol => {
                last.coeff = tag.oplus_raw(last.coeff, m.coeff);
                if m.exp == 0.0 {
                    last.exp = 0.0;
                }
            }
            _ => out.push(m),
        }
        prev_exp = m.exp;
    }
    out
}

/// Minimum of `max_j(slope_j·t + icpt_j)` over `t ∈ ℝ`.
/// Returns `(μ, lo, hi, evaluated_terms)` with `None` for unbounded ends.
pub(crate) fn minimize_lines(lines: &[(f64, f64)]) -> Result<(f64, Option<f64>, Option<f64>, u64)> {
    let mut count = 0u64;
    let mut mu = f64::NEG_INFINITY;
    let (mut has_neg, mut has_pos, mut has_zero) = (false, false, false);
    for &(pj, aj) in lines {
        if pj == 0.0 {
            has_zero = true;
            mu = mu.max(aj);
            count += 1;
        } else if pj < 0.0 {
            has_neg = true;
            for &(pk, ak) in lines.iter().filter(|(pk, _)| *pk > 0.0) {
                mu = mu.max((pj * ak - pk * aj) / (pj - pk));
                count += 1;
            }
        } else {
            has_pos = true;
        }
    }
    if !has_zero && !(has_neg && has_pos) {
        return Err(Error::Unbounded);
    }
    let mut lo: Option<f64> = None;
    let mut hi: Option<f64> = None;
    for &(p, a) in lines {
        if p == 0.0 {
            continue;
        }
        count += 1;
        let t = (mu - a) / p;
        if p < 0.0 {
            lo = Some(lo.map_or(t, |l| l.max(t)));
        } else {
            hi = Some(hi.map_or(t, |h| h.min(t)));
        }
    }
    // a single crossing point can come out with lo above hi by rounding
    if let (Some(l), Some(h)) = (lo, hi) {
        if l > h {
            let mid = l + 0.5 * (h - l);
            lo = Some(mid);
            hi = Some(mid);
        }
    }
    Ok((mu, lo, hi, count))
}
