//! Brute-force references for small instances.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fitter::{build_phi, FitResult, SampleSet};
use crate::linalg::{distance, matvec, Distance, TropMatrix, TropVector};
use crate::poly::{Monomial, TropPolynomial};
use crate::semifield::SemifieldTag;

/// Largest sample count [`exact_fit`] accepts.
pub const EXACT_FIT_MAX_SAMPLES: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Optimal `Δ` over all partitions, in the samples' carrier.
    pub delta_exact: f64,
    /// A partition attaining it (0-based indices, parts ordered by smallest
    /// member).
    pub best_partition: Vec<Vec<usize>>,
    /// Number of partitions examined.
    pub evaluations: u64,
}

/// Exhaustive search over all partitions of the samples into at most `n`
/// parts. Partitions are enumerated as restricted growth strings; the
/// minimum of every subset polynomial is precomputed once.
pub fn exact_fit(samples: &SampleSet, n: usize) -> Result<OracleResult> {
    let m = samples.len();
    if m > EXACT_FIT_MAX_SAMPLES {
        return Err(Error::GuardRefused { samples: m, limit: EXACT_FIT_MAX_SAMPLES });
    }
    if n == 0 || n > m {
        return Err(Error::invalid(format!("number of parts {n} must be in 1..={m}")));
    }
    let logs = samples.to_max_plus();
    let phis = (0..m).map(|i| build_phi(&logs, i)).collect::<Result<Vec<_>>>()?;

    // subset_min[mask] = min_p ⊕_{i∈mask} φ_i(p)
    let subset_min = (0..1usize << m)
        .into_par_iter()
        .map(|mask| {
            if mask == 0 {
                return Ok(f64::NEG_INFINITY);
            }
            let terms: Vec<Monomial> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| phis[i].monomials().iter().copied())
                .collect();
            let poly = TropPolynomial::new(terms, SemifieldTag::MaxPlus)?;
            Ok(poly.minimize()?.mu.value())
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut labels = vec![0usize; m];
    let mut best = (f64::INFINITY, labels.clone());
    let mut evaluations = 0u64;
    loop {
        evaluations += 1;
        let mut masks = vec![0usize; n];
        for (i, &l) in labels.iter().enumerate() {
            masks[l] |= 1 << i;
        }
        let delta = masks.iter().map(|&mk| subset_min[mk]).fold(f64::NEG_INFINITY, f64::max);
        if delta < best.0 {
            best = (delta, labels.clone());
        }
        if !next_growth_string(&mut labels, n) {
            break;
        }
    }

    let parts = best.1.iter().copied().max().unwrap_or(0) + 1;
    let mut best_partition = vec![Vec::new(); parts];
    for (i, &l) in best.1.iter().enumerate() {
        best_partition[l].push(i);
    }
    Ok(OracleResult {
        delta_exact: samples.tag().from_max_plus_raw(best.0),
        best_partition,
        evaluations,
    })
}

/// Advance a restricted growth string `a` (a[0] = 0, a[i] ≤ 1 + max(a[..i]))
/// with labels below `k`. Returns false after the last one.
fn next_growth_string(a: &mut [usize], k: usize) -> bool {
    for i in (1..a.len()).rev() {
        let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
        if a[i] <= prefix_max && a[i] + 1 < k {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Dense evaluation of `poly` on `lo, lo + step, …` up to and including
/// `hi`. Returns the best abscissa and value.
pub fn grid_minimize(poly: &TropPolynomial, lo: f64, hi: f64, step: f64) -> Result<(f64, f64)> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid(format!("grid range [{lo}, {hi}] is empty or not finite")));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::invalid(format!("grid step {step} must be positive")));
    }
    let count = ((hi - lo) / step).floor() as u64;
    let mut best = (hi, poly.eval_raw(hi));
    for k in 0..=count {
        let t = (lo + k as f64 * step).min(hi);
        let v = poly.eval_raw(t);
        if v < best.1 {
            best = (t, v);
        }
    }
    Ok(best)
}

/// Recompute `d(X(p*) θ*, y)` from the matrix form of the fitting problem.
pub fn residual_check(result: &FitResult, samples: &SampleSet) -> Result<f64> {
    let tag = samples.tag();
    if tag != result.algebra {
        return Err(Error::TagMismatch(result.algebra, tag));
    }
    let (m, n) = (samples.len(), result.n_terms());
    let mut data = Vec::with_capacity(m * n);
    for &x in samples.xs() {
        for &p in &result.exponents {
            data.push(tag.pow_raw(x, p));
        }
    }
    let xmat = TropMatrix::new(m, n, data, tag)?;
    let theta = TropVector::new(result.coefficients.clone(), tag)?;
    let y = TropVector::new(samples.ys().to_vec(), tag)?;
    let fitted = matvec(&xmat, &theta)?;
    match distance(&fitted, &y)? {
        Distance::Finite(d) => Ok(d.value()),
        Distance::Infinite => Err(Error::domain("fitted values and samples have different supports")),
    }
}
