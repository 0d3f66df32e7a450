//! Greedy agglomerative fitting of tropical Puiseux polynomials.
//!
//! Every sample `i` contributes a max-plus polynomial in the exponent
//! variable `p`,
//!
//! ```text
//! φ_i(p) = ⊕_j y_j⁻¹ y_i p^{x_j − x_i} = max_j((x_j − x_i)·p + y_i − y_j),
//! ```
//!
//! and a partition of the samples into `N` clusters costs the largest of the
//! cluster minima `min_p ⊕_{i∈I} φ_i(p)`. Starting from singletons, the pair
//! of clusters whose merged polynomial has the smallest minimum is merged
//! until `N` clusters remain. Each cluster's minimizer becomes one exponent,
//! and the coefficients follow in closed form.
//!
//! Fitting always runs in max-plus; max-times data is moved there by taking
//! logarithms and the result is moved back.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::span_raw;
use crate::poly::{Bound, MinResult, Monomial, TropPolynomial, DEFAULT_EXPONENT_MERGE_TOL};
use crate::semifield::{SemifieldTag, TropScalar};

/// Abscissas closer than this are treated as duplicates.
pub const DUPLICATE_ABSCISSA_TOL: f64 = 1e-12;

pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-12;

/// Input/output samples `(x_i, y_i)`, all nonzero in their semifield.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    xs: Vec<f64>,
    ys: Vec<f64>,
    tag: SemifieldTag,
}

impl SampleSet {
    /// Max-plus samples must be finite; max-times samples strictly positive.
    /// Abscissas must be pairwise distinct.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, tag: SemifieldTag) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Dimension { expected: xs.len(), found: ys.len() });
        }
        if xs.is_empty() {
            return Err(Error::invalid("at least one sample is required"));
        }
        for (i, &v) in xs.iter().chain(&ys).enumerate() {
            if !v.is_finite() {
                return Err(Error::invalid(format!("sample value #{} is not finite: {v}", i % xs.len() + 1)));
            }
            if tag == SemifieldTag::MaxTimes && v <= 0.0 {
                return Err(Error::domain(format!(
                    "max-algebra samples must be strictly positive, found {v}"
                )));
            }
        }
        let mut sorted: Vec<(f64, usize)> = xs.iter().copied().zip(0..).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in sorted.windows(2) {
            if w[1].0 - w[0].0 <= DUPLICATE_ABSCISSA_TOL {
                return Err(Error::invalid(format!(
                    "duplicate abscissa {} at samples {} and {}",
                    w[0].0,
                    w[0].1 + 1,
                    w[1].1 + 1
                )));
            }
        }
        Ok(Self { xs, ys, tag })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn tag(&self) -> SemifieldTag {
        self.tag
    }

    /// Same samples in max-plus coordinates (natural logarithms for
    /// max-times data).
    pub fn to_max_plus(&self) -> SampleSet {
        match self.tag {
            SemifieldTag::MaxPlus => self.clone(),
            SemifieldTag::MaxTimes => SampleSet {
                xs: self.xs.iter().map(|x| x.ln()).collect(),
                ys: self.ys.iter().map(|y| y.ln()).collect(),
                tag: SemifieldTag::MaxPlus,
            },
        }
    }

    /// Samples reordered so that new sample `k` is old sample `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<SampleSet> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() || order.iter().any(|&i| i >= self.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::invalid("order is not a permutation of the samples"));
        }
        Ok(SampleSet {
            xs: order.iter().map(|&i| self.xs[i]).collect(),
            ys: order.iter().map(|&i| self.ys[i]).collect(),
            tag: self.tag,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    /// Number of monomials `N`.
    pub n_terms: usize,
    pub tag: SemifieldTag,
    /// Merge costs within this distance of the minimum count as tied.
    pub tie_tolerance: f64,
    pub exponent_merge_tol: f64,
}

impl FitConfig {
    pub fn new(n_terms: usize, tag: SemifieldTag) -> Self {
        Self {
            n_terms,
            tag,
            tie_tolerance: DEFAULT_TIE_TOLERANCE,
            exponent_merge_tol: DEFAULT_EXPONENT_MERGE_TOL,
        }
    }

    fn validate(&self, samples: &SampleSet) -> Result<()> {
        if self.n_terms == 0 {
            return Err(Error::invalid("number of terms must be at least 1"));
        }
        if self.n_terms > samples.len() {
            return Err(Error::invalid(format!(
                "number of terms {} exceeds the number of samples {}",
                self.n_terms,
                samples.len()
            )));
        }
        for (name, v) in [("tie tolerance", self.tie_tolerance), ("exponent merge tolerance", self.exponent_merge_tol)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!("{name} must be a nonnegative real, got {v}")));
            }
        }
        Ok(())
    }
}

/// `φ_i` for max-plus samples, with monomials `(y_i − y_j, x_j − x_i)`.
pub fn build_phi(samples: &SampleSet, i: usize) -> Result<TropPolynomial> {
    build_phi_with_tol(samples, i, DEFAULT_EXPONENT_MERGE_TOL)
}

fn build_phi_with_tol(samples: &SampleSet, i: usize, tol: f64) -> Result<TropPolynomial> {
    if samples.tag != SemifieldTag::MaxPlus {
        return Err(Error::TagMismatch(SemifieldTag::MaxPlus, samples.tag));
    }
    if i >= samples.len() {
        return Err(Error::invalid(format!("sample index {i} out of range for {} samples", samples.len())));
    }
    let (xi, yi) = (samples.xs[i], samples.ys[i]);
    let terms = samples
        .xs
        .iter()
        .zip(&samples.ys)
        .enumerate()
        .map(|(j, (&xj, &yj))| {
            if j == i {
                Monomial::new(0.0, 0.0)
            } else {
                Monomial::new(yi - yj, xj - xi)
            }
        })
        .collect();
    TropPolynomial::normalize(terms, SemifieldTag::MaxPlus, tol)
}

/// One cluster: its sample indices (0-based, ascending), the summed
/// polynomial `Φ_I = ⊕_{i∈I} φ_i`, and the minimum of `Φ_I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub members: Vec<usize>,
    pub poly: TropPolynomial,
    pub min: MinResult,
}

impl Cluster {
    fn merged(&self, other: &Cluster, tol: f64) -> Result<Cluster> {
        let poly = self.poly.sum_with_tol(&other.poly, tol)?;
        let min = poly.minimize()?;
        let mut members = Vec::with_capacity(self.members.len() + other.members.len());
        members.extend_from_slice(&self.members);
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        Ok(Cluster { members, poly, min })
    }
}

/// Partition under agglomeration, with cached pairwise merge costs.
///
/// Clusters are kept ordered by their smallest member, so the merged
/// cluster always takes the slot of its first part.
#[derive(Debug, Clone)]
pub struct ClusterState {
    clusters: Vec<Cluster>,
    /// `costs[a][b]` is the minimum of `Φ_a ⊕ Φ_b`; empty until the first merge.
    costs: Vec<Vec<f64>>,
    step: usize,
    tie_tolerance: f64,
    merge_tol: f64,
}

impl ClusterState {
    /// All-singletons partition of max-plus samples.
    pub fn new(samples: &SampleSet, config: &FitConfig) -> Result<Self> {
        if samples.tag != SemifieldTag::MaxPlus {
            return Err(Error::TagMismatch(SemifieldTag::MaxPlus, samples.tag));
        }
        let tol = config.exponent_merge_tol;
        let clusters = (0..samples.len())
            .map(|i| {
                let poly = build_phi_with_tol(samples, i, tol)?;
                let min = poly.minimize()?;
                Ok(Cluster { members: vec![i], poly, min })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            clusters,
            costs: Vec::new(),
            step: 0,
            tie_tolerance: config.tie_tolerance,
            merge_tol: tol,
        })
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Number of merges applied so far.
    pub fn step(&self) -> usize {
        self.step
    }

    /// Current objective: the ⊕ (max) of the cluster minima.
    pub fn delta(&self) -> f64 {
        self.clusters
            .iter()
            .map(|c| c.min.mu.value())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Merge cost of clusters `u` and `v`, computed from scratch.
    pub fn merge_cost(&self, u: usize, v: usize) -> Result<TropScalar> {
        let n = self.clusters.len();
        if u >= n || v >= n {
            return Err(Error::invalid(format!("cluster index out of range for {n} clusters")));
        }
        if u == v {
            return Err(Error::invalid("a cluster cannot be merged with itself"));
        }
        let poly = self.clusters[u].poly.sum_with_tol(&self.clusters[v].poly, self.merge_tol)?;
        Ok(poly.minimize()?.mu)
    }

    /// Cached merge cost, if the cache has been built.
    pub fn cached_cost(&self, u: usize, v: usize) -> Option<f64> {
        if u == v {
            return None;
        }
        self.costs.get(u).and_then(|row| row.get(v)).copied()
    }

    fn pair_cost(&self, u: usize, v: usize) -> Result<f64> {
        Ok(self.merge_cost(u, v)?.value())
    }

    fn ensure_costs(&mut self) -> Result<()> {
        let n = self.clusters.len();
        if self.costs.len() == n || n < 2 {
            return Ok(());
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let values = pairs
            .par_iter()
            .map(|&(a, b)| self.pair_cost(a, b))
            .collect::<Result<Vec<_>>>()?;
        let mut costs = vec![vec![f64::NAN; n]; n];
        for (&(a, b), c) in pairs.iter().zip(values) {
            costs[a][b] = c;
            costs[b][a] = c;
        }
        self.costs = costs;
        Ok(())
    }

    /// Pair to merge next: lowest cost, ties within `tie_tolerance` broken
    /// by the smallest members of the two clusters, lexicographically.
    pub fn best_pair(&mut self) -> Result<Option<(usize, usize)>> {
        let n = self.clusters.len();
        if n < 2 {
            return Ok(None);
        }
        self.ensure_costs()?;
        let mut best = f64::INFINITY;
        for a in 0..n {
            for b in a + 1..n {
                best = best.min(self.costs[a][b]);
            }
        }
        let limit = best + self.tie_tolerance;
        for a in 0..n {
            for b in a + 1..n {
                if self.costs[a][b] <= limit {
                    return Ok(Some((a, b)));
                }
            }
        }
        unreachable!("minimum cost pair must exist")
    }

    /// Apply one merge. Only costs involving the new cluster are recomputed.
    pub fn merge_step(&mut self) -> Result<bool> {
        let Some((a, b)) = self.best_pair()? else {
            return Ok(false);
        };
        let merged = self.clusters[a].merged(&self.clusters[b], self.merge_tol)?;
        self.clusters[a] = merged;
        self.clusters.remove(b);
        self.costs.remove(b);
        for row in &mut self.costs {
            row.remove(b);
        }
        let n = self.clusters.len();
        let fresh = (0..n)
            .into_par_iter()
            .map(|k| if k == a { Ok(f64::NAN) } else { self.pair_cost(a, k) })
            .collect::<Result<Vec<_>>>()?;
        for (k, c) in fresh.into_iter().enumerate() {
            self.costs[a][k] = c;
            self.costs[k][a] = c;
        }
        self.step += 1;
        Ok(true)
    }

    /// Merge everything into one cluster at once.
    fn collapse(&mut self) -> Result<()> {
        if self.clusters.len() < 2 {
            return Ok(());
        }
        let merges = self.clusters.len() - 1;
        let mut terms = Vec::new();
        let mut members = Vec::new();
        for c in &self.clusters {
            terms.extend_from_slice(c.poly.monomials());
            members.extend_from_slice(&c.members);
        }
        members.sort_unstable();
        let poly = TropPolynomial::normalize(terms, SemifieldTag::MaxPlus, self.merge_tol)?;
        let min = poly.minimize()?;
        self.clusters = vec![Cluster { members, poly, min }];
        self.costs.clear();
        self.step += merges;
        Ok(())
    }

    /// Check that the clusters partition the samples, that each cluster
    /// polynomial is the sum of its members' `φ_i`, and that every cached
    /// cost matches a fresh evaluation within `tol`.
    pub fn verify(&self, samples: &SampleSet, tol: f64) -> Result<()> {
        let mut seen = vec![false; samples.len()];
        for c in &self.clusters {
            for &i in &c.members {
                if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::invalid(format!("sample {i} is missing or repeated")));
                }
            }
            let mut terms = Vec::new();
            for &i in &c.members {
                terms.extend_from_slice(build_phi_with_tol(samples, i, self.merge_tol)?.monomials());
            }
            let expect = TropPolynomial::normalize(terms, SemifieldTag::MaxPlus, self.merge_tol)?;
            let (mu_expect, mu_got) = (expect.minimize()?.mu.value(), c.min.mu.value());
            if expect.len() != c.poly.len() || (mu_expect - mu_got).abs() > tol {
                return Err(Error::invalid(format!("cluster {:?} polynomial is stale", c.members)));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("clusters do not cover every sample"));
        }
        if !self.costs.is_empty() {
            for a in 0..self.clusters.len() {
                for b in a + 1..self.clusters.len() {
                    let fresh = self.pair_cost(a, b)?;
                    if (fresh - self.costs[a][b]).abs() > tol {
                        return Err(Error::invalid(format!("cached cost ({a},{b}) is stale")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Agglomerate max-plus samples down to `config.n_terms` clusters.
pub fn agglomerate(samples: &SampleSet, config: &FitConfig) -> Result<ClusterState> {
    config.validate(samples)?;
    let mut state = ClusterState::new(samples, config)?;
    if config.n_terms == 1 {
        state.collapse()?;
    } else {
        while state.len() > config.n_terms {
            state.merge_step()?;
        }
    }
    Ok(state)
}

/// Fitted polynomial `P*(x) = ⊕_j θ_j x^{p_j}` with diagnostics. All
/// per-term vectors are ordered by increasing exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub algebra: SemifieldTag,
    pub exponents: Vec<f64>,
    /// Coefficients in the carrier of `algebra`.
    pub coefficients: Vec<f64>,
    /// Squared error `Δ*`.
    pub delta_star: f64,
    /// `√Δ*`: largest per-sample distance between `P*(x_i)` and `y_i`.
    pub error: f64,
    /// Sample indices (0-based) of each term's cluster.
    pub partition: Vec<Vec<usize>>,
    /// Minimum `δ_j` of each cluster polynomial.
    pub per_cluster_minima: Vec<f64>,
    /// Set of optimal exponents for each cluster.
    pub intervals: Vec<(Bound, Bound)>,
    /// Per-sample distance between `P*(x_i)` and `y_i`.
    pub residuals: Vec<f64>,
}

impl FitResult {
    pub fn n_terms(&self) -> usize {
        self.exponents.len()
    }

    pub fn predict(&self, x: f64) -> Result<f64> {
        predict(self, x, self.algebra)
    }

    /// The fitted polynomial with coinciding exponents fused.
    pub fn polynomial(&self) -> Result<TropPolynomial> {
        let terms = self
            .exponents
            .iter()
            .zip(&self.coefficients)
            .map(|(&e, &c)| Monomial::new(c, e))
            .collect();
        TropPolynomial::new(terms, self.algebra)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(self.algebra.one(), f64::max)
    }
}

/// Raw evaluation of `⊕_j θ_j x^{p_j}`.
pub(crate) fn eval_terms(tag: SemifieldTag, exponents: &[f64], coefficients: &[f64], x: f64) -> f64 {
    exponents.iter().zip(coefficients).fold(tag.zero(), |acc, (&p, &c)| {
        tag.oplus_raw(acc, tag.otimes_raw(c, tag.pow_raw(x, p)))
    })
}

/// Distance between prediction and observation at every sample.
pub(crate) fn residuals_of(tag: SemifieldTag, exponents: &[f64], coefficients: &[f64], xs: &[f64], ys: &[f64]) -> Vec<f64> {
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| span_raw(tag, eval_terms(tag, exponents, coefficients, x), y))
        .collect()
}

/// Step 4 of the procedure: exponents, error and coefficients from the
/// final partition of max-plus samples.
pub fn finalize(state: &ClusterState, samples: &SampleSet) -> Result<FitResult> {
    if samples.tag != SemifieldTag::MaxPlus {
        return Err(Error::TagMismatch(SemifieldTag::MaxPlus, samples.tag));
    }
    let mut order: Vec<usize> = (0..state.len()).collect();
    let points: Vec<f64> = state.clusters.iter().map(|c| c.min.select_point()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .total_cmp(&points[b])
            .then(state.clusters[a].members[0].cmp(&state.clusters[b].members[0]))
    });

    let delta_star = state.delta();
    let error = 0.5 * delta_star;
    let mut exponents = Vec::with_capacity(order.len());
    let mut coefficients = Vec::with_capacity(order.len());
    for &k in &order {
        let p = points[k];
        // φ(p) = max_i(x_i·p − y_i)
        let phi = samples
            .xs
            .iter()
            .zip(&samples.ys)
            .map(|(&x, &y)| x * p - y)
            .fold(f64::NEG_INFINITY, f64::max);
        exponents.push(p);
        coefficients.push(error - phi);
    }
    let residuals = residuals_of(SemifieldTag::MaxPlus, &exponents, &coefficients, &samples.xs, &samples.ys);
    Ok(FitResult {
        algebra: SemifieldTag::MaxPlus,
        exponents,
        coefficients,
        delta_star,
        error,
        partition: order.iter().map(|&k| state.clusters[k].members.clone()).collect(),
        per_cluster_minima: order.iter().map(|&k| state.clusters[k].min.mu.value()).collect(),
        intervals: order
            .iter()
            .map(|&k| (state.clusters[k].min.lo, state.clusters[k].min.hi))
            .collect(),
        residuals,
    })
}

/// Sample indices in order of increasing abscissa.
fn x_order(samples: &SampleSet) -> Vec<usize> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples.xs[a].total_cmp(&samples.xs[b]));
    order
}

/// Agglomerate and finalize max-plus samples taken in increasing-x order,
/// so that index-based tie-breaking does not depend on the caller's sample
/// order. Partition and residuals refer to the caller's indices.
fn fit_sorted(samples: &SampleSet, config: &FitConfig) -> Result<FitResult> {
    let order = x_order(samples);
    let sorted = samples.permuted(&order)?;
    let state = agglomerate(&sorted, config)?;
    let mut r = finalize(&state, &sorted)?;
    for part in &mut r.partition {
        for i in part.iter_mut() {
            *i = order[*i];
        }
        part.sort_unstable();
    }
    let mut residuals = vec![0.0; order.len()];
    for (k, &i) in order.iter().enumerate() {
        residuals[i] = r.residuals[k];
    }
    r.residuals = residuals;
    Ok(r)
}

fn check_config_tag(samples: &SampleSet, config: &FitConfig) -> Result<()> {
    if samples.tag != config.tag {
        return Err(Error::TagMismatch(config.tag, samples.tag));
    }
    Ok(())
}

/// Fit a polynomial with `config.n_terms` monomials. Max-times samples
/// are handled by [`fit_maxalgebra`].
pub fn fit(samples: &SampleSet, config: &FitConfig) -> Result<FitResult> {
    check_config_tag(samples, config)?;
    match samples.tag {
        SemifieldTag::MaxPlus => fit_sorted(samples, config),
        SemifieldTag::MaxTimes => fit_maxalgebra(samples, config),
    }
}

/// Fit max-times samples by fitting their logarithms in max-plus and
/// exponentiating error, minima and coefficients. Exponents carry over.
pub fn fit_maxalgebra(samples: &SampleSet, config: &FitConfig) -> Result<FitResult> {
    if samples.tag != SemifieldTag::MaxTimes {
        return Err(Error::TagMismatch(SemifieldTag::MaxTimes, samples.tag));
    }
    let logs = samples.to_max_plus();
    let inner = FitConfig { tag: SemifieldTag::MaxPlus, ..*config };
    let r = fit_sorted(&logs, &inner)?;
    let tag = SemifieldTag::MaxTimes;
    let coefficients: Vec<f64> = r.coefficients.iter().map(|c| c.exp()).collect();
    if let Some(c) = r.coefficients.iter().find(|c| !(c.exp().is_normal())) {
        return Err(Error::domain(format!("coefficient e^{c} is outside the floating-point range")));
    }
    let residuals = residuals_of(tag, &r.exponents, &coefficients, &samples.xs, &samples.ys);
    Ok(FitResult {
        algebra: tag,
        delta_star: r.delta_star.exp(),
        error: r.error.exp(),
        per_cluster_minima: r.per_cluster_minima.iter().map(|d| d.exp()).collect(),
        coefficients,
        residuals,
        exponents: r.exponents,
        partition: r.partition,
        intervals: r.intervals,
    })
}

/// `P*(x)`: `max_j(p_j·x + θ_j)` in max-plus, `max_j θ_j·x^{p_j}` in
/// max-times.
pub fn predict(result: &FitResult, x: f64, tag: SemifieldTag) -> Result<f64> {
    if tag != result.algebra {
        return Err(Error::TagMismatch(result.algebra, tag));
    }
    let x = tag.check(x)?;
    if tag.is_zero_raw(x) || !x.is_finite() {
        return Err(Error::domain(format!("cannot evaluate at {x}: argument must be a nonzero finite carrier value")));
    }
    Ok(eval_terms(tag, &result.exponents, &result.coefficients, x))
}

/// `Δ*` for every `N` in `n_min..=n_max` from a single merge path,
/// ordered by increasing `N`.
pub fn sweep(samples: &SampleSet, n_min: usize, n_max: usize, tag: SemifieldTag) -> Result<Vec<(usize, f64)>> {
    if samples.tag != tag {
        return Err(Error::TagMismatch(tag, samples.tag));
    }
    if n_min == 0 || n_min > n_max || n_max > samples.len() {
        return Err(Error::invalid(format!(
            "term range {n_min}..={n_max} must satisfy 1 <= min <= max <= {}",
            samples.len()
        )));
    }
    let logs = samples.to_max_plus();
    let logs = logs.permuted(&x_order(&logs))?;
    let mut state = ClusterState::new(&logs, &FitConfig::new(n_min, SemifieldTag::MaxPlus))?;
    let mut out = Vec::with_capacity(n_max - n_min + 1);
    loop {
        if state.len() <= n_max {
            out.push((state.len(), tag.from_max_plus_raw(state.delta())));
        }
        if state.len() <= n_min {
            break;
        }
        state.merge_step()?;
    }
    out.reverse();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MP: SemifieldTag = SemifieldTag::MaxPlus;
    const MT: SemifieldTag = SemifieldTag::MaxTimes;

    fn samples(xs: &[f64], ys: &[f64], tag: SemifieldTag) -> SampleSet {
        SampleSet::new(xs.to_vec(), ys.to_vec(), tag).unwrap()
    }

    fn pairs(p: &TropPolynomial) -> Vec<(f64, f64)> {
        p.monomials().iter().map(|m| (m.coeff, m.exp)).collect()
    }

    #[test]
    fn sample_set_validation() {
        assert!(SampleSet::new(vec![], vec![], MP).is_err());
        assert!(matches!(SampleSet::new(vec![1.0], vec![1.0, 2.0], MP), Err(Error::Dimension { .. })));
        assert!(matches!(SampleSet::new(vec![1.0, 1.0], vec![1.0, 2.0], MP), Err(Error::InvalidInput(_))));
        assert!(matches!(SampleSet::new(vec![1.0, 1.0 + 1e-13], vec![1.0, 2.0], MP), Err(Error::InvalidInput(_))));
        assert!(matches!(SampleSet::new(vec![1.0, f64::NAN], vec![1.0, 2.0], MP), Err(Error::InvalidInput(_))));
        assert!(matches!(SampleSet::new(vec![1.0, 2.0], vec![0.0, 2.0], MT), Err(Error::Domain(_))));
        assert!(SampleSet::new(vec![1.0, 2.0], vec![-1.0, 2.0], MP).is_ok());
    }

    #[test]
    fn phi_examples() {
        let one = samples(&[3.0], &[5.0], MP);
        assert_eq!(pairs(&build_phi(&one, 0).unwrap()), vec![(0.0, 0.0)]);

        let two = samples(&[0.0, 1.0], &[0.0, 1.0], MP);
        assert_eq!(pairs(&build_phi(&two, 0).unwrap()), vec![(0.0, 0.0), (-1.0, 1.0)]);
        assert_eq!(pairs(&build_phi(&two, 1).unwrap()), vec![(1.0, -1.0), (0.0, 0.0)]);
        assert!(build_phi(&two, 2).is_err());
        assert!(build_phi(&samples(&[1.0], &[1.0], MT), 0).is_err());
    }

    #[test]
    fn every_phi_has_unit_constant_term() {
        let s = samples(&[0.0, 0.5, 1.3, 2.0], &[1.0, -2.0, 0.25, 4.0], MP);
        for i in 0..s.len() {
            let p = build_phi(&s, i).unwrap();
            assert!(p.monomials().iter().any(|m| m.exp == 0.0 && m.coeff == 0.0));
        }
    }

    #[test]
    fn merge_cost_examples() {
        let s = samples(&[0.0, 1.0], &[0.0, 1.0], MP);
        let state = ClusterState::new(&s, &FitConfig::new(1, MP)).unwrap();
        // φ_1 ⊕ φ_2 = max(1 − p, 0, p − 1), minimum 0 at p = 1
        assert_eq!(state.merge_cost(0, 1).unwrap().value(), 0.0);
        assert!(state.merge_cost(0, 0).is_err());
        assert!(state.merge_cost(0, 2).is_err());

        // duplicate polynomials: two samples on one line
        let s = samples(&[0.0, 1.0, 2.0], &[0.0, 2.0, 4.0], MP);
        let state = ClusterState::new(&s, &FitConfig::new(1, MP)).unwrap();
        let c = state.merge_cost(0, 1).unwrap().value();
        assert!(c >= state.clusters()[0].min.mu.value().max(state.clusters()[1].min.mu.value()));
    }

    #[test]
    fn no_merges_when_terms_equal_samples() {
        let s = samples(&[0.0, 1.0, 2.5], &[1.0, 0.0, 3.0], MP);
        let state = agglomerate(&s, &FitConfig::new(3, MP)).unwrap();
        assert_eq!(state.step(), 0);
        let members: Vec<_> = state.clusters().iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn single_term_is_forced_partition() {
        let s = samples(&[0.0, 1.0, 2.5, 3.0], &[1.0, 0.0, 3.0, 2.0], MP);
        let state = agglomerate(&s, &FitConfig::new(1, MP)).unwrap();
        assert_eq!(state.len(), 1);
        let mut all = build_phi(&s, 0).unwrap();
        for i in 1..s.len() {
            all = all.sum(&build_phi(&s, i).unwrap()).unwrap();
        }
        assert_eq!(state.delta(), all.minimize().unwrap().mu.value());
        // the merge path agrees with the shortcut
        let mut stepped = ClusterState::new(&s, &FitConfig::new(1, MP)).unwrap();
        while stepped.merge_step().unwrap() {}
        assert!((stepped.delta() - state.delta()).abs() < 1e-12);
    }

    #[test]
    fn exact_single_monomial() {
        // y = 2x − 1 is one max-plus monomial
        let xs = [0.0, 0.5, 1.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x - 1.0).collect();
        let r = fit(&samples(&xs, &ys, MP), &FitConfig::new(1, MP)).unwrap();
        assert!(r.delta_star.abs() < 1e-12);
        assert!((r.exponents[0] - 2.0).abs() < 1e-12);
        assert!((r.coefficients[0] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_sample() {
        let r = fit(&samples(&[2.0], &[7.0], MP), &FitConfig::new(1, MP)).unwrap();
        assert_eq!(r.delta_star, 0.0);
        assert_eq!(r.exponents, vec![0.0]);
        assert_eq!(r.predict(2.0).unwrap(), 7.0);
    }

    #[test]
    fn max_algebra_power_law() {
        // y = 3·x^1.5
        let xs = [0.5, 1.0, 2.0, 4.0, 9.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(1.5)).collect();
        let r = fit_maxalgebra(&samples(&xs, &ys, MT), &FitConfig::new(1, MT)).unwrap();
        assert!((r.delta_star - 1.0).abs() < 1e-12);
        assert!((r.exponents[0] - 1.5).abs() < 1e-12);
        assert!((r.coefficients[0] - 3.0).abs() < 1e-12);
        assert!(fit_maxalgebra(&samples(&xs, &ys, MP), &FitConfig::new(1, MT)).is_err());
    }

    #[test]
    fn config_errors() {
        let s = samples(&[0.0, 1.0], &[0.0, 1.0], MP);
        assert!(fit(&s, &FitConfig::new(0, MP)).is_err());
        assert!(fit(&s, &FitConfig::new(3, MP)).is_err());
        assert!(matches!(fit(&s, &FitConfig::new(1, MT)), Err(Error::TagMismatch(..))));
        let bad = FitConfig { tie_tolerance: f64::NAN, ..FitConfig::new(1, MP) };
        assert!(fit(&s, &bad).is_err());
    }

    #[test]
    fn predict_checks_domain() {
        let xs = [1.0, 2.0, 3.0];
        let r = fit(&samples(&xs, &[1.0, 2.0, 3.0], MT), &FitConfig::new(1, MT)).unwrap();
        assert!(predict(&r, 0.0, MT).is_err());
        assert!(predict(&r, -1.0, MT).is_err());
        assert!(predict(&r, 1.0, MP).is_err());
        assert!((predict(&r, 2.0, MT).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_range_errors() {
        let s = samples(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0], MP);
        assert!(sweep(&s, 0, 2, MP).is_err());
        assert!(sweep(&s, 3, 2, MP).is_err());
        assert!(sweep(&s, 1, 4, MP).is_err());
        assert_eq!(sweep(&s, 1, 3, MP).unwrap().len(), 3);
    }

    #[test]
    fn permuted_rejects_non_permutations() {
        let s = samples(&[0.0, 1.0], &[0.0, 1.0], MP);
        assert!(s.permuted(&[0, 0]).is_err());
        assert!(s.permuted(&[0]).is_err());
        assert_eq!(s.permuted(&[1, 0]).unwrap().xs(), &[1.0, 0.0]);
    }
}
