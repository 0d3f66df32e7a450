//! Tropical vectors and matrices, the span distance, and the closed-form
//! best approximate solution of `A ⊗ x = b`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::semifield::{SemifieldTag, TropScalar};

/// Column vector over one semifield. Entries are stored as carrier values.
#[derive(Debug, Clone, PartialEq)]
pub struct TropVector {
    entries: Vec<f64>,
    tag: SemifieldTag,
}

impl TropVector {
    pub fn new(entries: Vec<f64>, tag: SemifieldTag) -> Result<Self> {
        for &v in &entries {
            tag.check(v)?;
        }
        let entries = entries.into_iter().map(|v| v + 0.0).collect();
        Ok(Self { entries, tag })
    }

    pub fn from_scalars(scalars: &[TropScalar]) -> Result<Self> {
        let tag = scalars
            .first()
            .map(|s| s.tag())
            .ok_or_else(|| Error::invalid("cannot infer semifield of an empty vector"))?;
        let mut entries = Vec::with_capacity(scalars.len());
        for s in scalars {
            if s.tag() != tag {
                return Err(Error::TagMismatch(tag, s.tag()));
            }
            entries.push(s.value());
        }
        Ok(Self { entries, tag })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn tag(&self) -> SemifieldTag {
        self.tag
    }

    pub fn get(&self, i: usize) -> TropScalar {
        TropScalar::from_raw(self.entries[i], self.tag)
    }

    pub fn values(&self) -> &[f64] {
        &self.entries
    }

    /// No entry equals 𝟘.
    pub fn is_regular(&self) -> bool {
        self.entries.iter().all(|&v| !self.tag.is_zero_raw(v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| self.tag.is_zero_raw(v))
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| !self.tag.is_zero_raw(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Multiplicative conjugate `x⁻`, returned with row semantics.
    pub fn conjugate(&self) -> Result<TropVector> {
        if self.is_zero() {
            return Err(Error::domain("conjugate of the zero vector"));
        }
        Ok(TropVector {
            entries: self.entries.iter().map(|&v| self.tag.conj_raw(v)).collect(),
            tag: self.tag,
        })
    }

    /// Scalar multiple `c ⊗ x`.
    pub fn scale(&self, c: TropScalar) -> Result<TropVector> {
        if c.tag() != self.tag {
            return Err(Error::TagMismatch(self.tag, c.tag()));
        }
        Ok(TropVector {
            entries: self.entries.iter().map(|&v| self.tag.otimes_raw(c.value(), v)).collect(),
            tag: self.tag,
        })
    }

    /// Inner product `row ⊗ col` of two equal-length vectors.
    pub fn dot(&self, other: &TropVector) -> Result<TropScalar> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch(self.tag, other.tag));
        }
        if self.len() != other.len() {
            return Err(Error::Dimension { expected: self.len(), found: other.len() });
        }
        let tag = self.tag;
        let v = self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(tag.zero(), |acc, (&a, &b)| tag.oplus_raw(acc, tag.otimes_raw(a, b)));
        Ok(TropScalar::from_raw(v, tag))
    }
}

/// Dense row-major matrix over one semifield.
#[derive(Debug, Clone, PartialEq)]
pub struct TropMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    tag: SemifieldTag,
}

impl TropMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>, tag: SemifieldTag) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, found: data.len() });
        }
        for &v in &data {
            tag.check(v)?;
        }
        let data = data.into_iter().map(|v| v + 0.0).collect();
        Ok(Self { rows, cols, data, tag })
    }

    pub fn from_rows(rows: &[Vec<f64>], tag: SemifieldTag) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension { expected: cols, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, data, tag)
    }

    /// Tropical identity: 𝟙 on the diagonal, 𝟘 elsewhere.
    pub fn identity(n: usize, tag: SemifieldTag) -> Self {
        let mut data = vec![tag.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = tag.one();
        }
        Self { rows: n, cols: n, data, tag }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> SemifieldTag {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> TropScalar {
        TropScalar::from_raw(self.data[i * self.cols + j], self.tag)
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_row_regular(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().any(|&v| !self.tag.is_zero_raw(v)))
    }

    pub fn is_column_regular(&self) -> bool {
        (0..self.cols).all(|j| (0..self.rows).any(|i| !self.tag.is_zero_raw(self.data[i * self.cols + j])))
    }

    pub fn is_regular(&self) -> bool {
        self.is_row_regular() && self.is_column_regular()
    }
}

/// `A ⊗ x`. Each row is reduced left to right.
pub fn matvec(a: &TropMatrix, x: &TropVector) -> Result<TropVector> {
    if a.tag != x.tag {
        return Err(Error::TagMismatch(a.tag, x.tag));
    }
    if a.cols != x.len() {
        return Err(Error::Dimension { expected: a.cols, found: x.len() });
    }
    let tag = a.tag;
    let entries = (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(&x.entries)
                .fold(tag.zero(), |acc, (&aik, &xk)| tag.oplus_raw(acc, tag.otimes_raw(aik, xk)))
        })
        .collect();
    Ok(TropVector { entries, tag })
}

/// `x⁻ A` for a column vector `x` and matrix `A`, as a row vector.
fn conj_times_matrix(x: &TropVector, a: &TropMatrix) -> TropVector {
    let tag = a.tag;
    let mut out = vec![tag.zero(); a.cols];
    for i in 0..a.rows {
        let ci = tag.conj_raw(x.entries[i]);
        for (o, &aij) in out.iter_mut().zip(a.row(i)) {
            *o = tag.oplus_raw(*o, tag.otimes_raw(ci, aij));
        }
    }
    TropVector { entries: out, tag }
}

/// Value of the span distance. `Infinite` marks vectors with different
/// supports and compares greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Finite(TropScalar),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<TropScalar> {
        match self {
            Distance::Finite(s) => Some(s),
            Distance::Infinite => None,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.partial_cmp(b),
            (Distance::Finite(_), Distance::Infinite) => Some(Ordering::Less),
            (Distance::Infinite, Distance::Finite(_)) => Some(Ordering::Greater),
            (Distance::Infinite, Distance::Infinite) => Some(Ordering::Equal),
        }
    }
}

/// Component of the distance at one coordinate, `x y⁻¹ ⊕ x⁻¹ y`, for
/// nonzero carrier values.
#[inline]
pub(crate) fn span_raw(tag: SemifieldTag, x: f64, y: f64) -> f64 {
    tag.oplus_raw(tag.otimes_raw(x, tag.inv_raw(y)), tag.otimes_raw(tag.inv_raw(x), y))
}

/// `d(x, y) = y⁻x ⊕ x⁻y` over the common support. Chebyshev distance in
/// max-plus, largest ratio in max-times.
pub fn distance(x: &TropVector, y: &TropVector) -> Result<Distance> {
    if x.tag != y.tag {
        return Err(Error::TagMismatch(x.tag, y.tag));
    }
    if x.len() != y.len() {
        return Err(Error::Dimension { expected: x.len(), found: y.len() });
    }
    let tag = x.tag;
    let mut acc = tag.one();
    for (&xi, &yi) in x.entries.iter().zip(&y.entries) {
        match (tag.is_zero_raw(xi), tag.is_zero_raw(yi)) {
            (true, true) => {}
            (false, false) => acc = tag.oplus_raw(acc, span_raw(tag, xi, yi)),
            _ => return Ok(Distance::Infinite),
        }
    }
    Ok(Distance::Finite(TropScalar::from_raw(acc, tag)))
}

fn check_system(a: &TropMatrix, b: &TropVector) -> Result<()> {
    if a.tag != b.tag {
        return Err(Error::TagMismatch(a.tag, b.tag));
    }
    if a.rows != b.len() {
        return Err(Error::Dimension { expected: a.rows, found: b.len() });
    }
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::invalid("empty system"));
    }
    if !a.is_regular() {
        return Err(Error::domain("matrix has a zero row or column"));
    }
    if !b.is_regular() {
        return Err(Error::domain("right-hand side has a zero entry"));
    }
    Ok(())
}

/// Residual `Δ = (A (b⁻A)⁻)⁻ b`; always ≥ 𝟙, with equality iff the
/// system is solvable.
pub fn residual_delta(a: &TropMatrix, b: &TropVector) -> Result<TropScalar> {
    check_system(a, b)?;
    Ok(TropScalar::from_raw(delta_and_maximal(a, b).0, a.tag))
}

fn delta_and_maximal(a: &TropMatrix, b: &TropVector) -> (f64, TropVector) {
    let tag = a.tag;
    // A regular and b regular make every entry of b⁻A nonzero.
    let bma = conj_times_matrix(b, a);
    let maximal = TropVector {
        entries: bma.entries.iter().map(|&v| tag.inv_raw(v)).collect(),
        tag,
    };
    let approx = matvec(a, &maximal).expect("dimensions checked");
    // Δ ≥ 𝟙 holds exactly; starting the fold at 𝟙 absorbs rounding below it.
    let delta = approx
        .entries
        .iter()
        .zip(&b.entries)
        .fold(tag.one(), |acc, (&ci, &bi)| tag.oplus_raw(acc, tag.otimes_raw(tag.conj_raw(ci), bi)));
    (delta, maximal)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestApproxResult {
    /// `Δ`, the squared approximation error.
    pub delta: TropScalar,
    /// `√Δ`, the distance achieved by `solution`.
    pub error: TropScalar,
    pub solution: TropVector,
    /// `Δ == 𝟙` within 1e-12 in the carrier.
    pub exact: bool,
}

/// Closed-form minimizer of `d(A x, b)`: `x* = √Δ (b⁻A)⁻`.
pub fn best_approx_solve(a: &TropMatrix, b: &TropVector) -> Result<BestApproxResult> {
    check_system(a, b)?;
    let tag = a.tag;
    let (delta, maximal) = delta_and_maximal(a, b);
    let delta = TropScalar::from_raw(delta, tag);
    let error = delta.sqrt()?;
    let solution = maximal.scale(error)?;
    let exact = (delta.value() - tag.one()).abs() <= 1e-12;
    Ok(BestApproxResult { delta, error, solution, exact })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NEG_INF: f64 = f64::NEG_INFINITY;
    const MP: SemifieldTag = SemifieldTag::MaxPlus;
    const MT: SemifieldTag = SemifieldTag::MaxTimes;

    fn v(e: &[f64], tag: SemifieldTag) -> TropVector {
        TropVector::new(e.to_vec(), tag).unwrap()
    }

    fn m(rows: &[&[f64]], tag: SemifieldTag) -> TropMatrix {
        TropMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), tag).unwrap()
    }

    #[test]
    fn matvec_examples() {
        let a = m(&[&[0.0, 1.0], &[2.0, NEG_INF]], MP);
        assert_eq!(matvec(&a, &v(&[0.0, 0.0], MP)).unwrap(), v(&[1.0, 2.0], MP));
        let id = TropMatrix::identity(2, MP);
        assert_eq!(matvec(&id, &v(&[3.0, 7.0], MP)).unwrap(), v(&[3.0, 7.0], MP));
        let a = m(&[&[1.0, 2.0], &[3.0, 0.0]], MT);
        assert_eq!(matvec(&a, &v(&[1.0, 1.0], MT)).unwrap(), v(&[2.0, 3.0], MT));
    }

    #[test]
    fn matvec_dimension_and_tag_errors() {
        let a = m(&[&[0.0, 1.0]], MP);
        assert!(matches!(matvec(&a, &v(&[0.0], MP)), Err(Error::Dimension { .. })));
        assert!(matches!(matvec(&a, &v(&[1.0, 1.0], MT)), Err(Error::TagMismatch(..))));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(v(&[1.0, 2.0], MP).conjugate().unwrap(), v(&[-1.0, -2.0], MP));
        assert_eq!(v(&[1.0, NEG_INF], MP).conjugate().unwrap(), v(&[-1.0, NEG_INF], MP));
        assert_eq!(v(&[2.0, 4.0], MT).conjugate().unwrap(), v(&[0.5, 0.25], MT));
        assert!(v(&[NEG_INF, NEG_INF], MP).conjugate().is_err());
    }

    #[test]
    fn distance_examples() {
        // direct evaluation: max(|1-3|, |2-1|) = 2
        let d = distance(&v(&[1.0, 2.0], MP), &v(&[3.0, 1.0], MP)).unwrap();
        assert_eq!(d, Distance::Finite(TropScalar::max_plus(2.0).unwrap()));
        let x = v(&[0.3, -1.7, 4.0], MP);
        assert_eq!(distance(&x, &x).unwrap(), Distance::Finite(TropScalar::one(MP)));
        let d = distance(&v(&[1.0, NEG_INF], MP), &v(&[1.0, 0.0], MP)).unwrap();
        assert_eq!(d, Distance::Infinite);
        let z = v(&[NEG_INF, NEG_INF], MP);
        assert_eq!(distance(&z, &z).unwrap(), Distance::Finite(TropScalar::one(MP)));
        // ratio metric: max(4/2, 2/4, 3/3) = 2
        let d = distance(&v(&[2.0, 4.0, 3.0], MT), &v(&[4.0, 2.0, 3.0], MT)).unwrap();
        assert_eq!(d.finite().unwrap().value(), 2.0);
    }

    #[test]
    fn infinite_distance_dominates() {
        let f = Distance::Finite(TropScalar::max_plus(1e300).unwrap());
        assert!(Distance::Infinite > f);
        let g = Distance::Finite(TropScalar::max_times(1e300).unwrap());
        assert!(g < Distance::Infinite);
    }

    #[test]
    fn residual_delta_examples() {
        // b⁻A = 0, A(b⁻A)⁻ = (0,0), (·)⁻b = max(0, 2) = 2
        let d = residual_delta(&m(&[&[0.0], &[0.0]], MP), &v(&[0.0, 2.0], MP)).unwrap();
        assert_eq!(d.value(), 2.0);
        // multiplicative analogue: b⁻A = 1, A(b⁻A)⁻ = (1,1), (·)⁻b = max(1, 4) = 4
        let d = residual_delta(&m(&[&[1.0], &[1.0]], MT), &v(&[1.0, 4.0], MT)).unwrap();
        assert_eq!(d.value(), 4.0);
        let a = m(&[&[0.0, 1.5], &[-2.0, 3.0], &[4.0, 0.5]], MP);
        let b = matvec(&a, &v(&[0.25, -1.0], MP)).unwrap();
        assert_eq!(residual_delta(&a, &b).unwrap().value(), 0.0);
    }

    #[test]
    fn best_approx_examples() {
        let r = best_approx_solve(&m(&[&[0.0], &[0.0]], MP), &v(&[0.0, 2.0], MP)).unwrap();
        assert_eq!(r.solution, v(&[1.0], MP));
        assert_eq!(r.error.value(), 1.0);
        assert!(!r.exact);

        let r = best_approx_solve(&m(&[&[1.0], &[1.0]], MT), &v(&[1.0, 4.0], MT)).unwrap();
        assert_eq!(r.solution, v(&[2.0], MT));
        assert_eq!(r.error.value(), 2.0);

        let a = m(&[&[0.0, 1.0], &[2.0, -1.0]], MP);
        let x0 = v(&[0.5, 3.0], MP);
        let b = matvec(&a, &x0).unwrap();
        let r = best_approx_solve(&a, &b).unwrap();
        assert!(r.exact);
        assert_eq!(r.error.value(), 0.0);
        assert_eq!(matvec(&a, &r.solution).unwrap(), b);
        // maximal solution dominates every exact solution
        assert!(r.solution.values().iter().zip(x0.values()).all(|(s, x)| s >= x));
    }

    #[test]
    fn solver_rejects_irregular_input() {
        let a = m(&[&[0.0, NEG_INF], &[1.0, NEG_INF]], MP);
        assert!(matches!(best_approx_solve(&a, &v(&[0.0, 0.0], MP)), Err(Error::Domain(_))));
        let a = m(&[&[0.0], &[1.0]], MP);
        assert!(matches!(residual_delta(&a, &v(&[0.0, NEG_INF], MP)), Err(Error::Domain(_))));
        assert!(matches!(residual_delta(&a, &v(&[0.0], MP)), Err(Error::Dimension { .. })));
    }
}
