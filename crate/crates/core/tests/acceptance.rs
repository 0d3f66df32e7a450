//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tropfit::dataset::demo_data;
use tropfit::linalg::{distance, matvec};
use tropfit::{
    exact_fit, fit, grid_minimize, residual_check, sweep, FitConfig, FitResult, Monomial, SampleSet, SemifieldTag,
    TropMatrix, TropPolynomial, TropScalar, TropVector,
};

const MP: SemifieldTag = SemifieldTag::MaxPlus;
const MT: SemifieldTag = SemifieldTag::MaxTimes;

/// Reported values are rounded to four decimals.
const REPORTED_TOL: f64 = 2e-3;
const RESIDUAL_TOL: f64 = 1e-9;
const INTERVAL_SLACK: f64 = 1e-3;
const GRID_STEP: f64 = 1e-4;
const GRID_TOL: f64 = 2e-4;
const ENDPOINT_TOL: f64 = 1e-9;
const ALGEBRA_TOL: f64 = 1e-12;

const SWEEP_REPORTED: [f64; 11] = [1.1690, 0.5234, 0.1722, 0.1054, 0.0616, 0.0321, 0.0263, 0.0240, 0.0114, 0.0, 0.0];

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn demo(tag: SemifieldTag) -> SampleSet {
    let (xs, ys) = demo_data();
    SampleSet::new(xs, ys, tag).unwrap()
}

fn timed_fit(samples: &SampleSet, n: usize) -> (FitResult, Duration) {
    let start = Instant::now();
    let r = fit(samples, &FitConfig::new(n, samples.tag())).unwrap();
    (r, start.elapsed())
}

fn criterion_1() -> Outcome {
    let samples = demo(MP);
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, reported) in [(5, 0.1054), (7, 0.0321), (11, 0.0)] {
        let (r, took) = timed_fit(&samples, n);
        let within = (r.delta_star - reported).abs() <= REPORTED_TOL;
        let fast = took < Duration::from_secs(1);
        let residual_ok = (residual_check(&r, &samples).unwrap() - r.error).abs() <= RESIDUAL_TOL;
        ok &= within && fast && residual_ok;
        notes.push(format!("N={n} Δ*={:.6} (reported {reported}) {:?}", r.delta_star, took));
    }
    Outcome { ok, detail: notes.join("; ") }
}

fn criterion_2() -> Outcome {
    let samples = demo(MP);
    let start = Instant::now();
    let rows = sweep(&samples, 2, 12, MP).unwrap();
    let took = start.elapsed();
    let ns: Vec<usize> = rows.iter().map(|r| r.0).collect();
    if ns != (2..=12).collect::<Vec<_>>() {
        return fail(format!("unexpected term counts {ns:?}"));
    }
    let worst = rows
        .iter()
        .zip(SWEEP_REPORTED)
        .map(|(&(_, d), want)| (d - want).abs())
        .fold(0.0, f64::max);
    let monotone = rows.windows(2).all(|w| w[1].1 <= w[0].1);
    let detail = format!(
        "Δ*={:?} worst deviation {worst:.2e}, monotone={monotone}, {took:?}",
        rows.iter().map(|r| (r.1 * 1e4).round() / 1e4).collect::<Vec<_>>()
    );
    if worst <= REPORTED_TOL && monotone && took < Duration::from_secs(2) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_3() -> Outcome {
    let samples = demo(MT);
    let (r5, t5) = timed_fit(&samples, 5);
    let (r7, t7) = timed_fit(&samples, 7);
    let distinct = r7.polynomial().unwrap().len();
    let ok = (r5.delta_star - 1.0330).abs() <= REPORTED_TOL
        && (r7.delta_star - 1.0238).abs() <= REPORTED_TOL
        && distinct == 6
        && t5 < Duration::from_secs(1)
        && t7 < Duration::from_secs(1);
    Outcome {
        ok,
        detail: format!(
            "N=5 Δ*={:.6} {t5:?}; N=7 Δ*={:.6} {t7:?} with {distinct} distinct monomials",
            r5.delta_star, r7.delta_star
        ),
    }
}

fn random_samples(rng: &mut StdRng, m: usize, tag: SemifieldTag) -> SampleSet {
    loop {
        let mut xs: Vec<f64> = (0..m).map(|_| rng.gen_range(-5.0..5.0)).collect();
        xs.sort_by(f64::total_cmp);
        let ys: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let (xs, ys) = match tag {
            MP => (xs, ys),
            MT => (xs.iter().map(|x| (x * 0.4).exp()).collect(), ys.iter().map(|y| y.exp()).collect()),
        };
        if let Ok(s) = SampleSet::new(xs, ys, tag) {
            return s;
        }
    }
}

/// `d(X(p) θ, y)` built directly from the matrix form.
fn matrix_distance(samples: &SampleSet, exponents: &[f64], theta: &[f64]) -> f64 {
    let tag = samples.tag();
    let rows: Vec<Vec<f64>> = samples
        .xs()
        .iter()
        .map(|&x| {
            exponents
                .iter()
                .map(|&p| TropScalar::new(x, tag).unwrap().pow(p).unwrap().value())
                .collect()
        })
        .collect();
    let xm = TropMatrix::from_rows(&rows, tag).unwrap();
    let th = TropVector::new(theta.to_vec(), tag).unwrap();
    let y = TropVector::new(samples.ys().to_vec(), tag).unwrap();
    distance(&matvec(&xm, &th).unwrap(), &y).unwrap().finite().unwrap().value()
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut cases: Vec<SampleSet> = vec![demo(MP), demo(MT)];
    for k in 0..40 {
        let m = rng.gen_range(2..=14);
        cases.push(random_samples(&mut rng, m, if k % 2 == 0 { MP } else { MT }));
    }
    let mut fits = 0;
    let mut worst_residual = 0.0f64;
    for samples in &cases {
        let ns: Vec<usize> = if samples.len() == 21 { vec![1, 3, 5, 7, 11, 21] } else { (1..=samples.len()).collect() };
        for n in ns {
            let r = fit(samples, &FitConfig::new(n, samples.tag())).unwrap();
            fits += 1;
            let recomputed = residual_check(&r, samples).unwrap();
            let gap = match samples.tag() {
                MP => (recomputed - r.error).abs(),
                MT => (recomputed.ln() - r.error.ln()).abs(),
            };
            worst_residual = worst_residual.max(gap);
            if gap > RESIDUAL_TOL {
                return fail(format!("N={n}: recomputed {recomputed} vs reported {}", r.error));
            }
            let baseline = matrix_distance(samples, &r.exponents, &r.coefficients);
            let tries = 10_000 / r.n_terms().max(1) / 4 + 1;
            let perturbations = if samples.len() == 21 { 10_000 } else { tries };
            for t in 0..perturbations {
                let scale = [1e-6, 1e-3, 0.1, 1.0][t % 4];
                let theta: Vec<f64> = r
                    .coefficients
                    .iter()
                    .map(|&c| {
                        let d = rng.gen_range(-scale..scale);
                        match samples.tag() {
                            MP => c + d,
                            MT => c * d.exp(),
                        }
                    })
                    .collect();
                let dist = matrix_distance(samples, &r.exponents, &theta);
                if dist < baseline - ALGEBRA_TOL * baseline.abs().max(1.0) {
                    return fail(format!("N={n}: perturbed θ reaches {dist} below {baseline}"));
                }
            }
        }
    }
    pass(format!("{fits} fits, worst |d(Xθ,y) − √Δ*| = {worst_residual:.2e}, no perturbation improved"))
}

fn criterion_5() -> Outcome {
    let reported: [(SemifieldTag, usize, &[f64]); 4] = [
        (MP, 5, &[-8.8868, -1.3989, 0.2591, 1.3982, 2.7450]),
        (MP, 7, &[-8.8868, -2.0153, -0.8395, 0.2591, 1.3982, 2.3938, 3.2114]),
        (MT, 5, &[-5.9139, -2.9957, -0.2581, 2.3669, 4.0040]),
        (MT, 7, &[-5.9139, -3.3320, -2.5249, -0.2581, 2.3669, 4.0040, 4.0040]),
    ];
    let mut checked = 0;
    for (tag, n, exps) in reported {
        let r = fit(&demo(tag), &FitConfig::new(n, tag)).unwrap();
        for (j, (&p, &(lo, hi))) in exps.iter().zip(&r.intervals).enumerate() {
            let above = lo.finite().is_none_or(|l| p >= l - INTERVAL_SLACK);
            let below = hi.finite().is_none_or(|h| p <= h + INTERVAL_SLACK);
            if !(above && below) {
                return fail(format!("{tag} N={n} term {}: {p} outside [{lo:?}, {hi:?}]", j + 1));
            }
            checked += 1;
        }
    }
    pass(format!("{checked} reported exponents inside their cluster intervals"))
}

fn random_poly(rng: &mut StdRng) -> TropPolynomial {
    let l = rng.gen_range(2..=8);
    let mut terms = Vec::with_capacity(l);
    // At least one slope of each sign. |slope| >= 0.5 keeps crossings well
    // inside the grid; |slope| <= 4 keeps the grid's own discretization
    // error (up to s1*s2/(s1+s2) * step at a kink) within tolerance.
    for j in 0..l {
        let mag = rng.gen_range(0.5..=4.0);
        let exp = match j {
            0 => -mag,
            1 => mag,
            _ if rng.gen_bool(0.15) => 0.0,
            _ if rng.gen_bool(0.5) => -mag,
            _ => mag,
        };
        terms.push(Monomial::new(rng.gen_range(-5.0..5.0), exp));
    }
    TropPolynomial::new(terms, MP).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let mut worst_grid = 0.0f64;
    let mut worst_end = 0.0f64;
    for _ in 0..1000 {
        let p = random_poly(&mut rng);
        let r = p.minimize().unwrap();
        let (_, grid) = grid_minimize(&p, -50.0, 50.0, GRID_STEP).unwrap();
        worst_grid = worst_grid.max((grid - r.mu.value()).abs());
        for b in [r.lo, r.hi] {
            if let Some(t) = b.finite() {
                let v = p.eval(TropScalar::max_plus(t).unwrap()).unwrap().value();
                worst_end = worst_end.max((v - r.mu.value()).abs());
            }
        }
    }
    let detail = format!("worst |μ − grid| = {worst_grid:.2e}, worst endpoint gap = {worst_end:.2e}");
    if worst_grid <= GRID_TOL && worst_end <= ENDPOINT_TOL {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut equal = 0;
    for case in 0..200 {
        let m = rng.gen_range(2..=8);
        let n = rng.gen_range(1..=3.min(m));
        let tag = if case % 4 == 3 { MT } else { MP };
        let samples = random_samples(&mut rng, m, tag);
        let greedy = fit(&samples, &FitConfig::new(n, tag)).unwrap();
        let exact = exact_fit(&samples, n).unwrap();
        let (g, e) = (tag.to_max_plus_raw(greedy.delta_star), tag.to_max_plus_raw(exact.delta_exact));
        if e > g + RESIDUAL_TOL {
            return fail(format!("case {case}: exact {e} above greedy {g}"));
        }
        if (g - e).abs() <= RESIDUAL_TOL {
            equal += 1;
        }
    }
    pass(format!("exact ≤ greedy in 200/200 cases; greedy optimal in {equal}/200"))
}

fn algebra_laws(rng: &mut StdRng, tag: SemifieldTag) -> Result<usize, String> {
    let draw = |rng: &mut StdRng| match tag {
        MP => {
            if rng.gen_bool(0.05) {
                f64::NEG_INFINITY
            } else {
                rng.gen_range(-20.0..20.0)
            }
        }
        MT => {
            if rng.gen_bool(0.05) {
                0.0
            } else {
                rng.gen_range(-5.0f64..5.0).exp()
            }
        }
    };
    let s = |v: f64| TropScalar::new(v, tag).unwrap();
    let mut cases = 0;
    for _ in 0..3_000 {
        let (a, b, c) = (s(draw(rng)), s(draw(rng)), s(draw(rng)));
        if a.oplus(a).unwrap() != a {
            return Err(format!("idempotency fails at {a}"));
        }
        let sum = a.oplus(b).unwrap();
        if sum != a && sum != b {
            return Err(format!("selectivity fails at {a}, {b}"));
        }
        if !a.is_zero() {
            let one = a.otimes(a.inv().unwrap()).unwrap().value();
            let ok = match tag {
                MP => one.to_bits() == 0.0f64.to_bits() || one == 0.0,
                MT => (one - 1.0).abs() <= f64::EPSILON,
            };
            if !ok {
                return Err(format!("a ⊗ a⁻¹ = {one} at {a}"));
            }
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.oplus(c).unwrap() > hi.oplus(c).unwrap() || lo.otimes(c).unwrap() > hi.otimes(c).unwrap() {
            return Err(format!("monotonicity fails at {lo}, {hi}, {c}"));
        }
        if !lo.is_zero() {
            let r = -rng.gen_range(0.01..3.0);
            if lo.pow(r).unwrap() < hi.pow(r).unwrap() {
                return Err(format!("negative power is not antitone at {lo}, {hi}"));
            }
        }
        if !a.is_zero() && !b.is_zero() {
            let dual = a.inv().unwrap().oplus(b.inv().unwrap()).unwrap().inv().unwrap();
            if (dual.value() - a.min(b).unwrap().value()).abs() > ALGEBRA_TOL * a.value().abs().max(1.0) {
                return Err(format!("dual minimum fails at {a}, {b}"));
            }
        }
        let round = match tag {
            MP if !a.is_zero() => Some((a.to_max_times().unwrap().to_max_plus().unwrap().value() - a.value()).abs()),
            MT if !a.is_zero() => Some(
                (a.to_max_plus().unwrap().to_max_times().unwrap().value() - a.value()).abs() / a.value().max(1.0),
            ),
            _ => None,
        };
        if round.is_some_and(|d| d > ALGEBRA_TOL) {
            return Err(format!("isomorphism round trip drifts at {a}"));
        }
        cases += 1;
    }
    Ok(cases)
}

/// ⊕_i min_j x_ij against the min over ordered partitions (assignments of
/// rows to columns) of the assigned sums, by full enumeration.
fn plus_min_identity(rng: &mut StdRng) -> Result<usize, String> {
    let mut cases = 0;
    for _ in 0..2_500 {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=5);
        let x: Vec<Vec<f64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect()).collect();
        let lhs = x.iter().map(|row| row.iter().copied().fold(f64::INFINITY, f64::min)).fold(f64::NEG_INFINITY, f64::max);
        let mut rhs = f64::INFINITY;
        let mut assign = vec![0usize; m];
        loop {
            let mut parts = vec![f64::NEG_INFINITY; n];
            for (i, &j) in assign.iter().enumerate() {
                parts[j] = parts[j].max(x[i][j]);
            }
            rhs = rhs.min(parts.iter().copied().fold(f64::NEG_INFINITY, f64::max));
            let mut k = 0;
            while k < m && assign[k] + 1 == n {
                assign[k] = 0;
                k += 1;
            }
            if k == m {
                break;
            }
            assign[k] += 1;
        }
        if lhs != rhs {
            return Err(format!("plus-min identity: {lhs} vs {rhs}"));
        }
        cases += 1;
    }
    Ok(cases)
}

/// min over (x_1..x_N) of ⊕_j f_j(x_j) against ⊕_j min f_j, on a grid.
fn min_plus_identity(rng: &mut StdRng) -> Result<usize, String> {
    let grid: Vec<f64> = (0..15).map(|k| -3.0 + 0.4 * k as f64).collect();
    let mut cases = 0;
    for _ in 0..2_500 {
        let n = rng.gen_range(1..=3);
        let fs: Vec<TropPolynomial> = (0..n).map(|_| random_poly(rng)).collect();
        let values: Vec<Vec<f64>> = fs
            .iter()
            .map(|f| grid.iter().map(|&t| f.eval(TropScalar::max_plus(t).unwrap()).unwrap().value()).collect())
            .collect();
        let rhs = values.iter().map(|v| v.iter().copied().fold(f64::INFINITY, f64::min)).fold(f64::NEG_INFINITY, f64::max);
        let mut lhs = f64::INFINITY;
        let mut idx = vec![0usize; n];
        loop {
            let v = idx.iter().enumerate().map(|(j, &k)| values[j][k]).fold(f64::NEG_INFINITY, f64::max);
            lhs = lhs.min(v);
            let mut k = 0;
            while k < n && idx[k] + 1 == grid.len() {
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            idx[k] += 1;
        }
        if lhs != rhs {
            return Err(format!("min-plus identity: {lhs} vs {rhs}"));
        }
        cases += 1;
    }
    Ok(cases)
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let results = [
        algebra_laws(&mut rng, MP),
        algebra_laws(&mut rng, MT),
        plus_min_identity(&mut rng),
        min_plus_identity(&mut rng),
    ];
    let mut total = 0;
    for r in results {
        match r {
            Ok(n) => total += n,
            Err(e) => return fail(e),
        }
    }
    if total >= 10_000 {
        pass(format!("{total} randomized cases, zero failures"))
    } else {
        fail(format!("only {total} cases"))
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("1 max-plus reproduction (N=5,7,11)", criterion_1),
        ("2 sweep reproduction (N=2..12)", criterion_2),
        ("3 max-algebra reproduction (N=5,7)", criterion_3),
        ("4 residual contract", criterion_4),
        ("5 exponent interval membership", criterion_5),
        ("6 closed-form minimum vs grid search", criterion_6),
        ("7 greedy vs exhaustive dominance", criterion_7),
        ("8 algebraic property suite", criterion_8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let out = check();
        println!("[{}] criterion {name}: {}", if out.ok { "PASS" } else { "FAIL" }, out.detail);
        if !out.ok {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
