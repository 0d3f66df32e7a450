//! Bundled test problem: `f(x) = (x − 3/4)² − 3(x − 1)^{1/2} + 2` on `[1, 3]`,
//! sampled at `x_i = 1 + (i − 1)/10` for `i = 1..=21`.

pub const DEMO_SAMPLES: usize = 21;

pub fn demo_function(x: f64) -> f64 {
    (x - 0.75).powi(2) - 3.0 * (x - 1.0).sqrt() + 2.0
}

pub fn demo_xs() -> Vec<f64> {
    (0..DEMO_SAMPLES).map(|i| 1.0 + i as f64 / 10.0).collect()
}

/// `(xs, ys)` of the test problem.
pub fn demo_data() -> (Vec<f64>, Vec<f64>) {
    let xs = demo_xs();
    let ys = xs.iter().map(|&x| demo_function(x)).collect();
    (xs, ys)
}
