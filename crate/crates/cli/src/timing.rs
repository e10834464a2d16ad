use std::time::Instant;

/// Runs `f` `repeat` times (at least once) and returns the wall times in
/// milliseconds together with every result.
pub fn time_runs<T>(repeat: usize, mut f: impl FnMut() -> T) -> (Vec<f64>, Vec<T>) {
    let mut samples = Vec::with_capacity(repeat.max(1));
    let mut results = Vec::with_capacity(repeat.max(1));
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        let out = f();
        samples.push(start.elapsed().as_secs_f64() * 1e3);
        results.push(out);
    }
    (samples, results)
}

/// Median of the samples; the mean of the middle two for even counts.
pub fn median(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

/// Percentage performance improvement of `new` over `base`.
pub fn ppi_percent(base_ms: f64, new_ms: f64) -> f64 {
    if base_ms > 0.0 {
        100.0 * (base_ms - new_ms) / base_ms
    } else {
        0.0
    }
}
