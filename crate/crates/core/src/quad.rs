//! Quadrature rules: composite Gauss–Legendre and the uniform trapezoid rule.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Composite 16-point Gauss–Legendre nodes on `[lo, hi]` with panels no wider
/// than `max_panel`. Returns `(x, w)` pairs.
pub fn composite_gl(lo: f64, hi: f64, max_panel: f64) -> Vec<(f64, f64)> {
    if hi <= lo {
        return Vec::new();
    }
    let panels = ((hi - lo) / max_panel).ceil().max(1.0) as usize;
    let width = (hi - lo) / panels as f64;
    let (nodes, weights) = gl16();
    let mut out = Vec::with_capacity(panels * nodes.len());
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * width;
        for (x, w) in nodes.iter().zip(weights) {
            out.push((mid + 0.5 * width * x, 0.5 * width * w));
        }
    }
    out
}

/// Uniform trapezoid nodes on `[-radius, radius]` with `count` points.
pub fn trapezoid_nodes(radius: f64, count: usize) -> Vec<(f64, f64)> {
    assert!(count >= 2);
    let h = 2.0 * radius / (count - 1) as f64;
    (0..count)
        .map(|i| {
            let w = if i == 0 || i == count - 1 { 0.5 * h } else { h };
            (-radius + i as f64 * h, w)
        })
        .collect()
}
