//! Gauss–Legendre rules on `[0, 1]`.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Tensor-product rule for `∫∫_{[0,1]²} f`.
pub fn integrate_2d(n: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
    let (x, w) = gauss_legendre(n);
    let mut total = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let mut row = 0.0;
        for (xj, wj) in x.iter().zip(&w) {
            row += wj * f(*xi, *xj);
        }
        total += wi * row;
    }
    total
}

/// Composite rule: `panels²` squares, each with an `n²` Gauss–Legendre grid.
pub fn integrate_2d_composite(panels: usize, n: usize, f: impl Fn(f64, f64) -> f64) -> f64 {
    let (x, w) = gauss_legendre(n);
    let h = 1.0 / panels as f64;
    let mut total = 0.0;
    for a in 0..panels {
        for b in 0..panels {
            let (u0, v0) = (a as f64 * h, b as f64 * h);
            let mut cell = 0.0;
            for (xi, wi) in x.iter().zip(&w) {
                for (xj, wj) in x.iter().zip(&w) {
                    cell += wi * wj * f(u0 + h * xi, v0 + h * xj);
                }
            }
            total += cell * h * h;
        }
    }
    total
}
