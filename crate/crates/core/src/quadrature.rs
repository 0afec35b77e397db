//! Gauss–Legendre rules and adaptive integration on intervals and rectangles.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to `f` on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive integration on `[a, b]`: a panel is accepted when the 10-point
/// rule agrees with the sum over its two halves to within `tol`.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = GaussLegendre::new(10);
    let whole = rule.integrate(f, a, b);
    refine(f, &rule, a, b, whole, tol, 0)
}

fn refine<F: Fn(f64) -> f64>(f: &F, rule: &GaussLegendre, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> f64 {
    let mid = 0.5 * (a + b);
    let left = rule.integrate(f, a, mid);
    let right = rule.integrate(f, mid, b);
    let sum = left + right;
    if (sum - whole).abs() <= tol.max(1e-300) || depth >= 40 {
        return sum;
    }
    refine(f, rule, a, mid, left, 0.5 * tol, depth + 1) + refine(f, rule, mid, b, right, 0.5 * tol, depth + 1)
}

/// Adaptive integration over the rectangle `[ax, bx] × [ay, by]` by nesting the
/// one-dimensional scheme.
pub fn adaptive_2d<F: Fn(f64, f64) -> f64>(f: &F, (ax, bx): (f64, f64), (ay, by): (f64, f64), tol: f64) -> f64 {
    let width = (by - ay).abs().max(f64::MIN_POSITIVE);
    let inner_tol = tol / ((bx - ax).abs().max(1.0) * 4.0);
    let outer = |x: f64| adaptive(&|y: f64| f(x, y), ay, by, inner_tol * width.min(1.0));
    adaptive(&outer, ax, bx, tol)
}
