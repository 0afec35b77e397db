//! Independent oracles shared by the integration tests: a from-scratch
//! parametrization of the barrier surface, finite-difference geometry and
//! adaptive Simpson quadrature.

#![allow(dead_code, clippy::too_many_arguments)]

use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type V = Vector3<f64>;

/// Barrier surface written out directly: arc of radius `big_r` through the
/// two points at angle `0` and `2η` on the circle of radius `r`, swept by
/// the screw motion with rise `a` per radian.
pub fn omega(r: f64, eta: f64, a: f64, zeta: f64, phi: f64) -> V {
    let big_r = r / eta.sin();
    V::new(
        -big_r * (zeta - eta + phi).sin() + big_r * eta.cos() * zeta.sin(),
        big_r * (zeta - eta + phi).cos() - big_r * eta.cos() * zeta.cos(),
        a * zeta,
    )
}

/// First and second partials of `f` at `(x, y)` with five-point stencils:
/// `(f_x, f_y, f_xx, f_xy, f_yy)`.
pub fn partials5(f: &dyn Fn(f64, f64) -> V, x: f64, y: f64, h: f64) -> [V; 5] {
    let d1 = |g: &dyn Fn(f64) -> V| (-g(2.0 * h) + g(h) * 8.0 - g(-h) * 8.0 + g(-2.0 * h)) / (12.0 * h);
    let d2 = |g: &dyn Fn(f64) -> V| {
        (-g(2.0 * h) + g(h) * 16.0 - g(0.0) * 30.0 + g(-h) * 16.0 - g(-2.0 * h)) / (12.0 * h * h)
    };
    let fx = d1(&|t| f(x + t, y));
    let fy = d1(&|t| f(x, y + t));
    let fxx = d2(&|t| f(x + t, y));
    let fyy = d2(&|t| f(x, y + t));
    let fxy = d1(&|t| d1(&|s| f(x + s, y + t)));
    [fx, fy, fxx, fxy, fyy]
}

/// `(E, F, G, e, f, g)` from partials and a unit normal.
pub fn forms(p: &[V; 5], n: &V) -> [f64; 6] {
    [p[0].dot(&p[0]), p[0].dot(&p[1]), p[1].dot(&p[1]), p[2].dot(n), p[3].dot(n), p[4].dot(n)]
}

pub fn mean_curvature(c: &[f64; 6]) -> f64 {
    let [e, f, g, l, m, n] = *c;
    (l * g - 2.0 * m * f + n * e) / (2.0 * (e * g - f * f))
}

/// Finite-difference normal of the barrier, oriented so that at the arc
/// midpoint `φ = η` it points toward the axis.
pub fn omega_normal(r: f64, eta: f64, a: f64, zeta: f64, phi: f64, h: f64) -> V {
    let f = |z: f64, p: f64| omega(r, eta, a, z, p);
    let n_at = |p: f64| {
        let d = partials5(&f, zeta, p, h);
        d[0].cross(&d[1]).normalize()
    };
    let mid = omega(r, eta, a, zeta, eta);
    let inward = V::new(-mid.x, -mid.y, 0.0);
    let sign = n_at(eta).dot(&inward).signum();
    n_at(phi) * sign
}

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth > 40 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) + rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 0)
}

/// Helicoid area `∫₀¹∫₋ᵣʳ |X_u × X_s| du ds` with the partials of
/// `X(u, s) = (u cos sθ, u sin sθ, s h)` written out by hand.
pub fn helicoid_area_oracle(r: f64, h: f64, theta: f64, tol: f64) -> f64 {
    let inner = |s: f64| {
        let ang = s * theta;
        simpson(
            &|u: f64| {
                let xu = V::new(ang.cos(), ang.sin(), 0.0);
                let xs = V::new(-u * theta * ang.sin(), u * theta * ang.cos(), h);
                xu.cross(&xs).norm()
            },
            -r,
            r,
            tol,
        )
    };
    simpson(&inner, 0.0, 1.0, tol)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
