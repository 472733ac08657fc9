//! Test-side oracles, written independently of the library code paths.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::Rng;
use relresp::{derive_point, KinematicPoint};

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Piecewise Gauss-Legendre over `[lo, hi]` split at `breaks`, `panels`
/// equal panels per piece. Exact for piecewise polynomials of degree < 20.
pub fn piecewise_gl(f: impl Fn(f64) -> f64, lo: f64, hi: f64, breaks: &[f64], panels: usize) -> f64 {
    if !(hi > lo) {
        return 0.0;
    }
    let rule = gauss_legendre(10);
    let mut pts = vec![lo];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > lo && x < hi).collect();
    inner.sort_by(f64::total_cmp);
    pts.extend(inner);
    pts.push(hi);
    let mut acc = 0.0;
    for w in pts.windows(2) {
        let h = (w[1] - w[0]) / panels as f64;
        for k in 0..panels {
            let (l, r) = (w[0] + k as f64 * h, w[0] + (k + 1) as f64 * h);
            let (m, half) = (0.5 * (l + r), 0.5 * (r - l));
            acc += half * rule.iter().map(|&(x, wt)| wt * f(m + half * x)).sum::<f64>();
        }
    }
    acc
}

fn step(v: f64) -> f64 {
    if v < 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Absorptive kernels of the `B*` and `D*` integrands under `ω → ω + i0⁺`:
/// each log factor `c² ± by ± ax` picks up `iπ` where it is negative.
fn delta_kernels(x: f64, a: f64, b: f64) -> (f64, f64) {
    let c2 = a * a - b * b;
    let y = ((x - 1.0) * (x + 1.0)).max(0.0).sqrt();
    let km = (x - a).powi(2) - b * b;
    let kp = (x + a).powi(2) - b * b;
    let f1 = c2 - b * y - a * x;
    let f3 = c2 + b * y - a * x;
    let f2 = c2 - b * y + a * x;
    let f4 = c2 + b * y + a * x;
    let s = (2.0 * a - x).signum();
    let lo = s * (step(f1) - step(f3));
    let hi = step(f2) - step(f4);
    (
        PI / (4.0 * b) * (km * lo + kp * hi),
        PI * (1.0 + 2.0 * c2) / (8.0 * b) * (lo + hi),
    )
}

fn kernel_breaks(a: f64, b: f64) -> Vec<f64> {
    let c2 = a * a - b * b;
    let mut v = vec![2.0 * a];
    if c2 < 0.0 || c2 > 1.0 {
        let g = (1.0 - 1.0 / c2).sqrt();
        v.push(a + b * g);
        v.push((a - b * g).abs());
    }
    v
}

/// Retarded `(Im B*, Im D*)` of a step-filled sea from the δ-kernels, and
/// the same integrals of the kernel magnitudes (a cancellation-free scale).
pub fn retarded_im_oracle(a: f64, b: f64, xf: f64, e2: f64) -> ((f64, f64), (f64, f64)) {
    let c2 = a * a - b * b;
    let br = kernel_breaks(a, b);
    let pre = -e2 / (4.0 * PI * PI * c2);
    let ib = piecewise_gl(|x| delta_kernels(x, a, b).0, 1.0, xf, &br, 4);
    let id = piecewise_gl(|x| delta_kernels(x, a, b).1, 1.0, xf, &br, 4);
    let sb = piecewise_gl(|x| delta_kernels(x, a, b).0.abs(), 1.0, xf, &br, 4);
    let sd = piecewise_gl(|x| delta_kernels(x, a, b).1.abs(), 1.0, xf, &br, 4);
    ((pre * ib, pre * id), (pre.abs() * sb, pre.abs() * sd))
}

/// As-printed `(Im B*, Im D*)`: the sign(c²)-weighted windows over
/// `(x_l, min(x_u, x_F))`, plus their magnitude scales.
pub fn as_printed_im_oracle(a: f64, b: f64, xf: f64, e2: f64) -> ((f64, f64), (f64, f64)) {
    let c2 = a * a - b * b;
    let g = (1.0 - 1.0 / c2).sqrt();
    let x_l = if c2 < 0.0 { -a + b * g } else { a - b * g };
    let hi = (a + b * g).min(xf);
    let s = c2.signum();
    let pre_b = s * e2 / (16.0 * PI * b * c2);
    let pre_d = s * e2 * (1.0 + 2.0 * c2) / (32.0 * PI * b * c2);
    let k = |x: f64| (x - a).powi(2) - b * b;
    let wb = piecewise_gl(k, x_l, hi, &[a + b, a - b], 1);
    let sb = piecewise_gl(|x| k(x).abs(), x_l, hi, &[a + b, a - b], 1);
    let len = (hi - x_l).max(0.0);
    ((pre_b * wb, pre_d * len), ((pre_b * sb).abs(), (pre_d * len).abs()))
}

/// `C*` from the Feynman-parameter integral
/// `−(2α/π)∫₀¹ x(1−x) ln(1 − 4c²x(1−x) − iη) dx` at finite small `η`.
pub fn vacuum_eta_oracle(c2: f64, alpha: f64, eta: f64) -> (f64, f64) {
    let arg = |x: f64| relresp::Complex64::new(1.0 - 4.0 * c2 * x * (1.0 - x), -eta * x * (1.0 - x));
    // near-singular logs sit just outside [0, 1] for large |c²|
    let mut breaks = vec![0.0, 0.5, 1.0];
    if c2 > 1.0 {
        let k = (1.0 - 1.0 / c2).sqrt();
        breaks.push(0.5 * (1.0 - k));
        breaks.push(0.5 * (1.0 + k));
    }
    // log singularities sit on the breakpoints; graded panels resolve them
    let re = graded(|x| x * (1.0 - x) * arg(x).ln().re, &breaks);
    let im = graded(|x| x * (1.0 - x) * arg(x).ln().im, &breaks);
    let pre = -2.0 * alpha / PI;
    (pre * re, pre * im)
}

/// Integral over `[0, 1]` with geometric refinement towards every breakpoint.
fn graded(f: impl Fn(f64) -> f64, breaks: &[f64]) -> f64 {
    let mut pts = vec![0.0, 1.0];
    for &c in breaks {
        pts.push(c);
        for k in 1..=60 {
            let d = 0.5f64.powi(k);
            pts.push(c - d);
            pts.push(c + d);
        }
    }
    pts.retain(|&x| (0.0..=1.0).contains(&x));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    piecewise_gl(f, 0.0, 1.0, &pts[1..pts.len() - 1], 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    I,
    II,
    III,
}

/// A random kinematic point in `region` with `a, b` below `scale`.
pub fn sample_in(rng: &mut impl Rng, region: Region, scale: f64) -> KinematicPoint {
    loop {
        let b = rng.gen_range(0.02..scale);
        let a = match region {
            Region::I => rng.gen_range(0.0..b),
            Region::II => rng.gen_range(b..(1.0 + b * b).sqrt()),
            Region::III => rng.gen_range((1.0 + b * b).sqrt()..(1.0 + b * b).sqrt() + scale),
        };
        if let Ok(p) = derive_point(a, b) {
            let c2 = p.c2();
            if c2.abs() > 1e-6 && (c2 - 1.0).abs() > 1e-6 {
                return p;
            }
        }
    }
}
