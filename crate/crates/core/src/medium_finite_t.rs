//! Medium scalars `B*`, `D*` (and `A*`) at any temperature as one-dimensional
//! integrals over the single-particle energy `x = E/m`.
//!
//! Real parts:
//!
//! ```text
//! Re B* = −e²/(4π²c²)·[R + R_B],   Re D* = −e²/(4π²c²)·[R + R_D],
//! R   = ∫ n y dx,
//! R_B = (1/4b) ∫ n [(x² + c²) R₁ + 4ax R₂] dx,
//! R_D = (1/8b) ∫ n (1 + 2c²) R₁ dx,
//! ```
//!
//! with `y = √(x² − 1)`. `R₁`, `R₂` have integrable logarithmic singularities
//! at `x = |a ± bγ|`, which are handed to the quadrature as breakpoints.
//!
//! Imaginary parts are window integrals of `n`, see [`im_scalars`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::branch::AbsorptionBranch;
use crate::error::Result;
use crate::kinematics::{classify_region, KinematicPoint, RegionLabel, BOUNDARY_TOL};
use crate::numerics::{integrate_adaptive, integrate_clustered, DEFAULT_REL_TOL};
use crate::occupation::{n_fermi, x_cutoff, MediumState};
use crate::vacuum::c_star;

/// Complex `A*`, `B*`, `C*`, `D*` at one kinematic point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseScalars {
    pub a_star: Complex64,
    pub b_star: Complex64,
    pub c_star: Complex64,
    pub d_star: Complex64,
}

impl ResponseScalars {
    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            a_star: z,
            b_star: z,
            c_star: z,
            d_star: z,
        }
    }

    /// Builds the set from `B*`, `C*`, `D*`, with `A* = D* + (1 + 3c²/2b²) B*`.
    pub fn from_bcd(p: &KinematicPoint, b_star: Complex64, c_star: Complex64, d_star: Complex64) -> Self {
        let k = 1.0 + 1.5 * p.c2() / (p.b() * p.b());
        Self {
            a_star: d_star + k * b_star,
            b_star,
            c_star,
            d_star,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarOptions {
    /// Add the vacuum polarisation `C*`; otherwise `C* = 0`.
    pub include_vacuum: bool,
    pub branch: AbsorptionBranch,
    /// Relative tolerance of every quadrature.
    pub rel_tol: f64,
}

impl Default for ScalarOptions {
    fn default() -> Self {
        Self {
            include_vacuum: true,
            branch: AbsorptionBranch::Retarded,
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

fn y_of(x: f64) -> f64 {
    ((x - 1.0) * (x + 1.0)).max(0.0).sqrt()
}

/// The linear factors `[c² − by − ax, c² − by + ax, c² + by − ax, c² + by + ax]`.
///
/// For `γ² > 0` the pairs multiply to `(c² ∓ ax)² − b²y² = c²(x ∓ s₋)(x ∓ s₊)`
/// with `s± = a ± b|γ|`; the factor that vanishes at `x = ±s±` is recovered
/// from that product, so it keeps full relative precision next to the
/// singular abscissae instead of cancelling.
fn log_factors(x: f64, p: &KinematicPoint) -> [f64; 4] {
    let (a, b, c2) = (p.a(), p.b(), p.c2());
    let (by, ax) = (b * y_of(x), a * x);
    let mut f = [c2 - by - ax, c2 - by + ax, c2 + by - ax, c2 + by + ax];
    if p.gamma2() > 0.0 {
        let bg = b * p.gamma_abs();
        let (sm, sp) = (a - bg, a + bg);
        let minus = c2 * (x - sm) * (x - sp);
        let plus = c2 * (x + sm) * (x + sp);
        let cancelled = 1e-2 * (c2.abs() + by + ax);
        for (i, j, q) in [(0, 2, minus), (1, 3, plus)] {
            let (small, large) = if f[i].abs() < f[j].abs() { (i, j) } else { (j, i) };
            if f[small].abs() < cancelled {
                f[small] = q / f[large];
            }
        }
    }
    f
}

/// Numerator and denominator of the `R₁` quotient.
pub(crate) fn r1_parts(x: f64, p: &KinematicPoint) -> (f64, f64) {
    let [f1, f2, f3, f4] = log_factors(x, p);
    (f1 * f2, f3 * f4)
}

/// Numerator and denominator of the `R₂` quotient.
pub(crate) fn r2_parts(x: f64, p: &KinematicPoint) -> (f64, f64) {
    let [f1, f2, f3, f4] = log_factors(x, p);
    (f3 * f2, f1 * f4)
}

/// `R₁ = ln|((c² − by)² − a²x²)/((c² + by)² − a²x²)|`.
pub fn r1(x: f64, p: &KinematicPoint) -> f64 {
    let (n, d) = r1_parts(x, p);
    (n / d).abs().ln()
}

/// `R₂ = ½ ln|(c⁴ − (ax − by)²)/(c⁴ − (ax + by)²)|`.
pub fn r2(x: f64, p: &KinematicPoint) -> f64 {
    let (n, d) = r2_parts(x, p);
    0.5 * (n / d).abs().ln()
}

fn integrate_or_zero<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, breaks: &[f64], rel_tol: f64) -> Result<f64> {
    if hi - lo <= BOUNDARY_TOL * hi.abs().max(1.0) {
        return Ok(0.0);
    }
    Ok(integrate_adaptive(f, lo, hi, breaks, rel_tol)?.value)
}

/// `(Im B*, Im D*)`.
///
/// Region II gives exactly zero. In regions I and III the absorptive windows
/// start at `x_l = −a + b|γ|` (I) or `a − b|γ|` (III) and end at `x_u = a + b|γ|`;
/// how they enter depends on `branch`:
///
/// * `Retarded`, region I:
///   `Im B* = −e²/(16πbc²) ∫_{x_l} [n(x) − n(x + 2a)]((x + a)² − b²) dx`,
///   `Im D* = −e²(1 + 2c²)/(32πbc²) ∫_{x_l}^{x_u} n dx`;
/// * `Retarded`, region III: the same prefactors with
///   `∫_{x_l}^{x_u} n((x − a)² − b²) dx` and `∫_{x_l}^{x_u} n dx`;
/// * `AsPrinted`: prefactors `sign(c²)·e²/(16πbc²)` and
///   `sign(c²)·e²(1 + 2c²)/(32πbc²)` on the `(x_l, x_u)` windows.
///
/// All integrals are truncated at [`x_cutoff`].
pub fn im_scalars(p: &KinematicPoint, ms: &MediumState, branch: AbsorptionBranch, rel_tol: f64) -> Result<(f64, f64)> {
    let region = classify_region(p)?;
    if region == RegionLabel::II {
        return Ok((0.0, 0.0));
    }
    let (a, b, c2) = (p.a(), p.b(), p.c2());
    let bg = b * p.gamma_abs();
    let x_l = match region {
        RegionLabel::I => -a + bg,
        _ => a - bg,
    };
    let x_u = a + bg;
    let x_max = x_cutoff(ms);
    if x_l >= x_max {
        return Ok((0.0, 0.0));
    }
    let hi = x_u.min(x_max);
    let xi = ms.xi();
    let n = |x: f64| n_fermi(x, ms);
    let b2 = b * b;

    let pre_b = -ms.e2() / (16.0 * PI * b * c2);
    let pre_d = -ms.e2() * (1.0 + 2.0 * c2) / (32.0 * PI * b * c2);
    let window_d = integrate_or_zero(n, x_l, hi, &[xi], rel_tol)?;

    match (branch, region) {
        (AbsorptionBranch::Retarded, RegionLabel::I) => {
            let g = |x: f64| (n(x) - n(x + 2.0 * a)) * ((x + a).powi(2) - b2);
            let window_b = integrate_or_zero(g, x_l, x_max, &[xi, xi - 2.0 * a], rel_tol)?;
            Ok((pre_b * window_b, pre_d * window_d))
        }
        (AbsorptionBranch::Retarded, _) => {
            let g = |x: f64| n(x) * ((x - a).powi(2) - b2);
            let window_b = integrate_or_zero(g, x_l, hi, &[xi], rel_tol)?;
            Ok((pre_b * window_b, pre_d * window_d))
        }
        (AbsorptionBranch::AsPrinted, _) => {
            let g = |x: f64| n(x) * ((x - a).powi(2) - b2);
            let window_b = integrate_or_zero(g, x_l, hi, &[xi], rel_tol)?;
            let s = c2.signum();
            Ok((-s * pre_b * window_b, -s * pre_d * window_d))
        }
    }
}

/// Interior points where the real-part integrands are singular or kinked.
fn re_breakpoints(p: &KinematicPoint, ms: &MediumState, x_max: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(3);
    if let Some((lo, hi)) = p.singular_abscissae() {
        v.push(lo);
        v.push(hi);
    }
    v.push(ms.xi());
    v.retain(|&x| x > 1.0 && x < x_max);
    v
}

/// `(Re B*, Re D*)`.
pub fn re_scalars(p: &KinematicPoint, ms: &MediumState, rel_tol: f64) -> Result<(f64, f64)> {
    let x_max = x_cutoff(ms);
    if x_max <= 1.0 {
        return Ok((0.0, 0.0));
    }
    let (a, b, c2) = (p.a(), p.b(), p.c2());
    let breaks = re_breakpoints(p, ms, x_max);
    let n = |x: f64| n_fermi(x, ms);

    let fb = |x: f64| {
        let nx = n(x);
        if nx == 0.0 {
            return 0.0;
        }
        nx * (y_of(x) + ((x * x + c2) * r1(x, p) + 4.0 * a * x * r2(x, p)) / (4.0 * b))
    };
    let fd = |x: f64| {
        let nx = n(x);
        if nx == 0.0 {
            return 0.0;
        }
        nx * (y_of(x) + (1.0 + 2.0 * c2) * r1(x, p) / (8.0 * b))
    };
    let ib = integrate_clustered(fb, 1.0, x_max, &breaks, rel_tol)?.value;
    let id = integrate_clustered(fd, 1.0, x_max, &breaks, rel_tol)?.value;
    let pre = -ms.e2() / (4.0 * PI * PI * c2);
    Ok((pre * ib, pre * id))
}

/// Full scalar set from the integral representations.
pub fn scalars(p: &KinematicPoint, ms: &MediumState, opts: &ScalarOptions) -> Result<ResponseScalars> {
    classify_region(p)?;
    let (re_b, re_d) = re_scalars(p, ms, opts.rel_tol)?;
    let (im_b, im_d) = im_scalars(p, ms, opts.branch, opts.rel_tol)?;
    let c = if opts.include_vacuum {
        c_star(p.c2(), ms)?.value
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(ResponseScalars::from_bcd(
        p,
        Complex64::new(re_b, im_b),
        c,
        Complex64::new(re_d, im_d),
    ))
}
