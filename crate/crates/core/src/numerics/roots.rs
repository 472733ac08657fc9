//! Sign-change scanning and Brent's bracketed root finder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative root tolerance: the final interval is below
/// `DEFAULT_X_TOL · max(1, |x|)`.
pub const DEFAULT_X_TOL: f64 = 1e-12;

const MAX_ITER: usize = 200;

/// An interval on whose ends the target function has opposite signs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInput(format!(
                "bracket needs lo < hi, got [{lo}, {hi}]"
            )))
        }
    }
}

/// Brackets found on a grid, plus the number of grid points skipped because
/// the function was NaN there.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SignScan {
    pub brackets: Vec<Bracket>,
    pub nan_count: usize,
}

/// Returns one bracket per adjacent pair of (non-NaN) grid values with a
/// strict sign change. Exact zeros produce no bracket.
pub fn scan_sign_changes<G: Fn(f64) -> f64>(g: G, grid: &[f64]) -> SignScan {
    let values: Vec<f64> = grid.iter().map(|&x| g(x)).collect();
    scan_values(grid, &values)
}

/// Same as [`scan_sign_changes`] for values that were computed elsewhere
/// (e.g. in parallel).
pub(crate) fn scan_values(grid: &[f64], values: &[f64]) -> SignScan {
    let mut out = SignScan::default();
    let mut prev: Option<(f64, f64)> = None;
    for (&x, &v) in grid.iter().zip(values) {
        if v.is_nan() {
            out.nan_count += 1;
            continue;
        }
        if let Some((xp, vp)) = prev {
            if (vp < 0.0 && v > 0.0) || (vp > 0.0 && v < 0.0) {
                out.brackets.push(Bracket { lo: xp, hi: x });
            }
        }
        prev = Some((x, v));
    }
    out
}

/// Brent's method on a bracket. Never evaluates `g` outside `[lo, hi]`.
pub fn find_root_bracketed<G: Fn(f64) -> f64>(g: G, br: Bracket, x_tol: f64) -> Result<f64> {
    let checked = |x: f64| -> Result<f64> {
        let v = g(x);
        if v.is_nan() {
            Err(Error::NanIntegrand { x })
        } else {
            Ok(v)
        }
    };
    let (lo, hi) = (br.lo, br.hi);
    if !(lo < hi) {
        return Err(Error::NotBracketing { lo, hi });
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = checked(a)?;
    let mut fb = checked(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NotBracketing { lo, hi });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 0.5 * x_tol * b.abs().max(1.0) + 0.5 * f64::EPSILON * b.abs();
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when a == c
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        b = b.clamp(lo, hi);
        fb = checked(b)?;
    }
    Ok(b)
}
