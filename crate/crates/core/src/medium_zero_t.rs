//! Closed forms of `B*` and `D*` for a degenerate (`T = 0`) Fermi sea.
//!
//! With the step occupation `Θ(x_F − x)` the absorptive windows become
//! polynomial integrals, and the real parts split as
//!
//! ```text
//! Re B* = −e²/(4π²c²)·[U_B + W_B + Z_B],   Re D* = −e²/(4π²c²)·[U_D + W_D + Z_D]
//! ```
//!
//! where `U` collects the boundary terms of an integration by parts at `x_F`,
//! `W` the elementary integrals, and `Z = C[(M + N)ℑ₀ − Nℑ₂]` the remaining
//! rational integrals `ℑⱼ = ∫₀^{t_F} tʲ/(ℭt⁴ + 𝔅t² + 𝔄) dt`, `t = y/x`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::branch::AbsorptionBranch;
use crate::error::{Error, Result};
use crate::kinematics::{
    classify_region, zero_t_subregion, FermiSurface, KinematicPoint, RegionLabel, SubregionLabel,
};
use crate::medium_finite_t::{r1_parts, r2_parts};
use crate::occupation::MediumState;
use num_complex::Complex64;

/// Log arguments (relative to their scale) below this are treated as zero.
const LOG_ARG_FLOOR: f64 = 1e-14;

/// Relative split of `t±²` below which the double-root antiderivatives are used.
const DEGENERATE_SPLIT: f64 = 1e-6;

/// Coefficients of the `Z` terms and of the biquadratic `ℭt⁴ + 𝔅t² + 𝔄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroTCoefficients {
    pub m_b: f64,
    pub n_b: f64,
    pub m_d: f64,
    pub n_d: f64,
    pub c_b: f64,
    pub c_d: f64,
    pub frak_a: f64,
    pub frak_b: f64,
    pub frak_c: f64,
}

pub fn zero_t_coefficients(p: &KinematicPoint) -> ZeroTCoefficients {
    let (a, b, c2, g2, d2) = (p.a(), p.b(), p.c2(), p.gamma2(), p.d2());
    let (a2, b2) = (a * a, b * b);
    let d4 = d2 * d2;
    ZeroTCoefficients {
        m_b: -2.0 * a2 * (1.0 + 4.0 * b2) - (1.0 - 2.0 * b2 - 2.0 * a2 * (2.0 - g2)) * d2,
        n_b: -d4 * (1.0 - 2.0 * b2),
        m_d: 2.0 * a2 * (1.0 + g2) - d2,
        n_d: -d4,
        c_b: 1.0 / 3.0,
        c_d: 0.5 * (1.0 + 2.0 * c2),
        frak_a: (d2 + 1.0).powi(2) - 4.0 * a2,
        frak_b: -2.0 * (d2 * (d2 + 1.0) - 2.0 * a2),
        frak_c: d4,
    }
}

fn fermi_surface_of(ms: &MediumState) -> Result<FermiSurface> {
    ms.fermi_surface().ok_or_else(|| {
        Error::InvalidInput(format!(
            "closed forms need t = 0, got t = {}",
            ms.t()
        ))
    })
}

/// `∫_lo^hi ((x + s)² − b²) dx` written as a product, so that short windows
/// do not lose digits to the difference of two cubes.
fn shifted_window(lo: f64, hi: f64, s: f64, b2: f64) -> f64 {
    let (u, l) = (hi + s, lo + s);
    (hi - lo) * ((u * u + u * l + l * l) / 3.0 - b2)
}

/// `(Im B*, Im D*)` of a degenerate Fermi sea, dispatched on the subregion.
pub fn im_zero(p: &KinematicPoint, ms: &MediumState, branch: AbsorptionBranch) -> Result<(f64, f64)> {
    let fs = fermi_surface_of(ms)?;
    let region = classify_region(p)?;
    if region == RegionLabel::II {
        return Ok((0.0, 0.0));
    }
    let sub = zero_t_subregion(p, &fs);
    let (x_l, x_hi) = match sub.limits {
        Some(l) => l,
        None => return Ok((0.0, 0.0)),
    };
    let (a, b, c2) = (p.a(), p.b(), p.c2());
    let b2 = b * b;
    let xf = fs.xf();
    let pre_b = -ms.e2() / (16.0 * PI * b * c2);
    let pre_d = -ms.e2() * (1.0 + 2.0 * c2) / (32.0 * PI * b * c2);
    let len = x_hi - x_l;

    let (wb, wd) = match (branch, sub.label) {
        // region I: the window of ((x + a)² − b²) runs over (max(x_l, x_F − 2a), x_F)
        (AbsorptionBranch::Retarded, SubregionLabel::A) => {
            (2.0 * a * (xf * xf + a * a / 3.0 - b2), len)
        }
        (AbsorptionBranch::Retarded, SubregionLabel::B) => (shifted_window(x_l, xf, a, b2), len),
        (AbsorptionBranch::Retarded, _) => (shifted_window(x_l, x_hi, -a, b2), len),
        (AbsorptionBranch::AsPrinted, _) => {
            let s = -c2.signum();
            (s * shifted_window(x_l, x_hi, -a, b2), s * len)
        }
    };
    Ok((pre_b * wb, pre_d * wd))
}

pub fn im_b_zero(p: &KinematicPoint, ms: &MediumState, branch: AbsorptionBranch) -> Result<f64> {
    Ok(im_zero(p, ms, branch)?.0)
}

pub fn im_d_zero(p: &KinematicPoint, ms: &MediumState, branch: AbsorptionBranch) -> Result<f64> {
    Ok(im_zero(p, ms, branch)?.1)
}

/// `ln|(t − t₀)/(t + t₀)|`, refusing a vanishing numerator.
fn log_pole(t: f64, t0: f64) -> Result<f64> {
    let num = t - t0;
    if num.abs() <= LOG_ARG_FLOOR * (t + t0).abs() {
        return Err(Error::OnSubregionBoundary { argument: num });
    }
    Ok((num / (t + t0)).abs().ln())
}

/// The rational integrals `(ℑ₀, ℑ₂)` over `[0, t_F]`.
///
/// For `γ² > 0` the biquadratic has real roots `t±² = [d²(d²+1) − 2a² ± 2ab|γ|]/d⁴`;
/// a root inside `(0, t_F)` makes the integral a principal value. For
/// `γ² < 0` the roots are the complex pair `±t_c`, `±t̄_c`.
pub fn integrals_ij(p: &KinematicPoint, fs: &FermiSurface) -> Result<(f64, f64)> {
    let tf = fs.tf();
    if !(0.0..1.0).contains(&tf) {
        return Err(Error::InvalidInput(format!("t_F = {tf} outside [0, 1)")));
    }
    if tf == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (a, b, g2, d2) = (p.a(), p.b(), p.gamma2(), p.d2());
    let d4 = d2 * d2;
    let gabs = p.gamma_abs();
    let base = d2 * (d2 + 1.0) - 2.0 * a * a;
    let split = 2.0 * a * b * gabs;

    if g2 > 0.0 {
        let tp2 = (base + split) / d4;
        let tm2 = (base - split) / d4;
        if !(tp2 > 0.0 && tm2 > 0.0) {
            return Err(Error::InternalConsistency(format!(
                "biquadratic roots t+^2 = {tp2}, t-^2 = {tm2} are not positive"
            )));
        }
        if (tp2 - tm2).abs() <= DEGENERATE_SPLIT * (tp2 + tm2) {
            // double root at the mean: integrands tʲ/(d⁴(t² − t₀²)²)
            let t02 = 0.5 * (tp2 + tm2);
            let t0 = t02.sqrt();
            let l = log_pole(tf, t0)?;
            let q = tf * tf - t02;
            let i0 = (-tf / (2.0 * t02 * q) - l / (4.0 * t0 * t02)) / d4;
            let i2 = (l / (4.0 * t0) - tf / (2.0 * q)) / d4;
            return Ok((i0, i2));
        }
        let (tp, tm) = (tp2.sqrt(), tm2.sqrt());
        let (lp, lm) = (log_pole(tf, tp)?, log_pole(tf, tm)?);
        let den = 2.0 * split;
        let i0 = (lp / (2.0 * tp) - lm / (2.0 * tm)) / den;
        let i2 = (0.5 * tp * lp - 0.5 * tm * lm) / den;
        Ok((i0, i2))
    } else {
        let tc = (Complex64::new(base, split) / d4).sqrt();
        let (tr, ti) = (tc.re, tc.im.abs());
        let m2 = tc.norm_sqr();
        let lg = ((tf * tf + 2.0 * tr * tf + m2) / (tf * tf - 2.0 * tr * tf + m2)).abs().ln();
        let at = 2.0 * tr / ti * (((tf + tr) / ti).atan() + ((tf - tr) / ti).atan());
        let i0 = (lg + at) / (8.0 * d4 * tr * m2);
        let i2 = (-lg + at) / (8.0 * d4 * tr);
        Ok((i0, i2))
    }
}

/// `ln|num/den|` with both parts required to be clear of zero.
fn checked_log(num: f64, den: f64, scale: f64) -> Result<f64> {
    for v in [num, den] {
        if v.abs() <= LOG_ARG_FLOOR * scale {
            return Err(Error::OnSubregionBoundary { argument: v / scale });
        }
    }
    Ok((num / den).abs().ln())
}

/// `(Re B*, Re D*)` of a degenerate Fermi sea.
pub fn re_zero(p: &KinematicPoint, ms: &MediumState) -> Result<(f64, f64)> {
    let fs = fermi_surface_of(ms)?;
    let (xf, yf) = (fs.xf(), fs.yf());
    if yf == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (a, b, c2) = (p.a(), p.b(), p.c2());

    let (n1, d1) = r1_parts(xf, p);
    let scale1 = (c2.abs() + b * yf).powi(2) + (a * xf).powi(2);
    let r1f = checked_log(n1, d1, scale1)?;
    let (n2, d2) = r2_parts(xf, p);
    let scale2 = c2 * c2 + (a * xf + b * yf).powi(2);
    let r2f = 0.5 * checked_log(n2, d2, scale2)?;

    let u_b = xf / (12.0 * b) * ((xf * xf + 3.0 * c2) * r1f + 6.0 * a * xf * r2f);
    let u_d = xf / (8.0 * b) * (1.0 + 2.0 * c2) * r1f;
    let lg = (xf + yf).ln();
    let w_b = 2.0 / 3.0 * (xf * yf - b * b * lg);
    let w_d = 0.5 * (xf * yf + 2.0 * c2 * lg);

    let k = zero_t_coefficients(p);
    let (i0, i2) = integrals_ij(p, &fs)?;
    let z_b = k.c_b * ((k.m_b + k.n_b) * i0 - k.n_b * i2);
    let z_d = k.c_d * ((k.m_d + k.n_d) * i0 - k.n_d * i2);

    let pre = -ms.e2() / (4.0 * PI * PI * c2);
    Ok((pre * (u_b + w_b + z_b), pre * (u_d + w_d + z_d)))
}

pub fn re_b_zero(p: &KinematicPoint, ms: &MediumState) -> Result<f64> {
    Ok(re_zero(p, ms)?.0)
}

pub fn re_d_zero(p: &KinematicPoint, ms: &MediumState) -> Result<f64> {
    Ok(re_zero(p, ms)?.1)
}
