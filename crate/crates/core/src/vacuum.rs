//! The renormalised vacuum polarisation scalar `C*(c²)`.
//!
//! `C* = −e²/(12π²)·{1/3 + 2(1 + 1/(2c²))·[h·arccot h − 1]}` with
//! `h² = 1/c² − 1`. Each branch of the `(a, b)` plane evaluates
//! `h·arccot h` through its own real expression, so no complex branch cut of a
//! library function is ever consulted:
//!
//! * spacelike, `c² < 0`: `(k/2)·ln((k+1)/(k−1))`, `k = √(1 − 1/c²) > 1`;
//! * below threshold, `0 < c² < 1`: `h·(π/2 − atan h)`;
//! * above threshold, `c² > 1`: `(κ/2)·ln((1+κ)/(1−κ)) − iκπ/2` with
//!   `κ = √(1 − 1/c²)`, the sign of the imaginary part following `ω → ω + i0⁺`.
//!
//! Near `c² = 0` the expressions lose all digits to cancellation; there a
//! power series in `u = c²/(1 − c²)` is summed instead.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::kinematics::{LIGHT_CONE_CUTOFF, PAIR_THRESHOLD_CUTOFF};
use crate::occupation::MediumState;

/// `|u|` below which the series is used.
const SERIES_RADIUS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VacuumBranch {
    Spacelike,
    Subthreshold,
    AboveThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VacuumScalar {
    pub value: Complex64,
    pub branch: VacuumBranch,
}

fn branch_of(c2: f64) -> Result<VacuumBranch> {
    if !c2.is_finite() {
        return Err(Error::InvalidInput(format!("c^2 must be finite, got {c2}")));
    }
    if c2.abs() < LIGHT_CONE_CUTOFF {
        return Err(Error::OnLightCone { c2 });
    }
    if (c2 - 1.0).abs() < PAIR_THRESHOLD_CUTOFF {
        return Err(Error::PairThreshold { c2 });
    }
    Ok(if c2 < 0.0 {
        VacuumBranch::Spacelike
    } else if c2 < 1.0 {
        VacuumBranch::Subthreshold
    } else {
        VacuumBranch::AboveThreshold
    })
}

/// `h·arccot h` on each branch.
fn h_arccot_h(c2: f64, branch: VacuumBranch) -> Complex64 {
    match branch {
        VacuumBranch::Spacelike => {
            let k = (1.0 - 1.0 / c2).sqrt();
            Complex64::new(0.5 * k * ((k + 1.0) / (k - 1.0)).ln(), 0.0)
        }
        VacuumBranch::Subthreshold => {
            let h = (1.0 / c2 - 1.0).sqrt();
            Complex64::new(h * (FRAC_PI_2 - h.atan()), 0.0)
        }
        VacuumBranch::AboveThreshold => {
            let kappa = (1.0 - 1.0 / c2).sqrt();
            Complex64::new(kappa * kappa.atanh(), -kappa * FRAC_PI_2)
        }
    }
}

/// The curly bracket from the closed forms.
fn bracket_closed(c2: f64, branch: VacuumBranch) -> Complex64 {
    let hach = h_arccot_h(c2, branch);
    1.0 / 3.0 + 2.0 * (1.0 + 0.5 / c2) * (hach - 1.0)
}

/// The curly bracket as a series in `u = c²/(1 − c²)`, valid for `|u| < 1`.
///
/// With `S(u) = h·arccot h − 1 = Σ_{n≥1} (−u)ⁿ/(2n+1)` the bracket becomes
/// `−u/3 + 2S(u) + T(u)/(1 − c²)`, `T(u) = Σ_{n≥2} (−1)ⁿ u^{n−1}/(2n+1)`,
/// which has no cancellation at small `u`.
fn bracket_series(c2: f64) -> f64 {
    let u = c2 / (1.0 - c2);
    let mut s = 0.0;
    let mut t = 0.0;
    let mut pow = 1.0; // (−u)^(n−1)
    for n in 1..200 {
        let denom = 2.0 * n as f64 + 1.0;
        let term_s = -u * pow / denom;
        s += term_s;
        if n >= 2 {
            t -= pow / denom;
        }
        if term_s.abs() <= 1e-18 * s.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        pow *= -u;
    }
    -u / 3.0 + 2.0 * s + t / (1.0 - c2)
}

/// Evaluates `C*(c²)` for the coupling of `ms`.
pub fn c_star(c2: f64, ms: &MediumState) -> Result<VacuumScalar> {
    let branch = branch_of(c2)?;
    let u = c2 / (1.0 - c2);
    let bracket = if branch != VacuumBranch::AboveThreshold && u.abs() < SERIES_RADIUS {
        Complex64::new(bracket_series(c2), 0.0)
    } else {
        bracket_closed(c2, branch)
    };
    Ok(VacuumScalar {
        value: -ms.e2() / (12.0 * PI * PI) * bracket,
        branch,
    })
}

/// The limit `c² → 1⁻` of `C*`, obtained by Richardson extrapolation of
/// [`c_star`] along `c² = 1 − s²` (the expansion is a power series in `s`).
pub fn c_star_threshold_limit(ms: &MediumState) -> Result<f64> {
    let s0 = 1e-3;
    let at = |s: f64| -> Result<f64> { Ok(c_star(1.0 - s * s, ms)?.value.re) };
    let (f0, f1, f2) = (at(s0)?, at(s0 / 2.0)?, at(s0 / 4.0)?);
    let r0 = 2.0 * f1 - f0;
    let r1 = 2.0 * f2 - f1;
    Ok((4.0 * r1 - r0) / 3.0)
}
