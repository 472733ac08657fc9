//! Reduced kinematic variables and the absorption-region map of the `(a, b)` plane.
//!
//! With `a = ω/2m`, `b = |q|/2m` the invariant mass is `c² = a² − b²`; the
//! single-particle energies at which the one-loop logarithms change sign are
//! `x = |a ± bγ|` with `γ² = 1 − 1/c²`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points with `|c²|` below this are rejected as lying on the light cone.
pub const LIGHT_CONE_CUTOFF: f64 = 1e-9;

/// Points with `|c² − 1|` below this are rejected as lying on the pair threshold.
pub const PAIR_THRESHOLD_CUTOFF: f64 = 1e-9;

/// Tolerance used when deciding on which side of a window edge a point lies.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicPoint {
    a: f64,
    b: f64,
    c2: f64,
    gamma2: f64,
    d2: f64,
}

impl KinematicPoint {
    /// Builds a point without any validation. Only for internal checks that
    /// need e.g. negative `a`.
    pub(crate) fn unchecked(a: f64, b: f64) -> Self {
        let c2 = a * a - b * b;
        let gamma2 = 1.0 - 1.0 / c2;
        let d2 = a * a - b * b * gamma2;
        Self {
            a,
            b,
            c2,
            gamma2,
            d2,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `c² = a² − b²`.
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// `γ² = 1 − 1/c²`.
    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// `|γ|`, i.e. `√|γ²|`. Real `γ` only when `gamma2() > 0`.
    pub fn gamma_abs(&self) -> f64 {
        self.gamma2.abs().sqrt()
    }

    /// `d² = a² − b²γ²` (equal to `c² + b²/c²`).
    pub fn d2(&self) -> f64 {
        self.d2
    }

    /// The real singular abscissae `|a ± bγ|`, present only when `γ² > 0`.
    pub fn singular_abscissae(&self) -> Option<(f64, f64)> {
        if self.gamma2 > 0.0 {
            let bg = self.b * self.gamma_abs();
            Some(((self.a - bg).abs(), self.a + bg))
        } else {
            None
        }
    }
}

/// Validates `(a, b)` and fills in the derived variables.
pub fn derive_point(a: f64, b: f64) -> Result<KinematicPoint> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput(format!(
            "non-finite kinematics a = {a}, b = {b}"
        )));
    }
    if b <= 0.0 {
        return Err(Error::InvalidInput(format!("b must be positive, got {b}")));
    }
    if a < 0.0 {
        return Err(Error::InvalidInput(format!(
            "a must be non-negative, got {a}"
        )));
    }
    let c2 = a * a - b * b;
    if c2.abs() < LIGHT_CONE_CUTOFF {
        return Err(Error::OnLightCone { c2 });
    }
    Ok(KinematicPoint::unchecked(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    /// `c² < 0`: spacelike, electron-hole absorption.
    I,
    /// `0 < c² < 1`: transparent.
    II,
    /// `c² > 1`: pair creation.
    III,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::I => "I",
            RegionLabel::II => "II",
            RegionLabel::III => "III",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_region(p: &KinematicPoint) -> Result<RegionLabel> {
    let c2 = p.c2();
    if c2.abs() < LIGHT_CONE_CUTOFF {
        return Err(Error::OnLightCone { c2 });
    }
    if (c2 - 1.0).abs() < PAIR_THRESHOLD_CUTOFF {
        return Err(Error::PairThreshold { c2 });
    }
    Ok(if c2 < 0.0 {
        RegionLabel::I
    } else if c2 < 1.0 {
        RegionLabel::II
    } else {
        RegionLabel::III
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubregionLabel {
    A,
    B,
    C,
    D,
    None,
}

impl SubregionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SubregionLabel::A => "A",
            SubregionLabel::B => "B",
            SubregionLabel::C => "C",
            SubregionLabel::D => "D",
            SubregionLabel::None => "NONE",
        }
    }
}

impl std::fmt::Display for SubregionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `T = 0` absorption window: the label and the active `(x_l, x_u)` limits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Subregion {
    pub label: SubregionLabel,
    pub limits: Option<(f64, f64)>,
}

impl Subregion {
    fn none() -> Self {
        Self {
            label: SubregionLabel::None,
            limits: None,
        }
    }
}

/// Zero-temperature Fermi surface: `x_F = ξ/m` and `y_F = p_F/m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FermiSurface {
    xf: f64,
    yf: f64,
}

impl FermiSurface {
    pub fn new(xf: f64) -> Result<Self> {
        if !xf.is_finite() || xf < 1.0 {
            return Err(Error::InvalidInput(format!(
                "Fermi energy x_F must be >= 1, got {xf}"
            )));
        }
        let yf = ((xf - 1.0) * (xf + 1.0)).sqrt();
        Ok(Self { xf, yf })
    }

    pub fn xf(&self) -> f64 {
        self.xf
    }

    pub fn yf(&self) -> f64 {
        self.yf
    }

    /// `t_F = y_F / x_F`.
    pub fn tf(&self) -> f64 {
        self.yf / self.xf
    }
}

/// Classifies a point of region I or III into the `T = 0` subregions.
///
/// A/C: the whole window `(x_l, a+bγ)` lies below the Fermi energy;
/// B/D: the Fermi energy cuts the window; NONE: the window lies above it
/// (or the point is in region II).
pub fn zero_t_subregion(p: &KinematicPoint, fs: &FermiSurface) -> Subregion {
    let region = match classify_region(p) {
        Ok(r) => r,
        Err(_) => return Subregion::none(),
    };
    let bg = p.b() * p.gamma_abs();
    let (x_l, inside, straddle) = match region {
        RegionLabel::II => return Subregion::none(),
        RegionLabel::I => (-p.a() + bg, SubregionLabel::A, SubregionLabel::B),
        RegionLabel::III => (p.a() - bg, SubregionLabel::C, SubregionLabel::D),
    };
    let x_u = p.a() + bg;
    let xf = fs.xf();
    if x_l >= xf {
        Subregion::none()
    } else if x_u <= xf + BOUNDARY_TOL {
        Subregion {
            label: inside,
            limits: Some((x_l, x_u)),
        }
    } else {
        Subregion {
            label: straddle,
            limits: Some((x_l, xf)),
        }
    }
}

/// Curves in the `(a, b)` plane separating the `T = 0` subregions at fixed `a`.
///
/// `b±` bound the region-I window (`−a+bγ < x_F`), `b̄±` the region where the
/// full window stays below `x_F`, and `b′±` the region-III window for `a > x_F`.
/// Entries are `None` when the square-root argument is negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionBoundaries {
    pub b_plus: Option<f64>,
    pub b_minus: Option<f64>,
    pub bar_plus: Option<f64>,
    pub bar_minus: Option<f64>,
    pub prime_plus: Option<f64>,
    pub prime_minus: Option<f64>,
}

impl RegionBoundaries {
    pub fn values(&self) -> [Option<f64>; 6] {
        [
            self.b_plus,
            self.b_minus,
            self.bar_plus,
            self.bar_minus,
            self.prime_plus,
            self.prime_minus,
        ]
    }
}

fn sqrt_if_real(arg: f64) -> Option<f64> {
    if arg >= 0.0 {
        Some(arg.sqrt())
    } else {
        None
    }
}

/// The `(b̄+, b̄−)` pair. Serves both the region-I and the region-III
/// (primed) curves, which are the same expression.
fn bar_b_pm(fs: &FermiSurface, a: f64) -> (Option<f64>, Option<f64>) {
    let half = fs.yf() / 2.0;
    match sqrt_if_real(half * half - a * (fs.xf() - a)) {
        Some(r) => (Some(half + r), Some(half - r)),
        None => (None, None),
    }
}

pub fn region_boundaries(fs: &FermiSurface, a: f64) -> Result<RegionBoundaries> {
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::InvalidInput(format!(
            "a must be finite and non-negative, got {a}"
        )));
    }
    let half = fs.yf() / 2.0;
    let xf = fs.xf();

    let (b_plus, b_minus) = match sqrt_if_real(half * half + a * (xf + a)) {
        Some(r) => (Some(half + r), Some(-half + r)),
        None => (None, None),
    };
    let (bar_plus, bar_minus) = bar_b_pm(fs, a);
    let (prime_plus, prime_minus) = match sqrt_if_real(half * half - a * (xf - a)) {
        Some(r) => (Some(half + r), Some(-half + r)),
        None => (None, None),
    };
    Ok(RegionBoundaries {
        b_plus,
        b_minus,
        bar_plus,
        bar_minus,
        prime_plus,
        prime_minus,
    })
}
