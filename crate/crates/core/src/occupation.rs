//! Fermi-Dirac occupation of the electron-positron plasma.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::FermiSurface;
use crate::ALPHA;

/// Exponent beyond which a Fermi factor is taken as exactly 0 (or 1).
const EXP_CLAMP: f64 = 700.0;

/// Temperature and chemical potential in units of the electron mass, plus the
/// coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumState {
    t: f64,
    xi: f64,
    alpha: f64,
}

impl MediumState {
    /// `t = T/m ≥ 0`, `xi = ξ/m`. At `t = 0` the Fermi sea needs `xi ≥ 1`
    /// (`xi = 1` is the empty sea).
    pub fn new(t: f64, xi: f64, alpha: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidInput(format!(
                "temperature must be finite and >= 0, got {t}"
            )));
        }
        if !xi.is_finite() {
            return Err(Error::InvalidInput(format!(
                "chemical potential must be finite, got {xi}"
            )));
        }
        if t == 0.0 && xi < 1.0 {
            return Err(Error::InvalidInput(format!(
                "at t = 0 the chemical potential must be >= 1, got {xi}"
            )));
        }
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "coupling must be positive, got {alpha}"
            )));
        }
        Ok(Self { t, xi, alpha })
    }

    /// Zero-temperature medium with Fermi energy `xf` and the physical coupling.
    pub fn zero_t(xf: f64) -> Result<Self> {
        Self::new(0.0, xf, ALPHA)
    }

    /// Finite-temperature medium with the physical coupling.
    pub fn thermal(t: f64, xi: f64) -> Result<Self> {
        Self::new(t, xi, ALPHA)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `e² = 4πα`.
    pub fn e2(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.alpha
    }

    pub fn is_zero_t(&self) -> bool {
        self.t == 0.0
    }

    /// The `T = 0` Fermi surface, `None` at finite temperature.
    pub fn fermi_surface(&self) -> Option<FermiSurface> {
        if self.is_zero_t() {
            FermiSurface::new(self.xi).ok()
        } else {
            None
        }
    }

    /// True when no occupied states exist (`t = 0`, `xi = 1`).
    pub fn is_empty(&self) -> bool {
        self.is_zero_t() && self.xi <= 1.0
    }
}

fn fermi_term(z: f64) -> f64 {
    if z > EXP_CLAMP {
        0.0
    } else if z < -EXP_CLAMP {
        1.0
    } else {
        1.0 / (z.exp() + 1.0)
    }
}

/// Total occupation of particles and antiparticles at energy `x` (units of `m`).
///
/// At `t = 0` this is the step `Θ(x_F − x)` with the value `1/2` on the edge.
pub fn n_fermi(x: f64, ms: &MediumState) -> f64 {
    if ms.t == 0.0 {
        if x < ms.xi {
            1.0
        } else if x > ms.xi {
            0.0
        } else {
            0.5
        }
    } else {
        fermi_term((x - ms.xi) / ms.t) + fermi_term((x + ms.xi) / ms.t)
    }
}

/// Upper energy at which the momentum integrals are truncated.
pub fn x_cutoff(ms: &MediumState) -> f64 {
    if ms.t == 0.0 {
        ms.xi
    } else {
        ms.xi.max(1.0) + 40.0 * ms.t
    }
}
