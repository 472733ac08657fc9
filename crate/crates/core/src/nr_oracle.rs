//! Nonrelativistic (Lindhard) imaginary part of `B*` at `T = 0`.
//!
//! Units: `m = 1`, so `ω` and `q` are in units of the electron mass and
//! `ε_q = q²/2`. The bridge to the relativistic variables is `a = ω/2`,
//! `b = q/2`, `x_F = √(1 + p_F²)`, and `ε′_F = p_F²/2 ≈ x_F − 1`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::occupation::MediumState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NrPoint {
    pub omega: f64,
    pub q: f64,
    pub pf: f64,
}

impl NrPoint {
    pub fn new(omega: f64, q: f64, pf: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::InvalidInput(format!("q must be positive, got {q}")));
        }
        if !(pf >= 0.0) || !pf.is_finite() {
            return Err(Error::InvalidInput(format!("p_F must be >= 0, got {pf}")));
        }
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::InvalidInput(format!("omega must be >= 0, got {omega}")));
        }
        Ok(Self { omega, q, pf })
    }

    pub fn eps_q(&self) -> f64 {
        0.5 * self.q * self.q
    }

    /// `ε′_F = p_F²/2`.
    pub fn eps_f(&self) -> f64 {
        0.5 * self.pf * self.pf
    }

    /// Relativistic `(a, b)`.
    pub fn to_ab(&self) -> (f64, f64) {
        (0.5 * self.omega, 0.5 * self.q)
    }

    /// Fermi energy `x_F = √(1 + p_F²)` of the matching relativistic gas.
    pub fn xf(&self) -> f64 {
        (1.0 + self.pf * self.pf).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NrCase {
    OneA,
    OneB,
    OneC,
    TwoA,
    TwoB,
    TwoC,
}

impl NrCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            NrCase::OneA => "1a",
            NrCase::OneB => "1b",
            NrCase::OneC => "1c",
            NrCase::TwoA => "2a",
            NrCase::TwoB => "2b",
            NrCase::TwoC => "2c",
        }
    }

    /// Sub-case letter: `a` (no absorption), `b` (partially blocked), `c` (fully inside the sea).
    pub fn letter(&self) -> char {
        match self {
            NrCase::OneA | NrCase::TwoA => 'a',
            NrCase::OneB | NrCase::TwoB => 'b',
            NrCase::OneC | NrCase::TwoC => 'c',
        }
    }
}

impl std::fmt::Display for NrCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Case 1 when `ω > ε_q`, else case 2; the letter compares `p_F` with
/// `|ω − ε_q|/q` and `(ω + ε_q)/q`.
pub fn nr_case(p: &NrPoint) -> NrCase {
    let eq = p.eps_q();
    let lower = (p.omega - eq).abs() / p.q;
    let upper = (p.omega + eq) / p.q;
    let one = p.omega > eq;
    match (one, p.pf <= lower, p.pf < upper) {
        (true, true, _) => NrCase::OneA,
        (true, false, true) => NrCase::OneB,
        (true, false, false) => NrCase::OneC,
        (false, true, _) => NrCase::TwoA,
        (false, false, true) => NrCase::TwoB,
        (false, false, false) => NrCase::TwoC,
    }
}

/// Lindhard `Im B*`.
pub fn nr_im_b(p: &NrPoint, ms: &MediumState) -> f64 {
    let e2 = ms.e2();
    let q3 = p.q.powi(3);
    match nr_case(p).letter() {
        'a' => 0.0,
        'b' => {
            let (ef, eq) = (p.eps_f(), p.eps_q());
            let d = p.omega - eq;
            e2 * ef * (1.0 - d * d / (4.0 * ef * eq)) / (2.0 * PI * q3)
        }
        _ => e2 * p.omega / (2.0 * PI * q3),
    }
}
