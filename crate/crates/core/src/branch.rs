use serde::{Deserialize, Serialize};

/// How the imaginary (absorptive) parts of `B*` and `D*` are continued from
/// Euclidean to real frequency.
///
/// `Retarded` takes each logarithmic factor `c² ± b·y ± a·x` of the angular
/// integral with the sign of its own `ω → ω + i0⁺` imaginary part. It is the
/// convention consistent with the Kramers-Kronig transform of the real parts
/// and with passivity (`Im ε_L ≥ 0`). In the electron-hole region it replaces
/// the single window `(−a+bγ, a+bγ)` by the difference of two shifted
/// windows; in the pair region it flips the overall sign so that the medium
/// blocks part of the vacuum absorption.
///
/// `AsPrinted` keeps the single-window expressions with the prefactor
/// `sign(c²)`, for comparison with that form and for the window/closed-form
/// consistency checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsorptionBranch {
    #[default]
    Retarded,
    AsPrinted,
}
