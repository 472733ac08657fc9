//! Permittivity and inverse-permeability tensors, plasmon dispersion and
//! metamaterial masks.
//!
//! With `ω²/q² = a²/c²`, `ω²/|q|² = a²/b²` and `|q|²/q² = b²/c²`:
//!
//! ```text
//! ε  = 1 + (2 − a²/c²) C + A + (1 − a²/b²) B      ν  = 1 + (2 + b²/c²) C + A − 2(a²/b²) B
//! ε′ = (b²/c²) C − A = −ν′                         τ  = σ = (a/b)((b²/c²) C − B)
//! ε_L = ε + ε′ = 1 + C − (c²/b²) B                 ν_L = ν + ν′ = 1 + 2C + 2D + (c²/b²) B
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{classify_region, derive_point, zero_t_subregion, KinematicPoint, RegionLabel, SubregionLabel};
use crate::medium_finite_t::{scalars, ResponseScalars, ScalarOptions};
use crate::medium_zero_t::{im_zero, re_zero};
use crate::numerics::{find_root_bracketed, scan_values, DEFAULT_X_TOL};
use crate::occupation::MediumState;
use crate::parallel::Execution;
use crate::vacuum::c_star;

/// Relative agreement required between the two longitudinal paths.
const DUAL_PATH_TOL: f64 = 1e-12;

/// Dispersion roots whose re-evaluated condition exceeds this are discarded
/// (they are sign changes through a pole).
pub const ROOT_RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseTensors {
    pub eps: Complex64,
    pub nu: Complex64,
    pub eps_prime: Complex64,
    pub nu_prime: Complex64,
    pub tau: Complex64,
    pub sigma: Complex64,
    pub eps_l: Complex64,
    pub nu_l: Complex64,
}

fn check_close(name: &str, x: Complex64, y: Complex64, scale: f64) -> Result<()> {
    let diff = (x - y).norm();
    if diff <= DUAL_PATH_TOL * scale.max(1.0) {
        Ok(())
    } else {
        Err(Error::InternalConsistency(format!(
            "{name}: longitudinal paths disagree ({x} vs {y})"
        )))
    }
}

/// Builds the tensors from the scalars. `eps_l`/`nu_l` are computed both as
/// eigenvalue sums and from their direct forms; the direct forms are
/// returned after the two are checked against each other.
pub fn assemble(s: &ResponseScalars, p: &KinematicPoint) -> Result<ResponseTensors> {
    let (a, b, c2) = (p.a(), p.b(), p.c2());
    let (a2, b2) = (a * a, b * b);
    let (sa, sb, sc, sd) = (s.a_star, s.b_star, s.c_star, s.d_star);
    let one = Complex64::new(1.0, 0.0);

    let eps = one + (2.0 - a2 / c2) * sc + sa + (1.0 - a2 / b2) * sb;
    let nu = one + (2.0 + b2 / c2) * sc + sa - 2.0 * (a2 / b2) * sb;
    let eps_prime = (b2 / c2) * sc - sa;
    let nu_prime = sa - (b2 / c2) * sc;
    let tau = (a / b) * ((b2 / c2) * sc - sb);
    let sigma = tau;

    let eps_l = one + sc - (c2 / b2) * sb;
    let nu_l = one + 2.0 * sc + 2.0 * sd + (c2 / b2) * sb;

    let scale = 1.0
        + (1.0 + a2 / c2.abs() + b2 / c2.abs()) * sc.norm()
        + 2.0 * sa.norm()
        + (1.0 + a2 / b2) * sb.norm();
    check_close("eps_L", eps + eps_prime, eps_l, scale)?;
    check_close("nu_L", nu + nu_prime, nu_l, scale + 2.0 * sd.norm() + (c2 / b2).abs() * sb.norm())?;

    Ok(ResponseTensors {
        eps,
        nu,
        eps_prime,
        nu_prime,
        tau,
        sigma,
        eps_l,
        nu_l,
    })
}

/// Scalars at one point: closed forms at `t = 0`, quadrature otherwise.
pub fn evaluate(p: &KinematicPoint, ms: &MediumState, opts: &ScalarOptions) -> Result<ResponseScalars> {
    if !ms.is_zero_t() {
        return scalars(p, ms, opts);
    }
    classify_region(p)?;
    let (re_b, re_d) = re_zero(p, ms)?;
    let (im_b, im_d) = im_zero(p, ms, opts.branch)?;
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

/// Scalars and tensors at `(a, b)`.
pub fn response_at(a: f64, b: f64, ms: &MediumState, opts: &ScalarOptions) -> Result<(ResponseScalars, ResponseTensors)> {
    let p = derive_point(a, b)?;
    let s = evaluate(&p, ms, opts)?;
    let t = assemble(&s, &p)?;
    Ok((s, t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DispersionMode {
    /// Charge oscillation, `Re ε_L = 0`.
    Longitudinal,
    /// Current oscillation, `Re ν_L + 1 = 0`.
    Transverse,
}

impl DispersionMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DispersionMode::Longitudinal => "longitudinal",
            DispersionMode::Transverse => "transverse",
        }
    }

    /// The real dispersion condition and its imaginary companion.
    pub fn condition(&self, t: &ResponseTensors) -> Complex64 {
        match self {
            DispersionMode::Longitudinal => t.eps_l,
            DispersionMode::Transverse => t.nu_l + 1.0,
        }
    }
}

impl std::fmt::Display for DispersionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionRoot {
    pub a: f64,
    /// Real part of the condition re-evaluated at the root.
    pub residual: f64,
    /// Imaginary part of the condition at the root (damping diagnostic).
    pub im_at_root: f64,
    /// The condition crosses zero from below with increasing `a`.
    pub rising: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionSample {
    pub b: f64,
    pub roots: Vec<DispersionRoot>,
    /// Grid points where the response could not be evaluated.
    pub skipped: usize,
}

impl DispersionSample {
    /// The plasma root: the largest root at which the condition rises.
    pub fn plasma_root(&self) -> Option<f64> {
        self.roots.iter().filter(|r| r.rising).map(|r| r.a).fold(None, |m, a| {
            Some(m.map_or(a, |m: f64| m.max(a)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispersionBranch {
    pub mode: DispersionMode,
    pub samples: Vec<DispersionSample>,
    /// Plasma frequency `a` extrapolated to `b → 0`.
    pub plasma: Option<f64>,
}

/// Value at `s = 0` of the quadratic through three points `(sᵢ, vᵢ)`.
fn quadratic_at_zero(s: [f64; 3], v: [f64; 3]) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if i != j {
                w *= (0.0 - s[j]) / (s[i] - s[j]);
            }
        }
        acc += w * v[i];
    }
    acc
}

/// Extrapolates plasma roots to `b → 0` with a quadratic in `b²` through
/// the three smallest `b` that have a root. With fewer than three, the root
/// at the smallest `b` is returned.
pub fn extrapolate_plasma(samples: &[DispersionSample]) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = samples
        .iter()
        .filter_map(|s| s.plasma_root().map(|r| (s.b, r)))
        .collect();
    pts.sort_by(|x, y| x.0.total_cmp(&y.0));
    match pts.len() {
        0 => None,
        1 | 2 => Some(pts[0].1),
        _ => Some(quadratic_at_zero(
            [pts[0].0 * pts[0].0, pts[1].0 * pts[1].0, pts[2].0 * pts[2].0],
            [pts[0].1, pts[1].1, pts[2].1],
        )),
    }
}

fn condition_at(mode: DispersionMode, a: f64, b: f64, ms: &MediumState, opts: &ScalarOptions) -> Result<Complex64> {
    let (_, t) = response_at(a, b, ms, opts)?;
    Ok(mode.condition(&t))
}

/// Roots of the dispersion condition in `a` at a single `b`.
pub fn dispersion_at(mode: DispersionMode, b: f64, a_grid: &[f64], ms: &MediumState, opts: &ScalarOptions) -> DispersionSample {
    let values: Vec<f64> = a_grid
        .iter()
        .map(|&a| condition_at(mode, a, b, ms, opts).map(|c| c.re).unwrap_or(f64::NAN))
        .collect();
    let scan = scan_values(a_grid, &values);
    let mut roots = Vec::new();
    for br in scan.brackets {
        let g = |a: f64| condition_at(mode, a, b, ms, opts).map(|c| c.re).unwrap_or(f64::NAN);
        let rising = values[a_grid.partition_point(|&x| x < br.lo)] < 0.0;
        let root = match find_root_bracketed(g, br, DEFAULT_X_TOL) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if let Ok(c) = condition_at(mode, root, b, ms, opts) {
            if c.re.abs() < ROOT_RESIDUAL_TOL {
                roots.push(DispersionRoot {
                    a: root,
                    residual: c.re,
                    im_at_root: c.im,
                    rising,
                });
            }
        }
    }
    DispersionSample {
        b,
        roots,
        skipped: scan.nan_count,
    }
}

/// Solves the dispersion condition over `a_grid` for each `b` (in parallel
/// over `b`) and extrapolates the plasma root to `b → 0`.
pub fn dispersion(
    mode: DispersionMode,
    b_grid: &[f64],
    a_grid: &[f64],
    ms: &MediumState,
    opts: &ScalarOptions,
    exec: Execution,
) -> Result<DispersionBranch> {
    validate_grid("b", b_grid, true, 1)?;
    validate_grid("a", a_grid, false, 2)?;
    let samples = exec.map(b_grid, |&b| dispersion_at(mode, b, a_grid, ms, opts));
    let plasma = extrapolate_plasma(&samples);
    Ok(DispersionBranch {
        mode,
        samples,
        plasma,
    })
}

fn validate_grid(name: &str, grid: &[f64], positive: bool, min_len: usize) -> Result<()> {
    if grid.len() < min_len {
        return Err(Error::InvalidInput(format!("{name} grid needs at least {min_len} point(s)")));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!("{name} grid must be finite and strictly increasing")));
    }
    if positive && grid[0] <= 0.0 {
        return Err(Error::InvalidInput(format!("{name} grid must be positive")));
    }
    Ok(())
}

/// One cell of a region/metamaterial scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetamaterialCell {
    pub a: f64,
    pub b: f64,
    pub region: Option<RegionLabel>,
    /// `T = 0` subregion; `None` at finite temperature or for skipped cells.
    pub subregion: Option<SubregionLabel>,
    pub eps_l: Option<Complex64>,
    pub nu_l: Option<Complex64>,
    /// `Re ε_L < 0` and `Re ν_L < 0`.
    pub marked: bool,
    /// Why the cell could not be evaluated.
    pub skipped: Option<String>,
}

impl MetamaterialCell {
    fn evaluate(a: f64, b: f64, ms: &MediumState, opts: &ScalarOptions) -> Self {
        let mut cell = Self {
            a,
            b,
            region: None,
            subregion: None,
            eps_l: None,
            nu_l: None,
            marked: false,
            skipped: None,
        };
        let p = match derive_point(a, b) {
            Ok(p) => p,
            Err(e) => {
                cell.skipped = Some(e.to_string());
                return cell;
            }
        };
        match classify_region(&p) {
            Ok(r) => cell.region = Some(r),
            Err(e) => {
                cell.skipped = Some(e.to_string());
                return cell;
            }
        }
        if let Some(fs) = ms.fermi_surface() {
            cell.subregion = Some(zero_t_subregion(&p, &fs).label);
        }
        match evaluate(&p, ms, opts).and_then(|s| assemble(&s, &p)) {
            Ok(t) => {
                cell.eps_l = Some(t.eps_l);
                cell.nu_l = Some(t.nu_l);
                cell.marked = t.eps_l.re < 0.0 && t.nu_l.re < 0.0;
            }
            Err(e) => cell.skipped = Some(e.to_string()),
        }
        cell
    }
}

/// Evaluates every `(a, b)` cell, row-major in `b` then `a`, and marks the
/// cells where both longitudinal responses are negative.
pub fn metamaterial_scan(
    a_grid: &[f64],
    b_grid: &[f64],
    ms: &MediumState,
    opts: &ScalarOptions,
    exec: Execution,
) -> Result<Vec<MetamaterialCell>> {
    validate_grid("a", a_grid, false, 1)?;
    validate_grid("b", b_grid, true, 1)?;
    let cells: Vec<(f64, f64)> = b_grid
        .iter()
        .flat_map(|&b| a_grid.iter().map(move |&a| (a, b)))
        .collect();
    Ok(exec.map(&cells, |&(a, b)| MetamaterialCell::evaluate(a, b, ms, opts)))
}
