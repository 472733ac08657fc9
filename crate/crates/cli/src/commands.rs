//! The four subcommands.

use std::io::{self, Write};

use relresp::nr_oracle::{nr_case, nr_im_b, NrPoint};
use relresp::{
    classify_region, derive_point, dispersion, evaluate, assemble, metamaterial_scan, zero_t_subregion,
    AbsorptionBranch, DispersionMode, Execution, MediumState, ScalarOptions,
};
use serde::Serialize;

use crate::args::{BranchArg, Format, MediumArgs, ModeArg, OutputArgs, Range, RunArgs, Switch, Units, ELECTRON_MASS_EV};
use crate::output::{fmt_f64, open, Num, Pair};

#[derive(Debug)]
pub enum CliError {
    /// Exit code 2.
    Input(String),
    /// Exit code 3.
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Io(e) => write!(f, "i/o failure: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => CliError::Io(e),
            k => CliError::Io(io::Error::new(io::ErrorKind::Other, format!("{k:?}"))),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Medium and options in natural units, plus the factor turning the
/// user's a/b values into `ω/2m`, `|q|/2m`.
struct Setup {
    ms: MediumState,
    opts: ScalarOptions,
    ab_scale: f64,
}

fn setup(m: &MediumArgs) -> Result<Setup, CliError> {
    let (scale, ab_scale) = match m.units {
        Units::Natural => (1.0, 1.0),
        Units::Ev => (1.0 / ELECTRON_MASS_EV, 0.5 / ELECTRON_MASS_EV),
    };
    let ms = MediumState::new(m.t * scale, m.xi.map_or(1.0, |x| x * scale), m.alpha).map_err(input)?;
    let opts = ScalarOptions {
        include_vacuum: m.vacuum == Switch::On,
        branch: match m.branch {
            BranchArg::Retarded => AbsorptionBranch::Retarded,
            BranchArg::AsPrinted => AbsorptionBranch::AsPrinted,
        },
        ..ScalarOptions::default()
    };
    Ok(Setup { ms, opts, ab_scale })
}

fn execution(run: &RunArgs) -> Execution {
    match run.jobs {
        Some(1) => Execution::Sequential,
        jobs => Execution::Parallel { jobs },
    }
}

fn branch_name(b: AbsorptionBranch) -> &'static str {
    match b {
        AbsorptionBranch::Retarded => "retarded",
        AbsorptionBranch::AsPrinted => "as_printed",
    }
}

#[derive(Serialize)]
struct Inputs {
    a: Num,
    b: Num,
    t: Num,
    xi: Num,
    alpha: Num,
    include_vacuum: bool,
    branch: &'static str,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct Scalars {
    ReB: Num,
    ImB: Num,
    ReD: Num,
    ImD: Num,
    ReC: Num,
    ImC: Num,
    ReA: Num,
    ImA: Num,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct Tensors {
    eps: Pair,
    eps_prime: Pair,
    nu: Pair,
    nu_prime: Pair,
    tau: Pair,
    sigma: Pair,
    eps_L: Pair,
    nu_L: Pair,
}

#[derive(Serialize)]
struct ResponseRecord {
    inputs: Inputs,
    region: String,
    subregion: Option<String>,
    scalars: Scalars,
    tensors: Tensors,
}

pub fn response(a: f64, b: f64, medium: &MediumArgs, out: &OutputArgs) -> Result<(), CliError> {
    if out.format == Some(Format::Csv) {
        return Err(input("response emits a single JSON record; --format csv is not supported"));
    }
    let s = setup(medium)?;
    let (a, b) = (a * s.ab_scale, b * s.ab_scale);
    let p = derive_point(a, b).map_err(input)?;
    let region = classify_region(&p).map_err(input)?;
    let subregion = s.ms.fermi_surface().map(|fs| zero_t_subregion(&p, &fs).label.to_string());
    let sc = evaluate(&p, &s.ms, &s.opts).map_err(input)?;
    let t = assemble(&sc, &p).map_err(input)?;
    let record = ResponseRecord {
        inputs: Inputs {
            a: Num(a),
            b: Num(b),
            t: Num(s.ms.t()),
            xi: Num(s.ms.xi()),
            alpha: Num(s.ms.alpha()),
            include_vacuum: s.opts.include_vacuum,
            branch: branch_name(s.opts.branch),
        },
        region: region.to_string(),
        subregion,
        scalars: Scalars {
            ReB: Num(sc.b_star.re),
            ImB: Num(sc.b_star.im),
            ReD: Num(sc.d_star.re),
            ImD: Num(sc.d_star.im),
            ReC: Num(sc.c_star.re),
            ImC: Num(sc.c_star.im),
            ReA: Num(sc.a_star.re),
            ImA: Num(sc.a_star.im),
        },
        tensors: Tensors {
            eps: Pair(t.eps),
            eps_prime: Pair(t.eps_prime),
            nu: Pair(t.nu),
            nu_prime: Pair(t.nu_prime),
            tau: Pair(t.tau),
            sigma: Pair(t.sigma),
            eps_L: Pair(t.eps_l),
            nu_L: Pair(t.nu_l),
        },
    };
    let mut w = open(out.output.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &record)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ScanRecord {
    a: Num,
    b: Num,
    region: Option<String>,
    subregion: Option<String>,
    eps_L: Option<Pair>,
    nu_L: Option<Pair>,
    metamaterial: bool,
    reason: Option<String>,
}

pub fn scan(a: Range, b: Range, medium: &MediumArgs, out: &OutputArgs, run: &RunArgs) -> Result<(), CliError> {
    let s = setup(medium)?;
    let a_grid = a.scaled(s.ab_scale).values();
    let b_grid = b.scaled(s.ab_scale).values();
    let cells = metamaterial_scan(&a_grid, &b_grid, &s.ms, &s.opts, execution(run)).map_err(input)?;
    let mut w = open(out.output.as_deref())?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record([
                "a", "b", "region", "subregion", "re_eps_L", "im_eps_L", "re_nu_L", "im_nu_L", "metamaterial", "reason",
            ])?;
            for c in &cells {
                let nan = relresp::Complex64::new(f64::NAN, f64::NAN);
                let (e, n) = (c.eps_l.unwrap_or(nan), c.nu_l.unwrap_or(nan));
                csv.write_record([
                    fmt_f64(c.a),
                    fmt_f64(c.b),
                    c.region.map(|r| r.to_string()).unwrap_or_default(),
                    c.subregion.map(|r| r.to_string()).unwrap_or_default(),
                    fmt_f64(e.re),
                    fmt_f64(e.im),
                    fmt_f64(n.re),
                    fmt_f64(n.im),
                    c.marked.to_string(),
                    c.skipped.clone().unwrap_or_default(),
                ])?;
            }
            csv.flush()?;
        }
        Format::Json => {
            let records: Vec<ScanRecord> = cells
                .iter()
                .map(|c| ScanRecord {
                    a: Num(c.a),
                    b: Num(c.b),
                    region: c.region.map(|r| r.to_string()),
                    subregion: c.subregion.map(|r| r.to_string()),
                    eps_L: c.eps_l.map(Pair),
                    nu_L: c.nu_l.map(Pair),
                    metamaterial: c.marked,
                    reason: c.skipped.clone(),
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &records)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct DispersionRow {
    b: Num,
    mode: &'static str,
    root_a: Num,
    residual: Num,
    im_at_root: Num,
    flag: &'static str,
}

pub fn dispersion_cmd(
    mode: ModeArg,
    a: Range,
    b: Range,
    medium: &MediumArgs,
    out: &OutputArgs,
    run: &RunArgs,
) -> Result<(), CliError> {
    let s = setup(medium)?;
    let a_grid = a.scaled(s.ab_scale).values();
    let b_grid = b.scaled(s.ab_scale).values();
    let modes: &[DispersionMode] = match mode {
        ModeArg::Longitudinal => &[DispersionMode::Longitudinal],
        ModeArg::Transverse => &[DispersionMode::Transverse],
        ModeArg::Both => &[DispersionMode::Longitudinal, DispersionMode::Transverse],
    };
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &m in modes {
        let branch = dispersion(m, &b_grid, &a_grid, &s.ms, &s.opts, execution(run)).map_err(input)?;
        for sample in &branch.samples {
            if sample.roots.is_empty() {
                rows.push(DispersionRow {
                    b: Num(sample.b),
                    mode: m.as_str(),
                    root_a: Num(f64::NAN),
                    residual: Num(f64::NAN),
                    im_at_root: Num(f64::NAN),
                    flag: "no_root",
                });
            }
            for r in &sample.roots {
                rows.push(DispersionRow {
                    b: Num(sample.b),
                    mode: m.as_str(),
                    root_a: Num(r.a),
                    residual: Num(r.residual),
                    im_at_root: Num(r.im_at_root),
                    flag: if Some(r.a) == sample.plasma_root() { "plasma" } else { "root" },
                });
            }
        }
        summary.push(DispersionRow {
            b: Num(0.0),
            mode: m.as_str(),
            root_a: Num(branch.plasma.unwrap_or(f64::NAN)),
            residual: Num(f64::NAN),
            im_at_root: Num(f64::NAN),
            flag: if branch.plasma.is_some() { "extrapolated" } else { "no_root" },
        });
    }
    rows.extend(summary);
    let mut w = open(out.output.as_deref())?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["b", "mode", "root_a", "residual", "im_at_root", "flag"])?;
            for r in &rows {
                csv.write_record([
                    fmt_f64(r.b.0),
                    r.mode.to_string(),
                    fmt_f64(r.root_a.0),
                    fmt_f64(r.residual.0),
                    fmt_f64(r.im_at_root.0),
                    r.flag.to_string(),
                ])?;
            }
            csv.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &rows)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct NrRow {
    omega: Num,
    q: Num,
    case: &'static str,
    im_b: Num,
}

pub fn nr_scan(omega: Range, q: Range, pf: f64, alpha: f64, units: Units, out: &OutputArgs) -> Result<(), CliError> {
    let k = match units {
        Units::Natural => 1.0,
        Units::Ev => 1.0 / ELECTRON_MASS_EV,
    };
    let pf = pf * k;
    let ms = MediumState::new(0.0, (1.0 + pf * pf).sqrt(), alpha).map_err(input)?;
    let mut rows = Vec::new();
    for &qv in &q.scaled(k).values() {
        for &w in &omega.scaled(k).values() {
            let p = NrPoint::new(w, qv, pf).map_err(input)?;
            rows.push(NrRow {
                omega: Num(w),
                q: Num(qv),
                case: nr_case(&p).as_str(),
                im_b: Num(nr_im_b(&p, &ms)),
            });
        }
    }
    let mut w = open(out.output.as_deref())?;
    match out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(["omega", "q", "case", "im_b"])?;
            for r in &rows {
                csv.write_record([fmt_f64(r.omega.0), fmt_f64(r.q.0), r.case.to_string(), fmt_f64(r.im_b.0)])?;
            }
            csv.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &rows)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}
