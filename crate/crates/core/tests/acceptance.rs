//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{as_printed_im_oracle, retarded_im_oracle, sample_in, vacuum_eta_oracle, Region};
use relresp::medium_finite_t::{im_scalars, re_scalars};
use relresp::medium_zero_t::{im_zero, integrals_ij, re_zero, zero_t_coefficients};
use relresp::nr_oracle::{nr_case, nr_im_b, NrPoint};
use relresp::numerics::integrate_adaptive;
use relresp::vacuum::c_star_threshold_limit;
use relresp::{
    assemble, c_star, classify_region, derive_point, dispersion, evaluate, metamaterial_scan, zero_t_subregion,
    AbsorptionBranch, DispersionMode, Execution, FermiSurface, KinematicPoint, MediumState,
    ScalarOptions, SubregionLabel, ALPHA,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn e2() -> f64 {
    4.0 * PI * ALPHA
}

/// 1. Closed-form `T = 0` absorptive parts against step-occupancy quadrature.
fn c1_zero_t_oracle() -> Outcome {
    let mut r = rng(1);
    let mut points = Vec::new();
    let mut per_label = [0usize; 4];
    while points.len() < 1000 {
        let xf = [1.2, 1.5, 3.0][r.gen_range(0..3)];
        let region = if r.gen_bool(0.5) { Region::I } else { Region::III };
        let p = sample_in(&mut r, region, 3.5);
        let fs = FermiSurface::new(xf).unwrap();
        let label = zero_t_subregion(&p, &fs).label;
        let slot = match label {
            SubregionLabel::A => 0,
            SubregionLabel::B => 1,
            SubregionLabel::C => 2,
            SubregionLabel::D => 3,
            SubregionLabel::None => continue,
        };
        if per_label[slot] >= 250 {
            continue;
        }
        per_label[slot] += 1;
        points.push((p, xf));
    }
    let results = Execution::default().map(&points, |&(p, xf)| {
        let ms = MediumState::zero_t(xf).unwrap();
        let mut worst: f64 = 0.0;
        for branch in [AbsorptionBranch::Retarded, AbsorptionBranch::AsPrinted] {
            let (ib, id) = im_zero(&p, &ms, branch).unwrap();
            let ((ob, od), (sb, sd)) = match branch {
                AbsorptionBranch::Retarded => retarded_im_oracle(p.a(), p.b(), xf, ms.e2()),
                AbsorptionBranch::AsPrinted => as_printed_im_oracle(p.a(), p.b(), xf, ms.e2()),
            };
            worst = worst.max((ib - ob).abs() / ob.abs().max(sb));
            worst = worst.max((id - od).abs() / od.abs().max(sd));
        }
        worst
    });
    let worst = results.iter().fold(0.0f64, |m, &v| m.max(v));
    outcome(
        worst <= 1e-10,
        format!("1000 points (A/B/C/D = {per_label:?}), both branches, max rel err {worst:.2e}"),
    )
}

/// 2. Rational integrals against adaptive quadrature.
fn c2_rational_integrals() -> Outcome {
    let mut r = rng(2);
    let (mut real, mut complex) = (Vec::new(), Vec::new());
    let mut root_violations = 0usize;
    let mut probed = 0usize;
    while real.len() < 100 || complex.len() < 100 {
        let xf = r.gen_range(1.05..3.0);
        let fs = FermiSurface::new(xf).unwrap();
        let region = [Region::I, Region::II, Region::III][r.gen_range(0..3)];
        let p = sample_in(&mut r, region, 3.0);
        if p.gamma2() > 0.0 {
            probed += 1;
            let base = p.d2() * (p.d2() + 1.0) - 2.0 * p.a() * p.a();
            let split = 2.0 * p.a() * p.b() * p.gamma_abs();
            let d4 = p.d2() * p.d2();
            let (tp2, tm2) = ((base + split) / d4, (base - split) / d4);
            if !(tp2 > 0.0 && tm2 > 0.0) {
                root_violations += 1;
                continue;
            }
            let margin = (1.05 * fs.tf()).powi(2);
            if tm2 > margin && real.len() < 100 {
                real.push((p, fs));
            }
        } else if complex.len() < 100 {
            complex.push((p, fs));
        }
    }
    let check = |set: &[(KinematicPoint, FermiSurface)]| -> f64 {
        let errs = Execution::default().map(set, |(p, fs)| {
            let k = zero_t_coefficients(p);
            let q = |t: f64| k.frak_c * t.powi(4) + k.frak_b * t * t + k.frak_a;
            let n0 = integrate_adaptive(|t| 1.0 / q(t), 0.0, fs.tf(), &[], 1e-13).unwrap().value;
            let n2 = integrate_adaptive(|t| t * t / q(t), 0.0, fs.tf(), &[], 1e-13).unwrap().value;
            match integrals_ij(p, fs) {
                Ok((i0, i2)) => ((i0 - n0) / n0).abs().max(((i2 - n2) / n2).abs()),
                Err(_) => f64::INFINITY,
            }
        });
        errs.iter().fold(0.0f64, |m, &v| m.max(v))
    };
    let (er, ec) = (check(&real), check(&complex));
    outcome(
        er <= 1e-8 && ec <= 1e-8 && root_violations == 0,
        format!(
            "max rel err real branch {er:.2e}, complex branch {ec:.2e}; t±² ≤ 0 in {root_violations} of {probed} probes"
        ),
    )
}

/// Distance of the `T = 0` window edges and log singularities from `x_F`.
fn clear_of_fermi_edge(p: &KinematicPoint, xf: f64, gap: f64) -> bool {
    let mut edges = Vec::new();
    if let Some((lo, hi)) = p.singular_abscissae() {
        edges.push(lo);
        edges.push(hi);
        edges.push(-p.a() + p.b() * p.gamma_abs());
    }
    edges.push(xf - 2.0 * p.a());
    edges.iter().all(|&e| (e - xf).abs() > gap && (e - 1.0).abs() > gap)
}

/// 3. Finite-temperature quadrature at small `t` against the closed forms.
fn c3_zero_t_limit() -> Outcome {
    let mut r = rng(3);
    let xf = 1.5;
    let mut points = Vec::new();
    for region in [Region::I, Region::II, Region::III] {
        let mut n = 0;
        while n < 20 {
            let p = sample_in(&mut r, region, 2.5);
            let fs = FermiSurface::new(xf).unwrap();
            if region != Region::II && zero_t_subregion(&p, &fs).label == SubregionLabel::None {
                continue;
            }
            if !clear_of_fermi_edge(&p, xf, 0.05) {
                continue;
            }
            points.push(p);
            n += 1;
        }
    }
    let cold = MediumState::zero_t(xf).unwrap();
    let warm = MediumState::thermal(1e-3, xf).unwrap();
    let fails = Execution::default().map(&points, |p| {
        let (rb, rd) = re_zero(p, &cold).unwrap();
        let (ib, id) = im_zero(p, &cold, AbsorptionBranch::Retarded).unwrap();
        let (wrb, wrd) = re_scalars(p, &warm, 1e-10).unwrap();
        let (wib, wid) = im_scalars(p, &warm, AbsorptionBranch::Retarded, 1e-10).unwrap();
        [(wrb, rb), (wrd, rd), (wib, ib), (wid, id)]
            .iter()
            .map(|&(w, c)| (w - c).abs() / (1e-3 * c.abs()).max(1e-8))
            .fold(0.0f64, f64::max)
    });
    let worst = fails.iter().fold(0.0f64, |m, &v| m.max(v));
    outcome(
        worst <= 1.0,
        format!("60 points, worst |Δ| / max(1e-3·|ref|, 1e-8) = {worst:.3}"),
    )
}

/// 4. Exact transparency of region II.
fn c4_region_two() -> Outcome {
    let mut r = rng(4);
    let mut nonzero = 0usize;
    let mut evaluated = 0usize;
    for i in 0..10_000 {
        let p = sample_in(&mut r, Region::II, 5.0);
        let ms = if i % 4 == 0 {
            MediumState::zero_t(r.gen_range(1.0..4.0)).unwrap()
        } else {
            MediumState::thermal(r.gen_range(1e-4..5.0), r.gen_range(-4.0..4.0)).unwrap()
        };
        for branch in [AbsorptionBranch::Retarded, AbsorptionBranch::AsPrinted] {
            let v = if ms.is_zero_t() {
                im_zero(&p, &ms, branch).unwrap()
            } else {
                im_scalars(&p, &ms, branch, 1e-10).unwrap()
            };
            if v != (0.0, 0.0) {
                nonzero += 1;
            }
        }
        if i % 50 == 0 {
            let opts = ScalarOptions::default();
            let s = evaluate(&p, &ms, &opts).unwrap();
            evaluated += 1;
            if s.b_star.im != 0.0 || s.d_star.im != 0.0 || s.c_star.im != 0.0 {
                nonzero += 1;
            }
        }
    }
    outcome(
        nonzero == 0,
        format!("10000 points (+{evaluated} full evaluations), {nonzero} nonzero imaginary parts"),
    )
}

/// 5. Nonrelativistic limit against the Lindhard absorption.
fn c5_lindhard() -> Outcome {
    let xf: f64 = 1.0005;
    let pf = ((xf - 1.0) * (xf + 1.0)).sqrt();
    let ms = MediumState::zero_t(xf).unwrap();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for i in 0..20 {
        let q = (i as f64 + 0.5) / 20.0 * 1.9 * pf;
        for j in 0..20 {
            let eq = 0.5 * q * q;
            let omega = (j as f64 + 0.5) / 20.0 * 0.95 * (eq + q * pf);
            let np = NrPoint::new(omega, q, pf).unwrap();
            let nr = nr_im_b(&np, &ms);
            if nr == 0.0 || nr_case(&np).letter() == 'a' {
                continue;
            }
            let (a, b) = np.to_ab();
            let p = derive_point(a, b).unwrap();
            let rel = im_zero(&p, &ms, AbsorptionBranch::Retarded).unwrap().0;
            worst = worst.max(((rel - nr) / nr).abs());
            count += 1;
        }
    }
    outcome(
        count == 400 && worst < 0.02,
        format!("{count} grid points with nonzero NR absorption, max rel deviation {:.3}%", 100.0 * worst),
    )
}

/// 6. Algebraic identities of the assembled tensors.
fn c6_identities() -> Outcome {
    let mut r = rng(6);
    let mut cases = Vec::new();
    for i in 0..4000 {
        let region = [Region::I, Region::II, Region::III][i % 3];
        let p = sample_in(&mut r, region, 4.0);
        let ms = if i % 20 == 0 {
            MediumState::thermal(r.gen_range(0.01..1.0), r.gen_range(-2.0..3.0)).unwrap()
        } else {
            MediumState::zero_t(r.gen_range(1.0..3.0)).unwrap()
        };
        cases.push((p, ms));
    }
    let opts = ScalarOptions::default();
    let worst = Execution::default().map(&cases, |(p, ms)| {
        let s = match evaluate(p, ms, &opts) {
            Ok(s) => s,
            Err(relresp::Error::OnSubregionBoundary { .. }) => return [0.0; 4],
            Err(e) => panic!("{e} at a = {:?}, b = {:?}, t = {}, xi = {}", p.a(), p.b(), ms.t(), ms.xi()),
        };
        let t = assemble(&s, p).unwrap();
        let (c2, b2) = (p.c2(), p.b() * p.b());
        let k = 1.0 + 1.5 * c2 / b2;
        let a_err = (s.a_star - s.d_star - k * s.b_star).norm()
            / (s.a_star.norm() + s.d_star.norm() + k.abs() * s.b_star.norm()).max(f64::MIN_POSITIVE);
        let prime = (t.eps_prime + t.nu_prime).norm() / t.eps_prime.norm().max(f64::MIN_POSITIVE);
        let tau = (t.tau - t.sigma).norm();
        let eps_direct = 1.0 + s.c_star - (c2 / b2) * s.b_star;
        let nu_direct = 1.0 + 2.0 * s.c_star + 2.0 * s.d_star + (c2 / b2) * s.b_star;
        let terms = 1.0
            + (2.0 + (p.a() * p.a() + b2) / c2.abs()) * s.c_star.norm()
            + 2.0 * s.a_star.norm()
            + (2.0 + p.a() * p.a() / b2 + (c2 / b2).abs()) * s.b_star.norm()
            + 2.0 * s.d_star.norm();
        let dual = ((t.eps + t.eps_prime - eps_direct).norm())
            .max((t.nu + t.nu_prime - nu_direct).norm())
            / terms;
        [a_err, prime, tau, dual]
    });
    let mut m = [0.0f64; 4];
    for w in &worst {
        for k in 0..4 {
            m[k] = m[k].max(w[k]);
        }
    }
    outcome(
        m[0] <= 8.0 * f64::EPSILON && m[1] <= 4.0 * f64::EPSILON && m[2] == 0.0 && m[3] <= 1e-12,
        format!(
            "4000 points: A identity {:.1e}, ε′+ν′ {:.1e}, τ−σ {:.1e}, dual path {:.1e}",
            m[0], m[1], m[2], m[3]
        ),
    )
}

/// 7. Vacuum scalar limits and the η-regularised oracle.
fn c7_vacuum() -> Outcome {
    let ms = MediumState::zero_t(1.0).unwrap();
    let light_cone = [-1.5e-9, 1.5e-9, -1e-8, 1e-8]
        .iter()
        .map(|&c2| c_star(c2, &ms).unwrap().value.norm())
        .fold(0.0f64, f64::max);
    let mut r = rng(7);
    let mut im_nonzero = 0;
    for _ in 0..50 {
        let c2 = r.gen_range(-20.0..0.999);
        if let Ok(v) = c_star(c2, &ms) {
            if v.value.im != 0.0 {
                im_nonzero += 1;
            }
        }
    }
    let limit = c_star_threshold_limit(&ms).unwrap();
    let direct = -ms.e2() / (12.0 * PI * PI) * (1.0 / 3.0 - 3.0);
    let target = 2.0 * e2() / (9.0 * PI * PI);
    let lim_err = (limit - target).abs().max((direct - target).abs());
    let mut eta_err: f64 = 0.0;
    for c2 in [-300.0, -30.0, -2.0, -0.3, -0.01, 0.05, 0.4, 0.9, 0.999, 1.001, 1.1, 1.7, 4.0, 25.0, 300.0] {
        let v = c_star(c2, &ms).unwrap().value;
        let (ore, oim) = vacuum_eta_oracle(c2, ALPHA, 1e-14);
        eta_err = eta_err.max((v.re - ore).abs().max((v.im - oim).abs()) / v.norm());
    }
    outcome(
        light_cone <= 1e-10 && im_nonzero == 0 && lim_err <= 1e-8 && eta_err <= 1e-8,
        format!(
            "|C*| near light cone {light_cone:.1e}; Im≠0 at {im_nonzero}/50 subthreshold points; \
             threshold limit err {lim_err:.1e}; η-oracle rel err {eta_err:.1e}"
        ),
    )
}

fn plasma_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// 8. Long-wavelength degeneracy of the charge and current plasmons.
fn c8_plasmon() -> Outcome {
    let ms = MediumState::zero_t(1.2).unwrap();
    let opts = ScalarOptions::default();
    let b_grid = [1e-3, 1.5e-3, 2e-3, 3e-3, 5e-3];
    let a_grid = plasma_grid(0.006, 0.05, 441);
    let exec = Execution::default();
    let long = dispersion(DispersionMode::Longitudinal, &b_grid, &a_grid, &ms, &opts, exec).unwrap();
    let trans = dispersion(DispersionMode::Transverse, &b_grid, &a_grid, &ms, &opts, exec).unwrap();
    let (Some(ae), Some(am)) = (long.plasma, trans.plasma) else {
        return outcome(false, "no plasma root found".into());
    };
    let split = (am - ae).abs() / ae;

    let root = long.samples[0].plasma_root().unwrap();
    let fit_grid = plasma_grid(1.1 * root, 3.0 * root, 60);
    let chi: Vec<(f64, f64)> = fit_grid
        .iter()
        .map(|&a| {
            let (_, t) = relresp::response_at(a, 1e-3, &ms, &opts).unwrap();
            (a, 1.0 - t.eps_l.re)
        })
        .collect();
    // least squares for χ ≈ Ω²/a²
    let num: f64 = chi.iter().map(|&(a, c)| c / (a * a)).sum();
    let den: f64 = chi.iter().map(|&(a, _)| 1.0 / a.powi(4)).sum();
    let omega2 = num / den;
    let resid = chi
        .iter()
        .map(|&(a, c)| ((c - omega2 / (a * a)) / (omega2 / (a * a))).abs())
        .fold(0.0f64, f64::max);
    outcome(
        split < 5e-3 && resid < 1e-2,
        format!(
            "extrapolated a_e = {ae:.9}, a_m = {am:.9}, split {:.4}%; Drude fit Ω = {:.7}, max rel residual {:.3}%",
            100.0 * split,
            omega2.sqrt(),
            100.0 * resid
        ),
    )
}

/// 9. Simultaneously negative responses just below the plasma root.
fn c9_metamaterial() -> Outcome {
    let ms = MediumState::zero_t(1.2).unwrap();
    let opts = ScalarOptions::default();
    let b = 1e-3;
    let a_grid = plasma_grid(0.006, 0.05, 441);
    let sample = relresp::dispersion_at(DispersionMode::Longitudinal, b, &a_grid, &ms, &opts);
    let Some(root) = sample.plasma_root() else {
        return outcome(false, "no plasma root at b = 1e-3".into());
    };
    let scan_grid = plasma_grid(0.5 * root, 1.5 * root, 400);
    let cells = metamaterial_scan(&scan_grid, &[b], &ms, &opts, Execution::default()).unwrap();
    let marked: Vec<f64> = cells.iter().filter(|c| c.marked).map(|c| c.a).collect();
    let below = marked.iter().filter(|&&a| a < root).count();
    let above = marked.iter().filter(|&&a| a > root).count();
    let contiguous = cells
        .windows(2)
        .filter(|w| w[0].marked != w[1].marked)
        .count()
        <= 2;
    let lo = marked.first().copied().unwrap_or(f64::NAN);
    let hi = marked.last().copied().unwrap_or(f64::NAN);
    outcome(
        below > 0 && above == 0 && contiguous,
        format!("plasma root {root:.7}; marked band [{lo:.7}, {hi:.7}] ({below} cells), {above} marked cells above the root"),
    )
}

/// 10. Non-negative absorption of the longitudinal permittivity.
fn c10_passivity() -> Outcome {
    let mut r = rng(10);
    let mut cases = Vec::new();
    while cases.len() < 10_000 {
        let a = r.gen_range(1e-3..4.0);
        let b = r.gen_range(1e-3..4.0);
        let Ok(p) = derive_point(a, b) else { continue };
        if classify_region(&p).is_err() {
            continue;
        }
        let ms = if cases.len() % 25 == 0 {
            MediumState::thermal(r.gen_range(0.01..1.0), r.gen_range(-3.0..3.0)).unwrap()
        } else {
            MediumState::zero_t(r.gen_range(1.0..3.0)).unwrap()
        };
        cases.push((p, ms));
    }
    let im_eps = |branch: AbsorptionBranch| {
        let opts = ScalarOptions {
            branch,
            ..ScalarOptions::default()
        };
        Execution::default().map(&cases, move |(p, ms)| match evaluate(p, ms, &opts) {
            Ok(s) => Some(assemble(&s, p).unwrap().eps_l.im),
            Err(_) => None,
        })
    };
    let retarded = im_eps(AbsorptionBranch::Retarded);
    let skipped = retarded.iter().filter(|v| v.is_none()).count();
    let min = retarded.iter().flatten().fold(f64::INFINITY, |m, &v| m.min(v));
    let violations = retarded.iter().flatten().filter(|&&v| v < -1e-12).count();
    let printed = im_eps(AbsorptionBranch::AsPrinted)
        .iter()
        .flatten()
        .filter(|&&v| v < -1e-12)
        .count();
    outcome(
        violations == 0 && skipped == 0,
        format!(
            "10000 points ({skipped} skipped), min Im ε_L = {min:.2e}, {violations} violations; \
             as-printed convention (informational): {printed} violations"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("zero-T closed forms vs step quadrature", c1_zero_t_oracle, Some(Duration::from_secs(30))),
        ("rational integrals vs adaptive quadrature", c2_rational_integrals, Some(Duration::from_secs(10))),
        ("T -> 0 consistency", c3_zero_t_limit, Some(Duration::from_secs(60))),
        ("region II transparency", c4_region_two, None),
        ("Lindhard limit", c5_lindhard, Some(Duration::from_secs(30))),
        ("algebraic identities", c6_identities, None),
        ("vacuum scalar", c7_vacuum, None),
        ("plasmon degeneracy", c8_plasmon, Some(Duration::from_secs(60))),
        ("metamaterial band", c9_metamaterial, None),
        ("passivity", c10_passivity, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && budget.map_or(true, |b| elapsed <= b);
        if !pass {
            failed += 1;
        }
        let limit = budget.map_or(String::new(), |b| format!(" / {} s budget", b.as_secs()));
        println!(
            "criterion {:>2} {} {name}: {} [{:.2} s{limit}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
