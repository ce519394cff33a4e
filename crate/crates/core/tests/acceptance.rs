//! End-to-end acceptance suite. Runs every criterion, prints one PASS/FAIL
//! line each, and exits nonzero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rhlab::dynamics::{run, SolverConfig};
use rhlab::harmonics::{e2_to_spectral, spectral_to_e2, SpectralField, C64};
use rhlab::invariants::{
    abs_moments_numeric, char_poly, moments_analytic, moments_numeric, polysys_forward, reduced_invariants,
    same_h_orbit_deg2, same_o3_orbit, solve_polysys, verify_abcde_system, Branch, E2Coeffs,
};
use rhlab::lab::{
    exp_orbit_traversal, exp_rearrangement_bound, exp_rh_exactness, exp_stability, perturbation, ExperimentConfig,
    Group, Report,
};
use rhlab::operators::poincare_gap;
use rhlab::rotations::{reflect_longitude, rotate_polar, rotate_so3};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_e2(rng: &mut ChaCha8Rng) -> E2Coeffs {
    E2Coeffs::from_array([(); 5].map(|_| rng.random_range(-1.0..1.0)))
}

fn check_lines(rep: &Report) -> String {
    rep.checks
        .iter()
        .map(|c| format!("{}:{} {}", c.name, if c.passed { "ok" } else { "FAIL" }, c.detail))
        .collect::<Vec<_>>()
        .join("; ")
}

fn rh_exactness() -> Outcome {
    let mut cfg = ExperimentConfig::default();
    cfg.t_end = 5.0;
    let start = Instant::now();
    let rep = exp_rh_exactness(&cfg).expect("rh run");
    let elapsed = start.elapsed();
    let max = rep.rows.iter().map(|r| r[1]).fold(0.0, f64::max);
    outcome(
        max < 1e-6 && elapsed < Duration::from_secs(300),
        format!("max rel L2 error {max:.3e} (< 1e-6), runtime {:.1}s (< 300s)", elapsed.as_secs_f64()),
    )
}

fn conservation() -> Outcome {
    let omega = 0.5;
    let z0 = &perturbation(21, 6, 2026) * 0.1;
    let mut cfg = SolverConfig::coupled(21, omega, 1e-3, 10.0);
    cfg.diag_every = 100;
    let (_, recs) = run(&z0, &cfg, &[]).expect("run");
    let r0 = &recs[0];
    let abs = abs_moments_numeric(&z0, 7);
    let (mut e, mut c1, mut m) = (0.0f64, 0.0f64, 0.0f64);
    for r in &recs {
        e = e.max((r.energy_proxy - r0.energy_proxy).abs() / r0.energy_proxy);
        for k in 0..3 {
            c1 = c1.max((r.c1[k] - r0.c1[k]).norm());
        }
        for k in 0..6 {
            m = m.max((r.moments[k] - r0.moments[k]).abs() / abs[k]);
        }
    }
    outcome(
        e < 1e-6 && c1 < 1e-8 && m < 1e-6,
        format!("energy drift {e:.3e} (< 1e-6), first-mode drift {c1:.3e} (< 1e-8), moment drift {m:.3e} (< 1e-6)"),
    )
}

fn moment_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_moment, mut worst_system) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let alpha = rng.random_range(0.2..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let y = random_e2(&mut rng);
        let f = &SpectralField::sin_theta(2, alpha) + &e2_to_spectral(&y, 2);
        let an = moments_analytic(alpha, &y);
        let nu = moments_numeric(&f, 7);
        let abs = abs_moments_numeric(&f, 7);
        for k in 0..6 {
            worst_moment = worst_moment.max((an.i[k] - nu[k]).abs() / abs[k]);
        }
        worst_system = worst_system.max(verify_abcde_system(alpha, &y).expect("alpha != 0").max_relative());
    }
    outcome(
        worst_moment < 1e-10 && worst_system < 1e-9,
        format!("analytic vs quadrature {worst_moment:.3e} (< 1e-10), identity residual {worst_system:.3e} (< 1e-9)"),
    )
}

fn polynomial_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut generic_ok = 0;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let alpha = rng.random_range(0.3..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let x = reduced_invariants(&random_e2(&mut rng)).to_array();
        let sol = solve_polysys(alpha, &polysys_forward(alpha, &x)).expect("solve");
        if sol.branch == Branch::Generic && sol.solutions.len() == 1 {
            let err = (0..4)
                .map(|k| (sol.solutions[0][k] - x[k]).abs() / x[k].abs().max(1.0))
                .fold(0.0, f64::max);
            worst = worst.max(err);
            if err < 1e-8 {
                generic_ok += 1;
            }
        }
    }
    let mut degenerate_ok = 0;
    for _ in 0..50 {
        let alpha: f64 = rng.random_range(0.5..2.0);
        let a = rng.random_range(-0.45..0.45) * alpha;
        let u = alpha * alpha - 4.0 * a * a;
        let v = a * a + 1.75 * alpha * alpha;
        let w = rng.random_range(-1.0..1.0) * u * v.sqrt();
        let x = [a, u, v, w];
        let sol = solve_polysys(alpha, &polysys_forward(alpha, &x)).expect("solve");
        let count = sol.solutions.len();
        let distinct = count < 2 || sol.solutions[0][0] != sol.solutions[1][0];
        let hit = sol.solutions.iter().any(|s| (s[0] - x[0]).abs() < 1e-8 * x[0].abs().max(1.0));
        if count <= 2 && distinct && hit {
            degenerate_ok += 1;
        }
    }
    outcome(
        generic_ok == 1000 && degenerate_ok == 50,
        format!("generic {generic_ok}/1000 (worst error {worst:.3e}), degenerate {degenerate_ok}/50"),
    )
}

fn orbit_classifiers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut h_ok, mut o_ok, mut poly_ok) = (0, 0, 0);
    for _ in 0..200 {
        let y = random_e2(&mut rng);
        let f = e2_to_spectral(&y, 2);
        let beta = rng.random_range(-PI..PI);
        let mut g = rotate_polar(&f, beta);
        if rng.random_bool(0.5) {
            g = reflect_longitude(&g);
        }
        if same_h_orbit_deg2(&y, &spectral_to_e2(&g).expect("degree 2")) {
            h_ok += 1;
        }
        let e = (rng.random_range(-PI..PI), rng.random_range(0.0..PI), rng.random_range(-PI..PI));
        let yr = spectral_to_e2(&rotate_so3(&f, e)).expect("degree 2");
        if same_o3_orbit(&y, &yr) {
            o_ok += 1;
        }
        // p1 ∝ I₂ and p0 ∝ I₃, so equality of one pair is equality of the other.
        let other = random_e2(&mut rng);
        let tie = |z: &E2Coeffs| {
            let m = moments_analytic(0.0, z);
            let (p1, p0) = char_poly(z);
            (p1 + 15.0 * m.moment(2) / (16.0 * PI)).abs() < 1e-9 * m.moment(2).abs().max(1.0)
                && (p0 + 35.0 * m.moment(3) / (32.0 * PI)).abs() < 1e-9 * m.moment(3).abs().max(1.0)
        };
        let (ma, mb) = (moments_analytic(0.0, &y), moments_analytic(0.0, &yr));
        let moments_equal = (ma.moment(2) - mb.moment(2)).abs() < 1e-9 && (ma.moment(3) - mb.moment(3)).abs() < 1e-9;
        let (pa, pb) = (char_poly(&y), char_poly(&yr));
        let poly_equal = (pa.0 - pb.0).abs() < 1e-9 && (pa.1 - pb.1).abs() < 1e-9;
        let mo = moments_analytic(0.0, &other);
        let po = char_poly(&other);
        let differ_together =
            ((ma.moment(2) - mo.moment(2)).abs() > 1e-9) == ((pa.0 - po.0).abs() > 1e-9 * 15.0 / (16.0 * PI));
        if tie(&y) && tie(&yr) && tie(&other) && moments_equal && poly_equal && differ_together {
            poly_ok += 1;
        }
    }
    outcome(
        h_ok == 200 && o_ok == 200 && poly_ok == 200,
        format!("H-orbit {h_ok}/200, SO(3)-orbit {o_ok}/200, moment/char-poly link {poly_ok}/200"),
    )
}

fn poincare() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut min_gap = f64::INFINITY;
    let mut exact_zero = 0;
    for n in 0..1000 {
        let l = 12;
        let j = rng.random_range(1..l - 1);
        let mut f = SpectralField::zeros(l);
        let top = if n % 2 == 0 { l } else { j + 1 };
        for jj in 1..=top {
            for m in 0..=jj {
                f.set(jj, m, C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            }
        }
        let gap = poincare_gap(&f, j).expect("zero mean");
        min_gap = min_gap.min(gap);
        if top == j + 1 && gap == 0.0 {
            exact_zero += 1;
        }
    }
    outcome(
        min_gap >= -1e-12 && exact_zero == 500,
        format!("min gap {min_gap:.3e} (>= -1e-12), exact zero on {exact_zero}/500 low-band inputs"),
    )
}

fn rearrangement() -> Outcome {
    // Unit-norm default stream; L = 21 under-resolves the filaments it makes
    // by t = 1, so the moment tolerance needs a finer truncation.
    let mut cfg = ExperimentConfig::default();
    cfg.l = 96;
    cfg.t_end = 1.0;
    cfg.diag_every = 50;
    let rep = exp_rearrangement_bound(&cfg).expect("rearrangement run");
    let last = rep.rows.last().map(|r| r[1]).unwrap_or(0.0);
    outcome(
        rep.passed() && last < -1e-4,
        format!("{}; final e_deg2 - M {last:.3e} (< -1e-4)", check_lines(&rep)),
    )
}

fn stability() -> Outcome {
    let cfg = ExperimentConfig::default();
    let polar = exp_stability(&cfg, Group::Polar).expect("polar run");
    let mut zero = cfg.clone();
    zero.alpha = 0.0;
    zero.omega = 0.0;
    let so3 = exp_stability(&zero, Group::So3).expect("so3 run");
    outcome(
        polar.passed() && so3.passed(),
        format!("polar [{}] so3 [{}]", check_lines(&polar), check_lines(&so3)),
    )
}

fn traversal() -> Outcome {
    let mut cfg = ExperimentConfig::default();
    cfg.alpha = 1.0;
    cfg.omega = -1.0;
    cfg.delta = 0.05;
    cfg.target_beta = PI;
    cfg.t_end = 4.0;
    cfg.diag_every = 10;
    let rep = exp_orbit_traversal(&cfg).expect("traversal run");
    outcome(rep.passed(), check_lines(&rep))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 rh-exactness", rh_exactness),
        ("2 conservation", conservation),
        ("3 moment-algebra", moment_algebra),
        ("4 polynomial-oracle", polynomial_oracle),
        ("5 orbit-classifiers", orbit_classifiers),
        ("6 poincare", poincare),
        ("7 rearrangement-bound", rearrangement),
        ("8 stability-trend", stability),
        ("9 orbit-traversal", traversal),
    ];
    let start = Instant::now();
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let o = f();
                    (o, t.elapsed())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| (outcome(false, "panicked".into()), Duration::ZERO)))
            .collect()
    });
    let mut failed = 0;
    for ((name, _), (o, dt)) in criteria.iter().zip(&results) {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {name} ({:.1}s): {}", dt.as_secs_f64(), o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
