//! L^p distances and distances to the polar-rotation and SO(3) orbits of a
//! target field.

use std::f64::consts::PI;

use argmin::core::{CostFunction, Executor};
use argmin::solver::goldensectionsearch::GoldenSectionSearch;
use argmin::solver::neldermead::NelderMead;
use nalgebra::Matrix3;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harmonics::{spectral_to_e2, transform_for, SpectralField, C64};
use crate::invariants::eigenframe;
use crate::operators::project_band;
use crate::rotations::{euler_matrix, matrix_to_euler, reflect_longitude, rotate_by_matrix, rotate_polar};

fn check_p(p: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(format!("L^p distance needs p > 1, got {p}")));
    }
    Ok(())
}

fn pad_pair(f: &SpectralField, g: &SpectralField) -> (SpectralField, SpectralField) {
    let l = f.l().max(g.l());
    (f.with_degree(l), g.with_degree(l))
}

/// (∫|h|^p dσ)^{1/p} on a grid with n_lat = 4(L+1), n_lon = 8(L+1).
fn lp_norm_quadrature(h: &SpectralField, p: f64) -> f64 {
    let l = h.l();
    let t = transform_for(l, 4 * (l + 1), 8 * (l + 1)).expect("margin grid is valid");
    let g = t.synthesize(h).expect("degree fits margin grid");
    g.map(|v| v.abs().powf(p)).integrate().powf(1.0 / p)
}

/// ‖f − g‖_{L^p}. For p = 2 the quadrature value is cross-checked against the
/// coefficient norm.
pub fn lp_distance(f: &SpectralField, g: &SpectralField, p: f64) -> Result<f64> {
    check_p(p)?;
    let (f, g) = pad_pair(f, g);
    let diff = &f - &g;
    let d = lp_norm_quadrature(&diff, p);
    if p == 2.0 {
        let spectral = diff.norm();
        if (d - spectral).abs() > 1e-8 * spectral.max(1.0) {
            return Err(Error::CrossCheck(format!(
                "quadrature L2 distance {d:e} vs spectral {spectral:e}"
            )));
        }
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarOrbitDistance {
    pub distance: f64,
    /// The minimizing element is rotate_polar(target, β*), composed with a
    /// longitude reflection first when `reflected` is set.
    pub beta_star: f64,
    pub reflected: bool,
}

/// ⟨f, rotate_polar(t, β)⟩ = S₀ + 2Re Σ_{m≥1} S_m e^{imβ}, with derivatives.
struct TrigInner {
    s: Vec<C64>,
}

impl TrigInner {
    fn new(f: &SpectralField, t: &SpectralField) -> Self {
        let l = f.l();
        let mut s = vec![C64::new(0.0, 0.0); l + 1];
        for j in 0..=l {
            for (m, sm) in s.iter_mut().enumerate().take(j + 1) {
                *sm += f.c(j, m).conj() * t.c(j, m);
            }
        }
        Self { s }
    }

    fn eval(&self, beta: f64) -> (f64, f64, f64) {
        let (mut h, mut d1, mut d2) = (self.s[0].re, 0.0, 0.0);
        for (m, sm) in self.s.iter().enumerate().skip(1) {
            let mf = m as f64;
            let z = sm * C64::from_polar(1.0, mf * beta);
            h += 2.0 * z.re;
            d1 -= 2.0 * mf * z.im;
            d2 -= 2.0 * mf * mf * z.re;
        }
        (h, d1, d2)
    }

    /// Maximizer over β: best of `samples` uniform angles, then Newton.
    fn maximize(&self, samples: usize) -> (f64, f64) {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for k in 0..samples {
            let b = 2.0 * PI * k as f64 / samples as f64;
            let h = self.eval(b).0;
            if h > best.0 {
                best = (h, b);
            }
        }
        let (mut h, mut beta) = best;
        for _ in 0..20 {
            let (_, d1, d2) = self.eval(beta);
            if d2 >= 0.0 {
                break;
            }
            let cand = beta - d1 / d2;
            let hc = self.eval(cand).0;
            if hc < h {
                break;
            }
            let done = (cand - beta).abs() < 1e-15;
            h = hc;
            beta = cand;
            if done {
                break;
            }
        }
        (h, beta)
    }
}

struct PolarCost<'a> {
    f: &'a SpectralField,
    t: &'a SpectralField,
    p: f64,
}

impl CostFunction for PolarCost<'_> {
    type Param = f64;
    type Output = f64;

    fn cost(&self, beta: &f64) -> std::result::Result<f64, argmin::core::Error> {
        Ok(lp_norm_quadrature(&(self.f - &rotate_polar(self.t, *beta)), self.p))
    }
}

fn polar_min(f: &SpectralField, t: &SpectralField, p: f64) -> Result<(f64, f64)> {
    let samples = 4 * f.l() + 4;
    if p == 2.0 {
        let (_, beta) = TrigInner::new(f, t).maximize(samples);
        let d = (f - &rotate_polar(t, beta)).norm();
        return Ok((d, beta.rem_euclid(2.0 * PI)));
    }
    let cost = PolarCost { f, t, p };
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..samples {
        let b = 2.0 * PI * k as f64 / samples as f64;
        let d = cost.cost(&b).map_err(|e| Error::Optimizer(e.to_string()))?;
        if d < best.0 {
            best = (d, b);
        }
    }
    let h = 2.0 * PI / samples as f64;
    let solver = GoldenSectionSearch::new(best.1 - h, best.1 + h)
        .and_then(|s| s.with_tolerance(1e-10))
        .map_err(|e| Error::Optimizer(e.to_string()))?;
    let res = Executor::new(cost, solver)
        .configure(|s| s.param(best.1).max_iters(200))
        .run()
        .map_err(|e| Error::Optimizer(e.to_string()))?;
    let state = res.state();
    let (d, b) = match (state.best_param, state.best_cost) {
        (Some(b), c) if c < best.0 => (c, b),
        _ => best,
    };
    Ok((d, b.rem_euclid(2.0 * PI)))
}

/// min_β ‖rotate_polar(target, β) − f‖_{L^p}, optionally also over
/// reflected targets.
pub fn dist_polar_orbit(
    f: &SpectralField,
    target: &SpectralField,
    p: f64,
    include_reflection: bool,
) -> Result<PolarOrbitDistance> {
    check_p(p)?;
    let (f, t) = pad_pair(f, target);
    let (d, beta) = polar_min(&f, &t, p)?;
    let mut out = PolarOrbitDistance { distance: d, beta_star: beta, reflected: false };
    if include_reflection {
        let (dr, br) = polar_min(&f, &reflect_longitude(&t), p)?;
        if dr < out.distance {
            out = PolarOrbitDistance { distance: dr, beta_star: br, reflected: true };
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So3OrbitDistance {
    /// ‖rotate_so3(target, euler_star) − f‖, an upper bound of the orbit distance.
    pub distance: f64,
    pub euler_star: (f64, f64, f64),
    /// Set when a degree-2 quadratic form had (nearly) repeated eigenvalues,
    /// so the frame alignment was supplemented by a grid search.
    pub degenerate_frame: bool,
}

struct So3Cost<'a> {
    f: &'a SpectralField,
    t: &'a SpectralField,
    p: f64,
}

impl So3Cost<'_> {
    fn at_matrix(&self, r: &Matrix3<f64>) -> f64 {
        let rt = rotate_by_matrix(self.t, r);
        let (a, b) = pad_pair(self.f, &rt);
        let diff = &a - &b;
        if self.p == 2.0 {
            diff.norm()
        } else {
            lp_norm_quadrature(&diff, self.p)
        }
    }
}

impl CostFunction for So3Cost<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, e: &Vec<f64>) -> std::result::Result<f64, argmin::core::Error> {
        Ok(self.at_matrix(&euler_matrix((e[0], e[1], e[2]))))
    }
}

fn degenerate(vals: &[f64; 3]) -> bool {
    let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    (vals[1] - vals[0]).abs() <= 1e-8 * scale || (vals[2] - vals[1]).abs() <= 1e-8 * scale
}

/// Upper bound of min over R ∈ SO(3) of ‖R·target − f‖_{L^p}: candidates from
/// aligning the eigenframes of the degree-2 quadratic forms (plus a 16³ Euler
/// grid when a frame is degenerate), refined by Nelder–Mead.
pub fn dist_so3_orbit(f: &SpectralField, target: &SpectralField, p: f64) -> Result<So3OrbitDistance> {
    check_p(p)?;
    let t = target.with_degree(target.effective_degree(0.0).max(1));
    let f = f.with_degree(f.l().max(t.l()));
    let cost = So3Cost { f: &f, t: &t, p };

    let mut candidates: Vec<(f64, f64, f64)> = vec![(0.0, 0.0, 0.0)];
    let yt = spectral_to_e2(&project_band(&t.with_degree(t.l().max(2)), 2, false).degree_part(2))?;
    let yf = spectral_to_e2(&project_band(&f.with_degree(f.l().max(2)), 2, false).degree_part(2))?;
    let (vt, et) = eigenframe(&yt);
    let (vf, ef) = eigenframe(&yf);
    let is_degenerate = degenerate(&vt) || degenerate(&vf);
    for signs in [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]] {
        let s = Matrix3::from_diagonal(&nalgebra::Vector3::from(signs));
        let mut r = ef * s * et.transpose();
        if r.determinant() < 0.0 {
            r = ef * s * Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -1.0)) * et.transpose();
        }
        candidates.push(matrix_to_euler(&r));
    }
    if is_degenerate {
        let n = 16;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    candidates.push((
                        2.0 * PI * i as f64 / n as f64,
                        PI * (j as f64 + 0.5) / n as f64,
                        2.0 * PI * k as f64 / n as f64,
                    ));
                }
            }
        }
    }

    let mut scored: Vec<(f64, (f64, f64, f64))> = candidates
        .into_par_iter()
        .map(|e| (cost.at_matrix(&euler_matrix(e)), e))
        .collect();
    scored.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1 .0.total_cmp(&b.1 .0))
            .then(a.1 .1.total_cmp(&b.1 .1))
            .then(a.1 .2.total_cmp(&b.1 .2))
    });

    let mut best = scored[0];
    for &(_, e) in scored.iter().take(3) {
        let (d, e2) = nelder_mead(&cost, e)?;
        if d < best.0 {
            best = (d, e2);
        }
    }
    let distance = cost.at_matrix(&euler_matrix(best.1));
    Ok(So3OrbitDistance { distance, euler_star: best.1, degenerate_frame: is_degenerate })
}

fn nelder_mead(cost: &So3Cost<'_>, e: (f64, f64, f64)) -> Result<(f64, (f64, f64, f64))> {
    let x0 = vec![e.0, e.1, e.2];
    let step = 0.05;
    let mut simplex = vec![x0.clone()];
    for k in 0..3 {
        let mut v = x0.clone();
        v[k] += step;
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex)
        .with_sd_tolerance(1e-14)
        .map_err(|e| Error::Optimizer(e.to_string()))?;
    let res = Executor::new(So3Cost { f: cost.f, t: cost.t, p: cost.p }, solver)
        .configure(|s| s.max_iters(400))
        .run()
        .map_err(|e| Error::Optimizer(e.to_string()))?;
    let state = res.state();
    let p = state.best_param.clone().unwrap_or(x0);
    Ok((state.best_cost, (p[0], p[1], p[2])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::e2_to_spectral;
    use crate::invariants::E2Coeffs;
    use crate::rotations::rotate_so3;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_field(l: usize, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = SpectralField::zeros(l);
        for j in 1..=l {
            for m in 0..=j {
                let s = 1.0 / j as f64;
                f.set(j, m, C64::new(rng.random_range(-s..s), rng.random_range(-s..s)));
            }
        }
        f
    }

    fn y2() -> SpectralField {
        e2_to_spectral(&E2Coeffs { a: 0.5, b: 0.3, c: 0.1, d: 0.2, e: 0.1 }, 2)
    }

    #[test]
    fn lp_distance_examples() {
        let f = random_field(5, 1);
        assert_eq!(lp_distance(&f, &f, 3.0).unwrap(), 0.0);
        let d = SpectralField::single(5, 2, 0, C64::new(1.0, 0.0));
        assert!((lp_distance(&(&f + &d), &f, 2.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(lp_distance(&f, &f, 1.0).is_err());
    }

    #[test]
    fn lp_triangle_inequality() {
        for seed in 0..10 {
            let (a, b, c) = (random_field(4, seed), random_field(4, seed + 100), random_field(4, seed + 200));
            for p in [1.5, 2.0, 3.0, 6.0] {
                let ab = lp_distance(&a, &b, p).unwrap();
                let bc = lp_distance(&b, &c, p).unwrap();
                let ac = lp_distance(&a, &c, p).unwrap();
                assert!(ac <= ab + bc + 1e-10);
            }
        }
    }

    #[test]
    fn polar_orbit_member() {
        let t = random_field(6, 2);
        let f = rotate_polar(&t, 0.7);
        for p in [2.0, 3.0] {
            let r = dist_polar_orbit(&f, &t, p, false).unwrap();
            assert!(r.distance < 1e-10, "p={p} d={}", r.distance);
            assert!((r.beta_star - 0.7).abs() < 1e-6, "{}", r.beta_star);
        }
    }

    #[test]
    fn polar_orbit_of_zonal_target_is_a_point() {
        let mut t = SpectralField::zeros(5);
        t.set(2, 0, C64::new(0.4, 0.0));
        t.set(3, 0, C64::new(-0.1, 0.0));
        let f = random_field(5, 3);
        for p in [2.0, 4.0] {
            let r = dist_polar_orbit(&f, &t, p, true).unwrap();
            let direct = lp_distance(&f, &t, p).unwrap();
            assert!((r.distance - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn polar_minimum_matches_brute_force() {
        let f = random_field(6, 4);
        let t = random_field(6, 5);
        let r = dist_polar_orbit(&f, &t, 2.0, false).unwrap();
        let n = 100_000;
        let brute = (0..n)
            .map(|k| (&f - &rotate_polar(&t, 2.0 * PI * k as f64 / n as f64)).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(r.distance <= brute + 1e-12);
        assert!(brute - r.distance < 1e-8);
    }

    #[test]
    fn reflection_finds_mirrored_target() {
        let t = random_field(5, 6);
        let f = rotate_polar(&reflect_longitude(&t), 1.2);
        let plain = dist_polar_orbit(&f, &t, 2.0, false).unwrap();
        let with = dist_polar_orbit(&f, &t, 2.0, true).unwrap();
        assert!(with.distance < 1e-8);
        assert!(with.reflected);
        assert!(plain.distance > 1e-3);
    }

    #[test]
    fn so3_orbit_member_is_found() {
        let t = y2();
        let f = rotate_so3(&t, (0.4, 1.1, -2.0));
        let r = dist_so3_orbit(&f, &t, 2.0).unwrap();
        assert!(!r.degenerate_frame);
        assert!(r.distance < 1e-8, "{}", r.distance);

        let t2 = &y2().with_degree(4) + &random_field(4, 7).map_degrees(|j, _, v| if j > 2 { v * 0.1 } else { C64::new(0.0, 0.0) });
        let f2 = rotate_so3(&t2, (2.4, 0.6, 0.3));
        let r2 = dist_so3_orbit(&f2, &t2, 2.0).unwrap();
        assert!(r2.distance < 1e-8, "{}", r2.distance);
    }

    #[test]
    fn identity_near_optimal_for_small_degree3_perturbation() {
        let t = y2().with_degree(3);
        let mut bump = SpectralField::zeros(3);
        bump.set(3, 1, C64::new(0.5f64.sqrt(), 0.0));
        let f = &t + &(&bump * 1e-3);
        let r = dist_so3_orbit(&f, &t, 2.0).unwrap();
        assert!(r.distance <= 1e-3 + 1e-8);
        // Coarse brute force over Euler angles agrees.
        let n = 32;
        let mut brute = f64::INFINITY;
        for i in 0..n {
            for j in 0..=n {
                for k in 0..n {
                    let e = (2.0 * PI * i as f64 / n as f64, PI * j as f64 / n as f64, 2.0 * PI * k as f64 / n as f64);
                    brute = brute.min((&f - &rotate_so3(&t, e)).norm());
                }
            }
        }
        assert!(r.distance <= brute + 1e-12);
    }

    #[test]
    fn degenerate_frame_falls_back_to_grid() {
        let t = SpectralField::single(2, 2, 0, C64::new(1.0, 0.0));
        let f = rotate_so3(&t, (0.0, 0.9, 0.0));
        let r = dist_so3_orbit(&f, &t, 2.0).unwrap();
        assert!(r.degenerate_frame);
        assert!(r.distance < 1e-8);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        #[test]
        fn orbit_distance_ordering(seed in 0u64..1000) {
            let t = &y2().with_degree(3) + &(&random_field(3, seed) * 0.2);
            let f = random_field(3, seed + 17);
            let direct = lp_distance(&f, &t, 2.0).unwrap();
            let polar = dist_polar_orbit(&f, &t, 2.0, false).unwrap().distance;
            let so3 = dist_so3_orbit(&f, &t, 2.0).unwrap().distance;
            prop_assert!(polar <= direct + 1e-12);
            prop_assert!(so3 <= polar + 1e-9);
        }

        #[test]
        fn orbit_distances_are_group_invariant(seed in 0u64..1000, a in -3.0f64..3.0, b in 0.2f64..2.9, g in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let t = y2();
            let f = &rotate_so3(&t, (0.3, 0.8, 1.0)).with_degree(3) + &(&random_field(3, seed) * 0.05);
            let d0 = dist_so3_orbit(&f, &t, 2.0).unwrap().distance;
            let d1 = dist_so3_orbit(&rotate_so3(&f, (a, b, g)), &t, 2.0).unwrap().distance;
            prop_assert!((d0 - d1).abs() < 1e-7, "{} {}", d0, d1);
            let p0 = dist_polar_orbit(&f, &t, 2.0, false).unwrap().distance;
            let p1 = dist_polar_orbit(&rotate_polar(&f, beta), &t, 2.0, false).unwrap().distance;
            prop_assert!((p0 - p1).abs() < 1e-10);
        }
    }
}
