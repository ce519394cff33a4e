//! Group actions on fields. Rotations act actively: (R·f)(x) = f(R⁻¹x), with
//! R = R_z(α) R_y(β) R_z(γ). A polar rotation by β maps f to f(φ+β, θ), which
//! is the Euler triple (−β, 0, 0).

use nalgebra::{Matrix3, Vector3};

use crate::harmonics::{eval_points, minimal_transform, GridField, SpectralField, C64};

/// f(φ, θ) ↦ f(φ+β, θ): c_j^m ↦ e^{imβ} c_j^m.
pub fn rotate_polar(c: &SpectralField, beta: f64) -> SpectralField {
    c.map_degrees(|_, m, v| {
        if m == 0 {
            v
        } else {
            v * C64::from_polar(1.0, m as f64 * beta)
        }
    })
}

/// f(φ, θ) ↦ f(−φ, θ) through the longitude index flip i ↦ (n − i) mod n.
pub fn reflect_longitude(c: &SpectralField) -> SpectralField {
    let t = minimal_transform(c.l());
    let g = t.synthesize(c).expect("minimal grid matches degree");
    let n = g.grid.n_lon;
    let mut flipped = GridField::zeros(g.grid.clone());
    for k in 0..g.grid.n_lat {
        for i in 0..n {
            flipped.values[k * n + i] = g.values[k * n + (n - i) % n];
        }
    }
    t.analyze(&flipped).expect("minimal grid matches degree")
}

pub fn rot_z(a: f64) -> Matrix3<f64> {
    let (s, c) = a.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

pub fn rot_y(b: f64) -> Matrix3<f64> {
    let (s, c) = b.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

pub fn euler_matrix(euler: (f64, f64, f64)) -> Matrix3<f64> {
    rot_z(euler.0) * rot_y(euler.1) * rot_z(euler.2)
}

/// Z-Y-Z angles of a proper rotation, β ∈ [0, π].
pub fn matrix_to_euler(r: &Matrix3<f64>) -> (f64, f64, f64) {
    let cb = r[(2, 2)].clamp(-1.0, 1.0);
    let beta = cb.acos();
    let sb = beta.sin();
    if sb > 1e-12 {
        let alpha = r[(1, 2)].atan2(r[(0, 2)]);
        let gamma = r[(2, 1)].atan2(-r[(2, 0)]);
        (alpha, beta, gamma)
    } else if cb > 0.0 {
        (r[(1, 0)].atan2(r[(0, 0)]), 0.0, 0.0)
    } else {
        ((-r[(1, 0)]).atan2(-r[(0, 0)]), std::f64::consts::PI, 0.0)
    }
}

pub fn to_cartesian(phi: f64, theta: f64) -> Vector3<f64> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Vector3::new(ct * cp, ct * sp, st)
}

pub fn to_spherical(x: &Vector3<f64>) -> (f64, f64) {
    let z = (x.z / x.norm()).clamp(-1.0, 1.0);
    (x.y.atan2(x.x), z.asin())
}

/// Coefficients of f∘R⁻¹, by sampling f at the preimages of the minimal
/// exact grid and analyzing.
pub fn rotate_so3(c: &SpectralField, euler: (f64, f64, f64)) -> SpectralField {
    rotate_by_matrix(c, &euler_matrix(euler))
}

pub fn rotate_by_matrix(c: &SpectralField, r: &Matrix3<f64>) -> SpectralField {
    let t = minimal_transform(c.l());
    let grid = t.grid().clone();
    let rinv = r.transpose();
    let mut pts = Vec::with_capacity(grid.len());
    for k in 0..grid.n_lat {
        let theta = grid.theta(k);
        for i in 0..grid.n_lon {
            pts.push(to_spherical(&(rinv * to_cartesian(grid.phi(i), theta))));
        }
    }
    let g = GridField {
        values: eval_points(c, &pts),
        grid,
    };
    t.analyze(&g).expect("minimal grid matches degree")
}
