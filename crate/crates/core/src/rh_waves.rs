//! Rossby–Haurwitz states αsinθ + Y(φ − ct, θ) with Y a single-degree
//! eigenfunction, and their closed-form evolution.

use crate::error::{Error, Result};
use crate::harmonics::SpectralField;
use crate::rotations::rotate_polar;

const PURITY_TOL: f64 = 1e-12;
pub const STEADY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RhState {
    pub omega: f64,
    pub alpha: f64,
    pub degree_j: usize,
    pub y: SpectralField,
    pub speed_c: f64,
}

/// c = α(1/2 − 1/(j(j+1))) − ω.
pub fn traveling_speed(alpha: f64, omega: f64, j: usize) -> f64 {
    alpha * (0.5 - 1.0 / (j * (j + 1)) as f64) - omega
}

pub fn make_rh(omega: f64, alpha: f64, y: SpectralField) -> Result<RhState> {
    let total = y.norm_sq();
    if total == 0.0 {
        return Err(Error::InvalidArgument("RH state needs a nonzero Y".into()));
    }
    let j = (0..=y.l())
        .max_by(|&p, &q| y.degree_energy(p).total_cmp(&y.degree_energy(q)))
        .unwrap_or(0);
    if j == 0 {
        return Err(Error::InvalidArgument("Y must have zero mean".into()));
    }
    let off = total - y.degree_energy(j);
    if off > PURITY_TOL * total {
        return Err(Error::InvalidArgument(format!(
            "Y spans several degrees (relative mass {:.3e} outside degree {j})",
            off / total
        )));
    }
    let y = y.degree_part(j);
    Ok(RhState {
        omega,
        alpha,
        degree_j: j,
        speed_c: traveling_speed(alpha, omega, j),
        y,
    })
}

impl RhState {
    /// Truncation degree of states produced by [`exact_state`].
    pub fn l(&self) -> usize {
        self.y.l().max(1)
    }

    pub fn initial(&self) -> SpectralField {
        exact_state(self, 0.0)
    }
}

/// αsinθ + Y(φ − ct, θ).
pub fn exact_state(s: &RhState, t: f64) -> SpectralField {
    let l = s.l();
    let moved = rotate_polar(&s.y, -s.speed_c * t).with_degree(l);
    &SpectralField::sin_theta(l, s.alpha) + &moved
}

/// Y zonal or c = 0, both within `tol`.
pub fn is_steady(s: &RhState, tol: f64) -> bool {
    let nonzonal: f64 = (1..=s.degree_j).map(|m| 2.0 * s.y.c(s.degree_j, m).norm_sqr()).sum();
    nonzonal < tol * s.y.norm_sq().max(1.0) || s.speed_c.abs() < tol
}
