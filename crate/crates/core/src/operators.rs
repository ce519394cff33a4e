//! Spectral operators on the sphere and the Jacobian transport term.

use crate::error::Result;
use crate::harmonics::{default_transform, GridField, SpectralField, C64};

/// Δ: c_j^m ↦ −j(j+1) c_j^m.
pub fn laplacian(c: &SpectralField) -> SpectralField {
    c.map_degrees(|j, _, v| v * -((j * (j + 1)) as f64))
}

/// Inverse of −Δ on zero-mean fields.
pub fn green(c: &SpectralField) -> Result<SpectralField> {
    c.require_zero_mean()?;
    Ok(c.map_degrees(|j, _, v| {
        if j == 0 {
            C64::new(0.0, 0.0)
        } else {
            v / (j * (j + 1)) as f64
        }
    }))
}

/// Keeps degrees ≤ j, or > j when `complement` is set.
pub fn project_band(c: &SpectralField, j: usize, complement: bool) -> SpectralField {
    c.map_degrees(|jj, _, v| {
        if (jj <= j) != complement {
            v
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// ψ = ω sin θ − 𝒢ζ.
pub fn stream_function(zeta: &SpectralField, omega: f64) -> Result<SpectralField> {
    let g = green(zeta)?;
    let rot = SpectralField::sin_theta(zeta.l(), omega);
    Ok(&rot - &g)
}

/// Velocity components (u_φ, u_θ) = (−∂θψ, ∂φψ / cos θ) on the default grid.
pub fn velocity(zeta: &SpectralField, omega: f64) -> Result<(GridField, GridField)> {
    let psi = stream_function(zeta, omega)?;
    let t = default_transform(psi.l());
    let u_phi = t.synthesize_dtheta(&psi)?.map(|v| -v);
    let mut u_theta = t.synthesize_dphi(&psi)?;
    divide_by_cos(&mut u_theta);
    Ok((u_phi, u_theta))
}

fn divide_by_cos(f: &mut GridField) {
    let grid = f.grid.clone();
    for (k, row) in f.values.chunks_exact_mut(grid.n_lon).enumerate() {
        let inv = 1.0 / grid.cos_theta(k);
        row.iter_mut().for_each(|v| *v *= inv);
    }
}

/// −J∇ψ·∇ζ = −(∂φψ ∂θζ − ∂θψ ∂φζ)/cos θ, evaluated on the default grid of
/// degree max(L_ψ, L_ζ) and analyzed back to that degree with c_0^0 = 0.
pub fn transport_tendency(zeta: &SpectralField, psi: &SpectralField) -> Result<SpectralField> {
    let l = zeta.l().max(psi.l());
    let t = default_transform(l);
    let psi_t = t.synthesize_dtheta(psi)?;
    let mut psi_p = t.synthesize_dphi(psi)?;
    let zeta_t = t.synthesize_dtheta(zeta)?;
    let mut zeta_p = t.synthesize_dphi(zeta)?;
    divide_by_cos(&mut psi_p);
    divide_by_cos(&mut zeta_p);
    let mut jac = psi_p;
    for (((out, &zt), &pt), &zp) in jac
        .values
        .iter_mut()
        .zip(&zeta_t.values)
        .zip(&psi_t.values)
        .zip(&zeta_p.values)
    {
        *out = pt * zp - *out * zt;
    }
    Ok(t.analyze(&jac)?.zero_mean())
}

/// ∂ₜζ for the absolute-vorticity equation with rotation rate ω.
pub fn advection_tendency(zeta: &SpectralField, omega: f64) -> Result<SpectralField> {
    let psi = stream_function(zeta, omega)?;
    transport_tendency(zeta, &psi)
}

/// ‖ℙ_j^⊥f‖²/((j+1)(j+2)) − ∫ ℙ_j^⊥f 𝒢ℙ_j^⊥f dσ.
pub fn poincare_gap(f: &SpectralField, j: usize) -> Result<f64> {
    f.require_zero_mean()?;
    let mut gap = 0.0;
    let bound = 1.0 / ((j + 1) * (j + 2)) as f64;
    for jj in (j + 1)..=f.l() {
        gap += (bound - 1.0 / (jj * (jj + 1)) as f64) * f.degree_energy(jj);
    }
    Ok(gap)
}

/// ∫ f 𝒢f dσ = Σ |c_j^m|²/(j(j+1)).
pub fn green_energy(f: &SpectralField) -> f64 {
    (1..=f.l())
        .map(|j| f.degree_energy(j) / (j * (j + 1)) as f64)
        .sum()
}
