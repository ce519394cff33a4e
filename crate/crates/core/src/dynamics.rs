//! Fixed-step RK4 integration of the vorticity equation (coupled stream) or of
//! passive transport by a prescribed stream, with conservation diagnostics.

use std::io::Write;

use crate::error::{Error, Result};
use crate::functionals::Functional;
use crate::harmonics::{SpectralField, C64};
use crate::invariants::moments_numeric;
use crate::operators::{advection_tendency, green_energy, transport_tendency};

#[derive(Debug, Clone, PartialEq)]
pub enum StreamMode {
    /// ψ = ω sin θ − 𝒢ζ.
    Coupled,
    /// ψ = χ, fixed in time.
    Prescribed(SpectralField),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Filter {
    Off,
    /// c_j^m ← c_j^m exp(−s (j/L)^q) after every step.
    Exponential { strength: f64, order: i32 },
}

impl Filter {
    pub fn exponential_default() -> Self {
        Filter::Exponential { strength: 36.0 * 10f64.ln(), order: 16 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub l: usize,
    pub omega: f64,
    pub dt: f64,
    pub t_end: f64,
    pub stream: StreamMode,
    pub filter: Filter,
    pub diag_every: usize,
}

impl SolverConfig {
    pub fn coupled(l: usize, omega: f64, dt: f64, t_end: f64) -> Self {
        Self {
            l,
            omega,
            dt,
            t_end,
            stream: StreamMode::Coupled,
            filter: Filter::Off,
            diag_every: 100,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end >= 0.0) {
            return Err(Error::InvalidArgument(format!("t_end must be >= 0, got {}", self.t_end)));
        }
        if self.diag_every == 0 {
            return Err(Error::InvalidArgument("diag_every must be >= 1".into()));
        }
        Ok(())
    }

    /// Step sizes covering [0, t_end]; the last one absorbs any remainder.
    fn steps(&self) -> Vec<f64> {
        let n = (self.t_end / self.dt - 1e-9).ceil().max(0.0) as usize;
        let mut steps = vec![self.dt; n];
        if let Some(last) = steps.last_mut() {
            *last = self.t_end - self.dt * (n - 1) as f64;
        }
        steps
    }
}

fn tendency(zeta: &SpectralField, cfg: &SolverConfig) -> Result<SpectralField> {
    match &cfg.stream {
        StreamMode::Coupled => advection_tendency(zeta, cfg.omega),
        StreamMode::Prescribed(chi) => transport_tendency(zeta, &chi.with_degree(zeta.l())),
    }
}

fn axpy(y: &SpectralField, a: f64, x: &SpectralField) -> SpectralField {
    let mut out = y.clone();
    for (o, v) in out.coeffs_mut().iter_mut().zip(x.coeffs()) {
        *o += v * a;
    }
    out
}

/// One classical RK4 step of size `dt`. `step` only labels errors.
pub fn step_rk4(zeta: &SpectralField, cfg: &SolverConfig, dt: f64, step: usize) -> Result<SpectralField> {
    if zeta.l() != cfg.l {
        return Err(Error::DegreeMismatch(format!(
            "state degree {} differs from solver degree {}",
            zeta.l(),
            cfg.l
        )));
    }
    zeta.require_zero_mean()?;
    let k1 = tendency(zeta, cfg)?;
    let k2 = tendency(&axpy(zeta, 0.5 * dt, &k1), cfg)?;
    let k3 = tendency(&axpy(zeta, 0.5 * dt, &k2), cfg)?;
    let k4 = tendency(&axpy(zeta, dt, &k3), cfg)?;
    let mut next = zeta.clone();
    for (i, v) in next.coeffs_mut().iter_mut().enumerate() {
        let inc = k1.coeffs()[i] + (k2.coeffs()[i] + k3.coeffs()[i]) * 2.0 + k4.coeffs()[i];
        *v += inc * (dt / 6.0);
    }
    if let Filter::Exponential { strength, order } = cfg.filter {
        let l = cfg.l as f64;
        next = next.map_degrees(|j, _, v| v * (-strength * (j as f64 / l).powi(order)).exp());
    }
    if !next.is_finite() {
        return Err(Error::NonFinite { step });
    }
    Ok(next.zero_mean())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub energy_proxy: f64,
    /// I₂…I₇.
    pub moments: [f64; 6],
    /// e^{−imωt} c_1^m(t) for m = −1, 0, 1 (coupled mode; raw values otherwise).
    pub c1: [C64; 3],
    pub functional_values: Vec<f64>,
}

pub fn diagnostics(
    zeta: &SpectralField,
    t: f64,
    cfg: &SolverConfig,
    functionals: &[Functional],
) -> Result<DiagnosticsRecord> {
    let m = moments_numeric(zeta, 7);
    let omega = match cfg.stream {
        StreamMode::Coupled => cfg.omega,
        StreamMode::Prescribed(_) => 0.0,
    };
    let c1 = [-1i64, 0, 1].map(|mm| zeta.get(1, mm) * C64::from_polar(1.0, -(mm as f64) * omega * t));
    let functional_values = functionals
        .iter()
        .map(|f| f.eval(zeta))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiagnosticsRecord {
        t,
        energy_proxy: green_energy(zeta),
        moments: [m[0], m[1], m[2], m[3], m[4], m[5]],
        c1,
        functional_values,
    })
}

/// Integrates to t_end, recording diagnostics at t = 0, every `diag_every`
/// steps, and at the final time.
pub fn run(
    zeta0: &SpectralField,
    cfg: &SolverConfig,
    functionals: &[Functional],
) -> Result<(SpectralField, Vec<DiagnosticsRecord>)> {
    run_with(zeta0, cfg, |z, t| diagnostics(z, t, cfg, functionals))
}

/// Like [`run`] but with a caller-supplied observer in place of the standard
/// diagnostics.
pub fn run_with<T>(
    zeta0: &SpectralField,
    cfg: &SolverConfig,
    mut observe: impl FnMut(&SpectralField, f64) -> Result<T>,
) -> Result<(SpectralField, Vec<T>)> {
    cfg.validate()?;
    let mut zeta = zeta0.clone();
    let mut t = 0.0;
    let mut out = vec![observe(&zeta, t)?];
    let steps = cfg.steps();
    let n = steps.len();
    for (i, dt) in steps.into_iter().enumerate() {
        zeta = step_rk4(&zeta, cfg, dt, i)?;
        t = if i + 1 == n { cfg.t_end } else { (i + 1) as f64 * cfg.dt };
        if (i + 1) % cfg.diag_every == 0 || i + 1 == n {
            out.push(observe(&zeta, t)?);
        }
    }
    Ok((zeta, out))
}

pub fn csv_header(functionals: &[Functional]) -> String {
    let mut h = String::from("t,energy_proxy,I2,I3,I4,I5,I6,I7,c1m_re,c1m_im,c10,c1p_re,c1p_im");
    for f in functionals {
        h.push(',');
        h.push_str(&f.to_string());
    }
    h
}

pub fn csv_row(r: &DiagnosticsRecord) -> String {
    let mut vals = vec![r.t, r.energy_proxy];
    vals.extend(r.moments);
    vals.extend([r.c1[0].re, r.c1[0].im, r.c1[1].re, r.c1[2].re, r.c1[2].im]);
    vals.extend(&r.functional_values);
    vals.iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(",")
}

pub fn write_csv(
    w: &mut impl Write,
    records: &[DiagnosticsRecord],
    functionals: &[Functional],
) -> std::io::Result<()> {
    writeln!(w, "{}", csv_header(functionals))?;
    for r in records {
        writeln!(w, "{}", csv_row(r))?;
    }
    Ok(())
}
