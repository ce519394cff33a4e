//! Conserved and Lyapunov-type functionals, evaluated from coefficients only.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::harmonics::SpectralField;
use crate::invariants::Deg1Coeffs;
use crate::operators::green_energy;

fn sqrt_4pi_3() -> f64 {
    (4.0 * PI / 3.0).sqrt()
}

fn c1(f: &SpectralField, m: i64) -> crate::harmonics::C64 {
    f.get(1, m)
}

/// |c_1^0 + a|² + |c_1^1 + b|² + |c_1^{−1} + c|².
pub fn e_deg1_a(f: &SpectralField, y1: &Deg1Coeffs) -> Result<f64> {
    f.require_zero_mean()?;
    y1.check_reality(1e-12)?;
    Ok((c1(f, 0).re + y1.a).powi(2) + (c1(f, 1) + y1.b).norm_sqr() + (c1(f, -1) + y1.c).norm_sqr())
}

/// a c_1^0 + |c_1^1|².
pub fn e_deg1_b(f: &SpectralField, a: f64) -> Result<f64> {
    f.require_zero_mean()?;
    Ok(a * c1(f, 0).re + c1(f, 1).norm_sqr())
}

/// ½∫f𝒢f − ω∫sinθ f.
pub fn e_arnold1(f: &SpectralField, omega: f64) -> Result<f64> {
    f.require_zero_mean()?;
    Ok(0.5 * green_energy(f) - omega * sqrt_4pi_3() * c1(f, 0).re)
}

fn degree1_energy(f: &SpectralField) -> f64 {
    f.degree_energy(1)
}

/// ½∫f𝒢f − ω∫sinθ f − (1/6)Σ_m|c_1^m(f)|² + (1/3)∫f ℙ₁ζ_ref.
pub fn e_arnold2(f: &SpectralField, omega: f64, zeta_ref: &SpectralField) -> Result<f64> {
    zeta_ref.require_zero_mean()?;
    let base = e_arnold1(f, omega)?;
    let cross = f.degree_part(1).inner(&zeta_ref.degree_part(1));
    Ok(base - degree1_energy(f) / 6.0 + cross / 3.0)
}

/// ½Σ_{j≥2}|c_j^m|²/(j(j+1)) + (β/6)c_1^0 with β = √(4π/3)α.
pub fn e_deg2(f: &SpectralField, alpha: f64) -> Result<f64> {
    f.require_zero_mean()?;
    let high: f64 = (2..=f.l())
        .map(|j| f.degree_energy(j) / (j * (j + 1)) as f64)
        .sum();
    let beta = sqrt_4pi_3() * alpha;
    Ok(0.5 * high + beta / 6.0 * c1(f, 0).re)
}

/// Value of [`e_deg2`] at αsinθ + Y for Y in the degree-2 space: β²/6 + ‖Y‖²/12.
pub fn e_deg2_max(alpha: f64, y_norm_sq: f64) -> f64 {
    let beta = sqrt_4pi_3() * alpha;
    beta * beta / 6.0 + y_norm_sq / 12.0
}

/// Functionals that can be attached to a run by name.
#[derive(Debug, Clone, PartialEq)]
pub enum Functional {
    EDeg2 { alpha: f64 },
    Arnold1 { omega: f64 },
    Arnold2 { omega: f64, reference: SpectralField },
    EDeg1B { a: f64 },
}

impl Functional {
    pub fn eval(&self, f: &SpectralField) -> Result<f64> {
        match self {
            Functional::EDeg2 { alpha } => e_deg2(f, *alpha),
            Functional::Arnold1 { omega } => e_arnold1(f, *omega),
            Functional::Arnold2 { omega, reference } => e_arnold2(f, *omega, reference),
            Functional::EDeg1B { a } => e_deg1_b(f, *a),
        }
    }

    /// Parses `e_deg2[alpha=1]`, `arnold1[omega=0.5]`, `e_deg1_b[a=0.3]`.
    /// `arnold2` needs a reference field and is built directly.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.find('[') {
            Some(i) if s.ends_with(']') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let value = |key: &str| -> Result<f64> {
            let arg = arg.ok_or_else(|| Error::Parse(format!("{name} needs [{key}=...]")))?;
            let (k, v) = arg
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad functional argument {arg:?}")))?;
            if k.trim() != key {
                return Err(Error::Parse(format!("{name} expects {key}, got {k}")));
            }
            v.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {v:?}")))
        };
        match name {
            "e_deg2" => Ok(Functional::EDeg2 { alpha: value("alpha")? }),
            "arnold1" => Ok(Functional::Arnold1 { omega: value("omega")? }),
            "e_deg1_b" => Ok(Functional::EDeg1B { a: value("a")? }),
            _ => Err(Error::Parse(format!("unknown functional {name:?}"))),
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functional::EDeg2 { alpha } => write!(f, "e_deg2[alpha={alpha}]"),
            Functional::Arnold1 { omega } => write!(f, "arnold1[omega={omega}]"),
            Functional::Arnold2 { omega, .. } => write!(f, "arnold2[omega={omega}]"),
            Functional::EDeg1B { a } => write!(f, "e_deg1_b[a={a}]"),
        }
    }
}
