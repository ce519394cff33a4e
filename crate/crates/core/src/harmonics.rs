//! Spherical harmonics Y_j^m(φ, θ) = N_j^m P_j^m(sin θ) e^{imφ} with the
//! Condon–Shortley factor (−1)^m carried by N_j^m, and the transform pair
//! between grid values and the coefficients c_j^m = ∫ f conj(Y_j^m) dσ.
//!
//! Only m ≥ 0 is stored; negative orders follow from the reality condition
//! c_j^{−m} = (−1)^m conj(c_j^m).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{build_grid, GridSpec};
use crate::invariants::E2Coeffs;

pub type C64 = Complex64;

/// Offset of (j, m), m ≥ 0, in the triangular coefficient layout.
#[inline]
pub fn tri_index(j: usize, m: usize) -> usize {
    j * (j + 1) / 2 + m
}

#[inline]
pub fn n_coeffs(l: usize) -> usize {
    (l + 1) * (l + 2) / 2
}

/// Spectral coefficients of a real scalar field, truncated at degree `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    l: usize,
    coeffs: Vec<C64>,
}

impl SpectralField {
    pub fn zeros(l: usize) -> Self {
        Self {
            l,
            coeffs: vec![C64::new(0.0, 0.0); n_coeffs(l)],
        }
    }

    /// Field with a single stored coefficient c_j^m (m ≥ 0). For m > 0 the
    /// field also carries the conjugate partner c_j^{−m}.
    pub fn single(l: usize, j: usize, m: usize, value: C64) -> Self {
        let mut f = Self::zeros(l);
        f.set(j, m, value);
        f
    }

    /// Coefficients of sin θ = √(4π/3) Y_1^0, scaled.
    pub fn sin_theta(l: usize, scale: f64) -> Self {
        let mut f = Self::zeros(l.max(1));
        f.set(1, 0, C64::new(scale * (4.0 * PI / 3.0).sqrt(), 0.0));
        f
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    /// Stored coefficient c_j^m, m ≥ 0.
    #[inline]
    pub fn c(&self, j: usize, m: usize) -> C64 {
        self.coeffs[tri_index(j, m)]
    }

    /// Coefficient for any order −j ≤ m ≤ j, reconstructing negative m.
    pub fn get(&self, j: usize, m: i64) -> C64 {
        if j > self.l || m.unsigned_abs() as usize > j {
            return C64::new(0.0, 0.0);
        }
        if m >= 0 {
            self.c(j, m as usize)
        } else {
            let mm = (-m) as usize;
            let sign = if mm.is_multiple_of(2) { 1.0 } else { -1.0 };
            self.c(j, mm).conj() * sign
        }
    }

    /// Sets c_j^m (m ≥ 0). The m = 0 coefficient of a real field is real, so
    /// its imaginary part is dropped.
    pub fn set(&mut self, j: usize, m: usize, value: C64) {
        assert!(m <= j && j <= self.l, "coefficient ({j},{m}) outside degree {}", self.l);
        let v = if m == 0 { C64::new(value.re, 0.0) } else { value };
        self.coeffs[tri_index(j, m)] = v;
    }

    pub fn mean_coeff(&self) -> f64 {
        self.coeffs[0].re
    }

    /// Whether c_0^0 vanishes up to `tol` relative to the field norm.
    pub fn is_zero_mean(&self, tol: f64) -> bool {
        self.coeffs[0].re.abs() <= tol * self.norm().max(1.0)
    }

    pub fn require_zero_mean(&self) -> Result<()> {
        if self.is_zero_mean(1e-12) {
            Ok(())
        } else {
            Err(Error::NonZeroMean(self.coeffs[0].re))
        }
    }

    /// Copy with c_0^0 = 0 exactly.
    pub fn zero_mean(mut self) -> Self {
        self.coeffs[0] = C64::new(0.0, 0.0);
        self
    }

    /// Copy truncated or zero-padded to degree `l`.
    pub fn with_degree(&self, l: usize) -> Self {
        let mut out = Self::zeros(l);
        let n = n_coeffs(l.min(self.l));
        out.coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        out
    }

    /// Σ_m |c_j^m|² over −j ≤ m ≤ j: the squared L² norm of the degree-j part.
    pub fn degree_energy(&self, j: usize) -> f64 {
        if j > self.l {
            return 0.0;
        }
        let mut s = self.c(j, 0).norm_sqr();
        for m in 1..=j {
            s += 2.0 * self.c(j, m).norm_sqr();
        }
        s
    }

    /// Squared L² norm on the sphere (Parseval).
    pub fn norm_sq(&self) -> f64 {
        (0..=self.l).map(|j| self.degree_energy(j)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// L² inner product ∫ f g dσ of two real fields.
    pub fn inner(&self, other: &Self) -> f64 {
        let l = self.l.min(other.l);
        let mut s = 0.0;
        for j in 0..=l {
            s += (self.c(j, 0) * other.c(j, 0).conj()).re;
            for m in 1..=j {
                s += 2.0 * (self.c(j, m) * other.c(j, m).conj()).re;
            }
        }
        s
    }

    /// Highest degree with energy above `tol` (relative to the total).
    pub fn effective_degree(&self, tol: f64) -> usize {
        let total = self.norm_sq();
        if total == 0.0 {
            return 0;
        }
        (0..=self.l)
            .rev()
            .find(|&j| self.degree_energy(j) > tol * total)
            .unwrap_or(0)
    }

    /// Copy keeping only degree `j`.
    pub fn degree_part(&self, j: usize) -> Self {
        let mut out = Self::zeros(self.l);
        if j <= self.l {
            for m in 0..=j {
                out.coeffs[tri_index(j, m)] = self.c(j, m);
            }
        }
        out
    }

    pub fn map_degrees(&self, mut f: impl FnMut(usize, usize, C64) -> C64) -> Self {
        let mut out = self.clone();
        for j in 0..=self.l {
            for m in 0..=j {
                let k = tri_index(j, m);
                out.coeffs[k] = f(j, m, self.coeffs[k]);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let l = self.l.max(other.l);
        let (a, b) = (self.with_degree(l), other.with_degree(l));
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Text form: `L <int>` then one `j m re im` line per stored coefficient.
    pub fn to_text(&self) -> String {
        let mut s = format!("L {}\n", self.l);
        for j in 0..=self.l {
            for m in 0..=j {
                let c = self.c(j, m);
                let _ = writeln!(s, "{j} {m} {:.16e} {:.16e}", c.re, c.im);
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty spectral file".into()))?;
        let l: usize = header
            .strip_prefix("L ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
        let mut field = Self::zeros(l);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("bad coefficient line {line:?}")));
            }
            let parse_u = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index in {line:?}")))
            };
            let parse_f = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number in {line:?}")))
            };
            let (j, m) = (parse_u(parts[0])?, parse_u(parts[1])?);
            if m > j || j > l {
                return Err(Error::Parse(format!("index ({j},{m}) out of range for L={l}")));
            }
            field.coeffs[tri_index(j, m)] = C64::new(parse_f(parts[2])?, parse_f(parts[3])?);
        }
        Ok(field)
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.with_degree(self.l.max(rhs.l));
        out += rhs;
        out
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        let mut out = self.with_degree(self.l.max(rhs.l));
        out -= rhs;
        out
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        assert!(rhs.l <= self.l, "degree mismatch in +=");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&SpectralField> for SpectralField {
    fn sub_assign(&mut self, rhs: &SpectralField) {
        assert!(rhs.l <= self.l, "degree mismatch in -=");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, s: f64) -> SpectralField {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self * -1.0
    }
}

/// Real values on a quadrature grid, latitude-major (`values[k * n_lon + i]`).
#[derive(Debug, Clone)]
pub struct GridField {
    pub values: Vec<f64>,
    pub grid: Arc<GridSpec>,
}

impl GridField {
    pub fn zeros(grid: Arc<GridSpec>) -> Self {
        Self {
            values: vec![0.0; grid.len()],
            grid,
        }
    }

    /// Samples `f(φ, θ)` at every node.
    pub fn from_fn(grid: Arc<GridSpec>, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for k in 0..grid.n_lat {
            let theta = grid.theta(k);
            for i in 0..grid.n_lon {
                values.push(f(grid.phi(i), theta));
            }
        }
        Self { values, grid }
    }

    pub fn integrate(&self) -> f64 {
        self.grid.integrate(&self.values)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            grid: self.grid.clone(),
        }
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.values.len(), other.values.len(), "grid mismatch");
        Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            grid: self.grid.clone(),
        }
    }

    #[inline]
    pub fn at(&self, k: usize, i: usize) -> f64 {
        self.values[k * self.grid.n_lon + i]
    }
}

/// N_j^m P_j^m(μ), including the (−1)^m factor. Errors when m > j or |μ| > 1.
pub fn assoc_legendre_normalized(j: usize, m: usize, mu: f64) -> Result<f64> {
    if m > j {
        return Err(Error::InvalidArgument(format!("order m={m} exceeds degree j={j}")));
    }
    if !(-1.0..=1.0).contains(&mu) {
        return Err(Error::InvalidArgument(format!("mu={mu} outside [-1, 1]")));
    }
    Ok(legendre_table(j, mu)[tri_index(j, m)])
}

/// All normalized N_j^m P_j^m(μ) for 0 ≤ m ≤ j ≤ lmax in triangular layout.
/// Seeded from the normalized diagonal so no factorials appear.
pub fn legendre_table(lmax: usize, mu: f64) -> Vec<f64> {
    let mut p = vec![0.0; n_coeffs(lmax)];
    legendre_table_into(lmax, mu, &mut p);
    p
}

fn legendre_table_into(lmax: usize, mu: f64, p: &mut [f64]) {
    let cos = ((1.0 - mu) * (1.0 + mu)).max(0.0).sqrt();
    let mut diag = 1.0 / (4.0 * PI).sqrt();
    for m in 0..=lmax {
        if m > 0 {
            let mf = m as f64;
            diag *= -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * cos;
        }
        p[tri_index(m, m)] = diag;
        if m < lmax {
            p[tri_index(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * mu * diag;
        }
        for j in (m + 2)..=lmax {
            let (jf, mf) = (j as f64, m as f64);
            let a = ((4.0 * jf * jf - 1.0) / (jf * jf - mf * mf)).sqrt();
            let b = (((jf - 1.0).powi(2) - mf * mf) / (4.0 * (jf - 1.0).powi(2) - 1.0)).sqrt();
            p[tri_index(j, m)] = a * (mu * p[tri_index(j - 1, m)] - b * p[tri_index(j - 2, m)]);
        }
    }
}

/// d/dθ of the normalized functions at μ = sin θ (|μ| < 1), from
/// (1−μ²) dP̄_j^m/dμ = −jμ P̄_j^m + √((2j+1)(j²−m²)/(2j−1)) P̄_{j−1}^m.
fn legendre_dtheta_table(lmax: usize, mu: f64, p: &[f64]) -> Vec<f64> {
    let cos = ((1.0 - mu) * (1.0 + mu)).sqrt();
    let mut d = vec![0.0; n_coeffs(lmax)];
    for j in 0..=lmax {
        for m in 0..=j {
            let (jf, mf) = (j as f64, m as f64);
            let mut num = -jf * mu * p[tri_index(j, m)];
            if j > m {
                let s = ((2.0 * jf + 1.0) * (jf * jf - mf * mf) / (2.0 * jf - 1.0)).sqrt();
                num += s * p[tri_index(j - 1, m)];
            }
            d[tri_index(j, m)] = num / cos;
        }
    }
    d
}

/// Transform engine for one grid: Legendre tables at the Gauss nodes plus
/// longitude FFT plans.
pub struct SphericalTransform {
    grid: Arc<GridSpec>,
    lmax: usize,
    plm: Vec<f64>,
    dplm: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SphericalTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SphericalTransform")
            .field("lmax", &self.lmax)
            .field("n_lat", &self.grid.n_lat)
            .field("n_lon", &self.grid.n_lon)
            .finish()
    }
}

type TransformKey = (usize, usize, usize);
static TRANSFORMS: Lazy<Mutex<HashMap<TransformKey, Arc<SphericalTransform>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Shared transform for a grid of the given shape, built once per process.
pub fn transform_for(l: usize, n_lat: usize, n_lon: usize) -> Result<Arc<SphericalTransform>> {
    let key = (l, n_lat, n_lon);
    if let Some(t) = TRANSFORMS.lock().expect("transform cache poisoned").get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(SphericalTransform::new(build_grid(l, n_lat, n_lon)?));
    TRANSFORMS
        .lock()
        .expect("transform cache poisoned")
        .insert(key, t.clone());
    Ok(t)
}

/// Shared transform on the default dealiasing grid for degree `l`.
pub fn default_transform(l: usize) -> Arc<SphericalTransform> {
    let (n_lat, n_lon) = crate::grid::default_sizes(l);
    transform_for(l, n_lat, n_lon).expect("default grid is always valid")
}

/// Shared transform on the smallest exact grid for degree `l`.
pub fn minimal_transform(l: usize) -> Arc<SphericalTransform> {
    transform_for(l, l + 1, 2 * l + 1).expect("minimal grid is always valid")
}

impl SphericalTransform {
    pub fn new(grid: GridSpec) -> Self {
        let lmax = grid.l;
        let nc = n_coeffs(lmax);
        let mut plm = Vec::with_capacity(grid.n_lat * nc);
        let mut dplm = Vec::with_capacity(grid.n_lat * nc);
        for &mu in &grid.mu_nodes {
            let p = legendre_table(lmax, mu);
            dplm.extend(legendre_dtheta_table(lmax, mu, &p));
            plm.extend(p);
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(grid.n_lon);
        let inv = planner.plan_fft_inverse(grid.n_lon);
        Self {
            grid: Arc::new(grid),
            lmax,
            plm,
            dplm,
            fwd,
            inv,
        }
    }

    pub fn grid(&self) -> &Arc<GridSpec> {
        &self.grid
    }

    pub fn lmax(&self) -> usize {
        self.lmax
    }

    fn row<'a>(&self, table: &'a [f64], k: usize) -> &'a [f64] {
        let nc = n_coeffs(self.lmax);
        &table[k * nc..(k + 1) * nc]
    }

    /// Coefficients up to degree `l` (≤ grid degree) of a grid field.
    pub fn analyze_to(&self, f: &GridField, l: usize) -> Result<SpectralField> {
        if l > self.lmax {
            return Err(Error::InvalidGrid(format!(
                "analysis to degree {l} needs n_lat >= {} and n_lon >= {}; grid has degree {}",
                l + 1,
                2 * l + 1,
                self.lmax
            )));
        }
        if f.values.len() != self.grid.len() {
            return Err(Error::InvalidGrid("field does not match transform grid".into()));
        }
        let n_lon = self.grid.n_lon;
        let scale = 2.0 * PI / n_lon as f64;
        let mut out = SpectralField::zeros(l);
        let mut buf = vec![C64::new(0.0, 0.0); n_lon];
        for k in 0..self.grid.n_lat {
            for (b, &v) in buf.iter_mut().zip(&f.values[k * n_lon..(k + 1) * n_lon]) {
                *b = C64::new(v, 0.0);
            }
            self.fwd.process(&mut buf);
            let w = self.grid.weights[k] * scale;
            let p = self.row(&self.plm, k);
            for m in 0..=l {
                let g = buf[m] * w;
                for j in m..=l {
                    out.coeffs[tri_index(j, m)] += g * p[tri_index(j, m)];
                }
            }
        }
        for j in 0..=l {
            out.coeffs[tri_index(j, 0)].im = 0.0;
        }
        Ok(out)
    }

    pub fn analyze(&self, f: &GridField) -> Result<SpectralField> {
        self.analyze_to(f, self.lmax)
    }

    fn synth_with(&self, c: &SpectralField, table: &[f64], dphi: bool) -> Result<GridField> {
        if c.l > self.lmax {
            return Err(Error::DegreeMismatch(format!(
                "field degree {} exceeds grid degree {}",
                c.l, self.lmax
            )));
        }
        let n_lon = self.grid.n_lon;
        let mut out = GridField::zeros(self.grid.clone());
        let mut buf = vec![C64::new(0.0, 0.0); n_lon];
        for k in 0..self.grid.n_lat {
            let p = self.row(table, k);
            buf.iter_mut().for_each(|b| *b = C64::new(0.0, 0.0));
            for m in 0..=c.l {
                let mut s = C64::new(0.0, 0.0);
                for j in m..=c.l {
                    s += c.coeffs[tri_index(j, m)] * p[tri_index(j, m)];
                }
                if dphi {
                    s *= C64::new(0.0, m as f64);
                }
                if m == 0 {
                    buf[0] = C64::new(s.re, 0.0);
                } else {
                    buf[m] = s;
                    buf[n_lon - m] = s.conj();
                }
            }
            self.inv.process(&mut buf);
            for (o, b) in out.values[k * n_lon..(k + 1) * n_lon].iter_mut().zip(&buf) {
                *o = b.re;
            }
        }
        Ok(out)
    }

    /// Σ_j Σ_m c_j^m Y_j^m on the grid.
    pub fn synthesize(&self, c: &SpectralField) -> Result<GridField> {
        self.synth_with(c, &self.plm, false)
    }

    /// ∂f/∂θ on the grid (θ = latitude).
    pub fn synthesize_dtheta(&self, c: &SpectralField) -> Result<GridField> {
        self.synth_with(c, &self.dplm, false)
    }

    /// ∂f/∂φ on the grid.
    pub fn synthesize_dphi(&self, c: &SpectralField) -> Result<GridField> {
        self.synth_with(c, &self.plm, true)
    }
}

/// Forward transform to degree `l` on the field's own grid.
pub fn analyze(f: &GridField, l: usize) -> Result<SpectralField> {
    let g = &f.grid;
    transform_for(g.l, g.n_lat, g.n_lon)?.analyze_to(f, l)
}

/// Inverse transform onto `spec`.
pub fn synthesize(c: &SpectralField, spec: &GridSpec) -> Result<GridField> {
    transform_for(spec.l, spec.n_lat, spec.n_lon)?.synthesize(c)
}

/// Point evaluation of the harmonic sum at (φ, θ), poles included.
pub fn eval_point(c: &SpectralField, phi: f64, theta: f64) -> f64 {
    let p = legendre_table(c.l, theta.sin().clamp(-1.0, 1.0));
    eval_with_table(c, &p, phi)
}

fn eval_with_table(c: &SpectralField, p: &[f64], phi: f64) -> f64 {
    let mut total = 0.0;
    for m in 0..=c.l {
        let mut s = C64::new(0.0, 0.0);
        for j in m..=c.l {
            s += c.coeffs[tri_index(j, m)] * p[tri_index(j, m)];
        }
        if m == 0 {
            total += s.re;
        } else {
            total += 2.0 * (s * C64::from_polar(1.0, m as f64 * phi)).re;
        }
    }
    total
}

/// Evaluates `c` at many points, sharing Legendre tables across equal θ.
pub fn eval_points(c: &SpectralField, points: &[(f64, f64)]) -> Vec<f64> {
    let mut table = vec![0.0; n_coeffs(c.l)];
    points
        .iter()
        .map(|&(phi, theta)| {
            legendre_table_into(c.l, theta.sin().clamp(-1.0, 1.0), &mut table);
            eval_with_table(c, &table, phi)
        })
        .collect()
}

// Basis {3sin²θ−1, sin2θ cosφ, sin2θ sinφ, cos²θ cos2φ, cos²θ sin2φ} in terms of Y_2^m:
//   3sin²θ−1      = √(16π/5) Y_2^0
//   sin2θ e^{±iφ} = ∓2√(8π/15) Y_2^{±1}
//   cos²θ e^{±2iφ} = √(32π/15) Y_2^{±2}
fn e2_scales() -> (f64, f64) {
    ((16.0 * PI / 5.0).sqrt(), (8.0 * PI / 15.0).sqrt())
}

/// Degree-2 field with the given real-basis coordinates, truncated at `l ≥ 2`.
pub fn e2_to_spectral(y: &E2Coeffs, l: usize) -> SpectralField {
    let (s0, s) = e2_scales();
    let mut f = SpectralField::zeros(l.max(2));
    f.set(2, 0, C64::new(y.a * s0, 0.0));
    f.set(2, 1, C64::new(-y.b * s, y.c * s));
    f.set(2, 2, C64::new(y.d * s, -y.e * s));
    f
}

/// Inverse of [`e2_to_spectral`]; rejects fields with energy outside degree 2
/// above 1e−10 of the total.
pub fn spectral_to_e2(c: &SpectralField) -> Result<E2Coeffs> {
    let total = c.norm_sq();
    let outside = total - c.degree_energy(2);
    if total > 0.0 && outside > 1e-10 * total {
        return Err(Error::InvalidArgument(format!(
            "field is not in E_2: relative energy {:.3e} outside degree 2",
            outside / total
        )));
    }
    if c.l < 2 {
        return Ok(E2Coeffs::default());
    }
    let (s0, s) = e2_scales();
    let c20 = c.c(2, 0);
    let c21 = c.c(2, 1);
    let c22 = c.c(2, 2);
    Ok(E2Coeffs {
        a: c20.re / s0,
        b: -c21.re / s,
        c: c21.im / s,
        d: c22.re / s,
        e: -c22.im / s,
    })
}
