//! Gauss–Legendre × equiangular-longitude quadrature grid on the unit sphere.
//!
//! Latitude θ ∈ (−π/2, π/2) is parametrized by μ = sin θ; the area element is
//! dσ = cos θ dφ dθ = dφ dμ. Longitudes are φ_i = 2πi/n_lon.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_TOL: f64 = 1e-15;

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1], nodes
/// strictly increasing.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidGrid("Gauss-Legendre rule needs n >= 1".into()));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    // Roots are symmetric; solve for the upper half and mirror.
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the (i+1)-th largest root.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= NEWTON_TOL {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok((nodes, weights))
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Quadrature grid with truncation degree `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub l: usize,
    pub n_lat: usize,
    pub n_lon: usize,
    /// μ_k = sin θ_k, strictly increasing.
    pub mu_nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GridSpec {
    /// Grid with the default quadratic-nonlinearity margin:
    /// n_lat = 2(L+1), n_lon = 4(L+1).
    pub fn with_default_margin(l: usize) -> Result<Self> {
        let (n_lat, n_lon) = default_sizes(l);
        build_grid(l, n_lat, n_lon)
    }

    /// Smallest grid on which the transform pair is exact for degree `l`.
    pub fn minimal(l: usize) -> Result<Self> {
        build_grid(l, l + 1, 2 * l + 1)
    }

    pub fn len(&self) -> usize {
        self.n_lat * self.n_lon
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn theta(&self, k: usize) -> f64 {
        self.mu_nodes[k].asin()
    }

    pub fn cos_theta(&self, k: usize) -> f64 {
        let mu = self.mu_nodes[k];
        ((1.0 - mu) * (1.0 + mu)).sqrt()
    }

    pub fn phi(&self, i: usize) -> f64 {
        2.0 * PI * i as f64 / self.n_lon as f64
    }

    /// Σ_k Σ_i w_k (2π/n_lon) f_{k,i}, latitude-major, rows summed first.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let dphi = 2.0 * PI / self.n_lon as f64;
        let mut total = 0.0;
        for (k, row) in values.chunks_exact(self.n_lon).enumerate() {
            let row_sum: f64 = row.iter().sum();
            total += self.weights[k] * row_sum;
        }
        total * dphi
    }
}

pub fn default_sizes(l: usize) -> (usize, usize) {
    (2 * (l + 1), 4 * (l + 1))
}

pub fn build_grid(l: usize, n_lat: usize, n_lon: usize) -> Result<GridSpec> {
    if n_lat < l + 1 {
        return Err(Error::InvalidGrid(format!(
            "n_lat = {n_lat} violates n_lat >= L+1 = {}",
            l + 1
        )));
    }
    if n_lon < 2 * l + 1 {
        return Err(Error::InvalidGrid(format!(
            "n_lon = {n_lon} violates n_lon >= 2L+1 = {}",
            2 * l + 1
        )));
    }
    let (mu_nodes, weights) = gauss_legendre(n_lat)?;
    Ok(GridSpec {
        l,
        n_lat,
        n_lon,
        mu_nodes,
        weights,
    })
}
