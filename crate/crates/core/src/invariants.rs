//! Degree-2 moment algebra: closed-form moments of αsinθ + Y for Y in the
//! degree-2 eigenspace, the six-equation identity system they satisfy, the
//! reduced polynomial system and its elimination solver, and the orbit
//! classifiers built on them.

use std::f64::consts::PI;

use nalgebra::{Matrix3, SymmetricEigen};

use crate::error::{Error, Result};
use crate::harmonics::{transform_for, SpectralField, C64};

/// Coordinates of Y = a(3sin²θ−1) + b sin2θ cosφ + c sin2θ sinφ
/// + d cos²θ cos2φ + e cos²θ sin2φ.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct E2Coeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl E2Coeffs {
    pub fn from_array(v: [f64; 5]) -> Self {
        Self { a: v[0], b: v[1], c: v[2], d: v[3], e: v[4] }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Symmetric traceless A with Y(x) = xᵀAx on the unit sphere.
    pub fn quadratic_form(&self) -> Matrix3<f64> {
        let E2Coeffs { a, b, c, d, e } = *self;
        Matrix3::new(d - a, e, b, e, -d - a, c, b, c, 2.0 * a)
    }

    /// Inverse of [`E2Coeffs::quadratic_form`] for traceless symmetric input.
    pub fn from_quadratic_form(m: &Matrix3<f64>) -> Self {
        let a = m[(2, 2)] / 2.0;
        Self {
            a,
            b: m[(0, 2)],
            c: m[(1, 2)],
            d: (m[(0, 0)] - m[(1, 1)]) / 2.0,
            e: m[(0, 1)],
        }
    }
}

/// Degree-1 part in the complex basis: a = c_1^0, b = c_1^1, c = c_1^{−1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deg1Coeffs {
    pub a: f64,
    pub b: C64,
    pub c: C64,
}

impl Deg1Coeffs {
    pub fn from_field(f: &SpectralField) -> Self {
        Self {
            a: f.get(1, 0).re,
            b: f.get(1, 1),
            c: f.get(1, -1),
        }
    }

    /// Real fields have c = −conj(b).
    pub fn check_reality(&self, tol: f64) -> Result<()> {
        let err = (self.b + self.c.conj()).norm();
        if err > tol * self.b.norm().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "degree-1 coefficients are not real: |b + conj(c)| = {err:.3e}"
            )));
        }
        Ok(())
    }

    pub fn to_field(&self, l: usize) -> SpectralField {
        let mut f = SpectralField::zeros(l.max(1));
        f.set(1, 0, C64::new(self.a, 0.0));
        f.set(1, 1, self.b);
        f
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedInvariants {
    pub a: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl ReducedInvariants {
    pub fn to_array(&self) -> [f64; 4] {
        [self.a, self.u, self.v, self.w]
    }

    /// u ≥ 0, v ≥ 0 and w² ≤ u²v, up to `tol` relative slack.
    pub fn satisfies_bounds(&self, tol: f64) -> bool {
        let scale = (self.u * self.u * self.v).abs().max(1.0);
        self.u >= -tol && self.v >= -tol && self.w * self.w <= self.u * self.u * self.v + tol * scale
    }
}

pub fn reduced_invariants(y: &E2Coeffs) -> ReducedInvariants {
    let E2Coeffs { a, b, c, d, e } = *y;
    ReducedInvariants {
        a,
        u: b * b + c * c,
        v: d * d + e * e,
        w: b * b * d - c * c * d + 2.0 * b * c * e,
    }
}

/// Moments I₂…I₇ of αsinθ + Y with the derived scalars A–F and, for α ≠ 0,
/// the right-hand sides b₁…b₆ of the reduced system.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    pub alpha: f64,
    pub i: [f64; 6],
    /// A, B, C, D, E, F.
    pub derived: [f64; 6],
    pub b: Option<[f64; 6]>,
}

impl MomentSet {
    pub fn from_moments(alpha: f64, i: [f64; 6]) -> Self {
        let derived = [
            15.0 / (4.0 * PI) * i[0],
            35.0 / (16.0 * PI) * i[1],
            105.0 / (4.0 * PI) * i[2],
            231.0 / (32.0 * PI) * i[3],
            3003.0 / (4.0 * PI) * i[4],
            429.0 / (16.0 * PI) * i[5],
        ];
        let b = (alpha != 0.0).then(|| system_rhs(alpha, &derived));
        Self { alpha, i, derived, b }
    }

    pub fn moment(&self, m: usize) -> f64 {
        self.i[m - 2]
    }
}

/// b₁…b₆ from A–F. The fifth identity carries α⁴ on its left side, so b₅ is
/// divided by 48α⁴.
fn system_rhs(alpha: f64, derived: &[f64; 6]) -> [f64; 6] {
    let [a, b, c, d, e, f] = *derived;
    let al2 = alpha * alpha;
    [
        (a - 5.0 * al2) / 4.0,
        b,
        (c - a * a) / (16.0 * al2) + al2 / 4.0,
        (d - a * b) / (2.0 * al2),
        (6.0 * a * d - 6.0 * a * a * b + 3.0 * b * c - 3.0 * f) / (48.0 * al2 * al2),
        (17.0 * a * c + 96.0 * b * b - 12.0 * a * a * a - e) / (16.0 * al2) + 9.0 * al2 * al2,
    ]
}

/// Closed-form I₂…I₇ of αsinθ + Y.
pub fn moments_analytic(alpha: f64, y: &E2Coeffs) -> MomentSet {
    let E2Coeffs { a, b, c, d, e } = *y;
    let i = [
        poly_i2(alpha, a, b, c, d, e),
        poly_i3(alpha, a, b, c, d, e),
        poly_i4(alpha, a, b, c, d, e),
        poly_i5(alpha, a, b, c, d, e),
        poly_i6(alpha, a, b, c, d, e),
        poly_i7(alpha, a, b, c, d, e),
    ];
    MomentSet::from_moments(alpha, i)
}

fn power_integrals(f: &SpectralField, m_max: usize, abs: bool) -> Vec<f64> {
    let l = f.l().max(1);
    let t = transform_for(l, m_max * l + 1, 2 * m_max * l + 2).expect("moment grid is valid");
    let g = t.synthesize(&f.with_degree(l)).expect("degree fits moment grid");
    (2..=m_max)
        .map(|m| {
            g.map(|v| if abs { v.abs().powi(m as i32) } else { v.powi(m as i32) })
                .integrate()
        })
        .collect()
}

/// ∫ f^m dσ for m = 2…m_max on a grid exact for the m_max-th power.
pub fn moments_numeric(f: &SpectralField, m_max: usize) -> Vec<f64> {
    power_integrals(f, m_max, false)
}

/// ∫ |f|^m dσ for m = 2…m_max; the natural scale for relative moment drift.
pub fn abs_moments_numeric(f: &SpectralField, m_max: usize) -> Vec<f64> {
    power_integrals(f, m_max, true)
}

/// Residuals of the six moment identities with a per-equation magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemCheck {
    pub residuals: [f64; 6],
    pub scales: [f64; 6],
}

impl SystemCheck {
    pub fn max_relative(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.scales)
            .map(|(r, s)| r.abs() / s.max(1.0))
            .fold(0.0, f64::max)
    }
}

/// Left side minus right side of each identity, for given (a,u,v,w) and A–F.
pub fn abcde_residuals(alpha: f64, r: &ReducedInvariants, ms: &MomentSet) -> SystemCheck {
    let ReducedInvariants { a, u, v, w } = *r;
    let [ca, cb, cc, cd, ce, cf] = ms.derived;
    let al2 = alpha * alpha;
    let lhs = [
        12.0 * a * a + 5.0 * al2 + 4.0 * u + 4.0 * v,
        4.0 * a.powi(3) + 7.0 * a * al2 + 2.0 * a * u - 4.0 * a * v + 2.0 * w,
        al2 * (36.0 * a * a - al2 + 8.0 * u - 4.0 * v),
        al2 * (36.0 * a.powi(3) - a * al2 + 14.0 * a * u - 4.0 * a * v + 6.0 * w),
        al2 * al2 * (36.0 * a.powi(3) - a * al2 + 10.0 * a * u - 4.0 * a * v + 2.0 * w),
        al2 * (324.0 * al2 * a * a + 288.0 * a * a * v - 144.0 * a * w + 68.0 * al2 * u
            - 44.0 * al2 * v
            + 16.0 * u * u
            - 16.0 * u * v
            - 32.0 * v * v
            - 9.0 * al2 * al2),
    ];
    let rhs = [
        ca,
        cb,
        (cc - ca * ca) / 4.0,
        (cd - ca * cb) / 2.0,
        (6.0 * ca * cd - 6.0 * ca * ca * cb + 3.0 * cb * cc - 3.0 * cf) / 48.0,
        (17.0 * ca * cc + 96.0 * cb * cb - 12.0 * ca.powi(3) - ce) / 16.0,
    ];
    // Cancellation in the right sides is the dominant rounding source, so the
    // scale is the largest product magnitude entering each equation.
    let rhs_scale = [
        ca.abs(),
        cb.abs(),
        cc.abs().max(ca * ca) / 4.0,
        cd.abs().max((ca * cb).abs()) / 2.0,
        [6.0 * ca * cd, 6.0 * ca * ca * cb, 3.0 * cb * cc, 3.0 * cf]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            / 48.0,
        [17.0 * ca * cc, 96.0 * cb * cb, 12.0 * ca.powi(3), ce]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            / 16.0,
    ];
    let mut residuals = [0.0; 6];
    let mut scales = [0.0; 6];
    for k in 0..6 {
        residuals[k] = lhs[k] - rhs[k];
        scales[k] = lhs[k].abs().max(rhs_scale[k]);
    }
    SystemCheck { residuals, scales }
}

pub fn verify_abcde_system(alpha: f64, y: &E2Coeffs) -> Result<SystemCheck> {
    if alpha == 0.0 {
        return Err(Error::InvalidArgument("the moment identities need alpha != 0".into()));
    }
    Ok(abcde_residuals(alpha, &reduced_invariants(y), &moments_analytic(alpha, y)))
}

/// Left sides of the reduced system at x = (x₁,x₂,x₃,x₄), each with the sum of
/// absolute term magnitudes.
pub fn polysys_lhs(alpha: f64, x: &[f64; 4]) -> [(f64, f64); 6] {
    let [x1, x2, x3, x4] = *x;
    let al2 = alpha * alpha;
    let eq = |terms: &[f64]| {
        (
            terms.iter().sum::<f64>(),
            terms.iter().map(|t| t.abs()).sum::<f64>(),
        )
    };
    [
        eq(&[3.0 * x1 * x1, x2, x3]),
        eq(&[4.0 * x1.powi(3), 7.0 * al2 * x1, 2.0 * x1 * x2, -4.0 * x1 * x3, 2.0 * x4]),
        eq(&[9.0 * x1 * x1, 2.0 * x2, -x3]),
        eq(&[36.0 * x1.powi(3), -al2 * x1, 14.0 * x1 * x2, -4.0 * x1 * x3, 6.0 * x4]),
        eq(&[36.0 * x1.powi(3), -al2 * x1, 10.0 * x1 * x2, -4.0 * x1 * x3, 2.0 * x4]),
        eq(&[
            al2 * 324.0 * x1 * x1,
            al2 * 68.0 * x2,
            -al2 * 44.0 * x3,
            288.0 * x1 * x1 * x3,
            -144.0 * x1 * x4,
            16.0 * x2 * x2,
            -16.0 * x2 * x3,
            -32.0 * x3 * x3,
        ]),
    ]
}

/// Right sides generated from a known solution.
pub fn polysys_forward(alpha: f64, x: &[f64; 4]) -> [f64; 6] {
    polysys_lhs(alpha, x).map(|(v, _)| v)
}

/// Largest relative residual of x against all six equations.
pub fn polysys_residual(alpha: f64, b: &[f64; 6], x: &[f64; 4]) -> f64 {
    polysys_lhs(alpha, x)
        .iter()
        .zip(b)
        .map(|(&(v, s), &bi)| (v - bi).abs() / s.max(bi.abs()).max(1.0))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    DegenerateQuadratic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolySolution {
    pub solutions: Vec<[f64; 4]>,
    pub branch: Branch,
    pub report: Option<String>,
}

const POLY_TOL: f64 = 1e-8;

fn back_substitute(b: &[f64; 6], x1: f64) -> [f64; 4] {
    let s13 = (b[0] + b[2]) / 3.0;
    [
        x1,
        -4.0 * x1 * x1 + s13,
        x1 * x1 + (2.0 * b[0] - b[2]) / 3.0,
        4.0 * x1.powi(3) - s13 * x1 + (b[3] - b[4]) / 4.0,
    ]
}

/// Solves the reduced system by elimination. x₁ comes from one of the two
/// linear relations (α² − 4b₃)x₁ = (b₄ − 3b₅)/2 and
/// (7α² − (4/3)(2b₁ − b₃))x₁ = b₂ + (b₅ − b₄)/2; when both are usable the
/// candidate with the smaller residual is kept. When both vanish the system
/// reduces to a quadratic in x₁. Every returned tuple satisfies all six
/// equations to 1e−8 relative.
pub fn solve_polysys(alpha: f64, b: &[f64; 6]) -> Result<PolySolution> {
    if alpha == 0.0 {
        return Err(Error::InvalidArgument("polynomial system needs alpha != 0".into()));
    }
    let al2 = alpha * alpha;
    let coef08 = al2 - 4.0 * b[2];
    let coef11 = 7.0 * al2 - 4.0 / 3.0 * (2.0 * b[0] - b[2]);
    let degenerate08 = coef08.abs() <= 1e-9 * al2.max(b[2].abs()).max(1.0);
    let degenerate11 = coef11.abs() <= 1e-9 * al2.max(b[0].abs()).max(b[2].abs()).max(1.0);

    if !(degenerate08 && degenerate11) {
        let mut candidates = Vec::new();
        if !degenerate08 {
            candidates.push((b[3] - 3.0 * b[4]) / 2.0 / coef08);
        }
        if !degenerate11 {
            candidates.push((b[1] + (b[4] - b[3]) / 2.0) / coef11);
        }
        let best = candidates
            .into_iter()
            .map(|x1| {
                let x = back_substitute(b, x1);
                (polysys_residual(alpha, b, &x), x)
            })
            .min_by(|p, q| p.0.total_cmp(&q.0))
            .expect("at least one linear relation is usable");
        return Ok(if best.0 < POLY_TOL {
            PolySolution { solutions: vec![best.1], branch: Branch::Generic, report: None }
        } else {
            PolySolution {
                solutions: vec![],
                branch: Branch::Generic,
                report: Some(format!("no solution: best residual {:.3e}", best.0)),
            }
        });
    }

    let scale = b.iter().fold(al2, |m, v| m.max(v.abs())).max(1.0);
    let checks = [
        ("b1 = 11 b3", b[0] - 11.0 * b[2]),
        ("b4 = 3 b5", b[3] - 3.0 * b[4]),
        ("b2 = b5", b[1] - b[4]),
    ];
    let broken: Vec<String> = checks
        .iter()
        .filter(|(_, r)| r.abs() > POLY_TOL * scale)
        .map(|(name, r)| format!("{name} violated by {r:.3e}"))
        .collect();
    if !broken.is_empty() {
        return Ok(PolySolution {
            solutions: vec![],
            branch: Branch::DegenerateQuadratic,
            report: Some(format!("inconsistent degenerate data: {}", broken.join("; "))),
        });
    }

    // 2048 b3 x² − 72 b5 x − (1904 b3² + b6) = 0
    let (qa, qb, qc) = (2048.0 * b[2], -72.0 * b[4], -(1904.0 * b[2] * b[2] + b[5]));
    let disc = qb * qb - 4.0 * qa * qc;
    let disc_tol = 1e-12 * (qb * qb).max((4.0 * qa * qc).abs());
    if disc < -disc_tol {
        return Ok(PolySolution {
            solutions: vec![],
            branch: Branch::DegenerateQuadratic,
            report: Some(format!("negative discriminant {disc:.3e}")),
        });
    }
    let sq = disc.max(0.0).sqrt();
    let q = -0.5 * (qb + qb.signum() * sq + if qb == 0.0 { sq } else { 0.0 });
    let mut roots = vec![q / qa];
    if q != 0.0 {
        roots.push(qc / q);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|r, s| (*r - *s).abs() <= 1e-14 * r.abs().max(1.0));

    let x_of = |x1: f64| {
        [
            x1,
            -4.0 * x1 * x1 + 4.0 * b[2],
            x1 * x1 + 7.0 * b[2],
            4.0 * x1.powi(3) - 4.0 * b[2] * x1 + 0.5 * b[4],
        ]
    };
    let mut solutions = Vec::new();
    let mut rejected = Vec::new();
    for x1 in roots {
        let x = x_of(x1);
        let r = polysys_residual(alpha, b, &x);
        if r < POLY_TOL {
            solutions.push(x);
        } else {
            rejected.push(format!("x1={x1:.6e} residual {r:.3e}"));
        }
    }
    let report = (!rejected.is_empty()).then(|| format!("rejected roots: {}", rejected.join("; ")));
    Ok(PolySolution { solutions, branch: Branch::DegenerateQuadratic, report })
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

/// Same orbit under polar rotations: equal c_1^0 and |c_1^1|.
pub fn same_h_orbit_deg1(y: &Deg1Coeffs, yp: &Deg1Coeffs) -> Result<bool> {
    y.check_reality(1e-12)?;
    yp.check_reality(1e-12)?;
    Ok(close(y.a, yp.a, 1e-10) && close(y.b.norm(), yp.b.norm(), 1e-10))
}

/// Same orbit under polar rotations and longitude reflections.
pub fn same_h_orbit_deg2(y: &E2Coeffs, yp: &E2Coeffs) -> bool {
    let r = reduced_invariants(y).to_array();
    let rp = reduced_invariants(yp).to_array();
    r.iter().zip(&rp).all(|(&p, &q)| close(p, q, 1e-9))
}

/// (p₁, p₀) of det(λI − A) = λ³ + p₁λ + p₀ for the quadratic form of y.
pub fn char_poly(y: &E2Coeffs) -> (f64, f64) {
    let E2Coeffs { a, b, c, d, e } = *y;
    let p1 = -(3.0 * a * a + b * b + c * c + d * d + e * e);
    let p0 = -2.0 * a.powi(3) - a * b * b - a * c * c + 2.0 * a * d * d + 2.0 * a * e * e
        - b * b * d
        - 2.0 * b * c * e
        + c * c * d;
    (p1, p0)
}

/// Same orbit under SO(3): equal characteristic polynomials.
pub fn same_o3_orbit(y: &E2Coeffs, yp: &E2Coeffs) -> bool {
    let (p1, p0) = char_poly(y);
    let (q1, q0) = char_poly(yp);
    close(p1, q1, 1e-9) && close(p0, q0, 1e-9)
}

/// Eigenvalues (ascending) and matching eigenvectors of the quadratic form.
pub fn eigenframe(y: &E2Coeffs) -> ([f64; 3], Matrix3<f64>) {
    let eig = SymmetricEigen::new(y.quadratic_form());
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = idx.map(|i| eig.eigenvalues[i]);
    let vecs = Matrix3::from_columns(&idx.map(|i| eig.eigenvectors.column(i).into_owned()));
    (vals, vecs)
}

fn poly_i2(al: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let s =
        12.0 * a.powi(2) + 5.0 * al.powi(2) + 4.0 * b.powi(2) + 4.0 * c.powi(2)
        + 4.0 * d.powi(2) + 4.0 * e.powi(2);
    4.0 * PI / 15.0 * s
}

fn poly_i3(al: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let s =
        4.0 * a.powi(3) + 7.0 * a * al.powi(2) + 2.0 * a * b.powi(2) + 2.0 * a * c.powi(2)
        - 4.0 * a * d.powi(2) - 4.0 * a * e.powi(2) + 2.0 * b.powi(2) * d + 4.0 * b * c * e
        - 2.0 * c.powi(2) * d;
    16.0 * PI / 35.0 * s
}

fn poly_i4(al: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let s =
        144.0 * a.powi(4) + 264.0 * a.powi(2) * al.powi(2) + 96.0 * a.powi(2) * b.powi(2)
        + 96.0 * a.powi(2) * c.powi(2) + 96.0 * a.powi(2) * d.powi(2)
        + 96.0 * a.powi(2) * e.powi(2) + 21.0 * al.powi(4) + 72.0 * al.powi(2) * b.powi(2)
        + 72.0 * al.powi(2) * c.powi(2) + 24.0 * al.powi(2) * d.powi(2)
        + 24.0 * al.powi(2) * e.powi(2) + 16.0 * b.powi(4) + 32.0 * b.powi(2) * c.powi(2)
        + 32.0 * b.powi(2) * d.powi(2) + 32.0 * b.powi(2) * e.powi(2) + 16.0 * c.powi(4)
        + 32.0 * c.powi(2) * d.powi(2) + 32.0 * c.powi(2) * e.powi(2) + 16.0 * d.powi(4)
        + 32.0 * d.powi(2) * e.powi(2) + 16.0 * e.powi(4);
    4.0 * PI / 105.0 * s
}

fn poly_i5(al: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let s =
        48.0 * a.powi(5) + 176.0 * a.powi(3) * al.powi(2) + 40.0 * a.powi(3) * b.powi(2)
        + 40.0 * a.powi(3) * c.powi(2) - 32.0 * a.powi(3) * d.powi(2)
        - 32.0 * a.powi(3) * e.powi(2) + 24.0 * a.powi(2) * b.powi(2) * d
        + 48.0 * a.powi(2) * b * c * e - 24.0 * a.powi(2) * c.powi(2) * d
        + 33.0 * a * al.powi(4) + 66.0 * a * al.powi(2) * b.powi(2)
        + 66.0 * a * al.powi(2) * c.powi(2) + 8.0 * a * b.powi(4)
        + 16.0 * a * b.powi(2) * c.powi(2) - 8.0 * a * b.powi(2) * d.powi(2)
        - 8.0 * a * b.powi(2) * e.powi(2) + 8.0 * a * c.powi(4)
        - 8.0 * a * c.powi(2) * d.powi(2) - 8.0 * a * c.powi(2) * e.powi(2)
        - 16.0 * a * d.powi(4) - 32.0 * a * d.powi(2) * e.powi(2) - 16.0 * a * e.powi(4)
        + 22.0 * al.powi(2) * b.powi(2) * d + 44.0 * al.powi(2) * b * c * e
        - 22.0 * al.powi(2) * c.powi(2) * d + 8.0 * b.powi(4) * d + 16.0 * b.powi(3) * c * e
        + 8.0 * b.powi(2) * d.powi(3) + 8.0 * b.powi(2) * d * e.powi(2)
        + 16.0 * b * c.powi(3) * e + 16.0 * b * c * d.powi(2) * e + 16.0 * b * c * e.powi(3)
        - 8.0 * c.powi(4) * d - 8.0 * c.powi(2) * d.powi(3) - 8.0 * c.powi(2) * d * e.powi(2);
    32.0 * PI / 231.0 * s
}

fn poly_i6(al: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let s =
        10176.0 * a.powi(6) + 45552.0 * a.powi(4) * al.powi(2)
        + 10176.0 * a.powi(4) * b.powi(2) + 10176.0 * a.powi(4) * c.powi(2)
        + 5568.0 * a.powi(4) * d.powi(2) + 5568.0 * a.powi(4) * e.powi(2)
        + 1536.0 * a.powi(3) * b.powi(2) * d + 3072.0 * a.powi(3) * b * c * e
        - 1536.0 * a.powi(3) * c.powi(2) * d + 15444.0 * a.powi(2) * al.powi(4)
        + 26208.0 * a.powi(2) * al.powi(2) * b.powi(2)
        + 26208.0 * a.powi(2) * al.powi(2) * c.powi(2)
        + 3744.0 * a.powi(2) * al.powi(2) * d.powi(2)
        + 3744.0 * a.powi(2) * al.powi(2) * e.powi(2) + 3264.0 * a.powi(2) * b.powi(4)
        + 6528.0 * a.powi(2) * b.powi(2) * c.powi(2)
        + 4224.0 * a.powi(2) * b.powi(2) * d.powi(2)
        + 4224.0 * a.powi(2) * b.powi(2) * e.powi(2) + 3264.0 * a.powi(2) * c.powi(4)
        + 4224.0 * a.powi(2) * c.powi(2) * d.powi(2)
        + 4224.0 * a.powi(2) * c.powi(2) * e.powi(2) + 4416.0 * a.powi(2) * d.powi(4)
        + 8832.0 * a.powi(2) * d.powi(2) * e.powi(2) + 4416.0 * a.powi(2) * e.powi(4)
        + 4992.0 * a * al.powi(2) * b.powi(2) * d + 9984.0 * a * al.powi(2) * b * c * e
        - 4992.0 * a * al.powi(2) * c.powi(2) * d + 768.0 * a * b.powi(4) * d
        + 1536.0 * a * b.powi(3) * c * e - 1536.0 * a * b.powi(2) * d.powi(3)
        - 1536.0 * a * b.powi(2) * d * e.powi(2) + 1536.0 * a * b * c.powi(3) * e
        - 3072.0 * a * b * c * d.powi(2) * e - 3072.0 * a * b * c * e.powi(3)
        - 768.0 * a * c.powi(4) * d + 1536.0 * a * c.powi(2) * d.powi(3)
        + 1536.0 * a * c.powi(2) * d * e.powi(2) + 429.0 * al.powi(6)
        + 2860.0 * al.powi(4) * b.powi(2) + 2860.0 * al.powi(4) * c.powi(2)
        + 572.0 * al.powi(4) * d.powi(2) + 572.0 * al.powi(4) * e.powi(2)
        + 3120.0 * al.powi(2) * b.powi(4) + 6240.0 * al.powi(2) * b.powi(2) * c.powi(2)
        + 3744.0 * al.powi(2) * b.powi(2) * d.powi(2)
        + 3744.0 * al.powi(2) * b.powi(2) * e.powi(2) + 3120.0 * al.powi(2) * c.powi(4)
        + 3744.0 * al.powi(2) * c.powi(2) * d.powi(2)
        + 3744.0 * al.powi(2) * c.powi(2) * e.powi(2) + 624.0 * al.powi(2) * d.powi(4)
        + 1248.0 * al.powi(2) * d.powi(2) * e.powi(2) + 624.0 * al.powi(2) * e.powi(4)
        + 320.0 * b.powi(6) + 960.0 * b.powi(4) * c.powi(2) + 1344.0 * b.powi(4) * d.powi(2)
        + 960.0 * b.powi(4) * e.powi(2) + 1536.0 * b.powi(3) * c * d * e
        + 960.0 * b.powi(2) * c.powi(4) + 1152.0 * b.powi(2) * c.powi(2) * d.powi(2)
        + 3456.0 * b.powi(2) * c.powi(2) * e.powi(2) + 960.0 * b.powi(2) * d.powi(4)
        + 1920.0 * b.powi(2) * d.powi(2) * e.powi(2) + 960.0 * b.powi(2) * e.powi(4)
        - 1536.0 * b * c.powi(3) * d * e + 320.0 * c.powi(6) + 1344.0 * c.powi(4) * d.powi(2)
        + 960.0 * c.powi(4) * e.powi(2) + 960.0 * c.powi(2) * d.powi(4)
        + 1920.0 * c.powi(2) * d.powi(2) * e.powi(2) + 960.0 * c.powi(2) * e.powi(4)
        + 320.0 * d.powi(6) + 960.0 * d.powi(4) * e.powi(2) + 960.0 * d.powi(2) * e.powi(4)
        + 320.0 * e.powi(6);
    4.0 * PI / 3003.0 * s
}

fn poly_i7(al: f64, a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
    let s =
        576.0 * a.powi(7) + 3792.0 * a.powi(5) * al.powi(2) + 672.0 * a.powi(5) * b.powi(2)
        + 672.0 * a.powi(5) * c.powi(2) - 192.0 * a.powi(5) * d.powi(2)
        - 192.0 * a.powi(5) * e.powi(2) + 288.0 * a.powi(4) * b.powi(2) * d
        + 576.0 * a.powi(4) * b * c * e - 288.0 * a.powi(4) * c.powi(2) * d
        + 2028.0 * a.powi(3) * al.powi(4) + 2736.0 * a.powi(3) * al.powi(2) * b.powi(2)
        + 2736.0 * a.powi(3) * al.powi(2) * c.powi(2)
        + 96.0 * a.powi(3) * al.powi(2) * d.powi(2) + 96.0 * a.powi(3) * al.powi(2) * e.powi(2)
        + 256.0 * a.powi(3) * b.powi(4) + 512.0 * a.powi(3) * b.powi(2) * c.powi(2)
        - 64.0 * a.powi(3) * b.powi(2) * d.powi(2) - 64.0 * a.powi(3) * b.powi(2) * e.powi(2)
        + 256.0 * a.powi(3) * c.powi(4) - 64.0 * a.powi(3) * c.powi(2) * d.powi(2)
        - 64.0 * a.powi(3) * c.powi(2) * e.powi(2) - 320.0 * a.powi(3) * d.powi(4)
        - 640.0 * a.powi(3) * d.powi(2) * e.powi(2) - 320.0 * a.powi(3) * e.powi(4)
        + 816.0 * a.powi(2) * al.powi(2) * b.powi(2) * d
        + 1632.0 * a.powi(2) * al.powi(2) * b * c * e
        - 816.0 * a.powi(2) * al.powi(2) * c.powi(2) * d + 192.0 * a.powi(2) * b.powi(4) * d
        + 384.0 * a.powi(2) * b.powi(3) * c * e + 192.0 * a.powi(2) * b.powi(2) * d.powi(3)
        + 192.0 * a.powi(2) * b.powi(2) * d * e.powi(2) + 384.0 * a.powi(2) * b * c.powi(3) * e
        + 384.0 * a.powi(2) * b * c * d.powi(2) * e + 384.0 * a.powi(2) * b * c * e.powi(3)
        - 192.0 * a.powi(2) * c.powi(4) * d - 192.0 * a.powi(2) * c.powi(2) * d.powi(3)
        - 192.0 * a.powi(2) * c.powi(2) * d * e.powi(2) + 143.0 * a * al.powi(6)
        + 650.0 * a * al.powi(4) * b.powi(2) + 650.0 * a * al.powi(4) * c.powi(2)
        + 52.0 * a * al.powi(4) * d.powi(2) + 52.0 * a * al.powi(4) * e.powi(2)
        + 480.0 * a * al.powi(2) * b.powi(4) + 960.0 * a * al.powi(2) * b.powi(2) * c.powi(2)
        + 144.0 * a * al.powi(2) * b.powi(2) * d.powi(2)
        + 144.0 * a * al.powi(2) * b.powi(2) * e.powi(2) + 480.0 * a * al.powi(2) * c.powi(4)
        + 144.0 * a * al.powi(2) * c.powi(2) * d.powi(2)
        + 144.0 * a * al.powi(2) * c.powi(2) * e.powi(2) - 48.0 * a * al.powi(2) * d.powi(4)
        - 96.0 * a * al.powi(2) * d.powi(2) * e.powi(2) - 48.0 * a * al.powi(2) * e.powi(4)
        + 32.0 * a * b.powi(6) + 96.0 * a * b.powi(4) * c.powi(2)
        + 96.0 * a * b.powi(2) * c.powi(4) - 96.0 * a * b.powi(2) * d.powi(4)
        - 192.0 * a * b.powi(2) * d.powi(2) * e.powi(2) - 96.0 * a * b.powi(2) * e.powi(4)
        + 32.0 * a * c.powi(6) - 96.0 * a * c.powi(2) * d.powi(4)
        - 192.0 * a * c.powi(2) * d.powi(2) * e.powi(2) - 96.0 * a * c.powi(2) * e.powi(4)
        - 64.0 * a * d.powi(6) - 192.0 * a * d.powi(4) * e.powi(2)
        - 192.0 * a * d.powi(2) * e.powi(4) - 64.0 * a * e.powi(6)
        + 130.0 * al.powi(4) * b.powi(2) * d + 260.0 * al.powi(4) * b * c * e
        - 130.0 * al.powi(4) * c.powi(2) * d + 240.0 * al.powi(2) * b.powi(4) * d
        + 480.0 * al.powi(2) * b.powi(3) * c * e + 144.0 * al.powi(2) * b.powi(2) * d.powi(3)
        + 144.0 * al.powi(2) * b.powi(2) * d * e.powi(2)
        + 480.0 * al.powi(2) * b * c.powi(3) * e + 288.0 * al.powi(2) * b * c * d.powi(2) * e
        + 288.0 * al.powi(2) * b * c * e.powi(3) - 240.0 * al.powi(2) * c.powi(4) * d
        - 144.0 * al.powi(2) * c.powi(2) * d.powi(3)
        - 144.0 * al.powi(2) * c.powi(2) * d * e.powi(2) + 32.0 * b.powi(6) * d
        + 64.0 * b.powi(5) * c * e + 32.0 * b.powi(4) * c.powi(2) * d
        + 64.0 * b.powi(4) * d.powi(3) + 64.0 * b.powi(4) * d * e.powi(2)
        + 128.0 * b.powi(3) * c.powi(3) * e + 128.0 * b.powi(3) * c * d.powi(2) * e
        + 128.0 * b.powi(3) * c * e.powi(3) - 32.0 * b.powi(2) * c.powi(4) * d
        + 32.0 * b.powi(2) * d.powi(5) + 64.0 * b.powi(2) * d.powi(3) * e.powi(2)
        + 32.0 * b.powi(2) * d * e.powi(4) + 64.0 * b * c.powi(5) * e
        + 128.0 * b * c.powi(3) * d.powi(2) * e + 128.0 * b * c.powi(3) * e.powi(3)
        + 64.0 * b * c * d.powi(4) * e + 128.0 * b * c * d.powi(2) * e.powi(3)
        + 64.0 * b * c * e.powi(5) - 32.0 * c.powi(6) * d - 64.0 * c.powi(4) * d.powi(3)
        - 64.0 * c.powi(4) * d * e.powi(2) - 32.0 * c.powi(2) * d.powi(5)
        - 64.0 * c.powi(2) * d.powi(3) * e.powi(2) - 32.0 * c.powi(2) * d * e.powi(4);
    16.0 * PI / 429.0 * s
}
