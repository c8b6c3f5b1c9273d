//! Parametrized surfaces in `H¹`: Heisenberg tangent frames, the Heisenberg
//! cross product, characteristic points, and normal-field conversions.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{rat, Point, PolyCoeff};
use crate::error::{check_dim, Error, Result};
use crate::frame::{frame_apply, hodge_star, MultiVector};

pub type Evaluator = Arc<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>;

/// How the first parameter wraps around.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Periodicity {
    None,
    /// `(r + period, s) ~ (r, s)`.
    Periodic(f64),
    /// `(r + period, s) ~ (r, −s)`, as for the Möbius strip.
    Twisted(f64),
}

/// A surface `γ : [r₀,r₁]×[s₀,s₁] → R³` with analytic partials.
#[derive(Clone)]
pub struct ParamSurface {
    r_range: (f64, f64),
    s_range: (f64, f64),
    periodicity: Periodicity,
    gamma: Evaluator,
    gamma_r: Evaluator,
    gamma_s: Evaluator,
}

impl std::fmt::Debug for ParamSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParamSurface")
            .field("r_range", &self.r_range)
            .field("s_range", &self.s_range)
            .field("periodicity", &self.periodicity)
            .finish_non_exhaustive()
    }
}

/// Components `(c_X, c_Y, c_T)` of a tangent vector in the left-invariant frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeisVector {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl HeisVector {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        HeisVector { x, y, t }
    }

    pub fn max_abs_diff(&self, other: &HeisVector) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs()).max((self.t - other.t).abs())
    }
}

impl ParamSurface {
    pub fn new(
        r_range: (f64, f64),
        s_range: (f64, f64),
        periodicity: Periodicity,
        gamma: Evaluator,
        gamma_r: Evaluator,
        gamma_s: Evaluator,
    ) -> Result<Self> {
        if !(r_range.0 < r_range.1 && s_range.0 < s_range.1) {
            return Err(Error::InvalidParameter("empty parameter domain".into()));
        }
        Ok(ParamSurface { r_range, s_range, periodicity, gamma, gamma_r, gamma_s })
    }

    pub fn r_range(&self) -> (f64, f64) {
        self.r_range
    }

    pub fn s_range(&self) -> (f64, f64) {
        self.s_range
    }

    pub fn periodicity(&self) -> Periodicity {
        self.periodicity
    }

    pub fn point(&self, r: f64, s: f64) -> [f64; 3] {
        (self.gamma)(r, s)
    }

    pub fn partial_r(&self, r: f64, s: f64) -> [f64; 3] {
        (self.gamma_r)(r, s)
    }

    pub fn partial_s(&self, r: f64, s: f64) -> [f64; 3] {
        (self.gamma_s)(r, s)
    }

    /// Heisenberg normal `γ_r ×_H γ_s` in frame components.
    pub fn normal(&self, r: f64, s: f64) -> HeisVector {
        let p = self.point(r, s);
        heis_cross(
            &heis_frame_components(self.partial_r(r, s), p),
            &heis_frame_components(self.partial_s(r, s), p),
        )
    }

    /// Largest deviation between the analytic partials and central finite
    /// differences (step `1e−5`) at `samples` seeded parameter pairs.
    pub fn partials_error(&self, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = 1e-5;
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let r = rng.random_range(self.r_range.0 + h..self.r_range.1 - h);
            let s = rng.random_range(self.s_range.0 + h..self.s_range.1 - h);
            let (a, b) = (self.point(r + h, s), self.point(r - h, s));
            let (c, d) = (self.point(r, s + h), self.point(r, s - h));
            let gr = self.partial_r(r, s);
            let gs = self.partial_s(r, s);
            for i in 0..3 {
                worst = worst.max(((a[i] - b[i]) / (2.0 * h) - gr[i]).abs());
                worst = worst.max(((c[i] - d[i]) / (2.0 * h) - gs[i]).abs());
            }
        }
        worst
    }

    /// Fails unless the partials agree with finite differences within `1e−6`.
    pub fn validate_partials(&self, samples: usize, seed: u64) -> Result<()> {
        let err = self.partials_error(samples, seed);
        if err < 1e-6 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("partials disagree with finite differences by {err:e}")))
        }
    }

    /// Brings `(r, s)` back into the fundamental domain, snapping `r` to 0
    /// when it lies within `1e−9` of either end of a periodic range.
    fn canonicalize(&self, mut r: f64, mut s: f64) -> (f64, f64) {
        let (twisted, period) = match self.periodicity {
            Periodicity::None => return (r, s),
            Periodicity::Periodic(p) => (false, p),
            Periodicity::Twisted(p) => (true, p),
        };
        let r0 = self.r_range.0;
        while r < r0 {
            r += period;
            if twisted {
                s = -s;
            }
        }
        while r >= r0 + period {
            r -= period;
            if twisted {
                s = -s;
            }
        }
        if (r - r0).abs() < 1e-9 {
            r = r0;
        } else if (r0 + period - r).abs() < 1e-9 {
            r = r0;
            if twisted {
                s = -s;
            }
        }
        (r, s)
    }
}

/// `γ(r,s) = ([R + s cos(r/2)] cos r, [R + s cos(r/2)] sin r, s sin(r/2))` on `[0,2π)×[−w,w]`.
pub fn mobius_surface(radius: f64, half_width: f64) -> Result<ParamSurface> {
    if !(radius.is_finite() && half_width.is_finite() && half_width > 0.0 && half_width < radius) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < w < R, got R = {radius}, w = {half_width}"
        )));
    }
    let big_r = radius;
    let gamma: Evaluator = Arc::new(move |r, s| {
        let m = big_r + s * (r / 2.0).cos();
        [m * r.cos(), m * r.sin(), s * (r / 2.0).sin()]
    });
    let gamma_r: Evaluator = Arc::new(move |r, s| {
        let m = big_r + s * (r / 2.0).cos();
        let h = (r / 2.0).sin();
        [
            -0.5 * s * h * r.cos() - m * r.sin(),
            -0.5 * s * h * r.sin() + m * r.cos(),
            0.5 * s * (r / 2.0).cos(),
        ]
    });
    let gamma_s: Evaluator = Arc::new(move |r, _s| {
        let z = (r / 2.0).cos();
        [z * r.cos(), z * r.sin(), (r / 2.0).sin()]
    });
    ParamSurface::new(
        (0.0, 2.0 * PI),
        (-half_width, half_width),
        Periodicity::Twisted(2.0 * PI),
        gamma,
        gamma_r,
        gamma_s,
    )
}

/// Rewrites `v_x ∂x + v_y ∂y + v_t ∂t` at `p` in the frame: `c_T = v_t + ½ y v_x − ½ x v_y`.
pub fn heis_frame_components(v: [f64; 3], p: [f64; 3]) -> HeisVector {
    HeisVector::new(v[0], v[1], v[2] + 0.5 * p[1] * v[0] - 0.5 * p[0] * v[1])
}

/// Determinant with first row `(X, Y, T)`.
pub fn heis_cross(u: &HeisVector, v: &HeisVector) -> HeisVector {
    HeisVector::new(u.y * v.t - u.t * v.y, u.t * v.x - u.x * v.t, u.x * v.y - u.y * v.x)
}

/// Closed-form `(N₁, N₂, N₃)` of the Möbius strip with `z = cos(r/2)`.
pub fn mobius_normal_components(radius: f64, r: f64, s: f64) -> HeisVector {
    let big_r = radius;
    let z = (r / 2.0).cos();
    let m = big_r + s * z;
    let n1 = -0.5 * s * r.sin() + m * r.cos() * (r / 2.0).sin() + 0.5 * m * m * z * r.sin();
    let n2 = (-z.powi(5) + 0.5 * z.powi(3)) * s * s
        + (-2.0 * (big_r + 1.0) * z.powi(4) + (big_r + 3.0) * z * z - 0.5) * s
        - (big_r * big_r + 2.0 * big_r) * z.powi(3)
        + (0.5 * big_r * big_r + 2.0 * big_r) * z;
    let n3 = -m * z;
    HeisVector::new(n1, n2, n3)
}

/// The characteristic parameter pair predicted in closed form, for `0 < R < ¼`.
pub fn mobius_predicted_point(radius: f64) -> Option<(f64, f64)> {
    (radius > 0.0 && radius < 0.25).then(|| (0.0, (1.0 - 2.0 * radius - (1.0 - 4.0 * radius).sqrt()) / 2.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharPoint {
    pub r: f64,
    pub s: f64,
    /// `max(|N₁|, |N₂|)` at `(r, s)`.
    pub residual: f64,
    pub ambient: [f64; 3],
    pub boundary: bool,
    pub n3: f64,
}

/// A candidate cell on which Newton's method did not converge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanFailure {
    pub cell: (usize, usize),
    pub r: f64,
    pub s: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CharScan {
    pub candidates: usize,
    pub points: Vec<CharPoint>,
    pub failures: Vec<ScanFailure>,
    /// Converged roots outside the parameter domain.
    pub rejected: Vec<(f64, f64)>,
}

fn residual_of(n: &HeisVector) -> f64 {
    n.x.abs().max(n.y.abs())
}

enum Refined {
    Root(f64, f64),
    Failed(f64, f64, f64),
}

/// Newton's method on `(N₁, N₂) = 0` with a central-difference Jacobian.
fn newton(surface: &ParamSurface, mut r: f64, mut s: f64, tol: f64) -> Refined {
    const H: f64 = 1e-6;
    let f = |r: f64, s: f64| {
        let n = surface.normal(r, s);
        (n.x, n.y)
    };
    let mut extra = 0;
    for _ in 0..60 {
        let (f1, f2) = f(r, s);
        if f1.abs().max(f2.abs()) < tol {
            // two more steps push the residual well below the tolerance
            extra += 1;
            if extra > 2 {
                return Refined::Root(r, s);
            }
        }
        let (a1, a2) = f(r + H, s);
        let (b1, b2) = f(r - H, s);
        let (c1, c2) = f(r, s + H);
        let (d1, d2) = f(r, s - H);
        let j11 = (a1 - b1) / (2.0 * H);
        let j21 = (a2 - b2) / (2.0 * H);
        let j12 = (c1 - d1) / (2.0 * H);
        let j22 = (c2 - d2) / (2.0 * H);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dr = (j22 * f1 - j12 * f2) / det;
        let ds = (-j21 * f1 + j11 * f2) / det;
        r -= dr;
        s -= ds;
        if !(r.is_finite() && s.is_finite()) {
            break;
        }
        if dr.abs().max(ds.abs()) < 1e-16 && f1.abs().max(f2.abs()) < tol {
            return Refined::Root(r, s);
        }
    }
    let (f1, f2) = f(r, s);
    if f1.abs().max(f2.abs()) < tol {
        Refined::Root(r, s)
    } else {
        Refined::Failed(r, s, f1.abs().max(f2.abs()))
    }
}

fn straddles(values: [f64; 4]) -> bool {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    lo <= 0.0 && hi >= 0.0
}

/// Grid scan for cells where both `N₁` and `N₂` change sign (or vanish),
/// each refined by Newton's method; roots are deduplicated within `1e−6`.
pub fn find_characteristic_points(surface: &ParamSurface, grid: (usize, usize), tol: f64) -> Result<CharScan> {
    let (nr, ns) = grid;
    if nr < 64 || ns < 64 {
        return Err(Error::InvalidParameter(format!("grid must be at least 64x64, got {nr}x{ns}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let (r0, r1) = surface.r_range;
    let (s0, s1) = surface.s_range;
    let node = |i: usize, j: usize| {
        let r = r0 + (r1 - r0) * i as f64 / nr as f64;
        let s = s0 + (s1 - s0) * j as f64 / ns as f64;
        (r, s)
    };
    let values: Vec<Vec<HeisVector>> = (0..=nr)
        .into_par_iter()
        .map(|i| (0..=ns).map(|j| { let (r, s) = node(i, j); surface.normal(r, s) }).collect())
        .collect();
    let cells: Vec<(usize, usize)> = (0..nr)
        .into_par_iter()
        .flat_map_iter(|i| {
            let values = &values;
            (0..ns).filter_map(move |j| {
                let c = [values[i][j], values[i + 1][j], values[i][j + 1], values[i + 1][j + 1]];
                (straddles(c.map(|v| v.x)) && straddles(c.map(|v| v.y))).then_some((i, j))
            })
        })
        .collect();

    let refined: Vec<((usize, usize), Refined)> = cells
        .par_iter()
        .map(|&(i, j)| {
            let (ra, sa) = node(i, j);
            let (rb, sb) = node(i + 1, j + 1);
            ((i, j), newton(surface, 0.5 * (ra + rb), 0.5 * (sa + sb), tol))
        })
        .collect();

    let mut scan = CharScan { candidates: cells.len(), ..Default::default() };
    let mut roots: Vec<(f64, f64)> = Vec::new();
    let slack = 1e-9;
    for (cell, outcome) in refined {
        match outcome {
            Refined::Failed(r, s, residual) => scan.failures.push(ScanFailure { cell, r, s, residual }),
            Refined::Root(r, s) => {
                let (r, s) = surface.canonicalize(r, s);
                let in_r = matches!(surface.periodicity, Periodicity::Periodic(_) | Periodicity::Twisted(_))
                    || (r >= r0 - slack && r <= r1 + slack);
                if !in_r || s < s0 - slack || s > s1 + slack {
                    scan.rejected.push((r, s));
                } else {
                    roots.push((r, s));
                }
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    let mut unique: Vec<(f64, f64)> = Vec::new();
    for (r, s) in roots {
        if !unique.iter().any(|&(ur, us)| ((ur - r).powi(2) + (us - s).powi(2)).sqrt() < 1e-6) {
            unique.push((r, s));
        }
    }
    for (r, s) in unique {
        let n = surface.normal(r, s);
        let residual = residual_of(&n);
        if residual >= tol {
            scan.failures.push(ScanFailure { cell: (usize::MAX, usize::MAX), r, s, residual });
            continue;
        }
        scan.points.push(CharPoint {
            r,
            s,
            residual,
            ambient: surface.point(r, s),
            boundary: (s - s0).abs() < 1e-6 || (s1 - s).abs() < 1e-6,
            n3: n.t,
        });
    }
    scan.rejected.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    Ok(scan)
}

/// One row of the scan table: a grid node and its normal.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub r: f64,
    pub s: f64,
    #[serde(rename = "N1")]
    pub n1: f64,
    #[serde(rename = "N2")]
    pub n2: f64,
    #[serde(rename = "N3")]
    pub n3: f64,
}

/// Normals at every grid node, row-major in `r`.
pub fn scan_table(surface: &ParamSurface, grid: (usize, usize)) -> Vec<ScanRow> {
    let (nr, ns) = grid;
    let (r0, r1) = surface.r_range;
    let (s0, s1) = surface.s_range;
    (0..=nr)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..=ns).map(move |j| {
                let r = r0 + (r1 - r0) * i as f64 / nr as f64;
                let s = s0 + (s1 - s0) * j as f64 / ns as f64;
                let n = surface.normal(r, s);
                ScanRow { r, s, n1: n.x, n2: n.y, n3: n.t }
            })
        })
        .collect()
}

/// `n_{H,i} = n_{E,i} − ½ y_i n_{E,2n+1}`, `n_{H,n+i} = n_{E,n+i} + ½ x_i n_{E,2n+1}`.
///
/// The flag is set when the horizontal normal vanishes (a characteristic point).
pub fn e_to_h(n_e: &[f64], p: &Point) -> Result<(Vec<f64>, bool)> {
    let n = p.n();
    if n_e.len() != 2 * n + 1 {
        return Err(Error::PointLength { expected: 2 * n + 1, found: n_e.len() });
    }
    let w = p.coords();
    let nt = n_e[2 * n];
    let mut out = vec![0.0; 2 * n];
    for i in 0..n {
        out[i] = n_e[i] - 0.5 * w[n + i] * nt;
        out[n + i] = n_e[n + i] + 0.5 * w[i] * nt;
    }
    let characteristic = out.iter().all(|v| *v == 0.0);
    Ok((out, characteristic))
}

/// Symbolic version of [`e_to_h`] on polynomial normal fields.
pub fn e_to_h_poly(n_e: &[PolyCoeff]) -> Result<Vec<PolyCoeff>> {
    if n_e.is_empty() || n_e.len() % 2 == 0 {
        return Err(Error::InvalidParameter("need 2n+1 components".into()));
    }
    let n = (n_e.len() - 1) / 2;
    for c in n_e {
        check_dim(n, c.n())?;
    }
    let half = rat(1, 2);
    let nt = &n_e[2 * n];
    let mut out = vec![PolyCoeff::zero(n); 2 * n];
    for i in 1..=n {
        let x = PolyCoeff::var(n, i)?;
        let y = PolyCoeff::var(n, n + i)?;
        out[i - 1] = &n_e[i - 1] - &(y * nt).scale(&half);
        out[n + i - 1] = &n_e[n + i - 1] + &(x * nt).scale(&half);
    }
    Ok(out)
}

/// `n_{E,2n+1} = (1/n) Σ_j (X_j n_{H,n+j} − Y_j n_{H,j})`, then the inverse of [`e_to_h`].
pub fn h_to_e(n_h: &[PolyCoeff]) -> Result<Vec<PolyCoeff>> {
    if n_h.is_empty() || n_h.len() % 2 == 1 {
        return Err(Error::InvalidParameter("need 2n horizontal components".into()));
    }
    let n = n_h.len() / 2;
    for c in n_h {
        check_dim(n, c.n())?;
    }
    let mut nt = PolyCoeff::zero(n);
    for j in 1..=n {
        nt += &frame_apply(j, &n_h[n + j - 1])?;
        nt -= &frame_apply(n + j, &n_h[j - 1])?;
    }
    let nt = nt.scale(&rat(1, n as i64));
    let half = rat(1, 2);
    let mut out = vec![PolyCoeff::zero(n); 2 * n + 1];
    for i in 1..=n {
        let x = PolyCoeff::var(n, i)?;
        let y = PolyCoeff::var(n, n + i)?;
        out[i - 1] = &n_h[i - 1] + &(y * &nt).scale(&half);
        out[n + i - 1] = &n_h[n + i - 1] - &(x * &nt).scale(&half);
    }
    out[2 * n] = nt;
    Ok(out)
}

/// Tangent 2-vector `* n_H = n_{H,1} Y∧T − n_{H,2} X∧T` in `H¹`.
pub fn heis_tangent_bivector(n_h: &[PolyCoeff]) -> Result<MultiVector> {
    if n_h.len() != 2 {
        return Err(Error::Unsupported("the tangent bivector is defined for n = 1".into()));
    }
    check_dim(1, n_h[0].n())?;
    check_dim(1, n_h[1].n())?;
    let v = MultiVector::frame(1, 1)?
        .mul_poly(&n_h[0])
        .add(&MultiVector::frame(1, 2)?.mul_poly(&n_h[1]))?;
    if v.is_zero() {
        return Ok(MultiVector::zero(1, 2));
    }
    hodge_star(&v)
}
