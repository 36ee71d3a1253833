use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiport::TritterFamily;
use crate::suppression::{golden_section_min, tritter_suppression_value, InputFamily, OutputFamily};
use crate::tolerance;

/// Which suppression function to scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanTarget {
    pub family: TritterFamily,
    pub input: InputFamily,
    pub output: OutputFamily,
    pub size: usize,
}

impl ScanTarget {
    pub fn value(&self, tau: f64, theta: f64) -> Result<Complex64> {
        tritter_suppression_value(self.family, self.input, self.output, tau, theta, self.size)
    }

    fn eval(&self, tau: f64, theta: f64) -> Complex64 {
        self.value(tau.clamp(0.0, 1.0), theta).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
}

/// Cell counts of the (τ, θ) grid; τ ∈ [0, 1], θ ∈ [−π, π].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanGrid {
    pub tau_steps: usize,
    pub theta_steps: usize,
}

impl ScanGrid {
    pub const MIN_STEPS: usize = 64;

    pub fn tau_step(&self) -> f64 {
        1.0 / self.tau_steps as f64
    }

    pub fn theta_step(&self) -> f64 {
        2.0 * PI / self.theta_steps as f64
    }

    fn validate(&self) -> Result<()> {
        if self.tau_steps < Self::MIN_STEPS || self.theta_steps < Self::MIN_STEPS {
            return Err(Error::Domain(format!(
                "scan grid {}x{} is below the {m}x{m} minimum",
                self.tau_steps,
                self.theta_steps,
                m = Self::MIN_STEPS
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroPoint {
    pub tau: f64,
    pub theta: f64,
    /// |f| at the refined point.
    pub residual: f64,
}

/// Refined zeros of one suppression function linked into a curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCurve {
    pub family: TritterFamily,
    pub input: InputFamily,
    pub output: OutputFamily,
    pub size: usize,
    pub points: Vec<ZeroPoint>,
}

fn wrap(theta: f64) -> f64 {
    let mut t = (theta + PI).rem_euclid(2.0 * PI) - PI;
    if t >= PI - 1e-12 {
        t -= 2.0 * PI;
    }
    t
}

fn theta_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn residual_vec(f: Complex64) -> [f64; 2] {
    [f.re, f.im]
}

/// Damped Newton on (Re f, Im f) with a Levenberg–Marquardt step when the
/// Jacobian is near singular, then axis-wise minimization of |f| as fallback.
fn refine(target: &ScanTarget, tau0: f64, theta0: f64, h_tau: f64, h_theta: f64) -> Option<ZeroPoint> {
    let f = |t: f64, th: f64| target.eval(t, th);
    let (mut t, mut th) = (tau0, theta0);
    let mut fx = f(t, th);
    if !fx.norm().is_finite() {
        return None;
    }
    for _ in 0..50 {
        if fx.norm() < 1e-14 {
            break;
        }
        let d = 1e-7;
        let (tp, tm) = ((t + d).min(1.0), (t - d).max(0.0));
        let ft = (f(tp, th) - f(tm, th)) / (tp - tm);
        let fth = (f(t, th + d) - f(t, th - d)) / (2.0 * d);
        // J = [[Re ft, Re fth], [Im ft, Im fth]]
        let (a, b, c, dd) = (ft.re, fth.re, ft.im, fth.im);
        let r = residual_vec(fx);
        let det = a * dd - b * c;
        let scale = (a * a + b * b + c * c + dd * dd).max(1e-300);
        let (mut dt, mut dth) = if det.abs() > 1e-10 * scale {
            ((-(dd * r[0] - b * r[1])) / det, (-(-c * r[0] + a * r[1])) / det)
        } else {
            // (JᵀJ + μI) δ = −Jᵀr
            let mu = 1e-6 * scale + 1e-300;
            let (j11, j12, j22) = (a * a + c * c + mu, a * b + c * dd, b * b + dd * dd + mu);
            let (g1, g2) = (a * r[0] + c * r[1], b * r[0] + dd * r[1]);
            let det2 = j11 * j22 - j12 * j12;
            ((-(j22 * g1 - j12 * g2)) / det2, (-(-j12 * g1 + j11 * g2)) / det2)
        };
        // keep steps local to the seed cell neighbourhood
        let cap = (dt / (2.0 * h_tau)).abs().max((dth / (2.0 * h_theta)).abs());
        if cap > 1.0 {
            dt /= cap;
            dth /= cap;
        }
        let mut lambda = 1.0;
        let mut accepted = false;
        while lambda > 1e-6 {
            let nt = (t + lambda * dt).clamp(0.0, 1.0);
            let nth = th + lambda * dth;
            let nf = f(nt, nth);
            if nf.norm() < fx.norm() {
                t = nt;
                th = nth;
                fx = nf;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if fx.norm() >= tolerance::CURVE_RESIDUAL {
        // fallback: alternate 1-D minimizations of |f| along each axis
        for _ in 0..4 {
            let (bt, _) = golden_section_min(|x| f(x, th).norm(), (t - h_tau).max(0.0), (t + h_tau).min(1.0), 1e-15);
            t = bt;
            let (bth, v) = golden_section_min(|x| f(t, x).norm(), th - h_theta, th + h_theta, 1e-15);
            th = bth;
            if v < tolerance::CURVE_RESIDUAL {
                break;
            }
        }
        fx = f(t, th);
    }
    let residual = fx.norm();
    (residual < tolerance::CURVE_RESIDUAL).then(|| ZeroPoint { tau: t, theta: wrap(th), residual })
}

/// Locate, refine and link the zeros of a tritter suppression function.
///
/// A grid cell is a candidate when both Re f and Im f change sign across
/// its corners; grid nodes where |f| is a local minimum are candidates too.
/// Each candidate is refined, trivial τ ∈ {0, 1} zeros are dropped,
/// duplicates merged, and the points chained into curves by nearest
/// neighbour within twice the grid spacing.
pub fn scan_zero_curves(target: &ScanTarget, grid: ScanGrid) -> Result<Vec<ZeroCurve>> {
    grid.validate()?;
    target.value(0.5, 0.0)?;
    let (nt, nth) = (grid.tau_steps, grid.theta_steps);
    let (ht, hth) = (grid.tau_step(), grid.theta_step());
    let tau_at = |i: usize| i as f64 * ht;
    let theta_at = |j: usize| -PI + j as f64 * hth;

    // values on nodes; θ index j = nth duplicates j = 0 by periodicity
    let values: Vec<Vec<Complex64>> =
        (0..=nt).into_par_iter().map(|i| (0..nth).map(|j| target.eval(tau_at(i), theta_at(j))).collect()).collect();
    let at = |i: usize, j: usize| values[i][j % nth];

    let mut seeds: Vec<(f64, f64)> = Vec::new();
    for i in 0..nt {
        for j in 0..nth {
            let corners = [at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1)];
            let straddles = |g: fn(&Complex64) -> f64| {
                let lo = corners.iter().map(g).fold(f64::INFINITY, f64::min);
                let hi = corners.iter().map(g).fold(f64::NEG_INFINITY, f64::max);
                lo <= 0.0 && hi >= 0.0
            };
            if straddles(|z| z.re) && straddles(|z| z.im) {
                seeds.push((tau_at(i) + 0.5 * ht, theta_at(j) + 0.5 * hth));
            }
        }
    }
    for i in 0..=nt {
        for j in 0..nth {
            let v = at(i, j).norm();
            let mut is_min = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii > nt as i64 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(nth as i64) as usize;
                    if at(ii as usize, jj).norm() < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if is_min {
                seeds.push((tau_at(i), theta_at(j)));
            }
        }
    }

    let mut points: Vec<ZeroPoint> = seeds
        .par_iter()
        .filter_map(|&(t, th)| refine(target, t, th, ht, hth))
        .filter(|p| !tolerance::is_trivial_tau(p.tau))
        .collect();
    points.sort_by(|a, b| a.tau.total_cmp(&b.tau).then(a.theta.total_cmp(&b.theta)));
    let mut unique: Vec<ZeroPoint> = Vec::new();
    for p in points {
        if !unique.iter().any(|q| (q.tau - p.tau).abs() < 1e-7 && theta_distance(q.theta, p.theta) < 1e-7) {
            unique.push(p);
        }
    }
    Ok(link(target, unique, 2.0 * ht, 2.0 * hth))
}

fn link(target: &ScanTarget, points: Vec<ZeroPoint>, max_dt: f64, max_dth: f64) -> Vec<ZeroCurve> {
    let mut used = vec![false; points.len()];
    let mut curves = Vec::new();
    for start in 0..points.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let mut chain = vec![points[start]];
        // grow from both ends
        for forward in [true, false] {
            loop {
                let end = if forward { *chain.last().expect("nonempty") } else { chain[0] };
                let next = (0..points.len())
                    .filter(|&k| !used[k])
                    .filter(|&k| {
                        (points[k].tau - end.tau).abs() <= max_dt
                            && theta_distance(points[k].theta, end.theta) <= max_dth
                    })
                    .min_by(|&a, &b| {
                        let d = |k: usize| {
                            ((points[k].tau - end.tau) / max_dt).powi(2)
                                + (theta_distance(points[k].theta, end.theta) / max_dth).powi(2)
                        };
                        d(a).total_cmp(&d(b))
                    });
                match next {
                    Some(k) => {
                        used[k] = true;
                        if forward {
                            chain.push(points[k]);
                        } else {
                            chain.insert(0, points[k]);
                        }
                    }
                    None => break,
                }
            }
        }
        curves.push(ZeroCurve {
            family: target.family,
            input: target.input,
            output: target.output,
            size: target.size,
            points: chain,
        });
    }
    curves
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceRoot {
    pub tau: f64,
    pub residual: f64,
    pub multiplicity: u32,
}

/// Nontrivial zeros in τ of the suppression function at fixed θ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceRoots {
    pub theta: f64,
    pub roots: Vec<SliceRoot>,
    /// The function vanishes on the whole slice.
    pub identically_zero: bool,
}

/// Zeros on a fixed-θ slice: local minima of |f| on a τ grid refined by
/// golden-section search, kept when |f| < 1e−8. A root is double when
/// |df/dτ| < 1e−6 there.
pub fn scan_theta_slice(target: &ScanTarget, theta: f64, tau_steps: usize) -> Result<SliceRoots> {
    if tau_steps < ScanGrid::MIN_STEPS {
        return Err(Error::Domain(format!("slice grid of {tau_steps} steps is below {}", ScanGrid::MIN_STEPS)));
    }
    target.value(0.5, theta)?;
    let h = 1.0 / tau_steps as f64;
    let vals: Vec<f64> = (0..=tau_steps).map(|i| target.eval(i as f64 * h, theta).norm()).collect();
    if vals.iter().all(|&v| v < 1e-12) {
        return Ok(SliceRoots { theta, roots: Vec::new(), identically_zero: true });
    }
    let mut roots: Vec<SliceRoot> = Vec::new();
    for i in 0..=tau_steps {
        let left = if i > 0 { vals[i - 1] } else { f64::INFINITY };
        let right = if i < tau_steps { vals[i + 1] } else { f64::INFINITY };
        if !(vals[i] <= left && vals[i] <= right) {
            continue;
        }
        let lo = (i as f64 - 1.0).max(0.0) * h;
        let hi = ((i + 1) as f64 * h).min(1.0);
        let (tau, residual) = golden_section_min(|t| target.eval(t, theta).norm(), lo, hi, 1e-15);
        if residual >= tolerance::CURVE_RESIDUAL || tolerance::is_trivial_tau(tau) {
            continue;
        }
        if roots.iter().any(|r| (r.tau - tau).abs() < 1e-7) {
            continue;
        }
        let d = 1e-6;
        let deriv = (target.eval(tau + d, theta) - target.eval(tau - d, theta)).norm() / (2.0 * d);
        let multiplicity = if deriv < tolerance::DOUBLE_ROOT_DERIVATIVE { 2 } else { 1 };
        roots.push(SliceRoot { tau, residual, multiplicity });
    }
    roots.sort_by(|a, b| a.tau.total_cmp(&b.tau));
    Ok(SliceRoots { theta, roots, identically_zero: false })
}
