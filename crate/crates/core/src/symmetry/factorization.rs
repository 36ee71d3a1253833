use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{Interferometer, OccupationVector};
use crate::symmetry::Permutation;
use crate::tolerance;

/// Which relation is being factored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// P_σ·U = Z·U·Λ, for inputs fixed by σ.
    Input,
    /// U·P_σ† = Λ*·U·Z*, for outputs fixed by σ.
    Output,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Input => "input",
            Side::Output => "output",
        })
    }
}

/// Rows (input modes) and columns (output modes) linked by nonzero entries of U.
/// Phases inside one component are tied; across components they are free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Diagonal phases Z, Λ solving the symmetry relation for one σ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub sigma: Permutation,
    pub side: Side,
    pub z: Vec<Complex64>,
    pub lambda: Vec<Complex64>,
    pub components: Vec<Component>,
    /// max-abs reconstruction residual of the relation.
    pub residual: f64,
}

/// The entrywise target of the factorization and the anchor mask.
///
/// Input side: R_kl = U_{σ⁻¹(k),l}/U_kl = z_k·λ_l.
/// Output side: conj(U_{k,σ⁻¹(l)}/U_kl) = λ_k·z_l.
fn ratios(u: &Interferometer, sigma: &Permutation, side: Side) -> (DMatrix<Complex64>, DMatrix<Option<Complex64>>) {
    let dim = u.dim();
    let inv = sigma.inverse();
    let moved = DMatrix::from_fn(dim, dim, |k, l| match side {
        Side::Input => u.entry(inv.apply(k), l),
        Side::Output => u.entry(k, inv.apply(l)),
    });
    let r = DMatrix::from_fn(dim, dim, |k, l| {
        let base = u.entry(k, l);
        if base.norm() > tolerance::PHASE_ANCHOR {
            let q = moved[(k, l)] / base;
            Some(if side == Side::Input { q } else { q.conj() })
        } else {
            None
        }
    });
    (moved, r)
}

fn components(anchors: &DMatrix<Option<Complex64>>) -> Vec<Component> {
    let dim = anchors.nrows();
    // nodes 0..dim are rows, dim..2dim are columns
    let mut label = vec![usize::MAX; 2 * dim];
    let mut out = Vec::new();
    for start in 0..2 * dim {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        label[start] = id;
        let mut comp = Component { rows: vec![], cols: vec![] };
        while let Some(node) = stack.pop() {
            if node < dim {
                comp.rows.push(node);
                for l in 0..dim {
                    if anchors[(node, l)].is_some() && label[dim + l] == usize::MAX {
                        label[dim + l] = id;
                        stack.push(dim + l);
                    }
                }
            } else {
                let l = node - dim;
                comp.cols.push(l);
                for k in 0..dim {
                    if anchors[(k, l)].is_some() && label[k] == usize::MAX {
                        label[k] = id;
                        stack.push(k);
                    }
                }
            }
        }
        comp.rows.sort_unstable();
        comp.cols.sort_unstable();
        out.push(comp);
    }
    out
}

fn is_unit(z: Complex64) -> bool {
    (z.norm() - 1.0).abs() < 1e-10
}

/// max-abs residual of the relation for given (z, λ).
fn reconstruction_residual(
    u: &Interferometer,
    moved: &DMatrix<Complex64>,
    side: Side,
    z: &[Complex64],
    lambda: &[Complex64],
) -> f64 {
    let dim = u.dim();
    let mut worst = 0.0f64;
    for k in 0..dim {
        for l in 0..dim {
            let rhs = match side {
                Side::Input => z[k] * u.entry(k, l) * lambda[l],
                Side::Output => lambda[k].conj() * u.entry(k, l) * z[l].conj(),
            };
            worst = worst.max((moved[(k, l)] - rhs).norm());
        }
    }
    worst
}

/// (row factors, column factors) for the side: input rows carry Z, output rows carry Λ.
fn assemble(side: Side, rows: Vec<Complex64>, cols: Vec<Complex64>) -> (Vec<Complex64>, Vec<Complex64>) {
    match side {
        Side::Input => (rows, cols),
        Side::Output => (cols, rows),
    }
}

/// Factor the symmetry relation for σ, or `None` if no diagonal phases fit.
///
/// Phases are propagated from anchor entries (|U_kl| > 1e−8) through each
/// connected component. Gauge: the first Λ entry of every component is 1.
pub fn solve_phase_factorization(u: &Interferometer, sigma: &Permutation, side: Side) -> Option<PhasePair> {
    let dim = u.dim();
    if sigma.degree() != dim {
        return None;
    }
    let (moved, r) = ratios(u, sigma, side);
    let comps = components(&r);
    let one = Complex64::new(1.0, 0.0);
    let mut row_f: Vec<Option<Complex64>> = vec![None; dim];
    let mut col_f: Vec<Option<Complex64>> = vec![None; dim];
    for comp in &comps {
        // Λ is the column factor on the input side, the row factor on the output side.
        match (side, comp.cols.first(), comp.rows.first()) {
            (Side::Input, Some(&l), _) => col_f[l] = Some(one),
            (Side::Output, _, Some(&k)) => row_f[k] = Some(one),
            (_, _, Some(&k)) => row_f[k] = Some(one),
            (_, Some(&l), None) => col_f[l] = Some(one),
            _ => {}
        }
        // breadth-first over the bipartite anchor graph
        let mut changed = true;
        while changed {
            changed = false;
            for &k in &comp.rows {
                for &l in &comp.cols {
                    let Some(q) = r[(k, l)] else { continue };
                    match (row_f[k], col_f[l]) {
                        (Some(a), None) => {
                            col_f[l] = Some(q / a);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            row_f[k] = Some(q / b);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let rows: Vec<Complex64> = row_f.into_iter().map(|x| x.unwrap_or(one)).collect();
    let cols: Vec<Complex64> = col_f.into_iter().map(|x| x.unwrap_or(one)).collect();
    if !rows.iter().chain(&cols).all(|&x| is_unit(x)) {
        return None;
    }
    for k in 0..dim {
        for l in 0..dim {
            if let Some(q) = r[(k, l)] {
                if (rows[k] * cols[l] - q).norm() > tolerance::PHASE_CONSISTENCY {
                    return None;
                }
            }
        }
    }
    let (z, lambda) = assemble(side, rows, cols);
    let residual = reconstruction_residual(u, &moved, side, &z, &lambda);
    if residual > tolerance::PHASE_CONSISTENCY {
        return None;
    }
    Some(PhasePair { sigma: sigma.clone(), side, z, lambda, components: comps, residual })
}

/// Solve for Z given a stated Λ, or `None` if the relation cannot hold with it.
pub fn complete_with_lambda(
    u: &Interferometer,
    sigma: &Permutation,
    side: Side,
    lambda: &[Complex64],
) -> Option<PhasePair> {
    let dim = u.dim();
    if sigma.degree() != dim || lambda.len() != dim || !lambda.iter().all(|&x| is_unit(x)) {
        return None;
    }
    let (moved, r) = ratios(u, sigma, side);
    let comps = components(&r);
    let mut z = vec![Complex64::new(1.0, 0.0); dim];
    for (i, zi) in z.iter_mut().enumerate() {
        // input side: z_k = R_kl / λ_l along row k; output side: z_l = R_kl / λ_k along column l
        let found = (0..dim).find_map(|j| match side {
            Side::Input => r[(i, j)].map(|q| q / lambda[j]),
            Side::Output => r[(j, i)].map(|q| q / lambda[j]),
        });
        if let Some(v) = found {
            *zi = v;
        }
    }
    if !z.iter().all(|&x| is_unit(x)) {
        return None;
    }
    let residual = reconstruction_residual(u, &moved, side, &z, lambda);
    if residual > tolerance::PHASE_CONSISTENCY {
        return None;
    }
    Some(PhasePair { sigma: sigma.clone(), side, z, lambda: lambda.to_vec(), components: comps, residual })
}

impl PhasePair {
    /// The phase acquired by ⟨n|m⟩ under the symmetry, Π z^m·Π λ^n on the
    /// input side and Π λ^m·Π z^n on the output side.
    ///
    /// `None` when some component carries unequal photon numbers in and
    /// out: the phase then depends on the free per-component gauge, and a
    /// gauge making it differ from 1 always exists.
    pub fn transition_phase(&self, m: &OccupationVector, n: &OccupationVector) -> Option<Complex64> {
        for c in &self.components {
            let inn: usize = c.rows.iter().map(|&k| m[k]).sum();
            let out: usize = c.cols.iter().map(|&l| n[l]).sum();
            if inn != out {
                return None;
            }
        }
        let (rows, cols) = match self.side {
            Side::Input => (&self.z, &self.lambda),
            Side::Output => (&self.lambda, &self.z),
        };
        let mut p = Complex64::new(1.0, 0.0);
        for (k, &c) in m.counts().iter().enumerate() {
            p *= rows[k].powu(c as u32);
        }
        for (l, &c) in n.counts().iter().enumerate() {
            p *= cols[l].powu(c as u32);
        }
        Some(p)
    }

    /// Whether the symmetry forces ⟨n|m⟩ = 0. The symmetric configuration
    /// must be fixed by σ (input m on the input side, output n on the output side).
    pub fn forces_zero(&self, m: &OccupationVector, n: &OccupationVector) -> bool {
        let fixed = match self.side {
            Side::Input => self.sigma.fixes(m),
            Side::Output => self.sigma.fixes(n),
        };
        fixed
            && match self.transition_phase(m, n) {
                None => true,
                Some(p) => (p - 1.0).norm() > tolerance::PREDICTION,
            }
    }
}

/// Eigenvalue-product rule: true iff |Π Λ_l^{occ_l} − 1| > 1e−8.
///
/// This reads Λ alone and so assumes a gauge in which the symmetric
/// configuration contributes no Z phase; [`PhasePair::forces_zero`] is the
/// gauge-independent test.
pub fn predict_suppressed(pair: &PhasePair, occupation: &OccupationVector) -> bool {
    let mut p = Complex64::new(1.0, 0.0);
    for (l, &c) in occupation.counts().iter().enumerate() {
        p *= pair.lambda[l].powu(c as u32);
    }
    (p - 1.0).norm() > tolerance::PREDICTION
}
