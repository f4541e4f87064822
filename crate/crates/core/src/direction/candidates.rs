use crate::error::{Error, Result};
use crate::localization::MomentSet;
use crate::numerics::{solve_and_det, MatrixSym};

const SYMMETRY_TOL: f64 = 1e-6;

/// `A_jk = (M_k M̂_j + M_j M̂_k)/2` from the normalized variances along the
/// axes, so that `UP_L = vᵀAv` with `v_k = L_k²`.
///
/// The reduction needs vanishing mixed second moments in time and frequency;
/// a violation above `1e-6` relative is reported as an error.
pub fn build_a_matrix(m: &MomentSet) -> Result<MatrixSym> {
    let t = m.time_covariance();
    let f = m.freq_covariance();
    let d = m.dim();
    for (name, c) in [("time", &t), ("frequency", &f)] {
        for j in 0..d {
            for k in 0..j {
                let scale = (c.get(j, j) * c.get(k, k)).abs().sqrt();
                if c.get(j, k).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::SymmetryViolation(format!(
                        "mixed {name} moment ({j}, {k}) = {:e}",
                        c.get(j, k)
                    )));
                }
            }
        }
    }
    let mk: Vec<f64> = (0..d).map(|k| 4.0 * std::f64::consts::PI.powi(2) * t.get(k, k)).collect();
    let mh: Vec<f64> = (0..d).map(|k| f.get(k, k)).collect();
    Ok(MatrixSym::from_fn(d, |j, k| 0.5 * (mk[k] * mh[j] + mk[j] * mh[k])))
}

/// A stationary point of `vᵀAv` on a face of the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    /// Unit direction with `L_k = √v_k`.
    pub direction: Vec<f64>,
    /// Point of the simplex.
    pub v: Vec<f64>,
    pub up_value: f64,
    /// Indices removed from `A` to reach this face.
    pub removed: Vec<usize>,
}

/// All candidates with the positions of the extremes.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub candidates: Vec<Candidate>,
    pub min_index: usize,
    pub max_index: usize,
}

impl CandidateSet {
    pub fn min(&self) -> &Candidate {
        &self.candidates[self.min_index]
    }

    pub fn max(&self) -> &Candidate {
        &self.candidates[self.max_index]
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }
}

/// Enumerates every principal submatrix `B` of `A` (every subset of removed
/// indices, the empty one included), solves `B y = E`, and keeps nonsingular
/// solutions with `y ≥ -1e-12` after scaling onto the simplex. The vertices
/// `e_k` are always present.
pub fn extremal_directions(a: &MatrixSym) -> CandidateSet {
    let d = a.dim();
    let mut candidates: Vec<Candidate> = Vec::new();
    let push = |v: Vec<f64>, removed: Vec<usize>, out: &mut Vec<Candidate>| {
        if out
            .iter()
            .any(|c| c.v.iter().zip(&v).all(|(p, q)| (p - q).abs() < 1e-9))
        {
            return;
        }
        let direction = v.iter().map(|x| x.max(0.0).sqrt()).collect();
        out.push(Candidate {
            direction,
            up_value: a.quadratic_form(&v),
            v,
            removed,
        });
    };

    for mask in 1u32..(1 << d) {
        let keep: Vec<usize> = (0..d).filter(|k| mask & (1 << k) != 0).collect();
        let removed: Vec<usize> = (0..d).filter(|k| mask & (1 << k) == 0).collect();
        let b = a.principal(&keep);
        let Ok(sol) = solve_and_det(&b, &vec![1.0; keep.len()]) else {
            continue;
        };
        if sol.singular || sol.solution.iter().any(|y| *y < -1e-12) {
            continue;
        }
        let l1: f64 = sol.solution.iter().map(|y| y.abs()).sum();
        if !(l1 > 0.0) {
            continue;
        }
        let mut v = vec![0.0; d];
        for (i, &k) in keep.iter().enumerate() {
            v[k] = (sol.solution[i] / l1).max(0.0);
        }
        push(v, removed, &mut candidates);
    }
    for k in 0..d {
        let mut v = vec![0.0; d];
        v[k] = 1.0;
        push(v, (0..d).filter(|&j| j != k).collect(), &mut candidates);
    }

    let order = |i: &usize, j: &usize| {
        let (p, q) = (&candidates[*i], &candidates[*j]);
        p.up_value
            .total_cmp(&q.up_value)
            .then_with(|| lexicographic(&p.direction, &q.direction))
    };
    let idx: Vec<usize> = (0..candidates.len()).collect();
    let min_index = *idx.iter().min_by(|a, b| order(a, b)).expect("vertices present");
    let max_index = *idx.iter().max_by(|a, b| order(a, b)).expect("vertices present");
    CandidateSet {
        candidates,
        min_index,
        max_index,
    }
}

fn lexicographic(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}
