use crate::error::{Error, Result};

/// Dense real symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSym {
    dim: usize,
    entries: Vec<f64>,
}

impl MatrixSym {
    /// Builds a matrix from rows, rejecting input that is not symmetric to
    /// within `1e-12 * max|a|`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter("matrix must be square and nonempty".into()));
        }
        let entries: Vec<f64> = rows.iter().flatten().copied().collect();
        let m = Self { dim, entries };
        let scale = m.max_abs();
        for j in 0..dim {
            for k in 0..j {
                if (m.get(j, k) - m.get(k, j)).abs() > 1e-12 * scale {
                    return Err(Error::InvalidParameter(format!(
                        "matrix not symmetric at ({j}, {k})"
                    )));
                }
            }
        }
        Ok(m)
    }

    /// Builds a symmetric matrix from a generator evaluated on the upper
    /// triangle.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for j in 0..dim {
            for k in j..dim {
                let v = f(j, k);
                entries[j * dim + k] = v;
                entries[k * dim + j] = v;
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |j, k| if j == k { 1.0 } else { 0.0 })
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |j, k| if j == k { diag[j] } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.dim + k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on the given (sorted) indices.
    pub fn principal(&self, keep: &[usize]) -> MatrixSym {
        MatrixSym::from_fn(keep.len(), |j, k| self.get(keep[j], keep[k]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Full eigendecomposition by cyclic Jacobi rotations, eigenvalues ascending.
pub fn sym_eig(m: &MatrixSym) -> Vec<EigenPair> {
    let n = m.dim();
    let mut a = m.rows();
    let mut v: Vec<Vec<f64>> = MatrixSym::identity(n).rows();
    let scale = m.max_abs();

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p][q] * a[p][q])
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut pairs: Vec<EigenPair> = (0..n)
        .map(|k| EigenPair {
            value: a[k][k],
            vector: v.iter().map(|row| row[k]).collect(),
        })
        .collect();
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    pairs
}

/// Result of [`solve_and_det`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solve {
    pub solution: Vec<f64>,
    pub det: f64,
    /// `|det| < 1e-12 * (max row norm)^dim`; the solution is meaningless then.
    pub singular: bool,
}

/// Gaussian elimination with partial pivoting. Singularity is reported through
/// the flag rather than as an error.
pub fn solve_and_det(b: &MatrixSym, rhs: &[f64]) -> Result<Solve> {
    let n = b.dim();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let mut a = b.rows();
    let mut x = rhs.to_vec();
    let row_norm = a
        .iter()
        .map(|r| r.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let threshold = 1e-12 * row_norm.powi(n as i32);
    let mut det = 1.0;
    let mut exact_zero = false;

    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            exact_zero = true;
            det = 0.0;
            break;
        }
        if pivot != col {
            a.swap(pivot, col);
            x.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in (col + 1)..n {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            x[r] -= factor * x[col];
        }
    }

    let singular = exact_zero || det.abs() < threshold;
    if singular {
        return Ok(Solve {
            solution: vec![f64::NAN; n],
            det,
            singular,
        });
    }
    for r in (0..n).rev() {
        let tail: f64 = ((r + 1)..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (x[r] - tail) / a[r][r];
    }
    Ok(Solve {
        solution: x,
        det,
        singular,
    })
}
