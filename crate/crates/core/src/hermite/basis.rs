use std::f64::consts::PI;

/// `π^{-1/4}`.
pub(crate) fn pi_quarter_inv() -> f64 {
    PI.powf(-0.25)
}

/// Orthonormal Hermite function `h_k(y) = (2^k k! √π)^{-1/2} H_k(y) e^{-y²/2}`,
/// evaluated with the three-term recurrence
/// `h_k = y √(2/k) h_{k-1} - √((k-1)/k) h_{k-2}`.
pub fn hermite_function(k: usize, y: f64) -> f64 {
    let mut row = vec![0.0; k + 1];
    hermite_row(y, &mut row);
    row[k] * (-0.5 * y * y).exp()
}

/// `h_k` at each point.
pub fn hermite_values(k: usize, points: &[f64]) -> Vec<f64> {
    points.iter().map(|&y| hermite_function(k, y)).collect()
}

/// Fills `out[k] = h_k(y) e^{y²/2}` for `k < out.len()`, i.e. the recurrence
/// without the Gaussian factor.
pub(crate) fn hermite_row(y: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = pi_quarter_inv();
    if out.len() > 1 {
        out[1] = 2f64.sqrt() * y * out[0];
    }
    for k in 2..out.len() {
        let kf = k as f64;
        out[k] = y * (2.0 / kf).sqrt() * out[k - 1] - ((kf - 1.0) / kf).sqrt() * out[k - 2];
    }
}

/// Gauss–Hermite rule for weight `e^{-x²}`: nodes (descending) and weights,
/// by Newton iteration on the normalised recurrence.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pi_quarter_inv();
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h0_at_origin() {
        assert!((hermite_function(0, 0.0) - 0.751_125_544_464_942_5).abs() < 1e-15);
    }

    #[test]
    fn h1_is_odd() {
        assert_eq!(hermite_function(1, 0.0), 0.0);
        assert!((hermite_function(1, 0.7) + hermite_function(1, -0.7)).abs() < 1e-16);
    }

    #[test]
    fn closed_forms() {
        // h_2(y) = (2y² - 1) e^{-y²/2} / √(2√π)
        let y: f64 = 0.37;
        let want = (2.0 * y * y - 1.0) * (-0.5 * y * y).exp() / (2.0 * PI.sqrt()).sqrt();
        assert!((hermite_function(2, y) - want).abs() < 1e-15);
    }

    #[test]
    fn weights_integrate_polynomials() {
        let (x, w) = gauss_hermite(20);
        let total: f64 = w.iter().sum();
        assert!((total - PI.sqrt()).abs() < 1e-13);
        let second: f64 = x.iter().zip(&w).map(|(a, b)| a * a * b).sum();
        assert!((second - PI.sqrt() / 2.0).abs() < 1e-13);
        let sixth: f64 = x.iter().zip(&w).map(|(a, b)| a.powi(6) * b).sum();
        assert!((sixth - 15.0 * PI.sqrt() / 8.0).abs() < 1e-12);
    }

    #[test]
    fn orthonormality_by_quadrature() {
        let (x, w) = gauss_hermite(30);
        let inner = |j: usize, k: usize| -> f64 {
            x.iter()
                .zip(&w)
                .map(|(&y, &wt)| {
                    let mut row = vec![0.0; 12];
                    hermite_row(y, &mut row);
                    wt * row[j] * row[k]
                })
                .sum()
        };
        assert!((inner(3, 3) - 1.0).abs() < 1e-10);
        for j in 0..10 {
            for k in 0..10 {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((inner(j, k) - want).abs() < 1e-12, "({j},{k})");
            }
        }
    }
}
