//! Legendre polynomials, Gauss-Legendre quadrature and barycentric
//! interpolation utilities.
//!
//! Everything here uses the stable ascending three-term recurrence
//! `(n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}`; degrees are capped at 2^12.

use crate::error::{Error, Result};

/// Hard cap on Legendre degrees, for numerical stability at desk scale.
pub const MAX_DEGREE: usize = 1 << 12;

/// `P_0(x) .. P_{nmax}(x)` by the ascending recurrence.
pub fn legendre_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(1.0);
    if nmax == 0 {
        return out;
    }
    out.push(x);
    for n in 1..nmax {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * out[n] - nf * out[n - 1]) / (nf + 1.0);
        out.push(next);
    }
    out
}

/// Single value `P_n(x)`.
pub fn legendre(n: usize, x: f64) -> f64 {
    *legendre_all(n, x).last().unwrap()
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::Config(format!(
            "Gauss-Legendre order must be in 1..={MAX_DEGREE}, got {n}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let p = legendre_all(n, x);
            let pn = p[n];
            let pn1 = p[n - 1];
            // (1 - x^2) P_n' = n (P_{n-1} - x P_n)
            dp = n as f64 * (pn1 - x * pn) / (1.0 - x * x);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok((nodes, weights))
}

/// Gauss-Legendre rule mapped onto `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (x, w) = gauss_legendre(n)?;
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    Ok((
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    ))
}

/// Barycentric weights for arbitrary distinct nodes.
pub fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    // rescale differences to avoid under/overflow for clustered nodes
    let scale = 4.0 / (nodes[n - 1] - nodes[0]).abs().max(f64::MIN_POSITIVE);
    let mut w = vec![1.0; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[i] *= (nodes[i] - nodes[j]) * scale;
            }
        }
        w[i] = 1.0 / w[i];
    }
    w
}

/// Evaluate the Lagrange interpolant through `(nodes, values)` at `x`.
pub fn barycentric_eval(nodes: &[f64], bary: &[f64], values: &[crate::C64], x: f64) -> crate::C64 {
    let mut num = crate::C64::default();
    let mut den = 0.0;
    for i in 0..nodes.len() {
        let d = x - nodes[i];
        if d.abs() < 1e-300 {
            return values[i];
        }
        let c = bary[i] / d;
        num += c * values[i];
        den += c;
    }
    num / den
}

/// Differentiation matrix on arbitrary nodes (derivative of the global
/// Lagrange interpolant, evaluated at the nodes).
pub fn differentiation_matrix(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let w = barycentric_weights(nodes);
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (nodes[i] - nodes[j]);
                d[i * n + j] = v;
                row_sum += v;
            }
        }
        d[i * n + i] = -row_sum;
    }
    d
}
