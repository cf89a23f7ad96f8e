//! Fourier-side spherical representation and the angular Littlewood-Paley
//! calculus.
//!
//! An axisymmetric spectrum is resampled onto a `(rho, Lambda)` product
//! grid: Gauss-Legendre nodes in `s = ln rho` on dyadic panels
//! `[2^k, 2^{k+1}]`, Gauss-Legendre nodes in `Lambda` on `[-1, 1]`. On this
//! grid
//!
//! * the scaling field `S = rho d_rho` is a per-panel differentiation
//!   matrix in `s`,
//! * the polar derivative `Upsilon = -sqrt(1-Lambda^2) d_Lambda` acts
//!   through the Legendre basis,
//! * the angular projectors `R_l` are diagonal in Legendre degree: degree
//!   `n` carries the weight `phi(2^{-l} n)` for `l >= 1`, and the bottom
//!   shell `l = 0` carries `psi(n)` so the family telescopes to 1 for
//!   every degree (including the spherical mean `n = 0`).
//!
//! The capped projector `R_l^{(p)}` is zero for `l + p < 0`, the low pass
//! `R_{<=l}` at `l + p = 0` and the band projector above.

use crate::bump::{phi_at, phi_capped, phi_capped_deriv, psi, psi_at};
use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::GridSpec;
use crate::legendre::{
    barycentric_weights, differentiation_matrix, gauss_legendre, gauss_legendre_on, legendre_all,
    MAX_DEGREE,
};
use crate::par;
use crate::C64;
use std::sync::Arc;

/// Largest angular index the artifact supports.
pub const ELL_CAP: i32 = 12;

/// Angular projector selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularOp {
    /// `R_l` (band).
    Band(i32),
    /// `R_{<= l}` (low pass).
    UpTo(i32),
    /// `R_l^{(p)}`: zero for `l+p < 0`, low pass at `l+p = 0`, band else.
    Capped { ell: i32, p: i32 },
}

/// Weight applied to Legendre degree `n` by the band projector `R_l`.
pub fn band_weight(ell: i32, n: usize) -> f64 {
    debug_assert!(ell >= 0);
    if ell == 0 {
        psi(n as f64)
    } else {
        phi_at(ell, n as f64)
    }
}

/// Weight applied by the low pass `R_{<= l}`.
pub fn lowpass_weight(ell: i32, n: usize) -> f64 {
    psi_at(ell, n as f64)
}

fn op_weight(op: AngularOp, n: usize) -> f64 {
    match op {
        AngularOp::Band(ell) => band_weight(ell, n),
        AngularOp::UpTo(ell) => lowpass_weight(ell, n),
        AngularOp::Capped { ell, p } => {
            if ell + p < 0 {
                0.0
            } else if ell + p == 0 {
                lowpass_weight(ell, n)
            } else {
                band_weight(ell, n)
            }
        }
    }
}

/// The `(rho, Lambda)` product grid shared by spherical fields.
pub struct SphericalGrid {
    /// Dyadic panel range: panels `[2^k, 2^{k+1}]` for `k_lo <= k <= k_hi`.
    pub k_lo: i32,
    pub k_hi: i32,
    /// Gauss-Legendre nodes per panel (in `ln rho`).
    pub n_rho: usize,
    /// Largest angular index in play.
    pub ell_max: i32,
    /// All radial nodes, panel-major, ascending.
    pub rho: Vec<f64>,
    /// Radial measure: weight for `integral g rho^2 drho` at each node.
    pub rho_measure: Vec<f64>,
    /// Angular nodes (ascending) and weights on `[-1, 1]`.
    pub lambda: Vec<f64>,
    pub lambda_weight: Vec<f64>,
    /// Legendre degrees tabulated: `0 .. n_deg`.
    pub n_deg: usize,
    /// `L_n(lambda_j)`, row-major `n_deg x n_lambda`.
    legendre_table: Vec<f64>,
    /// Per-panel differentiation matrix in `s = ln rho` (`n_rho x n_rho`);
    /// the node layout is the same affine image on every panel.
    diff_s: Vec<f64>,
    /// Barycentric weights of the per-panel `s`-nodes.
    bary_s: Vec<f64>,
    /// `s`-nodes of the first panel; panel `p` uses `s_nodes0 + p ln 2`.
    s_nodes0: Vec<f64>,
}

impl SphericalGrid {
    pub fn new(k_lo: i32, k_hi: i32, n_rho: usize, ell_max: i32) -> Result<Arc<Self>> {
        if ell_max < 0 || ell_max > ELL_CAP {
            return Err(Error::Refused(format!(
                "angular index cap is {ELL_CAP}, got {ell_max}"
            )));
        }
        if k_hi < k_lo || n_rho < 4 {
            return Err(Error::Config("bad spherical grid extents".into()));
        }
        let n_lambda = 1usize << (ell_max + 2);
        // the rule must integrate products of two tabulated polynomials
        let n_deg = ((1.6 * 2f64.powi(ell_max)).ceil() as usize + 2).min(MAX_DEGREE);
        if 2 * n_lambda - 1 < 2 * n_deg {
            return Err(Error::Refused(format!(
                "{n_lambda} angular nodes cannot integrate degree {} products",
                2 * n_deg
            )));
        }
        let (lambda, lambda_weight) = gauss_legendre(n_lambda)?;
        let mut legendre_table = vec![0.0; n_deg * n_lambda];
        for (j, &x) in lambda.iter().enumerate() {
            let col = legendre_all(n_deg - 1, x);
            for (n, v) in col.iter().enumerate() {
                legendre_table[n * n_lambda + j] = *v;
            }
        }
        // radial nodes: GL in s on [k ln2, (k+1) ln2]
        let ln2 = std::f64::consts::LN_2;
        let mut rho = Vec::new();
        let mut rho_measure = Vec::new();
        let mut s_nodes0 = Vec::new();
        for k in k_lo..=k_hi {
            let a = k as f64 * ln2;
            let (s, ws) = gauss_legendre_on(n_rho, a, a + ln2)?;
            if k == k_lo {
                s_nodes0 = s.clone();
            }
            for (si, wi) in s.iter().zip(&ws) {
                let r = si.exp();
                rho.push(r);
                rho_measure.push(wi * r * r * r); // rho^2 drho = e^{3s} ds
            }
        }
        let diff_s = differentiation_matrix(&s_nodes0);
        let bary_s = barycentric_weights(&s_nodes0);
        Ok(Arc::new(SphericalGrid {
            k_lo,
            k_hi,
            n_rho,
            ell_max,
            rho,
            rho_measure,
            lambda,
            lambda_weight,
            n_deg,
            legendre_table,
            diff_s,
            bary_s,
            s_nodes0,
        }))
    }

    /// Grid sized for band-limited fields of `spec`: panels covering
    /// `[k_min/2, sqrt(3) k_max]`.
    pub fn for_grid(spec: &GridSpec, ell_max: i32, n_rho: usize) -> Result<Arc<Self>> {
        let k_lo = spec.k_min().log2().floor() as i32;
        // dealiased data reaches sqrt(3) * (2/3) k_max at the cube corner
        let k_hi = (1.16 * spec.k_max()).log2().ceil() as i32 - 1;
        SphericalGrid::new(k_lo, k_hi, n_rho, ell_max)
    }

    pub fn n_lambda(&self) -> usize {
        self.lambda.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.rho.len() * self.n_lambda()
    }

    pub fn panels(&self) -> usize {
        (self.k_hi - self.k_lo + 1) as usize
    }

    pub fn rho_min(&self) -> f64 {
        2f64.powi(self.k_lo)
    }

    pub fn rho_max(&self) -> f64 {
        2f64.powi(self.k_hi + 1)
    }

    #[inline]
    pub fn legendre(&self, n: usize, j: usize) -> f64 {
        self.legendre_table[n * self.n_lambda() + j]
    }
}

/// Samples of an axisymmetric spectrum on a [`SphericalGrid`].
#[derive(Clone)]
pub struct SphericalSpectralField {
    pub grid: Arc<SphericalGrid>,
    /// `values[i * n_lambda + j] = fhat(rho_i, lambda_j)`.
    pub values: Vec<C64>,
}

impl SphericalSpectralField {
    pub fn zeros(grid: Arc<SphericalGrid>) -> Self {
        let n = grid.n_nodes();
        SphericalSpectralField {
            grid,
            values: vec![C64::default(); n],
        }
    }

    /// Sample a closed-form spectrum `g(rho, lambda)`.
    pub fn from_fn<F: Fn(f64, f64) -> C64 + Sync>(grid: Arc<SphericalGrid>, g: F) -> Self {
        let nl = grid.n_lambda();
        let values = par::map_indexed(grid.n_nodes(), |idx| {
            let i = idx / nl;
            let j = idx % nl;
            g(grid.rho[i], grid.lambda[j])
        });
        SphericalSpectralField { grid, values }
    }

    /// `L^2(R^3)` norm under the crate Fourier convention:
    /// `(2 pi)^{-3} 2 pi integral |fhat|^2 rho^2 drho dLambda`.
    pub fn l2_norm(&self) -> f64 {
        let nl = self.grid.n_lambda();
        let parts: Vec<f64> = par::map_indexed(self.grid.rho.len(), |i| {
            let mut acc = 0.0;
            for j in 0..nl {
                acc += self.values[i * nl + j].norm_sqr() * self.grid.lambda_weight[j];
            }
            acc * self.grid.rho_measure[i]
        });
        (par::sum_in_order(&parts) / (2.0 * std::f64::consts::PI).powi(2)).sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.values.len(), other.values.len());
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a -= b;
        }
        out
    }

    /// Multiply by a function of `(rho, Lambda)` in place.
    pub fn scale_by<F: Fn(f64, f64) -> f64 + Sync>(&mut self, m: F) {
        let nl = self.grid.n_lambda();
        let grid = self.grid.clone();
        par::for_each_chunk_mut(&mut self.values, nl, |i, row| {
            for (j, v) in row.iter_mut().enumerate() {
                *v *= m(grid.rho[i], grid.lambda[j]);
            }
        });
    }

    /// Legendre coefficients per radial node, row-major
    /// `n_rho_total x n_deg`: `f(rho_i, .) = sum_n c_n L_n`.
    pub fn analyze(&self) -> Vec<C64> {
        let nl = self.grid.n_lambda();
        let nd = self.grid.n_deg;
        let grid = self.grid.clone();
        let rows: Vec<Vec<C64>> = par::map_indexed(self.grid.rho.len(), |i| {
            let mut out = vec![C64::default(); nd];
            for (n, slot) in out.iter_mut().enumerate() {
                let mut acc = C64::default();
                for j in 0..nl {
                    acc += grid.legendre(n, j) * grid.lambda_weight[j] * self.values[i * nl + j];
                }
                *slot = (n as f64 + 0.5) * acc;
            }
            out
        });
        rows.into_iter().flatten().collect()
    }

    /// Inverse of [`SphericalSpectralField::analyze`].
    pub fn synthesize(grid: Arc<SphericalGrid>, coeffs: &[C64]) -> Self {
        let nl = grid.n_lambda();
        let nd = grid.n_deg;
        assert_eq!(coeffs.len(), grid.rho.len() * nd);
        let g = grid.clone();
        let values = par::map_indexed(grid.n_nodes(), |idx| {
            let i = idx / nl;
            let j = idx % nl;
            let mut acc = C64::default();
            for n in 0..nd {
                acc += coeffs[i * nd + n] * g.legendre(n, j);
            }
            acc
        });
        SphericalSpectralField { grid, values }
    }

    /// Apply an angular projector.
    pub fn project_angular(&self, op: AngularOp) -> Self {
        let nd = self.grid.n_deg;
        let mut coeffs = self.analyze();
        for row in coeffs.chunks_mut(nd) {
            for (n, c) in row.iter_mut().enumerate() {
                *c *= op_weight(op, n);
            }
        }
        SphericalSpectralField::synthesize(self.grid.clone(), &coeffs)
    }

    /// Per-degree `L^2(R^3)` masses `||Pi_n f||^2`, summing to `||f||^2`.
    pub fn degree_masses(&self) -> Vec<f64> {
        let nd = self.grid.n_deg;
        let coeffs = self.analyze();
        let mut masses = vec![0.0; nd];
        for (i, row) in coeffs.chunks(nd).enumerate() {
            let w = self.grid.rho_measure[i];
            for (n, c) in row.iter().enumerate() {
                masses[n] += c.norm_sqr() * 2.0 / (2.0 * n as f64 + 1.0) * w;
            }
        }
        let c = (2.0 * std::f64::consts::PI).powi(2);
        for m in &mut masses {
            *m /= c;
        }
        masses
    }

    /// Scaling field `S = rho d_rho` (per-panel spectral differentiation
    /// in `ln rho`).
    pub fn scaling_apply(&self) -> Self {
        let nl = self.grid.n_lambda();
        let nr = self.grid.n_rho;
        let grid = self.grid.clone();
        let values_in = &self.values;
        let values = par::map_indexed(self.values.len(), |idx| {
            let i = idx / nl;
            let j = idx % nl;
            let panel = i / nr;
            let local = i % nr;
            let mut acc = C64::default();
            for l in 0..nr {
                acc += grid.diff_s[local * nr + l] * values_in[(panel * nr + l) * nl + j];
            }
            acc
        });
        SphericalSpectralField {
            grid: self.grid.clone(),
            values,
        }
    }

    /// Polar derivative `Upsilon = -sqrt(1 - Lambda^2) d_Lambda` through
    /// the Legendre basis.
    pub fn upsilon_apply(&self) -> Self {
        let nl = self.grid.n_lambda();
        let nd = self.grid.n_deg;
        let coeffs = self.analyze();
        let grid = self.grid.clone();
        let values = par::map_indexed(self.values.len(), |idx| {
            let i = idx / nl;
            let j = idx % nl;
            let lam = grid.lambda[j];
            let s = (1.0 - lam * lam).sqrt();
            let mut acc = C64::default();
            // Upsilon L_n = -n (L_{n-1} - Lambda L_n) / sqrt(1 - Lambda^2)
            for n in 1..nd {
                let dl = n as f64 * (grid.legendre(n - 1, j) - lam * grid.legendre(n, j)) / s;
                acc -= coeffs[i * nd + n] * dl;
            }
            acc
        });
        SphericalSpectralField {
            grid: self.grid.clone(),
            values,
        }
    }

    /// Vertical derivative
    /// `D_3 = |xi| d_{xi_3} = Lambda S - sqrt(1 - Lambda^2) Upsilon`.
    pub fn d3_apply(&self) -> Self {
        let mut s_part = self.scaling_apply();
        s_part.scale_by(|_, l| l);
        let mut u_part = self.upsilon_apply();
        u_part.scale_by(|_, l| -(1.0 - l * l).sqrt());
        let mut out = s_part;
        for (a, b) in out.values.iter_mut().zip(&u_part.values) {
            *a += b;
        }
        out
    }
}

/// Zonal kernel matrix of `R_l` as a quadrature operator in `Lambda`:
/// `(K f)(lambda_i) = sum_j K[i, j] f(lambda_j)`.
pub fn zonal_kernel(grid: &SphericalGrid, ell: i32) -> Result<Vec<f64>> {
    if ell < 0 || ell > grid.ell_max {
        return Err(Error::Refused(format!(
            "angular index {ell} outside grid cap {}",
            grid.ell_max
        )));
    }
    let nl = grid.n_lambda();
    let nd = grid.n_deg;
    Ok(par::map_indexed(nl * nl, |idx| {
        let i = idx / nl;
        let j = idx % nl;
        let mut acc = 0.0;
        for n in 0..nd {
            let w = band_weight(ell, n);
            if w != 0.0 {
                acc += w * (n as f64 + 0.5) * grid.legendre(n, i) * grid.legendre(n, j);
            }
        }
        acc * grid.lambda_weight[j]
    }))
}

// ---------------------------------------------------------------------
// resampling between the Cartesian grid and the spherical representation
// ---------------------------------------------------------------------

/// `fhat` on the `xi_2 = 0` plane, indexed by wavenumbers `(m_1, m_3)`.
/// For axisymmetric fields this plane determines the spectrum; it doubles
/// as the closed-form-style interpolant handed to quadrature oracles.
pub struct Plane {
    n: usize,
    data: Vec<C64>,
    dxi: f64,
}

/// Build the interpolant of an axisymmetric spectrum.
pub fn spectrum_interpolant(f: &SpectralField) -> Plane {
    Plane::build(f)
}

impl Plane {
    /// `fhat` at `(rho, Lambda)` coordinates.
    pub fn at_spherical(&self, rho: f64, lam: f64) -> C64 {
        self.eval(rho * (1.0 - lam * lam).max(0.0).sqrt(), rho * lam)
    }
}

impl Plane {
    fn build(f: &SpectralField) -> Plane {
        let spec = f.spec;
        let n = spec.n;
        let mut data = vec![C64::default(); n * n];
        for b1 in 0..n {
            for b3 in 0..n {
                data[b1 * n + b3] = f.coeffs[spec.idx(b1, 0, b3)];
            }
        }
        Plane {
            n,
            data,
            dxi: spec.k_min(),
        }
    }

    /// Value at integer wavenumbers; zero outside the representable band.
    #[inline]
    fn at(&self, m1: i64, m3: i64) -> C64 {
        let half = self.n as i64 / 2;
        if m1 <= -half || m1 > half || m3 <= -half || m3 > half {
            return C64::default();
        }
        let b1 = m1.rem_euclid(self.n as i64) as usize;
        let b3 = m3.rem_euclid(self.n as i64) as usize;
        self.data[b1 * self.n + b3]
    }

    /// Tensor 6-point Lagrange interpolation at physical frequency
    /// `(w >= 0, z)`. Quintic order is what keeps the round-trip error
    /// inside the 1e-6 contract on production grids.
    fn eval(&self, w: f64, z: f64) -> C64 {
        let x = w / self.dxi;
        let y = z / self.dxi;
        let ix = x.floor() as i64;
        let iy = y.floor() as i64;
        let wx = uniform_lagrange6(x - ix as f64);
        let wy = uniform_lagrange6(y - iy as f64);
        let mut acc = C64::default();
        for (a, wxa) in wx.iter().enumerate() {
            let m1 = ix - 2 + a as i64;
            let mut row = C64::default();
            for (b, wyb) in wy.iter().enumerate() {
                row += *wyb * self.at(m1, iy - 2 + b as i64);
            }
            acc += *wxa * row;
        }
        acc
    }
}

/// Lagrange weights for the 6 uniform nodes `{-2,-1,0,1,2,3}` at offset
/// `t` in `[0, 1)` from node 0.
#[inline]
fn uniform_lagrange6(t: f64) -> [f64; 6] {
    let mut w = [0.0; 6];
    for (i, wi) in w.iter_mut().enumerate() {
        let xi = i as f64 - 2.0;
        let mut v = 1.0;
        for j in 0..6 {
            if j != i {
                let xj = j as f64 - 2.0;
                v *= (t - xj) / (xi - xj);
            }
        }
        *wi = v;
    }
    w
}

/// Resample an axisymmetric Cartesian spectrum onto the spherical grid.
///
/// Cubic interpolation on the `xi_2 = 0` plane; the documented round-trip
/// accuracy on smooth band-limited spectra is 1e-6 relative, not machine
/// precision.
pub fn cartesian_to_spherical(
    f: &SpectralField,
    grid: Arc<SphericalGrid>,
) -> Result<SphericalSpectralField> {
    let spec = f.spec;
    if 2f64.powi(grid.k_hi) > 3f64.sqrt() * spec.k_max() * (1.0 + 1e-12) {
        return Err(Error::Refused(format!(
            "requested rho shells from {:.3} lie beyond the grid corner {:.3}",
            2f64.powi(grid.k_hi),
            3f64.sqrt() * spec.k_max()
        )));
    }
    let plane = Plane::build(f);
    let nl = grid.n_lambda();
    let g = grid.clone();
    let values = par::map_indexed(grid.n_nodes(), |idx| {
        let i = idx / nl;
        let j = idx % nl;
        let rho = g.rho[i];
        let lam = g.lambda[j];
        plane.eval(rho * (1.0 - lam * lam).sqrt(), rho * lam)
    });
    Ok(SphericalSpectralField { grid, values })
}

/// Evaluate a spherical field back onto the Cartesian grid. Frequencies
/// outside the panel range map to zero; `real` is the caller's claim about
/// the represented function.
pub fn spherical_to_cartesian(
    f: &SphericalSpectralField,
    spec: GridSpec,
    real: bool,
) -> SpectralField {
    let grid = f.grid.clone();
    let nl = grid.n_lambda();
    let nr = grid.n_rho;
    let ln2 = std::f64::consts::LN_2;
    let coeffs = par::map_indexed(spec.len(), |idx| {
        let xi = spec.xi_vec(idx);
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if r2 == 0.0 {
            return C64::default();
        }
        let rho = r2.sqrt();
        if rho < grid.rho_min() || rho >= grid.rho_max() {
            return C64::default();
        }
        let lam = (xi[2] / rho).clamp(-1.0, 1.0);
        let panel =
            (((rho.log2().floor() as i32) - grid.k_lo).max(0) as usize).min(grid.panels() - 1);
        // panel s-nodes are the first panel's plus panel * ln 2
        let s0 = rho.ln() - panel as f64 * ln2;
        // 6-point local Lagrange interpolation in Lambda
        let jc = grid.lambda.partition_point(|v| *v < lam);
        let j0 = jc.saturating_sub(3).min(nl - 6);
        let mut lam_nodes = [0.0; 6];
        let mut svals = [C64::default(); 6];
        for t in 0..6 {
            let j = j0 + t;
            lam_nodes[t] = grid.lambda[j];
            // barycentric in s over the panel's radial nodes
            let mut num = C64::default();
            let mut den = 0.0;
            let mut hit = None;
            for l in 0..nr {
                let d = s0 - grid.s_nodes0[l];
                if d.abs() < 1e-14 {
                    hit = Some(f.values[(panel * nr + l) * nl + j]);
                    break;
                }
                let c = grid.bary_s[l] / d;
                num += c * f.values[(panel * nr + l) * nl + j];
                den += c;
            }
            svals[t] = hit.unwrap_or(num / den);
        }
        let mut acc = C64::default();
        for t in 0..6 {
            let mut w = 1.0;
            for u in 0..6 {
                if u != t {
                    w *= (lam - lam_nodes[u]) / (lam_nodes[t] - lam_nodes[u]);
                }
            }
            acc += w * svals[t];
        }
        acc
    });
    SpectralField { spec, coeffs, real }
}

/// `R_{<= ell}` applied to a Cartesian field through the spherical
/// representation. The complement `f - result` is then an exact
/// decomposition of `f`.
pub fn angular_lowpass_cartesian(
    f: &SpectralField,
    ell: i32,
    grid: Arc<SphericalGrid>,
) -> Result<SpectralField> {
    let sph = cartesian_to_spherical(f, grid)?;
    let low = sph.project_angular(AngularOp::UpTo(ell));
    Ok(spherical_to_cartesian(&low, f.spec, f.real))
}

/// `||[Omega_{j3}, P_{k,p}] f|| / ||f||` on an axisymmetric spectrum.
///
/// The commutator is multiplication by `-cos(theta) Upsilon(m)` with
/// `m = phi(2^{-k} rho) phi_capped(p, sqrt(1-Lambda^2))`; averaging
/// `cos^2 theta` over the azimuth gives the factor 1/2.
pub fn commutator_p_ratio(f: &SphericalSpectralField, k: i32, p: i32) -> f64 {
    let grid = &f.grid;
    let nl = grid.n_lambda();
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..grid.rho.len() {
        let radial = phi_at(k, grid.rho[i]);
        for j in 0..nl {
            let lam = grid.lambda[j];
            let s = (1.0 - lam * lam).sqrt();
            // Upsilon(phi_capped(p, s)) = lambda * phi_capped'(p, s)
            let ups_m = radial * lam * phi_capped_deriv(p, s);
            let w = grid.rho_measure[i] * grid.lambda_weight[j];
            let a2 = f.values[i * nl + j].norm_sqr() * w;
            num += 0.5 * ups_m * ups_m * a2;
            den += a2;
        }
    }
    if den == 0.0 {
        0.0
    } else {
        (num / den).sqrt()
    }
}
