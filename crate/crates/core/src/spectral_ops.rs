//! Spectral differential operators, the Leray projector, the Coriolis
//! rotation, axisymmetry checks and dealiased products.

use crate::field::{SpectralField, VectorFieldSpectral};
use crate::fft;
use crate::grid::GridSpec;
use crate::par;
use crate::C64;

/// Outcome of an axisymmetry check.
#[derive(Debug, Clone, Copy)]
pub struct AxisymmetryCheck {
    /// `||Omega f||_{L^2} / ||f||_{L^2}`; 0 with `zero_field` set when the
    /// field vanishes.
    pub residual: f64,
    pub zero_field: bool,
}

impl AxisymmetryCheck {
    pub fn is_axisymmetric(&self) -> bool {
        self.zero_field || self.residual <= 1e-10
    }
}

/// Spectral partial derivative `d_j f`.
pub fn derivative(f: &SpectralField, j: usize) -> SpectralField {
    f.multiplied(|xi| C64::new(0.0, xi[j]), true)
}

/// The rotation vector field on scalars, `Omega f = x1 d2 f - x2 d1 f`,
/// with derivatives taken spectrally and the coordinate products in
/// physical space.
pub fn omega_apply(f: &SpectralField) -> SpectralField {
    let spec = f.spec;
    let d1 = derivative(f, 0).to_physical();
    let d2 = derivative(f, 1).to_physical();
    let n = spec.n;
    let phys: Vec<C64> = par::map_indexed(spec.len(), |idx| {
        let (i1, i2, _) = spec.unidx(idx);
        let _ = n;
        let x1 = spec.coord(i1);
        let x2 = spec.coord(i2);
        x1 * d2[idx] - x2 * d1[idx]
    });
    SpectralField {
        spec,
        coeffs: fft::engine(spec.n).forward(&spec, &phys),
        real: f.real,
    }
}

/// Scaling vector field acting on the coefficient side:
/// the returned field has coefficients `rho d_rho fhat`.
///
/// Computed through the exact identity
/// `F(x.grad f) = -3 fhat - rho d_rho fhat`, i.e. as `-3f - x.grad f`.
pub fn scaling_profile(f: &SpectralField) -> SpectralField {
    let spec = f.spec;
    let grads: Vec<Vec<C64>> = (0..3).map(|j| derivative(f, j).to_physical()).collect();
    let phys: Vec<C64> = par::map_indexed(spec.len(), |idx| {
        let (i1, i2, i3) = spec.unidx(idx);
        let x = [spec.coord(i1), spec.coord(i2), spec.coord(i3)];
        -(x[0] * grads[0][idx] + x[1] * grads[1][idx] + x[2] * grads[2][idx])
    });
    let mut out = SpectralField {
        spec,
        coeffs: fft::engine(spec.n).forward(&spec, &phys),
        real: f.real,
    };
    out.add_scaled(f, -3.0);
    out
}

/// Physical-side scaling vector field `S f = x.grad f`.
pub fn scaling_physical(f: &SpectralField) -> SpectralField {
    let mut out = scaling_profile(f);
    out.scale(-1.0);
    out.add_scaled(f, -3.0);
    out
}

/// Axisymmetry residual `||Omega f|| / ||f||`.
pub fn check_axisymmetry(f: &SpectralField) -> AxisymmetryCheck {
    let nf = f.l2_norm();
    if nf == 0.0 {
        return AxisymmetryCheck {
            residual: 0.0,
            zero_field: true,
        };
    }
    AxisymmetryCheck {
        residual: omega_apply(f).l2_norm() / nf,
        zero_field: false,
    }
}

/// Mode-wise Leray projection `uhat -> uhat - xi (xi.uhat)/|xi|^2`.
/// The zero mode is untouched.
pub fn leray_project(v: &VectorFieldSpectral) -> VectorFieldSpectral {
    let spec = v.spec();
    let mut out = v.clone();
    let n = spec.n;
    let coeffs: Vec<[C64; 3]> = par::map_indexed(spec.len(), |idx| {
        let xi = spec.xi_vec(idx);
        let _ = n;
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        let u = [
            v.u[0].coeffs[idx],
            v.u[1].coeffs[idx],
            v.u[2].coeffs[idx],
        ];
        if r2 == 0.0 {
            return u;
        }
        let dot = (xi[0] * u[0] + xi[1] * u[1] + xi[2] * u[2]) / r2;
        [u[0] - xi[0] * dot, u[1] - xi[1] * dot, u[2] - xi[2] * dot]
    });
    for a in 0..3 {
        for (idx, c) in coeffs.iter().enumerate() {
            out.u[a].coeffs[idx] = c[a];
        }
    }
    out.divergence_free = true;
    out
}

/// Coriolis force `e3 x u = (-u2, u1, 0)`.
pub fn coriolis_apply(v: &VectorFieldSpectral) -> VectorFieldSpectral {
    let mut u2 = v.u[1].clone();
    u2.scale(-1.0);
    VectorFieldSpectral {
        u: [u2, v.u[0].clone(), SpectralField::zeros(v.spec())],
        divergence_free: false,
    }
}

/// Zero all modes with `|m_j| > n/3` on any axis (2/3-rule dealiasing).
pub fn dealias(f: &mut SpectralField) {
    let spec = f.spec;
    let n = spec.n;
    let cut = (n / 3) as i64;
    par::for_each_chunk_mut(&mut f.coeffs, n * n, |i1, slab| {
        let m1 = spec.wavenumber(i1).abs();
        for i2 in 0..n {
            let m2 = spec.wavenumber(i2).abs();
            for i3 in 0..n {
                let m3 = spec.wavenumber(i3).abs();
                if m1 > cut || m2 > cut || m3 > cut {
                    slab[i2 * n + i3] = C64::default();
                }
            }
        }
    });
}

/// Pointwise physical product of two real spectral fields, transformed back
/// and truncated to the dealiased band.
pub fn product(f: &SpectralField, g: &SpectralField) -> SpectralField {
    product_phys(f.spec, &f.to_physical(), &g.to_physical(), f.real && g.real)
}

/// Product from precomputed physical samples.
pub fn product_phys(spec: GridSpec, a: &[C64], b: &[C64], real: bool) -> SpectralField {
    let phys: Vec<C64> = par::map_indexed(spec.len(), |idx| a[idx] * b[idx]);
    let mut out = SpectralField {
        spec,
        coeffs: fft::engine(spec.n).forward(&spec, &phys),
        real,
    };
    dealias(&mut out);
    out
}
