//! Seeded generators for admissible test data.
//!
//! All families are smooth functions of `xi` (polynomial-times-Gaussian
//! profiles, so physical-space tails are negligible on the box), carry no
//! energy on the vertical axis, and are band-limited inside the dealiased
//! cube.

use crate::field::SpectralField;
use crate::grid::GridSpec;
use crate::legendre::legendre_all;
use crate::spectral_ops::dealias;
use crate::C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generic axisymmetric real field with radial Gaussian envelope and a
/// seeded Legendre modulation in `Lambda`, normalized to the requested
/// `L^2` amplitude.
///
/// Even Legendre degrees enter the real part and odd degrees the imaginary
/// part, which is exactly the Hermitian symmetry of a real field. The even
/// radial prefactors `rho^6`, `rho^7` make every term a polynomial in `xi`
/// times a Gaussian, hence smooth on all of R^3. Degree-0 content is kept
/// at full weight so the family has mass near the frequency poles, where
/// linear decay saturates its critical rate.
pub fn generic_axisymmetric(spec: GridSpec, seed: u64, amplitude: f64) -> SpectralField {
    // width chosen so physical tails are negligible on boxes down to L = 16
    let sigma = (14.0 / spec.box_len).max(0.45);
    generic_axisymmetric_sigma(spec, seed, amplitude, sigma)
}

/// [`generic_axisymmetric`] with an explicit radial envelope width.
pub fn generic_axisymmetric_sigma(
    spec: GridSpec,
    seed: u64,
    amplitude: f64,
    sigma: f64,
) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = [0.0f64; 4]; // degrees 0, 2, 4, 6
    let mut b = [0.0f64; 3]; // degrees 1, 3, 5
    a[0] = 1.0;
    for v in a.iter_mut().skip(1) {
        *v = rng.random_range(-0.6..0.6);
    }
    for v in b.iter_mut() {
        *v = rng.random_range(-0.6..0.6);
    }
    let mut f = SpectralField::from_spectral_fn(spec, true, |xi| {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if r2 == 0.0 {
            return C64::default();
        }
        let rho = r2.sqrt();
        let lam = xi[2] / rho;
        let env = (-r2 / (2.0 * sigma * sigma)).exp();
        let l = legendre_all(6, lam);
        let even = a[0] * l[0] + a[1] * l[2] + a[2] * l[4] + a[3] * l[6];
        let odd = b[0] * l[1] + b[1] * l[3] + b[2] * l[5];
        let r6 = r2 * r2 * r2;
        C64::new(r6 * even * env, r6 * rho / sigma * odd * env)
    });
    f.zero_axis();
    dealias(&mut f);
    let n = f.l2_norm();
    if n > 0.0 {
        f.scale(amplitude / n);
    }
    f
}

/// Generic axisymmetric data vanishing to high order at the frequency
/// poles (`(1 - Lambda^2)^3` weight).
///
/// Velocity fields reconstructed from such pairs have smooth spectra at the
/// vertical axis, so vector-field identities can be verified at machine-level
/// tolerances. Pole-mass data ([`generic_axisymmetric`]) is the right
/// choice for decay-rate experiments instead; its reconstructed velocities
/// carry a conical spectrum singularity on the axis.
pub fn equatorial_axisymmetric(spec: GridSpec, seed: u64, amplitude: f64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = (14.0 / spec.box_len).max(0.45);
    let a: [f64; 3] = [
        1.0,
        rng.random_range(-0.6..0.6),
        rng.random_range(-0.6..0.6),
    ];
    let b: [f64; 2] = [rng.random_range(-0.6..0.6), rng.random_range(-0.6..0.6)];
    // polynomial-times-Gaussian throughout, so the spectrum is entire and
    // physical tails stay at the box-truncation floor
    let mut f = SpectralField::from_spectral_fn(spec, true, |xi| {
        let h2 = xi[0] * xi[0] + xi[1] * xi[1];
        let r2 = h2 + xi[2] * xi[2];
        if r2 == 0.0 {
            return C64::default();
        }
        let z = xi[2] / sigma;
        let env = (-r2 / (2.0 * sigma * sigma)).exp();
        let h6 = h2 * h2 * h2;
        let even = a[0] + a[1] * z * z + a[2] * z * z * z * z;
        let odd = b[0] + b[1] * z * z;
        C64::new(h6 * even * env, h6 * z * odd * env)
    });
    f.zero_axis();
    dealias(&mut f);
    let n = f.l2_norm();
    if n > 0.0 {
        f.scale(amplitude / n);
    }
    f
}

/// The radial Gaussian `f(x) = e^{-|x|^2/2}`, sampled in physical space.
pub fn radial_gaussian(spec: GridSpec) -> SpectralField {
    SpectralField::from_physical_fn(spec, |x| {
        (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0).exp()
    })
}

/// Frequency-side radial Gaussian profile `fhat = (2 pi)^{3/2} e^{-rho^2/2}`
/// as a closed form, for quadrature oracles.
pub fn radial_gaussian_spectrum(rho: f64) -> f64 {
    (2.0 * std::f64::consts::PI).powf(1.5) * (-rho * rho / 2.0).exp()
}

/// Real axisymmetric data localized in the dyadic shell `k` with angular
/// profile concentrated near `Lambda^2 = 1/2`, i.e. in the `p ~ 0, q ~ 0`
/// sector away from both poles and equator. Unit `L^2` norm.
pub fn shell_localized_pq0(spec: GridSpec, k: i32) -> SpectralField {
    let center = 2f64.powi(k);
    let width = 0.25 * center;
    let mut f = SpectralField::from_spectral_fn(spec, true, |xi| {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if r2 == 0.0 {
            return C64::default();
        }
        let rho = r2.sqrt();
        let lam2 = xi[2] * xi[2] / r2;
        let radial = (-((rho - center) / width).powi(2)).exp()
            * crate::bump::smoothstep4((rho - 0.3 * center) / (0.3 * center));
        let angular = (4.0 * lam2 * (1.0 - lam2)).powi(4);
        C64::new(radial * angular, 0.0)
    });
    f.zero_axis();
    dealias(&mut f);
    let n = f.l2_norm();
    if n > 0.0 {
        f.scale(1.0 / n);
    }
    f
}

/// Band-limited generic data concentrated in dyadic shell `k`, keeping the
/// full angular range (pole mass included). Unit `L^2` norm.
pub fn shell_localized_generic(spec: GridSpec, k: i32, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = 2f64.powi(k);
    let width = 0.3 * center;
    let mut coef = [0.0f64; 4];
    coef[0] = 1.0;
    for v in coef.iter_mut().skip(1) {
        *v = rng.random_range(-0.5..0.5);
    }
    let mut f = SpectralField::from_spectral_fn(spec, true, |xi| {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        if r2 == 0.0 {
            return C64::default();
        }
        let rho = r2.sqrt();
        let lam = xi[2] / rho;
        let radial = (-((rho - center) / width).powi(2)).exp()
            * crate::bump::smoothstep4((rho - 0.3 * center) / (0.3 * center));
        let l = legendre_all(6, lam);
        let even = coef[0] + coef[1] * l[2] + coef[2] * l[4] + coef[3] * l[6];
        C64::new(radial * even, 0.0)
    });
    f.zero_axis();
    dealias(&mut f);
    let n = f.l2_norm();
    if n > 0.0 {
        f.scale(1.0 / n);
    }
    f
}
