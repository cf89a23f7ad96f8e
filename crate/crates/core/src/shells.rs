//! Dyadic and anisotropic Littlewood-Paley projectors.
//!
//! `P_k` localizes `|xi| ~ 2^k`, `P_{k,p}` additionally localizes
//! `sqrt(1 - Lambda^2) ~ 2^p` (distance to the vertical axis in angle) and
//! `P_{k,p,q}` localizes `|Lambda| ~ 2^q`. The indices `p, q` are capped at
//! zero with the top shell defined as one minus the sum of all lower
//! shells, so the capped families tile `(0, 1]` exactly. On the support of
//! `P_{k,p,q}` one has `2^{2p} + 2^q ~ 1` and `2^{2p+q} = min(2^{2p}, 2^q)`;
//! index pairs violating this carry empty shells.

use crate::bump::{phi_at, phi_capped, phi_capped_support, phi_support};
use crate::field::SpectralField;
use crate::grid::GridSpec;
use serde::Serialize;

/// Localization address `(k, p, q)`; the angular index lives separately
/// because it acts on a different representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ShellIndex {
    pub k: i32,
    /// Nonpositive: `sqrt(1 - Lambda^2) ~ 2^p`.
    pub p: i32,
    /// Nonpositive: `|Lambda| ~ 2^q`.
    pub q: i32,
}

impl ShellIndex {
    pub fn new(k: i32, p: i32, q: i32) -> Self {
        assert!(p <= 0 && q <= 0, "p and q are nonpositive indices");
        ShellIndex { k, p, q }
    }

    /// Whether the continuum support of the `(p, q)` sector is nonempty,
    /// i.e. whether `2^{2p} + 2^q ~ 1` is satisfiable.
    pub fn sector_nonempty(&self) -> bool {
        let (s_lo, s_hi) = phi_capped_support(self.p);
        let (l_lo, l_hi) = phi_capped_support(self.q);
        let s_hi = s_hi.min(1.0);
        let l_hi = l_hi.min(1.0);
        if s_lo >= 1.0 || l_lo >= 1.0 {
            return false;
        }
        // lambda^2 must land in both [l_lo^2, l_hi^2] and [1-s_hi^2, 1-s_lo^2]
        let a = l_lo * l_lo;
        let b = l_hi * l_hi;
        let c = (1.0 - s_hi * s_hi).max(0.0);
        let d = 1.0 - s_lo * s_lo;
        a.max(c) < b.min(d)
    }
}

/// `Lambda(xi) = xi_3/|xi|` and `sqrt(1 - Lambda^2)`; zero vector maps to
/// `(0, 0)` so every cutoff vanishes there.
#[inline]
pub fn angles(xi: [f64; 3]) -> (f64, f64) {
    let h = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
    let r = (h * h + xi[2] * xi[2]).sqrt();
    if r == 0.0 {
        (0.0, 0.0)
    } else {
        (xi[2] / r, h / r)
    }
}

#[inline]
pub fn multiplier_k(k: i32, xi: [f64; 3]) -> f64 {
    let r = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
    phi_at(k, r)
}

#[inline]
pub fn multiplier_kp(k: i32, p: i32, xi: [f64; 3]) -> f64 {
    let (_, s) = angles(xi);
    multiplier_k(k, xi) * phi_capped(p, s)
}

#[inline]
pub fn multiplier_kpq(idx: ShellIndex, xi: [f64; 3]) -> f64 {
    let (l, s) = angles(xi);
    multiplier_k(idx.k, xi) * phi_capped(idx.p, s) * phi_capped(idx.q, l)
}

pub fn project_k(f: &SpectralField, k: i32) -> SpectralField {
    f.multiplied(|xi| multiplier_k(k, xi).into(), true)
}

pub fn project_kp(f: &SpectralField, k: i32, p: i32) -> SpectralField {
    f.multiplied(|xi| multiplier_kp(k, p, xi).into(), true)
}

pub fn project_kpq(f: &SpectralField, idx: ShellIndex) -> SpectralField {
    f.multiplied(|xi| multiplier_kpq(idx, xi).into(), true)
}

/// Number of grid modes with a nonzero `P_{k,p,q}` cutoff.
pub fn shell_support_count(spec: &GridSpec, idx: ShellIndex) -> usize {
    let mut count = 0;
    for flat in 0..spec.len() {
        if multiplier_kpq(idx, spec.xi_vec(flat)) != 0.0 {
            count += 1;
        }
    }
    count
}

/// Dyadic `k` range whose shells can intersect the resolved band of the
/// grid (including cube corners up to `sqrt(3) k_max`).
pub fn resolved_k_range(spec: &GridSpec) -> (i32, i32) {
    let lo = (spec.k_min().log2().floor() as i32) - 1;
    let hi = ((3f64.sqrt() * spec.k_max()).log2().ceil() as i32) + 1;
    (lo, hi)
}

/// All `(p, q)` sector pairs with nonempty continuum support, for
/// `p >= p_floor`, `q >= 2 p_floor`.
pub fn sector_pairs(p_floor: i32) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for p in p_floor..=0 {
        for q in (2 * p_floor)..=0 {
            if ShellIndex::new(0, p, q).sector_nonempty() {
                out.push((p, q));
            }
        }
    }
    out
}

/// Support bounds of `phi(2^{-k} |xi|)` in `|xi|`.
pub fn k_support(k: i32) -> (f64, f64) {
    phi_support(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SpectralField;

    fn test_field() -> SpectralField {
        let spec = GridSpec::new(32, 16.0).unwrap();
        // band-limited generic axisymmetric data, no axis content
        let mut f = SpectralField::from_spectral_fn(spec, true, |xi| {
            let h2 = xi[0] * xi[0] + xi[1] * xi[1];
            let r2 = h2 + xi[2] * xi[2];
            (h2 * (1.0 + 0.3 * xi[2]) * (-r2 / 2.0).exp()).into()
        });
        f.zero_axis();
        f
    }

    #[test]
    fn k_partition_of_unity_on_band_limited_data() {
        let f = test_field();
        let spec = f.spec;
        let (lo, hi) = resolved_k_range(&spec);
        let mut acc = SpectralField::zeros(spec);
        for k in lo..=hi {
            acc.add_scaled(&project_k(&f, k), 1.0);
        }
        let err = acc.sub(&f).l2_norm() / f.l2_norm();
        assert!(err < 1e-10, "partition residual {err}");
    }

    #[test]
    fn incompatible_pq_sector_is_empty() {
        // 2^{2p} + 2^q far below 1: both p and q very negative
        let idx = ShellIndex::new(0, -6, -6);
        assert!(!idx.sector_nonempty());
        let spec = GridSpec::new(16, 8.0).unwrap();
        assert_eq!(shell_support_count(&spec, idx), 0);
        let f = test_field();
        let g = project_kpq(&f, ShellIndex::new(0, -6, -6));
        assert_eq!(g.l2_norm(), 0.0);
    }

    #[test]
    fn pq_sectors_tile_the_sphere() {
        // summing capped p and q cutoffs over a floor reproduces 1
        for &(l, s) in &[(0.9f64, 0.43589f64), (0.3, 0.95394), (0.05, 0.99875)] {
            let mut total_p = 0.0;
            let mut total_q = 0.0;
            for a in -20..=0 {
                total_p += phi_capped(a, s);
                total_q += phi_capped(a, l);
            }
            assert!((total_p - 1.0).abs() < 1e-12);
            assert!((total_q - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn equatorial_data_misses_polar_sectors() {
        let spec = GridSpec::new(64, 32.0).unwrap();
        // concentrated near the equator Lambda ~ 0
        let f = SpectralField::from_spectral_fn(spec, true, |xi| {
            let h2 = xi[0] * xi[0] + xi[1] * xi[1];
            let r2 = h2 + xi[2] * xi[2];
            if r2 == 0.0 {
                return 0.0.into();
            }
            let l = xi[2] / r2.sqrt();
            ((-r2 / 2.0).exp() * (-(l / 0.15).powi(2)).exp() * h2).into()
        });
        // q = 0 demands |Lambda| >= 0.4: essentially nothing survives
        let polar = project_kpq(&f, ShellIndex::new(0, 0, 0));
        // a near-equator sector keeps visible mass
        let equatorial = project_kpq(&f, ShellIndex::new(0, 0, -2));
        assert!(polar.l2_norm() < 1e-4 * f.l2_norm(), "polar leak {}", polar.l2_norm());
        assert!(equatorial.l2_norm() > 1e-2 * f.l2_norm());
    }

    #[test]
    fn projections_commute() {
        let f = test_field();
        let a = project_kp(&project_k(&f, 0), 0, -1);
        let b = project_k(&project_kp(&f, 0, -1), 0);
        assert!(a.sub(&b).l2_norm() < 1e-14 * f.l2_norm().max(1.0));
    }
}
