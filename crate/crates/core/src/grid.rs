use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Periodic-box discretization of R^3.
///
/// The box is centered: physical coordinates run over `[-L/2, L/2)^3` with
/// spacing `dx = L/n`. Fourier coefficients are indexed by integer
/// wavevectors `m` in `(-n/2, n/2]^3` with physical frequency
/// `xi = (2 pi / L) m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Points per axis; a power of two, at least 16.
    pub n: usize,
    /// Box side length (dimensionless).
    pub box_len: f64,
}

impl GridSpec {
    pub fn new(n: usize, box_len: f64) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid points per axis must be a power of two >= 16, got {n}"
            )));
        }
        if !(box_len.is_finite() && box_len > 0.0) {
            return Err(Error::Config(format!("box length must be positive, got {box_len}")));
        }
        Ok(GridSpec { n, box_len })
    }

    /// Grid spacing `dx = L/n`.
    pub fn dx(&self) -> f64 {
        self.box_len / self.n as f64
    }

    /// Frequency spacing `2 pi / L`, also the smallest resolvable wavenumber.
    pub fn k_min(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.box_len
    }

    /// Largest resolvable wavenumber `pi n / L` per axis.
    pub fn k_max(&self) -> f64 {
        std::f64::consts::PI * self.n as f64 / self.box_len
    }

    /// Horizon below which decay experiments are free of wrap-around:
    /// `T_wrap = L/4`.
    pub fn t_wrap(&self) -> f64 {
        self.box_len / 4.0
    }

    /// Total number of samples.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    #[allow(clippy::len_without_is_empty)]
    /// Integer wavevector component for storage bin `b` along one axis,
    /// in `(-n/2, n/2]`.
    pub fn wavenumber(&self, b: usize) -> i64 {
        debug_assert!(b < self.n);
        if b <= self.n / 2 {
            b as i64
        } else {
            b as i64 - self.n as i64
        }
    }

    /// Storage bin for integer wavevector component `m` in `(-n/2, n/2]`.
    pub fn bin(&self, m: i64) -> usize {
        let n = self.n as i64;
        debug_assert!(m > -n / 2 && m <= n / 2);
        m.rem_euclid(n) as usize
    }

    /// Physical frequency `xi_j` for storage bin `b` along one axis.
    pub fn xi(&self, b: usize) -> f64 {
        self.k_min() * self.wavenumber(b) as f64
    }

    /// Physical coordinate for sample index `i` along one axis, in
    /// `[-L/2, L/2)`.
    pub fn coord(&self, i: usize) -> f64 {
        -0.5 * self.box_len + self.dx() * i as f64
    }

    /// Flat storage index, row-major with the third axis contiguous.
    #[inline]
    pub fn idx(&self, i1: usize, i2: usize, i3: usize) -> usize {
        (i1 * self.n + i2) * self.n + i3
    }

    /// Inverse of [`GridSpec::idx`].
    #[inline]
    pub fn unidx(&self, idx: usize) -> (usize, usize, usize) {
        let n = self.n;
        (idx / (n * n), (idx / n) % n, idx % n)
    }

    /// The full physical frequency vector for a flat index.
    #[inline]
    pub fn xi_vec(&self, idx: usize) -> [f64; 3] {
        let (i1, i2, i3) = self.unidx(idx);
        [self.xi(i1), self.xi(i2), self.xi(i3)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSpec::new(8, 1.0).is_err());
        assert!(GridSpec::new(48, 1.0).is_err());
        assert!(GridSpec::new(32, -1.0).is_err());
        assert!(GridSpec::new(32, 1.0).is_ok());
    }

    #[test]
    fn wavenumber_range_is_half_open() {
        let g = GridSpec::new(16, 2.0).unwrap();
        let ms: Vec<i64> = (0..16).map(|b| g.wavenumber(b)).collect();
        assert_eq!(*ms.iter().max().unwrap(), 8);
        assert_eq!(*ms.iter().min().unwrap(), -7);
        for b in 0..16 {
            assert_eq!(g.bin(g.wavenumber(b)), b);
        }
    }

    #[test]
    fn coords_are_centered() {
        let g = GridSpec::new(16, 16.0).unwrap();
        assert_eq!(g.coord(0), -8.0);
        assert_eq!(g.coord(8), 0.0);
        assert!(g.coord(15) < 8.0);
    }
}
