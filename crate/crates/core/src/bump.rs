//! The radial bump `psi`, its dyadic difference `phi`, and shell cutoffs.
//!
//! `psi` is 1 on `[-4/5, 4/5]`, 0 outside `[-8/5, 8/5]`, radial and
//! non-increasing in `|x|`, with a C^4 join through the 9th-degree
//! smoothstep. `phi(x) = psi(x) - psi(2x)` is supported in
//! `[2/5, 8/5]` (in `|x|`) and tiles dyadically:
//! `sum_b phi(2^{-b} x) = 1` for `x != 0`.

/// 9th-degree smoothstep: 0 at 0, 1 at 1, first four derivatives vanish at
/// both ends.
pub fn smoothstep4(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let u2 = u * u;
        let u4 = u2 * u2;
        u4 * u * (126.0 + u * (-420.0 + u * (540.0 + u * (-315.0 + u * 70.0))))
    }
}

/// Derivative of [`smoothstep4`].
pub fn smoothstep4_deriv(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        // 630 u^4 (1-u)^4
        let a = u * (1.0 - u);
        630.0 * a * a * a * a
    }
}

pub const PSI_FLAT: f64 = 0.8; // 4/5
pub const PSI_SUPP: f64 = 1.6; // 8/5

/// The radial bump function.
pub fn psi(x: f64) -> f64 {
    let a = x.abs();
    if a <= PSI_FLAT {
        1.0
    } else if a >= PSI_SUPP {
        0.0
    } else {
        1.0 - smoothstep4((a - PSI_FLAT) / PSI_FLAT)
    }
}

/// Derivative of [`psi`].
pub fn psi_deriv(x: f64) -> f64 {
    let a = x.abs();
    if a <= PSI_FLAT || a >= PSI_SUPP {
        0.0
    } else {
        -x.signum() * smoothstep4_deriv((a - PSI_FLAT) / PSI_FLAT) / PSI_FLAT
    }
}

/// Dyadic shell cutoff `phi(x) = psi(x) - psi(2x)`.
pub fn phi(x: f64) -> f64 {
    psi(x) - psi(2.0 * x)
}

/// Derivative of [`phi`].
pub fn phi_deriv(x: f64) -> f64 {
    psi_deriv(x) - 2.0 * psi_deriv(2.0 * x)
}

/// Derivative of [`phi_capped`] with respect to `x`.
pub fn phi_capped_deriv(a: i32, x: f64) -> f64 {
    debug_assert!(a <= 0);
    if a < 0 {
        phi_deriv(x * 2f64.powi(-a)) * 2f64.powi(-a)
    } else {
        -2.0 * psi_deriv(2.0 * x)
    }
}

/// `phi(2^{-a} x)`.
pub fn phi_at(a: i32, x: f64) -> f64 {
    phi(x * 2f64.powi(-a))
}

/// `psi(2^{-a} x)`.
pub fn psi_at(a: i32, x: f64) -> f64 {
    psi(x * 2f64.powi(-a))
}

/// Shell cutoff for indices capped at zero (the `p` and `q` localizations).
///
/// For `a < 0` this is the plain dyadic cutoff; the top shell `a = 0`
/// absorbs everything the lower shells leave uncovered, so the family sums
/// to 1 exactly on `(0, 1]`.
pub fn phi_capped(a: i32, x: f64) -> f64 {
    debug_assert!(a <= 0);
    if a < 0 {
        phi_at(a, x)
    } else {
        1.0 - psi(2.0 * x)
    }
}

/// Support bounds of `phi(2^{-a} .)` in `|x|`: the open interval where the
/// cutoff can be nonzero.
pub fn phi_support(a: i32) -> (f64, f64) {
    (0.4 * 2f64.powi(a), 1.6 * 2f64.powi(a))
}

/// Support bounds of [`phi_capped`].
pub fn phi_capped_support(a: i32) -> (f64, f64) {
    if a < 0 {
        phi_support(a)
    } else {
        (0.4, f64::INFINITY)
    }
}
