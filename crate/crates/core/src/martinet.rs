//! Martinet geodesics in closed form, the reduced Jacobian of the
//! exponential map, and cut/conjugate times.
//!
//! Coordinates and normalizations: the geodesic starts at the origin with
//! initial covector `(u0, v0, w0)`, `u0 = r cos θ`, `v0 = r sin θ`. The
//! vertical component `y` solves the Duffing equation
//! `ÿ + u0·w0·y + (w0²/2)·y³ = 0` and is `A·cn(ωt + φ | m)` with
//!
//! ```text
//! m = (r − sgn(w0)·u0) / (2r),   ω² = r·|w0|,   A²ω² = 4·m·r²,
//! φ = K(m),  sgn(ω) = sgn(w0),  sgn(Aω) = −sgn(v0).
//! ```
//!
//! The Jacobian of the time-`t` exponential map against `r·dr∧dθ∧dw`
//! factors as `−(r⁴t/ω²)·sgn(v0)·J_R(|ω|t, m)` where `J_R` is the reduced
//! Jacobian below. `J_R` is negative up to the first conjugate time, the
//! cut time is `2K(m)/|ω|`, and `|ω|·t_conj` lies in `(2K, 3K)`.

use crate::elliptic::{complete_k, jacobi_e, jacobi_sn_cn_dn, EllipticError};

#[derive(Debug, Clone, PartialEq)]
pub enum MartinetError {
    /// Covector outside the smooth correspondence domain.
    BadCovector(&'static str),
    Domain(&'static str),
    Elliptic(EllipticError),
    /// Bisection bracket did not change sign (numerical inconsistency).
    NoSignChange,
}

impl From<EllipticError> for MartinetError {
    fn from(e: EllipticError) -> Self {
        MartinetError::Elliptic(e)
    }
}

impl core::fmt::Display for MartinetError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MartinetError::BadCovector(w) => write!(f, "covector outside domain: {w}"),
            MartinetError::Domain(w) => write!(f, "argument outside domain: {w}"),
            MartinetError::Elliptic(e) => write!(f, "{e}"),
            MartinetError::NoSignChange => write!(f, "no sign change in conjugate bracket"),
        }
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Initial covector in cylindrical coordinates, restricted to the range
/// where the elliptic correspondence is one-to-one and smooth: `r > 0`,
/// `θ ∉ {0, π}` (so `v0 ≠ 0`), `w0 ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MartinetCovector {
    pub r: f64,
    pub theta: f64,
    pub w0: f64,
}

impl MartinetCovector {
    pub fn new(r: f64, theta: f64, w0: f64) -> Result<Self, MartinetError> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(MartinetError::BadCovector("r must be positive"));
        }
        if !theta.is_finite()
            || libm::sin(theta) == 0.0
            || libm::fabs(libm::cos(theta)) >= 1.0
        {
            return Err(MartinetError::BadCovector("theta in {0, pi} excluded"));
        }
        if w0 == 0.0 || !w0.is_finite() {
            return Err(MartinetError::BadCovector("w0 must be nonzero"));
        }
        Ok(MartinetCovector { r, theta, w0 })
    }

    pub fn u0(&self) -> f64 {
        self.r * libm::cos(self.theta)
    }

    pub fn v0(&self) -> f64 {
        self.r * libm::sin(self.theta)
    }
}

/// Oscillator parameters `(A, ω, m, φ)` of the `cn` ansatz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscParams {
    pub a: f64,
    pub omega: f64,
    pub m: f64,
    pub phi: f64,
}

/// The one-to-one correspondence `(r, θ, w0) → (A, ω, m, φ)`.
pub fn params_from_covector(cov: &MartinetCovector) -> Result<OscParams, MartinetError> {
    let r = cov.r;
    let u0 = cov.u0();
    let v0 = cov.v0();
    let w0 = cov.w0;
    let m = (r - sgn(w0) * u0) / (2.0 * r);
    if !(m > 0.0 && m < 1.0) {
        return Err(MartinetError::BadCovector("modulus m outside (0, 1)"));
    }
    let omega = sgn(w0) * libm::sqrt(r * libm::fabs(w0));
    let a_abs = 2.0 * r * libm::sqrt(m) / libm::fabs(omega);
    // sgn(A·ω) = −sgn(v0)
    let a = -sgn(v0) * sgn(omega) * a_abs;
    let phi = complete_k(m)?;
    Ok(OscParams { a, omega, m, phi })
}

/// A point of the geodesic, with the `v = ẏ` component kept alongside
/// because the closed form of `z` consumes it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub v: f64,
    pub t: f64,
}

/// Closed-form geodesic: `y = A·cn(ωt+φ)`, `v = −Aω·sn·dn`,
/// `x = sgn(w0)(−rt + (2r/ω)(E(ωt+φ) − E(φ)))`,
/// `z = (r²t − u0·x − y·v) / (3w0)`.
pub fn geodesic_closed_form(
    cov: &MartinetCovector,
    t: f64,
) -> Result<GeodesicPoint, MartinetError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(MartinetError::Domain("t must be nonnegative and finite"));
    }
    let p = params_from_covector(cov)?;
    let xi = p.omega * t + p.phi;
    let v3 = jacobi_sn_cn_dn(xi, p.m)?;
    let y = p.a * v3.cn;
    let v = -p.a * p.omega * v3.sn * v3.dn;
    let e_xi = jacobi_e(xi, p.m)?;
    let e_phi = jacobi_e(p.phi, p.m)?;
    let r = cov.r;
    let x = sgn(cov.w0) * (-r * t + (2.0 * r / p.omega) * (e_xi - e_phi));
    let z = (r * r * t - cov.u0() * x - y * v) / (3.0 * cov.w0);
    Ok(GeodesicPoint { x, y, z, v, t })
}

/// Classical fixed-step RK4 integration of the Hamiltonian system
///
/// ```text
/// ẋ = u + y²w/2   u̇ = 0
/// ẏ = v           v̇ = −(u + y²w/2)·y·w
/// ż = (u + y²w/2)·y²/2   ẇ = 0
/// ```
///
/// from the origin, used as an independent oracle for the closed forms.
/// `u` and `w` are held constant exactly.
pub fn geodesic_ode_oracle(cov: &MartinetCovector, t: f64, steps: usize) -> GeodesicPoint {
    assert!(steps >= 1000, "oracle needs at least 1000 steps");
    let u0 = cov.u0();
    let v0 = cov.v0();
    let w0 = cov.w0;
    // state: (x, y, z, v); u and w are conserved exactly
    let deriv = |s: [f64; 4]| -> [f64; 4] {
        let hx = u0 + 0.5 * s[1] * s[1] * w0;
        [hx, s[3], hx * 0.5 * s[1] * s[1], -hx * s[1] * w0]
    };
    let mut s = [0.0, 0.0, 0.0, v0];
    let h = t / steps as f64;
    for _ in 0..steps {
        let k1 = deriv(s);
        let s2 = core::array::from_fn(|i| s[i] + 0.5 * h * k1[i]);
        let k2 = deriv(s2);
        let s3 = core::array::from_fn(|i| s[i] + 0.5 * h * k2[i]);
        let k3 = deriv(s3);
        let s4 = core::array::from_fn(|i| s[i] + h * k3[i]);
        let k4 = deriv(s4);
        for i in 0..4 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    GeodesicPoint { x: s[0], y: s[1], z: s[2], v: s[3], t }
}

/// Hamiltonian along the flow, for conservation checks.
pub fn hamiltonian(cov: &MartinetCovector, p: &GeodesicPoint) -> f64 {
    let hx = cov.u0() + 0.5 * p.y * p.y * cov.w0;
    0.5 * (hx * hx + p.v * p.v)
}

// ----- reduced Jacobian ----------------------------------------------------

/// Maclaurin coefficients of `J_R(ξ, m)` in ξ (even orders 6..20); each is
/// a polynomial in `m` divisible by `m(m−1)`, so `J_R < 0` for small ξ.
/// The numerator `ξ²c1 + ξc2 + c3` vanishes identically through order ξ⁵,
/// which is why the direct formula loses all significant digits near 0.
fn jr_series(xi: f64, m: f64) -> f64 {
    let mm = m * (m - 1.0);
    let tm = 2.0 * m - 1.0;
    let c6 = mm * (4.0 / 45.0);
    let c8 = mm * tm * (2.0 / 105.0);
    let c10 = mm * ((208.0 * m - 208.0) * m + 19.0) / 9450.0;
    let c12 = mm * tm * 37.0 * ((40.0 * m - 40.0) * m + 1.0) / 267300.0;
    let c14 = mm
        * ((((2446592.0 * m - 4893184.0) * m + 2873232.0) * m - 426640.0) * m + 3113.0)
        / 454053600.0;
    let c16 = mm * tm
        * ((((17351936.0 * m - 34703872.0) * m + 18789120.0) * m - 1437184.0) * m + 3503.0)
        / 13621608000.0;
    let c18 = mm
        * ((((((29512314880.0 * m - 88536944640.0) * m + 95597078784.0) * m
            - 43632583168.0) * m
            + 7285303392.0) * m
            - 225169248.0) * m
            + 189169.0)
        / 25009272288000.0;
    let c20 = mm * tm
        * ((((((142035571712.0 * m - 426106715136.0) * m + 446820702080.0) * m
            - 183463545600.0) * m
            + 21032302536.0) * m
            - 318315592.0) * m
            + 94585.0)
        / 527973526080000.0;
    let x2 = xi * xi;
    let x6 = x2 * x2 * x2;
    x6 * (c6 + x2 * (c8 + x2 * (c10 + x2 * (c12 + x2 * (c14 + x2 * (c16 + x2 * (c18 + x2 * c20)))))))
}

/// First-order hyperbolic expansion around `m = 1`:
/// `J_R ≈ ½(m−1)·cosh(ξ)·[sinh²ξ + ξ(tanh ξ − 2ξ)]`.
pub fn jr_hyperbolic_factor(xi: f64) -> f64 {
    let sh = libm::sinh(xi);
    0.5 * libm::cosh(xi) * (sh * sh + xi * (libm::tanh(xi) - 2.0 * xi))
}

/// Threshold below which `reduced_jacobian` switches to the `m → 1`
/// expansion (the elliptic path stays stable there, but the expansion
/// matches the argument actually used for the MCP ratio limit).
pub const M_EXPANSION_THRESHOLD: f64 = 1e-7;

/// The reduced Jacobian `J_R(ξ, m) = (ξ²c1 + ξc2 + c3)/dn` with
///
/// ```text
/// c1 = (1−m)·cn/dn
/// c2 = (1−m)·sn − 2(1−m)·E·cn/dn
/// c3 = E²·cn/dn − E·sn
/// ```
///
/// For `ξ < 0.5` the Maclaurin series is used (the direct formula cancels
/// catastrophically there); for `1−m < 1e−7` the hyperbolic expansion.
pub fn reduced_jacobian(xi: f64, m: f64) -> Result<f64, MartinetError> {
    if !(m > 0.0 && m < 1.0) {
        return Err(MartinetError::Domain("m must lie in (0, 1)"));
    }
    if !(xi > 0.0) {
        return Err(MartinetError::Domain("xi must be positive"));
    }
    if 1.0 - m < M_EXPANSION_THRESHOLD {
        return Ok((m - 1.0) * jr_hyperbolic_factor(xi));
    }
    let k = complete_k(m)?;
    if xi > 4.0 * k {
        return Err(MartinetError::Domain("xi must be at most 4K(m)"));
    }
    if xi < 0.5 {
        return Ok(jr_series(xi, m));
    }
    let v = jacobi_sn_cn_dn(xi, m)?;
    let e = jacobi_e(xi, m)?;
    let cod = v.cn / v.dn;
    let c1 = (1.0 - m) * cod;
    let c2 = (1.0 - m) * v.sn - 2.0 * (1.0 - m) * e * cod;
    let c3 = e * e * cod - e * v.sn;
    Ok((xi * xi * c1 + xi * c2 + c3) / v.dn)
}

/// Scalar density of the time-`t` Jacobian against `r·dr∧dθ∧dw`:
/// `−(r⁴t/ω²)·sgn(v0)·J_R(|ω|t, m)`.
pub fn full_jacobian_density(cov: &MartinetCovector, t: f64) -> Result<f64, MartinetError> {
    if !(t > 0.0) {
        return Err(MartinetError::Domain("t must be positive"));
    }
    let p = params_from_covector(cov)?;
    let jr = reduced_jacobian(libm::fabs(p.omega) * t, p.m)?;
    let r = cov.r;
    Ok(-(r * r * r * r * t / (p.omega * p.omega)) * sgn(cov.v0()) * jr)
}

/// Cut time `t_cut = 2K(m)/|ω|`, the first intersection with the Martinet
/// surface `{y = 0}`.
pub fn cut_time(cov: &MartinetCovector) -> Result<f64, MartinetError> {
    let p = params_from_covector(cov)?;
    Ok(2.0 * complete_k(p.m)? / libm::fabs(p.omega))
}

/// First conjugate time: the first zero of `ξ ↦ J_R(ξ, m)` is bracketed in
/// `(2K, 3K)` and refined by bisection to `1e−10` in ξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateTime {
    /// Bracketing interval in the ξ variable.
    pub bracket: (f64, f64),
    /// Refined root in ξ.
    pub xi_root: f64,
    /// The conjugate time `ξ_root / |ω|`.
    pub t_conj: f64,
}

pub fn conjugate_time(cov: &MartinetCovector) -> Result<ConjugateTime, MartinetError> {
    let p = params_from_covector(cov)?;
    let k = complete_k(p.m)?;
    conjugate_xi(p.m, k).map(|(lo, hi, root)| ConjugateTime {
        bracket: (lo, hi),
        xi_root: root,
        t_conj: root / libm::fabs(p.omega),
    })
}

/// Root of `J_R(·, m)` in `(2K, 3K)`; shared by `conjugate_time` and tests.
pub fn conjugate_xi(m: f64, k: f64) -> Result<(f64, f64, f64), MartinetError> {
    let mut lo = 2.0 * k;
    let mut hi = 3.0 * k;
    // J_R(2K) < 0 < J_R(3K); nudge the endpoints inward by a hair to stay
    // inside the open interval
    let eps = 1e-12 * k;
    let f_lo = reduced_jacobian(lo + eps, m)?;
    let f_hi = reduced_jacobian(hi - eps, m)?;
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(MartinetError::NoSignChange);
    }
    let (orig_lo, orig_hi) = (lo, hi);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        let f_mid = reduced_jacobian(mid, m)?;
        if f_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((orig_lo, orig_hi, 0.5 * (lo + hi)))
}
