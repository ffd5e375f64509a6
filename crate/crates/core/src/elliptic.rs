//! Complete elliptic integrals and Jacobi elliptic functions via the
//! arithmetic-geometric mean.
//!
//! Parameter convention: `m = k²` with `0 ≤ m < 1` throughout (the
//! `ellipk(m)` convention). The amplitude is recovered from the AGM chain
//! by the descending angle recurrence; `sn`, `cn` come from the amplitude
//! and `dn` from the identity `dn² = 1 − m·sn²`, which keeps both Jacobi
//! identities exact in floating point. The incomplete second-kind
//! integral in Jacobi form uses the Jacobi zeta series over the same
//! chain.

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub enum EllipticError {
    /// `m` outside `[0, 1)`.
    BadModulus { m: f64 },
    /// Argument outside the guarded range `|xi| <= 10·K(m)`.
    OutOfRange { xi: f64, limit: f64 },
}

impl core::fmt::Display for EllipticError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EllipticError::BadModulus { m } => write!(f, "modulus m = {m} outside [0, 1)"),
            EllipticError::OutOfRange { xi, limit } => {
                write!(f, "argument xi = {xi} outside |xi| <= {limit}")
            }
        }
    }
}

const PI: f64 = core::f64::consts::PI;
const MAX_AGM: usize = 40;

struct AgmChain {
    a: Vec<f64>,
    c: Vec<f64>,
}

fn agm_chain(m: f64) -> AgmChain {
    let mut a = Vec::with_capacity(12);
    let mut c = Vec::with_capacity(12);
    let mut an = 1.0f64;
    let mut bn = libm::sqrt(1.0 - m);
    let mut cn = libm::sqrt(m);
    a.push(an);
    c.push(cn);
    for _ in 0..MAX_AGM {
        if libm::fabs(cn) <= f64::EPSILON * an {
            break;
        }
        let a1 = 0.5 * (an + bn);
        let b1 = libm::sqrt(an * bn);
        cn = 0.5 * (an - bn);
        an = a1;
        bn = b1;
        a.push(an);
        c.push(cn);
    }
    AgmChain { a, c }
}

fn check_modulus(m: f64) -> Result<(), EllipticError> {
    if !(0.0..1.0).contains(&m) || !m.is_finite() {
        return Err(EllipticError::BadModulus { m });
    }
    Ok(())
}

/// Complete elliptic integral of the first kind `K(m)`, by the AGM:
/// `K = π / (2·agm(1, √(1−m)))`.
pub fn complete_k(m: f64) -> Result<f64, EllipticError> {
    check_modulus(m)?;
    let chain = agm_chain(m);
    Ok(PI / (2.0 * chain.a[chain.a.len() - 1]))
}

/// Complete elliptic integral of the second kind `E(m)` from the same
/// chain: `E = K·(1 − Σ 2^{n−1} c_n²)`.
pub fn complete_e(m: f64) -> Result<f64, EllipticError> {
    check_modulus(m)?;
    let chain = agm_chain(m);
    let k = PI / (2.0 * chain.a[chain.a.len() - 1]);
    let mut sum = 0.0;
    let mut pow = 0.5;
    for cn in &chain.c {
        sum += pow * cn * cn;
        pow *= 2.0;
    }
    Ok(k * (1.0 - sum))
}

/// Jacobi elliptic function triple at `(xi | m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnCnDn {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// Amplitude chain shared by `jacobi_sn_cn_dn` and `jacobi_e`: returns
/// the amplitude `φ_0 = am(xi|m)` and the Jacobi zeta `Z(xi|m)`.
fn amplitude_and_zeta(xi: f64, m: f64) -> (f64, f64) {
    let chain = agm_chain(m);
    let last = chain.a.len() - 1;
    // φ_N = 2^N a_N xi, then descend
    let mut phi = libm::pow(2.0, last as f64) * chain.a[last] * xi;
    let mut zeta = 0.0;
    for n in (1..=last).rev() {
        let s = libm::sin(phi);
        zeta += chain.c[n] * s;
        let arg = (chain.c[n] / chain.a[n]) * s;
        let arg = arg.clamp(-1.0, 1.0);
        phi = 0.5 * (phi + libm::asin(arg));
    }
    (phi, zeta)
}

fn range_guard(xi: f64, m: f64) -> Result<f64, EllipticError> {
    let k = complete_k(m)?;
    let limit = 10.0 * k;
    if !(libm::fabs(xi) <= limit) {
        return Err(EllipticError::OutOfRange { xi, limit });
    }
    Ok(k)
}

/// `sn`, `cn`, `dn` at `(xi | m)` for `0 ≤ m < 1`, `|xi| ≤ 10·K(m)`.
pub fn jacobi_sn_cn_dn(xi: f64, m: f64) -> Result<SnCnDn, EllipticError> {
    range_guard(xi, m)?;
    if m == 0.0 {
        return Ok(SnCnDn { sn: libm::sin(xi), cn: libm::cos(xi), dn: 1.0 });
    }
    let (phi, _) = amplitude_and_zeta(xi, m);
    let sn = libm::sin(phi);
    let cn = libm::cos(phi);
    let dn = libm::sqrt(1.0 - m * sn * sn);
    Ok(SnCnDn { sn, cn, dn })
}

/// Incomplete elliptic integral of the second kind in Jacobi form,
/// `E(xi|m) = ∫_0^xi dn(u|m)² du`, via `E(xi|m) = Z(xi|m) + xi·E(m)/K(m)`.
pub fn jacobi_e(xi: f64, m: f64) -> Result<f64, EllipticError> {
    range_guard(xi, m)?;
    if m == 0.0 {
        return Ok(xi);
    }
    let (_, zeta) = amplitude_and_zeta(xi, m);
    let k = complete_k(m)?;
    let e = complete_e(m)?;
    Ok(zeta + xi * e / k)
}
