//! Measure-contraction-property violation machinery for the Martinet
//! structure.
//!
//! MCP(0, N) forces `|J_R(ωt, m)| ≥ t^{N−1}·|J_R(ω, m)|` for all
//! `t ∈ [0,1]`, `m ∈ (0,1)`, `ω ∈ (0, 2K(m))`, so a single ratio below
//! `t^{N−1}` refutes MCP(0, N) — and, through dilations, MCP(K, N) for
//! every K. The ratio tends to 0 under the iterated limit `m → 1` at
//! fixed `ω`, then `ω → ∞`; the search follows that order by coupling
//! `1 − m_j = e^{−2ω_j − 4}` to `ω_j = j`, which keeps the hyperbolic
//! expansion of `J_R` uniformly accurate (the correction scale
//! `(1−m)·e^{2ω}` stays at `e^{−4}`) while the ratio decays geometrically.
//! Coupling `ω` proportionally to `K(m)` instead would leave the ratio
//! divergent: at `ξ` comparable to `2K(m)` the expansion is invalid and
//! the true ratio grows without bound.

use alloc::vec::Vec;

use crate::elliptic::complete_k;
use crate::martinet::{reduced_jacobian, MartinetError};

/// Ratio certificate at one `(ω, m, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McpRatioReport {
    pub m: f64,
    pub omega: f64,
    pub t: f64,
    /// `|J_R(ωt, m)| / |J_R(ω, m)|`.
    pub ratio: f64,
    /// Largest integer `N` with `ratio < t^{N−1}`; values ≤ 1 mean no
    /// violation at this point.
    pub violated_up_to_n: i64,
    /// `t·ratio`, the quantity bounding any qualitative non-degeneracy
    /// function `f(t)`.
    pub qualitative: f64,
}

/// Search trace and final certificate of `mcp_violation_search`.
#[derive(Debug, Clone, PartialEq)]
pub struct McpSearchReport {
    pub report: McpRatioReport,
    /// `(j, m_j, ω_j, ratio_j)` for every step of the schedule.
    pub trace: Vec<(u32, f64, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum McpError {
    Domain(&'static str),
    Martinet(MartinetError),
    /// The iteration cap was reached; the limit guarantees termination,
    /// so this signals a numerics bug rather than mathematics.
    IterationCap { cap: u32 },
}

impl From<MartinetError> for McpError {
    fn from(e: MartinetError) -> Self {
        McpError::Martinet(e)
    }
}

impl core::fmt::Display for McpError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            McpError::Domain(w) => write!(f, "argument outside domain: {w}"),
            McpError::Martinet(e) => write!(f, "{e}"),
            McpError::IterationCap { cap } => {
                write!(f, "violation search hit the iteration cap {cap}")
            }
        }
    }
}

/// `|J_R(ωt, m)| / |J_R(ω, m)|` with `0 < t < 1`, `0 < ω < 2K(m)`.
/// Near `m = 1` both evaluations take the hyperbolic-expansion path, so
/// the `(m−1)` prefactor cancels in the ratio.
pub fn mcp_ratio(omega: f64, m: f64, t: f64) -> Result<McpRatioReport, McpError> {
    if !(t > 0.0 && t < 1.0) {
        return Err(McpError::Domain("t must lie in (0, 1)"));
    }
    if !(m > 0.0 && m < 1.0) {
        return Err(McpError::Domain("m must lie in (0, 1)"));
    }
    let k = complete_k(m).map_err(MartinetError::from)?;
    if !(omega > 0.0 && omega < 2.0 * k) {
        return Err(McpError::Domain("omega must lie in (0, 2K(m))"));
    }
    let num = reduced_jacobian(omega * t, m)?;
    let den = reduced_jacobian(omega, m)?;
    let ratio = libm::fabs(num) / libm::fabs(den);
    let violated_up_to_n = libm::floor(1.0 + libm::log(ratio) / libm::log(t)) as i64;
    Ok(McpRatioReport { m, omega, t, ratio, violated_up_to_n, qualitative: t * ratio })
}

/// March `ω_j = j`, `m_j = 1 − e^{−2j−4}` until the ratio drops below
/// `t^{N−1}`. Along this schedule `ω_j < 2K(m_j)` always holds
/// (`K(m_j) ≈ j + 2 + ln 2`), the ratio decays like `e^{−3(1−t)j}`, so
/// the search terminates for every `N` the double format can certify;
/// once `1 − m_j` underflows past machine epsilon the cap error is
/// returned instead of fabricating a modulus of exactly 1.
pub fn mcp_violation_search(n: u32, t: f64, max_iter: u32) -> Result<McpSearchReport, McpError> {
    if n < 2 {
        return Err(McpError::Domain("N must be at least 2"));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(McpError::Domain("t must lie in (0, 1)"));
    }
    let target = libm::pow(t, n as f64 - 1.0);
    let mut trace = Vec::new();
    for j in 2..=max_iter {
        let omega = j as f64;
        let m = 1.0 - libm::exp(-2.0 * omega - 4.0);
        if m >= 1.0 {
            return Err(McpError::IterationCap { cap: j });
        }
        let report = mcp_ratio(omega, m, t)?;
        trace.push((j, m, omega, report.ratio));
        if report.ratio < target {
            return Ok(McpSearchReport { report, trace });
        }
    }
    Err(McpError::IterationCap { cap: max_iter })
}
