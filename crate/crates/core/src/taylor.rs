//! Taylor degree selection, the residual weights `psi_j(1)` and the per-block
//! thresholds used by the queue solver.
//!
//! The weights come from `psi_j(x) = sum_{m=0}^{N-j} j!/(j+m)! x^m`. A block-j
//! residual of 1-norm `r` contributes at most `psi_j(1) * r` to the 1-norm
//! error of the Taylor approximation, which is what the solvers track.

use crate::error::{Error, Result};

/// Fraction of the error budget given to Taylor truncation; the remainder
/// goes to the residual certificate.
pub const THETA: f64 = 0.5;

/// Largest degree `select_degree_exact` will consider. `1/171!` underflows.
const MAX_DEGREE: usize = 170;

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorParams {
    /// Taylor degree `N`.
    pub degree: usize,
    /// `psi_0(1), ..., psi_N(1)`.
    pub psi: Vec<f64>,
    /// Requested total 1-norm error.
    pub eps: f64,
    pub theta: f64,
}

impl TaylorParams {
    /// Degree chosen so that truncation costs at most `theta * eps`.
    pub fn for_tolerance(eps: f64) -> Result<Self> {
        check_eps(eps)?;
        let degree = select_degree_exact(THETA * eps)?;
        Ok(Self::with_degree(eps, degree))
    }

    pub fn with_degree(eps: f64, degree: usize) -> Self {
        Self {
            degree,
            psi: psi_weights(degree),
            eps,
            theta: THETA,
        }
    }

    /// Residual budget `theta * eps` that terminates the relaxation solvers.
    pub fn residual_tol(&self) -> f64 {
        self.theta * self.eps
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(eps))
    }
}

/// Tail `sum_{l > k} 1/l!`, i.e. `e - T_k(1)`, without the cancellation of
/// subtracting a partial sum from `e`. Kahan-compensated, smallest terms first.
pub fn taylor_remainder(k: usize) -> f64 {
    // 1/(k+1)!
    let mut lead = 1.0f64;
    for l in 1..=k + 1 {
        lead /= l as f64;
    }
    let mut terms = vec![lead];
    let mut t = lead;
    let mut l = k + 2;
    while t > lead * 1e-18 && t > 0.0 {
        t /= l as f64;
        terms.push(t);
        l += 1;
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &term in terms.iter().rev() {
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum
}

/// Smallest `k` with `e - sum_{l=0}^{k} 1/l! <= eps`.
pub fn select_degree_exact(eps: f64) -> Result<usize> {
    check_eps(eps)?;
    (0..=MAX_DEGREE)
        .find(|&k| taylor_remainder(k) <= eps)
        .ok_or(Error::InvalidTolerance(eps))
}

/// The cruder a-priori degree `max(3, ceil(2 ln(1/eps)))`.
pub fn select_degree_bound(eps: f64) -> Result<usize> {
    check_eps(eps)?;
    let raw = (2.0 * (1.0 / eps).ln()).ceil() as usize;
    Ok(raw.max(3))
}

/// `psi_j(1)` for `j = 0..=N` via `psi_N = 1`, `psi_j = psi_{j+1}/(j+1) + 1`.
pub fn psi_weights(degree: usize) -> Vec<f64> {
    let mut psi = vec![1.0; degree + 1];
    for j in (0..degree).rev() {
        psi[j] = psi[j + 1] / (j + 1) as f64 + 1.0;
    }
    psi
}

/// How the queue-solver threshold is scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThresholdRule {
    /// `theta*eps / (N psi_j(1))`; the form the termination proof uses.
    #[default]
    Strict,
    /// Same, times `e`: looser, fewer relaxations.
    ScaledByE,
}

/// Per-block thresholds before division by the block's queue size `Z_j`.
pub fn queue_thresholds(params: &TaylorParams) -> Vec<f64> {
    queue_thresholds_with(params, ThresholdRule::Strict)
}

pub fn queue_thresholds_with(params: &TaylorParams, rule: ThresholdRule) -> Vec<f64> {
    let scale = match rule {
        ThresholdRule::Strict => 1.0,
        ThresholdRule::ScaledByE => std::f64::consts::E,
    };
    let budget = scale * params.theta * params.eps / params.degree as f64;
    params.psi.iter().map(|p| budget / p).collect()
}
