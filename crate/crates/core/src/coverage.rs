//! How many uniform samples does it take to cover the unit hypersphere?
//!
//! Approximating the sphere of dimension n by (n-1)-balls of radius epsilon
//! gives a patch count `N = A_{n-1}(1) / V_{n-1}(epsilon)`, and treating the
//! patches as coupon-collector cells puts the expected number of uniform
//! samples at the `N ln N` scale, with an `e^{-s}` tail beyond
//! `N ln N + sN`. The calculators work in log space throughout — both the
//! gamma function and `epsilon^(n-1)` leave the f64 range quickly — and a
//! seeded simulator validates the coupon-collector pieces empirically.

use crate::error::{Error, Result};
use crate::rng::{uniform_rng, STREAM_COUPON_BASE};
use rand::Rng;

const LN_PI: f64 = 1.1447298858494002; // ln(pi)
/// ln(f64::MAX); beyond this a linear-space value would overflow.
const LN_F64_MAX: f64 = 709.782712893384;

/// `ln Gamma(k/2)` for half-integer arguments, the only ones the ball
/// formulas need. Exact products, no series approximation:
/// `Gamma(m) = (m-1)!` and `Gamma(m + 1/2) = sqrt(pi) * prod (j - 1/2)`.
fn ln_gamma_half(twice_arg: u64) -> f64 {
    assert!(twice_arg >= 1);
    if twice_arg.is_multiple_of(2) {
        let m = twice_arg / 2;
        (2..m).map(|i| (i as f64).ln()).sum()
    } else {
        let m = (twice_arg - 1) / 2;
        0.5 * LN_PI + (1..=m).map(|j| (j as f64 - 0.5).ln()).sum::<f64>()
    }
}

/// `ln C_n` where `C_n = pi^(n/2) / Gamma(n/2 + 1)` is the unit-ball volume.
fn ln_unit_ball_volume(n: u64) -> f64 {
    n as f64 / 2.0 * LN_PI - ln_gamma_half(n + 2)
}

/// Volume of the n-ball of radius r, `pi^(n/2) / Gamma(n/2 + 1) * r^n`.
/// Assembled in log space; the linear value may round to 0 or infinity for
/// extreme arguments, use [`ball_volume_ln`] there.
pub fn ball_volume(n: u64, r: f64) -> Result<f64> {
    Ok(ball_volume_ln(n, r)?.exp())
}

pub fn ball_volume_ln(n: u64, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain("ball dimension must be >= 1".into()));
    }
    check_radius(r)?;
    Ok(ln_unit_ball_volume(n) + n as f64 * r.ln())
}

/// Surface area of the n-ball of radius r: `d/dr V_n(r) = n C_n r^(n-1)`.
pub fn sphere_area(n: u64, r: f64) -> Result<f64> {
    Ok(sphere_area_ln(n, r)?.exp())
}

pub fn sphere_area_ln(n: u64, r: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("sphere area needs dimension >= 2".into()));
    }
    check_radius(r)?;
    Ok((n as f64).ln() + ln_unit_ball_volume(n) + (n as f64 - 1.0) * r.ln())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!(
            "covering radius must lie in (0, 1), got {epsilon}"
        )));
    }
    Ok(())
}

/// Number of epsilon-ball patches tiling the unit sphere of dimension n,
/// stored as logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchCount {
    /// `ln [ A_{n-1}(1) / V_{n-1}(epsilon) ]`.
    pub ln_exact: f64,
    /// `ln [ n sqrt(pi) / epsilon^(n-1) ]`, the leading-order form.
    pub ln_approx: f64,
}

impl PatchCount {
    pub fn exact(&self) -> f64 {
        self.ln_exact.exp()
    }

    pub fn approx(&self) -> f64 {
        self.ln_approx.exp()
    }
}

/// Exact and leading-order patch counts.
///
/// The two differ by the gamma ratio `Gamma((n+1)/2) / Gamma(n/2 + 1)`,
/// which decays like `sqrt(2/n)`: about 0.89 at n=2 and 0.20 at n=50.
pub fn patch_count(n: u64, epsilon: f64) -> Result<PatchCount> {
    if n < 2 {
        return Err(Error::Domain("patch count needs dimension >= 2".into()));
    }
    check_epsilon(epsilon)?;
    let nf = n as f64;
    let ln_approx = nf.ln() + 0.5 * LN_PI - (nf - 1.0) * epsilon.ln();
    let ln_gamma_ratio = ln_gamma_half(n + 1) - ln_gamma_half(n + 2);
    let ln_exact = ln_approx + ln_gamma_ratio;
    debug_assert!(
        n > 50 || (0.15f64.ln()..=3.0f64.ln()).contains(&ln_gamma_ratio),
        "gamma ratio left its sanity band at n={n}"
    );
    Ok(PatchCount { ln_exact, ln_approx })
}

/// Coupon-collector estimate of the samples needed for an epsilon-dense
/// covering, `N ln N` with N the exact patch count (order constant 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEstimate {
    pub n: u64,
    pub epsilon: f64,
    pub ln_patch_count_exact: f64,
    pub ln_patch_count_approx: f64,
    pub ln_expected_samples: f64,
    /// Set when the expected-sample count exceeds the f64 range; the linear
    /// accessors overflow to infinity there and only the logs are usable.
    pub log_domain: bool,
}

impl CoverageEstimate {
    pub fn patch_count_exact(&self) -> f64 {
        self.ln_patch_count_exact.exp()
    }

    pub fn patch_count_approx(&self) -> f64 {
        self.ln_patch_count_approx.exp()
    }

    pub fn expected_samples(&self) -> f64 {
        self.ln_expected_samples.exp()
    }
}

pub fn expected_samples(n: u64, epsilon: f64) -> Result<CoverageEstimate> {
    let patches = patch_count(n, epsilon)?;
    // Degenerate below one patch: a single sample suffices.
    let ln_expected = if patches.ln_exact <= 0.0 {
        0.0
    } else {
        patches.ln_exact + patches.ln_exact.ln()
    };
    Ok(CoverageEstimate {
        n,
        epsilon,
        ln_patch_count_exact: patches.ln_exact,
        ln_patch_count_approx: patches.ln_approx,
        ln_expected_samples: ln_expected,
        log_domain: ln_expected > LN_F64_MAX,
    })
}

/// Probability bounds for needing more than `c ln c + s c` samples to see
/// every one of c cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBounds {
    /// Union bound `e^{-s}`, valid for every c > 1.
    pub union_bound: f64,
    /// Sharp large-c limit `1 - e^{-e^{-s}}`, strictly below the union
    /// bound for all s > 0.
    pub gumbel_limit: f64,
}

pub fn tail_bound(c: f64, s: f64) -> Result<TailBounds> {
    if c.is_nan() || c <= 1.0 {
        return Err(Error::Domain(format!("cell count must exceed 1, got {c}")));
    }
    if s.is_nan() || s <= 0.0 {
        return Err(Error::Domain(format!("threshold slack must be positive, got {s}")));
    }
    let union_bound = (-s).exp();
    let gumbel_limit = -(-union_bound).exp_m1();
    debug_assert!(gumbel_limit < union_bound);
    Ok(TailBounds {
        union_bound,
        gumbel_limit,
    })
}

/// Budget adequacy for an epsilon-dense covering: `budget / (N ln N)`.
/// Below 1 the budget cannot cover the sphere at the coupon-collector
/// scale. Formed in log space; extreme ratios flush to 0 or infinity.
pub fn coverage_deficiency(n: u64, epsilon: f64, budget: u64) -> Result<f64> {
    if budget < 1 {
        return Err(Error::Domain("budget must be >= 1".into()));
    }
    let estimate = expected_samples(n, epsilon)?;
    Ok(((budget as f64).ln() - estimate.ln_expected_samples).exp())
}

/// Mean and selected quantiles of the draws needed to collect every cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CouponSummary {
    pub mean_draws: f64,
    /// `(probability, empirical quantile)` pairs, in the order requested.
    pub quantiles: Vec<(f64, u64)>,
}

/// Simulates the classic coupon collector: uniform draws over c equiprobable
/// cells, counting draws until every cell has been seen. The cells stand in
/// for sphere patches in the idealized disjoint model. Deterministic given
/// `(c, trials, seed, workers)`.
pub fn coupon_simulate(
    c: u64,
    trials: u64,
    seed: u64,
    quantile_probs: &[f64],
    workers: usize,
) -> Result<CouponSummary> {
    let draws = coupon_draws(c, trials, seed, workers)?;
    if let Some(bad) = quantile_probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::Domain(format!("quantile probability {bad} outside [0, 1]")));
    }
    let mean = draws.iter().map(|&d| d as f64).sum::<f64>() / trials as f64;
    let mut sorted = draws;
    sorted.sort_unstable();
    let quantiles = quantile_probs
        .iter()
        .map(|&p| {
            let rank = ((p * trials as f64).ceil() as usize).clamp(1, trials as usize);
            (p, sorted[rank - 1])
        })
        .collect();
    Ok(CouponSummary {
        mean_draws: mean,
        quantiles,
    })
}

/// Raw per-trial draw counts behind [`coupon_simulate`], for exceedance
/// statistics. Worker partitions are concatenated in worker order.
pub fn coupon_draws(c: u64, trials: u64, seed: u64, workers: usize) -> Result<Vec<u64>> {
    if c < 2 {
        return Err(Error::Domain(format!("need at least 2 cells, got {c}")));
    }
    if trials < 1 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    if workers == 0 {
        return Err(Error::Domain("worker count must be >= 1".into()));
    }
    if workers == 1 {
        return Ok(run_trials(c, trials, seed, 0));
    }
    let shares: Vec<u64> = (0..workers as u64)
        .map(|w| trials / workers as u64 + u64::from(w < trials % workers as u64))
        .collect();
    let mut out = Vec::with_capacity(trials as usize);
    std::thread::scope(|scope| {
        let handles: Vec<_> = shares
            .iter()
            .enumerate()
            .map(|(w, &share)| scope.spawn(move || run_trials(c, share, seed, w as u64)))
            .collect();
        for handle in handles {
            out.extend(handle.join().expect("coupon worker panicked"));
        }
    });
    Ok(out)
}

fn run_trials(c: u64, trials: u64, seed: u64, worker: u64) -> Vec<u64> {
    let mut rng = uniform_rng(seed, STREAM_COUPON_BASE + worker);
    let words = c.div_ceil(64) as usize;
    let mut seen = vec![0u64; words];
    let mut out = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        seen.fill(0);
        let mut distinct = 0;
        let mut draws = 0u64;
        while distinct < c {
            let cell = rng.random_range(0..c);
            draws += 1;
            let word = (cell / 64) as usize;
            let bit = 1u64 << (cell % 64);
            if seen[word] & bit == 0 {
                seen[word] |= bit;
                distinct += 1;
            }
        }
        out.push(draws);
    }
    out
}
